#ifndef QTWIST_QLS_HPP
#define QTWIST_QLS_HPP

#include <vector>

#include "qtwist/group.hpp"
#include "qtwist/report.hpp"

namespace qtw {

// A quantum linear space datum: central group elements g_i paired with
// characters chi_i of G.  Construction only requires well-formed fields
// (sizes match, characters genuinely multiplicative) and fills in the
// derived data; the mathematical conditions on the datum are checked by
// datum_validate so that a broken datum can still be loaded and reported
// against.
struct QlsDatum {
    FiniteGroup G;
    int theta = 0;
    std::vector<int> g;          // element indices into G, size theta
    std::vector<Character> chi;  // size theta

    // derived on construction
    std::vector<std::vector<Cyclotomic>> q; // q[i][j] = chi_j(g_i)
    std::vector<long> N;                    // N[i] = multiplicative order of q[i][i]
    Subgroup Gamma;                         // subgroup generated by the g_i

    const Cyclotomic& q_at(int i, int j) const { return q.at(i).at(j); }
    Cyclotomic q_diag(int i) const { return q.at(i).at(i); }
};

QlsDatum make_datum(FiniteGroup G, std::vector<int> g, std::vector<Character> chi);

// Names the violated condition and the indices involved on failure.
VerificationReport datum_validate(const QlsDatum& d);
bool datum_is_valid(const QlsDatum& d);

// The scalar family D: off-diagonal matrix entries a[i][j] (diagonal kept
// zero) and a vector xi, both over the same index range 0..theta-1.
struct ScalarFamily {
    std::vector<std::vector<Cyclotomic>> a;
    std::vector<Cyclotomic> xi;

    static ScalarFamily zero(int theta);
    int theta() const { return static_cast<int>(xi.size()); }
    bool operator==(const ScalarFamily& o) const;
};

ScalarFamily family_sum(const ScalarFamily& D1, const ScalarFamily& D2);
// entries chi_i chi_j(g) a_ij and chi_i^{N_i}(g) xi_i
ScalarFamily family_act(const QlsDatum& d, int g, const ScalarFamily& D);
// b_ij = q_ij a_ji - a_ij applied to every ordered pair; xi unchanged
ScalarFamily family_hat(const QlsDatum& d, const ScalarFamily& D);
// a_ij = -q_ij a_ji for all i != j
bool family_is_q_symmetric(const QlsDatum& d, const ScalarFamily& D);

// a_ij = 0 whenever g_i g_j != 1, and xi_i = 0 whenever g_i^{N_i} != 1
bool family_compatible(const QlsDatum& d, const ScalarFamily& D);

// chi_i chi_j(g) a_ij = a_ij and chi_i^{N_i}(g) xi_i = xi_i for all g in F,
// i.e. g.D = D pointwise over F
bool family_invariant(const QlsDatum& d, const ScalarFamily& D, const Subgroup& F);

// the generator-pairing variant: a_ij = 0 whenever q_ik q_jk != 1 for some
// k, and xi_i = 0 whenever q_ij^{N_i} != 1 for some j.  Kept separate from
// family_invariant(.., Gamma) because the two are not interchangeable; the
// comparison is made by tests, not assumed here.
bool family_invariant_bilinear(const QlsDatum& d, const ScalarFamily& D);

} // namespace qtw

#endif
