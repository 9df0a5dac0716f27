#ifndef QTWIST_NICHOLS_HPP
#define QTWIST_NICHOLS_HPP

#include <map>
#include <string>
#include <vector>

#include "qtwist/qcomb.hpp"
#include "qtwist/qls.hpp"

namespace qtw {

// Exponent vector of a normal-ordered monomial x_1^{r_1} ... x_theta^{r_theta}.
using Monomial = std::vector<int>;

// Sparse linear combination of monomials.  Plain data: all structure
// (multiplication, coproduct, grading) lives on NicholsAlgebra, which owns
// the datum.  Zero coefficients are never stored, so == is structural
// equality of values.
struct BElement {
    std::map<Monomial, Cyclotomic> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const Monomial& m, const Cyclotomic& c);
    BElement& operator+=(const BElement& o);
    BElement& operator-=(const BElement& o);
    void scale(const Cyclotomic& c);
    bool operator==(const BElement& o) const = default;
};

// Element of a tensor power of the algebra.  Keys concatenate the leg
// exponent vectors, so a key has length arity * theta.
struct TensorElement {
    int arity = 2;
    std::map<std::vector<int>, Cyclotomic> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const std::vector<int>& key, const Cyclotomic& c);
    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    void scale(const Cyclotomic& c);
    bool operator==(const TensorElement& o) const = default;
};

// The truncated q-commutative polynomial algebra on a quantum linear space
// datum: relations x_i^{N_i} = 0 and x_i x_j = q_ij x_j x_i, PBW basis of
// normal-ordered monomials, braided coproduct, grading by the g_i and
// diagonal action by the chi_i.  Immutable once built; every operation is
// const and pure.
class NicholsAlgebra {
  public:
    explicit NicholsAlgebra(QlsDatum d); // rejects invalid data

    const QlsDatum& datum() const { return d_; }
    int theta() const { return d_.theta; }
    long dimension() const;
    std::vector<Monomial> basis() const; // lexicographic, starts at 1

    BElement zero() const { return {}; }
    BElement unit() const;
    BElement x(int i) const; // generator, 0-based
    BElement monomial(const Monomial& r, const Cyclotomic& c = Cyclotomic::integer(1)) const;

    BElement multiply(const BElement& u, const BElement& v) const;
    BElement power(const BElement& u, int n) const;
    Cyclotomic counit(const BElement& u) const;

    // degree as index into G: prod g_i^{r_i}
    int degree(const Monomial& m) const;
    // scalar by which g acts: prod chi_i(g)^{r_i}
    Cyclotomic action(int g, const Monomial& m) const;
    // <X^r, u> = coefficient of x^r in u, scaled by prod (r_i)!_{q_i}
    Cyclotomic pairing(const Monomial& r, const BElement& u) const;

    // braided coproduct, an algebra map into the braided tensor square
    TensorElement coproduct(const BElement& u) const;

    TensorElement tensor(const BElement& a, const BElement& b) const;
    TensorElement tensor(const BElement& a, const BElement& b, const BElement& c) const;
    TensorElement unit_tensor(int arity) const;

    // product in the braided tensor power: pure tensors multiply
    // component-wise, scaled by one action-of-degree factor per transposed
    // pair of legs
    TensorElement braided_multiply(const TensorElement& s, const TensorElement& t) const;

    // leg surgery used by the twist equation
    TensorElement coproduct_on_leg(const TensorElement& t, int leg) const;  // arity 2 -> 3
    TensorElement insert_unit_leg(const TensorElement& t, int position) const; // arity 2 -> 3
    BElement apply_counit_leg(const TensorElement& t, int leg) const;       // arity 2 -> 1

    // grading/action of a whole tensor term (product over legs)
    int term_degree(const std::vector<int>& key) const;
    Cyclotomic term_action(int g, const std::vector<int>& key) const;

    std::string to_string(const Monomial& m) const;
    std::string to_string(const BElement& u) const;
    std::string to_string(const TensorElement& t) const;

  private:
    QlsDatum d_;

    void check_monomial(const Monomial& m) const;
    void check_key(const std::vector<int>& key, int arity) const;
    // coproduct of a single power x_i^n by the q-binomial formula
    TensorElement coproduct_power(int i, int n) const;
};

} // namespace qtw

#endif
