#include "qtwist/twist.hpp"

#include <sstream>

#include "qtwist/linalg.hpp"

namespace qtw {

namespace {

// shared sanity check for every constructor: the pair really is inverse
void require_inverse_pair(const NicholsAlgebra& B, const TensorElement& v,
                          const TensorElement& inv, const std::string& who) {
    if (!(B.braided_multiply(v, inv) == B.unit_tensor(2)) ||
        !(B.braided_multiply(inv, v) == B.unit_tensor(2)))
        throw Error(who + ": stated inverse fails to invert");
}

std::string key_string(const NicholsAlgebra& B, const std::vector<int>& key, int arity) {
    std::ostringstream os;
    const int th = B.theta();
    for (int p = 0; p < arity; ++p) {
        if (p) os << " (x) ";
        os << B.to_string(Monomial(key.begin() + p * th, key.begin() + (p + 1) * th));
    }
    return os.str();
}

// first key where two tensors differ, with both coefficients
Witness diff_witness(const NicholsAlgebra& B, const TensorElement& lhs,
                     const TensorElement& rhs) {
    for (const auto& [k, c] : lhs.terms) {
        auto it = rhs.terms.find(k);
        if (it == rhs.terms.end() || !(it->second == c))
            return {key_string(B, k, lhs.arity),
                    it == rhs.terms.end() ? "0" : it->second.to_string(), c.to_string()};
    }
    for (const auto& [k, c] : rhs.terms)
        if (!lhs.terms.count(k))
            return {key_string(B, k, rhs.arity), c.to_string(), "0"};
    return {"", "", ""};
}

} // namespace

TensorElement exp_q_element(const NicholsAlgebra& B, const TensorElement& x,
                            const Cyclotomic& q, long N) {
    if (x.arity != 2) throw Error("exp_q expects a braided square element");
    if (N < 1) throw Error("exp_q needs N >= 1");
    TensorElement acc;
    acc.arity = 2;
    TensorElement p = B.unit_tensor(2);
    for (long n = 0; n < N; ++n) {
        TensorElement term = p;
        term.scale(exp_q_coefficient(n, q));
        acc += term;
        p = B.braided_multiply(p, x);
    }
    if (!p.is_zero()) throw Error("exp_q: element is not nilpotent at the stated degree");
    return acc;
}

TensorElement exp_q_element_inverse(const NicholsAlgebra& B, const TensorElement& x,
                                    const Cyclotomic& q, long N) {
    if (x.arity != 2) throw Error("exp_q expects a braided square element");
    if (N < 1) throw Error("exp_q needs N >= 1");
    TensorElement acc;
    acc.arity = 2;
    TensorElement p = B.unit_tensor(2);
    for (long n = 0; n < N; ++n) {
        TensorElement term = p;
        term.scale(exp_q_inverse_coefficient(n, q));
        acc += term;
        p = B.braided_multiply(p, x);
    }
    if (!p.is_zero()) throw Error("exp_q: element is not nilpotent at the stated degree");
    return acc;
}

BraidedTwist make_J_xi(const NicholsAlgebra& B, int i, const Cyclotomic& xi) {
    const QlsDatum& d = B.datum();
    if (i < 0 || i >= d.theta) throw Error("make_J_xi: index out of range");
    if (!xi.is_zero() && d.G.power(d.g[i], d.N[i]) != d.G.identity())
        throw Error("make_J_xi: g^N is not the identity, xi must vanish");
    const long N = d.N[i];
    const Cyclotomic q = d.q_diag(i);
    auto series = [&](const Cyclotomic& s) {
        TensorElement t = B.unit_tensor(2);
        for (long k = 1; k < N; ++k) {
            Monomial left(d.theta, 0), right(d.theta, 0);
            left[i] = static_cast<int>(N - k);
            right[i] = static_cast<int>(k);
            std::vector<int> key = left;
            key.insert(key.end(), right.begin(), right.end());
            t.add_term(key, s / (q_factorial(N - k, q) * q_factorial(k, q)));
        }
        return t;
    };
    BraidedTwist J{series(xi), series(-xi),
                   "J_xi(i=" + std::to_string(i + 1) + ")"};
    require_inverse_pair(B, J.value, J.inverse, J.provenance);
    return J;
}

BraidedTwist make_exp_B(const NicholsAlgebra& B, int i, int j, const Cyclotomic& a) {
    const QlsDatum& d = B.datum();
    if (i < 0 || i >= d.theta || j < 0 || j >= d.theta || i == j)
        throw Error("make_exp_B: bad index pair");
    if (!a.is_zero() && d.G.op(d.g[i], d.g[j]) != d.G.identity())
        throw Error("make_exp_B: g_i g_j is not the identity, the coefficient must vanish");
    std::string tag = "exp_B(i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1) + ")";
    if (a.is_zero()) {
        BraidedTwist J{B.unit_tensor(2), B.unit_tensor(2), tag};
        return J;
    }
    TensorElement x = B.tensor(B.x(i), B.x(j));
    x.scale(a);
    const Cyclotomic q = d.q_at(i, j);
    auto N = q.multiplicative_order(d.G.exponent());
    if (!N) throw Error("make_exp_B: braiding scalar is not a root of unity");
    BraidedTwist J{exp_q_element(B, x, q, *N), exp_q_element_inverse(B, x, q, *N), tag};
    require_inverse_pair(B, J.value, J.inverse, J.provenance);
    return J;
}

namespace {

std::vector<BraidedTwist> family_factors(const NicholsAlgebra& B, const ScalarFamily& D) {
    const QlsDatum& d = B.datum();
    std::vector<BraidedTwist> factors;
    for (int i = 0; i < d.theta; ++i)
        if (!D.xi[i].is_zero()) factors.push_back(make_J_xi(B, i, D.xi[i]));
    for (int i = 0; i < d.theta; ++i)
        for (int j = 0; j < d.theta; ++j)
            if (i != j && !D.a[i][j].is_zero()) factors.push_back(make_exp_B(B, i, j, D.a[i][j]));
    return factors;
}

} // namespace

BraidedTwist make_J_D(const NicholsAlgebra& B, const ScalarFamily& D) {
    if (!family_compatible(B.datum(), D))
        throw Error("make_J_D: family is not compatible with the datum");
    BraidedTwist acc{B.unit_tensor(2), B.unit_tensor(2), "J_D"};
    for (const BraidedTwist& f : family_factors(B, D)) {
        try {
            acc = combine_twists(B, acc, f);
        } catch (const Error& e) {
            throw Error("make_J_D: adding factor " + f.provenance + ": " + e.what());
        }
    }
    acc.provenance = "J_D";
    return acc;
}

bool family_twist_factors_commute(const NicholsAlgebra& B, const ScalarFamily& D) {
    if (!family_compatible(B.datum(), D))
        throw Error("family twist factors: family is not compatible with the datum");
    std::vector<BraidedTwist> factors = family_factors(B, D);
    for (size_t p = 0; p < factors.size(); ++p)
        for (size_t r = p + 1; r < factors.size(); ++r)
            if (!(B.braided_multiply(factors[p].value, factors[r].value) ==
                  B.braided_multiply(factors[r].value, factors[p].value)))
                return false;
    return true;
}

BraidedTwist combine_twists(const NicholsAlgebra& B, const BraidedTwist& J,
                            const BraidedTwist& Jp) {
    // (1 (x) J)(id (x) Delta)(J') must equal (id (x) Delta)(J')(1 (x) J),
    // and the mirrored version with (J (x) 1) and (Delta (x) id)(J')
    TensorElement oneJ = B.insert_unit_leg(J.value, 0);
    TensorElement Jone = B.insert_unit_leg(J.value, 2);
    TensorElement idD = B.coproduct_on_leg(Jp.value, 1);
    TensorElement Did = B.coproduct_on_leg(Jp.value, 0);
    if (!(B.braided_multiply(oneJ, idD) == B.braided_multiply(idD, oneJ)))
        throw Error("combine_twists: (1 (x) J) does not commute with (id (x) Delta)(J')");
    if (!(B.braided_multiply(Jone, Did) == B.braided_multiply(Did, Jone)))
        throw Error("combine_twists: (J (x) 1) does not commute with (Delta (x) id)(J')");
    BraidedTwist out{B.braided_multiply(J.value, Jp.value),
                     B.braided_multiply(Jp.inverse, J.inverse),
                     "composite(" + J.provenance + "," + Jp.provenance + ")"};
    require_inverse_pair(B, out.value, out.inverse, out.provenance);
    return out;
}

VerificationReport verify_twist(const NicholsAlgebra& B, const BraidedTwist& J) {
    VerificationReport rep("twist axioms: " + J.provenance);
    const TensorElement unit2 = B.unit_tensor(2);

    TensorElement vr = B.braided_multiply(J.value, J.inverse);
    rep.check("inverse-right", vr == unit2, diff_witness(B, vr, unit2));
    TensorElement vl = B.braided_multiply(J.inverse, J.value);
    rep.check("inverse-left", vl == unit2, diff_witness(B, vl, unit2));

    BElement cl = B.apply_counit_leg(J.value, 0);
    rep.check("counit-left", cl == B.unit(),
              {"(counit (x) id) applied", B.to_string(B.unit()), B.to_string(cl)});
    BElement cr = B.apply_counit_leg(J.value, 1);
    rep.check("counit-right", cr == B.unit(),
              {"(id (x) counit) applied", B.to_string(B.unit()), B.to_string(cr)});

    {
        bool ok = true;
        Witness w;
        for (const auto& [k, c] : J.value.terms) {
            int g = B.term_degree(k);
            if (g != B.datum().G.identity()) {
                ok = false;
                w = {key_string(B, k, 2), "total degree e",
                     "group element " + std::to_string(g)};
                break;
            }
        }
        rep.check("coinvariant", ok, w);
    }

    TensorElement lhs = B.braided_multiply(B.coproduct_on_leg(J.value, 0),
                                           B.insert_unit_leg(J.value, 2));
    TensorElement rhs = B.braided_multiply(B.coproduct_on_leg(J.value, 1),
                                           B.insert_unit_leg(J.value, 0));
    rep.check("twist-equation", lhs == rhs, diff_witness(B, lhs, rhs));

    // the action of the grading subgroup on the twist terms, attached as
    // data: some genuine twists are not action-invariant
    {
        bool inv = true;
        std::string detail;
        for (int gamma : B.datum().Gamma.members) {
            for (const auto& [k, c] : J.value.terms) {
                Cyclotomic s = B.term_action(gamma, k);
                if (!s.is_one()) {
                    inv = false;
                    detail = "term " + key_string(B, k, 2) + " has eigenvalue " + s.to_string() +
                             " under element " + std::to_string(gamma);
                    break;
                }
            }
            if (!inv) break;
        }
        nlohmann::ordered_json j;
        j["invariant"] = inv;
        if (!detail.empty()) j["first_deviation"] = detail;
        rep.attach("grading-subgroup-action", j);
    }
    rep.attach("terms", nlohmann::ordered_json(B.to_string(J.value)));
    return rep;
}

Cyclotomic dual_evaluate(const NicholsAlgebra& B, const DualElement& X, const BElement& u) {
    Cyclotomic acc;
    for (const auto& [r, c] : X) acc += c * B.pairing(r, u);
    return acc;
}

DualElement twisted_dual_product(const NicholsAlgebra& B, const TensorElement& J,
                                 const DualElement& X, const DualElement& Y) {
    if (J.arity != 2) throw Error("twisted_dual_product expects a braided square twist");
    const int th = B.theta();
    DualElement out;
    for (const Monomial& t : B.basis()) {
        Cyclotomic val;
        TensorElement dh = B.coproduct(B.monomial(t));
        for (const auto& [hk, hc] : dh.terms) {
            Monomial h1(hk.begin(), hk.begin() + th);
            Monomial h2(hk.begin() + th, hk.end());
            int degh2 = B.degree(h2);
            for (const auto& [jk, jc] : J.terms) {
                Monomial j1(jk.begin(), jk.begin() + th);
                Monomial j2(jk.begin() + th, jk.end());
                Cyclotomic s = hc * jc * B.action(degh2, j1);
                if (s.is_zero()) continue;
                Cyclotomic lx = dual_evaluate(B, X, B.multiply(B.monomial(h1), B.monomial(j1)));
                if (lx.is_zero()) continue;
                Cyclotomic ly = dual_evaluate(B, Y, B.multiply(B.monomial(h2), B.monomial(j2)));
                if (ly.is_zero()) continue;
                val += s * lx * ly;
            }
        }
        if (val.is_zero()) continue;
        for (int i = 0; i < th; ++i) val /= q_factorial(t[i], B.datum().q_diag(i));
        out[t] = val;
    }
    return out;
}

bool twisted_dual_associativity(const NicholsAlgebra& B, const TensorElement& J) {
    std::vector<Monomial> basis = B.basis();
    // precompute pairwise products of dual basis vectors
    std::map<std::pair<Monomial, Monomial>, DualElement> table;
    for (const auto& r : basis)
        for (const auto& s : basis)
            table[{r, s}] =
                twisted_dual_product(B, J, DualElement{{r, Cyclotomic::integer(1)}},
                                     DualElement{{s, Cyclotomic::integer(1)}});
    auto extend = [&](const DualElement& X, const Monomial& s) {
        DualElement acc;
        for (const auto& [r, c] : X)
            for (const auto& [m, v] : table.at({r, s})) {
                acc[m] += c * v;
                if (acc[m].is_zero()) acc.erase(m);
            }
        return acc;
    };
    auto extend_right = [&](const Monomial& r, const DualElement& Y) {
        DualElement acc;
        for (const auto& [s, c] : Y)
            for (const auto& [m, v] : table.at({r, s})) {
                acc[m] += c * v;
                if (acc[m].is_zero()) acc.erase(m);
            }
        return acc;
    };
    for (const auto& r : basis)
        for (const auto& s : basis)
            for (const auto& t : basis) {
                DualElement left = extend(table.at({r, s}), t);
                DualElement right = extend_right(r, table.at({s, t}));
                if (!(left == right)) return false;
            }
    return true;
}

BElement b_inverse(const NicholsAlgebra& B, const BElement& c) {
    Cyclotomic c0 = B.counit(c);
    if (c0.is_zero()) throw Error("element with zero constant term is not invertible");
    // c = c0 (1 + n) with n nilpotent
    BElement n = c;
    n.scale(c0.inverse());
    n -= B.unit();
    BElement acc = B.unit();
    BElement p = B.unit();
    for (long k = 1; k <= B.dimension(); ++k) {
        p = B.multiply(p, n);
        if (p.is_zero()) break;
        BElement term = p;
        if (k % 2 == 1) term.scale(Cyclotomic::integer(-1));
        acc += term;
    }
    acc.scale(c0.inverse());
    if (!(B.multiply(acc, c) == B.unit()) || !(B.multiply(c, acc) == B.unit()))
        throw Error("inverse verification failed");
    return acc;
}

TensorElement gauge_transform(const NicholsAlgebra& B, const TensorElement& J,
                              const BElement& c) {
    BElement cinv = b_inverse(B, c);
    TensorElement out = B.braided_multiply(B.coproduct(c), J);
    return B.braided_multiply(out, B.tensor(cinv, cinv));
}

bool gauge_check(const NicholsAlgebra& B, const BraidedTwist& J, const BraidedTwist& Jp,
                 const BElement& c) {
    if (!B.counit(c).is_one()) throw Error("gauge element must have counit 1");
    for (const auto& [m, coeff] : c.terms) {
        if (B.degree(m) != B.datum().G.identity())
            throw Error("gauge element must be coinvariant (degree e terms only)");
        for (int gamma : B.datum().Gamma.members)
            if (!B.action(gamma, m).is_one())
                throw Error("gauge element must be invariant under the grading subgroup");
    }
    return gauge_transform(B, J.value, c) == Jp.value;
}

void GroupTwist::add_term(int a, int b, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto [it, fresh] = terms.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

GroupTwist group_twist_identity() {
    GroupTwist t;
    t.add_term(0, 0, Cyclotomic::integer(1));
    return t;
}

GroupTwist group_twist_multiply(const FiniteGroup& F, const GroupTwist& u, const GroupTwist& v) {
    GroupTwist out;
    for (const auto& [ku, cu] : u.terms)
        for (const auto& [kv, cv] : v.terms)
            out.add_term(F.op(ku.first, kv.first), F.op(ku.second, kv.second), cu * cv);
    return out;
}

GroupTwist group_twist_inverse(const FiniteGroup& F, const GroupTwist& u) {
    const int m = F.order();
    // left-multiplication operator of u on kF (x) kF, solved against 1 (x) 1
    std::vector<std::vector<Cyclotomic>> M(static_cast<size_t>(m) * m,
                                           std::vector<Cyclotomic>(static_cast<size_t>(m) * m));
    for (const auto& [k, c] : u.terms)
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                M[static_cast<size_t>(F.op(k.first, x)) * m + F.op(k.second, y)]
                 [static_cast<size_t>(x) * m + y] += c;
    std::vector<Cyclotomic> rhs(static_cast<size_t>(m) * m);
    rhs[static_cast<size_t>(F.identity()) * m + F.identity()] = Cyclotomic::integer(1);
    auto sol = solve_linear(std::move(M), std::move(rhs));
    if (!sol) throw Error("group twist is not invertible");
    GroupTwist inv;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            inv.add_term(a, b, (*sol)[static_cast<size_t>(a) * m + b]);
    GroupTwist check = group_twist_multiply(F, u, inv);
    if (!(check == group_twist_identity())) throw Error("group twist inverse failed to verify");
    return inv;
}

VerificationReport verify_group_twist(const FiniteGroup& F, const GroupTwist& J) {
    VerificationReport rep("group algebra twist axioms");
    for (const auto& [k, c] : J.terms)
        if (k.first < 0 || k.first >= F.order() || k.second < 0 || k.second >= F.order())
            throw Error("group twist term indexes an element outside the group");

    bool invertible = true;
    std::string why;
    try {
        group_twist_inverse(F, J);
    } catch (const Error& e) {
        invertible = false;
        why = e.what();
    }
    rep.check("invertible", invertible, {"convolution inverse", "exists", why});

    // counit of kF sends every basis element to 1
    for (int side = 0; side < 2; ++side) {
        std::map<int, Cyclotomic> folded;
        for (const auto& [k, c] : J.terms) {
            int kept = side == 0 ? k.second : k.first;
            folded[kept] += c;
            if (folded[kept].is_zero()) folded.erase(kept);
        }
        bool ok = folded.size() == 1 && folded.count(F.identity()) &&
                  folded.at(F.identity()).is_one();
        rep.check(side == 0 ? "counit-left" : "counit-right", ok,
                  {"fold of twist terms", "identity basis element",
                   std::to_string(folded.size()) + " surviving element(s)"});
    }

    // (Delta (x) id)(J)(J (x) 1) = (id (x) Delta)(J)(1 (x) J) over triples
    std::map<std::tuple<int, int, int>, Cyclotomic> lhs, rhs;
    auto accumulate = [](std::map<std::tuple<int, int, int>, Cyclotomic>& m,
                         std::tuple<int, int, int> k, const Cyclotomic& c) {
        m[k] += c;
        if (m[k].is_zero()) m.erase(k);
    };
    for (const auto& [ka, ca] : J.terms)
        for (const auto& [kb, cb] : J.terms) {
            accumulate(lhs,
                       {F.op(ka.first, kb.first), F.op(ka.first, kb.second), ka.second},
                       ca * cb);
            accumulate(rhs,
                       {ka.first, F.op(ka.second, kb.first), F.op(ka.second, kb.second)},
                       ca * cb);
        }
    bool eq = lhs == rhs;
    Witness w;
    if (!eq) {
        for (const auto& [k, c] : lhs) {
            auto it = rhs.find(k);
            if (it == rhs.end() || !(it->second == c)) {
                auto [a, b, cc] = k;
                w = {"(" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(cc) + ")",
                     it == rhs.end() ? "0" : it->second.to_string(), c.to_string()};
                break;
            }
        }
    }
    rep.check("twist-equation", eq, w);
    return rep;
}

} // namespace qtw
