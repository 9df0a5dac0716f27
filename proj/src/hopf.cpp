#include "qtwist/hopf.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <thread>

#include "qtwist/linalg.hpp"

namespace qtw {

void HElement::add_term(const std::vector<int>& key, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

HElement& HElement::operator+=(const HElement& o) {
    for (const auto& [k, c] : o.terms) add_term(k, c);
    return *this;
}

HElement& HElement::operator-=(const HElement& o) {
    for (const auto& [k, c] : o.terms) add_term(k, -c);
    return *this;
}

void HElement::scale(const Cyclotomic& c) {
    if (c.is_zero()) {
        terms.clear();
        return;
    }
    for (auto& [k, v] : terms) v *= c;
}

void HTensor::add_term(const std::vector<int>& key, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

HTensor& HTensor::operator+=(const HTensor& o) {
    if (arity != o.arity) throw Error("tensor arity mismatch");
    for (const auto& [k, c] : o.terms) add_term(k, c);
    return *this;
}

HTensor& HTensor::operator-=(const HTensor& o) {
    if (arity != o.arity) throw Error("tensor arity mismatch");
    for (const auto& [k, c] : o.terms) add_term(k, -c);
    return *this;
}

void HTensor::scale(const Cyclotomic& c) {
    if (c.is_zero()) {
        terms.clear();
        return;
    }
    for (auto& [k, v] : terms) v *= c;
}

namespace {

// cartesian expansion of per-leg products into full tensor terms
void expand_legs(const std::vector<HElement>& legs, size_t p, std::vector<int>& key,
                 const Cyclotomic& coeff, HTensor& out) {
    if (p == legs.size()) {
        out.add_term(key, coeff);
        return;
    }
    for (const auto& [k, c] : legs[p].terms) {
        size_t before = key.size();
        key.insert(key.end(), k.begin(), k.end());
        expand_legs(legs, p + 1, key, coeff * c, out);
        key.resize(before);
    }
}

std::string first_failure(const VerificationReport& rep) {
    for (const auto& c : rep.checks())
        if (c.status == CheckStatus::fail) {
            std::string s = c.name;
            if (c.witness) s += " at " + c.witness->location;
            return s;
        }
    return "unknown check";
}

} // namespace

HopfAlgebra::HopfAlgebra(QlsDatum d) : B_(std::move(d)) {
    const FiniteGroup& G = group();
    const int th = B_.theta();
    basis_.reserve(static_cast<size_t>(B_.dimension()) * G.order());
    for (const Monomial& m : B_.basis())
        for (int g = 0; g < G.order(); ++g) {
            std::vector<int> key = m;
            key.push_back(g);
            basis_.push_back(std::move(key));
        }

    coproduct_.reserve(basis_.size());
    for (const auto& key : basis_) {
        Monomial m(key.begin(), key.begin() + th);
        int g = key[th];
        HTensor row;
        row.arity = 2;
        for (const auto& [k2, c] : B_.coproduct(B_.monomial(m)).terms) {
            Monomial m1(k2.begin(), k2.begin() + th), m2(k2.begin() + th, k2.end());
            std::vector<int> hk = m1;
            hk.push_back(G.op(B_.degree(m2), g));
            hk.insert(hk.end(), m2.begin(), m2.end());
            hk.push_back(g);
            row.add_term(hk, c);
        }
        coproduct_.push_back(std::move(row));
    }

    // construction-time coalgebra checks; the table is formulaic, so a
    // failure here means the formula itself is broken
    for (const auto& key : basis_) {
        const HTensor& d2 = coproduct_of(key);
        if (!(coproduct_on_leg(d2, 0) == coproduct_on_leg(d2, 1)))
            throw Error("smash coproduct is not coassociative at " + to_string(key));
        HElement self = element(key);
        if (!(apply_counit_leg(d2, 0) == self) || !(apply_counit_leg(d2, 1) == self))
            throw Error("smash coproduct breaks the counit law at " + to_string(key));
    }

    antipode_ = antipode_solve(*this);
}

long HopfAlgebra::rank(const std::vector<int>& key) const {
    check_key(key);
    const auto& d = B_.datum();
    long r = 0;
    for (int i = 0; i < d.theta; ++i) r = r * d.N[i] + key[i];
    return r * group().order() + key[d.theta];
}

void HopfAlgebra::check_key(const std::vector<int>& key) const {
    const auto& d = B_.datum();
    if (static_cast<int>(key.size()) != d.theta + 1)
        throw Error("smash key has wrong length");
    for (int i = 0; i < d.theta; ++i)
        if (key[i] < 0 || key[i] >= d.N[i])
            throw Error("exponent " + std::to_string(key[i]) + " of x" + std::to_string(i + 1) +
                        " outside [0, N)");
    if (key[d.theta] < 0 || key[d.theta] >= group().order())
        throw Error("group element index out of range");
}

void HopfAlgebra::check_tensor_key(const std::vector<int>& key, int arity) const {
    if (static_cast<int>(key.size()) != arity * (B_.theta() + 1))
        throw Error("smash tensor key has wrong length");
}

HElement HopfAlgebra::unit() const {
    std::vector<int> key(B_.theta(), 0);
    key.push_back(group().identity());
    return element(key);
}

HElement HopfAlgebra::element(const std::vector<int>& key, const Cyclotomic& c) const {
    check_key(key);
    HElement u;
    u.add_term(key, c);
    return u;
}

HElement HopfAlgebra::generator(int i) const {
    if (i < 0 || i >= B_.theta()) throw Error("generator index out of range");
    std::vector<int> key(B_.theta(), 0);
    key[i] = 1;
    key.push_back(group().identity());
    return element(key);
}

HElement HopfAlgebra::group_element(int g) const {
    std::vector<int> key(B_.theta(), 0);
    key.push_back(g);
    return element(key);
}

HElement HopfAlgebra::product_of(const std::vector<int>& a, const std::vector<int>& b) const {
    check_key(a);
    check_key(b);
    if (!product_overrides_.empty()) {
        auto it = product_overrides_.find({a, b});
        if (it != product_overrides_.end()) return it->second;
    }
    const int th = B_.theta();
    Monomial ma(a.begin(), a.begin() + th), mb(b.begin(), b.begin() + th);
    BElement prod = B_.multiply(B_.monomial(ma), B_.monomial(mb));
    prod.scale(B_.action(a[th], mb));
    int g = group().op(a[th], b[th]);
    HElement out;
    for (const auto& [m, c] : prod.terms) {
        std::vector<int> key = m;
        key.push_back(g);
        out.add_term(key, c);
    }
    return out;
}

HElement HopfAlgebra::multiply(const HElement& a, const HElement& b) const {
    HElement out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            HElement p = product_of(ka, kb);
            for (const auto& [k, c] : p.terms) out.add_term(k, ca * cb * c);
        }
    return out;
}

Cyclotomic HopfAlgebra::counit(const HElement& a) const {
    const int th = B_.theta();
    Cyclotomic s;
    for (const auto& [k, c] : a.terms) {
        bool constant = true;
        for (int i = 0; i < th; ++i) constant = constant && k[i] == 0;
        if (constant) s += c;
    }
    return s;
}

HTensor HopfAlgebra::coproduct(const HElement& a) const {
    HTensor out;
    out.arity = 2;
    for (const auto& [k, c] : a.terms) {
        HTensor row = coproduct_of(k);
        row.scale(c);
        out += row;
    }
    return out;
}

HElement HopfAlgebra::antipode(const HElement& a) const {
    HElement out;
    for (const auto& [k, c] : a.terms) {
        HElement row = antipode_of(k);
        row.scale(c);
        out += row;
    }
    return out;
}

const HTensor& HopfAlgebra::coproduct_of(const std::vector<int>& key) const {
    return coproduct_.at(static_cast<size_t>(rank(key)));
}

const HElement& HopfAlgebra::antipode_of(const std::vector<int>& key) const {
    return antipode_.at(static_cast<size_t>(rank(key)));
}

HTensor HopfAlgebra::tensor(const HElement& a, const HElement& b) const {
    HTensor t;
    t.arity = 2;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            std::vector<int> key = ka;
            key.insert(key.end(), kb.begin(), kb.end());
            t.add_term(key, ca * cb);
        }
    return t;
}

HTensor HopfAlgebra::tensor(const HElement& a, const HElement& b, const HElement& c) const {
    HTensor t;
    t.arity = 3;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms)
            for (const auto& [kc, cc] : c.terms) {
                std::vector<int> key = ka;
                key.insert(key.end(), kb.begin(), kb.end());
                key.insert(key.end(), kc.begin(), kc.end());
                t.add_term(key, ca * cb * cc);
            }
    return t;
}

HTensor HopfAlgebra::unit_tensor(int arity) const {
    if (arity != 2 && arity != 3) throw Error("tensor arity must be 2 or 3");
    HTensor t;
    t.arity = arity;
    std::vector<int> key;
    for (int p = 0; p < arity; ++p) {
        key.insert(key.end(), static_cast<size_t>(B_.theta()), 0);
        key.push_back(group().identity());
    }
    t.add_term(key, Cyclotomic::integer(1));
    return t;
}

HTensor HopfAlgebra::multiply(const HTensor& s, const HTensor& t) const {
    if (s.arity != t.arity) throw Error("tensor arity mismatch");
    const int k = s.arity;
    const int w = B_.theta() + 1;
    HTensor out;
    out.arity = k;
    std::vector<HElement> legs(static_cast<size_t>(k));
    for (const auto& [ka, ca] : s.terms) {
        check_tensor_key(ka, k);
        for (const auto& [kb, cb] : t.terms) {
            check_tensor_key(kb, k);
            bool dead = false;
            for (int p = 0; p < k && !dead; ++p) {
                std::vector<int> la(ka.begin() + p * w, ka.begin() + (p + 1) * w);
                std::vector<int> lb(kb.begin() + p * w, kb.begin() + (p + 1) * w);
                legs[static_cast<size_t>(p)] = product_of(la, lb);
                dead = legs[static_cast<size_t>(p)].is_zero();
            }
            if (dead) continue;
            std::vector<int> key;
            key.reserve(static_cast<size_t>(k) * w);
            expand_legs(legs, 0, key, ca * cb, out);
        }
    }
    return out;
}

HTensor HopfAlgebra::coproduct_on_leg(const HTensor& t, int leg) const {
    if (t.arity != 2) throw Error("coproduct_on_leg expects arity 2");
    if (leg != 0 && leg != 1) throw Error("leg must be 0 or 1");
    const int w = B_.theta() + 1;
    HTensor out;
    out.arity = 3;
    for (const auto& [key, c] : t.terms) {
        check_tensor_key(key, 2);
        std::vector<int> split(key.begin() + leg * w, key.begin() + (leg + 1) * w);
        std::vector<int> kept(key.begin() + (1 - leg) * w, key.begin() + (2 - leg) * w);
        for (const auto& [k2, c2] : coproduct_of(split).terms) {
            std::vector<int> k3;
            k3.reserve(static_cast<size_t>(3) * w);
            if (leg == 0) {
                k3.insert(k3.end(), k2.begin(), k2.end());
                k3.insert(k3.end(), kept.begin(), kept.end());
            } else {
                k3.insert(k3.end(), kept.begin(), kept.end());
                k3.insert(k3.end(), k2.begin(), k2.end());
            }
            out.add_term(k3, c * c2);
        }
    }
    return out;
}

HTensor HopfAlgebra::insert_unit_leg(const HTensor& t, int position) const {
    if (t.arity != 2) throw Error("insert_unit_leg expects arity 2");
    if (position < 0 || position > 2) throw Error("position must be 0, 1, or 2");
    const int w = B_.theta() + 1;
    std::vector<int> unit_leg(static_cast<size_t>(B_.theta()), 0);
    unit_leg.push_back(group().identity());
    HTensor out;
    out.arity = 3;
    for (const auto& [key, c] : t.terms) {
        std::vector<int> k3 = key;
        k3.insert(k3.begin() + position * w, unit_leg.begin(), unit_leg.end());
        out.add_term(k3, c);
    }
    return out;
}

HElement HopfAlgebra::apply_counit_leg(const HTensor& t, int leg) const {
    if (t.arity != 2) throw Error("apply_counit_leg expects arity 2");
    if (leg != 0 && leg != 1) throw Error("leg must be 0 or 1");
    const int th = B_.theta();
    const int w = th + 1;
    HElement out;
    for (const auto& [key, c] : t.terms) {
        bool constant = true;
        for (int i = 0; i < th; ++i) constant = constant && key[leg * w + i] == 0;
        if (!constant) continue;
        out.add_term(std::vector<int>(key.begin() + (1 - leg) * w, key.begin() + (2 - leg) * w), c);
    }
    return out;
}

HopfAlgebra HopfAlgebra::conjugated_coproduct(const LiftedTwist& T) const {
    HopfAlgebra A = *this;
    for (size_t r = 0; r < basis_.size(); ++r)
        A.coproduct_[r] = multiply(multiply(T.inverse, coproduct_[r]), T.value);
    A.twist_ = T;
    A.antipode_ = antipode_solve(A);
    return A;
}

HopfAlgebra HopfAlgebra::corrupted_product(const std::vector<int>& a, const std::vector<int>& b,
                                           HElement value) const {
    check_key(a);
    check_key(b);
    HopfAlgebra c = *this;
    c.product_overrides_[{a, b}] = std::move(value);
    return c;
}

HopfAlgebra HopfAlgebra::corrupted_coproduct(const std::vector<int>& key, HTensor value) const {
    HopfAlgebra c = *this;
    c.coproduct_[static_cast<size_t>(rank(key))] = std::move(value);
    return c;
}

HopfAlgebra HopfAlgebra::corrupted_antipode(const std::vector<int>& key, HElement value) const {
    HopfAlgebra c = *this;
    c.antipode_[static_cast<size_t>(rank(key))] = std::move(value);
    return c;
}

std::string HopfAlgebra::to_string(const std::vector<int>& key) const {
    check_key(key);
    Monomial m(key.begin(), key.begin() + B_.theta());
    return B_.to_string(m) + " # g" + std::to_string(key[B_.theta()]);
}

std::string HopfAlgebra::to_string(const HElement& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : a.terms) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ") " << to_string(k);
        first = false;
    }
    return os.str();
}

std::string HopfAlgebra::to_string(const HTensor& t) const {
    if (t.is_zero()) return "0";
    const int w = B_.theta() + 1;
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : t.terms) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ") ";
        for (int p = 0; p < t.arity; ++p) {
            if (p) os << " (x) ";
            os << to_string(std::vector<int>(key.begin() + p * w, key.begin() + (p + 1) * w));
        }
        first = false;
    }
    return os.str();
}

HopfAlgebra smash_build(const QlsDatum& d) { return HopfAlgebra(d); }

HTensor lift_tensor(const HopfAlgebra& H, const TensorElement& t, const GroupTwist& F) {
    if (t.arity != 2) throw Error("lift_tensor expects arity 2");
    const NicholsAlgebra& B = H.nichols();
    const FiniteGroup& G = H.group();
    const int th = B.theta();
    HTensor out;
    out.arity = 2;
    for (const auto& [k, c] : t.terms) {
        Monomial m1(k.begin(), k.begin() + th), m2(k.begin() + th, k.end());
        int d2 = B.degree(m2);
        for (const auto& [fg, cf] : F.terms) {
            std::vector<int> key = m1;
            key.push_back(G.op(fg.first, d2));
            key.insert(key.end(), m2.begin(), m2.end());
            key.push_back(fg.second);
            out.add_term(key, c * cf);
        }
    }
    return out;
}

HTensor lift_tensor(const HopfAlgebra& H, const TensorElement& t) {
    return lift_tensor(H, t, group_twist_identity());
}

LiftedTwist lift_twist(const HopfAlgebra& H, const BraidedTwist& Jb) {
    VerificationReport rb = verify_twist(H.nichols(), Jb);
    if (!rb.all_passed())
        throw Error("lift_twist: braided twist fails " + first_failure(rb));
    LiftedTwist T;
    T.value = lift_tensor(H, Jb.value);
    T.inverse = lift_tensor(H, Jb.inverse);
    T.provenance = "lift(" + Jb.provenance + ")";
    VerificationReport rt = verify_lifted_twist(H, T);
    if (!rt.all_passed())
        throw Error("lift_twist: lifted element fails " + first_failure(rt));
    return T;
}

LiftedTwist lift_twist(const HopfAlgebra& H, const BraidedTwist& Jb, const GroupTwist& JF,
                       const Subgroup& F, const ScalarFamily& D) {
    const QlsDatum& d = H.datum();
    for (int g : d.Gamma.members)
        if (!F.contains(g))
            throw Error("lift_twist: the grading subgroup is not contained in F");
    for (const auto& [k, c] : JF.terms)
        if (!F.contains(k.first) || !F.contains(k.second))
            throw Error("lift_twist: group twist term outside F");
    VerificationReport rf = verify_group_twist(H.group(), JF);
    if (!rf.all_passed())
        throw Error("lift_twist: group twist fails " + first_failure(rf));
    if (!family_invariant(d, D, F))
        throw Error("lift_twist: family is not F-invariant");
    VerificationReport rb = verify_twist(H.nichols(), Jb);
    if (!rb.all_passed())
        throw Error("lift_twist: braided twist fails " + first_failure(rb));

    const NicholsAlgebra& B = H.nichols();
    const FiniteGroup& G = H.group();
    const int th = B.theta();
    LiftedTwist T;
    T.value = lift_tensor(H, Jb.value, JF);
    // inverse of the combined braided twist: the group part passes the
    // monomial part, so each term picks up the action of its group legs
    GroupTwist JFi = group_twist_inverse(G, JF);
    HTensor inv;
    inv.arity = 2;
    for (const auto& [k, c] : Jb.inverse.terms) {
        Monomial m1(k.begin(), k.begin() + th), m2(k.begin() + th, k.end());
        int d2 = B.degree(m2);
        for (const auto& [ab, cf] : JFi.terms) {
            Cyclotomic coeff = c * cf * B.action(ab.first, m1) * B.action(ab.second, m2);
            std::vector<int> key = m1;
            key.push_back(G.op(ab.first, d2));
            key.insert(key.end(), m2.begin(), m2.end());
            key.push_back(ab.second);
            inv.add_term(key, coeff);
        }
    }
    T.inverse = std::move(inv);
    T.provenance = "lift(" + Jb.provenance + " * group twist)";
    VerificationReport rt = verify_lifted_twist(H, T);
    if (!rt.all_passed())
        throw Error("lift_twist: lifted element fails " + first_failure(rt));
    return T;
}

namespace {

std::string tensor_key_string(const HopfAlgebra& H, const std::vector<int>& key, int arity) {
    const int w = H.nichols().theta() + 1;
    std::string s;
    for (int p = 0; p < arity; ++p) {
        if (p) s += " (x) ";
        s += H.to_string(std::vector<int>(key.begin() + p * w, key.begin() + (p + 1) * w));
    }
    return s;
}

Witness tensor_diff(const HopfAlgebra& H, const HTensor& lhs, const HTensor& rhs) {
    for (const auto& [k, c] : lhs.terms) {
        auto it = rhs.terms.find(k);
        if (it == rhs.terms.end() || !(it->second == c))
            return {tensor_key_string(H, k, lhs.arity), c.to_string(),
                    it == rhs.terms.end() ? "0" : it->second.to_string()};
    }
    for (const auto& [k, c] : rhs.terms)
        if (!lhs.terms.count(k))
            return {tensor_key_string(H, k, rhs.arity), "0", c.to_string()};
    return {"", "", ""};
}

Witness element_diff(const HopfAlgebra& H, const HElement& lhs, const HElement& rhs) {
    for (const auto& [k, c] : lhs.terms) {
        auto it = rhs.terms.find(k);
        if (it == rhs.terms.end() || !(it->second == c))
            return {H.to_string(k), c.to_string(),
                    it == rhs.terms.end() ? "0" : it->second.to_string()};
    }
    for (const auto& [k, c] : rhs.terms)
        if (!lhs.terms.count(k)) return {H.to_string(k), "0", c.to_string()};
    return {"", "", ""};
}

} // namespace

VerificationReport verify_lifted_twist(const HopfAlgebra& H, const LiftedTwist& T) {
    VerificationReport rep("ordinary twist axioms: " + T.provenance);
    if (T.value.arity != 2 || T.inverse.arity != 2)
        throw Error("verify_lifted_twist expects arity 2");

    HTensor one = H.unit_tensor(2);
    HTensor p = H.multiply(T.value, T.inverse);
    rep.check("inverse-right", p == one, tensor_diff(H, one, p));
    HTensor q = H.multiply(T.inverse, T.value);
    rep.check("inverse-left", q == one, tensor_diff(H, one, q));

    HElement u = H.unit();
    HElement cl = H.apply_counit_leg(T.value, 0);
    rep.check("counit-left", cl == u, element_diff(H, u, cl));
    HElement cr = H.apply_counit_leg(T.value, 1);
    rep.check("counit-right", cr == u, element_diff(H, u, cr));

    HTensor lhs = H.multiply(H.coproduct_on_leg(T.value, 0), H.insert_unit_leg(T.value, 2));
    HTensor rhs = H.multiply(H.coproduct_on_leg(T.value, 1), H.insert_unit_leg(T.value, 0));
    rep.check("twist-equation", lhs == rhs, tensor_diff(H, lhs, rhs));

    rep.attach("terms", H.to_string(T.value));
    return rep;
}

HopfAlgebra twist_hopf(const HopfAlgebra& H, const LiftedTwist& T,
                       const std::optional<ScalarFamily>& family, int threads) {
    VerificationReport rt = verify_lifted_twist(H, T);
    if (!rt.all_passed()) throw Error("twist_hopf: " + first_failure(rt));

    HopfAlgebra A = H.conjugated_coproduct(T);

    if (family) {
        VerificationReport rc = coproduct_closed_form(H, T, *family);
        for (const auto& c : rc.checks())
            if (c.name == "grouplike-rows" && c.status == CheckStatus::fail)
                throw Error("twist_hopf: group-like coproduct closed form fails at " +
                            (c.witness ? c.witness->location : std::string("unknown row")));
    }

    VerificationReport rv = hopf_verify(A, threads);
    if (!rv.all_passed()) throw Error("twist_hopf: axiom check fails: " + first_failure(rv));
    return A;
}

VerificationReport coproduct_closed_form(const HopfAlgebra& H, const LiftedTwist& T,
                                         const ScalarFamily& D) {
    VerificationReport rep("twisted coproduct closed form");
    const QlsDatum& d = H.datum();
    const FiniteGroup& G = H.group();
    const int th = H.nichols().theta();

    std::vector<HTensor> lifted;
    lifted.reserve(static_cast<size_t>(G.order()));
    for (int g = 0; g < G.order(); ++g)
        lifted.push_back(lift_tensor(H, make_J_D(H.nichols(), family_act(d, g, D)).value));

    bool ok_group = true, ok_all = true;
    Witness wit_group, wit_all;
    for (const auto& key : H.basis()) {
        const HTensor& row = H.coproduct_of(key);
        HTensor actual = H.multiply(H.multiply(T.inverse, row), T.value);
        HTensor expected =
            H.multiply(T.inverse, H.multiply(lifted[static_cast<size_t>(key.back())], row));
        if (actual == expected) continue;
        bool grouplike = true;
        for (int i = 0; i < th; ++i) grouplike = grouplike && key[i] == 0;
        Witness w = tensor_diff(H, expected, actual);
        w.location = H.to_string(key) + ", term " + w.location;
        if (grouplike && ok_group) {
            ok_group = false;
            wit_group = w;
        }
        if (ok_all) {
            ok_all = false;
            wit_all = w;
        }
    }
    rep.check("grouplike-rows", ok_group, wit_group);
    rep.check("all-rows", ok_all, wit_all);

    std::vector<int> everyone(static_cast<size_t>(G.order()));
    for (int g = 0; g < G.order(); ++g) everyone[static_cast<size_t>(g)] = g;
    if (family_invariant(d, D, subgroup_generated(G, everyone))) {
        bool ok = true;
        Witness wit;
        for (const auto& key : H.basis()) {
            const HTensor& row = H.coproduct_of(key);
            HTensor actual = H.multiply(H.multiply(T.inverse, row), T.value);
            if (!(actual == row)) {
                ok = false;
                wit = tensor_diff(H, row, actual);
                wit.location = H.to_string(key) + ", term " + wit.location;
                break;
            }
        }
        rep.check("invariant-family-fixes-coproduct", ok, wit);
    } else {
        rep.skip("invariant-family-fixes-coproduct", "family moves under the group action");
    }
    return rep;
}

std::vector<HElement> antipode_solve(const HopfAlgebra& H) {
    const long dim = H.dimension();
    const int w = H.nichols().theta() + 1;
    using Table = std::vector<HElement>;

    auto flatten = [&](const Table& t) {
        std::vector<Cyclotomic> row(static_cast<size_t>(dim) * dim);
        for (long b = 0; b < dim; ++b)
            for (const auto& [k, c] : t[static_cast<size_t>(b)].terms)
                row[static_cast<size_t>(b * dim + H.rank(k))] = c;
        return row;
    };

    Table eta_eps(static_cast<size_t>(dim)), id(static_cast<size_t>(dim));
    for (long b = 0; b < dim; ++b) {
        const auto& key = H.basis()[static_cast<size_t>(b)];
        id[static_cast<size_t>(b)] = H.element(key);
        HElement e = H.unit();
        e.scale(H.counit(H.element(key)));
        eta_eps[static_cast<size_t>(b)] = std::move(e);
    }

    // convolution powers of the identity until they become dependent
    std::vector<Table> powers;
    powers.push_back(std::move(eta_eps));
    powers.push_back(std::move(id));
    RowReducer red;
    red.add_row(flatten(powers[0]));
    std::vector<Cyclotomic> combo;
    while (true) {
        auto dep = red.add_row(flatten(powers.back()));
        if (dep) {
            combo = std::move(*dep);
            break;
        }
        const Table& f = powers.back();
        Table nxt(static_cast<size_t>(dim));
        for (long b = 0; b < dim; ++b) {
            HElement acc;
            for (const auto& [k2, c] : H.coproduct_of(H.basis()[static_cast<size_t>(b)]).terms) {
                std::vector<int> k1(k2.begin(), k2.begin() + w);
                std::vector<int> kr(k2.begin() + w, k2.end());
                HElement p = H.multiply(f[static_cast<size_t>(H.rank(k1))], H.element(kr));
                for (const auto& [k, pc] : p.terms) acc.add_term(k, c * pc);
            }
            nxt[static_cast<size_t>(b)] = std::move(acc);
        }
        powers.push_back(std::move(nxt));
    }

    // powers.back() = sum_k combo[k] powers[k]; a vanishing constant
    // coefficient means the identity divides zero in the convolution algebra
    if (combo.empty() || combo[0].is_zero())
        throw Error("antipode_solve: the identity map has no convolution inverse; "
                    "this coproduct only gives a bialgebra");
    const size_t m = powers.size() - 1;
    Table S(static_cast<size_t>(dim));
    Cyclotomic c0inv = combo[0].inverse();
    for (long b = 0; b < dim; ++b) {
        HElement s = powers[m - 1][static_cast<size_t>(b)];
        for (size_t k = 1; k < m; ++k) {
            HElement sub = powers[k - 1][static_cast<size_t>(b)];
            sub.scale(combo[k]);
            s -= sub;
        }
        s.scale(c0inv);
        S[static_cast<size_t>(b)] = std::move(s);
    }

    for (long b = 0; b < dim; ++b) {
        const auto& key = H.basis()[static_cast<size_t>(b)];
        HElement want = H.unit();
        want.scale(H.counit(H.element(key)));
        HElement left, right;
        for (const auto& [k2, c] : H.coproduct_of(key).terms) {
            std::vector<int> k1(k2.begin(), k2.begin() + w);
            std::vector<int> kr(k2.begin() + w, k2.end());
            HElement l = H.multiply(S[static_cast<size_t>(H.rank(k1))], H.element(kr));
            l.scale(c);
            left += l;
            HElement r = H.multiply(H.element(k1), S[static_cast<size_t>(H.rank(kr))]);
            r.scale(c);
            right += r;
        }
        if (!(left == want))
            throw Error("antipode_solve: left antipode axiom fails at " + H.to_string(key));
        if (!(right == want))
            throw Error("antipode_solve: right antipode axiom fails at " + H.to_string(key));
    }
    return S;
}

namespace {

// first failing triple of the associativity sweep over [lo, hi) x dim x dim
std::optional<std::array<long, 3>> associativity_scan(const HopfAlgebra& H,
                                                      const std::vector<HElement>* cache,
                                                      long lo, long hi) {
    const long dim = H.dimension();
    const auto& basis = H.basis();
    auto prod = [&](long i, long j) -> HElement {
        if (cache) return cache[i][static_cast<size_t>(j)];
        return H.product_of(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
    };
    for (long i = lo; i < hi; ++i)
        for (long j = 0; j < dim; ++j) {
            HElement ij = prod(i, j);
            for (long k = 0; k < dim; ++k) {
                HElement left;
                for (const auto& [key, c] : ij.terms) {
                    HElement p = prod(H.rank(key), k);
                    p.scale(c);
                    left += p;
                }
                HElement jk = prod(j, k);
                HElement right;
                for (const auto& [key, c] : jk.terms) {
                    HElement p = prod(i, H.rank(key));
                    p.scale(c);
                    right += p;
                }
                if (!(left == right)) return std::array<long, 3>{i, j, k};
            }
        }
    return std::nullopt;
}

} // namespace

VerificationReport hopf_verify(const HopfAlgebra& H, int threads) {
    VerificationReport rep("hopf axioms");
    const long dim = H.dimension();
    const auto& basis = H.basis();
    const int w = H.nichols().theta() + 1;

    // the product table is cheap to precompute at the dimensions the
    // exhaustive sweep is meant for
    std::vector<std::vector<HElement>> cache;
    if (dim <= 512) {
        cache.resize(static_cast<size_t>(dim));
        for (long i = 0; i < dim; ++i) {
            cache[static_cast<size_t>(i)].resize(static_cast<size_t>(dim));
            for (long j = 0; j < dim; ++j)
                cache[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    H.product_of(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
        }
    }
    const std::vector<HElement>* cp = cache.empty() ? nullptr : cache.data();

    std::optional<std::array<long, 3>> bad;
    int nthreads = threads < 1 ? 1 : static_cast<int>(std::min<long>(threads, dim));
    if (nthreads <= 1) {
        bad = associativity_scan(H, cp, 0, dim);
    } else {
        std::vector<std::optional<std::array<long, 3>>> found(static_cast<size_t>(nthreads));
        std::vector<std::thread> pool;
        long chunk = (dim + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            long lo = t * chunk, hi = std::min<long>(dim, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { found[static_cast<size_t>(t)] =
                                                   associativity_scan(H, cp, lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (const auto& f : found)
            if (f && (!bad || *f < *bad)) bad = f;
    }
    if (bad) {
        auto [i, j, k] = *bad;
        HElement ij = H.product_of(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
        HElement jk = H.product_of(basis[static_cast<size_t>(j)], basis[static_cast<size_t>(k)]);
        HElement left = H.multiply(ij, H.element(basis[static_cast<size_t>(k)]));
        HElement right = H.multiply(H.element(basis[static_cast<size_t>(i)]), jk);
        Witness wit = element_diff(H, left, right);
        wit.location = "(" + H.to_string(basis[static_cast<size_t>(i)]) + ") (" +
                       H.to_string(basis[static_cast<size_t>(j)]) + ") (" +
                       H.to_string(basis[static_cast<size_t>(k)]) + "), term " + wit.location;
        rep.fail("associativity", wit);
    } else {
        rep.pass("associativity");
    }

    {
        bool ok = true;
        Witness wit;
        HElement one = H.unit();
        for (long b = 0; b < dim && ok; ++b) {
            HElement self = H.element(basis[static_cast<size_t>(b)]);
            HElement l = H.multiply(one, self), r = H.multiply(self, one);
            if (!(l == self) || !(r == self)) {
                ok = false;
                wit = element_diff(H, self, l == self ? r : l);
                wit.location = H.to_string(basis[static_cast<size_t>(b)]) + ", term " + wit.location;
            }
        }
        rep.check("unit", ok, wit);
    }

    {
        bool ok = true;
        Witness wit;
        for (long b = 0; b < dim && ok; ++b) {
            const HTensor& d2 = H.coproduct_of(basis[static_cast<size_t>(b)]);
            HTensor l = H.coproduct_on_leg(d2, 0), r = H.coproduct_on_leg(d2, 1);
            if (!(l == r)) {
                ok = false;
                wit = tensor_diff(H, l, r);
                wit.location = H.to_string(basis[static_cast<size_t>(b)]) + ", term " + wit.location;
            }
        }
        rep.check("coassociativity", ok, wit);
    }

    for (int leg = 0; leg < 2; ++leg) {
        bool ok = true;
        Witness wit;
        for (long b = 0; b < dim && ok; ++b) {
            HElement self = H.element(basis[static_cast<size_t>(b)]);
            HElement folded = H.apply_counit_leg(H.coproduct_of(basis[static_cast<size_t>(b)]), leg);
            if (!(folded == self)) {
                ok = false;
                wit = element_diff(H, self, folded);
                wit.location = H.to_string(basis[static_cast<size_t>(b)]) + ", term " + wit.location;
            }
        }
        rep.check(leg == 0 ? "counit-left" : "counit-right", ok, wit);
    }

    {
        HTensor du = H.coproduct(H.unit());
        bool ok = du == H.unit_tensor(2) && H.counit(H.unit()).is_one();
        rep.check("unit-coproduct", ok, tensor_diff(H, H.unit_tensor(2), du));
    }

    {
        bool ok = true;
        Witness wit;
        for (long i = 0; i < dim && ok; ++i)
            for (long j = 0; j < dim && ok; ++j) {
                const auto& ka = basis[static_cast<size_t>(i)];
                const auto& kb = basis[static_cast<size_t>(j)];
                HTensor lhs = H.multiply(H.coproduct_of(ka), H.coproduct_of(kb));
                HTensor rhs = H.coproduct(H.product_of(ka, kb));
                if (!(lhs == rhs)) {
                    ok = false;
                    wit = tensor_diff(H, lhs, rhs);
                    wit.location = "(" + H.to_string(ka) + ") (" + H.to_string(kb) + "), term " +
                                   wit.location;
                }
            }
        rep.check("coproduct-is-algebra-map", ok, wit);
    }

    {
        bool ok = true;
        Witness wit;
        for (long i = 0; i < dim && ok; ++i)
            for (long j = 0; j < dim && ok; ++j) {
                const auto& ka = basis[static_cast<size_t>(i)];
                const auto& kb = basis[static_cast<size_t>(j)];
                Cyclotomic lhs = H.counit(H.product_of(ka, kb));
                Cyclotomic rhs = H.counit(H.element(ka)) * H.counit(H.element(kb));
                if (!(lhs == rhs)) {
                    ok = false;
                    wit = {"(" + H.to_string(ka) + ") (" + H.to_string(kb) + ")", rhs.to_string(),
                           lhs.to_string()};
                }
            }
        rep.check("counit-is-algebra-map", ok, wit);
    }

    for (int side = 0; side < 2; ++side) {
        bool ok = true;
        Witness wit;
        for (long b = 0; b < dim && ok; ++b) {
            const auto& key = basis[static_cast<size_t>(b)];
            HElement want = H.unit();
            want.scale(H.counit(H.element(key)));
            HElement got;
            for (const auto& [k2, c] : H.coproduct_of(key).terms) {
                std::vector<int> k1(k2.begin(), k2.begin() + w);
                std::vector<int> kr(k2.begin() + w, k2.end());
                HElement p = side == 0 ? H.multiply(H.antipode_of(k1), H.element(kr))
                                       : H.multiply(H.element(k1), H.antipode_of(kr));
                p.scale(c);
                got += p;
            }
            if (!(got == want)) {
                ok = false;
                wit = element_diff(H, want, got);
                wit.location = H.to_string(key) + ", term " + wit.location;
            }
        }
        rep.check(side == 0 ? "antipode-left" : "antipode-right", ok, wit);
    }

    rep.attach("dimension", H.dimension());
    if (H.twist()) rep.attach("twist", H.twist()->provenance);
    return rep;
}

nlohmann::ordered_json structure_json(const HopfAlgebra& H) {
    const long dim = H.dimension();
    const auto& basis = H.basis();
    nlohmann::ordered_json j;
    j["dimension"] = dim;
    j["theta"] = H.nichols().theta();
    j["group_order"] = H.group().order();

    nlohmann::ordered_json keys = nlohmann::ordered_json::array();
    for (const auto& key : basis) keys.push_back(key);
    j["basis"] = std::move(keys);

    auto element_terms = [&](const HElement& e) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& [k, c] : e.terms)
            a.push_back(nlohmann::ordered_json::array({H.rank(k), c.to_string()}));
        return a;
    };

    nlohmann::ordered_json prod = nlohmann::ordered_json::array();
    for (long i = 0; i < dim; ++i)
        for (long k = 0; k < dim; ++k)
            prod.push_back(element_terms(
                H.product_of(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(k)])));
    j["product"] = std::move(prod);

    const int w = H.nichols().theta() + 1;
    nlohmann::ordered_json cop = nlohmann::ordered_json::array();
    for (long b = 0; b < dim; ++b) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& [k, c] : H.coproduct_of(basis[static_cast<size_t>(b)]).terms) {
            std::vector<int> k1(k.begin(), k.begin() + w), k2(k.begin() + w, k.end());
            a.push_back(nlohmann::ordered_json::array({H.rank(k1), H.rank(k2), c.to_string()}));
        }
        cop.push_back(std::move(a));
    }
    j["coproduct"] = std::move(cop);

    nlohmann::ordered_json ant = nlohmann::ordered_json::array();
    for (long b = 0; b < dim; ++b)
        ant.push_back(element_terms(H.antipode_of(basis[static_cast<size_t>(b)])));
    j["antipode"] = std::move(ant);

    nlohmann::ordered_json cou = nlohmann::ordered_json::array();
    for (long b = 0; b < dim; ++b)
        cou.push_back(H.counit(H.element(basis[static_cast<size_t>(b)])).to_string());
    j["counit"] = std::move(cou);

    return j;
}

} // namespace qtw
