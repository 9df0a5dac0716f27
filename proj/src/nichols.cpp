#include "qtwist/nichols.hpp"

#include <sstream>

namespace qtw {

void BElement::add_term(const Monomial& m, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

BElement& BElement::operator+=(const BElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

BElement& BElement::operator-=(const BElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
}

void BElement::scale(const Cyclotomic& c) {
    if (c.is_zero()) {
        terms.clear();
        return;
    }
    for (auto& [m, v] : terms) v *= c;
}

void TensorElement::add_term(const std::vector<int>& key, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    if (arity != o.arity) throw Error("tensor arity mismatch");
    for (const auto& [k, c] : o.terms) add_term(k, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    if (arity != o.arity) throw Error("tensor arity mismatch");
    for (const auto& [k, c] : o.terms) add_term(k, -c);
    return *this;
}

void TensorElement::scale(const Cyclotomic& c) {
    if (c.is_zero()) {
        terms.clear();
        return;
    }
    for (auto& [k, v] : terms) v *= c;
}

NicholsAlgebra::NicholsAlgebra(QlsDatum d) : d_(std::move(d)) {
    VerificationReport rep = datum_validate(d_);
    if (!rep.all_passed()) {
        for (const auto& c : rep.checks())
            if (c.status == CheckStatus::fail)
                throw Error("invalid datum: " + c.name);
    }
}

long NicholsAlgebra::dimension() const {
    long dim = 1;
    for (long n : d_.N) dim *= n;
    return dim;
}

std::vector<Monomial> NicholsAlgebra::basis() const {
    std::vector<Monomial> out;
    out.reserve(dimension());
    Monomial r(d_.theta, 0);
    while (true) {
        out.push_back(r);
        int i = d_.theta - 1;
        while (i >= 0 && r[i] == d_.N[i] - 1) r[i--] = 0;
        if (i < 0) break;
        ++r[i];
    }
    return out;
}

BElement NicholsAlgebra::unit() const {
    BElement u;
    u.add_term(Monomial(d_.theta, 0), Cyclotomic::integer(1));
    return u;
}

BElement NicholsAlgebra::x(int i) const {
    if (i < 0 || i >= d_.theta) throw Error("generator index out of range");
    Monomial r(d_.theta, 0);
    r[i] = 1;
    return monomial(r);
}

BElement NicholsAlgebra::monomial(const Monomial& r, const Cyclotomic& c) const {
    check_monomial(r);
    BElement u;
    u.add_term(r, c);
    return u;
}

void NicholsAlgebra::check_monomial(const Monomial& m) const {
    if (static_cast<int>(m.size()) != d_.theta)
        throw Error("monomial has wrong number of exponents");
    for (int i = 0; i < d_.theta; ++i)
        if (m[i] < 0 || m[i] >= d_.N[i])
            throw Error("exponent " + std::to_string(m[i]) + " of x" + std::to_string(i + 1) +
                        " outside [0, N)");
}

void NicholsAlgebra::check_key(const std::vector<int>& key, int arity) const {
    if (static_cast<int>(key.size()) != arity * d_.theta)
        throw Error("tensor key has wrong length");
}

BElement NicholsAlgebra::multiply(const BElement& u, const BElement& v) const {
    BElement out;
    for (const auto& [r, cu] : u.terms) {
        check_monomial(r);
        for (const auto& [s, cv] : v.terms) {
            check_monomial(s);
            bool dead = false;
            for (int i = 0; i < d_.theta && !dead; ++i)
                if (r[i] + s[i] >= d_.N[i]) dead = true;
            if (dead) continue;
            // normal ordering: each x_i block of v passes the x_j blocks
            // of u with j > i, one factor q_ji per swap
            Cyclotomic scalar = cu * cv;
            for (int i = 0; i < d_.theta; ++i)
                for (int j = i + 1; j < d_.theta; ++j)
                    if (s[i] != 0 && r[j] != 0)
                        scalar *= d_.q_at(j, i).pow(static_cast<long>(r[j]) * s[i]);
            Monomial m(d_.theta);
            for (int i = 0; i < d_.theta; ++i) m[i] = r[i] + s[i];
            out.add_term(m, scalar);
        }
    }
    return out;
}

BElement NicholsAlgebra::power(const BElement& u, int n) const {
    if (n < 0) throw Error("negative power");
    BElement acc = unit();
    for (int k = 0; k < n; ++k) acc = multiply(acc, u);
    return acc;
}

Cyclotomic NicholsAlgebra::counit(const BElement& u) const {
    auto it = u.terms.find(Monomial(d_.theta, 0));
    return it == u.terms.end() ? Cyclotomic{} : it->second;
}

int NicholsAlgebra::degree(const Monomial& m) const {
    check_monomial(m);
    int g = d_.G.identity();
    for (int i = 0; i < d_.theta; ++i) g = d_.G.op(g, d_.G.power(d_.g[i], m[i]));
    return g;
}

Cyclotomic NicholsAlgebra::action(int g, const Monomial& m) const {
    check_monomial(m);
    Cyclotomic s = Cyclotomic::integer(1);
    for (int i = 0; i < d_.theta; ++i)
        if (m[i] != 0) s *= d_.chi[i].value(g).pow(m[i]);
    return s;
}

Cyclotomic NicholsAlgebra::pairing(const Monomial& r, const BElement& u) const {
    check_monomial(r);
    auto it = u.terms.find(r);
    if (it == u.terms.end()) return {};
    Cyclotomic s = it->second;
    for (int i = 0; i < d_.theta; ++i) s *= q_factorial(r[i], d_.q_diag(i));
    return s;
}

TensorElement NicholsAlgebra::tensor(const BElement& a, const BElement& b) const {
    TensorElement t;
    t.arity = 2;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            std::vector<int> key = ma;
            key.insert(key.end(), mb.begin(), mb.end());
            t.add_term(key, ca * cb);
        }
    return t;
}

TensorElement NicholsAlgebra::tensor(const BElement& a, const BElement& b,
                                     const BElement& c) const {
    TensorElement t;
    t.arity = 3;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms)
            for (const auto& [mc, cc] : c.terms) {
                std::vector<int> key = ma;
                key.insert(key.end(), mb.begin(), mb.end());
                key.insert(key.end(), mc.begin(), mc.end());
                t.add_term(key, ca * cb * cc);
            }
    return t;
}

TensorElement NicholsAlgebra::unit_tensor(int arity) const {
    if (arity != 2 && arity != 3) throw Error("tensor arity must be 2 or 3");
    TensorElement t;
    t.arity = arity;
    t.add_term(std::vector<int>(static_cast<size_t>(arity) * d_.theta, 0),
               Cyclotomic::integer(1));
    return t;
}

TensorElement NicholsAlgebra::braided_multiply(const TensorElement& s,
                                               const TensorElement& t) const {
    if (s.arity != t.arity) throw Error("tensor arity mismatch");
    const int k = s.arity;
    const int th = d_.theta;
    TensorElement out;
    out.arity = k;
    for (const auto& [ka, ca] : s.terms) {
        check_key(ka, k);
        for (const auto& [kb, cb] : t.terms) {
            check_key(kb, k);
            Cyclotomic scalar = ca * cb;
            // leg p of the left factor crosses legs q < p of the right one
            for (int p = 1; p < k; ++p) {
                Monomial ap(ka.begin() + p * th, ka.begin() + (p + 1) * th);
                int dp = degree(ap);
                for (int q = 0; q < p; ++q) {
                    Monomial bq(kb.begin() + q * th, kb.begin() + (q + 1) * th);
                    scalar *= action(dp, bq);
                }
            }
            if (scalar.is_zero()) continue;
            // component-wise product of the legs
            std::vector<BElement> legs;
            legs.reserve(k);
            for (int p = 0; p < k; ++p) {
                Monomial ap(ka.begin() + p * th, ka.begin() + (p + 1) * th);
                Monomial bp(kb.begin() + p * th, kb.begin() + (p + 1) * th);
                legs.push_back(multiply(monomial(ap), monomial(bp)));
            }
            // all legs are single monomials or zero after the product
            std::vector<int> key;
            key.reserve(static_cast<size_t>(k) * th);
            Cyclotomic coeff = scalar;
            bool dead = false;
            for (const auto& leg : legs) {
                if (leg.is_zero()) {
                    dead = true;
                    break;
                }
                const auto& [m, c] = *leg.terms.begin();
                key.insert(key.end(), m.begin(), m.end());
                coeff *= c;
            }
            if (!dead) out.add_term(key, coeff);
        }
    }
    return out;
}

TensorElement NicholsAlgebra::coproduct_power(int i, int n) const {
    TensorElement t;
    t.arity = 2;
    const Cyclotomic q = d_.q_diag(i);
    for (int k = 0; k <= n; ++k) {
        std::vector<int> key(static_cast<size_t>(2) * d_.theta, 0);
        key[i] = k;
        key[d_.theta + i] = n - k;
        t.add_term(key, q_binomial(n, k, q));
    }
    return t;
}

TensorElement NicholsAlgebra::coproduct(const BElement& u) const {
    TensorElement out;
    out.arity = 2;
    for (const auto& [r, c] : u.terms) {
        check_monomial(r);
        TensorElement acc = unit_tensor(2);
        for (int i = 0; i < d_.theta; ++i)
            if (r[i] != 0) acc = braided_multiply(acc, coproduct_power(i, r[i]));
        acc.scale(c);
        out += acc;
    }
    return out;
}

TensorElement NicholsAlgebra::coproduct_on_leg(const TensorElement& t, int leg) const {
    if (t.arity != 2) throw Error("coproduct_on_leg expects arity 2");
    if (leg != 0 && leg != 1) throw Error("leg must be 0 or 1");
    const int th = d_.theta;
    TensorElement out;
    out.arity = 3;
    for (const auto& [key, c] : t.terms) {
        check_key(key, 2);
        Monomial split(key.begin() + leg * th, key.begin() + (leg + 1) * th);
        Monomial kept(key.begin() + (1 - leg) * th, key.begin() + (2 - leg) * th);
        TensorElement d2 = coproduct(monomial(split));
        for (const auto& [k2, c2] : d2.terms) {
            std::vector<int> k3;
            k3.reserve(static_cast<size_t>(3) * th);
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

TensorElement NicholsAlgebra::insert_unit_leg(const TensorElement& t, int position) const {
    if (t.arity != 2) throw Error("insert_unit_leg expects arity 2");
    if (position < 0 || position > 2) throw Error("position must be 0, 1, or 2");
    const int th = d_.theta;
    TensorElement out;
    out.arity = 3;
    for (const auto& [key, c] : t.terms) {
        std::vector<int> k3 = key;
        k3.insert(k3.begin() + position * th, th, 0);
        out.add_term(k3, c);
    }
    return out;
}

BElement NicholsAlgebra::apply_counit_leg(const TensorElement& t, int leg) const {
    if (t.arity != 2) throw Error("apply_counit_leg expects arity 2");
    if (leg != 0 && leg != 1) throw Error("leg must be 0 or 1");
    const int th = d_.theta;
    BElement out;
    for (const auto& [key, c] : t.terms) {
        Monomial dropped(key.begin() + leg * th, key.begin() + (leg + 1) * th);
        bool constant = true;
        for (int e : dropped) constant = constant && e == 0;
        if (!constant) continue;
        out.add_term(Monomial(key.begin() + (1 - leg) * th, key.begin() + (2 - leg) * th), c);
    }
    return out;
}

int NicholsAlgebra::term_degree(const std::vector<int>& key) const {
    if (key.size() % d_.theta != 0) throw Error("tensor key has wrong length");
    int g = d_.G.identity();
    for (size_t p = 0; p * d_.theta < key.size(); ++p)
        g = d_.G.op(g, degree(Monomial(key.begin() + p * d_.theta,
                                       key.begin() + (p + 1) * d_.theta)));
    return g;
}

Cyclotomic NicholsAlgebra::term_action(int g, const std::vector<int>& key) const {
    if (key.size() % d_.theta != 0) throw Error("tensor key has wrong length");
    Cyclotomic s = Cyclotomic::integer(1);
    for (size_t p = 0; p * d_.theta < key.size(); ++p)
        s *= action(g, Monomial(key.begin() + p * d_.theta, key.begin() + (p + 1) * d_.theta));
    return s;
}

std::string NicholsAlgebra::to_string(const Monomial& m) const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < d_.theta; ++i) {
        if (m[i] == 0) continue;
        if (any) os << " ";
        os << "x" << (i + 1);
        if (m[i] > 1) os << "^" << m[i];
        any = true;
    }
    if (!any) return "1";
    return os.str();
}

std::string NicholsAlgebra::to_string(const BElement& u) const {
    if (u.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : u.terms) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ") " << to_string(m);
        first = false;
    }
    return os.str();
}

std::string NicholsAlgebra::to_string(const TensorElement& t) const {
    if (t.is_zero()) return "0";
    const int th = d_.theta;
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : t.terms) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ") ";
        for (int p = 0; p < t.arity; ++p) {
            if (p) os << " (x) ";
            os << to_string(Monomial(key.begin() + p * th, key.begin() + (p + 1) * th));
        }
        first = false;
    }
    return os.str();
}

} // namespace qtw
