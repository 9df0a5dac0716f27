#include "qtwist/cyclotomic.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qtw {

namespace {

std::atomic<int> g_conductor_cap{360};

// Dense polynomials over Q, lowest degree first.  Only used internally for
// the cyclotomic-polynomial machinery; trailing zeros are trimmed.
using Poly = std::vector<Rat>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder against a monic divisor.
std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
    if (den.empty() || den.back() != 1)
        throw Error("internal: polynomial division requires a monic divisor");
    Poly q;
    if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Rat(0));
    while (num.size() >= den.size()) {
        Rat lead = num.back();
        size_t shift = num.size() - den.size();
        q[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
        trim(num);
    }
    trim(q);
    return {q, num};
}

struct CycloField {
    int n = 1;
    int phi = 1;
    Poly modpoly;                    // Phi_n, monic, size phi+1
    std::vector<Poly> zpow;          // z^k reduced mod Phi_n, k = 0..kmax
};

// Phi_n by repeated division: x^n - 1 = prod_{d | n} Phi_d.
Poly cyclotomic_poly(int n, const std::map<int, Poly>& lower) {
    Poly num(n + 1, Rat(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        auto [q, r] = divmod(num, lower.at(d));
        if (!r.empty()) throw Error("internal: cyclotomic polynomial division left a remainder");
        num = q;
    }
    return num;
}

const CycloField& field(int n) {
    static std::mutex mtx;
    static std::map<int, CycloField> cache;
    static std::map<int, Poly> polys; // Phi_d for all d seen so far
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    for (int d = 1; d <= n; ++d) {
        if (n % d != 0 || polys.count(d)) continue;
        polys[d] = cyclotomic_poly(d, polys);
    }
    CycloField f;
    f.n = n;
    f.modpoly = polys[n];
    f.phi = static_cast<int>(f.modpoly.size()) - 1;
    int kmax = std::max(2 * f.phi - 2, n);
    f.zpow.resize(kmax + 1);
    Poly cur{Rat(1)};
    for (int k = 0; k <= kmax; ++k) {
        f.zpow[k] = cur;
        // multiply by z, reduce once (cur stays of degree < phi)
        Poly next(cur.size() + 1, Rat(0));
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
        if (static_cast<int>(next.size()) == f.phi + 1) {
            Rat lead = next.back();
            next.pop_back();
            if (lead != 0)
                for (int i = 0; i < f.phi; ++i) next[i] -= lead * f.modpoly[i];
        }
        trim(next);
        cur = next;
    }
    for (auto& p : f.zpow) p.resize(f.phi, Rat(0));
    auto [pos, inserted] = cache.emplace(n, std::move(f));
    (void)inserted;
    return pos->second;
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

} // namespace

int euler_phi(int n) {
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

int common_conductor(int a, int b) {
    long l = static_cast<long>(a) / gcd_int(a, b) * b;
    if (l > Cyclotomic::conductor_cap())
        throw Error("conductor " + std::to_string(l) + " exceeds cap " +
                    std::to_string(Cyclotomic::conductor_cap()));
    return static_cast<int>(l);
}

int Cyclotomic::conductor_cap() { return g_conductor_cap.load(); }

void Cyclotomic::set_conductor_cap(int cap) {
    if (cap < 1) throw Error("conductor cap must be positive");
    g_conductor_cap.store(cap);
}

Cyclotomic::Cyclotomic() : n_(1), c_(1, Rat(0)) {}

Cyclotomic::Cyclotomic(int n) : n_(n), c_(field(n).phi, Rat(0)) {}

Cyclotomic Cyclotomic::integer(long v) {
    Cyclotomic x;
    x.c_[0] = Rat(static_cast<signed long>(v));
    return x;
}

Cyclotomic Cyclotomic::rational(const Rat& v) {
    Cyclotomic x;
    x.c_[0] = v;
    x.c_[0].canonicalize();
    return x;
}

Cyclotomic Cyclotomic::zeta(int n, long power) {
    if (n < 1) throw Error("conductor must be positive");
    if (n > conductor_cap())
        throw Error("conductor " + std::to_string(n) + " exceeds cap " +
                    std::to_string(conductor_cap()));
    long k = power % n;
    if (k < 0) k += n;
    Cyclotomic x(n);
    std::vector<Rat> raw(static_cast<size_t>(k) + 1, Rat(0));
    raw.back() = 1;
    x.reduce_from(std::move(raw));
    return x;
}

void Cyclotomic::reduce_from(std::vector<Rat> raw) {
    const CycloField& f = field(n_);
    std::vector<Rat> out(f.phi, Rat(0));
    for (size_t k = 0; k < raw.size(); ++k) {
        if (raw[k] == 0) continue;
        if (static_cast<int>(k) < f.phi) {
            out[k] += raw[k];
            continue;
        }
        if (k >= f.zpow.size()) throw Error("internal: reduction table too small");
        const Poly& row = f.zpow[k];
        for (int i = 0; i < f.phi; ++i)
            if (row[i] != 0) out[i] += raw[k] * row[i];
    }
    for (auto& v : out) v.canonicalize();
    c_ = std::move(out);
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return v == 0; });
}

bool Cyclotomic::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& v) { return v == 0; });
}

bool Cyclotomic::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& v) { return v == 0; });
}

Rat Cyclotomic::rational_value() const {
    if (!is_rational()) throw Error("element is not rational: " + to_string());
    return c_[0];
}

Cyclotomic Cyclotomic::promoted(int m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw Error("cannot embed conductor " + std::to_string(n_) +
                                 " into " + std::to_string(m));
    if (m > conductor_cap())
        throw Error("conductor " + std::to_string(m) + " exceeds cap " +
                    std::to_string(conductor_cap()));
    int stride = m / n_;
    Cyclotomic out(m);
    std::vector<Rat> raw(static_cast<size_t>((c_.size() - 1)) * stride + 1, Rat(0));
    for (size_t k = 0; k < c_.size(); ++k) raw[k * stride] = c_[k];
    out.reduce_from(std::move(raw));
    return out;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (n_ != o.n_) {
        int l = common_conductor(n_, o.n_);
        *this = promoted(l);
        return *this += o.promoted(l);
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    if (n_ != o.n_) {
        int l = common_conductor(n_, o.n_);
        *this = promoted(l);
        return *this -= o.promoted(l);
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (n_ != o.n_) {
        int l = common_conductor(n_, o.n_);
        *this = promoted(l);
        return *this *= o.promoted(l);
    }
    std::vector<Rat> conv(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    reduce_from(std::move(conv));
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw Error("division by zero in Q(zeta_" + std::to_string(n_) + ")");
    if (is_rational()) {
        Rat inv = 1 / c_[0];
        inv.canonicalize();
        Cyclotomic out(n_);
        out.c_[0] = inv;
        return out;
    }
    // Extended Euclid in Q[x] against Phi_n (irreducible over Q), so
    // gcd(a, Phi_n) = 1 and  u*a + v*Phi_n = 1  gives u = a^{-1}.
    const CycloField& f = field(n_);
    Poly r0 = f.modpoly;
    Poly r1 = c_;
    trim(r1);
    Poly s0{}, s1{Rat(1)}; // coefficients of the element in the Bezout combo
    while (!r1.empty()) {
        // make r1 monic for divmod, track the scale
        Rat lead = r1.back();
        Poly r1m = r1;
        for (auto& v : r1m) v /= lead;
        auto [q, r] = divmod(r0, r1m);
        for (auto& v : q) v /= lead; // q against the unscaled r1
        // r_new = r0 - q * r1 ; s_new = s0 - q * s1
        Poly snew = s0;
        snew.resize(std::max(snew.size(), q.size() + (s1.empty() ? 0 : s1.size() - 1) + 1), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) {
                if (snew.size() < i + j + 1) snew.resize(i + j + 1, Rat(0));
                snew[i + j] -= q[i] * s1[j];
            }
        }
        trim(snew);
        r0 = std::move(r1);
        s0 = std::move(s1);
        r1 = std::move(r);
        s1 = std::move(snew);
    }
    // r0 = gcd (nonzero constant times unit); scale s0 so the combo equals 1
    if (r0.size() != 1)
        throw Error("internal: non-invertible element in cyclotomic field");
    Rat scale = 1 / r0[0];
    Cyclotomic out(n_);
    std::vector<Rat> raw = s0;
    for (auto& v : raw) v *= scale;
    out.reduce_from(std::move(raw));
    return out;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic base = *this;
    Cyclotomic acc = Cyclotomic::integer(1);
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1UL) acc *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return acc;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (n_ == o.n_) return c_ == o.c_;
    int l = common_conductor(n_, o.n_);
    return promoted(l).c_ == o.promoted(l).c_;
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == b.n_) {
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int c = cmp(a.c_[i], b.c_[i]);
            if (c != 0) return c;
        }
        return 0;
    }
    int l = common_conductor(a.n_, b.n_);
    return compare(a.promoted(l), b.promoted(l));
}

std::optional<long> Cyclotomic::multiplicative_order(long cap) const {
    if (is_zero()) return std::nullopt;
    Cyclotomic x = *this;
    for (long k = 1; k <= cap; ++k) {
        if (x.is_one()) return k;
        x *= *this;
    }
    return std::nullopt;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        os << c_[k].get_str();
        if (k > 0) os << "*z^" << k;
        first = false;
    }
    if (first) os << "0";
    os << " (conductor " << n_ << ")";
    return os.str();
}

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
}

Rat parse_rat(std::string_view tok) {
    if (tok.empty()) throw ConfigError("empty rational in cyclotomic literal");
    for (char ch : tok)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
            throw ConfigError("bad rational '" + std::string(tok) + "' in cyclotomic literal");
    try {
        Rat r{std::string(tok)};
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw ConfigError("bad rational '" + std::string(tok) + "' in cyclotomic literal");
    }
}

} // namespace

Cyclotomic Cyclotomic::parse(std::string_view text) {
    // grammar:  term ( '+' term )* '(' 'conductor' INT ')'
    // term:     RAT | RAT '*' 'z' '^' INT | 'z' '^' INT | 'z'
    std::string_view s = text;
    size_t paren = s.rfind('(');
    if (paren == std::string_view::npos)
        throw ConfigError("cyclotomic literal missing '(conductor n)': " + std::string(text));
    std::string_view tail = s.substr(paren + 1);
    std::string_view body = s.substr(0, paren);
    skip_ws(tail);
    const std::string kw = "conductor";
    if (tail.substr(0, kw.size()) != kw)
        throw ConfigError("expected 'conductor' in literal: " + std::string(text));
    tail.remove_prefix(kw.size());
    skip_ws(tail);
    size_t close = tail.find(')');
    if (close == std::string_view::npos)
        throw ConfigError("unterminated conductor clause: " + std::string(text));
    int n = 0;
    {
        std::string numstr(tail.substr(0, close));
        while (!numstr.empty() && numstr.back() == ' ') numstr.pop_back();
        if (numstr.empty() || !std::all_of(numstr.begin(), numstr.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            }))
            throw ConfigError("bad conductor in literal: " + std::string(text));
        n = std::stoi(numstr);
    }
    if (n < 1) throw ConfigError("conductor must be >= 1");
    if (n > conductor_cap())
        throw ConfigError("conductor " + std::to_string(n) + " exceeds cap " +
                          std::to_string(conductor_cap()));

    Cyclotomic out(n);
    int phi = static_cast<int>(out.c_.size());
    std::vector<Rat> raw(phi, Rat(0));
    size_t start = 0;
    std::string bodystr(body);
    bool any = false;
    while (start <= bodystr.size()) {
        size_t plus = bodystr.find('+', start);
        // careful: '+' may be a sign right after '*' or at term start; we only
        // split on '+' that follows a complete term, i.e. not the first
        // character of the chunk.
        while (plus != std::string::npos && (plus == start || bodystr[plus - 1] == '*' ||
                                             bodystr[plus - 1] == '+' || bodystr[plus - 1] == '-')) {
            plus = bodystr.find('+', plus + 1);
        }
        std::string term = bodystr.substr(start, plus == std::string::npos ? std::string::npos
                                                                           : plus - start);
        // trim
        while (!term.empty() && (term.front() == ' ' || term.front() == '\t')) term.erase(term.begin());
        while (!term.empty() && (term.back() == ' ' || term.back() == '\t')) term.pop_back();
        if (!term.empty()) {
            any = true;
            Rat coeff(1);
            long power = 0;
            size_t star = term.find('*');
            std::string coefftok, ztok;
            if (star != std::string::npos) {
                coefftok = term.substr(0, star);
                ztok = term.substr(star + 1);
            } else if (term[0] == 'z') {
                ztok = term;
            } else {
                coefftok = term;
            }
            auto strip = [](std::string& t) {
                while (!t.empty() && t.front() == ' ') t.erase(t.begin());
                while (!t.empty() && t.back() == ' ') t.pop_back();
            };
            strip(coefftok);
            strip(ztok);
            if (!coefftok.empty()) coeff = parse_rat(coefftok);
            if (!ztok.empty()) {
                if (ztok == "z") {
                    power = 1;
                } else if (ztok.size() > 2 && ztok[0] == 'z' && ztok[1] == '^') {
                    std::string p = ztok.substr(2);
                    if (p.empty() || !std::all_of(p.begin(), p.end(), [](char c) {
                            return std::isdigit(static_cast<unsigned char>(c));
                        }))
                        throw ConfigError("bad power in literal term '" + term + "'");
                    power = std::stol(p);
                } else {
                    throw ConfigError("bad term '" + term + "' in cyclotomic literal");
                }
            }
            long red = power % n;
            std::vector<Rat> mono(static_cast<size_t>(red) + 1, Rat(0));
            mono.back() = coeff;
            Cyclotomic t(n);
            t.reduce_from(std::move(mono));
            for (int i = 0; i < phi; ++i) raw[i] += t.c_[i];
        }
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    if (!any) throw ConfigError("empty cyclotomic literal body: " + std::string(text));
    for (auto& v : raw) v.canonicalize();
    out.c_ = std::move(raw);
    return out;
}

} // namespace qtw
