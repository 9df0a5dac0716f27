#ifndef QTWIST_CYCLOTOMIC_HPP
#define QTWIST_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtwist/errors.hpp"

namespace qtw {

using Rat = mpq_class;

// Elements of the cyclotomic field Q(zeta_n).  An element is stored as a
// polynomial in zeta_n with rational coefficients, reduced modulo the n-th
// cyclotomic polynomial, so each value has exactly one representation for a
// fixed conductor n.  Binary operations on elements with different
// conductors first embed both into Q(zeta_l) for l = lcm of the conductors
// (zeta_m  ->  zeta_l^{l/m}); the lcm is subject to a configurable cap so a
// runaway computation fails loudly instead of allocating huge fields.
//
// All arithmetic is exact.  There is no floating point anywhere.
class Cyclotomic {
  public:
    Cyclotomic();                                 // zero, conductor 1
    static Cyclotomic integer(long v);
    static Cyclotomic rational(const Rat& v);
    static Cyclotomic zeta(int n, long power = 1); // zeta_n^power

    int conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    // True when the element lies in Q (only the constant coefficient may be
    // nonzero); rational_value() then returns it.
    bool is_rational() const;
    Rat rational_value() const;

    // Embeds into Q(zeta_m); m must be a multiple of the conductor.
    Cyclotomic promoted(int m) const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

    Cyclotomic inverse() const;         // throws Error on zero
    Cyclotomic pow(long e) const;       // negative exponents use inverse()

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Smallest k >= 1 with x^k == 1, searched up to `cap`; nullopt when the
    // element is not a root of unity of order <= cap.
    std::optional<long> multiplicative_order(long cap) const;

    // Literal form "c0 + c1*z^1 + ... (conductor n)" with exact rational
    // coefficients; parse() accepts exactly what to_string() emits plus
    // optional whitespace and omitted zero terms.  Round-trips bit-exactly.
    std::string to_string() const;
    static Cyclotomic parse(std::string_view text);

    // Total order compatible with ==, used for deterministic containers.
    static int compare(const Cyclotomic& a, const Cyclotomic& b);

    // Conductor cap shared by all operations (default 360).
    static int conductor_cap();
    static void set_conductor_cap(int cap);

  private:
    int n_;                  // conductor
    std::vector<Rat> c_;     // size phi(n_), reduced mod Phi_n

    explicit Cyclotomic(int n);
    void reduce_from(std::vector<Rat> raw); // raw poly in zeta_n, any degree
};

int euler_phi(int n);
// lcm(a, b) checked against the conductor cap.
int common_conductor(int a, int b);

} // namespace qtw

#endif
