#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtwist/cyclotomic.hpp"
#include "qtwist/qcomb.hpp"

using qtw::Cyclotomic;
using qtw::Rat;

namespace {

Cyclotomic zeta(int n, long k = 1) { return Cyclotomic::zeta(n, k); }
Cyclotomic cint(long v) { return Cyclotomic::integer(v); }

// deterministic random elements for property tests
struct Rng {
    std::mt19937_64 gen{0x5eed5eedULL};
    int conductor() {
        static const int choices[] = {1, 2, 3, 4, 5, 6, 8, 9, 12};
        return choices[gen() % (sizeof(choices) / sizeof(choices[0]))];
    }
    Cyclotomic element(int n) {
        Cyclotomic acc;
        int phi = qtw::euler_phi(n);
        for (int k = 0; k < phi; ++k) {
            long num = static_cast<long>(gen() % 11) - 5;
            long den = 1 + static_cast<long>(gen() % 4);
            if (num == 0) continue;
            acc += Cyclotomic::rational(Rat(num, den)) * zeta(n, k);
        }
        return acc;
    }
};

} // namespace

// ==================== cyclotomic arithmetic ====================

TEST_CASE("zeta powers reduce against the cyclotomic polynomial") {
    CHECK(zeta(4).pow(2) == cint(-1));
    CHECK(zeta(4).pow(4) == cint(1));
    CHECK(zeta(3) + zeta(3, 2) == cint(-1)); // 1 + z + z^2 = 0 at z = zeta_3
    CHECK(zeta(6).pow(3) == cint(-1));
    CHECK(zeta(1) == cint(1));
    CHECK(zeta(2) == cint(-1));
    // zeta_5^4 = -(1 + z + z^2 + z^3)
    Cyclotomic z5 = zeta(5);
    CHECK(z5.pow(4) == -(cint(1) + z5 + z5.pow(2) + z5.pow(3)));
}

TEST_CASE("conductor promotion embeds compatibly") {
    // zeta_3 = zeta_6^2
    CHECK(zeta(3) == zeta(6, 2));
    CHECK(zeta(2) == zeta(6, 3));
    CHECK(zeta(4, 2) == cint(-1));
    // mixed-conductor arithmetic promotes to the lcm
    Cyclotomic s = zeta(4) + zeta(6);
    CHECK(s.conductor() == 12);
    CHECK(s - zeta(6) == zeta(4).promoted(12));
    // equality across conductors
    CHECK(cint(1).promoted(8) == cint(1));
}

TEST_CASE("conductor cap rejects runaway promotions") {
    CHECK_THROWS_AS(qtw::common_conductor(25, 49), qtw::Error); // lcm 1225 > 360
    CHECK_NOTHROW(qtw::common_conductor(12, 30));
}

TEST_CASE("field axioms on pseudorandom elements") {
    Rng rng;
    for (int iter = 0; iter < 40; ++iter) {
        int n = rng.conductor();
        Cyclotomic a = rng.element(n), b = rng.element(rng.conductor()), c = rng.element(n);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == cint(1));
            CHECK((b / a) * a == b);
        }
    }
}

TEST_CASE("division by zero reports the field") {
    CHECK_THROWS_WITH_AS(cint(1) / Cyclotomic(), "division by zero in Q(zeta_1)", qtw::Error);
    CHECK_THROWS_AS(zeta(4) / (zeta(4) - zeta(4)), qtw::Error);
}

TEST_CASE("inverse of nontrivial elements") {
    // (1 + zeta_5)^-1 computed via extended euclid; sanity: product is one
    Cyclotomic a = cint(1) + zeta(5);
    CHECK((a.inverse() * a).is_one());
    Cyclotomic b = cint(2) - zeta(8, 3);
    CHECK((b / b).is_one());
}

TEST_CASE("literal printing and parsing round-trips") {
    CHECK(cint(0).to_string() == "0 (conductor 1)");
    CHECK(cint(-3).to_string() == "-3 (conductor 1)");
    CHECK(zeta(4).to_string() == "1*z^1 (conductor 4)");
    CHECK((zeta(4) + Cyclotomic::rational(Rat(1, 2))).to_string() == "1/2 + 1*z^1 (conductor 4)");
    CHECK(Cyclotomic::parse("1/2 + 1*z^1 (conductor 4)") ==
          zeta(4) + Cyclotomic::rational(Rat(1, 2)));
    CHECK(Cyclotomic::parse("z^2 (conductor 6)") == zeta(6, 2));
    CHECK(Cyclotomic::parse("z (conductor 3)") == zeta(3));
    CHECK(Cyclotomic::parse("-2/3 (conductor 1)") == Cyclotomic::rational(Rat(-2, 3)));
    CHECK(Cyclotomic::parse(" 5/10 (conductor 1) ") == Cyclotomic::rational(Rat(1, 2)));

    Rng rng;
    for (int iter = 0; iter < 60; ++iter) {
        Cyclotomic a = rng.element(rng.conductor());
        Cyclotomic back = Cyclotomic::parse(a.to_string());
        CHECK(back == a);
        CHECK(back.conductor() == a.conductor());
        CHECK(back.to_string() == a.to_string());
    }
}

TEST_CASE("literal parse rejects malformed input") {
    CHECK_THROWS_AS(Cyclotomic::parse("1 + z^2"), qtw::ConfigError);          // no conductor
    CHECK_THROWS_AS(Cyclotomic::parse("w^2 (conductor 4)"), qtw::ConfigError); // bad symbol
    CHECK_THROWS_AS(Cyclotomic::parse("1/0x (conductor 4)"), qtw::ConfigError);
    CHECK_THROWS_AS(Cyclotomic::parse(" (conductor 4)"), qtw::ConfigError);    // empty body
    CHECK_THROWS_AS(Cyclotomic::parse("1 (conductor 100000)"), qtw::ConfigError);
}

TEST_CASE("multiplicative order finds root-of-unity orders") {
    CHECK(zeta(12).multiplicative_order(24) == 12);
    CHECK(zeta(12, 4).multiplicative_order(24) == 3);
    CHECK(cint(1).multiplicative_order(4) == 1);
    CHECK(cint(-1).multiplicative_order(4) == 2);
    CHECK(cint(2).multiplicative_order(64) == std::nullopt);
}

TEST_CASE("deterministic comparison is a total order consistent with equality") {
    Rng rng;
    for (int iter = 0; iter < 30; ++iter) {
        Cyclotomic a = rng.element(rng.conductor());
        Cyclotomic b = rng.element(rng.conductor());
        int ab = Cyclotomic::compare(a, b);
        int ba = Cyclotomic::compare(b, a);
        CHECK(ab == -ba);
        CHECK((ab == 0) == (a == b));
    }
}

// ==================== q-combinatorics ====================

TEST_CASE("q-integers and q-factorials") {
    Cyclotomic q = zeta(3);
    CHECK(qtw::q_int(0, q).is_zero());
    CHECK(qtw::q_int(1, q).is_one());
    CHECK(qtw::q_int(2, q) == cint(1) + q);
    CHECK(qtw::q_int(3, q).is_zero()); // 1 + z + z^2 = 0
    CHECK(qtw::q_factorial(2, q) == cint(1) + q);
    CHECK(qtw::q_factorial(0, q).is_one());
}

TEST_CASE("q-binomial examples") {
    // C(3,2) at q = zeta_4 is 1 + q + q^2 = zeta_4
    CHECK(qtw::q_binomial(3, 2, zeta(4)) == zeta(4));
    CHECK(qtw::q_binomial(5, 0, zeta(8)).is_one());
    CHECK(qtw::q_binomial(4, 4, zeta(8)).is_one());
    CHECK(qtw::q_binomial(2, 1, zeta(6)) == cint(1) + zeta(6));
    // at q = 1 the q-binomial is the ordinary binomial
    CHECK(qtw::q_binomial(6, 3, cint(1)) == cint(20));
}

TEST_CASE("q-binomial denominator vanishing is reported") {
    // (N)_q = 0 for q a primitive N-th root; it lands in the denominator of
    // C(N+1, 1)... no: C(N+1,1) = (N+1)_q / (1)_q.  Force it with k = N:
    // C(N+1, N) has denominator (N)!_q which contains (N)_q = 0.
    CHECK_THROWS_AS(qtw::q_binomial(4, 3, zeta(3)), qtw::Error);
    CHECK_THROWS_WITH_AS(qtw::q_binomial(4, 3, zeta(3)),
                         "q_binomial: denominator factor (3)_q vanishes at q = 1*z^1 (conductor 3)",
                         qtw::Error);
}

TEST_CASE("pascal recurrence and symmetry for q-binomials") {
    // C(n,k)_q = C(n-1,k-1)_q + q^k C(n-1,k)_q, plus C(n,k)=C(n,n-k) when
    // all denominators are alive; checked away from vanishing factorials.
    for (int N = 2; N <= 8; ++N) {
        for (int t = 1; t < N; ++t) {
            if (std::gcd(t, N) != 1) continue;
            Cyclotomic q = zeta(N, t);
            for (int n = 1; n < N; ++n) {
                for (int k = 0; k <= n; ++k) {
                    Cyclotomic lhs = qtw::q_binomial(n, k, q);
                    CHECK(lhs == qtw::q_binomial(n, n - k, q));
                    if (k >= 1 && k <= n - 1) {
                        Cyclotomic rhs = qtw::q_binomial(n - 1, k - 1, q) +
                                         q.pow(k) * qtw::q_binomial(n - 1, k, q);
                        CHECK(lhs == rhs);
                    }
                }
            }
        }
    }
}

TEST_CASE("root-of-unity q-binomial identity, single instances") {
    // N=2, q=-1: a=0, i=j=1
    auto r = qtw::q_binomial_identity_check(2, cint(-1), 0, 1, 1);
    CHECK(r.holds);
    CHECK(r.sum.is_one());
    // N=3, q=zeta_3: a=1, i=j=2
    auto r2 = qtw::q_binomial_identity_check(3, zeta(3), 1, 2, 2);
    CHECK(r2.holds);
}

TEST_CASE("identity check rejects bad indices and non-primitive q") {
    CHECK_THROWS_AS(qtw::q_binomial_identity_check(4, zeta(4), 1, 1, 1), qtw::Error); // i+j != N+a
    CHECK_THROWS_AS(qtw::q_binomial_identity_check(4, zeta(4, 2), 0, 2, 2), qtw::Error);
    CHECK_THROWS_AS(qtw::q_binomial_identity_check(4, zeta(4), -1, 2, 2), qtw::Error);
    CHECK_THROWS_AS(qtw::q_binomial_identity_check(4, zeta(4), 0, 4, 0), qtw::Error);
}

TEST_CASE("primitivity detection") {
    CHECK(qtw::is_primitive_root_of_unity(zeta(6), 6));
    CHECK_FALSE(qtw::is_primitive_root_of_unity(zeta(6, 2), 6)); // order 3
    CHECK(qtw::is_primitive_root_of_unity(zeta(6, 2), 3));
    CHECK(qtw::is_primitive_root_of_unity(cint(1), 1));
    CHECK_FALSE(qtw::is_primitive_root_of_unity(cint(2), 1));
}

TEST_CASE("q-exponential coefficients") {
    Cyclotomic q = zeta(5);
    CHECK(qtw::exp_q_coefficient(0, q).is_one());
    CHECK(qtw::exp_q_coefficient(2, q) == (qtw::q_factorial(2, q)).inverse());
    // inverse series: (-1)^n q^{n(n-1)/2} / (n)!_q
    CHECK(qtw::exp_q_inverse_coefficient(1, q) == -qtw::exp_q_coefficient(1, q));
    CHECK(qtw::exp_q_inverse_coefficient(2, q) == q * qtw::exp_q_coefficient(2, q));
    CHECK(qtw::exp_q_inverse_coefficient(3, q) == -q.pow(3) * qtw::exp_q_coefficient(3, q));
    CHECK_THROWS_AS(qtw::exp_q_coefficient(5, q), qtw::Error); // (5)!_q = 0
}
