#include "qtwist/qcomb.hpp"

namespace qtw {

Cyclotomic q_int(long n, const Cyclotomic& q) {
    if (n < 0) throw Error("q_int: negative argument " + std::to_string(n));
    Cyclotomic acc;
    Cyclotomic p = Cyclotomic::integer(1);
    for (long k = 0; k < n; ++k) {
        acc += p;
        p *= q;
    }
    return acc;
}

Cyclotomic q_factorial(long n, const Cyclotomic& q) {
    if (n < 0) throw Error("q_factorial: negative argument " + std::to_string(n));
    Cyclotomic acc = Cyclotomic::integer(1);
    for (long k = 1; k <= n; ++k) acc *= q_int(k, q);
    return acc;
}

Cyclotomic q_binomial(long n, long k, const Cyclotomic& q) {
    if (k < 0 || k > n)
        throw Error("q_binomial: indices out of range, n=" + std::to_string(n) +
                    " k=" + std::to_string(k));
    // cancel factor by factor so a vanishing numerator term is fine as long
    // as the denominator stays nonzero
    Cyclotomic num = Cyclotomic::integer(1);
    for (long t = n - k + 1; t <= n; ++t) num *= q_int(t, q);
    Cyclotomic den = Cyclotomic::integer(1);
    for (long t = 1; t <= k; ++t) {
        Cyclotomic f = q_int(t, q);
        if (f.is_zero())
            throw Error("q_binomial: denominator factor (" + std::to_string(t) +
                        ")_q vanishes at q = " + q.to_string());
        den *= f;
    }
    return num / den;
}

bool is_primitive_root_of_unity(const Cyclotomic& q, long N) {
    if (N < 1 || q.is_zero()) return false;
    Cyclotomic p = Cyclotomic::integer(1);
    for (long k = 1; k < N; ++k) {
        p *= q;
        if (p.is_one()) return false;
    }
    p *= q;
    return p.is_one();
}

QBinomialIdentity q_binomial_identity_check(long N, const Cyclotomic& q, long a, long i, long j) {
    if (!is_primitive_root_of_unity(q, N))
        throw Error("identity check: q = " + q.to_string() + " is not a primitive " +
                    std::to_string(N) + "-th root of unity");
    auto range_check = [N](const char* name, long v) {
        if (v < 0 || v >= N)
            throw Error(std::string("identity check: index ") + name + "=" + std::to_string(v) +
                        " outside [0," + std::to_string(N) + ")");
    };
    range_check("a", a);
    range_check("i", i);
    range_check("j", j);
    if (i + j != N + a)
        throw Error("identity check: i+j != N+a (i=" + std::to_string(i) +
                    " j=" + std::to_string(j) + " N=" + std::to_string(N) +
                    " a=" + std::to_string(a) + ")");

    QBinomialIdentity out;
    Cyclotomic sum;
    for (long k = 0; k <= a; ++k) {
        long e = k * (k - j); // may be negative; q^N = 1 makes it well defined
        long emod = ((e % N) + N) % N;
        Cyclotomic term = q.pow(emod);
        term *= q_binomial(j, k, q);
        term *= q_binomial(i, a - k, q);
        sum += term;
    }
    out.sum = sum;
    out.holds = sum.is_one();
    out.detail = "N=" + std::to_string(N) + " a=" + std::to_string(a) + " i=" + std::to_string(i) +
                 " j=" + std::to_string(j) + " q=" + q.to_string();
    return out;
}

Cyclotomic exp_q_coefficient(long n, const Cyclotomic& q) {
    Cyclotomic f = q_factorial(n, q);
    if (f.is_zero())
        throw Error("exp_q: (" + std::to_string(n) + ")!_q vanishes at q = " + q.to_string());
    return f.inverse();
}

Cyclotomic exp_q_inverse_coefficient(long n, const Cyclotomic& q) {
    Cyclotomic c = exp_q_coefficient(n, q);
    c *= q.pow(n * (n - 1) / 2);
    if (n % 2 == 1) c = -c;
    return c;
}

} // namespace qtw
