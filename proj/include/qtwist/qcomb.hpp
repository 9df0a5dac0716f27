#ifndef QTWIST_QCOMB_HPP
#define QTWIST_QCOMB_HPP

#include <string>

#include "qtwist/cyclotomic.hpp"

namespace qtw {

// q-analogues at an explicit scalar q:
//   (n)_q  = 1 + q + ... + q^{n-1}
//   (n)!_q = (1)_q (2)_q ... (n)_q
//   C(n,k)_q = (n)!_q / ((n-k)!_q (k)!_q)
// The binomial is computed through exact division and throws when a
// q-factorial in the denominator vanishes (q a root of unity of too small
// an order), naming the offending factor.
Cyclotomic q_int(long n, const Cyclotomic& q);
Cyclotomic q_factorial(long n, const Cyclotomic& q);
Cyclotomic q_binomial(long n, long k, const Cyclotomic& q);

bool is_primitive_root_of_unity(const Cyclotomic& q, long N);

struct QBinomialIdentity {
    bool holds = false;
    Cyclotomic sum;      // the evaluated left-hand side
    std::string detail;  // human-readable context (indices, q)
};

// For q a primitive N-th root of unity and 0 <= a,i,j < N with i+j = N+a,
// evaluates  sum_{k=0}^{a} q^{k(k-j)} C(j,k)_q C(i,a-k)_q  and reports
// whether it equals 1.  Index preconditions are checked and violations
// throw with the offending index named.
QBinomialIdentity q_binomial_identity_check(long N, const Cyclotomic& q, long a, long i, long j);

// Coefficient of x^n in exp_q(x):      1 / (n)!_q
// Coefficient of x^n in exp_q(x)^{-1}: (-1)^n q^{n(n-1)/2} / (n)!_q
Cyclotomic exp_q_coefficient(long n, const Cyclotomic& q);
Cyclotomic exp_q_inverse_coefficient(long n, const Cyclotomic& q);

} // namespace qtw

#endif
