#pragma once

namespace mmsense {

// ln(n!); table-backed for n < 257, lgamma beyond. Throws std::out_of_range
// for negative n.
double log_factorial(int n);

// ln C(n, k). Throws std::out_of_range unless 0 <= k <= n.
double log_binomial(int n, int k);

// C(n, k) as a double; exact (integer-valued) for n <= 62, log-domain beyond.
double binomial(int n, int k);

// Overlap coefficient for the photon-loss expansion of |m::m'> states:
//   gamma = (2 m! m'!)^{-1/2} C(m,k) C(m',l) [(m-k)! k! (m'-l)! l!]^{1/2}
// with gamma^2 = C(m,k) C(m',l) / 2 (an identity the tests pin down).
// Valid for m, m' >= 0, 0 <= k <= m, 0 <= l <= m'; throws std::out_of_range
// otherwise. Evaluated in the log domain; no overflow for any desk-scale
// arguments.
double gamma_coefficient(int m, int mprime, int k, int l);

}  // namespace mmsense
