#include "mmsense/combinatorics.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mmsense {

namespace {

constexpr int kTableSize = 257;

const std::array<double, kTableSize>& log_factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 0.0;
    for (int n = 1; n < kTableSize; ++n) t[n] = t[n - 1] + std::log(double(n));
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::out_of_range("log_factorial: n must be >= 0, got " + std::to_string(n));
  if (n < kTableSize) return log_factorial_table()[n];
  return std::lgamma(double(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::out_of_range("log_binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                            " k=" + std::to_string(k));
  }
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::out_of_range("binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                            " k=" + std::to_string(k));
  }
  if (n > 62) return std::exp(log_binomial(n, k));
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;  // multiplicative form stays within uint64 up to n = 62
  for (int i = 1; i <= k; ++i) {
    result = result * std::uint64_t(n - k + i) / std::uint64_t(i);
  }
  return double(result);
}

double gamma_coefficient(int m, int mprime, int k, int l) {
  if (m < 0 || mprime < 0 || k < 0 || k > m || l < 0 || l > mprime) {
    throw std::out_of_range("gamma_coefficient: need 0 <= k <= m and 0 <= l <= m', got m=" +
                            std::to_string(m) + " m'=" + std::to_string(mprime) +
                            " k=" + std::to_string(k) + " l=" + std::to_string(l));
  }
  const double log_gamma =
      -0.5 * (std::log(2.0) + log_factorial(m) + log_factorial(mprime)) +
      log_binomial(m, k) + log_binomial(mprime, l) +
      0.5 * (log_factorial(m - k) + log_factorial(k) +
             log_factorial(mprime - l) + log_factorial(l));
  return std::exp(log_gamma);
}

}  // namespace mmsense
