#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zetalin/test_function.hpp"

namespace zetalin {

struct PrimePower {
  std::int64_t n;
  double log_n;
  double lambda;  // von Mangoldt weight log p for n = p^k
};

/// All prime powers n in [2, X], sorted by n, with Lambda(n).
class PrimePowerTable {
 public:
  static constexpr std::int64_t kMaxLimit = std::int64_t{1} << 40;

  /// Segmented sieve of Eratosthenes. Throws InvalidParameter for X < 2 and
  /// LimitExceeded for X > 2^40.
  static PrimePowerTable build(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  std::span<const PrimePower> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Largest n that can carry weight for a transform supported in
  /// (-alpha, alpha) at height T: n < T^alpha.
  static std::int64_t required_limit(double alpha, double T);
  /// Throws TableTooSmall when limit() < required_limit(alpha, T).
  void require_covers(double alpha, double T) const;

 private:
  std::int64_t limit_ = 0;
  std::vector<PrimePower> entries_;
};

/// Lambda(n) by trial division; independent of the sieve.
double von_mangoldt(std::int64_t n);

/// psi(X) = sum_{n <= X} Lambda(n) over the table.
double chebyshev_psi(const PrimePowerTable& table);

/// (1/log^2 T) sum_n 2 Lambda(n)^2 / n * f-hat(log n / log T)^2.
double diagonal_sum(const TestFunction& f, double T, const PrimePowerTable& table);

}  // namespace zetalin
