#include "zetalin/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetalin/errors.hpp"

namespace zetalin {
namespace {

constexpr std::int64_t kSegment = std::int64_t{1} << 22;

std::vector<std::int64_t> small_primes(std::int64_t limit) {
  std::vector<char> composite(static_cast<std::size_t>(limit + 1), 0);
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

}  // namespace

PrimePowerTable PrimePowerTable::build(std::int64_t limit) {
  if (limit < 2) throw InvalidParameter("build_table: limit must be >= 2");
  if (limit > kMaxLimit) throw LimitExceeded("build_table: limit exceeds 2^40");

  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  const auto base = small_primes(std::max<std::int64_t>(root, 2));

  PrimePowerTable table;
  table.limit_ = limit;

  // Primes by segments; higher powers only come from base primes.
  std::vector<char> composite;
  for (std::int64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::int64_t hi = std::min(limit, lo + kSegment - 1);
    composite.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::int64_t p : base) {
      if (p * p > hi) break;
      std::int64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::int64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
    }
    for (std::int64_t n = lo; n <= hi; ++n) {
      if (!composite[n - lo]) {
        const double lg = std::log(static_cast<double>(n));
        table.entries_.push_back({n, lg, lg});
      }
    }
  }
  for (std::int64_t p : base) {
    if (p > root) break;
    const double lp = std::log(static_cast<double>(p));
    std::int64_t q = p;
    int power = 1;
    while (q <= limit / p) {
      q *= p;
      ++power;
      table.entries_.push_back({q, power * lp, lp});
    }
  }
  std::sort(table.entries_.begin(), table.entries_.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
  // log n for prime powers recomputed directly so every entry has the same
  // rounding as log(n).
  for (auto& e : table.entries_) e.log_n = std::log(static_cast<double>(e.n));
  return table;
}

std::int64_t PrimePowerTable::required_limit(double alpha, double T) {
  const double x = std::exp(alpha * std::log(T));
  if (!(x < 0.5 * static_cast<double>(kMaxLimit))) return kMaxLimit;
  // n >= T^alpha lies outside the open support; the margin absorbs rounding
  // in exp(alpha log T) when T^alpha is an integer.
  return static_cast<std::int64_t>(std::floor(x * (1.0 - 1e-12)));
}

void PrimePowerTable::require_covers(double alpha, double T) const {
  const auto need = required_limit(alpha, T);
  if (limit_ < need) {
    throw TableTooSmall("prime table limit " + std::to_string(limit_) + " below required T^alpha = " +
                        std::to_string(need));
  }
}

double von_mangoldt(std::int64_t n) {
  if (n < 2) return 0.0;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

double chebyshev_psi(const PrimePowerTable& table) {
  double s = 0.0;
  for (const auto& e : table.entries()) s += e.lambda;
  return s;
}

double diagonal_sum(const TestFunction& f, double T, const PrimePowerTable& table) {
  if (!(T > 1.0)) throw DomainError("diagonal_sum: requires T > 1");
  table.require_covers(f.alpha(), T);
  const double log_t = std::log(T);
  const double cutoff = f.alpha() * log_t;
  double s = 0.0;
  for (const auto& e : table.entries()) {
    if (e.log_n >= cutoff) break;
    const double w = f.ft(e.log_n / log_t);
    s += 2.0 * e.lambda * e.lambda / static_cast<double>(e.n) * w * w;
  }
  return s / (log_t * log_t);
}

}  // namespace zetalin
