#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zetalin {

enum class ZeroSource { computed, imported };

/// Sorted positive ordinates of zeros on the critical line inside
/// [t_min, t_max]. The reflection gamma_{-j} = -gamma_j is applied by users.
struct ZeroSet {
  std::vector<double> ordinates;
  double t_min = 0.0;
  double t_max = 0.0;
  ZeroSource source = ZeroSource::computed;
  bool claimed_complete = false;

  /// Strictly increasing and inside [t_min, t_max].
  bool well_formed() const;
};

/// Every nontrivial zero has ordinate above this value.
inline constexpr double kZeroFreeBelow = 14.1347;

/// Riemann-Siegel Z(t) with the C0..C4 remainder terms. Throws DomainError
/// for t < 10.
double rs_z(double t);

/// Gram point g_n (theta(g_n) = n pi) for n >= 0.
double gram_point(long n);

/// Zeros on [t_min, t_max] by Gram-block bracketing and bisection to `tol`.
/// Throws InvalidParameter for t_min < 10, t_max <= t_min or tol < 1e-10,
/// and IncompleteDetection when a Gram block stays short of its expected
/// count after 64-fold subdivision.
ZeroSet find_zeros(double t_min, double t_max, double tol = 1e-9);

/// Reads one ordinate per line ('#' starts a comment line); each value is
/// stored as gamma - t_offset in the file. Throws ParseError with the line
/// number. Out-of-order lines are sorted and reported through `warnings`.
ZeroSet import_zeros(const std::filesystem::path& path, double t_offset = 0.0,
                     std::vector<std::string>* warnings = nullptr);

struct GramBlockFailure {
  double start;
  double end;
  long expected;
  long found;
};

struct CountReport {
  std::size_t count = 0;
  double expected = 0.0;  // mean_count(t_max) - mean_count(t_min)
  double discrepancy = 0.0;
  double s_change = 0.0;  // S(t_max) - S(t_min) implied by the count
  // Absolute S values, known when t_min lies below the first zero.
  std::optional<double> s_at_t_min;
  std::optional<double> s_at_t_max;
  bool window_pass = false;  // discrepancy <= 3
  // Every Gram block wholly inside the window must hold exactly as many
  // zeros as it spans Gram intervals.
  bool block_audit_performed = false;
  std::size_t blocks_checked = 0;
  std::vector<GramBlockFailure> block_failures;
  bool pass = false;
};

CountReport verify_count(const ZeroSet& zs);

}  // namespace zetalin
