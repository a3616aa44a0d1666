#include "zetalin/zeros.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zetalin/errors.hpp"
#include "zetalin/parallel.hpp"
#include "zetalin/special.hpp"

namespace zetalin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Taylor coefficients of Psi(1/2 + w), Psi(p) = cos(2 pi (p^2 - p - 1/16)) /
// cos(2 pi p), and of its derivatives up to order 12. Psi is entire (the
// zeros of the denominator are matched by zeros of the numerator), so the
// coefficients come from a discrete Cauchy integral on |w| = 1.5.
class RemainderTable {
 public:
  static constexpr int kDegree = 48;
  static constexpr int kMaxDerivative = 12;

  RemainderTable() {
    constexpr int samples = 128;
    constexpr double radius = 1.5;
    std::array<std::complex<double>, samples> values;
    for (int m = 0; m < samples; ++m) {
      const std::complex<double> w = std::polar(radius, kTwoPi * m / samples);
      const std::complex<double> p = 0.5 + w;
      values[m] = std::cos(kTwoPi * (p * p - p - 1.0 / 16.0)) / std::cos(kTwoPi * p);
    }
    std::array<double, kDegree + 1> coeff{};
    for (int j = 0; j <= kDegree; ++j) {
      std::complex<double> s = 0.0;
      for (int m = 0; m < samples; ++m) s += values[m] * std::polar(1.0, -kTwoPi * j * m / samples);
      coeff[j] = s.real() / samples / std::pow(radius, j);
    }
    for (int d = 0; d <= kMaxDerivative; ++d) {
      auto& out = derivative_[d];
      out.assign(kDegree + 1 - d, 0.0);
      for (int j = d; j <= kDegree; ++j) {
        double falling = 1.0;
        for (int i = 0; i < d; ++i) falling *= (j - i);
        out[j - d] = coeff[j] * falling;
      }
    }
  }

  // Psi^{(d)}(p)
  double derivative(int d, double p) const {
    const double w = p - 0.5;
    const auto& c = derivative_[d];
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * w + *it;
    return s;
  }

 private:
  std::array<std::vector<double>, kMaxDerivative + 1> derivative_;
};

const RemainderTable& remainder_table() {
  static const RemainderTable table;
  return table;
}

// sum_k C_k(p) a^{-k}, k = 0..4.
double remainder_series(double p, double a) {
  const auto& tab = remainder_table();
  const auto d = [&](int n) { return tab.derivative(n, p); };
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  const double pi8 = pi4 * pi4;
  const double c0 = d(0);
  const double c1 = -d(3) / (96.0 * pi2);
  const double c2 = d(6) / (18432.0 * pi4) + d(2) / (64.0 * pi2);
  const double c3 = -d(9) / (5308416.0 * pi6) - d(5) / (3840.0 * pi4) - d(1) / (64.0 * pi2);
  const double c4 = d(12) / (2038431744.0 * pi8) + 11.0 * d(8) / (5898240.0 * pi6) +
                    19.0 * d(4) / (24576.0 * pi4) + d(0) / (128.0 * pi2);
  const double inv = 1.0 / a;
  return c0 + inv * (c1 + inv * (c2 + inv * (c3 + inv * c4)));
}

// Below this height the Riemann-Siegel series is only good to ~1e-6, so Z
// comes from Euler-Maclaurin summation of zeta(1/2 + it) instead.
constexpr double kEulerMaclaurinBelow = 100.0;

double z_euler_maclaurin(double t) {
  // B_{2k} / (2k)!
  static constexpr std::array<double, 10> b_over_fact = {
      1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0,
      -691.0 / 1307674368000.0, 1.0 / 74724249600.0, -3617.0 / 10670622842880000.0,
      43867.0 / 5109094217170944000.0, -174611.0 / 802857662698291200000.0};
  const std::complex<double> s(0.5, t);
  const long n_cut = 10 + static_cast<long>(std::ceil(t / 2.0));
  std::complex<double> sum = 0.0;
  for (long n = 1; n < n_cut; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double log_n = std::log(static_cast<double>(n_cut));
  const std::complex<double> n_pow = std::exp(-s * log_n);  // N^{-s}
  sum += n_pow * static_cast<double>(n_cut) / (s - 1.0) + 0.5 * n_pow;
  // s (s+1) ... (s+2k-2) N^{-s-2k+1}
  std::complex<double> rising = s;
  std::complex<double> term = n_pow / static_cast<double>(n_cut);
  for (std::size_t k = 0; k < b_over_fact.size(); ++k) {
    sum += b_over_fact[k] * rising * term;
    const double j = 2.0 * static_cast<double>(k);
    rising *= (s + (j + 1.0)) * (s + (j + 2.0));
    term /= static_cast<double>(n_cut) * static_cast<double>(n_cut);
  }
  return (std::polar(1.0, special::rs_theta(t)) * sum).real();
}

double rs_z_unchecked(double t) {
  if (t < kEulerMaclaurinBelow) return z_euler_maclaurin(t);
  const double a = std::sqrt(t / kTwoPi);
  const auto n_terms = static_cast<long>(std::floor(a));
  const double p = a - static_cast<double>(n_terms);
  const double theta = special::rs_theta(t);
  double sum = 0.0;
  for (long n = 1; n <= n_terms; ++n) {
    const double phase = std::fmod(theta - t * std::log(static_cast<double>(n)), kTwoPi);
    sum += std::cos(phase) / std::sqrt(static_cast<double>(n));
  }
  const double sign = (n_terms - 1) % 2 == 0 ? 1.0 : -1.0;
  return 2.0 * sum + sign * remainder_series(p, a) / std::sqrt(a);
}

// Newton on theta(t) = n pi from a nearby guess, falling back to bisection
// inside a bracket.
double solve_gram(long n, double guess) {
  const double target = n * kPi;
  double lo = 10.0, hi = std::max(guess, 20.0);
  while (special::rs_theta(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  double t = std::clamp(guess, lo, hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = special::rs_theta(t) - target;
    if (f > 0) hi = std::min(hi, t);
    else lo = std::max(lo, t);
    double next = t - f / special::rs_theta_derivative(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-14 * t) return next;
    t = next;
  }
  return t;
}

struct GramGrid {
  long first;                  // index of points[0]; -1 stands for t = 10
  std::vector<double> points;  // g_first .. g_last
  std::vector<double> z;       // Z at each point
  bool good(std::size_t i) const {
    const long n = first + static_cast<long>(i);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    return sign * z[i] > 0.0;
  }
};

double gram_or_floor(long n, double guess) { return n < 0 ? 10.0 : solve_gram(n, guess); }

// Gram points from the last good point <= lo to the first good point >= hi.
GramGrid gram_grid(double lo, double hi) {
  GramGrid grid;
  long n_lo = static_cast<long>(std::floor(special::rs_theta(lo) / kPi));
  if (n_lo < -1) n_lo = -1;
  std::vector<double> pts;
  std::vector<double> zs;
  // Extend downward until a good point (index -1, t = 10, is always good:
  // Z < 0 below the first zero).
  double g = gram_or_floor(n_lo, lo);
  double zv = rs_z_unchecked(g);
  while (n_lo > -1 && ((n_lo % 2 == 0 ? 1.0 : -1.0) * zv <= 0.0)) {
    --n_lo;
    g = gram_or_floor(n_lo, g - kPi / special::rs_theta_derivative(std::max(g, 20.0)));
    zv = rs_z_unchecked(g);
  }
  grid.first = n_lo;
  pts.push_back(g);
  zs.push_back(zv);
  long n = n_lo;
  for (;;) {
    const double prev = pts.back();
    const bool prev_good = ((n % 2 == 0) ? 1.0 : -1.0) * zs.back() > 0.0;
    if (prev >= hi && prev_good) break;
    ++n;
    const double guess = prev + kPi / special::rs_theta_derivative(std::max(prev, 20.0));
    const double next = gram_or_floor(n, guess);
    pts.push_back(next);
    zs.push_back(rs_z_unchecked(next));
  }
  grid.points = std::move(pts);
  grid.z = std::move(zs);
  return grid;
}

struct BlockResult {
  std::vector<double> zeros;
  long expected = 0;
  bool balanced = false;
};

double bisect(double a, double za, double b, double tol) {
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double zm = rs_z_unchecked(m);
    if ((zm < 0.0) == (za < 0.0)) {
      a = m;
      za = zm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

BlockResult solve_block(const GramGrid& grid, std::size_t begin, std::size_t end, double tol) {
  BlockResult out;
  out.expected = static_cast<long>(end - begin);
  std::vector<double> xs;
  std::vector<double> zv;
  for (int level = 0; level <= 6; ++level) {
    const int sub = 1 << level;
    xs.clear();
    zv.clear();
    for (std::size_t i = begin; i < end; ++i) {
      xs.push_back(grid.points[i]);
      zv.push_back(grid.z[i]);
      const double step = (grid.points[i + 1] - grid.points[i]) / sub;
      for (int s = 1; s < sub; ++s) {
        const double x = grid.points[i] + s * step;
        xs.push_back(x);
        zv.push_back(rs_z_unchecked(x));
      }
    }
    xs.push_back(grid.points[end]);
    zv.push_back(grid.z[end]);
    long changes = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) changes += (zv[i] < 0.0) != (zv[i + 1] < 0.0);
    if (changes >= out.expected) break;
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if ((zv[i] < 0.0) != (zv[i + 1] < 0.0)) out.zeros.push_back(bisect(xs[i], zv[i], xs[i + 1], tol));
  }
  out.balanced = static_cast<long>(out.zeros.size()) == out.expected;
  return out;
}

std::vector<std::size_t> good_indices(const GramGrid& grid) {
  std::vector<std::size_t> good;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (grid.good(i)) good.push_back(i);
  }
  return good;
}

}  // namespace

bool ZeroSet::well_formed() const {
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    if (ordinates[i] < t_min || ordinates[i] > t_max) return false;
    if (i > 0 && !(ordinates[i] > ordinates[i - 1])) return false;
  }
  return true;
}

double rs_z(double t) {
  if (!(t >= 10.0)) throw DomainError("rs_z: requires t >= 10");
  return rs_z_unchecked(t);
}

double gram_point(long n) {
  if (n < 0) throw DomainError("gram_point: requires n >= 0");
  // theta(t) ~ (t/2) log(t / 2 pi e); a rough inverse is enough for Newton.
  double t = 20.0;
  for (int i = 0; i < 50; ++i) t = 2.0 * (n * kPi + kPi / 8.0 + 0.5 * t) / std::log(t / kTwoPi);
  return solve_gram(n, std::max(t, 17.0));
}

ZeroSet find_zeros(double t_min, double t_max, double tol) {
  if (!(t_min >= 10.0)) throw InvalidParameter("find_zeros: requires t_min >= 10");
  if (!(t_max > t_min)) throw InvalidParameter("find_zeros: requires t_max > t_min");
  if (!(tol >= 1e-10)) throw InvalidParameter("find_zeros: requires tol >= 1e-10");

  const GramGrid grid = gram_grid(t_min, t_max);
  const auto good = good_indices(grid);
  const std::size_t n_blocks = good.size() > 0 ? good.size() - 1 : 0;
  std::vector<BlockResult> results(n_blocks);
  parallel::for_each_index(n_blocks, [&](std::size_t b) { results[b] = solve_block(grid, good[b], good[b + 1], tol); });

  ZeroSet zs;
  zs.t_min = t_min;
  zs.t_max = t_max;
  zs.source = ZeroSource::computed;
  bool balanced = true;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const auto& r = results[b];
    if (static_cast<long>(r.zeros.size()) < r.expected) {
      std::ostringstream msg;
      msg << "find_zeros: Gram block [" << grid.points[good[b]] << ", " << grid.points[good[b + 1]] << "] expected "
          << r.expected << " zeros, separated " << r.zeros.size() << " after 64-fold subdivision";
      throw IncompleteDetection(msg.str());
    }
    balanced = balanced && r.balanced;
    for (double z : r.zeros) {
      if (z >= t_min && z <= t_max) zs.ordinates.push_back(z);
    }
  }
  zs.claimed_complete = balanced;
  return zs;
}

ZeroSet import_zeros(const std::filesystem::path& path, double t_offset, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ValidationError("import_zeros: cannot open " + path.string());
  ZeroSet zs;
  zs.source = ZeroSource::imported;
  std::string line;
  std::size_t line_no = 0;
  bool ordered = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc() || ptr != e) throw ParseError("import_zeros: malformed ordinate '" + line + "'", line_no);
    const double gamma = value + t_offset;
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParseError("import_zeros: ordinate must be positive", line_no);
    if (!zs.ordinates.empty() && gamma <= zs.ordinates.back()) {
      if (ordered && warnings) warnings->push_back("line " + std::to_string(line_no) + ": ordinates not increasing");
      ordered = false;
    }
    zs.ordinates.push_back(gamma);
  }
  std::sort(zs.ordinates.begin(), zs.ordinates.end());
  zs.ordinates.erase(std::unique(zs.ordinates.begin(), zs.ordinates.end()), zs.ordinates.end());
  if (!zs.ordinates.empty()) {
    zs.t_min = zs.ordinates.front();
    zs.t_max = zs.ordinates.back();
  }
  zs.claimed_complete = verify_count(zs).pass;
  return zs;
}

CountReport verify_count(const ZeroSet& zs) {
  CountReport r;
  r.count = zs.ordinates.size();
  if (zs.t_max > zs.t_min) {
    if (!(zs.t_min > 0.0)) throw InvalidParameter("verify_count: window must lie in t > 0");
    const double lo = special::mean_count(zs.t_min);
    const double hi = special::mean_count(zs.t_max);
    r.expected = hi - lo;
    if (zs.t_min < kZeroFreeBelow) {
      r.s_at_t_min = -lo;
      r.s_at_t_max = static_cast<double>(r.count) - hi;
    }
  }
  r.s_change = static_cast<double>(r.count) - r.expected;
  r.discrepancy = std::abs(r.s_change);
  r.window_pass = r.discrepancy <= 3.0;

  // Gram-block audit, skipped far above desk heights where Z gets costly.
  if (zs.t_max > zs.t_min && zs.t_min >= 10.0 && zs.t_max <= 1e8) {
    r.block_audit_performed = true;
    const GramGrid grid = gram_grid(zs.t_min, zs.t_max);
    const auto good = good_indices(grid);
    for (std::size_t b = 0; b + 1 < good.size(); ++b) {
      const double start = grid.points[good[b]];
      const double end = grid.points[good[b + 1]];
      if (start < zs.t_min || end > zs.t_max) continue;
      ++r.blocks_checked;
      const auto lo_it = std::lower_bound(zs.ordinates.begin(), zs.ordinates.end(), start);
      const auto hi_it = std::lower_bound(zs.ordinates.begin(), zs.ordinates.end(), end);
      const long found = static_cast<long>(hi_it - lo_it);
      const long expected = static_cast<long>(good[b + 1] - good[b]);
      if (found != expected) r.block_failures.push_back({start, end, expected, found});
    }
  }
  r.pass = r.window_pass && r.block_failures.empty();
  return r;
}

}  // namespace zetalin
