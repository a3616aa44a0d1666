#include "zetalin/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zetalin/errors.hpp"
#include "zetalin/explicit_formula.hpp"
#include "zetalin/parallel.hpp"
#include "zetalin/special.hpp"

namespace zetalin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kBlock = 8192;
constexpr double kMaxPairs = 5e7;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double gaussian_density(double x, double sigma) {
  if (!(sigma > 0.0)) return 0.0;
  return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi));
}

// Pair sum for <Nos^2> over the untruncated window. Only pairs with
// H |log(m/n)| / 2 pi < 1 survive w-hat; mn >= 4 never does once H > 2 pi / log 4.
std::optional<double> exact_second_moment(const OscillatorySum& osc, double T, double H) {
  const auto logs = osc.log_n();
  const auto w = osc.weights();
  const std::size_t n = logs.size();
  const double reach = 2.0 * kPi / H;
  double pairs = 0.0;
  for (std::size_t i = 0, j = 0; i < n; ++i) {
    while (logs[i] - logs[j] >= reach) ++j;
    pairs += static_cast<double>(i - j);
    if (pairs > kMaxPairs) return std::nullopt;
  }
  const WeightWindow window;
  std::vector<double> rows(n);
  parallel::for_each_index(n, [&](std::size_t i) {
    double s = 0.5 * w[i] * w[i];
    for (std::size_t j = i; j-- > 0;) {
      const double d = logs[i] - logs[j];
      if (d >= reach) break;
      s += w[i] * w[j] * std::cos(T * d) * window.ft(H * d / (2.0 * kPi));
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double s_log = logs[i] + logs[j];
      if (s_log >= reach) break;
      s += (i == j ? 0.5 : 1.0) * w[i] * w[j] * std::cos(T * s_log) * window.ft(H * s_log / (2.0 * kPi));
    }
    rows[i] = s;
  });
  return parallel::pairwise_sum(rows);
}

struct BlockSums {
  std::vector<double> raw;  // sum weight * Nos^m, m = 0..m_max
  std::vector<double> hist;
};

}  // namespace

double WeightWindow::value(double x) const {
  if (x == 0.0) return 1.0;
  const double s = std::sin(kPi * x) / (kPi * x);
  return s * s;
}

double WeightWindow::ft(double u) const { return std::max(0.0, 1.0 - std::abs(u)); }

double WeightWindow::tail_mass(double K) const { return 2.0 / (kPi * kPi * K); }

double AverageConfig::max_step(double T) { return kPi / (4.0 * std::log(T)); }

AverageConfig AverageConfig::make(double T, double a, double K, std::optional<double> grid_step) {
  if (!(T > std::numbers::e) || !std::isfinite(T)) throw InvalidParameter("average: requires T > e");
  if (!(a > 0.0 && a <= 1.0)) throw InvalidParameter("average: requires 0 < a <= 1");
  if (!(K >= kMinK) || !std::isfinite(K)) throw InvalidParameter("average: requires K >= 30");
  const double limit = max_step(T);
  const double step = grid_step.value_or(limit);
  if (!(step > 0.0 && step <= limit)) {
    throw InvalidParameter("average: grid step must lie in (0, pi/(4 log T)] = (0, " + std::to_string(limit) + "]");
  }
  AverageConfig cfg;
  cfg.T = T;
  cfg.a = a;
  cfg.H = std::pow(T, a);
  cfg.K = K;
  cfg.grid_step = step;
  if (static_cast<double>(cfg.points()) > static_cast<double>(kMaxPoints)) {
    throw LimitExceeded("average: grid would need more than 2^31 points");
  }
  return cfg;
}

std::int64_t AverageConfig::half_points() const {
  return static_cast<std::int64_t>(std::ceil(K * H / grid_step * (1.0 - 1e-12)));
}

double AverageConfig::step() const { return K * H / static_cast<double>(half_points()); }

AverageResult average(const std::function<double(double)>& W, const AverageConfig& cfg) {
  const std::int64_t m = cfg.half_points();
  const double h = cfg.step();
  const auto total = static_cast<std::size_t>(2 * m + 1);
  const std::size_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<double> sums(blocks), mass(blocks);
  parallel::for_each_index(blocks, [&](std::size_t b) {
    double s = 0.0, ms = 0.0;
    const std::size_t end = std::min(total, (b + 1) * kBlock);
    for (std::size_t idx = b * kBlock; idx < end; ++idx) {
      const auto j = static_cast<std::int64_t>(idx) - m;
      const double x = static_cast<double>(j) * h / cfg.H;
      double wt = cfg.weight.value(x) * h / cfg.H;
      if (j == -m || j == m) wt *= 0.5;
      s += wt * W(cfg.T + static_cast<double>(j) * h);
      ms += wt;
    }
    sums[b] = s;
    mass[b] = ms;
  });
  return {parallel::pairwise_sum(sums), cfg.weight.tail_mass(cfg.K), parallel::pairwise_sum(mass)};
}

double gaussian_moment(int m, double sigma) {
  if (m < 0) throw InvalidParameter("gaussian_moment: requires m >= 0");
  if (m % 2 == 1) return 0.0;
  // (m - 1)!! exactly while it fits in 64 bits (m <= 40), then in floating point.
  std::uint64_t exact = 1;
  long double approx = 1.0L;
  bool fits = true;
  for (int j = m - 1; j > 1; j -= 2) {
    if (fits && exact > UINT64_MAX / static_cast<std::uint64_t>(j)) fits = false;
    if (fits) exact *= static_cast<std::uint64_t>(j);
    approx *= j;
  }
  const long double df = fits ? static_cast<long double>(exact) : approx;
  return static_cast<double>(df * std::pow(static_cast<long double>(sigma), m));
}

bool support_check(const TestFunction& f, int m, double a) { return m > 0 && f.alpha() < 2.0 * a / m; }

std::vector<double> centered_from_raw(const std::vector<double>& raw) {
  std::vector<double> out(raw.size(), 0.0);
  if (raw.empty() || raw[0] == 0.0) return out;
  const double mu = raw.size() > 1 ? raw[1] / raw[0] : 0.0;
  for (std::size_t m = 0; m < raw.size(); ++m) {
    double s = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
      s += binomial(static_cast<int>(m), static_cast<int>(j)) * raw[j] * std::pow(-mu, static_cast<double>(m - j));
    }
    out[m] = s;
  }
  return out;
}

ZetaMomentReport moments(const TestFunction& f, const AverageConfig& cfg, int m_max, const PrimePowerTable& table,
                         int hist_bins) {
  if (m_max < 2) throw InvalidParameter("moments: requires m_max >= 2");
  if (hist_bins < 0) throw InvalidParameter("moments: histogram bins must be >= 0");
  const OscillatorySum osc(f, cfg.T, table);
  const double L = std::log(cfg.T);
  const double f0 = f.ft(0.0);
  const double sigma_sq = f.sigma_sq();
  const double sigma = std::sqrt(sigma_sq);

  const std::int64_t half = cfg.half_points();
  const double h = cfg.step();
  const auto total = static_cast<std::size_t>(2 * half + 1);
  const std::size_t blocks = (total + kBlock - 1) / kBlock;
  const double hist_radius = sigma > 0.0 ? 6.0 * sigma : std::max(osc.abs_weight_sum(), 1.0);
  const auto orders = static_cast<std::size_t>(m_max) + 1;

  std::vector<BlockSums> parts(blocks);
  parallel::for_each_index(blocks, [&](std::size_t b) {
    const std::size_t begin = b * kBlock;
    const std::size_t end = std::min(total, begin + kBlock);
    std::vector<double> nos(end - begin);
    const double offset0 = (static_cast<double>(static_cast<std::int64_t>(begin) - half)) * h;
    osc.evaluate_grid(cfg.T, offset0, h, nos);
    BlockSums& out = parts[b];
    out.raw.assign(orders, 0.0);
    out.hist.assign(static_cast<std::size_t>(hist_bins), 0.0);
    for (std::size_t i = 0; i < nos.size(); ++i) {
      const auto j = static_cast<std::int64_t>(begin + i) - half;
      const double s = static_cast<double>(j) * h;
      double wt = cfg.weight.value(s / cfg.H) * h / cfg.H;
      if (j == -half || j == half) wt *= 0.5;
      double p = wt;
      for (std::size_t m = 0; m < orders; ++m) {
        out.raw[m] += p;
        p *= nos[i];
      }
      if (hist_bins > 0) {
        const double pos = (nos[i] + hist_radius) / (2.0 * hist_radius) * hist_bins;
        if (pos >= 0.0 && pos < hist_bins) out.hist[static_cast<std::size_t>(pos)] += wt;
      }
    }
  });

  const auto reduce = [&](auto pick) {
    std::vector<double> v(blocks);
    for (std::size_t b = 0; b < blocks; ++b) v[b] = pick(parts[b]);
    return parallel::pairwise_sum(v);
  };
  std::vector<double> raw(orders);
  for (std::size_t m = 0; m < orders; ++m) raw[m] = reduce([m](const BlockSums& s) { return s.raw[m]; });
  // Omega varies on the scale of T, so its average needs only a coarse grid
  // (16 points per unit of H) with the same end points.
  const auto coarse_half = static_cast<std::int64_t>(std::ceil(16.0 * cfg.K));
  const double coarse_step = cfg.K * cfg.H / static_cast<double>(coarse_half);
  std::vector<double> lead_terms, lead_sq_terms;
  for (std::int64_t j = -coarse_half; j <= coarse_half; ++j) {
    const double s = static_cast<double>(j) * coarse_step;
    double wt = cfg.weight.value(s / cfg.H) * coarse_step / cfg.H;
    if (j == -coarse_half || j == coarse_half) wt *= 0.5;
    const double lead = special::omega(cfg.T + s);
    lead_terms.push_back(wt * lead);
    lead_sq_terms.push_back(wt * lead * lead);
  }
  const double lead_avg = parallel::pairwise_sum(lead_terms);
  const double lead_sq = parallel::pairwise_sum(lead_sq_terms);
  const double mass = raw[0];

  ZetaMomentReport z;
  z.truncation_mass = cfg.weight.tail_mass(cfg.K);
  z.weight_mass = mass;
  z.sup_nos = osc.abs_weight_sum();
  z.nos_mean = raw[1];
  z.polar_bound = polar_terms_bound(f, cfg.T, cfg.T);
  z.mean_term = f0 / L * lead_avg;
  const double lead_var = std::max(0.0, lead_sq / mass - (lead_avg / mass) * (lead_avg / mass));
  z.mean_term_fluctuation = std::abs(f0) / L * std::sqrt(lead_var);
  z.diagonal = diagonal_sum(f, cfg.T, table);
  z.second_moment_exact = exact_second_moment(osc, cfg.T, cfg.H);
  z.grid_points = static_cast<std::int64_t>(total);
  z.step = h;
  z.prime_terms = osc.size();

  MomentReport& r = z.report;
  const double sup = z.sup_nos;
  const double roundoff = 1e-13;
  const auto bound = [&](int m) { return (z.truncation_mass + roundoff) * std::pow(sup, m); };
  r.mean = z.mean_term + z.nos_mean;
  r.mean_error = bound(1) + z.truncation_mass * std::abs(f0) / L * (std::log(cfg.T + cfg.K * cfg.H) + 2.0) +
                 z.polar_bound;
  r.mean_expected = f0;
  r.sigma_sq_predicted = sigma_sq;
  const auto centered = centered_from_raw(raw);
  double worst = r.mean_error;
  for (int m = 2; m <= m_max; ++m) {
    MomentEntry e;
    e.m = m;
    e.raw = raw[static_cast<std::size_t>(m)];
    e.value = centered[static_cast<std::size_t>(m)];
    e.error = bound(m);
    e.gaussian_prediction = gaussian_moment(m, sigma);
    e.support_ok = support_check(f, m, cfg.a);
    worst = std::max(worst, e.error);
    r.moments.push_back(e);
  }
  r.estimated_numerical_error = worst;

  if (hist_bins > 0) {
    Histogram hg;
    const double width = 2.0 * hist_radius / hist_bins;
    for (int i = 0; i <= hist_bins; ++i) hg.edges.push_back(-hist_radius + i * width);
    for (int i = 0; i < hist_bins; ++i) {
      const double c = reduce([i](const BlockSums& s) { return s.hist[static_cast<std::size_t>(i)]; });
      hg.density.push_back(mass > 0.0 ? c / (mass * width) : 0.0);
      hg.gaussian_density.push_back(gaussian_density(-hist_radius + (i + 0.5) * width, sigma));
    }
    r.histogram = std::move(hg);
  }
  return z;
}

}  // namespace zetalin
