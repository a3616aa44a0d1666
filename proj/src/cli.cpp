#include "zetalin/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "zetalin/errors.hpp"
#include "zetalin/explicit_formula.hpp"
#include "zetalin/parallel.hpp"
#include "zetalin/primes.hpp"
#include "zetalin/rmt.hpp"
#include "zetalin/special.hpp"
#include "zetalin/stats.hpp"
#include "zetalin/test_function.hpp"
#include "zetalin/zeros.hpp"

namespace zetalin::cli {
namespace {

using json = nlohmann::ordered_json;

struct FunctionOptions {
  double alpha = 0.4;
  std::string family = "poly";
  int k = 2;
  double scale = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "support radius of f-hat")->capture_default_str();
    app->add_option("--family", family, "poly, bump or selfconv")->capture_default_str();
    app->add_option("--k", k, "exponent of the polynomial families")->capture_default_str();
    app->add_option("--scale", scale, "multiplier of f-hat")->capture_default_str();
  }
  TestFunction make() const { return TestFunction::make(alpha, parse_family(family), k, scale); }
  json to_json() const {
    return {{"family", std::string(to_string(parse_family(family)))}, {"alpha", alpha}, {"k", k}, {"scale", scale}};
  }
};

struct Output {
  bool csv = false;
  bool hist = false;
  int bins = 40;
};

// Writes doubles the same way everywhere so output is byte-stable.
std::string num(double v) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

PrimePowerTable table_for(double alpha, double T, std::optional<std::int64_t> limit) {
  const std::int64_t need = std::max<std::int64_t>(PrimePowerTable::required_limit(alpha, T), 2);
  const auto table = PrimePowerTable::build(limit.value_or(need));
  table.require_covers(alpha, T);
  return table;
}

json count_json(const CountReport& r) {
  json blocks = json::array();
  for (const auto& b : r.block_failures) {
    blocks.push_back({{"start", b.start}, {"end", b.end}, {"expected", b.expected}, {"found", b.found}});
  }
  return {{"count", r.count},
          {"expected", r.expected},
          {"discrepancy", r.discrepancy},
          {"s_change", r.s_change},
          {"s_at_t_min", opt(r.s_at_t_min)},
          {"s_at_t_max", opt(r.s_at_t_max)},
          {"window_pass", r.window_pass},
          {"block_audit_performed", r.block_audit_performed},
          {"blocks_checked", r.blocks_checked},
          {"block_failures", blocks},
          {"pass", r.pass}};
}

json zero_set_json(const ZeroSet& zs) {
  return {{"source", zs.source == ZeroSource::computed ? "computed" : "imported"},
          {"t_min", zs.t_min},
          {"t_max", zs.t_max},
          {"count", zs.ordinates.size()},
          {"claimed_complete", zs.claimed_complete},
          {"ordinates", zs.ordinates}};
}

json histogram_json(const Histogram& h) {
  return {{"edges", h.edges}, {"density", h.density}, {"gaussian_density", h.gaussian_density}};
}

json moment_report_json(const MomentReport& r) {
  json rows = json::array();
  for (const auto& e : r.moments) {
    rows.push_back({{"m", e.m},
                    {"centered", e.value},
                    {"raw", e.raw},
                    {"error", e.error},
                    {"gaussian_prediction", e.gaussian_prediction},
                    {"support_ok", e.support_ok}});
  }
  json j = {{"mean", r.mean},
            {"mean_error", r.mean_error},
            {"mean_expected", r.mean_expected},
            {"sigma_sq_predicted", r.sigma_sq_predicted},
            {"moments", rows},
            {"estimated_numerical_error", r.estimated_numerical_error}};
  if (r.histogram) j["histogram"] = histogram_json(*r.histogram);
  return j;
}

void write_moment_csv(std::ostream& out, const MomentReport& r) {
  out << "m,centered,raw,error,gaussian_prediction,support_ok\n";
  for (const auto& e : r.moments) {
    out << e.m << ',' << num(e.value) << ',' << num(e.raw) << ',' << num(e.error) << ',' << num(e.gaussian_prediction)
        << ',' << (e.support_ok ? "true" : "false") << '\n';
  }
  if (r.histogram) {
    out << "\nbin_lo,bin_hi,density,gaussian_density\n";
    const auto& h = *r.histogram;
    for (std::size_t i = 0; i < h.density.size(); ++i) {
      out << num(h.edges[i]) << ',' << num(h.edges[i + 1]) << ',' << num(h.density[i]) << ','
          << num(h.gaussian_density[i]) << '\n';
    }
  }
}

// Zeros covering the direct-sum windows of every tau.
ZeroSet zeros_for(const TestFunction& f, const std::vector<double>& taus, double T, double tail) {
  double need_hi = 0.0;
  double need_lo = std::numeric_limits<double>::infinity();
  for (double tau : taus) {
    const double r = direct_radius(f, tau, T, tail);
    const double lo = tau - r, hi = tau + r;
    need_hi = std::max({need_hi, std::abs(lo), std::abs(hi)});
    need_lo = std::min(need_lo, (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi)));
  }
  if (need_hi <= kZeroFreeBelow) return ZeroSet{};
  const double t_min = std::max(10.0, need_lo - 1.0);
  return find_zeros(t_min, need_hi + 1.0);
}

json sample_json(const LinStatSample& s) {
  return {{"tau", s.tau},
          {"direct", opt(s.direct)},
          {"mean_part", s.mean_part},
          {"polar_part", s.polar_part},
          {"osc_part", s.osc_part},
          {"residual", opt(s.residual)},
          {"error_estimate", s.error_estimate},
          {"direct_radius", s.direct_radius}};
}

void write_sample_csv(std::ostream& out, const std::vector<LinStatSample>& samples) {
  out << "tau,direct,mean_part,osc_part,residual,error_estimate\n";
  for (const auto& s : samples) {
    out << num(s.tau) << ',' << (s.direct ? num(*s.direct) : "") << ',' << num(s.mean_part) << ','
        << num(s.osc_part) << ',' << (s.residual ? num(*s.residual) : "") << ',' << num(s.error_estimate) << '\n';
  }
}

}  // namespace

std::vector<std::string> config_arguments(const std::string& path, const std::vector<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path);
  const auto present = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(given.begin(), given.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::vector<std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config: expected key=value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("config: empty key", line_no);
    if (present(key)) continue;
    if (value == "true") out.push_back("--" + key);
    else if (value != "false") out.push_back("--" + key + "=" + value);
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear statistics of zeta zeros and their random-matrix model", "zetalin"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 0;
  std::string config_path;
  Output output;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--config", config_path, "key=value file; flags on the command line win");
  app.add_flag("--csv", output.csv, "CSV rows instead of JSON");
  app.add_flag("--hist", output.hist, "include a histogram");
  app.add_option("--bins", output.bins, "histogram bins")->capture_default_str();

  // zeros
  auto* zeros = app.add_subcommand("zeros", "compute, import or audit zero ordinates");
  zeros->require_subcommand(1);
  double tmin = 10.0, tmax = 100.0, tol = 1e-9, zero_offset = 0.0;
  std::string zero_file;
  auto* zfind = zeros->add_subcommand("find", "zeros on [tmin, tmax] by Gram blocks");
  zfind->add_option("--tmin", tmin)->capture_default_str();
  zfind->add_option("--tmax", tmax)->capture_default_str();
  zfind->add_option("--tol", tol)->capture_default_str();
  auto* zimport = zeros->add_subcommand("import", "read a zero file");
  zimport->add_option("--file", zero_file)->required();
  zimport->add_option("--zero-offset", zero_offset)->capture_default_str();
  auto* zverify = zeros->add_subcommand("verify", "count audit of a zero file or a computed range");
  zverify->add_option("--file", zero_file);
  zverify->add_option("--zero-offset", zero_offset)->capture_default_str();
  zverify->add_option("--tmin", tmin)->capture_default_str();
  zverify->add_option("--tmax", tmax)->capture_default_str();

  // linstat
  auto* linstat = app.add_subcommand("linstat", "the statistic N_f and its explicit-formula parts");
  linstat->require_subcommand(1);
  FunctionOptions fn;
  std::vector<double> taus;
  double T = 1e3, tail = kDefaultTailTarget, tau_lo = 0.0, tau_hi = 0.0;
  int random_taus = 0;
  std::uint64_t seed = 0;
  bool with_direct = false;
  std::optional<std::int64_t> prime_limit;
  auto* leval = linstat->add_subcommand("eval", "mean and oscillatory parts at tau");
  auto* lident = linstat->add_subcommand("identity", "direct sum against mean + oscillatory parts");
  for (auto* sub : {leval, lident}) {
    fn.attach(sub);
    sub->add_option("--tau", taus, "heights (repeatable)");
    sub->add_option("--T", T)->capture_default_str();
    sub->add_option("--tail", tail, "target for the omitted zero tail")->capture_default_str();
    sub->add_option("--prime-limit", prime_limit);
    sub->add_option("--zeros-file", zero_file, "use imported zeros for the direct sum");
    sub->add_option("--zero-offset", zero_offset)->capture_default_str();
  }
  leval->add_flag("--direct", with_direct, "also evaluate the zero sum");
  lident->add_option("--random", random_taus, "number of uniform random tau in [tau-lo, tau-hi]");
  lident->add_option("--tau-lo", tau_lo);
  lident->add_option("--tau-hi", tau_hi);
  lident->add_option("--seed", seed)->capture_default_str();

  // moments
  auto* moments_cmd = app.add_subcommand("moments", "moments of Nos over the averaging window");
  moments_cmd->require_subcommand(1);
  auto* mrun = moments_cmd->add_subcommand("run", "moment report");
  double a = 0.5, K = 50.0;
  std::string grid_step = "auto";
  int m_max = 4;
  fn.attach(mrun);
  mrun->add_option("--T", T)->capture_default_str();
  mrun->add_option("--a", a)->capture_default_str();
  mrun->add_option("--K", K)->capture_default_str();
  mrun->add_option("--grid-step", grid_step)->capture_default_str();
  mrun->add_option("--mmax", m_max)->capture_default_str();
  mrun->add_option("--prime-limit", prime_limit);

  // diag
  auto* diag = app.add_subcommand("diag", "diagonal prime sum");
  diag->require_subcommand(1);
  auto* dcheck = diag->add_subcommand("check", "diagonal sum against sigma_f^2");
  std::vector<double> heights;
  fn.attach(dcheck);
  dcheck->add_option("--T", heights, "heights (repeatable)");
  dcheck->add_option("--prime-limit", prime_limit);

  // rmt
  auto* rmt = app.add_subcommand("rmt", "CUE model");
  rmt->require_subcommand(1);
  auto* rrun = rmt->add_subcommand("run", "Monte-Carlo moments of Z_f");
  int N = 64;
  std::int64_t samples = 20000;
  fn.attach(rrun);
  rrun->add_option("--N", N)->capture_default_str();
  rrun->add_option("--samples", samples)->capture_default_str();
  rrun->add_option("--seed", seed)->capture_default_str();
  rrun->add_option("--mmax", m_max)->capture_default_str();

  std::vector<std::string> args = raw_args;
  try {
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      std::string path;
      if (raw_args[i] == "--config" && i + 1 < raw_args.size()) path = raw_args[i + 1];
      else if (raw_args[i].rfind("--config=", 0) == 0) path = raw_args[i].substr(9);
      if (!path.empty()) {
        const auto extra = config_arguments(path, raw_args);
        args.insert(args.end(), extra.begin(), extra.end());
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (output.bins < 1) throw InvalidParameter("--bins must be >= 1");
    parallel::set_thread_count(threads);
    const int bins = output.hist ? output.bins : 0;
    json doc;

    if (*zfind) {
      const ZeroSet zs = find_zeros(tmin, tmax, tol);
      if (output.csv) {
        out << "index,ordinate\n";
        for (std::size_t i = 0; i < zs.ordinates.size(); ++i) out << i + 1 << ',' << num(zs.ordinates[i]) << '\n';
        return 0;
      }
      doc = {{"command", "zeros find"},
             {"config", {{"tmin", tmin}, {"tmax", tmax}, {"tol", tol}}},
             {"error_budget", {{"ordinate_tolerance", tol}}},
             {"zeros", zero_set_json(zs)},
             {"verify", count_json(verify_count(zs))}};
    } else if (*zimport || *zverify) {
      std::vector<std::string> warnings;
      ZeroSet zs;
      if (!zero_file.empty()) zs = import_zeros(zero_file, zero_offset, &warnings);
      else if (*zverify) zs = find_zeros(tmin, tmax, tol);
      else throw InvalidParameter("zeros import: --file is required");
      json config = {{"file", zero_file}, {"zero_offset", zero_offset}};
      if (zero_file.empty()) config = {{"tmin", tmin}, {"tmax", tmax}, {"tol", tol}};
      doc = {{"command", *zimport ? "zeros import" : "zeros verify"},
             {"config", config},
             {"error_budget", {{"count_slack", 3}}},
             {"warnings", warnings},
             {"verify", count_json(verify_count(zs))}};
      if (*zimport) doc["zeros"] = zero_set_json(zs);
    } else if (*leval || *lident) {
      const TestFunction f = fn.make();
      std::vector<double> points = taus;
      if (*lident && random_taus > 0) {
        if (!(tau_hi > tau_lo)) throw InvalidParameter("linstat identity: requires --tau-hi > --tau-lo");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uniform(tau_lo, tau_hi);
        for (int i = 0; i < random_taus; ++i) points.push_back(uniform(rng));
      }
      if (points.empty()) throw InvalidParameter("linstat: give --tau (or --random with a range)");
      const bool direct = *lident || with_direct;
      std::vector<LinStatSample> results;
      std::optional<ZeroSet> zs;
      std::int64_t table_limit = 0;
      if (direct) {
        const auto table = table_for(f.alpha(), T, prime_limit);
        table_limit = table.limit();
        zs = zero_file.empty() ? zeros_for(f, points, T, tail) : import_zeros(zero_file, zero_offset);
        results = check_explicit_identity(f, points, T, *zs, table, tail);
      } else {
        results.resize(points.size());
        parallel::for_each_index(points.size(), [&](std::size_t i) {
          const Estimate mean = nf_mean(f, points[i], T);
          LinStatSample& s = results[i];
          s.tau = points[i];
          s.mean_part = mean.value;
          s.polar_part = f.scale() == 0.0 ? 0.0 : polar_terms(f, points[i], T);
          s.error_estimate = mean.error_bound;
        });
        const auto table = table_for(f.alpha(), T, prime_limit);
        table_limit = table.limit();
        const OscillatorySum osc(f, T, table);
        for (auto& s : results) s.osc_part = osc(s.tau);
      }
      if (output.csv) {
        write_sample_csv(out, results);
        return 0;
      }
      json arr = json::array();
      double max_residual = 0.0, max_error = 0.0;
      for (const auto& s : results) {
        arr.push_back(sample_json(s));
        if (s.residual) max_residual = std::max(max_residual, std::abs(*s.residual));
        max_error = std::max(max_error, s.error_estimate);
      }
      json config = {{"test_function", fn.to_json()}, {"T", T}, {"tau", points}, {"tail_target", tail},
                     {"prime_limit", table_limit}};
      if (*lident) config["seed"] = seed;
      doc = {{"command", *leval ? "linstat eval" : "linstat identity"},
             {"config", config},
             {"error_budget", {{"tail_target", tail}, {"max_error_estimate", max_error}}},
             {"samples", arr}};
      if (direct) {
        doc["max_abs_residual"] = max_residual;
        doc["zeros"] = {{"t_min", zs->t_min}, {"t_max", zs->t_max}, {"count", zs->ordinates.size()},
                        {"source", zs->source == ZeroSource::computed ? "computed" : "imported"}};
      }
    } else if (*mrun) {
      const TestFunction f = fn.make();
      std::optional<double> step;
      if (grid_step != "auto") {
        try {
          step = std::stod(grid_step);
        } catch (const std::exception&) {
          throw InvalidParameter("--grid-step must be a number or 'auto'");
        }
      }
      const AverageConfig cfg = AverageConfig::make(T, a, K, step);
      const auto table = table_for(f.alpha(), T, prime_limit);
      const ZetaMomentReport z = moments(f, cfg, m_max, table, bins);
      if (output.csv) {
        write_moment_csv(out, z.report);
        return 0;
      }
      doc = {{"command", "moments run"},
             {"config",
              {{"test_function", fn.to_json()},
               {"T", cfg.T},
               {"a", cfg.a},
               {"H", cfg.H},
               {"K", cfg.K},
               {"grid_step", cfg.step()},
               {"grid_points", z.grid_points},
               {"weight", "fejer"},
               {"mmax", m_max},
               {"prime_limit", table.limit()}}},
             {"error_budget",
              {{"truncation_mass", z.truncation_mass},
               {"weight_mass", z.weight_mass},
               {"sup_nos", z.sup_nos},
               {"polar_bound", z.polar_bound},
               {"estimated_numerical_error", z.report.estimated_numerical_error}}},
             {"report", moment_report_json(z.report)},
             {"nos_mean", z.nos_mean},
             {"mean_term", z.mean_term},
             {"mean_term_fluctuation", z.mean_term_fluctuation},
             {"diagonal_sum", z.diagonal},
             {"second_moment_exact", opt(z.second_moment_exact)},
             {"prime_terms", z.prime_terms}};
    } else if (*dcheck) {
      const TestFunction f = fn.make();
      if (heights.empty()) heights = {1e4, 1e6, 1e8};
      const double sigma_sq = f.sigma_sq();
      json rows = json::array();
      std::optional<double> previous;
      if (output.csv) out << "T,diagonal_sum,sigma_sq,error,error_ratio\n";
      for (double h : heights) {
        const auto table = table_for(f.alpha(), h, prime_limit);
        const double d = diagonal_sum(f, h, table);
        const double e = d - sigma_sq;
        std::optional<double> ratio;
        if (previous && *previous != 0.0) ratio = e / *previous;
        previous = e;
        if (output.csv) {
          out << num(h) << ',' << num(d) << ',' << num(sigma_sq) << ',' << num(e) << ',' << (ratio ? num(*ratio) : "")
              << '\n';
        }
        rows.push_back({{"T", h}, {"diagonal_sum", d}, {"error", e}, {"error_ratio", opt(ratio)},
                        {"prime_limit", table.limit()}});
      }
      if (output.csv) return 0;
      doc = {{"command", "diag check"},
             {"config", {{"test_function", fn.to_json()}, {"T", heights}}},
             {"error_budget", {{"summation", "exact over n < T^alpha"}}},
             {"sigma_sq", sigma_sq},
             {"rows", rows}};
    } else if (*rrun) {
      const TestFunction f = fn.make();
      const CueConfig cfg{N, samples, seed};
      const CueMomentReport r = cue_moments(f, cfg, m_max, bins);
      if (output.csv) {
        write_moment_csv(out, r.report);
        return 0;
      }
      doc = {{"command", "rmt run"},
             {"config",
              {{"test_function", fn.to_json()}, {"N", N}, {"samples", samples}, {"seed", seed}, {"mmax", m_max}}},
             {"error_budget", {{"errors_are", "standard errors"}, {"max_modulus_defect", r.max_modulus_defect}}},
             {"report", moment_report_json(r.report)},
             {"variance_finite_n", r.variance_finite_n}};
    }
    out << doc.dump(2) << '\n';
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace zetalin::cli
