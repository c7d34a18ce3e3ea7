#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "mllt/bernstein.hpp"
#include "mllt/error.hpp"
#include "mllt/exact.hpp"
#include "mllt/fit.hpp"
#include "mllt/gauss_compare.hpp"
#include "mllt/llt.hpp"
#include "mllt/moments.hpp"
#include "mllt/parallel.hpp"
#include "mllt/region.hpp"
#include "output.hpp"

namespace mllt::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::int64_t parse_int(const std::string& raw) {
  const std::string s = trim(raw);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + raw + "'");
  return v;
}

double parse_real(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("not a finite number: '" + raw + "'");
  return v;
}

}  // namespace

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<std::int64_t> parse_sweep(const std::string& text) {
  std::vector<std::int64_t> out;
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    for (const auto& part : split(text, ',')) out.push_back(parse_int(part));
  } else if (parts.size() == 3 && !parts[2].empty()) {
    const std::int64_t start = parse_int(parts[0]), end = parse_int(parts[1]);
    const std::int64_t by = parse_int(parts[2].substr(1));
    if (start < 1 || end < start) throw std::invalid_argument("sweep needs 1 <= start <= end");
    if (parts[2][0] == 'x') {
      if (by < 2) throw std::invalid_argument("geometric sweep factor must be >= 2");
      for (std::int64_t n = start; n <= end; n *= by) {
        out.push_back(n);
        if (n > end / by) break;
      }
    } else if (parts[2][0] == '+') {
      if (by < 1) throw std::invalid_argument("arithmetic sweep step must be >= 1");
      for (std::int64_t n = start; n <= end; n += by) out.push_back(n);
    } else {
      throw std::invalid_argument("sweep step must look like x2 or +10");
    }
  } else {
    throw std::invalid_argument("sweep must be start:end:xF, start:end:+S or a comma list");
  }
  if (out.empty()) throw std::invalid_argument("sweep is empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1) throw std::invalid_argument("sweep values must be >= 1");
    if (i > 0 && out[i] <= out[i - 1]) throw std::invalid_argument("sweep must be strictly increasing");
  }
  return out;
}

namespace {

struct RunConfig {
  std::string p;
  std::int64_t n = 0;
  std::string sweep;
  double eta = 0.5;
  std::string order = "one";
  int nodes = 12;
  std::string format = "csv";
  std::string out = "-";
  int threads = 0;

  std::string k;
  bool all = false;
  std::string region;
  std::string set;
  bool hellinger = false;
  std::string counts;
  std::string lambdas = "-2,-1,-0.5,0,1,2";
  std::string sample;
  std::string x;

  bool n_given = false;
  bool sweep_given = false;
};

std::vector<double> probabilities(const RunConfig& c) {
  if (c.p.empty()) throw std::invalid_argument("--p is required");
  return parse_reals(c.p);
}

std::vector<std::int64_t> trials_list(const RunConfig& c) {
  if (c.n_given && c.sweep_given) throw std::invalid_argument("give --N or --N-sweep, not both");
  if (c.sweep_given) return parse_sweep(c.sweep);
  if (c.n_given) {
    if (c.n < 1) throw Error(ErrorCode::ZeroTrials, "N must be >= 1");
    return {c.n};
  }
  throw std::invalid_argument("--N or --N-sweep is required");
}

std::int64_t single_trials(const RunConfig& c) {
  if (c.sweep_given) throw std::invalid_argument("this command takes --N, not --N-sweep");
  const auto list = trials_list(c);
  return list.front();
}

unsigned worker_count(const RunConfig& c) {
  if (c.threads < 0) throw std::invalid_argument("--threads must be >= 1");
  if (c.threads > 0) return static_cast<unsigned>(c.threads);
  if (const char* env = std::getenv("MLLT_THREADS"); env != nullptr && *env != '\0') {
    const std::int64_t v = parse_int(env);
    if (v < 1 || v > 4096) throw std::invalid_argument("MLLT_THREADS must be in [1, 4096]");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<LatticePoint> parse_points(const std::string& text) {
  std::vector<LatticePoint> pts;
  for (const auto& item : split(text, ';')) {
    LatticePoint k;
    for (const auto& v : split(item, ',')) k.push_back(parse_int(v));
    pts.push_back(std::move(k));
  }
  return pts;
}

// all | box:lo1,lo2:hi1,hi2 | half:a1,a2:b | points:k1,k2;k1,k2
Region parse_region(const std::string& text) {
  const std::string t = trim(text);
  if (t == "all") return Region::all();
  const auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : t.substr(colon + 1);
  if (kind == "points") return Region::from_points(parse_points(rest));
  const auto parts = split(rest, ':');
  if (kind == "box" && parts.size() == 2) {
    std::vector<std::int64_t> lo, hi;
    for (const auto& v : split(parts[0], ',')) lo.push_back(parse_int(v));
    for (const auto& v : split(parts[1], ',')) hi.push_back(parse_int(v));
    return Region::from_box(lo, hi);
  }
  if (kind == "half" && parts.size() == 2) return Region::from_half_space(parse_reals(parts[0]), parse_real(parts[1]));
  throw std::invalid_argument("region must be all, box:LO:HI, half:A:B or points:K;K");
}

// all | box:lo:hi (reals, inf allowed) | half:a:b | points:... (rejected later)
ContinuousRegion parse_set(const std::string& text) {
  const std::string t = trim(text);
  ContinuousRegion r;
  if (t == "all") return r;
  const auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  const auto parts = split(colon == std::string::npos ? "" : t.substr(colon + 1), ':');
  if (kind == "box" && parts.size() == 2) {
    r.kind = ContinuousRegion::Kind::box;
    for (const auto& v : split(parts[0], ',')) r.lo.push_back(parse_real(v));
    for (const auto& v : split(parts[1], ',')) r.hi.push_back(parse_real(v));
    return r;
  }
  if (kind == "half" && parts.size() == 2) {
    r.kind = ContinuousRegion::Kind::half_space;
    r.a = parse_reals(parts[0]);
    r.b = parse_real(parts[1]);
    return r;
  }
  if (kind == "points") {
    r.kind = ContinuousRegion::Kind::points;
    return r;
  }
  throw std::invalid_argument("set must be all, box:LO:HI, half:A:B");
}

std::string one_based(std::initializer_list<int> idx) {
  std::string s;
  for (int i : idx) s += std::to_string(i + 1);
  return s;
}

// Per-point tables are held in memory before printing.
constexpr std::uint64_t kRowLimit = 10'000'000;

void require_rows(std::uint64_t rows) {
  if (rows > kRowLimit)
    throw Error(ErrorCode::TooLarge, std::to_string(rows) + " rows exceed the table limit of " +
                                         std::to_string(kRowLimit));
}

// Points requested with --k, --all, or by default the bulk.
std::vector<LatticePoint> selected_points(const RunConfig& c, const ModelParams& m) {
  if (!c.k.empty() && c.all) throw std::invalid_argument("give --k or --all, not both");
  if (!c.k.empty()) {
    auto pts = parse_points(c.k);
    require_rows(pts.size());
    for (const auto& k : pts) require_in_simplex(m, k);
    return pts;
  }
  std::vector<LatticePoint> pts;
  if (c.all) {
    require_rows(simplex_count(m.dim(), m.trials()));
    return enumerate_simplex(m.dim(), m.trials());
  }
  const LatticeBox box = bulk_box(m, c.eta);
  require_rows(box_count_bound(box, m.trials()));
  for_each_lattice_point(box, m.trials(), [&](const LatticePoint& k) {
    if (in_bulk(m, k, c.eta)) pts.push_back(k);
  });
  return pts;
}

// Fills rows[i] = fn(pts[i]) in parallel; row order is the point order.
template <class Fn>
std::vector<std::vector<Cell>> rows_for(const std::vector<LatticePoint>& pts, unsigned threads,
                                        Fn&& fn) {
  constexpr std::size_t kChunk = 512;
  std::vector<std::vector<Cell>> rows(pts.size());
  run_chunks((pts.size() + kChunk - 1) / kChunk, threads, [&](std::size_t c) {
    const std::size_t end = std::min(pts.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) rows[i] = fn(pts[i]);
  });
  return rows;
}

std::vector<std::string> k_columns(int d) {
  std::vector<std::string> cols;
  for (int i = 0; i < d; ++i) cols.push_back("k" + std::to_string(i + 1));
  return cols;
}

Table cmd_pmf(const RunConfig& c) {
  const ModelParams m = ModelParams::create(probabilities(c), single_trials(c));
  const auto pts = selected_points(c, m);
  Table t;
  t.columns = k_columns(m.dim());
  for (const char* col : {"exact", "approx0", "approx_half", "approx_one", "ratio_error_one"})
    t.columns.emplace_back(col);
  t.rows = rows_for(pts, worker_count(c), [&](const LatticePoint& k) {
    std::vector<Cell> row(k.begin(), k.end());
    row.emplace_back(std::exp(log_pmf(m, k)));
    for (Order o : {Order::zero, Order::half, Order::one}) row.emplace_back(approx_pmf(m, k, o).value);
    row.emplace_back(ratio_error(m, k, Order::one));
    return row;
  });
  return t;
}

Table cmd_expand(const RunConfig& c) {
  const ModelParams m = ModelParams::create(probabilities(c), single_trials(c));
  const auto pts = selected_points(c, m);
  Table t;
  t.columns = k_columns(m.dim());
  for (const char* col : {"base", "c_half_raw", "c_one_raw", "c_half_sym", "c_one_sym"})
    t.columns.emplace_back(col);
  t.rows = rows_for(pts, worker_count(c), [&](const LatticePoint& k) {
    const ExpansionTerms raw = expansion_terms(m, k);
    const ExpansionTerms sym = expansion_terms_symmetrized(m, k);
    std::vector<Cell> row(k.begin(), k.end());
    for (double v : {raw.base, raw.c_half, raw.c_one, sym.c_half, sym.c_one}) row.emplace_back(v);
    return row;
  });
  return t;
}

Table cmd_region(const RunConfig& c) {
  if (c.region.empty()) throw std::invalid_argument("--region is required");
  const auto p = probabilities(c);
  const Region region = parse_region(c.region);
  const Order order = parse_order(c.order);
  const bool leading = !c.set.empty();
  const ContinuousRegion set = leading ? parse_set(c.set) : ContinuousRegion{};
  const unsigned threads = worker_count(c);
  Table t;
  t.columns = {"N", "exact", "approx", "abs_error"};
  if (leading) t.columns.emplace_back("leading");
  for (std::int64_t n : trials_list(c)) {
    const ModelParams m = ModelParams::create(p, n);
    const double exact = region_prob_exact(m, region, threads);
    const double approx = region_prob_approx(m, region, order, c.nodes, threads);
    std::vector<Cell> row{n, exact, approx, std::fabs(exact - approx)};
    if (leading) row.emplace_back(leading_set_approx(m, set, c.nodes));
    t.add(std::move(row));
  }
  return t;
}

Table cmd_tv(const RunConfig& c) {
  const auto p = probabilities(c);
  const unsigned threads = worker_count(c);
  Table t;
  if (c.hellinger) {
    t.columns = {"N", "tail_term", "cap", "bound_valid", "exact_mass", "azuma_bound"};
    for (std::int64_t n : trials_list(c)) {
      const ModelParams m = ModelParams::create(p, n);
      const HellingerTail h = hellinger_upper_bound_terms(m, c.eta, threads);
      const TailMass tail = tail_mass_outside_bulk(m, c.eta, threads);
      t.add({n, h.tail_term, h.cap, h.bound_valid, tail.exact_mass, tail.azuma_bound});
    }
    return t;
  }
  t.columns = {"N", "tv", "tv_sqrtN", "cell_contribution", "outside_mass", "cells_evaluated",
               "truncation_bound"};
  for (std::int64_t n : trials_list(c)) {
    const TVReport r = tv_distance_numeric(ModelParams::create(p, n), c.nodes, threads);
    t.add({n, r.tv, r.tv * std::sqrt(static_cast<double>(n)), r.cell_contribution, r.outside_mass,
           static_cast<std::int64_t>(r.cells_evaluated), r.truncation_bound});
  }
  return t;
}

Table cmd_moments(const RunConfig& c) {
  const auto p = probabilities(c);
  const unsigned threads = worker_count(c);
  Table t;
  t.columns = {"N", "moment", "closed_form", "remainder", "oracle", "difference"};
  for (std::int64_t n : trials_list(c)) {
    const ModelParams m = ModelParams::create(p, n);
    const int d = m.dim();
    std::vector<std::pair<std::string, MomentSpec>> specs;
    for (int i = 0; i < d; ++i) specs.push_back({"mean_" + one_based({i}), {MomentKind::mean, i}});
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) specs.push_back({"cov_" + one_based({i, j}), {MomentKind::cov, i, j}});
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        for (int l = j; l < d; ++l)
          specs.push_back({"third_" + one_based({i, j, l}), {MomentKind::third, i, j, l}});
    for (int i = 0; i < d; ++i) specs.push_back({"fourth_" + one_based({i}), {MomentKind::fourth, i}});
    for (int i = 0; i < d; ++i) specs.push_back({"sixth_" + one_based({i}), {MomentKind::sixth, i}});
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        specs.push_back({"mixed33_" + one_based({i, j}), {MomentKind::mixed33, i, j}});
    for (const auto& [name, spec] : specs) {
      std::vector<int> a(static_cast<std::size_t>(d), 0);
      const auto bump = [&](int idx, int by) { a[static_cast<std::size_t>(idx)] += by; };
      switch (spec.kind) {
        case MomentKind::mean: bump(spec.i, 1); break;
        case MomentKind::cov: bump(spec.i, 1); bump(spec.j, 1); break;
        case MomentKind::third: bump(spec.i, 1); bump(spec.j, 1); bump(spec.l, 1); break;
        case MomentKind::fourth: bump(spec.i, 4); break;
        case MomentKind::sixth: bump(spec.i, 6); break;
        case MomentKind::mixed33: bump(spec.i, 3); bump(spec.j, 3); break;
      }
      const ClosedFormMoment cf = closed_form_central_moment(m, spec);
      const double oracle = central_moment_exact(m, a, threads);
      t.add({n, name, cf.leading, std::string(to_string(cf.remainder)), oracle, oracle - cf.leading});
    }
  }
  return t;
}

Table cmd_constants(const RunConfig& c) {
  const auto p = probabilities(c);
  const unsigned threads = worker_count(c);
  Table t;
  t.columns = {"N", "constant", "finite_N", "limit", "relative_gap"};
  for (std::int64_t n : trials_list(c)) {
    const ModelParams m = ModelParams::create(p, n);
    std::vector<std::pair<std::string, LimitConstant>> values{
        {"sum_sq", limit_constant_sum_sq(m, threads)}, {"sum_cube", limit_constant_sum_cube(m, threads)}};
    for (int i = 0; i < m.dim(); ++i)
      values.push_back({"min_cross_" + one_based({i}), limit_constant_min_cross(m, i)});
    for (const auto& [name, v] : values) t.add({n, name, v.finite_n, v.limit, v.finite_n / v.limit - 1.0});
  }
  return t;
}

Table cmd_divergence(const RunConfig& c) {
  const ModelParams m = ModelParams::create(probabilities(c), single_trials(c));
  if (c.counts.empty()) throw std::invalid_argument("--counts is required");
  std::vector<std::int64_t> counts;
  for (const auto& v : split(c.counts, ',')) counts.push_back(parse_int(v));
  Table t;
  t.columns = {"lambda", "statistic"};
  for (double lambda : parse_reals(c.lambdas)) t.add({lambda, power_divergence(m, counts, lambda)});
  return t;
}

Sample read_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read sample file '" + path + "'");
  std::vector<std::vector<double>> pts;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    pts.push_back(parse_reals(line));
  }
  return Sample::create(std::move(pts));
}

Table cmd_estimate(const RunConfig& c) {
  if (c.sample.empty() || c.x.empty()) throw std::invalid_argument("--sample and --x are required");
  const Sample s = read_sample(c.sample);
  const std::int64_t n = single_trials(c);
  const unsigned threads = worker_count(c);
  Table t;
  for (int i = 0; i < s.dim(); ++i) t.columns.push_back("x" + std::to_string(i + 1));
  t.columns.emplace_back("cdf");
  t.columns.emplace_back("density");
  for (const auto& item : split(c.x, ';')) {
    const auto x = parse_reals(item);
    std::vector<Cell> row(x.begin(), x.end());
    row.emplace_back(cdf_estimator(s, n, x, threads));
    row.emplace_back(density_estimator(s, n, x));
    t.add(std::move(row));
  }
  return t;
}

Table cmd_error_table(const RunConfig& c) {
  const auto p = probabilities(c);
  if (!c.sweep_given) throw std::invalid_argument("error-table needs --N-sweep");
  const auto sweep = trials_list(c);
  if (sweep.size() < 4) throw std::invalid_argument("error-table needs a sweep of at least 4 values");
  const unsigned threads = worker_count(c);
  Table t;
  t.columns = {"N", "order0", "order_half", "order_one"};
  std::vector<double> ns;
  std::vector<std::vector<double>> errs(3);
  const Order orders[3] = {Order::zero, Order::half, Order::one};
  for (std::int64_t n : sweep) {
    const ModelParams m = ModelParams::create(p, n);
    std::vector<Cell> row{n};
    for (int o = 0; o < 3; ++o) {
      errs[static_cast<std::size_t>(o)].push_back(max_bulk_ratio_error(m, c.eta, orders[o], threads));
      row.emplace_back(errs[static_cast<std::size_t>(o)].back());
    }
    ns.push_back(static_cast<double>(n));
    t.add(std::move(row));
  }
  std::vector<Cell> slope{std::string("slope")};
  for (const auto& e : errs) {
    for (double v : e)
      if (!(v > 0.0)) throw NumericFailure("zero bulk error; slope undefined");
    slope.emplace_back(loglog_slope(ns, e));
  }
  t.add(std::move(slope));
  return t;
}

void report_error(const std::string& code, const std::string& reason, const std::string& message) {
  nlohmann::ordered_json err;
  err["error"] = code;
  err["reason"] = reason;
  err["message"] = message;
  std::cerr << err.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Multinomial local limit expansions, exact oracles and Gaussian comparisons", "mllt"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read key=value defaults from a file");

  auto* n_opt = app.add_option("--N", cfg.n, "Trial count");
  auto* sweep_opt = app.add_option("--N-sweep", cfg.sweep, "start:end:xF, start:end:+S or a list");
  app.add_option("--p", cfg.p, "Comma-separated probabilities p_1..p_d");
  app.add_option("--eta", cfg.eta, "Bulk width in (0,1)")->capture_default_str();
  app.add_option("--order", cfg.order, "Expansion order: 0, half or one")->capture_default_str();
  app.add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes per axis")->capture_default_str();
  app.add_option("--format", cfg.format, "csv or json")->capture_default_str();
  app.add_option("--out", cfg.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (default: MLLT_THREADS or all cores)");

  auto* pmf = app.add_subcommand("pmf", "Exact and approximate pmf per lattice point");
  auto* expand = app.add_subcommand("expand", "Correction coefficients in both forms");
  for (auto* sub : {pmf, expand}) {
    sub->add_option("--k", cfg.k, "Points as k1,k2;k1,k2 (default: the bulk)");
    sub->add_flag("--all", cfg.all, "Every point of the simplex");
  }
  auto* region = app.add_subcommand("region", "Exact and expanded region probabilities");
  region->add_option("--region", cfg.region, "all | box:LO:HI | half:A:B | points:K;K");
  region->add_option("--set", cfg.set, "Continuous set for the leading Gaussian integral");
  auto* tv = app.add_subcommand("tv", "Total variation to the matching Gaussian");
  tv->add_flag("--hellinger", cfg.hellinger, "Report tail pieces and bounds instead");
  auto* moments = app.add_subcommand("moments", "Closed-form central moments against enumeration");
  auto* bern = app.add_subcommand("bernstein", "Bernstein estimators and related constants");
  bern->require_subcommand(1);
  auto* constants = bern->add_subcommand("constants", "Finite-N sums against their limits");
  auto* divergence = bern->add_subcommand("divergence", "Power divergence statistics");
  divergence->add_option("--counts", cfg.counts, "d+1 counts summing to N");
  divergence->add_option("--lambda", cfg.lambdas, "Comma-separated lambdas")->capture_default_str();
  auto* estimate = bern->add_subcommand("estimate", "Bernstein cdf and density estimates");
  estimate->add_option("--sample", cfg.sample, "File with one sample point per line");
  estimate->add_option("--x", cfg.x, "Evaluation points as x1,x2;x1,x2");
  auto* table = app.add_subcommand("error-table", "Bulk ratio errors over an N sweep with slopes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("E_ARGS", e.get_name(), e.what());
    return kArgs;
  }
  cfg.n_given = n_opt->count() > 0;
  cfg.sweep_given = sweep_opt->count() > 0;

  try {
    const Format format = parse_format(cfg.format);
    if (cfg.nodes < 1) throw std::invalid_argument("--nodes must be >= 1");
    require_eta(cfg.eta);
    parse_order(cfg.order);
    Table result;
    if (pmf->parsed()) result = cmd_pmf(cfg);
    else if (expand->parsed()) result = cmd_expand(cfg);
    else if (region->parsed()) result = cmd_region(cfg);
    else if (tv->parsed()) result = cmd_tv(cfg);
    else if (moments->parsed()) result = cmd_moments(cfg);
    else if (constants->parsed()) result = cmd_constants(cfg);
    else if (divergence->parsed()) result = cmd_divergence(cfg);
    else if (estimate->parsed()) result = cmd_estimate(cfg);
    else if (table->parsed()) result = cmd_error_table(cfg);

    std::ostringstream text;
    write_table(text, result, format);
    if (cfg.out == "-") {
      std::cout << text.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file '" + cfg.out + "'");
      file << text.str();
    }
    return kOk;
  } catch (const Error& e) {
    const bool too_large = e.code() == ErrorCode::TooLarge;
    report_error(too_large ? "E_TOO_LARGE" : "E_ARGS", std::string(to_string(e.code())), e.what());
    return too_large ? kTooLarge : kArgs;
  } catch (const NumericFailure& e) {
    report_error("E_NUMERIC", "NumericFailure", e.what());
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    report_error("E_ARGS", "InvalidArgument", e.what());
    return kArgs;
  } catch (const std::exception& e) {
    report_error("E_NUMERIC", "Failure", e.what());
    return kNumeric;
  }
}

}  // namespace mllt::cli
