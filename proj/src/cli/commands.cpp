#include "midground/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "midground/baselines.hpp"
#include "midground/cdf_interval.hpp"
#include "midground/errors.hpp"
#include "midground/harness.hpp"
#include "midground/mean_interval.hpp"
#include "midground/svg.hpp"

namespace midground::cli {

using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& text, std::string_view what) {
  char* end = nullptr;
  const double x = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(x)) {
    throw InputError(std::string(what) + ": '" + text +
                     "' is not a finite real number");
  }
  return x;
}

Interval parse_pair(const std::string& text, std::string_view what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw InputError(std::string(what) + " expects two values as lo,hi");
  }
  const double lo = parse_real(trim(text.substr(0, comma)), what);
  const double hi = parse_real(trim(text.substr(comma + 1)), what);
  if (lo > hi) throw InputError(std::string(what) + " requires lo <= hi");
  return {lo, hi};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double x = parse_real(trim(item), "--n-list");
    if (x < 1 || x != std::floor(x) || x > 1e9) {
      throw InputError("--n-list entries must be positive integers");
    }
    out.push_back(static_cast<int>(x));
  }
  if (out.empty()) throw InputError("--n-list is empty");
  return out;
}

void check_level(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("--p must lie in (0, 1)");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

std::string report_text(const ordered_json& report) {
  return report.dump(2) + "\n";
}

ordered_json interval_json(Interval i) { return ordered_json::array({i.lo, i.hi}); }

// --- options shared by the commands --------------------------------------

struct CdfOptions {
  std::string input;
  std::string prior = R"({"family":"uniform"})";
  double p = 0.95;
  std::string interval;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

struct MeanOptions {
  std::string input;
  std::string prior = R"({"family":"uniform"})";
  double p = 0.95;
  std::string interval;
  std::string bounds = "0,1";
  std::uint64_t seed = 0;
  std::string out;
};

struct VerifyOptions {
  std::string case_name = "cdf";
  int n = 50;
  double epsilon = 0.02;
  std::size_t accepted = 2000;
  std::size_t draws = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::string svg;
};

struct WidthOptions {
  std::string case_name = "cdf";
  double p = 0.95;
  std::string n_list = "10,20,50,100,1000,100000";
  std::string prior = R"({"family":"uniform"})";
  std::uint64_t seed = 0;
  std::string out;
  std::string svg;
};

struct AsymOptions {
  std::vector<double> levels = {0.8, 0.95, 0.99};
  std::string out;
};

// --- commands --------------------------------------------------------------

int cmd_cdf(const CdfOptions& o, std::ostream& out) {
  const std::vector<double> xs = read_samples_file(o.input);
  const Prior1D prior = parse_prior_arg(o.prior);
  const CdfProblem problem = CdfProblem::from_samples(xs, o.threshold);

  ordered_json config;
  config["command"] = "cdf";
  config["input"] = o.input;
  config["prior"] = prior.to_json();
  config["threshold"] = o.threshold;
  config["seed"] = o.seed;

  IntervalResult result{};
  if (!o.interval.empty()) {
    const Interval query = parse_pair(o.interval, "--interval");
    config["interval"] = interval_json(query);
    result = {query, belief(problem, prior, query)};
  } else {
    check_level(o.p);
    config["p"] = o.p;
    result = smallest_interval(problem, prior, o.p);
  }

  ordered_json report;
  report["n"] = problem.n_samples;
  report["s"] = problem.count_below;
  report["y"] = o.threshold;
  report["interval"] = interval_json(result.interval);
  report["belief"] = result.belief;
  report["prior_spec"] = prior.to_json();
  report["seed"] = o.seed;
  report["config"] = config;
  emit(report_text(report), o.out, out);
  return kOk;
}

int cmd_mean(const MeanOptions& o, std::ostream& out) {
  const std::vector<double> xs = read_samples_file(o.input);
  const Interval bounds = parse_pair(o.bounds, "--bounds");
  if (!(bounds.lo < bounds.hi)) throw InputError("--bounds requires a < b");
  const Prior1D prior = parse_prior_arg(o.prior);
  check_level(o.p);

  const double a = bounds.lo;
  const double scale = bounds.hi - bounds.lo;
  double sum = 0.0;
  for (double x : xs) {
    if (x < bounds.lo || x > bounds.hi) {
      throw InputError("sample " + std::to_string(x) + " lies outside --bounds");
    }
    sum += (x - a) / scale;
  }
  const int n = static_cast<int>(xs.size());
  const double mean = std::clamp(sum / n, 0.0, 1.0);
  const MeanProblem problem = draw_mean_problem(n, mean, o.p, o.seed);
  auto to_original = [&](double u) { return a + scale * u; };

  ordered_json config;
  config["command"] = "mean";
  config["input"] = o.input;
  config["prior"] = prior.to_json();
  config["bounds"] = interval_json(bounds);
  config["p"] = o.p;
  config["seed"] = o.seed;

  ordered_json report;
  report["n"] = n;
  report["sample_mean"] = to_original(problem.sample_mean);
  report["s"] = to_original(problem.statistic);
  report["delta"] = scale * problem.delta;
  if (!o.interval.empty()) {
    const Interval query = parse_pair(o.interval, "--interval");
    config["interval"] = interval_json(query);
    const Interval unit{(query.lo - a) / scale, (query.hi - a) / scale};
    report["interval"] = interval_json(query);
    report["belief"] = belief_for_interval(problem, prior, unit);
  } else {
    const MeanIntervalResult r = solve_halfwidth(problem, prior, o.p);
    report["half_width"] = scale * r.half_width;
    report["interval"] = interval_json(
        {to_original(r.interval.lo), to_original(r.interval.hi)});
    report["belief"] = r.belief;
  }
  report["prior_spec"] = prior.to_json();
  report["seed"] = o.seed;
  report["config"] = config;
  emit(report_text(report), o.out, out);
  return kOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const Case c = parse_case(o.case_name);
  if (o.n <= 0) throw DomainError("--n must be positive");
  const DistributionPrior dp;
  AbcSettings settings;
  settings.epsilon = o.epsilon;
  settings.accepted_target = o.accepted;
  settings.threads = o.threads;

  const Prior1D theta_prior = induced_theta_prior(dp, c, o.seed, o.draws);
  const std::vector<double> levels = default_levels(c);
  const std::vector<ValidityCandidate> candidates =
      sweep_candidates(c, theta_prior, o.n, levels);
  const std::vector<ValidityPoint> points = abc_validity_curve(
      c, dp, theta_prior, candidates, o.n, settings, o.seed);

  // Thread count is excluded: it does not affect the output.
  ordered_json config;
  config["command"] = "verify";
  config["case"] = o.case_name;
  config["n"] = o.n;
  config["epsilon"] = o.epsilon;
  config["accepted"] = o.accepted;
  config["draws"] = o.draws;
  config["seed"] = o.seed;

  std::ostringstream csv;
  csv << "# config " << config.dump() << '\n';
  write_validity_csv(csv, c, points);
  emit(csv.str(), o.out, out);

  if (!o.svg.empty()) {
    svg::Series measured{"b_hat", {}, {}};
    svg::Series ideal{"b = p", {}, {}, true};
    for (const ValidityPoint& v : points) {
      measured.x.push_back(v.target_p);
      measured.y.push_back(v.b_hat);
      ideal.x.push_back(v.target_p);
      ideal.y.push_back(v.target_p);
    }
    svg::ChartOptions chart;
    chart.title = "Validity, " + o.case_name + " case, N = " + std::to_string(o.n);
    chart.x_label = "reported belief p";
    chart.y_label = "b(theta in I | A = p)";
    emit(svg::line_chart({measured, ideal}, chart), o.svg, out);
  }
  return kOk;
}

int cmd_widths(const WidthOptions& o, std::ostream& out) {
  const Case c = parse_case(o.case_name);
  check_level(o.p);
  const std::vector<int> ns = parse_int_list(o.n_list);
  const bool induced = o.prior == "induced";
  const Prior1D prior = induced
                            ? induced_theta_prior(DistributionPrior{}, c, o.seed)
                            : parse_prior_arg(o.prior);
  const std::vector<WidthRow> rows = width_vs_n(c, o.p, ns, prior);

  ordered_json config;
  config["command"] = "widths";
  config["case"] = o.case_name;
  config["p"] = o.p;
  config["n_list"] = ns;
  config["prior"] = induced ? ordered_json("induced") : prior.to_json();
  config["seed"] = o.seed;

  std::ostringstream csv;
  csv << "# config " << config.dump() << '\n';
  write_width_csv(csv, c, rows);
  emit(csv.str(), o.out, out);

  if (!o.svg.empty()) {
    svg::Series proposed{"proposed", {}, {}};
    svg::Series baseline{c == Case::Cdf ? "Clopper-Pearson" : "Hoeffding",
                         {}, {}, true};
    for (const WidthRow& r : rows) {
      proposed.x.push_back(r.n);
      proposed.y.push_back(r.width_proposed);
      baseline.x.push_back(r.n);
      baseline.y.push_back(r.width_baseline);
    }
    svg::ChartOptions chart;
    chart.title = "Interval width, " + o.case_name + " case";
    chart.x_label = "N";
    chart.y_label = "width";
    chart.log_x = true;
    emit(svg::line_chart({proposed, baseline}, chart), o.svg, out);
  }
  return kOk;
}

int cmd_asym(const AsymOptions& o, std::ostream& out) {
  std::ostringstream csv;
  ordered_json config;
  config["command"] = "asym";
  config["p"] = o.levels;
  csv << "# config " << config.dump() << '\n';
  csv << "p,delta_sqrt_n,Delta_sqrt_n,hoeffding_sqrt_n,ratio\n";
  for (double p : o.levels) {
    check_level(p);
    const OptimalDelta d = optimal_delta_scaled(p);
    const double h = hoeffding_halfwidth(1, p);
    char line[160];
    std::snprintf(line, sizeof line, "%.10g,%.6f,%.6f,%.6f,%.6f\n", p,
                  d.delta_sqrt_n, d.Delta_sqrt_n, h, d.Delta_sqrt_n / h);
    csv << line;
  }
  emit(csv.str(), o.out, out);
  return kOk;
}

}  // namespace

std::vector<double> read_samples(std::istream& in) {
  std::vector<double> xs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    xs.push_back(parse_real(t, "line " + std::to_string(line_no)));
  }
  if (xs.empty()) throw InputError("input contains no samples");
  return xs;
}

std::vector<double> read_samples_file(const std::string& path) {
  if (path.empty()) throw InputError("--input is required");
  std::ifstream f(path);
  if (!f) throw InputError("cannot open input file '" + path + "'");
  return read_samples(f);
}

Prior1D parse_prior_arg(std::string_view arg) {
  const std::string text = trim(arg);
  nlohmann::json spec;
  try {
    if (!text.empty() && text.front() == '{') {
      spec = nlohmann::json::parse(text);
    } else {
      std::ifstream f(text);
      if (!f) throw InputError("cannot open prior file '" + text + "'");
      spec = nlohmann::json::parse(f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("prior is not valid JSON: ") + e.what());
  }
  return Prior1D::from_json(spec);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Credible intervals for CDF fractions and bounded means"};
  app.name("midground");
  app.require_subcommand(1);

  CdfOptions cdf;
  auto* c = app.add_subcommand("cdf", "Credible interval for P(X < y)");
  c->add_option("--input", cdf.input, "Sample file, one value per line")->required();
  c->add_option("--prior", cdf.prior, "Prior as JSON or a JSON file path");
  c->add_option("--p", cdf.p, "Target belief");
  c->add_option("--interval", cdf.interval, "Query the belief of lo,hi instead");
  c->add_option("--threshold", cdf.threshold, "Threshold y");
  c->add_option("--seed", cdf.seed, "Seed recorded in the report");
  c->add_option("--out", cdf.out, "Report path (default stdout)");

  MeanOptions mean;
  auto* m = app.add_subcommand("mean", "Credible interval for a bounded mean");
  m->add_option("--input", mean.input, "Sample file, one value per line")->required();
  m->add_option("--prior", mean.prior, "Prior on the rescaled mean");
  m->add_option("--p", mean.p, "Target belief (also sets delta)");
  m->add_option("--interval", mean.interval, "Query the belief of lo,hi instead");
  m->add_option("--bounds", mean.bounds, "Support a,b of the data");
  m->add_option("--seed", mean.seed, "Seed for the randomized statistic");
  m->add_option("--out", mean.out, "Report path (default stdout)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "ABC validity curve");
  v->add_option("--case", verify.case_name, "cdf or mean");
  v->add_option("--n", verify.n, "Samples per dataset");
  v->add_option("--epsilon", verify.epsilon, "ABC acceptance tolerance");
  v->add_option("--accepted", verify.accepted, "Accepted draws per level");
  v->add_option("--draws", verify.draws, "Prior draws for the induced theta prior");
  v->add_option("--seed", verify.seed, "Master seed");
  v->add_option("--threads", verify.threads, "Worker threads (0: all cores)");
  v->add_option("--out", verify.out, "CSV path (default stdout)");
  v->add_option("--svg", verify.svg, "Also write an SVG chart here");

  WidthOptions widths;
  auto* w = app.add_subcommand("widths", "Interval width against N");
  w->add_option("--case", widths.case_name, "cdf or mean");
  w->add_option("--p", widths.p, "Target belief");
  w->add_option("--n-list", widths.n_list, "Comma separated sample sizes");
  w->add_option("--prior", widths.prior, "Prior JSON, file path, or 'induced'");
  w->add_option("--seed", widths.seed, "Seed for the induced prior");
  w->add_option("--out", widths.out, "CSV path (default stdout)");
  w->add_option("--svg", widths.svg, "Also write an SVG chart here");

  AsymOptions asym;
  auto* a = app.add_subcommand("asym", "Asymptotic randomization design");
  a->add_option("--p", asym.levels, "Target beliefs")->delimiter(',');
  a->add_option("--out", asym.out, "CSV path (default stdout)");

  std::vector<const char*> argv{"midground"};
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (c->parsed()) return cmd_cdf(cdf, out);
    if (m->parsed()) return cmd_mean(mean, out);
    if (v->parsed()) return cmd_verify(verify, out);
    if (w->parsed()) return cmd_widths(widths, out);
    return cmd_asym(asym, out);
  } catch (const UnachievableError& e) {
    err << "unachievable: " << e.what() << '\n';
    return kUnachievable;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace midground::cli
