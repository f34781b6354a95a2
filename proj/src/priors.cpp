#include "midground/priors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "midground/errors.hpp"

namespace midground {

namespace {

void check_support(double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
    throw DomainError("prior support must satisfy 0 <= lo < hi <= 1");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double required_number(const nlohmann::json& spec, const char* key) {
  auto it = spec.find(key);
  if (it == spec.end() || !it->is_number()) {
    throw InputError(std::string("prior spec: missing numeric field '") + key +
                     "'");
  }
  return it->get<double>();
}

double optional_number(const nlohmann::json& spec, const char* key,
                       double fallback) {
  auto it = spec.find(key);
  if (it == spec.end()) return fallback;
  if (!it->is_number()) {
    throw InputError(std::string("prior spec: field '") + key +
                     "' must be numeric");
  }
  return it->get<double>();
}

}  // namespace

Prior1D::Prior1D(double lo, double hi, Family family, double log_norm)
    : lo_(lo), hi_(hi), family_(std::move(family)), log_norm_(log_norm) {}

Prior1D Prior1D::uniform(double lo, double hi) {
  check_support(lo, hi);
  return Prior1D(lo, hi, UniformFamily{}, -std::log(hi - lo));
}

Prior1D Prior1D::beta(double alpha, double beta) {
  if (!(alpha >= 1.0 && beta >= 1.0 && std::isfinite(alpha) &&
        std::isfinite(beta))) {
    throw DomainError("beta prior: require alpha >= 1 and beta >= 1");
  }
  return Prior1D(0.0, 1.0, BetaFamily{alpha, beta}, -log_beta(alpha, beta));
}

Prior1D Prior1D::truncated_normal(double mean, double sd, double lo,
                                  double hi) {
  check_support(lo, hi);
  if (!(sd > 0.0 && std::isfinite(sd) && std::isfinite(mean))) {
    throw DomainError("truncnormal prior: require finite mean and sd > 0");
  }
  const double z = normal_cdf((hi - mean) / sd) - normal_cdf((lo - mean) / sd);
  if (!(z > 0.0)) {
    throw DomainError("truncnormal prior: no mass inside the support");
  }
  return Prior1D(lo, hi, TruncatedNormalFamily{mean, sd},
                 -std::log(z * sd) - 0.5 * std::log(2.0 * std::numbers::pi));
}

Prior1D Prior1D::raw_grid(Grid1D density) {
  check_support(density.lo(), density.hi());
  for (double v : density.values()) {
    if (v < 0.0) throw DomainError("grid prior: negative density value");
  }
  const double lo = density.lo();
  const double hi = density.hi();
  return Prior1D(lo, hi, GridFamily{std::move(density)});
}

Prior1D Prior1D::grid(Grid1D density) {
  return normalize(raw_grid(std::move(density)));
}

double Prior1D::density(double theta) const noexcept {
  if (!(theta >= lo_ && theta <= hi_)) return 0.0;
  return std::visit(
      Overloaded{
          [&](const UniformFamily&) { return std::exp(log_norm_); },
          [&](const BetaFamily& f) {
            return std::pow(theta, f.alpha - 1.0) *
                   std::pow(1.0 - theta, f.beta - 1.0) * std::exp(log_norm_);
          },
          [&](const TruncatedNormalFamily& f) {
            const double z = (theta - f.mean) / f.sd;
            return std::exp(log_norm_ - 0.5 * z * z);
          },
          [&](const GridFamily& f) { return f.density.interpolate(theta); }},
      family_);
}

double Prior1D::mass() const {
  if (const auto* g = std::get_if<GridFamily>(&family_)) {
    return g->density.trapezoid();
  }
  return 1.0;
}

std::vector<double> Prior1D::kinks(double a, double b) const {
  std::vector<double> out;
  const auto* g = std::get_if<GridFamily>(&family_);
  if (g == nullptr) return out;
  const Grid1D& grid = g->density;
  const double h = grid.spacing();
  const auto first = static_cast<std::ptrdiff_t>(
      std::max(0.0, std::floor((a - grid.lo()) / h)));
  for (auto i = static_cast<std::size_t>(first); i < grid.size(); ++i) {
    const double x = grid.node(i);
    if (x >= b) break;
    if (x > a) out.push_back(x);
  }
  return out;
}

double Prior1D::mode() const {
  return std::visit(
      Overloaded{
          [&](const UniformFamily&) { return 0.5 * (lo_ + hi_); },
          [&](const BetaFamily& f) {
            const double denom = f.alpha + f.beta - 2.0;
            return denom > 0.0 ? (f.alpha - 1.0) / denom : 0.5;
          },
          [&](const TruncatedNormalFamily& f) {
            return std::clamp(f.mean, lo_, hi_);
          },
          [&](const GridFamily& f) {
            const auto values = f.density.values();
            const auto it = std::max_element(values.begin(), values.end());
            return f.density.node(
                static_cast<std::size_t>(it - values.begin()));
          }},
      family_);
}

Prior1D normalize(const Prior1D& raw) {
  const auto* g = std::get_if<GridFamily>(&raw.family());
  if (g == nullptr) return raw;
  const double total = g->density.trapezoid();
  if (!(total > 0.0)) throw DomainError("prior has zero mass");
  std::vector<double> values(g->density.values().begin(),
                             g->density.values().end());
  for (double& v : values) v /= total;
  return Prior1D::raw_grid(
      Grid1D(g->density.lo(), g->density.hi(), std::move(values)));
}

Prior1D Prior1D::from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw InputError("prior spec must be a JSON object");
  auto it = spec.find("family");
  if (it == spec.end() || !it->is_string()) {
    throw InputError("prior spec: missing string field 'family'");
  }
  const std::string family = it->get<std::string>();
  if (family == "uniform") {
    return uniform(optional_number(spec, "lo", 0.0),
                   optional_number(spec, "hi", 1.0));
  }
  if (family == "beta") {
    return beta(required_number(spec, "alpha"), required_number(spec, "beta"));
  }
  if (family == "truncnormal") {
    return truncated_normal(
        required_number(spec, "mean"), required_number(spec, "sd"),
        optional_number(spec, "lo", 0.0), optional_number(spec, "hi", 1.0));
  }
  if (family == "grid") {
    auto values_it = spec.find("values");
    if (values_it == spec.end() || !values_it->is_array()) {
      throw InputError("prior spec: grid requires a 'values' array");
    }
    std::vector<double> values;
    for (const auto& v : *values_it) {
      if (!v.is_number()) throw InputError("prior spec: non-numeric grid value");
      values.push_back(v.get<double>());
    }
    return grid(Grid1D(optional_number(spec, "lo", 0.0),
                       optional_number(spec, "hi", 1.0), std::move(values)));
  }
  throw InputError("prior spec: unknown family '" + family + "'");
}

nlohmann::ordered_json Prior1D::to_json() const {
  return std::visit(
      Overloaded{[&](const UniformFamily&) {
                   return nlohmann::ordered_json{
                       {"family", "uniform"}, {"lo", lo_}, {"hi", hi_}};
                 },
                 [&](const BetaFamily& f) {
                   return nlohmann::ordered_json{{"family", "beta"},
                                                 {"alpha", f.alpha},
                                                 {"beta", f.beta}};
                 },
                 [&](const TruncatedNormalFamily& f) {
                   return nlohmann::ordered_json{{"family", "truncnormal"},
                                                 {"mean", f.mean},
                                                 {"sd", f.sd},
                                                 {"lo", lo_},
                                                 {"hi", hi_}};
                 },
                 [&](const GridFamily& f) {
                   const auto v = f.density.values();
                   return nlohmann::ordered_json{
                       {"family", "grid"},
                       {"lo", lo_},
                       {"hi", hi_},
                       {"values", std::vector<double>(v.begin(), v.end())}};
                 }},
      family_);
}

}  // namespace midground
