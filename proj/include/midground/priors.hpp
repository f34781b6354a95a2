#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "midground/numerics.hpp"

namespace midground {

struct UniformFamily {};
struct BetaFamily {
  double alpha;
  double beta;
};
struct TruncatedNormalFamily {
  double mean;
  double sd;
};
struct GridFamily {
  Grid1D density;
};

/// One-dimensional prior density b(theta) on a support inside [0, 1].
///
/// Parametric families are always normalized. Grid priors are linearly
/// interpolated between uniformly spaced nodes and may hold an unnormalized
/// shape until passed through normalize().
class Prior1D {
 public:
  using Family =
      std::variant<UniformFamily, BetaFamily, TruncatedNormalFamily, GridFamily>;

  static Prior1D uniform(double lo = 0.0, double hi = 1.0);
  /// Beta(alpha, beta) on [0, 1]; alpha, beta >= 1 so the density is bounded.
  static Prior1D beta(double alpha, double beta);
  static Prior1D truncated_normal(double mean, double sd, double lo = 0.0,
                                  double hi = 1.0);
  /// Grid prior normalized to unit mass.
  static Prior1D grid(Grid1D density);
  /// Grid prior kept as given (mass may differ from one).
  static Prior1D raw_grid(Grid1D density);

  /// Parses the JSON prior specification (`family`: uniform | beta |
  /// truncnormal | grid). Throws InputError on malformed input.
  static Prior1D from_json(const nlohmann::json& spec);
  nlohmann::ordered_json to_json() const;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  const Family& family() const noexcept { return family_; }
  bool is_grid() const noexcept {
    return std::holds_alternative<GridFamily>(family_);
  }

  /// Density at theta; 0 outside the support.
  double density(double theta) const noexcept;

  /// Total mass of the density over its support.
  double mass() const;

  /// Interior kinks of the density inside (a, b): grid nodes, or nothing.
  std::vector<double> kinks(double a, double b) const;

  /// Location of the largest density value.
  double mode() const;

 private:
  Prior1D(double lo, double hi, Family family, double log_norm = 0.0);

  double lo_;
  double hi_;
  Family family_;
  double log_norm_;  // parametric normalizing constant
};

/// Rescales a prior to unit mass. Parametric priors are returned unchanged.
/// Throws DomainError if the density has zero mass.
Prior1D normalize(const Prior1D& raw);

inline double density_at(const Prior1D& prior, double theta) noexcept {
  return prior.density(theta);
}

}  // namespace midground
