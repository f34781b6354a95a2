#include "midground/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "midground/baselines.hpp"
#include "midground/cdf_interval.hpp"
#include "midground/errors.hpp"
#include "midground/mean_interval.hpp"
#include "midground/numerics.hpp"

namespace midground {

std::string_view to_string(Case c) noexcept {
  return c == Case::Cdf ? "cdf" : "mean";
}

Case parse_case(std::string_view name) {
  if (name == "cdf") return Case::Cdf;
  if (name == "mean") return Case::Mean;
  throw DomainError("unknown case '" + std::string(name) +
                    "' (expected cdf or mean)");
}

// ---------------------------------------------------------------------------
// Generative model

double truth_theta(const DistributionPrior& dp, Case c, double mu,
                   double sigma) {
  if (c == Case::Cdf) return normal_cdf((dp.threshold - mu) / sigma);
  const double alpha = -dp.x_halfwidth / sigma;
  const double beta = dp.x_halfwidth / sigma;
  auto phi = [](double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  };
  return mu + sigma * (phi(alpha) - phi(beta)) /
                  (normal_cdf(beta) - normal_cdf(alpha));
}

Truth sample_truth(const DistributionPrior& dp, Case c, Rng& rng) {
  double mu = dp.mu_mean + dp.mu_sd * standard_normal(rng);
  if (c == Case::Mean) {
    while (mu < dp.mu_lo || mu > dp.mu_hi) {
      mu = dp.mu_mean + dp.mu_sd * standard_normal(rng);
    }
  }
  const double sigma = uniform01(rng) < 0.5 ? dp.sigmas[0] : dp.sigmas[1];
  return {mu, sigma, truth_theta(dp, c, mu, sigma)};
}

std::vector<double> simulate_data(const DistributionPrior& dp, Case c,
                                  const Truth& truth, int n, Rng& rng) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (double& x : xs) {
    x = truth.mu + truth.sigma * standard_normal(rng);
    if (c == Case::Mean) {
      while (std::abs(x - truth.mu) > dp.x_halfwidth) {
        x = truth.mu + truth.sigma * standard_normal(rng);
      }
    }
  }
  return xs;
}

Prior1D induced_theta_prior(const DistributionPrior& dp, Case c,
                            std::uint64_t seed, std::size_t draws,
                            std::size_t nodes) {
  if (draws == 0 || nodes < 2) {
    throw DomainError("induced_theta_prior: need draws > 0 and nodes >= 2");
  }
  const double lo = c == Case::Cdf ? 0.0 : dp.mu_lo;
  const double hi = c == Case::Cdf ? 1.0 : dp.mu_hi;
  const double h = (hi - lo) / static_cast<double>(nodes - 1);
  std::vector<double> counts(nodes, 0.0);
  Rng rng = make_stream(seed, 0x7e7a);
  for (std::size_t i = 0; i < draws; ++i) {
    const double theta = sample_truth(dp, c, rng).theta;
    // Node i collects [x_i - h/2, x_i + h/2) intersected with [lo, hi].
    const double t = (theta - lo) / h + 0.5;
    const auto bin = static_cast<std::size_t>(
        std::clamp(t, 0.0, static_cast<double>(nodes - 1)));
    counts[bin] += 1.0;
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    const double width = (i == 0 || i + 1 == nodes) ? 0.5 * h : h;
    counts[i] /= static_cast<double>(draws) * width;
  }
  return Prior1D::grid(Grid1D(lo, hi, std::move(counts)));
}

// ---------------------------------------------------------------------------
// Candidates

std::vector<double> default_levels(Case c) {
  if (c == Case::Cdf) return {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  return {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
}

namespace {

int modal_count(const Prior1D& prior, int n) {
  int best = 0;
  double best_mass = -1.0;
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  for (int s = 0; s <= n; ++s) {
    const CdfProblem problem = CdfProblem::make(n, s);
    const double m = integrate(
        [&](double t) {
          return prior.density(t) * binomial_likelihood(problem, t);
        },
        prior.lo(), prior.hi(), prior.kinks(prior.lo(), prior.hi()), opts);
    if (m > best_mass) {
      best_mass = m;
      best = s;
    }
  }
  return best;
}

}  // namespace

std::vector<ValidityCandidate> sweep_candidates(
    Case c, const Prior1D& theta_prior, int n_data,
    std::span<const double> levels) {
  if (n_data <= 0) throw DomainError("sweep_candidates: n_data must be > 0");
  std::vector<ValidityCandidate> out;
  if (c == Case::Cdf) {
    const int s = modal_count(theta_prior, n_data);
    const CdfProblem problem = CdfProblem::make(n_data, s);
    const CdfPosterior posterior(problem, theta_prior);
    const double center = static_cast<double>(s) / n_data;
    const double reach = std::max(center, 1.0 - center);
    for (double p : levels) {
      if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("sweep_candidates: levels must lie in (0, 1)");
      }
      auto mass_at = [&](double w) {
        return posterior.mass(Interval{center - w, center + w}.clipped(0, 1));
      };
      const RootBracket w = find_root_bracketed(
          [&](double x) { return mass_at(x) - p; }, 0.0, reach, 1e-12);
      const double half = w.f_lo >= 0.0 ? w.lo : w.hi;
      const Interval interval =
          Interval{center - half, center + half}.clipped(0.0, 1.0);
      out.push_back({posterior.mass(interval), interval, half, 0.0});
    }
    return out;
  }
  const double center = theta_prior.mode();
  for (double p : levels) {
    const double delta = optimal_delta(p, n_data);
    const MeanProblem problem =
        MeanProblem::make(n_data, center, center, delta);
    const MeanIntervalResult r = solve_halfwidth(problem, theta_prior, p);
    out.push_back({p, r.interval, r.half_width, delta});
  }
  return out;
}

// ---------------------------------------------------------------------------
// ABC rejection sampling

bool holds_with_equality(const ValidityPoint& point, double epsilon) noexcept {
  return std::abs(point.b_hat - point.target_p) <=
         std::max(2.0 * point.std_error, epsilon);
}

bool holds_as_lower_bound(const ValidityPoint& point) noexcept {
  return point.b_hat >= point.target_p - 2.0 * point.std_error;
}

namespace {

struct DrawOutcome {
  bool accepted;
  bool inside;
};

class DrawEvaluator {
 public:
  DrawEvaluator(Case c, const DistributionPrior& dp, const Prior1D& prior,
                const ValidityCandidate& candidate, int n_data,
                double epsilon)
      : case_(c),
        dp_(dp),
        prior_(prior),
        candidate_(candidate),
        n_data_(n_data),
        epsilon_(epsilon) {
    if (c == Case::Cdf) {
      // The CDF algorithm sees only the count, so tabulate A for every count.
      belief_by_count_.resize(static_cast<std::size_t>(n_data) + 1);
      for (int s = 0; s <= n_data; ++s) {
        belief_by_count_[static_cast<std::size_t>(s)] = belief(
            CdfProblem::make(n_data, s, dp.threshold), prior,
            candidate.interval);
      }
    }
  }

  DrawOutcome operator()(Rng& rng) const {
    const Truth truth = sample_truth(dp_, case_, rng);
    const std::vector<double> xs =
        simulate_data(dp_, case_, truth, n_data_, rng);
    if (case_ == Case::Cdf) {
      const CdfProblem problem = CdfProblem::from_samples(xs, dp_.threshold);
      const double a =
          belief_by_count_[static_cast<std::size_t>(problem.count_below)];
      const bool accepted = std::abs(a - candidate_.p) <= epsilon_;
      return {accepted, candidate_.interval.contains(truth.theta)};
    }
    const double mean =
        std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n_data_);
    const double s = randomize_statistic(mean, candidate_.delta, rng);
    const MeanProblem problem = MeanProblem::make(
        n_data_, std::clamp(mean, 0.0, 1.0), s, candidate_.delta);
    const double a = belief(problem, prior_, candidate_.half_width);
    const bool accepted = std::abs(a - candidate_.p) <= epsilon_;
    const Interval interval{s - candidate_.half_width,
                            s + candidate_.half_width};
    return {accepted, interval.contains(truth.theta)};
  }

 private:
  Case case_;
  const DistributionPrior& dp_;
  const Prior1D& prior_;
  const ValidityCandidate& candidate_;
  int n_data_;
  double epsilon_;
  std::vector<double> belief_by_count_;
};

// Runs `count` jobs on up to `threads` workers; rethrows the first failure.
template <class Job>
void run_parallel(std::size_t count, unsigned threads, Job&& job) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const unsigned used =
      static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < used; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<ValidityPoint> abc_validity_curve(
    Case c, const DistributionPrior& dp, const Prior1D& theta_prior,
    std::span<const ValidityCandidate> candidates, int n_data,
    const AbcSettings& settings, std::uint64_t seed) {
  if (!(settings.epsilon > 0.0)) {
    throw DomainError("abc: epsilon must be positive");
  }
  if (settings.accepted_target < 100) {
    throw DomainError("abc: accepted_target must be at least 100");
  }
  if (settings.batch_size == 0) throw DomainError("abc: batch_size is zero");
  const unsigned threads =
      settings.threads != 0 ? settings.threads
                            : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t wave = 2 * static_cast<std::size_t>(threads);

  std::vector<ValidityPoint> points;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const ValidityCandidate& candidate = candidates[k];
    if (!(candidate.p > 0.0 && candidate.p <= 1.0)) {
      throw DomainError("abc: candidate level must lie in (0, 1]");
    }
    const DrawEvaluator evaluate(c, dp, theta_prior, candidate, n_data,
                                 settings.epsilon);
    std::size_t accepted = 0;
    std::size_t inside = 0;
    std::size_t attempts = 0;
    std::size_t next_batch = 0;
    bool done = false;
    while (!done) {
      std::vector<std::vector<DrawOutcome>> results(wave);
      run_parallel(wave, threads, [&](std::size_t w) {
        Rng rng = make_stream(seed, k, next_batch + w);
        auto& out = results[w];
        out.reserve(settings.batch_size);
        for (std::size_t i = 0; i < settings.batch_size; ++i) {
          out.push_back(evaluate(rng));
        }
      });
      next_batch += wave;
      // Consume draws in global order so the outcome is thread-independent.
      for (const auto& batch : results) {
        for (const DrawOutcome& o : batch) {
          ++attempts;
          if (o.accepted) {
            ++accepted;
            if (o.inside) ++inside;
          }
          if (attempts == settings.max_attempts &&
              static_cast<double>(accepted) <
                  settings.starvation_floor *
                      static_cast<double>(attempts)) {
            throw AcceptanceStarvationError(
                "abc: acceptance rate below floor for level " +
                std::to_string(candidate.p));
          }
          if (accepted == settings.accepted_target) {
            done = true;
            break;
          }
        }
        if (done) break;
      }
    }
    const double b_hat =
        static_cast<double>(inside) / static_cast<double>(accepted);
    points.push_back(
        {candidate.p, accepted, attempts, b_hat,
         std::sqrt(b_hat * (1.0 - b_hat) / static_cast<double>(accepted))});
  }
  return points;
}

// ---------------------------------------------------------------------------
// Widths

std::vector<WidthRow> width_vs_n(Case c, double p, std::span<const int> n_list,
                                 const Prior1D& prior) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("width_vs_n: p outside (0, 1)");
  std::vector<WidthRow> rows;
  for (int n : n_list) {
    if (n <= 0) throw DomainError("width_vs_n: n must be positive");
    double proposed = 0.0;
    double baseline = 0.0;
    if (c == Case::Cdf) {
      const int s = static_cast<int>(std::lround(0.4 * n));
      proposed =
          smallest_interval(CdfProblem::make(n, s), prior, p).interval.width();
      baseline = clopper_pearson(n, s, p).width();
    } else {
      constexpr double kPinned = 0.4;
      const MeanProblem problem =
          MeanProblem::make(n, kPinned, kPinned, optimal_delta(p, n));
      proposed = solve_halfwidth(problem, prior, p).interval.width();
      baseline = hoeffding_interval(kPinned, n, p).width();
    }
    rows.push_back({n, proposed, baseline, proposed / baseline});
  }
  return rows;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

void write_validity_csv(std::ostream& out, Case c,
                        std::span<const ValidityPoint> points) {
  out << "case,p,accepted,b_hat,stderr\n";
  for (const ValidityPoint& v : points) {
    out << to_string(c) << ',' << fmt(v.target_p) << ',' << v.accepted_count
        << ',' << fmt(v.b_hat) << ',' << fmt(v.std_error) << '\n';
  }
}

void write_width_csv(std::ostream& out, Case c, std::span<const WidthRow> rows) {
  out << "case,n,width_proposed,width_baseline,ratio\n";
  for (const WidthRow& r : rows) {
    out << to_string(c) << ',' << r.n << ',' << fmt(r.width_proposed) << ','
        << fmt(r.width_baseline) << ',' << fmt(r.ratio) << '\n';
  }
}

}  // namespace midground
