#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mvlab/audit.hpp"
#include "mvlab/mfunc.hpp"

namespace mvlab {

/// Per-factor series cut-off: stop once |f(p^k)| p^{-k} < tol * |factor|.
inline constexpr double kEulerTol = 1e-18;

/// Factors below this modulus make the product vanish.
inline constexpr double kVanishingFactor = 1e-12;

struct EulerProductResult {
  double x = 0.0;
  Complex value;
  Complex log_value;  // sum of principal logarithms of the factors
  double min_factor_modulus = 1.0;
  long long truncated_terms = 0;  // series terms summed over all factors
  bool vanishing = false;
};

/// sum_{k>=0} f(p^k) p^{-k}, truncated as above or once p^k > 1e18. `terms`
/// receives the number of k >= 1 summed.
Complex euler_factor(const MultiplicativeFn& f, std::uint64_t p, double tol = kEulerTol,
                     int* terms = nullptr);

/// prod_{p <= x} of euler_factor. x <= primes.limit(), tol > 0.
EulerProductResult euler_product(const MultiplicativeFn& f, double x, const PrimeTable& primes,
                                 double tol = kEulerTol);

/// euler_product at ascending checkpoints in one pass.
std::vector<EulerProductResult> euler_products(const MultiplicativeFn& f,
                                               std::span<const double> xs,
                                               const PrimeTable& primes, double tol = kEulerTol);

/// log prod_{p <= x} (1 + f(p)/p), primes only.
Complex log_prime_product(const MultiplicativeFn& f, double x, const PrimeTable& primes);

/// Star-shaped region {r e^{i theta} : r <= w(theta)}, w sampled on a uniform
/// grid over [0, 2 pi) and extended periodically.
class StarRegion {
 public:
  static constexpr std::size_t kSamples = 4096;

  explicit StarRegion(std::vector<double> w);

  static StarRegion disc(double radius, std::size_t samples = kSamples);
  /// Axis-parallel square centred at 0.
  static StarRegion square(double half_side, std::size_t samples = kSamples);
  /// Disc of `radius` cut to |arg z| <= half_angle.
  static StarRegion sector(double radius, double half_angle, std::size_t samples = kSamples);
  static StarRegion from_function(const std::function<double(double)>& w,
                                  std::size_t samples = kSamples);

  const std::vector<double>& samples() const noexcept { return w_; }
  /// w(theta) by linear interpolation between grid angles.
  double radius_at(double theta) const;
  double max_radius() const noexcept { return max_; }

 private:
  std::vector<double> w_;
  double max_ = 0.0;
};

/// (2 pi)^{-1} int w, trapezoidal on the periodic grid.
double average_radius(const StarRegion& region);

bool region_contains(const StarRegion& region, Complex z);

/// e^{-gamma tau} / Gamma(tau) * x / log x * prod_x(lambda).
Complex wirsing_prediction(const MultiplicativeFn& lambda, double x, double tau,
                           const Tables& tables);

/// sum_{p <= x} lambda(p) log p / p, divided by log x. x >= 3.
double estimate_tau(const MultiplicativeFn& lambda, double x, const PrimeTable& primes);

enum class CaseTag { kThm1, kThm3, kThm4CaseI, kThm4CaseII, kSatz11, kSatz122 };

std::string case_name(CaseTag tag);

struct TheoremPrediction {
  CaseTag case_tag = CaseTag::kThm1;
  double x = 0.0;
  Complex predicted;
  Complex reference;  // directly computed sum
  Complex ratio;      // predicted / reference; NaN when reference == 0
  double scale = 0.0;             // size of the dominating sum (G(x) or A(x))
  double normalized_error = 0.0;  // |predicted - reference| / scale
  std::vector<Audit> audits;
};

/// H(x) ~ prod_x(h) / prod_x(g) * G(x), with G, H the harmonic sums.
std::vector<TheoremPrediction> thm1_predict(const FnPair& pair, std::span<const double> xs,
                                            const Tables& tables);
TheoremPrediction thm1_predict(const FnPair& pair, double x, const Tables& tables);

/// B(x) ~ prod_x(h) / prod_x(g) * A(x), with an audit of h(p) in the region
/// and of average_radius(region) < c.
std::vector<TheoremPrediction> thm3_predict(const FnPair& pair, const StarRegion& region,
                                            double c, std::span<const double> xs,
                                            const Tables& tables);

/// B(x) ~ (1 - it)^{-1} x^{-it} prod_x(h n^{it}) / prod_x(g) * A(x).
std::vector<TheoremPrediction> thm4_predict(const FnPair& pair, double t,
                                            std::span<const double> xs, const Tables& tables);

/// Second alternative: no admissible t, so |B(x)| / A(x) should tend to 0.
/// predicted is 0 and normalized_error carries |B(x)| / A(x).
std::vector<TheoremPrediction> thm4_case_ii(const FnPair& pair, std::span<const double> xs,
                                            const Tables& tables);

/// sum lambda(n) against wirsing_prediction.
std::vector<TheoremPrediction> satz11_predict(const MultiplicativeFn& lambda, double tau,
                                              std::span<const double> xs, const Tables& tables);

/// Complex version: sum h(n) against e^{-gamma tau}/Gamma(tau) x/log x prod_x(h),
/// tau the density of the dominant g.
std::vector<TheoremPrediction> satz122_predict(const FnPair& pair, double tau,
                                               std::span<const double> xs,
                                               const Tables& tables);

enum class SeriesClass { kConverging, kDiverging, kInconclusive };

std::string series_class_name(SeriesClass c);

struct DivergenceResult {
  SeriesClass classification = SeriesClass::kInconclusive;
  double slope = 0.0;  // fitted against log log x
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::vector<double> xs;
  std::vector<double> partial_sums;
};

/// Least-squares fit of sum_{p<=x} p^{-1}(g(p) - Re h(p) p^{it}) against
/// log log x along an ascending grid. Converging when |slope| <= 0.05,
/// diverging when slope >= 0.2 and at least 3 standard errors from 0.
/// A heuristic, not a proof.
DivergenceResult divergence_heuristic(const FnPair& pair, double t, std::span<const double> xs,
                                      const PrimeTable& primes);

/// Grid of `points` values equally spaced in log log between 10 and x.
std::vector<double> loglog_grid(double x, int points = 8);

struct LaplaceCheck {
  double s = 0.0;
  Complex series_h;  // sum h(n) n^{-1-s} with tail completion
  Complex series_g;
  Complex euler_h;  // prod_p (sum_k h(p^k) p^{-k(1+s)}) with tail completion
  Complex euler_g;
  Complex series_ratio;
  Complex euler_ratio;
  double relative_gap = 0.0;
};

/// Compares D_h(s)/D_g(s) from Dirichlet series over n <= N with the same
/// ratio built from Euler products over p <= N, at s = 1/log x.
LaplaceCheck laplace_consistency(const FnPair& pair, double x, std::uint64_t n_max,
                                 const Tables& tables);

}  // namespace mvlab
