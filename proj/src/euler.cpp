#include "mvlab/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "detail/blocked_sum.hpp"
#include "mvlab/compensated.hpp"
#include "mvlab/summatory.hpp"

namespace mvlab {

namespace {

constexpr double kMaxPrimePower = 1e18;
constexpr std::size_t kPrimeBlock = 4096;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Factor with p^{-k sigma} weights; sigma = 1 is the plain Euler factor.
Complex weighted_factor(const MultiplicativeFn& f, std::uint64_t p, double sigma, double tol,
                        int* terms) {
  const auto pd = static_cast<double>(p);
  const double step = std::pow(pd, -sigma);
  Complex factor{1.0, 0.0};
  double power = 1.0;
  double weight = 1.0;
  int k = 1;
  for (;; ++k) {
    power *= pd;
    if (power > kMaxPrimePower) break;
    weight *= step;
    const Complex term = f(p, k) * weight;
    factor += term;
    if (k >= 3 && std::abs(term) < tol * std::abs(factor)) {
      ++k;
      break;
    }
  }
  if (terms != nullptr) *terms = k - 1;
  return factor;
}

std::vector<std::size_t> prime_ends(std::span<const double> xs, const PrimeTable& primes,
                                    const char* who) {
  std::vector<std::size_t> ends;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && xs[i] < xs[i - 1]) {
      throw DomainError(std::string(who) + ": checkpoints must be ascending");
    }
    if (!(xs[i] <= static_cast<double>(primes.limit()))) {
      throw DomainError(std::string(who) + ": x = " + format_number(xs[i]) +
                        " beyond prime table limit " + std::to_string(primes.limit()));
    }
    ends.push_back(primes.count_upto(xs[i]));
  }
  return ends;
}

struct LogProduct {
  CompensatedComplexSum log;
  double min_modulus = std::numeric_limits<double>::infinity();
  long long terms = 0;
  bool vanishing = false;

  void add(Complex factor, int count) {
    const double m = std::abs(factor);
    min_modulus = std::min(min_modulus, m);
    terms += count;
    if (m < kVanishingFactor) {
      vanishing = true;
    } else {
      log.add(std::log(factor));
    }
  }

  void merge(const LogProduct& other) {
    log.merge(other.log);
    min_modulus = std::min(min_modulus, other.min_modulus);
    terms += other.terms;
    vanishing = vanishing || other.vanishing;
  }
};

// Products over the first ends[i] primes, block-parallel with ordered merge.
template <typename Factor>
std::vector<LogProduct> ordered_log_products(const std::vector<std::size_t>& ends,
                                             const PrimeTable& primes, const Factor& factor) {
  std::vector<LogProduct> out(ends.size());
  if (ends.empty() || ends.back() == 0) return out;
  const std::size_t top = ends.back();
  const std::size_t blocks = (top + kPrimeBlock - 1) / kPrimeBlock;
  struct Block {
    LogProduct total;
    std::vector<std::pair<std::size_t, LogProduct>> marks;
  };
  std::vector<Block> results(blocks);
  detail::for_each_block(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kPrimeBlock;
    const std::size_t hi = std::min(top, lo + kPrimeBlock);
    auto next = static_cast<std::size_t>(std::upper_bound(ends.begin(), ends.end(), lo) -
                                         ends.begin());
    Block& r = results[b];
    for (std::size_t i = lo; i < hi; ++i) {
      int terms = 0;
      const Complex v = factor(primes[i], &terms);
      r.total.add(v, terms);
      while (next < ends.size() && ends[next] == i + 1) r.marks.emplace_back(next++, r.total);
    }
  });
  LogProduct running;
  for (const Block& r : results) {
    for (const auto& [index, partial] : r.marks) {
      LogProduct at = running;
      at.merge(partial);
      out[index] = at;
    }
    running.merge(r.total);
  }
  return out;
}

EulerProductResult to_result(double x, const LogProduct& lp) {
  EulerProductResult r;
  r.x = x;
  r.truncated_terms = lp.terms;
  r.min_factor_modulus = std::isinf(lp.min_modulus) ? 1.0 : lp.min_modulus;
  r.vanishing = lp.vanishing;
  if (lp.vanishing) {
    r.log_value = {-std::numeric_limits<double>::infinity(), 0.0};
    r.value = {0.0, 0.0};
  } else {
    r.log_value = lp.log.value();
    r.value = std::exp(r.log_value);
  }
  return r;
}

// exp(log_h - log_g), 0 when the h-product vanishes.
Complex product_ratio(const EulerProductResult& h, const EulerProductResult& g) {
  if (h.vanishing) return {0.0, 0.0};
  return std::exp(h.log_value - g.log_value);
}

TheoremPrediction make_prediction(CaseTag tag, double x, Complex predicted, Complex reference,
                                  double scale) {
  TheoremPrediction p;
  p.case_tag = tag;
  p.x = x;
  p.predicted = predicted;
  p.reference = reference;
  if (predicted == reference) {
    p.ratio = {1.0, 0.0};
  } else if (reference == Complex{}) {
    p.ratio = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  } else {
    p.ratio = predicted / reference;
  }
  p.scale = scale;
  p.normalized_error = scale > 0.0 ? std::abs(predicted - reference) / scale : 0.0;
  return p;
}

void require_vector(std::span<const double> xs, const char* who) {
  for (double x : xs) {
    if (!(x >= 2.0)) throw DomainError(std::string(who) + ": x must be >= 2");
  }
}

std::vector<Audit> pair_audits(const FnPair& pair, const Tables& tables) {
  std::vector<Audit> audits;
  const DominationAudit dom = audit_domination(pair, tables.primes);
  audits.push_back({"|h(p^k)| <= g(p^k)", dom.ok(),
                    std::to_string(dom.violations) + " of " + std::to_string(dom.checked) +
                        " sampled prime powers violate; worst excess " +
                        format_number(dom.worst_excess)});
  const std::size_t neg = audit_nonneg(pair.g, tables.primes);
  audits.push_back({"g(p^k) >= 0", pair.g.nonneg() && neg == 0,
                    pair.g.nonneg() ? std::to_string(neg) + " sampled negative values"
                                    : "g not flagged non-negative"});
  return audits;
}

Audit divergence_audit(const FnPair& pair, double t, double x, const Tables& tables) {
  const auto grid = loglog_grid(x);
  const DivergenceResult d = divergence_heuristic(pair, t, grid, tables.primes);
  std::string detail = series_class_name(d.classification) + ", slope " +
                       format_number(d.slope) + " against log log x";
  if (d.classification == SeriesClass::kDiverging) {
    detail += "; the product ratio tends to 0 (degenerate case)";
  }
  // informational: the statement covers both alternatives
  return {"sum_p p^{-1}(g(p) - Re h(p) p^{it}) converges or diverges", true, detail};
}

double e1(double z) { return -std::expint(-z); }

}  // namespace

Complex euler_factor(const MultiplicativeFn& f, std::uint64_t p, double tol, int* terms) {
  return weighted_factor(f, p, 1.0, tol, terms);
}

std::vector<EulerProductResult> euler_products(const MultiplicativeFn& f,
                                               std::span<const double> xs,
                                               const PrimeTable& primes, double tol) {
  if (!(tol > 0.0)) throw DomainError("euler_product: tol must be positive");
  const auto ends = prime_ends(xs, primes, "euler_product");
  const auto logs = ordered_log_products(ends, primes, [&](std::uint64_t p, int* terms) {
    return weighted_factor(f, p, 1.0, tol, terms);
  });
  std::vector<EulerProductResult> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(to_result(xs[i], logs[i]));
  return out;
}

EulerProductResult euler_product(const MultiplicativeFn& f, double x, const PrimeTable& primes,
                                 double tol) {
  const double xs[1] = {x};
  return euler_products(f, xs, primes, tol).front();
}

Complex log_prime_product(const MultiplicativeFn& f, double x, const PrimeTable& primes) {
  const double xs[1] = {x};
  const auto ends = prime_ends(xs, primes, "log_prime_product");
  const auto logs = ordered_log_products(ends, primes, [&](std::uint64_t p, int* terms) {
    *terms = 1;
    return Complex{1.0, 0.0} + f(p, 1) / static_cast<double>(p);
  });
  if (logs.front().vanishing) return {-std::numeric_limits<double>::infinity(), 0.0};
  return logs.front().log.value();
}

StarRegion::StarRegion(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw DomainError("StarRegion needs at least one sample");
  for (double v : w_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("StarRegion radii must be finite and non-negative");
    }
    max_ = std::max(max_, v);
  }
}

StarRegion StarRegion::from_function(const std::function<double(double)>& w,
                                     std::size_t samples) {
  if (samples == 0) throw DomainError("StarRegion needs at least one sample");
  std::vector<double> v(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    v[i] = w(kTwoPi * static_cast<double>(i) / static_cast<double>(samples));
  }
  return StarRegion(std::move(v));
}

StarRegion StarRegion::disc(double radius, std::size_t samples) {
  return from_function([radius](double) { return radius; }, samples);
}

StarRegion StarRegion::square(double half_side, std::size_t samples) {
  return from_function(
      [half_side](double theta) {
        return half_side / std::max(std::abs(std::cos(theta)), std::abs(std::sin(theta)));
      },
      samples);
}

StarRegion StarRegion::sector(double radius, double half_angle, std::size_t samples) {
  return from_function(
      [radius, half_angle](double theta) {
        const double from_axis = std::min(theta, kTwoPi - theta);
        return from_axis <= half_angle ? radius : 0.0;
      },
      samples);
}

double StarRegion::radius_at(double theta) const {
  const auto n = static_cast<double>(w_.size());
  double pos = std::fmod(theta, kTwoPi) / kTwoPi * n;
  if (pos < 0.0) pos += n;
  const double base = std::floor(pos);
  const double frac = pos - base;
  const auto i = static_cast<std::size_t>(base) % w_.size();
  const std::size_t j = (i + 1) % w_.size();
  return w_[i] + frac * (w_[j] - w_[i]);
}

double average_radius(const StarRegion& region) {
  // the trapezoidal rule on a periodic grid is the sample mean
  CompensatedSum sum;
  for (double v : region.samples()) sum.add(v);
  return sum.value() / static_cast<double>(region.samples().size());
}

bool region_contains(const StarRegion& region, Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return true;
  if (r > region.max_radius() * (1.0 + 1e-12)) return false;
  return r <= region.radius_at(std::arg(z)) * (1.0 + 1e-12);
}

double estimate_tau(const MultiplicativeFn& lambda, double x, const PrimeTable& primes) {
  if (!(x >= 3.0)) throw DomainError("estimate_tau: x must be >= 3");
  return prime_sum_table(lambda, 0.0, x, primes).log_weighted.real() / std::log(x);
}

namespace {

double wirsing_constant(double tau) {
  return std::exp(-std::numbers::egamma * tau) / std::tgamma(tau);
}

}  // namespace

Complex wirsing_prediction(const MultiplicativeFn& lambda, double x, double tau,
                           const Tables& tables) {
  if (!(tau > 0.0)) throw DomainError("wirsing_prediction: tau must be positive");
  if (!(x >= 2.0)) throw DomainError("wirsing_prediction: x must be >= 2");
  const EulerProductResult prod = euler_product(lambda, x, tables.primes);
  return wirsing_constant(tau) * x / std::log(x) * prod.value;
}

std::string case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::kThm1: return "thm1";
    case CaseTag::kThm3: return "thm3";
    case CaseTag::kThm4CaseI: return "thm4_case_i";
    case CaseTag::kThm4CaseII: return "thm4_case_ii";
    case CaseTag::kSatz11: return "satz11";
    case CaseTag::kSatz122: return "satz122";
  }
  return "unknown";
}

std::vector<TheoremPrediction> thm1_predict(const FnPair& pair, std::span<const double> xs,
                                            const Tables& tables) {
  require_vector(xs, "thm1_predict");
  const auto prod_h = euler_products(pair.h, xs, tables.primes);
  const auto prod_g = euler_products(pair.g, xs, tables.primes);
  for (const auto& pg : prod_g) {
    if (pg.vanishing) {
      throw DomainError("thm1_predict: an Euler factor of g vanishes below x = " +
                        format_number(pg.x));
    }
  }
  const auto sum_h = summatory_table(pair.h, xs, tables.factors);
  const auto sum_g = summatory_table(pair.g, xs, tables.factors);
  std::vector<Audit> audits = pair_audits(pair, tables);
  if (!xs.empty()) audits.push_back(divergence_audit(pair, 0.0, xs.back(), tables));

  std::vector<TheoremPrediction> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Complex predicted = product_ratio(prod_h[i], prod_g[i]) * sum_g[i].harmonic;
    out.push_back(make_prediction(CaseTag::kThm1, xs[i], predicted, sum_h[i].harmonic,
                                  std::abs(sum_g[i].harmonic)));
    out.back().audits = audits;
  }
  return out;
}

TheoremPrediction thm1_predict(const FnPair& pair, double x, const Tables& tables) {
  const double xs[1] = {x};
  return thm1_predict(pair, xs, tables).front();
}

std::vector<TheoremPrediction> thm3_predict(const FnPair& pair, const StarRegion& region,
                                            double c, std::span<const double> xs,
                                            const Tables& tables) {
  require_vector(xs, "thm3_predict");
  const auto prod_h = euler_products(pair.h, xs, tables.primes);
  const auto prod_g = euler_products(pair.g, xs, tables.primes);
  const auto sum_h = summatory_table(pair.h, xs, tables.factors);
  const auto sum_g = summatory_table(pair.g, xs, tables.factors);

  std::vector<Audit> audits = pair_audits(pair, tables);
  const double avg = average_radius(region);
  audits.push_back({"average radius of the region < c", avg < c,
                    "average radius " + format_number(avg) + ", c = " + format_number(c)});
  if (!xs.empty()) {
    std::size_t outside = 0;
    const std::size_t count = tables.primes.count_upto(xs.back());
    for (std::size_t i = 0; i < count; ++i) {
      if (!region_contains(region, pair.h(tables.primes[i], 1))) ++outside;
    }
    audits.push_back({"h(p) lies in the region for every prime p", outside == 0,
                      std::to_string(outside) + " of " + std::to_string(count) +
                          " primes outside"});
  }

  std::vector<TheoremPrediction> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (prod_g[i].vanishing) throw DomainError("thm3_predict: an Euler factor of g vanishes");
    const Complex predicted = product_ratio(prod_h[i], prod_g[i]) * sum_g[i].value;
    out.push_back(make_prediction(CaseTag::kThm3, xs[i], predicted, sum_h[i].value,
                                  std::abs(sum_g[i].value)));
    out.back().audits = audits;
  }
  return out;
}

std::vector<TheoremPrediction> thm4_predict(const FnPair& pair, double t,
                                            std::span<const double> xs, const Tables& tables) {
  require_vector(xs, "thm4_predict");
  const MultiplicativeFn shifted = twist(pair.h, t);
  const auto prod_h = euler_products(shifted, xs, tables.primes);
  const auto prod_g = euler_products(pair.g, xs, tables.primes);
  const auto sum_h = summatory_table(pair.h, xs, tables.factors);
  const auto sum_g = summatory_table(pair.g, xs, tables.factors);
  std::vector<Audit> audits = pair_audits(pair, tables);
  if (!xs.empty()) audits.push_back(divergence_audit(pair, t, xs.back(), tables));

  const Complex one_minus_it{1.0, -t};
  std::vector<TheoremPrediction> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (prod_g[i].vanishing) throw DomainError("thm4_predict: an Euler factor of g vanishes");
    const Complex x_power = std::polar(1.0, -t * std::log(xs[i]));
    const Complex predicted =
        x_power / one_minus_it * product_ratio(prod_h[i], prod_g[i]) * sum_g[i].value;
    out.push_back(make_prediction(CaseTag::kThm4CaseI, xs[i], predicted, sum_h[i].value,
                                  std::abs(sum_g[i].value)));
    out.back().audits = audits;
  }
  return out;
}

std::vector<TheoremPrediction> thm4_case_ii(const FnPair& pair, std::span<const double> xs,
                                            const Tables& tables) {
  require_vector(xs, "thm4_case_ii");
  const auto sum_h = summatory_table(pair.h, xs, tables.factors);
  const auto sum_g = summatory_table(pair.g, xs, tables.factors);
  const std::vector<Audit> audits = pair_audits(pair, tables);
  std::vector<TheoremPrediction> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back(make_prediction(CaseTag::kThm4CaseII, xs[i], {0.0, 0.0}, sum_h[i].value,
                                  std::abs(sum_g[i].value)));
    out.back().audits = audits;
  }
  return out;
}

std::vector<TheoremPrediction> satz11_predict(const MultiplicativeFn& lambda, double tau,
                                              std::span<const double> xs,
                                              const Tables& tables) {
  require_vector(xs, "satz11_predict");
  if (!(tau > 0.0)) throw DomainError("satz11_predict: tau must be positive");
  const auto prod = euler_products(lambda, xs, tables.primes);
  const auto sums = summatory_table(lambda, xs, tables.factors);
  std::vector<TheoremPrediction> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const Complex predicted = wirsing_constant(tau) * x / std::log(x) * prod[i].value;
    out.push_back(make_prediction(CaseTag::kSatz11, x, predicted, sums[i].value,
                                  std::abs(sums[i].value)));
    const std::size_t neg = audit_nonneg(lambda, tables.primes);
    out.back().audits.push_back({"lambda(p^k) >= 0", lambda.nonneg() && neg == 0,
                                 std::to_string(neg) + " sampled negative values"});
    if (x >= 3.0) {
      const double est = estimate_tau(lambda, x, tables.primes);
      out.back().audits.push_back(
          {"sum_{p<=x} lambda(p) log p / p ~ tau log x",
           std::abs(est - tau) <= 0.1 * std::max(1.0, tau),
           "measured " + format_number(est) + " against tau = " + format_number(tau)});
    }
  }
  return out;
}

std::vector<TheoremPrediction> satz122_predict(const FnPair& pair, double tau,
                                               std::span<const double> xs,
                                               const Tables& tables) {
  require_vector(xs, "satz122_predict");
  if (!(tau > 0.0)) throw DomainError("satz122_predict: tau must be positive");
  const auto prod_h = euler_products(pair.h, xs, tables.primes);
  const auto sum_h = summatory_table(pair.h, xs, tables.factors);
  const auto sum_g = summatory_table(pair.g, xs, tables.factors);
  const std::vector<Audit> audits = pair_audits(pair, tables);
  std::vector<TheoremPrediction> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const Complex predicted = wirsing_constant(tau) * x / std::log(x) * prod_h[i].value;
    out.push_back(make_prediction(CaseTag::kSatz122, x, predicted, sum_h[i].value,
                                  std::abs(sum_g[i].value)));
    out.back().audits = audits;
  }
  return out;
}

std::string series_class_name(SeriesClass c) {
  switch (c) {
    case SeriesClass::kConverging: return "converging";
    case SeriesClass::kDiverging: return "diverging";
    case SeriesClass::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

std::vector<double> loglog_grid(double x, int points) {
  if (!(x > 10.0) || points < 2) throw DomainError("loglog_grid: need x > 10 and >= 2 points");
  const double lo = std::log(std::log(10.0));
  const double hi = std::log(std::log(x));
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double u = lo + (hi - lo) * i / (points - 1);
    out.push_back(i + 1 == points ? x : std::exp(std::exp(u)));
  }
  return out;
}

DivergenceResult divergence_heuristic(const FnPair& pair, double t, std::span<const double> xs,
                                      const PrimeTable& primes) {
  for (double x : xs) {
    if (!(x >= 3.0)) throw DomainError("divergence_heuristic: grid points must be >= 3");
  }
  const auto ends = prime_ends(xs, primes, "divergence_heuristic");
  DivergenceResult r;
  r.xs.assign(xs.begin(), xs.end());
  CompensatedSum partial;
  std::size_t i = 0;
  for (std::size_t j = 0; j < ends.size(); ++j) {
    for (; i < ends[j]; ++i) {
      const std::uint64_t p = primes[i];
      const auto pd = static_cast<double>(p);
      const Complex hp = pair.h(p, 1) * std::polar(1.0, t * std::log(pd));
      partial.add((pair.g(p, 1).real() - hp.real()) / pd);
    }
    r.partial_sums.push_back(partial.value());
  }

  const std::size_t n = r.xs.size();
  bool all_zero = true;
  for (double s : r.partial_sums) all_zero = all_zero && s == 0.0;
  if (all_zero) {
    r.classification = SeriesClass::kConverging;
    return r;
  }
  if (n < 3) return r;
  double mu = 0.0;
  double mv = 0.0;
  std::vector<double> u(n);
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = std::log(std::log(r.xs[k]));
    mu += u[k];
    mv += r.partial_sums[k];
  }
  mu /= static_cast<double>(n);
  mv /= static_cast<double>(n);
  double suu = 0.0;
  double suv = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    suu += (u[k] - mu) * (u[k] - mu);
    suv += (u[k] - mu) * (r.partial_sums[k] - mv);
  }
  if (suu == 0.0) return r;
  r.slope = suv / suu;
  r.intercept = mv - r.slope * mu;
  double rss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = r.partial_sums[k] - (r.intercept + r.slope * u[k]);
    rss += e * e;
  }
  r.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / suu);
  if (std::abs(r.slope) <= 0.05) {
    r.classification = SeriesClass::kConverging;
  } else if (r.slope >= 0.2 && r.slope >= 3.0 * r.slope_stderr) {
    r.classification = SeriesClass::kDiverging;
  }
  return r;
}

LaplaceCheck laplace_consistency(const FnPair& pair, double x, std::uint64_t n_max,
                                 const Tables& tables) {
  if (!(x > 1.0)) throw DomainError("laplace_consistency: x must exceed 1");
  if (n_max < 4 || n_max > tables.factors.limit() || n_max > tables.primes.limit()) {
    throw DomainError("laplace_consistency: N must lie in [4, table limit]");
  }
  LaplaceCheck r;
  r.s = 1.0 / std::log(x);
  const double s = r.s;
  const auto nd = static_cast<double>(n_max);
  const double half = std::floor(nd / 2.0);

  // Dirichlet series, tail sum_{n>N} f(n) n^{-1-s} ~ mu N^{-s}/s, mu the
  // local mean of f near N
  auto series = [&](const MultiplicativeFn& f) {
    const double xs[2] = {half, nd};
    const auto sums = summatory_table(f, xs, tables.factors);
    const Complex mean = (sums[1].value - sums[0].value) / (nd - half);
    return dirichlet_series_partial(f, s, n_max, tables.factors) + mean * std::pow(nd, -s) / s;
  };

  // Euler product, tail sum_{p>N} f(p) p^{-1-s} ~ delta E1(s log N), delta
  // the mean of f(p) over primes near N
  auto euler = [&](const MultiplicativeFn& f) {
    const double xs[1] = {nd};
    const auto ends = prime_ends(xs, tables.primes, "laplace_consistency");
    const auto logs = ordered_log_products(ends, tables.primes, [&](std::uint64_t p, int* terms) {
      return weighted_factor(f, p, 1.0 + s, kEulerTol, terms);
    });
    CompensatedComplexSum near;
    const std::size_t lo = tables.primes.count_upto(half);
    for (std::size_t i = lo; i < ends[0]; ++i) near.add(f(tables.primes[i], 1));
    const std::size_t count = ends[0] - lo;
    const Complex density = count > 0 ? near.value() / static_cast<double>(count) : Complex{};
    if (logs[0].vanishing) return Complex{0.0, 0.0};
    return std::exp(logs[0].log.value() + density * e1(s * std::log(nd)));
  };

  r.series_h = series(pair.h);
  r.series_g = series(pair.g);
  r.euler_h = euler(pair.h);
  r.euler_g = euler(pair.g);
  r.series_ratio = r.series_h / r.series_g;
  r.euler_ratio = r.euler_h / r.euler_g;
  r.relative_gap = std::abs(r.series_ratio - r.euler_ratio) / std::abs(r.euler_ratio);
  return r;
}

}  // namespace mvlab
