#include "mvlab/halasz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mvlab/compensated.hpp"
#include "mvlab/euler.hpp"
#include "mvlab/simd/kernels.hpp"
#include "mvlab/summatory.hpp"

namespace mvlab {

namespace {

// Structure-of-arrays copy of the non-zero summands, primes ascending.
struct Terms {
  std::vector<double> weight;
  std::vector<double> phase;
  std::vector<double> log_p;

  simd::TrigTerms view() const { return {weight, phase, log_p}; }
};

Terms collect_terms(const MultiplicativeFn& g, const HalaszParams& params,
                    const PrimeTable& primes) {
  if (params.x > static_cast<double>(primes.limit())) {
    throw DomainError("lambda_min: x = " + format_number(params.x) +
                      " beyond prime table limit " + std::to_string(primes.limit()));
  }
  Terms terms;
  const std::size_t end = primes.count_upto(params.x);
  for (std::size_t i = primes.count_upto(params.Y); i < end; ++i) {
    const std::uint64_t p = primes[i];
    const Complex v = g(p, 1);
    const double modulus = std::abs(v);
    if (modulus == 0.0) continue;
    const auto pd = static_cast<double>(p);
    terms.weight.push_back(modulus / pd);
    terms.phase.push_back(std::arg(v));
    terms.log_p.push_back(std::log(pd));
  }
  return terms;
}

struct Cell {
  double lower_bound;
  double center;
  double radius;
  std::size_t level;
  double value;  // prefix objective at the centre
  double slope;

  bool operator>(const Cell& other) const {
    if (lower_bound != other.lower_bound) return lower_bound > other.lower_bound;
    return center > other.center;
  }
};

class Search {
 public:
  explicit Search(const Terms& terms) : terms_(terms.view()) {
    const std::size_t n = terms_.size();
    for (std::size_t size = 256; size < n; size *= 8) ends_.push_back(size);
    ends_.push_back(n);
    CompensatedSum lip;
    CompensatedSum curv;
    CompensatedSum total;
    std::size_t i = 0;
    for (std::size_t end : ends_) {
      for (; i < end; ++i) {
        lip.add(terms.weight[i] * terms.log_p[i]);
        curv.add(terms.weight[i] * terms.log_p[i] * terms.log_p[i]);
        total.add(terms.weight[i]);
      }
      lipschitz_.push_back(lip.value());
      curvature_.push_back(curv.value());
      prefix_weight_.push_back(total.value());
    }
    for (double w : prefix_weight_) tail_weight_.push_back(total.value() - w);
  }

  std::size_t top() const noexcept { return ends_.size() - 1; }

  simd::TrigSum full(double t) const { return simd::trig_objective(terms_, t); }

  // Evaluates the cell at `level`, reusing the prefix already summed.
  void evaluate(Cell& cell, std::size_t from_level, std::size_t level) const {
    const std::size_t begin = from_level == kFresh ? 0 : ends_[from_level];
    if (from_level == kFresh) {
      cell.value = 0.0;
      cell.slope = 0.0;
    }
    const simd::TrigSum part =
        simd::trig_objective(terms_.slice(begin, ends_[level]), cell.center);
    cell.value += part.value;
    cell.slope += part.slope;
    cell.level = level;
    cell.lower_bound = cell.value - variation(cell);
  }

  double variation(const Cell& cell) const {
    const double r = cell.radius;
    return std::min(lipschitz_[cell.level] * r,
                    std::abs(cell.slope) * r + 0.5 * curvature_[cell.level] * r * r);
  }

  // Smallest level whose expected truncation loss is well below the slack.
  std::size_t raise_to(const Cell& cell) const {
    const double slack = variation(cell);
    std::size_t level = cell.level + 1;
    while (level < top() && tail_weight_[level] > 0.5 * slack) ++level;
    return level;
  }

  double tail_weight(std::size_t level) const { return tail_weight_[level]; }

  static constexpr std::size_t kFresh = std::numeric_limits<std::size_t>::max();

 private:
  simd::TrigTerms terms_;
  std::vector<std::size_t> ends_;
  std::vector<double> lipschitz_;
  std::vector<double> curvature_;
  std::vector<double> prefix_weight_;
  std::vector<double> tail_weight_;
};

double golden_section(const Search& search, double a, double b, double& t_best) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = search.full(c).value;
  double fd = search.full(d).value;
  for (int iter = 0; iter < 40; ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = search.full(c).value;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = search.full(d).value;
    }
  }
  if (fc <= fd) {
    t_best = c;
    return fc;
  }
  t_best = d;
  return fd;
}

}  // namespace

void HalaszParams::validate() const {
  if (!(Y >= 1.5 && Y <= x)) throw DomainError("Halasz parameters need 3/2 <= Y <= x");
  if (!(T > 0.0)) throw DomainError("Halasz parameters need T > 0");
  if (!(c > 0.0 && c <= beta)) throw DomainError("Halasz parameters need 0 < c <= beta");
}

double lambda_objective(const MultiplicativeFn& g, const HalaszParams& params,
                        const PrimeTable& primes, double t) {
  params.validate();
  const Terms terms = collect_terms(g, params, primes);
  return simd::trig_objective(terms.view(), t).value;
}

LambdaMin lambda_min(const MultiplicativeFn& g, const HalaszParams& params,
                     const PrimeTable& primes, double tol) {
  params.validate();
  if (!(tol > 0.0)) throw DomainError("lambda_min: tol must be positive");
  const Terms terms = collect_terms(g, params, primes);
  LambdaMin out;
  if (terms.weight.empty()) return out;

  const Search search(terms);
  double best = search.full(0.0).value;
  double t_best = 0.0;
  double best_radius = params.T;

  std::priority_queue<Cell, std::vector<Cell>, std::greater<>> queue;
  Cell root{0.0, 0.0, params.T, 0, 0.0, 0.0};
  search.evaluate(root, Search::kFresh, 0);
  queue.push(root);

  constexpr double kMinRadius = 1e-12;
  while (!queue.empty()) {
    Cell cell = queue.top();
    if (cell.lower_bound >= best - 0.5 * tol) break;
    queue.pop();
    ++out.cells;

    if (cell.level == search.top() && cell.value < best) {
      best = cell.value;
      t_best = cell.center;
      best_radius = cell.radius;
    }
    const double slack = search.variation(cell);
    if (cell.level < search.top() && slack < search.tail_weight(cell.level)) {
      search.evaluate(cell, cell.level, search.raise_to(cell));
      if (cell.level == search.top() && cell.value < best) {
        best = cell.value;
        t_best = cell.center;
        best_radius = cell.radius;
      }
      queue.push(cell);
      continue;
    }
    if (cell.radius < kMinRadius) continue;
    for (int side = -1; side <= 1; side += 2) {
      Cell child{0.0, cell.center + side * cell.radius / 2, cell.radius / 2, 0, 0.0, 0.0};
      search.evaluate(child, Search::kFresh, cell.level);
      if (child.level == search.top() && child.value < best) {
        best = child.value;
        t_best = child.center;
        best_radius = child.radius;
      }
      if (child.lower_bound < best - 0.5 * tol) queue.push(child);
    }
  }

  double t_refined = t_best;
  const double lo = std::max(-params.T, t_best - best_radius);
  const double hi = std::min(params.T, t_best + best_radius);
  const double refined = golden_section(search, lo, hi, t_refined);
  if (refined < best) {
    best = refined;
    t_best = t_refined;
  }
  out.lambda = std::max(best, 0.0);
  out.t_star = t_best;
  return out;
}

double kappa(double c, double beta) {
  if (!(c > 0.0 && beta > 0.0)) throw DomainError("kappa: c and beta must be positive");
  return 1.0 + c * beta / (c + beta);
}

namespace {

double decay_term(const HalaszParams& params, double lambda) {
  return std::exp(-lambda * params.c / (params.c + params.beta)) + 1.0 / std::sqrt(params.T);
}

}  // namespace

double thm5_bound(const MultiplicativeFn& g, const HalaszParams& params, double lambda,
                  const Tables& tables) {
  params.validate();
  const double x = params.x;
  const Complex log_prod = log_prime_product(abs_fn(g), x, tables.primes);
  return x / std::log(x) * std::exp(log_prod.real()) * decay_term(params, lambda);
}

double thm6_bound(const MultiplicativeFn& g, const HalaszParams& params, double lambda,
                  const Tables& tables) {
  params.validate();
  const double x = params.x;
  const EulerProductResult prod = euler_product(abs_fn(g), x, tables.primes);
  const double exponent = params.c / (3.0 * params.c + 1.0);
  return x / std::log(x) * prod.value.real() * std::pow(decay_term(params, lambda), exponent);
}

HalaszReport verify_bound(const MultiplicativeFn& h, const HalaszParams& params,
                          const Tables& tables, double tol) {
  params.validate();
  HalaszReport r;
  r.params = params;
  const LambdaMin lm = lambda_min(h, params, tables.primes, tol);
  r.lambda = lm.lambda;
  r.t_star = lm.t_star;
  r.bound_thm5 = thm5_bound(h, params, r.lambda, tables);
  r.bound_thm6 = thm6_bound(h, params, r.lambda, tables);
  r.direct_sum_modulus = std::abs(summatory_at(h, params.x, tables.factors).value);
  r.ratio5 = r.direct_sum_modulus / r.bound_thm5;
  r.ratio6 = r.direct_sum_modulus / r.bound_thm6;

  const double x = params.x;
  const std::size_t count = tables.primes.count_upto(x);

  // |h(p)| <= beta
  std::size_t over = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (std::abs(h(tables.primes[i], 1)) > params.beta * (1.0 + 1e-12)) ++over;
  }
  r.audits.push_back({"|h(p)| <= beta for p <= x", over == 0,
                      std::to_string(over) + " primes exceed beta = " +
                          format_number(params.beta)});

  // sum_{w<p<=x} p^{-1}(|h(p)| - c) >= -c1 on a w-grid
  std::vector<double> suffix(count + 1, 0.0);
  {
    CompensatedSum acc;
    for (std::size_t i = count; i-- > 0;) {
      const auto pd = static_cast<double>(tables.primes[i]);
      acc.add((std::abs(h(tables.primes[i], 1)) - params.c) / pd);
      suffix[i] = acc.value();
    }
  }
  double worst = std::numeric_limits<double>::infinity();
  double worst_w = 0.0;
  if (x > 10.0) {
    std::vector<double> grid = loglog_grid(x, 24);
    grid.insert(grid.begin(), 2.0);
    for (double w : grid) {
      const double v = suffix[tables.primes.count_upto(w)];
      if (v < worst) {
        worst = v;
        worst_w = w;
      }
    }
  }
  const bool density_ok = !(worst < -params.c1);
  r.audits.push_back({"sum_{w<p<=x} p^{-1}(|h(p)| - c) >= -c1 for 2 <= w <= x", density_ok,
                      std::isinf(worst) ? std::string("grid empty")
                                        : "minimum " + format_number(worst) + " at w = " +
                                              format_number(worst_w) + ", c1 = " +
                                              format_number(params.c1)});

  // sum over prime powers q = p^k, k >= 2, of q^{-1} |h(q)| (log q)^kappa
  const double k_exp = kappa(params.c, params.beta);
  const double limit = static_cast<double>(tables.primes.limit());
  const double half_point = std::sqrt(limit);
  CompensatedSum early;
  CompensatedSum total;
  for (std::size_t i = 0; i < tables.primes.size(); ++i) {
    const std::uint64_t p = tables.primes[i];
    const auto pd = static_cast<double>(p);
    if (pd * pd > limit) break;
    double q = pd * pd;
    for (int k = 2; q <= limit; ++k, q *= pd) {
      const double term = std::abs(h(p, k)) / q * std::pow(std::log(q), k_exp);
      total.add(term);
      if (q <= half_point) early.add(term);
    }
  }
  const double late = total.value() - early.value();
  const bool series_ok = late <= 0.05 * std::max(total.value(), 1e-300) || late < 1e-9;
  r.audits.push_back({"sum_q q^{-1}|h(q)|(log q)^kappa over prime powers q = p^k, k >= 2, "
                      "converges",
                      series_ok,
                      "partial sum " + format_number(total.value()) + " up to " +
                          format_number(limit) + ", of which " + format_number(late) +
                          " beyond " + format_number(half_point) + "; kappa = " +
                          format_number(k_exp)});
  return r;
}

}  // namespace mvlab
