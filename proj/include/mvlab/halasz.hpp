#pragma once

#include <vector>

#include "mvlab/audit.hpp"
#include "mvlab/mfunc.hpp"

namespace mvlab {

struct HalaszParams {
  double Y = 1.5;
  double x = 0.0;
  double T = 1.0;
  double beta = 1.0;  // |g(p)| <= beta
  double c = 1.0;     // lower density of |g| on the primes
  double c1 = 1.0;    // slack in the lower-density hypothesis

  /// Throws DomainError unless 3/2 <= Y <= x, T > 0 and 0 < c <= beta.
  void validate() const;
};

struct LambdaMin {
  double lambda = 0.0;
  double t_star = 0.0;
  std::size_t cells = 0;  // cells examined by the search
};

/// sum_{Y<p<=x} p^{-1}(|g(p)| - Re g(p) p^{it}) at a single t.
double lambda_objective(const MultiplicativeFn& g, const HalaszParams& params,
                        const PrimeTable& primes, double t);

/// Minimum of lambda_objective over |t| <= T, within tol of the true minimum.
///
/// Branch and bound over t-cells. The summands are non-negative, so the sum
/// over any prefix of the primes bounds the full objective from below; over
/// a cell of radius r around c the prefix sum F_j moves by at most
/// min(L_j r, |F_j'(c)| r + M_j r^2 / 2), with L_j and M_j the sums of
/// w log p and w log^2 p. Cells whose bound reaches the incumbent minus
/// tol/2 are discarded; the incumbent cell is finished with 40 golden-section
/// steps.
LambdaMin lambda_min(const MultiplicativeFn& g, const HalaszParams& params,
                     const PrimeTable& primes, double tol = 1e-3);

/// x/log x * prod_{p<=x}(1 + |g(p)|/p) * (exp(-lambda c/(c+beta)) + T^{-1/2}),
/// implied constant 1.
double thm5_bound(const MultiplicativeFn& g, const HalaszParams& params, double lambda,
                  const Tables& tables);

/// x/log x * prod_x(|g|) * (exp(-lambda c/(c+beta)) + T^{-1/2})^{c/(3c+1)},
/// with the full Euler product of |g|; implied constant 1.
double thm6_bound(const MultiplicativeFn& g, const HalaszParams& params, double lambda,
                  const Tables& tables);

/// 1 + c beta / (c + beta).
double kappa(double c, double beta);

struct HalaszReport {
  HalaszParams params;
  double lambda = 0.0;
  double t_star = 0.0;
  double bound_thm5 = 0.0;
  double bound_thm6 = 0.0;
  double direct_sum_modulus = 0.0;  // |sum_{n<=x} h(n)|
  double ratio5 = 0.0;
  double ratio6 = 0.0;
  std::vector<Audit> audits;
};

/// Confronts |sum_{n<=x} h(n)| with both bounds, auditing the hypotheses
/// (|h(p)| <= beta, the lower-density condition on a w-grid, and the
/// (log q)^kappa series over higher prime powers).
HalaszReport verify_bound(const MultiplicativeFn& h, const HalaszParams& params,
                          const Tables& tables, double tol = 1e-3);

}  // namespace mvlab
