#pragma once

#include "riskspec/alpha.hpp"
#include "riskspec/dist.hpp"
#include "riskspec/minimize.hpp"

namespace riskspec {

/// The generalized-moment curve A_alpha(X;x)(lambda) = E h_alpha(lambda(X-x)):
/// alpha = 0 gives P(X >= x) (independent of lambda), finite alpha gives
/// E(1 + lambda(X-x)/alpha)_+^alpha, alpha = inf gives e^{-lambda x} E e^{lambda X}.
/// lambda = 0 is allowed (the curve is right-continuous there, with value 1).
double moment_curve(const DiscreteDist& d, double x, Alpha alpha, double lambda);
double moment_curve(const ContinuousTail& d, double x, Alpha alpha, double lambda);

/// The bracket endpoint beyond which A_alpha(X;x)(lambda) > 1: with
/// y = the module's witness point (top of the support for discrete tails),
///   alpha finite: (alpha/(y-x)) (P(X>=y)^{-1/alpha} - 1)
///   alpha = inf : ln(1/P(X>=y)) / (y-x).
/// Requires x < x_star and a nondegenerate top (P(X>=y) < 1).
double lambda_max(const DiscreteDist& d, double x, Alpha alpha);
double lambda_max(const ContinuousTail& d, double x, Alpha alpha);

/// The optimal tail-probability bound P_alpha(X;x) = inf over lambda >= 0 of
/// the moment curve, with the certified set of minimizers.
///
/// alpha = 0 returns the exact tail probability. For x >= x_star the value is
/// p_star * 1{x = x_star} (the infimum is a lambda -> inf limit, so it is not
/// attained unless the distribution is a point mass). Otherwise the search is
/// restricted to [0, lambda_max]: convex golden-section for alpha in [1, inf],
/// interval branch-and-bound on the monotone split A = A+ + A- for alpha in (0,1).
MinimizeResult tail_bound(const DiscreteDist& d, double x, Alpha alpha, double tol = 1e-9);
MinimizeResult tail_bound(const ContinuousTail& d, double x, Alpha alpha, double tol = 1e-9);

/// The threshold x_alpha below which P_alpha(X;.) == 1. Equals E X for
/// alpha in [1, inf], the bottom of the support for alpha = 0, and is found
/// by bisection of tail_bound(x) = 1 for alpha in (0, 1).
double x_alpha(const DiscreteDist& d, Alpha alpha);
double x_alpha(const ContinuousTail& d, Alpha alpha);

} // namespace riskspec
