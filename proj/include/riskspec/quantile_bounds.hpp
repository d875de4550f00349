#pragma once

#include "riskspec/alpha.hpp"
#include "riskspec/dist.hpp"
#include "riskspec/minimize.hpp"

namespace riskspec {

/// A quantile-bound query: the level p in (0,1) (confidence 1-p), the
/// spectrum parameter, and the certification tolerance.
struct QuantileQuery {
    double p;
    Alpha alpha;
    double tol = 1e-9;
};

/// The variational objective B_alpha(X;p)(t):
///   finite alpha: t + p^{-1/alpha} ||(X-t)_+||_alpha        (t in R)
///   alpha = inf : t ln(E e^{X/t} / p)                       (t > 0).
/// Throws DomainError for alpha = inf with t <= 0.
double b_curve(const DiscreteDist& d, double p, Alpha alpha, double t);
double b_curve(const ContinuousTail& d, double p, Alpha alpha, double t);

/// The largest (1-p)-quantile: Q_0(X;p) = inf{x : P(X >= x) < p}.
double quantile_q0(const DiscreteDist& d, double p);
double quantile_q0(const ContinuousTail& d, double p);

struct Bracket {
    double t_min;
    double t_max;
};

/// Bracketing of the B-curve minimizers for finite alpha: t_max = B(s),
/// t_0,min = Q_0(X;p~), t_1,min = ((p~/p)^{1/alpha} t_0,min - t_max) /
/// ((p~/p)^{1/alpha} - 1), t_min = min of the two. Any minimizer lies in
/// [t_min, t_max] for any s in R and p~ in (p, 1).
Bracket bracket_t(const DiscreteDist& d, double p, double alpha, double s, double p_tilde);
Bracket bracket_t(const ContinuousTail& d, double p, double alpha, double s, double p_tilde);

/// The optimal quantile bound Q_alpha(X;p) = inf over t of B_alpha(X;p)(t),
/// with the certified minimizer set.
///
/// alpha = 0 returns the plain quantile. p <= p_star returns x_star exactly
/// (not attained for alpha = inf, where B is then strictly increasing).
/// Finite alpha minimizes over the default bracket (s = mean,
/// p~ = (1+p)/2 for p >= 0.1 else 2p): convex golden-section for
/// alpha in [1, inf), interval branch-and-bound for alpha in (0,1). For
/// alpha = 1 the minimizer set is the full quantile interval and is reported
/// through its endpoints. alpha = inf searches t in (0, t_hi] with t_hi grown
/// until B increases.
MinimizeResult quantile_bound(const DiscreteDist& d, const QuantileQuery& q);
MinimizeResult quantile_bound(const ContinuousTail& d, const QuantileQuery& q);

/// The inverse-duality residual |P_alpha(X; Q_alpha(X;p)) - p|, which is 0 in
/// exact arithmetic for p in (p_star, 1) and alpha > 0.
double dual_check(const DiscreteDist& d, double p, Alpha alpha, double tol);
double dual_check(const ContinuousTail& d, double p, Alpha alpha, double tol);

} // namespace riskspec
