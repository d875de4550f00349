#pragma once

#include "riskspec/alpha.hpp"
#include "riskspec/dist.hpp"

namespace riskspec {

enum class LowerQuantileBranch { atom_top, root, quantile };

/// Result of the lower (alpha-1, 1-p)-quantile computation: the largest
/// minimizer t of B_alpha, the bound value B_alpha(t) it reconstructs, and
/// which computation branch produced it.
struct LowerQuantileResult {
    double t_opt;
    double q_value;
    LowerQuantileBranch branch;
};

/// The root curve for alpha > 1 and t < x_star:
///   E^alpha (X-t)_+^{alpha-1} / E^{alpha-1} (X-t)_+^alpha,
/// nonincreasing in t, with values in (0, 1]; the largest minimizer of
/// B_alpha solves pl_curve(t) = p.
double pl_curve(const DiscreteDist& d, double t, double alpha);

/// The largest minimizer of B_alpha(X;p)(t) for alpha >= 1:
///   alpha = 1      -> the plain quantile Q_0(X;p)            (branch quantile)
///   p <= p_star    -> x_star                                 (branch atom_top)
///   otherwise      -> the unique root of pl_curve = p below x_star2 (branch root).
LowerQuantileResult lower_quantile(const DiscreteDist& d, double p, double alpha);

/// CVaR through the closed identity Q_1(X;p) = Q_0(X;p) + E(X - Q_0(X;p))_+ / p.
double cvar(const DiscreteDist& d, double p);

/// The majorant Q^_alpha(X;p) = E X + p^{-1/alpha} ||(X - E X)_+||_alpha.
double q_hat(const DiscreteDist& d, double p, double alpha);

/// The tighter majorant inf over t <= E X of B_alpha(X;p)(t). For alpha = inf
/// the search runs over t in (0, E X] and requires E X > 0.
double q_hat_less(const DiscreteDist& d, double p, Alpha alpha);

} // namespace riskspec
