#pragma once

#include <span>
#include <vector>

namespace riskspec {

/// The tail-decay class "like x^{-r}", r > 0 or infinite.
struct TailClass {
    double r;

    static TailClass of(double r);
    static TailClass infinite();
    bool is_infinite() const;
};

/// The limiting ratio Q_alpha / Q_0 as p -> 0 for tails like x^{-r}:
/// 1 for r = inf, else c_{r,alpha}^{1/r} with
///   c_{r,alpha} = Gamma(alpha+1) Gamma(r-alpha) / Gamma(r) * r^r / (alpha^alpha (r-alpha)^{r-alpha}).
/// Requires 0 < alpha < r when r is finite.
double k_constant(TailClass r, double alpha);

/// Ratios Q_alpha(X;p) / Q_0(X;p) for a Pareto tail (a/x)^beta, one per
/// entry of p_list; Q_0 is the analytic a p^{-1/beta}, Q_alpha is computed on
/// the truncated tail (cut where the tail reaches 1e-12 * min p). The ratios
/// approach k_constant(beta, alpha) as p -> 0. alpha = 0 short-circuits to 1.
std::vector<double> pareto_ratio(double a, double beta, double alpha,
                                 std::span<const double> p_list);

} // namespace riskspec
