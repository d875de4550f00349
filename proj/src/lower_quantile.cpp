#include "riskspec/lower_quantile.hpp"

#include <cmath>

#include "riskspec/errors.hpp"
#include "riskspec/minimize.hpp"
#include "riskspec/quantile_bounds.hpp"

namespace riskspec {

namespace {

void check_p(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("p must lie strictly inside (0, 1)");
}

} // namespace

double pl_curve(const DiscreteDist& d, double t, double alpha) {
    if (!(alpha > 1.0)) throw DomainError("pl_curve requires alpha > 1");
    if (!(t < d.x_star())) throw DomainError("pl_curve requires t < x_star");
    const double lo = d.partial_moment(t, alpha - 1.0);
    const double hi = d.partial_moment(t, alpha);
    return std::exp(alpha * std::log(lo) - (alpha - 1.0) * std::log(hi));
}

LowerQuantileResult lower_quantile(const DiscreteDist& d, double p, double alpha) {
    check_p(p);
    if (!(alpha >= 1.0)) throw DomainError("lower_quantile requires alpha >= 1");
    const Alpha a = Alpha::finite(alpha);
    if (alpha == 1.0) {
        const double t = quantile_q0(d, p);
        return {t, b_curve(d, p, a, t), LowerQuantileBranch::quantile};
    }
    if (p <= d.p_star())
        return {d.x_star(), d.x_star(), LowerQuantileBranch::atom_top};

    // Unique root of pl_curve = p in (-inf, x_star2); pl_curve is
    // nonincreasing there, rising to 1 as t -> -inf.
    double hi = d.x_star2();
    double offset = 1.0;
    double lo = d.min_value() - offset;
    while (pl_curve(d, lo, alpha) <= p) {
        offset *= 2.0;
        lo = d.min_value() - offset;
        if (offset > 1e18) throw ToleranceError("lower_quantile could not bracket the root");
    }
    for (int i = 0; i < 400 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (pl_curve(d, mid, alpha) > p ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    return {t, b_curve(d, p, a, t), LowerQuantileBranch::root};
}

double cvar(const DiscreteDist& d, double p) {
    check_p(p);
    const double q0 = quantile_q0(d, p);
    return q0 + d.partial_moment(q0, 1.0) / p;
}

double q_hat(const DiscreteDist& d, double p, double alpha) {
    check_p(p);
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("q_hat requires finite alpha > 0");
    const double pm = d.partial_moment(d.mean(), alpha);
    if (pm <= 0.0) return d.mean();
    return d.mean() + std::exp((std::log(pm) - std::log(p)) / alpha);
}

double q_hat_less(const DiscreteDist& d, double p, Alpha alpha) {
    check_p(p);
    if (alpha.is_zero()) throw DomainError("q_hat_less requires alpha > 0");
    const double mean = d.mean();
    auto b_of = [&](double t) { return b_curve(d, p, alpha, t); };

    if (alpha.is_inf()) {
        if (!(mean > 0.0))
            throw DomainError("q_hat_less with alpha = inf requires E X > 0 (B domain is t > 0)");
        return golden_section(b_of, 1e-12, mean, 1e-12 * (1.0 + mean)).fx;
    }

    const double a = alpha.value();
    const Bracket br = bracket_t(d, p, a, mean, p >= 0.1 ? 0.5 * (1.0 + p) : 2.0 * p);
    const double lo = std::min(br.t_min, mean);
    if (lo >= mean) return b_of(mean);
    if (a >= 1.0) return golden_section(b_of, lo, mean, 1e-12 * (1.0 + mean - lo)).fx;

    const double pinv = -1.0 / a;
    IntervalProblem problem;
    problem.aux = [&, a, pinv](double t) -> std::array<double, 2> {
        const double pm = d.partial_moment(t, a);
        const double norm = pm > 0.0 ? std::exp(std::log(pm) / a + pinv * std::log(p)) : 0.0;
        return {norm, 0.0};
    };
    problem.value = [](double t, const std::array<double, 2>& s) { return t + s[0]; };
    problem.lower = [](double t_lo, const std::array<double, 2>&, double,
                       const std::array<double, 2>& s_hi) { return t_lo + s_hi[0]; };
    IntervalOptions options;
    options.value_tol = 1e-9;
    return interval_minimize(problem, lo, mean, options).value;
}

} // namespace riskspec
