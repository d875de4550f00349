#include "riskspec/quantile_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "riskspec/errors.hpp"
#include "riskspec/tail_bounds.hpp"

namespace riskspec {

namespace {

void check_p(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("p must lie strictly inside (0, 1)");
}

template <class D>
double b_curve_impl(const D& d, double p, Alpha alpha, double t) {
    check_p(p);
    if (alpha.is_zero()) throw DomainError("b_curve is undefined for alpha = 0");
    if (alpha.is_inf()) {
        if (!(t > 0.0)) throw DomainError("b_curve with alpha = inf requires t > 0");
        return t * (d.log_mgf(1.0 / t) - std::log(p));
    }
    const double a = alpha.value();
    const double pm = d.partial_moment(t, a);
    if (pm <= 0.0) return t;
    // t + p^{-1/alpha} (E(X-t)_+^alpha)^{1/alpha}, assembled in logs.
    return t + std::exp((std::log(pm) - std::log(p)) / a);
}

double quantile_q0_impl(const DiscreteDist& d, double p) {
    check_p(p);
    // Largest support point whose inclusive tail still reaches p.
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d.tail_prob(d.values()[i]) >= p) return d.values()[i];
    }
    return d.min_value(); // unreachable: the full tail is 1
}

double quantile_q0_impl(const ContinuousTail& d, double p) {
    check_p(p);
    double lo = d.lower_cut(), hi = d.upper_cut();
    if (d.tail_prob(hi) >= p) return hi;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (d.tail_prob(mid) < p ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

template <class D>
Bracket bracket_t_impl(const D& d, double p, double alpha, double s, double p_tilde) {
    check_p(p);
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("bracket_t requires finite alpha > 0");
    if (!(p_tilde > p) || !(p_tilde < 1.0))
        throw DomainError("bracket_t requires p_tilde in (p, 1)");
    const double t_max = b_curve_impl(d, p, Alpha::finite(alpha), s);
    const double t0 = quantile_q0_impl(d, p_tilde);
    const double ratio = std::pow(p_tilde / p, 1.0 / alpha);
    const double t1 = (ratio * t0 - t_max) / (ratio - 1.0);
    return {std::min(t0, t1), t_max};
}

double default_p_tilde(double p) { return p >= 0.1 ? 0.5 * (1.0 + p) : 2.0 * p; }

// Quantile interval endpoints for alpha = 1 on a finite support: the
// minimizer set of B_1 is {t : P(X > t) <= p <= P(X >= t)}.
std::pair<double, double> quantile_interval(const DiscreteDist& d, double p) {
    const double hi = quantile_q0_impl(d, p);
    double lo = hi;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double beyond = i + 1 < d.size() ? d.tail_prob(d.values()[i + 1]) : 0.0;
        if (beyond <= p) {
            lo = d.values()[i];
            break;
        }
    }
    return {std::min(lo, hi), hi};
}

template <class D>
MinimizeResult quantile_bound_impl(const D& d, const QuantileQuery& q) {
    check_p(q.p);
    if (!(q.tol > 0.0)) throw DomainError("quantile_bound requires tol > 0");
    MinimizeResult r;
    if (q.alpha.is_zero()) {
        r.value = quantile_q0_impl(d, q.p);
        r.attained = true;
        r.minimizers = {r.value};
        return r;
    }
    const double xs = d.x_star();
    if (q.p <= d.p_star()) {
        r.value = xs;
        if (q.alpha.is_inf()) {
            r.attained = false; // B_inf is strictly increasing in t here
        } else {
            r.attained = true; // B_alpha(x_star) = x_star
            r.minimizers = {xs};
        }
        return r;
    }

    if (q.alpha.is_inf()) {
        auto b_of = [&](double t) { return b_curve_impl(d, q.p, Alpha::inf(), t); };
        const double t_floor = 1e-12;
        double t_hi = std::max(xs - d.mean(), 1.0);
        while (t_hi < 1e9 && b_of(t_hi) <= b_of(0.5 * t_hi)) t_hi *= 2.0;
        const GoldenResult g = golden_section(b_of, t_floor, t_hi, 1e-12 * (1.0 + t_hi));
        r.value = g.fx;
        r.value_error_bound = g.value_error_bound;
        r.attained = g.x > 2.0 * t_floor;
        r.minimizers = {g.x};
        if (r.value_error_bound > q.tol)
            throw ToleranceError("quantile_bound: convex search could not certify the tolerance");
        return r;
    }

    const double a = q.alpha.value();
    const Bracket br = bracket_t_impl(d, q.p, a, d.mean(), default_p_tilde(q.p));
    auto b_of = [&](double t) { return b_curve_impl(d, q.p, q.alpha, t); };

    if (a >= 1.0) {
        const GoldenResult g =
            golden_section(b_of, br.t_min, br.t_max, 1e-12 * (1.0 + br.t_max - br.t_min));
        r.value = g.fx;
        r.value_error_bound = g.value_error_bound;
        r.attained = true;
        if (a == 1.0) {
            // The minimizer set is the full (1-p)-quantile interval.
            if constexpr (std::is_same_v<D, DiscreteDist>) {
                const auto [lo, hi] = quantile_interval(d, q.p);
                r.minimizers = lo < hi ? std::vector<double>{lo, hi} : std::vector<double>{hi};
            } else {
                r.minimizers = {quantile_q0_impl(d, q.p)};
            }
        } else {
            r.minimizers = {g.x};
        }
        if (r.value_error_bound > q.tol)
            throw ToleranceError("quantile_bound: convex search could not certify the tolerance");
        return r;
    }

    // alpha in (0, 1): interval method with the monotone norm bounds
    //   m_{a,b} >= a + p^{-1/alpha} ||(X-b)_+||_alpha,
    //   M_{a,b} <= b + p^{-1/alpha} ||(X-a)_+||_alpha.
    const double pinv = -1.0 / a;
    IntervalProblem problem;
    problem.aux = [&, a, pinv](double t) -> std::array<double, 2> {
        const double pm = d.partial_moment(t, a);
        const double norm = pm > 0.0 ? std::exp((std::log(pm)) / a + pinv * std::log(q.p)) : 0.0;
        return {norm, 0.0};
    };
    problem.value = [](double t, const std::array<double, 2>& s) { return t + s[0]; };
    problem.lower = [](double t_lo, const std::array<double, 2>&, double,
                       const std::array<double, 2>& s_hi) { return t_lo + s_hi[0]; };
    IntervalOptions options;
    options.value_tol = q.tol;
    return interval_minimize(problem, br.t_min, br.t_max, options);
}

template <class D>
double dual_check_impl(const D& d, double p, Alpha alpha, double tol) {
    check_p(p);
    if (alpha.is_zero()) throw DomainError("dual_check requires alpha > 0");
    if (!(p > d.p_star())) throw DomainError("dual_check requires p in (p_star, 1)");
    QuantileQuery q{p, alpha, tol};
    const MinimizeResult qb = quantile_bound_impl(d, q);
    const MinimizeResult pb = tail_bound(d, qb.value, alpha, tol);
    return std::abs(pb.value - p);
}

} // namespace

double b_curve(const DiscreteDist& d, double p, Alpha alpha, double t) {
    return b_curve_impl(d, p, alpha, t);
}
double b_curve(const ContinuousTail& d, double p, Alpha alpha, double t) {
    return b_curve_impl(d, p, alpha, t);
}

double quantile_q0(const DiscreteDist& d, double p) { return quantile_q0_impl(d, p); }
double quantile_q0(const ContinuousTail& d, double p) { return quantile_q0_impl(d, p); }

Bracket bracket_t(const DiscreteDist& d, double p, double alpha, double s, double p_tilde) {
    return bracket_t_impl(d, p, alpha, s, p_tilde);
}
Bracket bracket_t(const ContinuousTail& d, double p, double alpha, double s, double p_tilde) {
    return bracket_t_impl(d, p, alpha, s, p_tilde);
}

MinimizeResult quantile_bound(const DiscreteDist& d, const QuantileQuery& q) {
    return quantile_bound_impl(d, q);
}
MinimizeResult quantile_bound(const ContinuousTail& d, const QuantileQuery& q) {
    return quantile_bound_impl(d, q);
}

double dual_check(const DiscreteDist& d, double p, Alpha alpha, double tol) {
    return dual_check_impl(d, p, alpha, tol);
}
double dual_check(const ContinuousTail& d, double p, Alpha alpha, double tol) {
    return dual_check_impl(d, p, alpha, tol);
}

} // namespace riskspec
