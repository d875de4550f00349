#include "riskspec/tail_bounds.hpp"

#include <cmath>

#include "riskspec/errors.hpp"

namespace riskspec {

namespace {

// h_alpha(u) for finite alpha, computed as exp(alpha*log1p(u/alpha)) to avoid
// overflow/cancellation for large alpha and large |u|.
double h_finite(double alpha, double u) {
    const double w = u / alpha;
    if (w <= -1.0) return 0.0;
    return std::exp(alpha * std::log1p(w));
}

double moment_curve_discrete_finite(const DiscreteDist& d, double x, double alpha,
                                    double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        s += d.probs()[i] * h_finite(alpha, lambda * (d.values()[i] - x));
    return s;
}

// Split of A into its nondecreasing part (atoms >= x) and nonincreasing part
// (atoms < x); the interval bounds of the branch-and-bound come from these.
std::array<double, 2> moment_split_discrete(const DiscreteDist& d, double x, double alpha,
                                            double lambda) {
    double up = 0.0, down = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double h = d.probs()[i] * h_finite(alpha, lambda * (d.values()[i] - x));
        if (d.values()[i] >= x)
            up += h;
        else
            down += h;
    }
    return {up, down};
}

// A(lambda) for a tail-defined distribution, via the partial-moment identity
// A_alpha(X;x)(lambda) = (lambda/alpha)^alpha E(X - (x - alpha/lambda))_+^alpha.
double moment_curve_tail_finite(const ContinuousTail& d, double x, double alpha,
                                double lambda) {
    if (lambda == 0.0) return 1.0;
    const double t = x - alpha / lambda;
    return std::pow(lambda / alpha, alpha) * d.partial_moment(t, alpha);
}

std::array<double, 2> moment_split_tail(const ContinuousTail& d, double x, double alpha,
                                        double lambda) {
    if (lambda == 0.0) {
        const double q = d.tail_prob(x);
        return {q, 1.0 - q};
    }
    const double t = x - alpha / lambda;
    // E(X-t)^alpha 1{X >= x} = (x-t)^alpha P(X >= x) + int_x^uc alpha (z-t)^{alpha-1} q(z) dz.
    const double qx = d.tail_prob(x);
    double integral = 0.0;
    if (x < d.upper_cut()) {
        auto f = [&](double z) {
            return alpha * std::pow(z - t, alpha - 1.0) * d.tail_prob(z);
        };
        integral = adaptive_integrate(f, x, d.upper_cut());
    }
    const double scale = std::pow(lambda / alpha, alpha);
    const double up = qx + scale * integral; // (lambda/alpha)^alpha (x-t)^alpha == 1
    const double total = scale * d.partial_moment(t, alpha);
    return {up, std::max(0.0, total - up)};
}

template <class D>
double moment_curve_impl(const D& d, double x, Alpha alpha, double lambda) {
    if (lambda < 0.0) throw DomainError("moment_curve requires lambda >= 0");
    if (alpha.is_zero()) return d.tail_prob(x);
    if (lambda == 0.0) return 1.0;
    if (alpha.is_inf()) return std::exp(d.log_mgf(lambda) - lambda * x);
    if constexpr (std::is_same_v<D, DiscreteDist>)
        return moment_curve_discrete_finite(d, x, alpha.value(), lambda);
    else
        return moment_curve_tail_finite(d, x, alpha.value(), lambda);
}

// Witness point y used in the lambda_max formula.
double pick_y(const DiscreteDist& d, double) { return d.x_star(); }

double pick_y(const ContinuousTail& d, double x) {
    double y = 0.5 * (x + d.upper_cut());
    while (y > x && d.tail_prob(y) <= 0.0) y = 0.5 * (x + y);
    return y;
}

template <class D>
double lambda_max_impl(const D& d, double x, Alpha alpha) {
    if (alpha.is_zero()) throw DomainError("lambda_max is undefined for alpha = 0");
    if (x >= d.x_star()) throw DomainError("lambda_max requires x < x_star");
    const double y = pick_y(d, x);
    const double q = d.tail_prob(y);
    if (q >= 1.0)
        throw DomainError("lambda_max is degenerate: P(X >= y) = 1 at the witness point");
    if (q <= 0.0) throw DomainError("lambda_max requires P(X >= y) > 0");
    if (alpha.is_inf()) return std::log(1.0 / q) / (y - x);
    const double a = alpha.value();
    return a / (y - x) * (std::pow(q, -1.0 / a) - 1.0);
}

template <class D>
MinimizeResult tail_bound_impl(const D& d, double x, Alpha alpha, double tol) {
    if (!(tol > 0.0)) throw DomainError("tail_bound requires tol > 0");
    MinimizeResult r;
    if (alpha.is_zero()) {
        r.value = d.tail_prob(x);
        r.attained = true;
        r.minimizers = {0.0};
        return r;
    }
    const double xs = d.x_star();
    if (x > xs) {
        r.value = 0.0;
        r.attained = false;
        return r;
    }
    if (x == xs) {
        // Approached as lambda -> inf; attained only for a point mass.
        r.value = d.p_star();
        r.attained = d.p_star() >= 1.0;
        if (r.attained) r.minimizers = {0.0};
        return r;
    }
    if (d.tail_prob(x) >= 1.0) {
        // x at or below the bottom of the support: the bound is exactly 1 at lambda = 0.
        r.value = 1.0;
        r.attained = true;
        r.minimizers = {0.0};
        return r;
    }

    const double lmax = lambda_max_impl(d, x, alpha);
    auto a_of = [&](double lambda) { return moment_curve_impl(d, x, alpha, lambda); };

    if (alpha.is_inf() || alpha.value() >= 1.0) {
        // A is convex in lambda here.
        const GoldenResult g =
            golden_section(a_of, 0.0, lmax, 1e-12 * (1.0 + lmax));
        r.value = g.fx;
        r.value_error_bound = g.value_error_bound;
        r.attained = true;
        r.minimizers = {g.x};
        if (r.value_error_bound > tol)
            throw ToleranceError("tail_bound: convex search could not certify the tolerance");
        return r;
    }

    const double a = alpha.value();
    IntervalProblem problem;
    if constexpr (std::is_same_v<D, DiscreteDist>) {
        problem.aux = [&, a](double l) { return moment_split_discrete(d, x, a, l); };
    } else {
        problem.aux = [&, a](double l) { return moment_split_tail(d, x, a, l); };
    }
    problem.value = [](double, const std::array<double, 2>& s) { return s[0] + s[1]; };
    // m_{a,b} >= A+(a) + A-(b): A+ nondecreasing, A- nonincreasing.
    problem.lower = [](double, const std::array<double, 2>& sa, double,
                       const std::array<double, 2>& sb) { return sa[0] + sb[1]; };
    IntervalOptions options;
    options.value_tol = tol;
    return interval_minimize(problem, 0.0, lmax, options);
}

template <class D>
double x_alpha_small(const D& d, double alpha, double lo, double hi) {
    // P_alpha(X;.) is 1 up to x_alpha and strictly decreasing beyond it;
    // bisect the predicate P(x) < 1.
    const double tol = 1e-12;
    auto below_one = [&](double x) {
        return tail_bound_impl(d, x, Alpha::finite(alpha), tol).value < 1.0 - 10.0 * tol;
    };
    if (below_one(lo)) return lo;
    if (!below_one(hi)) return hi;
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (below_one(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double moment_curve(const DiscreteDist& d, double x, Alpha alpha, double lambda) {
    return moment_curve_impl(d, x, alpha, lambda);
}
double moment_curve(const ContinuousTail& d, double x, Alpha alpha, double lambda) {
    return moment_curve_impl(d, x, alpha, lambda);
}

double lambda_max(const DiscreteDist& d, double x, Alpha alpha) {
    return lambda_max_impl(d, x, alpha);
}
double lambda_max(const ContinuousTail& d, double x, Alpha alpha) {
    return lambda_max_impl(d, x, alpha);
}

MinimizeResult tail_bound(const DiscreteDist& d, double x, Alpha alpha, double tol) {
    return tail_bound_impl(d, x, alpha, tol);
}
MinimizeResult tail_bound(const ContinuousTail& d, double x, Alpha alpha, double tol) {
    return tail_bound_impl(d, x, alpha, tol);
}

double x_alpha(const DiscreteDist& d, Alpha alpha) {
    if (d.size() == 1) return d.x_star();
    if (alpha.is_zero()) return d.min_value();
    if (alpha.is_inf() || alpha.value() >= 1.0) return d.mean();
    return x_alpha_small(d, alpha.value(), d.min_value(), d.mean());
}

double x_alpha(const ContinuousTail& d, Alpha alpha) {
    // Bottom of the support: where the tail departs from 1.
    double lo = d.lower_cut(), hi = d.upper_cut();
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (d.tail_prob(mid) < 1.0 - 1e-12 ? hi : lo) = mid;
    }
    const double x0 = 0.5 * (lo + hi);
    if (alpha.is_zero()) return x0;
    if (alpha.is_inf() || alpha.value() >= 1.0) return d.mean();
    return x_alpha_small(d, alpha.value(), x0, d.mean());
}

} // namespace riskspec
