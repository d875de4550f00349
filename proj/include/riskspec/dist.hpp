#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace riskspec {

/// A finite-support distribution: strictly increasing values with positive
/// probabilities summing to 1 (within 1e-12).
///
/// The constructor sorts its input and merges values closer than 1e-12
/// (absolute), summing their probabilities; convolution arithmetic would
/// otherwise produce spurious near-duplicate atoms. All instances are
/// immutable after construction and safe to share across threads.
class DiscreteDist {
public:
    DiscreteDist(std::vector<double> values, std::vector<double> probs);

    static DiscreteDist constant(double c);

    /// The zero-mean distribution on {-a, b} for a, b > 0:
    /// P(X = -a) = b/(a+b), P(X = b) = a/(a+b).
    static DiscreteDist two_point_zero_mean(double a, double b);

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return values_.size(); }

    double mean() const { return mean_; }
    double min_value() const { return values_.front(); }

    /// Top of the support.
    double x_star() const { return values_.back(); }
    /// Mass at the top of the support.
    double p_star() const { return probs_.back(); }
    /// Second-largest support point, -inf for a point mass.
    double x_star2() const {
        return size() >= 2 ? values_[size() - 2] : -std::numeric_limits<double>::infinity();
    }

    /// P(X >= x), an exact finite sum.
    double tail_prob(double x) const;

    /// E(X - t)_+^alpha for alpha > 0, an exact finite sum.
    double partial_moment(double t, double alpha) const;

    /// E e^{lambda X}. Computed through log-sum-exp; throws OverflowError
    /// instead of returning a float infinity.
    double mgf(double lambda) const;
    /// ln E e^{lambda X}, always representable for finite support.
    double log_mgf(double lambda) const;

private:
    std::vector<double> values_;
    std::vector<double> probs_;
    std::vector<double> tails_; // tails_[i] = sum of probs_[i..]
    double mean_ = 0.0;
};

struct SupportStats {
    double x_star;
    double p_star;
    double x_star2; // -inf for a point mass
};

SupportStats support_stats(const DiscreteDist& d);

/// Exact distribution of X + Y for independent X, Y.
DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b);

/// Distribution of X + c.
DiscreteDist shifted(const DiscreteDist& d, double c);
/// Distribution of k * X, k != 0.
DiscreteDist scaled(const DiscreteDist& d, double k);

/// A finite list of (x, y, p) atoms describing a dependent pair (X, Y);
/// probabilities sum to 1 within 1e-12.
class JointDiscreteDist {
public:
    struct Atom {
        double x;
        double y;
        double p;
    };

    explicit JointDiscreteDist(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }

    DiscreteDist marginal_x() const;
    DiscreteDist marginal_y() const;
    /// Distribution of X + Y under the joint coupling.
    DiscreteDist sum() const;

private:
    std::vector<Atom> atoms_;
};

/// A distribution given through its tail function q(x) = P(X >= x) on
/// [lower_cut, upper_cut], with q(lower_cut) = 1 (within 1e-12) and
/// q(upper_cut) <= 1e-15. The distribution is treated as truncated at
/// upper_cut: every integral runs over [t v lower_cut, upper_cut].
///
/// An optional analytic partial moment (t, alpha) -> E(X-t)_+^alpha replaces
/// the quadrature path when supplied.
class ContinuousTail {
public:
    using TailFn = std::function<double(double)>;
    using PartialMomentFn = std::function<double(double, double)>;

    static constexpr double tail_floor = 1e-15;

    ContinuousTail(TailFn tail, double lower_cut, double upper_cut,
                   PartialMomentFn analytic_partial_moment = {});

    /// Pareto tail (a/x)^beta for x >= a. If upper_cut is NaN it is placed
    /// where the tail reaches tail_floor. Partial moments are analytic
    /// (closed form for t >= a and alpha < beta, quadrature otherwise).
    static ContinuousTail pareto(double a, double beta,
                                 double upper_cut = std::numeric_limits<double>::quiet_NaN());

    double lower_cut() const { return lower_cut_; }
    double upper_cut() const { return upper_cut_; }

    double x_star() const { return upper_cut_; }
    double p_star() const { return p_star_; }

    /// The stored tail evaluated with the truncation convention
    /// (1 below lower_cut, 0 above upper_cut).
    double tail_prob(double x) const;

    /// E(X - t)_+^alpha, alpha > 0: the analytic form when present, else
    /// adaptive quadrature of int alpha (z-t)_+^{alpha-1} q(z) dz.
    double partial_moment(double t, double alpha) const;

    /// ln E e^{lambda X} for lambda >= 0 via the tail-integral identity.
    double log_mgf(double lambda) const;

    double mean() const;

private:
    TailFn tail_;
    double lower_cut_;
    double upper_cut_;
    PartialMomentFn analytic_pm_;
    double p_star_;
};

/// Quadrature of int alpha (z-t)_+^{alpha-1} q(z) dz over [t v lc, uc] plus
/// the closed-form head (lc - t)_+^alpha where q == 1. Exposed so analytic
/// partial-moment callbacks can fall back to it.
double quad_partial_moment(const std::function<double(double)>& tail, double lower_cut,
                           double upper_cut, double t, double alpha);

/// Adaptive-bisection quadrature with a fixed 15-point rule per panel
/// (rel tol 1e-10, abs floor 1e-14, 60 refinement levels).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b);

} // namespace riskspec
