#pragma once

#include <array>
#include <functional>
#include <vector>

namespace riskspec {

/// Result of a certified scalar minimization.
struct MinimizeResult {
    double value = 0.0;
    double value_error_bound = 0.0;
    /// Locations of all global minimizers found (possibly more than one).
    std::vector<double> minimizers;
    bool attained = false;
};

struct GoldenResult {
    double x;
    double fx;
    double value_error_bound;
};

/// Golden-section search of a unimodal (convex) function on [lo, hi] to the
/// given bracket width; ties at flat minima land on the bracket midpoint.
GoldenResult golden_section(const std::function<double(double)>& f, double lo, double hi,
                            double width_tol);

/// A univariate global minimization problem with monotone interval bounds.
///
/// `aux(x)` evaluates endpoint data once per point, `value(x, aux)` forms the
/// objective from it, and `lower(a, aux_a, b, aux_b)` is a certified lower
/// bound for the objective on [a, b] (the monotone-split bound).
struct IntervalProblem {
    std::function<std::array<double, 2>(double)> aux;
    std::function<double(double, const std::array<double, 2>&)> value;
    std::function<double(double, const std::array<double, 2>&, double,
                         const std::array<double, 2>&)>
        lower;
};

struct IntervalOptions {
    double value_tol = 1e-9;
    int initial_subdivisions = 64;
    /// Two clusters are distinct when separated by a pruned gap wider than this.
    double cluster_gap = 0.0; // default: 1e-4 * (hi - lo)
    /// Refine surviving intervals to at most this width before clustering.
    double loc_width = 0.0; // default: 1e-7 * (hi - lo)
    long max_evals = 500000;
};

/// Prune-and-bisect interval minimization: uniform initial split, prune
/// intervals whose lower bound exceeds the best sampled value + tol, bisect
/// the widest survivor, stop when the certified gap is within tol. Surviving
/// intervals are grouped into maximal adjacent clusters, each polished by a
/// local golden-section pass.
MinimizeResult interval_minimize(const IntervalProblem& problem, double lo, double hi,
                                 const IntervalOptions& options);

} // namespace riskspec
