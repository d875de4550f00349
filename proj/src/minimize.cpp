#include "riskspec/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskspec/errors.hpp"

namespace riskspec {

GoldenResult golden_section(const std::function<double(double)>& f, double lo, double hi,
                            double width_tol) {
    if (!(hi >= lo)) throw DomainError("golden_section requires lo <= hi");
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > width_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    double best_x = xm, best_f = fm;
    if (f1 < best_f) { best_f = f1; best_x = x1; }
    if (f2 < best_f) { best_f = f2; best_x = x2; }
    const double fa = f(a), fb = f(b);
    if (fa < best_f) { best_f = fa; best_x = a; }
    if (fb < best_f) { best_f = fb; best_x = b; }
    const double err = std::max(0.0, std::max(fa, fb) - best_f);
    return {best_x, best_f, err};
}

namespace {

struct Node {
    double a, b;
    std::array<double, 2> aux_a, aux_b;
    double fa, fb; // objective at the endpoints
    double m;      // certified lower bound on [a, b]
};

} // namespace

MinimizeResult interval_minimize(const IntervalProblem& problem, double lo, double hi,
                                 const IntervalOptions& options) {
    if (!(hi > lo)) throw DomainError("interval_minimize requires lo < hi");
    const double span = hi - lo;
    const double cluster_gap = options.cluster_gap > 0.0 ? options.cluster_gap : 1e-4 * span;
    const double loc_width = options.loc_width > 0.0 ? options.loc_width : 1e-7 * span;
    const double tol = options.value_tol;

    long evals = 0;
    auto eval_aux = [&](double x) {
        ++evals;
        return problem.aux(x);
    };

    double ub = std::numeric_limits<double>::infinity();
    double best_x = lo;
    auto note = [&](double x, double fx) {
        if (fx < ub) {
            ub = fx;
            best_x = x;
        }
    };

    std::vector<Node> nodes;
    {
        const int k = std::max(1, options.initial_subdivisions);
        std::vector<double> xs(static_cast<std::size_t>(k) + 1);
        std::vector<std::array<double, 2>> auxs(xs.size());
        std::vector<double> fs(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = lo + span * static_cast<double>(i) / k;
            auxs[i] = eval_aux(xs[i]);
            fs[i] = problem.value(xs[i], auxs[i]);
            note(xs[i], fs[i]);
        }
        nodes.reserve(xs.size());
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            nodes.push_back({xs[i], xs[i + 1], auxs[i], auxs[i + 1], fs[i], fs[i + 1],
                             problem.lower(xs[i], auxs[i], xs[i + 1], auxs[i + 1])});
    }

    auto prune = [&]() {
        std::erase_if(nodes, [&](const Node& n) { return n.m > ub + tol; });
    };

    while (true) {
        prune();
        if (nodes.empty()) break; // degenerate: the minimum sits at a sampled point
        double min_m = nodes.front().m, max_w = 0.0;
        std::size_t widest = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            min_m = std::min(min_m, nodes[i].m);
            const double w = nodes[i].b - nodes[i].a;
            if (w > max_w) {
                max_w = w;
                widest = i;
            }
        }
        if (ub - min_m <= tol && max_w <= loc_width) break;
        if (evals > options.max_evals)
            throw ToleranceError("interval minimization hit its evaluation cap");

        Node n = nodes[widest];
        nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(widest));
        const double mid = 0.5 * (n.a + n.b);
        const auto aux_mid = eval_aux(mid);
        const double f_mid = problem.value(mid, aux_mid);
        note(mid, f_mid);
        nodes.push_back({n.a, mid, n.aux_a, aux_mid, n.fa, f_mid,
                         problem.lower(n.a, n.aux_a, mid, aux_mid)});
        nodes.push_back({mid, n.b, aux_mid, n.aux_b, f_mid, n.fb,
                         problem.lower(mid, aux_mid, n.b, n.aux_b)});
    }

    double min_m = ub;
    for (const Node& n : nodes) min_m = std::min(min_m, n.m);

    // Group surviving intervals into maximal adjacent clusters.
    std::sort(nodes.begin(), nodes.end(), [](const Node& x, const Node& y) { return x.a < y.a; });
    struct Cluster {
        double lo, hi, best_x, best_f;
    };
    std::vector<Cluster> clusters;
    for (const Node& n : nodes) {
        const double nx = n.fa <= n.fb ? n.a : n.b;
        const double nf = std::min(n.fa, n.fb);
        if (!clusters.empty() && n.a - clusters.back().hi <= cluster_gap) {
            Cluster& c = clusters.back();
            c.hi = n.b;
            if (nf < c.best_f) {
                c.best_f = nf;
                c.best_x = nx;
            }
        } else {
            clusters.push_back({n.a, n.b, nx, nf});
        }
    }
    if (clusters.empty()) clusters.push_back({best_x, best_x, best_x, ub});

    MinimizeResult result;
    auto f_of = [&](double x) {
        const auto aux = eval_aux(x);
        return problem.value(x, aux);
    };
    for (Cluster& c : clusters) {
        const double pad = loc_width;
        const double a = std::max(lo, c.lo - pad), b = std::min(hi, c.hi + pad);
        if (b > a) {
            const GoldenResult g = golden_section(f_of, a, b, 1e-13 * (1.0 + span));
            if (g.fx < c.best_f) {
                c.best_f = g.fx;
                c.best_x = g.x;
            }
        }
        note(c.best_x, c.best_f);
    }
    // Keep only clusters whose polished values tie the global minimum.
    for (const Cluster& c : clusters)
        if (c.best_f <= ub + tol) result.minimizers.push_back(c.best_x);
    std::sort(result.minimizers.begin(), result.minimizers.end());

    result.value = ub;
    result.value_error_bound = std::max(0.0, ub - min_m);
    result.attained = true;
    if (result.value_error_bound > tol)
        throw ToleranceError("interval minimization could not certify the requested tolerance");
    return result;
}

} // namespace riskspec
