#include "riskspec/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "riskspec/errors.hpp"
#include "riskspec/lower_quantile.hpp"

namespace riskspec {

namespace {

constexpr double kCmpTol = 1e-12; // absorbs float dust in exact comparisons

std::vector<double> support_union(const DiscreteDist& d1, const DiscreteDist& d2) {
    std::vector<double> u = d1.values();
    u.insert(u.end(), d2.values().begin(), d2.values().end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

std::string describe(const char* what, double lhs, double rhs) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: lhs=%.17g rhs=%.17g", what, lhs, rhs);
    return buf;
}

} // namespace

LipschitzFn LipschitzFn::linear(double kappa) {
    if (kappa < 0.0) throw DomainError("LipschitzFn::linear requires kappa >= 0");
    LipschitzFn h;
    h.eval = [kappa](double u) { return kappa * u; };
    h.declared_lipschitz = kappa;
    h.is_linear_kappa = kappa;
    return h;
}

LipschitzFn LipschitzFn::of(std::function<double(double)> f, double lipschitz) {
    LipschitzFn h;
    h.eval = std::move(f);
    h.declared_lipschitz = lipschitz;
    return h;
}

double gini_mean_diff(const DiscreteDist& d, const LipschitzFn& h) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            s += d.probs()[i] * d.probs()[j] * h.eval(std::abs(d.values()[i] - d.values()[j]));
    return s;
}

double mean_risk(const DiscreteDist& d, const LipschitzFn& h) {
    return d.mean() + gini_mean_diff(d, h);
}

bool dominance_st(const DiscreteDist& d1, const DiscreteDist& d2) {
    for (double t : support_union(d1, d2))
        if (d1.tail_prob(t) > d2.tail_prob(t) + kCmpTol) return false;
    return true;
}

bool dominance_order2(const DiscreteDist& d1, const DiscreteDist& d2) {
    std::vector<double> grid = support_union(d1, d2);
    grid.insert(grid.begin(), grid.front() - 1.0); // below both supports: compares the means
    auto sl1 = [&](double t) { return d1.partial_moment(t, 1.0); };
    auto sl2 = [&](double t) { return d2.partial_moment(t, 1.0); };
    std::vector<double> checks = grid;
    // The stop-loss transforms are piecewise linear with kinks at the union
    // grid; add any crossing of the two inside a segment.
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = grid[i], b = grid[i + 1];
        const double da = sl1(a) - sl2(a), db = sl1(b) - sl2(b);
        if (da * db < 0.0) checks.push_back(a + (b - a) * da / (da - db));
    }
    for (double t : checks)
        if (sl1(t) > sl2(t) + kCmpTol) return false;
    return true;
}

bool dominance_alpha(const DiscreteDist& d1, const DiscreteDist& d2, double alpha,
                     std::span<const double> t_grid) {
    if (!(alpha > 0.0)) throw DomainError("dominance_alpha requires alpha > 0");
    for (double t : t_grid)
        if (d1.partial_moment(t, alpha) > d2.partial_moment(t, alpha) + kCmpTol) return false;
    return true;
}

double deviation_measure(const RiskFunctional& risk, const DiscreteDist& d) {
    return risk(shifted(d, -d.mean()));
}

double lorenz(const DiscreteDist& d, double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("lorenz requires p in (0, 1)");
    if (d.min_value() < 0.0) throw DomainError("lorenz requires a nonnegative support");
    // F^{-1}(u) = values[i] on (c_{i-1}, c_i]; exact step integral up to p.
    double integral = 0.0, c = 0.0;
    for (std::size_t i = 0; i < d.size() && c < p; ++i) {
        const double width = std::min(p - c, d.probs()[i]);
        integral += d.values()[i] * width;
        c += d.probs()[i];
    }
    return integral;
}

double lorenz_identity_residual(const DiscreteDist& d, double p) {
    return std::abs(lorenz(d, p) + p * cvar(scaled(d, -1.0), p));
}

CoherenceSuite make_coherence_suite(unsigned seed, int cases) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> natoms(2, 6);
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::uniform_real_distribution<double> pos(0.0, 2.0);
    std::uniform_real_distribution<double> mass(0.05, 1.0);

    auto random_dist = [&](bool nonneg) {
        const int n = natoms(rng);
        std::vector<double> v, p;
        for (int i = 0; i < n; ++i) {
            v.push_back(nonneg ? pos(rng) : val(rng));
            p.push_back(mass(rng));
        }
        double total = 0.0;
        for (double w : p) total += w;
        for (double& w : p) w /= total;
        // Merge-tolerant constructor absorbs accidental duplicates.
        return DiscreteDist(std::move(v), std::move(p));
    };

    CoherenceSuite suite;
    for (int k = 0; k < cases; ++k) {
        suite.dists.push_back(random_dist(false));
        const DiscreteDist x = random_dist(false);
        suite.st_pairs.emplace_back(x, convolve(x, random_dist(true)));
        std::vector<JointDiscreteDist::Atom> atoms;
        const int n = natoms(rng);
        std::vector<double> w(static_cast<std::size_t>(n));
        double total = 0.0;
        for (double& wi : w) {
            wi = mass(rng);
            total += wi;
        }
        for (int i = 0; i < n; ++i) atoms.push_back({val(rng), val(rng), w[static_cast<std::size_t>(i)] / total});
        suite.joints.emplace_back(std::move(atoms));
    }
    return suite;
}

std::vector<AxiomReport> coherence_harness(const RiskFunctional& risk,
                                           const CoherenceSuite& suite, double tol) {
    AxiomReport ti{"translation_invariance"}, ph{"positive_homogeneity"}, mono{"monotonicity"},
        sub{"subadditivity"};

    auto worse = [](AxiomReport& r, double violation, std::string witness) {
        if (violation > r.worst_violation) {
            r.worst_violation = violation;
            r.witness = std::move(witness);
        }
    };

    const double shifts[] = {-1.5, 0.7, 2.0};
    const double scales[] = {0.5, 2.0, 3.7};
    for (const DiscreteDist& d : suite.dists) {
        const double r0 = risk(d);
        for (double c : shifts) {
            const double lhs = risk(shifted(d, c)), rhs = r0 + c;
            worse(ti, std::abs(lhs - rhs), describe("R(X+c) vs R(X)+c", lhs, rhs));
        }
        for (double k : scales) {
            const double lhs = risk(scaled(d, k)), rhs = k * r0;
            worse(ph, std::abs(lhs - rhs), describe("R(kX) vs kR(X)", lhs, rhs));
        }
    }
    for (const auto& [x, y] : suite.st_pairs) {
        const double lhs = risk(x), rhs = risk(y);
        worse(mono, std::max(0.0, lhs - rhs), describe("R(X) vs R(Y), X <=st Y", lhs, rhs));
    }
    for (const JointDiscreteDist& j : suite.joints) {
        const double lhs = risk(j.sum()), rhs = risk(j.marginal_x()) + risk(j.marginal_y());
        worse(sub, std::max(0.0, lhs - rhs), describe("R(X+Y) vs R(X)+R(Y)", lhs, rhs));
    }

    std::vector<AxiomReport> reports{ti, ph, mono, sub};
    for (AxiomReport& r : reports) r.pass = r.worst_violation <= tol;
    return reports;
}

} // namespace riskspec
