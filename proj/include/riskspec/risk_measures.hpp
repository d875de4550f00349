#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskspec/dist.hpp"

namespace riskspec {

/// A function H : [0, inf) -> R with a declared Lipschitz constant, used as
/// the inequality kernel of the Gini mean difference. Mean-risk with H is
/// monotone iff H is 1/2-Lipschitz and coherent iff H = kappa*id, kappa in [0, 1/2].
struct LipschitzFn {
    std::function<double(double)> eval;
    double declared_lipschitz = 0.0;
    std::optional<double> is_linear_kappa; // set when H = kappa * id

    static LipschitzFn linear(double kappa);
    static LipschitzFn of(std::function<double(double)> f, double lipschitz);
};

/// G_H(X) = E H(|X - X~|) with X~ an independent copy; exact double sum.
double gini_mean_diff(const DiscreteDist& d, const LipschitzFn& h);

/// The mean-risk measure R_H(X) = E X + G_H(X).
double mean_risk(const DiscreteDist& d, const LipschitzFn& h);

/// Usual stochastic dominance: P(X >= t) <= P(Y >= t) for all t.
/// Exact for finite support (decided on the union of the two supports).
bool dominance_st(const DiscreteDist& d1, const DiscreteDist& d2);

/// Stop-loss order: E(X-t)_+ <= E(Y-t)_+ for all t. Exact for finite
/// support: compared at the union of supports plus any crossing points of the
/// two piecewise-linear stop-loss transforms.
bool dominance_order2(const DiscreteDist& d1, const DiscreteDist& d2);

/// Moment comparison E(X-t)_+^alpha <= E(Y-t)_+^alpha on the supplied grid
/// only. NOTE: a necessary-condition check, not a finite certificate of the
/// order (the order quantifies over every real t).
bool dominance_alpha(const DiscreteDist& d1, const DiscreteDist& d2, double alpha,
                     std::span<const double> t_grid);

using RiskFunctional = std::function<double(const DiscreteDist&)>;

/// D(X) = R(X - E X): the deviation measure of a coherent strictly
/// expectation-bounded risk functional.
double deviation_measure(const RiskFunctional& risk, const DiscreteDist& d);

/// The Lorenz curve L_X(p) = int_0^p F^{-1}(u) du of a nonnegative
/// distribution, as the exact integral of the step inverse CDF.
double lorenz(const DiscreteDist& d, double p);

/// |L_X(p) + p * cvar(-X; p)|, which is 0 in exact arithmetic.
double lorenz_identity_residual(const DiscreteDist& d, double p);

/// Test material for the coherence harness: plain distributions for the
/// translation/homogeneity axioms, coupled st-ordered pairs (Y = X + Z with
/// Z >= 0 independent) for monotonicity, and dependent joint pairs for
/// subadditivity.
struct CoherenceSuite {
    std::vector<DiscreteDist> dists;
    std::vector<std::pair<DiscreteDist, DiscreteDist>> st_pairs;
    std::vector<JointDiscreteDist> joints;
};

CoherenceSuite make_coherence_suite(unsigned seed, int cases);

struct AxiomReport {
    std::string axiom; // translation_invariance | positive_homogeneity | monotonicity | subadditivity
    bool pass = true;
    double worst_violation = 0.0;
    std::string witness; // short description of the worst case
};

/// Evaluates the four coherence axioms of a risk functional against a suite
/// to the given tolerance; returns one report per axiom.
std::vector<AxiomReport> coherence_harness(const RiskFunctional& risk,
                                           const CoherenceSuite& suite, double tol);

} // namespace riskspec
