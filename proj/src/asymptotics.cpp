#include "riskspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskspec/dist.hpp"
#include "riskspec/errors.hpp"
#include "riskspec/quantile_bounds.hpp"

namespace riskspec {

TailClass TailClass::of(double r) {
    if (!(r > 0.0)) throw DomainError("TailClass requires r > 0");
    return {r};
}

TailClass TailClass::infinite() { return {std::numeric_limits<double>::infinity()}; }

bool TailClass::is_infinite() const { return std::isinf(r); }

double k_constant(TailClass r, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("k_constant requires alpha > 0");
    if (r.is_infinite()) return 1.0;
    if (!(alpha < r.r)) throw DomainError("k_constant requires alpha < r for finite r");
    const double rr = r.r;
    const double log_c = std::lgamma(alpha + 1.0) + std::lgamma(rr - alpha) - std::lgamma(rr) +
                         rr * std::log(rr) - alpha * std::log(alpha) -
                         (rr - alpha) * std::log(rr - alpha);
    return std::exp(log_c / rr);
}

std::vector<double> pareto_ratio(double a, double beta, double alpha,
                                 std::span<const double> p_list) {
    if (!(a > 0.0) || !(beta > 0.0)) throw DomainError("pareto_ratio requires a, beta > 0");
    if (alpha < 0.0 || !(alpha < beta)) throw DomainError("pareto_ratio requires alpha in [0, beta)");
    if (p_list.empty()) return {};
    if (alpha == 0.0) return std::vector<double>(p_list.size(), 1.0);

    const double p_min = *std::min_element(p_list.begin(), p_list.end());
    // Cut far beyond Q_0(p_min) so truncation stays below the ratio tolerance
    // (and no higher than the ContinuousTail floor).
    const double tail_at_cut = std::min(1e-12 * p_min, ContinuousTail::tail_floor);
    const double upper_cut = a * std::pow(tail_at_cut, -1.0 / beta);
    const ContinuousTail tail = ContinuousTail::pareto(a, beta, upper_cut);

    std::vector<double> ratios;
    ratios.reserve(p_list.size());
    for (double p : p_list) {
        const double q0 = a * std::pow(p, -1.0 / beta);
        const MinimizeResult q = quantile_bound(tail, {p, Alpha::finite(alpha), 1e-9});
        ratios.push_back(q.value / q0);
    }
    return ratios;
}

} // namespace riskspec
