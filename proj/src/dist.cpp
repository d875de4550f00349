#include "riskspec/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "riskspec/errors.hpp"

namespace riskspec {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kProbSumTol = 1e-12;

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 15;
constexpr double kGLNode[kGL] = {
    -0.98799251802048543, -0.93727339240070590, -0.84820658341042722, -0.72441773136017005,
    -0.57097217260853885, -0.39415134707756337, -0.20119409399743452, 0.0,
    0.20119409399743452,  0.39415134707756337,  0.57097217260853885,  0.72441773136017005,
    0.84820658341042722,  0.93727339240070590,  0.98799251802048543};
constexpr double kGLWeight[kGL] = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194, 0.13957067792615431,
    0.16626920581699393, 0.18616100001556221, 0.19843148532711158, 0.20257824192556127,
    0.19843148532711158, 0.18616100001556221, 0.16626920581699393, 0.13957067792615431,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

double gl15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kGL; ++i) s += kGLWeight[i] * f(c + h * kGLNode[i]);
    return s * h;
}

std::pair<std::vector<double>, std::vector<double>> sort_and_merge(std::vector<double> values,
                                                                   std::vector<double> probs) {
    if (values.size() != probs.size())
        throw DomainError("values and probs must have the same length");
    if (values.empty()) throw DomainError("support must be nonempty");

    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return values[i] < values[j];
    });

    std::vector<double> v, p;
    v.reserve(values.size());
    p.reserve(values.size());
    for (std::size_t k : idx) {
        if (!std::isfinite(values[k])) throw DomainError("support values must be finite");
        if (!v.empty() && values[k] - v.back() <= kMergeTol) {
            p.back() += probs[k];
        } else {
            v.push_back(values[k]);
            p.push_back(probs[k]);
        }
    }
    double total = 0.0;
    for (double w : p) {
        if (!(w > 0.0)) throw DomainError("probabilities must be strictly positive");
        total += w;
    }
    if (std::abs(total - 1.0) > kProbSumTol)
        throw DomainError("probabilities must sum to 1 within 1e-12");
    return {std::move(v), std::move(p)};
}

} // namespace

DiscreteDist::DiscreteDist(std::vector<double> values, std::vector<double> probs) {
    auto [v, p] = sort_and_merge(std::move(values), std::move(probs));
    values_ = std::move(v);
    probs_ = std::move(p);
    tails_.assign(values_.size() + 1, 0.0);
    for (std::size_t i = values_.size(); i-- > 0;) tails_[i] = tails_[i + 1] + probs_[i];
    mean_ = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) mean_ += probs_[i] * values_[i];
}

DiscreteDist DiscreteDist::constant(double c) { return DiscreteDist({c}, {1.0}); }

DiscreteDist DiscreteDist::two_point_zero_mean(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("two_point_zero_mean requires a, b > 0");
    return DiscreteDist({-a, b}, {b / (a + b), a / (a + b)});
}

double DiscreteDist::tail_prob(double x) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    return tails_[static_cast<std::size_t>(it - values_.begin())];
}

double DiscreteDist::partial_moment(double t, double alpha) const {
    if (!(alpha > 0.0)) throw DomainError("partial_moment requires alpha > 0");
    const auto it = std::upper_bound(values_.begin(), values_.end(), t);
    double s = 0.0;
    if (alpha == 1.0) {
        for (auto i = static_cast<std::size_t>(it - values_.begin()); i < values_.size(); ++i)
            s += probs_[i] * (values_[i] - t);
    } else {
        for (auto i = static_cast<std::size_t>(it - values_.begin()); i < values_.size(); ++i)
            s += probs_[i] * std::pow(values_[i] - t, alpha);
    }
    return s;
}

double DiscreteDist::log_mgf(double lambda) const {
    double m = lambda * values_.front();
    for (double v : values_) m = std::max(m, lambda * v);
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        s += probs_[i] * std::exp(lambda * values_[i] - m);
    return m + std::log(s);
}

double DiscreteDist::mgf(double lambda) const {
    const double lm = log_mgf(lambda);
    if (lm > 709.0) throw OverflowError("mgf overflows the double range");
    return std::exp(lm);
}

SupportStats support_stats(const DiscreteDist& d) {
    return {d.x_star(), d.p_star(), d.x_star2()};
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b) {
    std::vector<double> v, p;
    v.reserve(a.size() * b.size());
    p.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            v.push_back(a.values()[i] + b.values()[j]);
            p.push_back(a.probs()[i] * b.probs()[j]);
        }
    return DiscreteDist(std::move(v), std::move(p));
}

DiscreteDist shifted(const DiscreteDist& d, double c) {
    std::vector<double> v = d.values();
    for (double& x : v) x += c;
    return DiscreteDist(std::move(v), d.probs());
}

DiscreteDist scaled(const DiscreteDist& d, double k) {
    if (k == 0.0) throw DomainError("scaled requires k != 0");
    std::vector<double> v = d.values();
    for (double& x : v) x *= k;
    return DiscreteDist(std::move(v), d.probs());
}

JointDiscreteDist::JointDiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw DomainError("joint distribution must have at least one atom");
    double total = 0.0;
    for (const Atom& a : atoms_) {
        if (!std::isfinite(a.x) || !std::isfinite(a.y))
            throw DomainError("joint atoms must be finite");
        if (!(a.p > 0.0)) throw DomainError("joint probabilities must be strictly positive");
        total += a.p;
    }
    if (std::abs(total - 1.0) > kProbSumTol)
        throw DomainError("joint probabilities must sum to 1 within 1e-12");
}

DiscreteDist JointDiscreteDist::marginal_x() const {
    std::vector<double> v, p;
    for (const Atom& a : atoms_) {
        v.push_back(a.x);
        p.push_back(a.p);
    }
    return DiscreteDist(std::move(v), std::move(p));
}

DiscreteDist JointDiscreteDist::marginal_y() const {
    std::vector<double> v, p;
    for (const Atom& a : atoms_) {
        v.push_back(a.y);
        p.push_back(a.p);
    }
    return DiscreteDist(std::move(v), std::move(p));
}

DiscreteDist JointDiscreteDist::sum() const {
    std::vector<double> v, p;
    for (const Atom& a : atoms_) {
        v.push_back(a.x + a.y);
        p.push_back(a.p);
    }
    return DiscreteDist(std::move(v), std::move(p));
}

// ---------------------------------------------------------------------------
// Adaptive quadrature.

namespace {

struct Panel {
    double a, b;
    double whole;       // gl15 over [a, b]
    double left, right; // gl15 over the two halves
    int level;
    double err() const { return std::abs(whole - left - right); }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, int level,
                 double whole) {
    const double m = 0.5 * (a + b);
    return Panel{a, b, whole, gl15(f, a, m), gl15(f, m, b), level};
}

constexpr double kQuadRelTol = 1e-10;
constexpr double kQuadAbsFloor = 1e-14;
constexpr int kQuadMaxLevel = 60;
constexpr std::size_t kQuadMaxPanels = 40000;

} // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    auto cmp = [](const Panel& p, const Panel& q) { return p.err() < q.err(); };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> active(cmp);

    // The queue holds refinable leaves; frozen_* accumulates leaves at the
    // level cap. Panel values use the refined half-sums.
    double frozen_sum = 0.0, frozen_err = 0.0;
    double active_sum = 0.0, active_err = 0.0;
    std::size_t panels = 1;
    {
        Panel p = make_panel(f, a, b, 0, gl15(f, a, b));
        active_sum = p.left + p.right;
        active_err = p.err();
        active.push(std::move(p));
    }
    while (true) {
        const double total = active_sum + frozen_sum;
        const double err = active_err + frozen_err;
        if (err <= std::max(kQuadAbsFloor, kQuadRelTol * std::abs(total))) return total;
        if (active.empty() || panels > kQuadMaxPanels)
            throw QuadratureError("adaptive quadrature did not converge");
        Panel p = active.top();
        active.pop();
        active_sum -= p.left + p.right;
        active_err -= p.err();
        const double m = 0.5 * (p.a + p.b);
        for (const auto& [lo, hi, whole] :
             {std::tuple{p.a, m, p.left}, std::tuple{m, p.b, p.right}}) {
            Panel child = make_panel(f, lo, hi, p.level + 1, whole);
            if (child.level >= kQuadMaxLevel) {
                frozen_sum += child.left + child.right;
                frozen_err += child.err();
            } else {
                active_sum += child.left + child.right;
                active_err += child.err();
                active.push(std::move(child));
            }
        }
        panels += 2;
    }
}

double quad_partial_moment(const std::function<double(double)>& tail, double lower_cut,
                           double upper_cut, double t, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("partial_moment requires alpha > 0");
    if (t >= upper_cut) return 0.0;
    // Head piece where q == 1: int_t^lc alpha (z-t)^{alpha-1} dz = (lc-t)^alpha.
    double head = 0.0;
    double a = t;
    if (t < lower_cut) {
        head = std::pow(lower_cut - t, alpha);
        a = lower_cut;
    }
    if (a >= upper_cut) return head;

    if (alpha >= 1.0) {
        auto f = [&](double z) { return alpha * std::pow(z - t, alpha - 1.0) * tail(z); };
        return head + adaptive_integrate(f, a, upper_cut);
    }
    // alpha < 1: the substitution s = (z-t)^alpha removes the endpoint
    // singularity exactly: int alpha (z-t)^{alpha-1} q(z) dz = int q(t + s^{1/alpha}) ds.
    const double inv = 1.0 / alpha;
    auto g = [&](double s) { return tail(t + std::pow(s, inv)); };
    return head + adaptive_integrate(g, std::pow(a - t, alpha), std::pow(upper_cut - t, alpha));
}

ContinuousTail::ContinuousTail(TailFn tail, double lower_cut, double upper_cut,
                               PartialMomentFn analytic_partial_moment)
    : tail_(std::move(tail)),
      lower_cut_(lower_cut),
      upper_cut_(upper_cut),
      analytic_pm_(std::move(analytic_partial_moment)) {
    if (!tail_) throw DomainError("ContinuousTail requires a tail function");
    if (!(upper_cut_ > lower_cut_)) throw DomainError("ContinuousTail requires lower_cut < upper_cut");
    if (std::abs(tail_(lower_cut_) - 1.0) > 1e-12)
        throw DomainError("ContinuousTail requires tail(lower_cut) = 1 within 1e-12");
    p_star_ = std::max(0.0, tail_(upper_cut_));
    if (p_star_ > tail_floor)
        throw DomainError("ContinuousTail requires tail(upper_cut) <= 1e-15");
}

double ContinuousTail::tail_prob(double x) const {
    if (x <= lower_cut_) return x < lower_cut_ ? 1.0 : std::min(1.0, std::max(0.0, tail_(x)));
    if (x > upper_cut_) return 0.0;
    return std::min(1.0, std::max(0.0, tail_(x)));
}

double ContinuousTail::partial_moment(double t, double alpha) const {
    if (analytic_pm_) return analytic_pm_(t, alpha);
    return quad_partial_moment(tail_, lower_cut_, upper_cut_, t, alpha);
}

double ContinuousTail::log_mgf(double lambda) const {
    if (lambda < 0.0) throw DomainError("ContinuousTail::log_mgf requires lambda >= 0");
    if (lambda == 0.0) return 0.0;
    // E e^{lambda X} = e^{lambda lc} + int_lc^uc lambda e^{lambda z} q(z) dz,
    // factored by e^{lambda uc} so the integrand stays within [0, 1].
    auto f = [&](double z) { return lambda * std::exp(lambda * (z - upper_cut_)) * tail_prob(z); };
    const double scaled = std::exp(lambda * (lower_cut_ - upper_cut_)) +
                          adaptive_integrate(f, lower_cut_, upper_cut_);
    return lambda * upper_cut_ + std::log(scaled);
}

double ContinuousTail::mean() const { return lower_cut_ + partial_moment(lower_cut_, 1.0); }

ContinuousTail ContinuousTail::pareto(double a, double beta, double upper_cut) {
    if (!(a > 0.0) || !(beta > 0.0)) throw DomainError("pareto requires a > 0 and beta > 0");
    if (std::isnan(upper_cut)) upper_cut = a * std::pow(tail_floor, -1.0 / beta);
    auto tail = [a, beta](double x) {
        return x <= a ? 1.0 : std::pow(a / x, beta);
    };
    // Closed form for t >= a and alpha < beta:
    //   E(X-t)_+^alpha = a^beta t^{alpha-beta} Gamma(alpha+1) Gamma(beta-alpha) / Gamma(beta).
    auto pm = [a, beta, tail, upper_cut](double t, double alpha) {
        if (t >= a && alpha < beta) {
            const double lg = std::lgamma(alpha + 1.0) + std::lgamma(beta - alpha) -
                              std::lgamma(beta);
            return std::exp(lg + beta * std::log(a) + (alpha - beta) * std::log(t));
        }
        return quad_partial_moment(tail, a, upper_cut, t, alpha);
    };
    return ContinuousTail(tail, a, upper_cut, pm);
}

} // namespace riskspec
