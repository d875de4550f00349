#include "riskspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskspec/asymptotics.hpp"
#include "riskspec/errors.hpp"
#include "riskspec/io.hpp"
#include "riskspec/lower_quantile.hpp"
#include "riskspec/quantile_bounds.hpp"
#include "riskspec/risk_measures.hpp"
#include "riskspec/tail_bounds.hpp"

namespace riskspec {

namespace {

std::string fmt(double x, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}
std::string fmt17(double x) { return fmt(x, 17); }
std::string fmt10(double x) { return fmt(x, 10); }

std::string join(const std::vector<double>& xs, const char* sep, int digits) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += fmt(xs[i], digits);
    }
    return s;
}

unsigned thread_cap() {
    if (const char* env = std::getenv("RISK_SPECTRUM_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Index-ordered parallel map; results are assembled in grid order.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(thread_cap(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct SweepSpec {
    std::string variable; // alpha | p | x
    std::vector<std::string> tokens;
};

SweepSpec parse_sweep(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("sweep must look like VAR:START:STOP:COUNT[:log] or VAR:v1,v2,...");
    SweepSpec spec;
    spec.variable = text.substr(0, colon);
    if (spec.variable != "alpha" && spec.variable != "p" && spec.variable != "x")
        throw ParseError("sweep variable must be alpha, p or x");
    const std::string rest = text.substr(colon + 1);
    if (rest.find(',') != std::string::npos) {
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.tokens.push_back(tok);
    } else {
        std::vector<std::string> parts;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        const bool log_scale = parts.size() == 4 && parts[3] == "log";
        if (parts.size() != 3 && !log_scale)
            throw ParseError("sweep must look like VAR:START:STOP:COUNT[:log] or VAR:v1,v2,...");
        double start, stop;
        long count;
        try {
            start = std::stod(parts[0]);
            stop = std::stod(parts[1]);
            count = std::stol(parts[2]);
        } catch (const std::exception&) {
            throw ParseError("cannot parse sweep grid numbers");
        }
        if (count < 1) throw ParseError("sweep count must be >= 1");
        if (log_scale && (!(start > 0.0) || !(stop > 0.0)))
            throw ParseError("log sweeps require positive endpoints");
        for (long i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            const double v =
                log_scale ? start * std::pow(stop / start, f) : start + f * (stop - start);
            spec.tokens.push_back(fmt17(v));
        }
    }
    if (spec.tokens.empty()) throw ParseError("sweep grid is empty");
    return spec;
}

template <class Fn>
auto with_bound_dist(const Dist& dist, Fn&& fn) {
    if (std::holds_alternative<JointDiscreteDist>(dist))
        throw DomainError("this command needs a discrete or tail distribution, not a joint pair");
    if (const auto* d = std::get_if<DiscreteDist>(&dist)) return fn(*d);
    return fn(std::get<ContinuousTail>(dist));
}

const DiscreteDist& as_discrete(const Dist& dist) {
    if (const auto* d = std::get_if<DiscreteDist>(&dist)) return *d;
    throw DomainError("this command requires a discrete distribution");
}

void print_minimize(std::ostream& out, const MinimizeResult& r) {
    out << "value: " << fmt10(r.value) << "\n";
    out << "minimizers: " << join(r.minimizers, ", ", 10) << "\n";
    out << "error-bound: " << fmt10(r.value_error_bound) << "\n";
    out << "attained: " << (r.attained ? "true" : "false") << "\n";
}

int cmd_pbound(const Dist& dist, double x, Alpha alpha, double tol, std::ostream& out) {
    const MinimizeResult r =
        with_bound_dist(dist, [&](const auto& d) { return tail_bound(d, x, alpha, tol); });
    print_minimize(out, r);
    return 0;
}

int cmd_qbound(const Dist& dist, double p, Alpha alpha, double tol, std::ostream& out) {
    const MinimizeResult r = with_bound_dist(
        dist, [&](const auto& d) { return quantile_bound(d, QuantileQuery{p, alpha, tol}); });
    print_minimize(out, r);
    if (!alpha.is_zero()) {
        const double p_star =
            with_bound_dist(dist, [&](const auto& d) { return d.p_star(); });
        if (p > p_star) {
            const double residual = with_bound_dist(
                dist, [&](const auto& d) { return dual_check(d, p, alpha, tol); });
            out << "dual-residual: " << fmt10(residual) << "\n";
        }
    }
    if (alpha.is_finite() && alpha.value() == 1.0) {
        const double q0 =
            with_bound_dist(dist, [&](const auto& d) { return quantile_q0(d, p); });
        const double excess = with_bound_dist(
            dist, [&](const auto& d) { return d.partial_moment(q0, 1.0) / p; });
        out << "cvar-decomposition: q0=" << fmt10(q0) << " excess=" << fmt10(excess) << "\n";
    }
    return 0;
}

struct SpectrumRow {
    std::string grid;
    MinimizeResult r;
};

int cmd_spectrum(const Dist& dist, const SweepSpec& sweep, bool has_p, double p, bool has_x,
                 double x, bool has_alpha, Alpha alpha, double tol, const std::string& out_path,
                 const std::string& format, std::ostream& out) {
    enum class Mode { q_of_alpha, p_of_alpha, q_of_p, p_of_x } mode;
    if (sweep.variable == "alpha") {
        if (has_p)
            mode = Mode::q_of_alpha;
        else if (has_x)
            mode = Mode::p_of_alpha;
        else
            throw ParseError("an alpha sweep needs --p (quantile bound) or --x (tail bound)");
    } else if (sweep.variable == "p") {
        if (!has_alpha) throw ParseError("a p sweep needs --alpha");
        mode = Mode::q_of_p;
    } else {
        if (!has_alpha) throw ParseError("an x sweep needs --alpha");
        mode = Mode::p_of_x;
    }

    std::vector<SpectrumRow> rows(sweep.tokens.size());
    parallel_for(sweep.tokens.size(), [&](std::size_t i) {
        const std::string& tok = sweep.tokens[i];
        rows[i].grid = tok;
        switch (mode) {
            case Mode::q_of_alpha:
                rows[i].r = with_bound_dist(dist, [&](const auto& d) {
                    return quantile_bound(d, QuantileQuery{p, Alpha::parse(tok), tol});
                });
                break;
            case Mode::p_of_alpha:
                rows[i].r = with_bound_dist(dist, [&](const auto& d) {
                    return tail_bound(d, x, Alpha::parse(tok), tol);
                });
                break;
            case Mode::q_of_p:
                rows[i].r = with_bound_dist(dist, [&](const auto& d) {
                    return quantile_bound(d, QuantileQuery{std::stod(tok), alpha, tol});
                });
                break;
            case Mode::p_of_x:
                rows[i].r = with_bound_dist(dist, [&](const auto& d) {
                    return tail_bound(d, std::stod(tok), alpha, tol);
                });
                break;
        }
    });

    std::ostringstream table;
    if (format == "csv") {
        table << sweep.variable << ",value,minimizers,error_bound\n";
        for (const SpectrumRow& row : rows)
            table << row.grid << ',' << fmt17(row.r.value) << ','
                  << join(row.r.minimizers, ";", 17) << ',' << fmt17(row.r.value_error_bound)
                  << '\n';
    } else if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const SpectrumRow& row : rows) {
            nlohmann::ordered_json o;
            o["grid"] = row.grid;
            o["value"] = row.r.value;
            o["minimizers"] = row.r.minimizers;
            o["error_bound"] = row.r.value_error_bound;
            arr.push_back(std::move(o));
        }
        table << arr.dump(2) << '\n';
    } else {
        throw ParseError("format must be csv or json");
    }

    if (out_path.empty()) {
        out << table.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ParseError("cannot open output file: " + out_path);
        f << table.str();
    }
    return 0;
}

DiscreteDist discretized_unit_pareto(int n) {
    // Density (1+u)^{-2} on (0, inf): quantile atoms at levels (k-1/2)/n.
    std::vector<double> v, pr;
    for (int k = 1; k <= n; ++k) {
        const double u = (k - 0.5) / n;
        v.push_back(1.0 / u - 1.0);
        pr.push_back(1.0 / n);
    }
    return DiscreteDist(std::move(v), std::move(pr));
}

int cmd_check(const std::vector<Dist>& dists, const std::string& suite, const std::string& risk,
              double p, Alpha alpha, double kappa, int cases, unsigned seed, double tol,
              std::ostream& out) {
    RiskFunctional functional;
    if (risk == "q0") {
        functional = [p](const DiscreteDist& d) { return quantile_q0(d, p); };
    } else if (risk == "cvar") {
        functional = [p](const DiscreteDist& d) { return cvar(d, p); };
    } else if (risk == "qalpha") {
        functional = [p, alpha, tol](const DiscreteDist& d) {
            return quantile_bound(d, QuantileQuery{p, alpha, tol}).value;
        };
    } else if (risk == "meanrisk") {
        functional = [kappa](const DiscreteDist& d) {
            return mean_risk(d, LipschitzFn::linear(kappa));
        };
    } else {
        throw ParseError("risk must be one of q0, cvar, qalpha, meanrisk");
    }

    CoherenceSuite material = make_coherence_suite(seed, cases);
    if (suite == "pareto-pair") {
        const DiscreteDist marginal = discretized_unit_pareto(60);
        std::vector<JointDiscreteDist::Atom> atoms;
        for (std::size_t i = 0; i < marginal.size(); ++i)
            for (std::size_t j = 0; j < marginal.size(); ++j)
                atoms.push_back({marginal.values()[i], marginal.values()[j],
                                 marginal.probs()[i] * marginal.probs()[j]});
        material.joints.emplace_back(std::move(atoms));
    } else if (suite != "coherence") {
        throw ParseError("suite must be coherence or pareto-pair");
    }
    for (const Dist& d : dists) {
        if (const auto* disc = std::get_if<DiscreteDist>(&d))
            material.dists.push_back(*disc);
        else if (const auto* joint = std::get_if<JointDiscreteDist>(&d))
            material.joints.push_back(*joint);
        else
            throw DomainError("check accepts discrete and joint distributions only");
    }

    const std::vector<AxiomReport> reports = coherence_harness(functional, material, tol);
    for (const AxiomReport& r : reports) {
        nlohmann::ordered_json o;
        o["axiom"] = r.axiom;
        o["pass"] = r.pass;
        o["worst_violation"] = r.worst_violation;
        o["witness"] = nlohmann::ordered_json{{"description", r.witness}};
        out << o.dump() << "\n";
    }
    return 0;
}

int cmd_inequality(const Dist& dist, double p, Alpha alpha, double kappa, double tol,
                   std::ostream& out) {
    const DiscreteDist& d = as_discrete(dist);
    const LipschitzFn h = LipschitzFn::linear(kappa);
    out << "mean: " << fmt10(d.mean()) << "\n";
    out << "gini-mean-diff: " << fmt10(gini_mean_diff(d, h)) << "\n";
    out << "mean-risk: " << fmt10(mean_risk(d, h)) << "\n";
    if (d.min_value() >= 0.0) out << "lorenz: " << fmt10(lorenz(d, p)) << "\n";
    const MinimizeResult q = quantile_bound(d, QuantileQuery{p, alpha, tol});
    out << "q-bound: " << fmt10(q.value) << "\n";
    if (d.mean() != 0.0)
        out << "top-share-multiplier: " << fmt10(cvar(d, p) / d.mean()) << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectrum of optimal tail-probability and quantile bounds"};
    app.require_subcommand(1);

    std::string dist_path, alpha_token = "1", sweep_text, out_path, format = "csv";
    std::vector<std::string> dist_paths;
    double x = 0.0, p = 0.5, tol = 1e-9, kappa = 0.5;
    int cases = 50;
    unsigned seed = 20240901;
    std::string suite = "coherence", risk = "cvar";

    CLI::App* pbound = app.add_subcommand("pbound", "Optimal tail-probability bound");
    pbound->add_option("--dist", dist_path)->required();
    pbound->add_option("--x", x)->required();
    pbound->add_option("--alpha", alpha_token)->required();
    pbound->add_option("--tol", tol);

    CLI::App* qbound = app.add_subcommand("qbound", "Optimal quantile bound");
    qbound->add_option("--dist", dist_path)->required();
    qbound->add_option("--p", p)->required();
    qbound->add_option("--alpha", alpha_token)->required();
    qbound->add_option("--tol", tol);

    CLI::App* spectrum = app.add_subcommand("spectrum", "Sweep a bound over a grid");
    spectrum->add_option("--dist", dist_path)->required();
    spectrum->add_option("--sweep", sweep_text)->required();
    CLI::Option* opt_p = spectrum->add_option("--p", p);
    CLI::Option* opt_x = spectrum->add_option("--x", x);
    CLI::Option* opt_alpha = spectrum->add_option("--alpha", alpha_token);
    spectrum->add_option("--tol", tol);
    spectrum->add_option("--out", out_path);
    spectrum->add_option("--format", format);

    CLI::App* check = app.add_subcommand("check", "Coherence/property report");
    check->add_option("--dist", dist_paths);
    check->add_option("--suite", suite);
    check->add_option("--risk", risk);
    check->add_option("--p", p);
    check->add_option("--alpha", alpha_token);
    check->add_option("--kappa", kappa);
    check->add_option("--cases", cases);
    check->add_option("--seed", seed);
    check->add_option("--tol", tol);

    CLI::App* inequality = app.add_subcommand("inequality", "Gini / mean-risk / Lorenz report");
    inequality->add_option("--dist", dist_path)->required();
    inequality->add_option("--p", p)->required();
    inequality->add_option("--alpha", alpha_token);
    inequality->add_option("--kappa", kappa);
    inequality->add_option("--tol", tol);

    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv{"risk-spectrum"};
    for (const std::string& a : argv_storage) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
            app.exit(e, out, err);
            return 3;
        }

        const Alpha alpha = Alpha::parse(alpha_token);
        if (pbound->parsed()) return cmd_pbound(load_dist(dist_path), x, alpha, tol, out);
        if (qbound->parsed()) return cmd_qbound(load_dist(dist_path), p, alpha, tol, out);
        if (spectrum->parsed())
            return cmd_spectrum(load_dist(dist_path), parse_sweep(sweep_text), !opt_p->empty(),
                                p, !opt_x->empty(), x, !opt_alpha->empty(), alpha, tol, out_path,
                                format, out);
        if (check->parsed()) {
            std::vector<Dist> dists;
            for (const std::string& path : dist_paths) dists.push_back(load_dist(path));
            return cmd_check(dists, suite, risk, p, alpha, kappa, cases, seed, tol, out);
        }
        if (inequality->parsed())
            return cmd_inequality(load_dist(dist_path), p, alpha, kappa, tol, out);
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const ToleranceError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace riskspec
