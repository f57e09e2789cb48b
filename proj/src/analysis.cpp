#include "cover/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cover/errors.hpp"

namespace cover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw NumericError("adaptive quadrature did not converge on [" +
                           std::to_string(a) + ", " + std::to_string(b) +
                           "], residual " + std::to_string(std::abs(delta)));
    }
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// Irreducible v-complete pseudo-instance, digested: v is the last arrival,
// adjacent to every element; every other subset is a singleton. Singleton
// values are listed per element in arrival order.
struct IrreducibleView {
    double x_v = 0.0;
    std::vector<std::vector<double>> singletons;  // per element, arrival order
};

IrreducibleView analyze_irreducible(const PseudoInstance& pi) {
    const SetSystem& system = pi.system;
    if (system.subsets.empty()) {
        throw MalformedInstanceError("irreducible analysis: no subsets");
    }
    const int n = system.num_elements;
    const int v = pi.arrival.back();
    if (static_cast<int>(system.subsets[v].neighbors.size()) != n) {
        throw MalformedInstanceError(
            "irreducible analysis: last arrival is not adjacent to every element");
    }
    IrreducibleView view;
    view.x_v = pi.solution.values[v];
    view.singletons.assign(n, {});
    for (std::size_t step = 0; step + 1 < pi.arrival.size(); ++step) {
        const int w = pi.arrival[step];
        if (system.subsets[w].neighbors.size() != 1) {
            throw MalformedInstanceError(
                "irreducible analysis: subset " + std::to_string(w) +
                " is neither the complete vertex nor a singleton");
        }
        view.singletons[system.subsets[w].neighbors[0]].push_back(pi.solution.values[w]);
    }
    return view;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg) {
    if (!(b >= a)) {
        throw ParameterError("integrate: bad interval");
    }
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole));
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 60);
}

double integrate_to_infinity(const std::function<double(double)>& f, double rate,
                             double scale, const QuadratureConfig& cfg) {
    if (!(rate > 0.0)) {
        throw ParameterError("integrate_to_infinity: envelope rate must be > 0");
    }
    scale = std::max(scale, 1.0);
    // Past z_star the envelope contributes less than envelope_cutoff in total.
    const double z_star = (std::log(scale) - std::log(cfg.envelope_cutoff * rate)) / rate;
    if (z_star <= 0.0) return 0.0;
    // Splitting at a few envelope scales keeps the adaptive pass shallow.
    double total = 0.0;
    double lo = 0.0;
    for (double hi : {2.0 / rate, 8.0 / rate, z_star}) {
        if (hi <= lo) continue;
        hi = std::min(hi, z_star);
        total += integrate(f, lo, hi, cfg);
        lo = hi;
        if (lo >= z_star) break;
    }
    return total;
}

double harmonic(int k) {
    if (k < 1) {
        throw ParameterError("harmonic: k must be >= 1");
    }
    double h = 0.0;
    for (int i = k; i >= 1; --i) {
        h += 1.0 / i;
    }
    return h;
}

double offline_factor_integral(double y, int k, const QuadratureConfig& cfg) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw ParameterError("offline_factor_integral: y must lie in [0, 1]");
    }
    if (k < 1) {
        throw ParameterError("offline_factor_integral: k must be >= 1");
    }
    auto integrand = [y, k](double z) {
        const double survive = -std::expm1(-(1.0 - y) * z);  // 1 - e^{-(1-y)z}
        return (1.0 - std::pow(survive, k)) * std::exp(-y * z);
    };
    // The integrand is bounded by min(e^{-yz}, k e^{-(1-y)z}).
    const double rate = std::max(std::max(y, 1.0 - y), 0.5);
    return integrate_to_infinity(integrand, rate, static_cast<double>(k), cfg);
}

double half_integral_bound(int k) {
    if (k < 1) {
        throw ParameterError("half_integral_bound: k must be >= 1");
    }
    return 2.0 * k / (k + 1.0);
}

double exact_offline_probability(const PseudoInstance& pi, const QuadratureConfig& cfg) {
    const IrreducibleView view = analyze_irreducible(pi);
    const double x_v = view.x_v;
    if (x_v == 0.0) {
        return 0.0;  // Exp(0) clock never wins an argmin against a finite one
    }
    std::vector<double> rates;
    rates.reserve(view.singletons.size());
    double min_rate = kInf;
    for (const auto& values : view.singletons) {
        double total = 0.0;
        for (double x : values) total += x;
        if (total == 0.0) {
            return 1.0;  // that element can only ever mark v
        }
        rates.push_back(total);
        min_rate = std::min(min_rate, total);
    }
    auto integrand = [&rates, x_v](double z) {
        double prod = 1.0;
        for (double rate : rates) {
            prod *= -std::expm1(-rate * z);
        }
        return (1.0 - prod) * x_v * std::exp(-x_v * z);
    };
    const double scale = std::max(x_v, 1.0) * std::max<double>(rates.size(), 1);
    return integrate_to_infinity(integrand, x_v + min_rate, scale, cfg);
}

double penalized_f(double z, double y, double r, double alpha) {
    if (!(z >= 0.0) || !(y >= 0.0 && y <= 1.0) || !(r >= 0.0 && r <= 1.0) ||
        !(alpha >= 1.0)) {
        throw ParameterError("penalized_f: domain violation");
    }
    return 1.0 - std::pow(r, alpha) * std::exp(-z * std::max(r / alpha - y, 0.0));
}

double r_star(double z, double y, double alpha) {
    if (!(z >= 0.0) || !(y >= 0.0 && y <= 1.0) || !(alpha >= 1.0)) {
        throw ParameterError("r_star: domain violation");
    }
    if (y >= 1.0 / alpha) {
        return 1.0;
    }
    const double alpha_over_z = (z > 0.0) ? alpha / z : kInf;
    if (y < std::min(alpha_over_z, 1.0 / alpha)) {
        return std::min(alpha * alpha_over_z, 1.0);  // min{alpha^2/z, 1}
    }
    return alpha * y;
}

namespace {

// log(1 - (1 - e^{lw})^k) evaluated stably; lw = log(w) with w in (0, 1).
double log_one_minus_pow(double lw, int k) {
    if (lw < -700.0) {
        // 1 - (1-w)^k ~ k w
        return std::log(static_cast<double>(k)) + lw;
    }
    const double w = std::exp(lw);
    const double p = -std::expm1(k * std::log1p(-w));  // 1 - (1-w)^k
    return std::log(p);
}

}  // namespace

double tail_integral_singular(double alpha, int k, const QuadratureConfig& cfg) {
    if (!(alpha > 0.0) || k < 1) {
        throw ParameterError("tail_integral_singular: alpha must be > 0 and k >= 1");
    }
    if (alpha <= 1.0) {
        return kInf;  // (1-t)^{-1-1/alpha} tail is not integrable
    }
    // t -> 1 - w, then w = u^m with m = 2 alpha/(alpha-1): the endpoint
    // singularity w^{-1/alpha} turns into an integrand vanishing linearly
    // at u = 0. Evaluated in log space to dodge under/overflow near 0.
    const double m = 2.0 * alpha / (alpha - 1.0);
    const double u_max = std::exp(-(alpha - 1.0) / 2.0);
    const double exponent = -1.0 - m / alpha;
    auto integrand = [m, k, exponent](double u) {
        if (u <= 0.0) return 0.0;
        const double lu = std::log(u);
        return m * std::exp(log_one_minus_pow(m * lu, k) + exponent * lu);
    };
    return integrate(integrand, 0.0, u_max, cfg);
}

double tail_integral_plain(double alpha, int k, const QuadratureConfig& cfg) {
    if (!(alpha > 0.0) || k < 1) {
        throw ParameterError("tail_integral_plain: alpha must be > 0 and k >= 1");
    }
    auto integrand = [k](double w) {
        if (w <= 0.0) return static_cast<double>(k);
        return -std::expm1(k * std::log1p(-w)) / w;
    };
    return integrate(integrand, 0.0, std::exp(-alpha), cfg);
}

double subset_arrival_factor(double alpha, int k, const QuadratureConfig& cfg) {
    if (!(alpha > 0.0) || k < 1) {
        throw ParameterError("subset_arrival_factor: alpha must be > 0 and k >= 1");
    }
    if (alpha <= 1.0) {
        return kInf;
    }
    const double t_split = -std::expm1(-alpha);  // 1 - e^{-alpha}
    auto head = [k](double t) {
        if (t <= 0.0) return 1.0;  // 1 + t + ... + t^{k-1} at t = 0
        return (1.0 - std::pow(t, k)) / (1.0 - t);
    };
    const double first = alpha * integrate(head, 0.0, t_split, cfg);
    const double second = (alpha / std::exp(1.0)) * tail_integral_singular(alpha, k, cfg);
    return first + second;
}

double edge_refined_inner(double alpha, double r1, double r2) {
    if (!(alpha > 0.0)) {
        throw ParameterError("edge_refined_inner: alpha must be > 0");
    }
    double value = 0.0;
    if (r1 > 0.0) value += std::pow(r1, alpha - 1.0);
    if (r2 > 0.0) value += std::pow(r2, alpha - 1.0);
    if (r1 > 0.0 && r2 > 0.0) {
        value -= std::pow(r1, alpha) * std::pow(r2, alpha) / (r1 + r2);
    }
    return alpha * value;
}

namespace {

double golden_max_1d(const std::function<double(double)>& fn, double lo, double hi) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-10; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = fn(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double edge_refined_factor(double alpha) {
    // Coarse 1/64 grid over the unit square, then coordinate-wise
    // golden-section around the best cell.
    const int steps = 64;
    double best = 0.0, best_r1 = 0.0, best_r2 = 0.0;
    for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
            const double r1 = static_cast<double>(i) / steps;
            const double r2 = static_cast<double>(j) / steps;
            const double value = edge_refined_inner(alpha, r1, r2);
            if (value > best) {
                best = value;
                best_r1 = r1;
                best_r2 = r2;
            }
        }
    }
    const double h = 1.5 / steps;
    double r1 = best_r1, r2 = best_r2;
    for (int round = 0; round < 4; ++round) {
        r1 = golden_max_1d([&](double r) { return edge_refined_inner(alpha, r, r2); },
                           std::max(0.0, r1 - h), std::min(1.0, r1 + h));
        r2 = golden_max_1d([&](double r) { return edge_refined_inner(alpha, r1, r); },
                           std::max(0.0, r2 - h), std::min(1.0, r2 + h));
    }
    return std::max(best, edge_refined_inner(alpha, r1, r2));
}

AlphaOptimum minimize_over_alpha(const std::function<double(double)>& fn, double lo,
                                 double hi) {
    const int grid = 160;
    double best_alpha = lo;
    double best_value = kInf;
    for (int i = 0; i <= grid; ++i) {
        const double alpha = lo + (hi - lo) * i / grid;
        const double value = fn(alpha);
        if (value < best_value) {
            best_value = value;
            best_alpha = alpha;
        }
    }
    const double step = (hi - lo) / grid;
    double a = std::max(lo, best_alpha - step);
    double b = std::min(hi, best_alpha + step);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 60 && (b - a) > 1e-5; ++it) {
        if (f1 > f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = fn(x1);
        }
    }
    const double alpha = 0.5 * (a + b);
    const double value = fn(alpha);
    if (value <= best_value) {
        return {alpha, value};
    }
    return {best_alpha, best_value};
}

double exact_subset_arrival_probability(const PseudoInstance& pi, double alpha,
                                        const QuadratureConfig& cfg) {
    if (!(alpha >= 1.0)) {
        throw ParameterError("exact_subset_arrival_probability: alpha must be >= 1");
    }
    const IrreducibleView view = analyze_irreducible(pi);
    const double x_v = view.x_v;
    if (x_v == 0.0) {
        // A zero-rate clock never beats a finite simulated clock, and any
        // element with zero remaining mass was already covered by the
        // deterministic first crosser.
        return 0.0;
    }

    const int k = static_cast<int>(view.singletons.size());
    std::vector<double> survival(k, 1.0);  // Pr[u uncovered at v's arrival]
    std::vector<double> decay(k, 0.0);     // max(r_u/alpha - x_v, 0)
    double min_decay = kInf;
    bool any_positive = false;
    for (int u = 0; u < k; ++u) {
        double mass = 0.0;
        double s = 1.0;
        for (double x : view.singletons[u]) {
            const double r = std::max(1.0 - mass, 0.0);
            if (x >= r / alpha) {
                s = 0.0;  // deterministic mark covers u for sure
            } else {
                s *= 1.0 - alpha * x / r;
            }
            mass += x;
        }
        survival[u] = s;
        const double r_v = std::max(1.0 - mass, 0.0);
        decay[u] = std::max(r_v / alpha - x_v, 0.0);
        min_decay = std::min(min_decay, decay[u]);
        any_positive = any_positive || (s > 0.0);
    }
    if (!any_positive) {
        return 0.0;
    }

    auto integrand = [&](double z) {
        double prod = 1.0;
        for (int u = 0; u < k; ++u) {
            prod *= 1.0 - survival[u] * std::exp(-decay[u] * z);
        }
        return (1.0 - prod) * x_v * std::exp(-x_v * z);
    };
    const double scale = std::max(x_v, 1.0) * std::max(k, 1);
    return integrate_to_infinity(integrand, x_v + min_decay, scale, cfg);
}

EdgeCoverConstants edge_cover_constants(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw ParameterError("edge_cover_constants: p must lie in (0, 1]");
    }
    EdgeCoverConstants constants;
    constants.c = std::expm1(p * p) / p + 1.0;
    constants.ln_c_over_p = std::log(constants.c) / p;
    constants.g0 = constants.ln_c_over_p;
    return constants;
}

FactorTable make_factor_table(const std::vector<double>& alpha_grid,
                              const std::vector<int>& k_grid,
                              const QuadratureConfig& cfg) {
    FactorTable table;
    for (double alpha : alpha_grid) {
        for (int k : k_grid) {
            table.push_back({alpha, k, subset_arrival_factor(alpha, k, cfg)});
        }
    }
    return table;
}

}  // namespace cover
