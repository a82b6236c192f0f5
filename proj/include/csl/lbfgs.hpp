#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "csl/errors.hpp"

namespace csl {

struct MinimizeOptions {
    std::size_t max_iterations = 10;
    double gradient_tolerance = 1e-5;   // on the max-norm of the gradient
    std::size_t memory = 10;
    std::size_t max_line_search_steps = 40;
};

enum class Termination { gradient_tolerance, max_iterations, line_search_failure };

inline std::string to_string(Termination t) {
    switch (t) {
        case Termination::gradient_tolerance: return "gradient_tolerance";
        case Termination::max_iterations: return "max_iterations";
        case Termination::line_search_failure: return "line_search_failure";
    }
    return "?";
}

struct MinimizeResult {
    std::vector<double> x;
    double loss = 0.0;
    std::size_t iterations = 0;
    Termination reason = Termination::max_iterations;
    std::vector<double> loss_history;  // loss at init and at each accepted iterate
};

// Returns the objective value and writes the gradient into `grad`.
using ValueAndGradient = std::function<double(std::span<const double>, std::span<double>)>;

namespace detail {

inline double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

struct LineSearchState {
    std::vector<double> x;     // trial point buffer
    std::vector<double> grad;  // gradient at trial point
    double f = 0.0;
    double dphi = 0.0;
    std::size_t evals = 0;

    // global best across all evaluations, for line_search_failure recovery
    std::vector<double> best_x;
    std::vector<double> best_grad;
    double best_f = 0.0;
};

}  // namespace detail

// Limited-memory BFGS with a strong Wolfe line search (c1 = 1e-4, c2 = 0.9).
// Terminates when the gradient max-norm drops below the tolerance, the
// iteration cap is reached, or a line search fails; on failure the best
// iterate seen so far is returned.
inline MinimizeResult minimize(const ValueAndGradient& fn, std::vector<double> init,
                               const MinimizeOptions& opts = {}) {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    const std::size_t n = init.size();
    if (opts.memory == 0) throw ValidationError("lbfgs memory must be >= 1");

    std::vector<double> x = std::move(init);
    std::vector<double> g(n, 0.0);
    double f = fn(x, g);
    if (!std::isfinite(f)) throw NumericalError("objective not finite at the initial point");

    MinimizeResult result;
    result.loss_history.push_back(f);
    if (detail::max_norm(g) < opts.gradient_tolerance) {
        result.x = std::move(x);
        result.loss = f;
        result.iterations = 0;
        result.reason = Termination::gradient_tolerance;
        return result;
    }

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;
    std::vector<double> direction(n), q(n), alpha(opts.memory);
    std::vector<double> x_new(n), g_new(n);

    std::vector<double> best_x = x;
    std::vector<double> best_g = g;
    double best_f = f;

    result.reason = Termination::max_iterations;
    for (std::size_t iter = 1; iter <= opts.max_iterations; ++iter) {
        // two-loop recursion
        q = g;
        const std::size_t h = s_hist.size();
        for (std::size_t k = h; k-- > 0;) {
            alpha[k] = rho_hist[k] * detail::dot(s_hist[k], q);
            for (std::size_t i = 0; i < n; ++i) q[i] -= alpha[k] * y_hist[k][i];
        }
        if (h > 0) {
            const double gamma = detail::dot(s_hist[h - 1], y_hist[h - 1]) /
                                 detail::dot(y_hist[h - 1], y_hist[h - 1]);
            for (double& v : q) v *= gamma;
        }
        for (std::size_t k = 0; k < h; ++k) {
            const double beta = rho_hist[k] * detail::dot(y_hist[k], q);
            for (std::size_t i = 0; i < n; ++i) q[i] += s_hist[k][i] * (alpha[k] - beta);
        }
        for (std::size_t i = 0; i < n; ++i) direction[i] = -q[i];

        double dphi0 = detail::dot(g, direction);
        if (!(dphi0 < 0.0)) {
            // fall back to steepest descent if the history is unusable
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t i = 0; i < n; ++i) direction[i] = -g[i];
            dphi0 = detail::dot(g, direction);
            if (!(dphi0 < 0.0)) {
                result.reason = Termination::gradient_tolerance;
                break;
            }
        }

        // strong Wolfe search for a step along `direction`
        auto eval = [&](double step) -> double {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * direction[i];
            const double fv = fn(x_new, g_new);
            if (std::isfinite(fv) && fv < best_f) {
                best_f = fv;
                best_x = x_new;
                best_g = g_new;
            }
            return fv;
        };

        double step_lo = 0.0, f_lo = f, dphi_lo = dphi0;
        double step_hi = 0.0, f_hi = 0.0;
        double step = 1.0;
        double f_prev = f, dphi_prev = dphi0, step_prev = 0.0;
        std::size_t evals = 0;
        bool zooming = false;
        bool accepted = false;
        double accepted_f = 0.0;

        while (evals < opts.max_line_search_steps) {
            const double fv = eval(step);
            ++evals;
            const double dphi = detail::dot(g_new, direction);
            if (!zooming) {
                if (!std::isfinite(fv) || fv > f + c1 * step * dphi0 ||
                    (evals > 1 && fv >= f_prev)) {
                    step_lo = step_prev;
                    f_lo = f_prev;
                    dphi_lo = dphi_prev;
                    step_hi = step;
                    f_hi = fv;
                    zooming = true;
                } else if (std::abs(dphi) <= -c2 * dphi0) {
                    accepted = true;
                    accepted_f = fv;
                    break;
                } else if (dphi >= 0.0) {
                    step_lo = step;
                    f_lo = fv;
                    dphi_lo = dphi;
                    step_hi = step_prev;
                    f_hi = f_prev;
                    zooming = true;
                } else {
                    step_prev = step;
                    f_prev = fv;
                    dphi_prev = dphi;
                    step *= 2.0;
                    continue;
                }
                // fall through into zoom with the bracket set above
            } else {
                if (!std::isfinite(fv) || fv > f + c1 * step * dphi0 || fv >= f_lo) {
                    step_hi = step;
                    f_hi = fv;
                } else {
                    if (std::abs(dphi) <= -c2 * dphi0) {
                        accepted = true;
                        accepted_f = fv;
                        break;
                    }
                    if (dphi * (step_hi - step_lo) >= 0.0) {
                        step_hi = step_lo;
                        f_hi = f_lo;
                    }
                    step_lo = step;
                    f_lo = fv;
                    dphi_lo = dphi;
                }
            }
            // next zoom trial: quadratic interpolation safeguarded by bisection
            const double span = step_hi - step_lo;
            double trial = step_lo - 0.5 * dphi_lo * span * span /
                                         (f_hi - f_lo - dphi_lo * span);
            if (!std::isfinite(trial) || trial <= std::min(step_lo, step_hi) ||
                trial >= std::max(step_lo, step_hi)) {
                trial = step_lo + 0.5 * span;
            }
            const double lo = std::min(step_lo, step_hi), hi = std::max(step_lo, step_hi);
            trial = std::clamp(trial, lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo));
            if (std::abs(span) < 1e-16 || !std::isfinite(trial)) break;
            step = trial;
        }

        if (!accepted) {
            result.x = std::move(best_x);
            result.loss = best_f;
            result.iterations = iter - 1;
            result.reason = Termination::line_search_failure;
            result.loss_history.push_back(best_f);
            return result;
        }

        // accept the iterate, update curvature history
        std::vector<double> s(n), yv(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            yv[i] = g_new[i] - g[i];
        }
        const double sy = detail::dot(s, yv);
        if (sy > 1e-12 * std::sqrt(detail::dot(s, s)) * std::sqrt(detail::dot(yv, yv))) {
            if (s_hist.size() == opts.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(yv));
            rho_hist.push_back(1.0 / sy);
        }
        x.swap(x_new);
        g.swap(g_new);
        f = accepted_f;
        result.loss_history.push_back(f);
        result.iterations = iter;
        if (detail::max_norm(g) < opts.gradient_tolerance) {
            result.reason = Termination::gradient_tolerance;
            break;
        }
    }

    result.x = std::move(x);
    result.loss = f;
    return result;
}

}  // namespace csl
