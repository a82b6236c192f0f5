// Independent reference implementations used as test oracles. These are kept
// deliberately naive (dense math, brute-force enumeration) and must not share
// code with the library paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Central finite differences of a scalar function.

inline std::vector<double> finite_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
    double step = 1e-6) {
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + step;
        const double hi = f(x);
        x[i] = saved - step;
        const double lo = f(x);
        x[i] = saved;
        grad[i] = (hi - lo) / (2.0 * step);
    }
    return grad;
}

inline double relative_max_error(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(a[i]));
    }
    return diff / scale;
}

// ---------------------------------------------------------------------------
// Naive per-edge neighbor aggregation: dense double loop over the edge list.

struct Edge {
    std::uint32_t source, target;
    double weight;
};

inline std::vector<std::vector<double>> naive_aggregate(
    const std::vector<std::vector<double>>& X_dense, const std::vector<Edge>& edges) {
    const std::size_t n = X_dense.size();
    const std::size_t J = n == 0 ? 0 : X_dense[0].size();
    std::vector<std::vector<double>> pi(n, std::vector<double>(J, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> numerator(J, 0.0);
        double denominator = 0.0;
        for (const auto& e : edges) {
            if (e.source != i) continue;
            denominator += e.weight;
            for (std::size_t j = 0; j < J; ++j) numerator[j] += e.weight * X_dense[e.target][j];
        }
        if (denominator == 0.0) continue;  // isolated node keeps the zero row
        for (std::size_t j = 0; j < J; ++j) pi[i][j] = numerator[j] / denominator;
    }
    return pi;
}

// ---------------------------------------------------------------------------
// Plain gradient-descent L2 logistic regression on dense data, run to a tight
// gradient tolerance. Backtracking halves the step when the loss worsens.

struct GdLogistic {
    std::vector<double> weights;
    std::size_t iterations = 0;
    bool converged = false;
};

inline GdLogistic gd_logistic(const std::vector<std::vector<double>>& X,
                              const std::vector<int>& y, double lambda,
                              double tol = 1e-9, std::size_t max_iter = 5000000) {
    const std::size_t n = X.size();
    const std::size_t d = n == 0 ? 0 : X[0].size();
    std::vector<double> w(d, 0.0);

    auto sigmoid = [](double z) {
        if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
        const double e = std::exp(z);
        return e / (1.0 + e);
    };
    auto grad_of = [&](const std::vector<double>& wv) {
        std::vector<double> g(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double z = 0.0;
            for (std::size_t j = 0; j < d; ++j) z += wv[j] * X[i][j];
            const double delta = sigmoid(z) - y[i];
            for (std::size_t j = 0; j < d; ++j) g[j] += delta * X[i][j];
        }
        for (std::size_t j = 0; j < d; ++j) g[j] += lambda * wv[j];
        return g;
    };

    // constant step below 1/L with L bounded by 0.25 tr(X^T X) + lambda;
    // monotone for a convex objective, no line search needed
    double lipschitz = lambda;
    for (const auto& row : X) {
        for (double v : row) lipschitz += 0.25 * v * v;
    }
    const double step = 1.0 / lipschitz;

    GdLogistic result;
    for (std::size_t it = 0; it < max_iter; ++it) {
        const std::vector<double> g = grad_of(w);
        double g_max = 0.0;
        for (double v : g) g_max = std::max(g_max, std::abs(v));
        if (g_max <= tol) {
            result.converged = true;
            result.iterations = it;
            break;
        }
        for (std::size_t j = 0; j < d; ++j) w[j] -= step * g[j];
    }
    result.weights = std::move(w);
    return result;
}

// ---------------------------------------------------------------------------
// Dense solve of the label-spreading fixed point F = (1-a)(I - a S)^{-1} F0
// by Gaussian elimination with partial pivoting.

inline std::vector<std::vector<double>> spreading_closed_form(
    const std::vector<std::vector<double>>& A, const std::vector<std::vector<double>>& F0,
    double alpha) {
    const std::size_t n = A.size();
    // S = D^{-1/2} A D^{-1/2}, zero rows for isolated nodes
    std::vector<double> dinv(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double deg = 0.0;
        for (double v : A[i]) deg += v;
        dinv[i] = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
    }
    // M = I - alpha S, augmented with (1-alpha) F0
    const std::size_t cols = F0[0].size();
    std::vector<std::vector<double>> M(n, std::vector<double>(n + cols, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            M[i][j] = (i == j ? 1.0 : 0.0) - alpha * dinv[i] * A[i][j] * dinv[j];
        }
        for (std::size_t c = 0; c < cols; ++c) M[i][n + c] = (1.0 - alpha) * F0[i][c];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(M[r][col]) > std::abs(M[pivot][col])) pivot = r;
        }
        std::swap(M[col], M[pivot]);
        if (std::abs(M[col][col]) < 1e-14) throw std::runtime_error("singular spreading system");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = M[r][col] / M[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n + cols; ++c) M[r][c] -= factor * M[col][c];
        }
    }
    std::vector<std::vector<double>> F(n, std::vector<double>(cols, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < cols; ++c) F[i][c] = M[i][n + c] / M[i][i];
    }
    return F;
}

// ---------------------------------------------------------------------------
// Exhaustive Wilcoxon signed-rank: every sign assignment enumerated
// recursively; ranks recomputed here from scratch.

inline double wilcoxon_enumeration(const std::vector<double>& a, const std::vector<double>& b,
                                   bool greater_tail = false) {
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    }
    const std::size_t n = d.size();
    if (n == 0) return 1.0;

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(d[x]) < std::abs(d[y]);
    });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(d[idx[j + 1]]) == std::abs(d[idx[i]])) ++j;
        for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = 1.0 + 0.5 * (i + j);
        i = j + 1;
    }
    double w_obs = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (d[k] > 0.0) w_obs += rank[k];
    }

    std::size_t count_ge = 0, count_le = 0, total = 0;
    std::function<void(std::size_t, double)> walk = [&](std::size_t k, double w) {
        if (k == n) {
            ++total;
            if (w >= w_obs - 1e-9) ++count_ge;
            if (w <= w_obs + 1e-9) ++count_le;
            return;
        }
        walk(k + 1, w);
        walk(k + 1, w + rank[k]);
    };
    walk(0, 0.0);
    const double p_ge = static_cast<double>(count_ge) / static_cast<double>(total);
    const double p_le = static_cast<double>(count_le) / static_cast<double>(total);
    if (greater_tail) return p_ge;
    return std::min(1.0, 2.0 * std::min(p_ge, p_le));
}

}  // namespace oracle
