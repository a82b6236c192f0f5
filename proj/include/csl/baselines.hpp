#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "csl/train.hpp"

namespace csl {

// ---------------------------------------------------------------------------
// Bootstrapping: repeatedly train a supervised model and promote the most
// confident unlabeled predictions into the labeled set. Round n moves the top
// n/rounds fraction of the original unlabeled pool (cumulative); the final
// round consumes the whole pool. The returned model is the one trained in the
// last round.

inline FitResult fit_bootstrap_view(const SparseMatrix& X,
                                    std::span<const RelationalBlock> blocks,
                                    std::vector<LabeledInstance> labeled,
                                    std::vector<std::uint32_t> pool, const Hyperparams& hp,
                                    std::size_t rounds = 10) {
    const std::size_t pool0 = pool.size();
    auto train = [&]() {
        return fit_view(ObjectiveData::from_lists(X, blocks, labeled, {}, hp), hp,
                        ObjectiveKind::supervised);
    };

    FitResult model = train();
    std::size_t moved = 0;
    for (std::size_t n = 1; n <= rounds; ++n) {
        if (n > 1) model = train();
        if (pool.empty()) return model;

        const std::size_t target =
            n == rounds ? pool0
                        : static_cast<std::size_t>(std::llround(
                              static_cast<double>(n) / static_cast<double>(rounds) *
                              static_cast<double>(pool0)));
        if (target <= moved) continue;
        std::size_t take = std::min(target - moved, pool.size());

        struct Scored {
            std::uint32_t index;
            double confidence;
            Label pseudo;
        };
        std::vector<Scored> scored;
        scored.reserve(pool.size());
        for (std::uint32_t i : pool) {
            const double sigma = predict_proba(X, blocks, model.params, i);
            scored.push_back({i, std::max(sigma, 1.0 - sigma),
                              sigma >= 0.5 ? Label::positive : Label::negative});
        }
        std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
            if (a.confidence != b.confidence) return a.confidence > b.confidence;
            return a.index < b.index;  // ties broken by ascending instance index
        });
        for (std::size_t k = 0; k < take; ++k) {
            labeled.push_back({scored[k].index, scored[k].pseudo == Label::positive ? 1.0 : 0.0});
        }
        moved += take;
        std::vector<std::uint32_t> next_pool;
        next_pool.reserve(pool.size() - take);
        for (std::size_t k = take; k < scored.size(); ++k) next_pool.push_back(scored[k].index);
        std::sort(next_pool.begin(), next_pool.end());
        pool = std::move(next_pool);
    }
    return model;
}

inline FitResult fit_bootstrap(const SparseMatrix& X, std::span<const RelationalBlock> blocks,
                               const PartialLabels& Y, const Hyperparams& hp,
                               std::size_t rounds = 10) {
    std::vector<LabeledInstance> labeled;
    for (std::size_t i = 0; i < Y.size(); ++i) {
        if (Y.value[i] != Label::unlabeled) {
            labeled.push_back({static_cast<std::uint32_t>(i),
                               Y.value[i] == Label::positive ? 1.0 : 0.0});
        }
    }
    return fit_bootstrap_view(X, blocks, std::move(labeled), Y.indices_of(Label::unlabeled), hp,
                              rounds);
}

// ---------------------------------------------------------------------------
// Affinity kernels over the extended (self + relational) representation.

struct AffinityMatrix {
    std::size_t n = 0;
    std::string kernel;  // "knn k=7" or "rbf gamma=..."
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::uint32_t> cols;
    std::vector<double> weights;

    std::span<const std::uint32_t> row_cols(std::size_t i) const {
        return {cols.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
    }
    std::span<const double> row_weights(std::size_t i) const {
        return {weights.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
    }
};

namespace detail {

inline AffinityMatrix affinity_from_rows(std::size_t n,
                                         std::vector<std::vector<SparseEntry>>&& rows,
                                         std::string kernel) {
    AffinityMatrix A;
    A.n = n;
    A.kernel = std::move(kernel);
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
        for (const auto& e : row) {
            A.cols.push_back(e.col);
            A.weights.push_back(e.value);
        }
        A.row_ptr.push_back(A.cols.size());
    }
    return A;
}

inline std::vector<double> pairwise_sq_distances_row(const SparseMatrix& X, std::size_t i,
                                                     const std::vector<double>& norms) {
    std::vector<double> d(X.rows());
    for (std::size_t j = 0; j < X.rows(); ++j) {
        const double sq = norms[i] + norms[j] - 2.0 * X.row_dot_row(i, X, j);
        d[j] = std::max(sq, 0.0);
    }
    return d;
}

}  // namespace detail

// Edge weight 1 when j is among i's k nearest neighbors by Euclidean
// distance, symmetrized by max. Distance ties break by ascending index.
inline AffinityMatrix knn_affinity(const SparseMatrix& X_ext, std::size_t k) {
    if (k < 1) throw ValidationError("knn affinity requires k >= 1");
    const std::size_t n = X_ext.rows();
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) norms[i] = X_ext.row_norm_sq(i);

    std::vector<std::vector<std::uint32_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> dist = detail::pairwise_sq_distances_row(X_ext, i, norms);
        std::vector<std::uint32_t> order;
        order.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) order.push_back(static_cast<std::uint32_t>(j));
        }
        const std::size_t kk = std::min(k, order.size());
        std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                          [&](std::uint32_t a, std::uint32_t b) {
                              if (dist[a] != dist[b]) return dist[a] < dist[b];
                              return a < b;
                          });
        order.resize(kk);
        neighbors[i] = std::move(order);
    }

    // symmetrize: edge if either endpoint selected the other
    std::vector<std::vector<std::uint32_t>> adjacency(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t j : neighbors[i]) {
            adjacency[i].push_back(j);
            adjacency[j].push_back(static_cast<std::uint32_t>(i));
        }
    }
    std::vector<std::vector<SparseEntry>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& adj = adjacency[i];
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        for (std::uint32_t j : adj) rows[i].push_back({j, 1.0});
    }
    return detail::affinity_from_rows(n, std::move(rows), "knn k=" + std::to_string(k));
}

// w(i,j) = exp(-gamma ||x_i - x_j||^2) for all pairs, zero diagonal.
inline AffinityMatrix rbf_affinity(const SparseMatrix& X_ext, double gamma) {
    if (!(gamma > 0.0)) throw ValidationError("rbf affinity requires gamma > 0");
    const std::size_t n = X_ext.rows();
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) norms[i] = X_ext.row_norm_sq(i);

    std::vector<std::vector<SparseEntry>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> dist = detail::pairwise_sq_distances_row(X_ext, i, norms);
        rows[i].reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            rows[i].push_back({static_cast<std::uint32_t>(j), std::exp(-gamma * dist[j])});
        }
    }
    return detail::affinity_from_rows(n, std::move(rows), "rbf gamma=" + format_double(gamma));
}

// ---------------------------------------------------------------------------
// Label spreading: F <- alpha S F + (1 - alpha) F0 with S the symmetrically
// normalized affinity and F0 the clamped labeled distribution (column 0 =
// negative, column 1 = positive).

struct LabelSpreadResult {
    std::vector<std::array<double, 2>> F;  // raw converged scores
    bool converged = false;
    std::size_t iterations = 0;

    // Per-node distribution: rows normalized to sum 1; all-zero rows
    // (isolated unlabeled nodes) become uniform.
    std::vector<std::array<double, 2>> distribution() const {
        std::vector<std::array<double, 2>> out(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) {
            const double sum = F[i][0] + F[i][1];
            out[i] = sum > 0.0 ? std::array<double, 2>{F[i][0] / sum, F[i][1] / sum}
                               : std::array<double, 2>{0.5, 0.5};
        }
        return out;
    }

    // argmax prediction; exact ties resolve to negative
    std::vector<Label> predictions() const {
        std::vector<Label> out(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) {
            out[i] = F[i][1] > F[i][0] ? Label::positive : Label::negative;
        }
        return out;
    }
};

inline LabelSpreadResult label_spreading(const AffinityMatrix& A, const PartialLabels& Y,
                                         double alpha = 0.2, std::size_t max_iterations = 1000,
                                         double tol = 1e-6) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("label spreading requires 0 < alpha < 1");
    const std::size_t n = A.n;

    std::vector<double> inv_sqrt_degree(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double degree = 0.0;
        for (double w : A.row_weights(i)) degree += w;
        inv_sqrt_degree[i] = degree > 0.0 ? 1.0 / std::sqrt(degree) : 0.0;
    }

    std::vector<std::array<double, 2>> F0(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        if (Y.value[i] == Label::positive) F0[i][1] = 1.0;
        if (Y.value[i] == Label::negative) F0[i][0] = 1.0;
    }

    LabelSpreadResult result;
    result.F = F0;
    std::vector<std::array<double, 2>> next(n);
    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        double max_change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::array<double, 2> acc = {0.0, 0.0};
            const auto cols = A.row_cols(i);
            const auto ws = A.row_weights(i);
            for (std::size_t e = 0; e < cols.size(); ++e) {
                const double s = ws[e] * inv_sqrt_degree[i] * inv_sqrt_degree[cols[e]];
                acc[0] += s * result.F[cols[e]][0];
                acc[1] += s * result.F[cols[e]][1];
            }
            next[i][0] = alpha * acc[0] + (1.0 - alpha) * F0[i][0];
            next[i][1] = alpha * acc[1] + (1.0 - alpha) * F0[i][1];
            max_change = std::max(max_change, std::abs(next[i][0] - result.F[i][0]));
            max_change = std::max(max_change, std::abs(next[i][1] - result.F[i][1]));
        }
        result.F.swap(next);
        result.iterations = iter;
        if (max_change < tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Reference baseline: a classifier whose recall equals its false-positive
// rate has precision = recall = prior, so its F1 is the prior itself.
inline double random_guess_f1(double prior) {
    if (!(prior > 0.0 && prior < 1.0)) {
        throw ValidationError("random guess baseline needs a prior strictly inside (0, 1)");
    }
    return prior;
}

}  // namespace csl
