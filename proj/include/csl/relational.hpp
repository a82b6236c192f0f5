#pragma once

#include <span>
#include <string>
#include <vector>

#include "csl/data.hpp"
#include "csl/sparse.hpp"

namespace csl {

// Per-graph neighbor-aggregated features: row i holds the weighted average of
// the feature rows of i's out-neighbors. Nodes without out-edges get a zero
// row, which contributes nothing to the extended score.
struct RelationalBlock {
    std::string graph_name;
    SparseMatrix pi;
};

inline RelationalBlock aggregate_neighbors(const SparseMatrix& X, const RelationGraph& graph) {
    const std::size_t n = X.rows();
    const std::size_t J = X.cols();

    // out-edges bucketed per source, preserving edge-list order so the
    // accumulation order is reproducible
    std::vector<std::vector<const WeightedEdge*>> out(n);
    for (const auto& e : graph.edges) out[e.source].push_back(&e);

    std::vector<std::vector<SparseEntry>> rows(n);
    std::vector<double> acc(J, 0.0);
    std::vector<std::uint32_t> touched;
    for (std::size_t i = 0; i < n; ++i) {
        if (out[i].empty()) continue;
        double weight_sum = 0.0;
        touched.clear();
        for (const WeightedEdge* e : out[i]) {
            weight_sum += e->weight;
            const auto cols = X.row_cols(e->target);
            const auto vals = X.row_values(e->target);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (acc[cols[k]] == 0.0) touched.push_back(cols[k]);
                acc[cols[k]] += e->weight * vals[k];
            }
        }
        std::sort(touched.begin(), touched.end());
        rows[i].reserve(touched.size());
        for (std::uint32_t j : touched) {
            if (acc[j] != 0.0) rows[i].push_back({j, acc[j] / weight_sum});
            acc[j] = 0.0;
        }
    }
    return RelationalBlock{graph.name, SparseMatrix::from_rows(J, std::move(rows))};
}

// Blocks are label-independent, so they are built once per (X, G) and shared
// across folds and objectives.
inline std::vector<RelationalBlock> build_relational_blocks(const SparseMatrix& X,
                                                            const Multigraph& G) {
    std::vector<RelationalBlock> blocks;
    blocks.reserve(G.n_graphs());
    for (const auto& g : G.graphs) blocks.push_back(aggregate_neighbors(X, g));
    return blocks;
}

// The (M+1) sparse rows the extended linear model dot-products against
// (theta, alpha_1..alpha_M); total dimensionality (M+1) x J.
struct ExtendedRows {
    std::span<const std::uint32_t> self_cols;
    std::span<const double> self_values;
    std::vector<std::span<const std::uint32_t>> relational_cols;
    std::vector<std::span<const double>> relational_values;
};

inline ExtendedRows extended_score_inputs(const SparseMatrix& X,
                                          std::span<const RelationalBlock> blocks,
                                          std::size_t instance) {
    if (instance >= X.rows()) {
        throw ValidationError("instance index " + std::to_string(instance) + " out of range");
    }
    ExtendedRows rows;
    rows.self_cols = X.row_cols(instance);
    rows.self_values = X.row_values(instance);
    for (const auto& block : blocks) {
        rows.relational_cols.push_back(block.pi.row_cols(instance));
        rows.relational_values.push_back(block.pi.row_values(instance));
    }
    return rows;
}

// Self and relational rows concatenated into one (M+1)*J-column matrix; used
// by the affinity kernels so graph configuration affects distances.
inline SparseMatrix concat_extended(const SparseMatrix& X,
                                    std::span<const RelationalBlock> blocks) {
    const std::size_t J = X.cols();
    std::vector<std::vector<SparseEntry>> rows(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        auto cols = X.row_cols(i);
        auto vals = X.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) rows[i].push_back({cols[k], vals[k]});
        for (std::size_t m = 0; m < blocks.size(); ++m) {
            const auto bc = blocks[m].pi.row_cols(i);
            const auto bv = blocks[m].pi.row_values(i);
            const auto offset = static_cast<std::uint32_t>((m + 1) * J);
            for (std::size_t k = 0; k < bc.size(); ++k) {
                rows[i].push_back({offset + bc[k], bv[k]});
            }
        }
    }
    return SparseMatrix::from_rows((blocks.size() + 1) * J, std::move(rows));
}

}  // namespace csl
