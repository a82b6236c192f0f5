#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csl/sparse.hpp"

namespace csl {

enum class Label : std::uint8_t { negative = 0, positive = 1, unlabeled = 2 };

struct PartialLabels {
    std::vector<Label> value;

    std::size_t size() const { return value.size(); }

    std::size_t count(Label l) const {
        std::size_t n = 0;
        for (Label v : value) n += (v == l);
        return n;
    }
    std::size_t labeled_count() const { return size() - count(Label::unlabeled); }

    std::vector<std::uint32_t> indices_of(Label l) const {
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (value[i] == l) out.push_back(static_cast<std::uint32_t>(i));
        }
        return out;
    }
};

struct WeightedEdge {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    double weight = 0.0;
};

struct RelationGraph {
    std::string name;
    std::vector<WeightedEdge> edges;
};

// M directed weighted edge sets over one shared node set.
struct Multigraph {
    std::size_t n_nodes = 0;
    std::vector<RelationGraph> graphs;

    std::size_t n_graphs() const { return graphs.size(); }

    // Subset by graph name, preserving the requested order. Throws on unknown names.
    Multigraph select(const std::vector<std::string>& names) const {
        Multigraph out;
        out.n_nodes = n_nodes;
        for (const auto& want : names) {
            bool found = false;
            for (const auto& g : graphs) {
                if (g.name == want) {
                    out.graphs.push_back(g);
                    found = true;
                    break;
                }
            }
            if (!found) throw ValidationError("unknown graph \"" + want + "\"");
        }
        return out;
    }
};

// Self weights (J) followed by M blocks of relational weights (J each),
// stored flat so the optimizer can treat the model as one vector.
struct ModelParams {
    std::size_t n_features = 0;
    std::size_t n_graphs = 0;
    std::vector<double> w;

    ModelParams() = default;
    ModelParams(std::size_t J, std::size_t M)
        : n_features(J), n_graphs(M), w((M + 1) * J, 0.0) {}

    double self(std::size_t j) const { return w[j]; }
    double& self(std::size_t j) { return w[j]; }
    double relational(std::size_t m, std::size_t j) const { return w[(m + 1) * n_features + j]; }
    double& relational(std::size_t m, std::size_t j) { return w[(m + 1) * n_features + j]; }

    std::span<const double> self_block() const { return {w.data(), n_features}; }
    std::span<const double> relational_block(std::size_t m) const {
        return {w.data() + (m + 1) * n_features, n_features};
    }

    std::size_t dim() const { return w.size(); }
};

struct Hyperparams {
    double lambda = 1.0;                  // L2 strength; > 0 required for strict convexity
    double beta = 1.0;                    // unlabeled-regularizer strength; >= 0
    std::size_t max_iterations = 10;
    double gradient_tolerance = 1e-5;
    std::size_t lbfgs_memory = 10;
    bool normalize_unlabeled = true;      // divide the CSL unlabeled term by U
    bool er_full_entropy = false;         // add the (1-sigma)ln(1-sigma) half to ER
    double prior_override = -1.0;         // < 0 means: compute the prior from labels
};

// Reports every invariant violation instead of stopping at the first one.
// An empty report means the dataset is safe for all downstream operations.
inline std::vector<std::string> validate_dataset(const SparseMatrix& X, const Multigraph& G,
                                                 const PartialLabels& Y) {
    std::vector<std::string> report;

    for (std::size_t i = 0; i < X.rows(); ++i) {
        for (double v : X.row_values(i)) {
            if (!std::isfinite(v)) {
                report.push_back("non-finite feature value in row " + std::to_string(i));
                break;
            }
            if (v < 0.0) {
                report.push_back("negative feature value in row " + std::to_string(i));
                break;
            }
        }
    }

    if (G.n_nodes != X.rows()) {
        report.push_back("multigraph node count " + std::to_string(G.n_nodes) +
                         " does not match feature matrix rows " + std::to_string(X.rows()));
    }
    for (const auto& g : G.graphs) {
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto& e : g.edges) {
            if (e.source >= G.n_nodes || e.target >= G.n_nodes) {
                report.push_back("graph \"" + g.name + "\": edge endpoint out of range");
                continue;
            }
            if (e.source == e.target) {
                report.push_back("graph \"" + g.name + "\": self-loop at node " +
                                 std::to_string(e.source));
            }
            if (!std::isfinite(e.weight)) {
                report.push_back("graph \"" + g.name + "\": non-finite edge weight");
            } else if (e.weight <= 0.0) {
                report.push_back("graph \"" + g.name + "\": nonpositive edge weight on edge " +
                                 std::to_string(e.source) + " -> " + std::to_string(e.target));
            }
            if (!seen.insert({e.source, e.target}).second) {
                report.push_back("graph \"" + g.name + "\": duplicate edge " +
                                 std::to_string(e.source) + " -> " + std::to_string(e.target));
            }
        }
    }

    if (Y.size() != X.rows()) {
        report.push_back("label count " + std::to_string(Y.size()) +
                         " does not match feature matrix rows " + std::to_string(X.rows()));
    }
    if (Y.count(Label::positive) == 0) report.push_back("no labeled positives");
    if (Y.count(Label::negative) == 0) report.push_back("no labeled negatives");

    return report;
}

inline std::vector<std::string> validate_params(const ModelParams& p, std::size_t J,
                                                std::size_t M) {
    std::vector<std::string> report;
    if (p.n_features != J || p.n_graphs != M || p.w.size() != (M + 1) * J) {
        report.push_back("parameter dimensions do not match dataset (expected J=" +
                         std::to_string(J) + ", M=" + std::to_string(M) + ")");
    }
    for (double v : p.w) {
        if (!std::isfinite(v)) {
            report.push_back("non-finite model parameter");
            break;
        }
    }
    return report;
}

inline std::vector<std::string> validate_hyperparams(const Hyperparams& hp) {
    std::vector<std::string> report;
    if (!(hp.lambda > 0.0)) report.push_back("lambda must be > 0 (strict convexity requires it)");
    if (!(hp.beta >= 0.0)) report.push_back("beta must be >= 0");
    if (hp.max_iterations == 0) report.push_back("max_iterations must be positive");
    if (!(hp.gradient_tolerance > 0.0)) report.push_back("gradient_tolerance must be positive");
    if (hp.lbfgs_memory == 0) report.push_back("lbfgs_memory must be positive");
    return report;
}

// Instances, graphs and labels loaded together, with the external ids kept
// for file round-trips and reporting.
struct Dataset {
    std::vector<std::string> ids;
    SparseMatrix X;
    Multigraph G;
    PartialLabels Y;
};

}  // namespace csl
