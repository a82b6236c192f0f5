#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "csl/data.hpp"
#include "csl/io.hpp"
#include "csl/lbfgs.hpp"
#include "csl/objectives.hpp"
#include "csl/relational.hpp"

namespace csl {

struct FitResult {
    ModelParams params;
    double loss = 0.0;
    std::size_t iterations = 0;
    Termination reason = Termination::max_iterations;
    std::vector<double> loss_history;
};

inline MinimizeOptions minimize_options(const Hyperparams& hp) {
    MinimizeOptions opts;
    opts.max_iterations = hp.max_iterations;
    opts.gradient_tolerance = hp.gradient_tolerance;
    opts.memory = hp.lbfgs_memory;
    return opts;
}

// Core learning procedure over a prepared training view: parameters start at
// zero (the documented initialization; tests may override) and the chosen
// objective is minimized by L-BFGS.
inline FitResult fit_view(const ObjectiveData& data, const Hyperparams& hp,
                          ObjectiveKind objective,
                          const std::optional<ModelParams>& init = std::nullopt) {
    if (objective != ObjectiveKind::er && !(hp.lambda > 0.0)) {
        throw ValidationError(
            "lambda must be > 0: the objective is strictly convex only for positive lambda");
    }
    for (const auto& issue : validate_hyperparams(hp)) {
        if (objective == ObjectiveKind::er && issue.find("lambda") != std::string::npos) {
            continue;  // ER has no L2 term; lambda is unused there
        }
        throw ValidationError(issue);
    }

    const SparseMatrix& X = *data.X;
    const std::span<const RelationalBlock> blocks = data.blocks;
    const std::size_t J = X.cols();
    const std::size_t M = blocks.size();

    ModelParams work(J, M);
    std::vector<double> x0((M + 1) * J, 0.0);
    if (init) {
        const auto issues = validate_params(*init, J, M);
        if (!issues.empty()) throw ValidationError(issues.front());
        x0 = init->w;
    }

    auto value_and_grad = [&](std::span<const double> w, std::span<double> grad) -> double {
        work.w.assign(w.begin(), w.end());
        return objective_value_and_gradient(objective, work, data, hp, grad);
    };

    MinimizeResult r = minimize(value_and_grad, std::move(x0), minimize_options(hp));

    FitResult fit;
    fit.params = ModelParams(J, M);
    fit.params.w = std::move(r.x);
    fit.loss = r.loss;
    fit.iterations = r.iterations;
    fit.reason = r.reason;
    fit.loss_history = std::move(r.loss_history);
    return fit;
}

inline FitResult fit_with_blocks(const SparseMatrix& X, std::span<const RelationalBlock> blocks,
                                 const PartialLabels& Y, const Hyperparams& hp,
                                 ObjectiveKind objective,
                                 const std::optional<ModelParams>& init = std::nullopt) {
    return fit_view(ObjectiveData::from_labels(X, blocks, Y, hp), hp, objective, init);
}

// Algorithm entry point: validate, build the relational blocks once, then learn.
inline FitResult fit(const SparseMatrix& X, const Multigraph& G, const PartialLabels& Y,
                     const Hyperparams& hp, ObjectiveKind objective,
                     const std::optional<ModelParams>& init = std::nullopt) {
    auto report = validate_dataset(X, G, Y);
    if (!report.empty()) {
        std::string msg = "invalid dataset:";
        for (const auto& line : report) msg += "\n  " + line;
        throw ValidationError(msg);
    }
    const std::vector<RelationalBlock> blocks = build_relational_blocks(X, G);
    return fit_with_blocks(X, blocks, Y, hp, objective, init);
}

// ---------------------------------------------------------------------------
// Versioned model file. `supervised` is canonicalized to csl with beta = 0 so
// the two spellings of the same objective produce identical files.

struct Model {
    ObjectiveKind objective = ObjectiveKind::csl;
    Hyperparams hp;
    double prior = 0.5;
    std::string vocabulary_ref;  // path or "-" when not tied to a vocabulary file
    std::vector<std::string> graph_names;
    ModelParams params;
};

inline void write_model(std::ostream& out, const Model& model) {
    ObjectiveKind kind = model.objective;
    double beta = model.hp.beta;
    if (kind == ObjectiveKind::supervised) {
        kind = ObjectiveKind::csl;
        beta = 0.0;
    }
    out << "csl-model 1\n";
    out << "objective\t" << to_string(kind) << '\n';
    out << "lambda\t" << format_double(model.hp.lambda) << '\n';
    out << "beta\t" << format_double(beta) << '\n';
    out << "normalize_unlabeled\t" << (model.hp.normalize_unlabeled ? 1 : 0) << '\n';
    out << "full_entropy\t" << (model.hp.er_full_entropy ? 1 : 0) << '\n';
    out << "prior\t" << format_double(model.prior) << '\n';
    out << "vocabulary\t" << (model.vocabulary_ref.empty() ? "-" : model.vocabulary_ref) << '\n';
    out << "features\t" << model.params.n_features << '\n';
    out << "graphs\t" << model.graph_names.size() << '\n';
    for (const auto& name : model.graph_names) out << "graph\t" << name << '\n';
    out << "weights\t" << model.params.w.size() << '\n';
    for (double w : model.params.w) out << format_double(w) << '\n';
}

inline Model read_model(std::istream& in, const std::string& source = "<model>") {
    auto fail = [&](const std::string& why) -> ValidationError {
        return ValidationError(source + ": " + why);
    };
    std::string line;
    if (!std::getline(in, line) || line != "csl-model 1") {
        throw fail("expected header \"csl-model 1\"");
    }
    Model m;
    auto next_field = [&](const std::string& key) -> std::string {
        if (!std::getline(in, line)) throw fail("truncated file (expected " + key + ")");
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.substr(0, tab) != key) {
            throw fail("expected \"" + key + "\", got \"" + line + "\"");
        }
        return line.substr(tab + 1);
    };
    m.objective = objective_from_string(next_field("objective"));
    m.hp.lambda = detail::parse_double_field(next_field("lambda"), source);
    m.hp.beta = detail::parse_double_field(next_field("beta"), source);
    m.hp.normalize_unlabeled = next_field("normalize_unlabeled") == "1";
    m.hp.er_full_entropy = next_field("full_entropy") == "1";
    m.prior = detail::parse_double_field(next_field("prior"), source);
    m.vocabulary_ref = next_field("vocabulary");
    if (m.vocabulary_ref == "-") m.vocabulary_ref.clear();
    const auto J = static_cast<std::size_t>(
        detail::parse_double_field(next_field("features"), source));
    const auto M = static_cast<std::size_t>(
        detail::parse_double_field(next_field("graphs"), source));
    for (std::size_t i = 0; i < M; ++i) m.graph_names.push_back(next_field("graph"));
    const auto n_weights = static_cast<std::size_t>(
        detail::parse_double_field(next_field("weights"), source));
    if (n_weights != (M + 1) * J) throw fail("weight count does not match (M+1)*J");
    m.params = ModelParams(J, M);
    for (std::size_t i = 0; i < n_weights; ++i) {
        if (!std::getline(in, line)) throw fail("truncated weight list");
        m.params.w[i] = detail::parse_double_field(line, source);
    }
    return m;
}

inline void write_model_file(const std::string& path, const Model& model) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write \"" + path + "\"");
    write_model(out, model);
}

inline Model read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open \"" + path + "\"");
    return read_model(in, path);
}

}  // namespace csl
