#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "csl/data.hpp"
#include "csl/relational.hpp"

namespace csl {

enum class ObjectiveKind { csl, er, xr, supervised };

inline std::string to_string(ObjectiveKind k) {
    switch (k) {
        case ObjectiveKind::csl: return "csl";
        case ObjectiveKind::er: return "er";
        case ObjectiveKind::xr: return "xr";
        case ObjectiveKind::supervised: return "supervised";
    }
    return "?";
}

inline ObjectiveKind objective_from_string(const std::string& s) {
    if (s == "csl") return ObjectiveKind::csl;
    if (s == "er") return ObjectiveKind::er;
    if (s == "xr") return ObjectiveKind::xr;
    if (s == "supervised") return ObjectiveKind::supervised;
    throw ValidationError("unknown objective \"" + s + "\" (expected csl, er, xr or supervised)");
}

// Scores are clamped to +-35 before exponentiation, and ln(sigma) is computed
// in log-sum form; sigma(f) then stays strictly inside (0, 1) and ln(sigma)
// never underflows to -inf.
constexpr double kScoreClamp = 35.0;

inline double clamp_score(double f) { return std::clamp(f, -kScoreClamp, kScoreClamp); }

inline double sigmoid(double f) {
    f = clamp_score(f);
    if (f >= 0.0) {
        const double e = std::exp(-f);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(f);
    return e / (1.0 + e);
}

// ln(sigma(f)); ln(1 - sigma(f)) is log_sigmoid(-f).
inline double log_sigmoid(double f) {
    f = clamp_score(f);
    return f >= 0.0 ? -std::log1p(std::exp(-f)) : f - std::log1p(std::exp(f));
}

// f(x_i, G, Theta): self dot product plus one dot product per graph.
inline double extended_score(const SparseMatrix& X, std::span<const RelationalBlock> blocks,
                             const ModelParams& params, std::size_t instance) {
    double f = X.row_dot(instance, params.self_block());
    for (std::size_t m = 0; m < blocks.size(); ++m) {
        f += blocks[m].pi.row_dot(instance, params.relational_block(m));
    }
    return f;
}

inline double predict_proba(const SparseMatrix& X, std::span<const RelationalBlock> blocks,
                            const ModelParams& params, std::size_t instance) {
    return sigmoid(extended_score(X, blocks, params, instance));
}

// Proportion of positive instances among the labeled ones.
inline double class_prior(const PartialLabels& Y) {
    const std::size_t labeled = Y.labeled_count();
    if (labeled == 0) throw ValidationError("class prior undefined: no labeled instances");
    return static_cast<double>(Y.count(Label::positive)) / static_cast<double>(labeled);
}

struct LabeledInstance {
    std::uint32_t index = 0;
    double y = 0.0;  // 0 or 1
};

// Shared inputs of every objective: which rows are labeled (with y), which
// rows feed the unlabeled regularizer, and the class prior.
struct ObjectiveData {
    const SparseMatrix* X = nullptr;
    std::span<const RelationalBlock> blocks;
    std::vector<LabeledInstance> labeled;      // ascending index: fixed reduction order
    std::vector<std::uint32_t> unlabeled;      // ascending index
    double prior = 0.5;

    static ObjectiveData from_labels(const SparseMatrix& X,
                                     std::span<const RelationalBlock> blocks,
                                     const PartialLabels& Y, const Hyperparams& hp) {
        ObjectiveData d;
        d.X = &X;
        d.blocks = blocks;
        for (std::size_t i = 0; i < Y.size(); ++i) {
            if (Y.value[i] == Label::unlabeled) {
                d.unlabeled.push_back(static_cast<std::uint32_t>(i));
            } else {
                d.labeled.push_back({static_cast<std::uint32_t>(i),
                                     Y.value[i] == Label::positive ? 1.0 : 0.0});
            }
        }
        d.prior = hp.prior_override >= 0.0 ? hp.prior_override : class_prior(Y);
        return d;
    }

    // Explicit training view: which instances are labeled and which feed the
    // unlabeled regularizer. Used by the evaluation protocol, where held-out
    // and unused labeled instances take part in neither list.
    static ObjectiveData from_lists(const SparseMatrix& X,
                                    std::span<const RelationalBlock> blocks,
                                    std::vector<LabeledInstance> labeled,
                                    std::vector<std::uint32_t> unlabeled, const Hyperparams& hp) {
        ObjectiveData d;
        d.X = &X;
        d.blocks = blocks;
        d.labeled = std::move(labeled);
        d.unlabeled = std::move(unlabeled);
        std::sort(d.labeled.begin(), d.labeled.end(),
                  [](const LabeledInstance& a, const LabeledInstance& b) {
                      return a.index < b.index;
                  });
        std::sort(d.unlabeled.begin(), d.unlabeled.end());
        if (hp.prior_override >= 0.0) {
            d.prior = hp.prior_override;
        } else {
            if (d.labeled.empty()) {
                throw ValidationError("class prior undefined: no labeled instances");
            }
            double positives = 0.0;
            for (const auto& li : d.labeled) positives += li.y;
            d.prior = positives / static_cast<double>(d.labeled.size());
        }
        return d;
    }

    std::size_t dim() const { return (blocks.size() + 1) * X->cols(); }
};

namespace detail {

// grad[j] += coef * x_{i,j} across the self block and every relational block.
inline void scatter_instance(const ObjectiveData& d, std::size_t i, double coef,
                             std::span<double> grad) {
    const std::size_t J = d.X->cols();
    d.X->row_axpy(i, coef, grad.first(J));
    for (std::size_t m = 0; m < d.blocks.size(); ++m) {
        d.blocks[m].pi.row_axpy(i, coef, grad.subspan((m + 1) * J, J));
    }
}

inline void scatter_instance_squared(const ObjectiveData& d, std::size_t i, double coef,
                                     std::span<double> out) {
    const std::size_t J = d.X->cols();
    d.X->row_axpy_squared(i, coef, out.first(J));
    for (std::size_t m = 0; m < d.blocks.size(); ++m) {
        d.blocks[m].pi.row_axpy_squared(i, coef, out.subspan((m + 1) * J, J));
    }
}

inline void check_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw NumericalError(std::string("numerical overflow in ") + what);
    }
}

// 1/U when the unlabeled term is normalized, 1 otherwise.
inline double unlabeled_scale(const ObjectiveData& d, const Hyperparams& hp) {
    if (!hp.normalize_unlabeled || d.unlabeled.empty()) return 1.0;
    return 1.0 / static_cast<double>(d.unlabeled.size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSL: labeled cross-entropy + (lambda/2)||Theta||^2 - beta p~ sum_U ln(sigma).
// `supervised` is the same objective with beta pinned to zero.

inline double csl_loss(const ModelParams& params, const ObjectiveData& d, const Hyperparams& hp,
                       bool supervised = false) {
    double loss = 0.0;
    for (const auto& li : d.labeled) {
        const double f = extended_score(*d.X, d.blocks, params, li.index);
        loss -= li.y * log_sigmoid(f) + (1.0 - li.y) * log_sigmoid(-f);
    }
    double reg = 0.0;
    for (double w : params.w) reg += w * w;
    loss += 0.5 * hp.lambda * reg;
    const double beta = supervised ? 0.0 : hp.beta;
    if (beta > 0.0) {
        const double scale = detail::unlabeled_scale(d, hp);
        double unl = 0.0;
        for (std::uint32_t i : d.unlabeled) {
            unl += log_sigmoid(extended_score(*d.X, d.blocks, params, i));
        }
        loss -= beta * d.prior * scale * unl;
    }
    detail::check_finite(loss, "csl_loss");
    return loss;
}

inline void csl_gradient(const ModelParams& params, const ObjectiveData& d, const Hyperparams& hp,
                         std::span<double> grad, bool supervised = false) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& li : d.labeled) {
        const double sigma = predict_proba(*d.X, d.blocks, params, li.index);
        detail::scatter_instance(d, li.index, sigma - li.y, grad);
    }
    for (std::size_t p = 0; p < params.w.size(); ++p) grad[p] += hp.lambda * params.w[p];
    const double beta = supervised ? 0.0 : hp.beta;
    if (beta > 0.0) {
        const double scale = detail::unlabeled_scale(d, hp);
        for (std::uint32_t i : d.unlabeled) {
            const double sigma = predict_proba(*d.X, d.blocks, params, i);
            detail::scatter_instance(d, i, -beta * d.prior * scale * (1.0 - sigma), grad);
        }
    }
    for (double g : grad) detail::check_finite(g, "csl_gradient");
}

// Diagonal of the Hessian: sum_L sigma(1-sigma)x^2 + lambda
// + beta p~ sum_U sigma(1-sigma)x^2. Strictly positive whenever lambda > 0.
inline std::vector<double> csl_curvature_diag(const ModelParams& params, const ObjectiveData& d,
                                              const Hyperparams& hp, bool supervised = false) {
    std::vector<double> diag(params.w.size(), 0.0);
    std::span<double> out(diag);
    for (const auto& li : d.labeled) {
        const double sigma = predict_proba(*d.X, d.blocks, params, li.index);
        detail::scatter_instance_squared(d, li.index, sigma * (1.0 - sigma), out);
    }
    const double beta = supervised ? 0.0 : hp.beta;
    if (beta > 0.0) {
        const double scale = detail::unlabeled_scale(d, hp);
        for (std::uint32_t i : d.unlabeled) {
            const double sigma = predict_proba(*d.X, d.blocks, params, i);
            detail::scatter_instance_squared(d, i, beta * d.prior * scale * sigma * (1.0 - sigma),
                                             out);
        }
    }
    for (auto& v : diag) v += hp.lambda;
    return diag;
}

// ---------------------------------------------------------------------------
// ER: labeled cross-entropy - beta sum_U sigma ln(sigma), as printed (no L2
// term, no 1/U). The optional full-entropy variant adds (1-sigma)ln(1-sigma).

inline double er_loss(const ModelParams& params, const ObjectiveData& d, const Hyperparams& hp) {
    double loss = 0.0;
    for (const auto& li : d.labeled) {
        const double f = extended_score(*d.X, d.blocks, params, li.index);
        loss -= li.y * log_sigmoid(f) + (1.0 - li.y) * log_sigmoid(-f);
    }
    if (hp.beta > 0.0) {
        double unl = 0.0;
        for (std::uint32_t i : d.unlabeled) {
            const double f = extended_score(*d.X, d.blocks, params, i);
            const double sigma = sigmoid(f);
            unl += sigma * log_sigmoid(f);
            if (hp.er_full_entropy) unl += (1.0 - sigma) * log_sigmoid(-f);
        }
        loss -= hp.beta * unl;
    }
    detail::check_finite(loss, "er_loss");
    return loss;
}

inline void er_gradient(const ModelParams& params, const ObjectiveData& d, const Hyperparams& hp,
                        std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& li : d.labeled) {
        const double sigma = predict_proba(*d.X, d.blocks, params, li.index);
        detail::scatter_instance(d, li.index, sigma - li.y, grad);
    }
    if (hp.beta > 0.0) {
        for (std::uint32_t i : d.unlabeled) {
            const double f = extended_score(*d.X, d.blocks, params, i);
            const double sigma = sigmoid(f);
            // d(sigma ln sigma)/df = (ln sigma + 1) sigma (1 - sigma)
            double dent = (log_sigmoid(f) + 1.0) * sigma * (1.0 - sigma);
            if (hp.er_full_entropy) {
                dent += -(log_sigmoid(-f) + 1.0) * sigma * (1.0 - sigma);
            }
            detail::scatter_instance(d, i, -hp.beta * dent, grad);
        }
    }
    for (double g : grad) detail::check_finite(g, "er_gradient");
}

// ---------------------------------------------------------------------------
// XR: labeled cross-entropy + (lambda/2)||Theta||^2 - beta ln(p~ sum_U sigma^2),
// as printed. sum_U sigma^2 > 0 always since sigma is in (0, 1).

inline double xr_loss(const ModelParams& params, const ObjectiveData& d, const Hyperparams& hp) {
    double loss = 0.0;
    for (const auto& li : d.labeled) {
        const double f = extended_score(*d.X, d.blocks, params, li.index);
        loss -= li.y * log_sigmoid(f) + (1.0 - li.y) * log_sigmoid(-f);
    }
    double reg = 0.0;
    for (double w : params.w) reg += w * w;
    loss += 0.5 * hp.lambda * reg;
    if (hp.beta > 0.0 && !d.unlabeled.empty()) {
        double sum_sq = 0.0;
        for (std::uint32_t i : d.unlabeled) {
            const double sigma = predict_proba(*d.X, d.blocks, params, i);
            sum_sq += sigma * sigma;
        }
        loss -= hp.beta * std::log(d.prior * sum_sq);
    }
    detail::check_finite(loss, "xr_loss");
    return loss;
}

inline void xr_gradient(const ModelParams& params, const ObjectiveData& d, const Hyperparams& hp,
                        std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& li : d.labeled) {
        const double sigma = predict_proba(*d.X, d.blocks, params, li.index);
        detail::scatter_instance(d, li.index, sigma - li.y, grad);
    }
    for (std::size_t p = 0; p < params.w.size(); ++p) grad[p] += hp.lambda * params.w[p];
    if (hp.beta > 0.0 && !d.unlabeled.empty()) {
        std::vector<double> sigmas(d.unlabeled.size());
        double sum_sq = 0.0;
        for (std::size_t k = 0; k < d.unlabeled.size(); ++k) {
            sigmas[k] = predict_proba(*d.X, d.blocks, params, d.unlabeled[k]);
            sum_sq += sigmas[k] * sigmas[k];
        }
        for (std::size_t k = 0; k < d.unlabeled.size(); ++k) {
            const double s = sigmas[k];
            detail::scatter_instance(d, d.unlabeled[k],
                                     -hp.beta * 2.0 * s * s * (1.0 - s) / sum_sq, grad);
        }
    }
    for (double g : grad) detail::check_finite(g, "xr_gradient");
}

// ---------------------------------------------------------------------------

inline double objective_value(ObjectiveKind kind, const ModelParams& params,
                              const ObjectiveData& d, const Hyperparams& hp) {
    switch (kind) {
        case ObjectiveKind::csl: return csl_loss(params, d, hp);
        case ObjectiveKind::supervised: return csl_loss(params, d, hp, /*supervised=*/true);
        case ObjectiveKind::er: return er_loss(params, d, hp);
        case ObjectiveKind::xr: return xr_loss(params, d, hp);
    }
    throw ValidationError("unknown objective kind");
}

inline void objective_gradient(ObjectiveKind kind, const ModelParams& params,
                               const ObjectiveData& d, const Hyperparams& hp,
                               std::span<double> grad) {
    switch (kind) {
        case ObjectiveKind::csl: csl_gradient(params, d, hp, grad); return;
        case ObjectiveKind::supervised: csl_gradient(params, d, hp, grad, true); return;
        case ObjectiveKind::er: er_gradient(params, d, hp, grad); return;
        case ObjectiveKind::xr: xr_gradient(params, d, hp, grad); return;
    }
    throw ValidationError("unknown objective kind");
}

// Fused loss + gradient in one pass over the data; the terms are accumulated
// in the same per-instance order as the separate routines, so values agree
// bit for bit with them.
inline double objective_value_and_gradient(ObjectiveKind kind, const ModelParams& params,
                                           const ObjectiveData& d, const Hyperparams& hp,
                                           std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    const bool supervised = kind == ObjectiveKind::supervised;
    const double beta = supervised ? 0.0 : hp.beta;
    double loss = 0.0;

    for (const auto& li : d.labeled) {
        const double f = extended_score(*d.X, d.blocks, params, li.index);
        loss -= li.y * log_sigmoid(f) + (1.0 - li.y) * log_sigmoid(-f);
        detail::scatter_instance(d, li.index, sigmoid(f) - li.y, grad);
    }

    if (kind != ObjectiveKind::er) {
        double reg = 0.0;
        for (double w : params.w) reg += w * w;
        loss += 0.5 * hp.lambda * reg;
        for (std::size_t p = 0; p < params.w.size(); ++p) grad[p] += hp.lambda * params.w[p];
    }

    switch (kind) {
        case ObjectiveKind::csl:
        case ObjectiveKind::supervised:
            if (beta > 0.0) {
                const double scale = detail::unlabeled_scale(d, hp);
                double unl = 0.0;
                for (std::uint32_t i : d.unlabeled) {
                    const double f = extended_score(*d.X, d.blocks, params, i);
                    unl += log_sigmoid(f);
                    detail::scatter_instance(d, i, -beta * d.prior * scale * (1.0 - sigmoid(f)),
                                             grad);
                }
                loss -= beta * d.prior * scale * unl;
            }
            break;
        case ObjectiveKind::er:
            if (beta > 0.0) {
                double unl = 0.0;
                for (std::uint32_t i : d.unlabeled) {
                    const double f = extended_score(*d.X, d.blocks, params, i);
                    const double sigma = sigmoid(f);
                    unl += sigma * log_sigmoid(f);
                    double dent = (log_sigmoid(f) + 1.0) * sigma * (1.0 - sigma);
                    if (hp.er_full_entropy) {
                        unl += (1.0 - sigma) * log_sigmoid(-f);
                        dent += -(log_sigmoid(-f) + 1.0) * sigma * (1.0 - sigma);
                    }
                    detail::scatter_instance(d, i, -beta * dent, grad);
                }
                loss -= beta * unl;
            }
            break;
        case ObjectiveKind::xr:
            if (beta > 0.0 && !d.unlabeled.empty()) {
                std::vector<double> sigmas(d.unlabeled.size());
                double sum_sq = 0.0;
                for (std::size_t k = 0; k < d.unlabeled.size(); ++k) {
                    sigmas[k] = predict_proba(*d.X, d.blocks, params, d.unlabeled[k]);
                    sum_sq += sigmas[k] * sigmas[k];
                }
                loss -= beta * std::log(d.prior * sum_sq);
                for (std::size_t k = 0; k < d.unlabeled.size(); ++k) {
                    const double s = sigmas[k];
                    detail::scatter_instance(d, d.unlabeled[k],
                                             -beta * 2.0 * s * s * (1.0 - s) / sum_sq, grad);
                }
            }
            break;
    }

    detail::check_finite(loss, "objective_value_and_gradient");
    for (double g : grad) detail::check_finite(g, "objective_value_and_gradient");
    return loss;
}

}  // namespace csl
