#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "csl/data.hpp"
#include "csl/objectives.hpp"

namespace csl {

// ---------------------------------------------------------------------------
// Feature importance: ranking by |weight| within one feature group (the self
// weights or one graph's relational weights). Sign is retained: positive
// weights pull toward the positive label.

struct RankedFeature {
    std::uint32_t feature = 0;
    double weight = 0.0;
};

// group: "self" or a graph name from `graph_names` (position = block index).
inline std::vector<RankedFeature> top_features(const ModelParams& params,
                                               const std::vector<std::string>& graph_names,
                                               const std::string& group, std::size_t k) {
    if (k > params.n_features) {
        throw ValidationError("top_features: k exceeds the number of features");
    }
    std::span<const double> weights;
    if (group == "self") {
        weights = params.self_block();
    } else {
        const auto it = std::find(graph_names.begin(), graph_names.end(), group);
        if (it == graph_names.end()) {
            throw ValidationError("unknown feature group \"" + group + "\"");
        }
        weights = params.relational_block(
            static_cast<std::size_t>(it - graph_names.begin()));
    }
    std::vector<RankedFeature> ranked(params.n_features);
    for (std::size_t j = 0; j < params.n_features; ++j) {
        ranked[j] = {static_cast<std::uint32_t>(j), weights[j]};
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
        const double ma = std::abs(a.weight), mb = std::abs(b.weight);
        if (ma != mb) return ma > mb;
        return a.feature < b.feature;  // ties broken by feature index
    });
    ranked.resize(k);
    return ranked;
}

// ---------------------------------------------------------------------------
// Empirical CDF of one feature among labeled positives and labeled negatives,
// zeros included: one point per distinct value, monotone, ending at 1.

struct CdfSeries {
    std::vector<std::pair<double, double>> points;  // (value, cumulative fraction)
};

struct FeatureCdf {
    std::optional<CdfSeries> positive;
    std::optional<CdfSeries> negative;
    std::vector<std::string> notices;  // e.g. "positive class empty; CDF omitted"
};

namespace detail {

inline CdfSeries empirical_cdf(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    CdfSeries series;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i;
        while (j + 1 < values.size() && values[j + 1] == values[i]) ++j;
        series.points.emplace_back(values[i], static_cast<double>(j + 1) / n);
        i = j + 1;
    }
    return series;
}

}  // namespace detail

inline FeatureCdf feature_cdf(const SparseMatrix& X, const PartialLabels& Y,
                              std::uint32_t feature) {
    if (feature >= X.cols()) throw ValidationError("feature index out of range");
    FeatureCdf out;
    for (Label cls : {Label::positive, Label::negative}) {
        std::vector<double> values;
        for (std::size_t i = 0; i < Y.size(); ++i) {
            if (Y.value[i] != cls) continue;
            double v = 0.0;
            const auto cols = X.row_cols(i);
            const auto vals = X.row_values(i);
            for (std::size_t kk = 0; kk < cols.size(); ++kk) {
                if (cols[kk] == feature) {
                    v = vals[kk];
                    break;
                }
            }
            values.push_back(v);
        }
        if (values.empty()) {
            out.notices.push_back(std::string(cls == Label::positive ? "positive" : "negative") +
                                  " class empty; CDF omitted");
            continue;
        }
        auto series = detail::empirical_cdf(std::move(values));
        (cls == Label::positive ? out.positive : out.negative) = std::move(series);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Population-level label distribution over unlabeled instances, at the 0.5
// decision threshold.

struct PopulationSummary {
    std::size_t n_positive = 0;
    std::size_t n_negative = 0;

    std::size_t total() const { return n_positive + n_negative; }
    double pct_positive() const {
        return total() == 0 ? 0.0 : 100.0 * static_cast<double>(n_positive) /
                                        static_cast<double>(total());
    }
    double pct_negative() const { return total() == 0 ? 0.0 : 100.0 - pct_positive(); }
};

inline PopulationSummary predict_population(const ModelParams& params, const SparseMatrix& X,
                                            std::span<const RelationalBlock> blocks,
                                            std::span<const std::uint32_t> unlabeled) {
    PopulationSummary summary;
    for (std::uint32_t i : unlabeled) {
        if (predict_proba(X, blocks, params, i) >= 0.5) {
            ++summary.n_positive;
        } else {
            ++summary.n_negative;
        }
    }
    return summary;
}

}  // namespace csl
