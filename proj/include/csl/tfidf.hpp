#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "csl/errors.hpp"
#include "csl/sparse.hpp"

namespace csl {

// tf = raw term count, idf = ln((1 + n_docs) / (1 + df)) + 1, and the final
// vector is L2-normalized. Vocabulary indices are assigned in lexicographic
// n-gram order so a fitted model is reproducible from the corpus alone.
struct TfidfModel {
    std::vector<std::string> feature_names;             // index -> n-gram
    std::unordered_map<std::string, std::uint32_t> vocabulary;  // n-gram -> index
    std::vector<double> idf;
    std::size_t min_n = 1;
    std::size_t max_n = 1;
    std::size_t min_df = 2;

    std::size_t n_features() const { return feature_names.size(); }
};

namespace detail {

inline void for_each_ngram(const std::vector<std::string>& tokens, std::size_t min_n,
                           std::size_t max_n, const std::function<void(std::string&&)>& fn) {
    for (std::size_t n = min_n; n <= max_n; ++n) {
        if (tokens.size() < n) break;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string gram = tokens[i];
            for (std::size_t k = 1; k < n; ++k) {
                gram += ' ';
                gram += tokens[i + k];
            }
            fn(std::move(gram));
        }
    }
}

}  // namespace detail

inline TfidfModel fit_tfidf(const std::vector<std::vector<std::string>>& corpus,
                            std::size_t min_n = 1, std::size_t max_n = 1,
                            std::size_t min_df = 2) {
    if (corpus.empty()) throw ValidationError("empty corpus");
    if (min_n < 1 || max_n < min_n || max_n > 3) {
        throw ValidationError("ngram range must satisfy 1 <= min_n <= max_n <= 3");
    }

    std::map<std::string, std::size_t> df;  // ordered: defines index assignment
    std::unordered_map<std::string, std::size_t> seen_in_doc;
    for (const auto& doc : corpus) {
        seen_in_doc.clear();
        detail::for_each_ngram(doc, min_n, max_n,
                               [&](std::string&& gram) { seen_in_doc[std::move(gram)] = 1; });
        for (const auto& [gram, _] : seen_in_doc) ++df[gram];
    }

    TfidfModel model;
    model.min_n = min_n;
    model.max_n = max_n;
    model.min_df = min_df;
    const double n_docs = static_cast<double>(corpus.size());
    for (const auto& [gram, count] : df) {
        if (count < min_df) continue;
        const auto index = static_cast<std::uint32_t>(model.feature_names.size());
        model.vocabulary.emplace(gram, index);
        model.feature_names.push_back(gram);
        model.idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    return model;
}

// Out-of-vocabulary n-grams are dropped. Documents with no in-vocabulary
// n-gram come back as the zero vector.
inline std::vector<SparseEntry> transform_tfidf(const std::vector<std::string>& doc,
                                                const TfidfModel& model) {
    std::unordered_map<std::uint32_t, double> counts;
    detail::for_each_ngram(doc, model.min_n, model.max_n, [&](std::string&& gram) {
        const auto it = model.vocabulary.find(gram);
        if (it != model.vocabulary.end()) counts[it->second] += 1.0;
    });

    std::vector<SparseEntry> entries;
    entries.reserve(counts.size());
    for (const auto& [col, count] : counts) {
        entries.push_back({col, count * model.idf[col]});
    }
    std::sort(entries.begin(), entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });

    double norm_sq = 0.0;
    for (const auto& e : entries) norm_sq += e.value * e.value;
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& e : entries) e.value *= inv;
    }
    return entries;
}

inline SparseMatrix transform_corpus(const std::vector<std::vector<std::string>>& corpus,
                                     const TfidfModel& model) {
    std::vector<std::vector<SparseEntry>> rows;
    rows.reserve(corpus.size());
    for (const auto& doc : corpus) rows.push_back(transform_tfidf(doc, model));
    return SparseMatrix::from_rows(model.n_features(), std::move(rows));
}

}  // namespace csl
