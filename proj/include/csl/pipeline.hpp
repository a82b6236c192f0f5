#pragma once

#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "csl/io.hpp"
#include "csl/tfidf.hpp"
#include "csl/tokenize.hpp"

namespace csl {

struct FeaturizeOptions {
    std::size_t min_n = 1;
    std::size_t max_n = 1;
    std::size_t min_df = 2;
    bool use_stopwords = true;
    // Default order: stop-words are removed from the token stream and n-grams
    // are formed afterwards. The alternative forms n-grams over the raw
    // stream, then drops n-grams made up entirely of stop-words.
    bool ngrams_before_stopword_removal = false;
    const std::unordered_set<std::string>* stoplist = nullptr;  // null: bundled list
};

struct FeaturizeResult {
    std::vector<std::string> ids;
    TfidfModel model;
    SparseMatrix X;
};

inline TfidfModel prune_stopword_ngrams(const TfidfModel& model,
                                        const std::unordered_set<std::string>& stoplist) {
    TfidfModel pruned;
    pruned.min_n = model.min_n;
    pruned.max_n = model.max_n;
    pruned.min_df = model.min_df;
    for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
        const std::string& gram = model.feature_names[j];
        bool all_stop = true;
        std::stringstream ss(gram);
        std::string token;
        while (std::getline(ss, token, ' ')) {
            if (!stoplist.count(token)) {
                all_stop = false;
                break;
            }
        }
        if (all_stop) continue;
        const auto index = static_cast<std::uint32_t>(pruned.feature_names.size());
        pruned.vocabulary.emplace(gram, index);
        pruned.feature_names.push_back(gram);
        pruned.idf.push_back(model.idf[j]);
    }
    return pruned;
}

inline FeaturizeResult featurize_documents(const std::vector<Document>& docs,
                                           const FeaturizeOptions& opts = {}) {
    if (docs.empty()) throw ValidationError("empty corpus");
    const std::unordered_set<std::string>& stoplist =
        opts.stoplist ? *opts.stoplist : default_stopwords();

    std::vector<std::vector<std::string>> corpus;
    corpus.reserve(docs.size());
    for (const auto& doc : docs) {
        std::vector<std::string> tokens = tokenize(doc.text);
        if (opts.use_stopwords && !opts.ngrams_before_stopword_removal) {
            tokens = remove_stopwords(tokens, stoplist);
        }
        corpus.push_back(std::move(tokens));
    }

    FeaturizeResult result;
    for (const auto& doc : docs) result.ids.push_back(doc.id);
    result.model = fit_tfidf(corpus, opts.min_n, opts.max_n, opts.min_df);
    if (opts.use_stopwords && opts.ngrams_before_stopword_removal) {
        result.model = prune_stopword_ngrams(result.model, stoplist);
    }
    result.X = transform_corpus(corpus, result.model);
    return result;
}

}  // namespace csl
