#pragma once

#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "csl/config.hpp"
#include "csl/data.hpp"
#include "csl/rng.hpp"

namespace csl {

// Synthetic social-graph generator: hidden binary classes, class-conditional
// word emissions, and M homophilous relation graphs. Stands in for the
// private production dataset so the full pipeline is exercisable end to end.

struct SynthGraphSpec {
    std::string name;
    double mean_out_degree = 10.0;
    double homophily = 0.7;          // chance an out-edge targets a same-class node
    bool binary_weights = true;      // otherwise 1 + geometric(geometric_p) counts
    double geometric_p = 0.5;
};

struct SynthConfig {
    std::size_t n_nodes = 6000;
    std::size_t vocab_size = 2600;
    std::size_t signal_words_per_class = 80;
    double emission_strength = 6.0;  // own-class signal words are (1+strength) x as likely
    double doc_length_mean = 90.0;
    double doc_length_dispersion = 0.35;  // log-spread half-width of the length rate
    double positive_prior = 0.35;
    double labeled_fraction = 100.0 / 6000.0;
    std::uint64_t seed = 1;
    std::vector<SynthGraphSpec> graphs = default_graphs();

    // A dense binary-weight follow-like graph plus two sparser count-weighted
    // graphs with lower homophily, mirroring the production graph structure.
    static std::vector<SynthGraphSpec> default_graphs() {
        return {
            {"follow", 25.0, 0.85, true, 0.5},
            {"mention", 6.0, 0.65, false, 0.5},
            {"retweet", 4.0, 0.60, false, 0.5},
        };
    }

    static SynthConfig from_flat(const FlatConfig& cfg) {
        SynthConfig s;
        s.n_nodes = static_cast<std::size_t>(cfg.get_int("n_nodes", 6000));
        s.vocab_size = static_cast<std::size_t>(cfg.get_int("vocab_size", 2600));
        s.signal_words_per_class =
            static_cast<std::size_t>(cfg.get_int("signal_words_per_class", 80));
        s.emission_strength = cfg.get_double("emission_strength", s.emission_strength);
        s.doc_length_mean = cfg.get_double("doc_length_mean", s.doc_length_mean);
        s.doc_length_dispersion = cfg.get_double("doc_length_dispersion", s.doc_length_dispersion);
        s.positive_prior = cfg.get_double("positive_prior", s.positive_prior);
        s.labeled_fraction = cfg.get_double("labeled_fraction", s.labeled_fraction);
        s.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
        const auto names = cfg.get_list("graphs", {"follow", "mention", "retweet"});
        s.graphs.clear();
        const auto defaults = default_graphs();
        for (const auto& name : names) {
            SynthGraphSpec spec;
            spec.name = name;
            for (const auto& d : defaults) {
                if (d.name == name) spec = d;
            }
            spec.mean_out_degree = cfg.get_double(name + ".mean_out_degree", spec.mean_out_degree);
            spec.homophily = cfg.get_double(name + ".homophily", spec.homophily);
            const std::string weights = cfg.get_string(name + ".weights",
                                                       spec.binary_weights ? "binary" : "geometric");
            if (weights == "binary") {
                spec.binary_weights = true;
            } else if (weights == "geometric") {
                spec.binary_weights = false;
            } else {
                throw ValidationError("graph \"" + name + "\": unknown weight kind \"" + weights +
                                      "\"");
            }
            spec.geometric_p = cfg.get_double(name + ".geometric_p", spec.geometric_p);
            s.graphs.push_back(std::move(spec));
        }
        return s;
    }
};

inline std::vector<std::string> validate_synth_config(const SynthConfig& cfg) {
    std::vector<std::string> report;
    if (cfg.n_nodes < 4) report.push_back("n_nodes must be >= 4");
    if (cfg.vocab_size < 2 * cfg.signal_words_per_class + 1) {
        report.push_back("vocab_size must exceed both signal blocks");
    }
    if (!(cfg.emission_strength >= 0.0)) report.push_back("emission_strength must be >= 0");
    if (!(cfg.doc_length_mean >= 1.0)) report.push_back("doc_length_mean must be >= 1");
    if (!(cfg.positive_prior > 0.0 && cfg.positive_prior < 1.0)) {
        report.push_back("positive_prior must lie strictly inside (0, 1)");
    }
    if (!(cfg.labeled_fraction > 0.0 && cfg.labeled_fraction <= 1.0)) {
        report.push_back("labeled_fraction must lie in (0, 1]");
    }
    for (const auto& g : cfg.graphs) {
        if (!(g.homophily >= 0.0 && g.homophily <= 1.0)) {
            report.push_back("graph \"" + g.name + "\": homophily must lie in [0, 1]");
        }
        if (g.mean_out_degree >= static_cast<double>(cfg.n_nodes)) {
            report.push_back("graph \"" + g.name + "\": infeasible mean out-degree >= n_nodes");
        }
        if (!(g.mean_out_degree >= 0.0)) {
            report.push_back("graph \"" + g.name + "\": mean out-degree must be >= 0");
        }
        if (!g.binary_weights && !(g.geometric_p > 0.0 && g.geometric_p <= 1.0)) {
            report.push_back("graph \"" + g.name + "\": geometric_p must lie in (0, 1]");
        }
    }
    return report;
}

struct SynthData {
    std::vector<std::string> ids;
    std::vector<std::string> documents;
    Multigraph graph;
    PartialLabels labels;          // the revealed subset
    std::vector<Label> truth;      // hidden ground truth for every node
};

inline SynthData generate(const SynthConfig& cfg) {
    {
        const auto report = validate_synth_config(cfg);
        if (!report.empty()) {
            std::string msg = "invalid synthetic config:";
            for (const auto& line : report) msg += "\n  " + line;
            throw ValidationError(msg);
        }
    }
    Rng rng(cfg.seed);
    const std::size_t n = cfg.n_nodes;
    SynthData data;

    // ids, zero padded so lexicographic order equals numeric order
    std::size_t width = 1;
    for (std::size_t v = n - 1; v >= 10; v /= 10) ++width;
    data.ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "n%0*zu", static_cast<int>(width), i);
        data.ids.emplace_back(buf);
    }

    // hidden classes with an exact positive count
    const std::size_t n_pos = std::max<std::size_t>(
        1, std::min<std::size_t>(n - 1, static_cast<std::size_t>(std::llround(
                                            cfg.positive_prior * static_cast<double>(n)))));
    std::vector<std::uint32_t> node_order(n);
    for (std::size_t i = 0; i < n; ++i) node_order[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(node_order);
    data.truth.assign(n, Label::negative);
    for (std::size_t i = 0; i < n_pos; ++i) data.truth[node_order[i]] = Label::positive;

    std::vector<std::uint32_t> class_members[2];
    for (std::size_t i = 0; i < n; ++i) {
        class_members[data.truth[i] == Label::positive ? 1 : 0].push_back(
            static_cast<std::uint32_t>(i));
    }

    // documents: class-conditional unigram mixture, signal block upweighted
    const std::size_t s = cfg.signal_words_per_class;
    const double strength = cfg.emission_strength;
    const double signal_mass = static_cast<double>(s) * (1.0 + strength);
    const double total_mass = signal_mass + static_cast<double>(cfg.vocab_size - s);
    const double disp = cfg.doc_length_dispersion;
    const double disp_norm = disp > 0.0 ? std::sinh(disp) / disp : 1.0;
    data.documents.reserve(n);
    std::string doc;
    char word[32];
    for (std::size_t i = 0; i < n; ++i) {
        const bool positive = data.truth[i] == Label::positive;
        const std::size_t own_block = positive ? 0 : s;  // own signal word range start
        double rate = cfg.doc_length_mean;
        if (disp > 0.0) rate *= std::exp(rng.uniform(-disp, disp)) / disp_norm;
        const std::size_t length = std::max<std::uint64_t>(1, rng.poisson(rate));
        doc.clear();
        for (std::size_t t = 0; t < length; ++t) {
            std::size_t w;
            if (rng.uniform01() * total_mass < signal_mass) {
                w = own_block + static_cast<std::size_t>(rng.uniform_int(s));
            } else {
                // uniform over everything except the own signal block
                w = static_cast<std::size_t>(rng.uniform_int(cfg.vocab_size - s));
                if (w >= own_block) w += s;
            }
            std::snprintf(word, sizeof(word), "w%zu", w);
            if (!doc.empty()) doc += ' ';
            doc += word;
        }
        data.documents.push_back(doc);
    }

    // relation graphs with per-edge homophily
    data.graph.n_nodes = n;
    for (const auto& spec : cfg.graphs) {
        RelationGraph g;
        g.name = spec.name;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t degree =
                std::min<std::uint64_t>(rng.poisson(spec.mean_out_degree), n - 1);
            std::set<std::uint32_t> chosen;
            std::size_t attempts = 0;
            while (chosen.size() < degree && attempts < 20 * degree + 100) {
                ++attempts;
                const bool same = rng.bernoulli(spec.homophily);
                const bool i_positive = data.truth[i] == Label::positive;
                const auto& members = class_members[(i_positive == same) ? 1 : 0];
                if (members.empty() || (same && members.size() < 2)) continue;
                const std::uint32_t target =
                    members[static_cast<std::size_t>(rng.uniform_int(members.size()))];
                if (target == i) continue;
                if (!chosen.insert(target).second) continue;
                double weight = 1.0;
                if (!spec.binary_weights) {
                    weight = 1.0 + static_cast<double>(rng.geometric(spec.geometric_p));
                }
                g.edges.push_back({static_cast<std::uint32_t>(i), target, weight});
            }
        }
        data.graph.graphs.push_back(std::move(g));
    }

    // reveal a stratified subset of the labels
    const std::size_t want = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(cfg.labeled_fraction * static_cast<double>(n))));
    std::size_t want_pos = static_cast<std::size_t>(std::llround(
        static_cast<double>(want) * static_cast<double>(n_pos) / static_cast<double>(n)));
    want_pos = std::min(std::max<std::size_t>(want_pos, 1), std::min(n_pos, want - 1));
    const std::size_t want_neg = std::min(want - want_pos, n - n_pos);

    data.labels.value.assign(n, Label::unlabeled);
    std::vector<std::uint32_t> pos_pool = class_members[1];
    std::vector<std::uint32_t> neg_pool = class_members[0];
    rng.shuffle(pos_pool);
    rng.shuffle(neg_pool);
    for (std::size_t i = 0; i < want_pos; ++i) data.labels.value[pos_pool[i]] = Label::positive;
    for (std::size_t i = 0; i < want_neg; ++i) data.labels.value[neg_pool[i]] = Label::negative;

    return data;
}

}  // namespace csl
