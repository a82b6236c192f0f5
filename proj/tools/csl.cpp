// Command-line front end for the collective semi-supervised learning toolkit:
//   featurize  documents -> TF-IDF feature matrix + vocabulary
//   train      features + graphs + labels -> model file
//   benchmark  cross-validated method comparison -> report files
//   analyze    model introspection -> importance / CDF / population files
//   synth      synthetic social-graph dataset -> data files
// Exit codes: 0 success, 1 usage, 2 data validation, 3 numerical failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "csl/csl.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw csl::ValidationError("cannot write \"" + path + "\"");
    return out;
}

csl::FlatConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw csl::ValidationError("cannot open \"" + path + "\"");
    return csl::FlatConfig::parse(in, path);
}

struct FeaturizeArgs {
    std::string docs, out_features, out_vocab;
    std::size_t ngram_min = 1, ngram_max = 1, min_df = 2;
    std::string stopwords = "default";  // "default", "none" or a file path
    bool ngrams_before_stopwords = false;
};

int run_featurize(const FeaturizeArgs& args) {
    std::ifstream in(args.docs);
    if (!in) throw csl::ValidationError("cannot open \"" + args.docs + "\"");
    const auto docs = csl::read_documents(in, args.docs);

    csl::FeaturizeOptions opts;
    opts.min_n = args.ngram_min;
    opts.max_n = args.ngram_max;
    opts.min_df = args.min_df;
    opts.ngrams_before_stopword_removal = args.ngrams_before_stopwords;
    std::unordered_set<std::string> file_stopwords;
    if (args.stopwords == "none") {
        opts.use_stopwords = false;
    } else if (args.stopwords != "default") {
        std::ifstream stop_in(args.stopwords);
        if (!stop_in) throw csl::ValidationError("cannot open \"" + args.stopwords + "\"");
        file_stopwords = csl::load_stopwords(stop_in);
        opts.stoplist = &file_stopwords;
    }

    const csl::FeaturizeResult result = csl::featurize_documents(docs, opts);
    {
        auto out = open_output(args.out_features);
        csl::write_feature_table(out, result.ids, result.X);
    }
    {
        auto out = open_output(args.out_vocab);
        csl::write_vocabulary(out, result.model.feature_names, result.model.idf);
    }
    std::cout << "featurized " << docs.size() << " documents into "
              << result.model.n_features() << " features\n";
    return 0;
}

struct TrainArgs {
    std::string features, graphs, labels, out;
    std::string objective = "csl";
    double lambda = 1.0, beta = 1.0;
    std::size_t max_iterations = 10;  // the documented default; raise for hard instances
    double tolerance = 1e-5;
    std::size_t memory = 10;
    bool raw_unlabeled_term = false;
    bool full_entropy = false;
    double prior = -1.0;
    std::string graph_config = "all";
    std::string vocab_ref;
    std::string blocks_cache;
};

csl::Multigraph select_graphs(const csl::Multigraph& G, const std::string& graph_config) {
    if (graph_config == "all") return G;
    if (graph_config == "none") {
        csl::Multigraph none;
        none.n_nodes = G.n_nodes;
        return none;
    }
    return G.select(csl::FlatConfig::split_list(graph_config));
}

std::vector<csl::RelationalBlock> blocks_with_cache(const csl::SparseMatrix& X,
                                                    const csl::Multigraph& G,
                                                    const std::vector<std::string>& ids,
                                                    const std::string& cache_dir) {
    if (cache_dir.empty()) return csl::build_relational_blocks(X, G);
    fs::create_directories(cache_dir);
    std::vector<csl::RelationalBlock> blocks;
    for (const auto& g : G.graphs) {
        const fs::path path = fs::path(cache_dir) / ("blocks_" + g.name + ".tsv");
        if (fs::exists(path)) {
            csl::FeatureTable t = csl::read_feature_table_file(path.string(), X.cols());
            if (t.X.rows() != X.rows()) {
                throw csl::ValidationError("cached block \"" + path.string() +
                                           "\" does not match the feature matrix");
            }
            blocks.push_back({g.name, std::move(t.X)});
        } else {
            blocks.push_back(csl::aggregate_neighbors(X, g));
            auto out = open_output(path.string());
            csl::write_feature_table(out, ids, blocks.back().pi);
        }
    }
    return blocks;
}

int run_train(const TrainArgs& args) {
    const csl::ObjectiveKind kind = csl::objective_from_string(args.objective);
    if (kind != csl::ObjectiveKind::er && !(args.lambda > 0.0)) {
        std::cerr << "error: lambda must be > 0; the loss is strictly convex only for "
                     "positive lambda\n";
        return kExitUsage;
    }

    csl::Dataset data = csl::read_dataset(args.features, args.graphs, args.labels);
    data.G = select_graphs(data.G, args.graph_config);
    {
        const auto report = csl::validate_dataset(data.X, data.G, data.Y);
        if (!report.empty()) {
            std::cerr << "dataset validation failed:\n";
            for (const auto& line : report) std::cerr << "  " << line << '\n';
            return kExitValidation;
        }
    }

    csl::Hyperparams hp;
    hp.lambda = args.lambda;
    hp.beta = kind == csl::ObjectiveKind::supervised ? 0.0 : args.beta;
    hp.max_iterations = args.max_iterations;
    hp.gradient_tolerance = args.tolerance;
    hp.lbfgs_memory = args.memory;
    hp.normalize_unlabeled = !args.raw_unlabeled_term;
    hp.er_full_entropy = args.full_entropy;
    hp.prior_override = args.prior;

    const auto blocks = blocks_with_cache(data.X, data.G, data.ids, args.blocks_cache);
    const auto start = std::chrono::steady_clock::now();
    const csl::FitResult fit = csl::fit_with_blocks(data.X, blocks, data.Y, hp, kind);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    csl::Model model;
    model.objective = kind;
    model.hp = hp;
    model.prior = hp.prior_override >= 0.0 ? hp.prior_override : csl::class_prior(data.Y);
    model.vocabulary_ref = args.vocab_ref;
    for (const auto& g : data.G.graphs) model.graph_names.push_back(g.name);
    model.params = fit.params;
    csl::write_model_file(args.out, model);

    std::cout << "final loss " << csl::format_double(fit.loss) << ", " << fit.iterations
              << " iterations (" << csl::to_string(fit.reason) << "), "
              << csl::format_double(seconds) << " s\n";
    return 0;
}

struct BenchmarkArgs {
    std::string config, features, graphs, labels, out_dir;
    std::size_t threads = 0;
};

int run_benchmark_cmd(const BenchmarkArgs& args) {
    csl::BenchmarkConfig config = csl::BenchmarkConfig::from_flat(load_config(args.config));
    if (args.threads > 0) config.threads = args.threads;
    const csl::Dataset data = csl::read_dataset(args.features, args.graphs, args.labels);

    const csl::BenchmarkReport report = csl::run_benchmark(data, config);

    fs::create_directories(args.out_dir);
    {
        auto out = open_output((fs::path(args.out_dir) / "report.tsv").string());
        csl::write_benchmark_rows(out, report);
    }
    {
        auto out = open_output((fs::path(args.out_dir) / "table.txt").string());
        csl::write_benchmark_table(out, report);
    }

    std::size_t failed = 0;
    for (const auto& cell : report.cells) {
        if (cell.failed) {
            ++failed;
            std::cerr << "cell failed: " << cell.method << "/" << cell.graph_config << "/"
                      << cell.labeled_size << ": " << cell.failure << '\n';
        }
    }
    std::cout << "benchmark wrote " << report.cells.size() << " cells ("
              << report.cells.size() - failed << " ok, " << failed << " failed) to "
              << args.out_dir << '\n';
    if (failed == report.cells.size() && !report.cells.empty()) return kExitNumerical;
    return 0;
}

struct AnalyzeArgs {
    std::string model, features, graphs, labels, vocab, out_dir;
    std::size_t top_k = 15;
};

int run_analyze(const AnalyzeArgs& args) {
    const csl::Model model = csl::read_model_file(args.model);
    csl::Dataset data = csl::read_dataset(args.features, args.graphs, args.labels);
    data.G = data.G.select(model.graph_names);
    if (data.X.cols() != model.params.n_features) {
        throw csl::ValidationError("feature matrix has " + std::to_string(data.X.cols()) +
                                   " columns but the model expects " +
                                   std::to_string(model.params.n_features));
    }

    std::vector<std::string> names(model.params.n_features);
    if (!args.vocab.empty()) {
        std::ifstream in(args.vocab);
        if (!in) throw csl::ValidationError("cannot open \"" + args.vocab + "\"");
        for (const auto& rec : csl::read_vocabulary(in, args.vocab)) {
            if (rec.index < names.size()) names[rec.index] = rec.ngram;
        }
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j].empty()) names[j] = "f" + std::to_string(j);
    }

    bool all_zero = true;
    for (double w : model.params.w) {
        if (w != 0.0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) std::cerr << "warning: all model weights are zero (untrained model?)\n";

    fs::create_directories(args.out_dir);
    const std::size_t k = std::min(args.top_k, model.params.n_features);

    std::vector<std::string> groups = {"self"};
    for (const auto& g : model.graph_names) groups.push_back(g);
    std::vector<csl::RankedFeature> top_self;
    {
        auto out = open_output((fs::path(args.out_dir) / "importance.tsv").string());
        out << "group\trank\tfeature\tngram\tweight\n";
        for (const auto& group : groups) {
            const auto ranked = csl::top_features(model.params, model.graph_names, group, k);
            if (group == "self") top_self = ranked;
            for (std::size_t r = 0; r < ranked.size(); ++r) {
                out << group << '\t' << r + 1 << '\t' << ranked[r].feature << '\t'
                    << names[ranked[r].feature] << '\t' << csl::format_double(ranked[r].weight)
                    << '\n';
            }
        }
    }

    {
        auto out = open_output((fs::path(args.out_dir) / "cdf.tsv").string());
        out << "feature\tngram\tclass\tvalue\tcumulative_fraction\n";
        for (const auto& rf : top_self) {
            const csl::FeatureCdf cdf = csl::feature_cdf(data.X, data.Y, rf.feature);
            for (const auto& notice : cdf.notices) {
                std::cerr << "note: feature " << names[rf.feature] << ": " << notice << '\n';
            }
            auto dump = [&](const char* cls, const std::optional<csl::CdfSeries>& series) {
                if (!series) return;
                for (const auto& [value, fraction] : series->points) {
                    out << rf.feature << '\t' << names[rf.feature] << '\t' << cls << '\t'
                        << csl::format_double(value) << '\t' << csl::format_double(fraction)
                        << '\n';
                }
            };
            dump("pos", cdf.positive);
            dump("neg", cdf.negative);
        }
    }

    {
        const auto blocks = csl::build_relational_blocks(data.X, data.G);
        const auto unlabeled = data.Y.indices_of(csl::Label::unlabeled);
        const csl::PopulationSummary pop =
            csl::predict_population(model.params, data.X, blocks, unlabeled);
        auto out = open_output((fs::path(args.out_dir) / "population.tsv").string());
        out << "label\tcount\tpercent\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.1f", pop.pct_positive());
        out << "pos\t" << pop.n_positive << '\t' << buf << '\n';
        std::snprintf(buf, sizeof(buf), "%.1f", pop.pct_negative());
        out << "neg\t" << pop.n_negative << '\t' << buf << '\n';
    }

    std::cout << "analysis written to " << args.out_dir << '\n';
    return 0;
}

struct SynthArgs {
    std::string config, out_dir;
    long long seed_override = -1;
};

int run_synth(const SynthArgs& args) {
    csl::SynthConfig config = csl::SynthConfig::from_flat(load_config(args.config));
    if (args.seed_override >= 0) config.seed = static_cast<std::uint64_t>(args.seed_override);
    const csl::SynthData data = csl::generate(config);

    // features are produced by `featurize` later; validate against an n x 0 matrix
    const csl::SparseMatrix empty_features = csl::SparseMatrix::from_rows(
        0, std::vector<std::vector<csl::SparseEntry>>(data.ids.size()));
    const auto report = csl::validate_dataset(empty_features, data.graph, data.labels);
    for (const auto& line : report) {
        throw csl::NumericalError("generator produced an invalid dataset: " + line);
    }

    fs::create_directories(args.out_dir);
    {
        auto out = open_output((fs::path(args.out_dir) / "docs.tsv").string());
        for (std::size_t i = 0; i < data.ids.size(); ++i) {
            out << data.ids[i] << '\t' << data.documents[i] << '\n';
        }
    }
    {
        auto out = open_output((fs::path(args.out_dir) / "graphs.tsv").string());
        csl::write_multigraph(out, data.graph, data.ids);
    }
    {
        auto out = open_output((fs::path(args.out_dir) / "labels.tsv").string());
        csl::write_labels(out, data.labels, data.ids);
    }
    {
        // hidden ground truth; consumed only by evaluation harnesses
        auto out = open_output((fs::path(args.out_dir) / "truth.tsv").string());
        for (std::size_t i = 0; i < data.ids.size(); ++i) {
            out << data.ids[i] << '\t'
                << (data.truth[i] == csl::Label::positive ? "pos" : "neg") << '\n';
        }
    }
    std::cout << "generated " << data.ids.size() << " nodes, " << data.graph.n_graphs()
              << " graphs, " << data.labels.labeled_count() << " revealed labels in "
              << args.out_dir << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective semi-supervised learning toolkit"};
    app.require_subcommand(1);

    FeaturizeArgs fz;
    auto* featurize = app.add_subcommand("featurize", "Convert documents to TF-IDF features");
    featurize->add_option("--docs", fz.docs, "documents file (id<TAB>text)")->required();
    featurize->add_option("--out-features", fz.out_features, "output feature matrix")->required();
    featurize->add_option("--out-vocab", fz.out_vocab, "output vocabulary file")->required();
    featurize->add_option("--ngram-min", fz.ngram_min, "smallest n-gram size");
    featurize->add_option("--ngram-max", fz.ngram_max, "largest n-gram size");
    featurize->add_option("--min-df", fz.min_df, "minimum document frequency");
    featurize->add_option("--stopwords", fz.stopwords, "stop-word list: default, none or a file");
    featurize->add_flag("--ngrams-before-stopwords", fz.ngrams_before_stopwords,
                        "form n-grams before stop-word removal");

    TrainArgs tr;
    auto* train = app.add_subcommand("train", "Fit a model");
    train->add_option("--features", tr.features, "feature matrix file")->required();
    train->add_option("--graphs", tr.graphs, "graph edge file")->required();
    train->add_option("--labels", tr.labels, "labels file")->required();
    train->add_option("--out", tr.out, "output model file")->required();
    train->add_option("--objective", tr.objective, "csl, supervised, er or xr");
    train->add_option("--lambda", tr.lambda, "L2 regularization strength");
    train->add_option("--beta", tr.beta, "unlabeled regularization strength");
    train->add_option("--max-iterations", tr.max_iterations, "optimizer iteration cap");
    train->add_option("--tolerance", tr.tolerance, "gradient max-norm tolerance");
    train->add_option("--memory", tr.memory, "L-BFGS history size");
    train->add_flag("--raw-unlabeled-term", tr.raw_unlabeled_term,
                    "do not divide the unlabeled term by U");
    train->add_flag("--full-entropy", tr.full_entropy, "use full binary entropy in ER");
    train->add_option("--prior", tr.prior, "class prior override (default: from labels)");
    train->add_option("--graph-config", tr.graph_config, "all, none, or comma-separated names");
    train->add_option("--vocab-ref", tr.vocab_ref, "vocabulary reference stored in the model");
    train->add_option("--blocks-cache", tr.blocks_cache, "directory for cached relational blocks");

    BenchmarkArgs bm;
    auto* benchmark = app.add_subcommand("benchmark", "Run the cross-validated comparison");
    benchmark->add_option("--config", bm.config, "benchmark config file")->required();
    benchmark->add_option("--features", bm.features, "feature matrix file")->required();
    benchmark->add_option("--graphs", bm.graphs, "graph edge file")->required();
    benchmark->add_option("--labels", bm.labels, "labels file")->required();
    benchmark->add_option("--out-dir", bm.out_dir, "output directory")->required();
    benchmark->add_option("--threads", bm.threads, "worker threads (0 = logical cores)");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Inspect a trained model");
    analyze->add_option("--model", an.model, "model file")->required();
    analyze->add_option("--features", an.features, "feature matrix file")->required();
    analyze->add_option("--graphs", an.graphs, "graph edge file")->required();
    analyze->add_option("--labels", an.labels, "labels file")->required();
    analyze->add_option("--vocab", an.vocab, "vocabulary file for feature names");
    analyze->add_option("--out-dir", an.out_dir, "output directory")->required();
    analyze->add_option("-k,--top-k", an.top_k, "features per ranked list");

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth->add_option("--config", sy.config, "generator config file")->required();
    synth->add_option("--out-dir", sy.out_dir, "output directory")->required();
    synth->add_option("--seed", sy.seed_override, "seed override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (featurize->parsed()) return run_featurize(fz);
        if (train->parsed()) return run_train(tr);
        if (benchmark->parsed()) return run_benchmark_cmd(bm);
        if (analyze->parsed()) return run_analyze(an);
        if (synth->parsed()) return run_synth(sy);
    } catch (const csl::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const csl::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
