#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "csl/baselines.hpp"
#include "csl/config.hpp"
#include "csl/parallel.hpp"
#include "csl/rng.hpp"
#include "csl/train.hpp"

namespace csl {

// ---------------------------------------------------------------------------
// Stratified k-fold: per-class round-robin assignment after a seeded shuffle,
// so every fold's class proportion deviates from the global one by less than
// one instance per class.

struct FoldPlan {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::uint32_t>> folds;  // sorted within each fold
    std::vector<int> fold_of;                       // -1 for unlabeled instances
};

inline FoldPlan stratified_kfold(const PartialLabels& Y, std::size_t k, std::uint64_t seed,
                                 bool allow_small_classes = false) {
    if (k < 2) throw ValidationError("stratified k-fold requires k >= 2");
    if (k > Y.labeled_count()) {
        throw ValidationError("k exceeds the number of labeled instances");
    }
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.folds.resize(k);
    plan.fold_of.assign(Y.size(), -1);
    // the round-robin counter continues across classes, balancing fold sizes
    // (and making k = L degrade to leave-one-out)
    std::size_t next_fold = 0;
    for (Label cls : {Label::positive, Label::negative}) {
        std::vector<std::uint32_t> members = Y.indices_of(cls);
        if (members.size() < k && !allow_small_classes) {
            throw ValidationError(std::string("class \"") +
                                  (cls == Label::positive ? "positive" : "negative") +
                                  "\" has fewer than k members");
        }
        Rng rng(seed ^ (cls == Label::positive ? 0x706f73ULL : 0x6e6567ULL));
        rng.shuffle(members);
        for (std::size_t p = 0; p < members.size(); ++p) {
            const std::size_t f = next_fold++ % k;
            plan.folds[f].push_back(members[p]);
            plan.fold_of[members[p]] = static_cast<int>(f);
        }
    }
    for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
    return plan;
}

// ---------------------------------------------------------------------------
// Precision / recall / F1 on boolean label vectors (true = positive class).
// Zero denominators yield 0 so per-fold averaging never fails.

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

inline Metrics precision_recall_f1(const std::vector<bool>& predicted,
                                   const std::vector<bool>& truth) {
    if (predicted.size() != truth.size()) {
        throw ValidationError("prediction and truth vectors differ in length");
    }
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] && truth[i]) ++tp;
        if (predicted[i] && !truth[i]) ++fp;
        if (!predicted[i] && truth[i]) ++fn;
    }
    Metrics m;
    m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank test on matched pairs. Zero differences are dropped;
// ties in |d| receive average ranks. Exact p-values enumerate all 2^n sign
// assignments for n <= 20, larger n uses the tie-corrected normal
// approximation (no continuity correction).

enum class WilcoxonTail { two_sided, greater };

inline double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                   WilcoxonTail tail = WilcoxonTail::two_sided) {
    if (a.size() != b.size()) throw ValidationError("wilcoxon: score vectors differ in length");
    std::vector<double> diff;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diff.push_back(d);
    }
    const std::size_t n = diff.size();
    if (n == 0) return 1.0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return std::abs(diff[x]) < std::abs(diff[y]); });
    std::vector<double> rank(n, 0.0);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(diff[order[j + 1]]) == std::abs(diff[order[i]])) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) rank[order[t]] = avg;
        i = j + 1;
    }

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (diff[i] > 0.0) w_plus += rank[i];
    }

    if (n <= 20) {
        // exact: distribution of W+ over every sign assignment
        const std::uint64_t total = 1ULL << n;
        std::uint64_t count_ge = 0, count_le = 0;
        constexpr double eps = 1e-9;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            double w = 0.0;
            std::uint64_t bits = mask;
            while (bits) {
                const int bit = std::countr_zero(bits);
                w += rank[static_cast<std::size_t>(bit)];
                bits &= bits - 1;
            }
            if (w >= w_plus - eps) ++count_ge;
            if (w <= w_plus + eps) ++count_le;
        }
        const double p_ge = static_cast<double>(count_ge) / static_cast<double>(total);
        const double p_le = static_cast<double>(count_le) / static_cast<double>(total);
        if (tail == WilcoxonTail::greater) return p_ge;
        return std::min(1.0, 2.0 * std::min(p_ge, p_le));
    }

    const double nd = static_cast<double>(n);
    const double mean = nd * (nd + 1.0) / 4.0;
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(diff[order[j + 1]]) == std::abs(diff[order[i]])) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) return 1.0;
    const double z = (w_plus - mean) / std::sqrt(var);
    if (tail == WilcoxonTail::greater) return 0.5 * std::erfc(z / std::sqrt(2.0));
    return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

// ---------------------------------------------------------------------------
// Top-K precision with human judgments; unclassifiable instances are excluded
// from the denominator: Prec = TP / (K - UC).

enum class Judgment { true_positive, false_positive, unclassifiable };

struct JudgedInstance {
    std::uint32_t id = 0;
    double score = 0.0;
    Judgment judgment = Judgment::unclassifiable;
};

inline double topk_precision(std::vector<JudgedInstance> judged, std::size_t K) {
    if (K > judged.size()) throw ValidationError("top-K precision: K exceeds the judged set");
    std::sort(judged.begin(), judged.end(), [](const JudgedInstance& a, const JudgedInstance& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;  // score ties broken by ascending instance id
    });
    std::size_t tp = 0, uc = 0;
    for (std::size_t i = 0; i < K; ++i) {
        if (judged[i].judgment == Judgment::true_positive) ++tp;
        if (judged[i].judgment == Judgment::unclassifiable) ++uc;
    }
    if (uc == K) throw ValidationError("top-K precision undefined: all top-K are unclassifiable");
    return static_cast<double>(tp) / static_cast<double>(K - uc);
}

// ---------------------------------------------------------------------------
// Benchmark driver implementing the evaluation protocol: stratified CV where
// each method trains on the fold's labeled subset plus the entire unlabeled
// pool, swept over labeled sizes and graph configurations, with per-method
// hyperparameter selection by mean CV F1 and Wilcoxon tests against a
// reference method.

struct BenchmarkConfig {
    std::vector<std::string> methods = {"csl", "supervised", "er", "xr"};
    std::vector<std::string> graph_configs = {"none", "all"};  // "none", "all" or a graph name
    std::vector<std::string> labeled_sizes = {"full"};         // numbers or "full"
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    std::vector<double> beta_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0};
    double lambda = 1.0;
    std::size_t max_iterations = 100;
    double gradient_tolerance = 1e-5;
    std::size_t lbfgs_memory = 10;
    bool normalize_unlabeled = true;
    std::size_t bootstrap_rounds = 10;
    std::vector<double> ls_knn_k = {7.0};
    std::vector<double> ls_rbf_gamma = {};  // empty: 1/J_ext
    double ls_alpha = 0.2;
    std::size_t ls_max_iterations = 1000;
    double ls_tolerance = 1e-6;
    std::string reference_method = "csl";
    bool measure_time = true;
    std::size_t threads = 0;

    static BenchmarkConfig from_flat(const FlatConfig& cfg) {
        BenchmarkConfig b;
        b.methods = cfg.get_list("methods", b.methods);
        b.graph_configs = cfg.get_list("graphs", b.graph_configs);
        b.labeled_sizes = cfg.get_list("labeled_sizes", b.labeled_sizes);
        b.folds = static_cast<std::size_t>(cfg.get_int("folds", static_cast<long long>(b.folds)));
        b.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<long long>(b.seed)));
        b.beta_grid = cfg.get_double_list("beta_grid", b.beta_grid);
        b.lambda = cfg.get_double("lambda", b.lambda);
        b.max_iterations = static_cast<std::size_t>(
            cfg.get_int("max_iterations", static_cast<long long>(b.max_iterations)));
        b.gradient_tolerance = cfg.get_double("gradient_tolerance", b.gradient_tolerance);
        b.lbfgs_memory = static_cast<std::size_t>(
            cfg.get_int("lbfgs_memory", static_cast<long long>(b.lbfgs_memory)));
        b.normalize_unlabeled = cfg.get_bool("normalize_unlabeled", b.normalize_unlabeled);
        b.bootstrap_rounds = static_cast<std::size_t>(
            cfg.get_int("bootstrap_rounds", static_cast<long long>(b.bootstrap_rounds)));
        b.ls_knn_k = cfg.get_double_list("ls_knn_k", b.ls_knn_k);
        b.ls_rbf_gamma = cfg.get_double_list("ls_rbf_gamma", b.ls_rbf_gamma);
        b.ls_alpha = cfg.get_double("ls_alpha", b.ls_alpha);
        b.ls_max_iterations = static_cast<std::size_t>(
            cfg.get_int("ls_max_iterations", static_cast<long long>(b.ls_max_iterations)));
        b.ls_tolerance = cfg.get_double("ls_tolerance", b.ls_tolerance);
        b.reference_method = cfg.get_string("reference_method", b.reference_method);
        b.measure_time = cfg.get_bool("measure_time", b.measure_time);
        b.threads = static_cast<std::size_t>(
            cfg.get_int("threads", static_cast<long long>(b.threads)));
        return b;
    }
};

struct BenchmarkCell {
    std::string method;
    std::string graph_config;
    std::string labeled_size;
    std::string selected_param;  // e.g. "beta=0.1" or "-" for parameter-free methods
    std::vector<double> fold_f1;
    std::vector<double> fold_precision;
    std::vector<double> fold_recall;
    std::vector<double> fold_seconds;
    bool failed = false;
    std::string failure;

    double mean_f1() const {
        return fold_f1.empty() ? 0.0
                               : std::accumulate(fold_f1.begin(), fold_f1.end(), 0.0) /
                                     static_cast<double>(fold_f1.size());
    }
    double mean_seconds() const {
        return fold_seconds.empty()
                   ? 0.0
                   : std::accumulate(fold_seconds.begin(), fold_seconds.end(), 0.0) /
                         static_cast<double>(fold_seconds.size());
    }
};

struct BenchmarkReport {
    BenchmarkConfig config;
    std::vector<BenchmarkCell> cells;

    const BenchmarkCell* find(const std::string& method, const std::string& graph_config,
                              const std::string& labeled_size) const {
        for (const auto& c : cells) {
            if (c.method == method && c.graph_config == graph_config &&
                c.labeled_size == labeled_size) {
                return &c;
            }
        }
        return nullptr;
    }
};

namespace detail {

// Seeded class-interleaved order of the training labeled instances. Every
// prefix is stratified to within one instance and prefixes are nested, so the
// L=25 subset is contained in the L=50 subset and so on.
inline std::vector<std::uint32_t> nested_stratified_order(
    const std::vector<std::uint32_t>& members, const PartialLabels& Y, std::uint64_t seed) {
    std::vector<std::uint32_t> pos, neg;
    for (std::uint32_t i : members) {
        (Y.value[i] == Label::positive ? pos : neg).push_back(i);
    }
    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);
    const double share_pos =
        static_cast<double>(pos.size()) / static_cast<double>(pos.size() + neg.size());
    std::vector<std::uint32_t> order;
    order.reserve(members.size());
    std::size_t ip = 0, in = 0;
    while (ip < pos.size() || in < neg.size()) {
        const double target = static_cast<double>(order.size() + 1) * share_pos;
        const bool want_pos = static_cast<double>(ip + 1) <= target;
        if ((want_pos && ip < pos.size()) || in >= neg.size()) {
            order.push_back(pos[ip++]);
        } else {
            order.push_back(neg[in++]);
        }
    }
    return order;
}

struct FoldTask {
    std::vector<LabeledInstance> labeled;    // the chosen labeled training subset
    PartialLabels clamp_labels;              // same subset, as labels over all nodes (for LS)
    std::vector<std::uint32_t> test;         // held-out fold
    std::vector<bool> test_truth;            // positive flags for `test`
};

inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

inline BenchmarkReport run_benchmark(const Dataset& data, const BenchmarkConfig& config) {
    {
        const auto report = validate_dataset(data.X, data.G, data.Y);
        if (!report.empty()) {
            std::string msg = "invalid dataset:";
            for (const auto& line : report) msg += "\n  " + line;
            throw ValidationError(msg);
        }
    }

    const FoldPlan plan = stratified_kfold(data.Y, config.folds, config.seed);
    const std::vector<std::uint32_t> unlabeled = data.Y.indices_of(Label::unlabeled);

    // Relational blocks and affinity matrices per graph configuration are
    // label-independent: build them once, share across folds and methods.
    struct GraphContext {
        Multigraph graph;
        std::vector<RelationalBlock> blocks;
        SparseMatrix extended;
        std::map<double, AffinityMatrix> knn;  // key: k
        std::map<double, AffinityMatrix> rbf;  // key: gamma
    };
    const bool need_knn =
        std::find(config.methods.begin(), config.methods.end(), "ls_knn") != config.methods.end();
    const bool need_rbf =
        std::find(config.methods.begin(), config.methods.end(), "ls_rbf") != config.methods.end();

    std::map<std::string, GraphContext> contexts;
    for (const auto& gc : config.graph_configs) {
        GraphContext ctx;
        if (gc == "none") {
            ctx.graph.n_nodes = data.G.n_nodes;
        } else if (gc == "all") {
            ctx.graph = data.G;
        } else {
            ctx.graph = data.G.select({gc});
        }
        ctx.blocks = build_relational_blocks(data.X, ctx.graph);
        if (need_knn || need_rbf) {
            ctx.extended = concat_extended(data.X, ctx.blocks);
            for (double k : config.ls_knn_k) {
                if (need_knn) ctx.knn.emplace(k, knn_affinity(ctx.extended,
                                                              static_cast<std::size_t>(k)));
            }
            std::vector<double> gammas = config.ls_rbf_gamma;
            if (gammas.empty()) gammas.push_back(1.0 / static_cast<double>(ctx.extended.cols()));
            for (double g : gammas) {
                if (need_rbf) ctx.rbf.emplace(g, rbf_affinity(ctx.extended, g));
            }
        }
        contexts.emplace(gc, std::move(ctx));
    }

    // Per-fold nested orders of the training labeled instances.
    std::vector<std::vector<std::uint32_t>> fold_orders(config.folds);
    for (std::size_t f = 0; f < config.folds; ++f) {
        std::vector<std::uint32_t> train_members;
        for (std::size_t i = 0; i < data.Y.size(); ++i) {
            if (plan.fold_of[i] >= 0 && plan.fold_of[i] != static_cast<int>(f)) {
                train_members.push_back(static_cast<std::uint32_t>(i));
            }
        }
        fold_orders[f] = detail::nested_stratified_order(train_members, data.Y,
                                                         config.seed * 1000003ULL + f);
    }

    // The training view for a (fold, size) pair: the first L instances of the
    // fold's nested order carry their labels; the unlabeled regularizer sees
    // the original unlabeled pool; held-out and unused labeled instances take
    // part in neither.
    auto make_task = [&](std::size_t fold, const std::string& size_label) -> detail::FoldTask {
        detail::FoldTask task;
        const auto& order = fold_orders[fold];
        std::size_t L = order.size();
        if (size_label != "full") {
            try {
                L = std::min<std::size_t>(L, std::stoull(size_label));
            } catch (const std::exception&) {
                throw ValidationError("labeled size \"" + size_label +
                                      "\" is neither a number nor \"full\"");
            }
        }
        task.clamp_labels.value.assign(data.Y.size(), Label::unlabeled);
        for (std::size_t i = 0; i < L; ++i) {
            const std::uint32_t idx = order[i];
            task.clamp_labels.value[idx] = data.Y.value[idx];
            task.labeled.push_back({idx, data.Y.value[idx] == Label::positive ? 1.0 : 0.0});
        }
        task.test = plan.folds[fold];
        for (std::uint32_t i : task.test) {
            task.test_truth.push_back(data.Y.value[i] == Label::positive);
        }
        return task;
    };

    struct CellJob {
        std::string method, graph_config, size_label;
    };
    std::vector<CellJob> jobs;
    for (const auto& method : config.methods) {
        for (const auto& gc : config.graph_configs) {
            for (const auto& size : config.labeled_sizes) {
                jobs.push_back({method, gc, size});
            }
        }
    }

    BenchmarkReport report;
    report.config = config;
    report.cells.resize(jobs.size());

    auto run_cell = [&](std::size_t job_index) {
        const CellJob& job = jobs[job_index];
        BenchmarkCell cell;
        cell.method = job.method;
        cell.graph_config = job.graph_config;
        cell.labeled_size = job.size_label;
        const GraphContext& ctx = contexts.at(job.graph_config);

        try {
            struct Candidate {
                std::string param;
                std::vector<double> f1, precision, recall, seconds;
            };
            std::vector<Candidate> candidates;

            auto eval_model_candidate = [&](const std::string& param, ObjectiveKind kind,
                                            double beta, bool bootstrap) {
                Candidate cand;
                cand.param = param;
                Hyperparams hp;
                hp.lambda = config.lambda;
                hp.beta = beta;
                hp.max_iterations = config.max_iterations;
                hp.gradient_tolerance = config.gradient_tolerance;
                hp.lbfgs_memory = config.lbfgs_memory;
                hp.normalize_unlabeled = config.normalize_unlabeled;
                for (std::size_t f = 0; f < config.folds; ++f) {
                    const detail::FoldTask task = make_task(f, job.size_label);
                    const auto start = std::chrono::steady_clock::now();
                    const FitResult fit =
                        bootstrap ? fit_bootstrap_view(data.X, ctx.blocks, task.labeled,
                                                       unlabeled, hp, config.bootstrap_rounds)
                                  : fit_view(ObjectiveData::from_lists(data.X, ctx.blocks,
                                                                       task.labeled, unlabeled,
                                                                       hp),
                                             hp, kind);
                    const double secs =
                        config.measure_time ? detail::seconds_since(start) : 0.0;
                    std::vector<bool> predicted;
                    for (std::uint32_t i : task.test) {
                        predicted.push_back(
                            predict_proba(data.X, ctx.blocks, fit.params, i) >= 0.5);
                    }
                    const Metrics m = precision_recall_f1(predicted, task.test_truth);
                    cand.f1.push_back(m.f1);
                    cand.precision.push_back(m.precision);
                    cand.recall.push_back(m.recall);
                    cand.seconds.push_back(secs);
                }
                candidates.push_back(std::move(cand));
            };

            auto eval_spreading_candidate = [&](const std::string& param,
                                                const AffinityMatrix& A) {
                Candidate cand;
                cand.param = param;
                for (std::size_t f = 0; f < config.folds; ++f) {
                    const detail::FoldTask task = make_task(f, job.size_label);
                    const auto start = std::chrono::steady_clock::now();
                    const LabelSpreadResult spread =
                        label_spreading(A, task.clamp_labels, config.ls_alpha,
                                        config.ls_max_iterations, config.ls_tolerance);
                    const double secs =
                        config.measure_time ? detail::seconds_since(start) : 0.0;
                    const auto labels = spread.predictions();
                    std::vector<bool> predicted;
                    for (std::uint32_t i : task.test) {
                        predicted.push_back(labels[i] == Label::positive);
                    }
                    const Metrics m = precision_recall_f1(predicted, task.test_truth);
                    cand.f1.push_back(m.f1);
                    cand.precision.push_back(m.precision);
                    cand.recall.push_back(m.recall);
                    cand.seconds.push_back(secs);
                }
                candidates.push_back(std::move(cand));
            };

            if (job.method == "csl" || job.method == "er" || job.method == "xr") {
                const ObjectiveKind kind = objective_from_string(job.method);
                for (double beta : config.beta_grid) {
                    eval_model_candidate("beta=" + format_double(beta), kind, beta, false);
                }
            } else if (job.method == "supervised") {
                eval_model_candidate("beta=0", ObjectiveKind::supervised, 0.0, false);
            } else if (job.method == "bootstrap") {
                eval_model_candidate("rounds=" + std::to_string(config.bootstrap_rounds),
                                     ObjectiveKind::supervised, 0.0, true);
            } else if (job.method == "ls_knn") {
                for (const auto& [k, A] : ctx.knn) {
                    eval_spreading_candidate("k=" + format_double(k), A);
                }
            } else if (job.method == "ls_rbf") {
                for (const auto& [gamma, A] : ctx.rbf) {
                    eval_spreading_candidate("gamma=" + format_double(gamma), A);
                }
            } else if (job.method == "random_guess") {
                Candidate cand;
                cand.param = "-";
                for (std::size_t f = 0; f < config.folds; ++f) {
                    const detail::FoldTask task = make_task(f, job.size_label);
                    const double prior = class_prior(task.clamp_labels);
                    const double f1 = random_guess_f1(prior);
                    cand.f1.push_back(f1);
                    cand.precision.push_back(prior);
                    cand.recall.push_back(prior);
                    cand.seconds.push_back(0.0);
                }
                candidates.push_back(std::move(cand));
            } else {
                throw ValidationError("unknown method \"" + job.method + "\"");
            }

            // model selection: best mean CV F1, first grid entry on ties
            std::size_t best = 0;
            double best_f1 = -1.0;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                const double mean =
                    std::accumulate(candidates[c].f1.begin(), candidates[c].f1.end(), 0.0) /
                    static_cast<double>(candidates[c].f1.size());
                if (mean > best_f1) {
                    best_f1 = mean;
                    best = c;
                }
            }
            cell.selected_param = candidates[best].param;
            cell.fold_f1 = candidates[best].f1;
            cell.fold_precision = candidates[best].precision;
            cell.fold_recall = candidates[best].recall;
            cell.fold_seconds = candidates[best].seconds;
        } catch (const std::exception& e) {
            cell.failed = true;
            cell.failure = e.what();
        }
        report.cells[job_index] = std::move(cell);
    };

    parallel_for_each(jobs.size(), config.threads, run_cell);
    return report;
}

// ---------------------------------------------------------------------------
// Report emission: machine-readable rows (one per cell per fold) and a
// rendered table with the Method / Graph / F1-Score / Time (sec) / p-value
// column layout.

inline void write_benchmark_rows(std::ostream& out, const BenchmarkReport& report) {
    out << "method\tgraph\tlabeled_size\tfold\tparam\tf1\tprecision\trecall\tseconds\n";
    for (const auto& cell : report.cells) {
        if (cell.failed) {
            out << cell.method << '\t' << cell.graph_config << '\t' << cell.labeled_size
                << "\t-\t-\tFAILED\t-\t-\t-\n";
            continue;
        }
        for (std::size_t f = 0; f < cell.fold_f1.size(); ++f) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%.6f\t%.6f\t%.6f\t%.4f", cell.fold_f1[f],
                          cell.fold_precision[f], cell.fold_recall[f], cell.fold_seconds[f]);
            out << cell.method << '\t' << cell.graph_config << '\t' << cell.labeled_size << '\t'
                << f << '\t' << cell.selected_param << '\t' << buf << '\n';
        }
    }
}

inline void write_benchmark_table(std::ostream& out, const BenchmarkReport& report) {
    for (const auto& size : report.config.labeled_sizes) {
        out << "== labeled size: " << size << " ==\n";
        char header[160];
        std::snprintf(header, sizeof(header), "%-14s %-10s %-10s %-12s %-10s\n", "Method",
                      "Graph", "F1-Score", "Time (sec)", "p-value");
        out << header;
        for (const auto& method : report.config.methods) {
            for (const auto& gc : report.config.graph_configs) {
                const BenchmarkCell* cell = report.find(method, gc, size);
                if (!cell) continue;
                if (cell->failed) {
                    char line[256];
                    std::snprintf(line, sizeof(line), "%-14s %-10s FAILED: %s\n", method.c_str(),
                                  gc.c_str(), cell->failure.c_str());
                    out << line;
                    continue;
                }
                std::string p_text = "-";
                if (method != report.config.reference_method) {
                    const BenchmarkCell* ref =
                        report.find(report.config.reference_method, gc, size);
                    if (ref && !ref->failed && ref->fold_f1.size() == cell->fold_f1.size()) {
                        const double p = wilcoxon_signed_rank(cell->fold_f1, ref->fold_f1);
                        char pbuf[32];
                        std::snprintf(pbuf, sizeof(pbuf), "%.4f%s", p, p < 0.05 ? "*" : "");
                        p_text = pbuf;
                    }
                }
                char line[256];
                std::snprintf(line, sizeof(line), "%-14s %-10s %-10.4f %-12.4f %-10s\n",
                              method.c_str(), gc.c_str(), cell->mean_f1(), cell->mean_seconds(),
                              p_text.c_str());
                out << line;
            }
        }
        out << '\n';
    }
}

}  // namespace csl
