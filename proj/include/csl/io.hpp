#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "csl/data.hpp"
#include "csl/sparse.hpp"

namespace csl {

// All on-disk formats are UTF-8, tab-separated text. Doubles are written
// with 17 significant digits so that write -> read -> write is identity.

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline double parse_double_field(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(where + ": expected number, got \"" + s + "\"");
    }
}

inline std::string location(const std::string& source, std::size_t line_no) {
    return source + ":" + std::to_string(line_no);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Feature matrix: one record per instance: id, then col:value pairs.

struct FeatureTable {
    std::vector<std::string> ids;
    SparseMatrix X;
};

inline FeatureTable read_feature_table(std::istream& in, const std::string& source = "<features>") {
    std::vector<std::string> ids;
    std::vector<std::vector<SparseEntry>> rows;
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t max_col = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_tabs(line);
        const std::string& id = fields[0];
        if (id.empty()) throw ValidationError(detail::location(source, line_no) + ": empty instance id");
        if (!seen.emplace(id, ids.size()).second) {
            throw ValidationError(detail::location(source, line_no) + ": duplicate instance id \"" + id + "\"");
        }
        std::vector<SparseEntry> row;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            if (fields[f].empty()) continue;
            const std::size_t colon = fields[f].find(':');
            if (colon == std::string::npos) {
                throw ValidationError(detail::location(source, line_no) +
                                      ": expected col:value, got \"" + fields[f] + "\"");
            }
            SparseEntry e;
            const std::string col_str = fields[f].substr(0, colon);
            try {
                std::size_t pos = 0;
                const unsigned long col = std::stoul(col_str, &pos);
                if (pos != col_str.size()) throw std::invalid_argument(col_str);
                e.col = static_cast<std::uint32_t>(col);
            } catch (const std::exception&) {
                throw ValidationError(detail::location(source, line_no) +
                                      ": expected column index, got \"" + col_str + "\"");
            }
            e.value = detail::parse_double_field(fields[f].substr(colon + 1),
                                                 detail::location(source, line_no));
            if (e.col + 1 > max_col) max_col = e.col + 1;
            row.push_back(e);
        }
        ids.push_back(id);
        rows.push_back(std::move(row));
    }
    FeatureTable t;
    t.ids = std::move(ids);
    t.X = SparseMatrix::from_rows(max_col, std::move(rows));
    return t;
}

// n_cols may exceed the largest stored column (trailing all-zero columns);
// pass it when the matrix dimensionality must survive the round trip.
inline FeatureTable read_feature_table_file(const std::string& path, std::size_t n_cols = 0) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open \"" + path + "\"");
    FeatureTable t = read_feature_table(in, path);
    if (n_cols > 0) {
        if (n_cols < t.X.cols()) {
            throw ValidationError(path + ": file has columns beyond the declared " +
                                  std::to_string(n_cols));
        }
        if (n_cols > t.X.cols()) {
            std::vector<std::vector<SparseEntry>> rows(t.X.rows());
            for (std::size_t i = 0; i < t.X.rows(); ++i) {
                auto cols = t.X.row_cols(i);
                auto vals = t.X.row_values(i);
                for (std::size_t k = 0; k < cols.size(); ++k) rows[i].push_back({cols[k], vals[k]});
            }
            t.X = SparseMatrix::from_rows(n_cols, std::move(rows));
        }
    }
    return t;
}

inline void write_feature_table(std::ostream& out, const std::vector<std::string>& ids,
                                const SparseMatrix& X) {
    for (std::size_t i = 0; i < X.rows(); ++i) {
        out << ids[i];
        auto cols = X.row_cols(i);
        auto vals = X.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            out << '\t' << cols[k] << ':' << format_double(vals[k]);
        }
        out << '\n';
    }
}

inline void write_feature_table_file(const std::string& path, const std::vector<std::string>& ids,
                                     const SparseMatrix& X) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write \"" + path + "\"");
    write_feature_table(out, ids, X);
}

// ---------------------------------------------------------------------------
// Graph file: one record per edge: graph name, source id, target id, weight.
// Graph order in the multigraph follows first appearance in the file.

inline Multigraph read_multigraph(std::istream& in,
                                  const std::unordered_map<std::string, std::uint32_t>& id_index,
                                  std::size_t n_nodes, const std::string& source = "<graphs>") {
    Multigraph G;
    G.n_nodes = n_nodes;
    std::unordered_map<std::string, std::size_t> graph_index;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_tabs(line);
        if (fields.size() != 4) {
            throw ValidationError(detail::location(source, line_no) +
                                  ": expected graph<TAB>src<TAB>tgt<TAB>weight");
        }
        auto g_it = graph_index.find(fields[0]);
        if (g_it == graph_index.end()) {
            g_it = graph_index.emplace(fields[0], G.graphs.size()).first;
            G.graphs.push_back(RelationGraph{fields[0], {}});
        }
        const auto src = id_index.find(fields[1]);
        const auto tgt = id_index.find(fields[2]);
        if (src == id_index.end()) {
            throw ValidationError(detail::location(source, line_no) + ": unknown instance id \"" +
                                  fields[1] + "\"");
        }
        if (tgt == id_index.end()) {
            throw ValidationError(detail::location(source, line_no) + ": unknown instance id \"" +
                                  fields[2] + "\"");
        }
        const double w =
            detail::parse_double_field(fields[3], detail::location(source, line_no));
        G.graphs[g_it->second].edges.push_back({src->second, tgt->second, w});
    }
    // Duplicate (source, target) pairs are ambiguous; reject rather than sum.
    for (const auto& g : G.graphs) {
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto& e : g.edges) {
            if (!seen.insert({e.source, e.target}).second) {
                throw ValidationError(source + ": graph \"" + g.name + "\": duplicate edge " +
                                      std::to_string(e.source) + " -> " +
                                      std::to_string(e.target));
            }
        }
    }
    return G;
}

inline void write_multigraph(std::ostream& out, const Multigraph& G,
                             const std::vector<std::string>& ids) {
    for (const auto& g : G.graphs) {
        for (const auto& e : g.edges) {
            out << g.name << '\t' << ids[e.source] << '\t' << ids[e.target] << '\t'
                << format_double(e.weight) << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// Labels file: instance id, then "pos" | "neg" | "?".
// Instances absent from the file are unlabeled.

inline PartialLabels read_labels(std::istream& in,
                                 const std::unordered_map<std::string, std::uint32_t>& id_index,
                                 std::size_t n_nodes, const std::string& source = "<labels>") {
    PartialLabels Y;
    Y.value.assign(n_nodes, Label::unlabeled);
    std::vector<bool> seen(n_nodes, false);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_tabs(line);
        if (fields.size() != 2) {
            throw ValidationError(detail::location(source, line_no) +
                                  ": expected id<TAB>pos|neg|?");
        }
        const auto it = id_index.find(fields[0]);
        if (it == id_index.end()) {
            throw ValidationError(detail::location(source, line_no) + ": unknown instance id \"" +
                                  fields[0] + "\"");
        }
        if (seen[it->second]) {
            throw ValidationError(detail::location(source, line_no) + ": duplicate label for \"" +
                                  fields[0] + "\"");
        }
        seen[it->second] = true;
        if (fields[1] == "pos") {
            Y.value[it->second] = Label::positive;
        } else if (fields[1] == "neg") {
            Y.value[it->second] = Label::negative;
        } else if (fields[1] == "?") {
            Y.value[it->second] = Label::unlabeled;
        } else {
            throw ValidationError(detail::location(source, line_no) + ": unknown label \"" +
                                  fields[1] + "\" (expected pos, neg or ?)");
        }
    }
    return Y;
}

inline void write_labels(std::ostream& out, const PartialLabels& Y,
                         const std::vector<std::string>& ids) {
    for (std::size_t i = 0; i < Y.size(); ++i) {
        const char* tag = Y.value[i] == Label::positive ? "pos"
                          : Y.value[i] == Label::negative ? "neg"
                                                          : "?";
        out << ids[i] << '\t' << tag << '\n';
    }
}

// ---------------------------------------------------------------------------
// Vocabulary file: index, n-gram, idf.

struct VocabularyRecord {
    std::uint32_t index = 0;
    std::string ngram;
    double idf = 0.0;
};

inline std::vector<VocabularyRecord> read_vocabulary(std::istream& in,
                                                     const std::string& source = "<vocab>") {
    std::vector<VocabularyRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_tabs(line);
        if (fields.size() != 3) {
            throw ValidationError(detail::location(source, line_no) +
                                  ": expected index<TAB>ngram<TAB>idf");
        }
        VocabularyRecord r;
        r.index = static_cast<std::uint32_t>(
            detail::parse_double_field(fields[0], detail::location(source, line_no)));
        r.ngram = fields[1];
        r.idf = detail::parse_double_field(fields[2], detail::location(source, line_no));
        out.push_back(std::move(r));
    }
    return out;
}

inline void write_vocabulary(std::ostream& out, const std::vector<std::string>& names,
                             const std::vector<double>& idf) {
    for (std::size_t j = 0; j < names.size(); ++j) {
        out << j << '\t' << names[j] << '\t' << format_double(idf[j]) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Documents file: instance id, raw text (everything after the first tab).

struct Document {
    std::string id;
    std::string text;
};

inline std::vector<Document> read_documents(std::istream& in,
                                            const std::string& source = "<docs>") {
    std::vector<Document> docs;
    std::unordered_map<std::string, std::size_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw ValidationError(detail::location(source, line_no) +
                                  ": expected id<TAB>text");
        }
        Document d;
        d.id = line.substr(0, tab);
        d.text = line.substr(tab + 1);
        if (!seen.emplace(d.id, docs.size()).second) {
            throw ValidationError(detail::location(source, line_no) + ": duplicate instance id \"" +
                                  d.id + "\"");
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

inline std::unordered_map<std::string, std::uint32_t> build_id_index(
    const std::vector<std::string>& ids) {
    std::unordered_map<std::string, std::uint32_t> index;
    index.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        index.emplace(ids[i], static_cast<std::uint32_t>(i));
    }
    return index;
}

inline Dataset read_dataset(const std::string& features_path, const std::string& graphs_path,
                            const std::string& labels_path) {
    Dataset d;
    FeatureTable t = read_feature_table_file(features_path);
    d.ids = std::move(t.ids);
    d.X = std::move(t.X);
    const auto index = build_id_index(d.ids);
    {
        std::ifstream in(graphs_path);
        if (!in) throw ValidationError("cannot open \"" + graphs_path + "\"");
        d.G = read_multigraph(in, index, d.ids.size(), graphs_path);
    }
    if (!labels_path.empty()) {
        std::ifstream in(labels_path);
        if (!in) throw ValidationError("cannot open \"" + labels_path + "\"");
        d.Y = read_labels(in, index, d.ids.size(), labels_path);
    } else {
        d.Y.value.assign(d.ids.size(), Label::unlabeled);
    }
    return d;
}

}  // namespace csl
