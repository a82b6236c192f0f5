#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "csl/errors.hpp"

namespace csl {

struct SparseEntry {
    std::uint32_t col = 0;
    double value = 0.0;
};

// Row-major compressed sparse matrix. Structure (index ranges, per-row column
// ordering) is enforced at construction; value-level invariants such as
// nonnegativity are checked by validate_dataset so that violations can be
// reported instead of thrown.
class SparseMatrix {
public:
    SparseMatrix() = default;

    static SparseMatrix from_rows(std::size_t n_cols,
                                  std::vector<std::vector<SparseEntry>> rows) {
        SparseMatrix m;
        m.n_rows_ = rows.size();
        m.n_cols_ = n_cols;
        m.row_ptr_.clear();
        m.row_ptr_.reserve(rows.size() + 1);
        m.row_ptr_.push_back(0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto& row = rows[i];
            std::sort(row.begin(), row.end(),
                      [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k].col >= n_cols) {
                    throw ValidationError("row " + std::to_string(i) + ": column index " +
                                          std::to_string(row[k].col) + " out of range (n_cols=" +
                                          std::to_string(n_cols) + ")");
                }
                if (k > 0 && row[k].col == row[k - 1].col) {
                    throw ValidationError("row " + std::to_string(i) + ": duplicate column index " +
                                          std::to_string(row[k].col));
                }
                m.cols_.push_back(row[k].col);
                m.values_.push_back(row[k].value);
            }
            m.row_ptr_.push_back(m.cols_.size());
        }
        return m;
    }

    std::size_t rows() const { return n_rows_; }
    std::size_t cols() const { return n_cols_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::uint32_t> row_cols(std::size_t i) const {
        return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const double> row_values(std::size_t i) const {
        return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::size_t row_nnz(std::size_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

    // <row i, w> for a dense weight slice of length cols().
    double row_dot(std::size_t i, std::span<const double> w) const {
        double acc = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            acc += values_[k] * w[cols_[k]];
        }
        return acc;
    }

    // acc[col] += scale * value over row i.
    void row_axpy(std::size_t i, double scale, std::span<double> acc) const {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            acc[cols_[k]] += scale * values_[k];
        }
    }

    // acc[col] += scale * value^2 over row i (curvature accumulation).
    void row_axpy_squared(std::size_t i, double scale, std::span<double> acc) const {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            acc[cols_[k]] += scale * values_[k] * values_[k];
        }
    }

    double row_norm_sq(std::size_t i) const {
        double acc = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            acc += values_[k] * values_[k];
        }
        return acc;
    }

    // <row i of *this, row j of other>; both matrices must share the column space.
    double row_dot_row(std::size_t i, const SparseMatrix& other, std::size_t j) const {
        double acc = 0.0;
        std::size_t a = row_ptr_[i], a_end = row_ptr_[i + 1];
        std::size_t b = other.row_ptr_[j], b_end = other.row_ptr_[j + 1];
        while (a < a_end && b < b_end) {
            if (cols_[a] < other.cols_[b]) {
                ++a;
            } else if (cols_[a] > other.cols_[b]) {
                ++b;
            } else {
                acc += values_[a] * other.values_[b];
                ++a;
                ++b;
            }
        }
        return acc;
    }

    std::vector<double> row_dense(std::size_t i) const {
        std::vector<double> out(n_cols_, 0.0);
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) out[cols_[k]] = values_[k];
        return out;
    }

    bool operator==(const SparseMatrix& other) const {
        return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_ &&
               row_ptr_ == other.row_ptr_ && cols_ == other.cols_ && values_ == other.values_;
    }

private:
    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<double> values_;
};

}  // namespace csl
