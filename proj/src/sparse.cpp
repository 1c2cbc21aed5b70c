#include "sarcbench/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sarcbench/errors.hpp"

namespace sarcbench {

double CsrMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= n_rows || j >= n_cols) {
        throw ArgumentError("CsrMatrix::at: index out of range");
    }
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(j));
    if (it == cols.end() || *it != j) return 0.0;
    return values[row_offsets[i] + static_cast<std::size_t>(it - cols.begin())];
}

void CsrMatrix::check_invariants() const {
    if (row_offsets.size() != n_rows + 1 || row_offsets.front() != 0 ||
        row_offsets.back() != values.size() || col_indices.size() != values.size()) {
        throw ShapeError("CsrMatrix: inconsistent structure arrays");
    }
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (row_offsets[i] > row_offsets[i + 1]) {
            throw ShapeError("CsrMatrix: row_offsets not non-decreasing");
        }
        const auto cols = row_cols(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] >= n_cols || (k > 0 && cols[k] <= cols[k - 1])) {
                throw ShapeError("CsrMatrix: column indices out of range or unsorted in row " +
                                 std::to_string(i));
            }
        }
    }
}

void CsrBuilder::add_row(std::span<const std::pair<std::uint32_t, double>> entries) {
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].first >= n_cols_ || (k > 0 && entries[k].first <= entries[k - 1].first)) {
            throw ShapeError("CsrBuilder: row entries must be sorted and within n_cols");
        }
        m_.col_indices.push_back(entries[k].first);
        m_.values.push_back(entries[k].second);
    }
    m_.row_offsets.push_back(m_.values.size());
    ++m_.n_rows;
}

CsrMatrix CsrBuilder::finish() {
    m_.n_cols = n_cols_;
    return std::move(m_);
}

CsrMatrix hstack(const std::vector<const CsrMatrix*>& blocks) {
    if (blocks.empty()) throw ArgumentError("hstack: no blocks");
    const std::size_t n_rows = blocks.front()->n_rows;
    std::size_t n_cols = 0;
    std::size_t nnz = 0;
    for (const auto* b : blocks) {
        if (b->n_rows != n_rows) throw ShapeError("hstack: row count mismatch");
        n_cols += b->n_cols;
        nnz += b->nnz();
    }

    CsrMatrix out;
    out.n_rows = n_rows;
    out.n_cols = n_cols;
    out.row_offsets.reserve(n_rows + 1);
    out.col_indices.reserve(nnz);
    out.values.reserve(nnz);
    for (std::size_t i = 0; i < n_rows; ++i) {
        std::uint32_t col_base = 0;
        for (const auto* b : blocks) {
            const auto cols = b->row_cols(i);
            const auto vals = b->row_vals(i);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                out.col_indices.push_back(col_base + cols[k]);
                out.values.push_back(vals[k]);
            }
            col_base += static_cast<std::uint32_t>(b->n_cols);
        }
        out.row_offsets.push_back(out.values.size());
    }
    return out;
}

CsrMatrix l2_normalize_rows(const CsrMatrix& m) {
    CsrMatrix out = m;
    for (std::size_t i = 0; i < m.n_rows; ++i) {
        double sq = 0.0;
        for (double v : m.row_vals(i)) sq += v * v;
        if (sq == 0.0) continue;
        const double inv = 1.0 / std::sqrt(sq);
        for (std::size_t k = m.row_offsets[i]; k < m.row_offsets[i + 1]; ++k) {
            out.values[k] = m.values[k] * inv;
        }
    }
    return out;
}

double row_dot_dense(const CsrMatrix& m, std::size_t row, std::span<const double> w) {
    if (row >= m.n_rows) throw ArgumentError("row_dot_dense: row out of range");
    if (w.size() != m.n_cols) throw ShapeError("row_dot_dense: vector length mismatch");
    const auto cols = m.row_cols(row);
    const auto vals = m.row_vals(row);
    double acc = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) acc += vals[k] * w[cols[k]];
    return acc;
}

CsrMatrix to_csr(const DenseMatrix& d) {
    CsrMatrix out;
    out.n_rows = d.n_rows;
    out.n_cols = d.n_cols;
    for (std::size_t i = 0; i < d.n_rows; ++i) {
        for (std::size_t j = 0; j < d.n_cols; ++j) {
            const double v = d.at(i, j);
            if (v != 0.0) {
                out.col_indices.push_back(static_cast<std::uint32_t>(j));
                out.values.push_back(v);
            }
        }
        out.row_offsets.push_back(out.values.size());
    }
    return out;
}

}  // namespace sarcbench
