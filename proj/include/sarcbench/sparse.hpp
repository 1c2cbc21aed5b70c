#pragma once

// Compressed-sparse-row matrices: the interchange format between the
// featurizer and the classifiers. Column indices are kept sorted within
// each row and explicit zeros are never stored.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sarcbench {

struct CsrMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::size_t> row_offsets{0};  // length n_rows + 1
    std::vector<std::uint32_t> col_indices;
    std::vector<double> values;

    std::span<const std::uint32_t> row_cols(std::size_t i) const {
        return {col_indices.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
    }
    std::span<const double> row_vals(std::size_t i) const {
        return {values.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
    }
    std::size_t nnz() const { return values.size(); }

    // Stored value at (i, j), or 0. Binary search over the row.
    double at(std::size_t i, std::size_t j) const;

    // Throws ShapeError if any structural invariant is violated.
    void check_invariants() const;
};

struct DenseMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> values;  // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : n_rows(rows), n_cols(cols), values(rows * cols, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return values[i * n_cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * n_cols + j]; }
    std::span<const double> row(std::size_t i) const {
        return {values.data() + i * n_cols, n_cols};
    }
};

// Incremental row-by-row construction; rows must be appended with their
// column indices already sorted and strictly increasing.
class CsrBuilder {
public:
    explicit CsrBuilder(std::size_t n_cols) : n_cols_(n_cols) {}

    void add_row(std::span<const std::pair<std::uint32_t, double>> entries);
    CsrMatrix finish();

private:
    std::size_t n_cols_;
    CsrMatrix m_;
};

// Horizontal concatenation; all blocks must share n_rows.
CsrMatrix hstack(const std::vector<const CsrMatrix*>& blocks);

// Scales every nonzero row to Euclidean norm 1; zero rows pass through.
CsrMatrix l2_normalize_rows(const CsrMatrix& m);

// Inner product of one stored row with a dense vector of length n_cols.
double row_dot_dense(const CsrMatrix& m, std::size_t row, std::span<const double> w);

// Dense -> CSR; zeros are dropped.
CsrMatrix to_csr(const DenseMatrix& d);

}  // namespace sarcbench
