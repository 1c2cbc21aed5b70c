#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "sarcbench/errors.hpp"
#include "sarcbench/rng.hpp"
#include "sarcbench/sparse.hpp"

using namespace sarcbench;

namespace {

using Entry = std::pair<std::uint32_t, double>;

CsrMatrix from_rows(std::size_t n_cols, const std::vector<std::vector<Entry>>& rows) {
    CsrBuilder builder(n_cols);
    for (const auto& row : rows) builder.add_row(row);
    return builder.finish();
}

DenseMatrix random_dense(std::size_t rows, std::size_t cols, std::uint64_t seed,
                         double density) {
    DenseMatrix d(rows, cols);
    Xoshiro256ss rng(seed);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (rng.bounded(100) < static_cast<std::uint64_t>(density * 100)) {
                d.at(i, j) = static_cast<double>(rng.bounded(19)) - 9.0;
            }
        }
    }
    return d;
}

}  // namespace

TEST_CASE("builder produces a valid matrix with sorted row entries") {
    const CsrMatrix m = from_rows(4, {{{0, 1.0}, {2, 3.0}}, {}, {{3, -2.0}}});
    m.check_invariants();
    CHECK(m.n_rows == 3);
    CHECK(m.n_cols == 4);
    CHECK(m.nnz() == 3);
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(0, 1) == 0.0);
    CHECK(m.at(0, 2) == 3.0);
    CHECK(m.at(1, 3) == 0.0);
    CHECK(m.at(2, 3) == -2.0);
    CHECK(m.row_offsets == std::vector<std::size_t>{0, 2, 2, 3});
}

TEST_CASE("builder rejects malformed rows") {
    CsrBuilder builder(3);
    const std::vector<Entry> unsorted{{2, 1.0}, {0, 1.0}};
    CHECK_THROWS_AS(builder.add_row(unsorted), ShapeError);
    const std::vector<Entry> dup{{1, 1.0}, {1, 2.0}};
    CHECK_THROWS_AS(builder.add_row(dup), ShapeError);
    const std::vector<Entry> wide{{3, 1.0}};
    CHECK_THROWS_AS(builder.add_row(wide), ShapeError);
}

TEST_CASE("hstack of a single block is the identity") {
    const CsrMatrix a = from_rows(2, {{{0, 1.0}}, {{1, 2.0}}});
    const CsrMatrix out = hstack({&a});
    CHECK(out.row_offsets == a.row_offsets);
    CHECK(out.col_indices == a.col_indices);
    CHECK(out.values == a.values);
    CHECK(out.n_cols == a.n_cols);
}

TEST_CASE("hstack concatenates with offset columns") {
    const CsrMatrix a = from_rows(2, {{{0, 1.0}}, {}});
    const CsrMatrix b = from_rows(1, {{{0, 5.0}}, {{0, 7.0}}});
    const CsrMatrix out = hstack({&a, &b});
    out.check_invariants();
    CHECK(out.n_cols == 3);
    CHECK(out.at(0, 0) == 1.0);
    CHECK(out.at(0, 2) == 5.0);
    CHECK(out.at(1, 2) == 7.0);
    CHECK(out.nnz() == 3);
}

TEST_CASE("hstack rejects row-count mismatches") {
    const CsrMatrix a = from_rows(1, {{{0, 1.0}}});
    const CsrMatrix b = from_rows(1, {{{0, 1.0}}, {{0, 2.0}}});
    CHECK_THROWS_AS(hstack({&a, &b}), ShapeError);
}

TEST_CASE("hstack of column slices reassembles the original") {
    const DenseMatrix d = random_dense(6, 9, 31, 0.4);
    const CsrMatrix whole = to_csr(d);

    DenseMatrix left(6, 4);
    DenseMatrix right(6, 5);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 9; ++j) {
            if (j < 4) {
                left.at(i, j) = d.at(i, j);
            } else {
                right.at(i, j - 4) = d.at(i, j);
            }
        }
    }
    const CsrMatrix a = to_csr(left);
    const CsrMatrix b = to_csr(right);
    const CsrMatrix joined = hstack({&a, &b});
    CHECK(joined.row_offsets == whole.row_offsets);
    CHECK(joined.col_indices == whole.col_indices);
    CHECK(joined.values == whole.values);
}

TEST_CASE("l2 normalization examples") {
    const CsrMatrix m = from_rows(2, {{{0, 3.0}, {1, 4.0}}, {}});
    const CsrMatrix n = l2_normalize_rows(m);
    CHECK(n.at(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(n.at(0, 1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(n.row_vals(1).empty());  // zero row passes through
}

TEST_CASE("l2 normalization is idempotent and yields unit rows") {
    const DenseMatrix d = random_dense(8, 7, 77, 0.5);
    const CsrMatrix once = l2_normalize_rows(to_csr(d));
    for (std::size_t i = 0; i < once.n_rows; ++i) {
        double norm = 0.0;
        for (double v : once.row_vals(i)) norm += v * v;
        if (!once.row_vals(i).empty()) CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const CsrMatrix twice = l2_normalize_rows(once);
    REQUIRE(twice.values.size() == once.values.size());
    for (std::size_t k = 0; k < once.values.size(); ++k) {
        CHECK(twice.values[k] == doctest::Approx(once.values[k]).epsilon(1e-12));
    }
}

TEST_CASE("row_dot_dense examples") {
    const CsrMatrix m = from_rows(3, {{{1, 2.0}}, {{0, 1.0}, {2, 4.0}}});
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(row_dot_dense(m, 0, ones) == 2.0);
    const std::vector<double> zeros{0.0, 0.0, 0.0};
    CHECK(row_dot_dense(m, 0, zeros) == 0.0);
    const std::vector<double> w{3.0, 5.0, 7.0};
    CHECK(row_dot_dense(m, 1, w) == 3.0 + 28.0);
}

TEST_CASE("row_dot_dense agrees with a dense inner product") {
    const DenseMatrix d = random_dense(10, 12, 5, 0.3);
    const CsrMatrix m = to_csr(d);
    Xoshiro256ss rng(99);
    std::vector<double> w(12);
    for (double& v : w) v = static_cast<double>(rng.bounded(21)) - 10.0;
    for (std::size_t i = 0; i < d.n_rows; ++i) {
        double expected = 0.0;
        for (std::size_t j = 0; j < d.n_cols; ++j) expected += d.at(i, j) * w[j];
        CHECK(row_dot_dense(m, i, w) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("to_csr drops zeros and round-trips") {
    DenseMatrix d(2, 2);
    d.at(0, 0) = 1.0;
    d.at(1, 1) = 1.0;
    const CsrMatrix m = to_csr(d);
    CHECK(m.row_offsets == std::vector<std::size_t>{0, 1, 2});
    CHECK(m.nnz() == 2);

    DenseMatrix with_zero(1, 2);
    with_zero.at(0, 1) = 2.0;
    const CsrMatrix single = to_csr(with_zero);
    CHECK(single.nnz() == 1);
    CHECK(single.col_indices == std::vector<std::uint32_t>{1});

    const CsrMatrix empty = to_csr(DenseMatrix(3, 4));
    CHECK(empty.nnz() == 0);
    CHECK(empty.n_rows == 3);

    const DenseMatrix rand = random_dense(7, 6, 13, 0.5);
    const CsrMatrix round = to_csr(rand);
    round.check_invariants();
    for (std::size_t i = 0; i < rand.n_rows; ++i) {
        for (std::size_t j = 0; j < rand.n_cols; ++j) {
            CHECK(round.at(i, j) == rand.at(i, j));
        }
    }
}
