#pragma once

#include "microwrap/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace microwrap {

/// Dense integer matrix acting on column vectors. A rows × cols matrix maps
/// ℤ^cols → ℤ^rows; zero-sized dimensions are allowed.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    /// Builds from nested rows; every row must have the same length. For an
    /// empty row list the result is 0 × cols.
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Integer& factor) const;
    IntMatrix transposed() const;

    /// Copies `block` into this matrix with its top-left corner at (row, col).
    void set_block(std::size_t row, std::size_t col, const IntMatrix& block);
    /// Adds `block` into this matrix at (row, col).
    void add_block(std::size_t row, std::size_t col, const IntMatrix& block);
    IntMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;

    bool operator==(const IntMatrix& other) const;
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Block diagonal sum.
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Nonzero invariant factors of m (positive, each dividing the next). Their
/// count is the rank of m.
std::vector<Integer> smith_invariants(IntMatrix m);

/// Rank of m over ℚ.
std::size_t matrix_rank(const IntMatrix& m);

} // namespace microwrap
