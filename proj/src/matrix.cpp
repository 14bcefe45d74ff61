#include "microwrap/matrix.hpp"

#include "microwrap/errors.hpp"

#include <ostream>

namespace microwrap {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    if (!rows.empty())
        cols = rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw ChainError("ragged matrix: row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " entries, expected " +
                             std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Integer>> nested;
    for (const auto& row : rows) {
        auto& out = nested.emplace_back();
        for (long v : row)
            out.emplace_back(v);
    }
    return from_rows(nested);
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& v : data_)
        if (v != 0)
            return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw ChainError("matrix product shape mismatch: " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " * " + std::to_string(rhs.rows_) + "x" +
                         std::to_string(rhs.cols_));
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Integer& b = rhs(k, j);
                if (b != 0)
                    out(i, j) += a * b;
            }
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw ChainError("matrix sum shape mismatch");
    IntMatrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw ChainError("matrix difference shape mismatch");
    IntMatrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] -= rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix out(*this);
    for (auto& v : out.data_)
        v = -v;
    return out;
}

IntMatrix IntMatrix::scaled(const Integer& factor) const {
    IntMatrix out(*this);
    for (auto& v : out.data_)
        v *= factor;
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

void IntMatrix::set_block(std::size_t row, std::size_t col, const IntMatrix& block) {
    if (row + block.rows_ > rows_ || col + block.cols_ > cols_)
        throw ChainError("block does not fit");
    for (std::size_t i = 0; i < block.rows_; ++i)
        for (std::size_t j = 0; j < block.cols_; ++j)
            (*this)(row + i, col + j) = block(i, j);
}

void IntMatrix::add_block(std::size_t row, std::size_t col, const IntMatrix& block) {
    if (row + block.rows_ > rows_ || col + block.cols_ > cols_)
        throw ChainError("block does not fit");
    for (std::size_t i = 0; i < block.rows_; ++i)
        for (std::size_t j = 0; j < block.cols_; ++j)
            if (block(i, j) != 0)
                (*this)(row + i, col + j) += block(i, j);
}

IntMatrix IntMatrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const {
    if (row + rows > rows_ || col + cols > cols_)
        throw ChainError("block out of range");
    IntMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out(i, j) = (*this)(row + i, col + j);
    return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j);
        os << ']';
    }
    return os << ']' << '(' << m.rows() << 'x' << m.cols() << ')';
}

} // namespace microwrap
