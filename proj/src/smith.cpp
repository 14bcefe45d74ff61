#include "microwrap/matrix.hpp"

#include <algorithm>
#include <utility>

namespace microwrap {

namespace {

using Rows = std::vector<std::vector<Integer>>;

int cmpabs(const Integer& a, const Integer& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

// Row/column reduction to diagonal form. The pivot is always the entry of
// smallest absolute value in the active block, which keeps intermediate
// entries small on the sparse ±1-heavy matrices produced by Hom complexes.
class Diagonalizer {
public:
    explicit Diagonalizer(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()), a_(m.rows()) {
        for (std::size_t i = 0; i < rows_; ++i) {
            a_[i].resize(cols_);
            for (std::size_t j = 0; j < cols_; ++j)
                a_[i][j] = m(i, j);
        }
    }

    std::vector<Integer> run() {
        std::vector<Integer> diag;
        const std::size_t limit = std::min(rows_, cols_);
        for (std::size_t r = 0; r < limit; ++r) {
            if (!place_smallest_pivot(r))
                break;
            while (eliminate(r)) {
                swap_in_smallest_remainder(r);
            }
            Integer d = abs(a_[r][r]);
            diag.push_back(d);
        }
        return diag;
    }

private:
    bool place_smallest_pivot(std::size_t r) {
        std::size_t bi = rows_, bj = cols_;
        Integer best;
        for (std::size_t i = r; i < rows_; ++i)
            for (std::size_t j = r; j < cols_; ++j) {
                const Integer& v = a_[i][j];
                if (v == 0)
                    continue;
                if (bi == rows_ || cmpabs(v, best) < 0) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (best == 1 || best == -1)
                        goto found;
                }
            }
        if (bi == rows_)
            return false;
    found:
        swap_rows(r, bi);
        swap_cols(r, bj);
        return true;
    }

    // Clears row r and column r modulo the pivot. Returns true when some
    // nonzero remainder is left, so that a smaller pivot must be swapped in.
    bool eliminate(std::size_t r) {
        bool dirty = false;
        Integer q;
        const Integer& p = a_[r][r];

        std::vector<std::size_t> row_support;
        for (std::size_t j = r + 1; j < cols_; ++j)
            if (a_[r][j] != 0)
                row_support.push_back(j);

        for (std::size_t i = r + 1; i < rows_; ++i) {
            if (a_[i][r] == 0)
                continue;
            mpz_tdiv_q(q.get_mpz_t(), a_[i][r].get_mpz_t(), p.get_mpz_t());
            if (q != 0) {
                mpz_submul(a_[i][r].get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
                for (std::size_t j : row_support)
                    mpz_submul(a_[i][j].get_mpz_t(), q.get_mpz_t(), a_[r][j].get_mpz_t());
            }
            if (a_[i][r] != 0)
                dirty = true;
        }

        std::vector<std::size_t> col_support;
        for (std::size_t i = r + 1; i < rows_; ++i)
            if (a_[i][r] != 0)
                col_support.push_back(i);

        for (std::size_t j : row_support) {
            if (a_[r][j] == 0)
                continue;
            mpz_tdiv_q(q.get_mpz_t(), a_[r][j].get_mpz_t(), p.get_mpz_t());
            if (q != 0) {
                mpz_submul(a_[r][j].get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
                for (std::size_t i : col_support)
                    mpz_submul(a_[i][j].get_mpz_t(), q.get_mpz_t(), a_[i][r].get_mpz_t());
            }
            if (a_[r][j] != 0)
                dirty = true;
        }
        return dirty;
    }

    void swap_in_smallest_remainder(std::size_t r) {
        std::size_t bi = rows_, bj = cols_;
        Integer best = a_[r][r];
        for (std::size_t i = r + 1; i < rows_; ++i)
            if (a_[i][r] != 0 && cmpabs(a_[i][r], best) < 0) {
                best = a_[i][r];
                bi = i;
                bj = cols_;
            }
        for (std::size_t j = r + 1; j < cols_; ++j)
            if (a_[r][j] != 0 && cmpabs(a_[r][j], best) < 0) {
                best = a_[r][j];
                bj = j;
                bi = rows_;
            }
        if (bi != rows_)
            swap_rows(r, bi);
        else if (bj != cols_)
            swap_cols(r, bj);
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i != k)
            std::swap(a_[i], a_[k]);
    }

    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k)
            return;
        for (auto& row : a_)
            std::swap(row[j], row[k]);
    }

    std::size_t rows_;
    std::size_t cols_;
    Rows a_;
};

} // namespace

std::vector<Integer> smith_invariants(IntMatrix m) {
    std::vector<Integer> diag = Diagonalizer(m).run();
    // A diagonal matrix reaches Smith form by replacing pairs (a, b) with
    // (gcd, lcm) until the divisibility chain holds.
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] == 0)
                continue;
            Integer g = gcd(diag[i], diag[j]);
            Integer l = lcm(diag[i], diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

std::size_t matrix_rank(const IntMatrix& m) {
    return smith_invariants(m).size();
}

} // namespace microwrap
