#include "confsys/matrix.hpp"

#include <algorithm>

namespace confsys {

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
    IntegerMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw ConfigError("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

int IntegerMatrix::rank() const {
    IntegerMatrix w = *this;
    int r = 0;
    BigInt prev = 1;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int piv = -1;
        for (int i = r; i < rows_; ++i) {
            if (w.at(i, c) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < cols_; ++j) std::swap(w.at(piv, j), w.at(r, j));
        }
        for (int i = r + 1; i < rows_; ++i) {
            for (int j = c + 1; j < cols_; ++j) {
                w.at(i, j) = (w.at(r, c) * w.at(i, j) - w.at(i, c) * w.at(r, j)) / prev;
            }
            w.at(i, c) = 0;
        }
        prev = w.at(r, c);
        ++r;
    }
    return r;
}

IntegerMatrix IntegerMatrix::delete_columns(const std::vector<int>& del) const {
    std::vector<bool> drop(cols_, false);
    for (int c : del) {
        if (c < 0 || c >= cols_) throw ConfigError("delete_columns: index out of range");
        drop[c] = true;
    }
    int kept = 0;
    for (int c = 0; c < cols_; ++c)
        if (!drop[c]) ++kept;
    IntegerMatrix m(rows_, kept);
    for (int i = 0; i < rows_; ++i) {
        int jc = 0;
        for (int j = 0; j < cols_; ++j) {
            if (!drop[j]) m.at(i, jc++) = at(i, j);
        }
    }
    return m;
}

IntegerMatrix IntegerMatrix::stack_row(const std::vector<BigInt>& row) const {
    if (static_cast<int>(row.size()) != cols_) throw ConfigError("stack_row: width mismatch");
    IntegerMatrix m(rows_ + 1, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (int j = 0; j < cols_; ++j) m.at(rows_, j) = row[j];
    return m;
}

std::vector<BigInt> IntegerMatrix::row(int r) const {
    std::vector<BigInt> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = at(r, j);
    return out;
}

namespace {

// In-place row HNF by integer row operations (gcd-style pivoting).
// Returns the list of pivot columns.
std::vector<int> hnf_rows_inplace(std::vector<std::vector<BigInt>>& rows) {
    const int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    int r = 0;
    std::vector<int> pivots;
    for (int c = 0; c < n; ++c) {
        // Euclidean reduction in column c among rows r..end.
        while (true) {
            int nonzero = -1, count = 0;
            for (size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] != 0) {
                    ++count;
                    if (nonzero < 0 || boost::multiprecision::abs(rows[i][c]) <
                                           boost::multiprecision::abs(rows[nonzero][c]))
                        nonzero = static_cast<int>(i);
                }
            }
            if (count == 0) break;
            std::swap(rows[r], rows[nonzero]);
            if (rows[r][c] < 0) {
                for (auto& x : rows[r]) x = -x;
            }
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] != 0) {
                    BigInt q = rows[i][c] / rows[r][c];
                    // floor division so remainders stay in [0, pivot)
                    if (rows[i][c] - q * rows[r][c] < 0) q -= 1;
                    for (int j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                    if (rows[i][c] != 0) clean = false;
                }
            }
            if (clean) break;
        }
        if (static_cast<size_t>(r) < rows.size() && rows[r][c] != 0) {
            // reduce entries above the pivot into [0, pivot)
            for (int i = 0; i < r; ++i) {
                BigInt q = rows[i][c] / rows[r][c];
                if (rows[i][c] - q * rows[r][c] < 0) q -= 1;
                if (q != 0)
                    for (int j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
            }
            pivots.push_back(c);
            ++r;
        }
        if (static_cast<size_t>(r) == rows.size()) break;
    }
    rows.resize(r);
    return pivots;
}

} // namespace

IntegerMatrix hermite_row_basis(const IntegerMatrix& m) {
    std::vector<std::vector<BigInt>> rows;
    rows.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    hnf_rows_inplace(rows);
    IntegerMatrix out(static_cast<int>(rows.size()), m.cols());
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(static_cast<int>(i), j) = rows[i][j];
    return out;
}

IntegerMatrix integer_kernel_basis(const IntegerMatrix& m) {
    // HNF of [M^T | I]: rows of the identity block whose M^T-part reduced to
    // zero span the kernel lattice of M.
    const int k = m.cols();
    const int r = m.rows();
    std::vector<std::vector<BigInt>> rows(k, std::vector<BigInt>(r + k, 0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < r; ++j) rows[i][j] = m.at(j, i);
        rows[i][r + i] = 1;
    }
    hnf_rows_inplace(rows);
    std::vector<std::vector<BigInt>> ker;
    for (auto& row : rows) {
        bool zero = true;
        for (int j = 0; j < r; ++j) {
            if (row[j] != 0) {
                zero = false;
                break;
            }
        }
        if (zero) ker.emplace_back(row.begin() + r, row.end());
    }
    hnf_rows_inplace(ker);
    IntegerMatrix out(static_cast<int>(ker.size()), k);
    for (size_t i = 0; i < ker.size(); ++i)
        for (int j = 0; j < k; ++j) out.at(static_cast<int>(i), j) = ker[i][j];
    return out;
}

bool lattice_contains(const IntegerMatrix& basis, const std::vector<BigInt>& v) {
    if (static_cast<int>(v.size()) != basis.cols()) throw ConfigError("lattice_contains: width mismatch");
    std::vector<BigInt> w = v;
    int row = 0;
    for (int c = 0; c < basis.cols() && row < basis.rows(); ++c) {
        if (basis.at(row, c) == 0) continue;
        if (w[c] != 0) {
            if (w[c] % basis.at(row, c) != 0) return false;
            BigInt q = w[c] / basis.at(row, c);
            for (int j = 0; j < basis.cols(); ++j) w[j] -= q * basis.at(row, j);
        }
        ++row;
    }
    for (const auto& x : w)
        if (x != 0) return false;
    return true;
}

} // namespace confsys
