#include "confsys/linear.hpp"

#include "confsys/errors.hpp"
#include "confsys/util.hpp"

#include <algorithm>
#include <functional>

namespace confsys {

IrredundancyResult is_irredundant(const IntegerMatrix& a) {
    IrredundancyResult res;
    const int k = a.cols();
    const int base_rank = a.rank();
    for (int i = 0; i < k && res.irredundant; ++i) {
        for (int j = i + 1; j < k; ++j) {
            std::vector<BigInt> row(k, 0);
            row[i] = 1;
            row[j] = -1;
            if (a.stack_row(row).rank() == base_rank) {
                res.irredundant = false;
                res.witness_pair = {i, j};
                break;
            }
        }
    }
    return res;
}

bool strong_column_condition(const IntegerMatrix& a) {
    for (int i = 0; i < a.rows(); ++i) {
        BigInt s = 0;
        for (int j = 0; j < a.cols(); ++j) s += a.at(i, j);
        if (s != 0) return false;
    }
    return true;
}

MASummary compute_m_a(const IntegerMatrix& a) {
    auto irr = is_irredundant(a);
    if (!irr.irredundant)
        throw PreconditionError("m_A: matrix is not irredundant (pair " +
                                std::to_string(irr.witness_pair.first + 1) + "," +
                                std::to_string(irr.witness_pair.second + 1) + " forced equal)");
    const int ell = a.rank();
    if (ell != a.rows()) throw PreconditionError("m_A: matrix is rank deficient");
    const int k = a.cols();
    MASummary s;
    s.rank = ell;
    bool any = false;
    for (int q = 2; q <= k; ++q) {
        for (auto& b : subsets_of_size(k, q)) {
            MASummary::Entry e;
            e.b = b;
            e.h_b = a.delete_columns(b).rank();
            long long den = static_cast<long long>(q) - 1 + e.h_b - ell;
            if (den <= 0) {
                e.skipped = true;
                s.skipped_b.push_back(b);
            } else {
                e.value = BigRat(q - 1, den);
                if (!any || e.value > s.m_a) {
                    any = true;
                    s.m_a = e.value;
                    s.argmax_q = q;
                    s.argmax_b = b;
                }
            }
            s.table.push_back(std::move(e));
        }
    }
    if (!any) throw PreconditionError("m_A: all subsets give non-positive denominators");
    BigInt num = boost::multiprecision::numerator(s.m_a);
    BigInt den = boost::multiprecision::denominator(s.m_a);
    s.threshold = "n^{-" + den.str() + "/" + num.str() + "}";
    return s;
}

namespace {

void genus_search(const std::vector<long long>& c, size_t next, std::vector<long long>& part_sums, int& best) {
    if (next == c.size()) {
        for (long long s : part_sums)
            if (s != 0) return;
        best = std::max(best, static_cast<int>(part_sums.size()));
        return;
    }
    // an upper bound on reachable parts: current parts + remaining elements
    if (static_cast<int>(part_sums.size() + (c.size() - next)) <= best) return;
    for (size_t p = 0; p < part_sums.size(); ++p) {
        part_sums[p] += c[next];
        genus_search(c, next + 1, part_sums, best);
        part_sums[p] -= c[next];
    }
    part_sums.push_back(c[next]);
    genus_search(c, next + 1, part_sums, best);
    part_sums.pop_back();
}

} // namespace

int genus(const std::vector<long long>& coefficients) {
    if (coefficients.empty()) return 0;
    long long total = 0;
    for (long long c : coefficients) total += c;
    if (total != 0) return 0;
    int best = 0;
    std::vector<long long> parts;
    genus_search(coefficients, 0, parts, best);
    return best;
}

CanonicalForm canonical_form(const BlockHom& m) {
    if (!m.invariant_over_z())
        throw PreconditionError("canonical_form: homomorphism is not invariant (diagonal not in kernel)");
    const int k = m.k1;
    const int dim = m.dim;
    const int width = k * dim;

    IntegerMatrix kernel = integer_kernel_basis(m.matrix);
    CanonicalForm cf;
    cf.dim = dim;
    cf.degree = k;
    cf.kernel_basis = kernel;
    cf.q = kernel.rows() - dim;
    if (cf.q < 0)
        throw PreconditionError("canonical_form: kernel rank below the diagonal rank");

    // Quotient by the diagonal: v -> (v_2 - v_1, ..., v_k - v_1) blockwise.
    // The image lattice is free of rank q; its HNF rows lift back with the
    // first block forced to zero, which stays inside the kernel because the
    // diagonal itself does.
    if (cf.q > 0) {
        IntegerMatrix diffs(kernel.rows(), (k - 1) * dim);
        for (int i = 0; i < kernel.rows(); ++i)
            for (int slot = 1; slot < k; ++slot)
                for (int c = 0; c < dim; ++c)
                    diffs.at(i, (slot - 1) * dim + c) =
                        kernel.at(i, slot * dim + c) - kernel.at(i, c);
        IntegerMatrix image = hermite_row_basis(diffs);
        if (image.rows() != cf.q)
            throw PreconditionError("canonical_form: unexpected quotient rank");
        for (int i = 0; i < cf.q; ++i) {
            std::vector<BigInt> f(width, 0);
            for (int slot = 1; slot < k; ++slot)
                for (int c = 0; c < dim; ++c) f[slot * dim + c] = image.at(i, (slot - 1) * dim + c);
            cf.f.push_back(std::move(f));
        }
    }
    return cf;
}

long long box_restriction_lambda(const BlockHom& m) {
    BigInt best = 0;
    for (int r = 0; r < m.matrix.rows(); ++r) {
        BigInt s = 0;
        for (int c = 0; c < m.matrix.cols(); ++c) s += boost::multiprecision::abs(m.matrix.at(r, c));
        best = std::max(best, s);
    }
    return (best + 1).convert_to<long long>();
}

} // namespace confsys
