#pragma once

#include "confsys/bigint.hpp"
#include "confsys/group.hpp"
#include "confsys/matrix.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confsys {

struct IrredundancyResult {
    bool irredundant = true;
    std::pair<int, int> witness_pair{-1, -1}; // forced-equal pair when not irredundant (0-based)
};

/// A is irredundant when for every pair i != j the rational kernel is not
/// contained in the hyperplane x_i = x_j, i.e. stacking the row e_i - e_j
/// raises the rank.
IrredundancyResult is_irredundant(const IntegerMatrix& a);

/// Columns of A sum to the zero vector (equivalently every row sums to zero);
/// this is exactly invariance of the induced homomorphism.
bool strong_column_condition(const IntegerMatrix& a);

struct MASummary {
    BigRat m_a;
    int argmax_q = 0;
    std::vector<int> argmax_b;        // 0-based column subset
    int rank = 0;                     // ell
    std::string threshold;            // "n^{-1/m_A}"
    struct Entry {
        std::vector<int> b;
        int h_b = 0;
        bool skipped = false;         // non-positive denominator
        BigRat value;
    };
    std::vector<Entry> table;
    std::vector<std::vector<int>> skipped_b;
};

/// Rodl-Rucinski exponent m_A = max over q in [2,k], |B| = q of
/// (q-1)/(q-1+h_B-ell), h_B = rank of A with the B columns deleted.
/// Requires A irredundant with full row rank.
MASummary compute_m_a(const IntegerMatrix& a);

/// Largest number of parts in a partition of the coefficient index set with
/// every part summing to zero; 0 when no such partition exists.
int genus(const std::vector<long long>& coefficients);

struct CanonicalForm {
    int q = 0;   // free direction vectors beyond the diagonal
    int dim = 1; // m
    int degree = 0;
    // F[i] is a k-tuple of m-dimensional integer vectors, stored flat (k*m).
    std::vector<std::vector<BigInt>> f;
    IntegerMatrix kernel_basis; // full kernel lattice, HNF rows
};

/// Kernel lattice of an invariant homomorphism split as diagonal + q free
/// directions: kernel = { diag(x0) + sum lambda_i F_i }.
CanonicalForm canonical_form(const BlockHom& m);

/// Minimal scale such that solutions with coordinates in [1,n] read the same
/// in Z_{lambda*n} and in Z: 1 + the largest row l1-norm of the matrix.
long long box_restriction_lambda(const BlockHom& m);

} // namespace confsys
