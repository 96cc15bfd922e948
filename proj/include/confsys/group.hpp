#pragma once

#include "confsys/errors.hpp"
#include "confsys/matrix.hpp"

#include <memory>
#include <string>
#include <vector>

namespace confsys {

/// Finite group. Elements are handled uniformly as indices in [0, order).
/// Abelian products store only their moduli (elements decode to residue
/// tuples); general groups carry an explicit Cayley table.
class Group {
  public:
    enum class Kind { AbelianProduct, CayleyTable };

    Kind kind() const { return kind_; }
    long long order() const { return order_; }
    bool abelian() const { return kind_ == Kind::AbelianProduct; }
    const std::vector<long long>& moduli() const { return moduli_; }
    bool assoc_checked() const { return assoc_checked_; }

    int identity() const { return 0; }
    int op(int a, int b) const;
    int inverse(int a) const;

    /// Residue tuple of an abelian element.
    std::vector<long long> decode(int x) const;
    int encode(const std::vector<long long>& residues) const;

    std::string describe() const;

    friend Group make_abelian_group(const std::vector<long long>& moduli, long long order_cap);
    friend Group make_cayley_group(const std::vector<std::vector<int>>& table, bool force_assoc_check,
                                   long long assoc_cap);

  private:
    Kind kind_ = Kind::AbelianProduct;
    long long order_ = 1;
    std::vector<long long> moduli_;          // abelian case
    std::vector<long long> strides_;         // mixed-radix strides for decode/encode
    std::vector<int> table_;                 // cayley case, row-major order x order
    std::vector<int> inverse_;               // per-element inverse (cayley case)
    int identity_ = 0;
    bool assoc_checked_ = true;
};

constexpr long long kDefaultOrderCap = 50'000'000;
constexpr long long kDefaultAssocCap = 64;

Group make_abelian_group(const std::vector<long long>& moduli, long long order_cap = kDefaultOrderCap);
Group make_cayley_group(const std::vector<std::vector<int>>& table, bool force_assoc_check = false,
                        long long assoc_cap = kDefaultAssocCap);

/// Built-in families: "Z_n", "Z_n^d", "D_n" (dihedral, order 2n), "S_n" (n <= 5).
Group named_group(const std::string& name);

/// x composed with itself r times; inverses for r < 0, identity for r = 0.
int group_power(const Group& g, int x, long long r);

struct Subgroup {
    const Group* parent = nullptr;
    std::vector<int> members;    // sorted element indices, closed under op and inverse
    std::vector<int> generators;

    bool contains(int x) const;
};

Subgroup subgroup_generated(const Group& g, const std::vector<int>& gens);

/// Integer block matrix describing a homomorphism G^{k1} -> G^{k2} for an
/// abelian product G with m cyclic factors: y_j = sum_i M_{ji} x_i, reduced
/// componentwise by the moduli. Stored as the full (m*k2) x (m*k1) matrix.
struct BlockHom {
    IntegerMatrix matrix;
    int k1 = 0;
    int k2 = 0;
    int dim = 1; // m, cyclic factors per coordinate slot

    static BlockHom from_matrix(const IntegerMatrix& m, int k1, int k2, int dim);
    /// Scalar system rows (dim = 1): one row per equation, k columns.
    static BlockHom scalar(const std::vector<std::vector<long long>>& rows);

    /// Block (j,i) entry (r,c) of the underlying matrix.
    const BigInt& entry(int j, int i, int r, int c) const {
        return matrix.at(j * dim + r, i * dim + c);
    }

    /// Diagonal lies in the kernel over the integers (column blocks sum to zero).
    bool invariant_over_z() const;
    /// Diagonal lies in the kernel modulo the moduli of `g`.
    bool invariant_mod(const Group& g) const;
    /// Reductions are well defined for the moduli of `g` (mixed-moduli check).
    bool well_defined_mod(const Group& g) const;
};

/// Apply a block homomorphism to a tuple of abelian elements.
std::vector<int> hom_apply(const BlockHom& m, const Group& g, const std::vector<int>& x);

} // namespace confsys
