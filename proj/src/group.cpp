#include "confsys/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace confsys {

int Group::op(int a, int b) const {
    if (kind_ == Kind::CayleyTable) return table_[static_cast<size_t>(a) * order_ + b];
    int out = 0;
    for (size_t i = 0; i < moduli_.size(); ++i) {
        long long ra = (a / strides_[i]) % moduli_[i];
        long long rb = (b / strides_[i]) % moduli_[i];
        out += static_cast<int>(((ra + rb) % moduli_[i]) * strides_[i]);
    }
    return out;
}

int Group::inverse(int a) const {
    if (kind_ == Kind::CayleyTable) return inverse_[a];
    int out = 0;
    for (size_t i = 0; i < moduli_.size(); ++i) {
        long long ra = (a / strides_[i]) % moduli_[i];
        out += static_cast<int>(((moduli_[i] - ra) % moduli_[i]) * strides_[i]);
    }
    return out;
}

std::vector<long long> Group::decode(int x) const {
    if (kind_ != Kind::AbelianProduct) throw PreconditionError("decode: group is not an abelian product");
    std::vector<long long> r(moduli_.size());
    for (size_t i = 0; i < moduli_.size(); ++i) r[i] = (x / strides_[i]) % moduli_[i];
    return r;
}

int Group::encode(const std::vector<long long>& residues) const {
    if (kind_ != Kind::AbelianProduct) throw PreconditionError("encode: group is not an abelian product");
    if (residues.size() != moduli_.size()) throw PreconditionError("encode: arity mismatch");
    long long x = 0;
    for (size_t i = 0; i < moduli_.size(); ++i) {
        long long r = residues[i] % moduli_[i];
        if (r < 0) r += moduli_[i];
        x += r * strides_[i];
    }
    return static_cast<int>(x);
}

std::string Group::describe() const {
    std::ostringstream os;
    if (kind_ == Kind::AbelianProduct) {
        os << "Z_" << moduli_[0];
        for (size_t i = 1; i < moduli_.size(); ++i) os << " x Z_" << moduli_[i];
    } else {
        os << "cayley group of order " << order_;
    }
    return os.str();
}

Group make_abelian_group(const std::vector<long long>& moduli, long long order_cap) {
    if (moduli.empty()) throw ConfigError("abelian group needs at least one modulus");
    Group g;
    g.kind_ = Group::Kind::AbelianProduct;
    g.moduli_ = moduli;
    long long order = 1;
    for (long long m : moduli) {
        if (m < 1) throw ConfigError("abelian group moduli must be >= 1");
        if (order > order_cap / m) throw BudgetError("group order cap exceeded");
        order *= m;
    }
    g.order_ = order;
    g.strides_.resize(moduli.size());
    long long s = 1;
    for (size_t i = moduli.size(); i-- > 0;) {
        g.strides_[i] = s;
        s *= moduli[i];
    }
    return g;
}

Group make_cayley_group(const std::vector<std::vector<int>>& table, bool force_assoc_check,
                        long long assoc_cap) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw ConfigError("empty Cayley table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw ConfigError("Cayley table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ConfigError("Cayley table entry out of range");
    }
    // latin square check
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int j = 0; j < n; ++j) {
            if (seen_row[table[i][j]]) throw ConfigError("not a latin square: repeated entry in row " + std::to_string(i));
            seen_row[table[i][j]] = true;
            if (seen_col[table[j][i]]) throw ConfigError("not a latin square: repeated entry in column " + std::to_string(i));
            seen_col[table[j][i]] = true;
        }
    }
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            if (table[i][j] != j || table[j][i] != j) {
                ok = false;
                break;
            }
        }
        if (ok) e = i;
    }
    if (e < 0) throw ConfigError("Cayley table has no identity element");
    bool check = force_assoc_check || n <= assoc_cap;
    if (check) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        throw ConfigError("associativity violation at triple (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");
    }
    Group g;
    g.kind_ = Group::Kind::CayleyTable;
    g.order_ = n;
    g.identity_ = 0;
    g.assoc_checked_ = check;
    // relabel so the identity gets index 0
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (e != 0) std::swap(perm[0], perm[e]);
    std::vector<int> inv_perm(n);
    for (int i = 0; i < n; ++i) inv_perm[perm[i]] = i;
    g.table_.assign(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table_[static_cast<size_t>(a) * n + b] = inv_perm[table[perm[a]][perm[b]]];
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.table_[static_cast<size_t>(a) * n + b] == 0) {
                if (g.table_[static_cast<size_t>(b) * n + a] != 0)
                    throw ConfigError("element " + std::to_string(a) + " has mismatched one-sided inverses");
                g.inverse_[a] = b;
                break;
            }
        }
        if (g.inverse_[a] < 0) throw ConfigError("element " + std::to_string(a) + " has no inverse");
    }
    return g;
}

namespace {

Group dihedral_group(int n) {
    if (n < 1) throw ConfigError("D_n needs n >= 1");
    // element j*n + i is r^i s^j with r^n = s^2 = e, s r s = r^-1
    const int order = 2 * n;
    auto idx = [n](int i, int j) { return j * n + ((i % n) + n) % n; };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int j1 = 0; j1 < 2; ++j1)
        for (int i1 = 0; i1 < n; ++i1)
            for (int j2 = 0; j2 < 2; ++j2)
                for (int i2 = 0; i2 < n; ++i2) {
                    int i = j2 == 0 ? i1 + i2 : -i1 + i2; // (r^i1 s^j1)(r^i2 s^j2)
                    t[idx(i1, j1)][idx(i2, j2)] = idx(i, j1 ^ j2);
                }
    return make_cayley_group(t, /*force_assoc_check=*/true);
}

Group symmetric_group(int n) {
    if (n < 1 || n > 5) throw ConfigError("S_n supported for 1 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const int order = static_cast<int>(perms.size());
    auto find = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    std::vector<int> comp(n);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
            t[a][b] = find(comp);
        }
    return make_cayley_group(t, /*force_assoc_check=*/order <= 64);
}

} // namespace

Group named_group(const std::string& name) {
    auto bad = [&]() { return ConfigError("unknown group name: " + name); };
    if (name.size() < 3 || name[1] != '_') throw bad();
    char fam = name[0];
    std::string rest = name.substr(2);
    long long n = 0, d = 1;
    size_t caret = rest.find('^');
    try {
        if (caret == std::string::npos) {
            n = std::stoll(rest);
        } else {
            n = std::stoll(rest.substr(0, caret));
            d = std::stoll(rest.substr(caret + 1));
        }
    } catch (...) {
        throw bad();
    }
    if (n < 1 || d < 1) throw bad();
    switch (fam) {
        case 'Z':
            return make_abelian_group(std::vector<long long>(static_cast<size_t>(d), n));
        case 'D':
            if (caret != std::string::npos) throw bad();
            return dihedral_group(static_cast<int>(n));
        case 'S':
            if (caret != std::string::npos) throw bad();
            return symmetric_group(static_cast<int>(n));
        default:
            throw bad();
    }
}

int group_power(const Group& g, int x, long long r) {
    int base = r < 0 ? g.inverse(x) : x;
    unsigned long long e = r < 0 ? static_cast<unsigned long long>(-(r + 1)) + 1 : static_cast<unsigned long long>(r);
    int acc = g.identity();
    while (e) {
        if (e & 1ULL) acc = g.op(acc, base);
        base = g.op(base, base);
        e >>= 1;
    }
    return acc;
}

bool Subgroup::contains(int x) const {
    return std::binary_search(members.begin(), members.end(), x);
}

Subgroup subgroup_generated(const Group& g, const std::vector<int>& gens) {
    for (int x : gens)
        if (x < 0 || x >= g.order()) throw PreconditionError("generator outside the group");
    std::set<int> closed{g.identity()};
    std::vector<int> frontier(closed.begin(), closed.end());
    for (int x : gens)
        if (closed.insert(x).second) frontier.push_back(x);
    for (int x : gens)
        if (closed.insert(g.inverse(x)).second) frontier.push_back(g.inverse(x));
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int a : frontier) {
            for (int b : std::vector<int>(closed.begin(), closed.end())) {
                for (int c : {g.op(a, b), g.op(b, a)}) {
                    if (closed.insert(c).second) next.push_back(c);
                }
            }
        }
        frontier = std::move(next);
    }
    Subgroup s;
    s.parent = &g;
    s.members.assign(closed.begin(), closed.end());
    s.generators = gens;
    return s;
}

BlockHom BlockHom::from_matrix(const IntegerMatrix& m, int k1, int k2, int dim) {
    if (dim < 1 || k1 < 1 || k2 < 1) throw ConfigError("BlockHom: bad shape");
    if (m.rows() != k2 * dim || m.cols() != k1 * dim)
        throw ConfigError("BlockHom: matrix is not (m*k2) x (m*k1)");
    BlockHom h;
    h.matrix = m;
    h.k1 = k1;
    h.k2 = k2;
    h.dim = dim;
    return h;
}

BlockHom BlockHom::scalar(const std::vector<std::vector<long long>>& rows) {
    IntegerMatrix m = IntegerMatrix::from_rows(rows);
    return from_matrix(m, m.cols(), m.rows(), 1);
}

bool BlockHom::invariant_over_z() const {
    for (int r = 0; r < matrix.rows(); ++r) {
        for (int c = 0; c < dim; ++c) {
            BigInt s = 0;
            for (int i = 0; i < k1; ++i) s += matrix.at(r, i * dim + c);
            if (s != 0) return false;
        }
    }
    return true;
}

bool BlockHom::invariant_mod(const Group& g) const {
    if (!g.abelian()) throw PreconditionError("invariant_mod: group must be abelian");
    const auto& mods = g.moduli();
    if (static_cast<int>(mods.size()) != dim) throw PreconditionError("invariant_mod: dimension mismatch");
    for (int r = 0; r < matrix.rows(); ++r) {
        long long target_mod = mods[r % dim];
        for (int c = 0; c < dim; ++c) {
            BigInt s = 0;
            for (int i = 0; i < k1; ++i) s += matrix.at(r, i * dim + c);
            if (s % target_mod != 0) return false;
        }
    }
    return true;
}

bool BlockHom::well_defined_mod(const Group& g) const {
    if (!g.abelian()) return false;
    const auto& mods = g.moduli();
    if (static_cast<int>(mods.size()) != dim) return false;
    for (int r = 0; r < matrix.rows(); ++r) {
        long long nt = mods[r % dim];
        for (int c = 0; c < matrix.cols(); ++c) {
            long long ns = mods[c % dim];
            if ((matrix.at(r, c) * ns) % nt != 0) return false;
        }
    }
    return true;
}

std::vector<int> hom_apply(const BlockHom& m, const Group& g, const std::vector<int>& x) {
    if (!g.abelian()) throw PreconditionError("hom_apply: group must be abelian");
    if (static_cast<int>(x.size()) != m.k1) throw PreconditionError("hom_apply: tuple arity mismatch");
    const auto& mods = g.moduli();
    if (static_cast<int>(mods.size()) != m.dim)
        throw PreconditionError("hom_apply: block dimension does not match the number of cyclic factors");
    std::vector<std::vector<long long>> xs(m.k1);
    for (int i = 0; i < m.k1; ++i) xs[i] = g.decode(x[i]);
    std::vector<int> y(m.k2);
    std::vector<long long> acc(m.dim);
    for (int j = 0; j < m.k2; ++j) {
        for (int r = 0; r < m.dim; ++r) {
            BigInt s = 0;
            for (int i = 0; i < m.k1; ++i)
                for (int c = 0; c < m.dim; ++c) s += m.entry(j, i, r, c) * xs[i][c];
            BigInt red = s % mods[r];
            if (red < 0) red += mods[r];
            acc[r] = red.convert_to<long long>();
        }
        y[j] = g.encode(acc);
    }
    return y;
}

} // namespace confsys
