#include "confsys/config_system.hpp"

#include "confsys/rng.hpp"
#include "confsys/util.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

namespace confsys {

// ---------- Ambient ----------

Ambient Ambient::of_group(Group g, std::string label) {
    Ambient a;
    a.kind = Kind::Group;
    a.group = std::make_shared<Group>(std::move(g));
    a.size = a.group->order();
    a.label = label.empty() ? a.group->describe() : std::move(label);
    return a;
}

Ambient Ambient::box(int n, int m) {
    if (n < 1 || m < 1) throw ConfigError("box ambient needs n >= 1, m >= 1");
    Ambient a;
    a.kind = Kind::Box;
    a.box_n = n;
    a.box_m = m;
    a.size = 1;
    for (int i = 0; i < m; ++i) {
        if (a.size > (1LL << 62) / n) throw BudgetError("box ambient too large");
        a.size *= n;
    }
    a.label = "[1," + std::to_string(n) + "]^" + std::to_string(m);
    return a;
}

Ambient Ambient::plain(long long size, std::string label) {
    if (size < 0) throw ConfigError("plain ambient needs size >= 0");
    Ambient a;
    a.kind = Kind::Plain;
    a.size = size;
    a.label = label.empty() ? "set of " + std::to_string(size) : std::move(label);
    return a;
}

std::vector<long long> Ambient::box_coords(int index) const {
    if (kind != Kind::Box) throw PreconditionError("box_coords: ambient is not a box");
    std::vector<long long> c(box_m);
    long long x = index;
    for (int i = box_m - 1; i >= 0; --i) {
        c[i] = x % box_n + 1;
        x /= box_n;
    }
    return c;
}

int Ambient::box_index(const std::vector<long long>& coords) const {
    if (kind != Kind::Box) throw PreconditionError("box_index: ambient is not a box");
    if (static_cast<int>(coords.size()) != box_m) throw PreconditionError("box_index: arity mismatch");
    long long x = 0;
    for (int i = 0; i < box_m; ++i) {
        if (coords[i] < 1 || coords[i] > box_n) throw PreconditionError("box_index: coordinate out of range");
        x = x * box_n + (coords[i] - 1);
    }
    return static_cast<int>(x);
}

std::string Ambient::element_name(int index) const {
    switch (kind) {
        case Kind::Group: {
            if (group->abelian()) {
                auto r = group->decode(index);
                if (r.size() == 1) return std::to_string(r[0]);
                std::string s = "(";
                for (size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
                return s + ")";
            }
            return "g" + std::to_string(index);
        }
        case Kind::Box: {
            auto c = box_coords(index);
            if (c.size() == 1) return std::to_string(c[0]);
            std::string s = "(";
            for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
            return s + ")";
        }
        default:
            return std::to_string(index);
    }
}

// ---------- ConfigSystem ----------

namespace {

int bits_for(long long n) {
    int b = 1;
    while ((1LL << b) < n) ++b;
    return b;
}

// Lexicographic sort + dedup of k-tuples, packing into 64-bit keys when possible.
void sort_dedup_rows(std::vector<std::int32_t>& flat, int k, long long ambient_size) {
    const long long n = static_cast<long long>(flat.size()) / k;
    if (n <= 1) return;
    const int bits = bits_for(std::max<long long>(ambient_size, 2));
    if (static_cast<long long>(bits) * k <= 64) {
        std::vector<std::uint64_t> keys(n);
        for (long long i = 0; i < n; ++i) {
            std::uint64_t key = 0;
            for (int j = 0; j < k; ++j) key = (key << bits) | static_cast<std::uint64_t>(flat[i * k + j]);
            keys[i] = key;
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        flat.resize(keys.size() * k);
        const std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
        for (size_t i = 0; i < keys.size(); ++i) {
            std::uint64_t key = keys[i];
            for (int j = k - 1; j >= 0; --j) {
                flat[i * k + j] = static_cast<std::int32_t>(key & mask);
                key >>= bits;
            }
        }
        return;
    }
    std::vector<long long> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto cmp = [&](long long a, long long b) {
        return std::lexicographical_compare(flat.begin() + a * k, flat.begin() + (a + 1) * k,
                                            flat.begin() + b * k, flat.begin() + (b + 1) * k);
    };
    std::sort(idx.begin(), idx.end(), cmp);
    std::vector<std::int32_t> out;
    out.reserve(flat.size());
    for (long long i = 0; i < n; ++i) {
        if (i > 0 && std::equal(flat.begin() + idx[i] * k, flat.begin() + (idx[i] + 1) * k,
                                flat.begin() + idx[i - 1] * k))
            continue;
        out.insert(out.end(), flat.begin() + idx[i] * k, flat.begin() + (idx[i] + 1) * k);
    }
    flat = std::move(out);
}

int distinct_values(const std::int32_t* t, int k) {
    std::int32_t buf[32];
    int d = 0;
    for (int i = 0; i < k; ++i) {
        bool seen = false;
        for (int j = 0; j < d; ++j) {
            if (buf[j] == t[i]) {
                seen = true;
                break;
            }
        }
        if (!seen) buf[d++] = t[i];
    }
    return d;
}

} // namespace

ConfigSystem::ConfigSystem(Ambient ambient, int degree, std::vector<std::int32_t> flat_tuples, Provenance prov)
    : ambient_(std::move(ambient)), k_(degree), flat_(std::move(flat_tuples)), prov_(prov) {
    if (k_ < 1 || k_ > 30) throw ConfigError("degree must be in [1,30]");
    if (flat_.size() % static_cast<size_t>(k_) != 0) throw ConfigError("flat tuple array length not a multiple of k");
    for (std::int32_t v : flat_)
        if (v < 0 || v >= ambient_.size) throw ConfigError("solution entry outside the ambient set");
    sort_dedup_rows(flat_, k_, ambient_.size);
    count_ = static_cast<long long>(flat_.size()) / k_;
    class_counts_.assign(k_, 0);
    for (long long i = 0; i < count_; ++i) {
        int d = distinct_values(tuple(i), k_);
        ++class_counts_[d - 1];
        if (d == k_) sk_rows_.push_back(static_cast<std::int32_t>(i));
    }
}

bool ConfigSystem::contains(const std::vector<std::int32_t>& t) const {
    if (static_cast<int>(t.size()) != k_) return false;
    long long lo = 0, hi = count_;
    while (lo < hi) {
        long long mid = (lo + hi) / 2;
        const std::int32_t* row = tuple(mid);
        int c = 0;
        for (int j = 0; j < k_; ++j) {
            if (row[j] != t[j]) {
                c = row[j] < t[j] ? -1 : 1;
                break;
            }
        }
        if (c == 0) return true;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return false;
}

std::string ConfigSystem::describe_source() const {
    switch (prov_) {
        case Provenance::KernelOfHom: return "kernel-of-hom";
        case Provenance::Predicate: return "predicate";
        case Provenance::ExplicitList: return "explicit-list";
        default: return "family";
    }
}

// ---------- construction ----------

namespace {

struct BackSolve {
    bool usable = false;
    std::vector<int> free_cols;
    // per pivot row: pivot column, coefficients over free columns, rhs
    struct PivotRow {
        int col;
        std::vector<long long> coef; // aligned with free_cols
        long long rhs;
    };
    std::vector<PivotRow> pivots;
    struct CheckRow {
        std::vector<long long> coef;
        long long rhs;
    };
    std::vector<CheckRow> checks;
};

// Integer Gauss-Jordan over unit pivots; valid modulo any single modulus n.
BackSolve try_back_solve(const BlockHom& m, const std::vector<long long>& rhs_in, long long n) {
    const int rows = m.matrix.rows();
    const int cols = m.matrix.cols();
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
    std::vector<BigInt> rhs(rows);
    for (int i = 0; i < rows; ++i) {
        rhs[i] = rhs_in[i];
        for (int j = 0; j < cols; ++j) a[i][j] = m.matrix.at(i, j);
    }
    std::vector<int> pivot_col(rows, -1);
    std::vector<bool> col_used(cols, false);
    for (int step = 0; step < rows; ++step) {
        int pr = -1, pc = -1;
        for (int i = 0; i < rows && pr < 0; ++i) {
            if (pivot_col[i] >= 0) continue;
            for (int j = 0; j < cols; ++j) {
                if (!col_used[j] && (a[i][j] == 1 || a[i][j] == -1)) {
                    pr = i;
                    pc = j;
                    break;
                }
            }
        }
        if (pr < 0) break;
        if (a[pr][pc] == -1) {
            for (auto& x : a[pr]) x = -x;
            rhs[pr] = -rhs[pr];
        }
        for (int i = 0; i < rows; ++i) {
            if (i == pr || a[i][pc] == 0) continue;
            BigInt f = a[i][pc];
            for (int j = 0; j < cols; ++j) a[i][j] -= f * a[pr][j];
            rhs[i] -= f * rhs[pr];
        }
        pivot_col[pr] = pc;
        col_used[pc] = true;
    }
    BackSolve bs;
    bs.usable = true;
    for (int j = 0; j < cols; ++j)
        if (!col_used[j]) bs.free_cols.push_back(j);
    auto redc = [n](const BigInt& v) {
        BigInt r = v % n;
        if (r < 0) r += n;
        return r.convert_to<long long>();
    };
    for (int i = 0; i < rows; ++i) {
        if (pivot_col[i] >= 0) {
            BackSolve::PivotRow p;
            p.col = pivot_col[i];
            p.rhs = redc(rhs[i]);
            for (int j : bs.free_cols) p.coef.push_back(redc(a[i][j]));
            bs.pivots.push_back(std::move(p));
        } else {
            BackSolve::CheckRow c;
            c.rhs = redc(rhs[i]);
            bool nontrivial = c.rhs != 0;
            for (int j : bs.free_cols) {
                c.coef.push_back(redc(a[i][j]));
                if (c.coef.back() != 0) nontrivial = true;
            }
            if (nontrivial) bs.checks.push_back(std::move(c));
        }
    }
    return bs;
}

} // namespace

ConfigSystem from_kernel(std::shared_ptr<const Group> g, int k, const BlockHom& m,
                         const std::vector<int>& b, const Budget& budget) {
    if (!g) throw ConfigError("from_kernel: null group");
    if (!g->abelian()) throw PreconditionError("from_kernel: group must be an abelian product");
    if (m.k1 != k) throw PreconditionError("from_kernel: hom arity does not match degree");
    if (!m.well_defined_mod(*g))
        throw PreconditionError("from_kernel: hom is not well defined for these moduli");
    std::vector<int> target = b;
    if (target.empty()) target.assign(m.k2, g->identity());
    if (static_cast<int>(target.size()) != m.k2) throw PreconditionError("from_kernel: target arity mismatch");

    const auto& mods = g->moduli();
    const int dim = m.dim;
    std::vector<long long> rhs(static_cast<size_t>(m.k2) * dim);
    for (int j = 0; j < m.k2; ++j) {
        auto r = g->decode(target[j]);
        for (int c = 0; c < dim; ++c) rhs[j * dim + c] = r[c];
    }

    const long long order = g->order();
    std::vector<std::int32_t> flat;
    bool equal_mods = std::all_of(mods.begin(), mods.end(), [&](long long x) { return x == mods[0]; });

    if (equal_mods) {
        const long long n = mods[0];
        BackSolve bs = try_back_solve(m, rhs, n);
        const int nf = static_cast<int>(bs.free_cols.size());
        double log_total = nf * std::log2(static_cast<double>(std::max<long long>(n, 2)));
        if (n > 1 && log_total > std::log2(static_cast<double>(budget.max_enumeration)))
            throw BudgetError("from_kernel: enumeration of " + std::to_string(nf) + " free coordinates over Z_" +
                              std::to_string(n) + " exceeds the budget");
        long long total = 1;
        for (int i = 0; i < nf; ++i) total *= n;
        const int cols = m.matrix.cols();
        std::vector<long long> assign(nf, 0);
        std::vector<long long> scalars(cols);
        std::vector<long long> residues(dim);
        for (long long it = 0; it < total; ++it) {
            long long v = it;
            for (int i = nf - 1; i >= 0; --i) {
                assign[i] = v % n;
                v /= n;
            }
            bool ok = true;
            for (const auto& c : bs.checks) {
                long long s = 0;
                for (int i = 0; i < nf; ++i) s += c.coef[i] * assign[i];
                if ((s - c.rhs) % n != 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (int i = 0; i < nf; ++i) scalars[bs.free_cols[i]] = assign[i];
            for (const auto& p : bs.pivots) {
                long long s = p.rhs;
                for (int i = 0; i < nf; ++i) s -= p.coef[i] * assign[i];
                s %= n;
                if (s < 0) s += n;
                scalars[p.col] = s;
            }
            if (static_cast<long long>(flat.size()) / k >= budget.max_solutions)
                throw BudgetError("from_kernel: solution count exceeds the budget");
            for (int slot = 0; slot < k; ++slot) {
                for (int c = 0; c < dim; ++c) residues[c] = scalars[slot * dim + c];
                flat.push_back(g->encode(residues));
            }
        }
    } else {
        // mixed moduli: depth-first enumeration of G^k with per-row pruning
        double log_total = k * std::log2(static_cast<double>(std::max<long long>(order, 2)));
        if (log_total > std::log2(static_cast<double>(budget.max_enumeration)))
            throw BudgetError("from_kernel: |G|^k enumeration exceeds the budget (needs " +
                              std::to_string(std::pow(static_cast<double>(order), k)) + " tuples)");
        const int rows = m.matrix.rows();
        std::vector<int> last_slot(rows, -1);
        for (int r = 0; r < rows; ++r)
            for (int slot = 0; slot < k; ++slot)
                for (int c = 0; c < dim; ++c)
                    if (m.matrix.at(r, slot * dim + c) != 0) last_slot[r] = std::max(last_slot[r], slot);
        std::vector<std::vector<long long>> decoded(order);
        for (long long x = 0; x < order; ++x) decoded[x] = g->decode(static_cast<int>(x));
        std::vector<std::int32_t> cur(k);
        std::vector<std::vector<BigInt>> acc(k + 1, std::vector<BigInt>(rows, 0));
        std::function<void(int)> dfs = [&](int slot) {
            if (slot == k) {
                if (static_cast<long long>(flat.size()) / k >= budget.max_solutions)
                    throw BudgetError("from_kernel: solution count exceeds the budget");
                flat.insert(flat.end(), cur.begin(), cur.end());
                return;
            }
            for (long long x = 0; x < order; ++x) {
                cur[slot] = static_cast<std::int32_t>(x);
                for (int r = 0; r < rows; ++r) {
                    BigInt s = acc[slot][r];
                    for (int c = 0; c < dim; ++c) s += m.matrix.at(r, slot * dim + c) * decoded[x][c];
                    acc[slot + 1][r] = s;
                }
                bool ok = true;
                for (int r = 0; r < rows && ok; ++r) {
                    if (last_slot[r] == slot || (last_slot[r] < 0 && slot == 0)) {
                        BigInt d = acc[slot + 1][r] - rhs[r];
                        if (d % mods[r % dim] != 0) ok = false;
                    }
                }
                if (ok) dfs(slot + 1);
            }
        };
        dfs(0);
    }
    return ConfigSystem(Ambient::of_group(*g), k, std::move(flat), Provenance::KernelOfHom);
}

ConfigSystem from_predicate(Ambient ambient, int k,
                            const std::function<bool(const std::vector<std::int32_t>&)>& pred,
                            const Budget& budget) {
    double log_total = k * std::log2(static_cast<double>(std::max<long long>(ambient.size, 2)));
    if (log_total > std::log2(static_cast<double>(budget.max_enumeration)))
        throw BudgetError("from_predicate: |ambient|^k exceeds the enumeration budget");
    std::vector<std::int32_t> flat;
    std::vector<std::int32_t> cur(k, 0);
    const long long n = ambient.size;
    if (n == 0) return ConfigSystem(std::move(ambient), k, {}, Provenance::Predicate);
    while (true) {
        if (pred(cur)) {
            if (static_cast<long long>(flat.size()) / k >= budget.max_solutions)
                throw BudgetError("from_predicate: solution count exceeds the budget");
            flat.insert(flat.end(), cur.begin(), cur.end());
        }
        int i = k - 1;
        while (i >= 0 && cur[i] == n - 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return ConfigSystem(std::move(ambient), k, std::move(flat), Provenance::Predicate);
}

ConfigSystem from_explicit(Ambient ambient, int k, std::vector<std::vector<std::int32_t>> tuples) {
    std::vector<std::int32_t> flat;
    flat.reserve(tuples.size() * k);
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != k) throw ConfigError("explicit tuple arity mismatch");
        flat.insert(flat.end(), t.begin(), t.end());
    }
    return ConfigSystem(std::move(ambient), k, std::move(flat), Provenance::ExplicitList);
}

// ---------- partition ----------

SolutionPartition partition_by_distinctness(const ConfigSystem& sys) {
    SolutionPartition p;
    p.k = sys.degree();
    p.counts = sys.class_counts();
    p.class_rows.assign(sys.degree(), {});
    for (int j = 0; j < sys.degree(); ++j) p.class_rows[j].reserve(p.counts[j]);
    for (long long i = 0; i < sys.size(); ++i) {
        int d = distinct_values(sys.tuple(i), sys.degree());
        p.class_rows[d - 1].push_back(static_cast<std::int32_t>(i));
    }
    return p;
}

// ---------- projections ----------

namespace {

struct RunScan {
    long long image = 0, max_fiber = 0, min_fiber = 0, ties = 0;
    std::uint64_t argmax_key = 0, argmin_key = 0;
};

template <typename Key, typename Vec>
RunScan scan_runs(const Vec& keys) {
    RunScan r;
    size_t i = 0;
    while (i < keys.size()) {
        size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        long long run = static_cast<long long>(j - i);
        ++r.image;
        if (run > r.max_fiber) {
            r.max_fiber = run;
            r.argmax_key = static_cast<std::uint64_t>(keys[i]);
            r.ties = 1;
        } else if (run == r.max_fiber) {
            ++r.ties;
        }
        if (r.min_fiber == 0 || run < r.min_fiber) {
            r.min_fiber = run;
            r.argmin_key = static_cast<std::uint64_t>(keys[i]);
        }
        i = j;
    }
    return r;
}

std::vector<std::int32_t> unpack_key(std::uint64_t key, int bits, int width) {
    std::vector<std::int32_t> v(width);
    const std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
    for (int j = width - 1; j >= 0; --j) {
        v[j] = static_cast<std::int32_t>(key & mask);
        key >>= bits;
    }
    return v;
}

} // namespace

ProjectionStats project_stats(const ConfigSystem& sys, const std::vector<int>& U, bool restricted) {
    if (U.empty()) throw PreconditionError("project: U must be nonempty");
    std::vector<int> u = U;
    std::sort(u.begin(), u.end());
    if (u.front() < 0 || u.back() >= sys.degree() || std::adjacent_find(u.begin(), u.end()) != u.end())
        throw PreconditionError("project: U must be a set of coordinates in [0,k)");

    ProjectionStats st;
    st.U = u;
    st.restricted = restricted;

    const int k = sys.degree();
    const int w = static_cast<int>(u.size());
    const long long nrows = restricted ? sys.sk_count() : sys.size();
    if (nrows == 0) return st;

    auto row_of = [&](long long i) -> const std::int32_t* {
        return restricted ? sys.tuple(sys.sk_rows()[i]) : sys.tuple(i);
    };

    if (w == k) { // identity projection on a deduplicated list: all fibers are 1
        st.image_size = nrows;
        st.max_fiber = st.min_fiber = 1;
        st.argmax_ties = nrows;
        st.argmax_value.assign(row_of(0), row_of(0) + k);
        st.argmin_value = st.argmax_value;
        return st;
    }

    const int bits = bits_for(std::max<long long>(sys.ambient().size, 2));
    const bool packable = static_cast<long long>(bits) * w <= 64;

    // small key spaces: direct counting, no sort
    double cells_log = w * std::log2(static_cast<double>(std::max<long long>(sys.ambient().size, 2)));
    if (packable && cells_log <= std::log2(8e6) && w <= 2) {
        long long cells = 1;
        for (int i = 0; i < w; ++i) cells *= sys.ambient().size;
        std::vector<std::uint32_t> cnt(static_cast<size_t>(cells), 0);
        const long long n = sys.ambient().size;
        for (long long i = 0; i < nrows; ++i) {
            const std::int32_t* row = row_of(i);
            long long key = 0;
            for (int j = 0; j < w; ++j) key = key * n + row[u[j]];
            ++cnt[static_cast<size_t>(key)];
        }
        RunScan r;
        for (long long key = 0; key < cells; ++key) {
            long long c = cnt[static_cast<size_t>(key)];
            if (c == 0) continue;
            ++r.image;
            if (c > r.max_fiber) {
                r.max_fiber = c;
                r.argmax_key = static_cast<std::uint64_t>(key);
                r.ties = 1;
            } else if (c == r.max_fiber) {
                ++r.ties;
            }
            if (r.min_fiber == 0 || c < r.min_fiber) {
                r.min_fiber = c;
                r.argmin_key = static_cast<std::uint64_t>(key);
            }
        }
        st.image_size = r.image;
        st.max_fiber = r.max_fiber;
        st.min_fiber = r.min_fiber;
        st.argmax_ties = r.ties;
        st.argmax_value.resize(w);
        st.argmin_value.resize(w);
        long long ka = static_cast<long long>(r.argmax_key), ki = static_cast<long long>(r.argmin_key);
        for (int j = w - 1; j >= 0; --j) {
            st.argmax_value[j] = static_cast<std::int32_t>(ka % n);
            ka /= n;
            st.argmin_value[j] = static_cast<std::int32_t>(ki % n);
            ki /= n;
        }
        return st;
    }

    if (packable) {
        std::vector<std::uint64_t> keys(nrows);
        for (long long i = 0; i < nrows; ++i) {
            const std::int32_t* row = row_of(i);
            std::uint64_t key = 0;
            for (int j = 0; j < w; ++j) key = (key << bits) | static_cast<std::uint64_t>(row[u[j]]);
            keys[i] = key;
        }
        std::sort(keys.begin(), keys.end());
        RunScan r = scan_runs<std::uint64_t>(keys);
        st.image_size = r.image;
        st.max_fiber = r.max_fiber;
        st.min_fiber = r.min_fiber;
        st.argmax_ties = r.ties;
        st.argmax_value = unpack_key(r.argmax_key, bits, w);
        st.argmin_value = unpack_key(r.argmin_key, bits, w);
        return st;
    }

    // wide tuples: sort row indices by projected coordinates
    std::vector<long long> idx(nrows);
    std::iota(idx.begin(), idx.end(), 0);
    auto proj_less = [&](long long a, long long b) {
        const std::int32_t* ra = row_of(a);
        const std::int32_t* rb = row_of(b);
        for (int j = 0; j < w; ++j) {
            if (ra[u[j]] != rb[u[j]]) return ra[u[j]] < rb[u[j]];
        }
        return false;
    };
    auto proj_eq = [&](long long a, long long b) {
        const std::int32_t* ra = row_of(a);
        const std::int32_t* rb = row_of(b);
        for (int j = 0; j < w; ++j)
            if (ra[u[j]] != rb[u[j]]) return false;
        return true;
    };
    std::sort(idx.begin(), idx.end(), proj_less);
    long long i = 0;
    RunScan r;
    long long argmax_at = 0, argmin_at = 0;
    while (i < nrows) {
        long long j = i;
        while (j < nrows && proj_eq(idx[j], idx[i])) ++j;
        long long run = j - i;
        ++r.image;
        if (run > r.max_fiber) {
            r.max_fiber = run;
            argmax_at = idx[i];
            r.ties = 1;
        } else if (run == r.max_fiber) {
            ++r.ties;
        }
        if (r.min_fiber == 0 || run < r.min_fiber) {
            r.min_fiber = run;
            argmin_at = idx[i];
        }
        i = j;
    }
    st.image_size = r.image;
    st.max_fiber = r.max_fiber;
    st.min_fiber = r.min_fiber;
    st.argmax_ties = r.ties;
    st.argmax_value.resize(w);
    st.argmin_value.resize(w);
    for (int j = 0; j < w; ++j) {
        st.argmax_value[j] = row_of(argmax_at)[u[j]];
        st.argmin_value[j] = row_of(argmin_at)[u[j]];
    }
    return st;
}

ProjectionMap project(const ConfigSystem& sys, const std::vector<int>& U, bool restricted,
                      const Budget& budget) {
    ProjectionMap pm;
    pm.stats = project_stats(sys, U, restricted);
    if (pm.stats.image_size > budget.max_projection_entries)
        throw BudgetError("project: image has " + std::to_string(pm.stats.image_size) +
                          " entries, over the budget");
    const auto& u = pm.stats.U;
    const int w = static_cast<int>(u.size());
    const long long nrows = restricted ? sys.sk_count() : sys.size();
    std::vector<std::vector<std::int32_t>> proj(nrows, std::vector<std::int32_t>(w));
    for (long long i = 0; i < nrows; ++i) {
        const std::int32_t* row = restricted ? sys.tuple(sys.sk_rows()[i]) : sys.tuple(i);
        for (int j = 0; j < w; ++j) proj[i][j] = row[u[j]];
    }
    std::sort(proj.begin(), proj.end());
    for (long long i = 0; i < nrows;) {
        long long j = i;
        while (j < nrows && proj[j] == proj[i]) ++j;
        pm.image.push_back(proj[i]);
        pm.fiber.push_back(j - i);
        i = j;
    }
    return pm;
}

// ---------- degrees of freedom ----------

FreedomTable freedom_table(const ConfigSystem& sys, int workers) {
    const int k = sys.degree();
    FreedomTable ft;
    ft.k = k;
    ft.s_empty = sys.size() == 0;
    ft.sk_empty = sys.sk_count() == 0;
    ft.alpha.assign(k, 0);
    ft.alpha_k.assign(k, 0);
    ft.argmax.assign(k, {});
    ft.argmax_k.assign(k, {});

    struct Task {
        std::vector<int> U;
        bool restricted;
    };
    std::vector<Task> tasks;
    for (int l = 1; l <= k; ++l) {
        for (auto& u : subsets_of_size(k, l)) {
            if (!ft.s_empty) tasks.push_back({u, false});
            if (!ft.sk_empty) tasks.push_back({u, true});
        }
    }
    std::vector<ProjectionStats> results(tasks.size());
    parallel_for(static_cast<std::int64_t>(tasks.size()), workers, [&](std::int64_t i) {
        results[i] = project_stats(sys, tasks[i].U, tasks[i].restricted);
    });
    for (size_t i = 0; i < tasks.size(); ++i) {
        const auto& st = results[i];
        const int l = static_cast<int>(tasks[i].U.size());
        auto& best = tasks[i].restricted ? ft.alpha_k[l - 1] : ft.alpha[l - 1];
        auto& arg = tasks[i].restricted ? ft.argmax_k[l - 1] : ft.argmax[l - 1];
        if (st.max_fiber > best) {
            best = st.max_fiber;
            arg.clear();
        }
        if (st.max_fiber == best && best > 0)
            arg.push_back({tasks[i].U, st.argmax_value, st.argmax_ties});
    }
    return ft;
}

// ---------- invariance ----------

bool is_invariant(const ConfigSystem& sys) {
    if (!sys.ambient().is_group()) throw PreconditionError("is_invariant: ambient is not a group");
    const long long n = sys.ambient().size;
    std::vector<std::int32_t> diag(sys.degree());
    for (long long x = 0; x < n; ++x) {
        std::fill(diag.begin(), diag.end(), static_cast<std::int32_t>(x));
        if (!sys.contains(diag)) return false;
    }
    return true;
}

// ---------- rho-uniformity ----------

RhoUniformity rho_uniformity(const ConfigSystem& sys) {
    if (sys.sk_count() == 0) throw PreconditionError("rho_uniformity: S^(k) is empty");
    RhoUniformity best;
    best.rho = 2; // above any valid ratio
    for (int l = 2; l <= sys.degree(); ++l) {
        for (auto& u : subsets_of_size(sys.degree(), l)) {
            ProjectionStats st = project_stats(sys, u, /*restricted=*/true);
            BigRat ratio(st.min_fiber, st.max_fiber);
            if (ratio < best.rho) {
                best.rho = ratio;
                best.argmin_U = u;
                best.argmin_value = st.argmin_value;
                best.min_fiber = st.min_fiber;
                best.max_fiber = st.max_fiber;
            }
        }
    }
    return best;
}

// ---------- V-property ----------

namespace {

long long count_inside(const ConfigSystem& sys, const std::vector<char>& in_x) {
    long long c = 0;
    const int k = sys.degree();
    for (long long i = 0; i < sys.size(); ++i) {
        const std::int32_t* row = sys.tuple(i);
        bool all = true;
        for (int j = 0; j < k; ++j) {
            if (!in_x[static_cast<size_t>(row[j])]) {
                all = false;
                break;
            }
        }
        if (all) ++c;
    }
    return c;
}

} // namespace

VPropertyEstimate v_property_estimate(const ConfigSystem& sys, double epsilon, bool exhaustive,
                                      long long trials, std::uint64_t seed, const Budget& budget) {
    if (epsilon <= 0.0 || epsilon > 1.0) throw PreconditionError("v_property: epsilon must be in (0,1]");
    VPropertyEstimate est;
    est.epsilon = epsilon;
    est.exhaustive = exhaustive;
    if (sys.size() == 0) {
        est.empty_system = true;
        est.gamma_hat = 0;
        return est;
    }
    const long long n = sys.ambient().size;
    long long m = static_cast<long long>(std::ceil(epsilon * static_cast<double>(n) - 1e-9));
    if (m < 0) m = 0;
    if (m > n) m = n;
    est.subset_size = m;

    // |X^k cap S| is monotone in X, so the minimum over |X| >= m is attained
    // at |X| = m; only size-m subsets are visited.
    std::vector<char> in_x(static_cast<size_t>(n), 0);
    long long best = -1;
    std::vector<std::int32_t> witness;

    if (exhaustive) {
        BigInt combos = big_binomial(n, m);
        if (combos > budget.max_subsets)
            throw BudgetError("v_property: C(" + std::to_string(n) + "," + std::to_string(m) +
                              ") subsets exceed the budget");
        std::vector<int> cur(static_cast<size_t>(m));
        for (long long i = 0; i < m; ++i) cur[i] = static_cast<int>(i);
        bool done = m == 0;
        long long tested = 0;
        if (m == 0) {
            best = count_inside(sys, in_x); // empty X
            tested = 1;
        }
        while (!done) {
            std::fill(in_x.begin(), in_x.end(), 0);
            for (int v : cur) in_x[v] = 1;
            long long c = count_inside(sys, in_x);
            ++tested;
            if (best < 0 || c < best) {
                best = c;
                witness.assign(cur.begin(), cur.end());
            }
            int i = static_cast<int>(m) - 1;
            while (i >= 0 && cur[i] == n - m + i) --i;
            if (i < 0) break;
            ++cur[i];
            for (size_t j = i + 1; j < cur.size(); ++j) cur[j] = cur[j - 1] + 1;
        }
        est.subsets_tested = tested;
    } else {
        if (trials <= 0) throw PreconditionError("v_property: sampled mode needs trials > 0");
        std::vector<int> pool(static_cast<size_t>(n));
        std::iota(pool.begin(), pool.end(), 0);
        for (long long t = 0; t < trials; ++t) {
            Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
            // partial Fisher-Yates for an m-subset
            for (long long i = 0; i < m; ++i) {
                long long j = i + static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(n - i)));
                std::swap(pool[i], pool[j]);
            }
            std::fill(in_x.begin(), in_x.end(), 0);
            for (long long i = 0; i < m; ++i) in_x[pool[i]] = 1;
            long long c = count_inside(sys, in_x);
            if (best < 0 || c < best) {
                best = c;
                witness.assign(pool.begin(), pool.begin() + m);
                std::sort(witness.begin(), witness.end());
            }
        }
        est.subsets_tested = trials;
    }
    est.min_solutions = best < 0 ? 0 : best;
    est.gamma_hat = BigRat(est.min_solutions, sys.size());
    est.witness = witness;
    return est;
}

// ---------- normality ----------

NormalityReport normality_report(const std::vector<const ConfigSystem*>& family,
                                 const std::vector<std::string>& labels) {
    if (family.size() < 2) throw PreconditionError("normality_report: need at least 2 instances");
    const int k = family[0]->degree();
    for (auto* s : family)
        if (s->degree() != k) throw PreconditionError("normality_report: mixed degrees");
    NormalityReport rep;
    for (size_t i = 0; i < family.size(); ++i) {
        const ConfigSystem& s = *family[i];
        NormalityRow row;
        row.label = i < labels.size() ? labels[i] : ("instance " + std::to_string(i));
        row.ambient_size = s.ambient().size;
        row.s_size = s.size();
        row.sk_size = s.sk_count();
        double S = static_cast<double>(std::max<long long>(s.size(), 0));
        row.g_over_s = S > 0 ? static_cast<double>(row.ambient_size) / S
                             : std::numeric_limits<double>::infinity();
        row.gk_over_s = S > 0 ? std::pow(static_cast<double>(row.ambient_size), k) / S
                              : std::numeric_limits<double>::infinity();
        row.sk_over_s = S > 0 ? static_cast<double>(row.sk_size) / S : 0.0;
        rep.rows.push_back(row);
    }
    rep.c2_ratio_to_zero = rep.c2_ratio_to_inf = rep.c3_to_one = true;
    for (size_t i = 1; i < rep.rows.size(); ++i) {
        if (!(rep.rows[i].g_over_s < rep.rows[i - 1].g_over_s)) rep.c2_ratio_to_zero = false;
        if (!(rep.rows[i].gk_over_s > rep.rows[i - 1].gk_over_s)) rep.c2_ratio_to_inf = false;
        if (!(rep.rows[i].sk_over_s >= rep.rows[i - 1].sk_over_s)) rep.c3_to_one = false;
    }
    rep.c4_note = "uniform-gamma condition is not machine-checkable from finitely many instances; "
                  "estimate gamma per instance instead";
    return rep;
}

} // namespace confsys
