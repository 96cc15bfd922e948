#include "confsys/families.hpp"

#include "confsys/rng.hpp"
#include "confsys/util.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <set>

namespace confsys {

bool is_subgroup_of(const Group& g, const std::vector<int>& members) {
    std::set<int> m(members.begin(), members.end());
    if (m.size() != members.size()) return false;
    if (!m.count(g.identity())) return false;
    for (int a : members) {
        if (a < 0 || a >= g.order()) return false;
        if (!m.count(g.inverse(a))) return false;
        for (int b : members)
            if (!m.count(g.op(a, b))) return false;
    }
    return true;
}

namespace {

std::shared_ptr<const Group> require_abelian(std::shared_ptr<const Group> g, const char* who) {
    if (!g) throw ConfigError(std::string(who) + ": null group");
    if (!g->abelian()) throw PreconditionError(std::string(who) + ": group must be abelian");
    return g;
}

void require_subgroup(const Group& g, const std::vector<int>& members, const char* label) {
    if (!is_subgroup_of(g, members))
        throw PreconditionError(std::string(label) + " is not a subgroup of the ambient group");
}

double dbl(long long v) { return static_cast<double>(v); }

} // namespace

FamilyInstance rectangles(std::shared_ptr<const Group> g, const std::vector<int>& h_members,
                          const std::vector<int>& k_members, const Budget& budget) {
    require_abelian(g, "rectangles");
    require_subgroup(*g, h_members, "H");
    require_subgroup(*g, k_members, "K");
    const long long total = g->order() * static_cast<long long>(h_members.size()) * k_members.size();
    if (total > budget.max_solutions) throw BudgetError("rectangles: |G||H||K| exceeds the budget");
    std::vector<std::int32_t> flat;
    flat.reserve(static_cast<size_t>(total) * 4);
    for (long long x = 0; x < g->order(); ++x) {
        for (int a : h_members) {
            const int xa = g->op(static_cast<int>(x), a);
            for (int b : k_members) {
                flat.push_back(static_cast<std::int32_t>(x));
                flat.push_back(static_cast<std::int32_t>(xa));
                flat.push_back(g->op(static_cast<int>(x), b));
                flat.push_back(g->op(xa, b));
            }
        }
    }
    FamilyInstance fi("rectangles",
                      ConfigSystem(Ambient::of_group(*g), 4, std::move(flat), Provenance::Family));
    fi.params["|G|"] = std::to_string(g->order());
    fi.params["|H|"] = std::to_string(h_members.size());
    fi.params["|K|"] = std::to_string(k_members.size());
    const double sk = dbl(fi.system.sk_count());
    const double n = dbl(g->order());
    const double maxhk = dbl(std::max(h_members.size(), k_members.size()));
    fi.notes["square_hypothesis"] =
        (sk > 0 && maxhk <= std::pow(sk / n, 2.0 / 3.0)) ? "holds" : "fails";
    if (sk > 0) fi.metrics["t_lo_square"] = std::pow(std::pow(n, 4.0) / sk, 1.0 / 3.0);
    fi.expected["t_lo_exponent"] = 4.0 / 3.0; // coordinate-subgroup case in Z_n^2
    return fi;
}

FamilyInstance generalized_rectangles(std::shared_ptr<const Group> g, const std::vector<int>& h_members,
                                      const std::vector<int>& k_members, int r, const Budget& budget) {
    require_abelian(g, "generalized_rectangles");
    require_subgroup(*g, h_members, "H");
    require_subgroup(*g, k_members, "K");
    if (r < 1) throw PreconditionError("generalized_rectangles: r must be >= 1");
    const int k = (r + 1) * (r + 1);
    if (k > 30) throw BudgetError("generalized_rectangles: degree (r+1)^2 exceeds the supported cap");
    double log_total = std::log2(dbl(g->order())) +
                       r * std::log2(dbl(h_members.size())) + r * std::log2(dbl(k_members.size()));
    if (log_total > std::log2(dbl(budget.max_solutions)))
        throw BudgetError("generalized_rectangles: |G||H|^r|K|^r exceeds the budget");

    std::vector<std::int32_t> flat;
    std::vector<int> a(r + 1, 0), b(r + 1, 0);
    std::vector<int> a_idx(r, 0), b_idx(r, 0);
    const long long ha = static_cast<long long>(h_members.size());
    const long long kb = static_cast<long long>(k_members.size());
    long long combos = 1;
    for (int i = 0; i < r; ++i) combos *= ha;
    long long combos_b = 1;
    for (int i = 0; i < r; ++i) combos_b *= kb;
    for (long long x = 0; x < g->order(); ++x) {
        for (long long ia = 0; ia < combos; ++ia) {
            long long v = ia;
            for (int i = 0; i < r; ++i) {
                a[i + 1] = h_members[v % ha];
                v /= ha;
            }
            for (long long ib = 0; ib < combos_b; ++ib) {
                long long w = ib;
                for (int i = 0; i < r; ++i) {
                    b[i + 1] = k_members[w % kb];
                    w /= kb;
                }
                for (int i = 0; i <= r; ++i) {
                    const int xb = g->op(static_cast<int>(x), b[i]);
                    for (int j = 0; j <= r; ++j) flat.push_back(g->op(xb, a[j]));
                }
            }
        }
    }
    FamilyInstance fi("generalized_rectangles",
                      ConfigSystem(Ambient::of_group(*g), k, std::move(flat), Provenance::Family));
    fi.params["r"] = std::to_string(r);
    fi.params["|G|"] = std::to_string(g->order());
    fi.params["|H|"] = std::to_string(h_members.size());
    fi.params["|K|"] = std::to_string(k_members.size());
    const double sk = dbl(fi.system.sk_count());
    const double n = dbl(g->order());
    if (sk > 0)
        fi.metrics["t_lo_gen"] = std::pow(std::pow(n, dbl(k)) / sk, 1.0 / (dbl(k) - 1.0));
    fi.expected["t_lo_exponent_row"] = dbl(k) / (dbl(k) - 1.0); // vs |G| in the product case
    return fi;
}

FamilyInstance slanted_squares(std::shared_ptr<const Group> g, const std::vector<int>& h_members,
                               const std::vector<std::vector<long long>>& phi_matrix,
                               const Budget& budget) {
    require_abelian(g, "slanted_squares");
    require_subgroup(*g, h_members, "H");
    const int d = static_cast<int>(g->moduli().size());
    IntegerMatrix pm = IntegerMatrix::from_rows(phi_matrix);
    if (pm.rows() != d || pm.cols() != d)
        throw PreconditionError("slanted_squares: phi matrix must be d x d for d cyclic factors");
    BlockHom phi = BlockHom::from_matrix(pm, 1, 1, d);
    if (!phi.well_defined_mod(*g))
        throw PreconditionError("slanted_squares: phi is not a homomorphism for these moduli");
    // injectivity on H and the slant condition a != +-phi(a)
    std::set<int> images;
    std::vector<int> violations;
    for (int a : h_members) {
        int fa = hom_apply(phi, *g, {a})[0];
        if (!images.insert(fa).second)
            throw PreconditionError("slanted_squares: phi is not injective on H");
        if (a != g->identity() && (fa == a || fa == g->inverse(a))) violations.push_back(a);
    }
    if (!violations.empty() && violations.size() + 1 >= h_members.size()) {
        std::string w;
        for (size_t i = 0; i < violations.size() && i < 5; ++i)
            w += (i ? "," : "") + std::to_string(violations[i]);
        throw PreconditionError("slanted_squares: a = +-phi(a) for every nonzero a in H (witnesses " + w + ")");
    }
    const long long total = g->order() * static_cast<long long>(h_members.size());
    if (total > budget.max_solutions) throw BudgetError("slanted_squares: |G||H| exceeds the budget");
    std::vector<std::int32_t> flat;
    flat.reserve(static_cast<size_t>(total) * 4);
    for (long long x = 0; x < g->order(); ++x) {
        for (int a : h_members) {
            int fa = hom_apply(phi, *g, {a})[0];
            int xa = g->op(static_cast<int>(x), a);
            flat.push_back(static_cast<std::int32_t>(x));
            flat.push_back(static_cast<std::int32_t>(xa));
            flat.push_back(g->op(static_cast<int>(x), fa));
            flat.push_back(g->op(xa, fa));
        }
    }
    FamilyInstance fi("slanted_squares",
                      ConfigSystem(Ambient::of_group(*g), 4, std::move(flat), Provenance::Family));
    fi.params["|G|"] = std::to_string(g->order());
    fi.params["|H|"] = std::to_string(h_members.size());
    if (!violations.empty()) {
        std::string w;
        for (size_t i = 0; i < violations.size() && i < 10; ++i)
            w += (i ? "," : "") + std::to_string(violations[i]);
        fi.notes["slant_violations"] = w;
    }
    return fi;
}

FamilyInstance simplices_box(int n, int m, bool sign_restricted, const Budget& budget) {
    if (n < 1 || m < 1) throw PreconditionError("simplices_box: need n >= 1, m >= 1");
    Ambient amb = Ambient::box(n, m);
    const int k = m + 1;
    double log_total = m * std::log2(dbl(n)) + std::log2(dbl(2 * n));
    if (log_total > std::log2(dbl(budget.max_enumeration)))
        throw BudgetError("simplices_box: enumeration exceeds the budget");
    std::vector<std::int32_t> flat;
    std::vector<long long> p(m), q(m);
    std::vector<long long> base(m, 1);
    while (true) {
        for (long long a = -(n - 1); a <= n - 1; ++a) {
            if (sign_restricted && a < 0) continue;
            bool ok = true;
            for (int i = 0; i < m && ok; ++i)
                if (base[i] + a < 1 || base[i] + a > n) ok = false;
            if (ok) {
                if (static_cast<long long>(flat.size()) / k >= budget.max_solutions)
                    throw BudgetError("simplices_box: solution count exceeds the budget");
                flat.push_back(amb.box_index(base));
                for (int i = 0; i < m; ++i) {
                    q = base;
                    q[i] += a;
                    flat.push_back(amb.box_index(q));
                }
            }
        }
        int i = m - 1;
        while (i >= 0 && base[i] == n) base[i--] = 1;
        if (i < 0) break;
        ++base[i];
    }
    FamilyInstance fi("simplices_box", ConfigSystem(amb, k, std::move(flat), Provenance::Family));
    fi.params["n"] = std::to_string(n);
    fi.params["m"] = std::to_string(m);
    fi.params["sign_restricted"] = sign_restricted ? "true" : "false";
    return fi;
}

FamilyInstance box_linear_system(const BlockHom& a, int n, const Budget& budget) {
    if (n < 1) throw PreconditionError("box_linear_system: n must be >= 1");
    const int m = a.dim;
    const int k = a.k1;
    Ambient amb = Ambient::box(n, m);
    double log_total = k * m * std::log2(dbl(n));
    if (log_total > std::log2(dbl(budget.max_enumeration)))
        throw BudgetError("box_linear_system: box enumeration exceeds the budget");
    // depth-first over coordinate slots with rows checked as soon as complete
    const int rows = a.matrix.rows();
    std::vector<int> last_slot(rows, -1);
    for (int r = 0; r < rows; ++r)
        for (int slot = 0; slot < k; ++slot)
            for (int c = 0; c < m; ++c)
                if (a.matrix.at(r, slot * m + c) != 0) last_slot[r] = std::max(last_slot[r], slot);
    std::vector<std::int32_t> flat;
    std::vector<std::int32_t> cur(k);
    std::vector<std::vector<BigInt>> acc(k + 1, std::vector<BigInt>(rows, 0));
    std::vector<long long> coords(m);
    std::function<void(int)> dfs = [&](int slot) {
        if (slot == k) {
            if (static_cast<long long>(flat.size()) / k >= budget.max_solutions)
                throw BudgetError("box_linear_system: solution count exceeds the budget");
            flat.insert(flat.end(), cur.begin(), cur.end());
            return;
        }
        for (long long x = 0; x < amb.size; ++x) {
            cur[slot] = static_cast<std::int32_t>(x);
            auto xc = amb.box_coords(static_cast<int>(x));
            for (int r = 0; r < rows; ++r) {
                BigInt s = acc[slot][r];
                for (int c = 0; c < m; ++c) s += a.matrix.at(r, slot * m + c) * xc[c];
                acc[slot + 1][r] = s;
            }
            bool ok = true;
            for (int r = 0; r < rows && ok; ++r)
                if ((last_slot[r] == slot || (last_slot[r] < 0 && slot == 0)) && acc[slot + 1][r] != 0)
                    ok = false;
            if (ok) dfs(slot + 1);
        }
    };
    dfs(0);
    FamilyInstance fi("box_linear_system", ConfigSystem(amb, k, std::move(flat), Provenance::Family));
    const long long lambda = box_restriction_lambda(a);
    fi.params["n"] = std::to_string(n);
    fi.params["lambda"] = std::to_string(lambda);
    auto cyclic = std::make_shared<Group>(
        make_abelian_group(std::vector<long long>(static_cast<size_t>(m), lambda * n)));
    fi.companions.emplace_back("cyclic", from_kernel(cyclic, k, a, {}, budget));
    return fi;
}

IntegerMatrix ap_matrix(int r) {
    if (r < 3) throw PreconditionError("ap_matrix: r must be >= 3");
    std::vector<std::vector<long long>> rows(r - 2, std::vector<long long>(r, 0));
    for (int i = 0; i + 2 < r; ++i) {
        rows[i][i] = 1;
        rows[i][i + 1] = -2;
        rows[i][i + 2] = 1;
    }
    return IntegerMatrix::from_rows(rows);
}

FamilyInstance ap_system(long long q, int r, const Budget& budget) {
    if (r < 3) throw PreconditionError("ap_system: r must be >= 3");
    auto g = std::make_shared<Group>(make_abelian_group({q}));
    IntegerMatrix a = ap_matrix(r);
    BlockHom hom = BlockHom::from_matrix(a, r, r - 2, 1);
    FamilyInstance fi("ap_system", from_kernel(g, r, hom, {}, budget));
    fi.params["q"] = std::to_string(q);
    fi.params["r"] = std::to_string(r);
    fi.expected["p_one_exponent"] = -1.0 / (r - 1);
    return fi;
}

FamilyInstance nonabelian_equation(std::shared_ptr<const Group> g, const std::vector<long long>& r,
                                   const Budget& budget) {
    if (!g) throw ConfigError("nonabelian_equation: null group");
    const int k = static_cast<int>(r.size());
    if (k < 2) throw PreconditionError("nonabelian_equation: need at least 2 exponents");
    const long long order = g->order();
    for (long long rj : r) {
        if (rj < 1) throw PreconditionError("nonabelian_equation: exponents must be positive");
        if (std::gcd(rj, order) != 1)
            throw PreconditionError("nonabelian_equation: gcd(" + std::to_string(rj) + ", |G|=" +
                                    std::to_string(order) + ") != 1");
    }
    double log_total = (k - 1) * std::log2(dbl(std::max<long long>(order, 2)));
    if (log_total > std::log2(dbl(budget.max_solutions)))
        throw BudgetError("nonabelian_equation: |G|^{k-1} exceeds the budget");

    // power tables; gcd(r_j,|G|)=1 makes g -> g^{r_j} a bijection
    std::vector<std::vector<int>> pow_r(k, std::vector<int>(order));
    for (int j = 0; j < k; ++j)
        for (long long x = 0; x < order; ++x)
            pow_r[j][x] = group_power(*g, static_cast<int>(x), r[j]);
    std::vector<int> unpow_last(order);
    for (long long x = 0; x < order; ++x) unpow_last[pow_r[k - 1][x]] = static_cast<int>(x);

    long long rsum = 0;
    for (long long rj : r) rsum += rj;
    long long exponent = 1;
    for (long long x = 0; x < order; ++x) {
        long long o = 1;
        int y = static_cast<int>(x);
        while (y != g->identity()) {
            y = g->op(y, static_cast<int>(x));
            ++o;
        }
        exponent = std::lcm(exponent, o);
    }

    std::vector<std::int32_t> flat;
    std::vector<std::int32_t> cur(k);
    std::function<void(int, int)> dfs = [&](int slot, int prefix) {
        if (slot == k - 1) {
            // prefix * x_k^{r_k} = e  =>  x_k^{r_k} = prefix^{-1}
            cur[k - 1] = static_cast<std::int32_t>(unpow_last[g->inverse(prefix)]);
            flat.insert(flat.end(), cur.begin(), cur.end());
            return;
        }
        for (long long x = 0; x < order; ++x) {
            cur[slot] = static_cast<std::int32_t>(x);
            dfs(slot + 1, g->op(prefix, pow_r[slot][x]));
        }
    };
    dfs(0, g->identity());
    FamilyInstance fi("nonabelian_equation",
                      ConfigSystem(Ambient::of_group(*g), k, std::move(flat), Provenance::Family));
    fi.params["k"] = std::to_string(k);
    std::string rs;
    for (int j = 0; j < k; ++j) rs += (j ? "," : "") + std::to_string(r[j]);
    fi.params["r"] = rs;
    fi.notes["exponent_divides_r"] = (rsum % exponent == 0) ? "holds" : "fails";
    fi.expected["p_one_exponent"] = -dbl(k - 2) / dbl(k - 1);
    fi.metrics["alpha_law_base"] = dbl(order);
    return fi;
}

IntegerMatrix appendix_gap_matrix() {
    return IntegerMatrix::from_rows({{1, -2, 1, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1, -7}});
}

FamilyInstance appendix_gap_example(long long q, double c, std::uint64_t seed, const Budget& budget) {
    if (q < 2) throw PreconditionError("appendix_gap_example: q must be >= 2");
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) throw PreconditionError("appendix_gap_example: q must be prime");
    auto g = std::make_shared<Group>(make_abelian_group({q}));
    IntegerMatrix a = appendix_gap_matrix();
    BlockHom hom = BlockHom::from_matrix(a, 8, 2, 1);
    ConfigSystem kernel = from_kernel(g, 8, hom, {}, budget);

    // S': coordinates {4,5,6} (1-based) pinned to (1,2,3), the other five
    // sampled uniformly with inclusion probability q^c / q^5
    const double inclusion = std::pow(dbl(q), c - 5.0);
    long long free_total = 1;
    for (int i = 0; i < 5; ++i) {
        if (free_total > budget.max_enumeration / q) throw BudgetError("appendix_gap_example: q^5 over budget");
        free_total *= q;
    }
    Rng rng(seed);
    std::vector<std::int32_t> flat(kernel.flat());
    long long s_prime = 0, distinct_violations = 0;
    std::int32_t t[8];
    t[3] = static_cast<std::int32_t>(1 % q);
    t[4] = static_cast<std::int32_t>(2 % q);
    t[5] = static_cast<std::int32_t>(3 % q);
    for (long long v = 0; v < free_total; ++v) {
        if (!rng.bernoulli(inclusion)) continue;
        long long w = v;
        for (int pos : {0, 1, 2, 6, 7}) {
            t[pos] = static_cast<std::int32_t>(w % q);
            w /= q;
        }
        ++s_prime;
        bool distinct = true;
        for (int i = 0; i < 8 && distinct; ++i)
            for (int j = i + 1; j < 8; ++j)
                if (t[i] == t[j]) {
                    distinct = false;
                    break;
                }
        if (!distinct) ++distinct_violations;
        flat.insert(flat.end(), t, t + 8);
    }
    FamilyInstance fi("appendix_gap_example",
                      ConfigSystem(Ambient::of_group(*g), 8, std::move(flat), Provenance::Family));
    fi.params["q"] = std::to_string(q);
    fi.params["c"] = fmt_double(c);
    fi.params["seed"] = std::to_string(seed);
    fi.notes["s_size"] = std::to_string(kernel.size());
    fi.notes["s_prime_size"] = std::to_string(s_prime);
    fi.notes["s_prime_distinct_violations"] = std::to_string(distinct_violations);
    fi.expected["p_one_exponent"] = -0.25;
    fi.expected["p_zero_exponent"] = -2.0 / 3.0;
    fi.companions.emplace_back("kernel", std::move(kernel));
    return fi;
}

} // namespace confsys
