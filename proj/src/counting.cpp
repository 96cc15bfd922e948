#include "confsys/counting.hpp"

#include "confsys/util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace confsys {

Hypergraph build_hypergraph(const ConfigSystem& sys) {
    Hypergraph h;
    h.n = sys.ambient().size;
    h.k = sys.degree();
    const int k = h.k;
    std::vector<std::int32_t> flat;
    flat.reserve(sys.sk_rows().size() * k);
    std::vector<std::int32_t> buf(k);
    for (std::int32_t row : sys.sk_rows()) {
        const std::int32_t* t = sys.tuple(row);
        std::copy(t, t + k, buf.begin());
        std::sort(buf.begin(), buf.end());
        flat.insert(flat.end(), buf.begin(), buf.end());
    }
    // the support map is many-to-one; dedup to get the edge set
    std::vector<long long> idx(flat.size() / k);
    std::iota(idx.begin(), idx.end(), 0);
    auto less = [&](long long a, long long b) {
        return std::lexicographical_compare(flat.begin() + a * k, flat.begin() + (a + 1) * k,
                                            flat.begin() + b * k, flat.begin() + (b + 1) * k);
    };
    std::sort(idx.begin(), idx.end(), less);
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i > 0 && std::equal(flat.begin() + idx[i] * k, flat.begin() + (idx[i] + 1) * k,
                                flat.begin() + idx[i - 1] * k))
            continue;
        h.edges_flat.insert(h.edges_flat.end(), flat.begin() + idx[i] * k, flat.begin() + (idx[i] + 1) * k);
    }
    return h;
}

long long delta_ell(const Hypergraph& h, int l) {
    if (l < 1 || l > h.k) throw PreconditionError("delta_ell: l out of [1,k]");
    const long long e = h.edge_count();
    if (e == 0) return 0;
    if (l == h.k) return 1;
    auto subs = subsets_of_size(h.k, l);
    std::vector<std::vector<std::int32_t>> keys;
    keys.reserve(static_cast<size_t>(e) * subs.size());
    std::vector<std::int32_t> buf(l);
    for (long long i = 0; i < e; ++i) {
        const std::int32_t* ed = h.edge(i);
        for (const auto& s : subs) {
            for (int j = 0; j < l; ++j) buf[j] = ed[s[j]];
            keys.push_back(buf);
        }
    }
    std::sort(keys.begin(), keys.end());
    long long best = 0, run = 0;
    for (size_t i = 0; i < keys.size(); ++i) {
        if (i == 0 || keys[i] != keys[i - 1]) run = 0;
        best = std::max(best, ++run);
    }
    return best;
}

// ---------- exact search over edge-free subsets ----------

namespace {

// Induced sub-hypergraph on X in local vertex ids, vertices ordered by
// descending induced degree (ties by ambient index) for branching.
struct Induced {
    int nv = 0;
    int k = 0;
    std::vector<std::int32_t> verts;      // local id -> ambient element
    std::vector<std::vector<int>> edges;  // local ids
    std::vector<std::vector<int>> vedges; // local id -> edge ids
};

Induced induce(const ConfigSystem& sys, const std::vector<std::int32_t>& x) {
    Induced ind;
    ind.k = sys.degree();
    std::vector<char> in(static_cast<size_t>(sys.ambient().size), 0);
    std::vector<std::int32_t> xs = x;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::int32_t v : xs) {
        if (v < 0 || v >= sys.ambient().size) throw PreconditionError("subset element outside the ambient");
        in[v] = 1;
    }
    std::vector<int> local(static_cast<size_t>(sys.ambient().size), -1);
    const int k = ind.k;
    // collect distinct supports of S^(k) tuples inside X
    std::vector<std::vector<std::int32_t>> supports;
    std::vector<std::int32_t> buf(k);
    for (std::int32_t row : sys.sk_rows()) {
        const std::int32_t* t = sys.tuple(row);
        bool inside = true;
        for (int j = 0; j < k; ++j) {
            if (!in[t[j]]) {
                inside = false;
                break;
            }
        }
        if (!inside) continue;
        std::copy(t, t + k, buf.begin());
        std::sort(buf.begin(), buf.end());
        supports.push_back(buf);
    }
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());

    // degree-descending vertex order
    std::vector<long long> deg(xs.size(), 0);
    std::vector<int> tmp_local(static_cast<size_t>(sys.ambient().size), -1);
    for (size_t i = 0; i < xs.size(); ++i) tmp_local[xs[i]] = static_cast<int>(i);
    for (const auto& s : supports)
        for (std::int32_t v : s) ++deg[tmp_local[v]];
    std::vector<int> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (deg[a] != deg[b]) return deg[a] > deg[b];
        return xs[a] < xs[b];
    });
    ind.nv = static_cast<int>(xs.size());
    ind.verts.resize(ind.nv);
    for (int i = 0; i < ind.nv; ++i) {
        ind.verts[i] = xs[order[i]];
        local[xs[order[i]]] = i;
    }
    ind.vedges.assign(ind.nv, {});
    for (const auto& s : supports) {
        std::vector<int> e(k);
        for (int j = 0; j < k; ++j) e[j] = local[s[j]];
        std::sort(e.begin(), e.end());
        int eid = static_cast<int>(ind.edges.size());
        for (int v : e) ind.vedges[v].push_back(eid);
        ind.edges.push_back(std::move(e));
    }
    return ind;
}

struct MisSolver {
    const Induced& g;
    long long node_budget;
    long long stop_at; // -1: full optimum

    std::vector<std::int8_t> state; // 0 undecided, 1 in, 2 out
    std::vector<int> e_in, e_out;
    long long n_in = 0, n_undec = 0;
    long long nodes = 0;
    bool aborted = false;
    bool stopped_early = false;
    long long best = 0;
    std::vector<int> best_set, cur;

    explicit MisSolver(const Induced& ind, long long budget, long long stop)
        : g(ind), node_budget(budget), stop_at(stop) {
        state.assign(g.nv, 0);
        e_in.assign(g.edges.size(), 0);
        e_out.assign(g.edges.size(), 0);
        n_undec = g.nv;
    }

    bool set_out(int v, std::vector<int>& trail) {
        state[v] = 2;
        --n_undec;
        trail.push_back(v);
        for (int e : g.vedges[v]) ++e_out[e];
        return true;
    }

    // include v, propagating forced exclusions; false when an edge completes
    bool set_in(int v, std::vector<int>& trail) {
        state[v] = 1;
        --n_undec;
        ++n_in;
        cur.push_back(v);
        trail.push_back(~v); // marker for "in"
        for (int e : g.vedges[v]) {
            ++e_in[e];
            if (e_out[e] == 0 && e_in[e] == g.k) return false;
        }
        for (int e : g.vedges[v]) {
            if (e_out[e] == 0 && e_in[e] == g.k - 1) {
                // the single undecided vertex of e cannot be included
                for (int w : g.edges[e]) {
                    if (state[w] == 0) {
                        set_out(w, trail);
                        break;
                    }
                }
            }
        }
        return true;
    }

    void undo(std::vector<int>& trail) {
        while (!trail.empty()) {
            int t = trail.back();
            trail.pop_back();
            if (t < 0) {
                int v = ~t;
                state[v] = 0;
                ++n_undec;
                --n_in;
                cur.pop_back();
                for (int e : g.vedges[v]) --e_in[e];
            } else {
                state[t] = 0;
                ++n_undec;
                for (int e : g.vedges[t]) --e_out[e];
            }
        }
    }

    // |in| + |undecided| - (greedy packing of vertex-disjoint alive edges)
    long long upper_bound() const {
        long long packs = 0;
        static thread_local std::vector<char> used;
        used.assign(g.nv, 0);
        for (size_t e = 0; e < g.edges.size(); ++e) {
            if (e_out[e] > 0 || e_in[e] == g.k) continue;
            bool free_edge = true;
            for (int v : g.edges[e]) {
                if (state[v] == 0 && used[v]) {
                    free_edge = false;
                    break;
                }
            }
            if (!free_edge) continue;
            for (int v : g.edges[e])
                if (state[v] == 0) used[v] = 1;
            ++packs;
        }
        return n_in + n_undec - packs;
    }

    int pick_branch_vertex() const {
        int best_v = -1;
        long long best_deg = -1;
        for (int v = 0; v < g.nv; ++v) {
            if (state[v] != 0) continue;
            long long d = 0;
            for (int e : g.vedges[v])
                if (e_out[e] == 0) ++d;
            if (d > best_deg) {
                best_deg = d;
                best_v = v;
            }
        }
        return best_v;
    }

    void record_if_better() {
        if (n_in > best) {
            best = n_in;
            best_set = cur;
            if (stop_at >= 0 && best >= stop_at) stopped_early = true;
        }
    }

    void search() {
        if (++nodes > node_budget) {
            aborted = true;
            return;
        }
        if (stopped_early || aborted) return;
        if (n_undec == 0) {
            record_if_better();
            return;
        }
        const long long bound = upper_bound();
        if (bound <= best) return;
        if (stop_at >= 0 && bound < stop_at) return;
        int v = pick_branch_vertex();
        if (v < 0) {
            record_if_better();
            return;
        }
        {
            std::vector<int> trail;
            if (set_in(v, trail)) {
                record_if_better();
                if (!stopped_early) search();
            }
            undo(trail);
        }
        if (stopped_early || aborted) return;
        {
            std::vector<int> trail;
            set_out(v, trail);
            search();
            undo(trail);
        }
    }
};

} // namespace

MaxFreeResult max_free_subset(const ConfigSystem& sys, const std::vector<std::int32_t>& x,
                              const Budget& budget, long long stop_at) {
    Induced ind = induce(sys, x);
    MaxFreeResult res;
    if (ind.edges.empty()) { // edgeless: X itself is free
        res.size = ind.nv;
        res.witness.assign(ind.verts.begin(), ind.verts.end());
        std::sort(res.witness.begin(), res.witness.end());
        res.exact = true;
        return res;
    }
    MisSolver solver(ind, budget.max_search_nodes, stop_at);
    // greedy warm start: scan in reverse branch order (sparse vertices first)
    {
        std::vector<int> trail;
        bool ok = true;
        for (int v = ind.nv - 1; v >= 0 && ok; --v) {
            if (solver.state[v] != 0) continue;
            std::vector<int> t2;
            if (solver.set_in(v, t2)) {
                for (int z : t2) trail.push_back(z);
            } else {
                solver.undo(t2);
                std::vector<int> t3;
                solver.set_out(v, t3);
                for (int z : t3) trail.push_back(z);
            }
        }
        solver.record_if_better();
        solver.undo(trail);
    }
    if (!solver.stopped_early) solver.search();
    res.size = solver.best;
    res.witness.reserve(solver.best_set.size());
    for (int v : solver.best_set) res.witness.push_back(ind.verts[v]);
    std::sort(res.witness.begin(), res.witness.end());
    res.exact = !solver.aborted;
    res.nodes = solver.nodes;
    return res;
}

MaxFreeResult max_free_subset_greedy(const ConfigSystem& sys, const std::vector<std::int32_t>& x) {
    Induced ind = induce(sys, x);
    MaxFreeResult res;
    MisSolver solver(ind, 1, -1);
    std::vector<int> trail;
    for (int v = ind.nv - 1; v >= 0; --v) {
        if (solver.state[v] != 0) continue;
        std::vector<int> t2;
        if (!solver.set_in(v, t2)) {
            solver.undo(t2);
            solver.set_out(v, trail);
        } else {
            for (int z : t2) trail.push_back(z);
        }
    }
    res.size = solver.n_in;
    for (int v : solver.cur) res.witness.push_back(ind.verts[v]);
    std::sort(res.witness.begin(), res.witness.end());
    res.exact = ind.edges.empty();
    res.nodes = 1;
    return res;
}

// ---------- exact counting ----------

namespace {

struct CountSolver {
    const Induced& g;
    long long n_total;           // ambient size (includes vertices in no edge)
    long long t;
    long long budget_nodes;
    long long nodes = 0;
    BigInt count = 0;

    std::vector<std::int8_t> state;
    std::vector<int> e_in;

    CountSolver(const Induced& ind, long long ambient, long long target, long long budget)
        : g(ind), n_total(ambient), t(target), budget_nodes(budget) {
        state.assign(g.nv, 0);
        e_in.assign(g.edges.size(), 0);
    }

    // remaining vertices are i..nv-1 plus the isolated ones outside g
    void rec(int i, long long chosen) {
        if (++nodes > budget_nodes) throw BudgetError("count_free_sets: node budget exceeded");
        if (chosen > t) return;
        long long outside = n_total - g.nv;          // isolated, always free
        long long remaining = (g.nv - i) + outside;
        if (chosen + remaining < t) return;
        if (i == g.nv) {
            count += big_binomial(outside, t - chosen);
            return;
        }
        // no alive edge can still complete: the rest is unconstrained
        bool constrained = false;
        for (size_t e = 0; e < g.edges.size() && !constrained; ++e) {
            if (e_in[e] < 0) continue; // dead
            int undec = 0;
            for (int v : g.edges[e])
                if (state[v] == 0) ++undec;
            if (e_in[e] + undec == g.k) constrained = true;
        }
        if (!constrained) {
            count += big_binomial(remaining, t - chosen);
            return;
        }
        // include g vertex i
        bool viable = true;
        for (int e : g.vedges[i]) {
            if (e_in[e] >= 0 && e_in[e] + 1 == g.k) {
                viable = false;
                break;
            }
        }
        if (viable) {
            state[i] = 1;
            for (int e : g.vedges[i])
                if (e_in[e] >= 0) ++e_in[e];
            rec(i + 1, chosen + 1);
            for (int e : g.vedges[i])
                if (e_in[e] >= 0) --e_in[e];
            state[i] = 0;
        }
        // exclude: mark covering edges dead
        state[i] = 2;
        std::vector<int> killed;
        for (int e : g.vedges[i]) {
            if (e_in[e] >= 0) {
                killed.push_back(e);
                e_in[e] = -1 - e_in[e];
            }
        }
        rec(i + 1, chosen);
        for (int e : killed) e_in[e] = -1 - e_in[e];
        state[i] = 0;
    }
};

} // namespace

BigInt count_free_sets(const ConfigSystem& sys, long long t, const Budget& budget) {
    const long long n = sys.ambient().size;
    if (t < 0 || t > n) return 0;
    if (t == 0) return 1;
    std::vector<std::int32_t> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    Induced ind = induce(sys, all);
    CountSolver solver(ind, n, t, budget.max_search_nodes);
    solver.rec(0, 0);
    return solver.count;
}

// ---------- container-theorem ranges and bounds ----------

TRange t_range(const ConfigSystem& sys, double delta, double c_const, int workers) {
    if (delta <= 0.0 || delta > 1.0) throw PreconditionError("t_range: delta must be in (0,1]");
    FreedomTable ft = freedom_table(sys, workers);
    if (ft.sk_empty || ft.alpha_k[0] == 0)
        throw PreconditionError("t_range: alpha^k_1 = 0 (empty S^(k))");
    const int k = sys.degree();
    const double n = static_cast<double>(sys.ambient().size);
    TRange r;
    double best = -1.0, best_ratio = -1.0;
    for (int l = 2; l <= k; ++l) {
        double ratio = static_cast<double>(ft.alpha_k[l - 1]) / static_cast<double>(ft.alpha_k[0]);
        double comb = big_binomial(k, l).convert_to<double>() / static_cast<double>(k);
        double term = std::pow(ratio * comb, 1.0 / (l - 1));
        double term_ratio = std::pow(ratio, 1.0 / (l - 1));
        if (term > best) {
            best = term;
            r.argmax_ell = l;
        }
        best_ratio = std::max(best_ratio, term_ratio);
    }
    r.max_term = best;
    r.max_term_ratio = best_ratio;
    r.t_lo = static_cast<long long>(std::ceil(c_const * n / delta * best - 1e-9));
    r.t_lo_ratio = static_cast<long long>(std::ceil(c_const * n / delta * best_ratio - 1e-9));
    r.t_hi = static_cast<long long>(std::floor(delta * n / 2.0 + 1e-9));
    r.empty = r.t_lo > r.t_hi;
    return r;
}

BoundReport bound_report(const ConfigSystem& sys, double beta, long long t, double c_const,
                         const std::optional<BigInt>& oracle, int workers,
                         const std::optional<double>& gamma_hat) {
    if (beta <= 0.0 || beta > 1.0) throw PreconditionError("bound_report: beta must be in (0,1]");
    const long long n = sys.ambient().size;
    if (t < 0 || t > n) throw PreconditionError("bound_report: t out of [0,n]");
    BoundReport rep;
    rep.beta = beta;
    rep.delta = std::min(beta / 2.0, 1.0 / 40.0);
    rep.t = t;
    rep.constant_c = c_const;

    const long long dn = static_cast<long long>(std::floor(rep.delta * n + 1e-9));
    const long long bn = static_cast<long long>(std::floor(beta * n + 1e-9));
    rep.bound_clean = big_binomial(bn, t);
    rep.log2_bound_clean = big_log2(rep.bound_clean);
    const double e_const = 2.718281828459045;
    double log2_pow = rep.delta * static_cast<double>(t) * std::log2(2.0 * e_const / (rep.delta * rep.delta));
    rep.log2_bound_raw = (t > 0 ? std::log2(static_cast<double>(t)) : 0.0) + log2_pow +
                         big_log2(big_binomial(dn, t));

    try {
        TRange tr = t_range(sys, rep.delta, c_const, workers);
        rep.t_lo = tr.t_lo;
        rep.t_hi = tr.t_hi;
        rep.in_range = !tr.empty && t >= tr.t_lo && t <= tr.t_hi;
    } catch (const PreconditionError&) {
        rep.t_lo = 0;
        rep.t_hi = 0;
        rep.in_range = false;
    }
    rep.constant_note = "C is user-supplied and not claimed tight; the container theorem "
                        "routes it through a nonconstructive constant";
    if (gamma_hat && sys.sk_count() > 0) {
        const int k = sys.degree();
        const double sk = static_cast<double>(sys.sk_count());
        rep.xi_hat = std::max((*gamma_hat - 1.0) * static_cast<double>(sys.size()) + sk,
                              rep.delta * static_cast<double>(n) / 2.0);
        rep.epsilon_hat = rep.xi_hat / sk;
        FreedomTable ft = freedom_table(sys, workers);
        Hypergraph h = build_hypergraph(sys);
        double c_from_proof = static_cast<double>(k) * static_cast<double>(ft.alpha_k[0]) *
                              static_cast<double>(n) / static_cast<double>(h.edge_count());
        double delta_prime = std::pow(c_from_proof * k * std::pow(2.0, k + 1), -static_cast<double>(k));
        if (rep.epsilon_hat > 0.0 && rep.epsilon_hat < 1.0)
            rep.paper_constant_c =
                (k - 1) * (std::log(1.0 / rep.epsilon_hat) / delta_prime + 1.0);
        else if (rep.epsilon_hat >= 1.0)
            rep.paper_constant_c = static_cast<double>(k - 1); // log term vanishes
    }
    if (oracle) {
        rep.oracle_count = oracle;
        if (*oracle <= rep.bound_clean)
            rep.verdict = "oracle <= clean bound";
        else
            rep.verdict = "oracle above clean bound (asymptotic bound need not bind at this size)";
    }
    return rep;
}

bool bound_raw_le_clean_exact(long long n, const BigRat& delta, const BigRat& beta, long long t) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (t < 1) throw PreconditionError("exact bound comparison needs t >= 1");
    // rational upper bound on e (e = 2.71828182845904523...)
    const BigRat e_up(BigInt("2718281828459046"), BigInt("1000000000000000"));
    BigRat base = 2 * e_up / (delta * delta); // >= 1 in any sane regime
    if (base < 1) base = 1;
    BigRat dt = delta * t;
    BigInt p = numerator(dt), q = denominator(dt);
    // floor(delta*n), floor(beta*n)
    BigInt dn = (numerator(delta) * n) / denominator(delta);
    BigInt bnum = (numerator(beta) * n) / denominator(beta);
    BigInt c1 = big_binomial(dn.convert_to<long long>(), t);
    BigInt c2 = big_binomial(bnum.convert_to<long long>(), t);
    if (c2 == 0) return c1 == 0;
    // t * base^(p/q) * c1 <= c2  <=>  t^q * base^p * c1^q <= c2^q
    unsigned long pq = p.convert_to<unsigned long>();
    unsigned long qq = q.convert_to<unsigned long>();
    BigInt lhs_num = big_pow(BigInt(t), qq) * big_pow(numerator(base), pq) * big_pow(c1, qq);
    BigInt lhs_den = big_pow(denominator(base), pq);
    BigInt rhs = big_pow(c2, qq);
    return lhs_num <= rhs * lhs_den;
}

} // namespace confsys
