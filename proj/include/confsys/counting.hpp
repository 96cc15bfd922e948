#pragma once

#include "confsys/bigint.hpp"
#include "confsys/config_system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace confsys {

/// k-uniform hypergraph on the ambient set: one edge per distinct support of
/// an S^(k) tuple.
struct Hypergraph {
    long long n = 0; // vertices
    int k = 0;
    std::vector<std::int32_t> edges_flat; // sorted k-sets, lexicographically ordered
    long long edge_count() const { return k == 0 ? 0 : static_cast<long long>(edges_flat.size()) / k; }
    const std::int32_t* edge(long long i) const { return edges_flat.data() + i * k; }
};

Hypergraph build_hypergraph(const ConfigSystem& sys);

/// Max number of edges containing a fixed l-subset of vertices.
long long delta_ell(const Hypergraph& h, int l);

/// Exact number of t-subsets of the ambient containing no edge.
BigInt count_free_sets(const ConfigSystem& sys, long long t, const Budget& budget = {});

struct MaxFreeResult {
    long long size = 0;
    std::vector<std::int32_t> witness;
    bool exact = true; // false: search hit the node budget, size is a lower bound
    long long nodes = 0;
};

/// Maximum edge-free subset of X (maximum independent set of H[X]).
/// If stop_at >= 0 the search may return early once a free subset of that
/// size is found (size >= stop_at, exact=true in the sense of the decision).
MaxFreeResult max_free_subset(const ConfigSystem& sys, const std::vector<std::int32_t>& x,
                              const Budget& budget = {}, long long stop_at = -1);

/// Greedy lower bound only; never exact unless X is edgeless.
MaxFreeResult max_free_subset_greedy(const ConfigSystem& sys, const std::vector<std::int32_t>& x);

struct TRange {
    long long t_lo = 0; // ceil of the container-theorem expression
    long long t_hi = 0; // floor(delta*n/2)
    bool empty = false;
    int argmax_ell = 0;
    double max_term = 0.0;        // max_l (alpha^k_l/alpha^k_1 * C(k,l)/k)^{1/(l-1)}
    double max_term_ratio = 0.0;  // same without the combinatorial factor
    long long t_lo_ratio = 0;     // ceil(C*n/delta * max_term_ratio)
};

TRange t_range(const ConfigSystem& sys, double delta, double c_const, int workers = 1);

struct BoundReport {
    double delta = 0.0;
    double beta = 0.0;
    long long t = 0;
    long long t_lo = 0, t_hi = 0;
    bool in_range = false;
    double log2_bound_raw = 0.0;
    double log2_bound_clean = 0.0;
    BigInt bound_clean; // C(floor(beta*n), t), exact
    double constant_c = 1.0;
    std::string constant_note;
    std::optional<BigInt> oracle_count;
    std::string verdict; // oracle-vs-bound comparison when the oracle ran
    // "paper constant" mode: populated when an empirical gamma estimate is
    // supplied; xi and epsilon are estimates, never claimed tight
    std::optional<double> paper_constant_c;
    double xi_hat = 0.0;
    double epsilon_hat = 0.0;
};

/// Container-theorem bound values at a given t. delta = min(beta/2, 1/40).
/// When gamma_hat (an empirical supersaturation estimate) is given, the
/// report also evaluates the nonconstructive constant route
/// C = (k-1)((1/delta')ln(1/eps)+1), delta' = (c k 2^{k+1})^{-k} with
/// c = k alpha^k_1 v(H)/e(H) and eps = xi/|S^(k)|.
BoundReport bound_report(const ConfigSystem& sys, double beta, long long t, double c_const,
                         const std::optional<BigInt>& oracle = std::nullopt, int workers = 1,
                         const std::optional<double>& gamma_hat = std::nullopt);

/// Exact arithmetic check that t*(2e/delta^2)^(delta*t)*C(floor(delta*n),t)
/// <= C(floor(beta*n),t), using a rational upper bound on e and integer
/// cross-multiplied powers; no floating point.
bool bound_raw_le_clean_exact(long long n, const BigRat& delta, const BigRat& beta, long long t);

} // namespace confsys
