#include <doctest.h>

#include "confsys/counting.hpp"
#include "confsys/families.hpp"
#include "confsys/util.hpp"

#include <memory>
#include <numeric>

using namespace confsys;

namespace {

std::shared_ptr<const Group> zq(long long q) {
    return std::make_shared<Group>(make_abelian_group({q}));
}

ConfigSystem ap3(long long q) {
    return from_kernel(zq(q), 3, BlockHom::scalar({{1, -2, 1}}));
}

// Independent oracle: walk all 2^n subsets with a contains-an-edge DP and
// count the free ones of each size. No pruning, no shared code with the
// branch-and-bound counter.
std::vector<long long> free_counts_oracle(const ConfigSystem& sys) {
    const int n = static_cast<int>(sys.ambient().size);
    REQUIRE(n <= 20);
    Hypergraph h = build_hypergraph(sys);
    std::vector<char> has_edge(1u << n, 0);
    for (long long e = 0; e < h.edge_count(); ++e) {
        unsigned mask = 0;
        for (int j = 0; j < h.k; ++j) mask |= 1u << h.edge(e)[j];
        has_edge[mask] = 1;
    }
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (has_edge[mask]) continue;
        for (int b = 0; b < n; ++b)
            if ((mask >> b) & 1u) {
                if (has_edge[mask ^ (1u << b)]) {
                    has_edge[mask] = 1;
                    break;
                }
            }
    }
    std::vector<long long> counts(n + 1, 0);
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (!has_edge[mask]) ++counts[static_cast<size_t>(__builtin_popcount(mask))];
    return counts;
}

} // namespace

TEST_CASE("hypergraph construction") {
    ConfigSystem s5 = ap3(5);
    Hypergraph h = build_hypergraph(s5);
    CHECK(h.n == 5);
    CHECK(s5.sk_count() == 20);
    // sandwich |S^(k)|/k! <= e(H) <= |S^(k)|
    CHECK(h.edge_count() * 6 >= s5.sk_count());
    CHECK(h.edge_count() <= s5.sk_count());
    // in Z_5 every 3-subset supports an AP
    CHECK(h.edge_count() == 10);

    ConfigSystem diag = from_explicit(Ambient::plain(4), 3, {{0, 0, 0}, {1, 1, 1}});
    CHECK(build_hypergraph(diag).edge_count() == 0);
}

TEST_CASE("delta_ell") {
    // complete 3-uniform hypergraph on 5 vertices via the all-distinct system
    ConfigSystem complete = from_predicate(Ambient::plain(5), 3, [](const std::vector<std::int32_t>& t) {
        return t[0] != t[1] && t[0] != t[2] && t[1] != t[2];
    });
    Hypergraph h = build_hypergraph(complete);
    CHECK(h.edge_count() == 10);
    CHECK(delta_ell(h, 2) == 3); // n - k + 1
    CHECK(delta_ell(h, 1) == 6); // C(4,2)
    CHECK(delta_ell(h, 3) == 1);

    ConfigSystem none = from_explicit(Ambient::plain(5), 3, {});
    CHECK(delta_ell(build_hypergraph(none), 1) == 0);

    // degree bound against the freedom table
    for (long long q : {5, 7}) {
        ConfigSystem s = ap3(q);
        Hypergraph hq = build_hypergraph(s);
        FreedomTable ft = freedom_table(s);
        for (int l = 1; l <= 3; ++l)
            CHECK(delta_ell(hq, l) <= ft.alpha_k[l - 1] * big_binomial(3, l).convert_to<long long>());
    }
}

TEST_CASE("count_free_sets against the full-enumeration oracle") {
    for (long long q : {5, 7, 9, 11, 13}) {
        ConfigSystem s = ap3(q);
        auto oracle = free_counts_oracle(s);
        for (long long t = 0; t <= q; ++t) CHECK(count_free_sets(s, t) == BigInt(oracle[t]));
    }
    // Schur systems
    for (long long q : {5, 7, 11}) {
        ConfigSystem s = from_kernel(zq(q), 3, BlockHom::scalar({{1, 1, -1}}));
        auto oracle = free_counts_oracle(s);
        for (long long t = 0; t <= q; ++t) CHECK(count_free_sets(s, t) == BigInt(oracle[t]));
    }
    // rectangles in Z_4^2
    auto g = std::make_shared<Group>(make_abelian_group({4, 4}));
    FamilyInstance rect = rectangles(g, subgroup_generated(*g, {g->encode({1, 0})}).members,
                                     subgroup_generated(*g, {g->encode({0, 1})}).members);
    auto oracle = free_counts_oracle(rect.system);
    for (long long t = 0; t <= 16; ++t) CHECK(count_free_sets(rect.system, t) == BigInt(oracle[t]));
}

TEST_CASE("count_free_sets basics") {
    ConfigSystem s7 = ap3(7);
    CHECK(count_free_sets(s7, 0) == 1);
    CHECK(count_free_sets(s7, 1) == 7);
    // C(7,3) minus the number of AP supports: every support counted once
    Hypergraph h = build_hypergraph(s7);
    CHECK(count_free_sets(s7, 3) == big_binomial(7, 3) - h.edge_count());
}

TEST_CASE("count_free_sets is monotone under solution growth") {
    ConfigSystem small = ap3(7);
    // add Schur solutions on top of the AP system
    std::vector<std::vector<std::int32_t>> extra;
    for (long long i = 0; i < small.size(); ++i)
        extra.push_back({small.tuple(i)[0], small.tuple(i)[1], small.tuple(i)[2]});
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b) extra.push_back({a, b, static_cast<std::int32_t>((a + b) % 7)});
    ConfigSystem big = from_explicit(Ambient::of_group(*zq(7)), 3, std::move(extra));
    CHECK(big.size() > small.size());
    for (long long t = 0; t <= 7; ++t) CHECK(count_free_sets(big, t) <= count_free_sets(small, t));
}

TEST_CASE("max_free_subset") {
    ConfigSystem s7 = ap3(7);
    // edgeless X
    MaxFreeResult r1 = max_free_subset(s7, {0, 1});
    CHECK(r1.size == 2);
    CHECK(r1.exact);

    // X = one full edge: best free subset inside has k-1 elements
    Hypergraph h = build_hypergraph(s7);
    std::vector<std::int32_t> edge(h.edge(0), h.edge(0) + 3);
    MaxFreeResult r2 = max_free_subset(s7, edge);
    CHECK(r2.size == 2);

    // X = Z_7: compare against the oracle's largest free size
    std::vector<std::int32_t> all(7);
    std::iota(all.begin(), all.end(), 0);
    MaxFreeResult r3 = max_free_subset(s7, all);
    auto counts = free_counts_oracle(s7);
    long long best = 0;
    for (size_t t = 0; t < counts.size(); ++t)
        if (counts[t] > 0) best = static_cast<long long>(t);
    CHECK(r3.size == best);
    CHECK(r3.exact);
    // the witness itself must be free
    ConfigSystem wit = s7;
    for (long long i = 0; i < s7.size(); ++i) {
        const std::int32_t* t = s7.tuple(i);
        std::set<std::int32_t> d(t, t + 3);
        if (d.size() != 3) continue;
        bool inside = true;
        for (auto v : d)
            if (std::find(r3.witness.begin(), r3.witness.end(), v) == r3.witness.end()) inside = false;
        CHECK_FALSE(inside);
    }

    // greedy never exceeds the exact answer
    MaxFreeResult greedy = max_free_subset_greedy(s7, all);
    CHECK(greedy.size <= r3.size);
}

TEST_CASE("t_range") {
    ConfigSystem s7 = ap3(7);
    TRange tr = t_range(s7, 0.5, 1.0);
    CHECK(tr.t_hi == 1); // floor(0.5*7/2)
    CHECK(tr.t_lo >= 1);
    // alpha^k = [6,1,1]: the l=2 term with the combinatorial factor is
    // (1/6 * 3/3) = 1/6, the l=3 term sqrt(1/6 * 1/3) = sqrt(1/18) wins
    CHECK(tr.argmax_ell == 3);
    CHECK(tr.max_term == doctest::Approx(std::sqrt(1.0 / 18.0)));
    CHECK(tr.max_term_ratio == doctest::Approx(std::sqrt(1.0 / 6.0)));

    // empty range flag
    TRange tight = t_range(s7, 0.01, 100.0);
    CHECK(tight.empty);

    // single nonabelian equation: the l = k term dominates, giving the
    // k^{-1/(k-1)} |G|^{1/(k-1)} shape (via alpha^k_1 in place of |G|^{k-2})
    auto d5 = std::make_shared<Group>(named_group("D_5"));
    FamilyInstance fi = nonabelian_equation(d5, {1, 1, 1});
    FreedomTable ft = freedom_table(fi.system);
    TRange trn = t_range(fi.system, 0.5, 1.0);
    CHECK(trn.argmax_ell == 3);
    CHECK(trn.max_term ==
          doctest::Approx(std::sqrt(1.0 / (3.0 * static_cast<double>(ft.alpha_k[0])))));

    ConfigSystem empty = from_explicit(Ambient::plain(4), 3, {});
    CHECK_THROWS_AS(t_range(empty, 0.5, 1.0), PreconditionError);
}

TEST_CASE("bound_report") {
    ConfigSystem s13 = ap3(13);
    BoundReport r0 = bound_report(s13, 0.9, 0, 1.0);
    CHECK(r0.bound_clean == 1);

    // beta = 1: clean bound C(n,t) dominates the oracle count trivially
    for (long long t : {0, 3, 6}) {
        BoundReport r = bound_report(s13, 1.0, t, 1.0, count_free_sets(s13, t));
        CHECK(*r.oracle_count <= r.bound_clean);
        CHECK(r.verdict == "oracle <= clean bound");
    }

    // the spec's comparison at beta = 0.9, t = 6 is recorded either way
    BoundReport r9 = bound_report(s13, 0.9, 6, 1.0, count_free_sets(s13, 6));
    CHECK(r9.bound_clean == big_binomial(11, 6));
    CHECK_FALSE(r9.verdict.empty());
}

TEST_CASE("exact raw<=clean comparison") {
    // delta = min(beta/2, 1/40) with beta = 1/2 -> delta = 1/40; the chain
    // 2^{1/(3 delta)} > 2e/delta^2 makes raw <= clean for all t in range
    for (long long n : {400, 1000}) {
        BigRat delta(1, 40), beta(1, 2);
        for (long long t = 1; t <= n / 80; t += 3)
            CHECK(bound_raw_le_clean_exact(n, delta, beta, t));
    }
}
