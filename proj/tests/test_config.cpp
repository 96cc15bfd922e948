#include <doctest.h>

#include "confsys/config_system.hpp"
#include "confsys/families.hpp"
#include "confsys/util.hpp"

#include <map>
#include <memory>
#include <set>

using namespace confsys;

namespace {

std::shared_ptr<const Group> zq(long long q) {
    return std::make_shared<Group>(make_abelian_group({q}));
}

ConfigSystem ap3(long long q) {
    return from_kernel(zq(q), 3, BlockHom::scalar({{1, -2, 1}}));
}

// Naive nested-loop freedom table: for every U and every value tuple in the
// image, count matching solutions directly. Completely independent of the
// packed/sorted fiber machinery.
std::pair<std::vector<long long>, std::vector<long long>> freedom_oracle(const ConfigSystem& sys) {
    const int k = sys.degree();
    std::vector<long long> alpha(k, 0), alpha_k(k, 0);
    for (int l = 1; l <= k; ++l) {
        for (auto& u : subsets_of_size(k, l)) {
            std::map<std::vector<std::int32_t>, std::pair<long long, long long>> fibers;
            for (long long i = 0; i < sys.size(); ++i) {
                const std::int32_t* t = sys.tuple(i);
                std::vector<std::int32_t> key;
                for (int c : u) key.push_back(t[c]);
                auto& f = fibers[key];
                ++f.first;
                std::set<std::int32_t> distinct(t, t + k);
                if (static_cast<int>(distinct.size()) == k) ++f.second;
            }
            for (auto& [key, f] : fibers) {
                alpha[l - 1] = std::max(alpha[l - 1], f.first);
                alpha_k[l - 1] = std::max(alpha_k[l - 1], f.second);
            }
        }
    }
    return {alpha, alpha_k};
}

} // namespace

TEST_CASE("from_kernel 3-AP systems") {
    ConfigSystem s5 = ap3(5);
    CHECK(s5.size() == 25);
    CHECK(s5.ambient().size == 5);

    // brute-force oracle over all 125 triples
    long long brute = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c)
                if ((a - 2 * b + c) % 5 == 0) {
                    ++brute;
                    CHECK(s5.contains({a, b, c}));
                }
    CHECK(brute == s5.size());

    ConfigSystem s2 = from_kernel(zq(2), 3, BlockHom::scalar({{1, -2, 1}}));
    CHECK(s2.size() == 4); // (a, b, a), a and b free

    // kernel of the zero map is everything
    ConfigSystem all = from_kernel(zq(3), 2, BlockHom::scalar({{0, 0}}));
    CHECK(all.size() == 9);
}

TEST_CASE("from_kernel back-solve matches plain enumeration on a non-unit pivot row") {
    // 3x - 3y = 0 over Z_6 has no unit pivot anywhere: falls back internally,
    // compare against direct enumeration
    auto g = zq(6);
    ConfigSystem s = from_kernel(g, 2, BlockHom::scalar({{3, -3}}));
    long long brute = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if ((3 * a - 3 * b) % 6 == 0) ++brute;
    CHECK(s.size() == brute);
}

TEST_CASE("from_kernel with nonzero target") {
    auto g = zq(5);
    ConfigSystem s = from_kernel(g, 3, BlockHom::scalar({{1, -2, 1}}), {1});
    CHECK(s.size() == 25);
    CHECK_FALSE(s.contains({0, 0, 0}));
    CHECK(is_invariant(ap3(5)));
    CHECK_FALSE(is_invariant(s));
}

TEST_CASE("from_predicate") {
    Ambient box = Ambient::box(5, 1);
    auto pred = [&](const std::vector<std::int32_t>& t) {
        auto a = box.box_coords(t[0])[0], b = box.box_coords(t[1])[0], c = box.box_coords(t[2])[0];
        return b - a == c - b;
    };
    ConfigSystem aps = from_predicate(box, 3, pred);
    CHECK(aps.size() == 13);

    ConfigSystem none = from_predicate(Ambient::plain(4), 2,
                                       [](const std::vector<std::int32_t>&) { return false; });
    CHECK(none.size() == 0);
    ConfigSystem every = from_predicate(Ambient::plain(3), 2,
                                        [](const std::vector<std::int32_t>&) { return true; });
    CHECK(every.size() == 9);
}

TEST_CASE("partition by distinctness") {
    ConfigSystem s5 = ap3(5);
    SolutionPartition p = partition_by_distinctness(s5);
    CHECK(p.counts == std::vector<long long>{5, 0, 20});
    long long total = 0;
    for (long long c : p.counts) total += c;
    CHECK(total == s5.size());

    ConfigSystem empty = from_explicit(Ambient::plain(4), 3, {});
    SolutionPartition pe = partition_by_distinctness(empty);
    CHECK(pe.counts == std::vector<long long>{0, 0, 0});
}

TEST_CASE("projections") {
    ConfigSystem s5 = ap3(5);
    // full projection is injective
    ProjectionStats full = project_stats(s5, {0, 1, 2}, false);
    CHECK(full.max_fiber == 1);
    CHECK(full.image_size == s5.size());
    // single coordinate: every fiber has size 5
    ProjectionStats one = project_stats(s5, {0}, false);
    CHECK(one.max_fiber == 5);
    CHECK(one.min_fiber == 5);
    CHECK(one.image_size == 5);

    ProjectionMap pm = project(s5, {0}, false);
    CHECK(pm.image.size() == 5);
    for (long long f : pm.fiber) CHECK(f == 5);

    // rectangles in Z_5^2 with coordinate subgroups: S^(4) fibers over any
    // 3 coordinates are singletons
    auto g = std::make_shared<Group>(make_abelian_group({5, 5}));
    auto h = subgroup_generated(*g, {g->encode({1, 0})});
    auto k = subgroup_generated(*g, {g->encode({0, 1})});
    FamilyInstance rect = rectangles(g, h.members, k.members);
    CHECK(rect.system.size() == 625);
    for (auto& u : subsets_of_size(4, 3)) {
        ProjectionStats st = project_stats(rect.system, u, true);
        CHECK(st.max_fiber == 1);
    }
}

TEST_CASE("freedom table matches the naive oracle") {
    ConfigSystem s5 = ap3(5);
    FreedomTable ft = freedom_table(s5);
    auto [alpha, alpha_k] = freedom_oracle(s5);
    CHECK(ft.alpha == alpha);
    CHECK(ft.alpha_k == alpha_k);
    CHECK(ft.alpha == std::vector<long long>{5, 1, 1});

    ConfigSystem s7 = ap3(7);
    FreedomTable ft7 = freedom_table(s7, 2);
    auto [a7, ak7] = freedom_oracle(s7);
    CHECK(ft7.alpha == a7);
    CHECK(ft7.alpha_k == ak7);
    CHECK(ft7.alpha == std::vector<long long>{7, 1, 1});
    CHECK(ft7.alpha_k == std::vector<long long>{6, 1, 1});

    // rectangles Z_4^2, coordinate subgroups
    auto g = std::make_shared<Group>(make_abelian_group({4, 4}));
    auto h = subgroup_generated(*g, {g->encode({1, 0})});
    auto k = subgroup_generated(*g, {g->encode({0, 1})});
    FamilyInstance rect = rectangles(g, h.members, k.members);
    FreedomTable ftr = freedom_table(rect.system, 2);
    auto [ar, akr] = freedom_oracle(rect.system);
    CHECK(ftr.alpha == ar);
    CHECK(ftr.alpha_k == akr);

    // monotonicity invariants on every computed table
    for (const FreedomTable* t : {&ft, &ft7, &ftr}) {
        for (int l = 1; l < t->k; ++l) {
            CHECK(t->alpha[l] <= t->alpha[l - 1]);
            CHECK(t->alpha_k[l] <= t->alpha_k[l - 1]);
        }
        for (int l = 0; l < t->k; ++l) CHECK(t->alpha_k[l] <= t->alpha[l]);
    }
}

TEST_CASE("wide tuples use the comparator fallback and still match the oracle") {
    // 8 coordinates over an ambient of 1000 exceeds the 64-bit packing width
    Rng rng(31415);
    std::vector<std::vector<std::int32_t>> tuples;
    for (int i = 0; i < 400; ++i) {
        std::vector<std::int32_t> t(8);
        for (auto& v : t) v = static_cast<std::int32_t>(rng.next_below(1000));
        t[7] = t[0]; // force some collisions in projections
        tuples.push_back(std::move(t));
    }
    ConfigSystem sys = from_explicit(Ambient::plain(1000), 8, std::move(tuples));
    FreedomTable ft = freedom_table(sys, 2);
    auto [alpha, alpha_k] = freedom_oracle(sys);
    CHECK(ft.alpha == alpha);
    CHECK(ft.alpha_k == alpha_k);
}

TEST_CASE("freedom table of coordinate rectangles in Z_8^2") {
    auto g = std::make_shared<Group>(make_abelian_group({8, 8}));
    auto h = subgroup_generated(*g, {g->encode({1, 0})});
    auto k = subgroup_generated(*g, {g->encode({0, 1})});
    FamilyInstance rect = rectangles(g, h.members, k.members);
    FreedomTable ft = freedom_table(rect.system, 2);
    CHECK(ft.alpha == std::vector<long long>{64, 8, 1, 1});
    CHECK(ft.alpha_k == std::vector<long long>{49, 7, 1, 1});
    // translation partition: alpha_1 = |S|/|G| exactly
    CHECK(ft.alpha[0] == rect.system.size() / g->order());
}

TEST_CASE("freedom table argmax ties are all retained") {
    ConfigSystem s5 = ap3(5);
    FreedomTable ft = freedom_table(s5);
    // every single-coordinate projection of the AP system has fiber 5
    CHECK(ft.argmax[0].size() == 3);
    CHECK(ft.argmax[0][0].U == std::vector<int>{0});
}

TEST_CASE("empty system freedom table is flagged") {
    ConfigSystem empty = from_explicit(Ambient::plain(4), 3, {});
    FreedomTable ft = freedom_table(empty);
    CHECK(ft.s_empty);
    CHECK(ft.sk_empty);
    CHECK(ft.alpha == std::vector<long long>{0, 0, 0});
}

TEST_CASE("is_invariant") {
    CHECK(is_invariant(ap3(5)));
    // Schur system x1 + x2 - x3 = 0 is not invariant
    ConfigSystem schur = from_kernel(zq(5), 3, BlockHom::scalar({{1, 1, -1}}));
    CHECK_FALSE(is_invariant(schur));
    ConfigSystem boxsys = from_predicate(Ambient::box(3, 1), 2,
                                         [](const std::vector<std::int32_t>&) { return true; });
    CHECK_THROWS_AS(is_invariant(boxsys), PreconditionError);
}

TEST_CASE("rho uniformity") {
    ConfigSystem s7 = ap3(7);
    RhoUniformity rho = rho_uniformity(s7);
    CHECK(rho.rho == BigRat(1));

    // fibers {5,1} over U = {1,2}: five distinct-entry tuples share the pair
    // (0,1) and one lone tuple projects to (1,2)
    std::vector<std::vector<std::int32_t>> tuples;
    for (std::int32_t c = 2; c <= 6; ++c) tuples.push_back({0, 1, c});
    tuples.push_back({1, 2, 7});
    ConfigSystem sys = from_explicit(Ambient::plain(8), 3, std::move(tuples));
    RhoUniformity r2 = rho_uniformity(sys);
    CHECK(r2.rho == BigRat(1, 5));
    CHECK(r2.argmin_U == std::vector<int>{0, 1});
    CHECK(r2.min_fiber == 1);
    CHECK(r2.max_fiber == 5);

    ConfigSystem empty = from_explicit(Ambient::plain(4), 3, {});
    CHECK_THROWS_AS(rho_uniformity(empty), PreconditionError);
}

TEST_CASE("v-property estimates") {
    ConfigSystem s7 = ap3(7);
    // epsilon = 1: X = G, everything survives
    VPropertyEstimate full = v_property_estimate(s7, 1.0, true);
    CHECK(full.gamma_hat == BigRat(1));

    // epsilon = 3/7 exhaustive: only the 3 diagonal tuples survive AP-free 3-sets
    VPropertyEstimate e37 = v_property_estimate(s7, 3.0 / 7.0, true);
    CHECK(e37.subset_size == 3);
    CHECK(e37.gamma_hat == BigRat(3, 49));
    CHECK(e37.subsets_tested == 35);

    // sampled mode is an upper bound on the exhaustive minimum
    VPropertyEstimate sampled = v_property_estimate(s7, 3.0 / 7.0, false, 10, 42);
    CHECK(sampled.gamma_hat >= e37.gamma_hat);

    ConfigSystem empty = from_explicit(Ambient::plain(4), 3, {});
    VPropertyEstimate ee = v_property_estimate(empty, 0.5, true);
    CHECK(ee.empty_system);
    CHECK(ee.gamma_hat == BigRat(0));
}

TEST_CASE("normality report") {
    std::vector<ConfigSystem> systems;
    for (long long q : {5, 7, 11, 13}) systems.push_back(ap3(q));
    std::vector<const ConfigSystem*> ptrs;
    for (auto& s : systems) ptrs.push_back(&s);
    NormalityReport rep = normality_report(ptrs);
    CHECK(rep.c2_ratio_to_zero);
    CHECK(rep.c2_ratio_to_inf);
    CHECK(rep.c3_to_one);
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        long long q = std::vector<long long>{5, 7, 11, 13}[i];
        CHECK(rep.rows[i].sk_over_s == doctest::Approx(static_cast<double>(q * q - q) / (q * q)));
    }

    // S = G^k fails C2
    std::vector<ConfigSystem> fulls;
    for (long long q : {3, 4}) fulls.push_back(from_kernel(zq(q), 2, BlockHom::scalar({{0, 0}})));
    std::vector<const ConfigSystem*> fptrs{&fulls[0], &fulls[1]};
    NormalityReport bad = normality_report(fptrs);
    CHECK_FALSE(bad.c2_ratio_to_inf);

    CHECK_THROWS_AS(normality_report({ptrs[0]}), PreconditionError);
}
