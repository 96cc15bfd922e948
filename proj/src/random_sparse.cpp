#include "confsys/random_sparse.hpp"

#include "confsys/util.hpp"

#include <algorithm>
#include <cmath>

namespace confsys {

std::vector<std::int32_t> sample_binomial(long long ambient_size, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw PreconditionError("sample_binomial: p must be in [0,1]");
    Rng rng(seed);
    std::vector<std::int32_t> out;
    for (long long i = 0; i < ambient_size; ++i)
        if (rng.bernoulli(p)) out.push_back(static_cast<std::int32_t>(i));
    return out;
}

ThresholdFormulas threshold_formulas(const ConfigSystem& sys, bool restricted, int workers) {
    ThresholdFormulas tf;
    tf.restricted = restricted;
    const long long base_count = restricted ? sys.sk_count() : sys.size();
    if (base_count == 0)
        throw PreconditionError("threshold_formulas: degenerate system (empty solution set)");
    FreedomTable ft = freedom_table(sys, workers);
    const auto& alpha = restricted ? ft.alpha_k : ft.alpha;
    if (alpha[0] == 0) throw PreconditionError("threshold_formulas: alpha_1 = 0");
    const int k = sys.degree();
    for (int l = 2; l <= k; ++l) {
        double v = std::pow(static_cast<double>(alpha[l - 1]) / static_cast<double>(alpha[0]),
                            1.0 / (l - 1));
        if (v > tf.p_one) {
            tf.p_one = v;
            tf.p_one_argmax_ell = l;
        }
    }
    const double n = static_cast<double>(sys.ambient().size);
    for (int l = 2; l <= k; ++l) {
        for (auto& u : subsets_of_size(k, l)) {
            ProjectionStats st = project_stats(sys, u, restricted);
            if (st.image_size == 0) continue;
            double v = std::pow(n / static_cast<double>(st.image_size), 1.0 / (l - 1));
            if (v > tf.p_zero) {
                tf.p_zero = v;
                tf.p_zero_argmax_u = u;
            }
        }
    }
    tf.p_zero = std::min(tf.p_zero, 1.0);
    tf.p_small = std::pow(static_cast<double>(base_count), -1.0 / k);
    return tf;
}

StabilityResult is_stable(const ConfigSystem& sys, const std::vector<std::int32_t>& x, double delta,
                          bool exact, const Budget& budget) {
    if (delta <= 0.0 || delta > 1.0) throw PreconditionError("is_stable: delta must be in (0,1]");
    StabilityResult res;
    res.threshold = static_cast<long long>(std::ceil(delta * static_cast<double>(x.size()) - 1e-9));
    if (x.empty()) { // vacuous quantifier, flagged
        res.degenerate = true;
        res.verdict = StabilityVerdict::Stable;
        return res;
    }
    if (res.threshold <= 0) res.threshold = 1; // any nonempty X' must meet S^(k)
    if (exact) {
        MaxFreeResult mf = max_free_subset(sys, x, budget, /*stop_at=*/res.threshold);
        res.free_found = mf.size;
        if (mf.size >= res.threshold) {
            res.verdict = StabilityVerdict::Unstable;
            res.exact = true;
            return res;
        }
        if (mf.exact) {
            res.verdict = StabilityVerdict::Stable;
            res.exact = true;
            return res;
        }
        // budget hit: the greedy answer below is all we can certify
    }
    MaxFreeResult greedy = max_free_subset_greedy(sys, x);
    res.free_found = std::max(res.free_found, greedy.size);
    res.exact = false;
    res.verdict = res.free_found >= res.threshold ? StabilityVerdict::Unstable
                                                  : StabilityVerdict::ProbablyStable;
    if (greedy.exact && res.verdict == StabilityVerdict::ProbablyStable) {
        // edgeless X: the greedy answer is the true maximum
        res.exact = true;
        res.verdict = StabilityVerdict::Stable;
    }
    return res;
}

StabilityReport montecarlo_stability(const ConfigSystem& sys, double delta,
                                     const std::vector<double>& p_grid, long long trials,
                                     std::uint64_t seed, int workers, const Budget& budget) {
    if (trials < 1) throw PreconditionError("montecarlo_stability: trials must be >= 1");
    StabilityReport rep;
    rep.delta = delta;
    rep.seed = seed;
    rep.points.resize(p_grid.size());
    for (size_t pi = 0; pi < p_grid.size(); ++pi) {
        StabilityPoint& pt = rep.points[pi];
        pt.p = p_grid[pi];
        pt.trials = trials;
        std::vector<std::int8_t> stable(trials, 0), degen(trials, 0), fell(trials, 0);
        parallel_for(trials, workers, [&](std::int64_t t) {
            std::uint64_t trial_index = static_cast<std::uint64_t>(pi) * trials + t;
            auto x = sample_binomial(sys.ambient().size, pt.p, seed ^ trial_index);
            StabilityResult r = is_stable(sys, x, delta, /*exact=*/true, budget);
            stable[t] = r.verdict != StabilityVerdict::Unstable ? 1 : 0;
            degen[t] = r.degenerate ? 1 : 0;
            fell[t] = r.exact ? 0 : 1;
        });
        for (long long t = 0; t < trials; ++t) {
            pt.stable += stable[t];
            pt.degenerate += degen[t];
            pt.fallback += fell[t];
        }
        pt.estimate = static_cast<double>(pt.stable) / static_cast<double>(trials);
        pt.stderr_ = std::sqrt(pt.estimate * (1.0 - pt.estimate) / static_cast<double>(trials));
        pt.mode = pt.fallback == 0 ? "exact" : "mixed";
    }
    for (size_t i = 1; i < rep.points.size(); ++i) {
        double drop = rep.points[i - 1].estimate - rep.points[i].estimate;
        double noise = 2.0 * (rep.points[i - 1].stderr_ + rep.points[i].stderr_);
        if (drop > noise) rep.monotone_within_noise = false;
    }
    for (size_t i = 0; i < rep.points.size(); ++i) {
        if (rep.points[i].estimate >= 0.5) {
            if (i == 0) {
                rep.crossing_p = rep.points[0].p;
            } else {
                double p0 = rep.points[i - 1].p, p1 = rep.points[i].p;
                double e0 = rep.points[i - 1].estimate, e1 = rep.points[i].estimate;
                rep.crossing_p = e1 == e0 ? p1 : p0 + (0.5 - e0) / (e1 - e0) * (p1 - p0);
            }
            break;
        }
    }
    return rep;
}

ConcentrationReport concentration_check(const ConfigSystem& sys, const std::vector<int>& u, double p,
                                        long long trials, std::uint64_t seed, const Budget& budget) {
    if (trials < 1) throw PreconditionError("concentration_check: trials must be >= 1");
    ProjectionMap pm = project(sys, u, /*restricted=*/true, budget);
    ConcentrationReport rep;
    rep.U = pm.stats.U;
    rep.p = p;
    rep.trials = trials;
    rep.image_size = pm.stats.image_size;
    rep.expectation = std::pow(p, static_cast<double>(pm.stats.U.size())) *
                      static_cast<double>(pm.stats.image_size);
    std::vector<double> counts(trials, 0.0);
    std::vector<char> in(static_cast<size_t>(sys.ambient().size), 0);
    for (long long t = 0; t < trials; ++t) {
        auto x = sample_binomial(sys.ambient().size, p, seed ^ static_cast<std::uint64_t>(t));
        std::fill(in.begin(), in.end(), 0);
        for (auto v : x) in[v] = 1;
        long long c = 0;
        for (const auto& img : pm.image) {
            bool all = true;
            for (auto v : img) {
                if (!in[v]) {
                    all = false;
                    break;
                }
            }
            if (all) ++c;
        }
        counts[t] = static_cast<double>(c);
    }
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double c : counts) var += (c - mean) * (c - mean);
    var /= static_cast<double>(trials);
    rep.mean = mean;
    rep.variance = var;
    std::vector<double> rel(trials);
    for (long long t = 0; t < trials; ++t)
        rel[t] = rep.expectation > 0.0 ? std::abs(counts[t] - rep.expectation) / rep.expectation
                                       : std::abs(counts[t]);
    std::sort(rel.begin(), rel.end());
    rep.rel_dev_median = rel[static_cast<size_t>(trials / 2)];
    rep.rel_dev_q90 = rel[static_cast<size_t>(std::min<long long>(trials - 1, (trials * 9) / 10))];
    return rep;
}

AlterationResult zero_statement_alteration(const ConfigSystem& sys, double p, std::uint64_t seed) {
    AlterationResult res;
    res.x = sample_binomial(sys.ambient().size, p, seed);
    std::vector<char> in(static_cast<size_t>(sys.ambient().size), 0);
    for (auto v : res.x) in[v] = 1;
    const int k = sys.degree();
    for (std::int32_t row : sys.sk_rows()) {
        const std::int32_t* t = sys.tuple(row);
        bool inside = true;
        for (int j = 0; j < k; ++j) {
            if (!in[t[j]]) {
                inside = false;
                break;
            }
        }
        if (inside) {
            ++res.solutions_hit;
            in[t[0]] = 0; // delete one element per surviving solution
        }
    }
    for (auto v : res.x)
        if (in[v]) res.x_prime.push_back(v);
    res.density = res.x.empty() ? 1.0
                                : static_cast<double>(res.x_prime.size()) / static_cast<double>(res.x.size());
    return res;
}

} // namespace confsys
