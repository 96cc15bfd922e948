#pragma once

#include "confsys/config_system.hpp"
#include "confsys/counting.hpp"
#include "confsys/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace confsys {

/// Binomial random subset [G]_p: each element kept independently with
/// probability p. Deterministic under (seed); elements drawn in index order.
std::vector<std::int32_t> sample_binomial(long long ambient_size, double p, std::uint64_t seed);

struct ThresholdFormulas {
    bool restricted = true; // computed on S^(k) (true) or on all of S (false)
    double p_one = 0.0;     // max_l (alpha_l / alpha_1)^{1/(l-1)}
    int p_one_argmax_ell = 0;
    double p_zero = 0.0;    // min{ max_U (|G|/|pi_U|)^{1/(|U|-1)}, 1 }
    std::vector<int> p_zero_argmax_u;
    double p_small = 0.0;   // |S^(k)|^{-1/k}
};

ThresholdFormulas threshold_formulas(const ConfigSystem& sys, bool restricted = true, int workers = 1);

enum class StabilityVerdict { Stable, Unstable, ProbablyStable };

struct StabilityResult {
    StabilityVerdict verdict = StabilityVerdict::Stable;
    bool degenerate = false; // |X| = 0 convention
    bool exact = true;       // false when decided by the greedy fallback
    long long threshold = 0; // ceil(delta * |X|)
    long long free_found = 0;
};

/// (delta,S)_k-stability of X: every X' in X with |X'| >= delta|X| meets
/// S^(k). Decided through the max-free-subset reformulation.
StabilityResult is_stable(const ConfigSystem& sys, const std::vector<std::int32_t>& x, double delta,
                          bool exact, const Budget& budget = {});

struct StabilityPoint {
    double p = 0.0;
    long long trials = 0;
    long long stable = 0;
    long long degenerate = 0;
    long long fallback = 0; // trials decided heuristically after budget abort
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::string mode; // "exact" or "mixed"
};

struct StabilityReport {
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::vector<StabilityPoint> points;
    std::optional<double> crossing_p; // grid-interpolated estimate = 1/2
    bool monotone_within_noise = true;
};

StabilityReport montecarlo_stability(const ConfigSystem& sys, double delta,
                                     const std::vector<double>& p_grid, long long trials,
                                     std::uint64_t seed, int workers = 1, const Budget& budget = {});

struct ConcentrationReport {
    std::vector<int> U;
    double p = 0.0;
    long long trials = 0;
    long long image_size = 0;
    double expectation = 0.0; // p^{|U|} * |pi_U(S^(k))|
    double mean = 0.0;
    double variance = 0.0;
    double rel_dev_median = 0.0;
    double rel_dev_q90 = 0.0;
};

ConcentrationReport concentration_check(const ConfigSystem& sys, const std::vector<int>& u, double p,
                                        long long trials, std::uint64_t seed, const Budget& budget = {});

struct AlterationResult {
    std::vector<std::int32_t> x;
    std::vector<std::int32_t> x_prime;
    long long solutions_hit = 0; // solutions found inside X during the sweep
    double density = 1.0;        // |X'| / |X| (1 for empty X)
};

/// One pass of the alteration method: sample X = [G]_p, delete one element per
/// surviving S^(k) solution inside X, return the solution-free remainder.
AlterationResult zero_statement_alteration(const ConfigSystem& sys, double p, std::uint64_t seed);

} // namespace confsys
