#pragma once

#include "confsys/bigint.hpp"
#include "confsys/errors.hpp"
#include "confsys/group.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace confsys {

/// Finite ambient set of a configuration system: a group, an integer box
/// [1,n]^m, or a plain indexed set. Elements are indices in [0, size).
struct Ambient {
    enum class Kind { Group, Box, Plain };

    Kind kind = Kind::Plain;
    std::shared_ptr<const Group> group; // Kind::Group
    int box_n = 0, box_m = 0;           // Kind::Box, coordinates in [1, box_n]
    long long size = 0;
    std::string label;

    static Ambient of_group(Group g, std::string label = "");
    static Ambient box(int n, int m);
    static Ambient plain(long long size, std::string label = "");

    bool is_group() const { return kind == Kind::Group; }
    std::vector<long long> box_coords(int index) const; // values in [1, box_n]
    int box_index(const std::vector<long long>& coords) const;
    std::string element_name(int index) const;
};

struct Budget {
    long long max_solutions = 30'000'000;
    long long max_enumeration = 400'000'000; // raw assignments visited while materializing
    long long max_search_nodes = 60'000'000; // branch-and-bound nodes
    long long max_projection_entries = 5'000'000;
    long long max_subsets = 20'000'000; // exhaustive V-property / stability sweeps
};

enum class Provenance { KernelOfHom, Predicate, ExplicitList, Family };

/// A system of configurations (S, G) of degree k with S materialized as a
/// lexicographically sorted, deduplicated list of k-tuples of element indices.
class ConfigSystem {
  public:
    ConfigSystem(Ambient ambient, int degree, std::vector<std::int32_t> flat_tuples, Provenance prov);

    const Ambient& ambient() const { return ambient_; }
    int degree() const { return k_; }
    long long size() const { return count_; }
    Provenance provenance() const { return prov_; }

    const std::int32_t* tuple(long long row) const { return flat_.data() + row * k_; }
    const std::vector<std::int32_t>& flat() const { return flat_; }

    /// Row indices of S^(k) (tuples with pairwise distinct entries).
    const std::vector<std::int32_t>& sk_rows() const { return sk_rows_; }
    long long sk_count() const { return static_cast<long long>(sk_rows_.size()); }
    /// Count of tuples taking exactly j distinct values, j = 1..k.
    const std::vector<long long>& class_counts() const { return class_counts_; }

    bool contains(const std::vector<std::int32_t>& tuple) const;

    std::string describe_source() const;

  private:
    Ambient ambient_;
    int k_;
    std::vector<std::int32_t> flat_;
    long long count_ = 0;
    Provenance prov_;
    std::vector<std::int32_t> sk_rows_;
    std::vector<long long> class_counts_;
};

/// Kernel system S = {x in G^k : M(x) = b}. Back-solves through unit pivots
/// when the moduli are equal; otherwise enumerates with row pruning.
ConfigSystem from_kernel(std::shared_ptr<const Group> g, int k, const BlockHom& m,
                         const std::vector<int>& b = {}, const Budget& budget = {});

ConfigSystem from_predicate(Ambient ambient, int k,
                            const std::function<bool(const std::vector<std::int32_t>&)>& pred,
                            const Budget& budget = {});

ConfigSystem from_explicit(Ambient ambient, int k, std::vector<std::vector<std::int32_t>> tuples);

// ---- partition ----

struct SolutionPartition {
    int k = 0;
    std::vector<long long> counts;                     // counts[j-1] = |S^(j)|
    std::vector<std::vector<std::int32_t>> class_rows; // row indices per class
};

SolutionPartition partition_by_distinctness(const ConfigSystem& sys);

// ---- projections ----

struct ProjectionStats {
    std::vector<int> U; // 0-based coordinate indices, ascending
    bool restricted = false;
    long long image_size = 0;
    long long max_fiber = 0;
    long long min_fiber = 0;                // over the image (nonempty fibers)
    std::vector<std::int32_t> argmax_value; // lexicographically first maximizing tuple
    std::vector<std::int32_t> argmin_value;
    long long argmax_ties = 0; // number of image tuples attaining max_fiber
};

/// Fiber statistics of pi_U on S (restricted=false) or S^(k) (restricted=true).
ProjectionStats project_stats(const ConfigSystem& sys, const std::vector<int>& U, bool restricted);

/// Full image -> fiber-size map (sorted by image tuple). Budget-guarded.
struct ProjectionMap {
    ProjectionStats stats;
    std::vector<std::vector<std::int32_t>> image;
    std::vector<long long> fiber;
};
ProjectionMap project(const ConfigSystem& sys, const std::vector<int>& U, bool restricted,
                      const Budget& budget = {});

// ---- degrees of freedom ----

struct ArgmaxEntry {
    std::vector<int> U;
    std::vector<std::int32_t> witness;
    long long tie_tuples = 0;
};

struct FreedomTable {
    int k = 0;
    bool s_empty = false;
    bool sk_empty = false;
    std::vector<long long> alpha;   // alpha[l-1], l = 1..k
    std::vector<long long> alpha_k; // restricted table on S^(k)
    std::vector<std::vector<ArgmaxEntry>> argmax;   // per l, all maximizing U
    std::vector<std::vector<ArgmaxEntry>> argmax_k;
};

FreedomTable freedom_table(const ConfigSystem& sys, int workers = 1);

// ---- invariance / uniformity / supersaturation ----

bool is_invariant(const ConfigSystem& sys);

struct RhoUniformity {
    BigRat rho;
    std::vector<int> argmin_U;
    std::vector<std::int32_t> argmin_value;
    long long min_fiber = 0;
    long long max_fiber = 0;
};

/// rho-k-uniformity of S^(k): min over U (|U| >= 2) and x in pi_U(S^(k)) of
/// fiber(x) / max-fiber(U).
RhoUniformity rho_uniformity(const ConfigSystem& sys);

struct VPropertyEstimate {
    double epsilon = 0.0;
    BigRat gamma_hat;
    bool exhaustive = false;
    bool empty_system = false;
    long long subset_size = 0;      // ceil(eps * |G|)
    long long subsets_tested = 0;
    long long min_solutions = 0;
    std::vector<std::int32_t> witness; // minimizing X (exhaustive mode, or best seen)
};

VPropertyEstimate v_property_estimate(const ConfigSystem& sys, double epsilon, bool exhaustive,
                                      long long trials = 0, std::uint64_t seed = 0,
                                      const Budget& budget = {});

// ---- normality diagnostics ----

struct NormalityRow {
    std::string label;
    long long ambient_size = 0;
    long long s_size = 0;
    long long sk_size = 0;
    double g_over_s = 0.0;
    double gk_over_s = 0.0;
    double sk_over_s = 0.0;
};

struct NormalityReport {
    std::vector<NormalityRow> rows;
    bool c2_ratio_to_zero = false; // |G|/|S| strictly decreasing
    bool c2_ratio_to_inf = false;  // |G|^k/|S| strictly increasing
    bool c3_to_one = false;        // |S^(k)|/|S| non-decreasing
    std::string c4_note;           // V-property uniformity is advisory only
};

NormalityReport normality_report(const std::vector<const ConfigSystem*>& family,
                                 const std::vector<std::string>& labels = {});

} // namespace confsys
