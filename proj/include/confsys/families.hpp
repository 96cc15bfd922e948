#pragma once

#include "confsys/config_system.hpp"
#include "confsys/group.hpp"
#include "confsys/linear.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace confsys {

/// A named configuration family instance: the system itself plus the
/// family-specific expected scalings and per-instance metrics used by the
/// sweep and acceptance machinery.
struct FamilyInstance {
    std::string name;
    std::map<std::string, std::string> params;
    ConfigSystem system;
    std::map<std::string, double> expected; // scaling exponents from the source theorems
    std::map<std::string, double> metrics;  // per-instance closed-form quantities
    std::map<std::string, std::string> notes;
    std::vector<std::pair<std::string, ConfigSystem>> companions;

    FamilyInstance(std::string n, ConfigSystem sys) : name(std::move(n)), system(std::move(sys)) {}
};

/// Degree-4 system {(x, x+a, x+b, x+a+b) : x in G, a in H, b in K}.
FamilyInstance rectangles(std::shared_ptr<const Group> g, const std::vector<int>& h_members,
                          const std::vector<int>& k_members, const Budget& budget = {});

/// Degree (r+1)^2 grid {x + b_i + a_j} with a_0 = b_0 = 0, a in H, b in K.
FamilyInstance generalized_rectangles(std::shared_ptr<const Group> g, const std::vector<int>& h_members,
                                      const std::vector<int>& k_members, int r, const Budget& budget = {});

/// {(x, x+a, x+phi(a), x+a+phi(a)) : x in G, a in H} for an injective
/// homomorphism phi given as an integer matrix on the abelian coordinates.
FamilyInstance slanted_squares(std::shared_ptr<const Group> g, const std::vector<int>& h_members,
                               const std::vector<std::vector<long long>>& phi_matrix,
                               const Budget& budget = {});

/// m-dimensional simplices {(p, p+a*e_1, ..., p+a*e_m)} in the box [1,n]^m.
FamilyInstance simplices_box(int n, int m, bool sign_restricted, const Budget& budget = {});

/// Kernel system of an integer matrix over the box [1,n]^m together with its
/// cyclic embedding into Z_{lambda*n}^m.
FamilyInstance box_linear_system(const BlockHom& a, int n, const Budget& budget = {});

/// Arithmetic progressions of length r in Z_q (kernel of the (r-2) x r
/// second-difference matrix).
FamilyInstance ap_system(long long q, int r, const Budget& budget = {});

/// Solutions of x_1^{r_1} ... x_k^{r_k} = e in a (not necessarily abelian)
/// group with gcd(r_j, |G|) = 1 for all j.
FamilyInstance nonabelian_equation(std::shared_ptr<const Group> g, const std::vector<long long>& r,
                                   const Budget& budget = {});

/// The augmented system S union S' over Z_q^8: S the kernel of the fixed 2x8
/// matrix, S' a random sparse block with coordinates {4,5,6} pinned to
/// (1,2,3). Distinctness violations in S' are reported, not discarded.
FamilyInstance appendix_gap_example(long long q, double c, std::uint64_t seed, const Budget& budget = {});

/// The 2x8 integer matrix of the gap example.
IntegerMatrix appendix_gap_matrix();

/// The r-AP coefficient matrix ((r-2) rows of x_i - 2x_{i+1} + x_{i+2}).
IntegerMatrix ap_matrix(int r);

bool is_subgroup_of(const Group& g, const std::vector<int>& members);

} // namespace confsys
