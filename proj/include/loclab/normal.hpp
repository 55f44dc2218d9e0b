#ifndef LOCLAB_NORMAL_HPP
#define LOCLAB_NORMAL_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loclab/extension.hpp"
#include "loclab/fusion.hpp"
#include "loclab/locality.hpp"
#include "loclab/partial_group.hpp"
#include "loclab/report.hpp"

namespace loclab {

class NormalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A partial normal subgroup of a locality: sorted carrier ids and T = S cap N.
// T is strongly closed in F_S(L).
struct PartialNormal {
    std::vector<int> members;
    Mask t = 0;
    std::size_t size() const { return members.size(); }
    bool contains(int f) const;
    friend bool operator==(const PartialNormal& a, const PartialNormal& b) { return a.members == b.members; }
    friend bool operator<(const PartialNormal& a, const PartialNormal& b) {
        return a.members.size() != b.members.size() ? a.members.size() < b.members.size() : a.members < b.members;
    }
};

// Checks partial normality and strong closure of S cap N; throws NormalError otherwise.
PartialNormal make_partial_normal(const Locality& l, std::vector<int> members);

// Orbits of the relation x ~ x^f over all f with x in D(f).
std::vector<std::vector<int>> conjugacy_classes(const Locality& l);

// Least partial normal subgroup containing x: conjugation and defined
// products alternated to a fixpoint.
PartialNormal normal_closure(const Locality& l, std::span<const int> x);

// Every partial normal subgroup is the join of the closures of the classes it
// contains, so the joins of class closures are all of them. Sorted by size,
// then members. Throws EnumerationCapExceeded when |L| > cap.
std::vector<PartialNormal> enumerate_partial_normal(const Locality& l, std::size_t cap = kDefaultEnumCap);

// F_T(N), generated by c_n restricted to S_n cap T for n in N.
FusionSystem sub_fusion_of_partial_normal(const Locality& l, const PartialNormal& n);

// Set of products k t with k in K and t in T (kt is always defined).
std::vector<int> product_with_s(const Locality& l, std::span<const int> k, Mask t);

struct QuotientLocality {
    Locality loc;
    PartialGroupHom projection;  // L -> L/N
};

// Classes are the equivalence closure of f ~ nf with (n, f) in D; the class
// product, inversion, S-action and objects are read off representatives and
// must be single-valued (NormalError with a witness otherwise).
QuotientLocality quotient(const Locality& l, const PartialNormal& n, int k = 3);
// Locality laws on L/N, kernel, projection of localities, normalizer images
// over T, and the induced fusion epimorphism with its normalizer/class properties.
Report verify_quotient(const Locality& l, const PartialNormal& n, const QuotientLocality& q);

// (NS, Delta, S) with NS the set of products ns.
Restriction ns_locality(const Locality& l, const PartialNormal& n);
// O^p(N_NS(P)) = O^p(N_N(P)) for every object P.
Report verify_ns_locality(const Locality& l, const PartialNormal& n, const Restriction& ns);

// n = t n_1 ... n_k with t in T, n_i in O^p(N_N(R_i)), S_{n_i} = R_i,
// O_p(N_NS(R_i)) = R_i, N_S(R_i) Sylow in N_NS(R_i), and S_n = S_(t, n_1, ..., n_k).
struct AlperinFactor {
    int element = -1;
    Mask r = 0;
};
struct AlperinDecomposition {
    int t = -1;
    std::vector<AlperinFactor> factors;
};
class DecompositionBoundExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
inline constexpr int kDefaultAlperinBound = 6;
// Iterative deepening on k; throws DecompositionBoundExhausted past k_max.
AlperinDecomposition alperin_decompose(const Locality& l, const PartialNormal& n, int element, int k_max = kDefaultAlperinBound);
// Independent re-check of every condition on a finished decomposition.
bool check_alperin(const Locality& l, const PartialNormal& n, int element, const AlperinDecomposition& d,
                   std::string* why = nullptr);

// N+ cap L for each N+, as ids of the restriction.
std::vector<PartialNormal> phi_map(const Restriction& small, const std::vector<PartialNormal>& plus_normals);

// Intersection map between the partial normal subgroups of nested linking
// localities: well-defined, bijective, order-preserving both ways, fusion
// equality on invariant cases, and the KT product equivalence. Throws
// ExtensionError when the pair is not a nested pair of linking localities over one F.
Report verify_theorem_c(const Locality& plus, const std::vector<Mask>& delta, std::size_t cap = kDefaultEnumCap);

}  // namespace loclab

#endif
