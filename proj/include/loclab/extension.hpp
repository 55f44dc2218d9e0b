#ifndef LOCLAB_EXTENSION_HPP
#define LOCLAB_EXTENSION_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "loclab/fusion.hpp"
#include "loclab/locality.hpp"
#include "loclab/partial_group.hpp"
#include "loclab/report.hpp"

namespace loclab {

inline constexpr std::size_t kDefaultEnumCap = 200;

class ExtensionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class EnumerationCapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Maps between localities are carrier-id vectors; -1 marks an unassigned id.
using CarrierMap = std::vector<int>;

// Every map src -> tgt extending `partial` that preserves inverses and the
// products of all pairs in D (so D pairs land in D~). Exhaustive backtracking
// with forced propagation; the returned maps still need classify_map for
// longer words. Throws EnumerationCapExceeded past `cap` solutions.
std::vector<CarrierMap> search_homomorphisms(const PartialGroup& src, const PartialGroup& tgt, CarrierMap partial,
                                             bool injective, std::size_t cap = kDefaultEnumCap);

// L+|_Delta inside L+ with hom data on the small side.
struct ExtensionInput {
    const Locality* plus = nullptr;
    std::vector<Mask> delta;
    const Locality* target = nullptr;
    CarrierMap alpha;                        // plus ids -> target ids, defined exactly on L
    std::vector<Mask> reps;                  // one fully normalized member per class of Delta+ \ Delta
    std::map<Mask, CarrierMap> alpha_q;      // plus ids -> target ids on N_{L+}(Q)
};

struct ExtensionResult {
    CarrierMap gamma;
    PartialGroupHom hom;
    std::size_t competitors = 0;  // homomorphisms agreeing on L and every N_{L+}(Q)
    bool unique = false;
};

// Least fully normalized member of each F-class in `members`.
std::vector<Mask> class_representatives(const FusionSystem& f, const std::vector<Mask>& members);

// The unique homomorphism on L+ restricting to alpha on L and to alpha_Q on N_{L+}(Q).
// `reverse_search` picks the greatest rather than the least conjugating element.
ExtensionResult extend_hom(const ExtensionInput& in, int k = 3, bool reverse_search = false);

// Layer-by-layer extension from L = L+|_Delta for linking localities over one fusion system.
ExtensionResult extend_hom_linking(const Locality& plus, const std::vector<Mask>& delta, const Locality& target,
                                   const CarrierMap& alpha, int k = 3);

// Saturated fusion, characteristic-p object normalizers, and F^cr inside Delta.
bool is_linking_locality(const Locality& l, std::string* why = nullptr);

// Isomorphisms (L, Delta, S) -> (L~, Delta~, S~): bijections with S alpha = S~,
// Delta alpha = Delta~, S~_{f alpha} = S_f alpha, and products preserved on D.
std::vector<CarrierMap> enumerate_iso(const Locality& a, const Locality& b, std::size_t cap = kDefaultEnumCap);
std::vector<CarrierMap> enumerate_aut(const Locality& l, std::size_t cap = kDefaultEnumCap);
// Same as the conditions enumerate_iso imposes, checked on a finished map.
bool is_locality_isomorphism(const Locality& a, const Locality& b, const CarrierMap& alpha, std::string* why = nullptr);
bool is_rigid(const Locality& l, const CarrierMap& alpha);
CarrierMap compose_maps(const CarrierMap& outer, const CarrierMap& inner);  // outer after inner
Mask image_mask(const Locality& a, const Locality& b, const CarrierMap& alpha, Mask p);

// Restriction Iso(L+, L~+) -> Iso(L, L~) on the subscript sets, checked for
// well-definedness and bijectivity; with a == b also for multiplicativity.
Report verify_iso_restriction(const Locality& plus, const std::vector<Mask>& delta, const Locality& tplus,
                              const std::vector<Mask>& tdelta, std::size_t cap = kDefaultEnumCap);
Report verify_aut_restriction(const Locality& plus, const std::vector<Mask>& delta, std::size_t cap = kDefaultEnumCap);

}  // namespace loclab

#endif
