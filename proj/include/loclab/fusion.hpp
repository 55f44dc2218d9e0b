#ifndef LOCLAB_FUSION_HPP
#define LOCLAB_FUSION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "loclab/group.hpp"
#include "loclab/locality.hpp"
#include "loclab/report.hpp"
#include "loclab/table_group.hpp"

namespace loclab {

// Injective homomorphism between subgroups of S on S-indices, -1 off the domain.
using SMap = std::vector<std::int8_t>;

Mask smap_domain(const SMap& f);
Mask smap_image(const SMap& f);
SMap smap_restrict(const SMap& f, Mask to);
SMap smap_inverse(const SMap& f);
SMap smap_compose(const SMap& outer, const SMap& inner);  // outer after inner
SMap smap_conjugation(const TableGroup& s, Mask domain, int g);  // x -> x^g
bool smap_is_injective_hom(const TableGroup& s, const SMap& f);

// Fusion system over a subgroup `base` of the ambient table group, stored as
// the explicit set of isomorphisms between subgroups. Hom(P, Q) is the set of
// isomorphisms from P whose image lies in Q.
class FusionSystem {
  public:
    FusionSystem() = default;
    // Smallest fusion system over `base` containing the given maps.
    static FusionSystem generate(std::shared_ptr<const TableGroup> s, Mask base, int p, const std::vector<SMap>& maps);
    // Takes the maps as the complete iso set without closing them.
    static FusionSystem from_explicit(std::shared_ptr<const TableGroup> s, Mask base, int p, const std::vector<SMap>& isos);

    const TableGroup& S() const { return *s_; }
    std::shared_ptr<const TableGroup> s_ptr() const { return s_; }
    Mask base() const { return base_; }
    int p() const { return p_; }
    const std::vector<Mask>& subgroups() const { return subgroups_; }
    const std::set<SMap>& isos_from(Mask p) const;
    std::vector<SMap> hom(Mask p, Mask q) const;
    std::vector<SMap> aut(Mask p) const { return hom(p, p); }
    std::vector<SMap> aut_base(Mask p) const;  // Aut_T(P) for the base T
    bool contains(const SMap& f) const;
    std::vector<Mask> conjugacy_class(Mask p) const;
    std::vector<std::vector<Mask>> classes() const;
    bool is_fully_normalized(Mask p) const;
    bool is_fully_centralized(Mask p) const;
    std::size_t iso_count() const;
    std::vector<SMap> all_isos() const;

    friend bool operator==(const FusionSystem& a, const FusionSystem& b);

  private:
    std::shared_ptr<const TableGroup> s_;
    Mask base_ = 0;
    int p_ = 0;
    std::vector<Mask> subgroups_;
    std::map<Mask, std::set<SMap>> isos_;
};

// F_T(G) for a group G <= M and a p-subgroup T <= S, both given by member lists;
// the ambient table group is S in sorted member order.
FusionSystem fusion_of_group(const Group& m, const Subgroup& g_members, const Subgroup& s_members, const Subgroup& t_members, int p);
// Generated by c_g|_P for P, Q in Delta and g in N_L(P, Q).
FusionSystem fusion_of_locality(const Locality& l);
std::shared_ptr<const TableGroup> share_s(const Locality& l);

// Fully automized and receptive at every fully normalized subgroup.
Report is_saturated(const FusionSystem& f);

// Aut_F(P) as a permutation group on the members of P (in mask order).
Group automizer_group(const FusionSystem& f, Mask p);

struct SubgroupClass {
    Mask subgroup = 0;
    bool fully_normalized = false;
    bool centric = false;
    bool radical = false;
    bool subcentric = false;
};
std::vector<SubgroupClass> classify_subgroups(const FusionSystem& f);
std::vector<Mask> centric_radical(const FusionSystem& f);
std::vector<Mask> centric(const FusionSystem& f);
std::vector<Mask> subcentric(const FusionSystem& f);
bool is_centric(const FusionSystem& f, Mask p);
bool is_radical(const FusionSystem& f, Mask p);

// N_F(Q) over N_T(Q).
FusionSystem normalizer_system(const FusionSystem& f, Mask q);
bool is_normal_subgroup_of_system(const FusionSystem& f, Mask r);
Mask normal_core(const FusionSystem& f);  // O_p(F)
bool is_constrained(const FusionSystem& f);

// Elements of Aut(T) with alpha Hom_F(P,Q) alpha^-1 = Hom_F(P alpha, Q alpha).
std::vector<std::vector<int>> fusion_automorphisms(const FusionSystem& f);
// {x in Z(T) : x is fixed by every morphism defined on it}.
Mask fusion_center(const FusionSystem& f);

enum class FusionMapKind { NotMorphism, Morphism, Epimorphism, Isomorphism };
std::string to_string(FusionMapKind k);
// alpha is a group homomorphism base(F) -> base(G) given on ambient indices.
FusionMapKind classify_fusion_map(const std::vector<int>& alpha, const FusionSystem& f, const FusionSystem& g);

// Closed under F-conjugacy and overgroups in the base; witness names a missing member.
bool is_f_closed(const FusionSystem& f, const std::vector<Mask>& delta, std::string* witness = nullptr);
// Delta alpha = Delta for every alpha in Aut(F).
bool is_invariant_set(const FusionSystem& f, const std::vector<Mask>& delta, std::string* witness = nullptr);

bool is_strongly_closed(const FusionSystem& f, Mask t);
bool is_subsystem(const FusionSystem& f, const FusionSystem& e);
// E over T is F-invariant: T strongly closed, E inside F, and E is stable
// under conjugation by F-isomorphisms between subgroups of T.
bool is_invariant_subsystem(const FusionSystem& f, const FusionSystem& e);

}  // namespace loclab

#endif
