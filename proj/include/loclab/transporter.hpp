#ifndef LOCLAB_TRANSPORTER_HPP
#define LOCLAB_TRANSPORTER_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "loclab/extension.hpp"
#include "loclab/fusion.hpp"
#include "loclab/group.hpp"
#include "loclab/locality.hpp"
#include "loclab/report.hpp"
#include "loclab/table_group.hpp"

// Transporter systems are written in left-hand notation throughout: a
// morphism P -> Q acts as x -> pi(phi)(x), composition psi o phi applies phi
// first, and conjugation by g means x -> g x g^-1.

namespace loclab {

class TransporterError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Objects are indices into objects(); the label records where a morphism came
// from (a carrier id of a locality or an element index of a group).
struct Morphism {
    int src = -1;
    int dst = -1;
    int label = -1;
};

class TransporterSystem {
  public:
    // compose_fn(psi, phi) for psi: Q -> R and phi: P -> Q returns the id of
    // psi o phi; delta_fn(P, Q, x) returns the id of delta_{P,Q}(x) or -1 when
    // x P x^-1 is not in Q. Morphisms with equal (src, dst) must be sorted by label.
    TransporterSystem(std::shared_ptr<const TableGroup> s, int p, std::vector<Mask> objects, std::vector<Morphism> morphisms,
                      const std::function<int(int, int)>& compose_fn, const std::function<int(int, int, int)>& delta_fn,
                      std::vector<SMap> pi, FusionSystem fusion, std::vector<std::string> label_names);

    const TableGroup& S() const { return *s_; }
    std::shared_ptr<const TableGroup> s_ptr() const { return s_; }
    int p() const { return p_; }
    const FusionSystem& fusion() const { return fusion_; }
    const std::vector<Mask>& objects() const { return objects_; }
    int object_count() const { return static_cast<int>(objects_.size()); }
    int object_index(Mask m) const;  // -1 when m is not an object
    Mask object(int i) const { return objects_[static_cast<std::size_t>(i)]; }
    int s_object() const { return object_index(s_->all()); }

    int morphism_count() const { return static_cast<int>(morphisms_.size()); }
    const Morphism& morphism(int m) const { return morphisms_[static_cast<std::size_t>(m)]; }
    const std::vector<int>& hom(int p, int q) const { return hom_[static_cast<std::size_t>(p * object_count() + q)]; }
    const std::vector<int>& aut(int p) const { return hom(p, p); }
    const std::vector<int>& into(int q) const { return into_[static_cast<std::size_t>(q)]; }
    const std::vector<int>& out_of(int p) const { return out_of_[static_cast<std::size_t>(p)]; }
    int find(int p, int q, int label) const;  // -1 when absent

    // psi o phi, or -1 when dst(phi) != src(psi).
    int compose(int psi, int phi) const;
    int delta(int p, int q, int x) const { return delta_[delta_index(p, q, x)]; }
    int identity(int p) const { return delta(p, p, s_->identity()); }
    int inclusion(int p, int q) const { return delta(p, q, s_->identity()); }
    int delta_preimage(int m) const { return delta_of_[static_cast<std::size_t>(m)]; }  // x with m = delta(x), or -1
    const SMap& pi(int m) const { return pi_[static_cast<std::size_t>(m)]; }
    bool is_iso(int m) const;
    int inverse(int m) const { return inverse_[static_cast<std::size_t>(m)]; }  // -1 off isomorphisms
    // phi|_{P0,Q0}: the unique morphism with incl o phi0 = phi o incl, or -1.
    int restriction(int phi, int p0, int q0) const;
    const std::string& label_name(int m) const;
    const std::vector<std::string>& label_names() const { return label_names_; }
    std::string describe(int m) const;

  private:
    int compose_unchecked(int psi, int phi) const;
    std::size_t delta_index(int p, int q, int x) const {
        return (static_cast<std::size_t>(p) * objects_.size() + static_cast<std::size_t>(q)) * static_cast<std::size_t>(s_->order()) +
               static_cast<std::size_t>(x);
    }
    std::shared_ptr<const TableGroup> s_;
    int p_ = 0;
    FusionSystem fusion_;
    std::vector<Mask> objects_;
    std::unordered_map<Mask, int> object_index_;
    std::vector<Morphism> morphisms_;
    std::vector<std::vector<int>> hom_, into_, out_of_;
    std::vector<int> pos_in_into_;              // position of phi in into(dst phi)
    std::vector<std::vector<int>> comp_;        // comp_[psi][pos_in_into_[phi]]
    std::vector<int> delta_, delta_of_, inverse_;
    std::vector<SMap> pi_;
    std::unordered_map<std::uint64_t, int> post_inclusion_;  // (Q0, incl o phi0) -> phi0
    std::vector<std::string> label_names_;
};

// T_Delta(L): morphisms (P, Q, g) with P in S_{g^-1} and g P g^-1 <= Q. Labels are carrier ids.
TransporterSystem transporter_of_locality(const Locality& l);
// T_Delta(G) over the fusion system F_S(G): morphisms (P, Q, g) with g P g^-1 <= Q.
TransporterSystem transporter_of_group(const Group& m, int p, const Subgroup& s, const std::vector<Subgroup>& delta);

// Category laws, functoriality of delta and pi, and the transporter axioms
// (A1), (A2), (B), (C), (I), (II); every morphism monic and epic.
Report validate_transporter(const TransporterSystem& t);

struct SubTransporter {
    TransporterSystem t;
    std::vector<int> to_parent;  // morphism id -> parent morphism id
};
// Full subcategory on an F-closed Delta; throws TransporterError otherwise.
SubTransporter full_subcategory(const TransporterSystem& t, const std::vector<Mask>& delta);

// L_Delta(T): isomorphisms modulo the equivalence generated by restriction.
// Classes are ordered by the label of their maximal member.
struct TransporterLocality {
    Locality loc;
    std::vector<int> class_of;        // morphism id -> carrier id, -1 off isomorphisms
    std::vector<int> representative;  // carrier id -> maximal isomorphism in the class
};
TransporterLocality locality_of_transporter(const TransporterSystem& t);
// Locality laws and the dictionary: pi(phi) = c_{f^-1} on P, Aut_T(P) = N_L(P)
// via phi -> [phi], and F_S(L) generated by the Delta-morphisms of F.
Report verify_locality_of_transporter(const TransporterSystem& t, const TransporterLocality& tl, int k = 3);

// iota: L_Delta(T+|_Delta) -> L_{Delta+}(T+)|_Delta, [phi] -> [phi]_+, in the ids of `plus_on_delta`.
CarrierMap iota_map(const SubTransporter& sub, const TransporterLocality& small, const TransporterLocality& plus,
                    const Restriction& plus_on_delta);

struct FunctorFlags {
    bool functor = false;
    bool equivalence = false;
    bool isotypical = false;
    bool inclusion_preserving = false;
    bool rigid = false;
    std::string witness;
    bool isomorphism() const { return functor && equivalence && isotypical && inclusion_preserving; }
};
struct CategoryFunctor {
    std::vector<int> objects;    // object index -> object index
    std::vector<int> morphisms;  // morphism id -> morphism id
    FunctorFlags flags;
    friend bool operator==(const CategoryFunctor& a, const CategoryFunctor& b) {
        return a.objects == b.objects && a.morphisms == b.morphisms;
    }
    friend bool operator<(const CategoryFunctor& a, const CategoryFunctor& b) {
        return a.objects != b.objects ? a.objects < b.objects : a.morphisms < b.morphisms;
    }
};
FunctorFlags classify_functor(const CategoryFunctor& a, const TransporterSystem& t, const TransporterSystem& u);
CategoryFunctor identity_functor(const TransporterSystem& t);
CategoryFunctor compose_functors(const CategoryFunctor& outer, const CategoryFunctor& inner);

// Lambda(alpha): [phi] -> [alpha(phi)]. Throws TransporterError unless alpha is
// an isomorphism, the map is well-defined and a locality isomorphism.
CarrierMap lambda_map(const CategoryFunctor& a, const TransporterSystem& t, const TransporterSystem& u,
                      const TransporterLocality& lt, const TransporterLocality& lu);
// Inverse of Lambda: the isomorphism of transporter systems inducing beta.
CategoryFunctor functor_of_locality_iso(const CarrierMap& beta, const TransporterSystem& t, const TransporterSystem& u,
                                        const TransporterLocality& lt, const TransporterLocality& lu);
// For every pair of subgroups P <= S, Q <= S~: alpha_S(delta_S(P)) = delta~(Q)
// iff Lambda(alpha) maps P onto Q.
bool subscripts_correspond(const CategoryFunctor& a, const TransporterSystem& t, const TransporterSystem& u,
                           const TransporterLocality& lt, const TransporterLocality& lu, const CarrierMap& lambda,
                           std::string* why = nullptr);

inline constexpr int kDirectFunctorObjectCap = 3;
inline constexpr int kDirectFunctorMorphismCap = 200;
// Backtracking over morphism maps; throws EnumerationCapExceeded past the
// object or morphism caps.
std::vector<CategoryFunctor> enumerate_aut_direct(const TransporterSystem& t);
// Aut(T) through Lambda from the automorphisms of L_Delta(T), sorted.
std::vector<CategoryFunctor> aut_transporter(const TransporterSystem& t, const TransporterLocality& lt,
                                             std::size_t cap = kDefaultEnumCap);

// c_gamma for gamma in Aut_T(S).
CategoryFunctor conjugation_functor(const TransporterSystem& t, int gamma);
std::vector<CategoryFunctor> inner_auts(const TransporterSystem& t);

// F^cr inside the objects and every Aut_T(P) of characteristic p.
bool is_linking_system(const TransporterSystem& t, std::string* why = nullptr);
// Aut_T(P) as a permutation group; to_morphism maps group indices back.
struct AutGroupView {
    Group group;
    std::vector<int> to_morphism;
    std::vector<int> from_morphism(const TransporterSystem& t, std::span<const int> ids) const;
};
AutGroupView aut_group(const TransporterSystem& t, int p);

// ker(pi_S) = delta_S(Z(S)); O_p(Aut_T(P)) = delta_P(P) iff P in F^cr; every
// morphism a composite of at most `max_factors` restrictions of automorphisms
// of fully normalized members of F^cr.
Report verify_linking_elementary(const TransporterSystem& t, int max_factors = 4);

struct OutTyp {
    std::size_t aut_order = 0;
    std::size_t inner_order = 0;
    std::size_t out_order = 0;
    std::size_t aut_s_order = 0;
    std::size_t center_order = 0;
};
// Exactness of Z(F) -> Aut_T(S) -> Aut(T) -> Out_typ(T) -> 1, with Out_typ
// the cosets of the inner automorphisms. Throws TransporterError when T is not linking.
Report verify_exact_sequence(const TransporterSystem& t, const TransporterLocality& lt, OutTyp* out = nullptr,
                             std::size_t cap = kDefaultEnumCap);
OutTyp out_typ(const TransporterSystem& t, const TransporterLocality& lt, std::size_t cap = kDefaultEnumCap);

}  // namespace loclab

#endif
