#ifndef LOCLAB_LOCALITY_HPP
#define LOCLAB_LOCALITY_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "loclab/group.hpp"
#include "loclab/partial_group.hpp"
#include "loclab/report.hpp"
#include "loclab/table_group.hpp"

namespace loclab {

// Conjugation of S by every element: image(f, x) is the S-index of x^f when
// x lies in S_f, otherwise -1.
class SAction {
  public:
    SAction(int carrier, int s_order)
        : s_(s_order), img_(static_cast<std::size_t>(carrier) * static_cast<std::size_t>(s_order), -1),
          domain_(static_cast<std::size_t>(carrier), 0) {}
    int s_order() const { return s_; }
    int image(int f, int x) const { return img_[idx(f, x)]; }
    void set(int f, int x, int y) {
        img_[idx(f, x)] = static_cast<std::int8_t>(y);
        Mask& d = domain_[static_cast<std::size_t>(f)];
        d = y >= 0 ? (d | mask_bit(x)) : (d & ~mask_bit(x));
    }
    Mask domain(int f) const { return domain_[static_cast<std::size_t>(f)]; }
    Mask image(int f, Mask p) const;  // p must lie in domain(f)

  private:
    std::size_t idx(int f, int x) const { return static_cast<std::size_t>(f) * static_cast<std::size_t>(s_) + static_cast<std::size_t>(x); }
    int s_;
    std::vector<std::int8_t> img_;
    std::vector<Mask> domain_;  // S_f, kept in step with img_
};

// D_Delta: words admitting a chain P_0 -> P_1 -> ... of objects.
class ChainDomain final : public DomainOracle {
  public:
    ChainDomain(std::shared_ptr<const SAction> action, std::vector<Mask> objects);
    bool contains(std::span<const int> w) const override;
    Mask s_word(std::span<const int> w) const;
    std::optional<std::vector<Mask>> chain(std::span<const int> w) const;
    bool is_object(Mask m) const;
    // With objects closed under overgroups, a chain exists iff one starts at S_w.
    void set_overgroup_closed(bool closed) { overgroup_closed_ = closed; }

  private:
    bool chain_from(Mask start, std::span<const int> w, std::vector<Mask>* out) const;
    std::shared_ptr<const SAction> action_;
    std::vector<Mask> objects_;
    bool overgroup_closed_ = false;
};

// Locality (L, Delta, S). Elements of S are addressed either by carrier id or
// by S-index; masks always use S-indices.
class Locality {
  public:
    Locality() = default;
    Locality(std::vector<int> inverse, int identity, std::vector<int> table, std::shared_ptr<const SAction> action,
             int p, std::vector<int> s_elements, std::vector<Mask> objects, std::vector<std::string> names);

    const PartialGroup& pg() const { return pg_; }
    int size() const { return pg_.size(); }
    int p() const { return p_; }
    const TableGroup& S() const { return s_group_; }
    const std::vector<int>& s_elements() const { return s_elements_; }
    int s_elem(int s_index) const { return s_elements_[static_cast<std::size_t>(s_index)]; }
    int s_index(int f) const { return s_index_[static_cast<std::size_t>(f)]; }  // -1 off S
    bool in_s(int f) const { return s_index(f) >= 0; }
    const std::vector<Mask>& objects() const { return objects_; }
    bool is_object(Mask m) const { return domain_->is_object(m); }
    const SAction& action() const { return *action_; }
    std::shared_ptr<const SAction> action_ptr() const { return action_; }
    const ChainDomain& chain_domain() const { return *domain_; }

    Mask s_f(int f) const { return action_->domain(f); }
    Mask s_word(std::span<const int> w) const { return domain_->s_word(w); }
    Mask act(int f, Mask p) const { return action_->image(f, p); }  // P^f
    std::vector<int> elements_of(Mask m) const;
    Mask mask_of(std::span<const int> elements) const;  // elements must lie in S
    std::string describe(Mask m) const { return s_group_.describe(m); }

    // Optional provenance of every element (e.g. index in an ambient group).
    std::vector<int> labels;

  private:
    PartialGroup pg_;
    int p_ = 0;
    std::vector<int> s_elements_;
    std::vector<int> s_index_;
    TableGroup s_group_;
    std::vector<Mask> objects_;
    std::shared_ptr<const SAction> action_;
    std::shared_ptr<const ChainDomain> domain_;
};

class LocalityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// L_Gamma(M) = {g : S cap S^g in Gamma} with S the given Sylow subgroup.
Locality locality_from_group(const Group& m, int p, const Subgroup& sylow_s, const std::vector<Subgroup>& gamma);
// The three descriptions of the carrier of L_Gamma(M) agree.
Report verify_lgamma_carrier(const Group& m, const Subgroup& sylow_s, const std::vector<Subgroup>& gamma);

struct Restriction {
    Locality loc;
    std::vector<int> to_parent;   // carrier id in the restriction -> parent id
    std::vector<int> from_parent; // parent id -> id or -1
};
// L|_Delta = {f : S_f in Delta} with domain D_Delta.
Restriction restrict(const Locality& parent, const std::vector<Mask>& delta);
// A sorted member set containing S, closed under inversion and under products
// of D_delta pairs, with the parent's S-action.
Restriction sub_locality(const Locality& parent, std::span<const int> members, const std::vector<Mask>& delta);

// Copy with carrier ids permuted: new id of f is perm[f].
Locality relabel(const Locality& l, std::span<const int> perm);

// Definitional S_f = {x in S : x in D(f), x^f in S} using D and the product only.
Mask s_f_by_definition(const Locality& l, int f);
// Chain P_0 = S_w, P_i = P_{i-1}^{f_i}, or nullopt when w is not in D.
std::optional<std::vector<Mask>> word_domain_check(const Locality& l, std::span<const int> w);
// N_L(P, Q) = {g : P subset D(g), P^g subset Q}.
std::vector<int> n_l(const Locality& l, Mask p, Mask q);
std::vector<int> normalizer(const Locality& l, Mask p);
// The group N_L(P) as a permutation group by right multiplication.
struct SubgroupView {
    Group group;
    std::vector<int> to_carrier;    // group index -> carrier id
    std::vector<int> from_carrier;  // carrier id -> group index or -1
};
SubgroupView subgroup_view(const PartialGroup& pg, std::span<const int> members);

// Locality axioms and the elementary conjugation laws, exhaustive on the
// carrier and on D up to length k.
Report validate_locality(const Locality& l, int k = 3);

}  // namespace loclab

#endif
