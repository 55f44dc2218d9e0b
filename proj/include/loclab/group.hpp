#ifndef LOCLAB_GROUP_HPP
#define LOCLAB_GROUP_HPP

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loclab {

// Permutation on points 0..n-1 stored as its image tuple; the product a*b
// applies a first (right action, x^(ab) = (x^a)^b).
using Perm = std::vector<int>;

Perm perm_identity(int degree);
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
bool perm_is_bijection(const Perm& a);

// Cycle list with 1-based points, e.g. {{1,2,3},{4,5}}.
Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
std::string perm_to_cycles(const Perm& a);

class GroupError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class NotABijection : public GroupError {
  public:
    using GroupError::GroupError;
};
class GroupTooLarge : public GroupError {
  public:
    using GroupError::GroupError;
};

inline constexpr std::size_t kDefaultGroupCap = 10000;

// Sorted member indices into the parent group.
using Subgroup = std::vector<int>;

// Finite permutation group. Elements are sorted lexicographically on image
// tuples, so index 0 is always the identity.
class Group {
  public:
    Group() = default;
    static Group generate(int degree, std::span<const Perm> generators,
                          std::size_t cap = kDefaultGroupCap);

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elements_.size()); }
    int identity() const { return 0; }
    const Perm& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
    const std::vector<Perm>& elements() const { return elements_; }
    const std::vector<Perm>& generators() const { return generators_; }
    int index_of(const Perm& p) const;
    int mul(int a, int b) const;
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int conj(int x, int g) const { return mul(mul(inv(g), x), g); }  // x^g
    int element_order(int a) const;
    std::string name(int a) const { return perm_to_cycles(element(a)); }
    Subgroup all() const;

  private:
    int degree_ = 0;
    std::vector<Perm> elements_;
    std::vector<Perm> generators_;
    std::map<Perm, int> index_;
    std::vector<int> inverse_;
    std::vector<int> table_;  // cached Cayley table for small groups
};

// Subgroup generated by the given element indices.
Subgroup generated_subgroup(const Group& g, std::span<const int> gens);
bool is_subgroup(const Group& g, std::span<const int> members);
bool contains(std::span<const int> sorted_set, int x);
bool is_subset(std::span<const int> a, std::span<const int> b);  // a subset of b
Subgroup intersect(std::span<const int> a, std::span<const int> b);
Subgroup conjugate_subgroup(const Group& g, std::span<const int> h, int x);  // h^x

// All subgroups of `within` (default: the whole group), sorted by (order, members).
std::vector<Subgroup> subgroup_lattice(const Group& g);
std::vector<Subgroup> subgroup_lattice(const Group& g, std::span<const int> within);

bool is_p_group(std::size_t order, int p);
int p_part(std::size_t order, int p);
bool is_prime(int p);

// Least (by sorted member list) Sylow p-subgroup of `within`.
Subgroup sylow(const Group& g, std::span<const int> within, int p);
std::vector<Subgroup> all_sylows(const Group& g, std::span<const int> within, int p);
Subgroup normalizer(const Group& g, std::span<const int> within, std::span<const int> h);
Subgroup centralizer(const Group& g, std::span<const int> within, std::span<const int> h);
Subgroup center(const Group& g, std::span<const int> within);
Subgroup p_core(const Group& g, std::span<const int> within, int p);      // O_p
Subgroup p_residual(const Group& g, std::span<const int> within, int p);  // O^p
bool is_characteristic_p(const Group& g, std::span<const int> within, int p);
bool is_normal(const Group& g, std::span<const int> within, std::span<const int> h);

}  // namespace loclab

#endif
