#ifndef LOCLAB_TABLE_GROUP_HPP
#define LOCLAB_TABLE_GROUP_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loclab/group.hpp"

namespace loclab {

// Subset of a group of order at most 64, bit i set iff element i belongs.
using Mask = std::uint64_t;

inline int mask_size(Mask m) { return std::popcount(m); }
inline bool mask_has(Mask m, int i) { return (m >> i) & 1U; }
inline Mask mask_bit(int i) { return Mask{1} << i; }
inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }
std::vector<int> mask_members(Mask m);

inline constexpr int kMaxTableGroupOrder = 64;

// Small group given by its Cayley table; used for S and its relatives.
class TableGroup {
  public:
    TableGroup() = default;
    TableGroup(int order, std::vector<int> table, std::vector<std::string> names);
    // Element i is members[i]; names come from cycle notation.
    static TableGroup from_subgroup(const Group& g, std::span<const int> members);

    int order() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a * n_ + b)]; }
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int conj(int x, int g) const { return mul(mul(inv(g), x), g); }  // x^g
    int element_order(int a) const;
    const std::string& name(int a) const { return names_[static_cast<std::size_t>(a)]; }
    const std::vector<int>& table() const { return table_; }

    Mask all() const { return n_ == 64 ? ~Mask{0} : (mask_bit(n_) - 1); }
    Mask generated(Mask gens) const;
    bool is_subgroup(Mask m) const;
    Mask conj(Mask h, int g) const;  // h^g
    Mask normalizer(Mask within, Mask h) const;
    Mask centralizer(Mask within, Mask h) const;
    Mask center() const { return centralizer(all(), all()); }
    bool is_normal(Mask within, Mask h) const { return normalizer(within, h) == within; }
    // Every subgroup of the whole group sorted by (order, mask).
    const std::vector<Mask>& subgroups() const { return subgroups_; }
    std::vector<Mask> subgroups_of(Mask within) const;
    std::string describe(Mask m) const;  // generator list in cycle notation

    // Automorphisms as image vectors.
    std::vector<std::vector<int>> automorphisms() const;
    std::vector<int> small_generating_set(Mask m) const;

  private:
    int n_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
    std::vector<Mask> subgroups_;
};

bool operator==(const TableGroup& a, const TableGroup& b);
// All isomorphisms a -> b as image vectors, sorted.
std::vector<std::vector<int>> isomorphisms(const TableGroup& a, const TableGroup& b);

}  // namespace loclab

#endif
