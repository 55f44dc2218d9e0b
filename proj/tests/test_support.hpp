#ifndef LOCLAB_TEST_SUPPORT_HPP
#define LOCLAB_TEST_SUPPORT_HPP

#include <algorithm>
#include <vector>

#include "loclab/group.hpp"
#include "loclab/locality.hpp"
#include "loclab/table_group.hpp"

namespace loclab::testing {

using Cycles = std::vector<std::vector<int>>;

inline Group group(int degree, const std::vector<Cycles>& gens) {
    std::vector<Perm> ps;
    for (const auto& c : gens) ps.push_back(perm_from_cycles(degree, c));
    return Group::generate(degree, ps);
}

inline Group symmetric(int n) {
    std::vector<int> cyc;
    for (int i = 1; i <= n; ++i) cyc.push_back(i);
    return group(n, {{cyc}, {{1, 2}}});
}

inline Subgroup members(const Group& g, const std::vector<Cycles>& gens) {
    std::vector<int> idx;
    for (const auto& c : gens) idx.push_back(g.index_of(perm_from_cycles(g.degree(), c)));
    return generated_subgroup(g, idx);
}

inline int element(const Group& g, const Cycles& c) { return g.index_of(perm_from_cycles(g.degree(), c)); }

// Mask of a subgroup given by ambient members, relative to the sorted members of S.
inline Mask s_mask(const Subgroup& s, const Subgroup& members) {
    Mask m = 0;
    for (int x : members) m |= mask_bit(static_cast<int>(std::lower_bound(s.begin(), s.end(), x) - s.begin()));
    return m;
}

inline bool is_cyclic(const TableGroup& t, Mask m) {
    for (int x : mask_members(m))
        if (t.generated(mask_bit(x)) == m) return true;
    return false;
}

// S4 at p = 2 with S = <(1 2 3 4), (1 3)>.
struct S4Setup {
    Group m = symmetric(4);
    Subgroup s = members(m, {{{1, 2, 3, 4}}, {{1, 3}}});
    Subgroup v4 = members(m, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    Subgroup v4b = members(m, {{{1, 3}}, {{2, 4}}});
    Subgroup c4 = members(m, {{{1, 2, 3, 4}}});
    std::vector<Subgroup> order_at_least(std::size_t k) const {
        std::vector<Subgroup> r;
        for (const auto& h : subgroup_lattice(m, s))
            if (h.size() >= k) r.push_back(h);
        return r;
    }
    Locality plus() const { return locality_from_group(m, 2, s, order_at_least(4)); }
    Locality crit() const { return locality_from_group(m, 2, s, {v4, s}); }
};

// GL3(2) at p = 2 with its least Sylow subgroup.
struct Gl32Setup {
    Group m = group(7, {{{1, 2, 3, 4, 5, 6, 7}}, {{2, 3}, {4, 7}}});
    Subgroup s = sylow(m, m.all(), 2);
    std::vector<Subgroup> nontrivial() const {
        std::vector<Subgroup> r;
        for (const auto& h : subgroup_lattice(m, s))
            if (h.size() > 1) r.push_back(h);
        return r;
    }
};

// GL3(2) x C2 with objects the subgroups of order >= 4 containing the central
// involution; its partial normal subgroups are not just 1 and L.
struct Gl32C2Setup {
    Group m = group(9, {{{1, 2, 3, 4, 5, 6, 7}}, {{2, 3}, {4, 7}}, {{8, 9}}});
    Subgroup s = sylow(m, m.all(), 2);
    std::vector<Subgroup> objects() const {
        const int z = element(m, {{8, 9}});
        std::vector<Subgroup> r;
        for (const auto& h : subgroup_lattice(m, s))
            if (h.size() >= 4 && std::binary_search(h.begin(), h.end(), z)) r.push_back(h);
        return r;
    }
};

}  // namespace loclab::testing

#endif
