#include "loclab/table_group.hpp"

#include <algorithm>
#include <set>

namespace loclab {

std::vector<int> mask_members(Mask m) {
    std::vector<int> r;
    while (m) {
        r.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return r;
}

TableGroup::TableGroup(int order, std::vector<int> table, std::vector<std::string> names)
    : n_(order), table_(std::move(table)), names_(std::move(names)) {
    if (n_ < 1 || n_ > kMaxTableGroupOrder) throw GroupError("table group order must lie in 1..64");
    if (static_cast<int>(table_.size()) != n_ * n_) throw GroupError("table size mismatch");
    identity_ = -1;
    for (int e = 0; e < n_ && identity_ < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n_; ++x)
            if (mul(e, x) != x || mul(x, e) != x) ok = false;
        if (ok) identity_ = e;
    }
    if (identity_ < 0) throw GroupError("table has no identity");
    inverse_.assign(static_cast<std::size_t>(n_), -1);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
    if (names_.size() != static_cast<std::size_t>(n_)) {
        names_.clear();
        for (int i = 0; i < n_; ++i) names_.push_back("e" + std::to_string(i));
    }
    std::set<Mask> found;
    std::vector<Mask> cyclic;
    for (int x = 0; x < n_; ++x) {
        Mask c = generated(mask_bit(x));
        if (found.insert(c).second) cyclic.push_back(c);
    }
    std::vector<Mask> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
        std::vector<Mask> next;
        for (Mask h : frontier)
            for (Mask c : cyclic) {
                if (mask_subset(c, h)) continue;
                Mask j = generated(h | c);
                if (found.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }
    subgroups_.assign(found.begin(), found.end());
    std::sort(subgroups_.begin(), subgroups_.end(), [](Mask a, Mask b) {
        if (mask_size(a) != mask_size(b)) return mask_size(a) < mask_size(b);
        return a < b;
    });
}

TableGroup TableGroup::from_subgroup(const Group& g, std::span<const int> members) {
    const int n = static_cast<int>(members.size());
    if (n > kMaxTableGroupOrder) throw GroupError("subgroup too large for a table group");
    std::vector<int> table(static_cast<std::size_t>(n * n));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back(g.name(members[static_cast<std::size_t>(i)]));
        for (int j = 0; j < n; ++j) {
            int prod = g.mul(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
            auto it = std::lower_bound(members.begin(), members.end(), prod);
            if (it == members.end() || *it != prod) throw GroupError("members do not form a subgroup");
            table[static_cast<std::size_t>(i * n + j)] = static_cast<int>(it - members.begin());
        }
    }
    return TableGroup(n, std::move(table), std::move(names));
}

int TableGroup::element_order(int a) const {
    int k = 1;
    for (int x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
}

Mask TableGroup::generated(Mask gens) const {
    Mask cur = mask_bit(identity_);
    Mask frontier = cur;
    auto g = mask_members(gens);
    while (frontier) {
        Mask next = 0;
        for (int x : mask_members(frontier))
            for (int s : g) {
                int y = mul(x, s);
                if (!mask_has(cur, y)) {
                    cur |= mask_bit(y);
                    next |= mask_bit(y);
                }
            }
        frontier = next;
    }
    return cur;
}

bool TableGroup::is_subgroup(Mask m) const {
    if (!mask_has(m, identity_)) return false;
    auto mem = mask_members(m);
    for (int a : mem)
        for (int b : mem)
            if (!mask_has(m, mul(a, b))) return false;
    return true;
}

Mask TableGroup::conj(Mask h, int g) const {
    Mask r = 0;
    for (int x : mask_members(h)) r |= mask_bit(conj(x, g));
    return r;
}

Mask TableGroup::normalizer(Mask within, Mask h) const {
    Mask r = 0;
    for (int g : mask_members(within))
        if (conj(h, g) == h) r |= mask_bit(g);
    return r;
}

Mask TableGroup::centralizer(Mask within, Mask h) const {
    Mask r = 0;
    auto hm = mask_members(h);
    for (int g : mask_members(within)) {
        bool ok = true;
        for (int x : hm)
            if (mul(g, x) != mul(x, g)) {
                ok = false;
                break;
            }
        if (ok) r |= mask_bit(g);
    }
    return r;
}

std::vector<Mask> TableGroup::subgroups_of(Mask within) const {
    std::vector<Mask> r;
    for (Mask s : subgroups_)
        if (mask_subset(s, within)) r.push_back(s);
    return r;
}

std::vector<int> TableGroup::small_generating_set(Mask m) const {
    std::vector<int> gens;
    Mask cur = mask_bit(identity_);
    while (cur != m) {
        int best = -1;
        Mask best_mask = cur;
        for (int x : mask_members(m & ~cur)) {
            Mask c = generated(cur | mask_bit(x));
            if (mask_size(c) > mask_size(best_mask)) {
                best = x;
                best_mask = c;
            }
        }
        gens.push_back(best);
        cur = best_mask;
    }
    return gens;
}

std::string TableGroup::describe(Mask m) const {
    auto gens = small_generating_set(m);
    if (gens.empty()) return "<>";
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) s += ", ";
        s += name(gens[i]);
    }
    return s + ">";
}

std::vector<std::vector<int>> TableGroup::automorphisms() const { return isomorphisms(*this, *this); }

std::vector<std::vector<int>> isomorphisms(const TableGroup& a, const TableGroup& b) {
    if (a.order() != b.order()) return {};
    const int n = a.order();
    auto gens = a.small_generating_set(a.all());
    if (gens.empty()) return {{b.identity()}};
    std::vector<std::vector<int>> out;
    std::vector<int> choice(gens.size(), 0);
    // Odometer over generator images of matching order.
    std::vector<std::vector<int>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (int y = 0; y < n; ++y)
            if (b.element_order(y) == a.element_order(gens[i])) candidates[i].push_back(y);
    for (const auto& c : candidates)
        if (c.empty()) return {};
    while (true) {
        std::vector<int> img(static_cast<std::size_t>(n), -1);
        img[static_cast<std::size_t>(a.identity())] = b.identity();
        std::vector<int> frontier{a.identity()};
        bool ok = true;
        // Every Cayley-graph edge is checked once, so consistency means a homomorphism.
        while (!frontier.empty() && ok) {
            std::vector<int> next;
            for (int x : frontier) {
                for (std::size_t i = 0; i < gens.size() && ok; ++i) {
                    int y = a.mul(x, gens[i]);
                    int iy = b.mul(img[static_cast<std::size_t>(x)], candidates[i][static_cast<std::size_t>(choice[i])]);
                    if (img[static_cast<std::size_t>(y)] < 0) {
                        img[static_cast<std::size_t>(y)] = iy;
                        next.push_back(y);
                    } else if (img[static_cast<std::size_t>(y)] != iy) {
                        ok = false;
                    }
                }
            }
            frontier = std::move(next);
        }
        if (ok) {
            std::vector<bool> hit(static_cast<std::size_t>(n), false);
            for (int v : img) {
                if (v < 0 || hit[static_cast<std::size_t>(v)]) {
                    ok = false;
                    break;
                }
                hit[static_cast<std::size_t>(v)] = true;
            }
        }
        if (ok) out.push_back(img);
        std::size_t k = 0;
        while (k < gens.size()) {
            if (++choice[k] < static_cast<int>(candidates[k].size())) break;
            choice[k] = 0;
            ++k;
        }
        if (k == gens.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool operator==(const TableGroup& a, const TableGroup& b) { return a.order() == b.order() && a.table() == b.table(); }

}  // namespace loclab
