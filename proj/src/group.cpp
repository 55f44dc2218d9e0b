#include "loclab/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace loclab {

Perm perm_identity(int degree) {
    Perm p(static_cast<std::size_t>(degree));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return r;
}

bool perm_is_bijection(const Perm& a) {
    std::vector<bool> seen(a.size(), false);
    for (int x : a) {
        if (x < 0 || static_cast<std::size_t>(x) >= a.size() || seen[static_cast<std::size_t>(x)]) return false;
        seen[static_cast<std::size_t>(x)] = true;
    }
    return true;
}

Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    Perm p = perm_identity(degree);
    std::vector<bool> used(static_cast<std::size_t>(degree), false);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            int x = c[i];
            if (x < 1 || x > degree) throw NotABijection("cycle point " + std::to_string(x) + " outside 1.." + std::to_string(degree));
            if (used[static_cast<std::size_t>(x - 1)]) throw NotABijection("point " + std::to_string(x) + " repeated in cycle notation");
            used[static_cast<std::size_t>(x - 1)] = true;
            p[static_cast<std::size_t>(x - 1)] = c[(i + 1) % c.size()] - 1;
        }
    }
    return p;
}

std::string perm_to_cycles(const Perm& a) {
    std::ostringstream out;
    std::vector<bool> seen(a.size(), false);
    bool any = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (seen[i] || a[i] == static_cast<int>(i)) continue;
        any = true;
        out << '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out << ' ';
            out << j + 1;
            first = false;
            j = static_cast<std::size_t>(a[j]);
        }
        out << ')';
    }
    if (!any) return "()";
    return out.str();
}

Group Group::generate(int degree, std::span<const Perm> generators, std::size_t cap) {
    if (degree < 1) throw GroupError("degree must be positive");
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != degree || !perm_is_bijection(g)) throw NotABijection("generator is not a bijection of 1.." + std::to_string(degree));
    }
    std::set<Perm> seen{perm_identity(degree)};
    std::vector<Perm> frontier{perm_identity(degree)};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& x : frontier) {
            for (const auto& g : generators) {
                Perm y = perm_mul(x, g);
                if (seen.insert(y).second) {
                    if (seen.size() > cap) throw GroupTooLarge("group order exceeds cap " + std::to_string(cap));
                    next.push_back(std::move(y));
                }
            }
        }
        frontier = std::move(next);
    }
    Group G;
    G.degree_ = degree;
    G.generators_.assign(generators.begin(), generators.end());
    G.elements_.assign(seen.begin(), seen.end());
    for (std::size_t i = 0; i < G.elements_.size(); ++i) G.index_.emplace(G.elements_[i], static_cast<int>(i));
    G.inverse_.resize(G.elements_.size());
    for (std::size_t i = 0; i < G.elements_.size(); ++i) G.inverse_[i] = G.index_of(perm_inverse(G.elements_[i]));
    const std::size_t n = G.elements_.size();
    if (n <= 2048) {
        G.table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                G.table_[a * n + b] = G.index_of(perm_mul(G.elements_[a], G.elements_[b]));
    }
    return G;
}

int Group::index_of(const Perm& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
}

int Group::mul(int a, int b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + static_cast<std::size_t>(b)];
    return index_of(perm_mul(element(a), element(b)));
}

int Group::element_order(int a) const {
    int k = 1;
    for (int x = a; x != identity(); x = mul(x, a)) ++k;
    return k;
}

Subgroup Group::all() const {
    Subgroup s(elements_.size());
    std::iota(s.begin(), s.end(), 0);
    return s;
}

Subgroup generated_subgroup(const Group& g, std::span<const int> gens) {
    std::set<int> seen{g.identity()};
    std::vector<int> frontier{g.identity()};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int s : gens) {
                int y = g.mul(x, s);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

bool contains(std::span<const int> sorted_set, int x) {
    return std::binary_search(sorted_set.begin(), sorted_set.end(), x);
}

bool is_subset(std::span<const int> a, std::span<const int> b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Subgroup intersect(std::span<const int> a, std::span<const int> b) {
    Subgroup r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool is_subgroup(const Group& g, std::span<const int> members) {
    if (members.empty() || !contains(members, g.identity())) return false;
    for (int a : members)
        for (int b : members)
            if (!contains(members, g.mul(a, b))) return false;
    return true;
}

Subgroup conjugate_subgroup(const Group& g, std::span<const int> h, int x) {
    Subgroup r;
    r.reserve(h.size());
    for (int y : h) r.push_back(g.conj(y, x));
    std::sort(r.begin(), r.end());
    return r;
}

namespace {

struct LatticeEntry {
    Subgroup members;
    std::vector<int> gens;
};

bool by_order_then_members(const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

std::vector<Subgroup> subgroup_lattice(const Group& g) { return subgroup_lattice(g, g.all()); }

std::vector<Subgroup> subgroup_lattice(const Group& g, std::span<const int> within) {
    std::map<Subgroup, std::vector<int>> found;
    std::vector<int> cyclic_gens;
    for (int x : within) {
        const int one[] = {x};
        Subgroup c = generated_subgroup(g, one);
        if (found.emplace(c, std::vector<int>{x}).second) cyclic_gens.push_back(x);
    }
    std::vector<LatticeEntry> frontier;
    for (const auto& [m, gens] : found) frontier.push_back({m, gens});
    while (!frontier.empty()) {
        std::vector<LatticeEntry> next;
        for (const auto& e : frontier) {
            for (int c : cyclic_gens) {
                if (contains(e.members, c)) continue;
                auto gens = e.gens;
                gens.push_back(c);
                Subgroup j = generated_subgroup(g, gens);
                if (found.emplace(j, gens).second) next.push_back({j, gens});
            }
        }
        frontier = std::move(next);
    }
    std::vector<Subgroup> out;
    out.reserve(found.size());
    for (auto& [m, gens] : found) out.push_back(m);
    std::sort(out.begin(), out.end(), by_order_then_members);
    return out;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool is_p_group(std::size_t order, int p) {
    while (order % static_cast<std::size_t>(p) == 0) order /= static_cast<std::size_t>(p);
    return order == 1;
}

int p_part(std::size_t order, int p) {
    int r = 1;
    while (order % static_cast<std::size_t>(p) == 0) {
        order /= static_cast<std::size_t>(p);
        r *= p;
    }
    return r;
}

Subgroup normalizer(const Group& g, std::span<const int> within, std::span<const int> h) {
    Subgroup r;
    for (int x : within) {
        bool ok = true;
        for (int y : h)
            if (!contains(h, g.conj(y, x))) {
                ok = false;
                break;
            }
        if (ok) r.push_back(x);
    }
    return r;
}

Subgroup centralizer(const Group& g, std::span<const int> within, std::span<const int> h) {
    Subgroup r;
    for (int x : within) {
        bool ok = true;
        for (int y : h)
            if (g.mul(x, y) != g.mul(y, x)) {
                ok = false;
                break;
            }
        if (ok) r.push_back(x);
    }
    return r;
}

Subgroup center(const Group& g, std::span<const int> within) { return centralizer(g, within, within); }

bool is_normal(const Group& g, std::span<const int> within, std::span<const int> h) {
    return normalizer(g, within, h).size() == within.size();
}

namespace {

Subgroup one_sylow(const Group& g, std::span<const int> within, int p) {
    const int target = p_part(within.size(), p);
    Subgroup P{g.identity()};
    while (static_cast<int>(P.size()) < target) {
        Subgroup N = normalizer(g, within, P);
        int pick = -1;
        for (int x : N) {
            if (contains(P, x)) continue;
            int y = g.identity();
            for (int i = 0; i < p; ++i) y = g.mul(y, x);
            if (contains(P, y)) {
                pick = x;
                break;
            }
        }
        if (pick < 0) throw GroupError("Sylow growth failed");
        std::vector<int> gens(P.begin(), P.end());
        gens.push_back(pick);
        P = generated_subgroup(g, gens);
    }
    return P;
}

}  // namespace

std::vector<Subgroup> all_sylows(const Group& g, std::span<const int> within, int p) {
    if (!is_prime(p)) throw GroupError("p must be prime");
    Subgroup P = one_sylow(g, within, p);
    std::set<Subgroup> out;
    for (int x : within) out.insert(conjugate_subgroup(g, P, x));
    return {out.begin(), out.end()};
}

Subgroup sylow(const Group& g, std::span<const int> within, int p) { return all_sylows(g, within, p).front(); }

Subgroup p_core(const Group& g, std::span<const int> within, int p) {
    auto syl = all_sylows(g, within, p);
    Subgroup r = syl.front();
    for (const auto& s : syl) r = intersect(r, s);
    return r;
}

Subgroup p_residual(const Group& g, std::span<const int> within, int p) {
    std::vector<int> gens;
    for (int x : within)
        if (g.element_order(x) % p != 0) gens.push_back(x);
    return generated_subgroup(g, gens);
}

bool is_characteristic_p(const Group& g, std::span<const int> within, int p) {
    Subgroup op = p_core(g, within, p);
    return is_subset(centralizer(g, within, op), op);
}

}  // namespace loclab
