#include "loclab/normal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace loclab {

namespace {

Mask t_mask(const Locality& l, std::span<const int> members) {
    Mask t = 0;
    for (int f : members)
        if (l.in_s(f)) t |= mask_bit(l.s_index(f));
    return t;
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> intersect_sorted(std::span<const int> a, std::span<const int> b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool subset_sorted(std::span<const int> a, std::span<const int> b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Closure of `seed` under inversion, defined conjugation and defined products.
std::vector<int> close_normal(const Locality& l, std::span<const int> seed) {
    const PartialGroup& pg = l.pg();
    const int n = pg.size();
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    std::vector<int> members, work;
    auto add = [&](int x) {
        if (!in[static_cast<std::size_t>(x)]) {
            in[static_cast<std::size_t>(x)] = 1;
            members.push_back(x);
            work.push_back(x);
        }
    };
    add(pg.identity());
    for (int x : seed) add(x);
    while (!work.empty()) {
        const int x = work.back();
        work.pop_back();
        add(pg.inverse(x));
        for (int f = 0; f < n; ++f)
            if (auto c = pg.conjugate(x, f)) add(*c);
        const std::size_t count = members.size();
        for (std::size_t i = 0; i < count; ++i) {
            const int y = members[i];
            if (int a = pg.mul_or_neg(x, y); a >= 0) add(a);
            if (int b = pg.mul_or_neg(y, x); b >= 0) add(b);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

// Carrier ids of a subgroup of the group N_L(P) cap X, through a permutation view.
std::vector<int> residual_or_core(const Locality& l, std::span<const int> group_members, bool residual) {
    SubgroupView v = subgroup_view(l.pg(), group_members);
    const Subgroup h = residual ? p_residual(v.group, v.group.all(), l.p()) : p_core(v.group, v.group.all(), l.p());
    std::vector<int> r;
    for (int i : h) r.push_back(v.to_carrier[static_cast<std::size_t>(i)]);
    std::sort(r.begin(), r.end());
    return r;
}

Mask mask_image(const std::vector<int>& alpha_s, Mask p) {
    Mask r = 0;
    for (int x : mask_members(p)) r |= mask_bit(alpha_s[static_cast<std::size_t>(x)]);
    return r;
}

// F_{base}(G) for a subgroup G of L given by carrier ids and a p-subgroup base <= S.
FusionSystem fusion_of_members(const Locality& l, std::span<const int> members, Mask base) {
    const TableGroup& s = l.S();
    std::vector<SMap> isos;
    for (Mask q : s.subgroups_of(base))
        for (int g : members) {
            if (!mask_subset(q, l.s_f(g)) || !mask_subset(l.act(g, q), base)) continue;
            SMap m(static_cast<std::size_t>(s.order()), -1);
            for (int x : mask_members(q)) m[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(l.action().image(g, x));
            isos.push_back(std::move(m));
        }
    return FusionSystem::from_explicit(share_s(l), base, l.p(), isos);
}

bool is_epi(FusionMapKind k) { return k == FusionMapKind::Epimorphism || k == FusionMapKind::Isomorphism; }

}  // namespace

bool PartialNormal::contains(int f) const { return std::binary_search(members.begin(), members.end(), f); }

PartialNormal make_partial_normal(const Locality& l, std::vector<int> members) {
    members = sorted_unique(std::move(members));
    if (!is_partial_normal(l.pg(), members)) throw NormalError("not a partial normal subgroup");
    PartialNormal n{std::move(members), 0};
    n.t = t_mask(l, n.members);
    if (!is_strongly_closed(fusion_of_locality(l), n.t)) throw NormalError("S cap N is not strongly closed in F_S(L)");
    return n;
}

std::vector<std::vector<int>> conjugacy_classes(const Locality& l) {
    const PartialGroup& pg = l.pg();
    const int n = pg.size();
    std::vector<int> root(static_cast<std::size_t>(n));
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(x)])];
        return x;
    };
    for (int x = 0; x < n; ++x)
        for (int f = 0; f < n; ++f)
            if (auto c = pg.conjugate(x, f)) {
                const int a = find(x), b = find(*c);
                if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
    std::map<int, std::vector<int>> by_root;
    for (int x = 0; x < n; ++x) by_root[find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [r, c] : by_root) out.push_back(std::move(c));
    return out;
}

PartialNormal normal_closure(const Locality& l, std::span<const int> x) {
    PartialNormal n{close_normal(l, x), 0};
    n.t = t_mask(l, n.members);
    return n;
}

std::vector<PartialNormal> enumerate_partial_normal(const Locality& l, std::size_t cap) {
    if (static_cast<std::size_t>(l.size()) > cap)
        throw EnumerationCapExceeded("carrier larger than the enumeration cap " + std::to_string(cap));
    std::set<std::vector<int>> closures;
    for (const auto& c : conjugacy_classes(l)) closures.insert(close_normal(l, c));
    std::set<std::vector<int>> found{close_normal(l, {})};
    std::vector<std::vector<int>> work(found.begin(), found.end());
    while (!work.empty()) {
        const std::vector<int> cur = std::move(work.back());
        work.pop_back();
        for (const auto& c : closures) {
            if (subset_sorted(c, cur)) continue;
            std::vector<int> seed = cur;
            seed.insert(seed.end(), c.begin(), c.end());
            auto j = close_normal(l, seed);
            if (found.insert(j).second) work.push_back(std::move(j));
        }
    }
    const FusionSystem f = fusion_of_locality(l);
    std::vector<PartialNormal> out;
    for (const auto& m : found) {
        PartialNormal n{m, t_mask(l, m)};
        if (!is_strongly_closed(f, n.t)) throw NormalError("S cap N is not strongly closed for N = " + l.pg().word_name(m));
        out.push_back(std::move(n));
    }
    std::sort(out.begin(), out.end());
    return out;
}

FusionSystem sub_fusion_of_partial_normal(const Locality& l, const PartialNormal& n) {
    std::vector<SMap> gens;
    for (int m : n.members) {
        SMap f(static_cast<std::size_t>(l.S().order()), -1);
        for (int x : mask_members(l.s_f(m) & n.t)) f[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(l.action().image(m, x));
        gens.push_back(std::move(f));
    }
    return FusionSystem::generate(share_s(l), n.t, l.p(), gens);
}

std::vector<int> product_with_s(const Locality& l, std::span<const int> k, Mask t) {
    std::vector<int> r;
    for (int a : k)
        for (int x : mask_members(t)) {
            const int c = l.pg().mul_or_neg(a, l.s_elem(x));
            if (c < 0) throw NormalError("product k t undefined");
            r.push_back(c);
        }
    return sorted_unique(std::move(r));
}

QuotientLocality quotient(const Locality& l, const PartialNormal& nn, int k) {
    const PartialGroup& pg = l.pg();
    const int sz = l.size();
    for (int x : nn.members)
        if (x < 0 || x >= sz) throw NormalError("member outside the carrier");

    std::vector<int> root(static_cast<std::size_t>(sz));
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(x)])];
        return x;
    };
    for (int n : nn.members)
        for (int f = 0; f < sz; ++f)
            if (const int c = pg.mul_or_neg(n, f); c >= 0) {
                const int a = find(f), b = find(c);
                if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
    // Class ids: the identity class first, then by least member.
    std::map<int, int> least;
    for (int f = sz - 1; f >= 0; --f) least[find(f)] = f;
    std::vector<std::pair<int, int>> order;
    for (auto [r, m] : least) order.emplace_back(r == find(pg.identity()) ? -1 : m, r);
    std::sort(order.begin(), order.end());
    std::map<int, int> class_of_root;
    std::vector<int> rep;
    for (auto [key, r] : order) {
        class_of_root[r] = static_cast<int>(rep.size());
        rep.push_back(least[r]);
    }
    const int nc = static_cast<int>(rep.size());
    std::vector<int> cls(static_cast<std::size_t>(sz));
    std::vector<std::vector<int>> members(static_cast<std::size_t>(nc));
    for (int f = 0; f < sz; ++f) {
        cls[static_cast<std::size_t>(f)] = class_of_root[find(f)];
        members[static_cast<std::size_t>(cls[static_cast<std::size_t>(f)])].push_back(f);
    }
    if (members[0] != nn.members) throw NormalError("the identity class differs from N");

    // S-bar in class order; alpha_s maps S-indices of L to S-indices of L/N.
    std::vector<int> sbar;
    for (int x : l.s_elements()) sbar.push_back(cls[static_cast<std::size_t>(x)]);
    sbar = sorted_unique(std::move(sbar));
    std::vector<int> s_pos(static_cast<std::size_t>(nc), -1);
    for (std::size_t i = 0; i < sbar.size(); ++i) s_pos[static_cast<std::size_t>(sbar[i])] = static_cast<int>(i);
    std::vector<int> alpha_s(static_cast<std::size_t>(l.S().order()));
    for (int x = 0; x < l.S().order(); ++x) alpha_s[static_cast<std::size_t>(x)] = s_pos[static_cast<std::size_t>(cls[static_cast<std::size_t>(l.s_elem(x))])];
    const int ms = static_cast<int>(sbar.size());

    auto action = std::make_shared<SAction>(nc, ms);
    std::vector<int> inverse(static_cast<std::size_t>(nc), -1);
    for (int c = 0; c < nc; ++c) {
        Mask whole = 0;
        for (int f : members[static_cast<std::size_t>(c)]) whole |= mask_image(alpha_s, l.s_f(f));
        bool realized = false;
        for (int f : members[static_cast<std::size_t>(c)]) {
            if (mask_image(alpha_s, l.s_f(f)) == whole) realized = true;
            for (int x : mask_members(l.s_f(f))) {
                const int from = alpha_s[static_cast<std::size_t>(x)];
                const int to = alpha_s[static_cast<std::size_t>(l.action().image(f, x))];
                const int have = action->image(c, from);
                if (have < 0)
                    action->set(c, from, to);
                else if (have != to)
                    throw NormalError("conjugation by the class of " + pg.name(f) + " is not single-valued");
            }
            const int inv = cls[static_cast<std::size_t>(pg.inverse(f))];
            if (inverse[static_cast<std::size_t>(c)] >= 0 && inverse[static_cast<std::size_t>(c)] != inv)
                throw NormalError("inversion is not single-valued at " + pg.name(f));
            inverse[static_cast<std::size_t>(c)] = inv;
        }
        if (!realized) throw NormalError("no representative of the class of " + pg.name(rep[static_cast<std::size_t>(c)]) + " realizes its S_f");
    }
    std::vector<Mask> objects;
    for (Mask p : l.objects()) objects.push_back(mask_image(alpha_s, p));
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());

    std::vector<int> table(static_cast<std::size_t>(nc) * static_cast<std::size_t>(nc), -1);
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b) {
            const int c = pg.mul_or_neg(a, b);
            if (c < 0) continue;
            auto& e = table[static_cast<std::size_t>(cls[static_cast<std::size_t>(a)] * nc + cls[static_cast<std::size_t>(b)])];
            const int v = cls[static_cast<std::size_t>(c)];
            if (e >= 0 && e != v) {
                const int w[] = {a, b};
                throw NormalError("class product is not single-valued at " + pg.word_name(w));
            }
            e = v;
        }
    ChainDomain dom(action, objects);
    for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b) {
            const int w[] = {a, b};
            const bool defined = table[static_cast<std::size_t>(a * nc + b)] >= 0;
            if (defined != dom.contains(w)) {
                const int lw[] = {rep[static_cast<std::size_t>(a)], rep[static_cast<std::size_t>(b)]};
                throw NormalError(std::string(defined ? "image pair outside the quotient domain at " : "quotient pair with no defined lift at ") +
                                  pg.word_name(lw));
            }
        }
    std::vector<std::string> names;
    for (int c = 0; c < nc; ++c) names.push_back("[" + pg.name(rep[static_cast<std::size_t>(c)]) + "]");
    QuotientLocality q;
    q.loc = Locality(std::move(inverse), 0, std::move(table), action, l.p(), sbar, objects, std::move(names));
    for (int c = 0; c < nc; ++c)
        q.loc.labels.push_back(l.labels.empty() ? rep[static_cast<std::size_t>(c)] : l.labels[static_cast<std::size_t>(rep[static_cast<std::size_t>(c)])]);
    q.projection = classify_map(pg, q.loc.pg(), cls, k);
    return q;
}

Report verify_quotient(const Locality& l, const PartialNormal& n, const QuotientLocality& q) {
    Report r;
    const Locality& ql = q.loc;
    r.merge(validate_locality(ql), "quotient.");
    const auto& alpha = q.projection.map;
    const bool proj = q.projection.kind == HomKind::Projection || q.projection.kind == HomKind::Isomorphism;
    r.expect("projection", proj, q.projection.witness.empty() ? "not a projection" : q.projection.witness);
    r.expect("kernel", q.projection.kind != HomKind::NotHomomorphism && kernel(q.projection) == n.members, "kernel differs from N");
    std::vector<int> alpha_s(static_cast<std::size_t>(l.S().order()));
    for (int x = 0; x < l.S().order(); ++x) alpha_s[static_cast<std::size_t>(x)] = ql.s_index(alpha[static_cast<std::size_t>(l.s_elem(x))]);
    r.expect("s-onto", std::set<int>(alpha_s.begin(), alpha_s.end()).size() == static_cast<std::size_t>(ql.S().order()), "image of S is not S-bar");
    {
        std::set<Mask> img;
        for (Mask p : l.objects()) img.insert(mask_image(alpha_s, p));
        r.expect("objects-onto", img == std::set<Mask>(ql.objects().begin(), ql.objects().end()), "Delta alpha differs from Delta-bar");
    }
    r.note("quotient_order", ql.size());
    r.note("quotient_s_order", ql.S().order());

    const FusionSystem f = fusion_of_locality(l);
    const FusionSystem fq = fusion_of_locality(ql);
    r.check("normalizer-image");
    r.check("class-image");
    r.check("fully-normalized");
    r.check("normalizer-epimorphism");
    r.check("group-epimorphism");
    for (Mask rr : l.S().subgroups()) {
        if (!mask_subset(n.t, rr)) continue;
        const Mask rb = mask_image(alpha_s, rr);
        const std::string name = l.describe(rr);
        std::set<int> img;
        const auto nl = normalizer(l, rr);
        for (int g : nl) img.insert(alpha[static_cast<std::size_t>(g)]);
        const auto nq = normalizer(ql, rb);
        r.expect("normalizer-image", img == std::set<int>(nq.begin(), nq.end()), "N_L(R) alpha differs from N(R alpha) at R = " + name);
        std::set<Mask> cls_img;
        for (Mask r0 : f.conjugacy_class(rr)) cls_img.insert(mask_image(alpha_s, r0));
        const auto qc = fq.conjugacy_class(rb);
        r.expect("class-image", cls_img == std::set<Mask>(qc.begin(), qc.end()), "class images differ at R = " + name);
        r.expect("fully-normalized", f.is_fully_normalized(rr) == fq.is_fully_normalized(rb), "full normalization differs at R = " + name);
        r.expect("normalizer-epimorphism", is_epi(classify_fusion_map(alpha_s, normalizer_system(f, rr), normalizer_system(fq, rb))),
                 "N_F(R) -> N_F(R alpha) is not an epimorphism at R = " + name);
        if (l.is_object(rr) && f.is_fully_normalized(rr)) {
            const Mask ns = l.S().normalizer(l.S().all(), rr);
            const Mask nsq = ql.S().normalizer(ql.S().all(), rb);
            const FusionSystem e = fusion_of_members(l, nl, ns);
            const FusionSystem eq = fusion_of_members(ql, nq, nsq);
            r.expect("group-epimorphism", is_epi(classify_fusion_map(alpha_s, e, eq)),
                     "F(N_L(R)) -> F(N(R alpha)) is not an epimorphism at R = " + name);
        }
    }
    r.expect("fusion-epimorphism", is_epi(classify_fusion_map(alpha_s, f, fq)), "alpha|_S does not induce an epimorphism");
    return r;
}

Restriction ns_locality(const Locality& l, const PartialNormal& n) {
    const auto ns = product_with_s(l, n.members, l.S().all());
    if (!is_partial_subgroup(l.pg(), ns)) throw NormalError("NS is not a partial subgroup");
    return sub_locality(l, ns, l.objects());
}

Report verify_ns_locality(const Locality& l, const PartialNormal& n, const Restriction& ns) {
    Report r;
    r.merge(validate_locality(ns.loc), "ns.");
    r.check("residual-equality");
    for (Mask p : l.objects()) {
        std::vector<int> in_ns;
        for (int g : normalizer(ns.loc, p)) in_ns.push_back(ns.to_parent[static_cast<std::size_t>(g)]);
        std::sort(in_ns.begin(), in_ns.end());
        const auto in_n = intersect_sorted(normalizer(l, p), n.members);
        r.expect("residual-equality", residual_or_core(l, in_ns, true) == residual_or_core(l, in_n, true),
                 "O^p differs at P = " + l.describe(p));
    }
    r.note("ns_order", ns.loc.size());
    return r;
}

namespace {

struct AlperinContext {
    std::vector<int> ns;
    std::vector<AlperinFactor> candidates;
};

bool admissible(const Locality& l, std::span<const int> ns, Mask r) {
    const auto g = intersect_sorted(normalizer(l, r), ns);
    if (residual_or_core(l, g, false) != l.elements_of(r)) return false;
    const Mask nsr = l.S().normalizer(l.S().all(), r);
    return mask_size(nsr) == p_part(g.size(), l.p());
}

AlperinContext alperin_context(const Locality& l, const PartialNormal& n) {
    AlperinContext c;
    c.ns = product_with_s(l, n.members, l.S().all());
    for (Mask r : l.objects()) {
        if (!admissible(l, c.ns, r)) continue;
        for (int m : residual_or_core(l, intersect_sorted(normalizer(l, r), n.members), true))
            if (l.s_f(m) == r) c.candidates.push_back(AlperinFactor{m, r});
    }
    return c;
}

bool alperin_dfs(const Locality& l, const AlperinContext& c, int target, int depth, Mask p, int prod,
                 std::vector<AlperinFactor>& out) {
    if (depth == 0) return prod == target;
    for (const auto& cand : c.candidates) {
        if (!mask_subset(p, cand.r)) continue;
        const int next = l.pg().mul_or_neg(prod, cand.element);
        if (next < 0) continue;
        out.push_back(cand);
        if (alperin_dfs(l, c, target, depth - 1, l.act(cand.element, p), next, out)) return true;
        out.pop_back();
    }
    return false;
}

}  // namespace

AlperinDecomposition alperin_decompose(const Locality& l, const PartialNormal& n, int element, int k_max) {
    if (!n.contains(element)) throw std::invalid_argument("element is not in N");
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    const AlperinContext c = alperin_context(l, n);
    const Mask sn = l.s_f(element);
    for (int k = 0; k <= k_max; ++k)
        for (int x : mask_members(n.t)) {
            const int t = l.s_elem(x);
            std::vector<AlperinFactor> factors;
            if (!alperin_dfs(l, c, element, k, l.act(t, sn), t, factors)) continue;
            AlperinDecomposition d{t, std::move(factors)};
            std::string why;
            if (!check_alperin(l, n, element, d, &why)) throw NormalError("decomposition failed its re-check: " + why);
            return d;
        }
    throw DecompositionBoundExhausted("no decomposition of " + l.pg().name(element) + " with k <= " + std::to_string(k_max));
}

bool check_alperin(const Locality& l, const PartialNormal& n, int element, const AlperinDecomposition& d, std::string* why) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    const PartialGroup& pg = l.pg();
    if (!l.in_s(d.t) || !n.contains(d.t)) return fail("t is not in T");
    Word w{d.t};
    for (const auto& f : d.factors) w.push_back(f.element);
    if (!pg.in_domain(w)) return fail("word not in D");
    if (*pg.product(w) != element) return fail("product differs");
    if (l.s_word(w) != l.s_f(element)) return fail("S_w differs from S_n");
    const auto ns = product_with_s(l, n.members, l.S().all());
    for (const auto& f : d.factors) {
        const std::string at = " at " + pg.name(f.element);
        if (!n.contains(f.element)) return fail("factor outside N" + at);
        if (l.s_f(f.element) != f.r) return fail("S_{n_i} differs from R_i" + at);
        const auto nn = intersect_sorted(normalizer(l, f.r), n.members);
        const auto res = residual_or_core(l, nn, true);
        if (!std::binary_search(res.begin(), res.end(), f.element)) return fail("factor outside O^p(N_N(R_i))" + at);
        if (!admissible(l, ns, f.r)) return fail("R_i is not O_p of N_NS(R_i) with Sylow N_S(R_i)" + at);
    }
    return true;
}

std::vector<PartialNormal> phi_map(const Restriction& small, const std::vector<PartialNormal>& plus_normals) {
    std::vector<PartialNormal> out;
    for (const auto& np : plus_normals) {
        PartialNormal m;
        for (int f : np.members)
            if (const int g = small.from_parent[static_cast<std::size_t>(f)]; g >= 0) m.members.push_back(g);
        std::sort(m.members.begin(), m.members.end());
        m.t = t_mask(small.loc, m.members);
        out.push_back(std::move(m));
    }
    return out;
}

Report verify_theorem_c(const Locality& plus, const std::vector<Mask>& delta, std::size_t cap) {
    const Restriction small = restrict(plus, delta);
    std::string why;
    if (!is_linking_locality(plus, &why)) throw ExtensionError("L+ is not a linking locality: " + why);
    if (!is_linking_locality(small.loc, &why)) throw ExtensionError("L is not a linking locality: " + why);
    const FusionSystem f = fusion_of_locality(plus);
    if (!(fusion_of_locality(small.loc) == f)) throw ExtensionError("L and L+ have different fusion systems");

    Report r;
    const auto big = enumerate_partial_normal(plus, cap);
    const auto sm = enumerate_partial_normal(small.loc, cap);
    const auto phi = phi_map(small, big);
    r.note("normals_plus", big.size());
    r.note("normals_small", sm.size());
    r.expect("count-equality", big.size() == sm.size(), std::to_string(big.size()) + " vs " + std::to_string(sm.size()));

    r.check("phi-well-defined");
    for (std::size_t i = 0; i < phi.size(); ++i)
        r.expect("phi-well-defined", is_partial_normal(small.loc.pg(), phi[i].members), "image of N+ #" + std::to_string(i) + " is not partial normal");
    std::set<std::vector<int>> images, targets;
    for (const auto& m : phi) images.insert(m.members);
    for (const auto& m : sm) targets.insert(m.members);
    r.expect("phi-injective", images.size() == phi.size(), "two partial normal subgroups of L+ meet L equally");
    r.expect("phi-surjective", images == targets, "a partial normal subgroup of L is not an intersection");

    r.check("phi-inclusion-preserving");
    r.check("phi-inverse-inclusion-preserving");
    std::size_t hasse_plus = 0, hasse_small = 0;
    std::set<std::pair<std::vector<int>, std::vector<int>>> covers_plus_mapped, covers_small;
    auto leq = [](const std::vector<PartialNormal>& v, std::size_t a, std::size_t b) { return subset_sorted(v[a].members, v[b].members); };
    auto covers = [&](const std::vector<PartialNormal>& v, std::size_t a, std::size_t b) {
        if (a == b || !leq(v, a, b)) return false;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (c != a && c != b && leq(v, a, c) && leq(v, c, b)) return false;
        return true;
    };
    for (std::size_t a = 0; a < big.size(); ++a)
        for (std::size_t b = 0; b < big.size(); ++b) {
            const bool up = leq(big, a, b), down = leq(phi, a, b);
            if (up) r.expect("phi-inclusion-preserving", down, "inclusion lost under phi");
            if (down) r.expect("phi-inverse-inclusion-preserving", up, "inclusion lost under phi inverse");
            if (covers(big, a, b)) {
                ++hasse_plus;
                covers_plus_mapped.emplace(phi[a].members, phi[b].members);
            }
        }
    for (std::size_t a = 0; a < sm.size(); ++a)
        for (std::size_t b = 0; b < sm.size(); ++b)
            if (covers(sm, a, b)) {
                ++hasse_small;
                covers_small.emplace(sm[a].members, sm[b].members);
            }
    r.expect("hasse-diagram", covers_plus_mapped == covers_small, "covering relations differ");
    r.note("hasse_edges_plus", hasse_plus);
    r.note("hasse_edges_small", hasse_small);

    r.check("closure-recovers");
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::vector<int> up;
        for (int g : phi[i].members) up.push_back(small.to_parent[static_cast<std::size_t>(g)]);
        r.expect("closure-recovers", normal_closure(plus, up).members == big[i].members, "closure of N+ cap L is not N+");
    }

    r.check("fusion-equality");
    std::size_t invariant_cases = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        const FusionSystem e = sub_fusion_of_partial_normal(small.loc, phi[i]);
        if (!is_invariant_subsystem(f, e)) continue;
        ++invariant_cases;
        r.expect("fusion-equality", sub_fusion_of_partial_normal(plus, big[i]) == e, "F_T(N+) differs from F_T(N) at #" + std::to_string(i));
    }
    r.note("invariant_cases", invariant_cases);

    r.check("product-equivalence");
    std::size_t product_cases = 0;
    for (std::size_t a = 0; a < big.size(); ++a)
        for (std::size_t b = 0; b < big.size(); ++b) {
            const Mask t = big[a].t;
            const bool small_side = product_with_s(small.loc, phi[b].members, t) == phi[a].members;
            const bool plus_side = product_with_s(plus, big[b].members, t) == big[a].members;
            if (plus_side) ++product_cases;
            r.expect("product-equivalence", small_side == plus_side, "N = KT and N+ = K+T disagree at #" + std::to_string(a) + ", #" + std::to_string(b));
        }
    r.note("product_cases", product_cases);
    return r;
}

}  // namespace loclab
