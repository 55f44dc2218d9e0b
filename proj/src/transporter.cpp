#include "loclab/transporter.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace loclab {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Mask image_of(const SMap& f, Mask p) {
    Mask m = 0;
    for (int x : mask_members(p)) m |= mask_bit(f[idx(x)]);
    return m;
}

std::uint64_t key(int a, int b) { return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b); }

// Morphism lists grouped by (src, dst) and sorted by label, with a lookup used
// while the composition callback is evaluated.
struct MorphismIndex {
    int n = 0;
    std::vector<Morphism> list;
    std::vector<std::vector<int>> by_pair;

    explicit MorphismIndex(int objects) : n(objects), by_pair(idx(objects * objects)) {}
    void build(std::vector<std::vector<int>> labels) {
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                auto& ls = labels[idx(p * n + q)];
                std::sort(ls.begin(), ls.end());
                for (int g : ls) {
                    by_pair[idx(p * n + q)].push_back(static_cast<int>(list.size()));
                    list.push_back({p, q, g});
                }
            }
    }
    int find(int p, int q, int label) const {
        const auto& ids = by_pair[idx(p * n + q)];
        auto it = std::lower_bound(ids.begin(), ids.end(), label, [&](int m, int l) { return list[idx(m)].label < l; });
        return it != ids.end() && list[idx(*it)].label == label ? *it : -1;
    }
};

}  // namespace

TransporterSystem::TransporterSystem(std::shared_ptr<const TableGroup> s, int p, std::vector<Mask> objects,
                                     std::vector<Morphism> morphisms, const std::function<int(int, int)>& compose_fn,
                                     const std::function<int(int, int, int)>& delta_fn, std::vector<SMap> pi, FusionSystem fusion,
                                     std::vector<std::string> label_names)
    : s_(std::move(s)), p_(p), fusion_(std::move(fusion)), objects_(std::move(objects)), morphisms_(std::move(morphisms)),
      pi_(std::move(pi)), label_names_(std::move(label_names)) {
    const int n = object_count();
    const int nm = morphism_count();
    if (static_cast<int>(pi_.size()) != nm) throw TransporterError("one pi-image per morphism required");
    for (int i = 0; i < n; ++i)
        if (!object_index_.emplace(objects_[idx(i)], i).second) throw TransporterError("repeated object");
    hom_.assign(idx(n * n), {});
    into_.assign(idx(n), {});
    out_of_.assign(idx(n), {});
    pos_in_into_.assign(idx(nm), -1);
    for (int m = 0; m < nm; ++m) {
        const Morphism& mo = morphisms_[idx(m)];
        if (mo.src < 0 || mo.src >= n || mo.dst < 0 || mo.dst >= n) throw TransporterError("morphism with unknown object");
        auto& h = hom_[idx(mo.src * n + mo.dst)];
        if (!h.empty() && morphisms_[idx(h.back())].label >= mo.label) throw TransporterError("morphisms must be sorted by label");
        h.push_back(m);
        pos_in_into_[idx(m)] = static_cast<int>(into_[idx(mo.dst)].size());
        into_[idx(mo.dst)].push_back(m);
        out_of_[idx(mo.src)].push_back(m);
    }
    comp_.assign(idx(nm), {});
    for (int psi = 0; psi < nm; ++psi) {
        const Morphism& b = morphisms_[idx(psi)];
        auto& row = comp_[idx(psi)];
        row.reserve(into_[idx(b.src)].size());
        for (int phi : into_[idx(b.src)]) {
            const int c = compose_fn(psi, phi);
            if (c < 0 || c >= nm || morphisms_[idx(c)].src != morphisms_[idx(phi)].src || morphisms_[idx(c)].dst != b.dst)
                throw TransporterError("composition leaves the morphism sets: " + describe(psi) + " o " + describe(phi));
            row.push_back(c);
        }
    }
    const int so = s_->order();
    delta_.assign(idx(n * n * so), -1);
    delta_of_.assign(idx(nm), -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int x = 0; x < so; ++x) {
                const int d = delta_fn(a, b, x);
                if (d < 0) continue;
                if (d >= nm || morphisms_[idx(d)].src != a || morphisms_[idx(d)].dst != b) throw TransporterError("delta lands outside Mor(P, Q)");
                delta_[delta_index(a, b, x)] = d;
                if (delta_of_[idx(d)] < 0) delta_of_[idx(d)] = x;
            }
    for (int phi0 = 0; phi0 < nm; ++phi0) {
        const int q0 = morphisms_[idx(phi0)].dst;
        for (int q = 0; q < n; ++q) {
            const int inc = inclusion(q0, q);
            if (inc < 0) continue;
            post_inclusion_.emplace(key(q0, compose_unchecked(inc, phi0)), phi0);
        }
    }
    inverse_.assign(idx(nm), -1);
    for (int m = 0; m < nm; ++m) {
        const Morphism& mo = morphisms_[idx(m)];
        const int ip = identity(mo.src);
        const int iq = identity(mo.dst);
        if (ip < 0 || iq < 0) continue;
        for (int psi : hom(mo.dst, mo.src))
            if (compose(psi, m) == ip && compose(m, psi) == iq) {
                inverse_[idx(m)] = psi;
                break;
            }
    }
}

int TransporterSystem::object_index(Mask m) const {
    auto it = object_index_.find(m);
    return it == object_index_.end() ? -1 : it->second;
}

int TransporterSystem::find(int p, int q, int label) const {
    const auto& ids = hom(p, q);
    auto it = std::lower_bound(ids.begin(), ids.end(), label, [&](int m, int l) { return morphisms_[idx(m)].label < l; });
    return it != ids.end() && morphisms_[idx(*it)].label == label ? *it : -1;
}

int TransporterSystem::compose_unchecked(int psi, int phi) const { return comp_[idx(psi)][idx(pos_in_into_[idx(phi)])]; }

int TransporterSystem::compose(int psi, int phi) const {
    if (psi < 0 || phi < 0 || morphisms_[idx(phi)].dst != morphisms_[idx(psi)].src) return -1;
    return compose_unchecked(psi, phi);
}

bool TransporterSystem::is_iso(int m) const { return inverse_[idx(m)] >= 0; }

int TransporterSystem::restriction(int phi, int p0, int q0) const {
    const Morphism& mo = morphisms_[idx(phi)];
    const int inc = inclusion(p0, mo.src);
    if (inc < 0) return -1;
    auto it = post_inclusion_.find(key(q0, compose(phi, inc)));
    return it == post_inclusion_.end() ? -1 : it->second;
}

const std::string& TransporterSystem::label_name(int m) const {
    static const std::string unnamed = "?";
    const int l = morphisms_[idx(m)].label;
    return l >= 0 && l < static_cast<int>(label_names_.size()) ? label_names_[idx(l)] : unnamed;
}

std::string TransporterSystem::describe(int m) const {
    const Morphism& mo = morphisms_[idx(m)];
    return "(" + s_->describe(object(mo.src)) + ", " + s_->describe(object(mo.dst)) + ", " + label_name(m) + ")";
}

// The one place where right-hand locality notation meets left-hand transporter
// notation: (P, Q, g) is a morphism iff P^(g^-1) <= Q, and pi sends x to x^(g^-1).
TransporterSystem transporter_of_locality(const Locality& l) {
    const int n = static_cast<int>(l.objects().size());
    const auto& objs = l.objects();
    std::vector<std::vector<int>> labels(idx(n * n));
    for (int g = 0; g < l.size(); ++g) {
        const int h = l.pg().inverse(g);
        const Mask dom = l.s_f(h);
        for (int a = 0; a < n; ++a) {
            if (!mask_subset(objs[idx(a)], dom)) continue;
            const Mask img = l.act(h, objs[idx(a)]);
            for (int b = 0; b < n; ++b)
                if (mask_subset(img, objs[idx(b)])) labels[idx(a * n + b)].push_back(g);
        }
    }
    MorphismIndex mi(n);
    mi.build(std::move(labels));
    std::vector<SMap> pi;
    for (const Morphism& mo : mi.list) {
        SMap f(idx(l.S().order()), -1);
        const int h = l.pg().inverse(mo.label);
        for (int x : mask_members(objs[idx(mo.src)])) f[idx(x)] = static_cast<std::int8_t>(l.action().image(h, x));
        pi.push_back(std::move(f));
    }
    FusionSystem f = fusion_of_locality(l);
    auto s = f.s_ptr();
    auto compose = [&](int psi, int phi) {
        const Morphism& b = mi.list[idx(psi)];
        const Morphism& a = mi.list[idx(phi)];
        const int c = l.pg().mul_or_neg(b.label, a.label);
        return c < 0 ? -1 : mi.find(a.src, b.dst, c);
    };
    auto delta = [&](int a, int b, int x) {
        if (!mask_subset(s->conj(objs[idx(a)], s->inv(x)), objs[idx(b)])) return -1;
        return mi.find(a, b, l.s_elem(x));
    };
    return TransporterSystem(s, l.p(), objs, mi.list, compose, delta, std::move(pi), std::move(f), l.pg().names());
}

TransporterSystem transporter_of_group(const Group& m, int p, const Subgroup& s_members, const std::vector<Subgroup>& delta_set) {
    auto s_index = [&](int g) {
        auto it = std::lower_bound(s_members.begin(), s_members.end(), g);
        return it != s_members.end() && *it == g ? static_cast<int>(it - s_members.begin()) : -1;
    };
    std::vector<Mask> objs;
    for (const auto& h : delta_set) {
        Mask mk = 0;
        for (int x : h) {
            const int i = s_index(x);
            if (i < 0) throw TransporterError("object outside S");
            mk |= mask_bit(i);
        }
        objs.push_back(mk);
    }
    std::sort(objs.begin(), objs.end());
    objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
    const int n = static_cast<int>(objs.size());
    const int so = static_cast<int>(s_members.size());
    // Left conjugation x -> g x g^-1 on S-indices, -1 when it leaves S.
    auto left_conj = [&](int g, int x) { return s_index(m.mul(m.mul(g, s_members[idx(x)]), m.inv(g))); };
    std::vector<std::vector<int>> labels(idx(n * n));
    for (int g = 0; g < m.order(); ++g)
        for (int a = 0; a < n; ++a) {
            Mask img = 0;
            bool inside = true;
            for (int x : mask_members(objs[idx(a)])) {
                const int y = left_conj(g, x);
                if (y < 0) {
                    inside = false;
                    break;
                }
                img |= mask_bit(y);
            }
            if (!inside) continue;
            for (int b = 0; b < n; ++b)
                if (mask_subset(img, objs[idx(b)])) labels[idx(a * n + b)].push_back(g);
        }
    MorphismIndex mi(n);
    mi.build(std::move(labels));
    std::vector<SMap> pi;
    for (const Morphism& mo : mi.list) {
        SMap f(idx(so), -1);
        for (int x : mask_members(objs[idx(mo.src)])) f[idx(x)] = static_cast<std::int8_t>(left_conj(mo.label, x));
        pi.push_back(std::move(f));
    }
    FusionSystem f = fusion_of_group(m, m.all(), s_members, s_members, p);
    auto s = f.s_ptr();
    auto compose = [&](int psi, int phi) {
        const Morphism& b = mi.list[idx(psi)];
        const Morphism& a = mi.list[idx(phi)];
        return mi.find(a.src, b.dst, m.mul(b.label, a.label));
    };
    auto delta = [&](int a, int b, int x) {
        if (!mask_subset(s->conj(objs[idx(a)], s->inv(x)), objs[idx(b)])) return -1;
        return mi.find(a, b, s_members[idx(x)]);
    };
    std::vector<std::string> names;
    for (int g = 0; g < m.order(); ++g) names.push_back(m.name(g));
    return TransporterSystem(s, p, objs, mi.list, compose, delta, std::move(pi), std::move(f), std::move(names));
}

Report validate_transporter(const TransporterSystem& t) {
    Report r;
    const int n = t.object_count();
    const int nm = t.morphism_count();
    const TableGroup& s = t.S();
    const int so = s.order();
    const FusionSystem& f = t.fusion();

    r.check("category.identity");
    for (int a = 0; a < n; ++a)
        if (t.identity(a) < 0) r.fail("category.identity", "no identity on " + s.describe(t.object(a)));
    for (int m = 0; m < nm; ++m) {
        const Morphism& mo = t.morphism(m);
        const int ip = t.identity(mo.src), iq = t.identity(mo.dst);
        if (ip < 0 || iq < 0) continue;
        r.expect("category.identity", t.compose(iq, m) == m && t.compose(m, ip) == m, t.describe(m));
    }
    r.check("category.associativity");
    std::size_t triples = 0;
    for (int psi = 0; psi < nm; ++psi) {
        const Morphism& b = t.morphism(psi);
        for (int phi : t.into(b.src)) {
            const int bp = t.compose(psi, phi);
            for (int chi : t.out_of(b.dst)) {
                ++triples;
                if (t.compose(chi, bp) != t.compose(t.compose(chi, psi), phi)) {
                    r.fail("category.associativity", t.describe(chi) + " o " + t.describe(psi) + " o " + t.describe(phi));
                    break;
                }
            }
        }
    }
    r.check("category.associativity").instances += triples;

    r.check("delta.defined");
    r.check("delta.injective");
    r.check("delta.functor");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::set<int> seen;
            for (int x = 0; x < so; ++x) {
                const bool should = mask_subset(s.conj(t.object(a), s.inv(x)), t.object(b));
                const int d = t.delta(a, b, x);
                r.expect("delta.defined", should == (d >= 0), s.describe(t.object(a)) + " -> " + s.describe(t.object(b)) + " by " + s.name(x));
                if (d >= 0 && !seen.insert(d).second) r.fail("delta.injective", t.describe(d));
                else if (d >= 0) r.pass("delta.injective");
                if (d < 0) continue;
                for (int c = 0; c < n; ++c)
                    for (int y = 0; y < so; ++y) {
                        const int e = t.delta(b, c, y);
                        if (e < 0) continue;
                        r.expect("delta.functor", t.compose(e, d) == t.delta(a, c, s.mul(y, x)), t.describe(e) + " o " + t.describe(d));
                    }
            }
        }

    r.check("pi.functor");
    r.check("pi.in-fusion");
    for (int m = 0; m < nm; ++m) {
        const Morphism& mo = t.morphism(m);
        const SMap& pm = t.pi(m);
        const bool shape = smap_domain(pm) == t.object(mo.src) && mask_subset(smap_image(pm), t.object(mo.dst)) && smap_is_injective_hom(s, pm);
        r.expect("pi.in-fusion", shape && f.contains(pm), t.describe(m));
        for (int phi : t.into(mo.src)) r.expect("pi.functor", t.pi(t.compose(m, phi)) == smap_compose(pm, t.pi(phi)), t.describe(m) + " o " + t.describe(phi));
    }
    for (int a = 0; a < n; ++a) {
        const int id = t.identity(a);
        if (id >= 0) r.expect("pi.functor", t.pi(id) == smap_restrict(smap_conjugation(s, s.all(), s.identity()), t.object(a)), s.describe(t.object(a)));
    }
    r.check("pi.surjective");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::set<SMap> hit;
            for (int m : t.hom(a, b)) hit.insert(t.pi(m));
            for (const auto& g : f.hom(t.object(a), t.object(b)))
                r.expect("pi.surjective", hit.count(g) > 0, s.describe(t.object(a)) + " -> " + s.describe(t.object(b)));
        }

    std::string w;
    r.expect("A1.objects-f-closed", is_f_closed(f, t.objects(), &w), w);

    // (A2): E(P) = ker pi_P acts freely, and pi-fibres are exactly E(P)-orbits.
    r.check("A2.free-action");
    r.check("A2.fibres");
    for (int a = 0; a < n; ++a) {
        const SMap id_map = smap_restrict(smap_conjugation(s, s.all(), s.identity()), t.object(a));
        std::vector<int> e;
        for (int g : t.aut(a))
            if (t.pi(g) == id_map) e.push_back(g);
        for (int b = 0; b < n; ++b) {
            std::map<SMap, std::set<int>> fibre;
            for (int m : t.hom(a, b)) fibre[t.pi(m)].insert(m);
            for (int m : t.hom(a, b)) {
                std::set<int> orbit;
                for (int g : e) orbit.insert(t.compose(m, g));
                r.expect("A2.free-action", orbit.size() == e.size(), t.describe(m));
                r.expect("A2.fibres", orbit == fibre[t.pi(m)], t.describe(m));
            }
        }
    }
    r.check("B.delta-to-conjugation");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int x = 0; x < so; ++x) {
                const int d = t.delta(a, b, x);
                if (d >= 0) r.expect("B.delta-to-conjugation", t.pi(d) == smap_conjugation(s, t.object(a), s.inv(x)), t.describe(d));
            }
    r.check("C.conjugation-compatible");
    for (int m = 0; m < nm; ++m) {
        const Morphism& mo = t.morphism(m);
        for (int g : mask_members(t.object(mo.src))) {
            const int lhs = t.compose(m, t.delta(mo.src, mo.src, g));
            const int rhs = t.compose(t.delta(mo.dst, mo.dst, t.pi(m)[idx(g)]), m);
            r.expect("C.conjugation-compatible", lhs >= 0 && lhs == rhs, t.describe(m) + " at " + s.name(g));
        }
    }
    const int so_obj = t.s_object();
    if (so_obj < 0) {
        r.fail("I.sylow", "S is not an object");
    } else {
        const auto& auts = t.aut(so_obj);
        r.expect("I.sylow", p_part(auts.size(), t.p()) == so, "|Aut_T(S)| = " + std::to_string(auts.size()));
        std::set<int> ds;
        for (int x = 0; x < so; ++x) ds.insert(t.delta(so_obj, so_obj, x));
        r.check("I.normal");
        for (int g : auts)
            for (int x : ds) r.expect("I.normal", ds.count(t.compose(t.compose(g, x), t.inverse(g))) > 0, t.describe(g));
    }
    // (II): phi extends to (Pbar, Qbar) whenever phi delta_P(Pbar) phi^-1 <= delta_Q(Qbar).
    r.check("II.extension");
    for (int m = 0; m < nm; ++m) {
        if (!t.is_iso(m)) continue;
        const Morphism& mo = t.morphism(m);
        const Mask p = t.object(mo.src), q = t.object(mo.dst);
        const Mask np = s.normalizer(s.all(), p), nq = s.normalizer(s.all(), q);
        for (int pb = 0; pb < n; ++pb) {
            const Mask pbm = t.object(pb);
            if (!mask_subset(p, pbm) || !mask_subset(pbm, np)) continue;
            for (int qb = 0; qb < n; ++qb) {
                const Mask qbm = t.object(qb);
                if (!mask_subset(q, qbm) || !mask_subset(qbm, nq)) continue;
                bool hyp = true;
                for (int g : mask_members(pbm)) {
                    const int c = t.compose(t.compose(m, t.delta(mo.src, mo.src, g)), t.inverse(m));
                    const int x = t.delta_preimage(c);
                    if (x < 0 || !mask_has(qbm, x)) {
                        hyp = false;
                        break;
                    }
                }
                if (!hyp) continue;
                const int target = t.compose(t.inclusion(mo.dst, qb), m);
                bool found = false;
                for (int e : t.hom(pb, qb))
                    if (t.compose(e, t.inclusion(mo.src, pb)) == target) found = true;
                r.expect("II.extension", found, t.describe(m) + " to " + s.describe(pbm) + " -> " + s.describe(qbm));
            }
        }
    }
    r.check("monic");
    r.check("epic");
    for (int m = 0; m < nm; ++m) {
        const Morphism& mo = t.morphism(m);
        std::set<int> post, pre;
        for (int phi : t.into(mo.src)) post.insert(t.compose(m, phi));
        r.expect("monic", post.size() == t.into(mo.src).size(), t.describe(m));
        for (int psi : t.out_of(mo.dst)) pre.insert(t.compose(psi, m));
        r.expect("epic", pre.size() == t.out_of(mo.dst).size(), t.describe(m));
    }
    std::size_t isos = 0;
    for (int m = 0; m < nm; ++m) isos += t.is_iso(m) ? 1 : 0;
    r.note("objects", n);
    r.note("morphisms", nm);
    r.note("isomorphisms", isos);
    return r;
}

SubTransporter full_subcategory(const TransporterSystem& t, const std::vector<Mask>& delta_set) {
    std::string w;
    if (!is_f_closed(t.fusion(), delta_set, &w)) throw TransporterError("object set not F-closed: " + w);
    std::vector<Mask> objs(delta_set);
    std::sort(objs.begin(), objs.end());
    objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
    const int n = static_cast<int>(objs.size());
    std::vector<int> parent_obj;
    for (Mask o : objs) {
        const int i = t.object_index(o);
        if (i < 0) throw TransporterError(t.S().describe(o) + " is not an object");
        parent_obj.push_back(i);
    }
    std::vector<Morphism> list;
    std::vector<int> to_parent;
    std::vector<int> from_parent(idx(t.morphism_count()), -1);
    std::vector<SMap> pi;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int m : t.hom(parent_obj[idx(a)], parent_obj[idx(b)])) {
                from_parent[idx(m)] = static_cast<int>(list.size());
                to_parent.push_back(m);
                list.push_back({a, b, t.morphism(m).label});
                pi.push_back(t.pi(m));
            }
    auto compose = [&](int psi, int phi) { return from_parent[idx(t.compose(to_parent[idx(psi)], to_parent[idx(phi)]))]; };
    auto delta = [&](int a, int b, int x) {
        const int d = t.delta(parent_obj[idx(a)], parent_obj[idx(b)], x);
        return d < 0 ? -1 : from_parent[idx(d)];
    };
    SubTransporter out{TransporterSystem(t.s_ptr(), t.p(), objs, std::move(list), compose, delta, std::move(pi), t.fusion(), t.label_names()),
                       std::move(to_parent)};
    return out;
}

TransporterLocality locality_of_transporter(const TransporterSystem& t) {
    const int nm = t.morphism_count();
    std::vector<int> parent(idx(nm));
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[idx(x)] != x) x = parent[idx(x)] = parent[idx(parent[idx(x)])];
        return x;
    };
    std::vector<char> extended(idx(nm), 0);
    for (int m = 0; m < nm; ++m) {
        if (!t.is_iso(m)) continue;
        const Morphism& mo = t.morphism(m);
        const Mask p = t.object(mo.src);
        for (int a = 0; a < t.object_count(); ++a) {
            const Mask p0 = t.object(a);
            if (p0 == p || !mask_subset(p0, p)) continue;
            const int b = t.object_index(image_of(t.pi(m), p0));
            if (b < 0) throw TransporterError("image of an object is not an object under " + t.describe(m));
            const int m0 = t.restriction(m, a, b);
            if (m0 < 0 || !t.is_iso(m0)) throw TransporterError("restriction missing for " + t.describe(m));
            parent[idx(root(m0))] = root(m);
            extended[idx(m0)] = 1;
        }
    }
    // Each class has a unique maximal member.
    std::map<int, int> max_of;
    for (int m = 0; m < nm; ++m) {
        if (!t.is_iso(m) || extended[idx(m)]) continue;
        if (!max_of.emplace(root(m), m).second) throw TransporterError("two maximal members in the class of " + t.describe(m));
    }
    std::vector<int> reps;
    for (const auto& [r, m] : max_of) reps.push_back(m);
    std::sort(reps.begin(), reps.end(), [&](int a, int b) {
        const int la = t.morphism(a).label, lb = t.morphism(b).label;
        return la != lb ? la < lb : a < b;
    });
    TransporterLocality out;
    const int n = static_cast<int>(reps.size());
    std::map<int, int> class_of_root;
    for (int c = 0; c < n; ++c) class_of_root[root(reps[idx(c)])] = c;
    out.class_of.assign(idx(nm), -1);
    for (int m = 0; m < nm; ++m) {
        if (!t.is_iso(m)) continue;
        auto it = class_of_root.find(root(m));
        if (it == class_of_root.end()) throw TransporterError("class without a maximal member: " + t.describe(m));
        out.class_of[idx(m)] = it->second;
    }
    out.representative = reps;
    const int so = t.S().order();
    auto action = std::make_shared<SAction>(n, so);
    std::vector<int> inverse(idx(n));
    std::vector<std::string> names;
    for (int c = 0; c < n; ++c) {
        const int m = reps[idx(c)];
        inverse[idx(c)] = out.class_of[idx(t.inverse(m))];
        names.push_back(t.label_name(m));
        // S_f is the target of the maximal member and x^f = pi(phi)^-1(x).
        for (int y : mask_members(t.object(t.morphism(m).src))) action->set(c, t.pi(m)[idx(y)], y);
    }
    std::vector<int> table(idx(n) * idx(n), -1);
    for (int q = 0; q < t.object_count(); ++q)
        for (int psi : t.out_of(q)) {
            if (!t.is_iso(psi)) continue;
            for (int phi : t.into(q)) {
                if (!t.is_iso(phi)) continue;
                const int a = out.class_of[idx(psi)], b = out.class_of[idx(phi)];
                const int c = out.class_of[idx(t.compose(psi, phi))];
                int& slot = table[idx(a) * idx(n) + idx(b)];
                if (slot >= 0 && slot != c) throw TransporterError("product not well-defined at " + t.describe(psi) + " o " + t.describe(phi));
                slot = c;
            }
        }
    const int s_obj = t.s_object();
    if (s_obj < 0) throw TransporterError("S is not an object");
    std::vector<int> s_elems;
    for (int x = 0; x < so; ++x) s_elems.push_back(out.class_of[idx(t.delta(s_obj, s_obj, x))]);
    out.loc = Locality(std::move(inverse), out.class_of[idx(t.identity(s_obj))], std::move(table), action, t.p(), std::move(s_elems),
                       t.objects(), std::move(names));
    for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
            const int w[] = {c, d};
            if (out.loc.chain_domain().contains(w) && out.loc.pg().mul_or_neg(c, d) < 0)
                throw TransporterError("pair in D without a composable representative");
        }
    for (int m : reps) out.loc.labels.push_back(t.morphism(m).label);
    return out;
}

Report verify_locality_of_transporter(const TransporterSystem& t, const TransporterLocality& tl, int k) {
    Report r;
    const Locality& l = tl.loc;
    r.merge(validate_locality(l, k), "locality.");
    r.check("domain-pairs");
    for (int a = 0; a < l.size(); ++a)
        for (int b = 0; b < l.size(); ++b) {
            const int w[] = {a, b};
            r.expect("domain-pairs", l.chain_domain().contains(w) == (l.pg().mul_or_neg(a, b) >= 0), l.pg().word_name(w));
        }
    r.expect("identification", l.S() == t.S(), "x -> [delta_S(x)] is not a homomorphism");
    r.check("conjugation");
    for (int m = 0; m < t.morphism_count(); ++m) {
        if (!t.is_iso(m)) continue;
        const Morphism& mo = t.morphism(m);
        const int f = tl.class_of[idx(m)];
        const int finv = l.pg().inverse(f);
        const Mask p = t.object(mo.src);
        bool ok = mask_subset(p, l.s_f(finv)) && l.act(finv, p) == t.object(mo.dst);
        for (int x : mask_members(p))
            if (ok && l.action().image(finv, x) != t.pi(m)[idx(x)]) ok = false;
        r.expect("conjugation", ok, t.describe(m));
    }
    r.check("normalizer");
    for (int a = 0; a < t.object_count(); ++a) {
        std::vector<int> img;
        for (int g : t.aut(a)) img.push_back(tl.class_of[idx(g)]);
        std::vector<int> sorted_img(img);
        std::sort(sorted_img.begin(), sorted_img.end());
        const bool bij = std::adjacent_find(sorted_img.begin(), sorted_img.end()) == sorted_img.end() &&
                         sorted_img == normalizer(l, t.object(a));
        bool mult = true;
        for (int g : t.aut(a))
            for (int h : t.aut(a))
                if (l.pg().mul_or_neg(tl.class_of[idx(g)], tl.class_of[idx(h)]) != tl.class_of[idx(t.compose(g, h))]) mult = false;
        r.expect("normalizer", bij && mult, t.S().describe(t.object(a)));
    }
    std::vector<SMap> gens;
    for (Mask p : t.objects())
        for (const auto& g : t.fusion().isos_from(p))
            if (t.object_index(smap_image(g)) >= 0) gens.push_back(g);
    const FusionSystem generated = FusionSystem::generate(t.s_ptr(), t.S().all(), t.p(), gens);
    r.expect("fusion", fusion_of_locality(l) == generated, "F_S(L) differs from the subsystem generated on the objects");
    r.note("carrier", l.size());
    return r;
}

CarrierMap iota_map(const SubTransporter& sub, const TransporterLocality& small, const TransporterLocality& plus,
                    const Restriction& plus_on_delta) {
    CarrierMap out(idx(small.loc.size()), -1);
    for (int m = 0; m < sub.t.morphism_count(); ++m) {
        if (!sub.t.is_iso(m)) continue;
        const int c = small.class_of[idx(m)];
        const int pc = plus.class_of[idx(sub.to_parent[idx(m)])];
        const int v = pc < 0 ? -1 : plus_on_delta.from_parent[idx(pc)];
        if (v < 0) throw TransporterError("iota leaves the restriction at " + sub.t.describe(m));
        if (out[idx(c)] >= 0 && out[idx(c)] != v) throw TransporterError("iota not well-defined at " + sub.t.describe(m));
        out[idx(c)] = v;
    }
    return out;
}

FunctorFlags classify_functor(const CategoryFunctor& a, const TransporterSystem& t, const TransporterSystem& u) {
    FunctorFlags fl;
    auto fail = [&](const std::string& w) {
        if (fl.witness.empty()) fl.witness = w;
    };
    const int n = t.object_count();
    if (static_cast<int>(a.objects.size()) != n || static_cast<int>(a.morphisms.size()) != t.morphism_count()) {
        fail("size mismatch");
        return fl;
    }
    for (int o : a.objects)
        if (o < 0 || o >= u.object_count()) {
            fail("object out of range");
            return fl;
        }
    fl.functor = true;
    for (int m = 0; m < t.morphism_count(); ++m) {
        const int v = a.morphisms[idx(m)];
        const Morphism& mo = t.morphism(m);
        if (v < 0 || v >= u.morphism_count() || u.morphism(v).src != a.objects[idx(mo.src)] || u.morphism(v).dst != a.objects[idx(mo.dst)]) {
            fl.functor = false;
            fail("endpoints of " + t.describe(m));
            return fl;
        }
    }
    for (int o = 0; o < n && fl.functor; ++o)
        if (a.morphisms[idx(t.identity(o))] != u.identity(a.objects[idx(o)])) {
            fl.functor = false;
            fail("identity of " + t.S().describe(t.object(o)));
        }
    for (int psi = 0; psi < t.morphism_count() && fl.functor; ++psi)
        for (int phi : t.into(t.morphism(psi).src))
            if (a.morphisms[idx(t.compose(psi, phi))] != u.compose(a.morphisms[idx(psi)], a.morphisms[idx(phi)])) {
                fl.functor = false;
                fail("composition at " + t.describe(psi) + " o " + t.describe(phi));
                break;
            }
    if (!fl.functor) return fl;

    bool faithful = true;
    for (int p = 0; p < n && faithful; ++p)
        for (int q = 0; q < n && faithful; ++q) {
            std::set<int> img;
            for (int m : t.hom(p, q)) img.insert(a.morphisms[idx(m)]);
            const auto& target = u.hom(a.objects[idx(p)], a.objects[idx(q)]);
            if (img.size() != t.hom(p, q).size() || img.size() != target.size()) {
                faithful = false;
                fail("not fully faithful on " + t.S().describe(t.object(p)) + " -> " + t.S().describe(t.object(q)));
            }
        }
    bool dense = true;
    for (int y = 0; y < u.object_count() && dense; ++y) {
        bool hit = false;
        for (int o : a.objects)
            for (int m : u.hom(o, y))
                if (u.is_iso(m)) hit = true;
        if (!hit) {
            dense = false;
            fail("object " + u.S().describe(u.object(y)) + " not in the essential image");
        }
    }
    fl.equivalence = faithful && dense;

    fl.isotypical = true;
    for (int o = 0; o < n; ++o) {
        std::set<int> lhs, rhs;
        const int ao = a.objects[idx(o)];
        for (int x : mask_members(t.object(o))) lhs.insert(a.morphisms[idx(t.delta(o, o, x))]);
        for (int y : mask_members(u.object(ao))) rhs.insert(u.delta(ao, ao, y));
        if (lhs != rhs) {
            fl.isotypical = false;
            fail("not isotypical at " + t.S().describe(t.object(o)));
        }
    }
    fl.inclusion_preserving = true;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const int inc = t.inclusion(p, q);
            if (inc < 0) continue;
            if (a.morphisms[idx(inc)] != u.inclusion(a.objects[idx(p)], a.objects[idx(q)])) {
                fl.inclusion_preserving = false;
                fail("inclusion " + t.S().describe(t.object(p)) + " <= " + t.S().describe(t.object(q)) + " not preserved");
            }
        }
    const int ts = t.s_object(), us = u.s_object();
    fl.rigid = ts >= 0 && us >= 0 && t.S() == u.S();
    for (int x = 0; x < t.S().order() && fl.rigid; ++x)
        if (a.morphisms[idx(t.delta(ts, ts, x))] != u.delta(us, us, x)) fl.rigid = false;
    if (fl.isomorphism()) {
        std::set<int> objs(a.objects.begin(), a.objects.end());
        if (static_cast<int>(objs.size()) != n || n != u.object_count())
            throw TransporterError("isomorphism of transporter systems that is not bijective on objects");
    }
    return fl;
}

CategoryFunctor identity_functor(const TransporterSystem& t) {
    CategoryFunctor a;
    a.objects.resize(idx(t.object_count()));
    std::iota(a.objects.begin(), a.objects.end(), 0);
    a.morphisms.resize(idx(t.morphism_count()));
    std::iota(a.morphisms.begin(), a.morphisms.end(), 0);
    a.flags = classify_functor(a, t, t);
    return a;
}

CategoryFunctor compose_functors(const CategoryFunctor& outer, const CategoryFunctor& inner) {
    CategoryFunctor c;
    for (int o : inner.objects) c.objects.push_back(outer.objects[idx(o)]);
    for (int m : inner.morphisms) c.morphisms.push_back(outer.morphisms[idx(m)]);
    c.flags = outer.flags;
    c.flags.rigid = outer.flags.rigid && inner.flags.rigid;
    return c;
}

namespace {

CategoryFunctor inverse_functor(const CategoryFunctor& a) {
    CategoryFunctor b;
    b.objects.assign(a.objects.size(), -1);
    b.morphisms.assign(a.morphisms.size(), -1);
    for (std::size_t i = 0; i < a.objects.size(); ++i) b.objects[idx(a.objects[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < a.morphisms.size(); ++i) b.morphisms[idx(a.morphisms[i])] = static_cast<int>(i);
    b.flags = a.flags;
    return b;
}

}  // namespace

bool subscripts_correspond(const CategoryFunctor& a, const TransporterSystem& t, const TransporterSystem& u,
                           const TransporterLocality& lt, const TransporterLocality& lu, const CarrierMap& lambda, std::string* why) {
    const int ts = t.s_object(), us = u.s_object();
    for (Mask p : t.S().subgroups()) {
        std::set<int> lhs;
        for (int x : mask_members(p)) lhs.insert(a.morphisms[idx(t.delta(ts, ts, x))]);
        const Mask img = image_mask(lt.loc, lu.loc, lambda, p);
        for (Mask q : u.S().subgroups()) {
            std::set<int> rhs;
            for (int y : mask_members(q)) rhs.insert(u.delta(us, us, y));
            if ((lhs == rhs) != (img == q)) {
                if (why) *why = "subscripts disagree at " + t.S().describe(p) + " and " + u.S().describe(q);
                return false;
            }
        }
    }
    return true;
}

CarrierMap lambda_map(const CategoryFunctor& a, const TransporterSystem& t, const TransporterSystem& u, const TransporterLocality& lt,
                      const TransporterLocality& lu) {
    const FunctorFlags fl = classify_functor(a, t, u);
    if (!fl.isomorphism()) throw TransporterError("not an isomorphism of transporter systems: " + fl.witness);
    CarrierMap out(idx(lt.loc.size()), -1);
    for (int m = 0; m < t.morphism_count(); ++m) {
        if (!t.is_iso(m)) continue;
        const int c = lt.class_of[idx(m)];
        const int v = lu.class_of[idx(a.morphisms[idx(m)])];
        if (out[idx(c)] >= 0 && out[idx(c)] != v) throw TransporterError("Lambda not well-defined at " + t.describe(m));
        out[idx(c)] = v;
    }
    std::string why;
    if (!is_locality_isomorphism(lt.loc, lu.loc, out, &why)) throw TransporterError("Lambda(alpha) is not an isomorphism: " + why);
    if (!subscripts_correspond(a, t, u, lt, lu, out, &why)) throw TransporterError(why);
    return out;
}

CategoryFunctor functor_of_locality_iso(const CarrierMap& beta, const TransporterSystem& t, const TransporterSystem& u,
                                        const TransporterLocality& lt, const TransporterLocality& lu) {
    CategoryFunctor a;
    for (Mask p : t.objects()) {
        const int o = u.object_index(image_mask(lt.loc, lu.loc, beta, p));
        if (o < 0) throw TransporterError("beta does not map objects to objects");
        a.objects.push_back(o);
    }
    for (int m = 0; m < t.morphism_count(); ++m) {
        const Morphism& mo = t.morphism(m);
        // m = incl o m0 with m0 an isomorphism onto pi(m)(P).
        const int q0 = t.object_index(image_of(t.pi(m), t.object(mo.src)));
        const int m0 = q0 < 0 ? -1 : t.restriction(m, mo.src, q0);
        if (m0 < 0) throw TransporterError("no isomorphism factor for " + t.describe(m));
        const int target = lu.representative[idx(beta[idx(lt.class_of[idx(m0)])])];
        const int ap = a.objects[idx(mo.src)];
        if (!mask_subset(u.object(ap), u.object(u.morphism(target).src))) throw TransporterError("class image too small at " + t.describe(m));
        const int aq0 = u.object_index(image_of(u.pi(target), u.object(ap)));
        const int n0 = aq0 < 0 ? -1 : u.restriction(target, ap, aq0);
        const int img = n0 < 0 ? -1 : u.compose(u.inclusion(aq0, a.objects[idx(mo.dst)]), n0);
        if (img < 0) throw TransporterError("no image for " + t.describe(m));
        a.morphisms.push_back(img);
    }
    a.flags = classify_functor(a, t, u);
    return a;
}

namespace {

struct DirectSearch {
    const TransporterSystem& t;
    std::vector<int> sigma;
    std::vector<CategoryFunctor> found;

    struct State {
        std::vector<int> img;
        std::vector<char> used;
        std::vector<int> assigned;
    };

    bool assign(State& st, int m, int v, std::vector<int>& work) const {
        if (st.img[idx(m)] >= 0) return st.img[idx(m)] == v;
        const Morphism& mo = t.morphism(m);
        if (v < 0 || st.used[idx(v)] || t.morphism(v).src != sigma[idx(mo.src)] || t.morphism(v).dst != sigma[idx(mo.dst)]) return false;
        st.img[idx(m)] = v;
        st.used[idx(v)] = 1;
        st.assigned.push_back(m);
        work.push_back(m);
        return true;
    }
    bool propagate(State& st, std::vector<int>& work) const {
        while (!work.empty()) {
            const int m = work.back();
            work.pop_back();
            for (std::size_t i = 0; i < st.assigned.size(); ++i) {
                const int o = st.assigned[i];
                const int c1 = t.compose(o, m);
                if (c1 >= 0 && !assign(st, c1, t.compose(st.img[idx(o)], st.img[idx(m)]), work)) return false;
                const int c2 = t.compose(m, o);
                if (c2 >= 0 && !assign(st, c2, t.compose(st.img[idx(m)], st.img[idx(o)]), work)) return false;
            }
        }
        return true;
    }
    void run(State st) {
        int next = -1;
        for (int m = 0; m < t.morphism_count(); ++m)
            if (st.img[idx(m)] < 0) {
                next = m;
                break;
            }
        if (next < 0) {
            CategoryFunctor a{sigma, st.img, {}};
            a.flags = classify_functor(a, t, t);
            if (a.flags.isomorphism()) found.push_back(std::move(a));
            return;
        }
        const Morphism& mo = t.morphism(next);
        for (int v : t.hom(sigma[idx(mo.src)], sigma[idx(mo.dst)])) {
            if (st.used[idx(v)]) continue;
            State copy = st;
            std::vector<int> work;
            if (assign(copy, next, v, work) && propagate(copy, work)) run(std::move(copy));
        }
    }
};

}  // namespace

std::vector<CategoryFunctor> enumerate_aut_direct(const TransporterSystem& t) {
    const int n = t.object_count();
    if (n > kDirectFunctorObjectCap || t.morphism_count() > kDirectFunctorMorphismCap)
        throw EnumerationCapExceeded("direct functor enumeration is limited to " + std::to_string(kDirectFunctorObjectCap) + " objects and " +
                                     std::to_string(kDirectFunctorMorphismCap) + " morphisms");
    std::vector<int> sigma(idx(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    DirectSearch ds{t, {}, {}};
    do {
        bool ok = true;
        for (int o = 0; o < n; ++o)
            if (mask_size(t.object(o)) != mask_size(t.object(sigma[idx(o)]))) ok = false;
        if (!ok) continue;
        ds.sigma = sigma;
        DirectSearch::State st{std::vector<int>(idx(t.morphism_count()), -1), std::vector<char>(idx(t.morphism_count()), 0), {}};
        std::vector<int> work;
        for (int p = 0; p < n && ok; ++p)
            for (int q = 0; q < n && ok; ++q) {
                const int inc = t.inclusion(p, q);
                if (inc >= 0 && !ds.assign(st, inc, t.inclusion(sigma[idx(p)], sigma[idx(q)]), work)) ok = false;
            }
        if (ok && ds.propagate(st, work)) ds.run(std::move(st));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    std::sort(ds.found.begin(), ds.found.end());
    return ds.found;
}

std::vector<CategoryFunctor> aut_transporter(const TransporterSystem& t, const TransporterLocality& lt, std::size_t cap) {
    std::vector<CategoryFunctor> out;
    for (const auto& beta : enumerate_aut(lt.loc, cap)) {
        CategoryFunctor a = functor_of_locality_iso(beta, t, t, lt, lt);
        if (!a.flags.isomorphism()) throw TransporterError("Lambda^-1 of an automorphism is not an isomorphism: " + a.flags.witness);
        if (lambda_map(a, t, t, lt, lt) != beta) throw TransporterError("Lambda does not invert its preimage");
        out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CategoryFunctor conjugation_functor(const TransporterSystem& t, int gamma) {
    const int s = t.s_object();
    if (s < 0 || t.morphism(gamma).src != s || t.morphism(gamma).dst != s) throw TransporterError("gamma must lie in Aut_T(S)");
    CategoryFunctor a;
    std::vector<int> restricted;
    for (int o = 0; o < t.object_count(); ++o) {
        const int c = t.object_index(image_of(t.pi(gamma), t.object(o)));
        if (c < 0) throw TransporterError("conjugate of an object is not an object");
        a.objects.push_back(c);
        restricted.push_back(t.restriction(gamma, o, c));
    }
    for (int m = 0; m < t.morphism_count(); ++m) {
        const Morphism& mo = t.morphism(m);
        a.morphisms.push_back(t.compose(t.compose(restricted[idx(mo.dst)], m), t.inverse(restricted[idx(mo.src)])));
    }
    a.flags = classify_functor(a, t, t);
    return a;
}

std::vector<CategoryFunctor> inner_auts(const TransporterSystem& t) {
    std::set<CategoryFunctor> out;
    for (int g : t.aut(t.s_object())) out.insert(conjugation_functor(t, g));
    return {out.begin(), out.end()};
}

std::vector<int> AutGroupView::from_morphism(const TransporterSystem&, std::span<const int> ids) const {
    std::vector<int> r;
    for (int m : ids) {
        auto it = std::find(to_morphism.begin(), to_morphism.end(), m);
        r.push_back(it == to_morphism.end() ? -1 : static_cast<int>(it - to_morphism.begin()));
    }
    return r;
}

AutGroupView aut_group(const TransporterSystem& t, int p) {
    const auto& a = t.aut(p);
    const int n = static_cast<int>(a.size());
    std::map<int, int> pos;
    for (int i = 0; i < n; ++i) pos[a[idx(i)]] = i;
    // phi -> (i -> position of a_i o phi) is an isomorphism onto a regular permutation group.
    std::vector<Perm> perms;
    for (int phi : a) {
        Perm pm(idx(n));
        for (int i = 0; i < n; ++i) pm[idx(i)] = pos.at(t.compose(a[idx(i)], phi));
        perms.push_back(std::move(pm));
    }
    AutGroupView v;
    v.group = Group::generate(n, perms);
    const int id_pos = pos.at(t.identity(p));
    for (int g = 0; g < v.group.order(); ++g) v.to_morphism.push_back(a[idx(v.group.element(g)[idx(id_pos)])]);
    return v;
}

bool is_linking_system(const TransporterSystem& t, std::string* why) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    if (!is_saturated(t.fusion()).passed()) return fail("fusion system not saturated");
    for (Mask q : centric_radical(t.fusion()))
        if (t.object_index(q) < 0) return fail("centric radical " + t.S().describe(q) + " is not an object");
    for (int o = 0; o < t.object_count(); ++o) {
        const AutGroupView v = aut_group(t, o);
        if (!is_characteristic_p(v.group, v.group.all(), t.p())) return fail("Aut_T(" + t.S().describe(t.object(o)) + ") is not of characteristic p");
    }
    return true;
}

Report verify_linking_elementary(const TransporterSystem& t, int max_factors) {
    Report r;
    std::string why;
    r.expect("linking-system", is_linking_system(t, &why), why);
    if (!r.passed()) return r;
    const TableGroup& s = t.S();
    const int so = t.s_object();
    std::set<int> kernel, central;
    const SMap id_s = smap_conjugation(s, s.all(), s.identity());
    for (int g : t.aut(so))
        if (t.pi(g) == id_s) kernel.insert(g);
    for (int z : mask_members(s.center())) central.insert(t.delta(so, so, z));
    r.expect("kernel-of-pi", kernel == central, "|ker pi_S| = " + std::to_string(kernel.size()));

    const auto cr = centric_radical(t.fusion());
    r.check("op-core");
    for (int o = 0; o < t.object_count(); ++o) {
        const AutGroupView v = aut_group(t, o);
        std::vector<int> core;
        for (int g : p_core(v.group, v.group.all(), t.p())) core.push_back(v.to_morphism[idx(g)]);
        std::sort(core.begin(), core.end());
        std::vector<int> dp;
        for (int x : mask_members(t.object(o))) dp.push_back(t.delta(o, o, x));
        std::sort(dp.begin(), dp.end());
        const bool in_cr = std::find(cr.begin(), cr.end(), t.object(o)) != cr.end();
        r.expect("op-core", (core == dp) == in_cr, s.describe(t.object(o)));
    }

    // Restrictions of automorphisms of fully normalized centric radicals.
    std::vector<std::vector<int>> gens_from(idx(t.object_count()));
    std::set<int> gens;
    for (Mask rm : cr) {
        if (!t.fusion().is_fully_normalized(rm)) continue;
        const int ro = t.object_index(rm);
        for (int g : t.aut(ro))
            for (int a = 0; a < t.object_count(); ++a) {
                if (!mask_subset(t.object(a), rm)) continue;
                const Mask img = image_of(t.pi(g), t.object(a));
                for (int b = 0; b < t.object_count(); ++b) {
                    if (!mask_subset(img, t.object(b)) || !mask_subset(t.object(b), rm)) continue;
                    const int res = t.restriction(g, a, b);
                    if (res >= 0 && gens.insert(res).second) gens_from[idx(a)].push_back(res);
                }
            }
    }
    std::vector<int> depth(idx(t.morphism_count()), -1);
    std::vector<int> frontier(gens.begin(), gens.end());
    for (int g : frontier) depth[idx(g)] = 1;
    for (int d = 2; d <= max_factors && !frontier.empty(); ++d) {
        std::vector<int> next;
        for (int m : frontier)
            for (int g : gens_from[idx(t.morphism(m).dst)]) {
                const int c = t.compose(g, m);
                if (depth[idx(c)] < 0) {
                    depth[idx(c)] = d;
                    next.push_back(c);
                }
            }
        frontier = std::move(next);
    }
    r.check("alperin-factorization");
    int deepest = 0;
    for (int m = 0; m < t.morphism_count(); ++m) {
        r.expect("alperin-factorization", depth[idx(m)] > 0, t.describe(m));
        deepest = std::max(deepest, depth[idx(m)]);
    }
    r.note("factor_generators", gens.size());
    r.note("max_factors_used", deepest);
    return r;
}

Report verify_exact_sequence(const TransporterSystem& t, const TransporterLocality& lt, OutTyp* out, std::size_t cap) {
    std::string why;
    if (!is_linking_system(t, &why)) throw TransporterError("not a linking system: " + why);
    Report r;
    const auto auts = aut_transporter(t, lt, cap);
    const std::set<CategoryFunctor> aut_set(auts.begin(), auts.end());
    const int so = t.s_object();
    const auto& as = t.aut(so);
    std::map<int, CategoryFunctor> c;
    for (int g : as) c.emplace(g, conjugation_functor(t, g));
    const CategoryFunctor id = identity_functor(t);

    r.check("conjugation-homomorphism");
    for (int g : as)
        for (int h : as) r.expect("conjugation-homomorphism", c.at(t.compose(g, h)) == compose_functors(c.at(g), c.at(h)), t.describe(g) + " o " + t.describe(h));
    std::set<int> kernel, center;
    for (int g : as)
        if (c.at(g) == id) kernel.insert(g);
    const Mask z = fusion_center(t.fusion());
    for (int x : mask_members(z)) center.insert(t.delta(so, so, x));
    r.expect("kernel", kernel == center, "|ker| = " + std::to_string(kernel.size()) + ", |Z(F)| = " + std::to_string(center.size()));

    std::set<CategoryFunctor> inner;
    r.check("inner-in-aut");
    for (const auto& [g, cg] : c) {
        r.expect("inner-in-aut", cg.flags.isomorphism() && aut_set.count(cg) > 0, t.describe(g));
        inner.insert(cg);
    }
    // alpha c_gamma alpha^-1 = c_{alpha(gamma)}, so the inner automorphisms form a normal subgroup.
    r.check("inner-normal");
    for (const auto& a : auts) {
        const CategoryFunctor ai = inverse_functor(a);
        for (const auto& [g, cg] : c)
            r.expect("inner-normal", compose_functors(compose_functors(a, cg), ai) == c.at(a.morphisms[idx(g)]), t.describe(g));
    }
    std::set<std::set<CategoryFunctor>> cosets;
    for (const auto& a : auts) {
        std::set<CategoryFunctor> coset;
        for (const auto& i : inner) coset.insert(compose_functors(a, i));
        cosets.insert(std::move(coset));
    }
    OutTyp o;
    o.aut_order = auts.size();
    o.inner_order = inner.size();
    o.out_order = cosets.size();
    o.aut_s_order = as.size();
    o.center_order = center.size();
    r.expect("cosets-partition", o.out_order * o.inner_order == o.aut_order, "cosets do not partition Aut(T)");
    r.expect("out-order", o.out_order * o.aut_s_order == o.aut_order * o.center_order,
             "|Out_typ| = " + std::to_string(o.out_order) + " but |Aut(T)| |Z(F)| / |Aut_T(S)| differs");
    r.note("aut_order", o.aut_order);
    r.note("inner_order", o.inner_order);
    r.note("out_typ_order", o.out_order);
    r.note("aut_s_order", o.aut_s_order);
    r.note("center_order", o.center_order);
    if (out) *out = o;
    return r;
}

OutTyp out_typ(const TransporterSystem& t, const TransporterLocality& lt, std::size_t cap) {
    OutTyp o;
    const Report r = verify_exact_sequence(t, lt, &o, cap);
    if (!r.passed()) throw TransporterError("exact sequence fails: " + r.to_markdown("out_typ"));
    return o;
}

}  // namespace loclab
