#include "loclab/fusion.hpp"

#include <algorithm>
#include <deque>

namespace loclab {

Mask smap_domain(const SMap& f) {
    Mask m = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] >= 0) m |= mask_bit(static_cast<int>(i));
    return m;
}

Mask smap_image(const SMap& f) {
    Mask m = 0;
    for (auto y : f)
        if (y >= 0) m |= mask_bit(y);
    return m;
}

SMap smap_restrict(const SMap& f, Mask to) {
    SMap r(f.size(), -1);
    for (int x : mask_members(to)) r[static_cast<std::size_t>(x)] = f[static_cast<std::size_t>(x)];
    return r;
}

SMap smap_inverse(const SMap& f) {
    SMap r(f.size(), -1);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] >= 0) r[static_cast<std::size_t>(f[i])] = static_cast<std::int8_t>(i);
    return r;
}

SMap smap_compose(const SMap& outer, const SMap& inner) {
    SMap r(inner.size(), -1);
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner[i] >= 0) r[i] = outer[static_cast<std::size_t>(inner[i])];
    return r;
}

SMap smap_conjugation(const TableGroup& s, Mask domain, int g) {
    SMap r(static_cast<std::size_t>(s.order()), -1);
    for (int x : mask_members(domain)) r[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(s.conj(x, g));
    return r;
}

bool smap_is_injective_hom(const TableGroup& s, const SMap& f) {
    Mask d = smap_domain(f);
    if (!s.is_subgroup(d)) return false;
    auto mem = mask_members(d);
    for (int a : mem)
        for (int b : mem) {
            int fa = f[static_cast<std::size_t>(a)], fb = f[static_cast<std::size_t>(b)];
            int fab = f[static_cast<std::size_t>(s.mul(a, b))];
            if (fab < 0 || s.mul(fa, fb) != fab) return false;
        }
    return mask_size(smap_image(f)) == mask_size(d);
}

FusionSystem FusionSystem::from_explicit(std::shared_ptr<const TableGroup> s, Mask base, int p, const std::vector<SMap>& isos) {
    FusionSystem f;
    f.s_ = std::move(s);
    f.base_ = base;
    f.p_ = p;
    f.subgroups_ = f.s_->subgroups_of(base);
    for (Mask q : f.subgroups_) f.isos_[q];
    for (const auto& m : isos) f.isos_[smap_domain(m)].insert(m);
    return f;
}

FusionSystem FusionSystem::generate(std::shared_ptr<const TableGroup> s, Mask base, int p, const std::vector<SMap>& maps) {
    FusionSystem f;
    f.s_ = s;
    f.base_ = base;
    f.p_ = p;
    f.subgroups_ = s->subgroups_of(base);
    for (Mask q : f.subgroups_) f.isos_[q];
    std::map<Mask, std::set<SMap>> into;
    std::deque<SMap> work;
    auto add = [&](const SMap& m) {
        if (f.isos_[smap_domain(m)].insert(m).second) {
            into[smap_image(m)].insert(m);
            work.push_back(m);
        }
    };
    for (Mask q : f.subgroups_)
        for (int g : mask_members(base)) add(smap_conjugation(*s, q, g));
    for (const auto& m : maps) {
        if (!smap_is_injective_hom(*s, m) || !mask_subset(smap_domain(m), base) || !mask_subset(smap_image(m), base))
            throw std::invalid_argument("generator is not an injective homomorphism between subgroups of the base");
        add(m);
    }
    while (!work.empty()) {
        SMap m = work.front();
        work.pop_front();
        const Mask d = smap_domain(m);
        const Mask im = smap_image(m);
        add(smap_inverse(m));
        for (Mask r : f.subgroups_)
            if (r != d && mask_subset(r, d)) add(smap_restrict(m, r));
        std::vector<SMap> after(f.isos_[im].begin(), f.isos_[im].end());
        for (const auto& o : after) add(smap_compose(o, m));
        std::vector<SMap> before(into[d].begin(), into[d].end());
        for (const auto& i : before) add(smap_compose(m, i));
    }
    return f;
}

const std::set<SMap>& FusionSystem::isos_from(Mask p) const {
    static const std::set<SMap> empty;
    auto it = isos_.find(p);
    return it == isos_.end() ? empty : it->second;
}

std::vector<SMap> FusionSystem::hom(Mask p, Mask q) const {
    std::vector<SMap> r;
    for (const auto& m : isos_from(p))
        if (mask_subset(smap_image(m), q)) r.push_back(m);
    return r;
}

std::vector<SMap> FusionSystem::aut_base(Mask p) const {
    std::set<SMap> r;
    for (int g : mask_members(s_->normalizer(base_, p))) r.insert(smap_conjugation(*s_, p, g));
    return {r.begin(), r.end()};
}

bool FusionSystem::contains(const SMap& f) const { return isos_from(smap_domain(f)).count(f) > 0; }

std::vector<Mask> FusionSystem::conjugacy_class(Mask p) const {
    std::set<Mask> r;
    for (const auto& m : isos_from(p)) r.insert(smap_image(m));
    return {r.begin(), r.end()};
}

std::vector<std::vector<Mask>> FusionSystem::classes() const {
    std::vector<std::vector<Mask>> out;
    std::set<Mask> seen;
    for (Mask q : subgroups_) {
        if (seen.count(q)) continue;
        auto c = conjugacy_class(q);
        for (Mask x : c) seen.insert(x);
        out.push_back(c);
    }
    return out;
}

bool FusionSystem::is_fully_normalized(Mask p) const {
    const int mine = mask_size(s_->normalizer(base_, p));
    for (Mask q : conjugacy_class(p))
        if (mask_size(s_->normalizer(base_, q)) > mine) return false;
    return true;
}

bool FusionSystem::is_fully_centralized(Mask p) const {
    const int mine = mask_size(s_->centralizer(base_, p));
    for (Mask q : conjugacy_class(p))
        if (mask_size(s_->centralizer(base_, q)) > mine) return false;
    return true;
}

std::size_t FusionSystem::iso_count() const {
    std::size_t n = 0;
    for (const auto& [k, v] : isos_) n += v.size();
    return n;
}

std::vector<SMap> FusionSystem::all_isos() const {
    std::vector<SMap> r;
    for (const auto& [k, v] : isos_) r.insert(r.end(), v.begin(), v.end());
    return r;
}

bool operator==(const FusionSystem& a, const FusionSystem& b) {
    return a.base_ == b.base_ && *a.s_ == *b.s_ && a.isos_ == b.isos_;
}

namespace {

Mask members_to_mask(const Subgroup& s, const Subgroup& members) {
    Mask m = 0;
    for (int x : members) {
        auto it = std::lower_bound(s.begin(), s.end(), x);
        if (it == s.end() || *it != x) throw std::invalid_argument("subgroup not inside S");
        m |= mask_bit(static_cast<int>(it - s.begin()));
    }
    return m;
}

}  // namespace

FusionSystem fusion_of_group(const Group& m, const Subgroup& g_members, const Subgroup& s_members, const Subgroup& t_members, int p) {
    auto s = std::make_shared<const TableGroup>(TableGroup::from_subgroup(m, s_members));
    const Mask base = members_to_mask(s_members, t_members);
    std::vector<SMap> isos;
    for (Mask q : s->subgroups_of(base)) {
        for (int g : g_members) {
            SMap f(s_members.size(), -1);
            bool ok = true;
            for (int x : mask_members(q)) {
                int y = m.conj(s_members[static_cast<std::size_t>(x)], g);
                auto it = std::lower_bound(s_members.begin(), s_members.end(), y);
                if (it == s_members.end() || *it != y || !mask_has(base, static_cast<int>(it - s_members.begin()))) {
                    ok = false;
                    break;
                }
                f[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(it - s_members.begin());
            }
            if (ok) isos.push_back(std::move(f));
        }
    }
    return FusionSystem::from_explicit(s, base, p, isos);
}

std::shared_ptr<const TableGroup> share_s(const Locality& l) { return std::make_shared<const TableGroup>(l.S()); }

FusionSystem fusion_of_locality(const Locality& l) {
    std::vector<SMap> gens;
    const Mask all = l.S().all();
    for (Mask q : l.objects()) {
        for (int g : n_l(l, q, all)) {
            SMap f(static_cast<std::size_t>(l.S().order()), -1);
            for (int x : mask_members(q)) f[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(l.s_index(*l.pg().conjugate(l.s_elem(x), g)));
            gens.push_back(std::move(f));
        }
    }
    return FusionSystem::generate(share_s(l), all, l.p(), gens);
}

Report is_saturated(const FusionSystem& f) {
    Report r;
    const TableGroup& s = f.S();
    const Mask base = f.base();
    r.check("fully-automized");
    r.check("receptive");
    for (Mask p : f.subgroups()) {
        if (!f.is_fully_normalized(p)) continue;
        const auto autf = f.aut(p);
        const auto auts = f.aut_base(p);
        const std::size_t index = autf.size() / auts.size();
        if (autf.size() % auts.size() != 0 || index % static_cast<std::size_t>(f.p()) == 0)
            r.fail("fully-automized", s.describe(p));
        else
            r.pass("fully-automized");
        const std::set<SMap> auts_set(auts.begin(), auts.end());
        for (Mask q : f.conjugacy_class(p)) {
            for (const auto& phi : f.hom(q, p)) {
                if (smap_image(phi) != p) continue;
                const SMap phi_inv = smap_inverse(phi);
                Mask n_phi = 0;
                for (int g : mask_members(s.normalizer(base, q))) {
                    SMap c = smap_compose(phi, smap_compose(smap_conjugation(s, q, g), phi_inv));
                    if (auts_set.count(c)) n_phi |= mask_bit(g);
                }
                bool extends = false;
                for (const auto& ext : f.isos_from(n_phi))
                    if (smap_restrict(ext, q) == phi) {
                        extends = true;
                        break;
                    }
                if (extends)
                    r.pass("receptive");
                else
                    r.fail("receptive", "isomorphism " + s.describe(q) + " -> " + s.describe(p) + " does not extend to " + s.describe(n_phi));
            }
        }
    }
    return r;
}

Group automizer_group(const FusionSystem& f, Mask p) {
    const auto mem = mask_members(p);
    std::vector<int> pos(static_cast<std::size_t>(f.S().order()), -1);
    for (std::size_t i = 0; i < mem.size(); ++i) pos[static_cast<std::size_t>(mem[i])] = static_cast<int>(i);
    std::vector<Perm> gens;
    for (const auto& a : f.aut(p)) {
        Perm q(mem.size());
        for (std::size_t i = 0; i < mem.size(); ++i) q[i] = pos[static_cast<std::size_t>(a[static_cast<std::size_t>(mem[i])])];
        gens.push_back(std::move(q));
    }
    return Group::generate(static_cast<int>(mem.size()), gens);
}

bool is_centric(const FusionSystem& f, Mask p) {
    for (Mask q : f.conjugacy_class(p))
        if (!mask_subset(f.S().centralizer(f.base(), q), q)) return false;
    return true;
}

bool is_radical(const FusionSystem& f, Mask p) {
    Group a = automizer_group(f, p);
    const auto mem = mask_members(p);
    std::vector<int> pos(static_cast<std::size_t>(f.S().order()), -1);
    for (std::size_t i = 0; i < mem.size(); ++i) pos[static_cast<std::size_t>(mem[i])] = static_cast<int>(i);
    std::set<int> inner;
    for (int g : mem) {
        Perm q(mem.size());
        for (std::size_t i = 0; i < mem.size(); ++i) q[i] = pos[static_cast<std::size_t>(f.S().conj(mem[i], g))];
        inner.insert(a.index_of(q));
    }
    Subgroup op = p_core(a, a.all(), f.p());
    return Subgroup(inner.begin(), inner.end()) == op;
}

FusionSystem normalizer_system(const FusionSystem& f, Mask q) {
    const TableGroup& s = f.S();
    const Mask n = s.normalizer(f.base(), q);
    std::vector<SMap> gens;
    for (Mask x : s.subgroups_of(n)) {
        if (!mask_subset(q, x)) continue;
        for (const auto& m : f.isos_from(x))
            if (smap_image(smap_restrict(m, q)) == q && mask_subset(smap_image(m), n)) gens.push_back(m);
    }
    return FusionSystem::generate(f.s_ptr(), n, f.p(), gens);
}

bool is_normal_subgroup_of_system(const FusionSystem& f, Mask r) {
    const TableGroup& s = f.S();
    if (!s.is_subgroup(r) || !mask_subset(r, f.base()) || !s.is_normal(f.base(), r)) return false;
    for (const auto& m : f.all_isos()) {
        const Mask d = smap_domain(m);
        const Mask dr = s.generated(d | r);
        bool found = false;
        for (const auto& e : f.isos_from(dr))
            if (smap_restrict(e, d) == m && smap_image(smap_restrict(e, r)) == r) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

Mask normal_core(const FusionSystem& f) {
    Mask join = mask_bit(f.S().identity());
    for (Mask r : f.subgroups())
        if (is_normal_subgroup_of_system(f, r)) join |= r;
    Mask core = f.S().generated(join);
    if (!is_normal_subgroup_of_system(f, core)) throw std::logic_error("join of normal subgroups is not normal");
    return core;
}

bool is_constrained(const FusionSystem& f) {
    const Mask core = normal_core(f);
    return mask_subset(f.S().centralizer(f.base(), core), core);
}

std::vector<SubgroupClass> classify_subgroups(const FusionSystem& f) {
    std::vector<SubgroupClass> out;
    std::map<Mask, bool> constrained_at;
    for (Mask p : f.subgroups()) {
        SubgroupClass c;
        c.subgroup = p;
        c.fully_normalized = f.is_fully_normalized(p);
        c.centric = is_centric(f, p);
        c.radical = is_radical(f, p);
        c.subcentric = true;
        for (Mask q : f.conjugacy_class(p)) {
            if (!f.is_fully_normalized(q)) continue;
            auto it = constrained_at.find(q);
            if (it == constrained_at.end()) it = constrained_at.emplace(q, is_constrained(normalizer_system(f, q))).first;
            if (!it->second) c.subcentric = false;
        }
        out.push_back(c);
    }
    return out;
}

std::vector<Mask> centric_radical(const FusionSystem& f) {
    std::vector<Mask> r;
    for (Mask p : f.subgroups())
        if (is_centric(f, p) && is_radical(f, p)) r.push_back(p);
    return r;
}

std::vector<Mask> centric(const FusionSystem& f) {
    std::vector<Mask> r;
    for (Mask p : f.subgroups())
        if (is_centric(f, p)) r.push_back(p);
    return r;
}

std::vector<Mask> subcentric(const FusionSystem& f) {
    std::vector<Mask> r;
    for (const auto& c : classify_subgroups(f))
        if (c.subcentric) r.push_back(c.subgroup);
    return r;
}

std::vector<std::vector<int>> fusion_automorphisms(const FusionSystem& f) {
    if (f.base() != f.S().all()) throw std::invalid_argument("automorphisms are computed for systems over the whole ambient group");
    std::vector<std::vector<int>> out;
    const auto isos = f.all_isos();
    for (const auto& a : f.S().automorphisms()) {
        SMap am(a.size()), ai(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) am[i] = static_cast<std::int8_t>(a[i]);
        ai = smap_inverse(am);
        bool ok = true;
        for (const auto& m : isos) {
            SMap c = smap_compose(am, smap_compose(m, smap_restrict(ai, smap_image(smap_restrict(am, smap_domain(m))))));
            if (!f.contains(c)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(a);
    }
    return out;
}

Mask fusion_center(const FusionSystem& f) {
    Mask z = 0;
    const Mask zs = f.S().centralizer(f.base(), f.base());
    const auto isos = f.all_isos();
    for (int x : mask_members(zs)) {
        bool fixed = true;
        for (const auto& m : isos)
            if (m[static_cast<std::size_t>(x)] >= 0 && m[static_cast<std::size_t>(x)] != x) {
                fixed = false;
                break;
            }
        if (fixed) z |= mask_bit(x);
    }
    return z;
}

std::string to_string(FusionMapKind k) {
    switch (k) {
        case FusionMapKind::NotMorphism: return "not-a-morphism";
        case FusionMapKind::Morphism: return "morphism";
        case FusionMapKind::Epimorphism: return "epimorphism";
        case FusionMapKind::Isomorphism: return "isomorphism";
    }
    return "unknown";
}

FusionMapKind classify_fusion_map(const std::vector<int>& alpha, const FusionSystem& f, const FusionSystem& g) {
    const TableGroup& s = f.S();
    const TableGroup& t = g.S();
    const auto base = mask_members(f.base());
    for (int a : base)
        for (int b : base) {
            int x = alpha[static_cast<std::size_t>(a)], y = alpha[static_cast<std::size_t>(b)];
            if (x < 0 || y < 0 || !mask_has(g.base(), x) || alpha[static_cast<std::size_t>(s.mul(a, b))] != t.mul(x, y))
                return FusionMapKind::NotMorphism;
        }
    auto image_of = [&](Mask m) {
        Mask r = 0;
        for (int x : mask_members(m)) r |= mask_bit(alpha[static_cast<std::size_t>(x)]);
        return r;
    };
    // Induced map on alpha(P), or empty when ill-defined.
    auto induced = [&](const SMap& m) -> SMap {
        SMap r(static_cast<std::size_t>(t.order()), -1);
        for (int x : mask_members(smap_domain(m))) {
            auto ax = static_cast<std::size_t>(alpha[static_cast<std::size_t>(x)]);
            auto v = static_cast<std::int8_t>(alpha[static_cast<std::size_t>(m[static_cast<std::size_t>(x)])]);
            if (r[ax] >= 0 && r[ax] != v) return {};
            r[ax] = v;
        }
        return r;
    };
    for (const auto& m : f.all_isos()) {
        SMap r = induced(m);
        if (r.empty() || !g.contains(r)) return FusionMapKind::NotMorphism;
    }
    if (image_of(f.base()) != g.base()) return FusionMapKind::Morphism;
    Mask ker = 0;
    for (int x : base)
        if (alpha[static_cast<std::size_t>(x)] == t.identity()) ker |= mask_bit(x);
    for (Mask p : f.subgroups()) {
        if (!mask_subset(ker, p)) continue;
        std::set<SMap> got;
        for (const auto& m : f.isos_from(p)) got.insert(induced(m));
        for (Mask q : f.subgroups()) {
            if (!mask_subset(ker, q)) continue;
            const Mask aq = image_of(q);
            for (const auto& target : g.hom(image_of(p), aq))
                if (!got.count(target)) return FusionMapKind::Morphism;
        }
    }
    return mask_size(ker) == 1 ? FusionMapKind::Isomorphism : FusionMapKind::Epimorphism;
}

bool is_f_closed(const FusionSystem& f, const std::vector<Mask>& delta, std::string* witness) {
    const std::set<Mask> in(delta.begin(), delta.end());
    auto fail = [&](const std::string& why) {
        if (witness) *witness = why;
        return false;
    };
    for (Mask p : delta) {
        if (!f.S().is_subgroup(p) || !mask_subset(p, f.base())) return fail(f.S().describe(p) + " is not a subgroup of the base");
        for (Mask q : f.conjugacy_class(p))
            if (!in.count(q)) return fail("conjugate " + f.S().describe(q) + " of " + f.S().describe(p) + " missing");
        for (Mask q : f.subgroups())
            if (mask_subset(p, q) && !in.count(q)) return fail("overgroup " + f.S().describe(q) + " of " + f.S().describe(p) + " missing");
    }
    return true;
}

bool is_invariant_set(const FusionSystem& f, const std::vector<Mask>& delta, std::string* witness) {
    const std::set<Mask> in(delta.begin(), delta.end());
    for (const auto& a : fusion_automorphisms(f))
        for (Mask p : delta) {
            Mask img = 0;
            for (int x : mask_members(p)) img |= mask_bit(a[static_cast<std::size_t>(x)]);
            if (!in.count(img)) {
                if (witness) *witness = f.S().describe(p) + " is moved to " + f.S().describe(img);
                return false;
            }
        }
    return true;
}

bool is_strongly_closed(const FusionSystem& f, Mask t) {
    for (const auto& m : f.all_isos())
        for (int x : mask_members(smap_domain(m) & t))
            if (!mask_has(t, m[static_cast<std::size_t>(x)])) return false;
    return true;
}

bool is_subsystem(const FusionSystem& f, const FusionSystem& e) {
    if (!(e.S() == f.S()) || !mask_subset(e.base(), f.base())) return false;
    for (const auto& m : e.all_isos())
        if (!f.contains(m)) return false;
    return true;
}

bool is_invariant_subsystem(const FusionSystem& f, const FusionSystem& e) {
    const Mask t = e.base();
    if (!is_strongly_closed(f, t) || !is_subsystem(f, e)) return false;
    const auto eisos = e.all_isos();
    for (const auto& phi : f.all_isos()) {
        const Mask d = smap_domain(phi);
        if (!mask_subset(d, t)) continue;
        const SMap phi_inv = smap_inverse(phi);
        for (const auto& psi : eisos) {
            if (!mask_subset(smap_domain(psi), d) || !mask_subset(smap_image(psi), d)) continue;
            SMap c = smap_compose(phi, smap_compose(psi, smap_restrict(phi_inv, smap_image(smap_restrict(phi, smap_domain(psi))))));
            if (!e.contains(c)) return false;
        }
    }
    return true;
}

}  // namespace loclab
