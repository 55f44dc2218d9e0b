#include "loclab/locality.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace loclab {

Mask SAction::image(int f, Mask p) const {
    Mask m = 0;
    const std::int8_t* row = img_.data() + idx(f, 0);
    for (; p; p &= p - 1) {
        const int y = row[std::countr_zero(p)];
        if (y < 0) throw LocalityError("conjugate of a subgroup outside S_f");
        m |= mask_bit(y);
    }
    return m;
}

ChainDomain::ChainDomain(std::shared_ptr<const SAction> action, std::vector<Mask> objects)
    : action_(std::move(action)), objects_(std::move(objects)) {
    std::sort(objects_.begin(), objects_.end());
}

bool ChainDomain::is_object(Mask m) const { return std::binary_search(objects_.begin(), objects_.end(), m); }

Mask ChainDomain::s_word(std::span<const int> w) const {
    Mask m = 0;
    if (w.empty()) return action_->s_order() == 64 ? ~Mask{0} : mask_bit(action_->s_order()) - 1;
    for (Mask left = action_->domain(w.front()); left; left &= left - 1) {
        const int x = std::countr_zero(left);
        int y = x;
        for (int f : w) {
            y = action_->image(f, y);
            if (y < 0) break;
        }
        if (y >= 0) m |= mask_bit(x);
    }
    return m;
}

bool ChainDomain::chain_from(Mask start, std::span<const int> w, std::vector<Mask>* out) const {
    Mask cur = start;
    if (out) out->assign(1, cur);
    for (int f : w) {
        if (!mask_subset(cur, action_->domain(f))) return false;
        cur = action_->image(f, cur);
        if (!is_object(cur)) return false;
        if (out) out->push_back(cur);
    }
    return true;
}

std::optional<std::vector<Mask>> ChainDomain::chain(std::span<const int> w) const {
    const Mask sw = s_word(w);
    std::vector<Mask> out;
    if (is_object(sw) && chain_from(sw, w, &out)) return out;
    if (overgroup_closed_) return std::nullopt;
    for (Mask p : objects_)
        if (p != sw && mask_subset(p, sw) && chain_from(p, w, &out)) return out;
    return std::nullopt;
}

bool ChainDomain::contains(std::span<const int> w) const {
    const Mask sw = s_word(w);
    if (is_object(sw) && chain_from(sw, w, nullptr)) return true;
    if (overgroup_closed_) return false;
    for (Mask p : objects_)
        if (p != sw && mask_subset(p, sw) && chain_from(p, w, nullptr)) return true;
    return false;
}

Locality::Locality(std::vector<int> inverse, int identity, std::vector<int> table, std::shared_ptr<const SAction> action,
                   int p, std::vector<int> s_elements, std::vector<Mask> objects, std::vector<std::string> names)
    : p_(p), s_elements_(std::move(s_elements)), objects_(std::move(objects)), action_(std::move(action)) {
    std::sort(objects_.begin(), objects_.end());
    auto domain = std::make_shared<ChainDomain>(action_, objects_);
    domain_ = domain;
    pg_ = PartialGroup(identity, std::move(inverse), std::move(table), domain_, std::move(names));
    const int n = pg_.size();
    const int m = static_cast<int>(s_elements_.size());
    if (m != action_->s_order()) throw LocalityError("S-action and S disagree in size");
    s_index_.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < m; ++i) s_index_[static_cast<std::size_t>(s_elements_[static_cast<std::size_t>(i)])] = i;
    std::vector<int> st(static_cast<std::size_t>(m * m));
    std::vector<std::string> snames;
    for (int i = 0; i < m; ++i) {
        snames.push_back(pg_.name(s_elements_[static_cast<std::size_t>(i)]));
        for (int j = 0; j < m; ++j) {
            int c = pg_.mul_or_neg(s_elements_[static_cast<std::size_t>(i)], s_elements_[static_cast<std::size_t>(j)]);
            if (c < 0 || s_index(c) < 0) throw LocalityError("S is not closed under the product");
            st[static_cast<std::size_t>(i * m + j)] = s_index(c);
        }
    }
    s_group_ = TableGroup(m, std::move(st), std::move(snames));
    bool closed = true;
    for (Mask p : objects_)
        for (Mask q : s_group_.subgroups())
            if (mask_subset(p, q) && !is_object(q)) closed = false;
    domain->set_overgroup_closed(closed);
}

std::vector<int> Locality::elements_of(Mask m) const {
    std::vector<int> r;
    for (int x : mask_members(m)) r.push_back(s_elem(x));
    std::sort(r.begin(), r.end());
    return r;
}

Mask Locality::mask_of(std::span<const int> elements) const {
    Mask m = 0;
    for (int f : elements) {
        if (s_index(f) < 0) throw LocalityError("element outside S");
        m |= mask_bit(s_index(f));
    }
    return m;
}

namespace {

Mask to_mask(std::span<const int> sorted_s, std::span<const int> members) {
    Mask m = 0;
    for (int x : members) {
        auto it = std::lower_bound(sorted_s.begin(), sorted_s.end(), x);
        if (it == sorted_s.end() || *it != x) throw LocalityError("subgroup is not contained in S");
        m |= mask_bit(static_cast<int>(it - sorted_s.begin()));
    }
    return m;
}

// Conjugation mask {x in S : x^g in S} computed in the ambient group.
Mask ambient_s_g(const Group& m, const Subgroup& s, int g) {
    Mask r = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (contains(s, m.conj(s[i], g))) r |= mask_bit(static_cast<int>(i));
    return r;
}

void check_objects(const Group& m, const Subgroup& s, const TableGroup& sg, const std::vector<Mask>& gamma) {
    std::set<Mask> g(gamma.begin(), gamma.end());
    if (!g.count(sg.all())) throw LocalityError("object set must contain S");
    for (Mask p : gamma) {
        if (!sg.is_subgroup(p)) throw LocalityError("object is not a subgroup of S");
        for (Mask q : sg.subgroups())
            if (mask_subset(p, q) && !g.count(q)) throw LocalityError("object set is not closed under overgroups in S");
        std::vector<int> pm;
        for (int x : mask_members(p)) pm.push_back(s[static_cast<std::size_t>(x)]);
        for (int x = 0; x < m.order(); ++x) {
            Subgroup c = conjugate_subgroup(m, pm, x);
            if (!is_subset(c, s)) continue;
            if (!g.count(to_mask(s, c))) throw LocalityError("object set is not closed under conjugation into S");
        }
    }
}

}  // namespace

Report verify_lgamma_carrier(const Group& m, const Subgroup& s, const std::vector<Subgroup>& gamma) {
    Report r;
    std::vector<Mask> gm;
    for (const auto& g : gamma) gm.push_back(to_mask(s, g));
    std::set<Mask> gs(gm.begin(), gm.end());
    for (int g = 0; g < m.order(); ++g) {
        Subgroup sg = intersect(s, conjugate_subgroup(m, s, g));
        bool first = gs.count(to_mask(s, sg)) > 0;
        bool second = false;
        for (const auto& p : gamma)
            if (is_subset(conjugate_subgroup(m, p, g), s)) second = true;
        if (first != second)
            r.fail("carrier-descriptions", "element " + m.name(g));
        else
            r.pass("carrier-descriptions");
    }
    return r;
}

Locality locality_from_group(const Group& m, int p, const Subgroup& s, const std::vector<Subgroup>& gamma) {
    if (!is_prime(p)) throw LocalityError("p must be prime");
    if (!is_subgroup(m, s) || static_cast<int>(s.size()) != p_part(static_cast<std::size_t>(m.order()), p))
        throw LocalityError("S is not a Sylow p-subgroup");
    TableGroup sg = TableGroup::from_subgroup(m, s);
    std::vector<Mask> gm;
    for (const auto& g : gamma) gm.push_back(to_mask(s, g));
    std::sort(gm.begin(), gm.end());
    gm.erase(std::unique(gm.begin(), gm.end()), gm.end());
    check_objects(m, s, sg, gm);
    std::set<Mask> gs(gm.begin(), gm.end());

    std::vector<int> carrier;
    for (int g = 0; g < m.order(); ++g)
        if (gs.count(ambient_s_g(m, s, g))) carrier.push_back(g);
    const int n = static_cast<int>(carrier.size());
    std::map<int, int> id;
    for (int i = 0; i < n; ++i) id[carrier[static_cast<std::size_t>(i)]] = i;

    auto action = std::make_shared<SAction>(n, static_cast<int>(s.size()));
    for (int f = 0; f < n; ++f)
        for (std::size_t x = 0; x < s.size(); ++x) {
            int y = m.conj(s[x], carrier[static_cast<std::size_t>(f)]);
            auto it = std::lower_bound(s.begin(), s.end(), y);
            if (it != s.end() && *it == y) action->set(f, static_cast<int>(x), static_cast<int>(it - s.begin()));
        }
    ChainDomain dom(action, gm);
    std::vector<int> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    std::vector<int> inverse(static_cast<std::size_t>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
        inverse[static_cast<std::size_t>(a)] = id.at(m.inv(carrier[static_cast<std::size_t>(a)]));
        names.push_back(m.name(carrier[static_cast<std::size_t>(a)]));
        for (int b = 0; b < n; ++b) {
            const int w[] = {a, b};
            if (!dom.contains(w)) continue;
            auto it = id.find(m.mul(carrier[static_cast<std::size_t>(a)], carrier[static_cast<std::size_t>(b)]));
            if (it == id.end()) throw LocalityError("product left the carrier");
            table[static_cast<std::size_t>(a * n + b)] = it->second;
        }
    }
    std::vector<int> s_ids;
    for (int x : s) s_ids.push_back(id.at(x));
    Locality l(std::move(inverse), id.at(m.identity()), std::move(table), action, p, std::move(s_ids), gm, std::move(names));
    l.labels = carrier;
    return l;
}

Restriction restrict(const Locality& parent, const std::vector<Mask>& delta_in) {
    std::vector<Mask> delta = delta_in;
    std::sort(delta.begin(), delta.end());
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    std::set<Mask> ds(delta.begin(), delta.end());
    const TableGroup& sg = parent.S();
    if (!ds.count(sg.all())) throw LocalityError("restriction objects must contain S");
    for (Mask p : delta) {
        if (!parent.is_object(p)) throw LocalityError("restriction objects must be objects of the parent");
        for (Mask q : sg.subgroups())
            if (mask_subset(p, q) && !ds.count(q)) throw LocalityError("restriction objects not overgroup-closed");
        for (int f = 0; f < parent.size(); ++f)
            if (mask_subset(p, parent.s_f(f)) && !ds.count(parent.act(f, p)))
                throw LocalityError("restriction objects not closed under conjugation");
    }
    std::vector<int> members;
    for (int f = 0; f < parent.size(); ++f)
        if (ds.count(parent.s_f(f))) members.push_back(f);
    return sub_locality(parent, members, delta);
}

Restriction sub_locality(const Locality& parent, std::span<const int> members, const std::vector<Mask>& delta) {
    Restriction r;
    r.from_parent.assign(static_cast<std::size_t>(parent.size()), -1);
    for (int f : members) {
        r.from_parent[static_cast<std::size_t>(f)] = static_cast<int>(r.to_parent.size());
        r.to_parent.push_back(f);
    }
    for (int x : parent.s_elements())
        if (r.from_parent[static_cast<std::size_t>(x)] < 0) throw LocalityError("sub-locality must contain S");
    const int n = static_cast<int>(r.to_parent.size());
    const int m = parent.S().order();
    auto action = std::make_shared<SAction>(n, m);
    for (int f = 0; f < n; ++f)
        for (int x = 0; x < m; ++x) action->set(f, x, parent.action().image(r.to_parent[static_cast<std::size_t>(f)], x));
    ChainDomain dom(action, delta);
    std::vector<int> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    std::vector<int> inverse(static_cast<std::size_t>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
        const int pa = r.to_parent[static_cast<std::size_t>(a)];
        inverse[static_cast<std::size_t>(a)] = r.from_parent[static_cast<std::size_t>(parent.pg().inverse(pa))];
        if (inverse[static_cast<std::size_t>(a)] < 0) throw LocalityError("sub-locality not closed under inversion");
        names.push_back(parent.pg().name(pa));
        for (int b = 0; b < n; ++b) {
            const int w[] = {a, b};
            if (!dom.contains(w)) continue;
            int c = parent.pg().mul_or_neg(pa, r.to_parent[static_cast<std::size_t>(b)]);
            if (c < 0 || r.from_parent[static_cast<std::size_t>(c)] < 0) throw LocalityError("restricted product undefined");
            table[static_cast<std::size_t>(a * n + b)] = r.from_parent[static_cast<std::size_t>(c)];
        }
    }
    std::vector<int> s_ids;
    for (int x : parent.s_elements()) s_ids.push_back(r.from_parent[static_cast<std::size_t>(x)]);
    r.loc = Locality(std::move(inverse), r.from_parent[static_cast<std::size_t>(parent.pg().identity())], std::move(table), action,
                     parent.p(), std::move(s_ids), delta, std::move(names));
    if (!parent.labels.empty())
        for (int f : r.to_parent) r.loc.labels.push_back(parent.labels[static_cast<std::size_t>(f)]);
    return r;
}

Locality relabel(const Locality& l, std::span<const int> perm) {
    const int n = l.size();
    std::vector<int> back(static_cast<std::size_t>(n));
    for (int f = 0; f < n; ++f) back[static_cast<std::size_t>(perm[static_cast<std::size_t>(f)])] = f;
    auto action = std::make_shared<SAction>(n, l.S().order());
    std::vector<int> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    std::vector<int> inverse(static_cast<std::size_t>(n));
    std::vector<std::string> names;
    for (int nf = 0; nf < n; ++nf) {
        const int f = back[static_cast<std::size_t>(nf)];
        inverse[static_cast<std::size_t>(nf)] = perm[static_cast<std::size_t>(l.pg().inverse(f))];
        names.push_back(l.pg().name(f));
        for (int x = 0; x < l.S().order(); ++x) action->set(nf, x, l.action().image(f, x));
        for (int ng = 0; ng < n; ++ng) {
            int c = l.pg().mul_or_neg(f, back[static_cast<std::size_t>(ng)]);
            if (c >= 0) table[static_cast<std::size_t>(nf * n + ng)] = perm[static_cast<std::size_t>(c)];
        }
    }
    std::vector<int> s_ids;
    for (int x : l.s_elements()) s_ids.push_back(perm[static_cast<std::size_t>(x)]);
    Locality r(std::move(inverse), perm[static_cast<std::size_t>(l.pg().identity())], std::move(table), action, l.p(),
               std::move(s_ids), l.objects(), std::move(names));
    if (!l.labels.empty())
        for (int nf = 0; nf < n; ++nf) r.labels.push_back(l.labels[static_cast<std::size_t>(back[static_cast<std::size_t>(nf)])]);
    return r;
}

Mask s_f_by_definition(const Locality& l, int f) {
    Mask m = 0;
    for (int x = 0; x < l.S().order(); ++x) {
        auto c = l.pg().conjugate(l.s_elem(x), f);
        if (c && l.in_s(*c)) m |= mask_bit(x);
    }
    return m;
}

std::optional<std::vector<Mask>> word_domain_check(const Locality& l, std::span<const int> w) {
    return l.chain_domain().chain(w);
}

std::vector<int> n_l(const Locality& l, Mask p, Mask q) {
    std::vector<int> r;
    for (int g = 0; g < l.size(); ++g) {
        bool ok = true;
        for (int x : mask_members(p)) {
            auto c = l.pg().conjugate(l.s_elem(x), g);
            if (!c || !l.in_s(*c) || !mask_has(q, l.s_index(*c))) {
                ok = false;
                break;
            }
        }
        if (ok) r.push_back(g);
    }
    return r;
}

std::vector<int> normalizer(const Locality& l, Mask p) {
    std::vector<int> r;
    for (int g : n_l(l, p, p))
        if (mask_size(p) == mask_size(l.act(g, p))) r.push_back(g);
    return r;
}

SubgroupView subgroup_view(const PartialGroup& pg, std::span<const int> members) {
    const int h = static_cast<int>(members.size());
    std::map<int, int> pos;
    for (int i = 0; i < h; ++i) pos[members[static_cast<std::size_t>(i)]] = i;
    std::vector<Perm> gens;
    for (int i = 0; i < h; ++i) {
        Perm p(static_cast<std::size_t>(h));
        for (int j = 0; j < h; ++j) {
            int c = pg.mul_or_neg(members[static_cast<std::size_t>(j)], members[static_cast<std::size_t>(i)]);
            auto it = pos.find(c);
            if (c < 0 || it == pos.end()) throw LocalityError("members do not form a subgroup");
            p[static_cast<std::size_t>(j)] = it->second;
        }
        gens.push_back(std::move(p));
    }
    SubgroupView v;
    v.group = Group::generate(h, gens, static_cast<std::size_t>(h) + 1);
    v.from_carrier.assign(static_cast<std::size_t>(pg.size()), -1);
    v.to_carrier.assign(static_cast<std::size_t>(h), -1);
    for (int i = 0; i < h; ++i) {
        int gi = v.group.index_of(gens[static_cast<std::size_t>(i)]);
        v.to_carrier[static_cast<std::size_t>(gi)] = members[static_cast<std::size_t>(i)];
        v.from_carrier[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = gi;
    }
    return v;
}

Report validate_locality(const Locality& l, int k) {
    Report r;
    const PartialGroup& pg = l.pg();
    const TableGroup& sg = l.S();
    const int n = l.size();
    const int p = l.p();
    const Mask all = sg.all();

    // S is a p-subgroup, maximal because it is Sylow in N_L(S).
    {
        bool ok = is_p_group(static_cast<std::size_t>(sg.order()), p) && is_subgroup(pg, l.s_elements(), std::min(k, 3));
        r.expect("S-is-p-subgroup", ok);
        auto nls = normalizer(l, all);
        bool sub = is_subgroup(pg, nls, std::min(k, 3));
        r.expect("N_L(S)-subgroup", sub);
        r.expect("S-maximal-p-subgroup", (nls.size() / static_cast<std::size_t>(sg.order())) % static_cast<std::size_t>(p) != 0,
                 "p divides |N_L(S):S|");
    }
    // Objects: subgroups containing S, overgroup closed, closed under conjugation.
    {
        std::set<Mask> ds(l.objects().begin(), l.objects().end());
        r.expect("S-object", ds.count(all) > 0);
        for (Mask q : l.objects()) {
            if (!sg.is_subgroup(q)) r.fail("objects-subgroups", l.describe(q));
            for (Mask o : sg.subgroups())
                if (mask_subset(q, o) && !ds.count(o)) r.fail("objects-overgroup-closed", l.describe(q) + " <= " + l.describe(o));
            for (int f = 0; f < n; ++f) {
                if (!mask_subset(q, l.s_f(f))) continue;
                if (!ds.count(l.act(f, q)))
                    r.fail("objects-conjugation-closed", l.describe(q) + " by " + pg.name(f));
                else
                    r.pass("objects-conjugation-closed");
            }
        }
        r.check("objects-subgroups");
        r.check("objects-overgroup-closed");
    }
    // Stored conjugation data equals the definitional one; binary table sits on D.
    for (int f = 0; f < n; ++f) {
        Mask def = s_f_by_definition(l, f);
        if (def != l.s_f(f)) {
            r.fail("S_f-definition", pg.name(f));
            continue;
        }
        bool vals = true;
        for (int x : mask_members(def)) {
            auto c = pg.conjugate(l.s_elem(x), f);
            if (!c || l.s_index(*c) != l.action().image(f, x)) vals = false;
        }
        r.expect("S_f-definition", vals, pg.name(f));
        r.expect("S_f-object", l.is_object(l.s_f(f)), pg.name(f));
        for (int g = 0; g < n; ++g) {
            const int w[] = {f, g};
            if (pg.in_domain(w) != (pg.mul_or_neg(f, g) >= 0)) r.fail("table-on-D", pg.word_name(w));
        }
    }
    r.check("table-on-D");
    // (a) N_L(P) subgroup, (b) c_g isomorphism N_L(P) -> N_L(P^g).
    for (Mask q : l.objects()) {
        auto nq = normalizer(l, q);
        r.expect("N_L(P)-subgroup", is_subgroup(pg, nq, std::min(k, 3)), l.describe(q));
        for (int g = 0; g < n; ++g) {
            if (!mask_subset(q, l.s_f(g))) continue;
            Mask qg = l.act(g, q);
            auto nqg = normalizer(l, qg);
            std::vector<int> img;
            bool ok = true;
            for (int x : nq) {
                auto c = pg.conjugate(x, g);
                if (!c) {
                    ok = false;
                    break;
                }
                img.push_back(*c);
            }
            if (ok) {
                for (std::size_t i = 0; i < nq.size() && ok; ++i)
                    for (std::size_t j = 0; j < nq.size() && ok; ++j) {
                        auto c = pg.mul(nq[i], nq[j]);
                        auto ci = pg.conjugate(*c, g);
                        auto d = pg.mul(img[i], img[j]);
                        ok = c && ci && d && *ci == *d;
                    }
                std::vector<int> sorted = img;
                std::sort(sorted.begin(), sorted.end());
                ok = ok && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && sorted == nqg;
            }
            r.expect("conjugation-iso-normalizers", ok, l.describe(q) + " by " + pg.name(g));
        }
    }
    // (c) S_g^g = S_{g^-1}; (d) c_g: D(g) -> D(g^-1) bijective.
    for (int g = 0; g < n; ++g) {
        const int gi = pg.inverse(g);
        r.expect("S_g^g=S_g^-1", l.act(g, l.s_f(g)) == l.s_f(gi), pg.name(g));
        auto dg = pg.conj_domain(g);
        auto dgi = pg.conj_domain(gi);
        std::vector<int> img;
        bool ok = dg.size() == dgi.size();
        for (int x : dg) {
            auto c = pg.conjugate(x, g);
            if (!c || !contains(dgi, *c) || pg.conjugate(*c, gi) != x) {
                ok = false;
                break;
            }
            img.push_back(*c);
        }
        std::sort(img.begin(), img.end());
        r.expect("conjugation-bijection-D(g)", ok && img == dgi, pg.name(g));
    }
    // (e) S_w <= S_{Pi(w)}; (f) S_w in Delta iff w in D, with S_w computed from products.
    auto definitional_s_word = [&](std::span<const int> w) {
        Mask m = 0;
        for (int x = 0; x < sg.order(); ++x) {
            int y = l.s_elem(x);
            bool ok = true;
            for (int f : w) {
                auto c = pg.conjugate(y, f);
                if (!c || !l.in_s(*c)) {
                    ok = false;
                    break;
                }
                y = *c;
            }
            if (ok) m |= mask_bit(x);
        }
        return m;
    };
    for_each_word(pg, k, [&](const WordVisit& v) {
        Mask sw = definitional_s_word(v.word);
        if (sw != l.s_word(v.word)) r.fail("S_w-definition", pg.word_name(v.word));
        if (l.is_object(sw) != v.in_domain)
            r.fail("S_w-in-Delta-iff-w-in-D", pg.word_name(v.word));
        else
            r.pass("S_w-in-Delta-iff-w-in-D");
        if (!v.in_domain) return;
        auto pw = pg.product(v.word);
        if (!pw || !mask_subset(sw, l.s_f(*pw)))
            r.fail("S_w<=S_Pi(w)", pg.word_name(v.word));
        else
            r.pass("S_w<=S_Pi(w)");
    });
    r.check("S_w-definition");
    // N_L(S) acts on both sides of L.
    for (int rr : normalizer(l, all)) {
        const int ri = pg.inverse(rr);
        for (int f = 0; f < n; ++f) {
            const int fr[] = {f, rr};
            const int rf[] = {rr, f};
            bool ok = pg.in_domain(fr) && pg.in_domain(rf);
            if (ok) {
                const int fr_p = *pg.mul(f, rr);
                ok = l.s_word(fr) == l.s_f(f) && l.s_f(fr_p) == l.s_f(f) && l.s_word(rf) == l.act(ri, l.s_f(f));
                auto fconj = pg.conjugate(f, rr);
                ok = ok && fconj && l.s_f(*fconj) == l.act(rr, l.s_f(f));
            }
            r.expect("N_L(S)-biset", ok, pg.name(f) + " with " + pg.name(rr));
        }
    }
    return r;
}

}  // namespace loclab
