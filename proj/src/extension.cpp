#include "loclab/extension.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace loclab {

namespace {

// Backtracking state for maps that must preserve inverses and D-pair products.
class HomSearch {
  public:
    HomSearch(const PartialGroup& src, const PartialGroup& tgt, bool injective, std::vector<std::vector<char>> allowed,
              std::vector<int> order, std::size_t cap)
        : src_(src), tgt_(tgt), injective_(injective), allowed_(std::move(allowed)), order_(std::move(order)), cap_(cap) {}

    std::vector<CarrierMap> run(const CarrierMap& partial) {
        State st;
        st.map.assign(static_cast<std::size_t>(src_.size()), -1);
        st.used.assign(static_cast<std::size_t>(tgt_.size()), 0);
        std::vector<int> queue;
        bool ok = assign(st, src_.identity(), tgt_.identity(), queue);
        for (std::size_t f = 0; f < partial.size() && ok; ++f)
            if (partial[f] >= 0) ok = assign(st, static_cast<int>(f), partial[f], queue);
        if (ok && propagate(st, queue)) descend(st);
        return std::move(out_);
    }

  private:
    struct State {
        CarrierMap map;
        std::vector<char> used;
        std::vector<int> assigned;
    };

    bool assign(State& st, int f, int t, std::vector<int>& queue) const {
        auto& cur = st.map[static_cast<std::size_t>(f)];
        if (cur >= 0) return cur == t;
        if (!allowed_.empty() && !allowed_[static_cast<std::size_t>(f)][static_cast<std::size_t>(t)]) return false;
        if (injective_ && st.used[static_cast<std::size_t>(t)]) return false;
        cur = t;
        st.used[static_cast<std::size_t>(t)] = 1;
        st.assigned.push_back(f);
        queue.push_back(f);
        return true;
    }

    bool propagate(State& st, std::vector<int>& queue) const {
        while (!queue.empty()) {
            const int a = queue.back();
            queue.pop_back();
            const int ta = st.map[static_cast<std::size_t>(a)];
            if (!assign(st, src_.inverse(a), tgt_.inverse(ta), queue)) return false;
            for (std::size_t i = 0; i < st.assigned.size(); ++i) {
                const int b = st.assigned[i];
                const int tb = st.map[static_cast<std::size_t>(b)];
                for (int dir = 0; dir < 2; ++dir) {
                    const int x = dir ? b : a, y = dir ? a : b;
                    const int tx = dir ? tb : ta, ty = dir ? ta : tb;
                    const int c = src_.mul_or_neg(x, y);
                    if (c < 0) continue;
                    const int tc = tgt_.mul_or_neg(tx, ty);
                    if (tc < 0 || !assign(st, c, tc, queue)) return false;
                }
            }
        }
        return true;
    }

    void descend(State& st) {
        int next = -1;
        for (int f : order_)
            if (st.map[static_cast<std::size_t>(f)] < 0) {
                next = f;
                break;
            }
        if (next < 0) {
            if (out_.size() >= cap_) throw EnumerationCapExceeded("more than " + std::to_string(cap_) + " maps");
            out_.push_back(st.map);
            return;
        }
        for (int t = 0; t < tgt_.size(); ++t) {
            State copy = st;
            std::vector<int> queue;
            if (assign(copy, next, t, queue) && propagate(copy, queue)) descend(copy);
        }
    }

    const PartialGroup& src_;
    const PartialGroup& tgt_;
    bool injective_;
    std::vector<std::vector<char>> allowed_;
    std::vector<int> order_;
    std::size_t cap_;
    std::vector<CarrierMap> out_;
};

std::vector<int> identity_order(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// S-index map induced by alpha on S, or empty when alpha does not send S into S~.
std::vector<int> s_part(const Locality& a, const Locality& b, const CarrierMap& alpha) {
    std::vector<int> beta(static_cast<std::size_t>(a.S().order()));
    for (int x = 0; x < a.S().order(); ++x) {
        const int t = alpha[static_cast<std::size_t>(a.s_elem(x))];
        if (t < 0 || b.s_index(t) < 0) return {};
        beta[static_cast<std::size_t>(x)] = b.s_index(t);
    }
    return beta;
}

Mask map_mask(const std::vector<int>& beta, Mask p) {
    Mask r = 0;
    for (int x : mask_members(p)) r |= mask_bit(beta[static_cast<std::size_t>(x)]);
    return r;
}

}  // namespace

std::vector<CarrierMap> search_homomorphisms(const PartialGroup& src, const PartialGroup& tgt, CarrierMap partial,
                                             bool injective, std::size_t cap) {
    partial.resize(static_cast<std::size_t>(src.size()), -1);
    HomSearch search(src, tgt, injective, {}, identity_order(src.size()), cap);
    return search.run(partial);
}

CarrierMap compose_maps(const CarrierMap& outer, const CarrierMap& inner) {
    CarrierMap r(inner.size(), -1);
    for (std::size_t i = 0; i < inner.size(); ++i)
        if (inner[i] >= 0) r[i] = outer[static_cast<std::size_t>(inner[i])];
    return r;
}

Mask image_mask(const Locality& a, const Locality& b, const CarrierMap& alpha, Mask p) {
    Mask r = 0;
    for (int x : mask_members(p)) {
        const int t = alpha[static_cast<std::size_t>(a.s_elem(x))];
        if (t < 0 || b.s_index(t) < 0) throw ExtensionError("map does not send S into S");
        r |= mask_bit(b.s_index(t));
    }
    return r;
}

bool is_rigid(const Locality& l, const CarrierMap& alpha) {
    for (int x : l.s_elements())
        if (alpha[static_cast<std::size_t>(x)] != x) return false;
    return true;
}

bool is_locality_isomorphism(const Locality& a, const Locality& b, const CarrierMap& alpha, std::string* why) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    const int n = a.size();
    if (b.size() != n || static_cast<int>(alpha.size()) != n) return fail("sizes differ");
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int t : alpha) {
        if (t < 0 || t >= n || hit[static_cast<std::size_t>(t)]) return fail("not a bijection");
        hit[static_cast<std::size_t>(t)] = 1;
    }
    if (a.S().order() != b.S().order()) return fail("S orders differ");
    const auto beta = s_part(a, b, alpha);
    if (beta.empty()) return fail("S is not mapped onto S~");
    std::set<Mask> objs;
    for (Mask p : a.objects()) objs.insert(map_mask(beta, p));
    if (objs != std::set<Mask>(b.objects().begin(), b.objects().end())) return fail("objects are not mapped onto objects");
    std::size_t pairs_a = 0, pairs_b = 0;
    for (int f = 0; f < n; ++f) {
        const int t = alpha[static_cast<std::size_t>(f)];
        if (alpha[static_cast<std::size_t>(a.pg().inverse(f))] != b.pg().inverse(t)) return fail("inverse of " + a.pg().name(f));
        const Mask sf = a.s_f(f);
        if (b.s_f(t) != map_mask(beta, sf)) return fail("S_f not preserved at " + a.pg().name(f));
        for (int x : mask_members(sf))
            if (beta[static_cast<std::size_t>(a.action().image(f, x))] != b.action().image(t, beta[static_cast<std::size_t>(x)]))
                return fail("conjugation action not preserved at " + a.pg().name(f));
        for (int g = 0; g < n; ++g) {
            const int c = a.pg().mul_or_neg(f, g);
            if (b.pg().mul_or_neg(f, g) >= 0) ++pairs_b;
            if (c < 0) continue;
            ++pairs_a;
            if (b.pg().mul_or_neg(t, alpha[static_cast<std::size_t>(g)]) != alpha[static_cast<std::size_t>(c)])
                return fail("product of " + a.pg().word_name(std::vector<int>{f, g}));
        }
    }
    if (pairs_a != pairs_b) return fail("domains of different size");
    return true;
}

std::vector<CarrierMap> enumerate_iso(const Locality& a, const Locality& b, std::size_t cap) {
    if (static_cast<std::size_t>(a.size()) > cap || static_cast<std::size_t>(b.size()) > cap)
        throw EnumerationCapExceeded("carrier larger than the enumeration cap " + std::to_string(cap));
    if (a.size() != b.size() || a.S().order() != b.S().order() || a.objects().size() != b.objects().size()) return {};
    const int n = a.size();
    const std::set<Mask> tobj(b.objects().begin(), b.objects().end());
    // Larger S_f first: those elements are pinned down soonest by the S-action.
    std::vector<int> order = identity_order(n);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return mask_size(a.s_f(x)) > mask_size(a.s_f(y)); });
    std::vector<CarrierMap> out;
    for (const auto& beta : isomorphisms(a.S(), b.S())) {
        bool objects_ok = true;
        for (Mask p : a.objects())
            if (!tobj.count(map_mask(beta, p))) objects_ok = false;
        if (!objects_ok) continue;
        std::vector<std::vector<char>> allowed(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
        bool empty_row = false;
        for (int f = 0; f < n; ++f) {
            const Mask want = map_mask(beta, a.s_f(f));
            bool any = false;
            for (int t = 0; t < n; ++t) {
                if (b.s_f(t) != want) continue;
                bool ok = true;
                for (int x : mask_members(a.s_f(f)))
                    if (beta[static_cast<std::size_t>(a.action().image(f, x))] != b.action().image(t, beta[static_cast<std::size_t>(x)])) {
                        ok = false;
                        break;
                    }
                if (ok) allowed[static_cast<std::size_t>(f)][static_cast<std::size_t>(t)] = any = true;
            }
            if (!any) empty_row = true;
        }
        if (empty_row) continue;
        CarrierMap partial(static_cast<std::size_t>(n), -1);
        for (int x = 0; x < a.S().order(); ++x) partial[static_cast<std::size_t>(a.s_elem(x))] = b.s_elem(beta[static_cast<std::size_t>(x)]);
        HomSearch search(a.pg(), b.pg(), true, std::move(allowed), order, std::numeric_limits<std::size_t>::max());
        for (auto& m : search.run(partial)) {
            std::string why;
            if (!is_locality_isomorphism(a, b, m, &why)) throw ExtensionError("search produced a non-isomorphism: " + why);
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CarrierMap> enumerate_aut(const Locality& l, std::size_t cap) { return enumerate_iso(l, l, cap); }

bool is_linking_locality(const Locality& l, std::string* why) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    FusionSystem f = fusion_of_locality(l);
    Report sat = is_saturated(f);
    if (!sat.passed()) return fail("fusion system is not saturated");
    for (Mask p : l.objects()) {
        SubgroupView v = subgroup_view(l.pg(), normalizer(l, p));
        if (!is_characteristic_p(v.group, v.group.all(), l.p())) return fail("N_L(" + l.describe(p) + ") is not of characteristic p");
    }
    const std::set<Mask> objs(l.objects().begin(), l.objects().end());
    for (Mask p : centric_radical(f))
        if (!objs.count(p)) return fail("centric radical " + l.describe(p) + " is not an object");
    return true;
}

std::vector<Mask> class_representatives(const FusionSystem& f, const std::vector<Mask>& members) {
    std::set<Mask> pending(members.begin(), members.end());
    std::vector<Mask> reps;
    while (!pending.empty()) {
        const Mask p = *pending.begin();
        Mask best = 0;
        bool found = false;
        for (Mask q : f.conjugacy_class(p)) {
            pending.erase(q);
            if (!found && f.is_fully_normalized(q)) {
                best = q;
                found = true;
            }
        }
        if (!found) throw ExtensionError("class without a fully normalized member");
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

ExtensionResult extend_hom(const ExtensionInput& in, int k, bool reverse_search) {
    if (!in.plus || !in.target) throw ExtensionError("missing localities");
    const Locality& lp = *in.plus;
    const Locality& lt = *in.target;
    const int n = lp.size();
    const std::set<Mask> delta(in.delta.begin(), in.delta.end());
    restrict(lp, in.delta);  // throws unless Delta is closed
    if (static_cast<int>(in.alpha.size()) != n) throw ExtensionError("alpha must be indexed by the carrier of L+");
    for (int f = 0; f < n; ++f)
        if ((in.alpha[static_cast<std::size_t>(f)] >= 0) != (delta.count(lp.s_f(f)) > 0))
            throw ExtensionError("alpha must be defined exactly on L at " + lp.pg().name(f));
    const Mask all = lp.S().all();
    const std::set<Mask> tobj(lt.objects().begin(), lt.objects().end());
    for (Mask p : lp.objects())
        if (!tobj.count(image_mask(lp, lt, in.alpha, p))) throw ExtensionError("object " + lp.describe(p) + " is not sent into the target objects");

    FusionSystem f = fusion_of_locality(lp);
    std::vector<Mask> outside;
    for (Mask p : lp.objects())
        if (!delta.count(p)) outside.push_back(p);
    for (Mask p : outside)
        if (!delta.count(lp.S().normalizer(all, p))) throw ExtensionError("N_S(" + lp.describe(p) + ") is not in Delta");

    std::map<Mask, Mask> rep_of;
    for (Mask q : in.reps) {
        if (delta.count(q) || !lp.is_object(q)) throw ExtensionError("representative " + lp.describe(q) + " is not in Delta+ \\ Delta");
        if (!f.is_fully_normalized(q)) throw ExtensionError("representative " + lp.describe(q) + " is not fully normalized");
        for (Mask p : f.conjugacy_class(q)) {
            if (rep_of.count(p)) throw ExtensionError("two representatives for the class of " + lp.describe(p));
            rep_of[p] = q;
        }
    }
    for (Mask p : outside)
        if (!rep_of.count(p)) throw ExtensionError("no representative for " + lp.describe(p));

    for (Mask q : in.reps) {
        auto it = in.alpha_q.find(q);
        if (it == in.alpha_q.end() || static_cast<int>(it->second.size()) != n) throw ExtensionError("missing alpha_Q for " + lp.describe(q));
        for (int g : normalizer(lp, q)) {
            const int v = it->second[static_cast<std::size_t>(g)];
            if (v < 0) throw ExtensionError("alpha_Q undefined on N_L+(Q)");
            const int a = in.alpha[static_cast<std::size_t>(g)];
            if (a >= 0 && a != v) throw ExtensionError("alpha_Q disagrees with alpha at " + lp.pg().name(g));
        }
    }

    // h_P: extremal element of N_{L+}(N_S(P), S) carrying P to its representative.
    std::map<Mask, int> h;
    for (Mask p : outside) {
        auto cands = n_l(lp, lp.S().normalizer(all, p), all);
        if (reverse_search) std::reverse(cands.begin(), cands.end());
        for (int g : cands)
            if (lp.act(g, p) == rep_of.at(p)) {
                h[p] = g;
                break;
            }
        if (!h.count(p)) throw ExtensionError("no conjugating element for " + lp.describe(p));
    }

    ExtensionResult res;
    res.gamma = in.alpha;
    const PartialGroup& pg = lp.pg();
    const PartialGroup& tg = lt.pg();
    for (int x = 0; x < n; ++x) {
        if (res.gamma[static_cast<std::size_t>(x)] >= 0) continue;
        const Mask p = lp.s_f(x);
        const Mask pf = lp.act(x, p);
        const Mask q = rep_of.at(p);
        const int hp = h.at(p), hpf = h.at(pf);
        auto g = pg.product({pg.inverse(hp), x, hpf});
        if (!g) throw ExtensionError("conjugated word not in D at " + pg.name(x));
        const int gq = in.alpha_q.at(q)[static_cast<std::size_t>(*g)];
        if (gq < 0) throw ExtensionError("conjugate of " + pg.name(x) + " is not in N_L+(Q)");
        auto t = tg.product({in.alpha[static_cast<std::size_t>(hp)], gq, tg.inverse(in.alpha[static_cast<std::size_t>(hpf)])});
        if (!t) throw ExtensionError("image word not in the target domain at " + pg.name(x));
        res.gamma[static_cast<std::size_t>(x)] = *t;
    }
    for (Mask q : in.reps)
        for (int g : normalizer(lp, q))
            if (res.gamma[static_cast<std::size_t>(g)] != in.alpha_q.at(q)[static_cast<std::size_t>(g)])
                throw ExtensionError("extension disagrees with alpha_Q at " + pg.name(g));

    res.hom = classify_map(pg, tg, res.gamma, k);
    CarrierMap fixed = in.alpha;
    for (Mask q : in.reps)
        for (int g : normalizer(lp, q)) fixed[static_cast<std::size_t>(g)] = in.alpha_q.at(q)[static_cast<std::size_t>(g)];
    std::size_t homs = 0;
    bool gamma_seen = false;
    for (const auto& m : search_homomorphisms(pg, tg, fixed, false)) {
        const bool same = m == res.gamma;
        if (same ? res.hom.kind != HomKind::NotHomomorphism : classify_map(pg, tg, m, k).kind != HomKind::NotHomomorphism) {
            ++homs;
            gamma_seen = gamma_seen || same;
        }
    }
    res.competitors = homs;
    res.unique = homs == 1 && gamma_seen;
    return res;
}

ExtensionResult extend_hom_linking(const Locality& plus, const std::vector<Mask>& delta, const Locality& target,
                                   const CarrierMap& alpha, int k) {
    Restriction small = restrict(plus, delta);
    std::string why;
    if (!is_linking_locality(plus, &why)) throw ExtensionError("L+ is not a linking locality: " + why);
    if (!is_linking_locality(small.loc, &why)) throw ExtensionError("L is not a linking locality: " + why);
    FusionSystem f = fusion_of_locality(plus);
    if (!(fusion_of_locality(small.loc) == f)) throw ExtensionError("L and L+ have different fusion systems");
    if (static_cast<int>(alpha.size()) != small.loc.size()) throw ExtensionError("alpha must be indexed by the carrier of L");

    // Current map on plus ids.
    CarrierMap cur(static_cast<std::size_t>(plus.size()), -1);
    for (int x = 0; x < small.loc.size(); ++x) cur[static_cast<std::size_t>(small.to_parent[static_cast<std::size_t>(x)])] = alpha[static_cast<std::size_t>(x)];
    std::set<Mask> have(delta.begin(), delta.end());
    ExtensionResult res;
    res.unique = true;
    while (have.size() < plus.objects().size()) {
        int top = 0;
        for (Mask p : plus.objects())
            if (!have.count(p)) top = std::max(top, mask_size(p));
        std::vector<Mask> layer;
        for (Mask p : plus.objects())
            if (!have.count(p) && mask_size(p) == top) layer.push_back(p);
        std::vector<Mask> star(have.begin(), have.end());
        star.insert(star.end(), layer.begin(), layer.end());
        Restriction rs = restrict(plus, star);
        const int m = rs.loc.size();
        ExtensionInput in;
        in.plus = &rs.loc;
        in.delta.assign(have.begin(), have.end());
        in.target = &target;
        in.alpha.assign(static_cast<std::size_t>(m), -1);
        for (int x = 0; x < m; ++x) in.alpha[static_cast<std::size_t>(x)] = cur[static_cast<std::size_t>(rs.to_parent[static_cast<std::size_t>(x)])];
        in.reps = class_representatives(f, layer);
        for (Mask q : in.reps) {
            CarrierMap aq(static_cast<std::size_t>(m), -1);
            for (int g : normalizer(rs.loc, q)) {
                if (!have.count(rs.loc.s_f(g))) throw ExtensionError("N_L*(" + plus.describe(q) + ") is not inside the smaller locality");
                aq[static_cast<std::size_t>(g)] = in.alpha[static_cast<std::size_t>(g)];
            }
            in.alpha_q[q] = std::move(aq);
        }
        ExtensionResult step = extend_hom(in, k);
        res.unique = res.unique && step.unique;
        res.competitors = std::max(res.competitors, step.competitors);
        for (int x = 0; x < m; ++x) cur[static_cast<std::size_t>(rs.to_parent[static_cast<std::size_t>(x)])] = step.gamma[static_cast<std::size_t>(x)];
        if (star.size() == plus.objects().size()) res.hom = step.hom;
        have.insert(layer.begin(), layer.end());
    }
    if (delta.size() == plus.objects().size()) {
        // Nothing to extend.
        res.hom = classify_map(plus.pg(), target.pg(), cur, k);
        res.competitors = 1;
    }
    res.gamma = std::move(cur);
    return res;
}

Report verify_iso_restriction(const Locality& plus, const std::vector<Mask>& delta, const Locality& tplus,
                              const std::vector<Mask>& tdelta, std::size_t cap) {
    Report r;
    Restriction rs = restrict(plus, delta);
    Restriction trs = restrict(tplus, tdelta);
    const auto big = enumerate_iso(plus, tplus, cap);
    const auto small = enumerate_iso(rs.loc, trs.loc, cap);
    const std::set<Mask> d(delta.begin(), delta.end()), td(tdelta.begin(), tdelta.end());
    const std::set<Mask> dp(plus.objects().begin(), plus.objects().end()), tdp(tplus.objects().begin(), tplus.objects().end());
    auto sends = [](const Locality& a, const Locality& b, const CarrierMap& al, const std::set<Mask>& from, const std::set<Mask>& to) {
        std::set<Mask> img;
        for (Mask p : from) img.insert(image_mask(a, b, al, p));
        return img == to;
    };
    std::vector<CarrierMap> big_sub, small_sub;
    for (const auto& a : big)
        if (sends(plus, tplus, a, d, td)) big_sub.push_back(a);
    // The small side acts on all of S, so Delta+ can be tested through S.
    for (const auto& a : small)
        if (sends(rs.loc, trs.loc, a, dp, tdp)) small_sub.push_back(a);
    r.note("iso_plus", big.size());
    r.note("iso_small", small.size());
    r.note("iso_plus_subscript", big_sub.size());
    r.note("iso_small_subscript", small_sub.size());

    auto restrict_map = [&](const CarrierMap& a) {
        CarrierMap out(static_cast<std::size_t>(rs.loc.size()), -1);
        for (int x = 0; x < rs.loc.size(); ++x) {
            const int t = a[static_cast<std::size_t>(rs.to_parent[static_cast<std::size_t>(x)])];
            out[static_cast<std::size_t>(x)] = trs.from_parent[static_cast<std::size_t>(t)];
        }
        return out;
    };
    std::set<CarrierMap> small_set(small_sub.begin(), small_sub.end());
    std::set<CarrierMap> images;
    r.check("restriction-well-defined");
    for (const auto& a : big_sub) {
        CarrierMap ra = restrict_map(a);
        if (std::find(ra.begin(), ra.end(), -1) != ra.end() || !small_set.count(ra))
            r.fail("restriction-well-defined", "restriction leaves the subscript set");
        else
            r.pass("restriction-well-defined");
        images.insert(ra);
    }
    r.expect("restriction-injective", images.size() == big_sub.size(), "two isomorphisms share a restriction");
    r.expect("restriction-surjective", images == small_set, "an isomorphism of L does not extend");
    if (&plus == &tplus && delta == tdelta) {
        r.check("restriction-multiplicative");
        std::map<CarrierMap, CarrierMap> rmap;
        for (const auto& a : big_sub) rmap[a] = restrict_map(a);
        for (const auto& a : big_sub)
            for (const auto& b : big_sub) {
                CarrierMap ab = compose_maps(a, b);
                auto it = rmap.find(ab);
                if (it == rmap.end()) {
                    r.fail("restriction-multiplicative", "subscript set not closed under composition");
                    continue;
                }
                r.expect("restriction-multiplicative", it->second == compose_maps(rmap[a], rmap[b]), "restriction of a composite");
            }
        FusionSystem f = fusion_of_locality(plus);
        const bool inv_small = is_invariant_set(f, delta);
        const bool inv_big = is_invariant_set(f, plus.objects());
        r.note("delta_invariant", inv_small);
        r.note("delta_plus_invariant", inv_big);
        if (inv_small && inv_big) {
            r.expect("subscript-plus-is-everything", big_sub.size() == big.size(), "an automorphism of L+ moves Delta");
            r.expect("subscript-small-is-everything", small_sub.size() == small.size(), "an automorphism of L moves Delta+");
        }
    }
    return r;
}

Report verify_aut_restriction(const Locality& plus, const std::vector<Mask>& delta, std::size_t cap) {
    return verify_iso_restriction(plus, delta, plus, delta, cap);
}

}  // namespace loclab
