#include <doctest.h>

#include <map>
#include <set>

#include "loclab/fusion.hpp"
#include "test_support.hpp"

using namespace loclab;
using testing::s_mask;

namespace {

// Hom sets of F_S(M) read straight off the ambient group: every c_g|_P with P^g <= S.
std::map<Mask, std::set<SMap>> group_fusion_oracle(const Group& m, const Subgroup& s) {
    std::map<Mask, std::set<SMap>> out;
    for (const auto& p : subgroup_lattice(m, s)) {
        const Mask pm = s_mask(s, p);
        out[pm];
        for (int g = 0; g < m.order(); ++g) {
            SMap f(s.size(), -1);
            bool inside = true;
            for (int x : p) {
                int y = m.conj(x, g);
                if (!std::binary_search(s.begin(), s.end(), y)) {
                    inside = false;
                    break;
                }
                f[static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), x) - s.begin())] =
                    static_cast<std::int8_t>(std::lower_bound(s.begin(), s.end(), y) - s.begin());
            }
            if (inside) out[pm].insert(f);
        }
    }
    return out;
}

// Out_F(P) built from cosets of Inn(P); radical iff no nontrivial p-element has
// a normal closure that is a p-group.
bool radical_by_cosets(const FusionSystem& f, Mask p) {
    const auto aut = f.aut(p);
    std::set<SMap> inn;
    for (int g : mask_members(p)) inn.insert(smap_conjugation(f.S(), p, g));
    auto coset = [&](const SMap& a) {
        std::set<SMap> c;
        for (const auto& i : inn) c.insert(smap_compose(a, i));
        return c;
    };
    std::vector<std::set<SMap>> out;
    for (const auto& a : aut) {
        auto c = coset(a);
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    auto id_of = [&](const SMap& a) {
        for (std::size_t i = 0; i < out.size(); ++i)
            if (out[i].count(a)) return static_cast<int>(i);
        return -1;
    };
    const int n = static_cast<int>(out.size());
    std::vector<SMap> rep;
    for (const auto& c : out) rep.push_back(*c.begin());
    auto mul = [&](int a, int b) { return id_of(smap_compose(rep[static_cast<std::size_t>(b)], rep[static_cast<std::size_t>(a)])); };
    const int one = id_of(*inn.begin());
    for (int x = 0; x < n; ++x) {
        if (x == one) continue;
        int ord = 1;
        for (int y = x; y != one; y = mul(y, x)) ++ord;
        if (!is_p_group(static_cast<std::size_t>(ord), f.p())) continue;
        std::set<int> closure{one};
        std::vector<int> work{x};
        while (!work.empty()) {
            int y = work.back();
            work.pop_back();
            if (!closure.insert(y).second) continue;
            for (int z : std::vector<int>(closure.begin(), closure.end())) work.push_back(mul(y, z));
            for (int g = 0; g < n; ++g) {
                int gi = 0;
                while (mul(gi, g) != one) ++gi;
                work.push_back(mul(mul(gi, y), g));
            }
        }
        if (is_p_group(closure.size(), f.p())) return false;
    }
    return true;
}

// Induced permutation of S4 on the three partitions of {1,2,3,4} into pairs.
Perm pair_partition_action(const Perm& g) {
    const std::vector<std::vector<int>> parts{{0, 1}, {0, 2}, {0, 3}};  // pair containing point 0
    Perm r(3);
    for (int i = 0; i < 3; ++i) {
        int a = parts[static_cast<std::size_t>(i)][0], b = parts[static_cast<std::size_t>(i)][1];
        int ga = g[static_cast<std::size_t>(a)], gb = g[static_cast<std::size_t>(b)];
        int partner = ga == 0 ? gb : gb == 0 ? ga : -1;
        if (partner < 0) {
            // The complementary pair contains 0.
            for (int c = 0; c < 4; ++c)
                if (c != ga && c != gb && c != 0) partner = c;
        }
        r[static_cast<std::size_t>(i)] = partner - 1;
    }
    return r;
}

}  // namespace

TEST_CASE("locality fusion equals group fusion on every subgroup") {
    testing::S4Setup fx;
    auto oracle = group_fusion_oracle(fx.m, fx.s);
    FusionSystem f = fusion_of_locality(fx.plus());
    FusionSystem g = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    for (const auto& [p, maps] : oracle) {
        CHECK(f.isos_from(p) == maps);
        CHECK(g.isos_from(p) == maps);
    }
    CHECK(f == g);
    // Closing again adds nothing.
    CHECK(FusionSystem::generate(f.s_ptr(), f.base(), 2, f.all_isos()) == f);
    CHECK(f.aut(s_mask(fx.s, fx.v4)).size() == 6);
}

TEST_CASE("Gamma = {S} gives the inner fusion of S") {
    testing::S4Setup fx;
    Locality l = locality_from_group(fx.m, 2, fx.s, {fx.s});
    FusionSystem f = fusion_of_locality(l);
    FusionSystem inner = FusionSystem::generate(f.s_ptr(), f.S().all(), 2, {});
    CHECK(f == inner);
    CHECK(mask_size(fusion_center(f)) == 2);
}

TEST_CASE("saturation") {
    testing::S4Setup fx;
    FusionSystem f = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    CHECK(is_saturated(f).passed());
    FusionSystem inner = FusionSystem::generate(f.s_ptr(), f.S().all(), 2, {});
    CHECK(is_saturated(inner).passed());
    testing::Gl32Setup gl;
    CHECK(is_saturated(fusion_of_group(gl.m, gl.m.all(), gl.s, gl.s, 2)).passed());

    // Dropping one automorphism of V4 breaks full automization.
    const Mask v4 = s_mask(fx.s, fx.v4);
    auto isos = f.all_isos();
    auto victim = f.aut(v4).back();
    isos.erase(std::find(isos.begin(), isos.end(), victim));
    Report broken = is_saturated(FusionSystem::from_explicit(f.s_ptr(), f.base(), 2, isos));
    CHECK_FALSE(broken.passed());
    CHECK_FALSE(broken.find("fully-automized")->passed);

    // Fusing a non-central involution into the center is not receptive.
    const Mask z = f.S().center();
    const int t = testing::element(fx.m, {{1, 3}});
    const int ti = static_cast<int>(std::lower_bound(fx.s.begin(), fx.s.end(), t) - fx.s.begin());
    SMap phi(8, -1);
    phi[0] = 0;
    phi[static_cast<std::size_t>(ti)] = static_cast<std::int8_t>(mask_members(z & ~mask_bit(0)).front());
    Report bad = is_saturated(FusionSystem::generate(f.s_ptr(), f.base(), 2, {phi}));
    CHECK_FALSE(bad.find("receptive")->passed);
}

TEST_CASE("subgroup classes against the coset oracle") {
    testing::S4Setup fx;
    FusionSystem f = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    for (const auto& c : classify_subgroups(f)) {
        CHECK(c.radical == radical_by_cosets(f, c.subgroup));
        bool centric_scan = true;
        for (Mask q : f.conjugacy_class(c.subgroup))
            for (int x : mask_members(f.S().all())) {
                bool commutes = true;
                for (int y : mask_members(q))
                    if (f.S().mul(x, y) != f.S().mul(y, x)) commutes = false;
                if (commutes && !mask_has(q, x)) centric_scan = false;
            }
        CHECK(c.centric == centric_scan);
    }
    CHECK(centric_radical(f) == std::vector<Mask>{s_mask(fx.s, fx.v4), f.S().all()});
    // O_2(F) = V4 is centric, so every subgroup is subcentric.
    CHECK(normal_core(f) == s_mask(fx.s, fx.v4));
    CHECK(is_constrained(f));
    CHECK(subcentric(f) == f.subgroups());
    CHECK(is_radical(f, f.S().all()));
    CHECK_FALSE(is_radical(f, s_mask(fx.s, fx.v4b)));

    testing::Gl32Setup gl;
    FusionSystem g = fusion_of_group(gl.m, gl.m.all(), gl.s, gl.s, 2);
    for (const auto& c : classify_subgroups(g)) CHECK(c.radical == radical_by_cosets(g, c.subgroup));
    CHECK(centric_radical(g).size() == 3);
    CHECK(normal_core(g) == mask_bit(0));
}

TEST_CASE("classes, full normalization and F-closed sets") {
    testing::S4Setup fx;
    FusionSystem f = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    const Mask all = f.S().all();
    CHECK(f.conjugacy_class(all) == std::vector<Mask>{all});
    CHECK(f.is_fully_normalized(all));
    CHECK(f.is_fully_normalized(s_mask(fx.s, fx.v4)));
    // Transpositions of S fuse only with each other; the three double transpositions fuse with the center.
    CHECK(f.conjugacy_class(s_mask(fx.s, testing::members(fx.m, {{{1, 3}}}))).size() == 2);
    CHECK(f.conjugacy_class(f.S().center()).size() == 3);
    CHECK_FALSE(f.is_fully_normalized(s_mask(fx.s, testing::members(fx.m, {{{1, 2}, {3, 4}}}))));
    std::vector<Mask> d{s_mask(fx.s, fx.c4), all};
    CHECK(is_f_closed(f, d));
    std::string why;
    CHECK_FALSE(is_f_closed(f, {s_mask(fx.s, testing::members(fx.m, {{{1, 3}}})), all}, &why));
    CHECK_FALSE(why.empty());
    CHECK(is_f_closed(f, {all}));
    CHECK(is_f_closed(f, f.subgroups()));
}

TEST_CASE("normalizer systems") {
    testing::S4Setup fx;
    FusionSystem f = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    const Mask v4 = s_mask(fx.s, fx.v4);
    const Mask c4 = s_mask(fx.s, fx.c4);
    CHECK(normalizer_system(f, v4) == f);
    FusionSystem inner = FusionSystem::generate(f.s_ptr(), f.S().all(), 2, {});
    CHECK(normalizer_system(f, c4) == inner);
    CHECK(normalizer_system(f, f.S().all()) == inner);
}

TEST_CASE("automorphisms and center of the fusion system") {
    testing::S4Setup fx;
    FusionSystem f = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    CHECK(fusion_automorphisms(f).size() == 4);
    CHECK(fusion_center(f) == mask_bit(0));
    CHECK(is_invariant_set(f, centric_radical(f)));
    std::vector<Mask> plus;
    for (Mask q : f.subgroups())
        if (mask_size(q) >= 4) plus.push_back(q);
    CHECK(is_invariant_set(f, plus));
    // Aut(F) is inner, so a single non-characteristic member stays put.
    CHECK(is_invariant_set(f, {s_mask(fx.s, fx.v4b), f.S().all()}));
    std::string why;
    FusionSystem inner0 = FusionSystem::generate(f.s_ptr(), f.S().all(), 2, {});
    CHECK_FALSE(is_invariant_set(inner0, {s_mask(fx.s, fx.v4b), f.S().all()}, &why));
    CHECK_FALSE(why.empty());
    FusionSystem inner = FusionSystem::generate(f.s_ptr(), f.S().all(), 2, {});
    CHECK(fusion_automorphisms(inner).size() == 8);
    CHECK(fusion_center(inner) == f.S().center());
    CHECK(is_strongly_closed(f, fusion_center(f)));

    Group c2 = testing::group(2, {{{1, 2}}});
    FusionSystem fc = fusion_of_group(c2, c2.all(), c2.all(), c2.all(), 2);
    CHECK(fusion_automorphisms(fc).size() == 1);
    CHECK(fusion_center(fc) == fc.S().all());
}

TEST_CASE("fusion maps") {
    testing::S4Setup fx;
    FusionSystem f = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    std::vector<int> id(8);
    for (int i = 0; i < 8; ++i) id[static_cast<std::size_t>(i)] = i;
    CHECK(classify_fusion_map(id, f, f) == FusionMapKind::Isomorphism);

    // S4 -> S3 through the pair partitions; kernel V4.
    std::vector<Perm> gens;
    for (int g : fx.m.all()) gens.push_back(pair_partition_action(fx.m.element(g)));
    Group s3 = Group::generate(3, gens);
    REQUIRE(s3.order() == 6);
    std::set<int> img;
    for (int x : fx.s) img.insert(s3.index_of(pair_partition_action(fx.m.element(x))));
    Subgroup sbar(img.begin(), img.end());
    REQUIRE(sbar.size() == 2);
    FusionSystem g = fusion_of_group(s3, s3.all(), sbar, sbar, 2);
    std::vector<int> alpha;
    for (int x : fx.s) {
        int y = s3.index_of(pair_partition_action(fx.m.element(x)));
        alpha.push_back(static_cast<int>(std::lower_bound(sbar.begin(), sbar.end(), y) - sbar.begin()));
    }
    CHECK(classify_fusion_map(alpha, f, g) == FusionMapKind::Epimorphism);

    // Collapsing the non-normal four-group is not a morphism.
    const Mask v4b = s_mask(fx.s, fx.v4b);
    std::vector<int> collapse(8);
    const Mask rest = f.S().all() & ~v4b;
    for (int x = 0; x < 8; ++x) collapse[static_cast<std::size_t>(x)] = mask_has(rest, x) ? 1 : 0;
    CHECK(classify_fusion_map(collapse, f, g) == FusionMapKind::NotMorphism);
}

TEST_CASE("invariant subsystems") {
    testing::S4Setup fx;
    FusionSystem f = fusion_of_group(fx.m, fx.m.all(), fx.s, fx.s, 2);
    const Mask v4 = s_mask(fx.s, fx.v4);
    CHECK(is_strongly_closed(f, v4));
    Subgroup a4 = testing::members(fx.m, {{{1, 2, 3}}, {{1, 2}, {3, 4}}});
    // F_{V4}(A4) and F_{V4}(V4) over the ambient S.
    auto sub = [&](const Subgroup& grp) {
        std::vector<SMap> gens;
        const auto sp = f.s_ptr();
        for (int g : grp) {
            SMap c(8, -1);
            for (int x : mask_members(v4)) {
                int y = fx.m.conj(fx.s[static_cast<std::size_t>(x)], g);
                c[static_cast<std::size_t>(x)] = static_cast<std::int8_t>(std::lower_bound(fx.s.begin(), fx.s.end(), y) - fx.s.begin());
            }
            gens.push_back(c);
        }
        return FusionSystem::generate(sp, v4, 2, gens);
    };
    FusionSystem ea4 = sub(a4);
    FusionSystem ev4 = sub(fx.v4);
    CHECK(ea4.aut(v4).size() == 3);
    CHECK(ev4.aut(v4).size() == 1);
    CHECK(is_invariant_subsystem(f, ea4));
    CHECK(is_invariant_subsystem(f, ev4));
    CHECK(is_subsystem(f, ea4));
    CHECK_FALSE(is_strongly_closed(f, s_mask(fx.s, fx.v4b)));
}
