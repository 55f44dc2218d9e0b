#include <doctest.h>

#include <set>
#include <tuple>

#include "loclab/transporter.hpp"
#include "test_support.hpp"

using namespace loclab;
using testing::s_mask;

namespace {

Group d8() { return testing::group(4, {{{1, 2, 3, 4}}, {{1, 3}}}); }

Locality trivial_locality() {
    Group one = Group::generate(1, std::vector<Perm>{});
    return locality_from_group(one, 2, one.all(), {one.all()});
}

// Copy of t with pi replaced on one morphism or one composite redirected.
TransporterSystem mutated(const TransporterSystem& t, int pi_at, const SMap& pi_value, int comp_psi = -1, int comp_phi = -1,
                          int comp_value = -1) {
    std::vector<Morphism> ms;
    std::vector<SMap> pi;
    for (int m = 0; m < t.morphism_count(); ++m) {
        ms.push_back(t.morphism(m));
        pi.push_back(m == pi_at ? pi_value : t.pi(m));
    }
    auto compose = [&](int a, int b) { return a == comp_psi && b == comp_phi ? comp_value : t.compose(a, b); };
    auto delta = [&](int a, int b, int x) { return t.delta(a, b, x); };
    return TransporterSystem(t.s_ptr(), t.p(), t.objects(), ms, compose, delta, pi, t.fusion(), t.label_names());
}

// Structural description of a category on ambient data: object masks, and
// (src, dst, ambient label) per morphism with composition in those terms.
using Triple = std::tuple<Mask, Mask, int>;
struct Shape {
    std::set<Triple> morphisms;
    std::set<std::tuple<Triple, Triple, Triple>> compositions;
};
Shape shape(const TransporterSystem& t, const std::vector<int>& label_to_ambient) {
    Shape s;
    auto tr = [&](int m) {
        const Morphism& mo = t.morphism(m);
        return Triple{t.object(mo.src), t.object(mo.dst), label_to_ambient.empty() ? mo.label : label_to_ambient[static_cast<std::size_t>(mo.label)]};
    };
    for (int m = 0; m < t.morphism_count(); ++m) {
        s.morphisms.insert(tr(m));
        for (int phi : t.into(t.morphism(m).src)) s.compositions.insert({tr(m), tr(phi), tr(t.compose(m, phi))});
    }
    return s;
}

// |{g in G : g P g^-1 <= Q}| by permutation arithmetic.
std::size_t transporter_count(const Group& g, const Subgroup& p, const Subgroup& q) {
    std::size_t n = 0;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int y : p) {
            const Perm c = perm_mul(perm_mul(perm_inverse(g.element(x)), g.element(y)), g.element(x));
            if (!std::binary_search(q.begin(), q.end(), g.index_of(c))) ok = false;
        }
        n += ok ? 1 : 0;
    }
    return n;
}

}  // namespace

TEST_CASE("transporter of the trivial locality") {
    Locality l = trivial_locality();
    TransporterSystem t = transporter_of_locality(l);
    CHECK(t.object_count() == 1);
    CHECK(t.morphism_count() == 1);
    CHECK(validate_transporter(t).passed());
    TransporterLocality tl = locality_of_transporter(t);
    CHECK(tl.loc.size() == 1);
    CHECK(verify_locality_of_transporter(t, tl).passed());
    CHECK(aut_transporter(t, tl).size() == 1);
    CHECK(enumerate_aut_direct(t).size() == 1);
    CHECK(inner_auts(t).size() == 1);
    OutTyp o = out_typ(t, tl);
    CHECK(o.aut_order == 1);
    CHECK(o.out_order == 1);
}

TEST_CASE("transporter of the S4 locality on the centric radicals") {
    testing::S4Setup fx;
    Locality l = fx.crit();
    TransporterSystem t = transporter_of_locality(l);
    Report r = validate_transporter(t);
    CHECK_MESSAGE(r.passed(), r.to_markdown("T"));
    CHECK(t.object_count() == 2);
    const int v = t.object_index(s_mask(fx.s, fx.v4));
    const int s = t.s_object();
    // Aut_T(V4) = N_{S4}(V4) = S4, and the morphism sets are the group transporters.
    CHECK(t.aut(v).size() == 24);
    CHECK(t.aut(v).size() == normalizer(fx.m, fx.m.all(), fx.v4).size());
    CHECK(t.hom(v, s).size() == transporter_count(fx.m, fx.v4, fx.s));
    CHECK(t.hom(s, s).size() == transporter_count(fx.m, fx.s, fx.s));
    CHECK(t.hom(s, v).empty());
    CHECK(t.morphism_count() == 56);

    TransporterSystem g = transporter_of_group(fx.m, 2, fx.s, {fx.v4, fx.s});
    CHECK(validate_transporter(g).passed());
    const Shape a = shape(t, l.labels);
    const Shape b = shape(g, {});
    CHECK(a.morphisms == b.morphisms);
    CHECK(a.compositions == b.compositions);
    CHECK(t.fusion() == g.fusion());
}

TEST_CASE("validation catches broken transporter data") {
    testing::S4Setup fx;
    TransporterSystem t = transporter_of_locality(fx.crit());
    const int v = t.object_index(s_mask(fx.s, fx.v4));
    // A non-identity pi on an element of delta(V4) breaks (B) and (C).
    int m = -1;
    for (int g : t.aut(v))
        if (t.delta_preimage(g) < 0) {
            m = g;
            break;
        }
    REQUIRE(m >= 0);
    const int d = t.delta(v, v, mask_members(t.object(v))[1]);
    Report rb = validate_transporter(mutated(t, d, t.pi(m)));
    CHECK_FALSE(rb.passed());
    CHECK_FALSE(rb.find("B.delta-to-conjugation")->passed);
    // Redirecting one composite breaks associativity or functoriality.
    const int psi = t.aut(v)[3], phi = t.aut(v)[5];
    int other = -1;
    for (int g : t.aut(v))
        if (g != t.compose(psi, phi)) other = g;
    Report rc = validate_transporter(mutated(t, -1, {}, psi, phi, other));
    CHECK_FALSE(rc.passed());
    CHECK_FALSE(rc.find("pi.functor")->passed);
}

TEST_CASE("full subcategories") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    TransporterSystem tp = transporter_of_locality(plus);
    SubTransporter all = full_subcategory(tp, tp.objects());
    CHECK(all.t.morphism_count() == tp.morphism_count());
    CHECK(shape(all.t, {}).compositions == shape(tp, {}).compositions);

    const std::vector<Mask> cr{s_mask(fx.s, fx.v4), plus.S().all()};
    SubTransporter sub = full_subcategory(tp, cr);
    CHECK(validate_transporter(sub.t).passed());
    Locality crit = fx.crit();
    TransporterSystem tc = transporter_of_locality(crit);
    CHECK(shape(sub.t, plus.labels).compositions == shape(tc, crit.labels).compositions);
    CHECK(shape(sub.t, plus.labels).morphisms == shape(tc, crit.labels).morphisms);
    // Not closed under overgroups.
    CHECK_THROWS_AS(full_subcategory(tp, {s_mask(fx.s, fx.v4)}), TransporterError);

    // In GL3(2) the five involutions of S are F-conjugate; keeping only Z(S) misses conjugates.
    testing::Gl32Setup gl;
    Locality glp = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    TransporterSystem tg = transporter_of_locality(glp);
    std::vector<Mask> missing;
    for (Mask q : tg.objects())
        if (mask_size(q) >= 4 || q == glp.S().center()) missing.push_back(q);
    CHECK_THROWS_AS(full_subcategory(tg, missing), TransporterError);
}

TEST_CASE("round trip through the transporter system") {
    testing::S4Setup fx;
    Group g8 = d8();
    Group c2 = testing::group(2, {{{1, 2}}});
    const std::vector<Locality> cases{fx.crit(), fx.plus(), locality_from_group(g8, 2, g8.all(), subgroup_lattice(g8)),
                                      locality_from_group(c2, 2, c2.all(), subgroup_lattice(c2))};
    for (const Locality& l : cases) {
        TransporterSystem t = transporter_of_locality(l);
        TransporterLocality tl = locality_of_transporter(t);
        Report r = verify_locality_of_transporter(t, tl);
        CHECK_MESSAGE(r.passed(), r.to_markdown("L_Delta(T)"));
        REQUIRE(tl.loc.size() == l.size());
        // The maximal member of the class of g is (S_{g^-1}, S_g, g), so labels recover L.
        CarrierMap back(tl.loc.labels.begin(), tl.loc.labels.end());
        std::string why;
        CHECK_MESSAGE(is_locality_isomorphism(tl.loc, l, back, &why), why);
        CHECK(is_rigid(tl.loc, back));
        bool rigid_found = false;
        for (const auto& a : enumerate_iso(l, tl.loc))
            if (is_rigid(l, a)) rigid_found = true;
        CHECK(rigid_found);
        for (int c = 0; c < tl.loc.size(); ++c) {
            const Morphism& mo = t.morphism(tl.representative[static_cast<std::size_t>(c)]);
            const int g = tl.loc.labels[static_cast<std::size_t>(c)];
            CHECK(t.object(mo.src) == l.s_f(l.pg().inverse(g)));
            CHECK(t.object(mo.dst) == l.s_f(g));
        }
    }
}

TEST_CASE("iota is an isomorphism onto the restriction") {
    auto check_pair = [](const Locality& plus, const std::vector<Mask>& delta) {
        TransporterSystem tp = transporter_of_locality(plus);
        TransporterLocality lp = locality_of_transporter(tp);
        SubTransporter sub = full_subcategory(tp, delta);
        TransporterLocality ls = locality_of_transporter(sub.t);
        CHECK(verify_locality_of_transporter(sub.t, ls).passed());
        Restriction rest = restrict(lp.loc, delta);
        CarrierMap iota = iota_map(sub, ls, lp, rest);
        CHECK(classify_map(ls.loc.pg(), rest.loc.pg(), iota, 3).kind == HomKind::Isomorphism);
        CHECK(is_locality_isomorphism(ls.loc, rest.loc, iota));
        for (int x = 0; x < ls.loc.S().order(); ++x)
            CHECK(rest.loc.s_index(iota[static_cast<std::size_t>(ls.loc.s_elem(x))]) == x);
    };
    testing::S4Setup fx;
    Locality plus = fx.plus();
    check_pair(plus, {s_mask(fx.s, fx.v4), plus.S().all()});
    testing::Gl32Setup gl;
    Locality glp = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    check_pair(glp, centric_radical(fusion_of_locality(glp)));
}

TEST_CASE("functor classification and Lambda") {
    testing::S4Setup fx;
    Locality l = fx.crit();
    TransporterSystem t = transporter_of_locality(l);
    TransporterLocality tl = locality_of_transporter(t);
    CategoryFunctor id = identity_functor(t);
    CHECK(id.flags.isomorphism());
    CHECK(id.flags.rigid);
    CarrierMap lid = lambda_map(id, t, t, tl, tl);
    for (int f = 0; f < tl.loc.size(); ++f) CHECK(lid[static_cast<std::size_t>(f)] == f);

    // Lambda(c_gamma) is conjugation by [gamma]^-1 in right-hand notation.
    const int s = t.s_object();
    for (int gamma : t.aut(s)) {
        CategoryFunctor c = conjugation_functor(t, gamma);
        CHECK(c.flags.isomorphism());
        CarrierMap lam = lambda_map(c, t, t, tl, tl);
        const int g = tl.class_of[static_cast<std::size_t>(gamma)];
        for (int f = 0; f < tl.loc.size(); ++f)
            CHECK(lam[static_cast<std::size_t>(f)] == *tl.loc.pg().conjugate(f, tl.loc.pg().inverse(g)));
    }

    // Twist by an automorphism of V4 outside delta(V4), leaving S alone: still a
    // self-equivalence and isotypical, but inclusions are no longer preserved.
    const int v = t.object_index(s_mask(fx.s, fx.v4));
    int eta = -1;
    for (int g : t.aut(v))
        if (t.delta_preimage(g) < 0) {
            eta = g;
            break;
        }
    REQUIRE(eta >= 0);
    CategoryFunctor tw = identity_functor(t);
    auto twist = [&](int o) { return o == v ? eta : t.identity(o); };
    for (int m = 0; m < t.morphism_count(); ++m) {
        const Morphism& mo = t.morphism(m);
        tw.morphisms[static_cast<std::size_t>(m)] = t.compose(t.compose(twist(mo.dst), m), t.inverse(twist(mo.src)));
    }
    FunctorFlags fl = classify_functor(tw, t, t);
    CHECK(fl.functor);
    CHECK(fl.equivalence);
    CHECK(fl.isotypical);
    CHECK_FALSE(fl.inclusion_preserving);
    CHECK_THROWS_AS(lambda_map(tw, t, t, tl, tl), TransporterError);

    CategoryFunctor broken = identity_functor(t);
    std::swap(broken.morphisms[0], broken.morphisms[1]);
    CHECK_FALSE(classify_functor(broken, t, t).functor);
}

TEST_CASE("automorphisms of transporter systems") {
    testing::S4Setup fx;
    Locality l = fx.crit();
    TransporterSystem t = transporter_of_locality(l);
    TransporterLocality tl = locality_of_transporter(t);
    const auto via_lambda = aut_transporter(t, tl);
    CHECK(via_lambda.size() == enumerate_aut(l).size());
    CHECK(via_lambda == enumerate_aut_direct(t));
    for (const auto& a : via_lambda) {
        CarrierMap lam = lambda_map(a, t, t, tl, tl);
        CHECK(subscripts_correspond(a, t, t, tl, tl, lam));
        CHECK(functor_of_locality_iso(lam, t, t, tl, tl) == a);
    }
    Group c2 = testing::group(2, {{{1, 2}}});
    TransporterSystem tc = transporter_of_locality(locality_from_group(c2, 2, c2.all(), subgroup_lattice(c2)));
    TransporterLocality lc = locality_of_transporter(tc);
    CHECK(aut_transporter(tc, lc) == enumerate_aut_direct(tc));
    CHECK_THROWS_AS(enumerate_aut_direct(transporter_of_locality(fx.plus())), EnumerationCapExceeded);

    // Isomorphisms between two different presentations of the same system.
    TransporterSystem g = transporter_of_group(fx.m, 2, fx.s, {fx.v4, fx.s});
    TransporterLocality lg = locality_of_transporter(g);
    const auto isos = enumerate_iso(tl.loc, lg.loc);
    CHECK(isos.size() == 8);
    for (const auto& beta : isos) {
        CategoryFunctor a = functor_of_locality_iso(beta, t, g, tl, lg);
        CHECK(a.flags.isomorphism());
        CarrierMap lam = lambda_map(a, t, g, tl, lg);
        CHECK(lam == beta);
        CHECK(subscripts_correspond(a, t, g, tl, lg, lam));
    }
}

TEST_CASE("linking systems") {
    testing::S4Setup fx;
    CHECK(is_linking_system(transporter_of_locality(fx.crit())));
    CHECK(is_linking_system(transporter_of_locality(fx.plus())));
    std::string why;
    // Over F_S(S4) the object set {S} misses V4 in F^cr.
    TransporterSystem only_s = transporter_of_group(fx.m, 2, fx.s, {fx.s});
    CHECK(validate_transporter(only_s).passed());
    CHECK_FALSE(is_linking_system(only_s, &why));
    CHECK(why.find("centric radical") != std::string::npos);
    TransporterLocality lo = locality_of_transporter(only_s);
    CHECK_THROWS_AS(out_typ(only_s, lo), TransporterError);
    // p-groups: every object has a p-group as automorphism group.
    Group g8 = d8();
    CHECK(is_linking_system(transporter_of_locality(locality_from_group(g8, 2, g8.all(), subgroup_lattice(g8)))));
}

TEST_CASE("elementary properties of linking systems") {
    testing::S4Setup fx;
    testing::Gl32Setup gl;
    Locality glp = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    Group g8 = d8();
    const std::vector<Locality> cases{fx.crit(), fx.plus(), glp, restrict(glp, centric_radical(fusion_of_locality(glp))).loc,
                                      locality_from_group(g8, 2, g8.all(), subgroup_lattice(g8))};
    for (const Locality& l : cases) {
        TransporterSystem t = transporter_of_locality(l);
        Report r = verify_linking_elementary(t);
        CHECK_MESSAGE(r.passed(), r.to_markdown("elementary"));
    }
    // O_2(Aut_T(P)) = delta_P(P) exactly for V4 and S in S4.
    TransporterSystem t = transporter_of_locality(fx.plus());
    std::vector<Mask> hits;
    for (int o = 0; o < t.object_count(); ++o) {
        AutGroupView v = aut_group(t, o);
        if (static_cast<int>(p_core(v.group, v.group.all(), 2).size()) == mask_size(t.object(o))) hits.push_back(t.object(o));
    }
    std::sort(hits.begin(), hits.end());
    std::vector<Mask> expect{s_mask(fx.s, fx.v4), t.S().all()};
    std::sort(expect.begin(), expect.end());
    CHECK(hits == expect);
}

TEST_CASE("exact sequence and outer automorphisms") {
    testing::S4Setup fx;
    TransporterSystem t = transporter_of_locality(fx.crit());
    TransporterLocality tl = locality_of_transporter(t);
    OutTyp o;
    Report r = verify_exact_sequence(t, tl, &o);
    CHECK_MESSAGE(r.passed(), r.to_markdown("exact"));
    // Z(F) = 1, Aut_T(S) = N_{S4}(D8) = D8 acts faithfully, and Out(S4) = 1.
    CHECK(o.center_order == 1);
    CHECK(o.aut_s_order == normalizer(fx.m, fx.m.all(), fx.s).size());
    CHECK(o.inner_order == 8);
    CHECK(o.aut_order == 8);
    CHECK(o.out_order == 1);
    TransporterSystem tp = transporter_of_locality(fx.plus());
    CHECK(out_typ(tp, locality_of_transporter(tp)).out_order == o.out_order);

    // D8 on all subgroups: Inn = D8/Z, Out = Out(D8) of order 2.
    Group g8 = d8();
    TransporterSystem td = transporter_of_locality(locality_from_group(g8, 2, g8.all(), subgroup_lattice(g8)));
    OutTyp od = out_typ(td, locality_of_transporter(td));
    CHECK(od.center_order == 2);
    CHECK(od.inner_order == 4);
    CHECK(od.out_order == 2);

    testing::Gl32Setup gl;
    Locality glp = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    TransporterSystem tg = transporter_of_locality(glp);
    SubTransporter small = full_subcategory(tg, centric_radical(tg.fusion()));
    OutTyp big = out_typ(tg, locality_of_transporter(tg));
    OutTyp sm = out_typ(small.t, locality_of_transporter(small.t));
    CHECK(big.aut_order == 32);
    CHECK(big.out_order == sm.out_order);
    CHECK(big.out_order == 4);
}
