#include <doctest.h>

#include <random>
#include <set>

#include "loclab/normal.hpp"
#include "test_support.hpp"

using namespace loclab;
using testing::s_mask;

namespace {

// Orbits of x -> x^f computed from words in D directly.
std::vector<std::vector<int>> classes_by_words(const PartialGroup& pg) {
    const int n = pg.size();
    std::vector<int> seen(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < n; ++x) {
        if (seen[static_cast<std::size_t>(x)] >= 0) continue;
        std::vector<int> orbit{x}, work{x};
        seen[static_cast<std::size_t>(x)] = static_cast<int>(out.size());
        while (!work.empty()) {
            const int y = work.back();
            work.pop_back();
            for (int f = 0; f < n; ++f) {
                const Word w{pg.inverse(f), y, f};
                if (!pg.in_domain(w)) continue;
                const int c = *pg.product(w);
                if (seen[static_cast<std::size_t>(c)] < 0) {
                    seen[static_cast<std::size_t>(c)] = static_cast<int>(out.size());
                    orbit.push_back(c);
                    work.push_back(c);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

// Partial normal subgroups are unions of classes: test every union.
std::set<std::vector<int>> normals_by_class_unions(const PartialGroup& pg) {
    const auto cls = classes_by_words(pg);
    REQUIRE(cls.size() <= 20);
    std::set<std::vector<int>> out;
    for (std::uint32_t bits = 0; bits < (1U << cls.size()); ++bits) {
        std::vector<int> m;
        for (std::size_t i = 0; i < cls.size(); ++i)
            if (bits >> i & 1U) m.insert(m.end(), cls[i].begin(), cls[i].end());
        std::sort(m.begin(), m.end());
        if (!m.empty() && is_partial_normal(pg, m)) out.insert(m);
    }
    return out;
}

std::set<std::vector<int>> normals_by_all_subsets(const PartialGroup& pg) {
    const int n = pg.size();
    REQUIRE(n <= 16);
    std::set<std::vector<int>> out;
    for (std::uint32_t bits = 1; bits < (1U << n); ++bits) {
        std::vector<int> m;
        for (int i = 0; i < n; ++i)
            if (bits >> i & 1U) m.push_back(i);
        if (is_partial_normal(pg, m)) out.insert(m);
    }
    return out;
}

std::set<std::vector<int>> as_sets(const std::vector<PartialNormal>& v) {
    std::set<std::vector<int>> r;
    for (const auto& n : v) r.insert(n.members);
    return r;
}

// Carrier ids of the elements whose ambient label lies in `labels`.
std::vector<int> by_labels(const Locality& l, const Subgroup& labels) {
    std::vector<int> r;
    for (int f = 0; f < l.size(); ++f)
        if (std::binary_search(labels.begin(), labels.end(), l.labels[static_cast<std::size_t>(f)])) r.push_back(f);
    return r;
}

struct GlPair {
    testing::Gl32Setup gl;
    Locality plus = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    std::vector<Mask> cr = centric_radical(fusion_of_locality(plus));
};

const GlPair& gl_pair() {
    static const GlPair p;
    return p;
}

}  // namespace

TEST_CASE("partial normal subgroups of small localities against subset oracles") {
    testing::S4Setup fx;
    // A p-group with every subgroup an object: partial normal means normal.
    Group d8 = testing::group(4, {{{1, 2, 3, 4}}, {{1, 3}}});
    Locality ld8 = locality_from_group(d8, 2, d8.all(), subgroup_lattice(d8));
    const auto nd8 = enumerate_partial_normal(ld8);
    CHECK(as_sets(nd8) == normals_by_all_subsets(ld8.pg()));
    CHECK(nd8.size() == 6);
    for (const auto& n : nd8) {
        Subgroup amb;
        for (int f : n.members) amb.push_back(ld8.labels[static_cast<std::size_t>(f)]);
        std::sort(amb.begin(), amb.end());
        CHECK(is_normal(d8, d8.all(), amb));
    }

    Group a4 = testing::group(4, {{{1, 2, 3}}, {{1, 2}, {3, 4}}});
    Subgroup v4 = testing::members(a4, {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    Locality la4 = locality_from_group(a4, 2, v4, {v4});
    CHECK(as_sets(enumerate_partial_normal(la4)) == normals_by_all_subsets(la4.pg()));
    CHECK(enumerate_partial_normal(la4).size() == 3);

    Locality plus = fx.plus();
    const auto np = enumerate_partial_normal(plus);
    CHECK(as_sets(np) == normals_by_class_unions(plus.pg()));
    REQUIRE(np.size() == 4);
    const Group& m = fx.m;
    CHECK(np[0].members == by_labels(plus, Subgroup{0}));
    CHECK(np[1].members == by_labels(plus, fx.v4));
    CHECK(np[2].members == by_labels(plus, testing::members(m, {{{1, 2, 3}}, {{1, 2}, {3, 4}}})));
    CHECK(np[3].size() == 24);
    CHECK(enumerate_partial_normal(fx.crit()).size() == np.size());
    for (const auto& n : np) CHECK(is_strongly_closed(fusion_of_locality(plus), n.t));
    CHECK_THROWS_AS(enumerate_partial_normal(plus, 10), EnumerationCapExceeded);
}

TEST_CASE("partial normal subgroups of the GL3(2) pair") {
    const auto& p = gl_pair();
    Restriction small = restrict(p.plus, p.cr);
    const auto big = enumerate_partial_normal(p.plus);
    const auto sm = enumerate_partial_normal(small.loc);
    CHECK(as_sets(big) == normals_by_class_unions(p.plus.pg()));
    CHECK(as_sets(sm) == normals_by_class_unions(small.loc.pg()));
    CHECK(big.size() == sm.size());
    MESSAGE("partial normal subgroups: " << big.size());
}

TEST_CASE("make_partial_normal rejects non-normal sets") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    CHECK_THROWS_AS(make_partial_normal(plus, plus.s_elements()), NormalError);
    CHECK_THROWS_AS(make_partial_normal(plus, by_labels(plus, testing::members(fx.m, {{{1, 2}, {3, 4}}}))), NormalError);
    CHECK(make_partial_normal(plus, by_labels(plus, fx.v4)).t == s_mask(fx.s, fx.v4));
}

TEST_CASE("normal closure is a closure operator") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    CHECK(normal_closure(plus, {}).members == std::vector<int>{plus.pg().identity()});
    const int tr = by_labels(plus, Subgroup{testing::element(fx.m, {{1, 2}})}).front();
    CHECK(normal_closure(plus, std::vector<int>{tr}).size() == 24);
    const int dbl = by_labels(plus, Subgroup{testing::element(fx.m, {{1, 2}, {3, 4}})}).front();
    CHECK(normal_closure(plus, std::vector<int>{dbl}).members == by_labels(plus, fx.v4));

    std::mt19937 rng(11);
    const auto& p = gl_pair();
    for (const Locality* l : {static_cast<const Locality*>(&plus), &p.plus})
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<int> x, y;
            for (int f = 0; f < l->size(); ++f) {
                const auto r = rng() % 16;
                if (r == 0) x.push_back(f);
                if (r <= 1) y.push_back(f);
            }
            const auto cx = normal_closure(*l, x), cy = normal_closure(*l, y);
            CHECK(std::includes(cx.members.begin(), cx.members.end(), x.begin(), x.end()));
            CHECK(std::includes(cy.members.begin(), cy.members.end(), cx.members.begin(), cx.members.end()));
            CHECK(normal_closure(*l, cx.members) == cx);
            CHECK(is_partial_normal(l->pg(), cx.members));
        }
}

TEST_CASE("quotients of the S4 locality") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    const auto np = enumerate_partial_normal(plus);
    // By V4: the classes are the cosets of V4 in S4.
    const QuotientLocality q = quotient(plus, np[1]);
    CHECK(q.loc.size() == 6);
    CHECK(q.loc.S().order() == 2);
    for (int f = 0; f < plus.size(); ++f)
        for (int g = 0; g < plus.size(); ++g) {
            const int a = plus.labels[static_cast<std::size_t>(f)], b = plus.labels[static_cast<std::size_t>(g)];
            const bool same_coset = std::binary_search(fx.v4.begin(), fx.v4.end(), fx.m.mul(fx.m.inv(a), b));
            CHECK((q.projection.map[static_cast<std::size_t>(f)] == q.projection.map[static_cast<std::size_t>(g)]) == same_coset);
        }
    Report r = verify_quotient(plus, np[1], q);
    CHECK_MESSAGE(r.passed(), r.to_markdown("V4"));
    CHECK(validate_partial_group(q.loc.pg(), 4).passed());
    // By A4, by 1, by everything.
    const QuotientLocality qa = quotient(plus, np[2]);
    CHECK(qa.loc.size() == 2);
    CHECK(verify_quotient(plus, np[2], qa).passed());
    const QuotientLocality q1 = quotient(plus, np[0]);
    CHECK(q1.projection.kind == HomKind::Isomorphism);
    CHECK(verify_quotient(plus, np[0], q1).passed());
    const QuotientLocality qall = quotient(plus, np[3]);
    CHECK(qall.loc.size() == 1);
    CHECK(verify_quotient(plus, np[3], qall).passed());
}

TEST_CASE("quotients of the GL3(2) pair") {
    const auto& p = gl_pair();
    for (const auto& n : enumerate_partial_normal(p.plus)) {
        const QuotientLocality q = quotient(p.plus, n);
        Report r = verify_quotient(p.plus, n, q);
        CHECK_MESSAGE(r.passed(), r.to_markdown("GL quotient"));
    }
}

TEST_CASE("NS localities") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    const auto np = enumerate_partial_normal(plus);
    const Restriction trivial = ns_locality(plus, np[0]);
    CHECK(trivial.loc.size() == 8);
    const Restriction v = ns_locality(plus, np[1]);
    CHECK(v.loc.size() == 8);
    std::vector<int> lab = v.loc.labels;
    std::sort(lab.begin(), lab.end());
    CHECK(lab == fx.s);
    const Restriction a = ns_locality(plus, np[2]);
    CHECK(a.loc.size() == 24);
    for (const auto& n : np) {
        const Restriction ns = ns_locality(plus, n);
        Report r = verify_ns_locality(plus, n, ns);
        CHECK_MESSAGE(r.passed(), r.to_markdown("NS"));
        CHECK(validate_partial_group(ns.loc.pg(), 4).passed());
    }
    const auto& p = gl_pair();
    for (const auto& n : enumerate_partial_normal(p.plus)) CHECK(verify_ns_locality(p.plus, n, ns_locality(p.plus, n)).passed());
}

TEST_CASE("sub-fusion systems of partial normal subgroups") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    const FusionSystem f = fusion_of_locality(plus);
    const auto np = enumerate_partial_normal(plus);
    CHECK(sub_fusion_of_partial_normal(plus, np[3]) == f);
    const FusionSystem e = sub_fusion_of_partial_normal(plus, np[2]);
    CHECK(e.base() == s_mask(fx.s, fx.v4));
    CHECK(e.aut(e.base()).size() == 3);
    CHECK(is_invariant_subsystem(f, e));
    const FusionSystem ev = sub_fusion_of_partial_normal(plus, np[1]);
    CHECK(ev.aut(ev.base()).size() == 1);
}

TEST_CASE("Alperin decompositions") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    const auto np = enumerate_partial_normal(plus);
    const int cyc = by_labels(plus, Subgroup{testing::element(fx.m, {{1, 2, 3}})}).front();
    const auto d = alperin_decompose(plus, np[2], cyc);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].r == s_mask(fx.s, fx.v4));
    const auto di = alperin_decompose(plus, np[2], plus.pg().identity());
    CHECK(di.factors.empty());
    CHECK(di.t == plus.pg().identity());
    const int z = plus.s_elem(mask_members(s_mask(fx.s, fx.v4))[1]);
    CHECK(alperin_decompose(plus, np[1], z).factors.empty());
    CHECK_THROWS_AS(alperin_decompose(plus, np[1], cyc), std::invalid_argument);

    std::size_t longest = 0;
    for (const auto& n : np)
        for (int e : n.members) {
            const auto dec = alperin_decompose(plus, n, e, 4);
            CHECK(check_alperin(plus, n, e, dec));
            // Product through the ambient group.
            int prod = plus.labels[static_cast<std::size_t>(dec.t)];
            for (const auto& fct : dec.factors) prod = fx.m.mul(prod, plus.labels[static_cast<std::size_t>(fct.element)]);
            CHECK(prod == plus.labels[static_cast<std::size_t>(e)]);
            longest = std::max(longest, dec.factors.size());
        }
    CHECK(longest <= 4);
    // A bad decomposition is caught by the re-check.
    AlperinDecomposition bad = d;
    bad.factors[0].r = plus.S().all();
    CHECK_FALSE(check_alperin(plus, np[2], cyc, bad));
}

TEST_CASE("intersection map between nested linking localities") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    const std::vector<Mask> cr{s_mask(fx.s, fx.v4), plus.S().all()};
    Report s = verify_theorem_c(plus, cr);
    CHECK_MESSAGE(s.passed(), s.to_markdown("S4"));
    CHECK(verify_theorem_c(plus, plus.objects()).passed());
    CHECK_THROWS_AS(verify_theorem_c(plus, {plus.S().all()}), ExtensionError);

    const auto& p = gl_pair();
    Report r = verify_theorem_c(p.plus, p.cr);
    CHECK_MESSAGE(r.passed(), r.to_markdown("GL"));
    CHECK(r.facts()["normals_plus"] == r.facts()["normals_small"]);
}

TEST_CASE("intersection map with nontrivial partial normal subgroups") {
    testing::Gl32C2Setup fx;
    Locality plus = locality_from_group(fx.m, 2, fx.s, fx.objects());
    REQUIRE(plus.size() == 208);
    const auto cr = centric_radical(fusion_of_locality(plus));
    Restriction small = restrict(plus, cr);
    CHECK(small.loc.size() == 80);
    const auto big = enumerate_partial_normal(plus, 400);
    REQUIRE(big.size() == 4);
    CHECK(big[1].size() == 2);
    CHECK(big[2].size() == 104);
    // 26 classes on the large side; the union oracle runs on the small side only.
    CHECK(as_sets(enumerate_partial_normal(small.loc)) == normals_by_class_unions(small.loc.pg()));
    Report r = verify_theorem_c(plus, cr, 400);
    CHECK_MESSAGE(r.passed(), r.to_markdown("GL x C2"));
    CHECK(r.facts()["normals_small"] == 4);
    CHECK(r.facts()["product_cases"] == 6);
    // L/1 is L itself and its laws are covered elsewhere; words of length 2 suffice
    // to classify the projection here.
    for (std::size_t i = 1; i < big.size(); ++i) CHECK(verify_quotient(plus, big[i], quotient(plus, big[i], 2)).passed());
}
