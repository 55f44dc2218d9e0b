#include <doctest.h>

#include <set>

#include "loclab/locality.hpp"
#include "test_support.hpp"

using namespace loclab;
using testing::s_mask;

namespace {

// All chains P_0 -> P_0^{w_1} -> ... through objects, tried from every object.
bool chain_oracle(const Locality& l, std::span<const int> w) {
    for (Mask p : l.objects()) {
        Mask cur = p;
        bool ok = true;
        for (int f : w) {
            if (!mask_subset(cur, l.s_f(f))) {
                ok = false;
                break;
            }
            cur = l.act(f, cur);
            if (!l.is_object(cur)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// S ∩ S^{g^-1} read off the ambient group.
Mask ambient_s_f(const Group& m, const Subgroup& s, int g) {
    Mask r = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::binary_search(s.begin(), s.end(), m.conj(s[i], g))) r |= mask_bit(static_cast<int>(i));
    return r;
}

}  // namespace

TEST_CASE("carriers of L_Gamma(S4)") {
    testing::S4Setup fx;
    CHECK(locality_from_group(fx.m, 2, fx.s, {fx.s}).size() == 8);
    CHECK(fx.plus().size() == 24);
    CHECK(fx.crit().size() == 24);
    Group c2 = testing::group(2, {{{1, 2}}});
    Locality lc = locality_from_group(c2, 2, c2.all(), {c2.all()});
    CHECK(lc.size() == 2);
    CHECK(validate_locality(lc).passed());
    CHECK(verify_lgamma_carrier(fx.m, fx.s, fx.order_at_least(4)).passed());
    CHECK(verify_lgamma_carrier(fx.m, fx.s, {fx.v4, fx.s}).passed());
}

TEST_CASE("carriers of L_Gamma(GL3(2))") {
    testing::Gl32Setup gl;
    Locality plus = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    CHECK(plus.size() == 104);
    CHECK(verify_lgamma_carrier(gl.m, gl.s, gl.nontrivial()).passed());
}

TEST_CASE("bad object sets are rejected") {
    testing::S4Setup fx;
    CHECK_THROWS_AS(locality_from_group(fx.m, 2, fx.s, {fx.c4}), LocalityError);
    CHECK_THROWS_AS(locality_from_group(fx.m, 2, fx.s, {testing::members(fx.m, {{{1, 2}, {3, 4}}}), fx.v4, fx.s}), LocalityError);
    CHECK_THROWS_AS(locality_from_group(fx.m, 2, fx.c4, {fx.c4}), LocalityError);
}

TEST_CASE("validate_locality on the fixtures") {
    testing::S4Setup fx;
    for (const auto& l : {fx.plus(), fx.crit(), locality_from_group(fx.m, 2, fx.s, {fx.s})}) {
        Report r = validate_locality(l, 3);
        CHECK(r.passed());
        if (!r.passed()) MESSAGE(r.to_markdown("locality"));
    }
    testing::Gl32Setup gl;
    Locality plus = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    CHECK(validate_locality(plus, 3).passed());
}

TEST_CASE("deleting an object breaks overgroup closure") {
    testing::Gl32Setup gl;
    Locality plus = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    std::vector<Mask> objs;
    bool dropped = false;
    for (Mask p : plus.objects()) {
        if (!dropped && mask_size(p) == 4 && testing::is_cyclic(plus.S(), p)) {
            dropped = true;  // the cyclic subgroup of order 4
            continue;
        }
        objs.push_back(p);
    }
    REQUIRE(dropped);
    std::vector<int> inv = plus.pg().inverses();
    Locality broken(inv, plus.pg().identity(), plus.pg().table(), plus.action_ptr(), 2, plus.s_elements(), objs, plus.pg().names());
    Report r = validate_locality(broken, 3);
    CHECK_FALSE(r.find("objects-overgroup-closed")->passed);
}

TEST_CASE("S_f against the ambient group") {
    testing::S4Setup fx;
    Locality l = fx.plus();
    for (int f = 0; f < l.size(); ++f) {
        CHECK(l.s_f(f) == ambient_s_f(fx.m, fx.s, l.labels[static_cast<std::size_t>(f)]));
        CHECK(l.s_f(f) == s_f_by_definition(l, f));
    }
    CHECK(l.s_f(l.pg().identity()) == l.S().all());
    for (int x : l.s_elements()) CHECK(l.s_f(x) == l.S().all());
    const int t = testing::element(fx.m, {{3, 4}});
    int f = 0;
    while (l.labels[static_cast<std::size_t>(f)] != t) ++f;
    CHECK(mask_size(l.s_f(f)) == 4);
    CHECK(l.s_f(f) == s_mask(fx.s, intersect(fx.s, conjugate_subgroup(fx.m, fx.s, fx.m.inv(t)))));
}

TEST_CASE("word domain against the chain oracle") {
    testing::Gl32Setup gl;
    Locality plus = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    std::vector<Mask> cr;
    for (Mask p : plus.objects())
        if (mask_size(p) >= 4 && !(mask_size(p) == 4 && testing::is_cyclic(plus.S(), p))) cr.push_back(p);
    Locality crit = restrict(plus, cr).loc;
    CHECK(crit.size() == 40);
    std::size_t outside = 0;
    for (const Locality* l : {&plus, &crit}) {
        for (int a = 0; a < l->size(); ++a)
            for (int b = 0; b < l->size(); ++b) {
                const int w[] = {a, b};
                auto chain = word_domain_check(*l, w);
                CHECK(chain.has_value() == chain_oracle(*l, w));
                if (!chain) {
                    ++outside;
                    continue;
                }
                CHECK(chain->front() == l->s_word(w));
            }
    }
    CHECK(outside > 0);
    for (int f = 0; f < crit.size(); ++f) {
        const int w[] = {f, crit.pg().inverse(f)};
        auto chain = word_domain_check(crit, w);
        REQUIRE(chain.has_value());
        CHECK(chain->front() == crit.s_f(f));
    }
}

TEST_CASE("restriction") {
    testing::S4Setup fx;
    Locality plus = fx.plus();
    Restriction same = restrict(plus, plus.objects());
    CHECK(same.loc.size() == plus.size());
    CHECK(same.loc.pg().table() == plus.pg().table());
    Restriction cr = restrict(plus, {s_mask(fx.s, fx.v4), plus.S().all()});
    CHECK(cr.loc.size() == 24);
    for (int f = 0; f < cr.loc.size(); ++f) CHECK(cr.loc.s_f(f) == plus.s_f(cr.to_parent[static_cast<std::size_t>(f)]));
    CHECK(validate_locality(cr.loc, 3).passed());
    CHECK_THROWS_AS(restrict(plus, {s_mask(fx.s, fx.c4)}), LocalityError);

    testing::Gl32Setup gl;
    Locality gp = locality_from_group(gl.m, 2, gl.s, gl.nontrivial());
    std::vector<Mask> ge4, cr2;
    for (Mask p : gp.objects())
        if (mask_size(p) >= 4) ge4.push_back(p);
    for (Mask p : ge4)
        if (!(mask_size(p) == 4 && testing::is_cyclic(gp.S(), p))) cr2.push_back(p);
    Restriction mid = restrict(gp, ge4);
    Restriction twice = restrict(mid.loc, cr2);
    Restriction direct = restrict(gp, cr2);
    CHECK(twice.loc.size() == direct.loc.size());
    CHECK(twice.loc.pg().table() == direct.loc.pg().table());
    CHECK(twice.loc.labels == direct.loc.labels);
    // Missing an overgroup.
    std::vector<Mask> hole = ge4;
    hole.erase(std::find(hole.begin(), hole.end(), gp.S().all()));
    CHECK_THROWS_AS(restrict(gp, hole), LocalityError);
}

TEST_CASE("transporter sets") {
    testing::S4Setup fx;
    Locality l = fx.plus();
    const Mask v4 = s_mask(fx.s, fx.v4);
    const Mask c4 = s_mask(fx.s, fx.c4);
    CHECK(n_l(l, v4, v4).size() == 24);
    std::vector<int> nc4 = n_l(l, c4, c4);
    std::vector<int> amb;
    for (int f : nc4) amb.push_back(l.labels[static_cast<std::size_t>(f)]);
    std::sort(amb.begin(), amb.end());
    CHECK(amb == fx.s);
    auto nt = n_l(l, mask_bit(0), l.S().all());
    for (int x : l.s_elements()) CHECK(std::find(nt.begin(), nt.end(), x) != nt.end());
    CHECK(is_subgroup(l.pg(), normalizer(l, c4)));
}
