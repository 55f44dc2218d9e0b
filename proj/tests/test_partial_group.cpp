#include <doctest.h>

#include <set>

#include "loclab/locality.hpp"
#include "loclab/partial_group.hpp"
#include "test_support.hpp"

using namespace loclab;

namespace {

int id_of(const Locality& l, int ambient) {
    for (int f = 0; f < l.size(); ++f)
        if (l.labels[static_cast<std::size_t>(f)] == ambient) return f;
    return -1;
}

int id_of(const Locality& l, const Group& m, const testing::Cycles& c) { return id_of(l, testing::element(m, c)); }

std::vector<int> ids_of(const Locality& l, const Subgroup& ambient) {
    std::vector<int> r;
    for (int x : ambient) r.push_back(id_of(l, x));
    std::sort(r.begin(), r.end());
    return r;
}

// D without the one-letter word (banned).
class DropSingleton final : public DomainOracle {
  public:
    DropSingleton(std::shared_ptr<const DomainOracle> inner, int banned) : inner_(std::move(inner)), banned_(banned) {}
    bool contains(std::span<const int> w) const override {
        if (w.size() == 1 && w[0] == banned_) return false;
        return inner_->contains(w);
    }

  private:
    std::shared_ptr<const DomainOracle> inner_;
    int banned_;
};

}  // namespace

TEST_CASE("products in the S4 locality follow the ambient group") {
    testing::S4Setup fx;
    Locality l = fx.plus();
    const PartialGroup& pg = l.pg();
    CHECK(pg.product(std::span<const int>{}) == pg.identity());
    int a = id_of(l, fx.m, {{1, 2}, {3, 4}});
    int b = id_of(l, fx.m, {{1, 3}, {2, 4}});
    CHECK(pg.product({a, b}) == id_of(l, fx.m, {{1, 4}, {2, 3}}));
    for (int f = 0; f < pg.size(); ++f) {
        CHECK(pg.product({pg.inverse(f), f}) == pg.identity());
        CHECK(pg.inverse(pg.inverse(f)) == f);
        CHECK(pg.product({f, pg.identity()}) == f);
        CHECK(pg.product({pg.identity(), f}) == f);
    }
    // Every product agrees with the ambient group.
    for (int f = 0; f < pg.size(); ++f)
        for (int g = 0; g < pg.size(); ++g) {
            auto p = pg.product({f, g});
            REQUIRE(p.has_value());
            CHECK(l.labels[static_cast<std::size_t>(*p)] == fx.m.mul(l.labels[static_cast<std::size_t>(f)], l.labels[static_cast<std::size_t>(g)]));
        }
}

TEST_CASE("conjugation and conjugation domains") {
    testing::S4Setup fx;
    Locality l = fx.plus();
    const PartialGroup& pg = l.pg();
    int x = id_of(l, fx.m, {{1, 2}, {3, 4}});
    int g = id_of(l, fx.m, {{1, 2, 3, 4}});
    CHECK(pg.conjugate(x, g) == id_of(l, fx.m, {{1, 4}, {2, 3}}));
    for (int h = 0; h < pg.size(); ++h) CHECK(pg.conjugate(pg.identity(), h) == pg.identity());

    Locality c = fx.crit();
    int t = id_of(c, fx.m, {{1, 2}});
    std::vector<int> scan;
    for (int y = 0; y < c.size(); ++y) {
        const int w[] = {c.pg().inverse(t), y, t};
        if (c.pg().in_domain(w)) scan.push_back(y);
    }
    CHECK(c.pg().conj_domain(t) == scan);
}

TEST_CASE("axioms hold on constructed localities at k = 4") {
    testing::S4Setup fx;
    for (const auto& l : {fx.plus(), fx.crit(), locality_from_group(fx.m, 2, fx.s, {fx.s})}) {
        Report r = validate_partial_group(l.pg(), 4);
        CHECK(r.passed());
    }
    Group one = Group::generate(1, std::vector<Perm>{});
    CHECK(validate_partial_group(PartialGroup::from_group(one), 4).passed());
}

TEST_CASE("one mutation per axiom is caught") {
    testing::S4Setup fx;
    Locality l = fx.crit();
    const PartialGroup& pg = l.pg();
    const int a = id_of(l, fx.m, {{1, 2}});
    const int b = id_of(l, fx.m, {{1, 3}});

    PartialGroup pg1 = pg.with_domain(std::make_shared<DropSingleton>(pg.domain(), a));
    CHECK_FALSE(validate_partial_group(pg1, 3).find("PG1")->passed);

    // The fold starts at the identity, so corrupting its row changes length-one products.
    PartialGroup pg2 = pg.with_table_entry(pg.identity(), a, b);
    CHECK_FALSE(validate_partial_group(pg2, 3).find("PG2")->passed);

    PartialGroup pg3 = pg.with_table_entry(a, b, a);
    CHECK_FALSE(validate_partial_group(pg3, 3).find("PG3")->passed);

    std::vector<int> inv = pg.inverses();
    const int c = id_of(l, fx.m, {{1, 2, 3}});
    const int ci = pg.inverse(c);
    const int d = id_of(l, fx.m, {{1, 2, 4}});
    const int di = pg.inverse(d);
    inv[static_cast<std::size_t>(c)] = di;
    inv[static_cast<std::size_t>(di)] = c;
    inv[static_cast<std::size_t>(d)] = ci;
    inv[static_cast<std::size_t>(ci)] = d;
    Report r4 = validate_partial_group(pg.with_inverses(inv), 3);
    CHECK(r4.find("inversion")->passed);
    CHECK_FALSE(r4.find("PG4")->passed);
    CHECK_FALSE(r4.find("PG4")->witness.empty());
}

TEST_CASE("subset classification") {
    testing::S4Setup fx;
    Locality l = fx.plus();
    const PartialGroup& pg = l.pg();
    const std::vector<int> one{pg.identity()};
    auto k1 = classify_subset(pg, one);
    CHECK(k1.subgroup);
    CHECK(k1.partial_normal);
    auto kv = classify_subset(pg, ids_of(l, fx.v4));
    CHECK(kv.subgroup);
    CHECK(kv.partial_normal);
    std::vector<int> t{pg.identity(), id_of(l, fx.m, {{1, 2}})};
    std::sort(t.begin(), t.end());
    auto kt = classify_subset(pg, t);
    CHECK(kt.subgroup);
    CHECK_FALSE(kt.partial_normal);
    std::vector<int> bad{pg.identity(), id_of(l, fx.m, {{1, 2, 3}})};
    std::sort(bad.begin(), bad.end());
    CHECK_FALSE(classify_subset(pg, bad).partial_subgroup);
}

TEST_CASE("generated partial subgroups") {
    testing::S4Setup fx;
    Locality l = fx.plus();
    const PartialGroup& pg = l.pg();
    CHECK(generated_partial_subgroup(pg, std::vector<int>{}) == std::vector<int>{pg.identity()});
    CHECK(generated_partial_subgroup(pg, std::vector<int>{id_of(l, fx.m, {{1, 2, 3, 4}})}) == ids_of(l, fx.c4));
    std::vector<int> all(static_cast<std::size_t>(pg.size()));
    for (int f = 0; f < pg.size(); ++f) all[static_cast<std::size_t>(f)] = f;
    CHECK(generated_partial_subgroup(pg, all) == all);
}

TEST_CASE("map classification") {
    testing::S4Setup fx;
    Locality l = fx.crit();
    const PartialGroup& pg = l.pg();
    std::vector<int> id(static_cast<std::size_t>(pg.size()));
    for (int f = 0; f < pg.size(); ++f) id[static_cast<std::size_t>(f)] = f;
    auto hi = classify_map(pg, pg, id, 3);
    CHECK(hi.kind == HomKind::Isomorphism);
    CHECK(kernel(hi) == std::vector<int>{pg.identity()});

    std::vector<int> constant(static_cast<std::size_t>(pg.size()), pg.identity());
    auto hc = classify_map(pg, pg, constant, 3);
    CHECK(hc.kind == HomKind::Homomorphism);
    CHECK(kernel(hc) == id);
    CHECK(is_partial_normal(pg, kernel(hc)));

    // Conjugation by an element of S is an automorphism; subgroups map to subgroups.
    const int s = id_of(l, fx.m, {{1, 2, 3, 4}});
    std::vector<int> cs(static_cast<std::size_t>(pg.size()));
    for (int f = 0; f < pg.size(); ++f) cs[static_cast<std::size_t>(f)] = *pg.conjugate(f, s);
    auto h = classify_map(pg, pg, cs, 3);
    CHECK(h.kind == HomKind::Isomorphism);
    CHECK(is_partial_normal(pg, kernel(h)));
    for (const auto& sub : subgroup_lattice(fx.m)) {
        auto members = ids_of(l, sub);
        if (!is_subgroup(pg, members)) continue;
        std::vector<int> img;
        for (int f : members) img.push_back(cs[static_cast<std::size_t>(f)]);
        std::sort(img.begin(), img.end());
        CHECK(is_subgroup(pg, img));
    }

    // Swapping the identity with another element breaks PG2 compatibility.
    std::vector<int> swapped = id;
    std::swap(swapped[static_cast<std::size_t>(s)], swapped[static_cast<std::size_t>(pg.identity())]);
    CHECK(classify_map(pg, pg, swapped, 3).kind == HomKind::NotHomomorphism);
    CHECK_THROWS(kernel(classify_map(pg, pg, swapped, 3)));
}
