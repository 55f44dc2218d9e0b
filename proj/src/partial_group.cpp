#include "loclab/partial_group.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>

namespace loclab {

PartialGroup::PartialGroup(int identity, std::vector<int> inverse, std::vector<int> table,
                           std::shared_ptr<const DomainOracle> domain, std::vector<std::string> names)
    : n_(static_cast<int>(inverse.size())),
      identity_(identity),
      inverse_(std::move(inverse)),
      table_(std::move(table)),
      domain_(std::move(domain)),
      names_(std::move(names)) {
    if (table_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) throw std::invalid_argument("product table has wrong size");
    if (!domain_) throw std::invalid_argument("partial group needs a domain");
    if (names_.size() != static_cast<std::size_t>(n_)) {
        names_.clear();
        for (int i = 0; i < n_; ++i) names_.push_back("#" + std::to_string(i));
    }
}

PartialGroup PartialGroup::from_group(const Group& g) {
    const int n = g.order();
    std::vector<int> inv(static_cast<std::size_t>(n));
    std::vector<int> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
        inv[static_cast<std::size_t>(a)] = g.inv(a);
        names.push_back(g.name(a));
        for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a * n + b)] = g.mul(a, b);
    }
    return PartialGroup(g.identity(), std::move(inv), std::move(table), std::make_shared<FullDomain>(), std::move(names));
}

std::optional<int> PartialGroup::mul(int a, int b) const {
    int r = mul_or_neg(a, b);
    if (r < 0) return std::nullopt;
    return r;
}

std::optional<int> PartialGroup::product(std::span<const int> w) const {
    if (!in_domain(w)) return std::nullopt;
    int acc = identity_;
    for (int g : w) {
        int next = mul_or_neg(acc, g);
        if (next < 0) throw ProductError("binary table undefined while folding " + word_name(w));
        acc = next;
    }
    return acc;
}

std::optional<int> PartialGroup::product(std::initializer_list<int> w) const {
    return product(std::span<const int>(w.begin(), w.size()));
}

std::optional<int> PartialGroup::conjugate(int x, int g) const { return product({inverse(g), x, g}); }

std::vector<int> PartialGroup::conj_domain(int g) const {
    std::vector<int> r;
    for (int x = 0; x < n_; ++x) {
        const int w[] = {inverse(g), x, g};
        if (in_domain(w)) r.push_back(x);
    }
    return r;
}

Word PartialGroup::inverse_word(std::span<const int> w) const {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inverse(*it));
    return r;
}

std::string PartialGroup::word_name(std::span<const int> w) const {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ", ";
        s += name(w[i]);
    }
    return s + "]";
}

PartialGroup PartialGroup::with_table_entry(int a, int b, int value) const {
    PartialGroup c = *this;
    c.table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)] = value;
    return c;
}

PartialGroup PartialGroup::with_inverses(std::vector<int> inverse) const {
    PartialGroup c = *this;
    c.inverse_ = std::move(inverse);
    return c;
}

PartialGroup PartialGroup::with_domain(std::shared_ptr<const DomainOracle> domain) const {
    PartialGroup c = *this;
    c.domain_ = std::move(domain);
    return c;
}

namespace {

constexpr double kExhaustiveWordLimit = 2.5e6;

// Membership in D memoized for words of length at most 3; longer words go to the oracle.
class DomainMemo {
  public:
    explicit DomainMemo(const PartialGroup& pg) : pg_(pg), n_(static_cast<std::size_t>(pg.size())) {
        if (n_ * n_ * n_ <= kMaxCached) cache3_.assign(n_ * n_ * n_, kUnknown);
        cache2_.assign(n_ * n_, kUnknown);
    }
    bool contains(std::span<const int> w) {
        switch (w.size()) {
            case 0:
                return lookup(empty_, w);
            case 1:
                return letter(w);
            case 2:
                return lookup(cache2_[idx(w)], w);
            case 3:
                if (!cache3_.empty()) return lookup(cache3_[idx(w)], w);
                [[fallthrough]];
            default:
                return pg_.in_domain(w);
        }
    }

  private:
    static constexpr std::size_t kMaxCached = std::size_t{1} << 24;
    static constexpr std::int8_t kUnknown = -1;
    std::size_t idx(std::span<const int> w) const {
        std::size_t i = 0;
        for (int g : w) i = i * n_ + static_cast<std::size_t>(g);
        return i;
    }
    bool lookup(std::int8_t& slot, std::span<const int> w) {
        if (slot == kUnknown) slot = pg_.in_domain(w) ? 1 : 0;
        return slot == 1;
    }
    bool letter(std::span<const int> w) {
        if (cache1_.empty()) cache1_.assign(n_, kUnknown);
        return lookup(cache1_[static_cast<std::size_t>(w[0])], w);
    }
    const PartialGroup& pg_;
    std::size_t n_;
    std::int8_t empty_ = kUnknown;
    std::vector<std::int8_t> cache1_, cache2_, cache3_;
};

void all_words(const PartialGroup& pg, int k, Word& buf, const std::function<void(const WordVisit&)>& visit) {
    bool in = pg.in_domain(buf);
    visit(WordVisit{buf, in});
    if (static_cast<int>(buf.size()) == k) return;
    for (int g = 0; g < pg.size(); ++g) {
        buf.push_back(g);
        all_words(pg, k, buf, visit);
        buf.pop_back();
    }
}

void domain_words(const PartialGroup& pg, int k, Word& buf, const std::function<void(const WordVisit&)>& visit) {
    visit(WordVisit{buf, true});
    if (static_cast<int>(buf.size()) == k) return;
    for (int g = 0; g < pg.size(); ++g) {
        buf.push_back(g);
        if (pg.in_domain(buf)) domain_words(pg, k, buf, visit);
        buf.pop_back();
    }
}

}  // namespace

bool words_exhaustive(const PartialGroup& pg, int k) {
    double total = 1;
    for (int i = 0; i < k; ++i) total *= pg.size();
    return total <= kExhaustiveWordLimit;
}

void for_each_word(const PartialGroup& pg, int k, const std::function<void(const WordVisit&)>& visit,
                   bool force_exhaustive) {
    Word buf;
    if (force_exhaustive || words_exhaustive(pg, k))
        all_words(pg, k, buf, visit);
    else
        domain_words(pg, k, buf, visit);
}

Report validate_partial_group(const PartialGroup& pg, int k) {
    Report r;
    const int n = pg.size();
    {
        bool ok = pg.inverse(pg.identity()) == pg.identity();
        std::string wit = ok ? "" : "identity is not self-inverse";
        for (int f = 0; f < n && ok; ++f) {
            int g = pg.inverse(f);
            if (g < 0 || g >= n || pg.inverse(g) != f) {
                ok = false;
                wit = "inversion not involutory at " + pg.name(f);
            }
        }
        r.expect("inversion", ok, wit);
    }
    // Registered up front; the references below stay valid because no check is added later.
    for (const char* name : {"PG1", "PG2", "PG3", "PG4", "cancel-identity", "cancel-inverse-pair", "fold"}) r.check(name);
    CheckResult& pg1 = r.check("PG1");
    CheckResult& pg2 = r.check("PG2");
    CheckResult& pg3 = r.check("PG3");
    CheckResult& pg4 = r.check("PG4");
    CheckResult& cancel_id = r.check("cancel-identity");
    CheckResult& cancel_pair = r.check("cancel-inverse-pair");
    CheckResult& fold = r.check("fold");
    auto pass = [](CheckResult& c) { ++c.instances; };
    auto fail = [](CheckResult& c, const std::string& witness) {
        ++c.instances;
        if (c.passed) {
            c.passed = false;
            c.witness = witness;
        }
    };
    DomainMemo dom(pg);
    auto product = [&](std::span<const int> w) -> std::optional<int> {
        if (!dom.contains(w)) return std::nullopt;
        int acc = pg.identity();
        for (int g : w) {
            acc = pg.mul_or_neg(acc, g);
            if (acc < 0) throw ProductError("binary table undefined while folding " + pg.word_name(w));
        }
        return acc;
    };
    Word c;
    for_each_word(pg, k, [&](const WordVisit& v) {
        const auto w = v.word;
        const std::size_t len = w.size();
        if (len == 1 && !v.in_domain) {
            fail(pg1, "length-one word outside D: " + pg.word_name(w));
            return;
        }
        if (!v.in_domain) return;
        for (std::size_t i = 0; i <= len; ++i) {
            if (!dom.contains(w.subspan(0, i)) || !dom.contains(w.subspan(i))) {
                fail(pg1, "D not closed under subwords at " + pg.word_name(w));
                return;
            }
        }
        pass(pg1);
        auto splice = [&](std::size_t i, std::size_t j, const int* middle) {
            c.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            if (middle) c.push_back(*middle);
            c.insert(c.end(), w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
        };
        try {
            const int prod = *product(w);
            pass(fold);
            if (len == 1) {
                if (prod != w[0])
                    fail(pg2, pg.word_name(w) + " has product " + pg.name(prod));
                else
                    pass(pg2);
            }
            std::string bad;
            for (std::size_t i = 0; i <= len && bad.empty(); ++i)
                for (std::size_t j = i; j <= len && bad.empty(); ++j) {
                    auto pv = product(w.subspan(i, j - i));
                    if (!pv) continue;
                    // Replacing one letter by its own product reproduces w.
                    if (j == i + 1 && *pv == w[i]) continue;
                    splice(i, j, &*pv);
                    auto pc = product(c);
                    if (!pc || *pc != prod) bad = "bracketing " + pg.word_name(c) + " of " + pg.word_name(w);
                }
            if (!bad.empty())
                fail(pg3, bad);
            else
                pass(pg3);
            c = pg.inverse_word(w);
            c.insert(c.end(), w.begin(), w.end());
            auto pw = product(c);
            if (!pw || *pw != pg.identity())
                fail(pg4, "w^-1 w for w = " + pg.word_name(w));
            else
                pass(pg4);
            for (std::size_t i = 0; i < len; ++i) {
                if (w[i] != pg.identity()) continue;
                splice(i, i + 1, nullptr);
                auto pc = product(c);
                if (!pc || *pc != prod)
                    fail(cancel_id, pg.word_name(w));
                else
                    pass(cancel_id);
            }
            for (std::size_t i = 0; i < len; ++i) {
                for (std::size_t l = 1; i + 2 * l <= len; ++l) {
                    bool matches = true;
                    for (std::size_t t = 0; t < l && matches; ++t)
                        matches = w[i + l + t] == pg.inverse(w[i + l - 1 - t]);
                    if (!matches) continue;
                    splice(i, i + 2 * l, nullptr);
                    auto pc = product(c);
                    if (!pc || *pc != prod)
                        fail(cancel_pair, pg.word_name(w));
                    else
                        pass(cancel_pair);
                }
            }
        } catch (const ProductError& e) {
            fail(fold, e.what());
        }
    });
    return r;
}

bool is_partial_subgroup(const PartialGroup& pg, std::span<const int> members) {
    if (members.empty()) return false;
    for (int h : members)
        if (!contains(members, pg.inverse(h))) return false;
    for (int a : members)
        for (int b : members) {
            int c = pg.mul_or_neg(a, b);
            if (c >= 0 && !contains(members, c)) return false;
        }
    return true;
}

bool is_subgroup(const PartialGroup& pg, std::span<const int> members, int k) {
    if (!is_partial_subgroup(pg, members)) return false;
    Word buf;
    std::function<bool()> rec = [&]() -> bool {
        if (!pg.in_domain(buf)) return false;
        if (static_cast<int>(buf.size()) == k) return true;
        for (int h : members) {
            buf.push_back(h);
            bool ok = rec();
            buf.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    return rec();
}

bool is_partial_normal(const PartialGroup& pg, std::span<const int> members) {
    if (!is_partial_subgroup(pg, members)) return false;
    for (int f = 0; f < pg.size(); ++f)
        for (int h : members) {
            auto c = pg.conjugate(h, f);
            if (c && !contains(members, *c)) return false;
        }
    return true;
}

SubsetKind classify_subset(const PartialGroup& pg, std::span<const int> members) {
    SubsetKind k;
    k.partial_subgroup = is_partial_subgroup(pg, members);
    if (!k.partial_subgroup) return k;
    k.subgroup = is_subgroup(pg, members);
    k.partial_normal = is_partial_normal(pg, members);
    return k;
}

std::vector<int> generated_partial_subgroup(const PartialGroup& pg, std::span<const int> generators) {
    std::vector<bool> in(static_cast<std::size_t>(pg.size()), false);
    std::vector<int> members;
    std::vector<int> work;
    auto add = [&](int x) {
        if (!in[static_cast<std::size_t>(x)]) {
            in[static_cast<std::size_t>(x)] = true;
            members.push_back(x);
            work.push_back(x);
        }
    };
    add(pg.identity());
    for (int g : generators) add(g);
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        add(pg.inverse(x));
        const std::size_t count = members.size();
        for (std::size_t i = 0; i < count; ++i) {
            int y = members[i];
            int a = pg.mul_or_neg(x, y);
            if (a >= 0) add(a);
            int b = pg.mul_or_neg(y, x);
            if (b >= 0) add(b);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::string to_string(HomKind kind) {
    switch (kind) {
        case HomKind::NotHomomorphism: return "not-a-homomorphism";
        case HomKind::Homomorphism: return "homomorphism";
        case HomKind::Projection: return "projection";
        case HomKind::Isomorphism: return "isomorphism";
    }
    return "unknown";
}

namespace {

bool has_lift(const PartialGroup& src, const std::vector<std::vector<int>>& fibers, std::span<const int> target,
              Word& buf) {
    if (buf.size() == target.size()) return true;
    for (int x : fibers[static_cast<std::size_t>(target[buf.size()])]) {
        buf.push_back(x);
        bool ok = src.in_domain(buf) && has_lift(src, fibers, target, buf);
        buf.pop_back();
        if (ok) return true;
    }
    return false;
}

}  // namespace

PartialGroupHom classify_map(const PartialGroup& src, const PartialGroup& tgt, std::span<const int> map, int k) {
    PartialGroupHom h;
    h.map.assign(map.begin(), map.end());
    h.target_identity = tgt.identity();
    if (static_cast<int>(map.size()) != src.size()) {
        h.witness = "map has wrong length";
        return h;
    }
    for (int y : map)
        if (y < 0 || y >= tgt.size()) {
            h.witness = "image outside target";
            return h;
        }
    std::string bad;
    Word image;
    std::function<void(Word&)> rec = [&](Word& w) {
        if (!bad.empty()) return;
        image.clear();
        for (int x : w) image.push_back(map[static_cast<std::size_t>(x)]);
        auto pt = tgt.product(image);
        if (!pt) {
            bad = "image of " + src.word_name(w) + " is outside the target domain";
            return;
        }
        if (map[static_cast<std::size_t>(*src.product(w))] != *pt) {
            bad = "product of " + src.word_name(w) + " not preserved";
            return;
        }
        if (static_cast<int>(w.size()) == k) return;
        for (int g = 0; g < src.size() && bad.empty(); ++g) {
            w.push_back(g);
            if (src.in_domain(w)) rec(w);
            w.pop_back();
        }
    };
    Word w;
    try {
        rec(w);
    } catch (const ProductError& e) {
        bad = e.what();
    }
    if (!bad.empty()) {
        h.witness = bad;
        return h;
    }
    h.kind = HomKind::Homomorphism;
    std::vector<std::vector<int>> fibers(static_cast<std::size_t>(tgt.size()));
    for (int x = 0; x < src.size(); ++x) fibers[static_cast<std::size_t>(map[static_cast<std::size_t>(x)])].push_back(x);
    for (const auto& f : fibers)
        if (f.empty()) return h;
    bool lifts = true;
    Word tw;
    std::function<void()> trec = [&]() {
        if (!lifts) return;
        Word buf;
        if (!has_lift(src, fibers, tw, buf)) {
            lifts = false;
            return;
        }
        if (static_cast<int>(tw.size()) == k) return;
        for (int g = 0; g < tgt.size() && lifts; ++g) {
            tw.push_back(g);
            if (tgt.in_domain(tw)) trec();
            tw.pop_back();
        }
    };
    trec();
    if (!lifts) return h;
    h.kind = HomKind::Projection;
    bool injective = true;
    for (const auto& f : fibers)
        if (f.size() != 1) injective = false;
    if (injective) h.kind = HomKind::Isomorphism;
    return h;
}

std::vector<int> kernel(const PartialGroupHom& h) {
    if (h.kind == HomKind::NotHomomorphism) throw std::invalid_argument("kernel of a map that is not a homomorphism");
    std::vector<int> r;
    for (std::size_t i = 0; i < h.map.size(); ++i)
        if (h.map[i] == h.target_identity) r.push_back(static_cast<int>(i));
    return r;
}

}  // namespace loclab
