#ifndef LOCLAB_PARTIAL_GROUP_HPP
#define LOCLAB_PARTIAL_GROUP_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loclab/group.hpp"
#include "loclab/report.hpp"

namespace loclab {

using Word = std::vector<int>;

inline constexpr int kDefaultWordBound = 4;

// Membership test for the domain D of a partial group.
class DomainOracle {
  public:
    virtual ~DomainOracle() = default;
    virtual bool contains(std::span<const int> w) const = 0;
};

class FullDomain final : public DomainOracle {
  public:
    bool contains(std::span<const int>) const override { return true; }
};

// Raised when a word lies in D but the binary table cannot fold it.
class ProductError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Finite partial group. The product of a word is the left fold, starting from
// the identity, through the binary table; table entries are -1 off D.
class PartialGroup {
  public:
    PartialGroup() = default;
    PartialGroup(int identity, std::vector<int> inverse, std::vector<int> table,
                 std::shared_ptr<const DomainOracle> domain, std::vector<std::string> names);
    static PartialGroup from_group(const Group& g);

    int size() const { return n_; }
    int identity() const { return identity_; }
    int inverse(int f) const { return inverse_[static_cast<std::size_t>(f)]; }
    const std::vector<int>& inverses() const { return inverse_; }
    const std::vector<int>& table() const { return table_; }
    const std::string& name(int f) const { return names_[static_cast<std::size_t>(f)]; }
    const std::vector<std::string>& names() const { return names_; }
    std::shared_ptr<const DomainOracle> domain() const { return domain_; }

    int mul_or_neg(int a, int b) const { return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)]; }
    std::optional<int> mul(int a, int b) const;
    bool in_domain(std::span<const int> w) const { return domain_->contains(w); }
    // nullopt iff w is not in D; throws ProductError on an inconsistent table.
    std::optional<int> product(std::span<const int> w) const;
    std::optional<int> product(std::initializer_list<int> w) const;
    // x^g = product(g^-1, x, g).
    std::optional<int> conjugate(int x, int g) const;
    std::vector<int> conj_domain(int g) const;  // D(g)
    Word inverse_word(std::span<const int> w) const;
    std::string word_name(std::span<const int> w) const;

    // Copies with one structural fault, used to exercise the validators.
    PartialGroup with_table_entry(int a, int b, int value) const;
    PartialGroup with_inverses(std::vector<int> inverse) const;
    PartialGroup with_domain(std::shared_ptr<const DomainOracle> domain) const;

  private:
    int n_ = 0;
    int identity_ = 0;
    std::vector<int> inverse_;
    std::vector<int> table_;
    std::shared_ptr<const DomainOracle> domain_;
    std::vector<std::string> names_;
};

// Visits every word of length 0..k in D. When n^k is small every word of the
// free monoid is tested so non-prefix-closed domains are detected too.
struct WordVisit {
    std::span<const int> word;
    bool in_domain;
};
void for_each_word(const PartialGroup& pg, int k, const std::function<void(const WordVisit&)>& visit,
                   bool force_exhaustive = false);
bool words_exhaustive(const PartialGroup& pg, int k);

// Axioms PG1-PG4 and the two derived cancellation laws on D up to length k.
Report validate_partial_group(const PartialGroup& pg, int k = kDefaultWordBound);

struct SubsetKind {
    bool partial_subgroup = false;
    bool subgroup = false;
    bool partial_normal = false;
};
// members must be sorted. Closure under products of pairs suffices once PG3 holds.
bool is_partial_subgroup(const PartialGroup& pg, std::span<const int> members);
bool is_subgroup(const PartialGroup& pg, std::span<const int> members, int k = 3);
bool is_partial_normal(const PartialGroup& pg, std::span<const int> members);
SubsetKind classify_subset(const PartialGroup& pg, std::span<const int> members);
std::vector<int> generated_partial_subgroup(const PartialGroup& pg, std::span<const int> generators);

enum class HomKind { NotHomomorphism, Homomorphism, Projection, Isomorphism };
std::string to_string(HomKind kind);

struct PartialGroupHom {
    std::vector<int> map;
    HomKind kind = HomKind::NotHomomorphism;
    int target_identity = 0;
    std::string witness;  // first violated condition when not a homomorphism
};

// Bounded check of D alpha* subset D~ and product preservation on words up to k;
// projection additionally needs every D~ word to lift, isomorphism also injectivity.
PartialGroupHom classify_map(const PartialGroup& src, const PartialGroup& tgt, std::span<const int> map,
                             int k = kDefaultWordBound);
std::vector<int> kernel(const PartialGroupHom& h);

}  // namespace loclab

#endif
