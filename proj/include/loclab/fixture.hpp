#ifndef LOCLAB_FIXTURE_HPP
#define LOCLAB_FIXTURE_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "loclab/fusion.hpp"
#include "loclab/group.hpp"
#include "loclab/locality.hpp"
#include "loclab/report.hpp"

// Fixture documents: named permutation groups, localities built from a group
// or by restricting another locality, and nested pairs. The schema is in
// docs/fixtures.md.

namespace loclab {

// Malformed documents and dangling references.
class FixtureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "()" is the identity.
Perm parse_cycles(int degree, const std::string& text);

struct FixtureGroup {
    std::string name;
    Group group;
    int p = 0;
    Subgroup sylow;
    std::shared_ptr<const FusionSystem> fusion;  // F_S(G)
};

struct FixtureLocality {
    std::string name;
    std::string group;   // the ambient group at the root of the construction
    std::string parent;  // restricted locality, empty when built from the group
    std::string recipe;  // canonical text of the object-set recipe
    bool built = false;  // false when its objects or construction failed
    Locality loc;
    std::vector<Mask> objects;
};

struct FixturePair {
    std::string small;
    std::string plus;
};

struct FixtureBundle {
    std::string name;
    std::vector<FixtureGroup> groups;
    std::vector<FixtureLocality> localities;  // declaration order
    std::vector<FixturePair> pairs;
    Report build;  // one check per declared object

    const FixtureGroup* find_group(const std::string& name) const;
    const FixtureLocality* find_locality(const std::string& name) const;
};

// Parses and constructs every declared object. Schema and reference errors
// throw FixtureError; objects that are declared correctly but fail to build
// (e.g. a non-F-closed object list) are recorded as failed checks in `build`.
FixtureBundle build_fixture(const nlohmann::json& doc);
FixtureBundle load_fixture(const std::string& path);

// Object sets of a locality rendered by name; S itself is "S".
std::string subgroup_name(const TableGroup& s, Mask m);

}  // namespace loclab

#endif
