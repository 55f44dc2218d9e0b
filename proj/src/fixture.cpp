#include "loclab/fixture.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace loclab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw FixtureError(where + ": " + what); }

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::string text_field(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_string()) fail(where, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

int int_field(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_number_integer()) fail(where, std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) fail(where, "expected an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Subgroup generated_by(const Group& g, const std::vector<std::string>& gens, const std::string& where) {
    std::vector<int> idx;
    for (const auto& c : gens) {
        Perm p;
        try {
            p = parse_cycles(g.degree(), c);
        } catch (const FixtureError& e) {
            fail(where, e.what());
        }
        const int i = g.index_of(p);
        if (i < 0) fail(where, "element " + c + " is not in the group");
        idx.push_back(i);
    }
    return generated_subgroup(g, idx);
}

// S-mask of an ambient subgroup, or nullopt when it is not inside S.
std::optional<Mask> mask_in(const Subgroup& sylow, const Subgroup& h) {
    Mask m = 0;
    for (int x : h) {
        auto it = std::lower_bound(sylow.begin(), sylow.end(), x);
        if (it == sylow.end() || *it != x) return std::nullopt;
        m |= mask_bit(static_cast<int>(it - sylow.begin()));
    }
    return m;
}

std::vector<Mask> up_closure(const FusionSystem& f, std::vector<Mask> seed) {
    std::set<Mask> out(seed.begin(), seed.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (Mask p : std::vector<Mask>(out.begin(), out.end())) {
            for (Mask q : f.conjugacy_class(p)) grew |= out.insert(q).second;
            for (Mask q : f.S().subgroups())
                if ((p & q) == p) grew |= out.insert(q).second;
        }
    }
    return {out.begin(), out.end()};
}

struct Recipe {
    std::string text;
    std::vector<Mask> objects;
    bool explicit_list = false;
};

// Resolves an object-set recipe against the fusion system it is defined over.
Recipe resolve_recipe(const json& entry, const FusionSystem& f, const Group& ambient, const Subgroup& sylow, const std::string& where) {
    const TableGroup& s = f.S();
    auto explicit_masks = [&](const json& list) {
        if (!list.is_array()) fail(where, "'subgroups' must be an array of generator lists");
        std::vector<Mask> out;
        for (const auto& gens : list) {
            auto m = mask_in(sylow, generated_by(ambient, string_list(gens, where), where));
            if (!m) fail(where, "listed subgroup is not contained in S");
            out.push_back(*m);
        }
        return out;
    };
    Recipe r;
    std::string name;
    if (entry.is_string()) {
        name = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("recipe")) {
        name = text_field(entry, "recipe", where);
    } else if (entry.is_object() && entry.contains("subgroups")) {
        r.objects = explicit_masks(entry.at("subgroups"));
        r.explicit_list = true;
        r.text = "explicit";
    } else {
        fail(where, "'objects' must be a recipe name, {\"recipe\": ...} or {\"subgroups\": [...]}");
    }
    if (!r.explicit_list) {
        if (name == "all") {
            r.objects = s.subgroups();
        } else if (name == "nontrivial") {
            for (Mask m : s.subgroups())
                if (mask_size(m) > 1) r.objects.push_back(m);
        } else if (name == "sylow") {
            r.objects = {s.all()};
        } else if (name == "crit") {
            r.objects = centric_radical(f);
        } else if (name == "centric") {
            r.objects = centric(f);
        } else if (name == "subcentric") {
            r.objects = subcentric(f);
        } else if (name == "order-ge") {
            const int n = int_field(entry, "n", where);
            Mask inside = 0;
            if (entry.contains("containing")) {
                auto m = mask_in(sylow, generated_by(ambient, string_list(entry.at("containing"), where), where));
                if (!m) fail(where, "'containing' is not contained in S");
                inside = *m;
            }
            for (Mask m : s.subgroups())
                if (mask_size(m) >= n && (m & inside) == inside) r.objects.push_back(m);
            name += " " + std::to_string(n);
            if (inside) name += " containing " + s.describe(inside);
        } else if (name == "up-closure") {
            r.objects = up_closure(f, explicit_masks(field(entry, "subgroups", where)));
        } else {
            fail(where, "unknown object-set recipe '" + name + "'");
        }
        r.text = name;
    }
    std::sort(r.objects.begin(), r.objects.end());
    r.objects.erase(std::unique(r.objects.begin(), r.objects.end()), r.objects.end());
    return r;
}

std::vector<Subgroup> ambient_subgroups(const Subgroup& sylow, const std::vector<Mask>& objects) {
    std::vector<Subgroup> out;
    for (Mask m : objects) {
        Subgroup h;
        for (int x : mask_members(m)) h.push_back(sylow[static_cast<std::size_t>(x)]);
        out.push_back(std::move(h));
    }
    return out;
}

FixtureGroup build_group(const json& g, const std::string& where) {
    FixtureGroup out;
    out.name = text_field(g, "name", where);
    const int degree = int_field(g, "degree", where);
    out.p = int_field(g, "p", where);
    if (!is_prime(out.p)) fail(where, "p must be prime");
    std::vector<Perm> gens;
    for (const auto& c : string_list(field(g, "generators", where), where)) gens.push_back(parse_cycles(degree, c));
    try {
        out.group = Group::generate(degree, gens);
    } catch (const GroupError& e) {
        fail(where, e.what());
    }
    if (g.contains("sylow")) {
        out.sylow = generated_by(out.group, string_list(g.at("sylow"), where), where);
        if (static_cast<int>(out.sylow.size()) != p_part(static_cast<std::size_t>(out.group.order()), out.p))
            fail(where, "'sylow' does not generate a Sylow subgroup");
    } else {
        out.sylow = sylow(out.group, out.group.all(), out.p);
    }
    if (out.sylow.size() > 64) fail(where, "Sylow subgroups above order 64 are not supported");
    out.fusion = std::make_shared<const FusionSystem>(fusion_of_group(out.group, out.group.all(), out.sylow, out.sylow, out.p));
    return out;
}

}  // namespace

Perm parse_cycles(int degree, const std::string& text) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    const std::string where = "cycle notation '" + text + "'";
    auto bad = [&](const char* why) { fail(where, why); };
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') bad("expected '('");
        ++i;
        std::vector<int> cyc;
        while (true) {
            while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
            if (i >= text.size()) bad("unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) bad("expected a point");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > 1000000) bad("point out of range");
                ++i;
            }
            cyc.push_back(v);
        }
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
    }
    try {
        return perm_from_cycles(degree, cycles);
    } catch (const GroupError& e) {
        fail(where, e.what());
    }
}

std::string subgroup_name(const TableGroup& s, Mask m) { return m == s.all() ? "S" : s.describe(m); }

const FixtureGroup* FixtureBundle::find_group(const std::string& n) const {
    for (const auto& g : groups)
        if (g.name == n) return &g;
    return nullptr;
}

const FixtureLocality* FixtureBundle::find_locality(const std::string& n) const {
    for (const auto& l : localities)
        if (l.name == n) return &l;
    return nullptr;
}

FixtureBundle build_fixture(const json& doc) {
    if (!doc.is_object()) fail("fixture", "top level must be an object");
    FixtureBundle b;
    b.name = doc.contains("name") ? text_field(doc, "name", "fixture") : std::string("fixture");
    const json& groups = field(doc, "groups", "fixture");
    if (!groups.is_array()) fail("fixture", "'groups' must be an array");
    for (const auto& g : groups) {
        FixtureGroup fg = build_group(g, "group");
        if (b.find_group(fg.name)) fail("group " + fg.name, "duplicate name");
        b.groups.push_back(std::move(fg));
    }
    const json& locs = field(doc, "localities", "fixture");
    if (!locs.is_array()) fail("fixture", "'localities' must be an array");
    for (const auto& entry : locs) {
        FixtureLocality fl;
        fl.name = text_field(entry, "name", "locality");
        const std::string where = "locality " + fl.name;
        if (b.find_locality(fl.name)) fail(where, "duplicate name");
        const bool from_group = entry.contains("group");
        if (from_group == entry.contains("restrict")) fail(where, "exactly one of 'group' and 'restrict' is required");
        const FixtureLocality* parent = nullptr;
        if (from_group) {
            fl.group = text_field(entry, "group", where);
        } else {
            fl.parent = text_field(entry, "restrict", where);
            parent = b.find_locality(fl.parent);
            if (!parent) fail(where, "unknown locality '" + fl.parent + "' (declare it first)");
            fl.group = parent->group;
        }
        const FixtureGroup* g = b.find_group(fl.group);
        if (!g) fail(where, "unknown group '" + fl.group + "'");
        const std::string check = "build." + fl.name;
        if (parent && !parent->built) {
            b.build.fail(check, "parent " + fl.parent + " failed to build");
            b.localities.push_back(std::move(fl));
            continue;
        }
        std::shared_ptr<const FusionSystem> f = g->fusion;
        if (parent) f = std::make_shared<const FusionSystem>(fusion_of_locality(parent->loc));
        Recipe r = resolve_recipe(field(entry, "objects", where), *f, g->group, g->sylow, where);
        fl.recipe = r.text;
        fl.objects = r.objects;
        std::string witness;
        if (!is_f_closed(*f, r.objects, &witness)) {
            b.build.fail(check, "object set is not F-closed: " + witness);
            b.localities.push_back(std::move(fl));
            continue;
        }
        if (parent) {
            for (Mask m : r.objects)
                if (!parent->loc.is_object(m)) fail(where, "object " + f->S().describe(m) + " is not an object of " + fl.parent);
        }
        try {
            fl.loc = parent ? restrict(parent->loc, r.objects).loc
                            : locality_from_group(g->group, g->p, g->sylow, ambient_subgroups(g->sylow, r.objects));
            fl.built = true;
            Report v = validate_locality(fl.loc, 3);
            if (v.passed()) {
                b.build.pass(check);
            } else {
                for (const auto& c : v.checks())
                    if (!c.passed) {
                        b.build.fail(check, c.name + ": " + c.witness);
                        break;
                    }
            }
        } catch (const LocalityError& e) {
            b.build.fail(check, e.what());
        }
        b.localities.push_back(std::move(fl));
    }
    if (doc.contains("pairs")) {
        if (!doc.at("pairs").is_array()) fail("fixture", "'pairs' must be an array");
        for (const auto& p : doc.at("pairs")) {
            FixturePair fp{text_field(p, "small", "pair"), text_field(p, "plus", "pair")};
            const std::string where = "pair " + fp.small + " < " + fp.plus;
            const FixtureLocality* s = b.find_locality(fp.small);
            const FixtureLocality* l = b.find_locality(fp.plus);
            if (!s || !l) fail(where, "unknown locality");
            if (s->parent != fp.plus) fail(where, "the small locality must be declared as a restriction of the larger one");
            b.build.expect("build.pair." + fp.small + "<" + fp.plus, s->built && l->built, "member failed to build");
            b.pairs.push_back(std::move(fp));
        }
    }
    return b;
}

FixtureBundle load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError(path + ": cannot open");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw FixtureError(path + ": " + e.what());
    }
    try {
        return build_fixture(doc);
    } catch (const json::exception& e) {
        throw FixtureError(path + ": " + e.what());
    }
}

}  // namespace loclab
