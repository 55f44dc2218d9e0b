// Batch driver: build a fixture, run verification suites over it, enumerate
// derived objects. Exit codes: 0 pass, 1 failed verification, 2 usage or parse error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "loclab/extension.hpp"
#include "loclab/fixture.hpp"
#include "loclab/fusion.hpp"
#include "loclab/normal.hpp"
#include "loclab/partial_group.hpp"
#include "loclab/transporter.hpp"

using namespace loclab;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const std::vector<std::string> kSuites{"axioms", "locality", "fusion", "theoremA1", "theoremC", "transporter", "exactseq", "all"};
const std::vector<std::string> kTargets{"subgroups", "objects", "partial-normal", "aut-locality", "aut-transporter", "out-typ"};

struct Options {
    std::string fixture;
    std::string suite;
    std::string what;
    std::string target;
    int max_word_len = kDefaultWordBound;
    std::size_t enum_cap = kDefaultEnumCap;
    std::string out = "json";
    bool timings = false;
};

struct Section {
    std::string suite;
    std::string target;
    Report report;
    double seconds = 0;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Runs one section; library errors become a failed "error" check so a single
// bad target does not hide the others.
Section run_section(const std::string& suite, const std::string& target, const std::function<void(Report&)>& body) {
    Section s{suite, target, {}, 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(s.report);
    } catch (const std::exception& e) {
        s.report.fail("error", e.what());
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

std::vector<const FixtureLocality*> built_localities(const FixtureBundle& b) {
    std::vector<const FixtureLocality*> out;
    for (const auto& l : b.localities)
        if (l.built) out.push_back(&l);
    return out;
}

Json names_of(const TableGroup& s, std::vector<Mask> ms) {
    std::sort(ms.begin(), ms.end(), [](Mask a, Mask b) { return mask_size(a) != mask_size(b) ? mask_size(a) < mask_size(b) : a < b; });
    Json j = Json::array();
    for (Mask m : ms) j.push_back(subgroup_name(s, m));
    return j;
}

bool contains_all(const std::vector<Mask>& big, const std::vector<Mask>& small) {
    return std::all_of(small.begin(), small.end(), [&](Mask m) { return std::find(big.begin(), big.end(), m) != big.end(); });
}

// ---- suites ----

void suite_axioms(const FixtureBundle& b, const Options& o, std::vector<Section>& out) {
    for (const auto* fl : built_localities(b))
        out.push_back(run_section("axioms", fl->name, [&](Report& r) {
            const Locality& l = fl->loc;
            r.merge(validate_partial_group(l.pg(), o.max_word_len));
            const auto normals = enumerate_partial_normal(l, o.enum_cap);
            for (std::size_t i = 0; i < normals.size(); ++i) {
                const PartialNormal& n = normals[i];
                if (n.size() == 1 || static_cast<int>(n.size()) == l.size()) continue;
                const std::string tag = "N" + std::to_string(i) + "(" + std::to_string(n.size()) + ")";
                QuotientLocality q = quotient(l, n);
                r.merge(validate_partial_group(q.loc.pg(), o.max_word_len), "quotient[" + tag + "].");
                Restriction ns = ns_locality(l, n);
                r.merge(validate_partial_group(ns.loc.pg(), o.max_word_len), "ns[" + tag + "].");
            }
            r.note("word_length", o.max_word_len);
            r.note("exhaustive", words_exhaustive(l.pg(), o.max_word_len));
        }));
}

void suite_locality(const FixtureBundle& b, const Options&, std::vector<Section>& out) {
    for (const auto* fl : built_localities(b))
        out.push_back(run_section("locality", fl->name, [&](Report& r) {
            const Locality& l = fl->loc;
            r.merge(validate_locality(l, 3));
            if (fl->parent.empty()) {
                const FixtureGroup* g = b.find_group(fl->group);
                std::vector<Subgroup> gamma;
                for (Mask m : fl->objects) {
                    Subgroup h;
                    for (int x : mask_members(m)) h.push_back(g->sylow[static_cast<std::size_t>(x)]);
                    gamma.push_back(std::move(h));
                }
                r.merge(verify_lgamma_carrier(g->group, g->sylow, gamma), "carrier.");
            }
            std::string why;
            r.note("size", l.size());
            r.note("objects", names_of(l.S(), l.objects()));
            r.note("linking", is_linking_locality(l, &why));
            if (!why.empty()) r.note("not_linking_because", why);
        }));
}

void suite_fusion(const FixtureBundle& b, const Options&, std::vector<Section>& out) {
    for (const auto* fl : built_localities(b))
        out.push_back(run_section("fusion", fl->name, [&](Report& r) {
            const Locality& l = fl->loc;
            const FusionSystem f = fusion_of_locality(l);
            r.merge(is_saturated(f), "saturation.");
            std::string w;
            r.expect("objects-f-closed", is_f_closed(f, l.objects(), &w), w);
            if (fl->parent.empty()) {
                const FusionSystem& g = *b.find_group(fl->group)->fusion;
                if (contains_all(l.objects(), centric_radical(g))) r.expect("equals-group-fusion", f == g, "fusion systems differ");
            } else {
                const FusionSystem pf = fusion_of_locality(b.find_locality(fl->parent)->loc);
                if (contains_all(l.objects(), centric_radical(pf))) r.expect("equals-parent-fusion", f == pf, "fusion systems differ");
            }
            r.note("isomorphisms", f.iso_count());
            r.note("classes", f.classes().size());
            r.note("centric_radical", names_of(f.S(), centric_radical(f)));
            r.note("center_order", mask_size(fusion_center(f)));
        }));
}

void suite_aut_restriction(const FixtureBundle& b, const Options& o, std::vector<Section>& out) {
    for (const auto& p : b.pairs)
        out.push_back(run_section("theoremA1", p.small + "<" + p.plus, [&](Report& r) {
            const auto& plus = *b.find_locality(p.plus);
            const auto& small = *b.find_locality(p.small);
            const FusionSystem f = fusion_of_locality(plus.loc);
            std::string w;
            r.expect("delta-aut-invariant", is_invariant_set(f, small.objects, &w), w);
            w.clear();
            r.expect("delta-plus-aut-invariant", is_invariant_set(f, plus.objects, &w), w);
            r.merge(verify_aut_restriction(plus.loc, small.objects, o.enum_cap), "restriction.");
        }));
}

void suite_normal_correspondence(const FixtureBundle& b, const Options& o, std::vector<Section>& out) {
    for (const auto& p : b.pairs)
        out.push_back(run_section("theoremC", p.small + "<" + p.plus, [&](Report& r) {
            r.merge(verify_theorem_c(b.find_locality(p.plus)->loc, b.find_locality(p.small)->objects, o.enum_cap));
        }));
}

void suite_transporter(const FixtureBundle& b, const Options&, std::vector<Section>& out) {
    for (const auto* fl : built_localities(b))
        out.push_back(run_section("transporter", fl->name, [&](Report& r) {
            const TransporterSystem t = transporter_of_locality(fl->loc);
            r.merge(validate_transporter(t), "axioms.");
            const TransporterLocality tl = locality_of_transporter(t);
            r.merge(verify_locality_of_transporter(t, tl), "locality.");
            const CarrierMap back(tl.loc.labels.begin(), tl.loc.labels.end());
            std::string why;
            const bool iso = is_locality_isomorphism(tl.loc, fl->loc, back, &why);
            r.expect("round-trip", iso && is_rigid(tl.loc, back), iso ? "not the identity on S" : why);
            r.note("objects", t.object_count());
            r.note("morphisms", t.morphism_count());
            r.note("linking", is_linking_system(t));
        }));
    for (const auto& p : b.pairs)
        out.push_back(run_section("transporter", p.small + "<" + p.plus, [&](Report& r) {
            const auto& plus = *b.find_locality(p.plus);
            const auto& small = *b.find_locality(p.small);
            const TransporterSystem tp = transporter_of_locality(plus.loc);
            const TransporterLocality lp = locality_of_transporter(tp);
            const SubTransporter sub = full_subcategory(tp, small.objects);
            const TransporterLocality ls = locality_of_transporter(sub.t);
            const Restriction rest = restrict(lp.loc, small.objects);
            const CarrierMap iota = iota_map(sub, ls, lp, rest);
            std::string why;
            r.expect("iota-isomorphism", is_locality_isomorphism(ls.loc, rest.loc, iota, &why), why);
        }));
}

void suite_exactseq(const FixtureBundle& b, const Options& o, std::vector<Section>& out) {
    for (const auto* fl : built_localities(b))
        out.push_back(run_section("exactseq", fl->name, [&](Report& r) {
            const TransporterSystem t = transporter_of_locality(fl->loc);
            std::string why;
            if (!is_linking_system(t, &why)) {
                r.note("skipped", "not a linking system: " + why);
                return;
            }
            const TransporterLocality tl = locality_of_transporter(t);
            r.merge(verify_exact_sequence(t, tl, nullptr, o.enum_cap), "sequence.");
            r.merge(verify_linking_elementary(t), "elementary.");
        }));
    for (const auto& p : b.pairs)
        out.push_back(run_section("exactseq", p.small + "<" + p.plus, [&](Report& r) {
            const TransporterSystem tp = transporter_of_locality(b.find_locality(p.plus)->loc);
            const SubTransporter sub = full_subcategory(tp, b.find_locality(p.small)->objects);
            const OutTyp big = out_typ(tp, locality_of_transporter(tp), o.enum_cap);
            const OutTyp small = out_typ(sub.t, locality_of_transporter(sub.t), o.enum_cap);
            r.expect("out-typ-equal", big.out_order == small.out_order,
                     std::to_string(big.out_order) + " vs " + std::to_string(small.out_order));
            r.note("out_typ_plus", big.out_order);
            r.note("out_typ", small.out_order);
        }));
}

std::vector<Section> run_suite(const FixtureBundle& b, const Options& o, const std::string& suite) {
    using Fn = void (*)(const FixtureBundle&, const Options&, std::vector<Section>&);
    const std::vector<std::pair<std::string, Fn>> table{{"axioms", suite_axioms},       {"locality", suite_locality},
                                                        {"fusion", suite_fusion},       {"theoremA1", suite_aut_restriction},
                                                        {"theoremC", suite_normal_correspondence},  {"transporter", suite_transporter},
                                                        {"exactseq", suite_exactseq}};
    std::vector<Section> out;
    for (const auto& [name, fn] : table)
        if (suite == "all" || suite == name) fn(b, o, out);
    return out;
}

// ---- enumeration ----

Json enumerate_one(const FixtureLocality& fl, const std::string& what, const Options& o) {
    const Locality& l = fl.loc;
    Json j;
    j["locality"] = fl.name;
    Json items = Json::array();
    if (what == "subgroups") {
        for (const auto& c : classify_subgroups(fusion_of_locality(l)))
            items.push_back({{"subgroup", subgroup_name(l.S(), c.subgroup)},
                             {"order", mask_size(c.subgroup)},
                             {"object", l.is_object(c.subgroup)},
                             {"fully_normalized", c.fully_normalized},
                             {"centric", c.centric},
                             {"radical", c.radical},
                             {"subcentric", c.subcentric}});
    } else if (what == "objects") {
        items = names_of(l.S(), l.objects());
    } else if (what == "partial-normal") {
        for (const auto& n : enumerate_partial_normal(l, o.enum_cap)) {
            Json members = Json::array();
            for (int f : n.members) members.push_back(l.pg().name(f));
            items.push_back({{"order", n.size()}, {"sylow", subgroup_name(l.S(), n.t)}, {"members", members}});
        }
    } else if (what == "aut-locality") {
        const auto auts = enumerate_aut(l, o.enum_cap);
        j["count"] = auts.size();
        j["rigid"] = std::count_if(auts.begin(), auts.end(), [&](const CarrierMap& a) { return is_rigid(l, a); });
        return j;
    } else if (what == "aut-transporter") {
        const TransporterSystem t = transporter_of_locality(l);
        const auto auts = aut_transporter(t, locality_of_transporter(t), o.enum_cap);
        j["count"] = auts.size();
        j["rigid"] = std::count_if(auts.begin(), auts.end(), [](const CategoryFunctor& a) { return a.flags.rigid; });
        if (t.object_count() <= kDirectFunctorObjectCap && t.morphism_count() <= kDirectFunctorMorphismCap)
            j["direct_count"] = enumerate_aut_direct(t).size();
        return j;
    } else if (what == "out-typ") {
        const TransporterSystem t = transporter_of_locality(l);
        const OutTyp ot = out_typ(t, locality_of_transporter(t), o.enum_cap);
        j["aut"] = ot.aut_order;
        j["inner"] = ot.inner_order;
        j["out_typ"] = ot.out_order;
        j["aut_t_s"] = ot.aut_s_order;
        j["center"] = ot.center_order;
        return j;
    }
    j["count"] = items.size();
    j["items"] = items;
    return j;
}

// ---- rendering ----

Json sections_json(const std::vector<Section>& secs, const Options& o) {
    Json arr = Json::array();
    for (const auto& s : secs) {
        Json e;
        e["suite"] = s.suite;
        e["target"] = s.target;
        e["passed"] = s.report.passed();
        if (o.timings) e["seconds"] = s.seconds;
        e["report"] = s.report.to_json();
        arr.push_back(std::move(e));
    }
    return arr;
}

bool all_passed(const std::vector<Section>& secs) {
    return std::all_of(secs.begin(), secs.end(), [](const Section& s) { return s.report.passed(); });
}

int emit(const FixtureBundle& b, const std::string& command, const std::string& detail, const std::vector<Section>& secs,
         const Options& o, const std::string& format) {
    const bool ok = all_passed(secs);
    if (format == "md") {
        std::cout << "# " << b.name << ": " << command << (detail.empty() ? "" : " " + detail) << "\n\n";
        for (const auto& s : secs) {
            std::cout << s.report.to_markdown(s.suite + " / " + s.target);
            if (o.timings) std::cout << "seconds: " << s.seconds << "\n";
            std::cout << "\n";
        }
        std::cout << "result: " << (ok ? "pass" : "FAIL") << "\n";
    } else {
        Json j;
        j["fixture"] = b.name;
        j["command"] = command;
        if (!detail.empty()) j["detail"] = detail;
        j["options"] = {{"max_word_len", o.max_word_len}, {"enum_cap", o.enum_cap}};
        j["passed"] = ok;
        j["sections"] = sections_json(secs, o);
        std::cout << j.dump(2) << "\n";
    }
    return ok ? kExitPass : kExitFail;
}

Section build_section(const FixtureBundle& b) {
    Section s{"build", "fixture", b.build, 0};
    for (const auto& fl : b.localities) {
        Json e;
        e["source"] = fl.parent.empty() ? "group " + fl.group : "restriction of " + fl.parent;
        e["recipe"] = fl.recipe;
        e["built"] = fl.built;
        if (fl.built) {
            e["size"] = fl.loc.size();
            e["objects"] = names_of(fl.loc.S(), fl.objects);
        }
        s.report.note(fl.name, e);
    }
    return s;
}

int run(const std::string& command, const Options& o, const std::string& format) {
    const FixtureBundle b = load_fixture(o.fixture);
    std::vector<Section> secs{build_section(b)};
    if (command == "build" || !b.build.passed()) return emit(b, command, "", secs, o, format);
    if (command == "verify" || command == "report") {
        const std::string suite = command == "report" ? std::string("all") : o.suite;
        auto more = run_suite(b, o, suite);
        secs.insert(secs.end(), more.begin(), more.end());
        return emit(b, command, suite, secs, o, format);
    }
    // enumerate
    std::vector<const FixtureLocality*> targets;
    if (o.target.empty()) {
        targets = built_localities(b);
    } else {
        const FixtureLocality* fl = b.find_locality(o.target);
        if (!fl) throw UsageError("unknown locality '" + o.target + "'");
        targets.push_back(fl);
    }
    Json results = Json::array();
    bool ok = true;
    for (const auto* fl : targets) {
        try {
            results.push_back(enumerate_one(*fl, o.what, o));
        } catch (const std::exception& e) {
            ok = false;
            results.push_back({{"locality", fl->name}, {"error", e.what()}});
        }
    }
    if (format == "md") {
        std::cout << "# " << b.name << ": enumerate " << o.what << "\n\n";
        for (const auto& r : results) {
            std::cout << "## " << r["locality"].get<std::string>() << "\n\n";
            for (const auto& [k, v] : r.items())
                if (k != "locality") std::cout << "- " << k << ": " << v.dump() << "\n";
            std::cout << "\n";
        }
    } else {
        Json j;
        j["fixture"] = b.name;
        j["command"] = "enumerate";
        j["what"] = o.what;
        j["options"] = {{"enum_cap", o.enum_cap}};
        j["results"] = results;
        std::cout << j.dump(2) << "\n";
    }
    return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification harness for finite localities and transporter systems"};
    app.require_subcommand(1, 1);
    Options o;
    app.add_option("--max-word-len", o.max_word_len, "Word length bound for partial-group axioms")->check(CLI::Range(1, 8));
    app.add_option("--enum-cap", o.enum_cap, "Cap on enumerated automorphisms and carriers")->check(CLI::PositiveNumber);
    auto* out_opt = app.add_option("--out", o.out, "Output format")->check(CLI::IsMember({"json", "md"}));
    app.add_flag("--timings", o.timings, "Include wall-clock seconds per section (output is then not reproducible)");

    auto* build = app.add_subcommand("build", "Construct and validate every object declared in a fixture");
    build->add_option("fixture", o.fixture, "Fixture JSON")->required();
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("fixture", o.fixture, "Fixture JSON")->required();
    verify->add_option("suite", o.suite, "Suite")->required()->check(CLI::IsMember(kSuites));
    auto* enumerate = app.add_subcommand("enumerate", "List derived objects");
    enumerate->add_option("fixture", o.fixture, "Fixture JSON")->required();
    enumerate->add_option("what", o.what, "Listing")->required()->check(CLI::IsMember(kTargets));
    enumerate->add_option("target", o.target, "Locality name (default: all)");
    auto* report = app.add_subcommand("report", "Run every suite; markdown unless --out json");
    report->add_option("fixture", o.fixture, "Fixture JSON")->required();
    for (auto* sub : {build, verify, enumerate, report}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const std::string format = command == "report" && out_opt->count() == 0 ? std::string("md") : o.out;
    try {
        return run(command, o, format);
    } catch (const FixtureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
