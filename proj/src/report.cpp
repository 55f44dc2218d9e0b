#include "loclab/report.hpp"

#include <sstream>

namespace loclab {

CheckResult& Report::check(const std::string& name) {
    for (auto& c : checks_)
        if (c.name == name) return c;
    checks_.push_back(CheckResult{name, true, 0, {}});
    return checks_.back();
}

void Report::pass(const std::string& name, std::size_t instances) { check(name).instances += instances; }

void Report::fail(const std::string& name, const std::string& witness) {
    auto& c = check(name);
    ++c.instances;
    if (c.passed) {
        c.passed = false;
        c.witness = witness;
    }
}

void Report::expect(const std::string& name, bool ok, const std::string& witness_if_bad) {
    if (ok)
        pass(name);
    else
        fail(name, witness_if_bad.empty() ? "condition violated" : witness_if_bad);
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks_) {
        auto& mine = check(prefix + c.name);
        mine.instances += c.instances;
        if (!c.passed && mine.passed) {
            mine.passed = false;
            mine.witness = c.witness;
        }
    }
    for (const auto& [k, v] : other.facts_.items()) facts_[prefix + k] = v;
}

bool Report::passed() const {
    for (const auto& c : checks_)
        if (!c.passed) return false;
    return true;
}

const CheckResult* Report::find(const std::string& name) const {
    for (const auto& c : checks_)
        if (c.name == name) return &c;
    return nullptr;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["passed"] = passed();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["instances"] = c.instances;
        if (!c.passed) e["witness"] = c.witness;
        arr.push_back(e);
    }
    j["checks"] = arr;
    if (!facts_.empty()) j["facts"] = facts_;
    return j;
}

std::string Report::to_markdown(const std::string& title) const {
    std::ostringstream out;
    out << "## " << title << "\n\n";
    out << "| check | result | instances | witness |\n|---|---|---|---|\n";
    for (const auto& c : checks_)
        out << "| " << c.name << " | " << (c.passed ? "pass" : "FAIL") << " | " << c.instances << " | "
            << (c.passed ? "" : c.witness) << " |\n";
    if (!facts_.empty()) {
        out << "\n";
        for (const auto& [k, v] : facts_.items()) out << "- " << k << ": " << v.dump() << "\n";
    }
    out << "\noverall: " << (passed() ? "pass" : "FAIL") << "\n";
    return out.str();
}

}  // namespace loclab
