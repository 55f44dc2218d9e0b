#ifndef LOCLAB_REPORT_HPP
#define LOCLAB_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace loclab {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    std::string witness;  // first counterexample, cycle notation
};

// Ordered list of named checks; a check fails on its first counterexample.
class Report {
  public:
    // Returns a reference usable until the next call that adds a check.
    CheckResult& check(const std::string& name);
    void pass(const std::string& name, std::size_t instances = 1);
    void fail(const std::string& name, const std::string& witness);
    void expect(const std::string& name, bool ok, const std::string& witness_if_bad = {});
    void merge(const Report& other, const std::string& prefix = {});
    // Computed quantities (orders, counts) reported next to the checks.
    void note(const std::string& key, nlohmann::ordered_json value) { facts_[key] = std::move(value); }
    const nlohmann::ordered_json& facts() const { return facts_; }

    bool passed() const;
    const std::vector<CheckResult>& checks() const { return checks_; }
    const CheckResult* find(const std::string& name) const;
    nlohmann::ordered_json to_json() const;
    std::string to_markdown(const std::string& title) const;

  private:
    std::vector<CheckResult> checks_;
    nlohmann::ordered_json facts_ = nlohmann::ordered_json::object();
};

}  // namespace loclab

#endif
