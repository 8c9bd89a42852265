#pragma once

#include <string>
#include <vector>

namespace weilsum {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;  // witness on failure, optional note on success
};

struct CheckReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }

    const CheckResult* first_failure() const {
        for (const auto& c : checks) {
            if (!c.pass) return &c;
        }
        return nullptr;
    }

    void add(std::string name, bool pass, std::string detail = "") {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }

    void merge(const CheckReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
};

}  // namespace weilsum
