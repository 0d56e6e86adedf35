#pragma once

/* Machine-readable findings shared by every checker.  Findings are kept
 * sorted by (check id, instance key) so report output is deterministic. */

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace exang {

struct Finding {
    std::string check;     // e.g. "assoc", "R1", "EA2"
    std::string instance;  // instance key, e.g. "t003" or "h*g*f"
    bool ok = true;
    std::string detail;
};

struct Report {
    std::vector<Finding> findings;
    std::map<std::string, std::string> params;  // bounds, universe notes

    void add(std::string check, std::string instance, bool ok, std::string detail = "") {
        findings.push_back({std::move(check), std::move(instance), ok, std::move(detail)});
    }

    void merge(const Report& o) {
        findings.insert(findings.end(), o.findings.begin(), o.findings.end());
        for (const auto& [k, v] : o.params) params.emplace(k, v);
    }

    void sort() {
        std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
            if (a.check != b.check) return a.check < b.check;
            return a.instance < b.instance;
        });
    }

    bool all_ok() const {
        for (const auto& f : findings)
            if (!f.ok) return false;
        return true;
    }

    std::size_t failure_count() const {
        std::size_t n = 0;
        for (const auto& f : findings)
            if (!f.ok) ++n;
        return n;
    }

    const Finding* first_failure() const {
        for (const auto& f : findings)
            if (!f.ok) return &f;
        return nullptr;
    }
};

}  // namespace exang
