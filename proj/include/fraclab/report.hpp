#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace fraclab {

using ojson = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    ojson details = ojson::object();
};

inline ojson make_report(const std::vector<CheckResult>& results) {
    ojson doc;
    doc["schema_version"] = kReportSchemaVersion;
    int passed = 0;
    ojson items = ojson::array();
    for (const auto& r : results) {
        passed += r.passed ? 1 : 0;
        ojson item;
        item["id"] = r.id;
        item["title"] = r.title;
        item["passed"] = r.passed;
        item["details"] = r.details;
        items.push_back(std::move(item));
    }
    doc["checks"] = static_cast<int>(results.size());
    doc["passed"] = passed;
    doc["results"] = std::move(items);
    return doc;
}

}  // namespace fraclab
