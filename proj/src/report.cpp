#include "caw/report.hpp"

namespace caw {

Json RunConfig::to_json() const {
    return Json{{"command", command},
                {"group", group},
                {"class_index", class_index},
                {"cocycle_file", cocycle_file},
                {"degree", degree},
                {"coeff_order", coeff_order},
                {"depth", depth},
                {"stage", stage},
                {"max_kernel", max_kernel},
                {"factors", factors},
                {"count", count},
                {"mode", mode},
                {"backend", backend},
                {"tolerance", tolerance},
                {"budget", budget},
                {"seed", seed}};
}

Json Report::to_json() const {
    Json checks_json = Json::array();
    for (const auto& c : checks)
        checks_json.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"payload", c.payload}});
    return Json{{"config", config.to_json()},
                {"checks", checks_json},
                {"status", pass() ? "pass" : "fail"},
                {"timing", "console-only (reports are byte-deterministic)"},
                {"version", kVersion}};
}

void emit_report(const Report& report, const std::string& path) {
    write_json_file(report.to_json(), path);
}

} // namespace caw
