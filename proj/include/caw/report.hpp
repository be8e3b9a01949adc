#pragma once

#include "caw/io.hpp"

namespace caw {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;
    std::string group;
    int class_index = -1; // named cocycle class: index into H^3(G, Z_|G|)
    std::string cocycle_file;
    int degree = 3;
    int coeff_order = 0; // 0 = |G|
    int depth = 3;
    int stage = 0; // 0 = all stages
    int max_kernel = 4;
    int factors = 1;
    int count = 10;
    std::string mode = "class";
    std::string backend = "exact";
    double tolerance = 1e-9;
    std::uint64_t budget = kDefaultBasisBudget;
    std::uint64_t seed = 1;
    std::string out_path;

    void validate() const {
        if (tolerance <= 0) throw InputError("tolerance must be positive");
        if (budget == 0) throw InputError("basis budget must be positive");
        if (backend != "exact" && backend != "float")
            throw InputError("backend must be 'exact' or 'float'");
    }
    Json to_json() const;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    Json payload; // failure details, counts, values
};

struct Report {
    RunConfig config;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(const std::string& name, bool ok, Json payload = Json::object()) {
        checks.push_back({name, ok, std::move(payload)});
    }
    Json to_json() const;
};

// Deterministic serialization: sorted keys, canonical "p/q" phase strings,
// no wall-clock content. Identical configs and seed give identical bytes;
// timings are printed to the console instead of being embedded.
void emit_report(const Report& report, const std::string& path);

} // namespace caw
