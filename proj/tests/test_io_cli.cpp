#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "caw/report.hpp"
#include "caw/sweeps.hpp"

using namespace caw;

namespace {

std::string tmp_path(const std::string& name) {
    return std::string("caw_test_") + name;
}

int run_cli(const std::string& args) {
    const char* cli = std::getenv("CAW_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("group JSON round trip") {
    for (const auto& name : {"C4", "S3", "Q8"}) {
        GroupTable g = make_named_group(name);
        GroupTable h = group_from_json(group_to_json(g));
        CHECK(g.same_table(h));
        CHECK(g.inverse == h.inverse); // derived on load
    }
}

TEST_CASE("cochain JSON round trip preserves values and checks") {
    Cochain w = standard_cyclic_cocycle(4, 1);
    Cochain w2 = cochain_from_json(cochain_to_json(w));
    CHECK(w == w2);
    CHECK(is_cocycle(w2));
}

TEST_CASE("cochain loader: omitted tuples are zero, bad data rejected") {
    Json j = {{"group", "C2"},
              {"degree", 3},
              {"values", Json::array({Json{{"args", {1, 1, 1}}, {"phase", "1/2"}}})}};
    Cochain w = cochain_from_json(j);
    CHECK(w == standard_cyclic_cocycle(2, 1));

    Json bad = j;
    bad["values"].push_back(Json{{"args", {0, 1, 1}}, {"phase", "1/2"}});
    CHECK_THROWS_AS(cochain_from_json(bad), InputError); // not normalized
    bad["normalize"] = true;
    // normalization needs a cocycle; this one is not
    CHECK_THROWS_AS(cochain_from_json(bad), InputError);

    Json oob = j;
    oob["values"].push_back(Json{{"args", {2, 1, 1}}, {"phase", "1/2"}});
    CHECK_THROWS_AS(cochain_from_json(oob), InputError);
}

TEST_CASE("element JSON round trip") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    Element<Cyc> u = t.u[1][1][1];
    auto alg = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(u.algebra());
    auto mut = std::make_shared<MultiMatrixAlgebra>(*alg);
    Element<Cyc> back = element_from_json(element_to_json(u), mut);
    CHECK(back == element_from_json(element_to_json(u), mut));
    CHECK(back.entries().size() == u.entries().size());
}

TEST_CASE("action bundle round trip revalidates identically") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    AnomalousAction<Cyc> a = t.action_at(1);
    AnomalousAction<Cyc> b = action_from_json(action_to_json(a));
    CHECK(a == b);
    CHECK(validate_action(b).valid());
    CHECK(extract_anomaly(b) == extract_anomaly(a));
}

TEST_CASE("tower bundle round trip") {
    GroupTable g = make_named_group("C2");
    AfTower<Cyc> t = build_af_tower<Cyc>(g, standard_cyclic_cocycle(2, 1), 2);
    AfTower<Cyc> t2 = tower_from_json(tower_to_json(t));
    CHECK(verify_tower(t2).valid());
    for (int n = 0; n < 2; ++n) CHECK(t.action_at(n) == t2.action_at(n));
}

TEST_CASE("phases serialize as fraction strings, never floats") {
    Cochain w = standard_cyclic_cocycle(4, 1);
    std::string dumped = cochain_to_json(w).dump();
    CHECK(dumped.find("\"1/2\"") != std::string::npos);
    CHECK(dumped.find("0.5") == std::string::npos);
}

TEST_CASE("reports are byte-identical for identical config and seed") {
    RunConfig cfg;
    cfg.command = "tower build";
    cfg.group = "C2";
    cfg.class_index = 1;
    cfg.seed = 42;
    Report r1;
    r1.config = cfg;
    r1.add("alpha", true, Json{{"value", "1/2"}});
    r1.add("beta", false, Json{{"tuple", {1, 1, 1}}});
    Report r2 = r1;
    std::string p1 = tmp_path("rep1.json"), p2 = tmp_path("rep2.json");
    emit_report(r1, p1);
    emit_report(r2, p2);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1).find("\"seed\": 42") != std::string::npos);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("report of a failed check carries the offending tuple") {
    Report r;
    r.config.command = "coh check";
    r.add("is_cocycle", false, Json{{"failing_tuple", {1, 1, 1}}, {"value", "1/2"}});
    Json j = r.to_json();
    CHECK(j.at("status") == "fail");
    CHECK(j.at("checks")[0].at("payload").at("failing_tuple") == Json({1, 1, 1}));
}

TEST_CASE("cli: exit code contract") {
    CHECK(run_cli("group show --name C4") == 0);
    CHECK(run_cli("group list") == 0);
    CHECK(run_cli("frobnicate") == 2);                  // unknown command
    CHECK(run_cli("group show --name NotAGroup") == 2); // input error
    CHECK(run_cli("tower build --group C2 --class 1 --depth 2") == 0);
    CHECK(run_cli("coh compute --group C4 --degree 3") == 0);
    CHECK(run_cli("coh class-order --group C4 --class 2") == 0);
    CHECK(run_cli("coh restrict-scan --group C4 --class 1") == 0);
    CHECK(run_cli("jones find-extension --group C2 --class 1") == 0);
    CHECK(run_cli("action anomaly --group C2 --class 1 --depth 2") == 0);
    CHECK(run_cli("action compare --group C4 --class 1 --class2 2 --depth 2") == 1);
    CHECK(run_cli("rokhlin verify --group C3 --class 1 --depth 2") == 0);
}

TEST_CASE("cli: failed verification exits 1 and writes the report") {
    // a non-closed 2-cochain on S3
    GroupTable s3 = make_named_group("S3");
    Rng rng(11);
    Cochain c = random_cochain(s3, 2, 6, rng);
    while (is_cocycle(c)) c = random_cochain(s3, 2, 6, rng);
    std::string in = tmp_path("bad_cocycle.json");
    std::string out = tmp_path("bad_cocycle_report.json");
    write_json_file(cochain_to_json(c), in);
    CHECK(run_cli("coh check --file " + in + " --out " + out) == 1);
    Json rep = read_json_file(out);
    CHECK(rep.at("status") == "fail");
    CHECK(rep.at("checks")[0].at("payload").contains("failing_tuple"));
    std::remove(in.c_str());
    std::remove(out.c_str());
}

TEST_CASE("cli: determinism of emitted reports") {
    std::string o1 = tmp_path("det1.json"), o2 = tmp_path("det2.json");
    CHECK(run_cli("tower build --group C2 --class 1 --depth 2 --seed 7 --out " + o1) == 0);
    CHECK(run_cli("tower build --group C2 --class 1 --depth 2 --seed 7 --out " + o2) == 0);
    CHECK(slurp(o1) == slurp(o2));
    std::remove(o1.c_str());
    std::remove(o2.c_str());
}
