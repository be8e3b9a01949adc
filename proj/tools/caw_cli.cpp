// caw: exact workbench for anomalous finite-group actions on
// finite-dimensional C*-algebras.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "caw/cohomology.hpp"
#include "caw/crossed.hpp"
#include "caw/report.hpp"
#include "caw/sweeps.hpp"

namespace caw {
namespace {

Cochain resolve_cocycle(const RunConfig& cfg, const GroupTable& g) {
    if (!cfg.cocycle_file.empty()) {
        Cochain c = cochain_from_json(read_json_file(cfg.cocycle_file));
        if (!c.group().same_table(g) && !cfg.group.empty())
            throw InputError("cocycle file group does not match --group");
        return c;
    }
    if (cfg.class_index < 0) throw InputError("need --class or --file for the cocycle");
    // Cyclic groups use the canonical representatives; other groups index
    // into the computed H^3(G, Z_|G|) class list.
    if (g.name.size() == 2 && g.name[0] == 'C' && g.name[1] >= '2' && g.name[1] <= '8')
        return standard_cyclic_cocycle(g.order, cfg.class_index % g.order);
    auto reps = all_class_representatives(g, 3, g.order);
    if (cfg.class_index >= static_cast<int>(reps.size()))
        throw InputError("class index out of range (H^3 has " + std::to_string(reps.size()) +
                         " classes)");
    return reps[cfg.class_index];
}

GroupTable resolve_group(const RunConfig& cfg) {
    if (cfg.group.empty()) throw InputError("--group is required");
    return make_named_group(cfg.group);
}

int finish(Report& report) {
    for (const auto& c : report.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "\n";
    if (!report.config.out_path.empty()) emit_report(report, report.config.out_path);
    return report.pass() ? 0 : 1;
}

void add_tower_checks(Report& report, const TowerReport& tr, const std::string& prefix) {
    report.add(prefix + "verify", tr.valid(), verification_failures_to_json(tr.failures));
}

template <class S>
void run_tower(Report& report, const RunConfig& cfg) {
    GroupTable g = resolve_group(cfg);
    Cochain w = resolve_cocycle(cfg, g);
    AfTower<S> t = build_af_tower<S>(g, w, cfg.depth, cfg.budget);
    add_tower_checks(report, verify_tower(t), "tower_");
}

void cmd_tower(Report& report, const RunConfig& cfg, const std::string& bundle_out,
               const std::string& bundle_in) {
    if (!bundle_in.empty()) {
        AfTower<Cyc> t = tower_from_json(read_json_file(bundle_in));
        add_tower_checks(report, verify_tower(t), "tower_");
        return;
    }
    if (cfg.backend == "float") {
        Cplx::tolerance = cfg.tolerance;
        run_tower<Cplx>(report, cfg);
        return;
    }
    GroupTable g = resolve_group(cfg);
    Cochain w = resolve_cocycle(cfg, g);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, cfg.depth, cfg.budget);
    add_tower_checks(report, verify_tower(t), "tower_");
    if (!bundle_out.empty()) write_json_file(tower_to_json(t), bundle_out);
}

void cmd_jones(Report& report, const RunConfig& cfg, bool do_induce, bool do_rokhlin) {
    GroupTable g = resolve_group(cfg);
    Cochain w = resolve_cocycle(cfg, g);
    auto ext = find_trivializing_extension(g, w, cfg.max_kernel);
    Json payload = Json::object();
    if (ext) {
        payload["gamma"] = group_to_json(ext->first.source);
        payload["kernel"] = ext->first.kernel;
        payload["c"] = cochain_to_json(ext->second);
        payload["dc_equals_pullback"] =
            (differential(ext->second) == pullback(ext->first, w));
    }
    report.add("extension_found", ext.has_value(), payload);
    if (!ext || !do_induce) return;

    JonesConfig jc = jones_regular_config(ext->first.source, cfg.factors);
    if (cfg.backend == "float") {
        Cplx::tolerance = cfg.tolerance;
        JonesInduced<Cplx> ind = jones_induce_float(jc, ext->first, ext->second);
        report.add("induced_action_valid", validate_action(ind.action).valid());
        report.add("anomaly_matches", ind.anomaly_pointwise);
        if (do_rokhlin) {
            EkRokhlin<Cplx> rok = rokhlin_from_eK(ind, jc);
            report.add("rokhlin_eK", rok.report.valid(),
                       verification_failures_to_json(rok.report.failures));
        }
        return;
    }
    JonesInduced<Cyc> ind = jones_induce(jc, ext->first, ext->second);
    ActionReport va = validate_action(ind.action);
    report.add("induced_action_valid", va.valid(), verification_failures_to_json(va.failures));
    report.add("anomaly_class_equals_omega", ind.anomaly_class,
               Json{{"pointwise", ind.anomaly_pointwise},
                    {"extracted", cochain_to_json(ind.extracted)}});
    if (do_rokhlin) {
        EkRokhlin<Cyc> rok = rokhlin_from_eK(ind, jc);
        report.add("rokhlin_eK", rok.report.valid(),
                   verification_failures_to_json(rok.report.failures));
    }
}

void cmd_rokhlin_average(Report& report, const RunConfig& cfg) {
    GroupTable g = resolve_group(cfg);
    Cochain w = resolve_cocycle(cfg, g);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, cfg.depth, cfg.budget);
    int stage = cfg.stage > 0 ? cfg.stage : t.depth;
    Rng rng(cfg.seed);
    bool omega_zero = w.is_zero();
    for (int i = 0; i < cfg.count; ++i) {
        LinearMap<Cyc> psi = random_nonequivariant_hom(t, stage - 1, rng);
        AverageResult<Cyc> avg = rokhlin_average(t.action_at(stage - 1), t.rokhlin[stage - 1], psi);
        std::string tag = "average_" + std::to_string(i);
        report.add(tag + "_homomorphism", avg.homomorphism_ok && avg.commutation_ok);
        if (omega_zero)
            report.add(tag + "_defect_zero", avg.defect_zero());
        else
            report.add(tag + "_defect_nonzero", !avg.defect_zero(),
                       Json{{"defect_count", avg.defects.size()}});
    }
}

void cmd_rokhlin_trivialize(Report& report, const RunConfig& cfg) {
    GroupTable g = resolve_group(cfg);
    Cochain w = resolve_cocycle(cfg, g);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, cfg.depth, cfg.budget);
    int stage = cfg.stage > 0 ? cfg.stage : t.depth;
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.count; ++i) {
        Element<Cyc> wu = random_tower_commuting_unitary(t, stage - 1, rng);
        AnomalousAction<Cyc> act = t.action_at(stage - 1);
        auto v = coboundary_alpha_cocycle(act, wu);
        std::string tag = "trivialize_" + std::to_string(i);
        bool ok = false;
        try {
            Element<Cyc> u = trivialize_cocycle(act, t.rokhlin[stage - 1], v);
            ok = true;
            (void)u;
        } catch (const InvariantViolation&) {
            ok = false;
        }
        report.add(tag, ok);
    }
}

void cmd_action_perturb(Report& report, const RunConfig& cfg) {
    GroupTable g = resolve_group(cfg);
    Cochain w = resolve_cocycle(cfg, g);
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, cfg.depth, cfg.budget);
    int stage = cfg.stage > 0 ? cfg.stage : t.depth;
    AnomalousAction<Cyc> act = t.action_at(stage - 1);
    Cochain base = extract_anomaly(act);
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.count; ++i) {
        std::vector<Element<Cyc>> v;
        v.push_back(Element<Cyc>::unit(act.algebra));
        for (int x = 1; x < g.order; ++x)
            v.push_back(random_monomial_unitary(
                std::dynamic_pointer_cast<const MultiMatrixAlgebra>(act.algebra), 2 * g.order,
                rng));
        AnomalousAction<Cyc> pert = unitary_perturbation(act, v);
        report.add("perturb_" + std::to_string(i) + "_anomaly_invariant",
                   extract_anomaly(pert) == base && validate_action(pert).valid());
    }
}

void cmd_action_compare(Report& report, const RunConfig& cfg, int class2) {
    GroupTable g = resolve_group(cfg);
    Cochain w1 = resolve_cocycle(cfg, g);
    RunConfig cfg2 = cfg;
    cfg2.class_index = class2;
    Cochain w2 = resolve_cocycle(cfg2, g);
    AfTower<Cyc> t1 = build_af_tower<Cyc>(g, w1, cfg.depth, cfg.budget);
    AfTower<Cyc> t2 = build_af_tower<Cyc>(g, w2, cfg.depth, cfg.budget);
    int stage = cfg.stage > 0 ? cfg.stage : cfg.depth;
    CompareMode mode =
        cfg.mode == "pointwise" ? CompareMode::pointwise : CompareMode::class_level;
    InvariantComparison cmp =
        compare_invariants(t1.action_at(stage - 1), t2.action_at(stage - 1), mode);
    report.add("invariants_agree", cmp.agree(),
               Json{{"anomaly_pointwise", cmp.anomaly_pointwise},
                    {"anomaly_class", cmp.anomaly_class},
                    {"k0_equal", cmp.k0_equal},
                    {"k0_comparable", cmp.k0_comparable},
                    {"k1", "zero for finite-dimensional algebras (recorded, not computed)"}});
}

void cmd_action_tensor(Report& report, const RunConfig& cfg, int class2) {
    GroupTable g = resolve_group(cfg);
    Cochain w1 = resolve_cocycle(cfg, g);
    RunConfig cfg2 = cfg;
    cfg2.class_index = class2;
    Cochain w2 = resolve_cocycle(cfg2, g);
    int depth = std::min(cfg.depth, 2);
    AfTower<Cyc> t1 = build_af_tower<Cyc>(g, w1, depth, cfg.budget);
    AfTower<Cyc> t2 = build_af_tower<Cyc>(g, w2, depth, cfg.budget);
    AnomalousAction<Cyc> prod = tensor_actions(t1.action_at(depth - 1), t2.action_at(depth - 1));
    report.add("tensor_valid", validate_action(prod).valid());
    report.add("tensor_anomaly_is_sum", extract_anomaly(prod) == w1 + w2);
}

} // namespace
} // namespace caw

int main(int argc, char** argv) {
    using namespace caw;
    CLI::App app{"exact workbench for anomalous finite-group actions on "
                 "finite-dimensional C*-algebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string bundle_out, bundle_in, name_opt;
    int class2 = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "write the JSON report here");
        sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
        sub->add_option("--backend", cfg.backend, "exact|float");
        sub->add_option("--tolerance", cfg.tolerance, "float backend tolerance");
        sub->add_option("--budget", cfg.budget, "basis label budget");
    };
    auto add_cocycle_opts = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "named group");
        sub->add_option("--class", cfg.class_index, "cocycle class index");
        sub->add_option("--file", cfg.cocycle_file, "cocycle JSON file");
    };

    auto* grp = app.add_subcommand("group", "finite group tables");
    auto* grp_list = grp->add_subcommand("list", "list the named groups");
    auto* grp_show = grp->add_subcommand("show", "print a group table");
    grp_show->add_option("--name", name_opt, "group name")->required();
    add_common(grp_show);

    auto* coh = app.add_subcommand("coh", "group cohomology");
    auto* coh_compute = coh->add_subcommand("compute", "H^n(G, Z_m)");
    add_cocycle_opts(coh_compute);
    coh_compute->add_option("--degree", cfg.degree, "cohomology degree (2 or 3)");
    coh_compute->add_option("--coeff-order", cfg.coeff_order, "coefficient order m (0 = |G|)");
    add_common(coh_compute);
    auto* coh_check = coh->add_subcommand("check", "cocycle check");
    add_cocycle_opts(coh_check);
    add_common(coh_check);
    auto* coh_order = coh->add_subcommand("class-order", "order of a cocycle class");
    add_cocycle_opts(coh_order);
    add_common(coh_order);
    auto* coh_scan = coh->add_subcommand("restrict-scan", "subgroup nontriviality scan");
    add_cocycle_opts(coh_scan);
    add_common(coh_scan);

    auto* tower = app.add_subcommand("tower", "the AF model action");
    auto* tower_build = tower->add_subcommand("build", "build and verify a tower");
    add_cocycle_opts(tower_build);
    tower_build->add_option("--depth", cfg.depth, "tower depth");
    tower_build->add_option("--bundle", bundle_out, "write the tower bundle here");
    tower_build->add_option("--verify", cfg.mode, "all|none")->default_val("all");
    add_common(tower_build);
    auto* tower_verify = tower->add_subcommand("verify", "verify a tower (rebuild or bundle)");
    add_cocycle_opts(tower_verify);
    tower_verify->add_option("--depth", cfg.depth, "tower depth");
    tower_verify->add_option("--bundle", bundle_in, "tower bundle to load");
    add_common(tower_verify);

    auto* jones = app.add_subcommand("jones", "twisted-crossed-product induction");
    auto* jones_ext = jones->add_subcommand("find-extension", "search trivializing (Gamma, rho, c)");
    add_cocycle_opts(jones_ext);
    jones_ext->add_option("--max-kernel", cfg.max_kernel, "largest cyclic kernel order");
    add_common(jones_ext);
    auto* jones_induce_cmd = jones->add_subcommand("induce", "induce the model action");
    add_cocycle_opts(jones_induce_cmd);
    jones_induce_cmd->add_option("--max-kernel", cfg.max_kernel, "largest cyclic kernel order");
    jones_induce_cmd->add_option("--factors", cfg.factors, "tensor factors in B (1 or 2)");
    add_common(jones_induce_cmd);
    auto* jones_verify = jones->add_subcommand("verify", "induce plus Rokhlin projections");
    add_cocycle_opts(jones_verify);
    jones_verify->add_option("--max-kernel", cfg.max_kernel, "largest cyclic kernel order");
    jones_verify->add_option("--factors", cfg.factors, "tensor factors in B (1 or 2)");
    add_common(jones_verify);

    auto* action = app.add_subcommand("action", "anomalous action operations");
    auto* act_validate = action->add_subcommand("validate", "validate an action bundle");
    act_validate->add_option("--file", cfg.cocycle_file, "action bundle JSON")->required();
    add_common(act_validate);
    auto* act_anomaly = action->add_subcommand("anomaly", "extract the anomaly");
    add_cocycle_opts(act_anomaly);
    act_anomaly->add_option("--depth", cfg.depth, "tower depth");
    act_anomaly->add_option("--stage", cfg.stage, "tower stage (default: top)");
    add_common(act_anomaly);
    auto* act_perturb = action->add_subcommand("perturb", "seeded unitary perturbations");
    add_cocycle_opts(act_perturb);
    act_perturb->add_option("--depth", cfg.depth, "tower depth");
    act_perturb->add_option("--stage", cfg.stage, "tower stage");
    act_perturb->add_option("--count", cfg.count, "number of perturbations");
    add_common(act_perturb);
    auto* act_tensor = action->add_subcommand("tensor", "tensor two tower actions");
    add_cocycle_opts(act_tensor);
    act_tensor->add_option("--class2", class2, "second cocycle class index");
    act_tensor->add_option("--depth", cfg.depth, "tower depth");
    add_common(act_tensor);
    auto* act_compare = action->add_subcommand("compare", "compare classifying invariants");
    add_cocycle_opts(act_compare);
    act_compare->add_option("--class2", class2, "second cocycle class index");
    act_compare->add_option("--depth", cfg.depth, "tower depth");
    act_compare->add_option("--stage", cfg.stage, "tower stage");
    act_compare->add_option("--mode", cfg.mode, "pointwise|class");
    add_common(act_compare);

    auto* rokhlin = app.add_subcommand("rokhlin", "finite-stage Rokhlin machinery");
    auto* rok_verify = rokhlin->add_subcommand("verify", "verify tower partitions");
    add_cocycle_opts(rok_verify);
    rok_verify->add_option("--depth", cfg.depth, "tower depth");
    add_common(rok_verify);
    auto* rok_avg = rokhlin->add_subcommand("average", "Rokhlin averaging of seeded maps");
    add_cocycle_opts(rok_avg);
    rok_avg->add_option("--depth", cfg.depth, "tower depth");
    rok_avg->add_option("--stage", cfg.stage, "tower stage");
    rok_avg->add_option("--count", cfg.count, "number of seeded maps");
    add_common(rok_avg);
    auto* rok_triv = rokhlin->add_subcommand("trivialize", "trivialize seeded coboundary cocycles");
    add_cocycle_opts(rok_triv);
    rok_triv->add_option("--depth", cfg.depth, "tower depth");
    rok_triv->add_option("--stage", cfg.stage, "tower stage");
    rok_triv->add_option("--count", cfg.count, "number of seeded cocycles");
    add_common(rok_triv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // unknown command / bad flags -> input error
    }

    auto started = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        cfg.validate();
        Report report;
        report.config = cfg;
        if (grp_list->parsed()) {
            for (const auto& n : named_group_list())
                std::cout << n << " (order " << make_named_group(n).order << ")\n";
            return 0;
        } else if (grp_show->parsed()) {
            GroupTable g = make_named_group(name_opt);
            Json j = group_to_json(g);
            std::cout << j.dump(2) << "\n";
            if (!cfg.out_path.empty()) write_json_file(j, cfg.out_path);
            return 0;
        } else if (coh_compute->parsed()) {
            report.config.command = "coh compute";
            GroupTable g = resolve_group(cfg);
            int m = cfg.coeff_order > 0 ? cfg.coeff_order : g.order;
            CohomologyResult h = cohomology_group(g, cfg.degree, m);
            report.add("cohomology_computed", true,
                       Json{{"elementary_divisors", h.elementary_divisors},
                            {"class_count", h.group_order()}});
            rc = finish(report);
        } else if (coh_check->parsed()) {
            report.config.command = "coh check";
            GroupTable g = cfg.cocycle_file.empty() ? resolve_group(cfg)
                                                    : cochain_from_json(
                                                          read_json_file(cfg.cocycle_file))
                                                          .group();
            Cochain c = resolve_cocycle(cfg, g);
            Cochain d = differential(c);
            Json payload = Json::object();
            if (!d.is_zero()) {
                std::vector<int> args(d.degree());
                for (std::size_t i = 0; i < d.table_size(); ++i) {
                    d.decode(i, args);
                    if (!d.at_index(i).is_zero()) {
                        payload["failing_tuple"] = args;
                        payload["value"] = d.at_index(i).str();
                        break;
                    }
                }
            }
            report.add("is_cocycle", d.is_zero(), payload);
            rc = finish(report);
        } else if (coh_order->parsed()) {
            report.config.command = "coh class-order";
            GroupTable g = resolve_group(cfg);
            Cochain c = resolve_cocycle(cfg, g);
            report.add("class_order", true, Json{{"order", class_order(c)}});
            rc = finish(report);
        } else if (coh_scan->parsed()) {
            report.config.command = "coh restrict-scan";
            GroupTable g = resolve_group(cfg);
            Cochain c = resolve_cocycle(cfg, g);
            SubgroupScan scan = subgroup_nontriviality_scan(c);
            Json entries = Json::array();
            for (const auto& e : scan.entries)
                entries.push_back(Json{{"subgroup", e.subgroup}, {"nontrivial", e.nontrivial}});
            report.add("restrict_scan", true,
                       Json{{"entries", entries}, {"hypothesis_holds", scan.hypothesis_holds}});
            rc = finish(report);
        } else if (tower_build->parsed() || tower_verify->parsed()) {
            report.config.command = tower_build->parsed() ? "tower build" : "tower verify";
            if (tower_build->parsed() && cfg.mode == "none") {
                GroupTable g = resolve_group(cfg);
                Cochain w = resolve_cocycle(cfg, g);
                AfTower<Cyc> t = build_af_tower<Cyc>(g, w, cfg.depth, cfg.budget);
                if (!bundle_out.empty()) write_json_file(tower_to_json(t), bundle_out);
                report.add("tower_built", true);
            } else {
                cmd_tower(report, cfg, bundle_out, bundle_in);
            }
            rc = finish(report);
        } else if (jones_ext->parsed()) {
            report.config.command = "jones find-extension";
            cmd_jones(report, cfg, false, false);
            rc = finish(report);
        } else if (jones_induce_cmd->parsed()) {
            report.config.command = "jones induce";
            cmd_jones(report, cfg, true, false);
            rc = finish(report);
        } else if (jones_verify->parsed()) {
            report.config.command = "jones verify";
            cmd_jones(report, cfg, true, true);
            rc = finish(report);
        } else if (act_validate->parsed()) {
            report.config.command = "action validate";
            AnomalousAction<Cyc> a = action_from_json(read_json_file(cfg.cocycle_file));
            ActionReport ar = validate_action(a);
            report.add("action_valid", ar.valid(), verification_failures_to_json(ar.failures));
            rc = finish(report);
        } else if (act_anomaly->parsed()) {
            report.config.command = "action anomaly";
            GroupTable g = resolve_group(cfg);
            Cochain w = resolve_cocycle(cfg, g);
            AfTower<Cyc> t = build_af_tower<Cyc>(g, w, cfg.depth, cfg.budget);
            int stage = cfg.stage > 0 ? cfg.stage : cfg.depth;
            Cochain a = extract_anomaly(t.action_at(stage - 1));
            report.add("anomaly_extracted", true, cochain_to_json(a));
            report.add("anomaly_equals_omega", a == w);
            rc = finish(report);
        } else if (act_perturb->parsed()) {
            report.config.command = "action perturb";
            cmd_action_perturb(report, cfg);
            rc = finish(report);
        } else if (act_tensor->parsed()) {
            report.config.command = "action tensor";
            cmd_action_tensor(report, cfg, class2);
            rc = finish(report);
        } else if (act_compare->parsed()) {
            report.config.command = "action compare";
            cmd_action_compare(report, cfg, class2);
            rc = finish(report);
        } else if (rok_verify->parsed()) {
            report.config.command = "rokhlin verify";
            GroupTable g = resolve_group(cfg);
            Cochain w = resolve_cocycle(cfg, g);
            AfTower<Cyc> t = build_af_tower<Cyc>(g, w, cfg.depth, cfg.budget);
            for (int n = 1; n <= t.depth; ++n) {
                ActionReport r = verify_rokhlin_partition(t.action_at(n - 1), t.rokhlin[n - 1]);
                report.add("rokhlin_stage_" + std::to_string(n), r.valid(),
                           verification_failures_to_json(r.failures));
            }
            rc = finish(report);
        } else if (rok_avg->parsed()) {
            report.config.command = "rokhlin average";
            cmd_rokhlin_average(report, cfg);
            rc = finish(report);
        } else if (rok_triv->parsed()) {
            report.config.command = "rokhlin trivialize";
            cmd_rokhlin_trivialize(report, cfg);
            rc = finish(report);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const CycCapExceeded& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    std::cout << "done in " << ms << " ms\n";
    return rc;
}
