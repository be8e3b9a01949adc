#include "caw/io.hpp"

#include "caw/cohomology.hpp"

#include <fstream>

namespace caw {

Json group_to_json(const GroupTable& g) {
    return Json{{"name", g.name}, {"order", g.order}, {"product", g.product}};
}

GroupTable group_from_json(const Json& j) {
    if (j.is_string()) return make_named_group(j.get<std::string>());
    if (!j.contains("product")) {
        if (j.contains("name")) return make_named_group(j.at("name").get<std::string>());
        throw InputError("group JSON needs a name or a product table");
    }
    auto table = j.at("product").get<std::vector<std::vector<int>>>();
    std::string name = j.value("name", "G" + std::to_string(table.size()));
    if (j.contains("order") && j.at("order").get<std::size_t>() != table.size())
        throw InputError("group JSON order does not match the table");
    return GroupTable(name, std::move(table));
}

Json cochain_to_json(const Cochain& c) {
    Json values = Json::array();
    std::vector<int> args(c.degree());
    for (std::size_t idx = 0; idx < c.table_size(); ++idx) {
        c.decode(idx, args);
        const Phase& p = c.at_index(idx);
        if (p.is_zero()) continue;
        values.push_back(Json{{"args", args}, {"phase", p.str()}});
    }
    return Json{{"group", group_to_json(c.group())}, {"degree", c.degree()}, {"values", values}};
}

Cochain cochain_from_json(const Json& j) {
    GroupTable g = group_from_json(j.at("group"));
    int degree = j.at("degree").get<int>();
    Cochain c(g, degree);
    for (const auto& entry : j.value("values", Json::array())) {
        auto args = entry.at("args").get<std::vector<int>>();
        if (static_cast<int>(args.size()) != degree)
            throw InputError("cochain value tuple has wrong arity");
        for (int a : args)
            if (a < 0 || a >= g.order) throw InputError("cochain argument out of range");
        c.set(args, Phase::parse(entry.at("phase").get<std::string>()));
    }
    if (!c.is_normalized()) {
        if (!j.value("normalize", false))
            throw InputError("cochain is not normalized (pass \"normalize\": true to shift)");
        c = normalize_cocycle(c).first;
    }
    return c;
}

Json algebra_to_json(const MultiMatrixAlgebra& a) {
    Json blocks = Json::array();
    for (const auto& b : a.blocks()) blocks.push_back(Json{{"name", b.name}, {"dim", b.dim}});
    return Json{{"blocks", blocks}};
}

std::shared_ptr<MultiMatrixAlgebra> algebra_from_json(const Json& j) {
    std::vector<std::pair<std::string, int>> blocks;
    for (const auto& b : j.at("blocks"))
        blocks.push_back({b.at("name").get<std::string>(), b.at("dim").get<int>()});
    return std::make_shared<MultiMatrixAlgebra>(std::move(blocks));
}

Json element_to_json(const Element<Cyc>& e) {
    auto alg = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(e.algebra());
    if (!alg) throw InputError("element serialization needs a multi-matrix algebra");
    Json entries = Json::array();
    for (const auto& [idx, v] : e.entries()) {
        auto l = alg->decode(idx);
        Json coeff = Json::array();
        for (const auto& [p, r] : v.terms())
            coeff.push_back(Json::array({p.str(), r.str()}));
        entries.push_back(
            Json{{"block", l.block}, {"row", l.row}, {"col", l.col}, {"coeff", coeff}});
    }
    return Json{{"entries", entries}};
}

namespace {
Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s), 1);
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw InputError("cannot parse rational '" + s + "'");
    }
}
} // namespace

Element<Cyc> element_from_json(const Json& j, const std::shared_ptr<MultiMatrixAlgebra>& alg) {
    Element<Cyc> e(alg);
    for (const auto& entry : j.at("entries")) {
        int block = entry.at("block").get<int>();
        int row = entry.at("row").get<int>();
        int col = entry.at("col").get<int>();
        if (block < 0 || block >= static_cast<int>(alg->blocks().size()) || row < 0 ||
            col < 0 || row >= alg->block_dim(block) || col >= alg->block_dim(block))
            throw InputError("element entry label outside the algebra");
        Cyc v;
        for (const auto& c : entry.at("coeff"))
            v.add_term(Phase::parse(c.at(0).get<std::string>()),
                       rat_parse(c.at(1).get<std::string>()));
        e.add_term(alg->index_of(block, row, col), v);
    }
    return e;
}

namespace {
Json monomial_to_json(const MonomialMap& m, const MultiMatrixAlgebra& alg) {
    Json assign = Json::array();
    for (BasisIndex b = 0; b < alg.dim(); ++b) {
        auto src = alg.decode(b);
        auto dst = alg.decode(m.target(b));
        assign.push_back(Json{{"from", Json::array({src.block, src.row, src.col})},
                              {"to", Json::array({dst.block, dst.row, dst.col})},
                              {"phase", m.phase(b).str()}});
    }
    return assign;
}

MonomialMap monomial_from_json(const Json& j, const std::shared_ptr<MultiMatrixAlgebra>& alg) {
    std::vector<BasisIndex> target(alg->dim());
    std::vector<Phase> phase(alg->dim());
    std::vector<bool> seen(alg->dim(), false);
    for (const auto& entry : j) {
        auto from = entry.at("from").get<std::vector<int>>();
        auto to = entry.at("to").get<std::vector<int>>();
        BasisIndex src = alg->index_of(from.at(0), from.at(1), from.at(2));
        target[src] = alg->index_of(to.at(0), to.at(1), to.at(2));
        phase[src] = Phase::parse(entry.at("phase").get<std::string>());
        seen[src] = true;
    }
    for (bool s : seen)
        if (!s) throw InputError("monomial map JSON does not cover the basis");
    return MonomialMap(alg, alg, std::move(target), std::move(phase));
}
} // namespace

Json action_to_json(const AnomalousAction<Cyc>& a) {
    auto alg = std::dynamic_pointer_cast<const MultiMatrixAlgebra>(a.algebra);
    if (!alg) throw InputError("action serialization needs a multi-matrix algebra");
    Json alpha = Json::array();
    for (int g = 0; g < a.group.order; ++g) alpha.push_back(monomial_to_json(a.alpha[g], *alg));
    Json u = Json::array();
    for (int g = 0; g < a.group.order; ++g) {
        Json row = Json::array();
        for (int h = 0; h < a.group.order; ++h) row.push_back(element_to_json(a.u[g][h]));
        u.push_back(row);
    }
    return Json{{"group", group_to_json(a.group)},
                {"algebra", algebra_to_json(*alg)},
                {"alpha", alpha},
                {"u", u}};
}

AnomalousAction<Cyc> action_from_json(const Json& j) {
    AnomalousAction<Cyc> a;
    a.group = group_from_json(j.at("group"));
    auto alg = algebra_from_json(j.at("algebra"));
    a.algebra = alg;
    for (const auto& m : j.at("alpha")) a.alpha.push_back(monomial_from_json(m, alg));
    for (const auto& row : j.at("u")) {
        std::vector<Element<Cyc>> r;
        for (const auto& e : row) r.push_back(element_from_json(e, alg));
        a.u.push_back(std::move(r));
    }
    if (static_cast<int>(a.alpha.size()) != a.group.order ||
        static_cast<int>(a.u.size()) != a.group.order)
        throw InputError("action bundle tables do not match the group order");
    return a;
}

Json tower_to_json(const AfTower<Cyc>& t) {
    Json stages = Json::array();
    for (int n = 0; n < t.depth; ++n) {
        Json stage = action_to_json(t.action_at(n));
        Json parts = Json::array();
        for (const auto& p : t.rokhlin[n].p) parts.push_back(element_to_json(p));
        stage["rokhlin"] = parts;
        stages.push_back(stage);
    }
    return Json{{"group", group_to_json(t.group)},
                {"omega", cochain_to_json(t.omega)},
                {"depth", t.depth},
                {"stages", stages}};
}

AfTower<Cyc> tower_from_json(const Json& j) {
    // Rebuild deterministically from (group, omega, depth), then check the
    // serialized stages agree; the bundle is a faithful record, not an
    // alternative constructor.
    GroupTable g = group_from_json(j.at("group"));
    Cochain w = cochain_from_json(j.at("omega"));
    AfTower<Cyc> t = build_af_tower<Cyc>(g, w, j.at("depth").get<int>());
    const Json& stages = j.at("stages");
    if (static_cast<int>(stages.size()) != t.depth)
        throw InputError("tower bundle depth mismatch");
    for (int n = 0; n < t.depth; ++n) {
        AnomalousAction<Cyc> recorded = action_from_json(stages[n]);
        if (!(recorded == t.action_at(n)))
            throw InputError("tower bundle stage " + std::to_string(n + 1) +
                             " does not match its reconstruction");
    }
    return t;
}

Json verification_failures_to_json(const std::vector<CheckFailure>& failures) {
    Json out = Json::array();
    for (const auto& f : failures)
        out.push_back(Json{{"check", f.check}, {"tuple", f.tuple}, {"detail", f.detail}});
    return out;
}

void write_json_file(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write to '" + path + "'");
    out << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("invalid JSON in '" + path + "': " + e.what());
    }
}

} // namespace caw
