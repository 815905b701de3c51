#include "shlr/commands.hpp"

#include <chrono>

namespace shlr {

namespace {

using nlohmann::json;

std::string default_pair(const ModelFile& m) {
    if (m.modules.empty()) fail(ErrorCode::Name, "the model declares no module");
    return m.modules.front().name;
}

TruncationConfig trunc_of(const ModelFile& m) {
    return TruncationConfig{m.config.window, m.config.length_cap};
}

json config_echo(const ModelFile& m) {
    json j;
    j["weight_cutoff"] = m.config.weight_cutoff;
    j["degree_window"] = std::to_string(m.config.window.lo) + ":" + std::to_string(m.config.window.hi);
    j["length_cap"] = m.config.length_cap;
    j["seed"] = m.config.seed;
    return j;
}

json ce_components(const FatCdga& X) {
    json j = json::object();
    for (int n = 0; n <= X.W; ++n) {
        json layer = json::object();
        for (int i = 0; i < X.n_base(); ++i) {
            const AlgElt& v = X.dbase[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
            if (!v.is_zero()) layer[X.base.gen(i).name] = X.print(v);
        }
        for (int i = 0; i < X.n_dual(); ++i) {
            const AlgElt& v = X.ddual[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
            if (!v.is_zero()) layer[X.dual_gens[static_cast<std::size_t>(i)].name] = X.print(v);
        }
        if (!layer.empty()) j["d" + std::to_string(n)] = layer;
    }
    return j;
}

json brackets_json(const SHLRPair& P) {
    json j = json::object();
    const CellModule& M = P.module;
    for (const auto& X : P.brackets) {
        if (X.weight == 0) continue;
        json layer = json::object();
        for (const auto& [w, v] : X.bracket) {
            if (v.is_zero()) continue;
            std::string key = "[";
            for (std::size_t i = 0; i < w.size(); ++i)
                key += (i ? "," : "") + M.gen(w[static_cast<std::size_t>(i)]).name;
            key += "]";
            layer[key] = M.print(v);
        }
        for (const auto& [w, vals] : X.anchor) {
            std::string key = "anchor(";
            for (std::size_t i = 0; i < w.size(); ++i)
                key += (i ? "," : "") + M.gen(w[static_cast<std::size_t>(i)]).name;
            key += ")";
            json der = json::object();
            for (int g = 0; g < M.base.size(); ++g) {
                const AlgElt& v = vals[static_cast<std::size_t>(g)];
                if (!v.is_zero()) der["D " + M.base.gen(g).name] = M.base.alg.print(v);
            }
            if (!der.empty()) layer[key] = der;
        }
        if (!layer.empty()) j["weight " + std::to_string(X.weight)] = layer;
    }
    return j;
}

json dual_module_json(const DualCellModule& D) {
    json j = json::object();
    for (int i = 0; i < D.size(); ++i) {
        const ModElt& v = D.dgen[static_cast<std::size_t>(i)];
        if (!v.is_zero()) j["d " + D.gens[static_cast<std::size_t>(i)].name] = D.print(v);
    }
    return j;
}

bool collect_verdicts(const json& j) {
    // true when every "pass"/"verdict" leaf is passing
    bool ok = true;
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (k == "pass" && v.is_boolean() && !v.get<bool>()) ok = false;
            if (k == "verdict" && v.is_string() && v.get<std::string>() == "false") ok = false;
            if (v.is_object() || v.is_array())
                if (!collect_verdicts(v)) ok = false;
        }
    } else if (j.is_array()) {
        for (const auto& v : j)
            if (!collect_verdicts(v)) ok = false;
    }
    return ok;
}

json cmd_check_d2(const ModelFile& m, const CommandOptions& opts) {
    auto P = m.pair_of(opts.pair.empty() ? default_pair(m) : opts.pair);
    auto X = assemble_ce(P, m.config.weight_cutoff);
    json j;
    j["square_zero"] = json_of(square_zero_check(X));
    return j;
}

json cmd_ce(const ModelFile& m, const CommandOptions& opts) {
    auto P = m.pair_of(opts.pair.empty() ? default_pair(m) : opts.pair);
    auto X = assemble_ce(P, m.config.weight_cutoff);
    json j;
    j["differential"] = ce_components(X);
    j["dual_generators"] = json::object();
    for (const auto& g : X.dual_gens) j["dual_generators"][g.name] = g.degree;
    j["square_zero"] = json_of(square_zero_check(X));
    return j;
}

json cmd_extract_brackets(const ModelFile& m, const CommandOptions& opts) {
    auto P = m.pair_of(opts.pair.empty() ? default_pair(m) : opts.pair);
    int W = m.config.weight_cutoff;
    auto X = ce_from_pair(P, W);
    auto Q = pair_from_ce(X);
    json j;
    j["brackets"] = brackets_json(Q);
    j["round_trip"] = json::object();
    j["round_trip"]["pass"] = (ce_from_pair(Q, W) == X);
    return j;
}

json cmd_linear_part(const ModelFile& m, const CommandOptions& opts) {
    int W = m.config.weight_cutoff;
    json j;
    if (!opts.morphism.empty()) {
        const FatMorphismDecl* d = m.find_fat_morphism(opts.morphism);
        if (!d) fail(ErrorCode::Name, "unknown morphism '" + opts.morphism + "'");
        auto g = build_fat_morphism(m, *d, W);
        auto lp = linear_part_of_morphism(g);
        json imgs = json::object();
        for (int i = 0; i < g.source.n_dual(); ++i)
            imgs[g.source.dual_gens[static_cast<std::size_t>(i)].name] =
                lp.map.target.print(lp.map.images[static_cast<std::size_t>(i)]);
        j["linear_part"] = imgs;
        j["commutes_with_d0"] = json::object();
        j["commutes_with_d0"]["pass"] = lp.commutes_with_d0;
        return j;
    }
    auto P = m.pair_of(opts.pair.empty() ? default_pair(m) : opts.pair);
    auto X = ce_from_pair(P, W);
    j["linear_part"] = dual_module_json(linear_part_of_differential(X));
    return j;
}

json cmd_cohomology(const ModelFile& m, const CommandOptions& opts) {
    auto name = opts.pair.empty() ? default_pair(m) : opts.pair;
    auto P = m.pair_of(name);
    auto cfg = trunc_of(m);
    json j;
    j["base"] = json_of(certified_cohomology_algebra(P.base, cfg));
    j["module"] = json_of(certified_cohomology_module(P.module, cfg));
    return j;
}

json cmd_weq(const ModelFile& m, const CommandOptions& opts) {
    if (opts.morphism.empty()) fail(ErrorCode::Argument, "weq needs --morphism");
    const FatMorphismDecl* d = m.find_fat_morphism(opts.morphism);
    if (!d) fail(ErrorCode::Name, "unknown morphism '" + opts.morphism + "'");
    auto g = build_fat_morphism(m, *d, m.config.weight_cutoff);
    json j;
    j["morphism_check"] = json::object();
    auto chk = check_fat_morphism(g);
    j["morphism_check"]["pass"] = chk.pass;
    if (!chk.pass) {
        j["morphism_check"]["generator"] = chk.generator;
        j["morphism_check"]["witness"] = chk.witness;
    }
    j["weak_equivalence"] = json_of(is_weak_equivalence(g, trunc_of(m)));
    return j;
}

json cmd_coproduct(const ModelFile& m, const CommandOptions& opts) {
    std::string ln = opts.left.empty() ? default_pair(m) : opts.left;
    std::string rn = opts.right.empty() ? ln : opts.right;
    int W = m.config.weight_cutoff;
    auto X = ce_from_pair(m.pair_of(ln), W);
    auto Y = ce_from_pair(m.pair_of(rn), W);
    auto c = coproduct(X, Y);
    json j;
    j["differential"] = ce_components(c.object);
    j["square_zero"] = json_of(square_zero_check(c.object));
    j["in_left"] = json::object();
    j["in_left"]["pass"] = check_fat_morphism(c.in_left).pass;
    j["in_right"] = json::object();
    j["in_right"]["pass"] = check_fat_morphism(c.in_right).pass;
    return j;
}

json cmd_pushout(const ModelFile& m, const CommandOptions& opts) {
    if (opts.f.empty() || opts.g.empty()) fail(ErrorCode::Argument, "pushout needs --f and --g");
    const FatMorphismDecl* fd = m.find_fat_morphism(opts.f);
    const FatMorphismDecl* gd = m.find_fat_morphism(opts.g);
    if (!fd) fail(ErrorCode::Name, "unknown morphism '" + opts.f + "'");
    if (!gd) fail(ErrorCode::Name, "unknown morphism '" + opts.g + "'");
    int W = m.config.weight_cutoff;
    auto f = build_fat_morphism(m, *fd, W);
    auto g = build_fat_morphism(m, *gd, W);
    auto po = pushout_along_cofibration(f, g);
    json j;
    j["differential"] = ce_components(po.object);
    j["square_zero"] = json_of(square_zero_check(po.object));
    j["gamma"] = json::object();
    j["gamma"]["pass"] = check_fat_morphism(po.gamma).pass;
    j["gamma"]["cofibration"] = is_cofibration(po.gamma).verdict;
    j["phi"] = json::object();
    j["phi"]["pass"] = check_fat_morphism(po.phi).pass;
    return j;
}

json cmd_cylinder(const ModelFile& m, const CommandOptions& opts) {
    auto P = m.pair_of(opts.pair.empty() ? default_pair(m) : opts.pair);
    int W = m.config.weight_cutoff;
    auto X = ce_from_pair(P, W);
    FactorizationConfig fc{trunc_of(m), W};
    auto wit = cylinder_ce(X, fc);
    json j;
    j["i_cofibration"] = json::object();
    j["i_cofibration"]["pass"] = is_cofibration(wit.i).verdict;
    j["i_check"] = json::object();
    j["i_check"]["pass"] = check_fat_morphism(wit.i).pass;
    j["p_check"] = json::object();
    j["p_check"]["pass"] = check_fat_morphism(wit.p).pass;
    j["p_weak_equivalence"] = json_of(is_weak_equivalence(wit.p, trunc_of(m)));
    j["fold_factorization"] = json::object();
    j["fold_factorization"]["pass"] = (compose_fat_morphisms(wit.p, wit.i) == wit.fold);
    j["square_zero"] = json_of(square_zero_check(wit.cyl));
    json log = json::array();
    for (const auto& e : wit.log) {
        json entry;
        entry["weight"] = e.weight;
        entry["generator"] = e.generator;
        if (!e.defect.empty()) entry["obstruction"] = e.defect;
        if (!e.correction.empty()) entry["correction"] = e.correction;
        log.push_back(entry);
    }
    j["obstruction_log"] = log;
    j["cylinder_differential"] = ce_components(wit.cyl);
    return j;
}

json cmd_dualize(const ModelFile& m, const CommandOptions& opts) {
    auto name = opts.pair.empty() ? default_pair(m) : opts.pair;
    const ModuleDecl* md = m.find_module(name);
    if (!md) fail(ErrorCode::Name, "unknown module '" + name + "'");
    auto D = dualize_cell(md->module);
    json j;
    j["dual"] = dual_module_json(D);
    j["dual_generators"] = json::object();
    for (const auto& g : D.gens) j["dual_generators"][g.name] = g.degree;
    j["round_trip"] = json::object();
    j["round_trip"]["pass"] =
        (primal_of(D) == static_cast<const FreeDgModule&>(md->module));
    return j;
}

json cmd_lift(const ModelFile& m, const CommandOptions& opts) {
    if (opts.p.empty()) fail(ErrorCode::Argument, "lift needs --p (a base morphism)");
    const BaseMorphismDecl* pd = m.find_base_morphism(opts.p);
    if (!pd) fail(ErrorCode::Name, "unknown base morphism '" + opts.p + "'");
    auto name = opts.pair.empty() ? default_pair(m) : opts.pair;
    const ModuleDecl* md = m.find_module(name);
    if (!md) fail(ErrorCode::Name, "unknown module '" + name + "'");
    const AlgebraDecl* S = m.find_algebra(pd->source);
    const AlgebraDecl* T = m.find_algebra(pd->target);
    DgcaMorphism p(S->algebra, T->algebra, pd->images);
    if (!p.is_chain_map()) fail(ErrorCode::Argument, "lift: p does not intertwine the differentials");
    json j;
    j["fibration_cone"] = json_of(certified_cone_cohomology(p, trunc_of(m)));
    auto L = lift_differential(p, md->module, trunc_of(m));
    json diff = json::object();
    for (int i = 0; i < L.size(); ++i) {
        const ModElt& v = L.dgen[static_cast<std::size_t>(i)];
        if (!v.is_zero()) diff["d " + L.gen(i).name] = L.print(v);
    }
    j["lifted_differential"] = diff;
    return j;
}

} // namespace

Report run_command(const std::string& cmd, const ModelFile& model, const CommandOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.body["schema"] = 1;
    rep.body["command"] = cmd;
    rep.body["config"] = config_echo(model);
    json result;
    if (cmd == "check-d2") result = cmd_check_d2(model, opts);
    else if (cmd == "ce") result = cmd_ce(model, opts);
    else if (cmd == "extract-brackets") result = cmd_extract_brackets(model, opts);
    else if (cmd == "linear-part") result = cmd_linear_part(model, opts);
    else if (cmd == "cohomology") result = cmd_cohomology(model, opts);
    else if (cmd == "weq") result = cmd_weq(model, opts);
    else if (cmd == "coproduct") result = cmd_coproduct(model, opts);
    else if (cmd == "pushout") result = cmd_pushout(model, opts);
    else if (cmd == "cylinder") result = cmd_cylinder(model, opts);
    else if (cmd == "dualize") result = cmd_dualize(model, opts);
    else if (cmd == "lift") result = cmd_lift(model, opts);
    else fail(ErrorCode::Argument, "unknown command '" + cmd + "'");
    for (auto& [k, v] : result.items()) rep.body[k] = v;
    if (opts.timing) {
        auto t1 = std::chrono::steady_clock::now();
        rep.body["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
    rep.exit_code = collect_verdicts(rep.body) ? 0 : 1;
    return rep;
}

} // namespace shlr
