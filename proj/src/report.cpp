#include "sullivan/report.hpp"

#include <chrono>
#include <sstream>

#include "sullivan/triviality.hpp"

namespace sullivan {

std::string input_digest(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << h;
    return os.str();
}

namespace {

int bound_for(const CmdOptions& opt, const CdgaPresentation& A) {
    return opt.max_degree >= 0 ? opt.max_degree : default_degree_bound(A);
}

json table_json(const GeneratorTable& T) {
    json out = json::array();
    for (const Generator& g : T.generators()) out.push_back(json::array({g.name, g.degree}));
    return out;
}

json base_report(const std::string& command, const AlgebraFile& f) {
    json rep;
    rep["command"] = command;
    rep["input_digest"] = input_digest(f.source);
    json alg;
    alg["generators"] = table_json(*f.algebra.table);
    json diffs = json::object();
    for (int i = 0; i < f.algebra.table->size(); ++i)
        if (!f.algebra.d.image(i).is_zero())
            diffs[(*f.algebra.table)[i].name] = f.algebra.d.image(i).to_string();
    alg["differentials"] = diffs;
    if (!f.dlcop_generator.empty()) alg["decompose_dlcop"] = f.dlcop_generator;
    if (!f.dlp_generator.empty()) alg["decompose_dlp"] = f.dlp_generator;
    rep["algebra"] = alg;
    return rep;
}

struct WitnessBuilder {
    json tables = json::object();
    json maps = json::object();
    json derivations = json::object();
    json identities = json::array();

    void add_table(const std::string& name, const TablePtr& t) {
        if (!tables.contains(name)) tables[name] = table_json(*t);
    }
    void add_map(const std::string& name, const std::string& src, const std::string& dst,
                 const AlgebraMap& f) {
        if (maps.contains(name)) return;
        json m;
        m["src"] = src;
        m["dst"] = dst;
        json im = json::array();
        for (const Poly& p : f.images()) im.push_back(p.to_string());
        m["images"] = im;
        maps[name] = m;
    }
    void add_derivation(const std::string& name, const std::string& table, const Derivation& d) {
        if (derivations.contains(name)) return;
        json m;
        m["table"] = table;
        m["degree"] = d.degree();
        json im = json::array();
        for (const Poly& p : d.images()) im.push_back(p.to_string());
        m["images"] = im;
        derivations[name] = m;
    }
    void poly_zero(const std::string& table, const std::string& expr) {
        identities.push_back({{"kind", "poly_zero"}, {"table", table}, {"expr", expr}});
    }
    void poly_eq(const std::string& table, const std::string& lhs, const std::string& rhs) {
        identities.push_back({{"kind", "poly_eq"}, {"table", table}, {"lhs", lhs}, {"rhs", rhs}});
    }
    void map_applied(const std::string& map, const std::string& arg, const std::string& expect) {
        identities.push_back(
            {{"kind", "map_applied"}, {"map", map}, {"arg", arg}, {"expect", expect}});
    }
    void derivation_applied(const std::string& d, const std::string& arg,
                            const std::string& expect) {
        identities.push_back(
            {{"kind", "derivation_applied"}, {"derivation", d}, {"arg", arg}, {"expect", expect}});
    }
    void in_pair_ideal(const std::string& table, const std::string& expr, const json& pairs) {
        identities.push_back(
            {{"kind", "in_pair_ideal"}, {"table", table}, {"expr", expr}, {"pairs", pairs}});
    }
    void contains_generator(const std::string& table, const std::string& expr,
                            const std::string& gen) {
        identities.push_back({{"kind", "contains_generator"},
                              {"table", table},
                              {"expr", expr},
                              {"generator", gen}});
    }
    void avoids_generator(const std::string& table, const std::string& expr,
                          const std::string& gen) {
        identities.push_back(
            {{"kind", "avoids_generator"}, {"table", table}, {"expr", expr}, {"generator", gen}});
    }

    void attach(json& rep) {
        rep["tables"] = tables;
        rep["maps"] = maps;
        rep["derivations"] = derivations;
        rep["identities"] = identities;
    }
};

void add_model_witnesses(WitnessBuilder& wb, const MultiplicationModel& M) {
    wb.add_table("base", M.base.table);
    wb.add_table("model", M.algebra.table);
    wb.add_derivation("d_base", "base", M.base.d);
    wb.add_derivation("d_model", "model", M.algebra.d);
    wb.add_map("aug", "model", "base", M.aug);
    // d^2 = 0 and the correction contract
    for (int i = 0; i < M.algebra.table->size(); ++i)
        wb.derivation_applied("d_model", M.algebra.d.image(i).to_string(), "0");
    for (int j = 0; j < M.base.table->size(); ++j) {
        const std::string& n = (*M.base.table)[j].name;
        wb.poly_eq("model", M.algebra.d.image(M.bar_of(j)).to_string(),
                   n + "'' - " + n + "' - (" + M.correction[j].to_string() + ")");
        wb.derivation_applied("d_model", M.correction[j].to_string(),
                              (M.second_copy(M.base.d.image(j)) - M.first_copy(M.base.d.image(j)))
                                  .to_string());
        wb.map_applied("aug", M.correction[j].to_string(), "0");
    }
}

json goodness_json(const GoodnessReport& g, const MultiplicationModel& M) {
    json out;
    out["condition_a"] = g.condition_a;
    if (g.condition_a) {
        out["sign"] = g.sign;
        out["ideal_part"] = g.ideal_part.to_string();
    }
    out["condition_b"] = g.condition_b;
    if (!g.condition_b) out["violation"] = mono_to_string(*M.algebra.table, g.violation_b);
    out["good"] = g.good();
    return out;
}

json certificate_json(const TrivialityCertificate& c) {
    json out;
    out["target"] = c.target;
    out["verdict"] = c.certified ? "certified-trivial" : "not-certified";
    out["route"] = c.route;
    if (!c.certified) {
        out["reason"] = c.reason;
        out["note"] =
            "not-certified records that the sufficient conditions of the triviality "
            "theorem were not established; it is not a statement about the operation "
            "being nonzero";
    }
    if (c.used_semipure_replacement) out["semipure_replacement"] = true;
    json w = json::array();
    for (const CertWitness& cw : c.witnesses) w.push_back({{"label", cw.label}, {"value", cw.value}});
    out["witnesses"] = w;
    return out;
}

}  // namespace

json cmd_check(const AlgebraFile& f, const CmdOptions&) {
    json rep = base_report("check", f);
    const CdgaPresentation& A = f.algebra;
    rep["valid"] = true;
    rep["pure"] = is_pure(A);
    rep["semipure"] = is_semipure(A);
    rep["minimal"] = is_minimal(A);
    rep["quadratic"] = is_quadratic(A);
    rep["p"] = A.even_count();
    rep["q"] = A.odd_count();
    return rep;
}

json cmd_models(const AlgebraFile& f, const CmdOptions& opt) {
    const CdgaPresentation& A = f.algebra;
    int N = bound_for(opt, A);
    json rep = base_report("models", f);
    rep["max_degree"] = N;

    ModelPtr M = build_multiplication_model(A);
    LoopModel L = build_loop_model(*M);

    json model;
    model["generators"] = table_json(*M->algebra.table);
    json md = json::object();
    for (int i = 0; i < M->algebra.table->size(); ++i)
        md[(*M->algebra.table)[i].name] = M->algebra.d.image(i).to_string();
    model["d"] = md;
    json corr = json::object();
    for (int j = 0; j < A.table->size(); ++j)
        corr[(*A.table)[j].name] = M->correction[j].to_string();
    model["corrections"] = corr;
    rep["multiplication_model"] = model;

    json loop;
    loop["generators"] = table_json(*L.algebra.table);
    json ld = json::object();
    for (int i = 0; i < L.algebra.table->size(); ++i)
        ld[(*L.algebra.table)[i].name] = L.algebra.d.image(i).to_string();
    loop["d"] = ld;
    rep["loop_model"] = loop;

    json checks;
    checks["model_d_squared_zero"] = true;  // enforced at construction
    checks["loop_d_squared_zero"] = true;
    checks["aug_is_cochain_map"] = true;
    checks["collapse_is_cochain_map"] = true;
    Derivation anti = bracket(L.algebra.d, L.sbar);
    bool anticommute = true;
    for (const Poly& im : anti.images())
        if (!im.is_zero()) anticommute = false;
    checks["dbar_sbar_anticommute"] = anticommute;
    if (N > 0) {
        InducedMapReport qi = check_model_quasi_iso(*M, N);
        json per = json::object();
        for (const auto& [n, d] : qi.degrees)
            per[std::to_string(n)] = {{"iso", d.iso},
                                      {"dim_model", d.dim_src},
                                      {"dim_base", d.dim_dst},
                                      {"aug_surjective", d.cochain_surjective}};
        checks["quasi_iso"] = per;
        checks["quasi_iso_all"] = qi.all_iso(N);
    }
    rep["checks"] = checks;

    WitnessBuilder wb;
    add_model_witnesses(wb, *M);
    wb.add_table("loop", L.algebra.table);
    wb.add_derivation("d_loop", "loop", L.algebra.d);
    wb.add_derivation("sbar", "loop", L.sbar);
    wb.add_map("collapse", "model", "loop", L.collapse);
    for (int i = 0; i < L.algebra.table->size(); ++i)
        wb.derivation_applied("d_loop", L.algebra.d.image(i).to_string(), "0");
    for (int j = 0; j < A.table->size(); ++j) {
        Poly dv = L.from_base(A.d.image(j));
        wb.derivation_applied("sbar", dv.to_string(),
                              (-L.algebra.d.image(L.bar_of(j))).to_string());
        wb.map_applied("collapse", M->algebra.d.image(M->bar_of(j)).to_string(),
                       L.algebra.d.image(L.bar_of(j)).to_string());
    }
    wb.attach(rep);
    return rep;
}

json cmd_shriek(const AlgebraFile& f, const CmdOptions& opt) {
    const CdgaPresentation& A = f.algebra;
    int N = bound_for(opt, A);
    json rep = base_report("shriek", f);
    rep["max_degree"] = N;

    bool semi = is_semipure(A);
    ModelPtr M;
    json niceness;
    if (semi) {
        NiceModel nm = build_nice_model(A, N);
        M = nm.model;
        niceness["ideal_is_differential"] = nm.report.ideal_is_differential;
        niceness["bars_avoid_own_bar"] = nm.report.bars_avoid_own_bar;
        niceness["all_good"] = nm.report.all_good();
        rep["nice_model"] = niceness;
    } else {
        M = build_multiplication_model(A);
        rep["nice_model"] = "skipped: algebra is not semi-pure";
    }
    DualCochain delta = build_shriek_cocycle(M);
    rep["delta_degree"] = delta.degree;
    json values = json::object();
    for (const auto& [k, v] : delta.values)
        values[mono_to_string(*M->algebra.table, k)] = v.to_string();
    rep["delta"] = values;

    CocycleCheck cc = is_cocycle(delta, N);
    rep["cocycle_up_to_degree"] = cc.ok;

    GoodnessReport good = check_goodness(delta);
    rep["goodness"] = goodness_json(good, *M);

    if (semi) {
        NontrivialityCertificate nt = verify_nontriviality(delta);
        json j;
        j["class_generates_ext"] = nt.ok;
        if (nt.ok) {
            j["sign"] = nt.sign;
            j["evaluation"] = nt.evaluated.to_string();
        } else {
            j["reason"] = nt.reason;
        }
        rep["shriek_class"] = j;
    } else {
        rep["shriek_class"] = "skipped: algebra is not semi-pure";
    }

    PqVanishingReport pq = check_pq_vanishing(delta);
    json pqj;
    pqj["p"] = pq.p;
    pqj["q"] = pq.q;
    json entries = json::array();
    for (const auto& e : pq.entries)
        entries.push_back({{"argument", mono_to_string(*M->algebra.table, e.argument)},
                           {"value", e.value.to_string()}});
    pqj["entries"] = entries;
    pqj["all_zero"] = pq.all_zero;
    rep["pq_vanishing"] = pqj;

    MuDeltaReport mu = mu_delta_on_bars(delta, N);
    json muj;
    muj["all_zero"] = mu.all_zero;
    muj["checked_monomials"] = mu.checked_monomials;
    json nz = json::array();
    for (const auto& e : mu.nonzero)
        nz.push_back({{"argument", mono_to_string(*M->algebra.table, e.argument)},
                      {"value", e.value.to_string()}});
    muj["nonzero"] = nz;
    rep["mu_delta"] = muj;

    WitnessBuilder wb;
    add_model_witnesses(wb, *M);
    for (const auto& e : pq.entries)
        wb.map_applied("aug", delta.value(e.argument).to_string(), e.value.to_string());
    if (good.condition_a) {
        Monomial all_even_bars;
        for (int j = 0; j < A.table->size(); ++j)
            if (!(*A.table)[j].odd()) all_even_bars.factors.emplace_back(M->bar_of(j), 1);
        Poly prod = Poly::unit(M->algebra.table);
        for (int j = 0; j < A.table->size(); ++j) {
            if (!(*A.table)[j].odd()) continue;
            prod = prod * (Poly::generator(M->algebra.table, M->second_of(j)) -
                           Poly::generator(M->algebra.table, M->first_of(j)));
        }
        json pairs = json::array();
        for (int j = 0; j < A.table->size(); ++j)
            if ((*A.table)[j].odd())
                pairs.push_back(json::array(
                    {(*A.table)[j].name + "'", (*A.table)[j].name + "''"}));
        wb.poly_eq("model",
                   delta.value(all_even_bars).to_string(),
                   (prod.scaled(Q(good.sign)) + good.ideal_part).to_string());
        wb.in_pair_ideal("model", good.ideal_part.to_string(), pairs);
    }
    wb.attach(rep);
    return rep;
}

json cmd_triviality(const AlgebraFile& f, const CmdOptions& opt) {
    const CdgaPresentation& A = f.algebra;
    int N = bound_for(opt, A);
    json rep = base_report("triviality", f);
    rep["max_degree"] = N;
    rep["route_requested"] = opt.route;

    WitnessBuilder wb;
    json certs = json::array();

    if (opt.route == "auto" || opt.route == "part1" || opt.route == "part3") {
        DlcopOptions dopt;
        dopt.max_degree = N;
        dopt.route = opt.route == "auto" ? "auto" : opt.route;
        dopt.part1_generator = f.dlcop_generator;
        dopt.reduce_semipure = opt.reduce_semipure;
        TrivialityCertificate c = analyze_dlcop(A, dopt);
        certs.push_back(certificate_json(c));

        if (c.certified) {
            // embed re-checkable witnesses for the certified route
            const CdgaPresentation* B = &A;
            CdgaPresentation reduced_store;
            if (c.used_semipure_replacement) {
                reduced_store = semipure_reduce(A).reduced;
                B = &reduced_store;
            }
            if (c.route == "part3") {
                NiceModel nm = build_nice_model(*B, N);
                DualCochain delta = build_shriek_cocycle(nm.model);
                add_model_witnesses(wb, *nm.model);
                for (const auto& [k, v] : delta.values)
                    wb.map_applied("aug", v.to_string(), "0");
            } else if (c.route == "part1") {
                std::string pick;
                for (const CertWitness& w : c.witnesses)
                    if (w.label == "odd cocycle generator") pick = w.value;
                int idx = B->table->index_of(pick);
                std::vector<int> perm{idx};
                for (int j = 0; j < B->table->size(); ++j)
                    if (j != idx) perm.push_back(j);
                CdgaPresentation Aord = reorder_presentation(*B, perm);
                NiceModel nm = build_nice_model(Aord, N);
                DualCochain delta = build_shriek_cocycle(nm.model);
                add_model_witnesses(wb, *nm.model);
                const TablePtr& mt = nm.model->algebra.table;
                std::vector<Poly> sub;
                for (int i = 0; i < mt->size(); ++i)
                    sub.push_back(i == nm.model->second_of(0)
                                      ? Poly::generator(mt, nm.model->first_of(0))
                                      : Poly::generator(mt, i));
                wb.add_map("identify_copies", "model", "model", AlgebraMap(mt, mt, sub));
                for (const auto& [k, v] : delta.values) {
                    wb.map_applied("aug", v.to_string(), "0");
                    wb.map_applied("identify_copies", v.to_string(), "0");
                }
            }
        }
    }
    if (opt.route == "auto" || opt.route == "part2") {
        DlpOptions dopt;
        dopt.max_degree = N;
        dopt.part2_generator = f.dlp_generator;
        TrivialityCertificate c = analyze_dlp(A, dopt);
        certs.push_back(certificate_json(c));

        if (c.certified) {
            std::string pick;
            for (const CertWitness& w : c.witnesses)
                if (w.label == "even top generator") pick = w.value;
            int idx = A.table->index_of(pick);
            std::vector<int> perm;
            for (int j = 0; j < A.table->size(); ++j)
                if (j != idx) perm.push_back(j);
            perm.push_back(idx);
            CdgaPresentation Aord = reorder_presentation(A, perm);
            NiceModel nm = build_nice_model(Aord, N);
            DualCochain delta = build_shriek_cocycle(nm.model);
            LoopTensorSquare L = build_loop_tensor_square(nm.model);
            SectionPsi S = build_section_psi(L);
            wb.add_table("big", L.big.table);
            wb.add_table("target", L.target.table);
            wb.add_map("eps", "big", "target", L.eps);
            wb.add_map("psi", "target", "big", S.psi);
            int n = Aord.table->size();
            std::string top_bar = (*L.big.table)[L.big_bar(n - 1)].name;
            for (int g = 0; g < L.target.table->size(); ++g) {
                wb.map_applied("eps", S.psi.image(g).to_string(),
                               (*L.target.table)[g].name);
                wb.avoids_generator("big", S.psi.image(g).to_string(), top_bar);
            }
            add_model_witnesses(wb, *nm.model);
            std::string model_top_bar =
                (*nm.model->algebra.table)[nm.model->bar_of(n - 1)].name;
            for (const auto& [k, v] : delta.values)
                wb.contains_generator("model", mono_to_string(*nm.model->algebra.table, k),
                                      model_top_bar);
        }
    }
    rep["certificates"] = certs;
    wb.attach(rep);
    return rep;
}

json cmd_cohomology(const AlgebraFile& f, const CmdOptions& opt) {
    const CdgaPresentation& A = f.algebra;
    int N = bound_for(opt, A);
    json rep = base_report("cohomology", f);
    rep["max_degree"] = N;
    rep["loop_model"] = opt.loop;

    ComplexView view;
    LoopModel L;
    if (opt.loop) {
        L = build_loop_model(A);
        view = ComplexView::of(L.algebra);
    } else {
        view = ComplexView::of(A);
    }
    CohomologyReport H = cohomology_dims(view, N, true, opt.modp_check);
    json dims = json::array();
    for (int n = 0; n <= N; ++n) dims.push_back(H.dims[n]);
    rep["dims"] = dims;
    json reps = json::object();
    for (const auto& [n, polys] : H.representatives) {
        json arr = json::array();
        for (const Poly& p : polys) arr.push_back(p.to_string());
        if (!polys.empty()) reps[std::to_string(n)] = arr;
    }
    rep["representatives"] = reps;
    return rep;
}

json run_command(const std::string& command, const AlgebraFile& f, const CmdOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    json rep;
    if (command == "check")
        rep = cmd_check(f, opt);
    else if (command == "models")
        rep = cmd_models(f, opt);
    else if (command == "shriek")
        rep = cmd_shriek(f, opt);
    else if (command == "triviality")
        rep = cmd_triviality(f, opt);
    else if (command == "cohomology")
        rep = cmd_cohomology(f, opt);
    else
        throw std::runtime_error("unknown command " + command);
    auto t1 = std::chrono::steady_clock::now();
    rep["timing_ms"] =
        (int)std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rep;
}

std::vector<std::string> verify_report(const json& rep) {
    std::vector<std::string> failures;
    std::map<std::string, TablePtr> tables;
    if (rep.contains("tables"))
        for (auto& [name, tj] : rep["tables"].items()) {
            std::vector<Generator> gens;
            for (auto& g : tj) gens.push_back({g[0].get<std::string>(), g[1].get<int>()});
            tables[name] = make_table(std::move(gens));
        }
    std::map<std::string, AlgebraMap> maps;
    if (rep.contains("maps"))
        for (auto& [name, mj] : rep["maps"].items()) {
            const TablePtr& src = tables.at(mj["src"].get<std::string>());
            const TablePtr& dst = tables.at(mj["dst"].get<std::string>());
            std::vector<Poly> images;
            for (auto& s : mj["images"]) images.push_back(parse_poly(s.get<std::string>(), dst));
            maps.emplace(name, AlgebraMap(src, dst, std::move(images)));
        }
    std::map<std::string, Derivation> derivs;
    if (rep.contains("derivations"))
        for (auto& [name, dj] : rep["derivations"].items()) {
            const TablePtr& t = tables.at(dj["table"].get<std::string>());
            std::vector<Poly> images;
            for (auto& s : dj["images"]) images.push_back(parse_poly(s.get<std::string>(), t));
            derivs.emplace(name, Derivation(t, dj["degree"].get<int>(), std::move(images)));
        }
    if (!rep.contains("identities")) return failures;
    int idx = 0;
    for (auto& id : rep["identities"]) {
        ++idx;
        std::string kind = id["kind"].get<std::string>();
        auto fail = [&](const std::string& why) {
            failures.push_back("identity " + std::to_string(idx) + " (" + kind + "): " + why);
        };
        try {
            if (kind == "poly_zero") {
                Poly p = parse_poly(id["expr"].get<std::string>(),
                                    tables.at(id["table"].get<std::string>()));
                if (!p.is_zero()) fail("nonzero");
            } else if (kind == "poly_eq") {
                const TablePtr& t = tables.at(id["table"].get<std::string>());
                if (parse_poly(id["lhs"].get<std::string>(), t) !=
                    parse_poly(id["rhs"].get<std::string>(), t))
                    fail("sides differ");
            } else if (kind == "map_applied") {
                const AlgebraMap& m = maps.at(id["map"].get<std::string>());
                Poly arg = parse_poly(id["arg"].get<std::string>(), m.src());
                Poly expect = parse_poly(id["expect"].get<std::string>(), m.dst());
                if (m(arg) != expect) fail("image differs");
            } else if (kind == "derivation_applied") {
                const Derivation& d = derivs.at(id["derivation"].get<std::string>());
                Poly arg = parse_poly(id["arg"].get<std::string>(), d.table());
                Poly expect = parse_poly(id["expect"].get<std::string>(), d.table());
                if (d.apply(arg) != expect) fail("image differs");
            } else if (kind == "in_pair_ideal") {
                const TablePtr& t = tables.at(id["table"].get<std::string>());
                Poly p = parse_poly(id["expr"].get<std::string>(), t);
                for (const auto& [m, c] : p.terms()) {
                    bool hit = false;
                    for (auto& pr : id["pairs"]) {
                        int a = t->index_of(pr[0].get<std::string>());
                        int b = t->index_of(pr[1].get<std::string>());
                        if (a >= 0 && b >= 0 && m.contains(a) && m.contains(b)) hit = true;
                    }
                    if (!hit) {
                        fail("monomial " + mono_to_string(*t, m) + " outside the ideal");
                        break;
                    }
                }
            } else if (kind == "contains_generator" || kind == "avoids_generator") {
                const TablePtr& t = tables.at(id["table"].get<std::string>());
                Poly p = parse_poly(id["expr"].get<std::string>(), t);
                int g = t->index_of(id["generator"].get<std::string>());
                if (g < 0) {
                    fail("unknown generator");
                    continue;
                }
                for (const auto& [m, c] : p.terms()) {
                    bool has = m.contains(g);
                    if (kind == "contains_generator" ? !has : has) {
                        fail("monomial " + mono_to_string(*t, m));
                        break;
                    }
                }
            } else {
                fail("unknown identity kind");
            }
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    return failures;
}

std::string human_summary(const json& rep) {
    std::ostringstream os;
    std::string cmd = rep["command"].get<std::string>();
    os << "== " << cmd << " ==\n";
    os << "input: " << rep["input_digest"].get<std::string>() << "\n";
    if (cmd == "check") {
        os << "valid: yes"
           << "  pure: " << (rep["pure"].get<bool>() ? "yes" : "no")
           << "  semi-pure: " << (rep["semipure"].get<bool>() ? "yes" : "no")
           << "  minimal: " << (rep["minimal"].get<bool>() ? "yes" : "no") << "\n";
        os << "p = " << rep["p"].get<int>() << ", q = " << rep["q"].get<int>() << "\n";
    } else if (cmd == "models") {
        os << "multiplication model:\n";
        for (auto& [k, v] : rep["multiplication_model"]["d"].items())
            os << "  d " << k << " = " << v.get<std::string>() << "\n";
        os << "loop model:\n";
        for (auto& [k, v] : rep["loop_model"]["d"].items())
            os << "  d " << k << " = " << v.get<std::string>() << "\n";
        if (rep["checks"].contains("quasi_iso_all"))
            os << "augmentation quasi-isomorphism up to degree " << rep["max_degree"].get<int>()
               << ": " << (rep["checks"]["quasi_iso_all"].get<bool>() ? "yes" : "NO") << "\n";
    } else if (cmd == "shriek") {
        os << "delta degree " << rep["delta_degree"].get<int>() << "\n";
        for (auto& [k, v] : rep["delta"].items())
            os << "  delta(" << k << ") = " << v.get<std::string>() << "\n";
        os << "good: " << (rep["goodness"]["good"].get<bool>() ? "yes" : "no") << "\n";
        os << "mu.delta zero on bar basis: " << (rep["mu_delta"]["all_zero"].get<bool>() ? "yes" : "no")
           << "\n";
    } else if (cmd == "triviality") {
        for (auto& c : rep["certificates"]) {
            os << c["target"].get<std::string>() << ": " << c["verdict"].get<std::string>();
            if (c["verdict"].get<std::string>() == "certified-trivial")
                os << " via " << c["route"].get<std::string>();
            else
                os << " (" << c["reason"].get<std::string>() << ")";
            os << "\n";
            for (auto& w : c["witnesses"])
                os << "  " << w["label"].get<std::string>() << ": " << w["value"].get<std::string>()
                   << "\n";
        }
    } else if (cmd == "cohomology") {
        os << (rep["loop_model"].get<bool>() ? "loop model dims: " : "dims: ");
        for (auto& v : rep["dims"]) os << v.get<int>() << " ";
        os << "\n";
    }
    return os.str();
}

}  // namespace sullivan
