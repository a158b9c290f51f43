// alth: command-line runner for the algebraic-theory toolkit.
//
// Workspaces come from .alth source files; with no files given, the built-in
// gallery (Init1, Init01, InitFin, Z2, PointedZ2, SemiLat, IdOnly plus sample
// algebras) is loaded.  Exit code: 0 pass, 1 fail, 2 inconclusive.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "alth/dsl.hpp"
#include "alth/profunctor.hpp"
#include "alth/report.hpp"

using namespace alth;

namespace {

struct Options {
    std::vector<std::string> files;
    bool json = false;
    bool table = false;
    std::size_t window = 3;
    std::size_t max_carrier = 2;
    std::size_t cap = 2'000'000;
    std::string theory;
    std::string theory2;
    std::string from;
    std::string to;
    std::string algebra;
    std::vector<std::size_t> f_table;
    std::vector<std::size_t> g_table;
    std::size_t size = 3;
    std::string arities = "F";
};

Workspace load(const Options& o) {
    if (o.files.empty()) return builtin_workspace(o.window);
    std::ostringstream all;
    for (const auto& f : o.files) {
        std::ifstream in(f);
        if (!in) throw error("cannot open '" + f + "'");
        all << in.rdbuf() << "\n";
    }
    return parse(all.str());
}

std::vector<std::size_t> window_sizes(std::size_t w) {
    std::vector<std::size_t> s(w + 1);
    for (std::size_t i = 0; i <= w; ++i) s[i] = i;
    return s;
}

int emit(const Options& o, Report& rep, std::chrono::steady_clock::time_point t0) {
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    if (o.json)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_table();
    return rep.exit_code();
}

Verdict of_bool(bool b) { return b ? Verdict::pass : Verdict::fail; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alth: enriched algebraic theories over finite sets"};
    app.require_subcommand(1);
    Options o;
    app.add_option("-i,--input", o.files, "workspace source files (.alth)");
    app.add_flag("--json", o.json, "emit the report as JSON");
    app.add_flag("--table", o.table, "emit the report as text (default)");
    app.add_option("--window", o.window, "object window / fin_card truncation bound");
    app.add_option("--max-carrier", o.max_carrier, "carrier size bound for enumerations");
    app.add_option("--cap", o.cap, "combinatorial cap for enumerations");

    auto add_theory_opt = [&](CLI::App* c) {
        c->add_option("--theory", o.theory, "theory name")->required();
    };

    CLI::App* validate = app.add_subcommand("validate", "validate theories/algebras");
    validate->add_option("--theory", o.theory, "validate one theory");
    validate->add_option("--algebra", o.algebra, "validate one algebra");

    CLI::App* free_cmd = app.add_subcommand("free", "free algebra table of a theory");
    add_theory_opt(free_cmd);
    free_cmd->add_option("--size", o.size, "generator count")->required();

    CLI::App* monad_laws = app.add_subcommand("monad-laws", "laws of the induced monad");
    add_theory_opt(monad_laws);

    CLI::App* kleisli = app.add_subcommand("kleisli", "Kleisli theory of the induced monad");
    add_theory_opt(kleisli);

    CLI::App* roundtrip = app.add_subcommand("roundtrip", "theory -> monad -> Kleisli theory");
    add_theory_opt(roundtrip);

    CLI::App* roundtrip_m =
        app.add_subcommand("roundtrip-monad", "monad -> Kleisli theory -> monad");
    add_theory_opt(roundtrip_m);

    CLI::App* enum_algs = app.add_subcommand("enumerate-algebras", "all small algebras");
    add_theory_opt(enum_algs);

    CLI::App* homs = app.add_subcommand("homs", "all homomorphisms between two algebras");
    homs->add_option("--from", o.from, "source algebra")->required();
    homs->add_option("--to", o.to, "target algebra")->required();

    CLI::App* em = app.add_subcommand("em-vs-alg", "Eilenberg-Moore vs normal algebras");
    add_theory_opt(em);

    CLI::App* eleu = app.add_subcommand("eleutheric", "eleuthericity sweep for an arity system");
    eleu->add_option("--arities", o.arities, "arity system name");

    CLI::App* prof = app.add_subcommand("prof-compose", "Omega composite against m^{TS}");
    add_theory_opt(prof);
    prof->add_option("--theory2", o.theory2, "second theory (defaults to the first)");

    CLI::App* zeta_cmd = app.add_subcommand("zeta", "copresheaf-representability of Omega");
    add_theory_opt(zeta_cmd);

    CLI::App* coeq = app.add_subcommand("coequalize", "coequalizer of two algebra homs");
    coeq->add_option("--from", o.from, "source algebra")->required();
    coeq->add_option("--to", o.to, "target algebra")->required();
    coeq->add_option("--f", o.f_table, "first hom, as a comma-separated table")
        ->required()
        ->delimiter(',');
    coeq->add_option("--g", o.g_table, "second hom, as a comma-separated table")
        ->required()
        ->delimiter(',');

    for (CLI::App* sc : {validate, free_cmd, monad_laws, kleisli, roundtrip, roundtrip_m,
                         enum_algs, homs, em, eleu, prof, zeta_cmd, coeq})
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    try {
        Workspace w = load(o);
        std::vector<std::size_t> sizes = window_sizes(o.window);

        if (app.got_subcommand(validate)) {
            rep.command = "validate";
            rep.verdict = Verdict::pass;
            auto run_theory = [&](const std::string& name, const Theory& t) {
                ValidationReport r = validate_theory(t);
                rep.inputs["theory"].push_back(name);
                if (!r.ok()) {
                    rep.verdict = Verdict::fail;
                    rep.witness("theory " + name, r.violations.front());
                }
            };
            auto run_algebra = [&](const std::string& name, const Algebra& a) {
                ValidationReport r = validate_algebra(a);
                rep.inputs["algebra"].push_back(name);
                if (!r.ok()) {
                    rep.verdict = Verdict::fail;
                    rep.witness("algebra " + name, r.violations.front());
                }
            };
            if (!o.theory.empty()) run_theory(o.theory, w.theory(o.theory));
            if (!o.algebra.empty()) run_algebra(o.algebra, w.algebra(o.algebra));
            if (o.theory.empty() && o.algebra.empty()) {
                for (const auto& [n, t] : w.theories) run_theory(n, t);
                for (const auto& [n, a] : w.algebras) run_algebra(n, a);
            }
            if (rep.verdict == Verdict::pass) rep.witness("checked", "all validations passed");
        } else if (app.got_subcommand(free_cmd)) {
            rep.command = "free";
            rep.inputs["theory"] = o.theory;
            rep.inputs["size"] = o.size;
            const Theory& t = w.theory(o.theory);
            Monad m = induced_monad(t);
            FinSet tv = m.value(FinSet(o.size));
            rep.verdict = Verdict::pass;
            rep.witness("cardinality", tv.size);
            if (t.supports_all_arities()) {
                ordered_json elems = ordered_json::array();
                for (std::size_t e = 0; e < tv.size; ++e)
                    elems.push_back(t.describe_op(o.size, e));
                rep.witness("elements", elems);
            }
            if (t.arities().is_fin_card()) {
                FreeAlgebraComparison cmp =
                    compare_free_algebra_routes(t, FinSet(o.size), o.size + 1);
                if (!cmp.lan.stabilized) {
                    rep.verdict = Verdict::inconclusive;
                    rep.witness("truncation", cmp.note.empty() ? "unstabilized" : cmp.note);
                } else if (!cmp.bijective) {
                    rep.verdict = Verdict::fail;
                    rep.witness("route mismatch", cmp.note);
                } else {
                    rep.witness("coend route", "agrees with the clone route (bijective)");
                }
            }
        } else if (app.got_subcommand(monad_laws)) {
            rep.command = "monad-laws";
            rep.inputs["theory"] = o.theory;
            rep.inputs["window"] = o.window;
            Monad m = induced_monad(w.theory(o.theory));
            MonadReport r = validate_monad(m, sizes);
            CheckResult j = check_jary(m, sizes);
            rep.verdict = r.ok() ? j.verdict : Verdict::fail;
            rep.witness("squares checked", r.squares_checked);
            for (const auto& v : r.violations) rep.witness("violation", v);
            for (const auto& s : r.skipped) rep.witness("skipped", s);
            rep.witness("jary", to_string(j.verdict) + (j.note.empty() ? "" : " (" + j.note + ")"));
        } else if (app.got_subcommand(kleisli)) {
            rep.command = "kleisli";
            rep.inputs["theory"] = o.theory;
            Monad m = induced_monad(w.theory(o.theory));
            Theory k = kleisli_theory(m);
            rep.verdict = Verdict::pass;
            ordered_json sizes_json = ordered_json::array();
            for (std::size_t n : k.represented())
                sizes_json.push_back({{"arity", n}, {"ops", k.op(n).size}});
            rep.witness("hom sizes", sizes_json);
        } else if (app.got_subcommand(roundtrip)) {
            rep.command = "roundtrip";
            rep.inputs["theory"] = o.theory;
            TheoryRoundtrip rt = roundtrip_theory(w.theory(o.theory));
            rep.verdict = of_bool(rt.ok);
            if (!rt.ok) rep.witness("failure", rt.note);
            else {
                ordered_json iso = ordered_json::array();
                for (std::size_t i = 0; i < rt.iso.op_map.size(); ++i)
                    iso.push_back({{"arity", rt.iso.dom.represented()[i]},
                                   {"bijection", rt.iso.op_map[i]}});
                rep.witness("iso", iso);
            }
        } else if (app.got_subcommand(roundtrip_m)) {
            rep.command = "roundtrip-monad";
            rep.inputs["theory"] = o.theory;
            rep.inputs["window"] = o.window;
            Monad m = induced_monad(w.theory(o.theory));
            MonadRoundtrip rt = roundtrip_monad(m, sizes);
            rep.verdict = rt.verdict;
            if (rt.verdict != Verdict::pass) rep.witness("failure", rt.note);
            else rep.witness("sizes", rt.witness_sizes);
        } else if (app.got_subcommand(enum_algs)) {
            rep.command = "enumerate-algebras";
            rep.inputs["theory"] = o.theory;
            rep.inputs["max_carrier"] = o.max_carrier;
            auto algs = enumerate_algebras(w.theory(o.theory), o.max_carrier, o.cap);
            rep.verdict = Verdict::pass;
            rep.witness("count", algs.size());
            ordered_json per = ordered_json::array();
            for (const auto& a : algs) per.push_back(a.carrier.size);
            rep.witness("carriers", per);
        } else if (app.got_subcommand(homs)) {
            rep.command = "homs";
            rep.inputs["from"] = o.from;
            rep.inputs["to"] = o.to;
            auto hs = enumerate_homs(w.algebra(o.from), w.algebra(o.to));
            rep.verdict = Verdict::pass;
            rep.witness("count", hs.size());
            ordered_json tables = ordered_json::array();
            for (const auto& h : hs) tables.push_back(h.table);
            rep.witness("tables", tables);
        } else if (app.got_subcommand(em)) {
            rep.command = "em-vs-alg";
            rep.inputs["theory"] = o.theory;
            rep.inputs["max_carrier"] = o.max_carrier;
            EmAlgComparison c = check_em_equals_alg(w.theory(o.theory), o.max_carrier);
            rep.verdict = of_bool(c.ok);
            if (!c.ok) rep.witness("failure", c.note);
            else rep.witness("objects", c.count);
        } else if (app.got_subcommand(eleu)) {
            rep.command = "eleutheric";
            rep.inputs["arities"] = o.arities;
            const AritySystem& s = w.arity_system(o.arities);
            rep.verdict = Verdict::pass;
            // sweep: functors with values <= 3, |V| <= 3, all K
            std::size_t instances = 0;
            std::string note;
            auto idt = [](std::size_t n) {
                std::vector<std::size_t> v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = i;
                return v;
            };
            if (!s.is_fin_card() && s.members == std::vector<std::size_t>{1}) {
                for (std::size_t tv = 0; tv <= 3 && rep.verdict == Verdict::pass; ++tv)
                    for (std::size_t vs = 0; vs <= 3; ++vs) {
                        std::vector<std::vector<std::vector<std::size_t>>> acts = {{idt(tv)}};
                        ArityFunctor t = ArityFunctor::from_tables(s, {FinSet(tv)}, acts);
                        CheckResult r = check_eleutheric_instance(s, t, FinSet(vs), 1);
                        ++instances;
                        if (r.verdict != Verdict::pass) {
                            rep.verdict = r.verdict;
                            note = r.note;
                            break;
                        }
                    }
            } else if (!s.is_fin_card() && s.members == std::vector<std::size_t>{0, 1}) {
                for (std::size_t t0 = 0; t0 <= 3 && rep.verdict == Verdict::pass; ++t0)
                    for (std::size_t t1 = 0; t1 <= 3 && rep.verdict == Verdict::pass; ++t1)
                        for (std::size_t u = 0; u < pow_sz(t1, t0); ++u) {
                            // action tables: ids on 0->0 and 1->1, u on 0->1
                            std::vector<std::vector<std::vector<std::size_t>>> acts(4);
                            acts[0] = {idt(t0)};                     // (0,0): only id
                            acts[1] = {fn_decode(u, t0, t1)};        // (0,1): the one map
                            acts[2] = {};                            // (1,0): empty hom set
                            acts[3] = {idt(t1)};                     // (1,1): only id
                            ArityFunctor t = ArityFunctor::from_tables(
                                s, {FinSet(t0), FinSet(t1)}, acts);
                            for (std::size_t vs = 0; vs <= 3 && rep.verdict == Verdict::pass;
                                 ++vs)
                                for (std::size_t k : {std::size_t(0), std::size_t(1)}) {
                                    CheckResult r =
                                        check_eleutheric_instance(s, t, FinSet(vs), k);
                                    ++instances;
                                    if (r.verdict != Verdict::pass) {
                                        rep.verdict = r.verdict;
                                        note = r.note;
                                        break;
                                    }
                                }
                        }
            } else {
                // fin_card: spot instances via the op functor of SemiLat
                Theory t = w.theories.count("SemiLat") ? w.theory("SemiLat")
                                                       : gallery::semilattice(o.window);
                for (std::size_t vs = 0; vs <= 2 && rep.verdict == Verdict::pass; ++vs)
                    for (std::size_t k = 1; k <= 2; ++k) {
                        ArityFunctor opf;
                        opf.base = s;
                        Theory tt = t;
                        opf.value = [tt](std::size_t a) { return tt.op(a); };
                        opf.action = [tt](std::size_t a, std::size_t b, std::size_t u) {
                            auto ut = fn_decode(u, a, b);
                            auto pb = tt.proj(b);
                            std::vector<std::size_t> args(a);
                            for (std::size_t i = 0; i < a; ++i) args[i] = pb[ut[i]];
                            std::vector<std::size_t> act(tt.op(a).size);
                            for (std::size_t e = 0; e < act.size(); ++e)
                                act[e] = tt.subst(a, e, b, args);
                            return act;
                        };
                        CheckResult r = check_eleutheric_instance(s, opf, FinSet(vs), k,
                                                                  o.window + 1);
                        ++instances;
                        if (r.verdict != Verdict::pass) {
                            rep.verdict = r.verdict;
                            note = r.note;
                            break;
                        }
                    }
            }
            rep.witness("instances", instances);
            if (!note.empty()) rep.witness("note", note);
        } else if (app.got_subcommand(prof)) {
            rep.command = "prof-compose";
            rep.inputs["theory"] = o.theory;
            const Theory& t1 = w.theory(o.theory);
            const Theory& t2 = o.theory2.empty() ? t1 : w.theory(o.theory2);
            rep.inputs["theory2"] = o.theory2.empty() ? o.theory : o.theory2;
            Monad m1 = induced_monad(t1);
            Monad m2 = induced_monad(t2);
            std::vector<std::size_t> list = t1.arities().is_fin_card()
                                                ? window_sizes(std::min<std::size_t>(o.window, 2))
                                                : t1.represented();
            CheckResult r = check_omega_composite(m1, m2, list);
            rep.verdict = r.verdict;
            if (!r.note.empty()) rep.witness("note", r.note);
        } else if (app.got_subcommand(zeta_cmd)) {
            rep.command = "zeta";
            rep.inputs["theory"] = o.theory;
            const Theory& t = w.theory(o.theory);
            Monad m = induced_monad(t);
            std::vector<std::size_t> list =
                t.arities().is_fin_card() ? window_sizes(o.window) : t.represented();
            ZetaResult z = zeta(omega(m, list));
            rep.verdict = of_bool(z.is_iso);
            if (!z.is_iso) rep.witness("failure", z.witness);
            else rep.witness("iso", true);
        } else if (app.got_subcommand(coeq)) {
            rep.command = "coequalize";
            rep.inputs["from"] = o.from;
            rep.inputs["to"] = o.to;
            const Algebra& a = w.algebra(o.from);
            const Algebra& b = w.algebra(o.to);
            FinFn f(a.carrier, b.carrier, o.f_table);
            FinFn g(a.carrier, b.carrier, o.g_table);
            auto r = coequalize_algebras(a, b, f, g);
            if (auto* ok = std::get_if<AlgebraCoequalizer>(&r)) {
                rep.verdict = Verdict::pass;
                rep.witness("carrier", ok->algebra.carrier.size);
                rep.witness("proj", ok->carrier_quotient.proj.table);
            } else {
                auto& sf = std::get<StabilityFailure>(r);
                rep.verdict = Verdict::fail;
                rep.witness("stability failure",
                            ordered_json{{"arity", sf.arity},
                                         {"colimit", sf.colim_size},
                                         {"power", sf.power_size}});
            }
        }
    } catch (const parse_error& e) {
        rep.verdict = Verdict::fail;
        rep.witness("parse error", e.what());
        return emit(o, rep, t0);
    } catch (const std::exception& e) {
        rep.verdict = Verdict::fail;
        rep.witness("error", e.what());
        return emit(o, rep, t0);
    }
    return emit(o, rep, t0);
}
