#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "ppds/bounds.hpp"
#include "ppds/compat.hpp"
#include "ppds/cyclic.hpp"
#include "ppds/io.hpp"
#include "ppds/pseudo_periodic.hpp"
#include "ppds/roots.hpp"

namespace {

using nlohmann::json;
using namespace ppds;

enum class Fmt { Text, Json };

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ppds::ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

using AnySet = std::variant<CyclicDataSet, PseudoPeriodicDataSet>;

AnySet read_any(const std::string& raw) {
    auto s = detail_io::strip_ws(raw);
    if (s.empty()) throw ppds::ParseError("empty input");
    if (s[0] == '{') {
        auto j = parse_json(raw);
        if (j.contains("orbits")) return pp_from_json(j);
        return cyclic_from_json(j);
    }
    if (s.rfind("[[", 0) == 0) return parse_pp(raw);
    return parse_cyclic(raw);
}

void emit(Fmt fmt, const json& j, const std::string& text) {
    if (fmt == Fmt::Json)
        std::cout << to_json_text(j);
    else
        std::cout << text;
}

json violations_json(const std::vector<Violation>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back({{"code", v.code}, {"detail", v.detail}});
    return out;
}

std::string report_text(const std::string& kind, bool valid,
                        const std::vector<Violation>& violations,
                        const std::vector<std::string>& warnings) {
    std::string s = "kind: " + kind + "\nvalid: " + (valid ? "true" : "false") + "\n";
    for (const auto& v : violations) s += "violation " + v.code + ": " + v.detail + "\n";
    for (const auto& w : warnings) s += "warning: " + w + "\n";
    return s;
}

json certificate_json(const RootCertificate& c) {
    json ws = json::array();
    for (const auto& w : c.witnesses)
        ws.push_back({{"component", static_cast<i64>(w.component)},
                      {"target", static_cast<i64>(w.target)},
                      {"u", w.u}});
    return {{"m", c.m}, {"root", to_json(c.root)}, {"witnesses", ws}};
}

std::string certificate_text(const RootCertificate& c) {
    std::string s = "degree " + std::to_string(c.m) + ": " + to_text(c.root) + "\n";
    for (const auto& w : c.witnesses)
        s += "  component " + std::to_string(w.component + 1) + " -> target " +
             std::to_string(w.target + 1) + " via power " + std::to_string(w.u) + "\n";
    return s;
}

Shape shape_from_string(const std::string& s) {
    if (s == "nonseparating") return Shape::Nonseparating;
    if (s == "separating") return Shape::Separating;
    if (s == "bounding-pair") return Shape::BoundingPair;
    if (s == "torelli-bp") return Shape::TorelliBP;
    if (s == "level-m") return Shape::LevelM;
    if (s == "mod2-commutator") return Shape::Mod2Commutator;
    throw ppds::DomainError("unknown shape '" + s + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for periodic and pseudo-periodic mapping class data"};
    app.require_subcommand(1);
    std::string fmt_name = "text";
    app.add_option("--format", fmt_name, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // validate
    std::string in_validate = "-";
    auto* sc_validate = app.add_subcommand("validate", "validate a data set");
    sc_validate->add_option("input", in_validate, "file or - for stdin");

    // enumerate-cyclic
    i64 en_genus = 2, en_order = 2;
    auto* sc_enum = app.add_subcommand("enumerate-cyclic", "enumerate cyclic data sets");
    sc_enum->add_option("--genus", en_genus, "surface genus")->required();
    sc_enum->add_option("--order", en_order, "cyclic order")->required();

    // power
    std::string in_power = "-";
    i64 power_m = 2;
    auto* sc_power = app.add_subcommand("power", "m-th power of a cyclic data set");
    sc_power->add_option("input", in_power, "file or - for stdin");
    sc_power->add_option("-m,--degree", power_m, "power exponent")->required();

    // genus
    std::string in_genus = "-";
    auto* sc_genus = app.add_subcommand("genus", "genus of the represented surface");
    sc_genus->add_option("input", in_genus, "file or - for stdin");

    // classify
    std::string in_classify = "-";
    auto* sc_classify = app.add_subcommand("classify", "rotational / type1 / type2");
    sc_classify->add_option("input", in_classify, "file or - for stdin");

    // roots
    std::string in_roots = "-";
    i64 roots_m = 0;
    auto* sc_roots = app.add_subcommand("roots", "roots of a data set");
    sc_roots->add_option("input", in_roots, "file or - for stdin");
    sc_roots->add_option("--degree", roots_m, "root degree (omit to sweep)");

    // check-root
    std::string in_root_g = "-", in_root_f = "-";
    i64 check_m = 2;
    auto* sc_check = app.add_subcommand("check-root", "verify a root relation");
    sc_check->add_option("root", in_root_g, "candidate root data set")->required();
    sc_check->add_option("target", in_root_f, "target data set")->required();
    sc_check->add_option("--degree", check_m, "root degree")->required();

    // primitive
    std::string in_prim = "-";
    auto* sc_prim = app.add_subcommand("primitive", "primitivity of a data set");
    sc_prim->add_option("input", in_prim, "file or - for stdin");

    // equivalent
    std::string in_eq_a, in_eq_b;
    auto* sc_eq = app.add_subcommand("equivalent", "equivalence of two data sets");
    sc_eq->add_option("first", in_eq_a, "first data set")->required();
    sc_eq->add_option("second", in_eq_b, "second data set")->required();

    // multitwist
    std::string in_mt = "-";
    auto* sc_mt = app.add_subcommand("multitwist", "multitwist shape of a data set");
    sc_mt->add_option("input", in_mt, "file or - for stdin");

    // bounds
    std::string bd_shape = "nonseparating";
    i64 bd_g = 2, bd_q = 1, bd_level = 0;
    std::string bd_middle = "nonsep";
    auto* sc_bounds = app.add_subcommand("bounds", "degree window for roots of a twist shape");
    sc_bounds->add_option("--genus", bd_g, "surface genus")->required();
    sc_bounds->add_option("--q", bd_q, "twist exponent")->required();
    sc_bounds->add_option("--shape", bd_shape, "twist shape")->required();
    sc_bounds->add_option("--level", bd_level, "subgroup level (level-m shape)");
    sc_bounds->add_option("--middle", bd_middle, "middle curve: sep or nonsep")
        ->check(CLI::IsMember({"sep", "nonsep"}));

    // bounds-table
    i64 bt_q = 1, bt_gmin = 2, bt_gmax = 12, bt_level = 2;
    auto* sc_table = app.add_subcommand("bounds-table",
                                        "degree windows over a genus range, all shapes");
    sc_table->add_option("--q", bt_q, "twist exponent")->required();
    sc_table->add_option("--min-genus", bt_gmin, "first genus");
    sc_table->add_option("--max-genus", bt_gmax, "last genus");
    sc_table->add_option("--level", bt_level, "subgroup level for the level-m rows");

    // realize
    std::string rz_shape = "nonseparating";
    i64 rz_g = 2, rz_q = 1, rz_level = 0;
    auto* sc_realize = app.add_subcommand("realize", "bound-attaining root family");
    sc_realize->add_option("--family", rz_shape, "twist shape")->required();
    sc_realize->add_option("--genus", rz_g, "surface genus")->required();
    sc_realize->add_option("--q", rz_q, "twist exponent")->required();
    sc_realize->add_option("--level", rz_level, "subgroup level (level-m family)");

    // bp-root
    i64 bp_g = 3;
    auto* sc_bp = app.add_subcommand("bp-root", "bounding-pair root at odd genus");
    sc_bp->add_option("--genus", bp_g, "surface genus")->required();

    // membership
    std::string mb_shape = "torelli-bp";
    std::vector<i64> mb_exps;
    i64 mb_level = 0;
    std::string mb_middle = "nonsep";
    auto* sc_member = app.add_subcommand("membership", "subgroup membership of a multitwist");
    sc_member->add_option("--shape", mb_shape, "twist shape")->required();
    sc_member->add_option("--exponents", mb_exps, "twist exponents")->required();
    sc_member->add_option("--level", mb_level, "subgroup level (level-m shape)");
    sc_member->add_option("--middle", mb_middle, "middle curve: sep or nonsep")
        ->check(CLI::IsMember({"sep", "nonsep"}));

    // ivanov
    std::string in_iv = "-";
    i64 iv_m = 3;
    auto* sc_iv = app.add_subcommand("ivanov", "multitwist-root dichotomy check");
    sc_iv->add_option("input", in_iv, "file or - for stdin");
    sc_iv->add_option("--degree", iv_m, "root degree")->required();

    // twist-factor
    std::string tf_d1, tf_e1, tf_d2, tf_e2;
    i64 tf_mod = 0;
    auto* sc_tf = app.add_subcommand("twist-factor", "twist factor of two point orbits");
    sc_tf->add_option("first", tf_d1, "first cyclic data set")->required();
    sc_tf->add_option("first-orbit", tf_e1, "entry index (1-based) or r for regular")
        ->required();
    sc_tf->add_option("second", tf_d2, "second cyclic data set")->required();
    sc_tf->add_option("second-orbit", tf_e2, "entry index (1-based) or r for regular")
        ->required();
    sc_tf->add_option("--modulus", tf_mod, "twist modulus (default lcm of degrees)");

    // crt
    i64 crt_n1 = 2, crt_n2 = 2, crt_k = 1;
    auto* sc_crt = app.add_subcommand("crt", "unit coefficients for a twist factor");
    sc_crt->add_option("--n1", crt_n1, "first order")->required();
    sc_crt->add_option("--n2", crt_n2, "second order")->required();
    sc_crt->add_option("--k", crt_k, "twist factor")->required();

    // pa-bound
    i64 pa_g = 2;
    double pa_lambda = 2.0;
    auto* sc_pa = app.add_subcommand("pa-bound", "root degree bound from a stretch factor");
    sc_pa->add_option("--genus", pa_g, "surface genus")->required();
    sc_pa->add_option("--lambda", pa_lambda, "stretch factor")->required();

    for (auto* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    Fmt fmt = fmt_name == "json" ? Fmt::Json : Fmt::Text;

    try {
        if (sc_validate->parsed()) {
            auto any = read_any(slurp(in_validate));
            if (std::holds_alternative<CyclicDataSet>(any)) {
                auto rep = validate_cyclic(std::get<CyclicDataSet>(any));
                json j = {{"kind", "cyclic"},
                          {"valid", rep.valid},
                          {"identity_extension", rep.identity_extension},
                          {"violations", violations_json(rep.violations)},
                          {"warnings", rep.warnings}};
                emit(fmt, j, report_text("cyclic", rep.valid, rep.violations, rep.warnings));
            } else {
                const auto& pp = std::get<PseudoPeriodicDataSet>(any);
                auto rep = validate_pp(pp);
                json j = {{"kind", "pseudo-periodic"},
                          {"valid", rep.valid},
                          {"violations", violations_json(rep.violations)},
                          {"warnings", rep.warnings}};
                if (rep.valid && rep.found_assignment) {
                    json ends = json::array();
                    for (const auto& [a, b] : rep.found_assignment->ends) {
                        json pair = json::array();
                        pair.push_back(a ? json(static_cast<i64>(*a)) : json());
                        pair.push_back(b ? json(static_cast<i64>(*b)) : json());
                        ends.push_back(pair);
                    }
                    j["assignment"] = ends;
                }
                emit(fmt, j,
                     report_text("pseudo-periodic", rep.valid, rep.violations, rep.warnings));
            }
        } else if (sc_enum->parsed()) {
            auto sets = enumerate_cyclic(en_genus, en_order);
            json arr = json::array();
            std::string text;
            for (const auto& d : sets) {
                arr.push_back(to_json(d));
                text += to_text(d) + "\n";
            }
            emit(fmt, json{{"count", static_cast<i64>(sets.size())}, {"sets", arr}},
                 text + "count: " + std::to_string(sets.size()) + "\n");
        } else if (sc_power->parsed()) {
            auto d = read_cyclic(slurp(in_power));
            auto p = power(d, power_m);
            emit(fmt, to_json(p), to_text(p) + "\n");
        } else if (sc_genus->parsed()) {
            auto any = read_any(slurp(in_genus));
            i64 g = std::holds_alternative<CyclicDataSet>(any)
                        ? genus(std::get<CyclicDataSet>(any))
                        : total_genus(std::get<PseudoPeriodicDataSet>(any));
            emit(fmt, json{{"genus", g}}, std::to_string(g) + "\n");
        } else if (sc_classify->parsed()) {
            auto d = read_cyclic(slurp(in_classify));
            const char* t = to_string(classify(d));
            emit(fmt, json{{"type", t}}, std::string(t) + "\n");
        } else if (sc_roots->parsed()) {
            auto any = read_any(slurp(in_roots));
            if (std::holds_alternative<CyclicDataSet>(any)) {
                const auto& d = std::get<CyclicDataSet>(any);
                auto roots = roots_m > 0 ? periodic_roots(d, roots_m) : periodic_roots(d);
                json arr = json::array();
                std::string text;
                for (const auto& r : roots) {
                    arr.push_back(to_json(r));
                    text += to_text(r) + "\n";
                }
                emit(fmt, json{{"count", static_cast<i64>(roots.size())}, {"roots", arr}},
                     text + "count: " + std::to_string(roots.size()) + "\n");
            } else {
                const auto& pp = std::get<PseudoPeriodicDataSet>(any);
                std::vector<RootCertificate> certs;
                if (roots_m > 0)
                    certs = pp_roots(pp, roots_m);
                else
                    certs = pp_roots_up_to(pp, primitivity_search_bound(pp));
                json arr = json::array();
                std::string text;
                for (const auto& c : certs) {
                    arr.push_back(certificate_json(c));
                    text += certificate_text(c);
                }
                emit(fmt, json{{"count", static_cast<i64>(certs.size())}, {"roots", arr}},
                     text + "count: " + std::to_string(certs.size()) + "\n");
            }
        } else if (sc_check->parsed()) {
            auto g = read_pp(slurp(in_root_g));
            auto f = read_pp(slurp(in_root_f));
            auto res = check_pp_root(g, f, check_m);
            json ws = json::array();
            std::string text = std::string("root: ") + (res.ok ? "true" : "false") + "\n";
            for (const auto& w : res.witnesses) {
                ws.push_back({{"component", static_cast<i64>(w.component)},
                              {"target", static_cast<i64>(w.target)},
                              {"u", w.u}});
                text += "  component " + std::to_string(w.component + 1) + " -> target " +
                        std::to_string(w.target + 1) + " via power " + std::to_string(w.u) +
                        "\n";
            }
            for (const auto& w : res.warnings) text += "warning: " + w + "\n";
            emit(fmt, json{{"root", res.ok}, {"witnesses", ws}, {"warnings", res.warnings}},
                 text);
        } else if (sc_prim->parsed()) {
            auto pp = read_pp(slurp(in_prim));
            auto rep = is_primitive(pp);
            json j = {{"primitive", rep.primitive}, {"notes", rep.notes}};
            std::string text =
                std::string("primitive: ") + (rep.primitive ? "true" : "false") + "\n";
            if (rep.witness) {
                j["witness"] = certificate_json(*rep.witness);
                text += certificate_text(*rep.witness);
            }
            for (const auto& nline : rep.notes) text += "note: " + nline + "\n";
            emit(fmt, j, text);
        } else if (sc_eq->parsed()) {
            auto a = read_pp(slurp(in_eq_a));
            auto b = read_pp(slurp(in_eq_b));
            bool eq = equivalent(a, b);
            emit(fmt, json{{"equivalent", eq}},
                 std::string("equivalent: ") + (eq ? "true" : "false") + "\n");
        } else if (sc_mt->parsed()) {
            auto pp = read_pp(slurp(in_mt));
            auto shape = multitwist_of(pp);
            json arr = json::array();
            std::string text = "degree: " + std::to_string(shape.degree) + "\n";
            for (const auto& o : shape.orbits) {
                arr.push_back({{"m", o.m},
                               {"q", o.q},
                               {"separating", o.separating}});
                text += "orbit: m=" + std::to_string(o.m) + " q=" + std::to_string(o.q) +
                        " separating=" + (o.separating ? "true" : "false") + "\n";
            }
            emit(fmt, json{{"degree", shape.degree}, {"orbits", arr}}, text);
        } else if (sc_bounds->parsed()) {
            BoundQuery bq;
            bq.shape = shape_from_string(bd_shape);
            bq.g = bd_g;
            bq.q = bd_q;
            bq.level = bd_level;
            bq.middle_separating = bd_middle == "sep";
            auto b = degree_bound(bq);
            emit(fmt, json{{"min_degree", b.min_degree}, {"max_degree", b.max_degree}},
                 "min-degree: " + std::to_string(b.min_degree) +
                     "\nmax-degree: " + std::to_string(b.max_degree) + "\n");
        } else if (sc_table->parsed()) {
            // One row per (genus, shape) the hypotheses admit; the two
            // middle-curve variants of the commutator shape get separate
            // rows. CSV in text mode, an array of objects in JSON.
            struct Row {
                const char* shape;
                const char* middle;
                Shape s;
                i64 level;
                bool mid_sep;
            };
            const Row kinds[] = {
                {"nonseparating", "-", Shape::Nonseparating, 0, false},
                {"separating", "-", Shape::Separating, 0, false},
                {"bounding-pair", "-", Shape::BoundingPair, 0, false},
                {"torelli-bp", "-", Shape::TorelliBP, 0, false},
                {"level-m", "-", Shape::LevelM, bt_level, false},
                {"mod2-commutator", "sep", Shape::Mod2Commutator, 0, true},
                {"mod2-commutator", "nonsep", Shape::Mod2Commutator, 0, false},
            };
            json rows = json::array();
            std::string text = "genus,q,shape,level,middle,min_degree,max_degree\n";
            for (i64 g = bt_gmin; g <= bt_gmax; ++g) {
                for (const auto& k : kinds) {
                    BoundQuery bq{k.s, g, bt_q, k.level, k.mid_sep};
                    DegreeBound b;
                    try {
                        b = degree_bound(bq);
                    } catch (const ppds::DomainError&) {
                        continue;  // out of the shape's hypotheses at this genus
                    }
                    rows.push_back({{"genus", g},
                                    {"q", bt_q},
                                    {"shape", k.shape},
                                    {"level", k.level},
                                    {"middle", k.middle},
                                    {"min_degree", b.min_degree},
                                    {"max_degree", b.max_degree}});
                    text += std::to_string(g) + "," + std::to_string(bt_q) + "," + k.shape +
                            "," + std::to_string(k.level) + "," + k.middle + "," +
                            std::to_string(b.min_degree) + "," + std::to_string(b.max_degree) +
                            "\n";
                }
            }
            emit(fmt, json{{"rows", rows}}, text);
        } else if (sc_realize->parsed()) {
            auto r = construct_realizer(shape_from_string(rz_shape), rz_g, rz_q, rz_level);
            json j = {{"degree", r.degree},
                      {"root", to_json(r.root)},
                      {"target", to_json(r.target)},
                      {"notes", r.notes}};
            std::string text = "degree: " + std::to_string(r.degree) + "\nroot: " +
                               to_text(r.root) + "\ntarget: " + to_text(r.target) + "\n";
            for (const auto& nline : r.notes) text += "note: " + nline + "\n";
            emit(fmt, j, text);
        } else if (sc_bp->parsed()) {
            auto r = construct_bp_root(bp_g);
            json j = {{"degree", r.degree},
                      {"genus", r.realized_genus},
                      {"root", to_json(r.root)},
                      {"warnings", r.warnings}};
            std::string text = "degree: " + std::to_string(r.degree) +
                               "\ngenus: " + std::to_string(r.realized_genus) +
                               "\nroot: " + to_text(r.root) + "\n";
            for (const auto& w : r.warnings) text += "warning: " + w + "\n";
            emit(fmt, j, text);
        } else if (sc_member->parsed()) {
            bool member = membership(shape_from_string(mb_shape), mb_exps, mb_level,
                                     mb_middle == "sep");
            emit(fmt, json{{"member", member}},
                 std::string("member: ") + (member ? "true" : "false") + "\n");
        } else if (sc_iv->parsed()) {
            auto pp = read_pp(slurp(in_iv));
            auto rep = ivanov_multitwist_check(pp, iv_m);
            json j = {{"status", to_string(rep.status)}, {"warnings", rep.warnings}};
            std::string text = std::string("status: ") + to_string(rep.status) + "\n";
            for (const auto& w : rep.warnings) text += "warning: " + w + "\n";
            emit(fmt, j, text);
        } else if (sc_tf->parsed()) {
            auto load_cyclic = [](const std::string& arg) {
                // Literal data set text, or a file holding one.
                auto s = detail_io::strip_ws(arg);
                if (!s.empty() && (s[0] == '(' || s[0] == '{')) return read_cyclic(arg);
                return read_cyclic(slurp(arg));
            };
            auto pick = [](const CyclicDataSet& d, const std::string& e) -> OrbitHandle {
                OrbitHandle h;
                h.D = d;
                if (e == "r" || e == "R") return h;
                i64 idx = detail_io::parse_int(e);
                if (idx < 1 || static_cast<std::size_t>(idx) > d.pairs.size())
                    throw ppds::DomainError("orbit entry index out of range: " + e);
                h.pair = static_cast<std::size_t>(idx - 1);
                return h;
            };
            auto h1 = pick(load_cyclic(tf_d1), tf_e1);
            auto h2 = pick(load_cyclic(tf_d2), tf_e2);
            auto res = twist_factor(h1, h2,
                                    tf_mod > 0 ? std::optional<i64>(tf_mod) : std::nullopt);
            const char* kind = res.kind == TwistKind::TriviallyCompatible ? "trivial"
                               : res.kind == TwistKind::Factor            ? "factor"
                                                                          : "none";
            json j = {{"kind", kind}, {"k", res.k}};
            std::string text = std::string("kind: ") + kind + "\n";
            if (res.kind == TwistKind::Factor) text += "k: " + std::to_string(res.k) + "\n";
            if (!res.note.empty()) {
                j["note"] = res.note;
                text += "note: " + res.note + "\n";
            }
            emit(fmt, j, text);
        } else if (sc_crt->parsed()) {
            auto c = crt_twist_coeffs(crt_n1, crt_n2, crt_k);
            emit(fmt, json{{"p1", c.p1}, {"p2", c.p2}, {"n", c.n}},
                 "p1: " + std::to_string(c.p1) + "\np2: " + std::to_string(c.p2) +
                     "\nn: " + std::to_string(c.n) + "\n");
        } else if (sc_pa->parsed()) {
            i64 b = pa_root_degree_bound(pa_g, pa_lambda);
            emit(fmt, json{{"bound", b}}, std::to_string(b) + "\n");
        }
    } catch (const ppds::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
