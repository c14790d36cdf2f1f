#pragma once

#include <charconv>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ppds/cyclic.hpp"
#include "ppds/pseudo_periodic.hpp"

// Text and JSON forms of the two data set kinds.
//
// Cyclic text:   (n,g0;(c1,n1),(c2,n2),...)   cone case
//                (n,g0,r;-)                    free case
// Pseudo-periodic text, four ';'-separated sections inside [[ ]]:
//                [[n;((D1),p1),...;disconnecting;non-disconnecting]]
// where a disconnecting annulus orbit is [[m,q,k;i,j]] (trailing * for
// the exchanging variant) and a non-disconnecting one is (m,q,k;i,j)
// (again * for exchanging), component indices 1-based, and '-' stands
// for an empty section. Endpoint assignments have no text form; they
// travel only through JSON.
//
// Residues are reduced into [0, n_i) on input; a residue that reduces
// to 0 is rejected, since no valid data set carries one.

namespace ppds {

namespace detail_io {

inline std::string strip_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s)
        if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r') out.push_back(ch);
    return out;
}

// Split on `sep` at bracket depth 0; '(' and '[' each count one level.
inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth < 0) throw ParseError("unbalanced brackets near '" + s + "'");
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (depth != 0) throw ParseError("unbalanced brackets near '" + s + "'");
    parts.push_back(cur);
    return parts;
}

inline i64 parse_int(const std::string& s) {
    i64 v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("expected an integer, got '" + s + "'");
    return v;
}

// Strips one matched layer of the given delimiters.
inline std::string unwrap(const std::string& s, std::string_view open, std::string_view close) {
    if (s.size() < open.size() + close.size() || s.compare(0, open.size(), open) != 0 ||
        s.compare(s.size() - close.size(), close.size(), close) != 0)
        throw ParseError("expected '" + std::string(open) + "..." + std::string(close) +
                         "', got '" + s + "'");
    return s.substr(open.size(), s.size() - open.size() - close.size());
}

inline ConePair parse_pair(const std::string& tok) {
    auto inner = unwrap(tok, "(", ")");
    auto nums = split_top(inner, ',');
    if (nums.size() != 2) throw ParseError("cone pair needs two entries: '" + tok + "'");
    i64 c = parse_int(nums[0]);
    i64 ni = parse_int(nums[1]);
    if (ni < 1) throw ParseError("cone pair order must be positive: '" + tok + "'");
    c = mod_norm(c, ni);
    if (c == 0) throw ParseError("cone pair residue reduces to 0: '" + tok + "'");
    return {c, ni};
}

} // namespace detail_io

inline CyclicDataSet parse_cyclic(const std::string& text) {
    using namespace detail_io;
    auto s = strip_ws(text);
    auto inner = unwrap(s, "(", ")");
    auto sections = split_top(inner, ';');
    if (sections.empty() || sections.size() > 2)
        throw ParseError("cyclic data set needs one or two sections: '" + text + "'");

    auto head = split_top(sections[0], ',');
    if (head.size() != 2 && head.size() != 3)
        throw ParseError("cyclic header needs (n,g0) or (n,g0,r): '" + text + "'");
    CyclicDataSet d;
    d.n = parse_int(head[0]);
    d.g0 = parse_int(head[1]);
    if (d.n < 1) throw ParseError("order must be positive: '" + text + "'");
    d.r = head.size() == 3 ? mod_norm(parse_int(head[2]), d.n) : 0;

    if (sections.size() == 2 && sections[1] != "-") {
        for (const auto& tok : split_top(sections[1], ','))
            d.pairs.push_back(parse_pair(tok));
    }
    return d;
}

inline std::string to_text(const CyclicDataSet& d) {
    std::string s = "(" + std::to_string(d.n) + "," + std::to_string(d.g0);
    if (d.pairs.empty()) {
        s += "," + std::to_string(d.r) + ";-";
    } else {
        if (d.r != 0) s += "," + std::to_string(d.r);
        s += ";";
        for (std::size_t i = 0; i < d.pairs.size(); ++i) {
            if (i) s += ",";
            s += "(" + std::to_string(d.pairs[i].c) + "," + std::to_string(d.pairs[i].ni) + ")";
        }
    }
    return s + ")";
}

inline PseudoPeriodicDataSet parse_pp(const std::string& text) {
    using namespace detail_io;
    auto s = strip_ws(text);
    auto inner = unwrap(s, "[[", "]]");
    auto sections = split_top(inner, ';');
    if (sections.size() != 4)
        throw ParseError("pseudo-periodic data set needs four sections: '" + text + "'");

    PseudoPeriodicDataSet pp;
    pp.n = parse_int(sections[0]);

    if (sections[1] != "-") {
        for (const auto& tok : split_top(sections[1], ',')) {
            auto body = unwrap(tok, "(", ")");
            auto fields = split_top(body, ',');
            if (fields.size() < 2)
                throw ParseError("orbit entry needs ((D),p): '" + tok + "'");
            std::string dtext = fields[0];
            for (std::size_t i = 1; i + 1 < fields.size(); ++i) dtext += "," + fields[i];
            SurfaceOrbit orb;
            orb.D = parse_cyclic(dtext);
            orb.p = parse_int(fields.back());
            pp.orbits.push_back(std::move(orb));
        }
    }

    auto parse_annuli = [&](const std::string& sec, bool disconnecting) {
        if (sec == "-") return;
        for (auto tok : split_top(sec, ',')) {
            bool star = !tok.empty() && tok.back() == '*';
            if (star) tok.pop_back();
            auto body = disconnecting ? unwrap(tok, "[[", "]]") : unwrap(tok, "(", ")");
            auto halves = split_top(body, ';');
            if (halves.size() != 2)
                throw ParseError("annulus orbit needs (m,q,k;i,j): '" + tok + "'");
            auto nums = split_top(halves[0], ',');
            auto ends = split_top(halves[1], ',');
            if (nums.size() != 3 || ends.size() != 2)
                throw ParseError("annulus orbit needs (m,q,k;i,j): '" + tok + "'");
            AnnulusOrbit a;
            a.m = parse_int(nums[0]);
            a.q = parse_int(nums[1]);
            a.k = parse_int(nums[2]);
            i64 i1 = parse_int(ends[0]);
            i64 j1 = parse_int(ends[1]);
            if (i1 < 1 || j1 < 1)
                throw ParseError("component indices are 1-based: '" + tok + "'");
            a.i = static_cast<std::size_t>(i1 - 1);
            a.j = static_cast<std::size_t>(j1 - 1);
            a.cls = disconnecting ? (star ? AnnulusClass::DE : AnnulusClass::DP)
                                  : (star ? AnnulusClass::E : AnnulusClass::P);
            pp.annuli.push_back(a);
        }
    };
    parse_annuli(sections[2], true);
    parse_annuli(sections[3], false);
    return pp;
}

inline std::string to_text(const PseudoPeriodicDataSet& pp) {
    std::string s = "[[" + std::to_string(pp.n) + ";";
    if (pp.orbits.empty()) {
        s += "-";
    } else {
        for (std::size_t i = 0; i < pp.orbits.size(); ++i) {
            if (i) s += ",";
            s += "(" + to_text(pp.orbits[i].D) + "," + std::to_string(pp.orbits[i].p) + ")";
        }
    }
    auto tuple = [](const AnnulusOrbit& a, const char* open, const char* close) {
        return std::string(open) + std::to_string(a.m) + "," + std::to_string(a.q) + "," +
               std::to_string(a.k) + ";" + std::to_string(a.i + 1) + "," +
               std::to_string(a.j + 1) + close;
    };
    for (bool disconnecting : {true, false}) {
        s += ";";
        std::string sec;
        for (const auto& a : pp.annuli) {
            if (is_disconnecting(a.cls) != disconnecting) continue;
            if (!sec.empty()) sec += ",";
            sec += disconnecting ? tuple(a, "[[", "]]") : tuple(a, "(", ")");
            if (is_exchanging(a.cls)) sec += "*";
        }
        s += sec.empty() ? "-" : sec;
    }
    return s + "]]";
}

// --- JSON ---

inline nlohmann::json to_json(const CyclicDataSet& d) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : d.pairs) pairs.push_back({p.c, p.ni});
    return {{"n", d.n}, {"g0", d.g0}, {"r", d.r}, {"pairs", pairs}};
}

namespace detail_io {

inline i64 json_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("expected integer field '") + key + "'");
    return j[key].get<i64>();
}

} // namespace detail_io

inline CyclicDataSet cyclic_from_json(const nlohmann::json& j) {
    using detail_io::json_int;
    if (!j.is_object()) throw ParseError("cyclic data set must be a JSON object");
    CyclicDataSet d;
    d.n = json_int(j, "n");
    if (d.n < 1) throw ParseError("order must be positive");
    d.g0 = json_int(j, "g0");
    d.r = j.contains("r") ? mod_norm(json_int(j, "r"), d.n) : 0;
    if (j.contains("pairs")) {
        if (!j["pairs"].is_array()) throw ParseError("'pairs' must be an array");
        for (const auto& e : j["pairs"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw ParseError("cone pair must be [c, n_i]");
            i64 ni = e[1].get<i64>();
            if (ni < 1) throw ParseError("cone pair order must be positive");
            i64 c = mod_norm(e[0].get<i64>(), ni);
            if (c == 0) throw ParseError("cone pair residue reduces to 0");
            d.pairs.push_back({c, ni});
        }
    }
    return d;
}

inline AnnulusClass annulus_class_from_string(const std::string& s) {
    if (s == "DP") return AnnulusClass::DP;
    if (s == "DE") return AnnulusClass::DE;
    if (s == "P") return AnnulusClass::P;
    if (s == "E") return AnnulusClass::E;
    throw ParseError("annulus class must be one of DP, DE, P, E; got '" + s + "'");
}

inline nlohmann::json to_json(const PseudoPeriodicDataSet& pp) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto& o : pp.orbits)
        orbits.push_back({{"D", to_json(o.D)}, {"p", o.p}});
    nlohmann::json annuli = nlohmann::json::array();
    for (const auto& a : pp.annuli)
        annuli.push_back({{"m", a.m},
                          {"q", a.q},
                          {"k", a.k},
                          {"i", static_cast<i64>(a.i)},
                          {"j", static_cast<i64>(a.j)},
                          {"class", to_string(a.cls)}});
    nlohmann::json out = {{"n", pp.n}, {"orbits", orbits}, {"annuli", annuli}};
    if (pp.assignment) {
        nlohmann::json ends = nlohmann::json::array();
        for (const auto& [a, b] : pp.assignment->ends) {
            nlohmann::json pair = nlohmann::json::array();
            pair.push_back(a ? nlohmann::json(static_cast<i64>(*a)) : nlohmann::json());
            pair.push_back(b ? nlohmann::json(static_cast<i64>(*b)) : nlohmann::json());
            ends.push_back(pair);
        }
        out["assignment"] = ends;
    }
    return out;
}

inline PseudoPeriodicDataSet pp_from_json(const nlohmann::json& j) {
    using detail_io::json_int;
    if (!j.is_object()) throw ParseError("pseudo-periodic data set must be a JSON object");
    PseudoPeriodicDataSet pp;
    pp.n = json_int(j, "n");
    if (!j.contains("orbits") || !j["orbits"].is_array())
        throw ParseError("expected array field 'orbits'");
    for (const auto& e : j["orbits"]) {
        if (!e.is_object() || !e.contains("D"))
            throw ParseError("orbit entry must be {\"D\": ..., \"p\": ...}");
        SurfaceOrbit orb;
        orb.D = cyclic_from_json(e["D"]);
        orb.p = json_int(e, "p");
        pp.orbits.push_back(std::move(orb));
    }
    if (!j.contains("annuli") || !j["annuli"].is_array())
        throw ParseError("expected array field 'annuli'");
    for (const auto& e : j["annuli"]) {
        if (!e.is_object()) throw ParseError("annulus entry must be an object");
        AnnulusOrbit a;
        a.m = json_int(e, "m");
        a.q = json_int(e, "q");
        a.k = json_int(e, "k");
        i64 i0 = json_int(e, "i");
        i64 j0 = json_int(e, "j");
        if (i0 < 0 || j0 < 0) throw ParseError("component indices must be non-negative");
        a.i = static_cast<std::size_t>(i0);
        a.j = static_cast<std::size_t>(j0);
        if (!e.contains("class") || !e["class"].is_string())
            throw ParseError("expected string field 'class'");
        a.cls = annulus_class_from_string(e["class"].get<std::string>());
        pp.annuli.push_back(a);
    }
    if (j.contains("assignment")) {
        if (!j["assignment"].is_array()) throw ParseError("'assignment' must be an array");
        EndpointAssignment asg;
        for (const auto& e : j["assignment"]) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("assignment entry must be [a, b]");
            auto side = [](const nlohmann::json& v) -> Endpoint {
                if (v.is_null()) return Regular;
                if (!v.is_number_integer() || v.get<i64>() < 0)
                    throw ParseError("assignment side must be null or a non-negative index");
                return static_cast<std::size_t>(v.get<i64>());
            };
            asg.ends.emplace_back(side(e[0]), side(e[1]));
        }
        pp.assignment = std::move(asg);
    }
    return pp;
}

inline std::string to_json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

// Accepts either the text form or the JSON form of a cyclic data set.
inline CyclicDataSet read_cyclic(const std::string& text) {
    auto s = detail_io::strip_ws(text);
    if (!s.empty() && (s[0] == '{')) return cyclic_from_json(parse_json(text));
    return parse_cyclic(text);
}

// Accepts either the text form or the JSON form of a pseudo-periodic set.
inline PseudoPeriodicDataSet read_pp(const std::string& text) {
    auto s = detail_io::strip_ws(text);
    if (!s.empty() && (s[0] == '{')) return pp_from_json(parse_json(text));
    return parse_pp(text);
}

} // namespace ppds
