#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "sumsets/bounds.hpp"
#include "sumsets/hypercube.hpp"
#include "sumsets/instance.hpp"

namespace sumsets {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte ? e.byte - 1 : 0);
        throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
    }
}

inline std::vector<Element> parse_vector_list(const Json& j, size_t dim, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be a list of vectors");
    std::vector<Element> out;
    for (const auto& v : j) {
        if (!v.is_array() || v.size() != dim)
            throw ParseError(std::string(what) + " entries must be integer vectors of length " +
                             std::to_string(dim));
        Element e;
        for (const auto& c : v) {
            if (!c.is_number_integer())
                throw ParseError(std::string(what) + " coordinates must be integers");
            e.push_back(c.get<int64_t>());
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline Json elements_json(const std::vector<Element>& elems) {
    Json arr = Json::array();
    for (const auto& e : elems) {
        Json v = Json::array();
        for (int64_t c : e) v.push_back(c);
        arr.push_back(std::move(v));
    }
    return arr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

struct InstanceFile {
    SumsetInstance instance;
    Json meta;  // free-form provenance, kept verbatim
};

/// Keys: moduli (list of nonnegative ints), A (list of vectors), B (list
/// of h lists of vectors), optional meta. Coordinates canonicalize on
/// load, so serialize(parse(x)) is a fixed point.
inline InstanceFile parse_instance(const std::string& text) {
    Json j = detail::parse_json(text);
    if (!j.is_object()) throw ParseError("instance file must be a JSON object");
    for (const char* key : {"moduli", "A", "B"})
        if (!j.contains(key)) throw ParseError(std::string("instance file missing key '") + key + "'");
    if (!j["moduli"].is_array() || j["moduli"].empty())
        throw ParseError("'moduli' must be a nonempty list of nonnegative integers");
    std::vector<int64_t> moduli;
    for (const auto& m : j["moduli"]) {
        if (!m.is_number_integer() || m.get<int64_t>() < 0)
            throw ParseError("'moduli' must be a nonempty list of nonnegative integers");
        moduli.push_back(m.get<int64_t>());
    }
    GroupSpec spec(moduli);
    GSet a(spec, detail::parse_vector_list(j["A"], spec.dim(), "'A'"));
    if (!j["B"].is_array() || j["B"].empty())
        throw ParseError("'B' must be a nonempty list of vector lists");
    std::vector<GSet> bs;
    for (const auto& bj : j["B"])
        bs.emplace_back(spec, detail::parse_vector_list(bj, spec.dim(), "'B' entry"));
    Json meta = j.contains("meta") ? j["meta"] : Json();
    try {
        return InstanceFile{SumsetInstance(std::move(a), std::move(bs)), std::move(meta)};
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

inline std::string serialize_instance(const SumsetInstance& inst, const Json& meta = Json()) {
    Json j;
    j["moduli"] = inst.spec().moduli;
    j["A"] = detail::elements_json(inst.A().elems());
    Json bs = Json::array();
    for (int i = 1; i <= inst.h(); ++i) bs.push_back(detail::elements_json(inst.B(i).elems()));
    j["B"] = std::move(bs);
    if (!meta.is_null()) j["meta"] = meta;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Graph files (hand-crafted hypercube graphs)
// ---------------------------------------------------------------------------

/// Keys: h, classes (list of {I: [indices], vertices: [names]}), edges
/// (list of [from, to] name pairs). Vertex names must be unique.
inline HypercubeGraph parse_graph(const std::string& text) {
    Json j = detail::parse_json(text);
    if (!j.is_object() || !j.contains("h") || !j.contains("classes") || !j.contains("edges"))
        throw ParseError("graph file needs keys 'h', 'classes', 'edges'");
    if (!j["h"].is_number_integer() || j["h"].get<int>() < 0)
        throw ParseError("'h' must be a nonnegative integer");
    int h = j["h"].get<int>();
    HypercubeGraph g(h);
    std::map<std::string, int> by_name;
    for (const auto& cls : j["classes"]) {
        if (!cls.is_object() || !cls.contains("I") || !cls.contains("vertices"))
            throw ParseError("each class needs keys 'I' and 'vertices'");
        std::vector<int> members;
        for (const auto& i : cls["I"]) {
            if (!i.is_number_integer()) throw ParseError("'I' must list integers in 1..h");
            members.push_back(i.get<int>());
        }
        IndexSet idx = IndexSet::from_members(h, members);
        for (const auto& name : cls["vertices"]) {
            if (!name.is_string()) throw ParseError("vertex names must be strings");
            std::string n = name.get<std::string>();
            if (by_name.count(n)) throw ParseError("duplicate vertex name '" + n + "'");
            by_name[n] = g.add_vertex(idx.mask, Vertex{{}, n, -1, -1});
        }
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError("edges must be [from, to] name pairs");
        auto u = by_name.find(e[0].get<std::string>());
        auto v = by_name.find(e[1].get<std::string>());
        if (u == by_name.end() || v == by_name.end())
            throw ParseError("edge references unknown vertex");
        try {
            g.add_edge(u->second, v->second);
        } catch (const DomainError& err) {
            throw ParseError(std::string("bad edge ") + e.dump() + ": " + err.what());
        }
    }
    g.finalize();
    return g;
}

// ---------------------------------------------------------------------------
// Reports and traces
// ---------------------------------------------------------------------------

struct Report {
    std::string instance;
    uint64_t seed = 0;
    size_t precision_bits = 128;
    size_t cap = kDefaultEnumerationCap;
    std::vector<BoundRecord> records;

    bool all_hold() const {
        for (const auto& r : records)
            if (!r.holds) return false;
        return true;
    }
};

inline Json record_json(const BoundRecord& r) {
    Json j;
    j["check"] = r.check;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["holds"] = r.holds;
    j["witness"] = detail::elements_json(r.witness);
    j["method"] = r.method;
    j["seed"] = r.seed;
    j["ms"] = r.ms;
    return j;
}

inline std::string report_to_json(const Report& rep) {
    Json j;
    j["schema"] = "sumsets-report/1";
    j["instance"] = rep.instance;
    j["seed"] = rep.seed;
    j["precision_bits"] = rep.precision_bits;
    j["cap"] = rep.cap;
    size_t held = 0;
    for (const auto& r : rep.records) held += r.holds ? 1 : 0;
    j["summary"] = Json{{"checks", rep.records.size()}, {"held", held}};
    Json recs = Json::array();
    for (const auto& r : rep.records) recs.push_back(record_json(r));
    j["checks"] = std::move(recs);
    return j.dump(2) + "\n";
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

inline std::string witness_compact(const std::vector<Element>& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ";";
        out += elem_to_string(w[i]);
    }
    return out;
}

}  // namespace detail

inline std::string report_to_csv(const Report& rep) {
    std::string out = "check,name,lhs,rhs,holds,witness,seed,ms\n";
    for (const auto& r : rep.records) {
        out += detail::csv_quote(r.check) + "," + detail::csv_quote(r.name) + "," +
               detail::csv_quote(r.lhs) + "," + detail::csv_quote(r.rhs) + "," +
               (r.holds ? "true" : "false") + "," +
               detail::csv_quote(detail::witness_compact(r.witness)) + "," +
               std::to_string(r.seed) + "," + std::to_string(r.ms) + "\n";
    }
    return out;
}

inline std::string cert_name(Cert c) {
    switch (c) {
        case Cert::holds: return "holds";
        case Cert::fails: return "fails";
        default: return "indeterminate";
    }
}

inline std::string trace_to_json(const PartitionTrace& t) {
    Json j;
    j["schema"] = "sumsets-trace/1";
    j["h"] = t.h;
    j["m"] = t.m;
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        Json sj;
        sj["X"] = detail::elements_json(s.part.elems());
        sj["mu"] = s.mu.to_string();
        sj["new_top_count"] = s.new_top_count;
        sj["step_bound_rhs"] = s.step_rhs.to_string();
        sj["step_holds"] = s.step_holds;
        sj["regime"] = s.regime;
        steps.push_back(std::move(sj));
    }
    j["steps"] = std::move(steps);
    j["mu_monotone"] = t.mu_monotone;
    j["identities"] = Json{{"sum_sizes_equals_m", t.identity_sizes},
                           {"sum_mu_weighted", t.sum_mu_weighted.to_string()},
                           {"avg_growth", t.avg_growth.to_string()},
                           {"weighted_identity_holds", t.identity_weighted}};
    j["diagnostics"] = Json{{"mu_star", t.mu_star.to_string(9)},
                            {"slope_bound", t.slope_bound.to_string(9)},
                            {"slope_estimate", cert_name(t.slope_estimate)},
                            {"precision_bits", t.precision_bits}};
    return j.dump(2) + "\n";
}

}  // namespace sumsets
