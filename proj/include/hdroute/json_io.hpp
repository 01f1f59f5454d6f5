#pragma once

// JSON graph format:
//   {"nodes": [id, ...],
//    "edges": [{"from": id, "to": id, "cap": "3/2" | "1.5" | "inf"}, ...],
//    "source": id, "destination": id}
// Ids may be strings or integers (integers are read as their decimal text).
// Capacities may be strings or JSON numbers; output always uses "p/q".
// Optional extras: "threshold" (reduction output) and "genspec" (generators).

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hdroute/capacity.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"
#include "hdroute/instance_gen.hpp"
#include "hdroute/line_digraph.hpp"
#include "hdroute/sat_reduction.hpp"

namespace hdroute {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string id_text(const Json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError(std::string(what) + " must be a string or integer id");
}

inline Capacity capacity_from(const Json& j) {
    if (j.is_string()) return Capacity::parse(j.get<std::string>());
    if (j.is_number_integer()) return Capacity(j.get<long long>());
    // floats go through their shortest round-trip text, so 1.5 reads as 3/2
    if (j.is_number_float()) return Capacity::parse(j.dump());
    throw ParseError("capacity must be a string or number");
}

inline const Json& field(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace detail

inline Digraph graph_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("graph document must be a JSON object");
    const Json& nodes = detail::field(j, "nodes");
    const Json& edges = detail::field(j, "edges");
    if (!nodes.is_array() || !edges.is_array()) throw ParseError("'nodes' and 'edges' must be arrays");
    Digraph g;
    for (const Json& n : nodes) {
        std::string name = detail::id_text(n, "node");
        if (g.contains(name)) throw ParseError("duplicate node '" + name + "'");
        g.add_vertex(std::move(name));
    }
    for (const Json& e : edges) {
        if (!e.is_object()) throw ParseError("edge must be an object");
        std::string from = detail::id_text(detail::field(e, "from"), "edge endpoint");
        std::string to = detail::id_text(detail::field(e, "to"), "edge endpoint");
        auto u = g.find(from);
        auto v = g.find(to);
        if (!u || !v) throw ParseError("edge " + from + "->" + to + " references an unknown node");
        if (g.has_edge(*u, *v)) throw ParseError("duplicate edge " + from + "->" + to);
        g.add_edge(*u, *v, detail::capacity_from(detail::field(e, "cap")));
    }
    if (j.contains("source")) {
        std::string s = detail::id_text(j["source"], "source");
        if (!g.contains(s)) throw ParseError("unknown source '" + s + "'");
        g.set_source(g.at(s));
    }
    if (j.contains("destination")) {
        std::string d = detail::id_text(j["destination"], "destination");
        if (!g.contains(d)) throw ParseError("unknown destination '" + d + "'");
        g.set_destination(g.at(d));
    }
    return g;
}

inline Digraph parse_graph(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return graph_from_json(j);
}

/// Vertices in index order, edges grouped by tail in insertion order.
inline Json graph_to_json(const Digraph& g) {
    Json j;
    j["nodes"] = Json::array();
    for (Vertex v = 0; v < g.vertex_count(); ++v) j["nodes"].push_back(g.name(v));
    j["edges"] = Json::array();
    for (const Edge& e : g.edges()) {
        j["edges"].push_back({{"from", g.name(e.tail)}, {"to", g.name(e.head)}, {"cap", e.cap.to_fraction()}});
    }
    if (g.source_opt()) j["source"] = g.name(g.source());
    if (g.destination_opt()) j["destination"] = g.name(g.destination());
    return j;
}

/// Line digraph in the same format; vertex names are "tail|head".
inline Json line_digraph_to_json(const LineDigraph& ldg) { return graph_to_json(ldg.graph); }

inline Json capacity_json(const Capacity& c) { return {{"fraction", c.to_fraction()}, {"decimal", c.to_decimal(6)}}; }

inline Json path_json(const Digraph& g, const Path& p) {
    Json arr = Json::array();
    for (const std::string& n : g.names(p)) arr.push_back(n);
    return arr;
}

// ---------------------------------------------------------------------------
// GenSpec

inline std::string_view gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::Layered: return "layered";
        case GenKind::Random: return "random";
        case GenKind::Gap: return "gap";
    }
    return "?";
}

inline Json genspec_to_json(const GenSpec& s) {
    Json j;
    j["kind"] = gen_kind_name(s.kind);
    switch (s.kind) {
        case GenKind::Layered:
            j["layers"] = s.layers;
            j["width"] = s.width;
            break;
        case GenKind::Random:
            j["vertices"] = s.vertices;
            j["edge_prob"] = s.edge_prob;
            j["back_edge_budget"] = s.back_edge_budget;
            break;
        case GenKind::Gap:
            j["c"] = s.gap_c.to_fraction();
            j["delta"] = s.gap_delta.to_fraction();
            j["M"] = s.gap_m.to_fraction();
            return j;  // no randomness involved
    }
    j["cap_range"] = {s.caps.lo, s.caps.hi};
    j["seed"] = s.seed;
    return j;
}

/// Every field of the chosen kind is required.
inline GenSpec genspec_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("genspec must be a JSON object");
    GenSpec s;
    try {
        const std::string kind = detail::field(j, "kind").get<std::string>();
        auto read_common = [&] {
            const Json& r = detail::field(j, "cap_range");
            if (!r.is_array() || r.size() != 2) throw ParseError("cap_range must be [lo, hi]");
            s.caps = {r[0].get<std::int64_t>(), r[1].get<std::int64_t>()};
            s.seed = detail::field(j, "seed").get<std::uint64_t>();
        };
        if (kind == "layered") {
            s.kind = GenKind::Layered;
            s.layers = detail::field(j, "layers").get<std::size_t>();
            s.width = detail::field(j, "width").get<std::size_t>();
            read_common();
        } else if (kind == "random") {
            s.kind = GenKind::Random;
            s.vertices = detail::field(j, "vertices").get<std::size_t>();
            s.edge_prob = detail::field(j, "edge_prob").get<double>();
            s.back_edge_budget = detail::field(j, "back_edge_budget").get<std::size_t>();
            read_common();
        } else if (kind == "gap") {
            s.kind = GenKind::Gap;
            s.gap_c = detail::capacity_from(detail::field(j, "c"));
            s.gap_delta = detail::capacity_from(detail::field(j, "delta"));
            s.gap_m = detail::capacity_from(detail::field(j, "M"));
        } else {
            throw ParseError("unknown generator kind '" + kind + "'");
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad genspec field: ") + e.what());
    }
    return s;
}

// ---------------------------------------------------------------------------
// Reduction provenance

inline Json provenance_to_json(const ReductionInstance& red) {
    Json j = Json::object();
    for (Vertex v = 0; v < red.graph.vertex_count(); ++v) {
        const std::string& name = red.graph.name(v);
        const VertexInfo& info = red.provenance.at(name);
        Json rec;
        rec["stage"] = info.stage;
        rec["role"] = role_name(info.role);
        if (info.literal && info.role != Role::T && info.role != Role::R) {
            rec["clause"] = info.literal->clause;
            rec["position"] = info.literal->position;
        } else if (info.literal) {
            rec["clause"] = info.literal->clause;
        }
        if (info.dimacs) rec["literal"] = *info.dimacs;
        if (info.partner) rec["partner"] = ref_text(*info.partner);
        j[name] = std::move(rec);
    }
    return j;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

/// Canonical text rendering: two-space indent plus a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hdroute
