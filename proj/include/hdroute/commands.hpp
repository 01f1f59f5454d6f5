#pragma once

// File-in/file-out commands behind the hdroute executable. Each returns the
// JSON document for standard output plus an exit code; the executable only
// parses flags and does the I/O.
//
// Exit codes: 0 success / yes, 1 no (decide), 2 error, 3 no path.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/capacity_metrics.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"
#include "hdroute/instance_gen.hpp"
#include "hdroute/json_io.hpp"
#include "hdroute/oracle.hpp"
#include "hdroute/router.hpp"
#include "hdroute/sat_reduction.hpp"
#include "hdroute/widest_path.hpp"

namespace hdroute::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitNoPath = 3;

struct Outcome {
    Json document;
    int exit_code = kExitOk;
    /// Extra files to write (path, content), e.g. the provenance sidecar.
    std::vector<std::pair<std::string, std::string>> files;
};

inline Outcome error_outcome(const std::string& message) { return {Json{{"error", message}}, kExitError, {}}; }

inline Outcome no_path_outcome() { return {Json{{"error", "no path"}}, kExitNoPath, {}}; }

inline Json trace_json(const std::vector<TraceRecord>& trace) {
    Json arr = Json::array();
    for (const TraceRecord& r : trace) {
        arr.push_back({{"iteration", r.iteration},
                       {"chord", {r.chord_tail, r.chord_head}},
                       {"span_length", r.span_length},
                       {"replicas_added", r.replicas_added},
                       {"tree_capacity_at_destination", r.tree_capacity_at_destination.to_fraction()}});
    }
    return arr;
}

inline Outcome route(const Digraph& g, bool trace, RouterOptions options = {}) {
    options.trace = trace;
    RouteResult r;
    try {
        r = best_hd_simple_path(g, options);
    } catch (const NoPathError&) {
        return no_path_outcome();
    }
    Json j;
    j["path"] = path_json(g, r.path);
    j["hd_capacity"] = r.hd_capacity.to_fraction();
    j["hd_capacity_decimal"] = r.hd_capacity.to_decimal(6);
    j["iterations"] = r.iterations;
    j["replicas"] = r.replicas_created;
    if (trace) j["trace"] = trace_json(r.trace);
    return {std::move(j), kExitOk, {}};
}

inline Outcome oracle(const Digraph& g) {
    auto best = brute_force_best_hd(g);
    if (!best) return no_path_outcome();
    Json j;
    j["path"] = path_json(g, best->path);
    j["hd_capacity"] = best->capacity.to_fraction();
    j["hd_capacity_decimal"] = best->capacity.to_decimal(6);
    j["simple_paths"] = enumerate_simple_paths(g).size();
    return {std::move(j), kExitOk, {}};
}

/// FD-best route (widest path) against the HD-best route.
inline Outcome compare(const Digraph& g) {
    require_valid(g);
    WidestPathTree tree = widest_path_tree(g, g.source());
    if (!tree.reachable(g.destination())) return no_path_outcome();
    Path fd_route = tree_path(tree, g.destination());
    PathEvaluation fd_eval = evaluate_path(g, fd_route);
    RouteResult hd = best_hd_simple_path(g);

    Json j;
    j["fd_route"] = {{"path", path_json(g, fd_route)},
                     {"fd_capacity", fd_eval.fd.to_fraction()},
                     {"fd_capacity_decimal", fd_eval.fd.to_decimal(6)},
                     {"hd_capacity", fd_eval.hd.to_fraction()},
                     {"hd_capacity_decimal", fd_eval.hd.to_decimal(6)}};
    j["hd_route"] = {{"path", path_json(g, hd.path)},
                     {"hd_capacity", hd.hd_capacity.to_fraction()},
                     {"hd_capacity_decimal", hd.hd_capacity.to_decimal(6)}};
    if (hd.hd_capacity.is_finite() && fd_eval.hd.is_finite()) {
        Capacity ratio(hd.hd_capacity.value() / fd_eval.hd.value());
        j["ratio"] = ratio.to_fraction();
        j["ratio_decimal"] = ratio.to_decimal(6);
    } else {
        j["ratio"] = nullptr;
        j["ratio_decimal"] = nullptr;
    }
    return {std::move(j), kExitOk, {}};
}

/// Threshold from the flag, falling back to a "threshold" field in the graph document.
inline Outcome decide(const Json& graph_doc, std::optional<std::string> threshold_text) {
    if (!threshold_text) {
        if (!graph_doc.contains("threshold")) throw ValidationError("no threshold given (use --threshold)");
        const Json& t = graph_doc["threshold"];
        threshold_text = t.is_string() ? t.get<std::string>() : t.dump();
    }
    Capacity z = Capacity::parse(*threshold_text);
    if (!z.is_positive()) throw ValidationError("threshold must be positive");
    Digraph g = graph_from_json(graph_doc);
    require_valid(g);
    std::optional<RouteResult> best;
    try {
        best = best_hd_simple_path(g);
    } catch (const NoPathError&) {
    }
    const bool yes = best && best->hd_capacity >= z;
    Json j;
    j["decision"] = yes ? "yes" : "no";
    j["threshold"] = z.to_fraction();
    j["best_hd_capacity"] = best ? Json(best->hd_capacity.to_fraction()) : Json(nullptr);
    return {std::move(j), yes ? kExitOk : kExitNo, {}};
}

/// The provenance sidecar goes next to `out` ("x.json" -> "x.provenance.json").
inline std::string provenance_path(const std::string& out) {
    const std::string ext = ".json";
    std::string stem = out;
    if (stem.size() > ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0) {
        stem.resize(stem.size() - ext.size());
    }
    return stem + ".provenance.json";
}

/// Without `out` the graph document (with "threshold" and an embedded
/// "provenance" map) is the output; with it, graph and sidecar go to files
/// and standard output gets a summary.
inline Outcome reduce(const std::string& cnf_text, const std::string& z_text, const std::optional<std::string>& out) {
    SatInstance inst = parse_dimacs(cnf_text);
    Capacity z = Capacity::parse(z_text);
    if (!z.is_finite() || !z.is_positive()) throw ValidationError("threshold must be positive");
    ReductionInstance red = reduce(inst, z);

    Json graph = graph_to_json(red.graph);
    graph["threshold"] = z.to_fraction();
    Json prov = provenance_to_json(red);
    if (!out) {
        graph["provenance"] = std::move(prov);
        return {std::move(graph), kExitOk, {}};
    }
    Json summary;
    summary["graph"] = *out;
    summary["provenance"] = provenance_path(*out);
    summary["threshold"] = z.to_fraction();
    summary["vertices"] = red.graph.vertex_count();
    summary["edges"] = red.graph.edge_count();
    summary["clauses"] = inst.clauses.size();
    summary["forbidden_pairs"] = red.forbidden.size();
    return {std::move(summary), kExitOk, {{*out, dump(graph)}, {provenance_path(*out), dump(prov)}}};
}

inline Outcome gen(const GenSpec& spec) {
    Json j = graph_to_json(generate(spec));
    j["genspec"] = genspec_to_json(spec);
    return {std::move(j), kExitOk, {}};
}

inline Outcome cycles(const Digraph& g, std::size_t limit) {
    CycleCount c = count_elementary_cycles(g, limit);
    Json j;
    j["cycles"] = c.count;
    j["exceeds_limit"] = c.exceeds_limit;
    j["limit"] = limit;
    return {std::move(j), kExitOk, {}};
}

}  // namespace hdroute::cli
