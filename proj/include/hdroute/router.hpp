#pragma once

// Best half-duplex simple path via the line digraph.
//
// The HD capacity of a base path is the FD capacity of its line image, and a
// base path is simple iff its line image is chordless. The router therefore
// looks for the widest chordless path in the line digraph: it runs max-min
// Dijkstra, and while the tree's source-destination path is chordal it
// removes the chordal subpath spanned by the first chord (replicating the
// span's intermediate vertices so that every other path survives) and
// resumes Dijkstra on the affected vertices only.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/capacity_metrics.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"
#include "hdroute/line_digraph.hpp"
#include "hdroute/widest_path.hpp"

namespace hdroute {

struct RouterOptions {
    std::size_t max_iterations = 1'000'000;
    bool trace = false;
};

struct TraceRecord {
    std::size_t iteration = 0;
    /// Chord endpoints, named after the initial line digraph.
    std::string chord_tail;
    std::string chord_head;
    std::size_t span_length = 0;
    std::size_t replicas_added = 0;
    /// Best FD capacity at the line destination before this elimination.
    Capacity tree_capacity_at_destination;
};

struct RouteResult {
    /// Simple source-destination path in the input graph.
    Path path;
    Capacity hd_capacity;
    std::size_t iterations = 0;
    std::size_t replicas_created = 0;
    std::vector<TraceRecord> trace;
};

/// The first chord along a path: the one whose later endpoint comes
/// earliest, ties going to the latest earlier endpoint, then edge names.
inline const Chord& select_first_chord(const Digraph& g, const std::vector<Chord>& chords) {
    if (chords.empty()) throw ValidationError("no chords to select from");
    return *std::min_element(chords.begin(), chords.end(),
                             [&](const Chord& a, const Chord& b) { return chord_precedes(g, a, b); });
}

struct Elimination {
    /// Replicas of the span's intermediate vertices, in span order.
    std::vector<Vertex> replicas;
    /// The later span endpoint.
    Vertex endpoint = 0;
    /// The edge from the last intermediate (or the first endpoint) to `endpoint`, now removed.
    Vertex removed_tail = 0;
    std::size_t span_length = 0;
};

/// Makes the span path[chord.earlier_index .. chord.later_index] unrealizable
/// while keeping every other path, mutating `line` in place:
///  - each intermediate span vertex gets a replica, and replicas are chained
///    with the capacities of the original chain;
///  - every edge from a vertex outside the span into an intermediate vertex is
///    copied onto that vertex's replica;
///  - the last intermediate -> endpoint edge moves to the last replica.
/// A span with no intermediates just loses its single edge.
/// `replica_name(v)` names the replica of v; it must return unused names.
template <class NameFn>
Elimination eliminate_chordal_subpath(Digraph& line, const Path& path, const Chord& chord, NameFn&& replica_name) {
    if (chord.later_index >= path.vertices.size() || chord.earlier_index >= chord.later_index) {
        throw ValidationError("chord positions outside the path");
    }
    const auto first = path.vertices.begin() + static_cast<std::ptrdiff_t>(chord.earlier_index);
    const std::vector<Vertex> span(first, path.vertices.begin() + static_cast<std::ptrdiff_t>(chord.later_index) + 1);
    for (std::size_t i = 0; i + 1 < span.size(); ++i) {
        if (!line.has_edge(span[i], span[i + 1])) throw ValidationError("span is not a path of the line digraph");
    }

    Elimination out;
    out.span_length = span.size();
    out.endpoint = span.back();
    out.removed_tail = span[span.size() - 2];

    std::unordered_set<Vertex> in_span(span.begin(), span.end());
    const std::size_t intermediates = span.size() - 2;

    for (std::size_t j = 1; j <= intermediates; ++j) {
        out.replicas.push_back(line.add_vertex(replica_name(span[j])));
    }
    for (std::size_t j = 1; j + 1 <= intermediates; ++j) {
        Capacity c = *line.capacity(span[j], span[j + 1]);
        line.add_edge(out.replicas[j - 1], out.replicas[j], std::move(c));
    }
    for (std::size_t j = 1; j <= intermediates; ++j) {
        const std::vector<InArc> incoming = line.in_arcs(span[j]);
        for (const InArc& a : incoming) {
            if (in_span.contains(a.tail)) continue;
            line.add_edge(a.tail, out.replicas[j - 1], a.cap);
        }
    }
    Capacity last = *line.capacity(out.removed_tail, out.endpoint);
    line.remove_edge(out.removed_tail, out.endpoint);
    if (intermediates > 0) line.add_edge(out.replicas.back(), out.endpoint, std::move(last));
    return out;
}

/// Vertices whose best path must be recomputed after an elimination: the new
/// replicas, the span endpoint and the endpoint's descendants in `tree`.
/// Returned sorted ascending.
inline std::vector<Vertex> compute_redo_set(const WidestPathTree& tree, Vertex endpoint,
                                            const std::vector<Vertex>& replicas) {
    const std::size_t n = tree.parent.size();
    std::vector<std::vector<Vertex>> children(n);
    for (Vertex v = 0; v < n; ++v) {
        if (tree.parent[v]) children[*tree.parent[v]].push_back(v);
    }
    std::vector<Vertex> redo(replicas.begin(), replicas.end());
    if (endpoint < n) {
        std::vector<Vertex> stack{endpoint};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            redo.push_back(v);
            for (Vertex c : children[v]) stack.push_back(c);
        }
    } else {
        redo.push_back(endpoint);
    }
    std::sort(redo.begin(), redo.end());
    redo.erase(std::unique(redo.begin(), redo.end()), redo.end());
    return redo;
}

/// Iterative state of the chordless widest-path search.
class ChordlessRouter {
public:
    explicit ChordlessRouter(const Digraph& g, RouterOptions options = {})
        : options_(options), input_vertices_(g.vertex_count()) {
        require_valid(g);
        initial_ = build_line_digraph(augment_terminals(g));
        line_ = initial_.graph;
        origin_.resize(line_.vertex_count());
        for (Vertex v = 0; v < origin_.size(); ++v) origin_[v] = v;
        tree_ = widest_path_tree(line_, initial_.source());
    }

    const LineDigraph& initial() const noexcept { return initial_; }
    /// The current line digraph L^(i), including replicas.
    const Digraph& line() const noexcept { return line_; }
    const WidestPathTree& tree() const noexcept { return tree_; }
    std::size_t iterations() const noexcept { return iteration_; }
    std::size_t replicas_created() const noexcept { return line_.vertex_count() - initial_.graph.vertex_count(); }
    const std::vector<TraceRecord>& trace() const noexcept { return trace_; }

    /// Vertex of the initial line digraph that `v` replicates (itself for originals).
    Vertex original_of(Vertex v) const { return origin_.at(v); }

    /// Maps a path of the current line digraph onto the initial one.
    Path project(const Path& p) const {
        Path out;
        out.vertices.reserve(p.vertices.size());
        for (Vertex v : p.vertices) out.vertices.push_back(origin_.at(v));
        return out;
    }

    /// Current best line path from source to destination; throws NoPathError.
    Path current_path() const { return tree_path(tree_, line_.destination()); }

    /// Performs one elimination if the current best path is chordal.
    /// Returns false (and changes nothing) when it is already chordless.
    bool step() {
        Path path = current_path();
        Path projected = project(path);
        std::optional<Chord> found = first_chord(initial_.graph, projected);
        if (!found) return false;
        if (iteration_ >= options_.max_iterations) throw LimitExceeded("cycle budget exceeded");
        const Chord chord = *found;
        const std::size_t tag = iteration_ + 1;
        auto name_replica = [&](Vertex v) {
            std::string base = initial_.graph.name(origin_[v]) + "#" + std::to_string(tag);
            std::string name = base;
            for (std::size_t k = 1; line_.contains(name); ++k) name = base + "." + std::to_string(k);
            return name;
        };
        Capacity before = *tree_.achieved[line_.destination()];
        Elimination elim = eliminate_chordal_subpath(line_, path, chord, name_replica);
        for (std::size_t j = 0; j < elim.replicas.size(); ++j) {
            origin_.push_back(origin_[path.vertices[chord.earlier_index + 1 + j]]);
        }
        auto redo = compute_redo_set(tree_, elim.endpoint, elim.replicas);
        tree_ = resume_widest_path_tree(line_, tree_, redo);
        ++iteration_;

        if (options_.trace) {
            trace_.push_back({iteration_, initial_.graph.name(projected.vertices[chord.forward ? chord.earlier_index
                                                                                              : chord.later_index]),
                              initial_.graph.name(projected.vertices[chord.forward ? chord.later_index
                                                                                  : chord.earlier_index]),
                              elim.span_length, elim.replicas.size(), std::move(before)});
        }
        return true;
    }

    /// Runs to completion and maps the chordless line path back to the input graph.
    RouteResult run() {
        while (step()) {
        }
        Path line_path = project(current_path());
        Path base = map_line_path_to_base(initial_, line_path);
        // strip the augmented terminals S' and D'
        Path result;
        result.vertices.assign(base.vertices.begin() + 1, base.vertices.end() - 1);
        for (Vertex v : result.vertices) {
            if (v >= input_vertices_) throw Error("internal: augmented terminal inside routed path");
        }
        return {std::move(result), *tree_.achieved[line_.destination()], iteration_, replicas_created(), trace_};
    }

private:
    RouterOptions options_;
    std::size_t input_vertices_;
    LineDigraph initial_;
    Digraph line_;
    std::vector<Vertex> origin_;
    WidestPathTree tree_;
    std::size_t iteration_ = 0;
    std::vector<TraceRecord> trace_;
};

/// Simple source-destination path of largest HD approximate capacity.
/// Throws NoPathError when the destination is unreachable and LimitExceeded
/// when more than options.max_iterations eliminations are needed.
inline RouteResult best_hd_simple_path(const Digraph& g, RouterOptions options = {}) {
    return ChordlessRouter(g, options).run();
}

/// Is there a simple source-destination path with HD capacity >= z?
inline bool hd_path_decide(const Digraph& g, const Capacity& z, RouterOptions options = {}) {
    if (!z.is_positive()) throw ValidationError("threshold must be positive");
    try {
        return best_hd_simple_path(g, options).hd_capacity >= z;
    } catch (const NoPathError&) {
        return false;
    }
}

}  // namespace hdroute
