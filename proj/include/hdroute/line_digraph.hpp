#pragma once

// Line digraph of a terminal-augmented network. Every base edge i->j becomes
// a line vertex named "i|j"; line edges join consecutive base edges and carry
// half_harmonic of the two base capacities, so the FD capacity of a line path
// equals the HD capacity of the base path it spells.

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"

namespace hdroute {

/// Adds S' -> S and D -> D' with Unbounded capacity; S'/D' become the
/// terminals. Fresh names are derived from the terminal names by appending
/// apostrophes until unused.
inline Digraph augment_terminals(const Digraph& g) {
    Vertex s = g.source();
    Vertex d = g.destination();
    Digraph out = g;
    auto fresh = [&](const std::string& base) {
        std::string name = base + "'";
        while (out.contains(name)) name += "'";
        return name;
    };
    Vertex s_prime = out.add_vertex(fresh(g.name(s)));
    Vertex d_prime = out.add_vertex(fresh(g.name(d)));
    out.add_edge(s_prime, s, Capacity::unbounded());
    out.add_edge(d, d_prime, Capacity::unbounded());
    out.set_source(s_prime);
    out.set_destination(d_prime);
    return out;
}

struct LineDigraph {
    /// The augmented network G'.
    Digraph base;
    /// Line digraph; its terminals are the line vertices of S'->S and D->D'.
    Digraph graph;
    /// Line vertex -> (tail, head) of its base edge.
    std::vector<std::pair<Vertex, Vertex>> origin;

    Vertex source() const { return graph.source(); }
    Vertex destination() const { return graph.destination(); }

    /// Line vertex of base edge tail->head, if that edge exists.
    std::optional<Vertex> vertex_of(Vertex tail, Vertex head) const {
        if (tail >= by_tail_.size()) return std::nullopt;
        for (const auto& [h, lv] : by_tail_[tail]) {
            if (h == head) return lv;
        }
        return std::nullopt;
    }

    std::vector<std::vector<std::pair<Vertex, Vertex>>> by_tail_;
};

inline std::string line_vertex_name(const std::string& tail, const std::string& head) { return tail + "|" + head; }

/// Builds the line digraph of an augmented network (degree-1 terminals).
/// Cost O(|E| d) for maximum degree d.
inline LineDigraph build_line_digraph(const Digraph& augmented) {
    Vertex s = augmented.source();
    Vertex d = augmented.destination();
    if (!augmented.in_arcs(s).empty() || augmented.out_arcs(s).size() != 1 || !augmented.out_arcs(d).empty() ||
        augmented.in_arcs(d).size() != 1) {
        throw ValidationError("line digraph needs a terminal-augmented graph (degree-1 source and destination)");
    }

    LineDigraph ldg;
    ldg.base = augmented;
    ldg.by_tail_.resize(augmented.vertex_count());
    ldg.origin.reserve(augmented.edge_count());
    for (Vertex u = 0; u < augmented.vertex_count(); ++u) {
        for (const Arc& a : augmented.out_arcs(u)) {
            Vertex lv = ldg.graph.add_vertex(line_vertex_name(augmented.name(u), augmented.name(a.head)));
            ldg.origin.emplace_back(u, a.head);
            ldg.by_tail_[u].emplace_back(a.head, lv);
        }
    }
    for (Vertex lv = 0; lv < ldg.origin.size(); ++lv) {
        auto [i, j] = ldg.origin[lv];
        const Capacity& first = *augmented.capacity(i, j);
        for (const auto& [k, next] : ldg.by_tail_[j]) {
            ldg.graph.add_edge(lv, next, half_harmonic(first, *augmented.capacity(j, k)));
        }
    }
    ldg.graph.set_source(*ldg.vertex_of(s, augmented.out_arcs(s).front().head));
    ldg.graph.set_destination(*ldg.vertex_of(augmented.in_arcs(d).front().tail, d));
    return ldg;
}

/// Line path spelling the same edge sequence as a base path of >= 2 vertices.
inline Path embed_base_path(const LineDigraph& ldg, const Path& base_path) {
    require_path(ldg.base, base_path);
    if (base_path.edge_count() == 0) throw ValidationError("base path needs at least one edge");
    Path out;
    out.vertices.reserve(base_path.edge_count());
    for (std::size_t i = 0; i + 1 < base_path.vertices.size(); ++i) {
        out.vertices.push_back(*ldg.vertex_of(base_path.vertices[i], base_path.vertices[i + 1]));
    }
    return out;
}

/// Base walk k1 - k2 - ... obtained by chaining the origins of a line path.
inline Path map_line_path_to_base(const LineDigraph& ldg, const Path& line_path) {
    if (line_path.vertices.empty()) throw ValidationError("empty line path");
    Path out;
    out.vertices.reserve(line_path.vertices.size() + 1);
    out.vertices.push_back(ldg.origin.at(line_path.vertices.front()).first);
    for (std::size_t i = 0; i < line_path.vertices.size(); ++i) {
        auto [tail, head] = ldg.origin.at(line_path.vertices[i]);
        if (tail != out.vertices.back()) throw ValidationError("line path does not chain base edges");
        out.vertices.push_back(head);
    }
    return out;
}

/// An edge of the graph joining two non-consecutive vertices of a path.
struct Chord {
    Vertex tail;
    Vertex head;
    std::size_t earlier_index;
    std::size_t later_index;
    /// tail sits at earlier_index (a shortcut); false for a back edge.
    bool forward = true;

    std::size_t span_length() const noexcept { return later_index - earlier_index + 1; }
    friend bool operator==(const Chord&, const Chord&) = default;
};

/// Ordering used to pick the "first" chord: earliest later endpoint, then the
/// latest earlier endpoint (shortest span), then edge names.
inline bool chord_precedes(const Digraph& g, const Chord& a, const Chord& b) {
    if (a.later_index != b.later_index) return a.later_index < b.later_index;
    if (a.earlier_index != b.earlier_index) return a.earlier_index > b.earlier_index;
    return std::tie(g.name(a.tail), g.name(a.head)) < std::tie(g.name(b.tail), g.name(b.head));
}

/// All chords of `path` in g, in either orientation, sorted so that the
/// first element is the first chord along the path. The path may repeat
/// vertices; each occurrence is a separate position.
inline std::vector<Chord> find_chords(const Digraph& g, const Path& path) {
    require_path(g, path);
    std::vector<std::vector<std::size_t>> positions(g.vertex_count());
    for (std::size_t i = 0; i < path.vertices.size(); ++i) positions[path.vertices[i]].push_back(i);

    std::vector<Chord> chords;
    std::vector<char> visited(g.vertex_count(), 0);
    for (Vertex u : path.vertices) {
        if (visited[u]) continue;
        visited[u] = 1;
        for (const Arc& a : g.out_arcs(u)) {
            if (positions[a.head].empty()) continue;
            for (std::size_t p : positions[u]) {
                for (std::size_t q : positions[a.head]) {
                    std::size_t lo = std::min(p, q);
                    std::size_t hi = std::max(p, q);
                    if (hi - lo < 2) continue;
                    chords.push_back({u, a.head, lo, hi, p < q});
                }
            }
        }
    }
    std::sort(chords.begin(), chords.end(), [&](const Chord& a, const Chord& b) { return chord_precedes(g, a, b); });
    return chords;
}

inline std::vector<Chord> find_chords(const LineDigraph& ldg, const Path& path) { return find_chords(ldg.graph, path); }

/// find_chords(g, path).front() without listing every chord: scans later
/// endpoints in path order and stops at the first one that has a chord.
inline std::optional<Chord> first_chord(const Digraph& g, const Path& path) {
    require_path(g, path);
    std::vector<std::vector<std::size_t>> positions(g.vertex_count());
    std::optional<Chord> best;
    for (std::size_t j = 0; j < path.vertices.size(); ++j) {
        const Vertex w = path.vertices[j];
        auto consider = [&](Vertex tail, Vertex head, Vertex other, bool forward) {
            for (std::size_t p : positions[other]) {
                if (p + 2 > j) continue;
                Chord c{tail, head, p, j, forward};
                if (!best || chord_precedes(g, c, *best)) best = c;
            }
        };
        for (const InArc& a : g.in_arcs(w)) consider(a.tail, w, a.tail, true);
        for (const Arc& a : g.out_arcs(w)) consider(w, a.head, a.head, false);
        if (best) return best;
        positions[w].push_back(j);
    }
    return std::nullopt;
}

inline bool is_chordless(const Digraph& g, const Path& path) { return find_chords(g, path).empty(); }

}  // namespace hdroute
