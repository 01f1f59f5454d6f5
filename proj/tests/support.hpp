#pragma once

// Test-side generators and slow reference implementations. Deliberately
// independent of the library's own generators and algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/line_digraph.hpp"

namespace hdtest {

using namespace hdroute;

struct RandomGraphShape {
    int mids = 4;           // non-terminal vertices
    double density = 0.35;  // per ordered pair
    int cap_max = 12;       // small range on purpose: lots of ties
    bool fractional = false;
    // terminal edges narrow (1..3) and mostly on one hub relay, relay-to-relay
    // edges wide (20..60): the widest line path then likes to loop through the hub
    bool looping = false;
};

/// S, m1..mk, D with arbitrary edges among intermediates (both directions
/// allowed), S with out-edges only and D with in-edges only.
inline Digraph random_graph(std::mt19937_64& rng, const RandomGraphShape& shape) {
    Digraph g;
    Vertex s = g.add_vertex("S");
    std::vector<Vertex> mids;
    for (int i = 0; i < shape.mids; ++i) mids.push_back(g.add_vertex("m" + std::to_string(i)));
    Vertex d = g.add_vertex("D");
    g.set_source(s);
    g.set_destination(d);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> cap(1, shape.cap_max);
    auto draw = [&] {
        if (shape.fractional && coin(rng) < 0.3) return Capacity(Rational(cap(rng), cap(rng)));
        return Capacity(cap(rng));
    };
    std::uniform_int_distribution<int> narrow(1, 3), wide(20, 60);
    if (shape.looping && !mids.empty()) {
        // one relay carries both terminal edges; other terminal edges are rare
        Vertex hub = mids[std::uniform_int_distribution<std::size_t>(0, mids.size() - 1)(rng)];
        g.add_edge(s, hub, Capacity(narrow(rng)));
        g.add_edge(hub, d, Capacity(narrow(rng)));
    }
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (u == v || v == s || u == d || g.has_edge(u, v)) continue;
            if (!shape.looping) {
                if (coin(rng) < shape.density) g.add_edge(u, v, draw());
            } else if (u == s || v == d) {
                if (coin(rng) < shape.density / 4) g.add_edge(u, v, Capacity(narrow(rng)));
            } else if (coin(rng) < shape.density) {
                g.add_edge(u, v, Capacity(wide(rng)));
            }
        }
    }
    return g;
}

/// Elementary cycles by brute force: for every vertex subset, count the
/// Hamiltonian cycles of the induced subgraph that start at its smallest
/// vertex (each directed cycle is counted once that way).
inline std::size_t exhaustive_cycle_count(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    std::size_t total = 0;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        std::vector<Vertex> members;
        for (Vertex v = 0; v < n; ++v) {
            if (mask & (1U << v)) members.push_back(v);
        }
        if (members.size() == 1) continue;  // no self-loops in valid graphs
        std::vector<Vertex> rest(members.begin() + 1, members.end());
        std::sort(rest.begin(), rest.end());
        do {
            Vertex prev = members.front();
            bool ok = true;
            for (Vertex v : rest) {
                if (!g.has_edge(prev, v)) {
                    ok = false;
                    break;
                }
                prev = v;
            }
            if (ok && g.has_edge(prev, members.front())) ++total;
        } while (std::next_permutation(rest.begin(), rest.end()));
    }
    return total;
}

/// All simple paths from `from` to `to` (vertex sequences), plain recursion.
inline std::vector<Path> all_simple_paths(const Digraph& g, Vertex from, Vertex to) {
    std::vector<Path> out;
    std::vector<Vertex> cur{from};
    std::vector<char> used(g.vertex_count(), 0);
    used[from] = 1;
    std::function<void(Vertex)> rec = [&](Vertex u) {
        if (u == to) {
            out.push_back(Path{cur});
            return;
        }
        for (const Arc& a : g.out_arcs(u)) {
            if (used[a.head]) continue;
            used[a.head] = 1;
            cur.push_back(a.head);
            rec(a.head);
            cur.pop_back();
            used[a.head] = 0;
        }
    };
    rec(from);
    return out;
}

/// Max over simple root->v paths of the minimum edge capacity; nullopt if unreachable.
inline std::optional<Capacity> brute_widest(const Digraph& g, Vertex root, Vertex v) {
    if (root == v) return Capacity::unbounded();
    std::optional<Capacity> best;
    for (const Path& p : all_simple_paths(g, root, v)) {
        Capacity c = Capacity::unbounded();
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            c = min(c, *g.capacity(p.vertices[i], p.vertices[i + 1]));
        }
        if (!best || *best < c) best = c;
    }
    return best;
}

/// Independent HD formula: pairs a*b/(a+b) computed straight from rationals.
inline Rational reference_hd(const std::vector<Rational>& caps) {
    if (caps.size() == 1) return caps.front();
    Rational best = -1;
    for (std::size_t i = 0; i + 1 < caps.size(); ++i) {
        Rational v = caps[i] * caps[i + 1] / (caps[i] + caps[i + 1]);
        if (best < 0 || v < best) best = v;
    }
    return best;
}

/// Chordless check by definition: no edge joins positions p, q with |p-q| >= 2.
inline bool reference_chordless(const Digraph& g, const Path& p) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        for (std::size_t j = 0; j < p.vertices.size(); ++j) {
            std::size_t gap = i > j ? i - j : j - i;
            if (gap >= 2 && g.has_edge(p.vertices[i], p.vertices[j])) return false;
        }
    }
    return true;
}

/// Chordless source-destination paths of a line digraph, collapsed onto the
/// initial line digraph via `origin`, as (name sequence, FD capacity) pairs.
inline std::multiset<std::pair<std::vector<std::string>, std::string>> chordless_signature(
    const Digraph& line, const Digraph& initial, const std::vector<Vertex>& origin) {
    std::multiset<std::pair<std::vector<std::string>, std::string>> out;
    for (const Path& p : all_simple_paths(line, line.source(), line.destination())) {
        Path projected;
        for (Vertex v : p.vertices) projected.vertices.push_back(origin[v]);
        if (!reference_chordless(initial, projected)) continue;
        Capacity c = Capacity::unbounded();
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            c = min(c, *line.capacity(p.vertices[i], p.vertices[i + 1]));
        }
        out.emplace(initial.names(projected), c.to_fraction());
    }
    return out;
}

}  // namespace hdtest
