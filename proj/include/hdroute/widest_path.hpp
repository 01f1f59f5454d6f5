#pragma once

// Max-min (widest / bottleneck) Dijkstra. The resulting tree gives, for every
// reachable vertex, a path from the root maximizing the minimum edge
// capacity. Frontier ties expand the lexicographically smaller vertex name
// first; a vertex keeps the first parent that offered its final value.

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"

namespace hdroute {

struct WidestPathTree {
    Vertex root = 0;
    std::vector<std::optional<Vertex>> parent;
    /// Best bottleneck capacity from the root; nullopt when unreachable.
    std::vector<std::optional<Capacity>> achieved;
    /// Vertices in the order they were finalized.
    std::vector<Vertex> order;

    bool reachable(Vertex v) const { return v < achieved.size() && achieved[v].has_value(); }
};

namespace detail {

struct Frontier {
    Capacity cap;
    Vertex v;
};

class MaxMinSearch {
public:
    MaxMinSearch(const Digraph& g, WidestPathTree& tree) : g_(g), tree_(tree), queue_(Cmp{&g}) {
        const std::size_t n = g.vertex_count();
        expanded_.assign(n, 0);
        tentative_.assign(n, std::nullopt);
        tentative_parent_.assign(n, std::nullopt);
    }

    void mark_expanded(Vertex v) { expanded_[v] = 1; }

    void offer(Vertex v, const Capacity& cap, std::optional<Vertex> from) {
        if (expanded_[v]) return;
        if (tentative_[v] && !(*tentative_[v] < cap)) return;
        tentative_[v] = cap;
        tentative_parent_[v] = from;
        queue_.push({cap, v});
    }

    void relax_from(Vertex u) {
        const Capacity& base = *tree_.achieved[u];
        for (const Arc& a : g_.out_arcs(u)) {
            if (expanded_[a.head]) continue;
            offer(a.head, min(base, a.cap), u);
        }
    }

    void run() {
        while (!queue_.empty()) {
            Frontier top = queue_.top();
            queue_.pop();
            Vertex v = top.v;
            if (expanded_[v] || !(*tentative_[v] == top.cap)) continue;
            expanded_[v] = 1;
            tree_.achieved[v] = std::move(top.cap);
            tree_.parent[v] = tentative_parent_[v];
            tree_.order.push_back(v);
            relax_from(v);
        }
    }

private:
    struct Cmp {
        const Digraph* g;
        // priority_queue pops the "largest": higher capacity, then smaller name
        bool operator()(const Frontier& a, const Frontier& b) const {
            if (a.cap != b.cap) return a.cap < b.cap;
            return g->name(a.v) > g->name(b.v);
        }
    };

    const Digraph& g_;
    WidestPathTree& tree_;
    std::vector<char> expanded_;
    std::vector<std::optional<Capacity>> tentative_;
    std::vector<std::optional<Vertex>> tentative_parent_;
    std::priority_queue<Frontier, std::vector<Frontier>, Cmp> queue_;
};

}  // namespace detail

/// Widest-path spanning tree from `root`; achieved(root) is Unbounded.
/// O(V log V + E) comparisons with a lazy-deletion heap.
inline WidestPathTree widest_path_tree(const Digraph& g, Vertex root) {
    if (root >= g.vertex_count()) throw ValidationError("root not in graph");
    WidestPathTree tree;
    tree.root = root;
    tree.parent.assign(g.vertex_count(), std::nullopt);
    tree.achieved.assign(g.vertex_count(), std::nullopt);
    detail::MaxMinSearch search(g, tree);
    search.offer(root, Capacity::unbounded(), std::nullopt);
    search.run();
    return tree;
}

/// Root-to-v path by parent links; throws NoPathError when v is unreachable.
inline Path tree_path(const WidestPathTree& tree, Vertex v) {
    if (!tree.reachable(v)) throw NoPathError();
    Path p;
    for (std::optional<Vertex> cur = v; cur; cur = tree.parent[*cur]) {
        p.vertices.push_back(*cur);
        if (p.vertices.size() > tree.parent.size()) throw ValidationError("parent links contain a cycle");
    }
    std::reverse(p.vertices.begin(), p.vertices.end());
    return p;
}

/// Continues max-min Dijkstra from an intermediate state: every vertex not
/// in `redo` keeps its entry from `previous` (those entries count as already
/// expanded), and the redo vertices are expanded afresh. Each redo vertex
/// starts from the best min(achieved(v'), c(v'->v)) over kept in-neighbours v'.
///
/// `g` may have more vertices than `previous` (e.g. new replicas); all such
/// vertices must be in `redo`. Throws ValidationError when a kept vertex has
/// its tree parent in `redo`, or when the root is in `redo`.
inline WidestPathTree resume_widest_path_tree(const Digraph& g, const WidestPathTree& previous,
                                              const std::vector<Vertex>& redo) {
    const std::size_t n = g.vertex_count();
    std::vector<char> in_redo(n, 0);
    for (Vertex v : redo) {
        if (v >= n) throw ValidationError("redo vertex not in graph");
        in_redo[v] = 1;
    }
    if (previous.root >= n || in_redo[previous.root]) throw ValidationError("root cannot be recomputed");
    if (previous.parent.size() > n) throw ValidationError("previous tree is larger than the graph");

    WidestPathTree tree;
    tree.root = previous.root;
    tree.parent.assign(n, std::nullopt);
    tree.achieved.assign(n, std::nullopt);
    for (Vertex v = 0; v < n; ++v) {
        if (in_redo[v]) continue;
        if (v >= previous.parent.size()) {
            throw ValidationError("vertex " + g.name(v) + " is new but not scheduled for recomputation");
        }
        if (previous.parent[v] && in_redo[*previous.parent[v]]) {
            throw ValidationError("kept vertex " + g.name(v) + " depends on recomputed vertex " +
                                  g.name(*previous.parent[v]));
        }
        tree.parent[v] = previous.parent[v];
        tree.achieved[v] = previous.achieved[v];
    }

    std::vector<std::size_t> rank(n, n);
    for (std::size_t i = 0; i < previous.order.size(); ++i) {
        Vertex v = previous.order[i];
        if (v < n && !in_redo[v]) {
            rank[v] = tree.order.size();
            tree.order.push_back(v);
        }
    }

    detail::MaxMinSearch search(g, tree);
    for (Vertex v = 0; v < n; ++v) {
        if (!in_redo[v]) search.mark_expanded(v);
    }
    for (Vertex v : redo) {
        std::optional<Capacity> best;
        std::optional<Vertex> best_from;
        for (const InArc& a : g.in_arcs(v)) {
            if (in_redo[a.tail] || !tree.achieved[a.tail]) continue;
            Capacity cand = min(*tree.achieved[a.tail], a.cap);
            if (!best || *best < cand || (*best == cand && rank[a.tail] < rank[*best_from])) {
                best = std::move(cand);
                best_from = a.tail;
            }
        }
        if (best) search.offer(v, *best, best_from);
    }
    search.run();
    return tree;
}

}  // namespace hdroute
