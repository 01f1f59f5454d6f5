#pragma once

// Exponential-time ground truth over all simple source-destination paths.
// Only for small instances; the router is checked against it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/capacity_metrics.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"

namespace hdroute {

/// Lazy depth-first enumeration of simple source-destination paths, in
/// lexicographic order of their vertex-name sequences.
class SimplePathEnumerator {
public:
    static constexpr std::size_t kDefaultMaxPaths = 10'000'000;

    explicit SimplePathEnumerator(const Digraph& g, std::size_t max_paths = kDefaultMaxPaths)
        : g_(g), max_paths_(max_paths), on_path_(g.vertex_count(), 0), sorted_(g.vertex_count()) {
        require_valid(g);
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            for (const Arc& a : g.out_arcs(u)) sorted_[u].push_back(a.head);
            std::sort(sorted_[u].begin(), sorted_[u].end(),
                      [&](Vertex a, Vertex b) { return g.name(a) < g.name(b); });
        }
        push(g.source());
    }

    /// Next path, or nullopt once exhausted. Throws LimitExceeded past max_paths.
    std::optional<Path> next() {
        const Vertex dest = g_.destination();
        while (!stack_.empty()) {
            Frame& top = stack_.back();
            if (top.v == dest && !top.emitted) {
                top.emitted = true;
                if (++count_ > max_paths_) throw LimitExceeded("simple path enumeration exceeded its cap");
                return Path{path_};
            }
            if (top.v == dest || top.next >= sorted_[top.v].size()) {
                pop();
                continue;
            }
            Vertex w = sorted_[top.v][top.next++];
            if (!on_path_[w]) push(w);
        }
        exhausted_ = true;
        return std::nullopt;
    }

    std::size_t count() const noexcept { return count_; }
    bool exhausted() const noexcept { return exhausted_; }

private:
    struct Frame {
        Vertex v;
        std::size_t next = 0;
        bool emitted = false;
    };

    void push(Vertex v) {
        stack_.push_back({v});
        path_.push_back(v);
        on_path_[v] = 1;
    }
    void pop() {
        on_path_[stack_.back().v] = 0;
        path_.pop_back();
        stack_.pop_back();
    }

    const Digraph& g_;
    std::size_t max_paths_;
    std::vector<char> on_path_;
    std::vector<std::vector<Vertex>> sorted_;
    std::vector<Frame> stack_;
    std::vector<Vertex> path_;
    std::size_t count_ = 0;
    bool exhausted_ = false;
};

/// All simple source-destination paths (eager convenience wrapper).
inline std::vector<Path> enumerate_simple_paths(const Digraph& g,
                                                std::size_t max_paths = SimplePathEnumerator::kDefaultMaxPaths) {
    SimplePathEnumerator e(g, max_paths);
    std::vector<Path> out;
    while (auto p = e.next()) out.push_back(std::move(*p));
    return out;
}

struct OracleBest {
    Path path;
    Capacity capacity;
};

namespace detail {

template <class Score>
std::optional<OracleBest> brute_force_best(const Digraph& g, Score&& score, std::size_t max_paths) {
    SimplePathEnumerator e(g, max_paths);
    std::optional<OracleBest> best;
    while (auto p = e.next()) {
        Capacity c = score(*p);
        // strict improvement keeps the lexicographically first optimum
        if (!best || best->capacity < c) best = OracleBest{std::move(*p), std::move(c)};
    }
    return best;
}

}  // namespace detail

/// Simple path maximizing HD capacity; nullopt when no path exists.
inline std::optional<OracleBest> brute_force_best_hd(const Digraph& g,
                                                     std::size_t max_paths = SimplePathEnumerator::kDefaultMaxPaths) {
    return detail::brute_force_best(g, [&](const Path& p) { return hd_path_capacity(g, p); }, max_paths);
}

/// Simple path maximizing FD capacity; nullopt when no path exists.
inline std::optional<OracleBest> brute_force_best_fd(const Digraph& g,
                                                     std::size_t max_paths = SimplePathEnumerator::kDefaultMaxPaths) {
    return detail::brute_force_best(g, [&](const Path& p) { return fd_path_capacity(g, p); }, max_paths);
}

/// Exhaustive HD-Path decision: does a simple path with HD capacity >= z exist?
/// Prunes prefixes whose consecutive-pair minimum already fell below z
/// (appending edges never raises that minimum) and stops at the first witness.
inline std::optional<Path> oracle_find_path_at_least(const Digraph& g, const Capacity& z) {
    require_valid(g);
    const Vertex src = g.source();
    const Vertex dest = g.destination();
    std::vector<char> on_path(g.vertex_count(), 0);
    std::vector<Vertex> path{src};
    on_path[src] = 1;

    struct Frame {
        std::size_t next;
    };
    std::vector<Frame> frames{{0}};
    while (!frames.empty()) {
        Vertex u = path.back();
        auto& arcs = g.out_arcs(u);
        if (u == dest || frames.back().next >= arcs.size()) {
            on_path[u] = 0;
            path.pop_back();
            frames.pop_back();
            continue;
        }
        const Arc& a = arcs[frames.back().next++];
        if (on_path[a.head]) continue;
        if (path.size() >= 2) {
            const Capacity& prev = *g.capacity(path[path.size() - 2], u);
            if (half_harmonic(prev, a.cap) < z) continue;
        }
        if (a.head == dest) {
            if (path.size() == 1 && a.cap < z) continue;
            Path found{path};
            found.vertices.push_back(dest);
            return found;
        }
        path.push_back(a.head);
        on_path[a.head] = 1;
        frames.push_back({0});
    }
    return std::nullopt;
}

inline bool oracle_decide(const Digraph& g, const Capacity& z) {
    if (!z.is_positive()) throw ValidationError("threshold must be positive");
    return oracle_find_path_at_least(g, z).has_value();
}

}  // namespace hdroute
