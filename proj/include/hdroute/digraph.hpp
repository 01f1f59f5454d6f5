#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/error.hpp"

namespace hdroute {

using Vertex = std::size_t;

struct Arc {
    Vertex head;
    Capacity cap;
};

struct InArc {
    Vertex tail;
    Capacity cap;
};

struct Edge {
    Vertex tail;
    Vertex head;
    Capacity cap;
};

/// Ordered vertex sequence; simplicity is a property checked on demand.
struct Path {
    std::vector<Vertex> vertices;

    std::size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    friend bool operator==(const Path&, const Path&) = default;
};

/// Directed graph with string-named vertices, exact capacities and optional
/// designated terminals. Vertices are dense indices in insertion order.
///
/// add_edge() does not police self-loops or parallel edges so that validate()
/// can report them; algorithms assume validate() returned no violations.
class Digraph {
public:
    Vertex add_vertex(std::string name) {
        if (index_.contains(name)) throw ValidationError("duplicate vertex '" + name + "'");
        Vertex v = names_.size();
        index_.emplace(name, v);
        names_.push_back(std::move(name));
        out_.emplace_back();
        in_.emplace_back();
        return v;
    }

    void add_edge(Vertex tail, Vertex head, Capacity cap) {
        check(tail);
        check(head);
        out_[tail].push_back({head, cap});
        in_[head].push_back({tail, std::move(cap)});
        ++edge_count_;
    }

    void add_edge(std::string_view tail, std::string_view head, Capacity cap) {
        add_edge(at(tail), at(head), std::move(cap));
    }

    /// Removes the (first) edge tail->head; returns false when absent.
    bool remove_edge(Vertex tail, Vertex head) {
        check(tail);
        check(head);
        auto& out = out_[tail];
        auto it = std::find_if(out.begin(), out.end(), [&](const Arc& a) { return a.head == head; });
        if (it == out.end()) return false;
        out.erase(it);
        auto& in = in_[head];
        auto jt = std::find_if(in.begin(), in.end(), [&](const InArc& a) { return a.tail == tail; });
        in.erase(jt);
        --edge_count_;
        return true;
    }

    std::size_t vertex_count() const noexcept { return names_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    const std::string& name(Vertex v) const {
        check(v);
        return names_[v];
    }

    std::optional<Vertex> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(std::string_view name) const { return find(name).has_value(); }

    Vertex at(std::string_view name) const {
        auto v = find(name);
        if (!v) throw ValidationError("unknown vertex '" + std::string(name) + "'");
        return *v;
    }

    const std::vector<Arc>& out_arcs(Vertex v) const {
        check(v);
        return out_[v];
    }

    const std::vector<InArc>& in_arcs(Vertex v) const {
        check(v);
        return in_[v];
    }

    const Capacity* capacity(Vertex tail, Vertex head) const {
        for (const Arc& a : out_arcs(tail)) {
            if (a.head == head) return &a.cap;
        }
        return nullptr;
    }

    bool has_edge(Vertex tail, Vertex head) const { return capacity(tail, head) != nullptr; }

    /// All edges, grouped by tail in vertex order, in insertion order per tail.
    std::vector<Edge> edges() const {
        std::vector<Edge> result;
        result.reserve(edge_count_);
        for (Vertex u = 0; u < out_.size(); ++u) {
            for (const Arc& a : out_[u]) result.push_back({u, a.head, a.cap});
        }
        return result;
    }

    void set_source(Vertex v) {
        check(v);
        source_ = v;
    }
    void set_destination(Vertex v) {
        check(v);
        destination_ = v;
    }
    bool has_terminals() const noexcept { return source_.has_value() && destination_.has_value(); }
    std::optional<Vertex> source_opt() const noexcept { return source_; }
    std::optional<Vertex> destination_opt() const noexcept { return destination_; }
    Vertex source() const {
        if (!source_) throw ValidationError("graph has no source");
        return *source_;
    }
    Vertex destination() const {
        if (!destination_) throw ValidationError("graph has no destination");
        return *destination_;
    }

    /// Vertex names of a path, in order.
    std::vector<std::string> names(const Path& path) const {
        std::vector<std::string> result;
        result.reserve(path.vertices.size());
        for (Vertex v : path.vertices) result.push_back(name(v));
        return result;
    }

    /// Builds a Path from vertex names; throws on unknown names.
    Path path_of(const std::vector<std::string>& names) const {
        Path p;
        p.vertices.reserve(names.size());
        for (const auto& n : names) p.vertices.push_back(at(n));
        return p;
    }

    /// Vertices sorted by name; the deterministic iteration order for ties.
    std::vector<Vertex> vertices_by_name() const {
        std::vector<Vertex> vs(vertex_count());
        for (Vertex v = 0; v < vs.size(); ++v) vs[v] = v;
        std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) { return names_[a] < names_[b]; });
        return vs;
    }

private:
    void check(Vertex v) const {
        if (v >= names_.size()) throw ValidationError("vertex index out of range");
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, Vertex> index_;
    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<InArc>> in_;
    std::size_t edge_count_ = 0;
    std::optional<Vertex> source_;
    std::optional<Vertex> destination_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    enum class Kind { SelfLoop, ParallelEdge, MissingSource, MissingDestination, SameTerminals, NonPositiveCapacity };
    Kind kind;
    std::string message;
};

/// Lists every structural problem; an empty result means the graph is valid.
inline std::vector<Violation> validate(const Digraph& g) {
    std::vector<Violation> out;
    if (!g.source_opt()) out.push_back({Violation::Kind::MissingSource, "missing source"});
    if (!g.destination_opt()) out.push_back({Violation::Kind::MissingDestination, "missing destination"});
    if (g.source_opt() && g.destination_opt() && *g.source_opt() == *g.destination_opt()) {
        out.push_back({Violation::Kind::SameTerminals, "source and destination coincide at " + g.name(g.source())});
    }
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        std::vector<Vertex> seen;
        for (const Arc& a : g.out_arcs(u)) {
            if (a.head == u) out.push_back({Violation::Kind::SelfLoop, "self-loop at " + g.name(u)});
            if (std::find(seen.begin(), seen.end(), a.head) != seen.end()) {
                out.push_back({Violation::Kind::ParallelEdge,
                               "parallel edge " + g.name(u) + "->" + g.name(a.head)});
            }
            seen.push_back(a.head);
            if (!a.cap.is_positive()) {
                out.push_back({Violation::Kind::NonPositiveCapacity,
                               "nonpositive capacity on " + g.name(u) + "->" + g.name(a.head)});
            }
        }
    }
    return out;
}

inline bool is_valid(const Digraph& g) { return validate(g).empty(); }

/// Throws ValidationError listing all violations.
inline void require_valid(const Digraph& g) {
    auto violations = validate(g);
    if (violations.empty()) return;
    std::string msg = "invalid graph:";
    for (const auto& v : violations) msg += " " + v.message + ";";
    throw ValidationError(msg);
}

/// Throws unless every consecutive pair of the path is an edge of g.
inline void require_path(const Digraph& g, const Path& path) {
    if (path.vertices.empty()) throw ValidationError("empty path");
    for (Vertex v : path.vertices) {
        if (v >= g.vertex_count()) throw ValidationError("path vertex out of range");
    }
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        if (!g.has_edge(path.vertices[i], path.vertices[i + 1])) {
            throw ValidationError("not a path: no edge " + g.name(path.vertices[i]) + "->" +
                                  g.name(path.vertices[i + 1]));
        }
    }
}

/// True iff all vertices of the path are distinct.
inline bool is_simple_path(const Digraph& g, const Path& path) {
    require_path(g, path);
    std::vector<char> seen(g.vertex_count(), 0);
    for (Vertex v : path.vertices) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Elementary cycles (Johnson 1975), counting only.

struct CycleCount {
    std::size_t count = 0;
    bool exceeds_limit = false;
};

namespace detail {

class JohnsonCounter {
public:
    JohnsonCounter(const Digraph& g, std::size_t limit) : g_(g), limit_(limit) {}

    CycleCount run() {
        const std::size_t n = g_.vertex_count();
        blocked_.assign(n, 0);
        block_map_.assign(n, {});
        for (Vertex s = 0; s < n && !result_.exceeds_limit; ++s) {
            auto component = scc_containing(s);
            if (component.empty()) continue;
            in_component_.assign(n, 0);
            for (Vertex v : component) {
                in_component_[v] = 1;
                blocked_[v] = 0;
                block_map_[v].clear();
            }
            start_ = s;
            circuit(s);
        }
        return result_;
    }

private:
    // Strongly connected component of s within the subgraph induced by vertices >= s.
    std::vector<Vertex> scc_containing(Vertex s) {
        const std::size_t n = g_.vertex_count();
        std::vector<char> fwd(n, 0), bwd(n, 0);
        std::vector<Vertex> stack{s};
        fwd[s] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (const Arc& a : g_.out_arcs(u)) {
                if (a.head >= s && !fwd[a.head]) {
                    fwd[a.head] = 1;
                    stack.push_back(a.head);
                }
            }
        }
        stack.push_back(s);
        bwd[s] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (const InArc& a : g_.in_arcs(u)) {
                if (a.tail >= s && !bwd[a.tail]) {
                    bwd[a.tail] = 1;
                    stack.push_back(a.tail);
                }
            }
        }
        std::vector<Vertex> comp;
        for (Vertex v = s; v < n; ++v) {
            if (fwd[v] && bwd[v]) comp.push_back(v);
        }
        if (comp.size() == 1) {
            // a lone vertex has a cycle only through a self-loop
            if (!g_.has_edge(s, s)) comp.clear();
        }
        return comp;
    }

    void unblock(Vertex u) {
        blocked_[u] = 0;
        auto pending = std::move(block_map_[u]);
        block_map_[u].clear();
        for (Vertex w : pending) {
            if (blocked_[w]) unblock(w);
        }
    }

    bool circuit(Vertex v) {
        bool found = false;
        blocked_[v] = 1;
        for (const Arc& a : g_.out_arcs(v)) {
            if (result_.exceeds_limit) return true;
            Vertex w = a.head;
            if (!in_component_[w]) continue;
            if (w == start_) {
                if (++result_.count > limit_) {
                    result_.exceeds_limit = true;
                    return true;
                }
                found = true;
            } else if (!blocked_[w]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (const Arc& a : g_.out_arcs(v)) {
                Vertex w = a.head;
                if (!in_component_[w]) continue;
                auto& bm = block_map_[w];
                if (std::find(bm.begin(), bm.end(), v) == bm.end()) bm.push_back(v);
            }
        }
        return found;
    }

    const Digraph& g_;
    std::size_t limit_;
    Vertex start_ = 0;
    std::vector<char> blocked_;
    std::vector<char> in_component_;
    std::vector<std::vector<Vertex>> block_map_;
    CycleCount result_;
};

}  // namespace detail

/// Number of elementary directed cycles, K_G. Stops once the count passes
/// `limit`, reporting exceeds_limit with count = limit + 1.
inline CycleCount count_elementary_cycles(const Digraph& g, std::size_t limit) {
    if (limit == 0) throw ValidationError("cycle limit must be positive");
    return detail::JohnsonCounter(g, limit).run();
}

}  // namespace hdroute
