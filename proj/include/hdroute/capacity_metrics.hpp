#pragma once

// Full-duplex and half-duplex approximate capacities of a path.
//
//   FD(P) = min_e c(e)
//   HD(P) = min over consecutive edge pairs (e, e') of c(e) c(e') / (c(e) + c(e'))
//
// The HD expression is only meaningful on simple paths: on a path with a
// repeated vertex it can exceed the value of the path's simple pruning.

#include <optional>
#include <utility>

#include "hdroute/capacity.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"

namespace hdroute {

struct PathEvaluation {
    Capacity fd;
    Capacity hd;
    /// Index i of the bottleneck FD edge (path.vertices[i] -> path.vertices[i+1]).
    std::size_t bottleneck_fd_edge = 0;
    /// Index i of the first edge of the bottleneck HD pair; nullopt for single-edge paths.
    std::optional<std::size_t> bottleneck_hd_pair;
};

class NonSimplePathError : public ValidationError {
public:
    NonSimplePathError() : ValidationError("HD capacity formula applies to simple paths only") {}
};

namespace detail {

inline std::vector<Capacity> edge_capacities(const Digraph& g, const Path& path) {
    require_path(g, path);
    if (path.edge_count() == 0) throw ValidationError("path needs at least one edge");
    std::vector<Capacity> caps;
    caps.reserve(path.edge_count());
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        caps.push_back(*g.capacity(path.vertices[i], path.vertices[i + 1]));
    }
    return caps;
}

}  // namespace detail

/// Minimum edge capacity along any valid path (simplicity not required).
inline Capacity fd_path_capacity(const Digraph& g, const Path& path) {
    auto caps = detail::edge_capacities(g, path);
    Capacity best = caps.front();
    for (const auto& c : caps) best = min(best, c);
    return best;
}

/// Eq.-(2)-style evaluation without the simplicity check. Used to exhibit
/// the misleading value on cyclic paths; routing code must not call it.
inline Capacity hd_formula_unchecked(const Digraph& g, const Path& path) {
    auto caps = detail::edge_capacities(g, path);
    if (caps.size() == 1) return caps.front();
    Capacity best = half_harmonic(caps[0], caps[1]);
    for (std::size_t i = 1; i + 1 < caps.size(); ++i) best = min(best, half_harmonic(caps[i], caps[i + 1]));
    return best;
}

/// HD approximate capacity of a simple path. A direct link (no relay) has
/// HD capacity equal to its link capacity.
inline Capacity hd_path_capacity(const Digraph& g, const Path& path) {
    if (!is_simple_path(g, path)) throw NonSimplePathError();
    return hd_formula_unchecked(g, path);
}

/// Both capacities with their bottleneck locations; requires a simple path.
inline PathEvaluation evaluate_path(const Digraph& g, const Path& path) {
    if (!is_simple_path(g, path)) throw NonSimplePathError();
    auto caps = detail::edge_capacities(g, path);
    PathEvaluation ev{caps[0], caps[0], 0, std::nullopt};
    for (std::size_t i = 1; i < caps.size(); ++i) {
        if (caps[i] < ev.fd) {
            ev.fd = caps[i];
            ev.bottleneck_fd_edge = i;
        }
    }
    for (std::size_t i = 0; i + 1 < caps.size(); ++i) {
        Capacity pair = half_harmonic(caps[i], caps[i + 1]);
        if (!ev.bottleneck_hd_pair || pair < ev.hd) {
            ev.hd = pair;
            ev.bottleneck_hd_pair = i;
        }
    }
    return ev;
}

}  // namespace hdroute
