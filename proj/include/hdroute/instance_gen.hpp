#pragma once

// Seeded instance generators. All randomness comes from SplitMix64 so that
// another implementation following the same draw order reproduces the same
// graphs bit for bit:
//
//   state0 = seed + stream * 0xD1B54A32D192ED03   (mod 2^64)
//   next():  state += 0x9E3779B97F4A7C15
//            z = state
//            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//            z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//            return z ^ (z >> 31)
//   uniform(lo, hi): r = hi - lo + 1; draw until next() >= (2^64 - r) mod r,
//                    return lo + value mod r
//   bernoulli(p):    (next() >> 11) * 2^-53 < p
//
// Structure draws use stream 0 and capacity draws stream 1.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"

namespace hdroute {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : state_(seed + stream * 0xD1B54A32D192ED03ULL) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi] without modulo bias.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw ValidationError("empty sampling range");
        const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next());  // full 64-bit span
        const std::uint64_t threshold = (0 - range) % range;
        std::uint64_t r;
        do {
            r = next();
        } while (r < threshold);
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + r % range);
    }

    bool bernoulli(double p) noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

private:
    std::uint64_t state_;
};

struct CapRange {
    std::int64_t lo = 1;
    std::int64_t hi = 100;
};

inline void check_cap_range(const CapRange& r) {
    if (r.lo < 1 || r.hi < r.lo) throw ValidationError("capacity range must satisfy 1 <= lo <= hi");
}

/// S -> layer 1 -> ... -> layer L -> D with complete bipartite links between
/// consecutive layers. Relays are named l<layer>_<k> (1-based). Capacities
/// are drawn in edge insertion order.
inline Digraph gen_layered(std::size_t layers, std::size_t width, CapRange caps, std::uint64_t seed) {
    if (layers < 1 || width < 1) throw ValidationError("layered generator needs L >= 1 and N_L >= 1");
    check_cap_range(caps);
    SplitMix64 rng(seed, 1);
    auto draw = [&] { return Capacity(rng.uniform(caps.lo, caps.hi)); };

    Digraph g;
    Vertex s = g.add_vertex("S");
    std::vector<std::vector<Vertex>> layer(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t k = 0; k < width; ++k) {
            layer[l].push_back(g.add_vertex("l" + std::to_string(l + 1) + "_" + std::to_string(k + 1)));
        }
    }
    Vertex d = g.add_vertex("D");
    for (Vertex v : layer.front()) g.add_edge(s, v, draw());
    for (std::size_t l = 0; l + 1 < layers; ++l) {
        for (Vertex u : layer[l]) {
            for (Vertex v : layer[l + 1]) g.add_edge(u, v, draw());
        }
    }
    for (Vertex v : layer.back()) g.add_edge(v, d, draw());
    g.set_source(s);
    g.set_destination(d);
    return g;
}

/// Random DAG plus back edges. Vertices are S, v1 .. v<n-2>, D. The
/// intermediates get a random topological order (Fisher-Yates on stream 0);
/// S is first and D last. Every forward pair (u before w) becomes an edge
/// with probability edge_prob, scanning u then w in topological order. Then
/// back_edge_budget attempts each pick a random ordered pair of
/// intermediates (later, earlier) and add that edge unless it already
/// exists, so S keeps no in-edges and D no out-edges.
inline Digraph gen_random_digraph(std::size_t n, double edge_prob, std::size_t back_edge_budget, CapRange caps,
                                  std::uint64_t seed) {
    if (n < 2) throw ValidationError("random generator needs n >= 2");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw ValidationError("edge probability must lie in [0, 1]");
    check_cap_range(caps);
    SplitMix64 rng(seed, 0);
    SplitMix64 cap_rng(seed, 1);
    auto draw = [&] { return Capacity(cap_rng.uniform(caps.lo, caps.hi)); };

    Digraph g;
    Vertex s = g.add_vertex("S");
    std::vector<Vertex> mids;
    for (std::size_t i = 1; i + 1 < n; ++i) mids.push_back(g.add_vertex("v" + std::to_string(i)));
    Vertex d = g.add_vertex("D");
    g.set_source(s);
    g.set_destination(d);

    for (std::size_t i = mids.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
        std::swap(mids[i - 1], mids[j]);
    }
    std::vector<Vertex> order{s};
    order.insert(order.end(), mids.begin(), mids.end());
    order.push_back(d);

    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            if (rng.bernoulli(edge_prob)) g.add_edge(order[a], order[b], draw());
        }
    }
    if (mids.size() >= 2) {
        const auto last = static_cast<std::int64_t>(mids.size()) - 1;
        for (std::size_t k = 0; k < back_edge_budget; ++k) {
            auto x = static_cast<std::size_t>(rng.uniform(0, last));
            auto y = static_cast<std::size_t>(rng.uniform(0, last));
            if (x == y) continue;
            // mids is in topological order: the later one points back
            Vertex from = mids[std::max(x, y)];
            Vertex to = mids[std::min(x, y)];
            if (g.has_edge(from, to)) continue;
            g.add_edge(from, to, draw());
        }
    }
    return g;
}

/// Two-route diamond: A = S-a-D with capacities (2c, 2c), B = S-b-D with
/// (2c - delta, M). A is the FD-best route; B the HD-best once delta is small
/// and M large.
inline Digraph gen_fd_hd_gap(const Capacity& c, const Capacity& delta, const Capacity& m) {
    for (const Capacity* x : {&c, &delta, &m}) {
        if (!x->is_finite() || !x->is_positive()) throw ValidationError("gap parameters must be positive and finite");
    }
    const Capacity two_c = scaled(c, Rational(2));
    if (!(delta < two_c)) throw ValidationError("gap generator needs delta < 2c");
    Digraph g;
    Vertex s = g.add_vertex("S");
    Vertex a = g.add_vertex("a");
    Vertex b = g.add_vertex("b");
    Vertex d = g.add_vertex("D");
    g.add_edge(s, a, two_c);
    g.add_edge(a, d, two_c);
    g.add_edge(s, b, Capacity(two_c.value() - delta.value()));
    g.add_edge(b, d, m);
    g.set_source(s);
    g.set_destination(d);
    return g;
}

enum class GenKind { Layered, Random, Gap };

struct GenSpec {
    GenKind kind = GenKind::Layered;
    // layered
    std::size_t layers = 1;
    std::size_t width = 1;
    // random
    std::size_t vertices = 2;
    double edge_prob = 0.3;
    std::size_t back_edge_budget = 0;
    // gap
    Capacity gap_c = Capacity(10);
    Capacity gap_delta = Capacity(1);
    Capacity gap_m = Capacity(1'000'000);

    CapRange caps;
    std::uint64_t seed = 0;
};

inline Digraph generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenKind::Layered: return gen_layered(spec.layers, spec.width, spec.caps, spec.seed);
        case GenKind::Random:
            return gen_random_digraph(spec.vertices, spec.edge_prob, spec.back_edge_budget, spec.caps, spec.seed);
        case GenKind::Gap: return gen_fd_hd_gap(spec.gap_c, spec.gap_delta, spec.gap_m);
    }
    throw ValidationError("unknown generator kind");
}

}  // namespace hdroute
