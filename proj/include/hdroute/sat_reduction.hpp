#pragma once

// Polynomial reduction from 3SAT to the HD-Path decision problem, built in
// four graph stages:
//
//   G_B   one gadget t_i -> {v_i1, v_i2, v_i3} -> r_i per clause, chained
//         S -> t_1 ... r_m -> D. Literal vertices of complementary literals
//         in different clauses form the forbidden pairs F.
//   G_B°  each literal vertex in k forbidden pairs becomes a k-vertex chain
//         v_{ij,kl} (one per partner), so every vertex is in at most one pair.
//   G_B*  each chain vertex v_{ij,kl} becomes a_{ij,kl} - v_{ij,kl} - b_{ij,kl}.
//   G_B•  each pair (v_{ij,kl}, v_{kl,ij}), i < k, merges into f_{ij,kl};
//         edges get capacity 3Z except a_{ij,kl} -> f and f -> b_{kl,ij},
//         which get 1.5Z.
//
// A simple S-D path of HD capacity >= Z in G_B• exists iff B is satisfiable.
//
// Vertex names: S, D, t<i>, r<i>, v<i>.<j>, v<i>.<j>,<k>.<l> (and the a/b/f
// variants), with 1-based clause index i and literal position j.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdroute/capacity.hpp"
#include "hdroute/capacity_metrics.hpp"
#include "hdroute/digraph.hpp"
#include "hdroute/error.hpp"

namespace hdroute {

// ---------------------------------------------------------------------------
// 3-CNF formulas

struct Literal {
    int var = 1;  // 1-based
    bool positive = true;

    int dimacs() const noexcept { return positive ? var : -var; }
    Literal negated() const noexcept { return {var, !positive}; }
    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

struct SatInstance {
    int variables = 0;
    std::vector<Clause> clauses;
};

/// Reads DIMACS CNF ("p cnf n m", 0-terminated clauses, 'c' comments).
/// Every clause must have exactly three literals.
inline SatInstance parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<std::pair<long, long>> header;
    SatInstance inst;
    std::vector<Literal> pending;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "%") break;
        if (tok == "p") {
            std::string fmt;
            long n = -1, m = -1;
            if (header || !(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) {
                throw ParseError("malformed DIMACS header: '" + line + "'");
            }
            std::string extra;
            if (ls >> extra) throw ParseError("malformed DIMACS header: '" + line + "'");
            header = {n, m};
            inst.variables = static_cast<int>(n);
            continue;
        }
        if (!header) throw ParseError("clause before DIMACS header");
        do {
            char* end = nullptr;
            long lit = std::strtol(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0') throw ParseError("invalid literal '" + tok + "'");
            if (lit == 0) {
                if (pending.size() != 3) {
                    throw ParseError("not 3-CNF: clause " + std::to_string(inst.clauses.size() + 1) + " has " +
                                     std::to_string(pending.size()) + " literals");
                }
                inst.clauses.push_back({pending[0], pending[1], pending[2]});
                pending.clear();
                continue;
            }
            long var = lit < 0 ? -lit : lit;
            if (var > header->first) {
                throw ParseError("variable index " + std::to_string(var) + " out of range");
            }
            pending.push_back({static_cast<int>(var), lit > 0});
        } while (ls >> tok);
    }
    if (!header) throw ParseError("missing DIMACS header");
    if (!pending.empty()) throw ParseError("unterminated clause");
    if (static_cast<long>(inst.clauses.size()) != header->second) {
        throw ParseError("clause count mismatch: header says " + std::to_string(header->second) + ", found " +
                         std::to_string(inst.clauses.size()));
    }
    return inst;
}

inline std::string to_dimacs(const SatInstance& inst) {
    std::string out = "p cnf " + std::to_string(inst.variables) + " " + std::to_string(inst.clauses.size()) + "\n";
    for (const Clause& c : inst.clauses) {
        for (const Literal& l : c) out += std::to_string(l.dimacs()) + " ";
        out += "0\n";
    }
    return out;
}

/// assignment[k] is the value of x_k; index 0 is unused.
using Assignment = std::vector<bool>;

inline bool literal_true(const Literal& l, const Assignment& a) { return a.at(l.var) == l.positive; }

inline bool satisfies(const SatInstance& inst, const Assignment& a) {
    return std::all_of(inst.clauses.begin(), inst.clauses.end(), [&](const Clause& c) {
        return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return literal_true(l, a); });
    });
}

struct SatVerdict {
    bool satisfiable = false;
    /// First satisfying assignment in counting order (x_1 is the low bit).
    std::optional<Assignment> witness;
};

inline SatVerdict brute_force_sat(const SatInstance& inst, int max_variables = 24) {
    if (inst.variables > max_variables) {
        throw LimitExceeded("brute-force SAT limited to " + std::to_string(max_variables) + " variables");
    }
    const std::uint64_t total = std::uint64_t{1} << inst.variables;
    Assignment a(static_cast<std::size_t>(inst.variables) + 1, false);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (int k = 1; k <= inst.variables; ++k) a[static_cast<std::size_t>(k)] = (bits >> (k - 1)) & 1U;
        if (satisfies(inst, a)) return {true, a};
    }
    return {false, std::nullopt};
}

// ---------------------------------------------------------------------------
// Reduction stages

/// Clause index i and literal position j, both 1-based.
struct LiteralRef {
    int clause = 1;
    int position = 1;
    friend auto operator<=>(const LiteralRef&, const LiteralRef&) = default;
};

inline std::string ref_text(const LiteralRef& r) { return std::to_string(r.clause) + "." + std::to_string(r.position); }

/// Unordered pair of vertices that a path may not both visit. `first` belongs
/// to the earlier clause.
struct ForbiddenPair {
    std::string first;
    std::string second;
    LiteralRef first_literal;
    LiteralRef second_literal;
    friend bool operator==(const ForbiddenPair&, const ForbiddenPair&) = default;
};

enum class Role { Source, Destination, T, R, Literal, AType, BType, FType };

inline std::string_view role_name(Role r) {
    switch (r) {
        case Role::Source: return "source";
        case Role::Destination: return "destination";
        case Role::T: return "t";
        case Role::R: return "r";
        case Role::Literal: return "literal";
        case Role::AType: return "a-type";
        case Role::BType: return "b-type";
        case Role::FType: return "f-type";
    }
    return "?";
}

/// Where a vertex of a reduction graph came from. `stage` is the stage that
/// introduced it: "gb", "gb_circ", "gb_star" or "gb_bullet".
struct VertexInfo {
    std::string stage;
    Role role = Role::T;
    std::optional<LiteralRef> literal;  // clause/position for literal, a, b, f (f: the earlier clause)
    std::optional<int> dimacs;          // signed literal for literal-derived vertices
    std::optional<LiteralRef> partner;  // the complementary literal for chain/a/b/f vertices
};

using Provenance = std::map<std::string, VertexInfo>;

/// A stage graph with its forbidden pairs. Stage graphs before G_B• are
/// uncapacitated; their edges carry capacity 1 as a placeholder.
struct GadgetGraph {
    Digraph graph;
    std::vector<ForbiddenPair> forbidden;
    Provenance provenance;
    /// Number of clauses of the source formula.
    int clauses = 0;
};

namespace detail {

inline std::string literal_vertex(const LiteralRef& r) { return "v" + ref_text(r); }
inline std::string chain_suffix(const LiteralRef& self, const LiteralRef& partner) {
    return ref_text(self) + "," + ref_text(partner);
}

/// Copies g with selected vertices replaced by directed chains of new
/// vertices. Edges into a replaced vertex enter the chain's first vertex;
/// edges out of it leave from the last one. Vertex order is preserved with
/// each chain spliced in place.
inline Digraph splice_chains(const Digraph& g, const std::map<Vertex, std::vector<std::string>>& chains) {
    Digraph out;
    std::vector<Vertex> entry(g.vertex_count()), exit(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto it = chains.find(v);
        if (it == chains.end()) {
            entry[v] = exit[v] = out.add_vertex(g.name(v));
            continue;
        }
        Vertex prev = 0;
        for (std::size_t k = 0; k < it->second.size(); ++k) {
            Vertex nv = out.add_vertex(it->second[k]);
            if (k == 0) entry[v] = nv;
            else out.add_edge(prev, nv, Capacity(1));
            prev = nv;
        }
        exit[v] = prev;
    }
    for (const Edge& e : g.edges()) out.add_edge(exit[e.tail], entry[e.head], e.cap);
    if (g.source_opt()) out.set_source(entry[g.source()]);
    if (g.destination_opt()) out.set_destination(exit[g.destination()]);
    return out;
}

}  // namespace detail

/// Stage 1: clause gadgets and the forbidden pairs F (complementary literals
/// in different clauses; same-clause complements and repeats are ignored).
inline GadgetGraph build_gb(const SatInstance& inst) {
    if (inst.clauses.empty()) throw ValidationError("reduction needs at least one clause");
    GadgetGraph out;
    out.clauses = static_cast<int>(inst.clauses.size());
    Digraph& g = out.graph;
    const Capacity unit(1);

    Vertex s = g.add_vertex("S");
    out.provenance["S"] = {"gb", Role::Source, std::nullopt, std::nullopt, std::nullopt};
    std::optional<Vertex> prev_r;
    for (int i = 1; i <= out.clauses; ++i) {
        std::string t_name = "t" + std::to_string(i);
        std::string r_name = "r" + std::to_string(i);
        Vertex t = g.add_vertex(t_name);
        out.provenance[t_name] = {"gb", Role::T, LiteralRef{i, 0}, std::nullopt, std::nullopt};
        std::array<Vertex, 3> lits{};
        for (int j = 1; j <= 3; ++j) {
            LiteralRef ref{i, j};
            std::string name = detail::literal_vertex(ref);
            lits[static_cast<std::size_t>(j - 1)] = g.add_vertex(name);
            out.provenance[name] = {"gb", Role::Literal, ref,
                                    inst.clauses[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)].dimacs(),
                                    std::nullopt};
        }
        Vertex r = g.add_vertex(r_name);
        out.provenance[r_name] = {"gb", Role::R, LiteralRef{i, 0}, std::nullopt, std::nullopt};
        for (Vertex v : lits) {
            g.add_edge(t, v, unit);
            g.add_edge(v, r, unit);
        }
        g.add_edge(prev_r ? *prev_r : s, t, unit);
        prev_r = r;
    }
    Vertex d = g.add_vertex("D");
    out.provenance["D"] = {"gb", Role::Destination, std::nullopt, std::nullopt, std::nullopt};
    g.add_edge(*prev_r, d, unit);
    g.set_source(s);
    g.set_destination(d);

    for (int i = 1; i <= out.clauses; ++i) {
        for (int k = i + 1; k <= out.clauses; ++k) {
            for (int j = 1; j <= 3; ++j) {
                for (int l = 1; l <= 3; ++l) {
                    const Literal& p = inst.clauses[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                    const Literal& q = inst.clauses[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)];
                    if (p == q.negated()) {
                        LiteralRef a{i, j}, b{k, l};
                        out.forbidden.push_back({detail::literal_vertex(a), detail::literal_vertex(b), a, b});
                    }
                }
            }
        }
    }
    return out;
}

/// Stage 2a (G_B°): split each literal vertex into one chain vertex per
/// forbidden partner, ordered by ascending partner (clause, position).
inline GadgetGraph build_gb_circ(const GadgetGraph& gb) {
    std::map<LiteralRef, std::vector<LiteralRef>> partners;
    for (const ForbiddenPair& p : gb.forbidden) {
        partners[p.first_literal].push_back(p.second_literal);
        partners[p.second_literal].push_back(p.first_literal);
    }
    GadgetGraph out;
    out.clauses = gb.clauses;
    out.provenance = gb.provenance;
    std::map<Vertex, std::vector<std::string>> chains;
    for (auto& [self, list] : partners) {
        std::sort(list.begin(), list.end());
        std::string old_name = detail::literal_vertex(self);
        const VertexInfo old_info = gb.provenance.at(old_name);
        out.provenance.erase(old_name);
        auto& chain = chains[gb.graph.at(old_name)];
        for (const LiteralRef& partner : list) {
            std::string name = "v" + detail::chain_suffix(self, partner);
            chain.push_back(name);
            out.provenance[name] = {"gb_circ", Role::Literal, self, old_info.dimacs, partner};
        }
    }
    out.graph = detail::splice_chains(gb.graph, chains);
    for (const ForbiddenPair& p : gb.forbidden) {
        out.forbidden.push_back({"v" + detail::chain_suffix(p.first_literal, p.second_literal),
                                 "v" + detail::chain_suffix(p.second_literal, p.first_literal), p.first_literal,
                                 p.second_literal});
    }
    return out;
}

/// Stage 2 (G_B*): G_B° with every forbidden-pair member wrapped as a - v - b.
/// F* equals F°, so every vertex lies in at most one pair.
inline GadgetGraph build_gb_star(const GadgetGraph& gb) {
    GadgetGraph circ = build_gb_circ(gb);
    GadgetGraph out;
    out.clauses = circ.clauses;
    out.provenance = circ.provenance;
    out.forbidden = circ.forbidden;
    std::map<Vertex, std::vector<std::string>> chains;
    auto wrap = [&](const std::string& name) {
        std::string suffix = name.substr(1);
        const VertexInfo& info = circ.provenance.at(name);
        chains[circ.graph.at(name)] = {"a" + suffix, name, "b" + suffix};
        out.provenance["a" + suffix] = {"gb_star", Role::AType, info.literal, info.dimacs, info.partner};
        out.provenance["b" + suffix] = {"gb_star", Role::BType, info.literal, info.dimacs, info.partner};
    };
    for (const ForbiddenPair& p : circ.forbidden) {
        wrap(p.first);
        wrap(p.second);
    }
    out.graph = detail::splice_chains(circ.graph, chains);
    return out;
}

/// The four edges around one f-type vertex f_{ij,kl} (i < k).
struct FGadget {
    std::string f;
    std::string a_first;   // a_{ij,kl}; edge a_first -> f is g1 (1.5Z)
    std::string a_second;  // a_{kl,ij}; edge a_second -> f is g2 (3Z)
    std::string b_first;   // b_{ij,kl}; edge f -> b_first is h1 (3Z)
    std::string b_second;  // b_{kl,ij}; edge f -> b_second is h2 (1.5Z)
};

struct ReductionInstance {
    Digraph graph;
    Capacity threshold;
    Provenance provenance;
    std::vector<ForbiddenPair> forbidden;       // F (stage 1)
    std::vector<ForbiddenPair> forbidden_star;  // F* (stage 2)
    std::vector<FGadget> f_gadgets;
    /// Vertex names a path walks through when it takes literal (i, j):
    /// literal_routes[i-1][j-1], excluding t_i and r_i.
    std::vector<std::array<std::vector<std::string>, 3>> literal_routes;
};

/// Stages 3 and 4 (G_B•): merge each F* pair into an f-type vertex and
/// assign capacities 3Z / 1.5Z.
inline ReductionInstance build_gb_bullet(const GadgetGraph& gstar, const Capacity& z) {
    if (!z.is_finite() || !z.is_positive()) throw ValidationError("threshold must be positive and finite");
    const Capacity three_z = scaled(z, Rational(3));
    const Capacity one_and_half_z = scaled(z, Rational(3, 2));

    ReductionInstance out;
    out.threshold = z;
    out.forbidden_star = gstar.forbidden;
    out.provenance = gstar.provenance;

    const Digraph& g = gstar.graph;
    std::vector<std::optional<std::string>> merged_into(g.vertex_count());
    for (const ForbiddenPair& p : gstar.forbidden) {
        std::string f = "f" + p.first.substr(1);
        merged_into[g.at(p.first)] = f;
        merged_into[g.at(p.second)] = f;
        const VertexInfo& info = gstar.provenance.at(p.first);
        out.provenance.erase(p.first);
        out.provenance.erase(p.second);
        out.provenance[f] = {"gb_bullet", Role::FType, p.first_literal, info.dimacs, p.second_literal};
        out.f_gadgets.push_back({f, "a" + p.first.substr(1), "a" + p.second.substr(1), "b" + p.first.substr(1),
                                 "b" + p.second.substr(1)});
    }

    Digraph& h = out.graph;
    std::vector<Vertex> image(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (merged_into[v]) {
            auto existing = h.find(*merged_into[v]);
            image[v] = existing ? *existing : h.add_vertex(*merged_into[v]);
        } else {
            image[v] = h.add_vertex(g.name(v));
        }
    }
    // g1 = a_{ij,kl} -> f and h2 = f -> b_{kl,ij} carry 1.5Z; all else 3Z
    std::set<std::pair<std::string, std::string>> reduced;
    for (const FGadget& fg : out.f_gadgets) {
        reduced.emplace(fg.a_first, fg.f);
        reduced.emplace(fg.f, fg.b_second);
    }
    for (const Edge& e : g.edges()) {
        Vertex u = image[e.tail], w = image[e.head];
        bool low = reduced.contains({h.name(u), h.name(w)});
        h.add_edge(u, w, low ? one_and_half_z : three_z);
    }
    h.set_source(image[g.source()]);
    h.set_destination(image[g.destination()]);

    // literal routes: walk each literal's chain in G_B*, mapping merged vertices
    out.literal_routes.resize(static_cast<std::size_t>(gstar.clauses));
    for (int i = 1; i <= gstar.clauses; ++i) {
        Vertex t = g.at("t" + std::to_string(i));
        Vertex r = g.at("r" + std::to_string(i));
        for (const Arc& first : g.out_arcs(t)) {
            const VertexInfo& info = gstar.provenance.at(g.name(first.head));
            std::vector<std::string> route;
            for (Vertex v = first.head; v != r;) {
                route.push_back(h.name(image[v]));
                const auto& arcs = g.out_arcs(v);
                if (arcs.size() != 1) throw Error("internal: literal chain branches");
                v = arcs.front().head;
            }
            out.literal_routes[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(info.literal->position - 1)] =
                std::move(route);
        }
    }
    return out;
}

/// Full pipeline: formula -> G_B• with threshold z.
inline ReductionInstance reduce(const SatInstance& inst, const Capacity& z) {
    GadgetGraph gb = build_gb(inst);
    ReductionInstance out = build_gb_bullet(build_gb_star(gb), z);
    out.forbidden = gb.forbidden;
    return out;
}

class CertificateError : public Error {
public:
    using Error::Error;
};

/// Reads a satisfying assignment off a simple S-D path whose HD capacity is at
/// least the threshold: the literal whose gadget the path crosses in each
/// clause is made true; untouched variables default to false.
inline Assignment extract_assignment(const SatInstance& inst, const ReductionInstance& red, const Path& path) {
    const Digraph& g = red.graph;
    if (path.vertices.empty() || path.vertices.front() != g.source() || path.vertices.back() != g.destination()) {
        throw CertificateError("certificate is not a source-destination path");
    }
    if (!is_simple_path(g, path)) throw CertificateError("certificate path is not simple");
    if (hd_path_capacity(g, path) < red.threshold) throw CertificateError("certificate path is below the threshold");

    std::vector<int> chosen(inst.clauses.size(), 0);
    for (Vertex v : path.vertices) {
        const VertexInfo& info = red.provenance.at(g.name(v));
        if (info.role != Role::Literal && info.role != Role::AType && info.role != Role::BType) continue;
        auto& slot = chosen.at(static_cast<std::size_t>(info.literal->clause - 1));
        if (slot != 0 && slot != info.literal->position) {
            throw CertificateError("path takes two literals of clause " + std::to_string(info.literal->clause));
        }
        slot = info.literal->position;
    }
    Assignment a(static_cast<std::size_t>(inst.variables) + 1, false);
    std::vector<char> fixed(a.size(), 0);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (chosen[i] == 0) throw CertificateError("path skips clause " + std::to_string(i + 1));
        const Literal& lit = inst.clauses[i][static_cast<std::size_t>(chosen[i] - 1)];
        auto var = static_cast<std::size_t>(lit.var);
        if (fixed[var] && a[var] != lit.positive) {
            throw CertificateError("path makes x" + std::to_string(lit.var) + " both true and false");
        }
        a[var] = lit.positive;
        fixed[var] = 1;
    }
    if (!satisfies(inst, a)) throw CertificateError("extracted assignment does not satisfy the formula");
    return a;
}

/// Inverse certifier: routes through the first true literal of each clause.
inline Path path_from_assignment(const SatInstance& inst, const ReductionInstance& red, const Assignment& a) {
    if (!satisfies(inst, a)) throw CertificateError("assignment does not satisfy the formula");
    std::vector<std::string> names{"S"};
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        names.push_back("t" + std::to_string(i + 1));
        std::size_t j = 0;
        while (!literal_true(inst.clauses[i][j], a)) ++j;
        const auto& route = red.literal_routes[i][j];
        names.insert(names.end(), route.begin(), route.end());
        names.push_back("r" + std::to_string(i + 1));
    }
    names.emplace_back("D");
    return red.graph.path_of(names);
}

}  // namespace hdroute
