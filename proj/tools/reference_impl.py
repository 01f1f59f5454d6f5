#!/usr/bin/env python3
"""Second implementation of the hdroute commands route, oracle, gen and reduce.

Written from the behavioural rules alone (exact rationals, lexicographic
vertex-name tie-breaking, SplitMix64 draw order) and used to cross-check the
C++ tool byte for byte.

    reference_impl.py route GRAPH [--trace]
    reference_impl.py oracle GRAPH
    reference_impl.py gen GENSPEC [--seed N]
    reference_impl.py reduce CNF [--z Z]
"""

import argparse
import heapq
import json
import math
import sys
from fractions import Fraction

INF = math.inf
MASK = (1 << 64) - 1


# ---------------------------------------------------------------------------
# capacities

def parse_cap(value):
    if isinstance(value, bool):
        raise ValueError("capacity must be a string or number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    text = value.strip()
    if text == "inf":
        return INF
    return Fraction(text)


def frac(c):
    if c == INF:
        return "inf"
    return f"{c.numerator}/{c.denominator}"


def decimal(c, places=6):
    if c == INF:
        return "inf"
    p, q = c.numerator, c.denominator
    scale = 10 ** places
    v = (2 * p * scale + q) // (2 * q)
    return f"{v // scale}.{v % scale:0{places}d}"


def half_harmonic(a, b):
    if a == INF:
        return b
    if b == INF:
        return a
    return a * b / (a + b)


# ---------------------------------------------------------------------------
# graphs: vertices in insertion order, out/in lists in insertion order

class Graph:
    def __init__(self):
        self.names = []
        self.index = {}
        self.out = []
        self.inn = []
        self.source = None
        self.destination = None

    def add_vertex(self, name):
        self.index[name] = len(self.names)
        self.names.append(name)
        self.out.append([])
        self.inn.append([])
        return len(self.names) - 1

    def add_edge(self, u, v, cap):
        self.out[u].append([v, cap])
        self.inn[v].append([u, cap])

    def remove_edge(self, u, v):
        self.out[u] = [a for a in self.out[u] if a[0] != v]
        self.inn[v] = [a for a in self.inn[v] if a[0] != u]

    def cap(self, u, v):
        for h, c in self.out[u]:
            if h == v:
                return c
        return None

    def copy(self):
        g = Graph()
        g.names = list(self.names)
        g.index = dict(self.index)
        g.out = [[list(a) for a in arcs] for arcs in self.out]
        g.inn = [[list(a) for a in arcs] for arcs in self.inn]
        g.source, g.destination = self.source, self.destination
        return g

    def edges(self):
        for u, arcs in enumerate(self.out):
            for h, c in arcs:
                yield u, h, c


def load_graph(doc):
    g = Graph()
    for n in doc["nodes"]:
        g.add_vertex(str(n))
    for e in doc["edges"]:
        g.add_edge(g.index[str(e["from"])], g.index[str(e["to"])], parse_cap(e["cap"]))
    g.source = g.index[str(doc["source"])]
    g.destination = g.index[str(doc["destination"])]
    return g


def graph_doc(g):
    return {
        "nodes": list(g.names),
        "edges": [{"from": g.names[u], "to": g.names[v], "cap": frac(c)} for u, v, c in g.edges()],
        "source": g.names[g.source],
        "destination": g.names[g.destination],
    }


def hd_capacity(g, path):
    caps = [g.cap(path[i], path[i + 1]) for i in range(len(path) - 1)]
    if len(caps) == 1:
        return caps[0]
    return min(half_harmonic(caps[i], caps[i + 1]) for i in range(len(caps) - 1))


# ---------------------------------------------------------------------------
# oracle

def simple_paths(g):
    """Depth-first, neighbours by name: paths come out in lexicographic order."""
    nbrs = [sorted((h for h, _ in arcs), key=lambda v: g.names[v]) for arcs in g.out]
    path = [g.source]
    on = {g.source}

    def walk(u):
        if u == g.destination:
            yield list(path)
            return
        for w in nbrs[u]:
            if w in on:
                continue
            path.append(w)
            on.add(w)
            yield from walk(w)
            on.discard(w)
            path.pop()

    yield from walk(g.source)


def cmd_oracle(doc):
    g = load_graph(doc)
    best, count = None, 0
    for p in simple_paths(g):
        count += 1
        c = hd_capacity(g, p)
        if best is None or best[1] < c:
            best = (p, c)
    if best is None:
        return {"error": "no path"}, 3
    return {
        "path": [g.names[v] for v in best[0]],
        "hd_capacity": frac(best[1]),
        "hd_capacity_decimal": decimal(best[1]),
        "simple_paths": count,
    }, 0


# ---------------------------------------------------------------------------
# router: widest chordless path on the line digraph

class Tree:
    def __init__(self, n, root):
        self.root = root
        self.parent = [None] * n
        self.achieved = [None] * n
        self.order = []


def max_min_search(g, tree, expanded, seeds):
    n = len(g.names)
    tentative = [None] * n
    tparent = [None] * n
    heap = []

    def offer(v, cap, frm):
        if expanded[v]:
            return
        if tentative[v] is not None and not tentative[v] < cap:
            return
        tentative[v] = cap
        tparent[v] = frm
        heapq.heappush(heap, (-cap, g.names[v], v, cap))

    for v, cap, frm in seeds:
        offer(v, cap, frm)
    while heap:
        _, _, v, cap = heapq.heappop(heap)
        if expanded[v] or tentative[v] != cap:
            continue
        expanded[v] = True
        tree.achieved[v] = cap
        tree.parent[v] = tparent[v]
        tree.order.append(v)
        for h, c in g.out[v]:
            if not expanded[h]:
                offer(h, min(cap, c), v)


def widest_tree(g, root):
    tree = Tree(len(g.names), root)
    max_min_search(g, tree, [False] * len(g.names), [(root, INF, None)])
    return tree


def resume_tree(g, prev, redo):
    n = len(g.names)
    redo_set = set(redo)
    tree = Tree(n, prev.root)
    for v in range(n):
        if v not in redo_set:
            tree.parent[v] = prev.parent[v]
            tree.achieved[v] = prev.achieved[v]
    rank = {}
    for v in prev.order:
        if v not in redo_set:
            rank[v] = len(tree.order)
            tree.order.append(v)
    seeds = []
    for v in sorted(redo_set):
        best = None
        for u, c in g.inn[v]:
            if u in redo_set or tree.achieved[u] is None:
                continue
            cand = min(tree.achieved[u], c)
            if best is None or best[0] < cand or (best[0] == cand and rank[u] < rank[best[1]]):
                best = (cand, u)
        if best is not None:
            seeds.append((v, best[0], best[1]))
    max_min_search(g, tree, [v not in redo_set for v in range(n)], seeds)
    return tree


def tree_path(tree, v):
    if tree.achieved[v] is None:
        return None
    p = []
    while v is not None:
        p.append(v)
        v = tree.parent[v]
    return p[::-1]


def first_chord(g, path):
    """(tail, head, earlier, later, forward): earliest later endpoint, then
    latest earlier endpoint, then edge names."""
    positions = {}
    best = None

    def key(ch):
        return (ch[3], -ch[2], g.names[ch[0]], g.names[ch[1]])

    for j, w in enumerate(path):
        cands = []
        for u, _ in g.inn[w]:
            cands += [(u, w, p, j, True) for p in positions.get(u, []) if p + 2 <= j]
        for h, _ in g.out[w]:
            cands += [(w, h, p, j, False) for p in positions.get(h, []) if p + 2 <= j]
        if cands:
            return min(cands, key=key)
        positions.setdefault(w, []).append(j)
    return best


def augment(g):
    out = g.copy()

    def fresh(base):
        name = base + "'"
        while name in out.index:
            name += "'"
        return name

    sp = out.add_vertex(fresh(g.names[g.source]))
    dp = out.add_vertex(fresh(g.names[g.destination]))
    out.add_edge(sp, g.source, INF)
    out.add_edge(g.destination, dp, INF)
    out.source, out.destination = sp, dp
    return out


def line_digraph(aug):
    line = Graph()
    origin = []
    by_tail = [[] for _ in aug.names]
    for u in range(len(aug.names)):
        for h, _ in aug.out[u]:
            lv = line.add_vertex(aug.names[u] + "|" + aug.names[h])
            origin.append((u, h))
            by_tail[u].append((h, lv))
    for lv, (i, j) in enumerate(origin):
        first = aug.cap(i, j)
        for k, nxt in by_tail[j]:
            line.add_edge(lv, nxt, half_harmonic(first, aug.cap(j, k)))
    s, d = aug.source, aug.destination
    line.source = dict(by_tail[s])[aug.out[s][0][0]]
    line.destination = dict(by_tail[aug.inn[d][0][0]])[d]
    return line, origin


def cmd_route(doc, trace):
    g = load_graph(doc)
    line0, lorigin = line_digraph(augment(g))
    line = line0.copy()
    origin = list(range(len(line.names)))
    tree = widest_tree(line, line.source)
    records = []
    iteration = 0
    while True:
        path = tree_path(tree, line.destination)
        if path is None:
            return {"error": "no path"}, 3
        projected = [origin[v] for v in path]
        chord = first_chord(line0, projected)
        if chord is None:
            break
        _, _, lo, hi, forward = chord
        tag = iteration + 1
        before = tree.achieved[line.destination]
        span = path[lo:hi + 1]
        replicas = []
        for v in span[1:-1]:
            base = line0.names[origin[v]] + "#" + str(tag)
            name, k = base, 1
            while name in line.index:
                name = f"{base}.{k}"
                k += 1
            replicas.append(line.add_vertex(name))
        for j in range(1, len(span) - 2):
            line.add_edge(replicas[j - 1], replicas[j], line.cap(span[j], span[j + 1]))
        in_span = set(span)
        for j in range(1, len(span) - 1):
            for u, c in list(line.inn[span[j]]):
                if u not in in_span:
                    line.add_edge(u, replicas[j - 1], c)
        last = line.cap(span[-2], span[-1])
        line.remove_edge(span[-2], span[-1])
        if replicas:
            line.add_edge(replicas[-1], span[-1], last)
        for j in range(len(replicas)):
            origin.append(origin[path[lo + 1 + j]])
        children = {}
        for v, p in enumerate(tree.parent):
            if p is not None:
                children.setdefault(p, []).append(v)
        redo = set(replicas)
        stack = [span[-1]]
        while stack:
            v = stack.pop()
            redo.add(v)
            stack.extend(children.get(v, []))
        tree.parent += [None] * len(replicas)
        tree.achieved += [None] * len(replicas)
        tree = resume_tree(line, tree, sorted(redo))
        iteration += 1
        if trace:
            t, h = (projected[lo], projected[hi]) if forward else (projected[hi], projected[lo])
            records.append({
                "iteration": iteration,
                "chord": [line0.names[t], line0.names[h]],
                "span_length": len(span),
                "replicas_added": len(replicas),
                "tree_capacity_at_destination": frac(before),
            })
    base = [lorigin[projected[0]][0]] + [lorigin[v][1] for v in projected]
    cap = tree.achieved[line.destination]
    out = {
        "path": [g.names[v] for v in base[1:-1]],
        "hd_capacity": frac(cap),
        "hd_capacity_decimal": decimal(cap),
        "iterations": iteration,
        "replicas": len(line.names) - len(line0.names),
    }
    if trace:
        out["trace"] = records
    return out, 0


# ---------------------------------------------------------------------------
# generators

class SplitMix64:
    def __init__(self, seed, stream=0):
        self.state = (seed + stream * 0xD1B54A32D192ED03) & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def uniform(self, lo, hi):
        r = hi - lo + 1
        threshold = ((1 << 64) - r) % r
        while True:
            x = self.next()
            if x >= threshold:
                return lo + x % r

    def bernoulli(self, p):
        return (self.next() >> 11) * 2.0 ** -53 < p


def gen_layered(layers, width, lo, hi, seed):
    rng = SplitMix64(seed, 1)
    g = Graph()
    s = g.add_vertex("S")
    layer = [[g.add_vertex(f"l{l + 1}_{k + 1}") for k in range(width)] for l in range(layers)]
    d = g.add_vertex("D")
    for v in layer[0]:
        g.add_edge(s, v, Fraction(rng.uniform(lo, hi)))
    for a, b in zip(layer, layer[1:]):
        for u in a:
            for v in b:
                g.add_edge(u, v, Fraction(rng.uniform(lo, hi)))
    for v in layer[-1]:
        g.add_edge(v, d, Fraction(rng.uniform(lo, hi)))
    g.source, g.destination = s, d
    return g


def gen_random(n, p, budget, lo, hi, seed):
    rng = SplitMix64(seed, 0)
    caps = SplitMix64(seed, 1)
    g = Graph()
    s = g.add_vertex("S")
    mids = [g.add_vertex(f"v{i}") for i in range(1, n - 1)]
    d = g.add_vertex("D")
    g.source, g.destination = s, d
    for i in range(len(mids), 1, -1):
        j = rng.uniform(0, i - 1)
        mids[i - 1], mids[j] = mids[j], mids[i - 1]
    order = [s] + mids + [d]
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if rng.bernoulli(p):
                g.add_edge(order[a], order[b], Fraction(caps.uniform(lo, hi)))
    if len(mids) >= 2:
        for _ in range(budget):
            x = rng.uniform(0, len(mids) - 1)
            y = rng.uniform(0, len(mids) - 1)
            if x == y:
                continue
            u, v = mids[max(x, y)], mids[min(x, y)]
            if g.cap(u, v) is not None:
                continue
            g.add_edge(u, v, Fraction(caps.uniform(lo, hi)))
    return g


def gen_gap(c, delta, m):
    g = Graph()
    s, a, b, d = (g.add_vertex(x) for x in ("S", "a", "b", "D"))
    g.add_edge(s, a, 2 * c)
    g.add_edge(a, d, 2 * c)
    g.add_edge(s, b, 2 * c - delta)
    g.add_edge(b, d, m)
    g.source, g.destination = s, d
    return g


def cmd_gen(spec, seed):
    kind = spec["kind"]
    if kind == "gap":
        c, delta, m = (parse_cap(spec[k]) for k in ("c", "delta", "M"))
        doc = graph_doc(gen_gap(c, delta, m))
        doc["genspec"] = {"kind": "gap", "c": frac(c), "delta": frac(delta), "M": frac(m)}
        return doc, 0
    lo, hi = spec["cap_range"]
    seed = spec["seed"] if seed is None else seed
    if kind == "layered":
        g = gen_layered(spec["layers"], spec["width"], lo, hi, seed)
        gs = {"kind": kind, "layers": spec["layers"], "width": spec["width"]}
    else:
        g = gen_random(spec["vertices"], float(spec["edge_prob"]), spec["back_edge_budget"], lo, hi, seed)
        gs = {"kind": kind, "vertices": spec["vertices"], "edge_prob": float(spec["edge_prob"]),
              "back_edge_budget": spec["back_edge_budget"]}
    gs["cap_range"] = [lo, hi]
    gs["seed"] = seed
    doc = graph_doc(g)
    doc["genspec"] = gs
    return doc, 0


# ---------------------------------------------------------------------------
# 3SAT reduction

def parse_cnf(text):
    clauses, pending, nvars = [], [], None
    for line in text.splitlines():
        toks = line.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "%":
            break
        if toks[0] == "p":
            nvars = int(toks[2])
            continue
        for t in toks:
            lit = int(t)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
    return nvars, clauses


def ref(i, j):
    return f"{i}.{j}"


def splice(g, chains):
    """Replaces vertex v by the chain chains[v]; in-edges hit its head,
    out-edges leave its tail."""
    out = Graph()
    entry, exit_ = {}, {}
    for v, name in enumerate(g.names):
        if v not in chains:
            entry[v] = exit_[v] = out.add_vertex(name)
            continue
        prev = None
        for k, cname in enumerate(chains[v]):
            nv = out.add_vertex(cname)
            if k == 0:
                entry[v] = nv
            else:
                out.add_edge(prev, nv, Fraction(1))
            prev = nv
        exit_[v] = prev
    for u, v, c in g.edges():
        out.add_edge(exit_[u], entry[v], c)
    out.source = entry[g.source]
    out.destination = exit_[g.destination]
    return out


def cmd_reduce(text, z):
    _, clauses = parse_cnf(text)
    m = len(clauses)
    prov = {}
    g = Graph()
    one = Fraction(1)
    s = g.add_vertex("S")
    prov["S"] = {"stage": "gb", "role": "source"}
    prev = s
    for i in range(1, m + 1):
        t = g.add_vertex(f"t{i}")
        prov[f"t{i}"] = {"stage": "gb", "role": "t", "clause": i}
        lits = []
        for j in range(1, 4):
            name = "v" + ref(i, j)
            lits.append(g.add_vertex(name))
            prov[name] = {"stage": "gb", "role": "literal", "clause": i, "position": j, "literal": clauses[i - 1][j - 1]}
        r = g.add_vertex(f"r{i}")
        prov[f"r{i}"] = {"stage": "gb", "role": "r", "clause": i}
        for v in lits:
            g.add_edge(t, v, one)
            g.add_edge(v, r, one)
        g.add_edge(prev, t, one)
        prev = r
    d = g.add_vertex("D")
    prov["D"] = {"stage": "gb", "role": "destination"}
    g.add_edge(prev, d, one)
    g.source, g.destination = s, d

    pairs = []
    for i in range(1, m + 1):
        for k in range(i + 1, m + 1):
            for j in range(1, 4):
                for l in range(1, 4):
                    if clauses[i - 1][j - 1] == -clauses[k - 1][l - 1]:
                        pairs.append(((i, j), (k, l)))

    # one chain vertex per forbidden partner, partners in (clause, position) order
    partners = {}
    for a, b in pairs:
        partners.setdefault(a, []).append(b)
        partners.setdefault(b, []).append(a)
    chains = {}
    for self_ in sorted(partners):
        old = "v" + ref(*self_)
        info = prov.pop(old)
        chain = []
        for p in sorted(partners[self_]):
            name = "v" + ref(*self_) + "," + ref(*p)
            chain.append(name)
            prov[name] = {"stage": "gb_circ", "role": "literal", "clause": self_[0], "position": self_[1],
                          "literal": info["literal"], "partner": ref(*p)}
        chains[g.index[old]] = chain
    circ = splice(g, chains)
    fstar = [("v" + ref(*a) + "," + ref(*b), "v" + ref(*b) + "," + ref(*a)) for a, b in pairs]

    # wrap each pair member as a - v - b
    chains = {}
    for pair in fstar:
        for name in pair:
            suffix = name[1:]
            chains[circ.index[name]] = ["a" + suffix, name, "b" + suffix]
            for kind in ("a", "b"):
                rec = dict(prov[name])
                rec["stage"] = "gb_star"
                rec["role"] = kind + "-type"
                prov[kind + suffix] = rec
    star = splice(circ, chains)

    # merge pairs into f vertices, capacities 3Z / 1.5Z
    merged, low = {}, set()
    for first, second in fstar:
        f = "f" + first[1:]
        merged[star.index[first]] = f
        merged[star.index[second]] = f
        rec = prov.pop(first)
        prov.pop(second)
        prov[f] = {"stage": "gb_bullet", "role": "f-type", "clause": rec["clause"], "position": rec["position"],
                   "literal": rec["literal"], "partner": rec["partner"]}
        low.add(("a" + first[1:], f))
        low.add((f, "b" + second[1:]))
    h = Graph()
    image = {}
    for v, name in enumerate(star.names):
        target = merged.get(v, name)
        image[v] = h.index[target] if target in h.index else h.add_vertex(target)
    for u, v, _ in star.edges():
        a, b = image[u], image[v]
        h.add_edge(a, b, Fraction(3, 2) * z if (h.names[a], h.names[b]) in low else 3 * z)
    h.source, h.destination = image[star.source], image[star.destination]

    doc = graph_doc(h)
    doc["threshold"] = frac(z)
    doc["provenance"] = {name: prov[name] for name in h.names}
    return doc, 0


# ---------------------------------------------------------------------------

def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("route")
    r.add_argument("graph")
    r.add_argument("--trace", action="store_true")
    o = sub.add_parser("oracle")
    o.add_argument("graph")
    gp = sub.add_parser("gen")
    gp.add_argument("genspec")
    gp.add_argument("--seed", type=int)
    rd = sub.add_parser("reduce")
    rd.add_argument("formula")
    rd.add_argument("--z", default="2")
    args = ap.parse_args(argv)

    def read(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()

    if args.cmd == "route":
        doc, code = cmd_route(json.loads(read(args.graph)), args.trace)
    elif args.cmd == "oracle":
        doc, code = cmd_oracle(json.loads(read(args.graph)))
    elif args.cmd == "gen":
        doc, code = cmd_gen(json.loads(read(args.genspec)), args.seed)
    else:
        doc, code = cmd_reduce(read(args.formula), parse_cap(args.z))
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
