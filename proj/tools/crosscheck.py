#!/usr/bin/env python3
"""Runs the hdroute executable and reference_impl.py on the same inputs and
compares standard output byte for byte. Also checks that two runs of the
executable agree.

    crosscheck.py HDROUTE [--instances N]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
REFERENCE = os.path.join(HERE, "reference_impl.py")


def run(cmd):
    p = subprocess.run(cmd, capture_output=True, timeout=120)
    return p.returncode, p.stdout


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("hdroute")
    ap.add_argument("--instances", type=int, default=40)
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()
    rnd = random.Random(args.seed)
    failures = 0
    checked = 0

    with tempfile.TemporaryDirectory() as tmp:
        def check(sub, path, *extra):
            nonlocal failures, checked
            a = run([args.hdroute, sub, path, *extra])
            b = run([args.hdroute, sub, path, *extra])
            ref = run([sys.executable, REFERENCE, sub, path, *extra])
            checked += 1
            if a != b:
                failures += 1
                print(f"NONDETERMINISTIC {sub} {path}")
            elif a != ref:
                failures += 1
                print(f"MISMATCH {sub} {path} {' '.join(extra)} (exit {a[0]} vs {ref[0]})")
            return a

        specs = []
        for k in range(args.instances):
            if k % 4 == 0:
                specs.append({"kind": "layered", "layers": rnd.randint(1, 4), "width": rnd.randint(1, 4),
                              "cap_range": [1, rnd.choice([5, 100])], "seed": rnd.randrange(1 << 40)})
            else:
                specs.append({"kind": "random", "vertices": rnd.randint(3, 8),
                              "edge_prob": rnd.choice([0.2, 0.35, 0.5]), "back_edge_budget": rnd.randint(0, 4),
                              "cap_range": [1, rnd.choice([4, 100])], "seed": rnd.randrange(1 << 40)})
        specs.append({"kind": "gap", "c": "10/1", "delta": "1/1", "M": "1000000/1"})

        for k, spec in enumerate(specs):
            spec_path = os.path.join(tmp, f"spec{k}.json")
            with open(spec_path, "w") as fh:
                json.dump(spec, fh)
            _, graph = check("gen", spec_path)
            graph_path = os.path.join(tmp, f"graph{k}.json")
            with open(graph_path, "wb") as fh:
                fh.write(graph)
            check("route", graph_path)
            check("route", graph_path, "--trace")
            check("oracle", graph_path)

        for k in range(args.instances // 2):
            n = rnd.randint(1, 5)
            m = rnd.randint(1, 5)
            lines = [f"p cnf {n} {m}"]
            for _ in range(m):
                lits = [rnd.choice([-1, 1]) * rnd.randint(1, n) for _ in range(3)]
                lines.append(" ".join(map(str, lits)) + " 0")
            cnf = os.path.join(tmp, f"f{k}.cnf")
            with open(cnf, "w") as fh:
                fh.write("\n".join(lines) + "\n")
            _, reduced = check("reduce", cnf, "--z", rnd.choice(["2", "3/2", "0.5"]))
            red_path = os.path.join(tmp, f"red{k}.json")
            with open(red_path, "wb") as fh:
                fh.write(reduced)
            if m <= 3:
                check("route", red_path, "--trace")

    print(f"{checked - failures}/{checked} outputs identical")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
