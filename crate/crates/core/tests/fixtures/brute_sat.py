#!/usr/bin/env python3
"""Exhaustive DIMACS CNF checker.

With one file argument it behaves like a SAT solver: prints `s SATISFIABLE`
with a `v` line or `s UNSATISFIABLE` and exits 10 or 20. With `--batch DIR`
it prints `<name> SAT|UNSAT` for every *.cnf file in DIR, sorted by name.
"""
import itertools
import os
import sys


def parse(path):
    nvars, clauses, cur = 0, [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line[0] in "c%":
                continue
            if line.startswith("p"):
                nvars = int(line.split()[2])
                continue
            for tok in line.split():
                v = int(tok)
                if v == 0:
                    clauses.append(cur)
                    cur = []
                else:
                    cur.append(v)
    return nvars, clauses


def solve(nvars, clauses):
    for bits in itertools.product((False, True), repeat=nvars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return bits
    return None


def main(argv):
    if argv[1] == "--batch":
        d = argv[2]
        for name in sorted(f for f in os.listdir(d) if f.endswith(".cnf")):
            model = solve(*parse(os.path.join(d, name)))
            print(name, "SAT" if model is not None else "UNSAT")
        return 0
    nvars, clauses = parse(argv[1])
    model = solve(nvars, clauses)
    if model is None:
        print("s UNSATISFIABLE")
        return 20
    print("s SATISFIABLE")
    lits = [str(i + 1 if b else -(i + 1)) for i, b in enumerate(model)]
    print("v " + " ".join(lits) + " 0")
    return 10


if __name__ == "__main__":
    sys.exit(main(sys.argv))
