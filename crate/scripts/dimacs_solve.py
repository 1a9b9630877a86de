#!/usr/bin/env python3
"""Solve a DIMACS CNF file with PicoSAT (pycosat) and print s/v lines."""
import sys

import pycosat


def read_cnf(path):
    clauses, current = [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line[0] in "cp%":
                continue
            for tok in line.split():
                lit = int(tok)
                if lit == 0:
                    clauses.append(current)
                    current = []
                else:
                    current.append(lit)
    if current:
        clauses.append(current)
    return clauses


def main():
    if len(sys.argv) != 2:
        sys.exit("usage: dimacs_solve.py FILE.cnf")
    result = pycosat.solve(read_cnf(sys.argv[1]))
    if result == "UNSAT":
        print("s UNSATISFIABLE")
        return 20
    if result == "UNKNOWN":
        print("s UNKNOWN")
        return 0
    print("s SATISFIABLE")
    print("v " + " ".join(str(l) for l in result) + " 0")
    return 10


if __name__ == "__main__":
    sys.exit(main())
