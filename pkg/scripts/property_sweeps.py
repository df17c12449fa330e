#!/usr/bin/env python3
"""Standalone property sweeps with a fixed seed.

Covers: exhaustive Jacobi and form invariance up to rank four, a seeded
sample of both on E7, commutator consistency of the loop-generator action,
and weight/degree shift checks on random states.  Exit status 1 on any
violation.
"""

import argparse
import itertools
import random
import sys
from fractions import Fraction as Q
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from vkg.liealg import build_realization
from vkg.pbw import LoopGenerator, apply, apply_string, vacuum
from vkg.rootdata import vadd


def jacobi_holds(lr, a, b, c):
    total = {}
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        for i, cv in lr.bracket(y, z):
            for j, cc in lr.bracket(x, i):
                total[j] = total.get(j, Q(0)) + cv * cc
    return not any(total.values())


def invariance_holds(lr, a, b, c):
    lhs = sum((cv * lr.form(i, c) for i, cv in lr.bracket(a, b)), Q(0))
    rhs = sum((cv * lr.form(b, i) for i, cv in lr.bracket(a, c)), Q(0))
    return lhs + rhs == 0


def random_state(lr, rng, k):
    gens = [LoopGenerator(rng.randrange(lr.dim), rng.choice((-1, -1, -2)))
            for _ in range(rng.randint(1, 2))]
    return apply_string(lr, gens, vacuum(lr, k))


def sweep_algebra(lr, rng, samples):
    n = lr.dim
    if n <= 40:
        triples = itertools.product(range(n), repeat=3)
    else:
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(samples))
    checked = 0
    for a, b, c in triples:
        if not jacobi_holds(lr, a, b, c) or not invariance_holds(lr, a, b, c):
            return checked, False
        checked += 1
    return checked, True


def commutator_sweep(lr, rng, k, rounds):
    for _ in range(rounds):
        v = random_state(lr, rng, k)
        if v.is_zero():
            continue
        a, b = rng.randrange(lr.dim), rng.randrange(lr.dim)
        m, n = rng.randint(-2, 2), rng.randint(-2, 2)
        lhs = apply(lr, LoopGenerator(a, m), apply(lr, LoopGenerator(b, n), v))
        rhs = apply(lr, LoopGenerator(b, n), apply(lr, LoopGenerator(a, m), v)).terms.copy()
        for idx, coef in lr.bracket(a, b):
            for mono, c in apply(lr, LoopGenerator(idx, m + n), v).terms.items():
                rhs[mono] = rhs.get(mono, Q(0)) + coef * c
        if m + n == 0 and lr.form(a, b):
            for mono, c in v.terms.items():
                rhs[mono] = rhs.get(mono, Q(0)) + m * k * lr.form(a, b) * c
        if lhs.terms != {mm: c for mm, c in rhs.items() if c}:
            return False
    return True


def grading_sweep(lr, rng, k, pairs):
    done = 0
    while done < pairs:
        v = random_state(lr, rng, k)
        if v.is_zero():
            continue
        done += 1
        b = rng.randrange(lr.dim)
        mode = rng.randint(-2, 2)
        img = apply(lr, LoopGenerator(b, mode), v)
        if img.weight != vadd(v.weight, lr.weights[b]):
            return False
        if img.degree != v.degree - mode:
            return False
    return True


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=10_000)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    failures = 0
    for family, rank in [("A", 4), ("B", 4), ("C", 4), ("D", 4), ("E", 7)]:
        lr = build_realization(family, rank)
        checked, ok = sweep_algebra(lr, rng, args.samples)
        mode = "exhaustive" if lr.dim <= 40 else "sampled"
        print(f"{lr.rs.label}: {checked} triples ({mode}) "
              f"{'ok' if ok else 'VIOLATION'}")
        failures += 0 if ok else 1
    for family, rank in [("D", 4), ("B", 3), ("C", 3)]:
        lr = build_realization(family, rank)
        ok1 = commutator_sweep(lr, rng, Q(-2), 50)
        ok2 = grading_sweep(lr, rng, Q(-2), 1000)
        print(f"{lr.rs.label}: loop-action commutators "
              f"{'ok' if ok1 else 'VIOLATION'}, grading shifts "
              f"{'ok' if ok2 else 'VIOLATION'}")
        failures += (0 if ok1 else 1) + (0 if ok2 else 1)
    print(f"failures: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
