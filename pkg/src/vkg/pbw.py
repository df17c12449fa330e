"""PBW monomials in the universal affine vertex algebra and their straightening.

A monomial is a tuple of loop generators ``(mode, base)`` with strictly
negative modes, sorted by mode ascending and then by basis index, applied to
the vacuum.  The straightening rule is the affine commutator

    [a(m), b(n)] = [a, b](m + n) + m delta_{m+n,0} k (a | b),

with x(m) vacuum = 0 for m >= 0.  Everything is exact over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from . import linalg
from .liealg import LieRealization
from .rootdata import Vec, vadd, vscale, vzero

Gen = Tuple[int, int]          # (mode, base index); tuple order = PBW order
Monomial = Tuple[Gen, ...]
Terms = Dict[Monomial, Q]


class LoopGenerator(NamedTuple):
    base: int
    mode: int

    @property
    def key(self) -> Gen:
        return (self.mode, self.base)


class CapExceededError(RuntimeError):
    """A graded component is larger than the configured size cap."""


@dataclass(frozen=True)
class StateVector:
    """Finite rational combination of PBW monomials at fixed weight/degree."""

    level: Q
    weight: Vec
    degree: Q
    terms: Dict[Monomial, Q]

    def is_zero(self) -> bool:
        return not self.terms

    def support_size(self) -> int:
        return len(self.terms)

    def scaled(self, c) -> "StateVector":
        c = Q(c)
        if not c:
            return StateVector(self.level, self.weight, self.degree, {})
        return StateVector(
            self.level, self.weight, self.degree,
            {m: c * v for m, v in self.terms.items()},
        )

    def at_level(self, k) -> "StateVector":
        return StateVector(Q(k), self.weight, self.degree, dict(self.terms))

    def __add__(self, other: "StateVector") -> "StateVector":
        assert self.level == other.level
        assert self.weight == other.weight and self.degree == other.degree
        terms = dict(self.terms)
        for m, v in other.terms.items():
            new = terms.get(m, Q(0)) + v
            if new:
                terms[m] = new
            else:
                terms.pop(m, None)
        return StateVector(self.level, self.weight, self.degree, terms)


def vacuum(lr: LieRealization, k) -> StateVector:
    return StateVector(Q(k), vzero(lr.rs.ambient), Q(0), {(): Q(1)})


def proportional(a: StateVector, b: StateVector) -> Optional[Q]:
    """The scalar c with a = c * b, or None if no such scalar exists."""
    if a.is_zero():
        return Q(0)
    if b.is_zero() or set(a.terms) != set(b.terms):
        return None
    mono = next(iter(a.terms))
    c = a.terms[mono] / b.terms[mono]
    if all(a.terms[m] == c * b.terms[m] for m in a.terms):
        return c
    return None


class _Engine:
    """Normal-ordering engine for one realization at one level."""

    def __init__(self, lr: LieRealization, k: Q):
        self.lr = lr
        self.k = Q(k)
        self._memo: Dict[Tuple[int, int, Monomial], Terms] = {}

    def act_gen(self, gen: Gen, terms: Terms) -> Terms:
        out: Terms = {}
        for mono, coef in terms.items():
            for m2, c2 in self.act_mono(gen, mono).items():
                new = out.get(m2, Q(0)) + coef * c2
                if new:
                    out[m2] = new
                else:
                    out.pop(m2, None)
        return out

    def act_mono(self, gen: Gen, mono: Monomial) -> Terms:
        key = (gen[0], gen[1], mono)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        mode, base = gen
        if not mono:
            result: Terms = {} if mode >= 0 else {(gen,): Q(1)}
            self._memo[key] = result
            return result
        first, rest = mono[0], mono[1:]
        if gen <= first:
            result = {(gen,) + mono: Q(1)}
            self._memo[key] = result
            return result
        out: Terms = {}
        # reorder: first * (gen . rest)
        for m2, c2 in self.act_mono(gen, rest).items():
            for m3, c3 in self.act_mono(first, m2).items():
                _acc(out, m3, c2 * c3)
        # commutator [gen.base, first.base](mode + first.mode) . rest
        new_mode = mode + first[0]
        for idx, coef in self.lr.bracket(base, first[1]):
            for m2, c2 in self.act_mono((new_mode, idx), rest).items():
                _acc(out, m2, coef * c2)
        # central term
        if new_mode == 0:
            f = self.lr.form(base, first[1])
            if f:
                _acc(out, rest, Q(mode) * self.k * f)
        out = {m: c for m, c in out.items() if c}
        self._memo[key] = out
        return out


def _acc(out: Terms, mono: Monomial, c: Q) -> None:
    new = out.get(mono, Q(0)) + c
    if new:
        out[mono] = new
    else:
        out.pop(mono, None)


def _apply_with(engine: _Engine, gen: LoopGenerator, v: StateVector) -> StateVector:
    terms = engine.act_gen(gen.key, v.terms)
    return StateVector(
        level=v.level,
        weight=vadd(v.weight, engine.lr.weights[gen.base]),
        degree=v.degree - gen.mode,
        terms=terms,
    )


def apply(lr: LieRealization, gen: LoopGenerator, v: StateVector) -> StateVector:
    """Normal-ordered image of x(n) v; pure, exact."""
    return _apply_with(_Engine(lr, v.level), gen, v)


def apply_string(lr: LieRealization, gens: Sequence[LoopGenerator],
                 v: StateVector, engine: Optional[_Engine] = None) -> StateVector:
    """Apply a product of loop generators, rightmost factor first.

    One straightening engine (and so one memo table) serves the whole
    product; callers doing many applications at one level may pass their
    own engine to share the table further.
    """
    if engine is None:
        engine = _Engine(lr, v.level)
    for gen in reversed(gens):
        v = _apply_with(engine, gen, v)
    return v


def raising_generators(lr: LieRealization) -> List[Tuple[str, LoopGenerator]]:
    """The singularity test set: e_alpha(0) for simple alpha, and e_-theta(1)."""
    rs = lr.rs
    gens = [
        (f"e[{_root_str(a)}](0)", LoopGenerator(lr.e(a), 0))
        for a in rs.simple_roots
    ]
    gens.append(
        (f"e[{_root_str(vscale(-1, rs.theta))}](1)",
         LoopGenerator(lr.e(vscale(-1, rs.theta)), 1))
    )
    return gens


def _root_str(a: Vec) -> str:
    return ",".join(str(x) for x in a)


def is_singular(lr: LieRealization, v: StateVector):
    """True iff every raising generator kills v; else (False, witness).

    The witness is the pair (generator label, first nonvanishing image).
    """
    if v.is_zero():
        raise ValueError("is_singular needs a nonzero vector")
    engine = _Engine(lr, v.level)
    for label, gen in raising_generators(lr):
        image = _apply_with(engine, gen, v)
        if not image.is_zero():
            return False, (label, image)
    return True, None


# ---------------------------------------------------------------------------
# Graded components


def graded_basis(lr: LieRealization, weight: Vec, degree: int,
                 cap: Optional[int] = None) -> List[Monomial]:
    """All normal-ordered monomials of the given weight and conformal degree.

    Deterministic order (lexicographic in the generator stream); raises
    CapExceededError when a cap is given and the component is larger.
    The search runs on integer-rescaled coordinates with a mass bound and a
    per-coordinate reachability bound as prunes.
    """
    degree = int(degree)
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    dim = lr.rs.ambient
    if degree == 0:
        return [()] if weight == vzero(dim) else []

    scale = 1
    for coords in list(lr.weights) + [weight]:
        for x in coords:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    target = [int(x * scale) for x in weight]
    wints = [[int(x * scale) for x in w] for w in lr.weights]
    max_mass = max((sum(abs(c) for c in w) for w in wints), default=0)
    max_coord = max((abs(c) for w in wints for c in w), default=0)
    gens: List[Gen] = [
        (mode, b) for mode in range(-degree, 0) for b in range(lr.dim)
    ]
    out: List[Monomial] = []
    stack: List[Gen] = []
    cur = [0] * dim

    def rec(start: int, remaining: int):
        need = 0
        worst = 0
        for c in range(dim):
            d = target[c] - cur[c]
            if d < 0:
                d = -d
            need += d
            if d > worst:
                worst = d
        if remaining == 0:
            if need == 0:
                out.append(tuple(stack))
                if cap is not None and len(out) > cap:
                    raise CapExceededError(
                        f"graded component exceeds cap {cap}"
                    )
            return
        if need > remaining * max_mass or worst > remaining * max_coord:
            return
        for gi in range(start, len(gens)):
            mode, b = gens[gi]
            if -mode > remaining:
                continue
            w = wints[b]
            for c in range(dim):
                cur[c] += w[c]
            stack.append((mode, b))
            rec(gi, remaining + mode)
            stack.pop()
            for c in range(dim):
                cur[c] -= w[c]

    rec(0, degree)
    return out


def component_size(lr: LieRealization, weight: Vec, degree: int,
                   cap: int) -> Optional[int]:
    """Size of the graded component, or None if it exceeds the cap."""
    try:
        return len(graded_basis(lr, weight, degree, cap=cap))
    except CapExceededError:
        return None


def singular_kernel(lr: LieRealization, k, weight: Vec, degree: int,
                    cap: Optional[int] = None) -> List[StateVector]:
    """Basis of the joint kernel of all raising generators on a component.

    Brute force: enumerate the component, assemble the stacked constraint
    matrix exactly, and eliminate.  An empty list means no singular vectors.
    """
    k = Q(k)
    basis = graded_basis(lr, weight, degree, cap=cap)
    if not basis:
        return []
    engine = _Engine(lr, k)
    rows: Dict[Tuple[int, Monomial], linalg.Row] = {}
    for gidx, (_, gen) in enumerate(raising_generators(lr)):
        for col, mono in enumerate(basis):
            for imono, c in engine.act_mono(gen.key, mono).items():
                row = rows.setdefault((gidx, imono), {})
                row[col] = row.get(col, Q(0)) + c
    matrix = [r for r in rows.values() if r]
    kernel = linalg.nullspace(matrix, len(basis))
    out = []
    for vecdict in kernel:
        terms = {basis[c]: val for c, val in vecdict.items()}
        out.append(StateVector(k, weight, Q(degree), terms))
    return out


def in_span_of_component(lr: LieRealization, v: StateVector) -> bool:
    """Every monomial of v lies in the enumerated graded component."""
    basis = set(graded_basis(lr, v.weight, int(v.degree)))
    return set(v.terms) <= basis
