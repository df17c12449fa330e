"""Sugawara conformal weights, collapsing-level weight equations, and the
classified module lists for the relevant categories of locally finite
modules.

Levels are always non-critical here: k = -h is rejected.  All outputs are
exact rational numbers or explicit weight families; a family is either a
finite arithmetic progression of weights or an infinite one materialized
lazily up to a caller-supplied bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import List, Optional, Sequence, Tuple

from .rootdata import (
    RootSystem,
    Vec,
    build_root_system,
    canonical_name,
    canonical_type,
    fundamental_weight,
    is_dominant_integral,
    vadd,
    vscale,
    vzero,
)

GType = Tuple[str, int]


class CriticalLevelError(ValueError):
    """Raised when k equals minus the dual Coxeter number."""


class NotClassifiedError(ValueError):
    """The (algebra, level, quotient) triple is outside the classified list."""


def _shifted_level(rs: RootSystem, k) -> Q:
    k = Q(k)
    if k == -rs.dual_coxeter:
        raise CriticalLevelError(f"critical level {k} for {rs.label}")
    return k


def sugawara_weight(rs: RootSystem, mu: Vec, k) -> Q:
    """(mu, mu + 2 rho) / (2 (k + h)): the L(0) eigenvalue on weight mu."""
    k = _shifted_level(rs, k)
    num = rs.form(mu, vadd(mu, vscale(2, rs.rho)))
    return num / (2 * (k + rs.dual_coxeter))


def w_lowest_weight(rs: RootSystem, mu: Vec, k) -> Q:
    """Lowest conformal weight of the reduced module: Sugawara minus mu(x).

    x = theta-coroot / 2, so mu(x) = (mu, theta)/2 under the normalized form.
    """
    return sugawara_weight(rs, mu, k) - rs.form(mu, rs.theta) / 2


def ell_equation_roots(k) -> Tuple[Q, Q]:
    """Roots in ell of ell^2 - (k+1) ell = 0: always {0, k+1}."""
    k = Q(k)
    return (Q(0), k + 1)


def collapse_ell_roots(rs: RootSystem, k) -> Tuple[Q, Q]:
    """Exact root set of the theta-coefficient equation at level k."""
    _shifted_level(rs, k)
    return ell_equation_roots(k)


def half_level_roots(h_dual) -> Tuple[Q, Q]:
    """Specialization at k = -h/2 + 1: roots of 2 ell^2 + (h-4) ell."""
    h = Q(h_dual)
    return (Q(0), (4 - h) / 2)


def deligne_level_roots(h_dual) -> Tuple[Q, Q]:
    """Specialization at k = -h/6 - 1: roots of 6 ell^2 + h ell."""
    h = Q(h_dual)
    return (Q(0), -h / 6)


def solve_quoted_s_equation(j) -> Tuple[Q, Q]:
    """Exact solutions in s of (s + j)(s + j + 2) = j (j + 2)."""
    j = Q(j)
    return (Q(0), -2 * j - 2)


def nonnegative_solutions(roots: Sequence[Q], half_integral=False) -> List[Q]:
    """Filter roots to Z>=0 (or (1/2) Z>=0 when half_integral)."""
    out = []
    for r in roots:
        if r < 0:
            continue
        if half_integral:
            if (2 * r).denominator == 1:
                out.append(r)
        elif r.denominator == 1:
            out.append(r)
    return sorted(set(out))


# ---------------------------------------------------------------------------
# Classified module families


@dataclass(frozen=True)
class WeightFamily:
    """Arithmetic progression base + t * step, t = 0 .. count-1 (None = all t >= 0)."""

    base: Vec
    step: Vec
    count: Optional[int]
    label: str

    def materialize(self, limit: int = 10) -> List[Vec]:
        n = self.count if self.count is not None else limit
        return [vadd(self.base, vscale(t, self.step)) for t in range(n)]

    @property
    def infinite(self) -> bool:
        return self.count is None


@dataclass(frozen=True)
class KLSpectrum:
    algebra: GType
    level: Q
    quotient: str
    families: Tuple[WeightFamily, ...]
    provenance: str

    def weights(self, limit: int = 10) -> List[Vec]:
        out = []
        for fam in self.families:
            out.extend(fam.materialize(limit))
        return out


QUOTIENTS = ("simple", "intermediate", "vbar")


def _trivial_spectrum(g: GType, k: Q, why: str, dim: int) -> KLSpectrum:
    zero = vzero(dim)
    fam = WeightFamily(zero, zero, 1, "trivial weight only")
    return KLSpectrum(g, k, "simple", (fam,), why)


def deligne_series() -> Tuple[GType, ...]:
    return (("A", 2), ("G", 2), ("D", 4), ("F", 4), ("E", 6), ("E", 7), ("E", 8))


def kl_spectrum(g: GType, k, quotient: str = "simple") -> KLSpectrum:
    """Complete irreducible-module lists in the locally finite category.

    Covered cases (exact level matches, canonical algebra types):

    * simple quotients with one module: the exceptional series at
      k = -h/6 - 1, even-rank D at k = -h/2 + 1, and E8 at k = -10;
    * type D at k = -2: simple bound j <= rank - 4, intermediate infinite;
    * type B at k = -2: simple bound j <= 2(rank-3) + 1 for rank >= 3,
      the same infinite family for rank 2 and for every intermediate case;
    * type D at k = 2 - rank: the two spin-weight families for the quotient
      by the quadratic vector ('vbar'); for odd rank these also classify
      the simple quotient;
    * D6 at k = -4, intermediate: the single spin family.

    Anything else raises NotClassifiedError.
    """
    fam_g, rank = canonical_type(*g)
    g = (fam_g, rank)
    rs = build_root_system(fam_g, rank)
    k = _shifted_level(rs, k)
    if quotient not in QUOTIENTS:
        raise ValueError(f"unknown quotient {quotient!r}; pick from {QUOTIENTS}")
    dim = rs.ambient
    zero = vzero(dim)

    if quotient == "simple":
        if g in deligne_series() and k == -rs.dual_coxeter / 6 - 1:
            return _trivial_spectrum(
                g, k, "unique module at the exceptional-series level", dim
            )
        if g == ("E", 8) and k == -10:
            return _trivial_spectrum(g, k, "unique module at k = -10", dim)
        if fam_g == "D" and rank % 2 == 0 and rank >= 4 \
                and k == -rs.dual_coxeter / 2 + 1:
            return _trivial_spectrum(
                g, k, "unique module for even-rank D at k = 2 - rank", dim
            )
        if fam_g == "D" and rank >= 4 and k == -2:
            w1 = fundamental_weight(rs, 1)
            fam = WeightFamily(
                zero, w1, rank - 4 + 1, f"j*omega1, 0 <= j <= {rank - 4}"
            )
            return KLSpectrum(
                g, k, quotient, (fam,),
                "simple quotient of type D at level -2: finite omega1 ladder",
            )
        if fam_g == "B" and rank >= 3 and k == -2:
            bound = 2 * (rank - 3) + 1
            w1 = fundamental_weight(rs, 1)
            fam = WeightFamily(
                zero, w1, bound + 1, f"j*omega1, 0 <= j <= {bound}"
            )
            return KLSpectrum(
                g, k, quotient, (fam,),
                "simple quotient of type B at level -2: finite omega1 ladder",
            )
        if g == ("B", 2) and k == -2:
            w1 = fundamental_weight(rs, 1)
            fam = WeightFamily(zero, w1, None, "j*omega1, all j >= 0")
            return KLSpectrum(
                g, k, quotient, (fam,),
                "B2 at level -2: the quadratic quotient is already simple",
            )
        if fam_g == "D" and rank % 2 == 1 and rank >= 5 and k == 2 - rank:
            return KLSpectrum(
                g, k, quotient, _spin_families(rs),
                "odd-rank D at k = 2 - rank: the two spin ladders",
            )
        raise NotClassifiedError(
            f"no classification stored for simple {canonical_name(*g)} at k = {k}"
        )

    if quotient == "intermediate":
        if fam_g == "D" and rank >= 4 and k == -2:
            w1 = fundamental_weight(rs, 1)
            fam = WeightFamily(zero, w1, None, "j*omega1, all j >= 0")
            return KLSpectrum(
                g, k, quotient, (fam,),
                "type D at level -2, quotient by the quadratic vector: "
                "infinite omega1 ladder",
            )
        if fam_g == "B" and rank >= 2 and k == -2:
            w1 = fundamental_weight(rs, 1)
            fam = WeightFamily(zero, w1, None, "j*omega1, all j >= 0")
            return KLSpectrum(
                g, k, quotient, (fam,),
                "type B at level -2, quotient by the quadratic vector: "
                "infinite omega1 ladder",
            )
        if g == ("D", 6) and k == -4:
            wl = fundamental_weight(rs, 6)
            fam = WeightFamily(
                vzero(dim), wl, None, "s*omega6, all s >= 0"
            )
            return KLSpectrum(
                g, k, quotient, (fam,),
                "D6 at level -4, quotient by the quadratic and one cubic "
                "vector: single spin ladder",
            )
        raise NotClassifiedError(
            f"no intermediate quotient stored for {canonical_name(*g)} at k = {k}"
        )

    # quotient == "vbar": quotient by the rank-one quadratic vector
    if fam_g == "D" and rank >= 3 and k == 2 - rank:
        return KLSpectrum(
            g, k, quotient, _spin_families(rs),
            "type D at k = 2 - rank, quotient by the quadratic vector: "
            "two spin ladders",
        )
    raise NotClassifiedError(
        f"no vbar classification stored for {canonical_name(*g)} at k = {k}"
    )


def _spin_families(rs: RootSystem) -> Tuple[WeightFamily, ...]:
    dim = rs.ambient
    wl = fundamental_weight(rs, rs.rank)
    wl1 = fundamental_weight(rs, rs.rank - 1)
    return (
        WeightFamily(vzero(dim), wl, None, f"t*omega{rs.rank}, all t >= 0"),
        WeightFamily(vzero(dim), wl1, None, f"t*omega{rs.rank - 1}, all t >= 0"),
    )


def spectrum_is_dominant(spec: KLSpectrum, limit: int = 8) -> bool:
    rs = build_root_system(*spec.algebra)
    return all(is_dominant_integral(rs, w) for w in spec.weights(limit))
