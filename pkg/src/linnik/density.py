"""Upper bounds on N(lambda), the number of characters with a zero in the
rescaled box, via the quadratic counting inequality.

The inequality compares the weighted zero sum of N characters against its
Cauchy-Schwarz majorant and yields a downward parabola h(N) >= 0, so
N <= floor(larger root); a prior bound N(lambda0) >= N0 sharpens it.  The
kernel parameter comes from a fitted formula in (lambda, lambda11, N0) and
is clamped to the kernel's validity floor 0.5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import _data
from .kernel import WeightKernel, classic_density_bound

__all__ = ["DensityQuery", "DensityBound", "density_gamma", "quadratic_N_bound",
           "gen_density_tables", "vb8_bound", "DensityTables",
           "classic_density_bound"]

#: slack added before flooring the root, absorbing representation error at
#: integer boundaries
ROOT_SLACK = 1e-12


@dataclass(frozen=True)
class DensityQuery:
    """Inputs of one counting-bound evaluation."""

    lam: float
    lambda11: float
    lambda0: float = 0.0
    n0: int = 0
    epsilon: float = 1e-7

    def __post_init__(self):
        if not (0.0 < self.lam < 2.0):
            raise ValueError("lam must lie in (0, 2)")
        if self.lambda11 <= 0:
            raise ValueError("lambda11 must be positive")
        if self.lambda11 >= self.lam:
            raise ValueError("need lambda11 < lam for a nontrivial bound")
        if not (0.0 <= self.lambda0 <= self.lam):
            raise ValueError("need 0 <= lambda0 <= lam")
        if not (0 <= self.n0 <= 10000):
            raise ValueError("n0 must be a count <= 10000")


@dataclass(frozen=True)
class DensityBound:
    """The parabola h(N) = a N^2 + b N + c with its roots and integer bound.

    bound is None when the bound is vacuous: applicability or concavity guard
    failed, or no real roots.
    """

    a: float
    b: float
    c: float
    gamma: float
    guards_ok: bool
    roots: Optional[tuple]
    bound: Optional[int]

    def h(self, n: float) -> float:
        return (self.a * n + self.b) * n + self.c


def density_gamma(query: DensityQuery) -> float:
    """Fitted kernel parameter, clamped to the 0.5 validity floor."""
    g = (0.975 + 0.525 * query.lam - 0.550 * query.lambda11
         - 0.014 * query.n0 * (query.lam - query.lambda0))
    return max(g, 0.5)


def quadratic_N_bound(query: DensityQuery) -> DensityBound:
    """Integer bound on N(lam) from the downward parabola.

    Guards: F(lam - lambda11) > f(0)/6 (applicability) and
    (F(lam - lambda11) - f(0)/6)^2 > F(-lambda11) f(0)/6 (concavity).
    """
    gamma = density_gamma(query)
    kern = WeightKernel(gamma)
    p = kern.F_real(query.lam - query.lambda11)
    g = kern.F_real(-query.lambda11)
    c6 = kern.f0 / 6.0
    alpha = p - c6
    beta = query.n0 * (kern.F_real(query.lambda0 - query.lambda11) - p) if query.n0 else 0.0
    a = g * c6 - alpha * alpha
    b = g * (g - c6) - 2.0 * alpha * beta
    c = query.epsilon - beta * beta
    guards_ok = (p > c6) and (alpha * alpha > g * c6)
    if not guards_ok:
        return DensityBound(a, b, c, gamma, False, None, None)
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return DensityBound(a, b, c, gamma, True, None, None)
    # sign-aware stable quadratic roots
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else -0.5 * sq
    r1, r2 = q / a, (c / q if q != 0.0 else 0.0)
    lo, hi = sorted((r1, r2))
    return DensityBound(a, b, c, gamma, True, (lo, hi), int(math.floor(hi + ROOT_SLACK)))


def vb8_bound(kern: WeightKernel, lam: float, lambda21: float,
              epsilon: float = 1e-7) -> Optional[float]:
    """Auxiliary counting bound 3 S1 + 2 from a second-character hypothesis
    lambda2 >= lambda21; None when either guard fails."""
    p = kern.F_real(lam - lambda21)
    g = kern.F_real(-lambda21)
    c6 = kern.f0 / 6.0
    if not (p > c6 and (p - c6) ** 2 > g * c6):
        return None
    s1 = g * (g - c6) / ((p - c6) ** 2 - g * c6) + epsilon
    return 3.0 * s1 + 2.0


# --------------------------------------------------------------------------
# Table regeneration
# --------------------------------------------------------------------------

def _cell_query(lambda1: float, lambda0, n0, lam: float) -> DensityQuery:
    if n0:
        return DensityQuery(lam=lam, lambda11=lambda1, lambda0=lambda0, n0=n0)
    return DensityQuery(lam=lam, lambda11=lambda1)


def gen_density_tables():
    """Recompute every published counting-table cell and compare.

    Numeric cells must match integer-exactly.  Dash cells carry no claim; for
    them we record the computed value (the published tables omit entries whose
    quadratic bound is weaker than the classic one).  Returns the full list of
    cell records; mismatches are flagged, not raised.
    """
    records = []
    for table in (12, 13):
        for raw in _data.published_table(table):
            lambda1 = float(raw["lambda1"])
            lambda0 = float(raw["lambda0"]) if raw["lambda0"] else 0.0
            n0 = int(raw["n0"]) if raw["n0"] else 0
            lam = float(raw["lam"])
            published = raw["bound"]
            result = quadratic_N_bound(_cell_query(lambda1, lambda0, n0, lam))
            rec = {
                "table": table, "lambda1": lambda1, "lambda0": lambda0 or None,
                "n0": n0 or None, "lam": lam,
                "published": published, "computed": result.bound,
                "gamma": result.gamma,
                "parabola": (result.a, result.b, result.c),
                "roots": result.roots,
            }
            if published == "-":
                rec["match"] = None  # unprinted cell: no integer claim to check
                rec["weaker_than_classic"] = (
                    result.bound is None
                    or result.bound >= classic_density_bound(lam))
            else:
                rec["match"] = (result.bound == int(published))
            records.append(rec)
    return records


class DensityTables:
    """Regenerated counting-table columns, keyed for the final verification.

    Lookup raises KeyError naming the column and the missing lambda value so
    a broken schedule is loud, never silently padded.
    """

    def __init__(self):
        self._cells = {}
        for table in (12, 13):
            for raw in _data.published_table(table):
                lambda1 = float(raw["lambda1"])
                lambda0 = float(raw["lambda0"]) if raw["lambda0"] else 0.0
                n0 = int(raw["n0"]) if raw["n0"] else 0
                lam = float(raw["lam"])
                if raw["bound"] == "-":
                    continue
                result = quadratic_N_bound(_cell_query(lambda1, lambda0, n0, lam))
                if result.bound is None:
                    raise RuntimeError(
                        f"table {table} column {lambda1} cell {lam}: bound vanished")
                self._cells[(table, lambda1, n0, round(lam, 3))] = result.bound

    def lookup(self, table: int, column: float, lam: float, n0: int = 0) -> int:
        key = (table, column, n0, round(lam, 3))
        try:
            return self._cells[key]
        except KeyError:
            raise KeyError(
                f"counting table {table}, column lambda1 >= {column}, "
                f"assumption n0={n0}: no cell at lambda = {lam}") from None


@lru_cache(maxsize=1)
def regenerated_tables() -> DensityTables:
    return DensityTables()
