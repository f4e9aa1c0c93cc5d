"""Stability predicates and z-superstable representatives.

Deciding z-superstability
-------------------------
A violator of ``c`` is an integer ``z >= 0``, ``z != 0`` with ``c - L z >= 0``.
Because ``L`` has nonpositive off-diagonal entries, the componentwise maximum
of two violators (or of a violator and 0) again satisfies ``L z <= c``. So the
feasible set ``{z >= 0 : L z <= c}`` has a greatest element, and it is bounded
by ``L^-1 c`` since ``L^-1 >= 0``. We find it by iterating

    z_i <- min(z_i, floor((c_i - sum_{j != i} L_ij z_j) / L_ii))

downward from ``floor(L^-1 c)``; the map is monotone, so the iteration stops
at the greatest fixed point. ``c`` is z-superstable iff that point is 0.
A reported witness is then the violator of smallest coordinate sum (ties
broken lexicographically), found by searching the box below the greatest one.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import floor, prod
from typing import Sequence

from .dynamics import Configuration, Engine, d_vector, stabilize
from .errors import DimensionTooLarge, NegativeInput, SearchTooLarge
from .matcore import IntegerMatrix

MAX_CHI_DIMENSION = 24
MAX_SEARCH = 10**8


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    chi_superstable: bool
    z_superstable: bool
    violating_chi: Configuration | None = None
    violating_z: Configuration | None = None

    def to_json(self) -> dict:
        return {
            "stable": self.stable,
            "chi_superstable": self.chi_superstable,
            "z_superstable": self.z_superstable,
            "violating_chi": None if self.violating_chi is None else list(self.violating_chi),
            "violating_z": None if self.violating_z is None else list(self.violating_z),
        }


def _require_nonnegative(c):
    if any(x < 0 for x in c):
        raise NegativeInput(f"configuration must be nonnegative, got {tuple(c)}")


def _residual_nonnegative(L: IntegerMatrix, c, z) -> bool:
    return all(ci - lz >= 0 for ci, lz in zip(c, L.matvec(z)))


def is_stable(e: Engine, c: Sequence[int]) -> bool:
    c = e.check(c)
    return all(x < d for x, d in zip(c, e.L.diagonal()))


def is_chi_superstable(e: Engine, c: Sequence[int]) -> tuple[bool, Configuration | None]:
    """Test every nonzero 0/1 vector; return the lexicographically smallest violator."""
    c = e.check(c)
    _require_nonnegative(c)
    if e.n > MAX_CHI_DIMENSION:
        raise DimensionTooLarge(f"subset enumeration refused for n={e.n} > {MAX_CHI_DIMENSION}")
    for chi in itertools.product((0, 1), repeat=e.n):
        if any(chi) and _residual_nonnegative(e.L, c, chi):
            return False, chi
    return True, None


def greatest_violator(e: Engine, c: Sequence[int]) -> Configuration:
    """Largest ``z >= 0`` with ``L z <= c`` (the zero vector when none is nonzero)."""
    c = e.check(c)
    _require_nonnegative(c)
    L = e.L
    n = e.n
    z = [floor(x) for x in e.solve(c)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            off = sum(L[i][j] * z[j] for j in range(n) if j != i)
            cap = (c[i] - off) // L[i][i]
            if cap < z[i]:
                z[i] = cap
                changed = True
    return tuple(z)


def _compositions(total: int, bounds: Sequence[int]):
    """Vectors ``0 <= v <= bounds`` with coordinate sum ``total``, in lex order."""
    if not bounds:
        if total == 0:
            yield ()
        return
    rest = sum(bounds[1:])
    for first in range(max(0, total - rest), min(bounds[0], total) + 1):
        for tail in _compositions(total - first, bounds[1:]):
            yield (first,) + tail


def smallest_violator(e: Engine, c: Sequence[int], bound: Sequence[int]) -> Configuration | None:
    volume = prod(b + 1 for b in bound)
    if volume > MAX_SEARCH:
        raise SearchTooLarge(f"witness search box has {volume} points")
    for s in range(1, sum(bound) + 1):
        for z in _compositions(s, bound):
            if _residual_nonnegative(e.L, c, z):
                return z
    return None


def is_z_superstable(e: Engine, c: Sequence[int],
                     witness: bool = True) -> tuple[bool, Configuration | None]:
    """Decide z-superstability of ``c >= 0``.

    Returns ``(True, None)`` or ``(False, z)`` where ``z`` is the violator of
    smallest coordinate sum, lexicographically first among ties. With
    ``witness=False`` the (possibly expensive) minimal witness search is
    skipped and the greatest violator is returned instead.
    """
    top = greatest_violator(e, c)
    if not any(top):
        return True, None
    if not witness:
        return False, top
    return False, smallest_violator(e, e.check(c), top)


def stability_report(e: Engine, c: Sequence[int]) -> StabilityReport:
    chi_ok, chi = is_chi_superstable(e, c)
    z_ok, z = is_z_superstable(e, c)
    return StabilityReport(is_stable(e, c), chi_ok, z_ok, chi, z)


def stable_box(e: Engine):
    """Iterate ``0 <= c <= D^L`` in lexicographic order."""
    return itertools.product(*(range(d + 1) for d in d_vector(e)))


def _check_box(e: Engine):
    volume = prod(d + 1 for d in d_vector(e))
    if volume > MAX_SEARCH:
        raise SearchTooLarge(f"stable box has {volume} points")


def _z_slice(args):
    e, first = args
    rest = itertools.product(*(range(d + 1) for d in d_vector(e)[1:]))
    return [c for c in ((first,) + t for t in rest) if not any(greatest_violator(e, c))]


def enumerate_z_superstables(e: Engine, workers: int | None = None) -> list[Configuration]:
    """All z-superstable configurations, sorted lexicographically.

    With ``workers`` > 1 the box is split on the first coordinate across
    processes; slices come back in order, so the output is identical.
    """
    _check_box(e)
    firsts = range(d_vector(e)[0] + 1)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_z_slice, [(e, f) for f in firsts]))
    else:
        chunks = [_z_slice((e, f)) for f in firsts]
    return [c for chunk in chunks for c in chunk]


def canonical_z_superstable(e: Engine, f: Sequence[int]) -> Configuration:
    """The unique z-superstable configuration equivalent to ``f``.

    Works through the dual critical configuration: ``D^L - f`` is lifted
    above the diagonal inside its class, stabilized to the critical
    representative ``c``, and ``D^L - c`` is returned. ``f`` may have
    negative entries.
    """
    from .critical import lift_above_diagonal

    f = e.check(f)
    dl = d_vector(e)
    h = tuple(d - x for d, x in zip(dl, f))
    g, _ = lift_above_diagonal(e, h)
    crit = stabilize(e, g, policy="batch", cap=None, record_sequence=False).result
    return tuple(d - x for d, x in zip(dl, crit))


def maximal_elements(configs: Sequence[Configuration]) -> list[Configuration]:
    """Componentwise-maximal members of ``configs``, sorted."""
    out = []
    for c in configs:
        if not any(d != c and all(a <= b for a, b in zip(c, d)) for d in configs):
            out.append(c)
    return sorted(out)
