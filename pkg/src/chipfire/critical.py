"""Critical configurations and the duality ``c -> D^L - c``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dynamics import Configuration, Engine, FiringRecord, d_vector, eligible, stabilize
from .matcore import common_denominator
from .stability import enumerate_z_superstables, is_stable, is_z_superstable


@dataclass(frozen=True)
class CriticalCertificate:
    """A start ``g >= diag(L)`` and a legal firing sequence from it."""

    start: Configuration
    record: FiringRecord

    def replay(self, e: Engine) -> bool:
        """Re-fire the sequence one state at a time, checking legality at each step."""
        if any(x < d for x, d in zip(self.start, e.L.diagonal())):
            return False
        c = list(self.start)
        cols = [e.L.column(i) for i in range(e.n)]
        for i in self.record.sequence:
            if not eligible(e, c, i):
                return False
            c = [x - y for x, y in zip(c, cols[i])]
        return tuple(c) == self.record.result and is_stable(e, c)

    def to_json(self) -> dict:
        out = {"start": list(self.start)}
        out.update(self.record.to_json())
        return out


def lift_above_diagonal(e: Engine, f: Sequence[int], scale: int = 1) -> tuple[Configuration, Configuration]:
    """Return ``(g, z)`` with ``g = f + L z``, ``z >= 0`` and ``g >= diag(L)``.

    The deficit ``y = max(0, diag(L) - f)`` is solved exactly and the solution
    scaled by the lcm of its denominators (times ``scale``), so ``L z`` is a
    positive multiple of ``y``.
    """
    f = e.check(f)
    y = [max(0, d - x) for d, x in zip(e.L.diagonal(), f)]
    x = e.solve(y)
    lam = common_denominator(x) * scale
    z = tuple(int(v * lam) for v in x)
    g = tuple(a + b for a, b in zip(f, e.apply(z)))
    return g, z


def canonical_critical(e: Engine, f: Sequence[int], scale: int = 1,
                       record_sequence: bool = True) -> tuple[Configuration, CriticalCertificate]:
    """The unique critical configuration equivalent to ``f``, with a certificate."""
    g, _ = lift_above_diagonal(e, f, scale)
    policy = "smallest" if record_sequence else "batch"
    record = stabilize(e, g, policy=policy, cap=None, record_sequence=record_sequence)
    return record.result, CriticalCertificate(g, record)


def dual(e: Engine, c: Sequence[int]) -> Configuration:
    return tuple(d - x for d, x in zip(d_vector(e), e.check(c)))


def is_critical(e: Engine, c: Sequence[int], method: str = "dual") -> bool:
    """Decide criticality.

    ``"dual"`` tests whether ``D^L - c`` is z-superstable; ``"stabilize"``
    checks that lifting and stabilizing ``c`` returns ``c`` itself. The two
    agree; the second does not rely on duality.
    """
    c = e.check(c)
    if not is_stable(e, c):
        return False
    if method == "dual":
        f = dual(e, c)
        if any(x < 0 for x in f):
            return False
        return is_z_superstable(e, f, witness=False)[0]
    if method == "stabilize":
        result, _ = canonical_critical(e, c, record_sequence=False)
        return result == c
    raise ValueError(f"unknown method {method!r}")


def enumerate_criticals(e: Engine, workers: int | None = None) -> list[Configuration]:
    return sorted(dual(e, f) for f in enumerate_z_superstables(e, workers))
