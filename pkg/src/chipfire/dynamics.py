"""Firing moves and stabilization.

The user supplies the redistribution matrix ``delta``; firing state ``i``
subtracts row ``i`` of ``delta``, which is column ``i`` of ``L = delta^T``.
All arithmetic below is written in terms of ``L``. State indices are 0-based
in the Python API.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CapExceeded, FormatError, IndexOutOfRange, NegativeInput, NotMMatrix
from .matcore import IntegerMatrix, MVerdict, RationalMatrix, m_verdict

DEFAULT_CAP = 10**7

Configuration = tuple[int, ...]


@dataclass(frozen=True)
class Engine:
    delta: IntegerMatrix
    L: IntegerMatrix = field(init=False)
    verdict: MVerdict = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.delta, IntegerMatrix):
            object.__setattr__(self, "delta", IntegerMatrix(self.delta))
        verdict = m_verdict(self.delta)
        if not verdict.is_m:
            raise NotMMatrix(f"not an M-matrix: {verdict.failure_witness}", verdict)
        # the transpose of an M-matrix is an M-matrix; its inverse is the transposed inverse
        object.__setattr__(self, "L", self.delta.T)
        object.__setattr__(self, "verdict", verdict)
        object.__setattr__(self, "_inverse",
                           RationalMatrix(zip(*verdict.inverse.rows)))

    @classmethod
    def from_L(cls, L) -> Engine:
        """Build from ``L`` directly (so ``delta = L^T``)."""
        if not isinstance(L, IntegerMatrix):
            L = IntegerMatrix(L)
        return cls(L.T)

    @property
    def n(self) -> int:
        return self.delta.n

    @property
    def L_inverse(self) -> RationalMatrix:
        return self._inverse

    def solve(self, b: Sequence[int]) -> tuple[Fraction, ...]:
        """Exact ``L^-1 b``."""
        return self._inverse.matvec(b)

    def apply(self, z: Sequence[int]) -> Configuration:
        """``L z``."""
        return self.L.matvec(z)

    def check(self, c: Sequence[int]) -> Configuration:
        c = tuple(int(x) for x in c)
        if len(c) != self.n:
            raise ValueError(f"configuration has {len(c)} entries, expected {self.n}")
        return c


def new_engine(delta) -> Engine:
    return Engine(delta)


@dataclass(frozen=True)
class FiringRecord:
    odometer: Configuration
    sequence: tuple[int, ...]
    result: Configuration

    def to_json(self) -> dict:
        # file formats label states from 1
        return {"odometer": list(self.odometer),
                "sequence": [i + 1 for i in self.sequence],
                "result": list(self.result)}


def _index(e: Engine, i: int) -> int:
    if not 0 <= i < e.n:
        raise IndexOutOfRange(f"state index {i} outside 0..{e.n - 1}")
    return i


def fire(e: Engine, c: Sequence[int], i: int) -> Configuration:
    """Unconditionally fire state ``i``: return ``c - L e_i``."""
    _index(e, i)
    return tuple(x - row[i] for x, row in zip(e.check(c), e.L.rows))


def eligible(e: Engine, c: Sequence[int], i: int) -> bool:
    _index(e, i)
    return c[i] >= e.L[i][i]


def d_vector(e: Engine) -> Configuration:
    """The maximal stable configuration: diagonal of ``L`` minus one."""
    return tuple(d - 1 for d in e.L.diagonal())


def stabilize(e: Engine, c: Sequence[int], policy: str = "smallest",
              seed: int | None = None, cap: int | None = DEFAULT_CAP,
              record_sequence: bool = True) -> FiringRecord:
    """Fire eligible states until none is left.

    ``policy`` is ``"smallest"`` (always the lowest eligible index),
    ``"random"`` (uniform among eligible states, seeded by ``seed``) or
    ``"batch"`` (fire the lowest eligible state as many consecutive times as
    it stays eligible). Every policy produces a legal firing sequence; by the
    abelian property they all end at the same result with the same odometer.
    With ``record_sequence=False`` the returned sequence is empty, which keeps
    memory flat for very long avalanches.
    """
    c = list(e.check(c))
    if any(x < 0 for x in c):
        raise NegativeInput(f"stabilize needs a nonnegative configuration, got {tuple(c)}")
    n = e.n
    cols = [e.L.column(i) for i in range(n)]
    diag = e.L.diagonal()
    odometer = [0] * n
    sequence: list[int] = []
    total = 0
    rng = random.Random(seed)

    if policy not in ("smallest", "random", "batch"):
        raise ValueError(f"unknown firing policy {policy!r}")

    while True:
        ready = [i for i in range(n) if c[i] >= diag[i]]
        if not ready:
            break
        if policy == "random":
            i = rng.choice(ready)
            times = 1
        else:
            i = ready[0]
            times = c[i] // diag[i] if policy == "batch" else 1
        total += times
        if cap is not None and total > cap:
            raise CapExceeded(f"more than {cap} fires without stabilizing")
        col = cols[i]
        for k in range(n):
            c[k] -= times * col[k]
        odometer[i] += times
        if record_sequence:
            sequence.extend([i] * times)
    return FiringRecord(tuple(odometer), tuple(sequence), tuple(c))


def parse_configuration(text: str) -> Configuration:
    """One line of space-separated integers, or a JSON array."""
    stripped = text.strip()
    try:
        if stripped.startswith("["):
            return tuple(int(x) for x in json.loads(stripped))
        lines = [ln for ln in stripped.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ValueError(f"expected one line, found {len(lines)}")
        return tuple(int(tok) for tok in lines[0].split())
    except (ValueError, TypeError) as exc:
        raise FormatError(f"bad configuration: {exc}") from exc
