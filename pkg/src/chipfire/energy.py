"""Energies ``E(q) = sum_i phi_i(|(L^-1 q)_i|)`` and their minimization.

Polynomial energies are exact rationals. Energies with ``log1p_abs`` terms
are kept symbolically as a rational part plus a multiset of log arguments
and compared exactly where possible, otherwise by interval arithmetic at
increasing precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import prod
from typing import Sequence

import mpmath
from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import mpf_lt

from .dynamics import Configuration, Engine
from .errors import FormatError
from .stability import canonical_z_superstable

PHI_NAMES = ("power", "log1p_abs")
KINDS = ("two_norm", "p_norm", "general")


@dataclass(frozen=True)
class Phi:
    fn: str
    p: int | None = None

    def __post_init__(self):
        if self.fn == "power":
            if not isinstance(self.p, int) or isinstance(self.p, bool) or self.p < 1:
                raise ValueError(f"power needs an integer p >= 1, got {self.p!r}")
        elif self.fn == "log1p_abs":
            if self.p is not None:
                raise ValueError("log1p_abs takes no parameter")
        else:
            raise ValueError(f"unknown function {self.fn!r}; expected one of {PHI_NAMES}")

    def to_json(self) -> dict:
        return {"fn": self.fn, "p": self.p} if self.fn == "power" else {"fn": self.fn}


@dataclass(frozen=True)
class EnergySpec:
    kind: str = "two_norm"
    p: int | None = None
    phis: tuple[Phi, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown energy kind {self.kind!r}")
        if self.kind == "p_norm" and (not isinstance(self.p, int) or self.p < 1):
            raise ValueError(f"p_norm needs an integer p >= 1, got {self.p!r}")
        if self.kind == "general" and not self.phis:
            raise ValueError("general energy needs a list of phis")
        object.__setattr__(self, "phis", tuple(self.phis))

    @classmethod
    def two_norm(cls) -> EnergySpec:
        return cls("two_norm")

    @classmethod
    def p_norm(cls, p: int) -> EnergySpec:
        return cls("p_norm", p=p)

    @classmethod
    def general(cls, phis: Sequence[Phi]) -> EnergySpec:
        return cls("general", phis=tuple(phis))

    @classmethod
    def uniform(cls, phi: Phi, n: int) -> EnergySpec:
        return cls("general", phis=(phi,) * n)

    def phi_list(self, n: int) -> tuple[Phi, ...]:
        if self.kind == "two_norm":
            return (Phi("power", 2),) * n
        if self.kind == "p_norm":
            return (Phi("power", self.p),) * n
        if len(self.phis) != n:
            raise ValueError(f"spec lists {len(self.phis)} functions for {n} states")
        return self.phis

    @classmethod
    def from_json(cls, data: dict) -> EnergySpec:
        try:
            kind = data["kind"]
            if kind == "general":
                phis = tuple(Phi(d["fn"], d.get("p")) for d in data["phis"])
                return cls.general(phis)
            return cls(kind, p=data.get("p"))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad energy spec: {exc}") from exc

    def to_json(self) -> dict:
        if self.kind == "two_norm":
            return {"kind": "two_norm"}
        if self.kind == "p_norm":
            return {"kind": "p_norm", "p": self.p}
        return {"kind": "general", "phis": [phi.to_json() for phi in self.phis]}


def _iv(ctx, x: Fraction):
    return ctx.mpf(x.numerator) / x.denominator


@total_ordering
@dataclass(frozen=True)
class EnergyValue:
    """``rational + sum(log(1 + a) for a in log_args)``, with ``log_args`` sorted."""

    rational: Fraction
    log_args: tuple[Fraction, ...] = ()

    @property
    def exact(self) -> Fraction | None:
        return None if self.log_args else self.rational

    def interval(self, bits: int = 128) -> tuple:
        """Raw ``(lo, hi)`` mpf endpoints enclosing the value."""
        ctx = MPIntervalContext()
        ctx.prec = bits
        total = _iv(ctx, self.rational)
        for a in self.log_args:
            total += ctx.log(1 + _iv(ctx, a))
        return total._mpi_

    def approx(self, digits: int = 30) -> tuple[str, str] | None:
        """Decimal midpoint and error bound, or None if the value is exact."""
        if not self.log_args:
            return None
        bits = int(digits * 3.33) + 20
        lo, hi = self.interval(bits)
        with mpmath.workprec(bits):
            lo, hi = mpmath.mp.make_mpf(lo), mpmath.mp.make_mpf(hi)
            mid = (lo + hi) / 2
            # the midpoint is rounded, so bound the error by the full width
            return mpmath.nstr(mid, digits), mpmath.nstr(hi - lo, 5)

    def _log_product(self) -> Fraction:
        return prod((1 + a for a in self.log_args), start=Fraction(1))

    def compare(self, other: EnergyValue) -> int:
        if self.rational == other.rational:
            # log is increasing, so compare the products of the arguments + 1
            lhs, rhs = self._log_product(), other._log_product()
            return (lhs > rhs) - (lhs < rhs)
        if not self.log_args and not other.log_args:
            return (self.rational > other.rational) - (self.rational < other.rational)
        # Rationals differ, so the values differ: a nonzero rational cannot equal
        # the log of a rational (Lindemann). Refinement always terminates.
        bits = 64
        while True:
            a, b = self.interval(bits), other.interval(bits)
            if mpf_lt(a[1], b[0]):
                return -1
            if mpf_lt(b[1], a[0]):
                return 1
            bits *= 2

    def __eq__(self, other):
        if not isinstance(other, EnergyValue):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other):
        if not isinstance(other, EnergyValue):
            return NotImplemented
        return self.compare(other) < 0

    def __hash__(self):
        return hash((self.rational, self._log_product()))

    def to_json(self) -> dict:
        exact = self.exact
        approx = self.approx()
        return {
            "exact": None if exact is None else str(exact),
            "approx": None if approx is None else {"value": approx[0], "error_bound": approx[1]},
        }


def energy(e: Engine, spec: EnergySpec, q: Sequence[int]) -> EnergyValue:
    q = e.check(q)
    coords = e.solve(q)
    rational = Fraction(0)
    logs = []
    for phi, x in zip(spec.phi_list(e.n), coords):
        if phi.fn == "power":
            rational += abs(x) ** phi.p
        else:
            logs.append(abs(x))
    return EnergyValue(rational, tuple(sorted(logs)))


def minimize_energy(e: Engine, spec: EnergySpec, f: Sequence[int]) -> Configuration:
    """The unique nonnegative minimizer of ``spec`` over the class of ``f``.

    The minimizer is the z-superstable representative for every admissible
    energy, so ``spec`` only gets validated here.
    """
    spec.phi_list(e.n)
    return canonical_z_superstable(e, f)


def energy_difference(e: Engine, f: Sequence[int], z: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Both closed forms of ``E(f - L z)`` for the two-norm energy.

    Returns ``(E(f) + z.z - 2 z.L^-1 f, E(f) - z.z - 2 z.L^-1 g)`` with
    ``g = f - L z``.
    """
    f = e.check(f)
    z = e.check(z)
    g = tuple(a - b for a, b in zip(f, e.apply(z)))
    F = e.solve(f)
    G = e.solve(g)
    ef = sum((x * x for x in F), Fraction(0))
    zz = sum(x * x for x in z)
    first = ef + zz - 2 * sum((a * b for a, b in zip(z, F)), Fraction(0))
    second = ef - zz - 2 * sum((a * b for a, b in zip(z, G)), Fraction(0))
    return first, second
