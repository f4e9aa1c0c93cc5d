"""Exact integer and rational linear algebra, and the M-matrix decision.

Nothing in this module touches floating point. Integer matrices hold Python
ints; rational results hold :class:`fractions.Fraction`, which is always kept
in lowest terms with a positive denominator.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import FormatError, Singular


def _square(rows, kind) -> tuple[tuple, ...]:
    rows = tuple(tuple(kind(x) for x in row) for row in rows)
    n = len(rows)
    if n < 1:
        raise ValueError("matrix must have at least one row")
    for row in rows:
        if len(row) != n:
            raise ValueError(f"matrix is not square: row of length {len(row)} in {n}x{n}")
    return rows


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    raise TypeError(f"expected an integer entry, got {x!r}")


@dataclass(frozen=True)
class IntegerMatrix:
    """Square matrix of arbitrary-precision integers, stored row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]]):
        object.__setattr__(self, "rows", _square(rows, _as_int))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    @property
    def T(self) -> IntegerMatrix:
        return IntegerMatrix(zip(*self.rows))

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.n:
            raise ValueError(f"vector of length {len(v)} does not match dimension {self.n}")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        object.__setattr__(self, "rows", _square(rows, Fraction))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def matvec(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.n:
            raise ValueError(f"vector of length {len(v)} does not match dimension {self.n}")
        return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in self.rows)

    def entries(self) -> Iterable[Fraction]:
        for row in self.rows:
            yield from row

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries())


def is_z_matrix(M: IntegerMatrix) -> bool:
    """True iff every off-diagonal entry is <= 0. The diagonal is not inspected."""
    return _positive_off_diagonal(M) is None


def _positive_off_diagonal(M):
    for i, row in enumerate(M.rows):
        for j, x in enumerate(row):
            if i != j and x > 0:
                return i, j
    return None


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = M.to_lists()
    n = M.n
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def invert_exact(M: IntegerMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals.

    Raises :class:`Singular` if the determinant is zero.
    """
    n = M.n
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.rows)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            raise Singular("matrix is singular")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return RationalMatrix(row[n:] for row in a)


@dataclass(frozen=True)
class MVerdict:
    """Outcome of the M-matrix decision.

    ``failure_witness`` is None when ``is_m`` holds; otherwise it is a dict
    naming the first violated condition (``z_matrix``, ``singular`` or
    ``inverse_nonnegative``) and, where it applies, the offending position.
    """

    is_z: bool
    is_m: bool
    inverse: RationalMatrix | None = None
    certificate: tuple[Fraction, ...] | None = None
    failure_witness: dict | None = None

    def to_json(self) -> dict:
        out = {"is_z": self.is_z, "is_m": self.is_m}
        out["inverse"] = (None if self.inverse is None
                          else [[str(x) for x in row] for row in self.inverse])
        out["certificate"] = (None if self.certificate is None
                              else [str(x) for x in self.certificate])
        out["failure_witness"] = self.failure_witness
        return out


def m_verdict(M: IntegerMatrix) -> MVerdict:
    """Decide whether ``M`` is a non-singular M-matrix.

    The deciding test is: Z-matrix, invertible, and entrywise nonnegative
    inverse. On success the vector ``x = M^-1 (1, ..., 1)`` is attached as a
    certificate; it is nonnegative and ``M x`` is the all-ones vector.
    """
    pos = _positive_off_diagonal(M)
    if pos is not None:
        i, j = pos
        return MVerdict(False, False, failure_witness={
            "condition": "z_matrix", "position": [i, j], "value": M[i][j]})
    try:
        inv = invert_exact(M)
    except Singular:
        return MVerdict(True, False, failure_witness={"condition": "singular"})
    for i, row in enumerate(inv):
        for j, x in enumerate(row):
            if x < 0:
                return MVerdict(True, False, inverse=inv, failure_witness={
                    "condition": "inverse_nonnegative", "position": [i, j], "value": str(x)})
    certificate = tuple(sum(row, Fraction(0)) for row in inv)
    return MVerdict(True, True, inverse=inv, certificate=certificate)


def solve(M: IntegerMatrix, b: Sequence[int], inverse: RationalMatrix | None = None):
    if inverse is None:
        inverse = invert_exact(M)
    return inverse.matvec(b)


def equivalence_witness(L: IntegerMatrix, f: Sequence[int], g: Sequence[int],
                        inverse: RationalMatrix | None = None) -> tuple[int, ...] | None:
    """Return the integer ``z`` with ``g - f = L z``, or None if there is none.

    ``inverse`` may be supplied to skip re-inverting ``L``.
    """
    if len(f) != L.n or len(g) != L.n:
        raise ValueError("configuration length does not match matrix dimension")
    x = solve(L, [b - a for a, b in zip(f, g)], inverse)
    if any(v.denominator != 1 for v in x):
        return None
    return tuple(v.numerator for v in x)


def common_denominator(v: Iterable[Fraction]) -> int:
    return lcm(*(Fraction(x).denominator for x in v))


def random_m_matrix(rng: random.Random, n: int, style: str = "row",
                    max_off: int = 3, max_extra: int = 3) -> IntegerMatrix:
    """Draw a random M-matrix for testing.

    ``row``: off-diagonals uniform in [-max_off, 0], each diagonal set to its
    row's absolute off-diagonal sum plus a uniform 1..max_extra, so the matrix
    is strictly row diagonally dominant. ``column``: the transpose of such a
    matrix. ``reject``: Z-matrices with smaller diagonals, kept only when the
    exact M-matrix test accepts them; these often have both negative row and
    negative column sums.
    """
    if style == "column":
        return random_m_matrix(rng, n, "row", max_off, max_extra).T
    if style == "row":
        rows = [[-rng.randint(0, max_off) if i != j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            rows[i][i] = -sum(rows[i]) + rng.randint(1, max_extra)
        return IntegerMatrix(rows)
    if style == "reject":
        while True:
            rows = [[-rng.randint(0, max_off) if i != j else 0 for j in range(n)] for i in range(n)]
            for i in range(n):
                rows[i][i] = rng.randint(1, max(1, -sum(rows[i]) + max_extra - 1))
            M = IntegerMatrix(rows)
            if m_verdict(M).is_m:
                return M
    raise ValueError(f"unknown style {style!r}")


def parse_matrix(text: str) -> IntegerMatrix:
    """Parse the matrix text format (``n`` then ``n`` rows) or its JSON form."""
    stripped = text.strip()
    try:
        if stripped.startswith("{"):
            data = json.loads(stripped)
            rows = data["rows"]
            n = int(data["n"])
        else:
            lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
            n = int(lines[0][0])
            if len(lines[0]) != 1:
                raise ValueError("first line must hold only n")
            rows = [[int(tok) for tok in ln] for ln in lines[1:]]
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, found {len(rows)}")
        return IntegerMatrix(rows)
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise FormatError(f"bad matrix: {exc}") from exc


def format_matrix(M: IntegerMatrix) -> str:
    lines = [str(M.n)] + [" ".join(str(x) for x in row) for row in M.rows]
    return "\n".join(lines) + "\n"
