"""Exact dense linear algebra: rank and right-kernel bases.

Two interchangeable elimination strategies sit behind one contract:

* "fraction"      - plain Gaussian elimination on field scalars;
* "fraction_free" - Bareiss one-step elimination on integer pairs
                    (denominators cleared per row), which avoids gcd
                    churn and is the default.

Both produce the same rank and, because pivot columns are processed left
to right, the same canonical kernel basis: one vector per free column with
the other free coordinates zero, rescaled so its first nonzero entry is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import ToolkitError
from .field import ONE, ZERO, FieldTag, Scalar, smallest_tag


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major scalars, length rows*cols
    tag: FieldTag

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], tag: FieldTag = None) -> "ExactMatrix":
        flat = []
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for v in row:
                flat.append(v if isinstance(v, Scalar) else Scalar(v))
        if tag is None:
            tag = smallest_tag(flat)
        return cls(len(rows), ncols, tuple(flat), tag)

    def at(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def matvec(self, vec: Sequence[Scalar]) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            acc = ZERO
            base = i * self.cols
            for j in range(self.cols):
                e = self.entries[base + j]
                v = vec[j]
                if e and v:
                    acc = acc + e * v
            out.append(acc)
        return out


# -- integer-pair helpers (a + b*w with integer a, b) -----------------------


def _emul(x, y):
    xa, xb = x
    ya, yb = y
    if xb == 0 and yb == 0:
        return (xa * ya, 0)
    q = xb * yb
    return (xa * ya - q, xa * yb + xb * ya - q)


def _ediv_exact(x, y):
    xa, xb = x
    ya, yb = y
    if yb == 0:
        qa, ra = divmod(xa, ya)
        qb, rb = divmod(xb, ya)
        if ra or rb:
            raise ToolkitError("internal: fraction-free division left a remainder")
        return (qa, qb)
    # multiply by the conjugate, then divide by the integer norm
    na, nb = _emul(x, (ya - yb, -yb))
    n = ya * ya - ya * yb + yb * yb
    qa, ra = divmod(na, n)
    qb, rb = divmod(nb, n)
    if ra or rb:
        raise ToolkitError("internal: fraction-free division left a remainder")
    return (qa, qb)


def _integer_rows(m: ExactMatrix) -> list:
    """Scale each row by the lcm of its denominators (kernel unchanged)."""
    data = []
    for i in range(m.rows):
        row = m.row(i)
        scale = lcm(*(d for s in row for d in (s.a.denominator, s.b.denominator))) if row else 1
        data.append([(int(s.a * scale), int(s.b * scale)) for s in row])
    return data


def _echelon_fraction_free(m: ExactMatrix):
    """Bareiss elimination; returns (pivot column list, echelon rows as Scalars)."""
    data = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    pivots = []
    prev = (1, 0)
    pr = 0
    for c in range(ncols):
        if pr >= nrows:
            break
        candidates = [i for i in range(pr, nrows) if data[i][c] != (0, 0)]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (sum(1 for e in data[i] if e != (0, 0)), i))
        if best != pr:
            data[pr], data[best] = data[best], data[pr]
        piv = data[pr][c]
        for i in range(pr + 1, nrows):
            row_i = data[i]
            row_p = data[pr]
            t = row_i[c]
            if t == (0, 0):
                for j in range(c + 1, ncols):
                    e = row_i[j]
                    if e != (0, 0):
                        row_i[j] = _ediv_exact(_emul(piv, e), prev)
            else:
                for j in range(c + 1, ncols):
                    ua, ub = _emul(piv, row_i[j])
                    va, vb = _emul(t, row_p[j])
                    row_i[j] = _ediv_exact((ua - va, ub - vb), prev)
                row_i[c] = (0, 0)
        pivots.append(c)
        prev = piv
        pr += 1
    erows = [
        [Scalar(Fraction(a), Fraction(b)) for a, b in data[i]] for i in range(len(pivots))
    ]
    return pivots, erows


def _echelon_fraction(m: ExactMatrix):
    """Textbook Gaussian elimination over the field."""
    data = [m.row(i) for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr >= nrows:
            break
        candidates = [i for i in range(pr, nrows) if data[i][c]]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (sum(1 for e in data[i] if e), i))
        if best != pr:
            data[pr], data[best] = data[best], data[pr]
        piv = data[pr][c]
        inv = piv.inverse()
        for i in range(pr + 1, nrows):
            t = data[i][c]
            if not t:
                continue
            factor = t * inv
            row_i = data[i]
            row_p = data[pr]
            for j in range(c, ncols):
                if row_p[j]:
                    row_i[j] = row_i[j] - factor * row_p[j]
        pivots.append(c)
        pr += 1
    return pivots, data[: len(pivots)]


_STRATEGIES = ("auto", "fraction", "fraction_free")


def _echelon(m: ExactMatrix, strategy: str):
    if strategy not in _STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "fraction":
        return _echelon_fraction(m)
    return _echelon_fraction_free(m)


def rank(m: ExactMatrix, strategy: str = "auto") -> int:
    pivots, _ = _echelon(m, strategy)
    return len(pivots)


def kernel_basis(m: ExactMatrix, strategy: str = "auto") -> list:
    """Basis of the right kernel; rank + len(basis) == cols always holds."""
    pivots, erows = _echelon(m, strategy)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for jf in free:
        vec = [ZERO] * m.cols
        vec[jf] = ONE
        for i in reversed(range(len(pivots))):
            pc = pivots[i]
            row = erows[i]
            acc = ZERO
            for j in range(pc + 1, m.cols):
                if row[j] and vec[j]:
                    acc = acc + row[j] * vec[j]
            if acc:
                vec[pc] = -acc / row[pc]
        lead = next(v for v in vec if v)
        if lead != ONE:
            inv = lead.inverse()
            vec = [v * inv for v in vec]
        basis.append(vec)
    return basis
