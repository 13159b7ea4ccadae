"""Exact linear algebra over the rationals: rank, kernel bases, and
span membership.

Matrices are stored sparsely as one dict per row.  Elimination is plain
exact Gauss-Jordan over ``Fraction`` with the pivot always the first
nonzero entry in canonical column order, which makes every reduced form
deterministic.  Returned kernel vectors and solutions are re-verified by
exact multiplication before they are handed back.
"""

from fractions import Fraction

ZERO = Fraction(0)


class RationalMatrix:
    """Sparse exact-rational matrix: ``rows[i]`` maps column -> Fraction."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [dict() for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            self.rows = [
                {c: Fraction(v) for c, v in row.items() if v != 0} for row in rows
            ]

    @classmethod
    def from_dense(cls, data) -> "RationalMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v != 0:
                    m.rows[i][j] = Fraction(v)
        return m

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = Fraction(1)
        return m

    def set(self, i: int, j: int, v) -> None:
        v = Fraction(v)
        if v == 0:
            self.rows[i].pop(j, None)
        else:
            self.rows[i][j] = v

    def get(self, i: int, j: int) -> Fraction:
        return self.rows[i].get(j, ZERO)

    def mul_vector(self, vec) -> list[Fraction]:
        out = []
        for row in self.rows:
            out.append(sum((c * vec[j] for j, c in row.items()), ZERO))
        return out

    def transpose(self) -> "RationalMatrix":
        t = RationalMatrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                t.rows[j][i] = v
        return t

    def to_dense(self) -> list[list[Fraction]]:
        return [[row.get(j, ZERO) for j in range(self.ncols)] for row in self.rows]

    def to_str_rows(self) -> list[list[str]]:
        """Canonical serialization: entries as 'p/q' strings."""
        return [[str(v) for v in row] for row in self.to_dense()]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"RationalMatrix({self.nrows}x{self.ncols})"


def _axpy(dst: dict, c: Fraction, src: dict) -> None:
    # dst += c * src, dropping zeros
    for j, v in src.items():
        s = dst.get(j, 0) + c * v
        if s:
            dst[j] = s
        else:
            dst.pop(j, None)


def _rref_pivots(rows) -> dict[int, dict]:
    """Streaming Gauss-Jordan: returns ``pivot column -> normalized row``.

    Every returned row has coefficient 1 at its pivot column and zeros at
    all other pivot columns (fully reduced form).
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        r = dict(row)
        while r:
            j = min(r)  # first nonzero in canonical column order
            piv = pivots.get(j)
            if piv is None:
                inv = 1 / r[j]
                if inv != 1:
                    r = {c: v * inv for c, v in r.items()}
                for prow in pivots.values():
                    if j in prow:
                        _axpy(prow, -prow[j], r)
                pivots[j] = r
                break
            _axpy(r, -r[j], piv)
    return pivots


def rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    return len(_rref_pivots(m.rows))


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Exact right-kernel basis; one vector per free column.

    ``len(result) == ncols - rank`` and every vector satisfies M v = 0
    (checked here before returning).
    """
    pivots = _rref_pivots(m.rows)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * m.ncols
        vec[f] = Fraction(1)
        for p, prow in pivots.items():
            c = prow.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    for vec in basis:
        if any(v != 0 for v in m.mul_vector(vec)):
            raise AssertionError("kernel vector failed replay check")
    return basis


def solve_in_span(m: RationalMatrix, target) -> list[Fraction] | None:
    """Exact coefficients x with M x = target, or None when target is
    outside the column span.  Free variables are set to zero, so the
    answer is deterministic."""
    if len(target) != m.nrows:
        raise ValueError("target length must equal the row count")
    aug_col = m.ncols
    aug_rows = []
    for i, row in enumerate(m.rows):
        r = dict(row)
        t = Fraction(target[i])
        if t != 0:
            r[aug_col] = t
        aug_rows.append(r)
    pivots = _rref_pivots(aug_rows)
    if aug_col in pivots:
        return None
    x = [ZERO] * m.ncols
    for p, prow in pivots.items():
        x[p] = prow.get(aug_col, ZERO)
    lhs = m.mul_vector(x)
    if any(a != Fraction(b) for a, b in zip(lhs, target)):
        raise AssertionError("solution failed replay check")
    return x
