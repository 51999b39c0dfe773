"""Exact sparse linear algebra over the rationals.

Every homology computation in this package reduces to ranks, kernels and
quotients of sparse matrices with Fraction entries.  Everything here is
exact: no tolerances, no floats.  Matrices and bases are treated as
immutable values; all functions return fresh objects and never mutate
their arguments, so they are safe to call from concurrent workers.

Vectors are dicts mapping coordinate index -> Fraction, with no stored
zeros.  Elimination pivots on the entry of smallest bit size within the
leading column, which keeps coefficient growth tame on the block
matrices produced by the cosimplicial differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Vec = dict  # {int: Fraction}, no zero entries


class NotInSpan(Exception):
    """Raised when a vector is not in the span of the given basis."""


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix; entries maps (row, col) -> Fraction."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of range")
            if v == 0:
                raise ValueError("stored zero entry")

    @staticmethod
    def from_entries(rows, cols, entries):
        clean = {}
        for (r, c), v in entries.items():
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        return SparseMatrix(rows, cols, clean)

    @staticmethod
    def from_columns(rows, columns):
        """columns: list of {row: value} dicts."""
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                v = Fraction(v)
                if v:
                    entries[(r, c)] = v
        return SparseMatrix(rows, len(columns), entries)

    def column(self, c) -> Vec:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def apply(self, vec: Vec) -> Vec:
        """Matrix times sparse column vector."""
        out = {}
        cols = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, []).append((r, v))
        for c, x in vec.items():
            for r, v in cols.get(c, ()):
                s = out.get(r, Fraction(0)) + v * x
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out

    def is_zero(self):
        return not self.entries


@dataclass(frozen=True)
class SubspaceBasis:
    """A list of linearly independent sparse vectors in Q^ambient_dim."""

    ambient_dim: int
    vectors: tuple

    def __post_init__(self):
        for v in self.vectors:
            for r in v:
                if not 0 <= r < self.ambient_dim:
                    raise ValueError("vector coordinate out of range")

    @property
    def dim(self):
        return len(self.vectors)


def _bit_size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _rref(row_dicts):
    """Reduced row echelon form of a list of sparse rows.

    Pivot columns are taken in ascending order; among candidate rows for
    a column the one with the smallest-bit-size leading entry wins.
    Returns (pivots, rows) where pivots is a list of (col, row_index)
    in echelon order and rows are the fully reduced rows (pivot entry 1,
    pivot column cleared from every other row).
    """
    work = [dict(r) for r in row_dicts if r]
    done = []  # (pivot_col, row_dict)
    while work:
        lead = min(min(r) for r in work)
        cand = [i for i, r in enumerate(work) if lead in r]
        besti = min(cand, key=lambda i: (_bit_size(work[i][lead]), i))
        piv = work.pop(besti)
        inv = 1 / piv[lead]
        piv = {c: v * inv for c, v in piv.items()}
        nxt = []
        for r in work:
            f = r.get(lead)
            if f:
                r = _axpy(r, -f, piv)
            if r:
                nxt.append(r)
        work = nxt
        for c, prow in done:
            f = prow.get(lead)
            if f:
                done_row = _axpy(prow, -f, piv)
                prow.clear()
                prow.update(done_row)
        done.append((lead, piv))
    done.sort(key=lambda t: t[0])
    return [c for c, _ in done], [r for _, r in done]


def _axpy(x: Vec, a: Fraction, y: Vec) -> Vec:
    """x + a*y for sparse vectors."""
    out = dict(x)
    for c, v in y.items():
        s = out.get(c, Fraction(0)) + a * v
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    return out


def scale(a, x: Vec) -> Vec:
    a = Fraction(a)
    if not a:
        return {}
    return {c: a * v for c, v in x.items()}


def add(x: Vec, y: Vec) -> Vec:
    return _axpy(x, Fraction(1), y)


def rank(m: SparseMatrix) -> int:
    pivots, _ = _rref(m.row_dicts())
    return len(pivots)


def kernel_basis(m: SparseMatrix) -> SubspaceBasis:
    """Basis of ker(m) as column vectors; dim = cols - rank."""
    pivots, rows = _rref(m.row_dicts())
    pivot_of = {c: i for i, c in enumerate(pivots)}
    free = [c for c in range(m.cols) if c not in pivot_of]
    vecs = []
    for f in free:
        v = {f: Fraction(1)}
        for c, row in zip(pivots, rows):
            a = row.get(f)
            if a:
                v[c] = -a
        vecs.append(v)
    return SubspaceBasis(m.cols, tuple(vecs))


def _reduce_against(v: Vec, echelon):
    """Reduce v against echelon rows [(pivot_col, row)], return remainder."""
    v = dict(v)
    for c, row in echelon:
        f = v.get(c)
        if f:
            v = _axpy(v, -f, row)
    return v


class QuotientError(Exception):
    """Raised when the alleged subspace is not contained in the total space."""


def quotient(sub: SubspaceBasis, total: SubspaceBasis):
    """Representatives of total/sub: (dim, representative vectors).

    Representatives are original vectors of `total` that extend `sub` to
    a basis of span(total), taken in the order given (so a deterministic
    tie-break order on `total` yields reproducible representatives).
    Raises QuotientError unless span(sub) is contained in span(total).
    """
    if sub.ambient_dim != total.ambient_dim:
        raise QuotientError("ambient dimension mismatch")
    _, total_rows = _rref(list(total.vectors))
    echelon = [(min(r), r) for r in total_rows]
    for v in sub.vectors:
        if _reduce_against(v, echelon):
            raise QuotientError("subspace not contained in total space")
    _, sub_rows = _rref(list(sub.vectors))
    acc = [(min(r), r) for r in sub_rows]
    reps = []
    for v in total.vectors:
        rem = _reduce_against(v, acc)
        if rem:
            reps.append(dict(v))
            lead = min(rem)
            inv = 1 / rem[lead]
            acc.append((lead, {c: x * inv for c, x in rem.items()}))
            acc.sort(key=lambda t: t[0])
    return len(reps), reps


def quotient_dim(sub: SubspaceBasis, total: SubspaceBasis) -> int:
    dim, _ = quotient(sub, total)
    return dim


def coordinates(v: Vec, basis: SubspaceBasis):
    """Coordinates of v in the given basis; raises NotInSpan if absent."""
    # Solve  sum_j c_j basis[j] = v  by eliminating the augmented rows
    # indexed by ambient coordinates.
    ambient = set(v)
    for b in basis.vectors:
        ambient.update(b)
    nb = len(basis.vectors)
    rows = []
    for r in sorted(ambient):
        row = {}
        for j, b in enumerate(basis.vectors):
            a = b.get(r)
            if a:
                row[j] = a
        rhs = v.get(r)
        if rhs:
            row[nb] = rhs
        if row:
            rows.append(row)
    pivots, red = _rref(rows)
    coords = [Fraction(0)] * nb
    for c, row in zip(pivots, red):
        if c == nb:
            raise NotInSpan("vector not in span of basis")
        others = [cc for cc in row if cc != c and cc != nb]
        if others:
            # Basis vectors are required to be independent, so back
            # substitution never leaves a free basis column in use.
            raise NotInSpan("basis is not independent")
        coords[c] = row.get(nb, Fraction(0))
    return coords


def linear_combination(coords, basis: SubspaceBasis) -> Vec:
    out = {}
    for a, b in zip(coords, basis.vectors):
        out = _axpy(out, Fraction(a), b)
    return out


def independent(vectors, ambient_dim) -> bool:
    pivots, _ = _rref(list(vectors))
    return len(pivots) == len(vectors)
