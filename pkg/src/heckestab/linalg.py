"""
Sparse matrices over an exact field and the elimination routines behind
every homology computation.

Rank over Q runs fraction-free: each row is cleared to a primitive integer
vector and rows are combined by integer cross-multiplication, so no
`Fraction` arithmetic happens inside the elimination loop. Over F_p rows are
combined with plain modular arithmetic. Both pick pivots Markowitz-style:
the sparsest live row, then its sparsest column.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .fields import Field, PrimeField, Rationals


@dataclass
class SparseMatrix:
    """nrows x ncols matrix stored as {(row, col): nonzero scalar}."""

    nrows: int
    ncols: int
    field: Field
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        z = self.field.zero
        for (i, j) in self.entries:
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
        self.entries = {k: v for k, v in self.entries.items() if v != z}

    @classmethod
    def zeros(cls, nrows, ncols, F):
        return cls(nrows, ncols, F, {})

    @classmethod
    def identity(cls, n, F):
        return cls(n, n, F, {(i, i): F.one for i in range(n)})

    @classmethod
    def from_dense(cls, rows, F):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        ent = {(i, j): F(v) for i, row in enumerate(rows) for j, v in enumerate(row) if v != 0}
        return cls(nrows, ncols, F, ent)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self):
        return len(self.entries)

    def triplets(self):
        """Sorted (row, col, value) triplets."""
        return [(i, j, self.entries[(i, j)]) for (i, j) in sorted(self.entries)]

    def to_dense(self):
        z = self.field.zero
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self):
        rows = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def col_dicts(self):
        cols = [dict() for _ in range(self.ncols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def transpose(self):
        return SparseMatrix(self.ncols, self.nrows, self.field,
                            {(j, i): v for (i, j), v in self.entries.items()})

    def _same(self, other):
        if self.shape != other.shape or self.field != other.field:
            raise ValueError(f"shape/field mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same(other)
        F = self.field
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = F.add(ent.get(k, F.zero), v)
        return SparseMatrix(self.nrows, self.ncols, F, ent)

    def __neg__(self):
        F = self.field
        return SparseMatrix(self.nrows, self.ncols, F, {k: F.neg(v) for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        F = self.field
        a = F(a)
        return SparseMatrix(self.nrows, self.ncols, F, {k: F.mul(a, v) for k, v in self.entries.items()})

    def __matmul__(self, other):
        if self.ncols != other.nrows or self.field != other.field:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        rows = other.row_dicts()
        ent: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in rows[k].items():
                key = (i, j)
                ent[key] = F.add(ent.get(key, F.zero), F.mul(a, b))
        return SparseMatrix(self.nrows, other.ncols, F, ent)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.entries == other.entries

    def is_zero(self):
        return not self.entries

    def submatrix(self, rows, cols):
        """Restrict to the given row and column index lists (in that order)."""
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        ent = {}
        for (i, j), v in self.entries.items():
            a = rpos.get(i)
            if a is None:
                continue
            b = cpos.get(j)
            if b is not None:
                ent[(a, b)] = v
        return SparseMatrix(len(rows), len(cols), self.field, ent)

    def permuted(self, row_perm, col_perm):
        """Entry (i, j) moves to (row_perm[i], col_perm[j])."""
        return SparseMatrix(self.nrows, self.ncols, self.field,
                            {(row_perm[i], col_perm[j]): v for (i, j), v in self.entries.items()})

    def to_json(self):
        F = self.field
        return {"rows": self.nrows, "cols": self.ncols,
                "entries": [[i, j, F.fmt(v)] for i, j, v in self.triplets()]}


def hstack(blocks, F):
    nrows = blocks[0].nrows
    ent = {}
    off = 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack needs equal row counts")
        for (i, j), v in b.entries.items():
            ent[(i, j + off)] = v
        off += b.ncols
    return SparseMatrix(nrows, off, F, ent)


def vstack(blocks, F):
    ncols = blocks[0].ncols
    ent = {}
    off = 0
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack needs equal column counts")
        for (i, j), v in b.entries.items():
            ent[(i + off, j)] = v
        off += b.nrows
    return SparseMatrix(off, ncols, F, ent)


# --- rank ------------------------------------------------------------------


def _primitive_int_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    ints = {j: int(v * den) for j, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


def _eliminate(rows: list, combine) -> int:
    """Markowitz-ordered elimination; returns the rank.

    ``combine(target, pivot_row, pivot_col)`` must return the target row with
    the pivot column cleared (a new dict without zero entries).
    """
    live = {i: r for i, r in enumerate(rows) if r}
    col_rows: dict = {}
    for i, r in live.items():
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    heap = [(len(r), i) for i, r in live.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        size, i = heapq.heappop(heap)
        r = live.get(i)
        if r is None or len(r) != size:
            continue
        # sparsest column in the sparsest row; ties go to the smaller index
        c = min(r, key=lambda j: (len(col_rows[j]), j))
        del live[i]
        for j in r:
            col_rows[j].discard(i)
        rank += 1
        for k in sorted(col_rows[c]):
            old = live[k]
            new = combine(old, r, c)
            for j in old:
                if j not in new:
                    col_rows[j].discard(k)
            for j in new:
                if j not in old:
                    col_rows.setdefault(j, set()).add(k)
            if new:
                live[k] = new
                heapq.heappush(heap, (len(new), k))
            else:
                del live[k]
    return rank


def _combine_int(target: dict, piv: dict, c: int) -> dict:
    a, b = piv[c], target[c]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {j: a * v for j, v in target.items()}
    for j, v in piv.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    cont = 0
    for v in out.values():
        cont = gcd(cont, v)
        if cont == 1:
            break
    if cont > 1:
        out = {j: v // cont for j, v in out.items()}
    return out


def _combine_mod(p):
    def combine(target: dict, piv: dict, c: int) -> dict:
        f = target[c] * pow(piv[c], -1, p) % p
        out = dict(target)
        for j, v in piv.items():
            w = (out.get(j, 0) - f * v) % p
            if w:
                out[j] = w
            else:
                out.pop(j, None)
        return out
    return combine


def rank(m: SparseMatrix) -> int:
    """Exact rank over the matrix's field."""
    if m.is_zero():
        return 0
    # eliminate along the shorter dimension
    rows = m.row_dicts() if m.nrows <= m.ncols else m.col_dicts()
    F = m.field
    if isinstance(F, Rationals):
        return _eliminate([_primitive_int_row(r) for r in rows], _combine_int)
    if isinstance(F, PrimeField):
        return _eliminate([{j: v % F.p for j, v in r.items() if v % F.p} for r in rows],
                          _combine_mod(F.p))
    raise TypeError(f"unsupported field {F!r}")


# --- echelon bases (for explicit kernels and homology classes) -------------


class Echelon:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    With ``track`` each stored pivot vector remembers how it was built from
    the vectors fed to `add`, so membership tests can also return
    coordinates. With ``rref`` the basis is kept fully reduced (needed by
    `nullspace`); otherwise rows are only in echelon form, which is much
    cheaper for large spans.
    """

    def __init__(self, F: Field, track: bool = True, rref: bool = True):
        self.F = F
        self.track = track
        self.rref = rref
        self.pivots: dict = {}   # pivot index -> (vector with pivot entry 1, combo)
        self.order: list = []
        self.count = 0           # number of vectors fed in

    def _axpy(self, vec: dict, a, pv: dict) -> None:
        F = self.F
        for j, v in pv.items():
            w = F.sub(vec.get(j, F.zero), F.mul(a, v))
            if w == F.zero:
                vec.pop(j, None)
            else:
                vec[j] = w

    def _reduce(self, vec: dict, combo: dict | None):
        vec = dict(vec)
        combo = dict(combo) if combo is not None else None
        if self.rref:
            # pivot rows vanish on every other pivot column: one pass suffices
            hits = [p for p in vec if p in self.pivots]
        else:
            hits = None
            heap = [p for p in vec if p in self.pivots]
            heapq.heapify(heap)
        while True:
            if hits is not None:
                if not hits:
                    break
                p = hits.pop()
            else:
                if not heap:
                    break
                p = heapq.heappop(heap)
            a = vec.get(p)
            if a is None:
                continue
            pv, pc = self.pivots[p]
            if hits is None:
                for j in pv:
                    if j > p and j in self.pivots and j not in vec:
                        heapq.heappush(heap, j)
            self._axpy(vec, a, pv)
            if combo is not None:
                self._axpy(combo, a, pc)
        return vec, combo

    def reduce(self, vec: dict) -> dict:
        """The representative of vec modulo the span with all pivot coordinates zero (linear in vec)."""
        return self._reduce(vec, None)[0]

    def add(self, vec: dict) -> bool:
        """Feed a vector; True iff it was independent of the previous ones."""
        idx = self.count
        self.count += 1
        F = self.F
        red, combo = self._reduce(vec, {idx: F.one} if self.track else None)
        if not red:
            return False
        p = min(red)
        inv = F.inv(red[p])
        red = {j: F.mul(inv, v) for j, v in red.items()}
        if combo is not None:
            combo = {j: F.mul(inv, v) for j, v in combo.items()}
        if self.rref:
            # keep existing pivot vectors reduced against the new pivot
            for q in self.order:
                qv, qc = self.pivots[q]
                a = qv.get(p)
                if a is not None:
                    qv = dict(qv)
                    self._axpy(qv, a, red)
                    if combo is not None:
                        qc = dict(qc)
                        self._axpy(qc, a, combo)
                    self.pivots[q] = (qv, qc)
        self.pivots[p] = (red, combo)
        self.order.append(p)
        return True

    def __len__(self):
        return len(self.pivots)

    def coordinates(self, vec: dict):
        """Coefficients c with vec = sum c_i * (i-th fed vector), or None if vec is outside the span."""
        if not self.track:
            raise ValueError("coordinates need track=True")
        F = self.F
        red, combo = self._reduce(vec, {})
        if red:
            return None
        return {j: F.neg(v) for j, v in combo.items()}


def nullspace(m: SparseMatrix) -> list:
    """Basis of {x : m x = 0} as sparse dict vectors, via reduced row echelon form."""
    F = m.field
    ech = Echelon(F)
    for row in m.row_dicts():
        if row:
            ech.add(row)
    pivot_cols = set(ech.pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_cols:
            continue
        vec = {free: F.one}
        for p, (pv, _) in ech.pivots.items():
            a = pv.get(free)
            if a is not None:
                vec[p] = F.neg(a)
        basis.append(vec)
    return basis


def apply_to_vector(m: SparseMatrix, vec: dict, cols: list | None = None) -> dict:
    F = m.field
    cols = cols if cols is not None else m.col_dicts()
    out: dict = {}
    for j, a in vec.items():
        for i, v in cols[j].items():
            out[i] = F.add(out.get(i, F.zero), F.mul(a, v))
    return {i: v for i, v in out.items() if v != F.zero}
