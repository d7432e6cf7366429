"""
Betti numbers of labelled complexes, Tor of Hecke algebras via the
normalized bar complex, and the stabilisation map on Tor.

Bar complex conventions. The augmentation ideal I = ker(eps) has basis
e_w = T_w - q^{l(w)}, w != 1. The normalized bar complex computing
Tor_d(1, 1) has C_d = I^{⊗d} and, since eps(I) = 0,
    d(a_1|...|a_d) = sum_{i=1}^{d-1} (-1)^i (a_1|...|a_i a_{i+1}|...|a_d).
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

from . import coxeter as cx
from . import hecke as hk
from .complexes import LabeledComplex
from .fields import ScalarConfig
from .linalg import Echelon, SparseMatrix, hstack, nullspace, rank

DEFAULT_GUARD = 5_000_000
STREAM_ABOVE = 400_000   # columns; beyond this bar ranks are streamed
MATRIX_UP_TO = 400       # explicit stabilisation matrices only for small chain groups


class IntegrityError(RuntimeError):
    """A boundary composite is nonzero."""


class SizeGuardError(RuntimeError):
    def __init__(self, estimate: int, limit: int, what: str = ""):
        self.estimate = estimate
        self.limit = limit
        super().__init__(f"{what} needs ~{estimate} basis tuples, guard is {limit}")


def guard_limit(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("HHL_GUARD")
    return int(env) if env else DEFAULT_GUARD


# --- homology of labelled complexes -------------------------------------------


@dataclass
class HomologyReport:
    complex: str
    meta: dict
    sc: ScalarConfig
    dims: dict
    ranks: dict
    betti: dict
    elapsed_ms: int | None = None

    def euler_ok(self) -> bool:
        chi_c = sum((-1) ** (r % 2) * v for r, v in self.dims.items())
        chi_h = sum((-1) ** (r % 2) * v for r, v in self.betti.items())
        return chi_c == chi_h

    def vanishes_through(self, top: int) -> bool:
        return all(b == 0 for r, b in self.betti.items() if r <= top)

    def to_json(self) -> dict:
        return {
            "complex": self.complex,
            **{k: v for k, v in self.meta.items() if k not in ("type",)},
            **self.sc.as_dict(),
            "dims": {str(r): v for r, v in sorted(self.dims.items())},
            "ranks": {str(r): v for r, v in sorted(self.ranks.items())},
            "betti": {str(r): v for r, v in sorted(self.betti.items())},
            "elapsed_ms": self.elapsed_ms,
        }


def check_d_squared(c: LabeledComplex) -> None:
    for r in range(c.lo + 1, c.hi + 1):
        if not (c.d(r - 1) @ c.d(r)).is_zero():
            raise IntegrityError(f"{c.name}: d_{r - 1} d_{r} != 0")


def homology_dims(c: LabeledComplex, check: bool = True, jobs: int = 1,
                  timed: bool = False) -> HomologyReport:
    """Betti numbers b_r = dim C_r - rank d_r - rank d_{r+1}."""
    t0 = time.perf_counter()
    if check:
        check_d_squared(c)
    degs = list(c.degrees())
    mats = [c.d(r) for r in degs]
    if jobs > 1 and len(mats) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rks = list(ex.map(rank, mats))
    else:
        rks = [rank(m) for m in mats]
    ranks = dict(zip(degs, rks))
    dims = c.dims()
    betti = {r: dims[r] - ranks[r] - ranks.get(r + 1, 0) for r in degs}
    if any(b < 0 for b in betti.values()):
        raise IntegrityError(f"{c.name}: negative Betti number {betti}")
    ms = round((time.perf_counter() - t0) * 1000) if timed else None
    return HomologyReport(c.name, dict(c.meta), c.sc, dims, ranks, betti, ms)


# --- the normalized bar complex ---------------------------------------------


class BarComplex:
    """Normalized bar complex of HB_n (kind 'B') or H_n (kind 'A') with trivial coefficients."""

    def __init__(self, kind: str, n: int, sc: ScalarConfig):
        if kind not in ("A", "B"):
            raise ValueError(f"kind must be 'A' or 'B', not {kind!r}")
        self.kind, self.n, self.sc = kind, n, sc
        # rank 0 is the ground field itself, with I = 0
        self.nonunit = [w for w in cx.elements(n, kind) if cx.length(w) > 0] if n > 0 else []
        self.pos = {w: i for i, w in enumerate(self.nonunit)}
        self._prod: dict = {}

    @property
    def rank(self) -> int:
        """dim I."""
        return len(self.nonunit)

    def dim(self, d: int) -> int:
        return self.rank ** d if d >= 0 else 0

    def product(self, a: int, b: int) -> dict:
        """Coordinates of e_a e_b in the basis {e_w}."""
        key = (a, b)
        got = self._prod.get(key)
        if got is not None:
            return got
        sc, F = self.sc, self.sc.field
        wa, wb = self.nonunit[a], self.nonunit[b]
        terms = dict(hk.mul(hk.t_of(wa, sc), hk.t_of(wb, sc)).terms)
        for w, c in ((wa, sc.qpow(cx.length(wb))), (wb, sc.qpow(cx.length(wa)))):
            terms[w] = F.sub(terms.get(w, F.zero), c)
        out = {self.pos[w]: c for w, c in terms.items() if c != F.zero and w in self.pos}
        self._prod[key] = out
        return out

    def encode(self, tup: tuple) -> int:
        k = 0
        for a in tup:
            k = k * self.rank + a
        return k

    def decode(self, idx: int, d: int) -> tuple:
        out = []
        for _ in range(d):
            idx, a = divmod(idx, self.rank)
            out.append(a)
        return tuple(reversed(out))

    def boundary_column(self, tup: tuple) -> dict:
        F = self.sc.field
        out: dict = {}
        for i in range(len(tup) - 1):
            sign = F.one if i % 2 else F.neg(F.one)  # (-1)^{i+1}, 0-indexed i
            head, tail = tup[:i], tup[i + 2:]
            for c, v in self.product(tup[i], tup[i + 1]).items():
                k = self.encode(head + (c,) + tail)
                out[k] = F.add(out.get(k, F.zero), F.mul(sign, v))
        return {k: v for k, v in out.items() if v != F.zero}

    def columns(self, d: int):
        for tup in itertools.product(range(self.rank), repeat=d):
            yield tup, self.boundary_column(tup)

    def boundary(self, d: int) -> SparseMatrix:
        """d_d : C_d -> C_{d-1} as a sparse matrix."""
        ent = {}
        for col, (_, vec) in enumerate(self.columns(d)):
            for row, v in vec.items():
                ent[(row, col)] = v
        return SparseMatrix(self.dim(d - 1), self.dim(d), self.sc.field, ent)

    def boundary_span(self, d: int, bound: int | None = None) -> Echelon:
        """Echelon basis of im d_d, stopping early once ``bound`` is reached."""
        ech = Echelon(self.sc.field, track=False, rref=False)
        if d < 2:
            return ech
        for _, vec in self.columns(d):
            if vec:
                ech.add(vec)
                if bound is not None and len(ech) >= bound:
                    break
        return ech

    def boundary_rank(self, d: int, bound: int | None = None) -> int:
        """rank d_d; Markowitz elimination on the full matrix unless it is huge,
        in which case columns are streamed until ``bound`` is reached."""
        if d < 2 or self.rank == 0:
            return 0
        if self.dim(d) <= STREAM_ABOVE or bound is None:
            return rank(self.boundary(d))
        return len(self.boundary_span(d, bound))


def group_order(kind: str, n: int) -> int:
    return factorial(n) * (2 ** n if kind == "B" else 1)


def tor_estimate(kind: str, n: int, d: int) -> int:
    """Size of the largest chain group touched when computing Tor_{<= d}."""
    order = group_order(kind, n)
    return max(order - 1, 0) ** (d + 1)


def _guard(kind, n, d, guard):
    limit = guard_limit(guard)
    est = tor_estimate(kind, n, d)
    if est > limit:
        raise SizeGuardError(est, limit, f"Tor_{d} of type {kind}, n={n}")


def bar_tor_dims(kind: str, n: int, d_max: int, sc: ScalarConfig,
                 guard: int | None = None) -> list:
    """[dim Tor_0, ..., dim Tor_{d_max}] of the trivial module over HB_n / H_n."""
    _guard(kind, n, d_max, guard)
    bar = BarComplex(kind, n, sc)
    out = []
    rk_prev = 0  # rank of d_d
    for d in range(d_max + 1):
        dim_d = bar.dim(d)
        rk_next = bar.boundary_rank(d + 1, bound=dim_d - rk_prev)
        out.append(dim_d - rk_prev - rk_next)
        rk_prev = rk_next
    return out


# --- stabilisation ---------------------------------------------------------------


@dataclass
class StabilizationReport:
    kind: str
    n: int
    d: int
    sc: ScalarConfig
    dim_source: int
    dim_target: int
    rank: int
    matrix: list | None = None

    @property
    def injective(self) -> bool:
        return self.rank == self.dim_source

    @property
    def surjective(self) -> bool:
        return self.rank == self.dim_target

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective

    @property
    def in_stable_range(self) -> bool:
        return 2 * self.d <= self.n - 1

    def to_json(self) -> dict:
        F = self.sc.field
        return {
            "type": self.kind, "n": self.n, "d": self.d,
            "dim_source": self.dim_source, "dim_target": self.dim_target,
            "rank": self.rank, "injective": self.injective,
            "surjective": self.surjective, "isomorphism": self.isomorphism,
            "stable_range": self.in_stable_range,
            "matrix": None if self.matrix is None else [[F.fmt(v) for v in row] for row in self.matrix],
        }


def _cycles(bar: BarComplex, d: int) -> list:
    F = bar.sc.field
    if d == 0:
        return [{0: F.one}]
    if d == 1:
        return [{i: F.one} for i in range(bar.dim(1))]
    return nullspace(bar.boundary(d))


def _homology_basis(bar: BarComplex, d: int, B: Echelon) -> list:
    """Cycles in degree d that reduce to a basis of Z_d / B_d."""
    seen = Echelon(bar.sc.field, track=False, rref=False)
    for v, _ in B.pivots.values():
        seen.add(v)
    return [z for z in _cycles(bar, d) if seen.add(z)]


def stabilization_map(n: int, d: int, sc: ScalarConfig, kind: str = "B",
                      guard: int | None = None) -> StabilizationReport:
    """Map on Tor_d induced by HB_{n-1} -> HB_n (or H_{n-1} -> H_n).

    rank = dim(f(Z_src) + B_tgt) - dim B_tgt. The explicit matrix between
    homology bases (cycles completed against boundaries in canonical order)
    is only produced for small chain groups; the verdicts do not depend on it.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _guard(kind, n, d, guard)
    F = sc.field
    src, tgt = BarComplex(kind, n - 1, sc), BarComplex(kind, n, sc)
    image = {i: tgt.pos[cx.embed(w, n)] for i, w in enumerate(src.nonunit)}

    def push(vec):
        out = {}
        for k, v in vec.items():
            out[tgt.encode(tuple(image[a] for a in src.decode(k, d)))] = v
        return out

    def tor_dim(bar):
        return bar.dim(d) - bar.boundary_rank(d) - bar.boundary_rank(d + 1)

    h_src, h_tgt = tor_dim(src), tor_dim(tgt)
    if h_src == 0 or h_tgt == 0:
        return StabilizationReport(kind, n, d, sc, h_src, h_tgt, 0, [[] for _ in range(h_tgt)])

    Z = [push(z) for z in _cycles(src, d)]
    Bt = tgt.boundary(d + 1) if d >= 1 else SparseMatrix.zeros(tgt.dim(d), 0, F)
    fz = SparseMatrix(tgt.dim(d), len(Z), F,
                      {(i, j): v for j, z in enumerate(Z) for i, v in z.items()})
    rk = rank(hstack([Bt, fz], F)) - rank(Bt)

    matrix = None
    if tgt.dim(d) <= MATRIX_UP_TO:
        matrix = _explicit_matrix(src, tgt, d, push)
    return StabilizationReport(kind, n, d, sc, h_src, h_tgt, rk, matrix)


def _explicit_matrix(src: BarComplex, tgt: BarComplex, d: int, push) -> list:
    F = src.sc.field
    B_src, B_tgt = src.boundary_span(d + 1), tgt.boundary_span(d + 1)
    H_src = _homology_basis(src, d, B_src)
    H_tgt = _homology_basis(tgt, d, B_tgt)
    target = Echelon(F, track=True, rref=True)
    for h in H_tgt:
        target.add(B_tgt.reduce(h))
    matrix = [[F.zero] * len(H_src) for _ in H_tgt]
    for j, z in enumerate(H_src):
        coords = target.coordinates(B_tgt.reduce(push(z)))
        if coords is None:
            raise IntegrityError("image of a cycle is not a cycle")
        for i, v in coords.items():
            matrix[i][j] = v
    return matrix
