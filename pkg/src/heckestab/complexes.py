"""
Chain complexes as labelled bases plus sparse boundary matrices.

* C(n), C+-(n): (signed) injective words, face j deletes letter j.
* D(n), D+-(n): H ⊗_{H_{n-r-1}} 1 over the Hecke algebra of type A or B,
  face j is right multiplication by T_{n-r+j, n-r}.
* the filtration F_p of D+-(n), its quotients and their blocks M_m,
* the comparison complexes M^t and H_n ⊗ D^t(n-p), with the maps Phi and Psi.

Every induced module H ⊗_{H_J} 1 is realised on the basis of distinguished
representatives x in X_J^{-1}; a product term T_y ⊗ 1 is projected via the
length-additive factorisation y = x'z to q^{l(z)} T_{x'} ⊗ 1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from . import coxeter as cx
from . import hecke as hk
from .fields import ScalarConfig
from .linalg import SparseMatrix


@dataclass
class LabeledComplex:
    """A bounded chain complex with an ordered basis of labels in each degree.

    ``boundary[r]`` is the matrix of d_r : C_r -> C_{r-1}, rows indexed by
    ``basis[r-1]`` and columns by ``basis[r]``. ``faces[r]`` (optional) holds
    the unweighted face maps d_r^j.
    """

    name: str
    lo: int
    hi: int
    sc: ScalarConfig
    basis: dict
    boundary: dict
    meta: dict = field(default_factory=dict)
    faces: dict = field(default_factory=dict)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def dim(self, r: int) -> int:
        return len(self.basis.get(r, ()))

    def dims(self) -> dict:
        return {r: self.dim(r) for r in self.degrees()}

    def d(self, r: int) -> SparseMatrix:
        """d_r, also for degrees outside [lo, hi] (zero maps)."""
        m = self.boundary.get(r)
        if m is None:
            return SparseMatrix.zeros(self.dim(r - 1), self.dim(r), self.sc.field)
        return m

    def index(self, r: int) -> dict:
        return {lab: i for i, lab in enumerate(self.basis.get(r, ()))}

    def d_squared_zero(self) -> bool:
        return all((self.d(r - 1) @ self.d(r)).is_zero() for r in range(self.lo + 1, self.hi + 1))

    def restrict(self, keep: dict, name: str | None = None, **meta) -> "LabeledComplex":
        """Sub-/quotient complex on the basis labels accepted per degree.

        Rows and columns outside ``keep`` are dropped, which realises a
        subcomplex or a quotient whenever the dropped labels span one.
        """
        idx = {r: [i for i, lab in enumerate(self.basis.get(r, ())) if keep(r, lab)]
               for r in range(self.lo - 1, self.hi + 1)}
        basis = {r: [self.basis[r][i] for i in idx[r]] for r in self.degrees()}
        boundary = {r: self.d(r).submatrix(idx[r - 1], idx[r]) for r in self.degrees()}
        faces = {r: [f.submatrix(idx[r - 1], idx[r]) for f in fs] for r, fs in self.faces.items()}
        return LabeledComplex(name or self.name, self.lo, self.hi, self.sc, basis, boundary,
                              {**self.meta, **meta}, faces)

    def suspend(self, k: int) -> "LabeledComplex":
        """Sigma^k: degree r moves to r + k, differentials unchanged."""
        return LabeledComplex(
            f"S^{k} {self.name}", self.lo + k, self.hi + k, self.sc,
            {r + k: b for r, b in self.basis.items()},
            {r + k: m for r, m in self.boundary.items()},
            {**self.meta, "suspension": self.meta.get("suspension", 0) + k},
            {r + k: fs for r, fs in self.faces.items()},
        )

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "complex": self.name,
            **{k: v for k, v in self.meta.items()},
            **self.sc.as_dict(),
            "degrees": [self.lo, self.hi],
            "basis": {str(r): [cx.perm_str(lab) for lab in self.basis[r]] for r in self.degrees()},
            "boundary": {str(r): self.d(r).to_json() for r in self.degrees()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


# --- injective words --------------------------------------------------------


def injective_words(n: int, length: int, signed: bool) -> list:
    out = []
    for letters in itertools.permutations(range(1, n + 1), length):
        if signed:
            for signs in itertools.product((1, -1), repeat=length):
                out.append(tuple(a * s for a, s in zip(letters, signs)))
        else:
            out.append(letters)
    return sorted(out)


def build_C(n: int, signed: bool, sc: ScalarConfig) -> LabeledComplex:
    """The complex of (signed) injective words on n letters, degrees -1..n-1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    F = sc.field
    basis = {r: injective_words(n, r + 1, signed) for r in range(-1, n)}
    boundary, faces = {}, {}
    for r in range(-1, n):
        tgt = {w: i for i, w in enumerate(basis.get(r - 1, ()))}
        ent: dict = {}
        fs = []
        for j in range(r + 1):
            fent = {}
            for col, w in enumerate(basis[r]):
                row = tgt[w[:j] + w[j + 1:]]
                fent[(row, col)] = F.one
                key = (row, col)
                ent[key] = F.add(ent.get(key, F.zero), F.one if j % 2 == 0 else F.neg(F.one))
            fs.append(SparseMatrix(len(tgt), len(basis[r]), F, fent))
        boundary[r] = SparseMatrix(len(tgt), len(basis[r]), F, ent)
        faces[r] = fs
    name = "Cpm" if signed else "C"
    return LabeledComplex(name, -1, n - 1, sc, basis, boundary,
                          {"type": name, "n": n, "signed": signed}, faces)


# --- induced Hecke modules H ⊗_{H_J} 1 --------------------------------------


@lru_cache(maxsize=None)
def _reps(J: frozenset, n: int, kind: str) -> tuple:
    return tuple(cx.coset_reps(J, n, "right", kind))


@lru_cache(maxsize=200000)
def _project(y: tuple, J: frozenset) -> tuple:
    return cx.right_coset_min(y, J)


def project_terms(terms: dict, J: frozenset, index: dict, sc: ScalarConfig, scale=None) -> dict:
    """Write sum c_y T_y ⊗ 1 in the basis {T_x ⊗ 1 : x in X_J^{-1}}: returns {index: coeff}."""
    F = sc.field
    out: dict = {}
    for y, c in terms.items():
        x, lz = _project(y, J)
        v = F.mul(c, sc.qpow(lz))
        if scale is not None:
            v = F.mul(scale, v)
        i = index[x]
        out[i] = F.add(out.get(i, F.zero), v)
    return {i: v for i, v in out.items() if v != F.zero}


def right_mult_matrix(src: list, letters: tuple, tgt_J: frozenset, tgt_index: dict,
                      n: int, sc: ScalarConfig, scale=None) -> SparseMatrix:
    """Matrix of T_x ⊗ 1 -> T_x T_{letters} ⊗ 1 between induced modules."""
    ent = {}
    for col, x in enumerate(src):
        terms = hk.mul_word(hk.t_of(x, sc), letters).terms
        for row, v in project_terms(terms, tgt_J, tgt_index, sc, scale).items():
            ent[(row, col)] = v
    return SparseMatrix(len(tgt_index), len(src), sc.field, ent)


def right_elem_matrix(src: list, elem: hk.HeckeElement, tgt_J: frozenset, tgt_index: dict,
                      sc: ScalarConfig) -> SparseMatrix:
    """Matrix of T_x ⊗ 1 -> T_x * elem ⊗ 1."""
    ent = {}
    for col, x in enumerate(src):
        terms = hk.mul(hk.t_of(x, sc), elem).terms
        for row, v in project_terms(terms, tgt_J, tgt_index, sc).items():
            ent[(row, col)] = v
    return SparseMatrix(len(tgt_index), len(src), sc.field, ent)


def _induced_complex(name, n, kind, lo, hi, sc, parabolic, face_word, factor=None, meta=None):
    """Complex with C_r = H ⊗_{H_{parabolic(r)}} 1 and d_r = factor * sum_j (-1)^j q^{-j} d_r^j,
    where d_r^j multiplies on the right by T_{face_word(r, j)}."""
    F = sc.field
    basis, boundary, faces = {}, {}, {}
    for r in range(lo, hi + 1):
        basis[r] = list(_reps(parabolic(r), n, kind))
    for r in range(lo, hi + 1):
        if r - 1 < lo:
            boundary[r] = SparseMatrix.zeros(0, len(basis[r]), F)
            faces[r] = []
            continue
        J = parabolic(r - 1)
        index = {x: i for i, x in enumerate(basis[r - 1])}
        total = SparseMatrix.zeros(len(basis[r - 1]), len(basis[r]), F)
        fs = []
        for j in range(r + 1):
            fm = right_mult_matrix(basis[r], face_word(r, j), J, index, n, sc)
            fs.append(fm)
            w = sc.qpow(-j) if j % 2 == 0 else F.neg(sc.qpow(-j))
            if factor is not None:
                w = F.mul(factor, w)
            total = total + fm.scale(w)
        boundary[r] = total
        faces[r] = fs
    return LabeledComplex(name, lo, hi, sc, basis, boundary, dict(meta or {}), faces)


def parabolic_D(n: int, kind: str):
    gens = cx.gens_B if kind == "B" else cx.gens_S
    return lambda r: gens(n - r - 1)


def build_D(n: int, kind: str, sc: ScalarConfig) -> LabeledComplex:
    """D+-(n) (kind 'B') or D(n) (kind 'A'), degrees -1..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind not in ("A", "B"):
        raise ValueError(f"kind must be 'A' or 'B', not {kind!r}")
    name = "Dpm" if kind == "B" else "D"
    return _induced_complex(
        name, n, kind, -1, n - 1, sc, parabolic_D(n, kind),
        lambda r, j: hk.t_ab_word(n - r + j, n - r),
        meta={"type": name, "n": n})


# --- the filtration ---------------------------------------------------------


def level_of(label, r: int) -> int:
    """Filtration level of a D+-(n) basis label: the place of its last negative letter (0 if none)."""
    prof = cx.negative_profile(label, r)
    return prof[0] if prof else 0


@dataclass
class FiltrationLevel:
    p: int
    mask: dict  # degree -> list[bool] over the D+-(n) basis

    def members(self, r: int) -> list:
        return [i for i, b in enumerate(self.mask.get(r, ())) if b]


def filtration(n: int, sc: ScalarConfig, dpm: LabeledComplex | None = None) -> list:
    """F_0 ⊆ F_1 ⊆ ... ⊆ F_n as basis masks over D+-(n)."""
    dpm = dpm or build_D(n, "B", sc)
    levels = []
    for p in range(n + 1):
        mask = {r: [level_of(lab, r) <= min(r + 1, p) for lab in dpm.basis[r]]
                for r in dpm.degrees()}
        levels.append(FiltrationLevel(p, mask))
    return levels


def filtration_subcomplex(n: int, p: int, sc: ScalarConfig, dpm: LabeledComplex | None = None):
    dpm = dpm or build_D(n, "B", sc)
    return dpm.restrict(lambda r, lab: level_of(lab, r) <= min(r + 1, p),
                        name=f"F{p}", filtration_p=p)


def quotient_complex(n: int, p: int, sc: ScalarConfig, dpm: LabeledComplex | None = None):
    """F_p / F_{p-1}, on the basis labels of F_p not in F_{p-1}."""
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    dpm = dpm or build_D(n, "B", sc)
    return dpm.restrict(lambda r, lab: level_of(lab, r) == p and p <= r + 1,
                        name=f"F{p}/F{p - 1}", quotient_p=p)


def block_decompose(quotient: LabeledComplex, p: int) -> list:
    """Split F_p/F_{p-1} into the subcomplexes M_m, one per m with m_1 = p."""
    out = []
    for m in cx.mvectors(p, first=p):
        sub = quotient.restrict(lambda r, lab, m=m: cx.negative_profile(lab, r) == m,
                                name=f"M{cx.mvector_str(m)}", block=cx.mvector_str(m))
        out.append((m, sub))
    return out


def is_block_diagonal(quotient: LabeledComplex) -> bool:
    for r in quotient.degrees():
        src, tgt = quotient.basis[r], quotient.basis.get(r - 1, [])
        for (i, j) in quotient.d(r).entries:
            if cx.negative_profile(tgt[i], r - 1) != cx.negative_profile(src[j], r):
                return False
    return True


# --- M^t, D^t and the maps Phi, Psi ------------------------------------------


def _check_npt(n, p, t):
    if not 1 <= t <= p <= n:
        raise ValueError(f"need 1 <= t <= p <= n, got n={n}, p={p}, t={t}")


def parabolic_M(n: int, p: int, t: int):
    return lambda r: cx.gens_S(n - r - p - 1, shift=t)


def build_M_t(n: int, p: int, t: int, sc: ScalarConfig, with_factor: bool = True) -> LabeledComplex:
    """M^t: degree r is H_n ⊗ over <T_{1+t}, ..., T_{n-r-p-2+t}>, r = -1..n-p-1.

    Face j multiplies by T_{n-r+j, n-p-r+t}; the differential carries the
    leading (-1)^p q^{-p} unless ``with_factor`` is False.
    """
    _check_npt(n, p, t)
    F = sc.field
    factor = None
    if with_factor:
        factor = sc.qpow(-p) if p % 2 == 0 else F.neg(sc.qpow(-p))
    return _induced_complex(
        f"M^{t}", n, "A", -1, n - p - 1, sc, parabolic_M(n, p, t),
        lambda r, j: hk.t_ab_word(n - r + j, n - p - r + t),
        factor=factor,
        meta={"type": "M^t", "n": n, "p": p, "t": t, "leading_factor": with_factor})


def build_D_t(n: int, p: int, t: int, sc: ScalarConfig, induced: bool = True) -> LabeledComplex:
    """D^t(n-p), the copy of D(n-p) shifted by +t.

    With ``induced`` (default) this is H_n ⊗_{H^t_{n-p}} D^t(n-p), realised on
    the same bases as M^t; otherwise the complex over H^t_{n-p} alone.
    """
    _check_npt(n, p, t)
    if induced:
        return _induced_complex(
            f"H_n(x)D^{t}({n - p})", n, "A", -1, n - p - 1, sc, parabolic_M(n, p, t),
            lambda r, j: hk.t_ab_word(n - p - r + j + t, n - p - r + t),
            meta={"type": "HxD^t", "n": n, "p": p, "t": t})
    # inside the parabolic subgroup generated by s_{1+t}, ..., s_{n-p-1+t}
    sub = cx.gens_S(n - p, shift=t)
    cplx = _induced_complex(
        f"D^{t}({n - p})", n, "A", -1, n - p - 1, sc, parabolic_M(n, p, t),
        lambda r, j: hk.t_ab_word(n - p - r + j + t, n - p - r + t),
        meta={"type": "D^t", "n": n, "p": p, "t": t})
    return cplx.restrict(lambda r, lab: cx.in_parabolic(lab, sub))


def phi_maps(n: int, p: int, m: tuple, sc: ScalarConfig, block: LabeledComplex,
             mt: LabeledComplex | None = None) -> dict:
    """Phi_r : (M^t)_r -> (M_m)_{p+r}, x ⊗ 1 -> T_x V(m + n - 1 - (p+r)) ⊗ 1."""
    t = len(m)
    mt = mt or build_M_t(n, p, t, sc)
    maps = {}
    for r in mt.degrees():
        shifted = tuple(a + n - 1 - (p + r) for a in m)
        V = hk.V_of(shifted, n, sc)
        J = cx.gens_B(n - (p + r) - 1)
        index = block.index(p + r)
        maps[r] = _right_elem_into(mt.basis[r], V, J, index, sc)
    return maps


def _right_elem_into(src, elem, J, index, sc):
    """Like right_elem_matrix, but failing loudly if a term leaves the target basis."""
    F = sc.field
    ent = {}
    for col, x in enumerate(src):
        terms = hk.mul(hk.t_of(x, sc), elem).terms
        for y, c in terms.items():
            xp, lz = _project(y, J)
            if xp not in index:
                raise AssertionError(f"image of {x} leaves the target block at {xp}")
            key = (index[xp], col)
            ent[key] = F.add(ent.get(key, F.zero), F.mul(c, sc.qpow(lz)))
    return SparseMatrix(len(index), len(src), F, ent)


def psi_maps(n: int, p: int, t: int, sc: ScalarConfig, mt: LabeledComplex,
             inverse: bool = False, xi=None) -> dict:
    """Psi_r : M^t_r -> (H_n ⊗ D^t(n-p))_r, x ⊗ 1 -> T_x xi(r) ⊗ 1 (or xi(r)^{-1})."""
    maps = {}
    for r in mt.degrees():
        if xi is not None:
            elem = xi(n, p, t, r, sc)
        elif inverse:
            elem = hk.xi_inverse(n, p, t, r, sc)
        else:
            elem = hk.xi_elem(n, p, t, r, sc)
        J = parabolic_M(n, p, t)(r)
        maps[r] = right_elem_matrix(mt.basis[r], elem, J, mt.index(r), sc)
    return maps


def is_chain_map(maps: dict, src: LabeledComplex, tgt: LabeledComplex, shift: int = 0) -> bool:
    """d_tgt f_r == f_{r-1} d_src for maps f_r : src_r -> tgt_{r+shift}."""
    F = src.sc.field
    for r, f in maps.items():
        lhs = tgt.d(r + shift) @ f
        if r - 1 in maps:
            rhs = maps[r - 1] @ src.d(r)
        else:
            rhs = SparseMatrix.zeros(lhs.nrows, lhs.ncols, F)
        if lhs != rhs:
            return False
    return True


# --- labels and counting -----------------------------------------------------


def word_label_map(dpm: LabeledComplex, r: int) -> list:
    """Injective word (x(n-r), ..., x(n)) of each basis label of a D-complex."""
    return [cx.injective_word(x, r) for x in dpm.basis[r]]


def expected_dim_Cpm(n: int, r: int) -> int:
    return 2 ** (r + 1) * factorial(n) // factorial(n - r - 1)


def expected_dim_C(n: int, r: int) -> int:
    return factorial(n) // factorial(n - r - 1)


def expected_dim_quotient(n: int, p: int, r: int) -> int:
    if r < p - 1:
        return 0
    return 2 ** (p - 1) * factorial(n) // factorial(n - r - 1)


def expected_block_count(p: int, t: int | None = None) -> int:
    return 2 ** (p - 1) if t is None else comb(p - 1, t - 1)


BUILDERS = {
    "C": lambda n, sc: build_C(n, False, sc),
    "Cpm": lambda n, sc: build_C(n, True, sc),
    "D": lambda n, sc: build_D(n, "A", sc),
    "Dpm": lambda n, sc: build_D(n, "B", sc),
}


def largest_chain_group(kind: str, n: int) -> int:
    """Largest dimension of the named complex, for the size guard."""
    if kind in ("C", "D"):
        return max(expected_dim_C(n, r) for r in range(-1, n))
    return max(expected_dim_Cpm(n, r) for r in range(-1, n))
