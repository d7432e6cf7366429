"""
Exhaustive verification suites: Hecke-algebra identities over all valid
index tuples, and the structural statements about the filtration of D+-(n).

Each check returns a `Check` carrying a count and the first counterexamples,
so a failing run can be reported (and reproduced) tuple by tuple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb, factorial

from . import complexes as C
from . import coxeter as cx
from . import hecke as hk
from .fields import ScalarConfig
from .homology import homology_dims
from .linalg import SparseMatrix, rank

MAX_RECORDED = 5


@dataclass
class Check:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    nfail: int = 0
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.nfail == 0

    def record(self, holds: bool, **where):
        self.checked += 1
        if not holds:
            self.nfail += 1
            if len(self.failures) < MAX_RECORDED:
                self.failures.append({k: _plain(v) for k, v in where.items()})

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "checked": self.checked,
               "failed": self.nfail, "counterexamples": self.failures}
        if self.info:
            out["info"] = self.info
        return out


def _plain(v):
    if isinstance(v, tuple):
        return list(v)
    return v


# --- identity families ------------------------------------------------------


def check_u_times_t(n_max: int, sc: ScalarConfig) -> Check:
    """U_m T_{a,b} in its three shapes: m > a > b, a > m >= b, a = b (all inside rank n).

    a = m > b is in none of the shapes (the product is not reduced there).
    """
    ch = Check("U_m*T_ab")
    for n in range(1, n_max + 1):
        for m in range(1, n + 1):
            for b in range(1, m + 1):
                for a in range(b, n + 1):
                    if a == m and a > b:
                        continue
                    lhs = hk.mul(hk.U_m(m, n, sc), hk.t_ab(a, b, n, sc))
                    if a == b:
                        rhs = hk.U_m(m, n, sc)
                    elif m > a:
                        rhs = hk.mul(hk.t_ab(a + 1, b + 1, n, sc), hk.U_m(m, n, sc))
                    else:
                        rhs = hk.mul(hk.t_ab(a, b + 1, n, sc), hk.U_m(m + 1, n, sc))
                    ch.record(lhs == rhs, n=n, m=m, a=a, b=b)
    return ch


def commutes_past(m: tuple, k: int) -> bool:
    """The hypothesis under which T_k V(m) = V(m) T_{k-t} follows by induction:
    after passing i factors the index k - i must stay below m_{i+1}."""
    return all(k - i < mi for i, mi in enumerate(m))


def t_past_v_tuples(n_max: int, strict_reading: bool = False):
    """(n, m, k) with t < k < m_1; by default restricted by `commutes_past`."""
    for n in range(1, n_max + 1):
        for top in range(1, n + 1):
            for m in cx.mvectors(top, first=top):
                t = len(m)
                for k in range(t + 1, m[0]):
                    if strict_reading or commutes_past(m, k):
                        yield n, m, k


def check_t_past_v(n_max: int, sc: ScalarConfig, strict_reading: bool = False) -> Check:
    """T_k V(m) = V(m) T_{k-t}."""
    ch = Check("T_k*V(m)" + (" [t<k<m_1 only]" if strict_reading else ""))
    for n, m, k in t_past_v_tuples(n_max, strict_reading):
        t = len(m)
        V = hk.V_of(m, n, sc)
        lhs = hk.mul(hk.t_gen(k, n, sc), V)
        rhs = hk.mul(V, hk.t_gen(k - t, n, sc))
        ch.record(lhs == rhs, n=n, m=m, k=k)
    return ch


def xi_tuples(n_max: int):
    for n in range(1, n_max + 1):
        for p in range(1, n + 1):
            for t in range(1, p + 1):
                for r in range(0, n - p):
                    for j in range(r + 1):
                        yield n, p, t, r, j


def perturbed_xi(n, p, t, r, sc):
    """Negative control: xi(r) with one extra generator on the right."""
    return hk.mul_word(hk.xi_elem(n, p, t, r, sc), (1,)) if n > 1 else hk.xi_elem(n, p, t, r, sc).scale(2)


def check_xi_intertwines(n_max: int, sc: ScalarConfig, xi=None) -> Check:
    """T_{n-r+j, n-r-p+t} xi(r-1) = xi(r) T_{n-p-r+j+t, n-r-p+t}."""
    xi = xi or hk.xi_elem
    ch = Check("xi intertwining" + (" [perturbed]" if xi is not hk.xi_elem else ""))
    for n, p, t, r, j in xi_tuples(n_max):
        lo = n - r - p + t
        lhs = hk.mul(hk.t_ab(n - r + j, lo, n, sc), xi(n, p, t, r - 1, sc))
        rhs = hk.mul(xi(n, p, t, r, sc), hk.t_ab(n - p - r + j + t, lo, n, sc))
        ch.record(lhs == rhs, n=n, p=p, t=t, r=r, j=j)
    return ch


def check_xi_shape(n_max: int, sc: ScalarConfig) -> Check:
    """xi(r) is a single T_w with l(w) = (r+1)(p-t), and xi(r)^{-1} xi(r) = 1."""
    ch = Check("xi shape and inverse")
    for n in range(1, n_max + 1):
        for p in range(1, n + 1):
            for t in range(1, p + 1):
                for r in range(-1, n - p):
                    x = hk.xi_elem(n, p, t, r, sc)
                    single = len(x.terms) == 1 and next(iter(x.terms.values())) == sc.field.one
                    w = next(iter(x.terms)) if single else None
                    good = single and cx.length(w) == (r + 1) * (p - t)
                    inv = hk.mul(hk.xi_inverse(n, p, t, r, sc), x) == hk.HeckeElement.one(n, sc)
                    ch.record(good and inv, n=n, p=p, t=t, r=r)
    return ch


def random_reduced_word(g: tuple, rng: random.Random) -> tuple:
    """A reduced word for g, peeling a uniformly chosen right descent each step."""
    letters = []
    while cx.length(g) > 0:
        s = rng.choice(sorted(cx.descents(g, "right")))
        letters.append(s)
        g = cx.rmul_gen(g, s)
    return tuple(reversed(letters))


def check_reduced_word_independence(n_max: int, sc: ScalarConfig, samples: int = 200,
                                    seed: int = 0) -> Check:
    """Products along two independently chosen reduced words of w agree, and equal T_w."""
    ch = Check("reduced-word independence")
    rng = random.Random(seed)
    for n in range(1, n_max + 1):
        els = cx.elements(n, "B")
        pool = els if len(els) <= 48 else [rng.choice(els) for _ in range(samples)]
        for g in pool:
            w1, w2 = random_reduced_word(g, rng), random_reduced_word(g, rng)
            e1, e2 = hk.word_element(w1, n, sc), hk.word_element(w2, n, sc)
            ch.record(e1 == e2 == hk.t_of(g, sc) and cx.word_to_perm(w1, n) == g,
                      n=n, w=cx.perm_str(g), word1=list(w1), word2=list(w2))
    return ch


def check_conjugation(n_max: int) -> Check:
    """s_i^{u_n} = u_n^{-1} s_i u_n is s_{i-1} for i >= 2; s_1^{u_n} is no generator of B_{n-1}."""
    ch = Check("conjugation by u_n")
    for n in range(2, n_max + 1):
        un = cx.u_m_elem(n, n)
        gens_small = {cx.gen_perm(s, n) for s in cx.gens_B(n - 1)}
        for i in range(1, n):
            c = cx.conjugate(cx.gen_perm(i, n), un)
            if i >= 2:
                ch.record(c == cx.gen_perm(i - 1, n), n=n, i=i)
            else:
                ch.record(c not in gens_small, n=n, i=i)
    return ch


def identity_suite(n_max: int, sc: ScalarConfig, perturb_xi: bool = False) -> list:
    xi = perturbed_xi if perturb_xi else None
    return [
        check_u_times_t(n_max, sc),
        check_t_past_v(n_max, sc),
        check_xi_intertwines(n_max, sc, xi),
        check_xi_shape(n_max, sc),
        check_reduced_word_independence(n_max, sc),
        check_conjugation(n_max),
    ]


# --- structure of the filtration ---------------------------------------------


def _maps_into(m: SparseMatrix, cols_ok, rows_ok) -> bool:
    return all(rows_ok[i] for (i, j) in m.entries if cols_ok[j])


def _same_matrix_under(a: SparseMatrix, b: SparseMatrix, rows: list, cols: list) -> bool:
    """a[i, j] == b[rows[i], cols[j]] entrywise."""
    if a.shape != b.shape:
        return False
    return {(rows[i], cols[j]): v for (i, j), v in a.entries.items()} == b.entries


def same_complex_under(a: C.LabeledComplex, b: C.LabeledComplex, relabel) -> bool:
    """Boundary matrices agree after sending labels of a through relabel(r, label)."""
    for r in a.degrees():
        ib_r, ib_s = b.index(r), b.index(r - 1)
        try:
            cols = [ib_r[relabel(r, x)] for x in a.basis[r]]
            rows = [ib_s[relabel(r - 1, x)] for x in a.basis.get(r - 1, [])]
        except KeyError:
            return False
        if len(cols) != b.dim(r) or not _same_matrix_under(a.d(r), b.d(r), rows, cols):
            return False
    return True


def q1_matches_words(n: int, signed: bool = True) -> bool:
    """At q = 1 the D-complex is the complex of (signed) injective words."""
    from .fields import Rationals
    sc1 = ScalarConfig(Rationals(), 1)
    d = C.build_D(n, "B" if signed else "A", sc1)
    c = C.build_C(n, signed, sc1)
    return same_complex_under(d, c, lambda r, x: cx.injective_word(x, r))


def structure_suite(n: int, sc: ScalarConfig, betti: bool = True) -> list:
    dpm = C.build_D(n, "B", sc)
    levels = C.filtration(n, sc, dpm)
    checks = []

    ch = Check("filtration nested, F_n everything")
    for p in range(1, n + 1):
        for r in dpm.degrees():
            lo, hi = levels[p - 1].mask[r], levels[p].mask[r]
            ch.record(all(h or not l for l, h in zip(lo, hi)), p=p, r=r)
    ch.record(all(all(v) for v in levels[n].mask.values()), p=n, r="all")
    checks.append(ch)

    ch = Check("F_p closed under the boundary")
    for p in range(n + 1):
        mk = levels[p].mask
        for r in range(dpm.lo + 1, dpm.hi + 1):
            ch.record(_maps_into(dpm.d(r), mk[r], mk[r - 1]), p=p, r=r)
    checks.append(ch)

    ch = Check("faces j < p land in F_{p-1}")
    for p in range(1, n + 1):
        for r in range(dpm.lo + 1, dpm.hi + 1):
            for j in range(min(p, r + 1)):
                ch.record(_maps_into(dpm.faces[r][j], levels[p].mask[r], levels[p - 1].mask[r - 1]),
                          p=p, r=r, j=j)
    checks.append(ch)

    ch = Check("F_0 is the type A complex")
    f0 = C.filtration_subcomplex(n, 0, sc, dpm)
    ch.record(same_complex_under(f0, C.build_D(n, "A", sc), lambda r, x: x), n=n)
    checks.append(ch)

    dims_ch = Check("quotient dimensions")
    blocks_ch = Check("block count and partition")
    diag_ch = Check("quotient boundary block diagonal")
    phi_ch = Check("Phi: invertible chain map S^p M^t -> M_m")
    psi_ch = Check("Psi: invertible chain map M^t -> H_n (x) D^t")
    psi_scaled_ch = Check("c^(r+1) Psi: chain map with the leading factor kept")
    betti_ch = Check("Betti numbers of quotients decompose")
    table = {}
    for p in range(1, n + 1):
        Q = C.quotient_complex(n, p, sc, dpm)
        for r in Q.degrees():
            exp = C.expected_dim_quotient(n, p, r)
            table[f"{p},{r}"] = Q.dim(r)
            dims_ch.record(Q.dim(r) == exp, p=p, r=r, got=Q.dim(r), expected=exp)
        blocks = C.block_decompose(Q, p)
        by_t: dict = {}
        for m, _ in blocks:
            by_t[len(m)] = by_t.get(len(m), 0) + 1
        covered = all(sum(b.dim(r) for _, b in blocks) == Q.dim(r) for r in Q.degrees())
        blocks_ch.record(len(blocks) == 2 ** (p - 1) and covered
                         and all(by_t.get(t, 0) == comb(p - 1, t - 1) for t in range(1, p + 1)),
                         p=p, blocks=len(blocks), by_t=by_t)
        diag_ch.record(C.is_block_diagonal(Q) and Q.d_squared_zero(), p=p)

        mts, mts_plain = {}, {}
        for t in range(1, p + 1):
            mts[t] = C.build_M_t(n, p, t, sc)
            mts_plain[t] = C.build_M_t(n, p, t, sc, with_factor=False)
        for m, block in blocks:
            t = len(m)
            phi = C.phi_maps(n, p, m, sc, block, mts[t])
            inv = all(f.nrows == f.ncols and rank(f) == f.nrows for f in phi.values())
            phi_ch.record(inv and C.is_chain_map(phi, mts[t], block, shift=p),
                          p=p, m=m)
        for t in range(1, p + 1):
            mt, mt0 = mts[t], mts_plain[t]
            dt = C.build_D_t(n, p, t, sc)
            psi = C.psi_maps(n, p, t, sc, mt0)
            psi_inv = C.psi_maps(n, p, t, sc, mt0, inverse=True)
            inverse_ok = all((psi_inv[r] @ psi[r]) == SparseMatrix.identity(mt0.dim(r), sc.field)
                             for r in mt0.degrees())
            psi_ch.record(inverse_ok and C.is_chain_map(psi, mt0, dt), p=p, t=t)
            c = sc.qpow(-p) if p % 2 == 0 else sc.field.neg(sc.qpow(-p))
            scaled = {r: f.scale(sc.field.pow(c, r + 1)) for r, f in psi.items()}
            psi_scaled_ch.record(C.is_chain_map(scaled, mt, dt), p=p, t=t)

        if betti:
            hq = homology_dims(Q).betti
            hmt = {t: homology_dims(mts[t]).betti for t in range(1, p + 1)}
            hd = homology_dims(C.build_D(n - p, "A", sc)).betti if n > p else {-1: 1}
            index = factorial(n) // factorial(n - p)
            for r in Q.degrees():
                predicted = sum(comb(p - 1, t - 1) * hmt[t].get(r - p, 0) for t in range(1, p + 1))
                betti_ch.record(hq[r] == predicted, p=p, r=r, got=hq[r], predicted=predicted)
            for t in range(1, p + 1):
                for r, b in hmt[t].items():
                    betti_ch.record(b == index * hd.get(r, 0), p=p, t=t, r=r,
                                    got=b, predicted=index * hd.get(r, 0))
            for m, block in blocks:
                hb = homology_dims(block).betti
                t = len(m)
                betti_ch.record(all(hb[r] == hmt[t].get(r - p, 0) for r in block.degrees()),
                                p=p, m=m)
    dims_ch.info["dims"] = table
    checks += [dims_ch, blocks_ch, diag_ch, phi_ch, psi_ch, psi_scaled_ch]
    if betti:
        checks.append(betti_ch)

    if sc.q == sc.field.one:
        ch = Check("q = 1 quotients match signed words")
        cpm = C.build_C(n, True, sc)
        for p in range(1, n + 1):
            Q = C.quotient_complex(n, p, sc, dpm)

            def level(r, w):
                # all negatives sit in the first p places iff the last one does
                neg = [i + 1 for i, a in enumerate(w) if a < 0]
                return neg[-1] if neg else 0
            Qw = cpm.restrict(lambda r, w, p=p: level(r, w) == p and p <= r + 1)
            ch.record(same_complex_under(Q, Qw, lambda r, x: cx.injective_word(x, r)), p=p)
        checks.append(ch)
    return checks
