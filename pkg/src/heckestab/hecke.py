"""
Iwahori-Hecke algebras HB_n (and H_n inside it) in the T_w basis.

Coefficients live in an exact field with q specialised (see
`fields.ScalarConfig`). A `HeckeElement` is a finitely supported map
w -> coefficient; zero coefficients are never stored, so equality is
structural. Elements of H_n are simply the elements supported on unsigned
permutations.
"""

from __future__ import annotations

from typing import Iterable

from . import coxeter as cx
from .fields import ScalarConfig


class ContextError(ValueError):
    """Operands live in different algebras."""


class HeckeElement:
    __slots__ = ("terms", "n", "sc")

    def __init__(self, terms: dict, n: int, sc: ScalarConfig):
        F = sc.field
        self.terms = {w: c for w, c in terms.items() if c != F.zero}
        self.n = n
        self.sc = sc

    # construction

    @classmethod
    def zero(cls, n, sc):
        return cls({}, n, sc)

    @classmethod
    def one(cls, n, sc):
        return cls({cx.identity(n): sc.field.one}, n, sc)

    def _like(self, terms):
        out = HeckeElement.__new__(HeckeElement)
        out.terms, out.n, out.sc = terms, self.n, self.sc
        return out

    def _check(self, other):
        if not isinstance(other, HeckeElement):
            raise TypeError(f"cannot combine HeckeElement with {type(other).__name__}")
        if other.n != self.n or other.sc != self.sc:
            raise ContextError(
                f"rank/scalar mismatch: ({self.n}, {self.sc.label}) vs ({other.n}, {other.sc.label})")

    # linear structure

    def __add__(self, other):
        self._check(other)
        F = self.sc.field
        terms = dict(self.terms)
        for w, c in other.terms.items():
            v = F.add(terms.get(w, F.zero), c)
            if v == F.zero:
                terms.pop(w, None)
            else:
                terms[w] = v
        return self._like(terms)

    def __neg__(self):
        F = self.sc.field
        return self._like({w: F.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        F = self.sc.field
        a = F(a)
        if a == F.zero:
            return self._like({})
        return self._like({w: F.mul(a, c) for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.sc == other.sc and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def coeff(self, w):
        return self.terms.get(tuple(w), self.sc.field.zero)

    def support(self):
        return cx.canonical_sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        F = self.sc.field
        parts = [f"{F.fmt(self.terms[w])}*T{cx.perm_str(w)}" for w in self.support()]
        return " + ".join(parts)

    def to_json(self) -> list:
        F = self.sc.field
        return [[cx.perm_str(w), F.fmt(self.terms[w])] for w in self.support()]


def t_of(g, sc: ScalarConfig) -> HeckeElement:
    """The basis element T_g."""
    g = tuple(g)
    return HeckeElement({g: sc.field.one}, len(g), sc)


def t_gen(s: int, n: int, sc: ScalarConfig) -> HeckeElement:
    return t_of(cx.gen_perm(s, n), sc)


def _mul_gen_terms(terms: dict, s: int, side: str, sc: ScalarConfig) -> dict:
    F = sc.field
    q = sc.q
    qm1 = F.sub(q, F.one)
    out: dict = {}
    for w, c in terms.items():
        if side == "right":
            ws = cx.rmul_gen(w, s)
            down = cx.is_right_descent(w, s)
        else:
            ws = cx.lmul_gen(s, w)
            down = cx.is_left_descent(s, w)
        if not down:
            out[ws] = F.add(out.get(ws, F.zero), c)
        else:
            out[ws] = F.add(out.get(ws, F.zero), F.mul(q, c))
            out[w] = F.add(out.get(w, F.zero), F.mul(qm1, c))
    return {w: c for w, c in out.items() if c != F.zero}


def mul_gen(x: HeckeElement, s: int, side: str = "right") -> HeckeElement:
    """x*T_s (side='right') or T_s*x (side='left')."""
    cx.check_gen(s, x.n)
    if side not in ("right", "left"):
        raise ValueError(f"bad side {side!r}")
    return x._like(_mul_gen_terms(x.terms, s, side, x.sc))


def mul_word(x: HeckeElement, letters: Iterable[int], side: str = "right") -> HeckeElement:
    """x*T_{s_1}*...*T_{s_k} (side='right') or T_{s_1}*...*T_{s_k}*x (side='left')."""
    letters = tuple(letters)
    terms = x.terms
    if side == "left":
        letters = letters[::-1]
    for s in letters:
        cx.check_gen(s, x.n)
        terms = _mul_gen_terms(terms, s, side, x.sc)
    return x._like(terms)


def mul(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """Product in the Hecke algebra: expand each T_w of y along a reduced word."""
    x._check(y)
    F = x.sc.field
    acc: dict = {}
    for w, c in y.terms.items():
        part = x.terms
        for s in cx._reduced_letters(w):
            part = _mul_gen_terms(part, s, "right", x.sc)
        for v, d in part.items():
            acc[v] = F.add(acc.get(v, F.zero), F.mul(c, d))
    return x._like({v: d for v, d in acc.items() if d != F.zero})


def product(factors: Iterable[HeckeElement], n: int, sc: ScalarConfig) -> HeckeElement:
    out = HeckeElement.one(n, sc)
    for f in factors:
        out = mul(out, f)
    return out


def word_element(letters: Iterable[int], n: int, sc: ScalarConfig) -> HeckeElement:
    """T_{s_1} T_{s_2} ... T_{s_k} for an arbitrary (not necessarily reduced) word."""
    return mul_word(HeckeElement.one(n, sc), letters)


def augment(x: HeckeElement):
    """Action on the trivial module: sum of c_w q^{l(w)}."""
    F = x.sc.field
    total = F.zero
    for w, c in x.terms.items():
        total = F.add(total, F.mul(c, x.sc.qpow(cx.length(w))))
    return total


def gen_inverse(s: int, n: int, sc: ScalarConfig) -> HeckeElement:
    """T_s^{-1} = q^{-1} (T_s + 1 - q)."""
    F = sc.field
    qinv = sc.qpow(-1)
    one = cx.identity(n)
    return HeckeElement({
        cx.gen_perm(s, n): qinv,
        one: F.mul(qinv, F.sub(F.one, sc.q)),
    }, n, sc)


def word_inverse(letters: Iterable[int], n: int, sc: ScalarConfig) -> HeckeElement:
    """(T_{s_1} ... T_{s_k})^{-1} = T_{s_k}^{-1} ... T_{s_1}^{-1}."""
    out = HeckeElement.one(n, sc)
    for s in reversed(tuple(letters)):
        out = mul(out, gen_inverse(s, n, sc))
    return out


# --- named elements --------------------------------------------------------


def t_ab_word(a: int, b: int) -> tuple:
    """Letters of T_{a,b} = T_{a-1} T_{a-2} ... T_b (empty when a == b)."""
    if a < b:
        raise ValueError(f"T_{{a,b}} needs a >= b, got ({a}, {b})")
    return tuple(range(a - 1, b - 1, -1))


def t_ab(a: int, b: int, n: int, sc: ScalarConfig) -> HeckeElement:
    if b < 1 or a > n:
        raise cx.RankError(f"T_{{{a},{b}}} not defined in rank {n}")
    return word_element(t_ab_word(a, b), n, sc)


def U_m(m: int, n: int, sc: ScalarConfig) -> HeckeElement:
    return t_of(cx.u_m_elem(m, n), sc)


def V_of(m, n: int, sc: ScalarConfig) -> HeckeElement:
    return t_of(cx.v_of(m, n), sc)


def xi_word(n: int, p: int, t: int, r: int) -> tuple:
    """Letters of xi(r): rows k = 1..p-t, row k being T_{n-r-k} T_{n-r-k+1} ... T_{n-k}."""
    if not (1 <= t <= p <= n) or r < -1:
        raise cx.RankError(f"xi needs 1 <= t <= p <= n and r >= -1, got n={n} p={p} t={t} r={r}")
    letters = []
    for k in range(1, p - t + 1):
        row = tuple(range(n - r - k, n - k + 1))
        if row and (row[0] < 1 or row[-1] > n - 1):
            raise cx.RankError(f"xi row {k} leaves rank {n}: {row}")
        letters.extend(row)
    return tuple(letters)


def xi_elem(n: int, p: int, t: int, r: int, sc: ScalarConfig) -> HeckeElement:
    return word_element(xi_word(n, p, t, r), n, sc)


def xi_inverse(n: int, p: int, t: int, r: int, sc: ScalarConfig) -> HeckeElement:
    return word_inverse(xi_word(n, p, t, r), n, sc)
