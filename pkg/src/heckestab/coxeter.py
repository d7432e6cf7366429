"""
Signed permutations, the Coxeter groups B_n and S_n < B_n, words in the
generators, and distinguished (double) coset representatives.

Conventions
-----------
* A group element is a tuple ``g`` of nonzero ints in one-line notation:
  ``g[i-1] == g(i)``, with ``g(-i) == -g(i)``. Unsigned tuples are the
  elements of the symmetric group.
* Generators are ints: ``0`` is u = (-1 1) and ``i >= 1`` is s_i = (i i+1).
* Products compose right-to-left, ``(g*h)(i) == g(h(i))``, so that
  u_m = u s_1 ... s_{m-1} shifts 1..m-1 up by one and sends m to -1.
* Right multiplication by a generator acts on positions, left
  multiplication acts on values. s_i is a right descent of g iff
  g(i) > g(i+1); u is a right descent iff g(1) < 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

SignedPerm = tuple  # tuple[int, ...] in one-line notation
Generator = int  # 0 for u, i for s_i
MVector = tuple  # strictly decreasing tuple of positive ints

U = 0


class RankError(ValueError):
    """A generator, word or index does not fit the ambient rank."""


# --- generators and words -------------------------------------------------


def gen_name(s: Generator) -> str:
    return "u" if s == U else f"s{s}"


def parse_gen(token: str) -> Generator:
    token = token.strip()
    if token == "u":
        return U
    if token.startswith("s") and token[1:].isdigit() and int(token[1:]) >= 1:
        return int(token[1:])
    raise ValueError(f"bad generator token {token!r}")


def check_gen(s: Generator, n: int, kind: str = "B") -> None:
    if s == U:
        if kind != "B" or n < 1:
            raise RankError(f"u is not a generator of {kind}_{n}")
    elif not 1 <= s <= n - 1:
        raise RankError(f"s{s} is not a generator in rank {n}")


def generators(n: int, kind: str = "B") -> tuple:
    first = [U] if kind == "B" and n >= 1 else []
    return tuple(first + list(range(1, n)))


@dataclass(frozen=True)
class CoxWord:
    """A (possibly non-reduced) word in u, s_1, ..., s_{n-1}."""

    letters: tuple
    n: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for s in self.letters:
            check_gen(s, self.n)

    @classmethod
    def parse(cls, text: str, n: int) -> "CoxWord":
        return cls(tuple(parse_gen(t) for t in text.split()), n)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(gen_name(s) for s in self.letters)


# --- group arithmetic ------------------------------------------------------


def identity(n: int) -> SignedPerm:
    return tuple(range(1, n + 1))


def apply(g: SignedPerm, i: int) -> int:
    v = g[abs(i) - 1]
    return v if i > 0 else -v


def compose(g: SignedPerm, h: SignedPerm) -> SignedPerm:
    """g*h, i.e. i -> g(h(i))."""
    return tuple(g[x - 1] if x > 0 else -g[-x - 1] for x in h)


def inverse(g: SignedPerm) -> SignedPerm:
    out = [0] * len(g)
    for i, v in enumerate(g, 1):
        if v > 0:
            out[v - 1] = i
        else:
            out[-v - 1] = -i
    return tuple(out)


def rmul_gen(g: SignedPerm, s: Generator) -> SignedPerm:
    """g*s."""
    lst = list(g)
    if s == U:
        lst[0] = -lst[0]
    else:
        lst[s - 1], lst[s] = lst[s], lst[s - 1]
    return tuple(lst)


def lmul_gen(s: Generator, g: SignedPerm) -> SignedPerm:
    """s*g."""
    if s == U:
        return tuple(-v if abs(v) == 1 else v for v in g)
    out = []
    for v in g:
        a = abs(v)
        if a == s:
            v = s + 1 if v > 0 else -(s + 1)
        elif a == s + 1:
            v = s if v > 0 else -s
        out.append(v)
    return tuple(out)


def gen_perm(s: Generator, n: int) -> SignedPerm:
    check_gen(s, n)
    return rmul_gen(identity(n), s)


def embed(g: SignedPerm, n: int) -> SignedPerm:
    """Image of g under B_m < B_n (fix the letters m+1..n)."""
    if len(g) > n:
        raise RankError(f"cannot embed rank {len(g)} into rank {n}")
    return tuple(g) + tuple(range(len(g) + 1, n + 1))


def word_to_perm(w: CoxWord | Sequence[int], n: int | None = None) -> SignedPerm:
    if isinstance(w, CoxWord):
        letters, n = w.letters, w.n
    else:
        letters = tuple(w)
        if n is None:
            raise ValueError("rank n required for a bare letter sequence")
        for s in letters:
            check_gen(s, n)
    g = identity(n)
    for s in letters:
        g = rmul_gen(g, s)
    return g


def is_unsigned(g: SignedPerm) -> bool:
    return all(v > 0 for v in g)


# --- length, descents and reduced words -----------------------------------


def is_right_descent(g: SignedPerm, s: Generator) -> bool:
    if s == U:
        return g[0] < 0
    return g[s - 1] > g[s]


def is_left_descent(s: Generator, g: SignedPerm) -> bool:
    return is_right_descent(inverse(g), s)


@lru_cache(maxsize=None)
def _reduced_letters(g: SignedPerm) -> tuple:
    # strip the first right descent found; the letters come out reversed
    letters = []
    n = len(g)
    while True:
        if g[0] < 0:
            s = U
        else:
            for s in range(1, n):
                if g[s - 1] > g[s]:
                    break
            else:
                break
        letters.append(s)
        g = rmul_gen(g, s)
    return tuple(reversed(letters))


def reduced_word(g: SignedPerm) -> CoxWord:
    return CoxWord(_reduced_letters(tuple(g)), len(g))


def length(g: SignedPerm) -> int:
    return len(_reduced_letters(tuple(g)))


def is_reduced(w: CoxWord) -> bool:
    return len(w) == length(word_to_perm(w))


def descents(g: SignedPerm, side: str = "right", kind: str = "B") -> frozenset:
    gens = generators(len(g), kind)
    if side == "right":
        return frozenset(s for s in gens if is_right_descent(g, s))
    if side == "left":
        ginv = inverse(g)
        return frozenset(s for s in gens if is_right_descent(ginv, s))
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def sort_key(g: SignedPerm):
    """Canonical basis order: by length, then lexicographically."""
    return (length(g), tuple(g))


def canonical_sorted(elems: Iterable[SignedPerm]) -> list:
    return sorted(elems, key=sort_key)


# --- the groups ------------------------------------------------------------


@lru_cache(maxsize=None)
def elements(n: int, kind: str = "B") -> tuple:
    """All elements of B_n (kind 'B') or S_n (kind 'A'), canonically sorted."""
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        if kind == "A":
            out.append(p)
        else:
            for signs in itertools.product((1, -1), repeat=n):
                out.append(tuple(a * b for a, b in zip(p, signs)))
    return tuple(canonical_sorted(out))


def in_parabolic(g: SignedPerm, J: Iterable[Generator]) -> bool:
    """Membership in W_J: every reduced word of g only uses letters of J."""
    J = frozenset(J)
    return all(s in J for s in _reduced_letters(tuple(g)))


def parabolic_elements(J: Iterable[Generator], n: int, kind: str = "B") -> list:
    J = frozenset(J)
    return [g for g in elements(n, kind) if in_parabolic(g, J)]


# parabolic generating sets used throughout


def gens_B(k: int) -> frozenset:
    """Generators of B_k < B_n: {u, s_1, ..., s_{k-1}} (empty for k = 0)."""
    if k <= 0:
        return frozenset()
    return frozenset([U] + list(range(1, k)))


def gens_S(k: int, shift: int = 0) -> frozenset:
    """Generators s_{1+shift}, ..., s_{k-1+shift} of a (shifted) S_k."""
    return frozenset(range(1 + shift, k + shift))


# --- coset representatives -------------------------------------------------


def is_J_reduced(g: SignedPerm, J: Iterable[Generator], side: str = "left",
                 K: Iterable[Generator] | None = None) -> bool:
    """(J, {})-reduced for side='left', ({}, J)-reduced for side='right',
    (J, K)-reduced for side='both'."""
    J = frozenset(J)
    if side == "left":
        ginv = inverse(g)
        return not any(is_right_descent(ginv, s) for s in J)
    if side == "right":
        return not any(is_right_descent(g, s) for s in J)
    if side == "both":
        if K is None:
            raise ValueError("side='both' needs K")
        return is_J_reduced(g, J, "left") and is_J_reduced(g, K, "right")
    raise ValueError(f"bad side {side!r}")


def coset_reps(J: Iterable[Generator], n: int, side: str = "left",
               kind: str = "B") -> list:
    """Distinguished coset representatives of the parabolic W_J in W.

    side='left' gives X_J, one minimal element per right coset W_J x.
    side='right' gives X_J^{-1}, one minimal element per left coset x W_J.
    The ambient group is B_n, or S_n when kind='A'.
    """
    J = frozenset(J)
    for s in J:
        check_gen(s, n, kind)
    return [g for g in elements(n, kind) if is_J_reduced(g, J, side)]


def double_coset_reps(J: Iterable[Generator], K: Iterable[Generator], n: int,
                      kind: str = "B") -> list:
    """X_JK = X_J cap X_K^{-1}: minimal elements of the double cosets W_J g W_K."""
    J, K = frozenset(J), frozenset(K)
    return [g for g in elements(n, kind) if is_J_reduced(g, J, "both", K)]


def conjugate(g: SignedPerm, d: SignedPerm) -> SignedPerm:
    """g^d = d^{-1} g d."""
    return compose(inverse(d), compose(g, d))


def mackey_partition(J: Iterable[Generator], K: Iterable[Generator], n: int,
                     kind: str = "B") -> list:
    """X_J as the disjoint union of the blocks d * X^K_{J^d cap K}, d in X_JK."""
    J, K = frozenset(J), frozenset(K)
    gen_perms = {s: gen_perm(s, n) for s in generators(n, kind)}
    WK = parabolic_elements(K, n, kind)
    out = []
    for d in double_coset_reps(J, K, n, kind):
        dinv = inverse(d)
        # k in K with d k d^{-1} in J
        L = frozenset(
            k for k in K
            if any(compose(d, compose(gen_perms[k], dinv)) == gen_perms[s] for s in J)
        )
        block = [compose(d, x) for x in WK if is_J_reduced(x, L, "left")]
        out.append((d, canonical_sorted(block)))
    return out


def coset_factorize(g: SignedPerm, J: Iterable[Generator], side: str = "left"):
    """Length-additive factorisation through the parabolic W_J.

    side='left':  g = z*x with z in W_J and x in X_J.
    side='right': g = x*z with x in X_J^{-1} and z in W_J.
    Returns (z, x).
    """
    J = frozenset(J)
    n = len(g)
    z = identity(n)
    x = tuple(g)
    if side == "right":
        while True:
            for s in J:
                if is_right_descent(x, s):
                    x = rmul_gen(x, s)
                    z = lmul_gen(s, z)
                    break
            else:
                return z, x
    if side == "left":
        while True:
            xinv = inverse(x)
            for s in J:
                if is_right_descent(xinv, s):
                    x = lmul_gen(s, x)
                    z = rmul_gen(z, s)
                    break
            else:
                return z, x
    raise ValueError(f"bad side {side!r}")


def right_coset_min(g: SignedPerm, J: Iterable[Generator]) -> tuple:
    """(x, l(z)) for g = x*z, x in X_J^{-1}, z in W_J."""
    z, x = coset_factorize(g, J, "right")
    return x, length(g) - length(x)


# --- the elements u_m and v(m) ---------------------------------------------


def u_m_word(m: int) -> tuple:
    return (U,) + tuple(range(1, m))


def u_m_elem(m: int, n: int) -> SignedPerm:
    """u_m = u s_1 ... s_{m-1} in B_n."""
    if not 1 <= m <= n:
        raise RankError(f"u_{m} needs 1 <= m <= n = {n}")
    return word_to_perm(u_m_word(m), n)


def check_mvector(m: Sequence[int], n: int | None = None) -> MVector:
    m = tuple(m)
    if any(a <= b for a, b in zip(m, m[1:])) or (m and m[-1] < 1):
        raise ValueError(f"{m} is not strictly decreasing and positive")
    if n is not None and m and m[0] > n:
        raise RankError(f"entry {m[0]} exceeds rank {n}")
    return m


def v_word(m: Sequence[int]) -> tuple:
    return tuple(itertools.chain.from_iterable(u_m_word(a) for a in m))


def v_of(m: Sequence[int], n: int) -> SignedPerm:
    """v(m) = u_{m_1} u_{m_2} ... u_{m_t}."""
    m = check_mvector(m, n)
    return word_to_perm(v_word(m), n)


def mvectors(top: int, first: int | None = None) -> list:
    """All decreasing sequences with entries in 1..top; restrict m_1 == first if given."""
    out = []
    for t in range(0, top + 1):
        for c in itertools.combinations(range(top, 0, -1), t):
            if first is None or (c and c[0] == first):
                out.append(c)
    return out


def negative_profile(g: SignedPerm, r: int) -> MVector:
    """Places (from the left, 1-based) of negatives in the word (g(n-r), ..., g(n))."""
    n = len(g)
    if not -1 <= r <= n - 1:
        raise RankError(f"degree {r} out of range for rank {n}")
    word = g[n - r - 1:] if r >= 0 else ()
    return tuple(i for i in range(len(word), 0, -1) if word[i - 1] < 0)


def injective_word(g: SignedPerm, r: int) -> tuple:
    """The (signed) injective word (g(n-r), ..., g(n)) of length r+1."""
    n = len(g)
    return tuple(g[n - r - 1:]) if r >= 0 else ()


# --- serialisation ---------------------------------------------------------


def perm_str(g: SignedPerm) -> str:
    return "[" + ",".join(str(v) for v in g) + "]"


def parse_perm(text: str) -> SignedPerm:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"bad permutation {text!r}")
    body = body[1:-1].strip()
    g = tuple(int(t) for t in body.split(",")) if body else ()
    if sorted(abs(v) for v in g) != list(range(1, len(g) + 1)):
        raise ValueError(f"{text!r} is not a signed permutation")
    return g


mvector_str = perm_str


def parse_mvector(text: str) -> MVector:
    body = text.strip()[1:-1].strip()
    return check_mvector(tuple(int(t) for t in body.split(",")) if body else ())
