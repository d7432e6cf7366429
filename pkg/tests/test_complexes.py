import itertools
import json
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from heckestab import complexes as C
from heckestab import coxeter as cx
from heckestab import suites as S
from heckestab.fields import prime_field, rationals
from heckestab.homology import homology_dims

SC2 = rationals("2")
SCALARS = [rationals("2"), rationals("1/3"), rationals("-1"), prime_field(10007, 10006)]
SC_IDS = ["q=2", "q=1/3", "q=-1", "F10007"]


def count_words(n, length, signed):
    # independent count by enumeration of (letters, signs)
    words = set()
    for letters in itertools.permutations(range(1, n + 1), length):
        for signs in itertools.product((1, -1) if signed else (1,), repeat=length):
            words.add(tuple(a * s for a, s in zip(letters, signs)))
    return len(words)


def test_c_pm_1():
    c = C.build_C(1, True, rationals("1"))
    assert c.basis[0] == [(-1,), (1,)]
    assert c.basis[-1] == [()]
    assert c.d(0).to_dense() == [[1, 1]]
    assert [f.to_dense() for f in c.faces[0]] == [[[1, 1]]]


@pytest.mark.parametrize("signed", [False, True])
def test_c_dimensions(signed):
    for n in range(0, 6):
        c = C.build_C(n, signed, rationals("1"))
        for r in c.degrees():
            assert c.dim(r) == count_words(n, r + 1, signed)
            expect = C.expected_dim_Cpm(n, r) if signed else C.expected_dim_C(n, r)
            assert c.dim(r) == expect


@pytest.mark.parametrize("signed", [False, True])
def test_c_boundary_squares_to_zero(signed):
    for n in range(1, 6):
        assert C.build_C(n, signed, rationals("1")).d_squared_zero()


@pytest.mark.parametrize("sc", SCALARS, ids=SC_IDS)
def test_d_boundary_squares_to_zero(sc):
    for n in range(1, 5):
        assert C.build_D(n, "B", sc).d_squared_zero()
        assert C.build_D(n, "A", sc).d_squared_zero()


def test_d_dimensions_are_coset_counts():
    for n in range(1, 5):
        d = C.build_D(n, "B", SC2)
        for r in d.degrees():
            assert d.dim(r) == C.expected_dim_Cpm(n, r)
            assert d.dim(r) == len(cx.coset_reps(cx.gens_B(n - r - 1), n, "right"))
        assert d.dim(0) == 2 * n
        a = C.build_D(n, "A", SC2)
        assert all(a.dim(r) == C.expected_dim_C(n, r) for r in a.degrees())


def test_bad_inputs():
    with pytest.raises(ValueError):
        C.build_D(0, "B", SC2)
    with pytest.raises(ValueError):
        C.build_D(2, "C", SC2)
    with pytest.raises(ValueError):
        C.quotient_complex(3, 0, SC2)
    with pytest.raises(ValueError):
        C.build_M_t(3, 2, 3, SC2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_q1_d_equals_words(n):
    assert S.q1_matches_words(n, signed=True)
    assert S.q1_matches_words(n, signed=False)


def test_q1_comparison_detects_changes():
    # at q = 2 the boundaries are genuinely deformed
    d = C.build_D(2, "B", SC2)
    c = C.build_C(2, True, SC2)
    assert not S.same_complex_under(d, c, lambda r, x: cx.injective_word(x, r))


def test_filtration_masks():
    n = 3
    levels = C.filtration(n, SC2)
    assert [lv.p for lv in levels] == list(range(n + 1))
    assert all(all(m) for m in levels[n].mask.values())
    dpm = C.build_D(n, "B", SC2)
    for r in dpm.degrees():
        f0 = [dpm.basis[r][i] for i in levels[0].members(r)]
        assert all(cx.negative_profile(x, r) == () for x in f0)
        assert all(cx.is_unsigned(x) for x in f0)


def test_quotient_dimensions_and_vanishing():
    for n in range(1, 5):
        dpm = C.build_D(n, "B", SC2)
        for p in range(1, n + 1):
            Q = C.quotient_complex(n, p, SC2, dpm)
            for r in Q.degrees():
                if r < p - 1:
                    assert Q.dim(r) == 0
                else:
                    assert Q.dim(r) == 2 ** (p - 1) * factorial(n) // factorial(n - r - 1)
            assert Q.d_squared_zero()


def test_blocks():
    n = 4
    dpm = C.build_D(n, "B", SC2)
    for p in range(1, n + 1):
        blocks = C.block_decompose(C.quotient_complex(n, p, SC2, dpm), p)
        assert len(blocks) == 2 ** (p - 1) == C.expected_block_count(p)
        for t in range(1, p + 1):
            assert sum(1 for m, _ in blocks if len(m) == t) == comb(p - 1, t - 1)
        assert all(m[0] == p for m, _ in blocks)
        assert C.is_block_diagonal(C.quotient_complex(n, p, SC2, dpm))


def test_block_diagonal_detects_mixing():
    n, p = 3, 2
    Q = C.quotient_complex(n, p, SC2)
    r = 2
    # plant an entry between two different blocks
    src, tgt = Q.basis[r], Q.basis[r - 1]
    j = next(j for j, x in enumerate(src) if cx.negative_profile(x, r) == (2,))
    i = next(i for i, x in enumerate(tgt) if cx.negative_profile(x, r - 1) == (2, 1))
    Q.boundary[r] = Q.d(r) + type(Q.d(r))(Q.dim(r - 1), Q.dim(r), SC2.field, {(i, j): Fraction(1)})
    assert not C.is_block_diagonal(Q)


def test_m_t_dimensions():
    for n in range(1, 5):
        for p in range(1, n + 1):
            for t in range(1, p + 1):
                mt = C.build_M_t(n, p, t, SC2)
                assert mt.degrees() == range(-1, n - p)
                for r in mt.degrees():
                    assert mt.dim(r) == factorial(n) // factorial(n - r - p - 1)
                assert mt.d_squared_zero()
                assert C.build_M_t(n, p, t, SC2, with_factor=False).d_squared_zero()


def test_d_t_restricted_is_a_copy_of_d():
    for n in range(2, 5):
        for p in range(1, n):
            for t in range(1, p + 1):
                small = C.build_D_t(n, p, t, SC2, induced=False)
                d = C.build_D(n - p, "A", SC2)
                assert small.dims() == d.dims()
                assert homology_dims(small).betti == homology_dims(d).betti


@pytest.mark.parametrize("sc", [rationals("2"), rationals("1/3"), rationals("1"),
                                prime_field(10007, 2)], ids=["q=2", "q=1/3", "q=1", "F10007"])
def test_structure_suite_n3(sc):
    for check in S.structure_suite(3, sc):
        assert check.ok, check.to_json()


def test_suspension():
    d = C.build_D(2, "A", SC2)
    s = d.suspend(3)
    assert list(s.degrees()) == [r + 3 for r in d.degrees()]
    assert s.d(4) == d.d(1)
    assert s.meta["suspension"] == 3


def test_json_export_is_deterministic():
    a = C.build_D(3, "B", SC2).dumps()
    b = C.build_D(3, "B", SC2).dumps()
    assert a == b
    doc = json.loads(a)
    assert doc["complex"] == "Dpm" and doc["q"] == "2" and doc["field"] == "Q"
    assert doc["basis"]["-1"] == ["[1,2,3]"]
    trip = doc["boundary"]["1"]["entries"]
    assert trip == sorted(trip, key=lambda e: (e[0], e[1]))


@settings(max_examples=15)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool))
def test_d_pm_homology_is_uniform_in_q(q):
    sc = rationals(str(q))
    d = C.build_D(3, "B", sc)
    assert d.d_squared_zero()
    assert homology_dims(d).betti == {-1: 0, 0: 0, 1: 0, 2: 29}
