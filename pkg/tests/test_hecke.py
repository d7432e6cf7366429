from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heckestab import coxeter as cx
from heckestab import hecke as hk
from heckestab import suites as S
from heckestab.fields import prime_field, rationals
import oracles

SC2 = rationals("2")
B3 = cx.elements(3)


def elem_strategy(n=3, sc=SC2):
    terms = st.dictionaries(st.sampled_from(cx.elements(n)),
                            st.integers(-3, 3).filter(bool), max_size=4)
    return terms.map(lambda d: hk.HeckeElement({w: sc.field(c) for w, c in d.items()}, n, sc))


def test_unit_and_basis_elements(sc_q):
    one = hk.HeckeElement.one(3, sc_q)
    assert hk.t_of((1, 2, 3), sc_q) == one
    for n in range(1, 5):
        for m in range(1, n + 1):
            prod = hk.mul_word(hk.HeckeElement.one(n, sc_q), cx.u_m_word(m))
            assert hk.U_m(m, n, sc_q) == prod
        for m in cx.mvectors(n):
            factors = [hk.U_m(a, n, sc_q) for a in m]
            assert hk.V_of(m, n, sc_q) == hk.product(factors, n, sc_q)


def test_mul_gen_examples(sc_q):
    q = sc_q.q
    F = sc_q.field
    one = hk.HeckeElement.one(2, sc_q)
    assert hk.mul_gen(one, 1) == hk.t_gen(1, 2, sc_q)
    sq = hk.mul_gen(hk.t_gen(1, 2, sc_q), 1)
    assert sq.coeff((1, 2)) == q
    assert sq.coeff((2, 1)) == F.sub(q, F.one)


def test_quadratic_and_braid_relations(sc_q):
    n = 3
    for s in cx.generators(n):
        Ts = hk.t_gen(s, n, sc_q)
        lhs = hk.mul(Ts, Ts)
        rhs = hk.HeckeElement.one(n, sc_q).scale(sc_q.q) + Ts.scale(sc_q.field.sub(sc_q.q, 1))
        assert lhs == rhs
    w = lambda letters: hk.word_element(letters, n, sc_q)  # noqa: E731
    assert w((0, 1, 0, 1)) == w((1, 0, 1, 0))
    assert w((1, 2, 1)) == w((2, 1, 2))
    assert w((0, 2)) == w((2, 0))


def test_q1_is_group_algebra():
    sc = rationals("1")
    for g in B3:
        for h in B3:
            got = hk.mul(hk.t_of(g, sc), hk.t_of(h, sc)).terms
            assert got == oracles.group_algebra_mul({g: 1}, {h: 1})


@given(elem_strategy(), elem_strategy(), elem_strategy())
def test_associativity(x, y, z):
    assert hk.mul(hk.mul(x, y), z) == hk.mul(x, hk.mul(y, z))


@given(elem_strategy(), elem_strategy())
def test_augmentation_is_multiplicative(x, y):
    assert hk.augment(hk.mul(x, y)) == hk.augment(x) * hk.augment(y)


@given(elem_strategy(), elem_strategy(), elem_strategy())
def test_distributivity(x, y, z):
    assert hk.mul(x, y + z) == hk.mul(x, y) + hk.mul(x, z)


def test_augment_examples():
    assert hk.augment(hk.HeckeElement.one(2, SC2)) == 1
    assert hk.augment(hk.t_gen(1, 2, SC2)) == 2
    assert hk.augment(hk.t_gen(0, 2, SC2)) == 2


def test_identity_is_neutral(sc_q):
    x = hk.t_of((-2, 3, -1), sc_q) + hk.t_gen(1, 3, sc_q).scale(5)
    one = hk.HeckeElement.one(3, sc_q)
    assert hk.mul(one, x) == x == hk.mul(x, one)


def test_left_and_right_generator_actions_agree():
    for g in B3:
        x = hk.t_of(g, SC2)
        for s in cx.generators(3):
            assert hk.mul_gen(x, s, "left") == hk.mul(hk.t_gen(s, 3, SC2), x)
            assert hk.mul_gen(x, s, "right") == hk.mul(x, hk.t_gen(s, 3, SC2))


def test_gen_inverse():
    for sc in (SC2, rationals("1/3"), prime_field(10007, 10006)):
        one = hk.HeckeElement.one(3, sc)
        for s in cx.generators(3):
            inv = hk.gen_inverse(s, 3, sc)
            Ts = hk.t_gen(s, 3, sc)
            assert hk.mul(inv, Ts) == one == hk.mul(Ts, inv)
    sc1 = rationals("1")
    for s in cx.generators(3):
        assert hk.gen_inverse(s, 3, sc1) == hk.t_gen(s, 3, sc1)


def test_context_mismatch():
    with pytest.raises(hk.ContextError):
        hk.mul(hk.t_gen(1, 3, SC2), hk.t_gen(1, 2, SC2))
    with pytest.raises(hk.ContextError):
        hk.t_gen(1, 3, SC2) + hk.t_gen(1, 3, rationals("3"))


def test_zero_coefficients_pruned():
    x = hk.t_gen(1, 2, SC2)
    assert (x - x).terms == {}
    assert x.scale(0).is_zero()


def test_serialisation_is_canonical():
    x = hk.t_of((2, 1), SC2).scale(Fraction(1, 3)) + hk.HeckeElement.one(2, SC2)
    assert x.to_json() == [["[1,2]", "1"], ["[2,1]", "1/3"]]


# --- named elements and identities ----------------------------------------------


def test_t_ab():
    assert hk.t_ab_word(4, 1) == (3, 2, 1)
    assert hk.t_ab(2, 2, 3, SC2) == hk.HeckeElement.one(3, SC2)
    with pytest.raises(cx.RankError):
        hk.t_ab(4, 1, 3, SC2)


def test_u_times_t_cases():
    n, sc = 5, SC2
    # m > a > b
    assert hk.mul(hk.U_m(5, n, sc), hk.t_ab(3, 1, n, sc)) == \
        hk.mul(hk.t_ab(4, 2, n, sc), hk.U_m(5, n, sc))
    # a > m >= b
    assert hk.mul(hk.U_m(2, n, sc), hk.t_ab(4, 1, n, sc)) == \
        hk.mul(hk.t_ab(4, 2, n, sc), hk.U_m(3, n, sc))


@pytest.mark.parametrize("sc", [rationals("2"), rationals("1/3"), prime_field(10007, 10006)],
                         ids=["q=2", "q=1/3", "F10007"])
def test_identity_families(sc):
    for check in (S.check_u_times_t(5, sc), S.check_t_past_v(5, sc),
                  S.check_xi_intertwines(5, sc), S.check_xi_shape(5, sc)):
        assert check.ok, check.to_json()
    assert S.check_u_times_t(5, sc).checked == 85
    assert S.check_xi_intertwines(5, sc).checked == 56


def test_t_past_v_literal_range_is_too_weak():
    """t < k < m_1 alone does not suffice: T_3 V(4,2) != V(4,2) T_1 in HB_4."""
    n, sc = 4, SC2
    V = hk.V_of((4, 2), n, sc)
    assert hk.mul(hk.t_gen(3, n, sc), V) != hk.mul(V, hk.t_gen(1, n, sc))
    assert not S.commutes_past((4, 2), 3)
    strict = S.check_t_past_v(5, sc, strict_reading=True)
    assert (strict.nfail, strict.checked) == (14, 30)


def test_xi_examples():
    for n in range(1, 5):
        for p in range(1, n + 1):
            for r in range(-1, n - p):
                assert hk.xi_elem(n, p, p, r, SC2) == hk.HeckeElement.one(n, SC2)
    assert hk.xi_word(4, 2, 1, 1) == (2, 3)
    assert hk.xi_word(5, 3, 1, 0) == (4, 3)
    with pytest.raises(cx.RankError):
        hk.xi_word(3, 2, 3, 0)


def test_matsumoto_robustness():
    check = S.check_reduced_word_independence(4, SC2, samples=200, seed=1)
    assert check.ok, check.to_json()
    assert check.checked == 2 + 8 + 48 + 200


def test_perturbed_xi_is_caught():
    check = S.check_xi_intertwines(3, SC2, xi=S.perturbed_xi)
    assert not check.ok
    assert check.failures
