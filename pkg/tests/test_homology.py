from fractions import Fraction

import pytest

from heckestab import complexes as C
from heckestab import homology as H
from heckestab.fields import prime_field, rationals
from heckestab.linalg import SparseMatrix
import oracles

SC2 = rationals("2")

# frozen from a full run of the Betti computation (top degree r = n-1)
DERANGEMENTS = [1, 0, 1, 2, 9, 44, 265]
SIGNED_TOP = {1: 1, 2: 5, 3: 29, 4: 233}


def test_c_pm_1_betti():
    rep = H.homology_dims(C.build_C(1, True, rationals("1")))
    assert rep.betti == {-1: 0, 0: 1}
    assert rep.dims == {-1: 1, 0: 2}


def test_c_is_acyclic_below_top():
    for n in range(1, 6):
        rep = H.homology_dims(C.build_C(n, False, rationals("1")))
        assert rep.vanishes_through(n - 2)
        assert rep.betti[n - 1] == DERANGEMENTS[n]
        assert rep.euler_ok()


def test_top_betti_matches_euler_characteristic():
    # only the top degree survives, so it is determined by the chain ranks
    for n in range(1, 5):
        dims = [C.expected_dim_Cpm(n, r) for r in range(-1, n)]
        chi = sum((-1) ** ((r + 1) % 2) * v for r, v in zip(range(-1, n), dims))
        assert abs(chi) == SIGNED_TOP[n]


@pytest.mark.parametrize("sc", [rationals("1"), rationals("2"), rationals("1/3"), rationals("-1"),
                                prime_field(10007, 2), prime_field(10007, 10006)],
                         ids=["q=1", "q=2", "q=1/3", "q=-1", "F10007,q=2", "F10007,q=-1"])
def test_d_pm_acyclic(sc):
    for n in range(1, 5):
        rep = H.homology_dims(C.build_D(n, "B", sc))
        assert rep.vanishes_through(n - 2)
        assert rep.betti[n - 1] == SIGNED_TOP[n]
        a = H.homology_dims(C.build_D(n, "A", sc))
        assert a.vanishes_through(n - 2)
        assert a.betti[n - 1] == DERANGEMENTS[n]


def test_betti_agree_across_q_and_field():
    n = 3
    ref = H.homology_dims(C.build_C(n, True, rationals("1"))).betti
    for sc in (SC2, rationals("1/3"), prime_field(10007, 10006), prime_field(3, 2)):
        assert H.homology_dims(C.build_D(n, "B", sc)).betti == ref


def test_integrity_error_on_bad_boundary():
    c = C.build_D(2, "A", SC2)
    c.boundary[1] = c.d(1) + SparseMatrix.from_dense([[1, 0], [0, 0]], SC2.field)
    with pytest.raises(H.IntegrityError):
        H.homology_dims(c)


def test_jobs_and_report():
    c = C.build_D(3, "B", SC2)
    a = H.homology_dims(c)
    b = H.homology_dims(c, jobs=2, timed=True)
    assert a.betti == b.betti and a.ranks == b.ranks
    assert a.elapsed_ms is None and isinstance(b.elapsed_ms, int)
    doc = a.to_json()
    assert doc["betti"] == {"-1": 0, "0": 0, "1": 0, "2": 29}
    assert doc["q"] == "2"


def test_betti_decomposition_over_blocks():
    n, sc = 4, SC2
    dpm = C.build_D(n, "B", sc)
    for p in range(1, n + 1):
        Q = C.quotient_complex(n, p, sc, dpm)
        total = H.homology_dims(Q).betti
        parts = [H.homology_dims(sub).betti for _, sub in C.block_decompose(Q, p)]
        for r in Q.degrees():
            assert total[r] == sum(b.get(r, 0) for b in parts)


# --- bar complex and Tor -----------------------------------------------------


def test_bar_product_matches_direct_expansion():
    bar = H.BarComplex("B", 2, SC2)
    assert bar.rank == 7
    for a in range(bar.rank):
        for b in range(bar.rank):
            wa, wb = bar.nonunit[a], bar.nonunit[b]
            from heckestab import hecke as hk
            from heckestab import coxeter as cx
            x = hk.t_of(wa, SC2) - hk.HeckeElement.one(2, SC2).scale(SC2.qpow(cx.length(wa)))
            y = hk.t_of(wb, SC2) - hk.HeckeElement.one(2, SC2).scale(SC2.qpow(cx.length(wb)))
            xy = hk.mul(x, y)
            assert hk.augment(xy) == 0
            got = bar.product(a, b)
            back = hk.HeckeElement.zero(2, SC2)
            for i, c in got.items():
                w = bar.nonunit[i]
                back = back + (hk.t_of(w, SC2) - hk.HeckeElement.one(2, SC2).scale(SC2.qpow(cx.length(w)))).scale(c)
            assert back == xy


def test_bar_boundary_squares_to_zero():
    bar = H.BarComplex("B", 2, SC2)
    assert (bar.boundary(2) @ bar.boundary(3)).is_zero()
    bar = H.BarComplex("A", 3, rationals("-1"))
    assert (bar.boundary(2) @ bar.boundary(3)).is_zero()


@pytest.mark.parametrize("q", ["2", "1/3", "-1", "1"])
def test_tor_hb1_against_resolution(q):
    sc = rationals(q)
    got = H.bar_tor_dims("B", 1, 5, sc)
    assert got == [oracles.tor_hb1(d, Fraction(q)) for d in range(6)]


@pytest.mark.parametrize("sc", [rationals("2"), rationals("-1"), prime_field(2, 1)],
                         ids=["q=2", "q=-1", "F2,q=1"])
def test_tor_against_unnormalized_bar(sc):
    assert H.bar_tor_dims("B", 1, 3, sc) == oracles.unnormalized_bar_tor("B", 1, 3, sc)
    assert H.bar_tor_dims("A", 2, 2, sc) == oracles.unnormalized_bar_tor("A", 2, 2, sc)
    assert H.bar_tor_dims("B", 2, 1, sc) == oracles.unnormalized_bar_tor("B", 2, 1, sc)


def test_tor_semisimple_vanishes():
    for kind, n in (("B", 1), ("B", 2), ("A", 3)):
        assert H.bar_tor_dims(kind, n, 2, SC2) == [1, 0, 0]


def test_tor_of_d8_mod_2():
    # q = 1 over F_2 is group homology of the dihedral group of order 8: dim d+1
    assert H.bar_tor_dims("B", 2, 3, prime_field(2, 1)) == [1, 2, 3, 4]


def test_tor_of_s3_mod_2_and_3():
    # H_*(S_3; F_2) = H_*(Z/2; F_2), H_*(S_3; F_3) = F_3 in degrees 0, 3, 4
    assert H.bar_tor_dims("A", 3, 2, prime_field(2, 1)) == [1, 1, 1]
    assert H.bar_tor_dims("A", 3, 2, prime_field(3, 1)) == [1, 0, 0]


def test_tor_zero_is_one():
    for kind, n in (("B", 0), ("B", 1), ("B", 2), ("B", 3), ("A", 4)):
        assert H.bar_tor_dims(kind, n, 0, SC2) == [1]


# --- stabilisation -------------------------------------------------------------


@pytest.mark.parametrize("q", ["2", "1/3"])
def test_stable_range_isomorphisms(q):
    sc = rationals(q)
    for n in range(1, 4):
        for d in range(0, 3):
            if 2 * d > n - 1:
                continue
            rep = H.stabilization_map(n, d, sc)
            assert rep.in_stable_range
            assert rep.isomorphism, rep.to_json()
            if d == 0:
                assert rep.dim_source == rep.dim_target == 1


def test_stabilization_detects_non_isomorphism():
    # Tor_1 over HB_0 is 0, over HB_1 at q = -1 it is 1
    rep = H.stabilization_map(1, 1, rationals("-1"))
    assert (rep.dim_source, rep.dim_target) == (0, 1)
    assert not rep.surjective and not rep.isomorphism


def test_stabilization_at_q_minus_one():
    rep = H.stabilization_map(3, 1, rationals("-1"))
    assert rep.dim_source == rep.dim_target == 2
    assert rep.isomorphism
    assert rep.matrix is None or len(rep.matrix) == 2


def test_stabilization_explicit_matrix():
    rep = H.stabilization_map(2, 1, rationals("-1"))
    assert rep.matrix is not None
    assert len(rep.matrix) == rep.dim_target
    assert all(len(row) == rep.dim_source for row in rep.matrix)
    doc = rep.to_json()
    assert doc["rank"] == rep.rank


def test_size_guard(monkeypatch):
    with pytest.raises(H.SizeGuardError):
        H.bar_tor_dims("B", 3, 4, SC2)
    monkeypatch.setenv("HHL_GUARD", "10")
    with pytest.raises(H.SizeGuardError):
        H.bar_tor_dims("B", 2, 2, SC2)
    assert H.bar_tor_dims("B", 1, 5, SC2, guard=100) == [1] + [0] * 5
    assert H.guard_limit() == 10
    assert H.guard_limit(7) == 7
    monkeypatch.delenv("HHL_GUARD")
    assert H.guard_limit() == H.DEFAULT_GUARD
