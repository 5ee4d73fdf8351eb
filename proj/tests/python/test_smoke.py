from fractions import Fraction
from math import comb

import pytest

import crystalwalk as cw


def test_roots_c2():
    r = cw.roots("C", 2)
    assert r["system"] == "C2"
    assert r["weyl_group_order"] == 8
    assert len(r["positive_roots"]) == 4
    assert r["rho"] == (2, 1)


def test_half_integer_weights_are_fractions():
    r = cw.roots("B", 3)
    assert r["fundamental_weights"][2] == (Fraction(1, 2),) * 3


def test_bad_rank_is_a_config_error():
    with pytest.raises(cw.ConfigError):
        cw.roots("A", 0)
    with pytest.raises(cw.CrystalwalkError):
        cw.roots("G", 2)


def test_gl2_exit_probability():
    m = cw.Model("A", 1, t=["3/7"])
    assert m.x == pytest.approx([0.7, 0.3])
    assert m.exit_probability((0, 0)) == pytest.approx(4 / 7, rel=1e-12)
    assert m.survival((0, 0), 1)[1] == pytest.approx(0.7)
    mc = m.exit_probability_mc((0, 0), horizon=500, n=20000, seed=3, threads=1)
    assert abs(mc["estimate"] - 4 / 7) < 5 * mc["sigma"]


def test_ballot_counts_are_python_ints():
    m = cw.Model("A", 1, t=["3/7"])
    rows = m.path_counts((0, 0), 60)
    assert rows[60][(30, 30)] == comb(60, 30) // 31
    assert rows[60][(60, 0)] == 1


def test_drift_input_and_kernel():
    m = cw.Model("C", 2, drift=["0.4", "0.2"])
    assert m.t == pytest.approx([2 / 3, 0.375])
    rows = {}
    for src, dst, p in m.kernel("H", 5):
        rows[src] = rows.get(src, 0.0) + p
    assert all(v == pytest.approx(1.0) for v in rows.values())


def test_non_minuscule_exit_is_rejected():
    m = cw.Model("B", 2, delta="w1", t=[0.5, 0.5])
    assert not m.minuscule_type
    with pytest.raises(cw.NotMinusculeError):
        m.exit_probability((0, 0))


def test_simulation_is_seeded():
    m = cw.Model("D", 4, delta="w4")
    a = m.simulate(100, seed=9)
    b = m.simulate(100, seed=9)
    assert a["letters"] == b["letters"]
    assert a["coupling_ok"]
    assert len(a["H"]) == 101


def test_verify_named_suite():
    (r,) = cw.verify("doob", {"type": "C", "rank": 3, "t": ["0.5", "0.5", "0.5"]})
    assert r["status"] == "PASS"
    with pytest.raises(cw.ConfigError):
        cw.verify("doob", {"rank": 1, "colour": "red"})


def test_acceptance_criterion_one():
    assert cw.acceptance(1)["status"] == "PASS"
