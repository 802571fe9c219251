import math

import pytest

from recdiff.asymptotics import (
    auxiliary_inequality_check,
    lower_bound_grid,
    main_term,
    main_term_value,
    ratio_table,
)
from recdiff.errors import InvalidBelowThreshold, InvalidParameters
from recdiff.recurrences import BUILTIN_SEQUENCES
from recdiff.spectral import analyze_sequence

FIB = BUILTIN_SEQUENCES["fib"]
POW2 = BUILTIN_SEQUENCES["pow2"]
POW3 = BUILTIN_SEQUENCES["pow3"]
A_FIB = analyze_sequence(FIB)
A_POW2 = analyze_sequence(POW2)
A_POW3 = analyze_sequence(POW3)


def test_main_term_values():
    assert main_term_value(2.0, 5.0, math.e ** 10) == pytest.approx(10.0, rel=1e-12)
    got = main_term(A_FIB.certificate, A_POW2.certificate, 10 ** 6)
    assert got == pytest.approx(572.2, abs=0.1)
    assert main_term_value(2.0, 5.0, 1 + 1e-12) < 1e-20
    with pytest.raises(ValueError):
        main_term_value(2.0, 5.0, 1.0)


def test_main_term_increasing():
    vals = [main_term(A_FIB.certificate, A_POW2.certificate, x)
            for x in (10, 100, 10 ** 4, 10 ** 8)]
    assert vals == sorted(vals) and vals[0] > 0


def test_lower_bound_grid_fib_pow2():
    g = lower_bound_grid(A_FIB.envelope, A_POW2.envelope, math.e ** 20)
    assert g.n_max == pytest.approx(38.57, abs=0.01)
    assert g.m_max == pytest.approx(25.86, abs=0.01)
    assert g.count == 39 * 26 == 1014
    assert g.verified


def test_lower_bound_grid_pow2_pow3():
    g = lower_bound_grid(A_POW2.envelope, A_POW3.envelope, math.e ** 20)
    assert g.n_max == pytest.approx(25.86, abs=0.01)
    assert g.m_max == pytest.approx(15.21, abs=0.01)
    assert g.count == 26 * 16 == 416


def test_lower_bound_grid_threshold():
    with pytest.raises(InvalidBelowThreshold):
        lower_bound_grid(A_FIB.envelope, A_POW2.envelope, 2)
    with pytest.raises(InvalidBelowThreshold):
        lower_bound_grid(A_FIB.envelope, A_POW2.envelope, 3.0)


def test_grid_is_subset_of_solutions():
    for x in (10 ** 3, 10 ** 6):
        g = lower_bound_grid(A_FIB.envelope, A_POW2.envelope, x)
        from recdiff.counting import count_T_S
        assert g.count <= count_T_S(FIB, POW2, x).T


def test_ratio_table_rows():
    rep = ratio_table(FIB, POW2, [10 ** 3, 10 ** 6, 10 ** 9, 10 ** 12])
    assert len(rep.rows) == 4
    assert [r.x for r in rep.rows] == [10 ** 3, 10 ** 6, 10 ** 9, 10 ** 12]
    for r in rep.rows:
        assert r.S <= r.T
        assert r.excess == r.T - r.S
        if r.grid_count is not None:
            assert r.grid_count <= r.T
    # convergence toward the main term along the grid endpoints
    assert abs(rep.rows[-1].s_ratio - 1) < abs(rep.rows[0].s_ratio - 1)
    assert rep.k1 is not None and math.isfinite(rep.k1)
    assert rep.k2 is not None and math.isfinite(rep.k2)


def test_ratio_table_empty_and_oracle():
    assert ratio_table(FIB, POW2, []).rows == ()
    rep = ratio_table(FIB, POW2, [10 ** 3], oracle=True)
    assert (rep.rows[0].T, rep.rows[0].S) == (182, 156)


def test_ratio_table_deterministic():
    a = ratio_table(FIB, POW2, [10 ** 3, 10 ** 6])
    b = ratio_table(FIB, POW2, [10 ** 3, 10 ** 6])
    assert a.rows == b.rows and a.k1 == b.k1


def test_for_lower_bound_single_point():
    # k=1, c=2, d=0, z=e^3: hypothesis n <= 20.09 - 6.0 admits n = 14
    res = auxiliary_inequality_check("forLowerBound", {"k": 1, "c": 2, "d": 0},
                                     z=math.e ** 3, n=14)
    assert res.passed and res.trials == 1


def test_for_lower_bound_invalid_parameters():
    with pytest.raises(InvalidParameters):
        auxiliary_inequality_check("forLowerBound", {"k": 1, "c": 2, "d": 2},
                                   z=1.5, n=1)       # z below k^(c-1) e^d
    with pytest.raises(InvalidParameters):
        auxiliary_inequality_check("forLowerBound", {"k": 1, "c": 0.5})
    with pytest.raises(InvalidParameters):
        auxiliary_inequality_check("mlogm", {"k": -1, "c": 1})
    with pytest.raises(InvalidParameters):
        auxiliary_inequality_check("mlogm", {"k": 1, "c": 1}, z=1.0, n=10)
    with pytest.raises(InvalidParameters):
        auxiliary_inequality_check("nosuch")


def test_lemma_fuzz_smoke():
    r1 = auxiliary_inequality_check("forLowerBound", trials=2000, seed=11)
    assert r1.passed and r1.counterexample is None
    r2 = auxiliary_inequality_check("mlogm", trials=2000, seed=11)
    assert r2.passed and r2.counterexample is None


def test_lemma_fuzz_fixed_params():
    r = auxiliary_inequality_check("mlogm", {"k": 1.0, "c": 1.0}, trials=2000, seed=3)
    assert r.passed
    r2 = auxiliary_inequality_check("forLowerBound", {"k": 1.0, "c": 2.0, "d": 0.0},
                                    trials=2000, seed=3)
    assert r2.passed
