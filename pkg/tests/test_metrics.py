import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracgreen.metrics import (
    EvalDomain,
    StudyConfig,
    StudyError,
    StudyRow,
    convergence_rate,
    eval_points,
    fitted_slope,
    side_by_side_markdown,
    rmse,
    rows_to_csv,
    rows_to_markdown,
    run_study,
)

from oracles import PROBLEM1_CHEB_15_SNAPSHOT


def test_rmse_examples():
    assert rmse([0, 0], [3, 4]) == pytest.approx(math.sqrt(12.5))
    assert rmse([1.0], [1.0]) == 0.0


@pytest.mark.parametrize("a, b", [([1, 2], [1]), ([], [])])
def test_rmse_rejects(a, b):
    with pytest.raises(ValueError):
        rmse(a, b)


@settings(max_examples=50, deadline=None)
@given(p=st.floats(0.5, 3.0), c=st.floats(1e-3, 1e3), h0=st.floats(0.01, 0.5))
def test_rate_recovers_power_law(p, c, h0):
    hs = h0 / 2.0 ** np.arange(5)
    errs = c * hs**p
    for k in range(4):
        assert convergence_rate(errs[k], hs[k], errs[k + 1], hs[k + 1]) == pytest.approx(p, abs=1e-12)
    assert fitted_slope(hs, errs) == pytest.approx(p, abs=1e-10)


def test_rate_sign_positive_for_decreasing_error():
    assert convergence_rate(1e-2, 0.1, 2.5e-3, 0.05) == pytest.approx(2.0)


@pytest.mark.parametrize("args", [(0.0, 0.1, 1.0, 0.05), (1.0, 0.05, 0.5, 0.1)])
def test_rate_rejects(args):
    with pytest.raises(ValueError):
        convergence_rate(*args)


def test_interior_evaluation_subset():
    x = eval_points(EvalDomain.INTERIOR)
    assert x.min() >= 0.01 and x.max() <= 0.99
    assert eval_points("full").size == 1000


def test_config_validation():
    with pytest.raises(ValueError):
        StudyConfig("nope", 1.5)
    with pytest.raises(ValueError):
        StudyConfig("f1", 1.5, n_list=(40, 20))


def test_study_rows_and_rates():
    rows = run_study(StudyConfig("f1", 1.5, n_list=(10, 20, 40)))
    assert [r.n for r in rows] == [10, 20, 40]
    assert rows[0].rate is None and all(r.rate > 1.2 for r in rows[1:])
    assert rows[0].h == pytest.approx(1 / 11)


def test_study_is_deterministic():
    cfg = StudyConfig("bvp-left", 1.5, node_kind="chebyshev", n_list=(10, 20))
    assert rows_to_csv(run_study(cfg)) == rows_to_csv(run_study(cfg))


def test_study_error_names_cell():
    cfg = StudyConfig("bvp-left", 1.5, n_list=(5,))
    bench = cfg.bench
    object.__setattr__(bench, "forcing", lambda a, x: np.full_like(x, np.nan))
    try:
        with pytest.raises(StudyError, match="N=5"):
            run_study(cfg)
    finally:
        from fracgreen.problems import problem1_forcing

        object.__setattr__(bench, "forcing", problem1_forcing)


def test_csv_format():
    text = rows_to_csv([StudyRow(20, 0.05, 1e-3), StudyRow(40, 0.025, 2.5e-4, 2.0)])
    assert text == "n,h,error,rate\n20,0.050000000000000003,0.001,\n40,0.025000000000000001,0.00025000000000000001,2\n"


def test_markdown_format():
    text = rows_to_markdown([StudyRow(20, 0.05, 3.7361e-3), StudyRow(40, 0.025, 1.3654e-3, 1.3998)])
    assert "| 20 | 3.7361e-03 | -- |" in text and "| 40 | 1.3654e-03 | 1.3998 |" in text
    assert "least-squares slope" in text


def test_side_by_side_table():
    rows = [StudyRow(20, 0.05, 1e-3)]
    text = side_by_side_markdown({"Uniform": rows, "Chebyshev": rows})
    assert text.splitlines()[0].count("| N |") == 0 and "Chebyshev N" in text


def test_left_problem_chebyshev_snapshot():
    rows = run_study(StudyConfig("bvp-left", 1.5, node_kind="chebyshev"))
    np.testing.assert_allclose([r.error for r in rows], PROBLEM1_CHEB_15_SNAPSHOT, rtol=1e-3)
