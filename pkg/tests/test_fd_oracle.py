import numpy as np
import pytest
from scipy.linalg import eigvalsh_tridiagonal

from rainbow_dkp import fd_oracle
from rainbow_dkp.errors import ParameterError, ResolutionError
from rainbow_dkp.spectrum import ModelParams, QuantumNumbers


def test_operator_is_symmetric_tridiagonal():
    op = fd_oracle.build_operator(1.0, 1.0, 12.0, 200)
    dense = op.dense()
    assert np.array_equal(dense, dense.T)
    np.testing.assert_allclose(op.offdiag, -1.0 / (12.0 / 200) ** 2)
    flux = fd_oracle.build_operator(1.0, 0.0, 12.0, 200)
    assert flux.scheme == "flux" and np.all(flux.offdiag < 0)


@pytest.mark.parametrize("abs_j", [0.0, 1.0, 2.5])
def test_sturm_bisection_matches_lapack(abs_j):
    op = fd_oracle.build_operator(0.8, abs_j, 10.0, 3000)
    want = eigvalsh_tridiagonal(op.diag, op.offdiag, select="i", select_range=(0, 5))
    got = fd_oracle.lowest_eigenvalues(op, 6, check_resolution=False)
    np.testing.assert_allclose(got, want, atol=1e-9, rtol=0)


def test_first_levels_j1():
    op = fd_oracle.build_operator(1.0, 1.0, 12.0, 20_000)
    vals = fd_oracle.lowest_eigenvalues(op, 3)
    np.testing.assert_allclose(vals, [4.0, 8.0, 12.0], rtol=5e-4)


def test_ground_level_j0():
    op = fd_oracle.build_operator(1.0, 0.0, 12.0, 20_000)
    assert fd_oracle.lowest_eigenvalues(op, 1)[0] == pytest.approx(2.0, rel=1e-4)


@pytest.mark.parametrize("alpha, m", [(0.5, 1), (1.0, 0)])
def test_certify_examples(alpha, m):
    rep = fd_oracle.certify_quantization(ModelParams(0.8, 1.0, 0.0, alpha), QuantumNumbers(0, m))
    assert rep.passed and len(rep.levels) == 5
    gaps = np.diff([lv.fd_value for lv in rep.levels])
    np.testing.assert_allclose(gaps, 4 * 0.8, rtol=1e-3)
    assert all("PASS" in line for line in rep.lines())


def test_coarse_grid_raises():
    with pytest.raises(ResolutionError):
        fd_oracle.certify_quantization(ModelParams(0.8, 1.0, 0.0, 0.5), QuantumNumbers(0, 1), points=128)


def test_second_order_convergence():
    _, errs, orders = fd_oracle.convergence_study(1.0, 2.0, base_points=1000)
    assert errs[0] > errs[-1]
    assert all(1.8 <= o <= 2.2 for o in orders)


def test_level_count_limits():
    op = fd_oracle.build_operator(1.0, 1.0, 12.0, 200)
    with pytest.raises(ParameterError):
        fd_oracle.lowest_eigenvalues(op, 11)
    with pytest.raises(ParameterError):
        fd_oracle.build_operator(1.0, 1.0, 12.0, 4)
