import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbow_dkp import algebra
from rainbow_dkp.algebra import Signature, beta_flat, coupled_system_residual, kemmer_residual
from rainbow_dkp.errors import DomainError
from rainbow_dkp.rainbow import IDENTITY, RainbowPair, metric_at


def test_beta0_block():
    b0 = beta_flat(0)
    assert np.array_equal(b0[:2, :2], [[0, 1], [1, 0]])
    assert not b0[2:].any() and not b0[:, 2:].any()


def test_beta1_entries():
    b1 = beta_flat(1)
    assert b1[0, 2] == -1 and b1[2, 0] == 1
    assert np.count_nonzero(b1) == 2


def test_beta0_cubed():
    b0 = beta_flat(0)
    assert np.array_equal(b0 @ b0 @ b0, b0)


def test_flat_matrices_are_read_only():
    with pytest.raises(ValueError):
        beta_flat(2)[0, 0] = 5
    with pytest.raises(IndexError):
        beta_flat(4)


def test_kemmer_all_triples_mostly_minus():
    for t in itertools.product(range(4), repeat=3):
        res = kemmer_residual(*t, Signature.MOSTLY_MINUS)
        assert res.dtype == np.int64
        assert not res.any(), t


def test_kemmer_mostly_plus_fails_at_000():
    res = kemmer_residual(0, 0, 0, Signature.MOSTLY_PLUS)
    assert np.array_equal(res, 4 * beta_flat(0))
    good, failing = algebra.kemmer_summary(Signature.MOSTLY_PLUS)
    assert good == 36 and (0, 0, 0) in failing


def test_curved_beta_examples():
    assert np.array_equal(algebra.curved_beta("t", IDENTITY, 0.7, 1.0, 1.0), beta_flat(0))
    assert np.array_equal(algebra.curved_beta("phi", IDENTITY, 0.7, 2.0, 0.5), beta_flat(2))
    got = algebra.curved_beta("r", RainbowPair("case1", 0.5), 0.5, 1.0, 1.0)
    np.testing.assert_allclose(got, 4 / 3 * beta_flat(1), rtol=1e-15)
    with pytest.raises(DomainError):
        algebra.curved_beta("phi", IDENTITY, 0.7, 0.0, 0.5)


@settings(max_examples=60)
@given(
    st.sampled_from(["identity", "case1", "case2", "case3"]),
    st.floats(0.0, 2.0),
    st.floats(0.0, 0.6),
    st.floats(0.01, 10.0),
    st.floats(0.05, 1.0),
)
def test_tetrads_reproduce_metric(scenario, eps, x, r, alpha):
    pair = RainbowPair(scenario, eps)
    if scenario == "case1" and eps * x > 0.95:
        return
    if scenario == "case2" and eps * x * x > 0.95:
        return
    tet = algebra.tetrads(pair, x, r, alpha)
    ref = metric_at(pair, x, r, alpha).as_tuple()
    np.testing.assert_allclose(tet.metric(), ref, rtol=1e-12)


def test_connection_is_antisymmetric():
    g = algebra.affine_connection(0.4)
    assert np.array_equal(g, -g.T) and g[2, 3] == 0.4


def _kw(**over):
    kw = dict(energy=1.2, pair=IDENTITY, r=0.7, alpha=0.5, omega=1.0, mass=0.8, m=1)
    kw.update(over)
    return kw


def test_zero_spinor_zero_residual():
    assert not coupled_system_residual(np.zeros(5), 0.0, 0.0, **_kw()).any()


def test_second_equation_exact_by_construction():
    pair = RainbowPair("case3", 0.5)
    e, m = 0.9, 0.8
    phi1 = 0.37
    phi = [phi1, e * pair.g0(e) * phi1 / m, 0.1, 0.2, 0.0]
    res = coupled_system_residual(phi, 0.0, 0.0, **_kw(energy=e, pair=pair, mass=m))
    assert res[1] == 0.0


def test_bilinear_current_real():
    psi = np.array([1.0, 0.5, 0.2j, 0.1, 0.0])
    val = algebra.bilinear_current(psi, beta_flat(0).astype(float))
    assert val == pytest.approx(0.5)
