import numpy as np
import pytest

from lpqmult import catalog, validate


def test_power_blocks_point_values():
    ex = catalog.build("power_blocks", r=2.0)
    f = ex.symbol
    assert float(f(4.25)) == pytest.approx(0.25**-0.5, rel=1e-12)  # = 2
    assert float(f(0.75)) == pytest.approx(0.25**-0.5, rel=1e-12)
    assert float(f(0.0)) == 0.0


def test_power_blocks_even():
    ex = catalog.build("power_blocks", r=2.0)
    rng = np.random.default_rng(12)
    xs = rng.uniform(0.01, 1000.0, 100)
    left = np.asarray(ex.symbol(-xs), dtype=float)
    right = np.asarray(ex.symbol(xs), dtype=float)
    assert np.array_equal(left, right)


def test_power_blocks_seq_values():
    r, K = 2.0, 8
    ex = catalog.build("power_blocks_seq", r=r, K=K)
    for k in range(0, K + 1):
        assert ex.symbol.value_at(2**k) == 1.0
    for k in range(1, K + 1):
        j = 2 ** (k + 1) - 1
        assert ex.symbol.value_at(j) == pytest.approx((2**k) ** (-1 / r), rel=1e-14)
    assert ex.symbol.value_at(0) == 0.0
    assert ex.symbol.value_at(-1) == 0.0


def test_edge_ramp_values():
    ex = catalog.build("edge_ramp", alpha=0.5)
    f = ex.symbol
    assert float(f(0.0)) == pytest.approx(2.0**0.5, rel=1e-14)
    assert float(f(2.0)) == 0.0
    assert float(f(3.0)) == 0.0
    assert float(f(-1.0)) == float(f(1.0))
    # derivative magnitude is symmetric and integrable
    assert abs(float(f.derivative_at(1.5))) == pytest.approx(0.5 * 0.5**-0.5, rel=1e-12)


def test_geometric_staircase_identities():
    r, K = 6.0, 10
    ex = catalog.build("geometric_staircase", r=r, K=K)
    lam = ex.symbol
    gamma = ex.parameters["gamma"]
    assert float(lam.value_at(0)) == pytest.approx(gamma, rel=1e-14)
    for k in range(0, K + 1):
        drops = sum((2.0 ** (-1 / r)) ** j for j in range(0, k + 1))
        assert float(lam.value_at(2**k)) == pytest.approx(gamma - drops, rel=1e-11)
        step = 2.0 ** (k / r) * abs(lam.value_at(2**k) - lam.value_at(2**k - 1))
        assert abs(step - 1.0) < 1e-12
        assert lam.value_at(-(2**k)) == lam.value_at(2**k)
    # tail is positive and equals the remaining geometric mass
    tail = sum((2.0 ** (-1 / r)) ** j for j in range(K + 1, 400))
    assert float(lam.value_at(2**K)) == pytest.approx(tail, rel=1e-9)
    assert float(lam.value_at(2**K)) > 0


def test_spike_train_values():
    r = 6.0
    ex = catalog.build("spike_train", r=r, K=8)
    lam = ex.symbol
    assert float(lam.value_at(5)) == pytest.approx(2.0 ** (-2 / r), rel=1e-14)
    total = sum(abs(lam.value_at(m) - lam.value_at(m - 1)) for m in range(4, 8))
    assert total == pytest.approx(2.0 * 2.0 ** (-2 / r), rel=1e-14)


def test_alternating_decay_values():
    ex = catalog.build("alternating_decay", tau=3.0, n_max=6)
    lam = ex.symbol
    assert float(lam.value_at(1)) == -1.0
    assert float(lam.value_at(0)) == 0.0
    s = abs(3.0 - 2.0) / (2.0 * 3.0)
    assert float(lam.value_at(4)) == pytest.approx(4.0**-s, rel=1e-14)
    assert float(lam.value_at(-4)) == float(lam.value_at(4))


def test_bump_train_values():
    r, gamma = 6.0, 0.5
    ex = catalog.build("bump_train", r=r, gamma=gamma, k_hi=6)
    f = ex.symbol
    # peak of the bump on block k sits at 2^k + 2 with height 2^{-k/r} 2^gamma
    for k in (2, 4, 6):
        peak = float(f(2.0**k + 2.0))
        assert peak == pytest.approx(2.0 ** (-k / r) * 2.0**gamma, rel=1e-12)
        assert float(f(2.0**k)) == 0.0
        assert float(f(2.0**k + 4.0)) == 0.0
    assert float(f(3.0)) == 0.0


def test_catalog_rejects_bad_parameters():
    with pytest.raises(ValueError):
        catalog.build("edge_ramp", alpha=1.5)
    with pytest.raises(ValueError):
        catalog.build("bump_train", gamma=0.0)
    with pytest.raises(ValueError):
        catalog.build("alternating_decay", tau=2.0)
    with pytest.raises(KeyError):
        catalog.build("unknown_example")


def test_all_expected_checks_pass():
    for name in sorted(catalog.REGISTRY):
        ex = catalog.build(name)
        rows = validate.run_example(ex)
        for row in rows:
            assert row.passed, row.format()


def test_tolerance_zero_fails_only_quadrature_rows():
    ex = catalog.build("power_blocks")  # quadrature-based tolerances
    rows = validate.run_example(ex, tolerance=0.0)
    value_rows = [r for r in rows if r.quantity in ("hoermander_block_sup", "hoermander_block_each")]
    assert any(not r.passed for r in value_rows)

    exact = catalog.build("spike_train")  # machine-precision expectations
    rows = validate.run_example(exact, tolerance=0.0)
    assert all(r.passed for r in rows)
