import math

from lpqmult.growth import (
    GrowthRung,
    assess_divergence,
    assess_mass_witness,
    bound_from_ladder,
    doubling_ladder,
    exponent_ladder,
)

THRESH = 2 ** 0.25  # r = 2


def rungs(values, masses=None):
    masses = masses or [None] * len(values)
    return [GrowthRung(scale=2.0**i, value=v, mass=m) for i, (v, m) in enumerate(zip(values, masses))]


def test_ladder_shapes():
    assert exponent_ladder(13) == [2, 4, 7, 13]
    assert exponent_ladder(3) == [2, 3]
    assert doubling_ladder(9) == [6, 7, 8, 9]
    assert doubling_ladder(3) == [2, 3]


def test_divergence_needs_three_rungs():
    assert not assess_divergence(rungs([1.0, 2.0]), THRESH)


def test_divergence_fires_on_sustained_growth():
    assert assess_divergence(rungs([1.0, 1.5, 2.3, 3.5]), THRESH)


def test_divergence_rejects_stabilising_values():
    assert not assess_divergence(rungs([1.0, 1.5, 1.6, 1.62]), THRESH)


def test_divergence_rejects_non_monotone():
    assert not assess_divergence(rungs([1.0, 3.0, 2.0, 5.0]), THRESH)


def test_divergence_zero_prefix():
    # leading zero rungs: ratio from zero counts as infinite growth
    assert assess_divergence(rungs([0.0, 1.0, 2.0]), THRESH)
    # all-zero then a single jump at the end is only one qualifying ratio
    assert not assess_divergence(rungs([0.0, 0.0, 1.0]), THRESH)


def test_mass_witness_fires_on_doubling_mass():
    rs = rungs([1.0, 1.01, 1.02, 1.02], masses=[4.0, 8.0, 16.0, 32.0])
    assert assess_mass_witness(rs)


def test_mass_witness_rejects_saturation():
    rs = rungs([1.0, 1.0, 1.0, 1.0], masses=[4.0, 8.0, 8.0, 8.0])
    assert not assess_mass_witness(rs)


def test_mass_witness_needs_mass_data():
    assert not assess_mass_witness(rungs([1.0, 2.0, 4.0]))


def test_bound_from_ladder_reports_last_value():
    bv = bound_from_ladder(rungs([1.0, 2.0, 4.0]), THRESH, flags=("note",))
    assert bv.value == 4.0
    assert bv.divergent
    assert bv.flags == ("note",)
    doc = bv.to_json()
    assert doc["divergent"] is True and len(doc["growth"]) == 3
