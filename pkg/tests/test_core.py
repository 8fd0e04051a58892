import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from csrel import core, su2, wh
from csrel.core import NormalizationError, pairwise_distance, probability_of, relation_size

finite = st.floats(-3, 3, allow_nan=False)


def test_probability_trivial():
    assert probability_of(1.0) == 1.0
    assert probability_of(0.0) == 0.0


def test_probability_glauber_unit_displacement():
    assert probability_of(math.exp(-0.5)) == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert probability_of(math.exp(-0.5)) == pytest.approx(0.36788, abs=5e-6)


def test_relation_size_examples():
    assert relation_size(1.0) == 0.0
    assert relation_size(0.0) == 1.0
    assert relation_size(math.cos(math.pi / 4)) == pytest.approx(math.sin(math.pi / 4), abs=1e-15)


def test_overshoot_policy():
    assert probability_of(1.0 + 1e-12) == 1.0
    assert relation_size(complex(0, 1 + 5e-10)) == 0.0
    with pytest.raises(NormalizationError):
        probability_of(1.0 + 1e-8)
    with pytest.raises(NormalizationError):
        relation_size(float("nan"))


@given(st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_size_probability_identity(r, phase):
    amp = r * complex(math.cos(phase), math.sin(phase))
    p, s = probability_of(amp), relation_size(amp)
    assert 0.0 <= s <= 1.0
    assert p + s * s == pytest.approx(1.0, abs=1e-14)


@given(st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_conjugation_symmetry(r, phase):
    amp = r * complex(math.cos(phase), math.sin(phase))
    assert probability_of(amp) == probability_of(amp.conjugate())


def test_pairwise_distance_examples():
    g = su2.SU2()
    x = su2.SphereLabel(1.0, 2.0)
    assert pairwise_distance(g, x, x) == pytest.approx(0.0, abs=1e-8)
    assert pairwise_distance(g, su2.NORTH, su2.SOUTH) == pytest.approx(1.0, abs=1e-15)
    w = wh.WH()
    assert pairwise_distance(w, 0.0, 1.0) == pytest.approx(math.sqrt(1 - math.exp(-1)), rel=1e-14)
    assert pairwise_distance(w, 0.0, 1.0) == pytest.approx(0.795060, abs=5e-7)


def test_group_mismatch():
    with pytest.raises(core.GroupMismatchError):
        pairwise_distance(su2.SU2(), su2.NORTH, 1.0)
    with pytest.raises(core.GroupMismatchError):
        pairwise_distance(wh.WH(1), [0.0, 1.0], 1.0)


@pytest.mark.parametrize("group", [su2.SU2(), wh.WH(1), wh.WH(2)], ids=["su2", "wh1", "wh2"])
def test_amplitude_matches_direct_overlap(group, rng):
    for _ in range(20):
        x, y = group.sample(rng), group.sample(rng)
        if isinstance(group, su2.SU2):
            direct = np.vdot(su2.spinor_of(x), su2.spinor_of(y))
        else:
            a, b = x.vec, y.vec
            direct = np.exp(-0.5 * np.vdot(a, a).real - 0.5 * np.vdot(b, b).real + np.vdot(a, b))
        assert group.amplitude(x, y) == pytest.approx(direct, abs=1e-14)
