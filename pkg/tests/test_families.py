import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdnf import (
    Pdnf,
    ProbTriple,
    SoftmaxFamily,
    ThresholdFamily,
    WarpedSoftmaxFamily,
    WeightMatrix,
    entropy_grid,
    partition_probs,
    total_entropy,
    validate_definition,
)

GRID = np.linspace(-6.0, 6.0, 241)


def test_prob_triple_validation():
    ProbTriple(0.2, 0.3, 0.5).validate()
    with pytest.raises(ValueError):
        ProbTriple(0.5, 0.6, 0.2).validate()
    with pytest.raises(ValueError):
        ProbTriple(-0.1, 0.6, 0.5).validate()


def test_softmax_uniform_at_zero():
    fam = SoftmaxFamily.default(1)
    np.testing.assert_allclose(fam.eval(0, 0.0).as_array(), 1.0 / 3.0)


def test_softmax_known_triple():
    # alpha = ln(0.1, 0.3, 0.6) at weight 1 reproduces the triple exactly
    alpha = [[math.log(0.1), math.log(0.3), math.log(0.6)]]
    fam = SoftmaxFamily(alpha)
    t = fam.eval(0, 1.0)
    np.testing.assert_allclose(t.as_array(), [0.1, 0.3, 0.6], atol=3e-16)


def test_softmax_stable_for_huge_weights():
    fam = SoftmaxFamily.default(1)
    hi = fam.eval(0, 800.0)
    lo = fam.eval(0, -800.0)
    assert hi.p_pos == pytest.approx(1.0)
    assert lo.p_neg == pytest.approx(1.0)
    for t in (hi, lo):
        assert math.isfinite(t.p_neg) and math.isfinite(t.p_pos)


def test_softmax_rejects_bad_alpha():
    with pytest.raises(ValueError):
        SoftmaxFamily([[1.0, 2.0]])  # needs three exponents
    with pytest.raises(ValueError):
        SoftmaxFamily(np.empty((0, 3)))


def test_softmax_constant_variables():
    fam = SoftmaxFamily([[0.0, 0.0, 0.0], [-1.0, 0.0, 1.0]])
    assert fam.constant_variables == [0]


def test_eval_array_matches_eval():
    fam = SoftmaxFamily.default(2)
    xs = np.array([-1.5, 0.0, 2.0])
    arr = fam.eval_array(1, xs)
    assert arr.shape == (3, 3)
    for i, x in enumerate(xs):
        np.testing.assert_allclose(arr[i], fam.eval(1, float(x)).as_array())


def test_eval_rejects_out_of_range_variable():
    fam = SoftmaxFamily.default(2)
    with pytest.raises(IndexError):
        fam.eval(2, 0.0)
    with pytest.raises(IndexError):
        fam.eval(-1, 0.0)


def test_grid_shape_and_consistency():
    fam = SoftmaxFamily.default(2)
    xi = np.array([[0.0, 1.0], [-1.0, 2.0]])
    g = fam.grid(xi)
    assert g.shape == (2, 2, 3)
    np.testing.assert_allclose(g[1, 0], fam.eval(0, -1.0).as_array())


def test_threshold_branches():
    fam = ThresholdFamily([0.0], [2.0])
    np.testing.assert_allclose(fam.eval(0, -1.0).as_array(), [1.0, 0.0, 0.0])
    np.testing.assert_allclose(fam.eval(0, 0.5).as_array(), [0.75, 0.25, 0.0])
    np.testing.assert_allclose(fam.eval(0, 2.0).as_array(), [0.0, 0.0, 1.0])
    np.testing.assert_allclose(fam.eval(0, 5.0).as_array(), [0.0, 0.0, 1.0])


def test_threshold_jump_at_high_edge():
    fam = ThresholdFamily([0.0], [1.0])
    just_below = fam.eval(0, 1.0 - 1e-12)
    at_edge = fam.eval(0, 1.0)
    assert just_below.p_eps == pytest.approx(1.0, abs=1e-9)
    assert at_edge.p_pos == 1.0  # discontinuity is part of the contract


def test_threshold_rejects_bad_band():
    with pytest.raises(ValueError):
        ThresholdFamily([1.0], [1.0])
    with pytest.raises(ValueError):
        ThresholdFamily([2.0], [1.0])
    with pytest.raises(ValueError):
        ThresholdFamily([0.0, 0.0], [1.0])  # length mismatch


@given(st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_triples_always_normalized(x):
    for fam in (SoftmaxFamily.default(1), ThresholdFamily([-1.0], [1.5]),
                WarpedSoftmaxFamily([[-1.0, 0.0, 1.0]])):
        t = fam.eval(0, x)
        t.validate(tol=1e-9)


def test_definition_report_softmax():
    rep = validate_definition(SoftmaxFamily.default(1), GRID)
    assert rep.sums_to_one and rep.pos_nondecreasing and rep.neg_nonincreasing
    # exp family puts mass 1/3 on each literal at weight 0, so the
    # all-mass-on-absence clause holds only in the scaling limit
    assert not rep.zero_condition
    assert not rep.strict
    assert rep.failures == {"zero": [0]}


def test_definition_report_threshold():
    rep = validate_definition(ThresholdFamily([0.0], [1.0]), GRID)
    assert rep.sums_to_one and rep.pos_nondecreasing and rep.neg_nonincreasing
    assert not rep.zero_condition  # weight 0 sits at the band floor


def test_definition_report_needs_dense_grid():
    with pytest.raises(ValueError):
        validate_definition(SoftmaxFamily.default(1), np.linspace(-1, 1, 50))


def test_warped_softmax_monotone_but_not_exponential():
    fam = WarpedSoftmaxFamily([[-1.0, 0.0, 1.0]])
    rep = validate_definition(fam, GRID)
    assert rep.sums_to_one and rep.pos_nondecreasing and rep.neg_nonincreasing


def test_entropy_values():
    assert entropy_grid(np.array([0.1, 0.3, 0.6])) == pytest.approx(
        0.8979457248567797, abs=1e-15)
    assert entropy_grid(np.array([1.0, 0.0, 0.0])) == 0.0
    assert entropy_grid(np.array([1 / 3, 1 / 3, 1 / 3])) == pytest.approx(math.log(3))


def test_total_entropy_bounds():
    uniform = Pdnf(WeightMatrix([[0.0], [0.0]]), SoftmaxFamily.default(1))
    assert total_entropy(uniform) == pytest.approx(2 * math.log(3))
    det = Pdnf(WeightMatrix([[5.0], [-3.0]]), ThresholdFamily([0.0], [1.0]))
    assert total_entropy(det) == 0.0


@given(st.floats(-30, 30), st.floats(-30, 30))
def test_entropy_within_bounds(a, b):
    p = Pdnf(WeightMatrix([[a], [b]]), SoftmaxFamily.default(1))
    h = total_entropy(p)
    assert -1e-12 <= h <= 2 * math.log(3) + 1e-12


def test_partition_probs():
    t = partition_probs(sizes_pos=3, sizes_neg=2, sizes_eps=1)
    np.testing.assert_allclose(t.as_array(), [2 / 6, 1 / 6, 3 / 6])
    with pytest.raises(ValueError):
        partition_probs(0, 0, 0)
    with pytest.raises(ValueError):
        partition_probs(-1, 1, 1)


def test_family_equality_and_repr():
    a = SoftmaxFamily.default(2)
    b = SoftmaxFamily.default(2)
    assert a == b and hash(a) == hash(b)
    assert a != SoftmaxFamily([[0.0, 0.0, 1.0], [-1.0, 0.0, 1.0]])
    assert "SoftmaxFamily" in repr(a)
    t = ThresholdFamily([0.0], [1.0])
    assert t == ThresholdFamily([0.0], [1.0])
    assert "ThresholdFamily" in repr(t)
