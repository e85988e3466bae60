from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtmlab.distributions import OutputDistribution, tvd
from qtmlab.errors import ValidationError


def exact_dist(**kw):
    return OutputDistribution({k: Fraction(*v) for k, v in kw.items()}, exact=True)


def test_tvd_identical():
    p = exact_dist(a=(1, 2), b=(1, 2))
    assert tvd(p, p) == 0


def test_tvd_disjoint_supports():
    p = OutputDistribution({"0": Fraction(1)})
    q = OutputDistribution({"1": Fraction(1)})
    assert tvd(p, q) == 1


def test_tvd_direct_formula():
    p = OutputDistribution({"0": Fraction(3, 4), "1": Fraction(1, 4)})
    q = OutputDistribution({"0": Fraction(1, 2), "1": Fraction(1, 2)})
    assert tvd(p, q) == Fraction(1, 4)


def test_incomplete_distribution_rejected():
    p = OutputDistribution({"0": Fraction(1, 2)})
    q = OutputDistribution({"0": Fraction(1)})
    with pytest.raises(ValidationError):
        tvd(p, q)


def test_float_mode_completeness_tolerance():
    p = OutputDistribution({"0": 0.5, "1": 0.5 + 1e-13}, exact=False)
    q = OutputDistribution({"0": 1.0}, exact=False)
    assert abs(tvd(p, q) - 0.5) < 1e-9


weights = st.lists(st.integers(1, 20), min_size=1, max_size=6)


def normalize(ws):
    total = sum(ws)
    return OutputDistribution(
        {str(i): Fraction(w, total) for i, w in enumerate(ws)}
    )


@given(weights, weights, weights)
def test_tvd_is_a_metric(wa, wb, wc):
    p, q, r = normalize(wa), normalize(wb), normalize(wc)
    # identity of indiscernibles
    assert (tvd(p, q) == 0) == (p == q)
    # symmetry
    assert tvd(p, q) == tvd(q, p)
    # triangle inequality
    assert tvd(p, r) <= tvd(p, q) + tvd(q, r)
    # range
    assert 0 <= tvd(p, q) <= 1


def test_negative_probability_rejected():
    with pytest.raises(ValidationError):
        OutputDistribution({"0": Fraction(-1, 2)})


def test_json_roundtrip():
    p = exact_dist(x=(2, 3), y=(1, 3))
    assert OutputDistribution.from_json(p.to_json()) == p
    q = OutputDistribution({"x": 0.25, "y": 0.75}, exact=False)
    assert OutputDistribution.from_json(q.to_json()) == q
