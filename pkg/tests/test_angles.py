import numpy as np
import pytest

from hyperpolygon.angles import AngleSpec, check_lengths
from hyperpolygon.exceptions import InvalidInput


def test_admissible():
    spec = AngleSpec.from_degrees([60, 60, 60, 60])
    assert spec.n == 4
    assert spec.exterior_sum == pytest.approx(8 * np.pi / 3)
    assert isinstance(spec.beta, tuple)


@pytest.mark.parametrize(
    "angles",
    [[1.0, 1.0], [1.0, 0.0, 1.0], [1.0, np.pi, 1.0], [np.nan, 1.0, 1.0], [np.pi / 2] * 4],
)
def test_rejected(angles):
    with pytest.raises(InvalidInput):
        AngleSpec(angles)


def test_exterior_sum_must_exceed_full_turn():
    with pytest.raises(InvalidInput, match="more than 2\\*pi"):
        AngleSpec.from_degrees([90, 90, 90])


def test_check_lengths():
    assert np.array_equal(check_lengths([1, 0, 2], 3), [1.0, 0.0, 2.0])
    for bad in ([1, 2], [1, -1, 2], [1, np.inf, 2]):
        with pytest.raises(InvalidInput):
            check_lengths(bad, 3)
