import pytest

from teleact.params import with_resolution
from teleact.presets import baseline


@pytest.fixture
def baseline_design():
    return baseline()


@pytest.fixture
def fast_design():
    """Baseline at reduced resolution, for pipeline tests that loop."""
    return with_resolution(
        baseline(), angular_step_deg=30.0, contour_points=64, samples_per_segment=32
    )
