import io

import pytest

from ssamask import fixtures
from ssamask.masking import MaskPlan, TrendSpec
from ssamask.microdata import GroupDefinition, load_microfile
from ssamask.textio import parse_grouping

TINY_MICROFILE = """duty,age
mil,17
mil,17
civ,17
mil,18
civ,19
mil,19
"""


@pytest.fixture
def adjusted_signal():
    return fixtures.adjusted_signal()


@pytest.fixture
def full_signal():
    return fixtures.full_signal()


@pytest.fixture
def reference_grouping():
    return parse_grouping(fixtures.GROUPING_TEXT, trend_subset=1)


@pytest.fixture
def reference_plan(reference_grouping):
    return MaskPlan(
        window_length=fixtures.WINDOW_LENGTH,
        grouping=reference_grouping,
        trend_spec=TrendSpec(mode="explicit", values=fixtures.REPLACEMENT_TREND),
    )


@pytest.fixture
def tiny_microfile():
    return load_microfile(io.StringIO(TINY_MICROFILE))


@pytest.fixture
def tiny_group():
    return GroupDefinition(
        vital_attributes=("duty",),
        vital_combinations=(("mil",),),
        parameter_attribute="age",
        parameter_values=("17", "18", "19"),
    )
