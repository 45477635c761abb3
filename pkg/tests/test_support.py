import xml.etree.ElementTree as ET

import pytest

from murqubit import override_tolerances, tolerances
from murqubit._svg import line_plot
from murqubit.compat import is_jointly_measurable


def test_defaults():
    assert tolerances.structural == 1e-9 and tolerances.arithmetic == 1e-12


def test_override_is_scoped():
    c, d = [0.0, 1.0, 0.0], [0.0, 0.0, 1e-4]
    assert not is_jointly_measurable(c, d)
    with override_tolerances(structural=1e-3):
        assert is_jointly_measurable(c, d)
    assert tolerances.structural == 1e-9


def test_override_restores_after_error():
    with pytest.raises(RuntimeError):
        with override_tolerances(arithmetic=1e-3):
            raise RuntimeError
    assert tolerances.arithmetic == 1e-12


def test_unknown_tolerance():
    with pytest.raises(AttributeError):
        with override_tolerances(bogus=1.0):
            pass


def test_svg_is_well_formed():
    svg = line_plot([("curve", [0, 1, 2], [0, 1, 0.5], "line"), ("data", [0.5], [0.7], "points")], "t", "x", "y")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")


def test_svg_constant_series():
    ET.fromstring(line_plot([("flat", [1, 1], [0, 0], "line")]))
