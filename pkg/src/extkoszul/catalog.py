"""Named ideals and coordinate changes used by the CLI and the replay suite."""
from __future__ import annotations

from typing import Dict

from .algebra import LinearChange, LinearForm, UsageError
from .field import QQ, Field
from .graphs import edge_ideal, preset
from .groebner import Ideal
from .parse import parse_ideal, parse_linear_form

_TEXT: Dict[str, str] = {
    # two quadrics without a quadratic Gröbner basis in these coordinates
    "thieu": "e1*e2 - e3*e4, e1*e3 - e2*e4",
    "principal": "e1*e2 + e3*e4",
    "two-triangles": (
        "e1*e2 + e3*e4, e1*e3 + e2*e4, e2*e3 + e1*e4, "
        "e5*e6 + e7*e8, e5*e7 + e6*e8, e6*e7 + e5*e8"
    ),
    # u, v, w, x, y, z, c -> e1 .. e7
    "claim-ideal": "e1*e2, e1*e3, e2*e3, e4*e5, e4*e6, e5*e6, e1*e4*e5*e7, e2*e4*e5*e7",
    # path on 7 vertices modulo e1 + e4 + e7, eliminating e7
    "path7-quotient": "e1*e2, e2*e3, e3*e4, e4*e5, e5*e6, e6*(e1 + e4)",
    "b0": "e1*e6, e2*e4, e3*e5, e1*e4, e2*e5, (e4 - e3)*e6",
}

_VARS: Dict[str, int] = {
    "thieu": 4,
    "principal": 4,
    "two-triangles": 8,
    "claim-ideal": 7,
    "path7-quotient": 6,
    "b0": 6,
}


def named_ideal(name: str, field: Field = QQ) -> Ideal:
    """A catalog ideal, or the edge ideal of a graph preset such as ``path:7``."""
    key = name.lower()
    if key in _TEXT:
        return parse_ideal(_TEXT[key], _VARS[key], field)
    try:
        return edge_ideal(preset(key), field)
    except UsageError:
        known = ", ".join(sorted(_TEXT))
        raise UsageError(f"unknown ideal {name!r}; known names: {known}, or a graph preset like path:7") from None


def names():
    return sorted(_TEXT)


def thieu_change(field: Field = QQ) -> LinearChange:
    """New coordinates ``e1+e4, e2+e3, e1-e4, e2-e3``."""
    forms = [parse_linear_form(t, 4, field) for t in ("e1 + e4", "e2 + e3", "e1 - e4", "e2 - e3")]
    return LinearChange.from_new_coordinates(forms)


def b0_identification(field: Field = QQ) -> LinearChange:
    """``e1 -> -x3, e2 -> x5, e3 -> x2, e4 -> x4, e5 -> x1, e6 -> x6``."""
    images = [LinearForm.from_element(parse_ideal(t, 6, field).generators[0]) for t in ("-e3", "e5", "e2", "e4", "e1", "e6")]
    return LinearChange.from_images(images)
