"""Size-function estimates from ball covers: Python bindings over the pbnest core."""

import json

from . import _core
from ._core import (
    Diagram,
    ValidationError,
    analytic_circle_diagram,
    dual_diagram,
    pseudodistance_bound,
    scenario_names,
    union_diagram,
)

__all__ = [
    "Diagram",
    "ValidationError",
    "analytic_circle_diagram",
    "classify",
    "density_check_circle",
    "dual_diagram",
    "pseudodistance_bound",
    "run_scenario",
    "sandwich",
    "scenario_names",
    "search_bound",
    "strips",
    "union_diagram",
]


def density_check_circle(points, radius, tau, offset=None, center=(0.0, 0.0), circle_radius=4.0):
    return json.loads(_core.density_check_circle(points, radius, tau, offset, list(center), circle_radius))


def strips(diagram, degree, W):
    return json.loads(_core.strips(diagram, degree, W))


def classify(diagram, degree, W, u, v):
    """Returns ("inside" | "outside", max-norm distance to the nearest strip line)."""
    return _core.classify(diagram, degree, W, u, v)


def sandwich(diagram, degree, u, v, omega, regime="on-manifold", extra=0.0):
    return json.loads(_core.sandwich(diagram, degree, u, v, omega, regime, extra))


def search_bound(a, wa, b, wb, degrees=(0, 1)):
    text = _core.search_bound(a, wa, b, wb, list(degrees))
    return None if text is None else json.loads(text)


def run_scenario(name, out=""):
    return json.loads(_core.run_scenario(name, str(out)))
