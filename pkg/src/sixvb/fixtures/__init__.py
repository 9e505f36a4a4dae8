"""Bundled lattice instances: a four-line crossed lattice and the nested
initial condition with the same parameters."""

from __future__ import annotations

import json
from importlib import resources

from ..lattice import LatticeSpec, spec_from_dict


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")


def load_fixture(name: str) -> LatticeSpec:
    return spec_from_dict(json.loads(fixture_text(name)))


def figure_lattice() -> LatticeSpec:
    """Four crossed lines, three of them reflected."""
    return load_fixture("figure_lattice.json")


def initial_condition() -> LatticeSpec:
    """The nested pairing with the same reflections and parameters."""
    return load_fixture("initial_condition.json")
