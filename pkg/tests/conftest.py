from functools import cache
from pathlib import Path

import pytest

from catalog import build
from config import DEFAULT_CONFIG
from expressions import parse_expression
from manifolds import from_dict, preset
from obstruction import build_profile

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# fewer samples keep the sampled-rank paths quick; exact paths ignore it
FAST_CONFIG = DEFAULT_CONFIG.with_overrides(samples=3)


@cache
def algebra(text: str):
    return build(parse_expression(text))


@cache
def profile(text: str):
    return build_profile(algebra(text), parse_expression(text), FAST_CONFIG)


def closed_surface(genus: int, orientable: bool = True):
    return from_dict({"dim": 2, "compact": True, "boundary": False, "orientable": orientable, "genus": genus})


def manifold_file(name: str):
    return FIXTURES / "manifolds" / name


def descriptor_grid():
    """Surfaces and higher-dimensional descriptors used by the grid suites."""
    grid = [preset(name) for name in (
        "plane",
        "sphere",
        "cylinder",
        "torus",
        "projective_plane",
        "moebius",
        "klein_bottle",
        "circle",
        "genus-2",
        "3-sphere",
        "4-sphere",
    )]
    grid += [closed_surface(3), closed_surface(3, orientable=False), closed_surface(4, orientable=False)]
    grid += [
        from_dict({"dim": 2, "compact": True, "boundary": True, "orientable": True, "euler": 1, "name": "disk"}),
        from_dict({"dim": 2, "compact": False, "parallelizable": True, "surface_kind": "other", "name": "punctured torus"}),
        from_dict({"dim": 3, "compact": True, "boundary": True, "euler": 2, "name": "two balls"}),
        from_dict({"dim": 3, "compact": False, "parallelizable": True, "euler": 1, "name": "R^3"}),
        from_dict({"dim": 4, "compact": True, "boundary": False, "euler": -2, "name": "closed 4-manifold"}),
        from_dict({"dim": 4, "compact": False, "parallelizable": True, "euler": 1, "name": "R^4"}),
        from_dict({"dim": 1, "compact": False, "name": "line"}),
    ]
    return grid


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def fast_config():
    return FAST_CONFIG
