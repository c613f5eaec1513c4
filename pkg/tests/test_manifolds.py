import json

import jsonschema
import pytest

from conftest import closed_surface, manifold_file
from errors import InconsistentDescriptor
from manifolds import PRESETS, ManifoldDescriptor, from_dict, manifold_validate, parse_manifold_argument, preset


def test_closed_surfaces_get_their_euler_characteristic():
    genus2 = closed_surface(2)
    assert genus2.euler == -2
    assert genus2.surface_kind == "closed_orientable_genus_g"
    assert genus2.pi1_finite is False
    assert closed_surface(0).surface_name() == "sphere"
    assert closed_surface(2, orientable=False).surface_name() == "klein_bottle"
    assert closed_surface(3, orientable=False).euler == -1


def test_sphere_with_wrong_euler_is_rejected():
    with pytest.raises(InconsistentDescriptor) as info:
        parse_manifold_argument(f"@{manifold_file('inconsistent_sphere.json')}")
    assert info.value.fields == ("euler", "surface_kind")


def test_torus_preset():
    torus = preset("torus")
    assert torus.euler == 0
    assert torus.closed
    assert torus.orientable
    assert torus.label() == "torus"


def test_closed_odd_dimensional_manifolds_have_zero_euler():
    assert preset("3-sphere").euler == 0
    circle = preset("circle")
    assert (circle.euler, circle.orientable, circle.parallelizable) == (0, True, True)
    with pytest.raises(InconsistentDescriptor):
        from_dict({"dim": 3, "compact": True, "euler": 2})


def test_boundary_keeps_given_euler():
    m = parse_manifold_argument(f"@{manifold_file('compact3_euler2.json')}")
    assert m.dim == 3 and m.has_boundary and m.euler == 2
    assert not m.closed


@pytest.mark.parametrize(
    "values",
    [
        {"dim": 3, "compact": True, "surface_kind": "torus"},
        {"dim": 3, "compact": True, "genus": 1},
        {"dim": 2, "compact": False, "surface_kind": "torus"},
        {"dim": 2, "compact": True, "surface_kind": "closed_orientable_genus_g"},
        {"dim": 2, "compact": True, "orientable": False, "genus": 0},
        {"dim": 2, "compact": True, "euler": 4},
    ],
)
def test_inconsistent_descriptors(values):
    with pytest.raises(InconsistentDescriptor):
        from_dict(values)


@pytest.mark.parametrize(
    "values",
    [
        {"dim": 2, "compact": True, "handles": 2},
        {"dim": 2},
        {"dim": 0, "compact": True},
        {"dim": 2, "compact": True, "surface_kind": "donut"},
        {"dim": "2", "compact": True},
    ],
)
def test_schema_violations(values):
    with pytest.raises(jsonschema.ValidationError):
        from_dict(values)


def test_inline_json_and_files():
    inline = parse_manifold_argument('{"dim": 2, "compact": true, "orientable": true, "genus": 2}')
    from_file = parse_manifold_argument(f"@{manifold_file('genus2.json')}")
    assert inline == from_file
    with pytest.raises(json.JSONDecodeError):
        parse_manifold_argument("not-a-preset")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_are_consistent(name):
    m = preset(name)
    assert m.name == name
    assert m.as_dict()["boundary"] is False


def test_unknown_euler_stays_unknown():
    m = from_dict({"dim": 4, "compact": False})
    assert m.euler is None
    assert "noncompact" in m.label()


def test_validation_fills_in_genus_facts():
    torus = manifold_validate(ManifoldDescriptor(dim=2, compact=True, orientable=True, genus=1))
    assert torus.surface_kind == "closed_orientable_genus_g"
    assert (torus.euler, torus.pi1_finite) == (0, False)
    with pytest.raises(InconsistentDescriptor) as info:
        manifold_validate(ManifoldDescriptor(dim=0, compact=True))
    assert info.value.fields == ("dim", "dim")
