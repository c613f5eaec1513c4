"""
Manifold descriptors: the topological data the action rules consume, JSON
input with schema validation, named presets, and the classical consistency
facts about surfaces and closed manifolds.
"""

import json
import logging
from dataclasses import asdict, dataclass, replace

import jsonschema

from errors import InconsistentDescriptor

logger = logging.getLogger(__name__)

SURFACE_KINDS = (
    "plane",
    "sphere",
    "cylinder",
    "torus",
    "projective_plane",
    "moebius",
    "klein_bottle",
    "closed_orientable_genus_g",
    "closed_nonorientable_genus_g",
    "other",
)

MANIFOLD_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "compact": {"type": "boolean"},
        "boundary": {"type": "boolean"},
        "orientable": {"type": ["boolean", "null"]},
        "euler": {"type": ["integer", "null"]},
        "genus": {"type": ["integer", "null"], "minimum": 0},
        "pi1_finite": {"type": ["boolean", "null"]},
        "parallelizable": {"type": ["boolean", "null"]},
        "surface_kind": {"enum": list(SURFACE_KINDS) + [None]},
        "name": {"type": ["string", "null"]},
    },
    "required": ["dim", "compact"],
    "additionalProperties": False,
}

# facts implied by each named surface
SURFACE_FACTS = {
    "plane": dict(compact=False, has_boundary=False, orientable=True, euler=1, genus=0, pi1_finite=True),
    "sphere": dict(compact=True, has_boundary=False, orientable=True, euler=2, genus=0, pi1_finite=True),
    "cylinder": dict(compact=False, has_boundary=False, orientable=True, euler=0, pi1_finite=False),
    "torus": dict(compact=True, has_boundary=False, orientable=True, euler=0, genus=1, pi1_finite=False),
    "projective_plane": dict(compact=True, has_boundary=False, orientable=False, euler=1, genus=1, pi1_finite=True),
    "moebius": dict(compact=False, has_boundary=False, orientable=False, euler=0, pi1_finite=False),
    "klein_bottle": dict(compact=True, has_boundary=False, orientable=False, euler=0, genus=2, pi1_finite=False),
    "closed_orientable_genus_g": dict(compact=True, has_boundary=False, orientable=True),
    "closed_nonorientable_genus_g": dict(compact=True, has_boundary=False, orientable=False),
    "other": {},
}

PRESETS = {
    "plane": {"dim": 2, "compact": False, "surface_kind": "plane", "parallelizable": True},
    "sphere": {"dim": 2, "compact": True, "surface_kind": "sphere", "parallelizable": False},
    "cylinder": {"dim": 2, "compact": False, "surface_kind": "cylinder", "parallelizable": True},
    "torus": {"dim": 2, "compact": True, "surface_kind": "torus", "parallelizable": True},
    "projective_plane": {"dim": 2, "compact": True, "surface_kind": "projective_plane"},
    "moebius": {"dim": 2, "compact": False, "surface_kind": "moebius"},
    "klein_bottle": {"dim": 2, "compact": True, "surface_kind": "klein_bottle"},
    "circle": {"dim": 1, "compact": True, "boundary": False},
    "genus-2": {"dim": 2, "compact": True, "boundary": False, "orientable": True, "genus": 2},
    "3-sphere": {
        "dim": 3,
        "compact": True,
        "boundary": False,
        "orientable": True,
        "pi1_finite": True,
        "parallelizable": True,
    },
    "4-sphere": {
        "dim": 4,
        "compact": True,
        "boundary": False,
        "orientable": True,
        "euler": 2,
        "pi1_finite": True,
        "parallelizable": False,
    },
}


@dataclass(frozen=True)
class ManifoldDescriptor:
    dim: int
    compact: bool
    has_boundary: bool = False
    orientable: bool | None = None
    euler: int | None = None
    genus: int | None = None
    pi1_finite: bool | None = None
    parallelizable: bool | None = None
    surface_kind: str | None = None
    name: str | None = None

    @property
    def is_surface(self) -> bool:
        return self.dim == 2

    @property
    def closed(self) -> bool:
        return self.compact and not self.has_boundary

    def surface_name(self) -> str | None:
        """
        The surface's common name, with closed surfaces given by genus mapped to
        sphere, torus, projective plane or Klein bottle where they are one.
        """
        kind = self.surface_kind
        if kind == "closed_orientable_genus_g":
            return {0: "sphere", 1: "torus"}.get(self.genus, kind)
        if kind == "closed_nonorientable_genus_g":
            return {1: "projective_plane", 2: "klein_bottle"}.get(self.genus, kind)
        return kind

    def label(self) -> str:
        if self.name:
            return self.name
        kind = self.surface_name()
        if kind and kind != "other" and not kind.startswith("closed_"):
            return kind
        parts = [f"{self.dim}-manifold", "compact" if self.compact else "noncompact"]
        if self.has_boundary:
            parts.append("with boundary")
        if self.genus is not None:
            parts.append(f"genus {self.genus}")
        if self.euler is not None:
            parts.append(f"euler {self.euler}")
        return ", ".join(parts)

    def as_dict(self) -> dict:
        values = asdict(self)
        values["boundary"] = values.pop("has_boundary")
        return values


def _merge(m: ManifoldDescriptor, field: str, value, source: str) -> ManifoldDescriptor:
    current = getattr(m, field)
    if current is None:
        return replace(m, **{field: value})
    if current != value:
        raise InconsistentDescriptor(
            (field, source), f"{field} is {current!r} but {source} implies {value!r}"
        )
    return m


def manifold_validate(m: ManifoldDescriptor) -> ManifoldDescriptor:
    """
    Check cross-field consistency and fill in what the given fields imply
    (Euler characteristic of closed surfaces, circle facts, odd-dimensional
    closed manifolds having Euler characteristic 0).
    """
    if m.dim < 1:
        raise InconsistentDescriptor(("dim", "dim"), "dimension must be at least 1")
    if m.genus is not None and m.genus < 0:
        raise InconsistentDescriptor(("genus", "genus"), "genus must be nonnegative")
    if m.genus is not None and m.dim != 2:
        raise InconsistentDescriptor(("genus", "dim"), "genus is only meaningful for surfaces")

    if m.surface_kind is not None:
        if m.surface_kind not in SURFACE_KINDS:
            raise InconsistentDescriptor(("surface_kind", "surface_kind"), f"unknown kind {m.surface_kind!r}")
        if m.dim != 2:
            raise InconsistentDescriptor(("surface_kind", "dim"), "surface kinds need dim 2")
        for field, value in SURFACE_FACTS[m.surface_kind].items():
            if field in ("compact", "has_boundary"):
                if getattr(m, field) != value:
                    raise InconsistentDescriptor(
                        (field, "surface_kind"), f"a {m.surface_kind} has {field} = {value}"
                    )
                continue
            m = _merge(m, field, value, "surface_kind")

    if m.dim == 2 and m.closed and m.surface_kind is None and m.orientable is not None and m.genus is not None:
        kind = "closed_orientable_genus_g" if m.orientable else "closed_nonorientable_genus_g"
        m = replace(m, surface_kind=kind)

    if m.surface_kind == "closed_orientable_genus_g":
        if m.genus is None:
            raise InconsistentDescriptor(("genus", "surface_kind"), "closed orientable surface needs a genus")
        m = _merge(m, "euler", 2 - 2 * m.genus, "genus")
        m = _merge(m, "pi1_finite", m.genus == 0, "genus")
    if m.surface_kind == "closed_nonorientable_genus_g":
        if not m.genus:
            raise InconsistentDescriptor(("genus", "surface_kind"), "nonorientable genus must be at least 1")
        m = _merge(m, "euler", 2 - m.genus, "genus")
        m = _merge(m, "pi1_finite", m.genus == 1, "genus")

    if m.closed and m.dim == 1:
        m = _merge(m, "euler", 0, "dim")
        m = _merge(m, "orientable", True, "dim")
        m = _merge(m, "pi1_finite", False, "dim")
        m = _merge(m, "parallelizable", True, "dim")
    elif m.closed and m.dim % 2 == 1:
        m = _merge(m, "euler", 0, "dim")

    if m.dim == 2 and m.closed and m.euler is not None and m.euler > 2:
        raise InconsistentDescriptor(("euler", "dim"), "closed surfaces have euler characteristic at most 2")

    logger.debug(f"Validated manifold: {m.label()}")
    return m


def from_dict(values: dict) -> ManifoldDescriptor:
    jsonschema.validate(instance=values, schema=MANIFOLD_SCHEMA)
    return manifold_validate(
        ManifoldDescriptor(
            dim=values["dim"],
            compact=values["compact"],
            has_boundary=values.get("boundary", False),
            orientable=values.get("orientable"),
            euler=values.get("euler"),
            genus=values.get("genus"),
            pi1_finite=values.get("pi1_finite"),
            parallelizable=values.get("parallelizable"),
            surface_kind=values.get("surface_kind"),
            name=values.get("name"),
        )
    )


def preset(name: str) -> ManifoldDescriptor:
    return from_dict({**PRESETS[name], "name": name})


def parse_manifold_argument(text: str) -> ManifoldDescriptor:
    """A preset name, inline JSON, or @path to a JSON file."""
    if text in PRESETS:
        return preset(text)
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as f:
            return from_dict(json.load(f))
    return from_dict(json.loads(text))
