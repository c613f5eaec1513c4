"""
Reports: the JSON document written by `analyze` and `invariants`, its
schema, and the plain-text rendering.
"""

import logging

import jsonschema

from config import AnalysisConfig
from manifolds import ManifoldDescriptor
from obstruction import AlgebraProfile, Verdict
from rules import MODES, REGULARITIES

logger = logging.getLogger(__name__)

REPORT_VERSION = 1
TOOL_NAME = "lie-actions"
TOOL_VERSION = "0.1.0"

_CITATION = {
    "type": "object",
    "properties": {
        "theorem": {"type": "string"},
        "quote": {"type": "string"},
        "tag": {"type": ["string", "null"]},
    },
    "required": ["theorem", "quote", "tag"],
}

_NOTE = {
    "type": "object",
    "properties": {
        **_CITATION["properties"],
        "message": {"type": "string"},
        "values": {"type": "object"},
    },
    "required": ["theorem", "quote", "message", "values"],
}

_VERDICT = {
    "type": "object",
    "properties": {
        "regularity": {"enum": list(REGULARITIES)},
        "mode": {"enum": list(MODES)},
        "status": {"enum": ["IMPOSSIBLE", "POSSIBLE", "UNKNOWN"]},
        "citations": {"type": "array", "items": _CITATION},
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "rule": {"type": "string"},
                    "title": {"type": "string"},
                    "fired": {"type": "boolean"},
                },
                "required": ["rule", "fired"],
            },
        },
        "notes": {"type": "array", "items": _NOTE},
    },
    "required": ["regularity", "mode", "status", "citations", "trace", "notes"],
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "report_v": {"const": REPORT_VERSION},
        "tool": {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "version": {"type": "string"},
                "config": {"type": "object"},
            },
            "required": ["name", "version", "config"],
        },
        "algebra": {
            "type": ["object", "null"],
            "properties": {
                "label": {"type": "string"},
                "dim": {"type": "integer", "minimum": 0},
                "expression": {"type": ["string", "null"]},
                "flags": {"type": "object"},
                "spectral_rank": {"type": "object"},
                "ac": {"type": "object"},
                "derived_in_center": {"type": "array", "items": {"type": "boolean"}},
                "factors": {"type": "array"},
                "notes": {"type": "array", "items": _NOTE},
            },
            "required": ["label", "dim", "flags", "spectral_rank", "ac", "notes"],
        },
        "manifold": {"type": ["object", "null"]},
        "verdicts": {"type": "array", "items": _VERDICT},
        "discrepancies": {"type": "array", "items": _NOTE},
    },
    "required": ["report_v", "tool", "algebra", "manifold", "verdicts", "discrepancies"],
    "additionalProperties": False,
}


def build_report(
    profile: AlgebraProfile | None,
    manifold: ManifoldDescriptor | None,
    verdicts: list[Verdict],
    cfg: AnalysisConfig,
) -> dict:
    return {
        "report_v": REPORT_VERSION,
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION, "config": cfg.as_dict()},
        "algebra": profile.as_dict() if profile is not None else None,
        "manifold": manifold.as_dict() if manifold is not None else None,
        "verdicts": [verdict.as_dict() for verdict in verdicts],
        "discrepancies": [note.as_dict() for note in profile.notes] if profile is not None else [],
    }


def validate_report(report: dict) -> dict:
    jsonschema.validate(instance=report, schema=REPORT_SCHEMA)
    return report


def _yes_no(value) -> str:
    if value is None:
        return "unknown"
    return "yes" if value else "no"


def render_profile(algebra: dict) -> list[str]:
    flags = algebra["flags"]
    spectral = algebra["spectral_rank"]
    ac = algebra["ac"]
    lines = [
        f"Algebra: {algebra['label']} (dimension {algebra['dim']})",
        f"  derived length: {flags['derived_length'] if flags['solvable'] else 'not solvable'}",
        f"  derived series dims: {flags['derived_dims']}",
        f"  nilpotency class: {flags['nilpotency_class'] if flags['nilpotent'] else 'not nilpotent'}",
        f"  center dim: {flags['center_dim']}",
        f"  Killing determinant sign: {flags['killing_det_sign']}",
        f"  abelian: {_yes_no(flags['abelian'])}, nilpotent: {_yes_no(flags['nilpotent'])}, "
        f"solvable: {_yes_no(flags['solvable'])}, semisimple: {_yes_no(flags['semisimple'])}",
        f"  supersoluble: {_yes_no(flags['supersoluble'])} ({flags['supersoluble_certainty']})",
    ]
    if flags["semisimple_rank"] is not None:
        lines.append(f"  semisimple rank: {flags['semisimple_rank']}")
    if flags["supersoluble_witness_charpoly"]:
        lines.append(f"  nonreal witness charpoly: {flags['supersoluble_witness_charpoly']}")
    lines.append(
        f"  r = {spectral['r']}, r_NR = {spectral['r_nr']} "
        f"({spectral['method']}, {spectral['certainty']})"
    )
    if spectral["r_real"] is not None:
        lines.append(
            f"  over the real spectrum: r = {spectral['r_real']}, r_NR = {spectral['r_nr_real']}"
        )
    lines.append(f"  AC status: {ac['status']}" + (f" ({ac['reason']})" if ac["reason"] else ""))
    if ac["spectrum"]:
        lines.append(f"  grading spectrum: {', '.join(ac['spectrum'])}")
    for factor in algebra.get("factors", []):
        lines.append(
            f"  factor {factor['factor']}: AC {factor['ac_status']}, "
            f"scalar-free realization {_yes_no(factor['scalar_free_rep'])}, "
            f"size {factor['rep_size'] if factor['rep_size'] is not None else '-'}"
        )
    return lines


def _render_note(note: dict, indent: str) -> list[str]:
    return [f"{indent}note [{note['theorem']}]: {note['message']}", f'{indent}  "{note["quote"]}"']


def render_verdict(verdict: dict) -> list[str]:
    lines = [f"{verdict['mode']} / {verdict['regularity']}: {verdict['status']}"]
    fired = [entry for entry in verdict["trace"] if entry.get("applies")]
    for entry in fired:
        lines.append(f"  {entry['rule']} ({entry['title']}): {entry['values']}")
    for citation in verdict["citations"]:
        tag = f" [{citation['tag']}]" if citation["tag"] else ""
        lines.append(f"  {citation['theorem']}{tag}: \"{citation['quote']}\"")
    for note in verdict["notes"]:
        lines.extend(_render_note(note, "  "))
    return lines


def render_text(report: dict) -> str:
    lines = []
    if report["algebra"] is not None:
        lines.extend(render_profile(report["algebra"]))
    if report["manifold"] is not None:
        manifold = report["manifold"]
        known = {key: value for key, value in manifold.items() if value is not None}
        lines.append(f"Manifold: {known}")
    for verdict in report["verdicts"]:
        lines.extend(render_verdict(verdict))
    for note in report["discrepancies"]:
        lines.extend(_render_note(note, ""))
    config = report["tool"]["config"]
    lines.append(f"(seed {config['seed']}, precision {config['precision']} bits, {report['tool']['name']} {report['tool']['version']})")
    return "\n".join(lines) + "\n"
