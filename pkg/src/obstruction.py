"""
The rule engine: an AlgebraProfile collects every invariant the rules read,
and analyze() evaluates the rule table for one (regularity, mode) query.

IMPOSSIBLE stated at regularity p holds at every stronger regularity;
POSSIBLE stated at p holds at every weaker one.
"""

import logging
from dataclasses import dataclass, field

from catalog import build, strn_expansion
from classify import AC, ACStatus, ClassificationFlags, ac_status, classify, rep_size, scalar_free_rep
from config import DEFAULT_CONFIG, AnalysisConfig
from errors import EngineContradiction
from exactla import subspace_contains
from expressions import Atom, Derived, Expr, Product, factors, to_text
from liecore import LieAlgebra, center, derived_series
from manifolds import ManifoldDescriptor
from rules import (
    ANALYTIC,
    COMPACT_HOMOGENEOUS,
    EFFECTIVE,
    FIXED_POINT_FREE,
    IMPOSSIBLE,
    MODES,
    POSSIBLE,
    REGULARITIES,
    TRANSITIVE,
    UNKNOWN,
    Citation,
    cite,
    critical_dimension,
    rules_for_mode,
    st_power,
)
from spectral import SpectralRankReport, algebra_spectral_rank, weight_functionals

logger = logging.getLogger(__name__)

REGULARITY_ORDER = {regularity: index for index, regularity in enumerate(REGULARITIES)}


@dataclass(frozen=True)
class Note:
    """Informational remark; never changes a status."""

    theorem: str
    message: str
    values: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"message": self.message, "values": self.values, **cite(self.theorem).as_dict()}


@dataclass(frozen=True)
class FactorProfile:
    text: str
    expr: Expr | None
    dim: int
    derived_length: int | None
    ac_status: str
    scalar_free: bool | None
    rep_size: int | None

    def as_dict(self) -> dict:
        return {
            "factor": self.text,
            "dim": self.dim,
            "derived_length": self.derived_length,
            "ac_status": self.ac_status,
            "scalar_free_rep": self.scalar_free,
            "rep_size": self.rep_size,
        }


@dataclass(frozen=True)
class AlgebraProfile:
    label: str
    dim: int
    expr: Expr | None
    flags: ClassificationFlags
    spectral: SpectralRankReport
    ac: ACStatus
    derived_in_center: list[bool]
    components: list[FactorProfile]
    notes: list[Note] = field(default_factory=list)

    @property
    def expression(self) -> str | None:
        return to_text(self.expr) if self.expr is not None else None

    @property
    def factors(self) -> list[FactorProfile] | None:
        """Direct factors of the expression; None for algebras given by constants."""
        return self.components if self.expr is not None else None

    def factor_list(self) -> list[FactorProfile]:
        return self.components

    # shorthands read by the rule checks

    @property
    def abelian(self) -> bool:
        return self.flags.abelian

    @property
    def nilpotent(self) -> bool:
        return self.flags.nilpotent

    @property
    def solvable(self) -> bool:
        return self.flags.solvable

    @property
    def supersoluble(self) -> bool:
        return self.flags.supersoluble

    @property
    def supersoluble_certified(self) -> bool:
        return self.flags.supersoluble_certainty == "certified"

    @property
    def derived_length(self) -> int | None:
        return self.flags.derived_length

    @property
    def derived_dims(self) -> list[int]:
        return self.flags.derived_dims

    @property
    def center_dim(self) -> int:
        return self.flags.center_dim

    @property
    def r(self) -> int:
        return self.spectral.r

    @property
    def r_nr(self) -> int:
        return self.spectral.r_nr

    @property
    def rank_heuristic(self) -> bool:
        return self.spectral.certainty == "heuristic"

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "expression": self.expression,
            "flags": self.flags.as_dict(),
            "spectral_rank": self.spectral.as_dict(),
            "ac": self.ac.as_dict(),
            "derived_in_center": list(self.derived_in_center),
            "factors": [f.as_dict() for f in self.components],
            "notes": [note.as_dict() for note in self.notes],
        }


def _expand_aliases(expr: Expr) -> Expr:
    match expr:
        case Atom("strn", size, _):
            return strn_expansion(size)
        case Product(left, right):
            return Product(_expand_aliases(left), _expand_aliases(right))
        case Derived(child):
            return Derived(_expand_aliases(child))
    return expr


def _factor_profile(L: LieAlgebra, expr: Expr | None, cfg: AnalysisConfig) -> FactorProfile:
    status = ac_status(L, cfg)
    return FactorProfile(
        text=to_text(expr) if expr is not None else L.origin or "algebra",
        expr=expr,
        dim=L.dim,
        derived_length=derived_series(L).length,
        ac_status=status.status,
        scalar_free=scalar_free_rep(L),
        rep_size=rep_size(L),
    )


def _profile_notes(
    L: LieAlgebra,
    expr: Expr | None,
    flags: ClassificationFlags,
    spectral: SpectralRankReport,
    components: list[FactorProfile],
) -> list[Note]:
    notes = []
    for factor in components:
        atom = factor.expr
        if isinstance(atom, Atom) and atom.name == "st" and factor.derived_length != atom.size:
            notes.append(
                Note(
                    "Derived length of st",
                    f"{factor.text} has computed derived length {factor.derived_length}, "
                    f"not {atom.size}",
                    {"factor": factor.text, "computed": factor.derived_length, "stated": atom.size},
                )
            )
        if factor.ac_status == AC and factor.scalar_free is False:
            notes.append(
                Note(
                    "Cor. ACcorfaith hypothesis",
                    f"{factor.text} is contractible but its matrix realization contains "
                    "the scalars, so the realization test cannot certify faithful actions",
                    {"factor": factor.text},
                )
            )

    if expr is not None:
        for atom in factors(expr):
            if isinstance(atom, Atom) and atom.name == "strn" and len(factors(expr)) == 1:
                if flags.derived_length != atom.size or flags.center_dim != 2:
                    notes.append(
                        Note(
                            "Example strn",
                            f"strn({atom.size}) has computed derived length "
                            f"{flags.derived_length}, nilpotency class {flags.nilpotency_class} "
                            f"and center dimension {flags.center_dim}",
                            {
                                "derived_length": flags.derived_length,
                                "nilpotency_class": flags.nilpotency_class,
                                "center_dim": flags.center_dim,
                            },
                        )
                    )

    if spectral.r_real is not None and (
        spectral.r_real != spectral.r or spectral.r_nr_real != spectral.r_nr
    ):
        notes.append(
            Note(
                "Spectral ranks of st(m,C)",
                f"ranks of ad X as a complex-linear map are r={spectral.r}, r_nr={spectral.r_nr}; "
                f"over the real spectrum r={spectral.r_real}, r_nr={spectral.r_nr_real}. "
                "Rules use the complex-linear values",
                {
                    "r": spectral.r,
                    "r_nr": spectral.r_nr,
                    "r_real": spectral.r_real,
                    "r_nr_real": spectral.r_nr_real,
                },
            )
        )
    return notes


def build_profile(
    L: LieAlgebra, expr: Expr | None = None, cfg: AnalysisConfig = DEFAULT_CONFIG
) -> AlgebraProfile:
    """Every invariant the rules consume; expr enables the pattern rules."""
    logger.info(f"Profiling {L.origin or 'algebra'} (dimension {L.dim})")
    derived = derived_series(L)
    weights = weight_functionals(L) if derived.terminates else None
    flags = classify(L, cfg, weights)
    spectral = algebra_spectral_rank(L, cfg, weights, flags.semisimple)
    ac = ac_status(L, cfg, flags.solvable)
    Z = center(L)
    in_center = [subspace_contains(Z, term) for term in derived.terms]

    if expr is None:
        components = [_factor_profile(L, None, cfg)]
    else:
        leaves = factors(_expand_aliases(expr))
        if len(leaves) == 1:
            components = [
                FactorProfile(
                    to_text(leaves[0]),
                    leaves[0],
                    L.dim,
                    flags.derived_length,
                    ac.status,
                    scalar_free_rep(L),
                    rep_size(L),
                )
            ]
        else:
            components = [_factor_profile(build(leaf), leaf, cfg) for leaf in leaves]

    return AlgebraProfile(
        label=L.origin or "algebra",
        dim=L.dim,
        expr=expr,
        flags=flags,
        spectral=spectral,
        ac=ac,
        derived_in_center=in_center,
        components=components,
        notes=_profile_notes(L, expr, flags, spectral, components),
    )


@dataclass(frozen=True)
class Query:
    regularity: str
    mode: str

    def __post_init__(self):
        if self.regularity not in REGULARITIES:
            raise ValueError(f"unknown regularity {self.regularity!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class Verdict:
    regularity: str
    mode: str
    status: str
    citations: list[Citation]
    trace: list[dict]
    notes: list[Note] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "regularity": self.regularity,
            "mode": self.mode,
            "status": self.status,
            "citations": [c.as_dict() for c in self.citations],
            "trace": self.trace,
            "notes": [note.as_dict() for note in self.notes],
        }


def _applies(conclusion: str, stated_at: str, regularity: str) -> bool:
    if conclusion == IMPOSSIBLE:
        return REGULARITY_ORDER[regularity] >= REGULARITY_ORDER[stated_at]
    return REGULARITY_ORDER[regularity] <= REGULARITY_ORDER[stated_at]


def _verdict_notes(profile: AlgebraProfile, m: ManifoldDescriptor, q: Query, status: str) -> list[Note]:
    notes = []
    n = m.dim
    if q.mode == EFFECTIVE:
        if critical_dimension(profile, n) and n >= 1 and profile.derived_in_center[n - 1]:
            values = {"n": n, "derived_term_dim": profile.derived_dims[n - 1]}
            notes.append(Note("Thm ETcor(i)", "an effective action would have an open orbit", values))
            notes.append(
                Note(
                    "Thm ETcor(ii)(a)",
                    f"nontrivial orbits of g^({n - 1}) would be one-dimensional and lie in open orbits",
                    values,
                )
            )
            notes.append(
                Note(
                    "Thm ETcor(ii)(b)",
                    f"an effective action would have at least {profile.derived_dims[n - 1]} open orbits",
                    values,
                )
            )
        if q.regularity == ANALYTIC and max(profile.r, 2 * profile.r_nr) > n:
            notes.append(
                Note(
                    "Cor. smoothanal(a)",
                    "elements attaining the spectral ranks have no zeros under an analytic action",
                    {"r": profile.r, "r_nr": profile.r_nr, "n": n},
                )
            )
        if profile.flags.semisimple and profile.flags.semisimple_rank is not None:
            rank = profile.flags.semisimple_rank
            notes.append(
                Note(
                    "Example ss",
                    f"an analytic action with a fixed point needs n >= {2 * rank}",
                    {"rank": rank, "n": n},
                )
            )
        if (
            st_power(profile) == n
            and len(profile.factors) >= 2
            and q.regularity == ANALYTIC
            and status == UNKNOWN
            and m.compact
            and m.euler == 0
        ):
            notes.append(
                Note(
                    "Example exA (compact)",
                    "the rules here only exclude compact manifolds with nonzero euler characteristic",
                    {"n": n, "k": len(profile.factors), "euler": 0},
                )
            )
    if q.mode == FIXED_POINT_FREE and profile.abelian and profile.dim == 2 and m.surface_name() == "torus":
        notes.append(Note("Thm hr", "R^2 also acts effectively and analytically on the torus", {"m": 2}))
    return notes


def analyze(
    profile: AlgebraProfile,
    m: ManifoldDescriptor,
    q: Query,
    strict: bool = False,
) -> Verdict:
    trace, possible, impossible = [], [], []
    citations: dict[str, list[Citation]] = {}
    for rule in rules_for_mode(q.mode):
        firing = rule.check(profile, m)
        entry = {"rule": rule.rule_id, "title": rule.title, "fired": firing is not None}
        if firing is not None:
            applies = _applies(firing.conclusion, firing.regularity, q.regularity)
            suppressed = strict and firing.tag is not None
            entry.update(
                conclusion=firing.conclusion,
                stated_at=firing.regularity,
                applies=applies and not suppressed,
                values=firing.values,
                tag=firing.tag,
            )
            if suppressed and applies:
                logger.info(f"{rule.rule_id} suppressed in strict mode ({firing.tag})")
            elif applies:
                logger.debug(f"{rule.rule_id} fires: {firing.conclusion} ({firing.values})")
                (possible if firing.conclusion == POSSIBLE else impossible).append(rule.rule_id)
                citations[rule.rule_id] = rule.citations(firing.tag)
        trace.append(entry)

    if possible and impossible:
        raise EngineContradiction(possible, impossible)
    if impossible:
        status = IMPOSSIBLE
    elif possible:
        status = POSSIBLE
    else:
        status = UNKNOWN

    cited = list(dict.fromkeys(c for rule_id in possible + impossible for c in citations[rule_id]))
    return Verdict(q.regularity, q.mode, status, cited, trace, _verdict_notes(profile, m, q, status))


def analyze_all(
    profile: AlgebraProfile,
    m: ManifoldDescriptor,
    regularities=REGULARITIES,
    modes=MODES,
    strict: bool = False,
) -> list[Verdict]:
    return [
        analyze(profile, m, Query(regularity, mode), strict)
        for mode in modes
        for regularity in regularities
    ]


def needs_algebra(modes) -> bool:
    """compact_homogeneous and transitive verdicts do not read the algebra."""
    return any(mode not in (COMPACT_HOMOGENEOUS, TRANSITIVE) for mode in modes)
