"""
The rule table: every obstruction and existence result the engine applies,
with the statement it rests on quoted verbatim. Reports and the engine read
quotes from here only.

A rule's check receives an AlgebraProfile and a validated ManifoldDescriptor
and returns the invariant values that made it fire, or None.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable

from expressions import Atom

if TYPE_CHECKING:
    from manifolds import ManifoldDescriptor
    from obstruction import AlgebraProfile

logger = logging.getLogger(__name__)

CONTINUOUS = "continuous"
SMOOTH = "smooth"
ANALYTIC = "analytic"
REGULARITIES = (CONTINUOUS, SMOOTH, ANALYTIC)

EFFECTIVE = "effective"
FIXED_POINT_FREE = "fixed_point_free"
TRANSITIVE = "transitive"
COMPACT_HOMOGENEOUS = "compact_homogeneous"
MODES = (EFFECTIVE, FIXED_POINT_FREE, TRANSITIVE, COMPACT_HOMOGENEOUS)

IMPOSSIBLE = "IMPOSSIBLE"
POSSIBLE = "POSSIBLE"
UNKNOWN = "UNKNOWN"

HEURISTIC_RANK_TAG = "spectral rank heuristic"
SAMPLED_SUPERSOLUBLE_TAG = "supersolubility by sampling"

MOSTOW_SURFACES = (
    "plane",
    "sphere",
    "cylinder",
    "torus",
    "projective_plane",
    "moebius",
    "klein_bottle",
)

QUOTES = {
    "Thm ET": "n ≥ ℓ(g) − 1, and n ≥ ℓ(g) if g is nilpotent",
    "Thm ETcor(ii)(c)": "if α is nondegenerate then dim 𝔠 = 1",
    "Terminology": "Effective analytic actions are nondegenerate",
    "Cor. estker": "dim 𝔨 ≥ max{r(g) − n, r_NR(g) − ⌊n/2⌋}",
    "Cor. smoothanal(b)": "χ(Mⁿ) = #Fix X^α ≥ #Fix α",
    "Thm hr": "effective analytic actions on Mⁿ if m ≥ 1, n ≥ 2",
    "Thm poly": "acts effectively on every manifold of positive dimension",
    "Thm st3r": "effective analytic actions on all compact surfaces",
    "Cor. ACcorfaith": "effective smooth actions on all n-manifolds",
    "Example exA": "every n-manifold supports a smooth effective action of st(m+1,R)^k",
    "Cor. noncompactcor (surfaces)": "Every noncompact M² supports effective analytic actions",
    "Cor. noncompactcor (parallelizable)": "Every parallelizable noncompact Mⁿ",
    "Not supersoluble bullet": "0 ≤ #Fix α ≤ χ(M²) ≤ 2",
    "Prop. fixedpts(a)": "effective, fixed-point free C∞ actions on all compact surfaces",
    "Prop. fixedpts(c)": "If G acts analytically without fixed point, χ(M²) ≥ 0",
    "Prop. fixedpts(d)": "If G is nilpotent and acts without fixed point, χ(M²) = 0",
    "Prop. fixedpts(e)": "If G is supersoluble and acts analytically without fixed point, χ(M²) = 0",
    "Poincaré/Hopf bullet": "R acts effectively without fixed point on a compact Mⁿ ⟺ χ(Mⁿ) = 0",
    "Bonatti bullet": "every analytic action of R² on Mⁿ has a fixed point",
    "Thm mostow": "plane, sphere, cylinder, torus, projective plane, Möbius strip or Klein bottle",
    "Thm higher": "χ(M) ≥ 0, and if χ(M) > 0 then M has finite fundamental group",
    # informational notes
    "Thm ETcor(i)": "There is an open orbit",
    "Thm ETcor(ii)(a)": "each nontrivial orbit of g^(n−1) lies in an open orbit of g and has dimension 1",
    "Thm ETcor(ii)(b)": "the number of open orbits is ≥ dim g^(n−1)",
    "Cor. smoothanal(a)": "If Fix X^α ≠ ∅ then n ≥ max{r(ad X), 2 r_NR(ad X)}",
    "Example ss": "n ≥ 2r. If n = 2r and Mⁿ is compact then χ(Mⁿ) = #Fix Y^α > 0",
    "Example exA (compact)": "st(n+1,R) × st(n+1,R) does not have an effective analytic action on any compact n-manifold",
    "Example strn": "has derived length n and 2-dimensional center",
    "Derived length of st": "ℓ(st(m,F)) = m",
    "Spectral ranks of st(m,C)": "r(st(m,C)) = r(ad iX) = m − 1, r_NR(st(m,C)) = r_NR(ad iX) = m − 1",
    "Cor. ACcorfaith hypothesis": "contains no scalar multiple of the identity matrix",
}


@dataclass(frozen=True)
class Citation:
    theorem: str
    quote: str
    tag: str | None = None

    def as_dict(self) -> dict:
        return {"theorem": self.theorem, "quote": self.quote, "tag": self.tag}


def cite(theorem: str, tag: str | None = None) -> Citation:
    return Citation(theorem, QUOTES[theorem], tag)


@dataclass(frozen=True)
class Firing:
    """A rule whose hypotheses hold; regularity is where its conclusion is stated."""

    values: dict
    conclusion: str
    regularity: str
    tag: str | None = None


Check = Callable[["AlgebraProfile", "ManifoldDescriptor"], Firing | None]


@dataclass(frozen=True)
class Rule:
    rule_id: str
    title: str
    mode: str
    theorems: tuple[str, ...]
    check: Check = field(repr=False)

    def citations(self, tag: str | None = None) -> list[Citation]:
        return [cite(theorem, tag) for theorem in self.theorems]


def _atom(name: str, size: int, field: str | None = None) -> Atom:
    return Atom(name, size, field)


def _compact_surface(m: "ManifoldDescriptor") -> bool:
    return m.dim == 2 and m.compact


def _rank_tag(p: "AlgebraProfile") -> str | None:
    return HEURISTIC_RANK_TAG if p.rank_heuristic else None


def _r1(p, m):
    if p.solvable and m.dim < p.derived_length - 1:
        return Firing({"n": m.dim, "derived_length": p.derived_length}, IMPOSSIBLE, CONTINUOUS)


def _r2(p, m):
    if p.nilpotent and m.dim < p.derived_length:
        return Firing({"n": m.dim, "derived_length": p.derived_length}, IMPOSSIBLE, CONTINUOUS)


def critical_dimension(p: "AlgebraProfile", n: int) -> bool:
    if not p.solvable:
        return False
    return n == p.derived_length - 1 or (p.nilpotent and n == p.derived_length)


def _r3(p, m):
    n = m.dim
    if not critical_dimension(p, n) or n < 1:
        return None
    if p.derived_in_center[n - 1] and p.center_dim >= 2:
        return Firing(
            {
                "n": n,
                "derived_length": p.derived_length,
                "derived_term": f"g^({n - 1})",
                "derived_term_dim": p.derived_dims[n - 1],
                "center_dim": p.center_dim,
            },
            IMPOSSIBLE,
            ANALYTIC,
        )


def _euler_nonzero_compact(m) -> bool:
    return m.compact and m.euler is not None and m.euler != 0


def _r4(p, m):
    if _euler_nonzero_compact(m) and p.r > m.dim:
        return Firing({"r": p.r, "n": m.dim, "euler": m.euler}, IMPOSSIBLE, ANALYTIC, _rank_tag(p))


def _r5(p, m):
    if _euler_nonzero_compact(m) and p.r_nr > m.dim // 2:
        return Firing(
            {"r_nr": p.r_nr, "floor_n_half": m.dim // 2, "euler": m.euler},
            IMPOSSIBLE,
            ANALYTIC,
            _rank_tag(p),
        )


def _r6(p, m):
    if m.compact and m.euler is not None and m.euler < 0 and 2 * p.r_nr == m.dim:
        return Firing({"r_nr": p.r_nr, "n": m.dim, "euler": m.euler}, IMPOSSIBLE, ANALYTIC, _rank_tag(p))


def _r7(p, m):
    if p.abelian and p.dim >= 1 and m.dim >= 2:
        return Firing({"m": p.dim, "n": m.dim}, POSSIBLE, ANALYTIC)


def _poly_factor(factor) -> bool:
    return factor in (_atom("sl", 2, "R"), _atom("st", 2, "R"), _atom("st", 1, "R")) or (
        isinstance(factor, Atom) and factor.name == "abelian"
    )


def _r8(p, m):
    if p.factors is None:
        matches = p.abelian
    else:
        matches = all(_poly_factor(f.expr) for f in p.factors)
    if matches and m.dim >= 1:
        return Firing({"pattern": p.expression or "abelian", "n": m.dim}, POSSIBLE, CONTINUOUS)


def _r9(p, m):
    if p.expr == _atom("st", 3, "R") and _compact_surface(m):
        return Firing({"pattern": p.expression}, POSSIBLE, ANALYTIC)


def _r10(p, m):
    factors = p.factor_list()
    limit = m.dim + 1
    if all(
        f.ac_status == "AC" and f.scalar_free is True and f.rep_size is not None and f.rep_size <= limit
        for f in factors
    ):
        return Firing(
            {
                "factors": [f.text for f in factors],
                "rep_sizes": [f.rep_size for f in factors],
                "n": m.dim,
            },
            POSSIBLE,
            SMOOTH,
        )


def st_power(p) -> int | None:
    """m when the expression is st(m+1,R)^k, else None."""
    if p.factors is None:
        return None
    sizes = {f.expr.size if isinstance(f.expr, Atom) and f.expr.name == "st" and f.expr.field == "R" else None for f in p.factors}
    if len(sizes) != 1 or None in sizes:
        return None
    size = sizes.pop()
    return size - 1 if size >= 2 else None


def _r10b(p, m):
    power = st_power(p)
    if power is not None and power <= m.dim:
        return Firing({"m": power, "k": len(p.factors), "n": m.dim}, POSSIBLE, SMOOTH)


def _r11(p, m):
    if m.dim == 2 and not m.compact and p.expr in (_atom("sl", 3, "R"), _atom("sl", 2, "C")):
        return Firing({"pattern": p.expression}, POSSIBLE, ANALYTIC)


def parallelizable_patterns(n: int) -> list[Atom]:
    patterns = [_atom("sl", n + 1, "R")]
    complex_size = n // 2 if n % 2 == 0 else n // 2 + 1
    if complex_size >= 2:
        patterns.append(_atom("sl", complex_size, "C"))
    return patterns


def _r12(p, m):
    if not m.compact and m.parallelizable is True and p.expr in parallelizable_patterns(m.dim):
        return Firing({"pattern": p.expression, "n": m.dim}, POSSIBLE, ANALYTIC)


def _r13(p, m):
    if (
        not p.supersoluble
        and p.supersoluble_certified
        and _compact_surface(m)
        and m.euler is not None
        and m.euler < 0
    ):
        return Firing({"supersoluble": False, "euler": m.euler}, IMPOSSIBLE, ANALYTIC)


def _f1(p, m):
    if p.nilpotent and _compact_surface(m) and m.euler is not None and m.euler != 0:
        return Firing({"nilpotent": True, "euler": m.euler}, IMPOSSIBLE, CONTINUOUS)


def _f2(p, m):
    if _compact_surface(m) and m.euler is not None and m.euler < 0:
        return Firing({"euler": m.euler}, IMPOSSIBLE, ANALYTIC)


def _f3(p, m):
    if p.supersoluble and _compact_surface(m) and m.euler is not None and m.euler != 0:
        tag = None if p.supersoluble_certified else SAMPLED_SUPERSOLUBLE_TAG
        return Firing({"supersoluble": True, "euler": m.euler}, IMPOSSIBLE, ANALYTIC, tag)


def _f4(p, m):
    if not p.abelian or not m.compact or p.dim > 2:
        return None
    if m.surface_name() == "torus":
        # translations of R^2 / Z^2
        return Firing({"m": p.dim, "surface": "torus"}, POSSIBLE, ANALYTIC)
    if p.dim == 1 and m.euler is not None:
        if m.euler == 0:
            return Firing({"m": 1, "euler": 0}, POSSIBLE, ANALYTIC)
        return Firing({"m": 1, "euler": m.euler}, IMPOSSIBLE, CONTINUOUS)
    return None


def _f5(p, m):
    if p.expr == _atom("st", 2, "R") and _compact_surface(m):
        return Firing({"pattern": p.expression}, POSSIBLE, SMOOTH)


def _f6(p, m):
    if p.abelian and p.dim == 2 and _euler_nonzero_compact(m) and m.dim in (3, 4):
        return Firing({"m": 2, "n": m.dim, "euler": m.euler}, IMPOSSIBLE, ANALYTIC)


def _transitive(p, m):
    if m.dim != 2 or m.has_boundary:
        return None
    name = m.surface_name()
    if name in MOSTOW_SURFACES:
        return Firing({"surface": name}, POSSIBLE, ANALYTIC)
    if m.closed and name in ("closed_orientable_genus_g", "closed_nonorientable_genus_g"):
        return Firing({"surface": name, "genus": m.genus}, IMPOSSIBLE, CONTINUOUS)
    return None


def _compact_homogeneous(p, m):
    if not m.closed or m.euler is None:
        return None
    if m.euler < 0 or (m.euler > 0 and m.pi1_finite is False):
        return Firing(
            {"euler": m.euler, "pi1_finite": m.pi1_finite}, IMPOSSIBLE, CONTINUOUS
        )


RULES = [
    Rule("R1", "derived length bound for solvable algebras", EFFECTIVE, ("Thm ET",), _r1),
    Rule("R2", "derived length bound for nilpotent algebras", EFFECTIVE, ("Thm ET",), _r2),
    Rule(
        "R3",
        "critical dimension with a large center",
        EFFECTIVE,
        ("Thm ETcor(ii)(c)", "Terminology"),
        _r3,
    ),
    Rule("R4", "spectral rank exceeds dimension", EFFECTIVE, ("Cor. estker",), _r4),
    Rule("R5", "nonreal spectral rank exceeds half dimension", EFFECTIVE, ("Cor. estker",), _r5),
    Rule("R6", "nonreal spectral rank at half dimension, negative euler", EFFECTIVE, ("Cor. smoothanal(b)",), _r6),
    Rule("R7", "vector groups in dimension at least two", EFFECTIVE, ("Thm hr",), _r7),
    Rule("R8", "products of sl(2,R), st(2,R) and vector groups", EFFECTIVE, ("Thm poly",), _r8),
    Rule("R9", "st(3,R) on compact surfaces", EFFECTIVE, ("Thm st3r",), _r9),
    Rule("R10", "contractible factors with scalar-free realizations", EFFECTIVE, ("Cor. ACcorfaith",), _r10),
    Rule("R10b", "powers of st(m+1,R) with m at most n", EFFECTIVE, ("Example exA",), _r10b),
    Rule("R11", "sl(3,R) and sl(2,C) on noncompact surfaces", EFFECTIVE, ("Cor. noncompactcor (surfaces)",), _r11),
    Rule(
        "R12",
        "special linear algebras on parallelizable noncompact manifolds",
        EFFECTIVE,
        ("Cor. noncompactcor (parallelizable)",),
        _r12,
    ),
    Rule("R13", "non-supersoluble algebras on surfaces of negative euler", EFFECTIVE, ("Not supersoluble bullet",), _r13),
    Rule("F1", "nilpotent fixed-point-free surface actions", FIXED_POINT_FREE, ("Prop. fixedpts(d)",), _f1),
    Rule("F2", "analytic fixed-point-free surface actions", FIXED_POINT_FREE, ("Prop. fixedpts(c)",), _f2),
    Rule("F3", "supersoluble analytic fixed-point-free surface actions", FIXED_POINT_FREE, ("Prop. fixedpts(e)",), _f3),
    Rule("F4", "nonvanishing flows", FIXED_POINT_FREE, ("Poincaré/Hopf bullet",), _f4),
    Rule("F5", "st(2,R) on compact surfaces", FIXED_POINT_FREE, ("Prop. fixedpts(a)",), _f5),
    Rule("F6", "analytic R^2 actions in dimensions three and four", FIXED_POINT_FREE, ("Bonatti bullet",), _f6),
    Rule("T1", "surfaces with transitive actions", TRANSITIVE, ("Thm mostow",), _transitive),
    Rule("H1", "compact homogeneous manifolds", COMPACT_HOMOGENEOUS, ("Thm higher",), _compact_homogeneous),
]

RULES_BY_ID = {rule.rule_id: rule for rule in RULES}


def rules_for_mode(mode: str) -> list[Rule]:
    return [rule for rule in RULES if rule.mode == mode]
