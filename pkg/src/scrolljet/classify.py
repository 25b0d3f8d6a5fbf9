"""Decision procedures for discriminant defects, each outcome carrying its sources.

Hypotheses such as ampleness, spannedness or Picard rank are caller-asserted
flags; nothing here tries to decide them from formal data.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

__all__ = [
    "Outcome",
    "Classification",
    "BasePreset",
    "scroll_defect",
    "classify_by_defect",
    "RankCheck",
    "rank_from_top_chern_one",
    "ConormalReport",
    "conormal_invariants",
    "CodegreeReport",
    "codegree_report",
    "SUMMARY_TABLE",
]


class Outcome(enum.Enum):
    PROJECTIVE_SPACE = "ProjectiveSpace"
    IMPOSSIBLE = "Impossible"
    SCROLL_OVER_CURVE = "ScrollOverCurve"
    GRASSMANNIAN_G14 = "GrassmannianG14"
    HYPERPLANE_SECTION_OF_G14 = "HyperplaneSectionOfG14"
    EXCEPTIONAL_SEGRE_PAIR = "ExceptionalSegrePair"
    ZERO = "Zero"
    POSITIVE_AT_LEAST_ONE = "PositiveAtLeastOne"
    UNDETERMINED = "Undetermined"


# citation anchors: stable ids naming the result each outcome rests on
SCROLL_DEFECT_EQUALITY = "scroll-defect:equality-when-n-2m>=0"
SCROLL_DEFECT_BORDER = "scroll-defect:zero-when-n-2m=-1"
DISCRIMINANT_IRREDUCIBLE = "scroll-discriminant:irreducible"
LOW_DIM_BASE_EXTENSION = "scroll-defect:border-case-for-m<=2"
DEFECT_CRITERION = "jet-criterion:def>=r-iff-c_(n-r+1)=0"
MAX_DEFECT = "max-defect:P^n-and-no-n-1"
SCROLL_OVER_CURVE = "defect-n-2:scroll-over-curve"
NO_DEFECT_N_MINUS_3 = "defect-n-3:excluded"
PICARD_ONE_N_MINUS_4 = "defect-n-4:picard-one-grassmannian"
RANK_CONSTRAINT = "top-chern-one:rank-equals-m"
CONORMAL_DEF0 = "conormal:def0=n-m"
TANGENT_DEVELOPABLE = "conormal:tangent-developable"


@dataclass(frozen=True)
class Classification:
    """Outcome of a decision; ``outcomes`` lists alternatives when the source allows several."""

    outcomes: tuple
    citations: tuple = ()
    notes: str = ""
    defect: int | None = None
    defect_lower_bound: int | None = None

    def __post_init__(self):
        if not self.outcomes:
            raise ValueError("at least one outcome")
        if any(o is not Outcome.UNDETERMINED for o in self.outcomes) and not self.citations:
            raise ValueError("a determined outcome needs a citation")

    @property
    def outcome(self) -> Outcome:
        if len(self.outcomes) != 1:
            raise ValueError(f"ambiguous outcome {self.labels()}")
        return self.outcomes[0]

    def labels(self) -> list:
        return [o.value for o in self.outcomes]

    def as_dict(self) -> dict:
        return {
            "outcomes": self.labels(),
            "citations": list(self.citations),
            "notes": self.notes,
            "defect": self.defect,
            "defect_lower_bound": self.defect_lower_bound,
        }


def _one(outcome, *citations, **kw) -> Classification:
    return Classification((outcome,), tuple(citations), **kw)


@dataclass(frozen=True)
class BasePreset:
    """``Y = P^m`` with ``E = O(twist)`` summed ``r`` times."""

    twist: int = 1

    @property
    def name(self) -> str:
        return f"P^m,O({self.twist})"

    def is_exceptional_pair(self, m: int, r: int) -> bool:
        return self.twist == 1 and r == m


def scroll_defect(m: int, r: int, base_preset: BasePreset | None = None) -> Classification:
    if m < 1:
        raise ValueError("base dimension must be >= 1")
    if r <= 1:
        raise ValueError(f"rank {r} is not a scroll: need r >= 2")
    n = m + r - 1
    gap = n - 2 * m
    if gap >= 0:
        return _one(
            Outcome.ZERO if gap == 0 else Outcome.POSITIVE_AT_LEAST_ONE,
            SCROLL_DEFECT_EQUALITY, DISCRIMINANT_IRREDUCIBLE,
            notes="def = n - 2m; discriminant irreducible, D(X,V) = p1(I)",
            defect=gap, defect_lower_bound=gap,
        )
    if gap == -1:
        cites = [SCROLL_DEFECT_BORDER]
        if m < 3:
            cites.append(LOW_DIM_BASE_EXTENSION)
        if base_preset is not None and base_preset.is_exceptional_pair(m, r):
            return Classification(
                (Outcome.POSITIVE_AT_LEAST_ONE,),
                tuple(cites + [DEFECT_CRITERION]),
                notes=f"exceptional pair (P^{m} x P^{m - 1}, O(1,1)): c_n(J_1(L)) = 0, so def >= 1",
                defect_lower_bound=1,
            )
        return Classification((Outcome.ZERO,), tuple(cites), notes="def = 0", defect=0, defect_lower_bound=0)
    return Classification(
        (Outcome.UNDETERMINED,),
        notes="def >= n - 2m holds trivially; no equality available",
        defect_lower_bound=max(gap, 0),
    )


def classify_by_defect(n: int, k: int, picard_rank_one: bool = False) -> Classification:
    """Row "L ample and spanned by V" of the high-defect summary table.

    The table concerns positive defect; ``k = 0`` is left undetermined.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 0 or k > n:
        raise ValueError(f"defect must satisfy 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return Classification((Outcome.UNDETERMINED,), notes="not defective; the table covers def > 0")
    if k == n:
        return _one(Outcome.PROJECTIVE_SPACE, MAX_DEFECT, notes="(X,L) = (P^n, O(1))")
    if k == n - 1:
        return _one(Outcome.IMPOSSIBLE, MAX_DEFECT, notes="def = n-1 cannot occur")
    if k == n - 2 and n >= 3:
        return _one(Outcome.SCROLL_OVER_CURVE, SCROLL_OVER_CURVE, notes="X = P_C(E) over a smooth curve C")
    if k == n - 3 and n >= 4:
        return _one(Outcome.IMPOSSIBLE, NO_DEFECT_N_MINUS_3, notes="def = n-3 cannot occur")
    if k == n - 4 and picard_rank_one:
        return Classification(
            (Outcome.GRASSMANNIAN_G14, Outcome.HYPERPLANE_SECTION_OF_G14),
            (PICARD_ONE_N_MINUS_4,),
            notes="G(1,4) in its Pluecker embedding (dim 6) or a smooth hyperplane section of it (dim 5)",
        )
    return Classification((Outcome.UNDETERMINED,), notes="outside the classified range")


# Golden rendering of the ample-and-spanned row: column -> (outcome labels, citation, condition).
SUMMARY_TABLE = {
    "n": (("ProjectiveSpace",), MAX_DEFECT, "always"),
    "n-1": (("Impossible",), MAX_DEFECT, "always"),
    "n-2": (("ScrollOverCurve",), SCROLL_OVER_CURVE, "n >= 3"),
    "n-3": (("Impossible",), NO_DEFECT_N_MINUS_3, "n >= 4"),
    "n-4": (("GrassmannianG14", "HyperplaneSectionOfG14"), PICARD_ONE_N_MINUS_4, "Pic(X) = Z"),
}


@dataclass(frozen=True)
class RankCheck:
    accepted: bool
    reason: str
    citation: str = RANK_CONSTRAINT


def rank_from_top_chern_one(m: int, r: int) -> RankCheck:
    """Ample and spanned ``E`` of rank ``r`` on an ``m``-fold with ``c_m(E) = 1`` forces ``r = m``."""
    if m < 1 or r < 1:
        raise ValueError("need m >= 1 and r >= 1")
    if r == m:
        return RankCheck(True, "r = m")
    if r < m:
        return RankCheck(False, "c_m(E)=0")
    # r >= m+1: quotient by r-(m+1) general sections, then c_n(J_1) = c_m(E) = 1 gives codegree 1
    return RankCheck(False, "codegree 1 impossible")


@dataclass(frozen=True)
class ConormalReport:
    N: int
    m: int
    n: int
    def0: int
    defect: int | None
    tangent_developable: bool
    strict_inclusion: bool
    citations: tuple
    notes: tuple = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "N": self.N, "m": self.m, "n": self.n, "def0": self.def0, "defect": self.defect,
            "tangent_developable": self.tangent_developable,
            "strict_inclusion": self.strict_inclusion,
            "citations": list(self.citations), "notes": list(self.notes),
        }


def conormal_invariants(N: int, m: int) -> ConormalReport:
    """Invariants of the conormal triplet of an ``m``-fold ``Y`` in ``P^N``."""
    if m < 1:
        raise ValueError("need m >= 1")
    if N <= m:
        raise ValueError(f"degenerate embedding: need N >= m + 1, got N={N}, m={m}")
    n = N - 1
    cites = [CONORMAL_DEF0]
    notes = [f"def0 = N - 1 - dim D0 = {n - m}"]
    defect = None
    wide = N - 1 >= 2 * m
    if wide:
        defect = n - 2 * m
        cites += [SCROLL_DEFECT_EQUALITY, TANGENT_DEVELOPABLE]
        notes.append("discriminant locus identified with the tangent developable TY")
        notes.append("strict inclusion D0 < D")
    return ConormalReport(N, m, n, n - m, defect, wide, wide, tuple(cites), tuple(notes))


@dataclass(frozen=True)
class CodegreeReport:
    cn: int
    status: str
    message: str
    citation: str = DEFECT_CRITERION


def codegree_report(cn: int) -> CodegreeReport:
    if cn < 0:
        return CodegreeReport(cn, "inconsistent",
                              "c_n(J_1(L)) < 0 contradicts c_n >= 0 for L ample and spanned")
    if cn == 0:
        return CodegreeReport(cn, "defective", "defect >= 1")
    return CodegreeReport(cn, "not-defective", f"not defective; under tame codegree, codeg = {cn}")
