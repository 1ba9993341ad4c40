import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from nonlevel.algebra.binomial import (
    OSequence,
    SequenceLike,
    as_osequence,
    is_maximal_growth,
    is_o_sequence,
    macaulay_growth,
)
from nonlevel.algebra.monomial import lex_ideal
from nonlevel.algebra.resolution import cancellation_bounds, closed_betti_codim3, ek_betti
from nonlevel.algebra.typevector import (
    alpha,
    entries,
    flat_run_typevectors,
    format_typevector,
    shift_report_p3,
    typevector_from_hf,
)
from nonlevel.utils.errors import InvalidInputError, NotDecomposableError

logger = logging.getLogger("nonlevel")


class Criterion(str, Enum):
    LOW_PLATEAU = "low-plateau"
    PLATEAU_AFTER_DROP = "plateau-after-drop"
    RISE_AFTER_DROP = "rise-after-drop"
    FLAT_RUN_JUMP = "flat-run-jump"
    BETTI_BOUND = "betti-bound"
    TYPE_VECTOR_SHIFT = "type-vector-shift"


@dataclass
class Finding:
    """One criterion firing: its parameters, forced socle degrees and evidence."""

    criterion: Criterion
    socle_degrees: List[int]
    d: Optional[int] = None
    s: Optional[int] = None
    i: Optional[int] = None
    j: Optional[int] = None
    evidence: List[str] = field(default_factory=list)

    def summary(self) -> str:
        params = ", ".join(
            f"{name}={value}"
            for name, value in (("d", self.d), ("s", self.s), ("i", self.i), ("j", self.j))
            if value is not None
        )
        return f"{self.criterion.value}({params}) forces socle in degrees {self.socle_degrees}"


@dataclass
class LevelVerdict:
    """NotLevel (with the cited finding) or Unknown (with diagnostics). Never 'level'."""

    sequence: OSequence
    finding: Optional[Finding] = None
    fired: List[Finding] = field(default_factory=list)
    diagnostics: Dict[str, List[str]] = field(default_factory=dict)

    @property
    def not_level(self) -> bool:
        return self.finding is not None

    @property
    def verdict(self) -> str:
        return "NotLevel" if self.not_level else "Unknown"

    @property
    def socle_degrees(self) -> List[int]:
        return self.finding.socle_degrees if self.finding else []

    @property
    def evidence(self) -> List[str]:
        if not self.finding:
            return []
        lines = list(self.finding.evidence)
        for other in self.fired:
            if other is not self.finding:
                lines.append(f"also fired: {other.summary()}")
        return lines

    def to_dict(self) -> dict:
        finding = self.finding
        result = {
            "sequence": list(self.sequence.values),
            "verdict": self.verdict,
            "criterion": finding.criterion.value if finding else None,
            "d": finding.d if finding else None,
            "s": finding.s if finding else None,
            "i": finding.i if finding else None,
            "j": finding.j if finding else None,
            "socle_degrees": self.socle_degrees,
            "evidence": self.evidence,
        }
        if not finding:
            result["diagnostics"] = {name: notes for name, notes in self.diagnostics.items()}
        return result


def drop_positions(H: OSequence) -> List[int]:
    """Every d with h_{d-1} > h_d >= 1."""
    return [d for d in range(1, H.socle_degree + 1) if H.h(d - 1) > H.h(d)]


def flat_runs(H: OSequence) -> List[Tuple[int, int]]:
    """Maximal runs h_d = ... = h_{d+s-1} with s >= 2 followed by h_{d+s} > h_d."""
    runs = []
    d = 1
    while d <= H.socle_degree:
        end = d
        while end + 1 <= H.socle_degree and H.h(end + 1) == H.h(d):
            end += 1
        s = end - d + 1
        if s >= 2 and H.h(end + 1) > H.h(d):
            runs.append((d, s))
        d = end + 1
    return runs


def _note(diagnostics: Optional[List[str]], message: str):
    logger.debug(message)
    if diagnostics is not None:
        diagnostics.append(message)


def _merge(findings: List[Finding]) -> Optional[Finding]:
    """Cite the smallest d and record every firing position."""
    if not findings:
        return None
    cited = findings[0]
    degrees = sorted({degree for f in findings for degree in f.socle_degrees})
    evidence = list(cited.evidence)
    for other in findings[1:]:
        evidence.append(f"also at d={other.d}: " + "; ".join(other.evidence))
    return Finding(
        criterion=cited.criterion,
        socle_degrees=degrees,
        d=cited.d,
        s=cited.s,
        i=cited.i,
        j=cited.j,
        evidence=evidence,
    )


def check_low_plateau(H: SequenceLike, diagnostics: Optional[List[str]] = None) -> Optional[Finding]:
    """h_{d-1} > h_d = h_{d+1} <= d+1 forces socle in degree d-1 (any codimension)."""
    H = as_osequence(H)
    findings = []
    for d in drop_positions(H):
        if H.h(d + 1) == H.h(d) and H.h(d) <= d + 1:
            findings.append(
                Finding(
                    criterion=Criterion.LOW_PLATEAU,
                    socle_degrees=[d - 1],
                    d=d,
                    evidence=[
                        f"h_{d - 1} = {H.h(d - 1)} > h_{d} = h_{d + 1} = {H.h(d)} <= d+1 = {d + 1}"
                    ],
                )
            )
    if not findings:
        _note(diagnostics, "no drop d with h_{d-1} > h_d = h_{d+1} <= d+1")
    return _merge(findings)


def _plateau_after_drop_at(
    H: OSequence, d: int, diagnostics: Optional[List[str]] = None
) -> Optional[Finding]:
    h_prev, h_d = H.h(d - 1), H.h(d)
    if not (h_prev > h_d == H.h(d + 1) and h_d <= 2 * d + 2):
        return None
    i, j = h_d - d, h_prev - h_d
    evidence = [f"h_{d - 1} = {h_prev} > h_{d} = h_{d + 1} = {h_d} <= 2d+2 = {2 * d + 2}, i = {i}, j = {j}"]

    if i <= 1:
        evidence.append("i <= 1: the low-plateau band")
    elif j >= 2:
        notes: List[str] = []
        beta1, beta2 = closed_betti_codim3(d, i, j, notes)
        source = "closed form"
        if beta1 is None or beta2 is None:
            table = ek_betti(lex_ideal(H, 3))
            beta1, beta2 = table.get(1, d + 2), table.get(2, d + 2)
            source = "Eliahou-Kervaire (closed form ambiguous: " + "; ".join(notes) + ")"
        if beta2 <= beta1:
            _note(
                diagnostics,
                f"d={d}: Betti route ({source}) gives beta_2,{d + 2} = {beta2} <= beta_1,{d + 2} = {beta1}",
            )
            return None
        evidence.append(
            f"Betti route ({source}): beta_2,{d + 2} = {beta2} > beta_1,{d + 2} = {beta1}"
        )
    else:
        growth = macaulay_growth(h_d, d + 1)
        extension = H.truncate(d).extend(h_d, h_d + 1)
        evidence.append(
            f"maximal-growth route (j = 1): truncated extension ({h_d}, {h_d}, {h_d + 1}) "
            f"in degrees {d}, {d + 1}, {d + 2}; h_{d}^<{d + 1}> = {growth}"
            + (" (maximal growth)" if is_maximal_growth(extension, d + 1) else "")
        )
        evidence.append(
            f"reading used: d+i, d+i, d+i+1 = ({h_d}, {h_d}, {h_d + 1}); the variant reading "
            f"d+i-1, d+i, d+i+1 = ({h_d - 1}, {h_d}, {h_d + 1}) is not used"
        )
    return Finding(
        criterion=Criterion.PLATEAU_AFTER_DROP,
        socle_degrees=[d - 1],
        d=d,
        i=i,
        j=j,
        evidence=evidence,
    )


def check_plateau_after_drop(
    H: SequenceLike, diagnostics: Optional[List[str]] = None
) -> Optional[Finding]:
    """
    h_1 <= 3 and h_{d-1} > h_d = h_{d+1} <= 2d+2 force socle in degree d-1.
    """
    H = as_osequence(H)
    if H.codim > 3:
        _note(diagnostics, f"needs h_1 <= 3, got {H.codim}")
        return None
    findings = [f for f in (_plateau_after_drop_at(H, d, diagnostics) for d in drop_positions(H)) if f]
    if not findings:
        _note(diagnostics, "no drop d with h_{d-1} > h_d = h_{d+1} <= 2d+2")
    return _merge(findings)


def check_rise_after_drop(
    H: SequenceLike, diagnostics: Optional[List[str]] = None
) -> Optional[Finding]:
    """
    h_1 = 3, h_{d-1} > h_d <= 2d+2 and h_{d+1} >= h_d: the truncation
    (h_0, ..., h_d, h_d) satisfies the plateau-after-drop pattern at d, and
    the algebras agree through degree d, so socle appears in degree d-1.
    """
    H = as_osequence(H)
    if H.codim != 3:
        _note(diagnostics, f"needs h_1 = 3, got {H.codim}")
        return None
    findings = []
    for d in drop_positions(H):
        if H.h(d) > 2 * d + 2 or H.h(d + 1) < H.h(d):
            continue
        truncation = H.truncate(d).extend(H.h(d))
        base = _plateau_after_drop_at(truncation, d, diagnostics)
        if base is None:
            _note(diagnostics, f"truncation {truncation} did not reproduce the plateau pattern at d={d}")
            continue
        findings.append(
            Finding(
                criterion=Criterion.RISE_AFTER_DROP,
                socle_degrees=base.socle_degrees,
                d=d,
                i=base.i,
                j=base.j,
                evidence=[f"h_{d + 1} = {H.h(d + 1)} >= h_{d} = {H.h(d)}; truncation {truncation}"]
                + base.evidence,
            )
        )
    if not findings:
        _note(diagnostics, "no drop d with h_d <= 2d+2 and h_{d+1} >= h_d")
    return _merge(findings)


def check_flat_run_jump(
    H: SequenceLike, diagnostics: Optional[List[str]] = None
) -> Optional[Finding]:
    """
    A flat run h_d = ... = h_{d+s-1} (s >= 2) followed by h_{d+s} > h_d
    forces socle in degree d+s-2, provided i = h_d - (d+s-1) satisfies
    1 <= i <= alpha(T_{alpha-1}) for the type vector T of the truncation
    (h_0, ..., h_{d+s-1}, h_d + 1) and T has the closed-form shape.
    Extraction failures are reported, never turned into a verdict.
    """
    H = as_osequence(H)
    if H.codim > 3:
        _note(diagnostics, f"needs h_1 <= 3, got {H.codim}")
        return None
    runs = flat_runs(H)
    if not runs:
        _note(diagnostics, "no flat run of length >= 2 followed by a rise")
        return None

    findings = []
    for d, s in runs:
        i = H.h(d) - (d + s - 1)
        truncation = H.truncate(d + s - 1).extend(H.h(d) + 1)
        try:
            T = typevector_from_hf(truncation)
        except NotDecomposableError as e:
            _note(diagnostics, f"run (d={d}, s={s}): {e}")
            continue
        if alpha(T) < 2:
            _note(diagnostics, f"run (d={d}, s={s}): type vector {format_typevector(T)} has a single part")
            continue
        previous_part = T.children[-2]
        if not 1 <= i <= alpha(previous_part):
            _note(
                diagnostics,
                f"run (d={d}, s={s}): i = {i} outside [1, alpha(T_alpha-1) = {alpha(previous_part)}]",
            )
            continue
        expected = flat_run_typevectors(d, s, i)
        top, tail = tuple(entries(T.children[-1])), tuple(entries(previous_part))
        if top != expected.top or tail[-len(expected.tail):] != expected.tail:
            _note(
                diagnostics,
                f"run (d={d}, s={s}): extracted {format_typevector(T)} differs from {expected.describe()}",
            )
            continue
        findings.append(
            Finding(
                criterion=Criterion.FLAT_RUN_JUMP,
                socle_degrees=[d + s - 2],
                d=d,
                s=s,
                i=i,
                evidence=[
                    f"h_{d} = ... = h_{d + s - 1} = {H.h(d)} < h_{d + s} = {H.h(d + s)}, i = {i}",
                    f"type vector of {truncation}: {format_typevector(T)}",
                    f"closed form: {expected.describe()}",
                ],
            )
        )
    return _merge(findings)


def check_betti_bound(
    H: SequenceLike, diagnostics: Optional[List[str]] = None
) -> Optional[Finding]:
    """Positive consecutive-cancellation bounds on the lex table below the top degree."""
    H = as_osequence(H)
    n = max(H.codim, 1)
    table = ek_betti(lex_ideal(H, n))
    positive = [
        b for b in cancellation_bounds(table)
        if b.lower_bound > 0 and b.socle_degree < H.socle_degree
    ]
    if not positive:
        _note(diagnostics, "no positive cancellation bound below the top degree")
        return None
    return Finding(
        criterion=Criterion.BETTI_BOUND,
        socle_degrees=sorted({b.socle_degree for b in positive}),
        evidence=[
            f"shift {b.shift}: beta_{n - 1},{b.shift} - beta_{n - 2},{b.shift} >= {b.lower_bound} "
            f"survives cancellation (socle degree {b.socle_degree})"
            for b in positive
        ],
    )


def check_type_vector_shift(
    H: SequenceLike, diagnostics: Optional[List[str]] = None
) -> Optional[Finding]:
    """Noncancelable shifts of the k-configuration whose type vector realizes H."""
    H = as_osequence(H)
    if H.codim > 3:
        _note(diagnostics, f"needs h_1 <= 3, got {H.codim}")
        return None
    try:
        T = typevector_from_hf(H)
    except NotDecomposableError as e:
        _note(diagnostics, str(e))
        return None
    report = shift_report_p3(T)
    if not report.socle_degrees:
        _note(diagnostics, f"type vector {format_typevector(T)} has no noncancelable shift below the top")
        return None
    return Finding(
        criterion=Criterion.TYPE_VECTOR_SHIFT,
        socle_degrees=sorted(set(report.socle_degrees)),
        evidence=[f"type vector {format_typevector(T)}"] + report.notes,
    )


CHECKS: Dict[Criterion, Callable[..., Optional[Finding]]] = {
    Criterion.LOW_PLATEAU: check_low_plateau,
    Criterion.PLATEAU_AFTER_DROP: check_plateau_after_drop,
    Criterion.RISE_AFTER_DROP: check_rise_after_drop,
    Criterion.FLAT_RUN_JUMP: check_flat_run_jump,
    Criterion.BETTI_BOUND: check_betti_bound,
    Criterion.TYPE_VECTOR_SHIFT: check_type_vector_shift,
}


def run_criterion(criterion: Criterion, H: SequenceLike) -> Optional[Finding]:
    return CHECKS[Criterion(criterion)](H)


def level_check(H: SequenceLike) -> LevelVerdict:
    """
    Run every criterion and cite the first firing one in priority order.

    Args:
        H: The h-vector to test.

    Returns:
        LevelVerdict: NotLevel with the cited finding and all fired criteria,
        or Unknown with per-criterion diagnostics.
    """
    H = as_osequence(H)
    report = is_o_sequence(H)
    if not report:
        raise InvalidInputError(f"{H} is not an O-sequence: {report.describe()}")

    verdict = LevelVerdict(sequence=H)
    for criterion, check in CHECKS.items():
        notes: List[str] = []
        finding = check(H, notes)
        if finding:
            verdict.fired.append(finding)
        else:
            verdict.diagnostics[criterion.value] = notes
    if verdict.fired:
        verdict.finding = verdict.fired[0]
    logger.debug(f"{H}: {verdict.verdict}" + (f" via {verdict.finding.criterion.value}" if verdict.finding else ""))
    return verdict
