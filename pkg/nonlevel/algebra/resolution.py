import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from nonlevel.algebra.binomial import binom
from nonlevel.algebra.monomial import MonomialIdeal, is_stable, minimal_generators
from nonlevel.utils.errors import InvalidInputError

logger = logging.getLogger("nonlevel")


@dataclass
class BettiTable:
    """
    Graded Betti numbers beta_{q,j} of a monomial ideal I (not of R/I).

    Row q = 0 counts minimal generators; row q of the ideal is the free
    module F_{q+1} of the resolution of R/I. Zero entries are never stored.
    """

    n: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    artinian: bool = True

    def __post_init__(self):
        for (q, j), mult in list(self.entries.items()):
            if not 0 <= q <= self.n - 1:
                raise InvalidInputError(f"Homological index {q} outside [0, {self.n - 1}]")
            if mult < 0:
                raise InvalidInputError(f"Negative Betti number at ({q}, {j})")
        self.entries = {k: v for k, v in self.entries.items() if v > 0}

    def get(self, q: int, j: int) -> int:
        return self.entries.get((q, j), 0)

    def add(self, q: int, j: int, mult: int):
        if mult:
            self.entries[(q, j)] = self.entries.get((q, j), 0) + mult

    def shifts(self, q: int) -> List[int]:
        return sorted(j for (row, j) in self.entries if row == q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def to_rows(self) -> List[Dict[str, int]]:
        """Canonically sorted ``{q, shift, mult}`` rows for JSON output."""
        return [
            {"q": q, "shift": j, "mult": mult}
            for (q, j), mult in sorted(self.entries.items())
        ]

    def diagram(self) -> str:
        """Macaulay2-style diagram: column q, row j - q, '.' for zero."""
        columns = list(range(self.n))
        if not self.entries:
            return "(zero table)"
        offsets = sorted({j - q for (q, j) in self.entries})
        rows = list(range(offsets[0], offsets[-1] + 1))
        totals = [sum(m for (q, _), m in self.entries.items() if q == c) for c in columns]

        cells = [[str(self.get(c, r + c)) if self.get(c, r + c) else "." for c in columns] for r in rows]
        widths = [
            max(len(str(c)), len(str(totals[k])), *(len(row[k]) for row in cells))
            for k, c in enumerate(columns)
        ]
        label_width = max(len("total:"), *(len(f"{r}:") for r in rows))

        lines = [
            " ".join([" " * label_width] + [f"{c:>{w}}" for c, w in zip(columns, widths)]),
            " ".join([f"{'total:':>{label_width}}"] + [f"{t:>{w}}" for t, w in zip(totals, widths)]),
        ]
        for r, row in zip(rows, cells):
            lines.append(" ".join([f"{str(r) + ':':>{label_width}}"] + [f"{v:>{w}}" for v, w in zip(row, widths)]))
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.diagram()


@dataclass(frozen=True)
class CancellationBound:
    shift: int
    lower_bound: int
    socle_degree: int


def ek_betti(I: MonomialIdeal) -> BettiTable:
    """
    Eliahou-Kervaire Betti numbers of a stable monomial ideal:
    beta_{q,i} = sum over T in G(I)_{i-q} of C(m(T) - 1, q).
    """
    if not is_stable(I):
        raise InvalidInputError("Eliahou-Kervaire needs a stable monomial ideal")
    table = BettiTable(n=I.n, artinian=I.artinian)
    for degree, generators in minimal_generators(I).items():
        for T in generators:
            m = T.m_index()
            for q in range(I.n):
                table.add(q, degree + q, binom(m - 1, q))
    logger.debug(f"Eliahou-Kervaire table has {len(table.entries)} nonzero entries")
    return table


def _block_bounds(d: int, k: int) -> Tuple[int, int]:
    lower = (k - 1) * d - k * (k - 3) // 2
    upper = k * d - (k - 1) * k // 2
    return lower, upper


def closed_betti_codim3(
    d: int, i: int, j: int, diagnostics: Optional[List[str]] = None
) -> Tuple[Optional[int], Optional[int]]:
    """
    Closed forms for (beta_{1,d+2}, beta_{2,d+2}) of the lex ideal in three
    variables with h_{d-1} = d + i + j and h_d = h_{d+1} = d + i.

    The branch inequalities are applied literally over all k and l in
    [1, d]. When no branch or two branches with different values apply, the
    entry is None and a line is appended to ``diagnostics``.

    Args:
        d (int): Degree of the drop target.
        i (int): Offset h_d - d, 1 <= i <= (d^2+d)/2.
        j (int): Drop h_{d-1} - h_d, at least 1.
        diagnostics (list, optional): Collects ambiguity notes.

    Returns:
        tuple: (beta_{1,d+2}, beta_{2,d+2}), either entry possibly None.
    """
    if d < 1 or not 1 <= i <= (d * d + d) // 2:
        raise InvalidInputError(f"closed_betti_codim3 needs 1 <= i <= (d^2+d)/2, got d={d}, i={i}")
    if j < 1:
        raise InvalidInputError(f"closed_betti_codim3 needs j >= 1, got {j}")

    beta1_values = set()
    for k in range(1, d + 1):
        lower, upper = _block_bounds(d, k)
        if lower <= i <= lower + (k - 1):
            beta1_values.add(2 * k - 1)
        if lower + k <= i <= upper:
            beta1_values.add(2 * k)

    beta2_values = set()
    for ell in range(1, d + 1):
        if (ell - 1) * d - (ell - 2) * (ell - 1) // 2 < i <= ell * d - (ell - 1) * ell // 2:
            beta2_values.add(j + ell)

    def pick(name: str, values: set) -> Optional[int]:
        if len(values) == 1:
            return next(iter(values))
        note = (
            f"{name} at (d={d}, i={i}, j={j}): "
            + ("no branch applies" if not values else f"branches disagree {sorted(values)}")
        )
        logger.debug(note)
        if diagnostics is not None:
            diagnostics.append(note)
        return None

    return pick("beta_1,d+2", beta1_values), pick("beta_2,d+2", beta2_values)


def cancellation_bounds(B: BettiTable) -> List[CancellationBound]:
    """
    Lower bounds on the last free module that survive consecutive
    cancellation: max(0, beta_{n-1,j} - beta_{n-2,j}) for each shift j of the
    last row. A positive bound forces socle in degree j - n for every algebra
    with the same Hilbert function.
    """
    if not B.artinian:
        raise InvalidInputError("Cancellation bounds need the table of an Artinian ideal")
    last, previous = B.n - 1, B.n - 2
    bounds = []
    for j in B.shifts(last):
        lower = B.get(last, j) - (B.get(previous, j) if previous >= 0 else 0)
        bounds.append(CancellationBound(shift=j, lower_bound=max(0, lower), socle_degree=j - B.n))
    return bounds


def hilbert_numerator(B: BettiTable) -> Dict[int, int]:
    """
    Coefficients of the Hilbert series numerator of R/I:
    [j = 0] + sum over q of (-1)^(q+1) beta_{q,j}. Zero coefficients omitted.
    """
    coefficients: Dict[int, int] = {0: 1}
    for (q, j), mult in B.entries.items():
        coefficients[j] = coefficients.get(j, 0) + (-1) ** (q + 1) * mult
    return {j: c for j, c in sorted(coefficients.items()) if c}
