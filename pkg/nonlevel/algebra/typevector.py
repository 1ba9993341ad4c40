import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import LarkError, VisitError

from nonlevel.algebra.binomial import OSequence, SequenceLike, as_osequence
from nonlevel.utils.errors import InvalidInputError, NotDecomposableError

logger = logging.getLogger("nonlevel")

GRAMMAR_FILE = Path(__file__).parent.parent / "config" / "grammars" / "type_vector.lark"
MAX_LEVEL = 3


@dataclass(frozen=True)
class Unit:
    """The 0-type vector."""

    @property
    def level(self) -> int:
        return 0


@dataclass(frozen=True)
class Leaf:
    """A 1-type vector (d)."""

    d: int

    @property
    def level(self) -> int:
        return 1


@dataclass(frozen=True)
class Node:
    """An n-type vector (T_1, ..., T_s) of (n-1)-type vectors."""

    children: Tuple["TypeVector", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def level(self) -> int:
        return 1 + max(child.level for child in self.children)


TypeVector = Union[Unit, Leaf, Node]


def alpha(T: TypeVector) -> int:
    if isinstance(T, Unit):
        return -1
    if isinstance(T, Leaf):
        return T.d
    return len(T.children)


def sigma(T: TypeVector) -> int:
    if isinstance(T, Unit):
        return 1
    if isinstance(T, Leaf):
        return T.d
    return sigma(T.children[-1])


def two_type(*values: int) -> Node:
    """Shorthand for the 2-type vector (d_1, ..., d_m)."""
    return Node(tuple(Leaf(v) for v in values))


def three_type(*rows: Tuple[int, ...]) -> Node:
    return Node(tuple(two_type(*row) for row in rows))


def entries(T: Node) -> List[int]:
    """(d_1, ..., d_m) of a 2-type vector."""
    return [child.d for child in T.children]


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


def validate(T: TypeVector) -> ValidationResult:
    """
    Check the separation condition sigma(T_i) < alpha(T_{i+1}) at every
    level, uniform child levels, positive 1-type entries and level <= 3.
    """
    if isinstance(T, Unit):
        return ValidationResult(True)
    if isinstance(T, Leaf):
        if T.d < 1:
            return ValidationResult(False, f"1-type vector ({T.d}) needs a positive entry")
        return ValidationResult(True)

    if not T.children:
        return ValidationResult(False, "empty type vector")
    levels = {child.level for child in T.children}
    if len(levels) != 1:
        return ValidationResult(False, f"children of mixed levels {sorted(levels)}")
    if levels == {0}:
        return ValidationResult(False, "a vector of 0-type vectors is not a type vector")
    if T.level > MAX_LEVEL:
        return ValidationResult(False, f"level {T.level} exceeds {MAX_LEVEL}")

    for child in T.children:
        result = validate(child)
        if not result:
            return result
    for k in range(len(T.children) - 1):
        left, right = T.children[k], T.children[k + 1]
        if sigma(left) >= alpha(right):
            return ValidationResult(
                False,
                f"sigma(T_{k + 1}) = {sigma(left)} is not below alpha(T_{k + 2}) = {alpha(right)} "
                f"in {format_typevector(T)}",
            )
    return ValidationResult(True)


class _TypeVectorTransformer(Transformer):
    def unit(self, _):
        return Unit()

    def leaf(self, items):
        value = int(items[0])
        if value < 1:
            raise InvalidInputError(f"1-type vector needs a positive entry, got {value}")
        return Leaf(value)

    def node(self, items):
        return Node(tuple(items))


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(GRAMMAR_FILE.read_text(encoding="utf-8"), parser="lalr")


def parse_typevector(text: str) -> TypeVector:
    """Parse nested-parenthesis syntax, e.g. ``((2),(1,3,6,7),(1,2,3,4,5,6,7,8))``."""
    try:
        tree = _parser().parse(text)
        T = _TypeVectorTransformer().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, InvalidInputError):
            raise e.orig_exc from e
        raise InvalidInputError(f"Malformed type vector '{text}': {e}") from e
    except LarkError as e:
        raise InvalidInputError(f"Malformed type vector '{text}': {e}") from e
    result = validate(T)
    if not result:
        raise InvalidInputError(f"Invalid type vector '{text}': {result.violation}")
    return T


def format_typevector(T: TypeVector) -> str:
    if isinstance(T, Unit):
        return "()"
    if isinstance(T, Leaf):
        return str(T.d)
    return "(" + ",".join(format_typevector(child) for child in T.children) + ")"


def _two_type_hf(d: List[int]) -> List[int]:
    m = len(d)
    top = max(m - j + d[j - 1] - 1 for j in range(1, m + 1))
    return [
        sum(1 for j in range(1, m + 1) if m - j <= t <= m - j + d[j - 1] - 1)
        for t in range(top + 1)
    ]


def hf_from_typevector(T: TypeVector) -> OSequence:
    """
    Artinian h-vector of a k-configuration of type T (the first difference
    of its Hilbert function).

    Level 1: d ones. Level 2, (d_1..d_m): H(t) counts the j with
    m-j <= t <= m-j+d_j-1. Level 3, (T_1..T_a): H(t) sums H_{T_i}(t-(a-i)).
    """
    result = validate(T)
    if not result:
        raise InvalidInputError(f"Invalid type vector: {result.violation}")
    if isinstance(T, Unit):
        return OSequence((1,))
    if isinstance(T, Leaf):
        return OSequence((1,) * T.d)
    if T.level == 2:
        return OSequence(tuple(_two_type_hf(entries(T))))

    a = alpha(T)
    rows = [_two_type_hf(entries(child)) for child in T.children]
    length = max(len(row) + (a - i) for i, row in enumerate(rows, start=1))
    values = [0] * length
    for i, row in enumerate(rows, start=1):
        for t, value in enumerate(row):
            values[t + (a - i)] += value
    return OSequence(tuple(values))


def _decode_row(row: List[int]) -> Node:
    """Invert the level-2 count formula on one peeled row."""
    m = next(t for t in range(len(row) + 1) if (row[t] if t < len(row) else 0) <= t)

    def r(t: int) -> int:
        return row[t] if 0 <= t < len(row) else 0

    d = []
    for j in range(1, m + 1):
        run = 0
        u = 1
        while r(m - 1 + u) >= m - j + 1:
            run += 1
            u += 1
        d.append(j + run)
    return two_type(*d)


def typevector_from_hf(H: SequenceLike) -> Node:
    """
    Greedy peel of an h-vector with h_1 <= 3 into a 3-type vector.

    The top row min(t+1, remainder(t)) is T_alpha's contribution; the rest is
    shifted down a degree and peeled again. Every row is decoded to a 2-type
    vector and the result must validate and reproduce H exactly, otherwise
    NotDecomposableError is raised.
    """
    H = as_osequence(H)
    if H.codim > 3:
        raise InvalidInputError(f"typevector_from_hf needs h_1 <= 3, got {H.codim}")

    remainder = list(H.values)
    rows: List[List[int]] = []
    while any(remainder):
        if remainder[0] <= 0:
            raise NotDecomposableError(f"{H}: remainder {remainder} starts with zero")
        row = [min(t + 1, value) for t, value in enumerate(remainder)]
        while row and row[-1] == 0:
            row.pop()
        rows.append(row)
        rest = [value - taken for value, taken in zip(remainder, row + [0] * len(remainder))]
        if rest[0] != 0:
            raise NotDecomposableError(f"{H}: remainder {rest} does not vanish in degree 0")
        remainder = rest[1:]
        while remainder and remainder[-1] == 0:
            remainder.pop()

    T = Node(tuple(_decode_row(row) for row in reversed(rows)))

    result = validate(T)
    if not result:
        raise NotDecomposableError(f"{H}: peeled vector is invalid ({result.violation})")
    if hf_from_typevector(T) != H:
        raise NotDecomposableError(
            f"{H}: peeled vector {format_typevector(T)} does not reproduce the sequence"
        )
    logger.debug(f"Extracted type vector {format_typevector(T)} from {H}")
    return T


@dataclass(frozen=True)
class FlatRunTypeVectors:
    """Closed forms for the last two parts of the type vector after a flat run."""

    top: Tuple[int, ...]
    tail: Tuple[int, ...]

    def describe(self) -> str:
        tail = ",".join(str(v) for v in self.tail)
        return f"T_alpha = (1,...,{self.top[-1]}), T_alpha-1 = (...,{tail})"


def flat_run_typevectors(d: int, s: int, i: int) -> FlatRunTypeVectors:
    """
    T_alpha = (1, ..., d+s+1); T_{alpha-1} ends with d+s-2 when i = 1 and
    with d+s-(i+1), d+s-(i-2), ..., d+s otherwise.
    """
    if s < 2 or i < 1:
        raise InvalidInputError(f"flat_run_typevectors needs s >= 2 and i >= 1, got s={s}, i={i}")
    top = tuple(range(1, d + s + 2))
    if i == 1:
        tail: Tuple[int, ...] = (d + s - 2,)
    else:
        tail = (d + s - i - 1,) + tuple(range(d + s - i + 2, d + s + 1))
    return FlatRunTypeVectors(top=top, tail=tail)


@dataclass
class ShiftReport:
    """
    Shifts of the last free module that survive consecutive cancellation,
    and the socle degrees they force.
    """

    level: int
    last_shifts: List[int] = field(default_factory=list)
    middle_shifts: List[int] = field(default_factory=list)
    epsilon: List[int] = field(default_factory=list)
    dbar: Dict[Tuple[int, int], int] = field(default_factory=dict)
    noncancelable_shifts: List[int] = field(default_factory=list)
    socle_degrees: List[int] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "last_shifts": self.last_shifts,
            "middle_shifts": self.middle_shifts,
            "epsilon": self.epsilon,
            "dbar": [{"i": i, "j": j, "value": v} for (i, j), v in sorted(self.dbar.items())],
            "noncancelable_shifts": self.noncancelable_shifts,
            "socle_degrees": self.socle_degrees,
            "notes": self.notes,
        }


def _require_level(T: TypeVector, level: int):
    result = validate(T)
    if not result:
        raise InvalidInputError(f"Invalid type vector: {result.violation}")
    if T.level != level:
        raise InvalidInputError(f"Expected a {level}-type vector, got level {T.level}")


def shift_report_p2(T: Node) -> ShiftReport:
    """
    Resolution shifts of a k-configuration in P^2 of type (d_1..d_a):
    last module d_i + a - i + 1, middle module a and d_i + a - i. A last
    shift whose multiplicity exceeds its middle multiplicity and which lies
    below the top shift d_a + 1 cannot cancel; it forces socle in degree
    shift - 2.
    """
    _require_level(T, 2)
    d = entries(T)
    a = len(d)
    last = [d[k - 1] + a - k + 1 for k in range(1, a + 1)]
    middle = [a] + [d[k - 1] + a - k for k in range(1, a + 1)]
    top = d[-1] + 1

    surplus = Counter(last)
    surplus.subtract(Counter(middle))
    flagged = sorted(shift for shift, extra in surplus.items() if extra > 0 and shift < top)

    report = ShiftReport(level=2, last_shifts=sorted(last), middle_shifts=sorted(middle))
    report.noncancelable_shifts = flagged
    report.socle_degrees = [shift - 2 for shift in flagged]
    for k in range(1, a):
        if d[k] - d[k - 1] >= 3:
            report.notes.append(f"gap d_{k + 1} - d_{k} = {d[k] - d[k - 1]} >= 3")
    return report


def shift_report_p3(T: Node) -> ShiftReport:
    """
    Noncancelable last-module shifts of a k-configuration in P^3 of type
    (T_1..T_a), with eps_i = alpha(T_i) - i + a and dbar_ij = d_ij - j:

    - sigma(T_i) + 2 < alpha(T_{i+1}) flags eps_i + 2 + dbar_{i,alpha(T_i)};
    - alpha(T_i) = sigma(T_{i-1}) + 1 with d_i1 >= 3 flags
      eps_{i-1} + 2 + dbar_{i-1,alpha(T_{i-1})};
    - a gap d_{i,k+1} - d_ik >= 3 inside T_i flags eps_i + 2 + dbar_ik.

    Socle degree is shift - 3; only degrees below the top degree of the
    associated h-vector are kept.
    """
    _require_level(T, 3)
    a = alpha(T)
    parts = [entries(child) for child in T.children]
    report = ShiftReport(level=3)
    report.epsilon = [len(parts[i - 1]) - i + a for i in range(1, a + 1)]
    for i, part in enumerate(parts, start=1):
        for j, value in enumerate(part, start=1):
            report.dbar[(i, j)] = value - j

    def eps(i: int) -> int:
        return report.epsilon[i - 1]

    flagged = set()
    for i in range(1, a):
        if sigma(T.children[i - 1]) + 2 < alpha(T.children[i]):
            shift = eps(i) + 2 + report.dbar[(i, len(parts[i - 1]))]
            flagged.add(shift)
            report.notes.append(f"sigma(T_{i}) + 2 < alpha(T_{i + 1}): shift {shift}")
    for i in range(2, a + 1):
        if alpha(T.children[i - 1]) == sigma(T.children[i - 2]) + 1 and parts[i - 1][0] >= 3:
            shift = eps(i - 1) + 2 + report.dbar[(i - 1, len(parts[i - 2]))]
            flagged.add(shift)
            report.notes.append(f"alpha(T_{i}) = sigma(T_{i - 1}) + 1 and d_{i}1 >= 3: shift {shift}")
    for i, part in enumerate(parts, start=1):
        for k in range(1, len(part)):
            if part[k] - part[k - 1] >= 3:
                shift = eps(i) + 2 + report.dbar[(i, k)]
                flagged.add(shift)
                report.notes.append(f"gap d_{i},{k + 1} - d_{i},{k} >= 3 in T_{i}: shift {shift}")

    top_degree = hf_from_typevector(T).socle_degree
    kept = sorted(shift for shift in flagged if 0 <= shift - 3 < top_degree)
    report.noncancelable_shifts = kept
    report.socle_degrees = [shift - 3 for shift in kept]
    return report


def two_type_vectors(max_sigma: int) -> Iterator[Node]:
    """Every 2-type vector with sigma at most max_sigma."""
    def extend(prefix: List[int]) -> Iterator[Node]:
        if prefix:
            yield two_type(*prefix)
        start = prefix[-1] + 1 if prefix else 1
        for value in range(start, max_sigma + 1):
            prefix.append(value)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def enumerate_typevectors(max_sigma: int) -> Iterator[Node]:
    """Every valid 3-type vector with sigma at most max_sigma."""
    parts = list(two_type_vectors(max_sigma))

    def extend(prefix: List[Node]) -> Iterator[Node]:
        if prefix:
            yield Node(tuple(prefix))
        floor = sigma(prefix[-1]) if prefix else 0
        for part in parts:
            if alpha(part) > floor:
                prefix.append(part)
                yield from extend(prefix)
                prefix.pop()

    yield from extend([])
