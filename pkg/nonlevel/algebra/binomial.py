import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from nonlevel.utils.errors import InvalidInputError, InvariantError

logger = logging.getLogger("nonlevel")


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k > n or either argument is negative."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class OSequence:
    """
    Finite degree-indexed Hilbert function h_0, h_1, ..., h_s.

    Trailing zeros are trimmed on construction, so the socle degree is the
    last index. Only the structural invariants are enforced here; Macaulay's
    growth condition is checked by `is_o_sequence`.
    """

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        while len(values) > 1 and values[-1] == 0:
            values = values[:-1]
        if not values:
            raise InvalidInputError("An O-sequence needs at least h_0")
        if values[0] != 1:
            raise InvalidInputError(f"h_0 must be 1, got {values[0]}")
        if any(v < 0 for v in values):
            raise InvalidInputError(f"Negative entry in {values}")
        if 0 in values:
            raise InvalidInputError(
                f"Interior zero at degree {values.index(0)} in {values}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def parse(cls, text: str) -> "OSequence":
        """Parse a comma-separated h-vector such as ``1,3,6,8``."""
        parts = [p.strip() for p in text.strip().split(",")]
        if not parts or any(not p for p in parts):
            raise InvalidInputError(f"Malformed sequence: '{text}'")
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as e:
            if isinstance(e, InvalidInputError):
                raise
            raise InvalidInputError(f"Malformed sequence: '{text}'") from e

    @property
    def codim(self) -> int:
        return self.values[1] if len(self.values) > 1 else 0

    @property
    def socle_degree(self) -> int:
        return len(self.values) - 1

    def h(self, t: int) -> int:
        """Value in degree t, zero outside the stored range."""
        if 0 <= t < len(self.values):
            return self.values[t]
        return 0

    def truncate(self, degree: int) -> "OSequence":
        """Keep h_0..h_degree."""
        return OSequence(self.values[: degree + 1])

    def extend(self, *values: int) -> "OSequence":
        return OSequence(self.values + tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, index):
        return self.values[index]

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)


SequenceLike = Union[OSequence, Sequence[int]]


def as_osequence(H: SequenceLike) -> OSequence:
    return H if isinstance(H, OSequence) else OSequence(tuple(H))


@dataclass(frozen=True)
class BinomialExpansion:
    """The i-binomial expansion h = C(m_i, i) + C(m_{i-1}, i-1) + ... + C(m_j, j)."""

    value: int
    degree: int
    terms: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        total = sum(binom(m, t) for m, t in self.terms)
        if total != self.value:
            raise InvariantError(f"Expansion {self.terms} sums to {total}, not {self.value}")
        previous: Optional[Tuple[int, int]] = None
        for m, t in self.terms:
            if m < t or t < 1:
                raise InvariantError(f"Term C({m},{t}) violates m_t >= t >= 1")
            if previous is not None and (m >= previous[0] or t != previous[1] - 1):
                raise InvariantError(f"Terms {self.terms} are not strictly decreasing")
            previous = (m, t)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"C({m},{t})" for m, t in self.terms)


def macaulay_expand(h: int, i: int) -> BinomialExpansion:
    """
    Greedy i-binomial expansion of h.

    Args:
        h (int): Value to expand, h >= 1.
        i (int): Degree of the expansion, i >= 1.

    Returns:
        BinomialExpansion: The unique expansion with strictly decreasing tops.
    """
    if h < 1 or i < 1:
        raise InvalidInputError(f"macaulay_expand needs h >= 1 and i >= 1, got ({h}, {i})")

    terms: List[Tuple[int, int]] = []
    remainder = h
    t = i
    while remainder > 0:
        if t < 1:
            raise InvariantError(f"Greedy expansion of {h} in degree {i} ran out of terms")
        m = t
        while binom(m + 1, t) <= remainder:
            m += 1
        terms.append((m, t))
        remainder -= binom(m, t)
        t -= 1
    return BinomialExpansion(value=h, degree=i, terms=tuple(terms))


def macaulay_growth(h: int, i: int) -> int:
    """h^<i>: the largest value allowed in degree i+1 after h in degree i."""
    if i < 1:
        raise InvalidInputError(f"macaulay_growth needs i >= 1, got {i}")
    if h == 0:
        return 0
    expansion = macaulay_expand(h, i)
    return sum(binom(m + 1, t + 1) for m, t in expansion.terms)


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violation: Optional[int] = None
    bound: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return "valid O-sequence"
        return (
            f"invalid at t = {self.violation}: h_{self.violation} exceeds "
            f"h_{self.violation - 1}^<{self.violation - 1}> = {self.bound}"
        )


def is_o_sequence(H: SequenceLike) -> ValidityReport:
    """
    Check Macaulay's condition h_{t+1} <= h_t^<t> for every t >= 1.

    On failure the report names the least degree whose value exceeds the
    bound coming from the degree before it.
    """
    H = as_osequence(H)
    for t in range(1, H.socle_degree):
        bound = macaulay_growth(H.h(t), t)
        if H.h(t + 1) > bound:
            logger.debug(f"{H} violates the Macaulay bound at t = {t} ({H.h(t + 1)} > {bound})")
            return ValidityReport(valid=False, violation=t + 1, bound=bound)
    return ValidityReport(valid=True)


def first_difference(H: SequenceLike) -> List[int]:
    values = list(H)
    return [values[0]] + [values[t] - values[t - 1] for t in range(1, len(values))]


def is_unimodal(values: Iterable[int]) -> bool:
    """True when the values rise (weakly), then fall (weakly), with no second rise."""
    falling = False
    previous = None
    for v in values:
        if previous is not None:
            if v < previous:
                falling = True
            elif v > previous and falling:
                return False
        previous = v
    return True


def is_maximal_growth(H: SequenceLike, t: int) -> bool:
    """True when h_{t+1} = h_t^<t>."""
    H = as_osequence(H)
    return H.h(t + 1) == macaulay_growth(H.h(t), t)


def enumerate_o_sequences(
    codim: int, max_socle_degree: int, max_value: int
) -> Iterator[OSequence]:
    """
    Yield every Artinian O-sequence with h_1 = codim, socle degree at most
    max_socle_degree and all entries at most max_value, prefixes first and
    then in increasing lexicographic order.

    The depth-first search prunes with the Macaulay bound, so no invalid
    prefix is ever extended.
    """
    if codim < 1 or codim > max_value or max_socle_degree < 1:
        return

    def extend(prefix: List[int]) -> Iterator[OSequence]:
        yield OSequence(tuple(prefix))
        t = len(prefix) - 1
        if t >= max_socle_degree:
            return
        bound = min(macaulay_growth(prefix[t], t), max_value)
        for value in range(1, bound + 1):
            prefix.append(value)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([1, codim])
