import logging
import re
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from nonlevel.algebra.binomial import OSequence, SequenceLike, as_osequence, binom, is_o_sequence
from nonlevel.utils.errors import InvalidInputError, InvariantError

logger = logging.getLogger("nonlevel")

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True, order=True)
class Monomial:
    """
    x_1^{e_1} ... x_n^{e_n}, stored as its exponent vector.

    Within one degree, comparing exponent tuples is exactly the lexicographic
    order with x_1 > x_2 > ... > x_n, so sorting with ``reverse=True`` gives
    descending lex.
    """

    exponents: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, n: int, i: int) -> "Monomial":
        """The variable x_i (1-based)."""
        exponents = [0] * n
        exponents[i - 1] = 1
        return cls(tuple(exponents))

    @classmethod
    def parse(cls, text: str, n: int) -> "Monomial":
        """Parse ``x1^2*x3`` (or ``1``) as a monomial in n variables."""
        text = text.strip()
        exponents = [0] * n
        if text == "1":
            return cls(tuple(exponents))
        for factor in text.split("*"):
            match = _FACTOR.match(factor.strip())
            if not match:
                raise InvalidInputError(f"Malformed monomial factor '{factor}' in '{text}'")
            index = int(match.group(1))
            if not 1 <= index <= n:
                raise InvalidInputError(f"Variable x{index} out of range for n = {n}")
            exponents[index - 1] += int(match.group(2) or 1)
        return cls(tuple(exponents))

    def m_index(self) -> int:
        """Largest index i with x_i dividing this monomial."""
        for i in range(self.n, 0, -1):
            if self.exponents[i - 1] > 0:
                return i
        raise InvalidInputError("m(T) is undefined for the monomial 1")

    def times(self, i: int) -> "Monomial":
        exponents = list(self.exponents)
        exponents[i - 1] += 1
        return Monomial(tuple(exponents))

    def divided_by(self, i: int) -> "Monomial":
        if self.exponents[i - 1] == 0:
            raise InvalidInputError(f"x{i} does not divide {self}")
        exponents = list(self.exponents)
        exponents[i - 1] -= 1
        return Monomial(tuple(exponents))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        factors = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                factors.append(f"x{i}")
            elif e > 1:
                factors.append(f"x{i}^{e}")
        return "*".join(factors) if factors else "1"


@lru_cache(maxsize=None)
def _monomials(n: int, d: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 1:
        return ((d,),)
    return tuple(
        (first,) + rest
        for first in range(d, -1, -1)
        for rest in _monomials(n - 1, d - first)
    )


def all_monomials(n: int, d: int) -> List[Monomial]:
    """All monomials of degree d in n variables, in descending lex order."""
    if n < 1 or d < 0:
        raise InvalidInputError(f"all_monomials needs n >= 1 and d >= 0, got ({n}, {d})")
    return [Monomial(e) for e in _monomials(n, d)]


def slice_dimension(n: int, d: int) -> int:
    """dim R_d for R = k[x_1..x_n]."""
    return binom(d + n - 1, n - 1)


def m_index(T: Monomial) -> int:
    return T.m_index()


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Monomial ideal stored slice by slice up to ``max_degree``.

    When ``artinian`` is set every degree above ``max_degree`` is a full
    slice. Otherwise membership above ``max_degree`` is decided by
    divisibility by the top stored slice, which is exact as long as every
    generator has degree at most ``max_degree``.
    """

    n: int
    slices: Dict[int, Tuple[Monomial, ...]]
    max_degree: int
    artinian: bool
    _index: Dict[int, List[Tuple[int, ...]]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        slices = {}
        for d in range(self.max_degree + 1):
            members = sorted(set(self.slices.get(d, ())), reverse=True)
            slices[d] = tuple(members)
            self._index[d] = sorted(m.exponents for m in members)
        object.__setattr__(self, "slices", slices)

    @classmethod
    def from_generators(
        cls,
        n: int,
        generators: Iterable[Monomial],
        max_degree: Optional[int] = None,
    ) -> "MonomialIdeal":
        """
        Close arbitrary monomial generators under multiplication.

        The ideal is Artinian exactly when every variable has a pure power
        among the generators; then slices are built until the first full
        slice D and stored through D + 1. Otherwise they are stored through
        ``max_degree`` (default: the largest generator degree plus one).
        """
        generators = list(generators)
        if any(g.n != n for g in generators):
            raise InvalidInputError(f"All generators must live in {n} variables")
        if any(g.degree == 0 for g in generators):
            raise InvalidInputError("The unit ideal is not supported")

        pure_powers = {}
        for g in generators:
            support = [i for i, e in enumerate(g.exponents) if e > 0]
            if len(support) == 1:
                i = support[0]
                pure_powers[i] = min(pure_powers.get(i, g.degree), g.degree)
        artinian = len(pure_powers) == n

        top_generator = max((g.degree for g in generators), default=0)
        if artinian:
            limit = sum(a - 1 for a in pure_powers.values()) + 2
        else:
            limit = max_degree if max_degree is not None else top_generator + 1
        if max_degree is not None:
            limit = max(limit, max_degree)

        by_degree: Dict[int, set] = {}
        for g in generators:
            by_degree.setdefault(g.degree, set()).add(g)

        slices: Dict[int, Tuple[Monomial, ...]] = {}
        previous: set = set()
        stored_to = limit
        for d in range(limit + 1):
            current = {m.times(i) for m in previous for i in range(1, n + 1)}
            current |= by_degree.get(d, set())
            slices[d] = tuple(current)
            previous = current
            if artinian and len(current) == slice_dimension(n, d) and d >= top_generator:
                stored_to = d + 1
                full_next = all_monomials(n, d + 1)
                slices[d + 1] = tuple(full_next)
                break
        return cls(n=n, slices=slices, max_degree=stored_to, artinian=artinian)

    def slice(self, d: int) -> Tuple[Monomial, ...]:
        """I_d in descending lex order."""
        if d < 0:
            return ()
        if d <= self.max_degree:
            return self.slices[d]
        if self.artinian:
            return tuple(all_monomials(self.n, d))
        return tuple(m for m in all_monomials(self.n, d) if m in self)

    def __contains__(self, m: Monomial) -> bool:
        d = m.degree
        if d <= self.max_degree:
            keys = self._index[d]
            position = bisect_left(keys, m.exponents)
            return position < len(keys) and keys[position] == m.exponents
        if self.artinian:
            return True
        return any(g.divides(m) for g in self.slices[self.max_degree])

    def quotient_basis(self, d: int) -> List[Monomial]:
        """Degree-d monomials outside the ideal, descending lex."""
        return [m for m in all_monomials(self.n, d) if m not in self]

    def socle_degree(self) -> int:
        if not self.artinian:
            raise InvalidInputError("Socle degree is only defined for Artinian ideals")
        top = -1
        for d in range(self.max_degree + 1):
            if len(self.slices[d]) < slice_dimension(self.n, d):
                top = d
        return top

    def check_closure(self):
        """Raise InvariantError unless R_1 * I_d lies in I_{d+1} for stored d."""
        for d in range(self.max_degree):
            for m in self.slices[d]:
                for i in range(1, self.n + 1):
                    if m.times(i) not in self:
                        raise InvariantError(
                            f"Ideal is not closed: {m} in I_{d} but x{i}*{m} not in I_{d + 1}"
                        )


def lex_ideal(H: SequenceLike, n: int) -> MonomialIdeal:
    """
    Lex-segment ideal whose quotient has Hilbert function H.

    Slice d holds the first dim R_d - h_d monomials of degree d in
    descending lex order. Slices are stored through socle degree + 2; the
    ideal is Artinian.

    Args:
        H: A valid O-sequence.
        n (int): Number of variables, at least h_1.

    Returns:
        MonomialIdeal: The lex-segment ideal.
    """
    H = as_osequence(H)
    report = is_o_sequence(H)
    if not report:
        raise InvalidInputError(f"{H} is not an O-sequence: {report.describe()}")
    if H.codim > n:
        raise InvalidInputError(f"h_1 = {H.codim} exceeds the variable count n = {n}")

    max_degree = H.socle_degree + 2
    slices = {}
    for d in range(1, max_degree + 1):
        count = slice_dimension(n, d) - H.h(d)
        slices[d] = tuple(all_monomials(n, d)[:count])
    ideal = MonomialIdeal(n=n, slices=slices, max_degree=max_degree, artinian=True)
    ideal.check_closure()
    logger.debug(f"Built lex ideal of {H} in {n} variables through degree {max_degree}")
    return ideal


def minimal_generators(I: MonomialIdeal) -> Dict[int, List[Monomial]]:
    """
    G(I)_d = I_d minus R_1 * I_{d-1}, for every stored degree with generators.
    Degrees with no generators are omitted.
    """
    generators: Dict[int, List[Monomial]] = {}
    for d in range(1, I.max_degree + 1):
        new = [
            m
            for m in I.slice(d)
            if not any(
                m.exponents[i - 1] > 0 and m.divided_by(i) in I
                for i in range(1, I.n + 1)
            )
        ]
        if new:
            generators[d] = new
    return generators


def last_monomial_of_slice(d: int, i: int) -> Monomial:
    """
    Lex-smallest monomial of I_d, for the lex ideal in three variables with
    h_d = d + i.

    Walks the blocks of fixed x_1 exponent from the bottom of the
    descending order: the d + i quotient monomials fill the blocks with
    x_1^0, x_1^1, ... and the last monomial of I_d sits just above them.
    """
    if d < 1 or not 1 <= i <= (d * d + d) // 2:
        raise InvalidInputError(f"last_monomial_of_slice needs 1 <= i <= (d^2+d)/2, got d={d}, i={i}")
    remaining = d + i
    a = 0
    while remaining >= d - a + 1:
        remaining -= d - a + 1
        a += 1
    return Monomial((a, remaining, d - a - remaining))


def is_stable(I: MonomialIdeal) -> bool:
    """True iff x_i * T / x_{m(T)} lies in I for every stored T and every i < m(T)."""
    for d in range(1, I.max_degree + 1):
        for T in I.slice(d):
            top = T.m_index()
            reduced = T.divided_by(top)
            for i in range(1, top):
                if reduced.times(i) not in I:
                    logger.debug(f"Not stable: x{i}*{T}/x{top} is missing")
                    return False
    return True


def maximal_ideal(n: int) -> MonomialIdeal:
    return lex_ideal(OSequence((1,)), n)
