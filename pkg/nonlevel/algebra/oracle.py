"""
Brute-force ground truth for monomial ideals: Hilbert functions by counting,
socle monomials by membership tests, and graded Betti numbers as ranks of
Koszul homology over GF(p).
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from nonlevel.algebra.binomial import OSequence
from nonlevel.algebra.monomial import Monomial, MonomialIdeal, slice_dimension
from nonlevel.algebra.resolution import BettiTable
from nonlevel.utils.errors import InvalidInputError, InvariantError

logger = logging.getLogger("nonlevel")

DEFAULT_PRIME = 32003
CROSS_CHECK_PRIME = 101

BasisElement = Tuple[Monomial, Tuple[int, ...]]


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over GF(p) by Gauss-Jordan elimination."""
    m = matrix.astype(np.int64) % p
    n_rows, n_cols = m.shape
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        for i in range(n_rows):
            if i != r and m[i, c] != 0:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
    return r


@dataclass
class GradedMatrix:
    """
    Koszul boundary map in one internal degree, from K_p to K_{p-1}.
    Columns index the source basis, rows the target basis.
    """

    degree: int
    homological_degree: int
    rows: List[BasisElement]
    cols: List[BasisElement]
    data: np.ndarray
    prime: int

    def rank(self) -> int:
        if self.data.size == 0:
            return 0
        return rank_mod_p(self.data, self.prime)


def hilbert_function(I: MonomialIdeal, maxdeg: Optional[int] = None) -> OSequence:
    """h_d = number of degree-d monomials outside I, for d <= maxdeg."""
    if maxdeg is None:
        maxdeg = I.max_degree
    return OSequence(tuple(slice_dimension(I.n, d) - len(I.slice(d)) for d in range(maxdeg + 1)))


def socle_monomials(I: MonomialIdeal) -> Dict[int, List[Monomial]]:
    """Monomials outside I pushed into I by every variable, grouped by degree."""
    if not I.artinian:
        raise InvalidInputError("Socle monomials are only computed for Artinian ideals")
    socle: Dict[int, List[Monomial]] = {}
    for d in range(I.socle_degree() + 1):
        found = [
            m for m in I.quotient_basis(d)
            if all(m.times(i) in I for i in range(1, I.n + 1))
        ]
        if found:
            socle[d] = found
    return socle


class KoszulComplex:
    """K(x_1, ..., x_n) tensored with A = R/I, one internal degree at a time."""

    def __init__(self, I: MonomialIdeal, prime: int = DEFAULT_PRIME):
        self.I = I
        self.n = I.n
        self.prime = prime
        self._quotient: Dict[int, List[Monomial]] = {}

    def quotient(self, d: int) -> List[Monomial]:
        if d < 0:
            return []
        if d not in self._quotient:
            self._quotient[d] = self.I.quotient_basis(d)
        return self._quotient[d]

    def basis(self, p: int, j: int) -> List[BasisElement]:
        """Basis of K_p in internal degree j: m * e_S with |S| = p, deg m = j - p."""
        if p < 0 or p > self.n:
            return []
        subsets = list(combinations(range(1, self.n + 1), p))
        return [(m, S) for S in subsets for m in self.quotient(j - p)]

    def boundary(self, p: int, j: int) -> GradedMatrix:
        """d(m e_S) = sum over k in S of (-1)^pos(k) x_k m e_{S - k}."""
        source = self.basis(p, j)
        target = self.basis(p - 1, j)
        position = {element: row for row, element in enumerate(target)}
        data = np.zeros((len(target), len(source)), dtype=np.int64)
        for col, (m, S) in enumerate(source):
            for pos, k in enumerate(S):
                image = m.times(k)
                if image in self.I:
                    continue
                rest = S[:pos] + S[pos + 1:]
                sign = 1 if pos % 2 == 0 else self.prime - 1
                row = position[(image, rest)]
                data[row, col] = (data[row, col] + sign) % self.prime
        return GradedMatrix(degree=j, homological_degree=p, rows=target, cols=source, data=data, prime=self.prime)

    def check_boundary_squared(self, p: int, j: int):
        outer, inner = self.boundary(p - 1, j), self.boundary(p, j)
        if outer.data.size == 0 or inner.data.size == 0:
            return
        product = (outer.data @ inner.data) % self.prime
        if np.any(product):
            raise InvariantError(f"Koszul boundary squared is nonzero at p={p}, j={j}")

    def homology_dimension(self, p: int, j: int) -> int:
        dimension = len(self.basis(p, j))
        if dimension == 0:
            return 0
        return dimension - self.boundary(p, j).rank() - self.boundary(p + 1, j).rank()


def koszul_betti(
    I: MonomialIdeal, maxshift: Optional[int] = None, prime: int = DEFAULT_PRIME
) -> BettiTable:
    """
    Betti numbers of the ideal from Koszul homology of A = R/I:
    beta_{q,j}(I) = dim H_{q+1}(K)_j over GF(prime).

    Args:
        I (MonomialIdeal): Artinian monomial ideal.
        maxshift (int, optional): Largest internal degree examined.
            Default: max_degree + n.
        prime (int): Characteristic of the coefficient field.

    Returns:
        BettiTable: Table in the ideal's indexing (row q = F_{q+1}).
    """
    if not I.artinian:
        raise InvalidInputError("koszul_betti needs an Artinian ideal")
    limit = I.max_degree + I.n
    if maxshift is None:
        maxshift = limit
    elif maxshift > limit:
        raise InvalidInputError(f"maxshift {maxshift} exceeds the stored range (max {limit})")

    complex_ = KoszulComplex(I, prime)
    table = BettiTable(n=I.n, artinian=True)
    for j in range(maxshift + 1):
        for p in range(2, I.n + 1):
            complex_.check_boundary_squared(p, j)
        for q in range(I.n):
            table.add(q, j, complex_.homology_dimension(q + 1, j))
    logger.debug(f"Koszul table over GF({prime}) has {len(table.entries)} nonzero entries")
    return table


def cross_check_primes(
    I: MonomialIdeal, primes: Iterable[int] = (DEFAULT_PRIME, CROSS_CHECK_PRIME)
) -> BettiTable:
    """Compute koszul_betti over every prime and insist they agree."""
    tables = {p: koszul_betti(I, prime=p) for p in primes}
    reference_prime, reference = next(iter(tables.items()))
    for p, table in tables.items():
        if table != reference:
            raise InvariantError(
                f"Koszul Betti numbers differ between GF({reference_prime}) and GF({p})"
            )
    return reference
