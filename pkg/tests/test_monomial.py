import pytest

from nonlevel.algebra.binomial import OSequence, binom, enumerate_o_sequences
from nonlevel.algebra.monomial import (
    Monomial,
    MonomialIdeal,
    all_monomials,
    is_stable,
    last_monomial_of_slice,
    lex_ideal,
    m_index,
    maximal_ideal,
    minimal_generators,
    slice_dimension,
)
from nonlevel.utils.errors import InvalidInputError


def mono(text, n=3):
    return Monomial.parse(text, n)


def test_parse_and_format():
    assert mono("x1^2*x2") == Monomial((2, 1, 0))
    assert str(Monomial((2, 1, 0))) == "x1^2*x2"
    assert str(Monomial((0, 0, 4))) == "x3^4"
    assert str(Monomial.one(3)) == "1"
    assert mono("1") == Monomial.one(3)


@pytest.mark.parametrize("text", ["x4", "y1", "x1^", "x1**2"])
def test_parse_errors(text):
    with pytest.raises(InvalidInputError):
        mono(text)


def test_m_index():
    assert m_index(mono("x1^2*x2")) == 2
    assert m_index(mono("x1*x3")) == 3
    with pytest.raises(InvalidInputError):
        m_index(Monomial.one(3))


def test_all_monomials_descending_lex():
    assert [str(m) for m in all_monomials(3, 2)] == ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]
    assert len(all_monomials(3, 7)) == 36
    assert len(all_monomials(3, 7)) == slice_dimension(3, 7)
    assert all_monomials(3, 0) == [Monomial.one(3)]


def test_lex_ideal_slices():
    I = lex_ideal((1, 3, 2, 2), 3)
    assert I.slice(1) == ()
    assert [str(m) for m in I.slice(2)] == ["x1^2", "x1*x2", "x1*x3", "x2^2"]
    assert len(I.slice(3)) == 8
    assert len(I.slice(4)) == slice_dimension(3, 4)
    assert I.artinian
    assert I.socle_degree() == 3


def test_lex_ideal_generators():
    generators = minimal_generators(lex_ideal((1, 3, 2, 2), 3))
    assert {d: [str(m) for m in gens] for d, gens in generators.items()} == {
        2: ["x1^2", "x1*x2", "x1*x3", "x2^2"],
        4: ["x2*x3^3", "x3^4"],
    }


def test_lex_ideal_rejects_invalid_input():
    with pytest.raises(InvalidInputError):
        lex_ideal((1, 3, 6, 11), 3)
    with pytest.raises(InvalidInputError):
        lex_ideal((1, 3, 2), 2)


def test_lex_ideals_are_stable_and_reproduce_their_sequence(full_sweep):
    max_degree, max_value = (6, 12) if full_sweep else (4, 6)
    for codim in (1, 2, 3):
        for H in enumerate_o_sequences(codim, max_degree, max_value):
            I = lex_ideal(H, 3)
            assert is_stable(I)
            for d in range(H.socle_degree + 3):
                assert slice_dimension(3, d) - len(I.slice(d)) == H.h(d)


def test_minimal_generators_regenerate_the_lex_ideal(full_sweep):
    max_degree, max_value = (6, 12) if full_sweep else (4, 6)
    for codim in (1, 2, 3):
        for H in enumerate_o_sequences(codim, max_degree, max_value):
            I = lex_ideal(H, 3)
            generators = [g for gens in minimal_generators(I).values() for g in gens]
            J = MonomialIdeal.from_generators(3, generators)
            for d in range(H.socle_degree + 3):
                assert J.slice(d) == I.slice(d), (H, d)


def test_membership_above_stored_range():
    I = MonomialIdeal.from_generators(3, [mono("x2^2")])
    assert not I.artinian
    assert mono("x1^5*x2^2*x3") in I
    assert mono("x1^5*x2*x3^2") not in I


def test_from_generators_complete_intersection():
    I = MonomialIdeal.from_generators(3, [mono("x1^2"), mono("x2^2"), mono("x3^2")])
    assert I.artinian
    assert I.socle_degree() == 3
    assert I.quotient_basis(3) == [mono("x1*x2*x3")]
    assert not is_stable(I)


def test_from_generators_errors():
    with pytest.raises(InvalidInputError):
        MonomialIdeal.from_generators(3, [Monomial((1, 0))])
    with pytest.raises(InvalidInputError):
        MonomialIdeal.from_generators(3, [Monomial.one(3)])


def test_non_stable_ideal():
    assert not is_stable(MonomialIdeal.from_generators(3, [mono("x2^2")]))


@pytest.mark.parametrize(
    "d, i, expected",
    [
        (7, 9, "x1^2*x2*x3^4"),
        (7, 10, "x1^2*x2^2*x3^3"),
        (4, 10, "x1^4"),
        (3, 3, "x1*x2^2"),
        (6, 6, "x1*x2^5"),
    ],
)
def test_last_monomial_of_slice(d, i, expected):
    assert str(last_monomial_of_slice(d, i)) == expected


def test_last_monomial_of_slice_matches_lex_ideal():
    H = OSequence((1, 3, 6, 10, 15, 21, 18, 17, 17))
    assert lex_ideal(H, 3).slice(7)[-1] == last_monomial_of_slice(7, 10)
    H = OSequence((1, 3, 6, 10, 15, 21, 17, 16, 16))
    assert lex_ideal(H, 3).slice(7)[-1] == last_monomial_of_slice(7, 9)


def test_last_monomial_of_slice_sweep(full_sweep):
    top_d = 9 if full_sweep else 6
    for d in range(1, top_d + 1):
        for i in range(1, (d * d + d) // 2 + 1):
            H = tuple(binom(t + 2, 2) for t in range(d)) + (d + i,)
            assert lex_ideal(H, 3).slice(d)[-1] == last_monomial_of_slice(d, i), (d, i)


@pytest.mark.parametrize("d, i", [(3, 0), (3, 7), (0, 1)])
def test_last_monomial_of_slice_domain(d, i):
    with pytest.raises(InvalidInputError):
        last_monomial_of_slice(d, i)


def test_maximal_ideal():
    I = maximal_ideal(3)
    assert [str(m) for m in minimal_generators(I)[1]] == ["x1", "x2", "x3"]
    assert I.socle_degree() == 0
