import pytest

from nonlevel.algebra.binomial import OSequence, binom
from nonlevel.algebra.monomial import lex_ideal
from nonlevel.algebra.oracle import socle_monomials
from nonlevel.algebra.typevector import (
    Leaf,
    Node,
    Unit,
    alpha,
    enumerate_typevectors,
    entries,
    flat_run_typevectors,
    format_typevector,
    hf_from_typevector,
    parse_typevector,
    shift_report_p2,
    shift_report_p3,
    sigma,
    three_type,
    two_type,
    typevector_from_hf,
    validate,
)
from nonlevel.utils.errors import InvalidInputError, NotDecomposableError

FLAT_RUN_TV = three_type((2,), (1, 3, 6, 7), tuple(range(1, 9)))


def test_parse_and_format():
    text = "((2),(1,3,6,7),(1,2,3,4,5,6,7,8))"
    T = parse_typevector(text)
    assert T == FLAT_RUN_TV
    assert format_typevector(T) == text
    assert parse_typevector(" ( 2 , 5 ) ") == two_type(2, 5)
    assert parse_typevector("()") == Unit()
    assert parse_typevector("4") == Leaf(4)


@pytest.mark.parametrize(
    "text",
    [
        "((1,2)",
        "(a)",
        "(0)",
        "(3,2)",
        "((),())",
        "(1,(2))",
        "((((1))))",
        "((3),(2,4))",
    ],
)
def test_parse_rejects(text):
    with pytest.raises(InvalidInputError):
        parse_typevector(text)


def test_alpha_sigma_level():
    assert (alpha(Unit()), sigma(Unit()), Unit().level) == (-1, 1, 0)
    assert (alpha(Leaf(4)), sigma(Leaf(4)), Leaf(4).level) == (4, 4, 1)
    assert (alpha(two_type(2, 5)), sigma(two_type(2, 5))) == (2, 5)
    assert (alpha(FLAT_RUN_TV), sigma(FLAT_RUN_TV), FLAT_RUN_TV.level) == (3, 8, 3)


def test_validate_reports_separation():
    result = validate(Node((Leaf(3), Leaf(2))))
    assert not result
    assert "sigma" in result.violation


def test_hf_levels():
    assert hf_from_typevector(Unit()).values == (1,)
    assert hf_from_typevector(Leaf(3)).values == (1, 1, 1)
    assert hf_from_typevector(two_type(2, 5)).values == (1, 2, 2, 1, 1)
    assert hf_from_typevector(FLAT_RUN_TV).values == (1, 3, 6, 8, 9, 9, 9, 10)


@pytest.mark.parametrize(
    "values, expected",
    [
        ((1, 3, 6, 8, 9, 9, 9, 10), "((2),(1,3,6,7),(1,2,3,4,5,6,7,8))"),
        ((1, 3, 5, 6, 6, 7), "((2,5),(1,2,3,4,5,6))"),
        ((1, 3, 6, 5, 5, 6), "((1),(1,3),(1,2,3,4,5,6))"),
        ((1, 3, 6, 6, 6, 7), "((1),(2,5),(1,2,3,4,5,6))"),
        ((1, 3, 6, 7, 7, 8), "((1),(1,4,5),(1,2,3,4,5,6))"),
        ((1, 3, 3, 1), "((1),(1,2,4))"),
        ((1, 3, 2, 2), "((1),(3,4))"),
    ],
)
def test_extraction(values, expected):
    assert format_typevector(typevector_from_hf(values)) == expected


def test_extraction_rejects_codim_four():
    with pytest.raises(InvalidInputError):
        typevector_from_hf((1, 4, 5))


def test_extraction_never_returns_a_wrong_answer():
    with pytest.raises(NotDecomposableError):
        typevector_from_hf((1, 2, 2, 2, 2, 3))


@pytest.mark.parametrize(
    "d, s, i, top, tail",
    [
        (4, 3, 3, tuple(range(1, 9)), (3, 6, 7)),
        (5, 2, 2, tuple(range(1, 9)), (4, 7)),
        (3, 2, 3, tuple(range(1, 7)), (1, 4, 5)),
        (2, 2, 1, tuple(range(1, 6)), (2,)),
        (6, 3, 1, tuple(range(1, 11)), (7,)),
    ],
)
def test_flat_run_typevectors(d, s, i, top, tail):
    result = flat_run_typevectors(d, s, i)
    assert result.top == top
    assert result.tail == tail


@pytest.mark.parametrize("d, s, i", [(3, 1, 1), (3, 2, 0)])
def test_flat_run_typevectors_domain(d, s, i):
    with pytest.raises(InvalidInputError):
        flat_run_typevectors(d, s, i)


def flat_run_sequence(d, s, h):
    """Maximal growth below degree d, h in degrees d..d+s-1, then h+1."""
    return OSequence(tuple(binom(t + 2, 2) for t in range(d)) + (h,) * s + (h + 1,))


def test_flat_run_closed_form_matches_extraction(full_sweep):
    top_d, top_s = (6, 4) if full_sweep else (4, 3)
    checked = 0
    for d in range(1, top_d + 1):
        for s in range(2, top_s + 1):
            for h in range(d + s, binom(d + 2, 2) + 1):
                if h == binom(d + 1, 2):
                    continue
                i = h - (d + s - 1)
                T = typevector_from_hf(flat_run_sequence(d, s, h))
                if alpha(T) < 2 or i > alpha(T.children[-2]):
                    continue
                expected = flat_run_typevectors(d, s, i)
                assert tuple(entries(T.children[-1])) == expected.top, (d, s, i)
                tail = tuple(entries(T.children[-2]))
                assert tail[-len(expected.tail):] == expected.tail, (d, s, i)
                checked += 1
    assert checked > 0


def test_shift_report_p2_gap():
    report = shift_report_p2(two_type(2, 5))
    assert report.last_shifts == [4, 6]
    assert report.middle_shifts == [2, 3, 5]
    assert report.noncancelable_shifts == [4]
    assert report.socle_degrees == [2]
    assert report.notes


@pytest.mark.parametrize("values", [(1, 2), (3, 4)])
def test_shift_report_p2_no_flags(values):
    report = shift_report_p2(two_type(*values))
    assert report.noncancelable_shifts == []
    assert report.socle_degrees == []


def test_shift_report_p2_degree_is_in_lex_socle():
    socle = socle_monomials(lex_ideal(hf_from_typevector(two_type(2, 5)), 2))
    assert 2 in socle


def test_shift_report_p2_needs_two_type():
    with pytest.raises(InvalidInputError):
        shift_report_p2(FLAT_RUN_TV)


@pytest.mark.parametrize(
    "T, hf, socle_degrees",
    [
        (FLAT_RUN_TV, (1, 3, 6, 8, 9, 9, 9, 10), [5]),
        (three_type((1,), (1, 2, 3, 4)), (1, 3, 3, 4), [1]),
        (three_type((1, 3), tuple(range(1, 7))), (1, 3, 5, 5, 5, 6), [3]),
        (three_type((1, 2), (3, 4, 5)), (1, 3, 5, 3, 3), [2]),
    ],
)
def test_shift_report_p3(T, hf, socle_degrees):
    assert hf_from_typevector(T).values == hf
    report = shift_report_p3(T)
    assert report.socle_degrees == socle_degrees
    assert report.noncancelable_shifts == [d + 3 for d in socle_degrees]
    assert report.to_dict()["socle_degrees"] == socle_degrees


def test_shift_report_p3_needs_three_type():
    with pytest.raises(InvalidInputError):
        shift_report_p3(two_type(2, 5))


def test_enumerate_typevectors_are_valid_and_distinct():
    found = list(enumerate_typevectors(4))
    assert len(found) == len(set(found))
    assert all(validate(T) for T in found)
    assert all(T.level == 3 and sigma(T) <= 4 for T in found)
    assert three_type((1,), (2, 3)) in found


def test_round_trip_and_shift_socle(full_sweep):
    max_sigma = 9 if full_sweep else 5
    for T in enumerate_typevectors(max_sigma):
        H = hf_from_typevector(T)
        assert sum(H.values) == sum(sum(entries(part)) for part in T.children)
        assert typevector_from_hf(H) == T
        degrees = shift_report_p3(T).socle_degrees
        if degrees:
            socle = socle_monomials(lex_ideal(H, 3))
            assert all(degree in socle for degree in degrees), format_typevector(T)
