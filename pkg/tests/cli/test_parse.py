import pytest

from udbound.cli import parse_group_spec, parse_word, table_types
from udbound.errors import ParseError
from udbound.isogeny import Lattice


@pytest.mark.parametrize(
    ("text", "label", "lattice"),
    [
        ("E8", "E8", Lattice.SIMPLY_CONNECTED),
        ("e6", "E6", Lattice.SIMPLY_CONNECTED),
        ("B3:sc", "B3", Lattice.SIMPLY_CONNECTED),
        ("E6:adjoint", "E6:adjoint", Lattice.ADJOINT),
        ("D6:pgo", "D6:adjoint", Lattice.ADJOINT),
        ("D8:hs", "D8:hs", Lattice.HALF_SPIN),
        ("D5:so", "D5:so", Lattice.SO),
        ("A5:mu3", "A5:mu3", Lattice.MU),
        ("A2+A2:adjoint", "A2+A2:adjoint", Lattice.ADJOINT),
        ("E6^2/mu3", "E6^2/mu3", Lattice.PRODUCT),
        (" A3 ", "A3", Lattice.SIMPLY_CONNECTED),
    ],
)
def test_parse_group_spec(text: str, label: str, lattice: Lattice):
    spec = parse_group_spec(text)
    assert spec.label == label
    assert spec.lattice is lattice


def test_parse_product_copies():
    spec = parse_group_spec("A2^3/mu3")
    assert spec.copies == 3
    assert spec.diagram.rank == 6


@pytest.mark.parametrize(
    ("text", "position"),
    [
        ("", 0),
        ("X5", 0),
        ("E5", 0),
        ("A2+", 3),
        ("A2-A2", 2),
        ("E6:sideways", 3),
        ("D7:hs", 3),
        ("E8:mu2", 3),
        ("B3:pgo", 3),
        ("A2+A2^2/mu3", 5),
        ("E6^/mu3", 3),
        ("E6^2mu3", 4),
        ("E6^2/mu3x", 8),
        ("A3^2/mu3", 7),
    ],
)
def test_parse_group_spec_errors(text: str, position: int):
    with pytest.raises(ParseError) as e:
        parse_group_spec(text)

    assert e.value.position == position
    assert e.value.text == text


def test_parse_error_lists_lattices():
    with pytest.raises(ParseError) as e:
        parse_group_spec("E6:sideways")

    assert "adjoint" in e.value.expected
    assert "hs" in e.value.expected


def test_parse_word():
    assert parse_word("1,2,3,2,1") == (1, 2, 3, 2, 1)
    assert parse_word(" 1, 2 ") == (1, 2)
    assert parse_word("") == ()


@pytest.mark.parametrize(("text", "position"), [("1,x,3", 2), ("1, 0", 3), ("1,-2", 2)])
def test_parse_word_errors(text: str, position: int):
    with pytest.raises(ParseError) as e:
        parse_word(text)

    assert e.value.position == position


def test_table_types():
    names = [str(t) for t in table_types(4)]
    assert names == [
        *("A1", "A2", "A3", "A4"),
        *("B2", "B3", "B4"),
        *("C2", "C3", "C4"),
        *("D4", "F4", "G2"),
    ]


def test_table_types_full():
    names = [str(t) for t in table_types(8)]
    assert len(names) == 8 + 7 + 7 + 5 + 5
    assert names[-5:] == ["E6", "E7", "E8", "F4", "G2"]
