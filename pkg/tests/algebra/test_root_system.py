import pytest

from udbound.errors import InconsistencyError
from udbound.root_system import (
    CenterData,
    DynkinDiagram,
    SimpleType,
    build,
    center,
    is_c_type_path,
    is_one_chain,
    semisimple_center,
    subdiagram,
)


@pytest.mark.parametrize(
    ("text", "count"),
    [("A4", 10), ("B3", 9), ("C5", 25), ("D5", 20), ("E6", 36), ("E7", 63)],
)
def test_positive_root_count(text: str, count: int):
    assert SimpleType.parse(text).positive_root_count == count


def test_positive_root_count_exceptional():
    assert SimpleType("E", 8).positive_root_count == 120
    assert SimpleType("F", 4).positive_root_count == 24
    assert SimpleType("G", 2).positive_root_count == 6


@pytest.mark.parametrize(("family", "rank"), [("H", 3), ("E", 5), ("B", 1), ("A", 0)])
def test_invalid_type(family: str, rank: int):
    with pytest.raises(ValueError, match="family|rank"):
        SimpleType(family, rank)


def test_parse_semisimple():
    diagram = DynkinDiagram.parse("A2+B3")
    assert diagram.rank == 5
    assert diagram.offsets == (0, 2, 5)
    assert list(diagram.iter_components()) == [
        (SimpleType("A", 2), (1, 2)),
        (SimpleType("B", 3), (3, 4, 5)),
    ]
    assert str(diagram) == "A2+B3"


def test_cartan_block_diagonal():
    diagram, cartan = build("A1+A1")
    assert cartan.entries == ((2, 0), (0, 2))
    assert diagram.graph.number_of_edges() == 0


def test_cartan_double_bond_row_convention():
    cartan = DynkinDiagram.parse("C2").cartan
    assert cartan[1, 1] == 2
    assert {cartan[1, 2], cartan[2, 1]} == {-1, -2}


def test_cartan_g2_triple_bond():
    cartan = DynkinDiagram.parse("G2").cartan
    assert cartan[1, 2] * cartan[2, 1] == 3


def test_path_and_distance():
    diagram = DynkinDiagram.parse("E6")
    assert diagram.path(1, 6) == (1, 3, 4, 5, 6)
    assert diagram.path(2, 1) == (2, 4, 3, 1)
    assert diagram.distance(2, 6) == 3


def test_path_between_components():
    diagram = DynkinDiagram.parse("A1+A1")
    with pytest.raises(ValueError, match="No path"):
        diagram.path(1, 2)


def test_one_chain_type_a():
    cartan = DynkinDiagram.parse("A4").cartan
    assert is_one_chain(cartan, (1, 2, 3, 4))
    assert is_one_chain(cartan, (3,))
    assert not is_one_chain(cartan, (1, 3))
    assert not is_one_chain(cartan, ())


def test_c_type_path_needs_final_double_bond():
    cartan = DynkinDiagram.parse("C3").cartan
    assert is_c_type_path(cartan, (1, 2, 3))
    assert is_c_type_path(cartan, (2, 3))
    assert not is_c_type_path(cartan, (3, 2))
    assert not is_c_type_path(cartan, (1, 2))
    assert not is_c_type_path(cartan, (3,))


def test_subdiagram_e6_minus_1():
    sub = subdiagram(DynkinDiagram.parse("E6"), [1])
    assert str(sub.diagram) == "D5"
    assert sorted(sub.old_of_new) == [2, 3, 4, 5, 6]
    assert sub.removed == (1,)


@pytest.mark.parametrize(("removed", "expected"), [(3, "A1+A4"), (5, "A4+A1")])
def test_subdiagram_e6_splits(removed: int, expected: str):
    sub = subdiagram(DynkinDiagram.parse("E6"), [removed])
    assert str(sub.diagram) == expected


def test_subdiagram_e7_minus_2():
    sub = subdiagram(DynkinDiagram.parse("E7"), [2])
    assert str(sub.diagram) == "A6"
    assert sub.old_of_new == (1, 3, 4, 5, 6, 7)


def test_subdiagram_keeps_cartan():
    diagram = DynkinDiagram.parse("F4")
    sub = subdiagram(diagram, [1])
    assert str(sub.diagram) == "C3"
    cartan = sub.diagram.cartan
    for i in sub.diagram.vertices:
        for j in sub.diagram.vertices:
            old_i, old_j = sub.old_of_new[i - 1], sub.old_of_new[j - 1]
            assert cartan[i, j] == diagram.cartan[old_i, old_j]


def test_subdiagram_invalid_vertex():
    with pytest.raises(ValueError, match="not all in"):
        subdiagram(DynkinDiagram.parse("A2"), [3])


def test_subdiagram_remove_everything():
    sub = subdiagram(DynkinDiagram.parse("A1"), [1])
    assert sub.diagram.rank == 0
    assert str(sub.diagram) == "empty"


@pytest.mark.parametrize(
    ("text", "orders"),
    [
        ("A3", (4,)),
        ("B4", (2,)),
        ("C3", (2,)),
        ("D4", (2, 2)),
        ("D5", (4,)),
        ("E6", (3,)),
        ("E7", (2,)),
        ("E8", ()),
        ("F4", ()),
        ("G2", ()),
    ],
)
def test_center_orders(text: str, orders: tuple[int, ...]):
    assert center(DynkinDiagram.parse(text)).orders == orders


def test_center_e6_images():
    data = center(DynkinDiagram.parse("E6"))
    assert [data.pi(i) for i in range(1, 7)] == [(1,), (0,), (2,), (0,), (1,), (2,)]


def test_center_needs_simple_diagram():
    with pytest.raises(ValueError, match="simple diagram"):
        center(DynkinDiagram.parse("A1+A1"))


def test_semisimple_center_product():
    data = semisimple_center(DynkinDiagram.parse("A2+A1"))
    assert data.orders == (3, 2)
    assert data.pi(1) == (1, 0)
    assert data.pi(3) == (0, 1)
    assert data.size == 6


def test_center_check_rejects_wrong_images():
    data = CenterData((2,), ((1,), (0,)))
    with pytest.raises(InconsistencyError, match="alpha"):
        data.check(DynkinDiagram.parse("A2").cartan)


def test_generated_subgroup():
    data = center(DynkinDiagram.parse("A3"))
    assert data.generated([2]) == {(0,), (2,)}
    assert data.generates([1])
    assert not data.generates([2])


@pytest.mark.parametrize("text", ["A5", "B4", "C4", "D5", "E6", "F4", "G2"])
def test_one_chains_closed_under_prefix_and_suffix(text: str):
    from udbound.testing import one_chains

    diagram = DynkinDiagram.parse(text)
    for chain in one_chains(diagram):
        for k in range(1, len(chain) + 1):
            assert is_one_chain(diagram.cartan, chain[:k])
            assert is_one_chain(diagram.cartan, chain[-k:])


@pytest.mark.parametrize("text", ["A3", "E7", "A1+B2"])
def test_subdiagram_remove_nothing(text: str):
    diagram = DynkinDiagram.parse(text)
    sub = subdiagram(diagram, ())
    assert sub.diagram == diagram
    assert sub.old_of_new == tuple(diagram.vertices)
    assert sub.removed == ()
