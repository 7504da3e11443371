"""Dynkin diagrams, Cartan matrices and center data.

Vertices follow Bourbaki's numbering and are global 1-based indices,
concatenated over the components of a semisimple diagram. Cartan matrices
use the row convention: row i expands the simple root alpha_i in the
fundamental weights, so that `c[i, j]` is the pairing of alpha_i with the
j-th simple coroot.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cache, cached_property
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_edge_match

from .errors import InconsistencyError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)

FAMILIES = "ABCDEFG"

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
_EXCEPTIONAL_ROOTS = {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24}


@dataclass(frozen=True, order=True)
class SimpleType:
    """A simple root system type such as `E8` or `C3`.

    Raises:
        ValueError: If the family is unknown or the rank is not allowed for
            the family.

    """

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            msg = f"Unknown family {self.family!r}, expected one of {FAMILIES}"
            raise ValueError(msg)

        if self.family in _FIXED_RANKS:
            ok = self.rank in _FIXED_RANKS[self.family]
        else:
            ok = self.rank >= _MIN_RANK[self.family]

        if not ok:
            msg = f"Invalid rank {self.rank} for type {self.family}"
            raise ValueError(msg)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> SimpleType:
        """Parse a type string such as `"D5"`.

        Raises:
            ValueError: If the text is not a letter followed by a rank.

        """
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():  # noqa: PLR2004
            msg = f"Invalid type string {text!r}"
            raise ValueError(msg)

        return cls(text[0].upper(), int(text[1:]))

    @property
    def positive_root_count(self) -> int:
        n = self.rank
        match self.family:
            case "A":
                return n * (n + 1) // 2
            case "B" | "C":
                return n * n
            case "D":
                return n * (n - 1)
            case "G":
                return 6
            case _:
                return _EXCEPTIONAL_ROOTS[self.family, n]

    def cartan_rows(self) -> tuple[tuple[int, ...], ...]:
        """Return the Bourbaki Cartan matrix in the row convention."""
        return _cartan_rows(self)


@cache
def _cartan_rows(stype: SimpleType) -> tuple[tuple[int, ...], ...]:
    n = stype.rank
    c = 2 * np.eye(n, dtype=np.int64)

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i - 1, j - 1] = cij
        c[j - 1, i - 1] = cji

    match stype.family:
        case "A":
            for i in range(1, n):
                bond(i, i + 1)
        case "B":
            for i in range(1, n - 1):
                bond(i, i + 1)
            bond(n - 1, n, -2, -1)
        case "C":
            for i in range(1, n - 1):
                bond(i, i + 1)
            bond(n - 1, n, -1, -2)
        case "D":
            for i in range(1, n - 1):
                bond(i, i + 1)
            bond(n - 2, n)
        case "E":
            bond(1, 3)
            bond(2, 4)
            for i in range(3, n):
                bond(i, i + 1)
        case "F":
            bond(1, 2)
            bond(2, 3, -2, -1)
            bond(3, 4)
        case "G":
            bond(1, 2, -1, -3)

    return tuple(tuple(int(x) for x in row) for row in c)


@dataclass(frozen=True)
class CartanMatrix:
    """Integer Cartan matrix with 1-based entry access `c[i, j]`."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        self.validate()

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i - 1][j - 1]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i - 1]

    @cached_property
    def array(self) -> np.ndarray:
        array = np.array(self.entries, dtype=np.int64).reshape(self.n, self.n)
        array.flags.writeable = False
        return array

    def validate(self) -> None:
        """Check the defining properties of a Cartan matrix.

        Raises:
            ValueError: If the matrix is not square, a diagonal entry is not 2,
                an off-diagonal entry is positive, zero patterns are not
                symmetric, or a bond product is larger than 3.

        """
        n = self.n
        if any(len(row) != n for row in self.entries):
            msg = "Cartan matrix must be square"
            raise ValueError(msg)

        for i, j in itertools.product(range(n), repeat=2):
            cij, cji = self.entries[i][j], self.entries[j][i]
            if i == j:
                if cij != 2:  # noqa: PLR2004
                    msg = f"Diagonal entry c[{i + 1},{i + 1}] = {cij} is not 2"
                    raise ValueError(msg)
                continue

            if cij > 0 or (cij == 0) != (cji == 0) or cij * cji > 3:  # noqa: PLR2004
                msg = f"Invalid off-diagonal pair c[{i + 1},{j + 1}] = {cij}"
                raise ValueError(msg)


@dataclass(frozen=True)
class DynkinDiagram:
    """A semisimple Dynkin diagram as an ordered tuple of simple components."""

    components: tuple[SimpleType, ...]

    @classmethod
    def parse(cls, text: str) -> DynkinDiagram:
        """Parse `"A2+A2"` style strings; an empty string gives the empty diagram."""
        parts = [p for p in text.split("+") if p.strip()]
        return cls(tuple(SimpleType.parse(p) for p in parts))

    def __str__(self) -> str:
        return "+".join(str(c) for c in self.components) or "empty"

    @cached_property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((c.rank for c in self.components), initial=0))

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    @property
    def positive_root_count(self) -> int:
        return sum(c.positive_root_count for c in self.components)

    def component_vertices(self, index: int) -> tuple[int, ...]:
        """Return the global vertices of the `index`-th component."""
        start = self.offsets[index]
        return tuple(range(start + 1, start + self.components[index].rank + 1))

    def iter_components(self) -> Iterator[tuple[SimpleType, tuple[int, ...]]]:
        for index, stype in enumerate(self.components):
            yield stype, self.component_vertices(index)

    @cached_property
    def cartan(self) -> CartanMatrix:
        n = self.rank
        rows = [[0] * n for _ in range(n)]
        for k, stype in enumerate(self.components):
            offset = self.offsets[k]
            for i, row in enumerate(stype.cartan_rows()):
                rows[offset + i][offset : offset + len(row)] = row

        return CartanMatrix(tuple(tuple(row) for row in rows))

    @cached_property
    def graph(self) -> nx.Graph:
        """Undirected graph with a `bond` attribute equal to `c[i,j]*c[j,i]`."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        cartan = self.cartan
        for i, j in itertools.combinations(self.vertices, 2):
            if cartan[i, j]:
                graph.add_edge(i, j, bond=cartan[i, j] * cartan[j, i])

        return graph

    @cached_property
    def _paths(self) -> dict[int, dict[int, list[int]]]:
        return dict(nx.all_pairs_shortest_path(self.graph))

    def path(self, u: int, v: int) -> tuple[int, ...]:
        """Return the unique tree path from `u` to `v`, both included.

        Raises:
            ValueError: If `u` and `v` lie in different components.

        """
        try:
            return tuple(self._paths[u][v])
        except KeyError:
            msg = f"No path between vertices {u} and {v}"
            raise ValueError(msg) from None

    def distance(self, u: int, v: int) -> int:
        return len(self.path(u, v)) - 1


def build(spec: Iterable[SimpleType] | str) -> tuple[DynkinDiagram, CartanMatrix]:
    """Build a diagram and its block-diagonal Cartan matrix.

    Args:
        spec (Iterable[SimpleType] | str): The simple components, or a string
            such as `"A2+A2"`.

    Returns:
        tuple[DynkinDiagram, CartanMatrix]: The diagram and its Cartan matrix.

    Raises:
        ValueError: If a family or rank is invalid.

    """
    if isinstance(spec, str):
        diagram = DynkinDiagram.parse(spec)
    else:
        diagram = DynkinDiagram(tuple(spec))

    return diagram, diagram.cartan


def positive_root_count(diagram: DynkinDiagram) -> int:
    return diagram.positive_root_count


def is_one_chain(cartan: CartanMatrix, seq: Sequence[int]) -> bool:
    """Return whether `seq` is a 1-chain.

    A sequence of distinct vertices is a 1-chain if it has length one or
    `c[seq[t+1], seq[t]] == -1` for every consecutive pair.
    """
    if not seq or len(set(seq)) != len(seq):
        return False

    return all(cartan[b, a] == -1 for a, b in itertools.pairwise(seq))


def is_c_type_path(cartan: CartanMatrix, seq: Sequence[int]) -> bool:
    """Return whether `seq` runs along single bonds into a final double bond.

    The last edge `(v_{m-1}, v_m)` must satisfy `c[v_m, v_{m-1}] == -2` and
    `c[v_{m-1}, v_m] == -1`.
    """
    if len(seq) < 2 or len(set(seq)) != len(seq):  # noqa: PLR2004
        return False

    *head, last = itertools.pairwise(seq)
    if any(cartan[a, b] != -1 or cartan[b, a] != -1 for a, b in head):
        return False

    a, b = last
    return cartan[b, a] == -2 and cartan[a, b] == -1  # noqa: PLR2004


@dataclass(frozen=True)
class Subdiagram:
    """An induced subdiagram with its vertices renumbered.

    Attributes:
        diagram (DynkinDiagram): The recognized subdiagram in Bourbaki
            numbering.
        old_of_new (tuple[int, ...]): `old_of_new[k - 1]` is the vertex of the
            original diagram that became vertex `k`.
        removed (tuple[int, ...]): The removed vertices, sorted.

    """

    diagram: DynkinDiagram
    old_of_new: tuple[int, ...]
    removed: tuple[int, ...]

    def to_old(self, vertices: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.old_of_new[v - 1] for v in vertices)

    @cached_property
    def new_of_old(self) -> dict[int, int]:
        return {old: new for new, old in enumerate(self.old_of_new, start=1)}


def _digraph(cartan: CartanMatrix, vertices: Iterable[int]) -> nx.DiGraph:
    vertices = list(vertices)
    graph = nx.DiGraph()
    graph.add_nodes_from(vertices)
    for i, j in itertools.permutations(vertices, 2):
        if cartan[i, j]:
            graph.add_edge(i, j, c=cartan[i, j])

    return graph


@cache
def _template(stype: SimpleType) -> nx.DiGraph:
    return _digraph(DynkinDiagram((stype,)).cartan, range(1, stype.rank + 1))


def _candidates(rank: int) -> Iterator[SimpleType]:
    for family in FAMILIES:
        try:
            yield SimpleType(family, rank)
        except ValueError:
            continue


def _recognize(
    cartan: CartanMatrix,
    vertices: list[int],
) -> tuple[SimpleType, tuple[int, ...]]:
    graph = _digraph(cartan, vertices)
    match = categorical_edge_match("c", None)

    for stype in _candidates(len(vertices)):
        matcher = DiGraphMatcher(_template(stype), graph, edge_match=match)
        mappings = [
            tuple(m[k] for k in range(1, stype.rank + 1))
            for m in matcher.isomorphisms_iter()
        ]
        if mappings:
            return stype, min(mappings)

    msg = f"Induced diagram on {vertices} is not of finite type"
    raise InconsistencyError(msg)


def subdiagram(diagram: DynkinDiagram, removed: Iterable[int]) -> Subdiagram:
    """Return the induced diagram on the vertices not in `removed`.

    Components are recognized up to isomorphism of the weighted Cartan graph
    and renumbered in Bourbaki order. They are listed by their smallest
    original vertex; for several admissible numberings the one sending
    vertex 1 to the smallest original index (lexicographically) wins.

    Args:
        diagram (DynkinDiagram): The original diagram.
        removed (Iterable[int]): Vertices to delete.

    Returns:
        Subdiagram: The recognized subdiagram with its index map.

    Raises:
        ValueError: If a removed vertex is not a vertex of `diagram`.

    """
    removed = tuple(sorted(set(removed)))
    if any(v not in diagram.vertices for v in removed):
        msg = f"Removed vertices {removed} are not all in {diagram}"
        raise ValueError(msg)

    remaining = [v for v in diagram.vertices if v not in removed]
    induced = diagram.graph.subgraph(remaining)
    parts = sorted((sorted(c) for c in nx.connected_components(induced)), key=min)

    components: list[SimpleType] = []
    old_of_new: list[int] = []
    for part in parts:
        stype, mapping = _recognize(diagram.cartan, part)
        components.append(stype)
        old_of_new.extend(mapping)

    sub = Subdiagram(DynkinDiagram(tuple(components)), tuple(old_of_new), removed)
    logger.debug("Removing %s from %s leaves %s", removed, diagram, sub.diagram)
    return sub


Element = tuple[int, ...]


@dataclass(frozen=True)
class CenterData:
    """A finite abelian group with the images of the fundamental weights.

    Attributes:
        orders (tuple[int, ...]): Orders of the cyclic factors.
        images (tuple[Element, ...]): `images[i - 1]` is the image of `x_i`.

    """

    orders: tuple[int, ...]
    images: tuple[Element, ...]

    def __post_init__(self) -> None:
        if any(len(image) != len(self.orders) for image in self.images):
            msg = "Every image must have one residue per cyclic factor"
            raise ValueError(msg)

        reduced = tuple(self.reduce(image) for image in self.images)
        object.__setattr__(self, "images", reduced)

    @classmethod
    def trivial(cls, n: int) -> CenterData:
        return cls((), ((),) * n)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def reduce(self, element: Iterable[int]) -> Element:
        return tuple(a % o for a, o in zip(element, self.orders, strict=True))

    def add(self, a: Element, b: Element) -> Element:
        return self.reduce(x + y for x, y in zip(a, b, strict=True))

    def pi(self, i: int) -> Element:
        return self.images[i - 1]

    def combine(self, coefficients: Iterable[int]) -> Element:
        """Return the image of the weight with the given coordinates."""
        total = [0] * len(self.orders)
        for c, image in zip(coefficients, self.images, strict=True):
            for k, a in enumerate(image):
                total[k] += c * a

        return self.reduce(total)

    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(o) for o in self.orders)))

    def generated(self, vertices: Iterable[int]) -> set[Element]:
        """Return the subgroup generated by the images of `vertices`."""
        gens = [self.pi(v) for v in vertices]
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new

        return seen

    def generates(self, vertices: Iterable[int]) -> bool:
        return len(self.generated(vertices)) == self.size

    def check(self, cartan: CartanMatrix) -> None:
        """Check that every simple root maps to zero and the images generate.

        Raises:
            InconsistencyError: If a simple root has a nonzero image or the
                images of all weights do not generate the group.

        """
        for i in range(1, cartan.n + 1):
            if self.combine(cartan.row(i)) != self.zero:
                msg = f"Simple root alpha_{i} has a nonzero image"
                raise InconsistencyError(msg)

        if not self.generates(range(1, cartan.n + 1)):
            msg = "Weight images do not generate the group"
            raise InconsistencyError(msg)


def _center_of(stype: SimpleType) -> CenterData:
    n = stype.rank
    vertices = range(1, n + 1)
    match stype.family:
        case "A":
            return CenterData((n + 1,), tuple((i,) for i in vertices))
        case "B":
            return CenterData((2,), tuple((int(i == n),) for i in vertices))
        case "C":
            return CenterData((2,), tuple((i,) for i in vertices))
        case "D" if n % 2 == 0:
            images = [(i, i) for i in range(1, n - 1)] + [(1, 0), (0, 1)]
            return CenterData((2, 2), tuple(images))
        case "D":
            images = [(2 * i,) for i in range(1, n - 1)] + [(1,), (3,)]
            return CenterData((4,), tuple(images))
        case "E" if n == 6:  # noqa: PLR2004
            return CenterData((3,), ((1,), (0,), (2,), (0,), (1,), (2,)))
        case "E" if n == 7:  # noqa: PLR2004
            return CenterData((2,), tuple((int(i in (2, 5, 7)),) for i in vertices))
        case _:
            return CenterData.trivial(n)


def center(diagram: DynkinDiagram) -> CenterData:
    """Return the character group of the center of a simple diagram.

    Raises:
        ValueError: If the diagram does not have exactly one component.

    """
    if len(diagram.components) != 1:
        msg = f"center() needs a simple diagram, got {diagram}"
        raise ValueError(msg)

    data = _center_of(diagram.components[0])
    data.check(diagram.cartan)
    return data


def semisimple_center(diagram: DynkinDiagram) -> CenterData:
    """Return the direct product of the component centers."""
    parts = [_center_of(stype) for stype in diagram.components]
    orders = tuple(o for part in parts for o in part.orders)

    images: list[Element] = []
    before = 0
    for part in parts:
        after = len(orders) - before - len(part.orders)
        images.extend((0,) * before + image + (0,) * after for image in part.images)
        before += len(part.orders)

    data = CenterData(orders, tuple(images))
    data.check(diagram.cartan)
    return data
