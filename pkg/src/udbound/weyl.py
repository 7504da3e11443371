"""Weyl group elements as integer matrices on the weight basis.

The group is enumerated breadth-first by right multiplication with the
simple reflections, so the word stored with an element is reduced and its
length is the distance from the identity.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from .errors import ResourceLimitError

if TYPE_CHECKING:
    from .demazure import OperatorContext
    from .root_system import DynkinDiagram, SimpleType

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 2_000_000

_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51_840,
    ("E", 7): 2_903_040,
    ("E", 8): 696_729_600,
    ("F", 4): 1_152,
    ("G", 2): 12,
}


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element with one reduced word.

    Column `j` of `matrix` holds the coordinates of the image of `x_j`.
    Elements compare and hash by their matrix only.
    """

    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @classmethod
    def from_array(cls, array: np.ndarray, word: tuple[int, ...]) -> WeylElement:
        return cls(tuple(tuple(int(x) for x in row) for row in array), word)


def reflection_matrix(ctx: OperatorContext, i: int) -> np.ndarray:
    """Return the matrix of `s_i`: the identity with column `i` set to `y_i`."""
    ctx.check_index(i)
    matrix = np.eye(ctx.n, dtype=np.int64)
    column = -ctx.cartan.array[i - 1].copy()
    column[i - 1] = -1
    matrix[:, i - 1] = column
    return matrix


def _type_order(stype: SimpleType) -> int:
    n = stype.rank
    match stype.family:
        case "A":
            return math.factorial(n + 1)
        case "B" | "C":
            return 2**n * math.factorial(n)
        case "D":
            return 2 ** (n - 1) * math.factorial(n)
        case _:
            return _EXCEPTIONAL_ORDERS[stype.family, n]


def group_order(diagram: DynkinDiagram) -> int:
    """Return the classical order of the Weyl group of `diagram`."""
    return math.prod(_type_order(c) for c in diagram.components)


def enumerate_elements(
    ctx: OperatorContext,
    max_length: int | None = None,
    cap: int = DEFAULT_GROUP_CAP,
) -> list[WeylElement]:
    """Enumerate Weyl group elements in order of length.

    Args:
        ctx (OperatorContext): The operator context of the root system.
        max_length (int | None): Stop after this length. None enumerates the
            whole group.
        cap (int): The maximal number of elements to hold.

    Returns:
        list[WeylElement]: The elements sorted by length, identity first.

    Raises:
        ResourceLimitError: If more than `cap` elements would be produced.

    """
    gens = [reflection_matrix(ctx, i) for i in range(1, ctx.n + 1)]
    identity = WeylElement.from_array(np.eye(ctx.n, dtype=np.int64), ())

    seen = {identity.array.tobytes()}
    elements = [identity]
    frontier = [identity]
    length = 0

    while frontier and (max_length is None or length < max_length):
        level = []
        for w in frontier:
            for i, s in enumerate(gens, start=1):
                m = w.array @ s
                key = m.tobytes()
                if key in seen:
                    continue

                seen.add(key)
                level.append(WeylElement.from_array(m, (*w.word, i)))

        size = len(elements) + len(level)
        if size > cap:
            raise ResourceLimitError("Weyl group enumeration", cap, size)

        length += 1
        logger.debug("Length %d: %d elements", length, len(level))
        elements.extend(level)
        frontier = level

    return elements


def elements_of_length(
    ctx: OperatorContext,
    d: int,
    cap: int = DEFAULT_GROUP_CAP,
) -> list[WeylElement]:
    """Return all elements of length exactly `d`."""
    if d < 0:
        msg = f"Length must be non-negative, got {d}"
        raise ValueError(msg)

    return [w for w in enumerate_elements(ctx, d, cap) if w.length == d]


def group_by_length(elements: list[WeylElement]) -> dict[int, list[WeylElement]]:
    levels: dict[int, list[WeylElement]] = {}
    for w in elements:
        levels.setdefault(w.length, []).append(w)

    return levels
