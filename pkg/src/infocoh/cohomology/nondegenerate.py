"""Exhaustive search for nondegeneracy witnesses of a product ``XY``.

A witness is an enumeration of ``E_X``, an enumeration of ``E_Y`` and a
North-East lattice path through 2x2 cells. Cell ``(a, b)`` (1-based) covers
``{x_a, x_{a+1}} x {y_b, y_{b+1}}``, so the path runs from ``(1, 1)`` to
``(k-1, l-1)``. Every visited cell must hold at least three joint outcomes,
and every step must admit lifts:

* a step ``(1, 0)`` at ``(a, b)`` needs one of the slot sets
  ``{(x_a, y_{b+1})} + {(x_i, y_b) : i > a}`` or
  ``{(x_a, y_b)} + {(x_i, y_{b+1}) : i > a}`` to lie inside ``E_XY``;
* a step ``(0, 1)`` is the mirror image with the roles of X and Y swapped.

With a full slot set every counting function on ``x_a..x_k`` lifts to one
supported there, and a missing slot leaves some counting function without
such a lift.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ..errors import MissingProduct, NoProduct
from ..structure import InformationStructure


@dataclass(frozen=True)
class NondegWitness:
    x_order: tuple[str, ...]
    y_order: tuple[str, ...]
    path: tuple[tuple[int, int], ...]

    def cells(self):
        """The joint outcomes ``(x, y)`` covered by each path cell."""
        out = []
        for a, b in self.path:
            out.append(
                [(self.x_order[i], self.y_order[j]) for i in (a - 1, a) for j in (b - 1, b)]
            )
        return out

    def to_json(self) -> dict:
        return {
            "x_order": list(self.x_order),
            "y_order": list(self.y_order),
            "path": [list(p) for p in self.path],
        }


def workers() -> int:
    """Degree of parallelism: ``INFOCOH_WORKERS`` or the number of cores."""
    raw = os.environ.get("INFOCOH_WORKERS")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def _paths(occupied, k, l, lift_x, lift_y):
    """NE paths over cells, lexicographic (north before east), as 0-based cells."""
    goal = (k - 2, l - 2)

    def full(a, b):
        return sum((i, j) in occupied for i in (a, a + 1) for j in (b, b + 1)) >= 3

    def walk(path):
        a, b = path[-1]
        if (a, b) == goal:
            yield tuple(path)
            return
        if b < goal[1] and full(a, b + 1) and lift_y(a, b):
            path.append((a, b + 1))
            yield from walk(path)
            path.pop()
        if a < goal[0] and full(a + 1, b) and lift_x(a, b):
            path.append((a + 1, b))
            yield from walk(path)
            path.pop()

    if k < 2 or l < 2 or not full(0, 0):
        return
    yield from walk([(0, 0)])


def _search_orders(points, k, l, px_list):
    """First witness over the given X orders (every Y order), as index data."""
    for px in px_list:
        rx = {v: i for i, v in enumerate(px)}
        for py in itertools.permutations(range(l)):
            ry = {v: j for j, v in enumerate(py)}
            occupied = {(rx[i], ry[j]) for i, j in points}

            def lift_x(a, b, occupied=occupied):
                s1 = [(a, b + 1)] + [(i, b) for i in range(a + 1, k)]
                s2 = [(a, b)] + [(i, b + 1) for i in range(a + 1, k)]
                return all(p in occupied for p in s1) or all(p in occupied for p in s2)

            def lift_y(a, b, occupied=occupied):
                s1 = [(a + 1, b)] + [(a, j) for j in range(b + 1, l)]
                s2 = [(a, b)] + [(a + 1, j) for j in range(b + 1, l)]
                return all(p in occupied for p in s1) or all(p in occupied for p in s2)

            for path in _paths(occupied, k, l, lift_x, lift_y):
                return px, py, path
    return None


def search_witness(x_labels, y_labels, joint_pairs, parallel: int | None = None) -> NondegWitness | None:
    """Exhaustive search on raw data: ``joint_pairs`` is the image of ``E_XY`` in ``E_X x E_Y``.

    Returns the first witness in lexicographic order of (X order, Y order,
    path), or ``None`` once every combination has been tried. The result does
    not depend on ``parallel``.
    """
    x_labels, y_labels = list(x_labels), list(y_labels)
    k, l = len(x_labels), len(y_labels)
    xi = {x: i for i, x in enumerate(x_labels)}
    yi = {y: j for j, y in enumerate(y_labels)}
    points = {(xi[x], yi[y]) for x, y in joint_pairs}
    orders = list(itertools.permutations(range(k)))
    n = parallel if parallel is not None else workers()
    found = None
    if n > 1 and len(orders) >= 2 * n:
        chunks = [orders[i::n] for i in range(n)]
        # interleaved chunks keep each chunk sorted; merge by the smallest hit
        with ProcessPoolExecutor(n) as pool:
            hits = list(pool.map(_search_orders, [points] * n, [k] * n, [l] * n, chunks))
        hits = [h for h in hits if h is not None]
        found = min(hits) if hits else None
    else:
        found = _search_orders(points, k, l, orders)
    if found is None:
        return None
    px, py, path = found
    return NondegWitness(
        tuple(x_labels[i] for i in px),
        tuple(y_labels[j] for j in py),
        tuple((a + 1, b + 1) for a, b in path),
    )


def joint_image(s: InformationStructure, x: str, y: str):
    """``iota(E_XY)`` as label pairs, plus the product's id."""
    try:
        xy = s.meet(x, y)
    except NoProduct:
        raise MissingProduct(f"{x} and {y} have no product") from None
    to_x, to_y = s.index_map(xy, x), s.index_map(xy, y)
    lx, ly = s.outcomes(x), s.outcomes(y)
    return xy, [(lx[i], ly[j]) for i, j in zip(to_x, to_y)]


def nondegenerate_witness(s: InformationStructure, x: str, y: str, parallel: int | None = None) -> NondegWitness | None:
    _, pairs = joint_image(s, x, y)
    return search_witness(s.outcomes(x), s.outcomes(y), pairs, parallel)


def raw_joint_image(raw: dict, x: str, y: str):
    """Joint image read from an unvalidated structure description."""
    product = next(
        (p["result"] for p in raw.get("products", []) if {p["left"], p["right"]} == {x, y}),
        None,
    )
    if product is None:
        raise MissingProduct(f"no declared product of {x} and {y}")
    maps = {(a["source"], a["target"]): a["map"] for a in raw.get("arrows", [])}
    if (product, x) not in maps or (product, y) not in maps:
        raise MissingProduct(f"{product} lacks arrows to {x} and {y}")
    outcomes = {v["id"]: v["outcomes"] for v in raw["variables"]}
    pairs = [(maps[(product, x)][w], maps[(product, y)][w]) for w in outcomes[product]]
    return outcomes[x], outcomes[y], pairs


def nondegenerate_witness_raw(raw: dict, x: str, y: str, parallel: int | None = None) -> NondegWitness | None:
    """Same search without validating the structure axioms first."""
    lx, ly, pairs = raw_joint_image(raw, x, y)
    return search_witness(lx, ly, pairs, parallel)
