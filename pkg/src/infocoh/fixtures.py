"""Small reference structures used by the tests, the CLI demos and the scripts."""

from __future__ import annotations

import itertools
import json
from importlib import resources

from .structure import InformationStructure, parse_structure, validate


def _arrow(source, target, mapping):
    return {"source": source, "target": target, "map": dict(mapping)}


def _to_terminal(variables, terminal="1"):
    return [
        _arrow(v["id"], terminal, {o: "*" for o in v["outcomes"]})
        for v in variables
        if v["id"] != terminal
    ]


def example_raw(prefix: str = "") -> dict:
    """Two binary variables and a three-outcome meet.

    Outcome ``x_I`` of a coarse variable collects the indices in ``I``, and
    ``x_I -> x_J`` iff ``I ⊂ J``. The meet's outcomes are labelled x0, x1, x2
    so that this inclusion rule is well defined (1-based labels would leave
    x02 and x01 without a preimage rule).
    """
    p = prefix
    x1, x2, x12 = f"{p}X1", f"{p}X2", f"{p}X1X2"
    variables = [
        {"id": "1", "outcomes": ["*"]},
        {"id": x1, "outcomes": ["x1", "x02"]},
        {"id": x2, "outcomes": ["x2", "x01"]},
        {"id": x12, "outcomes": ["x0", "x1", "x2"]},
    ]
    arrows = [
        _arrow(x12, x1, {"x0": "x02", "x1": "x1", "x2": "x02"}),
        _arrow(x12, x2, {"x0": "x01", "x1": "x01", "x2": "x2"}),
    ] + _to_terminal(variables)
    return {
        "variables": variables,
        "arrows": arrows,
        "terminal": "1",
        "products": [{"left": x1, "right": x2, "result": x12}],
    }


def full_product_raw(sizes=(2, 3)) -> dict:
    """Variables X, Y with the full cartesian meet XY."""
    nx, ny = sizes
    xs = [f"a{i}" for i in range(nx)]
    ys = [f"b{j}" for j in range(ny)]
    joint = [f"{x}{y}" for x in xs for y in ys]
    variables = [
        {"id": "1", "outcomes": ["*"]},
        {"id": "X", "outcomes": xs},
        {"id": "Y", "outcomes": ys},
        {"id": "XY", "outcomes": joint},
    ]
    arrows = [
        _arrow("XY", "X", {f"{x}{y}": x for x in xs for y in ys}),
        _arrow("XY", "Y", {f"{x}{y}": y for x in xs for y in ys}),
    ] + _to_terminal(variables)
    return {
        "variables": variables,
        "arrows": arrows,
        "terminal": "1",
        "products": [{"left": "X", "right": "Y", "result": "XY"}],
    }


def cube_raw() -> dict:
    """Three binary variables with every partial product (the boolean cube)."""
    names = ("A", "B", "C")
    variables = [{"id": "1", "outcomes": ["*"]}]
    subsets = [c for r in (1, 2, 3) for c in itertools.combinations(range(3), r)]
    ident = {c: "".join(names[i] for i in c) for c in subsets}

    def labels(c):
        return ["".join(bits) for bits in itertools.product("01", repeat=len(c))]

    for c in subsets:
        variables.append({"id": ident[c], "outcomes": labels(c)})
    arrows = []
    for c in subsets:
        for d in subsets:
            if len(d) == len(c) - 1 and set(d) < set(c):
                pos = [c.index(i) for i in d]
                arrows.append(
                    _arrow(ident[c], ident[d], {w: "".join(w[k] for k in pos) for w in labels(c)})
                )
    arrows += _to_terminal(variables)
    products = []
    for c, d in itertools.combinations(subsets, 2):
        if set(c) <= set(d) or set(d) <= set(c):
            continue
        u = tuple(sorted(set(c) | set(d)))
        products.append({"left": ident[c], "right": ident[d], "result": ident[u]})
    return {"variables": variables, "arrows": arrows, "terminal": "1", "products": products}


def two_component_raw() -> dict:
    """Two copies of :func:`example_raw` glued only along the terminal."""
    a, b = example_raw("P"), example_raw("Q")
    variables = a["variables"] + [v for v in b["variables"] if v["id"] != "1"]
    return {
        "variables": variables,
        "arrows": a["arrows"] + b["arrows"],
        "terminal": "1",
        "products": a["products"] + b["products"],
    }


def degenerate_raw() -> dict:
    """A valid meet in which no 2x2 block of E_X x E_Y holds three joint outcomes."""
    variables = [
        {"id": "1", "outcomes": ["*"]},
        {"id": "X", "outcomes": ["x1", "x2", "x3"]},
        {"id": "Y", "outcomes": ["y1", "y2", "y3"]},
        {"id": "XY", "outcomes": ["x1y1", "x1y2", "x2y3", "x3y3"]},
    ]
    joint = variables[3]["outcomes"]
    arrows = [
        _arrow("XY", "X", {w: w[:2] for w in joint}),
        _arrow("XY", "Y", {w: w[2:] for w in joint}),
    ] + _to_terminal(variables)
    return {
        "variables": variables,
        "arrows": arrows,
        "terminal": "1",
        "products": [{"left": "X", "right": "Y", "result": "XY"}],
    }


def diagonal_raw() -> dict:
    """Binary X, Y whose meet only holds (x1, y1) and (x2, y2).

    Not a valid structure: both projections are bijections, which breaks
    conservativity. Kept because it is the smallest degenerate product.
    """
    variables = [
        {"id": "1", "outcomes": ["*"]},
        {"id": "X", "outcomes": ["x1", "x2"]},
        {"id": "Y", "outcomes": ["y1", "y2"]},
        {"id": "XY", "outcomes": ["x1y1", "x2y2"]},
    ]
    arrows = [
        _arrow("XY", "X", {"x1y1": "x1", "x2y2": "x2"}),
        _arrow("XY", "Y", {"x1y1": "y1", "x2y2": "y2"}),
    ] + _to_terminal(variables)
    return {
        "variables": variables,
        "arrows": arrows,
        "terminal": "1",
        "products": [{"left": "X", "right": "Y", "result": "XY"}],
    }


def terminal_only_raw() -> dict:
    return {"variables": [{"id": "1", "outcomes": ["*"]}], "arrows": [], "terminal": "1", "products": []}


BUILDERS = {
    "example": example_raw,
    "full_product": full_product_raw,
    "cube": cube_raw,
    "two_component": two_component_raw,
    "degenerate": degenerate_raw,
    "diagonal": diagonal_raw,
}

# names shipped as JSON in infocoh/data ("diagonal" does not validate)
PACKAGED = tuple(BUILDERS)


def example() -> InformationStructure:
    return validate(example_raw())


def full_product(sizes=(2, 3)) -> InformationStructure:
    return validate(full_product_raw(sizes))


def cube() -> InformationStructure:
    return validate(cube_raw())


def two_component() -> InformationStructure:
    return validate(two_component_raw())


def degenerate() -> InformationStructure:
    return validate(degenerate_raw())


def packaged(name: str) -> InformationStructure:
    """Load one of the JSON copies shipped in ``infocoh/data``."""
    text = resources.files("infocoh").joinpath("data").joinpath(f"{name}.json").read_text("utf-8")
    return validate(parse_structure(text))


def packaged_path(name: str):
    return resources.files("infocoh").joinpath("data").joinpath(f"{name}.json")


def raw_text(raw: dict) -> str:
    return json.dumps(raw, indent=2, sort_keys=True) + "\n"
