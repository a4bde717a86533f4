"""Finite information structures: a poset of variables with outcome sets.

A structure is read from a small JSON document::

    {"variables": [{"id": "X", "outcomes": ["a", "b"]}, ...],
     "arrows": [{"source": "XY", "target": "X", "map": {"ab": "a", ...}}, ...],
     "terminal": "1",
     "products": [{"left": "X", "right": "Y", "result": "XY"}]}

Identity arrows are implicit and composite arrows may be omitted; the
validator closes the order and checks that composed maps agree. Outcome
order is meaningful and preserved (counting functions are tuples aligned
with it).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from types import MappingProxyType

from .errors import (
    FormatError,
    NoProduct,
    StructureError,
    UnknownArrow,
    UnknownOutcome,
    UnknownVariable,
)

_TOP_KEYS = {"variables", "arrows", "terminal", "products"}
_VAR_KEYS = {"id", "outcomes"}
_ARROW_KEYS = {"source", "target", "map"}
_PRODUCT_KEYS = {"left", "right", "result"}

# violation kinds
MISSING_TERMINAL = "MissingTerminal"
NON_SURJECTIVE = "NonSurjectiveFiberMap"
PRODUCT_NOT_INJECTIVE = "ProductNotInjective"
POSET_VIOLATION = "PosetViolation"
MISSING_PRODUCT = "MissingProduct"
CONSERVATIVITY = "ConservativityViolation"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str


class InformationStructure:
    """A validated finite information structure. Immutable.

    Build instances with :func:`validate`; the constructor trusts its input.
    """

    def __init__(self, outcomes, declared_arrows, terminal, products, maps):
        self._outcomes = MappingProxyType(dict(outcomes))
        self._declared = MappingProxyType(dict(declared_arrows))
        self._terminal = terminal
        self._products = MappingProxyType(dict(products))
        self._maps = MappingProxyType(dict(maps))
        self._index = {
            x: {label: i for i, label in enumerate(labels)} for x, labels in outcomes.items()
        }
        self._meets = {}

    # -- basic queries -------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(self._outcomes)

    @property
    def terminal(self) -> str:
        return self._terminal

    @property
    def non_terminal(self) -> tuple[str, ...]:
        return tuple(x for x in self._outcomes if x != self._terminal)

    def outcomes(self, x: str) -> tuple[str, ...]:
        try:
            return self._outcomes[x]
        except KeyError:
            raise UnknownVariable(x) from None

    def size(self, x: str) -> int:
        return len(self.outcomes(x))

    def label_index(self, x: str, label: str) -> int:
        try:
            return self._index[x][label]
        except KeyError:
            if x not in self._index:
                raise UnknownVariable(x) from None
            raise UnknownOutcome(f"{label!r} is not an outcome of {x}") from None

    def refines(self, x: str, y: str) -> bool:
        """True when there is an arrow ``x -> y`` (identity included)."""
        return (x, y) in self._maps

    def index_map(self, x: str, y: str) -> tuple[int, ...]:
        """Outcome map of the arrow ``x -> y`` as source index -> target index."""
        try:
            return self._maps[(x, y)]
        except KeyError:
            raise UnknownArrow(f"no arrow {x} -> {y}") from None

    def coarser(self, x: str) -> tuple[str, ...]:
        """The monoid S_X: every variable that ``x`` refines."""
        return tuple(y for y in self._outcomes if (x, y) in self._maps)

    def arrows(self) -> tuple[tuple[str, str], ...]:
        """Every non-identity arrow of the closed order."""
        return tuple(k for k in self._maps if k[0] != k[1])

    # -- meets ---------------------------------------------------------

    def meet(self, x: str, y: str) -> str:
        """The product ``x ∧ y``; commutative and idempotent, terminal is a unit."""
        key = (x, y)
        if key in self._meets:
            return self._meets[key]
        self.outcomes(x), self.outcomes(y)
        if self.refines(x, y):
            z = x
        elif self.refines(y, x):
            z = y
        else:
            z = self._products.get(frozenset((x, y)))
            if z is None:
                raise NoProduct(f"{x} and {y} have no product")
        self._meets[key] = z
        return z

    def products(self) -> list[tuple[str, str, str]]:
        """Declared products as sorted ``(left, right, result)`` triples."""
        return sorted((*sorted(pair), z) for pair, z in self._products.items())

    def common_meet(self, xs) -> str:
        """Meet of a sequence of variables; the terminal for the empty one."""
        z = self._terminal
        for x in xs:
            z = self.meet(z, x)
        return z

    def try_common_meet(self, xs) -> str | None:
        try:
            return self.common_meet(xs)
        except NoProduct:
            return None

    def fiber(self, arrow: tuple[str, str], outcome: str) -> frozenset[str]:
        """Source outcomes sent to ``outcome`` by the arrow ``source -> target``."""
        source, target = arrow
        m = self.index_map(source, target)
        j = self.label_index(target, outcome)
        labels = self.outcomes(source)
        return frozenset(labels[i] for i, t in enumerate(m) if t == j)

    def components(self) -> list[tuple[str, ...]]:
        """Connected components of the order with the terminal removed."""
        nodes = self.non_terminal
        parent = {x: x for x in nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.arrows():
            if a in parent and b in parent:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
        groups: dict[str, list[str]] = {}
        for x in nodes:
            groups.setdefault(find(x), []).append(x)
        comps = [tuple(sorted(g)) for g in groups.values()]
        return sorted(comps)

    # -- serialization -------------------------------------------------

    def to_raw(self) -> dict:
        variables = [
            {"id": x, "outcomes": list(self._outcomes[x])} for x in sorted(self._outcomes)
        ]
        arrows = [
            {"source": s, "target": t, "map": dict(sorted(m.items()))}
            for (s, t), m in sorted(self._declared.items())
        ]
        products = []
        for pair, z in self._products.items():
            left, right = sorted(pair)
            products.append({"left": left, "right": right, "result": z})
        products.sort(key=lambda p: (p["left"], p["right"]))
        return {
            "arrows": arrows,
            "products": products,
            "terminal": self._terminal,
            "variables": variables,
        }

    def __eq__(self, other):
        if not isinstance(other, InformationStructure):
            return NotImplemented
        return self.to_raw() == other.to_raw()

    def __hash__(self):
        return hash(dump_structure(self))

    def __repr__(self):
        return f"InformationStructure(variables={list(self.variables)})"


# -- parsing -----------------------------------------------------------


def _require(cond, message):
    if not cond:
        raise FormatError(message)


def parse_structure(text_or_obj) -> dict:
    """Check the document shape and return the raw description.

    Raises :class:`FormatError` for unknown keys or wrongly typed fields.
    Semantic checks are left to :func:`validate`.
    """
    if isinstance(text_or_obj, (str, bytes)):
        try:
            obj = json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from None
    else:
        obj = text_or_obj
    _require(isinstance(obj, dict), "structure must be a JSON object")
    unknown = set(obj) - _TOP_KEYS
    _require(not unknown, f"unknown keys: {sorted(unknown)}")
    _require("variables" in obj and "terminal" in obj, "variables and terminal are required")
    _require(isinstance(obj["variables"], list), "variables must be a list")
    for v in obj["variables"]:
        _require(isinstance(v, dict) and set(v) == _VAR_KEYS, f"bad variable entry {v!r}")
        _require(isinstance(v["id"], str), "variable ids are strings")
        _require(
            isinstance(v["outcomes"], list) and all(isinstance(o, str) for o in v["outcomes"]),
            f"outcomes of {v['id']} must be a list of strings",
        )
    _require(isinstance(obj["terminal"], str), "terminal must be a string")
    arrows = obj.get("arrows", [])
    _require(isinstance(arrows, list), "arrows must be a list")
    for a in arrows:
        _require(isinstance(a, dict) and set(a) == _ARROW_KEYS, f"bad arrow entry {a!r}")
        _require(isinstance(a["source"], str) and isinstance(a["target"], str), "arrow ends are ids")
        _require(
            isinstance(a["map"], dict) and all(isinstance(t, str) for t in a["map"].values()),
            "arrow map must be an object of strings",
        )
    products = obj.get("products", [])
    _require(isinstance(products, list), "products must be a list")
    for p in products:
        _require(isinstance(p, dict) and set(p) == _PRODUCT_KEYS, f"bad product entry {p!r}")
        _require(all(isinstance(p[k], str) for k in _PRODUCT_KEYS), "product fields are ids")
    return {
        "variables": obj["variables"],
        "arrows": arrows,
        "terminal": obj["terminal"],
        "products": products,
    }


def load_structure(path) -> InformationStructure:
    with open(path, encoding="utf-8") as fh:
        return validate(parse_structure(fh.read()))


def dump_structure(s: InformationStructure) -> str:
    """Canonical JSON text: sorted keys and ids, two-space indent, final newline."""
    return json.dumps(s.to_raw(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- validation --------------------------------------------------------


def _close(maps, problems):
    """Transitive closure of the declared arrows, checking composites agree."""
    maps = dict(maps)
    changed = True
    while changed:
        changed = False
        for (a, b), m_ab in list(maps.items()):
            for (b2, c), m_bc in list(maps.items()):
                if b2 != b or a == b or b == c:
                    continue
                if a == c:
                    problems.append(
                        Violation(POSET_VIOLATION, f"{a} -> {b} -> {a} breaks antisymmetry")
                    )
                    continue
                composite = tuple(m_bc[i] for i in m_ab)
                if (a, c) in maps:
                    if maps[(a, c)] != composite:
                        problems.append(
                            Violation(
                                POSET_VIOLATION,
                                f"map {a} -> {c} disagrees with the composite through {b}",
                            )
                        )
                else:
                    maps[(a, c)] = composite
                    changed = True
    return maps


def validate(raw) -> InformationStructure:
    """Check every axiom and return the structure.

    Raises :class:`StructureError` listing all violations, or
    :class:`FormatError` when ``raw`` is not a well-formed description.
    """
    if isinstance(raw, InformationStructure):
        raw = raw.to_raw()
    raw = parse_structure(raw)
    problems: list[Violation] = []

    outcomes: dict[str, tuple[str, ...]] = {}
    for v in raw["variables"]:
        x = v["id"]
        labels = tuple(v["outcomes"])
        if x in outcomes:
            problems.append(Violation(POSET_VIOLATION, f"variable {x} declared twice"))
            continue
        if not labels:
            problems.append(Violation(POSET_VIOLATION, f"{x} has no outcomes"))
        if len(set(labels)) != len(labels):
            problems.append(Violation(POSET_VIOLATION, f"{x} has repeated outcome labels"))
        outcomes[x] = labels

    terminal = raw["terminal"]
    if terminal not in outcomes:
        problems.append(Violation(MISSING_TERMINAL, f"terminal {terminal} is not a variable"))
    elif len(outcomes[terminal]) != 1:
        problems.append(
            Violation(MISSING_TERMINAL, f"terminal {terminal} must have exactly one outcome")
        )

    declared: dict[tuple[str, str], dict[str, str]] = {}
    maps: dict[tuple[str, str], tuple[int, ...]] = {}
    for a in raw["arrows"]:
        s, t, m = a["source"], a["target"], a["map"]
        if s not in outcomes or t not in outcomes:
            problems.append(Violation(POSET_VIOLATION, f"arrow {s} -> {t} has an unknown end"))
            continue
        if s == t:
            problems.append(Violation(POSET_VIOLATION, f"explicit arrow {s} -> {s}"))
            continue
        if (s, t) in declared:
            problems.append(Violation(POSET_VIOLATION, f"two arrows {s} -> {t}"))
            continue
        if set(m) != set(outcomes[s]):
            problems.append(
                Violation(POSET_VIOLATION, f"map {s} -> {t} is not total on the outcomes of {s}")
            )
            continue
        tindex = {label: i for i, label in enumerate(outcomes[t])}
        if any(y not in tindex for y in m.values()):
            problems.append(
                Violation(POSET_VIOLATION, f"map {s} -> {t} hits labels outside {t}")
            )
            continue
        image = tuple(tindex[m[x]] for x in outcomes[s])
        if len(set(image)) != len(outcomes[t]):
            problems.append(Violation(NON_SURJECTIVE, f"map {s} -> {t} is not surjective"))
            continue
        declared[(s, t)] = dict(m)
        maps[(s, t)] = image

    maps = _close(maps, problems)
    for x in outcomes:
        maps[(x, x)] = tuple(range(len(outcomes[x])))

    for (s, t), m in maps.items():
        if s != t and len(set(m)) == len(m):
            problems.append(
                Violation(CONSERVATIVITY, f"arrow {s} -> {t} is a bijection of outcome sets")
            )

    if terminal in outcomes:
        for x in outcomes:
            if (x, terminal) not in maps:
                problems.append(Violation(MISSING_TERMINAL, f"{x} has no arrow to {terminal}"))

    def below(x):
        return {w for w in outcomes if (w, x) in maps}

    products: dict[frozenset, str] = {}
    for p in raw["products"]:
        left, right, z = p["left"], p["right"], p["result"]
        if not all(v in outcomes for v in (left, right, z)):
            problems.append(Violation(POSET_VIOLATION, f"product {left}∧{right} names unknown ids"))
            continue
        key = frozenset((left, right))
        if key in products and products[key] != z:
            problems.append(Violation(POSET_VIOLATION, f"conflicting products for {left}∧{right}"))
            continue
        if (z, left) not in maps or (z, right) not in maps:
            problems.append(
                Violation(POSET_VIOLATION, f"declared product {z} does not refine {left} and {right}")
            )
            continue
        if not below(left) & below(right) <= below(z):
            problems.append(
                Violation(MISSING_PRODUCT, f"{z} is not the greatest common refinement of {left}, {right}")
            )
            continue
        joint = list(zip(maps[(z, left)], maps[(z, right)]))
        if len(set(joint)) != len(joint):
            problems.append(
                Violation(PRODUCT_NOT_INJECTIVE, f"{z} -> {left} x {right} is not injective")
            )
            continue
        products[key] = z

    names = list(outcomes)
    for x, y in itertools.combinations(names, 2):
        if (x, y) in maps or (y, x) in maps:
            continue
        if below(x) & below(y) and frozenset((x, y)) not in products:
            declared_keys = {frozenset((p["left"], p["right"])) for p in raw["products"]}
            if frozenset((x, y)) not in declared_keys:
                problems.append(
                    Violation(MISSING_PRODUCT, f"{x} and {y} have a common refinement but no product")
                )

    if problems:
        raise StructureError(problems)
    return InformationStructure(outcomes, declared, terminal, products, maps)
