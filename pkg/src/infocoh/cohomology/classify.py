"""Recovering the admissible sequence behind a degree-1 cocycle."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import (
    BoundaryViolation,
    DegenerateProduct,
    FunctionalEquationViolation,
    NoNondegenerateProduct,
    NotACocycle,
    SymmetryViolation,
)
from ..fontene_ward import AdmissibleSequence, explicit, explicit_log
from ..structure import InformationStructure
from ..values import ln, same, to_json
from .cochains import CombCochain, counting_functions
from .feith import comb_feith_solve
from .nondegenerate import NondegWitness, nondegenerate_witness


def _two_point(psi, s, var, order, a, bound, swap):
    """``(n1, n2) -> psi[var]`` on the outcomes ``order[a], order[a+1]``."""
    labels = s.outcomes(var)
    i, j = labels.index(order[a]), labels.index(order[a + 1])
    if swap:
        i, j = j, i
    size = len(labels)
    table = {}
    for n in range(1, bound + 1):
        for n1 in range(n + 1):
            counts = [0] * size
            counts[i], counts[j] = n1, n - n1
            table[(n1, n - n1)] = psi.value((var,), tuple(counts))
    return table


def matches_fw(psi: CombCochain, s: InformationStructure, variables, D: AdmissibleSequence, bound: int):
    """First ``(variable, counts)`` with ``psi[V] != W_D[V]``, or ``None``."""
    for v in variables:
        for counts in counting_functions(s.size(v), bound):
            if not same(psi.value((v,), counts), D.multinomial(counts)):
                return v, counts
    return None


def extract_sequence(
    psi: CombCochain, s: InformationStructure, x: str, y: str, bound: int, witness: NondegWitness | None = None
) -> AdmissibleSequence:
    """The prefix ``D_1..D_bound`` with ``psi = W_D`` on X, Y and XY.

    The two-point restrictions of ``psi[X]`` and ``psi[Y]`` on the first cell
    of a nondegeneracy witness are fed to the discrete equation (trying both
    argument orders of each), and the result is then checked against
    ``psi`` on all three variables for every ``|nu| <= bound``.
    """
    if psi.degree != 1:
        raise ValueError("sequences are extracted from degree-1 cochains")
    if witness is None:
        witness = nondegenerate_witness(s, x, y)
    if witness is None:
        raise DegenerateProduct(f"the product of {x} and {y} admits no nondegeneracy witness")
    a, b = witness.path[0][0] - 1, witness.path[0][1] - 1
    first_error = None
    D = None
    for swap_f in (False, True):
        f = _two_point(psi, s, x, witness.x_order, a, bound, swap_f)
        for swap_g in (False, True):
            g = _two_point(psi, s, y, witness.y_order, b, bound, swap_g)
            try:
                D = comb_feith_solve(f, g)
                break
            except (BoundaryViolation, SymmetryViolation, FunctionalEquationViolation) as err:
                first_error = first_error or err
        if D is not None:
            break
    if D is None:
        raise NotACocycle(
            f"two-point values of {x} and {y} do not solve the discrete equation: {first_error}",
            getattr(first_error, "witness", None),
        )
    xy = s.meet(x, y)
    bad = matches_fw(psi, s, (x, y, xy), D, bound)
    if bad is not None:
        v, counts = bad
        raise NotACocycle(
            f"{v} at {list(counts)} disagrees with the extracted sequence",
            {"variable": v, "values": list(counts)},
        )
    return D


def coboundary_sequence(Psi, N: int) -> AdmissibleSequence:
    """``D_n = Psi(n-1) Psi(1) / Psi(n)`` with ``Psi(0) = 1``, so that ``delta Psi = W_D``."""
    vals = [Fraction(1)] + [Psi(n) for n in range(1, N + 1)]
    terms = [vals[n - 1] * vals[1] / vals[n] for n in range(1, N + 1)]
    if all(isinstance(t, (int, Fraction)) for t in terms):
        return explicit(terms)
    return explicit_log([ln(t) for t in terms])


def same_prefix(D: AdmissibleSequence, E: AdmissibleSequence, n: int) -> bool:
    return all(same(D.term(i), E.term(i)) for i in range(1, n + 1))


@dataclass
class Classification:
    sequences: dict  # component tuple -> AdmissibleSequence
    products: dict  # component tuple -> (x, y)
    coboundary: bool
    bound: int
    psi: list = field(default_factory=list)  # Psi(1..bound) when coboundary

    def to_json(self) -> dict:
        comps = []
        for comp, D in self.sequences.items():
            x, y = self.products[comp]
            comps.append(
                {
                    "component": list(comp),
                    "product": [x, y],
                    "sequence": [to_json(D.term(i)) for i in range(1, self.bound + 1)],
                }
            )
        obj = {"components": comps, "coboundary": self.coboundary, "bound": self.bound}
        if self.coboundary:
            obj["psi"] = [to_json(v) for v in self.psi]
        return obj


def classify_cocycle(psi: CombCochain, s: InformationStructure, bound: int) -> Classification:
    """One admissible sequence per connected component, plus a coboundary flag.

    Each component is classified through its first declared product that has
    a nondegeneracy witness, and ``psi`` is then compared with ``W_D`` on
    every variable of the component. ``psi`` is a coboundary on the bounded
    domain exactly when all components share one sequence ``D``: then
    ``Psi(n) = 1 / [n]_D!`` satisfies ``delta Psi = psi``.
    """
    sequences, used = {}, {}
    for comp in s.components():
        members = set(comp)
        chosen = None
        for left, right, result in s.products():
            if left in members and right in members:
                w = nondegenerate_witness(s, left, right)
                if w is not None:
                    chosen = (left, right, w)
                    break
        if chosen is None:
            raise NoNondegenerateProduct(comp)
        x, y, w = chosen
        D = extract_sequence(psi, s, x, y, bound, w)
        bad = matches_fw(psi, s, comp, D, bound)
        if bad is not None:
            v, counts = bad
            raise NotACocycle(
                f"{v} at {list(counts)} disagrees with the sequence of its component",
                {"variable": v, "values": list(counts)},
            )
        sequences[comp], used[comp] = D, (x, y)
    seqs = list(sequences.values())
    coboundary = all(same_prefix(seqs[0], E, bound) for E in seqs[1:]) if seqs else True
    psi_values = []
    if coboundary:
        D = seqs[0] if seqs else None
        psi_values = [1 / D.factorial(n) if D else Fraction(1) for n in range(1, bound + 1)]
    return Classification(sequences, used, coboundary, bound, psi_values)
