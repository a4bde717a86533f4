"""Classify a few degree-1 cocycles on the packaged fixtures and print the result.

    python3 scripts/classify_demo.py [--bound 8]
"""

from __future__ import annotations

import argparse
import json

from infocoh import fixtures
from infocoh.cohomology import (
    FWCochain,
    PowerCochain,
    classify_cocycle,
    coboundary_mult,
    componentwise,
    inverse_factorial,
)
from infocoh.fontene_ward import fibonacci, gaussian, natural


def cases():
    ex = fixtures.example()
    yield "W_natural on example", FWCochain(natural()), ex
    yield "W_fibonacci squared on example", PowerCochain(FWCochain(fibonacci()), 2), ex
    yield "delta(1/[n]_q!) q=3 on full_product", coboundary_mult(inverse_factorial(gaussian(3)), fixtures.full_product()), fixtures.full_product()
    tc = fixtures.two_component()
    comps = tc.components()
    mixed = componentwise(tc, {comps[0][0]: FWCochain(natural()), comps[1][0]: FWCochain(gaussian(2))})
    yield "natural (+) gaussian q=2 on two_component", mixed, tc


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=8)
    args = ap.parse_args(argv)
    for name, psi, s in cases():
        c = classify_cocycle(psi, s, args.bound)
        print(f"== {name}")
        print(json.dumps(c.to_json(), indent=1))


if __name__ == "__main__":
    main()
