"""Regenerate the JSON files under src/infocoh/data from the fixture builders.

    python3 scripts/write_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from infocoh import fixtures
from infocoh.cohomology import binomial_tables, tables_to_json
from infocoh.fontene_ward import gaussian, natural
from infocoh.structure import dump_structure, validate

DATA = Path(__file__).resolve().parents[1] / "src" / "infocoh" / "data"

COCHAINS = {
    "fw_natural": {"type": "fw", "degree": 1, "family": "natural"},
    "fw_gaussian2": {"type": "fw", "degree": 1, "family": "gaussian:q=2"},
    "one": {"type": "one", "degree": 1},
    "exp": {"type": "exp", "degree": 0, "k": "1"},
    "perturbed_natural": {
        "type": "table",
        "degree": 1,
        "entries": [{"gens": ["X1"], "counts": [1, 1], "value": "4"}],
        "base": {"type": "fw", "degree": 1, "family": "natural"},
    },
    "coboundary_natural": {
        "type": "coboundary",
        "of": {"type": "inverse-factorial", "degree": 0, "family": "natural"},
    },
    "two_families": {
        "type": "per-variable",
        "degree": 1,
        "families": {
            **{f"P{v}": "natural" for v in ("X1", "X2", "X1X2")},
            **{f"Q{v}": "gaussian:q=2" for v in ("X1", "X2", "X1X2")},
        },
    },
    "entropy_2": {"type": "entropy", "degree": 1, "beta": "2"},
}


def write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(path.relative_to(DATA.parents[2]))


def main():
    for name, build in fixtures.BUILDERS.items():
        raw = build()
        text = fixtures.raw_text(raw) if name == "diagonal" else dump_structure(validate(raw))
        write(DATA / f"{name}.json", text)
    for name, obj in COCHAINS.items():
        write(DATA / "cochains" / f"{name}.json", json.dumps(obj, indent=2, sort_keys=True) + "\n")
    nat, q2 = binomial_tables(natural(), 10), binomial_tables(gaussian(2), 10)
    write(DATA / "tables" / "natural_10.json", json.dumps(tables_to_json(nat), indent=1) + "\n")
    write(DATA / "tables" / "mixed_10.json", json.dumps(tables_to_json(nat, q2), indent=1) + "\n")


if __name__ == "__main__":
    main()
