"""Access to the transcribed reference data shipped with the package."""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path

from .cyclo import parse_rational

ENV_VAR = "MCKATZ_GOLDEN_DIR"
MANIFEST = "MANIFEST.sha256"


def golden_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path(__file__).with_name("golden")


def load(name: str):
    with open(golden_dir() / name, encoding="utf-8") as fh:
        return json.load(fh)


def verify_manifest(directory: Path | None = None) -> list:
    """Names of files whose checksum differs from the manifest (missing files included)."""
    directory = directory or golden_dir()
    bad = []
    for line in (directory / MANIFEST).read_text().splitlines():
        if not line.strip():
            continue
        digest, name = line.split(maxsplit=1)
        path = directory / name
        if not path.exists() or hashlib.sha256(path.read_bytes()).hexdigest() != digest:
            bad.append(name)
    return bad


def evaluate_linear(form: dict, values: dict) -> Fraction:
    """Evaluate {"const": c, "a1": k, ...} at the given parameter values."""
    total = parse_rational(form.get("const", "0"))
    for var, coeff in form.items():
        if var != "const":
            total += parse_rational(coeff) * values[var]
    return total


def remark_scheme_at(a1, c1, c2, c3) -> dict:
    """The parametric scheme table specialized to rational parameters, columns sorted descending."""
    table = load("scheme_remark.json")
    values = dict(zip(table["parameters"], (Fraction(v) for v in (a1, c1, c2, c3))))
    return {
        label: sorted((evaluate_linear(f, values) for f in forms), reverse=True)
        for label, forms in table["columns"].items()
    }
