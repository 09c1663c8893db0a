"""JSON envelopes for curves and Artin-Schreier fields."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any

import jsonschema

from .artin_schreier import ASField
from .curves import ParamCurve, from_affine
from .errors import MalformedInput, TandegError
from .fields import FieldSpec
from .poly import Poly

SCHEMA_VERSION = 1


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("tandeg").joinpath("schemas", name).read_text()
    return json.loads(text)


def _field_fields(spec: FieldSpec) -> dict[str, Any]:
    return {"p": spec.p, "field_m": spec.m, "modulus": list(spec.modulus) if spec.modulus else []}


def _poly_json(f: Poly) -> list[list[int]]:
    return [list(c.coeffs) for c in f.coeffs] if not f.is_zero() else []


def _spec_from(d: dict) -> FieldSpec:
    mod = tuple(int(c) for c in d["modulus"]) or None
    return FieldSpec(int(d["p"]), int(d["field_m"]), mod)


def _poly_from(spec: FieldSpec, rows: list) -> Poly:
    for r in rows:
        if len(r) != spec.m:
            raise MalformedInput(f"coefficient vector {r} has length {len(r)}, expected {spec.m}")
    return Poly.from_coeffs(spec, [tuple(int(x) for x in r) for r in rows])


def curve_to_dict(c: ParamCurve) -> dict[str, Any]:
    d = {"kind": "param_curve", "schema_version": SCHEMA_VERSION}
    d.update(_field_fields(c.spec))
    d.update({
        "q_exponent": c.spec.m,
        "N": c.N,
        "degree": c.degree,
        "affine_coeffs": [_poly_json(f) for f in c.affine],
        "meta": c.meta,
    })
    return d


def asfield_to_dict(F: ASField, build: dict[str, Any] | None = None) -> dict[str, Any]:
    d = {"kind": "artin_schreier", "schema_version": SCHEMA_VERSION}
    d.update(_field_fields(F.spec))
    d.update({"q": F.q, "q_exponent": F.r, "g_coeffs": _poly_json(F.g)})
    if build is not None:
        d["build"] = build
    return d


def parse(d: Any):
    """ParamCurve, or (ASField, build-parameters) for the Artin-Schreier kind."""
    try:
        jsonschema.validate(d, load_schema("curve.schema.json"))
    except jsonschema.ValidationError as e:
        raise MalformedInput(f"curve file does not match the schema: {e.message}") from None
    try:
        spec = _spec_from(d)
        if d["kind"] == "artin_schreier":
            return ASField(spec, int(d["q"]), _poly_from(spec, d["g_coeffs"])), d.get("build", {})
        polys = [_poly_from(spec, rows) for rows in d["affine_coeffs"]]
        c = from_affine(polys, d.get("meta", {}))
    except (TandegError, ValueError) as e:
        raise MalformedInput(str(e)) from e
    if c.N != d["N"] or c.degree != d["degree"]:
        raise MalformedInput("N or degree disagrees with the coefficient data")
    return c


def dumps(obj: dict, indent: int | None = 2) -> str:
    if indent is None:
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    return json.dumps(obj, indent=indent, sort_keys=True) + "\n"


def read_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInput(f"cannot read {path}: {e}") from e
    return parse(data)


def write_file(path: str, obj: dict, indent: int | None = 2) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj, indent))
