"""Verification reports."""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from . import __version__
from .certificate import MainBuildCertificate
from .serialize import SCHEMA_VERSION, load_schema


def _jsonable(x: Any) -> Any:
    """Round-trip through json so tuples and numpy scalars become plain values."""
    return json.loads(json.dumps(x, default=_fallback))


def _fallback(o: Any):
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return repr(o)


def build_report(cert: MainBuildCertificate, curve: dict[str, Any], config: dict[str, Any]) -> dict[str, Any]:
    curve = dict(curve)
    # keep reports small: the coefficient payload lives in the curve file
    for key in ("affine_coeffs",):
        if key in curve:
            curve.pop(key)
    report = {
        "tool_version": __version__,
        "schema_version": SCHEMA_VERSION,
        "curve": curve,
        "config": config,
        "checks": [c.to_dict() for c in cert.checks.values()],
        "verdict": cert.verdict,
    }
    report = _jsonable(report)
    validate_report(report)
    return report


def validate_report(report: dict[str, Any]) -> None:
    jsonschema.validate(report, load_schema("report.schema.json"))


def summary_lines(report: dict[str, Any]) -> list[str]:
    out = []
    for c in report["checks"]:
        extra = ""
        v = c.get("value")
        if isinstance(v, dict):
            for key in ("generic_count", "modal_count", "degree", "fraction"):
                if key in v:
                    extra += f" {key}={v[key]}"
        if c.get("reason"):
            extra += f" ({c['reason']})"
        out.append(f"{c['result']:>7}  {c['name']:<24} [{c['leg']}]{extra}")
    out.append(f"verdict: {report['verdict']}")
    return out
