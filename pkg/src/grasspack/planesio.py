"""The JSON plane-set interchange format, schema "grasspack-planes/1".

Header: m, n, N, provenance, exact, and optionally the claimed squared
minimal distance (an exact "num/den" string for exact packings, a float
otherwise) with a flag marking it as only a lower bound.  Exact planes are
stored as integer projection matrices with their half_scale (the matrix is
2^(-half_scale/2) times the integer entries); float planes are stored as
orthonormal basis rows.  Files are byte-stable: keys are sorted and every
constructor is deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO

import numpy as np

from .construct import GroupPlane, Packing
from .errors import UsageError
from .exact import ExactMatrix

FORMAT = "grasspack-planes/1"


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def _plane_json(plane) -> dict:
    if isinstance(plane, GroupPlane):
        plane = plane.projection()
    if isinstance(plane, ExactMatrix):
        return {
            "half_scale": plane.half_scale,
            "rows": [[int(x) for x in row] for row in plane.entries],
        }
    rows = np.asarray(plane, dtype=float)
    return {"rows": [[float(x) for x in row] for row in rows]}


def packing_to_json(packing: Packing, report=None) -> dict:
    exact = all(isinstance(p, (GroupPlane, ExactMatrix)) for p in packing.planes)
    doc = {
        "format": FORMAT,
        "m": packing.m,
        "n": packing.n,
        "N": packing.N,
        "provenance": packing.provenance,
        "exact": exact,
        "planes": [_plane_json(p) for p in packing.planes],
    }
    if packing.claimed_d2 is not None:
        doc["claimed_d2"] = _fraction_str(packing.claimed_d2)
        doc["claimed_is_lower_bound"] = packing.claimed_is_lower_bound
    if report is not None:
        doc["report"] = {
            "d2_min": _fraction_str(report.d2_min)
            if isinstance(report.d2_min, Fraction)
            else float(report.d2_min),
            "status": report.status,
            "mode": report.mode,
            "degenerate": report.degenerate,
        }
    return doc


def write_planeset(packing: Packing, fp: IO[str], report=None) -> None:
    json.dump(packing_to_json(packing, report), fp, sort_keys=True, separators=(",", ":"))
    fp.write("\n")


def dumps_planeset(packing: Packing, report=None) -> str:
    return json.dumps(packing_to_json(packing, report), sort_keys=True, separators=(",", ":")) + "\n"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(f"malformed plane-set file: {message}")


def planeset_from_json(doc: dict) -> Packing:
    _require(isinstance(doc, dict), "top level must be an object")
    _require(doc.get("format") == FORMAT, f"format must be {FORMAT!r}")
    for key in ("m", "n", "N", "planes"):
        _require(key in doc, f"missing key {key!r}")
    m, n = doc["m"], doc["n"]
    _require(isinstance(m, int) and isinstance(n, int) and 0 < n < m, "bad m, n")
    planes_json = doc["planes"]
    _require(isinstance(planes_json, list), "planes must be a list")
    _require(doc["N"] == len(planes_json), "N does not match the number of planes")
    exact = bool(doc.get("exact", False))
    planes = []
    for idx, pj in enumerate(planes_json):
        _require(isinstance(pj, dict) and "rows" in pj, f"plane {idx} malformed")
        rows = pj["rows"]
        if exact:
            _require("half_scale" in pj, f"plane {idx} missing half_scale")
            try:
                mat = ExactMatrix(np.array(rows, dtype=np.int64), pj["half_scale"])
            except (ValueError, TypeError, UsageError) as e:
                raise UsageError(f"malformed plane-set file: plane {idx}: {e}") from e
            _require(mat.shape == (m, m), f"plane {idx} is not {m}x{m}")
            planes.append(mat)
        else:
            arr = np.array(rows, dtype=float)
            _require(arr.shape == (n, m), f"plane {idx} is not {n}x{m}")
            planes.append(arr)
    claimed = None
    lower = False
    if "claimed_d2" in doc:
        try:
            claimed = parse_fraction(str(doc["claimed_d2"]))
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"malformed plane-set file: claimed_d2: {e}") from e
        lower = bool(doc.get("claimed_is_lower_bound", False))
    return Packing(
        m=m,
        n=n,
        planes=planes,
        provenance=str(doc.get("provenance", "file")),
        claimed_d2=claimed,
        claimed_is_lower_bound=lower,
    )


def read_planeset(fp: IO[str]) -> Packing:
    try:
        doc = json.load(fp)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed plane-set file: {e}") from e
    return planeset_from_json(doc)
