"""Structured report documents (JSON) and CSV tables.

Exact rationals are written as "num/den" strings, floats with `repr`
precision, and grid samples as base64 of the binary container.
"""

from __future__ import annotations

import base64
import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import container
from .geometry import (InterpolationNode, MembershipCertificate, ReciprocalExponents, VertexSet,
                       format_fraction)
from .hardy import Atom, CZDecomposition, DyadicCube


def jsonable(obj):
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, ReciprocalExponents):
        return [format_fraction(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def dumps(doc) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(jsonable(doc), sort_keys=True, indent=1) + "\n"


def csv_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([jsonable(v) if not isinstance(v, float) else repr(v) for v in row])
    return buf.getvalue()


def vertex_set_doc(vs: VertexSet) -> dict:
    return {
        "n": vs.profile.n,
        "s": list(vs.profile.s),
        "count": len(vs),
        "vertices": [v for v in vs],
    }


def certificate_doc(cert: MembershipCertificate) -> dict:
    doc = {"verdict": cert.verdict}
    if cert.inside:
        doc["weights"] = [
            {"vertex": v, "weight": w} for v, w in zip(cert.vertices, cert.weights) if w != 0
        ]
    else:
        doc["violated"] = list(cert.violated)
        doc["margin"] = cert.margin
    return doc


def path_doc(node: InterpolationNode) -> dict:
    doc = {"r": node.r, "s": list(node.profile.s)}
    if not node.is_leaf:
        doc["index"] = node.index
        doc["theta"] = node.theta
        doc["children"] = [path_doc(c) for c in node.children]
    return doc


def samples_b64(obj) -> str:
    return base64.b64encode(container.to_bytes(obj)).decode("ascii")


def cube_doc(cube: DyadicCube) -> dict:
    return {"level": cube.level, "coords": list(cube.coords)}


def cz_doc(cz: CZDecomposition, include_samples: bool = True) -> dict:
    doc = {
        "height": cz.height,
        "cubes": [cube_doc(c) for c in cz.cubes],
        "invariants": cz.check(),
        "l1_norm": cz.f.l1(),
    }
    if include_samples:
        doc["good"] = samples_b64(cz.good)
        doc["bad"] = [samples_b64(b) for _, b in cz.bad]
    return doc


def atom_doc(atom: Atom, include_samples: bool = True) -> dict:
    doc = {
        "cube": cube_doc(atom.cube),
        "p": atom.p,
        "order": atom.order,
        "size_bound": atom.size_bound,
        "sup": float(np.abs(atom.samples).max()),
        "support_ok": atom.support_ok(),
        "size_ok": atom.size_ok(),
        "moment_residual": atom.moment_residual(),
    }
    if include_samples:
        doc["samples"] = samples_b64(atom.function)
    return doc
