"""File formats for complexes and vertex-sampled functions.

Complex files are JSON: either a periodic cubical torus
`{"kind": "cubical_torus", "dim": 2, "resolution": [8, 8]}` or a
simplicial complex `{"kind": "simplicial", "vertices": n,
"simplices": [[v0, v1, ...], ...]}`.  Canonical-basis annotations are
emitted under "canonical_basis" and honoured when loading.  Function
files are CSV rows `vertex_index,value` or JSON `{"grid": [...]}`
(row-major over the torus grid).
"""

from __future__ import annotations

import csv
import json
import os

import numpy as np

from ..errors import InputError
from . import models
from .cubical import CubicalGrid
from .simplicial import SimplicialComplex


def complex_to_dict(cpx):
    if isinstance(cpx, CubicalGrid):
        if cpx.dim and not all(ax.periodic for ax in cpx.axes):
            raise InputError("only fully periodic cubical grids have a file form")
        out = {
            "kind": "cubical_torus",
            "dim": cpx.dim,
            "resolution": [ax.nodes for ax in cpx.axes],
        }
        if cpx.dim == 0:
            out["kind"] = "point"
            del out["resolution"]
    elif isinstance(cpx, SimplicialComplex):
        out = {
            "kind": "simplicial",
            "vertices": cpx.n_vertices,
            "simplices": [list(s) for s in cpx.simplices[cpx.dim]],
        }
        if getattr(cpx, "model", None):
            out["model"] = cpx.model
    else:
        raise InputError(f"cannot serialize complex of type {type(cpx)!r}")
    if getattr(cpx, "canonical_basis", None) is not None:
        out["canonical_basis"] = {
            str(degree): [{"label": label, "cells": [int(c) for c in chain]}
                          for label, chain in entries]
            for degree, entries in cpx.canonical_basis.items()
        }
    return out


def complex_from_dict(data):
    kind = data.get("kind")
    if kind == "point":
        return models.point()
    if kind == "cubical_torus":
        resolution = data.get("resolution")
        if resolution is None:
            raise InputError("cubical_torus file needs a 'resolution' field")
        dim = data.get("dim", len(resolution))
        if dim != len(resolution):
            raise InputError("'dim' does not match the resolution list")
        return models.torus(tuple(resolution))
    if kind == "simplicial":
        if "vertices" not in data or "simplices" not in data:
            raise InputError("simplicial file needs 'vertices' and 'simplices'")
        cpx = SimplicialComplex(data["vertices"],
                                [tuple(s) for s in data["simplices"]])
        if data.get("model"):
            cpx.model = data["model"]
        if "canonical_basis" in data:
            cpx.canonical_basis = {
                int(degree): [(e["label"], np.asarray(e["cells"], dtype=np.int64))
                              for e in entries]
                for degree, entries in data["canonical_basis"].items()
            }
        return cpx
    raise InputError(f"unknown complex kind {kind!r}")


def save_complex(cpx, path):
    with open(path, "w") as fh:
        json.dump(complex_to_dict(cpx), fh, sort_keys=True)
        fh.write("\n")


def load_complex(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e})") from None
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    return complex_from_dict(data)


def resolve_complex(spec):
    """Accept either a complex file path or a built-in model id."""
    if os.path.exists(spec):
        return load_complex(spec)
    return models.from_id(spec)


def load_function_values(path, cpx):
    """Vertex values from a CSV (vertex_index,value) or JSON grid file."""
    n = cpx.n_vertices
    if path.endswith(".json"):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: not valid JSON ({e})") from None
        except OSError as e:
            raise InputError(f"{path}: {e.strerror}") from None
        if "grid" not in data:
            raise InputError(f"{path}: JSON function file needs a 'grid' field")
        values = np.asarray(data["grid"], dtype=float).ravel()
        if len(values) != n:
            raise InputError(
                f"{path}: grid has {len(values)} values, complex has {n} vertices")
        return values
    values = np.full(n, np.nan)
    try:
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                if row[0].strip().lower() == "vertex_index":
                    continue
                try:
                    idx, val = int(row[0]), float(row[1])
                except (ValueError, IndexError):
                    raise InputError(
                        f"{path}: malformed row {row!r} in field vertex_index,value"
                    ) from None
                if not 0 <= idx < n:
                    raise InputError(f"{path}: vertex_index {idx} out of range")
                values[idx] = val
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    if np.isnan(values).any():
        missing = int(np.isnan(values).sum())
        raise InputError(f"{path}: {missing} vertices have no value")
    return values


def save_function_values(values, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex_index", "value"])
        for i, v in enumerate(np.asarray(values, dtype=float)):
            writer.writerow([i, repr(float(v))])
