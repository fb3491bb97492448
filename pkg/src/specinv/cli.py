"""Command-line frontend.

Subcommands: homology, cuplength, cls, essential, ls-check, front, spec,
ell, gamma, oplus, hausdorff, limit-check.  Exit codes: 0 success,
1 input error, 2 capability error (unsupported model), 3 hypothesis not
met (limit-check only).  Outputs are deterministic: identical inputs and
flags give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import genfam, minmax, plots
from .complexes import (betti_numbers, class_from_label, cup_length,
                        homology_basis_gf2, load_function_values,
                        resolve_complex)
from .errors import CapabilityError, InputError
from .fields import get_field

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAPABILITY = 2
EXIT_HYPOTHESIS = 3


def _fmt(x):
    xf = float(x)
    if xf == int(xf):
        return str(int(xf))
    return repr(xf)


def _write_text(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _write_json(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _emit(args, name, data, text):
    sys.stdout.write(text)
    out = getattr(args, "out", None)
    if out:
        os.makedirs(out, exist_ok=True)
        _write_json(os.path.join(out, f"{name}.json"), data)
        _write_text(os.path.join(out, f"{name}.txt"), text)


def _parse_ladder(text):
    try:
        radii = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise InputError(f"--ladder: cannot parse {text!r}") from None
    if not radii or any(r <= 0 for r in radii):
        raise InputError("--ladder radii must be positive integers")
    return radii


def _load_function(args, cpx):
    return minmax.SampledFunction(cpx, load_function_values(args.function, cpx))


# -- subcommand handlers ------------------------------------------------------


def cmd_homology(args):
    cpx = resolve_complex(args.complex)
    betti = betti_numbers(cpx, get_field(args.field))
    lines = ["betti: " + ",".join(str(b) for b in betti)]
    data = {"betti": betti, "field": args.field}
    if args.field == "f2":
        classes = {}
        for degree in range(cpx.dim + 1):
            reps = homology_basis_gf2(cpx, degree)
            if len(reps) != betti[degree]:
                raise InputError(
                    "canonical basis does not match the computed Betti number")
            labels = []
            for i, rep in enumerate(reps):
                label = class_from_label(cpx, f"b{degree}:{i}").label()
                labels.append({"label": label, "cells": len(rep)})
            classes[str(degree)] = labels
            if labels:
                lines.append(
                    f"H_{degree}: " + " ".join(e["label"] for e in labels))
        data["classes"] = classes
    text = "\n".join(lines) + "\n"
    _emit(args, "homology", data, text)
    return EXIT_OK


def cmd_cuplength(args):
    cpx = resolve_complex(args.complex)
    cl = cup_length(cpx)
    _emit(args, "cuplength", {"cup_length": cl}, f"{cl}\n")
    return EXIT_OK


def cmd_cls(args):
    cpx = resolve_complex(args.complex)
    f = _load_function(args, cpx)
    alpha = class_from_label(cpx, args.klass)
    value = minmax.c_ls(alpha, f)
    _emit(args, "cls", {"class": alpha.label(), "value": value},
          _fmt(value) + "\n")
    return EXIT_OK


def cmd_essential(args):
    cpx = resolve_complex(args.complex)
    f = _load_function(args, cpx)
    report = minmax.essential_values(f)
    lines = ["essential values: " + " ".join(_fmt(v) for v in report.values)]
    for label, value in report.table:
        lines.append(f"  {label} -> {_fmt(value)}")
    _emit(args, "essential", report.as_dict(), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_ls_check(args):
    cpx = resolve_complex(args.complex)
    f = _load_function(args, cpx)
    ladder = _parse_ladder(args.ladder)
    report = minmax.ls_check(f, ladder)
    lines = ["essential values: "
             + " ".join(_fmt(v) for v in report.essential.values),
             f"coincidences: {len(report.coincidences)}"]
    for c in report.coincidences:
        lines.append(f"  alpha={c.alpha_label} beta={c.beta_label} "
                     f"product={c.product_label} level={_fmt(c.level)} "
                     f"verdict={c.verdict}")
    data = report.as_dict()
    data["ladder"] = list(ladder)
    _emit(args, "ls-check", data, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_front(args):
    fam = genfam.load_family(args.gfqi)
    cloud = genfam.front(fam)
    text = f"front: {len(cloud)} points\n"
    _emit(args, "front", {"points": len(cloud)}, text)
    if args.out:
        genfam.save_cloud(cloud, os.path.join(args.out, "front.csv"))
    if args.svg:
        _write_text(args.svg, plots.front_svg(cloud))
    return EXIT_OK


def _cloud_and_eps(args):
    if args.gfqi:
        fam = genfam.load_family(args.gfqi)
        cloud = genfam.front(fam)
        eps = args.eps_p if args.eps_p is not None else genfam.default_eps_p(fam)
    elif args.cloud:
        cloud = genfam.load_cloud(args.cloud)
        if args.eps_p is None:
            raise InputError("--eps-p is required when reading a cloud file")
        eps = args.eps_p
    else:
        raise InputError("need --gfqi or --cloud")
    return cloud, eps


def cmd_spec(args):
    cloud, eps = _cloud_and_eps(args)
    spec = genfam.spectrum(cloud, eps, args.delta_z)
    text = ("spectrum: " + " ".join(_fmt(v) for v in spec.values)
            + f"\n(eps_p={_fmt(spec.eps_p)}, delta_z={_fmt(spec.delta_z)})\n")
    _emit(args, "spec", spec.as_dict(), text)
    if args.svg:
        _write_text(args.svg, plots.spectrum_svg(spec))
    return EXIT_OK


def cmd_ell(args):
    fam = genfam.load_family(args.gfqi)
    alpha = class_from_label(fam.base, args.klass)
    value = genfam.ell(alpha, fam)
    _emit(args, "ell", {"class": alpha.label(), "value": value},
          _fmt(value) + "\n")
    return EXIT_OK


def cmd_gamma(args):
    fam = genfam.load_family(args.gfqi)
    value = genfam.gamma(fam)
    _emit(args, "gamma", {"value": value}, _fmt(value) + "\n")
    return EXIT_OK


def cmd_oplus(args):
    a = genfam.load_family(args.gfqi)
    b = genfam.load_family(args.gfqi2)
    total = genfam.oplus(a, b)
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, "oplus.json")
    genfam.save_family(total, path)
    sys.stdout.write(path + "\n")
    return EXIT_OK


def cmd_hausdorff(args):
    a = genfam.load_cloud(args.cloud)
    b = genfam.load_cloud(args.cloud2)
    value = genfam.hausdorff(a, b)
    _emit(args, "hausdorff", {"distance": value}, _fmt(value) + "\n")
    return EXIT_OK


# -- the limit-check experiment ------------------------------------------------


@dataclass
class ExperimentConfig:
    base: str
    sequence: list
    limit: str | None = None
    mode: str = "hausdorff"
    eps_p: float | None = None
    delta_z: float | None = None
    ladder: tuple = (1, 2, 3)
    out: str | None = None

    @classmethod
    def load(cls, path):
        try:
            with open(path, "rb") as fh:
                raw = tomllib.load(fh)
        except OSError as e:
            raise InputError(f"{path}: {e.strerror}") from None
        except tomllib.TOMLDecodeError as e:
            raise InputError(f"{path}: invalid TOML ({e})") from None
        if "base" not in raw:
            raise InputError(f"{path}: config needs a 'base' model id")
        if not raw.get("sequence"):
            raise InputError(f"{path}: config needs a nonempty 'sequence'")
        cfg = cls(
            base=raw["base"],
            sequence=list(raw["sequence"]),
            limit=raw.get("limit"),
            mode=raw.get("mode", "hausdorff"),
            eps_p=raw.get("eps_p"),
            delta_z=raw.get("delta_z"),
            ladder=tuple(raw.get("ladder", (1, 2, 3))),
            out=raw.get("out"),
        )
        if cfg.eps_p is not None and cfg.eps_p <= 0:
            raise InputError(f"{path}: eps_p must be positive")
        if cfg.delta_z is not None and cfg.delta_z <= 0:
            raise InputError(f"{path}: delta_z must be positive")
        if any(r <= 0 for r in cfg.ladder):
            raise InputError(f"{path}: ladder radii must be positive")
        base_dir = os.path.dirname(os.path.abspath(path))
        cfg.sequence = [os.path.join(base_dir, p) for p in cfg.sequence]
        if cfg.limit:
            cfg.limit = os.path.join(base_dir, cfg.limit)
        if cfg.out:
            cfg.out = os.path.join(base_dir, cfg.out)
        return cfg


def _load_member(path):
    if path.endswith(".csv"):
        return genfam.load_cloud(path), None
    fam = genfam.load_family(path)
    return genfam.front(fam), fam


def cmd_limit_check(args):
    cfg = ExperimentConfig.load(args.config)
    if args.eps_p is not None:
        cfg.eps_p = args.eps_p
    if args.delta_z is not None:
        cfg.delta_z = args.delta_z
    if args.ladder:
        cfg.ladder = _parse_ladder(args.ladder)
    if args.out:
        cfg.out = args.out
    base = resolve_complex(cfg.base)

    members = []
    for path in cfg.sequence:
        cloud, _ = _load_member(path)
        members.append((os.path.basename(path), cloud))
    if cfg.limit:
        limit_cloud, limit_fam = _load_member(cfg.limit)
    else:
        limit_cloud, limit_fam = members[-1][1], None
        if not cfg.sequence[-1].endswith(".csv"):
            limit_fam = genfam.load_family(cfg.sequence[-1])

    eps = cfg.eps_p
    if eps is None:
        if limit_fam is None:
            raise InputError(
                "eps_p must be given when the limit is a cloud file")
        eps = genfam.default_eps_p(limit_fam)

    report = genfam.verify_arnold_limit(
        base, members, limit_cloud, eps, cfg.delta_z, cfg.ladder, cfg.mode)

    lines = [f"mode: {report.mode}"]
    for name, dist in report.member_distances:
        lines.append(f"  d({name} -> limit) = {_fmt(dist)}")
    lines.append(f"distances decreasing: {report.distances_decreasing}")
    lines.append("spectrum: "
                 + " ".join(_fmt(v) for v in report.spectrum.values)
                 + f"  (eps_p={_fmt(report.spectrum.eps_p)},"
                 + f" delta_z={_fmt(report.spectrum.delta_z)})")
    lines.append(f"spec_size={len(report.spectrum.values)}  cl={report.cup_length}")
    if not report.hypothesis_met:
        lines.append("hypothesis not met: spectrum is not smaller than the "
                     "cup-length")
    for lv in report.levels:
        verdict = lv.nontriviality.verdict if lv.nontriviality else "empty"
        lines.append(f"  level {_fmt(lv.level)}: {lv.n_points} points, "
                     f"{lv.n_vertices} vertices, verdict={verdict}")
    lines.append(f"verdict: {report.verdict}")
    text = "\n".join(lines) + "\n"

    sys.stdout.write(text)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        _write_json(os.path.join(cfg.out, "limit-check.json"),
                    report.as_dict())
        _write_text(os.path.join(cfg.out, "limit-check.txt"), text)
    return EXIT_HYPOTHESIS if not report.hypothesis_met else EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="specinv",
        description="Min-max critical values and Legendrian spectra on "
                    "grid manifolds")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("homology", cmd_homology, help="Betti numbers and basis classes")
    p.add_argument("--complex", required=True)
    p.add_argument("--field", choices=["f2", "q"], default="f2")
    p.add_argument("--out")

    p = add("cuplength", cmd_cuplength, help="cup-length of a model")
    p.add_argument("--complex", required=True)
    p.add_argument("--out")

    p = add("cls", cmd_cls, help="min-max critical value of a class")
    p.add_argument("--complex", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--out")

    p = add("essential", cmd_essential, help="all essential critical values")
    p.add_argument("--complex", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--out")

    p = add("ls-check", cmd_ls_check,
            help="coincidence search and critical-set nontriviality")
    p.add_argument("--complex", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--ladder", default="1,2,3")
    p.add_argument("--out")

    p = add("front", cmd_front, help="extract the front of a family")
    p.add_argument("--gfqi", required=True)
    p.add_argument("--out")
    p.add_argument("--svg")

    p = add("spec", cmd_spec, help="spectrum of a front")
    p.add_argument("--gfqi")
    p.add_argument("--cloud")
    p.add_argument("--eps-p", type=float, dest="eps_p")
    p.add_argument("--delta-z", type=float, dest="delta_z")
    p.add_argument("--out")
    p.add_argument("--svg")

    p = add("ell", cmd_ell, help="spectral invariant of a class")
    p.add_argument("--gfqi", required=True)
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--out")

    p = add("gamma", cmd_gamma, help="spectral norm of a family")
    p.add_argument("--gfqi", required=True)
    p.add_argument("--out")

    p = add("oplus", cmd_oplus, help="fiberwise sum of two families")
    p.add_argument("--gfqi", required=True)
    p.add_argument("--gfqi2", required=True)
    p.add_argument("--out")

    p = add("hausdorff", cmd_hausdorff, help="Hausdorff distance of clouds")
    p.add_argument("--cloud", required=True)
    p.add_argument("--cloud2", required=True)
    p.add_argument("--out")

    p = add("limit-check", cmd_limit_check,
            help="few-spectral-values experiment on a convergent sequence")
    p.add_argument("--config", required=True)
    p.add_argument("--eps-p", type=float, dest="eps_p")
    p.add_argument("--delta-z", type=float, dest="delta_z")
    p.add_argument("--ladder")
    p.add_argument("--out")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_INPUT
    except CapabilityError as e:
        sys.stderr.write(f"capability error: {e}\n")
        return EXIT_CAPABILITY


if __name__ == "__main__":
    sys.exit(main())
