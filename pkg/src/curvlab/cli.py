"""Command-line front end: configure a model space, run builders and claim
verifiers, evaluate individual maps, and sweep configurations.

Subcommands: dims | verify | eval | sweep.  All indices on the command line
are 1-based (matching the basis notation e1, e2, ...); JSON payloads carry
0-based indices with an explicit ``index_base`` field.  Results go to stdout,
diagnostics to stderr.  Exit codes: 0 = all claims pass (expected-failure
claims passing as such), 1 = some claim fails, 2 = usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import curvature, nijenhuis, report
from .curvature import CLAIMS, build_catalog, engine_for_mode, run_claim
from .linalg import scalar_to_str
from .spaces import ModelSpace, make_standard
from .tensors import (
    Tensor2,
    kaehler_form,
    metric_tensor2,
    psi_map,
    sigma,
)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    n: int
    kind: str
    signature: tuple[int, int] | None
    eps: tuple[int, ...] | None
    mode: str
    fmt: str

    def space(self) -> ModelSpace:
        return make_standard(self.n, self.kind, signature=self.signature, eps=self.eps)


def _parse_sig(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad signature {text!r}; expected p,q") from exc
    return (p, q)


def _parse_eps(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    table = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}
    try:
        return tuple(table[tok.strip()] for tok in text.split(","))
    except KeyError as exc:
        raise UsageError(f"bad eps layout {text!r}; expected comma-separated +/-") from exc


def _parse_indices(text: str, count: int, n: int) -> tuple[int, ...]:
    try:
        idx = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad index list {text!r}") from exc
    if len(idx) != count:
        raise UsageError(f"expected {count} indices, got {len(idx)}")
    if any(not (1 <= i <= n) for i in idx):
        raise UsageError(f"indices must be 1-based and at most {n}")
    return tuple(i - 1 for i in idx)


def _config_from_args(args) -> RunConfig:
    mode = args.mode
    if not (mode == "exact" or mode.startswith("float")):
        raise UsageError(f"bad mode {mode!r}; expected exact or float:<tol>")
    return RunConfig(
        n=args.n,
        kind=args.kind,
        signature=_parse_sig(args.sig),
        eps=_parse_eps(args.eps),
        mode=mode,
        fmt=args.format,
    )


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(_markdown_table(obj))


def _markdown_table(obj: dict, title: str | None = None) -> str:
    lines = []
    if title:
        lines.append(f"## {title}")
        lines.append("")
    lines.append("| key | value |")
    lines.append("| --- | --- |")
    for key, value in obj.items():
        lines.append(f"| {key} | `{json.dumps(value, sort_keys=False)}` |")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_dims(config: RunConfig) -> int:
    space = config.space()
    engine = engine_for_mode(config.mode)
    catalog = build_catalog(space, engine)
    payload = {
        "space": space.describe(),
        "mode": config.mode,
        "dims": catalog.dims(),
    }
    _emit(payload, config.fmt)
    return 0


def cmd_verify(config: RunConfig, claim: str) -> int:
    if claim not in CLAIMS:
        raise UsageError(f"unknown claim {claim!r}; known: {', '.join(sorted(CLAIMS))}")
    space = config.space()
    engine = engine_for_mode(config.mode)
    rep = run_claim(claim, space, engine)
    if config.fmt == "json":
        print(json.dumps(rep.to_json_dict(), indent=2, sort_keys=False))
    else:
        print(report.render_markdown(rep))
    return report.exit_code_for([rep])


def _builtin_form(space: ModelSpace, name: str) -> Tensor2:
    if name == "omega":
        return kaehler_form(space)
    if name == "opposed":
        return curvature.probe_opposed_form(space)
    if name == "aligned":
        return curvature.probe_aligned_form(space)
    raise UsageError(f"unknown form {name!r}; known: omega, opposed, aligned")


def cmd_eval(config: RunConfig, args) -> int:
    space = config.space()
    what = args.map
    if what in ("sigma", "psi"):
        psi = _builtin_form(space, args.psi)
        idx = _parse_indices(args.idx, 4, space.n)
        tensor = sigma(psi, space) if what == "sigma" else psi_map(psi, space)
        value = tensor[idx[0], idx[1], idx[2], idx[3]]
        payload = {
            "map": what,
            "form": args.psi,
            "indices_1based": [i + 1 for i in idx],
            "index_base": 0,
            "value": scalar_to_str(value),
        }
        _emit(payload, config.fmt)
        return 0
    if what == "invariant":
        perm = tuple(int(x) - 1 for x in args.perm.split(","))
        word = tuple(int(c) for c in args.word)
        theta_name = args.tensor
        if theta_name == "hxh":
            theta, phi = metric_tensor2(space), metric_tensor2(space)
        elif theta_name == "omegaxomega":
            theta, phi = kaehler_form(space), kaehler_form(space)
        else:
            raise UsageError("tensor must be hxh or omegaxomega")
        from .tensors import invariant_contraction_product

        value = invariant_contraction_product(theta, phi, perm, word, space)
        payload = {
            "map": "invariant",
            "tensor": theta_name,
            "perm_1based": [p + 1 for p in perm],
            "word": args.word,
            "value": scalar_to_str(value),
        }
        _emit(payload, config.fmt)
        return 0
    if what == "nijenhuis":
        plane = _parse_indices(args.plane, 2, space.n)
        xy = _parse_indices(args.xy, 2, space.n)
        slope = Fraction(args.slope)
        if slope == 0:
            twist_field = None
        else:
            twist_field = nijenhuis.twist(space, nijenhuis.linear_angle(slope), plane, args.rotation)
        patch = nijenhuis.standard_patch(space, twist_field)
        value = nijenhuis.nijenhuis_at(patch, xy[0], xy[1])
        payload = {
            "map": "nijenhuis",
            "plane_1based": [plane[0] + 1, plane[1] + 1],
            "directions_1based": [xy[0] + 1, xy[1] + 1],
            "rotation": args.rotation,
            "angle_slope": scalar_to_str(slope),
            "terms": [[scalar_to_str(v) for v in t] for t in value.terms],
            "total": [scalar_to_str(v) for v in value.total],
        }
        _emit(payload, config.fmt)
        return 0
    raise UsageError(f"unknown map {what!r}")


def cmd_sweep(config: RunConfig, args) -> int:
    try:
        ns = [int(x) for x in args.ns.split(",")] if args.ns else []
    except ValueError as exc:
        raise UsageError(f"bad dimension list {args.ns!r}") from exc
    kinds = [k.strip() for k in args.kinds.split(",")] if args.kinds else []
    claims = [c.strip() for c in args.claims.split(",")]
    for c in claims:
        if c not in CLAIMS:
            raise UsageError(f"unknown claim {c!r}")
    engine = engine_for_mode(config.mode)
    cells = []
    overall = 0
    for n in ns:
        for kind in kinds:
            if kind not in ("complex", "para"):
                raise UsageError("sweep kinds must be complex and/or para")
            space = make_standard(n, kind)
            for claim in claims:
                cell = {
                    "n": n,
                    "kind": kind,
                    "signature": list(space.signature),
                    "claim": claim,
                    "mode": config.mode,
                }
                try:
                    rep = run_claim(claim, space, engine)
                except ValueError as exc:
                    cell["status"] = f"skipped ({exc})"
                    cells.append(cell)
                    continue
                if rep.verdict and "gap" in rep.quantities:
                    cell["status"] = "pass (expected failure exhibited)"
                elif rep.verdict:
                    cell["status"] = "pass"
                else:
                    cell["status"] = "fail"
                    overall = 1
                cells.append(cell)
    payload = {"mode": config.mode, "cells": cells}
    if config.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        lines = ["| n | kind | signature | claim | status |", "| - | - | - | - | - |"]
        for c in cells:
            lines.append(f"| {c['n']} | {c['kind']} | {c['signature']} | {c['claim']} | {c['status']} |")
        print("\n".join(lines))
    return overall


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=6, help="dimension of the model space")
    common.add_argument("--kind", choices=("complex", "para", "none"), default="complex")
    common.add_argument("--sig", default=None, help="signature p,q (defaults: definite / neutral)")
    common.add_argument("--eps", default=None, help="explicit diagonal sign layout, e.g. +,-,+,-")
    common.add_argument("--mode", default="exact", help="exact (default) or float:<tol>")
    common.add_argument("--format", choices=("json", "md"), default="json")

    parser = argparse.ArgumentParser(
        prog="curvlab",
        description="exact curvature-tensor decomposition laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("dims", parents=[common], help="dimension table of every cataloged subspace")

    p_verify = sub.add_parser("verify", parents=[common], help="run one claim verifier")
    p_verify.add_argument("claim", help=f"one of: {', '.join(sorted(CLAIMS))}")

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate one map at explicit arguments")
    p_eval.add_argument("map", choices=("sigma", "psi", "invariant", "nijenhuis"))
    p_eval.add_argument("--psi", default="omega", help="form for sigma/psi: omega | opposed | aligned")
    p_eval.add_argument("--idx", default="1,4,3,1", help="four 1-based indices i,j,k,l")
    p_eval.add_argument("--perm", default="1,2,3,4", help="slot pairing for invariant contractions")
    p_eval.add_argument("--word", default="00", help="pair word, e.g. 00 or 11")
    p_eval.add_argument("--tensor", default="hxh", help="product tensor: hxh | omegaxomega")
    p_eval.add_argument("--plane", default="1,3", help="twist plane for nijenhuis")
    p_eval.add_argument("--xy", default="1,3", help="probe directions for nijenhuis")
    p_eval.add_argument("--slope", default="1", help="angle slope at the origin")
    p_eval.add_argument("--rotation", choices=("circular", "hyperbolic"), default="circular")

    p_sweep = sub.add_parser("sweep", parents=[common], help="cartesian sweep of claims")
    p_sweep.add_argument("--ns", default="4,6", help="dimensions, e.g. 4,6")
    p_sweep.add_argument("--kinds", default="complex,para")
    p_sweep.add_argument("--claims", default="thm1.5")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command == "dims":
            return cmd_dims(config)
        if args.command == "verify":
            return cmd_verify(config, args.claim)
        if args.command == "eval":
            return cmd_eval(config, args)
        if args.command == "sweep":
            return cmd_sweep(config, args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
