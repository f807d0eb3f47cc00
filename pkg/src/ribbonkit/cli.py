"""Command-line interface: ``ribbonkit <command> <category> [options]``.

``<category>`` is a path to a JSON category file or the name of a built-in
category.  Exit codes: 0 all checks pass, 1 a check fails, 2 malformed input
or unsupported request.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import io, zoo
from .dagger import (
    DaggerStructure, SearchUnsupportedError, check_dagger_axioms, classify_positivity,
    count_dagger_compatible_braidings, unitarity_violation,
)
from .fusion_ring import MalformedInputError
from .modular import check_center, s_t_matrices, s_tilde_from_traces
from .reports import ValidationReport
from .scalar import DEFAULT_TOL
from .skeletal import InvalidDataError, MissingEntryError, check_all, default_pivotal
from .spherical import RankCapError, check_sphericality
from .tqft import (
    IntegralityError, NonModularError, SurfaceSpec, SurgerySpec, closed_invariant,
    state_space_dim, torus_mcg_check, verlinde_value,
)
from .treecalc import EmptyHomSpaceError, StrandCapError, braid_rep

COMMANDS = ("verify", "center", "modular", "classify", "spherical", "braid", "tqft")


class UsageError(ValueError):
    pass


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _matrix(m) -> list:
    return [[_pair(x) for x in row] for row in np.asarray(m)]


def _resolve(category: str):
    """Load a file, or a built-in by name; returns (data, dagger, digest)."""
    path = Path(category)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        data, dag = io.load_text(text)
    elif category in zoo.NAMES:
        entry = zoo.builtin(category)
        data, dag = entry.data, entry.dagger
        text = io.dumps(io.export_document(data, dag))
    else:
        raise UsageError(f"'{category}' is neither a file nor a built-in ({', '.join(zoo.NAMES)})")
    data.check_complete()
    return data, dag or DaggerStructure.canonical(), io.digest(text)


def _needs_braiding(data):
    if not data.braided or data.twist is None:
        raise UsageError("this command needs R-symbols and twists")


# -- commands ------------------------------------------------------------------------------

def cmd_verify(data, dag, args) -> tuple[list, dict]:
    data = default_pivotal(data)
    reports = check_all(data, args.tol)
    reports.append(check_dagger_axioms(data, dag, args.tol))
    return reports, {}


def cmd_center(data, dag, args):
    _needs_braiding(data)
    rep = check_center(data, args.tol, dag)
    check = ValidationReport("center_criteria")
    check.record("channel_vs_s", ("center",), rep.criteria_agree)
    return [check], {"center_report": rep.to_dict()}


def cmd_modular(data, dag, args):
    _needs_braiding(data)
    md = s_t_matrices(data)
    cross = ValidationReport("s_matrix_trace")
    S2 = s_tilde_from_traces(data)
    S1 = md.s_complex()
    for a in range(data.rank):
        for b in range(data.rank):
            cross.record("s_entry", (a, b), abs(S1[a, b] - complex(S2[a, b])) <= args.tol,
                         S1[a, b], complex(S2[a, b]))
    reports = [cross, torus_mcg_check(data, args.tol, md)]
    results = {
        "dimensions": [_pair(d) for d in md.qdims],
        "global_dim_sq": _pair(md.global_dim_sq),
        "s_tilde": _matrix(S1),
        "t": [_pair(x) for x in np.diag(md.t_complex())],
        "gauss_plus": _pair(md.gauss_plus),
        "gauss_minus": _pair(md.gauss_minus),
        "modular": md.is_modular(args.tol),
    }
    return reports, results


def cmd_classify(data, dag, args):
    res = classify_positivity(default_pivotal(data), dag, args.tol)
    results = {"classification": res.to_dict()}
    if args.braidings:
        bc = count_dagger_compatible_braidings(data, dag, args.tol)
        results["braidings"] = {
            "mode": bc.mode,
            "count": bc.count,
            "compatible_count": bc.compatible_count,
            "solutions": [{
                "R": [[*k, _pair(v)] for k, v in sorted(s.R.items())],
                "compatible": s.compatible,
                "max_violation": float(f"{s.max_violation:.3e}"),
            } for s in bc.solutions],
        }
    return [], results


def cmd_spherical(data, dag, args):
    rep = check_sphericality(data, args.tol)
    mono = ValidationReport("pivotal_monoidality")
    from .spherical import enumerate_pivotal
    for k, piv in enumerate(enumerate_pivotal(data)):
        mono.record("monoidal", (k,), piv.satisfies_monoidality(data.ring, args.tol))
    return [mono], {"sphericality": rep.to_dict()}


def cmd_braid(data, dag, args):
    if not data.braided:
        raise UsageError("braid needs R-symbols")
    if args.anyons is None or args.type is None or args.charge is None:
        raise UsageError("braid needs --anyons, --type and --charge")
    gens = braid_rep(args.anyons, args.type, args.charge, data)
    rel = ValidationReport("braid_relations")
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i + 1]
        rel.record("yang_baxter", (i + 1,), (a @ b @ a).allclose(b @ a @ b, args.tol))
    for i in range(len(gens)):
        for j in range(i + 2, len(gens)):
            rel.record("far_commutation", (i + 1, j + 1),
                       (gens[i] @ gens[j]).allclose(gens[j] @ gens[i], args.tol))
    viol = [unitarity_violation(g, dag) for g in gens]
    plain = [unitarity_violation(g, DaggerStructure.canonical()) for g in gens]
    results = {
        "dimension": len(gens[0].source) if gens else 0,
        "generators": [_matrix(g.to_complex().entries) for g in gens],
        "unitarity_violation": [float(f"{v:.3e}") for v in viol],
        "plain_unitarity_violation": [float(f"{v:.3e}") for v in plain],
        "unitary": all(v <= args.tol for v in viol),
    }
    return [rel], results


def cmd_tqft(data, dag, args):
    _needs_braiding(data)
    if args.genus is None and args.surgery is None:
        raise UsageError("tqft needs --genus and/or --surgery")
    md = s_t_matrices(data)
    results, reports = {}, []
    if args.genus is not None:
        punct = tuple(p for p in (args.punctures or "").split(",") if p)
        for p in punct:
            data.ring.index(p)
        surf = SurfaceSpec(args.genus, punct)
        integral = ValidationReport("integrality")
        val = verlinde_value(surf, data, md)
        results["verlinde_value"] = _pair(val)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                results["state_space_dim"] = state_space_dim(surf, data, md)
                integral.record("integral", (args.genus, *punct), True)
            except IntegralityError:
                integral.record("integral", (args.genus, *punct), False)
        results["modular"] = md.is_modular(args.tol)
        reports.append(integral)
    if args.surgery is not None:
        try:
            fr = tuple(int(x) for x in args.surgery.split(",") if x.strip())
        except ValueError:
            raise UsageError(f"--surgery expects comma-separated integers, got {args.surgery!r}") from None
        rep = closed_invariant(SurgerySpec(fr, chain=args.chain), data, md)
        results["closed_invariant"] = rep.to_dict()
    return reports, results


HANDLERS = {
    "verify": cmd_verify, "center": cmd_center, "modular": cmd_modular, "classify": cmd_classify,
    "spherical": cmd_spherical, "braid": cmd_braid, "tqft": cmd_tqft,
}


# -- documents -------------------------------------------------------------------------------

def build_document(command, data, digest, tol, reports, results) -> dict:
    labels = data.ring.labels
    checks = [r.to_dict(labels) for r in reports]
    return {
        "command": command,
        "category": data.name,
        "input_sha256": digest,
        "tolerance": tol,
        "verdict": "pass" if all(r.passed for r in reports) else "fail",
        "checks": checks,
        "results": results,
    }


def render_human(doc: dict) -> str:
    lines = [f"{doc['command']} {doc['category']}: {doc['verdict'].upper()}"]
    for c in doc["checks"]:
        line = f"  {c['name']}: {c['verdict']} ({c['checked']} checked, max residual {c['max_residual']:.1e})"
        lines.append(line)
        for w in c["witnesses"][:5]:
            extra = f" lhs={w['lhs']} rhs={w['rhs']}" if "lhs" in w else ""
            lines.append(f"    failing {w['kind']} {w['key']}{extra}")
    for key, val in doc["results"].items():
        lines.append(f"  {key}: {json.dumps(val, sort_keys=True)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("category", help="category file (JSON) or built-in name")
        s.add_argument("--format", choices=("human", "json"), default="human")
        s.add_argument("--tol", type=float, default=DEFAULT_TOL)
        if name == "classify":
            s.add_argument("--braidings", action="store_true",
                           help="also enumerate braidings and their dagger compatibility")
        if name == "braid":
            s.add_argument("--anyons", type=int)
            s.add_argument("--type")
            s.add_argument("--charge")
        if name == "tqft":
            s.add_argument("--genus", type=int)
            s.add_argument("--punctures")
            s.add_argument("--surgery")
            s.add_argument("--chain", action="store_true",
                           help="read --surgery framings as a linear Hopf chain")
    z = sub.add_parser("zoo")
    z.add_argument("action", choices=("list", "export"))
    z.add_argument("name", nargs="?")
    z.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.command == "zoo":
            return _zoo(args)
        t0 = time.perf_counter()
        data, dag, digest = _resolve(args.category)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            reports, results = HANDLERS[args.command](data, dag, args)
        doc = build_document(args.command, data, digest, args.tol, reports, results)
    except (MalformedInputError, MissingEntryError, InvalidDataError, UsageError, KeyError,
            SearchUnsupportedError, StrandCapError, EmptyHomSpaceError, NonModularError,
            RankCapError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        print(render_human(doc))
        print(f"  ({time.perf_counter() - t0:.2f} s)")
    return 0 if doc["verdict"] == "pass" else 1


def _zoo(args) -> int:
    if args.action == "list":
        for name in zoo.NAMES:
            e = zoo.builtin(name)
            print(f"{name}\trank {e.data.rank}\t{e.data.mode}\t{', '.join(e.data.ring.labels)}")
        return 0
    if not args.name:
        raise UsageError("zoo export needs a name")
    entry = zoo.builtin(args.name)
    text = io.dumps(io.export_document(entry.data, entry.dagger))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
