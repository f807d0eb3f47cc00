"""JSON category files: load into skeletal data and export built-ins."""
from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .dagger import DaggerStructure
from .fusion_ring import FusionRing, MalformedInputError, find_unit
from .scalar import Cyclotomic, is_exact, to_exact
from .skeletal import SkeletalData

REQUIRED = ("name", "rank", "labels", "dual", "fusion", "scalar_mode", "F")


def parse_value(obj, where: str, mode: str, conductor: int | None):
    """``{"cyc": [[k, "p/q"], ...]}`` or ``{"re": x, "im": y}``."""
    if not isinstance(obj, dict):
        raise MalformedInputError(f"{where}: value must be an object, got {obj!r}")
    if "cyc" in obj:
        if not conductor:
            raise MalformedInputError(f"{where}: cyclotomic value needs a top-level conductor")
        try:
            coeffs = {}
            for k, q in obj["cyc"]:
                k = int(k)
                coeffs[k % conductor] = coeffs.get(k % conductor, Fraction(0)) + Fraction(str(q))
            val = Cyclotomic(conductor, coeffs)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"{where}: bad cyclotomic value {obj!r} ({exc})") from None
        return val if mode == "exact" else complex(val)
    if "re" in obj or "im" in obj:
        if mode == "exact":
            raise MalformedInputError(f"{where}: floating value in an exact-mode file")
        try:
            return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
        except (TypeError, ValueError):
            raise MalformedInputError(f"{where}: bad numeric value {obj!r}") from None
    raise MalformedInputError(f"{where}: value needs 'cyc' or 're'/'im'")


def _int_list(doc, key, length=None) -> list[int]:
    v = doc[key]
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise MalformedInputError(f"field '{key}' must be a list of integers")
    if length is not None and len(v) != length:
        raise MalformedInputError(f"field '{key}' has length {len(v)}, expected {length}")
    return v


def load_document(doc: dict) -> tuple[SkeletalData, DaggerStructure | None]:
    """Parse a decoded category file."""
    if not isinstance(doc, dict):
        raise MalformedInputError("top level must be a JSON object")
    for key in REQUIRED:
        if key not in doc:
            raise MalformedInputError(f"missing required field '{key}'")
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise MalformedInputError("field 'rank' must be a positive integer")
    labels = doc["labels"]
    if not isinstance(labels, list) or len(labels) != rank or not all(isinstance(l, str) for l in labels):
        raise MalformedInputError(f"field 'labels' must list {rank} strings")
    dual = _int_list(doc, "dual", rank)
    mode = doc["scalar_mode"]
    if mode not in ("exact", "approx"):
        raise MalformedInputError("field 'scalar_mode' must be 'exact' or 'approx'")
    conductor = doc.get("conductor")
    if mode == "exact" and (not isinstance(conductor, int) or conductor < 1):
        raise MalformedInputError("exact mode needs a positive integer 'conductor'")

    N = np.zeros((rank, rank, rank), dtype=np.int64)
    for i, entry in enumerate(doc["fusion"]):
        if not (isinstance(entry, list) and len(entry) == 4 and all(isinstance(x, int) for x in entry)):
            raise MalformedInputError(f"fusion[{i}] must be [a, b, c, N]")
        a, b, c, m = entry
        if not all(0 <= x < rank for x in (a, b, c)) or m < 0:
            raise MalformedInputError(f"fusion[{i}] = {entry} out of range")
        N[a, b, c] = m
    if not all(0 <= d < rank for d in dual):
        raise MalformedInputError("field 'dual' has an index out of range")

    # move the unit to index 0 and renumber every index accordingly
    u = find_unit(N)
    perm = list(range(rank)) if u in (None, 0) else [u] + [i for i in range(rank) if i != u]
    new = {old: k for k, old in enumerate(perm)}
    ring = FusionRing(tuple(labels[p] for p in perm), tuple(new[dual[p]] for p in perm),
                      N[np.ix_(perm, perm, perm)])

    def idx(entry, n, field_name, i):
        if not isinstance(entry, list) or len(entry) != n + 1:
            raise MalformedInputError(f"{field_name}[{i}] must have {n} indices and a value")
        ks = entry[:n]
        if not all(isinstance(k, int) and 0 <= k < rank for k in ks):
            raise MalformedInputError(f"{field_name}[{i}] has an index out of range: {ks}")
        return tuple(new[k] for k in ks)

    F = {}
    for i, entry in enumerate(doc["F"]):
        key = idx(entry, 6, "F", i)
        F[key] = parse_value(entry[6], f"F{list(entry[:6])}", mode, conductor)
    R = None
    if doc.get("R") is not None:
        R = {}
        for i, entry in enumerate(doc["R"]):
            key = idx(entry, 3, "R", i)
            R[key] = parse_value(entry[3], f"R{list(entry[:3])}", mode, conductor)

    def vector(key):
        v = doc.get(key)
        if v is None:
            return None
        if not isinstance(v, list) or len(v) != rank:
            raise MalformedInputError(f"field '{key}' must have {rank} values")
        vals = [parse_value(x, f"{key}[{i}]", mode, conductor) for i, x in enumerate(v)]
        return tuple(vals[p] for p in perm)

    data = SkeletalData(ring, F, R, vector("twist"), vector("pivotal"), name=str(doc["name"]), mode=mode)
    dag = None
    if doc.get("dagger_phases") is not None:
        phases = {}
        for i, entry in enumerate(doc["dagger_phases"]):
            key = idx(entry, 3, "dagger_phases", i)
            phases[key] = parse_value(entry[3], f"dagger_phases{list(entry[:3])}", mode, conductor)
        dag = DaggerStructure(phases)
    return data, dag


def load_text(text: str) -> tuple[SkeletalData, DaggerStructure | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    return load_document(doc)


def load_file(path) -> tuple[SkeletalData, DaggerStructure | None]:
    return load_text(Path(path).read_text(encoding="utf-8"))


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# -- export ----------------------------------------------------------------------------

def _conductor(values) -> int:
    n = 1
    for v in values:
        n = math.lcm(n, to_exact(v).conductor)
    return n


def _encode(v, exact: bool, conductor: int):
    if exact:
        c = to_exact(v).lift(conductor)
        return {"cyc": [[k, str(q)] for k, q in c.terms()]}
    z = complex(v)
    return {"re": z.real, "im": z.imag}


def export_document(data: SkeletalData, dag: DaggerStructure | None = None) -> dict:
    """Category file for ``data`` (all stored F entries, sorted by index tuple)."""
    ring = data.ring
    values = list(data.F.values())
    values += list(data.R.values()) if data.R else []
    values += list(data.twist or ()) + list(data.pivotal or ())
    phases = dict(dag.phases) if dag is not None else {}
    exact = data.exact and all(is_exact(v) for v in phases.values())
    conductor = _conductor(values + list(phases.values())) if exact else None
    enc = lambda v: _encode(v, exact, conductor)  # noqa: E731
    doc = {
        "name": data.name,
        "rank": ring.rank,
        "labels": list(ring.labels),
        "dual": list(ring.dual),
        "fusion": [[a, b, c, int(ring.N[a, b, c])] for a, b, c in ring.channels()],
        "scalar_mode": "exact" if exact else "approx",
        "F": [[*k, enc(data.F[k])] for k in sorted(data.F)],
    }
    if exact:
        doc["conductor"] = conductor
    if data.R is not None:
        doc["R"] = [[*k, enc(data.R[k])] for k in sorted(data.R)]
    if data.twist is not None:
        doc["twist"] = [enc(v) for v in data.twist]
    if data.pivotal is not None:
        doc["pivotal"] = [enc(v) for v in data.pivotal]
    if dag is not None:
        doc["dagger_phases"] = [[*k, enc(phases[k])] for k in sorted(phases)]
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
