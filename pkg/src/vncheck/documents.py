"""JSON input documents.

Every document is an object with a ``"kind"`` field.  Matrices are
row-major arrays whose entries are integers or strings ``"p"`` / ``"p/q"``;
floats are rejected.  Unknown fields are rejected.  See ``README.md`` for
examples of each kind.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import jsonschema

from .exactla import LinMap
from .setcore import SetCoalgebraCandidate, SetMagma, SetVNCore
from .tannaka import FunctorStructure, Generator, MonoidalPresentation, Relation
from .vncore import AlgebraData, AxiomError, CoalgebraData, HopfData, VNCoreData

KINDS = ("vncore", "hopf", "group", "set_core", "tannaka")


class ParseError(ValueError):
    pass


_RATIONAL = {"oneOf": [{"type": "integer"},
                       {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}]}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _RATIONAL}}
_NAT = {"type": "integer", "minimum": 0}
_TABLE = {"type": "array", "items": {"type": "array", "items": _NAT}}
_LABELS = {"type": "array", "items": {"type": "string"}}


def _obj(props: dict, required: list) -> dict:
    return {"type": "object", "properties": props, "required": required, "additionalProperties": False}


_KIND = lambda k: {"const": k}

SCHEMAS = {
    "vncore": _obj({"kind": _KIND("vncore"), "dim": _NAT, "labels": _LABELS, "mu": _MATRIX,
                    "eta": _MATRIX, "delta": _MATRIX, "eps": _MATRIX, "S": _MATRIX},
                   ["kind", "dim", "mu", "eta", "delta", "eps", "S"]),
    "hopf": _obj({"kind": _KIND("hopf"), "dim": _NAT, "labels": _LABELS, "mu": _MATRIX,
                  "eta": _MATRIX, "delta": _MATRIX, "eps": _MATRIX, "antipode": _MATRIX},
                 ["kind", "dim", "mu", "eta", "delta", "eps", "antipode"]),
    "group": _obj({"kind": _KIND("group"), "table": _TABLE, "labels": _LABELS}, ["kind", "table"]),
    "set_core": _obj({"kind": _KIND("set_core"), "table": _TABLE, "unit": _NAT,
                      "left": {"type": "array", "items": _NAT}, "right": {"type": "array", "items": _NAT},
                      "S": {"type": "array", "items": _NAT}},
                     ["kind", "table", "unit", "S"]),
    "tannaka": _obj({
        "kind": _KIND("tannaka"),
        "objects": {"type": "array", "minItems": 1,
                    "items": _obj({"name": {"type": "string"}, "dim": _NAT}, ["name", "dim"])},
        "unit": {"type": "string"},
        "tensor": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
        "dual": {"type": "object", "additionalProperties": {"type": "string"}},
        "generators": {"type": "array", "items": _obj(
            {"name": {"type": "string"}, "source": {"type": "string"}, "target": {"type": "string"},
             "matrix": _MATRIX}, ["name", "source", "target", "matrix"])},
        "relations": {"type": "array", "items": _obj(
            {"lhs": {"type": "array", "items": {"type": "string"}},
             "rhs": {"type": "array", "items": {"type": "string"}}}, ["lhs", "rhs"])},
        "functor": _obj({
            "r": {"type": "array", "items": _obj({"left": {"type": "string"}, "right": {"type": "string"},
                                                   "matrix": _MATRIX}, ["left", "right", "matrix"])},
            "i": {"type": "array", "items": _obj({"left": {"type": "string"}, "right": {"type": "string"},
                                                   "matrix": _MATRIX}, ["left", "right", "matrix"])},
            "r0": _MATRIX, "i0": _MATRIX,
            "u": {"type": "array", "items": _obj({"object": {"type": "string"}, "matrix": _MATRIX},
                                                 ["object", "matrix"])},
            "Ue": {"type": "array", "items": _obj({"object": {"type": "string"}, "matrix": _MATRIX},
                                                  ["object", "matrix"])},
        }, ["r", "i", "r0", "i0", "u", "Ue"]),
    }, ["kind", "objects", "unit"]),
}


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"not an exact rational: {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}: {exc}") from None


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_matrix(rows, shape: tuple[int, int] | None = None) -> LinMap:
    if not rows:
        return LinMap(0, shape[1] if shape else 0)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("matrix rows have different lengths")
    m = LinMap(len(rows), width, [[parse_rational(x) for x in r] for r in rows])
    if shape is not None and m.shape != shape:
        raise ParseError(f"matrix has shape {m.shape}, expected {shape}")
    return m


def matrix_to_json(m: LinMap) -> list:
    return [[format_rational(x) for x in row] for row in m.tolist()]


def load(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    check_schema(doc)
    return doc


def check_schema(doc) -> None:
    if not isinstance(doc, dict) or doc.get("kind") not in KINDS:
        raise ParseError(f"document needs a 'kind' in {KINDS}")
    try:
        jsonschema.validate(doc, SCHEMAS[doc["kind"]])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"{doc['kind']} document invalid at {where}: {exc.message}") from None


# -- decoding -------------------------------------------------------------

def _n_shapes(n):
    return {"mu": (n, n * n), "eta": (n, 1), "delta": (n * n, n), "eps": (1, n)}


def to_vncore(doc: dict) -> VNCoreData:
    n = doc["dim"]
    m = {k: parse_matrix(doc[k], s) for k, s in _n_shapes(n).items()}
    S = parse_matrix(doc["S"], (n, n))
    try:
        return VNCoreData(AlgebraData(n, m["mu"], m["eta"]), CoalgebraData(n, m["delta"], m["eps"]),
                          S, tuple(doc.get("labels", ())))
    except AxiomError as exc:
        raise ParseError(str(exc)) from None


def to_hopf(doc: dict) -> HopfData:
    n = doc["dim"]
    m = {k: parse_matrix(doc[k], s) for k, s in _n_shapes(n).items()}
    return HopfData(n, m["mu"], m["eta"], m["delta"], m["eps"], parse_matrix(doc["antipode"], (n, n)),
                    tuple(doc.get("labels", ())))


def to_set_core(doc: dict) -> SetVNCore:
    table = doc["table"]
    n = len(table)
    ident = list(range(n))
    try:
        magma = SetMagma(n, tuple(tuple(r) for r in table), doc["unit"])
        coalg = SetCoalgebraCandidate(n, tuple(doc.get("left", ident)), tuple(doc.get("right", ident)))
        if any(len(x) != n or any(not 0 <= y < n for y in x) for x in (coalg.left, coalg.right, doc["S"])):
            raise ValueError("left, right and S must be maps on the carrier")
        return SetVNCore(magma, coalg, tuple(doc["S"]))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def to_presentation(doc: dict) -> tuple[MonoidalPresentation, FunctorStructure | None]:
    names = tuple(o["name"] for o in doc["objects"])
    dims = tuple(o["dim"] for o in doc["objects"])
    if len(set(names)) != len(names):
        raise ParseError("duplicate object names")
    index = {nm: k for k, nm in enumerate(names)}

    def ix(nm):
        if nm not in index:
            raise ParseError(f"unknown object {nm!r}")
        return index[nm]

    tensor = dual = None
    if "tensor" in doc:
        rows = doc["tensor"]
        if len(rows) != len(names) or any(len(r) != len(names) for r in rows):
            raise ParseError("tensor table must be square over the object list")
        tensor = tuple(tuple(ix(x) for x in r) for r in rows)
    if "dual" in doc:
        if set(doc["dual"]) != set(names):
            raise ParseError("dual table must list every object exactly once")
        dual = tuple(ix(doc["dual"][nm]) for nm in names)
    gens = tuple(Generator(g["name"], ix(g["source"]), ix(g["target"]),
                           parse_matrix(g["matrix"], (dims[ix(g["target"])], dims[ix(g["source"])])))
                 for g in doc.get("generators", ()))
    rels = tuple(Relation(tuple(r["lhs"]), tuple(r["rhs"])) for r in doc.get("relations", ()))
    p = MonoidalPresentation(names, dims, ix(doc["unit"]), tensor, dual, gens, rels)

    fd = doc.get("functor")
    if fd is None:
        return p, None

    def pairs(entries):
        out = {}
        for e in entries:
            key = (ix(e["left"]), ix(e["right"]))
            if key in out:
                raise ParseError(f"duplicate entry for ({e['left']},{e['right']})")
            out[key] = parse_matrix(e["matrix"])
        return out

    def per_object(entries):
        out = {}
        for e in entries:
            key = ix(e["object"])
            if key in out:
                raise ParseError(f"duplicate entry for {e['object']}")
            out[key] = parse_matrix(e["matrix"])
        return out

    f = FunctorStructure(pairs(fd["r"]), parse_matrix(fd["r0"]), pairs(fd["i"]), parse_matrix(fd["i0"]),
                         per_object(fd["u"]), per_object(fd["Ue"]))
    return p, f


# -- encoding -------------------------------------------------------------

def presentation_to_doc(p: MonoidalPresentation, f: FunctorStructure | None = None) -> dict:
    nm = p.objects
    doc = {"kind": "tannaka",
           "objects": [{"name": a, "dim": d} for a, d in zip(nm, p.dims)],
           "unit": nm[p.unit]}
    if p.tensor is not None:
        doc["tensor"] = [[nm[x] for x in row] for row in p.tensor]
    if p.dual is not None:
        doc["dual"] = {nm[a]: nm[b] for a, b in enumerate(p.dual)}
    if p.generators:
        doc["generators"] = [{"name": g.name, "source": nm[g.source], "target": nm[g.target],
                              "matrix": matrix_to_json(g.matrix)} for g in p.generators]
    if p.relations:
        doc["relations"] = [{"lhs": list(r.lhs), "rhs": list(r.rhs)} for r in p.relations]
    if f is not None:
        doc["functor"] = {
            "r": [{"left": nm[a], "right": nm[b], "matrix": matrix_to_json(m)} for (a, b), m in sorted(f.r.items())],
            "r0": matrix_to_json(f.r0),
            "i": [{"left": nm[a], "right": nm[b], "matrix": matrix_to_json(m)} for (a, b), m in sorted(f.i.items())],
            "i0": matrix_to_json(f.i0),
            "u": [{"object": nm[a], "matrix": matrix_to_json(m)} for a, m in sorted(f.u.items())],
            "Ue": [{"object": nm[a], "matrix": matrix_to_json(m)} for a, m in sorted(f.Ue.items())],
        }
    return doc


def vncore_to_doc(v: VNCoreData) -> dict:
    return {"kind": "vncore", "dim": v.dim, "labels": list(v.labels),
            "mu": matrix_to_json(v.algebra.mu), "eta": matrix_to_json(v.algebra.eta),
            "delta": matrix_to_json(v.coalgebra.delta), "eps": matrix_to_json(v.coalgebra.eps),
            "S": matrix_to_json(v.S)}


def hopf_to_doc(h: HopfData) -> dict:
    return {"kind": "hopf", "dim": h.dim, "labels": list(h.labels),
            "mu": matrix_to_json(h.mu), "eta": matrix_to_json(h.eta),
            "delta": matrix_to_json(h.delta), "eps": matrix_to_json(h.eps),
            "antipode": matrix_to_json(h.antipode)}
