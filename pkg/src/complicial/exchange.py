"""The textual exchange format.

Documents are canonical JSON: keys sorted, two-space indentation, simplices
ordered by dimension and then identifier.  Printing a parsed document gives
back the same text byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .lifting import CheckReport, LiftingProblem, Witness
from .omega import OmegaCat
from .orientals import CellMP
from .simplicial import ComplexMap, Inclusion, SimplexRef, StratifiedComplex, id_key, make_complex

FORMAT = "complicial"
VERSION = 1
KINDS = ("complex", "map", "omega-cat", "cells", "report")


class FormatError(ValueError):
    """Malformed or unsupported document."""


@dataclass
class Document:
    kind: str
    payload: Any


# -- printing ----------------------------------------------------------------------------


def _ref(r: SimplexRef):
    if not r.degeneracies:
        return r.target
    return {"target": r.target, "degeneracies": list(r.degeneracies)}


def complex_body(X: StratifiedComplex) -> dict:
    simplices = []
    for d, xs in enumerate(X.cells):
        for x in sorted(xs, key=id_key):
            simplices.append({
                "id": x,
                "dim": d,
                "faces": [_ref(f) for f in X.faces.get(x, ())],
                "marked": x in X.marking,
            })
    return {"name": X.name, "bound": X.dimension_bound, "simplices": simplices}


def map_body(m: ComplexMap) -> dict:
    return {
        "domain": complex_body(m.domain),
        "codomain": complex_body(m.codomain),
        "assignment": {x: _ref(m.assignment[x]) for x in sorted(m.assignment, key=id_key)},
    }


def omega_body(C: OmegaCat) -> dict:
    levels = []
    for n in range(C.level_bound):
        levels.append({
            "source": {str(x): str(C.source[n][x]) for x in C.elements},
            "target": {str(x): str(C.target[n][x]) for x in C.elements},
            "compose": sorted([str(a), str(b), str(ab)] for (a, b), ab in C.compose[n].items()),
        })
    return {"name": C.name, "elements": sorted(str(x) for x in C.elements), "levels": levels}


def _face_str(a) -> str:
    return "".join(map(str, a)) if all(v < 10 for v in a) else ".".join(map(str, a))


def cells_body(cells) -> dict:
    out = []
    for c in sorted(cells, key=lambda c: (c.dimension, str(c))):
        M, P = c.faces_list()
        out.append({"M": [_face_str(a) for a in M], "P": [_face_str(a) for a in P]})
    return {"cells": out}


def report_body(r: CheckReport) -> dict:
    body = {
        "check": r.check,
        "verdict": r.verdict,
        "bound": r.bound,
        "problems": r.problems,
        "details": r.details,
        "witness": None,
    }
    if r.witness is not None:
        w = r.witness
        body["witness"] = {
            "reason": w.reason,
            "inclusion": map_body(w.problem.inclusion.map),
            "target": complex_body(w.problem.target),
            "attempt": map_body(w.problem.attempt)["assignment"],
            "extensions": [map_body(e)["assignment"] for e in w.extensions],
        }
    return body


def to_document(obj) -> Document:
    if isinstance(obj, Document):
        return obj
    if isinstance(obj, StratifiedComplex):
        return Document("complex", obj)
    if isinstance(obj, Inclusion):
        return Document("map", obj.map)
    if isinstance(obj, ComplexMap):
        return Document("map", obj)
    if isinstance(obj, OmegaCat):
        return Document("omega-cat", obj)
    if isinstance(obj, CheckReport):
        return Document("report", obj)
    if isinstance(obj, (set, frozenset, list, tuple)) and all(isinstance(c, CellMP) for c in obj):
        return Document("cells", frozenset(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def print_document(obj) -> str:
    doc = to_document(obj)
    body = {
        "complex": complex_body,
        "map": map_body,
        "omega-cat": omega_body,
        "cells": cells_body,
        "report": report_body,
    }[doc.kind](doc.payload)
    data = {"format": FORMAT, "version": VERSION, "kind": doc.kind, **body}
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- parsing -----------------------------------------------------------------------------


def _fields(obj, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    for k in obj:
        if k not in allowed:
            raise FormatError(f"{where}: unknown field {k!r}")
    for k in required:
        if k not in obj:
            raise FormatError(f"{where}: missing field {k!r}")


def _parse_ref(r, where: str) -> SimplexRef:
    if isinstance(r, str):
        return SimplexRef(r)
    _fields(r, {"target", "degeneracies"}, {"target", "degeneracies"}, where)
    try:
        return SimplexRef(r["target"], tuple(int(j) for j in r["degeneracies"]))
    except (TypeError, ValueError) as e:
        raise FormatError(f"{where}: {e}") from None


def parse_complex(body: dict, where: str = "complex") -> StratifiedComplex:
    _fields(body, {"name", "bound", "simplices"}, {"bound", "simplices"}, where)
    bound = body["bound"]
    if not isinstance(bound, int) or bound < 0:
        raise FormatError(f"{where}: bound must be a non-negative integer")
    cells: list[list[str]] = [[] for _ in range(bound + 1)]
    faces, marking = {}, []
    for i, s in enumerate(body["simplices"]):
        at = f"{where}.simplices[{i}]"
        _fields(s, {"id", "dim", "faces", "marked"}, {"id", "dim"}, at)
        d = s["dim"]
        if not isinstance(d, int) or not 0 <= d <= bound:
            raise FormatError(f"{at}: dimension out of range")
        cells[d].append(s["id"])
        if d:
            faces[s["id"]] = [_parse_ref(f, f"{at}.faces") for f in s.get("faces", [])]
        if s.get("marked", False):
            marking.append(s["id"])
    return make_complex(cells, faces, marking, bound, body.get("name", ""))


def _parse_assignment(body, where: str) -> dict:
    if not isinstance(body, dict):
        raise FormatError(f"{where}: expected an object")
    return {k: _parse_ref(v, f"{where}.{k}") for k, v in body.items()}


def parse_map(body: dict, where: str = "map") -> ComplexMap:
    _fields(body, {"domain", "codomain", "assignment"}, {"domain", "codomain", "assignment"}, where)
    return ComplexMap(parse_complex(body["domain"], f"{where}.domain"),
                      parse_complex(body["codomain"], f"{where}.codomain"),
                      _parse_assignment(body["assignment"], f"{where}.assignment"))


def parse_omega(body: dict, where: str = "omega-cat") -> OmegaCat:
    _fields(body, {"name", "elements", "levels"}, {"elements", "levels"}, where)
    elems = tuple(sorted(body["elements"]))
    src, tgt, comp = [], [], []
    for n, lv in enumerate(body["levels"]):
        at = f"{where}.levels[{n}]"
        _fields(lv, {"source", "target", "compose"}, {"source", "target", "compose"}, at)
        src.append(dict(lv["source"]))
        tgt.append(dict(lv["target"]))
        table = {}
        for entry in lv["compose"]:
            if not isinstance(entry, list) or len(entry) != 3:
                raise FormatError(f"{at}.compose: entries are [a, b, a*b]")
            table[(entry[0], entry[1])] = entry[2]
        comp.append(table)
    return OmegaCat(elems, len(src), tuple(src), tuple(tgt), tuple(comp), body.get("name", ""))


def _parse_face(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in (text.split(".") if "." in text else text))


def parse_cells(body: dict, where: str = "cells") -> frozenset:
    _fields(body, {"cells"}, {"cells"}, where)
    out = []
    for i, c in enumerate(body["cells"]):
        _fields(c, {"M", "P"}, {"M", "P"}, f"{where}[{i}]")
        out.append(CellMP.of([_parse_face(a) for a in c["M"]], [_parse_face(a) for a in c["P"]]))
    return frozenset(out)


def parse_report(body: dict, where: str = "report") -> CheckReport:
    _fields(body, {"check", "verdict", "bound", "problems", "details", "witness"}, {"check", "verdict"}, where)
    witness = None
    w = body.get("witness")
    if w is not None:
        at = f"{where}.witness"
        _fields(w, {"reason", "inclusion", "target", "attempt", "extensions"},
                {"reason", "inclusion", "target", "attempt"}, at)
        inc_map = parse_map(w["inclusion"], f"{at}.inclusion")
        try:
            inc = Inclusion(inc_map)
        except ValueError as e:
            raise FormatError(f"{at}.inclusion: {e}") from None
        A = parse_complex(w["target"], f"{at}.target")
        attempt = ComplexMap(inc.domain, A, _parse_assignment(w["attempt"], f"{at}.attempt"))
        exts = tuple(ComplexMap(inc.codomain, A, _parse_assignment(e, f"{at}.extensions"))
                     for e in w.get("extensions", []))
        witness = Witness(LiftingProblem(inc, attempt), w["reason"], exts)
    return CheckReport(body["check"], body["verdict"], body.get("bound"), witness,
                       body.get("problems", 0), body.get("details") or {})


_PARSERS = {
    "complex": parse_complex,
    "map": parse_map,
    "omega-cat": parse_omega,
    "cells": parse_cells,
    "report": parse_report,
}


def parse(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise FormatError("line 1, column 1: a document is a JSON object")
    if data.get("format") != FORMAT:
        raise FormatError(f"not a {FORMAT} document")
    if data.get("version") != VERSION:
        raise FormatError(f"unsupported version {data.get('version')!r}")
    kind = data.get("kind")
    if kind not in _PARSERS:
        raise FormatError(f"unknown kind {kind!r}")
    body = {k: v for k, v in data.items() if k not in ("format", "version", "kind")}
    return Document(kind, _PARSERS[kind](body, kind))
