"""Command-line front end.

Exit codes: 0 when every check passes, 1 when some axiom check fails,
2 for unreadable input or validation errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import documents, library, setcore, tannaka, vncore
from .documents import ParseError
from .setcore import SizeError
from .tannaka import ValidationError
from .vncore import CheckReport, CheckResult, NotAGroupError

log = logging.getLogger("vncheck")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

REPORT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["command", "input", "passed", "sections"],
    "properties": {
        "command": {"type": "string"},
        "input": {"type": "string"},
        "passed": {"type": "boolean"},
        "warnings": {"type": "array", "items": {"type": "string"}},
        "sections": {"type": "array", "items": {
            "type": "object",
            "additionalProperties": False,
            "required": ["name", "passed", "checks"],
            "properties": {
                "name": {"type": "string"},
                "passed": {"type": "boolean"},
                "error": {"type": ["string", "null"]},
                "seconds": {"type": "number"},
                "info": {"type": "object"},
                "checks": {"type": "array", "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["name", "passed", "anchor"],
                    "properties": {
                        "name": {"type": "string"},
                        "passed": {"type": "boolean"},
                        "anchor": {"type": "string"},
                        "witness": {"type": "object"},
                        "detail": {"type": "string"},
                    },
                }},
            },
        }},
    },
}


@dataclass
class Section:
    name: str
    report: CheckReport = field(default_factory=CheckReport)
    error: str | None = None
    seconds: float = 0.0
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.error is None and self.report.passed

    def to_dict(self, timing: bool = True) -> dict:
        d = {"name": self.name, "passed": self.passed, "error": self.error,
             "checks": [r.to_dict() for r in self.report.results]}
        if self.info:
            d["info"] = self.info
        if timing:
            d["seconds"] = round(self.seconds, 6)
        return d


@dataclass
class Report:
    command: str
    input: str
    sections: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    input_error: bool = False

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections)

    @property
    def exit_code(self) -> int:
        if self.input_error:
            return EXIT_INPUT
        return EXIT_OK if self.passed else EXIT_FAIL

    def to_dict(self, timing: bool = True) -> dict:
        d = {"command": self.command, "input": self.input, "passed": self.passed,
             "sections": [s.to_dict(timing) for s in self.sections]}
        if self.warnings:
            d["warnings"] = list(self.warnings)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, ensure_ascii=False)

    def render(self) -> str:
        lines = []
        for s in self.sections:
            status = "PASS" if s.passed else "FAIL"
            extra = "".join(f" {k}={v}" for k, v in s.info.items())
            lines.append(f"[{status}] {s.name}{extra}")
            for r in s.report.results:
                mark = "ok  " if r.passed else "FAIL"
                lines.append(f"    {mark} {r.name}  ({r.anchor})" if r.anchor else f"    {mark} {r.name}")
                if not r.passed:
                    if r.witness:
                        lines.append(f"         witness: {json.dumps(r.witness, ensure_ascii=False)}")
                    if r.detail:
                        lines.append(f"         {r.detail}")
            if s.error:
                lines.append(f"    error: {s.error}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _timed(name: str, fn) -> Section:
    sec = Section(name)
    t0 = time.perf_counter()
    out = fn(sec)
    if isinstance(out, CheckReport):
        sec.report.extend(out)
    sec.seconds = time.perf_counter() - t0
    return sec


# -- check ----------------------------------------------------------------

def check_document(doc: dict, source: str = "<document>") -> Report:
    """Run the full check suite for one parsed document."""
    kind = doc["kind"]
    rep = Report("check", source)
    try:
        if kind == "vncore":
            v = documents.to_vncore(doc)
            rep.sections.append(_timed("vncore", lambda s: vncore.check_all(v)))
        elif kind == "hopf":
            h = documents.to_hopf(doc)
            rep.sections.extend(_hopf_sections(h))
        elif kind == "group":
            h = vncore.group_algebra(doc["table"], doc.get("labels", ()))
            rep.sections.extend(_hopf_sections(h))
        elif kind == "set_core":
            rep.sections.append(_timed("set_core", lambda s: _set_core_report(documents.to_set_core(doc))))
        elif kind == "tannaka":
            p, f = documents.to_presentation(doc)
            return tannaka_report(p, f, source, coend_only=False, command="check")
    except (ParseError, NotAGroupError, ValidationError) as exc:
        rep.input_error = True
        rep.sections.append(Section(kind, error=f"{type(exc).__name__}: {exc}"))
    return rep


def _hopf_sections(h) -> list[Section]:
    hopf = _timed("hopf_axioms", lambda s: vncore.check_hopf(h))
    out = [hopf]
    if hopf.passed:
        v = vncore.VNCoreData(vncore.AlgebraData(h.dim, h.mu, h.eta),
                              vncore.CoalgebraData(h.dim, h.delta, h.eps), h.antipode, h.labels)
        out.append(_timed("vncore", lambda s: vncore.check_all(v)))
    return out


def _set_core_report(v) -> CheckReport:
    rep = CheckReport()
    ok, witness = setcore.is_monoid(v.magma)
    rep.add(CheckResult("monoid", ok, "(A, μ, η) is a monoid",
                        None if ok else {"triple": list(witness)}))
    rep.add(CheckResult("counit", setcore.check_set_counit(v.coalgebra), "(A, δ, ε) with ε: A → 1"))
    rep.extend(setcore.check_set_core(v))
    return rep


# -- tannaka --------------------------------------------------------------

def tannaka_report(p, f, source: str, coend_only: bool = False, command: str = "tannaka") -> Report:
    rep = Report(command, source)
    result = tannaka.run_pipeline(p, f, coend_only=coend_only)
    for st in result.stages:
        sec = Section(st.stage, st.report, st.error, st.seconds)
        if st.stage == "compute_coend" and result.coend is not None:
            sec.info["dim"] = result.coend.dim
        rep.sections.append(sec)
    err = result.error_stage
    if err is not None and err.stage == "validate":
        rep.input_error = True
    return rep


def _load_presentation(arg: str):
    if arg.startswith("builtin:"):
        name = arg.split(":", 1)[1]
        if name == "z2_representations":
            return library.z2_representations(), None
        if name not in library.MONOIDAL:
            raise ParseError(f"unknown built-in {name!r}; have {sorted(library.MONOIDAL)} and z2_representations")
        return library.MONOIDAL[name]()
    doc = documents.load(arg)
    if doc["kind"] != "tannaka":
        raise ParseError(f"expected a 'tannaka' document, got {doc['kind']!r}")
    return documents.to_presentation(doc)


# -- enumerate ------------------------------------------------------------

def enumerate_report(n: int, workers: int = 1) -> tuple[Report, dict]:
    rep = Report("enumerate", f"n={n}")
    data = {}

    def run(sec):
        data.update(setcore.census(n, workers))
        sec.info.update({"monoids": data["monoid_tables"], "groups": data["group_tables"],
                         "classes": data["isomorphism_classes"], "backend": data["backend"]})
        r = CheckReport()
        anchor = "unital VN-cores in Set are groups"
        r.add(CheckResult("matches_group_oracle", data["matches_group_oracle"], anchor,
                          detail=f"{len(data['unital_core_tables'])} tables vs {data['group_tables']} groups"))
        r.add(CheckResult("unique_antipode_is_inverse", data["unique_antipode_is_inverse"], anchor))
        return r

    rep.sections.append(_timed(f"census n={n}", run))
    return rep, data


# -- examples -------------------------------------------------------------

def _example_registry() -> dict:
    reg = {}
    for name in ("Z2", "Z3", "S3", "Z4", "V4", "Z5", "Z6"):
        table, labels = vncore.small_groups()[name]
        reg[f"hopf:{name}"] = ("hopf", (table, labels))
    reg["vncore:trivial"] = ("vncore", None)
    for name in library.MONOIDAL:
        reg[f"tannaka:{name}"] = ("tannaka", name)
    reg["coend:z2_representations"] = ("coend", 2)
    for n in range(1, setcore.MAX_SIZE + 1):
        reg[f"set:{n}"] = ("set", n)
    return reg


EXAMPLES = tuple(_example_registry())


def run_examples(names=None, perturb: tuple[str, str] | None = None) -> Report:
    reg = _example_registry()
    names = list(EXAMPLES) if names is None else list(names)
    rep = Report("examples", ",".join(names))
    if not names:
        rep.warnings.append("no examples selected; vacuous pass")
        return rep
    for name in names:
        if name not in reg:
            raise ParseError(f"unknown example {name!r}")
        kind, arg = reg[name]
        if kind == "hopf":
            h = vncore.group_algebra(*arg)
            secs = _hopf_sections(h)
            for s in secs:
                s.name = f"{name} {s.name}"
            rep.sections.extend(secs)
        elif kind == "vncore":
            rep.sections.append(_timed(name, lambda s: vncore.check_all(vncore.trivial_core())))
        elif kind == "tannaka":
            p, f = library.MONOIDAL[arg]()
            if perturb is not None and perturb[0] == arg:
                f = library.perturb_Ue(f, p.index(perturb[1]))
            sub = tannaka_report(p, f, name)
            for s in sub.sections:
                s.name = f"{name} {s.name}"
            rep.sections.extend(sub.sections)
        elif kind == "coend":
            def coend(sec, expected=arg):
                E = tannaka.compute_coend(library.z2_representations())
                sec.info["dim"] = E.dim
                r = CheckReport()
                r.add(CheckResult("coend_dim", E.dim == expected, "∫^B U(B)*⊗UB",
                                  detail=f"dim E = {E.dim}, expected {expected}"))
                return r
            rep.sections.append(_timed(name, coend))
        elif kind == "set":
            sub, _ = enumerate_report(arg)
            for s in sub.sections:
                s.name = f"{name} {s.name}"
            rep.sections.extend(sub.sections)
    return rep


# -- argument handling ----------------------------------------------------

def _emit(rep: Report, args) -> int:
    if getattr(args, "report", None):
        Path(args.report).write_text(rep.to_json() + "\n")
    if args.json:
        print(rep.to_json())
    else:
        print(rep.render())
    return rep.exit_code


def _input_error(command: str, source: str, exc: Exception, args) -> int:
    rep = Report(command, source, input_error=True)
    rep.sections.append(Section("input", error=f"{type(exc).__name__}: {exc}"))
    _emit(rep, args)
    return EXIT_INPUT


def cmd_check(args) -> int:
    try:
        doc = documents.load(args.file)
    except ParseError as exc:
        return _input_error("check", args.file, exc, args)
    return _emit(check_document(doc, args.file), args)


def cmd_enumerate(args) -> int:
    try:
        rep, data = enumerate_report(args.size, args.workers)
    except SizeError as exc:
        return _input_error("enumerate", f"n={args.size}", exc, args)
    if args.census:
        Path(args.census).write_text(json.dumps(data, indent=2) + "\n")
    return _emit(rep, args)


def cmd_tannaka(args) -> int:
    try:
        p, f = _load_presentation(args.file)
    except (ParseError, ValidationError) as exc:
        return _input_error("tannaka", args.file, exc, args)
    if f is None and p.monoidal and not args.coend_only:
        return _input_error("tannaka", args.file,
                            ParseError("monoidal document without 'functor'; use --coend-only"), args)
    return _emit(tannaka_report(p, f, args.file, coend_only=args.coend_only or not p.monoidal), args)


def cmd_examples(args) -> int:
    names = None
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
            names = cfg["examples"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            return _input_error("examples", args.config, ParseError(f"bad config: {exc}"), args)
    if args.only:
        names = args.only
    perturb = None
    if args.perturb:
        example, _, obj = args.perturb.partition(":")
        perturb = (example, obj)
    try:
        rep = run_examples(names, perturb)
    except (ParseError, ValidationError) as exc:
        return _input_error("examples", args.config or "built-in", exc, args)
    for w in rep.warnings:
        log.warning(w)
    return _emit(rep, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vncheck", description="VN-core checks and the Tannaka coend construction")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the check suite on a JSON document")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="census of unital VN-cores on a finite set")
    p.add_argument("--size", "-n", type=int, required=True)
    p.add_argument("--census", help="write the census JSON here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("tannaka", help="build End^∨U from a presentation (file or builtin:NAME)")
    p.add_argument("file")
    p.add_argument("--coend-only", action="store_true", help="stop after computing the coend")
    p.add_argument("--report", help="also write the JSON report here")
    p.set_defaults(func=cmd_tannaka)

    p = sub.add_parser("examples", help="run the built-in example suite")
    p.add_argument("--only", action="append", metavar="NAME", choices=EXAMPLES)
    p.add_argument("--config", help='JSON file {"examples": [names]}')
    p.add_argument("--perturb", metavar="EXAMPLE:OBJECT",
                   help="flip the sign of Ue at OBJECT in the named tannaka example")
    p.set_defaults(func=cmd_examples)

    for p in sub.choices.values():
        p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
