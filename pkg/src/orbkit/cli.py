"""Command-line entry point: fixture registry, subcommands and reports.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
malformed input (unknown command, missing fixture, schema mismatch or any
other library error).  Reports never contain timings, so identical inputs
give byte-identical machine reports.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import linalg as la
from .bimodules import Bimodule, relative_tensor, split_orbifold_datum, trace_and_qdim, zorro_check
from .errors import (
    FixtureNotFound,
    NoIsomorphismFound,
    NoSquareRootInField,
    NotAnOrbifoldDatum,
    NotFrobenius,
    NotSeparable,
    OrbkitError,
    SchemaVersionMismatch,
    UnknownCommand,
)
from .ew import ew_forward, ew_inverse, ew_roundtrip_check
from .frobenius import FrobeniusStructure, check_frobenius, euler_gamma, window_element, window_sqrt
from .fusioncat import (
    CYCategoryData,
    FusionData,
    ModuleCategoryData,
    SimpleFunctor,
    check_fusion,
    check_module_pentagon,
    check_module_trace,
    check_rigidity_strong,
    identity_adjunction,
    left_adjoint_from_trace,
)
from .rtdefects import (
    AlgebraObject,
    BimoduleOverPair,
    BraidedFusionData,
    PairStructure,
    bimodule_fixtures,
    check_bimodule_over_pair,
    check_commutative_frobenius,
    check_frobenius_over_pair,
    pair_fixtures,
)
from .scalars import NumberFieldElement, parse_scalar
from .statesum.complex import OrderedTriangulation
from .statesum.fhk import fhk_evaluate
from .statesum.orbifold import HOST_POLICIES, StratifiedComplex, orbifold_evaluate
from .statesum.pachner import pachner_invariance
from .statesum.statespace import cylinder_operator
from .statesum.tv import tv_evaluate

__all__ = ["FixtureRegistry", "Report", "run", "main", "pretty_scalar", "reciprocal_form", "COMMANDS"]

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# scalar rendering

def _parts(x):
    """``(A, B, c, d)`` with ``x = (A + B sqrt d) / c`` and integers ``A, B, c``."""
    x = x if isinstance(x, NumberFieldElement) else parse_scalar(str(x))
    a, b = Fraction(x.a), Fraction(x.b)
    c = math.lcm(a.denominator, b.denominator)
    return int(a * c), int(b * c), c, x.d


def _numerator(A, B, d, unicode=True):
    if not B:
        return str(A)
    root = f"√{d}" if unicode else f"sqrt({d})"
    rad = root if abs(B) == 1 else f"{abs(B)}{root}"
    if not A:
        return rad if B > 0 else f"-{rad}"
    return f"{A}{'+' if B > 0 else '-'}{rad}"


def pretty_scalar(x) -> str:
    """Common-denominator form such as ``(5-√5)/10``."""
    A, B, c, d = _parts(x)
    num = _numerator(A, B, d)
    if c == 1:
        return num
    return f"({num})/{c}" if B and A else f"{num}/{c}"


def reciprocal_form(x) -> str | None:
    """``x`` written as ``c/(A+B√d)`` when ``x`` is irrational, such as ``2/(5+√5)``."""
    x = x if isinstance(x, NumberFieldElement) else parse_scalar(str(x))
    if not x or x.is_rational():
        return None
    A, B, c, d = _parts(1 / x)
    return f"{c}/({_numerator(A, B, d)})"


def _scalar(x):
    return None if x is None else str(x)


def _vector(v):
    return [str(t) for t in np.asarray(v, dtype=object).reshape(-1)]


# ---------------------------------------------------------------------------
# reports

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": bool(self.ok), "detail": self.detail}


@dataclass
class Report:
    command: str
    inputs: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def check(self, name, ok, detail="") -> bool:
        self.checks.append(Check(name, bool(ok), "" if detail is None else str(detail)))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def first_failure(self):
        return next((c for c in self.checks if not c.ok), None)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def as_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "command": self.command, "inputs": list(self.inputs),
                "ok": self.ok, "checks": [c.as_dict() for c in self.checks], "values": self.values}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise SchemaVersionMismatch(f"report schema {data.get('schema_version')}, expected {SCHEMA_VERSION}")
        rep = cls(data["command"], list(data["inputs"]), values=data["values"])
        rep.checks = [Check(c["name"], c["ok"], c["detail"]) for c in data["checks"]]
        return rep

    def to_text(self) -> str:
        lines = [f"{self.command}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            lines.append(f"  [{'pass' if c.ok else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        for k in sorted(self.values):
            v = self.values[k]
            text = v if isinstance(v, str) else json.dumps(v, sort_keys=True, ensure_ascii=False)
            if len(text) > 200:
                text = text[:197] + "..."
            lines.append(f"  {k} = {text}")
        fail = self.first_failure
        if fail is not None:
            lines.append(f"first failing check: {fail.name}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# fixture registry

KINDS = ("algebra", "bimodule", "fusion", "braided", "cy", "module", "triangulation", "stratified",
         "algebra_object", "pair", "pair_bimodule")


def _infer_kind(data: dict) -> str:
    if "kind" in data:
        return data["kind"]
    for key, kind in (("lact", "bimodule"), ("mul", "algebra"), ("R", "braided"), ("objects", "module"),
                      ("N", "fusion"), ("traces", "cy"), ("regions", "stratified"), ("strata", "stratified"),
                      ("simplices", "triangulation")):
        if key in data:
            return kind
    raise OrbkitError("cannot tell what kind of fixture this is")


class FixtureRegistry:
    """Loads fixtures by path or by name below the registry root.

    The root is ``$ORBKIT_FIXTURES`` when set, otherwise the bundled data
    directory.  References inside a fixture resolve relative to that fixture
    first, then against the root.
    """

    def __init__(self, root=None):
        env = os.environ.get("ORBKIT_FIXTURES")
        self.root = Path(root or env or Path(__file__).parent / "data")

    def locate(self, ref, base: Path | None = None) -> Path:
        ref = str(ref)
        cands = [Path(ref)]
        for d in ([base] if base is not None else []) + [self.root]:
            cands += [d / ref, d / f"{ref}.json", d / Path(ref).name]
        for c in cands:
            if c.is_file():
                return c
        raise FixtureNotFound(f"fixture {ref!r} not found (registry root {self.root})")

    def read(self, ref, base=None):
        path = self.locate(ref, base)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise OrbkitError(f"{path}: invalid JSON ({exc})") from exc
        ver = data.get("schema_version", SCHEMA_VERSION)
        if ver != SCHEMA_VERSION:
            raise SchemaVersionMismatch(f"{path}: schema_version {ver}, expected {SCHEMA_VERSION}")
        return data, path.parent

    def load(self, ref, kind: str | None = None, base: Path | None = None):
        """Object for ``ref`` (a path, registry name or inline dictionary)."""
        if isinstance(ref, dict):
            data, where = ref, base
            ver = data.get("schema_version", SCHEMA_VERSION)
            if ver != SCHEMA_VERSION:
                raise SchemaVersionMismatch(f"inline fixture schema_version {ver}, expected {SCHEMA_VERSION}")
        else:
            data, where = self.read(ref, base)
        found = _infer_kind(data)
        if kind is not None and found != kind and not (kind == "fusion" and found == "braided"):
            raise OrbkitError(f"expected a {kind} fixture, found {found}")
        return self._build(found, data, where)

    def _build(self, kind, data, where):
        sub = lambda k=None: (lambda r: self.load(r, k, where))  # noqa: E731
        if kind == "algebra":
            return FrobeniusStructure.from_json(data)
        if kind == "bimodule":
            return Bimodule.from_json(data, sub("algebra"))
        if kind == "fusion":
            return FusionData.from_json(data)
        if kind == "braided":
            return BraidedFusionData.from_json(data)
        if kind == "cy":
            return CYCategoryData.from_json(data)
        if kind == "module":
            return ModuleCategoryData.from_json(data, sub("fusion"))
        if kind == "triangulation":
            return OrderedTriangulation.from_json(data)
        if kind == "stratified":
            if isinstance(data.get("triangulation"), str):
                data = dict(data, triangulation=self.read(data["triangulation"], where)[0])
            return StratifiedComplex.from_json(data, lambda r, ctx: self.load(r, None, where))
        if kind == "algebra_object":
            return AlgebraObject.from_json(data, sub("braided"))
        if kind == "pair":
            return PairStructure.from_json(data, sub("braided"))
        if kind == "pair_bimodule":
            return BimoduleOverPair.from_json(data, sub("braided"))
        raise OrbkitError(f"unknown fixture kind {kind!r}")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_check_frobenius(reg, a, rep):
    fs = reg.load(a.file)
    alg = fs.algebra if isinstance(fs, FrobeniusStructure) else fs
    try:
        r = check_frobenius(alg, fs.counit)
    except NotFrobenius as exc:
        rep.check("frobenius", False, str(exc))
        return
    rep.check("frobenius", r.frobenius)
    rep.check("symmetric", r.symmetric)
    rep.check("separable", r.separable, "window element invertible" if r.separable else "window element singular")
    rep.values.update({"delta_separable": r.delta_separable, "window": [str(w) for w in r.window]})


def _cmd_window(reg, a, rep):
    fs = reg.load(a.file, "algebra")
    w = window_element(fs)
    rep.check("central", fs.algebra.is_central(w))
    rep.values["window"] = _vector(w)
    try:
        s = window_sqrt(fs)
    except (NotSeparable, NoSquareRootInField) as exc:
        # informational: the Euler datum then needs a field extension
        rep.values.update({"window_sqrt": None, "window_sqrt_note": str(exc)})
        return
    rep.values["window_sqrt"] = _vector(s)
    rep.check("square root squares to window", la.array_equal(fs.algebra.multiply(s, s), w))


def _cmd_gamma(reg, a, rep):
    fs = reg.load(a.file, "algebra")
    try:
        g = euler_gamma(fs)
    except NotSeparable as exc:
        rep.check("gamma defined", False, str(exc))
        return
    rep.check("delta separable", g.is_delta_separable())
    rep.values["counit"] = _vector(g.counit)
    rep.values["psi"] = _vector(g.psi)
    if a.output:
        Path(a.output).write_text(json.dumps(g.to_json(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        rep.values["written"] = str(a.output)


def _cmd_reltensor(reg, a, rep):
    X, Y = reg.load(a.X, "bimodule"), reg.load(a.Y, "bimodule")
    rp = relative_tensor(X, Y)
    rep.check("idempotent splits", rp.split.verify(), "p^2 = p, pi iota = id, iota pi = p")
    rep.values["dim"] = rp.Z.m
    rep.values["product"] = rp.Z.to_json()


def _cmd_qdim(reg, a, rep):
    X = reg.load(a.file, "bimodule")
    ok, which = zorro_check(X)
    rep.check("zorro", ok, which)
    t = trace_and_qdim(X)
    rep.values.update({"dim_l": _scalar(t["dim_l"]), "dim_r": _scalar(t["dim_r"]),
                       "tr_l": _vector(t["tr_l"]), "tr_r": _vector(t["tr_r"])})


def _cmd_split_orbifold(reg, a, rep):
    D = reg.load(a.file, "algebra")
    try:
        sp = split_orbifold_datum(D)
    except (NotAnOrbifoldDatum, NoIsomorphismFound, NotSeparable) as exc:
        rep.check("splits", False, f"{type(exc).__name__}: {exc}")
        return
    rep.check("splits", True)
    rep.check("isomorphism invertible", la.rank(sp.iso.matrix) == D.n)
    rep.values.update({"dim_X": sp.X.m, "iso": [_vector(r) for r in sp.iso.matrix]})


def _cmd_check_fusion(reg, a, rep):
    C = reg.load(a.file, "fusion")
    if isinstance(C, BraidedFusionData):
        C = C.fusion
    r = check_fusion(C)
    rep.check("pentagon", r.pentagon, r.pentagon_witness)
    rep.check("unit", r.unit, r.unit_witness)
    rep.check("spherical", r.spherical, r.spherical_witness)
    ok, w = check_rigidity_strong(C)
    rep.check("rigidity", ok, w)
    rep.values["globaldim"] = _scalar(r.globaldim)


def _cmd_check_module_trace(reg, a, rep):
    M = reg.load(a.file, "module")
    ok, w = check_module_pentagon(M)
    rep.check("module pentagon", ok, w)
    ok, w = check_module_trace(M)
    rep.check("module trace", ok, w)
    rep.values["traces"] = _vector(M.traces)


def _cmd_left_adjoint(reg, a, rep):
    C = reg.load(a.file, "cy")
    if a.target:
        D = reg.load(a.target, "cy")
    else:
        q = parse_scalar(a.scale, C.field)
        D = CYCategoryData([t * q for t in C.traces], C.field, C.names, C.dims)
    if D.size != C.size:
        rep.check("same number of simples", False, f"{C.size} versus {D.size}")
        return
    F = SimpleFunctor(C, D, [(s,) for s in range(C.size)])
    G = SimpleFunctor(D, C, [(s,) for s in range(C.size)])
    eta, eps = identity_adjunction(F, G)
    try:
        eta_L, eps_L = left_adjoint_from_trace(F, G, eta, eps)
    except ValueError as exc:
        rep.check("zorro", False, str(exc))
        return
    rep.check("zorro", True)
    ratios = [D.traces[s] / C.traces[s] for s in range(C.size)]
    rep.check("eps_L = lambda'/lambda", all(eps_L[s][0, 0] == ratios[s] for s in range(C.size)))
    rep.check("eta_L = lambda/lambda'", all(eta_L[s][0, 0] == 1 / ratios[s] for s in range(C.size)))
    rep.values.update({"eps_L": [str(e[0, 0]) for e in eps_L], "eta_L": [str(e[0, 0]) for e in eta_L]})


def _cmd_ew(reg, a, rep):
    if a.direction == "forward":
        cy = ew_forward(reg.load(a.file, "algebra"))
        rep.check("nondegenerate traces", all(cy.traces))
        rep.values["cy"] = cy.to_json()
    elif a.direction == "inverse":
        cy = reg.load(a.file, "cy")
        fs = ew_inverse(cy)
        back = ew_forward(fs)
        rep.check("forward recovers traces", sorted(map(str, back.traces)) == sorted(map(str, cy.traces)))
        rep.values["algebra"] = fs.to_json()
    else:
        rep.check("roundtrip", ew_roundtrip_check(reg.load(a.file, "algebra")))


def _value(rep, v):
    rep.values.update({"value": str(v), "normalized": pretty_scalar(v)})
    rf = reciprocal_form(v)
    if rf is not None:
        rep.values["reciprocal_form"] = rf


def _cmd_fhk(reg, a, rep):
    T, fs = reg.load(a.triangulation, "triangulation"), reg.load(a.algebra, "algebra")
    res = fhk_evaluate(T, fs)
    rep.check("evaluated", True)
    _value(rep, res.value)


def _fusion_of(obj):
    return obj.fusion if isinstance(obj, BraidedFusionData) else obj


def _cmd_tv(reg, a, rep):
    T, C = reg.load(a.triangulation, "triangulation"), _fusion_of(reg.load(a.fusion, "fusion"))
    res = tv_evaluate(T, C)
    rep.check("evaluated", True)
    _value(rep, res.value)


def _evaluator(data):
    data = _fusion_of(data)
    if isinstance(data, FusionData):
        return lambda T: tv_evaluate(T, data).value
    if isinstance(data, FrobeniusStructure):
        return lambda T: fhk_evaluate(T, data).value
    raise OrbkitError("pachner needs an algebra (2d) or fusion data (3d)")


def _cmd_pachner(reg, a, rep):
    T = reg.load(a.triangulation, "triangulation")
    ev = _evaluator(reg.load(a.data))
    ok, values, applied = pachner_invariance(T, ev, count=a.moves, seed=a.seed)
    rep.check("invariant", ok, f"{len(applied)} moves")
    _value(rep, values[0])
    rep.values["moves"] = [[m, n] for m, _, n in applied]
    if not ok:
        rep.values["values"] = [str(v) for v in values]


def _cmd_orbifold_eval(reg, a, rep):
    S = reg.load(a.file, "stratified")
    vals = {p: orbifold_evaluate(S, p).value for p in HOST_POLICIES}
    ref = vals[HOST_POLICIES[0]]
    rep.check("host policies agree", all(v == ref for v in vals.values()))
    _value(rep, ref)
    rep.values["by_policy"] = {p: str(v) for p, v in vals.items()}


def _cmd_state_space(reg, a, rep):
    S = reg.load(a.surface, "triangulation")
    data = _fusion_of(reg.load(a.data))
    op = cylinder_operator(S, data)
    rep.check("cylinder idempotent", op.is_idempotent())
    rep.values["rank"] = op.rank


def _cmd_check_comm_frob(reg, a, rep):
    A = reg.load(a.file, "algebra_object")
    r = check_commutative_frobenius(A)
    rep.check("commutative Delta-separable Frobenius", r.ok, r.witness)


def _pair_checks(rep, P, expected=None, prefix=""):
    r = check_frobenius_over_pair(P)
    rep.check(f"{prefix}characterizations agree", r.agree,
              f"maps {r.via_frobenius_maps}, diagrams {r.via_kmrs_diagrams}")
    if expected is None:
        rep.check(f"{prefix}via Frobenius maps", r.via_frobenius_maps, r.witness_maps)
        rep.check(f"{prefix}via exchange diagrams", r.via_kmrs_diagrams, r.witness_kmrs)
    else:
        rep.check(f"{prefix}expected verdict", r.via_kmrs_diagrams == expected,
                  f"expected {expected}, got {r.via_kmrs_diagrams}")


def _cmd_check_pair(reg, a, rep):
    if a.generated:
        for P, expected in pair_fixtures():
            _pair_checks(rep, P, expected, f"{P.name}: ")
        return
    if not a.files:
        raise OrbkitError("check-pair needs fixture files or --generated")
    for f in a.files:
        _pair_checks(rep, reg.load(f, "pair"), None, f"{f}: " if len(a.files) > 1 else "")


def _cmd_check_pair_bimodule(reg, a, rep):
    if a.generated:
        for X, expected in bimodule_fixtures():
            r = check_bimodule_over_pair(X)
            rep.check(f"{X.name}: expected verdict", r.ok == expected, r.witness)
        return
    if not a.files:
        raise OrbkitError("check-pair-bimodule needs fixture files or --generated")
    for f in a.files:
        r = check_bimodule_over_pair(reg.load(f, "pair_bimodule"))
        rep.check(f"{f}: bimodule over the pair", r.ok, r.witness)


def _cmd_suite(reg, a, rep):
    from .suite import run_suite
    for name, ok, detail in run_suite():
        rep.check(name, ok, detail)


COMMANDS = {
    "check-frobenius": _cmd_check_frobenius, "window": _cmd_window, "gamma": _cmd_gamma,
    "reltensor": _cmd_reltensor, "qdim": _cmd_qdim, "split-orbifold": _cmd_split_orbifold,
    "check-fusion": _cmd_check_fusion, "check-module-trace": _cmd_check_module_trace,
    "left-adjoint": _cmd_left_adjoint, "ew": _cmd_ew, "fhk": _cmd_fhk, "tv": _cmd_tv, "pachner": _cmd_pachner,
    "orbifold-eval": _cmd_orbifold_eval, "state-space": _cmd_state_space,
    "check-comm-frob": _cmd_check_comm_frob, "check-pair": _cmd_check_pair,
    "check-pair-bimodule": _cmd_check_pair_bimodule, "suite": _cmd_suite,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise OrbkitError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine report instead of text")
    common.add_argument("--report", metavar="PATH", help="also write the machine report to PATH")
    common.add_argument("--fixtures", metavar="DIR", help="registry root (overrides ORBKIT_FIXTURES)")
    p = _Parser(prog="orbkit", description="Exact state sums, Frobenius algebras and defect checks.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    cmd("check-frobenius", "Frobenius, symmetry and separability of an algebra").add_argument("file")
    cmd("window", "window element and its square root").add_argument("file")
    g = cmd("gamma", "Delta-separable rescaling with Euler datum")
    g.add_argument("file")
    g.add_argument("-o", "--output")
    r = cmd("reltensor", "relative tensor product of two bimodules")
    r.add_argument("X")
    r.add_argument("Y")
    cmd("qdim", "Zorro check and quantum dimensions of a bimodule").add_argument("file")
    cmd("split-orbifold", "split an orbifold datum over the base field").add_argument("file")
    cmd("check-fusion", "pentagon, unit, sphericality and rigidity").add_argument("file")
    cmd("check-module-trace", "module pentagon and module trace").add_argument("file")
    la_ = cmd("left-adjoint", "left adjoint of a trace-scaled identity from traces")
    la_.add_argument("file")
    grp = la_.add_mutually_exclusive_group()
    grp.add_argument("--scale", default="2")
    grp.add_argument("--target")
    e = cmd("ew", "algebra <-> Calabi-Yau category correspondence")
    e.add_argument("direction", choices=["forward", "inverse", "roundtrip"])
    e.add_argument("file")
    f = cmd("fhk", "two-dimensional lattice state sum")
    f.add_argument("triangulation")
    f.add_argument("algebra")
    t = cmd("tv", "Turaev-Viro state sum")
    t.add_argument("triangulation")
    t.add_argument("fusion")
    pa = cmd("pachner", "invariance under random Pachner moves")
    pa.add_argument("triangulation")
    pa.add_argument("data")
    pa.add_argument("--moves", type=int, default=50)
    pa.add_argument("--seed", type=int, default=0)
    cmd("orbifold-eval", "defect state sum of a stratified complex").add_argument("file")
    s = cmd("state-space", "cylinder idempotent and state-space dimension")
    s.add_argument("surface")
    s.add_argument("data")
    cmd("check-comm-frob", "commutative Frobenius algebra in a braided category").add_argument("file")
    for name, help_text in (("check-pair", "Frobenius algebra over a pair, both characterizations"),
                            ("check-pair-bimodule", "bimodule over a pair")):
        c = cmd(name, help_text)
        c.add_argument("files", nargs="*")
        c.add_argument("--generated", action="store_true", help="use the built-in fixtures")
    cmd("suite", "run the acceptance set")
    return p


def run(command: str, args: list | None = None, registry: FixtureRegistry | None = None):
    """Run one subcommand.  Returns ``(exit_code, report)``."""
    if command not in COMMANDS:
        raise UnknownCommand(f"unknown command {command!r}; expected one of {', '.join(sorted(COMMANDS))}")
    ns = build_parser().parse_args([command] + list(args or []))
    reg = registry or FixtureRegistry(ns.fixtures)
    rep = Report(command, [str(x) for x in (args or []) if not str(x).startswith("--")])
    COMMANDS[command](reg, ns, rep)
    return rep.exit_code, rep


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0 if argv else 2
    want_json = "--json" in argv
    report_path = None
    if "--report" in argv:
        i = argv.index("--report")
        report_path = argv[i + 1] if i + 1 < len(argv) else None
    try:
        code, rep = run(argv[0], argv[1:])
    except OrbkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if report_path:
        Path(report_path).write_text(rep.to_json(), encoding="utf-8")
    sys.stdout.write(rep.to_json() if want_json else rep.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
