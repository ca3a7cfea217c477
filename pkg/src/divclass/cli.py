"""Command-line scenario runner.

    divclass <scenario> [options]
    divclass recheck REPORT.json

Exit status: 0 when every certificate and check passes, 1 when a
mathematical check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable

from .field import PrimeField, field_from_tag
from .jets import DEFAULT_JET_ORDER

SCHEMA_VERSION = "1.0"
SCENARIOS = ("ade", "cone", "pinwheel", "rlines", "doublelines", "cohomology", "baselocus", "lemma5pts")


class ValidationError(ValueError):
    def __init__(self, field: str, msg: str):
        super().__init__(f"{field}: {msg}")
        self.field = field


# parameter schemas: name -> (type, default)
_int = int
_str = str


def _int_list(v):
    return [int(a) for a in v]


def _str_list(v):
    return [str(a) for a in v]


SCHEMAS: dict[str, dict[str, tuple[Callable, Any]]] = {
    "ade": {"type": (_str, "A1")},
    "cone": {
        "curve": (_str, "x*y*z + x^2*y + x*z^2 + y^2*z"),
        "points": (_str_list, ["(0:0:1)"]),
        "coeffs": (_int_list, None),
        "m": (_int, None),
        "base": (_str, None),
    },
    "pinwheel": {"r": (_int, 3), "a": (_str_list, None), "A": (_str, None), "B": (_str, None)},
    "rlines": {"r": (_int, 4), "surface_degree": (_int, None), "prime": (_int, 101)},
    "doublelines": {"a": (_str, "1"), "b": (_str, "1"), "c": (_str, "1"), "d": (_str, "1")},
    "cohomology": {"n": (_int, 2), "d": (_int, 4), "kmin": (_int, 0), "kmax": (_int, 5)},
    "baselocus": {"instance": (_str, None)},
    "lemma5pts": {"r": (_int, 3), "p": (_int, 7), "height": (_int, None)},
}


@dataclass
class ScenarioConfig:
    scenario: str
    params: dict = dc_field(default_factory=dict)
    seed: int = 0
    jet_order: int | None = None  # None: the instance file's order, else the default
    field: str = "q"
    out: str | None = None
    format: str = "json"

    def validate(self) -> "ScenarioConfig":
        if self.scenario not in SCENARIOS:
            raise ValidationError("scenario", f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}")
        schema = SCHEMAS[self.scenario]
        clean = {}
        for k, v in self.params.items():
            if k not in schema:
                raise ValidationError(f"params.{k}", f"not a parameter of {self.scenario} ({', '.join(schema)})")
            if v is None:
                continue
            try:
                clean[k] = schema[k][0](v)
            except (TypeError, ValueError) as e:
                raise ValidationError(f"params.{k}", f"bad value {v!r}: {e}") from None
        for k, (_, default) in schema.items():
            clean.setdefault(k, default)
        self.params = clean
        _check_params(self.scenario, clean)
        try:
            self.field_obj()
        except ValueError as e:
            raise ValidationError("field", str(e)) from None
        if self.jet_order is not None and self.jet_order < 1:
            raise ValidationError("jet_order", "must be >= 1")
        if self.format not in ("json", "text"):
            raise ValidationError("format", "json or text")
        return self

    def field_obj(self):
        return field_from_tag(self.field)

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "params": self.params,
            "seed": self.seed,
            "jet_order": self.jet_order,
            "field": self.field,
        }


def _check_params(s: str, p: dict):
    from .field import _is_prime
    from .singularities import AdeType, SingularityError

    def need(cond, name, msg):
        if not cond:
            raise ValidationError(f"params.{name}", msg)

    if s == "ade":
        try:
            AdeType.parse(p["type"])
        except SingularityError as e:
            raise ValidationError("params.type", str(e)) from None
    elif s == "pinwheel":
        need(p["r"] >= 2, "r", "must be >= 2")
        need(p["a"] is None or len(p["a"]) == p["r"], "a", "needs exactly r values")
    elif s == "rlines":
        need(p["r"] >= 1, "r", "must be >= 1")
        need(_is_prime(p["prime"]), "prime", "must be prime")
    elif s == "cohomology":
        need(p["n"] >= 2, "n", "must be >= 2")
        need(p["d"] >= 1, "d", "must be >= 1")
        need(p["kmin"] <= p["kmax"], "kmin", "must not exceed kmax")
    elif s == "lemma5pts":
        need(p["r"] >= 1, "r", "must be >= 1")
        need(_is_prime(p["p"]), "p", "must be prime")
    elif s == "cone":
        need(p["coeffs"] is None or len(p["coeffs"]) == len(p["points"]), "coeffs", "one coefficient per point")


def _ok(report: dict) -> bool:
    from .certificates import all_hold

    ok = all_hold(report.get("certificates", []))
    s = report["scenario"]
    if s == "pinwheel":
        ok &= report["residual_zero"] and report["images_match_expected"]
    elif s == "rlines":
        if "each_line_generates" in report:
            ok &= report["each_line_generates"] and report["pic_kernel_is_even_sums"]
        if "experiment" in report:
            e = report["experiment"]
            ok &= e["oracle_agrees"] and e["hasse_ok"] and e["relations_rechecked_by_group_law"]
    elif s == "doublelines":
        ok &= all(report["relation_chain"].values()) and report["group"]["group"] == "Z/9"
    elif s == "baselocus":
        ok &= report["residual_zero"] and all(q["stable"] for q in report["prime_stability"])
    elif s == "lemma5pts":
        e = report["experiment"]
        ok &= e["oracle_agrees"] and e["hasse_ok"] and e["relations_rechecked_by_group_law"]
    return bool(ok)


def run_scenario(cfg: ScenarioConfig) -> dict:
    """Run a validated config and wrap the result in the versioned report."""
    from . import pipelines
    from .base_locus import FgsubgpInstance, baselocus_report, default_instance, load_instance
    from .cohomology import HypersurfaceSpec, cohomology_table
    from . import certificates as cert

    cfg.validate()
    p, fld, s = cfg.params, cfg.field_obj(), cfg.scenario
    N = cfg.jet_order if cfg.jet_order is not None else DEFAULT_JET_ORDER
    if s == "ade":
        res = pipelines.ade_report(p["type"])
    elif s == "cone":
        res = pipelines.cone_report(p["curve"], p["points"], p["coeffs"], p["m"], p["base"], fld)
    elif s == "pinwheel":
        res = pipelines.pinwheel_pipeline(p["r"], p["a"], p["A"], p["B"], cfg.seed, N, fld)
    elif s == "rlines":
        res = pipelines.rlines_pipeline(p["r"], p["surface_degree"], cfg.seed, field=fld, experiment_prime=p["prime"])
    elif s == "doublelines":
        res = pipelines.doublelines_pipeline(p["a"], p["b"], p["c"], p["d"], fld)
    elif s == "cohomology":
        X = HypersurfaceSpec(p["n"], p["d"])
        table = cohomology_table(X, range(p["kmin"], p["kmax"] + 1))
        certs = [
            cert.numeric_cert("cohomology", f"h^*(O_X({r['k']})) = {r['h']}", True, n=X.n, d=X.d, k=r["k"], dims=r["h"])
            for r in table["rows"]
        ]
        res = {"scenario": "cohomology", "inputs": {"n": X.n, "d": X.d}, "table": table,
               "certificates": certs, "anchors": ["vanishing", "twisted-cohomology"]}
    elif s == "baselocus":
        if p["instance"]:
            inst = load_instance(p["instance"])
            if cfg.jet_order is not None and cfg.jet_order != inst.order:
                inst = FgsubgpInstance(inst.ring, inst.equations, inst.curves, inst.perturbations, cfg.jet_order)
        else:
            inst = default_instance(N, fld)
        res = baselocus_report(inst)
    else:
        prime = p["p"]
        if isinstance(fld, PrimeField):
            prime = fld.p
        res = pipelines.lemma5pts_report(p["r"], prime, cfg.seed, p["height"])
    return {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.to_json(),
        "ok": _ok(res),
        "result": res,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"


def render_text(report: dict) -> str:
    res = report["result"]
    lines = [f"scenario: {res['scenario']}", f"config: {json.dumps(report['config'], sort_keys=True)}"]
    if "group" in res:
        lines.append(f"group: {res['group']['group']}")
    if res.get("images"):
        lines.append("images: " + ", ".join(f"{k} -> {v}" for k, v in sorted(res["images"].items())))
    if res["scenario"] == "cohomology":
        from .cohomology import format_table

        lines.append(format_table(res["table"]))
    if res["scenario"] == "doublelines":
        for k, v in res["relation_chain"].items():
            lines.append(f"  {k}: {v}")
    for key in ("ade_type", "residual_zero", "local_class_group", "pic_kernel_is_even_sums", "relation"):
        if key in res:
            lines.append(f"{key}: {res[key]}")
    if "experiment" in res:
        e = res["experiment"]
        lines.append(
            f"experiment: p={e['p']} r={e['r']} |Pic0|={e['pic0_order']} group={e['cone_group']} "
            f"subgroup={e['subgroup']} index={e['index']} oracle={e['oracle_agrees']} relations={len(e['relations'])}"
        )
    for c in res.get("certificates", []):
        lines.append(f"  [{'ok' if c['holds'] else 'FAIL'}] {c['kind']}: {c['claim']}")
    lines.append("result: " + ("all checks pass" if report["ok"] else "CHECK FAILED"))
    return "\n".join(lines) + "\n"


def recheck_report(report: dict) -> list[tuple[str, bool]]:
    from .certificates import recheck_certificate

    out = []
    for c in report["result"].get("certificates", []):
        out.append((c["claim"], recheck_certificate(c) and c["holds"]))
    return out


# argument parsing


def _common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jet-order", type=int, default=None)
    p.add_argument("--field", default=None, help="q or fp:<p>")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default=None)
    p.add_argument("--config", default=None, help="JSON config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="divclass", description="Certified local class group computations.")
    sub = ap.add_subparsers(dest="scenario", metavar="scenario")
    sp = {}
    sp["ade"] = sub.add_parser("ade", help="ADE discriminant groups")
    sp["ade"].add_argument("--type", dest="type")
    sp["cone"] = sub.add_parser("cone", help="cone over a smooth plane cubic")
    sp["cone"].add_argument("--curve")
    sp["cone"].add_argument("--points", nargs="+")
    sp["cone"].add_argument("--coeffs", nargs="+", type=int)
    sp["cone"].add_argument("--m", type=int)
    sp["cone"].add_argument("--base")
    sp["pinwheel"] = sub.add_parser("pinwheel", help="r planar lines plus one transversal line")
    sp["pinwheel"].add_argument("--r", type=int)
    sp["pinwheel"].add_argument("--a", nargs="+")
    sp["pinwheel"].add_argument("--A", dest="A")
    sp["pinwheel"].add_argument("--B", dest="B")
    sp["rlines"] = sub.add_parser("rlines", help="r general lines through a point")
    sp["rlines"].add_argument("--r", type=int)
    sp["rlines"].add_argument("--surface-degree", type=int, dest="surface_degree")
    sp["rlines"].add_argument("--prime", type=int)
    sp["doublelines"] = sub.add_parser("doublelines", help="three double lines")
    for k in "abcd":
        sp["doublelines"].add_argument(f"--{k}", dest=k)
    sp["cohomology"] = sub.add_parser("cohomology", help="h^i(O_X(k)) for a hypersurface")
    sp["cohomology"].add_argument("--n", type=int)
    sp["cohomology"].add_argument("--d", type=int)
    sp["cohomology"].add_argument("--kmin", type=int)
    sp["cohomology"].add_argument("--kmax", type=int)
    sp["baselocus"] = sub.add_parser("baselocus", help="perturbation and coordinate change")
    sp["baselocus"].add_argument("--instance")
    sp["lemma5pts"] = sub.add_parser("lemma5pts", help="points on a cubic over F_p")
    sp["lemma5pts"].add_argument("--r", type=int)
    sp["lemma5pts"].add_argument("--p", type=int)
    sp["lemma5pts"].add_argument("--height", type=int)
    for p in sp.values():
        _common(p)
    rc = sub.add_parser("recheck", help="recompute every certificate in a JSON report")
    rc.add_argument("report")
    return ap


_GLOBAL = ("seed", "jet_order", "field", "out", "format", "config")


def config_from_args(ns: argparse.Namespace) -> ScenarioConfig:
    base: dict = {}
    if ns.config:
        try:
            with open(ns.config) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError("config", str(e)) from None
        if base.get("scenario", ns.scenario) != ns.scenario:
            raise ValidationError("scenario", f"config is for {base['scenario']!r}, command is {ns.scenario!r}")
    params = dict(base.get("params", {}))
    for k, v in vars(ns).items():
        if k in _GLOBAL or k == "scenario" or v is None:
            continue
        params[k] = v
    pick = lambda k, d: getattr(ns, k) if getattr(ns, k) is not None else base.get(k, d)
    jet = pick("jet_order", None)
    return ScenarioConfig(
        scenario=ns.scenario,
        params=params,
        seed=int(pick("seed", 0)),
        jet_order=None if jet is None else int(jet),
        field=str(pick("field", "q")),
        out=pick("out", None),
        format=pick("format", "json"),
    )


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    if not ns.scenario:
        ap.print_usage(sys.stderr)
        return 2
    if ns.scenario == "recheck":
        try:
            with open(ns.report) as fh:
                report = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
        results = recheck_report(report)
        for claim, ok in results:
            print(f"[{'ok' if ok else 'FAIL'}] {claim}")
        return 0 if all(ok for _, ok in results) else 1
    try:
        cfg = config_from_args(ns).validate()
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        report = run_scenario(cfg)
    except (ValueError, ArithmeticError) as e:
        print(f"error in {cfg.scenario}: {e}", file=sys.stderr)
        return 1
    text = dumps(report) if cfg.format == "json" else render_text(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
