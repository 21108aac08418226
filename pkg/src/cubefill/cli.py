"""Command-line entry point.

Exit status: 0 when every check passes, 1 on a mathematical failure (a
witness is printed), 2 on malformed input.
"""
from __future__ import annotations

import functools
import hashlib
import json
import sys
import time
from pathlib import Path

import click

from . import __version__
from .cube_core import CubeComplex, is_cat0, is_npc, validate
from .errors import InputError, InvariantViolation
from .grp_action import (ComplexOfGroups, GroupAction, action_from_spec, action_to_spec, co_cubical,
                         quotient_scwol, subgroup_from_words)


# ------------------------------------------------------------- reporting
class Report:
    def __init__(self, command: str, params: dict):
        self.command = command
        self.params = params
        self.digests: dict[str, str] = {}
        self.verdicts: dict[str, bool] = {}
        self.witnesses: dict[str, object] = {}
        self.result: dict = {}
        self.timings: dict[str, float] = {}
        self._t0 = time.perf_counter()

    def verdict(self, name: str, ok: bool, witness=None) -> None:
        self.verdicts[name] = bool(ok)
        if not ok and witness is not None:
            self.witnesses[name] = witness

    def timed(self, name: str):
        rep = self

        class _T:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                rep.timings[name] = round(time.perf_counter() - self.t, 4)

        return _T()

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        self.timings.setdefault("total", round(time.perf_counter() - self._t0, 4))
        return {"command": self.command, "version": __version__, "params": self.params,
                "digests": self.digests, "verdicts": self.verdicts, "witnesses": self.witnesses,
                "result": self.result, "timings": self.timings}


def _jsonable(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "tolist"):
        return o.tolist()
    if hasattr(o, "to_dict"):
        return o.to_dict()
    return str(o)


def load_json(path: str, report: Report | None = None, role: str = "") -> dict:
    raw = Path(path).read_bytes()
    if report is not None:
        report.digests[role or path] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise InputError("malformed JSON", f"{e.msg} at line {e.lineno} column {e.colno}", path) from None


def emit(report: Report, json_path: str | None) -> None:
    d = report.to_dict()
    click.echo(f"{report.command}: {'ok' if report.ok else 'FAILED'}")
    for k, v in report.verdicts.items():
        click.echo(f"  {k}: {'pass' if v else 'FAIL'}")
    for k, w in report.witnesses.items():
        click.echo(f"  witness[{k}]: {json.dumps(w, default=_jsonable)[:400]}")
    for k, v in report.result.items():
        if isinstance(v, (int, float, str, bool)) or v is None:
            click.echo(f"  {k} = {v}")
    if json_path:
        Path(json_path).write_text(json.dumps(d, indent=2, sort_keys=True, default=_jsonable))


def command(fn):
    """Run the body, emit the report and map outcomes to exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, json_path=None, **kwargs):
        ctx = click.get_current_context()
        name = " ".join(ctx.command_path.split()[1:]) or fn.__name__
        report = Report(name, dict(kwargs))
        try:
            fn(report, *args, **kwargs)
        except InputError as e:
            click.echo(f"input error: {e}", err=True)
            sys.exit(2)
        except (OSError, UnicodeDecodeError) as e:
            click.echo(f"input error: {e}", err=True)
            sys.exit(2)
        emit(report, json_path)
        sys.exit(0 if report.ok else 1)

    wrapper = click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None,
                           help="Also write the report as JSON.")(wrapper)
    return wrapper


def load_complex(report: Report, path: str) -> CubeComplex:
    return validate(load_json(path, report, "complex"))


def load_action(report: Report, cpath: str, apath: str, cap: int) -> GroupAction:
    X = load_complex(report, cpath)
    return action_from_spec(X, load_json(apath, report, "action"), cap=cap)


def load_kernel(report: Report, A: GroupAction, path: str) -> frozenset:
    raw = load_json(path, report, "kernel")
    words = raw.get("generators") if isinstance(raw, dict) else raw
    if words is None:
        raise InputError("bad kernel file", "needs a 'generators' list", path)
    return subgroup_from_words(A.G, words, normal=True)


def _choice(s: str):
    return int(s) if s.lstrip("-").isdigit() else s


# ------------------------------------------------------------- commands
@click.group()
@click.version_option(__version__)
def main():
    """Cube complexes, complexes of groups and quotient checks."""


@main.command("validate")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--strict", is_flag=True, help="Require every face to be listed.")
@command
def validate_(report, complex_file, strict):
    X = validate(load_json(complex_file, report, "complex"), close=not strict)
    report.result.update({"cells": len(X.cells), "counts": X.counts(), "dim": X.dim, "euler": X.euler(),
                          "hyperplanes": len(X.hyperplanes())})
    with report.timed("npc"):
        v = is_npc(X)
    report.verdict("npc", v, v.witness)
    if v:
        with report.timed("cat0"):
            c = is_cat0(X)
        report.result["cat0"] = bool(c)


@main.command("idealize")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@command
def idealize_(report, complex_file):
    from .scwol_cat import idealize

    ideal = idealize(load_complex(report, complex_file))
    S = ideal.scwol
    report.result.update({"objects": S.n_objects, "arrows": len(S.nontrivial())})
    v = S.check_scwol()
    report.verdict("scwol", v, v.witness)


@main.command("orbits")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("action_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--cap", default=10_000, show_default=True, help="Group order cap.")
@command
def orbits(report, complex_file, action_file, cap):
    A = load_action(report, complex_file, action_file, cap)
    r = A.orbits_and_stabilizers()
    report.result.update({"group_order": len(A.G), "orbits": r["orbits"], "cells": r["cells"]})
    v = A.check_homomorphism()
    report.verdict("action", v, v.witness)


@main.command("quotient")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("action_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--cap", default=10_000, show_default=True)
@command
def quotient(report, complex_file, action_file, cap):
    from .scwol_cat import check_functor, is_nondegenerate

    A = load_action(report, complex_file, action_file, cap)
    Y, F = quotient_scwol(A)
    report.result.update({"objects": Y.n_objects, "arrows": len(Y.nontrivial()), "scwol": Y.to_dict()})
    for name, v in (("scwol", Y.check_scwol()), ("functor", check_functor(F)), ("nondegenerate", is_nondegenerate(F))):
        report.verdict(name, v, v.witness)


@main.command("cog")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("action_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--choice", default="min", show_default=True, help="Lift choice: min, max or an integer seed.")
@click.option("--cap", default=10_000, show_default=True)
@command
def cog(report, complex_file, action_file, choice, cap):
    A = load_action(report, complex_file, action_file, cap)
    try:
        with report.timed("build"):
            C = ComplexOfGroups(A, choice=_choice(choice), verify=False)
            counts = C.verify()
        report.verdict("axioms", True)
        report.result.update(counts)
        report.result["complex_of_groups"] = C.summary()
    except InvariantViolation as e:
        report.verdict("axioms", False, str(e))


@main.command("cover")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("action_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--kernel", "kernel_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--cap", default=10_000, show_default=True)
@command
def cover(report, complex_file, action_file, kernel_file, cap):
    from .cgy_dev import build_cover, invertible_quotient_check

    A = load_action(report, complex_file, action_file, cap)
    K = load_kernel(report, A, kernel_file) if kernel_file else frozenset({0})
    C = ComplexOfGroups(A)
    cv = co_cubical(A, K)
    report.verdict("co_cubical", cv, cv.witness or cv.reason)
    if not cv:
        return
    cov = build_cover(C, K)
    with report.timed("covering"):
        v = cov.check_covering()
    report.verdict("covering", v, v.witness)
    with report.timed("quotient"):
        iq = invertible_quotient_check(cov)
    report.verdict("invertible_quotient", iq["ok"], iq.get("reason"))
    report.result.update({"order_K": len(K), "objects": cov.n_objects, "fibers": iq["fibers"]})


@main.command("stabgraphs")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("action_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--list", "max_len", type=int, default=None, help="Longest hyperplane list to examine.")
@click.option("--cap", default=10_000, show_default=True)
@command
def stabgraphs(report, complex_file, action_file, max_len, cap):
    from .stab_graphs import report as sg_report

    A = load_action(report, complex_file, action_file, cap)
    r = sg_report(ComplexOfGroups(A), max_len=max_len)
    report.result.update({"lists": len(r["lists"]), "rows": r["lists"]})
    report.verdict("gamma_U_connected", r["gamma_U_connected"])
    report.verdict("central_valence", r["central_valence"])
    report.verdict("psi", r["psi"])
    for key in ("stab_invariance", "alpha", "nesting", "theta_in_I", "local_groups", "gamma_C_connected", "free"):
        bad = [row["list"] for row in r["lists"] if not row[key]]
        report.verdict(key, not bad, bad[:5])


@main.command("check-quotient")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("action_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--kernel", "kernel_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--cap", default=10_000, show_default=True)
@command
def check_quotient(report, complex_file, action_file, kernel_file, cap):
    from .npc_quotient import npc_quotient_verdict

    A = load_action(report, complex_file, action_file, cap)
    K = load_kernel(report, A, kernel_file)
    cv = co_cubical(A, K)
    report.verdict("co_cubical", cv, cv.witness or cv.reason)
    if not cv:
        return
    with report.timed("conditions"):
        r = npc_quotient_verdict(ComplexOfGroups(A), K)
    fails = r["conditions"]["failures"]
    report.verdict("conditions", r["ok"], fails[0] if fails else None)
    report.verdict("oracle_agrees", r["agree"], r["staged"])
    report.result.update({"order_K": len(K), "npc": r["npc"], "cat0": r["cat0"], "sizes": r["sizes"],
                          "simply_connected": r["simply_connected"], "oracle": r["oracle"]})


@main.group("hypgeo")
def hypgeo():
    """Hyperbolicity and quasi-convexity of finite graphs."""


@hypgeo.command("delta")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@command
def hyp_delta(report, graph_file):
    from .hyp_geo import MetricGraph, delta_slim, four_point_delta, graph_from_dict

    M = MetricGraph(graph_from_dict(load_json(graph_file, report, "graph")))
    with report.timed("delta"):
        report.result.update({"vertices": M.n, "delta": delta_slim(M), "four_point": four_point_delta(M)})


@hypgeo.command("qc")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("set_file", type=click.Path(exists=True, dir_okay=False))
@command
def hyp_qc(report, graph_file, set_file):
    from .hyp_geo import MetricGraph, graph_from_dict, qc_constant

    M = MetricGraph(graph_from_dict(load_json(graph_file, report, "graph")))
    raw = load_json(set_file, report, "set")
    S = raw.get("set") if isinstance(raw, dict) else raw
    if not isinstance(S, list):
        raise InputError("bad set file", "expected a list or {'set': [...]}", set_file)
    report.result["qc"] = qc_constant(M, S)


@hypgeo.command("chain")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("chain_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--R", "R", type=int, default=None, help="Override the threshold R.")
@command
def hyp_chain(report, graph_file, chain_file, R):
    from .hyp_geo import MetricGraph, chain_from_dict, check_chain_hypotheses, graph_from_dict, verify_globally_qc

    M = MetricGraph(graph_from_dict(load_json(graph_file, report, "graph")))
    ch = chain_from_dict(load_json(chain_file, report, "chain"))
    hyp = check_chain_hypotheses(M, ch)
    if not hyp["ok"]:
        raise InputError("chain hypothesis fails", f"hypothesis ({hyp['hypothesis']}): {hyp['witness']}", chain_file)
    r = verify_globally_qc(M, ch, R=R)
    report.result.update(r)
    report.verdict("log_bound", r["eps_prime"] <= r["log_bound"] or r["Lambda"] > 100 * r["R"],
                   {"eps_prime": r["eps_prime"], "log_bound": r["log_bound"]})
    if r["replay"].get("applicable"):
        rp = r["replay"]
        report.verdict("replay", rp["progress_ok"] and rp["sigma_long_ok"] and rp["gromov_ok"], rp)


@main.command("fill")
@click.argument("complex_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("action_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--peripherals", "pfile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--kernels", "kfile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--predicate", default="nontrivial", show_default=True, help="'nontrivial' or 'order>N'.")
@click.option("--cap", default=10_000, show_default=True)
@command
def fill(report, complex_file, action_file, pfile, kfile, predicate, cap):
    from .dehn_fill import filling_pipeline, parse_predicate, spec_from_dicts

    A = load_action(report, complex_file, action_file, cap)
    spec = spec_from_dicts(A.G, load_json(pfile, report, "peripherals"), load_json(kfile, report, "kernels"))
    with report.timed("pipeline"):
        r = filling_pipeline(A, spec, parse_predicate(predicate))
    for name, st in r["stages"].items():
        if name == "e_height":
            report.result["height"] = st
            continue
        wit = {k: v for k, v in st.items() if k != "ok"}
        report.verdict(name, st["ok"], wit)
    report.result.update({"order_K": r["order_K"], "predicate": r["predicate"]})
    if "Z" in r:
        report.result["Z"] = r["Z"]


@main.command("sageev")
@click.option("--walls", "walls_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Write complex.json and action.json here.")
@command
def sageev(report, walls_file, out_dir):
    from .sageev_gen import dual_complex, wallspace_from_dict

    D = dual_complex(wallspace_from_dict(load_json(walls_file, report, "walls")))
    X = D.X
    report.result.update({"counts": X.counts(), "dim": X.dim, "group_order": len(D.action.G),
                          "complex": X.to_dict(), "point_vertex": D.point_vertex})
    report.verdict("cat0", is_cat0(X))
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "complex.json").write_text(json.dumps(X.to_dict(), indent=2))
        (out / "action.json").write_text(json.dumps(action_to_spec(D.action), indent=2))


@main.command("corpus")
@click.option("--seed", default=0, show_default=True)
@click.option("--profile", type=click.Choice(["small", "medium"]), default="small", show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None)
@command
def corpus_(report, seed, profile, out_dir):
    from .sageev_gen import corpus, manifest, manifest_digest

    items = corpus(seed, profile)
    report.result.update({"items": len(items), "digest": manifest_digest(items),
                          "names": [it.name for it in items]})
    for it in items:
        report.verdict(f"cat0:{it.name}", is_cat0(it.X))
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "manifest.json").write_text(manifest(items))
        for it in items:
            d = out / it.name
            d.mkdir(exist_ok=True)
            (d / "complex.json").write_text(json.dumps(it.X.to_dict(), indent=2))
            (d / "action.json").write_text(json.dumps(action_to_spec(it.action), indent=2))
            for k, K in enumerate(it.kernels):
                (d / f"kernel{k}.json").write_text(json.dumps({"generators": sorted(int(x) for x in K)}))


@main.command("accept")
@click.option("--seed", default=0, show_default=True)
@click.option("--only", multiple=True, type=click.IntRange(1, 10), help="Run only these criteria.")
@click.option("--parallel", default=1, show_default=True, help="Worker processes.")
@command
def accept(report, seed, only, parallel):
    from .acceptance import run_all

    for r in run_all(seed, only=list(only) or None, parallel=parallel):
        click.echo(r.line())
        report.verdict(f"criterion_{r.number}", r.passed, r.detail if not r.passed else None)
        report.timings[f"criterion_{r.number}"] = round(r.elapsed, 3)
        report.result[f"criterion_{r.number}"] = r.to_dict()


if __name__ == "__main__":
    main()
