"""
hhl: command-line front end.

    hhl homology   --complex {C,Cpm,D,Dpm} --n N [--q Q] [--field F] [--assert-acyclic]
    hhl identities --n N [--q Q] [--perturb-xi]
    hhl filtration --n N [--q Q]
    hhl stability  --n N --d D [--q Q] [--type {A,B}] [--guard G]

Exit codes: 0 ok, 1 assertion failure, 2 size guard (and usage errors),
3 integrity failure. Reports are deterministic unless --timings is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import complexes as C
from . import homology as H
from . import suites as S
from .fields import ConfigError, ScalarConfig

FORMAT_VERSION = 1

EXIT_OK, EXIT_ASSERT, EXIT_GUARD, EXIT_INTEGRITY = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    q: str = "1"
    field: str = "Q"
    complex: str | None = None
    d: int | None = None
    type: str = "B"
    assert_acyclic: bool = False
    out: str | None = None
    format: str = "json"
    jobs: int = 1
    guard: int | None = None
    perturb_xi: bool = False
    timings: bool = False

    def scalars(self) -> ScalarConfig:
        return ScalarConfig.parse(self.field, self.q)

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("out")  # where the report goes is not part of its content
        d["guard"] = H.guard_limit(self.guard)
        return d


class CheckFailed(Exception):
    pass


# --- commands ---------------------------------------------------------------------


def cmd_homology(cfg: RunConfig) -> tuple:
    sc = cfg.scalars()
    if cfg.complex not in C.BUILDERS:
        raise ConfigError(f"--complex must be one of {sorted(C.BUILDERS)}")
    size = C.largest_chain_group(cfg.complex, cfg.n)
    limit = H.guard_limit(cfg.guard)
    if size > limit:
        raise H.SizeGuardError(size, limit, f"{cfg.complex}({cfg.n})")
    cplx = C.BUILDERS[cfg.complex](cfg.n, sc)
    rep = H.homology_dims(cplx, jobs=cfg.jobs, timed=cfg.timings)
    result = rep.to_json()
    result["euler_ok"] = rep.euler_ok()
    code = EXIT_OK
    if cfg.assert_acyclic:
        result["acyclic_through"] = cfg.n - 2
        result["acyclic"] = rep.vanishes_through(cfg.n - 2)
        if not result["acyclic"]:
            code = EXIT_ASSERT
    rows = [["degree", "dim", "rank", "betti"]]
    rows += [[r, rep.dims[r], rep.ranks[r], rep.betti[r]] for r in sorted(rep.dims)]
    return code, result, rows


def _checks_result(checks: list) -> tuple:
    ok = all(c.ok for c in checks)
    result = {"ok": ok, "checks": [c.to_json() for c in checks]}
    rows = [["check", "ok", "checked", "failed"]]
    rows += [[c.name, c.ok, c.checked, c.nfail] for c in checks]
    return (EXIT_OK if ok else EXIT_ASSERT), result, rows


def cmd_identities(cfg: RunConfig) -> tuple:
    return _checks_result(S.identity_suite(cfg.n, cfg.scalars(), perturb_xi=cfg.perturb_xi))


def cmd_filtration(cfg: RunConfig) -> tuple:
    return _checks_result(S.structure_suite(cfg.n, cfg.scalars()))


def _stability_row(args):
    n, d, field, q, kind, guard = args
    sc = ScalarConfig.parse(field, q)
    rep = H.stabilization_map(n, d, sc, kind=kind, guard=guard)
    row = rep.to_json()
    row["asserted"] = rep.in_stable_range
    return row


def cmd_stability(cfg: RunConfig) -> tuple:
    cfg.scalars()  # validate before any work
    d_max = 1 if cfg.d is None else cfg.d
    # the estimate grows in both n and d, so checking the corner guards every row
    limit = H.guard_limit(cfg.guard)
    est = H.tor_estimate(cfg.type, cfg.n, d_max)
    if est > limit:
        raise H.SizeGuardError(est, limit, f"Tor_{d_max} of type {cfg.type}, n={cfg.n}")
    tasks = [(n, d, cfg.field, cfg.q, cfg.type, cfg.guard)
             for n in range(1, cfg.n + 1) for d in range(d_max + 1)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            table = list(ex.map(_stability_row, tasks))
    else:
        table = [_stability_row(t) for t in tasks]
    bad = [r for r in table if r["asserted"] and not r["isomorphism"]]
    tor0 = all(r["dim_source"] == 1 and r["dim_target"] == 1 for r in table if r["d"] == 0)
    result = {"ok": not bad and tor0, "tor0_is_one": tor0, "rows": table,
              "failures": [{"n": r["n"], "d": r["d"]} for r in bad]}
    rows = [["n", "d", "dim_source", "dim_target", "rank", "isomorphism", "asserted"]]
    rows += [[r["n"], r["d"], r["dim_source"], r["dim_target"], r["rank"],
              r["isomorphism"], r["asserted"]] for r in table]
    return (EXIT_OK if result["ok"] else EXIT_ASSERT), result, rows


COMMANDS = {
    "homology": cmd_homology,
    "identities": cmd_identities,
    "filtration": cmd_filtration,
    "stability": cmd_stability,
}


# --- output -------------------------------------------------------------------------


def render(cfg: RunConfig, status: str, code: int, result: dict, rows: list | None) -> str:
    if cfg.format == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["# format_version", FORMAT_VERSION, "command", cfg.command,
                    "n", cfg.n, "field", cfg.field, "q", cfg.q, "status", status])
        w.writerows(rows)
        return buf.getvalue()
    doc = {"format_version": FORMAT_VERSION, "config": cfg.as_dict(),
           "status": status, "exit_code": code, "result": result}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".hhl-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hhl", description="Hecke algebra homology experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n_default):
        p.add_argument("--n", type=int, default=n_default)
        p.add_argument("--q", default="1", help="exact rational 'a' or 'a/b' (or residue)")
        p.add_argument("--field", default="Q", help="Q or Fp:<p>")
        p.add_argument("--out", default=None, help="report path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--guard", type=int, default=None,
                       help="max basis tuples (default 5e6, or $HHL_GUARD)")
        p.add_argument("--timings", action="store_true",
                       help="record elapsed_ms (reports are then not reproducible)")

    p = sub.add_parser("homology", help="Betti numbers of C, Cpm, D or Dpm")
    common(p, 3)
    p.add_argument("--complex", choices=sorted(C.BUILDERS), required=True)
    p.add_argument("--assert-acyclic", action="store_true",
                   help="fail unless betti(d) = 0 for d <= n-2")

    p = sub.add_parser("identities", help="Hecke identity suites up to rank n")
    common(p, 3)
    p.add_argument("--perturb-xi", action="store_true", help="negative control")

    p = sub.add_parser("filtration", help="filtration, quotients, blocks, Phi and Psi")
    common(p, 3)

    p = sub.add_parser("stability", help="stabilisation maps on Tor")
    common(p, 3)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--type", choices=("A", "B"), default="B")
    return ap


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command, n=ns.n, q=ns.q, field=ns.field,
        complex=getattr(ns, "complex", None), d=getattr(ns, "d", None),
        type=getattr(ns, "type", "B"), assert_acyclic=getattr(ns, "assert_acyclic", False),
        out=ns.out, format=ns.format, jobs=max(1, ns.jobs), guard=ns.guard,
        perturb_xi=getattr(ns, "perturb_xi", False), timings=ns.timings,
    )
    if cfg.n < 1:
        raise ConfigError("--n must be >= 1")
    if cfg.d is not None and cfg.d < 0:
        raise ConfigError("--d must be >= 0")
    return cfg


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except ConfigError as e:
        print(f"hhl: error: {e}", file=sys.stderr)
        return EXIT_GUARD
    rows = None
    try:
        code, result, rows = COMMANDS[cfg.command](cfg)
        status = "ok" if code == EXIT_OK else "assertion_failed"
    except ConfigError as e:
        print(f"hhl: error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except H.SizeGuardError as e:
        code, status = EXIT_GUARD, "guard"
        result = {"estimate": e.estimate, "limit": e.limit, "message": str(e)}
        print(f"hhl: refused: {e}", file=sys.stderr)
    except H.IntegrityError as e:
        code, status = EXIT_INTEGRITY, "integrity"
        result = {"message": str(e)}
        print(f"hhl: integrity failure: {e}", file=sys.stderr)
    text = render(cfg, status, code, result, rows)
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    if code == EXIT_ASSERT:
        fails = result.get("failures") or [
            {"check": c["name"], "counterexamples": c["counterexamples"]}
            for c in result.get("checks", []) if not c["ok"]]
        print(f"hhl: assertion failed: {json.dumps(fails, sort_keys=True)}", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
