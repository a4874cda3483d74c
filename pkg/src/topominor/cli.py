"""Command line entry point.

Every subcommand is a thin adapter over a library call.  Results print as a
short human summary (or JSON with ``--json``) and, with ``--log``, a run
record is appended to a JSONL file so the run can be replayed and its output
digest compared.

Exit codes: 0 ok, 1 hypothesis violation, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from . import containment, enumeration, gadgets, growths, randgen, tangles
from .errors import BudgetExceeded, HypothesisViolation
from .graph import Graph, edge_connectivity, nonadjacent_twins, vertex_connectivity
from .graph6 import Graph6Error, emit_graph6, parse_graph6
from .named import by_name, complete

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def payload_digest(payload) -> str:
    return digest(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def load_graph(spec: str) -> Graph:
    """A graph6 file (first non-empty line), ``g6:<string>``, or a builtin name."""
    if spec.startswith("g6:"):
        return parse_graph6(spec[3:])
    path = Path(spec)
    if path.is_file():
        for line in path.read_text().splitlines():
            if line.strip():
                return parse_graph6(line)
        raise UsageError(f"{spec}: no graph6 line found")
    try:
        return by_name(spec)
    except KeyError:
        raise UsageError(f"{spec!r} is neither a readable graph6 file nor a known graph name") from None


def _vertex_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


class Run:
    """Collects inputs and the output payload of one invocation."""

    def __init__(self, args):
        self.args = args
        self.inputs: dict[str, str] = {}
        self.lines: list[str] = []

    def graph(self, name: str, spec: str | None) -> Graph:
        if spec is None:
            raise UsageError(f"--{name} is required")
        g = load_graph(spec)
        self.inputs[name] = digest(emit_graph6(g))
        return g

    def say(self, text: str) -> None:
        self.lines.append(text)

    def write_out(self, text: str) -> None:
        if self.args.out:
            Path(self.args.out).write_text(text)


# ---------------------------------------------------------------------------
# Subcommands. Each returns (exit code, payload).


def cmd_gadget(run: Run, a):
    base = run.graph("base", a.base)
    g = gadgets.assemble_gadget(base, a.d, a.seed)
    g6 = emit_graph6(g)
    run.write_out(g6 + "\n")
    run.say(f"G_D: n={g.n} m={g.m} {a.d}-regular={g.is_regular(a.d)}")
    if not a.out:
        run.say(g6)
    return EXIT_OK, {"n": g.n, "m": g.m, "graph6": g6}


def cmd_recover_base(run: Run, a):
    g = run.graph("g", a.g)
    base = gadgets.recover_base(g, gadgets.build_block(a.d))
    g6 = emit_graph6(base)
    run.write_out(g6 + "\n")
    run.say(f"base: n={base.n} m={base.m}")
    run.say(g6)
    return EXIT_OK, {"n": base.n, "m": base.m, "graph6": g6,
                     "canonical": enumeration.canonical_form(base).decode()}


def cmd_certify(run: Run, a):
    g = run.graph("g", a.g)
    bp = gadgets.build_block(a.d)
    blocks = gadgets.find_blocks(g, bp)
    cert = gadgets.no_subdivision_certificate(g, bp, blocks)
    data = cert.to_json()
    run.write_out(json.dumps(data) + "\n")
    run.say(f"certificate issued: {len(blocks)} blocks, no subdivision of K_{a.d + 1}")
    return EXIT_OK, data


def cmd_check(run: Run, a):
    g = run.graph("g", a.g)
    h = run.graph("h", a.h)
    if a.relation == "minor":
        res = containment.contains_minor(g, h, budget=a.budget)
    else:
        res = containment.contains_subdivision(g, h, budget=a.budget)
    verdict = "present" if res is not None else "absent"
    run.say(verdict)
    payload = {"relation": a.relation, "verdict": verdict, "certificate": res.to_json() if res else None}
    if res is not None:
        run.write_out(json.dumps(payload["certificate"]) + "\n")
    return EXIT_OK, payload


def cmd_connectivity(run: Run, a):
    g = run.graph("g", a.g)
    k, lam = vertex_connectivity(g), edge_connectivity(g)
    run.say(f"vertex connectivity {k}, edge connectivity {lam}")
    return EXIT_OK, {"vertex_connectivity": k, "edge_connectivity": lam}


def cmd_twins(run: Run, a):
    g = run.graph("g", a.g)
    pairs = nonadjacent_twins(g)
    run.say(f"{len(pairs)} nonadjacent twin pairs")
    for u, v in pairs:
        run.say(f"{u} {v}")
    return EXIT_OK, {"pairs": [list(p) for p in pairs]}


def _constraints(run: Run, a) -> enumeration.Constraints:
    return enumeration.Constraints(
        min_degree=a.min_degree,
        max_degree=a.max_degree,
        connectivity=a.connectivity,
        forbidden_subdivision=run.graph("forbidden_subdivision", a.forbidden_subdivision) if a.forbidden_subdivision else None,
        forbidden_minor=run.graph("forbidden_minor", a.forbidden_minor) if a.forbidden_minor else None,
    )


def cmd_count(run: Run, a):
    c = _constraints(run, a)
    count = enumeration.count_class(a.n, c, budget=a.budget, workers=a.threads)
    run.say(str(count))
    return EXIT_OK, {"n": a.n, "constraints": c.to_json(), "count": count}


def cmd_enumerate(run: Run, a):
    c = _constraints(run, a)
    graphs = enumeration.enumerate_class(a.n, c, budget=a.budget, workers=a.threads)
    lines = [emit_graph6(g) for g in graphs]
    text = "".join(x + "\n" for x in lines)
    if a.out:
        run.write_out(text)
        run.say(f"{len(lines)} graphs written to {a.out}")
    else:
        run.lines.extend(lines)
    return EXIT_OK, {"n": a.n, "constraints": c.to_json(), "count": len(lines), "graph6_digest": digest(text)}


def cmd_growth(run: Run, a):
    g = run.graph("g", a.g)
    if a.action == "reduce":
        step = growths.find_reduction(g, a.d)
        if step is None:
            run.say("no reduction")
            return EXIT_OK, {"step": None}
        j = growths.apply_reduction(g, step)
        run.say(f"{step.kind} kind, k={step.k}: {step.pairs} -> n={j.n}")
        return EXIT_OK, {"step": step.to_json(), "result": emit_graph6(j)}
    kinds = [k.strip() for k in a.kinds.split(",")] if a.kinds else list(growths.KINDS)
    out = growths.enumerate_expansions(g, a.k, a.d, kinds, budget=a.budget)
    lines = [emit_graph6(x) for x in out]
    run.write_out("".join(x + "\n" for x in lines))
    run.say(f"{len(lines)} unlabelled {a.k}-growths (bound {growths.growth_bound(g.n, a.k, a.d)})")
    if not a.out:
        run.lines.extend(lines)
    return EXIT_OK, {"count": len(lines), "graphs": lines}


def _tangle_for(run: Run, a, g: Graph) -> tangles.Tangle:
    if a.tangle:
        data = json.loads(Path(a.tangle).read_text())
        t = tangles.Tangle.from_json(g, data)
        run.inputs["tangle"] = digest(json.dumps(data, sort_keys=True))
        return t
    t_needed = math.ceil(3 * a.theta / 2)
    model = containment.contains_minor(g, complete(t_needed), budget=a.budget)
    if model is None:
        raise HypothesisViolation(f"no K_{t_needed} minor, so no clique-minor tangle of order {a.theta}")
    return tangles.clique_minor_tangle(g, model, a.theta, budget=a.budget)


def cmd_tangle(run: Run, a):
    g = run.graph("g", a.g)
    if a.theta is None:
        raise UsageError("--theta is required")
    if a.action == "separations":
        seps = tangles.enumerate_separations(g, a.theta, budget=a.budget)
        run.say(f"{len(seps)} separations of order < {a.theta}")
        data = [s.to_json() for s in seps]
        run.write_out(json.dumps(data) + "\n")
        return EXIT_OK, {"count": len(seps), "separations": data}
    t = _tangle_for(run, a, g)
    if a.action == "check":
        rep = tangles.is_tangle(g, a.theta if not a.tangle else t.theta, t.members, budget=a.budget)
        run.say("tangle" if rep.ok else f"not a tangle: axiom {rep.axiom} ({rep.detail})")
        run.write_out(json.dumps(t.to_json()) + "\n")
        return (EXIT_OK if rep.ok else EXIT_VIOLATION), {"members": len(t.members), "report": rep.to_json()}
    if a.action == "rank":
        x = _vertex_list(a.x)
        r = tangles.rank(t, x)
        run.say(f"rank {r}, free={r == len(set(x))}")
        return EXIT_OK, {"x": x, "rank": r, "free": r == len(set(x))}
    w = _vertex_list(a.w)
    r = tangles.restrict_tangle(t, w)
    rep = tangles.is_tangle(r.graph, r.theta, r.members, budget=a.budget)
    data = r.to_json()
    run.write_out(json.dumps(data) + "\n")
    run.say(f"restricted tangle of order {r.theta} on {r.graph.n} vertices, valid={rep.ok}")
    return (EXIT_OK if rep.ok else EXIT_VIOLATION), {"tangle": data, "valid": rep.ok}


def cmd_random_regular(run: Run, a):
    if a.seed is None:
        raise UsageError("random-regular needs an explicit --seed")
    try:
        spec = randgen.RegularSpec(a.n, a.d, a.seed, a.connectivity or 0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = randgen.random_regular(spec)
    g6 = emit_graph6(g)
    run.write_out(g6 + "\n")
    run.say(g6)
    return EXIT_OK, {"n": g.n, "d": a.d, "graph6": g6}


def cmd_estimate(run: Run, a):
    try:
        lg = randgen.log_bender_canfield_estimate(a.n, a.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = randgen.bender_canfield_estimate(a.n, a.d)
    run.say(f"{value:.6g} (ln {lg:.6f})")
    return EXIT_OK, {"n": a.n, "d": a.d, "estimate": value if math.isfinite(value) else None, "log_estimate": lg}


def cmd_replay(run: Run, a):
    if not a.log_file:
        raise UsageError("replay needs a log file")
    results = []
    for line in Path(a.log_file).read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec.get("command") == "replay":
            continue
        ok = replay(rec)
        results.append({"command": rec["command"], "ok": ok})
        run.say(f"{'ok' if ok else 'MISMATCH'} {' '.join(rec['argv'])}")
    bad = sum(not r["ok"] for r in results)
    return (EXIT_OK if not bad else EXIT_VIOLATION), {"replayed": len(results), "mismatches": bad}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=containment.DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", default=None, help="write the main result here")
    common.add_argument("--log", default=None, help="append a JSONL run record here")
    common.add_argument("--json", action="store_true", help="print the result payload as JSON")

    p = argparse.ArgumentParser(prog="topominor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gadget", parents=[common], help="build G_D from a base graph")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--base", required=True)
    s.set_defaults(fn=cmd_gadget)

    s = sub.add_parser("recover-base", parents=[common], help="contract the block copies of G_D")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--g", required=True)
    s.set_defaults(fn=cmd_recover_base)

    s = sub.add_parser("certify", parents=[common], help="issue the no-subdivision certificate for G_D")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--g", required=True)
    s.set_defaults(fn=cmd_certify)

    s = sub.add_parser("check", parents=[common], help="exact containment test")
    s.add_argument("relation", choices=["subdivision", "minor"])
    s.add_argument("--g", required=True)
    s.add_argument("--h", required=True)
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("connectivity", parents=[common], help="vertex and edge connectivity")
    s.add_argument("--g", required=True)
    s.set_defaults(fn=cmd_connectivity)

    s = sub.add_parser("twins", parents=[common], help="nonadjacent twin pairs")
    s.add_argument("--g", required=True)
    s.set_defaults(fn=cmd_twins)

    for name, fn in (("count", cmd_count), ("enumerate", cmd_enumerate)):
        s = sub.add_parser(name, parents=[common], help=f"{name} unlabelled graphs in a class")
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--min-degree", type=int)
        s.add_argument("--max-degree", type=int)
        s.add_argument("--connectivity", type=int)
        s.add_argument("--forbidden-minor")
        s.add_argument("--forbidden-subdivision")
        s.set_defaults(fn=fn)

    s = sub.add_parser("growth", parents=[common], help="k-growth reduction or expansion")
    s.add_argument("action", choices=["reduce", "expand"])
    s.add_argument("--g", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--kinds", default=None, help="comma list of first,second")
    s.set_defaults(fn=cmd_growth)

    s = sub.add_parser("tangle", parents=[common], help="separations and clique-minor tangles")
    s.add_argument("action", choices=["separations", "check", "rank", "restrict"])
    s.add_argument("--g", required=True)
    s.add_argument("--theta", type=int)
    s.add_argument("--tangle", help="tangle JSON (default: build one from a clique minor)")
    s.add_argument("--x", help="comma separated vertex set for rank")
    s.add_argument("--w", help="comma separated vertex set to delete")
    s.set_defaults(fn=cmd_tangle)

    s = sub.add_parser("random-regular", parents=[common], help="uniform random simple d-regular graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--connectivity", type=int, default=0)
    s.set_defaults(fn=cmd_random_regular)

    s = sub.add_parser("estimate", parents=[common], help="asymptotic count of labelled d-regular graphs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(fn=cmd_estimate)

    s = sub.add_parser("replay", parents=[common], help="re-run logged commands and compare output digests")
    s.add_argument("log_file")
    s.set_defaults(fn=cmd_replay)
    return p


def execute(argv: Sequence[str]) -> tuple[int, dict | None, Run | None, float]:
    """Parse and run; returns (exit code, payload, run, runtime in ms) without logging."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), None, None, 0.0
    if args.command == "gadget" and args.seed is None:
        args.seed = 0
    run = Run(args)
    t0 = time.perf_counter()
    try:
        code, payload = args.fn(run, args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET, {"error": "budget", "detail": str(exc)}, run, 0.0
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION, {"error": "violation", **exc.to_json()}, run, 0.0
    except (UsageError, Graph6Error, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None, run, 0.0
    return code, payload, run, (time.perf_counter() - t0) * 1000


def run_record(argv: Sequence[str], code: int, payload, run: Run, runtime_ms: float) -> dict:
    return {
        "command": run.args.command,
        "argv": list(argv),
        "inputs": run.inputs,
        "output": payload,
        "output_digest": payload_digest(payload),
        "exit": code,
        "seed": run.args.seed,
        "runtime_ms": round(runtime_ms, 3),
        "version": __version__,
    }


def append_record(path: str, record: dict) -> None:
    line = (json.dumps(record, sort_keys=True) + "\n").encode()
    fd = os.open(path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
    try:
        os.write(fd, line)
    finally:
        os.close(fd)


def _strip_side_effects(argv: Sequence[str]) -> list[str]:
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in ("--log", "--out"):
            skip = True
            continue
        if tok.startswith("--log=") or tok.startswith("--out="):
            continue
        out.append(tok)
    return out


def replay(record: dict) -> bool:
    """Re-run a logged command (without --log/--out) and compare output digests."""
    code, payload, _, _ = execute(_strip_side_effects(record["argv"]))
    return code == record.get("exit", code) and payload_digest(payload) == record["output_digest"]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, payload, run, ms = execute(argv)
    if run is None:
        return code
    if payload is not None and code in (EXIT_OK, EXIT_VIOLATION):
        if run.args.json:
            print(json.dumps(payload, sort_keys=True))
        else:
            for line in run.lines:
                print(line)
    if run.args.log and payload is not None:
        append_record(run.args.log, run_record(argv, code, payload, run, ms))
    return code


if __name__ == "__main__":
    sys.exit(main())
