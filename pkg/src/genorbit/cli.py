"""Command-line front end.

Every command reads JSON, writes one JSON report (``"schema": 1``) and
exits with 0 on success, 2 when a verification finds a counterexample and
1 on malformed input or an exceeded budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .fpmodule import FpModule, ModuleError
from .genvec import (
    BudgetExceeded,
    GenVector,
    GLWitness,
    are_equivalent,
    canonicalize,
    classify,
    det_invariant,
    det_rel,
)
from .matrix import ExactMatrix, MatrixError
from .oracle import DEFAULT_BUDGET, orbit_partition, verify_det_bijection, verify_lifting
from .rings import InfiniteRingError, RingError, ring_from_json
from .smith import smith_normal_form

SCHEMA = 1
COMMANDS = ("snf", "decompose", "mu", "fitt", "detinv", "canon", "equiv", "classify", "orbits", "verify")


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    ring: dict
    payload: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "ring": self.ring,
                "payload": self.payload, "options": self.options}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "JobSpec":
        if not isinstance(obj, dict):
            raise InputError("a job must be a JSON object")
        if obj.get("schema", SCHEMA) != SCHEMA:
            raise InputError(f"unsupported schema {obj.get('schema')!r}")
        try:
            return cls(obj["command"], obj["ring"], obj.get("payload", {}), obj.get("options", {}))
        except KeyError as exc:
            raise InputError(f"job is missing {exc.args[0]!r}") from None

    @classmethod
    def loads(cls, text: str) -> "JobSpec":
        return cls.from_json(json.loads(text))


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# execution


def _module(job: JobSpec) -> FpModule:
    R = ring_from_json(job.ring)
    obj = job.payload.get("module")
    if obj is None:
        raise InputError(f"command {job.command!r} needs a module")
    return FpModule.from_json(obj, owner=R)


def _vector(M: FpModule, obj, name: str) -> GenVector:
    if obj is None:
        raise InputError(f"missing {name}")
    if not isinstance(obj, list):
        raise InputError(f"{name} must be an array of coordinate columns")
    return GenVector.from_json(M, obj)


def _module_summary(M: FpModule) -> dict:
    R = M.owner
    return {"generators": M.k, "mu": M.mu,
            "chain": [R.element_to_json(g) for g in M.chain_generators]}


def _vec_json(M: FpModule, v: GenVector) -> dict:
    R = M.owner
    return {"lifts": v.to_json(),
            "decomposed": [[R.element_to_json(x) for x in col] for col in v.decomposed()]}


def execute(job: JobSpec) -> tuple[int, dict]:
    """Run a job; returns (exit code, report body)."""
    cmd = job.command
    opts = job.options
    budget = int(opts.get("budget", DEFAULT_BUDGET))
    group = str(opts.get("group", "sl"))
    result: dict[str, Any]
    code = 0
    if cmd == "snf":
        R = ring_from_json(job.ring)
        if "matrix" not in job.payload:
            raise InputError("snf needs a matrix")
        A = ExactMatrix.from_json(R, job.payload["matrix"], ncols=job.payload.get("cols"))
        d = smith_normal_form(A)
        result = {"B": d.B.to_json(), "S": d.S.to_json(), "C": d.C.to_json(),
                  "invariant_factors": [R.element_to_json(x) for x in d.invariant_factors]}
    elif cmd == "decompose":
        M = _module(job)
        R = M.owner
        result = dict(_module_summary(M), free_rank=M.free_rank, P=M.P.to_json(), P_inv=M.P_inv.to_json())
    elif cmd == "mu":
        M = _module(job)
        result = {"mu": M.mu}
    elif cmd == "fitt":
        M = _module(job)
        if "i" not in job.payload:
            raise InputError("fitt needs an index i")
        i = int(job.payload["i"])
        F = M.fitting_ideal(i)
        result = {"i": i, "generator": F.to_json()}
        try:
            result["minors_agree"] = M.fitting_ideal_from_minors(i) == F
        except MatrixError:
            result["minors_agree"] = None
    elif cmd == "detinv":
        M = _module(job)
        m = _vector(M, job.payload.get("vector"), "vector")
        if job.payload.get("reference") is not None:
            d = det_rel(M, _vector(M, job.payload["reference"], "reference"), m)
        else:
            d = det_invariant(M, m)
        result = d.to_json()
    elif cmd == "canon":
        M = _module(job)
        if group.lower() not in ("sl", "e"):
            raise InputError("canon supports --group sl or e")
        m = _vector(M, job.payload.get("vector"), "vector")
        canon, w = canonicalize(M, m, group)
        result = {"canonical": _vec_json(M, canon), "witness": w.to_json(),
                  "has_diag_letters": w.has_diag()}
    elif cmd == "equiv":
        M = _module(job)
        m = _vector(M, job.payload.get("vector"), "vector")
        m2 = _vector(M, job.payload.get("other"), "other")
        w = are_equivalent(M, m, m2, group)
        if w is None:
            result = {"equivalent": False}
        elif isinstance(w, GLWitness):
            result = {"equivalent": True, "witness": w.to_json()}
        else:
            result = {"equivalent": True, "witness": w.to_json()}
    elif cmd == "classify":
        M = _module(job)
        n = int(job.payload.get("n", M.mu))
        result = classify(M, n, group).to_json()
    elif cmd == "orbits":
        M = _module(job)
        n = int(job.payload.get("n", M.mu))
        result = orbit_partition(M, n, group, budget).to_json()
    elif cmd == "verify":
        M = _module(job)
        result = {}
        ok = True
        if M.mu:
            rep = verify_det_bijection(M, budget)
            result["det_bijection"] = rep
            ok &= rep["ok"]
            n = int(job.payload.get("n", M.mu + 1))
            orb = orbit_partition(M, n, "SL", budget)
            trans = {"n": n, "orbit_count": orb.orbit_count}
            if n > M.mu:
                trans["ok"] = orb.orbit_count == 1
                ok &= trans["ok"]
            result["transitivity"] = trans
        if job.payload.get("ideal") is not None:
            R = M.owner
            a = R.element_from_json(job.payload["ideal"])
            n = int(job.payload.get("n", M.mu))
            rep = verify_lifting(M, a, n, budget)
            result["lifting"] = rep
            ok &= rep["ok"]
        result["ok"] = bool(ok)
        code = 0 if ok else 2
    else:  # pragma: no cover - guarded by JobSpec
        raise InputError(f"unknown command {cmd!r}")
    return code, {"schema": SCHEMA, "command": cmd, "ring": job.ring, "options": _report_options(job),
                  "result": result}


def _report_options(job: JobSpec) -> dict:
    return {k: v for k, v in sorted(job.options.items()) if k != "out"}


def run(job: JobSpec) -> tuple[int, str]:
    """Execute and serialize; input problems become exit code 1 with an error report."""
    try:
        code, report = execute(job)
    except (InputError, RingError, MatrixError, ModuleError, InfiniteRingError, BudgetExceeded,
            ValueError, KeyError, TypeError) as exc:
        kind = "budget" if isinstance(exc, BudgetExceeded) else "input"
        return 1, dumps_report({"schema": SCHEMA, "command": job.command, "error": {"kind": kind,
                                                                                    "message": str(exc)}})
    return code, dumps_report(report)


# ---------------------------------------------------------------------------
# argument handling


def _load_json(value: str | None, what: str):
    """Parse inline JSON or read it from a file path."""
    if value is None:
        return None
    text = value.strip()
    if text[:1] in "[{\"" or text.lstrip("-").isdigit():
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed inline JSON for {what}: {exc}") from None
    if not os.path.exists(value):
        raise InputError(f"{what}: no such file {value!r}")
    with open(value, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {value}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genorbit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"genorbit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, module=True):
        sp.add_argument("--ring", help="ring descriptor: a bare name (Z), inline JSON or a file")
        if module:
            sp.add_argument("--module", help="module JSON file (or inline JSON)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--out", help="write the report here instead of stdout")
        return sp

    s = common(sub.add_parser("snf", help="Smith normal form with witnesses"), module=False)
    s.add_argument("--matrix", required=True, help="matrix JSON (array of rows) or a file")
    common(sub.add_parser("decompose", help="invariant-factor decomposition"))
    common(sub.add_parser("mu", help="minimal number of generators"))
    s = common(sub.add_parser("fitt", help="Fitting ideal Fitt_i"))
    s.add_argument("i", type=int)
    s = common(sub.add_parser("detinv", help="determinant invariant of a vector of length mu"))
    s.add_argument("--vector", required=True)
    s.add_argument("--reference")
    s = common(sub.add_parser("canon", help="canonical form with a witness word"))
    s.add_argument("--vector", required=True)
    s.add_argument("--group", choices=("sl", "e"), default="sl")
    s = common(sub.add_parser("equiv", help="decide equivalence of two vectors"))
    s.add_argument("--vector", required=True)
    s.add_argument("--other", required=True)
    s.add_argument("--group", choices=("sl", "e", "gl"), default="sl")
    for name, hlp in (("classify", "orbit classification"), ("orbits", "brute-force orbit partition")):
        s = common(sub.add_parser(name, help=hlp))
        s.add_argument("--n", type=int)
        s.add_argument("--group", choices=("sl", "e", "gl"), default="sl")
    s = common(sub.add_parser("verify", help="exhaustive checks over a finite ring"))
    s.add_argument("--n", type=int)
    s.add_argument("--ideal", help="ideal generator for the lifting check (JSON element)")
    s = sub.add_parser("run", help="execute a saved job file")
    s.add_argument("job")
    s.add_argument("--out")
    return p


def job_from_args(args: argparse.Namespace) -> JobSpec:
    if args.command == "run":
        return JobSpec.from_json(_load_json(args.job, "job"))
    if args.ring is not None and args.ring.isidentifier() and not os.path.exists(args.ring):
        ring = {"ring": args.ring}  # bare name such as Z
    else:
        ring = _load_json(args.ring, "ring")
    payload: dict[str, Any] = {}
    if args.command == "snf":
        payload["matrix"] = _load_json(args.matrix, "matrix")
    else:
        module = _load_json(args.module, "module")
        if module is None:
            raise InputError("--module is required")
        if not isinstance(module, dict):
            raise InputError("module JSON must be an object")
        module = dict(module)
        if ring is None:
            ring = module.get("ring")
        module.pop("ring", None)
        payload["module"] = module
    if ring is None:
        raise InputError("a ring is required (--ring, or a 'ring' field in the module)")
    if isinstance(ring, str):
        ring = {"ring": ring}
    for name in ("i", "n"):
        if getattr(args, name, None) is not None:
            payload[name] = getattr(args, name)
    for name in ("vector", "reference", "other"):
        if getattr(args, name, None) is not None:
            payload[name] = _load_json(getattr(args, name), name)
    if getattr(args, "ideal", None) is not None:
        payload["ideal"] = _load_json(args.ideal, "ideal")
    options: dict[str, Any] = {"budget": args.budget}
    if getattr(args, "group", None) is not None:
        options["group"] = args.group
    if args.out:
        options["out"] = args.out
    return JobSpec(args.command, ring, payload, options)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = job_from_args(args)
    except (InputError, RingError) as exc:
        sys.stderr.write(dumps_report({"schema": SCHEMA, "command": args.command,
                                       "error": {"kind": "input", "message": str(exc)}}))
        return 1
    code, text = run(job)
    out = job.options.get("out") or getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        (sys.stderr if code == 1 else sys.stdout).write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
