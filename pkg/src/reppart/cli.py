"""Command-line front end.

Exit codes: 0 success (all assertions hold), 1 assertion failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import construction, verifier
from .intset import IntSet
from .repfn import companion, eq_2_5_check, rep_profile
from .solver import InvalidSpecError, ProgressionSpec, solve
from .thue_morse import digit_chain_classify, tm_prefix

WORKERS_ENV = "REPPART_WORKERS"
COMMANDS = ("tm", "construct", "solve", "search", "verify", "identity")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    output_format: str = "plain"
    output_path: str | None = None
    worker_count: int = 1


def _family(text: str) -> int:
    key, _, value = text.partition("=")
    if key != "l" or not value.isdigit() or int(value) < 1:
        raise argparse.ArgumentTypeError(f"expected l=K with K >= 1, got {text!r}")
    return int(value)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _membership_rows(c: IntSet, d: IntSet, horizon: int) -> list[dict]:
    return [{"n": n, "in_c": c.chi(n), "in_d": d.chi(n)} for n in range(horizon + 1)]


def _need(params: dict, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise UsageError("missing parameter(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _cmd_tm(cfg: RunConfig) -> tuple[int, str]:
    p = cfg.parameters
    _need(p, "level")
    tm = tm_prefix(p["level"])
    classify = p.get("classify")
    if cfg.output_format == "json":
        obj = {"level": tm.level, "evil": tm.evil.to_json(), "odious": tm.odious.to_json()}
        if classify is not None:
            cls, e = digit_chain_classify(classify)
            obj["classify"] = {"M": classify, "class": cls.value, "exponent": e}
        return 0, _canonical(obj)
    if cfg.output_format == "csv":
        return 0, _csv([{"n": n, "evil": tm.evil.chi(n)} for n in range(tm.evil.bound + 1)])
    text = f"evil {tm.evil}\nodious {tm.odious}\n"
    if classify is not None:
        cls, e = digit_chain_classify(classify)
        text += f"chain M={classify} {cls.value} exponent={e}\n"
    return 0, text


def _cmd_construct(cfg: RunConfig) -> tuple[int, str]:
    p = cfg.parameters
    l = p.get("family") or p.get("l")
    if l is None or l < 1:
        raise UsageError("construct needs --l >= 1 or --family l=K")
    _need(p, "horizon")
    if p["horizon"] < 0:
        raise UsageError("--horizon must be >= 0")
    c, d = construction.theorem1_construct(l, p["horizon"])
    r1, r2, m = construction.family_parameters(l)
    inter = c & d
    if cfg.output_format == "json":
        return 0, _canonical({"l": l, "r1": r1, "r2": r2, "m": m, "horizon": p["horizon"],
                              "c": c.to_json(), "d": d.to_json(), "intersection": inter.to_json()})
    if cfg.output_format == "csv":
        return 0, _csv(_membership_rows(c, d, p["horizon"]))
    return 0, f"C {c}\nD {d}\nC&D {inter}\n"


def _spec_from(p: dict) -> ProgressionSpec:
    kind = p["kind"]
    if kind == "finite":
        return ProgressionSpec.finite(p.get("members") or [])
    if kind == "single":
        _need(p, "r", "m")
        return ProgressionSpec.single(p["r"], p["m"])
    if p.get("family"):
        r1, r2, m = construction.family_parameters(p["family"])
        return ProgressionSpec.pair(r1, r2, m)
    _need(p, "r1", "r2", "m")
    return ProgressionSpec.pair(p["r1"], p["r2"], p["m"])


def _cmd_solve(cfg: RunConfig) -> tuple[int, str]:
    p = cfg.parameters
    spec = _spec_from(p)
    horizon = p.get("horizon")
    if horizon is None:
        if spec.kind.value == "finite":
            raise UsageError("solve finite needs --horizon")
        horizon = 8 * spec.m
    out = solve(spec, horizon)
    if cfg.output_format == "json":
        return 0, _canonical({"spec": spec.to_json(), "horizon": horizon, **out.to_json()})
    if cfg.output_format == "csv":
        if out.c_set is None:
            return 0, _csv([{"status": out.status.value, "fail_index": out.fail_index,
                             "branch_index": out.branch_index}])
        return 0, _csv(_membership_rows(out.c_set, out.d_set, horizon))
    lines = [f"status {out.status.value}"]
    if out.c_set is not None:
        lines += [f"C {out.c_set}", f"D {out.d_set}"]
    if out.fail_index is not None:
        lines.append(f"fail_index {out.fail_index}")
    if out.branch_index is not None:
        lines.append(f"branch_index {out.branch_index}")
    return 0, "\n".join(lines) + "\n"


def _emit_certificate(cfg: RunConfig, cert: verifier.Certificate) -> tuple[int, str]:
    code = 0 if cert.passed else 1
    if cfg.output_format == "json":
        return code, cert.dumps(include_rows=True) + "\n"
    if cfg.output_format == "csv":
        if cert.rows:
            return code, cert.to_csv()
        return code, _csv([{"check": k, "passed": v} for k, v in cert.checks.items()])
    lines = [f"scenario {cert.scenario} {cert.outcome}"]
    lines += [f"  {k}: {'ok' if v else 'FAILED'}" for k, v in cert.checks.items()]
    if cert.survivors:
        lines.append("survivors")
        lines += ["  " + " ".join(map(str, s)) for s in cert.survivors]
    for k in ("expected_family", "max_fail_index_ratio", "partial_prefix"):
        if k in cert.notes:
            lines.append(f"{k} {cert.notes[k]}")
    return code, "\n".join(lines) + "\n"


def _cmd_search(cfg: RunConfig) -> tuple[int, str]:
    p = cfg.parameters
    _need(p, "m_max")
    kind, w = p["kind"], cfg.worker_count
    if kind == "pair":
        if p["m_max"] < 3 or p["factor"] < 4:
            raise UsageError("search pair needs --m-max >= 3 and --factor >= 4")
        cert = verifier.necessity_search(p["m_max"], p["factor"], p["parity"], workers=w)
    elif kind == "single":
        if p["m_max"] < 2:
            raise UsageError("search single needs --m-max >= 2")
        cert = verifier.single_progression_search(p["m_max"], p["factor"], p["include_r_zero"], workers=w)
    else:
        if p["m_max"] < 4:
            raise UsageError("search claim2 needs --m-max >= 4")
        cert = verifier.claim2_search(p["m_max"], workers=w)
    return _emit_certificate(cfg, cert)


def _cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    p = cfg.parameters
    l = p.get("family") or p.get("l")
    if l is None or l < 1:
        raise UsageError("verify needs --l >= 1 or --family l=K")
    if p["kind"] == "sufficiency":
        _need(p, "horizon")
        cert = verifier.verify_sufficiency(l, p["horizon"])
    else:
        cert = verifier.claim3_verify(l)
    return _emit_certificate(cfg, cert)


def _cmd_identity(cfg: RunConfig) -> tuple[int, str]:
    p = cfg.parameters
    _need(p, "members", "r1", "r2", "m")
    c = IntSet.from_members(p["members"], p["m"])
    res = eq_2_5_check(c, p["r1"], p["r2"], p["m"])
    d = companion(c, p["r1"], p["r2"], p["m"])
    direct = rep_profile(c, p["m"]) == rep_profile(d, p["m"])
    code = 0 if res.equal == direct else 1
    if cfg.output_format == "json":
        return code, _canonical({"equal": res.equal, "first_mismatch": res.first_mismatch,
                                 "direct_profiles_equal": direct,
                                 "lhs": res.lhs.to_json(), "rhs": res.rhs.to_json()})
    if cfg.output_format == "csv":
        return code, _csv([{"degree": i, "lhs": a, "rhs": b}
                           for i, (a, b) in enumerate(zip(res.lhs.coeffs, res.rhs.coeffs))])
    text = f"identity {'holds' if res.equal else 'fails'}"
    if res.first_mismatch is not None:
        text += f" (first mismatch at degree {res.first_mismatch})"
    return code, text + f"\ndirect profile comparison {'equal' if direct else 'differs'}\n"


_DISPATCH = {
    "tm": _cmd_tm,
    "construct": _cmd_construct,
    "solve": _cmd_solve,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "identity": _cmd_identity,
}


def run(config: RunConfig, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    if config.command not in _DISPATCH:
        print(f"unknown command {config.command!r}", file=sys.stderr)
        return 2
    if config.worker_count < 1:
        print("worker count must be >= 1", file=sys.stderr)
        return 2
    try:
        code, text = _DISPATCH[config.command](config)
    except (UsageError, InvalidSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--output", dest="output_path")
    common.add_argument("--workers", dest="worker_count", type=int,
                        default=int(os.environ.get(WORKERS_ENV, "1")))

    parser = argparse.ArgumentParser(prog="reppart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tm", parents=[common], help="Thue-Morse prefixes A_l / B_l")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--classify", type=int, help="also classify the digit chain of M")

    p = sub.add_parser("construct", parents=[common], help="build the even-r1 family pair")
    p.add_argument("--l", type=int)
    p.add_argument("--family", type=_family)
    p.add_argument("--horizon", type=int, required=True)

    p = sub.add_parser("solve", parents=[common], help="forced-extension reconstruction")
    p.add_argument("kind", choices=("pair", "single", "finite"))
    p.add_argument("--r1", type=int)
    p.add_argument("--r2", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--members", type=_int_list, help="finite intersection, e.g. 6,7")
    p.add_argument("--family", type=_family)
    p.add_argument("--horizon", type=int)

    p = sub.add_parser("search", parents=[common], help="exhaustive scenario search")
    p.add_argument("kind", choices=("pair", "single", "claim2"))
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--factor", type=int, default=8)
    p.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    p.add_argument("--include-r-zero", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="sufficiency or Claim-3 check")
    p.add_argument("kind", choices=("sufficiency", "claim3"))
    p.add_argument("--l", type=int)
    p.add_argument("--family", type=_family)
    p.add_argument("--horizon", type=int)

    p = sub.add_parser("identity", parents=[common], help="truncated generating-function identity")
    p.add_argument("--members", type=_int_list, required=True)
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--r2", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    return RunConfig(
        command=ns.pop("command"),
        output_format=ns.pop("output_format"),
        output_path=ns.pop("output_path"),
        worker_count=ns.pop("worker_count"),
        parameters=ns,
    )


def main(argv: list[str] | None = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
