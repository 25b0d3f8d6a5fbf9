"""Command-line front end.

Every subcommand builds a :class:`~scrolljet.report.Report`; the exit status is
0 when no check failed, 1 otherwise, and 2 for usage or configuration errors.
Parameters come from long flags, optionally seeded by a flat JSON config file
(``--config``); flags win over file values.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field, fields

from . import classify as cl
from . import hqf
from .chowring import push_forward
from .jetchern import (
    cn_closed,
    cn_expansion,
    coeff_table,
    evaluate_on_projective_base,
    plucker_codegree,
    special_case_cn,
)
from .report import PLUMBING, Report, check, info
from .suite import (
    FUKUMA_PRESET,
    HQF_AGREE,
    JET_CASES,
    JET_ORACLE,
    PLUCKER,
    Bounds,
    run_all,
    scroll_pairs,
)

log = logging.getLogger("scrolljet")

COMMANDS = ("verify-identities", "scroll", "hqf", "classify", "conormal", "plucker", "oracle-compare")
PRESETS = {"none": None, "O1": 1, "O2": 2}

# parameter name -> (type, default); None default means required by the command
_COMMON = {"output": (str, ""), "format": (str, "text"), "strict": (bool, False), "n_max": (int, 8)}
_PARAMS = {
    "verify-identities": {"m_max": (int, 6), "binomial_max": (int, 30), "g_max": (int, 3),
                          "eb_max": (int, 10), "search_bound": (int, 10_000), "jobs": (int, 1)},
    "scroll": {"m": (int, None), "r": (int, None), "preset": (str, "none")},
    "hqf": {"n": (int, None), "g": (int, None), "e": (int, None), "b": (int, None)},
    "classify": {"n": (int, None), "defect": (int, None), "picard_rank_one": (bool, False)},
    "conormal": {"N": (int, None), "m": (int, None)},
    "plucker": {"degree": (int, None)},
    "oracle-compare": {"m": (int, 0), "r": (int, 0)},
}
_POSITIVE = {"n_max", "m_max", "binomial_max", "eb_max", "search_bound", "jobs"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    parameters: dict = field(default_factory=dict)
    output: str = ""
    format: str = "text"
    strict: bool = False
    n_max: int = 8

    @classmethod
    def build(cls, command: str, values: dict) -> "RunConfig":
        if command not in COMMANDS:
            raise ConfigError(f"unknown command {command!r}")
        schema = {**_COMMON, **_PARAMS[command]}
        unknown = sorted(set(values) - set(schema))
        if unknown:
            raise ConfigError(f"unknown keys for {command}: {', '.join(unknown)}")
        merged = {}
        for key, (typ, default) in schema.items():
            v = values.get(key, default)
            if v is None:
                raise ConfigError(f"{command} requires --{key.replace('_', '-')}")
            if typ is bool:
                if not isinstance(v, bool):
                    raise ConfigError(f"{key} must be a boolean")
            elif typ is int:
                if isinstance(v, bool) or not isinstance(v, int):
                    raise ConfigError(f"{key} must be an integer")
            elif not isinstance(v, str):
                raise ConfigError(f"{key} must be a string")
            if key in _POSITIVE and v < 1:
                raise ConfigError(f"{key} must be positive")
            merged[key] = v
        if merged["format"] not in ("text", "json"):
            raise ConfigError("format must be 'text' or 'json'")
        if command == "scroll" and merged["preset"] not in PRESETS:
            raise ConfigError(f"preset must be one of {sorted(PRESETS)}")
        common = {k: merged.pop(k) for k in _COMMON}
        return cls(command, merged, **common)

    def echo(self) -> dict:
        out = dict(self.parameters)
        out.update(strict=self.strict, n_max=self.n_max)
        return out


# -- commands -------------------------------------------------------------

def _verify(cfg: RunConfig) -> list:
    p = cfg.parameters
    bounds = Bounds(n_max=cfg.n_max, m_max=p["m_max"], binomial_max=p["binomial_max"], g_max=p["g_max"],
                    eb_max=p["eb_max"], search_bound=p["search_bound"])
    return run_all(bounds, jobs=p["jobs"])


def _scroll(cfg: RunConfig) -> list:
    m, r, preset = cfg.parameters["m"], cfg.parameters["r"], cfg.parameters["preset"]
    twist = PRESETS[preset]
    closed = cn_closed(m, r)
    expanded = cn_expansion(m, r)
    recs = [
        check("top-class", JET_ORACLE, closed == expanded, m=m, r=r, n=m + r - 1,
              c_n=str(closed), base_class=str(push_forward(closed))),
        info("coefficients", JET_ORACLE, nonzero=sorted(coeff_table(m, r).nonzero().items())),
    ]
    if r >= m:
        recs.append(check("special-case", JET_CASES, special_case_cn(m, r) == closed,
                          value=str(push_forward(special_case_cn(m, r)))))
    else:
        recs.append(info("special-case", JET_CASES, value="no closed special case for r < m; see top-class"))
    c = cl.scroll_defect(m, r, cl.BasePreset(twist) if twist else None)
    recs.append(info("defect", c.citations[0] if c.citations else "", **c.as_dict()))
    if twist:
        val = evaluate_on_projective_base(closed, twist)
        recs.append(info("preset-evaluation", FUKUMA_PRESET, preset=preset, c_n=val))
        recs.append(info("codegree", cl.DEFECT_CRITERION, **_codegree(val)))
    if c.outcome in (cl.Outcome.ZERO, cl.Outcome.POSITIVE_AT_LEAST_ONE):
        recs.append(info("positivity-flag", "", note="c_n >= 0 expected for L ample and spanned; not certified"))
    return recs


def _codegree(cn: int) -> dict:
    rep = cl.codegree_report(cn)
    return {"c_n": rep.cn, "status": rep.status, "message": rep.message}


def _hqf(cfg: RunConfig) -> list:
    p = cfg.parameters
    inp = hqf.HQFInput(p["n"], p["g"], p["e"], p["b"])
    warnings = inp.check()
    recs = []
    for i, w in enumerate(warnings):
        if cfg.strict:
            recs.append(check(f"input-warning[{i}]", PLUMBING, False, warning=w))
        else:
            recs.append(info(f"input-warning[{i}]", PLUMBING, warning=w))
    closed, rec = hqf.cn_closed(inp), hqf.cn_recursion(inp)
    recs.append(check("top-class", HQF_AGREE, closed == rec, closed=closed, recursion=rec,
                      abc=list(hqf.abc(inp.n).as_tuple())))
    if inp.n == 4:
        recs.append(info("singular-fibers", PLUMBING, count=hqf.singular_fiber_count(inp.e, inp.b)))
    recs.append(info("codegree", cl.DEFECT_CRITERION, **_codegree(closed)))
    return recs


def _classify(cfg: RunConfig) -> list:
    p = cfg.parameters
    c = cl.classify_by_defect(p["n"], p["defect"], p["picard_rank_one"])
    return [info("classification", c.citations[0] if c.citations else "", **c.as_dict())]


def _conormal(cfg: RunConfig) -> list:
    rep = cl.conormal_invariants(cfg.parameters["N"], cfg.parameters["m"])
    return [info("conormal", rep.citations[0], **rep.as_dict())]


def _plucker(cfg: RunConfig) -> list:
    d = cfg.parameters["degree"]
    p = plucker_codegree(d)
    genus = (d - 1) * (d - 2) // 2
    consistent = p.total == (2 * genus - 2) + 2 * d * (d - 1)
    return [check("plucker", PLUCKER, consistent, degree=d, **p.as_dict()),
            info("codegree", cl.DEFECT_CRITERION, **_codegree(p.total))]


def _oracle_compare(cfg: RunConfig) -> list:
    m, r = cfg.parameters["m"], cfg.parameters["r"]
    if (m == 0) != (r == 0):
        raise ConfigError("give both --m and --r, or neither for a sweep up to --n-max")
    pairs = [(m, r)] if m else scroll_pairs(cfg.n_max)
    recs = []
    for m, r in pairs:
        a, b = cn_closed(m, r), cn_expansion(m, r)
        recs.append(check(f"oracle-compare[m={m},r={r}]", JET_ORACLE, a == b,
                          closed=str(push_forward(a)), expansion=str(push_forward(b))))
    return recs


_RUNNERS = {
    "verify-identities": _verify,
    "scroll": _scroll,
    "hqf": _hqf,
    "classify": _classify,
    "conormal": _conormal,
    "plucker": _plucker,
    "oracle-compare": _oracle_compare,
}


def run(cfg: RunConfig) -> tuple:
    """Execute a configuration; returns ``(exit_status, report)``.

    Domain errors in the inputs (e.g. ``r <= 1``) are raised as :class:`ConfigError`.
    """
    try:
        records = _RUNNERS[cfg.command](cfg)
    except (ValueError, KeyError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    report = Report(cfg.command, cfg.echo(), records)
    for rec in report.failures:
        log.error("check failed: %s %s", rec.name, json.dumps(rec.values, sort_keys=True))
    return report.exit_status(), report


# -- argument parsing -----------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scrolljet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON file with flat key/value parameters")
        sp.add_argument("--output", help="write the report here")
        sp.add_argument("--format", choices=("text", "json"))
        sp.add_argument("--n-max", dest="n_max", type=int)
        sp.add_argument("--strict", action="store_const", const=True, default=None)
        for key, (typ, _) in _PARAMS[name].items():
            flag = "--" + key.replace("_", "-")
            if typ is bool:
                sp.add_argument(flag, dest=key, action="store_const", const=True, default=None)
            else:
                sp.add_argument(flag, dest=key, type=typ)
    return parser


def config_from_args(argv) -> RunConfig:
    args = _parser().parse_args(argv)
    values = {}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        file_cmd = loaded.pop("command", args.command)
        if file_cmd != args.command:
            raise ConfigError(f"config is for {file_cmd!r}, not {args.command!r}")
        values.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key, v in vars(args).items():
        if key in ("command", "config") or v is None:
            continue
        values[key] = v
    return RunConfig.build(args.command, values)


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(argv)
        status, report = run(cfg)
    except ConfigError as exc:
        print(f"scrolljet: error: {exc}", file=sys.stderr)
        return 2
    text = report.render(cfg.format)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
        sys.stdout.write(report.to_text())
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
