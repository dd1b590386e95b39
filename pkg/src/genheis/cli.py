"""Command-line front end.

Usage::

    genheis list
    genheis <experiment> [--flag value ...] [--config FILE] [--out PATH]

A config file is INI text. Keys in ``[common]`` apply to every experiment,
keys in ``[<experiment>]`` to that one only; command-line flags win over both.
The JSON report goes to stdout and, with ``--out``, atomically to a file.

Exit status: 0 PASS (or no counterexample), 1 FAIL (or counterexample found),
2 INCONCLUSIVE, 3 invalid configuration.
"""

from __future__ import annotations

import argparse
import configparser
import inspect
import json
import math
import os
import re
import sys
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

import numpy as np

from . import __version__
from . import experiments as E
from .dlp import FAIL, INCONCLUSIVE, PASS
from .errors import ConfigError, GenHeisError

EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
EXIT_CONFIG = 3
COMMON_SECTION = "common"


# -- parameter types --------------------------------------------------------


def _exponent(text) -> Any:
    """``"sup"``/``"inf"`` -> inf, ``"4/3"`` -> Fraction, else Fraction of the decimal."""
    s = str(text).strip().lower()
    if s in ("sup", "inf", "infinity"):
        return math.inf
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exponent: {text!r}") from None
    if value < 1:
        raise ValueError(f"exponent must be >= 1 or 'sup', got {text}")
    return value


def _real(text) -> float:
    s = str(text).strip()
    try:
        value = float(Fraction(s)) if "/" in s else float(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"must be finite, got {text}")
    return value


def _integer(text) -> int:
    s = str(text).strip()
    try:
        return int(s)
    except ValueError:
        pass
    try:
        value = float(s)
    except ValueError:
        raise ValueError(f"not an integer: {text!r}") from None
    if not value.is_integer():
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


def _boolean(text) -> bool:
    s = str(text).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _list_of(item: Callable) -> Callable:
    def parse(text):
        if isinstance(text, (list, tuple)):
            return tuple(item(t) for t in text)
        parts = [t for t in re.split(r"[,\s]+", str(text).strip()) if t]
        if not parts:
            raise ValueError("empty list")
        return tuple(item(t) for t in parts)

    return parse


def _mode(text) -> str:
    s = str(text).strip().lower()
    if s not in ("exact", "float"):
        raise ValueError(f"mode must be 'exact' or 'float', got {text!r}")
    return s


def _positive(x):
    return x > 0


def _at_least(k):
    return lambda x: x >= k


@dataclass(frozen=True)
class Param:
    parse: Callable
    check: Optional[Callable] = None
    rule: str = ""


_PARAMS = {
    "p": Param(_exponent),
    "dim": Param(_integer, _at_least(1), ">= 1"),
    "mode": Param(_mode),
    "trials": Param(_integer, _at_least(1), ">= 1"),
    "seed": Param(_integer, _at_least(0), ">= 0"),
    "tol": Param(_real, _positive, "> 0"),
    "rtol": Param(_real, _positive, "> 0"),
    "window": Param(_integer, _at_least(2), ">= 2"),
    "caps": Param(_integer, _at_least(2), ">= 2"),
    "N": Param(_integer, _at_least(1), ">= 1"),
    "M": Param(_integer, _at_least(1), ">= 1"),
    "n_max": Param(_integer, _at_least(1), ">= 1"),
    "bound": Param(_real, _positive, "> 0"),
    "epsilon0": Param(_real, _positive, "> 0"),
    "grid": Param(_integer, _at_least(1), ">= 1"),
    "target_min": Param(_real),
    "target_max": Param(_real),
    "unbounded": Param(_boolean),
    "search": Param(_boolean),
    "budget": Param(_integer, _at_least(1), ">= 1"),
    "n_points": Param(_integer, _at_least(1), ">= 1"),
    "dims": Param(_list_of(_integer), lambda v: all(d >= 1 for d in v), "all >= 1"),
}
# kernels take float exponents; schoenberg sweeps several
_OVERRIDES = {
    ("schoenberg", "p"): Param(_list_of(_real), lambda v: all(x >= 1 for x in v), "all >= 1"),
    ("kernel-search", "p"): Param(_real, _at_least(1), ">= 1"),
    ("center", "p"): Param(_exponent, lambda v: 1 < v < math.inf, "strictly between 1 and sup"),
    ("phi", "p"): Param(_exponent, lambda v: 1 < v < math.inf, "strictly between 1 and sup"),
    ("dlp-pairing", "p"): Param(_exponent, lambda v: 1 < v < math.inf, "strictly between 1 and sup"),
    ("dlp-norm", "p"): Param(_exponent, lambda v: 1 <= v < math.inf, "finite"),
}


@dataclass(frozen=True)
class Experiment:
    name: str
    func: Callable
    summary: str

    def params(self) -> dict:
        sig = inspect.signature(self.func)
        return {k: v.default for k, v in sig.parameters.items()}

    def param_spec(self, key: str) -> Param:
        return _OVERRIDES.get((self.name, key), _PARAMS[key])


CATALOG = (
    Experiment("group-axioms", E.group_axioms,
               "exact group laws of H(w): associativity, identity, inverse, nilpotency, commutator formula"),
    Experiment("matrix-rep", E.matrix_rep,
               "unitriangular matrix model is an injective homomorphism"),
    Experiment("blowup", E.blowup,
               "norm of q(u^n) equals n * max(||x||, ||f||) for every power"),
    Experiment("center", E.center,
               "every central value is a commutator with a covector of norm <= epsilon0"),
    Experiment("c0", E.c0,
               "reproduces the c0 counterexample: iterated limits 1 and 2, so the DLP fails"),
    Experiment("dlp-norm", E.dlp_norm,
               "DLP of ||x_n + y_m|| for bounded step functions in L_p[0,1]"),
    Experiment("dlp-pairing", E.dlp_pairing,
               "DLP of the reflexive pairing f_n(x_m) between l_p and l_q"),
    Experiment("phi", E.phi_experiment,
               "separating function 1/(1+|a|+||x||+||f||) on H(l_p) and its three pieces under the DLP"),
    Experiment("schoenberg", E.schoenberg,
               "Gram matrices of exp(-||x-y||_p^p): PSD sweep, or --search for a p > 2 counterexample"),
    Experiment("kernel-search", E.kernel_search,
               "counterexample search for positive definiteness of exp(-||x-y||_p^p)"),
)
EXPERIMENTS = {e.name: e for e in CATALOG}


def list_experiments() -> str:
    """Catalog text, one ``name: description`` line per experiment, fixed order."""
    return "\n".join(f"{e.name}: {e.summary}" for e in CATALOG)


# -- config -------------------------------------------------------------------


def _key_lines(path: str) -> dict:
    """``(section, key) -> line number`` for precise error messages."""
    lines = {}
    section = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            m = re.match(r"^\[([^\]]+)\]$", line)
            if m:
                section = m.group(1).strip()
                lines[(section, None)] = lineno
                continue
            m = re.match(r"^([^=:#;\s][^=:]*?)\s*[=:]", line)
            if m and section is not None:
                lines[(section, m.group(1).strip())] = lineno
    return lines


def read_config(path: str, experiment: str) -> dict:
    """Raw string values from ``[common]`` and ``[<experiment>]``; the latter wins.

    Each value is paired with its ``file:line`` location.
    """
    parser = configparser.ConfigParser(interpolation=None, default_section="__none__")
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh, source=path)
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from None
    except configparser.Error as exc:
        raise ConfigError(" ".join(str(exc).split())) from None
    where = _key_lines(path)
    for section in parser.sections():
        if section != COMMON_SECTION and section not in EXPERIMENTS:
            line = where.get((section, None), "?")
            raise ConfigError(f"{path}:{line}: unknown section [{section}]")
    values = {}
    for section in (COMMON_SECTION, experiment):
        if parser.has_section(section):
            for key, value in parser.items(section):
                values[key] = (value, f"{path}:{where.get((section, key), '?')}")
    return values


def resolve(experiment: str, flags: dict, config_path: Optional[str] = None) -> dict:
    """Validated keyword arguments for ``experiment``: defaults < config < flags."""
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}; see 'genheis list'")
    exp = EXPERIMENTS[experiment]
    allowed = exp.params()
    resolved = dict(allowed)
    sources = {}
    if config_path:
        raw = read_config(config_path, experiment)
        for key, (value, loc) in raw.items():
            if key == "out":
                continue
            if key not in allowed:
                raise ConfigError(f"{loc}: unknown key {key!r} for experiment {experiment}")
            resolved[key] = value
            sources[key] = loc
    for key, value in flags.items():
        if value is None:
            continue
        if key not in allowed:
            raise ConfigError(f"--{key}: unknown option for experiment {experiment}")
        resolved[key] = value
        sources[key] = f"--{key}"
    out = {}
    for key, value in resolved.items():
        spec = exp.param_spec(key)
        loc = sources.get(key, "default")
        try:
            parsed = spec.parse(value) if isinstance(value, str) or key in sources else value
        except ValueError as exc:
            raise ConfigError(f"{loc}: invalid value for {key}: {exc}") from None
        if spec.check is not None and not spec.check(parsed):
            raise ConfigError(f"{loc}: {key} must be {spec.rule}, got {value}")
        out[key] = parsed
    if "N" in out and "window" in out and min(out["N"], out["M"]) < 2 * out["window"]:
        raise ConfigError(f"{sources.get('N', 'default')}: N and M must be >= 2 * window")
    if "caps" in out and out["caps"] < 2 * out["window"]:
        raise ConfigError(f"{sources.get('caps', 'default')}: caps must be >= 2 * window")
    if "target_min" in out and out["target_min"] > out["target_max"]:
        raise ConfigError(f"{sources.get('target_min', 'default')}: target_min exceeds target_max")
    return out


# -- reports --------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, float) and obj == math.inf:
        return "sup"
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def run(experiment: str, params: dict) -> tuple:
    """Execute a validated configuration; returns ``(report, exit_code)``."""
    exp = EXPERIMENTS[experiment]
    start = time.perf_counter()
    body = exp.func(**params)
    wall = time.perf_counter() - start
    echo = {k: v for k, v in params.items() if k != "seed"}
    report = {
        "experiment": experiment,
        "params": echo,
        "verdict": body["verdict"],
        "witnesses": body.get("witnesses", []),
        "details": body.get("details", {}),
        "seed": params["seed"],
        "version": __version__,
        "wall_time": wall,
    }
    for key in ("c1", "c2"):
        if key in body:
            report[key] = body[key]
    return _jsonable(report), EXIT_CODES[body["verdict"]]


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".genheis-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- argument parsing -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genheis", description="Generalized Heisenberg group experiments.")
    parser.add_argument("--version", action="version", version=f"genheis {__version__}")
    sub = parser.add_subparsers(dest="experiment", metavar="EXPERIMENT", parser_class=_Parser)
    sub.add_parser("list", help="print the experiment catalog")
    for exp in CATALOG:
        sp = sub.add_parser(exp.name, help=exp.summary, description=exp.summary)
        sp.add_argument("--config", metavar="FILE", help="INI file with [common] and [%s] sections" % exp.name)
        sp.add_argument("--out", metavar="PATH", help="also write the JSON report to PATH")
        sp.add_argument("--quiet", action="store_true", help="do not print the report to stdout")
        for key, default in exp.params().items():
            if isinstance(default, bool):
                grp = sp.add_mutually_exclusive_group()
                grp.add_argument(f"--{key}", dest=key, action="store_const", const="true", default=None)
                grp.add_argument(f"--no-{key}", dest=key, action="store_const", const="false")
            else:
                sp.add_argument(f"--{key}", dest=key, default=None, metavar="VALUE",
                                help=f"default: {_jsonable(default)}")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.experiment is None:
            raise ConfigError("genheis: choose an experiment (see 'genheis list')")
        if args.experiment == "list":
            print(list_experiments())
            return 0
        ns = vars(args)
        exp = EXPERIMENTS[args.experiment]
        flags = {k: ns.get(k) for k in exp.params()}
        params = resolve(args.experiment, flags, args.config)
        out = args.out
        if out is None and args.config:
            raw = read_config(args.config, args.experiment)
            if "out" in raw:
                out = raw["out"][0]
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        report, code = run(args.experiment, params)
    except GenHeisError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = dumps(report)
    if out:
        write_atomic(out, text)
    if not args.quiet:
        sys.stdout.write(text)
    print(f"{args.experiment}: {report['verdict']} (exit {code})", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
