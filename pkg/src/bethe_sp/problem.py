"""JSON problem files: parsing, normalization and emission.

All numbers travel as strings in exact Gaussian-rational text form
(``"3/2"``, ``"-1/4i"``, ``"1/2+3i"``); floats are rejected.
"""

import json
from dataclasses import dataclass, field

from .errors import ParseError
from .exactnum import GaussianRational
from .kernels import BetheConfig, RValue
from .scalar import VARIANTS, SEMI

VERSION = "bethe-sp/1"
COMMANDS = ("crosscheck", "identities", "norm", "formfactor", "bench")
_KEYS = {
    "version", "command", "variant", "seed", "trials", "max_a", "max_b", "height",
    "config", "norm", "formfactor", "bench",
}


@dataclass
class ProblemFile:
    command: str = None
    variant: str = SEMI
    seed: int = None
    trials: int = None
    max_a: int = None
    max_b: int = None
    height: int = None
    config: BetheConfig = None
    norm: dict = None
    formfactor: dict = None
    bench: dict = field(default=None)


def _line_of(text, needle):
    """1-based line of the first JSON string literal equal to ``needle``."""
    if text is None or not isinstance(needle, str):
        return None
    pos = text.find(json.dumps(needle))
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


class _Reader:
    def __init__(self, text):
        self.text = text

    def fail(self, message, where, value=None):
        line = _line_of(self.text, value)
        raise ParseError(message if line is None else f"{message} (line {line})", where)

    def number(self, value, where):
        if not isinstance(value, str):
            self.fail(f"numbers must be rational strings, got {type(value).__name__}", where)
        try:
            return GaussianRational.parse(value)
        except ParseError as exc:
            self.fail(str(exc), where, value)

    def numbers(self, value, where):
        if not isinstance(value, list):
            self.fail("expected a list of rational strings", where)
        return [self.number(v, f"{where}[{k}]") for k, v in enumerate(value)]

    def integer(self, value, where, minimum=0):
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            self.fail(f"expected an integer >= {minimum}", where)
        return value

    def table(self, value, where):
        if not isinstance(value, dict):
            self.fail("expected an object mapping points to values", where)
        out = {}
        for key, v in value.items():
            point = self.number(key, f"{where}.{key}")
            if isinstance(v, list):
                if not 1 <= len(v) <= 2:
                    self.fail("expected [value] or [value, derivative]", f"{where}.{key}")
                vals = self.numbers(v, f"{where}.{key}")
                out[point] = RValue(*vals)
            else:
                out[point] = RValue(self.number(v, f"{where}.{key}"))
        return out

    def config(self, value, where="config"):
        if not isinstance(value, dict):
            self.fail("expected an object", where)
        unknown = set(value) - {"c", "uC", "vC", "uB", "vB", "varkappa", "kappa", "r1", "r3",
                                "check_poles"}
        if unknown:
            self.fail(f"unknown keys {sorted(unknown)}", where)
        if "c" not in value:
            self.fail("missing crossing constant c", where)
        kw = {"c": self.number(value["c"], f"{where}.c")}
        for name in ("uC", "vC", "uB", "vB"):
            kw[name] = self.numbers(value.get(name, []), f"{where}.{name}")
        if "varkappa" in value:
            kw["varkappa"] = self.number(value["varkappa"], f"{where}.varkappa")
        if "kappa" in value:
            kappa = self.numbers(value["kappa"], f"{where}.kappa")
            if len(kappa) != 3:
                self.fail("kappa must have three entries", f"{where}.kappa")
            kw["kappa"] = tuple(kappa)
        kw["r1_table"] = self.table(value.get("r1", {}), f"{where}.r1")
        kw["r3_table"] = self.table(value.get("r3", {}), f"{where}.r3")
        if "check_poles" in value:
            if not isinstance(value["check_poles"], bool):
                self.fail("expected true or false", f"{where}.check_poles")
            kw["check_poles"] = value["check_poles"]
        return BetheConfig(**kw)


def parse_problem(text):
    """Parse problem-file text; domain errors in the config propagate."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}", "file") from None
    return problem_from_dict(raw, text)


def problem_from_dict(raw, text=None):
    rd = _Reader(text)
    if not isinstance(raw, dict):
        rd.fail("the top level must be an object", "file")
    unknown = set(raw) - _KEYS
    if unknown:
        rd.fail(f"unknown keys {sorted(unknown)}", "file")
    version = raw.get("version", VERSION)
    if version != VERSION:
        rd.fail(f"unsupported version {version!r}", "version", version)
    pf = ProblemFile()
    if "command" in raw:
        if raw["command"] not in COMMANDS:
            rd.fail(f"unknown command {raw['command']!r}", "command", raw["command"])
        pf.command = raw["command"]
    if "variant" in raw:
        if raw["variant"] not in VARIANTS:
            rd.fail(f"variant must be one of {VARIANTS}", "variant", raw["variant"])
        pf.variant = raw["variant"]
    for name, minimum in (("seed", 0), ("trials", 0), ("max_a", 0), ("max_b", 0), ("height", 1)):
        if name in raw:
            setattr(pf, name, rd.integer(raw[name], name, minimum))
    if "config" in raw:
        pf.config = rd.config(raw["config"])
    if "norm" in raw:
        pf.norm = _norm_section(rd, raw["norm"])
    if "formfactor" in raw:
        pf.formfactor = _formfactor_section(rd, raw["formfactor"])
    if "bench" in raw:
        pf.bench = _bench_section(rd, raw["bench"])
    return pf


def _norm_section(rd, value):
    if not isinstance(value, dict):
        rd.fail("expected an object", "norm")
    out = {}
    if "sizes" in value:
        out["sizes"] = _sizes(rd, value["sizes"], "norm.sizes")
    if "u" in value or "v" in value:
        for key in ("c", "u", "v", "directions", "derivs"):
            if key not in value:
                rd.fail(f"missing {key}", "norm")
        out["c"] = rd.number(value["c"], "norm.c")
        out["u"] = rd.numbers(value["u"], "norm.u")
        out["v"] = rd.numbers(value["v"], "norm.v")
        dirs = value["directions"]
        if not isinstance(dirs, list) or not dirs:
            rd.fail("expected a non-empty list of [alpha, beta] pairs", "norm.directions")
        out["directions"] = [_pair(rd, d, f"norm.directions[{k}]") for k, d in enumerate(dirs)]
        out["derivs"] = _pair(rd, value["derivs"], "norm.derivs")
    return out


def _pair(rd, value, where):
    if not isinstance(value, list) or len(value) != 2:
        rd.fail("expected a pair of lists", where)
    return [rd.numbers(value[0], f"{where}[0]"), rd.numbers(value[1], f"{where}[1]")]


def _sizes(rd, value, where):
    if not isinstance(value, list):
        rd.fail("expected a list of [a, b] pairs", where)
    out = []
    for k, pair in enumerate(value):
        if not isinstance(pair, list) or len(pair) != 2:
            rd.fail("expected [a, b]", f"{where}[{k}]")
        out.append((rd.integer(pair[0], f"{where}[{k}][0]"), rd.integer(pair[1], f"{where}[{k}][1]")))
    return out


def _formfactor_section(rd, value):
    if not isinstance(value, dict):
        rd.fail("expected an object", "formfactor")
    out = {}
    if "i" in value:
        out["i"] = [rd.integer(value["i"], "formfactor.i", 1)] if not isinstance(value["i"], list) \
            else [rd.integer(x, f"formfactor.i[{k}]", 1) for k, x in enumerate(value["i"])]
        if any(i > 3 for i in out["i"]):
            rd.fail("i must be 1, 2 or 3", "formfactor.i")
    if "pivot" in value and value["pivot"] is not None:
        out["pivot"] = rd.integer(value["pivot"], "formfactor.pivot")
    if "sizes" in value:
        out["sizes"] = _sizes(rd, value["sizes"], "formfactor.sizes")
    return out


def _bench_section(rd, value):
    if not isinstance(value, dict):
        rd.fail("expected an object", "bench")
    out = {}
    if "sizes" in value:
        if not isinstance(value["sizes"], list) or not value["sizes"]:
            rd.fail("expected a non-empty list of sizes", "bench.sizes")
        out["sizes"] = [rd.integer(n, f"bench.sizes[{k}]") for k, n in enumerate(value["sizes"])]
    if "allow_large" in value:
        if not isinstance(value["allow_large"], bool):
            rd.fail("expected true or false", "bench.allow_large")
        out["allow_large"] = value["allow_large"]
    if "repeats" in value:
        out["repeats"] = rd.integer(value["repeats"], "bench.repeats", 1)
    return out


# --- emission ---------------------------------------------------------------


def _text(x):
    return str(x)


def _table_dict(table):
    out = {}
    for point, rv in table.items():
        out[_text(point)] = [_text(rv.value)] if rv.deriv is None else [_text(rv.value), _text(rv.deriv)]
    return out


def config_to_dict(cfg):
    out = {
        "c": _text(cfg.c),
        "uC": [_text(x) for x in cfg.uC],
        "vC": [_text(x) for x in cfg.vC],
        "uB": [_text(x) for x in cfg.uB],
        "vB": [_text(x) for x in cfg.vB],
        "varkappa": _text(cfg.varkappa),
        "kappa": [_text(k) for k in cfg.kappa],
        "r1": _table_dict(cfg.r1_table),
        "r3": _table_dict(cfg.r3_table),
    }
    if not cfg.check_poles:
        out["check_poles"] = False
    return out


def problem_to_dict(pf):
    out = {"version": VERSION}
    if pf.command is not None:
        out["command"] = pf.command
    out["variant"] = pf.variant
    for name in ("seed", "trials", "max_a", "max_b", "height"):
        if getattr(pf, name) is not None:
            out[name] = getattr(pf, name)
    if pf.config is not None:
        out["config"] = config_to_dict(pf.config)
    if pf.norm is not None:
        norm = {}
        if "sizes" in pf.norm:
            norm["sizes"] = [list(s) for s in pf.norm["sizes"]]
        if "u" in pf.norm:
            norm["c"] = _text(pf.norm["c"])
            norm["u"] = [_text(x) for x in pf.norm["u"]]
            norm["v"] = [_text(x) for x in pf.norm["v"]]
            norm["directions"] = [[[_text(x) for x in part] for part in d]
                                  for d in pf.norm["directions"]]
            norm["derivs"] = [[_text(x) for x in part] for part in pf.norm["derivs"]]
        out["norm"] = norm
    if pf.formfactor is not None:
        ff = dict(pf.formfactor)
        if "sizes" in ff:
            ff["sizes"] = [list(s) for s in ff["sizes"]]
        out["formfactor"] = ff
    if pf.bench is not None:
        out["bench"] = dict(pf.bench)
    return out


def emit_problem(pf):
    return json.dumps(problem_to_dict(pf), indent=2, sort_keys=True)
