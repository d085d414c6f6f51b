"""Line-oriented run configuration format.

See ``docs/config-grammar.md`` for the grammar.  A file is a sequence of
``key = value`` settings, ``#`` comments and two block forms::

    table                   brackets
      e : e s                 x0 x1 = x1
      s : s e               end
    end
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import GroupAlgebra, LieAlgebra

GRAMMAR_VERSION = 1

SUITE_NAMES = ("hopf", "yd", "bialgebroid", "balancing", "antipode", "lu", "lemmas")
OPTIONAL_SUITES = ("controls",)
TRACKS = ("finite-group", "lie-algebra")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_KEYS = {
    "name", "track", "elements", "generators", "window", "suites", "seed", "output",
    "allow_inconclusive", "prec", "samples", "perturbations", "version",
}


class ConfigError(Exception):
    """Invalid but well-formed configuration."""


class ParseError(ConfigError):
    def __init__(self, message: str, line: int, column: int, source: str = "<config>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


@dataclass
class RunConfig:
    name: str
    track: str
    elements: List[str] = field(default_factory=list)
    table: Dict[Tuple[str, str], str] = field(default_factory=dict)
    generators: List[str] = field(default_factory=list)
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = field(default_factory=dict)
    a_cap: Optional[int] = None
    t_cap: Optional[int] = None
    prec: Optional[int] = None
    suites: List[str] = field(default_factory=lambda: list(SUITE_NAMES))
    seed: int = 0
    output: Optional[str] = None
    allow_inconclusive: bool = False
    samples: int = 200
    perturbations: int = 50

    def group(self) -> GroupAlgebra:
        return GroupAlgebra(self.elements, self.table, name=f"k{self.name}")

    def lie(self) -> LieAlgebra:
        return LieAlgebra(self.generators, self.brackets)

    def validate(self) -> None:
        """Raise on inconsistent settings; group and Jacobi checks run here."""
        if self.track not in TRACKS:
            raise ConfigError(f"track must be one of {', '.join(TRACKS)}")
        bad = [s for s in self.suites if s not in SUITE_NAMES + OPTIONAL_SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s): {', '.join(bad)}")
        if self.track == "finite-group":
            if not self.table:
                raise ConfigError("finite-group track needs a table block")
            if self.brackets:
                raise ConfigError("finite-group track cannot have brackets")
            self.group()
        else:
            if not self.generators:
                raise ConfigError("lie-algebra track needs generators")
            if self.table:
                raise ConfigError("lie-algebra track cannot have a table")
            if self.a_cap is None or self.t_cap is None:
                raise ConfigError("lie-algebra track needs window = A=..,T=..")
            self.lie()
        for label, v in (("A cap", self.a_cap), ("T cap", self.t_cap)):
            if v is not None and v < 1:
                raise ConfigError(f"{label} must be >= 1")
        if self.prec is not None and self.t_cap is not None and self.prec < self.t_cap:
            raise ConfigError("prec must be at least the T cap")
        if self.samples < 0 or self.perturbations < 0:
            raise ConfigError("samples and perturbations must be non-negative")

    def summary(self) -> dict:
        out = {
            "name": self.name,
            "track": self.track,
            "suites": list(self.suites),
            "seed": self.seed,
            "samples": self.samples,
            "perturbations": self.perturbations,
            "allow_inconclusive": self.allow_inconclusive,
        }
        if self.track == "finite-group":
            out["group_order"] = len(self.elements)
            out["elements"] = list(self.elements)
        else:
            out["generators"] = list(self.generators)
            out["brackets"] = format_brackets(self.generators, self.brackets)
            out["window"] = {"A": self.a_cap, "T": self.t_cap}
            out["prec"] = self.prec
        return out


def format_brackets(names, brackets) -> List[str]:
    lines = []
    for (i, j), v in sorted(brackets.items()):
        if i >= j:
            continue
        terms = " + ".join(f"{c}*{names[k]}" if c != 1 else names[k] for k, c in sorted(v.items()))
        lines.append(f"[{names[i]},{names[j]}] = {terms or '0'}")
    return lines


def parse_window(text: str) -> Tuple[Optional[int], Optional[int]]:
    """``A=3,T=2`` (either part optional)."""
    a = t = None
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        k, sep, v = part.partition("=")
        k = k.strip().upper()
        if not sep or k not in ("A", "T"):
            raise ValueError(f"bad window component {part!r}")
        try:
            n = int(v.strip())
        except ValueError:
            raise ValueError(f"window cap {v.strip()!r} is not an integer") from None
        if k == "A":
            a = n
        else:
            t = n
    return a, t


def _parse_bool(s: str) -> bool:
    low = s.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ValueError(f"expected true or false, got {s!r}")


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*"
)


def _parse_linear(text: str, names: List[str]) -> Dict[int, Fraction]:
    """``x1``, ``-2*x0 + 1/2 x3`` or ``0``."""
    s = text.strip()
    if s == "0":
        return {}
    out: Dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot read a term at {s[pos:]!r}")
        sign, coef, name = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing + or - before {name!r}")
        if name not in names:
            raise ValueError(f"unknown generator {name!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        k = names.index(name)
        out[k] = out.get(k, Fraction(0)) + c
        pos = m.end()
        first = False
    return {k: c for k, c in out.items() if c}


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse and validate configuration text."""
    settings: Dict[str, Tuple[str, int, int]] = {}
    table_rows: List[Tuple[str, List[str], int, int]] = []
    bracket_rows: List[Tuple[str, str, str, int, int]] = []
    block: Optional[str] = None
    block_line = 0
    seen_blocks = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        if block is not None:
            if stripped == "end":
                block = None
                continue
            if block == "table":
                head, sep, rest = stripped.partition(":")
                if not sep:
                    raise ParseError("table rows look like 'g : p1 p2 ...'", lineno, col, source)
                g = head.strip()
                if not _NAME.fullmatch(g):
                    raise ParseError(f"bad element name {g!r}", lineno, col, source)
                table_rows.append((g, rest.split(), lineno, col))
            else:
                lhs, sep, rhs = stripped.partition("=")
                parts = lhs.split()
                if not sep or len(parts) != 2:
                    raise ParseError("bracket rows look like 'x y = linear combination'", lineno, col, source)
                bracket_rows.append((parts[0], parts[1], rhs, lineno, col + len(lhs) + 1))
            continue
        if stripped in ("table", "brackets"):
            if stripped in seen_blocks:
                raise ParseError(f"duplicate {stripped} block", lineno, col, source)
            seen_blocks.add(stripped)
            block = stripped
            block_line = lineno
            continue
        if stripped == "end":
            raise ParseError("'end' without an open block", lineno, col, source)
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError("expected 'key = value'", lineno, col, source)
        key = key.strip()
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, col, source)
        if key in settings:
            raise ParseError(f"duplicate key {key!r}", lineno, col, source)
        vcol = len(line.partition("=")[0]) + 2
        settings[key] = (value.strip(), lineno, vcol)
    if block is not None:
        raise ParseError(f"unterminated {block} block", block_line, 1, source)

    def get(key, default=None):
        return settings[key][0] if key in settings else default

    def convert(key, fn, default=None):
        if key not in settings:
            return default
        v, ln, c = settings[key]
        try:
            return fn(v)
        except ValueError as exc:
            raise ParseError(str(exc), ln, c, source) from None

    version = convert("version", int, GRAMMAR_VERSION)
    if version != GRAMMAR_VERSION:
        raise ParseError(f"unsupported grammar version {version}", settings["version"][1], 1, source)
    if "track" not in settings:
        raise ParseError("missing 'track'", 1, 1, source)
    cfg = RunConfig(name=get("name", "unnamed"), track=get("track"))
    window = convert("window", parse_window, (None, None))
    cfg.a_cap, cfg.t_cap = window
    cfg.prec = convert("prec", int)
    cfg.seed = convert("seed", int, 0)
    cfg.samples = convert("samples", int, 200)
    cfg.perturbations = convert("perturbations", int, 50)
    cfg.allow_inconclusive = convert("allow_inconclusive", _parse_bool, False)
    cfg.output = get("output")
    if "suites" in settings:
        cfg.suites = [s for s in re.split(r"[,\s]+", get("suites")) if s]

    if cfg.track == "finite-group":
        els = convert("elements", lambda v: v.split(), None)
        if els is None:
            els = [g for g, _, _, _ in table_rows]
        cfg.elements = els
        rows_seen = set()
        for g, prods, ln, c in table_rows:
            if g not in els:
                raise ParseError(f"row for unknown element {g!r}", ln, c, source)
            if g in rows_seen:
                raise ParseError(f"duplicate row for {g!r}", ln, c, source)
            rows_seen.add(g)
            if len(prods) != len(els):
                raise ParseError(f"row {g!r} has {len(prods)} entries, expected {len(els)}", ln, c, source)
            for h, p in zip(els, prods):
                cfg.table[(g, h)] = p
        if table_rows and rows_seen != set(els):
            missing = [g for g in els if g not in rows_seen]
            raise ParseError(f"table misses rows for {', '.join(missing)}", block_line, 1, source)
    else:
        cfg.generators = convert("generators", lambda v: v.split(), [])
        for x, y, rhs, ln, c in bracket_rows:
            for nm in (x, y):
                if nm not in cfg.generators:
                    raise ParseError(f"unknown generator {nm!r}", ln, 1, source)
            try:
                v = _parse_linear(rhs, cfg.generators)
            except ValueError as exc:
                raise ParseError(str(exc), ln, c, source) from None
            i, j = cfg.generators.index(x), cfg.generators.index(y)
            if (i, j) in cfg.brackets:
                raise ParseError(f"duplicate bracket [{x},{y}]", ln, 1, source)
            cfg.brackets[(i, j)] = v
    if table_rows and cfg.track != "finite-group":
        raise ParseError("table block on a lie-algebra track", table_rows[0][2], 1, source)
    if bracket_rows and cfg.track != "lie-algebra":
        raise ParseError("brackets block on a finite-group track", bracket_rows[0][3], 1, source)
    cfg.validate()
    return cfg


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), source=str(path))
