"""Line-oriented circuit description language.

A document is a sequence of statements, one per line::

    # nested degenerate Sagnac
    register a b
    scenario omega=7.292e-05 area_lp1c=0.0 area_lp2q=1.0 G=1.25
    inject scheme=degenerate_single alpha=1000.0
    bs a b
    phase a theta=delta_a1
    dpa a phi=phi1
    measure mode=b angle=0.0

Element statements take mode names positionally and ``key=value`` arguments.
Phase-like arguments accept a number or a (possibly negated) symbol that is
resolved against the rotation phase budget when the circuit is built, so the
same document can be evaluated at any angular velocity. Everything after
``#`` on a line is a comment.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field

from .gaussian import ModeLabel, ModeRegister

KEYWORDS = ("register", "scenario", "inject", "measure", "bs", "phase", "dpa", "npa")
ELEMENT_KEYWORDS = ("bs", "phase", "dpa", "npa")

#: symbols an element argument may reference
SYMBOLS = frozenset(
    ["pi", "phi1", "phi1p", "phi2", "phi2p"]
    + [f"{name}{suffix}"
       for name in ("delta1", "delta2", "delta_a1", "delta_b1", "delta_a4", "delta_b4", "loop_half")
       for suffix in ("", "_s", "_i")]
)

SCENARIO_NUMBERS = ("omega", "area_lp1c", "area_lp2q", "lambda_s", "lambda_i", "lambda_p", "c", "G")
SCENARIO_KEYS = SCENARIO_NUMBERS + ("split", "nonlinearity")
NONLINEARITIES = ("chi2", "chi3")
SCHEMES = ("degenerate_single", "nondegenerate_single", "nondegenerate_dual")
COMBINES = ("single", "sum_of_two")

# (number of modes, required args, optional args)
ELEMENT_SIGNATURES = {
    "bs": (2, (), ()),
    "phase": (1, ("theta",), ()),
    "dpa": (1, ("phi",), ("G",)),
    "npa": (2, ("phi",), ("G",)),
}

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")
_COMPLEX = re.compile(
    r"(?:(?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)j"
    r"|(?P<only_im>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)j"
    r"|(?P<only_re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?))\Z")
_SYMBOL = re.compile(r"(-?)([A-Za-z_][A-Za-z0-9_]*)\Z")


class CircuitParseError(ValueError):
    """Structured parse error carrying position and offending token."""

    kind = "syntax"

    def __init__(self, message, line=0, column=0, token=""):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}: " if line else ""
        tok = f" (at {token!r})" if token else ""
        super().__init__(f"{where}{message}{tok}")


class NoRegisterError(CircuitParseError):
    kind = "no_register"


class UnknownKeywordError(CircuitParseError):
    kind = "unknown_keyword"


class UndeclaredModeError(CircuitParseError):
    kind = "undeclared_mode"


class MalformedNumberError(CircuitParseError):
    kind = "malformed_number"


class DuplicateMeasurementError(CircuitParseError):
    kind = "duplicate_measurement"


class BadArgumentError(CircuitParseError):
    kind = "bad_argument"


class UnknownSymbolError(CircuitParseError):
    kind = "unknown_symbol"


class BadRegisterError(CircuitParseError):
    kind = "bad_register"


class DuplicateBlockError(CircuitParseError):
    kind = "duplicate_block"


class EncodingError(CircuitParseError):
    kind = "encoding"


@dataclass(frozen=True)
class Param:
    """Numeric literal or symbolic reference (optionally negated)."""

    number: float | None = None
    symbol: str | None = None
    negate: bool = False

    def resolve(self, table):
        if self.symbol is None:
            return self.number
        value = table[self.symbol]
        return -value if self.negate else value

    def __str__(self):
        if self.symbol is None:
            return repr(self.number)
        return ("-" if self.negate else "") + self.symbol


@dataclass(frozen=True)
class ElementStmt:
    kind: str
    modes: tuple
    params: tuple = ()

    def param(self, key):
        for k, v in self.params:
            if k == key:
                return v
        return None


@dataclass(frozen=True)
class MeasureStmt:
    modes: tuple
    angle: float = 0.0
    combine: str = "single"


@dataclass(frozen=True)
class CircuitDoc:
    register: tuple
    elements: tuple = ()
    scenario: tuple = ()
    inject: tuple | None = None
    measure: MeasureStmt | None = None
    comment: str = field(default="", compare=False)

    @property
    def scenario_dict(self):
        return dict(self.scenario)

    @property
    def inject_dict(self):
        return dict(self.inject or ())

    def mode_register(self):
        return ModeRegister(self.register)


def default_dark_port(register):
    """Mode measured when a document has no ``measure`` statement."""
    for name in ("b", "b.s", "b.i"):
        if name in register:
            return name
    return register[-1]


def _fmt_number(x):
    return repr(float(x))


def _fmt_complex(z):
    z = complex(z)
    if z.imag == 0:
        return _fmt_number(z.real)
    im = repr(float(z.imag))
    if not im.startswith("-"):
        im = "+" + im
    return f"{_fmt_number(z.real)}{im}j"


def serialize(doc: CircuitDoc) -> str:
    """Canonical text form; ``parse_circuit(serialize(d)) == d``."""
    lines = []
    if doc.comment:
        lines.extend(f"# {c}" if c else "#" for c in doc.comment.splitlines())
    lines.append("register " + " ".join(doc.register))
    if doc.scenario:
        parts = []
        for k, v in doc.scenario:
            if k == "split":
                parts.append("split=" + ",".join(_fmt_number(f) for f in v))
            elif k == "nonlinearity":
                parts.append(f"nonlinearity={v}")
            else:
                parts.append(f"{k}={_fmt_number(v)}")
        lines.append("scenario " + " ".join(parts))
    if doc.inject is not None:
        parts = []
        for k, v in doc.inject:
            parts.append(f"alpha={_fmt_complex(v)}" if k == "alpha" else f"{k}={v}")
        lines.append("inject " + " ".join(parts))
    for el in doc.elements:
        words = [el.kind, *el.modes] + [f"{k}={v}" for k, v in el.params]
        lines.append(" ".join(words))
    m = doc.measure
    lines.append(f"measure mode={','.join(m.modes)} angle={_fmt_number(m.angle)} combine={m.combine}")
    return "\n".join(lines) + "\n"


class _Line:
    def __init__(self, number, tokens):
        self.number = number
        self.tokens = tokens  # list of (column, text)

    def err(self, cls, message, col=None, token=""):
        if col is None:
            col = self.tokens[0][0] if self.tokens else 1
        return cls(message, self.number, col, token)


def _tokenize(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if tokens:
            yield _Line(lineno, tokens)


def _number(line, col, key, text):
    if not _NUMBER.match(text) or not math.isfinite(float(text)):
        raise line.err(MalformedNumberError, f"malformed number for {key!r}", col, text)
    return float(text)


def _kv(line, col, tok):
    key, sep, value = tok.partition("=")
    if not sep or not key or not value:
        raise line.err(BadArgumentError, "expected key=value", col, tok)
    return key, value, col + len(key) + 1


def _parse_param(line, col, key, text):
    if _NUMBER.match(text):
        return Param(number=_number(line, col, key, text))
    m = _SYMBOL.match(text)
    if not m:
        if re.match(r"[+-]?[\d.]", text):
            raise line.err(MalformedNumberError, f"malformed number for {key!r}", col, text)
        raise line.err(BadArgumentError, f"bad value for {key!r}", col, text)
    if m.group(2) not in SYMBOLS:
        raise line.err(UnknownSymbolError, f"unknown symbol {m.group(2)!r}", col, text)
    return Param(symbol=m.group(2), negate=bool(m.group(1)))


def _parse_register(line):
    if len(line.tokens) < 2:
        raise line.err(BadRegisterError, "register needs at least one mode")
    names = []
    for col, tok in line.tokens[1:]:
        try:
            names.append(ModeLabel.parse(tok).name)
        except ValueError:
            raise line.err(BadRegisterError, "invalid mode name", col, tok) from None
    try:
        ModeRegister(tuple(names))
    except ValueError as exc:
        raise line.err(BadRegisterError, str(exc), line.tokens[1][0], line.tokens[1][1]) from None
    return tuple(names)


def _check_mode(line, col, tok, register):
    if register is None or tok not in register:
        raise line.err(UndeclaredModeError, f"mode {tok!r} is not declared", col, tok)
    return tok


def _parse_element(line, register):
    kind = line.tokens[0][1]
    n_modes, required, optional = ELEMENT_SIGNATURES[kind]
    args = line.tokens[1:]
    split = next((k for k, (_, t) in enumerate(args) if "=" in t), len(args))
    positional, keyed = args[:split], args[split:]
    for col, tok in keyed:
        if "=" not in tok:
            raise line.err(BadArgumentError, "mode names must precede key=value arguments", col, tok)
    if len(positional) != n_modes:
        raise line.err(BadArgumentError, f"{kind} takes {n_modes} mode(s), got {len(positional)}")
    modes = tuple(_check_mode(line, c, t, register) for c, t in positional)
    if len(set(modes)) != len(modes):
        raise line.err(BadArgumentError, f"{kind} needs distinct modes", positional[-1][0], positional[-1][1])
    params = {}
    for col, tok in keyed:
        key, value, vcol = _kv(line, col, tok)
        if key not in required and key not in optional:
            raise line.err(BadArgumentError, f"unknown argument {key!r} for {kind}", col, tok)
        if key in params:
            raise line.err(BadArgumentError, f"argument {key!r} given twice", col, tok)
        if key == "G":
            g = _number(line, vcol, key, value)
            if g < 1.0:
                raise line.err(BadArgumentError, "gain G must be >= 1", vcol, value)
            params[key] = Param(number=g)
        else:
            params[key] = _parse_param(line, vcol, key, value)
    for key in required:
        if key not in params:
            raise line.err(BadArgumentError, f"{kind} requires {key}=...")
    order = required + optional
    return ElementStmt(kind, modes, tuple((k, params[k]) for k in order if k in params))


def _parse_scenario(line):
    items = []
    seen = set()
    for col, tok in line.tokens[1:]:
        key, value, vcol = _kv(line, col, tok)
        if key not in SCENARIO_KEYS:
            raise line.err(BadArgumentError, f"unknown scenario key {key!r}", col, tok)
        if key in seen:
            raise line.err(BadArgumentError, f"scenario key {key!r} given twice", col, tok)
        seen.add(key)
        if key == "split":
            parts = value.split(",")
            if len(parts) != 3:
                raise line.err(BadArgumentError, "split needs three comma-separated fractions", vcol, value)
            fracs = tuple(_number(line, vcol, key, p) for p in parts)
            if any(f < 0 for f in fracs) or abs(sum(fracs) - 1.0) > 1e-12:
                raise line.err(BadArgumentError, "split fractions must be nonnegative and sum to 1", vcol, value)
            items.append((key, fracs))
        elif key == "nonlinearity":
            if value not in NONLINEARITIES:
                raise line.err(BadArgumentError, "nonlinearity must be chi2 or chi3", vcol, value)
            items.append((key, value))
        else:
            x = _number(line, vcol, key, value)
            if key in ("area_lp1c", "area_lp2q") and x < 0:
                raise line.err(BadArgumentError, "areas must be nonnegative", vcol, value)
            if key in ("lambda_s", "lambda_i", "lambda_p", "c") and not x > 0:
                raise line.err(BadArgumentError, f"{key} must be positive", vcol, value)
            if key == "G" and x < 1.0:
                raise line.err(BadArgumentError, "gain G must be >= 1", vcol, value)
            items.append((key, x))
    return tuple(items)


def _parse_inject(line):
    items = {}
    for col, tok in line.tokens[1:]:
        key, value, vcol = _kv(line, col, tok)
        if key in items:
            raise line.err(BadArgumentError, f"inject key {key!r} given twice", col, tok)
        if key == "scheme":
            if value not in SCHEMES:
                raise line.err(BadArgumentError, "unknown injection scheme", vcol, value)
            items[key] = value
        elif key == "alpha":
            z = complex(value) if _COMPLEX.match(value) else None
            if z is None or not cmath.isfinite(z):
                raise line.err(MalformedNumberError, "malformed complex amplitude", vcol, value)
            items[key] = z
        else:
            raise line.err(BadArgumentError, f"unknown inject key {key!r}", col, tok)
    if "scheme" not in items:
        raise line.err(BadArgumentError, "inject requires scheme=...")
    return tuple((k, items[k]) for k in ("scheme", "alpha") if k in items)


def _parse_measure(line, register):
    items = {}
    for col, tok in line.tokens[1:]:
        key, value, vcol = _kv(line, col, tok)
        if key in items:
            raise line.err(BadArgumentError, f"measure key {key!r} given twice", col, tok)
        if key == "mode":
            names = value.split(",")
            if len(names) not in (1, 2) or len(set(names)) != len(names):
                raise line.err(BadArgumentError, "measure takes one mode or two distinct modes", vcol, value)
            items[key] = tuple(_check_mode(line, vcol, n, register) for n in names)
        elif key == "angle":
            items[key] = _number(line, vcol, key, value)
        elif key == "combine":
            if value not in COMBINES:
                raise line.err(BadArgumentError, "combine must be single or sum_of_two", vcol, value)
            items[key] = value
        else:
            raise line.err(BadArgumentError, f"unknown measure key {key!r}", col, tok)
    if "mode" not in items:
        raise line.err(BadArgumentError, "measure requires mode=...")
    modes = items["mode"]
    combine = items.get("combine", "single" if len(modes) == 1 else "sum_of_two")
    if (combine == "single") != (len(modes) == 1):
        raise line.err(BadArgumentError, f"combine={combine} does not match {len(modes)} mode(s)")
    return MeasureStmt(modes, items.get("angle", 0.0), combine)


def parse_circuit(text) -> CircuitDoc:
    """Parse a circuit document; raises a :class:`CircuitParseError` subclass."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EncodingError(f"input is not valid UTF-8 ({exc.reason})") from None
    register = None
    elements = []
    scenario = inject = measure = None
    comments = []
    header = True
    for raw in text.splitlines():
        stripped = raw.strip()
        if header and stripped.startswith("#"):
            comments.append(stripped[1:].strip())
        elif stripped:
            header = False
    for line in _tokenize(text):
        col, kw = line.tokens[0]
        if kw not in KEYWORDS:
            raise line.err(UnknownKeywordError, "unknown keyword", col, kw)
        if kw == "register":
            if register is not None:
                raise line.err(DuplicateBlockError, "register declared twice", col, kw)
            register = _parse_register(line)
        elif kw == "scenario":
            if scenario is not None:
                raise line.err(DuplicateBlockError, "scenario given twice", col, kw)
            scenario = _parse_scenario(line)
        elif kw == "inject":
            if inject is not None:
                raise line.err(DuplicateBlockError, "inject given twice", col, kw)
            inject = _parse_inject(line)
        elif kw == "measure":
            if measure is not None:
                raise line.err(DuplicateMeasurementError, "more than one measurement", col, kw)
            measure = _parse_measure(line, register)
        else:
            elements.append(_parse_element(line, register))
    if register is None:
        raise NoRegisterError("no register declared")
    if measure is None:
        measure = MeasureStmt((default_dark_port(register),))
    return CircuitDoc(register, tuple(elements), scenario or (), inject, measure,
                      "\n".join(comments))
