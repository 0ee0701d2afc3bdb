"""Line-oriented RLC netlist reader and writer.

Grammar, one statement per line::

    # comment to end of line
    R1 1 2 1k          component: name node node value
    L3 2 0 10m
    C1 2 2 1u          a looped branch is legal
    VIN 1 0            transmitter (voltage source), n+ n-
    OUT 2 0            receptor (voltage probe), n+ n-

Values are positive decimals with an optional exponent and an optional SI
suffix (k M G m u n p). Nodes are non-negative integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .dtm import Circuit, receptor, transmitter
from .multigraph import Branch, BranchKind

SI_SUFFIXES = {
    "G": Fraction(10) ** 9,
    "M": Fraction(10) ** 6,
    "k": Fraction(10) ** 3,
    "m": Fraction(1, 10**3),
    "u": Fraction(1, 10**6),
    "n": Fraction(1, 10**9),
    "p": Fraction(1, 10**12),
}
MAX_EXPONENT = 300
MAX_DIGITS = 64

_KINDS = {"R": BranchKind.RESISTOR, "L": BranchKind.INDUCTOR, "C": BranchKind.CAPACITOR}
_NAME_RE = re.compile(r"[RLC][0-9]+", re.IGNORECASE)
_VALUE_RE = re.compile(
    r"(?P<sign>[+-]?)(?P<mant>[0-9]+(?:\.[0-9]*)?|\.[0-9]+)"
    r"(?:[eE](?P<exp>[+-]?[0-9]+))?(?P<suffix>[GMkmunp]?)"
)
_NODE_RE = re.compile(r"[0-9]+")
_TOKEN_RE = re.compile(r"\S+")


class NetlistError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}: {message} (column {column})")
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class _Token:
    text: str
    column: int


def parse_value(text: str) -> Fraction:
    """Exact value of a decimal literal such as ``4.7k`` or ``1e-6``.

    Raises ValueError for malformed or non-positive literals.
    """
    m = _VALUE_RE.fullmatch(text)
    if not m or len(text) > MAX_DIGITS:
        raise ValueError(f"malformed value {text!r}")
    exp = int(m["exp"] or 0)
    if abs(exp) > MAX_EXPONENT:
        raise ValueError(f"exponent out of range in {text!r}")
    value = Fraction(m["mant"]) * Fraction(10) ** exp
    if m["suffix"]:
        value *= SI_SUFFIXES[m["suffix"]]
    if m["sign"] == "-":
        value = -value
    if value <= 0:
        raise ValueError("value must be positive")
    return value


def format_value(value: Fraction) -> str:
    """Exact decimal text for ``value``; fails if it has no finite expansion."""
    value = Fraction(value)
    den, twos, fives = value.denominator, 0, 0
    while den % 2 == 0:
        den, twos = den // 2, twos + 1
    while den % 5 == 0:
        den, fives = den // 5, fives + 1
    if den != 1:
        raise ValueError(f"{value} has no finite decimal expansion")
    k = max(twos, fives)
    mant = value.numerator * 10**k // value.denominator
    while k > 0 and mant % 10 == 0:
        mant //= 10
        k -= 1
    return f"{mant}e-{k}" if k else str(mant)


def _tokens(line: str) -> list[_Token]:
    return [_Token(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]


def _node(tok: _Token, lineno: int) -> int:
    if not _NODE_RE.fullmatch(tok.text):
        raise NetlistError(lineno, tok.column, f"node must be a non-negative integer, got {tok.text!r}")
    if len(tok.text) > MAX_DIGITS:
        raise NetlistError(lineno, tok.column, "node label too long")
    return int(tok.text)


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        before = data[: exc.start]
        line = before.count(b"\n") + 1
        column = exc.start - (before.rfind(b"\n") + 1) + 1
        raise NetlistError(line, column, "invalid UTF-8") from None


def parse(text: str | bytes) -> Circuit:
    if isinstance(text, (bytes, bytearray)):
        text = _decode(bytes(text))

    components: list[Branch] = []
    names: dict[str, int] = {}
    sources: dict[str, tuple[int, Branch]] = {}
    z_index = y_index = 0

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head = toks[0]
        keyword = head.text.upper()

        if keyword in ("VIN", "OUT"):
            if len(toks) != 3:
                raise NetlistError(lineno, head.column, f"{keyword} expects exactly two nodes")
            if keyword in sources:
                raise NetlistError(
                    lineno, head.column,
                    f"duplicate {keyword} (first declared on line {sources[keyword][0]})",
                )
            pos, neg = _node(toks[1], lineno), _node(toks[2], lineno)
            if pos == neg:
                raise NetlistError(lineno, toks[2].column, f"{keyword} nodes must differ")
            branch = transmitter(pos, neg) if keyword == "VIN" else receptor(pos, neg)
            sources[keyword] = (lineno, branch)
            continue

        if head.text[:1].upper() not in _KINDS:
            raise NetlistError(lineno, head.column, f"unknown element {head.text!r}")
        if not _NAME_RE.fullmatch(head.text):
            raise NetlistError(
                lineno, head.column, f"component name must be R, L or C followed by digits, got {head.text!r}"
            )
        if len(toks) != 4:
            raise NetlistError(lineno, head.column, "component line expects: NAME node node VALUE")
        if keyword in names:
            raise NetlistError(
                lineno, head.column, f"duplicate component {head.text!r} (first on line {names[keyword]})"
            )
        n1, n2 = _node(toks[1], lineno), _node(toks[2], lineno)
        try:
            value = parse_value(toks[3].text)
        except ValueError as exc:
            raise NetlistError(lineno, toks[3].column, str(exc)) from None

        kind = _KINDS[keyword[0]]
        if kind is BranchKind.CAPACITOR:
            y_index += 1
            category = f"Y{y_index}"
        else:
            z_index += 1
            category = f"Z{z_index}"
        names[keyword] = lineno
        components.append(Branch(n1, n2, keyword, category, kind, value))

    last = text.count("\n") + 1
    for keyword in ("VIN", "OUT"):
        if keyword not in sources:
            raise NetlistError(last, 1, f"missing {keyword} line")
    return Circuit(tuple(components), sources["VIN"][1], sources["OUT"][1])


def format_netlist(circuit: Circuit) -> str:
    lines = [
        f"{b.nature_name} {b.first_node} {b.second_node} {format_value(b.value)}"
        for b in circuit.component_branches
    ]
    g, h = circuit.transmitter, circuit.receptor
    lines.append(f"VIN {g.second_node} {g.first_node}")
    lines.append(f"OUT {h.first_node} {h.second_node}")
    return "\n".join(lines) + "\n"
