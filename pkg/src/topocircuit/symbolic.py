"""Sparse multivariate polynomials in component symbols and the Laplace variable s.

Coefficients are exact rationals. A polynomial is stored as a mapping from a
monomial key ``(symbol_powers, s_power)`` to its coefficient, where
``symbol_powers`` is a sorted tuple of ``(symbol, exponent)`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Key = tuple[tuple[tuple[str, int], ...], int]
Number = Union[int, Fraction]


@dataclass(frozen=True)
class Monomial:
    coefficient: Fraction
    symbol_powers: tuple[tuple[str, int], ...] = ()
    s_power: int = 0

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("monomial coefficient must be nonzero")
        if any(e <= 0 for _, e in self.symbol_powers) or self.s_power < 0:
            raise ValueError("exponents must be positive (symbols) / non-negative (s)")

    @property
    def key(self) -> Key:
        return self.symbol_powers, self.s_power


def _sort_key(key: Key):
    # descending s power, then lexicographic on the expanded symbol sequence
    symbols, s_power = key
    return (-s_power, tuple(name for name, e in symbols for _ in range(e)))


class TopoPolynomial:
    """Immutable polynomial with like terms collected and zero terms dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Key, Number] | None = None):
        clean: dict[Key, Fraction] = {}
        for key, c in (terms or {}).items():
            if c:
                clean[key] = Fraction(c)
        self._terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: Number) -> TopoPolynomial:
        return cls({((), 0): c})

    @classmethod
    def symbol(cls, name: str, s_power: int = 0) -> TopoPolynomial:
        return cls({(((name, 1),), s_power): 1})

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial]) -> TopoPolynomial:
        acc: dict[Key, Fraction] = {}
        for m in monomials:
            acc[m.key] = acc.get(m.key, Fraction(0)) + m.coefficient
        return cls(acc)

    # -- views ------------------------------------------------------------

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def monomials(self) -> list[Monomial]:
        """Terms in canonical order."""
        return [
            Monomial(self._terms[k], k[0], k[1])
            for k in sorted(self._terms, key=_sort_key)
        ]

    def symbols(self) -> set[str]:
        return {name for syms, _ in self._terms for name, _ in syms}

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: TopoPolynomial) -> TopoPolynomial:
        if not isinstance(other, TopoPolynomial):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return TopoPolynomial(acc)

    def __neg__(self) -> TopoPolynomial:
        return TopoPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: TopoPolynomial) -> TopoPolynomial:
        return self + (-other)

    def __mul__(self, other: TopoPolynomial | int | Fraction) -> TopoPolynomial:
        if isinstance(other, (int, Fraction)):
            return TopoPolynomial({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, TopoPolynomial):
            return NotImplemented
        acc: dict[Key, Fraction] = {}
        for (sa, pa), ca in self._terms.items():
            for (sb, pb), cb in other._terms.items():
                key = (_merge_powers(sa, sb), pa + pb)
                acc[key] = acc.get(key, 0) + ca * cb
        return TopoPolynomial(acc)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TopoPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"TopoPolynomial({poly_render(self)!r})"

    def __str__(self) -> str:
        return poly_render(self)


ZERO = TopoPolynomial()
ONE = TopoPolynomial.constant(1)


def _merge_powers(a: tuple[tuple[str, int], ...], b: tuple[tuple[str, int], ...]):
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for name, e in b:
        merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items()))


def poly_add(p: TopoPolynomial, q: TopoPolynomial) -> TopoPolynomial:
    return p + q


def poly_mul(p: TopoPolynomial, q: TopoPolynomial) -> TopoPolynomial:
    return p * q


def poly_sum(polys: Iterable[TopoPolynomial]) -> TopoPolynomial:
    acc: dict[Key, Fraction] = {}
    for p in polys:
        for k, c in p._terms.items():
            acc[k] = acc.get(k, 0) + c
    return TopoPolynomial(acc)


def poly_eval(p: TopoPolynomial, assignment: Mapping[str, Number], s_value: complex) -> complex:
    missing = sorted(p.symbols() - set(assignment))
    if missing:
        raise KeyError(f"no value for symbol(s): {', '.join(missing)}")
    total = 0j
    for (syms, s_power), c in p._terms.items():
        exact = c
        for name, e in syms:
            exact *= Fraction(assignment[name]) ** e
        total += float(exact) * s_value**s_power
    return total


def poly_scale(p: TopoPolynomial, assignment: Mapping[str, Number], s_value: complex) -> float:
    """Sum of the absolute values of the individual terms at ``s_value``.

    Comparing ``abs(poly_eval(...))`` against this tells how much cancellation
    happened in the evaluation.
    """
    total = 0.0
    for (syms, s_power), c in p._terms.items():
        exact = abs(c)
        for name, e in syms:
            exact *= abs(Fraction(assignment[name])) ** e
        total += float(exact) * abs(s_value) ** s_power
    return total


def poly_substitute(p: TopoPolynomial, assignment: Mapping[str, Number]) -> TopoPolynomial:
    """Replace the symbols in ``assignment`` by their values, exactly."""
    acc: dict[Key, Fraction] = {}
    for (syms, s_power), c in p._terms.items():
        kept = []
        for name, e in syms:
            if name in assignment:
                c = c * Fraction(assignment[name]) ** e
            else:
                kept.append((name, e))
        key = (tuple(kept), s_power)
        acc[key] = acc.get(key, 0) + c
    return TopoPolynomial(acc)


def _render_monomial(symbols, s_power: int) -> list[str]:
    factors = [name if e == 1 else f"{name}^{e}" for name, e in symbols]
    if s_power == 1:
        factors.append("s")
    elif s_power > 1:
        factors.append(f"s^{s_power}")
    return factors


def poly_render(p: TopoPolynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, m in enumerate(p.monomials()):
        c = m.coefficient
        factors = _render_monomial(m.symbol_powers, m.s_power)
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag) if mag.denominator == 1 else f"({mag})")
        body = "*".join(factors)
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(out)


def poly_to_json(p: TopoPolynomial) -> list[dict]:
    return [
        {
            "coeff": f"{m.coefficient.numerator}/{m.coefficient.denominator}",
            "s": m.s_power,
            "symbols": dict(m.symbol_powers),
        }
        for m in p.monomials()
    ]


def poly_from_json(data: Iterable[Mapping]) -> TopoPolynomial:
    acc: dict[Key, Fraction] = {}
    for item in data:
        key = (tuple(sorted((str(k), int(v)) for k, v in item["symbols"].items())), int(item["s"]))
        acc[key] = acc.get(key, 0) + Fraction(item["coeff"])
    return TopoPolynomial(acc)
