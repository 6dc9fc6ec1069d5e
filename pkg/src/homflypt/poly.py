"""Exact sparse Laurent polynomials with integer coefficients.

Two concrete rings are used:

* ``TriLaurent`` in (alpha, z, delta), the working ring of both algorithms,
  where delta stands for ``(alpha - alpha^-1) z^-1`` and is kept symbolic;
* ``BiLaurent`` in (alpha, z), the ring the final invariant lives in.

Values are immutable.  Coefficients are Python ints, so they never overflow.
"""

from __future__ import annotations

import json
import re
from math import comb
from typing import ClassVar, Iterable, Iterator, Mapping

from .errors import MalformedSyntax, NegativeDeltaExponent

__all__ = [
    "TriLaurent",
    "BiLaurent",
    "expand_delta",
    "render",
    "parse",
    "to_machine",
    "from_machine",
]


class _Laurent:
    """Shared implementation; subclasses fix the number of variables."""

    nvars: ClassVar[int] = 0
    names: ClassVar[tuple[str, ...]] = ()

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != self.nvars:
                    raise ValueError(
                        f"{type(self).__name__} needs {self.nvars} exponents, got {exps}"
                    )
                if coeff:
                    clean[exps] = clean.get(exps, 0) + int(coeff)
            clean = {k: v for k, v in clean.items() if v}
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "_Laurent":
        # Caller guarantees well-formed keys and no zero coefficients.
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def mono(cls, coeff: int, *exps: int):
        if len(exps) != cls.nvars:
            raise ValueError(f"{cls.__name__}.mono needs {cls.nvars} exponents")
        return cls._wrap({tuple(exps): int(coeff)} if coeff else {})

    @classmethod
    def zero(cls):
        return cls._wrap({})

    @classmethod
    def one(cls):
        return cls.mono(1, *([0] * cls.nvars))

    # -- inspection -------------------------------------------------------

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, *exps: int) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponent(self, var: int) -> int | None:
        if not self._terms:
            return None
        return min(e[var] for e in self._terms)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, int):
            return type(self).mono(other, *([0] * self.nvars))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for ka, va in self._terms.items():
            for kb, vb in other._terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return self._wrap({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exps: Iterable[int], factor: int = 1):
        """Multiply by the monomial ``factor * x^exps``."""
        exps = tuple(exps)
        if not factor:
            return self.zero()
        return self._wrap(
            {tuple(a + b for a, b in zip(k, exps)): v * factor for k, v in self._terms.items()}
        )

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({render(self)!r})"

    def __str__(self):
        return render(self)


class TriLaurent(_Laurent):
    """Laurent polynomial in alpha, z and the symbolic delta."""

    nvars = 3
    names = ("a", "z", "d")
    __slots__ = ()


class BiLaurent(_Laurent):
    """Laurent polynomial in alpha and z."""

    nvars = 2
    names = ("a", "z")
    __slots__ = ()


def _delta_power(k: int) -> dict[tuple[int, int], int]:
    # ((a - a^-1) z^-1)^k = sum_j C(k, j) (-1)^j a^(k-2j) z^-k
    return {(k - 2 * j, -k): (-1) ** j * comb(k, j) for j in range(k + 1)}


def expand_delta(p: TriLaurent) -> BiLaurent:
    """Substitute delta -> (alpha - alpha^-1) z^-1.

    Every delta exponent must be non-negative; a negative one means the
    caller forgot a normalising factor and is reported rather than turned
    into a rational function.
    """
    out: dict[tuple[int, int], int] = {}
    cache: dict[int, dict] = {}
    for (ea, ez, ed), coeff in p._terms.items():
        if ed < 0:
            raise NegativeDeltaExponent(
                f"term with delta^{ed} cannot be expanded to a Laurent polynomial"
            )
        if ed not in cache:
            cache[ed] = _delta_power(ed)
        for (da, dz), dc in cache[ed].items():
            k = (ea + da, ez + dz)
            out[k] = out.get(k, 0) + coeff * dc
    return BiLaurent._wrap({k: v for k, v in out.items() if v})


# -- text forms ------------------------------------------------------------


def _human_key(exps: tuple[int, ...]):
    # Mirror pairs a^k, a^-k sit next to each other, highest |k| first.
    return (-abs(exps[0]), -exps[0]) + tuple(-e for e in exps[1:])


def _format_term(exps, coeff, names) -> str:
    factors = []
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    mag = abs(coeff)
    if not factors:
        return str(mag)
    body = "*".join(factors)
    return body if mag == 1 else f"{mag}*{body}"


def render(p: _Laurent, style: str = "human") -> str:
    """Canonical text for ``p``.

    ``human`` gives e.g. ``a^2 + a^-2 - z^2 - 1``; ``machine`` gives the
    JSON list of ``[e_alpha, e_z, "coeff"]`` rows (with ``e_delta`` before the
    coefficient for ``TriLaurent``), sorted by exponents.
    """
    if style == "machine":
        return json.dumps(to_machine(p), separators=(",", ":"))
    if style != "human":
        raise ValueError(f"unknown render style {style!r}")
    if not p:
        return "0"
    parts = []
    for i, (exps, coeff) in enumerate(sorted(p._terms.items(), key=lambda kv: _human_key(kv[0]))):
        text = _format_term(exps, coeff, p.names)
        if i == 0:
            parts.append(("-" if coeff < 0 else "") + text)
        else:
            parts.append((" - " if coeff < 0 else " + ") + text)
    return "".join(parts)


def to_machine(p: _Laurent) -> list[list]:
    return [list(exps) + [str(coeff)] for exps, coeff in p.items()]


def from_machine(rows, cls: type[_Laurent] = BiLaurent):
    """Inverse of :func:`to_machine`; accepts a JSON string or decoded rows."""
    if isinstance(rows, str):
        rows = json.loads(rows)
    terms: dict = {}
    for row in rows:
        if len(row) != cls.nvars + 1:
            raise MalformedSyntax(f"polynomial row {row!r} has wrong length for {cls.__name__}")
        exps = tuple(int(e) for e in row[:-1])
        if exps in terms:
            raise MalformedSyntax(f"duplicate exponent {exps} in polynomial")
        terms[exps] = int(row[-1])
    return cls(terms)


def parse(text: str, cls: type[_Laurent] = BiLaurent):
    """Read the human form produced by :func:`render`.

    Accepts ``*``-separated factors ``a``, ``a^k``, ``z^-k`` and an optional
    leading integer coefficient.
    """
    text = text.strip()
    if not text:
        raise MalformedSyntax("empty polynomial text")
    if text == "0":
        return cls.zero()
    index = {name: i for i, name in enumerate(cls.names)}
    # Split on signs that are not exponent signs.
    tokens = re.split(r"(?<!\^)\s*([+-])\s*", text)
    if tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    terms: dict = {}
    for sign, body in zip(tokens[::2], tokens[1::2]):
        coeff = -1 if sign == "-" else 1
        exps = [0] * cls.nvars
        for factor in body.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
                continue
            m = re.fullmatch(r"([a-z])(?:\^(-?\d+))?", factor)
            if not m or m.group(1) not in index:
                raise MalformedSyntax(f"cannot read factor {factor!r} in {text!r}")
            exps[index[m.group(1)]] += int(m.group(2) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return cls(terms)
