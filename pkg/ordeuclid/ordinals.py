"""Ordinals below epsilon_0 in Cantor normal form, with the Hessenberg sum."""

import typing
from enum import IntEnum
from functools import total_ordering

from pydantic import GetCoreSchemaHandler, GetJsonSchemaHandler
from pydantic.json_schema import JsonSchemaValue
from pydantic_core import CoreSchema, core_schema

Term = tuple["Ordinal", int]


class OrdinalSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@total_ordering
class Ordinal:
    """
    Immutable ordinal ``w^a1*n1 + w^a2*n2 + ...`` with strictly decreasing exponents.

    The empty term sequence is 0. Construction through :meth:`from_terms` enforces
    canonical form, so two equal ordinals always carry identical terms.
    """

    __slots__ = ("terms", "_hash")

    terms: tuple[Term, ...]

    def __init__(self, n: int = 0) -> None:
        if n < 0:
            raise ValueError("ordinals are non-negative")
        self.terms = () if n == 0 else ((_ZERO_EXPONENT, n),)
        self._hash = hash(n)

    @classmethod
    def _raw(cls, terms: tuple[Term, ...]) -> "Ordinal":
        ins = cls.__new__(cls)
        ins.terms = terms
        ins._hash = _hash_terms(terms)
        return ins

    @classmethod
    def from_terms(cls, terms: typing.Iterable[Term]) -> "Ordinal":
        """Build from (exponent, coefficient) pairs in any order; equal exponents merge."""
        merged: dict[Ordinal, int] = {}
        for exponent, coefficient in terms:
            if coefficient < 0:
                raise ValueError("coefficients are non-negative")
            if coefficient:
                merged[exponent] = merged.get(exponent, 0) + coefficient
        ordered = sorted(merged.items(), key=lambda t: t[0], reverse=True)
        return cls._raw(tuple(ordered))

    @classmethod
    def coerce(cls, value: typing.Any) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not ordinals")
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, str):
            return parse(value)
        raise TypeError(f"cannot interpret {value!r} as an ordinal")

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def to_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "Ordinal | None":
        return self.terms[0][0] if self.terms else None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self.terms == Ordinal(other).terms
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other: "Ordinal | int") -> bool:
        return cmp(self, Ordinal.coerce(other)) is Ordering.LESS

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "Ordinal | int") -> "Ordinal":
        return ord_add(self, Ordinal.coerce(other))

    def __radd__(self, other: int) -> "Ordinal":
        return ord_add(Ordinal.coerce(other), self)

    def oplus(self, other: "Ordinal | int") -> "Ordinal":
        return nat_sum(self, Ordinal.coerce(other))

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self) -> str:
        return format_ordinal(self)

    @classmethod
    def __get_pydantic_core_schema__(
        cls, source: typing.Any, handler: GetCoreSchemaHandler
    ) -> CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls.coerce,
            serialization=core_schema.to_string_ser_schema(),
        )

    @classmethod
    def __get_pydantic_json_schema__(
        cls, schema: CoreSchema, handler: GetJsonSchemaHandler
    ) -> JsonSchemaValue:
        return {
            "type": "string",
            "title": "Ordinal",
            "description": "Cantor normal form, e.g. 'w^(w^2)*2 + w*3 + 7'",
        }


def _hash_terms(terms: tuple[Term, ...]) -> int:
    # finite ordinals hash like the int they equal
    if not terms:
        return hash(0)
    if len(terms) == 1 and not terms[0][0].terms:
        return hash(terms[0][1])
    return hash(terms)


def _is_digit(char: str) -> bool:
    return "0" <= char <= "9" and len(char) == 1


_ZERO_EXPONENT = Ordinal._raw(())
ZERO = _ZERO_EXPONENT
ONE = Ordinal(1)
OMEGA = Ordinal._raw(((ONE, 1),))


def cmp(a: Ordinal, b: Ordinal) -> Ordering:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if ea is not eb:
            order = cmp(ea, eb)
            if order is not Ordering.EQUAL:
                return order
        if ca != cb:
            return Ordering.LESS if ca < cb else Ordering.GREATER
    if len(a.terms) == len(b.terms):
        return Ordering.EQUAL
    return Ordering.LESS if len(a.terms) < len(b.terms) else Ordering.GREATER


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    lead, lead_coefficient = b.terms[0]
    kept: list[Term] = []
    for exponent, coefficient in a.terms:
        order = cmp(exponent, lead)
        if order is Ordering.GREATER:
            kept.append((exponent, coefficient))
        elif order is Ordering.EQUAL:
            lead_coefficient += coefficient
            break
        else:
            break
    return Ordinal._raw(tuple(kept) + ((lead, lead_coefficient),) + b.terms[1:])


def nat_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    merged: list[Term] = []
    i = j = 0
    while i < len(a.terms) and j < len(b.terms):
        (ea, ca), (eb, cb) = a.terms[i], b.terms[j]
        order = cmp(ea, eb)
        if order is Ordering.GREATER:
            merged.append((ea, ca))
            i += 1
        elif order is Ordering.LESS:
            merged.append((eb, cb))
            j += 1
        else:
            merged.append((ea, ca + cb))
            i += 1
            j += 1
    merged.extend(a.terms[i:])
    merged.extend(b.terms[j:])
    return Ordinal._raw(tuple(merged))


def nat_sum_all(values: typing.Iterable[Ordinal]) -> Ordinal:
    total = ZERO
    for value in values:
        total = nat_sum(total, value)
    return total


def omega_pow(a: Ordinal) -> Ordinal:
    return Ordinal._raw(((a, 1),))


def omega_times(a: Ordinal, k: int) -> Ordinal:
    """``w^a * k`` for a natural number k."""
    if k < 0:
        raise ValueError("coefficients are non-negative")
    return Ordinal._raw(((a, k),)) if k else ZERO


def is_indecomposable(a: Ordinal) -> bool:
    return len(a.terms) == 1 and a.terms[0][1] == 1


def decompose(a: Ordinal) -> tuple[Ordinal, Ordinal] | None:
    """
    Split a decomposable ordinal into two strictly smaller summands.

    Returns ``(w^a1, rest)`` where ``rest`` drops one copy of the leading power, or
    ``None`` when ``a`` is 0 or a power of w.
    """
    if a.is_zero() or is_indecomposable(a):
        return None
    lead, coefficient = a.terms[0]
    if coefficient > 1:
        rest = ((lead, coefficient - 1),) + a.terms[1:]
    else:
        rest = a.terms[1:]
    return omega_pow(lead), Ordinal._raw(rest)


def power_overflow_witness(rho: Ordinal) -> Ordinal | None:
    """
    For ``rho = w^a1*n1 + ...`` with ``w^a1 < rho`` return the (n1+1)-fold natural sum
    of ``w^a1``; it exceeds ``rho``. ``None`` when rho is 0 or indecomposable.
    """
    if rho.is_zero() or is_indecomposable(rho):
        return None
    lead, coefficient = rho.terms[0]
    return omega_times(lead, coefficient + 1)


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if exponent.is_zero():
            parts.append(str(coefficient))
            continue
        if exponent == ONE:
            base = "w"
        elif exponent.is_finite():
            base = f"w^{exponent.to_int()}"
        else:
            base = f"w^({format_ordinal(exponent)})"
        parts.append(base if coefficient == 1 else f"{base}*{coefficient}")
    return " + ".join(parts)


class _OrdinalParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            found = self._peek() or "end of input"
            raise OrdinalSyntaxError(f"expected '{char}', found {found!r}", self.pos)
        self.pos += 1

    def _natural(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and _is_digit(self.text[self.pos]):
            self.pos += 1
        if start == self.pos:
            raise OrdinalSyntaxError("expected a natural number", start)
        return int(self.text[start : self.pos])

    def _term(self) -> Ordinal:
        char = self._peek()
        if _is_digit(char):
            return Ordinal(self._natural())
        if char != "w":
            raise OrdinalSyntaxError(
                f"expected 'w' or a natural number, found {char or 'end of input'!r}",
                self.pos,
            )
        self.pos += 1
        exponent = ONE
        if self._peek() == "^":
            self.pos += 1
            nxt = self._peek()
            if nxt == "(":
                self.pos += 1
                exponent = self.ordinal()
                self._expect(")")
            elif nxt == "w":
                self.pos += 1
                exponent = OMEGA
            else:
                exponent = Ordinal(self._natural())
        coefficient = 1
        if self._peek() == "*":
            self.pos += 1
            coefficient = self._natural()
        return omega_times(exponent, coefficient)

    def ordinal(self) -> Ordinal:
        # '+' between terms is ordinal addition, so non-canonical input is absorbed
        value = self._term()
        while self._peek() == "+":
            self.pos += 1
            value = ord_add(value, self._term())
        return value

    def done(self) -> None:
        if self._peek():
            raise OrdinalSyntaxError(f"unexpected {self._peek()!r}", self.pos)


def parse(text: str) -> Ordinal:
    parser = _OrdinalParser(text)
    value = parser.ordinal()
    parser.done()
    return value


def evaluate(text: str) -> Ordinal:
    """Evaluate ordinal text where ``(+)`` denotes the natural sum and binds loosest."""
    parser = _OrdinalParser(text)
    value = parser.ordinal()
    while parser._peek() == "(":
        if not parser.text.startswith("(+)", parser.pos):
            raise OrdinalSyntaxError("expected '(+)'", parser.pos)
        parser.pos += 3
        value = nat_sum(value, parser.ordinal())
    parser.done()
    return value
