"""Coefficient fields: prime fields F_q and the rationals."""

import typing
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, model_validator

Scalar = typing.Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


class FieldConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: typing.Literal["finite", "rational"] = "finite"
    q: int | None = 2

    @model_validator(mode="before")
    @classmethod
    def _default_q(cls, data: typing.Any) -> typing.Any:
        if isinstance(data, dict) and data.get("kind") == "rational":
            data = {**data, "q": data.get("q")}
        return data

    @model_validator(mode="after")
    def _check_q(self) -> "FieldConfig":
        if self.kind == "finite":
            if self.q is None or not is_prime(self.q):
                raise ValueError(f"finite fields need a prime order, got {self.q}")
        elif self.q is not None:
            raise ValueError("the rational field carries no order")
        return self

    @classmethod
    def parse(cls, text: str) -> "FieldConfig":
        """``f2``, ``f3``, ``f<p>`` or ``q``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rational", "rationals"):
            return cls(kind="rational", q=None)
        if text.startswith("f") and text[1:].isascii() and text[1:].isdigit():
            return cls(kind="finite", q=int(text[1:]))
        raise ValueError(f"unknown field {text!r}; use f2, f3, f<p> or q")

    def label(self) -> str:
        return "Q" if self.kind == "rational" else f"F{self.q}"

    def build(self) -> "Field":
        if self.kind == "rational":
            return RationalField()
        return PrimeField(typing.cast(int, self.q))


class Field:
    characteristic: int

    zero: Scalar
    one: Scalar

    def coerce(self, value: int | Fraction) -> Scalar:
        raise NotImplementedError

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def neg(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def inv(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.add(a, self.neg(b))

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def is_finite(self) -> bool:
        return self.characteristic != 0

    def format(self, a: Scalar) -> str:
        return str(a)

    def is_negative(self, a: Scalar) -> bool:
        return False


class PrimeField(Field):
    def __init__(self, q: int) -> None:
        self.q = q
        self.characteristic = q
        self.zero = 0
        self.one = 1 % q

    def coerce(self, value: int | Fraction) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.q == 0:
                raise ZeroDivisionError(f"{value} has no image in F{self.q}")
            return value.numerator * pow(value.denominator, -1, self.q) % self.q
        return value % self.q

    def add(self, a: Scalar, b: Scalar) -> int:
        return (a + b) % self.q  # type: ignore[return-value]

    def mul(self, a: Scalar, b: Scalar) -> int:
        return (a * b) % self.q  # type: ignore[return-value]

    def neg(self, a: Scalar) -> int:
        return -a % self.q  # type: ignore[return-value]

    def inv(self, a: Scalar) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.q)

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("F", self.q))


class RationalField(Field):
    characteristic = 0

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, value: int | Fraction) -> Fraction:
        return Fraction(value)

    def add(self, a: Scalar, b: Scalar) -> Fraction:
        return Fraction(a + b)

    def mul(self, a: Scalar, b: Scalar) -> Fraction:
        return Fraction(a * b)

    def neg(self, a: Scalar) -> Fraction:
        return Fraction(-a)

    def inv(self, a: Scalar) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_negative(self, a: Scalar) -> bool:
        return a < 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")
