"""Sparse multivariate polynomials over a coefficient field, with a variable registry."""

import threading
import typing
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ordeuclid.fields import Field, FieldConfig, Scalar
from ordeuclid.ordinals import Ordinal, format_ordinal

Monomial = tuple[tuple[int, int], ...]
MonomialKey = tuple[int, tuple[tuple[int, int], ...]]

ONE_MONOMIAL: Monomial = ()


class MixedRingError(ValueError):
    ...


class VarKind(str, Enum):
    X = "x"
    Y = "y"
    Z = "z"


@dataclass(frozen=True)
class VarInfo:
    vid: int
    kind: VarKind
    subs: frozenset[Ordinal]
    stage: int
    defining_pair: "tuple[Poly, Poly] | None" = None

    @property
    def name(self) -> str:
        if self.kind is VarKind.X:
            (beta,) = self.subs
            return f"x[{format_ordinal(beta)},{self.stage}]"
        if self.kind is VarKind.Z:
            return "z"
        return f"y{self.vid}"


class Registry:
    """
    Append-only table of materialized variables. Ids are dense and follow creation
    order, which also fixes variable precedence in the monomial order.
    """

    def __init__(self) -> None:
        self._vars: list[VarInfo] = []
        self._x: dict[tuple[Ordinal, int], int] = {}
        self._y: dict[tuple["Poly", "Poly"], int] = {}
        self._z: int | None = None
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._vars)

    def __iter__(self) -> typing.Iterator[VarInfo]:
        return iter(list(self._vars))

    def __getitem__(self, vid: int) -> VarInfo:
        return self._vars[vid]

    def _append(self, **fields: typing.Any) -> VarInfo:
        info = VarInfo(vid=len(self._vars), **fields)
        self._vars.append(info)
        return info

    def x(self, beta: Ordinal, stage: int) -> int:
        key = (beta, stage)
        if (vid := self._x.get(key)) is not None:
            return vid
        with self._lock:
            if key not in self._x:
                info = self._append(kind=VarKind.X, subs=frozenset({beta}), stage=stage)
                self._x[key] = info.vid
            return self._x[key]

    def z(self) -> int:
        with self._lock:
            if self._z is None:
                info = self._append(kind=VarKind.Z, subs=frozenset({Ordinal(1)}), stage=0)
                self._z = info.vid
            return self._z

    @property
    def z_id(self) -> int | None:
        return self._z

    def lookup_y(self, n: "Poly", d: "Poly") -> int | None:
        return self._y.get((n, d))

    def y(self, n: "Poly", d: "Poly", subs: frozenset[Ordinal], stage: int) -> int:
        with self._lock:
            if (n, d) not in self._y:
                info = self._append(
                    kind=VarKind.Y, subs=subs, stage=stage, defining_pair=(n, d)
                )
                self._y[(n, d)] = info.vid
            return self._y[(n, d)]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    exps = dict(a)
    for v, e in b:
        left = exps.get(v, 0) - e
        if left < 0:
            return None
        if left:
            exps[v] = left
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial) -> MonomialKey:
    """Graded lexicographic key; earlier-registered variables take precedence."""
    return (mono_degree(m), tuple((-v, e) for v, e in m))


class PolyRing:
    def __init__(self, config: FieldConfig, registry: Registry | None = None) -> None:
        self.config = config
        self.field: Field = config.build()
        self.registry = registry if registry is not None else Registry()

    def poly(self, terms: dict[Monomial, Scalar]) -> "Poly":
        return Poly(self, {m: c for m, c in terms.items() if c != 0})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, value: int | Fraction) -> "Poly":
        c = self.field.coerce(value)
        return Poly(self, {ONE_MONOMIAL: c} if c != 0 else {})

    def var(self, vid: int, exponent: int = 1) -> "Poly":
        return Poly(self, {((vid, exponent),): self.field.one})

    def name(self, vid: int) -> str:
        return self.registry[vid].name


class Poly:
    """
    Immutable sparse polynomial. ``terms`` maps monomials (sorted ``(var id, exponent)``
    tuples) to nonzero coefficients; it must not be mutated after construction.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[Monomial, Scalar]) -> None:
        self.ring = ring
        self.terms = terms
        self._hash: int | None = None

    def _check(self, other: "Poly") -> None:
        if other.ring is not self.ring:
            raise MixedRingError("polynomials belong to different rings")

    def _lift(self, other: "Poly | int | Fraction") -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONOMIAL in self.terms)

    def is_one(self) -> bool:
        return self.is_constant() and self.constant() == self.field.one

    def constant(self) -> Scalar:
        return self.terms.get(ONE_MONOMIAL, self.field.zero)

    def variables(self) -> frozenset[int]:
        return frozenset(v for m in self.terms for v, _ in m)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(mono_degree(m) for m in self.terms)

    def degree_in(self, vid: int) -> int:
        return max((e for m in self.terms for v, e in m if v == vid), default=0)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=mono_key)

    def leading_coefficient(self) -> Scalar:
        return self.terms[self.leading_monomial()]

    def monomial_content(self) -> Monomial:
        if not self.terms:
            return ONE_MONOMIAL
        common: dict[int, int] | None = None
        for m in self.terms:
            exps = dict(m)
            if common is None:
                common = exps
            else:
                common = {v: min(e, exps[v]) for v, e in common.items() if v in exps}
            if not common:
                return ONE_MONOMIAL
        return tuple(sorted(typing.cast(dict[int, int], common).items()))

    def coefficients_in(self, vid: int) -> dict[int, "Poly"]:
        """View as a polynomial in ``vid``: exponent -> coefficient polynomial."""
        parts: dict[int, dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            exps = dict(m)
            e = exps.pop(vid, 0)
            parts.setdefault(e, {})[tuple(sorted(exps.items()))] = c
        return {e: Poly(self.ring, t) for e, t in parts.items()}

    def scale(self, c: Scalar) -> "Poly":
        f = self.field
        if c == f.zero:
            return self.ring.zero()
        if c == f.one:
            return self
        return Poly(self.ring, {m: f.mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, m: Monomial) -> "Poly":
        return Poly(self.ring, {mono_mul(k, m): c for k, c in self.terms.items()})

    def __add__(self, other: "Poly | int | Fraction") -> "Poly":
        other = self._lift(other)
        f = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(terms.get(m, f.zero), c)
            if s == f.zero:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Poly | int | Fraction") -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other: int | Fraction) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other: "Poly | int | Fraction") -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(self.field.coerce(other))
        self._check(other)
        f = self.field
        terms: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = f.add(terms.get(m, f.zero), f.mul(c1, c2))
        return Poly(self.ring, {m: c for m, c in terms.items() if c != f.zero})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def sort_key(self) -> tuple:
        return (
            self.degree() if self.terms else -1,
            len(self.terms),
            tuple((mono_key(m), str(c)) for m, c in self.sorted_terms()),
        )

    def format(self) -> str:
        if not self.terms:
            return "0"
        f = self.field
        out = ""
        for i, (m, c) in enumerate(self.sorted_terms()):
            negative = f.is_negative(c)
            magnitude = -c if negative else c
            names = "*".join(
                self.ring.name(v) if e == 1 else f"{self.ring.name(v)}^{e}" for v, e in m
            )
            if not names:
                body = f.format(magnitude)
            elif magnitude == f.one:
                body = names
            else:
                body = f"{f.format(magnitude)}*{names}"
            if i == 0:
                out = f"-{body}" if negative else body
            else:
                out += f" - {body}" if negative else f" + {body}"
        return out

    def to_json(self) -> list[dict[str, typing.Any]]:
        return [
            {"monomial": [[v, e] for v, e in m], "coeff": str(c)}
            for m, c in self.sorted_terms()
        ]

    def __repr__(self) -> str:
        return f"Poly({self.format()!r})"

    def __str__(self) -> str:
        return self.format()


def normalize_unit(a: Poly) -> tuple[Scalar, Poly]:
    """Split ``a = u * m`` with ``m`` having leading coefficient 1."""
    if a.is_zero():
        raise ZeroDivisionError("the zero polynomial has no normal form")
    u = a.leading_coefficient()
    return u, a.scale(a.field.inv(u))


def exact_div(a: Poly, b: Poly) -> Poly | None:
    """Return ``c`` with ``b * c == a``, or ``None`` when ``b`` does not divide ``a``."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    f = a.field
    if b.is_constant():
        return a.scale(f.inv(b.constant()))
    if a.degree() < b.degree():
        return None
    for v in b.variables():
        if a.degree_in(v) < b.degree_in(v):
            return None
    lead_b = b.leading_monomial()
    inv_lc = f.inv(b.terms[lead_b])
    rest = {m: c for m, c in b.terms.items() if m != lead_b}
    remainder = dict(a.terms)
    quotient: dict[Monomial, Scalar] = {}
    while remainder:
        lead = max(remainder, key=mono_key)
        shift = mono_div(lead, lead_b)
        if shift is None:
            return None
        c = f.mul(remainder.pop(lead), inv_lc)
        quotient[shift] = c
        for m, cb in rest.items():
            key = mono_mul(m, shift)
            s = f.sub(remainder.get(key, f.zero), f.mul(c, cb))
            if s == f.zero:
                remainder.pop(key, None)
            else:
                remainder[key] = s
    return Poly(a.ring, quotient)
