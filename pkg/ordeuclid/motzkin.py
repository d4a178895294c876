"""
Motzkin stratification of truncated classical Euclidean domains.

``d`` enters ``S_a`` once every nonzero residue class modulo ``d`` holds an element of
some earlier stratum; the level at which it enters is the minimal Euclidean norm. For
integers the least absolute remainder, and for ``F_q[t]`` the degree bound, keep the
minimal member of every class inside the truncation, so the fixed point computed here
is the true norm on its domain.
"""

import logging
import random
import typing
from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ordeuclid.eucworld import ZeroNormError
from ordeuclid.fields import is_prime
from ordeuclid.ordinals import Ordinal

DEFAULT_MAX_ELEMENTS = 1 << 16


class ModelTooLargeError(ValueError):
    ...


class RingModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: typing.Literal["int", "poly"] = "int"
    n: int | None = Field(default=None, description="bound on |x| for integers")
    q: int | None = Field(default=None, description="field order for polynomials")
    degree: int | None = Field(default=None, description="degree bound for polynomials")

    @model_validator(mode="after")
    def _check(self) -> "RingModel":
        if self.kind == "int":
            if self.n is None or self.n < 2:
                raise ValueError("integer models need N >= 2")
        else:
            if self.q is None or not is_prime(self.q):
                raise ValueError(f"polynomial models need a prime q, got {self.q}")
            if self.degree is None or self.degree < 1:
                raise ValueError("polynomial models need D >= 1")
        return self

    @classmethod
    def parse(cls, text: str) -> "RingModel":
        """``int:<N>`` or ``poly:<q>:<D>``."""
        kind, *params = text.strip().split(":")
        if not all(p.isascii() and p.isdigit() for p in params):
            raise ValueError(f"malformed model {text!r}")
        if kind == "int" and len(params) == 1:
            return cls(kind="int", n=int(params[0]))
        if kind == "poly" and len(params) == 2:
            return cls(kind="poly", q=int(params[0]), degree=int(params[1]))
        raise ValueError(f"unknown model {text!r}; use int:<N> or poly:<q>:<D>")

    def label(self) -> str:
        if self.kind == "int":
            return f"int:{self.n}"
        return f"poly:{self.q}:{self.degree}"

    def size(self) -> int:
        """Number of nonzero elements in the truncation."""
        if self.kind == "int":
            return 2 * typing.cast(int, self.n)
        q, degree = typing.cast(int, self.q), typing.cast(int, self.degree)
        return q ** (degree + 1) - 1

    def arithmetic(self) -> "_Arithmetic":
        if self.kind == "int":
            return _Integers(typing.cast(int, self.n))
        return _Polynomials(typing.cast(int, self.q), typing.cast(int, self.degree))


class _Arithmetic:
    """Element encoding and residue computation for one truncated model."""

    def elements(self) -> list[int]:
        raise NotImplementedError

    def is_unit(self, x: int) -> bool:
        raise NotImplementedError

    def modulus(self, d: int) -> int:
        raise NotImplementedError

    def class_count(self, d: int) -> int:
        raise NotImplementedError

    def residues(self, d: int) -> typing.Mapping[int, int]:
        """Residue of every element modulo ``d``; 0 encodes the zero class."""
        raise NotImplementedError

    def product(self, x: int, y: int) -> int | None:
        raise NotImplementedError

    def format(self, x: int) -> str:
        raise NotImplementedError


class _Integers(_Arithmetic):
    def __init__(self, n: int) -> None:
        self.n = n

    def elements(self) -> list[int]:
        return [s * k for k in range(1, self.n + 1) for s in (1, -1)]

    def is_unit(self, x: int) -> bool:
        return abs(x) == 1

    def modulus(self, d: int) -> int:
        return abs(d)

    def class_count(self, d: int) -> int:
        return abs(d)

    def residues(self, d: int) -> "_IntResidues":
        return _IntResidues(abs(d))

    def product(self, x: int, y: int) -> int | None:
        p = x * y
        return p if abs(p) <= self.n else None

    def format(self, x: int) -> str:
        return str(x)


class _IntResidues:
    __slots__ = ("m",)

    def __init__(self, m: int) -> None:
        self.m = m

    def __getitem__(self, x: int) -> int:
        return x % self.m


class _Polynomials(_Arithmetic):
    """``F_q[t]`` truncated at degree D; ``a_0 + a_1 t + ...`` is encoded as ``sum a_i q^i``."""

    def __init__(self, q: int, degree: int) -> None:
        self.q = q
        self.degree = degree
        self.top = q ** (degree + 1)

    def elements(self) -> list[int]:
        return list(range(1, self.top))

    def is_unit(self, x: int) -> bool:
        return 0 < x < self.q

    def modulus(self, d: int) -> int:
        lead = self._lead(d)
        return self._scale(d, pow(lead, -1, self.q))

    def class_count(self, d: int) -> int:
        return self.q ** self._deg(d)

    def _digits(self, x: int) -> list[int]:
        out = []
        while x:
            x, r = divmod(x, self.q)
            out.append(r)
        return out

    def _encode(self, digits: list[int]) -> int:
        x = 0
        for a in reversed(digits):
            x = x * self.q + a
        return x

    def _deg(self, x: int) -> int:
        return len(self._digits(x)) - 1

    def _lead(self, x: int) -> int:
        return self._digits(x)[-1]

    def _add(self, x: int, y: int) -> int:
        a, b = self._digits(x), self._digits(y)
        width = max(len(a), len(b))
        a += [0] * (width - len(a))
        b += [0] * (width - len(b))
        return self._encode([(u + v) % self.q for u, v in zip(a, b)])

    def _scale(self, x: int, c: int) -> int:
        return self._encode([a * c % self.q for a in self._digits(x)])

    def _mod(self, x: int, d: int) -> int:
        a, b = self._digits(x), self._digits(d)
        inv = pow(b[-1], -1, self.q)
        while len(a) >= len(b):
            c = a[-1] * inv % self.q
            shift = len(a) - len(b)
            for i, v in enumerate(b):
                a[shift + i] = (a[shift + i] - c * v) % self.q
            while a and a[-1] == 0:
                a.pop()
        return self._encode(a)

    def residues(self, d: int) -> dict[int, int]:
        # reduction is F_q-linear: extend from t^i mod d digit by digit
        powers = [self._mod(self.q**i, d) for i in range(self.degree + 1)]
        out = {0: 0}
        for x in range(1, self.top):
            i = self._deg(x)
            a = x // self.q**i
            rest = x - a * self.q**i
            out[x] = self._add(out[rest], self._scale(powers[i], a))
        del out[0]
        return out

    def product(self, x: int, y: int) -> int | None:
        a, b = self._digits(x), self._digits(y)
        if len(a) + len(b) - 2 > self.degree:
            return None
        c = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                c[i + j] = (c[i + j] + u * v) % self.q
        return self._encode(c)

    def format(self, x: int) -> str:
        parts = []
        for i, a in reversed(list(enumerate(self._digits(x)))):
            if not a:
                continue
            power = "1" if i == 0 else "t" if i == 1 else f"t^{i}"
            if i == 0:
                parts.append(str(a))
            else:
                parts.append(power if a == 1 else f"{a}*{power}")
        return " + ".join(parts)


@dataclass(frozen=True)
class StrataResult:
    model: RingModel
    rank: dict[int, int]
    layers: tuple[tuple[int, ...], ...]
    unassigned: tuple[int, ...] = ()
    _arith: _Arithmetic = field(default=None, repr=False, compare=False)  # type: ignore[assignment]

    @property
    def rho(self) -> Ordinal:
        return Ordinal(max(self.rank.values(), default=-1) + 1)

    @property
    def arithmetic(self) -> _Arithmetic:
        return self._arith or self.model.arithmetic()

    def rows(self) -> list[tuple[str, int]]:
        fmt = self.arithmetic.format
        return [(fmt(x), r) for x, r in self.rank.items()]


def stratify(model: RingModel, max_elements: int = DEFAULT_MAX_ELEMENTS) -> StrataResult:
    if model.size() > max_elements:
        raise ModelTooLargeError(
            f"{model.label()} has {model.size()} elements, limit is {max_elements}"
        )
    arith = model.arithmetic()
    elements = arith.elements()
    moduli = {m for m in map(arith.modulus, elements) if not arith.is_unit(m)}
    residues = {m: arith.residues(m) for m in sorted(moduli)}
    covered: dict[int, set[int]] = {m: set() for m in residues}
    needed = {m: arith.class_count(m) - 1 for m in residues}

    module_rank: dict[int, int] = {}
    frontier = [x for x in elements if arith.is_unit(x)]
    assigned = set(frontier)
    layers = [tuple(frontier)]
    level = 0
    while frontier:
        level += 1
        for m in list(covered):
            table = residues[m]
            classes = covered[m]
            for x in frontier:
                if r := table[x]:
                    classes.add(r)
        done = [m for m, classes in covered.items() if len(classes) == needed[m]]
        for m in done:
            module_rank[m] = level
            del covered[m]
        frontier = [
            x
            for x in elements
            if x not in assigned and arith.modulus(x) in module_rank
        ]
        assigned.update(frontier)
        if frontier:
            layers.append(tuple(frontier))
            logging.debug(f"{model.label()}: level {level} adds {len(frontier)} elements")

    rank = {
        x: 0 if arith.is_unit(x) else module_rank[arith.modulus(x)]
        for x in elements
        if x in assigned
    }
    unassigned = tuple(x for x in elements if x not in assigned)
    return StrataResult(
        model=model,
        rank=rank,
        layers=tuple(layers),
        unassigned=unassigned,
        _arith=arith,
    )


def tau_int(x: int) -> int:
    if x == 0:
        raise ZeroNormError("the norm of 0 is undefined")
    return abs(x).bit_length() - 1


@dataclass
class LenstraReport:
    checked: int = 0
    skipped: int = 0
    violations: list[tuple[str, str]] = field(default_factory=list)


def lenstra_check(result: StrataResult, samples: int = 0, seed: int = 0) -> LenstraReport:
    """
    Check ``rank(xy) >= rank(x) + rank(y)``. ``samples == 0`` checks every pair; otherwise
    ``samples`` seeded pairs are drawn. Products leaving the truncation are skipped.
    """
    arith = result.arithmetic
    elements = list(result.rank)
    if samples:
        rng = random.Random(seed)
        pairs: typing.Iterable[tuple[int, int]] = (
            (rng.choice(elements), rng.choice(elements)) for _ in range(samples)
        )
    else:
        pairs = ((x, y) for x in elements for y in elements)
    report = LenstraReport()
    for x, y in pairs:
        p = arith.product(x, y)
        if p is None or p not in result.rank:
            report.skipped += 1
            continue
        report.checked += 1
        if result.rank[p] < result.rank[x] + result.rank[y]:
            report.violations.append((arith.format(x), arith.format(y)))
    return report


def type_check(result: StrataResult | typing.Mapping[typing.Any, int]) -> bool:
    """True iff the attained ranks are an initial segment of the naturals."""
    rank = result.rank if isinstance(result, StrataResult) else result
    attained = set(rank.values())
    return bool(attained) and attained == set(range(max(attained) + 1))


def _class_minima(result: StrataResult, d: int) -> dict[int, int]:
    arith = result.arithmetic
    table = arith.residues(d)
    minima: dict[int, int] = {}
    for x, r in result.rank.items():
        c = table[x]
        if c and (c not in minima or r < minima[c]):
            minima[c] = r
    return minima


def audit(result: StrataResult) -> tuple[list[str], list[str]]:
    """
    One pass over all non-unit divisors, returning ``(euclid, minimality)`` failures.

    ``euclid`` lists divisors with a nonzero class lacking a member of smaller rank;
    ``minimality`` lists divisors whose rank is not one more than their worst class
    minimum.
    """
    arith = result.arithmetic
    minima_by_modulus: dict[int, dict[int, int]] = {}
    euclid, minimal = [], []
    for d, r in result.rank.items():
        if arith.is_unit(d):
            continue
        m = arith.modulus(d)
        if m not in minima_by_modulus:
            minima_by_modulus[m] = _class_minima(result, m)
        minima = minima_by_modulus[m]
        if len(minima) < arith.class_count(d) - 1 or any(v >= r for v in minima.values()):
            euclid.append(arith.format(d))
        if not minima or max(minima.values()) != r - 1:
            minimal.append(arith.format(d))
    return euclid, minimal


def euclid_check(result: StrataResult) -> list[str]:
    return audit(result)[0]


def minimality_check(result: StrataResult) -> list[str]:
    return audit(result)[1]
