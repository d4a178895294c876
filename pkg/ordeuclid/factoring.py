"""Irreducible factorization and gcd of sparse polynomials by bounded divisor search."""

import itertools
import logging
import math
import typing
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from ordeuclid.fields import Scalar
from ordeuclid.polys import (
    MixedRingError,
    Monomial,
    Poly,
    PolyRing,
    exact_div,
    mono_div,
    normalize_unit,
)


class FactorizationIncomplete(Exception):
    ...


class FactorBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_candidates: int = Field(default=200_000, ge=1)
    max_degree: int = Field(default=4, ge=1)
    height: int = Field(default=10, ge=1)


@dataclass(frozen=True)
class Factorization:
    ring: PolyRing = field(compare=False, repr=False)
    unit: Scalar
    factors: tuple[tuple[Poly, int], ...] = ()

    @classmethod
    def build(
        cls,
        ring: PolyRing,
        unit: Scalar,
        primes: typing.Iterable[Poly] | typing.Mapping[Poly, int],
    ) -> "Factorization":
        counts = Counter(primes)
        ordered = sorted(
            ((p, k) for p, k in counts.items() if k > 0), key=lambda t: t[0].sort_key()
        )
        return cls(ring=ring, unit=unit, factors=tuple(ordered))

    def counts(self) -> Counter[Poly]:
        return Counter(dict(self.factors))

    def primes(self) -> list[Poly]:
        return [p for p, k in self.factors for _ in range(k)]

    def __iter__(self) -> typing.Iterator[tuple[Poly, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return sum(k for _, k in self.factors)

    def __mul__(self, other: "Factorization") -> "Factorization":
        f = self.ring.field
        return Factorization.build(
            self.ring, f.mul(self.unit, other.unit), self.counts() + other.counts()
        )

    def __pow__(self, k: int) -> "Factorization":
        f = self.ring.field
        unit = f.one
        for _ in range(k):
            unit = f.mul(unit, self.unit)
        return Factorization.build(
            self.ring, unit, {p: m * k for p, m in self.factors}
        )

    def scaled(self, c: Scalar) -> "Factorization":
        return Factorization(
            ring=self.ring, unit=self.ring.field.mul(self.unit, c), factors=self.factors
        )

    def expand(self) -> Poly:
        result = self.ring.const(1).scale(self.unit)
        for p, k in self.factors:
            result = result * p**k
        return result


class Factorizer:
    """
    Factors polynomials of one :class:`PolyRing`.

    The finite-field search is exhaustive, so its only failure mode is running out of
    ``max_candidates``. Over the rationals a search is exhaustive when only linear
    factors in the main variable are possible, or when the input is univariate and
    ``height`` reaches the Mignotte bound for every factor degree up to half its own.
    Any other search bounded by ``height`` and ``max_degree`` is reported as
    :class:`FactorizationIncomplete` when it settles nothing.
    """

    def __init__(self, ring: PolyRing, budget: FactorBudget | None = None) -> None:
        self.ring = ring
        self.budget = budget or FactorBudget()
        self._cache: dict[Poly, tuple[Poly, ...]] = {}
        self._tracked: list[Poly] = []

    def track(self, prime: Poly) -> None:
        """Register a known irreducible; it is trial-divided before any search."""
        _, prime = normalize_unit(prime)
        if prime not in self._cache:
            self._cache[prime] = (prime,)
        if prime not in self._tracked:
            self._tracked.append(prime)

    def remember(self, factorization: Factorization) -> None:
        _, monic = normalize_unit(factorization.expand())
        self._cache.setdefault(monic, tuple(factorization.primes()))

    def factor(self, a: Poly) -> Factorization:
        if a.is_zero():
            raise ZeroDivisionError("the zero polynomial has no factorization")
        unit, monic = normalize_unit(a)
        return Factorization.build(self.ring, unit, self._split(monic))

    def is_irreducible(self, a: Poly) -> bool:
        if a.is_zero() or a.is_constant():
            raise ValueError("zero and units are neither reducible nor irreducible")
        _, monic = normalize_unit(a)
        return len(self._split(monic)) == 1

    def gcd(self, a: Poly, b: Poly) -> Poly:
        if a.is_zero() and b.is_zero():
            raise ZeroDivisionError("gcd(0, 0) is undefined")
        if a.is_zero():
            return normalize_unit(b)[1]
        if b.is_zero():
            return normalize_unit(a)[1]
        return self._gcd_all([a, b])

    def divisors(self, a: Poly) -> list[Poly]:
        """Every normalized divisor of ``a``, 1 included."""
        _, monic = normalize_unit(a)
        counts = Counter(self._split(monic))
        primes = sorted(counts, key=lambda p: p.sort_key())
        out = []
        for exps in itertools.product(*(range(counts[p] + 1) for p in primes)):
            d = self.ring.one()
            for p, e in zip(primes, exps):
                if e:
                    d = d * p**e
            out.append(d)
        return out

    def _split(self, monic: Poly) -> list[Poly]:
        if monic.is_constant():
            return []
        if (hit := self._cache.get(monic)) is not None:
            return list(hit)
        found: list[Poly] = []
        rest = monic
        content = monic.monomial_content()
        if content:
            for v, e in content:
                found.extend([self.ring.var(v)] * e)
            rest = Poly(
                self.ring,
                {typing.cast(Monomial, mono_div(m, content)): c for m, c in monic.terms.items()},
            )
        if not rest.is_constant():
            found.extend(self._split_primitive(rest))
        self._cache[monic] = tuple(found)
        return found

    def _split_primitive(self, p: Poly) -> list[Poly]:
        if (hit := self._cache.get(p)) is not None:
            return list(hit)
        found: list[Poly] = []
        rest = p
        for prime in self._tracked:
            if prime.degree() > rest.degree() or not prime.variables() <= rest.variables():
                continue
            while (q := exact_div(rest, prime)) is not None:
                found.append(prime)
                rest = normalize_unit(q)[1]
                if rest.is_constant():
                    break
            if rest.is_constant():
                break
        if not rest.is_constant():
            found.extend(self._split_core(rest))
        self._cache[p] = tuple(found)
        return found

    def _split_core(self, p: Poly) -> list[Poly]:
        if p.degree() == 1:
            return [p]
        x = min(p.variables(), key=lambda v: (p.degree_in(v), v))
        coefficients = p.coefficients_in(x)
        content = self._gcd_all(list(coefficients.values()))
        if not content.is_constant():
            primitive = normalize_unit(typing.cast(Poly, exact_div(p, content)))[1]
            return self._split(content) + self._split(primitive)
        # primitive and linear in x: irreducible
        if p.degree_in(x) == 1:
            return [p]
        divisor = self._find_divisor(p, x, coefficients)
        if divisor is None:
            return [p]
        cofactor = normalize_unit(typing.cast(Poly, exact_div(p, divisor)))[1]
        return self._split(divisor) + self._split(cofactor)

    def _gcd_all(self, polys: list[Poly]) -> Poly:
        monics = [normalize_unit(q)[1] for q in polys if not q.is_zero()]
        monics.sort(key=lambda q: (q.degree(), len(q.terms)))
        base, others = monics[0], monics[1:]
        result = self.ring.one()
        if base.is_constant():
            return result
        for prime, multiplicity in Counter(self._split(base)).items():
            k = multiplicity
            for other in others:
                k = min(k, _valuation(other, prime, k))
                if k == 0:
                    break
            if k:
                result = result * prime**k
        return result

    def _find_divisor(
        self, p: Poly, x: int, coefficients: dict[int, Poly]
    ) -> Poly | None:
        """
        Search for a divisor of degree k <= deg_x(p)/2 in ``x`` whose x-leading and
        x-free coefficients divide those of ``p``; middle coefficients are enumerated
        under the total-degree bound ``deg(p) - deg_x(p) + k``.
        """
        if self.ring.field.is_finite():
            return self._search(p, x, coefficients, exhaustive=True)
        return self._search_rational(p, x)

    def _search(
        self,
        p: Poly,
        x: int,
        coefficients: dict[int, Poly],
        *,
        exhaustive: bool,
        heads: list[Poly] | None = None,
        tails: list[Poly] | None = None,
        digits: typing.Sequence[Scalar] | None = None,
        max_k: int | None = None,
    ) -> Poly | None:
        field = self.ring.field
        top = p.degree_in(x)
        total = p.degree()
        others = sorted(p.variables() - {x})
        if heads is None:
            heads = self.divisors(coefficients[top])
        if tails is None:
            tails = [
                d.scale(s)
                for d in self.divisors(coefficients[0])
                for s in field.nonzero()  # type: ignore[attr-defined]
            ]
        if digits is None:
            digits = list(field.elements())  # type: ignore[attr-defined]
        logging.debug(
            f"divisor search in {self.ring.name(x)}: deg {total}, deg_x {top}, "
            f"{len(heads)} heads x {len(tails)} tails"
        )
        spent = 0
        reach = top // 2 if max_k is None else min(top // 2, max_k)
        for k in range(1, reach + 1):
            slack = total - top + k
            slots = [
                (i, m)
                for i in range(1, k)
                for m in _monomials(others, slack - i, p)
            ]
            block = len(digits) ** len(slots)
            for head in heads:
                if head.degree() + k > slack:
                    continue
                for tail in tails:
                    if tail.degree() > slack:
                        continue
                    spent += block
                    if spent > self.budget.max_candidates:
                        raise FactorizationIncomplete(
                            f"divisor search for {p} exceeded "
                            f"{self.budget.max_candidates} candidates"
                        )
                    fixed = dict(tail.terms)
                    for m, c in head.terms.items():
                        fixed[_shift(m, x, k)] = c
                    for choice in itertools.product(digits, repeat=len(slots)):
                        terms = dict(fixed)
                        for (i, m), c in zip(slots, choice):
                            if c != 0:
                                terms[_shift(m, x, i)] = c
                        candidate = Poly(self.ring, terms)
                        if exact_div(p, candidate) is not None:
                            return normalize_unit(candidate)[1]
        if not exhaustive:
            raise FactorizationIncomplete(
                f"no divisor of {p} within height {self.budget.height}; "
                "irreducibility not established"
            )
        return None

    def _search_rational(self, p: Poly, x: int) -> Poly | None:
        scaled = _integer_primitive(p)
        coefficients = scaled.coefficients_in(x)
        top = scaled.degree_in(x)
        lead, tail = coefficients[top], coefficients[0]
        heads = [
            d.scale(Fraction(beta))
            for d in map(_integer_primitive, self.divisors(lead))
            for beta in _positive_divisors(_int_content(lead))
        ]
        tails = [
            d.scale(Fraction(sign * gamma))
            for d in map(_integer_primitive, self.divisors(tail))
            for gamma in _positive_divisors(_int_content(tail))
            for sign in (1, -1)
        ]
        # middle coefficients over Q are only bounded for univariate input
        exhaustive = top < 4 or self._height_covers(scaled, x, top)
        height = self.budget.height
        return self._search(
            scaled,
            x,
            coefficients,
            exhaustive=exhaustive,
            heads=heads,
            tails=tails,
            digits=[Fraction(c) for c in range(-height, height + 1)],
            max_k=self.budget.max_degree,
        )

    def _height_covers(self, p: Poly, x: int, top: int) -> bool:
        if p.variables() != {x} or self.budget.max_degree < top // 2:
            return False
        return _coefficient_bound(p, top // 2) <= self.budget.height


def factor(a: Poly, budget: FactorBudget | None = None) -> Factorization:
    return Factorizer(a.ring, budget).factor(a)


def poly_gcd(a: Poly, b: Poly, budget: FactorBudget | None = None) -> Poly:
    """Normalized gcd of two polynomials of the same ring."""
    if a.ring is not b.ring:
        raise MixedRingError("polynomials belong to different rings")
    return Factorizer(a.ring, budget).gcd(a, b)


def is_irreducible(a: Poly, budget: FactorBudget | None = None) -> bool:
    return Factorizer(a.ring, budget).is_irreducible(a)


def _valuation(a: Poly, prime: Poly, cap: int) -> int:
    k = 0
    while k < cap:
        q = exact_div(a, prime)
        if q is None:
            break
        a, k = q, k + 1
    return k


def _shift(m: Monomial, x: int, k: int) -> Monomial:
    if k == 0:
        return m
    return tuple(sorted(m + ((x, k),)))


def _monomials(variables: list[int], bound: int, p: Poly) -> list[Monomial]:
    if bound < 0:
        return []
    out: list[Monomial] = []

    def walk(i: int, left: int, acc: tuple[tuple[int, int], ...]) -> None:
        if i == len(variables):
            out.append(acc)
            return
        v = variables[i]
        for e in range(min(left, p.degree_in(v)) + 1):
            walk(i + 1, left - e, acc + ((v, e),) if e else acc)

    walk(0, bound, ())
    return out


def _integer_primitive(p: Poly) -> Poly:
    """Scale a rational polynomial to integer coefficients with content 1 and a positive lead."""
    values = [Fraction(c) for c in p.terms.values()]
    scale = math.lcm(*(c.denominator for c in values))
    content = math.gcd(*(int(c * scale) for c in values))
    sign = -1 if p.leading_coefficient() < 0 else 1  # type: ignore[operator]
    return p.scale(Fraction(sign * scale, content))


def _coefficient_bound(p: Poly, k: int) -> int:
    """
    Mignotte bound: every integer factor of ``p`` of degree <= k has coefficients of
    absolute value at most ``C(k, k//2) * ceil(||p||_2)``.
    """
    squares = sum(int(c) ** 2 for c in p.terms.values())
    return math.comb(k, k // 2) * (math.isqrt(squares - 1) + 1)


def _int_content(p: Poly) -> int:
    return math.gcd(*(int(c) for c in p.terms.values()))


def _positive_divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))
