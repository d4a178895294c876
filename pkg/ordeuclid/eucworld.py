"""
The transfinitely valued Euclidean domain ``R = U^{-1} R_inf`` and its z-variant.

Variables are materialized lazily: generators ``x[beta,i]`` on first reference,
quotient variables ``y`` when a division needs them. Elements carry their numerator
factorization forward through multiplication, so norms are read off factor multisets.
"""

import logging
import typing
from collections import Counter
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, model_validator

from ordeuclid.factoring import FactorBudget, Factorization, Factorizer
from ordeuclid.fields import FieldConfig, Scalar
from ordeuclid.ordinals import (
    ONE,
    ZERO,
    Ordinal,
    Ordering,
    cmp,
    nat_sum_all,
    omega_pow,
    omega_times,
)
from ordeuclid.polys import Poly, PolyRing, Registry, VarKind, exact_div, normalize_unit

VariantT = typing.Literal["base", "z"]


class ZeroNormError(ValueError):
    ...


class IneligiblePairError(ValueError):
    ...


class GeneratorRangeError(ValueError):
    ...


class VariantError(ValueError):
    ...


class DescentViolation(AssertionError):
    ...


class RingConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    field: FieldConfig = FieldConfig()
    alpha: Ordinal = ONE
    variant: VariantT = "base"
    unverified_minimality: bool = False

    @model_validator(mode="before")
    @classmethod
    def _variant_field(cls, data: typing.Any) -> typing.Any:
        if isinstance(data, dict) and data.get("variant") == "z" and "field" not in data:
            data = {**data, "field": FieldConfig(kind="rational", q=None)}
        return data

    @model_validator(mode="after")
    def _check(self) -> "RingConfig":
        if self.alpha.is_zero():
            raise ValueError("alpha must be at least 1")
        if self.variant == "z":
            if self.alpha != ONE:
                raise ValueError("the z-variant fixes alpha = 1")
            if self.field.kind == "finite" and not self.unverified_minimality:
                raise ValueError(
                    "the z-variant over a finite field needs unverified_minimality=True"
                )
        return self


@dataclass(frozen=True)
class SpecialPrime:
    var: int
    n: Poly
    d: Poly


class RElement:
    """
    ``num / den`` with ``den`` a monic product of norm-zero special primes.

    Instances are immutable; ``_factors`` caches the numerator factorization once known.
    """

    __slots__ = ("ring", "num", "den", "_factors", "_den_factors")

    def __init__(
        self,
        ring: "Ring",
        num: Poly,
        den: Poly | None = None,
        *,
        factors: Factorization | None = None,
        den_factors: Factorization | None = None,
    ) -> None:
        self.ring = ring
        self.num = num
        self.den = den if den is not None else ring.polys.one()
        self._factors = factors
        self._den_factors = den_factors

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _lift(self, other: "RElement | int") -> "RElement":
        if isinstance(other, RElement):
            if other.ring is not self.ring:
                raise VariantError("elements belong to different rings")
            return other
        return self.ring.scalar(other)

    def __add__(self, other: "RElement | int") -> "RElement":
        return self.ring._add(self, self._lift(other))

    __radd__ = __add__

    def __neg__(self) -> "RElement":
        factors = None
        if self._factors is not None:
            factors = self._factors.scaled(self.ring.field.neg(1))
        return RElement(
            self.ring, -self.num, self.den, factors=factors, den_factors=self._den_factors
        )

    def __sub__(self, other: "RElement | int") -> "RElement":
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> "RElement":
        return self._lift(other) - self

    def __mul__(self, other: "RElement | int") -> "RElement":
        return self.ring._mul(self, self._lift(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RElement":
        if k < 0:
            raise ValueError("negative powers need the element to be a unit")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.ring.scalar(other)
        if not isinstance(other, RElement):
            return NotImplemented
        return self.ring is other.ring and self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def format(self) -> str:
        if self.den.is_one():
            return self.num.format()
        return f"({self.num.format()}) / ({self.den.format()})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RElement({self.format()!r})"


@dataclass(frozen=True)
class DivisionResult:
    numerator: RElement
    divisor: RElement
    quotient: RElement
    remainder: RElement
    divisor_norm: Ordinal
    remainder_norm: Ordinal | None
    adjoined_var: int | None = None
    branch: typing.Literal["exact", "small", "general"] = "general"
    gcd_norm: Ordinal | None = None
    special_norm: Ordinal | None = None


@dataclass(frozen=True)
class DescentTrace:
    steps: tuple[DivisionResult, ...]
    final_gcd: RElement

    def norms(self) -> list[Ordinal]:
        return [s.divisor_norm for s in self.steps]


class Ring:
    """
    One instance of the construction: registry, factorizer and quotient memo.

    Operations that adjoin variables (``divide``, ``adjoin_quotient``, ``gen``) mutate
    the registry and need exclusive access; pure norm queries are read-only.
    """

    def __init__(
        self, config: RingConfig | None = None, budget: FactorBudget | None = None
    ) -> None:
        self.config = config or RingConfig()
        self.polys = PolyRing(self.config.field)
        self.field = self.polys.field
        self.factorizer = Factorizer(self.polys, budget)
        self._prime_norms: dict[Poly, Ordinal] = {}
        self._special_norms: dict[int, Ordinal] = {}
        self._bound = omega_pow(self.config.alpha)
        if self.config.variant == "z":
            self.polys.registry.z()

    @property
    def variant(self) -> VariantT:
        return self.config.variant

    @property
    def registry(self) -> Registry:
        return self.polys.registry

    def order_type(self) -> Ordinal:
        return self._bound

    def scalar(self, value: int | Scalar) -> RElement:
        return self.element(self.polys.const(value))

    def one(self) -> RElement:
        return self.scalar(1)

    def zero(self) -> RElement:
        return self.scalar(0)

    def element(self, num: Poly, den: Poly | None = None) -> RElement:
        return self.canonicalize(RElement(self, num, den))

    def _var_element(self, vid: int) -> RElement:
        p = self.polys.var(vid)
        return RElement(self, p, factors=Factorization.build(self.polys, self.field.one, [p]))

    def gen(self, beta: Ordinal | int | str, stage: int = 0) -> RElement:
        beta = Ordinal.coerce(beta)
        if beta.is_zero() or cmp(beta, self._bound) is not Ordering.LESS:
            raise GeneratorRangeError(f"x[{beta},{stage}] needs 0 < beta < {self._bound}")
        if stage < 0:
            raise GeneratorRangeError("stages are non-negative")
        return self._var_element(self.registry.x(beta, stage))

    def gen_z(self) -> RElement:
        if self.variant != "z":
            raise VariantError("z exists only in the z-variant")
        return self._var_element(self.registry.z())

    def var(self, vid: int) -> RElement:
        if not 0 <= vid < len(self.registry):
            raise GeneratorRangeError(f"no variable with id {vid}")
        return self._var_element(vid)

    # -- structure -------------------------------------------------------------

    def factorization(self, r: RElement) -> Factorization:
        if r.is_zero():
            raise ZeroNormError("0 has no factorization")
        if r._factors is None:
            r._factors = self.factorizer.factor(r.num)
        return r._factors

    def _den_factorization(self, r: RElement) -> Factorization:
        if r._den_factors is None:
            r._den_factors = self.factorizer.factor(r.den)
        return r._den_factors

    def sub_of(self, r: RElement) -> frozenset[Ordinal]:
        variables = r.num.variables() | r.den.variables()
        if not variables:
            raise ValueError("Sub is undefined on field elements")
        return frozenset().union(*(self.registry[v].subs for v in variables))

    def stage_of(self, r: RElement) -> int:
        variables = r.num.variables() | r.den.variables()
        return max((self.registry[v].stage for v in variables), default=0)

    def special_info(self, p: Poly) -> SpecialPrime | None:
        if p.is_constant():
            raise ValueError("units are not primes")
        if not self.factorizer.is_irreducible(p):
            raise ValueError(f"{p} is reducible")
        for v in sorted(p.variables()):
            info = self.registry[v]
            if info.kind is not VarKind.Y or p.degree_in(v) != 1:
                continue
            n, d = typing.cast(tuple[Poly, Poly], info.defining_pair)
            parts = p.coefficients_in(v)
            linear, free = parts[1], parts.get(0, self.polys.zero())
            u = self.field.neg(self.field.div(linear.leading_coefficient(), d.leading_coefficient()))
            if free == n.scale(u) and linear == d.scale(self.field.neg(u)):
                return SpecialPrime(var=v, n=n, d=d)
        return None

    # -- norms -----------------------------------------------------------------

    def prime_norm(self, p: Poly) -> Ordinal:
        """Norm of a normalized irreducible polynomial."""
        if (hit := self._prime_norms.get(p)) is not None:
            return hit
        special = self.special_info(p)
        if special is not None:
            value = self._special_norms[special.var]
        else:
            value = max(frozenset().union(*(self.registry[v].subs for v in p.variables())))
        self._prime_norms[p] = value
        return value

    def _norm_of(self, factors: Factorization, *, z_weight: typing.Callable[[int], Ordinal]) -> Ordinal:
        z = self.registry.z_id if self.variant == "z" else None
        parts = []
        for p, k in factors:
            if z is not None and p.terms == self.polys.var(z).terms:
                parts.append(z_weight(k))
            else:
                value = self.prime_norm(p)
                parts.extend([value] * k)
        return nat_sum_all(parts)

    def norm(self, r: RElement) -> Ordinal:
        if r.is_zero():
            raise ZeroNormError("the norm of 0 is undefined")
        return self._norm_of(self.factorization(r), z_weight=lambda k: Ordinal(k**k))

    def psi_monoid(self, r: RElement) -> Ordinal:
        if self.variant != "z":
            raise VariantError("the monoid norm is defined on the z-variant only")
        if r.is_zero():
            raise ZeroNormError("the monoid norm of 0 is undefined")
        return self._norm_of(self.factorization(r), z_weight=lambda k: omega_times(ONE, k))

    def is_unit(self, r: RElement) -> bool:
        return not r.is_zero() and self.norm(r).is_zero()

    def _split_units(self, factors: Factorization) -> tuple[Counter[Poly], Counter[Poly]]:
        """Partition prime factors into (norm zero, positive norm)."""
        units: Counter[Poly] = Counter()
        rest: Counter[Poly] = Counter()
        z = self.registry.z_id if self.variant == "z" else None
        for p, k in factors:
            is_z = z is not None and p.terms == self.polys.var(z).terms
            target = units if not is_z and self.prime_norm(p).is_zero() else rest
            target[p] += k
        return units, rest

    # -- localization ----------------------------------------------------------

    def canonicalize(self, r: RElement) -> RElement:
        if r.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if r.num.is_zero():
            return RElement(self, r.num, self.polys.one())
        den_factors = self._den_factorization(r)
        _, positive = self._split_units(den_factors)
        if positive:
            raise IneligiblePairError(
                f"denominator {r.den} is not a unit of the localized ring"
            )
        num = r.num.scale(self.field.inv(den_factors.unit))
        remaining: Counter[Poly] = Counter()
        num_factors = r._factors.counts() if r._factors is not None else None
        for p, k in den_factors:
            for _ in range(k):
                if num_factors is not None:
                    hit = num_factors[p] > 0
                    q = exact_div(num, p) if hit else None
                else:
                    q = exact_div(num, p)
                if q is None:
                    remaining[p] += 1
                else:
                    num = q
                    if num_factors is not None:
                        num_factors[p] -= 1
        den_out = Factorization.build(self.polys, self.field.one, remaining)
        factors = None
        if num_factors is not None:
            factors = Factorization.build(self.polys, num.leading_coefficient(), +num_factors)
        return RElement(
            self, num, den_out.expand(), factors=factors, den_factors=den_out
        )

    def _from_factors(
        self, unit: Scalar, num: Counter[Poly], den: Counter[Poly]
    ) -> RElement:
        common = num & den
        num_f = Factorization.build(self.polys, unit, num - common)
        den_f = Factorization.build(self.polys, self.field.one, den - common)
        return RElement(self, num_f.expand(), den_f.expand(), factors=num_f, den_factors=den_f)

    def _add(self, a: RElement, b: RElement) -> RElement:
        if a.den == b.den:
            return self.canonicalize(
                RElement(self, a.num + b.num, a.den, den_factors=a._den_factors)
            )
        da, db = self._den_factorization(a).counts(), self._den_factorization(b).counts()
        lcm = da | db
        la = Factorization.build(self.polys, self.field.one, lcm - da).expand()
        lb = Factorization.build(self.polys, self.field.one, lcm - db).expand()
        den_f = Factorization.build(self.polys, self.field.one, lcm)
        return self.canonicalize(
            RElement(self, a.num * la + b.num * lb, den_f.expand(), den_factors=den_f)
        )

    def _mul(self, a: RElement, b: RElement) -> RElement:
        if a.is_zero() or b.is_zero():
            return self.zero()
        if a._factors is not None and b._factors is not None:
            num = a._factors.counts() + b._factors.counts()
            den = self._den_factorization(a).counts() + self._den_factorization(b).counts()
            unit = self.field.mul(a._factors.unit, b._factors.unit)
            return self._from_factors(unit, num, den)
        den_f = self._den_factorization(a) * self._den_factorization(b)
        return self.canonicalize(
            RElement(self, a.num * b.num, den_f.expand(), den_factors=den_f)
        )

    # -- division --------------------------------------------------------------

    def divides(self, d: RElement, n: RElement) -> bool:
        if d.is_zero():
            raise ZeroDivisionError("0 divides nothing but 0")
        if n.is_zero():
            return True
        _, need = self._split_units(self.factorization(d))
        _, have = self._split_units(self.factorization(n))
        return not (need - have)

    def _eligible(
        self, n: Poly, d: Poly, norm_n: Ordinal, norm_d: Ordinal, *, coprime: bool
    ) -> None:
        if norm_d.is_zero():
            raise IneligiblePairError("the denominator must have positive norm")
        if not coprime and not self.factorizer.gcd(n, d).is_constant():
            raise IneligiblePairError("numerator and denominator share a factor")
        if cmp(norm_n, norm_d) is not Ordering.LESS:
            return
        z = self.registry.z_id
        if self.variant == "z" and z is not None and exact_div(n, self.polys.var(z)) is not None:
            return
        raise IneligiblePairError(f"norm {norm_n} of the numerator is below {norm_d}")

    def adjoin_quotient(self, n: RElement, d: RElement) -> int:
        if not (n.den.is_one() and d.den.is_one()):
            raise IneligiblePairError("quotients are adjoined for pairs of R_inf")
        if n.is_zero() or d.is_zero():
            raise IneligiblePairError("pairs consist of nonzero elements")
        return self._adjoin(n.num, d.num, self.norm(n), self.norm(d))

    def _adjoin(
        self,
        n: Poly,
        d: Poly,
        norm_n: Ordinal,
        norm_d: Ordinal,
        *,
        coprime: bool = False,
    ) -> int:
        u, d = normalize_unit(d)
        n = n.scale(self.field.inv(u))
        if (vid := self.registry.lookup_y(n, d)) is not None:
            return vid
        self._eligible(n, d, norm_n, norm_d, coprime=coprime)
        variables = n.variables() | d.variables()
        subs = frozenset({ZERO}).union(*(self.registry[v].subs for v in variables))
        stage = 1 + max((self.registry[v].stage for v in variables), default=0)
        vid = self.registry.y(n, d, subs, stage)
        special = n - self.polys.var(vid) * d
        self._special_norms[vid] = max(beta for beta in subs if cmp(beta, norm_d) is Ordering.LESS)
        self.factorizer.track(special)
        logging.debug(
            f"adjoined {self.polys.name(vid)} stage {stage} for ({n}) / ({d}), "
            f"special norm {self._special_norms[vid]}"
        )
        return vid

    def special_norm(self, vid: int) -> Ordinal:
        """Norm of the special prime attached to quotient variable ``vid``."""
        if vid not in self._special_norms:
            raise VariantError(f"{self.registry[vid].name} is not a quotient variable")
        return self._special_norms[vid]

    def special_prime(self, vid: int) -> Poly:
        info = self.registry[vid]
        if info.kind is not VarKind.Y:
            raise VariantError(f"{info.name} is not a quotient variable")
        n, d = typing.cast(tuple[Poly, Poly], info.defining_pair)
        return n - self.polys.var(vid) * d

    def divide(self, n: RElement, d: RElement) -> DivisionResult:
        """
        Division with remainder, trying the branches in order:

        * ``exact``: ``d`` divides ``n``, remainder 0.
        * ``small``: ``norm(n) < norm(d)``, so ``q = 0`` and ``r = n``. This wins even in
          the z-variant, so ``divide(z*a, d)`` with ``norm(z*a) < norm(d)`` never adjoins.
        * ``general``: common factors are split off and the quotient variable of the
          reduced pair ``(n', d')`` is adjoined, ``r = g * (n' - y*d')``.

        The widened eligibility of z-multiples therefore only matters through
        :meth:`adjoin_quotient`, or when ``norm(n) >= norm(d)`` but ``norm(n') < norm(d')``.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by zero")
        norm_d = self.norm(d)
        if n.is_zero():
            return DivisionResult(n, d, self.zero(), self.zero(), norm_d, None, branch="exact")

        fn, fd = self.factorization(n), self.factorization(d)
        units_n, big_n = self._split_units(fn)
        units_d, big_d = self._split_units(fd)
        den_n = self._den_factorization(n).counts()
        den_d = self._den_factorization(d).counts()
        ratio = self.field.div(fn.unit, fd.unit)

        if not (big_d - big_n):
            quotient = self._from_factors(
                ratio, (big_n - big_d) + units_n + den_d, den_n + units_d
            )
            return DivisionResult(n, d, quotient, self.zero(), norm_d, None, branch="exact")

        norm_n = self.norm(n)
        if cmp(norm_n, norm_d) is Ordering.LESS:
            return DivisionResult(
                n, d, self.zero(), n, norm_d, norm_n, branch="small"
            )

        common = big_n & big_d
        n_red = Factorization.build(self.polys, self.field.one, big_n - common)
        d_red = Factorization.build(self.polys, self.field.one, big_d - common)
        g = Factorization.build(self.polys, self.field.one, common)
        self.factorizer.remember(n_red)
        self.factorizer.remember(d_red)
        vid = self._adjoin(
            n_red.expand(),
            d_red.expand(),
            self._norm_of(n_red, z_weight=lambda k: Ordinal(k**k)),
            self._norm_of(d_red, z_weight=lambda k: Ordinal(k**k)),
            coprime=True,
        )
        special = normalize_unit(self.special_prime(vid))[1]
        y = self.polys.var(vid)
        # q = y * (n / N) / (d / D), r = (n / N) * g * (n' - y d')
        quotient = self._from_factors(
            ratio, Counter({y: 1}) + units_n + den_d, den_n + units_d
        )
        special_scale = self.special_prime(vid).leading_coefficient()
        remainder = self._from_factors(
            self.field.mul(fn.unit, special_scale),
            units_n + common + Counter({special: 1}),
            den_n,
        )
        remainder_norm = self.norm(remainder)
        if cmp(remainder_norm, norm_d) is not Ordering.LESS:
            raise DescentViolation(
                f"remainder norm {remainder_norm} is not below divisor norm {norm_d}"
            )
        return DivisionResult(
            n,
            d,
            quotient,
            remainder,
            norm_d,
            remainder_norm,
            adjoined_var=vid,
            branch="general",
            gcd_norm=self._norm_of(g, z_weight=lambda k: Ordinal(k**k)),
            special_norm=self.special_norm(vid),
        )

    def euclid_gcd(self, a: RElement, b: RElement) -> DescentTrace:
        if a.is_zero() and b.is_zero():
            raise ZeroDivisionError("gcd(0, 0) is undefined")
        if b.is_zero():
            return DescentTrace(steps=(), final_gcd=a)
        steps: list[DivisionResult] = []
        n, d = a, b
        while True:
            step = self.divide(n, d)
            if steps and cmp(step.divisor_norm, steps[-1].divisor_norm) is not Ordering.LESS:
                raise DescentViolation("divisor norms failed to decrease")
            steps.append(step)
            if step.remainder.is_zero():
                return DescentTrace(steps=tuple(steps), final_gcd=d)
            n, d = d, step.remainder

    def factor_gcd(self, a: RElement, b: RElement) -> RElement:
        """gcd from factor multisets, up to units of R."""
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        _, big_a = self._split_units(self.factorization(a))
        _, big_b = self._split_units(self.factorization(b))
        return self._from_factors(self.field.one, big_a & big_b, Counter())

    def associates(self, a: RElement, b: RElement) -> bool:
        if a.is_zero() or b.is_zero():
            return a.is_zero() and b.is_zero()
        return self.divides(a, b) and self.divides(b, a)


def nonmult_witness(k: int) -> tuple[int, int]:
    """
    ``(k^(k+1), (k+1)^(k+1))``: a norm with psi(z) = k that were multiplicative would
    give psi(z^l) = k^l below the minimal norm l^l at l = k + 1.
    """
    if k < 1:
        raise ValueError("z is not a unit, so psi(z) >= 1")
    ell = k + 1
    return k**ell, ell**ell


def lenstra_gap(ell: int) -> int:
    """Excess of phi(z^(2l)) over phi(z^l) + phi(z^l)."""
    if ell < 1:
        raise ValueError("l must be positive")
    return (2 * ell) ** (2 * ell) - 2 * ell**ell


def lenstra_breaker(k: int) -> int:
    """Least l whose gap exceeds k, so no additive bound k holds for x = y = z^l."""
    if k < 0:
        raise ValueError("k must be non-negative")
    ell = 1
    while lenstra_gap(ell) <= k:
        ell += 1
    return ell


def superadditive_gap(i: int, j: int) -> int:
    return (i + j) ** (i + j) - i**i - j**j


__all__ = [
    "DescentTrace",
    "DescentViolation",
    "DivisionResult",
    "GeneratorRangeError",
    "IneligiblePairError",
    "RElement",
    "Ring",
    "RingConfig",
    "SpecialPrime",
    "VariantError",
    "ZeroNormError",
    "lenstra_breaker",
    "lenstra_gap",
    "nonmult_witness",
    "superadditive_gap",
]
