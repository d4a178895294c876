"""
Seeded property suites over every layer of the library.

Each suite takes ``(seed, scale)`` and returns a :class:`SuiteReport`; ``scale`` shrinks
sample counts and model sizes so the same suites run quickly under pytest.
"""

import itertools
import logging
import random
import typing
from collections import Counter

from pydantic import BaseModel

from ordeuclid.eucworld import (
    DivisionResult,
    RElement,
    Ring,
    RingConfig,
    lenstra_gap,
    nonmult_witness,
)
from ordeuclid.factoring import FactorBudget, Factorizer, FactorizationIncomplete
from ordeuclid.fields import FieldConfig
from ordeuclid.motzkin import (
    RingModel,
    audit,
    lenstra_check,
    stratify,
    tau_int,
    type_check,
)
from ordeuclid.ordinals import (
    ONE,
    Ordinal,
    Ordering,
    cmp,
    is_indecomposable,
    nat_sum,
    omega_times,
    ord_add,
    parse,
)
from ordeuclid.parsing import parse_element
from ordeuclid.polys import Monomial, Poly, PolyRing, exact_div, normalize_unit


class SuiteReport(BaseModel):
    name: str
    checked: int = 0
    violations: list[str] = []

    def expect(self, ok: bool, detail: typing.Callable[[], str] | str) -> None:
        self.checked += 1
        if not ok:
            self.violations.append(detail() if callable(detail) else detail)


def _count(n: int, scale: float) -> int:
    return max(1, round(n * scale))


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


# -- ordinals ----------------------------------------------------------------------


def random_ordinal(rng: random.Random, *, max_exponent: int = 4, max_terms: int = 3) -> Ordinal:
    """A CNF ordinal below w^w with small coefficients."""
    terms = [
        (Ordinal(rng.randint(0, max_exponent)), rng.randint(1, 3))
        for _ in range(rng.randint(0, max_terms))
    ]
    return Ordinal.from_terms(terms)


def hessenberg_suite(seed: int, scale: float = 1.0) -> SuiteReport:
    rng = _rng(seed, "hessenberg")
    report = SuiteReport(name="hessenberg")
    for _ in range(_count(1000, scale)):
        a, b, c = (random_ordinal(rng) for _ in range(3))
        ab = nat_sum(a, b)
        report.expect(ab == nat_sum(b, a), lambda: f"commutativity fails for {a}, {b}")
        report.expect(
            nat_sum(ab, c) == nat_sum(a, nat_sum(b, c)),
            lambda: f"associativity fails for {a}, {b}, {c}",
        )
        report.expect(
            (nat_sum(a, c) == nat_sum(b, c)) == (a == b),
            lambda: f"cancellation fails for {a}, {b}, {c}",
        )
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            report.expect(
                cmp(nat_sum(lo, c), nat_sum(hi, c)) is Ordering.LESS,
                lambda: f"monotonicity fails for {lo} < {hi} with {c}",
            )
        report.expect(
            cmp(ord_add(a, b), ab) is not Ordering.GREATER,
            lambda: f"{a} + {b} exceeds {a} (+) {b}",
        )
    return report


# -- factoring ---------------------------------------------------------------------


def _small_monomials(variables: list[int], degree: int) -> list[Monomial]:
    out = []
    for exps in itertools.product(range(degree + 1), repeat=len(variables)):
        if sum(exps) <= degree:
            out.append(tuple((v, e) for v, e in zip(variables, exps) if e))
    return out


def brute_irreducible(p: Poly) -> bool | None:
    """
    Exhaustive irreducibility over a finite field: some factor of a reducible ``p`` has
    degree at most ``deg(p) / 2``. ``None`` when the candidate space is too large.
    """
    field = p.field
    variables = sorted(p.variables())
    monomials = [
        m
        for m in _small_monomials(variables, p.degree() // 2)
        if all(e <= p.degree_in(v) for v, e in m)
    ]
    if len(monomials) > 16:
        return None
    digits = list(field.elements())  # type: ignore[attr-defined]
    for choice in itertools.product(digits, repeat=len(monomials)):
        terms = {m: c for m, c in zip(monomials, choice) if c}
        candidate = Poly(p.ring, terms)
        if candidate.is_zero() or candidate.is_constant():
            continue
        if exact_div(p, candidate) is not None:
            return False
    return True


def _random_irreducible(rng: random.Random, polys: PolyRing, variables: list[int]) -> Poly:
    monomials = [m for m in _small_monomials(variables, 3) if m]
    while True:
        chosen = rng.sample(monomials, rng.randint(1, 3))
        terms = {m: 1 for m in chosen}
        if rng.random() < 0.5:
            terms[()] = 1
        p = normalize_unit(Poly(polys, terms))[1]
        if brute_irreducible(p):
            return p


def factoring_suite(seed: int, scale: float = 1.0, q: int = 2) -> SuiteReport:
    rng = _rng(seed, "factoring")
    report = SuiteReport(name="factoring")
    polys = PolyRing(FieldConfig(kind="finite", q=q))
    variables = [polys.registry.x(Ordinal(i), 0) for i in range(1, 4)]
    factorizer = Factorizer(polys, FactorBudget())
    for _ in range(_count(200, scale)):
        chosen = [_random_irreducible(rng, polys, variables) for _ in range(rng.randint(1, 2))]
        product = polys.one()
        for p in chosen:
            product = product * p
        try:
            found = factorizer.factor(product)
        except FactorizationIncomplete as e:
            report.expect(False, f"{product}: {e}")
            continue
        report.expect(
            Counter(found.primes()) == Counter(chosen) and found.expand() == product,
            lambda: f"{product} factored as {found.primes()}, built from {chosen}",
        )
        for p in found.primes():
            report.expect(
                brute_irreducible(p) is not False, lambda: f"reported factor {p} splits"
            )
    return report


# -- the constructed ring ----------------------------------------------------------

BASE_POOL = ["1", "2", "3", "5", "w", "w + 1", "w*2", "w*3 + 2"]


def random_element(
    rng: random.Random, ring: Ring, pool: typing.Sequence[str] = BASE_POOL
) -> RElement:
    """A nonzero sum of one to three products of one or two generators."""
    while True:
        value = ring.zero()
        for _ in range(rng.randint(1, 3)):
            term = ring.one()
            for _ in range(rng.randint(1, 2)):
                term = term * ring.gen(parse(rng.choice(pool)), rng.choice((0, 0, 1)))
            value = value + term
        if rng.random() < 0.3:
            value = value + 1
        if not value.is_zero():
            return value


def shared_factor_pair(
    rng: random.Random, ring: Ring
) -> tuple[RElement, RElement, RElement]:
    """``(g, a, b)`` with norm(g) > 0, norm(a) >= norm(b) and b not dividing a."""
    g = random_element(rng, ring)
    while ring.norm(g).is_zero():
        g = random_element(rng, ring)
    while True:
        a, b = random_element(rng, ring), random_element(rng, ring)
        if cmp(ring.norm(a), ring.norm(b)) is Ordering.LESS:
            a, b = b, a
        if not ring.divides(b, a):
            return g, a, b


def descent_suite(seed: int, scale: float = 1.0) -> SuiteReport:
    rng = _rng(seed, "descent")
    report = SuiteReport(name="descent")
    ring = Ring(RingConfig(field=FieldConfig(kind="finite", q=2), alpha=Ordinal(2)))
    bound = ring.order_type()

    def below_bound(*norms: Ordinal | None) -> bool:
        return all(x is None or cmp(x, bound) is Ordering.LESS for x in norms)

    def check_division(n: RElement, d: RElement) -> DivisionResult:
        result = ring.divide(n, d)
        report.expect(
            result.quotient * d + result.remainder == n,
            lambda: f"({n}) != ({result.quotient})*({d}) + ({result.remainder})",
        )
        report.expect(
            result.remainder.is_zero()
            or cmp(typing.cast(Ordinal, result.remainder_norm), result.divisor_norm)
            is Ordering.LESS,
            lambda: f"no descent dividing {n} by {d}",
        )
        if result.branch == "general":
            report.expect(
                result.remainder_norm
                == nat_sum(
                    typing.cast(Ordinal, result.special_norm),
                    typing.cast(Ordinal, result.gcd_norm),
                ),
                lambda: f"remainder norm does not split for {n} / {d}",
            )
        report.expect(
            below_bound(result.divisor_norm, result.remainder_norm),
            lambda: f"norm outside w^alpha dividing {n} by {d}",
        )
        return result

    for _ in range(_count(200, scale)):
        check_division(random_element(rng, ring), random_element(rng, ring))
    # g*a over g*b: general branch, norm(g) inside the gcd norm
    for _ in range(_count(60, scale)):
        g, a, b = shared_factor_pair(rng, ring)
        result = check_division(g * a, g * b)
        report.expect(
            result.branch == "general",
            lambda: f"({g})*({a}) / ({g})*({b}) took the {result.branch} branch",
        )
        report.expect(
            result.gcd_norm is not None
            and cmp(result.gcd_norm, ring.norm(g)) is not Ordering.LESS,
            lambda: f"gcd norm {result.gcd_norm} misses the shared factor {g}",
        )
    for _ in range(_count(50, scale)):
        a, b = random_element(rng, ring), random_element(rng, ring)
        trace = ring.euclid_gcd(a, b)
        norms = trace.norms()
        report.expect(
            all(cmp(x, y) is Ordering.GREATER for x, y in zip(norms, norms[1:])),
            lambda: f"gcd trace of {a}, {b} does not descend: {norms}",
        )
        report.expect(
            ring.associates(trace.final_gcd, ring.factor_gcd(a, b)),
            lambda: f"gcd({a}, {b}) = {trace.final_gcd} disagrees with factor gcd",
        )
    worked = parse_element(ring, "x[5,0]*x[1,0] - x[3,0]^2")
    report.expect(ring.norm(worked) == 5, f"norm of {worked} is {ring.norm(worked)}")
    report.expect(
        ring.sub_of(worked) == {Ordinal(1), Ordinal(3), Ordinal(5)},
        f"Sub of {worked} is {sorted(ring.sub_of(worked))}",
    )
    for text in ("1", "5", "w", "w*3 + 2", "w*7"):
        beta = parse(text)
        report.expect(ring.norm(ring.gen(beta)) == beta, f"norm of x[{text},0] is not {text}")
    report.expect(is_indecomposable(bound), f"{bound} is decomposable")
    return report


def multiplicativity_suite(seed: int, scale: float = 1.0) -> SuiteReport:
    rng = _rng(seed, "multiplicativity")
    report = SuiteReport(name="multiplicativity")
    ring = Ring(RingConfig(alpha=Ordinal(2)))
    for _ in range(_count(500, scale)):
        x, y = random_element(rng, ring), random_element(rng, ring)
        lhs, rhs = ring.norm(x * y), nat_sum(ring.norm(x), ring.norm(y))
        report.expect(lhs == rhs, lambda: f"norm({x} * {y}) = {lhs}, expected {rhs}")
    result = stratify(RingModel(kind="int", n=max(16, round(256 * scale))))
    lenstra = lenstra_check(result)
    report.checked += lenstra.checked
    report.violations += [f"rank growth fails for {x}, {y}" for x, y in lenstra.violations]
    return report


def _z_ring() -> Ring:
    return Ring(RingConfig(variant="z"))


def zvariant_suite(seed: int, scale: float = 1.0) -> SuiteReport:
    report = SuiteReport(name="z-variant")
    ring = _z_ring()
    z = ring.gen_z()
    for k in range(1, 9):
        report.expect(ring.norm(z**k) == k**k, f"norm(z^{k}) != {k}^{k}")
        lhs, rhs = nonmult_witness(k)
        report.expect(lhs < rhs, f"witness for k = {k} fails")
    for i in range(1, 8):
        for j in range(1, 9 - i):
            joint = ring.norm(z**i * z**j)
            split = nat_sum(ring.norm(z**i), ring.norm(z**j))
            report.expect(
                cmp(joint, split) is Ordering.GREATER,
                f"norm(z^{i} z^{j}) = {joint} is not above {split}",
            )
    gaps = [lenstra_gap(ell) for ell in range(1, 7)]
    report.expect(
        all(a < b for a, b in zip(gaps, gaps[1:])), f"gaps do not grow: {gaps}"
    )
    return report


def monoid_suite(seed: int, scale: float = 1.0) -> SuiteReport:
    rng = _rng(seed, "monoid")
    report = SuiteReport(name="monoid")
    ring = _z_ring()
    z = ring.gen_z()
    pool = ["1", "2", "3", "4"]
    for k in range(1, 9):
        report.expect(
            ring.psi_monoid(z**k) == omega_times(ONE, k), f"psi(z^{k}) is not w*{k}"
        )
    for _ in range(_count(200, scale)):
        x = random_element(rng, ring, pool) * z ** rng.randint(0, 3)
        y = random_element(rng, ring, pool) * z ** rng.randint(0, 3)
        lhs = ring.psi_monoid(x * y)
        rhs = nat_sum(ring.psi_monoid(x), ring.psi_monoid(y))
        report.expect(lhs == rhs, lambda: f"psi({x} * {y}) = {lhs}, expected {rhs}")
        report.expect(
            cmp(ring.norm(x * y), nat_sum(ring.norm(x), ring.norm(y)))
            is not Ordering.LESS,
            lambda: f"norm of {x} * {y} is not superadditive",
        )
    return report


# -- Motzkin ----------------------------------------------------------------------


def motzkin_int_suite(seed: int, scale: float = 1.0) -> SuiteReport:
    report = SuiteReport(name="motzkin-int")
    n = max(16, round(1024 * scale))
    result = stratify(RingModel(kind="int", n=n))
    for x, r in result.rank.items():
        report.expect(r == tau_int(x), lambda: f"rank({x}) = {r}, expected {tau_int(x)}")
    euclid, minimal = audit(result)
    report.violations += [f"euclid: {d}" for d in euclid]
    report.violations += [f"minimality: {d}" for d in minimal]
    report.expect(type_check(result), "ranks are not an initial segment")
    return report


def motzkin_poly_suite(seed: int, scale: float = 1.0) -> SuiteReport:
    report = SuiteReport(name="motzkin-poly")
    degree = 8 if scale >= 1 else 4
    result = stratify(RingModel(kind="poly", q=2, degree=degree))
    for x, r in result.rank.items():
        report.expect(r == x.bit_length() - 1, lambda: f"rank({x}) = {r}")
    report.expect(len(result.rank) == 2 ** (degree + 1) - 1, "elements missing")
    report.expect(result.rho == Ordinal(degree + 1), f"rho is {result.rho}")
    return report


SUITES: dict[str, typing.Callable[[int, float], SuiteReport]] = {
    "hessenberg": hessenberg_suite,
    "factoring": factoring_suite,
    "descent": descent_suite,
    "multiplicativity": multiplicativity_suite,
    "z-variant": zvariant_suite,
    "monoid": monoid_suite,
    "motzkin-int": motzkin_int_suite,
    "motzkin-poly": motzkin_poly_suite,
}


def run_suites(names: typing.Iterable[str], seed: int, scale: float = 1.0) -> list[SuiteReport]:
    reports = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        logging.debug(f"running suite {name} with seed {seed}")
        reports.append(SUITES[name](seed, scale))
    return reports
