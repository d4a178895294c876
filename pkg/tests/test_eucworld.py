import pytest
from pydantic import ValidationError

from ordeuclid.eucworld import (
    GeneratorRangeError,
    IneligiblePairError,
    Ring,
    RingConfig,
    SpecialPrime,
    VariantError,
    ZeroNormError,
    lenstra_breaker,
    lenstra_gap,
    nonmult_witness,
    superadditive_gap,
)
from ordeuclid.fields import FieldConfig
from ordeuclid.ordinals import OMEGA, Ordinal, Ordering, cmp, is_indecomposable, nat_sum, parse
from ordeuclid.parsing import parse_element

F2 = FieldConfig(kind="finite", q=2)
QQ = FieldConfig(kind="rational")


@pytest.fixture
def base() -> Ring:
    return Ring(RingConfig(field=F2, alpha=Ordinal(2)))


@pytest.fixture
def rational() -> Ring:
    return Ring(RingConfig(field=QQ))


@pytest.fixture
def variant() -> Ring:
    return Ring(RingConfig(variant="z"))


def ordinals(*texts: str) -> frozenset[Ordinal]:
    return frozenset(parse(t) for t in texts)


def test_ring_config():
    assert RingConfig().field.label() == "F2"
    assert RingConfig(variant="z").field.kind == "rational"
    with pytest.raises(ValidationError):
        RingConfig(variant="z", alpha=Ordinal(2))
    with pytest.raises(ValidationError):
        RingConfig(variant="z", field=F2)
    assert RingConfig(variant="z", field=F2, unverified_minimality=True).field == F2
    with pytest.raises(ValidationError):
        RingConfig(alpha=0)


def test_new_ring(base: Ring, variant: Ring):
    assert Ring().order_type() == OMEGA
    assert str(base.order_type()) == "w^2"
    assert len(base.registry) == 0
    assert variant.registry.z_id == 0


def test_generators(base: Ring):
    assert base.norm(base.gen(5, 0)) == 5
    assert base.norm(base.gen(OMEGA, 0)) == OMEGA
    assert base.gen(5, 0) == base.gen(5, 0)
    assert len(base.registry) == 2
    with pytest.raises(GeneratorRangeError):
        base.gen(0, 0)
    with pytest.raises(GeneratorRangeError):
        base.gen("w^2", 0)
    with pytest.raises(GeneratorRangeError):
        Ring().gen(OMEGA, 0)
    with pytest.raises(VariantError):
        base.gen_z()


def test_worked_example(rational: Ring):
    r = parse_element(rational, "x[5,0]*x[1,0] - x[3,0]^2")
    assert rational.norm(r) == 5
    assert rational.sub_of(r) == ordinals("1", "3", "5")
    assert rational.factorization(r).primes() == [r.num]


def test_sub_of(base: Ring):
    assert base.sub_of(base.gen(7, 2)) == ordinals("7")
    assert base.stage_of(base.gen(7, 2)) == 2
    with pytest.raises(ValueError):
        base.sub_of(base.scalar(1))


def test_norm(base: Ring, variant: Ring):
    assert base.norm(base.one()) == 0
    assert base.is_unit(base.one())
    assert base.norm(base.gen(2) * base.gen(3)) == 5
    assert base.norm(base.gen("w") * base.gen(3) ** 2) == parse("w + 6")
    assert variant.norm(variant.gen_z() ** 3) == 27
    assert variant.norm(variant.gen_z() ** 2 * variant.gen(4)) == 8
    assert variant.norm(parse_element(variant, "x[1,0]^4 + 1")) == 1
    assert variant.norm(parse_element(variant, "x[1,0]^4 + 2*x[1,0]^2 + x[1,0] + 2")) == 2
    with pytest.raises(ZeroNormError):
        base.norm(base.zero())


def test_adjoin_quotient(base: Ring):
    vid = base.adjoin_quotient(base.gen(2, 1), base.gen(1, 0))
    info = base.registry[vid]
    assert info.subs == ordinals("0", "1", "2")
    assert info.stage == 2
    assert info.name == f"y{vid}"
    assert base.adjoin_quotient(base.gen(2, 1), base.gen(1, 0)) == vid
    assert base.special_norm(vid) == 0


def test_adjoin_quotient_worked_pair():
    ring = Ring(RingConfig(field=F2))
    n = parse_element(ring, "x[7,0]^2*x[5,0]")
    d = parse_element(ring, "x[3,0]^5 - x[4,0]")
    vid = ring.adjoin_quotient(n, d)
    assert ring.registry[vid].subs == ordinals("0", "3", "4", "5", "7")
    assert ring.registry[vid].stage == 1
    # norm(d) = 4, so the special prime takes the largest subscript below 4
    assert ring.special_norm(vid) == 3


def test_adjoin_quotient_rejects_ineligible(base: Ring):
    with pytest.raises(IneligiblePairError):
        base.adjoin_quotient(base.gen(1), base.gen(2))
    with pytest.raises(IneligiblePairError):
        base.adjoin_quotient(base.gen(1) * base.gen(2), base.gen(1))
    with pytest.raises(IneligiblePairError):
        base.adjoin_quotient(base.gen(2), base.one())
    with pytest.raises(VariantError):
        base.special_norm(base.registry.x(Ordinal(1), 0))


def test_special_info(rational: Ring):
    n, d = rational.gen(2), rational.gen(1)
    vid = rational.adjoin_quotient(n, d)
    special = rational.special_prime(vid)
    expected = SpecialPrime(var=vid, n=n.num, d=d.num)
    assert rational.special_info(special) == expected
    assert rational.special_info(special.scale(-3)) == expected
    assert rational.special_info(rational.gen(3).num) is None
    with pytest.raises(ValueError):
        rational.special_info(rational.gen(3).num ** 2)


def test_divides(base: Ring):
    x1, x2 = base.gen(1), base.gen(2)
    assert base.divides(x1, x1**2 * x2)
    assert not base.divides(x2, x1)
    result = base.divide(x2, x1)
    special = base.element(base.special_prime(result.adjoined_var))
    assert base.norm(special) == 0
    assert base.divides(special, base.one())
    with pytest.raises(ZeroDivisionError):
        base.divides(base.zero(), x1)


def test_divide_general_branch(base: Ring):
    n, d = base.gen(2), base.gen(1)
    result = base.divide(n, d)
    assert result.branch == "general"
    assert result.remainder_norm == 0
    assert base.registry[result.adjoined_var].subs == ordinals("0", "1", "2")
    assert result.quotient * d + result.remainder == n


def test_divide_exact_and_small(base: Ring):
    x1, x2 = base.gen(1), base.gen(2)
    exact = base.divide(x1**2, x1)
    assert exact.branch == "exact"
    assert exact.quotient == x1 and exact.remainder.is_zero()
    assert exact.remainder_norm is None

    small = base.divide(x1, x2)
    assert small.branch == "small"
    assert small.quotient.is_zero() and small.remainder == x1
    assert small.remainder_norm == 1 and small.divisor_norm == 2
    with pytest.raises(ZeroDivisionError):
        base.divide(x1, base.zero())


def test_divide_splits_remainder_norm(base: Ring):
    g = base.gen("w")
    n = g * base.gen(5) * base.gen(3)
    d = g * (base.gen(4) + base.gen(1, 1))
    result = base.divide(n, d)
    assert result.branch == "general"
    assert result.quotient * d + result.remainder == n
    assert result.remainder_norm == nat_sum(result.special_norm, result.gcd_norm)
    assert result.gcd_norm == OMEGA
    assert cmp(result.remainder_norm, result.divisor_norm) is Ordering.LESS


def test_variant_extended_eligibility(variant: Ring):
    n = variant.gen_z() * variant.gen(1)
    d = variant.gen(5)
    assert cmp(variant.norm(n), variant.norm(d)) is Ordering.LESS
    small = variant.divide(n, d)
    assert small.branch == "small" and small.adjoined_var is None
    assert small.remainder == n
    vid = variant.adjoin_quotient(n, d)
    assert variant.special_norm(vid) == 1
    result = variant.divide(n * variant.gen(6), d)
    assert result.branch == "general"
    assert result.quotient * d + result.remainder == n * variant.gen(6)
    assert cmp(result.remainder_norm, result.divisor_norm) is Ordering.LESS


def test_euclid_gcd(base: Ring):
    x1, x2, x3 = base.gen(1), base.gen(2), base.gen(3)
    p = x1 * x2 + x3
    same = base.euclid_gcd(p, p)
    assert len(same.steps) == 1 and same.final_gcd == p

    trace = base.euclid_gcd(x1 * x2, x1)
    assert base.associates(trace.final_gcd, x1)

    descent = base.euclid_gcd(x3, x2)
    norms = descent.norms()
    assert norms[0] == 2
    assert all(cmp(a, b) is Ordering.GREATER for a, b in zip(norms, norms[1:]))
    assert base.is_unit(descent.final_gcd)


def test_factor_gcd_agrees_with_euclid(base: Ring):
    x1, x2, x3 = base.gen(1), base.gen(2), base.gen("w")
    a, b = x1 * x3 * (x2 + 1), x3 * x2**2
    trace = base.euclid_gcd(a, b)
    assert base.associates(trace.final_gcd, base.factor_gcd(a, b))
    assert base.associates(base.factor_gcd(a, b), x3)


def test_canonicalize(base: Ring, rational: Ring):
    x1, x2, x3 = base.gen(1), base.gen(2), base.gen(3)
    s = base.special_prime(base.divide(x2, x1).adjoined_var)
    r = base.element(s * x3.num, s)
    assert r.num == x3.num and r.den.is_one()
    assert base.canonicalize(r).num == r.num

    p = rational.gen(1).num
    scaled = rational.element(p * 2, rational.polys.const(2))
    assert scaled.num == p and scaled.den.is_one()
    with pytest.raises(IneligiblePairError):
        base.element(x1.num, x2.num)


def test_psi_monoid(variant: Ring, base: Ring):
    z = variant.gen_z()
    assert variant.psi_monoid(z**2) == parse("w*2")
    assert variant.psi_monoid(variant.scalar(3)) == 0
    assert variant.psi_monoid(z * variant.gen(1)) == parse("w + 1")
    with pytest.raises(VariantError):
        base.psi_monoid(base.gen(1))


def test_nonmult_witness():
    assert nonmult_witness(2) == (8, 27)
    assert nonmult_witness(1) == (1, 4)
    assert nonmult_witness(5) == (15625, 46656)
    with pytest.raises(ValueError):
        nonmult_witness(0)


def test_growth_gaps():
    assert lenstra_gap(1) == 2
    assert lenstra_gap(2) == 248
    assert lenstra_breaker(0) == 1
    assert lenstra_breaker(2) == 2
    assert superadditive_gap(1, 1) == 2
    assert all(lenstra_gap(ell) < lenstra_gap(ell + 1) for ell in range(1, 7))


def test_order_type_is_indecomposable(base: Ring):
    assert is_indecomposable(base.order_type())
