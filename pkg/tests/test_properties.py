import random

import pytest

from ordeuclid.eucworld import Ring, RingConfig
from ordeuclid.fields import FieldConfig
from ordeuclid.ordinals import Ordinal, Ordering, cmp, nat_sum
from ordeuclid.polys import PolyRing
from ordeuclid.properties import (
    SUITES,
    SuiteReport,
    brute_irreducible,
    random_element,
    random_ordinal,
    run_suites,
    shared_factor_pair,
)

SEED = 1729


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes_at_small_scale(name: str):
    (report,) = run_suites([name], SEED, scale=0.05)
    assert report.name == name
    assert report.checked > 0
    assert report.violations == []


def test_run_suites_rejects_unknown_names():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suites(["hessenberg", "nope"], SEED)


def test_suites_are_seeded():
    first = SUITES["hessenberg"](7, 0.02)
    second = SUITES["hessenberg"](7, 0.02)
    assert first == second


def test_report_records_failures_lazily():
    report = SuiteReport(name="demo")
    calls = []

    def detail() -> str:
        calls.append(1)
        return "broken"

    report.expect(True, detail)
    report.expect(False, detail)
    report.expect(False, "plain")
    assert report.checked == 3
    assert report.violations == ["broken", "plain"]
    assert len(calls) == 1


def test_brute_irreducible():
    ring = PolyRing(FieldConfig())
    x = ring.var(ring.registry.x(Ordinal(1), 0))
    assert brute_irreducible(x**2 + x + 1) is True
    assert brute_irreducible(x**2 + 1) is False
    assert brute_irreducible(x**3 + x + 1) is True


def test_random_values():
    rng = random.Random(0)
    assert all(random_ordinal(rng) < Ordinal.from_terms([(Ordinal(5), 1)]) for _ in range(50))
    ring = Ring(RingConfig(alpha=Ordinal(2)))
    assert not any(random_element(rng, ring).is_zero() for _ in range(20))


def test_shared_factor_pairs_carry_the_factor_into_the_remainder():
    rng = random.Random(11)
    ring = Ring(RingConfig(field=FieldConfig(kind="finite", q=2), alpha=Ordinal(2)))
    for _ in range(8):
        g, a, b = shared_factor_pair(rng, ring)
        assert not ring.norm(g).is_zero()
        result = ring.divide(g * a, g * b)
        assert result.branch == "general"
        assert cmp(result.gcd_norm, ring.norm(g)) is not Ordering.LESS
        assert result.remainder_norm == nat_sum(result.special_norm, result.gcd_norm)
