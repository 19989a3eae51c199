from decimal import Decimal

import pytest

from borwein_pi.constants import (
    IDENTITY_IDS,
    consistency_check,
    identity_set,
    load_sets,
)
from borwein_pi.errors import DomainError, InconsistentInitialValues
from borwein_pi.iterations import quad_descend
from borwein_pi.numeric import PrecisionContext
from borwein_pi.radicals import evaluate


def value(identity, field, digits=30):
    return evaluate(getattr(identity_set(identity), field), PrecisionContext(digits, 0))


def test_identity1_d0():
    assert str(value(1, "d0", 30)).startswith("0.1715728752538099")


def test_identity2_a0_is_zero():
    assert value(2, "a0") == 0


def test_identity5_d0():
    # 0.91017972112445468..., shown rounded to 16 places
    assert abs(value(5, "d0") - Decimal("0.9101797211244547")) < Decimal("5e-17")


def test_printed_values():
    # decimal forms of the radicals, from mpmath
    expected = {
        (1, "b0"): "3.882250993908562342481058762", (1, "r0"): "0.3431457505076198047932451031",
        (2, "d0"): "0.7071067811865475244008443621", (3, "c0"): "2.828427124746190097603377448",
        (4, "d0"): "0.2588190451025207623488988376", (4, "r0"): "0.3660254037844386467637231708",
        (5, "b0"): "0.2426406871192851464050661726", (5, "a0"): "-0.08578643762690495119831127579",
    }
    for (identity, field), text in expected.items():
        assert abs(value(identity, field) - Decimal(text)) < Decimal("1e-27"), (identity, field)


def test_unknown_identity():
    for bad in (0, 6, 9, "1", None):
        with pytest.raises(DomainError, match="1..5"):
            identity_set(bad)


@pytest.mark.parametrize("identity", IDENTITY_IDS)
@pytest.mark.parametrize("digits", [50, 200, 1000])
def test_consistency_all_sets(identity, digits):
    report = consistency_check(identity_set(identity), PrecisionContext(digits, 0))
    assert report.ok
    assert report.tolerance == Decimal(1).scaleb(4 - digits)


@pytest.mark.parametrize("identity", IDENTITY_IDS)
def test_domain_and_reality(identity):
    v = identity_set(identity).evaluate(PrecisionContext(50, 0))
    assert 0 < v["d0"] < 1
    assert v["r0"] > 0


def test_identity2_descends_to_identity1():
    ctx = PrecisionContext(50, 0)
    d = quad_descend(value(2, "d0", 50), ctx)
    assert abs(d - evaluate(identity_set(1).d0, ctx)) <= Decimal("1e-46")


def test_s0_t0_derived():
    ivs = identity_set(1)
    ctx = PrecisionContext(30, 0)
    assert abs(evaluate(ivs.s0, ctx) - (evaluate(ivs.d0, ctx).sqrt())) < Decimal("1e-29")
    assert ivs.t0 == ivs.r0


GOOD = """
[half-chain]
d0 = 1/sqrt(2)
b0 = 1
a0 = 0
c0 = 2
r0 = 1/2

[quarter-chain]
d0 = 3 - 2*sqrt(2)
b0 = 48*sqrt(2) - 64
a0 = 20*sqrt(2) - 28
c0 = 4
r0 = 6 - 4*sqrt(2)
"""


def test_load_sets(tmp_path):
    path = tmp_path / "sets.ini"
    path.write_text(GOOD)
    sets = load_sets(path)
    assert [s.name for s in sets] == ["half-chain", "quarter-chain"]
    assert sets[0].identity_id is None
    ctx = PrecisionContext(40, 0)
    assert evaluate(sets[1].d0, ctx) == evaluate(identity_set(1).d0, ctx)


def test_load_sets_rejects_inconsistent(tmp_path):
    path = tmp_path / "sets.ini"
    path.write_text(GOOD.replace("c0 = 2\n", "c0 = 3\n"))
    with pytest.raises(InconsistentInitialValues):
        load_sets(path)


def test_load_sets_rejects_missing_field(tmp_path):
    path = tmp_path / "sets.ini"
    path.write_text("[x]\nd0 = 1/2\n")
    with pytest.raises(ValueError, match="missing"):
        load_sets(path)


def test_load_sets_rejects_degenerate_d0(tmp_path):
    path = tmp_path / "sets.ini"
    path.write_text("[x]\nd0 = 1\nb0 = 1\na0 = 0\nc0 = 2\nr0 = 1/2\n")
    with pytest.raises(DomainError):
        load_sets(path)
