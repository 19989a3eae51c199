from decimal import Decimal

from borwein_pi.machin import arctan_inverse, machin_pi, machin_pi_scaled
from borwein_pi.numeric import PrecisionContext
from borwein_pi.report import compare_digits, pi_digits
from borwein_pi.series import identity_product


def test_ten_digits():
    assert str(machin_pi(PrecisionContext(10, 0))) == "3.141592654"


def test_bracket():
    value = machin_pi(PrecisionContext(20, 0))
    assert Decimal("3.14159265358979") < value < Decimal("3.14159265358980")


def test_arctan_fifth():
    # arctan(1/5) = 0.19739555984988075837004976519479..., from mpmath
    assert arctan_inverse(5, 10**30) // 10 == 19739555984988075837004976519


def test_matches_independent_reference(pi_reference):
    value = machin_pi(PrecisionContext(1100, 0))
    assert compare_digits(pi_digits(value, 1090), pi_reference) == 1090


def test_scaled_integer():
    assert machin_pi_scaled(30) // 10**10 == 314159265358979323846


def test_reciprocal_matches_identity2_product():
    ctx = PrecisionContext(50, 0)
    with ctx.local():
        assert abs(1 / machin_pi(ctx) - identity_product(2, ctx)) <= Decimal("1e-48")
