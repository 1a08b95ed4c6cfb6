from fractions import Fraction

import pytest

from tiling.diophantine import approx_bound_check, cf_expand, exhaustive_bound_check
from tiling.errors import NotExpanded
from tiling.exactnum import QuadScalar, as_scalar


def test_sqrt3_expansion():
    cf = cf_expand("sqrt(3)", 6)
    assert cf.partial_quotients == [1, 1, 2, 1, 2, 1]
    assert cf.convergent_strings() == ["1/1", "2/1", "5/3", "7/4", "19/11", "26/15"]
    assert cf.period == (1, 2)
    assert cf.M == [0, 0, 2, 3, 10, 14]
    assert not cf.terminated


def test_golden_ratio_period():
    cf = cf_expand("(1+sqrt(5))/2", 8)
    assert cf.partial_quotients == [1] * 8
    assert cf.denominators == [1, 1, 2, 3, 5, 8, 13, 21]
    assert cf.period == (0, 1)


def test_rational_terminates():
    cf = cf_expand("7/4", 10)
    assert cf.partial_quotients == [1, 1, 3]
    assert cf.convergents[-1] == Fraction(7, 4)
    assert cf.terminated
    assert cf.period is None


@pytest.mark.parametrize("beta", ["sqrt(2)", "sqrt(7)", "(1+sqrt(13))/3"])
def test_convergent_determinant_identity(beta):
    cf = cf_expand(beta, 10)
    p, q = cf.numerators, cf.denominators
    for k in range(1, len(p)):
        assert p[k] * q[k - 1] - p[k - 1] * q[k] == (-1) ** (k - 1)


def test_convergents_alternate_around_beta():
    cf = cf_expand("sqrt(2)", 8)
    root2 = cf.beta
    for k, c in enumerate(cf.convergents):
        assert (c < root2) == (k % 2 == 0)


def test_count_must_be_positive():
    with pytest.raises(ValueError):
        cf_expand("sqrt(2)", 0)


def test_bound_check_passes_for_sqrt3():
    report = approx_bound_check("sqrt(3)", 4, "1/10", "1/2")
    assert report.M == 10
    assert report.passed
    assert report.witness == "7/4"
    assert report.min_gap == "7-4*sqrt(3)"
    assert report.margin_estimate > 0
    assert exhaustive_bound_check("sqrt(3)", 4, "1/10", "1/2")


def test_bound_check_fails_for_large_constant():
    report = approx_bound_check("sqrt(3)", 4, "3", "1/2")
    assert not report.passed
    assert report.witness == "7/4"
    assert as_scalar(report.power_margin).sign() < 0
    assert report.margin_estimate < 0
    assert not exhaustive_bound_check("sqrt(3)", 4, "3", "1/2")


def test_exact_margin_uses_the_convergent_bound():
    # (10 * (7 - 4*sqrt(3)))**2 * 10 - 1
    report = approx_bound_check("sqrt(3)", 4, "1", "1/2")
    assert as_scalar(report.power_margin) == as_scalar("96999-56000*sqrt(3)")


def test_fixed_constant_passes_eventually():
    cf = cf_expand("sqrt(3)", 12)
    passes = [approx_bound_check("sqrt(3)", n, "2", "1/2", expansion=cf).passed for n in range(2, 12)]
    assert passes == [False, False] + [True] * 8


@pytest.mark.parametrize("beta, n", [("sqrt(2)", 5), ("sqrt(3)", 5), ("(1+sqrt(5))/2", 7)])
def test_fast_check_agrees_with_exhaustive(beta, n):
    for c in ("1/10", "1/3"):
        fast = approx_bound_check(beta, n, c, "1/2")
        assert fast.passed == exhaustive_bound_check(beta, n, c, "1/2")


def test_trivial_bound_when_M_is_zero():
    report = approx_bound_check("sqrt(3)", 0, "1/10", "1/2")
    assert report.M == 0
    assert report.passed
    assert report.witness is None


def test_unexpanded_convergent():
    with pytest.raises(NotExpanded):
        approx_bound_check("sqrt(3)", 5, "1/10", "1/2", expansion=cf_expand("sqrt(3)", 3))


@pytest.mark.parametrize("c, eps", [("0", "1/2"), ("1/10", "0"), ("1/10", "1/128")])
def test_bad_parameters(c, eps):
    with pytest.raises(ValueError):
        approx_bound_check("sqrt(3)", 3, c, eps)


@pytest.mark.parametrize("beta", ["sqrt(3)", "sqrt(2)", "(1+sqrt(5))/2"])
def test_convergent_error_is_squeezed(beta):
    cf = cf_expand(beta, 13)
    q = cf.denominators
    for k in range(12):
        error = abs(cf.beta - QuadScalar.rational(cf.convergents[k]))
        assert QuadScalar.rational(Fraction(1, q[k] * (q[k + 1] + q[k]))) <= error
        assert error <= QuadScalar.rational(Fraction(1, q[k] * q[k + 1]))


@pytest.mark.slow
@pytest.mark.parametrize("beta", ["sqrt(3)", "sqrt(2)", "(1+sqrt(5))/2"])
def test_fast_check_agrees_with_exhaustive_up_to_depth_12(beta):
    cf = cf_expand(beta, 12)
    depths = [n for n in range(12) if cf.M[n] <= 200]
    assert depths
    for n in depths:
        for c in ("1/10", "1", "2"):
            fast = approx_bound_check(beta, n, c, "1/2", expansion=cf)
            assert fast.passed == exhaustive_bound_check(beta, n, c, "1/2"), (n, c)
