from fractions import Fraction
from math import comb

import mpmath
import pytest

import mplsym

mpmath.mp.dps = 40


def test_symbol_of_weight_two_function():
    s = mplsym.symbol("G(-1,1;x)")
    assert s.weight == 2
    assert mplsym.coefficients(s) == {
        ("1+x", "2"): 1,
        ("1-x", "2"): -1,
        ("1-x", "1+x"): 1,
    }


def test_symbol_with_explicit_alphabet():
    s = mplsym.symbol("Li2(x)", ["x", "1-x"])
    assert mplsym.coefficients(s) == {("1-x", "x"): Fraction(-1)}


def test_identities():
    assert mplsym.check_identity("G(a;x)*G(b;x)", "G(a,b;x)+G(b,a;x)")
    assert mplsym.check_identity("Li2(x)+Li2(1-x)+log(x)*log(1-x)")
    assert not mplsym.check_identity("Li2(x)", "Li2(-x)")


@pytest.mark.parametrize("n,z", [(2, "1/3"), (3, "-1/2"), (4, "9/10"), (2, "-3")])
def test_polylog_against_mpmath(n, z):
    ours = mpmath.mpf(mplsym.polylog(n, z))
    assert abs(ours - mpmath.polylog(n, mpmath.mpf(Fraction(z).numerator) / Fraction(z).denominator)) < 1e-35


def test_evaluate_hpl_against_mpmath():
    x = mpmath.mpf(1) / 3
    assert abs(mpmath.mpf(mplsym.evaluate("H(0,1;x)", {"x": Fraction(1, 3)})) - mpmath.polylog(2, x)) < 1e-35
    inner = lambda t: mpmath.log(1 + t) / (1 - t)
    quad = mpmath.quad(inner, [0, x])
    assert abs(mpmath.mpf(mplsym.evaluate("H(1,-1;x)", {"x": Fraction(1, 3)})) - quad) < 1e-30


def test_hpl_reduction():
    r = mplsym.hpl_reduce([0, 0, 1, 1])
    assert r["symbol_equal"]
    assert r["constants"] == "1/90*pi^4 + log(1-x)*zeta3 + 1/12*log(1-x)^2*pi^2"
    assert all(float(d) < 1e-25 for _, d in r["differences"])


def test_integrate_matches_worked_example():
    r = mplsym.integrate("G(-1,1;x)")
    assert r["residual"] == "0"
    assert r["expression"] == "-Li2((1+x)/2) - 1/2*ln2^2 + ln2*log(1+x)"


def test_dissection_counts_are_fuss_catalan():
    for sides in range(2, 7):
        m = sides - 1
        assert mplsym.count_dissections(sides) == comb(3 * m, m) // (2 * m + 1)


def test_table_of_arguments_is_closed_under_inversion():
    rows = {(s, a, b, g, d) for s, a, b, g, d, _, _ in mplsym.table2()}
    assert len(rows) == 39
    assert all((s, -a, -b, -g, -d) in rows for s, a, b, g, d in rows)


def test_colored_zeta_symbol():
    assert mplsym.cmzv_symbol([1, 1, 1, 1], [-1, -1, 1, 1]).text == "[2 | 2 | 2 | 2]"
    assert mplsym.cmzv_symbol([2, 1], [1, 1]).text == "0"


@pytest.mark.parametrize("q", [Fraction(1, 3), Fraction(-37, 1440), Fraction(7, 4)])
def test_reconstruct_against_fraction(q):
    value = mpmath.nstr(mpmath.mpf(q.numerator) / q.denominator, 40)
    assert Fraction(mplsym.reconstruct(value, 65536)) == q.limit_denominator(65536)


def test_errors_are_raised():
    with pytest.raises(mplsym.MplsymError, match="ParseError"):
        mplsym.symbol("G(1,;x)")
    with pytest.raises(mplsym.MplsymError, match="PreconditionViolated"):
        mplsym.hpl_reduce([0, 2])
