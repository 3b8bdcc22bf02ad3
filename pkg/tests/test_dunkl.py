from fractions import Fraction

import pytest

from dunklcm.dunkl import DeformedContext, DunklContext
from dunklcm.polynomials import Polynomial, monomials
from dunklcm.rootsystems import Multiplicities, root_system


def numeric_ctx(fam, rank_=None, m=None, mapping=Fraction(1, 2), deformed=False):
    rs = root_system(fam, rank_, m=m)
    mults = Multiplicities.numeric(rs, mapping)
    return DeformedContext(rs, mults) if deformed else DunklContext(rs, mults)


def variables(ctx):
    return [Polynomial.variable(ctx.field, ctx.nvars, v) for v in range(ctx.nx)]


def test_kills_constants():
    ctx = numeric_ctx("A", 3)
    one = Polynomial.constant(ctx.field, ctx.nvars, 1)
    for v in range(ctx.nx):
        assert ctx.apply(v, one).is_zero()


def test_degree_one_values():
    # T_0 x_0 = 1 - 2c and T_0 x_1 = c on three coordinates with one orbit
    c = Fraction(2, 7)
    ctx = numeric_ctx("A", 2, mapping=c)
    x = variables(ctx)
    assert (ctx.apply(0, x[0]) - ctx.constant(1 - 2 * c)).is_zero()
    assert (ctx.apply(0, x[1]) - ctx.constant(c)).is_zero()
    assert (ctx.apply(0, x[2]) - ctx.constant(c)).is_zero()


def test_linear_in_direction():
    ctx = numeric_ctx("B", 2, mapping={"c1": Fraction(1, 3), "c2": Fraction(2, 5)})
    x = variables(ctx)
    f = x[0] ** 2 * x[1] + x[1] ** 3
    xi = (ctx.field.element(2), ctx.field.element(-3))
    direct = ctx.apply(xi, f)
    split = ctx.apply(0, f) * 2 - ctx.apply(1, f) * 3
    assert (direct - split).is_zero()


def test_coordinate_commutator_closed_form():
    # [T_i, x_i] f = f - c * sum of the transposed images of f
    c = Fraction(3, 5)
    ctx = numeric_ctx("A", 3, mapping=c)
    rs = ctx.rs
    x = variables(ctx)
    f = x[0] ** 2 * x[2] - x[1] * x[3]
    for i in range(ctx.nx):
        lhs = ctx.apply(i, x[i] * f) - x[i] * ctx.apply(i, f)
        rhs = f
        for line, alpha in enumerate(rs.lines):
            if not alpha[i].is_zero():
                rhs = rhs - ctx.reflect_poly(line, f) * c
        assert (lhs - rhs).is_zero()


@pytest.mark.parametrize(
    "fam,rank_,mapping",
    [
        ("A", 3, Fraction(4, 7)),
        ("B", 3, {"c1": Fraction(1, 2), "c2": Fraction(-2, 3)}),
        ("G2", None, {"c1": Fraction(5, 3), "c2": Fraction(1, 4)}),
        ("I2", None, Fraction(3, 8)),
    ],
)
def test_commutativity_small(fam, rank_, mapping):
    m = 5 if fam == "I2" else None
    ctx = numeric_ctx(fam, rank_, m=m, mapping=mapping)
    assert ctx.commutativity_violations(3) == []


def test_equivariance():
    ctx = numeric_ctx("H3", mapping=Fraction(2, 9))
    assert ctx.equivariance_violations(3) == []


def test_laplacian_of_invariant_quadric():
    # sum of squares is fixed by every reflection, so only the plain
    # Laplacian survives
    ctx = numeric_ctx("D", 4, mapping=Fraction(1, 6))
    x = variables(ctx)
    q = sum((xi * xi for xi in x), Polynomial.zero(ctx.field, ctx.nvars))
    lap = ctx.laplacian(q)
    lines = ctx.rs.lines
    expected = 2 * ctx.nx - 4 * Fraction(1, 6) * len(lines)
    assert (lap - ctx.constant(expected)).is_zero()


# ---------------------------------------------------------------------------
# confined operators


def test_raising_lowering_factor_through_omega():
    ctx = numeric_ctx("A", 2, mapping=Fraction(1, 2), deformed=True)
    x = variables(ctx)
    f = x[0] * x[1]
    # a+ a- = a- a+ - 2 omega on each coordinate, up to the reflection part
    h = ctx.oscillator(0, f)
    alt = ctx.lowering(0, ctx.raising(0, f))
    diff = alt - h
    # the gap is linear in omega with an f-dependent polynomial coefficient
    assert not diff.is_zero()
    assert diff.degree() == f.degree() + 1


@pytest.mark.parametrize(
    "fam,rank_,mapping,k,l",
    [
        ("A", 2, Fraction(1, 2), 1, 2),
        ("A", 3, Fraction(1, 3), 1, 2),
        ("B", 2, {"c1": Fraction(1, 2), "c2": Fraction(1, 4)}, 2, 1),
        ("D", 3, Fraction(2, 5), 1, 2),
    ],
)
def test_confined_integrability(fam, rank_, mapping, k, l):
    ctx = numeric_ctx(fam, rank_, mapping=mapping, deformed=True)
    assert ctx.integrability_violations(k, l, 2) == []


def test_pair_commutator_closed_form():
    ctx = numeric_ctx("B", 2, mapping={"c1": Fraction(2, 3), "c2": Fraction(1, 5)}, deformed=True)
    for exps in monomials(2, 3):
        f = Polynomial.monomial(ctx.field, exps + (0,), ctx.field.one())
        assert ctx.pair_commutator_defect(0, 1, f).is_zero()


def test_pair_commutator_rejects_exceptional():
    ctx = numeric_ctx("G2", mapping={"c1": 1, "c2": 1}, deformed=True)
    f = Polynomial.variable(ctx.field, ctx.nvars, 0)
    with pytest.raises(ValueError):
        ctx.pair_commutator_defect(0, 1, f)
