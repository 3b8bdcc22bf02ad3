"""Invariance of stratum ideals under Dunkl operators.

Two independent routes are provided.  The linear criterion computes, for
every irreducible component of the root lines vanishing on the stratum, the
weighted Coxeter number and demands it equal one.  The direct route builds
a generic element of the vanishing ideal of the whole orbit and applies the
operators, testing ideal membership of the result; it is exponentially more
expensive but makes no use of the criterion.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .fields import render_scalar
from .linalg import rref, vec_is_zero
from .polynomials import (
    Polynomial,
    is_divisible_by_linear,
    monomials,
    render_polynomial,
)
from .rootsystems import (
    Multiplicities,
    RootSystem,
    Stratum,
    generalized_coxeter_number,
)
from .dunkl import DunklContext

DIRECT_ORBIT_LIMIT = 24


def invariance_conditions(stratum: Stratum) -> tuple[Multiplicities, list[tuple[tuple[int, ...], Polynomial]]]:
    """Per-component weighted Coxeter numbers, symbolically in the orbits."""
    mults = Multiplicities.symbolic(stratum.rs)
    out = []
    for comp in stratum.components():
        h = generalized_coxeter_number(stratum.rs, mults, comp)
        out.append((comp, h))
    return mults, out


def condition_equations(stratum: Stratum) -> list[str]:
    mults, conds = invariance_conditions(stratum)
    seen = []
    for _, h in conds:
        text = render_polynomial(h, names=mults.params) + " = 1"
        if text not in seen:
            seen.append(text)
    return sorted(seen)


def criterion_invariant(stratum: Stratum, mults: Multiplicities) -> bool:
    """Each component's weighted Coxeter number must equal one."""
    if not mults.is_numeric:
        raise ValueError("criterion evaluation needs numeric multiplicities")
    one = stratum.rs.field.one()
    for comp in stratum.components():
        h = generalized_coxeter_number(stratum.rs, mults, comp)
        if h.constant_term() != one:
            return False
    return True


def solve_multiplicities(stratum: Stratum) -> dict:
    """Solve the linear invariance conditions for the orbit multiplicities.

    Returns the deduplicated equations plus either the unique solution, a
    parametrized family (earlier orbits pivot on later free ones), or a
    report that the system is inconsistent or empty.
    """
    rs = stratum.rs
    field = rs.field
    mults, conds = invariance_conditions(stratum)
    names = mults.params
    nparams = len(names)
    result: dict = {"equations": condition_equations(stratum)}
    if not conds:
        result.update(status="unconstrained", values={}, free=list(names))
        return result
    rows = []
    for _, h in conds:
        row = []
        for j in range(nparams):
            exps = tuple(1 if t == j else 0 for t in range(nparams))
            row.append(h.terms.get(exps, field.zero()))
        # affine part moves to the right hand side
        row.append(field.one() - h.constant_term())
        rows.append(tuple(row))
    reduced, pivots = rref(tuple(rows))
    if nparams in pivots:
        result.update(status="inconsistent", values={}, free=[])
        return result
    free = [j for j in range(nparams) if j not in pivots]
    values = {}
    for r, row in enumerate(reduced):
        j = pivots[r]
        expr = Polynomial.constant(field, nparams, row[-1])
        for k in free:
            if not row[k].is_zero():
                expr = expr - Polynomial.variable(field, nparams, k) * row[k]
        values[names[j]] = render_polynomial(expr, names=names)
    if free:
        result.update(status="family", values=values, free=[names[k] for k in free])
    else:
        result.update(status="unique", values=values, free=[])
    return result


# ---------------------------------------------------------------------------
# direct route


def _random_annihilator_form(rng: random.Random, rows, field, avoid_basis=None):
    """Small random combination of the annihilator rows of a subspace."""
    n = len(rows[0])
    for _ in range(64):
        coeffs = [field.element(rng.randint(-3, 3)) for _ in rows]
        form = tuple(
            sum((c * r[j] for c, r in zip(coeffs, rows)), field.zero())
            for j in range(n)
        )
        if vec_is_zero(form):
            continue
        if avoid_basis is not None:
            # keep the form nonzero somewhere on the reference subspace
            if all(
                sum((form[j] * b[j] for j in range(n)), field.zero()).is_zero()
                for b in avoid_basis
            ):
                continue
        return form
    raise RuntimeError("could not draw a usable linear form")


def direct_invariance_violations(
    stratum: Stratum,
    mults: Multiplicities,
    seed: int = 0,
    orbit_limit: int = DIRECT_ORBIT_LIMIT,
) -> list:
    """Applies the operators to a generic ideal element, tests membership.

    The witness vanishes on every subspace of the orbit: one pseudo-random
    annihilator form per orbit member.  Raises OrbitCapExceeded when the
    orbit is larger than orbit_limit.
    """
    rs = stratum.rs
    field = rs.field
    orbit = stratum.orbit(cap=orbit_limit)
    members = [orbit[k] for k in sorted(orbit)]
    rng = random.Random(seed)
    base = stratum.subspace
    f = Polynomial.constant(field, rs.dim, field.one())
    for member in members:
        avoid = None if member.key == base.key else base.basis
        form = _random_annihilator_form(rng, member.annihilator, field, avoid_basis=avoid)
        f = f * Polynomial.linear_form(field, form)
    ctx = DunklContext(rs, mults)
    bad = []
    for v in range(rs.dim):
        g = ctx.apply(v, f)
        if g.is_zero():
            continue
        for member in members:
            if not g.restrict_to(member.basis).is_zero():
                bad.append((v, member.key))
    return bad


def is_invariant_direct(stratum, mults, seed: int = 0, orbit_limit: int = DIRECT_ORBIT_LIMIT) -> bool:
    return not direct_invariance_violations(stratum, mults, seed=seed, orbit_limit=orbit_limit)


# ---------------------------------------------------------------------------
# higher-order vanishing


def order_vanishing_violations(
    rs: RootSystem,
    line_indices,
    order: int,
    mults: Multiplicities,
    max_degree: int = 2,
) -> list:
    """Ideal of functions divisible by each selected root form to odd order.

    Checks that the operators keep test elements inside the ideal; test
    elements are the common power product times all monomials of low degree.
    """
    if order < 1 or order % 2 == 0:
        raise ValueError("the vanishing order must be an odd positive integer")
    field = rs.field
    forms = [rs.lines[i] for i in line_indices]
    base = Polynomial.constant(field, rs.dim, field.one())
    for alpha in forms:
        base = base * Polynomial.linear_form(field, alpha) ** order
    ctx = DunklContext(rs, mults)
    bad = []
    for exps in monomials(rs.dim, max_degree):
        f = base * Polynomial.monomial(field, exps, field.one())
        for v in range(rs.dim):
            g = ctx.apply(v, f)
            if g.is_zero():
                continue
            if not all(is_divisible_by_linear(g, alpha, power=order) for alpha in forms):
                bad.append((exps, v))
                break
    return bad
