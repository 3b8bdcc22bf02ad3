"""Restriction of the Dunkl Laplacian to a stratum.

Projecting the root lines orthogonally onto the subspace and adding up the
multiplicities of lines with a common image yields the vector configuration
of the restricted operator.  The identities verified here are exact
polynomial statements: every rational-function equality is cleared of
denominators first.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .fields import Field, FieldElement, render_scalar
from .linalg import Matrix, Vector, dot, gram, invert, mat_vec, rank, solve, vec_is_zero
from .polynomials import Polynomial, render_polynomial
from .rootsystems import (
    Multiplicities,
    RootSystem,
    Stratum,
    parabolic_stratum,
    root_system,
)
from .dunkl import DeformedContext, DunklContext
from .invariance import solve_multiplicities


class Configuration:
    """Vectors with multiplicities on a subspace, one entry per line."""

    def __init__(self, field: Field, basis: tuple[Vector, ...], vectors, mults, params: tuple[str, ...]):
        self.field = field
        self.basis = basis
        self.vectors = tuple(vectors)
        self.mults = tuple(mults)
        self.params = params

    @property
    def size(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def span_dim(self) -> int:
        return rank(self.vectors) if self.vectors else 0

    @property
    def is_numeric(self) -> bool:
        return not self.params

    def scalar_mults(self) -> tuple[FieldElement, ...]:
        if not self.is_numeric:
            raise ValueError("numeric configuration required")
        return tuple(m.constant_term() for m in self.mults)

    def mult_multiset(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for m in self.mults:
            text = render_polynomial(m, names=self.params or None)
            out[text] = out.get(text, 0) + 1
        return out

    def fingerprint(self) -> tuple:
        """Invariant of the configuration up to orthogonal maps and scalings."""
        ms = self.scalar_mults()
        mult_part = tuple(sorted(m.sort_key() for m in ms))
        pair_part = []
        for i in range(self.size):
            u, mu = self.vectors[i], ms[i]
            for j in range(i + 1, self.size):
                v, mv = self.vectors[j], ms[j]
                c2 = (dot(u, v) ** 2) / (dot(u, u) * dot(v, v))
                pair = tuple(sorted((mu.sort_key(), mv.sort_key())))
                pair_part.append((pair, c2.sort_key()))
        return (self.span_dim(), self.size, mult_part, tuple(sorted(pair_part)))

    def radial_text(self) -> str:
        names = tuple(f"x{i+1}" for i in range(len(self.vectors[0]) if self.vectors else 0))
        parts = ["Delta_pi"]
        for v, m in zip(self.vectors, self.mults):
            form = render_polynomial(
                Polynomial.linear_form(self.field, v), names=names
            )
            mult = render_polynomial(m, names=self.params or None)
            parts.append(f"- 2*({mult})/({form}) d_({form})")
        return " ".join(parts)

    def potential_text(self) -> str:
        names = tuple(f"x{i+1}" for i in range(len(self.vectors[0]) if self.vectors else 0))
        parts = ["Delta"]
        for v, m in zip(self.vectors, self.mults):
            form = render_polynomial(
                Polynomial.linear_form(self.field, v), names=names
            )
            mult = render_polynomial(m, names=self.params or None)
            norm = render_scalar(dot(v, v))
            parts.append(f"- ({mult})*({mult}+1)*({norm})/({form})^2")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "span_dim": self.span_dim(),
            "size": self.size,
            "vectors": [[render_scalar(x) for x in v] for v in self.vectors],
            "multiplicities": [
                render_polynomial(m, names=self.params or None) for m in self.mults
            ],
            "multiplicity_multiset": self.mult_multiset(),
        }


def _project_onto(basis: tuple[Vector, ...], gram_inv: Matrix, v: Vector) -> Vector:
    field = v[0].field
    rhs = tuple(dot(b, v) for b in basis)
    coeffs = mat_vec(gram_inv, rhs)
    n = len(v)
    out = [field.zero()] * n
    for c, b in zip(coeffs, basis):
        if c.is_zero():
            continue
        for j in range(n):
            out[j] = out[j] + c * b[j]
    return tuple(out)


def _monic(v: Vector) -> Vector:
    for x in v:
        if not x.is_zero():
            inv = x.inverse()
            return tuple(inv * y for y in v)
    return v


def restricted_configuration(stratum: Stratum, mults: Multiplicities) -> Configuration:
    """Orthogonal projections of the root lines, grouped and weighted."""
    rs = stratum.rs
    field = rs.field
    basis = stratum.subspace.basis
    if not basis:
        return Configuration(field, basis, (), (), mults.params)
    ginv = invert(gram(basis), field)
    groups: dict[tuple, tuple[Vector, Polynomial]] = {}
    order: list[tuple] = []
    for i, alpha in enumerate(rs.lines):
        proj = _project_onto(basis, ginv, alpha)
        if vec_is_zero(proj):
            continue
        rep = _monic(proj)
        key = tuple(x.sort_key() for x in rep)
        c = mults.line_value(i)
        if key in groups:
            v, m = groups[key]
            groups[key] = (v, m + c)
        else:
            groups[key] = (rep, c)
            order.append(key)
    vectors = [groups[k][0] for k in order]
    weights = [groups[k][1] for k in order]
    return Configuration(field, basis, vectors, weights, mults.params)


def conservation_defect(stratum: Stratum, mults: Multiplicities) -> Polynomial:
    """Total projected multiplicity minus the sum over non-vanishing lines."""
    rs = stratum.rs
    config = restricted_configuration(stratum, mults)
    total = Polynomial.zero(rs.field, len(mults.params))
    for m in config.mults:
        total = total + m
    basis = stratum.subspace.basis
    expected = Polynomial.zero(rs.field, len(mults.params))
    for i, alpha in enumerate(rs.lines):
        if all(dot(alpha, b).is_zero() for b in basis):
            continue
        expected = expected + mults.line_value(i)
    return total - expected


# ---------------------------------------------------------------------------
# identity checks


def _partial_products(forms: list[Polynomial]) -> tuple[Polynomial, list[Polynomial]]:
    """Product of all forms and, per index, the product of the others."""
    n = len(forms)
    field = forms[0].field
    nvars = forms[0].nvars
    one = Polynomial.constant(field, nvars, field.one())
    prefix = [one]
    for f in forms:
        prefix.append(prefix[-1] * f)
    suffix = [one] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * forms[i]
    total = prefix[n]
    others = [prefix[i] * suffix[i + 1] for i in range(n)]
    return total, others


def gauge_defects(stratum: Stratum, mults: Multiplicities) -> list[int]:
    """Residue cancellation on every projected line, at numeric weights.

    For each configuration vector u the weighted sum of (u,w)/(w,x) over the
    other vectors must vanish identically on the part of the stratum where
    (u,x) = 0.  Returns the indices of vectors where it does not.
    """
    if not mults.is_numeric:
        raise ValueError("numeric multiplicities required")
    rs = stratum.rs
    field = rs.field
    config = restricted_configuration(stratum, mults)
    ms = config.scalar_mults()
    from .rootsystems import Subspace

    bad = []
    for i, u in enumerate(config.vectors):
        slice_rows = list(stratum.subspace.annihilator) + [u]
        sl = Subspace(field, rs.dim, slice_rows)
        sbasis = sl.basis
        if not sbasis:
            continue
        nslice = len(sbasis)
        terms = []
        for j, w in enumerate(config.vectors):
            if j == i:
                continue
            coeff = dot(u, w) * ms[j]
            if coeff.is_zero():
                continue
            row = tuple(dot(w, b) for b in sbasis)
            if vec_is_zero(row):
                # w projects to the u-line itself; excluded from the sum
                continue
            terms.append((coeff, Polynomial.linear_form(field, row)))
        if not terms:
            continue
        _, others = _partial_products([f for _, f in terms])
        acc = Polynomial.zero(field, nslice)
        for (coeff, _), rest in zip(terms, others):
            acc = acc + rest * coeff
        if not acc.is_zero():
            bad.append(i)
    return bad


def invariant_power_sum(rs: RootSystem, k: int, nvars: int | None = None) -> Polynomial:
    """Sum of (alpha, x)^k over the full root set, for even k."""
    if k % 2:
        raise ValueError("only even exponents give a sign-free root sum")
    field = rs.field
    if nvars is None:
        nvars = rs.dim
    out = Polynomial.zero(field, nvars)
    for alpha in rs.lines:
        coeffs = tuple(alpha) + (field.zero(),) * (nvars - rs.dim)
        out = out + Polynomial.linear_form(field, coeffs) ** k * 2
    return out


def _check_invariant(rs: RootSystem, ctx: DunklContext, f: Polynomial) -> None:
    for line in range(len(rs.simple)):
        idx = rs.line_index(rs.simple[line])
        if ctx.reflect_poly(idx, f) != f:
            raise ValueError("test polynomial is not invariant under the group")


def restriction_defects(
    stratum: Stratum,
    mults: Multiplicities,
    degrees=(2, 4, 6),
    deformed: bool = False,
) -> list[int]:
    """Compares the restricted operator with the projected radial form.

    Both sides act on invariant root power sums; the equality is cleared of
    denominators by the product of the configuration forms.  For the
    deformed check the confinement variable rides along and the exact
    additive constant is part of the identity.  Returns degrees that fail.
    """
    if not mults.is_numeric:
        raise ValueError("numeric multiplicities required")
    rs = stratum.rs
    field = rs.field
    basis = stratum.subspace.basis
    r = len(basis)
    if r == 0:
        return []
    config = restricted_configuration(stratum, mults)
    ms = config.scalar_mults()
    gmat = gram(basis)
    ginv = invert(gmat, field)

    extra = 1 if deformed else 0
    ctx = DeformedContext(rs, mults) if deformed else DunklContext(rs, mults, extra_vars=0)
    nt = r + extra
    # parametrization of the stratum, with the confinement variable riding along
    ext_basis = [tuple(b) + (field.zero(),) * extra for b in basis]
    if deformed:
        ext_basis.append((field.zero(),) * rs.dim + (field.one(),))
    ext_basis = tuple(ext_basis)

    forms = []
    dirs = []
    for v in config.vectors:
        row = tuple(dot(v, b) for b in basis) + (field.zero(),) * extra
        forms.append(Polynomial.linear_form(field, row))
        coeffs = mat_vec(ginv, tuple(dot(b, v) for b in basis))
        dirs.append(coeffs)
    if forms:
        denom, others = _partial_products(forms)
    else:
        denom = Polynomial.constant(field, nt, field.one())
        others = []

    total_c = field.zero()
    for i in range(len(rs.lines)):
        total_c = total_c + mults.line_scalar(i)

    bad = []
    for k in degrees:
        f = invariant_power_sum(rs, k, nvars=ctx.nvars)
        _check_invariant(rs, ctx, f)
        if deformed:
            lf = ctx.total_power(1, f)
        else:
            lf = ctx.laplacian(f)
        lhs = lf.restrict_to(ext_basis)
        g = f.restrict_to(ext_basis)
        # second derivatives weighted by the inverse metric
        radial = Polynomial.zero(field, nt)
        for a in range(r):
            ga = g.partial(a)
            for b in range(r):
                if not ginv[a][b].is_zero():
                    radial = radial + ga.partial(b) * ginv[a][b]
        if deformed:
            omega = Polynomial.variable(field, nt, r)
            quad = Polynomial.zero(field, nt)
            for a in range(r):
                ta = Polynomial.variable(field, nt, a)
                for b in range(r):
                    if not gmat[a][b].is_zero():
                        quad = quad + ta * Polynomial.variable(field, nt, b) * gmat[a][b]
            radial = radial - omega * omega * quad * g
            const = field.element(-rs.dim) + total_c * 2
            radial = radial + omega * g * const
        rhs = denom * radial
        for (v, m, coeffs, rest) in zip(config.vectors, ms, dirs, others):
            dv = Polynomial.zero(field, nt)
            for j, cj in enumerate(coeffs):
                if not cj.is_zero():
                    dv = dv + g.partial(j) * cj
            rhs = rhs - rest * dv * (m * 2)
        if denom * lhs != rhs:
            bad.append(k)
    return bad


def deformed_restriction_constant(stratum: Stratum, mults: Multiplicities) -> FieldElement:
    """Coefficient of the confinement parameter in the restricted operator."""
    rs = stratum.rs
    total_c = rs.field.zero()
    for i in range(len(rs.lines)):
        total_c = total_c + mults.line_scalar(i)
    return rs.field.element(-rs.dim) + total_c * 2


# ---------------------------------------------------------------------------
# the catalog


def _load_catalog_rows(path: str | None = None) -> list[dict]:
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)["rows"]
    data = resources.files("dunklcm.data").joinpath("golden_catalog.json").read_text()
    return json.loads(data)["rows"]


def catalog_stratum(row: dict) -> Stratum:
    rs = root_system(row["family"])
    gamma0 = tuple(i - 1 for i in row["gamma0"])
    st = parabolic_stratum(rs, gamma0)
    st.label = row["type"]
    return st


def catalog_row_result(row: dict) -> dict:
    """Recomputes one catalog entry at its solved multiplicity."""
    st = catalog_stratum(row)
    rs = st.rs
    solved = solve_multiplicities(st)
    if solved["status"] != "unique":
        raise ValueError(f"catalog stratum {row['type']} in {row['family']} does not pin the multiplicity")
    c_text = solved["values"]["c"]
    mults = Multiplicities.numeric(rs, {"c": Fraction(c_text)})
    config = restricted_configuration(st, mults)
    # dimension inside the reflection representation, not the coordinate space
    dim = st.subspace.dim - (rs.dim - rs.rank)
    return {
        "family": row["family"],
        "type": row["type"],
        "gamma0": row["gamma0"],
        "c": c_text,
        "dim": dim,
        "size": config.size,
        "mults": config.mult_multiset(),
        "config": config,
    }


def catalog_compare(path: str | None = None) -> list[dict]:
    """Every catalog row recomputed and diffed against the stored values."""
    out = []
    for row in _load_catalog_rows(path):
        got = catalog_row_result(row)
        entry = {
            "index": row["index"],
            "family": row["family"],
            "type": row["type"],
            "dim_match": got["dim"] == row["dim"],
            "mults_match": got["mults"] == row["mults"],
            "size_match": got["size"] == row["size"],
            "expected": {"dim": row["dim"], "size": row["size"], "mults": row["mults"]},
            "computed": {"dim": got["dim"], "size": got["size"], "mults": got["mults"]},
            "c": got["c"],
        }
        out.append(entry)
    return out
