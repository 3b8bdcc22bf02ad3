"""Finite Coxeter root systems with exact coordinates.

Each family is realized over the smallest field that makes its reflection
representation exact with the standard dot product: Q for the crystallographic
families, Q(sqrt(5)) for H3, H4 and the pentagon, Q(sqrt(2)) and Q(sqrt(3))
for the octagon and the 12-gon.  Root systems store one representative per
root line; every operation downstream is invariant under negating a root,
so a geometric choice of positive system is never needed.

Subspaces are kept in a canonical form (reduced echelon annihilator), which
makes group orbits of subspaces hashable sets.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import combinations

from .fields import Field, FieldElement, render_scalar
from .linalg import (
    Matrix,
    Vector,
    dot,
    gram,
    identity,
    in_span,
    nullspace,
    rank,
    reflect,
    rref,
    vec,
    vec_is_zero,
    vec_scale,
)
from .polynomials import Polynomial

ORBIT_CAP_ENV = "DUNKLCM_ORBIT_CAP"
DEFAULT_ORBIT_CAP = 10 ** 6


class OrbitCapExceeded(RuntimeError):
    """Raised when a subspace orbit grows past the configured cap."""


def default_orbit_cap() -> int:
    raw = os.environ.get(ORBIT_CAP_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_ORBIT_CAP


def _vec_key(v: Vector) -> tuple:
    return tuple(x.sort_key() for x in v)


def _line_rep(v: Vector) -> Vector:
    """Canonical representative of {v, -v}."""
    neg = tuple(-x for x in v)
    return v if _vec_key(v) >= _vec_key(neg) else neg


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace given by its annihilating forms, canonicalized."""

    __slots__ = ("field", "ambient", "annihilator", "basis", "key")

    def __init__(self, field: Field, ambient: int, annihilator_rows):
        rows = tuple(r for r in annihilator_rows if not vec_is_zero(r))
        reduced, _ = rref(rows)
        self.field = field
        self.ambient = ambient
        self.annihilator = reduced
        self.basis = nullspace(reduced, ambient, field)
        self.key = tuple(_vec_key(r) for r in reduced)

    @property
    def dim(self) -> int:
        return self.ambient - len(self.annihilator)

    def reflect(self, alpha: Vector, alpha_norm: FieldElement | None = None) -> "Subspace":
        return Subspace(self.field, self.ambient, [reflect(r, alpha, alpha_norm) for r in self.annihilator])

    def transform_rows(self, matrix_inverse: Matrix) -> "Subspace":
        """Image under the map whose inverse is given (rows act as covectors)."""
        cols = tuple(zip(*matrix_inverse))
        new_rows = [tuple(dot(r, col) for col in cols) for r in self.annihilator]
        return Subspace(self.field, self.ambient, new_rows)

    def contains(self, v: Vector) -> bool:
        return all(dot(r, v).is_zero() for r in self.annihilator)

    def perp_contains(self, v: Vector) -> bool:
        """True when v is orthogonal to the whole subspace."""
        return all(dot(v, b).is_zero() for b in self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key == other.key and self.ambient == other.ambient

    def __hash__(self):
        return hash((self.ambient, self.key))

    def __repr__(self):
        rows = "; ".join(",".join(render_scalar(x) for x in r) for r in self.annihilator)
        return f"Subspace(dim={self.dim}, rows=[{rows}])"

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "dim": self.dim,
            "annihilator": [[render_scalar(x) for x in r] for r in self.annihilator],
        }


# ---------------------------------------------------------------------------
# root systems


_FAMILY_COXETER = {
    "E6": 12,
    "E7": 18,
    "E8": 30,
    "F4": 12,
    "G2": 6,
    "H3": 10,
    "H4": 30,
}

_SUPPORTED_DIHEDRAL = (3, 4, 5, 6, 8, 12)


class RootSystem:
    def __init__(self, family: str, rank_: int, field: Field, simple: tuple[Vector, ...], coxeter_number: int):
        self.family = family
        self.rank = rank_
        self.field = field
        self.simple = simple
        self.dim = len(simple[0])
        self.coxeter_number = coxeter_number
        self.lines = self._generate_lines()
        self._line_index = {_vec_key(l): i for i, l in enumerate(self.lines)}
        self.line_norms = tuple(dot(l, l) for l in self.lines)
        self.orbit_labels, self.orbit_names = self._label_orbits()
        self._simple_line = tuple(self._line_index[_vec_key(_line_rep(s))] for s in self.simple)

    # -- construction -------------------------------------------------------

    def _generate_lines(self) -> tuple[Vector, ...]:
        norms = [dot(s, s) for s in self.simple]
        seen: dict[tuple, Vector] = {}
        frontier = [_line_rep(s) for s in self.simple]
        for r in frontier:
            seen[_vec_key(r)] = r
        while frontier:
            nxt = []
            for r in frontier:
                for s, ns in zip(self.simple, norms):
                    img = _line_rep(reflect(r, s, ns))
                    k = _vec_key(img)
                    if k not in seen:
                        seen[k] = img
                        nxt.append(img)
            frontier = nxt
        return tuple(sorted(seen.values(), key=_vec_key))

    def _label_orbits(self) -> tuple[tuple[int, ...], tuple[str, ...]]:
        # connected components of the line set under the simple reflections
        norms = [dot(s, s) for s in self.simple]
        n = len(self.lines)
        comp = [-1] * n
        order: list[int] = []
        for start in range(n):
            if comp[start] >= 0:
                continue
            cid = len(order)
            order.append(start)
            stack = [start]
            comp[start] = cid
            while stack:
                i = stack.pop()
                for s, ns in zip(self.simple, norms):
                    j = self._line_index[_vec_key(_line_rep(reflect(self.lines[i], s, ns)))]
                    if comp[j] < 0:
                        comp[j] = cid
                        stack.append(j)
        ncomp = len(order)
        # name orbits in order of first appearance among the simple roots
        first_seen: list[int] = []
        for s in self.simple:
            cid = comp[self._line_index[_vec_key(_line_rep(s))]]
            if cid not in first_seen:
                first_seen.append(cid)
        for cid in range(ncomp):
            if cid not in first_seen:
                first_seen.append(cid)
        rename = {cid: i for i, cid in enumerate(first_seen)}
        labels = tuple(rename[c] for c in comp)
        if ncomp == 1:
            return labels, ("c",)
        names = tuple(f"c{i+1}" for i in range(ncomp))
        return labels, names

    # -- basic queries -------------------------------------------------------

    def line_index(self, v: Vector) -> int | None:
        return self._line_index.get(_vec_key(_line_rep(v)))

    def is_root_line(self, v: Vector) -> bool:
        return self.line_index(v) is not None

    def positive_count(self) -> int:
        return len(self.lines)

    def reflection(self, line_idx: int) -> Matrix:
        alpha = self.lines[line_idx]
        return tuple(reflect(row, alpha, self.line_norms[line_idx]) for row in identity(self.field, self.dim))

    def bond(self, i: int, j: int) -> int:
        """Coxeter bond order between simple roots i and j."""
        a, b = self.simple[i], self.simple[j]
        c2 = (dot(a, b) ** 2) / (dot(a, a) * dot(b, b))
        return _bond_from_cos2(self.field, c2)

    def __repr__(self):
        return f"RootSystem({self.family}, {len(self.lines)} root lines)"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "ambient_dim": self.dim,
            "field": self.field.descriptor(),
            "coxeter_number": self.coxeter_number,
            "positive_roots": len(self.lines),
            "simple": [[render_scalar(x) for x in s] for s in self.simple],
            "lines": [[render_scalar(x) for x in l] for l in self.lines],
            "orbit_names": list(self.orbit_names),
            "orbit_labels": list(self.orbit_labels),
        }


def _bond_from_cos2(field: Field, c2: FieldElement) -> int:
    table = {
        field.element(0): 2,
        field.element(Fraction(1, 4)): 3,
        field.element(Fraction(1, 2)): 4,
        field.element(Fraction(3, 4)): 6,
    }
    for val, m in table.items():
        if c2 == val:
            return m
    if field.kind == "quadratic":
        g = field.generator()
        if field.param == 5 and c2 == (3 + g) / 8:
            return 5
        if field.param == 2 and c2 == (2 + g) / 4:
            return 8
        if field.param == 3 and c2 == (2 + g) / 4:
            return 12
    raise ValueError(f"unsupported bond angle with cos^2 = {c2}")


def _simple_A(field: Field, n_coords: int) -> tuple[Vector, ...]:
    out = []
    for i in range(n_coords - 1):
        row = [0] * n_coords
        row[i], row[i + 1] = 1, -1
        out.append(vec(field, row))
    return tuple(out)


_SYSTEM_CACHE: dict[tuple, RootSystem] = {}


def root_system(family: str, rank_: int | None = None, m: int | None = None) -> RootSystem:
    """Build one of the supported families (memoized).

    family in {A, B, D, E6, E7, E8, F4, G2, H3, H4, I2}; A/B/D need rank_,
    I2 needs m.  E6 and E7 are realized inside the eight E8 coordinates.
    """
    fam = family.upper()
    if fam == "E" and rank_ in (6, 7, 8):
        fam, rank_ = f"E{rank_}", None
    if fam.startswith("I2(") and fam.endswith(")"):
        m = int(fam[3:-1])
        fam = "I2"
    key = (fam, rank_, m)
    cached = _SYSTEM_CACHE.get(key)
    if cached is not None:
        return cached
    rs = _build_root_system(fam, rank_, m)
    _SYSTEM_CACHE[key] = rs
    return rs


def _build_root_system(fam: str, rank_: int | None, m: int | None) -> RootSystem:
    Q = Field.rational()

    if fam == "A":
        if rank_ is None or rank_ < 1:
            raise ValueError("family A needs a rank >= 1")
        return RootSystem("A", rank_, Q, _simple_A(Q, rank_ + 1), rank_ + 1)
    if fam == "B":
        if rank_ is None or rank_ < 2:
            raise ValueError("family B needs a rank >= 2")
        simple = list(_simple_A(Q, rank_))
        last = [0] * rank_
        last[-1] = 1
        simple.append(vec(Q, last))
        return RootSystem("B", rank_, Q, tuple(simple), 2 * rank_)
    if fam == "D":
        if rank_ is None or rank_ < 3:
            raise ValueError("family D needs a rank >= 3")
        simple = list(_simple_A(Q, rank_))
        last = [0] * rank_
        last[-2], last[-1] = 1, 1
        simple.append(vec(Q, last))
        return RootSystem("D", rank_, Q, tuple(simple), 2 * rank_ - 2)
    if fam in ("E6", "E7", "E8"):
        h = Fraction(1, 2)
        e8 = [
            vec(Q, [h, -h, -h, -h, -h, -h, -h, h]),
            vec(Q, [1, 1, 0, 0, 0, 0, 0, 0]),
            vec(Q, [-1, 1, 0, 0, 0, 0, 0, 0]),
            vec(Q, [0, -1, 1, 0, 0, 0, 0, 0]),
            vec(Q, [0, 0, -1, 1, 0, 0, 0, 0]),
            vec(Q, [0, 0, 0, -1, 1, 0, 0, 0]),
            vec(Q, [0, 0, 0, 0, -1, 1, 0, 0]),
            vec(Q, [0, 0, 0, 0, 0, -1, 1, 0]),
        ]
        r = int(fam[1])
        return RootSystem(fam, r, Q, tuple(e8[:r]), _FAMILY_COXETER[fam])
    if fam == "F4":
        h = Fraction(1, 2)
        simple = (
            vec(Q, [0, 1, -1, 0]),
            vec(Q, [0, 0, 1, -1]),
            vec(Q, [0, 0, 0, 1]),
            vec(Q, [h, -h, -h, -h]),
        )
        return RootSystem("F4", 4, Q, simple, 12)
    if fam == "G2":
        simple = (vec(Q, [1, -1, 0]), vec(Q, [-2, 1, 1]))
        return RootSystem("G2", 2, Q, simple, 6)
    if fam in ("H3", "H4"):
        F5 = Field.quadratic(5)
        g = F5.generator()
        phi = (1 + g) / 2
        half = F5.element(Fraction(1, 2))
        if fam == "H3":
            simple = (
                (F5.one(), F5.zero(), F5.zero()),
                (-phi * half, (1 - phi) * half, half),
                (F5.zero(), F5.zero(), -F5.one()),
            )
            return RootSystem("H3", 3, F5, simple, 10)
        simple = (
            (F5.one(), F5.zero(), F5.zero(), F5.zero()),
            (-phi * half, (1 - phi) * half, half, F5.zero()),
            (F5.zero(), F5.zero(), -F5.one(), F5.zero()),
            (F5.zero(), phi * half, half, (phi - 1) * half),
        )
        return RootSystem("H4", 4, F5, simple, 30)
    if fam == "I2":
        if m is None:
            raise ValueError("family I2 needs the dihedral order m")
        if m not in _SUPPORTED_DIHEDRAL:
            raise ValueError(f"unsupported dihedral order {m}; supported: {_SUPPORTED_DIHEDRAL}")
        label = f"I2({m})"
        if m == 3:
            return RootSystem(label, 2, Q, _simple_A(Q, 3), 3)
        if m == 4:
            simple = (vec(Q, [1, -1]), vec(Q, [0, 1]))
            return RootSystem(label, 2, Q, simple, 4)
        if m == 6:
            simple = (vec(Q, [1, -1, 0]), vec(Q, [-2, 1, 1]))
            return RootSystem(label, 2, Q, simple, 6)
        if m == 5:
            F5 = Field.quadratic(5)
            g = F5.generator()
            phi = (1 + g) / 2
            half = F5.element(Fraction(1, 2))
            a = (half, phi * half, (phi - 1) * half)
            b = (-phi * half, (1 - phi) * half, -half)
            return RootSystem(label, 2, F5, (a, b), 5)
        if m == 8:
            F2 = Field.quadratic(2)
            s = F2.generator()
            a = (F2.one(), F2.zero())
            b = (-1 - s / 2, s / 2)
            return RootSystem(label, 2, F2, (a, b), 8)
        F3 = Field.quadratic(3)
        s = F3.generator()
        a = (F3.one(), F3.zero())
        b = (-1 - s / 2, F3.element(Fraction(1, 2)))
        return RootSystem(label, 2, F3, (a, b), 12)
    raise ValueError(f"unknown family {fam!r}")


# ---------------------------------------------------------------------------
# subgraph classification


def classify_indices(rs: RootSystem, indices: tuple[int, ...]) -> list[tuple[str, int, tuple[int, ...]]]:
    """Connected components of the induced Coxeter subgraph.

    Returns (type letter, parameter, vertex tuple) per component, where the
    pair is e.g. ("A", 3), ("B", 2), ("I", 5), ("E", 7).
    """
    indices = tuple(sorted(set(indices)))
    for i in indices:
        if not 0 <= i < rs.rank:
            raise ValueError(f"simple root index {i} out of range")
    bonds: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {i: [] for i in indices}
    for a, b in combinations(indices, 2):
        mm = rs.bond(a, b)
        if mm > 2:
            bonds[(a, b)] = bonds[(b, a)] = mm
            adj[a].append(b)
            adj[b].append(a)
    seen: set[int] = set()
    out = []
    for start in indices:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(_classify_component(tuple(sorted(comp)), adj, bonds))
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def _classify_component(verts: tuple[int, ...], adj, bonds) -> tuple[str, int, tuple[int, ...]]:
    n = len(verts)
    if n == 1:
        return ("A", 1, verts)
    degs = {v: len([w for w in adj[v] if w in verts]) for v in verts}
    if any(d > 3 for d in degs.values()):
        raise ValueError("subgraph has a vertex of degree > 3; not a parabolic type in scope")
    branch = [v for v in verts if degs[v] == 3]
    high = [(e, m) for e, m in bonds.items() if m > 3 and e[0] < e[1] and e[0] in verts and e[1] in verts]
    if not branch:
        ends = [v for v in verts if degs[v] == 1]
        if len(ends) != 2:
            raise ValueError("subgraph component is not a tree path")
        order = [ends[0]]
        while len(order) < n:
            nxt = [w for w in adj[order[-1]] if w in verts and (len(order) < 2 or w != order[-2])]
            order.append(nxt[0])
        seq = [bonds[(order[i], order[i + 1])] for i in range(n - 1)]
        if all(m == 3 for m in seq):
            return ("A", n, verts)
        if len([m for m in seq if m > 3]) != 1:
            raise ValueError("subgraph has several marked bonds; not a parabolic type in scope")
        pos = next(i for i, m in enumerate(seq) if m > 3)
        mm = seq[pos]
        if n == 2:
            if mm == 4:
                return ("B", 2, verts)
            if mm == 6:
                return ("G", 2, verts)
            return ("I", mm, verts)
        if pos in (0, n - 2):
            if mm == 4:
                return ("B", n, verts)
            if mm == 5 and n in (3, 4):
                return ("H", n, verts)
            raise ValueError(f"unrecognized marked path of order {mm}")
        if mm == 4 and n == 4:
            return ("F", 4, verts)
        raise ValueError("marked bond in the interior of a path; only F4 is in scope")
    if len(branch) == 1 and not high:
        b = branch[0]
        legs = []
        for w in adj[b]:
            if w not in verts:
                continue
            length = 1
            prev, cur = b, w
            while True:
                nxt = [u for u in adj[cur] if u in verts and u != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            legs.append(length)
        legs.sort()
        if legs[:2] == [1, 1]:
            return ("D", n, verts)
        if legs == [1, 2, 2]:
            return ("E", 6, verts)
        if legs == [1, 2, 3]:
            return ("E", 7, verts)
        if legs == [1, 2, 4]:
            return ("E", 8, verts)
    raise ValueError("subgraph component is not a parabolic type in scope")


def component_type_name(t: tuple[str, int]) -> str:
    letter, param = t
    if letter == "I":
        return f"I2({param})"
    return f"{letter}{param}"


def subgraph_type_name(components: list[tuple[str, int, tuple[int, ...]]]) -> str:
    counts: dict[str, int] = {}
    for letter, param, _ in components:
        name = component_type_name((letter, param))
        counts[name] = counts.get(name, 0) + 1
    parts = []
    for name in sorted(counts):
        k = counts[name]
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def type_coxeter_number(t: tuple[str, int]) -> int:
    letter, param = t
    if letter == "A":
        return param + 1
    if letter == "B":
        return 2 * param
    if letter == "D":
        return 2 * param - 2
    if letter == "E":
        return {6: 12, 7: 18, 8: 30}[param]
    if letter == "F":
        return 12
    if letter == "G":
        return 6
    if letter == "H":
        return {3: 10, 4: 30}[param]
    if letter == "I":
        return param
    raise ValueError(f"unknown component type {t}")


# ---------------------------------------------------------------------------
# multiplicity functions


class Multiplicities:
    """Reflection multiplicities, one value per root orbit.

    Values are stored as polynomials in the symbolic parameters (an empty
    parameter list means the function is numeric).
    """

    def __init__(self, rs: RootSystem, values: dict[str, Polynomial], params: tuple[str, ...]):
        self.rs = rs
        self.params = params
        self.values = values
        for name in rs.orbit_names:
            if name not in values:
                raise ValueError(f"missing multiplicity for orbit {name!r}")

    @classmethod
    def numeric(cls, rs: RootSystem, mapping) -> "Multiplicities":
        values = {}
        if not isinstance(mapping, dict):
            mapping = {name: mapping for name in rs.orbit_names}
        for name in rs.orbit_names:
            if name not in mapping:
                raise ValueError(f"missing multiplicity for orbit {name!r}")
            values[name] = Polynomial.constant(rs.field, 0, rs.field.element(mapping[name]))
        return cls(rs, values, ())

    @classmethod
    def symbolic(cls, rs: RootSystem) -> "Multiplicities":
        params = rs.orbit_names
        values = {
            name: Polynomial.variable(rs.field, len(params), i)
            for i, name in enumerate(params)
        }
        return cls(rs, values, params)

    @property
    def is_numeric(self) -> bool:
        return not self.params

    def value(self, orbit_name: str) -> Polynomial:
        return self.values[orbit_name]

    def line_value(self, line_idx: int) -> Polynomial:
        return self.values[self.rs.orbit_names[self.rs.orbit_labels[line_idx]]]

    def line_scalar(self, line_idx: int) -> FieldElement:
        if not self.is_numeric:
            raise ValueError("numeric multiplicities required")
        return self.line_value(line_idx).constant_term()

    def scalar(self, orbit_name: str) -> FieldElement:
        if not self.is_numeric:
            raise ValueError("numeric multiplicities required")
        return self.values[orbit_name].constant_term()

    def to_json(self) -> dict:
        from .polynomials import render_polynomial

        return {
            name: render_polynomial(p, names=self.params or None)
            for name, p in self.values.items()
        }


# ---------------------------------------------------------------------------
# strata


class Stratum:
    """A reflection-group orbit of a parabolic subspace."""

    def __init__(self, rs: RootSystem, subspace: Subspace, gamma0: tuple[int, ...] | None = None, label: str = ""):
        self.rs = rs
        self.subspace = subspace
        self.gamma0 = gamma0
        self.label = label
        self._orbit: dict[tuple, Subspace] | None = None

    def orbit(self, cap: int | None = None) -> dict[tuple, Subspace]:
        if self._orbit is None:
            self._orbit = orbit_of_subspace(self.rs, self.subspace, cap)
        return self._orbit

    def orbit_size(self, cap: int | None = None) -> int:
        return len(self.orbit(cap))

    def vanishing_lines(self) -> tuple[int, ...]:
        """Indices of root lines orthogonal to the subspace."""
        return tuple(
            i for i, l in enumerate(self.rs.lines) if self.subspace.perp_contains(l)
        )

    def components(self) -> list[tuple[int, ...]]:
        """Vanishing root lines grouped by orthogonality connectivity."""
        lines = self.vanishing_lines()
        remaining = set(lines)
        out: list[tuple[int, ...]] = []
        while remaining:
            start = min(remaining)
            comp = {start}
            stack = [start]
            remaining.discard(start)
            while stack:
                i = stack.pop()
                for j in list(remaining):
                    if not dot(self.rs.lines[i], self.rs.lines[j]).is_zero():
                        remaining.discard(j)
                        comp.add(j)
                        stack.append(j)
            out.append(tuple(sorted(comp)))
        out.sort()
        return out

    def ideal_contains(self, f: Polynomial, cap: int | None = None) -> bool:
        """Membership of f in the vanishing ideal of the whole orbit."""
        return all(f.restrict_to(s.basis).is_zero() for s in self.orbit(cap).values())

    def to_json(self) -> dict:
        data = {
            "family": self.rs.family,
            "label": self.label,
            "subspace": self.subspace.to_json(),
        }
        if self.gamma0 is not None:
            data["gamma0"] = [i + 1 for i in self.gamma0]
        if self._orbit is not None:
            data["orbit_size"] = len(self._orbit)
        return data


def parabolic_subspace(rs: RootSystem, indices) -> Subspace:
    rows = [rs.simple[i] for i in indices]
    return Subspace(rs.field, rs.dim, rows)


def parabolic_stratum(rs: RootSystem, indices) -> Stratum:
    indices = tuple(sorted(set(indices)))
    comps = classify_indices(rs, indices)
    label = subgraph_type_name(comps)
    return Stratum(rs, parabolic_subspace(rs, indices), gamma0=indices, label=label)


def orbit_of_subspace(rs: RootSystem, sub: Subspace, cap: int | None = None) -> dict[tuple, Subspace]:
    if cap is None:
        cap = default_orbit_cap()
    norms = [dot(s, s) for s in rs.simple]
    seen = {sub.key: sub}
    frontier = [sub]
    while frontier:
        nxt = []
        for s in frontier:
            for alpha, nn in zip(rs.simple, norms):
                img = s.reflect(alpha, nn)
                if img.key not in seen:
                    if len(seen) >= cap:
                        raise OrbitCapExceeded(f"subspace orbit exceeded cap {cap}")
                    seen[img.key] = img
                    nxt.append(img)
        frontier = nxt
    return seen


def block_stratum(rs: RootSystem, m: int, k: int, l: int = 0, eps: int = 1) -> Stratum:
    """Collision stratum: m blocks of k equal coordinates, then l zeros.

    For family D with eps=-1 the last block collides up to a sign, which is
    a genuinely different stratum exactly when k is even and there are no
    other coordinates.
    """
    fam = rs.family
    if fam not in ("A", "B", "D"):
        raise ValueError("block strata are defined for the classical families A, B, D")
    n_coords = rs.dim
    if m * k + l > n_coords:
        raise ValueError("blocks and zeros do not fit in the coordinate space")
    if fam == "A" and l:
        raise ValueError("family A has no zero-coordinate strata")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if eps == -1:
        if fam != "D":
            raise ValueError("the sign-twisted block stratum only exists in family D")
        if k % 2 or m * k != n_coords:
            raise ValueError("the twisted stratum needs an even block size and no other coordinates")
    rows = []
    field = rs.field
    for b in range(m):
        base = b * k
        for j in range(k - 1):
            row = [0] * n_coords
            row[base + j] = 1
            row[base + j + 1] = -1
            if eps == -1 and b == m - 1 and j == k - 2:
                row[base + j + 1] = -eps
            rows.append(vec(field, row))
    for j in range(l):
        row = [0] * n_coords
        row[m * k + j] = 1
        rows.append(vec(field, row))
    if eps == -1:
        rows[-1] = vec(field, [0] * (n_coords - 2) + [1, 1])
        # rebuild: last equation of the last block is x_{mk-1} + x_{mk} = 0
        rows = rows[:-1]
        row = [0] * n_coords
        row[m * k - 2] = 1
        row[m * k - 1] = 1
        rows.append(vec(field, row))
    label = f"blocks(m={m},k={k}"
    if l:
        label += f",l={l}"
    if eps == -1:
        label += ",eps=-1"
    label += ")"
    return Stratum(rs, Subspace(field, n_coords, rows), gamma0=None, label=label)


def enumerate_parabolic_strata(rs: RootSystem, max_size: int | None = None, cap: int | None = None) -> list[Stratum]:
    """Distinct strata from nonempty subsets of the simple roots.

    Two subsets give one stratum when their subspaces lie in the same group
    orbit; a representative orbit is computed per class and membership of
    later candidates is tested against it.
    """
    if max_size is None:
        max_size = rs.rank
    by_type: dict[str, list[Stratum]] = {}
    out = []
    for size in range(1, max_size + 1):
        for indices in combinations(range(rs.rank), size):
            try:
                comps = classify_indices(rs, indices)
            except ValueError:
                continue
            label = subgraph_type_name(comps)
            sub = parabolic_subspace(rs, indices)
            bucket = by_type.setdefault(label, [])
            found = None
            for st in bucket:
                if sub.key in st.orbit(cap):
                    found = st
                    break
            if found is None:
                st = Stratum(rs, sub, gamma0=tuple(indices), label=label)
                st.orbit(cap)
                bucket.append(st)
                out.append(st)
    # mark doubled types with variant suffixes
    counts: dict[str, int] = {}
    for st in out:
        counts[st.label] = counts.get(st.label, 0) + 1
    seen_count: dict[str, int] = {}
    for st in out:
        if counts[st.label] > 1:
            seen_count[st.label] = seen_count.get(st.label, 0) + 1
            st.label = f"{st.label}:{seen_count[st.label]}"
    return out


# ---------------------------------------------------------------------------
# the trace form


def weighted_trace_form(rs: RootSystem, mults: Multiplicities, line_indices, basis: tuple[Vector, ...]):
    """Matrix of sum_alpha c_alpha (alpha,u)(alpha,v)/(alpha,alpha) on the basis.

    The sum runs over the full root set (both signs), so each stored line
    contributes twice.
    """
    nparams = len(mults.params)
    zero = Polynomial.zero(rs.field, nparams)
    size = len(basis)
    entries = [[zero for _ in range(size)] for _ in range(size)]
    for i in line_indices:
        alpha = rs.lines[i]
        inv_norm = rs.line_norms[i].inverse()
        c = mults.line_value(i)
        proj = [dot(alpha, u) for u in basis]
        for a in range(size):
            if proj[a].is_zero():
                continue
            for b in range(a, size):
                if proj[b].is_zero():
                    continue
                coeff = (proj[a] * proj[b] * inv_norm) * 2
                entries[a][b] = entries[a][b] + c * coeff
                if a != b:
                    entries[b][a] = entries[a][b]
    return entries


def generalized_coxeter_number(rs: RootSystem, mults: Multiplicities, line_indices) -> Polynomial:
    """The ratio h with sum_alpha c_alpha (alpha,u)(alpha,v)/(alpha,alpha) = h (u,v).

    Raises when the weighted form is not proportional to the scalar product
    on the span of the given lines (i.e. the lines do not form one
    irreducible system).
    """
    span_lines = [rs.lines[i] for i in line_indices]
    reduced, pivots = rref(tuple(span_lines))
    basis_idx = []
    rows: list[Vector] = []
    for i in line_indices:
        if rank(tuple(rows) + (rs.lines[i],)) > len(rows):
            rows.append(rs.lines[i])
            basis_idx.append(i)
        if len(rows) == len(reduced):
            break
    basis = tuple(rows)
    form = weighted_trace_form(rs, mults, line_indices, basis)
    metric = gram(basis)
    h = form[0][0] * metric[0][0].inverse()
    for a in range(len(basis)):
        for b in range(len(basis)):
            if form[a][b] != h * metric[a][b]:
                raise ValueError("weighted root form is not proportional to the scalar product")
    return h
