import time
from itertools import combinations

import pytest

from dunklcm.fields import Field
from dunklcm.linalg import dot, reflect
from dunklcm.polynomials import render_polynomial
from dunklcm.rootsystems import (
    Multiplicities,
    OrbitCapExceeded,
    Stratum,
    block_stratum,
    classify_indices,
    enumerate_parabolic_strata,
    generalized_coxeter_number,
    parabolic_stratum,
    parabolic_subspace,
    root_system,
    subgraph_type_name,
    type_coxeter_number,
)

LINE_COUNTS = {
    ("A", 3, None): 6,
    ("A", 5, None): 15,
    ("B", 2, None): 4,
    ("B", 4, None): 16,
    ("D", 4, None): 12,
    ("D", 5, None): 20,
    ("E6", None, None): 36,
    ("E7", None, None): 63,
    ("E8", None, None): 120,
    ("F4", None, None): 24,
    ("G2", None, None): 6,
    ("H3", None, None): 15,
    ("H4", None, None): 60,
    ("I2", None, 5): 5,
    ("I2", None, 8): 8,
    ("I2", None, 12): 12,
}


@pytest.mark.parametrize("fam,rank_,m", list(LINE_COUNTS))
def test_line_counts(fam, rank_, m):
    rs = root_system(fam, rank_, m=m)
    assert len(rs.lines) == LINE_COUNTS[(fam, rank_, m)]


@pytest.mark.parametrize("fam,rank_,m", [("A", 3, None), ("B", 3, None), ("F4", None, None), ("H3", None, None), ("I2", None, 8)])
def test_closed_under_own_reflections(fam, rank_, m):
    rs = root_system(fam, rank_, m=m)
    for a in rs.lines:
        for b in rs.lines:
            assert rs.is_root_line(reflect(b, a))


def test_unknown_families_rejected():
    with pytest.raises(ValueError):
        root_system("K", 4)
    with pytest.raises(ValueError):
        root_system("I2", m=7)
    with pytest.raises(ValueError):
        root_system("B", 1)


def test_orbit_label_counts_B3():
    rs = root_system("B", 3)
    # first orbit is the one through the first simple root: the 6 long lines
    counts = [rs.orbit_labels.count(i) for i in range(len(rs.orbit_names))]
    assert rs.orbit_names == ("c1", "c2")
    assert counts == [6, 3]
    long_norm = dot(rs.simple[0], rs.simple[0])
    for i, l in enumerate(rs.lines):
        expected = 0 if dot(l, l) == long_norm else 1
        assert rs.orbit_labels[i] == expected


def test_orbit_labels_F4_G2():
    f4 = root_system("F4")
    assert [f4.orbit_labels.count(i) for i in (0, 1)] == [12, 12]
    g2 = root_system("G2")
    assert [g2.orbit_labels.count(i) for i in (0, 1)] == [3, 3]


ALL_FAMILIES = [
    ("A", 5, None),
    ("B", 4, None),
    ("D", 5, None),
    ("E6", None, None),
    ("E7", None, None),
    ("E8", None, None),
    ("F4", None, None),
    ("G2", None, None),
    ("H3", None, None),
    ("H4", None, None),
    ("I2", None, 8),
]


def test_coxeter_number_lemma_all_families():
    # sum over roots of (a,u)(a,v)/(a,a) equals h*(u,v), at multiplicity one
    start = time.time()
    for fam, rank_, m in ALL_FAMILIES:
        rs = root_system(fam, rank_, m=m)
        ones = Multiplicities.numeric(rs, {n: 1 for n in rs.orbit_names})
        h = generalized_coxeter_number(rs, ones, range(len(rs.lines)))
        assert h.constant_term() == rs.field.element(rs.coxeter_number)
    assert time.time() - start < 10.0


def test_generalized_coxeter_number_symbolic():
    rs = root_system("B", 2)
    mu = Multiplicities.symbolic(rs)
    h = generalized_coxeter_number(rs, mu, range(len(rs.lines)))
    assert render_polynomial(h, names=mu.params) == "2*c1+2*c2"
    rs = root_system("A", 3)
    mu = Multiplicities.symbolic(rs)
    h = generalized_coxeter_number(rs, mu, range(len(rs.lines)))
    assert render_polynomial(h, names=mu.params) == "4*c"


def test_generalized_number_rejects_reducible():
    from dunklcm.linalg import vec

    rs = root_system("F4")
    mu = Multiplicities.symbolic(rs)
    # one long and one short orthogonal line: reducible, weights differ
    mixed = [
        rs.line_index(vec(rs.field, [0, 1, -1, 0])),
        rs.line_index(vec(rs.field, [0, 0, 0, 1])),
    ]
    with pytest.raises(ValueError):
        generalized_coxeter_number(rs, mu, mixed)


@pytest.mark.parametrize(
    "fam,indices,expected",
    [
        ("F4", (0, 1, 2, 3), "F4"),
        ("F4", (1, 2), "B2"),
        ("F4", (0, 2), "A1^2"),
        ("F4", (0, 1, 2), "B3"),
        ("F4", (1, 2, 3), "B3"),
        ("E8", tuple(range(8)), "E8"),
        ("E8", (0, 2, 3, 4, 5, 6, 7), "A7"),
        ("E8", (1, 2, 3, 4, 5, 6, 7), "D7"),
        ("E7", (0, 1, 2, 3, 4, 5), "E6"),
        ("E7", (1, 4, 6), "A1^3"),
        ("E7", (1, 2, 3, 4), "D4"),
        ("H4", (0, 1, 2, 3), "H4"),
        ("H4", (0, 1, 2), "H3"),
        ("H4", (0, 1), "I2(5)"),
        ("G2", (0, 1), "G2"),
        ("H3", (1, 2), "A2"),
    ],
)
def test_classify_subgraphs(fam, indices, expected):
    rs = root_system(fam)
    assert subgraph_type_name(classify_indices(rs, indices)) == expected


def test_type_coxeter_numbers():
    assert type_coxeter_number(("A", 3)) == 4
    assert type_coxeter_number(("B", 2)) == 4
    assert type_coxeter_number(("D", 4)) == 6
    assert type_coxeter_number(("E", 7)) == 18
    assert type_coxeter_number(("G", 2)) == 6
    assert type_coxeter_number(("H", 4)) == 30
    assert type_coxeter_number(("I", 8)) == 8


def test_mirror_orbit_sizes():
    assert parabolic_stratum(root_system("A", 3), (0,)).orbit_size() == 6
    assert parabolic_stratum(root_system("E8"), (0,)).orbit_size() == 120


def test_block_strata_B():
    rs = root_system("B", 4)
    two_zero = block_stratum(rs, m=0, k=1, l=2)
    assert two_zero.orbit_size() == 6
    assert two_zero.subspace.dim == 2
    pair = block_stratum(rs, m=1, k=2)
    # choices of the colliding pair times the relative sign
    assert pair.orbit_size() == 12


def test_block_strata_D_eps_variants():
    rs = root_system("D", 4)
    plus = block_stratum(rs, m=2, k=2)
    minus = block_stratum(rs, m=2, k=2, eps=-1)
    assert plus.orbit_size() == 6
    assert minus.orbit_size() == 6
    assert minus.subspace.key not in plus.orbit()
    with pytest.raises(ValueError):
        block_stratum(rs, m=1, k=3, eps=-1)
    with pytest.raises(ValueError):
        block_stratum(root_system("B", 4), m=2, k=2, eps=-1)
    with pytest.raises(ValueError):
        block_stratum(root_system("A", 3), m=1, k=2, l=1)


def test_block_stratum_A_partition():
    rs = root_system("A", 5)
    st = block_stratum(rs, m=2, k=2)
    # pairs {i,j},{k,l} of disjoint coordinate pairs: 6!/(2!2!2!) / 2 = 45
    assert st.orbit_size() == 45


def test_orbit_cap():
    rs = root_system("E8")
    st = parabolic_stratum(rs, (0,))
    with pytest.raises(OrbitCapExceeded):
        st.orbit(cap=50)


def test_orbit_cap_env(monkeypatch):
    monkeypatch.setenv("DUNKLCM_ORBIT_CAP", "3")
    rs = root_system("A", 3)
    st = parabolic_stratum(rs, (0,))
    with pytest.raises(OrbitCapExceeded):
        st.orbit()


def test_enumerate_strata_small():
    rs = root_system("A", 3)
    strata = enumerate_parabolic_strata(rs)
    assert sorted(st.label for st in strata) == ["A1", "A1^2", "A2", "A3"]
    rs = root_system("B", 3)
    strata = enumerate_parabolic_strata(rs)
    assert sorted(st.label for st in strata) == [
        "A1:1",
        "A1:2",
        "A1^2",
        "A2",
        "B2",
        "B3",
    ]


def test_enumerate_strata_D4_triality():
    rs = root_system("D", 4)
    strata = enumerate_parabolic_strata(rs)
    # the three outer nodes give one A1 class; A1^2 splits off the center
    labels = sorted(st.label for st in strata)
    assert labels.count("A1") == 1
    a13 = [st for st in strata if st.label.startswith("A1^3")]
    assert len(a13) == 1


def test_E7_doubled_classes():
    rs = root_system("E7")
    reps = {}
    for size, want in ((3, "A1^3"), (5, "A5")):
        classes = []
        for idx in combinations(range(rs.rank), size):
            try:
                name = subgraph_type_name(classify_indices(rs, idx))
            except ValueError:
                continue
            if name != want:
                continue
            sub = parabolic_subspace(rs, idx)
            if any(sub.key in st.orbit() for st in classes):
                continue
            classes.append(Stratum(rs, sub, gamma0=idx, label=want))
        reps[want] = classes
    assert len(reps["A1^3"]) == 2
    assert len(reps["A5"]) == 2
    sizes = sorted(st.orbit_size() for st in reps["A1^3"])
    assert sizes == [315, 3780]
    sizes = sorted(st.orbit_size() for st in reps["A5"])
    assert sizes == [336, 1008]


def test_vanishing_lines_and_components():
    rs = root_system("B", 3)
    st = block_stratum(rs, m=1, k=2, l=1)  # x1 = x2, x3 = 0
    comps = st.components()
    # x1 - x2 is isolated; x3 alone is the other component
    assert len(comps) == 2
    st2 = parabolic_stratum(root_system("A", 3), (0, 2))
    assert len(st2.vanishing_lines()) == 2
    assert len(st2.components()) == 2


def test_stratum_ideal_membership():
    from dunklcm.polynomials import Polynomial

    rs = root_system("A", 3)
    st = parabolic_stratum(rs, (0,))
    x = [Polynomial.variable(rs.field, 4, i) for i in range(4)]
    vandermonde = Polynomial.constant(rs.field, 4, rs.field.one())
    for i in range(4):
        for j in range(i + 1, 4):
            vandermonde = vandermonde * (x[i] - x[j])
    assert st.ideal_contains(vandermonde)
    assert not st.ideal_contains(x[0] - x[1])


def test_subspace_json_round_trip():
    rs = root_system("B", 3)
    st = block_stratum(rs, m=1, k=2, l=1)
    data = st.to_json()
    assert data["subspace"]["dim"] == 1
    assert data["family"] == "B"
