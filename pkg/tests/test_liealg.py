"""Root-system layer: exact data, Weyl enumeration, dimension formula."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab.liealg import (
    CapExceededError,
    InvalidTypeError,
    SimpleLieType,
    build_root_system,
    exponents_of,
    vzero,
    weyl_order,
)

ALL_SMALL = ["A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "C2", "C3", "C4",
             "D3", "D4", "F4", "G2"]


def rs_of(name):
    return build_root_system(SimpleLieType.parse(name))


def test_type_validation():
    with pytest.raises(InvalidTypeError):
        SimpleLieType.parse("Z3")
    with pytest.raises(InvalidTypeError):
        SimpleLieType("C", 1)
    with pytest.raises(InvalidTypeError):
        SimpleLieType("E", 5)
    with pytest.raises(InvalidTypeError):
        SimpleLieType.parse("A0")
    assert str(SimpleLieType.parse("e6")) == "E6"


def test_a1_basics():
    rs = rs_of("A1")
    assert rs.gram == ((Fraction(2),),)
    assert rs.rho == rs.rho_check == (Fraction(1, 2),)
    assert len(rs.minuscule) == 2


def test_b2_data():
    rs = rs_of("B2")
    assert rs.lacing == 2
    # highest root alpha1 + 2 alpha2 is long, highest short root alpha1 + alpha2
    assert rs.theta == (Fraction(1), Fraction(2))
    assert rs.theta_s == (Fraction(1), Fraction(1))
    assert rs.norm2(rs.theta) == 2
    assert rs.norm2(rs.theta_s) == 1
    assert rs.pairing(rs.simple_roots[1], rs.simple_roots[1]) == 1


def test_g2_data():
    rs = rs_of("G2")
    assert weyl_order(rs.lie_type) == 12
    assert rs.longest_element().length == 6
    assert rs.exponents == (1, 5)
    assert rs.theta == (Fraction(2), Fraction(3))


@pytest.mark.parametrize("name", ALL_SMALL)
def test_normalization_and_rho(name):
    rs = rs_of(name)
    lengths = {rs.norm2(a) for a in rs.positive_roots}
    if name == "B1":
        assert lengths == {Fraction(1)}
    else:
        assert max(lengths) == 2
        assert lengths <= {Fraction(2), Fraction(1), Fraction(2, 3)}
    for i in range(rs.rank):
        assert rs.copairing(rs.rho, i) == 1
        assert rs.pairing(rs.rho_check, rs.simple_roots[i]) == 1
    # Cartan recovered from Gram
    for i in range(rs.rank):
        for j in range(rs.rank):
            assert rs.cartan[i][j] == 2 * rs.gram[i][j] / rs.gram[i][i]


@pytest.mark.parametrize("name", ALL_SMALL)
def test_minuscule_transversal(name):
    rs = rs_of(name)
    from shiftlab.liealg import det_int
    assert len(rs.minuscule) == det_int(rs.cartan)
    # pairwise distinct classes modulo Q, and ceiling pairing with theta-coroot
    for i, a in enumerate(rs.minuscule):
        for b in rs.minuscule[:i]:
            assert not rs.in_root_lattice(tuple(x - y for x, y in zip(a, b)))
        if any(a):
            theta_vee = tuple(2 * x / rs.norm2(rs.theta) for x in rs.theta)
            assert rs.pairing(a, theta_vee) == 1


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "B3", "C3", "G2", "D4", "F4"])
def test_weyl_enumeration(name):
    rs = rs_of(name)
    elems = rs.enumerate_weyl()
    assert len(elems) == weyl_order(rs.lie_type)
    assert [e.length for e in elems] == sorted(e.length for e in elems)
    # lengths count inversions
    for e in elems[:40]:
        assert rs.matrix_length(e.action) == e.length
    w0 = rs.longest_element()
    assert w0.length == len(rs.positive_roots)
    assert rs.weyl_mul(w0, w0).length == 0
    # w0 maps positive roots to negative ones
    for a in rs.positive_roots:
        img = rs.weyl_apply(w0, a)
        assert all(x <= 0 for x in img)


def test_enumeration_cap():
    rs = rs_of("F4")
    with pytest.raises(CapExceededError):
        rs.enumerate_weyl(cap=100)


def test_reduced_words():
    rs = rs_of("A2")
    w0 = rs.longest_element()
    words = rs.all_reduced_words(w0)
    assert sorted(words) == [(0, 1, 0), (1, 0, 1)]
    rs2 = rs_of("B2")
    assert len(rs2.all_reduced_words(rs2.longest_element())) == 2
    with pytest.raises(CapExceededError):
        rs_of("B3").all_reduced_words(rs_of("B3").longest_element(), cap=3)


def test_exponents_tables():
    for name in ALL_SMALL:
        t = SimpleLieType.parse(name)
        exps = exponents_of(t)
        rs = rs_of(name)
        assert sum(exps) == len(rs.positive_roots)
        prod = 1
        for e in exps:
            prod *= e + 1
        assert prod == weyl_order(t)


def test_weyl_dim_oracles():
    rs = rs_of("A2")
    # defining module: orbit of the minuscule fundamental weight
    w1 = rs.fund_weights[0]
    orbit = {w1}
    frontier = [w1]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                img = rs.reflect(i, v)
                if img not in orbit:
                    orbit.add(img)
                    nxt.append(img)
        frontier = nxt
    assert rs.weyl_dim(w1) == len(orbit) == 3
    # adjoint: roots plus Cartan
    assert rs.weyl_dim(rs.rho) == len(rs.positive_roots) * 2 + rs.rank == 8
    assert rs.weyl_dim(vzero(2)) == 1
    with pytest.raises(ValueError):
        rs.weyl_dim((Fraction(-1), Fraction(0)))


def test_screening_current_weight_identity():
    # Delta(e^{sqrt(p) alpha_i}) = 1 and Delta(e^{-coroot_i/sqrt(p)}) = 1
    from shiftlab.characters import fock_delta
    from shiftlab.shift import make_case
    for name in ["A2", "B2", "B4", "C4", "D4", "G2", "F4", "A4", "C3"]:
        for m in (1, 2, 3, 4):
            case = make_case(name, "nonsuper", m)
            rs = case.rs
            for i in range(rs.rank):
                assert fock_delta(rs.simple_roots[i], case) == 1
                coroot = rs.simple_coroots[i]
                nu = tuple(-x / case.p for x in coroot)
                assert fock_delta(nu, case) == 1


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "C3"]),
       st.data())
def test_reflections_preserve_pairing(name, data):
    rs = rs_of(name)
    coords = st.fractions(min_value=-4, max_value=4, max_denominator=6)
    mu = tuple(data.draw(coords) for _ in range(rs.rank))
    nu = tuple(data.draw(coords) for _ in range(rs.rank))
    i = data.draw(st.integers(min_value=0, max_value=rs.rank - 1))
    assert rs.pairing(rs.reflect(i, mu), rs.reflect(i, nu)) == rs.pairing(mu, nu)
    assert rs.reflect(i, rs.reflect(i, mu)) == mu
    assert rs.reflect(i, rs.rho) == tuple(
        x - y for x, y in zip(rs.rho, rs.simple_roots[i]))


def test_json_emitter():
    rs = rs_of("B2")
    d = rs.to_json_dict()
    assert d["rho"] == ["3/2", "2/1"]
    assert d["theta_L"] == ["2/1", "2/1"]
    assert d["weyl_order"] == 8
