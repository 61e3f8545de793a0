"""Character layer: conformal weights, alternating sums, oracles."""

from fractions import Fraction
from itertools import product

import pytest

from shiftlab.characters import (
    UnsupportedCaseError,
    _alternating_sum,
    _shell,
    displayed_norm_exponent,
    dot_action,
    fock_delta,
    fock_point,
    ft_char,
    multiplet_char,
    multiplet_ramond_char,
    multiplet_superchar,
    norm_shift,
    ramond_constants,
    ramond_delta,
    verma_char_super,
    walg_vacuum_oracle,
    walg_vacuum_superchar_oracle,
    weight_space_char,
)
from shiftlab.liealg import vadd, vscale, vsub, vzero
from shiftlab.shift import enumerate_lambda, make_case

A1P2 = make_case("A1", "nonsuper", 2)
L0 = enumerate_lambda(A1P2)[0]


def dominant_alphas(rs, max_height):
    return [a for h in range(max_height + 1) for a in _shell(rs, h)
            if rs.is_dominant(a)]


# -- conformal weights ---------------------------------------------------------

def test_fock_delta_values():
    assert fock_delta(vzero(1), A1P2) == 0
    assert fock_delta(A1P2.rs.simple_roots[0], A1P2) == 1
    case = make_case("B1", "super", 2)
    assert fock_delta(case.rs.simple_roots[0], case) == Fraction(1, 2)


def test_weight_space_examples():
    # vacuum weight space of the rank-1 triplet at p=2: q^(1/8)/eta
    ws = weight_space_char(L0, vzero(1), A1P2, 8)
    assert ws.base == Fraction(1, 8) - Fraction(1, 24)
    assert ws.coeffs[:5] == (1, 1, 2, 3, 5)
    moved = dot_action(A1P2, A1P2.rs.simple_element(0).action, vzero(1))
    assert moved == (Fraction(-1),)
    ws2 = weight_space_char(L0, moved, A1P2, 8)
    assert ws2.base == Fraction(9, 8) - Fraction(1, 24)
    assert ws2.coeffs[0] == 1


def test_fock_point_coset_errors():
    with pytest.raises(ValueError):
        fock_point(A1P2, L0, (Fraction(1, 2),))  # wrong coset (not in Q)
    with pytest.raises(ValueError):
        fock_point(A1P2, L0, (Fraction(1, 3),))  # not integral


def test_displayed_norm_exponent_matches_delta():
    for name, variant, m in [("A1", "nonsuper", 2), ("B2", "nonsuper", 2),
                             ("B1", "super", 2), ("B2", "super", 3)]:
        case = make_case(name, variant, m)
        rs = case.rs
        lam = enumerate_lambda(case)[1 % len(enumerate_lambda(case))]
        for w in rs.enumerate_weyl():
            for alpha in dominant_alphas(rs, 2):
                beta = vadd(alpha, lam.bullet_up)
                nu = fock_point(case, lam, dot_action(case, w.action, beta)).nu
                lhs = displayed_norm_exponent(case, lam, alpha, w.action)
                assert lhs == fock_delta(nu, case) + norm_shift(case)


# -- multiplet characters ---------------------------------------------------------

def test_triplet_vacuum():
    ch = multiplet_char(vzero(1), L0, A1P2, 10)
    assert ch.base == Fraction(1, 12)
    assert ch.coeffs[:8] == (1, 0, 1, 1, 2, 2, 4, 4)
    assert A1P2.central_charge == -2


def test_leading_exponent_is_central_charge():
    for name, variant, m in [("A1", "nonsuper", 2), ("A2", "nonsuper", 2),
                             ("B2", "nonsuper", 2), ("B1", "super", 2),
                             ("B2", "super", 3)]:
        case = make_case(name, variant, m)
        ch = multiplet_char(vzero(case.rank), enumerate_lambda(case)[0], case, 6)
        assert ch.base == -case.central_charge / 24


@pytest.mark.parametrize("name,variant,m", [
    ("A1", "nonsuper", 2), ("A1", "nonsuper", 3), ("A2", "nonsuper", 2),
    ("B2", "nonsuper", 2), ("B2", "nonsuper", 3), ("G2", "nonsuper", 3),
    ("B1", "super", 2), ("B1", "super", 3),
])
def test_vacuum_oracle_identity(name, variant, m):
    case = make_case(name, variant, m)
    got = multiplet_char(vzero(case.rank), enumerate_lambda(case)[0], case, 14)
    assert got.same_series(walg_vacuum_oracle(case, 14))


def test_vacuum_oracle_rejects_super_rank2():
    with pytest.raises(UnsupportedCaseError):
        walg_vacuum_oracle(make_case("B2", "super", 2), 10)


def test_multiplet_requires_dominant_lattice_alpha():
    with pytest.raises(ValueError):
        multiplet_char((Fraction(-1),), L0, A1P2, 5)
    with pytest.raises(ValueError):
        multiplet_char((Fraction(1, 2),), L0, A1P2, 5)


def test_wall_vanishing_and_antisymmetry():
    for name, variant, m in [("A1", "nonsuper", 2), ("A2", "nonsuper", 2),
                             ("B2", "super", 3)]:
        case = make_case(name, variant, m)
        rs = case.rs
        lam = enumerate_lambda(case)[0]
        elems = rs.enumerate_weyl()
        for coords in product(range(-2, 2), repeat=rs.rank):
            beta = vadd(tuple(Fraction(c) for c in coords), lam.bullet_up)
            total = _alternating_sum(case, lam, beta, 8)
            shifted = vadd(beta, rs.rho)
            on_wall = any(rs.pairing(shifted, a) == 0 for a in rs.positive_roots)
            if on_wall:
                assert total.is_zero
            for tau in elems[:4]:
                moved = dot_action(case, tau.action, beta)
                lhs = _alternating_sum(case, lam, moved, 8)
                rhs = total if tau.length % 2 == 0 else -total
                assert lhs.same_series(rhs)


def test_dual_route_equality_all_cosets():
    # the dot-action sum over the fixed coset equals the *-action sum over
    # moved cosets for every coset and every small weight, strong or not
    from shiftlab.characters import _alternating_sum_moved
    for case in (make_case("A2", "nonsuper", 2), make_case("B2", "super", 3)):
        rs = case.rs
        for lam in enumerate_lambda(case):
            for coords in product(range(-1, 3), repeat=rs.rank):
                if sum(abs(c) for c in coords) > 4:
                    continue
                beta = vadd(tuple(Fraction(c) for c in coords), lam.bullet_up)
                lhs = _alternating_sum(case, lam, beta, 6)
                rhs = _alternating_sum_moved(case, lam, beta, 6)
                assert lhs.same_series(rhs)


def test_positivity_on_strong_region():
    for name, variant, m in [("A1", "nonsuper", 2), ("B2", "nonsuper", 2),
                             ("B1", "super", 2)]:
        case = make_case(name, variant, m)
        from shiftlab.shift import alcove_inequality
        for lam in enumerate_lambda(case):
            if not alcove_inequality(lam, case):
                continue
            for alpha in dominant_alphas(case.rs, 3):
                ch = multiplet_char(alpha, lam, case, 12)
                assert all(c >= 0 for c in ch.coeffs), (name, lam.label())


# -- supercharacters ------------------------------------------------------------

def test_superchar_rank1_oracle():
    for m in (2, 3):
        case = make_case("B1", "super", m)
        lam0 = enumerate_lambda(case)[0]
        sch = multiplet_superchar(vzero(1), lam0, case, 14)
        assert sch.same_series(walg_vacuum_superchar_oracle(case, 14))


def test_superchar_parity_of_sum():
    # ch + sch = 2 * (even part): all coefficients even
    case = make_case("B2", "super", 3)
    lam0 = enumerate_lambda(case)[0]
    ch = multiplet_char(vzero(2), lam0, case, 10)
    sch = multiplet_superchar(vzero(2), lam0, case, 10)
    total = ch.add(sch)
    assert all(c % 2 == 0 for c in total.coeffs)
    diff = ch.add(-sch)
    assert all(c % 2 == 0 for c in diff.coeffs)


def test_superchar_requires_super():
    with pytest.raises(UnsupportedCaseError):
        multiplet_superchar(vzero(1), L0, A1P2, 5)


# -- Ramond sector ---------------------------------------------------------------

def test_ramond_constants_rank1():
    case = make_case("B1", "ramond", 2)
    rc = ramond_constants(case)
    assert (rc.a, rc.b, rc.c0) == (Fraction(1, 2), 0, Fraction(-1, 8))
    # reproduces the flow map on sample points
    rs = case.rs
    flow = vscale(Fraction(1, case.p), rs.fund_weights[0])
    for k in range(5):
        nu = vscale(k, rs.fund_coweights[0])
        assert ramond_delta(nu, case) == \
            fock_delta(vadd(nu, flow), case) + Fraction(1, 16)


def test_ramond_unsupported_rank3():
    with pytest.raises(UnsupportedCaseError):
        ramond_constants(make_case("B3", "ramond", 2))
    with pytest.raises(UnsupportedCaseError):
        multiplet_ramond_char(vzero(3), enumerate_lambda(
            make_case("B3", "ramond", 2))[0], make_case("B3", "ramond", 2), 5)


def test_ramond_char_even_coefficients():
    for name, m in [("B1", 2), ("B2", 2)]:
        case = make_case(name, "ramond", m)
        lam0 = enumerate_lambda(case)[0]
        ch = multiplet_ramond_char(vzero(case.rank), lam0, case, 12)
        assert all(c % 2 == 0 for c in ch.coeffs)
        assert all(c >= 0 for c in ch.coeffs)


def test_ramond_requires_variant():
    with pytest.raises(UnsupportedCaseError):
        multiplet_ramond_char(vzero(1), L0, A1P2, 5)


# -- full construction character ---------------------------------------------------

def test_ft_char_rank1():
    # 1 * W_0 + 3 * W_{-alpha} + 5 * W_{-2alpha} + ... with dim = 2n+1
    f = ft_char(L0, A1P2, 6)
    explicit = None
    for n in range(0, 12):
        alpha = vscale(n, A1P2.rs.simple_roots[0])
        term = multiplet_char(alpha, L0, A1P2, 6).scale(2 * n + 1)
        explicit = term if explicit is None else explicit.add(term)
    assert f.same_series(explicit.truncate(f.cutoff))
    assert all(c >= 0 for c in f.coeffs)
    assert f.base == Fraction(1, 12)


def test_ft_char_symplectic_fermion_cross_check():
    """At p=2 the rank-1 construction is the even symplectic-fermion pair;
    its four sectors have classical product characters, giving an oracle for
    the full dimension-weighted sum that never touches the Weyl-sum code."""
    case = make_case("A1", "nonsuper", 2)
    lams = enumerate_lambda(case)
    n = 14
    plus = [0] * (n + 1)
    minus = [0] * (n + 1)
    plus[0] = minus[0] = 1
    for part in range(1, n + 1):
        for k in range(n, part - 1, -1):
            plus[k] += plus[k - part]
            minus[k] -= minus[k - part]
    sq_plus = [sum(plus[i] * plus[j - i] for i in range(j + 1)) for j in range(n + 1)]
    sq_minus = [sum(minus[i] * minus[j - i] for i in range(j + 1)) for j in range(n + 1)]
    even = [(a + b) // 2 for a, b in zip(sq_plus, sq_minus)]
    odd = [(a - b) // 2 for a, b in zip(sq_plus, sq_minus)]
    # untwisted sectors: even part is the vacuum coset, odd part the spin coset
    f = ft_char(lams[0], case, n)
    assert f.base == Fraction(1, 12) and list(f.coeffs) == even[:len(f.coeffs)]
    f = ft_char(lams[2], case, n)
    assert f.base == Fraction(13, 12) and list(f.coeffs) == odd[1:len(f.coeffs) + 1]
    # twisted sectors: integer/half-integer split of prod (1 + q^(k-1/2))^2
    tw = [0] * (2 * n + 1)
    tw[0] = 1
    for twok in range(1, 2 * n + 1, 2):
        for k in range(2 * n, twok - 1, -1):
            tw[k] += tw[k - twok]
    sq_tw = [sum(tw[i] * tw[j - i] for i in range(j + 1)) for j in range(2 * n + 1)]
    f = ft_char(lams[1], case, n)
    assert f.base == Fraction(-1, 24)
    assert list(f.coeffs) == sq_tw[0::2][:len(f.coeffs)]   # ground weight -1/8
    f = ft_char(lams[3], case, n)
    assert f.base == Fraction(11, 24)
    assert list(f.coeffs) == sq_tw[1::2][:len(f.coeffs)]   # ground weight 3/8


def test_ft_char_nonnegative_b2():
    case = make_case("B2", "nonsuper", 2)
    f = ft_char(enumerate_lambda(case)[0], case, 4)
    assert all(c >= 0 for c in f.coeffs)
    assert f.base == -case.central_charge / 24


# -- Verma characters ---------------------------------------------------------------

@pytest.mark.parametrize("name,m", [("B1", 1), ("B1", 2), ("B1", 3),
                                    ("B2", 2), ("B2", 3)])
def test_verma_identity(name, m):
    case = make_case(name, "super", m)
    rs = case.rs
    for lam in enumerate_lambda(case):
        for alpha in dominant_alphas(rs, 2):
            mu = vscale(case.p, vsub(lam.value, alpha))
            got = verma_char_super(mu, case, 12)
            want = weight_space_char(lam, vadd(alpha, lam.bullet_up), case, 12)
            assert got.same_series(want)


def test_verma_dot_orbit_invariance():
    case = make_case("B2", "super", 3)
    rs = case.rs
    shift_vec = vscale(case.p - 1, rs.rho)
    for coords in product(range(-2, 3), repeat=2):
        mu = tuple(Fraction(c) for c in coords)
        for w in rs.enumerate_weyl():
            moved = vadd(rs.weyl_apply(w, vsub(mu, shift_vec)), shift_vec)
            assert verma_char_super(mu, case, 8).same_series(
                verma_char_super(moved, case, 8))


def test_verma_requires_super():
    with pytest.raises(UnsupportedCaseError):
        verma_char_super(vzero(1), A1P2, 5)
