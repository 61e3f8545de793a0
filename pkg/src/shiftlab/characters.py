"""Characters of screening kernels on rescaled root lattices.

All series are CFT-normalized: a module character starts at
``q^(Delta_min - c/24)``.  Lattice directions are kept unscaled (a physical
lattice vector is sqrt(p) times the stored one), which keeps every exponent
rational.

The alternating Weyl sums are evaluated in two ways, via the dot action on
the fixed coset and via the * action on moved cosets, and the two are checked
against each other term by term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .liealg import (
    CapExceededError,
    Vec,
    mat_vec,
    vadd,
    vneg,
    vscale,
    vsub,
    vzero,
)
from .qseries import FermionKind, QSeries, eta_inv_pow, fermion_char
from .shift import (
    LambdaParam,
    ShiftCase,
    Variant,
    alcove_inequality,
    system,
)


class UnsupportedCaseError(ValueError):
    """Raised where no exact construction is available (and none is claimed)."""


# ---------------------------------------------------------------------------
# conformal weights of lattice points
# ---------------------------------------------------------------------------

def fock_delta(nu: Vec, case: ShiftCase) -> Fraction:
    """Conformal weight of the lattice point sqrt(p)*nu under the shifted
    conformal vector of the case."""
    rs = case.rs
    p = case.p
    n2 = rs.norm2(nu)
    if case.variant is Variant.NONSUPER:
        return Fraction(p, 2) * n2 - p * rs.pairing(nu, rs.rho) \
            + rs.pairing(nu, rs.rho_check)
    return Fraction(p, 2) * n2 - (p - 1) * rs.pairing(nu, rs.rho)


def norm_shift(case: ShiftCase) -> Fraction:
    """Constant completing fock_delta to a pure squared norm over 2p."""
    rs = case.rs
    if case.variant is Variant.NONSUPER:
        v = vsub(vscale(case.p, rs.rho), rs.rho_check)
    else:
        v = vscale(case.p - 1, rs.rho)
    return rs.norm2(v) / (2 * case.p)


@dataclass(frozen=True)
class FockPoint:
    nu: Vec          # unscaled lattice direction, nu in lambda + Q
    coset: LambdaParam
    weight: Vec      # Cartan weight: ceil(-nu) against the simple coroots


def fock_point(case: ShiftCase, lam: LambdaParam, beta: Vec) -> FockPoint:
    """The unique lattice point of the lam-module with Cartan weight beta."""
    rs = case.rs
    if not rs.in_weight_lattice(beta):
        raise ValueError(f"{beta} is not an integral weight")
    if not rs.in_root_lattice(vsub(beta, lam.bullet_up)):
        raise ValueError(
            f"weight {beta} is not in the Cartan support coset of {lam.label()}")
    box = vadd(lam.value, lam.bullet_up)
    nu = vsub(box, beta)
    for i in range(rs.rank):
        t = rs.copairing(vneg(nu), i)
        c = t.numerator // t.denominator + (0 if t.denominator == 1 else 1)
        if c != rs.copairing(beta, i):
            raise AssertionError("ceiling-weight mismatch")
    return FockPoint(nu, lam, beta)


# ---------------------------------------------------------------------------
# Ramond constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamondConstants:
    """Exact coefficients of the conformal-weight correction in the twisted
    sector: delta(nu) picks up a(alpha_r, nu) + b(alpha_{r-1}, nu) + c0.

    Derived by matching the correction against the flow map
    nu -> nu + fund_weight_r/p on spanning sets of lattice points; a rank
    where no such (a, b, c0) exists is rejected.
    """

    a: Fraction
    b: Fraction
    c0: Fraction


@lru_cache(maxsize=None)
def ramond_constants(case: ShiftCase) -> RamondConstants:
    if not case.variant.is_super:
        raise UnsupportedCaseError("Ramond constants exist only for the super family")
    rs = case.rs
    r = rs.rank
    p = case.p
    h = vscale(Fraction(1, p), rs.fund_weights[r - 1])

    def rhs(nu: Vec) -> Fraction:
        # correction = delta(nu + h) - delta(nu) = (w_r, nu) + |w_r|^2/2p - (1-1/p)(w_r, rho)
        return fock_delta(vadd(nu, h), case) - fock_delta(nu, case)

    samples = [vzero(r)] + list(rs.fund_coweights)
    samples += [vadd(a, b) for a, b in zip(rs.fund_coweights, rs.fund_coweights[1:])]
    samples.append(vscale(2, rs.fund_coweights[0]))
    samples.append(vscale(3, rs.fund_coweights[-1]))

    def coeffs(nu: Vec) -> tuple[Fraction, ...]:
        cols = [rs.pairing(rs.simple_roots[r - 1], nu)]
        if r >= 2:
            cols.append(rs.pairing(rs.simple_roots[r - 2], nu))
        cols.append(Fraction(1))
        return tuple(cols)

    unknowns = 2 if r == 1 else 3
    rows = [list(coeffs(nu)) + [rhs(nu)] for nu in samples]
    sol = _solve_exact(rows, unknowns)
    if sol is None:
        raise UnsupportedCaseError(
            f"no two-root correction reproduces the twisted weights for "
            f"{case.case_id()} (rank {r})")
    a = sol[0]
    b = sol[1] if r >= 2 else Fraction(0)
    c0 = sol[-1]
    for nu in samples:
        got = a * rs.pairing(rs.simple_roots[r - 1], nu) + c0
        if r >= 2:
            got += b * rs.pairing(rs.simple_roots[r - 2], nu)
        assert got == rhs(nu)
    return RamondConstants(a, b, c0)


def _solve_exact(rows: list[list[Fraction]], unknowns: int):
    """Unique exact solution of an overdetermined augmented system, or None
    if the system is inconsistent or underdetermined."""
    mat = [row[:] for row in rows]
    pivots = []
    rank = 0
    for col in range(unknowns):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    if rank < unknowns:
        return None
    for i in range(rank, len(mat)):
        if mat[i][-1] != 0:
            return None
    sol = [Fraction(0)] * unknowns
    for i, col in enumerate(pivots):
        sol[col] = mat[i][-1]
    return sol


def ramond_delta(nu: Vec, case: ShiftCase) -> Fraction:
    """Twisted-sector conformal weight of the point sqrt(p)*nu, including the
    fermionic ground-state energy 1/16."""
    rc = ramond_constants(case)
    rs = case.rs
    r = rs.rank
    out = fock_delta(nu, case) + rc.a * rs.pairing(rs.simple_roots[r - 1], nu) \
        + rc.c0 + Fraction(1, 16)
    if r >= 2:
        out += rc.b * rs.pairing(rs.simple_roots[r - 2], nu)
    return out


# ---------------------------------------------------------------------------
# weight-space characters
# ---------------------------------------------------------------------------

def _tail(case: ShiftCase, order: int, twisted: bool) -> QSeries:
    r = case.rank
    tail = eta_inv_pow(r, order)
    if case.variant is Variant.NONSUPER:
        return tail
    kind = FermionKind.R_TWISTED if twisted else FermionKind.NS_CH
    return tail.mul(fermion_char(kind, order))


def _sch_tail(case: ShiftCase, order: int) -> QSeries:
    return eta_inv_pow(case.rank, order).mul(fermion_char(FermionKind.NS_SCH, order))


def weight_space_char(lam: LambdaParam, beta: Vec, case: ShiftCase,
                      order: int) -> QSeries:
    """CFT-normalized character of the Cartan weight space at ``beta``."""
    pt = fock_point(case, lam, beta)
    twisted = case.variant is Variant.SUPER_RAMOND
    delta = ramond_delta(pt.nu, case) if twisted else fock_delta(pt.nu, case)
    base = delta - case.central_charge / 24
    tail = _tail(case, order, twisted)
    return tail.qshift(base - tail.base)


def dot_action(case: ShiftCase, w_action, beta: Vec) -> Vec:
    """sigma o beta = sigma(beta + rho) - rho."""
    rs = case.rs
    return vsub(mat_vec(w_action, vadd(beta, rs.rho)), rs.rho)


def _check_multiplet_inputs(case: ShiftCase, alpha: Vec, lam: LambdaParam):
    rs = case.rs
    if not rs.in_root_lattice(alpha) or not rs.is_dominant(alpha):
        raise ValueError(f"{alpha} is not a dominant root-lattice weight")
    return alcove_inequality(lam, case)


def _alternating_sum(case: ShiftCase, lam: LambdaParam, beta: Vec, order: int,
                     twisted: bool = False) -> QSeries:
    """sum over W of (-1)^len q^(weight of the dot-moved Cartan weight),
    sharing one tail series across the orbit."""
    sys = system(case)
    rs = case.rs
    tail = _tail(case, order, twisted)
    acc: QSeries | None = None
    for w in sys.weyl:
        moved = dot_action(case, w.action, beta)
        pt = fock_point(case, lam, moved)
        delta = ramond_delta(pt.nu, case) if twisted else fock_delta(pt.nu, case)
        term = tail.qshift(delta - case.central_charge / 24 - tail.base)
        if w.length % 2:
            term = -term
        acc = term if acc is None else acc.add(term)
    return acc


def _alternating_sum_moved(case: ShiftCase, lam: LambdaParam, beta: Vec,
                           order: int) -> QSeries:
    """Same sum through the * action: terms live on the moved cosets."""
    sys = system(case)
    acc: QSeries | None = None
    l_idx = sys.index[lam.key()]
    for w_idx, w in enumerate(sys.weyl):
        moved_lam = sys.lambdas[sys.act_index(w_idx, l_idx)]
        shifted_weight = vsub(beta, sys.shift_value(w_idx, l_idx))
        term = weight_space_char(moved_lam, shifted_weight, case, order)
        if w.length % 2:
            term = -term
        acc = term if acc is None else acc.add(term)
    return acc


def _alternating_sum_ramond_split(case: ShiftCase, lam: LambdaParam, beta: Vec,
                                  order: int) -> QSeries:
    """Twisted sum with the flow-independent part read off the *-moved points
    and the flow correction off the dot points.  Equal to the coherent sum
    because untwisted weights agree termwise across the two labelings, while
    the flow correction itself is not Weyl-equivariant."""
    sys = system(case)
    rs = case.rs
    rc = ramond_constants(case)
    r = rs.rank
    tail = _tail(case, order, twisted=True)
    l_idx = sys.index[lam.key()]
    acc: QSeries | None = None
    for w_idx, w in enumerate(sys.weyl):
        moved_lam = sys.lambdas[sys.act_index(w_idx, l_idx)]
        nu_moved = fock_point(case, moved_lam,
                              vsub(beta, sys.shift_value(w_idx, l_idx))).nu
        nu_dot = fock_point(case, lam, dot_action(case, w.action, beta)).nu
        delta = fock_delta(nu_moved, case) \
            + rc.a * rs.pairing(rs.simple_roots[r - 1], nu_dot) + rc.c0 \
            + Fraction(1, 16)
        if r >= 2:
            delta += rc.b * rs.pairing(rs.simple_roots[r - 2], nu_dot)
        term = tail.qshift(delta - case.central_charge / 24 - tail.base)
        if w.length % 2:
            term = -term
        acc = term if acc is None else acc.add(term)
    return acc


def multiplet_char(alpha: Vec, lam: LambdaParam, case: ShiftCase,
                   order: int) -> QSeries:
    """Character of the multiplicity space attached to (alpha, lam)."""
    _check_multiplet_inputs(case, alpha, lam)
    beta = vadd(alpha, lam.bullet_up)
    twisted = case.variant is Variant.SUPER_RAMOND
    out = _alternating_sum(case, lam, beta, order, twisted)
    if twisted:
        alt = _alternating_sum_ramond_split(case, lam, beta, order)
    else:
        alt = _alternating_sum_moved(case, lam, beta, order)
    assert out.same_series(alt), "the two alternating-sum routes disagree"
    return out


def multiplet_superchar(alpha: Vec, lam: LambdaParam, case: ShiftCase,
                        order: int) -> QSeries:
    """Signed (supertrace) variant; only meaningful in the super family."""
    if case.variant is not Variant.SUPER:
        raise UnsupportedCaseError("supercharacters require the super variant")
    _check_multiplet_inputs(case, alpha, lam)
    sys = system(case)
    rs = case.rs
    beta = vadd(alpha, lam.bullet_up)
    tail = _sch_tail(case, order)
    acc: QSeries | None = None
    for w in sys.weyl:
        moved = dot_action(case, w.action, beta)
        f = rs.pairing(moved, rs.simple_roots[rs.rank - 1])
        fsign = f.numerator // f.denominator  # floor
        pt = fock_point(case, lam, moved)
        term = tail.qshift(fock_delta(pt.nu, case)
                           - case.central_charge / 24 - tail.base)
        if (w.length + fsign) % 2:
            term = -term
        acc = term if acc is None else acc.add(term)
    return acc


def multiplet_ramond_char(alpha: Vec, lam: LambdaParam, case: ShiftCase,
                          order: int) -> QSeries:
    """Twisted-sector character; needs the derived twist constants."""
    if case.variant is not Variant.SUPER_RAMOND:
        raise UnsupportedCaseError("Ramond characters require the ramond variant")
    ramond_constants(case)  # raises for unsupported ranks
    return multiplet_char(alpha, lam, case, order)


# ---------------------------------------------------------------------------
# full construction characters
# ---------------------------------------------------------------------------

def _min_term_base(case: ShiftCase, lam: LambdaParam, alpha: Vec) -> Fraction:
    sys = system(case)
    beta = vadd(alpha, lam.bullet_up)
    twisted = case.variant is Variant.SUPER_RAMOND
    best = None
    for w in sys.weyl:
        pt = fock_point(case, lam, dot_action(case, w.action, beta))
        d = ramond_delta(pt.nu, case) if twisted else fock_delta(pt.nu, case)
        if best is None or d < best:
            best = d
    return best - case.central_charge / 24


def _height_bound(case: ShiftCase, lam: LambdaParam, cutoff: Fraction) -> int:
    """Height past which no dominant alpha can contribute below the cutoff.

    For dominant alpha of height h, every term exponent is at least
    (1/2p)(p*|alpha + bullet + rho| - B)^2 - shift - c/24 with a fixed B, and
    |alpha + bullet + rho| >= (h + s0)/|rho_check| by Cauchy-Schwarz.  Minimal
    weights therefore grow quadratically in h; a float scan with a margin
    finds the first safely-clearing height.
    """
    import math as _m

    rs = case.rs
    p = case.p
    box = vadd(lam.value, lam.bullet_up)
    shift_vec = rs.rho_check if case.variant is Variant.NONSUPER else rs.rho
    b0 = _m.sqrt(float(rs.norm2(vadd(vscale(p, box), shift_vec))))
    if case.variant is Variant.SUPER_RAMOND:
        b0 += p * _m.sqrt(float(rs.norm2(rs.fund_weights[rs.rank - 1]))) / p
    rho_chk = _m.sqrt(float(rs.norm2(rs.rho_check)))
    s0 = float(rs.pairing(vadd(lam.bullet_up, rs.rho), rs.rho_check))
    floor_const = float(norm_shift(case) + case.central_charge / 24)
    target = float(cutoff) + 2.0
    h = 0
    while True:
        radius = max(0.0, (h + s0) / rho_chk)
        lower = max(0.0, p * radius - b0) ** 2 / (2 * p) - floor_const - 1e-9
        if lower > target and h > 0:
            return h
        h += 1
        if h > 10**6:  # pragma: no cover
            raise RuntimeError("height bound scan failed to terminate")


def ft_char(lam: LambdaParam, case: ShiftCase, order: int,
            alpha_cap: int = 10**4) -> QSeries:
    """Character of the full construction: the dimension-weighted sum of the
    multiplicity-space characters over dominant root-lattice weights.

    Dominant weights are scanned by height up to a proven quadratic-growth
    bound; each is included only if the minimal conformal weight of its orbit
    clears the cutoff with a safety margin of 2 (an exact per-weight check).
    """
    rs = case.rs
    vacuum_base = -case.central_charge / 24
    cutoff = vacuum_base + order
    acc = QSeries.zero(cutoff)
    n_terms = 0
    for height in range(_height_bound(case, lam, cutoff) + 1):
        for alpha in _shell(rs, height):
            if not rs.is_dominant(alpha):
                continue
            if _min_term_base(case, lam, alpha) > cutoff + 2:
                continue
            n_terms += 1
            if n_terms > alpha_cap:
                raise CapExceededError(
                    f"more than {alpha_cap} dominant weights below the cutoff")
            dim = rs.weyl_dim(vadd(alpha, lam.bullet_up))
            acc = acc.add(multiplet_char(alpha, lam, case, order).scale(dim))
    return acc.truncate(cutoff)


@lru_cache(maxsize=None)
def _shell(rs, height: int) -> tuple[Vec, ...]:
    """Root-lattice vectors with nonnegative coordinates summing to height."""
    r = rs.rank

    def rec(i: int, remaining: int):
        if i == r - 1:
            yield (remaining,)
            return
        for c in range(remaining + 1):
            for rest in rec(i + 1, remaining - c):
                yield (c,) + rest

    return tuple(tuple(Fraction(c) for c in coords) for coords in rec(0, height))


# ---------------------------------------------------------------------------
# independent oracles and Verma characters
# ---------------------------------------------------------------------------

def walg_vacuum_oracle(case: ShiftCase, order: int) -> QSeries:
    """Vacuum character of the corresponding principal W-(super)algebra,
    built directly from its free generators.

    Nonsuper: one bosonic tower per exponent e_j, modes from e_j + 1 up.
    Super rank 1: the rank-1 super-Virasoro vacuum (one even generator with
    modes from 2, one odd with half-integer modes from 3/2).  Higher super
    ranks have no independently constructed oracle and are rejected.
    """
    rs = case.rs
    base = -case.central_charge / 24
    if case.variant is Variant.NONSUPER:
        coeffs = [1] + [0] * order
        for e in rs.exponents:
            # multiply by 1/prod_{n > e} (1 - q^n)
            for n in range(e + 1, order + 1):
                for k in range(n, order + 1):
                    coeffs[k] += coeffs[k - n]
        return QSeries.make(base, 1, coeffs, base + order)
    if case.variant is not Variant.SUPER or rs.rank != 1:
        raise UnsupportedCaseError(
            "no independent vacuum oracle beyond the rank-1 super case")
    n2 = 2 * order
    coeffs = [1] + [0] * n2
    for n in range(2, order + 1):  # even generator, integer modes >= 2
        for k in range(2 * n, n2 + 1):
            coeffs[k] += coeffs[k - 2 * n]
    for twok in range(3, n2 + 1, 2):  # odd generator, modes 3/2, 5/2, ...
        for k in range(n2, twok - 1, -1):
            coeffs[k] += coeffs[k - twok]
    return QSeries.make(base, 2, coeffs, base + order)


def walg_vacuum_superchar_oracle(case: ShiftCase, order: int) -> QSeries:
    """Supertrace analogue of the rank-1 super oracle (odd modes signed)."""
    if case.variant is not Variant.SUPER or case.rank != 1:
        raise UnsupportedCaseError("supertrace oracle only for super rank 1")
    base = -case.central_charge / 24
    n2 = 2 * order
    coeffs = [1] + [0] * n2
    for n in range(2, order + 1):
        for k in range(2 * n, n2 + 1):
            coeffs[k] += coeffs[k - 2 * n]
    for twok in range(3, n2 + 1, 2):
        for k in range(n2, twok - 1, -1):
            coeffs[k] -= coeffs[k - twok]
    return QSeries.make(base, 2, coeffs, base + order)


def verma_char_super(mu: Vec, case: ShiftCase, order: int) -> QSeries:
    """Verma-module character over the super W-algebra, parametrized so that
    mu = p*(lam - alpha) matches the weight space at alpha + bullet."""
    if case.variant is not Variant.SUPER:
        raise UnsupportedCaseError("Verma characters are for the super variant")
    rs = case.rs
    v = vsub(mu, vscale(case.p - 1, rs.rho))
    exponent = rs.norm2(v) / (2 * case.p) - norm_shift(case) \
        - case.central_charge / 24
    tail = _tail(case, order, twisted=False)
    return tail.qshift(exponent - tail.base)


def displayed_norm_exponent(case: ShiftCase, lam: LambdaParam, alpha: Vec,
                            w_action) -> Fraction:
    """Closed-form exponent of one alternating-sum term as a squared norm."""
    rs = case.rs
    box = vadd(lam.value, lam.bullet_up)
    inner = vadd(alpha, vadd(lam.bullet_up, rs.rho))
    if case.variant is Variant.NONSUPER:
        v = vadd(vneg(vscale(case.p, mat_vec(w_action, inner))),
                 vadd(vscale(case.p, box), rs.rho_check))
    else:
        v = vadd(vneg(vscale(case.p, mat_vec(w_action, inner))),
                 vadd(vscale(case.p, box), rs.rho))
    return rs.norm2(v) / (2 * case.p)
