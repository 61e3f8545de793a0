"""Affine Weyl combinatorics for the two screening families.

The nonsuper family works in the Langlands-dual affine group W x lacing*Q
(translations indexed by lacing times the root lattice); the super family in
the twisted group W x Q.  In both, the shifted fundamental chamber on the
finite part is cut out by dominance together with one affine wall against the
coroot of the highest short root, and reduction is a monotone alcove walk
across violated walls.

Affine weights carry (finite part, Lambda_0 coefficient, delta coefficient);
the circle action is w o mu = w(mu + rho_hat) - rho_hat.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .liealg import (
    IntMat,
    Vec,
    WeylElement,
    identity_mat,
    mat_mul,
    mat_vec,
    vadd,
    vneg,
    vscale,
    vsub,
    vzero,
)
from .shift import LambdaParam, ShiftCase, Variant, alcove_inequality, enumerate_lambda


@dataclass(frozen=True)
class AffineWeight:
    finite: Vec
    level: Fraction          # coefficient of Lambda_0
    delta_coeff: Fraction

    def describe(self) -> dict:
        return {
            "finite": [str(x) for x in self.finite],
            "level": str(self.level),
            "delta": str(self.delta_coeff),
        }


@dataclass(frozen=True)
class AffineWeylElt:
    finite_part: WeylElement
    translation: Vec

    def describe(self) -> dict:
        return {
            "word": [i + 1 for i in self.finite_part.word],
            "translation": [str(x) for x in self.translation],
        }


@dataclass(frozen=True)
class ReduceResult:
    elt: AffineWeylElt
    weight: AffineWeight
    on_wall: bool


class _Family:
    """Per-case affine conventions shared by all operations."""

    def __init__(self, case: ShiftCase):
        rs = case.rs
        self.case = case
        self.rs = rs
        if case.variant is Variant.NONSUPER:
            self.rho_hat_fin = rs.rho_check
            self.rho_hat_level = Fraction(rs.dual_coxeter_L)
            self.lattice_scale = rs.lacing     # translations live in lacing*Q
            self.form_factor = Fraction(1, rs.lacing)
            self.level_in = Fraction(case.m - rs.dual_coxeter_L)
        else:
            self.rho_hat_fin = rs.rho
            self.rho_hat_level = Fraction(2 * rs.rank + 1, 2)
            self.lattice_scale = 1
            self.form_factor = Fraction(1)
            self.level_in = Fraction(case.m - rs.rank - 1)
        # coroot-pairing row of the highest short root and its reflection
        r = rs.rank
        ts = rs.theta_s
        n2 = rs.norm2(ts)
        self.theta_s_row = tuple(
            Fraction(2) * sum(rs.gram[j][k] * ts[k] for k in range(r)) / n2
            for j in range(r))
        assert all(x.denominator == 1 for x in self.theta_s_row)
        self.theta_s_refl: IntMat = tuple(
            tuple(int((1 if k == j else 0) - ts[k] * self.theta_s_row[j])
                  for j in range(r))
            for k in range(r))

    def trans_scale(self, mu: AffineWeight) -> Fraction:
        """Multiplier applied to a translation vector at this weight's level
        (computed on the rho-shifted weight)."""
        if self.case.variant is Variant.NONSUPER:
            return mu.level + self.rho_hat_level
        return 2 * (mu.level + self.rho_hat_level)

    def bound(self, scale: Fraction) -> Fraction:
        """Upper wall value for (G, theta_s_coroot) in the shifted chamber."""
        if self.case.variant is Variant.NONSUPER:
            return self.rs.lacing * scale
        return scale

    def pair_theta_s_coroot(self, g: Vec) -> Fraction:
        return sum(r * x for r, x in zip(self.theta_s_row, g))

    def check_translation(self, b: Vec):
        for x in b:
            v = x / self.lattice_scale
            if v.denominator != 1:
                raise ValueError(
                    f"translation {b} is not in {self.lattice_scale}*Q")


@lru_cache(maxsize=None)
def _family(case: ShiftCase) -> _Family:
    return _Family(case)


# ---------------------------------------------------------------------------
# group elements and the circle action
# ---------------------------------------------------------------------------

def affine_identity(case: ShiftCase) -> AffineWeylElt:
    return AffineWeylElt(case.rs.identity_element(), vzero(case.rank))


def affine_elt(case: ShiftCase, finite: WeylElement, translation: Vec) -> AffineWeylElt:
    _family(case).check_translation(translation)
    return AffineWeylElt(finite, translation)


def affine_mul(case: ShiftCase, a: AffineWeylElt, b: AffineWeylElt) -> AffineWeylElt:
    """(s_a t_A)(s_b t_B) = (s_a s_b) t_{s_b^{-1} A + B}."""
    rs = case.rs
    fin = rs.weyl_mul(a.finite_part, b.finite_part)
    b_inv = rs.weyl_inv(b.finite_part)
    trans = vadd(mat_vec(b_inv.action, a.translation), b.translation)
    return AffineWeylElt(fin, trans)


def affine_inv(case: ShiftCase, a: AffineWeylElt) -> AffineWeylElt:
    rs = case.rs
    fin = rs.weyl_inv(a.finite_part)
    return AffineWeylElt(fin, vneg(mat_vec(a.finite_part.action, a.translation)))


def dot_act(w: AffineWeylElt, mu: AffineWeight, case: ShiftCase) -> AffineWeight:
    """Circle action w o mu = (s t_B)(mu + rho_hat) - rho_hat."""
    fam = _family(case)
    rs = case.rs
    fam.check_translation(w.translation)
    fin = vadd(mu.finite, fam.rho_hat_fin)
    level = mu.level + fam.rho_hat_level
    delta = mu.delta_coeff
    scale = fam.trans_scale(mu)
    b = w.translation
    if any(x != 0 for x in b):
        u = fam.form_factor
        delta = delta - u * rs.pairing(fin, b) - u * scale / 2 * rs.norm2(b)
        fin = vadd(fin, vscale(scale, b))
    fin = mat_vec(w.finite_part.action, fin)
    return AffineWeight(vsub(fin, fam.rho_hat_fin), level - fam.rho_hat_level, delta)


# ---------------------------------------------------------------------------
# chamber membership and reduction
# ---------------------------------------------------------------------------

def chamber_position(mu: AffineWeight, case: ShiftCase):
    """(is_inside, is_on_wall) of mu against the shifted chamber."""
    fam = _family(case)
    rs = case.rs
    g = vadd(mu.finite, fam.rho_hat_fin)
    scale = fam.trans_scale(mu)
    bound = fam.bound(scale)
    wall = False
    for i in range(rs.rank):
        c = rs.copairing(g, i)
        if c < 0:
            return False, False
        if c == 0:
            wall = True
    top = fam.pair_theta_s_coroot(g)
    if top > bound:
        return False, False
    if top == bound:
        wall = True
    return True, wall


def _wall_stabilizer(fam: _Family, g: Vec, bound: Fraction, cap: int = 2000):
    """All affine maps generated by the chamber walls through g (as
    (matrix, shift) pairs); g must lie in the closed chamber."""
    rs = fam.rs
    r = rs.rank
    gens: list[tuple[IntMat, Vec]] = []
    for i in range(r):
        if rs.copairing(g, i) == 0:
            gens.append((rs.simple_reflection_matrix(i), vzero(r)))
    if fam.pair_theta_s_coroot(g) == bound:
        gens.append((fam.theta_s_refl, vscale(bound, rs.theta_s)))
    ident = (identity_mat(r), vzero(r))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for mat, vec_ in frontier:
            for gm, gv in gens:
                cand = (mat_mul(gm, mat), vadd(mat_vec(gm, vec_), gv))
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
                    if len(seen) > cap:  # pragma: no cover
                        raise RuntimeError("wall stabilizer blew past its cap")
        frontier = nxt
    return seen


def dominant_reduce(mu: AffineWeight, case: ShiftCase) -> ReduceResult:
    """The affine element w with w o mu in the closed shifted chamber,
    found by reflecting across violated walls.

    For regular input the element is unique.  On a wall the valid reducers
    form a coset of the wall stabilizer; the canonical representative is the
    minimal one under (finite length, word, translation), which agrees with
    the unique reducer of nearby regular inputs.
    """
    fam = _family(case)
    rs = case.rs
    r = rs.rank
    scale = fam.trans_scale(mu)
    if scale <= 0:
        raise ValueError("nonpositive shifted level; reduction undefined")
    bound = fam.bound(scale)
    g = vadd(mu.finite, fam.rho_hat_fin)
    sigma = identity_mat(r)
    tvec = vzero(r)
    refl = [rs.simple_reflection_matrix(i) for i in range(r)]
    guard = 0
    while True:
        guard += 1
        if guard > 100000:  # pragma: no cover
            raise RuntimeError("alcove walk failed to terminate")
        for i in range(r):
            if rs.copairing(g, i) < 0:
                g = mat_vec(refl[i], g)
                sigma = mat_mul(refl[i], sigma)
                tvec = mat_vec(refl[i], tvec)
                break
        else:
            top = fam.pair_theta_s_coroot(g)
            if top > bound:
                # affine map F -> refl(F) + bound*theta_s
                g = vadd(mat_vec(fam.theta_s_refl, g),
                         vscale(bound, rs.theta_s))
                sigma = mat_mul(fam.theta_s_refl, sigma)
                tvec = vadd(mat_vec(fam.theta_s_refl, tvec),
                            vscale(bound, rs.theta_s))
                continue
            break

    def build(mat: IntMat, vec_: Vec) -> AffineWeylElt:
        fin_elt = rs.element_from_matrix(mat)
        inv = rs.weyl_inv(fin_elt)
        b = vscale(Fraction(1) / scale, mat_vec(inv.action, vec_))
        return affine_elt(case, fin_elt, b)

    inside, wall = True, False
    stab = _wall_stabilizer(fam, g, bound)
    if len(stab) > 1:
        wall = True
        best = None
        for smat, svec in stab:
            cand = build(mat_mul(smat, sigma), vadd(mat_vec(smat, tvec), svec))
            key = (cand.finite_part.length, cand.finite_part.word, cand.translation)
            if best is None or key < best[0]:
                best = (key, cand)
        elt = best[1]
    else:
        elt = build(sigma, tvec)
    reduced = dot_act(elt, mu, case)
    inside, wall2 = chamber_position(reduced, case)
    assert inside and wall == wall2
    return ReduceResult(elt, reduced, wall)


# ---------------------------------------------------------------------------
# the distinguished elements attached to (alpha, lambda)
# ---------------------------------------------------------------------------

def affine_input(case: ShiftCase, alpha: Vec, lam: LambdaParam) -> AffineWeight:
    """Highest weight whose reduction drives the decomposition bookkeeping:
    -p(alpha + bullet + rho') + p*box + level*Lambda_0, with rho' = rho for
    the nonsuper family and rho_check for the super one."""
    fam = _family(case)
    rs = case.rs
    box = vadd(lam.value, lam.bullet_up)
    inner = rs.rho if case.variant is Variant.NONSUPER else rs.rho_check
    fin = vadd(vscale(-case.p, vadd(alpha, vadd(lam.bullet_up, inner))),
               vscale(case.p, box))
    return AffineWeight(fin, fam.level_in, Fraction(0))


class WallReductionError(RuntimeError):
    """Raised when a y-element is requested outside the strong region."""


def _strong_lambdas_with_bullet(case: ShiftCase, bullet_index: int):
    return [lam for lam in enumerate_lambda(case)
            if lam.bullet_index == bullet_index and alcove_inequality(lam, case)]


def mu_lambda(alpha: Vec, lam: LambdaParam, case: ShiftCase) -> AffineWeight:
    """The chamber representative of the input weight for (alpha, lam)."""
    return dominant_reduce(affine_input(case, alpha, lam), case).weight


def y_alpha(alpha: Vec, bullet_index: int, case: ShiftCase) -> AffineWeylElt:
    """Inverse of the common chamber reducer over the strong region.

    Regular inputs determine their reducer uniquely; on the walls reached by
    boundary digits many reducers are valid, so the canonical one is the
    reducer that works for every strong coset with the given minuscule part
    (interior cosets first).  Digit independence fails loudly if no common
    reducer exists.
    """
    strong = _strong_lambdas_with_bullet(case, bullet_index)
    if not strong:
        raise WallReductionError(
            f"no strong representative with minuscule index {bullet_index} "
            f"in {case.case_id()}")
    candidates: list[tuple[bool, AffineWeylElt]] = []
    seen_keys = set()
    for lam in strong:
        res = dominant_reduce(affine_input(case, alpha, lam), case)
        key = (res.elt.finite_part.action, res.elt.translation)
        if key not in seen_keys:
            seen_keys.add(key)
            candidates.append((res.on_wall, res.elt))
    candidates.sort(key=lambda pair: pair[0])  # interior-derived first
    for _, reducer in candidates:
        if all(chamber_position(dot_act(reducer, affine_input(case, alpha, lam),
                                        case), case)[0]
               for lam in strong):
            return affine_inv(case, reducer)
    raise AssertionError(
        f"reducer depends on the box digits for bullet {bullet_index} "
        f"in {case.case_id()}")


def y_sigma(w: WeylElement, alpha: Vec, bullet_index: int,
            case: ShiftCase) -> AffineWeylElt:
    """t_{c(beta - w o beta)} y_{alpha, bullet} with beta = alpha + bullet and
    c the translation-lattice scale of the family."""
    rs = case.rs
    fam = _family(case)
    beta = vadd(alpha, rs.minuscule[bullet_index])
    moved = vsub(mat_vec(w.action, vadd(beta, rs.rho)), rs.rho)
    trans = vscale(fam.lattice_scale, vsub(beta, moved))
    base = y_alpha(alpha, bullet_index, case)
    return affine_mul(case, AffineWeylElt(rs.identity_element(), trans), base)


def closed_form_y_super(alpha: Vec, bullet_index: int,
                        case: ShiftCase) -> AffineWeylElt:
    """Closed forms in the twisted family: a pure translation by
    -(alpha + rho_check) for trivial minuscule part; for the spin coset the
    translation composed with the minuscule element w0 * w0(J), J the nodes
    stabilizing the spin weight.  At rank 1 the latter is the single simple
    reflection."""
    if case.variant is Variant.NONSUPER:
        raise ValueError("closed forms are for the super family")
    rs = case.rs
    trans = vneg(vadd(alpha, rs.rho_check))
    t_elt = AffineWeylElt(rs.identity_element(), trans)
    if bullet_index == 0:
        return t_elt
    v = rs.weyl_mul(rs.longest_element(), rs.parabolic_longest(range(rs.rank - 1)))
    return affine_mul(case, t_elt, AffineWeylElt(rs.weyl_inv(v), vzero(rs.rank)))


def alcove_json(case: ShiftCase, alpha: Vec, lam: LambdaParam) -> dict:
    y = y_alpha(alpha, lam.bullet_index, case)
    red = mu_lambda(alpha, lam, case)
    return {
        "family": "twisted" if case.variant.is_super else "untwisted-dual",
        "case": case.case_id(),
        "alpha": [str(x) for x in alpha],
        "lambda": lam.label(),
        "lambda_bullet": lam.bullet_index,
        "y": y.describe(),
        "mu_lambda": red.describe(),
    }
