"""Exact root-system, lattice, and Weyl-group layer for the finite simple Lie types.

Everything is computed over ``fractions.Fraction``; no floating point enters at
any stage.  Vectors live in the simple-root basis throughout, so Weyl-group
elements act by integer matrices and all pairings reduce to exact linear
algebra against the Gram matrix.

Normalization: the invariant bilinear form is scaled so long roots have
squared length 2.  B1 is admitted as the rank-1 member of the B series; by
series convention its single root is short (squared length 1, lacing 2),
which is what the odd-lattice constructions downstream require.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]
IntMat = tuple[tuple[int, ...], ...]

_SERIES = "ABCDEFG"

_EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11),
    "G2": (1, 5),
}

_WEYL_ORDER_EXCEPTIONAL = {
    "E6": 51840,
    "E7": 2903040,
    "E8": 696729600,
    "F4": 1152,
    "G2": 12,
}

DEFAULT_WEYL_CAP = 10**6
DEFAULT_WORD_CAP = 10**4


class InvalidTypeError(ValueError):
    """Raised for (series, rank) pairs that do not name a simple Lie algebra."""


class CapExceededError(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


# ---------------------------------------------------------------------------
# small exact linear algebra helpers
# ---------------------------------------------------------------------------

def vec(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def vzero(rank: int) -> Vec:
    return (Fraction(0),) * rank


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(c, a: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def mat_vec(m, v: Vec) -> Vec:
    return tuple(sum(mi[j] * v[j] for j in range(len(v))) for mi in m)


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def identity_mat(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def invert_mat(m: Mat) -> Mat:
    """Exact Gauss-Jordan inverse of a square Fraction matrix."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det_int(m) -> int:
    """Determinant of an integer matrix via fraction-free expansion."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = tuple(tuple(row[k] for k in range(n) if k != j) for row in m[1:])
        total += (-1) ** j * m[0][j] * det_int(minor)
    return total


# ---------------------------------------------------------------------------
# Dynkin data
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SimpleLieType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _SERIES:
            raise InvalidTypeError(f"unknown series {self.series!r}")
        r = self.rank
        ok = {
            "A": r >= 1,
            "B": r >= 1,
            "C": r >= 2,
            "D": r >= 3,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }[self.series]
        if not ok:
            raise InvalidTypeError(f"invalid rank {r} for series {self.series}")

    @classmethod
    def parse(cls, s: str) -> "SimpleLieType":
        s = s.strip()
        if len(s) < 2 or s[0].upper() not in _SERIES or not s[1:].isdigit():
            raise InvalidTypeError(f"cannot parse Lie type {s!r}")
        return cls(s[0].upper(), int(s[1:]))

    def __str__(self):
        return f"{self.series}{self.rank}"


def _dynkin_edges(t: SimpleLieType) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram, 0-indexed node pairs."""
    r = t.rank
    chain = [(i, i + 1) for i in range(r - 1)]
    if t.series in ("A", "B", "C", "F", "G"):
        return chain
    if t.series == "D":
        # chain 1..r-2 with both r-1 and r attached to r-2
        return [(i, i + 1) for i in range(r - 3)] + [(r - 3, r - 2), (r - 3, r - 1)]
    # E series: chain 1-2-3-5-6(-7(-8)) with the branch node 4 attached to 3
    edges = [(0, 1), (1, 2), (2, 3), (2, 4)]
    edges += [(i, i + 1) for i in range(4, r - 1)]
    return edges


def _root_half_lengths(t: SimpleLieType) -> tuple[Fraction, ...]:
    """d_i = |alpha_i|^2 / 2 per node."""
    r = t.rank
    one = Fraction(1)
    half = Fraction(1, 2)
    if t.series in ("A", "D", "E"):
        return (one,) * r
    if t.series == "B":
        return (one,) * (r - 1) + (half,)
    if t.series == "C":
        return (half,) * (r - 1) + (one,)
    if t.series == "F":
        return (one, one, half, half)
    return (one, Fraction(1, 3))  # G2: alpha_1 long, alpha_2 short


def _lacing(t: SimpleLieType) -> int:
    return {"A": 1, "D": 1, "E": 1, "B": 2, "C": 2, "F": 2, "G": 3}[t.series]


def weyl_order(t: SimpleLieType) -> int:
    r = t.rank
    if t.series == "A":
        return factorial(r + 1)
    if t.series in ("B", "C"):
        return 2**r * factorial(r)
    if t.series == "D":
        return 2 ** (r - 1) * factorial(r)
    return _WEYL_ORDER_EXCEPTIONAL[str(t)]


def exponents_of(t: SimpleLieType) -> tuple[int, ...]:
    r = t.rank
    if t.series == "A":
        return tuple(range(1, r + 1))
    if t.series in ("B", "C"):
        return tuple(range(1, 2 * r, 2))
    if t.series == "D":
        return tuple(sorted(list(range(1, 2 * r - 2, 2)) + [r - 1]))
    return _EXPONENTS[str(t)]


# ---------------------------------------------------------------------------
# Weyl elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    """A Weyl-group element: lex-minimal reduced word plus its action matrix.

    ``word`` reads left to right as a composition, i.e. the last letter acts
    first on a vector.  ``action`` is the integer matrix of the element in
    simple-root coordinates.
    """

    word: tuple[int, ...]
    action: IntMat
    length: int

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        raise TypeError("compose Weyl elements through RootSystem.weyl_mul")


# ---------------------------------------------------------------------------
# the root system proper
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootSystem:
    lie_type: SimpleLieType
    gram: Mat
    cartan: IntMat                  # cartan[i][j] = (alpha_j, alpha_i^vee)
    simple_roots: tuple[Vec, ...]
    simple_coroots: tuple[Vec, ...]
    fund_weights: tuple[Vec, ...]
    fund_coweights: tuple[Vec, ...]
    rho: Vec
    rho_check: Vec
    theta: Vec
    theta_s: Vec
    theta_L: Vec                    # highest root of the dual system, as a coroot vector
    lacing: int
    coxeter: int
    dual_coxeter: int
    dual_coxeter_L: int
    exponents: tuple[int, ...]
    positive_roots: tuple[Vec, ...]
    minuscule: tuple[Vec, ...]      # transversal of P/Q, zero first
    half_lengths: tuple[Fraction, ...]  # d_i = |alpha_i|^2/2

    # -- basic pairings ----------------------------------------------------

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    def pairing(self, mu: Vec, nu: Vec) -> Fraction:
        """(mu, nu) under the normalized invariant form."""
        if len(mu) != self.rank or len(nu) != self.rank:
            raise ValueError("rank mismatch")
        g = self.gram
        return sum(mu[i] * sum(g[i][j] * nu[j] for j in range(self.rank))
                   for i in range(self.rank))

    def norm2(self, mu: Vec) -> Fraction:
        return self.pairing(mu, mu)

    def copairing(self, mu: Vec, i: int) -> Fraction:
        """(mu, alpha_i^vee), 0-indexed i."""
        if len(mu) != self.rank:
            raise ValueError("rank mismatch")
        row = self.cartan[i]
        return sum(row[j] * mu[j] for j in range(self.rank))

    def reflect(self, i: int, mu: Vec) -> Vec:
        """sigma_i(mu) = mu - (mu, alpha_i^vee) alpha_i."""
        c = self.copairing(mu, i)
        if c == 0:
            return mu
        out = list(mu)
        out[i] -= c
        return tuple(out)

    def is_dominant(self, mu: Vec) -> bool:
        return all(self.copairing(mu, i) >= 0 for i in range(self.rank))

    def in_root_lattice(self, mu: Vec) -> bool:
        return all(x.denominator == 1 for x in mu)

    def in_weight_lattice(self, mu: Vec) -> bool:
        return all(self.copairing(mu, i).denominator == 1 for i in range(self.rank))

    # -- Weyl group --------------------------------------------------------

    def simple_reflection_matrix(self, i: int) -> IntMat:
        n = self.rank
        return tuple(
            tuple((1 if k == j else 0) - (self.cartan[i][j] if k == i else 0)
                  for j in range(n))
            for k in range(n)
        )

    def weyl_apply(self, w: WeylElement, mu: Vec) -> Vec:
        return mat_vec(w.action, mu)

    def matrix_length(self, m: IntMat) -> int:
        """Number of positive roots sent to negative ones."""
        count = 0
        for root in self.positive_roots:
            img = mat_vec(m, root)
            if any(x < 0 for x in img):
                count += 1
        return count

    def element_from_matrix(self, m: IntMat) -> WeylElement:
        """Recover the element with its lex-minimal reduced word."""
        word: list[int] = []
        cur = m
        length = self.matrix_length(cur)
        while length > 0:
            for i in range(self.rank):
                cand = mat_mul(self.simple_reflection_matrix(i), cur)
                if self.matrix_length(cand) == length - 1:
                    word.append(i)
                    cur, length = cand, length - 1
                    break
            else:  # pragma: no cover - impossible for genuine Weyl matrices
                raise RuntimeError("no descent found; matrix not in the Weyl group")
        return WeylElement(tuple(word), m, len(word))

    def element_from_word(self, word) -> WeylElement:
        m = identity_mat(self.rank)
        for i in word:
            m = mat_mul(m, self.simple_reflection_matrix(i))
        return self.element_from_matrix(m)

    def is_reduced_word(self, word) -> bool:
        return self.element_from_word(word).length == len(word)

    def identity_element(self) -> WeylElement:
        return WeylElement((), identity_mat(self.rank), 0)

    def simple_element(self, i: int) -> WeylElement:
        return WeylElement((i,), self.simple_reflection_matrix(i), 1)

    def weyl_mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.element_from_matrix(mat_mul(a.action, b.action))

    def weyl_inv(self, a: WeylElement) -> WeylElement:
        n = self.rank
        inv = invert_mat(a.action)
        m = tuple(tuple(int(x) for x in row) for row in inv)
        return self.element_from_matrix(m)

    def enumerate_weyl(self, cap: int = DEFAULT_WEYL_CAP) -> tuple[WeylElement, ...]:
        return _enumerate_weyl_cached(self, cap)

    def parabolic_longest(self, nodes) -> WeylElement:
        """Longest element of the standard parabolic on the given nodes."""
        cur = identity_mat(self.rank)
        length = 0
        changed = True
        while changed:
            changed = False
            for i in nodes:
                cand = mat_mul(self.simple_reflection_matrix(i), cur)
                if self.matrix_length(cand) == length + 1:
                    cur, length = cand, length + 1
                    changed = True
        return self.element_from_matrix(cur)

    def longest_element(self) -> WeylElement:
        """w0, via the greedy descent walk taking rho to -rho."""
        mu = self.rho
        m = identity_mat(self.rank)
        steps = 0
        while True:
            for i in range(self.rank):
                if self.copairing(mu, i) > 0:
                    mu = self.reflect(i, mu)
                    m = mat_mul(self.simple_reflection_matrix(i), m)
                    steps += 1
                    break
            else:
                break
        assert steps == len(self.positive_roots)
        return self.element_from_matrix(m)

    def all_reduced_words(self, w: WeylElement,
                          cap: int = DEFAULT_WORD_CAP) -> list[tuple[int, ...]]:
        """Every reduced word of w, erroring past ``cap`` words."""
        memo: dict[tuple, list[tuple[int, ...]]] = {}

        def rec(m: IntMat, length: int) -> list[tuple[int, ...]]:
            key = tuple(mat_vec(m, self.rho))
            if key in memo:
                return memo[key]
            if length == 0:
                memo[key] = [()]
                return memo[key]
            words = []
            for i in range(self.rank):
                cand = mat_mul(self.simple_reflection_matrix(i), m)
                if self.matrix_length(cand) == length - 1:
                    words.extend((i,) + u for u in rec(cand, length - 1))
                if len(words) > cap:
                    raise CapExceededError(
                        f"more than {cap} reduced words for element of length {w.length}")
            memo[key] = words
            return words

        return rec(w.action, w.length)

    # -- representation dimensions -----------------------------------------

    def weyl_dim(self, beta: Vec) -> int:
        """dim of the irreducible module with highest weight beta (dominant integral)."""
        for i in range(self.rank):
            c = self.copairing(beta, i)
            if c.denominator != 1 or c < 0:
                raise ValueError(f"weight {beta} is not dominant integral")
        num = Fraction(1)
        for alpha in self.positive_roots:
            d = self.norm2(alpha) / 2
            a = self.pairing(vadd(beta, self.rho), alpha) / d
            b = self.pairing(self.rho, alpha) / d
            num *= a / b
        assert num.denominator == 1 and num > 0
        return int(num)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        def rat(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        def rvec(v: Vec) -> list[str]:
            return [rat(x) for x in v]

        return {
            "type": str(self.lie_type),
            "rank": self.rank,
            "lacing": self.lacing,
            "gram": [rvec(row) for row in self.gram],
            "cartan": [list(row) for row in self.cartan],
            "rho": rvec(self.rho),
            "rho_check": rvec(self.rho_check),
            "theta": rvec(self.theta),
            "theta_s": rvec(self.theta_s),
            "theta_L": rvec(self.theta_L),
            "coxeter": self.coxeter,
            "dual_coxeter": self.dual_coxeter,
            "dual_coxeter_L": self.dual_coxeter_L,
            "exponents": list(self.exponents),
            "num_positive_roots": len(self.positive_roots),
            "weyl_order": weyl_order(self.lie_type),
            "minuscule": [rvec(v) for v in self.minuscule],
            "fund_weights": [rvec(v) for v in self.fund_weights],
            "fund_coweights": [rvec(v) for v in self.fund_coweights],
        }


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _close_roots(rs_cartan: IntMat, rank: int) -> tuple[Vec, ...]:
    """All roots, as the closure of the simple roots under simple reflections."""
    def reflect(i: int, mu: Vec) -> Vec:
        c = sum(rs_cartan[i][j] * mu[j] for j in range(rank))
        out = list(mu)
        out[i] -= c
        return tuple(out)

    simple = [tuple(Fraction(1 if j == i else 0) for j in range(rank))
              for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(rank):
                img = reflect(i, mu)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def build_root_system(t: SimpleLieType) -> RootSystem:
    """Construct the full exact root-system record for a valid type."""
    r = t.rank
    d = _root_half_lengths(t)
    edges = _dynkin_edges(t)
    adj = {(i, j) for i, j in edges} | {(j, i) for i, j in edges}

    gram = tuple(
        tuple(
            2 * d[i] if i == j else (-max(d[i], d[j]) if (i, j) in adj else Fraction(0))
            for j in range(r))
        for i in range(r)
    )
    cartan_frac = tuple(tuple(gram[i][j] / d[i] for j in range(r)) for i in range(r))
    assert all(x.denominator == 1 for row in cartan_frac for x in row)
    cartan = tuple(tuple(int(x) for x in row) for row in cartan_frac)

    simple_roots = tuple(
        tuple(Fraction(1 if j == i else 0) for j in range(r)) for i in range(r))
    simple_coroots = tuple(
        tuple(Fraction(1, 1) / d[i] if j == i else Fraction(0) for j in range(r))
        for i in range(r))

    cartan_inv = invert_mat(cartan_frac)
    # (C w)_j = delta_ij, so the coordinates of the i-th fundamental weight
    # form the i-th column of C^{-1}; the Gram matrix is symmetric so rows
    # and columns agree for the coweights.
    fund_weights = tuple(tuple(cartan_inv[k][i] for k in range(r)) for i in range(r))
    gram_inv = invert_mat(gram)
    fund_coweights = tuple(tuple(gram_inv[i]) for i in range(r))

    rho = tuple(sum(fund_weights[i][j] for i in range(r)) for j in range(r))
    rho = tuple(Fraction(x) for x in rho)
    rho_check = tuple(Fraction(sum(fund_coweights[i][j] for i in range(r)))
                      for j in range(r))

    roots = _close_roots(cartan, r)
    positive = tuple(sorted((a for a in roots if all(x >= 0 for x in a)),
                            key=lambda a: (sum(a), a)))
    assert 2 * len(positive) == len(roots)

    def norm2(mu: Vec) -> Fraction:
        return sum(mu[i] * sum(gram[i][j] * mu[j] for j in range(r)) for i in range(r))

    heights = {a: sum(a) for a in positive}
    theta = max(positive, key=lambda a: heights[a])
    min_len = min(norm2(a) for a in positive)
    theta_s = max((a for a in positive if norm2(a) == min_len), key=lambda a: heights[a])

    # dual system: coroots 2a/|a|^2; its highest root read off in coroot coordinates
    def coroot(a: Vec) -> Vec:
        n2 = norm2(a)
        return tuple(2 * x / n2 for x in a)

    def coroot_coords(av: Vec) -> Vec:
        # alpha_i^vee has root coordinates e_i/d_i, so c_i = d_i * (root coord)
        return tuple(d[i] * av[i] for i in range(r))

    coroots = [coroot(a) for a in positive]
    theta_L = max(coroots, key=lambda av: sum(coroot_coords(av)))
    marks_L = coroot_coords(theta_L)
    assert all(x.denominator == 1 for x in marks_L)

    minuscule = (vzero(r),) + tuple(fund_weights[i] for i in range(r)
                                    if marks_L[i] == 1)
    det_c = det_int(cartan)
    assert len(minuscule) == det_c

    lac = _lacing(t)
    coxeter = int(sum(theta)) + 1
    theta_vee = coroot(theta)
    dc = 1 + sum(rho[i] * sum(gram[i][j] * theta_vee[j] for j in range(r))
                 for i in range(r))
    assert dc.denominator == 1
    lhv = 1 + Fraction(
        sum(rho_check[i] * sum(gram[i][j] * theta_L[j] for j in range(r))
            for i in range(r)), lac)
    assert lhv.denominator == 1

    exps = exponents_of(t)
    assert sum(exps) == len(positive)
    order = 1
    for e in exps:
        order *= e + 1
    assert order == weyl_order(t)

    return RootSystem(
        lie_type=t,
        gram=gram,
        cartan=cartan,
        simple_roots=simple_roots,
        simple_coroots=simple_coroots,
        fund_weights=fund_weights,
        fund_coweights=fund_coweights,
        rho=rho,
        rho_check=rho_check,
        theta=theta,
        theta_s=theta_s,
        theta_L=theta_L,
        lacing=lac,
        coxeter=coxeter,
        dual_coxeter=int(dc),
        dual_coxeter_L=int(lhv),
        exponents=exps,
        positive_roots=positive,
        minuscule=minuscule,
        half_lengths=d,
    )


@lru_cache(maxsize=None)
def _enumerate_weyl_cached(rs: RootSystem, cap: int) -> tuple[WeylElement, ...]:
    order = weyl_order(rs.lie_type)
    if order > cap:
        raise CapExceededError(
            f"|W({rs.lie_type})| = {order} exceeds the enumeration cap {cap}")
    refl = [rs.simple_reflection_matrix(i) for i in range(rs.rank)]
    ident = rs.identity_element()
    key0 = rs.rho
    elements: dict[Vec, WeylElement] = {key0: ident}
    level = [ident]
    out = [ident]
    while level:
        nxt: list[WeylElement] = []
        # prepending the smallest generator first yields lex-minimal words
        for i in range(rs.rank):
            for w in level:
                m = mat_mul(refl[i], w.action)
                key = mat_vec(m, rs.rho)
                if key not in elements:
                    elt = WeylElement((i,) + w.word, m, w.length + 1)
                    elements[key] = elt
                    nxt.append(elt)
        nxt.sort(key=lambda e: e.word)
        out.extend(nxt)
        level = nxt
    assert len(out) == order
    return tuple(out)
