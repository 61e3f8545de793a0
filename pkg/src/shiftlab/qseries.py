"""Exact truncated q-series with rational base exponent and rational-grid steps.

A series is ``q^base * sum_n coeffs[n] q^(n/grid)`` with integer coefficients,
known exactly for all exponents up to ``cutoff`` (inclusive).  Binary
operations truncate to the smallest compatible cutoff; nothing is ever
extrapolated past what both operands determine.

Multiplication packs coefficient arrays into big integers (Kronecker
substitution) so that products at grid order several thousand complete in
milliseconds without any approximate arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

DEFAULT_GRID_CAP = 10**4

_KARATSUBA_THRESHOLD = 64  # below this, schoolbook convolution wins


class GridBoundError(RuntimeError):
    """Raised when an operation would need an exponent grid past the cap."""


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# integer convolution
# ---------------------------------------------------------------------------

def _pack(xs: list[int], sb: int) -> int:
    buf = bytearray(len(xs) * sb)
    for i, v in enumerate(xs):
        if v:
            buf[i * sb:(i + 1) * sb] = v.to_bytes(sb, "little")
    return int.from_bytes(buf, "little")


def _unpack(n: int, sb: int, count: int) -> list[int]:
    data = n.to_bytes(count * sb, "little")
    return [int.from_bytes(data[i * sb:(i + 1) * sb], "little") for i in range(count)]


def convolve(a: list[int], b: list[int], n_out: int) -> list[int]:
    """First ``n_out`` coefficients of the product of two integer polynomials."""
    if not a or not b or n_out <= 0:
        return [0] * max(n_out, 0)
    if min(len(a), len(b)) < _KARATSUBA_THRESHOLD:
        out = [0] * n_out
        for i, ai in enumerate(a):
            if ai == 0 or i >= n_out:
                continue
            for j, bj in enumerate(b):
                if i + j >= n_out:
                    break
                if bj:
                    out[i + j] += ai * bj
        return out
    max_a = max(abs(x) for x in a)
    max_b = max(abs(x) for x in b)
    if max_a == 0 or max_b == 0:
        return [0] * n_out
    bound = max_a * max_b * min(len(a), len(b))
    sb = (bound.bit_length() + 8) // 8 + 1
    ap = [x if x > 0 else 0 for x in a]
    an = [-x if x < 0 else 0 for x in a]
    bp = [x if x > 0 else 0 for x in b]
    bn = [-x if x < 0 else 0 for x in b]
    total = len(a) + len(b) - 1
    pos = _pack(ap, sb) * _pack(bp, sb) + _pack(an, sb) * _pack(bn, sb)
    neg = _pack(ap, sb) * _pack(bn, sb) + _pack(an, sb) * _pack(bp, sb)
    cp = _unpack(pos, sb, total)
    cn = _unpack(neg, sb, total)
    return [p - q for p, q in zip(cp[:n_out], cn[:n_out])] + [0] * (n_out - total)


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QSeries:
    base: Fraction
    grid: int
    coeffs: tuple[int, ...]
    cutoff: Fraction

    # construction --------------------------------------------------------

    @staticmethod
    def make(base, grid: int, coeffs, cutoff=None) -> "QSeries":
        """Normalize: strip zero margins into base/cutoff, reduce the grid."""
        base = _as_fraction(base)
        coeffs = list(coeffs)
        if cutoff is None:
            cutoff = base + Fraction(len(coeffs) - 1, grid)
        cutoff = _as_fraction(cutoff)
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            return QSeries(Fraction(0), 1, (), cutoff)
        base += Fraction(lo, grid)
        coeffs = coeffs[lo:hi]
        g = 0
        for i, c in enumerate(coeffs):
            if c:
                g = gcd(g, i)
        if g == 0:
            return QSeries(base, 1, (coeffs[0],), cutoff)
        shrink = gcd(grid, g)
        if shrink > 1:
            coeffs = [coeffs[i] for i in range(0, len(coeffs), shrink)]
            grid //= shrink
        return QSeries(base, grid, tuple(coeffs), cutoff)

    @staticmethod
    def zero(cutoff) -> "QSeries":
        return QSeries(Fraction(0), 1, (), _as_fraction(cutoff))

    @staticmethod
    def monomial(exponent, coeff: int = 1, cutoff=None) -> "QSeries":
        e = _as_fraction(exponent)
        if cutoff is None:
            cutoff = e
        return QSeries.make(e, 1, [coeff], cutoff)

    # queries ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def eff_base(self) -> Fraction:
        """Leading exponent, or the cutoff for the zero series."""
        return self.base if self.coeffs else self.cutoff

    def leading(self) -> tuple[Fraction, int]:
        if self.is_zero:
            raise ValueError("zero series has no leading term")
        return self.base, self.coeffs[0]

    def coeff(self, exponent) -> int:
        e = _as_fraction(exponent)
        if e > self.cutoff:
            raise ValueError(f"exponent {e} is beyond the truncation {self.cutoff}")
        pos = (e - self.base) * self.grid
        if pos.denominator != 1 or pos < 0 or pos >= len(self.coeffs):
            return 0
        return self.coeffs[int(pos)]

    def terms(self) -> dict[Fraction, int]:
        return {self.base + Fraction(i, self.grid): c
                for i, c in enumerate(self.coeffs) if c}

    # arithmetic --------------------------------------------------------------

    def _unified(self, other: "QSeries", cap: int) -> tuple[int, Fraction]:
        d = lcm(self.grid, other.grid)
        delta = self.base - other.base
        d = lcm(d, delta.denominator)
        if d > cap:
            raise GridBoundError(f"required exponent grid {d} exceeds cap {cap}")
        return d, delta

    def add(self, other: "QSeries", cap: int = DEFAULT_GRID_CAP) -> "QSeries":
        cutoff = min(self.cutoff, other.cutoff)
        if self.is_zero and other.is_zero:
            return QSeries.zero(cutoff)
        if self.is_zero:
            return other.truncate(cutoff)
        if other.is_zero:
            return self.truncate(cutoff)
        d, _ = self._unified(other, cap)
        base = min(self.base, other.base)
        n = (cutoff - base) * d
        if n < 0:
            return QSeries.zero(cutoff)
        out = [0] * (int(n) + 1)
        for s in (self, other):
            off = (s.base - base) * d
            step = d // s.grid
            o = int(off)
            for i, c in enumerate(s.coeffs):
                k = o + i * step
                if k >= len(out):
                    break
                out[k] += c
        return QSeries.make(base, d, out, cutoff)

    def __add__(self, other):
        return self.add(other)

    def __neg__(self):
        return QSeries(self.base, self.grid, tuple(-c for c in self.coeffs),
                       self.cutoff)

    def __sub__(self, other):
        return self.add(-other)

    def mul(self, other: "QSeries", cap: int = DEFAULT_GRID_CAP) -> "QSeries":
        cutoff = min(self.cutoff + other.eff_base, other.cutoff + self.eff_base)
        if self.is_zero or other.is_zero:
            return QSeries.zero(cutoff)
        d = lcm(self.grid, other.grid)
        if d > cap:
            raise GridBoundError(f"required exponent grid {d} exceeds cap {cap}")
        base = self.base + other.base
        n = (cutoff - base) * d
        if n < 0:
            return QSeries.zero(cutoff)
        sa = d // self.grid
        sb = d // other.grid
        a = _spread(self.coeffs, sa)
        b = _spread(other.coeffs, sb)
        out = convolve(a, b, int(n) + 1)
        return QSeries.make(base, d, out, cutoff)

    def __mul__(self, other):
        return self.mul(other)

    def scale(self, c) -> "QSeries":
        c = _as_fraction(c)
        if c == 0:
            return QSeries.zero(self.cutoff)
        scaled = [c * x for x in self.coeffs]
        if any(v.denominator != 1 for v in scaled):
            raise ValueError(f"scaling by {c} does not keep integer coefficients")
        return QSeries(self.base, self.grid, tuple(int(v) for v in scaled),
                       self.cutoff)

    def qshift(self, delta) -> "QSeries":
        delta = _as_fraction(delta)
        return QSeries(self.base + delta, self.grid, self.coeffs,
                       self.cutoff + delta)

    def resample(self, t, cap: int = DEFAULT_GRID_CAP) -> "QSeries":
        """Substitute q -> q^t for a positive rational t."""
        t = _as_fraction(t)
        if t <= 0:
            raise ValueError("resample factor must be positive")
        if self.is_zero:
            return QSeries.zero(self.cutoff * t)
        step = t / self.grid
        d = step.denominator
        if d > cap:
            raise GridBoundError(f"required exponent grid {d} exceeds cap {cap}")
        m = step.numerator
        out = [0] * ((len(self.coeffs) - 1) * m + 1)
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return QSeries.make(self.base * t, d, out, self.cutoff * t)

    def truncate(self, new_cutoff) -> "QSeries":
        new_cutoff = _as_fraction(new_cutoff)
        if new_cutoff >= self.cutoff:
            return self
        n = (new_cutoff - self.base) * self.grid
        if self.is_zero or n < 0:
            return QSeries.zero(new_cutoff)
        keep = int(n) + 1
        return QSeries.make(self.base, self.grid, self.coeffs[:keep], new_cutoff)

    # comparison / io ----------------------------------------------------------

    def same_series(self, other: "QSeries") -> bool:
        """Termwise equality up to the smaller cutoff."""
        cut = min(self.cutoff, other.cutoff)
        return self.truncate(cut) == other.truncate(cut)

    def pretty(self, max_terms: int = 12) -> str:
        if self.is_zero:
            return f"0  (known to q^{self.cutoff})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = Fraction(i, self.grid)
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c} q^{e}")
            if len(parts) >= max_terms:
                parts.append("...")
                break
        return f"q^{self.base} * (" + " + ".join(parts) + ")"

    def to_json_dict(self) -> dict:
        return {
            "base": f"{self.base.numerator}/{self.base.denominator}",
            "grid": self.grid,
            "coeffs": [str(c) for c in self.coeffs],
            "cutoff": f"{self.cutoff.numerator}/{self.cutoff.denominator}",
        }

    @staticmethod
    def from_json_dict(d: dict) -> "QSeries":
        return QSeries.make(Fraction(d["base"]), d["grid"],
                            [int(c) for c in d["coeffs"]],
                            Fraction(d["cutoff"]))


def _spread(coeffs: tuple[int, ...], step: int) -> list[int]:
    if step == 1:
        return list(coeffs)
    out = [0] * ((len(coeffs) - 1) * step + 1)
    for i, c in enumerate(coeffs):
        out[i * step] = c
    return out


# ---------------------------------------------------------------------------
# eta powers and free-fermion characters
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _euler_coeffs(order: int) -> tuple[int, ...]:
    """Coefficients of prod_{n>=1} (1 - q^n) up to q^order."""
    out = [0] * (order + 1)
    k = 0
    while True:
        for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if g > order:
                break
            out[g] += (-1) ** k
            if k == 0:
                break
        if k * (3 * k - 1) // 2 > order:
            break
        k += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _partition_coeffs(order: int) -> tuple[int, ...]:
    """Partition numbers p(0..order) via the pentagonal recurrence."""
    p = [0] * (order + 1)
    p[0] = 1
    for n in range(1, order + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = -1 if k % 2 == 0 else 1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return tuple(p)


@lru_cache(maxsize=None)
def _colored_partition_coeffs(r: int, order: int) -> tuple[int, ...]:
    cur = list(_partition_coeffs(order))
    out = [1] + [0] * order
    base = cur
    k = r
    while k:
        if k & 1:
            out = convolve(out, base, order + 1)
        k >>= 1
        if k:
            base = convolve(base, base, order + 1)
    return tuple(out)


def eta_inv_pow(r: int, order: int) -> QSeries:
    """q^(-r/24) * sum of r-colored partition numbers; 1/eta(q)^r truncated."""
    if r < 1:
        raise ValueError("eta power must be positive")
    coeffs = _colored_partition_coeffs(r, order)
    return QSeries.make(Fraction(-r, 24), 1, list(coeffs),
                        Fraction(-r, 24) + order)


def eta_pow(r: int, order: int) -> QSeries:
    """eta(q)^r = q^(r/24) prod (1-q^n)^r, truncated at depth ``order``."""
    if r < 1:
        raise ValueError("eta power must be positive")
    out = [1] + [0] * order
    base = list(_euler_coeffs(order))
    k = r
    while k:
        if k & 1:
            out = convolve(out, base, order + 1)
        k >>= 1
        if k:
            base = convolve(base, base, order + 1)
    return QSeries.make(Fraction(r, 24), 1, out, Fraction(r, 24) + order)


class FermionKind(enum.Enum):
    NS_CH = "ch"
    NS_SCH = "sch"
    R_TWISTED = "ramond"


def _binomial_product(order2: int, sign: int, offsets) -> list[int]:
    """prod (1 + sign*q^(k/2)) over the half-exponent positions in ``offsets``."""
    out = [0] * (order2 + 1)
    out[0] = 1
    top = 0
    for k in offsets:
        if k > order2:
            break
        top = min(top + k, order2)
        for i in range(top, k - 1, -1):
            out[i] += sign * out[i - k]
    return out


@lru_cache(maxsize=None)
def fermion_char(kind: FermionKind, order: int) -> QSeries:
    """Free-fermion characters: NS character, NS supercharacter, parity-twisted.

    All are returned to depth ``order`` in integer q-units above their base:

    * ``NS_CH``     q^(-1/48) prod (1 + q^(n-1/2))
    * ``NS_SCH``    q^(-1/48) prod (1 - q^(n-1/2))
    * ``R_TWISTED`` 2 q^(1/24) prod (1 + q^n)
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if kind is FermionKind.R_TWISTED:
        coeffs = _binomial_product(order, +1, range(1, order + 1))
        return QSeries.make(Fraction(1, 24), 1, [2 * c for c in coeffs],
                            Fraction(1, 24) + order)
    sign = 1 if kind is FermionKind.NS_CH else -1
    n2 = 2 * order
    coeffs = _binomial_product(n2, sign, range(1, n2 + 1, 2))
    return QSeries.make(Fraction(-1, 48), 2, coeffs, Fraction(-1, 48) + order)

