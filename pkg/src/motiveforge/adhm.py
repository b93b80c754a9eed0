"""The motivic ADHM formula: partition hook sums, plethystic logarithm and
the conjectural class of the twisted moduli space.

For a twist of degree -(2g - 2 + p), p >= 1, the generating term of charge n
is a sum over partitions of n.  Each cell s of a partition contributes the
factor

    (-t^(a-l) L^a)^p * t^((1-g)(2l+1)) * Z(t^h L^a),

with a, l, h the arm, leg and hook of s, and Z the zeta series of the curve,
Z(x) = prod_k (1 + b_k x) / ((1 - x)(1 - L x)).  Each zeta factor therefore
adds the two denominator factors (1 - L^a t^h) and (1 - L^(a+1) t^h); the
first has constant 1 exactly when a = 0, and those are the only sources of
poles at t = 1 (checked at construction time).

The plethystic logarithm with Moebius weights and Adams operators turns the
T-series of these terms into the "connected" coefficients H_1(t) .. H_r(t).
Adams operators are realized by :func:`motiveforge.curve_ring.frobenius`
(atoms to j-th powers) combined with t -> t^j on the assembled rational
function; the double sum is truncated at T-order r, so only j <= r and
k <= r contribute.  The final class is

    (-1)^(p r) L^(r^2 (g-1) + p r (r+1) / 2) H_r(1),

evaluated exactly with :func:`motiveforge.series_engine.eval_at_one`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .curve_ring import AtomEnvironment, frobenius
from .series_engine import (
    TRational,
    TruncatedSeries,
    eval_at_one,
    series_log,
    substitute_t_power,
)


@dataclass(frozen=True)
class Partition:
    """Decreasing positive parts with per-cell arm / leg / hook data."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("partition parts must be decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate_parts(self) -> Tuple[int, ...]:
        if not self.parts:
            return ()
        out = []
        for j in range(1, self.parts[0] + 1):
            out.append(sum(1 for p in self.parts if p >= j))
        return tuple(out)

    def cells(self) -> List[Tuple[int, int]]:
        """All cells (i, j), 1-based, with 1 <= j <= parts[i-1]."""
        return [(i + 1, j + 1) for i, p in enumerate(self.parts) for j in range(p)]

    def arm(self, i: int, j: int) -> int:
        return self.parts[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        return self.conjugate_parts()[j - 1] - i

    def hook(self, i: int, j: int) -> int:
        return self.arm(i, j) + self.leg(i, j) + 1

    def cell_data(self) -> List[Tuple[int, int, int]]:
        """(arm, leg, hook) for every cell."""
        conj = self.conjugate_parts()
        out = []
        for i, p in enumerate(self.parts):
            for j in range(1, p + 1):
                a = p - j
                l = conj[j - 1] - i - 1
                out.append((a, l, a + l + 1))
        return out


def partitions(n: int) -> List[Partition]:
    """All partitions of n in reverse-lexicographic order, deterministically."""
    if n < 0:
        raise ValueError("partitions of a negative integer")
    out: List[Partition] = []
    acc: List[int] = []

    def rec(remaining: int, largest: int) -> None:
        if remaining == 0:
            out.append(Partition(tuple(acc)))
            return
        for part in range(min(remaining, largest), 0, -1):
            acc.append(part)
            rec(remaining - part, part)
            acc.pop()

    rec(n, n)
    return out


def mobius(j: int) -> int:
    """Moebius function via trial factorization (j stays tiny here)."""
    if j < 1:
        raise ValueError("mobius needs j >= 1")
    out = 1
    m = j
    f = 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            out = -out
        f += 1
    if m > 1:
        out = -out
    return out


def partition_sum(env: AtomEnvironment, n: int, p: int) -> TRational:
    """Charge-n generating term: the hook-weighted zeta sum over partitions."""
    if n < 1:
        raise ValueError("charge must be >= 1")
    if p < 1:
        raise ValueError("p must be >= 1")
    g = env.genus
    L = env.lefschetz
    sign = (-1) ** p
    total = TRational.from_scalar(0)
    for lam in partitions(n):
        num: Dict[int, object] = {0: 1}
        den: List[Tuple[object, int]] = []
        zero_arm_cells = 0
        for a, l, h in lam.cell_data():
            la = L ** a
            base_exp = p * (a - l) + (1 - g) * (2 * l + 1)
            cell_coeff = sign * la ** p
            cell_num: Dict[int, object] = {base_exp: cell_coeff}
            for b in env.betas:
                scaled = b * la
                nxt = dict(cell_num)
                for e, c in cell_num.items():
                    k = e + h
                    s = nxt.get(k, 0) + c * scaled
                    if s == 0:
                        nxt.pop(k, None)
                    else:
                        nxt[k] = s
                cell_num = nxt
            new_num: Dict[int, object] = {}
            for e1, c1 in num.items():
                for e2, c2 in cell_num.items():
                    k = e1 + e2
                    s = new_num.get(k, 0) + c1 * c2
                    if s == 0:
                        new_num.pop(k, None)
                    else:
                        new_num[k] = s
            num = new_num
            den.append((la, h))
            den.append((la * L, h))
            if a == 0:
                zero_arm_cells += 1
        pole_factors = sum(1 for c, _ in den if c == 1)
        assert pole_factors == zero_arm_cells, "pole factors must come from zero-arm cells only"
        total = total + TRational(num, den, reduce=False)
    return total


def plog_series(env: AtomEnvironment, r: int, p: int) -> List[TRational]:
    """H_1(t) .. H_r(t): plethystic-log coefficients cleared by (1-t)(1-Lt).

    Implements the fully expanded Moebius / Adams double sum, truncated at
    T-order r.  Rational scalars mu(j)/(j k) are carried exactly; the
    opportunistic cancellation inside TRational leaves each H_n in lowest
    terms, which for honest inputs means an actual Laurent polynomial in t.
    """
    if r < 1:
        raise ValueError("rank must be >= 1")
    zero = TRational.from_scalar(0)
    acc: List[TRational] = [zero] * (r + 1)
    for j in range(1, r + 1):
        mu = mobius(j)
        if mu == 0:
            continue
        fenv = frobenius(env, j)
        coeffs: List[object] = [1] + [zero] * r
        for n in range(1, r // j + 1):
            coeffs[j * n] = substitute_t_power(partition_sum(fenv, n, p), j)
        logs = series_log(TruncatedSeries(coeffs, shift=0, order=r, var="T"))
        weight = Fraction(mu, j)
        for m in range(1, r + 1):
            term = logs.coeff(m)
            if isinstance(term, TRational):
                acc[m] = acc[m] + term * weight
            elif term != 0:
                acc[m] = acc[m] + TRational.from_scalar(term * weight)
    L = env.lefschetz
    out: List[TRational] = []
    for m in range(1, r + 1):
        h = acc[m].mul_poly_factor(1, 1).mul_poly_factor(L, 1)
        h = TRational(h.num, h.den)  # reduce: cancel whatever now divides
        out.append(h)
    return out


def adhm_class(env: AtomEnvironment, r: int, p: int):
    """Conjectural class of the twisted moduli space of rank r, any coprime
    degree: (-1)^(p r) L^(r^2 (g-1) + p r (r+1)/2) H_r(1)."""
    g = env.genus
    h_r = plog_series(env, r, p)[r - 1]
    value = eval_at_one(h_r)
    sign = (-1) ** (p * r)
    prefactor = env.lefschetz ** (r * r * (g - 1) + p * (r * (r + 1) // 2))
    return sign * prefactor * value
