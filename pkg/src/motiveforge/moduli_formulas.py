"""Explicit moduli-space formulas: stratum classes, Morse indices, attracting
exponents, rank 2/3 motivic classes, E-polynomials and Betti numbers.

Geometry conventions.  A query is a :class:`ModuliSpec` (g, r, d, dL) with
gcd(r, d) = 1 and twist degree dL < 2 - 2g; equivalently dL = -(2g - 2 + p)
with p >= 1.  The moduli space is smooth of dimension 1 - r^2 * dL.  Its
class decomposes over the fixed-point strata of the scaling action,

    [M] = sum over strata of L^(N+) [VHS(rbar, dbar)],

where each stratum is a variation-of-Hodge-structure locus indexed by a
multirank/multidegree pair and N+ is the rank of its attracting affine
bundle.  N+ is computed as

    N+ = (1 - r^2 dL) - dim VHS - M/2,

with M the Morse index of the stratum, itself a sum of Euler characteristics
of the graded pieces of the deformation complex (:func:`morse_index`).  The
supported stratum shapes are (r), (1,1), (1,2), (2,1) and (1,1,1); the (2,1)
stratum is evaluated through its duality isomorphism with a (1,2) stratum of
total degree -d.

Two independent routes to the E-polynomial are provided on purpose:
evaluating the motivic formulas in the Hodge environment
(:func:`motive_rank2` / :func:`motive_rank3`) and the closed coefficient-
extraction forms (:func:`epoly_rank2` / :func:`epoly_rank3`).  Their
agreement is part of the acceptance suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .base_rings import UV, UVLaurent, exact_divide
from .curve_ring import (
    AtomEnvironment,
    curve_class,
    h1_poly,
    h1_series,
    jacobian_class,
    make_hodge_env,
    sym_power_class,
)
from .series_engine import BiSeries, TruncatedSeries, series_product


class InvalidSpec(ValueError):
    """The moduli query violates a validity predicate."""


class EmptyStratum(ValueError):
    """The requested stratum is empty for these degrees."""


class NegativeBetti(ArithmeticError):
    """A Betti coefficient came out negative or non-integral."""


@dataclass(frozen=True)
class ModuliSpec:
    """Moduli-space query (genus, rank, degree, twist degree)."""

    g: int
    r: int
    d: int
    dL: int

    @classmethod
    def from_p(cls, g: int, r: int, d: int, p: int) -> "ModuliSpec":
        return cls(g=g, r=r, d=d, dL=-(2 * g - 2 + p))

    @property
    def p(self) -> int:
        return -self.dL - 2 * self.g + 2

    def validate(self) -> "ModuliSpec":
        if self.g < 2:
            raise InvalidSpec(f"genus {self.g} < 2")
        if self.r not in (1, 2, 3):
            raise InvalidSpec(f"rank {self.r} not in {{1, 2, 3}}")
        if math.gcd(self.r, self.d) != 1:
            raise InvalidSpec(f"gcd(r, d) = gcd({self.r}, {self.d}) != 1")
        if self.dL >= 2 - 2 * self.g:
            raise InvalidSpec(f"twist degree {self.dL} must be < {2 - 2 * self.g}")
        return self


@dataclass(frozen=True)
class VHSType:
    """Fixed-point stratum shape: multirank and multidegree."""

    ranks: Tuple[int, ...]
    degs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.degs):
            raise ValueError("multirank and multidegree lengths differ")

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    @property
    def total_deg(self) -> int:
        return sum(self.degs)


def dimension(spec: ModuliSpec) -> int:
    """dim M = 1 - r^2 * dL."""
    spec.validate()
    return 1 - spec.r ** 2 * spec.dL


def _rfloor(x: Fraction) -> int:
    return math.floor(x)


# ---------------------------------------------------------------------------
# Morse index and attracting exponent
# ---------------------------------------------------------------------------

def morse_index(t: VHSType, twist_deg: int, g: int) -> int:
    """Morse index M of a stratum, from the graded deformation complex.

    ``twist_deg`` is the Higgs-side twist degree (-dL > 2g - 2); the sign
    plumbing between the connection-side twist (negative degree) and the
    Higgs-side one is centralized in this argument.  Euler characteristics
    come from Riemann-Roch: chi(Hom(E_i, E_j)) = r_i d_j - r_j d_i
    + r_i r_j (1 - g), plus r_i r_j * twist_deg when twisted.
    """
    if twist_deg <= 2 * g - 2:
        raise ValueError("Higgs-side twist degree must exceed 2g - 2")
    r, d = t.ranks, t.degs
    k = len(r)
    total = 0
    for l in range(1, k):
        neg_chi = 0
        for i in range(k - l - 1):
            ri, rj, di, dj = r[i], r[i + l + 1], d[i], d[i + l + 1]
            neg_chi += ri * dj - rj * di + ri * rj * twist_deg + ri * rj * (1 - g)
        for i in range(k - l):
            ri, rj, di, dj = r[i], r[i + l], d[i], d[i + l]
            neg_chi -= ri * dj - rj * di + ri * rj * (1 - g)
        total += neg_chi
    return 2 * total


def _bundle_moduli_dim(r: int, g: int) -> int:
    return r * r * (g - 1) + 1


def _vhs12_nonempty(d1: int, d: int, dL: int) -> bool:
    # d/3 < d1 < d/3 - dL/2
    return 3 * d1 > d and 6 * d1 < 2 * d - 3 * dL


def stratum_dimension(t: VHSType, spec: ModuliSpec) -> int:
    """Dimension of a nonempty stratum of one of the supported shapes."""
    g, d, dL = spec.g, spec.d, spec.dL
    ranks = t.ranks
    if len(ranks) == 1:
        return _bundle_moduli_dim(ranks[0], g)
    if ranks == (1, 1):
        d1 = t.degs[0]
        return (d - 2 * d1 - dL) + g
    if ranks == (1, 2):
        d1 = t.degs[0]
        dd = t.total_deg
        return 3 * g - 2 - 3 * d1 + dd - 2 * dL
    if ranks == (2, 1):
        dual = VHSType((1, 2), (t.degs[0] - t.total_deg, -t.degs[0]))
        return stratum_dimension(dual, spec)
    if ranks == (1, 1, 1):
        d1, d2 = t.degs[0], t.degs[1]
        return (-d1 + d2 - dL) + (d - d1 - 2 * d2 - dL) + g
    raise InvalidSpec(f"unsupported stratum shape {ranks}")


def _stratum_nonempty(t: VHSType, spec: ModuliSpec) -> bool:
    d, dL = spec.d, spec.dL
    ranks = t.ranks
    if len(ranks) == 1:
        return True
    if ranks == (1, 1):
        d1 = t.degs[0]
        return 2 * d1 > d and 2 * d1 <= d - dL
    if ranks == (1, 2):
        return _vhs12_nonempty(t.degs[0], t.total_deg, dL)
    if ranks == (2, 1):
        return _vhs12_nonempty(t.degs[0] - t.total_deg, -t.total_deg, dL)
    if ranks == (1, 1, 1):
        return (t.degs[0], t.degs[1]) in set(triple_stratum_degrees(d, dL))
    return False


def bb_exponent(t: VHSType, spec: ModuliSpec) -> int:
    """Rank N+ of the attracting affine bundle over a stratum."""
    spec.validate()
    if not _stratum_nonempty(t, spec):
        raise EmptyStratum(f"stratum {t} is empty for {spec}")
    m = morse_index(t, -spec.dL, spec.g)
    return dimension(spec) - stratum_dimension(t, spec) - m // 2


# ---------------------------------------------------------------------------
# Delta set for (1,1,1) strata
# ---------------------------------------------------------------------------

def triple_stratum_degrees(d: int, dL: int) -> List[Tuple[int, int]]:
    """All degree pairs (d1, d2) of nonempty (1,1,1) strata.

    The four defining inequalities are a - b <= -dL, a + 2b - d <= -dL,
    a > d/3, a + b > 2d/3; the enumeration below runs over the equivalent
    explicit bounds (strictness handled with floor + 1, exact for every d).
    """
    if dL >= 0:
        raise ValueError("twist degree must be negative")
    out: List[Tuple[int, int]] = []
    a_lo = d // 3 + 1
    a_hi = d // 3 - dL
    for a in range(a_lo, a_hi + 1):
        b_lo = max(dL + a, (2 * d) // 3 + 1 - a)
        b_hi = (d - dL - a) // 2
        for b in range(b_lo, b_hi + 1):
            out.append((a, b))
    return out


# ---------------------------------------------------------------------------
# stratum classes
# ---------------------------------------------------------------------------

def bundle_moduli_class(env: AtomEnvironment, r: int, d: int):
    """Class of the moduli of stable bundles of rank r and coprime degree d."""
    if r == 1:
        return jacobian_class(env)
    if math.gcd(r, d) != 1:
        raise InvalidSpec(f"gcd({r}, {d}) != 1")
    L = env.lefschetz
    jac = jacobian_class(env)
    if r == 2:
        num = jac * h1_poly(env, L) - L ** env.genus * jac * jac
        return _div(_div(num, L - 1), L * L - 1)
    if r == 3:
        g = env.genus
        pl = h1_poly(env, L)
        pl2 = h1_poly(env, L * L)
        num = jac * (
            L ** (3 * g - 1) * (1 + L + L * L) * jac * jac
            - L ** (2 * g - 1) * (1 + L) * (1 + L) * jac * pl
            + pl * pl2
        )
        for f in (L - 1, L * L - 1, L * L - 1, L ** 3 - 1):
            num = _div(num, f)
        return num
    raise InvalidSpec(f"rank {r} not supported")


def _div(num, den):
    """Exact ring division (rational division, or polynomial exact_divide)."""
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        q = Fraction(num) / Fraction(den)
        return q.numerator if q.denominator == 1 else q
    if isinstance(num, (int, Fraction)):
        num = UVLaurent.const(num)
    if isinstance(den, (int, Fraction)):
        den = UVLaurent.const(den)
    return exact_divide(num, den)


def _vhs12_class(env: AtomEnvironment, d1: int, d: int, dL: int):
    """Stratum class for shape (1,2), first degree d1, total degree d."""
    g = env.genus
    L = env.lefschetz
    jac = jacobian_class(env)
    lam_index = d - d // 3 - 2 * d1 - dL - 1
    if lam_index < 0:
        raise EmptyStratum("negative lambda index in (1,2) stratum")
    cx = curve_class(env)
    cls_plus = cx.plus_geometric(L * L)
    cls_twist = cx.scale(L).plus_geometric(1)
    lead = L ** (2 * (d // 3) - d + d1 + g + 1)
    num = lead * sym_power_class(env, cls_plus, lam_index) - sym_power_class(env, cls_twist, lam_index)
    num = num * jac * jac
    return _div(num, L - 1)


def vhs_class(env: AtomEnvironment, t: VHSType, dL: int):
    """Class of a variation-of-Hodge-structure stratum in the realization."""
    ranks = t.ranks
    d = t.total_deg
    if len(ranks) == 1:
        return bundle_moduli_class(env, ranks[0], d)
    if ranks == (1, 1):
        d1 = t.degs[0]
        if not (2 * d1 > d and 2 * d1 <= d - dL):
            raise EmptyStratum(f"(1,1) stratum empty at d1 = {d1}")
        index = d - 2 * d1 - dL
        return sym_power_class(env, curve_class(env), index) * jacobian_class(env)
    if ranks == (1, 2):
        if not _vhs12_nonempty(t.degs[0], d, dL):
            raise EmptyStratum(f"(1,2) stratum empty at degrees {t.degs}")
        return _vhs12_class(env, t.degs[0], d, dL)
    if ranks == (2, 1):
        if not _vhs12_nonempty(t.degs[0] - d, -d, dL):
            raise EmptyStratum(f"(2,1) stratum empty at degrees {t.degs}")
        return _vhs12_class(env, t.degs[0] - d, -d, dL)
    if ranks == (1, 1, 1):
        d1, d2 = t.degs[0], t.degs[1]
        i1 = -d1 + d2 - dL
        i2 = d - d1 - 2 * d2 - dL
        if i1 < 0 or i2 < 0 or 3 * d1 <= d or 3 * (d1 + d2) <= 2 * d:
            raise EmptyStratum(f"(1,1,1) stratum empty at degrees {t.degs}")
        cx = curve_class(env)
        return (sym_power_class(env, cx, i1) * sym_power_class(env, cx, i2)
                * jacobian_class(env))
    raise InvalidSpec(f"unsupported stratum shape {ranks}")


# ---------------------------------------------------------------------------
# full motivic classes, ranks 1..3
# ---------------------------------------------------------------------------

def strata_for(spec: ModuliSpec) -> List[VHSType]:
    """All nonempty strata of the decomposition, in a fixed order."""
    spec.validate()
    d, dL = spec.d, spec.dL
    if spec.r == 1:
        return [VHSType((1,), (d,))]
    if spec.r == 2:
        out = [VHSType((2,), (d,))]
        for d1 in range(d // 2 + 1, _rfloor(Fraction(d - dL, 2)) + 1):
            out.append(VHSType((1, 1), (d1, d - d1)))
        return out
    out = [VHSType((3,), (d,))]
    for d1 in range(d // 3 + 1, _rfloor(Fraction(d, 3) - Fraction(dL, 2)) + 1):
        out.append(VHSType((1, 2), (d1, d - d1)))
    for d1 in range((2 * d) // 3 + 1, _rfloor(Fraction(2 * d, 3) - Fraction(dL, 2)) + 1):
        out.append(VHSType((2, 1), (d1, d - d1)))
    for d1, d2 in triple_stratum_degrees(d, dL):
        out.append(VHSType((1, 1, 1), (d1, d2, d - d1 - d2)))
    return out


def motive(env: AtomEnvironment, spec: ModuliSpec):
    """[M(r, d)] in the realization: sum over strata of L^(N+) [VHS]."""
    spec.validate()
    if env.genus != spec.g:
        raise InvalidSpec("environment genus differs from spec genus")
    L = env.lefschetz
    total = 0
    for t in strata_for(spec):
        exponent = bb_exponent(t, spec)
        total = total + L ** exponent * vhs_class(env, t, spec.dL)
    return total


def motive_rank1(env: AtomEnvironment, spec: ModuliSpec):
    return motive(env, spec)


def motive_rank2(env: AtomEnvironment, spec: ModuliSpec):
    if spec.r != 2:
        raise InvalidSpec("motive_rank2 needs r = 2")
    return motive(env, spec)


def motive_rank3(env: AtomEnvironment, spec: ModuliSpec):
    if spec.r != 3:
        raise InvalidSpec("motive_rank3 needs r = 3")
    return motive(env, spec)


# ---------------------------------------------------------------------------
# E-polynomials via coefficient extraction (closed forms)
# ---------------------------------------------------------------------------

def _epoly_bundle(g: int, r: int) -> UVLaurent:
    env = make_hodge_env(g)
    return bundle_moduli_class(env, r, 1)


def _extract_x0(factors: List[Tuple[int, "object"]], n: int) -> UVLaurent:
    """Coefficient of x^n in a product of series factors.

    Each factor is given as (shift, builder); the builder receives the
    absolute order the factor must be expanded to.  Orders are chosen so the
    product is complete up to n plus two guard terms.
    """
    total_shift = sum(s for s, _ in factors)
    built = []
    for s, builder in factors:
        built.append(builder(n + 2 - (total_shift - s)))
    prod = series_product(built)
    assert prod.order >= n + 2
    return prod.coeff(n)


def epoly_rank1(spec: ModuliSpec) -> UVLaurent:
    spec.validate()
    g, dL = spec.g, spec.dL
    env = make_hodge_env(g)
    return UV ** (1 - dL - g) * jacobian_class(env)


def epoly_rank2(spec: ModuliSpec) -> UVLaurent:
    """E-polynomial of the rank-2 moduli (d odd), exact in u, v."""
    spec.validate()
    if spec.r != 2:
        raise InvalidSpec("epoly_rank2 needs r = 2")
    g, dL = spec.g, spec.dL
    env = make_hodge_env(g)
    jac = jacobian_class(env)
    em2 = _epoly_bundle(g, 2)

    def znum(order):
        return h1_series(env, order)

    extraction = _extract_x0(
        [
            (dL + 1, lambda o: TruncatedSeries.monomial(1, dL + 1, o)),
            (0, znum),
            (0, lambda o: TruncatedSeries.geometric(1, 2, o)),
            (0, lambda o: TruncatedSeries.geometric(1, 1, o)),
            (0, lambda o: TruncatedSeries.geometric(UV, 1, o)),
        ],
        0,
    )
    return UV ** (-4 * dL + 4 - 4 * g) * em2 + UV ** (-3 * dL + 2 - 2 * g) * jac * extraction


def _rank3_single_extractions(g: int, dL: int) -> Tuple[UVLaurent, UVLaurent, UVLaurent, UVLaurent]:
    env = make_hodge_env(g)
    uv2 = UV * UV

    def znum(order):
        return h1_series(env, order)

    def shifted(shift):
        return (shift, lambda o: TruncatedSeries.monomial(1, shift, o))

    geom = TruncatedSeries.geometric
    plus_dens = [
        (0, lambda o: geom(1, 1, o)),
        (0, lambda o: geom(UV, 1, o)),
        (0, lambda o: geom(uv2, 1, o)),
        (0, lambda o: geom(UV, 2, o)),
    ]
    # 1/(uv - x) = (uv)^-1 / (1 - x/uv); 1/((uv)^2 - x^2) likewise in x^2
    inv_uv = UV ** (-1)
    inv_uv2 = uv2 ** (-1)
    twist_dens = [
        (0, lambda o: geom(1, 1, o)),
        (0, lambda o: geom(UV, 1, o)),
        (0, lambda o: geom(inv_uv, 1, o).scale(inv_uv)),
        (0, lambda o: geom(inv_uv2, 2, o).scale(inv_uv2)),
    ]
    s1 = _extract_x0([shifted(dL + 2), (0, znum)] + plus_dens, 0)
    s2 = _extract_x0([shifted(dL + 2), (0, znum)] + twist_dens, 0)
    s3 = _extract_x0([shifted(dL + 1), (0, znum)] + plus_dens, 0)
    s4 = _extract_x0([shifted(dL + 1), (0, znum)] + twist_dens, 0)
    return s1, s2, s3, s4


def _rank3_double_extraction(g: int, dL: int) -> UVLaurent:
    """coeff_{x^0 y^0} of the (1,1,1) generating kernel."""
    env = make_hodge_env(g)
    numerator = {
        (2, 1): 1,
        (-dL + 2, 2 * dL + 1): -1,
        (2 * dL + 2, -dL + 1): -1,
        (dL + 2, dL + 1): 1,
    }
    factors_min = [min(i + j for i, j in numerator), 0, 0, 0, 0, -1, -1]
    total_min = sum(factors_min)
    caps = [0 + 2 - (total_min - m) for m in factors_min]

    def xs(series, cap):
        return BiSeries.from_x_series(series, cap)

    def ys(series, cap):
        return BiSeries.from_y_series(series, cap)

    geom = TruncatedSeries.geometric
    parts = [
        BiSeries.from_monomials(numerator, caps[0]),
        xs(h1_series(env, caps[1]) * geom(1, 1, caps[1]) * geom(UV, 1, caps[1]), caps[1]),
        ys(h1_series(env, caps[2], var="y") * geom(1, 1, caps[2], var="y")
           * geom(UV, 1, caps[2], var="y"), caps[2]),
        BiSeries.inv_x_minus_y2(caps[5]),
        BiSeries.inv_y_minus_x2(caps[6]),
    ]
    prod = parts[0]
    for part in parts[1:]:
        prod = prod * part
    assert prod.level_cap >= 0
    return prod.coeff(0, 0)


def epoly_rank3(spec: ModuliSpec) -> UVLaurent:
    """E-polynomial of the rank-3 moduli (gcd(3, d) = 1), exact in u, v."""
    spec.validate()
    if spec.r != 3:
        raise InvalidSpec("epoly_rank3 needs r = 3")
    g, dL = spec.g, spec.dL
    env = make_hodge_env(g)
    jac = jacobian_class(env)
    em3 = _epoly_bundle(g, 3)
    s1, s2, s3, s4 = _rank3_single_extractions(g, dL)
    d5 = _rank3_double_extraction(g, dL)
    pref = jac * jac  # (1-u)^2g (1-v)^2g

    pair_a = pref * (UV ** (-7 * dL + 6 - 4 * g) * s1 - UV ** (-8 * dL + 6 - 5 * g) * s2)
    pair_b = pref * (UV ** (-7 * dL + 5 - 4 * g) * s3 - UV ** (-8 * dL + 7 - 5 * g) * s4)
    uv_minus_1 = UV - 1
    return (
        UV ** (-9 * dL + 9 - 9 * g) * em3
        + exact_divide(pair_a, uv_minus_1)
        + exact_divide(pair_b, uv_minus_1)
        + jac * UV ** (-6 * dL + 3 - 3 * g) * d5
    )


def epoly(spec: ModuliSpec) -> UVLaurent:
    spec.validate()
    if spec.r == 1:
        return epoly_rank1(spec)
    if spec.r == 2:
        return epoly_rank2(spec)
    return epoly_rank3(spec)


# ---------------------------------------------------------------------------
# Betti numbers
# ---------------------------------------------------------------------------

def poincare(e: UVLaurent) -> List[int]:
    """Betti numbers of a variety with pure cohomology, from its E-polynomial.

    The compactly supported polynomial E(-t, -t) = sum b_k^c t^k is read
    backwards through Poincare duality (b_k = b^c_{2D - k}, D = dim), so the
    returned list starts with b_0.  Every coefficient must be a nonnegative
    integer; a violation means the input was not the E-polynomial of a
    smooth variety with pure structure.
    """
    diag: Dict[int, object] = {}
    for (a, b), c in e.items():
        k = a + b
        diag[k] = diag.get(k, 0) + c * (-1) ** k
    diag = {k: c for k, c in diag.items() if c != 0}
    if not diag:
        raise NegativeBetti("zero E-polynomial has no Betti numbers")
    top = max(diag)
    out: List[int] = []
    for k in range(top + 1):
        bk = diag.get(top - k, 0)
        if isinstance(bk, Fraction):
            if bk.denominator != 1:
                raise NegativeBetti(f"non-integral Betti coefficient b_{k} = {bk}")
            bk = bk.numerator
        if bk < 0:
            raise NegativeBetti(f"negative Betti coefficient b_{k} = {bk}")
        out.append(bk)
    while out and out[-1] == 0:
        out.pop()
    return out
