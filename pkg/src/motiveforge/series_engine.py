"""Truncated power series and exact rational functions in a formal parameter.

Three carriers live here, all generic over the coefficient ring (plain
rationals in the numeric realization, ``UVLaurent`` in the Hodge one; any
ring element supporting ``+``, ``-``, ``*`` and comparison with the scalar
literals 0 and 1 works):

* :class:`TruncatedSeries` - univariate truncated series with an explicit
  Laurent shift, used for every single-variable coefficient extraction.
* :class:`TRational` - exact rational function in ``t``: a Laurent numerator
  polynomial over a *factored* denominator, a multiset of terms
  ``(1 - c*t^m)``.  Denominators are never expanded, so no polynomial GCD is
  ever required; factors with ``c == 1`` are the only sources of poles at
  ``t = 1`` and are tracked explicitly for :func:`eval_at_one`.
* :class:`BiSeries` - a bivariate Laurent window truncated by total degree,
  used for the one double coefficient extraction in the rank-3 E-polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .base_rings import UVLaurent, exact_divide


class InsufficientTruncation(ValueError):
    """A coefficient beyond the series truncation order was requested."""


class BadConstantTerm(ValueError):
    """series_log requires a series with constant term 1."""


class PoleAtOne(ArithmeticError):
    """The rational function has a genuine pole at t = 1."""


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


def ring_exact_div(num, den):
    """Exact division in the coefficient ring (rationals or UVLaurent)."""
    if isinstance(den, (int, Fraction)):
        if den == 0:
            raise ZeroDivisionError("division by zero scalar")
        if isinstance(num, UVLaurent):
            return num * (Fraction(1) / Fraction(den))
        q = Fraction(num) / Fraction(den)
        return q.numerator if q.denominator == 1 else q
    if isinstance(num, (int, Fraction)):
        num = UVLaurent.const(num)
    return exact_divide(num, den)


# ---------------------------------------------------------------------------
# univariate truncated series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Truncated Laurent series sum_{n=shift..order} c_n x^n.

    ``order`` is the largest exponent whose coefficient is known; arithmetic
    never consults coefficients beyond it and propagates the truncation
    bound through products the standard way.
    """

    __slots__ = ("shift", "order", "coeffs", "var")

    def __init__(self, coeffs: Sequence, shift: int = 0, order: int | None = None, var: str = "x"):
        coeffs = list(coeffs)
        if order is None:
            order = shift + len(coeffs) - 1
        want = order - shift + 1
        if want < 0:
            raise ValueError("order below shift")
        if len(coeffs) < want:
            coeffs = coeffs + [0] * (want - len(coeffs))
        else:
            coeffs = coeffs[:want]
        self.coeffs = coeffs
        self.shift = shift
        self.order = order
        self.var = var

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value, order: int, var: str = "x") -> "TruncatedSeries":
        return cls([value], shift=0, order=order, var=var)

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int, var: str = "x") -> "TruncatedSeries":
        return cls([coeff], shift=exponent, order=order, var=var)

    @classmethod
    def geometric(cls, c, m: int, order: int, var: str = "x") -> "TruncatedSeries":
        """The expansion of 1 / (1 - c*x^m) to the requested order."""
        if m < 1:
            raise ValueError("geometric step must be >= 1")
        coeffs: List = [0] * (order + 1)
        power = 1
        k = 0
        while k <= order:
            coeffs[k] = power
            power = power * c
            k += m
        return cls(coeffs, shift=0, order=order, var=var)

    @classmethod
    def from_poly(cls, terms: Dict[int, object], order: int, var: str = "x") -> "TruncatedSeries":
        """Series holding an exact (Laurent) polynomial given as exp -> coeff."""
        if not terms:
            return cls([], shift=0, order=order, var=var)
        shift = min(terms)
        coeffs: List = [0] * (order - shift + 1)
        for e, c in terms.items():
            if e <= order:
                coeffs[e - shift] = c
        return cls(coeffs, shift=shift, order=order, var=var)

    # -- basics ------------------------------------------------------------

    def coeff(self, n: int):
        if n > self.order:
            raise InsufficientTruncation(
                f"coefficient of {self.var}^{n} requested, series truncated at {self.order}"
            )
        if n < self.shift:
            return 0
        return self.coeffs[n - self.shift]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        shift = min(self.shift, other.shift)
        order = min(self.order, other.order)
        out = [0] * (order - shift + 1)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.shift + i
                if e <= order:
                    out[e - shift] = out[e - shift] + c
        return TruncatedSeries(out, shift=shift, order=order, var=self.var)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        shift = self.shift + other.shift
        order = min(self.order + other.shift, other.order + self.shift)
        out = [0] * (order - shift + 1)
        for i, a in enumerate(self.coeffs):
            if isinstance(a, int) and a == 0:
                continue
            ea = self.shift + i
            top = order - ea
            for j, b in enumerate(other.coeffs):
                eb = other.shift + j
                if eb > top:
                    break
                if isinstance(b, int) and b == 0:
                    continue
                out[ea + eb - shift] = out[ea + eb - shift] + a * b
        return TruncatedSeries(out, shift=shift, order=order, var=self.var)

    def scale(self, factor) -> "TruncatedSeries":
        return TruncatedSeries([c * factor for c in self.coeffs], shift=self.shift,
                               order=self.order, var=self.var)


def series_product(factors: Sequence[TruncatedSeries]) -> TruncatedSeries:
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1, truncated at s.order.

    Uses the standard recurrence l_n = a_n - (1/n) * sum_{k<n} k * l_k * a_{n-k}
    so only exact scalar divisions by integers occur.
    """
    if s.shift > 0:
        raise BadConstantTerm("constant term is not 1")
    if any(not _eq_scalar(s.coeff(n), 0) for n in range(s.shift, 0)):
        raise BadConstantTerm("series has terms below x^0")
    if not _eq_scalar(s.coeff(0), 1):
        raise BadConstantTerm("constant term is not 1")
    order = s.order
    a = [s.coeff(n) for n in range(order + 1)]
    log_coeffs: List = [0] * (order + 1)
    for n in range(1, order + 1):
        acc = a[n]
        for k in range(1, n):
            term = log_coeffs[k] * a[n - k]
            acc = acc - term * Fraction(k, n)
        log_coeffs[n] = acc
    return TruncatedSeries(log_coeffs, shift=0, order=order, var=s.var)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """Formal exponential of a series with zero constant term."""
    if not _eq_scalar(s.coeff(0), 0):
        raise BadConstantTerm("series_exp needs zero constant term")
    order = s.order
    a = [s.coeff(n) for n in range(order + 1)]
    e: List = [1] + [0] * order
    for n in range(1, order + 1):
        acc = 0
        for k in range(1, n + 1):
            acc = acc + (a[k] * e[n - k]) * Fraction(k, n)
        e[n] = acc
    return TruncatedSeries(e, shift=0, order=order, var=s.var)


def _eq_scalar(value, scalar) -> bool:
    try:
        return value == scalar
    except TypeError:
        return False


# ---------------------------------------------------------------------------
# rational functions in t with factored denominators
# ---------------------------------------------------------------------------

# numerator representation: dict {t_exponent: ring coefficient}

def _tp_add(a: Dict[int, object], b: Dict[int, object]) -> Dict[int, object]:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if _is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _is_zero(x) -> bool:
    if isinstance(x, UVLaurent):
        return x.is_zero()
    return x == 0


def _tp_scale(a: Dict[int, object], factor) -> Dict[int, object]:
    if _is_zero(factor):
        return {}
    return {e: c * factor for e, c in a.items()}


def _tp_mul(a: Dict[int, object], b: Dict[int, object]) -> Dict[int, object]:
    out: Dict[int, object] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            k = ea + eb
            s = out.get(k, 0) + ca * cb
            if _is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
    return out


def _tp_mul_factor(a: Dict[int, object], c, m: int) -> Dict[int, object]:
    """Multiply a t-polynomial by (1 - c*t^m)."""
    out = dict(a)
    for e, x in a.items():
        k = e + m
        s = out.get(k, 0) - x * c
        if _is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _tp_divide_factor(a: Dict[int, object], c, m: int):
    """Exact division of a t-polynomial by (1 - c*t^m); None if not exact.

    Uses the recurrence q[e] = a[e] + c*q[e-m] from the bottom exponent up,
    then verifies the reconstruction (cheap, and robust for Laurent input).
    """
    if not a:
        return {}
    lo = min(a)
    hi = max(a)
    q: Dict[int, object] = {}
    for e in range(lo, hi - m + 1):
        val = a.get(e, 0)
        prev = q.get(e - m)
        if prev is not None:
            val = val + prev * c
        if not _is_zero(val):
            q[e] = val
    # verify: q * (1 - c t^m) == a
    if _tp_mul_factor(q, c, m) != a:
        return None
    return q


def _tp_subst_power(a: Dict[int, object], j: int) -> Dict[int, object]:
    return {e * j: c for e, c in a.items()}


def _den_sort_key(c):
    if isinstance(c, UVLaurent):
        return (1, c.sort_key())
    f = Fraction(c)
    return (0, (f.numerator, f.denominator))


class TRational:
    """Exact rational function in t: Laurent numerator over factored denominator.

    The denominator is a multiset of pairs ``(c, m)`` standing for factors
    ``(1 - c*t^m)``; ``c`` is a unit of the coefficient ring (a rational, or
    a monomial in the Hodge realization).  Addition and multiplication
    opportunistically cancel denominator factors that divide the numerator
    exactly, which keeps the pipeline outputs in lowest terms whenever the
    underlying class is actually polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Dict[int, object], den: Sequence[Tuple[object, int]] = (), reduce: bool = True):
        self.num = {e: c for e, c in num.items() if not _is_zero(c)}
        self.den = tuple(sorted(den, key=lambda f: (f[1], _den_sort_key(f[0]))))
        if reduce:
            self._reduce()

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_scalar(cls, value) -> "TRational":
        return cls({0: value} if not _is_zero(value) else {}, ())

    @classmethod
    def coerce(cls, value) -> "TRational":
        if isinstance(value, TRational):
            return value
        return cls.from_scalar(value)

    # -- normalization -----------------------------------------------------

    def _reduce(self) -> None:
        if not self.den or not self.num:
            return
        den = list(self.den)
        changed = True
        while changed and den:
            changed = False
            for i, (c, m) in enumerate(den):
                q = _tp_divide_factor(self.num, c, m)
                if q is not None:
                    self.num = q
                    del den[i]
                    changed = True
                    break
        self.den = tuple(den)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return not self.den

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = TRational.coerce(other)
        union = _multiset_max(self.den, o.den)
        a = self.num
        for f in _multiset_sub(union, self.den):
            a = _tp_mul_factor(a, f[0], f[1])
        b = o.num
        for f in _multiset_sub(union, o.den):
            b = _tp_mul_factor(b, f[0], f[1])
        return TRational(_tp_add(a, b), union)

    __radd__ = __add__

    def __neg__(self):
        return TRational(_tp_scale(self.num, -1), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-TRational.coerce(other))

    def __rsub__(self, other):
        return TRational.coerce(other) + (-self)

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, UVLaurent):
            return TRational(_tp_scale(self.num, other), self.den, reduce=False)
        if not isinstance(other, TRational):
            return NotImplemented
        return TRational(_tp_mul(self.num, other.num), self.den + other.den)

    def __rmul__(self, other):
        if _is_scalar(other) or isinstance(other, UVLaurent):
            return TRational(_tp_scale(self.num, other), self.den, reduce=False)
        return NotImplemented

    def mul_poly_factor(self, c, m: int) -> "TRational":
        """Multiply by the polynomial (1 - c*t^m), cancelling against the
        denominator when the factor is present there."""
        den = list(self.den)
        for i, f in enumerate(den):
            if f[1] == m and f[0] == c:
                del den[i]
                return TRational(self.num, den, reduce=False)
        return TRational(_tp_mul_factor(self.num, c, m), den, reduce=False)

    def __eq__(self, other):
        o = TRational.coerce(other)
        union = _multiset_max(self.den, o.den)
        a = self.num
        for f in _multiset_sub(union, self.den):
            a = _tp_mul_factor(a, f[0], f[1])
        b = o.num
        for f in _multiset_sub(union, o.den):
            b = _tp_mul_factor(b, f[0], f[1])
        return a == b

    def __hash__(self):
        raise TypeError("TRational is not hashable")

    def __repr__(self):
        den = " * ".join(f"(1 - ({c})*t^{m})" for c, m in self.den) or "1"
        return f"TRational({self.num} / {den})"


def _multiset_max(a: Sequence, b: Sequence) -> tuple:
    counts: Dict = {}
    for seq in (a, b):
        local: Dict = {}
        for f in seq:
            local[f] = local.get(f, 0) + 1
        for f, n in local.items():
            counts[f] = max(counts.get(f, 0), n)
    out = []
    for f, n in counts.items():
        out.extend([f] * n)
    return tuple(sorted(out, key=lambda f: (f[1], _den_sort_key(f[0]))))


def _multiset_sub(a: Sequence, b: Sequence) -> list:
    remaining = list(a)
    for f in b:
        remaining.remove(f)
    return remaining


def trational_arith(a: TRational, b: TRational, op: str) -> TRational:
    """Spec-surface wrapper: exact add / mul of rational functions."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute_t_power(a: TRational, j: int) -> TRational:
    """t -> t^j on the numerator; each factor (1 - c*t^m) -> (1 - c*t^(j*m))."""
    if j < 1:
        raise ValueError("power substitution needs j >= 1")
    if j == 1:
        return a
    return TRational(_tp_subst_power(a.num, j),
                     tuple((c, m * j) for c, m in a.den), reduce=False)


def eval_at_one(a: TRational):
    """Exact value of the rational function at t = 1.

    Factors (1 - t^m) are split as (1 - t) * (1 + t + ... + t^(m-1)); the
    numerator must be exactly divisible by the resulting power of (1 - t)
    (otherwise the value genuinely diverges and PoleAtOne is raised).  The
    remaining denominator value prod (1 - c) * prod (m) is divided out
    exactly in the coefficient ring.
    """
    num = dict(a.num)
    pole_orders = []
    other: List = []
    for c, m in a.den:
        if _eq_scalar(c, 1) or (isinstance(c, UVLaurent) and c == 1):
            pole_orders.append(m)
        else:
            other.append((c, m))
    for _ in pole_orders:
        q = _tp_divide_factor(num, 1, 1)
        if q is None:
            raise PoleAtOne(
                "numerator does not vanish to sufficient order at t = 1"
            )
        num = q
    value = 0
    for c in num.values():
        value = value + c
    scalar = 1
    for m in pole_orders:
        scalar *= m
    denom_value = None
    for c, m in other:
        factor = 1 - c
        denom_value = factor if denom_value is None else denom_value * factor
    if denom_value is not None:
        value = ring_exact_div(value, denom_value)
    if scalar != 1:
        value = ring_exact_div(value, scalar)
    return value


# ---------------------------------------------------------------------------
# bivariate window for the double coefficient extraction
# ---------------------------------------------------------------------------

class BiSeries:
    """Bivariate Laurent series truncated by total degree i + j.

    ``min_level`` is the guaranteed lower bound of i + j over all (stored and
    unstored) terms; ``level_cap`` is the truncation: coefficients with
    i + j <= level_cap are complete.  Products propagate both bounds, which
    is what makes expansions of 1/(x - y^2) and 1/(y - x^2) (bounded below
    in total degree, unbounded in each variable separately) multiply safely.
    """

    __slots__ = ("terms", "min_level", "level_cap")

    def __init__(self, terms: Dict[Tuple[int, int], object], min_level: int, level_cap: int):
        self.terms = {k: c for k, c in terms.items() if k[0] + k[1] <= level_cap and not _is_zero(c)}
        self.min_level = min_level
        self.level_cap = level_cap

    @classmethod
    def from_monomials(cls, terms: Dict[Tuple[int, int], object], level_cap: int) -> "BiSeries":
        min_level = min((i + j for i, j in terms), default=0)
        return cls(terms, min_level, level_cap)

    @classmethod
    def geometric_x(cls, c, level_cap: int) -> "BiSeries":
        """1 / (1 - c*x) expanded in nonnegative powers of x."""
        terms = {}
        power = 1
        for k in range(max(level_cap, 0) + 1):
            terms[(k, 0)] = power
            power = power * c
        return cls(terms, 0, level_cap)

    @classmethod
    def geometric_y(cls, c, level_cap: int) -> "BiSeries":
        terms = {}
        power = 1
        for k in range(max(level_cap, 0) + 1):
            terms[(0, k)] = power
            power = power * c
        return cls(terms, 0, level_cap)

    @classmethod
    def inv_x_minus_y2(cls, level_cap: int) -> "BiSeries":
        """1 / (x - y^2) = sum_k y^(2k) x^(-1-k), valid where |y^2| < |x|."""
        terms = {}
        k = 0
        while k - 1 <= level_cap:
            terms[(-1 - k, 2 * k)] = 1
            k += 1
        return cls(terms, -1, level_cap)

    @classmethod
    def inv_y_minus_x2(cls, level_cap: int) -> "BiSeries":
        """1 / (y - x^2) = sum_k x^(2k) y^(-1-k), valid where |x^2| < |y|."""
        terms = {}
        k = 0
        while k - 1 <= level_cap:
            terms[(2 * k, -1 - k)] = 1
            k += 1
        return cls(terms, -1, level_cap)

    @classmethod
    def from_x_series(cls, s: TruncatedSeries, level_cap: int) -> "BiSeries":
        terms = {(s.shift + i, 0): c for i, c in enumerate(s.coeffs)}
        return cls(terms, s.shift, min(level_cap, s.order))

    @classmethod
    def from_y_series(cls, s: TruncatedSeries, level_cap: int) -> "BiSeries":
        terms = {(0, s.shift + i): c for i, c in enumerate(s.coeffs)}
        return cls(terms, s.shift, min(level_cap, s.order))

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        cap = min(self.level_cap + other.min_level, other.level_cap + self.min_level)
        out: Dict[Tuple[int, int], object] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                i, j = i1 + i2, j1 + j2
                if i + j > cap:
                    continue
                k = (i, j)
                s = out.get(k, 0) + c1 * c2
                if _is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
        return BiSeries(out, self.min_level + other.min_level, cap)

    def coeff(self, i: int, j: int):
        if i + j > self.level_cap:
            raise InsufficientTruncation(
                f"coefficient x^{i} y^{j} beyond total-degree cap {self.level_cap}"
            )
        return self.terms.get((i, j), 0)


def coeff_extract(series, index):
    """Exact coefficient extraction from a truncated series.

    ``index`` is an integer for a univariate series or an (i, j) pair for a
    bivariate window.  Raises InsufficientTruncation when the requested
    coefficient lies beyond the stored order.
    """
    if isinstance(series, BiSeries):
        i, j = index
        return series.coeff(i, j)
    return series.coeff(index)
