"""Exact power-series analytics and singularity root-finding.

Generating functions live in :class:`TruncatedSeries` with exact rational
coefficients (EGF convention: the stored coefficient of ``z^m`` is the EGF
coefficient; labeled counts are ``m!`` times it).  The module computes

* labeling counts ``ell(t)`` and weights ``w(t) = ell(t)/k!`` by formula
  (hook lengths in plane mode, a multinomial/automorphism recursion in
  Polya mode, both validated against the brute-force oracle);
* the family series T, the avoidance series S_t for both families, and the
  exact expected compacted size as a finite sum over shapes;
* the auxiliary entire functions G (recursive family) and u (binary
  family), their series, and high-precision locations of the dominant
  singularity 1 + epsilon of S_t, with residual reporting.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .enumerator import enumerate_shapes
from .trees import PLANE, POLYA, BinaryShape, PolyaShape, signature

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency
    _Q = Fraction

_Q0 = _Q(0)
_Q1 = _Q(1)


def as_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


# ---------------------------------------------------------------------------
# exact truncated power series


class TruncatedSeries:
    """Power series with exact rational coefficients, truncated at order N."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [_Q(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if len(coeffs) < order + 1:
            coeffs += [_Q0] * (order + 1 - len(coeffs))
        self.coeffs = coeffs[:order + 1]
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    @classmethod
    def monomial(cls, coeff, power: int, order: int) -> "TruncatedSeries":
        coeffs = [_Q0] * (order + 1)
        if power <= order:
            coeffs[power] = _Q(coeff)
        return cls(coeffs, order)

    def __getitem__(self, m: int):
        return self.coeffs[m] if 0 <= m <= self.order else _Q0

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other):
        order = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(order + 1)], order)

    def __sub__(self, other):
        order = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(order + 1)], order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        order = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [_Q0] * (order + 1)
        for i in range(order + 1):
            ai = a[i]
            if ai:
                for j in range(order + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(out, order)

    def scale(self, c) -> "TruncatedSeries":
        c = _Q(c)
        return TruncatedSeries([x * c for x in self.coeffs], self.order)

    def differentiate(self) -> "TruncatedSeries":
        out = [self.coeffs[m] * m for m in range(1, self.order + 1)]
        return TruncatedSeries(out, self.order - 1)

    def integrate(self) -> "TruncatedSeries":
        out = [_Q0] + [self.coeffs[m] / (m + 1) for m in range(self.order + 1)]
        return TruncatedSeries(out, self.order + 1)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        if not self.coeffs[0]:
            raise ZeroDivisionError("series has no multiplicative inverse")
        order = self.order
        inv0 = _Q1 / self.coeffs[0]
        out = [inv0] + [_Q0] * order
        for m in range(1, order + 1):
            acc = _Q0
            for j in range(1, m + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[m - j]
            out[m] = -inv0 * acc
        return TruncatedSeries(out, order)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, via E' = f' E."""
        if self.coeffs[0]:
            raise ValueError("exp requires a zero constant term")
        order = self.order
        out = [_Q1] + [_Q0] * order
        for m in range(1, order + 1):
            acc = _Q0
            for j in range(1, m + 1):
                if self.coeffs[j]:
                    acc += j * self.coeffs[j] * out[m - j]
            out[m] = acc / m
        return TruncatedSeries(out, order)

    def log_inv_one_minus(self) -> "TruncatedSeries":
        """ln(1/(1-f)) for a series f with zero constant term."""
        if self.coeffs[0]:
            raise ValueError("requires a zero constant term")
        one_minus = TruncatedSeries.monomial(1, 0, self.order) - self
        return (self.differentiate() * one_minus.inverse()).integrate()

    def evaluate(self, x):
        """Horner evaluation at an mpmath number (for numeric checks)."""
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + mpmath.mpf(int(c.numerator)) / int(c.denominator)
        return acc


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightedShape:
    shape: object
    k: int
    ell: int
    w: Fraction


def _ell_plane(shape: BinaryShape) -> int:
    # hook length formula: k! / product of fringe subtree sizes
    product = 1
    stack = [shape]
    while stack:
        s = stack.pop()
        if s is None:
            continue
        product *= s.size
        stack.append(s.left)
        stack.append(s.right)
    ell, rem = divmod(math.factorial(shape.size), product)
    assert rem == 0
    return ell


_ELL_POLYA_MEMO: dict = {}


def _ell_polya(shape: PolyaShape) -> int:
    """Increasing labelings of an unordered shape:
    (k-1)! * prod ell(t_i) / prod k_i! / prod m_j!  where the m_j are the
    multiplicities of identical child shapes."""
    if not shape.children:
        return 1
    cached = _ELL_POLYA_MEMO.get(signature(shape))
    if cached is not None:
        return cached
    num = math.factorial(shape.size - 1)
    den = 1
    mult: dict = {}
    for child in shape.children:
        num *= _ell_polya(child)
        den *= math.factorial(child.size)
        sig = signature(child)
        mult[sig] = mult.get(sig, 0) + 1
    for m in mult.values():
        den *= math.factorial(m)
    ell, rem = divmod(num, den)
    assert rem == 0, "labeling count recursion produced a non-integer"
    _ELL_POLYA_MEMO[signature(shape)] = ell
    return ell


def weight(shape) -> WeightedShape:
    """Exact labeling count and weight of a shape."""
    if isinstance(shape, BinaryShape):
        ell = _ell_plane(shape)
    elif isinstance(shape, PolyaShape):
        ell = _ell_polya(shape)
    else:
        raise TypeError(f"not a shape: {shape!r}")
    k = shape.size
    return WeightedShape(shape, k, ell, Fraction(ell, math.factorial(k)))


def max_plane_weight(k: int) -> Fraction:
    """max over plane shapes of size k of w(t), by the size-splitting
    recurrence w_k = max_l (w_l * w_{k-1-l}) / k."""
    best = [Fraction(1)]
    for n in range(1, k + 1):
        best.append(max(best[left] * best[n - 1 - left]
                        for left in range(n)) / n)
    return best[k]


def max_weight_plane_shape(k: int) -> BinaryShape:
    """A plane shape attaining the maximal weight at size k."""
    best: list = [(Fraction(1), None)]
    for n in range(1, k + 1):
        cands = []
        for left in range(n):
            w = best[left][0] * best[n - 1 - left][0] / n
            cands.append((w, left))
        w, left = max(cands)
        best.append((w, BinaryShape(best[left][1], best[n - 1 - left][1])))
    return best[k][1]


# ---------------------------------------------------------------------------
# family and avoidance series


def series_T(family: str, order: int) -> TruncatedSeries:
    """T(z) = ln 1/(1-z) (recursive) or z/(1-z) (binary), truncated."""
    if family == "recursive":
        return TruncatedSeries([_Q0] + [_Q(1, m) for m in range(1, order + 1)],
                               order)
    if family == "bst":
        return TruncatedSeries([_Q0] + [_Q1] * order, order)
    raise ValueError(f"unknown family {family!r}")


def _series_S_recursive(k: int, w, order: int) -> TruncatedSeries:
    # S_t = ln(1/(1 - int_0^z exp(-P_t))) - P_t  with  P_t = w z^k
    p = TruncatedSeries.monomial(w, k, order)
    g = p.scale(-1).exp().integrate()
    g = TruncatedSeries(g.coeffs[:order + 1], order)
    return g.log_inv_one_minus() - p

def _series_S_binary(k: int, w, order: int) -> TruncatedSeries:
    # ODE S' = (1 + S)^2 - P_t'; coefficient recurrence, S(0) = 0
    w = _Q(w)
    s = [_Q0] * (order + 1)
    for n in range(order):
        conv = _Q1 if n == 0 else 2 * s[n]
        for i in range(1, n):
            if s[i]:
                conv += s[i] * s[n - i]
        if n == k - 1:
            conv -= k * w
        s[n + 1] = conv / (n + 1)
    return TruncatedSeries(s, order)


@lru_cache(maxsize=4096)
def _series_S_cached(family: str, k: int, w_num: int, w_den: int,
                     order: int) -> TruncatedSeries:
    w = _Q(w_num, w_den)
    if family == "recursive":
        return _series_S_recursive(k, w, order)
    if family == "bst":
        return _series_S_binary(k, w, order)
    raise ValueError(f"unknown family {family!r}")


def series_S_t(family: str, shape, order: int) -> TruncatedSeries:
    """EGF of the family members avoiding ``shape`` as a fringe subtree."""
    mode = POLYA if family == "recursive" else PLANE
    if shape.mode != mode:
        raise ValueError(f"shape mode {shape.mode} does not match {family}")
    ws = weight(shape)
    return _series_S_cached(family, ws.k, ws.w.numerator, ws.w.denominator,
                            order)


def coefficient_ratio_check(family: str, shape, n: int) -> Fraction:
    """[z^n] S_t / [z^n] T: the probability that a uniform size-n member
    avoids the shape as a fringe subtree."""
    s = series_S_t(family, shape, n)
    t = series_T(family, n)
    return as_fraction(s[n] / t[n])


MAX_EXPECTED_N = 12


@lru_cache(maxsize=None)
def _weight_groups(mode: str, k: int) -> tuple:
    """Distinct (ell, multiplicity) pairs over shapes of size k."""
    groups: dict = {}
    for shape in enumerate_shapes(mode, k):
        ell = weight(shape).ell
        groups[ell] = groups.get(ell, 0) + 1
    return tuple(sorted(groups.items()))


def expected_size_series(family: str, n: int) -> Fraction:
    """Exact E(X_n) = sum over shapes of size <= n of
    (1 - [z^n]S_t / [z^n]T), grouping shapes with equal (k, ell) since S_t
    depends on the shape only through them."""
    if not 1 <= n <= MAX_EXPECTED_N:
        raise ValueError(f"n must be in 1..{MAX_EXPECTED_N}, got {n}")
    mode = POLYA if family == "recursive" else PLANE
    t_n = series_T(family, n)[n]
    total = _Q0
    for k in range(1, n + 1):
        for ell, count in _weight_groups(mode, k):
            w = _Q(ell, math.factorial(k))
            s = _series_S_cached(family, k, int(w.numerator),
                                 int(w.denominator), n)
            total += count * (_Q1 - s[n] / t_n)
    return as_fraction(total)


# ---------------------------------------------------------------------------
# the entire functions G and u, and root-finding


@dataclass(frozen=True)
class RootResult:
    """Location of the dominant singularity 1 + epsilon."""
    rho: mpmath.mpf
    epsilon: mpmath.mpf
    bracket: tuple
    residual: mpmath.mpf


class RootFindingError(RuntimeError):
    pass


def _to_mpf(q) -> mpmath.mpf:
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def g_eval(k: int, w, z):
    """G(z) = sum_{l>=0} (-w)^l z^{lk+1} / ((lk+1) l!), an entire function."""
    w = _to_mpf(w)
    z = mpmath.mpf(z)
    term_base = mpmath.mpf(1)
    zk = z ** k
    total = mpmath.mpf(0)
    zpow = z
    ell = 0
    while True:
        term = term_base * zpow / (ell * k + 1)
        total += term
        if abs(term) < mpmath.eps * max(1, abs(total)):
            break
        ell += 1
        term_base *= -w / ell
        zpow *= zk
        if ell > 10000:  # pragma: no cover - convergence is factorial
            raise RootFindingError("G series did not converge")
    return total


def u_eval(k: int, w, z):
    """u(z) = e^z (z A(z) - B(z)) with the falling-factorial sums A, B."""
    w = _to_mpf(w)
    z = mpmath.mpf(z)
    alpha = mpmath.mpf(1) / (k + 1)
    q = w * k / (k + 1) ** 2
    zk1 = z ** (k + 1)
    a_total = mpmath.mpf(0)
    b_total = mpmath.mpf(0)
    coeff = mpmath.mpf(1)   # q^m / m!
    ff_plus = mpmath.mpf(1)  # (m+alpha)_m
    ff_minus = mpmath.mpf(1)  # (m-alpha)_m
    zpow = mpmath.mpf(1)
    m = 0
    while True:
        a_term = coeff / ff_plus * zpow
        b_term = coeff / ff_minus * zpow
        a_total += a_term
        b_total += b_term
        if max(abs(a_term), abs(b_term)) < mpmath.eps * max(
                1, abs(a_total), abs(b_total)):
            break
        m += 1
        coeff *= q / m
        # (m+a)_m = (m-1+a)_{m-1} * (m+a) * ... incremental update:
        # (m+a)_m / (m-1+a)_{m-1} = (m+a)! -like ratio, recompute directly
        ff_plus = _falling(m + alpha, m)
        ff_minus = _falling(m - alpha, m)
        zpow *= zk1
        if m > 10000:  # pragma: no cover
            raise RootFindingError("u series did not converge")
    return mpmath.e ** z * (z * a_total - b_total)


def _falling(x, m: int):
    acc = mpmath.mpf(1)
    for i in range(m):
        acc *= x - i
    return acc


def _bisect(f, lo, hi, tol):
    flo = f(lo)
    fhi = f(hi)
    if flo == 0:
        return lo, (lo, hi)
    if flo * fhi > 0:
        raise RootFindingError("no sign change on the bracket")
    bracket = (lo, hi)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fmid = f(mid)
        if fmid == 0:
            lo = hi = mid
            break
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return (lo + hi) / 2, bracket


def _digits_for(tol: float | str) -> int:
    return max(30, int(-mpmath.log10(mpmath.mpf(tol))) + 15)


def g_root(shape, tol=mpmath.mpf("1e-40")) -> RootResult:
    """Smallest root > 1 of G(z) = 1 for a Polya shape; the dominant
    singularity of the recursive-family avoidance series."""
    if not isinstance(shape, PolyaShape):
        raise TypeError("g_root expects a Polya shape")
    ws = weight(shape)
    return g_root_kw(ws.k, ws.w, tol)


def g_root_kw(k: int, w: Fraction, tol=mpmath.mpf("1e-40")) -> RootResult:
    if k < 2:
        raise ValueError("k must be >= 2 (the leaf has S_t identically 0)")
    tol = mpmath.mpf(tol)
    with mpmath.workdps(_digits_for(tol)):
        # the crude singularity bound gives the bracket [1, 1 + 2w/k]
        hi = 1 + 2 * _to_mpf(w) / k
        f = lambda z: g_eval(k, w, z) - 1
        root, bracket = _bisect(f, mpmath.mpf(1), hi, tol)
        residual = abs(f(root))
        return RootResult(mpmath.mpf(root), mpmath.mpf(root) - 1,
                          (mpmath.mpf(bracket[0]), mpmath.mpf(bracket[1])),
                          mpmath.mpf(residual))


def u_root(shape=None, tol=mpmath.mpf("1e-40"), k: int | None = None,
           w: Fraction | None = None) -> RootResult:
    """Smallest real root > 1 of u for a plane shape; the dominant
    singularity of the binary-family avoidance series.  The bracket starts
    at the asymptotic location 1 + 2w/k^2 and expands until a sign change
    appears."""
    if shape is not None:
        if not isinstance(shape, BinaryShape):
            raise TypeError("u_root expects a plane shape")
        ws = weight(shape)
        k, w = ws.k, ws.w
    if k is None or w is None:
        raise ValueError("need a shape or (k, w)")
    if k < 2:
        raise ValueError("k must be >= 2")
    tol = mpmath.mpf(tol)
    with mpmath.workdps(_digits_for(tol)):
        f = lambda z: u_eval(k, w, z)
        base = 2 * _to_mpf(w) / k ** 2
        lo = mpmath.mpf(1)
        if f(lo) == 0:
            raise RootFindingError("u vanishes at 1; shape outside the model")
        scale = mpmath.mpf(2)
        for _ in range(64):
            hi = 1 + scale * base
            if f(lo) * f(hi) < 0:
                root, bracket = _bisect(f, lo, hi, tol)
                residual = abs(f(root))
                return RootResult(mpmath.mpf(root), mpmath.mpf(root) - 1,
                                  (mpmath.mpf(bracket[0]),
                                   mpmath.mpf(bracket[1])),
                                  mpmath.mpf(residual))
            scale *= 2
        raise RootFindingError(
            f"no sign change of u found up to 1 + {scale}*2w/k^2")


# ---------------------------------------------------------------------------
# exact series for u, two independent routes


def u_series(shape=None, order: int = 64, method: str = "bessel",
             k: int | None = None, w: Fraction | None = None
             ) -> TruncatedSeries:
    """Exact series of u with u(0) = -1, u'(0) = 0.

    ``method="bessel"`` expands the explicit falling-factorial solution;
    ``method="ode"`` runs the defining second-order recurrence.  The two are
    asserted equal in the test suite (mutual validation).
    """
    if shape is not None:
        if not isinstance(shape, BinaryShape):
            raise TypeError("u_series expects a plane shape")
        ws = weight(shape)
        k, w = ws.k, ws.w
    if k is None or w is None:
        raise ValueError("need a shape or (k, w)")
    w = _Q(w.numerator, w.denominator) if isinstance(w, Fraction) else _Q(w)
    if method == "ode":
        return _u_series_ode(k, w, order)
    if method == "bessel":
        return _u_series_bessel(k, w, order)
    raise ValueError(f"unknown method {method!r}")


def _u_series_ode(k: int, w, order: int) -> TruncatedSeries:
    # u'' - 2u' + (1 - w k z^{k-1}) u = 0, u(0) = -1, u'(0) = 0
    u = [_Q(-1), _Q0] + [_Q0] * max(0, order - 1)
    wk = w * k
    for n in range(order - 1):
        acc = 2 * (n + 1) * u[n + 1] - u[n]
        if n - (k - 1) >= 0:
            acc += wk * u[n - (k - 1)]
        u[n + 2] = acc / ((n + 2) * (n + 1))
    return TruncatedSeries(u[:order + 1], order)


def _u_series_bessel(k: int, w, order: int) -> TruncatedSeries:
    q = w * k / _Q((k + 1) ** 2)
    alpha = _Q(1, k + 1)

    def lacunary(shift_sign) -> TruncatedSeries:
        coeffs = [_Q0] * (order + 1)
        m = 0
        while (k + 1) * m <= order:
            ff = _Q1
            x = m + shift_sign * alpha
            for i in range(m):
                ff *= x - i
            coeffs[(k + 1) * m] = q ** m / (_Q(math.factorial(m)) * ff)
            m += 1
        return TruncatedSeries(coeffs, order)

    expz = TruncatedSeries(
        [_Q1 / math.factorial(m) for m in range(order + 1)], order)
    a = lacunary(+1)
    b = lacunary(-1)
    za = TruncatedSeries([_Q0] + a.coeffs[:order], order)
    return expz * (za - b)


def random_plane_shape(k: int, rng: random.Random) -> BinaryShape:
    """Uniform-ish random plane shape of size k (for cross-validation
    sweeps; distribution does not matter, coverage does)."""
    if k == 1:
        return BinaryShape()
    left = rng.randrange(k)
    lshape = random_plane_shape(left, rng) if left else None
    rshape = random_plane_shape(k - 1 - left, rng) if k - 1 - left else None
    return BinaryShape(lshape, rshape)
