"""Real-root isolation for univariate polynomials over the rationals.

Roots are isolated by Sturm-sequence sign-variation counting; intervals are
bisected down to a requested width.  Rational roots are detected exactly
(rational-root-theorem candidates, bounded trial division) and reported as
exact values; everything else stays an isolating interval that can be
refined on demand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import UndecidedSign

DEFAULT_PRECISION = Fraction(1, 10**12)

# trial-division budget for rational-root candidate enumeration
_FACTOR_BOUND = 10**12

UniPoly = tuple  # tuple[Fraction, ...] ascending, trimmed


def unipoly(coeffs: Sequence) -> UniPoly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: UniPoly) -> int:
    return len(p) - 1


def evaluate(p: UniPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def deriv(p: UniPoly) -> UniPoly:
    return unipoly([c * i for i, c in enumerate(p)][1:])


def _divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    d = len(b) - 1
    lead = b[-1]
    while len(rem) - 1 >= d and rem:
        c = rem[-1] / lead
        k = len(rem) - 1 - d
        q[k] = c
        for i, bc in enumerate(b):
            rem[k + i] -= c * bc
        while rem and rem[-1] == 0:
            rem.pop()
    return unipoly(q), unipoly(rem)


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return unipoly([c / lead for c in a])


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: returns [(factor, multiplicity), ...]."""
    if degree(p) < 1:
        return []
    g = gcd(p, deriv(p))
    if degree(g) == 0:
        return [(p, 1)]
    out = []
    w, _ = _divmod(p, g)
    y, _ = _divmod(deriv(p), g)
    z = unipoly([yc - wc for yc, wc in _pad(y, deriv(w))])
    k = 1
    while degree(w) > 0:
        f = gcd(w, z)
        if degree(f) > 0:
            out.append((f, k))
        w, _ = _divmod(w, f)
        y, _ = _divmod(z, f)
        z = unipoly([yc - wc for yc, wc in _pad(y, deriv(w))])
        k += 1
    return out


def _pad(a: UniPoly, b: UniPoly):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else Fraction(0), b[i] if i < len(b) else Fraction(0))


def squarefree_part(p: UniPoly) -> UniPoly:
    g = gcd(p, deriv(p))
    if degree(g) <= 0:
        return p
    q, _ = _divmod(p, g)
    return q


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    chain = [p, deriv(p)]
    while degree(chain[-1]) > 0:
        _, r = _divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(unipoly([-c for c in r]))
    return [c for c in chain if c]


def sign_variations(chain: list[UniPoly], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[UniPoly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]."""
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def _divisors(n: int) -> list[int] | None:
    """All positive divisors, or None when n exceeds the trial budget."""
    n = abs(n)
    if n == 0:
        return [1]
    if n > _FACTOR_BOUND:
        return None
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(p: UniPoly) -> list[Fraction]:
    """Exact rational roots (without multiplicity), when enumerable."""
    if degree(p) < 1:
        return []
    # clear denominators to an integer polynomial
    L = 1
    for c in p:
        L = L * c.denominator // math.gcd(L, c.denominator)
    ip = [int(c * L) for c in p]
    while ip and ip[0] == 0:
        ip.pop(0)  # factor out x
    roots = set()
    if len(ip) < len(p):
        roots.add(Fraction(0))
    if len(ip) <= 1:
        return sorted(roots)
    ps = _divisors(ip[0])
    qs = _divisors(ip[-1])
    if ps is None or qs is None:
        return sorted(roots)
    for a in ps:
        for b in qs:
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and evaluate(p, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _deflate(p: UniPoly, root: Fraction) -> UniPoly:
    q, r = _divmod(p, unipoly([-root, 1]))
    assert not r, "deflation by a non-root"
    return q


@dataclass
class IsolatedRoot:
    """A real root: exact rational, or an isolating interval with its poly.

    For interval roots, ``poly`` is squarefree with a strict sign change on
    (lo, hi) and the root is the unique one inside.
    """

    lo: Fraction
    hi: Fraction
    poly: UniPoly | None = None
    exact: Fraction | None = None
    multiplicity: int = 1

    @classmethod
    def from_exact(cls, value: Fraction, multiplicity: int = 1) -> "IsolatedRoot":
        return cls(lo=value, hi=value, exact=value, multiplicity=multiplicity)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refine(self, precision: Fraction) -> "IsolatedRoot":
        """Shrink the isolating interval to width <= precision (bisection)."""
        if self.is_exact:
            return self
        lo, hi = self.lo, self.hi
        flo = evaluate(self.poly, lo)
        assert flo != 0 and evaluate(self.poly, hi) != 0
        sign_lo = flo > 0
        while hi - lo > precision:
            mid = (lo + hi) / 2
            v = evaluate(self.poly, mid)
            if v == 0:
                return IsolatedRoot.from_exact(mid, self.multiplicity)
            if (v > 0) == sign_lo:
                lo = mid
            else:
                hi = mid
        return IsolatedRoot(lo=lo, hi=hi, poly=self.poly, multiplicity=self.multiplicity)

    def sort_key(self):
        return (self.lo, self.hi)

    def __str__(self):
        if self.is_exact:
            return str(self.exact)
        return f"[{self.lo}, {self.hi}]"


def real_roots(p, precision: Fraction = DEFAULT_PRECISION) -> list[IsolatedRoot]:
    """Isolate every real root of ``p`` (rational coefficients).

    Rational roots come back exact; the rest as intervals of width at most
    ``precision``.  Multiplicities are taken from the squarefree
    decomposition of ``p``.  Results sort ascending.
    """
    p = unipoly(p)
    if not p:
        raise ValueError("real_roots of the zero polynomial")
    if degree(p) < 1:
        return []
    out: list[IsolatedRoot] = []
    for factor, mult in squarefree_decomposition(p):
        for root in _real_roots_squarefree(factor, precision):
            root.multiplicity = mult
            out.append(root)
    out.sort(key=IsolatedRoot.sort_key)
    return out


def _real_roots_squarefree(p: UniPoly, precision: Fraction) -> list[IsolatedRoot]:
    roots = [IsolatedRoot.from_exact(r) for r in rational_roots(p)]
    for r in roots:
        p = _deflate(p, r.exact)
    if degree(p) < 1:
        return roots
    chain = sturm_chain(p)
    bound = root_bound(p)
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(chain, lo, hi)
        if n == 0:
            continue
        if n == 1:
            # one simple root strictly inside (endpoints are never roots),
            # so there is a sign change and bisection refinement applies
            roots.append(IsolatedRoot(lo=lo, hi=hi, poly=p).refine(precision))
            continue
        mid = (lo + hi) / 2
        step = (hi - lo) / 1024
        while evaluate(p, mid) == 0:
            # a rational root that escaped candidate enumeration; nudge the
            # split point off it so interval endpoints stay non-roots
            roots.append(IsolatedRoot.from_exact(mid))
            p = _deflate(p, mid)
            chain = sturm_chain(p)
            mid = mid + step
        stack.append((lo, mid))
        stack.append((mid, hi))
    return roots


# ---------------------------------------------------------------------------
# interval arithmetic (for pushing isolated roots through polynomials)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        assert self.lo <= self.hi

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def of_root(cls, r: IsolatedRoot) -> "Interval":
        if r.is_exact:
            return cls.point(r.exact)
        return cls(r.lo, r.hi)

    def __add__(self, other):
        other = _ival(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_ival(other))

    def __rsub__(self, other):
        return _ival(other) + (-self)

    def __mul__(self, other):
        other = _ival(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _ival(other)
        if other.contains_zero():
            raise ZeroDivisionError("interval division through zero")
        inv = Interval(min(1 / other.lo, 1 / other.hi), max(1 / other.lo, 1 / other.hi))
        return self * inv

    def __pow__(self, n: int):
        out = Interval.point(1)
        for _ in range(n):
            out = out * self
        return out

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int:
        """Certified sign: +1, -1, or raises UndecidedSign when 0 inside."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        raise UndecidedSign(f"interval {self} straddles zero")


def _ival(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(Fraction(x))


def eval_interval(p: UniPoly, x: Interval) -> Interval:
    acc = Interval.point(0)
    for c in reversed(p):
        acc = acc * x + Interval.point(c)
    return acc
