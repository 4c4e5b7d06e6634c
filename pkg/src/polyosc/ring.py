"""Exact coefficient arithmetic.

The value tower, built over arbitrary-precision rationals:

* ``CoeffPoly``  -- sparse multivariate polynomial in named structure
  parameters, ``Fraction`` coefficients.
* ``CoeffFrac``  -- the fraction field of ``CoeffPoly``.
* ``NPoly``      -- dense polynomial in the number symbol ``N`` over
  ``CoeffFrac``.
* ``NRatFn``     -- rational function in ``N`` (monic, reduced denominator).

All values are immutable after construction and all normal forms are
canonical, so structural equality is semantic equality.  Floating point is
never used.

Canonical orders (fixed for determinism of fixtures):

* monomials sort by total degree, ties broken by the tuple of
  ``(name, exponent)`` pairs (names ascending inside a monomial);
* a polynomial's canonical associate is integer-primitive with positive
  leading coefficient in that order.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import ExactDivisionError

Scalar = Union[int, Fraction]
Mono = tuple  # tuple[tuple[str, int], ...] with names strictly ascending

_EMPTY: Mono = ()


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        na, ea = a[i]
        nb, eb = b[j]
        if na == nb:
            out.append((na, ea + eb))
            i += 1
            j += 1
        elif na < nb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Mono, b: Mono):
    """a / b as a monomial, or None when not divisible."""
    if not b:
        return a
    bd = dict(b)
    out = []
    for name, e in a:
        r = e - bd.pop(name, 0)
        if r < 0:
            return None
        if r:
            out.append((name, r))
    if bd:
        return None
    return tuple(out)


def _mono_deg(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Mono):
    """Graded-lex key; SMALLER key means BIGGER monomial.

    Earlier parameter names are more significant and higher powers win,
    i.e. the usual grlex order with variables sorted by name.  Negating
    exponents makes the pairwise tuple comparison realize exactly that.
    """
    return (-_mono_deg(m), tuple((n, -e) for n, e in m))


def _mono_str(m: Mono) -> str:
    if not m:
        return "1"
    parts = []
    for name, e in m:
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class CoeffPoly:
    """Sparse exact polynomial in named parameters over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, Scalar] | None = None):
        clean: dict[Mono, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    prev = clean.get(mono)
                    if prev is None:
                        clean[mono] = c
                    else:
                        s = prev + c
                        if s:
                            clean[mono] = s
                        else:
                            del clean[mono]
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "CoeffPoly":
        return cls()

    @classmethod
    def one(cls) -> "CoeffPoly":
        return cls({_EMPTY: 1})

    @classmethod
    def const(cls, q: Scalar) -> "CoeffPoly":
        return cls({_EMPTY: Fraction(q)})

    @classmethod
    def param(cls, name: str) -> "CoeffPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def coerce(cls, x) -> "CoeffPoly":
        if isinstance(x, CoeffPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CoeffPoly")

    # -- predicates ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _EMPTY in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_const:
            raise ValueError(f"not a constant: {self}")
        return self.terms[_EMPTY]

    def names(self) -> list[str]:
        seen: set[str] = set()
        for mono in self.terms:
            for name, _ in mono:
                seen.add(name)
        return sorted(seen)

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(_mono_deg(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        d = -1
        for mono in self.terms:
            for n, e in mono:
                if n == name:
                    d = max(d, e)
                    break
            else:
                d = max(d, 0)
        return d

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        try:
            other = CoeffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, _F0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        try:
            other = CoeffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return CoeffPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return CoeffPoly.zero()
            out = CoeffPoly.__new__(CoeffPoly)
            out.terms = {m: c * q for m, c in self.terms.items()}
            return out
        try:
            other = CoeffPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return CoeffPoly.zero()
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: dict[Mono, Fraction] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                mono = _mono_mul(m1, m2)
                s = acc.get(mono, _F0) + c1 * c2
                if s:
                    acc[mono] = s
                else:
                    acc.pop(mono, None)
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = CoeffPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CoeffPoly.const(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # mutable-dict backed; never used as a key

    # -- structure -----------------------------------------------------
    def leading(self) -> tuple[Mono, Fraction]:
        if self.is_zero:
            return _EMPTY, Fraction(0)
        mono = min(self.terms, key=_mono_key)
        return mono, self.terms[mono]

    def coeff_of(self, mono: Mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def eval_num(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Fully numeric evaluation; every name must be assigned."""
        acc = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for name, e in mono:
                v = v * assignment[name] ** e
            acc += v
        return acc

    def subs(self, assignment: Mapping[str, object]) -> "CoeffPoly":
        """Substitute parameters; values may be CoeffPoly, Fraction or int."""
        if not assignment:
            return self
        vals = {k: CoeffPoly.coerce(v) for k, v in assignment.items()}
        out = CoeffPoly.zero()
        for mono, c in self.terms.items():
            term = CoeffPoly.const(c)
            for name, e in mono:
                rep = vals.get(name)
                if rep is None:
                    term = term * CoeffPoly({((name, 1),): 1}) ** e
                else:
                    term = term * rep**e
            out = out + term
        return out

    def univar(self, name: str) -> list["CoeffPoly"]:
        """Coefficient list in ``name`` (ascending), coefficients free of it."""
        deg = self.degree_in(name)
        coeffs = [CoeffPoly.zero() for _ in range(max(deg, 0) + 1)]
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for n, k in mono:
                if n == name:
                    e = k
                else:
                    rest.append((n, k))
            coeffs[e] = coeffs[e] + CoeffPoly({tuple(rest): c})
        return coeffs

    @staticmethod
    def from_univar(coeffs: Sequence["CoeffPoly"], name: str) -> "CoeffPoly":
        x = CoeffPoly.param(name)
        out = CoeffPoly.zero()
        for e, c in enumerate(coeffs):
            out = out + c * x**e
        return out

    # -- rendering -----------------------------------------------------
    def sorted_terms(self) -> list[tuple[Mono, Fraction]]:
        # _mono_key is inverted, so a plain ascending sort is degree-descending
        return sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            if mono == _EMPTY:
                body = str(c)
            elif c == 1:
                body = _mono_str(mono)
            elif c == -1:
                body = "-" + _mono_str(mono)
            else:
                body = f"{c}*{_mono_str(mono)}"
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append("- " + body[1:])
            else:
                parts.append("+ " + body)
        return " ".join(parts)

    def __repr__(self):
        return f"CoeffPoly({self})"


_F0 = Fraction(0)

ZERO = CoeffPoly.zero()
ONE = CoeffPoly.one()


def parse_coeffpoly(text: str) -> CoeffPoly:
    """Parse the canonical rendering produced by ``str(CoeffPoly)``.

    Accepted grammar: terms joined by ``+``/``-``; each term is
    ``coeff``, ``mono`` or ``coeff*mono`` with ``coeff`` an integer or
    ``p/q`` and ``mono`` a ``*``-joined product of ``name`` or ``name^k``.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return CoeffPoly.zero()
    # tokenize into signed terms; whitespace is purely cosmetic
    s = s.replace(" ", "")
    chunks: list[str] = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "*^/":
            chunks.append(cur)
            cur = ch if ch == "-" else ""
        else:
            cur += ch
    chunks.append(cur)
    out = CoeffPoly.zero()
    for chunk in chunks:
        if not chunk or chunk in "+-":
            raise ValueError(f"malformed term in {text!r}")
        sign = 1
        if chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        elif chunk[0] == "+":
            chunk = chunk[1:]
        coeff = Fraction(sign)
        mono: list[tuple[str, int]] = []
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                name, _, exp = factor.partition("^")
                mono.append((name, int(exp) if exp else 1))
        mono.sort()
        merged: list[tuple[str, int]] = []
        for name, e in mono:
            if merged and merged[-1][0] == name:
                merged[-1] = (name, merged[-1][1] + e)
            else:
                merged.append((name, e))
        out = out + CoeffPoly({tuple(merged): coeff})
    return out


# ---------------------------------------------------------------------------
# gcd machinery over CoeffPoly
# ---------------------------------------------------------------------------


def _rat_content(p: CoeffPoly) -> Fraction:
    """Positive rational c with p/c integer-primitive; sign goes with c."""
    if p.is_zero:
        return Fraction(1)
    num_gcd = 0
    den_lcm = 1
    for c in p.terms.values():
        num_gcd = math.gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    _, lead = p.leading()
    if lead < 0:
        content = -content
    return content


def canonical_associate(p: CoeffPoly) -> CoeffPoly:
    """Integer-primitive scalar multiple of p with positive leading term."""
    if p.is_zero:
        return p
    return p * (1 / _rat_content(p))


def exact_div(f: CoeffPoly, g: CoeffPoly) -> CoeffPoly:
    """Exact polynomial quotient f/g; raises ExactDivisionError otherwise."""
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero:
        return CoeffPoly.zero()
    if g.is_const:
        return f * (1 / g.const_value())
    q_terms: dict[Mono, Fraction] = {}
    rem = f
    g_mono, g_coeff = g.leading()
    while not rem.is_zero:
        r_mono, r_coeff = rem.leading()
        mono = _mono_div(r_mono, g_mono)
        if mono is None:
            raise ExactDivisionError(f"({f}) not divisible by ({g})")
        c = r_coeff / g_coeff
        q_terms[mono] = q_terms.get(mono, _F0) + c
        rem = rem - g * CoeffPoly({mono: c})
    return CoeffPoly(q_terms)


def _univar_trim(coeffs: list[CoeffPoly]) -> list[CoeffPoly]:
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def _univar_content(coeffs: list[CoeffPoly]) -> CoeffPoly:
    acc = CoeffPoly.zero()
    # small coefficients first so the running gcd collapses to 1 early
    for c in sorted((c for c in coeffs if not c.is_zero), key=lambda p: len(p.terms)):
        acc = poly_gcd(acc, c)
        if acc.is_const:
            return CoeffPoly.one()
    return acc if not acc.is_zero else CoeffPoly.one()


def _univar_pseudo_rem(a: list[CoeffPoly], b: list[CoeffPoly]) -> list[CoeffPoly]:
    """Pseudo-remainder of a by b (both ascending coefficient lists)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - la * bc
        a = _univar_trim(a)
    return a


def _univar_subresultant_gcd(a: list[CoeffPoly], b: list[CoeffPoly]) -> list[CoeffPoly]:
    """Subresultant-PRS gcd of two nonzero coefficient lists (up to content).

    Divisors g*h^d keep intermediate growth polynomial; dropped signs only
    change associates, which the caller normalizes away.
    """
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    g = CoeffPoly.one()
    h = CoeffPoly.one()
    while True:
        d = (len(a) - 1) - (len(b) - 1)
        r = _univar_pseudo_rem(a, b)
        if not r:
            return b
        div = g * h**d
        if not (div.is_const and div == CoeffPoly.one()):
            r = [exact_div(c, div) for c in r]
        a, b = b, r
        g = a[-1]
        if d == 1:
            h = g
        elif d > 1:
            h = exact_div(g**d, h ** (d - 1))


def _mono_gcd(m1: Mono, m2: Mono) -> Mono:
    if not m1 or not m2:
        return _EMPTY
    d2 = dict(m2)
    out = []
    for name, e in m1:
        o = d2.get(name)
        if o:
            out.append((name, min(e, o)))
    return tuple(out)


def _monomial_content(p: CoeffPoly) -> Mono:
    it = iter(p.terms)
    acc = next(it)
    for m in it:
        if not acc:
            return _EMPTY
        acc = _mono_gcd(acc, m)
    return acc


def _strip_mono(p: CoeffPoly, mono: Mono) -> CoeffPoly:
    if not mono:
        return p
    out = CoeffPoly.__new__(CoeffPoly)
    out.terms = {_mono_div(m, mono): c for m, c in p.terms.items()}
    return out


def poly_gcd(f: CoeffPoly, g: CoeffPoly) -> CoeffPoly:
    """Canonical gcd (integer-primitive, positive leading coefficient)."""
    if f.is_zero:
        return canonical_associate(g)
    if g.is_zero:
        return canonical_associate(f)
    if f.is_const or g.is_const:
        return CoeffPoly.one()
    # peel off monomial contents first; they multiply into the result and
    # make the pure-monomial cases (ubiquitous as denominators) trivial
    mf = _monomial_content(f)
    mg = _monomial_content(g)
    mono = CoeffPoly({_mono_gcd(mf, mg): 1})
    f = _strip_mono(f, mf)
    g = _strip_mono(g, mg)
    if f.is_const or g.is_const:
        return mono
    if f.terms == g.terms:
        return canonical_associate(f) * mono
    shared = set(f.names()) & set(g.names())
    if not shared:
        return mono
    v = min(shared, key=lambda n: (f.degree_in(n) + g.degree_in(n), n))
    fu = _univar_trim(f.univar(v))
    gu = _univar_trim(g.univar(v))
    cf = _univar_content(fu)
    cg = _univar_content(gu)
    if not cf.is_const:
        fu = [exact_div(c, cf) for c in fu]
    if not cg.is_const:
        gu = [exact_div(c, cg) for c in gu]
    core = _univar_subresultant_gcd(fu, gu)
    ccore = _univar_content(core)
    if not ccore.is_const:
        core = [exact_div(c, ccore) for c in core]
    result = CoeffPoly.from_univar(core, v) * poly_gcd(cf, cg) * mono
    return canonical_associate(result)


def poly_lcm(f: CoeffPoly, g: CoeffPoly) -> CoeffPoly:
    if f.is_zero or g.is_zero:
        return CoeffPoly.zero()
    return canonical_associate(exact_div(f * g, poly_gcd(f, g)))


# ---------------------------------------------------------------------------
# Fraction field of CoeffPoly
# ---------------------------------------------------------------------------


class CoeffFrac:
    """Quotient num/den of CoeffPoly values, kept reduced and canonical.

    The denominator is integer-primitive with positive leading coefficient;
    a constant denominator is always exactly 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = CoeffPoly.coerce(num)
        den = CoeffPoly.one() if den is None else CoeffPoly.coerce(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in CoeffFrac")
        if num.is_zero:
            self.num = num
            self.den = CoeffPoly.one()
            return
        if not den.is_const:
            g = poly_gcd(num, den)
            if not (g.is_const and g == CoeffPoly.one()):
                num = exact_div(num, g)
                den = exact_div(den, g)
        if den.is_const:
            num = num * (1 / den.const_value())
            den = CoeffPoly.one()
        else:
            c = _rat_content(den)
            if c != 1:
                num = num * (1 / c)
                den = den * (1 / c)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "CoeffFrac":
        if isinstance(x, CoeffFrac):
            return x
        if isinstance(x, (CoeffPoly, int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CoeffFrac")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_const(self) -> bool:
        return self.num.is_const and self.den.is_const

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def __add__(self, other):
        try:
            other = CoeffFrac.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return CoeffFrac(self.num + other.num, self.den)
        return CoeffFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = CoeffFrac.__new__(CoeffFrac)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        try:
            other = CoeffFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return CoeffFrac.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CoeffFrac(0)
            out = CoeffFrac.__new__(CoeffFrac)
            out.num = self.num * other
            out.den = self.den
            return out
        try:
            other = CoeffFrac.coerce(other)
        except TypeError:
            return NotImplemented
        return CoeffFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = CoeffFrac.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero CoeffFrac")
        return CoeffFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return CoeffFrac.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return CoeffFrac(self.den, self.num) ** (-n)
        return CoeffFrac(self.num**n, self.den**n)

    def inverse(self) -> "CoeffFrac":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return CoeffFrac(self.den, self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            other = CoeffFrac.coerce(other)
        if not isinstance(other, CoeffFrac):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None

    def subs(self, assignment: Mapping[str, object]) -> "CoeffFrac":
        return CoeffFrac(self.num.subs(assignment), self.den.subs(assignment))

    def names(self) -> list[str]:
        return sorted(set(self.num.names()) | set(self.den.names()))

    def as_poly(self) -> CoeffPoly:
        if self.den == CoeffPoly.one():
            return self.num
        raise ValueError(f"not polynomial: {self}")

    def __str__(self):
        if self.den == CoeffPoly.one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"CoeffFrac({self})"


F_ZERO = CoeffFrac(0)
F_ONE = CoeffFrac(1)


# ---------------------------------------------------------------------------
# Polynomials and rational functions in the number symbol N
# ---------------------------------------------------------------------------


class NPoly:
    """Dense polynomial in N with CoeffFrac coefficients (ascending)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [CoeffFrac.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def N(cls) -> "NPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "NPoly":
        return cls([c])

    @classmethod
    def coerce(cls, x) -> "NPoly":
        if isinstance(x, NPoly):
            return x
        if isinstance(x, (CoeffFrac, CoeffPoly, int, Fraction)):
            return cls([x])
        raise TypeError(f"cannot coerce {type(x).__name__} to NPoly")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> CoeffFrac:
        return self.coeffs[-1] if self.coeffs else F_ZERO

    def coeff(self, k: int) -> CoeffFrac:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else F_ZERO

    def __add__(self, other):
        try:
            other = NPoly.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return NPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return NPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        try:
            other = NPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return NPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly, CoeffFrac)):
            c = CoeffFrac.coerce(other)
            return NPoly([a * c for a in self.coeffs])
        try:
            other = NPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return NPoly()
        out = [F_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return NPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of NPoly")
        result = NPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly, CoeffFrac)):
            other = NPoly.coerce(other)
        if not isinstance(other, NPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def shift(self, k: int) -> "NPoly":
        """N -> N + k, exactly."""
        if k == 0 or self.is_zero:
            return self
        x = NPoly([CoeffFrac(Fraction(k)), F_ONE])  # N + k
        out = NPoly()
        for c in reversed(self.coeffs):
            out = out * x + NPoly([c])
        return out

    def difference(self) -> "NPoly":
        return self.shift(1) - self

    def derivative(self) -> "NPoly":
        return NPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "NPoly":
        """Termwise integral with integration constant 0."""
        return NPoly([F_ZERO] + [c * Fraction(1, i + 1) for i, c in enumerate(self.coeffs)])

    def eval(self, point) -> CoeffFrac:
        x = CoeffFrac.coerce(point) if not isinstance(point, CoeffFrac) else point
        acc = F_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "NPoly") -> "NPoly":
        acc = NPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + NPoly([c])
        return acc

    def monic(self) -> "NPoly":
        if self.is_zero:
            return self
        inv = self.leading().inverse()
        return NPoly([c * inv for c in self.coeffs])

    def divmod(self, other: "NPoly") -> tuple["NPoly", "NPoly"]:
        other = NPoly.coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("NPoly division by zero")
        q = [F_ZERO] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        rem = list(self.coeffs)
        d = other.degree
        inv = other.leading().inverse()
        while len(rem) - 1 >= d and rem:
            c = rem[-1] * inv
            k = len(rem) - 1 - d
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            while rem and rem[-1].is_zero:
                rem.pop()
        return NPoly(q), NPoly(rem)

    def subs_params(self, assignment: Mapping[str, object]) -> "NPoly":
        return NPoly([c.subs(assignment) for c in self.coeffs])

    def names(self) -> list[str]:
        seen: set[str] = set()
        for c in self.coeffs:
            seen.update(c.names())
        return sorted(seen)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c.is_zero:
                continue
            if i == 0:
                body = str(c)
            else:
                mono = "N" if i == 1 else f"N^{i}"
                body = mono if c == F_ONE else f"({c})*{mono}"
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self):
        return f"NPoly({self})"


# two fixed parameter-evaluation points used to screen for common factors;
# a coprime verdict at either point is taken as coprime (sound for
# arithmetic: skipping a reduction never changes the represented value)
_SCREEN_POINTS = ((1009, 97), (2003, 211))


def _screen_assignment(names: list[str], base: int, step: int) -> dict:
    return {n: Fraction(base + step * i) for i, n in enumerate(names)}


def _unifrac_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    while b:
        lead = b[-1]
        rem = list(a)
        d = len(b) - 1
        while len(rem) - 1 >= d and rem:
            c = rem[-1] / lead
            k = len(rem) - 1 - d
            for i, bc in enumerate(b):
                rem[k + i] -= c * bc
            while rem and rem[-1] == 0:
                rem.pop()
        a, b = b, rem
    return len(a) - 1


def _specialized_coeffs(p: NPoly, assign: dict) -> list[Fraction] | None:
    out = []
    for c in p.coeffs:
        den = c.den.eval_num(assign)
        if den == 0:
            return None
        out.append(c.num.eval_num(assign) / den)
    while out and out[-1] == 0:
        out.pop()
    return out


def screened_gcd_degree(a: NPoly, b: NPoly) -> int:
    """Upper bound on the generic gcd degree via fixed evaluation points.

    Returns 0 when some evaluation certifies likely coprimality, -1 when no
    point was usable (callers then do the exact computation).
    """
    names = sorted(set(a.names()) | set(b.names()))
    best = -1
    for base, step in _SCREEN_POINTS:
        assign = _screen_assignment(names, base, step)
        au = _specialized_coeffs(a, assign)
        bu = _specialized_coeffs(b, assign)
        if au is None or bu is None or not au or not bu:
            continue
        if len(au) - 1 != a.degree or len(bu) - 1 != b.degree:
            continue  # leading coefficient vanished; point unusable
        d = _unifrac_gcd_degree(au, bu)
        best = d if best < 0 else min(best, d)
        if best == 0:
            return 0
    return best


def npoly_gcd(a: NPoly, b: NPoly) -> NPoly:
    """Monic gcd in the Euclidean domain CoeffFrac[N]."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    x, y = a.monic(), b.monic()
    while not y.is_zero:
        _, r = x.divmod(y)
        x, y = y, (r if r.is_zero else r.monic())
    return x


class NRatFn:
    """Rational function in N with a monic denominator.

    Common factors between numerator and denominator are cancelled whenever
    the deterministic evaluation screen detects one (always, in practice);
    equality is by cross-multiplication, so a skipped reduction can never
    change the value semantics.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = NPoly.coerce(num)
        den = NPoly([1]) if den is None else NPoly.coerce(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in NRatFn")
        if num.is_zero:
            self.num = num
            self.den = NPoly([1])
            return
        if den.degree > 0 and screened_gcd_degree(num, den) != 0:
            g = npoly_gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        lead = den.leading()
        if not lead == F_ONE:
            inv = lead.inverse()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "NRatFn":
        if isinstance(x, NRatFn):
            return x
        if isinstance(x, (NPoly, CoeffFrac, CoeffPoly, int, Fraction)):
            return cls(NPoly.coerce(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to NRatFn")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_npoly(self) -> NPoly:
        if not self.is_polynomial:
            raise ValueError(f"not polynomial in N: {self}")
        return self.num

    def __add__(self, other):
        try:
            other = NRatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return NRatFn(self.num + other.num, self.den)
        return NRatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = NRatFn.__new__(NRatFn)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        try:
            other = NRatFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return NRatFn.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            other = NRatFn.coerce(other)
        except TypeError:
            return NotImplemented
        return NRatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = NRatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero NRatFn")
        return NRatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return NRatFn.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return NRatFn(self.den, self.num) ** (-n)
        return NRatFn(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly, CoeffFrac, NPoly)):
            other = NRatFn.coerce(other)
        if not isinstance(other, NRatFn):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def reduced(self) -> "NRatFn":
        """Force the full gcd cancellation (bypassing the screen)."""
        if self.den.degree == 0:
            return self
        g = npoly_gcd(self.num, self.den)
        if g.degree == 0:
            return self
        out = NRatFn.__new__(NRatFn)
        out.num = self.num.divmod(g)[0]
        out.den = self.den.divmod(g)[0]
        lead = out.den.leading()
        if not lead == F_ONE:
            inv = lead.inverse()
            out.num = out.num * inv
            out.den = out.den * inv
        return out

    def shift(self, k: int) -> "NRatFn":
        if k == 0:
            return self
        return NRatFn(self.num.shift(k), self.den.shift(k))

    def difference(self) -> "NRatFn":
        return self.shift(1) - self

    def derivative(self) -> "NRatFn":
        return NRatFn(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, point) -> CoeffFrac:
        d = self.den.eval(point)
        if d.is_zero:
            # the pole may be an artifact of a screen-skipped reduction
            forced = self.reduced()
            d = forced.den.eval(point)
            if d.is_zero:
                raise ZeroDivisionError(f"pole of {self} at N={point}")
            return forced.num.eval(point) / d
        return self.num.eval(point) / d

    def subs_params(self, assignment: Mapping[str, object]) -> "NRatFn":
        return NRatFn(self.num.subs_params(assignment), self.den.subs_params(assignment))

    def names(self) -> list[str]:
        return sorted(set(self.num.names()) | set(self.den.names()))

    def __str__(self):
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"NRatFn({self})"


# ---------------------------------------------------------------------------
# the generic [OP] surface: shift / difference / derivative / antiderivative
# ---------------------------------------------------------------------------


def shift(f, k: int):
    """f(N) -> f(N+k) for NPoly or NRatFn."""
    return f.shift(k)


def difference(f):
    """Forward difference f(N+1) - f(N)."""
    return f.difference()


def derivative(f):
    """Formal d/dN."""
    return f.derivative()


def antiderivative(f: NPoly) -> NPoly:
    """Termwise integral of an NPoly, integration constant 0."""
    if isinstance(f, NRatFn):
        return f.as_npoly().antiderivative()
    return f.antiderivative()
