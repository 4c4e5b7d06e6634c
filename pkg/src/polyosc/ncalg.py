"""Brute-force verification oracle for the three-generator algebra.

Words in the abstract generators A, B, C are rewritten into the normal
basis A^i B^j C^k (A-powers left, C-powers right) using the three oriented
relations

    B.A -> A.B - C
    C.A -> A.C - rhs2          rhs2 = [A,C] right-hand side
    C.B -> B.C - rhs3          rhs3 = [B,C] right-hand side

Each application strictly decreases the number of order inversions in a
word, so rewriting terminates; uniqueness of the normal form for a closed
algebra is certified per-spec by the Jacobi-residual and associativity
probes in the tests, not assumed.

The module also carries the commutative analogue ``ABCPoly`` with the
derivation-rule Poisson bracket, which serves as the classical verifier.
"""
from __future__ import annotations

import sys
from fractions import Fraction
from typing import Iterable, Sequence

from .ring import CoeffPoly

Exp = tuple  # (i, j, k) exponents of A, B, C

_ORD = {"A": 0, "B": 1, "C": 2}

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


def _coerce_coeff(c) -> CoeffPoly:
    return CoeffPoly.coerce(c)


class NCElement:
    """Normal-ordered noncommutative polynomial: {(i,j,k): CoeffPoly}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[Exp, CoeffPoly] = {}
        if terms:
            for exp, c in terms.items():
                c = _coerce_coeff(c)
                if not c.is_zero:
                    prev = clean.get(exp)
                    if prev is None:
                        clean[exp] = c
                    else:
                        s = prev + c
                        if s.is_zero:
                            del clean[exp]
                        else:
                            clean[exp] = s
        self.terms = clean

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls) -> "NCElement":
        return cls()

    @classmethod
    def monomial(cls, i: int, j: int, k: int, coeff=1) -> "NCElement":
        return cls({(i, j, k): coeff})

    @classmethod
    def scalar(cls, c) -> "NCElement":
        return cls({(0, 0, 0): c})

    # -- predicates ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    # -- linear structure -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, NCElement):
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            prev = out.get(exp)
            s = c if prev is None else prev + c
            if s.is_zero:
                out.pop(exp, None)
            else:
                out[exp] = s
        e = NCElement.__new__(NCElement)
        e.terms = out
        return e

    def __neg__(self):
        e = NCElement.__new__(NCElement)
        e.terms = {exp: -c for exp, c in self.terms.items()}
        return e

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NCElement":
        c = _coerce_coeff(c)
        if c.is_zero:
            return NCElement.zero()
        e = NCElement.__new__(NCElement)
        e.terms = {exp: v * c for exp, v in self.terms.items()}
        return e

    def coeff(self, i: int, j: int, k: int) -> CoeffPoly:
        return self.terms.get((i, j, k), CoeffPoly.zero())

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for (i, j, k), c in self.sorted_terms():
            word = "".join(
                g * e for g, e in (("A", i), ("B", j), ("C", k))
            )
            parts.append(f"({c})*{word or '1'}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCElement({self})"


def _word_of(exp: Exp) -> tuple:
    i, j, k = exp
    return ("A",) * i + ("B",) * j + ("C",) * k


class RewriteSystem:
    """Oriented relations of one algebra, with a memoized word normalizer."""

    def __init__(self, alpha: Sequence, beta, delta, epsilon, zeta,
                 lam: Sequence, eta, omega: Sequence):
        self.alpha = [_coerce_coeff(a) for a in alpha]
        self.beta = _coerce_coeff(beta)
        self.delta = _coerce_coeff(delta)
        self.epsilon = _coerce_coeff(epsilon)
        self.zeta = _coerce_coeff(zeta)
        self.lam = [_coerce_coeff(v) for v in lam]
        self.eta = _coerce_coeff(eta)
        self.omega = [_coerce_coeff(w) for w in omega]
        self._memo: dict[tuple, NCElement] = {}
        self._memo_right: dict[tuple, NCElement] = {}
        self._build_rules()

    # generators as elements
    @property
    def A(self) -> NCElement:
        return NCElement.monomial(1, 0, 0)

    @property
    def B(self) -> NCElement:
        return NCElement.monomial(0, 1, 0)

    @property
    def C(self) -> NCElement:
        return NCElement.monomial(0, 0, 1)

    def _build_rules(self):
        one = CoeffPoly.one()
        # B.A -> A.B - C
        self._rules = {}
        self._rules[("B", "A")] = NCElement({(1, 1, 0): one, (0, 0, 1): -one})
        # [A,C] right-hand side, already normal:
        #   sum_i alpha_i A^i + delta B + epsilon + beta {A,B}
        # with {A,B} = 2 A.B - C
        rhs2 = NCElement({(0, 1, 0): self.delta, (0, 0, 0): self.epsilon})
        for i, a in enumerate(self.alpha, start=1):
            rhs2 = rhs2 + NCElement({(i, 0, 0): a})
        rhs2 = rhs2 + NCElement({(1, 1, 0): 2 * self.beta, (0, 0, 1): -self.beta})
        self.rhs2 = rhs2
        # C.A -> A.C - rhs2
        self._rules[("C", "A")] = NCElement({(1, 0, 1): one}) - rhs2
        # [B,C] right-hand side needs B.A^i normal-ordered (rules 1-2 suffice)
        rhs3 = NCElement({(0, 2, 0): -self.beta, (0, 1, 0): self.eta,
                          (0, 0, 0): self.zeta})
        for i, l in enumerate(self.lam, start=1):
            rhs3 = rhs3 + NCElement({(i, 0, 0): l})
        for i, w in enumerate(self.omega, start=1):
            anti = NCElement({(i, 1, 0): one}) + self.normal_order_word(
                ("B",) + ("A",) * i
            )
            rhs3 = rhs3 + anti.scale(w)
        self.rhs3 = rhs3
        # C.B -> B.C - rhs3
        self._rules[("C", "B")] = NCElement({(0, 1, 1): one}) - rhs3

    # -- normal ordering ---------------------------------------------------
    def normal_order_word(self, word: tuple, rightmost: bool = False) -> NCElement:
        memo = self._memo_right if rightmost else self._memo
        hit = memo.get(word)
        if hit is not None:
            return hit
        pos = -1
        indices: Iterable[int] = range(len(word) - 1)
        if rightmost:
            indices = range(len(word) - 2, -1, -1)
        for p in indices:
            if _ORD[word[p]] > _ORD[word[p + 1]]:
                pos = p
                break
        if pos < 0:
            i = word.count("A")
            j = word.count("B")
            k = word.count("C")
            result = NCElement.monomial(i, j, k)
        else:
            rule = self._rules[(word[pos], word[pos + 1])]
            head, tail = word[:pos], word[pos + 2:]
            result = NCElement.zero()
            for exp, c in rule.terms.items():
                sub = self.normal_order_word(head + _word_of(exp) + tail, rightmost)
                result = result + sub.scale(c)
        memo[word] = result
        return result

    def normal_order(self, x, rightmost: bool = False) -> NCElement:
        """Normal form of a word (tuple of generator names) or NCElement."""
        if isinstance(x, tuple):
            return self.normal_order_word(x, rightmost)
        out = NCElement.zero()
        for exp, c in x.terms.items():
            out = out + self.normal_order_word(_word_of(exp), rightmost).scale(c)
        return out

    # -- products ---------------------------------------------------------
    def mul(self, x: NCElement, y: NCElement) -> NCElement:
        out = NCElement.zero()
        for e1, c1 in x.terms.items():
            w1 = _word_of(e1)
            for e2, c2 in y.terms.items():
                nf = self.normal_order_word(w1 + _word_of(e2))
                out = out + nf.scale(c1 * c2)
        return out

    def pow(self, x: NCElement, n: int) -> NCElement:
        out = NCElement.scalar(1)
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def commutator(self, x: NCElement, y: NCElement) -> NCElement:
        return self.mul(x, y) - self.mul(y, x)

    def anticommutator(self, x: NCElement, y: NCElement) -> NCElement:
        return self.mul(x, y) + self.mul(y, x)

    def jacobi_residual(self) -> NCElement:
        """normal_order([A,[B,C]] - [B,[A,C]]); zero iff the algebra closes."""
        bc = self.commutator(self.B, self.C)
        ac = self.commutator(self.A, self.C)
        return self.commutator(self.A, bc) - self.commutator(self.B, ac)


# -- the spec's operation surface -------------------------------------------


def normal_order(x, rw: RewriteSystem) -> NCElement:
    return rw.normal_order(x)


def commutator(x: NCElement, y: NCElement, rw: RewriteSystem) -> NCElement:
    return rw.commutator(x, y)


def anticommutator(x: NCElement, y: NCElement, rw: RewriteSystem) -> NCElement:
    return rw.anticommutator(x, y)


def jacobi_residual(rw: RewriteSystem) -> NCElement:
    return rw.jacobi_residual()


def is_zero(x: NCElement) -> bool:
    return x.is_zero


# ---------------------------------------------------------------------------
# commutative ABC polynomials with the derivation-rule Poisson bracket
# (the classical verifier)
# ---------------------------------------------------------------------------


class ABCPoly:
    """Commutative polynomial in the generators A, B, C over CoeffPoly."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[Exp, CoeffPoly] = {}
        if terms:
            for exp, c in terms.items():
                c = _coerce_coeff(c)
                if not c.is_zero:
                    prev = clean.get(exp)
                    s = c if prev is None else prev + c
                    if s.is_zero:
                        clean.pop(exp, None)
                    else:
                        clean[exp] = s
        self.terms = clean

    @classmethod
    def monomial(cls, i: int, j: int, k: int, coeff=1) -> "ABCPoly":
        return cls({(i, j, k): coeff})

    @classmethod
    def scalar(cls, c) -> "ABCPoly":
        return cls({(0, 0, 0): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ABCPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, CoeffPoly.zero()) + c
            if s.is_zero:
                out.pop(exp, None)
            else:
                out[exp] = s
        e = ABCPoly.__new__(ABCPoly)
        e.terms = out
        return e

    def __neg__(self):
        e = ABCPoly.__new__(ABCPoly)
        e.terms = {exp: -c for exp, c in self.terms.items()}
        return e

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return self.scale(other)
        out: dict[Exp, CoeffPoly] = {}
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                exp = (i1 + i2, j1 + j2, k1 + k2)
                s = out.get(exp, CoeffPoly.zero()) + c1 * c2
                if s.is_zero:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        e = ABCPoly.__new__(ABCPoly)
        e.terms = out
        return e

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ABCPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "ABCPoly":
        c = _coerce_coeff(c)
        if c.is_zero:
            return ABCPoly()
        e = ABCPoly.__new__(ABCPoly)
        e.terms = {exp: v * c for exp, v in self.terms.items()}
        return e

    def partial(self, axis: int) -> "ABCPoly":
        out: dict[Exp, CoeffPoly] = {}
        for exp, c in self.terms.items():
            e = exp[axis]
            if e:
                new = list(exp)
                new[axis] = e - 1
                key = tuple(new)
                s = out.get(key, CoeffPoly.zero()) + c * e
                if not s.is_zero:
                    out[key] = s
        p = ABCPoly.__new__(ABCPoly)
        p.terms = out
        return p

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for (i, j, k), c in sorted(self.terms.items()):
            word = "".join(g * e for g, e in (("A", i), ("B", j), ("C", k)))
            parts.append(f"({c})*{word or '1'}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ABCPoly({self})"


class PoissonStructure:
    """The classical bracket on ABC polynomials, fixed by the three relations.

    {A,B} = C, {A,C} = rhs_ac, {B,C} = rhs_bc, extended by the derivation
    rule in each slot.
    """

    def __init__(self, rhs_ac: ABCPoly, rhs_bc: ABCPoly):
        self.rhs_ac = rhs_ac
        self.rhs_bc = rhs_bc
        self._c = ABCPoly.monomial(0, 0, 1)

    def bracket(self, f: ABCPoly, g: ABCPoly) -> ABCPoly:
        fa, fb, fc = (f.partial(i) for i in range(3))
        ga, gb, gc = (g.partial(i) for i in range(3))
        out = (fa * gb - fb * ga) * self._c
        out = out + (fa * gc - fc * ga) * self.rhs_ac
        out = out + (fb * gc - fc * gb) * self.rhs_bc
        return out

    def jacobi_residual(self) -> ABCPoly:
        a = ABCPoly.monomial(1, 0, 0)
        b = ABCPoly.monomial(0, 1, 0)
        return self.bracket(a, self.rhs_bc) - self.bracket(b, self.rhs_ac)
