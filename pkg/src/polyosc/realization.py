"""Deformed-oscillator realizations of the closed algebra.

Elements are kept in the rescaled ladder basis

    Lraise = bdag * rho(N),      Llower = rho(N) * b,

which is itself a deformed oscillator with structure function

    Psi(N) = rho(N-1)^2 * Phi(N)        (quantum)
    Gt(N)  = rho(N)^2  * G(N)           (classical)

so every identity of the realization is an exact NRatFn computation and a
bare rho(N) never appears.  A normal-form element is

    sum_{k>0} Lraise^k f_k(N)  +  f_0(N)  +  sum_{k<0} f_k(N) Llower^|k|.

Quantum products use Lraise*f(N) = f(N-1)*Lraise (and mirrored rules);
classical elements commute and the Poisson bracket acts by the derivation
rule with {Llower, Lraise} = Gt'(N).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, ModeMismatch, NonIntegrable, SingularSystem, ZeroDenominator
from .ring import CoeffFrac, CoeffPoly, NPoly, NRatFn
from .structure import AlgebraSpec, CasimirCoeffs, classical_casimir, quantum_casimir

_R_ONE = NRatFn(NPoly([1]))


def _nr(x) -> NRatFn:
    return NRatFn.coerce(x)


class OscElement:
    """Normal-form oscillator element: {ladder degree k: NRatFn f_k(N)}."""

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs=None, mode: str = "quantum"):
        clean: dict[int, NRatFn] = {}
        if coeffs:
            for k, f in coeffs.items():
                f = _nr(f)
                if not f.is_zero:
                    prev = clean.get(k)
                    s = f if prev is None else prev + f
                    if s.is_zero:
                        clean.pop(k, None)
                    else:
                        clean[k] = s
        self.coeffs = clean
        self.mode = mode

    @classmethod
    def func(cls, f, mode: str = "quantum") -> "OscElement":
        return cls({0: f}, mode)

    @classmethod
    def raising(cls, f=1, mode: str = "quantum") -> "OscElement":
        return cls({1: f}, mode)

    @classmethod
    def lowering(cls, f=1, mode: str = "quantum") -> "OscElement":
        return cls({-1: f}, mode)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> NRatFn:
        return self.coeffs.get(k, NRatFn(0))

    def ladder_degrees(self) -> list[int]:
        return sorted(self.coeffs)

    def __add__(self, other):
        if self.mode != other.mode:
            raise ModeMismatch(f"{self.mode} + {other.mode}")
        out = dict(self.coeffs)
        for k, f in other.coeffs.items():
            s = out.get(k)
            s = f if s is None else s + f
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        e = OscElement.__new__(OscElement)
        e.coeffs = out
        e.mode = self.mode
        return e

    def __neg__(self):
        e = OscElement.__new__(OscElement)
        e.coeffs = {k: -f for k, f in self.coeffs.items()}
        e.mode = self.mode
        return e

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "OscElement":
        c = _nr(c)
        if c.is_zero:
            return OscElement(mode=self.mode)
        e = OscElement.__new__(OscElement)
        e.coeffs = {k: f * c for k, f in self.coeffs.items()}
        e.mode = self.mode
        return e

    def __eq__(self, other):
        if not isinstance(other, OscElement):
            return NotImplemented
        return self.mode == other.mode and self.coeffs == other.coeffs

    __hash__ = None

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in self.ladder_degrees():
            f = self.coeffs[k]
            if k == 0:
                parts.append(f"[{f}]")
            elif k > 0:
                parts.append(f"R^{k}[{f}]")
            else:
                parts.append(f"[{f}]L^{-k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OscElement({self})"


class OscContext:
    """Ambient oscillator: mode plus its (tilde-basis) structure function."""

    def __init__(self, mode: str, sf: NRatFn):
        if mode not in ("quantum", "classical"):
            raise ConfigError(f"unknown oscillator mode {mode!r}")
        self.mode = mode
        self.sf = _nr(sf)

    def _check(self, *elements: OscElement):
        for e in elements:
            if e.mode != self.mode:
                raise ModeMismatch(f"{e.mode} element in {self.mode} context")

    # -- quantum single steps -------------------------------------------
    def _mul_raise(self, x: OscElement) -> OscElement:
        out: dict[int, NRatFn] = {}
        for k, f in x.coeffs.items():
            if k >= 0:
                key, val = k + 1, f.shift(1)
            else:
                key, val = k + 1, f * self.sf.shift(-k)
            prev = out.get(key)
            s = val if prev is None else prev + val
            if not s.is_zero:
                out[key] = s
            else:
                out.pop(key, None)
        return OscElement(out, x.mode)

    def _mul_lower(self, x: OscElement) -> OscElement:
        out: dict[int, NRatFn] = {}
        for k, f in x.coeffs.items():
            if k > 0:
                key, val = k - 1, f.shift(-1) * self.sf
            else:
                key, val = k - 1, f
            prev = out.get(key)
            s = val if prev is None else prev + val
            if not s.is_zero:
                out[key] = s
            else:
                out.pop(key, None)
        return OscElement(out, x.mode)

    def _mul_func(self, x: OscElement, g: NRatFn) -> OscElement:
        out: dict[int, NRatFn] = {}
        for k, f in x.coeffs.items():
            val = f * g if k >= 0 else f * g.shift(-k)
            if not val.is_zero:
                out[k] = val
        return OscElement(out, x.mode)

    # -- products ---------------------------------------------------------
    def mul(self, x: OscElement, y: OscElement) -> OscElement:
        self._check(x, y)
        if self.mode == "classical":
            return self._mul_classical(x, y)
        acc = OscElement(mode=self.mode)
        for k, f in y.coeffs.items():
            term = x
            if k > 0:
                for _ in range(k):
                    term = self._mul_raise(term)
                term = self._mul_func(term, f)
            elif k < 0:
                term = self._mul_func(term, f)
                for _ in range(-k):
                    term = self._mul_lower(term)
            else:
                term = self._mul_func(term, f)
            acc = acc + term
        return acc

    def _mul_classical(self, x: OscElement, y: OscElement) -> OscElement:
        acc: dict[int, NRatFn] = {}
        for k1, f1 in x.coeffs.items():
            for k2, f2 in y.coeffs.items():
                overlap = min(abs(k1), abs(k2)) if k1 * k2 < 0 else 0
                val = f1 * f2 * self.sf**overlap if overlap else f1 * f2
                key = k1 + k2
                prev = acc.get(key)
                s = val if prev is None else prev + val
                if s.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = s
        return OscElement(acc, "classical")

    def power(self, x: OscElement, n: int) -> OscElement:
        out = OscElement.func(1, self.mode)
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def commutator(self, x: OscElement, y: OscElement) -> OscElement:
        if self.mode != "quantum":
            raise ModeMismatch("commutator is quantum-only; use poisson")
        return self.mul(x, y) - self.mul(y, x)

    def poisson(self, x: OscElement, y: OscElement) -> OscElement:
        """Derivation-rule bracket; {Llower, Lraise} = sf'(N)."""
        if self.mode != "classical":
            raise ModeMismatch("poisson is classical-only; use commutator")
        self._check(x, y)
        sfd = self.sf.derivative()
        acc: dict[int, NRatFn] = {}
        for k1, f1 in x.coeffs.items():
            for k2, f2 in y.coeffs.items():
                key = k1 + k2
                val = NRatFn(0)
                if k1 * k2 < 0:
                    overlap = min(abs(k1), abs(k2))
                    c = Fraction(-k1 * abs(k2))
                    val = val + f1 * f2 * c * sfd * self.sf ** (overlap - 1)
                    val = val + (f1.derivative() * f2 * Fraction(k2)
                                 - f1 * f2.derivative() * Fraction(k1)) * self.sf**overlap
                else:
                    val = (f1.derivative() * f2 * Fraction(k2)
                           - f1 * f2.derivative() * Fraction(k1))
                if val.is_zero:
                    continue
                prev = acc.get(key)
                s = val if prev is None else prev + val
                if s.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = s
        return OscElement(acc, "classical")


# -- the spec's operation surface -------------------------------------------


def osc_multiply(x: OscElement, y: OscElement, ctx: OscContext) -> OscElement:
    return ctx.mul(x, y)


def osc_commutator(x: OscElement, y: OscElement, ctx: OscContext) -> OscElement:
    return ctx.commutator(x, y)


def osc_poisson(x: OscElement, y: OscElement, ctx: OscContext) -> OscElement:
    return ctx.poisson(x, y)


# ---------------------------------------------------------------------------
# the realization functions A(N), b(N)
# ---------------------------------------------------------------------------


def build_AN(spec: AlgebraSpec, c1=None) -> NPoly:
    """A(N) for the spec's branch; satisfies the defining difference or
    differential constraint exactly (tested)."""
    c1 = CoeffPoly.param("c1") if c1 is None else CoeffPoly.coerce(c1)
    N = NPoly.N()
    if spec.beta.is_zero:
        if spec.sqrt_delta is None:
            raise ConfigError("beta = 0 branch needs sqrt_delta on the spec")
        return N * CoeffFrac(spec.sqrt_delta) + NPoly([c1])
    beta = CoeffFrac(spec.beta)
    delta = CoeffFrac(spec.delta)
    shifted = N + NPoly([c1])
    out = shifted * shifted * (beta * Fraction(1, 2))
    out = out - NPoly([delta / (2 * beta)])
    if spec.mode == "quantum":
        out = out - NPoly([beta * Fraction(1, 8)])
    return out


def build_bN(spec: AlgebraSpec, A: NPoly) -> NRatFn:
    """b(N) = -(sum_i alpha_i A^i + epsilon) / (delta + 2 beta A)."""
    den = NRatFn(A * (2 * CoeffFrac(spec.beta)) + NPoly([spec.delta]))
    if den.is_zero:
        raise ZeroDenominator("delta + 2*beta*A(N) is identically zero")
    num = NPoly([spec.epsilon])
    for i, a in enumerate(spec.alpha, start=1):
        num = num + A**i * CoeffFrac(a)
    return -(NRatFn(num) / den)


def jacobi_residual_realized(spec: AlgebraSpec, A: NPoly) -> NRatFn:
    """eta*dA + sum_i omega_i dA (A^i(N)+A^i(N+1)) + sum_i alpha_i (A^i(N+1)-A^i(N))."""
    if not spec.is_closed:
        raise ConfigError("close the algebra first")
    A1 = A.shift(1)
    dA = A1 - A
    out = dA * CoeffFrac(spec.eta)
    for i, w in enumerate(spec.omega, start=1):
        out = out + dA * (A**i + A1**i) * CoeffFrac(w)
    for i, a in enumerate(spec.alpha, start=1):
        out = out + (A1**i - A**i) * CoeffFrac(a)
    return NRatFn(out)


# ---------------------------------------------------------------------------
# structure-function solve (quantum)
# ---------------------------------------------------------------------------


@dataclass
class StructureFunctionSolution:
    psi: NRatFn          # rho(N-1)^2 Phi(N)
    psi_next: NRatFn     # the same system's slot for Psi(N+1)
    phi: NRatFn          # psi / rho(N-1)^2
    shift_consistent: bool


def _poly_in_A(coeffs, A: NPoly) -> NRatFn:
    """sum coeffs[i] * A^(i+1), coefficients 1-based."""
    out = NPoly()
    for i, c in enumerate(coeffs, start=1):
        out = out + A**i * CoeffFrac(c)
    return NRatFn(out)


def solve_structure_function(spec: AlgebraSpec, cas: CasimirCoeffs,
                             rho_sq=None, u=None, A: NPoly | None = None,
                             b: NRatFn | None = None, c1=None) -> StructureFunctionSolution:
    """Solve the closure constraint and the scalar Casimir condition as a
    2x2 linear system in Psi(N), Psi(N+1); certify shift consistency."""
    if not spec.is_closed:
        raise ConfigError("close the algebra first")
    if spec.mode != "quantum":
        raise ConfigError("solve_structure_function is quantum-only")
    rho_sq = _R_ONE if rho_sq is None else _nr(rho_sq)
    u = CoeffPoly.param("u") if u is None else CoeffPoly.coerce(u)
    if A is None:
        A = build_AN(spec, c1=c1)
    if b is None:
        b = build_bN(spec, A)
    beta = CoeffFrac(spec.beta)
    Ar = NRatFn(A)
    dA = NRatFn(A.shift(1) - A)
    dAm = dA.shift(-1)
    ell2 = CoeffFrac(spec.beta * spec.beta - spec.delta)

    c11 = -2 * dAm + beta
    c12 = 2 * dA + beta
    c21 = -(dAm * dAm) - 2 * beta * Ar + ell2
    c22 = -(dA * dA) - 2 * beta * Ar + ell2

    rhs1 = NRatFn(NPoly([spec.zeta])) + _poly_in_A(spec.lam, A)
    rhs1 = rhs1 - beta * b * b + CoeffFrac(spec.eta) * b
    for j, w in enumerate(spec.omega, start=1):
        rhs1 = rhs1 + 2 * CoeffFrac(w) * NRatFn(A**j) * b

    rhs2 = NRatFn(NPoly([u]))
    for i in range(1, spec.L + 2):
        ai = spec.alpha[i - 1]
        wi = spec.omega[i - 1] if i <= spec.L else CoeffPoly.zero()
        coeff = CoeffFrac(2 * ai + 2 * spec.beta * wi)
        if not coeff.is_zero:
            rhs2 = rhs2 + coeff * NRatFn(A**i) * b
    rhs2 = rhs2 + 2 * beta * Ar * b * b
    rhs2 = rhs2 - _poly_in_A(cas.k, A)
    rhs2 = rhs2 + CoeffFrac(2 * spec.epsilon + spec.beta * spec.eta) * b
    rhs2 = rhs2 - ell2 * b * b

    det = c11 * c22 - c12 * c21
    if det.is_zero:
        raise SingularSystem("structure-function system has zero determinant")
    psi = (rhs1 * c22 - rhs2 * c12) / det
    psi_next = (c11 * rhs2 - c21 * rhs1) / det
    consistent = psi.shift(1) == psi_next
    phi = psi / rho_sq.shift(-1)
    return StructureFunctionSolution(psi=psi, psi_next=psi_next, phi=phi,
                                     shift_consistent=consistent)


def polynomialize(psi: NRatFn) -> tuple[NRatFn, NRatFn]:
    """Choose rho so Phi is a polynomial: rho(N-1)^2 := 1/den(Psi(N)).

    Returns (rho_sq, phi); with this choice phi is num(Psi) exactly.
    """
    rho_sq = NRatFn(NPoly([1]), psi.den.shift(1))
    phi = NRatFn(psi.num)
    return rho_sq, phi


def realization_residuals(spec: AlgebraSpec, A: NPoly, b: NRatFn) -> dict:
    """The four redundant constraints; all must be identically zero for a
    closed spec with A, b from their defining equations."""
    A1 = A.shift(1)
    A2 = A.shift(2)
    dA = NRatFn(A1 - A)
    beta = CoeffFrac(spec.beta)
    ell2 = CoeffFrac(spec.beta * spec.beta - spec.delta)
    b1 = b.shift(1)
    out = {}
    out["closure_difference"] = NRatFn(A1 - A) - NRatFn(A2 - A1) + NRatFn(NPoly([spec.beta]))
    res = dA * (b1 - b) + beta * (b1 + b)
    for i, w in enumerate(spec.omega, start=1):
        res = res - CoeffFrac(w) * NRatFn(A1**i + A**i)
    res = res - NRatFn(NPoly([spec.eta]))
    out["closure_ladder"] = res
    out["casimir_quadratic"] = (NRatFn(A2 - A1) * dA
                                - beta * NRatFn(A2 + A) + ell2)
    res = -beta * NRatFn(A1 + A) * (b1 + b)
    for i in range(1, spec.L + 2):
        ai = spec.alpha[i - 1]
        wi = spec.omega[i - 1] if i <= spec.L else CoeffPoly.zero()
        coeff = CoeffFrac(ai + spec.beta * wi)
        if not coeff.is_zero:
            res = res - coeff * NRatFn(A1**i + A**i)
    res = res - NRatFn(NPoly([2 * spec.epsilon + spec.beta * spec.eta]))
    res = res + ell2 * (b1 + b)
    out["casimir_ladder"] = res
    out["jacobi_realized"] = jacobi_residual_realized(spec, A)
    return out


# ---------------------------------------------------------------------------
# classical structure function G(N)
# ---------------------------------------------------------------------------


def _linear_power_form(den: NPoly):
    """If den (monic) equals (N + a)^k, return (a, k); else None."""
    k = den.degree
    if k == 0:
        return (CoeffFrac(0), 0)
    a = den.coeff(k - 1) * Fraction(1, k)
    probe = (NPoly.N() + NPoly([a])) ** k
    if probe == den:
        return (a, k)
    return None


def integrate_ratfn(f: NRatFn) -> NRatFn:
    """Antiderivative of an NRatFn whose denominator is a power of one
    linear factor and whose residue there vanishes; NonIntegrable otherwise."""
    q, r = f.num.divmod(f.den)
    out = NRatFn(q.antiderivative())
    if r.is_zero:
        return out
    form = _linear_power_form(f.den)
    if form is None:
        raise NonIntegrable(f"denominator {f.den} is not a linear power")
    a, k = form
    # write r in powers of (N+a): r(N) = sum c_j (N+a)^j
    shifted = r.compose(NPoly([-a, 1]))  # p(x) = r(x - a), so r(N) = p(N+a)
    base = NPoly.N() + NPoly([a])
    num = NPoly()
    for j in range(shifted.degree + 1):
        c = shifted.coeff(j)
        if c.is_zero:
            continue
        if j == k - 1:
            raise NonIntegrable("nonzero residue: antiderivative needs a log")
        # c (N+a)^(j-k) integrates to c/(j-k+1) (N+a)^(j-k+1)
        num = num + base ** (j + 1) * (c * Fraction(1, j - k + 1))
    return out + NRatFn(num, base**k)


def classical_G(spec: AlgebraSpec, cas: CasimirCoeffs, rho_sq=None,
                A: NPoly | None = None, b: NRatFn | None = None,
                const=None, c1=None) -> NRatFn:
    """G(N) from [A'(N) (2 rho^2 G)]' = sum lam_i A^i + A' b' b + beta b^2 + zeta."""
    if spec.mode != "classical":
        raise ConfigError("classical_G needs a classical spec")
    rho_sq = _R_ONE if rho_sq is None else _nr(rho_sq)
    const = CoeffPoly.zero() if const is None else CoeffPoly.coerce(const)
    if A is None:
        A = build_AN(spec, c1=c1)
    if b is None:
        b = build_bN(spec, A)
    Ad = NRatFn(A.derivative())
    rhs = NRatFn(NPoly([spec.zeta])) + _poly_in_A(spec.lam, A)
    rhs = rhs + Ad * b.derivative() * b + CoeffFrac(spec.beta) * b * b
    prod = integrate_ratfn(rhs) + NRatFn(NPoly([const]))
    return prod / (2 * rho_sq * Ad)


# ---------------------------------------------------------------------------
# bundled realizations and the verifier
# ---------------------------------------------------------------------------


@dataclass
class QuantumRealization:
    spec: AlgebraSpec
    cas: CasimirCoeffs
    A: NPoly
    b: NRatFn
    rho_sq: NRatFn
    phi: NRatFn
    psi: NRatFn
    u: CoeffPoly
    c1: CoeffPoly
    branch: str
    shift_consistent: bool


@dataclass
class ClassicalRealization:
    spec: AlgebraSpec
    cas: CasimirCoeffs
    A: NPoly
    b: NRatFn
    rho_sq: NRatFn
    G: NRatFn
    phi: NRatFn
    c1: CoeffPoly
    branch: str
    casimir_value: NRatFn | None = None


def realize_quantum(spec: AlgebraSpec, cas: CasimirCoeffs | None = None,
                    rho_sq=None, u=None, c1=None,
                    polynomial_rho: bool = False) -> QuantumRealization:
    if not spec.is_closed:
        spec = spec.closed()
    if cas is None:
        cas = quantum_casimir(spec)
    u = CoeffPoly.param("u") if u is None else CoeffPoly.coerce(u)
    c1 = CoeffPoly.param("c1") if c1 is None else CoeffPoly.coerce(c1)
    rho_sq = _R_ONE if rho_sq is None else _nr(rho_sq)
    A = build_AN(spec, c1=c1)
    b = build_bN(spec, A)
    sol = solve_structure_function(spec, cas, rho_sq=rho_sq, u=u, A=A, b=b)
    phi = sol.phi
    if polynomial_rho:
        rho_sq, phi = polynomialize(sol.psi)
    return QuantumRealization(
        spec=spec, cas=cas, A=A, b=b, rho_sq=rho_sq, phi=phi, psi=sol.psi,
        u=u, c1=c1, branch="beta=0" if spec.beta.is_zero else "beta!=0",
        shift_consistent=sol.shift_consistent,
    )


def realize_classical(spec: AlgebraSpec, cas: CasimirCoeffs | None = None,
                      rho_sq=None, const=None, c1=None) -> ClassicalRealization:
    if not spec.is_closed:
        spec = spec.closed()
    if cas is None:
        cas = classical_casimir(spec)
    c1 = CoeffPoly.param("c1") if c1 is None else CoeffPoly.coerce(c1)
    rho_sq = _R_ONE if rho_sq is None else _nr(rho_sq)
    A = build_AN(spec, c1=c1)
    b = build_bN(spec, A)
    G = classical_G(spec, cas, rho_sq=rho_sq, A=A, b=b, const=const)
    return ClassicalRealization(
        spec=spec, cas=cas, A=A, b=b, rho_sq=rho_sq, G=G, phi=G.derivative(),
        c1=c1, branch="beta=0" if spec.beta.is_zero else "beta!=0",
    )


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: str = "0"


@dataclass
class RealizationReport:
    checks: list

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]


def _generators(spec: AlgebraSpec, A: NPoly, b: NRatFn, mode: str):
    dA = NRatFn(A.shift(1) - A) if mode == "quantum" else NRatFn(A.derivative())
    A_el = OscElement.func(NRatFn(A), mode)
    B_el = OscElement({0: b, 1: _R_ONE, -1: _R_ONE}, mode)
    C_el = OscElement({1: dA, -1: -dA}, mode)
    return A_el, B_el, C_el


def _record(checks: list, name: str, residual: OscElement | NRatFn):
    ok = residual.is_zero
    checks.append(CheckResult(name=name, passed=ok,
                              residual="0" if ok else str(residual)))


def verify_realization(r: QuantumRealization | ClassicalRealization,
                       spec: AlgebraSpec | None = None,
                       cas: CasimirCoeffs | None = None) -> RealizationReport:
    """Check every algebra relation, the redundant constraints, and the
    scalarness of the Casimir, all as exact identities."""
    spec = r.spec if spec is None else spec
    cas = r.cas if cas is None else cas
    if isinstance(r, QuantumRealization):
        return _verify_quantum(r, spec, cas)
    return _verify_classical(r, spec, cas)


def _bracket_rhs(spec: AlgebraSpec, ctx: OscContext, A_el, B_el, which: str):
    """Right-hand sides of the two nontrivial relations as OscElements."""
    mode = ctx.mode
    A_pows = {}

    def apow(i):
        if i not in A_pows:
            A_pows[i] = ctx.power(A_el, i)
        return A_pows[i]

    if which == "AC":
        rhs = OscElement.func(NRatFn(NPoly([spec.epsilon])), mode)
        for i, a in enumerate(spec.alpha, start=1):
            rhs = rhs + apow(i).scale(NRatFn(NPoly([a])))
        rhs = rhs + B_el.scale(NRatFn(NPoly([spec.delta])))
        # beta {A,B}; commutative mode turns this into the classical 2 beta A B
        anti = ctx.mul(A_el, B_el) + ctx.mul(B_el, A_el)
        rhs = rhs + anti.scale(NRatFn(NPoly([spec.beta])))
        return rhs
    # which == "BC"
    rhs = OscElement.func(NRatFn(NPoly([spec.zeta])), mode)
    for i, l in enumerate(spec.lam, start=1):
        rhs = rhs + apow(i).scale(NRatFn(NPoly([l])))
    rhs = rhs - ctx.mul(B_el, B_el).scale(NRatFn(NPoly([spec.beta])))
    rhs = rhs + B_el.scale(NRatFn(NPoly([spec.eta])))
    for i, w in enumerate(spec.omega, start=1):
        anti = ctx.mul(apow(i), B_el) + ctx.mul(B_el, apow(i))
        rhs = rhs + anti.scale(NRatFn(NPoly([w])))
    return rhs


def _casimir_element(cas: CasimirCoeffs, ctx: OscContext, A_el, B_el, C_el):
    K = ctx.mul(C_el, C_el)
    B2 = ctx.mul(B_el, B_el)
    for i, mi in enumerate(cas.m, start=1):
        Ai = ctx.power(A_el, i)
        sym = ctx.mul(Ai, B_el) + ctx.mul(B_el, Ai)
        K = K + sym.scale(NRatFn(NPoly([mi * Fraction(1, 2)])))
    sym = ctx.mul(A_el, B2) + ctx.mul(B2, A_el)
    K = K + sym.scale(NRatFn(NPoly([cas.n * Fraction(1, 2)])))
    for i, ki in enumerate(cas.k, start=1):
        K = K + ctx.power(A_el, i).scale(NRatFn(NPoly([ki])))
    K = K + B_el.scale(NRatFn(NPoly([cas.l1])))
    K = K + B2.scale(NRatFn(NPoly([cas.l2])))
    return K


def _verify_quantum(r: QuantumRealization, spec, cas) -> RealizationReport:
    checks: list[CheckResult] = []
    psi = r.rho_sq.shift(-1) * r.phi
    ctx = OscContext("quantum", psi)
    A_el, B_el, C_el = _generators(spec, r.A, r.b, "quantum")

    _record(checks, "defining_AN",
            NRatFn((r.A.shift(1) - r.A) ** 2)
            - NRatFn(NPoly([spec.delta]))
            - CoeffFrac(spec.beta) * NRatFn(r.A + r.A.shift(1)))
    qs2 = NRatFn(NPoly([spec.epsilon]))
    for i, a in enumerate(spec.alpha, start=1):
        qs2 = qs2 + NRatFn(r.A**i) * CoeffFrac(a)
    qs2 = qs2 + (NRatFn(NPoly([spec.delta])) + 2 * CoeffFrac(spec.beta) * NRatFn(r.A)) * r.b
    _record(checks, "defining_bN", qs2)

    _record(checks, "commutator_AB", ctx.commutator(A_el, B_el) - C_el)
    _record(checks, "commutator_AC",
            ctx.commutator(A_el, C_el) - _bracket_rhs(spec, ctx, A_el, B_el, "AC"))
    _record(checks, "commutator_BC",
            ctx.commutator(B_el, C_el) - _bracket_rhs(spec, ctx, A_el, B_el, "BC"))

    K = _casimir_element(cas, ctx, A_el, B_el, C_el)
    K_res = K - OscElement.func(NRatFn(NPoly([r.u])), "quantum")
    _record(checks, "casimir_scalar", K_res)

    for name, res in realization_residuals(spec, r.A, r.b).items():
        _record(checks, name, res)
    checks.append(CheckResult(name="psi_shift_consistency",
                              passed=r.shift_consistent,
                              residual="0" if r.shift_consistent else "shift mismatch"))
    return RealizationReport(checks=checks)


def _verify_classical(r: ClassicalRealization, spec, cas) -> RealizationReport:
    checks: list[CheckResult] = []
    gt = r.rho_sq * r.G
    ctx = OscContext("classical", gt)
    A_el, B_el, C_el = _generators(spec, r.A, r.b, "classical")

    _record(checks, "defining_AN",
            NRatFn(r.A.derivative() ** 2)
            - NRatFn(NPoly([spec.delta]))
            - 2 * CoeffFrac(spec.beta) * NRatFn(r.A))
    qs2 = NRatFn(NPoly([spec.epsilon]))
    for i, a in enumerate(spec.alpha, start=1):
        qs2 = qs2 + NRatFn(r.A**i) * CoeffFrac(a)
    qs2 = qs2 + (NRatFn(NPoly([spec.delta])) + 2 * CoeffFrac(spec.beta) * NRatFn(r.A)) * r.b
    _record(checks, "defining_bN", qs2)

    _record(checks, "poisson_AB", ctx.poisson(A_el, B_el) - C_el)
    _record(checks, "poisson_AC",
            ctx.poisson(A_el, C_el) - _bracket_rhs(spec, ctx, A_el, B_el, "AC"))
    _record(checks, "poisson_BC",
            ctx.poisson(B_el, C_el) - _bracket_rhs(spec, ctx, A_el, B_el, "BC"))

    K = _casimir_element(cas, ctx, A_el, B_el, C_el)
    ladder_ok = all(k == 0 for k in K.ladder_degrees())
    value = K.coeff(0)
    const_ok = value.difference().is_zero
    checks.append(CheckResult(name="casimir_scalar",
                              passed=ladder_ok and const_ok,
                              residual="0" if (ladder_ok and const_ok) else str(K)))
    if ladder_ok and const_ok:
        r.casimir_value = value
    return RealizationReport(checks=checks)
