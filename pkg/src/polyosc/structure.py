"""Structure constants of the closing algebra and its Casimir operator.

Everything here is driven by two coupled recurrence tables

    x[i,j] = x[i-1,j-1] + beta*x[i,j-1] + y[i,j-1]
    y[i,j] = delta*x[i,j-1] + 2*beta*x[i-1,j-1] + y[i-1,j-1]

run with two different boundary rows:

* "bracket" kind:  x[0,1]=beta, x[1,1]=1, y[0,1]=delta, y[1,1]=2*beta.
  These expand symmetrized mixed words A^m C A^l into the
  {A^k,C} / [A^k,B] basis.
* "casimir" kind:  xbar[0,1]=1, ybar[0,1]=0, ybar[1,1]=1.
  These expand the antisymmetric words A^i B A^j - A^j B A^i.

Out-of-range entries read as zero; that single convention reproduces all
the stated boundary values (in particular xbar[j,j] = 0).

From the tables we derive the s-coefficients ([A^j,B] in the {A^k,C}
basis), the W-coefficients, the closure values (eta, omega_i) and the
Casimir coefficients, each certified against the normal-ordering oracle in
the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import ConfigError
from .ncalg import ABCPoly, NCElement, PoissonStructure, RewriteSystem
from .ring import CoeffPoly

_ZERO = CoeffPoly.zero()
_ONE = CoeffPoly.one()


def _cp(x) -> CoeffPoly:
    return CoeffPoly.coerce(x)


# ---------------------------------------------------------------------------
# recurrence tables
# ---------------------------------------------------------------------------


class Tables:
    """Recurrence tables plus s/T/W coefficients for one (beta, delta)."""

    def __init__(self, beta, delta):
        self.beta = _cp(beta)
        self.delta = _cp(delta)
        self._x: dict[tuple[int, int], CoeffPoly] = {}
        self._y: dict[tuple[int, int], CoeffPoly] = {}
        self._xbar: dict[tuple[int, int], CoeffPoly] = {}
        self._ybar: dict[tuple[int, int], CoeffPoly] = {}
        self._depth = {"bracket": 0, "casimir": 0}
        self._s: dict[int, list[CoeffPoly]] = {1: [CoeffPoly.const(Fraction(1, 2))]}
        self._w: dict[tuple[int, int], list[CoeffPoly]] = {}

    def _tables_for(self, kind: str):
        if kind == "bracket":
            return self._x, self._y
        if kind == "casimir":
            return self._xbar, self._ybar
        raise ValueError(f"unknown table kind {kind!r}")

    def ensure_depth(self, jmax: int, kind: str) -> None:
        x, y = self._tables_for(kind)
        j0 = self._depth[kind]
        if jmax <= j0:
            return
        if j0 == 0:
            if kind == "bracket":
                x[0, 1] = self.beta
                x[1, 1] = _ONE
                y[0, 1] = self.delta
                y[1, 1] = 2 * self.beta
            else:
                x[0, 1] = _ONE
                y[0, 1] = _ZERO
                y[1, 1] = _ONE
            j0 = 1

        def gx(i, j):
            return x.get((i, j), _ZERO)

        def gy(i, j):
            return y.get((i, j), _ZERO)

        for j in range(j0 + 1, jmax + 1):
            for i in range(j + 1):
                x[i, j] = gx(i - 1, j - 1) + self.beta * gx(i, j - 1) + gy(i, j - 1)
                y[i, j] = (
                    self.delta * gx(i, j - 1)
                    + 2 * self.beta * gx(i - 1, j - 1)
                    + gy(i - 1, j - 1)
                )
        self._depth[kind] = jmax

    def x(self, i: int, j: int) -> CoeffPoly:
        self.ensure_depth(j, "bracket")
        return self._x.get((i, j), _ZERO)

    def y(self, i: int, j: int) -> CoeffPoly:
        self.ensure_depth(j, "bracket")
        return self._y.get((i, j), _ZERO)

    def xbar(self, i: int, j: int) -> CoeffPoly:
        self.ensure_depth(j, "casimir")
        return self._xbar.get((i, j), _ZERO)

    def ybar(self, i: int, j: int) -> CoeffPoly:
        self.ensure_depth(j, "casimir")
        return self._ybar.get((i, j), _ZERO)

    # -- s and T -----------------------------------------------------------
    def s(self, j: int) -> list[CoeffPoly]:
        """Coefficients s^(j)_k, k = 0..j-1, of [A^j,B] over {A^k,C}."""
        got = self._s.get(j)
        if got is not None:
            return got
        for jj in range(2, j + 1):
            if jj in self._s:
                continue
            self._s[jj] = self._compute_s_row(jj)
        return self._s[j]

    def s_entry(self, j: int, k: int) -> CoeffPoly:
        row = self.s(j)
        return row[k] if 0 <= k < len(row) else _ZERO

    def t_coeff(self, j: int, i: int, m: int) -> CoeffPoly:
        """T with superscripts (j-i, i-1), evaluated at subscript m.

        The i = 1 case is the Kronecker delta d_{j-1,m}; rows i >= 2 follow
        the three-branch expansion through the bracket tables.
        """
        if i == 1:
            return _ONE if m == j - 1 else _ZERO
        if m == j - 1:
            return self.x(i - 1, i - 1)
        if m >= j - i:
            acc = self.x(m - j + i, i - 1)
            for k in range(m - j + i + 1, i):
                acc = acc - self.y(k, i - 1) * self.s_entry(j - i + k, m)
            return acc
        acc = _ZERO
        for k in range(i):
            acc = acc - self.y(k, i - 1) * self.s_entry(j - i + k, m)
        return acc

    def _compute_s_row(self, j: int) -> list[CoeffPoly]:
        n = j // 2
        row = []
        for m in range(j):
            acc = _ZERO
            for i in range(1, n + 1):
                acc = acc + self.t_coeff(j, i, m)
            if j % 2 == 1:
                acc = acc + self.t_coeff(j, n + 1, m) * Fraction(1, 2)
            row.append(acc)
        return row

    # -- W -------------------------------------------------------------------
    def w(self, i: int, j: int) -> list[CoeffPoly]:
        """Coefficients W^{i,j}_k, k = 0..i+j-1, of A^i B A^j - A^j B A^i."""
        if i < 1 or j < 1:
            raise ValueError("w requires i, j >= 1")
        got = self._w.get((i, j))
        if got is not None:
            return got
        self.s(i + j)
        out = []
        for k in range(i + j):
            if k < i:
                acc = _ZERO
                for m in range(j + 1):
                    acc = acc + self.ybar(m, j) * self.s_entry(i + m, k)
            else:
                acc = -self.xbar(k - i, j)
                for m in range(k - i + 1, j + 1):
                    acc = acc + self.ybar(m, j) * self.s_entry(i + m, k)
            out.append(acc)
        self._w[i, j] = out
        return out


def xy_tables(jmax: int, kind: str = "bracket", beta=None, delta=None,
              tables: Tables | None = None) -> dict:
    """Filled table slice {(i, j): value} for 1 <= j <= jmax."""
    if tables is None:
        beta = CoeffPoly.param("b") if beta is None else beta
        delta = CoeffPoly.param("delta") if delta is None else delta
        tables = Tables(beta, delta)
    tables.ensure_depth(jmax, kind)
    if kind == "bracket":
        xs, ys = tables._x, tables._y
    else:
        xs, ys = tables._xbar, tables._ybar
    return {
        "x": {k: v for k, v in xs.items() if k[1] <= jmax},
        "y": {k: v for k, v in ys.items() if k[1] <= jmax},
    }


def s_coefficients(M: int, beta=None, delta=None, tables: Tables | None = None) -> dict:
    """s^(j) rows for j = 1..M+1."""
    if tables is None:
        beta = CoeffPoly.param("b") if beta is None else beta
        delta = CoeffPoly.param("delta") if delta is None else delta
        tables = Tables(beta, delta)
    return {j: tables.s(j) for j in range(1, M + 2)}


def w_coefficients(i: int, j: int, beta=None, delta=None,
                   tables: Tables | None = None) -> list[CoeffPoly]:
    if tables is None:
        beta = CoeffPoly.param("b") if beta is None else beta
        delta = CoeffPoly.param("delta") if delta is None else delta
        tables = Tables(beta, delta)
    return tables.w(i, j)


# ---------------------------------------------------------------------------
# algebra specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraSpec:
    """Order M plus all structure constants of the closure relations.

    ``alpha`` has L+1 entries, ``lam`` has M; ``eta``/``omega`` are None
    until the algebra is closed (omega holds indices 1..L; omega_0 is
    always eta/2).  ``sqrt_delta``, when set, must square to ``delta`` and
    enables the beta = 0 realization branch.
    """

    M: int
    alpha: tuple
    beta: CoeffPoly
    delta: CoeffPoly
    epsilon: CoeffPoly
    zeta: CoeffPoly
    lam: tuple
    eta: CoeffPoly | None = None
    omega: tuple | None = None
    sqrt_delta: CoeffPoly | None = None
    mode: str = "quantum"

    def __post_init__(self):
        if self.M < 1:
            raise ConfigError(f"M must be >= 1, got {self.M}")
        if len(self.alpha) != self.L + 1:
            raise ConfigError(f"alpha needs {self.L + 1} entries, got {len(self.alpha)}")
        if len(self.lam) != self.M:
            raise ConfigError(f"lambda needs {self.M} entries, got {len(self.lam)}")
        if self.omega is not None and len(self.omega) != self.L:
            raise ConfigError(f"omega needs {self.L} entries, got {len(self.omega)}")
        if self.mode not in ("quantum", "classical"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.sqrt_delta is not None and self.sqrt_delta * self.sqrt_delta != self.delta:
            raise ConfigError("sqrt_delta does not square to delta")

    @property
    def L(self) -> int:
        return self.M // 2

    @property
    def is_closed(self) -> bool:
        return self.eta is not None and self.omega is not None

    @classmethod
    def make(cls, M, alpha=(), beta=0, delta=0, epsilon=0, zeta=0, lam=(),
             eta=None, omega=None, sqrt_delta=None, mode="quantum") -> "AlgebraSpec":
        L = M // 2
        alpha = tuple(_cp(a) for a in alpha)
        alpha = alpha + (_ZERO,) * (L + 1 - len(alpha))
        lam = tuple(_cp(v) for v in lam)
        lam = lam + (_ZERO,) * (M - len(lam))
        return cls(
            M=M,
            alpha=alpha,
            beta=_cp(beta),
            delta=_cp(delta),
            epsilon=_cp(epsilon),
            zeta=_cp(zeta),
            lam=lam,
            eta=None if eta is None else _cp(eta),
            omega=None if omega is None else tuple(_cp(w) for w in omega),
            sqrt_delta=None if sqrt_delta is None else _cp(sqrt_delta),
            mode=mode,
        )

    def tables(self) -> Tables:
        return Tables(self.beta, self.delta)

    def closed(self) -> "AlgebraSpec":
        if self.mode == "classical":
            eta, _rho, omega = classical_close(self.M, self.alpha, self.beta)
        else:
            eta, omega = close_algebra(self.M, self.alpha, self.beta, self.delta)
        return replace(self, eta=eta, omega=tuple(omega))

    def omega0(self) -> CoeffPoly:
        if self.eta is None:
            raise ConfigError("algebra not closed: eta unknown")
        return self.eta * Fraction(1, 2)

    def rewrite_system(self) -> RewriteSystem:
        if self.mode != "quantum":
            raise ConfigError("rewrite_system is quantum-only")
        if not self.is_closed:
            raise ConfigError("close the algebra first (eta/omega unset)")
        return RewriteSystem(
            self.alpha, self.beta, self.delta, self.epsilon, self.zeta,
            self.lam, self.eta, self.omega,
        )

    def poisson_structure(self) -> PoissonStructure:
        if self.mode != "classical":
            raise ConfigError("poisson_structure is classical-only")
        if not self.is_closed:
            raise ConfigError("close the algebra first (eta/omega unset)")
        mono = ABCPoly.monomial
        rhs_ac = ABCPoly.scalar(self.epsilon) + mono(0, 1, 0, self.delta)
        rhs_ac = rhs_ac + mono(1, 1, 0, 2 * self.beta)
        for i, a in enumerate(self.alpha, start=1):
            rhs_ac = rhs_ac + mono(i, 0, 0, a)
        rhs_bc = ABCPoly.scalar(self.zeta) + mono(0, 1, 0, self.eta)
        rhs_bc = rhs_bc + mono(0, 2, 0, -self.beta)
        for i, l in enumerate(self.lam, start=1):
            rhs_bc = rhs_bc + mono(i, 0, 0, l)
        for i, w in enumerate(self.omega, start=1):
            rhs_bc = rhs_bc + mono(i, 1, 0, 2 * w)
        return PoissonStructure(rhs_ac, rhs_bc)


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------


def close_algebra(M: int, alpha: Sequence, beta, delta,
                  tables: Tables | None = None):
    """Quantum closure: (eta, [omega_1..omega_L]) with omega_0 = eta/2."""
    L = M // 2
    alpha = [_cp(a) for a in alpha]
    if len(alpha) < L + 1:
        alpha = alpha + [_ZERO] * (L + 1 - len(alpha))
    if tables is None:
        tables = Tables(beta, delta)
    omegas = []
    for i in range(L + 1):
        acc = _ZERO
        for k in range(i + 1, L + 2):
            acc = acc - alpha[k - 1] * tables.s_entry(k, i)
        omegas.append(acc)
    eta = 2 * omegas[0]
    return eta, omegas[1:]


def classical_close(M: int, alpha: Sequence, beta):
    """Classical closure: (eta, rho, [omega_1..omega_L]), 2*omega_i = -(i+1)*alpha_{i+1}."""
    L = M // 2
    alpha = [_cp(a) for a in alpha]
    if len(alpha) < L + 1:
        alpha = alpha + [_ZERO] * (L + 1 - len(alpha))
    eta = -alpha[0]
    rho = -_cp(beta)
    omegas = [alpha[i] * Fraction(-(i + 1), 2) for i in range(1, L + 1)]
    return eta, rho, omegas


# ---------------------------------------------------------------------------
# Casimir coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CasimirCoeffs:
    """Coefficients of K = C^2 + sum m_i/2 {A^i,B} + n/2 {A,B^2} + sum k_i A^i
    + l1 B + l2 B^2 (quantum; the classical form drops the symmetrization).
    """

    kind: str
    m: tuple
    n: CoeffPoly
    l1: CoeffPoly
    l2: CoeffPoly
    k: tuple


def quantum_casimir(spec: AlgebraSpec, tables: Tables | None = None) -> CasimirCoeffs:
    """Casimir coefficients for a closed quantum spec.

    H_k collects the {A^k,C}-coefficients of [B,K] that do not involve the
    k_i; the k_i then come from back-substituting the triangular system
    H_k = sum_{i>k} k_i s^(i)_k, whose diagonal s^(i)_{i-1} = i/2 never
    vanishes.
    """
    if not spec.is_closed:
        raise ConfigError("quantum_casimir requires a closed spec")
    if tables is None:
        tables = spec.tables()
    M, L = spec.M, spec.L
    eta = spec.eta
    omega = [None] + list(spec.omega)  # 1-indexed

    lam = [spec.zeta] + list(spec.lam)  # lambda_0 = zeta

    def F(k: int) -> CoeffPoly:
        acc = _ZERO
        for i in range(k + 1, L + 1):
            acc = acc + omega[i] * eta * tables.s_entry(i, k)
        return acc

    def Z(k: int) -> CoeffPoly:
        if k > 2 * L - 1:
            return _ZERO
        acc = _ZERO
        for i in range(1, L + 1):
            for j in range(1, L + 1):
                if i + j < k + 1:
                    continue
                term = tables.s_entry(i + j, k) + tables.w(i, j)[k]
                acc = acc + omega[i] * omega[j] * term
        return acc

    H = [lam[k] + F(k) + Z(k) for k in range(M + 1)]

    ks = [None] * (M + 2)  # 1-indexed k_1..k_{M+1}
    for i in range(M + 1, 0, -1):
        acc = H[i - 1]
        for t in range(i + 1, M + 2):
            acc = acc - ks[t] * tables.s_entry(t, i - 1)
        diag = tables.s_entry(i, i - 1)
        ks[i] = acc * (1 / diag.const_value())

    m = []
    for i in range(1, L + 1):
        m.append(-2 * spec.alpha[i - 1] - 2 * spec.beta * omega[i])
    m.append(-2 * spec.alpha[L])
    n = -2 * spec.beta
    l1 = -2 * spec.epsilon - spec.beta * eta
    l2 = spec.beta * spec.beta - spec.delta
    return CasimirCoeffs(kind="quantum", m=tuple(m), n=n, l1=l1, l2=l2,
                         k=tuple(ks[1:]))


def classical_casimir(spec: AlgebraSpec) -> CasimirCoeffs:
    """Closed-form classical Casimir coefficients."""
    L, M = spec.L, spec.M
    m = tuple(-2 * a for a in spec.alpha)
    n = -2 * spec.beta
    l1 = -2 * spec.epsilon
    l2 = -spec.delta
    k = [2 * spec.zeta]
    for i in range(1, M + 1):
        k.append(spec.lam[i - 1] * Fraction(2, i + 1))
    return CasimirCoeffs(kind="classical", m=m, n=n, l1=l1, l2=l2, k=tuple(k))


# ---------------------------------------------------------------------------
# Casimir elements for the verifiers
# ---------------------------------------------------------------------------


def quantum_casimir_element(spec: AlgebraSpec, cas: CasimirCoeffs,
                            rw: RewriteSystem) -> NCElement:
    K = rw.mul(rw.C, rw.C)
    for i, mi in enumerate(cas.m, start=1):
        Ai = NCElement.monomial(i, 0, 0)
        K = K + rw.anticommutator(Ai, rw.B).scale(mi * Fraction(1, 2))
    B2 = NCElement.monomial(0, 2, 0)
    K = K + rw.anticommutator(rw.A, B2).scale(cas.n * Fraction(1, 2))
    for i, ki in enumerate(cas.k, start=1):
        K = K + NCElement.monomial(i, 0, 0, ki)
    K = K + NCElement.monomial(0, 1, 0, cas.l1)
    K = K + NCElement.monomial(0, 2, 0, cas.l2)
    return K


def classical_casimir_element(cas: CasimirCoeffs) -> ABCPoly:
    mono = ABCPoly.monomial
    K = mono(0, 0, 2)
    for i, mi in enumerate(cas.m, start=1):
        K = K + mono(i, 1, 0, mi)
    K = K + mono(1, 2, 0, cas.n)
    for i, ki in enumerate(cas.k, start=1):
        K = K + mono(i, 0, 0, ki)
    K = K + mono(0, 1, 0, cas.l1)
    K = K + mono(0, 2, 0, cas.l2)
    return K


def classical_potential(cas: CasimirCoeffs) -> ABCPoly:
    """-(K - C^2)/2; its A/B gradients reproduce the closed brackets."""
    if cas.kind != "classical":
        raise ConfigError("classical_potential needs classical coefficients")
    K = classical_casimir_element(cas)
    P = K - ABCPoly.monomial(0, 0, 2)
    return P.scale(Fraction(-1, 2))


# ---------------------------------------------------------------------------
# family presets
# ---------------------------------------------------------------------------


def cartesian_spec(M: int, mode: str = "quantum") -> AlgebraSpec:
    """All alpha = beta = epsilon = 0; delta = d^2 so sqrt(delta) = d."""
    d = CoeffPoly.param("d")
    lam = tuple(CoeffPoly.param(f"l{i}") for i in range(1, M + 1))
    spec = AlgebraSpec.make(
        M=M, alpha=(), beta=0, delta=d * d, epsilon=0,
        zeta=CoeffPoly.param("z"), lam=lam, sqrt_delta=d, mode=mode,
    )
    return spec.closed()


def polar_spec(M: int, mode: str = "quantum") -> AlgebraSpec:
    """alpha_1, alpha_2 and beta nonzero; needs M >= 2."""
    if M < 2:
        raise ConfigError("polar family needs M >= 2")
    alpha = [CoeffPoly.param("a1"), CoeffPoly.param("a2")]
    lam = tuple(CoeffPoly.param(f"l{i}") for i in range(1, M + 1))
    spec = AlgebraSpec.make(
        M=M, alpha=alpha, beta=CoeffPoly.param("b"),
        delta=CoeffPoly.param("delta"), epsilon=CoeffPoly.param("e"),
        zeta=CoeffPoly.param("z"), lam=lam, mode=mode,
    )
    return spec.closed()


def general_spec(M: int, mode: str = "quantum") -> AlgebraSpec:
    """Fully symbolic structure constants."""
    L = M // 2
    alpha = [CoeffPoly.param(f"a{i}") for i in range(1, L + 2)]
    lam = tuple(CoeffPoly.param(f"l{i}") for i in range(1, M + 1))
    spec = AlgebraSpec.make(
        M=M, alpha=alpha, beta=CoeffPoly.param("b"),
        delta=CoeffPoly.param("delta"), epsilon=CoeffPoly.param("e"),
        zeta=CoeffPoly.param("z"), lam=lam, mode=mode,
    )
    return spec.closed()
