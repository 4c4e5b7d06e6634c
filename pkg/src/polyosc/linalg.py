"""Exact linear algebra over the coefficient fraction field, plus resultants.

``solve_linear`` clears denominators row-wise and runs fraction-free
(Bareiss) elimination over CoeffPoly, so every division is exact; solutions
come back in CoeffFrac with a zero-residual certificate.  Underdetermined
systems produce a parametrized solution in named free variables.

``eliminate`` computes the Sylvester resultant of two polynomials with
respect to one parameter.  Sign convention: the Sylvester matrix lists the
rows of the first argument first, coefficients in descending degree, so
``eliminate(x - y, x + y, "x") == 2*y``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistentSystem, ZeroResultant
from .ring import CoeffFrac, CoeffPoly, exact_div, poly_gcd, poly_lcm

AffineExpr = dict  # {"": CoeffFrac constant, free_var_name: CoeffFrac coeff}


@dataclass
class LinearSystem:
    """matrix . x = rhs with entries coercible to CoeffFrac."""

    matrix: list
    rhs: list
    var_names: list | None = None

    def __post_init__(self):
        self.matrix = [[CoeffFrac.coerce(e) for e in row] for row in self.matrix]
        self.rhs = [CoeffFrac.coerce(e) for e in self.rhs]
        if len(self.matrix) != len(self.rhs):
            raise ValueError("matrix/rhs row count mismatch")
        widths = {len(row) for row in self.matrix}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        n = widths.pop() if widths else 0
        if self.var_names is None:
            self.var_names = [f"x{i}" for i in range(n)]
        elif len(self.var_names) != n:
            raise ValueError("var_names length mismatch")


@dataclass
class LinearSolution:
    """values[i] is an affine expression in the free variables."""

    values: list
    free: list
    rank: int
    residual_zero: bool = True

    @property
    def is_unique(self) -> bool:
        return not self.free

    def constants(self) -> list:
        """The particular solution with all free variables set to zero."""
        return [v[""] for v in self.values]


def solve_linear(system: LinearSystem) -> LinearSolution:
    """Solve exactly; raises InconsistentSystem when no solution exists."""
    m = len(system.matrix)
    n = len(system.var_names)
    # clear denominators row by row: entries become CoeffPoly
    rows: list[list[CoeffPoly]] = []
    for i in range(m):
        dens = [e.den for e in system.matrix[i]] + [system.rhs[i].den]
        lcm = CoeffPoly.one()
        for d in dens:
            lcm = poly_lcm(lcm, d)
        row = [e.num * exact_div(lcm, e.den) for e in system.matrix[i]]
        row.append(system.rhs[i].num * exact_div(lcm, system.rhs[i].den))
        rows.append(row)

    # fraction-free elimination with column pivot tracking
    pivot_cols: list[int] = []
    prev_pivot = CoeffPoly.one()
    r = 0
    for col in range(n):
        pivot_row = None
        for i in range(r, m):
            if not rows[i][col].is_zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][col]
        for i in range(r + 1, m):
            factor = rows[i][col]
            for j in range(col, n + 1):
                num = pivot * rows[i][j] - factor * rows[r][j]
                rows[i][j] = exact_div(num, prev_pivot)
        pivot_cols.append(col)
        prev_pivot = pivot
        r += 1
        if r == m:
            break
    rank = r
    for i in range(rank, m):
        if not rows[i][n].is_zero:
            raise InconsistentSystem(f"row {i} reduces to 0 = {rows[i][n]}")

    free_cols = [c for c in range(n) if c not in pivot_cols]
    free_names = [system.var_names[c] for c in free_cols]
    values: list[AffineExpr] = [None] * n
    for c, name in zip(free_cols, free_names):
        expr: AffineExpr = {"": CoeffFrac(0), name: CoeffFrac(1)}
        values[c] = expr
    for k in range(rank - 1, -1, -1):
        col = pivot_cols[k]
        pivot = CoeffFrac(rows[k][col])
        expr: AffineExpr = {"": CoeffFrac(rows[k][n]) / pivot}
        for j in range(col + 1, n):
            coeff = rows[k][j]
            if coeff.is_zero:
                continue
            scale = CoeffFrac(coeff) / pivot
            for name, v in values[j].items():
                expr[name] = expr.get(name, CoeffFrac(0)) - scale * v
        values[col] = {name: v for name, v in expr.items() if name == "" or not v.is_zero}

    solution = LinearSolution(values=values, free=free_names, rank=rank)
    _certify(system, solution)
    return solution


def _certify(system: LinearSystem, solution: LinearSolution) -> None:
    """Substitute back; every residual must vanish identically."""
    for i, row in enumerate(system.matrix):
        acc: AffineExpr = {"": -system.rhs[i]}
        for a, expr in zip(row, solution.values):
            if a.is_zero:
                continue
            for name, v in expr.items():
                acc[name] = acc.get(name, CoeffFrac(0)) + a * v
        for v in acc.values():
            if not v.is_zero:
                solution.residual_zero = False
                raise InconsistentSystem(f"residual of row {i} nonzero: {v}")


# ---------------------------------------------------------------------------
# determinants and resultants over CoeffPoly
# ---------------------------------------------------------------------------


def det(matrix: list) -> CoeffPoly:
    """Determinant by minor expansion (division-free, exact over the ring)."""
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return CoeffPoly.one()
    m = [[CoeffPoly.coerce(e) for e in row] for row in matrix]
    full = (1 << n) - 1
    cache: dict[tuple[int, int], CoeffPoly] = {}

    def minor(row: int, cols: int) -> CoeffPoly:
        if row == n:
            return CoeffPoly.one()
        key = (row, cols)
        hit = cache.get(key)
        if hit is not None:
            return hit
        acc = CoeffPoly.zero()
        sign = 1
        for c in range(n):
            bit = 1 << c
            if not cols & bit:
                continue
            entry = m[row][c]
            if not entry.is_zero:
                term = entry * minor(row + 1, cols & ~bit)
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        cache[key] = acc
        return acc

    return minor(0, full)


def sylvester(p: CoeffPoly, q: CoeffPoly, var: str) -> list:
    pu = p.univar(var)
    qu = q.univar(var)
    dp = len(pu) - 1
    dq = len(qu) - 1
    if dp < 1 or dq < 1:
        raise ValueError(f"both polynomials must involve {var}")
    size = dp + dq
    rows = []
    pdesc = list(reversed(pu))
    qdesc = list(reversed(qu))
    for i in range(dq):
        row = [CoeffPoly.zero()] * size
        for j, c in enumerate(pdesc):
            row[i + j] = c
        rows.append(row)
    for i in range(dp):
        row = [CoeffPoly.zero()] * size
        for j, c in enumerate(qdesc):
            row[i + j] = c
        rows.append(row)
    return rows


def eliminate(p: CoeffPoly, q: CoeffPoly, var: str) -> CoeffPoly:
    """Resultant of p and q with respect to ``var``.

    Vanishes exactly at parameter values admitting a common root in ``var``.
    Raises ZeroResultant (carrying the common factor) when p and q share a
    factor involving ``var``, in which case the caller must factor it out.
    """
    p = CoeffPoly.coerce(p)
    q = CoeffPoly.coerce(q)
    if p.is_zero or q.is_zero:
        raise ValueError("eliminate of the zero polynomial")
    res = det(sylvester(p, q, var))
    if res.is_zero:
        g = poly_gcd(p, q)
        raise ZeroResultant(
            f"resultant in {var} vanishes identically; common factor {g}",
            common_factor=g,
        )
    return res
