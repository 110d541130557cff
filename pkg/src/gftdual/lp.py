"""Dense two-phase simplex solver with Bland's anti-cycling rule.

Solves  minimize c.y  subject to rows (a, relation, b) with relation in
{<=, >=, =} and per-variable bounds.  Free variables are split into
positive and negative parts; finite lower/upper bounds are handled by
shifting (x = l + t) or reflection (x = u - t), with an extra slack row
when both bounds are finite.  Default bound is (0, None).

Duals follow the shadow-price convention: duals[i] is the derivative of
the optimal objective with respect to constraint i's right-hand side.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NumericalBreakdown, SizeMismatchError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LESS_EQUAL = "<="
GREATER_EQUAL = ">="
EQUAL = "="
_RELATIONS = (LESS_EQUAL, GREATER_EQUAL, EQUAL)

FEASIBILITY_TOL = 1e-8
PIVOT_TOL = 1e-11
_REDUCED_COST_TOL = 1e-11
_MAX_PIVOTS = 200000


@dataclass(frozen=True)
class LinearProgram:
    """minimize objective.y subject to constraints and variable bounds."""

    objective: np.ndarray
    constraints: tuple
    bounds: Optional[tuple] = None

    def __post_init__(self):
        c = np.array(self.objective, dtype=float)
        if c.ndim != 1:
            raise SizeMismatchError("objective must be a vector")
        if c.size and not np.isfinite(c).all():
            raise SizeMismatchError("objective has non-finite coefficients")
        m = c.size
        rows = []
        for k, (a, rel, b) in enumerate(self.constraints):
            a = np.array(a, dtype=float)
            if a.shape != (m,):
                raise SizeMismatchError(
                    "constraint %d row length %d != %d variables"
                    % (k, a.size, m))
            if (a.size and not np.isfinite(a).all()) or not np.isfinite(b):
                raise SizeMismatchError("constraint %d has non-finite data" % k)
            if rel not in _RELATIONS:
                raise SizeMismatchError(
                    "constraint %d relation %r not in %s" % (k, rel, _RELATIONS))
            a.flags.writeable = False
            rows.append((a, rel, float(b)))
        if self.bounds is not None:
            if len(self.bounds) != m:
                raise SizeMismatchError("bounds length != number of variables")
            for j, (lo, hi) in enumerate(self.bounds):
                if lo is not None and not np.isfinite(lo):
                    raise SizeMismatchError("bound %d lower not finite" % j)
                if hi is not None and not np.isfinite(hi):
                    raise SizeMismatchError("bound %d upper not finite" % j)
                if lo is not None and hi is not None and lo > hi:
                    raise SizeMismatchError("bound %d has lower > upper" % j)
            object.__setattr__(self, "bounds", tuple(
                (lo if lo is None else float(lo), hi if hi is None else float(hi))
                for lo, hi in self.bounds))
        c.flags.writeable = False
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "constraints", tuple(rows))

    @property
    def num_variables(self):
        return self.objective.size


@dataclass(frozen=True)
class LpResult:
    status: str
    y: Optional[np.ndarray]
    objective: Optional[float]
    duals: Optional[np.ndarray]
    phase1_residual: float


def _bland_pivot_column(z_row, allowed):
    for j in allowed:
        if z_row[j] < -_REDUCED_COST_TOL:
            return j
    return None


def _bland_pivot_row(tableau, basis, col):
    """Minimum-ratio row for the entering column, Bland tie-break.

    Returns (row, gray) where gray means only sub-tolerance positive
    pivots exist.
    """
    best_row = None
    best_ratio = None
    gray = False
    column = tableau[:, col]
    rhs = tableau[:, -1]
    for r in range(tableau.shape[0]):
        a = column[r]
        if a > PIVOT_TOL:
            ratio = rhs[r] / a
            if (best_ratio is None or ratio < best_ratio - 1e-12 or
                    (abs(ratio - best_ratio) <= 1e-12 and basis[r] < basis[best_row])):
                best_ratio = ratio
                best_row = r
        elif a > PIVOT_TOL * 1e-2:
            gray = True
    return best_row, gray


def _pivot(tableau, z_row, basis, row, col):
    piv = tableau[row, col]
    tableau[row] /= piv
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    if abs(z_row[col]) > 0.0:
        z_row -= z_row[col] * tableau[row]
    basis[row] = col


def _run_simplex(tableau, z_row, basis, allowed, phase):
    pivots = 0
    while True:
        col = _bland_pivot_column(z_row, allowed)
        if col is None:
            return None
        row, gray = _bland_pivot_row(tableau, basis, col)
        if row is None:
            if gray:
                raise NumericalBreakdown(
                    "pivot below %g with no alternative (phase %d)"
                    % (PIVOT_TOL, phase))
            return col
        _pivot(tableau, z_row, basis, row, col)
        pivots += 1
        if pivots > _MAX_PIVOTS:
            raise NumericalBreakdown(
                "simplex exceeded %d pivots (phase %d)" % (_MAX_PIVOTS, phase))


def solve_lp(program: LinearProgram) -> LpResult:
    """Two-phase simplex solve of the given program."""
    m = program.num_variables
    bounds = program.bounds
    if bounds is None:
        bounds = tuple((0.0, None) for _ in range(m))

    # transform every variable to a non-negative t-variable
    var_map = []
    nt = 0
    extra_rows = []
    for j, (lo, hi) in enumerate(bounds):
        if lo is not None:
            var_map.append(("shift", nt, lo))
            if hi is not None:
                extra_rows.append((nt, hi - lo))
            nt += 1
        elif hi is not None:
            var_map.append(("reflect", nt, hi))
            nt += 1
        else:
            var_map.append(("split", nt, nt + 1))
            nt += 2

    def to_t_row(a):
        row = np.zeros(nt)
        shift = 0.0
        for j in range(m):
            kind = var_map[j]
            if kind[0] == "shift":
                row[kind[1]] += a[j]
                shift += a[j] * kind[2]
            elif kind[0] == "reflect":
                row[kind[1]] -= a[j]
                shift += a[j] * kind[2]
            else:
                row[kind[1]] += a[j]
                row[kind[2]] -= a[j]
        return row, shift

    rows = []        # (t_row, relation, rhs, orig_index, sign)
    for i, (a, rel, b) in enumerate(program.constraints):
        t_row, shift = to_t_row(a)
        rows.append([t_row, rel, b - shift, i, 1.0])
    for t_index, ub in extra_rows:
        t_row = np.zeros(nt)
        t_row[t_index] = 1.0
        rows.append([t_row, LESS_EQUAL, ub, None, 1.0])

    for row in rows:
        if row[2] < 0.0:
            row[0] = -row[0]
            row[2] = -row[2]
            row[1] = {LESS_EQUAL: GREATER_EQUAL,
                      GREATER_EQUAL: LESS_EQUAL,
                      EQUAL: EQUAL}[row[1]]
            row[4] = -1.0
        if row[1] == GREATER_EQUAL and row[2] == 0.0:
            row[0] = -row[0]
            row[1] = LESS_EQUAL
            row[4] = -row[4]

    n_rows = len(rows)
    n_slack = sum(1 for r in rows if r[1] != EQUAL)
    n_art = sum(1 for r in rows if r[1] != LESS_EQUAL)
    width = nt + n_slack + n_art + 1

    tableau = np.zeros((n_rows, width))
    basis = [0] * n_rows
    aux_info = {}    # orig constraint index -> (column, kind, sign)
    slack_at = nt
    art_at = nt + n_slack
    art_cols = []
    for r, (t_row, rel, rhs, orig, sign) in enumerate(rows):
        tableau[r, :nt] = t_row
        tableau[r, -1] = rhs
        if rel == LESS_EQUAL:
            tableau[r, slack_at] = 1.0
            basis[r] = slack_at
            if orig is not None:
                aux_info[orig] = (slack_at, "slack", sign)
            slack_at += 1
        elif rel == GREATER_EQUAL:
            tableau[r, slack_at] = -1.0
            if orig is not None:
                aux_info[orig] = (slack_at, "surplus", sign)
            slack_at += 1
            tableau[r, art_at] = 1.0
            basis[r] = art_at
            art_cols.append(art_at)
            art_at += 1
        else:
            tableau[r, art_at] = 1.0
            basis[r] = art_at
            art_cols.append(art_at)
            art_at += 1
            if orig is not None:
                aux_info[orig] = (basis[r], "artificial", sign)
    art_set = set(art_cols)

    # phase 1: minimize the sum of artificials
    z_row = np.zeros(width)
    for col in art_cols:
        z_row[col] = 1.0
    for r in range(n_rows):
        if z_row[basis[r]] != 0.0:
            z_row -= z_row[basis[r]] * tableau[r]
    allowed = [j for j in range(width - 1)]
    if art_cols:
        result = _run_simplex(tableau, z_row, basis, allowed, phase=1)
        if result is not None:
            raise NumericalBreakdown("phase-1 objective reported unbounded")
    phase1_residual = float(-z_row[-1])
    if phase1_residual > FEASIBILITY_TOL:
        return LpResult(INFEASIBLE, None, None, None, phase1_residual)

    # drive leftover artificials out of the basis; drop redundant rows
    keep = np.ones(n_rows, dtype=bool)
    for r in range(n_rows):
        if basis[r] in art_set:
            target = None
            for j in range(nt + n_slack):
                if abs(tableau[r, j]) > PIVOT_TOL:
                    target = j
                    break
            if target is None:
                keep[r] = False
            else:
                _pivot(tableau, z_row, basis, r, target)
    if not keep.all():
        tableau = tableau[keep]
        basis = [b for b, k in zip(basis, keep) if k]
        dropped = {rows[r][3] for r in range(n_rows) if not keep[r]
                   and rows[r][3] is not None}
        n_rows = tableau.shape[0]
    else:
        dropped = set()

    # phase 2: original costs over t-variables, artificials locked out
    c_t = np.zeros(width)
    for j in range(m):
        kind = var_map[j]
        cj = program.objective[j]
        if kind[0] == "shift":
            c_t[kind[1]] += cj
        elif kind[0] == "reflect":
            c_t[kind[1]] -= cj
        else:
            c_t[kind[1]] += cj
            c_t[kind[2]] -= cj
    z_row = c_t.copy()
    for r in range(n_rows):
        if z_row[basis[r]] != 0.0:
            z_row -= z_row[basis[r]] * tableau[r]
    allowed = [j for j in range(width - 1) if j not in art_set]
    unbounded_col = _run_simplex(tableau, z_row, basis, allowed, phase=2)
    if unbounded_col is not None:
        return LpResult(UNBOUNDED, None, None, None, phase1_residual)

    t_values = np.zeros(width - 1)
    for r in range(n_rows):
        t_values[basis[r]] = tableau[r, -1]
    y = np.zeros(m)
    for j in range(m):
        kind = var_map[j]
        if kind[0] == "shift":
            y[j] = kind[2] + t_values[kind[1]]
        elif kind[0] == "reflect":
            y[j] = kind[2] - t_values[kind[1]]
        else:
            y[j] = t_values[kind[1]] - t_values[kind[2]]
    objective = float(np.dot(program.objective, y))

    duals = np.zeros(len(program.constraints))
    for i in range(len(program.constraints)):
        if i in dropped or i not in aux_info:
            continue
        col, kind, sign = aux_info[i]
        if kind == "surplus":
            duals[i] = sign * z_row[col]
        else:
            duals[i] = -sign * z_row[col]
    return LpResult(OPTIMAL, y, objective, duals, phase1_residual)
