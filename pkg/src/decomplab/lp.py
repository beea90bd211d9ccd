"""Feasibility LPs for fractional decomposition.

Rational mode is a dense phase-1 simplex over `Fraction` with Bland's rule
(guaranteed termination); float mode delegates to scipy's HiGHS.  The systems
here are small: one equality row per target edge, one variable per copy.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import SizeGuardError


def solve_equalities_nonneg(rows: list[list[Fraction]],
                            rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Find x >= 0 with A x = b exactly, or None if infeasible.

    Phase-1 simplex: minimise the sum of artificial variables with Bland's
    anti-cycling pivot rule.
    """
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    A = [list(r) for r in rows]
    b = list(rhs)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # tableau with artificials n..n+m-1; objective = sum of artificials
    width = n + m
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced objective row: z = sum(artificials); express via basis
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            obj[j] += T[i][j]

    in_basis = [False] * width
    for bi in basis:
        in_basis[bi] = True
    while True:
        # Bland: smallest structural index with positive reduced cost;
        # artificial columns are frozen once they leave the basis
        enter = -1
        for j in range(n):
            if obj[j] > 0 and not in_basis[j]:
                enter = j
                break
        if enter == -1:
            break
        # ratio test, Bland ties by smallest basis index
        leave, best = -1, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave == -1:
            break  # unbounded in phase 1 cannot happen, but bail safely
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [a - f * c for a, c in zip(obj, T[leave])]
        in_basis[basis[leave]] = False
        in_basis[enter] = True
        basis[leave] = enter

    if obj[width] != 0:
        return None  # artificials cannot be driven to zero
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][width]
    return x


def solve_equalities_box_float(rows, rhs, tolerance: float = 1e-9):
    """Float path: x in [0,1]^n with A x = b, via scipy HiGHS."""
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError as exc:  # pragma: no cover
        raise SizeGuardError(f"float LP requires scipy: {exc}")
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    res = linprog(c=np.zeros(n), A_eq=np.array(rows, dtype=float),
                  b_eq=np.array(rhs, dtype=float), bounds=[(0.0, 1.0)] * n,
                  method="highs")
    if not res.success:
        return None
    x = res.x
    resid = abs(np.array(rows, dtype=float) @ x - np.array(rhs, dtype=float)).max()
    if resid > tolerance:
        return None
    return [float(v) for v in x]
