"""Exact feasibility of small systems of strict linear inequalities.

An inequality ``(c, c0)`` stands for ``c . x + c0 > 0``; an equation ``(e, e0)``
for ``e . x + e0 = 0``.  One variable is removed through the equation, the rest
by Fourier-Motzkin elimination.  Positive combinations of strict inequalities
stay strict, so the elimination is exact for open systems.
"""

from __future__ import annotations

from fractions import Fraction

MAX_DIM = 6


def _normalize(ineqs, dim):
    out = []
    for c, c0 in ineqs:
        c = [Fraction(v) for v in c]
        if len(c) != dim:
            raise ValueError("inequality dimension mismatch")
        out.append((c, Fraction(c0)))
    return out


def _substitute(ineqs, eq):
    """Eliminate the first variable with a nonzero coefficient in ``eq``."""
    e, e0 = [Fraction(v) for v in eq[0]], Fraction(eq[1])
    try:
        k = next(i for i, v in enumerate(e) if v != 0)
    except StopIteration:
        raise ValueError("equation has a zero normal") from None
    # x_k = -(e0 + sum_{j != k} e_j x_j) / e_k
    expr = [-v / e[k] for v in e]
    expr[k] = Fraction(0)
    expr0 = -e0 / e[k]
    reduced = []
    for c, c0 in ineqs:
        ck = c[k]
        nc = [cj + ck * xj for cj, xj in zip(c, expr)]
        nc[k] = Fraction(0)
        reduced.append((nc, c0 + ck * expr0))
    return reduced, k, expr, expr0


def _eliminate(ineqs, var):
    pos, neg, rest = [], [], []
    for c, c0 in ineqs:
        v = c[var]
        (pos if v > 0 else neg if v < 0 else rest).append((c, c0))
    out = list(rest)
    for cp, cp0 in pos:
        for cn, cn0 in neg:
            a, b = -cn[var], cp[var]
            nc = [a * x + b * y for x, y in zip(cp, cn)]
            nc[var] = Fraction(0)
            out.append((nc, a * cp0 + b * cn0))
    # drop exact duplicates to curb growth
    seen, uniq = set(), []
    for c, c0 in out:
        key = (tuple(c), c0)
        if key not in seen:
            seen.add(key)
            uniq.append((c, c0))
    return uniq, pos, neg


def _pick(x, var, pos, neg):
    """A value for ``x[var]`` strictly inside the bounds left by ``pos``/``neg``."""
    lo = hi = None
    for c, c0 in pos:  # c[var] * t > -(rest)
        rest = c0 + sum(cj * xj for j, (cj, xj) in enumerate(zip(c, x)) if j != var)
        b = -rest / c[var]
        lo = b if lo is None or b > lo else lo
    for c, c0 in neg:
        rest = c0 + sum(cj * xj for j, (cj, xj) in enumerate(zip(c, x)) if j != var)
        b = -rest / c[var]
        hi = b if hi is None or b < hi else hi
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def strict_witness(ineqs, eq=None, dim=None):
    """Return an exact point satisfying the system, or ``None`` if infeasible."""
    ineqs = list(ineqs)
    if dim is None:
        if eq is not None:
            dim = len(eq[0])
        elif ineqs:
            dim = len(ineqs[0][0])
        else:
            return []
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} exceeds {MAX_DIM}")
    system = _normalize(ineqs, dim)
    sub = None
    if eq is not None:
        if len(eq[0]) != dim:
            raise ValueError("equation dimension mismatch")
        system, k, expr, expr0 = _substitute(system, eq)
        sub = (k, expr, expr0)
    free = [j for j in range(dim) if sub is None or j != sub[0]]
    stages = []
    for var in free:
        system, pos, neg = _eliminate(system, var)
        stages.append((var, pos, neg))
    if any(c0 <= 0 for _, c0 in system):
        return None
    x = [Fraction(0)] * dim
    for var, pos, neg in reversed(stages):
        x[var] = _pick(x, var, pos, neg)
    if sub is not None:
        k, expr, expr0 = sub
        x[k] = expr0 + sum(a * b for a, b in zip(expr, x))
    return x


def strict_feasible(ineqs, eq=None, dim=None) -> bool:
    """True iff some x satisfies every strict inequality (and ``eq`` if given)."""
    return strict_witness(ineqs, eq, dim) is not None
