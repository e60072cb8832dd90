"""Exact integer lattice algorithms (HNF, kernels, Smith form) and rational solves."""

from __future__ import annotations

from fractions import Fraction


def row_hnf(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form with transform.

    Returns (H, U) where H is the list of non-zero HNF rows (pivots
    positive, strictly increasing pivot columns, entries above a pivot
    reduced into [0, pivot)) and U is a k x k unimodular matrix with
    U * rows == H padded with zero rows.
    """
    k = len(rows)
    m = len(rows[0]) if rows else 0
    a = [list(map(int, r)) for r in rows]
    for r in a:
        assert len(r) == m
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    rank = 0
    for col in range(m):
        pivot_row = None
        while True:
            live = [i for i in range(rank, k) if a[i][col] != 0]
            if not live:
                break
            if len(live) == 1:
                pivot_row = live[0]
                break
            live.sort(key=lambda i: abs(a[i][col]))
            base = live[0]
            for i in live[1:]:
                q = a[i][col] // a[base][col]
                if q:
                    for j in range(m):
                        a[i][j] -= q * a[base][j]
                    for j in range(k):
                        u[i][j] -= q * u[base][j]
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        u[rank], u[pivot_row] = u[pivot_row], u[rank]
        if a[rank][col] < 0:
            a[rank] = [-x for x in a[rank]]
            u[rank] = [-x for x in u[rank]]
        piv = a[rank][col]
        for i in range(rank):
            q = a[i][col] // piv
            if q:
                for j in range(m):
                    a[i][j] -= q * a[rank][j]
                for j in range(k):
                    u[i][j] -= q * u[rank][j]
        rank += 1
    return [a[i] for i in range(rank)], u


def left_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis (HNF-canonical) of {z in Z^k : z * rows == 0}."""
    h, u = row_hnf(rows)
    rank = len(h)
    kernel_rows = u[rank:]
    if not kernel_rows:
        return []
    canon, _ = row_hnf(kernel_rows)
    return canon


def smith_invariants(rows: list[list[int]]) -> list[int]:
    """Diagonal invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return []
    n_rows, n_cols = len(a), len(a[0])
    out = []
    t = 0
    while t < n_rows and t < n_cols:
        best = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        dirty = False
        for i in range(t + 1, n_rows):
            q = a[i][t] // a[t][t]
            if q:
                for j in range(t, n_cols):
                    a[i][j] -= q * a[t][j]
            if a[i][t] != 0:
                dirty = True
        for j in range(t + 1, n_cols):
            q = a[t][j] // a[t][t]
            if q:
                for i in range(t, n_rows):
                    a[i][j] -= q * a[i][t]
            if a[t][j] != 0:
                dirty = True
        if dirty:
            continue
        bad = None
        for i in range(t + 1, n_rows):
            for j in range(t + 1, n_cols):
                if a[i][j] % a[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(t, n_cols):
                a[t][j] += a[bad][j]
            continue
        out.append(abs(a[t][t]))
        t += 1
    return out


def hnf_express(h: list[list[int]], target: list[int]) -> list[int] | None:
    """Integer row x with x * H == target, or None.  H must be HNF rows."""
    if not h:
        return [] if all(v == 0 for v in target) else None
    m = len(h[0])
    residue = list(map(int, target))
    coeffs = []
    for row in h:
        piv_col = next(j for j in range(m) if row[j] != 0)
        q, r = divmod(residue[piv_col], row[piv_col])
        if r != 0:
            return None
        coeffs.append(q)
        if q:
            for j in range(m):
                residue[j] -= q * row[j]
    if any(v != 0 for v in residue):
        return None
    return coeffs


def solve_rational(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Unique solution of a square exact system; asserts non-singularity."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        assert piv is not None, "singular system"
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]
