"""Brute-force oracles shared by the test suite.

Everything here is deliberately naive and independent of the library's own
algorithms: closures by breadth-first multiplication of image tuples,
determinants by cofactor expansion.
"""


def mulclose(perms):
    """All elements of the group generated by the given permutations,
    as image tuples."""
    if not perms:
        return {()}
    n = perms[0].degree
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    images = [g.images for g in perms]
    while frontier:
        new = []
        for x in frontier:
            for g in images:
                y = tuple(g[v] for v in x)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def det_cofactor(rows):
    """Determinant by cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * det_cofactor(minor)
    return total


def minors_gcd(rows, k):
    """gcd of all k x k minors of an integer matrix (0 if all vanish)."""
    from itertools import combinations
    from math import gcd
    total = 0
    for ri in combinations(range(len(rows)), k):
        for ci in combinations(range(len(rows[0])), k):
            sub = [[rows[i][j] for j in ci] for i in ri]
            total = gcd(total, det_cofactor(sub))
    return total
