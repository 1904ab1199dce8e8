"""Exact linear algebra helpers.

Small explicit kernels use a Fraction-based row reduction.  Large rank
computations go through FLINT's exact integer matrices.  Above a size
threshold the rank is taken modulo a large prime instead: a modular
rank never exceeds the rational one, so kernel dimensions computed this
way are upper bounds, exact unless the prime divides every maximal
nonvanishing minor.
"""

from fractions import Fraction

import flint


def rref(rows, ncols):
    """Reduced row echelon form of a list of sparse rows {col: value}.

    Returns (reduced rows as dicts, pivot columns).
    """
    rows = [{c: Fraction(v) for c, v in r.items() if v} for r in rows]
    rows = [r for r in rows if r]
    pivots = []
    reduced = []
    for col in range(ncols):
        pick = None
        for i, r in enumerate(rows):
            if r.get(col):
                pick = i
                break
        if pick is None:
            continue
        prow = rows.pop(pick)
        inv = 1 / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        new_rows = []
        for r in rows:
            f = r.get(col)
            if f:
                r = dict(r)
                for c, v in prow.items():
                    x = r.get(c, 0) - f * v
                    if x:
                        r[c] = x
                    else:
                        r.pop(c, None)
            if r:
                new_rows.append(r)
        rows = new_rows
        for k, r in enumerate(reduced):
            f = r.get(col)
            if f:
                r = dict(r)
                for c, v in prow.items():
                    x = r.get(c, 0) - f * v
                    if x:
                        r[c] = x
                    else:
                        r.pop(c, None)
                reduced[k] = r
        reduced.append(prow)
        pivots.append(col)
    return reduced, pivots


def nullspace(rows, ncols):
    """Kernel basis of the matrix with the given sparse rows.

    The basis is returned in reduced echelon form (as a row space), so
    each vector has first nonzero coordinate 1 and the basis is unique.
    """
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for r, p in zip(reduced, pivots):
            x = r.get(free)
            if x:
                vec[p] = -x
        basis.append(vec)
    if not basis:
        return []
    canon, _ = rref(basis, ncols)
    return canon


PRIMES = (2305843009213693951, 4611686018427387847)
EXACT_RANK_LIMIT = 1200


class ModularRankMismatch(ArithmeticError):
    pass


def _dense(rows, ncols):
    rows = [r for r in rows if r]
    dense = [[0] * ncols for _ in rows]
    for i, r in enumerate(rows):
        line = dense[i]
        for c, v in r.items():
            line[c] = v
    if len(rows) > ncols:
        dense = [list(col) for col in zip(*dense)]
    return dense


def rank_exact(rows, ncols):
    """Exact rank of an integer matrix given by sparse rows {col: int}."""
    if not ncols or not any(rows):
        return 0
    return flint.fmpz_mat(_dense(rows, ncols)).rank()


def rank_modular(rows, ncols, primes=PRIMES[:1]):
    """Rank modulo each prime; they must agree.  A lower bound on the exact rank."""
    if not ncols or not any(rows):
        return 0
    dense = _dense(rows, ncols)
    ranks = {p: flint.nmod_mat(dense, p).rank() for p in primes}
    if len(set(ranks.values())) != 1:
        raise ModularRankMismatch("ranks differ between primes: %r" % (ranks,))
    return ranks[primes[0]]


def rank(rows, ncols, exact_limit=EXACT_RANK_LIMIT):
    """Exact rank when min(rows, cols) <= exact_limit, else modular."""
    if min(len(rows), ncols) <= exact_limit:
        return rank_exact(rows, ncols)
    return rank_modular(rows, ncols)


def rank_rational(vectors, ncols):
    """Exact rank of rational vectors given as sparse dicts."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    dense = [[0] * ncols for _ in vectors]
    for i, v in enumerate(vectors):
        for c, x in v.items():
            dense[i][c] = flint.fmpq(Fraction(x).numerator, Fraction(x).denominator)
    return flint.fmpq_mat(dense).rank()
