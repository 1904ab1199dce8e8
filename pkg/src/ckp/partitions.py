"""Partition families ODP, P_tdo and BP_DI, the weight map W, birank and crank.

Weights of half-odd partitions are handled doubled (``w2 = 2*weight``).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy.utilities.iterables import partitions as _sympy_partitions


def triangular(m):
    return m * (m + 1) // 2


@dataclass(frozen=True)
class HalfOddPartition:
    """Distinct half-odd parts, stored doubled and strictly decreasing."""
    parts2: tuple

    def __post_init__(self):
        p = self.parts2
        if any(x <= 0 or x % 2 == 0 for x in p) or list(p) != sorted(set(p), reverse=True):
            raise ValueError("parts must be distinct positive half-odd numbers")

    @property
    def weight2(self):
        return sum(self.parts2)

    @property
    def parts(self):
        return [Fraction(x, 2) for x in self.parts2]


@dataclass(frozen=True)
class TriangularPartition:
    triangular_index: int
    tail: HalfOddPartition

    @property
    def weight2(self):
        return 2 * triangular(self.triangular_index) + self.tail.weight2


@dataclass(frozen=True)
class Bipartition:
    pi1: tuple
    pi2: tuple

    def __post_init__(self):
        for name, p in (("pi1", self.pi1), ("pi2", self.pi2)):
            if any((not isinstance(x, int)) or x <= 0 for x in p):
                raise ValueError("%s must have positive integer parts" % name)
            if list(p) != sorted(set(p), reverse=True):
                raise ValueError("%s must be strictly decreasing" % name)

    @property
    def birank(self):
        return len(self.pi2) - len(self.pi1)

    @property
    def size(self):
        return sum(self.pi1) + sum(self.pi2)

    def __str__(self):
        return "(%s|%s)" % (",".join(map(str, self.pi1)) or "-",
                            ",".join(map(str, self.pi2)) or "-")


def weight_W2(bp):
    """Twice W = 2|bp| + 2ns - n(2n-1)/2 - s(2s+1)/2 with n=#pi1, s=#pi2."""
    n, s = len(bp.pi1), len(bp.pi2)
    return 4 * bp.size + 4 * n * s - n * (2 * n - 1) - s * (2 * s + 1)


def weight_W(bp):
    return Fraction(weight_W2(bp), 2)


def birank(bp):
    return bp.birank


# --- distinct-part enumeration -------------------------------------------

def distinct_parts(total, candidates):
    """Strictly decreasing tuples of distinct candidates with the given sum."""
    cands = sorted(set(candidates), reverse=True)

    def rec(rem, start):
        if rem == 0:
            yield ()
            return
        for i in range(start, len(cands)):
            p = cands[i]
            if p <= rem:
                for rest in rec(rem - p, i + 1):
                    yield (p,) + rest

    return list(rec(total, 0))


def distinct_parts_count(total, count, max_part=None):
    """Strictly decreasing tuples of `count` positive integers summing to total."""
    if max_part is None:
        max_part = total

    def rec(rem, k, top):
        if k == 0:
            if rem == 0:
                yield ()
            return
        # smallest possible sum with k distinct parts is T_k
        for p in range(min(top, rem), 0, -1):
            if p * k - k * (k - 1) // 2 < rem:
                break
            if rem - p < triangular(k - 1):
                continue
            for rest in rec(rem - p, k - 1, p - 1):
                yield (p,) + rest

    return list(rec(total, count, max_part))


@lru_cache(maxsize=None)
def odp_of_weight2(w2):
    return tuple(HalfOddPartition(p) for p in distinct_parts(w2, range(1, w2 + 1, 2)))


@lru_cache(maxsize=None)
def ptdo_of_weight2(w2):
    out = []
    m = 0
    while 2 * triangular(m) <= w2:
        for tail in odp_of_weight2(w2 - 2 * triangular(m)):
            out.append(TriangularPartition(m, tail))
        m += 1
    return tuple(out)


def enumerate_family(family, max_weight2):
    """{w2: [partitions]} for family 'odp' or 'ptdo', weights 0..max_weight2/2."""
    fn = {"odp": odp_of_weight2, "ptdo": ptdo_of_weight2}.get(family)
    if fn is None:
        raise ValueError("family must be 'odp' or 'ptdo'")
    return {w2: list(fn(w2)) for w2 in range(max_weight2 + 1)}


def min_weight2(n, s):
    """Twice the smallest W with #pi1 = n, #pi2 = s (staircase bipartition)."""
    return 3 * n + s + 4 * n * s


def enumerate_bpdi(max_W2):
    """All distinct-integer bipartitions with 2W <= max_W2, sorted by (2W, str).

    At fixed (n, s), W is increasing in |bp|, and the minimum over (n, s)
    is 3n/2 + s/2 + 2ns, increasing in both; this bounds the search.
    """
    out = []
    n = 0
    while min_weight2(n, 0) <= max_W2:
        s = 0
        while min_weight2(n, s) <= max_W2:
            base = 4 * n * s - n * (2 * n - 1) - s * (2 * s + 1)
            max_size = (max_W2 - base) // 4
            for size in range(triangular(n) + triangular(s), max_size + 1):
                for k1 in range(triangular(n), size - triangular(s) + 1):
                    for p1 in distinct_parts_count(k1, n):
                        for p2 in distinct_parts_count(size - k1, s):
                            out.append(Bipartition(p1, p2))
            s += 1
        n += 1
    out.sort(key=lambda bp: (weight_W2(bp), bp.pi1, bp.pi2))
    return out


# --- crank -------------------------------------------------------------

def integer_partitions(n):
    """Partitions of n as weakly decreasing tuples."""
    if n == 0:
        return [()]
    out = []
    for p in _sympy_partitions(n):
        parts = []
        for k in sorted(p, reverse=True):
            parts.extend([k] * p[k])
        out.append(tuple(parts))
    return out


def crank(lam):
    lam = tuple(lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(x <= 0 for x in lam):
        raise ValueError("partition must be weakly decreasing positive integers")
    if not lam:
        return 0
    omega = lam.count(1)
    if omega == 0:
        return lam[0]
    mu = sum(1 for x in lam if x > omega)
    return mu - omega


class CrankTable:
    """N'(m, n): partitions of n with crank m, with the n = 1 row overridden."""

    def __init__(self, max_n):
        self.max_n = max_n
        self.counts = {}
        for n in range(max_n + 1):
            if n == 1:
                row = {-1: 1, 0: -1, 1: 1}
            else:
                row = {}
                for lam in integer_partitions(n):
                    c = crank(lam)
                    row[c] = row.get(c, 0) + 1
            for m, k in row.items():
                self.counts[(m, n)] = k

    def __call__(self, m, n):
        """N'(m, n); arguments may be Fractions, non-integers give 0."""
        m, n = Fraction(m), Fraction(n)
        if m.denominator != 1 or n.denominator != 1 or n < 0:
            return 0
        n = int(n)
        if n > self.max_n:
            raise ValueError("crank table only computed up to n=%d" % self.max_n)
        return self.counts.get((int(m), n), 0)

    def row(self, n):
        return {m: k for (m, nn), k in sorted(self.counts.items()) if nn == n}


@lru_cache(maxsize=None)
def crank_counts(max_n):
    return CrankTable(max_n)


def hwv_count_via_crank(d2, m):
    """sum_{l>=0} N'(m-l, (2n-m)/4) for degree n = d2/2 and charge m."""
    x = d2 - m
    if x % 4 or x < 0:
        return 0
    k = x // 4
    table = crank_counts(max(k, 1))
    lo = -max(k, 1)  # N'(j, k) = 0 for j < -k
    return sum(table(j, k) for j in range(lo, m + 1))
