"""Graded characters of the Fock space, each computed in two independent ways.

Direct traces come from highest weight vector counts (exact ranks) and
an explicit enumeration of Heisenberg descendants.  Combinatorial sides
come from the partition families and product formulas.
"""

from fractions import Fraction

from .fock import charge, degree2, monomials_of_degree2
from .hwv import TWISTED, hwv_charge_table, hwv_dimension
from .partitions import (crank_counts, enumerate_bpdi, odp_of_weight2, triangular,
                         weight_W2)
from .series import Ring, Series, product_eval, sum_eval


def ring_q(N):
    return Ring(["q"], N)


def ring_qz(N):
    return Ring(["q", "z"], N)


def ring_qt(N):
    return Ring(["q", "t"], N)


def ring_qzr(N):
    return Ring(["q", "z", "r"], N)


def _series(ring, counts):
    return Series(ring, counts)


def _bump(d, k, v=1):
    d[k] = d.get(k, 0) + v


# --- Fock space ---------------------------------------------------------

def dim_fock_bruteforce(N):
    ring = ring_q(N)
    return _series(ring, {(d2,): len(monomials_of_degree2(d2)) for d2 in range(N + 1)})


def dim_fock_product(N):
    ring = ring_q(N)
    return product_eval(ring, (((2 * n - 1,), -1, -1) for n in range(1, N + 2)))


def char_fock_bruteforce(N):
    ring = ring_qz(N)
    out = {}
    for d2 in range(N + 1):
        for mono in monomials_of_degree2(d2):
            _bump(out, (d2, 2 * charge(mono)))
    return _series(ring, out)


def _fock_factors(N):
    for j in range(1, N + 2):
        yield (4 * j - 3, 2), -1, -1
        yield (4 * j - 1, -2), -1, -1


def char_fock_product(N):
    return product_eval(ring_qz(N), _fock_factors(N))


# --- highest weight vectors ------------------------------------------------

def char_hwv_direct(N):
    ring = ring_qz(N)
    return _series(ring, {(d2, 2 * c): n for (d2, c), n in hwv_charge_table(N).items()})


def char_hwv_bpdi(N):
    ring = ring_qz(N)
    out = {}
    for bp in enumerate_bpdi(N):
        _bump(out, (weight_W2(bp), 2 * bp.birank))
    return _series(ring, out)


def _hwv_product_factors(N):
    for n in range(1, N + 2):
        yield (4 * n - 3, 2), -1, -1
        yield (4 * n - 1, -2), -1, -1
        yield (4 * n, 0), -1, 1


def char_hwv_product(N):
    return product_eval(ring_qz(N), _hwv_product_factors(N))


def pair_sum(ring):
    """sum_k z^k q^(k/2)/(1+z^-1 q^(2k+3/2)) + sum_k z^-k q^(3k/2)/(1+z q^(2k+1/2))."""
    def first():
        for k in range(0, ring.order + 2):
            yield k, (lambda k=k: ring.monomial(1, q=k, z=2 * k)
                      .mul_binomial(ring.key(q=4 * k + 3, z=-2), 1, -1))

    def second():
        for k in range(0, ring.order + 2):
            yield 3 * k, (lambda k=k: ring.monomial(1, q=3 * k, z=-2 * k)
                          .mul_binomial(ring.key(q=4 * k + 1, z=2), 1, -1))

    return sum_eval(ring, first()) + sum_eval(ring, second())


def plus_product(ring):
    """prod_l (1 + z q^(2l-3/2)) (1 + z^-1 q^(2l-1/2))."""
    def factors():
        for l in range(1, ring.order + 2):
            yield ring.key(q=4 * l - 3, z=2), 1, 1
            yield ring.key(q=4 * l - 1, z=-2), 1, 1
    return product_eval(ring, factors())


def jacobi_product(ring):
    """prod_i (1 - q^(4i)) (1 + q^(2i))."""
    plus = ((ring.key(q=4 * i), 1, 1) for i in range(1, ring.order + 2))
    minus = ((ring.key(q=8 * i), -1, 1) for i in range(1, ring.order + 2))
    return product_eval(ring, plus, minus)


def square_product(ring):
    """prod_l (1 - q^(4l))^2."""
    def factors():
        for l in range(1, ring.order + 2):
            yield ring.key(q=8 * l), -1, 1
            yield ring.key(q=8 * l), -1, 1
    return product_eval(ring, factors())


def char_hwv_sum_vs_product(N):
    ring = ring_qz(N)
    return (plus_product(ring) * pair_sum(ring) * jacobi_product(ring).inverse()).scale(
        Fraction(1, 2))


def char_fock_sum_vs_product(N):
    ring = ring_qz(N)
    return (plus_product(ring) * pair_sum(ring) * square_product(ring).inverse()).scale(
        Fraction(1, 2))


def identity_r_rhs(N):
    ring = ring_qz(N)
    den = []
    for l in range(1, N + 2):
        den.append((ring.key(q=8 * l - 6, z=4), -1, -1))
        den.append((ring.key(q=8 * l - 2, z=-4), -1, -1))
    return (square_product(ring) * product_eval(ring, iter(den))).scale(2)


# --- twisted trace ----------------------------------------------------------

def _odd_multisets(total, top):
    """Multisets of odd positive integers <= top summing to total."""
    if total == 0:
        yield ()
        return
    start = min(top, total)
    if start % 2 == 0:
        start -= 1
    for p in range(start, 0, -2):
        for rest in _odd_multisets(total - p, p):
            yield (p,) + rest


def char_twisted_trace_direct(N):
    """sum over eigenbasis labels (twisted hwv, descendant modes) of q^deg t^(L^t_0)."""
    ring = ring_qt(N)
    out = {}
    for d0 in range(N + 1):
        n_hwv = hwv_dimension(TWISTED, d0)
        if not n_hwv:
            continue
        for gap in range(0, N - d0 + 1, 2):
            # each h^t_{-n2/2} adds doubled degree 2*n2 and doubled L^t_0 n2
            for lab in _odd_multisets(gap // 2, gap // 2):
                _bump(out, (d0 + gap, sum(lab)), n_hwv)
    return _series(ring, out)


def char_twisted_trace_odp(N):
    ring = ring_qt(N)
    base = {}
    for w2 in range(N + 1):
        n = len(odp_of_weight2(w2))
        if n:
            base[(w2, 0)] = n
    s = _series(ring, base)
    factors = (((2 * (2 * n - 1), 2 * n - 1), -1, -1) for n in range(1, N + 2))
    return s * product_eval(ring, factors)


# --- triple character -------------------------------------------------------

def _integer_partition_sizes(total):
    from .partitions import integer_partitions
    return len(integer_partitions(total))


def char_triple_direct(N):
    ring = ring_qzr(N)
    out = {}
    for (d0, c), n_hwv in hwv_charge_table(N).items():
        for size in range(0, (N - d0) // 4 + 1):
            # each h_{-n} adds doubled degree 4n and L^h_0 n
            count = _integer_partition_sizes(size)
            _bump(out, (d0 + 4 * size, 2 * c, -c * c + 2 * size), n_hwv * count)
    return _series(ring, out)


def char_triple_bpdi(N):
    ring = ring_qzr(N)
    base = {}
    for bp in enumerate_bpdi(N):
        b = bp.birank
        _bump(base, (weight_W2(bp), 2 * b, -b * b))
    factors = (((4 * n, 0, 2 * n), -1, -1) for n in range(1, N + 2))
    return _series(ring, base) * product_eval(ring, factors)


def char_triple_at_r1(s):
    """Forget the r-grading of a (q, z, r) series."""
    ring = ring_qz(s.ring.order)
    out = {}
    for (a, b, _), v in s.terms.items():
        _bump(out, (a, b), v)
    return _series(ring, out)


# --- crank --------------------------------------------------------------------

def char_crank_table(N):
    """sum N'(m, n) z^m q^n for n <= N/2 from the crank definition."""
    ring = ring_qz(N)
    table = crank_counts(N // 2)
    return _series(ring, {(2 * n, 2 * m): k for (m, n), k in table.counts.items()
                          if 2 * n <= N})


def char_crank_product(N):
    ring = ring_qz(N)

    def factors():
        for n in range(1, N + 2):
            yield (2 * n, 0), -1, 1
            yield (2 * n, 2), -1, -1
            yield (2 * n, -2), -1, -1
    return product_eval(ring, factors())


def crank_substituted_table(N):
    """sum N'(m, n) z^m q^(2n + m/2), read off the crank table."""
    ring = ring_qz(N)
    table = crank_counts(N // 3 + 1)
    out = {}
    for (m, n), k in table.counts.items():
        e = 4 * n + m
        if 0 <= e <= N:
            _bump(out, (e, 2 * m), k)
    return _series(ring, out)


def crank_substituted_product(N):
    ring = ring_qz(N)

    def factors():
        for n in range(1, N + 2):
            yield (4 * n - 1, -2), -1, -1
            yield (4 * n, 0), -1, 1
            yield (4 * n + 1, 2), -1, -1
    return product_eval(ring, factors())


def crank_resummed(N):
    """sum_n sum_m sum_{l>=0} N'(m-l, n) z^m q^(2n + m/2)."""
    ring = ring_qz(N)
    top = N // 3 + 1
    table = crank_counts(top)
    out = {}
    for n in range(0, top + 1):
        lo = -max(n, 1)
        for m in range(lo, N - 4 * n + 1):
            e = 4 * n + m
            if e < 0:
                continue
            val = sum(table(j, n) for j in range(lo, m + 1))
            if val:
                out[(e, 2 * m)] = val
    return _series(ring, out)


def char_series(which, N):
    """Series for the CLI: fock, hwv, qt, triple or crank."""
    fns = {"fock": char_fock_bruteforce, "hwv": char_hwv_direct,
           "qt": char_twisted_trace_direct, "triple": char_triple_direct,
           "crank": char_crank_table}
    if which not in fns:
        raise ValueError("unknown character %r" % (which,))
    return fns[which](N)


def degree_of(mono):
    return Fraction(degree2(mono), 2)


def triangular_sum(ring):
    """sum_m q^(2 T_m)."""
    out = {}
    m = 0
    while 4 * triangular(m) <= ring.order:
        out[ring.key(q=4 * triangular(m))] = 1
        m += 1
    return Series(ring, out)
