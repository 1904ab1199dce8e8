"""Heisenberg modes, grading operators and commutator probes.

Integer modes h^Z_n and half-odd modes h^t_n are quadratic in chi:

    h^Z_n = 1/2 sum_{m+l=2n} :chi_m chi_l:
    h^t_n = 1/2 sum_{m+l=2n} (-1)^(-l-1/2) :chi_m chi_l:

Twisted modes are passed doubled (n2 = 2n, odd).
"""

from fractions import Fraction

from .fock import (FockVector, degree2, format_half, linear_map, monomials_up_to2,
                   monomial_key, pair_on_monomial, quadratic_terms, charge)

HALF = Fraction(1, 2)
LT0_SHIFT = Fraction(1, 16)  # L^chi_0 = L^t_0 + 1/16


class ProbeEscape(Exception):
    """An operator output left the degree window of a probe."""


def _untwisted_kappa(a2, b2):
    return 1


def _twisted_kappa(a2, b2):
    # (-1)^(-b - 1/2) with b = b2/2
    return -1 if ((-b2 - 1) // 2) % 2 else 1


def untwisted_mono(n, mono):
    """Twice h^Z_n on a monomial, as an integer-coefficient dict."""
    return quadratic_terms(4 * n, _untwisted_kappa, mono)


def twisted_mono(n2, mono):
    """Twice h^t_{n2/2} on a monomial, as an integer-coefficient dict."""
    if n2 % 2 == 0:
        raise ValueError("twisted modes are half-odd")
    return quadratic_terms(2 * n2, _twisted_kappa, mono)


def heis_untwisted(n, v):
    return linear_map(lambda m: untwisted_mono(n, m), v) * HALF


def heis_twisted(n2, v):
    return linear_map(lambda m: twisted_mono(n2, m), v) * HALF


def grade_charge(v):
    return heis_untwisted(0, v)


def llambda_eigenvalue(lam, mono):
    """Eigenvalue of L^lambda_0 = -sum_k (lambda+k) :chi_{-2k+1/2} chi_{2k-1/2}:."""
    total = Fraction(0)
    for j2, _ in mono:
        # the only k with a nonzero pair on this monomial have |2k-1/2| = j
        for k2 in (j2 + 1, 1 - j2):  # 2*(2k) candidates with 4k - 1 = +-j2
            if k2 % 4:
                continue
            k = k2 // 4
            r = pair_on_monomial(1 - 4 * k, 4 * k - 1, mono)
            if r is not None:
                total -= (lam + k) * r[1]
    return total


def grade_Llambda(lam, v):
    lam = Fraction(lam)
    return FockVector({m: c * llambda_eigenvalue(lam, m) for m, c in v.terms.items()})


def grade_L0(v):
    return grade_Llambda(Fraction(-1, 4), v)


def grade_Lt0(v):
    """L^t_0 = -sum_{n>0} h^t_{-n} h^t_n, cut off where h^t_n kills v."""
    out = FockVector()
    top = v.max_degree2()
    for n2 in range(1, top // 2 + 1, 2):
        w = heis_twisted(n2, v)
        if w:
            out = out - heis_twisted(-n2, w)
    return out


def grade_Lh0(v, a=0, b=0):
    """-1/2 (h_0)^2 - sum_{n>0} h_{-n} h_n + (b-a) h_0 + (2ab - b^2)/2."""
    a, b = Fraction(a), Fraction(b)
    h0v = grade_charge(v)
    out = grade_charge(h0v) * (-HALF)
    top = v.max_degree2()
    for n in range(1, top // 4 + 1):
        w = heis_untwisted(n, v)
        if w:
            out = out - heis_untwisted(-n, w)
    if b - a:
        out = out + h0v * (b - a)
    const = (2 * a * b - b * b) / 2
    if const:
        out = out + v * const
    return out


# --- operator objects --------------------------------------------------

class GradedOperator:
    """A linear operator on Fock vectors with known degree/charge shifts.

    Shifts are doubled degree (int) and charge (int), or "mixed".
    """

    def __init__(self, action, degree_shift2, charge_shift, label):
        self.action = action
        self.degree_shift2 = degree_shift2
        self.charge_shift = charge_shift
        self.label = label

    def __call__(self, v):
        return self.action(v)

    def __repr__(self):
        return "GradedOperator(%s)" % self.label

    def __matmul__(self, other):
        def act(v):
            return self.action(other.action(v))
        return GradedOperator(act, _add_shift(self.degree_shift2, other.degree_shift2),
                              _add_shift(self.charge_shift, other.charge_shift),
                              "%s %s" % (self.label, other.label))

    def __sub__(self, other):
        def act(v):
            return self.action(v) - other.action(v)
        return GradedOperator(act, _same_shift(self.degree_shift2, other.degree_shift2),
                              _same_shift(self.charge_shift, other.charge_shift),
                              "(%s - %s)" % (self.label, other.label))

    def __add__(self, other):
        def act(v):
            return self.action(v) + other.action(v)
        return GradedOperator(act, _same_shift(self.degree_shift2, other.degree_shift2),
                              _same_shift(self.charge_shift, other.charge_shift),
                              "(%s + %s)" % (self.label, other.label))

    def scaled(self, c):
        return GradedOperator(lambda v: self.action(v) * c, self.degree_shift2,
                              self.charge_shift, "%s*%s" % (c, self.label))


def _add_shift(a, b):
    if a == "mixed" or b == "mixed":
        return "mixed"
    return a + b


def _same_shift(a, b):
    return a if a == b else "mixed"


def chi_op(n2):
    from .fock import apply_mode, index_class
    cs = -index_class(-n2) if n2 < 0 else -index_class(n2)
    return GradedOperator(lambda v: apply_mode(n2, v), -n2, cs,
                          "chi_%s" % format_half(n2))


def h_untwisted(n):
    return GradedOperator(lambda v: heis_untwisted(n, v), -4 * n, 0, "hZ_%d" % n)


def h_twisted(n2):
    return GradedOperator(lambda v: heis_twisted(n2, v), -2 * n2, "mixed",
                          "ht_%s" % format_half(n2))


def identity_op():
    return GradedOperator(lambda v: v, 0, 0, "1")


def L0_op():
    return GradedOperator(grade_L0, 0, 0, "L_0")


def Llambda_op(lam):
    return GradedOperator(lambda v: grade_Llambda(lam, v), 0, 0, "L^%s_0" % lam)


def charge_op():
    return GradedOperator(grade_charge, 0, 0, "hZ_0")


def Lt0_op():
    return GradedOperator(grade_Lt0, 0, "mixed", "L^t_0")


def Lh0_op(a=0, b=0):
    return GradedOperator(lambda v: grade_Lh0(v, a, b), 0, 0, "L^h_0")


def commutator(A, B):
    return (A @ B) - (B @ A)


class OperatorMatrix:
    """Matrix of an operator restricted to a finite monomial basis."""

    def __init__(self, columns, images, label=""):
        self.columns = columns
        self.images = images
        self.label = label

    def is_zero(self):
        return all(w.is_zero() for w in self.images)

    def scalar_value(self):
        """c if the matrix is c times the identity, otherwise None."""
        c = None
        for mono, w in zip(self.columns, self.images):
            if set(w.terms) - {mono}:
                return None
            x = w.coeff(mono)
            if c is None:
                c = x
            elif x != c:
                return None
        return 0 if c is None else c

    def equals_operator(self, fn):
        for mono, w in zip(self.columns, self.images):
            if w != fn(FockVector.basis(mono)):
                return False
        return True

    def entries(self):
        out = {}
        for mono, w in zip(self.columns, self.images):
            for row, c in w.terms.items():
                out[(row, mono)] = c
        return out

    def __repr__(self):
        return "OperatorMatrix(%s, %d columns)" % (self.label, len(self.columns))


def commutator_table(A, B, D2, out_degree2=None):
    """Matrix of AB - BA on all monomials of doubled degree <= D2.

    Outputs must stay within doubled degree ``out_degree2`` (default:
    D2 plus the known degree shift); anything beyond raises ProbeEscape.
    """
    C = commutator(A, B)
    if out_degree2 is None:
        shift = C.degree_shift2
        out_degree2 = D2 + (shift if isinstance(shift, int) and shift > 0 else 0)
    cols = monomials_up_to2(D2)
    images = []
    for mono in cols:
        w = C(FockVector.basis(mono))
        if w and w.max_degree2() > out_degree2:
            raise ProbeEscape("%s on %r left degree window %d/2"
                              % (C.label, mono, out_degree2))
        images.append(w)
    return OperatorMatrix(cols, images, C.label)


def is_twisted_hwv(v):
    top = v.max_degree2()
    return all(heis_twisted(n2, v).is_zero() for n2 in range(1, top // 2 + 1, 2))


def is_untwisted_hwv(v):
    top = v.max_degree2()
    return all(heis_untwisted(n, v).is_zero() for n in range(1, top // 4 + 1))


__all__ = [
    "ProbeEscape", "GradedOperator", "OperatorMatrix", "heis_untwisted", "heis_twisted",
    "grade_charge", "grade_L0", "grade_Llambda", "grade_Lt0", "grade_Lh0", "commutator",
    "commutator_table", "chi_op", "h_untwisted", "h_twisted", "L0_op", "Llambda_op",
    "charge_op", "Lt0_op", "Lh0_op", "identity_op", "is_twisted_hwv", "is_untwisted_hwv",
    "untwisted_mono", "twisted_mono", "llambda_eigenvalue", "LT0_SHIFT", "charge",
    "degree2", "monomial_key",
]
