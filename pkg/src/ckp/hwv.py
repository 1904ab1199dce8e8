"""Highest weight vectors for both Heisenberg algebras and the dressed fields.

Degrees are passed doubled (``d2 = 2*degree``).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .fock import (FockVector, apply_mode, charge, degree2, monomials_of_degree2,
                   monomial_key)
from .linalg import nullspace, rank, rank_rational
from .operators import (grade_charge, grade_Lh0, grade_Lt0, heis_twisted,
                        heis_untwisted, twisted_mono, untwisted_mono)

UNTWISTED = "untwisted"
TWISTED = "twisted"


class RankDeficiency(Exception):
    """Descendants of highest weight vectors failed to span a degree space."""


@dataclass
class HwvBasis:
    degree2: int
    algebra: str
    vectors: list
    charges: list = field(default_factory=list)

    @property
    def degree(self):
        return Fraction(self.degree2, 2)

    def __len__(self):
        return len(self.vectors)


def _check_algebra(algebra):
    if algebra not in (UNTWISTED, TWISTED):
        raise ValueError("algebra must be 'untwisted' or 'twisted', got %r" % (algebra,))


def positive_modes(algebra, d2):
    """Positive modes that can act nontrivially on doubled degree d2.

    Untwisted: integers n with 4n <= d2.  Twisted: doubled n2 with 2*n2 <= d2.
    """
    if algebra == UNTWISTED:
        return list(range(1, d2 // 4 + 1))
    return list(range(1, d2 // 2 + 1, 2))


def _mode_mono(algebra):
    return untwisted_mono if algebra == UNTWISTED else twisted_mono


def block_key(algebra, mono):
    """Block label: the charge for h^Z, a single block for h^t.

    h^Z_n preserves the charge.  h^t_n shifts it by 2 mod 4, but the charge
    of a monomial is already fixed mod 4 by its degree, so no finer split
    exists in the twisted case.
    """
    return charge(mono) if algebra == UNTWISTED else 0


def blocks(algebra, d2):
    out = {}
    for mono in monomials_of_degree2(d2):
        out.setdefault(block_key(algebra, mono), []).append(mono)
    return out


def _constraint_rows(algebra, d2, cols):
    act = _mode_mono(algebra)
    index = {}
    rows = []
    for j, mono in enumerate(cols):
        for n in positive_modes(algebra, d2):
            for target, c in act(n, mono).items():
                key = (n, target)
                i = index.get(key)
                if i is None:
                    i = index[key] = len(rows)
                    rows.append({})
                rows[i][j] = rows[i].get(j, 0) + c
    return rows


def hwv_basis(algebra, d2):
    """Kernel of all positive modes on the degree-d2/2 monomial space."""
    _check_algebra(algebra)
    if d2 < 0:
        raise ValueError("degree must be nonnegative")
    vectors, charges = [], []
    for key in sorted(blocks(algebra, d2)):
        cols = blocks(algebra, d2)[key]
        rows = _constraint_rows(algebra, d2, cols)
        for vec in nullspace(rows, len(cols)):
            v = FockVector({cols[j]: x for j, x in vec.items()})
            vectors.append(v)
            if algebra == UNTWISTED:
                charges.append(key)
    if algebra == TWISTED:
        vectors = _canonical_span(vectors, monomials_of_degree2(d2))
    return HwvBasis(d2, algebra, vectors, charges)


def _canonical_span(vectors, basis):
    """Reduced echelon basis of a span, coordinates in monomial order."""
    from .linalg import rref
    pos = {m: i for i, m in enumerate(basis)}
    rows = [{pos[m]: c for m, c in v.terms.items()} for v in vectors]
    reduced, _ = rref(rows, len(basis))
    return [FockVector({basis[j]: x for j, x in r.items()}) for r in reduced]


@lru_cache(maxsize=None)
def hwv_dimension(algebra, d2, block=None):
    """Dimension of the hwv space (optionally of one block) from a rank.

    Ranks are exact up to ``linalg.EXACT_RANK_LIMIT``; beyond it they are
    modular, which can only overstate the dimension.
    """
    _check_algebra(algebra)
    if d2 < 0:
        return 0
    bl = blocks(algebra, d2)
    keys = sorted(bl) if block is None else [block]
    total = 0
    for key in keys:
        cols = bl.get(key, [])
        if not cols:
            continue
        rows = _constraint_rows(algebra, d2, cols)
        total += len(cols) - rank(rows, len(cols))
    return total


def hwv_charge_table(D2):
    """{(d2, charge): number of untwisted hwv} for all doubled degrees <= D2."""
    out = {}
    for d2 in range(D2 + 1):
        for c in blocks(UNTWISTED, d2):
            n = hwv_dimension(UNTWISTED, d2, c)
            if n:
                out[(d2, c)] = n
    return out


# --- dressed fields ----------------------------------------------------

@dataclass(frozen=True)
class DressedOperator:
    """kind 'beta'/'gamma' with integer mode, or 'chi' with doubled half-odd mode."""
    kind: str
    mode: int

    def __call__(self, v):
        return dressed_mode(self, v)


def split_index(n2):
    """Place chi_n in chi(z) = gamma(z^2) + z beta(z^2).

    Returns (family, w-exponent) where w = z^2.
    """
    p = -(n2 + 1) // 2  # chi_n z^(-n-1/2)
    if p % 2 == 0:
        return "gamma", p // 2
    return "beta", (p - 1) // 2


def _family_exponent(kind, n2):
    if kind == "chi":
        return -(n2 + 1) // 2
    fam, e = split_index(n2)
    return e if fam == kind else None


def _add_into(store, e, v):
    if not v:
        return
    cur = store.get(e)
    store[e] = v if cur is None else cur + v
    if not store[e]:
        del store[e]


def _mode_table(kind, lowering, degree_top=None):
    """List of (mode, exponent step, coefficient) for the exponent of V."""
    out = []
    if kind == "chi":
        top = degree_top if degree_top is not None else 0
        for n2 in range(1, max(top, 1) + 1, 2):
            out.append((n2 if lowering else -n2, -n2 if lowering else n2, Fraction(2, n2)))
    else:
        top = degree_top if degree_top is not None else 0
        for n in range(1, max(top, 1) + 1):
            out.append((n if lowering else -n, -n if lowering else n, Fraction(1, n)))
    return out


def _heis(kind, mode, v):
    return heis_twisted(mode, v) if kind == "chi" else heis_untwisted(mode, v)


def _exp_lowering(kind, sign, v):
    """exp(sign * sum c_n h_n s^-step) v, as {exponent: vector}; finite."""
    result = {0: v}
    term = {0: v}
    j = 0
    while term:
        j += 1
        new = {}
        for e, u in term.items():
            top = u.max_degree2()
            bound = top // 2 if kind == "chi" else top // 4
            for mode, step, c in _mode_table(kind, True, bound):
                w = _heis(kind, mode, u)
                if w:
                    _add_into(new, e + step, w * (c * sign / j))
        term = new
        for e, u in term.items():
            _add_into(result, e, u)
    return result


def _exp_raising_at(kind, sign, store, target):
    """Coefficient of s^target in exp(sign * sum c_n h_{-n} s^n) applied to store."""
    out = FockVector()
    term = {e: u for e, u in store.items() if e <= target}
    j = 0
    while term:
        if target in term:
            out = out + term[target]
        j += 1
        new = {}
        for e, u in term.items():
            room = target - e
            if room <= 0:
                continue
            for mode, step, c in _mode_table(kind, False, room):
                if step > room:
                    continue
                w = _heis(kind, mode, u)
                if w:
                    _add_into(new, e + step, w * (c * sign / j))
        term = new
    return out


def _field_modes(kind, store, target):
    """Apply the bare field (beta, gamma or chi) keeping exponents <= target."""
    out = {}
    for e, u in store.items():
        indices = set()
        for mono in u.terms:
            indices.update(j2 for j2, _ in mono)
        for n2 in sorted(indices):
            ex = _family_exponent(kind, n2)
            if ex is not None and e + ex <= target:
                _add_into(out, e + ex, apply_mode(n2, u))
        n2 = -1
        while True:
            ex = _family_exponent(kind, n2)
            if ex is None:
                n2 -= 2
                continue
            if e + ex > target:
                break
            _add_into(out, e + ex, apply_mode(n2, u))
            n2 -= 2
    return out


def _charge_shift(store, sign):
    out = {}
    for e, u in store.items():
        for c, part in u.by_charge().items():
            _add_into(out, e + sign * c, part)
    return out


def dressed_mode(op, v):
    """Coefficient extraction for H^beta_(k), H^gamma_(k) and H^chi_(n).

    H^beta(w)  = V+(w)^-1 beta(w) w^(-h_0) V-(w)^-1,  modes at w^(-k-1)
    H^gamma(w) = V+(w) gamma(w) w^(h_0) V-(w),        modes at w^(-k-1)
    H^chi(z)   = Vt+(z)^-1 chi(z) Vt-(z)^-1,          modes at z^(-n-1/2)
    """
    kind = op.kind
    if kind == "beta":
        target = -op.mode - 1
        store = _exp_lowering(kind, 1, v)
        store = _charge_shift(store, -1)
        store = _field_modes(kind, store, target)
        return _exp_raising_at(kind, -1, store, target)
    if kind == "gamma":
        target = -op.mode - 1
        store = _exp_lowering(kind, -1, v)
        store = _charge_shift(store, 1)
        store = _field_modes(kind, store, target)
        return _exp_raising_at(kind, 1, store, target)
    if kind == "chi":
        if op.mode % 2 == 0:
            raise ValueError("H^chi modes are half-odd (pass doubled odd integers)")
        target = -(op.mode + 1) // 2
        store = _exp_lowering(kind, 1, v)
        store = _field_modes(kind, store, target)
        return _exp_raising_at(kind, -1, store, target)
    raise ValueError("unknown dressed field %r" % (kind,))


def H_beta(k, v):
    return dressed_mode(DressedOperator("beta", k), v)


def H_gamma(k, v):
    return dressed_mode(DressedOperator("gamma", k), v)


def H_chi(n2, v):
    return dressed_mode(DressedOperator("chi", n2), v)


def _check_distinct(parts, name):
    parts = list(parts)
    if any(not isinstance(p, int) or p <= 0 for p in parts):
        raise ValueError("%s must contain positive integers" % name)
    if len(set(parts)) != len(parts):
        raise ValueError("%s must have distinct parts" % name)
    return sorted(parts)


def hwv_from_bipartition(pi1, pi2):
    """H^beta_(-m_k)..H^beta_(-m_1) H^gamma_(-n_s)..H^gamma_(-n_1)|0>, smallest first."""
    p1 = _check_distinct(pi1, "pi1")
    p2 = _check_distinct(pi2, "pi2")
    v = FockVector.vacuum()
    for n in p2:
        v = H_gamma(-n, v)
    for m in p1:
        v = H_beta(-m, v)
    return v


# --- eigenbases --------------------------------------------------------

def _multisets(total, parts, max_part=None):
    """Multisets (non-increasing tuples) from `parts` summing to total."""
    if total == 0:
        yield ()
        return
    for p in sorted(parts, reverse=True):
        if max_part is not None and p > max_part:
            continue
        if p <= total:
            for rest in _multisets(total - p, parts, p):
                yield (p,) + rest


def eigenbasis(algebra, d2, check=True):
    """Descendants h_{-n_s}..h_{-n_1} v of all hwv v, spanning degree d2/2.

    Records are (d2, L^t_0) for twisted and (d2, charge, L^h_0) for
    untwisted.  With ``check`` the eigenvalue equations are verified.
    """
    _check_algebra(algebra)
    out = []
    for d0 in range(d2 + 1):
        gap = d2 - d0
        if algebra == TWISTED:
            modes = list(range(1, gap // 2 + 1, 2))  # raise doubled degree by 2*n2
            labels = [m for m in _multisets(gap, [2 * n2 for n2 in modes])]
        else:
            modes = list(range(1, gap // 4 + 1))
            labels = [m for m in _multisets(gap, [4 * n for n in modes])]
        if not labels:
            continue
        hb = hwv_basis(algebra, d0)
        for idx, v in enumerate(hb.vectors):
            for lab in labels:
                w = v
                if algebra == TWISTED:
                    for step in reversed(lab):
                        w = heis_twisted(-(step // 2), w)
                    rec = (d2, Fraction(sum(lab), 4))
                else:
                    for step in reversed(lab):
                        w = heis_untwisted(-(step // 4), w)
                    c = hb.charges[idx]
                    rec = (d2, c, Fraction(-c * c, 2) + Fraction(sum(lab), 4))
                out.append((w, rec))
    basis = monomials_of_degree2(d2)
    pos = {m: i for i, m in enumerate(basis)}
    rank = rank_rational([{pos[m]: c for m, c in w.terms.items()} for w, _ in out], len(basis))
    if rank != len(basis) or len(out) != len(basis):
        raise RankDeficiency("degree %d/2: %d descendants of rank %d for %d monomials"
                             % (d2, len(out), rank, len(basis)))
    if check:
        for w, rec in out:
            if degree2(next(iter(w.terms))) != d2 or not w.is_homogeneous():
                raise AssertionError("descendant not homogeneous of degree %d/2" % d2)
            if algebra == TWISTED:
                if grade_Lt0(w) != w * rec[1]:
                    raise AssertionError("L^t_0 eigenvalue mismatch")
            else:
                if grade_charge(w) != w * rec[1] or grade_Lh0(w) != w * rec[2]:
                    raise AssertionError("charge/L^h_0 eigenvalue mismatch")
    return out


def is_hwv(algebra, v):
    from .operators import is_twisted_hwv, is_untwisted_hwv
    return is_twisted_hwv(v) if algebra == TWISTED else is_untwisted_hwv(v)


__all__ = [
    "UNTWISTED", "TWISTED", "HwvBasis", "RankDeficiency", "hwv_basis", "hwv_dimension",
    "hwv_charge_table", "DressedOperator", "dressed_mode", "H_beta", "H_gamma", "H_chi",
    "hwv_from_bipartition", "eigenbasis", "is_hwv", "split_index", "blocks",
    "positive_modes", "monomial_key",
]
