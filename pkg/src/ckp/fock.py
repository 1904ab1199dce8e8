"""Sparse exact arithmetic on the CKP Fock space.

Mode indices n in Z+1/2 are stored doubled (``n2 = 2n``, always odd).
A basis monomial is a tuple of ``(j2, mult)`` pairs with ``j2 > 0``
strictly increasing; it stands for prod chi_{-j}^mult |0>.  The empty
tuple is the vacuum.
"""

from fractions import Fraction
from functools import lru_cache

VACUUM = ()


class HalfOdd:
    """A number in Z+1/2, stored as its (odd) double."""

    __slots__ = ("twice_value",)

    def __init__(self, twice_value):
        if twice_value % 2 == 0:
            raise ValueError("twice_value must be odd, got %r" % (twice_value,))
        self.twice_value = twice_value

    @classmethod
    def parse(cls, text):
        return cls(parse_doubled(text))

    @property
    def value(self):
        return Fraction(self.twice_value, 2)

    def __eq__(self, other):
        return isinstance(other, HalfOdd) and other.twice_value == self.twice_value

    def __hash__(self):
        return hash(("HalfOdd", self.twice_value))

    def __repr__(self):
        return "HalfOdd(%s)" % format_half(self.twice_value)


def parse_doubled(text):
    """Parse "3/2", "1.5", "-7/2" or "4" into its doubled integer."""
    value = Fraction(str(text).strip())
    twice = value * 2
    if twice.denominator != 1:
        raise ValueError("%r is not a multiple of 1/2" % (text,))
    return int(twice)


def format_half(n2):
    if n2 % 2 == 0:
        return str(n2 // 2)
    return "%d/2" % n2


# --- monomials ---------------------------------------------------------

def degree2(mono):
    """Twice the degree (the 2L_0 eigenvalue doubled)."""
    return sum(j2 * m for j2, m in mono)


def degree(mono):
    return Fraction(degree2(mono), 2)


def index_class(j2):
    """+1 for indices = 1/2 mod 2, -1 for indices = 3/2 mod 2."""
    return 1 if j2 % 4 == 1 else -1


def charge(mono):
    return sum(index_class(j2) * m for j2, m in mono)


def mode_sign(n2):
    """(-1)^(n - 1/2) for n = n2/2."""
    return -1 if ((n2 - 1) // 2) % 2 else 1


def expand(mono):
    """Flat ascending list of doubled indices, with repetition."""
    out = []
    for j2, m in mono:
        out.extend([j2] * m)
    return out


def monomial_from_indices(indices2):
    """Build a monomial from positive doubled indices (any order)."""
    counts = {}
    for j2 in indices2:
        if j2 <= 0 or j2 % 2 == 0:
            raise ValueError("creation indices must be positive odd doubles")
        counts[j2] = counts.get(j2, 0) + 1
    return tuple(sorted(counts.items()))


def monomial_key(mono):
    return (degree2(mono), tuple(expand(mono)))


def multiplicity(mono, j2):
    for k, m in mono:
        if k == j2:
            return m
        if k > j2:
            break
    return 0


def _raise(mono, j2):
    out = []
    done = False
    for k, m in mono:
        if not done and k >= j2:
            if k == j2:
                out.append((k, m + 1))
                done = True
                continue
            out.append((j2, 1))
            done = True
        out.append((k, m))
    if not done:
        out.append((j2, 1))
    return tuple(out)


def _lower(mono, j2):
    out = []
    for k, m in mono:
        if k == j2:
            if m > 1:
                out.append((k, m - 1))
        else:
            out.append((k, m))
    return tuple(out)


def mode_on_monomial(n2, mono):
    """chi_n applied to a monomial: (monomial, integer coefficient) or None."""
    if n2 < 0:
        return _raise(mono, -n2), 1
    m = multiplicity(mono, n2)
    if m == 0:
        return None
    return _lower(mono, n2), m * mode_sign(n2)


def pair_on_monomial(a2, b2, mono):
    """:chi_a chi_b: applied to a monomial; annihilators act first."""
    if a2 > 0 and b2 < 0:
        a2, b2 = b2, a2
    first = mode_on_monomial(b2, mono)
    if first is None:
        return None
    second = mode_on_monomial(a2, first[0])
    if second is None:
        return None
    return second[0], first[1] * second[1]


def quadratic_terms(s2, kappa, mono):
    """Sum over ordered pairs a+b = s2/2 of kappa(a2, b2) :chi_a chi_b: on mono.

    Returns a dict monomial -> coefficient.  Only pairs that do not
    annihilate ``mono`` are visited, so the sum is finite.
    """
    out = {}

    def add(a2, b2):
        c = kappa(a2, b2)
        if not c:
            return
        r = pair_on_monomial(a2, b2, mono)
        if r is None:
            return
        key, coeff = r
        val = out.get(key, 0) + c * coeff
        if val:
            out[key] = val
        else:
            out.pop(key, None)

    if s2 < 0:
        for a2 in range(s2 + 1, 0, 2):
            add(a2, s2 - a2)
    for p2, _ in mono:
        c2 = s2 - p2
        if c2 < 0:
            # one creator c and one annihilator p, in both orders
            add(c2, p2)
            add(p2, c2)
        elif multiplicity(mono, c2):
            add(c2, p2)
    return out


@lru_cache(maxsize=None)
def monomials_of_degree2(d2):
    """All monomials of doubled degree d2 in deterministic order."""
    if d2 < 0:
        return ()
    result = []

    def rec(remaining, max_part, acc):
        if remaining == 0:
            result.append(monomial_from_indices(acc))
            return
        top = min(max_part, remaining)
        if top % 2 == 0:
            top -= 1
        for j2 in range(top, 0, -2):
            acc.append(j2)
            rec(remaining - j2, j2, acc)
            acc.pop()

    rec(d2, d2, [])
    result.sort(key=monomial_key)
    return tuple(result)


def monomials_of_degree(d):
    """Monomials of degree d (d a half-integer, given as Fraction/str/int)."""
    return list(monomials_of_degree2(parse_doubled(d)))


def monomials_up_to2(d2):
    out = []
    for k in range(d2 + 1):
        out.extend(monomials_of_degree2(k))
    return out


def format_monomial(mono):
    if not mono:
        return "|0>"
    parts = []
    for j2, m in sorted(mono, reverse=True):
        s = "chi_{-%s}" % format_half(j2)
        if m > 1:
            s += "^%d" % m
        parts.append(s)
    return "".join(parts) + "|0>"


# --- vectors -----------------------------------------------------------

def _clean(terms):
    return {k: v for k, v in terms.items() if v}


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class FockVector:
    """Finite linear combination of monomials with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = _clean(dict(terms or {}))

    @classmethod
    def vacuum(cls):
        return cls({VACUUM: 1})

    @classmethod
    def basis(cls, mono, coeff=1):
        return cls({mono: coeff})

    @classmethod
    def from_indices(cls, indices2, coeff=1):
        return cls({monomial_from_indices(indices2): coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0])))

    def coeff(self, mono):
        return self.terms.get(mono, 0)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return FockVector(out)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        if not scalar:
            return FockVector()
        return FockVector({k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_degree2(self):
        return max((degree2(m) for m in self.terms), default=0)

    def min_degree2(self):
        return min((degree2(m) for m in self.terms), default=0)

    def is_homogeneous(self):
        return len({degree2(m) for m in self.terms}) <= 1

    def charges(self):
        return sorted({charge(m) for m in self.terms})

    def by_charge(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(charge(m), {})[m] = c
        return {k: FockVector(v) for k, v in parts.items()}

    def by_degree2(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(degree2(m), {})[m] = c
        return {k: FockVector(v) for k, v in parts.items()}

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, c in self:
            c = _norm(c)
            if c == 1:
                out.append("+ " + format_monomial(mono))
            elif c == -1:
                out.append("- " + format_monomial(mono))
            else:
                sign = "-" if c < 0 else "+"
                out.append("%s %s*%s" % (sign, abs(c), format_monomial(mono)))
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[1:]


def linear_map(fn, v):
    """Extend a monomial-level map (mono -> dict) linearly to a vector."""
    out = {}
    for mono, c in v.terms.items():
        for k, x in fn(mono).items():
            out[k] = out.get(k, 0) + c * x
    return FockVector(out)


def apply_mode(n2, v):
    """chi_{n2/2} applied to v."""

    def one(mono):
        r = mode_on_monomial(n2, mono)
        return {} if r is None else {r[0]: r[1]}

    return linear_map(one, v)


def apply_normal_pair(m2, l2, v):
    """:chi_m chi_l: applied to v."""

    def one(mono):
        r = pair_on_monomial(m2, l2, mono)
        return {} if r is None else {r[0]: r[1]}

    return linear_map(one, v)


def apply_word(n2s, v):
    """chi_{n_1} ... chi_{n_k} v (rightmost applied first)."""
    for n2 in reversed(n2s):
        v = apply_mode(n2, v)
    return v


# --- tensor square ----------------------------------------------------

class TensorVector:
    """Finite combination of (monomial, monomial) pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = _clean(dict(terms or {}))

    @classmethod
    def tensor(cls, v, w):
        out = {}
        for a, x in v.terms.items():
            for b, y in w.terms.items():
                out[(a, b)] = x * y
        return cls(out)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TensorVector(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar):
        if not scalar:
            return TensorVector()
        return TensorVector({k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.terms == other.terms

    def swap(self):
        return TensorVector({(b, a): c for (a, b), c in self.terms.items()})

    def bidegrees2(self):
        return sorted({(degree2(a), degree2(b)) for a, b in self.terms})

    def component(self, d2_left, d2_right):
        return TensorVector({k: c for k, c in self.terms.items()
                             if degree2(k[0]) == d2_left and degree2(k[1]) == d2_right})

    def __iter__(self):
        return iter(sorted(self.terms.items(),
                           key=lambda kv: (monomial_key(kv[0][0]), monomial_key(kv[0][1]))))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*%s(x)%s" % (_norm(c), format_monomial(a), format_monomial(b))
                          for (a, b), c in self)


def tensor_apply(left_fn, right_fn, w):
    """(L (x) R) w for monomial-level maps (mono -> dict); None means identity."""
    out = {}
    for (a, b), c in w.terms.items():
        la = {a: 1} if left_fn is None else left_fn(a)
        if not la:
            continue
        rb = {b: 1} if right_fn is None else right_fn(b)
        for ka, xa in la.items():
            for kb, xb in rb.items():
                key = (ka, kb)
                out[key] = out.get(key, 0) + c * xa * xb
    return TensorVector(out)
