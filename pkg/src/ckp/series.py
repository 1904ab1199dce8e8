"""Truncated multivariate formal series with exact coefficients.

Every exponent is stored doubled, so q^(1/2) = u has exponent 1 in the
first slot and t^(1/2) has exponent 1 in its slot.  A series keeps the
terms whose valuation  sum_i w_i e_i / scale  is at most the order N.
With the default weights only the u-exponent counts.  Other weights
make variables that are not dominated by q (the Appendix's a, x, y)
finite at each order.  Optional boxes restrict auxiliary exponents.
"""

from fractions import Fraction
from math import lcm


class SeriesError(ValueError):
    pass


class Ring:
    """Shared truncation context: variable names, weights, order, boxes."""

    def __init__(self, names, order, weights=None, boxes=None):
        self.names = tuple(names)
        self.order = order
        ws = [Fraction(1)] + [Fraction(0)] * (len(names) - 1) if weights is None \
            else [Fraction(w) for w in weights]
        if len(ws) != len(self.names):
            raise SeriesError("one weight per variable")
        self.scale = lcm(*[w.denominator for w in ws])
        self.weights = tuple(int(w * self.scale) for w in ws)
        self.limit = order * self.scale
        self.boxes = {}
        for name, (lo, hi) in (boxes or {}).items():
            self.boxes[self.names.index(name)] = (lo, hi)

    def val(self, key):
        return sum(w * e for w, e in zip(self.weights, key))

    def valuation(self, key):
        return Fraction(self.val(key), self.scale)

    def keep(self, key):
        if self.val(key) > self.limit:
            return False
        for i, (lo, hi) in self.boxes.items():
            if not lo <= key[i] <= hi:
                return False
        return True

    def key(self, **exps):
        """Key from doubled exponents given by variable name."""
        k = [0] * len(self.names)
        for name, e in exps.items():
            k[self.names.index(name)] = e
        return tuple(k)

    def zero(self):
        return Series(self, {})

    def one(self):
        return Series(self, {(0,) * len(self.names): 1})

    def monomial(self, coeff=1, **exps):
        k = self.key(**exps)
        return Series(self, {k: coeff} if self.keep(k) else {})

    def binomial(self, coeff=1, **exps):
        """1 + coeff * monomial."""
        return self.one() + self.monomial(coeff, **exps)

    def with_order(self, order):
        boxes = {self.names[i]: b for i, b in self.boxes.items()}
        return Ring(self.names, order, [Fraction(w, self.scale) for w in self.weights], boxes)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Series:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {k: _norm(v) for k, v in terms.items() if v and ring.keep(k)}

    def _same(self, other):
        if other.ring is not self.ring and other.ring.names != self.ring.names:
            raise SeriesError("series over different variables")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Series(self.ring, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return Series(self.ring, {k: v * c for k, v in self.terms.items()})

    def shift(self, coeff=1, **exps):
        """Multiply by coeff * monomial."""
        d = self.ring.key(**exps)
        return Series(self.ring, {tuple(a + b for a, b in zip(k, d)): v * coeff
                                  for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        self._same(other)
        ring = self.ring
        limit = ring.limit
        b_items = sorted(((ring.val(k), k, v) for k, v in other.terms.items()))
        out = {}
        for ka, va in self.terms.items():
            room = limit - ring.val(ka)
            for vb, kb, cb in b_items:
                if vb > room:
                    break
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * cb
        return Series(ring, out)

    __rmul__ = __mul__

    def mul_binomial(self, key, coeff=1, power=1):
        """Multiply by (1 + coeff*x^key)^power, power in {1, -1}."""
        ring = self.ring
        if power == 1:
            out = dict(self.terms)
            for k, v in self.terms.items():
                kk = tuple(a + b for a, b in zip(k, key))
                out[kk] = out.get(kk, 0) + v * coeff
            return Series(ring, out)
        if power != -1:
            raise SeriesError("power must be +1 or -1")
        if ring.val(key) <= 0:
            raise SeriesError("cannot invert 1 + c*m with nonpositive valuation of m")
        # s/(1 + c m) = sum_j (-c m)^j s
        total = dict(self.terms)
        term = self
        while term.terms:
            term = term.shift_key(key, -coeff)
            for k, v in term.terms.items():
                total[k] = total.get(k, 0) + v
        return Series(ring, total)

    def shift_key(self, key, coeff=1):
        return Series(self.ring, {tuple(a + b for a, b in zip(k, key)): v * coeff
                                  for k, v in self.terms.items()})

    def constant(self):
        return self.terms.get((0,) * len(self.ring.names), 0)

    def inverse(self):
        """Inverse of a series c0 + (positive valuation terms), c0 != 0."""
        ring = self.ring
        c0 = self.constant()
        if not c0:
            raise SeriesError("series has no unit constant term")
        for k in self.terms:
            if any(k) and ring.val(k) <= 0:
                raise SeriesError("inverse needs positive valuation on nonconstant terms")
        x = self.scale(Fraction(1) / c0) - ring.one()
        result = ring.one()
        power = ring.one()
        while True:
            power = (power * x).scale(-1)
            if not power.terms:
                break
            result = result + power
        return result.scale(Fraction(1) / c0)

    def coefficient(self, **exps):
        return self.terms.get(self.ring.key(**exps), 0)

    def restrict(self, predicate):
        return Series(self.ring, {k: v for k, v in self.terms.items() if predicate(k)})

    def __eq__(self, other):
        return isinstance(other, Series) and self.terms == other.terms

    def sorted_items(self):
        ring = self.ring
        return sorted(self.terms.items(), key=lambda kv: (ring.val(kv[0]), kv[0]))

    def to_json(self):
        rows = []
        for k, v in self.sorted_items():
            f = Fraction(v)
            rows.append(list(k) + [f.numerator, f.denominator])
        return {"vars": list(self.ring.names), "doubled_exponents": True, "terms": rows}

    @classmethod
    def from_json(cls, data, ring=None):
        names = data["vars"]
        if ring is None:
            top = max((r[0] for r in data["terms"]), default=0)
            ring = Ring(names, top)
        terms = {}
        for row in data["terms"]:
            *k, num, den = row
            terms[tuple(k)] = Fraction(num, den)
        return cls(ring, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for k, v in self.sorted_items():
            mon = "*".join("%s^%s" % (n, _fmt(e)) for n, e in zip(self.ring.names, k) if e)
            out.append("%s%s" % (v, "*" + mon if mon else ""))
        return " + ".join(out)


def _fmt(e2):
    return str(e2 // 2) if e2 % 2 == 0 else "%d/2" % e2


def geometric_inverse(s):
    """1/s for s with unit constant term (alias of Series.inverse)."""
    return s.inverse()


def product_eval(ring, *families):
    """Product of binomial factors (key, coeff, power) = (1 + coeff*x^key)^power.

    Each family must list its factors in nondecreasing valuation; a family
    is abandoned at its first factor beyond the order, which bounds all
    the factors after it.
    """
    result = ring.one()
    for factors in families:
        last = None
        for key, coeff, power in factors:
            v = ring.val(key)
            if last is not None and v < last:
                raise SeriesError("product factors must have nondecreasing valuation")
            last = v
            if v > ring.limit:
                break
            if v <= 0:
                raise SeriesError("product factors need positive valuation")
            result = result.mul_binomial(key, coeff, power)
    return result


def sum_eval(ring, terms):
    """Sum of terms given as (valuation lower bound, thunk returning a Series).

    Bounds (in units of the order) must be strictly increasing; summation
    stops once a bound exceeds the order.
    """
    total = ring.zero()
    last = None
    for bound, thunk in terms:
        if last is not None and bound <= last:
            raise SeriesError("sum_eval needs strictly increasing valuation bounds")
        last = bound
        if bound > ring.order:
            break
        total = total + thunk()
    return total


def pochhammer_factors(ring, coeff, start_exps, step_exps):
    """Factors of (b; p)_inf = prod_i (1 - b p^i) with b = coeff*x^start, p = x^step."""
    k0 = ring.key(**start_exps)
    st = ring.key(**step_exps)
    i = 0
    while True:
        yield tuple(a + i * b for a, b in zip(k0, st)), -coeff, 1
        i += 1


def first_mismatch(lhs, rhs, predicate=None):
    """Smallest key (graded-lex by valuation) where the two series differ."""
    ring = lhs.ring
    keys = set(lhs.terms) | set(rhs.terms)
    if predicate is not None:
        keys = {k for k in keys if predicate(k)}
    bad = [k for k in keys if lhs.terms.get(k, 0) != rhs.terms.get(k, 0)]
    if not bad:
        return None
    k = min(bad, key=lambda k: (ring.val(k), k))
    return k, lhs.terms.get(k, 0), rhs.terms.get(k, 0)
