"""Registry of character identities checked coefficient by coefficient.

Each identity is a list of checks ``(label, lhs, rhs, predicate)``.  The
comparison runs over every key the two truncated series retain; for the
identities whose auxiliary variables are q-dominated this is exact.  The
"appendix" chain lives in rings where a, x, y carry their own weights, and
it is additionally computed inside boxes of width window and compared
only on |exponent| <= window - APPENDIX_GUARD.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import characters as ch
from .hwv import hwv_charge_table
from .partitions import hwv_count_via_crank
from .series import Ring, Series, first_mismatch, product_eval, sum_eval

APPENDIX_GUARD = 8
STABILITY_STEP = 8
STABILITY_WINDOW_STEP = 4


class WindowTooSmall(ValueError):
    pass


@dataclass
class IdentityReport:
    name: str
    order: int
    windows: dict
    status: str
    witness: dict = None
    checks: list = field(default_factory=list)
    stable: bool = None

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        return {"identity": self.name, "order": self.order,
                "windows": {k: list(v) for k, v in sorted(self.windows.items())},
                "status": self.status, "stable": self.stable,
                "witness": self.witness,
                "checks": [{"label": l, "status": s} for l, s in self.checks]}


def _frac(x):
    f = Fraction(x)
    return [f.numerator, f.denominator]


# --- q-dominated identities ------------------------------------------------

def _dimension(N, windows):
    return [("dim_q F", ch.dim_fock_bruteforce(N), ch.dim_fock_product(N), None)]


def _fock_character(N, windows):
    return [("(q,z) character", ch.char_fock_bruteforce(N), ch.char_fock_product(N), None)]


def _qt_trace(N, windows):
    return [("q-t trace", ch.char_twisted_trace_direct(N), ch.char_twisted_trace_odp(N), None)]


def _triple(N, windows):
    direct = ch.char_triple_direct(N)
    return [("triple trace", direct, ch.char_triple_bpdi(N), None),
            ("triple at r=1", ch.char_triple_at_r1(direct), ch.char_fock_bruteforce(N), None)]


def _hwv_sum_product(N, windows):
    return [("hwv sum vs product", ch.char_hwv_direct(N), ch.char_hwv_sum_vs_product(N), None)]


def _fock_sum_product(N, windows):
    return [("fock sum vs product", ch.char_fock_bruteforce(N),
             ch.char_fock_sum_vs_product(N), None)]


def _identity_r(N, windows):
    ring = ch.ring_qz(N)
    return [("pair sum = product", ch.pair_sum(ring), ch.identity_r_rhs(N), None)]


def _three_characters(N, windows):
    direct = ch.char_hwv_direct(N)
    sides = [("bpdi", ch.char_hwv_bpdi(N)), ("product", ch.char_hwv_product(N)),
             ("sum vs product", ch.char_hwv_sum_vs_product(N))]
    out = [("direct = %s" % name, direct, s, None) for name, s in sides]
    out.append(("bpdi = product", sides[0][1], sides[1][1], None))
    out.append(("product = sum vs product", sides[1][1], sides[2][1], None))
    return out


def _crank(N, windows):
    ring = ch.ring_qz(N)
    subst = ch.crank_substituted_table(N)
    geometric = ring.one().mul_binomial(ring.key(q=1, z=2), -1, -1)
    hwv = ch.char_hwv_product(N)
    return [
        ("crank table = product", ch.char_crank_table(N), ch.char_crank_product(N), None),
        ("substituted table = product", subst, ch.crank_substituted_product(N), None),
        ("geometric * substituted = hwv product", geometric * subst, hwv, None),
        ("resummed = hwv product", ch.crank_resummed(N), hwv, None),
        ("resummed = bpdi", ch.crank_resummed(N), ch.char_hwv_bpdi(N), None),
        ("resummed = sum vs product", ch.crank_resummed(N), ch.char_hwv_sum_vs_product(N), None),
    ]


def _jacobi(N, windows):
    ring = ch.ring_q(N)
    quotient = product_eval(ring, ((ring.key(q=8 * i), -1, 1) for i in range(1, N + 2)),
                            ((ring.key(q=8 * i - 4), -1, -1) for i in range(1, N + 2)))
    tri = ch.triangular_sum(ring)
    return [("triangular sum = quotient", tri, quotient, None),
            ("triangular sum = product", tri, ch.jacobi_product(ring), None)]


def _crank_counts(N, windows):
    ring = ch.ring_qz(N)
    table = hwv_charge_table(N)
    lhs, rhs = {}, {}
    for d2 in range(N + 1):
        for m in range(-N, N + 1):
            lhs[(d2, 2 * m)] = hwv_count_via_crank(d2, m)
            rhs[(d2, 2 * m)] = table.get((d2, m), 0)
    return [("crank count = hwv count", Series(ring, lhs), Series(ring, rhs), None)]


# --- appendix chain --------------------------------------------------------

def _poch(ring, coeff, start, step, power=1):
    """Factors of (coeff x^start; x^step)_inf ** power, as binomials."""
    def gen():
        i = 0
        while True:
            yield tuple(a + i * b for a, b in zip(start, step)), -coeff, power
            i += 1
    return gen()


def _appendix_windows(N, windows):
    defaults = {"a": N + APPENDIX_GUARD, "x": 2 * N + APPENDIX_GUARD}
    w = dict(defaults)
    w.update(windows or {})
    for name, width in w.items():
        if width < APPENDIX_GUARD:
            raise WindowTooSmall("window %d for %s is below the guard %d"
                                 % (width, name, APPENDIX_GUARD))
    return w


def _appendix_rings(N, w):
    ha, hx = w["a"], w["x"]
    return {
        "A1": Ring(["q", "a", "x"], N, [1, 0, Fraction(1, 2)],
                   {"a": (-ha, ha), "x": (-hx, hx)}),
        "A2": Ring(["q", "a", "y"], N, [1, 0, Fraction(-1, 2)],
                   {"a": (-ha, ha), "y": (-hx, hx)}),
        "A3": Ring(["q", "a", "y"], N, [1, 0, -1],
                   {"a": (-ha, ha), "y": (-hx, hx)}),
        "A4": Ring(["q", "a", "z"], N, None, {"a": (-ha, ha)}),
    }


def _psi_specialized(ring, step, x_of_k, x_neg):
    """(1-a) sum_k x^k/(1 - a q^k) with q^k -> q^(step*k), split at k = 0.

    x_of_k(k) and x_neg(j) are the keys of x^k and x^-j (including any
    q-shift carried by x); the k < 0 part is rewritten as
    x^-j (-a^-1 q^j)/(1 - a^-1 q^j) so each term has positive valuation.
    """
    one_minus_a = ring.one().mul_binomial(ring.key(a=2), -1)

    def pos():
        for k in range(1, ring.limit + 2):
            key = x_of_k(k)
            yield ring.valuation(key), (
                lambda k=k, key=key: Series(ring, {key: 1}).mul_binomial(
                    ring.key(q=2 * step * k, a=2), -1, -1))

    def neg():
        for j in range(1, ring.limit + 2):
            key = tuple(u + v for u, v in zip(x_neg(j), ring.key(q=2 * step * j, a=-2)))
            yield ring.valuation(key), (
                lambda j=j, key=key: Series(ring, {key: -1}).mul_binomial(
                    ring.key(q=2 * step * j, a=-2), -1, -1))

    total = sum_eval(ring, pos()) + sum_eval(ring, neg())
    return ring.one() + one_minus_a * total


def _appendix_A1(ring):
    lhs = _psi_specialized(ring, 1, lambda k: ring.key(x=2 * k),
                           lambda j: ring.key(x=-2 * j))
    num = [_poch(ring, 1, ring.key(q=2), ring.key(q=2)),
           _poch(ring, 1, ring.key(q=2), ring.key(q=2)),
           _poch(ring, 1, ring.key(q=2, a=-2, x=-2), ring.key(q=2)),
           _poch(ring, 1, ring.key(a=2, x=2), ring.key(q=2))]
    den = [_poch(ring, 1, ring.key(q=2, a=2), ring.key(q=2), -1),
           _poch(ring, 1, ring.key(q=2, x=-2), ring.key(q=2), -1),
           _poch(ring, 1, ring.key(q=2, a=-2), ring.key(q=2), -1),
           _poch(ring, 1, ring.key(x=2), ring.key(q=2), -1)]
    return lhs, _product_of(ring, num + den)


def _product_of(ring, families):
    result = ring.one()
    for fam in families:
        result = result * product_eval(ring, fam)
    return result


def _appendix_A2(ring, step):
    """After x = q y (step 1) and then q -> q^2 (step 2)."""
    lhs = _psi_specialized(ring, step, lambda k: ring.key(q=2 * step * k, y=2 * k),
                           lambda j: ring.key(q=-2 * step * j, y=-2 * j))
    s = 2 * step
    fams = [_poch(ring, 1, ring.key(q=s), ring.key(q=s)),
            _poch(ring, 1, ring.key(q=s), ring.key(q=s)),
            _poch(ring, 1, ring.key(a=-2, y=-2), ring.key(q=s)),
            _poch(ring, 1, ring.key(q=s, a=2, y=2), ring.key(q=s)),
            _poch(ring, 1, ring.key(q=s, a=2), ring.key(q=s), -1),
            _poch(ring, 1, ring.key(y=-2), ring.key(q=s), -1),
            _poch(ring, 1, ring.key(q=s, a=-2), ring.key(q=s), -1),
            _poch(ring, 1, ring.key(q=s, y=2), ring.key(q=s), -1)]
    return lhs, _product_of(ring, fams)


def _appendix_A4(ring):
    """y = z q^(-3/2) in the q -> q^2 form."""
    lhs = _psi_specialized(ring, 2, lambda k: ring.key(q=k, z=2 * k),
                           lambda j: ring.key(q=-j, z=-2 * j))
    fams = [_poch(ring, 1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, 1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, 1, ring.key(q=3, a=-2, z=-2), ring.key(q=4)),
            _poch(ring, 1, ring.key(q=1, a=2, z=2), ring.key(q=4)),
            _poch(ring, 1, ring.key(q=4, a=2), ring.key(q=4), -1),
            _poch(ring, 1, ring.key(q=3, z=-2), ring.key(q=4), -1),
            _poch(ring, 1, ring.key(q=4, a=-2), ring.key(q=4), -1),
            _poch(ring, 1, ring.key(q=1, z=2), ring.key(q=4), -1)]
    return lhs, _product_of(ring, fams)


def _appendix_A5(N):
    """a = -z^-1 q^(3/2); both sides divided by 1/(1 + z^-1 q^(3/2))."""
    ring = ch.ring_qz(N)

    def first():
        for k in range(0, N + 2):
            yield k, (lambda k=k: ring.monomial(1, q=k, z=2 * k)
                      .mul_binomial(ring.key(q=4 * k + 3, z=-2), 1, -1))

    def second():
        for k in range(1, N + 2):
            yield 3 * k - 3, (lambda k=k: ring.monomial(1, q=3 * k - 3, z=-2 * k + 2)
                              .mul_binomial(ring.key(q=4 * k - 3, z=2), 1, -1))

    lhs = sum_eval(ring, first()) + sum_eval(ring, second())
    prefactor = ring.one().mul_binomial(ring.key(q=3, z=-2), 1, -1)
    # (-1; q^2) = 2 (-q^2; q^2) and the companion factor is (-q^2; q^2)
    fams = [_poch(ring, 1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, 1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, -1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, -1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, -1, ring.key(q=7, z=-2), ring.key(q=4), -1),
            _poch(ring, 1, ring.key(q=3, z=-2), ring.key(q=4), -1),
            _poch(ring, -1, ring.key(q=1, z=2), ring.key(q=4), -1),
            _poch(ring, 1, ring.key(q=1, z=2), ring.key(q=4), -1)]
    rhs = (prefactor * _product_of(ring, fams)).scale(2)
    return lhs, rhs


def _appendix_A6(N):
    ring = ch.ring_qz(N)
    fams = [_poch(ring, 1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, 1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, -1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, -1, ring.key(q=4), ring.key(q=4)),
            _poch(ring, -1, ring.key(q=3, z=-2), ring.key(q=4), -1),
            _poch(ring, 1, ring.key(q=3, z=-2), ring.key(q=4), -1),
            _poch(ring, 1, ring.key(q=1, z=2), ring.key(q=4), -1),
            _poch(ring, -1, ring.key(q=1, z=2), ring.key(q=4), -1)]
    return ch.pair_sum(ring), _product_of(ring, fams).scale(2)


def _inner(window):
    """Predicate: every auxiliary exponent within its window minus the guard."""
    def pred(key):
        return all(abs(key[i]) <= w - APPENDIX_GUARD for i, w in window)
    return pred


def _appendix(N, windows):
    w = _appendix_windows(N, windows)
    rings = _appendix_rings(N, w)
    box3 = _inner([(1, w["a"]), (2, w["x"])])
    box_a = _inner([(1, w["a"])])
    a1 = _appendix_A1(rings["A1"])
    a2 = _appendix_A2(rings["A2"], 1)
    a3 = _appendix_A2(rings["A3"], 2)
    a4 = _appendix_A4(rings["A4"])
    a5 = _appendix_A5(N)
    a6 = _appendix_A6(N)
    return [
        ("b = aq specialization", a1[0], a1[1], box3),
        ("x = q y", a2[0], a2[1], box3),
        ("q -> q^2", a3[0], a3[1], box3),
        ("y = z q^(-3/2)", a4[0], a4[1], box_a),
        ("a = -z^-1 q^(3/2)", a5[0], a5[1], None),
        ("simplified form", a6[0], a6[1], None),
        ("a-specialized sum = pair sum", a5[0], a6[0], None),
        ("a-specialized product = simplified product", a5[1], a6[1], None),
        ("simplified product = identity R product", a6[1], ch.identity_r_rhs(N), None),
    ]


REGISTRY = {
    "dimension": _dimension,
    "fockCharacter": _fock_character,
    "qtTrace": _qt_trace,
    "tripleCharacter": _triple,
    "hwvSumProduct": _hwv_sum_product,
    "fockSumProduct": _fock_sum_product,
    "identityR": _identity_r,
    "threeCharacters": _three_characters,
    "crank": _crank,
    "jacobiTriangular": _jacobi,
    "appendix": _appendix,
    "crankCounts": _crank_counts,
}

ORDER = list(REGISTRY)

_WINDOWED = {"appendix"}


def _aux_ranges(checks):
    ranges = {}
    for _, lhs, rhs, pred in checks:
        names = lhs.ring.names
        for s in (lhs, rhs):
            for k in s.terms:
                if pred is not None and not pred(k):
                    continue
                for name, e in zip(names[1:], k[1:]):
                    lo, hi = ranges.get(name, (e, e))
                    ranges[name] = (min(lo, e), max(hi, e))
    return ranges


def _run(name, N, windows):
    if name not in REGISTRY:
        raise KeyError("unknown identity %r" % (name,))
    if N < 0:
        raise ValueError("order must be nonnegative")
    checks = REGISTRY[name](N, windows)
    results, witness = [], None
    for label, lhs, rhs, pred in checks:
        miss = first_mismatch(lhs, rhs, pred)
        results.append((label, "pass" if miss is None else "fail"))
        if miss is not None and witness is None:
            key, l, r = miss
            witness = {"check": label, "vars": list(lhs.ring.names), "key": list(key),
                       "lhs": _frac(l), "rhs": _frac(r)}
    if name in _WINDOWED:
        used = {k: (-v, v) for k, v in _appendix_windows(N, windows).items()}
    else:
        used = _aux_ranges(checks)
    status = "pass" if witness is None else "fail"
    return IdentityReport(name, N, used, status, witness, results), checks


def verify_identity(name, N, windows=None, stability=True):
    """Check one registered identity at u-order N.

    With stability on, the identity is recomputed at N + 8 (Appendix
    windows widened by 4) and every coefficient compared at N must be
    unchanged.
    """
    report, checks = _run(name, N, windows)
    if not stability:
        return report
    wide = None
    if name in _WINDOWED:
        wide = {k: v + STABILITY_WINDOW_STEP
                for k, v in _appendix_windows(N, windows).items()}
    big_report, big_checks = _run(name, N + STABILITY_STEP, wide)
    stable = big_report.passed or not report.passed
    for (label, lhs, rhs, pred), (_, blhs, brhs, _) in zip(checks, big_checks):
        for small, big in ((lhs, blhs), (rhs, brhs)):
            for k in set(small.terms) | set(big.terms):
                if small.ring.val(k) > small.ring.limit:
                    continue
                if pred is not None and not pred(k):
                    continue
                if small.terms.get(k, 0) != big.terms.get(k, 0):
                    stable = False
                    break
    report.stable = stable
    if not stable and report.passed:
        report.status = "fail"
        report.witness = {"check": "stability", "order": N + STABILITY_STEP}
    return report


def verify_all(N, windows=None, stability=True):
    return [verify_identity(name, N, windows if name in _WINDOWED else None, stability)
            for name in ORDER]
