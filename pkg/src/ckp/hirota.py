"""The Hirota operator S^C on the tensor square and the c_infinity action.

S^C = sum_n (-1)^(n-1/2) chi_n (x) chi_{-n}.  Modes and degrees are
doubled throughout: ``a2 = 2a`` for a mode index, ``D2 = 2D`` for a
degree bound.

Generators of c_infinity act by quadratics.  A generator of the
symplectic algebra with index pair (i, j),

    G_ij = (-1)^j E_ij - (-1)^i E_{1-j,1-i},

goes to -:chi_{1/2-i} chi_{j-1/2}:, and a general symmetric matrix X goes
to -1/2 sum x_pq (-1)^q :chi_{1/2-p} chi_{q-1/2}:.  The central element
goes to CENTRAL_CHARGE.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .fock import (FockVector, TensorVector, apply_normal_pair, degree2, mode_on_monomial,
                   mode_sign, monomials_of_degree2, monomials_up_to2)

CENTRAL_CHARGE = Fraction(-1, 2)


def _bump(d, k, v):
    x = d.get(k, 0) + v
    if x:
        d[k] = x
    else:
        d.pop(k, None)


# --- the Hirota operator ---------------------------------------------------

def _pair_term(out, c, n2, a, b):
    """Add c * chi_{n2/2} a (x) chi_{-n2/2} b."""
    left = mode_on_monomial(n2, a)
    if left is None:
        return
    right = mode_on_monomial(-n2, b)
    if right is None:
        return
    _bump(out, (left[0], right[0]), c * left[1] * right[1])


def hirota_apply(w):
    """S^C applied to a tensor vector.

    chi_n (x) chi_{-n} kills a (x) b unless n is a part of a (n > 0) or
    -n is a part of b (n < 0), so only those modes are visited.
    """
    out = {}
    for (a, b), c in w.terms.items():
        for j2, _ in a:
            _pair_term(out, c * mode_sign(j2), j2, a, b)
        for j2, _ in b:
            _pair_term(out, c * mode_sign(-j2), -j2, a, b)
    return TensorVector(out)


def hirota_square(v):
    return hirota_apply(TensorVector.tensor(v, v))


def hirota_residual(tau, D2):
    """Components of S^C(tau (x) tau) with d1 + d2 <= D2 (doubled).

    S^C has bidegree shift (-n, +n), so the (d1, d2) component only reads
    components of tau whose degrees add to d1 + d2.  A tau known exactly
    through degree D is therefore enough for every d1 + d2 <= D.
    """
    full = hirota_square(tau)
    return TensorVector({k: c for k, c in full.terms.items()
                         if degree2(k[0]) + degree2(k[1]) <= D2})


def _tensor_basis(D2):
    monos = monomials_up_to2(D2)
    return [(a, b) for a in monos for b in monos]


# --- no finite solutions ---------------------------------------------------

@dataclass
class ScanReport:
    max_degree2: int
    trials: int
    seed: int
    checked: int = 0
    failures: list = field(default_factory=list)
    vacuum_ok: bool = True

    @property
    def passed(self):
        return self.vacuum_ok and not self.failures

    def to_json(self):
        return {"max_degree2": self.max_degree2, "trials": self.trials, "seed": self.seed,
                "checked": self.checked, "vacuum_ok": self.vacuum_ok,
                "failures": [repr(v) for v in self.failures],
                "status": "pass" if self.passed else "fail"}


def small_rational(rng, height=9):
    num = 0
    while num == 0:
        num = rng.randint(-height, height)
    return Fraction(num, rng.randint(1, height))


def random_combination(rng, d2, extra=3, height=9):
    """Random rational combination of all degree-d2 monomials plus a few lower ones."""
    terms = {m: small_rational(rng, height) for m in monomials_of_degree2(d2)}
    lower = monomials_up_to2(d2 - 1) if d2 > 0 else []
    for _ in range(min(extra, len(lower))):
        terms[rng.choice(lower)] = small_rational(rng, height)
    return FockVector(terms)


def no_solution_scan(D2, trials, seed=0):
    """S^C(v (x) v) != 0 for every monomial and `trials` random vectors per degree."""
    rng = random.Random(seed)
    report = ScanReport(D2, trials, seed)
    report.vacuum_ok = hirota_square(FockVector.vacuum()).is_zero()
    for d2 in range(1, D2 + 1):
        candidates = [FockVector.basis(m) for m in monomials_of_degree2(d2)]
        candidates += [random_combination(rng, d2) for _ in range(trials)]
        for v in candidates:
            report.checked += 1
            if hirota_square(v).is_zero():
                report.failures.append(v)
    return report


# --- quadratic operators ---------------------------------------------------

class Quadratic:
    """sum c_{mn} :chi_m chi_n: over doubled index pairs, stored with m2 <= n2."""

    def __init__(self, coeffs=None):
        self.coeffs = {}
        for (m2, n2), c in (coeffs or {}).items():
            if m2 % 2 == 0 or n2 % 2 == 0:
                raise ValueError("mode indices must be half-odd (odd when doubled)")
            _bump(self.coeffs, (min(m2, n2), max(m2, n2)), Fraction(c))

    def __call__(self, v):
        out = FockVector()
        for (m2, n2), c in self.coeffs.items():
            out = out + apply_normal_pair(m2, n2, v) * c
        return out

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _bump(out, k, c)
        return Quadratic(out)

    def scaled(self, s):
        return Quadratic({k: c * s for k, c in self.coeffs.items()})

    def degree_shifts2(self):
        return {-(m2 + n2) for m2, n2 in self.coeffs}

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        return "Quadratic(%r)" % (self.coeffs,)


def E_pair(a2, b2):
    """E = -:chi_a chi_b:."""
    return Quadratic({(a2, b2): -1})


def on_tensor(q, w):
    """(q (x) 1 + 1 (x) q) w."""
    out = {}
    for (a, b), c in w.terms.items():
        for k, x in q(FockVector.basis(a)).terms.items():
            _bump(out, (k, b), c * x)
        for k, x in q(FockVector.basis(b)).terms.items():
            _bump(out, (a, k), c * x)
    return TensorVector(out)


def symmetry_check(a2, b2, D2, generator=None):
    """[E (x) 1 + 1 (x) E, S^C] = 0 on all tensor basis elements of bidegree <= (D, D).

    E defaults to -:chi_a chi_b:; pass ``generator`` to probe another quadratic.
    """
    q = E_pair(a2, b2) if generator is None else generator
    for a, b in _tensor_basis(D2):
        w = TensorVector({(a, b): 1})
        lhs = on_tensor(q, hirota_apply(w))
        rhs = hirota_apply(on_tensor(q, w))
        if lhs != rhs:
            return False
    return True


# --- c_infinity central charge ---------------------------------------------

class NonScalarResidual(ArithmeticError):
    pass


def generator_matrix(i, j):
    """G_ij = (-1)^j E_ij - (-1)^i E_{1-j,1-i} as a sparse matrix {(p, q): x}."""
    out = {}
    _bump(out, (i, j), (-1) ** (j % 2))
    _bump(out, (1 - j, 1 - i), -((-1) ** (i % 2)))
    return out


def matrix_bracket(X, Y):
    out = {}
    for (i, j), x in X.items():
        for (k, l), y in Y.items():
            if j == k:
                _bump(out, (i, l), x * y)
            if l == i:
                _bump(out, (k, j), -x * y)
    return out


def cocycle(X, Y):
    """C(X, Y) with C(E_ij, E_ji) = -C(E_ji, E_ij) = 1 for i <= 0, j >= 1."""
    total = 0
    for (i, j), x in X.items():
        for (k, l), y in Y.items():
            if k == j and l == i:
                if i <= 0 and j >= 1:
                    total += x * y
                elif j <= 0 and i >= 1:
                    total -= x * y
    return total


def rho(X):
    """Fock space operator of a symmetric matrix X."""
    coeffs = {}
    for (p, q), x in X.items():
        key = (1 - 2 * p, 2 * q - 1)
        key = (min(key), max(key))
        _bump(coeffs, key, Fraction(-x * (-1) ** (q % 2), 2))
    return Quadratic(coeffs)


def rho_generator(i, j):
    """-:chi_{1/2-i} chi_{j-1/2}:, the image of G_ij."""
    return E_pair(1 - 2 * i, 2 * j - 1)


@dataclass
class ProbeResult:
    pair: tuple
    residual: Fraction
    cocycle: int
    central: Fraction

    @property
    def passed(self):
        return self.residual == self.cocycle * self.central


def _commutator_on(A, B, v):
    return A(B(v)) - B(A(v))


def central_charge_probe(pairs, D2, central=CENTRAL_CHARGE):
    """Residual scalar of [rho G, rho G'] - rho([G, G']) for each pair of generators.

    ``pairs`` holds ((i, j), (k, l)) index pairs.  The prediction for the
    residual is cocycle(G, G') * central.
    """
    out = []
    for (i, j), (k, l) in pairs:
        X, Y = generator_matrix(i, j), generator_matrix(k, l)
        A, B = rho_generator(i, j), rho_generator(k, l)
        if rho(X).coeffs != A.coeffs or rho(Y).coeffs != B.coeffs:
            raise AssertionError("generator images disagree with the matrix map")
        predicted = rho(matrix_bracket(X, Y))
        value = None
        for mono in monomials_up_to2(D2):
            v = FockVector.basis(mono)
            res = _commutator_on(A, B, v) - predicted(v)
            if set(res.terms) - {mono}:
                raise NonScalarResidual("residual is not scalar on %r" % (mono,))
            x = res.coeff(mono)
            if value is None:
                value = x
            elif x != value:
                raise NonScalarResidual("residual varies across the basis")
        out.append(ProbeResult(((i, j), (k, l)), Fraction(value or 0),
                               cocycle(X, Y), Fraction(central)))
    return out


def wick_commutator(a2, b2, c2, d2):
    """[:chi_a chi_b:, :chi_c chi_d:] from the mode relations alone.

    Returns ({(m2, n2): coeff} for normal ordered quadratics, scalar).
    Uses [AB, CD] = [B,C] AD + [B,D] AC + [A,C] DB + [A,D] CB and
    XY = :XY: + [X, Y] when X annihilates and Y creates.
    """
    def br(x2, y2):
        return mode_sign(x2) if x2 == -y2 else 0

    quad, scalar = {}, 0
    for coef, x2, y2 in ((br(b2, c2), a2, d2), (br(b2, d2), a2, c2),
                         (br(a2, c2), d2, b2), (br(a2, d2), c2, b2)):
        if not coef:
            continue
        _bump(quad, (min(x2, y2), max(x2, y2)), coef)
        if x2 > 0 > y2:
            scalar += coef * br(x2, y2)
    return quad, scalar


# --- beta/gamma form of the Hirota equation ----------------------------------

def beta_mode2(k):
    """beta_k = chi_{2k+1/2} in chi(z) = gamma(z^2) + z beta(z^2)."""
    return 4 * k + 1


def gamma_mode2(k):
    return 4 * k + 3


def beta_gamma_apply(w):
    """Res_w (beta(w) (x) gamma(w) - gamma(w) (x) beta(w)) on a tensor vector."""
    out = {}
    for (a, b), c in w.terms.items():
        top = max([j2 for j2, _ in a] + [j2 for j2, _ in b] + [1])
        K = top // 4 + 2
        for k in range(-K, K + 1):
            # residue pairs modes k and -1-k
            _pair_term_general(out, c, beta_mode2(k), gamma_mode2(-1 - k), a, b)
            _pair_term_general(out, -c, gamma_mode2(k), beta_mode2(-1 - k), a, b)
    return TensorVector(out)


def _pair_term_general(out, c, l2, r2, a, b):
    left = mode_on_monomial(l2, a)
    if left is None:
        return
    right = mode_on_monomial(r2, b)
    if right is None:
        return
    _bump(out, (left[0], right[0]), c * left[1] * right[1])


def beta_gamma_equivalence(D2):
    """(passed, scalar): S^C = scalar * Res(beta (x) gamma - gamma (x) beta) on bidegree <= (D, D)."""
    scalar = None
    for a, b in _tensor_basis(D2):
        w = TensorVector({(a, b): 1})
        s, r = hirota_apply(w), beta_gamma_apply(w)
        if s.is_zero() and r.is_zero():
            continue
        if s.is_zero() or r.is_zero() or set(s.terms) != set(r.terms):
            return False, scalar
        k = next(iter(s.terms))
        ratio = Fraction(s.terms[k]) / r.terms[k]
        if r * ratio != s:
            return False, scalar
        if scalar is None:
            scalar = ratio
        elif ratio != scalar:
            return False, scalar
    return True, scalar


# --- exponential orbit ----------------------------------------------------

class NotDegreeFiltered(ValueError):
    pass


class QuadraticGenerator:
    """g = -sum c_{mn} :chi_m chi_n:, with every pair raising the degree (m + n < 0)."""

    def __init__(self, coeffs):
        self.coeffs = {k: Fraction(v) for k, v in coeffs.items() if v}
        for m2, n2 in self.coeffs:
            if m2 + n2 >= 0:
                raise NotDegreeFiltered(
                    "pair (%d/2, %d/2) does not raise the degree" % (m2, n2))
        self.op = Quadratic({k: -c for k, c in self.coeffs.items()})

    def min_shift2(self):
        return min((-(m2 + n2) for m2, n2 in self.coeffs), default=None)

    def max_shift2(self):
        return max((-(m2 + n2) for m2, n2 in self.coeffs), default=0)


def exp_orbit_tau(g, D2):
    """exp(g)|0>, truncated to doubled degree <= D2 (exact there)."""
    tau = FockVector.vacuum()
    term = FockVector.vacuum()
    k = 0
    while True:
        k += 1
        term = g.op(term) * Fraction(1, k)
        term = FockVector({m: c for m, c in term.terms.items() if degree2(m) <= D2})
        if term.is_zero():
            return tau
        tau = tau + term


def random_generator(rng, max_index2=7, terms=2, height=9):
    """Seeded generator with `terms` degree-raising pairs of |index| <= max_index2/2."""
    idx = list(range(-max_index2, max_index2 + 1, 2))
    coeffs = {}
    while len(coeffs) < terms:
        m2, n2 = rng.choice(idx), rng.choice(idx)
        if m2 + n2 < 0:
            coeffs[(min(m2, n2), max(m2, n2))] = small_rational(rng, height)
    return QuadraticGenerator(coeffs)
