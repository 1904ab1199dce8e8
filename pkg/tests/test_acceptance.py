"""Acceptance criteria, one test each.

Every criterion prints a single line "ACCEPTANCE <k> PASS|FAIL: <detail>"
in the pytest terminal summary (see conftest.py).  All comparisons are
exact rational arithmetic, so the only pinned tolerances are the time
budget of criterion 5 and the sizes of the probed ranges.

    python3 tests/test_acceptance.py     # prints the eight lines directly
"""

import random
import time
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from ckp.fock import FockVector, charge, degree2, mode_sign
from ckp.hirota import (beta_gamma_equivalence, central_charge_probe, exp_orbit_tau,
                        hirota_residual, hirota_square, no_solution_scan, random_generator,
                        symmetry_check)
from ckp.hwv import (TWISTED, UNTWISTED, H_beta, H_gamma, hwv_basis, hwv_from_bipartition)
from ckp.identities import ORDER, verify_all
from ckp.linalg import rank_rational
from ckp.operators import (Lh0_op, Lt0_op, chi_op, commutator_table, h_twisted, h_untwisted,
                           heis_twisted, heis_untwisted, is_twisted_hwv, is_untwisted_hwv)
from ckp.partitions import (enumerate_bpdi, hwv_count_via_crank, odp_of_weight2,
                            ptdo_of_weight2, weight_W2)

# pinned ranges and budgets
MODE_DEGREE2 = 12            # basis vectors of degree <= 6
HALF_ODD_MODES2 = [-5, -3, -1, 1, 3, 5]
INTEGER_MODES = [-2, -1, 0, 1, 2]
HWV_DEGREE2 = 13             # degree <= 13/2
BIPARTITION_W2 = 16          # W <= 8
IDENTITY_ORDER = 40          # u-order 40, q-order 20 (stability at 48)
IDENTITY_BUDGET_SECONDS = 300
SCAN_DEGREE2 = 12
SCAN_TRIALS = 100
SCAN_SEED = 0
SYMMETRY_DEGREE2 = 6
ORBIT_GENERATORS = 20
ORBIT_DEGREE2 = 12
CRANK_CHARGE = 13
PROBE_DEGREE2 = 8

RESULTS = {}

vac = FockVector.vacuum()
F = Fraction


def chi(*indices2):
    return FockVector.from_indices(indices2)


def record(k, ok, detail):
    RESULTS[k] = "ACCEPTANCE %d %s: %s" % (k, "PASS" if ok else "FAIL", detail)
    return ok


def _same_span(vectors, basis):
    def r(vs):
        monos = sorted({m for v in vs for m in v.terms})
        pos = {m: i for i, m in enumerate(monos)}
        return rank_rational([{pos[m]: c for m, c in v.terms.items()} for v in vs], len(monos))
    return r(vectors) == len(basis) == r(list(vectors) + list(basis))


# --- criteria --------------------------------------------------------

def criterion_1():
    D2 = MODE_DEGREE2
    bad = []
    checked = 0
    for m2, n2 in product(HALF_ODD_MODES2, repeat=2):
        t = commutator_table(chi_op(m2), chi_op(n2), D2, out_degree2=D2 + 10)
        want = mode_sign(m2) if m2 == -n2 else 0
        checked += 1
        if t.scalar_value() != want:
            bad.append(("chi", m2, n2))
        t = commutator_table(h_twisted(m2), h_twisted(n2), D2, out_degree2=D2 + 20)
        want = F(-m2, 2) if m2 == -n2 else 0
        checked += 1
        if t.scalar_value() != want:
            bad.append(("ht", m2, n2))
    for m, n in product(INTEGER_MODES, repeat=2):
        t = commutator_table(h_untwisted(m), h_untwisted(n), D2, out_degree2=D2 + 16)
        checked += 1
        if t.scalar_value() != (-m if m + n == 0 else 0):
            bad.append(("hZ", m, n))
    for n2 in HALF_ODD_MODES2:
        t = commutator_table(Lt0_op(), h_twisted(n2), D2, out_degree2=D2 + 10)
        checked += 1
        if not t.equals_operator(lambda v: heis_twisted(n2, v) * F(-n2, 2)):
            bad.append(("Lt0", n2))
    for n in INTEGER_MODES:
        t = commutator_table(Lh0_op(), h_untwisted(n), D2, out_degree2=D2 + 8)
        checked += 1
        if not t.equals_operator(lambda v: heis_untwisted(n, v) * -n):
            bad.append(("Lh0", n))
    return record(1, not bad, "%d bracket tables on degree <= 6, failures %r" % (checked, bad))


def criterion_2():
    bad = []
    for d2 in range(HWV_DEGREE2 + 1):
        u, t = len(hwv_basis(UNTWISTED, d2)), len(hwv_basis(TWISTED, d2))
        if u != len(ptdo_of_weight2(d2)) or t != len(odp_of_weight2(d2)):
            bad.append(d2)
    charges = sorted(hwv_basis(UNTWISTED, 13).charges, reverse=True)
    ok = not bad and charges == [13, 9, 5, 5, 1, 1, -3]
    return record(2, ok, "counts match P_tdo/ODP through degree 13/2 (bad %r); "
                         "charges at 13/2 = %r" % (bad, charges))


def criterion_3():
    untwisted = {
        0: [vac], 1: [chi(1)], 2: [chi(1, 1)], 3: [chi(1, 1, 1), chi(3)],
        4: [chi(1, 1, 1, 1)], 5: [chi(1, 1, 1, 1, 1), chi(3, 1, 1) + chi(5) * 2],
        6: [chi(1, 1, 1, 1, 1, 1), chi(3, 1, 1, 1) + chi(5, 1) * 3, chi(3, 3)],
    }
    twisted = {
        0: [vac], 1: [chi(1)], 2: [], 3: [chi(3) - chi(1, 1, 1) * F(1, 3)],
        4: [chi(3, 1) - chi(1, 1, 1, 1) * F(1, 6)],
        5: [chi(5) - chi(3, 1, 1) + chi(1, 1, 1, 1, 1) * F(1, 10)],
    }
    bad = []
    for d2, vs in untwisted.items():
        if not all(is_untwisted_hwv(v) for v in vs) or \
                not _same_span(vs, hwv_basis(UNTWISTED, d2).vectors):
            bad.append(("untwisted", d2))
    for d2, vs in twisted.items():
        basis = hwv_basis(TWISTED, d2).vectors
        if len(vs) != len(basis) or not all(is_twisted_hwv(v) for v in vs) or \
                (vs and not _same_span(vs, basis)):
            bad.append(("twisted", d2))
    return record(3, not bad, "%d untwisted and %d twisted table vectors, failures %r"
                  % (sum(map(len, untwisted.values())), sum(map(len, twisted.values())), bad))


def criterion_4():
    facts = {
        "H^b_(-1)|0>": H_beta(-1, vac) == chi(3),
        "H^b_(-2)|0>": H_beta(-2, vac) == chi(7) * 2 - chi(3, 3, 1),
        "H^b_(1)H^g_(-1)|0>": H_beta(1, H_gamma(-1, vac)) == vac,
        "H^b_(0)H^g_(-1)|0>": H_beta(0, H_gamma(-1, vac)).is_zero(),
        "v_4;0": hwv_from_bipartition([1], [1]) ==
        chi(3, 3, 1, 1) * F(-1, 2) + chi(7, 1) - chi(5, 3),
    }
    bad = [k for k, ok in facts.items() if not ok]
    bps = enumerate_bpdi(BIPARTITION_W2)
    for bp in bps:
        v = hwv_from_bipartition(bp.pi1, bp.pi2)
        if v.is_zero() or not is_untwisted_hwv(v) or \
                {charge(m) for m in v.terms} != {bp.birank} or \
                {degree2(m) for m in v.terms} != {weight_W2(bp)}:
            bad.append(str(bp))
    return record(4, not bad, "5 dressed facts and %d bipartitions with W <= 8, failures %r"
                  % (len(bps), bad))


def criterion_5():
    start = time.perf_counter()
    reports = verify_all(IDENTITY_ORDER)
    elapsed = time.perf_counter() - start
    bad = [(r.name, r.status, r.witness) for r in reports if not (r.passed and r.stable)]
    ok = not bad and len(reports) == 12 and elapsed <= IDENTITY_BUDGET_SECONDS
    return record(5, ok, "%d/%d identities pass at u-order %d and are stable at %d, "
                         "%.1fs (budget %ds), failures %r"
                  % (len(reports) - len(bad), len(ORDER), IDENTITY_ORDER, IDENTITY_ORDER + 8,
                     elapsed, IDENTITY_BUDGET_SECONDS, bad))


def criterion_6():
    parts = {}
    parts["vacuum"] = hirota_square(vac).is_zero()
    scan = no_solution_scan(SCAN_DEGREE2, SCAN_TRIALS, SCAN_SEED)
    parts["scan"] = scan.passed
    parts["symmetry"] = all(symmetry_check(a2, b2, SYMMETRY_DEGREE2)
                            for a2, b2 in product(HALF_ODD_MODES2, repeat=2))
    ok_bg, scalar = beta_gamma_equivalence(SYMMETRY_DEGREE2)
    parts["beta/gamma"] = ok_bg
    rng = random.Random(SCAN_SEED)
    nontrivial, orbit_ok = 0, True
    for _ in range(ORBIT_GENERATORS):
        g = random_generator(rng, max_index2=5)
        tau = exp_orbit_tau(g, ORBIT_DEGREE2)
        nontrivial += tau != vac
        orbit_ok &= hirota_residual(tau, ORBIT_DEGREE2).is_zero()
    parts["orbit"] = orbit_ok
    bad = [k for k, v in parts.items() if not v]
    return record(6, not bad, "scan checked %d vectors; symmetry on 36 pairs; beta/gamma "
                              "scalar %s; %d/%d orbit taus nontrivial; failures %r"
                  % (scan.checked, scalar, nontrivial, ORBIT_GENERATORS, bad))


def criterion_7():
    bad = []
    hwv_seen = 0
    for d2 in range(HWV_DEGREE2 + 1):
        charges = Counter(hwv_basis(UNTWISTED, d2).charges)
        for m in range(-CRANK_CHARGE, CRANK_CHARGE + 1):
            if hwv_count_via_crank(d2, m) != charges.get(m, 0):
                bad.append((d2, m))
        for c, n in charges.items():
            hwv_seen += n
            if (d2 - c) % 4:
                bad.append(("congruence", d2, c))
    return record(7, not bad, "crank counts on %d (degree, charge) cells, %d hwv congruent, "
                              "failures %r" % ((HWV_DEGREE2 + 1) * (2 * CRANK_CHARGE + 1),
                                              hwv_seen, bad))


def criterion_8():
    gens = [(i, j) for i in range(-1, 3) for j in range(-1, 3)]
    pairs = [(g, h) for g in gens for h in gens]
    results = central_charge_probe(pairs, PROBE_DEGREE2)
    good = all(r.passed and r.residual == r.cocycle * F(-1, 2) for r in results)
    central = sum(1 for r in results if r.cocycle)
    flipped = central_charge_probe(pairs, PROBE_DEGREE2, central=F(1, 2))
    mutation_fails = any(not r.passed for r in flipped)
    return record(8, good and mutation_fails and central > 0,
                  "%d pairs (%d with nonzero cocycle) give cocycle * (-1/2); "
                  "+1/2 mutation fails on %d" % (len(results), central,
                                                  sum(not r.passed for r in flipped)))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


@pytest.mark.parametrize("k", range(1, 9))
def test_acceptance(k):
    assert CRITERIA[k - 1](), RESULTS[k]


if __name__ == "__main__":
    for k, fn in enumerate(CRITERIA, 1):
        fn()
        print(RESULTS[k], flush=True)
