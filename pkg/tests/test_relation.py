import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import random_angle
from bsva.angles import ZERO, RationalAngle, angle_add, angle_pow, normalize
from bsva.errors import BudgetExhausted, InvalidParams
from bsva.relation import (
    EquivalenceWitness,
    StepDirection,
    TypeVerdict,
    are_equivalent_def,
    classify_type,
    distinguish,
    fiber_count_check,
    image_evidence,
    lambda_rotation_check,
    orbit,
    step_neighbors,
    step_weight,
)
from bsva.engine import Generator, closure, rotation
from bsva.words import BsParams

FWD, BWD = StepDirection.FORWARD, StepDirection.BACKWARD
P23 = BsParams(2, 3)
ADMISSIBLE = [(2, 3), (2, 5), (3, 4), (3, 5), (2, -3), (3, -4), (4, 6), (2, 7), (5, -6)]


def A(text):
    return RationalAngle.of(text)


def brute_solutions(y, k_z, k_y):
    """All z with z^k_z == y^k_y, by scanning every candidate with denominator |k_z| * q."""
    target = angle_pow(y, k_y)
    den = abs(k_z) * y.q
    return {normalize(p, den) for p in range(den) if angle_pow(normalize(p, den), k_z) == target}


def test_step_examples():
    assert set(step_neighbors(P23, ZERO, FWD)) == {A("0"), A("1/2")}
    assert set(step_neighbors(P23, ZERO, BWD)) == {A("0"), A("1/3"), A("2/3")}
    assert set(step_neighbors(P23, A("1/2"), FWD)) == {A("1/4"), A("3/4")} == brute_solutions(A("1/2"), 2, 3)


def test_step_weight():
    assert step_weight(FWD) == 1
    assert step_weight(BWD) == -1
    assert step_weight(FWD) + step_weight(BWD) == 0


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ADMISSIBLE), st.integers(0, 10**6), st.integers(1, 200))
def test_neighbors_against_brute_force(nm, p, q):
    n, m = nm
    P = BsParams(n, m)
    y = normalize(p, q)
    fwd = step_neighbors(P, y, FWD)
    bwd = step_neighbors(P, y, BWD)
    assert len(fwd) == len(set(fwd)) == n
    assert len(bwd) == len(set(bwd)) == abs(m)
    assert set(fwd) == brute_solutions(y, n, m)
    assert set(bwd) == brute_solutions(y, m, n)
    for z in fwd:
        assert y in step_neighbors(P, z, BWD)
    for z in bwd:
        assert y in step_neighbors(P, z, FWD)


def test_equivalence_examples():
    assert are_equivalent_def(P23, A("3/11"), A("3/11")) == EquivalenceWitness(0, 0)
    assert are_equivalent_def(P23, ZERO, A("1/2")) == EquivalenceWitness(0, 1)


def test_equivalence_obstruction():
    y, z = A("1/7"), A("1/5")
    assert are_equivalent_def(P23, y, z, 8) is None
    # exhaustive oracle with plain fractions over the same box
    for a in range(9):
        for b in range(9):
            lhs = (Fraction(1, 7) * 2**a * 3**b) % 1
            rhs = (Fraction(1, 5) * 3**a * 2**b) % 1
            assert lhs != rhs
    # and the modular reason: 5 * 2^a 3^b == 7 * 3^a 2^b (mod 35) would need 5 | 7 * 3^a 2^b
    assert all((7 * 3**a * 2**b) % 5 for a in range(30) for b in range(30))


def test_equivalence_least_witness_order():
    # (2,3): y = 1/4, z = 1/2. a+b = 1 fails? y^3 = 3/4, z^2 = 0; y^2 = 1/2, z^3 = 1/2 -> (1, 0)
    assert are_equivalent_def(P23, A("1/4"), A("1/2")) == EquivalenceWitness(1, 0)


def test_orbit_examples():
    g = orbit(P23, ZERO, 1)
    assert g.nodes == {A("0"), A("1/2"), A("1/3"), A("2/3")}
    assert all(w in (1, -1) for *_, w in g.edges)
    assert orbit(BsParams(3, 5), A("2/9"), 0).nodes == {A("2/9")}


def test_orbit_requires_admissible():
    with pytest.raises(InvalidParams):
        orbit(BsParams(3, 2), ZERO, 1)


def test_image_evidence_examples():
    P = BsParams(2, 3)
    g = orbit(P, A("1/5"), 1)
    assert image_evidence(g) == 1
    rot = closure(ZERO, [Generator(rotation(Fraction(1, 4)), 0, "r")], 4)
    assert image_evidence(rot) is None
    assert image_evidence(orbit(P, ZERO, 2)) == 1


def _replay(P, start, res):
    """Check a certificate path edge by edge against the defining equation."""
    cur = start
    total = 0
    for s, t, label, w in res.path:
        assert s == cur
        if w == 1:
            assert angle_pow(t, P.n) == angle_pow(s, P.m)
        else:
            assert w == -1 and angle_pow(s, P.n) == angle_pow(t, P.m)
        total += w
        cur = t
    assert cur == res.target
    return total


def test_rotation_trivial():
    res = lambda_rotation_check(P23, 1, A("2/5"), 3, s=0)
    assert res.found and res.path == [] and res.target == A("2/5")


def test_rotation_example():
    res = lambda_rotation_check(P23, 1, ZERO)
    assert res.found and res.target == A("1/6")
    assert _replay(P23, ZERO, res) == 0
    assert res.depth_used == 4


@pytest.mark.parametrize("nm", [(2, 3), (2, 5), (3, 4), (2, -3), (4, 6)])
def test_rotation_grid(nm):
    P = BsParams(*nm)
    q = abs(P.n * P.m)
    rng = random.Random(7)
    for _ in range(20):
        y = normalize(rng.randrange(q), q)
        res = lambda_rotation_check(P, 1, y, 8)
        assert res.found
        assert _replay(P, y, res) == 0
        assert res.target == angle_add(y, normalize(1, q))


def test_rotation_k2():
    P = BsParams(2, 3)
    res = lambda_rotation_check(P, 2, A("1/36"), 10)
    assert res.found and _replay(P, A("1/36"), res) == 0


def test_rotation_not_found_is_not_a_disproof():
    res = lambda_rotation_check(P23, 1, ZERO, 2)
    assert not res.found and res.depth_used is None


def test_rotation_budget():
    with pytest.raises(BudgetExhausted):
        lambda_rotation_check(BsParams(2, 5), 3, A("1/7"), 12, max_nodes=200)


@pytest.mark.parametrize("nm, x, expected", [
    ((2, 3), "0", (3, 2, 6)),
    ((2, 3), "1/2", (3, 2, 6)),
    ((2, 5), "3/7", (5, 2, 10)),
    ((2, -3), "1/5", (3, 2, 6)),
])
def test_fiber_counts(nm, x, expected):
    assert fiber_count_check(BsParams(*nm), A(x)) == expected


def test_fibers_brute_force():
    P = BsParams(2, 5)
    x = A("3/7")
    ys = brute_solutions(x, 5, 1)
    zs = brute_solutions(x, 2, 1)
    assert (len(ys), len(zs), len(ys) * len(zs)) == fiber_count_check(P, x)


@pytest.mark.parametrize("nm, lam", [((2, 3), "2/3"), ((2, -3), "2/3"), ((4, 6), "2/3"), ((3, 5), "3/5")])
def test_classify_type(nm, lam):
    v = classify_type(BsParams(*nm), samples=10)
    assert v.verdict == "III_lambda" and str(v.lam) == lam
    assert v.image_units == 1 and v.kernel.ok
    if nm == (4, 6):
        assert v.warnings
    else:
        assert not v.warnings


def test_classify_inconclusive_when_kernel_fails():
    v = classify_type(P23, samples=5, depth=1)
    assert v.verdict == "inconclusive" and v.kernel.passed == 0


def test_classify_parallel_matches_serial():
    a = classify_type(BsParams(2, 5), samples=8, seed=3)
    b = classify_type(BsParams(2, 5), samples=8, seed=3, jobs=2)
    assert a.to_json() == b.to_json()


def test_type_verdict_json_roundtrip():
    v = classify_type(BsParams(3, -4), samples=4)
    assert TypeVerdict.from_json(v.to_json()).to_json() == v.to_json()


def test_distinguish():
    assert distinguish(P23, BsParams(2, 5)).separated
    assert not distinguish(P23, P23).separated
    assert not distinguish(P23, BsParams(2, -3)).separated
    assert distinguish(P23, BsParams(2, 5)).to_json() == {"lambda1": "2/3", "lambda2": "2/5", "separated": True}
    with pytest.raises(InvalidParams):
        distinguish(P23, BsParams(3, 3))


@given(st.sampled_from(ADMISSIBLE), st.sampled_from(ADMISSIBLE))
def test_distinguish_symmetric(p, q):
    a, b = BsParams(*p), BsParams(*q)
    assert distinguish(a, b).separated == distinguish(b, a).separated
    assert not distinguish(a, a).separated
