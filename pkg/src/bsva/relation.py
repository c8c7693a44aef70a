"""The circle relation of BS(n, m): one-step pairs y^m = z^n and what they generate.

Cocycle values are integers counted in units of ``log(n/|m|)``: a forward
step ``y -> z`` (``y^m = z^n``) carries weight +1, its reverse -1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional

from bsva import _kernels
from bsva.angles import RationalAngle, angle_add, angle_pow, format_rational, lambda_of, normalize, _make
from bsva.engine import Arc, OrbitGraph, PartialMap, Piece, classify_components, closure, default_max_nodes
from bsva.errors import BudgetExhausted, InvalidParams
from bsva.words import BsParams

__all__ = [
    "StepDirection",
    "EquivalenceWitness",
    "KernelEvidence",
    "TypeVerdict",
    "R0Branch",
    "r0_generators",
    "r0_partial_maps",
    "step_neighbors",
    "step_weight",
    "are_equivalent_def",
    "orbit",
    "image_evidence",
    "lambda_rotation_check",
    "RotationResult",
    "fiber_count_check",
    "classify_type",
    "distinguish",
    "param_warnings",
    "DEFAULT_WITNESS_BOUND",
    "DEFAULT_DEPTH",
    "DEFAULT_SAMPLES",
]

DEFAULT_WITNESS_BOUND = 8
DEFAULT_DEPTH = 4
DEFAULT_SAMPLES = 50
DEFAULT_KERNEL_DEPTH = 8


class StepDirection(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


def step_weight(direction: StepDirection) -> int:
    return 1 if direction is StepDirection.FORWARD else -1


def _angles(pairs):
    return [_make(p, q) for _, p, q in pairs]


def step_neighbors(params: BsParams, y: RationalAngle, direction: StepDirection) -> list:
    """Forward: the ``n`` points z with ``z^n = y^m``.  Backward: the ``|m|`` points z with ``z^m = y^n``."""
    if direction is StepDirection.FORWARD:
        return _angles(_kernels.forward_neighbors(params.n, params.m, y.p, y.q))
    return _angles(_kernels.backward_neighbors(params.n, params.m, y.p, y.q))


@dataclass(frozen=True)
class R0Branch:
    """Forward branch ``j``: ``theta -> (m*theta + j)/n`` on canonical angles.

    Each branch is a function on the circle; the union of all ``n`` branches is
    exactly the one-step relation, and the union of their preimages gives the
    backward neighbors.
    """

    params: BsParams
    j: int

    @property
    def name(self):
        return f"F{self.j}"

    @property
    def inverse_name(self):
        return f"B{self.j}"

    @property
    def weight(self):
        return 1

    def image(self, y: RationalAngle) -> RationalAngle:
        n, m = self.params.n, self.params.m
        return normalize(m * y.p + self.j * y.q, n * y.q)

    def preimages(self, y: RationalAngle) -> list:
        pairs = _kernels.backward_neighbors(self.params.n, self.params.m, y.p, y.q)
        return [_make(p, q) for j, p, q in pairs if j == self.j]


def r0_generators(params: BsParams) -> list:
    return [R0Branch(params, j) for j in range(params.n)]


def r0_partial_maps(params: BsParams) -> list:
    """The one-step relation as ``n*|m|`` injective partial maps.

    Branch ``j`` restricted to ``[i/|m|, (i+1)/|m|)`` has image length ``1/n``.
    """
    n, m = params.n, params.m
    am = abs(m)
    out = []
    for j in range(n):
        for i in range(am):
            arc = Arc(Fraction(i, am), Fraction(i + 1, am))
            out.append(((j, i), PartialMap((Piece(arc, Fraction(m, n), Fraction(j, n)),))))
    return out


@dataclass(frozen=True)
class EquivalenceWitness:
    """Exponents with ``y^(n^a m^b) == z^(m^a n^b)``."""

    a: int
    b: int


def are_equivalent_def(params: BsParams, y: RationalAngle, z: RationalAngle,
                       bound: int = DEFAULT_WITNESS_BOUND) -> Optional[EquivalenceWitness]:
    """Least witness in order ``(a + b, a)`` with ``0 <= a, b <= bound``.

    None only means no witness within the bound, not that y and z are
    inequivalent.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    n, m = params.n, params.m
    for total in range(2 * bound + 1):
        for ea in range(max(0, total - bound), min(bound, total) + 1):
            eb = total - ea
            if angle_pow(y, n ** ea * m ** eb) == angle_pow(z, m ** ea * n ** eb):
                return EquivalenceWitness(ea, eb)
    return None


def orbit(params: BsParams, y: RationalAngle, depth: int = DEFAULT_DEPTH,
          max_nodes: Optional[int] = None) -> OrbitGraph:
    """Orbit fragment of ``y`` within ``depth`` one-step moves."""
    params.require_admissible()
    return closure(y, r0_generators(params), depth, max_nodes=max_nodes)


def image_evidence(graph: OrbitGraph) -> Optional[int]:
    """gcd of all nonzero net path weights seen in the graph, or None if all are 0.

    Path weights between two nodes are potential differences plus multiples of
    cycle weights, so the gcd over potentials and cycle weights covers every
    path in the fragment.
    """
    if not graph.nodes:
        raise ValueError("empty graph")
    cls = classify_components(graph)
    d = 0
    for x in graph.nodes:
        d = gcd(d, abs(cls.potential[x]))
        d = gcd(d, cls.loop_weight_subgroup[x])
    return d or None


@dataclass
class RotationResult:
    """Outcome of a zero-weight path search.

    ``path`` lists ``(source, target, label, weight)`` edges from ``y`` to the
    target; ``found`` False only means nothing turned up within ``depth``.
    """

    found: bool
    target: RationalAngle
    path: list = field(default_factory=list)
    depth_used: Optional[int] = None
    nodes_explored: int = 0

    def __bool__(self):
        return self.found


def _skew_steps(params, node, skip_fixed):
    # (neighbor, label, weight) for the Maharam lift: level drops by the weight
    y, t = node
    n, m = params.n, params.m
    for j, p, q in _kernels.forward_neighbors(n, m, y.p, y.q):
        if not (skip_fixed and p == y.p and q == y.q):
            yield (_make(p, q), t - 1), f"F{j}", 1
    for j, p, q in _kernels.backward_neighbors(n, m, y.p, y.q):
        if not (skip_fixed and p == y.p and q == y.q):
            yield (_make(p, q), t + 1), f"B{j}", -1


def _invert_step(label, weight):
    return ("B" if label[0] == "F" else "F") + label[1:], -weight


def lambda_rotation_check(params: BsParams, k: int, y: RationalAngle,
                          depth: int = DEFAULT_KERNEL_DEPTH, s: int = 1,
                          max_nodes: Optional[int] = None, skip_fixed: bool = True) -> RotationResult:
    """Look for a net-weight-0 path from ``y`` to ``y + s/|nm|^k``.

    Bidirectional breadth-first search on the level-lifted graph: meeting at
    ``(x, 0)`` from ``(y, 0)`` and ``(target, 0)`` is a zero-weight path.
    With ``skip_fixed`` the search ignores self-steps at branch-fixed points,
    whose nonzero loop weight would otherwise shift levels for free.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    params.require_admissible()
    if max_nodes is None:
        max_nodes = default_max_nodes()
    target = angle_add(y, normalize(s, abs(params.n * params.m) ** k))
    start, goal = (y, 0), (target, 0)
    if start == goal:
        return RotationResult(True, target, [], 0, 1)
    # parent maps: node -> (previous node, label, weight) in search direction
    par_a = {start: None}
    par_b = {goal: None}
    front_a, front_b = [start], [goal]
    dist_a = dist_b = 0
    meet = None
    while dist_a + dist_b < depth and front_a and front_b:
        grow_a = len(front_a) <= len(front_b)
        front, par, other = (front_a, par_a, par_b) if grow_a else (front_b, par_b, par_a)
        nxt = []
        for node in front:
            for nb, label, w in _skew_steps(params, node, skip_fixed):
                if nb in par:
                    continue
                par[nb] = (node, label, w)
                nxt.append(nb)
                if nb in other and meet is None:
                    meet = nb
            if len(par_a) + len(par_b) > max_nodes:
                raise BudgetExhausted(f"node budget {max_nodes} exhausted in rotation search")
        if grow_a:
            front_a, dist_a = nxt, dist_a + 1
        else:
            front_b, dist_b = nxt, dist_b + 1
        if meet is not None:
            break
    explored = len(par_a) + len(par_b)
    if meet is None:
        return RotationResult(False, target, [], None, explored)
    path = []
    node = meet
    while par_a[node] is not None:
        prev, label, w = par_a[node]
        path.append((prev[0], node[0], label, w))
        node = prev
    path.reverse()
    node = meet
    while par_b[node] is not None:
        prev, label, w = par_b[node]
        # stored edge runs prev -> node; the path walks it backwards
        back_label, back_w = _invert_step(label, w)
        path.append((node[0], prev[0], back_label, back_w))
        node = prev
    return RotationResult(True, target, path, len(path), explored)


def fiber_count_check(params: BsParams, x: RationalAngle) -> tuple:
    """Count ``y`` with ``y^m = x``, ``z`` with ``z^n = x``, and pairs over ``x``.

    Every count is checked by solving the defining equation, not read off the
    parameters.
    """
    n, m = params.n, params.m
    ys = {normalize(x.p + j * x.q, m * x.q) for j in range(abs(m))}
    zs = {normalize(x.p + j * x.q, n * x.q) for j in range(abs(n))}
    ys = {v for v in ys if angle_pow(v, m) == x}
    zs = {v for v in zs if angle_pow(v, n) == x}
    # pairs of the one-step relation lying over x
    pairs = {(v, w) for v in ys for w in step_neighbors(params, v, StepDirection.FORWARD)
             if angle_pow(w, n) == x}
    return len(ys), len(zs), len(pairs)


def param_warnings(params: BsParams) -> list:
    out = []
    if not params.admissible:
        out.append(f"parameters outside the range 2 <= n < |m|: n={params.n}, m={params.m}")
    g = gcd(params.n, abs(params.m))
    if g > 1:
        out.append(f"n and |m| share the factor {g}; lambda is reported in lowest terms "
                   f"{format_rational(Fraction(params.n, abs(params.m)))}")
    return out


@dataclass
class KernelEvidence:
    k: int
    samples: int
    depth: int
    passed: int
    max_depth_used: Optional[int] = None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.samples


@dataclass
class TypeVerdict:
    n: int
    m: int
    lam: Fraction
    image_units: Optional[int]
    kernel: KernelEvidence
    verdict: str
    warnings: list = field(default_factory=list)
    partial: bool = False

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "lambda": format_rational(self.lam),
            "verdict": self.verdict,
            "image_units": self.image_units,
            "kernel": {
                "k": self.kernel.k,
                "samples": self.kernel.samples,
                "depth": self.kernel.depth,
                "passed": self.kernel.passed,
                "max_depth_used": self.kernel.max_depth_used,
            },
            "warnings": list(self.warnings),
            "partial": self.partial,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TypeVerdict":
        kern = obj["kernel"]
        return cls(
            n=obj["n"], m=obj["m"], lam=Fraction(obj["lambda"]),
            image_units=obj["image_units"],
            kernel=KernelEvidence(kern["k"], kern["samples"], kern["depth"], kern["passed"],
                                  kern.get("max_depth_used")),
            verdict=obj["verdict"], warnings=list(obj["warnings"]),
            partial=obj.get("partial", False),
        )


def kernel_sample_points(params: BsParams, samples: int, seed: int = 0) -> list:
    """Seeded base points whose denominators divide ``|nm|``."""
    rng = random.Random(seed)
    q = abs(params.n * params.m)
    return [normalize(rng.randrange(q), q) for _ in range(samples)]


def _check_one(args):
    params, k, y, depth = args
    return lambda_rotation_check(params, k, y, depth)


def classify_type(params: BsParams, samples: int = DEFAULT_SAMPLES, depth: int = DEFAULT_KERNEL_DEPTH,
                  seed: int = 0, k: int = 1, image_depth: int = 2, jobs: int = 1) -> TypeVerdict:
    """III_lambda when every step weight generates Z and sampled Lambda-rotations
    are zero-weight reachable; otherwise an inconclusive verdict carrying the evidence."""
    from bsva.maharam import taxonomy_rule

    if samples < 1:
        raise ValueError("samples must be >= 1")
    params.require_admissible()
    lam = lambda_of(params.n, params.m)
    warnings = param_warnings(params)
    image = image_evidence(orbit(params, normalize(1, 7 * abs(params.n * params.m)), image_depth))
    points = kernel_sample_points(params, samples, seed)
    tasks = [(params, k, y, depth) for y in points]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_check_one, tasks))
    else:
        results = [_check_one(t) for t in tasks]
    passed = sum(1 for r in results if r.found)
    used = [r.depth_used for r in results if r.found]
    failures = [str(r.target) for r in results if not r.found]
    kernel = KernelEvidence(k, samples, depth, passed, max(used) if used else None, failures)
    label = taxonomy_rule(image, kernel.ok)
    return TypeVerdict(params.n, params.m, lam, image, kernel, label, warnings)


@dataclass(frozen=True)
class Separation:
    lambda1: Fraction
    lambda2: Fraction

    @property
    def separated(self) -> bool:
        return self.lambda1 != self.lambda2

    def to_json(self) -> dict:
        return {
            "lambda1": format_rational(self.lambda1),
            "lambda2": format_rational(self.lambda2),
            "separated": self.separated,
        }


def distinguish(p1: BsParams, p2: BsParams) -> Separation:
    """Separated iff the ratios ``n/|m|`` differ, in which case the group von
    Neumann algebras are not stably isomorphic.  Not separated asserts nothing."""
    return Separation(lambda_of(p1.n, p1.m), lambda_of(p2.n, p2.m))
