"""Discrete Maharam extension: circle points paired with an integer level.

Levels count units of ``log(n/|m|)``.  A step ``y -> z`` of weight ``w`` lifts
to ``(y, t) -> (z, t - w)``, so ``t - s`` equals the cocycle of the pair.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from bsva.angles import RationalAngle
from bsva.engine import OrbitGraph, closure
from bsva.relation import DEFAULT_DEPTH, r0_generators
from bsva.words import BsParams

__all__ = [
    "SkewNode",
    "SkewLift",
    "skew_orbit",
    "project",
    "level_return_subgroup",
    "taxonomy_rule",
    "III_LAMBDA",
    "I_OR_II",
    "INCONCLUSIVE",
]

III_LAMBDA = "III_lambda"
I_OR_II = "I_or_II"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, order=True)
class SkewNode:
    base: RationalAngle
    level: int = 0

    def __str__(self):
        return f"{self.base}@{self.level}"


@dataclass(frozen=True)
class SkewLift:
    """A base generator acting on skew nodes."""

    gen: object

    @property
    def name(self):
        return self.gen.name

    @property
    def inverse_name(self):
        return self.gen.inverse_name

    @property
    def weight(self):
        return self.gen.weight

    def image(self, node: SkewNode):
        y = self.gen.image(node.base)
        return None if y is None else SkewNode(y, node.level - self.gen.weight)

    def preimages(self, node: SkewNode):
        return [SkewNode(z, node.level + self.gen.weight) for z in self.gen.preimages(node.base)]


def skew_orbit(params: BsParams, start: SkewNode, depth: int = DEFAULT_DEPTH,
               max_nodes: Optional[int] = None) -> OrbitGraph:
    params.require_admissible()
    lifts = [SkewLift(g) for g in r0_generators(params)]
    return closure(start, lifts, depth, max_nodes=max_nodes)


def project(graph: OrbitGraph) -> tuple:
    """Base nodes and base edges of a skew orbit."""
    nodes = {x.base for x in graph.nodes}
    edges = {(s.base, t.base, label, w) for s, t, label, w in graph.edges}
    return nodes, edges


def level_return_subgroup(params: BsParams, base: RationalAngle, depth: int = DEFAULT_DEPTH,
                          max_nodes: Optional[int] = None) -> int:
    """Generator ``d >= 0`` of the levels at which the skew orbit of ``(base, 0)``
    revisits ``base`` (0 when every return is at level 0)."""
    graph = skew_orbit(params, SkewNode(base, 0), depth, max_nodes)
    d = 0
    for x in graph.nodes:
        if x.base == base:
            d = gcd(d, abs(x.level))
    return d


def taxonomy_rule(image_units: Optional[int], kernel_ok: bool) -> str:
    """Type label from finite evidence.

    III_lambda needs the step weight to generate the image and the kernel to
    look ergodic.  No observed nonzero weight points to a measure-preserving
    relation.  III_0 and III_1 are never certified.
    """
    if image_units is None:
        return I_OR_II
    if image_units == 1 and kernel_ok:
        return III_LAMBDA
    return INCONCLUSIVE
