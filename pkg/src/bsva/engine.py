"""Equivalence relations generated by weighted partial maps of the circle.

A :class:`PartialMap` is a finite set of affine pieces ``theta -> u*theta + v
(mod 1)`` on rational arcs.  :func:`closure` explores the orbit of a point
under a family of generators and their inverses, recording integer cocycle
weights on the edges; :func:`classify_components` runs a weighted union-find
over the result to detect cycles of nonzero weight.
"""
from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Optional, Sequence

from bsva.angles import RationalAngle, normalize
from bsva.errors import BudgetExhausted, GluingConflict

__all__ = [
    "Arc",
    "Piece",
    "PartialMap",
    "Generator",
    "OrbitGraph",
    "WeightedClassification",
    "compose",
    "glue",
    "rotation",
    "closure",
    "classify_components",
    "default_max_nodes",
    "DEFAULT_MAX_EDGES",
]

DEFAULT_MAX_NODES = 100_000
DEFAULT_MAX_EDGES = 400_000


def default_max_nodes() -> int:
    value = os.environ.get("BSVA_MAX_NODES")
    return int(value) if value else DEFAULT_MAX_NODES


@dataclass(frozen=True)
class Arc:
    """Interval of [0, 1] with rational ends; ``[lo, hi)`` by default.

    Endpoint flags exist because pulling back a half-open arc through a
    decreasing map yields ``(lo, hi]``.
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))

    @property
    def empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    @property
    def length(self) -> Fraction:
        return max(self.hi - self.lo, Fraction(0))

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def intersect(self, other: "Arc") -> "Arc":
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Arc(lo, hi, lo_closed, hi_closed)

    def overlaps(self, other: "Arc") -> bool:
        return not self.intersect(other).empty

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


FULL = Arc(0, 1)


def _affine_arc(arc: Arc, u: Fraction, v: Fraction) -> Arc:
    # real image of arc under x -> u x + v (not reduced mod 1)
    a, b = u * arc.lo + v, u * arc.hi + v
    if u > 0:
        return Arc(a, b, arc.lo_closed, arc.hi_closed)
    return Arc(b, a, arc.hi_closed, arc.lo_closed)


def _mod1_arcs(arc: Arc) -> list:
    """Split a real interval of length <= 1 into arcs inside [0, 1)."""
    out = []
    if arc.empty:
        return out
    for k in range(math.floor(arc.lo), math.ceil(arc.hi) + 1):
        part = arc.intersect(Arc(k, k + 1))
        if not part.empty:
            out.append(Arc(part.lo - k, part.hi - k, part.lo_closed, part.hi_closed))
    return out


@dataclass(frozen=True)
class Piece:
    """``theta -> slope*theta + offset (mod 1)`` on ``arc``; injective since ``|slope| * len <= 1``."""

    arc: Arc
    slope: Fraction
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.slope == 0:
            raise ValueError("slope must be nonzero")
        if abs(self.slope) * self.arc.length > 1:
            raise ValueError(f"piece on {self.arc} with slope {self.slope} is not injective mod 1")

    @property
    def rn_factor(self) -> Fraction:
        return abs(self.slope)

    def image_arcs(self) -> list:
        return _mod1_arcs(_affine_arc(self.arc, self.slope, self.offset))

    def apply(self, x: Fraction) -> Optional[Fraction]:
        if not self.arc.contains(x):
            return None
        return (self.slope * x + self.offset) % 1

    def preimage(self, y: Fraction) -> Optional[Fraction]:
        img = _affine_arc(self.arc, self.slope, self.offset)
        for k in range(math.floor(img.lo - y), math.ceil(img.hi - y) + 1):
            x = (y + k - self.offset) / self.slope
            if self.arc.contains(x):
                return x
        return None


@dataclass(frozen=True)
class PartialMap:
    """Finite gluing of affine pieces with disjoint domains and disjoint images."""

    pieces: tuple = ()

    @classmethod
    def affine(cls, slope, offset, domain: Iterable[Arc] = (FULL,)) -> "PartialMap":
        return cls(tuple(Piece(arc, slope, offset) for arc in domain if not arc.empty))

    @property
    def slope(self) -> Optional[Fraction]:
        """The common slope, or None if pieces disagree (or there are none)."""
        slopes = {p.slope for p in self.pieces}
        return slopes.pop() if len(slopes) == 1 else None

    @property
    def offset(self) -> Optional[Fraction]:
        offsets = {p.offset for p in self.pieces}
        return offsets.pop() if len(offsets) == 1 else None

    @property
    def rn_factor(self) -> Optional[Fraction]:
        slope = self.slope
        return None if slope is None else abs(slope)

    @property
    def domain(self) -> list:
        return [p.arc for p in self.pieces]

    @property
    def empty(self) -> bool:
        return not self.pieces

    def piece_at(self, x) -> Optional[Piece]:
        for p in self.pieces:
            if p.arc.contains(x):
                return p
        return None

    def __call__(self, x):
        """Image of ``x`` (Fraction or RationalAngle) or None off the domain."""
        angle = isinstance(x, RationalAngle)
        xf = x.fraction if angle else Fraction(x)
        p = self.piece_at(xf)
        if p is None:
            return None
        y = p.apply(xf)
        return normalize(y.numerator, y.denominator) if angle else y

    def inverse_image(self, y):
        angle = isinstance(y, RationalAngle)
        yf = y.fraction if angle else Fraction(y)
        for p in self.pieces:
            x = p.preimage(yf)
            if x is not None:
                return normalize(x.numerator, x.denominator) if angle else x
        return None


def rotation(t) -> PartialMap:
    return PartialMap.affine(1, Fraction(t))


def compose(f: PartialMap, g: PartialMap) -> PartialMap:
    """The map ``x -> g(f(x))`` on ``{x in dom f : f(x) in dom g}``."""
    out = []
    for pf in f.pieces:
        real = _affine_arc(pf.arc, pf.slope, pf.offset)
        for pg in g.pieces:
            for k in range(math.floor(real.lo), math.ceil(real.hi) + 1):
                # f(x) - k lands in pg.arc
                target = Arc(pg.arc.lo + k, pg.arc.hi + k, pg.arc.lo_closed, pg.arc.hi_closed)
                pulled = _affine_arc(target, 1 / pf.slope, -pf.offset / pf.slope)
                dom = pf.arc.intersect(pulled)
                if dom.empty:
                    continue
                slope = pf.slope * pg.slope
                offset = pg.slope * (pf.offset - k) + pg.offset
                out.append(Piece(dom, slope, offset))
    out.sort(key=lambda p: (p.arc.lo, not p.arc.lo_closed))
    return PartialMap(tuple(out))


def glue(parts: Sequence[PartialMap]) -> PartialMap:
    """Union of partial maps whose domains, and whose images, are pairwise disjoint."""
    pieces = [p for part in parts for p in part.pieces]
    for i, p1 in enumerate(pieces):
        for p2 in pieces[i + 1:]:
            if p1.arc.overlaps(p2.arc):
                raise GluingConflict(f"domains overlap: {p1.arc} and {p2.arc}", p1.arc, p2.arc)
            for a1 in p1.image_arcs():
                for a2 in p2.image_arcs():
                    if a1.overlaps(a2):
                        raise GluingConflict(f"images overlap: {a1} and {a2}", a1, a2)
    pieces.sort(key=lambda p: (p.arc.lo, not p.arc.lo_closed))
    return PartialMap(tuple(pieces))


@dataclass(frozen=True)
class Generator:
    """A partial map with an integer cocycle weight, usable by :func:`closure`.

    Anything with ``name``, ``inverse_name``, ``weight``, ``image(x)`` and
    ``preimages(x)`` works as a generator; this class wraps a PartialMap.
    """

    map: PartialMap
    weight: int = 0
    name: str = "g"

    @property
    def inverse_name(self) -> str:
        return self.name + "~"

    def image(self, x):
        return self.map(x)

    def preimages(self, x):
        y = self.map.inverse_image(x)
        return [] if y is None else [y]


def _fmt_node(node) -> str:
    return str(node)


@dataclass
class OrbitGraph:
    """Explored fragment of one equivalence class.

    ``depth`` maps each node to its BFS distance from the root and ``parent``
    to the tree edge ``(parent, label, weight)`` that discovered it.
    """

    root: Hashable
    nodes: set = field(default_factory=set)
    edges: set = field(default_factory=set)
    depth: dict = field(default_factory=dict)
    parent: dict = field(default_factory=dict)

    def add_edge(self, src, tgt, label, weight, inverse_label):
        self.edges.add((src, tgt, label, weight))
        self.edges.add((tgt, src, inverse_label, -weight))

    def tree_path(self, node) -> list:
        """Edges ``(src, tgt, label, weight)`` from the root to ``node`` along the BFS tree."""
        path = []
        while node != self.root:
            prev, label, weight = self.parent[node]
            path.append((prev, node, label, weight))
            node = prev
        path.reverse()
        return path

    def to_text(self, fmt: Callable = _fmt_node) -> str:
        """Line format: ``node X`` lines then ``edge X Y label weight`` lines, sorted."""
        lines = [f"node {fmt(x)}" for x in sorted(self.nodes)]
        for s, t, label, w in sorted(self.edges, key=_edge_key):
            lines.append(f"edge {fmt(s)} {fmt(t)} {label} {w}")
        return "\n".join(lines) + "\n"


def _edge_key(edge):
    s, t, label, w = edge
    return (s, t, label, w)


def closure(seed, generators: Sequence, depth: int, max_nodes: Optional[int] = None,
            max_edges: int = DEFAULT_MAX_EDGES) -> OrbitGraph:
    """Breadth-first saturation of ``seed`` under the generators and their inverses.

    Forward application of a generator carries its weight, inverse application
    the negated weight.  Nodes only need to be hashable and orderable, so the
    same routine drives skew-product orbits.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if max_nodes is None:
        max_nodes = default_max_nodes()
    graph = OrbitGraph(root=seed, nodes={seed}, depth={seed: 0})
    frontier = [seed]
    for d in range(depth):
        nxt = []
        for x in frontier:
            for g in generators:
                y = g.image(x)
                steps = [] if y is None else [(y, g.name, g.weight, g.inverse_name)]
                steps += [(z, g.inverse_name, -g.weight, g.name) for z in g.preimages(x)]
                for y, label, w, inv in steps:
                    if y not in graph.depth:
                        if len(graph.nodes) >= max_nodes:
                            raise BudgetExhausted(f"node budget {max_nodes} exhausted", graph)
                        graph.nodes.add(y)
                        graph.depth[y] = d + 1
                        graph.parent[y] = (x, label, w)
                        nxt.append(y)
                    graph.add_edge(x, y, label, w, inv)
                    if len(graph.edges) > max_edges:
                        raise BudgetExhausted(f"edge budget {max_edges} exhausted", graph)
        frontier = nxt
    return graph


@dataclass
class WeightedClassification:
    """Components of a weighted graph and the cycle-weight subgroup of each.

    ``potential[x]`` is the net weight from the component representative to
    ``x``; ``loop_weight_subgroup[x]`` is the nonnegative generator ``d`` of the
    subgroup ``dZ`` spanned by cycle weights in x's component.
    """

    components: list
    potential: dict
    representative: dict
    loop_weight_subgroup: dict
    anomalous_nodes: set


class _WeightedUnionFind:
    def __init__(self):
        self.parent = {}
        self.offset = {}  # weight from parent to node
        self.size = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.offset[x] = 0
            self.size[x] = 1

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating offsets from the top of the path down
        acc = 0
        for y in reversed(path):
            acc += self.offset[y]
            self.offset[y] = acc
            self.parent[y] = root
        return root

    def potential(self, x):
        self.find(x)
        return self.offset[x]

    def union(self, x, y, w):
        """Record ``pot(y) - pot(x) = w``; return the cycle discrepancy or None."""
        rx, ry = self.find(x), self.find(y)
        px, py = self.offset[x], self.offset[y]
        if rx == ry:
            return px + w - py
        if self.size[rx] < self.size[ry]:
            # hang rx under ry: pot(rx) relative to ry
            self.parent[rx] = ry
            self.offset[rx] = py - w - px
            self.size[ry] += self.size[rx]
        else:
            self.parent[ry] = rx
            self.offset[ry] = px + w - py
            self.size[rx] += self.size[ry]
        return None


def classify_components(graph: OrbitGraph) -> WeightedClassification:
    """Union-find with potentials over all edges, in sorted order.

    Processing in a fixed order makes the whole result, anomalies included,
    independent of how the edge set was built.
    """
    uf = _WeightedUnionFind()
    for x in graph.nodes:
        uf.add(x)
    cycle_gcd: dict = {}
    anomalous = set()
    for s, t, _label, w in sorted(graph.edges, key=_edge_key):
        uf.add(s)
        uf.add(t)
        disc = uf.union(s, t, w)
        if disc:
            r = uf.find(s)
            cycle_gcd[r] = math.gcd(cycle_gcd.get(r, 0), abs(disc))
            anomalous.update((s, t))
    groups: dict = {}
    for x in uf.parent:
        groups.setdefault(uf.find(x), []).append(x)
    # cycle gcds were keyed by roots that may since have been merged away
    merged: dict = {}
    for r, d in cycle_gcd.items():
        root = uf.find(r)
        merged[root] = math.gcd(merged.get(root, 0), d)
    components = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    rep = {x: comp[0] for comp in components for x in comp}
    potential = {x: uf.potential(x) - uf.potential(rep[x]) for x in uf.parent}
    subgroup = {x: merged.get(uf.find(x), 0) for x in uf.parent}
    return WeightedClassification(components, potential, rep, subgroup, anomalous)
