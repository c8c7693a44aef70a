import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsva.angles import ZERO, RationalAngle, normalize
from bsva.engine import (
    Arc,
    Generator,
    OrbitGraph,
    PartialMap,
    Piece,
    classify_components,
    closure,
    compose,
    glue,
    rotation,
)
from bsva.errors import BudgetExhausted, GluingConflict
from bsva.relation import r0_generators, r0_partial_maps
from bsva.words import BsParams


def grid(q):
    return [F(p, q) for p in range(q)]


def pointwise(f, g):
    """Oracle for compose: apply f, then g, point by point."""
    def h(x):
        y = f(x)
        return None if y is None else g(y)
    return h


def test_rotation_compose():
    h = compose(rotation(F(1, 4)), rotation(F(1, 4)))
    assert h.slope == 1 and h.rn_factor == 1
    for x in grid(24):
        assert h(x) == (x + F(1, 2)) % 1


def test_inverse_branches_compose_to_identity():
    f = PartialMap.affine(F(3, 2), 0, [Arc(0, F(2, 3))])
    g = PartialMap.affine(F(2, 3), 0)
    h = compose(f, g)
    assert h.slope == 1 and h.rn_factor == 1
    for x in grid(30):
        assert h(x) == (x if x < F(2, 3) else None)


def test_compose_example():
    f = PartialMap.affine(F(3, 2), 0, [Arc(0, F(1, 3))])
    g = rotation(F(1, 2))
    h = compose(f, g)
    assert h.slope == F(3, 2) and h.offset == F(1, 2) and h.rn_factor == F(3, 2)
    assert h.domain == [Arc(0, F(1, 3))]
    for x in grid(36):
        expected = (F(3, 2) * x + F(1, 2)) % 1 if x < F(1, 3) else None
        assert h(x) == expected == pointwise(f, g)(x)


def test_compose_negative_slope_open_end():
    f = PartialMap.affine(-1, 0, [Arc(0, 1)])  # x -> -x
    g = PartialMap.affine(1, 0, [Arc(0, F(1, 2))])
    h = compose(f, g)
    for x in grid(40):
        assert h(x) == pointwise(f, g)(x)
    # preimage of [0, 1/2) under x -> -x mod 1 is {0} and (1/2, 1)
    assert h(F(1, 2)) is None and h(F(0)) == 0


def test_glue_examples():
    one = PartialMap.affine(F(3, 2), 0, [Arc(0, F(1, 3))])
    assert glue([one]) == one
    half = glue([PartialMap.affine(1, F(1, 2), [Arc(0, F(1, 2))]),
                 PartialMap.affine(1, F(1, 2), [Arc(F(1, 2), 1)])])
    for x in grid(12):
        assert half(x) == rotation(F(1, 2))(x)
    # (3x+1)/2 on [1/3, 2/3) has image [1, 3/2) = [0, 1/2) mod 1, the same as
    # 3x/2 on [0, 1/3): the exact check must reject this pair
    with pytest.raises(GluingConflict):
        glue([PartialMap.affine(F(3, 2), 0, [Arc(0, F(1, 3))]),
              PartialMap.affine(F(3, 2), F(1, 2), [Arc(F(1, 3), F(2, 3))])])
    two = glue([PartialMap.affine(F(3, 2), 0, [Arc(0, F(1, 3))]),
                PartialMap.affine(F(3, 2), 0, [Arc(F(1, 3), F(2, 3))])])
    images = sorted((x.lo, x.hi) for p in two.pieces for x in p.image_arcs())
    assert images == [(0, F(1, 2)), (F(1, 2), 1)]
    values = [two(x) for x in grid(60) if x < F(2, 3)]
    assert len(values) == len(set(values)) == 40
    assert two(F(2, 3)) is None


def test_glue_conflicts():
    with pytest.raises(GluingConflict):
        glue([rotation(0), rotation(F(1, 2))])
    with pytest.raises(GluingConflict) as info:
        glue([PartialMap.affine(1, 0, [Arc(0, F(1, 2))]),
              PartialMap.affine(1, F(-1, 2), [Arc(F(1, 2), 1)])])
    assert "images overlap" in str(info.value)


def test_piece_rejects_non_injective():
    with pytest.raises(ValueError):
        Piece(Arc(0, 1), 2, 0)


def test_arc_flags():
    a = Arc(0, F(1, 2))
    assert a.contains(0) and not a.contains(F(1, 2))
    b = Arc(F(1, 2), 1, False, True)
    assert not a.overlaps(b) and b.contains(1)
    assert Arc(F(1, 2), F(1, 2), True, True).contains(F(1, 2))


slopes = st.sampled_from([F(1), F(-1), F(3, 2), F(2, 3), F(-3, 2), F(5, 3), F(1, 2)])
offsets = st.fractions(min_value=0, max_value=1, max_denominator=12)


def _random_map(slope, offset, lo):
    hi = min(F(1), lo + 1 / abs(slope))
    return PartialMap.affine(slope, offset, [Arc(lo, hi)])


@settings(max_examples=100, deadline=None)
@given(slopes, offsets, slopes, offsets, slopes, offsets,
       st.fractions(0, F(1, 2), max_denominator=6))
def test_compose_associative_and_multiplicative(s1, o1, s2, o2, s3, o3, lo):
    f, g, h = _random_map(s1, o1, lo), _random_map(s2, o2, 0), _random_map(s3, o3, lo)
    left, right = compose(compose(f, g), h), compose(f, compose(g, h))
    for x in grid(72):
        assert left(x) == right(x) == pointwise(pointwise(f, g), h)(x)
    for p in left.pieces:
        assert p.rn_factor == abs(s1 * s2 * s3)


def test_closure_trivial_cases():
    g = closure(ZERO, [Generator(rotation(F(1, 2)), 0, "r")], 0)
    assert g.nodes == {ZERO}
    g = closure(ZERO, [Generator(rotation(F(1, 2)), 0, "r")], 3)
    assert g.nodes == {ZERO, RationalAngle(1, 2)}


def test_closure_r0_depth1():
    gens = r0_generators(BsParams(2, 3))
    g = closure(ZERO, gens, 1)
    assert {str(x) for x in g.nodes} == {"0/1", "1/2", "1/3", "2/3"}


def test_closure_partial_maps_match_branch_generators():
    P = BsParams(2, 3)
    pm = [Generator(m, 1, f"F{j}.{i}") for (j, i), m in r0_partial_maps(P)]
    rng = random.Random(3)
    for _ in range(10):
        q = rng.randint(1, 30)
        y = normalize(rng.randrange(q), q)
        a = closure(y, pm, 3)
        b = closure(y, r0_generators(P), 3)
        assert a.nodes == b.nodes
        assert {(s, t, w) for s, t, _, w in a.edges} == {(s, t, w) for s, t, _, w in b.edges}


def test_closure_monotone_and_reverse_edges():
    gens = r0_generators(BsParams(2, 5))
    y = RationalAngle(1, 7)
    prev = set()
    for d in range(4):
        g = closure(y, gens, d)
        assert prev <= g.nodes
        prev = g.nodes
        for s, t, _label, w in g.edges:
            assert any(e[0] == t and e[1] == s and e[3] == -w for e in g.edges)


def test_closure_budget():
    with pytest.raises(BudgetExhausted) as info:
        closure(RationalAngle(1, 7), r0_generators(BsParams(2, 3)), 6, max_nodes=50)
    assert isinstance(info.value.partial, OrbitGraph)
    assert len(info.value.partial.nodes) == 50


def test_closure_respects_env_budget(monkeypatch):
    monkeypatch.setenv("BSVA_MAX_NODES", "20")
    with pytest.raises(BudgetExhausted):
        closure(RationalAngle(1, 7), r0_generators(BsParams(2, 3)), 6)


def _graph(edges, nodes=None):
    g = OrbitGraph(root=0)
    g.nodes = set(nodes or []) | {x for e in edges for x in e[:2]} | {0}
    for s, t, w in edges:
        g.add_edge(s, t, "x", w, "x~")
    return g


def test_classify_tree():
    cls = classify_components(_graph([(0, 1, 1), (1, 2, -1), (0, 3, 1)]))
    assert all(d == 0 for d in cls.loop_weight_subgroup.values())
    assert not cls.anomalous_nodes
    assert cls.potential[2] == 0 and cls.potential[3] == 1


def test_classify_zero_cycle():
    cls = classify_components(_graph([(0, 1, 1), (1, 2, -1), (2, 0, 0)]))
    assert cls.loop_weight_subgroup[0] == 0 and not cls.anomalous_nodes


def test_classify_weighted_cycles():
    cls = classify_components(_graph([(0, 1, 2), (1, 0, 2), (5, 6, 3), (6, 7, 3), (7, 5, 3)]))
    assert len(cls.components) == 2
    assert cls.loop_weight_subgroup[0] == 4
    assert cls.loop_weight_subgroup[5] == 9


def test_classify_self_loop_at_zero():
    g = closure(ZERO, r0_generators(BsParams(2, 3)), 1)
    cls = classify_components(g)
    assert ZERO in cls.anomalous_nodes
    assert cls.loop_weight_subgroup[ZERO] == 1


def test_classify_order_insensitive():
    g = closure(RationalAngle(1, 5), r0_generators(BsParams(2, 3)), 3)
    base = classify_components(g)
    edges = list(g.edges)
    for seed in range(5):
        random.Random(seed).shuffle(edges)
        h = OrbitGraph(root=g.root, nodes=set(g.nodes))
        for e in edges:
            h.edges.add(e)
        other = classify_components(h)
        assert other.components == base.components
        assert other.loop_weight_subgroup == base.loop_weight_subgroup
        assert other.anomalous_nodes == base.anomalous_nodes


def test_text_export():
    g = closure(ZERO, r0_generators(BsParams(2, 3)), 1)
    text = g.to_text()
    lines = text.splitlines()
    assert lines[:4] == ["node 0/1", "node 1/2", "node 1/3", "node 2/3"]
    assert "edge 0/1 1/2 F1 1" in lines and "edge 1/2 0/1 B1 -1" in lines
    assert g.to_text() == text
