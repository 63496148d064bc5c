import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperank.errors import CycleError, EntityReferenceError, UsageError
from hyperank.models import DependencyDag, Ordering, RankKey, SemanticEntity, SubsetOrdering, TaskEdge
from hyperank.services.metric_ops import get_preset
from hyperank.services.poset_dag import (
    ScoringContext,
    build_dag,
    build_subset_dag,
    chain_extrema,
    compare_score,
    compare_subset,
    entities_for_edge,
    to_dot,
    topo_rank,
    transitive_reduction,
)
from hyperank.services.rank_engine import rank, score_all

from .helpers import random_instance

ids = st.frozensets(st.sampled_from("abcdef"), max_size=6)


@pytest.fixture
def ctx(appendix, appendix_metrics):
    return ScoringContext(appendix, {"appendix": appendix_metrics}, key=RankKey.TENSOR)


@pytest.fixture
def entities(appendix):
    return entities_for_edge(appendix, appendix.edges[0], "appendix")


def assert_topo_consistent(d: DependencyDag, order):
    position = {v: p for p, v in enumerate(order)}
    assert sorted(order) == list(range(len(d.vertices)))
    for i, j in d.arcs:
        assert position[i] < position[j]


class TestCompareScore:
    def test_self_is_equal(self, ctx, entities):
        assert compare_score(entities[0], entities[0], ctx) == Ordering.EQUAL

    def test_derived_keys(self, ctx, entities):
        n1, n6 = entities[0], entities[5]
        assert compare_score(n1, n6, ctx) == Ordering.LESS
        assert compare_score(n6, n1, ctx) == Ordering.GREATER

    def test_unknown_references(self, ctx):
        with pytest.raises(EntityReferenceError):
            ctx.key_of(SemanticEntity(node_id="zz", edge_id="t1", operator_id="appendix"))
        with pytest.raises(EntityReferenceError):
            ctx.key_of(SemanticEntity(node_id="n1", edge_id="zz", operator_id="appendix"))
        with pytest.raises(EntityReferenceError):
            ctx.key_of(SemanticEntity(node_id="n1", edge_id="t1", operator_id="zz"))

    def test_cross_operator_uses_own_keys(self, appendix, appendix_metrics):
        ctx = ScoringContext(
            appendix, {"appendix": appendix_metrics, "double": appendix_metrics.scaled(2)}, key=RankKey.TENSOR
        )
        single = SemanticEntity(node_id="n1", edge_id="t1", operator_id="appendix")
        double = SemanticEntity(node_id="n1", edge_id="t1", operator_id="double")
        assert compare_score(single, double, ctx) == Ordering.LESS

    def test_strict_order_laws(self, appendix_metrics):
        rng = random.Random(17)
        h = random_instance(rng, 30)
        ctx = ScoringContext(h, {"m": appendix_metrics})
        pool = entities_for_edge(h, h.edges[0], "m")
        for _ in range(10_000):
            a, b, c = (rng.choice(pool) for _ in range(3))
            ab = compare_score(a, b, ctx)
            assert compare_score(a, a, ctx) != Ordering.LESS
            if ab == Ordering.LESS:
                assert compare_score(b, a, ctx) == Ordering.GREATER
                if compare_score(b, c, ctx) == Ordering.LESS:
                    assert compare_score(a, c, ctx) == Ordering.LESS


class TestCompareSubset:
    def test_examples(self):
        assert compare_subset({"a"}, {"a", "b"}) == SubsetOrdering.LESS_OR_EQUAL
        assert compare_subset({"a", "b"}, {"a"}) == SubsetOrdering.GREATER
        assert compare_subset({"a", "c"}, {"a", "b"}) == SubsetOrdering.INCOMPARABLE
        s = {"x", "y"}
        assert compare_subset(s, set(s)) == SubsetOrdering.LESS_OR_EQUAL
        assert compare_subset(set(s), s) == SubsetOrdering.LESS_OR_EQUAL

    @given(s=ids)
    def test_reflexive(self, s):
        assert compare_subset(s, s) == SubsetOrdering.LESS_OR_EQUAL

    @given(a=ids, b=ids)
    def test_antisymmetric(self, a, b):
        le = SubsetOrdering.LESS_OR_EQUAL
        if compare_subset(a, b) == le and compare_subset(b, a) == le:
            assert a == b

    @given(a=ids, b=ids, c=ids)
    def test_transitive(self, a, b, c):
        le = SubsetOrdering.LESS_OR_EQUAL
        if compare_subset(a, b) == le and compare_subset(b, c) == le:
            assert compare_subset(a, c) == le

    def test_laws_over_random_sets(self):
        rng = random.Random(23)
        le = SubsetOrdering.LESS_OR_EQUAL
        universe = "abcde"
        for _ in range(10_000):
            a, b, c = (frozenset(x for x in universe if rng.random() < 0.5) for _ in range(3))
            assert compare_subset(a, a) == le
            if compare_subset(a, b) == le and compare_subset(b, a) == le:
                assert a == b
            if compare_subset(a, b) == le and compare_subset(b, c) == le:
                assert compare_subset(a, c) == le


class TestBuildDag:
    def test_appendix_dag(self, ctx, entities):
        d = build_dag(entities, ctx)
        assert len(d.arcs) == 15
        order = topo_rank(d)
        assert [d.vertices[i].node_id for i in order] == ["n4", "n2", "n5", "n3", "n1", "n6"]

    def test_distinct_keys_give_total_order(self, ctx, entities):
        assert len(build_dag(entities[:3], ctx).arcs) == 3

    def test_equal_keys_form_antichain(self, appendix, appendix_metrics):
        twins = appendix.with_nodes([appendix.nodes[0].model_copy(update={"id": f"n1{c}"}) for c in "abc"])
        ctx = ScoringContext(twins, {"m": appendix_metrics})
        d = build_dag(entities_for_edge(twins, twins.edges[0], "m"), ctx)
        assert d.arcs == frozenset()
        assert topo_rank(d) == [0, 1, 2]

    def test_consecutive_and_reduced_keep_the_order(self, ctx, entities):
        full = build_dag(entities, ctx)
        consecutive = build_dag(entities, ctx, consecutive_only=True)
        reduced = build_dag(entities, ctx, reduce=True)
        assert len(consecutive.arcs) == 5
        assert reduced.arcs == consecutive.arcs
        assert topo_rank(full) == topo_rank(consecutive) == topo_rank(reduced)
        assert transitive_reduction(full) == reduced

    def test_fuzzed_acyclic_and_consistent(self, appendix_metrics):
        rng = random.Random(29)
        for _ in range(200):
            h = random_instance(rng, rng.randint(0, 12))
            ctx = ScoringContext(h, {"m": appendix_metrics})
            ents = entities_for_edge(h, h.edges[0], "m")
            d = build_dag(ents, ctx)
            for i, j in d.arcs:
                assert ctx.key_of(ents[i]) < ctx.key_of(ents[j])
            for i, j in itertools.combinations(range(len(ents)), 2):
                if ctx.key_of(ents[i]) != ctx.key_of(ents[j]):
                    assert (i, j) in d.arcs or (j, i) in d.arcs
            assert_topo_consistent(d, topo_rank(d))

    def test_reversed_topo_agrees_with_rank(self, appendix_metrics):
        rng = random.Random(31)
        for _ in range(50):
            h = random_instance(rng, rng.randint(1, 20))
            e = h.edges[0]
            ctx = ScoringContext(h, {"m": appendix_metrics})
            d = build_dag(entities_for_edge(h, e, "m"), ctx)
            from_topo = [d.vertices[i].node_id for i in reversed(topo_rank(d))]
            from_rank = [s.node_id for s in rank(score_all(h, e, appendix_metrics), 1).ranked]
            assert from_topo == from_rank


class TestTopoRank:
    def test_empty_and_single(self, entities):
        assert topo_rank(DependencyDag()) == []
        assert topo_rank(DependencyDag(vertices=(entities[0],))) == [0]

    def test_cycle_is_reported(self, entities):
        d = DependencyDag(vertices=tuple(entities[:3]), arcs=frozenset({(0, 1), (1, 2), (2, 0)}))
        with pytest.raises(CycleError) as info:
            topo_rank(d)
        cycle = info.value.cycle
        assert cycle[0] == cycle[-1]
        assert set(cycle) == {0, 1, 2}

    def test_arc_out_of_range(self, entities):
        with pytest.raises(UsageError):
            topo_rank(DependencyDag(vertices=(entities[0],), arcs=frozenset({(0, 4)})))


class TestSubsetDag:
    def test_containment_arcs(self, appendix, appendix_metrics):
        small = TaskEdge(id="small", requirement=appendix.edges[0].requirement, members=frozenset({"n1"}))
        big = TaskEdge(id="big", requirement=appendix.edges[0].requirement, members=frozenset({"n1", "n2"}))
        other = TaskEdge(id="other", requirement=appendix.edges[0].requirement, members=frozenset({"n3"}))
        h = appendix.with_edges((small, big, other))
        ctx = ScoringContext(h, {"m": appendix_metrics})
        ents = [SemanticEntity(node_id="n1", edge_id=e.id, operator_id="m") for e in (small, big, other)]
        d = build_subset_dag(ents, ctx)
        assert d.arcs == frozenset({(0, 1)})
        assert_topo_consistent(d, topo_rank(d))


class TestExtremaAndDot:
    def test_chain_extrema(self, ctx, entities):
        low, high = chain_extrema(entities, ctx)
        assert (low.node_id, high.node_id) == ("n4", "n6")
        with pytest.raises(UsageError):
            chain_extrema([], ctx)

    def test_dot_export(self, ctx, entities):
        text = to_dot(build_dag(entities[:2], ctx))
        assert text.startswith("digraph hyperank {")
        assert '0 [label="n1@t1#appendix"];' in text
        assert "1 -> 0;" in text
