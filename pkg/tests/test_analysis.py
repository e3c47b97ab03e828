import pytest

import og4
from og4 import InvariantViolation, OGPair, OrientedGraph
from og4.analysis import (
    alternating_structure,
    attachment_sets,
    nilpotency_class,
    s_arc_report,
    stabilizer_report,
)


class TestAlternatingStructure:
    def test_lex3(self, lex_pairs):
        st = alternating_structure(lex_pairs[3])
        assert len(st.cycles) == 3
        assert st.common_length == 4
        assert st.attachment_number == 2
        assert st.attachment_kind == "tight"

    @pytest.mark.parametrize("r", [4, 5, 6, 7, 8])
    def test_lex_family(self, r, lex_pairs):
        st = alternating_structure(lex_pairs[r])
        assert len(st.cycles) == r
        assert st.common_length == 4
        assert st.attachment_kind == "tight"

    def test_cycles_partition_edges(self, sym5_pair):
        st = alternating_structure(sym5_pair)
        edges = {frozenset(a) for a in sym5_pair.graph.arcs.tolist()}
        seen = set()
        for verts in st.cycles:
            for i in range(len(verts)):
                e = frozenset((verts[i], verts[(i + 1) % len(verts)]))
                assert e not in seen
                seen.add(e)
        assert seen == edges

    def test_sym_bigstab5_intermediate(self, sym5_pair):
        st = alternating_structure(sym5_pair)
        assert st.common_length == 6
        assert st.attachment_number == 2
        assert st.attachment_kind == "intermediate"

    def test_coset_simple_values(self, cs_pair):
        st = alternating_structure(cs_pair)
        assert st.attachment_kind == "intermediate"
        assert 1 < st.attachment_number < st.common_length // 2

    def test_two_cycles_degenerate(self):
        # Cay(Z5, {+1, +2}): the alternating trace closes up in at most two
        # cycles, so no attachment number is defined
        z5 = og4.cyclic_group(5)
        arcs = sorted(
            [(x, (x + 1) % 5) for x in range(5)]
            + [(x, (x + 2) % 5) for x in range(5)]
        )
        graph = OrientedGraph(5, arcs)
        group = og4.enumerate_group([og4.parse_permutation("(1 2 3 4 5)", 5)])
        cert = og4.Certificate(vertex_transitive=True, edge_transitive=False,
                               orientation_preserved=True, connected=True,
                               valency=4, stabilizer_order=1)
        pair = OGPair(graph=graph, group=group, certificate=cert,
                      labels=tuple(str(v + 1) for v in range(5)))
        st = alternating_structure(pair)
        assert len(st.cycles) <= 2
        assert st.attachment_kind == "two_cycles_degenerate"
        assert st.attachment_number is None

    def test_attachment_sets_block_system(self, lex_pairs):
        pair = lex_pairs[4]
        sets = attachment_sets(alternating_structure(pair))
        # attachment sets partition the vertex set into equal-size blocks
        all_v = sorted(v for s in sets for v in s)
        assert all_v == list(range(pair.graph.n_vertices))
        sizes = {len(s) for s in sets}
        assert len(sizes) == 1

    def test_canonical_cycles_deterministic(self, sc_pair):
        a = alternating_structure(sc_pair)
        b = alternating_structure(sc_pair)
        assert a.cycles == b.cycles
        assert a.cycles == tuple(sorted(a.cycles))


class TestSArcs:
    def test_lex3_doubling(self, lex_pairs):
        rep = s_arc_report(lex_pairs[3])
        assert rep.max_s == 2
        assert rep.counts == (6, 12, 24, 48)
        assert rep.regular_on_max

    def test_coset_simple_one_arc(self, cs_pair):
        rep = s_arc_report(cs_pair)
        assert rep.max_s == 1
        assert rep.counts == (30, 60, 120)
        assert rep.regular_on_max

    def test_sym5(self, sym5_pair):
        rep = s_arc_report(sym5_pair)
        assert rep.max_s == 2
        assert rep.counts == (30, 60, 120, 240)
        assert rep.regular_on_max

    def test_counts_double(self, all_pairs):
        for name, pair in all_pairs:
            rep = s_arc_report(pair)
            n = pair.graph.n_vertices
            for s, c in enumerate(rep.counts):
                assert c == n * 2 ** s, name
            assert rep.max_s >= 1, name


class TestStabilizers:
    def test_sym5(self, sym5_pair):
        rep = stabilizer_report(sym5_pair)
        assert rep.order == 4
        assert rep.is_2group
        assert rep.elementary_abelian
        assert rep.nilpotency_class == 1

    def test_sym7(self, sym7_pair):
        rep = stabilizer_report(sym7_pair)
        assert rep.order == 8
        assert rep.is_2group
        assert rep.elementary_abelian
        assert rep.nilpotency_class == 1

    def test_lex4(self, lex_pairs):
        rep = stabilizer_report(lex_pairs[4])
        assert rep.order == 8
        assert rep.is_2group

    def test_pa(self, pa_pair):
        rep = stabilizer_report(pa_pair)
        assert rep.order == 4
        assert rep.elementary_abelian

    def test_all_2groups(self, all_pairs):
        for name, pair in all_pairs:
            rep = stabilizer_report(pair)
            assert rep.is_2group, name
            assert rep.order == pair.certificate.stabilizer_order, name

    def test_nilpotency_class_oracle(self):
        d8 = og4.enumerate_group(
            [og4.parse_permutation("(1 2 3 4)", 4),
             og4.parse_permutation("(1 3)", 4)]
        )
        assert nilpotency_class(d8) == 2
        v4 = og4.enumerate_group(
            [og4.parse_permutation("(1 2)(3 4)", 4),
             og4.parse_permutation("(1 3)(2 4)", 4)]
        )
        assert nilpotency_class(v4) == 1
