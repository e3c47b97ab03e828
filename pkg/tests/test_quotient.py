import numpy as np
import pytest

import og4
from og4 import OG4Error, enumerate_group, parse_permutation
from og4.perm import BlockPartition, induced_block_action
from og4.quotient import (
    basic_chain,
    basic_quotients,
    basic_type,
    classify_all_quotients,
    classify_og4_quotient,
    normal_quotient,
)


class TestNormalQuotient:
    def test_full_group_is_k1(self, lex_pairs):
        pair = lex_pairs[4]
        out = normal_quotient(pair, pair.group)
        assert out.kind == "K1"

    def test_lex_base_is_og_multicover(self, lex_pairs):
        for r, pair in lex_pairs.items():
            labels = np.arange(2 * r) // 2
            part = BlockPartition.from_labels(labels)
            _, base = induced_block_action(pair.group, part)
            assert base.order == 2 ** r
            out = normal_quotient(pair, base)
            assert out.kind == "OGMulticover"
            assert out.quotient_valency == 2 and out.multicover_degree == 2
            assert out.induced_group.order == r

    def test_non_normal_rejected(self, lex_pairs):
        pair = lex_pairs[3]
        flip = og4.point_stabilizer(pair.group, 0)
        with pytest.raises(OG4Error):
            normal_quotient(pair, flip)


class TestClassification:
    def test_lex_minimal_normal_is_oriented_cycle(self, lex_pairs):
        for r, pair in lex_pairs.items():
            mins = og4.minimal_normal_subgroups(pair.group)
            out = classify_og4_quotient(pair, mins[0])
            assert out.kind == "OrientedCycle"
            assert out.cycle_length == r
            assert out.induced_group.order == r

    def test_cover_detected_on_simple_cayley(self, sc_pair):
        # the acting group has a central fixed-point-free involution whose
        # quotient is a genuine cover on half as many vertices
        kinds = {
            n.order: out.kind for n, out in classify_all_quotients(sc_pair)
        }
        assert kinds[2] == "Cover"
        assert kinds[60] == "K1"

    def test_cover_invariants(self, sc_pair):
        for n, out in classify_all_quotients(sc_pair):
            if out.kind != "Cover":
                continue
            assert out.multicover_degree == 1
            assert og4.transitivity_profile(n).semiregular
            assert out.kernel.same_elements(n)
            assert out.induced_group.order * n.order == sc_pair.group.order
            assert out.quotient_pair.certificate.valency == 4

    def test_k2_on_bipartite_cycle(self):
        # oriented 4-valent bipartite example: lexicographic cycle with even r
        pair = og4.lexicographic_cycle(4)
        labels = np.arange(8) // 2 % 2  # column parity
        part = BlockPartition.from_labels(labels)
        _, ker = induced_block_action(pair.group, part)
        out = classify_og4_quotient(pair, ker)
        assert out.kind == "K2"


class TestBasic:
    def test_lex_is_cycle_type(self, lex_pairs):
        for pair in lex_pairs.values():
            assert basic_type(pair) == "Cycle"

    def test_sym_bigstab_quasiprimitive(self, sym5_pair):
        assert basic_type(sym5_pair) == "Quasiprimitive"

    def test_coset_simple_quasiprimitive(self, cs_pair):
        assert basic_type(cs_pair) == "Quasiprimitive"

    def test_simple_cayley_not_basic(self, sc_pair):
        assert basic_type(sc_pair) == "NonBasic"

    def test_chain_empty_for_basic(self, sym5_pair):
        chain, terminal = basic_chain(sym5_pair)
        assert chain == []
        assert terminal is sym5_pair

    def test_chain_reduces_nonbasic(self, sc_pair):
        chain, terminal = basic_chain(sc_pair)
        assert len(chain) == 1
        assert chain[0][0].order == 2
        assert terminal.graph.n_vertices == 30
        assert basic_type(terminal) == "Quasiprimitive"

    def test_basic_quotients_consistent(self, sc_pair):
        bq = basic_quotients(sc_pair)
        assert [(n.order, q.graph.n_vertices) for n, q in bq] == [(2, 30)]

    def test_terminal_has_no_cover(self, sc_pair):
        _, terminal = basic_chain(sc_pair)
        kinds = {out.kind for _, out in classify_all_quotients(terminal)}
        assert "Cover" not in kinds
