from __future__ import annotations

import pytest

from qident.lpi import (
    F_series,
    G_series,
    LinkingViolation,
    LpiError,
    LpiSpec,
    UnknownBlock,
    compose,
    decompose,
    gap4_ideal,
    g_vector,
    language,
    matrices,
)
from qident.multisum import (
    RELATION_MATRIX,
    RELATION_WEIGHTS,
    eval_sum,
    quinvariate_spec,
)
from qident.partitions import (
    EMPTY,
    Overpartition,
    SET_A,
    SET_A_NO_1BAR,
    SET_A_NO_1_1BAR,
    SET_A_NO_1_1BAR_2_3BAR,
    enum_overpartitions,
    enum_set,
    in_A,
    weighted_gf,
)
from qident.series import QUIN_VARS, Series

V = QUIN_VARS
IDEAL = gap4_ideal()

WORKED_EXAMPLE = Overpartition.of((1, True), 8, 14, (19, True), 23, 27)
WORKED_CHAIN = (2, 6, 0, 3, 5, 4, 4)  # 0-based for blocks 3,7,1,4,6,5,5


class TestSpecShape:
    def test_seven_blocks(self):
        assert IDEAL.size == 7
        assert IDEAL.blocks[0] == EMPTY
        assert IDEAL.modulus == 4

    def test_block_weights(self):
        weights = IDEAL.weights(V)
        assert weights[0] == V.m()
        assert weights[1] == V.m(x=1, q=1)
        assert weights[2] == V.m(x=1, z=1, q=1)
        assert weights[3] == V.m(x=1, y1=1, q=2)
        assert weights[4] == V.m(x=1, q=3)
        assert weights[5] == V.m(x=1, z=1, q=3)
        assert weights[6] == V.m(x=1, y2=1, q=4)

    def test_linking_sets(self):
        assert IDEAL.linking[4] == IDEAL.linking[5] == frozenset({0, 4, 6})
        assert IDEAL.linking[6] == frozenset({0})
        assert IDEAL.linking[0] == frozenset(range(7))

    def test_invariants_enforced(self):
        with pytest.raises(LpiError):
            LpiSpec((Overpartition.of(1),), (frozenset({0}),), 4)  # first not empty
        with pytest.raises(LpiError):
            LpiSpec((EMPTY, Overpartition.of(1)), (frozenset({0, 1}), frozenset()), 4)
        with pytest.raises(LpiError):
            LpiSpec((EMPTY, Overpartition.of(9)), (frozenset({0, 1}), frozenset({0})), 4)


class TestComposeDecompose:
    def test_worked_example_compose(self):
        assert compose(IDEAL, WORKED_CHAIN) == WORKED_EXAMPLE

    def test_worked_example_decompose(self):
        assert decompose(IDEAL, WORKED_EXAMPLE) == WORKED_CHAIN

    def test_empty(self):
        assert compose(IDEAL, ()) == EMPTY
        assert decompose(IDEAL, EMPTY) == ()

    def test_single_block(self):
        assert compose(IDEAL, (1,)) == Overpartition.of(1)

    def test_trailing_empty_rejected(self):
        with pytest.raises(LpiError):
            compose(IDEAL, (1, 0))

    def test_linking_violation_on_compose(self):
        # block 7 (index 6) may only be followed by the empty block
        with pytest.raises(LinkingViolation):
            compose(IDEAL, (6, 4))

    def test_unknown_block_on_decompose(self):
        with pytest.raises(UnknownBlock):
            decompose(IDEAL, Overpartition.of(1, 1))

    def test_linking_violation_on_decompose(self):
        # overlined 5 after overlined 1 shifts to an overlined 1 block after
        # block 3, which the linking map forbids
        with pytest.raises(LinkingViolation):
            decompose(IDEAL, Overpartition.of((1, True), (5, True)))

    def test_round_trip_up_to_30(self):
        for n in range(31):
            for op in enum_set(SET_A, n):
                assert compose(IDEAL, decompose(IDEAL, op)) == op

    def test_chain_round_trip(self):
        def all_chains(prev: int, depth: int, budget: int):
            yield ()
            if depth * 4 + 1 > budget:
                return
            for k in IDEAL.linking[prev]:
                added = IDEAL.blocks[k].size + depth * 4 * len(IDEAL.blocks[k])
                if k != 0 and added <= budget:
                    for rest in all_chains(k, depth + 1, budget - added):
                        yield (k,) + rest
                if k == 0:
                    for rest in all_chains(0, depth + 1, budget):
                        if rest:  # avoid trailing empties
                            yield (0,) + rest

        for chain in all_chains(0, 0, 30):
            if chain and chain[-1] == 0:
                continue
            assert decompose(IDEAL, compose(IDEAL, chain)) == chain


class TestMatrices:
    def test_matches_relation_constants(self):
        a, w = matrices(IDEAL, V)
        assert a == RELATION_MATRIX
        assert w == RELATION_WEIGHTS

    def test_rows_two_three_equal(self):
        a, _ = matrices(IDEAL, V)
        assert a[1] == a[2]
        assert a[6] == (1, 0, 0, 0, 0, 0, 0)


class TestLanguage:
    def test_equals_filtered_enumeration(self):
        members = language(IDEAL, 18)
        by_size: dict[int, set] = {}
        for op in members:
            by_size.setdefault(op.size, set()).add(op)
        for n in range(19):
            expected = {op for op in enum_overpartitions(n) if in_A(op)}
            assert by_size.get(n, set()) == expected

    def test_no_duplicates(self):
        members = language(IDEAL, 20)
        assert len(members) == len(set(members))


class TestGandF:
    def test_g7_leading_term(self):
        g7 = G_series(IDEAL, 7, 4, V)
        assert g7 == Series.monomial(V, 4, V.m(x=1, y2=1, q=4))

    def test_g_at_x_zero(self):
        g = g_vector(IDEAL, 12, V)
        assert g[0].set_var_zero("x") == Series.one(V, 12)
        for k in range(1, 7):
            assert g[k].set_var_zero("x").is_zero()

    def test_f_series_match_enumeration(self):
        order = 16
        assert F_series(IDEAL, 1, order, V) == weighted_gf(SET_A, order)
        assert F_series(IDEAL, 2, order, V) == weighted_gf(SET_A_NO_1BAR, order)
        assert F_series(IDEAL, 4, order, V) == weighted_gf(SET_A_NO_1_1BAR, order)
        assert F_series(IDEAL, 5, order, V) == weighted_gf(SET_A_NO_1_1BAR_2_3BAR, order)

    def test_f_equalities(self):
        order = 14
        assert F_series(IDEAL, 2, order, V) == F_series(IDEAL, 3, order, V)
        assert F_series(IDEAL, 5, order, V) == F_series(IDEAL, 6, order, V)
        assert F_series(IDEAL, 7, order, V) == G_series(IDEAL, 1, order, V)

    def test_sum_of_g_is_f1(self):
        order = 14
        g = g_vector(IDEAL, order, V)
        total = Series.zero(V, order)
        for s in g:
            total = total + s
        assert total == F_series(IDEAL, 1, order, V)

    def test_f_match_multisum_betas(self):
        order = 16
        spec = quinvariate_spec()
        betas = ((1, 1, 2, 4), (1, 3, 2, 4), (1, 3, 2, 4), (3, 3, 2, 4),
                 (3, 5, 6, 4), (3, 5, 6, 4), (5, 5, 6, 8))
        for k, beta in enumerate(betas, start=1):
            assert F_series(IDEAL, k, order, V) == eval_sum(spec, beta, V, order)

    def test_index_bounds(self):
        with pytest.raises(LpiError):
            G_series(IDEAL, 0, 5, V)
        with pytest.raises(LpiError):
            F_series(IDEAL, 8, 5, V)


class TestJson:
    def test_round_trip(self):
        text = IDEAL.to_json()
        again = LpiSpec.from_json(text)
        assert again == IDEAL

    def test_linking_is_one_based_in_json(self):
        import json

        doc = json.loads(IDEAL.to_json())
        assert doc["linking"][6] == [1]  # block 7 links only to the empty block
        assert doc["modulus"] == 4

    def test_malformed_rejected(self):
        with pytest.raises(LpiError):
            LpiSpec.from_json('{"blocks": [[]], "modulus": 4}')

    def test_multi_part_block_ideal(self):
        # blocks may hold several parts; the engine is generic over the alphabet
        spec = LpiSpec(
            (EMPTY, Overpartition.of(1, 2), Overpartition.of((3, True))),
            (frozenset({0, 1, 2}), frozenset({0, 2}), frozenset({0, 1})),
            4,
        )
        members = language(spec, 14)
        assert Overpartition.of(1, 2) in members
        assert Overpartition.of(1, 2, (7, True)) in members  # chain block2 then block3
        assert Overpartition.of((3, True), 5, 6) in members  # chain block3 then block2
        # block2 may not follow itself
        assert Overpartition.of(1, 2, 5, 6) not in members
        for op in members:
            assert compose(spec, decompose(spec, op)) == op
        # weights carry the multi-part statistics: block2 = x^2 y1 q^3
        assert spec.weights(V)[1] == V.m(x=2, y1=1, q=3)

    def test_custom_two_block_ideal(self):
        # parts congruent to 1 mod 3, each chain block either empty or a single 1
        custom = LpiSpec(
            (EMPTY, Overpartition.of(1)),
            (frozenset({0, 1}), frozenset({0, 1})),
            3,
        )
        members = language(custom, 9)
        sizes = sorted(op.size for op in members)
        # all subset sums of the values 1, 4, 7 that stay within 9
        assert sizes == [0, 1, 4, 5, 7, 8]
        round_trip = LpiSpec.from_json(custom.to_json())
        assert round_trip == custom
