from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from homnet import (
    block_index_sets,
    block_product_sign,
    continue_equilibrium,
    det_exact,
    fast_super_appendage,
    linearized_response,
    numeric_pattern,
    parse_network,
    preceq,
    sample_jacobian,
    serialize_network,
    synthesize_ode,
    theorem_pattern,
)
from homnet.network import IONetwork
from homnet.odesim import NewtonDivergence
from homnet.oracle import det_jacobian, homeostasis_det


E8 = IONetwork(
    nodes=("iota", "sigma", "tau1", "tau2", "tau3", "o"),
    input="iota",
    output="o",
    arrows=frozenset(
        [
            ("tau1", "iota"),
            ("iota", "sigma"),
            ("tau2", "sigma"),
            ("sigma", "tau1"),
            ("tau3", "tau2"),
            ("o", "tau2"),
            ("o", "tau3"),
            ("iota", "o"),
            ("sigma", "o"),
        ]
    ),
)


@st.composite
def networks(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    nodes = tuple("v%d" % k for k in range(n))
    pairs = [(a, b) for a in nodes for b in nodes if a != b]
    arrows = frozenset(draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))))
    return IONetwork(nodes=nodes, input=nodes[0], output=nodes[1], arrows=arrows)


@given(networks())
@settings(max_examples=150)
def test_serialize_parse_round_trip(net):
    assert parse_network(serialize_network(net)) == net


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=60)
def test_sampled_jacobian_identities(seed):
    # exact Cramer residual, dual-route response agreement, and the
    # block-product sign identity must hold for every accepted sample
    jac = sample_jacobian(E8, seed)
    response = linearized_response(jac)
    for r, row in enumerate(jac.order):
        acc = Fraction(0)
        for col in jac.order:
            entry = jac.entries.get((row, col))
            if entry is not None:
                acc += entry * response[col]
        want = -jac.input_sensitivity if r == 0 else Fraction(0)
        assert acc == want
    assert block_product_sign(jac, E8) in (-1, 1)
    pattern = numeric_pattern(jac, E8)
    assert pattern <= set(E8.nodes)


@st.composite
def rational_matrices(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    num = st.integers(min_value=-50, max_value=50)
    den = st.integers(min_value=1, max_value=9)
    cell = st.builds(Fraction, num, den)
    return draw(
        st.lists(st.lists(cell, min_size=n, max_size=n), min_size=n, max_size=n)
    )


@given(rational_matrices())
@settings(max_examples=120)
def test_det_exact_row_scaling(rows):
    # multiplying one row by a rational multiplies the determinant by it
    base = det_exact(rows)
    factor = Fraction(7, 3)
    scaled = [list(r) for r in rows]
    scaled[0] = [factor * v for v in scaled[0]]
    assert det_exact(scaled) == factor * base


@given(rational_matrices())
@settings(max_examples=120)
def test_det_exact_transpose_invariant(rows):
    cols = [list(col) for col in zip(*rows)]
    assert det_exact(cols) == det_exact(rows)


def test_classification_partitions_nodes(corpus_analyses):
    for seed, net, an in corpus_analyses:
        cls = an.cls
        assert cls.simple | cls.appendage == frozenset(net.nodes), seed
        assert not (cls.simple & cls.appendage), seed
        assert frozenset(cls.super_simple) <= cls.simple, seed
        assert cls.super_appendage <= cls.appendage, seed
        assert cls.super_simple[0] == net.input, seed
        assert cls.super_simple[-1] == net.output, seed


def test_block_index_sets_partition_and_squareness(corpus_analyses):
    for seed, net, an in corpus_analyses:
        rows_seen: set[str] = set()
        cols_seen: set[str] = set()
        for K in an.subnetworks:
            bis = block_index_sets(net, K)
            assert len(bis.row_nodes) == len(bis.col_nodes), (seed, K.label)
            assert not (rows_seen & bis.row_nodes), (seed, K.label)
            assert not (cols_seen & bis.col_nodes), (seed, K.label)
            rows_seen |= bis.row_nodes
            cols_seen |= bis.col_nodes
        assert rows_seen == set(net.nodes) - {net.input}, seed
        assert cols_seen == set(net.nodes) - {net.output}, seed


def test_super_appendage_definitions_agree(corpus_analyses):
    for seed, net, an in corpus_analyses:
        assert fast_super_appendage(net, an.cls) == an.cls.super_appendage, seed


def test_preceq_tracks_chain_positions(corpus_analyses):
    for seed, net, an in corpus_analyses:
        cls = an.cls
        ss = list(cls.super_simple)
        for a in ss:
            for b in ss:
                verdict = preceq(cls, a, b)
                if a == b:
                    assert verdict.relation == "equal-super-simple", seed
                elif cls.chain_position[a] < cls.chain_position[b]:
                    assert verdict.relation == "strictly-precedes", seed
                    assert verdict.holds, seed
                else:
                    assert not verdict.holds, seed


def test_pattern_network_contact_order(corpus_analyses):
    # every appendage component meets the backbone between vmax and vmin
    for seed, net, an in corpus_analyses:
        pnet = an.pnet
        for c in pnet.components:
            hi = pnet.chain_pos[pnet.vmax[c.index]]
            lo = pnet.chain_pos[pnet.vmin[c.index]]
            assert hi <= lo, (seed, c.label)
            if hi == lo:
                assert pnet.vmax[c.index] is pnet.vmin[c.index], (seed, c.label)


def test_output_is_always_forced(corpus_analyses):
    for seed, net, an in corpus_analyses:
        for K in an.subnetworks:
            assert net.output in theorem_pattern(an, K), (seed, K.label)


def test_synthesized_branches_satisfy_equilibria(corpus):
    # a fold inside the window is a legitimate NewtonDivergence; every
    # branch that does continue must satisfy the equilibrium contract
    continued = 0
    for seed, net in corpus[:20]:
        ode = synthesize_ode(net, seed)
        try:
            branch = continue_equilibrium(ode, (0.0, 0.3), 7)
        except NewtonDivergence:
            continue
        continued += 1
        assert branch.points, seed
        for p in branch.points:
            assert np.max(np.abs(ode.rhs(p.x, p.I))) <= 1e-10, seed
            assert np.isfinite(p.det_h), seed
    assert continued >= 10


@given(st.integers(min_value=0, max_value=500))
@settings(max_examples=40)
def test_homeostasis_det_is_response_numerator(seed):
    # output response times det J equals +/- input sensitivity times det H
    jac = sample_jacobian(E8, seed)
    response = linearized_response(jac)
    lhs = response[jac.order[-1]] * det_jacobian(jac)
    rhs = jac.input_sensitivity * homeostasis_det(jac)
    assert lhs == rhs or lhs == -rhs
