from fractions import Fraction

import pytest
import sympy

from homnet import (
    InvariantError,
    NetworkError,
    analyze,
    block_det,
    block_product_sign,
    det_exact,
    force_block_singular,
    homeostasis_det,
    linearized_response,
    numeric_pattern,
    sample_jacobian,
    symbolic_factorization,
    theorem_pattern,
)
from homnet.oracle import (
    OracleError,
    entry_symbol,
    forcing_entry,
    jacobian_order,
    node_response_det,
    submatrix,
)


def test_jacobian_order_convention(e8):
    assert jacobian_order(e8) == ("iota", "sigma", "tau1", "tau2", "tau3", "o")


def test_det_exact_small_cases():
    assert det_exact([]) == 1
    assert det_exact([[Fraction(3, 7)]]) == Fraction(3, 7)
    assert det_exact([[1, 2], [3, 4]]) == -2
    assert det_exact([[0, 1], [1, 0]]) == -1  # needs a row swap
    assert det_exact([[1, 2], [2, 4]]) == 0


def test_det_exact_matches_sympy_on_rationals():
    import random

    rng = random.Random(4)
    for trial in range(25):
        n = rng.randint(1, 5)
        rows = [
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
            for _ in range(n)
        ]
        expected = sympy.Matrix(rows).det()
        assert det_exact(rows) == Fraction(str(expected))


def test_det_exact_rejects_non_square():
    with pytest.raises(ValueError):
        det_exact([[1, 2], [3, 4], [5, 6]])


def test_sampling_is_deterministic(e8):
    a = sample_jacobian(e8, 11)
    b = sample_jacobian(e8, 11)
    assert a == b
    c = sample_jacobian(e8, 12)
    assert a != c


def test_sample_entries_cover_sparsity(e8):
    jac = sample_jacobian(e8, 0)
    for j in e8.nodes:
        assert (j, j) in jac.entries
    for tail, head in e8.arrows:
        assert (head, tail) in jac.entries
    assert all(v != 0 for v in jac.entries.values())
    assert jac.input_sensitivity != 0
    # nothing outside the sparsity pattern
    allowed = {(j, j) for j in e8.nodes} | {(h, t) for t, h in e8.arrows}
    assert set(jac.entries) <= allowed


def test_sample_never_degenerate(e8, four_node):
    for net in (e8, four_node):
        an = analyze(net)
        for seed in range(6):
            jac = sample_jacobian(net, seed, an=an)
            assert det_exact(submatrix(jac, jac.order, jac.order)) != 0
            for K in an.subnetworks:
                assert block_det(jac, net, K) != 0


def test_force_block_zeroes_only_its_block(e8):
    an = analyze(e8)
    jac = sample_jacobian(e8, 3, an=an)
    before = {K.label: block_det(jac, e8, K) for K in an.subnetworks}
    for K in an.subnetworks:
        forced = force_block_singular(jac, e8, K, an=an)
        assert block_det(forced, e8, K) == 0
        assert homeostasis_det(forced) == 0
        for other in an.subnetworks:
            if other != K:
                assert block_det(forced, e8, other) == before[other.label]
        # exactly one entry changed
        diff = {
            cell
            for cell in jac.entries
            if jac.entries[cell] != forced.entries[cell]
        }
        assert diff == {forcing_entry(jac, e8, K)}


def test_force_rejects_already_singular(e8):
    an = analyze(e8)
    jac = sample_jacobian(e8, 3, an=an)
    K = an.subnetworks[0]
    forced = force_block_singular(jac, e8, K, an=an)
    with pytest.raises(OracleError):
        force_block_singular(forced, e8, K, an=an)


def test_linearized_response_solves_system(e8):
    jac = sample_jacobian(e8, 5)
    resp = linearized_response(jac)
    # exact residual check: J x' = -(input sensitivity) e_input
    for i, r in enumerate(jac.order):
        lhs = sum(
            jac.entries.get((r, c), Fraction(0)) * resp[c] for c in jac.order
        )
        rhs = -jac.input_sensitivity if i == 0 else Fraction(0)
        assert lhs == rhs


def test_numeric_pattern_empty_when_generic(e8):
    an = analyze(e8)
    jac = sample_jacobian(e8, 1, an=an)
    assert numeric_pattern(jac, e8) == frozenset()


def test_forced_pattern_matches_theorem(e8, four_node):
    for net in (e8, four_node):
        an = analyze(net)
        for K in an.subnetworks:
            jac = sample_jacobian(net, 2, an=an)
            forced = force_block_singular(jac, net, K, an=an)
            assert numeric_pattern(forced, net) == theorem_pattern(an, K)


def test_four_node_hand_determinants(four_node):
    # with the order (i, s, t, o), deleting the input row and the column
    # of s leaves a triangular matrix: f[s,i] * f[t,t] * f[o,o]
    jac = sample_jacobian(four_node, 9)
    want = (
        jac.entries[("s", "i")]
        * jac.entries[("t", "t")]
        * jac.entries[("o", "o")]
    )
    assert node_response_det(jac, "s") == want
    # det H itself factors as -f[s,i] * f[t,t] * f[o,s]
    want_h = (
        jac.entries[("s", "i")]
        * jac.entries[("t", "t")]
        * jac.entries[("o", "s")]
    )
    assert homeostasis_det(jac) == -want_h


def test_product_sign_identity(e8, four_node, diamond):
    for net in (e8, four_node, diamond):
        an = analyze(net)
        for seed in range(4):
            jac = sample_jacobian(net, seed, an=an)
            assert block_product_sign(jac, net, an=an) in (-1, 1)


def test_symbolic_factorization_e8(e8):
    fact = symbolic_factorization(e8)
    assert fact.labels == ("L1", "A1", "A2", "A3")
    f = entry_symbol
    expected = {
        "A1": f("tau1", "tau1"),
        "A2": f("tau2", "tau2"),
        "A3": f("tau3", "tau3"),
        "L1": f("sigma", "iota") * f("o", "sigma")
        - f("sigma", "sigma") * f("o", "iota"),
    }
    for label, factor in zip(fact.labels, fact.factors):
        same = sympy.expand(factor - expected[label]) == 0
        flipped = sympy.expand(factor + expected[label]) == 0
        assert same or flipped
    assert fact.sign in (-1, 1)


def test_symbolic_factorization_haldane(haldane):
    fact = symbolic_factorization(haldane)
    assert fact.labels == ("L1",)
    assert sympy.expand(fact.factors[0] - entry_symbol("o", "i")) == 0
    assert fact.sign == 1


def test_symbolic_size_cap(e8):
    with pytest.raises(NetworkError):
        symbolic_factorization(e8, max_nodes=3)


def test_node_response_unknown_node(e8):
    jac = sample_jacobian(e8, 0)
    with pytest.raises(NetworkError):
        node_response_det(jac, "ghost")
