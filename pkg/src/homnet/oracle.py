"""Exact-arithmetic verification of the block determinant story.

A sampled Jacobian assigns nonzero rationals to every arrow entry and
every diagonal entry.  Forcing one subnetwork's block determinant to zero
(an exact affine solve in a single entry) and then reading off which
nodes' response to the input parameter vanishes gives a second,
combinatorics-free route to the homeostasis pattern.  Everything here is
exact: "homeostatic" means a determinant is exactly zero, never merely
small.

The deleted-row/column convention: the homeostasis matrix drops the input
node's row and the output node's column; testing a node kappa instead
drops kappa's column.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import sympy

from .classify import DEFAULT_PATH_CAP
from .induction import Analysis, analyze
from .network import InvariantError, IONetwork, NetworkError
from .subnetworks import HomeostasisSubnetwork, block_index_sets


class OracleError(RuntimeError):
    """Sampling or forcing failed in a way the caller may retry."""


class DegenerateSampling(OracleError):
    """Retry budget exhausted without a fully generic sample."""


class NoAdjustableEntry(OracleError):
    """Every stored entry of the target block has zero cofactor."""


class SingularJacobian(OracleError):
    """An operation needed an invertible Jacobian."""


@dataclass(frozen=True)
class RationalJacobian:
    """Sparse exact Jacobian sample.

    order fixes the row/column arrangement: input node first, output node
    last, interior nodes in declaration order.  entries holds (row j,
    col l) for every arrow l->j plus the full diagonal.
    """

    order: tuple[str, ...]
    entries: dict[tuple[str, str], Fraction]
    input_sensitivity: Fraction


@dataclass(frozen=True)
class SymbolicFactorization:
    labels: tuple[str, ...]
    factors: tuple[sympy.Expr, ...]
    sign: int  # product of factors equals sign * det H


def jacobian_order(net: IONetwork) -> tuple[str, ...]:
    interior = tuple(n for n in net.nodes if n not in (net.input, net.output))
    return (net.input,) + interior + (net.output,)


def _int_bareiss(m: list[list[int]]) -> int:
    """Fraction-free elimination; mutates m; exact integer determinant."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_exact(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Exact determinant; denominators cleared row-wise, then integer
    fraction-free elimination."""
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return Fraction(1)
    scale = 1
    m: list[list[int]] = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        denom = 1
        for x in fr:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        scale *= denom
        m.append([int(x.numerator * (denom // x.denominator)) for x in fr])
    return Fraction(_int_bareiss(m), scale)


def _sparsity(net: IONetwork) -> set[tuple[str, str]]:
    cells = {(j, j) for j in net.nodes}
    cells.update((head, tail) for tail, head in net.arrows)
    return cells


def _nonzero_int(rng: random.Random) -> int:
    while True:
        v = rng.randint(-999, 999)
        if v != 0:
            return v


def sample_jacobian(
    net: IONetwork,
    seed: int,
    retries: int = 64,
    an: Analysis | None = None,
) -> RationalJacobian:
    """Seeded generic sample: every stored entry a nonzero rational, the
    full determinant nonzero, and every block determinant nonzero."""
    if an is None:
        an = analyze(net)
    order = jacobian_order(net)
    cells = [(j, l) for j in order for l in order if (j, l) in _sparsity(net)]
    rng = random.Random(seed)
    for _ in range(retries):
        entries = {
            cell: Fraction(_nonzero_int(rng), _nonzero_int(rng)) for cell in cells
        }
        jac = RationalJacobian(
            order=order,
            entries=entries,
            input_sensitivity=Fraction(_nonzero_int(rng), _nonzero_int(rng)),
        )
        if det_jacobian(jac) == 0:
            continue
        if all(block_det(jac, net, K) != 0 for K in an.subnetworks):
            return jac
    raise DegenerateSampling("no generic sample within %d retries" % retries)


def submatrix(
    jac: RationalJacobian, rows: Sequence[str], cols: Sequence[str]
) -> list[list[Fraction]]:
    zero = Fraction(0)
    return [[jac.entries.get((r, c), zero) for c in cols] for r in rows]


def ordered_nodes(jac: RationalJacobian, nodes: frozenset[str]) -> list[str]:
    return [n for n in jac.order if n in nodes]


def det_jacobian(jac: RationalJacobian) -> Fraction:
    return det_exact(submatrix(jac, jac.order, jac.order))


def homeostasis_det(jac: RationalJacobian) -> Fraction:
    return det_exact(submatrix(jac, jac.order[1:], jac.order[:-1]))


def node_response_det(jac: RationalJacobian, kappa: str) -> Fraction:
    """Determinant of the Jacobian with the input row and kappa's column
    deleted; zero exactly when kappa's equilibrium response to the input
    parameter vanishes."""
    if kappa not in jac.order:
        raise NetworkError("unknown node %r" % kappa)
    cols = [n for n in jac.order if n != kappa]
    return det_exact(submatrix(jac, jac.order[1:], cols))


def block_matrix(
    jac: RationalJacobian, net: IONetwork, K: HomeostasisSubnetwork
) -> tuple[list[str], list[str], list[list[Fraction]]]:
    bis = block_index_sets(net, K)
    rows = ordered_nodes(jac, bis.row_nodes)
    cols = ordered_nodes(jac, bis.col_nodes)
    return rows, cols, submatrix(jac, rows, cols)


def block_det(jac: RationalJacobian, net: IONetwork, K: HomeostasisSubnetwork) -> Fraction:
    return det_exact(block_matrix(jac, net, K)[2])


def _cofactor(matrix: list[list[Fraction]], i: int, j: int) -> Fraction:
    minor = [
        [matrix[r][c] for c in range(len(matrix)) if c != j]
        for r in range(len(matrix))
        if r != i
    ]
    sign = -1 if (i + j) % 2 else 1
    return sign * det_exact(minor)


def forcing_entry(
    jac: RationalJacobian, net: IONetwork, K: HomeostasisSubnetwork
) -> tuple[str, str]:
    """The stored block entry force_block_singular will adjust: first in
    row-major order (rows and columns in Jacobian node order) with a
    nonzero cofactor."""
    rows, cols, B = block_matrix(jac, net, K)
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            if (r, c) in jac.entries and _cofactor(B, i, j) != 0:
                return (r, c)
    raise NoAdjustableEntry("all stored entries of block %s have zero cofactor" % K.label)


def force_block_singular(
    jac: RationalJacobian,
    net: IONetwork,
    K: HomeostasisSubnetwork,
    an: Analysis | None = None,
) -> RationalJacobian:
    """Exactly zero K's block determinant by solving its affine
    dependence on one entry; all other blocks keep their determinants
    (they share no matrix cell with K's block)."""
    if an is None:
        an = analyze(net)
    rows, cols, B = block_matrix(jac, net, K)
    d = det_exact(B)
    if d == 0:
        raise OracleError("block %s is already singular" % K.label)
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            if (r, c) not in jac.entries:
                continue
            cof = _cofactor(B, i, j)
            if cof == 0:
                continue
            entries = dict(jac.entries)
            entries[(r, c)] = entries[(r, c)] - d / cof
            forced = replace(jac, entries=entries)
            if block_det(forced, net, K) != 0:
                raise InvariantError("forcing left block %s nonsingular" % K.label)
            for other in an.subnetworks:
                if other != K and block_det(forced, net, other) == 0:
                    raise InvariantError(
                        "forcing block %s zeroed block %s" % (K.label, other.label)
                    )
            return forced
    raise NoAdjustableEntry("all stored entries of block %s have zero cofactor" % K.label)


def linearized_response(jac: RationalJacobian) -> dict[str, Fraction]:
    """Exact equilibrium response x' to the input parameter: the solution
    of J x' = -(input_sensitivity) e_input, by column replacement."""
    dj = det_jacobian(jac)
    if dj == 0:
        raise SingularJacobian("response is undefined: det J = 0")
    n = len(jac.order)
    full = submatrix(jac, jac.order, jac.order)
    rhs = [Fraction(0)] * n
    rhs[0] = -jac.input_sensitivity
    result: dict[str, Fraction] = {}
    for k, kappa in enumerate(jac.order):
        numerator = [
            [rhs[r] if c == k else full[r][c] for c in range(n)] for r in range(n)
        ]
        result[kappa] = det_exact(numerator) / dj
    return result


def numeric_pattern(jac: RationalJacobian, net: IONetwork) -> frozenset[str]:
    """Nodes with exactly-zero response, computed two ways that must
    agree: per-node deleted-column determinants, and the exact linear
    solve."""
    if det_jacobian(jac) == 0:
        raise SingularJacobian("pattern is undefined: det J = 0")
    via_dets = frozenset(
        kappa for kappa in jac.order if node_response_det(jac, kappa) == 0
    )
    response = linearized_response(jac)
    via_solve = frozenset(kappa for kappa in jac.order if response[kappa] == 0)
    if via_dets != via_solve:
        raise InvariantError(
            "determinant route %s disagrees with solve route %s"
            % (sorted(via_dets), sorted(via_solve))
        )
    return via_dets


def block_product_sign(
    jac: RationalJacobian, net: IONetwork, an: Analysis | None = None
) -> int:
    """Verify product(block determinants) = +/- det H exactly; returns
    the sign, or 0 when both sides are zero."""
    if an is None:
        an = analyze(net)
    product = Fraction(1)
    for K in an.subnetworks:
        product *= block_det(jac, net, K)
    deth = homeostasis_det(jac)
    if product == deth == 0:
        return 0
    if product == deth:
        return 1
    if product == -deth:
        return -1
    raise InvariantError(
        "block determinant product %s does not match det H %s up to sign"
        % (product, deth)
    )


def entry_symbol(row: str, col: str) -> sympy.Symbol:
    return sympy.Symbol("f[%s,%s]" % (row, col))


def symbolic_factorization(
    net: IONetwork,
    max_nodes: int = 10,
    an: Analysis | None = None,
    cap: int = DEFAULT_PATH_CAP,
) -> SymbolicFactorization:
    """Per-block symbolic determinants over entry symbols, with the
    expanded product checked against the directly expanded det H."""
    if len(net.nodes) > max_nodes:
        raise NetworkError(
            "symbolic expansion capped at %d nodes (%d given)"
            % (max_nodes, len(net.nodes))
        )
    if an is None:
        an = analyze(net, cap)
    order = jacobian_order(net)
    cells = _sparsity(net)

    def sym_matrix(rows: Sequence[str], cols: Sequence[str]) -> sympy.Matrix:
        return sympy.Matrix(
            [
                [entry_symbol(r, c) if (r, c) in cells else 0 for c in cols]
                for r in rows
            ]
        )

    det_h = sym_matrix(order[1:], order[:-1]).det(method="berkowitz")
    labels = []
    factors = []
    for K in an.subnetworks:
        bis = block_index_sets(net, K)
        rows = [n for n in order if n in bis.row_nodes]
        cols = [n for n in order if n in bis.col_nodes]
        labels.append(K.label)
        factors.append(sym_matrix(rows, cols).det(method="berkowitz"))
    product = sympy.Mul(*factors)
    if sympy.expand(product - det_h) == 0:
        sign = 1
    elif sympy.expand(product + det_h) == 0:
        sign = -1
    else:
        raise InvariantError("block determinant product does not match det H")
    return SymbolicFactorization(labels=tuple(labels), factors=tuple(factors), sign=sign)
