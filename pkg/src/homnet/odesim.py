"""Numeric equilibrium continuation and homeostasis detection.

Synthesizes a smooth vector field whose Jacobian sparsity matches a
network (saturating tanh couplings, linear decay, the input parameter
feeding only the input node), follows the equilibrium across an input
window, and reports points where det H vanishes along the branch,
together with which determinant block vanished there and which nodes'
input sensitivities vanish alongside.

Any object exposing `net`, `order`, `rhs(x, I)`, `jac(x)` and
`input_deriv(x, I)` can ride the same continuation machinery; tests use
that to drive hand-built vector fields with known closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .induction import Analysis, analyze
from .network import IONetwork
from .oracle import jacobian_order
from .subnetworks import block_index_sets


class SimulationError(RuntimeError):
    """Continuation or root polishing failed."""


class NewtonDivergence(SimulationError):
    """Damped Newton failed to reach the residual tolerance."""


@dataclass(frozen=True)
class ToleranceConfig:
    newton: float = 1e-12  # max-norm residual at an accepted equilibrium
    hyperbolic: float = 1e-8  # min |Re(eigenvalue)| before truncating
    homeostasis: float = 1e-10  # |det H| acceptance, relative to branch scale
    member_rel: float = 1e-8  # |x'_k|/max|x'| at or below: pattern member
    nonmember_rel: float = 1e-4  # at or above: clear non-member
    fd_step: float = 1e-4  # input step for derivative classification
    kind_zero: float = 1e-6  # relative threshold splitting curve kinds


@dataclass(frozen=True)
class AdmissibleODE:
    """x_j' = -d_j x_j + s_j tanh(x_j) + sum_l w_jl tanh(x_l) (+ c I at
    the input node); the weight w_jl is nonzero exactly when the network
    has an arrow l -> j.  The synthesized family keeps s_j = 0 and c = 1;
    both stay adjustable so tests can plant determinant zeros."""

    net: IONetwork
    order: tuple[str, ...]
    decay: np.ndarray
    self_gain: np.ndarray
    weights: np.ndarray
    input_coupling: float

    def rhs(self, x: np.ndarray, I: float) -> np.ndarray:
        t = np.tanh(x)
        out = -self.decay * x + self.self_gain * t + self.weights @ t
        out[0] += self.input_coupling * I
        return out

    def jac(self, x: np.ndarray) -> np.ndarray:
        t = np.tanh(x)
        sech2 = 1.0 - t * t
        J = self.weights * sech2[np.newaxis, :]
        J[np.diag_indices_from(J)] = -self.decay + self.self_gain * sech2
        return J

    def input_deriv(self, x: np.ndarray, I: float) -> np.ndarray:
        out = np.zeros(len(self.order))
        out[0] = self.input_coupling
        return out


def synthesize_ode(net: IONetwork, seed: int) -> AdmissibleODE:
    rng = np.random.default_rng(seed)
    order = jacobian_order(net)
    idx = {n: k for k, n in enumerate(order)}
    n = len(order)
    decay = rng.uniform(0.5, 1.5, size=n)
    weights = np.zeros((n, n))
    for tail, head in sorted(net.arrows):
        sign = 1.0 if rng.random() < 0.5 else -1.0
        weights[idx[head], idx[tail]] = sign * rng.uniform(0.5, 1.5)
    return AdmissibleODE(
        net=net,
        order=order,
        decay=decay,
        self_gain=np.zeros(n),
        weights=weights,
        input_coupling=1.0,
    )


def with_self_gain(ode: AdmissibleODE, node: str, gain: float) -> AdmissibleODE:
    gains = ode.self_gain.copy()
    gains[ode.order.index(node)] = gain
    return AdmissibleODE(
        net=ode.net,
        order=ode.order,
        decay=ode.decay,
        self_gain=gains,
        weights=ode.weights,
        input_coupling=ode.input_coupling,
    )


def newton_equilibrium(
    ode: Any, x0: np.ndarray, I: float, tol: ToleranceConfig
) -> np.ndarray:
    x = np.asarray(x0, dtype=float).copy()
    for _ in range(80):
        f = ode.rhs(x, I)
        base = float(np.max(np.abs(f)))
        if base <= tol.newton:
            return x
        try:
            delta = np.linalg.solve(ode.jac(x), -f)
        except np.linalg.LinAlgError as exc:
            raise NewtonDivergence("singular Jacobian during Newton at I=%g" % I) from exc
        step = 1.0
        xn = x + delta
        while step > 1e-8 and np.max(np.abs(ode.rhs(xn, I))) >= base:
            step *= 0.5
            xn = x + step * delta
        x = xn
    if float(np.max(np.abs(ode.rhs(x, I)))) <= tol.newton:
        return x
    raise NewtonDivergence("Newton did not converge at I=%g" % I)


@dataclass
class BranchPoint:
    I: float
    x: np.ndarray
    output: float
    det_h: float
    sensitivity: np.ndarray  # x'(I): solution of J x' = -dF/dI
    output_sensitivity: float  # x_o'(I)
    eigenvalues: np.ndarray
    hyperbolic: bool
    block_dets: dict[str, float]


@dataclass
class Branch:
    ode: Any
    tol: ToleranceConfig
    an: Analysis
    points: list[BranchPoint]
    lost_hyperbolicity: bool

    @property
    def inputs(self) -> np.ndarray:
        return np.array([p.I for p in self.points])

    @property
    def outputs(self) -> np.ndarray:
        return np.array([p.output for p in self.points])

    @property
    def det_hs(self) -> np.ndarray:
        return np.array([p.det_h for p in self.points])

    @property
    def output_sensitivities(self) -> np.ndarray:
        return np.array([p.output_sensitivity for p in self.points])


def _block_positions(
    an: Analysis, order: tuple[str, ...]
) -> list[tuple[str, list[int], list[int]]]:
    idx = {n: k for k, n in enumerate(order)}
    out = []
    for K in an.subnetworks:
        bis = block_index_sets(an.net, K)
        rows = [idx[n] for n in order if n in bis.row_nodes]
        cols = [idx[n] for n in order if n in bis.col_nodes]
        out.append((K.label, rows, cols))
    return out


def _point_at(
    ode: Any,
    I: float,
    guess: np.ndarray,
    tol: ToleranceConfig,
    blocks: list[tuple[str, list[int], list[int]]],
) -> BranchPoint:
    x = newton_equilibrium(ode, guess, I, tol)
    J = ode.jac(x)
    try:
        sens = np.linalg.solve(J, -ode.input_deriv(x, I))
    except np.linalg.LinAlgError:
        # an exactly singular Jacobian is the extreme form of
        # hyperbolicity loss; the point is flagged, never continued
        sens = np.full(len(ode.order), np.nan)
    n = len(ode.order)
    # homeostasis matrix: drop the input row (index 0) and output column
    deth = float(np.linalg.det(J[1:, : n - 1]))
    eigs = np.linalg.eigvals(J)
    dets = {
        label: float(np.linalg.det(J[np.ix_(rows, cols)]))
        for label, rows, cols in blocks
    }
    return BranchPoint(
        I=I,
        x=x,
        output=float(x[n - 1]),
        det_h=deth,
        sensitivity=sens,
        output_sensitivity=float(sens[n - 1]),
        eigenvalues=eigs,
        hyperbolic=bool(np.min(np.abs(eigs.real)) >= tol.hyperbolic),
        block_dets=dets,
    )


def continue_equilibrium(
    ode: Any,
    i_range: tuple[float, float],
    steps: int = 201,
    x0: np.ndarray | None = None,
    tol: ToleranceConfig | None = None,
    an: Analysis | None = None,
) -> Branch:
    """Follow the equilibrium over a uniform input grid with a secant
    predictor.  Loss of hyperbolicity truncates the branch and sets the
    flag; an empty grid yields an empty branch."""
    tol = tol or ToleranceConfig()
    an = an or analyze(ode.net)
    if steps <= 0:
        return Branch(ode=ode, tol=tol, an=an, points=[], lost_hyperbolicity=False)
    blocks = _block_positions(an, ode.order)
    grid = np.linspace(i_range[0], i_range[1], steps)
    x = np.zeros(len(ode.order)) if x0 is None else np.asarray(x0, dtype=float)
    points: list[BranchPoint] = []
    lost = False
    prev: np.ndarray | None = None
    for I in grid:
        guess = x if prev is None else x + (x - prev)
        pt = _point_at(ode, float(I), guess, tol, blocks)
        if not pt.hyperbolic:
            lost = True
            break
        prev, x = x, pt.x
        points.append(pt)
    return Branch(ode=ode, tol=tol, an=an, points=points, lost_hyperbolicity=lost)


@dataclass
class HomeostasisEvent:
    I: float
    x: np.ndarray
    det_h: float
    output_sensitivity: float
    crossing: bool
    kind: str
    empirical_pattern: frozenset[str]
    ambiguous: frozenset[str]
    vanishing_block: str
    block_dets: dict[str, float]

    def to_jsonable(self) -> dict:
        return {
            "input": self.I,
            "det_h": self.det_h,
            "output_sensitivity": self.output_sensitivity,
            "crossing": self.crossing,
            "kind": self.kind,
            "pattern": sorted(self.empirical_pattern),
            "ambiguous": sorted(self.ambiguous),
            "vanishing_block": self.vanishing_block,
            "block_dets": {k: self.block_dets[k] for k in sorted(self.block_dets)},
        }


def _bisect_crossing(
    ode: Any,
    lo_pt: BranchPoint,
    hi_pt: BranchPoint,
    tol: ToleranceConfig,
    blocks: list,
) -> BranchPoint:
    lo, hi = lo_pt.I, hi_pt.I
    lo_neg = lo_pt.det_h < 0
    guess = lo_pt.x
    best = lo_pt if abs(lo_pt.det_h) < abs(hi_pt.det_h) else hi_pt
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        pt = _point_at(ode, mid, guess, tol, blocks)
        if abs(pt.det_h) < abs(best.det_h):
            best = pt
        if pt.det_h == 0.0 or hi - lo <= 8 * math.ulp(max(abs(lo), abs(hi), 1.0)):
            break
        if (pt.det_h < 0) == lo_neg:
            lo, guess = mid, pt.x
        else:
            hi = mid
    return best


def _polish_minimum(
    ode: Any,
    a_pt: BranchPoint,
    b_pt: BranchPoint,
    tol: ToleranceConfig,
    blocks: list,
) -> BranchPoint:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = a_pt.I, b_pt.I
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = _point_at(ode, c, a_pt.x, tol, blocks)
    fd = _point_at(ode, d, fc.x, tol, blocks)
    best = fc if abs(fc.det_h) < abs(fd.det_h) else fd
    for _ in range(120):
        if b - a <= 8 * math.ulp(max(abs(a), abs(b), 1.0)):
            break
        if abs(fc.det_h) < abs(fd.det_h):
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = _point_at(ode, c, best.x, tol, blocks)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = _point_at(ode, d, best.x, tol, blocks)
        cand = fc if abs(fc.det_h) < abs(fd.det_h) else fd
        if abs(cand.det_h) < abs(best.det_h):
            best = cand
    return best


def _classify_kind(
    ode: Any, pt: BranchPoint, tol: ToleranceConfig, blocks: list
) -> str:
    """Derivative test on the input-output curve: simple when the output
    sensitivity crosses zero with nonzero slope, chair when the slope
    also vanishes but the curvature of the sensitivity does not."""
    step = tol.fd_step
    hp = _point_at(ode, pt.I + step, pt.x, tol, blocks).output_sensitivity
    hm = _point_at(ode, pt.I - step, pt.x, tol, blocks).output_sensitivity
    h0 = pt.output_sensitivity
    second = (hp - hm) / (2.0 * step)
    third = (hp - 2.0 * h0 + hm) / (step * step)
    ref = max(1.0, abs(second), abs(third))
    if abs(second) > tol.kind_zero * ref:
        return "simple"
    if abs(third) > tol.kind_zero * ref:
        return "chair"
    return "degenerate"


def _make_event(
    branch: Branch, pt: BranchPoint, crossing: bool, det_scales: dict[str, float]
) -> HomeostasisEvent:
    tol = branch.tol
    blocks = _block_positions(branch.an, branch.ode.order)
    mx = float(np.max(np.abs(pt.sensitivity)))
    if mx == 0.0:
        members = frozenset(branch.ode.order)
        ambiguous: frozenset[str] = frozenset()
    else:
        rel = {n: abs(pt.sensitivity[k]) / mx for k, n in enumerate(branch.ode.order)}
        members = frozenset(n for n, r in rel.items() if r <= tol.member_rel)
        ambiguous = frozenset(
            n for n, r in rel.items() if tol.member_rel < r < tol.nonmember_rel
        )
    rel_dets = {
        label: abs(val) / det_scales[label] for label, val in pt.block_dets.items()
    }
    vanishing = min(rel_dets, key=lambda label: rel_dets[label])
    return HomeostasisEvent(
        I=pt.I,
        x=pt.x,
        det_h=pt.det_h,
        output_sensitivity=pt.output_sensitivity,
        crossing=crossing,
        kind=_classify_kind(branch.ode, pt, tol, blocks),
        empirical_pattern=members,
        ambiguous=ambiguous,
        vanishing_block=vanishing,
        block_dets=pt.block_dets,
    )


def detect_homeostasis(
    branch: Branch, tol: ToleranceConfig | None = None
) -> list[HomeostasisEvent]:
    """Scan det H along the branch for sign changes and interior
    near-zero dips; polish each candidate and keep those whose |det H|
    lands within tolerance of zero (relative to the branch-wide scale)."""
    tol = tol or branch.tol
    pts = branch.points
    if len(pts) < 3:
        return []
    hs = np.array([p.det_h for p in pts])
    h_scale = float(np.max(np.abs(hs)))
    if h_scale == 0.0:
        h_scale = 1.0
    det_scales = {
        label: max(1e-300, max(abs(p.block_dets[label]) for p in pts))
        for label in pts[0].block_dets
    }
    blocks = _block_positions(branch.an, branch.ode.order)
    events: list[HomeostasisEvent] = []
    near_crossing: set[int] = set()
    for k in range(len(pts) - 1):
        if hs[k] == 0.0:
            events.append(_make_event(branch, pts[k], True, det_scales))
            near_crossing.update((k - 1, k, k + 1))
        elif hs[k] * hs[k + 1] < 0.0:
            best = _bisect_crossing(branch.ode, pts[k], pts[k + 1], tol, blocks)
            events.append(_make_event(branch, best, True, det_scales))
            near_crossing.update((k, k + 1))
    if hs[-1] == 0.0:
        events.append(_make_event(branch, pts[-1], True, det_scales))
    for k in range(1, len(pts) - 1):
        if k in near_crossing:
            continue
        if abs(hs[k]) <= abs(hs[k - 1]) and abs(hs[k]) <= abs(hs[k + 1]):
            best = _polish_minimum(branch.ode, pts[k - 1], pts[k + 1], tol, blocks)
            if abs(best.det_h) <= tol.homeostasis * h_scale:
                events.append(_make_event(branch, best, False, det_scales))
    events.sort(key=lambda e: e.I)
    return events


def response_residual(ode: Any, x: np.ndarray, I: float) -> float:
    """Max-norm residual of the sensitivity linear system; a correctness
    probe for externally supplied vector fields."""
    J = ode.jac(x)
    r = np.linalg.solve(J, -ode.input_deriv(x, I))
    return float(np.max(np.abs(J @ r + ode.input_deriv(x, I))))


def tune_self_gain(
    ode: AdmissibleODE,
    node: str,
    i_star: float,
    tol: ToleranceConfig | None = None,
    max_gain_ratio: float = 12.0,
) -> tuple[AdmissibleODE, float]:
    """Pick the self-coupling gain for one node so that node's diagonal
    Jacobian entry vanishes at the equilibrium for input i_star; with the
    plain synthesized family every diagonal entry is a constant -d_j, so
    this is the 1-D parameter search that plants a block-determinant zero
    inside a chosen sweep window."""
    tol = tol or ToleranceConfig()
    k = ode.order.index(node)
    d = float(ode.decay[k])

    def diag_entry(gain: float) -> float:
        trial = with_self_gain(ode, node, gain)
        x = newton_equilibrium(trial, np.zeros(len(ode.order)), 0.0, tol)
        x = newton_equilibrium(trial, x, i_star, tol)
        sech2 = 1.0 - math.tanh(x[k]) ** 2
        return -d + gain * sech2

    # the diagonal entry is -d at gain 0 and decays back below zero for
    # huge gains, so scan for a bracket first, then bisect; gains whose
    # equilibrium Newton cannot reach are skipped
    grid = np.linspace(d, max_gain_ratio * d, 80)
    vals: list[float | None] = []
    for g in grid:
        try:
            vals.append(diag_entry(float(g)))
        except NewtonDivergence:
            vals.append(None)
    lo = hi = None
    flo = 0.0
    for i in range(len(grid) - 1):
        vi, vk = vals[i], vals[i + 1]
        if vi is None or vk is None:
            continue
        if vi == 0.0:
            return with_self_gain(ode, node, float(grid[i])), float(grid[i])
        if vi * vk < 0.0:
            lo, hi = float(grid[i]), float(grid[i + 1])
            flo = vi
            break
    if lo is None:
        raise SimulationError(
            "no self-gain for %s zeroes its diagonal entry at I=%g" % (node, i_star)
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = diag_entry(mid)
        if fm == 0.0 or hi - lo <= 8 * math.ulp(max(abs(lo), abs(hi), 1.0)):
            return with_self_gain(ode, node, mid), mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return with_self_gain(ode, node, 0.5 * (lo + hi)), 0.5 * (lo + hi)
