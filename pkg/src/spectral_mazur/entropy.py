"""Quantum relative entropy and its minimization over gauge unit balls.

``rel_entropy`` computes ``D(rho ‖ sigma) = tr[rho (log rho - log sigma)]``
with the support convention: the value is ``+inf`` (a deliberate sentinel,
never an overflow) when ``rho`` puts more than ``support_tol`` of mass
outside the support of ``sigma``.

``entropy_min_mat`` minimizes ``D(rho ‖ sigma)`` over the positive part of a
gauge's unit sphere.  The minimizer commutes with ``rho`` (the objective
decreases under pinching onto the eigenbasis of ``rho``), so the matrix
problem reduces to its spectrum: maximize ``sum_j r_j log y_j`` over the
positive sphere of the sequence gauge.  That concave problem is solved by
Frank-Wolfe with an exact line search; the linear-maximization oracle is the
norming vector of the gradient, obtained from the dual gauge's duality map.
Optimality is certified by the fixed-point identity ``y ∘ J(y) = r``: the l1
residual of that identity is reported and doubles as the distance
``‖ |J(sigma)| sigma - rho ‖_1`` at the spectral level.

``norming_state`` is the map in the opposite direction: it sends a unit-norm
``A`` to the trace-norm-one matrix ``|J(A)| A``, recovering the input of the
minimization (the two maps are mutually inverse between the unit spheres).

``entropy_min_bruteforce`` is a deliberately independent grid-search oracle
(diagonal states, dimension <= 3) used to cross-check the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionTooLarge,
    NoConvergence,
    NotPositive,
    NotProbability,
    NotPSD,
    NotSmooth,
    NotState,
    NotStrictlyConvex,
    NotUnitNorm,
    NotUnitTraceNorm,
)
from .gauge import (
    Gauge,
    Lp,
    _canonical,
    dual_gauge,
    duality_map_seq,
    eval_gauge,
    format_gauge,
)
from .matnorm import (
    _EPS,
    _is_psd,
    as_matrix,
    eigh_psd,
    matrix_to_json,
    norm_ui,
    polar,
    trace_norm,
)

__all__ = [
    "EntropyMinReport",
    "GridSearchReport",
    "rel_entropy",
    "entropy_min_seq",
    "entropy_min_mat",
    "entropy_min_general",
    "entropy_min_bruteforce",
    "norming_state",
    "check_state",
]


def check_state(rho, *, trace_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Validate a density matrix; return clamped eigenvalues and eigenbasis.

    Hermitian within 1e-12 (relative), PSD within the clamp tolerance of
    :func:`spectral_mazur.matnorm.eigh_psd`, unit trace within ``trace_tol``.
    Eigenvalues come back ascending, clipped to ``[0, inf)``.
    """
    m = as_matrix(rho)
    scale = max(float(np.abs(m).max()), 1.0)
    if np.abs(m - m.conj().T).max() > 1e-12 * scale:
        raise NotState("density matrix must be Hermitian")
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > trace_tol:
        raise NotState(f"density matrix must have unit trace, got {tr!r}")
    try:
        lam, w = eigh_psd(m)
    except (NotPSD, NotPositive) as exc:
        raise NotState(f"density matrix must be PSD: {exc}") from exc
    return lam, w


def rel_entropy(rho, sigma, *, support_tol: float = 1e-10) -> float:
    """``D(rho ‖ sigma)`` with the support convention.

    ``sigma`` only needs to be Hermitian PSD (not normalized).  Returns
    ``math.inf`` when ``tr[rho (I - P_sigma)] > support_tol`` where
    ``P_sigma`` projects onto eigenvalues above ``n * eps * lam_max(sigma)``.
    """
    r, wr = check_state(rho)
    lam, ws = eigh_psd(sigma)
    n = lam.size
    if wr.shape != ws.shape:
        raise NotState("rho and sigma must have equal dimensions")
    tau = n * _EPS * float(lam[-1])
    on_support = lam > tau
    # diagonal of rho in the eigenbasis of sigma
    mix = ws.conj().T @ as_matrix(rho) @ ws
    diag = np.clip(np.diag(mix).real, 0.0, None)
    leak = float(diag[~on_support].sum())
    if leak > support_tol:
        return math.inf
    tau_r = r.size * _EPS * float(r[-1])
    pos = r > tau_r
    term_rho = float(np.sum(r[pos] * np.log(r[pos])))
    term_sigma = float(np.sum(diag[on_support] * np.log(lam[on_support])))
    return term_rho - term_sigma


# ---------------------------------------------------------------------------
# sequence-level solver


def _check_probability(r) -> np.ndarray:
    a = np.asarray(r, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise NotProbability(f"expected a 1-d probability vector, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotProbability("probability vector contains NaN or Inf")
    if a.min() < -1e-12:
        raise NotProbability(f"negative entry {a.min():.3e}")
    total = float(a.sum())
    if abs(total - 1.0) > 1e-9:
        raise NotProbability(f"entries sum to {total!r}, not 1")
    a = np.clip(a, 0.0, None)
    return a / a.sum()


def _require_solvable(g: Gauge) -> Gauge:
    """Canonical gauge, checked against the solver's preconditions.

    Smooth + strictly convex is required, with one documented exception:
    the trace-norm gauge (canonical ``lp:1``), where the minimizer is the
    input itself — ``D(rho‖sigma) >= 0`` with equality iff ``sigma = rho``,
    and ``rho`` already lies on the sphere.
    """
    c = _canonical(g)
    if isinstance(c, Lp) and c.p == 1.0:
        return c
    if not g.smooth:
        raise NotSmooth(f"gauge {format_gauge(g)} is not smooth")
    if not g.strictly_convex:
        raise NotStrictlyConvex(f"gauge {format_gauge(g)} is not strictly convex")
    return c


_POLISH_ENTRY = 1e-6


def _solve_support(g: Gauge, r: np.ndarray, tol: float, max_iter: int):
    """Maximize ``sum r_j log y_j`` over the positive unit sphere of ``g``.

    ``r`` must be strictly positive and sum to 1.  Two phases share the
    iteration budget.  The global phase is Frank-Wolfe: steps move toward
    the norming vector of the gradient (via the dual gauge's duality map)
    with an exact concave line search.  Its ascent slope degrades like the
    *squared* distance to the optimum, so in double precision it cannot be
    driven much below a 1e-8 stationarity residual; once the residual is
    small (or the slope is lost to round-off) a local phase takes over: a
    damped multiplicative fixed-point iteration on the stationarity
    identity ``y ∘ J(y) = r``, which is cancellation-free and contracts
    linearly near the optimum with adaptive damping.  Returns
    ``(y, residual, iterations)`` where ``residual = ‖y ∘ J(y) - r‖_1``.
    """
    dual = dual_gauge(g)
    y = r / eval_gauge(g, r)
    residual = math.inf
    it = 0
    while it <= max_iter:
        j = duality_map_seq(g, y)
        residual = float(np.abs(y * j - r).sum())
        if residual <= tol:
            return y, residual, it
        if residual <= _POLISH_ENTRY:
            break
        grad = r / y
        grad_scaled = grad / grad.max()
        s = duality_map_seq(dual, grad_scaled) / eval_gauge(dual, grad_scaled)
        d = s - y
        slope0 = float(grad @ d)
        if slope0 <= 0.0:
            break
        gamma = _line_search(r, y, d, slope0)
        if gamma <= 0.0:
            break
        y = y + gamma * d
        y = y / eval_gauge(g, y)
        it += 1

    alpha = 0.5
    j = duality_map_seq(g, y)
    residual = float(np.abs(y * j - r).sum())
    while it <= max_iter and residual > tol and alpha >= 1e-4:
        cand = y * (r / np.maximum(y * j, 1e-300)) ** alpha
        cand = cand / eval_gauge(g, cand)
        jc = duality_map_seq(g, cand)
        res_c = float(np.abs(cand * jc - r).sum())
        if res_c < residual:
            y, j, residual = cand, jc, res_c
            alpha = min(1.0, alpha * 1.3)
        else:
            alpha *= 0.5
        it += 1
    if residual > tol:
        raise NoConvergence("entropy minimizer did not reach its target", residual)
    # refinement: extra local steps are one duality-map evaluation each and
    # strongly contracting, so push the residual toward the round-off floor;
    # that keeps small spectral weights accurate in *relative* terms even
    # through high-exponent gauges, where an error of the bare tolerance
    # size would be amplified by 1 / (p y_min^{p-1}) downstream
    for _ in range(15):
        if residual == 0.0:
            break
        cand = y * (r / np.maximum(y * j, 1e-300)) ** alpha
        cand = cand / eval_gauge(g, cand)
        jc = duality_map_seq(g, cand)
        res_c = float(np.abs(cand * jc - r).sum())
        if res_c < 0.7 * residual:
            y, j, residual = cand, jc, res_c
            it += 1
        else:
            break
    return y, residual, it


def _line_search(r, y, d, slope0):
    """Maximize ``sum r log(y + gamma d)`` for ``gamma`` in [0, 1].

    The derivative ``phi'(gamma) = sum r d / (y + gamma d)`` is decreasing;
    safeguarded Newton finds its root (or returns 1 when still ascending).
    """

    def slope(gamma):
        return float(np.sum(r * d / (y + gamma * d)))

    hi_slope = slope(1.0 - 1e-12)
    if hi_slope >= 0.0:
        return 1.0
    lo, hi = 0.0, 1.0 - 1e-12
    gamma = slope0 / (slope0 - hi_slope)  # secant start
    for _ in range(60):
        gamma = min(max(gamma, lo + 0.1 * (hi - lo)), hi - 0.1 * (hi - lo))
        z = y + gamma * d
        s = float(np.sum(r * d / z))
        if abs(s) < 1e-15:
            break
        if s > 0.0:
            lo = gamma
        else:
            hi = gamma
        curv = float(np.sum(r * (d / z) ** 2))
        gamma = gamma + s / curv  # Newton on phi' (phi'' = -curv)
        if hi - lo < 1e-15:
            break
    return 0.5 * (lo + hi) if not (lo < gamma < hi) else gamma


def entropy_min_seq(g: Gauge, r, *, tol: float = 1e-8, max_iter: int = 100_000) -> np.ndarray:
    """Spectrum-level minimizer ``y`` on the positive unit sphere of ``g``.

    Coordinates where ``r_j = 0`` are frozen at 0 (they do not enter the
    objective, and spending norm budget on them is never optimal).  The
    output is equivariant under simultaneous permutation with ``r``.
    """
    y, _, _ = _solve_seq(g, r, tol, max_iter)
    return y


def _solve_seq(g: Gauge, r, tol: float, max_iter: int):
    prob = _check_probability(r)
    c = _require_solvable(g)
    if isinstance(c, Lp) and c.p == 1.0:
        return prob.copy(), 0.0, 0
    supp = prob > 0.0
    y = np.zeros_like(prob)
    ys, residual, iters = _solve_support(c, prob[supp], tol, max_iter)
    y[supp] = ys
    return y, residual, iters


# ---------------------------------------------------------------------------
# matrix-level wrappers


@dataclass(frozen=True)
class EntropyMinReport:
    """Minimizer with its optimality certificate.

    ``fixed_point_residual`` is ``‖ |J(sigma)| sigma - rho ‖_1`` evaluated at
    the spectral level — the l1 defect of the stationarity identity.
    """

    minimizer: np.ndarray
    objective: float
    fixed_point_residual: float
    iterations: int

    def to_json(self) -> dict:
        return {
            "minimizer": matrix_to_json(self.minimizer),
            "objective": self.objective,
            "fixed_point_residual": self.fixed_point_residual,
            "iterations": self.iterations,
        }


def entropy_min_mat(
    g: Gauge, rho, *, tol: float = 1e-8, max_iter: int = 100_000
) -> EntropyMinReport:
    """Minimize ``D(rho ‖ ·)`` over PSD matrices on the unit sphere of ``g``.

    The minimizer shares the eigenbasis of ``rho``; degenerate eigenvalues
    are safe because the spectral solution is a symmetric function of the
    spectrum (equal inputs get equal outputs, so the basis ambiguity inside
    an eigenspace cancels in the assembled matrix).
    """
    lam, w = check_state(rho)
    r = lam / lam.sum()
    y, residual, iters = _solve_seq(g, r, tol, max_iter)
    sigma = (w * y) @ w.conj().T
    sigma = 0.5 * (sigma + sigma.conj().T)
    pos = r > 0.0
    objective = float(np.sum(r[pos] * np.log(r[pos] / y[pos])))
    return EntropyMinReport(
        minimizer=sigma,
        objective=objective,
        fixed_point_residual=residual,
        iterations=iters,
    )


def entropy_min_general(g: Gauge, a, *, tol: float = 1e-8, max_iter: int = 100_000) -> np.ndarray:
    """Polar extension of the minimization to trace-norm-one matrices.

    Writes ``a = u |a|`` and returns ``u @ entropy_min_mat(g, |a|)``: the
    modulus is a state (its trace is the trace norm of ``a``), and the
    minimizer's support stays inside the support of ``|a|``, so the partial
    isometry loses nothing.
    """
    m = as_matrix(a)
    tn = trace_norm(m)
    if abs(tn - 1.0) > 1e-9:
        raise NotUnitTraceNorm(f"input must have unit trace norm, got {tn!r}")
    parts = polar(m)
    rho = parts.modulus / float(np.trace(parts.modulus).real)
    rep = entropy_min_mat(g, rho, tol=tol, max_iter=max_iter)
    return parts.isometry @ rep.minimizer


def norming_state(g: Gauge, a) -> np.ndarray:
    """The trace-norm-one matrix ``|J(a)| a`` attached to unit-norm ``a``.

    For PSD ``a`` this is ``J(a) a`` (both factors share an eigenbasis and
    the product has trace ``‖a‖² = 1``); in general ``a = u |a|`` gives
    ``u J(|a|) |a|``.  Inverse of the entropy minimization between spheres.
    """
    m = as_matrix(a)
    nrm = norm_ui(g, m)
    if abs(nrm - 1.0) > 1e-9:
        raise NotUnitNorm(f"input must have unit gauge norm, got {nrm!r}")
    if _is_psd(m):
        lam, w = eigh_psd(m)
        j = duality_map_seq(g, lam)
        out = (w * (j * lam)) @ w.conj().T
        return 0.5 * (out + out.conj().T)
    parts = polar(m)
    lam, w = eigh_psd(parts.modulus)
    j = duality_map_seq(g, lam)
    core = (w * (j * lam)) @ w.conj().T
    return parts.isometry @ (0.5 * (core + core.conj().T))


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass(frozen=True)
class GridSearchReport:
    """Grid-search minimizer with its resolution.

    ``pitch`` is the measured trace-norm distance between the winning grid
    point and its refined-grid neighbours — the oracle's confidence radius.
    """

    minimizer: np.ndarray
    objective: float
    pitch: float


def entropy_min_bruteforce(g: Gauge, rho, *, base_steps: int | None = None) -> GridSearchReport:
    """Dense grid search over the positive unit sphere (diagonal, dim <= 3).

    Deliberately independent of the solver: parameterizes rays through the
    probability simplex, normalizes each onto the gauge sphere, scans a base
    grid, then runs one refinement pass around the winner.
    """
    m = as_matrix(rho)
    n = m.shape[0]
    if n > 3:
        raise DimensionTooLarge(f"grid oracle supports dim <= 3, got {n}")
    off = m - np.diag(np.diag(m))
    if np.abs(off).max() > 1e-12:
        raise NotState("grid oracle needs a diagonal density matrix")
    r = _check_probability(np.diag(m).real)
    supp = np.flatnonzero(r > 0.0)
    rs = r[supp]
    msz = supp.size

    if msz == 1:
        y = np.zeros(n)
        y[supp[0]] = 1.0
        return GridSearchReport(minimizer=np.diag(y).astype(complex), objective=0.0, pitch=1e-12)

    def objective_at(w: np.ndarray):
        nw = eval_gauge(g, w)
        if nw <= 0.0:
            return math.inf, None
        y = w / nw
        if np.any((rs > 0.0) & (y <= 0.0)):
            return math.inf, y
        return float(np.sum(rs * np.log(rs / y))), y

    def scan(points):
        best = (math.inf, None, None)
        for w in points:
            val, y = objective_at(w)
            if val < best[0]:
                best = (val, y, w)
        return best

    if msz == 2:
        k1 = base_steps or 2000
        base = [np.array([t, 1.0 - t]) for t in np.linspace(0.0, 1.0, k1 + 1)]
        val, y, w = scan(base)
        h = 1.0 / k1
        t0 = float(w[0])
        fine_t = np.linspace(max(0.0, t0 - h), min(1.0, t0 + h), 2001)
        refined = [np.array([t, 1.0 - t]) for t in fine_t]
        val, y, w = min((scan(refined), (val, y, w)), key=lambda b: b[0])
        step = float(fine_t[1] - fine_t[0])
        neighbours = [np.array([t, 1.0 - t]) for t in (w[0] - step, w[0] + step) if 0.0 <= t <= 1.0]
    else:
        k1 = base_steps or 60
        base = [
            np.array([i, j, k1 - i - j]) / k1
            for i in range(k1 + 1)
            for j in range(k1 + 1 - i)
        ]
        val, y, w = scan(base)
        h = 1.0 / k1
        axis = np.linspace(-h, h, 81)
        refined = []
        for da in axis:
            for db in axis:
                cand = np.array([w[0] + da, w[1] + db, 0.0])
                cand[2] = 1.0 - cand[0] - cand[1]
                if np.all(cand >= 0.0):
                    refined.append(cand)
        val, y, w = min((scan(refined), (val, y, w)), key=lambda b: b[0])
        step = float(axis[1] - axis[0])
        neighbours = []
        for delta in (
            (step, 0.0),
            (-step, 0.0),
            (0.0, step),
            (0.0, -step),
        ):
            cand = np.array([w[0] + delta[0], w[1] + delta[1], 0.0])
            cand[2] = 1.0 - cand[0] - cand[1]
            if np.all(cand >= 0.0):
                neighbours.append(cand)

    pitch = 1e-12
    for nb in neighbours:
        _, yn = objective_at(nb)
        if yn is not None:
            pitch = max(pitch, float(np.abs(yn - y).sum()))
    y_full = np.zeros(n)
    y_full[supp] = y
    return GridSearchReport(
        minimizer=np.diag(y_full).astype(complex),
        objective=val,
        pitch=pitch,
    )
