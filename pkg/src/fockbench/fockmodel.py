"""Two-sector Fock-space membership model: evaluation, fitting, realization.

A conjunction weight is modeled as a two-sector superposition

    mu(X and Y) = m2 * alpha + (1 - m2) * ((mu(X) + mu(Y))/2 + beta * cos(phi))

where the first term is the "logical" sector (a joint event with probability
alpha evaluated on an entangled two-particle state) and the second the
"emergent" sector (a superposition state of the two concept vectors, with
interference beta*cos(phi)).  Per conjunction the parameters are bounded by
m2, alpha in [0, 1], beta in [-1, 1], phi in [0, 180] degrees; across the
four conjunctions of a record the logical-sector weights must satisfy
sum(alpha) = 1.

The interference term is additionally constrained by what orthonormal concept
vectors can realize: writing the membership projector M, Cauchy-Schwarz on
M|X>, M|Y> and on their complements gives

    |Re<X|M|Y>| <= min(sqrt(mu_x * mu_y), sqrt((1-mu_x) * (1-mu_y)))

(:func:`interference_bound`).  The fit enforces this bound so every fitted
record is realizable by explicit vectors (:func:`realize_vectors`).

Fitting is exact and deterministic rather than stochastic: per conjunction,
for a given alpha, the achievable model values form the interval
[min(alpha, s-b), max(alpha, s+b)] with s the average of the two single
weights and b the interference bound, so the lexicographic objective
(1: minimize the maximum residual, 2: minimize total m2, 3: minimize total
|beta|) reduces to a one-dimensional bisection over the residual allowance
followed by a water-filling allocation of the alpha budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .domain import (
    EXPERIMENTS,
    Experiment,
    MembershipRecord,
    RawResponse,
    Target,
)

CONJUNCTION_KEYS = ("AB", "ABp", "ApB", "ApBp")

_RANGE_EPS = 1e-12


class EvalResult(NamedTuple):
    """A model membership weight plus a validity flag.

    ``in_range`` is False when the value falls outside [0, 1]; out-of-range
    values are flagged, never clamped, since they indicate an invalid
    parameter set rather than a probability.
    """

    value: float
    in_range: bool


def _flagged(value: float) -> EvalResult:
    return EvalResult(value, -_RANGE_EPS <= value <= 1.0 + _RANGE_EPS)


class DegenerateParametersError(ValueError):
    """phi is undefined: the interference term has no effect (m2 = 1 or beta = 0)."""


class InfeasibleInterferenceError(ValueError):
    """No phi reproduces the data: the required cos(phi) falls outside [-1, 1]."""

    def __init__(self, quotient: float) -> None:
        self.quotient = quotient
        super().__init__(
            f"infeasible interference: required cos(phi) = {quotient:.6g} outside [-1, 1]"
        )


@dataclass(frozen=True, slots=True)
class ConjunctionParams:
    """Model parameters of one conjunction: sector weight, logical probability,
    interference amplitude and phase (degrees)."""

    m2: float
    alpha: float
    beta: float
    phi_deg: float

    def __post_init__(self) -> None:
        eps = 1e-9
        if not -eps <= self.m2 <= 1.0 + eps:
            raise ValueError(f"m2 = {self.m2!r} outside [0, 1]")
        if not -eps <= self.alpha <= 1.0 + eps:
            raise ValueError(f"alpha = {self.alpha!r} outside [0, 1]")
        if not -1.0 - eps <= self.beta <= 1.0 + eps:
            raise ValueError(f"beta = {self.beta!r} outside [-1, 1]")
        if not -eps <= self.phi_deg <= 180.0 + eps:
            raise ValueError(f"phi_deg = {self.phi_deg!r} outside [0, 180]")

    def interference(self) -> float:
        """The realized interference value beta * cos(phi)."""
        return self.beta * math.cos(math.radians(self.phi_deg))


@dataclass(frozen=True, slots=True)
class FitConfig:
    """Fit settings: residual tolerance, numeric search budget, RNG seed.

    The fit itself reduces to a closed form, so ``budget`` and ``seed`` do
    not influence it; they cap the realization refinement and seed response
    sampling, keeping whole runs reproducible from one config.
    """

    fit_tol: float = 5e-3
    budget: int = 10_000
    seed: int = 0


@dataclass(frozen=True)
class FockFit:
    """Fitted parameters for the four conjunctions of one record.

    ``residuals`` are signed (model - data) per conjunction; ``max_residual``
    is the fit's achieved minimax value.  The logical-sector weights satisfy
    sum(alpha) = 1.
    """

    params: dict[str, ConjunctionParams]
    residuals: dict[str, float]
    feasible: bool

    def __post_init__(self) -> None:
        if set(self.params) != set(CONJUNCTION_KEYS):
            raise ValueError(f"params must cover {CONJUNCTION_KEYS}, got {set(self.params)}")
        total = sum(p.alpha for p in self.params.values())
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"alpha weights must sum to 1, got {total!r}")

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.residuals.values())

    def alpha_sum(self) -> float:
        return sum(p.alpha for p in self.params.values())


class NoFockRepresentationError(ValueError):
    """No parameter set fits within tolerance; carries the best attempt."""

    def __init__(self, best: FockFit, fit_tol: float) -> None:
        self.best = best
        self.fit_tol = fit_tol
        super().__init__(
            "no Fock representation found: best max |residual| = "
            f"{best.max_residual:.6g} > fit_tol = {fit_tol:.6g}"
        )


def eval_sector1(mu_x: float, mu_y: float, beta: float, phi_deg: float) -> EvalResult:
    """Emergent-sector weight: average of the singles plus interference."""
    value = 0.5 * (mu_x + mu_y) + beta * math.cos(math.radians(phi_deg))
    return _flagged(value)


def eval_fock(params: ConjunctionParams, mu_x: float, mu_y: float) -> EvalResult:
    """Full two-sector weight: m2-weighted mix of logical and emergent sectors."""
    sector1 = eval_sector1(mu_x, mu_y, params.beta, params.phi_deg).value
    value = params.m2 * params.alpha + (1.0 - params.m2) * sector1
    return _flagged(value)


def solve_phi(
    mu_xy: float, mu_x: float, mu_y: float, m2: float, alpha: float, beta: float
) -> float:
    """The phase (degrees) making the model reproduce mu_xy exactly.

    Inverts the model for cos(phi) given the remaining parameters.  Raises
    :class:`DegenerateParametersError` when the interference term is inert
    (m2 = 1 or beta = 0) and :class:`InfeasibleInterferenceError` when the
    required cos(phi) exceeds 1 in magnitude.
    """
    if m2 >= 1.0 or beta == 0.0:
        raise DegenerateParametersError(
            f"phi undefined for m2 = {m2!r}, beta = {beta!r}: interference term is inert"
        )
    s = 0.5 * (mu_x + mu_y)
    quotient = (mu_xy - s - m2 * (alpha - s)) / ((1.0 - m2) * beta)
    if abs(quotient) > 1.0:
        if abs(quotient) <= 1.0 + 1e-12:
            quotient = math.copysign(1.0, quotient)
        else:
            raise InfeasibleInterferenceError(quotient)
    return math.degrees(math.acos(quotient))


def interference_bound(mu_x: float, mu_y: float) -> float:
    """Largest |Re<X|M|Y>| realizable by orthonormal vectors with the given weights."""
    return min(
        math.sqrt(mu_x * mu_y),
        math.sqrt((1.0 - mu_x) * (1.0 - mu_y)),
    )


# ---------------------------------------------------------------------------
# Fitting
# ---------------------------------------------------------------------------

_SECTOR1_ONLY = "sector1"   # data reachable without the logical sector
_PULL_UP = "up"             # logical sector must raise the value (alpha large)
_PULL_DOWN = "down"         # logical sector must lower the value (alpha small)


@dataclass
class _Cell:
    key: str
    mu_x: float
    mu_y: float
    mu_xy: float
    s: float        # (mu_x + mu_y) / 2
    b: float        # interference bound
    kind: str = _SECTOR1_ONLY
    v: float = 0.0  # model value this cell will produce
    alpha: float = 0.0


def _classify(cell: _Cell, rho: float) -> None:
    """Pick the cheapest model value within |value - data| <= rho."""
    w_lo = max(0.0, cell.mu_xy - rho)
    w_hi = min(1.0, cell.mu_xy + rho)
    s_lo, s_hi = cell.s - cell.b, cell.s + cell.b
    if s_lo <= w_hi and s_hi >= w_lo:
        cell.kind = _SECTOR1_ONLY
        cell.v = min(max(cell.mu_xy, s_lo), s_hi)
    elif s_lo > w_hi:
        cell.kind = _PULL_DOWN
        cell.v = w_hi
    else:
        cell.kind = _PULL_UP
        cell.v = w_lo


def _alpha_box(cell: _Cell) -> tuple[float, float]:
    """Feasible alpha interval once the cell's kind and value are fixed."""
    if cell.kind == _PULL_UP:
        return (cell.v, 1.0)   # alpha below the target would force m2 > 1
    if cell.kind == _PULL_DOWN:
        return (0.0, cell.v)
    return (0.0, 1.0)


def _min_allowance(cells: list[_Cell]) -> float:
    """Smallest residual allowance at which an alpha allocation exists.

    An allocation summing to 1 exists iff sum of the alpha lower bounds is
    <= 1 (binding when pull-up cells demand too much budget) and the sum of
    upper bounds is >= 1 (binding when pull-down cells leave too little).
    Both sums are piecewise linear and monotone in the allowance, so the
    crossing is found exactly, segment by segment.
    """
    # (data value, allowance at which the cell stops needing the logical sector)
    ups = sorted(
        ((c.mu_xy, (c.mu_xy - c.s) - c.b) for c in cells if c.mu_xy - c.s > c.b),
        key=lambda item: item[1],
    )
    downs = sorted(
        ((c.mu_xy, (c.s - c.mu_xy) - c.b) for c in cells if c.s - c.mu_xy > c.b),
        key=lambda item: item[1],
    )

    # Smallest rho with sum over active pull-up cells of (mu - rho) <= 1.
    rho_up = 0.0
    active_sum = sum(mu for mu, _ in ups)
    active = len(ups)
    start = 0.0
    for idx in range(len(ups) + 1):
        end = ups[idx][1] if idx < len(ups) else math.inf
        if active_sum - active * start <= 1.0:
            rho_up = start
            break
        if active and active_sum - active * end <= 1.0:
            rho_up = (active_sum - 1.0) / active
            break
        if idx < len(ups):
            active_sum -= ups[idx][0]
            active -= 1
            start = end

    # Smallest rho with 4 - sum over active pull-down cells of (1 - mu - rho) >= 1.
    rho_down = 0.0
    short_sum = sum(1.0 - mu for mu, _ in downs)
    active = len(downs)
    start = 0.0
    for idx in range(len(downs) + 1):
        end = downs[idx][1] if idx < len(downs) else math.inf
        if 4.0 - (short_sum - active * start) >= 1.0:
            rho_down = start
            break
        if active and 4.0 - (short_sum - active * end) >= 1.0:
            rho_down = (short_sum - 3.0) / active
            break
        if idx < len(downs):
            short_sum -= 1.0 - downs[idx][0]
            active -= 1
            start = end

    return max(rho_up, rho_down)


def _solve_clipped_linear(specs: list[tuple[float, float, float, float]], budget: float) -> list[float]:
    """Solve sum_i clip(k_i + g_i * t, lo_i, hi_i) = budget for t; return the alphas.

    Each g_i > 0, so the sum is continuous, piecewise linear and
    non-decreasing in t; the exact solution is found by scanning the sorted
    clip breakpoints.  Callers guarantee sum(lo) <= budget <= sum(hi).
    """
    def value(i: int, t: float) -> float:
        k, g, lo, hi = specs[i]
        return min(max(k + g * t, lo), hi)

    def total(t: float) -> float:
        return sum(value(i, t) for i in range(len(specs)))

    points = sorted(
        {(lo - k) / g for k, g, lo, _ in specs} | {(hi - k) / g for k, g, _, hi in specs}
    )
    t_solution = points[-1]
    prev = points[0]
    if total(prev) >= budget:
        t_solution = prev
    else:
        for point in points[1:]:
            t_prev, t_here = total(prev), total(point)
            if t_here >= budget:
                frac = 0.0 if t_here == t_prev else (budget - t_prev) / (t_here - t_prev)
                t_solution = prev + frac * (point - prev)
                break
            prev = point
    return [value(i, t_solution) for i in range(len(specs))]


def _allocate_alpha(cells: list[_Cell]) -> None:
    """Distribute the unit alpha budget, minimizing total m2.

    Pull-up cells get budget first (their m2 falls as alpha grows), then
    sector-1-only cells absorb slack (their alpha is inert), and only then do
    pull-down cells take any remainder (their m2 grows with alpha).  Within a
    group the split equalizes the marginal m2 change (KKT water-filling on a
    clipped-linear system, solved exactly).
    """
    up = [c for c in cells if c.kind == _PULL_UP]
    inert = [c for c in cells if c.kind == _SECTOR1_ONLY]
    down = [c for c in cells if c.kind == _PULL_DOWN]

    for cell in cells:
        cell.alpha = _alpha_box(cell)[0]
    deficit = 1.0 - sum(c.alpha for c in cells)

    if deficit > 0.0 and up:
        # m2 = (v - k)/(alpha - k) with k = s + b; KKT stationarity gives
        # alpha = k + sqrt(v - k) * t clipped to [v, 1].
        share = min(deficit, sum(1.0 - c.v for c in up))
        if share > 0.0:
            specs = [
                (c.s + c.b, math.sqrt(max(c.v - c.s - c.b, 0.0)) or 1e-300, c.v, 1.0)
                for c in up
            ]
            for cell, alpha in zip(up, _solve_clipped_linear(specs, sum(c.v for c in up) + share)):
                cell.alpha = alpha
            deficit -= share

    if deficit > 0.0 and inert:
        for cell in inert:
            take = min(deficit, 1.0)
            cell.alpha = take
            deficit -= take
            if deficit <= 0.0:
                break

    if deficit > 1e-15 and down:
        # m2 = (k - v)/(k - alpha) with k = s - b; stationarity gives
        # alpha = k + sqrt(k - v) * t (t <= 0) clipped to [0, v].
        specs = [
            (c.s - c.b, math.sqrt(max(c.s - c.b - c.v, 0.0)) or 1e-300, 0.0, c.v)
            for c in down
        ]
        budget = sum(c.alpha for c in down) + deficit
        for cell, alpha in zip(down, _solve_clipped_linear(specs, budget)):
            cell.alpha = alpha

    # Final exact correction: push any float slack into a cell with room.
    diff = 1.0 - sum(c.alpha for c in cells)
    if diff != 0.0:
        for cell in cells:
            lo, hi = _alpha_box(cell)
            fixed = min(max(cell.alpha + diff, lo), hi)
            diff -= fixed - cell.alpha
            cell.alpha = fixed
            if diff == 0.0:
                break


def _cell_params(cell: _Cell) -> ConjunctionParams:
    if cell.kind == _SECTOR1_ONLY:
        m2 = 0.0
        w = cell.v - cell.s
    elif cell.kind == _PULL_UP:
        k = cell.s + cell.b
        m2 = min(max((cell.v - k) / (cell.alpha - k), 0.0), 1.0)
        w = cell.b
    else:
        k = cell.s - cell.b
        m2 = min(max((k - cell.v) / (k - cell.alpha), 0.0), 1.0)
        w = -cell.b
    if m2 > 1.0 - 1e-12 or abs(w) < 1e-15:
        # interference inert or absent: smallest |beta| is 0, phase fixed at 90
        return ConjunctionParams(m2=m2, alpha=cell.alpha, beta=0.0, phi_deg=90.0)
    return ConjunctionParams(m2=m2, alpha=cell.alpha, beta=w, phi_deg=0.0)


def _fit_with_caps(record: MembershipRecord, caps: list[float], fit_tol: float) -> FockFit:
    """One lexicographic fit pass with given per-conjunction interference caps."""
    cells = [
        _Cell(key=key, mu_x=mu_x, mu_y=mu_y, mu_xy=mu_xy,
              s=0.5 * (mu_x + mu_y), b=cap)
        for (key, (mu_x, mu_y), mu_xy, cap) in zip(
            CONJUNCTION_KEYS, record.conjunction_members(), record.conjunctions(), caps
        )
    ]
    rho = _min_allowance(cells)
    if rho > 0.0:
        rho += 1e-12  # keep the allocation strictly inside the feasible set
    for cell in cells:
        _classify(cell, rho)
    _allocate_alpha(cells)

    params: dict[str, ConjunctionParams] = {}
    residuals: dict[str, float] = {}
    for cell in cells:
        p = _cell_params(cell)
        params[cell.key] = p
        residuals[cell.key] = eval_fock(p, cell.mu_x, cell.mu_y).value - cell.mu_xy
    feasible = max(abs(r) for r in residuals.values()) <= fit_tol
    return FockFit(params=params, residuals=residuals, feasible=feasible)


def _joint_margin(record: MembershipRecord, params: dict[str, ConjunctionParams]) -> float:
    """Gram-feasibility margin of a parameter set's interference targets."""
    mus = np.array([record.mu_a, record.mu_ap, record.mu_b, record.mu_bp])
    w = {key: params[key].interference() for key in CONJUNCTION_KEYS}
    margin, _, _ = _search_free_overlaps(mus, w)
    return margin


_MARGIN_EPS = 1e-11


def fit_exemplar(record: MembershipRecord, config: FitConfig | None = None) -> FockFit:
    """Fit the two-sector model to one record's four conjunction weights.

    Minimizes, lexicographically: the maximum |model - data| residual, then
    the total logical-sector weight (preferring emergence), then the total
    interference amplitude.  The fitted interference values are kept jointly
    realizable: if the preferred targets admit no orthonormal-vector
    realization (the pairwise Cauchy-Schwarz bounds do not imply joint Gram
    feasibility), the interference caps are scaled down by bisection until
    they do, trading interference for logical-sector weight.  Deterministic:
    no randomness enters the search.

    Raises :class:`NoFockRepresentationError` (carrying the minimax-optimal
    attempt) when no parameter set reaches ``config.fit_tol``; with the
    global alpha budget this is a legitimate outcome, not a search failure.
    """
    config = config or FitConfig()
    bounds = [
        interference_bound(mu_x, mu_y) for mu_x, mu_y in record.conjunction_members()
    ]

    fit = _fit_with_caps(record, bounds, config.fit_tol)
    if _joint_margin(record, fit.params) < -_MARGIN_EPS:
        # Bisection on the cap scale: zero interference is always realizable.
        lo, hi = 0.0, 1.0
        fit = _fit_with_caps(record, [0.0] * 4, config.fit_tol)
        for _ in range(12):
            mid = 0.5 * (lo + hi)
            candidate = _fit_with_caps(record, [mid * b for b in bounds], config.fit_tol)
            if _joint_margin(record, candidate.params) >= -_MARGIN_EPS:
                lo, fit = mid, candidate
            else:
                hi = mid

    if not fit.feasible:
        raise NoFockRepresentationError(fit, config.fit_tol)
    return fit


# ---------------------------------------------------------------------------
# Explicit Hilbert-space realization
# ---------------------------------------------------------------------------

DIM = 8
_M_RANGE = tuple(range(4, 8))  # membership projector spans coordinates 5..8 (1-based)

#: Diagonal membership projector on the 8-dimensional concept space.
MEMBERSHIP_PROJECTOR = np.diag([0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0])

# vec_C carries one amplitude per product block; representative (i, j)
# coordinates, 0-based, for M(x)M, M(x)(1-M), (1-M)(x)M, (1-M)(x)(1-M).
_BLOCK_COORDS = {"AB": (4, 4), "ABp": (4, 0), "ApB": (0, 4), "ApBp": (0, 0)}


class NoRealizationError(ValueError):
    """No orthonormal vector set meets the interference targets; carries the margin."""

    def __init__(self, margin: float) -> None:
        self.margin = margin
        super().__init__(
            f"no realization found: best Gram-feasibility margin = {margin:.3e} < 0"
        )


@dataclass(frozen=True)
class HilbertRealization:
    """Explicit vectors reproducing a fitted record's probabilities.

    Four orthonormal complex 8-vectors (one per concept) reproduce the single
    weights through <X|M|X> and the fitted interference through Re<X|M|Y>;
    the unit 64-vector reproduces the logical-sector probabilities through
    the four product projectors.
    """

    vec_a: np.ndarray
    vec_b: np.ndarray
    vec_ap: np.ndarray
    vec_bp: np.ndarray
    vec_c: np.ndarray
    projector: np.ndarray

    def concept_vectors(self) -> dict[str, np.ndarray]:
        return {"A": self.vec_a, "B": self.vec_b, "Ap": self.vec_ap, "Bp": self.vec_bp}

    def membership(self, concept: str) -> float:
        x = self.concept_vectors()[concept]
        return float(np.real(np.vdot(x, self.projector @ x)))

    def interference(self, concept_x: str, concept_y: str) -> float:
        x = self.concept_vectors()[concept_x]
        y = self.concept_vectors()[concept_y]
        return float(np.real(np.vdot(x, self.projector @ y)))

    def product_projector(self, key: str) -> np.ndarray:
        m = self.projector
        comp = np.eye(DIM) - m
        mx = m if key in ("AB", "ABp") else comp
        my = m if key in ("AB", "ApB") else comp
        return np.kron(mx, my)

    def logical_weight(self, key: str) -> float:
        proj = self.product_projector(key)
        return float(np.real(np.vdot(self.vec_c, proj @ self.vec_c)))


_CONCEPT_ORDER = ("A", "Ap", "B", "Bp")  # row order of the Gram matrix
_GRAM_SLOTS = {"AB": (0, 2), "ABp": (0, 3), "ApB": (1, 2), "ApBp": (1, 3)}


def _build_gram(mus: np.ndarray, w: dict[str, float], g: float, h: float) -> np.ndarray:
    gram = np.diag(mus).astype(float)
    gram[0, 1] = gram[1, 0] = g
    gram[2, 3] = gram[3, 2] = h
    for key, (i, j) in _GRAM_SLOTS.items():
        gram[i, j] = gram[j, i] = w[key]
    return gram


def _gram_margin(gram: np.ndarray) -> float:
    eig_g = np.linalg.eigvalsh(gram)
    eig_c = np.linalg.eigvalsh(np.eye(4) - gram)
    return float(min(eig_g[0], eig_c[0]))


def _batched_margins(mus: np.ndarray, w: dict[str, float],
                     gs: np.ndarray, hs: np.ndarray) -> np.ndarray:
    """PSD margins for many (g, h) candidates at once."""
    n = len(gs)
    grams = np.broadcast_to(_build_gram(mus, w, 0.0, 0.0), (n, 4, 4)).copy()
    grams[:, 0, 1] = grams[:, 1, 0] = gs
    grams[:, 2, 3] = grams[:, 3, 2] = hs
    low = np.linalg.eigvalsh(grams)[:, 0]
    high = np.linalg.eigvalsh(np.eye(4) - grams)[:, 0]
    return np.minimum(low, high)


def _search_free_overlaps(
    mus: np.ndarray,
    w: dict[str, float],
    grid: int = 21,
    step_floor: float = 1e-7,
    move_cap: int = 300,
    early_stop: float = 1e-9,
) -> tuple[float, float, float]:
    """Maximize the PSD margin over the two unconstrained Gram entries.

    The overlaps <A|M|A'> and <B|M|B'> carry no data constraint (no
    conjunction pairs them); they are free parameters chosen to make the Gram
    matrix doubly feasible (0 <= G <= I).  The margin (smallest eigenvalue of
    G and of I - G) is concave in (g, h), so a coarse grid plus accelerated
    compass search converges reliably.  Any returned margin is a certified
    lower bound on the true optimum: eigenvalues are evaluated exactly at the
    returned point.  Deterministic; stops early once comfortably feasible.
    """
    g_max = interference_bound(mus[0], mus[1])
    h_max = interference_bound(mus[2], mus[3])
    g_grid = np.linspace(-g_max, g_max, grid) if g_max > 0 else np.array([0.0])
    h_grid = np.linspace(-h_max, h_max, grid) if h_max > 0 else np.array([0.0])
    gg, hh = np.meshgrid(g_grid, h_grid, indexing="ij")
    margins = _batched_margins(mus, w, gg.ravel(), hh.ravel())
    best = int(np.argmax(margins))
    margin, g, h = float(margins[best]), float(gg.ravel()[best]), float(hh.ravel()[best])

    step = max(g_max, h_max, 1e-3) / max(grid - 1, 1)
    moves = 0
    while step > step_floor and moves < move_cap and margin < early_stop:
        cand_g = np.array([g + step, g - step, g, g])
        cand_h = np.array([h, h, h + step, h - step])
        cand = _batched_margins(mus, w, cand_g, cand_h)
        best = int(np.argmax(cand))
        if cand[best] > margin:
            margin, g, h = float(cand[best]), float(cand_g[best]), float(cand_h[best])
            step *= 2.0
            moves += 1
        else:
            step *= 0.5
    return margin, g, h


def _factor_psd(matrix: np.ndarray) -> np.ndarray:
    """Rows of the returned array are vectors whose Gram matrix is ``matrix``."""
    eigval, eigvec = np.linalg.eigh(matrix)
    eigval = np.clip(eigval, 0.0, None)
    return eigvec * np.sqrt(eigval)


def realize_vectors(
    record: MembershipRecord, fit: FockFit, margin_tol: float = 1e-9
) -> HilbertRealization:
    """Construct explicit vectors realizing a fitted record.

    Splits each concept vector into its projector part (coordinates 5..8) and
    complement part (1..4).  The required part-wise inner products form two
    coupled 4x4 Gram matrices G and I - G, where G collects the projector
    parts: diagonal = single weights, conjunction slots = fitted interference
    values, and the two remaining slots are free.  Once feasible free entries
    are found, factoring G and I - G yields the vectors directly; the
    construction is exact up to eigendecomposition roundoff, with no random
    restarts.  The 64-vector places one amplitude sqrt(alpha) inside each
    product-projector block.
    """
    mus = np.array([record.mu_a, record.mu_ap, record.mu_b, record.mu_bp])
    w = {key: fit.params[key].interference() for key in CONJUNCTION_KEYS}
    margin, g, h = _search_free_overlaps(mus, w)
    if margin < -margin_tol:
        raise NoRealizationError(margin)

    gram = _build_gram(mus, w, g, h)
    eigval, eigvec = np.linalg.eigh(gram)
    gram = (eigvec * np.clip(eigval, 0.0, 1.0)) @ eigvec.T  # snap to 0 <= G <= I
    u = _factor_psd(gram)                 # projector parts, one row per concept
    v = _factor_psd(np.eye(4) - gram)     # complement parts

    vectors = {}
    for row, concept in enumerate(_CONCEPT_ORDER):
        vec = np.zeros(DIM, dtype=complex)
        vec[:4] = v[row]
        vec[4:] = u[row]
        vectors[concept] = vec

    vec_c = np.zeros(DIM * DIM, dtype=complex)
    for key, (i, j) in _BLOCK_COORDS.items():
        vec_c[DIM * i + j] = math.sqrt(max(fit.params[key].alpha, 0.0))

    return HilbertRealization(
        vec_a=vectors["A"],
        vec_b=vectors["B"],
        vec_ap=vectors["Ap"],
        vec_bp=vectors["Bp"],
        vec_c=vec_c,
        projector=MEMBERSHIP_PROJECTOR.copy(),
    )


# ---------------------------------------------------------------------------
# Synthetic response sampling
# ---------------------------------------------------------------------------

# Per experiment, the record fields feeding targets X, Y, XY.
_EXPERIMENT_CELLS: dict[Experiment, tuple[str, str, str]] = {
    Experiment.AB: ("mu_a", "mu_b", "mu_ab"),
    Experiment.ABn: ("mu_a", "mu_bp", "mu_abp"),
    Experiment.AnB: ("mu_ap", "mu_b", "mu_apb"),
    Experiment.AnBn: ("mu_ap", "mu_bp", "mu_apbp"),
}

_EXPERIMENT_TO_KEY = {
    Experiment.AB: "AB",
    Experiment.ABn: "ABp",
    Experiment.AnB: "ApB",
    Experiment.AnBn: "ApBp",
}


def sample_responses(
    record: MembershipRecord,
    n_subjects: int,
    seed: int = 0,
    fit: FockFit | None = None,
) -> list[RawResponse]:
    """Draw synthetic subject responses whose aggregate converges to the record.

    Each subject's membership judgement per cell is an independent Bernoulli
    draw at that cell's weight, emitted as rating +2 (member) or -2
    (non-member).  With ``fit`` given, conjunction cells are sampled at the
    model value instead of the recorded weight.  Fixed seed, fixed output
    order: rerunning reproduces identical responses.
    """
    if n_subjects < 1:
        raise ValueError(f"n_subjects must be >= 1, got {n_subjects}")
    rng = np.random.default_rng(seed)
    responses: list[RawResponse] = []
    for experiment in EXPERIMENTS:
        f_x, f_y, f_xy = _EXPERIMENT_CELLS[experiment]
        probs = {
            Target.FIRST: getattr(record, f_x),
            Target.SECOND: getattr(record, f_y),
            Target.CONJUNCTION: getattr(record, f_xy),
        }
        if fit is not None:
            key = _EXPERIMENT_TO_KEY[experiment]
            result = eval_fock(fit.params[key], probs[Target.FIRST], probs[Target.SECOND])
            if not result.in_range:
                raise ValueError(
                    f"model weight {result.value!r} for {key} outside [0, 1]; cannot sample"
                )
            probs[Target.CONJUNCTION] = min(max(result.value, 0.0), 1.0)
        for target in (Target.FIRST, Target.SECOND, Target.CONJUNCTION):
            hits = rng.random(n_subjects) < probs[target]
            for idx, hit in enumerate(hits):
                responses.append(
                    RawResponse(
                        subject_id=f"s{idx + 1:05d}",
                        pair_id=record.pair_id,
                        experiment=experiment,
                        target=target,
                        exemplar_id=record.exemplar_id,
                        rating=2 if hit else -2,
                    )
                )
    return responses
