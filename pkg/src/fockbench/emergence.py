"""Emergent-reasoning decomposition of the deviation functionals.

Reading every conjunction weight as a pure superposition value,
mu(X and Y) = (mu(X) + mu(Y))/2 + interference, each deviation functional
splits into a constant plus a bracket of interference terms:

    I_X      = -1/2 - R_X,          e.g. R_A = (J_B + J_B')/2 + J_AB + J_AB'
    I_ABA'B' = -1   - R_total,      R_total = sum of all J_XY + sum of all J_X

with conjunction interferences J_XY = mu(X and Y) - (mu(X) + mu(Y))/2 and
single-concept interferences J_X = mu(X) - 1/2.  If the interferences offset
each other, every marginal deviation sits near -1/2 and the normalization
deviation near -1; the residual brackets R measure how far a record is from
that pure-emergence level.  All interference terms here are computed from the
data, not from a fitted model, so the decomposition is model-free.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classicality import DeviationVector, compute_deviations
from .domain import MembershipRecord

# Marginal deviations predicted by interference-free superposition alone.
PURE_EMERGENCE_PREDICTION = DeviationVector(-0.5, -0.5, -0.5, -0.5, -1.0)

SINGLE_KEYS = ("A", "B", "Ap", "Bp")
CONJUNCTION_KEYS = ("AB", "ABp", "ApB", "ApBp")


@dataclass(frozen=True, slots=True)
class EmergenceDecomposition:
    """Interference terms and residual brackets of one record.

    ``int_single`` maps A, B, Ap, Bp to mu(X) - 1/2 (each in [-0.5, 0.5]);
    ``int_xy`` maps the conjunctions to mu(X and Y) - (mu(X) + mu(Y))/2 (each
    in [-1, 1]).  The residuals satisfy R_X = -I_X - 1/2 and
    R_total = -I_ABA'B' - 1 exactly.
    """

    int_xy: dict[str, float]
    int_single: dict[str, float]
    residual_a: float
    residual_b: float
    residual_ap: float
    residual_bp: float
    residual_total: float


@dataclass(frozen=True, slots=True)
class EmergencePrediction:
    """Pure-emergence prediction next to the record's actual deviations."""

    predicted: DeviationVector
    actual: DeviationVector
    gaps: DeviationVector  # actual - predicted, componentwise


def sector1_interference(mu_x: float, mu_y: float, mu_xy: float) -> float:
    """Interference a pure superposition state would need to produce mu_xy.

    Returns mu(X and Y) - (mu(X) + mu(Y))/2, the value Re<X|M|Y> must take
    when the conjunction is modeled by the superposition state alone.
    """
    return mu_xy - 0.5 * (mu_x + mu_y)


def decompose(record: MembershipRecord) -> EmergenceDecomposition:
    """All interference terms and residual brackets of a record."""
    int_single = {
        "A": record.mu_a - 0.5,
        "B": record.mu_b - 0.5,
        "Ap": record.mu_ap - 0.5,
        "Bp": record.mu_bp - 0.5,
    }
    int_xy = {
        key: sector1_interference(mu_x, mu_y, mu_xy)
        for key, (mu_x, mu_y), mu_xy in zip(
            CONJUNCTION_KEYS, record.conjunction_members(), record.conjunctions()
        )
    }
    return EmergenceDecomposition(
        int_xy=int_xy,
        int_single=int_single,
        residual_a=0.5 * (int_single["B"] + int_single["Bp"]) + int_xy["AB"] + int_xy["ABp"],
        residual_b=0.5 * (int_single["A"] + int_single["Ap"]) + int_xy["AB"] + int_xy["ApB"],
        residual_ap=0.5 * (int_single["B"] + int_single["Bp"]) + int_xy["ApBp"] + int_xy["ApB"],
        residual_bp=0.5 * (int_single["A"] + int_single["Ap"]) + int_xy["ApBp"] + int_xy["ABp"],
        residual_total=sum(int_xy.values()) + sum(int_single.values()),
    )


def emergence_prediction(record: MembershipRecord) -> EmergencePrediction:
    """Compare a record's deviations against the constant pure-emergence level."""
    actual = compute_deviations(record)
    predicted = PURE_EMERGENCE_PREDICTION
    gaps = DeviationVector(
        *(a - p for a, p in zip(actual.as_tuple(), predicted.as_tuple()))
    )
    return EmergencePrediction(predicted=predicted, actual=actual, gaps=gaps)
