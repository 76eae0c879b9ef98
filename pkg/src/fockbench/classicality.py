"""Classicality conditions for conjunction/negation membership data.

Eight membership weights admit a single classical (Kolmogorovian) probability
model exactly when the four marginal laws

    mu(A)  = mu(A and B)  + mu(A and B')
    mu(B)  = mu(A and B)  + mu(A' and B)
    mu(A') = mu(A' and B') + mu(A' and B)
    mu(B') = mu(A' and B') + mu(A and B')

hold and the four conjunction weights sum to 1.  The five signed residuals of
these conditions are the deviation functionals; all five vanish iff the data
are classical, in which case the conjunction weights themselves form the
probability measure on the four Boolean atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .domain import MembershipRecord

COMPONENT_KEYS = ("A", "B", "Ap", "Bp", "ABApBp")
COMPONENT_LABELS = ("I_A", "I_B", "I_A'", "I_B'", "I_ABA'B'")


@dataclass(frozen=True, slots=True)
class DeviationVector:
    """The five classicality residuals of one exemplar.

    ``i_a`` .. ``i_bp`` are the marginal-law residuals for A, B, A', B';
    ``i_abapbp`` is the normalization residual 1 - (sum of conjunction
    weights).  For weights in [0, 1] the marginal residuals lie in [-2, 1]
    and the normalization residual in [-3, 1].
    """

    i_a: float
    i_b: float
    i_ap: float
    i_bp: float
    i_abapbp: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.i_a, self.i_b, self.i_ap, self.i_bp, self.i_abapbp)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(COMPONENT_KEYS, self.as_tuple()))

    def max_abs(self) -> float:
        return max(abs(v) for v in self.as_tuple())


@dataclass(frozen=True, slots=True)
class AtomMeasure:
    """A probability measure on the four atoms A^B, A^B', A'^B, A'^B'."""

    p_ab: float
    p_abp: float
    p_apb: float
    p_apbp: float

    def atoms(self) -> tuple[float, float, float, float]:
        return (self.p_ab, self.p_abp, self.p_apb, self.p_apbp)

    def total(self) -> float:
        return sum(self.atoms())

    # Event probabilities: each single concept is the union of two atoms.
    def mu_a(self) -> float:
        return self.p_ab + self.p_abp

    def mu_b(self) -> float:
        return self.p_ab + self.p_apb

    def mu_ap(self) -> float:
        return self.p_apb + self.p_apbp

    def mu_bp(self) -> float:
        return self.p_abp + self.p_apbp


class ClassicalityVerdict(NamedTuple):
    classical: bool
    deviations: DeviationVector


class NotRepresentableError(ValueError):
    """Raised when no classical measure reproduces the record; carries the residuals."""

    def __init__(self, deviations: DeviationVector, tol: float) -> None:
        self.deviations = deviations
        self.tol = tol
        worst = deviations.max_abs()
        super().__init__(
            f"no classical representation: max |deviation| = {worst:.6g} > tol = {tol:.6g}"
        )


def compute_deviations(record: MembershipRecord) -> DeviationVector:
    """Evaluate the five classicality residuals of a record."""
    return DeviationVector(
        i_a=record.mu_a - record.mu_ab - record.mu_abp,
        i_b=record.mu_b - record.mu_ab - record.mu_apb,
        i_ap=record.mu_ap - record.mu_apbp - record.mu_apb,
        i_bp=record.mu_bp - record.mu_apbp - record.mu_abp,
        i_abapbp=1.0 - record.mu_ab - record.mu_abp - record.mu_apb - record.mu_apbp,
    )


def is_classical(record: MembershipRecord, tol: float = 1e-9) -> ClassicalityVerdict:
    """Whether a record is classical within tolerance, plus its residuals."""
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol!r}")
    dev = compute_deviations(record)
    return ClassicalityVerdict(dev.max_abs() <= tol, dev)


def construct_measure(record: MembershipRecord, tol: float = 1e-9) -> AtomMeasure:
    """The atom measure representing a classical record.

    The measure is fully determined: each atom carries the corresponding
    conjunction weight.  Its event marginals then reproduce the four
    single-concept weights within the tolerance at which the record passed
    :func:`is_classical`.  Non-classical input raises
    :class:`NotRepresentableError` carrying the deviation vector.
    """
    verdict = is_classical(record, tol)
    if not verdict.classical:
        raise NotRepresentableError(verdict.deviations, tol)
    return AtomMeasure(record.mu_ab, record.mu_abp, record.mu_apb, record.mu_apbp)


def oracle_check(record: MembershipRecord, tol: float = 1e-9) -> bool:
    """Independent feasibility check for a classical measure.

    Re-derives representability from the measure side instead of the residual
    side: on the 4-atom Boolean algebra any candidate measure is pinned to the
    conjunction weights (each conjunction IS an atom), so a representing
    measure exists iff that candidate is a probability measure whose event
    sums reproduce all eight weights.  Shares no code with
    :func:`compute_deviations`.
    """
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol!r}")
    candidate = AtomMeasure(record.mu_ab, record.mu_abp, record.mu_apb, record.mu_apbp)
    if any(p < -tol for p in candidate.atoms()):
        return False
    if abs(candidate.total() - 1.0) > tol:
        return False
    checks = (
        (candidate.mu_a(), record.mu_a),
        (candidate.mu_b(), record.mu_b),
        (candidate.mu_ap(), record.mu_ap),
        (candidate.mu_bp(), record.mu_bp),
    )
    return all(abs(got - want) <= tol for got, want in checks)
