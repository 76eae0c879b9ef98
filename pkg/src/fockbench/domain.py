"""Core data types for two-concept conjunction/negation membership experiments.

An experiment session asks subjects to judge, on a 7-point scale, whether an
exemplar belongs to each of two concepts (A, B), their negations (A', B') and
the four conjunctions "A and B", "A and B'", "A' and B", "A' and B'".  Each
conjunction has its own sub-experiment measuring three targets: the first
concept, the second concept, and the conjunction itself.  Ratings are
converted to membership indicators (positive -> 1, negative -> 0, zero -> 0.5)
and averaged into membership weights in [0, 1].

All functions here are pure and operate on immutable inputs; they are safe to
call concurrently.
"""

from __future__ import annotations

import csv
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

RATING_VALUES = frozenset({-3, -2, -1, 0, 1, 2, 3})


class Experiment(str, Enum):
    """The four conjunction sub-experiments, named by which concepts are negated."""

    AB = "AB"
    ABn = "ABn"    # A and not-B
    AnB = "AnB"    # not-A and B
    AnBn = "AnBn"  # not-A and not-B

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


class Target(str, Enum):
    """What a single judgement refers to within one sub-experiment."""

    FIRST = "X"        # the first concept of the pair (A or A')
    SECOND = "Y"       # the second concept (B or B')
    CONJUNCTION = "XY"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


EXPERIMENTS = (Experiment.AB, Experiment.ABn, Experiment.AnB, Experiment.AnBn)
TARGETS = (Target.FIRST, Target.SECOND, Target.CONJUNCTION)


class DomainError(ValueError):
    """Base class for ingestion and validation failures."""


class InvalidRatingError(DomainError):
    """A rating outside {-3..+3}.  Out-of-scale values are rejected, never clamped."""


class NoDataError(DomainError):
    """A requested (pair, exemplar, experiment, target) cell has no responses."""

    def __init__(self, cells: Sequence[tuple]) -> None:
        self.cells = tuple(cells)
        listing = "; ".join(
            f"(pair={p!r}, exemplar={e!r}, experiment={x}, target={t})"
            for p, e, x, t in self.cells
        )
        super().__init__(f"no data for {listing}")


class CsvFormatError(DomainError):
    """A CSV cell failed to parse; carries file, 1-based line and column name."""

    def __init__(self, path: str | Path, line: int, column: str, message: str) -> None:
        self.path = str(path)
        self.line = line
        self.column = column
        super().__init__(f"{self.path}:{line}: column {column!r}: {message}")


def _check_rating(value: int) -> int:
    if value not in RATING_VALUES:
        raise InvalidRatingError(f"rating {value!r} outside the 7-point scale -3..+3")
    return value


def _check_weight(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"membership weight {name}={value!r} outside [0, 1]")
    return float(value)


@dataclass(frozen=True, slots=True)
class RawResponse:
    """One 7-point judgement by one subject for one cell of the design."""

    subject_id: str
    pair_id: str
    experiment: Experiment
    target: Target
    exemplar_id: str
    rating: int

    def __post_init__(self) -> None:
        _check_rating(self.rating)


@dataclass(frozen=True, slots=True)
class MembershipRecord:
    """The eight membership weights of one exemplar.

    ``mu_a`` .. ``mu_bp`` are the single-concept weights for A, B, A', B';
    ``mu_ab`` .. ``mu_apbp`` are the conjunction weights for "A and B",
    "A and B'", "A' and B", "A' and B'".  All lie in [0, 1]; no other
    consistency between them is assumed (such consistency is exactly what the
    classicality analysis tests).
    """

    exemplar_id: str
    pair_id: str
    mu_a: float
    mu_b: float
    mu_ap: float
    mu_bp: float
    mu_ab: float
    mu_abp: float
    mu_apb: float
    mu_apbp: float

    def __post_init__(self) -> None:
        for name in ("mu_a", "mu_b", "mu_ap", "mu_bp", "mu_ab", "mu_abp", "mu_apb", "mu_apbp"):
            object.__setattr__(self, name, _check_weight(name, getattr(self, name)))

    def singles(self) -> tuple[float, float, float, float]:
        """Weights of A, B, A', B' in that order."""
        return (self.mu_a, self.mu_b, self.mu_ap, self.mu_bp)

    def conjunctions(self) -> tuple[float, float, float, float]:
        """Weights of the four conjunctions in canonical order AB, AB', A'B, A'B'."""
        return (self.mu_ab, self.mu_abp, self.mu_apb, self.mu_apbp)

    def conjunction_members(self) -> tuple[tuple[float, float], ...]:
        """The (mu_x, mu_y) single-concept weights entering each conjunction."""
        return (
            (self.mu_a, self.mu_b),
            (self.mu_a, self.mu_bp),
            (self.mu_ap, self.mu_b),
            (self.mu_ap, self.mu_bp),
        )


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of records for one concept pair."""

    pair_label: str
    records: tuple[MembershipRecord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        seen: set[str] = set()
        for rec in self.records:
            if rec.exemplar_id in seen:
                raise DomainError(f"duplicate exemplar {rec.exemplar_id!r} in dataset")
            seen.add(rec.exemplar_id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def rating_to_membership(rating: int) -> float:
    """Convert a 7-point rating to a membership indicator.

    Positive ratings mean membership (1.0), negative ratings non-membership
    (0.0), and an exact 0 is counted as half a membership (0.5).
    """
    _check_rating(rating)
    if rating > 0:
        return 1.0
    if rating < 0:
        return 0.0
    return 0.5


def aggregate(
    responses: Iterable[RawResponse],
    pair_id: str,
    exemplar_id: str,
    experiment: Experiment,
    target: Target,
) -> float:
    """Relative membership frequency for one cell of the design.

    Returns the mean membership indicator over all responses matching the
    given (pair, exemplar, experiment, target).  Order of the responses is
    irrelevant.  Raises :class:`NoDataError` when the cell is empty.
    """
    total = 0.0
    n = 0
    for resp in responses:
        if (
            resp.pair_id == pair_id
            and resp.exemplar_id == exemplar_id
            and resp.experiment == experiment
            and resp.target == target
        ):
            total += rating_to_membership(resp.rating)
            n += 1
    if n == 0:
        raise NoDataError([(pair_id, exemplar_id, experiment.value, target.value)])
    return total / n


# Which (experiment, target) cell feeds each canonical record field.  mu(A) is
# measured twice (in AB and AB'), mu(B) twice, etc.; the canonical record uses
# the cells below, and single_concept_estimates() exposes the duplicates.
_CANONICAL_CELLS: tuple[tuple[str, Experiment, Target], ...] = (
    ("mu_a", Experiment.AB, Target.FIRST),
    ("mu_b", Experiment.AB, Target.SECOND),
    ("mu_ap", Experiment.AnB, Target.FIRST),
    ("mu_bp", Experiment.ABn, Target.SECOND),
    ("mu_ab", Experiment.AB, Target.CONJUNCTION),
    ("mu_abp", Experiment.ABn, Target.CONJUNCTION),
    ("mu_apb", Experiment.AnB, Target.CONJUNCTION),
    ("mu_apbp", Experiment.AnBn, Target.CONJUNCTION),
)

# Both cells measuring each single concept: (concept key, experiment, target).
_SINGLE_CELLS: tuple[tuple[str, Experiment, Target], ...] = (
    ("A", Experiment.AB, Target.FIRST),
    ("A", Experiment.ABn, Target.FIRST),
    ("B", Experiment.AB, Target.SECOND),
    ("B", Experiment.AnB, Target.SECOND),
    ("Ap", Experiment.AnB, Target.FIRST),
    ("Ap", Experiment.AnBn, Target.FIRST),
    ("Bp", Experiment.ABn, Target.SECOND),
    ("Bp", Experiment.AnBn, Target.SECOND),
)


def _index_responses(
    responses: Iterable[RawResponse],
) -> dict[tuple[str, str, Experiment, Target], list[float]]:
    index: dict[tuple[str, str, Experiment, Target], list[float]] = {}
    for resp in responses:
        key = (resp.pair_id, resp.exemplar_id, resp.experiment, resp.target)
        index.setdefault(key, []).append(rating_to_membership(resp.rating))
    return index


def build_dataset(responses: Sequence[RawResponse], pair_label: str | None = None) -> Dataset:
    """Aggregate raw responses for a single concept pair into a Dataset.

    Every exemplar must have responses for all 4 experiments x 3 targets;
    otherwise a :class:`NoDataError` lists every missing cell.  Exemplars keep
    their first-appearance order.
    """
    pairs = []
    for resp in responses:
        if resp.pair_id not in pairs:
            pairs.append(resp.pair_id)
    if not pairs:
        raise NoDataError([("<any>", "<any>", "<any>", "<any>")])
    if pair_label is None:
        if len(pairs) > 1:
            raise DomainError(
                f"responses span several pairs {pairs!r}; pass pair_label to select one"
            )
        pair_label = pairs[0]
    elif pair_label not in pairs:
        raise NoDataError([(pair_label, "<any>", "<any>", "<any>")])

    index = _index_responses(responses)
    exemplars = []
    for resp in responses:
        if resp.pair_id == pair_label and resp.exemplar_id not in exemplars:
            exemplars.append(resp.exemplar_id)

    missing = [
        (pair_label, ex, exp.value, tgt.value)
        for ex in exemplars
        for exp in EXPERIMENTS
        for tgt in TARGETS
        if (pair_label, ex, exp, tgt) not in index
    ]
    if missing:
        raise NoDataError(missing)

    records = []
    for ex in exemplars:
        fields = {}
        for name, exp, tgt in _CANONICAL_CELLS:
            values = index[(pair_label, ex, exp, tgt)]
            fields[name] = sum(values) / len(values)
        records.append(MembershipRecord(exemplar_id=ex, pair_id=pair_label, **fields))
    return Dataset(pair_label=pair_label, records=tuple(records))


def single_concept_estimates(
    responses: Sequence[RawResponse], pair_id: str, exemplar_id: str
) -> dict[str, dict[str, float]]:
    """Both per-experiment estimates of each single-concept weight.

    Each single concept is measured in two different sub-experiments; when the
    data violate the marginal law the two estimates of, say, mu(A) can differ,
    which is of interest in itself.  Returns, per concept key (A, B, Ap, Bp),
    the estimate from each experiment plus their discrepancy (first - second).
    """
    index = _index_responses(responses)
    out: dict[str, dict[str, float]] = {}
    for concept, exp, tgt in _SINGLE_CELLS:
        key = (pair_id, exemplar_id, exp, tgt)
        if key not in index:
            raise NoDataError([(pair_id, exemplar_id, exp.value, tgt.value)])
        values = index[key]
        out.setdefault(concept, {})[exp.value] = sum(values) / len(values)
    for concept, estimates in out.items():
        first, second = list(estimates.values())
        estimates["discrepancy"] = first - second
    return out


RAW_CSV_HEADER = ("subject", "pair", "experiment", "target", "exemplar", "rating")
AGGREGATED_CSV_HEADER = (
    "exemplar", "muA", "muB", "muAp", "muBp", "muAB", "muABp", "muApB", "muApBp",
)


def read_raw_csv(path: str | Path) -> list[RawResponse]:
    """Parse a raw-response CSV (UTF-8, comma-separated, '.' decimal point).

    Header must be ``subject,pair,experiment,target,exemplar,rating``.  Parse
    failures raise :class:`CsvFormatError` naming file, line and column.
    """
    path = Path(path)
    responses: list[RawResponse] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != RAW_CSV_HEADER:
            raise CsvFormatError(
                path, 1, "header", f"expected {','.join(RAW_CSV_HEADER)!r}, got {header!r}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(RAW_CSV_HEADER):
                raise CsvFormatError(
                    path, line_no, "row", f"expected {len(RAW_CSV_HEADER)} fields, got {len(row)}"
                )
            subject, pair, experiment, target, exemplar, rating = (c.strip() for c in row)
            try:
                exp = Experiment(experiment)
            except ValueError:
                raise CsvFormatError(
                    path, line_no, "experiment",
                    f"{experiment!r} not one of {[e.value for e in EXPERIMENTS]}",
                ) from None
            try:
                tgt = Target(target)
            except ValueError:
                raise CsvFormatError(
                    path, line_no, "target",
                    f"{target!r} not one of {[t.value for t in TARGETS]}",
                ) from None
            try:
                value = int(rating)
                _check_rating(value)
            except (ValueError, InvalidRatingError) as exc:
                raise CsvFormatError(path, line_no, "rating", str(exc)) from None
            responses.append(
                RawResponse(
                    subject_id=subject,
                    pair_id=pair,
                    experiment=exp,
                    target=tgt,
                    exemplar_id=exemplar,
                    rating=value,
                )
            )
    return responses


def write_raw_csv(path: str | Path, responses: Iterable[RawResponse]) -> None:
    """Write responses in the raw CSV format (LF line endings)."""
    path = Path(path)
    with path.open("w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RAW_CSV_HEADER)
        for r in responses:
            writer.writerow(
                [r.subject_id, r.pair_id, r.experiment.value, r.target.value,
                 r.exemplar_id, r.rating]
            )


def read_aggregated_csv(path: str | Path, pair_label: str | None = None) -> Dataset:
    """Parse an aggregated membership-weight CSV into a Dataset.

    Header must be ``exemplar,muA,muB,muAp,muBp,muAB,muABp,muApB,muApBp`` with
    all weights in [0, 1].  The pair label defaults to the file stem.
    """
    path = Path(path)
    if pair_label is None:
        pair_label = path.stem
    records: list[MembershipRecord] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != AGGREGATED_CSV_HEADER:
            raise CsvFormatError(
                path, 1, "header",
                f"expected {','.join(AGGREGATED_CSV_HEADER)!r}, got {header!r}",
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(AGGREGATED_CSV_HEADER):
                raise CsvFormatError(
                    path, line_no, "row",
                    f"expected {len(AGGREGATED_CSV_HEADER)} fields, got {len(row)}",
                )
            exemplar = row[0].strip()
            weights = []
            for column, cell in zip(AGGREGATED_CSV_HEADER[1:], row[1:]):
                try:
                    value = float(cell)
                except ValueError:
                    raise CsvFormatError(
                        path, line_no, column, f"{cell!r} is not a number"
                    ) from None
                if not 0.0 <= value <= 1.0:
                    raise CsvFormatError(
                        path, line_no, column, f"{value!r} outside [0, 1]"
                    )
                weights.append(value)
            records.append(MembershipRecord(exemplar, pair_label, *weights))
    try:
        return Dataset(pair_label=pair_label, records=tuple(records))
    except DomainError as exc:
        raise CsvFormatError(path, 1, "exemplar", str(exc)) from None


def write_aggregated_csv(path: str | Path, dataset: Dataset) -> None:
    """Write a Dataset in the aggregated CSV format (LF line endings)."""
    path = Path(path)
    with path.open("w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGGREGATED_CSV_HEADER)
        for rec in dataset:
            writer.writerow(
                [rec.exemplar_id, rec.mu_a, rec.mu_b, rec.mu_ap, rec.mu_bp,
                 rec.mu_ab, rec.mu_abp, rec.mu_apb, rec.mu_apbp]
            )
