"""Bundled reference dataset: deviation vectors for 96 exemplars.

Four concept pairs, 24 exemplars each, with the five deviation functionals
per exemplar.  The rows are compiled in rather than loaded from disk: they
are small, immutable and central to the golden tests, so bit-exact values
matter more than configurability.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classicality import DeviationVector

PAIR_LABELS = (
    "Home Furnishing/Furniture",
    "Spices/Herbs",
    "Pets/Farmyard Animals",
    "Fruits/Vegetables",
)

# exemplar, I_A, I_B, I_A', I_B', I_ABA'B'
_HOME_FURNISHING = (
    ("Mantelpiece", -0.56, -0.31, -0.31, -0.46, -0.89),
    ("Window Seat", -0.44, -0.36, -0.33, -0.35, -0.74),
    ("Painting", -0.44, -0.48, -0.35, -0.33, -0.94),
    ("Light Fixture", -0.48, -0.45, -0.33, -0.28, -0.84),
    ("Kitchen Counter", -0.42, -0.44, -0.39, -0.24, -0.79),
    ("Bath Tub", -0.45, -0.44, -0.37, -0.41, -0.83),
    ("Deck Chair", -0.42, -0.38, -0.44, -0.39, -0.86),
    ("Shelves", -0.38, -0.43, -0.36, -0.34, -0.83),
    ("Rug", -0.48, -0.54, -0.45, -0.28, -1.0),
    ("Bed", -0.39, -0.48, -0.49, -0.39, -0.9),
    ("Wall-Hangings", -0.39, -0.44, -0.38, -0.27, -0.85),
    ("Space Rack", -0.53, -0.41, -0.37, -0.44, -0.9),
    ("Ashtray", -0.34, -0.45, -0.43, -0.35, -0.84),
    ("Bar", -0.51, -0.39, -0.43, -0.51, -1.03),
    ("Lamp", -0.51, -0.51, -0.45, -0.41, -1.05),
    ("Wall Mirror", -0.58, -0.51, -0.45, -0.35, -1.06),
    ("Door Bell", -0.39, -0.51, -0.53, -0.36, -0.99),
    ("Hammock", -0.48, -0.5, -0.47, -0.41, -0.98),
    ("Desk", -0.32, -0.58, -0.59, -0.39, -1.0),
    ("Refrigerator", -0.47, -0.4, -0.46, -0.39, -0.93),
    ("Park Bench", -0.31, -0.45, -0.36, -0.22, -0.79),
    ("Waste Paper Basket", -0.31, -0.51, -0.59, -0.27, -0.95),
    ("Sculpture", -0.48, -0.58, -0.49, -0.43, -1.13),
    ("Sink Unit", -0.46, -0.41, -0.41, -0.36, -0.91),
)

_SPICES = (
    ("Molasses", -0.41, -0.36, -0.31, -0.43, -0.75),
    ("Salt", -0.26, -0.28, -0.33, -0.37, -0.61),
    ("Peppermint", -0.41, -0.33, -0.33, -0.43, -0.78),
    ("Curry", -0.45, -0.42, -0.34, -0.31, -0.79),
    ("Oregano", -0.38, -0.43, -0.36, -0.35, -0.76),
    ("MSG", -0.36, -0.34, -0.37, -0.45, -0.76),
    ("Chili Pepper", -0.73, -0.54, -0.35, -0.46, -1.1),
    ("Mustard", -0.49, -0.44, -0.3, -0.41, -0.83),
    ("Mint", -0.46, -0.47, -0.32, -0.34, -0.85),
    ("Cinnamon", -0.48, -0.41, -0.34, -0.43, -0.84),
    ("Parsley", -0.4, -0.5, -0.36, -0.35, -0.84),
    ("Saccarin", -0.43, -0.34, -0.36, -0.46, -0.81),
    ("Poppy Seeds", -0.43, -0.43, -0.29, -0.4, -0.84),
    ("Pepper", -0.61, -0.41, -0.21, -0.46, -0.91),
    ("Turmeric", -0.54, -0.49, -0.38, -0.47, -0.91),
    ("Sugar", -0.46, -0.26, -0.31, -0.44, -0.81),
    ("Vinegar", -0.26, -0.31, -0.33, -0.36, -0.65),
    ("Sesame Seeds", -0.49, -0.44, -0.33, -0.4, -0.91),
    ("Lemon Juice", -0.3, -0.34, -0.46, -0.43, -0.78),
    ("Chocolate", -0.39, -0.36, -0.37, -0.44, -0.81),
    ("Horseradish", -0.4, -0.47, -0.37, -0.44, -0.86),
    ("Vanilla", -0.48, -0.44, -0.38, -0.48, -0.91),
    ("Chives", -0.38, -0.51, -0.53, -0.33, -0.99),
    ("Root Ginger", -0.43, -0.54, -0.41, -0.37, -0.91),
)

_PETS = (
    ("Goldfish", -0.41, -0.43, -0.48, -0.53, -0.94),
    ("Robin", -0.39, -0.41, -0.22, -0.18, -0.59),
    ("Blue-tit", -0.31, -0.3, -0.24, -0.24, -0.56),
    ("Collie Dog", -0.48, -0.34, -0.34, -0.33, -0.79),
    ("Camel", -0.36, -0.46, -0.3, -0.24, -0.7),
    ("Squirrel", -0.24, -0.34, -0.31, -0.2, -0.59),
    ("Guide Dog for Blind", -0.35, -0.39, -0.36, -0.36, -0.76),
    ("Spider", -0.31, -0.36, -0.23, -0.19, -0.58),
    ("Homing Pigeon", -0.41, -0.44, -0.31, -0.25, -0.74),
    ("Monkey", -0.29, -0.31, -0.25, -0.31, -0.59),
    ("Circus Horse", -0.39, -0.38, -0.26, -0.23, -0.69),
    ("Prize Bull", -0.57, -0.49, -0.28, -0.35, -0.86),
    ("Rat", -0.29, -0.39, -0.31, -0.23, -0.65),
    ("Badger", -0.24, -0.3, -0.23, -0.19, -0.5),
    ("Siamese Cat", -0.5, -0.41, -0.36, -0.46, -0.9),
    ("Race Horse", -0.54, -0.46, -0.26, -0.24, -0.79),
    ("Fox", -0.33, -0.34, -0.19, -0.19, -0.51),
    ("Donkey", -0.45, -0.48, -0.26, -0.25, -0.78),
    ("Field Mouse", -0.3, -0.24, -0.18, -0.23, -0.46),
    ("Ginger Tom-cat", -0.34, -0.34, -0.34, -0.32, -0.71),
    ("Husky in Slead team", -0.43, -0.49, -0.36, -0.28, -0.8),
    ("Cart Horse", -0.46, -0.5, -0.31, -0.28, -0.79),
    ("Chicken", -0.46, -0.44, -0.19, -0.23, -0.68),
    ("Doberman Guard Dog", -0.47, -0.49, -0.54, -0.51, -1.03),
)

_FRUITS = (
    ("Apple", -0.49, -0.5, -0.3, -0.24, -0.79),
    ("Parsley", -0.53, -0.51, -0.29, -0.29, -0.83),
    ("Olive", -0.46, -0.53, -0.41, -0.26, -0.86),
    ("Chili Pepper", -0.53, -0.46, -0.29, -0.29, -0.83),
    ("Broccoli", -0.58, -0.49, -0.21, -0.28, -0.83),
    ("Root Ginger", -0.46, -0.46, -0.33, -0.24, -0.74),
    ("Pumpkin", -0.43, -0.51, -0.29, -0.13, -0.68),
    ("Raisin", -0.39, -0.51, -0.46, -0.33, -0.86),
    ("Acorn", -0.36, -0.44, -0.39, -0.36, -0.84),
    ("Mustard", -0.44, -0.45, -0.43, -0.38, -0.81),
    ("Rice", -0.32, -0.34, -0.28, -0.29, -0.61),
    ("Tomato", -0.56, -0.55, -0.33, -0.24, -0.86),
    ("Coconut", -0.33, -0.44, -0.37, -0.33, -0.79),
    ("Mushroom", -0.33, -0.33, -0.26, -0.24, -0.61),
    ("Wheat", -0.38, -0.44, -0.38, -0.26, -0.73),
    ("Green Pepper", -0.5, -0.49, -0.23, -0.26, -0.76),
    ("Watercress", -0.45, -0.51, -0.24, -0.2, -0.73),
    ("Peanut", -0.41, -0.43, -0.3, -0.33, -0.8),
    ("Black Pepper", -0.38, -0.46, -0.31, -0.23, -0.71),
    ("Garlic", -0.5, -0.49, -0.33, -0.31, -0.83),
    ("Yam", -0.45, -0.58, -0.38, -0.24, -0.91),
    ("Elderberry", -0.36, -0.52, -0.39, -0.28, -0.8),
    ("Almond", -0.33, -0.42, -0.43, -0.37, -0.8),
    ("Lentils", -0.38, -0.41, -0.33, -0.26, -0.71),
)

_BLOCKS = dict(zip(PAIR_LABELS, (_HOME_FURNISHING, _SPICES, _PETS, _FRUITS)))


@dataclass(frozen=True, slots=True)
class LabeledDeviation:
    pair_label: str
    exemplar_id: str
    deviations: DeviationVector


@dataclass(frozen=True)
class BundledDeviations:
    """The embedded dataset: four labeled blocks of 24 exemplars each."""

    rows: tuple[LabeledDeviation, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def block(self, pair_label: str) -> tuple[LabeledDeviation, ...]:
        return tuple(r for r in self.rows if r.pair_label == pair_label)

    def deviations(self) -> tuple[DeviationVector, ...]:
        return tuple(r.deviations for r in self.rows)

    def find(self, pair_label: str, exemplar_id: str) -> LabeledDeviation:
        for row in self.rows:
            if row.pair_label == pair_label and row.exemplar_id == exemplar_id:
                return row
        raise KeyError(f"no bundled row ({pair_label!r}, {exemplar_id!r})")


def load_bundled() -> BundledDeviations:
    """The 96 embedded deviation rows, in block order."""
    rows = []
    for pair in PAIR_LABELS:
        for exemplar, ia, ib, iap, ibp, itot in _BLOCKS[pair]:
            rows.append(
                LabeledDeviation(pair, exemplar, DeviationVector(ia, ib, iap, ibp, itot))
            )
    return BundledDeviations(rows=tuple(rows))
