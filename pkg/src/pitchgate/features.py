"""Feature matrices for the outcome classifiers.

A feature spec picks a factor subset plus optional total and ask columns.
Column order is fixed (factors by index, then total, ask_amount, ask_equity)
so matrices are comparable across runs. No scaling happens here: the values
stay in rubric units and the classifiers that need standardization do it
internally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .rubric import ALL_FACTORS, Factor


class FeatureError(Exception):
    pass


class EmptyInput(FeatureError):
    pass


class EmptyEnumeration(FeatureError):
    pass


class SingleClass(FeatureError):
    pass


@dataclass(frozen=True)
class FeatureSpec:
    """A chosen combination of factor scores, total, and ask features."""

    factors: tuple[int, ...]
    include_total: bool = False
    include_ask_amount: bool = False
    include_ask_equity: bool = False

    def __post_init__(self) -> None:
        if any(f not in range(1, 9) for f in self.factors):
            raise ValueError(f"factor indices must lie in 1..8: {self.factors}")
        ordered = tuple(sorted(set(self.factors)))
        object.__setattr__(self, "factors", ordered)
        if not self.columns():
            raise ValueError("feature spec selects no columns")

    def columns(self) -> list[str]:
        cols = [f"f{i}" for i in self.factors]
        if self.include_total:
            cols.append("total")
        if self.include_ask_amount:
            cols.append("ask_amount")
        if self.include_ask_equity:
            cols.append("ask_equity")
        return cols

    def to_text(self) -> str:
        """Comma-list form, e.g. 'f1,f3,f8,total,ask'."""
        tokens = [f"f{i}" for i in self.factors]
        if self.include_total:
            tokens.append("total")
        if self.include_ask_amount and self.include_ask_equity:
            tokens.append("ask")
        else:
            if self.include_ask_amount:
                tokens.append("ask_amount")
            if self.include_ask_equity:
                tokens.append("ask_equity")
        return ",".join(tokens)

    @classmethod
    def from_text(cls, text: str) -> "FeatureSpec":
        factors: list[int] = []
        total = ask_amount = ask_equity = False
        for token in text.split(","):
            token = token.strip().lower()
            if not token:
                continue
            if token == "total":
                total = True
            elif token == "ask":
                ask_amount = ask_equity = True
            elif token == "ask_amount":
                ask_amount = True
            elif token == "ask_equity":
                ask_equity = True
            elif token.startswith("f") and token[1:].isdigit():
                factors.append(int(token[1:]))
            else:
                raise ValueError(f"unknown feature token: {token!r}")
        return cls(
            factors=tuple(factors),
            include_total=total,
            include_ask_amount=ask_amount,
            include_ask_equity=ask_equity,
        )


@dataclass
class FeatureMatrix:
    values: np.ndarray
    columns: list[str]
    pitch_ids: list[str]

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValueError("feature matrix must be 2-D")
        if self.values.shape[1] != len(self.columns):
            raise ValueError("column count does not match value width")
        if self.values.shape[0] != len(self.pitch_ids):
            raise ValueError("row count does not match pitch id count")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    def take(self, indices: np.ndarray | list[int]) -> "FeatureMatrix":
        idx = np.asarray(indices, dtype=np.int64)
        return FeatureMatrix(
            values=self.values[idx],
            columns=list(self.columns),
            pitch_ids=[self.pitch_ids[int(i)] for i in idx],
        )


@dataclass
class LabelVector:
    labels: np.ndarray

    def __post_init__(self) -> None:
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.labels.ndim != 1:
            raise ValueError("labels must be 1-D")

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    def take(self, indices: np.ndarray | list[int]) -> "LabelVector":
        idx = np.asarray(indices, dtype=np.int64)
        return LabelVector(labels=self.labels[idx])


def assemble(assessed: list, spec: FeatureSpec) -> tuple[FeatureMatrix, LabelVector]:
    """Build the numeric table for a list of assessed pitches.

    One row per pitch in input order; the label comes from the pitch's known
    outcome. `assessed` items need `.pitch` and `.scores` (see grader module).
    """
    if not assessed:
        raise EmptyInput("no assessed pitches to assemble")
    columns = spec.columns()
    rows = np.zeros((len(assessed), len(columns)), dtype=np.float64)
    labels = np.zeros(len(assessed), dtype=np.int64)
    ids: list[str] = []
    for r, item in enumerate(assessed):
        pitch = item.pitch
        scores = item.scores
        ids.append(pitch.pitch_id)
        labels[r] = pitch.outcome
        for c, name in enumerate(columns):
            if name == "total":
                rows[r, c] = scores.total
            elif name == "ask_amount":
                rows[r, c] = float(pitch.ask_amount)
            elif name == "ask_equity":
                rows[r, c] = pitch.ask_equity
            else:
                rows[r, c] = scores.scores[Factor(int(name[1:]))]
    return FeatureMatrix(values=rows, columns=columns, pitch_ids=ids), LabelVector(labels)


@dataclass(frozen=True)
class SpecEnumeration:
    """Bounds for feature-spec enumeration.

    `subsets` is one of 'all', 'min_size', or 'explicit'. Ask flags toggle
    jointly by default because the two ask features are always reported
    together; pass all four pairs to decouple them.
    """

    subsets: str = "all"
    min_size: int = 1
    explicit: tuple[FeatureSpec, ...] = ()
    total_choices: tuple[bool, ...] = (False, True)
    ask_choices: tuple[tuple[bool, bool], ...] = ((False, False), (True, True))


def enumerate_feature_specs(config: SpecEnumeration) -> list[FeatureSpec]:
    """Deterministic, duplicate-free spec enumeration under `config`."""
    if config.subsets == "explicit":
        specs = list(config.explicit)
        if not specs:
            raise EmptyEnumeration("explicit enumeration with no specs")
        if len(set(specs)) != len(specs):
            raise ValueError("explicit spec list contains duplicates")
        return specs

    if config.subsets == "all":
        min_size = 1
    elif config.subsets == "min_size":
        min_size = config.min_size
    else:
        raise ValueError(f"unknown subset family: {config.subsets!r}")

    specs: list[FeatureSpec] = []
    indices = [f.value for f in ALL_FACTORS]
    for size in range(min_size, len(indices) + 1):
        for combo in itertools.combinations(indices, size):
            for total in config.total_choices:
                for ask_amount, ask_equity in config.ask_choices:
                    specs.append(
                        FeatureSpec(
                            factors=combo,
                            include_total=total,
                            include_ask_amount=ask_amount,
                            include_ask_equity=ask_equity,
                        )
                    )
    if not specs:
        raise EmptyEnumeration("enumeration bounds produce no specs")
    assert len(set(specs)) == len(specs)
    return specs


def undersample(
    X: FeatureMatrix, y: LabelVector, seed: int
) -> tuple[FeatureMatrix, LabelVector]:
    """Randomly drop majority rows until the classes balance.

    Minority rows are untouched and surviving rows keep their original order.
    Training-side only; holdout and validation folds are never resampled.
    """
    labels = y.labels
    counts = {c: int(np.sum(labels == c)) for c in (0, 1)}
    if counts[0] == 0 or counts[1] == 0:
        raise SingleClass("undersampling requires both classes present")
    if counts[0] == counts[1]:
        return X.take(np.arange(len(y))), y.take(np.arange(len(y)))
    majority = 0 if counts[0] > counts[1] else 1
    minority_count = min(counts.values())
    majority_idx = np.flatnonzero(labels == majority)
    rng = np.random.default_rng(seed)
    survivors = rng.choice(majority_idx, size=minority_count, replace=False)
    keep = np.sort(np.concatenate([np.flatnonzero(labels != majority), survivors]))
    return X.take(keep), y.take(keep)
