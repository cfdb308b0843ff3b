"""Exponent vectors, activation of exponents by cells, and winner selection.

Exponents live as unit-length columns of an ExponentMatrix. Activating them
against a corner matrix is a plain matrix product; the selected exponent at
a cell is the strict row maximum. Count-based initialization places each
exponent at the (normalized) sum of the corners it is attested in.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch, ZeroColumn
from .features import CornerMatrix, ParadigmCell, _frozen

UNIT_TOL = 1e-9


@dataclass(frozen=True)
class ExponentMatrix:
    """Feature-value coordinates of each exponent; columns are unit length."""

    morphemes: tuple[str, ...]
    matrix: np.ndarray  # NumFeaVal x NumMorph

    def __post_init__(self):
        if self.matrix.ndim != 2 or self.matrix.shape[1] != len(self.morphemes):
            raise ShapeMismatch("one column per morpheme required")
        norms = np.linalg.norm(self.matrix, axis=0)
        if (norms < UNIT_TOL).any():
            raise ZeroColumn("zero exponent column")
        if (np.abs(norms - 1.0) > UNIT_TOL).any():
            raise ShapeMismatch("exponent columns must be unit length")
        _frozen(self.matrix)

    def column(self, morpheme: str) -> np.ndarray:
        return self.matrix[:, self.morphemes.index(morpheme)]


@dataclass(frozen=True)
class SelectionTable:
    """0/1 table naming one exponent per cell; an all-zero row marks a tie."""

    row_labels: tuple[ParadigmCell, ...]
    morphemes: tuple[str, ...]
    matrix: np.ndarray  # NumParaPos x NumMorph

    def __post_init__(self):
        m = self.matrix
        if m.shape != (len(self.row_labels), len(self.morphemes)):
            raise ShapeMismatch("selection table shape does not match labels")
        if not np.isin(m, (0.0, 1.0)).all() or (m.sum(axis=1) > 1).any():
            raise ShapeMismatch("rows must be one-hot or all zero")
        _frozen(m)

    def require_one_hot(self):
        """Training targets must pick exactly one exponent per cell."""
        if (self.matrix.sum(axis=1) != 1).any():
            raise ShapeMismatch("every row must select exactly one exponent")
        return self

    def winner(self, i: int) -> str | None:
        js = np.flatnonzero(self.matrix[i])
        return self.morphemes[js[0]] if len(js) else None

    def winners(self) -> tuple[str | None, ...]:
        return tuple(self.winner(i) for i in range(self.matrix.shape[0]))


def selection_from_winners(row_labels, morphemes, winners) -> SelectionTable:
    """Build a one-hot SelectionTable from a winner label per row."""
    morphemes = tuple(morphemes)
    mat = np.zeros((len(winners), len(morphemes)))
    for i, w in enumerate(winners):
        mat[i, morphemes.index(w)] = 1.0
    return SelectionTable(tuple(row_labels), morphemes, mat)


@dataclass(frozen=True)
class ActivationMatrix:
    """Inner products of every cell corner with every exponent vector."""

    row_labels: tuple[ParadigmCell, ...]
    morphemes: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        _frozen(self.matrix)


@dataclass(frozen=True)
class CountArray:
    """Per feature value, how often each exponent is attested with it."""

    morphemes: tuple[str, ...]
    matrix: np.ndarray  # NumFeaVal x NumMorph, >= 0

    def __post_init__(self):
        if (self.matrix < 0).any():
            raise ShapeMismatch("counts must be non-negative")
        _frozen(self.matrix)


def count_features(corners: CornerMatrix, gold: SelectionTable, weights=None) -> CountArray:
    """Co-occurrence counts of feature values with gold exponents.

    With per-row weights this is cornersᵀ · diag(w) · gold; unit weights give
    plain attestation counts.
    """
    if gold.matrix.shape[0] != corners.num_cells:
        raise ShapeMismatch("gold table and corner matrix disagree on cell count")
    gold.require_one_hot()
    if weights is None:
        w = np.ones(corners.num_cells)
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (corners.num_cells,):
            raise ShapeMismatch("one weight per cell required")
        if (w <= 0).any():
            raise ShapeMismatch("weights must be positive")
    counts = corners.matrix.T @ (w[:, None] * gold.matrix)
    return CountArray(gold.morphemes, counts)


def normalize_columns(counts: CountArray) -> ExponentMatrix:
    """Scale every count column to unit L2 length."""
    norms = np.linalg.norm(counts.matrix, axis=0)
    dead = np.flatnonzero(norms == 0)
    if len(dead):
        raise ZeroColumn(
            f"morpheme(s) never attested: {[counts.morphemes[j] for j in dead]}"
        )
    return ExponentMatrix(counts.morphemes, counts.matrix / norms)


def initial_exponents(corners: CornerMatrix, gold: SelectionTable, weights=None) -> ExponentMatrix:
    """Count-based initial placement: count co-occurrences, then normalize."""
    return normalize_columns(count_features(corners, gold, weights))


def activations(corners: CornerMatrix, expo: ExponentMatrix) -> ActivationMatrix:
    """Activation of every exponent at every cell (exact matrix product)."""
    if corners.matrix.shape[1] != expo.matrix.shape[0]:
        raise ShapeMismatch("corner width and exponent height differ")
    return ActivationMatrix(
        corners.row_labels, expo.morphemes, corners.matrix @ expo.matrix
    )


def select_winners(acts: ActivationMatrix) -> tuple[SelectionTable, list[int]]:
    """Strict row-wise argmax. Tied rows select nothing and are reported.

    Returns the selection table and the indices of tied rows.
    """
    a = acts.matrix
    out = np.zeros_like(a)
    ties = []
    for i in range(a.shape[0]):
        top = a[i].max()
        js = np.flatnonzero(a[i] == top)
        if len(js) == 1:
            out[i, js[0]] = 1.0
        else:
            ties.append(i)
    return SelectionTable(acts.row_labels, acts.morphemes, out), ties


@dataclass(frozen=True)
class EvaluationReport:
    """Row-by-row comparison of a predicted selection against a gold one."""

    row_labels: tuple[ParadigmCell, ...]
    morphemes: tuple[str, ...]
    predicted: tuple[str | None, ...]
    gold: tuple[str, ...]
    margins: tuple[float, ...]  # winner activation minus runner-up, per row
    mismatches: tuple[int, ...]  # row indices where predicted != gold
    ties: tuple[int, ...]

    @property
    def num_correct(self) -> int:
        return len(self.row_labels) - len(self.mismatches)

    @property
    def min_margin(self) -> float:
        return min(self.margins)

    def mismatch_labels(self) -> tuple[str, ...]:
        return tuple(self.row_labels[i].label() for i in self.mismatches)


def evaluate(acts: ActivationMatrix, gold: SelectionTable) -> EvaluationReport:
    """Compare strict winners of an activation matrix against gold choices."""
    if acts.matrix.shape != gold.matrix.shape or acts.morphemes != gold.morphemes:
        raise ShapeMismatch("activation and gold tables do not line up")
    gold.require_one_hot()
    predicted, ties = select_winners(acts)
    margins = []
    mismatches = []
    for i in range(acts.matrix.shape[0]):
        row = np.sort(acts.matrix[i])[::-1]
        margins.append(float(row[0] - row[1]) if len(row) > 1 else float("inf"))
        if predicted.winner(i) != gold.winner(i):
            mismatches.append(i)
    return EvaluationReport(
        acts.row_labels,
        acts.morphemes,
        predicted.winners(),
        gold.winners(),
        tuple(margins),
        tuple(mismatches),
        tuple(ties),
    )
