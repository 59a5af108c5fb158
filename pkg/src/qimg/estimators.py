"""scikit-learn style front ends.

``TTLiteMinimizer`` is a transformer over lists of covers, so it drops into a
``Pipeline``.  ``NeqrCompiler`` fits a preparation circuit to one image and
``predict`` reads pixel values back out of that circuit.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .circuit import emit_qasm
from .esop import ENGINES, minimize
from .pipeline import compile_image
from .report import build_report, compression_ratio
from .validation import check_cover, check_image, check_positions
from .verify import simulate_batch, split_h_prefix


def _check_engine(engine):
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")


class TTLiteMinimizer(TransformerMixin, BaseEstimator):
    """Minimize each cover in ``X`` with the ternary-tree complement rule.

    Parameters
    ----------
    engine : {"auto", "packed", "tree"}
        Which implementation of the passes to run.

    Attributes
    ----------
    n_cubes_in_, n_cubes_out_ : int
        Cube totals over the covers seen by ``fit``.
    compression_ratio_ : float
        ``100 * (in - out) / in`` over those covers.
    """

    def __init__(self, engine="auto"):
        self.engine = engine

    def _minimize_all(self, X):
        _check_engine(self.engine)
        covers = [check_cover(c) for c in X]
        return covers, [minimize(c, engine=self.engine) for c in covers]

    def _record(self, covers, out):
        self.n_cubes_in_ = sum(len(c) for c in covers)
        self.n_cubes_out_ = sum(len(c) for c in out)
        self.compression_ratio_ = compression_ratio(self.n_cubes_in_, self.n_cubes_out_)

    def fit(self, X, y=None):
        self._record(*self._minimize_all(X))
        return self

    def fit_transform(self, X, y=None, **fit_params):
        covers, out = self._minimize_all(X)
        self._record(covers, out)
        return out

    def transform(self, X):
        check_is_fitted(self, "n_cubes_out_")
        return self._minimize_all(X)[1]


class NeqrCompiler(BaseEstimator):
    """Compile an image into an NEQR preparation circuit.

    Parameters
    ----------
    decompose : bool
        Lower k>=3-control Toffolis to a V-chain over ancillas.
    n_jobs : int
        Threads used for per-bitplane minimization.
    engine : {"auto", "packed", "tree"}
    q : int
        Bits per channel value.
    """

    def __init__(self, decompose=True, n_jobs=1, engine="auto", q=8):
        self.decompose = decompose
        self.n_jobs = n_jobs
        self.engine = engine
        self.q = q

    def fit(self, X, y=None):
        _check_engine(self.engine)
        image = check_image(X, q=self.q)
        result = compile_image(image, decompose=self.decompose,
                               threads=self.n_jobs or 1, engine=self.engine)
        self.image_ = image
        self.result_ = result
        self.covers_ = list(result.covers)
        self.circuit_ = result.circuit
        self.layout_ = result.circuit.layout
        self.report_ = build_report(result)
        self.compression_ratio_ = self.report_.total.compression_ratio_percent
        return self

    def predict(self, positions):
        """Pixel values the fitted circuit prepares at ``(y, x)`` rows of ``positions``."""
        check_is_fitted(self, "circuit_")
        pos = check_positions(positions, self.image_.shape)
        layout = self.layout_
        n_pos = layout.num_position
        index = (pos[:, 0] << layout.w) | pos[:, 1]
        states = np.zeros((layout.num_lines, len(pos)), dtype=bool)
        for i in range(n_pos):
            states[i] = (index >> (n_pos - 1 - i)) & 1
        _, network = split_h_prefix(self.circuit_)
        out = simulate_batch(network, states)
        weights = 1 << np.arange(layout.q - 1, -1, -1, dtype=np.int64)
        values = [weights @ out[list(layout.color_lines(ch))].astype(np.int64)
                  for ch in range(layout.channels)]
        return np.stack(values, axis=1)

    def score(self, X, y=None):
        """Fraction of pixels of image ``X`` the circuit reproduces exactly."""
        image = check_image(X, q=self.q)
        rows, cols = image.shape
        yy, xx = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
        positions = np.column_stack([yy.ravel(), xx.ravel()])
        if image.shape != self.image_.shape:
            raise ValueError(f"image shape {image.shape} != fitted shape {self.image_.shape}")
        predicted = self.predict(positions)
        return float(np.mean(np.all(predicted == image.pixels.reshape(-1, image.channels), axis=1)))

    def to_qasm(self) -> str:
        check_is_fitted(self, "circuit_")
        return emit_qasm(self.circuit_)
