"""Input checks shared by the estimators."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .esop import EsopCover
from .neqr import NeqrImage


def check_image(X, q: int = 8) -> NeqrImage:
    """Coerce ``X`` to a :class:`NeqrImage`.

    ``X`` may already be one, or an integer array of shape ``(rows, cols)`` or
    ``(rows, cols, 1|3)`` with values in ``[0, 2**q)``.
    """
    if isinstance(X, NeqrImage):
        if X.q != q:
            raise ValueError(f"image has q={X.q}, estimator expects q={q}")
        return X
    arr = check_array(X, ensure_2d=False, allow_nd=True, dtype=None,
                      ensure_all_finite=True, input_name="X")
    if arr.ndim not in (2, 3):
        raise ValueError(f"expected a 2-D or 3-D image array, got {arr.ndim}-D")
    if arr.dtype.kind == "f":
        if not np.all(arr == np.floor(arr)):
            raise ValueError("pixel values must be integers")
        arr = arr.astype(np.int64)
    elif arr.dtype.kind not in "iub":
        raise ValueError(f"unsupported pixel dtype {arr.dtype}")
    if arr.size and (arr.min() < 0 or arr.max() >= 1 << q):
        raise ValueError(f"pixel values must lie in [0, {1 << q})")
    return NeqrImage.from_array(arr, q=q)


def check_cover(X, num_vars=None) -> EsopCover:
    """Accept an :class:`EsopCover` or a sequence of cube strings."""
    if isinstance(X, EsopCover):
        cover = X
    else:
        if isinstance(X, str):
            raise TypeError("pass a sequence of cubes, not a single string")
        cubes = [str(c) for c in X]
        n = num_vars if num_vars is not None else (len(cubes[0]) if cubes else 0)
        cover = EsopCover(n, cubes)
    if num_vars is not None and cover.num_vars != num_vars:
        raise ValueError(f"cover has {cover.num_vars} variables, expected {num_vars}")
    return cover


def check_positions(positions, shape) -> np.ndarray:
    """Validate an ``(m, 2)`` array of ``(y, x)`` pixel coordinates."""
    pos = check_array(positions, dtype=np.int64, input_name="positions")
    if pos.shape[1] != 2:
        raise ValueError(f"positions must have 2 columns (y, x), got {pos.shape[1]}")
    rows, cols = shape
    if pos.size and (pos.min() < 0 or pos[:, 0].max() >= rows or pos[:, 1].max() >= cols):
        raise ValueError(f"positions outside the {rows}x{cols} raster")
    return pos
