"""Image -> covers -> minimized covers -> circuits, as one call."""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .circuit import (Circuit, QubitLayout, decompose_multicontrol, synthesize,
                      xgate_lowering)
from .esop import minimize
from .neqr import ColorLineCover, NeqrImage, bitplane_covers

logger = logging.getLogger(__name__)


def _timed_minimize(line_cover: ColorLineCover, engine: str):
    start = time.perf_counter()
    cover = minimize(line_cover.cover, engine=engine)
    elapsed = time.perf_counter() - start
    return ColorLineCover(line_cover.channel, line_cover.bit, cover), elapsed


def minimize_covers(covers: Sequence[ColorLineCover], threads: int = 1,
                    engine: str = "auto") -> tuple[list[ColorLineCover], list[float]]:
    """Minimize each color line; returns covers and per-call wall-clock seconds."""
    if threads and threads > 1 and len(covers) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _timed_minimize(c, engine), covers))
    else:
        results = [_timed_minimize(c, engine) for c in covers]
    return [r[0] for r in results], [r[1] for r in results]


@dataclass(frozen=True)
class CompileResult:
    image: NeqrImage
    raw_covers: tuple[ColorLineCover, ...]
    covers: tuple[ColorLineCover, ...]
    minimize_seconds: tuple[float, ...]
    synthesized: Circuit
    lowered: Circuit
    decomposed: Circuit
    decompose: bool = True

    @property
    def circuit(self) -> Circuit:
        return self.decomposed if self.decompose else self.lowered


def build_circuits(covers: Sequence[ColorLineCover], layout: QubitLayout):
    synthesized = synthesize(covers, layout)
    lowered = xgate_lowering(synthesized)
    return synthesized, lowered, decompose_multicontrol(lowered)


def compile_image(image: NeqrImage, decompose: bool = True, threads: int = 1,
                  engine: str = "auto",
                  raw_covers: Optional[Sequence[ColorLineCover]] = None) -> CompileResult:
    raw = list(raw_covers) if raw_covers is not None else bitplane_covers(image)
    covers, seconds = minimize_covers(raw, threads=threads, engine=engine)
    start = time.perf_counter()
    synthesized, lowered, decomposed = build_circuits(covers, QubitLayout.for_image(image))
    logger.info("synthesis + lowering + decomposition: %.3fs", time.perf_counter() - start)
    return CompileResult(image, tuple(raw), tuple(covers), tuple(seconds),
                         synthesized, lowered, decomposed, decompose)


def random_image(seed: int, rows: int = 16, cols: int = 16, channels: int = 1,
                 q: int = 8) -> NeqrImage:
    rng = np.random.default_rng(seed)
    shape = (rows, cols) if channels == 1 else (rows, cols, channels)
    return NeqrImage.from_array(rng.integers(0, 1 << q, size=shape), q=q)
