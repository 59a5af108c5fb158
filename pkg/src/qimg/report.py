"""Compression / timing / gate-count reports in JSON or table form."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Optional

from .circuit import GateKind, QubitLayout, gate_stats
from .neqr import ColorLineCover
from .pipeline import CompileResult, build_circuits

CHANNEL_NAMES = {1: ("gray",), 3: ("R", "G", "B")}


TABLE_COLUMNS = (
    ("Image File", "name"),
    ("Initial Toffoli Count", "initial_toffoli_count"),
    ("Minimized Toffoli Count", "minimized_toffoli_count"),
    ("Compression Ratio (%)", "compression_ratio_percent"),
    ("Time (s)", "minimize_time_seconds"),
    ("Overall Gate Count", "overall_gate_count_post_decomposition"),
)


def compression_ratio(initial: int, minimized: int) -> float:
    """Percent of Toffolis removed; 0 for an empty network."""
    if initial == 0:
        return 0.0
    return 100.0 * (initial - minimized) / initial


@dataclass
class ReportRow:
    name: str
    initial_toffoli_count: int
    minimized_toffoli_count: int
    compression_ratio_percent: float
    minimize_time_seconds: float
    overall_gate_count_pre_decomposition: int
    overall_gate_count_post_decomposition: int
    qubit_count: int
    # how the surviving cubes lower: >=2 controls, 1 control, no control
    minimized_multi_control: int = 0
    minimized_cnot: int = 0
    minimized_x: int = 0


@dataclass
class RunReport:
    source: str
    h: int
    w: int
    q: int
    channels: int
    decomposed: bool
    rows: list[ReportRow]
    total: ReportRow
    gate_stats: dict = field(default_factory=dict)
    verification: Optional[dict] = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_table(self) -> str:
        header = [title for title, _ in TABLE_COLUMNS]
        body = [[_cell(row, key) for _, key in TABLE_COLUMNS] for row in (*self.rows, self.total)]
        widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
        lines = ["  ".join(c.ljust(widths[i]) if i == 0 else c.rjust(widths[i])
                           for i, c in enumerate(r)) for r in [header, *body]]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def _cell(row, key):
    value = getattr(row, key)
    if key == "compression_ratio_percent":
        return f"{value:.2f}"
    if key == "minimize_time_seconds":
        return f"{value:.4f}"
    return str(value)


def _arity_split(covers):
    multi = cnot = xs = 0
    for line_cover in covers:
        for cube in line_cover.cover.cubes:
            k = len(cube) - cube.count("-")
            if k >= 2:
                multi += 1
            elif k == 1:
                cnot += 1
            else:
                xs += 1
    return multi, cnot, xs


def _row(name, raw, covers, seconds, lowered, decomposed, decompose):
    initial = sum(len(c.cover) for c in raw)
    minimized = sum(len(c.cover) for c in covers)
    multi, cnot, xs = _arity_split(covers)
    return ReportRow(
        name=name,
        initial_toffoli_count=initial,
        minimized_toffoli_count=minimized,
        compression_ratio_percent=compression_ratio(initial, minimized),
        minimize_time_seconds=sum(seconds),
        overall_gate_count_pre_decomposition=len(lowered),
        overall_gate_count_post_decomposition=len(decomposed),
        qubit_count=(decomposed if decompose else lowered).layout.num_lines,
        minimized_multi_control=multi,
        minimized_cnot=cnot,
        minimized_x=xs,
    )


def build_report(result: CompileResult, source: str = "<image>",
                 verification: Optional[dict] = None) -> RunReport:
    """Per-channel rows plus a totals row.

    A channel row's gate and qubit counts come from compiling that channel on
    its own (its own H prefix and X restoration); the totals row describes the
    combined circuit, so channel rows need not sum to it.
    """
    image = result.image
    names = CHANNEL_NAMES[image.channels]
    rows = []
    for ch in range(image.channels):
        pick = [i for i, c in enumerate(result.covers) if c.channel == ch]
        raw = [result.raw_covers[i] for i in pick]
        covers = [result.covers[i] for i in pick]
        seconds = [result.minimize_seconds[i] for i in pick]
        if image.channels == 1:
            lowered, decomposed = result.lowered, result.decomposed
        else:
            layout = QubitLayout(image.h, image.w, image.q, 1)
            single = [ColorLineCover(0, c.bit, c.cover) for c in covers]
            _, lowered, decomposed = build_circuits(single, layout)
        rows.append(_row(f"{source} [{names[ch]}]", raw, covers, seconds, lowered, decomposed,
                         result.decompose))
    total = _row("total", result.raw_covers, result.covers, result.minimize_seconds,
                 result.lowered, result.decomposed, result.decompose)
    stats = {
        "synthesized": gate_stats(result.synthesized),
        "lowered": gate_stats(result.lowered),
        "decomposed": gate_stats(result.decomposed),
    }
    return RunReport(source, image.h, image.w, image.q, image.channels,
                     result.decompose, rows, total, stats, verification)


def report_schema() -> dict:
    text = resources.files("qimg").joinpath("report_schema.json").read_text()
    return json.loads(text)


def report_emit(report: RunReport, fmt: str = "json") -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "table":
        return report.to_table()
    raise ValueError(f"unknown report format {fmt!r}")


def reconcile(report: RunReport) -> bool:
    """Total cube counts agree with the synthesized circuit's gate tally."""
    synth = report.gate_stats["synthesized"]
    t = report.total
    return (
        t.minimized_multi_control == synth[GateKind.TOFFOLI.value]
        and t.minimized_cnot == synth[GateKind.CNOT.value]
        and t.minimized_x == synth[GateKind.X.value]
        and t.minimized_toffoli_count == t.minimized_multi_control + t.minimized_cnot + t.minimized_x
        and synth[GateKind.H.value] == report.h + report.w
    )
