"""Gate-level NEQR preparation circuits.

Lines are plain integers laid out as position lines, then each channel's color
lines, then ancillas (see :class:`QubitLayout`).
"""
from __future__ import annotations

import dataclasses
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .esop import DC, ONE
from .neqr import ColorLineCover, NeqrImage


class LayoutMismatchError(ValueError):
    pass


class EmitError(ValueError):
    """The circuit still holds gates outside {x, h, cx, ccx}."""


class GateKind(str, Enum):
    X = "X"
    H = "H"
    CNOT = "CNOT"
    TOFFOLI = "TOFFOLI"


@dataclass(frozen=True)
class Gate:
    """A NOT-family gate; each control is ``(line, positive)``."""

    kind: GateKind
    target: int
    controls: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        controls = tuple((int(line), bool(pos)) for line, pos in self.controls)
        object.__setattr__(self, "controls", controls)
        k = len(controls)
        if self.kind in (GateKind.X, GateKind.H) and k:
            raise ValueError(f"{self.kind.value} takes no controls")
        if self.kind is GateKind.CNOT and k != 1:
            raise ValueError("CNOT takes exactly one control")
        if self.kind is GateKind.TOFFOLI and k < 2:
            raise ValueError("TOFFOLI needs at least two controls")
        lines = [line for line, _ in controls] + [self.target]
        if len(set(lines)) != len(lines):
            raise ValueError(f"gate touches a line twice: {lines}")

    @classmethod
    def _trusted(cls, kind: GateKind, target: int, controls) -> "Gate":
        # skips validation; callers derive arguments from validated gates
        gate = object.__new__(cls)
        object.__setattr__(gate, "kind", kind)
        object.__setattr__(gate, "target", target)
        object.__setattr__(gate, "controls", controls)
        return gate

    @classmethod
    def x(cls, target: int) -> "Gate":
        return cls(GateKind.X, target)

    @classmethod
    def h(cls, target: int) -> "Gate":
        return cls(GateKind.H, target)

    @classmethod
    def mcx(cls, controls: Iterable[tuple[int, bool]], target: int) -> "Gate":
        """NOT with any number of controls, picking X / CNOT / TOFFOLI by arity."""
        controls = tuple(controls)
        kind = {0: GateKind.X, 1: GateKind.CNOT}.get(len(controls), GateKind.TOFFOLI)
        return cls(kind, target, controls)

    @property
    def num_controls(self) -> int:
        return len(self.controls)

    @property
    def lines(self) -> tuple[int, ...]:
        return tuple(line for line, _ in self.controls) + (self.target,)


@dataclass(frozen=True)
class QubitLayout:
    h: int
    w: int
    q: int
    channels: int = 1
    num_ancillas: int = 0

    @classmethod
    def for_image(cls, image: NeqrImage) -> "QubitLayout":
        return cls(image.h, image.w, image.q, image.channels)

    @property
    def num_position(self) -> int:
        return self.h + self.w

    @property
    def num_lines(self) -> int:
        return self.num_position + self.channels * self.q + self.num_ancillas

    def position(self, i: int) -> int:
        if not 0 <= i < self.num_position:
            raise IndexError(f"position line {i} out of range")
        return i

    def color(self, channel: int, bit: int) -> int:
        if not (0 <= channel < self.channels and 0 <= bit < self.q):
            raise IndexError(f"color line ({channel}, {bit}) out of range")
        return self.num_position + channel * self.q + bit

    def ancilla(self, k: int) -> int:
        if not 0 <= k < self.num_ancillas:
            raise IndexError(f"ancilla {k} out of range")
        return self.num_position + self.channels * self.q + k

    def position_lines(self) -> range:
        return range(self.num_position)

    def color_lines(self, channel: int) -> range:
        start = self.num_position + channel * self.q
        return range(start, start + self.q)

    def ancilla_lines(self) -> range:
        start = self.num_position + self.channels * self.q
        return range(start, start + self.num_ancillas)

    def with_ancillas(self, count: int) -> "QubitLayout":
        return dataclasses.replace(self, num_ancillas=count)

    def locate(self, line: int) -> tuple[str, int, int]:
        """``("pos", 0, i)``, ``("col", channel, j)`` or ``("anc", 0, k)``."""
        if 0 <= line < self.num_position:
            return "pos", 0, line
        rel = line - self.num_position
        if 0 <= rel < self.channels * self.q:
            return "col", rel // self.q, rel % self.q
        rel -= self.channels * self.q
        if 0 <= rel < self.num_ancillas:
            return "anc", 0, rel
        raise IndexError(f"line {line} not in layout")

    def label(self, line: int) -> str:
        group, ch, i = self.locate(line)
        if group == "pos":
            return f"L_{i}"
        if group == "anc":
            return f"A_{i}"
        return f"C_{i}" if self.channels == 1 else f"C{ch}_{i}"

    def qasm_ref(self, line: int) -> str:
        group, ch, i = self.locate(line)
        if group == "col":
            return f"col{ch}[{i}]"
        return f"{group}[{i}]"


@dataclass(frozen=True)
class Circuit:
    layout: QubitLayout
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        n = self.layout.num_lines
        for gate in gates:
            for line in gate.lines:
                if not 0 <= line < n:
                    raise LayoutMismatchError(f"{gate} uses line {line}; layout has {n} lines")

    @classmethod
    def _trusted(cls, layout: QubitLayout, gates) -> "Circuit":
        circuit = object.__new__(cls)
        object.__setattr__(circuit, "layout", layout)
        object.__setattr__(circuit, "gates", tuple(gates))
        return circuit

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def _sorted_covers(covers):
    return sorted(covers, key=lambda c: (c.channel, c.bit))


_ARITY_KIND = {0: GateKind.X, 1: GateKind.CNOT}


def cube_gate(cube: str, target: int) -> Gate:
    """One control per non-DC symbol: ``0`` negative, ``1`` positive."""
    controls = [(i, s == ONE) for i, s in enumerate(cube) if s != DC]
    return Gate.mcx(controls, target)


def _cube_gate(cube, target):
    controls = tuple((i, s == ONE) for i, s in enumerate(cube) if s != DC)
    return Gate._trusted(_ARITY_KIND.get(len(controls), GateKind.TOFFOLI), target, controls)


def synthesize(covers: Sequence[ColorLineCover], layout: QubitLayout) -> Circuit:
    """H on every position line, then one NOT-family gate per cube.

    Covers are visited by channel, then color line (MSB first); cubes keep their
    order.  Symbol 0 gives a negative control, 1 a positive one.
    """
    gates = [Gate.h(layout.position(i)) for i in range(layout.num_position)]
    for line_cover in _sorted_covers(covers):
        if line_cover.cover.num_vars != layout.num_position:
            raise LayoutMismatchError(
                f"cover over {line_cover.cover.num_vars} variables, "
                f"layout has {layout.num_position} position lines"
            )
        target = layout.color(line_cover.channel, line_cover.bit)
        gates.extend(_cube_gate(cube, target) for cube in line_cover.cover.cubes)
    return Circuit._trusted(layout, gates)


def xgate_lowering(circuit: Circuit) -> Circuit:
    """Turn negative controls positive by bracketing them with X gates.

    A single left-to-right scan tracks which lines currently carry an X.  A
    negative control on an unflipped line inserts an X; a positive control on
    a flipped line inserts the undoing X.  Flipped lines are restored at the end.
    """
    flipped: set[int] = set()
    nots = {}
    out = []

    def x(line):
        if line not in nots:
            nots[line] = Gate.x(line)
        return nots[line]

    for gate in circuit.gates:
        if gate.kind is GateKind.H and gate.target in flipped:
            out.append(x(gate.target))
            flipped.discard(gate.target)
        if gate.controls:
            negative = False
            for line, positive in gate.controls:
                if not positive:
                    negative = True
                    if line not in flipped:
                        out.append(x(line))
                        flipped.add(line)
                elif line in flipped:
                    out.append(x(line))
                    flipped.discard(line)
            if negative:
                controls = tuple((line, True) for line, _ in gate.controls)
                gate = Gate._trusted(gate.kind, gate.target, controls)
        out.append(gate)
    out.extend(x(line) for line in sorted(flipped))
    return Circuit._trusted(circuit.layout, out)


def decompose_multicontrol(circuit: Circuit) -> Circuit:
    """Replace every k>=3-control NOT with a V-chain over k-1 shared ancillas.

    Per gate: k-1 Toffolis AND the controls into the ancilla chain, one CNOT
    copies the last ancilla onto the target, and the k-1 Toffolis run in
    reverse to clear the ancillas.
    """
    need = max((g.num_controls - 1 for g in circuit.gates if g.num_controls >= 3), default=0)
    layout = circuit.layout.with_ancillas(max(need, circuit.layout.num_ancillas))
    anc = list(layout.ancilla_lines())
    interned = {}

    def toffoli(a, b, target):
        key = (a, b, target)
        if key not in interned:
            interned[key] = Gate._trusted(GateKind.TOFFOLI, target, ((a, True), (b, True)))
        return interned[key]

    out = []
    for gate in circuit.gates:
        k = gate.num_controls
        if k < 3:
            out.append(gate)
            continue
        if not all(pos for _, pos in gate.controls):
            raise ValueError("decompose_multicontrol needs positive controls; lower them first")
        ctrl = [line for line, _ in gate.controls]
        chain = [toffoli(ctrl[0], ctrl[1], anc[0])]
        for i in range(1, k - 1):
            chain.append(toffoli(ctrl[i + 1], anc[i - 1], anc[i]))
        out.extend(chain)
        out.append(Gate._trusted(GateKind.CNOT, gate.target, ((anc[k - 2], True),)))
        out.extend(reversed(chain))
    return Circuit._trusted(layout, out)


_QASM_NAMES = {GateKind.X: "x", GateKind.H: "h", GateKind.CNOT: "cx", GateKind.TOFFOLI: "ccx"}


def emit_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text using only x, h, cx and ccx."""
    layout = circuit.layout
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// NEQR preparation: h={layout.h} w={layout.w} q={layout.q} "
        f"channels={layout.channels} ancillas={layout.num_ancillas}",
        "// position line L_i -> pos[i] (L_0 = most significant y bit)",
        "// color line C_j of channel c -> col<c>[j] (C_0 = most significant bit)",
        "// ancilla A_k -> anc[k]",
    ]
    if layout.num_position:
        lines.append(f"qreg pos[{layout.num_position}];")
    for ch in range(layout.channels):
        lines.append(f"qreg col{ch}[{layout.q}];")
    if layout.num_ancillas:
        lines.append(f"qreg anc[{layout.num_ancillas}];")
    refs = [layout.qasm_ref(line) for line in range(layout.num_lines)]
    for gate in circuit.gates:
        controls = gate.controls
        if len(controls) > 2:
            raise EmitError(f"gate with {len(controls)} controls; decompose first")
        args = []
        for line, positive in controls:
            if not positive:
                raise EmitError("negative control cannot be emitted; run xgate_lowering first")
            args.append(refs[line])
        args.append(refs[gate.target])
        lines.append(f"{_QASM_NAMES[gate.kind]} {','.join(args)};")
    return "\n".join(lines) + "\n"


def gate_stats(circuit: Circuit) -> dict[str, int]:
    """Count gates by kind; ``TOFFOLI`` includes every arity >= 2."""
    counts = Counter(g.kind for g in circuit.gates)
    stats = {kind.value: counts.get(kind, 0) for kind in GateKind}
    stats["total"] = len(circuit.gates)
    return stats
