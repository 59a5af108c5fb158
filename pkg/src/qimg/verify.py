"""Brute-force oracles for covers and circuits.

Nothing here touches the ternary tree: covers are checked by direct
evaluation, circuits by classical bit propagation or a dense statevector.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .circuit import Circuit, Gate, GateKind
from .esop import DC, EsopCover
from .neqr import NeqrImage, ideal_map

#: Above this many variables equivalence is sampled rather than exhaustive.
EXHAUSTIVE_LIMIT = 20
SAMPLE_SIZE = 1_000_000
MAX_STATEVECTOR_QUBITS = 14


class NotClassicalError(ValueError):
    pass


class QubitBudgetError(ValueError):
    pass


def esop_eval(cover: EsopCover, assignment) -> int:
    """XOR over cubes of "every non-DC symbol equals the assignment bit"."""
    bits = [int(b) for b in assignment]
    if len(bits) != cover.num_vars:
        raise ValueError(f"assignment has {len(bits)} bits, cover has {cover.num_vars} variables")
    value = 0
    for cube in cover.cubes:
        if all(s == DC or int(s) == b for s, b in zip(cube, bits)):
            value ^= 1
    return value


def _care_and_value(cube):
    care = int(cube.replace("0", "1").replace(DC, "0"), 2) if cube else 0
    value = int(cube.replace(DC, "0"), 2) if cube else 0
    return care, value


def cover_values(cover: EsopCover, assignments: np.ndarray) -> np.ndarray:
    """Evaluate ``cover`` at many assignments packed as integers (variable 0 = MSB)."""
    assignments = np.asarray(assignments, dtype=np.uint64)
    out = np.zeros(assignments.shape, dtype=bool)
    if not cover.cubes:
        return out
    pairs = np.array([_care_and_value(c) for c in cover.cubes], dtype=np.uint64)
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    pairs = pairs[order]
    cares, first = np.unique(pairs[:, 0], return_index=True)
    bounds = list(first[1:]) + [len(pairs)]
    for care, lo, hi in zip(cares, first, bounds):
        values, counts = np.unique(pairs[lo:hi, 1], return_counts=True)
        odd = values[counts % 2 == 1]
        if len(odd):
            out ^= np.isin(assignments & care, odd)
    return out


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    exhaustive: bool
    checked: int
    counterexample: Optional[str] = None

    def __bool__(self):
        return self.equivalent


def check_equivalence(c1: EsopCover, c2: EsopCover, seed: int = 0) -> EquivalenceResult:
    """Compare two covers on every assignment, or on 10^6 random ones past 20 variables."""
    if c1.num_vars != c2.num_vars:
        raise ValueError(f"covers have {c1.num_vars} and {c2.num_vars} variables")
    n = c1.num_vars
    exhaustive = n <= EXHAUSTIVE_LIMIT
    if n > 64:
        raise ValueError("covers wider than 64 variables are not supported")
    if exhaustive:
        assignments = np.arange(1 << n, dtype=np.uint64)
    else:
        rng = np.random.default_rng(seed)
        assignments = rng.integers(0, (1 << n) - 1, size=SAMPLE_SIZE, dtype=np.uint64,
                                   endpoint=True)
    diff = cover_values(c1, assignments) != cover_values(c2, assignments)
    if diff.any():
        bad = int(assignments[int(np.argmax(diff))])
        return EquivalenceResult(False, exhaustive, len(assignments), format(bad, f"0{n}b") if n else "")
    return EquivalenceResult(True, exhaustive, len(assignments))


# ---------------------------------------------------------------------------
# Classical reversible simulation


def classical_simulate(circuit: Circuit, bits: Sequence[int]) -> tuple[int, ...]:
    """Push one classical bit per line through an H-free circuit."""
    state = [int(b) & 1 for b in bits]
    if len(state) != circuit.layout.num_lines:
        raise ValueError(f"expected {circuit.layout.num_lines} input bits, got {len(state)}")
    for gate in circuit.gates:
        if gate.kind is GateKind.H:
            raise NotClassicalError("H gate in classical simulation; strip the H prefix")
        if all(state[line] == pos for line, pos in gate.controls):
            state[gate.target] ^= 1
    return tuple(state)


def _to_bitsets(states):
    packed = np.packbits(states, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _from_bitsets(bitsets, batch):
    nbytes = (batch + 7) // 8
    raw = b"".join(b.to_bytes(nbytes, "little") for b in bitsets)
    packed = np.frombuffer(raw, dtype=np.uint8).reshape(len(bitsets), nbytes)
    return np.unpackbits(packed, axis=1, count=batch, bitorder="little").astype(bool)


def simulate_batch(circuit: Circuit, states: np.ndarray) -> np.ndarray:
    """Vectorized :func:`classical_simulate`; ``states`` is ``(num_lines, batch)`` bool.

    Each line is held as one Python integer with a bit per batch column.
    """
    states = np.asarray(states, dtype=bool)
    if states.ndim != 2 or states.shape[0] != circuit.layout.num_lines:
        raise ValueError(f"expected ({circuit.layout.num_lines}, batch) states, got {states.shape}")
    batch = states.shape[1]
    if batch == 0:
        return states.copy()
    full = (1 << batch) - 1
    bits = _to_bitsets(states)
    for gate in circuit.gates:
        controls = gate.controls
        if not controls:
            if gate.kind is GateKind.H:
                raise NotClassicalError("H gate in classical simulation; strip the H prefix")
            bits[gate.target] ^= full
            continue
        fire = full
        for line, pos in controls:
            fire &= bits[line] if pos else ~bits[line]
        bits[gate.target] ^= fire & full
    return _from_bitsets(bits, batch)


# ---------------------------------------------------------------------------
# Dense statevector

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def apply_gate(state: np.ndarray, gate: Gate, num_qubits: int) -> np.ndarray:
    """Apply one gate to a flat statevector.  Line 0 is the most significant index bit."""
    psi = state.reshape((2,) * num_qubits)
    if gate.kind is GateKind.H:
        psi = np.moveaxis(np.tensordot(_HADAMARD, psi, axes=([1], [gate.target])), 0, gate.target)
        return np.ascontiguousarray(psi).reshape(-1)
    psi = psi.copy()
    index = [slice(None)] * num_qubits
    for line, pos in gate.controls:
        index[line] = 1 if pos else 0
    # axis of the target inside the sliced view
    axis = gate.target - sum(1 for line, _ in gate.controls if line < gate.target)
    index = tuple(index)
    psi[index] = np.flip(psi[index], axis=axis)
    return psi.reshape(-1)


def statevector_simulate(circuit: Circuit, max_qubits: int = MAX_STATEVECTOR_QUBITS) -> np.ndarray:
    n = circuit.layout.num_lines
    if n > max_qubits:
        raise QubitBudgetError(f"{n} qubits exceeds the dense statevector cap of {max_qubits}")
    state = np.zeros(1 << n, dtype=complex)
    state[0] = 1.0
    for gate in circuit.gates:
        state = apply_gate(state, gate, n)
    return state


def basis_index(circuit_or_layout, bits: dict[int, int]) -> int:
    """Statevector index of the basis state with ``bits[line]`` set (others 0)."""
    layout = getattr(circuit_or_layout, "layout", circuit_or_layout)
    n = layout.num_lines
    index = 0
    for line, bit in bits.items():
        if bit:
            index |= 1 << (n - 1 - line)
    return index


# ---------------------------------------------------------------------------
# Whole-image check


@dataclass
class VerificationReport:
    positions_checked: int
    mismatches: list = field(default_factory=list)
    position_lines_restored: bool = True
    ancillas_clean: bool = True
    h_prefix_valid: bool = True

    @property
    def ok(self) -> bool:
        return (not self.mismatches and self.position_lines_restored
                and self.ancillas_clean and self.h_prefix_valid)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def split_h_prefix(circuit: Circuit) -> tuple[bool, Circuit]:
    """Check the H-on-every-position-line prefix and return the classical remainder."""
    layout = circuit.layout
    n = layout.num_position
    head = circuit.gates[:n]
    valid = (
        len(head) == n
        and all(g.kind is GateKind.H for g in head)
        and sorted(g.target for g in head) == list(range(n))
    )
    rest = circuit.gates[n:] if valid else circuit.gates
    valid = valid and not any(g.kind is GateKind.H for g in rest)
    rest = tuple(g for g in rest if g.kind is not GateKind.H)
    return valid, Circuit(layout, rest)


def verify_image(image: NeqrImage, circuit: Circuit, max_mismatches: int = 50) -> VerificationReport:
    """Run every position basis state through the network and compare with the image."""
    layout = circuit.layout
    if (layout.h, layout.w, layout.q, layout.channels) != (image.h, image.w, image.q, image.channels):
        raise ValueError("circuit layout does not match the image")
    valid, network = split_h_prefix(circuit)
    n_pos = layout.num_position
    count = 1 << n_pos
    positions = np.arange(count, dtype=np.int64)
    states = np.zeros((layout.num_lines, count), dtype=bool)
    for i in range(n_pos):
        states[i] = (positions >> (n_pos - 1 - i)) & 1
    start = states[:n_pos].copy()
    out = simulate_batch(network, states)

    expected = ideal_map(image)
    mismatches = []
    for ch in range(layout.channels):
        bits = out[list(layout.color_lines(ch))].astype(np.int64)
        weights = 1 << np.arange(layout.q - 1, -1, -1, dtype=np.int64)
        values = weights @ bits
        for p in np.flatnonzero(values != expected[:, ch])[:max_mismatches]:
            mismatches.append({
                "position": [int(p) >> layout.w, int(p) & ((1 << layout.w) - 1)],
                "channel": ch,
                "expected": int(expected[p, ch]),
                "actual": int(values[p]),
            })
    return VerificationReport(
        positions_checked=count,
        mismatches=mismatches,
        position_lines_restored=bool(np.array_equal(out[:n_pos], start)),
        ancillas_clean=not out[list(layout.ancilla_lines())].any(),
        h_prefix_valid=valid,
    )
