"""Compile permutation matrices to X/CNOT/Toffoli circuits with QASM export.

A permutation matrix over a 2^k basis is decomposed into transpositions
of encoded bit-strings; each transposition is realized as a Gray-code
chain of multi-controlled X gates (with positive and negative controls),
and every multi-controlled X is lowered to Toffoli gates through a
compute/uncompute ladder over ancilla qubits, which are always returned
to zero.  Circuits simulate classically when only X/CX/CCX occur and by
sparse statevector otherwise, and export to OpenQASM 2.0.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .relalg import FinBasis
from .vecmonad import AmpVec, CMatrix, PRUNE_EPS

__all__ = [
    "AncillaError",
    "Circuit",
    "Encoding",
    "Gate",
    "Metrics",
    "NonPermutationError",
    "decompose_mcx",
    "export_qasm",
    "metrics",
    "parse_qasm",
    "peephole",
    "simulate",
    "simulate_state",
    "synth_permutation",
]

_SQRT2_INV = 1.0 / np.sqrt(2.0)
_T_PHASE = np.exp(1j * np.pi / 4)


class NonPermutationError(ValueError):
    """Raised for inputs outside the permutation fragment: general unitary
    synthesis is out of scope here."""


class AncillaError(ValueError):
    """Raised when a decomposition lacks ancilla room, or a circuit leaves
    an ancilla dirty."""


@dataclass(frozen=True)
class Encoding:
    """Bijection between basis labels and k-bit strings (index binary)."""

    basis: FinBasis

    def __post_init__(self) -> None:
        n = len(self.basis)
        k = n.bit_length() - 1
        if n != 1 << k:
            raise ValueError(f"basis size {n} is not a power of two")
        object.__setattr__(self, "width", k)

    width: int = field(init=False, repr=False, compare=False)

    def bits_of(self, label: str) -> str:
        return format(self.basis.index(label), f"0{self.width}b")

    def label_of(self, bits: str) -> str:
        if len(bits) != self.width or set(bits) - {"0", "1"}:
            raise ValueError(f"bad bit-string {bits!r} for width {self.width}")
        return self.basis.labels[int(bits, 2)]


@dataclass(frozen=True)
class Gate:
    """One gate; qubits list controls first, target last.

    ``ctrl_state`` gives one polarity bit per control for ``mcx`` (1 fires
    on a set control); plain cx/ccx controls are implicitly positive.
    """

    name: str
    qubits: tuple[int, ...]
    ctrl_state: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        arity = {"x": 1, "h": 1, "t": 1, "tdg": 1, "cx": 2, "ccx": 3}
        if self.name in arity:
            if len(self.qubits) != arity[self.name]:
                raise ValueError(f"{self.name} takes {arity[self.name]} qubits")
            if self.ctrl_state:
                raise ValueError(f"{self.name} does not carry a polarity list")
        elif self.name == "mcx":
            if len(self.qubits) < 2:
                raise ValueError("mcx needs at least one control and a target")
            if len(self.ctrl_state) != len(self.qubits) - 1:
                raise ValueError("mcx polarity list must match control count")
        else:
            raise ValueError(f"unknown gate kind {self.name!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("gate qubits must be distinct")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over data qubits followed by ancilla qubits."""

    data_qubits: int
    ancilla_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        total = self.data_qubits + self.ancilla_qubits
        for g in self.gates:
            if any(q < 0 or q >= total for q in g.qubits):
                raise ValueError(f"gate {g} out of range for {total} qubits")

    @property
    def total_qubits(self) -> int:
        return self.data_qubits + self.ancilla_qubits

    def is_classical(self) -> bool:
        return all(g.name in ("x", "cx", "ccx", "mcx") for g in self.gates)


@dataclass(frozen=True)
class Metrics:
    size: int
    cx: int
    depth: int

    def to_json(self) -> str:
        return json.dumps({"size": self.size, "cx": self.cx, "depth": self.depth})


# ---------------------------------------------------------------------------
# Multi-controlled X lowering

def decompose_mcx(
    controls: tuple[tuple[int, int], ...], target: int, ancillas: tuple[int, ...]
) -> tuple[Gate, ...]:
    """Lower an MCX with per-control polarity to {X, CX, CCX}.

    Negative controls are conjugated by X; three or more controls use a
    CCX compute/uncompute ladder needing ``len(controls) - 2`` ancillas,
    each restored to its prior value.
    """
    need = max(0, len(controls) - 2)
    if len(ancillas) < need:
        raise AncillaError(f"need {need} ancillas, have {len(ancillas)}")

    flips = tuple(Gate("x", (q,)) for q, pol in controls if pol == 0)
    qs = tuple(q for q, _ in controls)

    core: list[Gate]
    if len(qs) == 0:
        core = [Gate("x", (target,))]
    elif len(qs) == 1:
        core = [Gate("cx", (qs[0], target))]
    elif len(qs) == 2:
        core = [Gate("ccx", (qs[0], qs[1], target))]
    else:
        compute = [Gate("ccx", (qs[0], qs[1], ancillas[0]))]
        for i in range(len(qs) - 3):
            compute.append(Gate("ccx", (ancillas[i], qs[i + 2], ancillas[i + 1])))
        hit = Gate("ccx", (ancillas[len(qs) - 3], qs[-1], target))
        core = compute + [hit] + list(reversed(compute))
    return flips + tuple(core) + flips


# ---------------------------------------------------------------------------
# Permutation synthesis

def _permutation_of(m: CMatrix, tol: float = 1e-9) -> list[int]:
    rows, cols = m.entries.shape
    if rows != cols:
        raise NonPermutationError("matrix is not square")
    perm = []
    for j in range(cols):
        col = m.entries[:, j]
        ones = np.nonzero(np.abs(col - 1.0) <= tol)[0]
        if len(ones) != 1 or np.max(np.abs(col), initial=0.0) > 1.0 + tol:
            raise NonPermutationError(
                "matrix is not a 0/1 permutation; general unitary synthesis is out of scope"
            )
        others = np.abs(col) > tol
        if int(np.count_nonzero(others)) != 1:
            raise NonPermutationError(
                "matrix is not a 0/1 permutation; general unitary synthesis is out of scope"
            )
        perm.append(int(ones[0]))
    if sorted(perm) != list(range(rows)):
        raise NonPermutationError("columns do not form a permutation")
    return perm


def _transpositions(perm: list[int]) -> list[tuple[int, int]]:
    seen = [False] * len(perm)
    out: list[tuple[int, int]] = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        for other in cycle[1:]:
            out.append((cycle[0], other))
    return out


def _adjacent_swap_mcx(u: int, v: int, width: int) -> Gate:
    """MCX swapping two states at Hamming distance one (bit 0 = leftmost)."""
    diff = u ^ v
    target = width - diff.bit_length()
    controls = []
    state = []
    for q in range(width):
        if q == target:
            continue
        controls.append(q)
        state.append((u >> (width - 1 - q)) & 1)
    return Gate("mcx", tuple(controls) + (target,), tuple(state))


def _gray_chain(u: int, v: int, width: int) -> list[Gate]:
    """Transposition (u v) as a Gray-code chain of adjacent-state swaps."""
    diffs = [q for q in range(width) if ((u ^ v) >> (width - 1 - q)) & 1]
    path = [u]
    cur = u
    for q in diffs:
        cur ^= 1 << (width - 1 - q)
        path.append(cur)
    ups = [_adjacent_swap_mcx(path[i], path[i + 1], width) for i in range(len(path) - 1)]
    return ups + ups[:-1][::-1]


def synth_permutation(m: CMatrix, enc: Encoding) -> Circuit:
    """Circuit over data qubits (plus ancillas) realizing a permutation matrix
    on the encoded computational basis."""
    if m.src != enc.basis or m.tgt != enc.basis:
        raise ValueError("matrix bases must match the encoding basis")
    perm = _permutation_of(m)
    width = enc.width

    mcx_gates: list[Gate] = []
    for u, v in _transpositions(perm):
        mcx_gates.extend(_gray_chain(u, v, width))

    need = max((max(0, len(g.qubits) - 3) for g in mcx_gates), default=0)
    ancillas = tuple(range(width, width + need))
    lowered: list[Gate] = []
    for g in mcx_gates:
        controls = tuple(zip(g.qubits[:-1], g.ctrl_state))
        lowered.extend(decompose_mcx(controls, g.qubits[-1], ancillas))
    return peephole(Circuit(width, need, tuple(lowered)))


def peephole(c: Circuit) -> Circuit:
    """Cancel adjacent identical self-inverse gates until a fixed point."""
    gates = list(c.gates)
    changed = True
    while changed:
        changed = False
        i = 0
        out: list[Gate] = []
        while i < len(gates):
            if (
                i + 1 < len(gates)
                and gates[i] == gates[i + 1]
                and gates[i].name in ("x", "cx", "ccx", "h")
            ):
                i += 2
                changed = True
            else:
                out.append(gates[i])
                i += 1
        gates = out
    return Circuit(c.data_qubits, c.ancilla_qubits, tuple(gates))


# ---------------------------------------------------------------------------
# Simulation

def _classical_step(bits: list[int], g: Gate) -> None:
    if g.name == "x":
        bits[g.qubits[0]] ^= 1
    elif g.name == "cx":
        if bits[g.qubits[0]]:
            bits[g.qubits[1]] ^= 1
    elif g.name == "ccx":
        if bits[g.qubits[0]] and bits[g.qubits[1]]:
            bits[g.qubits[2]] ^= 1
    elif g.name == "mcx":
        if all(bits[q] == pol for q, pol in zip(g.qubits[:-1], g.ctrl_state)):
            bits[g.qubits[-1]] ^= 1
    else:
        raise ValueError(f"not a classical gate: {g.name}")


def simulate(c: Circuit, input_bits: str, tol: float = 1e-9) -> str:
    """Run a circuit on one computational-basis input.

    Classical circuits follow the permutation path; otherwise the
    statevector is computed and must collapse to a single basis state.
    Ancillas start at zero and must return to zero.
    """
    if len(input_bits) != c.data_qubits or set(input_bits) - {"0", "1"}:
        raise ValueError(f"input must be {c.data_qubits} bits")
    if c.is_classical():
        bits = [int(b) for b in input_bits] + [0] * c.ancilla_qubits
        for g in c.gates:
            _classical_step(bits, g)
        data = bits[: c.data_qubits]
        if any(bits[c.data_qubits:]):
            raise AncillaError(f"ancillas left dirty on input {input_bits}")
        return "".join(str(b) for b in data)
    out = simulate_state(c, AmpVec({input_bits: 1.0}), tol=tol)
    states = [(lbl, a) for lbl, a in out.items() if abs(a) > tol]
    if len(states) != 1 or abs(abs(states[0][1]) - 1.0) > tol:
        raise ValueError("output is not a computational basis state")
    return states[0][0]


def simulate_state(c: Circuit, v: AmpVec, tol: float = 1e-9) -> AmpVec:
    """Statevector action on a ket over data-qubit bit-strings."""
    state: dict[str, complex] = {}
    for label, a in v.items():
        if len(label) != c.data_qubits or set(label) - {"0", "1"}:
            raise ValueError(f"state label {label!r} must be {c.data_qubits} bits")
        state[label + "0" * c.ancilla_qubits] = a

    def flipped(bits: str, q: int) -> str:
        return bits[:q] + ("1" if bits[q] == "0" else "0") + bits[q + 1 :]

    for g in c.gates:
        nxt: dict[str, complex] = {}
        if g.name in ("x", "cx", "ccx", "mcx"):
            for bits, a in state.items():
                vals = [int(b) for b in bits]
                fire = (
                    g.name == "x"
                    or (g.name == "cx" and vals[g.qubits[0]])
                    or (g.name == "ccx" and vals[g.qubits[0]] and vals[g.qubits[1]])
                    or (
                        g.name == "mcx"
                        and all(vals[q] == p for q, p in zip(g.qubits[:-1], g.ctrl_state))
                    )
                )
                key = flipped(bits, g.qubits[-1]) if fire else bits
                nxt[key] = nxt.get(key, 0j) + a
        elif g.name == "h":
            q = g.qubits[0]
            for bits, a in state.items():
                sign = -1.0 if bits[q] == "1" else 1.0
                for key, w in ((bits[:q] + "0" + bits[q + 1 :], _SQRT2_INV),
                               (bits[:q] + "1" + bits[q + 1 :], sign * _SQRT2_INV)):
                    nxt[key] = nxt.get(key, 0j) + a * w
        elif g.name in ("t", "tdg"):
            q = g.qubits[0]
            phase = _T_PHASE if g.name == "t" else np.conj(_T_PHASE)
            for bits, a in state.items():
                nxt[bits] = nxt.get(bits, 0j) + (a * phase if bits[q] == "1" else a)
        else:
            raise ValueError(f"unknown gate kind {g.name!r}")
        state = {k: a for k, a in nxt.items() if abs(a) >= PRUNE_EPS}

    out: dict[str, complex] = {}
    for bits, a in state.items():
        if abs(a) <= tol:
            continue
        if any(b == "1" for b in bits[c.data_qubits :]):
            raise AncillaError("synthesis bug: amplitude on a dirty ancilla")
        data = bits[: c.data_qubits]
        out[data] = out.get(data, 0j) + a
    return AmpVec(out)


# ---------------------------------------------------------------------------
# Metrics and OpenQASM 2.0

def metrics(c: Circuit) -> Metrics:
    front = [0] * max(1, c.total_qubits)
    for g in c.gates:
        level = 1 + max(front[q] for q in g.qubits)
        for q in g.qubits:
            front[q] = level
    depth = max(front) if c.gates else 0
    cx = sum(1 for g in c.gates if g.name == "cx")
    return Metrics(size=len(c.gates), cx=cx, depth=depth)


def _qref(c: Circuit, q: int) -> str:
    if q < c.data_qubits:
        return f"q[{q}]"
    return f"anc[{q - c.data_qubits}]"


def export_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text; multi-controlled gates must be lowered first."""
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{c.data_qubits}];"]
    if c.ancilla_qubits:
        lines.append(f"qreg anc[{c.ancilla_qubits}];")
    for g in c.gates:
        if g.name == "mcx":
            raise ValueError("lower mcx gates with decompose_mcx before export")
        refs = ",".join(_qref(c, q) for q in g.qubits)
        lines.append(f"{g.name} {refs};")
    return "\n".join(lines) + "\n"


_QASM_GATE = re.compile(r"^(x|h|t|tdg|cx|ccx)\s+(.+);$")
_QASM_REF = re.compile(r"^(q|anc)\[(\d+)\]$")


def parse_qasm(text: str) -> Circuit:
    """Parse the emitted OpenQASM 2.0 subset back into a circuit."""
    data = ancilla = None
    gates: list[Gate] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("//"):
            continue
        if line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = re.fullmatch(r"qreg\s+(q|anc)\[(\d+)\];", line)
        if m:
            if m.group(1) == "q":
                data = int(m.group(2))
            else:
                ancilla = int(m.group(2))
            continue
        gm = _QASM_GATE.fullmatch(line)
        if gm is None:
            raise ValueError(f"unsupported QASM line: {raw!r}")
        if data is None:
            raise ValueError("gate before qreg declaration")
        qubits = []
        for ref in gm.group(2).split(","):
            rm = _QASM_REF.fullmatch(ref.strip())
            if rm is None:
                raise ValueError(f"bad qubit reference {ref!r}")
            offset = 0 if rm.group(1) == "q" else data
            qubits.append(offset + int(rm.group(2)))
        gates.append(Gate(gm.group(1), tuple(qubits)))
    if data is None:
        raise ValueError("missing qreg declaration")
    return Circuit(data, ancilla or 0, tuple(gates))
