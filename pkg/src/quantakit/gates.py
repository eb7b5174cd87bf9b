"""Gate zoo and control combinators over the vector-space monad.

Classical tables are lifted with ``ret``; Hadamard and T are the only
strictly quantum primitives.  The quantum choice combinator routes the
payload through a branch selected by the control bit without measuring
it (control 0 takes the first branch, control 1 the second), and the
McCarthy conditional preprocesses the control and then applies its
if-branch on control 1.
"""
from __future__ import annotations

import cmath
import math
from typing import Mapping

from .relalg import BIT, FinBasis, pair_label, product_basis, split_pair
from .vecmonad import (
    AmpVec,
    CMatrix,
    KleisliOp,
    bind,
    is_unitary,
    kleisli,
    materialize,
    ret,
    ret_op,
    tensor,
)

__all__ = [
    "GateLibrary",
    "NOT_TABLE",
    "alice",
    "bell",
    "ccnot_table",
    "choice",
    "cnot_table",
    "cond",
    "default_library",
    "had",
    "lift",
    "mccarthy",
    "tgate",
    "unbell",
    "xor_table",
]

_SQRT2_INV = 1.0 / math.sqrt(2.0)

NOT_TABLE = {"0": "1", "1": "0"}


def lift(table: Mapping[str, str], src: FinBasis) -> KleisliOp:
    """Classical function as a Kleisli arrow: a -> ret(f(a))."""
    missing = [x for x in src if x not in table]
    if missing:
        raise ValueError(f"partial table, missing {missing[0]!r}")
    frozen = dict(table)
    return KleisliOp(src, lambda a: ret(frozen[a]))


def had() -> KleisliOp:
    """Hadamard: equal-weight superposition, sign flip on |1>."""

    def apply(a: str) -> AmpVec:
        if a == "0":
            return AmpVec({"0": _SQRT2_INV, "1": _SQRT2_INV})
        return AmpVec({"0": _SQRT2_INV, "1": -_SQRT2_INV})

    return KleisliOp(BIT, apply)


def tgate() -> KleisliOp:
    """Phase gate diag(1, e^{i pi/4})."""
    phase = cmath.exp(1j * math.pi / 4)
    return KleisliOp(BIT, lambda a: ret("0") if a == "0" else AmpVec({"1": phase}))


def cnot_table() -> dict[str, str]:
    """(a,b) -> (a, a xor b) over the 2-bit pair basis."""
    out = {}
    for a in BIT:
        for b in BIT:
            out[pair_label(a, b)] = pair_label(a, xor_table()[pair_label(a, b)])
    return out


def xor_table() -> dict[str, str]:
    return {
        pair_label(a, b): "1" if a != b else "0" for a in BIT for b in BIT
    }


def ccnot_table() -> dict[str, str]:
    """((a,b),c) -> ((a,b), (a and b) xor c)."""
    out = {}
    for a in BIT:
        for b in BIT:
            ab = pair_label(a, b)
            for c in BIT:
                flipped = NOT_TABLE[c] if a == b == "1" else c
                out[pair_label(ab, c)] = pair_label(ab, flipped)
    return out


def bell() -> KleisliOp:
    """Hadamard on the first bit, then the controlled negation."""
    src = product_basis(BIT, BIT)
    cnot = cnot_table()

    def apply(label: str) -> AmpVec:
        a, b = split_pair(label)
        return bind(had().apply(a), KleisliOp(BIT, lambda x: ret(cnot[pair_label(x, b)])))

    return KleisliOp(src, apply)


def unbell() -> KleisliOp:
    """Inverse block: controlled negation first, then Hadamard on the control."""
    src = product_basis(BIT, BIT)
    cnot = cnot_table()

    def apply(label: str) -> AmpVec:
        c, a = split_pair(label)
        _, a2 = split_pair(cnot[pair_label(c, a)])
        return bind(had().apply(c), KleisliOp(BIT, lambda b: ret(pair_label(b, a2))))

    return KleisliOp(src, apply)


def alice() -> KleisliOp:
    """Entangle the last two bits, then un-entangle the first two."""
    src = product_basis(BIT, product_basis(BIT, BIT))
    mk_bell, mk_unbell = bell(), unbell()

    def apply(label: str) -> AmpVec:
        c, ab = split_pair(label)
        acc: dict[str, complex] = {}
        for ab2, w1 in mk_bell.apply(ab).items():
            a2, b2 = split_pair(ab2)
            for ca, w2 in mk_unbell.apply(pair_label(c, a2)).items():
                c2, a3 = split_pair(ca)
                out = pair_label(c2, pair_label(a3, b2))
                acc[out] = acc.get(out, 0j) + w1 * w2
        return AmpVec(acc)

    return KleisliOp(src, apply)


def choice(f: KleisliOp, g: KleisliOp) -> KleisliOp:
    """Quantum choice f <> g: control 0 routes the payload through f,
    control 1 through g, the control bit passing through untouched."""
    if f.src != g.src:
        raise ValueError("choice branches must share their payload basis")
    src = product_basis(BIT, f.src)

    def apply(label: str) -> AmpVec:
        a, b = split_pair(label)
        branch = f if a == "0" else g
        return AmpVec({pair_label(a, k): amp for k, amp in branch.apply(b).items()})

    return KleisliOp(src, apply)


def mccarthy(p: KleisliOp, f: KleisliOp, g: KleisliOp) -> KleisliOp:
    """Guarded choice: apply p to the control, then f on 1 and g on 0."""
    selected = choice(g, f)
    return kleisli(selected, tensor(p, ret_op(f.src)))


def cond() -> KleisliOp:
    """Hadamard the control; negate on 1, Hadamard on 0."""
    return mccarthy(had(), lift(NOT_TABLE, BIT), had())


class GateLibrary:
    """Named registry of operations; registration checks unitarity."""

    def __init__(self) -> None:
        self._ops: dict[str, tuple[KleisliOp, FinBasis]] = {}

    def register(self, name: str, op: KleisliOp, tgt: FinBasis | None = None,
                 tol: float = 1e-9) -> None:
        tgt = tgt if tgt is not None else op.src
        if not is_unitary(materialize(op, tgt), tol):
            raise ValueError(f"gate {name!r} does not materialize to a unitary matrix")
        self._ops[name] = (op, tgt)

    def names(self) -> tuple[str, ...]:
        return tuple(self._ops)

    def __contains__(self, name: str) -> bool:
        return name in self._ops

    def op(self, name: str) -> KleisliOp:
        return self._get(name)[0]

    def tgt(self, name: str) -> FinBasis:
        return self._get(name)[1]

    def matrix(self, name: str) -> CMatrix:
        op, tgt = self._get(name)
        return materialize(op, tgt)

    def _get(self, name: str) -> tuple[KleisliOp, FinBasis]:
        try:
            return self._ops[name]
        except KeyError:
            raise KeyError(f"unknown gate {name!r}") from None


def default_library() -> GateLibrary:
    lib = GateLibrary()
    bb = product_basis(BIT, BIT)
    lib.register("x", lift(NOT_TABLE, BIT))
    lib.register("h", had())
    lib.register("t", tgate())
    lib.register("id", ret_op(bb))
    lib.register("cnot", lift(cnot_table(), bb))
    lib.register("ccnot", lift(ccnot_table(), product_basis(bb, BIT)))
    lib.register("bell", bell())
    lib.register("unbell", unbell())
    lib.register("alice", alice())
    lib.register("cond", cond())
    return lib
