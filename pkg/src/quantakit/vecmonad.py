"""Finite-support complex amplitude vectors and the vector-space monad.

A ket is a sparse mapping from basis labels to complex amplitudes; an
operation is a function from basis labels to kets (a Kleisli arrow),
which materializes column by column into a typed complex matrix.  Monadic
bind is linear extension, Kleisli composition is matrix product, and the
tensor of two arrows materializes to the Kronecker product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .relalg import FinBasis, coproduct_basis, pair_label, product_basis, split_pair, tag_left, tag_right, untag

__all__ = [
    "DEFAULT_TOL",
    "PRUNE_EPS",
    "AmpVec",
    "CMatrix",
    "KleisliOp",
    "add",
    "bind",
    "dagger",
    "direct_sum",
    "format_matrix",
    "format_state",
    "from_matrix",
    "identity_matrix",
    "is_unitary",
    "kleisli",
    "kron",
    "materialize",
    "matmul",
    "norm",
    "parse_matrix",
    "ret",
    "ret_op",
    "scale",
    "tensor",
    "vec_equal",
    "zero_vec",
]

PRUNE_EPS = 1e-12
DEFAULT_TOL = 1e-9


class AmpVec:
    """Finite-support ket: basis label -> complex amplitude.

    Entries with magnitude below ``PRUNE_EPS`` are dropped at construction;
    the value is immutable afterwards.
    """

    __slots__ = ("_amps",)

    def __init__(self, amps: Mapping[str, complex] | Iterable[tuple[str, complex]] = ()):
        items = amps.items() if isinstance(amps, Mapping) else amps
        store: dict[str, complex] = {}
        for label, a in items:
            a = complex(a)
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError(f"non-finite amplitude at {label!r}")
            if abs(a) >= PRUNE_EPS:
                store[label] = store.get(label, 0j) + a
        self._amps = {k: v for k, v in store.items() if abs(v) >= PRUNE_EPS}

    def __getitem__(self, label: str) -> complex:
        return self._amps.get(label, 0j)

    def items(self) -> Iterable[tuple[str, complex]]:
        return self._amps.items()

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self._amps)

    def __len__(self) -> int:
        return len(self._amps)

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v:.6g}" for k, v in sorted(self._amps.items()))
        return f"AmpVec({{{body}}})"


def zero_vec() -> AmpVec:
    return AmpVec()


def ret(label: str) -> AmpVec:
    """Unit of the monad: the classical basis state |label>."""
    return AmpVec({label: 1.0 + 0j})


def add(u: AmpVec, v: AmpVec) -> AmpVec:
    out = dict(u.items())
    for k, a in v.items():
        out[k] = out.get(k, 0j) + a
    return AmpVec(out)


def scale(c: complex, v: AmpVec) -> AmpVec:
    return AmpVec({k: c * a for k, a in v.items()})


def norm(v: AmpVec) -> float:
    return math.sqrt(sum(abs(a) ** 2 for _, a in v.items()))


def vec_equal(u: AmpVec, v: AmpVec, tol: float = DEFAULT_TOL) -> bool:
    """Sup-norm comparison of two kets."""
    return all(abs(u[k] - v[k]) <= tol for k in u.support | v.support)


@dataclass(frozen=True)
class KleisliOp:
    """Operation as a vector-valued function on a source basis."""

    src: FinBasis
    apply: Callable[[str], AmpVec]

    def __call__(self, label: str) -> AmpVec:
        return self.apply(label)


def bind(v: AmpVec, f: KleisliOp) -> AmpVec:
    """Linear extension of f over the support of v."""
    acc: dict[str, complex] = {}
    for label, a in v.items():
        if label not in f.src:
            raise KeyError(f"label {label!r} outside operation source basis")
        for out, b in f.apply(label).items():
            acc[out] = acc.get(out, 0j) + a * b
    return AmpVec(acc)


def ret_op(basis: FinBasis) -> KleisliOp:
    return KleisliOp(basis, ret)


def kleisli(g: KleisliOp, f: KleisliOp) -> KleisliOp:
    """Kleisli composition g . f."""
    return KleisliOp(f.src, lambda a: bind(f.apply(a), g))


def tensor(f: KleisliOp, g: KleisliOp) -> KleisliOp:
    """Pairwise tensor on the row-major product basis."""
    src = product_basis(f.src, g.src)

    def apply(label: str) -> AmpVec:
        a, b = split_pair(label)
        fa, gb = f.apply(a), g.apply(b)
        return AmpVec(
            {pair_label(x, y): p * q for x, p in fa.items() for y, q in gb.items()}
        )

    return KleisliOp(src, apply)


def direct_sum(f: KleisliOp, g: KleisliOp) -> KleisliOp:
    """Blockwise action on the tagged coproduct basis."""
    src = coproduct_basis(f.src, g.src)

    def apply(label: str) -> AmpVec:
        side, x = untag(label)
        if side == 0:
            return AmpVec({tag_left(k): a for k, a in f.apply(x).items()})
        return AmpVec({tag_right(k): a for k, a in g.apply(x).items()})

    return KleisliOp(src, apply)


# ---------------------------------------------------------------------------
# Typed complex matrices

@dataclass(frozen=True, eq=False)
class CMatrix:
    """Complex matrix typed src -> tgt (rows tgt, columns src)."""

    src: FinBasis
    tgt: FinBasis
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.complex128).copy()
        if m.shape != (len(self.tgt), len(self.src)):
            raise ValueError(
                f"matrix shape {m.shape} does not match bases "
                f"{len(self.tgt)}x{len(self.src)}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CMatrix):
            return NotImplemented
        return (
            self.src == other.src
            and self.tgt == other.tgt
            and np.array_equal(self.entries, other.entries)
        )

    __hash__ = None  # type: ignore[assignment]

    def close_to(self, other: "CMatrix", tol: float = DEFAULT_TOL) -> bool:
        return (
            self.src == other.src
            and self.tgt == other.tgt
            and bool(np.max(np.abs(self.entries - other.entries), initial=0.0) <= tol)
        )


def materialize(f: KleisliOp, tgt: FinBasis) -> CMatrix:
    """Column j of the result is the ket f(src[j]) laid out over tgt."""
    m = np.zeros((len(tgt), len(f.src)), dtype=np.complex128)
    for j, x in enumerate(f.src):
        for label, a in f.apply(x).items():
            if label not in tgt:
                raise KeyError(f"output label {label!r} outside target basis")
            m[tgt.index(label), j] = a
    return CMatrix(f.src, tgt, m)


def from_matrix(m: CMatrix) -> KleisliOp:
    """Columns of a matrix re-read as a vector-valued function."""

    def apply(label: str) -> AmpVec:
        j = m.src.index(label)
        return AmpVec({m.tgt.labels[i]: m.entries[i, j] for i in range(len(m.tgt))})

    return KleisliOp(m.src, apply)


def identity_matrix(basis: FinBasis) -> CMatrix:
    return CMatrix(basis, basis, np.eye(len(basis), dtype=np.complex128))


def matmul(a: CMatrix, b: CMatrix) -> CMatrix:
    if b.tgt != a.src:
        raise ValueError("matmul: inner bases do not match")
    return CMatrix(b.src, a.tgt, a.entries @ b.entries)


def kron(a: CMatrix, b: CMatrix) -> CMatrix:
    return CMatrix(
        product_basis(a.src, b.src),
        product_basis(a.tgt, b.tgt),
        np.kron(a.entries, b.entries),
    )


def dagger(m: CMatrix) -> CMatrix:
    return CMatrix(m.tgt, m.src, m.entries.conj().T)


def is_unitary(m: CMatrix, tol: float = DEFAULT_TOL) -> bool:
    n, k = m.entries.shape
    if n != k:
        raise ValueError("is_unitary requires a square matrix")
    eye = np.eye(n)
    left = np.max(np.abs(m.entries @ m.entries.conj().T - eye))
    right = np.max(np.abs(m.entries.conj().T @ m.entries - eye))
    return bool(max(left, right) <= tol)


# ---------------------------------------------------------------------------
# Pinned text formats

def _fmt_amp(a: complex) -> str:
    re_part = 0.0 if a.real == 0 else a.real
    im_part = 0.0 if a.imag == 0 else a.imag
    return f"{re_part:.12g}{im_part:+.12g}i"


def _parse_amp(text: str) -> complex:
    if not text.endswith("i"):
        raise ValueError(f"malformed amplitude: {text!r}")
    body = text[:-1]
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "eE":
            return complex(float(body[:i]), float(body[i:]))
    raise ValueError(f"malformed amplitude: {text!r}")


def format_matrix(m: CMatrix) -> str:
    """Header of column labels, then one ``label: amps...`` line per row."""
    lines = [" ".join(m.src.labels)]
    for i, row_label in enumerate(m.tgt):
        cells = " ".join(_fmt_amp(m.entries[i, j]) for j in range(len(m.src)))
        lines.append(f"{row_label}: {cells}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> CMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix dump")
    src = FinBasis(tuple(lines[0].split()))
    tgt_labels: list[str] = []
    rows = []
    for ln in lines[1:]:
        label, _, rest = ln.partition(": ")
        cells = rest.split()
        if len(cells) != len(src):
            raise ValueError(f"row {label!r} has {len(cells)} cells, expected {len(src)}")
        tgt_labels.append(label)
        rows.append([_parse_amp(c) for c in cells])
    return CMatrix(src, FinBasis(tuple(tgt_labels)), np.array(rows, dtype=np.complex128))


def format_state(v: AmpVec, basis: FinBasis | None = None) -> str:
    """Nonzero amplitudes, one ``label: amp`` line, in basis (or sorted) order."""
    if basis is not None:
        labels = [x for x in basis if abs(v[x]) >= PRUNE_EPS]
    else:
        labels = sorted(v.support)
    lines = [f"{x}: {_fmt_amp(v[x])}" for x in labels]
    return "\n".join(lines) + ("\n" if lines else "")
