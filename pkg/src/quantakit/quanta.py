"""Recursion combinators: reversible folds and their quantum lifting.

The classical reversible fold carries the input list unchanged to the
output while the payload accumulates a step function; its quantum
counterpart takes a unitary step on an (item, payload) pair basis and
recurses structurally over lists, producing an operation whose
materialization over a truncated list basis is unitary and block-diagonal
by list length.

Truncated list bases are enumerated in a pinned cons-preorder: emit a
list, then recursively the lists obtained by prepending each item in
item-basis order, bounded by the maximum length, with the payload label
varying fastest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from .relalg import (
    BIT,
    ComplementError,
    FinBasis,
    Rel,
    coproduct_basis,
    from_function,
    is_injective,
    kernel,
    list_label,
    pair,
    pair_label,
    product_basis,
    split_list,
    split_pair,
    tag_left,
    tag_right,
    untag,
)
from .vecmonad import (
    AmpVec,
    KleisliOp,
    direct_sum,
    is_unitary,
    kleisli,
    materialize,
    ret,
    ret_op,
    tensor,
)

__all__ = [
    "ListBasis",
    "alpha",
    "alpha_inv",
    "assoc_inv_op",
    "assoc_op",
    "cata",
    "check_fst_complement",
    "mapaccum",
    "pinned16_basis",
    "psi",
    "quantamorphism",
    "quantamorphism_over",
    "quantamorphism_via_psi",
    "rfold",
    "rfold_rel",
    "run_quanta",
    "step_shape",
    "xl_op",
]


# ---------------------------------------------------------------------------
# Truncated list bases

def _enumerate_lists(items: tuple[str, ...], maxlen: int) -> tuple[tuple[str, ...], ...]:
    out: list[tuple[str, ...]] = []

    def walk(t: tuple[str, ...]) -> None:
        out.append(t)
        if len(t) < maxlen:
            for a in items:
                walk((a,) + t)

    walk(())
    return tuple(out)


@dataclass(frozen=True)
class ListBasis:
    """Basis of (list, payload) pairs for lists up to a maximum length."""

    maxlen: int
    item: FinBasis = BIT
    payload: FinBasis = BIT
    lists: tuple[tuple[str, ...], ...] = field(init=False, repr=False, compare=False)
    list_basis: FinBasis = field(init=False, repr=False, compare=False)
    basis: FinBasis = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.maxlen < 0:
            raise ValueError("maxlen must be non-negative")
        lists = _enumerate_lists(self.item.labels, self.maxlen)
        object.__setattr__(self, "lists", lists)
        list_basis = FinBasis(tuple(list_label(t) for t in lists))
        object.__setattr__(self, "list_basis", list_basis)
        object.__setattr__(self, "basis", product_basis(list_basis, self.payload))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.basis.labels


def pinned16_basis() -> FinBasis:
    """The 16-state basis: all lists up to length 2, then the two states
    on the all-zero length-3 list, matching a 4-bit binary encoding."""
    upto2 = ListBasis(2).basis.labels
    extra = (
        pair_label(list_label(("0", "0", "0")), "0"),
        pair_label(list_label(("0", "0", "0")), "1"),
    )
    return FinBasis(upto2 + extra)


def step_shape(step: KleisliOp) -> tuple[FinBasis, FinBasis]:
    """Recover (item, payload) bases from a step's pair-product source."""
    firsts: list[str] = []
    seconds: list[str] = []
    for label in step.src:
        a, b = split_pair(label)
        if a not in firsts:
            firsts.append(a)
        if b not in seconds:
            seconds.append(b)
    item, payload = FinBasis(tuple(firsts)), FinBasis(tuple(seconds))
    if product_basis(item, payload) != step.src:
        raise ValueError("step source is not an (item, payload) product basis")
    return item, payload


# ---------------------------------------------------------------------------
# Classical reversible folds

def check_fst_complement(
    table: Mapping[str, str], item: FinBasis, payload: FinBasis
) -> None:
    """Reject step tables not injective in the payload once the item is fixed."""
    src = product_basis(item, payload)
    f = from_function(lambda l: table[l], src, payload)
    fst = from_function(lambda l: split_pair(l)[0], src, item)
    if is_injective(pair(fst, f)):
        return
    k = kernel(pair(fst, f)).entries
    for i, x in enumerate(src):
        for j, y in enumerate(src):
            if i < j and k[i, j]:
                raise ComplementError(
                    f"step not first-projection complemented: inputs {x} and {y} collide"
                )


def rfold(
    table: Mapping[str, str],
    xs: tuple[str, ...],
    b: str,
    item: FinBasis = BIT,
    payload: FinBasis = BIT,
) -> tuple[tuple[str, ...], str]:
    """Reversible fold: list passes through, payload accumulates the step."""
    check_fst_complement(table, item, payload)
    return _rfold_run(table, xs, b)


def _rfold_run(table: Mapping[str, str], xs: tuple[str, ...], b: str) -> tuple[tuple[str, ...], str]:
    if not xs:
        return (), b
    y, b2 = _rfold_run(table, xs[1:], b)
    return (xs[0],) + y, table[pair_label(xs[0], b2)]


def mapaccum(
    table: Mapping[str, str], xs: tuple[str, ...], b: str
) -> tuple[tuple[str, ...], str]:
    """Generalized fold for steps (a,b) -> (c,b): items may be rewritten."""
    if not xs:
        return (), b
    y, b2 = mapaccum(table, xs[1:], b)
    c, b3 = split_pair(table[pair_label(xs[0], b2)])
    return (c,) + y, b3


def rfold_rel(
    table: Mapping[str, str],
    maxlen: int,
    item: FinBasis = BIT,
    payload: FinBasis = BIT,
) -> Rel:
    """The reversible fold tabulated as a relation on a truncated basis."""
    check_fst_complement(table, item, payload)
    lb = ListBasis(maxlen, item, payload)

    def act(label: str) -> str:
        l, b = split_pair(label)
        ys, b2 = _rfold_run(table, split_list(l), b)
        return pair_label(list_label(ys), b2)

    return from_function(act, lb.basis, lb.basis)


def cata(
    algebra: Callable[[int, str], str],
    maxlen: int,
    carrier: FinBasis,
    item: FinBasis = BIT,
    payload: FinBasis = BIT,
) -> Rel:
    """Classical fold into an arbitrary carrier, tabulated as a function.

    ``algebra(0, b)`` handles the empty list; ``algebra(1, "(a,c)")``
    combines a head item with the value folded from the tail.
    """
    lb = ListBasis(maxlen, item, payload)
    memo: dict[tuple[tuple[str, ...], str], str] = {}

    def fold(t: tuple[str, ...], b: str) -> str:
        key = (t, b)
        if key not in memo:
            if not t:
                memo[key] = algebra(0, b)
            else:
                memo[key] = algebra(1, pair_label(t[0], fold(t[1:], b)))
        return memo[key]

    def act(label: str) -> str:
        l, b = split_pair(label)
        return fold(split_list(l), b)

    return from_function(act, lb.basis, carrier)


# ---------------------------------------------------------------------------
# The quantum fold

def _quanta_apply(step: KleisliOp) -> Callable[[str], AmpVec]:
    item, payload = step_shape(step)
    memo: dict[tuple[tuple[str, ...], str], AmpVec] = {}

    def fold(t: tuple[str, ...], b: str) -> AmpVec:
        key = (t, b)
        if key in memo:
            return memo[key]
        if not t:
            out = ret(pair_label(list_label(()), b))
        else:
            head, tail = t[0], t[1:]
            acc: dict[str, complex] = {}
            for sub, w1 in fold(tail, b).items():
                t2, b2 = split_pair(sub)
                for hb, w2 in step.apply(pair_label(head, b2)).items():
                    h2, b3 = split_pair(hb)
                    out_label = pair_label(
                        list_label((h2,) + split_list(t2)), b3
                    )
                    acc[out_label] = acc.get(out_label, 0j) + w1 * w2
            out = AmpVec(acc)
        memo[key] = out
        return out

    def apply(label: str) -> AmpVec:
        l, b = split_pair(label)
        return fold(split_list(l), b)

    return apply


def quantamorphism(step: KleisliOp, maxlen: int, validate: bool = True) -> KleisliOp:
    """Structural quantum fold of a unitary step over a truncated list basis."""
    item, payload = step_shape(step)
    if validate and not is_unitary(materialize(step, step.src)):
        raise ValueError("quantamorphism step must materialize to a unitary matrix")
    lb = ListBasis(maxlen, item, payload)
    return KleisliOp(lb.basis, _quanta_apply(step))


def quantamorphism_over(step: KleisliOp, basis: FinBasis, validate: bool = True) -> KleisliOp:
    """Same fold, restricted to an explicitly pinned (list, payload) basis."""
    if validate and not is_unitary(materialize(step, step.src)):
        raise ValueError("quantamorphism step must materialize to a unitary matrix")
    return KleisliOp(basis, _quanta_apply(step))


def run_quanta(step: KleisliOp, input_label: str) -> AmpVec:
    """Apply the quantum fold to one (list, payload) basis state."""
    return _quanta_apply(step)(input_label)


# ---------------------------------------------------------------------------
# Structural isomorphisms

def xl_op(a: FinBasis, b: FinBasis, c: FinBasis) -> KleisliOp:
    """Permutation (x,(y,z)) -> (y,(x,z)) swapping the first two of three."""
    src = product_basis(a, product_basis(b, c))

    def act(label: str) -> str:
        x, yz = split_pair(label)
        y, z = split_pair(yz)
        return pair_label(y, pair_label(x, z))

    return KleisliOp(src, lambda l: ret(act(l)))


def assoc_op(a: FinBasis, b: FinBasis, c: FinBasis) -> KleisliOp:
    """Associator (x,(y,z)) -> ((x,y),z)."""
    src = product_basis(a, product_basis(b, c))

    def act(label: str) -> str:
        x, yz = split_pair(label)
        y, z = split_pair(yz)
        return pair_label(pair_label(x, y), z)

    return KleisliOp(src, lambda l: ret(act(l)))


def assoc_inv_op(a: FinBasis, b: FinBasis, c: FinBasis) -> KleisliOp:
    """Inverse associator ((x,y),z) -> (x,(y,z))."""
    src = product_basis(product_basis(a, b), c)

    def act(label: str) -> str:
        xy, z = split_pair(label)
        x, y = split_pair(xy)
        return pair_label(x, pair_label(y, z))

    return KleisliOp(src, lambda l: ret(act(l)))


def _alpha_act(label: str, maxlen: int) -> str:
    side, body = untag(label)
    if side == 0:
        return pair_label(list_label(()), body)
    a, lb = split_pair(body)
    l, b = split_pair(lb)
    items = (a,) + split_list(l)
    if len(items) > maxlen:
        raise ValueError(f"cons exceeds maximum list length {maxlen}")
    return pair_label(list_label(items), b)


def alpha(maxlen: int, item: FinBasis = BIT, payload: FinBasis = BIT) -> KleisliOp:
    """List-algebra isomorphism B + A x (A*<maxlen x B) -> A*<=maxlen x B."""
    if maxlen < 1:
        raise ValueError("alpha needs maxlen >= 1")
    inner = ListBasis(maxlen - 1, item, payload)
    src = coproduct_basis(payload, product_basis(item, inner.basis))
    return KleisliOp(src, lambda l: ret(_alpha_act(l, maxlen)))


def alpha_inv(maxlen: int, item: FinBasis = BIT, payload: FinBasis = BIT) -> KleisliOp:
    """Inverse of alpha: uncons non-empty lists, tag empty ones left."""
    if maxlen < 1:
        raise ValueError("alpha_inv needs maxlen >= 1")
    outer = ListBasis(maxlen, item, payload)

    def act(label: str) -> str:
        l, b = split_pair(label)
        items = split_list(l)
        if not items:
            return tag_left(b)
        rest = pair_label(list_label(items[1:]), b)
        return tag_right(pair_label(items[0], rest))

    return KleisliOp(outer.basis, lambda l: ret(act(l)))


def psi(x: KleisliOp, maxlen: int) -> KleisliOp:
    """One unfolding layer: alpha after (id + xl . (id x x) . xl)."""
    item, payload = step_shape(x)
    inner = ListBasis(maxlen - 1, item, payload)
    first = xl_op(item, inner.list_basis, payload)
    middle = tensor(ret_op(inner.list_basis), x)
    back = xl_op(inner.list_basis, item, payload)
    branch = kleisli(back, kleisli(middle, first))
    return kleisli(alpha(maxlen, item, payload), direct_sum(ret_op(payload), branch))


def quantamorphism_via_psi(step: KleisliOp, maxlen: int) -> KleisliOp:
    """The fold recomposed from its one-layer unfolding, for cross-checking."""
    item, payload = step_shape(step)
    if maxlen == 0:
        return ret_op(ListBasis(0, item, payload).basis)
    smaller = quantamorphism_via_psi(step, maxlen - 1)
    wired = direct_sum(ret_op(payload), tensor(ret_op(item), smaller))
    return kleisli(psi(step, maxlen), kleisli(wired, alpha_inv(maxlen, item, payload)))
