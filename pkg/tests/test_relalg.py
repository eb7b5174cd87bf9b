import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference_tables as rt
from quantakit import relalg
from quantakit.gates import xor_table
from quantakit.relalg import (
    BIT,
    BasisMismatchError,
    FinBasis,
    Rel,
    SizeLimitError,
    bang,
    compose,
    converse,
    coproduct_basis,
    direct_sum,
    either,
    from_function,
    gamma,
    identity,
    image,
    inj1,
    inj2,
    is_bijection,
    is_difunctional,
    is_equivalence,
    is_function,
    is_injective,
    is_surjective,
    kernel,
    leq_injectivity,
    meet,
    minimal_complements,
    pair,
    pair_label,
    partition_blocks,
    product_basis,
    subset,
    u_construct,
    xor_monoid,
)

BB = product_basis(BIT, BIT)
B3 = FinBasis(("a", "b", "c"))
B5 = FinBasis(tuple("pqrst"))

XOR = from_function(xor_table(), BB, BIT)
FST = from_function(lambda l: relalg.split_pair(l)[0], BB, BIT)
SND = from_function(lambda l: relalg.split_pair(l)[1], BB, BIT)
NOT = from_function({"0": "1", "1": "0"}, BIT, BIT)
CNOT = pair(FST, XOR)


def rel_from_rows(rows, src=None, tgt=None):
    rows = np.array(rows, dtype=bool)
    src = src or FinBasis(tuple(str(i) for i in range(rows.shape[1])))
    tgt = tgt or FinBasis(tuple(str(i) for i in range(rows.shape[0])))
    return Rel(src, tgt, rows)


def random_rel(rng, src, tgt, p=0.5):
    return Rel(src, tgt, rng.random((len(tgt), len(src))) < p)


bool_matrices_5x5 = st.lists(
    st.lists(st.booleans(), min_size=5, max_size=5), min_size=5, max_size=5
)


class TestBasics:
    def test_basis_rejects_duplicates(self):
        with pytest.raises(ValueError):
            FinBasis(("x", "x"))

    def test_rel_shape_checked(self):
        with pytest.raises(ValueError):
            Rel(BIT, BIT, np.zeros((3, 2), dtype=bool))

    def test_product_basis_row_major(self):
        assert product_basis(BIT, BIT).labels == rt.PAIR_LABELS_4

    def test_coproduct_basis_orders_tags(self):
        assert coproduct_basis(BIT, BIT).labels == ("i1(0)", "i1(1)", "i2(0)", "i2(1)")

    def test_label_split_nesting(self):
        assert relalg.split_pair("([0,1],1)") == ("[0,1]", "1")
        assert relalg.split_list("[(0,0),(1,1)]") == ("(0,0)", "(1,1)")
        assert relalg.split_list("[]") == ()


class TestCompose:
    def test_identity_is_unit(self):
        assert compose(identity(BIT), XOR) == XOR
        assert compose(XOR, identity(BB)) == XOR

    def test_kernel_of_xor_matches_pinned_matrix(self):
        assert compose(converse(XOR), XOR) == rel_from_rows(rt.XOR_KERNEL, BB, BB)

    def test_against_exists_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            r = random_rel(rng, B5, B5)
            s = random_rel(rng, B5, B5)
            got = compose(r, s)
            for b in B5:
                for a in B5:
                    want = any(
                        r.holds(b, c) and s.holds(c, a) for c in B5
                    )
                    assert got.holds(b, a) == want

    def test_mismatch_raises(self):
        with pytest.raises(BasisMismatchError):
            compose(XOR, XOR)


class TestConverse:
    def test_identity(self):
        assert converse(identity(BIT)) == identity(BIT)

    def test_fst_transposes(self):
        assert converse(FST) == rel_from_rows(
            np.array(rt.FST_MATRIX).T, BIT, BB
        )

    @given(bool_matrices_5x5)
    def test_involution(self, rows):
        r = rel_from_rows(rows, B5, B5)
        assert converse(converse(r)) == r


class TestKernelImage:
    def test_kernel_of_xor(self):
        assert kernel(XOR) == rel_from_rows(rt.XOR_KERNEL, BB, BB)

    def test_kernel_of_identity(self):
        assert kernel(identity(B3)) == identity(B3)

    def test_kernel_of_function_is_equivalence(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            table = {x: B3.labels[rng.integers(3)] for x in B5}
            f = from_function(table, B5, B3)
            assert is_equivalence(kernel(f))

    def test_bijection_characterization(self):
        assert kernel(CNOT) == identity(BB) and image(CNOT) == identity(BB)
        assert is_bijection(CNOT)
        assert not (kernel(XOR) == identity(BB))


class TestPair:
    def test_fst_xor_is_cnot(self):
        assert CNOT == rel_from_rows(rt.CNOT_4, BB, product_basis(BIT, BIT))

    def test_pair_with_self_keeps_kernel(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            r = random_rel(rng, B3, BIT)
            assert kernel(pair(r, r)) == kernel(r)

    def test_kernel_of_pair_is_meet(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            r = random_rel(rng, B3, BIT)
            s = random_rel(rng, B3, B3)
            assert kernel(pair(r, s)) == meet(kernel(r), kernel(s))

    def test_source_mismatch(self):
        with pytest.raises(BasisMismatchError):
            pair(XOR, NOT)


class TestEitherSum:
    def test_sum_definition(self):
        rng = np.random.default_rng(9)
        r = random_rel(rng, BIT, B3)
        s = random_rel(rng, B3, BIT)
        assert either(compose(inj1(B3, BIT), r), compose(inj2(B3, BIT), s)) == direct_sum(r, s)

    def test_cancellation(self):
        rng = np.random.default_rng(13)
        r = random_rel(rng, BIT, B3)
        s = random_rel(rng, BIT, B3)
        assert compose(either(r, s), inj1(BIT, BIT)) == r
        assert compose(either(r, s), inj2(BIT, BIT)) == s

    def test_exchange_law(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            r = random_rel(rng, BIT, BIT)
            s = random_rel(rng, BIT, B3)
            t = random_rel(rng, B3, BIT)
            v = random_rel(rng, B3, B3)
            assert either(pair(r, s), pair(t, v)) == pair(either(r, t), either(s, v))

    def test_target_mismatch(self):
        with pytest.raises(BasisMismatchError):
            either(XOR, identity(BB))


class TestGamma:
    def test_xor_after_gamma_is_junc_of_id_and_not(self):
        assert compose(XOR, gamma(BIT)) == either(identity(BIT), NOT)

    def test_gamma_is_iso(self):
        g = gamma(B3)
        assert compose(g, converse(g)) == identity(g.tgt)
        assert compose(converse(g), g) == identity(g.src)
        assert is_bijection(g)

    def test_cnot_transposes_gamma(self):
        lhs = compose(CNOT, gamma(BIT))
        rhs = compose(gamma(BIT), direct_sum(identity(BIT), NOT))
        assert lhs == rhs


class TestTaxonomy:
    def test_cnot_is_bijection(self):
        assert is_bijection(CNOT)

    def test_xor_surjective_not_injective(self):
        assert is_surjective(XOR)
        assert not is_injective(XOR)
        assert is_function(XOR)

    def test_one_per_column_is_function(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            table = {x: B5.labels[rng.integers(5)] for x in B5}
            assert is_function(from_function(table, B5, B5))


class TestInjectivityPreorder:
    def test_between_bang_and_identity(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            table = {x: B3.labels[rng.integers(3)] for x in B5}
            f = from_function(table, B5, B3)
            assert leq_injectivity(f, identity(B5))
            assert leq_injectivity(bang(B5), f)

    def test_pairing_increases_injectivity(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            r = random_rel(rng, B5, BIT)
            s = random_rel(rng, B5, B3)
            assert leq_injectivity(r, pair(r, s))
            assert leq_injectivity(s, pair(s, r))

    def test_source_mismatch(self):
        with pytest.raises(BasisMismatchError):
            leq_injectivity(XOR, NOT)


class TestDifunctional:
    def test_pinned_counterexample(self):
        assert not is_difunctional(rel_from_rows(rt.NOT_DIFUNCTIONAL, BB, BB))

    def test_kernel_of_fst_is_difunctional(self):
        assert is_difunctional(kernel(FST))

    def test_column_criterion_oracle(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            r = random_rel(rng, B5, B3)
            cols = [r.entries[:, j] for j in range(len(B5))]
            want = all(
                not (c1 & c2).any() or (c1 == c2).all()
                for c1, c2 in itertools.combinations(cols, 2)
            )
            assert is_difunctional(r) == want


def all_partitions(n):
    if n == 0:
        yield ()
        return
    for rest in all_partitions(n - 1):
        x = n - 1
        for i, block in enumerate(rest):
            yield rest[:i] + (block + (x,),) + rest[i + 1 :]
        yield rest + ((x,),)


class TestMinimalComplements:
    def test_xor_has_the_two_projection_partitions(self):
        got = {partition_blocks(q) for q in minimal_complements(XOR)}
        fst_blocks = (("(0,0)", "(0,1)"), ("(1,0)", "(1,1)"))
        snd_blocks = (("(0,0)", "(1,0)"), ("(0,1)", "(1,1)"))
        assert got == {fst_blocks, snd_blocks}

    def test_identity_needs_only_one_block(self):
        comps = minimal_complements(identity(B3))
        assert len(comps) == 1
        assert partition_blocks(comps[0]) == (("a", "b", "c"),)

    def test_and_gate_against_unpruned_oracle(self):
        and_fn = from_function(
            {l: "1" if l == "(1,1)" else "0" for l in BB}, BB, BIT
        )
        ker = kernel(and_fn).entries

        def keeps(p):
            return all(
                not ker[i, j]
                for block in p
                for i in block
                for j in block
                if i != j
            )

        kept = [p for p in all_partitions(4) if keeps(p)]

        def refines(p, q):
            owner = {x: k for k, b in enumerate(q) for x in b}
            return all(len({owner[x] for x in b}) == 1 for b in p)

        want = {
            tuple(sorted(tuple(sorted(b)) for b in p))
            for p in kept
            if not any(refines(p, q) and p != q for q in kept)
        }
        got = set()
        for q in minimal_complements(and_fn):
            blocks = partition_blocks(q)
            got.add(tuple(sorted(tuple(sorted(BB.index(x) for x in b)) for b in blocks)))
        assert got == want

    def test_outputs_restore_injectivity_and_are_maximal(self):
        for q in minimal_complements(XOR):
            assert is_function(q)
            assert is_injective(pair(XOR, q))
            blocks = partition_blocks(q)
            for p in all_partitions(4):
                named = tuple(tuple(BB.labels[i] for i in b) for b in p)
                strictly_coarser = _refines_named(blocks, named) and set(
                    map(frozenset, named)
                ) != set(map(frozenset, blocks))
                if strictly_coarser:
                    e = _partition_rel(named)
                    assert not (meet(e, kernel(XOR)) == identity(BB))

    def test_size_limit(self):
        big = FinBasis(tuple(str(i) for i in range(13)))
        with pytest.raises(SizeLimitError):
            minimal_complements(identity(big))

    def test_requires_function(self):
        with pytest.raises(ValueError):
            minimal_complements(kernel(XOR))


def _refines_named(p, q):
    owner = {}
    for k, b in enumerate(q):
        for x in b:
            owner[x] = k
    return all(len({owner[x] for x in b}) == 1 for b in p)


def _partition_rel(blocks):
    m = np.zeros((4, 4), dtype=bool)
    for b in blocks:
        for x in b:
            for y in b:
                m[BB.index(x), BB.index(y)] = True
    return Rel(BB, BB, m)


class TestEnvelope:
    def test_cnot_from_identity(self):
        u = u_construct(identity(BIT), xor_monoid())
        assert u == rel_from_rows(rt.CNOT_4, BB, BB)

    def test_ccnot_from_conjunction(self):
        and_fn = from_function(
            {l: "1" if l == "(1,1)" else "0" for l in BB}, BB, BIT
        )
        u = u_construct(and_fn, xor_monoid())
        b8 = product_basis(BB, BIT)
        assert u == rel_from_rows(rt.CCNOT_8, b8, b8)

    def test_projection_recovers_f(self):
        rng = np.random.default_rng(37)
        for _ in range(20):
            table = {x: BIT.labels[rng.integers(2)] for x in B5}
            f = from_function(table, B5, BIT)
            u = u_construct(f, xor_monoid())
            for x in B5:
                out = next(o for o, i in u.pairs() if i == pair_label(x, "0"))
                assert relalg.split_pair(out) == (x, table[x])

    def test_always_self_inverse_bijection(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            table = {x: BIT.labels[rng.integers(2)] for x in B3}
            u = u_construct(from_function(table, B3, BIT), xor_monoid())
            assert is_bijection(u)
            assert compose(u, u) == identity(u.src)

    def test_monoid_laws_checked(self):
        bad = {k: v for k, v in xor_monoid().op.items()}
        bad[("1", "1")] = "1"
        with pytest.raises(ValueError):
            relalg.MonoidSpec(BIT, bad, "0")


class TestShunting:
    def test_shunting_law(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            table = {x: B3.labels[rng.integers(3)] for x in BIT}
            g = from_function(table, BIT, B3)
            r = random_rel(rng, B3, BIT)
            s = random_rel(rng, BIT, BIT)
            assert leq_injectivity(compose(r, g), s) == leq_injectivity(
                r, compose(s, converse(g))
            )


class TestTextFormats:
    def test_truth_table_round_trip(self):
        text = relalg.format_truth_table(XOR)
        back = relalg.parse_truth_table(text)
        assert back.src.labels == BB.labels
        assert relalg.format_truth_table(back) == text

    def test_truth_table_rejects_duplicates(self):
        with pytest.raises(ValueError):
            relalg.parse_truth_table("a -> 0\na -> 1\n")

    def test_bool_matrix_dump(self):
        assert relalg.format_bool_matrix(FST) == "1 1 0 0\n0 0 1 1\n"
        labeled = relalg.format_bool_matrix(FST, labels=True)
        assert labeled.splitlines()[0] == "0: 1 1 0 0"
