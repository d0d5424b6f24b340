import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg import limits
from finalg.errors import DivisionByZero, LengthMismatch, NonPrime, SizeExceeded
from finalg.exactalg import (CoeffVec, CoordinatePermutation, closure_under_operators, enumerate_span,
                             fq_field, fq_inv, submodule_from)


def V(entries, t):
    return CoeffVec(tuple(entries), t)


class TestFields:
    def test_f2_is_mod_2(self):
        F = fq_field(2, 1)
        assert F.q == 2
        assert F.add(1, 1) == 0

    def test_f4_modulus_and_inverse(self):
        F = fq_field(2, 2)
        assert tuple(F.modulus_poly) == (1, 1, 1)  # x^2 + x + 1, constant term first
        x = F.code([0, 1])
        x_plus_1 = F.code([1, 1])
        assert F.inv(x) == x_plus_1
        assert F.mul(x, x_plus_1) == 1

    def test_f9_multiplicative_group_cyclic_of_order_8(self):
        F = fq_field(3, 2)
        orders = [F.mult_order(a) for a in range(1, 9)]
        assert max(orders) == 8
        gen = orders.index(8) + 1
        assert len({F.pow(gen, e) for e in range(8)}) == 8

    @pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4)])
    def test_every_nonzero_element_is_invertible(self, p, k):
        F = fq_field(p, k)
        for a in range(1, F.q):
            assert F.mul(a, F.inv(a)) == 1
        assert max(F.mult_order(a) for a in range(1, F.q)) == F.q - 1

    def test_small_inverses(self):
        assert fq_field(2, 1).inv(1) == 1
        assert fq_field(3, 1).inv(2) == 2

    def test_fq_inv_on_elements(self):
        F = fq_field(2, 2)
        a = F.element(F.code([0, 1]))
        assert (a * fq_inv(a)).code == 1
        with pytest.raises(DivisionByZero):
            fq_inv(F.element(0))

    def test_errors(self):
        with pytest.raises(NonPrime):
            fq_field(4, 1)
        with limits.override(elements=100):
            with pytest.raises(SizeExceeded):
                fq_field(2, 8)

    def test_deterministic_modulus(self):
        assert fq_field(3, 3).modulus_poly == fq_field(3, 3).modulus_poly


class TestSubmodules:
    def test_empty_span(self):
        S = submodule_from([], 2, length=4)
        assert S.is_zero() and S.size() == 1
        assert V([0, 0, 0, 0], 2) in S
        assert V([1, 0, 0, 0], 2) not in S

    def test_z4_half_rank(self):
        S = submodule_from([V([2, 0], 4)], 4)
        assert V([2, 0], 4) in S and V([0, 0], 4) in S
        assert V([1, 0], 4) not in S
        assert S.size() == 2

    def test_z2_full_span(self):
        S = submodule_from([V([1, 1], 2), V([0, 1], 2)], 2)
        assert S.is_full() and S.size() == 4

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            submodule_from([V([1, 0], 4), V([1, 0, 0], 4)], 4)

    def test_z4_nonunit_pivot_mixing(self):
        # 2e1 + e2 and 2e2: contains 2e1 + 3e2? 2e1+e2 + 2e2 = 2e1 + 3e2, yes; e1 no
        S = submodule_from([V([2, 1], 4), V([0, 2], 4)], 4)
        assert V([2, 3], 4) in S
        assert V([1, 0], 4) not in S
        assert S.size() == len(enumerate_span([V([2, 1], 4), V([0, 2], 4)], 4, 2))


vectors_z4 = st.integers(1, 8).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=0, max_size=3),
    )
)


@settings(max_examples=120, deadline=None, derandomize=True)
@given(vectors_z4)
def test_z4_membership_matches_enumeration(data):
    n, rows = data
    vecs = [V(r, 4) for r in rows]
    S = submodule_from(vecs, 4, length=n)
    span = enumerate_span(vecs, 4, n)
    assert S.size() == len(span)
    if n <= 5:
        for cand in itertools.product(range(4), repeat=n):
            assert S.contains(V(cand, 4)) == (cand in span)
    else:
        rng = np.random.default_rng(len(rows) * 31 + n)
        for _ in range(200):
            cand = tuple(int(x) for x in rng.integers(0, 4, n))
            assert S.contains(V(cand, 4)) == (cand in span)
        for cand in span:
            assert S.contains(V(cand, 4))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.sampled_from([2, 3]), st.integers(1, 7), st.data())
def test_prime_membership_matches_rank(t, n, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, t - 1), min_size=n, max_size=n), max_size=4))
    S = submodule_from([V(r, t) for r in rows], t, length=n)

    def rank(M):
        M = [list(r) for r in M]
        r = 0
        for c in range(n):
            p = next((i for i in range(r, len(M)) if M[i][c] % t), None)
            if p is None:
                continue
            M[r], M[p] = M[p], M[r]
            inv = pow(M[r][c], -1, t)
            M[r] = [x * inv % t for x in M[r]]
            for i in range(len(M)):
                if i != r and M[i][c] % t:
                    f = M[i][c]
                    M[i] = [(a - f * b) % t for a, b in zip(M[i], M[r])]
            r += 1
        return r

    base = rank(rows)
    assert S.rank == base
    cand = data.draw(st.lists(st.integers(0, t - 1), min_size=n, max_size=n))
    assert S.contains(V(cand, t)) == (rank(rows + [cand]) == base)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(vectors_z4)
def test_rebuilding_from_basis_is_idempotent(data):
    n, rows = data
    S = submodule_from([V(r, 4) for r in rows], 4, length=n)
    assert submodule_from(S.rows, 4, length=n) == S


class TestClosure:
    def test_zero_generator(self):
        shift = CoordinatePermutation([1, 0])
        S = closure_under_operators([V([0, 0], 2)], [shift], 2)
        assert S.is_zero()

    def test_z2_c2(self):
        g = CoordinatePermutation([1, 0])
        S = closure_under_operators([V([1, 1], 2)], [g], 2)
        assert S.size() == 2
        assert V([1, 1], 2) in S and V([1, 0], 2) not in S

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_operator_stable(self, t):
        rng = np.random.default_rng(t)
        n = 7
        ops = [CoordinatePermutation(rng.permutation(n)) for _ in range(2)]
        gens = [V(rng.integers(0, t, n), t)]
        S = closure_under_operators(gens, ops, t)
        for row in S.rows:
            for op in ops:
                assert op(row) in S

    def test_operator_length_checked(self):
        with pytest.raises(LengthMismatch):
            closure_under_operators([V([1, 0, 0], 4)], [CoordinatePermutation([1, 0])], 4)
