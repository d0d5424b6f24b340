import itertools

import numpy as np
import pytest

from finalg.exactalg import submodule_from
from finalg.groups import cyclic, dihedral, quaternion8, sl2, symmetric
from finalg.grouprings import GroupRingZt, group_embedding_injective, group_ring_ideal, injective_by_pairs
from finalg.rings import GroupRingRing, NotAUnit, units
from finalg.verifier import SL23Frame, char2_elements

# GF(2) dimensions of (A + x, B + y) in Z_2[SL2(F_3)], x and y over 1,-1,i,-i,j,-j,k,-k;
# frozen from an elimination over span{g a h} that shares no code with the library
CHAR2_DIMENSIONS = [
    21, 21, 21, 21, 21, 21, 21, 21,
    21, 21, 21, 21, 21, 21, 21, 21,
    21, 21, 19, 19, 21, 21, 21, 21,
    21, 21, 19, 19, 21, 21, 21, 21,
    21, 21, 21, 21, 21, 21, 19, 19,
    21, 21, 21, 21, 21, 21, 19, 19,
    19, 19, 21, 21, 21, 21, 21, 21,
    19, 19, 21, 21, 21, 21, 21, 21,
]


def gf2_rank(rows) -> int:
    M = np.array(rows, dtype=np.uint8) % 2
    r = 0
    for c in range(M.shape[1]):
        piv = np.flatnonzero(M[r:, c])
        if not len(piv):
            continue
        p = r + piv[0]
        M[[r, p]] = M[[p, r]]
        for q in np.flatnonzero(M[:, c]):
            if q != r:
                M[q] ^= M[r]
        r += 1
        if r == M.shape[0]:
            break
    return r


def test_z2_c2_ideal_of_one_plus_g():
    R = GroupRingZt(2, cyclic(2))
    I = group_ring_ideal(R, [R.from_terms([(1, 0), (1, 1)])])
    assert I.size == 2
    assert I.contains([1, 1]) and not I.contains([1, 0])


def _brute_ideal(R, gen):
    """Two-sided ideal generated by gen, by saturating a set of coefficient tuples."""
    everything = [np.array(v) for v in itertools.product(range(R.t), repeat=R.n)]
    ideal = {tuple(R.zero()), tuple(R.coerce(gen))}
    while True:
        grown = set(ideal)
        for x in map(np.array, ideal):
            for r in everything:
                grown.add(tuple(R.mul(r, x)))
                grown.add(tuple(R.mul(x, r)))
        for a, b in itertools.product(list(grown), repeat=2):
            grown.add(tuple((np.array(a) + np.array(b)) % R.t))
        if grown == ideal:
            return ideal
        ideal = grown


@pytest.mark.parametrize("terms", [[(1, 0), (1, 1)], [(1, 0), (1, 3)], [(1, 1), (1, 2)], [(1, 0)], [(1, 1), (1, 5)]])
def test_z2_s3_closure_matches_brute_force(terms):
    G = symmetric(3)
    R = GroupRingZt(2, G)
    gen = R.from_terms(terms)
    I = group_ring_ideal(R, [gen])
    brute = _brute_ideal(R, gen)
    assert I.size == len(brute)
    for v in itertools.product(range(2), repeat=6):
        assert I.contains(np.array(v)) == (v in brute)
    assert I.is_two_sided()


def test_zero_and_unit_generators():
    R = GroupRingZt(4, quaternion8())
    zero = group_ring_ideal(R, [])
    assert zero.size == 1
    assert group_embedding_injective(zero).injective
    full = group_ring_ideal(R, [R.one()])
    assert full.size == 4 ** 8 and full.basis.is_full()
    emb = group_embedding_injective(full)
    assert not emb.injective and len(emb.kernel) == 8


@pytest.fixture(scope="module")
def char2_setup():
    F = SL23Frame()
    R = GroupRingZt(2, F.G)
    A, B = char2_elements(F, R)
    return F, R, A, B


def test_a_and_b_orders(char2_setup):
    F, R, A, B = char2_setup
    assert R.element_order(A) == 8
    assert R.element_order(B) == 8
    assert R.is_one(R.power(A, 8)) and R.is_one(R.power(B, 8))


def test_char2_dimension_table(char2_setup):
    F, R, A, B = char2_setup
    dims = []
    for x, y in itertools.product(F.q8, F.q8):
        I = group_ring_ideal(R, [R.add(A, R.basis(x)), R.add(B, R.basis(y))])
        assert I.is_two_sided()
        dims.append(I.basis.rank)
        assert not group_embedding_injective(I).injective
    assert dims == CHAR2_DIMENSIONS


@pytest.mark.parametrize("case", [0, 18, 27, 63])
def test_char2_dimension_by_independent_elimination(char2_setup, case):
    F, R, A, B = char2_setup
    x, y = F.q8[case // 8], F.q8[case % 8]
    gens = [R.add(A, R.basis(x)), R.add(B, R.basis(y))]
    n = F.G.order
    rows = [R.mul(R.mul(R.basis(g), a), R.basis(h)) for a in gens for g in range(n) for h in range(n)]
    I = group_ring_ideal(R, gens)
    assert gf2_rank(rows) == I.basis.rank == CHAR2_DIMENSIONS[case]
    # randomized membership: random combinations of the spanning rows are members
    rng = np.random.default_rng(case)
    stack = np.array(rows)
    for _ in range(50):
        pick = rng.integers(0, 2, len(rows))
        assert I.contains(pick @ stack % 2)


@pytest.mark.parametrize("case", [0, 5, 18, 27, 40, 63])
def test_pairwise_oracle_agrees(char2_setup, case):
    F, R, A, B = char2_setup
    x, y = F.q8[case // 8], F.q8[case % 8]
    I = group_ring_ideal(R, [R.add(A, R.basis(x)), R.add(B, R.basis(y))])
    fast, slow = group_embedding_injective(I), injective_by_pairs(I)
    assert fast.injective == slow.injective
    assert set(fast.kernel) == set(slow.kernel)


def test_z4_ideal_matches_spanning_set():
    F = SL23Frame()
    R = GroupRingZt(4, F.G)
    one = R.one()
    gens = [R.add(one, R.basis(F.m)), R.add(R.add(R.add(R.basis(F.i), R.basis(F.j)), R.basis(F.k)), one)]
    I = group_ring_ideal(R, gens)
    n = F.G.order
    span = submodule_from([R.vec(R.mul(R.mul(R.basis(g), a), R.basis(h)))
                           for a in gens for g in range(n) for h in range(n)], 4, length=n)
    assert span == I.basis
    assert I.is_two_sided()


@pytest.mark.parametrize("G", [cyclic(4), dihedral(8), quaternion8(), symmetric(3), dihedral(6)],
                         ids=lambda G: G.label)
def test_group_embeds_in_units_by_enumeration(G):
    R = GroupRingRing(2, G)
    ug = units(R)
    unit_set = set(ug.unit_elements)
    image = [R.encode_scalar([1 if h == g else 0 for h in range(G.order)]) for g in range(G.order)]
    assert len(set(image)) == G.order
    assert set(image) <= unit_set
    for g, h in itertools.product(range(G.order), repeat=2):
        assert R.mul(image[g], image[h]) == image[G.mul(g, h)]


def test_group_inclusion_multiplicative_in_z4_sl2_f3():
    G = sl2(3)
    R = GroupRingZt(4, G)
    for g, h in itertools.product(range(G.order), repeat=2):
        assert R.equal(R.mul(R.basis(g), R.basis(h)), R.basis(G.mul(g, h)))
    assert all(R.element_order(R.basis(g)) is not NotAUnit for g in range(G.order))


def test_mul_matches_enumerated_ring():
    G = dihedral(6)
    S = GroupRingZt(3, G)
    R = GroupRingRing(3, G)
    rng = np.random.default_rng(7)
    for _ in range(200):
        a, b = rng.integers(0, R.size, 2)
        va, vb = np.array(R.element_label(int(a))), np.array(R.element_label(int(b)))
        assert tuple(S.mul(va, vb)) == R.element_label(R.mul(int(a), int(b)))
