"""Group rings Z_t[G] in coefficient form.

Elements are length-|G| integer arrays reduced mod t, indexed by the group
element indices of G. Nothing here enumerates the ring, so Z_4 over a group of
order 24 costs the same as Z_2 over a group of order 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BadParameter, InternalInconsistency, LengthMismatch
from .exactalg import CoeffVec, CoordinatePermutation, SubmoduleBasis, closure_under_operators
from .groups import FiniteGroup
from .rings import NotAUnit


class GroupRingZt:
    def __init__(self, t: int, G: FiniteGroup):
        if t < 2:
            raise BadParameter("group ring coefficients need t >= 2")
        G.require_table("group ring arithmetic")
        self.t = t
        self.group = G
        self.n = G.order
        T = np.asarray(G.table, dtype=np.int64)
        inv = np.asarray(G.inverses, dtype=np.int64)
        # (ab)[k] = sum_h a[k h^-1] b[h]
        self._conv = T[:, inv]
        self._left = [CoordinatePermutation(T[g, :]) for g in range(self.n)]
        self._right = [CoordinatePermutation(T[:, g]) for g in range(self.n)]

    def __repr__(self):
        return f"<Z{self.t}[{self.group.label}]>"

    # constructors
    def zero(self) -> np.ndarray:
        return np.zeros(self.n, dtype=np.int64)

    def scalar(self, c: int) -> np.ndarray:
        v = self.zero()
        v[self.group.identity] = c % self.t
        return v

    def one(self) -> np.ndarray:
        return self.scalar(1)

    def basis(self, g: int) -> np.ndarray:
        v = self.zero()
        v[g] = 1
        return v

    def from_terms(self, terms: Iterable[tuple[int, int]]) -> np.ndarray:
        """Sum of coeff * g over (coeff, g) pairs."""
        v = self.zero()
        for c, g in terms:
            v[g] += c
        return v % self.t

    def coerce(self, x) -> np.ndarray:
        if isinstance(x, CoeffVec):
            if x.modulus != self.t or x.length != self.n:
                raise LengthMismatch("coefficient vector does not belong to this group ring")
            return x.array()
        arr = np.asarray(x, dtype=np.int64)
        if arr.shape != (self.n,):
            raise LengthMismatch(f"expected {self.n} coefficients, got shape {arr.shape}")
        return arr % self.t

    def vec(self, x) -> CoeffVec:
        return CoeffVec.from_array(self.coerce(x), self.t)

    # arithmetic
    def add(self, a, b):
        return (self.coerce(a) + self.coerce(b)) % self.t

    def sub(self, a, b):
        return (self.coerce(a) - self.coerce(b)) % self.t

    def neg(self, a):
        return (-self.coerce(a)) % self.t

    def scale(self, a, c: int):
        return (self.coerce(a) * c) % self.t

    def mul(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        return (a[self._conv] @ b) % self.t

    def power(self, a, e: int):
        result, base = self.one(), self.coerce(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def equal(self, a, b) -> bool:
        return bool((self.coerce(a) == self.coerce(b)).all())

    def is_one(self, a) -> bool:
        return self.equal(a, self.one())

    def element_order(self, a, limit: int | None = None):
        """Least m with a^m = 1, or NotAUnit when none exists up to the limit.

        The default limit is the exponent bound for units in a ring with
        t^|G| elements, capped to keep the scan cheap; the callers here only
        need orders dividing small powers of two and three.
        """
        if limit is None:
            limit = 4096
        x = self.coerce(a)
        cur = x
        for m in range(1, limit + 1):
            if self.is_one(cur):
                return m
            cur = self.mul(cur, x)
        return NotAUnit

    def left_operators(self, elements: Sequence[int] | None = None):
        idx = range(self.n) if elements is None else elements
        return [self._left[g] for g in idx]

    def right_operators(self, elements: Sequence[int] | None = None):
        idx = range(self.n) if elements is None else elements
        return [self._right[g] for g in idx]

    def format(self, a, names: Mapping[int, str] | None = None) -> str:
        a = self.coerce(a)
        terms = []
        for g in np.flatnonzero(a):
            label = names.get(int(g)) if names else None
            if label is None:
                label = str(self.group.element_label(int(g)))
            c = int(a[g])
            terms.append(label if c == 1 else f"{c}*{label}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class IdealBasis:
    ring: GroupRingZt = field(repr=False)
    basis: SubmoduleBasis

    @property
    def size(self) -> int:
        return self.basis.size()

    @property
    def log2_size(self) -> float:
        return math.log2(self.size)

    def contains(self, x) -> bool:
        return self.basis.contains(self.ring.vec(x))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def is_two_sided(self) -> bool:
        """Every basis row stays inside under left and right multiplication by every g."""
        R = self.ring
        for row in self.basis.rows:
            arr = row.array()
            for g in range(R.n):
                if not self.contains(R._left[g].apply_array(arr)):
                    return False
                if not self.contains(R._right[g].apply_array(arr)):
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "modulus": self.ring.t,
            "length": self.ring.n,
            "rank": self.basis.rank,
            "size": self.basis.size(),
            "log2_size": self.log2_size,
            "pivot_values": list(self.basis.pivot_values),
            "is_full": self.basis.is_full(),
        }


def group_ring_ideal(ring: GroupRingZt, gens: Iterable) -> IdealBasis:
    """Smallest two-sided ideal of Z_t[G] containing gens.

    Closing under multiplication by a generating set of G on each side gives
    the same module as closing under every element, since each element is a
    word in the generators.
    """
    gens = [ring.vec(g) for g in gens]
    G = ring.group
    ops = ring.left_operators(G.generators()) + ring.right_operators(G.generators())
    basis = closure_under_operators(gens, ops, ring.t, length=ring.n)
    return IdealBasis(ring, basis)


@dataclass(frozen=True)
class EmbeddingResult:
    injective: bool
    witness: tuple[int, int] | None
    kernel: tuple[int, ...]

    def __bool__(self):
        return self.injective

    def to_dict(self, G: FiniteGroup | None = None) -> dict:
        lab = (lambda g: str(G.element_label(g))) if G is not None else (lambda g: g)
        return {
            "injective": self.injective,
            "witness": None if self.witness is None else [lab(g) for g in self.witness],
            "kernel_size": len(self.kernel),
        }


def group_embedding_injective(I: IdealBasis) -> EmbeddingResult:
    """Is G -> Z_t[G]/I injective?

    g and h have the same image iff h^-1 g - 1 lies in I (multiply g - h on
    the left by the unit h^-1), so the kernel is {g : g - 1 in I} and the map
    is injective iff that set is trivial. A witness is a pair (g, e) with g
    a nontrivial kernel element.
    """
    R = I.ring
    e = R.group.identity
    one = R.one()
    kernel = tuple(g for g in range(R.n) if I.contains(R.sub(R.basis(g), one)))
    if e not in kernel:
        raise InternalInconsistency("identity is missing from the kernel")
    nontrivial = [g for g in kernel if g != e]
    witness = (nontrivial[0], e) if nontrivial else None
    return EmbeddingResult(not nontrivial, witness, kernel)


def injective_by_pairs(I: IdealBasis) -> EmbeddingResult:
    """Direct pairwise test of g - h in I; the slow definition, kept as an oracle."""
    R = I.ring
    G = R.group
    kernel = {G.identity}
    witness = None
    for g in range(R.n):
        for h in range(g):
            if I.contains(R.sub(R.basis(g), R.basis(h))):
                if witness is None:
                    witness = (g, h)
                kernel.add(G.mul(G.inverse(h), g))
                kernel.add(G.mul(G.inverse(g), h))
    return EmbeddingResult(witness is None, witness, tuple(sorted(kernel)))
