"""Finite groups as Cayley tables, with the structural queries the checks need.

Element orderings (all constructors are deterministic):

* ``cyclic(n)``: index i is g^i.
* ``dihedral(m)``, r = m/2: index i < r is rho^i, index r + i is rho^i sigma.
* ``quaternion8()``: 1, -1, i, -i, j, -j, k, -k.
* ``symmetric(n)``: permutations of range(n) in lexicographic order, composed
  right-to-left.
* ``direct_product(G, H)``: (g, h) has index g * |H| + h.
* ``holomorph(n)``: pairs (a, b), a in Z_n, b in Z_n^x, lexicographic in
  (a, b); (a, b)(a', b') = (a + b a', b b'), i.e. x -> b x + a composed with
  x -> b' x + a' (right factor applied first).
* ``agl1(q)``: as the holomorph, with a, b field codes.
* ``gl2(q)``, ``sl2(q)``: matrices (a, b, c, d) = [[a, b], [c, d]] of field
  codes, lexicographic in that tuple.

Holomorphs whose order exceeds the table limit get a structured group that
multiplies pairs on the fly; only generator-based queries (center, element
orders) work on those.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterable, Sequence

import numpy as np

from . import limits
from .errors import BadParameter, SizeExceeded
from .exactalg import euler_phi, field_of_order, prime_power, zmod_units


class FiniteGroup:
    def __init__(
        self,
        table: np.ndarray | None,
        identity: int,
        label: str,
        elements: Sequence | None = None,
        *,
        order: int | None = None,
        mul_vec: Callable | None = None,
        generators: Sequence[int] | None = None,
        meta: dict | None = None,
    ):
        if table is None and (order is None or mul_vec is None):
            raise ValueError("structured groups need an order and a multiplication")
        self.table = None if table is None else np.ascontiguousarray(table, dtype=np.int32)
        self.order = int(order if table is None else self.table.shape[0])
        self.identity = int(identity)
        self.label = label
        self.elements = list(elements) if elements is not None else None
        self._mul_vec = mul_vec
        self._generators = list(generators) if generators is not None else None
        self.meta = meta or {}
        self._cache: dict = {}

    def __repr__(self):
        return f"<FiniteGroup {self.label} of order {self.order}>"

    def __len__(self):
        return self.order

    @property
    def has_table(self) -> bool:
        return self.table is not None

    def require_table(self, what: str = "this query"):
        if self.table is None:
            raise SizeExceeded(f"{what} on {self.label}", self.order, limits.current().table)

    def mul(self, a: int, b: int) -> int:
        if self.table is not None:
            return int(self.table[a, b])
        return int(self._mul_vec(np.asarray([a]), np.asarray([b]))[0])

    def mul_vec(self, a, b) -> np.ndarray:
        if self.table is not None:
            return self.table[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return self._mul_vec(a, b)

    def power(self, g: int, e: int) -> int:
        if e < 0:
            g, e = self.inverse(g), -e
        result, base = self.identity, g
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    @property
    def inverses(self) -> np.ndarray:
        if "inv" not in self._cache:
            self.require_table("inverse table")
            self._cache["inv"] = np.argmax(self.table == self.identity, axis=1)
        return self._cache["inv"]

    def inverse(self, g: int) -> int:
        if self.table is not None:
            return int(self.inverses[g])
        return self.power(g, element_order(self, g) - 1)

    def element_label(self, i: int):
        if self.elements is None:
            return i
        return self.elements[i]

    def index_of(self, label) -> int:
        if "index" not in self._cache:
            self._cache["index"] = {e: i for i, e in enumerate(self.elements)}
        return self._cache["index"][label]

    def generators(self) -> list[int]:
        if self._generators is None:
            self._generators = _greedy_generators(self)
        return list(self._generators)

    def is_abelian(self) -> bool:
        if self.table is not None:
            return bool((self.table == self.table.T).all())
        gens = self.generators()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    members: tuple[int, ...]

    @classmethod
    def of(cls, parent: FiniteGroup, members: Iterable[int]) -> Subgroup:
        return cls(parent, tuple(sorted(int(m) for m in set(members))))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.mask_set

    @property
    def mask_set(self) -> frozenset:
        return frozenset(self.members)

    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def is_subset(self, other: Subgroup) -> bool:
        return self.mask_set <= other.mask_set

    def is_subgroup(self) -> bool:
        G = self.parent
        m = self.array()
        if G.identity not in self.mask_set:
            return False
        prods = G.mul_vec(m[:, None], m[None, :])
        return bool(np.isin(prods, m).all())

    def is_normal(self) -> bool:
        G = self.parent
        G.require_table("normality test")
        m = self.array()
        conj = G.table[G.table[:, m], G.inverses[:, None]]
        return bool(np.isin(conj, m).all())

    def as_group(self, label: str | None = None) -> FiniteGroup:
        G = self.parent
        G.require_table("subgroup table")
        m = self.array()
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[m] = np.arange(len(m))
        sub = pos[G.table[np.ix_(m, m)]]
        elements = [G.element_label(int(i)) for i in m] if G.elements is not None else None
        return FiniteGroup(sub, int(pos[G.identity]), label or f"subgroup of {G.label}", elements)


@dataclass
class IsoResult:
    isomorphic: bool
    witness: tuple[int, ...] | None = None
    obstruction: str | None = None

    def __bool__(self):
        return self.isomorphic

    def to_dict(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "witness": list(self.witness) if self.witness is not None else None,
            "obstruction": self.obstruction,
        }


# -- constructors ---------------------------------------------------------------


def _from_elements(elements: Sequence, mul: Callable, identity, label: str) -> FiniteGroup:
    """Tabulate a group given hashable elements and a scalar multiplication."""
    n = len(elements)
    limits.check_table(label, n)
    index = {e: i for i, e in enumerate(elements)}
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(elements):
        table[i] = [index[mul(a, b)] for b in elements]
    return FiniteGroup(table, index[identity], label, elements)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise BadParameter("cyclic group order must be >= 1")
    limits.check_table(f"C{n}", n)
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, 0, f"C{n}", list(range(n)))


def trivial() -> FiniteGroup:
    return cyclic(1)


def dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order m (m even); D2 = C2 and D4 = C2 x C2."""
    if m < 2 or m % 2:
        raise BadParameter(f"dihedral order must be even and >= 2, got {m}")
    limits.check_table(f"D{m}", m)
    r = m // 2
    idx = np.arange(m)
    rot, ref = idx % r, idx // r
    i, a = rot[:, None], ref[:, None]
    j, b = rot[None, :], ref[None, :]
    new_rot = (i + np.where(a == 1, -j, j)) % r
    new_ref = a ^ b
    elements = [(int(x), int(y)) for x, y in zip(rot, ref)]
    return FiniteGroup(new_ref * r + new_rot, 0, f"D{m}", elements)


_QUAT_UNITS = "1ijk"
# unit products x*y -> (sign, unit)
_QUAT_MUL = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion8() -> FiniteGroup:
    elements = [(s, u) for u in _QUAT_UNITS for s in (1, -1)]

    def mul(a, b):
        s, u = _QUAT_MUL[a[1], b[1]]
        return (a[0] * b[0] * s, u)

    return _from_elements(elements, mul, (1, "1"), "Q8")


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise BadParameter("symmetric groups are supported for 1 <= n <= 5")
    elements = list(permutations(range(n)))
    return _from_elements(
        elements, lambda p, q: tuple(p[x] for x in q), tuple(range(n)), f"S{n}"
    )


def alternating(n: int) -> FiniteGroup:
    S = symmetric(n)

    def even(p):
        seen, sign = set(), 1
        for s in range(len(p)):
            if s in seen:
                continue
            length, x = 0, s
            while x not in seen:
                seen.add(x)
                x = p[x]
                length += 1
            sign *= (-1) ** (length - 1)
        return sign == 1

    members = [i for i, p in enumerate(S.elements) if even(p)]
    return Subgroup.of(S, members).as_group(f"A{n}")


def make_standard(kind: str, n: int | None = None) -> FiniteGroup:
    kind = kind.lower()
    if kind == "cyclic":
        return cyclic(n)
    if kind == "dihedral":
        return dihedral(n)
    if kind in ("quaternion8", "q8"):
        return quaternion8()
    if kind == "symmetric":
        return symmetric(n)
    if kind == "trivial":
        return trivial()
    raise BadParameter(f"unknown standard group {kind!r}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n = G.order * H.order
    label = f"{G.label} x {H.label}"
    limits.check_table(label, n)
    G.require_table()
    H.require_table()
    h = H.order
    table = (G.table[:, None, :, None].astype(np.int64) * h + H.table[None, :, None, :]).reshape(n, n)
    elements = None
    if G.elements is not None and H.elements is not None:
        elements = [(a, b) for a in G.elements for b in H.elements]
    return FiniteGroup(table, G.identity * h + H.identity, label, elements)


def direct_product_all(groups: Sequence[FiniteGroup]) -> FiniteGroup:
    if not groups:
        return trivial()
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def _affine_group(n_trans: int, units: np.ndarray, one: int, add, mul, label: str, elements, meta) -> FiniteGroup:
    """Pairs (a, b) with (a, b)(a', b') = (a + b a', b b'), indexed a * |units| + pos(b)."""
    k = len(units)
    order = n_trans * k
    pos = np.full(int(units.max()) + 1, -1, dtype=np.int64)
    pos[units] = np.arange(k)

    def mul_vec(x, y):
        a1, b1 = x // k, units[x % k]
        a2, b2 = y // k, units[y % k]
        return add(a1, mul(b1, a2)) * k + pos[mul(b1, b2)]

    identity = int(pos[one])
    gens = [(1 % n_trans) * k + identity] + list(range(k))
    if order <= limits.current().table:
        idx = np.arange(order)
        table = mul_vec(idx[:, None], idx[None, :])
        return FiniteGroup(table, identity, label, elements(), generators=None, meta=meta)
    return FiniteGroup(None, identity, label, None, order=order, mul_vec=mul_vec, generators=gens, meta=meta)


def holomorph(n: int) -> FiniteGroup:
    """Hol(Z_n) = Z_n x| Z_n^x."""
    if n < 1:
        raise BadParameter("n must be >= 1")
    units = np.asarray(zmod_units(n), dtype=np.int64)
    limits.check_elements(f"Hol(Z_{n})", n * len(units))
    meta = {"kind": "holomorph", "n": n, "units": [int(u) for u in units]}
    return _affine_group(
        n,
        units,
        1 % n,
        lambda a, b: (a + b) % n,
        lambda a, b: (a * b) % n,
        f"Hol(Z_{n})",
        lambda: [(a, int(b)) for a in range(n) for b in units],
        meta,
    )


def agl1(q: int) -> FiniteGroup:
    F = field_of_order(q)
    units = np.arange(1, q, dtype=np.int64)
    meta = {"kind": "agl1", "q": q}
    return _affine_group(
        q,
        units,
        1,
        F.add,
        F.mul,
        f"AGL1(F_{q})",
        lambda: [(a, int(b)) for a in range(q) for b in units],
        meta,
    )


def holomorph_translations(G: FiniteGroup) -> Subgroup:
    """The normal subgroup Z_n x {1} of a holomorph (or F_q x {1} of AGL_1)."""
    k = len(G.meta["units"]) if G.meta.get("kind") == "holomorph" else G.meta["q"] - 1
    n = G.order // k
    return Subgroup.of(G, [a * k + G.identity for a in range(n)])


def holomorph_crt_factor(G: FiniteGroup, a: int) -> Subgroup:
    """The Hol(Z_a) direct factor of Hol(Z_n) for a | n, gcd(a, n/a) = 1.

    Under Z_n = Z_a x Z_b it is {(x, y) : x = 0 and y = 1 mod b}.
    """
    n = G.meta["n"]
    b = n // a
    if n % a or math.gcd(a, b) != 1:
        raise BadParameter(f"{a} is not a unitary divisor of {n}")
    units = G.meta["units"]
    k = len(units)
    members = [x * k + p for x in range(n) for p, y in enumerate(units) if x % b == 0 and y % b == 1 % b]
    return Subgroup.of(G, members)


def _matrix_group(q: int, det_one: bool) -> FiniteGroup:
    F = field_of_order(q)
    codes = np.arange(q)
    a, b, c, d = (x.ravel() for x in np.meshgrid(codes, codes, codes, codes, indexing="ij"))
    det = F.sub(F.mul(a, d), F.mul(b, c))
    keep = (det == 1) if det_one else (det != 0)
    mats = np.stack([a[keep], b[keep], c[keep], d[keep]], axis=1)
    n = len(mats)
    label = f"{'SL' if det_one else 'GL'}2(F_{q})"
    limits.check_table(label, n)
    lookup = np.full(q**4, -1, dtype=np.int64)
    key = ((mats[:, 0] * q + mats[:, 1]) * q + mats[:, 2]) * q + mats[:, 3]
    lookup[key] = np.arange(n)
    table = np.empty((n, n), dtype=np.int32)
    add, mul = F.add, F.mul
    chunk = max(1, 2_000_000 // n)
    for start in range(0, n, chunk):
        L = mats[start:start + chunk, None, :]
        R = mats[None, :, :]
        e00 = add(mul(L[..., 0], R[..., 0]), mul(L[..., 1], R[..., 2]))
        e01 = add(mul(L[..., 0], R[..., 1]), mul(L[..., 1], R[..., 3]))
        e10 = add(mul(L[..., 2], R[..., 0]), mul(L[..., 3], R[..., 2]))
        e11 = add(mul(L[..., 2], R[..., 1]), mul(L[..., 3], R[..., 3]))
        table[start:start + chunk] = lookup[((e00 * q + e01) * q + e10) * q + e11]
    elements = [tuple(int(x) for x in m) for m in mats]
    identity = int(lookup[((1 * q + 0) * q + 0) * q + 1])
    return FiniteGroup(table, identity, label, elements, meta={"kind": "matrix", "q": q, "field": F})


@lru_cache(maxsize=32)
def gl2(q: int) -> FiniteGroup:
    return _matrix_group(q, det_one=False)


@lru_cache(maxsize=32)
def sl2(q: int) -> FiniteGroup:
    return _matrix_group(q, det_one=True)


def uc(q: int, G: FiniteGroup | None = None) -> Subgroup:
    """The unit-circle subgroup {[[x, y], [-y, x]] : x^2 + y^2 = 1} of SL2(F_q)."""
    if q % 2 == 0:
        raise BadParameter("UC(F_q) is defined here for odd q only")
    prime_power(q)
    G = G if G is not None else sl2(q)
    F = G.meta["field"]
    members = []
    for i, (a, b, c, d) in enumerate(G.elements):
        if a == d and c == F.neg(b):
            members.append(i)
    return Subgroup.of(G, members)


# -- elementwise queries -------------------------------------------------------


def element_order(G: FiniteGroup, g: int) -> int:
    m, x = 1, g
    while x != G.identity:
        x = G.mul(x, g)
        m += 1
        if m > G.order:
            raise AssertionError("element order exceeds group order")
    return m


def element_orders(G: FiniteGroup) -> np.ndarray:
    if "orders" in G._cache:
        return G._cache["orders"]
    n = G.order
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    k = 1
    while True:
        hit = (cur == G.identity) & (orders == 0)
        orders[hit] = k
        if (orders > 0).all():
            break
        cur = G.mul_vec(cur, idx)
        k += 1
    G._cache["orders"] = orders
    return orders


def order_spectrum(G: FiniteGroup) -> dict[int, int]:
    return dict(sorted(Counter(int(o) for o in element_orders(G)).items()))


def exponent(G: FiniteGroup) -> int:
    return math.lcm(*(int(o) for o in set(element_orders(G).tolist())))


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup.of(G, np.flatnonzero(_closure_mask(G, list(gens))))


def _closure_mask(G: FiniteGroup, gens: list[int]) -> np.ndarray:
    members = np.zeros(G.order, dtype=bool)
    members[G.identity] = True
    gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
    if gens.size == 0:
        return members
    frontier = np.asarray([G.identity])
    while frontier.size:
        new = G.mul_vec(frontier[:, None], gens[None, :]).ravel()
        new = np.unique(new[~members[new]])
        members[new] = True
        frontier = new
    return members


def _greedy_generators(G: FiniteGroup) -> list[int]:
    """A small generating set: repeatedly add the element that enlarges the span most."""
    G.require_table("generating set")
    orders = element_orders(G)
    candidates = sorted(range(G.order), key=lambda g: (-int(orders[g]), g))
    gens: list[int] = []
    current = _closure_mask(G, [])
    while not current.all():
        best, best_mask, best_size = None, None, -1
        seen_masks = set()
        for g in candidates:
            if current[g]:
                continue
            mask = _closure_mask(G, gens + [g])
            key = mask.tobytes()
            if key in seen_masks:
                continue
            seen_masks.add(key)
            size = int(mask.sum())
            if size > best_size:
                best, best_mask, best_size = g, mask, size
                if size == G.order:
                    break
        gens.append(best)
        current = best_mask
    return gens


def center(G: FiniteGroup) -> Subgroup:
    if G.table is not None:
        T = G.table
        return Subgroup.of(G, np.flatnonzero((T == T.T).all(axis=1)))
    idx = np.arange(G.order)
    central = np.ones(G.order, dtype=bool)
    for g in G.generators():
        central &= G.mul_vec(idx, g) == G.mul_vec(g, idx)
    return Subgroup.of(G, np.flatnonzero(central))


def centralizer(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    S = list(S)
    if not S:
        raise BadParameter("centralizer of an empty set")
    idx = np.arange(G.order)
    keep = np.ones(G.order, dtype=bool)
    for s in S:
        keep &= G.mul_vec(idx, s) == G.mul_vec(s, idx)
    return Subgroup.of(G, np.flatnonzero(keep))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    if "classes" in G._cache:
        return G._cache["classes"]
    G.require_table("conjugacy classes")
    T, inv = G.table, G.inverses
    assigned = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if assigned[x]:
            continue
        orbit = np.unique(T[T[:, x], inv])
        assigned[orbit] = True
        classes.append(tuple(int(y) for y in orbit))
    G._cache["classes"] = classes
    return classes


def class_sizes(G: FiniteGroup) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in conjugacy_classes(G)))


def _product_set(G: FiniteGroup, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.unique(G.table[np.ix_(A, B)])


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, as joins of normal closures of conjugacy classes."""
    if "normal" in G._cache:
        return G._cache["normal"]
    G.require_table("normal subgroups")
    closures = {}
    for cls in conjugacy_classes(G):
        mask = _closure_mask(G, list(cls))
        closures[mask.tobytes()] = np.flatnonzero(mask)
    trivial_key = _mask_key(G, np.asarray([G.identity]))
    found = {trivial_key: np.asarray([G.identity])}
    for N in closures.values():
        for M in list(found.values()):
            joined = _product_set(G, M, N)
            key = _mask_key(G, joined)
            if key not in found:
                found[key] = joined
    subs = [Subgroup.of(G, arr) for arr in found.values()]
    subs.sort(key=lambda s: (s.order, s.members))
    G._cache["normal"] = subs
    return subs


def _mask_key(G: FiniteGroup, arr: np.ndarray) -> bytes:
    mask = np.zeros(G.order, dtype=bool)
    mask[arr] = True
    return mask.tobytes()


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    G.require_table("derived subgroup")
    T, inv = G.table, G.inverses
    idx = np.arange(G.order)
    comm = T[T[T[idx[:, None], idx[None, :]], inv[idx][:, None]], inv[idx][None, :]]
    return subgroup_generated(G, np.unique(comm))


def quotient_order_spectrum(G: FiniteGroup, N: Subgroup) -> dict[int, int]:
    """Order spectrum of G/N for normal N."""
    G.require_table("quotient")
    n_arr = N.array()
    in_n = np.zeros(G.order, dtype=bool)
    in_n[n_arr] = True
    reps = G.table[:, n_arr].min(axis=1)
    orders = {}
    for r in np.unique(reps):
        m, x = 1, int(r)
        while not in_n[x]:
            x = G.mul(x, int(r))
            m += 1
        orders[int(r)] = m
    return dict(sorted(Counter(orders.values()).items()))


def abelianization(G: FiniteGroup) -> tuple[tuple[int, int], ...]:
    """Order spectrum of G/[G, G]; determines the abelianization up to isomorphism."""
    if "abel" not in G._cache:
        G._cache["abel"] = tuple(quotient_order_spectrum(G, derived_subgroup(G)).items())
    return G._cache["abel"]


# -- isomorphism --------------------------------------------------------------


def _invariants(G: FiniteGroup):
    yield "order", G.order
    yield "order spectrum", tuple(order_spectrum(G).items())
    yield "center size", center(G).order
    yield "abelianization", abelianization(G)
    yield "conjugacy class sizes", class_sizes(G)


def _centralizer_sizes(G: FiniteGroup) -> np.ndarray:
    if "csizes" not in G._cache:
        sizes = np.zeros(G.order, dtype=np.int64)
        for cls in conjugacy_classes(G):
            sizes[list(cls)] = G.order // len(cls)
        G._cache["csizes"] = sizes
    return G._cache["csizes"]


def _extend_map(G: FiniteGroup, H: FiniteGroup, gens, imgs) -> np.ndarray | None:
    """Define phi on <gens> by phi(x g_i) = phi(x) h_i; None on any conflict."""
    phi = np.full(G.order, -1, dtype=np.int64)
    used = np.zeros(H.order, dtype=bool)
    phi[G.identity] = H.identity
    used[H.identity] = True
    TG, TH = G.table, H.table
    stack = [G.identity]
    while stack:
        x = stack.pop()
        px = phi[x]
        for g, h in zip(gens, imgs):
            y = TG[x, g]
            z = TH[px, h]
            py = phi[y]
            if py == -1:
                if used[z]:
                    return None
                phi[y] = z
                used[z] = True
                stack.append(int(y))
            elif py != z:
                return None
    return phi


def verify_isomorphism(G: FiniteGroup, H: FiniteGroup, witness: Sequence[int]) -> bool:
    """Check that witness is a bijection G -> H preserving every product."""
    w = np.asarray(witness, dtype=np.int64)
    if G.order != H.order or len(w) != G.order or len(np.unique(w)) != H.order:
        return False
    return bool((w[G.table] == H.table[w[:, None], w[None, :]]).all())


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> IsoResult:
    G.require_table("isomorphism test")
    H.require_table("isomorphism test")
    for (name, a), (_, b) in zip(_invariants(G), _invariants(H)):
        if a != b:
            return IsoResult(False, obstruction=name)
    gens = G.generators()
    g_orders, h_orders = element_orders(G), element_orders(H)
    g_cs, h_cs = _centralizer_sizes(G), _centralizer_sizes(H)
    candidates = [
        np.flatnonzero((h_orders == g_orders[g]) & (h_cs == g_cs[g])).tolist() for g in gens
    ]

    def search(depth, imgs):
        if depth == len(gens):
            phi = _extend_map(G, H, gens, imgs)
            if phi is not None and (phi >= 0).all():
                return phi
            return None
        for h in candidates[depth]:
            trial = imgs + [h]
            if _extend_map(G, H, gens[: depth + 1], trial) is None:
                continue
            found = search(depth + 1, trial)
            if found is not None:
                return found
        return None

    phi = search(0, [])
    if phi is None:
        return IsoResult(False, obstruction="no generator assignment extends to an isomorphism")
    witness = tuple(int(x) for x in phi)
    if not verify_isomorphism(G, H, witness):
        raise AssertionError("isomorphism witness failed verification")
    return IsoResult(True, witness=witness)


def _even_multisets(n: int, largest: int | None = None):
    """Nonincreasing tuples of even integers >= 2 with product n."""
    if n == 1:
        yield ()
        return
    largest = n if largest is None else largest
    for d in range(min(n, largest), 1, -1):
        if d % 2 == 0 and n % d == 0:
            for rest in _even_multisets(n // d, d):
                yield (d,) + rest


def is_dihedral_product(G: FiniteGroup, max_order: int = 512) -> list[int] | None:
    """Dihedral orders whose direct product is isomorphic to G, or None.

    Fewest factors first, then lexicographically largest.
    """
    if G.order > max_order:
        raise SizeExceeded(f"dihedral-product search on {G.label}", G.order, max_order)
    options = sorted(_even_multisets(G.order), key=lambda t: (len(t), [-x for x in t]))
    for combo in options:
        D = direct_product_all([dihedral(m) for m in combo])
        if is_isomorphic(G, D):
            return list(combo)
    return None


# -- sanity checks --------------------------------------------------------------


def check_group_axioms(G: FiniteGroup, full_limit: int = 200, samples: int = 10**5, seed: int = 0) -> bool:
    G.require_table("axiom check")
    T = G.table
    n = G.order
    idx = np.arange(n)
    if not ((T[G.identity] == idx).all() and (T[:, G.identity] == idx).all()):
        return False
    if not ((T == G.identity).sum(axis=1) == 1).all():
        return False
    inv = G.inverses
    if not (T[inv, idx] == G.identity).all():
        return False
    if n <= full_limit:
        for a in range(n):
            if not (T[T[a], :] == T[a][T]).all():
                return False
        return True
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    return bool((T[T[a, b], c] == T[a, T[b, c]]).all())


def relabeled(G: FiniteGroup, perm: Sequence[int]) -> FiniteGroup:
    """Copy of G with element i renamed perm[i]."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    table = perm[G.table[inv[:, None], inv[None, :]]]
    return FiniteGroup(table, int(perm[G.identity]), f"{G.label}'")
