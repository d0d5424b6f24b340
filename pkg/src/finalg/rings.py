"""Finite rings built from expression trees, and their unit groups, radicals and centers.

Every ring enumerates its elements as indices 0..size-1. Arithmetic is
vectorized over numpy index arrays, so whole addition and multiplication
tables can be produced in a few array operations. Composite rings (products,
matrices, truncated polynomials, group rings) index their elements by a
mixed-radix encoding of the coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

import numpy as np

from . import limits
from .errors import BadParameter, InternalInconsistency, SizeExceeded
from .exactalg import field_of_order
from .expr import EndAb, Fq, GroupRing, Matrix, Product, RingExpr, TruncPoly, UpperTriangular, Zmod
from .groups import FiniteGroup, Subgroup


class _NotAUnit:
    def __repr__(self):
        return "NotAUnit"

    def __bool__(self):
        return False


NotAUnit = _NotAUnit()


class FiniteRing:
    size: int
    zero: int = 0
    one: int

    def __init__(self, expr: RingExpr | None, label: str):
        self.expr = expr
        self.label = label

    def __repr__(self):
        return f"<FiniteRing {self.label} with {self.size} elements>"

    # vectorized arithmetic on index arrays; subclasses implement the _ forms
    def add(self, a, b):
        return self._scalar(self._add, a, b)

    def neg(self, a):
        return self._scalar(self._neg, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return self._scalar(self._mul, a, b)

    @staticmethod
    def _scalar(fn, *args):
        if all(np.ndim(x) == 0 for x in args):
            return int(fn(*(np.asarray([x], dtype=np.int64) for x in args))[0])
        arrs = np.broadcast_arrays(*(np.asarray(x, dtype=np.int64) for x in args))
        shape = arrs[0].shape
        return fn(*(x.ravel() for x in arrs)).reshape(shape)

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def element_label(self, i: int):
        return int(i)

    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def characteristic(self) -> int:
        c, x = 1, self.one
        while x != self.zero:
            x = self.add(x, self.one)
            c += 1
        return c

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Full (addition, multiplication) tables."""
        if "_tables" not in self.__dict__:
            limits.check_table(f"tables of {self.label}", self.size)
            idx = np.arange(self.size)
            A = self.add(idx[:, None], idx[None, :])
            M = self.mul(idx[:, None], idx[None, :])
            self.__dict__["_tables"] = (A, M)
        return self.__dict__["_tables"]

    def power(self, a: int, e: int) -> int:
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


class ZmodRing(FiniteRing):
    def __init__(self, n: int, expr=None):
        super().__init__(expr, f"Z{n}")
        self.n = self.size = n
        self.one = 1 % n

    def _add(self, a, b):
        return (a + b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n


class FieldRing(FiniteRing):
    def __init__(self, q: int, expr=None):
        super().__init__(expr, f"F{q}")
        self.field = field_of_order(q)
        self.size = q
        self.one = 1

    def _add(self, a, b):
        return self.field.add(a, b)

    def _neg(self, a):
        return self.field.neg(a)

    def _mul(self, a, b):
        return self.field.mul(a, b)


class _CoordRing(FiniteRing):
    """Elements are tuples of coordinates with the given radices."""

    radices: list[int]

    def _setup_coords(self, radices: Sequence[int]):
        self.radices = list(radices)
        self._weights = []
        w = 1
        for r in self.radices:
            self._weights.append(w)
            w *= r
        self.size = w

    def decode(self, a) -> list[np.ndarray]:
        return [(a // w) % r for w, r in zip(self._weights, self.radices)]

    def encode(self, coords) -> np.ndarray:
        return sum(c * w for c, w in zip(coords, self._weights))

    def encode_scalar(self, coords) -> int:
        return int(sum(int(c) * w for c, w in zip(coords, self._weights)))


class ProductRing(_CoordRing):
    def __init__(self, factors: Sequence[FiniteRing], expr=None):
        super().__init__(expr, " x ".join(f.label for f in factors))
        self.factors = list(factors)
        self._setup_coords([f.size for f in factors])
        self.one = self.encode_scalar([f.one for f in factors])

    def _add(self, a, b):
        return self.encode([f.add(x, y) for f, x, y in zip(self.factors, self.decode(a), self.decode(b))])

    def _neg(self, a):
        return self.encode([f.neg(x) for f, x in zip(self.factors, self.decode(a))])

    def _mul(self, a, b):
        return self.encode([f.mul(x, y) for f, x, y in zip(self.factors, self.decode(a), self.decode(b))])

    def element_label(self, i):
        return tuple(f.element_label(int(c)) for f, c in zip(self.factors, self.decode(i)))


class MatrixRing(_CoordRing):
    """k x k matrices over sub; upper=True keeps only entries with i <= j."""

    def __init__(self, k: int, sub: FiniteRing, upper: bool, expr=None):
        name = "U" if upper else "M"
        super().__init__(expr, f"{name}({k},{sub.label})")
        self.k = k
        self.base = sub
        self.upper = upper
        self.positions = [(i, j) for i in range(k) for j in range(k) if (i <= j or not upper)]
        self._pos = {p: n for n, p in enumerate(self.positions)}
        self._setup_coords([sub.size] * len(self.positions))
        self.one = self.encode_scalar([sub.one if i == j else sub.zero for i, j in self.positions])

    def _add(self, a, b):
        s = self.base
        return self.encode([s.add(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def _neg(self, a):
        return self.encode([self.base.neg(x) for x in self.decode(a)])

    def _mul(self, a, b):
        s = self.base
        A, B = self.decode(a), self.decode(b)
        out = []
        for i, j in self.positions:
            acc = np.zeros_like(a)
            for l in range(self.k):
                p, q = self._pos.get((i, l)), self._pos.get((l, j))
                if p is not None and q is not None:
                    acc = s.add(acc, s.mul(A[p], B[q]))
            out.append(acc)
        return self.encode(out)

    def element_label(self, i):
        coords = self.decode(i)
        rows = []
        for r in range(self.k):
            row = []
            for c in range(self.k):
                p = self._pos.get((r, c))
                row.append(self.base.element_label(int(coords[p])) if p is not None else 0)
            rows.append(tuple(row))
        return tuple(rows)


class TruncPolyRing(_CoordRing):
    """sub[x]/(x^k), coordinates are the coefficients of 1, x, ..., x^(k-1)."""

    def __init__(self, sub: FiniteRing, k: int, expr=None):
        super().__init__(expr, f"TP({sub.label},{k})")
        self.base = sub
        self.k = k
        self._setup_coords([sub.size] * k)
        self.one = self.encode_scalar([sub.one] + [sub.zero] * (k - 1))

    def _add(self, a, b):
        s = self.base
        return self.encode([s.add(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def _neg(self, a):
        return self.encode([self.base.neg(x) for x in self.decode(a)])

    def _mul(self, a, b):
        s = self.base
        A, B = self.decode(a), self.decode(b)
        out = []
        for m in range(self.k):
            acc = np.zeros_like(a)
            for i in range(m + 1):
                acc = s.add(acc, s.mul(A[i], B[m - i]))
            out.append(acc)
        return self.encode(out)

    def element_label(self, i):
        return tuple(self.base.element_label(int(c)) for c in self.decode(i))


class GroupRingRing(_CoordRing):
    """Z_t[G] enumerated; coordinate g is the coefficient of group element g."""

    def __init__(self, t: int, G: FiniteGroup, expr=None):
        super().__init__(expr, f"GR({t},{G.label})")
        G.require_table("group ring")
        self.t = t
        self.group = G
        self._setup_coords([t] * G.order)
        self.one = self.encode_scalar([1 if g == G.identity else 0 for g in range(G.order)])

    def _add(self, a, b):
        return self.encode([(x + y) % self.t for x, y in zip(self.decode(a), self.decode(b))])

    def _neg(self, a):
        return self.encode([(-x) % self.t for x in self.decode(a)])

    def _mul(self, a, b):
        n = self.group.order
        A, B = self.decode(a), self.decode(b)
        out = [np.zeros_like(a) for _ in range(n)]
        T = self.group.table
        for g in range(n):
            for h in range(n):
                gh = T[g, h]
                out[gh] = out[gh] + A[g] * B[h]
        return self.encode([c % self.t for c in out])

    def element_label(self, i):
        return tuple(int(c) for c in self.decode(i))


class EndAbRing(_CoordRing):
    """End(C_{d_1} x ... x C_{d_r}); entry (i, j) is the i-th coordinate of the image of e_j.

    That entry must satisfy d_j * x = 0 in Z_{d_i}, so it ranges over the
    multiples of d_i / gcd(d_i, d_j). Multiplication is composition f.g = f o g,
    i.e. the matrix product with row i reduced mod d_i.
    """

    def __init__(self, ds: Sequence[int], expr=None):
        super().__init__(expr, f"End({','.join(map(str, ds))})")
        self.ds = list(ds)
        r = len(ds)
        self.r = r
        self._steps = [[ds[i] // math.gcd(ds[i], ds[j]) for j in range(r)] for i in range(r)]
        self._setup_coords([math.gcd(ds[i], ds[j]) for i in range(r) for j in range(r)])
        self.one = self.encode_scalar([1 if i == j else 0 for i in range(r) for j in range(r)])

    def _values(self, a):
        digits = self.decode(a)
        r = self.r
        return [[digits[i * r + j] * self._steps[i][j] for j in range(r)] for i in range(r)]

    def _encode_values(self, vals):
        r = self.r
        digits = [(vals[i][j] % self.ds[i]) // self._steps[i][j] for i in range(r) for j in range(r)]
        return self.encode(digits)

    def _add(self, a, b):
        A, B = self._values(a), self._values(b)
        return self._encode_values([[A[i][j] + B[i][j] for j in range(self.r)] for i in range(self.r)])

    def _neg(self, a):
        A = self._values(a)
        return self._encode_values([[-x for x in row] for row in A])

    def _mul(self, a, b):
        A, B = self._values(a), self._values(b)
        r = self.r
        return self._encode_values(
            [[sum(A[i][l] * B[l][j] for l in range(r)) for j in range(r)] for i in range(r)]
        )

    def element_label(self, i):
        vals = self._values(np.asarray([i]))
        return tuple(tuple(int(v[0]) % d for v in row) for row, d in zip(vals, self.ds))


def expected_size(expr: RingExpr) -> int:
    """Element count of the ring an expression denotes, without building it."""
    if isinstance(expr, Zmod):
        return expr.n
    if isinstance(expr, Fq):
        return expr.q
    if isinstance(expr, Matrix):
        return expected_size(expr.sub) ** (expr.k * expr.k)
    if isinstance(expr, UpperTriangular):
        return expected_size(expr.sub) ** (expr.k * (expr.k + 1) // 2)
    if isinstance(expr, TruncPoly):
        return expected_size(expr.sub) ** expr.k
    if isinstance(expr, GroupRing):
        from .groups import FiniteGroup  # noqa: F401

        return expr.t ** _group_order(expr.group)
    if isinstance(expr, EndAb):
        ds = expr.invariants
        return math.prod(math.gcd(a, b) for a in ds for b in ds)
    if isinstance(expr, Product):
        return math.prod(expected_size(f) for f in expr.factors)
    raise BadParameter(f"unknown ring expression {expr!r}")


def _group_order(gexpr) -> int:
    from .exactalg import euler_phi, prime_power
    from .expr import (AGL1Expr, CyclicExpr, DihedralExpr, GL2Expr, GroupProductExpr, HolExpr,
                       Q8Expr, SL2Expr, SymmetricExpr, UCExpr)

    if isinstance(gexpr, CyclicExpr):
        return gexpr.n
    if isinstance(gexpr, DihedralExpr):
        return gexpr.n
    if isinstance(gexpr, Q8Expr):
        return 8
    if isinstance(gexpr, SymmetricExpr):
        return math.factorial(gexpr.n)
    if isinstance(gexpr, HolExpr):
        return gexpr.n * euler_phi(gexpr.n)
    if isinstance(gexpr, AGL1Expr):
        return gexpr.q * (gexpr.q - 1)
    if isinstance(gexpr, GL2Expr):
        q = gexpr.q
        return (q * q - 1) * (q * q - q)
    if isinstance(gexpr, SL2Expr):
        q = gexpr.q
        return q**3 - q
    if isinstance(gexpr, UCExpr):
        q = gexpr.q
        return q - 1 if q % 4 == 1 else q + 1
    if isinstance(gexpr, GroupProductExpr):
        return math.prod(_group_order(f) for f in gexpr.factors)
    raise BadParameter(f"unknown group expression {gexpr!r}")


def build_ring(expr: RingExpr) -> FiniteRing:
    size = expected_size(expr)
    limits.check_elements(f"ring {expr}", size)
    return _build(expr)


def _build(expr: RingExpr) -> FiniteRing:
    if isinstance(expr, Zmod):
        return ZmodRing(expr.n, expr)
    if isinstance(expr, Fq):
        return FieldRing(expr.q, expr)
    if isinstance(expr, Matrix):
        return MatrixRing(expr.k, _build(expr.sub), upper=False, expr=expr)
    if isinstance(expr, UpperTriangular):
        return MatrixRing(expr.k, _build(expr.sub), upper=True, expr=expr)
    if isinstance(expr, TruncPoly):
        return TruncPolyRing(_build(expr.sub), expr.k, expr)
    if isinstance(expr, GroupRing):
        return GroupRingRing(expr.t, expr.group.build(), expr)
    if isinstance(expr, EndAb):
        return EndAbRing(expr.invariants, expr)
    if isinstance(expr, Product):
        return ProductRing([_build(f) for f in expr.factors], expr)
    raise BadParameter(f"unknown ring expression {expr!r}")


# -- analyses ---------------------------------------------------------------------


@dataclass
class UnitGroupResult:
    group: FiniteGroup
    unit_elements: tuple[int, ...]

    @property
    def embedding(self) -> dict[int, int]:
        return dict(enumerate(self.unit_elements))

    def to_dict(self, ring: FiniteRing) -> dict:
        from .groups import order_spectrum

        return {
            "ring": str(ring.expr) if ring.expr is not None else ring.label,
            "ring_order": ring.size,
            "characteristic": ring.characteristic,
            "unit_group_order": self.group.order,
            "order_spectrum": {str(k): v for k, v in order_spectrum(self.group).items()},
            "units": [_jsonable(ring.element_label(u)) for u in self.unit_elements],
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _unit_mask(R: FiniteRing) -> np.ndarray:
    if "_unit_mask" in R.__dict__:
        return R.__dict__["_unit_mask"]
    _, M = R.tables()
    is_one = M == R.one
    has_right = is_one.any(axis=1)
    has_left = is_one.any(axis=0)
    # a one-sided inverse must be two-sided in a finite ring; confirm it
    if not (has_right == has_left).all():
        raise InternalInconsistency(f"one-sided unit found in {R.label}")
    right = np.argmax(is_one, axis=1)
    u = np.flatnonzero(has_right)
    if not (M[right[u], u] == R.one).all():
        raise InternalInconsistency(f"right inverse is not a left inverse in {R.label}")
    R.__dict__["_unit_mask"] = has_right
    return has_right


def units(R: FiniteRing) -> UnitGroupResult:
    _, M = R.tables()
    U = np.flatnonzero(_unit_mask(R))
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[U] = np.arange(len(U))
    table = pos[M[np.ix_(U, U)]]
    if (table < 0).any():
        raise InternalInconsistency("units are not closed under multiplication")
    labels = [R.element_label(int(u)) for u in U]
    G = FiniteGroup(table, int(pos[R.one]), f"units of {R.label}", labels)
    return UnitGroupResult(G, tuple(int(u) for u in U))


def jacobson_radical(R: FiniteRing) -> tuple[int, ...]:
    """{x : 1 - r x is a unit for every r}."""
    _, M = R.tables()
    unit = _unit_mask(R)
    one_minus = R.sub(R.one, M)  # entry [r, x] is 1 - r x
    return tuple(int(x) for x in np.flatnonzero(unit[one_minus].all(axis=0)))


def center_ring(R: FiniteRing) -> tuple[int, ...]:
    _, M = R.tables()
    return tuple(int(x) for x in np.flatnonzero((M == M.T).all(axis=1)))


def characteristic(R: FiniteRing) -> int:
    return R.characteristic


def characteristic_subring(R: FiniteRing) -> tuple[int, ...]:
    out, x = [R.zero], R.one
    while x != R.zero:
        out.append(x)
        x = R.add(x, R.one)
    return tuple(sorted(out))


def one_plus(R: FiniteRing, ideal: Sequence[int], ug: UnitGroupResult) -> Subgroup:
    """1 + J as a subgroup of the unit group."""
    pos = {u: i for i, u in enumerate(ug.unit_elements)}
    members = []
    for x in ideal:
        y = R.add(R.one, x)
        if y not in pos:
            raise InternalInconsistency(f"1 + {x} is not a unit")
        members.append(pos[y])
    return Subgroup.of(ug.group, members)


def is_two_sided_ideal(R: FiniteRing, subset: Sequence[int]) -> bool:
    A, M = R.tables()
    s = np.asarray(sorted(subset), dtype=np.int64)
    if R.zero not in set(s.tolist()):
        return False
    inside = np.zeros(R.size, dtype=bool)
    inside[s] = True
    return bool(inside[A[np.ix_(s, s)]].all() and inside[M[:, s]].all() and inside[M[s, :]].all())


def ring_element_order(R: FiniteRing, u: int):
    """Multiplicative order of u, or NotAUnit."""
    seen = set()
    x, m = u, 1
    while x != R.one:
        if x in seen or m > R.size:
            return NotAUnit
        seen.add(x)
        x = R.mul(x, u)
        m += 1
    return m


def check_ring_axioms(R: FiniteRing, full_limit: int = 512, samples: int = 10**5, seed: int = 0) -> bool:
    A, M = R.tables()
    n = R.size
    idx = np.arange(n)
    if not ((A == A.T).all() and (A[R.zero] == idx).all()):
        return False
    if not ((A == R.zero).sum(axis=1) == 1).all():
        return False
    if not ((M[R.one] == idx).all() and (M[:, R.one] == idx).all()):
        return False
    if n <= full_limit:
        for a in range(n):
            if not (A[A[a], :] == A[a][A]).all():
                return False
            if not (M[M[a], :] == M[a][M]).all():
                return False
            # a(b + c) = ab + ac and (b + c)a = ba + ca
            if not (M[a][A] == A[M[a][:, None], M[a][None, :]]).all():
                return False
            if not (M[:, a][A] == A[M[:, a][:, None], M[:, a][None, :]]).all():
                return False
        return True
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    return bool(
        (A[A[a, b], c] == A[a, A[b, c]]).all()
        and (M[M[a, b], c] == M[a, M[b, c]]).all()
        and (M[a, A[b, c]] == A[M[a, b], M[a, c]]).all()
        and (M[A[b, c], a] == A[M[b, a], M[c, a]]).all()
    )


# -- Hurwitz units --------------------------------------------------------------------


def _quat_mul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def hurwitz_units() -> list[tuple[int, int, int, int]]:
    """Norm-1 Hurwitz quaternions with every coordinate doubled."""
    from itertools import product

    out = []
    for v in product(range(-2, 3), repeat=4):
        if sum(x * x for x in v) == 4 and len({x % 2 for x in v}) == 1:
            out.append(v)
    return out


def hurwitz_unit_group() -> FiniteGroup:
    from .groups import _from_elements

    def mul(x, y):
        # (x/2)(y/2) = p/4, stored doubled as p/2
        p = _quat_mul(x, y)
        if any(c % 2 for c in p):
            raise InternalInconsistency("Hurwitz units are not closed")
        return tuple(c // 2 for c in p)

    return _from_elements(hurwitz_units(), mul, (2, 0, 0, 0), "Hurwitz units")
