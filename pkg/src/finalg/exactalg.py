"""Exact arithmetic: Z_m, F_{p^k}, and submodules of (Z_t)^n.

Field elements are handled internally as integer codes: the element
c_0 + c_1 x + ... + c_{k-1} x^{k-1} has code sum(c_i * p**i). ``FqElem`` is the
user-facing wrapper; the matrix-group constructors work on codes (and numpy
arrays of codes) for speed.

Submodules of (Z_t)^n are kept in Howell form: an echelon form whose pivots
are divisors of t and which also contains, for each row with pivot g, the
row multiplied by t/g (reduced against the rows below it). With that extra
saturation, reduction against the rows decides membership even when Z_t is
not a field.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np

from . import limits
from .errors import BadParameter, DivisionByZero, LengthMismatch, NonPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q == p**k, or raise BadParameter."""
    if q < 2:
        raise BadParameter(f"{q} is not a prime power")
    p = prime_factors(q)
    if len(p) != 1:
        raise BadParameter(f"{q} is not a prime power")
    p = p[0]
    k = round(math.log(q, p))
    while p**k < q:
        k += 1
    while p**k > q:
        k -= 1
    return p, k


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out -= out // p
    return out


def zmod_units(m: int) -> list[int]:
    if m == 1:
        return [0]
    return [a for a in range(m) if math.gcd(a, m) == 1]


@dataclass(frozen=True)
class ZMod:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise BadParameter("modulus must be >= 1")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, ZMod):
            if other.modulus != self.modulus:
                raise BadParameter("moduli differ")
            return other.value
        return other

    def __add__(self, other):
        return ZMod(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return ZMod(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return ZMod(self._coerce(other) - self.value, self.modulus)

    def __neg__(self):
        return ZMod(-self.value, self.modulus)

    def __mul__(self, other):
        return ZMod(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ZMod(pow(self.value, e, self.modulus), self.modulus)

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def inverse(self) -> ZMod:
        if not self.is_unit():
            raise DivisionByZero(f"{self.value} is not invertible mod {self.modulus}")
        return ZMod(pow(self.value, -1, self.modulus), self.modulus)

    def __int__(self):
        return self.value


# -- polynomials over Z_p, little-endian coefficient tuples ------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(a[:dm])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, d: int):
    """Monic polynomials of degree d in increasing code order."""
    for code in range(p**d):
        coeffs = [(code // p**i) % p for i in range(d)]
        yield tuple(coeffs) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    d = len(poly) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for f in _monic_polys(p, e):
            if not _poly_mod(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k whose lower coefficients have the smallest code.

    Candidates are ordered by sum(c_i * p**i) over i < k, i.e. lexicographically
    on (c_{k-1}, ..., c_0).
    """
    if k == 1:
        return (0, 1)
    for f in _monic_polys(p, k):
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FqField:
    """The field F_q with q = p**k, as Z_p[x]/(modulus_poly)."""

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus_poly = smallest_irreducible(p, k)
        self._powers = [p**i for i in range(k)]
        self._build_log_tables()

    def __repr__(self):
        return f"FqField(p={self.p}, k={self.k})"

    def __reduce__(self):
        return fq_field, (self.p, self.k)

    # codes <-> coefficient lists
    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // pw) % self.p for pw in self._powers)

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            coeffs = _poly_mod(coeffs, self.modulus_poly, self.p)
        return sum((c % self.p) * pw for c, pw in zip(coeffs, self._powers))

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        return self.code(_poly_mod(prod, self.modulus_poly, self.p))

    def _build_log_tables(self):
        q = self.q
        n = q - 1
        factors = prime_factors(n) if n > 1 else []
        gen = None
        for g in range(1, q):
            if all(self._pow_slow(g, n // r) != 1 for r in factors):
                gen = g
                break
        exp = np.zeros(2 * n if n else 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, gen)
        exp[n:2 * n] = exp[:n]
        self.generator = gen
        self._exp = exp
        self._log = log

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    # scalar arithmetic on codes
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, 1)

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._digitwise(a, b, -1)

    def neg(self, a):
        return self.sub(0 * a, a)

    def _digitwise(self, a, b, sign):
        out = 0 * a
        for pw in self._powers:
            out = out + (((a // pw) % self.p + sign * ((b // pw) % self.p)) % self.p) * pw
        return out

    def mul(self, a, b):
        if np.ndim(a) == 0 and np.ndim(b) == 0:
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        a = np.asarray(a)
        b = np.asarray(b)
        res = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv(self, a):
        if np.ndim(a) == 0:
            if a == 0:
                raise DivisionByZero("inverse of zero")
            return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])
        a = np.asarray(a)
        if (a == 0).any():
            raise DivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("inverse of zero")
            return 1 if e == 0 else 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.q - 1
        return n // math.gcd(n, int(self._log[a]))

    def sqrt(self, a: int) -> int | None:
        for x in range(self.q):
            if self.mul(x, x) == a:
                return x
        return None

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def element(self, code: int) -> FqElem:
        return FqElem(self.coeffs(code), self)

    def elements(self) -> list[FqElem]:
        return [self.element(c) for c in range(self.q)]

    @property
    def order(self) -> int:
        return self.q


@lru_cache(maxsize=None)
def fq_field(p: int, k: int = 1) -> FqField:
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1:
        raise BadParameter("degree must be >= 1")
    limits.check_elements(f"F_{p}^{k}", p**k)
    return FqField(p, k)


def field_of_order(q: int) -> FqField:
    p, k = prime_power(q)
    return fq_field(p, k)


@dataclass(frozen=True)
class FqElem:
    coeffs: tuple[int, ...]
    field: FqField

    @property
    def code(self) -> int:
        return self.field.code(self.coeffs)

    def _wrap(self, code: int) -> FqElem:
        return self.field.element(code)

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            return other.code
        return self.field.from_int(other)

    def __add__(self, other):
        return self._wrap(self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.code, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * fq_inv(other if isinstance(other, FqElem) else self._wrap(self._other(other)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.code, e))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{mono}" if (c != 1 or i == 0) else mono)
        return " + ".join(terms) if terms else "0"


def fq_inv(a: FqElem) -> FqElem:
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    return a.field.element(a.field.inv(a.code))


# -- coefficient vectors and submodules of (Z_t)^n ----------------------------


@dataclass(frozen=True)
class CoeffVec:
    entries: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) % self.modulus for e in self.entries))

    @classmethod
    def zero(cls, length: int, modulus: int) -> CoeffVec:
        return cls((0,) * length, modulus)

    @classmethod
    def from_array(cls, arr, modulus: int) -> CoeffVec:
        return cls(tuple(int(x) for x in arr), modulus)

    @property
    def length(self) -> int:
        return len(self.entries)

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def _check(self, other: CoeffVec):
        if other.modulus != self.modulus or other.length != self.length:
            raise LengthMismatch("vectors differ in length or modulus")

    def __add__(self, other: CoeffVec) -> CoeffVec:
        self._check(other)
        return CoeffVec(tuple(a + b for a, b in zip(self.entries, other.entries)), self.modulus)

    def __sub__(self, other: CoeffVec) -> CoeffVec:
        self._check(other)
        return CoeffVec(tuple(a - b for a, b in zip(self.entries, other.entries)), self.modulus)

    def __neg__(self) -> CoeffVec:
        return CoeffVec(tuple(-a for a in self.entries), self.modulus)

    def scale(self, c: int) -> CoeffVec:
        return CoeffVec(tuple(c * a for a in self.entries), self.modulus)

    def is_zero(self) -> bool:
        return not any(self.entries)


class CoordinatePermutation:
    """The linear map sending basis vector e_i to e_{dest[i]}."""

    def __init__(self, dest: Sequence[int]):
        self.dest = np.asarray(dest, dtype=np.int64)
        n = len(self.dest)
        src = np.empty(n, dtype=np.int64)
        src[self.dest] = np.arange(n)
        self.src = src
        self._byte_tables = None

    def __call__(self, v: CoeffVec) -> CoeffVec:
        return CoeffVec.from_array(v.array()[self.src], v.modulus)

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        return arr[self.src]

    def apply_mask(self, mask: int) -> int:
        tables = self._byte_tables
        if tables is None:
            tables = self._byte_tables = self._make_byte_tables()
        out = 0
        shift = 0
        for table in tables:
            out |= table[(mask >> shift) & 0xFF]
            shift += 8
        return out

    def _make_byte_tables(self):
        n = len(self.dest)
        tables = []
        for base in range(0, n, 8):
            bits = [1 << int(self.dest[i]) for i in range(base, min(base + 8, n))]
            bits += [0] * (8 - len(bits))
            table = [0] * 256
            for byte in range(1, 256):
                low = byte & -byte
                table[byte] = table[byte ^ low] | bits[low.bit_length() - 1]
            tables.append(table)
        return tables


def _mask_from(v) -> int:
    out = 0
    for i, e in enumerate(v):
        if int(e) & 1:
            out |= 1 << i
    return out


def _mask_to_array(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=np.int64)


@lru_cache(maxsize=None)
def _normalizer(x: int, t: int) -> tuple[int, int]:
    """A unit u of Z_t with u*x = gcd(x, t) (mod t)."""
    g = math.gcd(x, t)
    for u in range(1, t + 1):
        if math.gcd(u, t) == 1 and (u * x - g) % t == 0:
            return u % t, g % t if g != t else 0
    raise AssertionError("no normalizing unit")  # pragma: no cover


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


class _Echelon:
    """Mutable Howell-form builder. Only used while a basis is being made."""

    def __init__(self, modulus: int, length: int):
        self.t = modulus
        self.n = length
        self.rows: dict[int, object] = {}

    # raw representation: int bitmask when t == 2, numpy array otherwise
    def to_raw(self, v):
        if isinstance(v, CoeffVec):
            if v.modulus != self.t or v.length != self.n:
                raise LengthMismatch(
                    f"vector of length {v.length} mod {v.modulus}, expected {self.n} mod {self.t}"
                )
            v = v.entries
        if self.t == 2:
            return v if isinstance(v, int) else _mask_from(v)
        arr = np.asarray(v, dtype=np.int64) % self.t
        if arr.shape != (self.n,):
            raise LengthMismatch(f"expected length {self.n}")
        return arr

    def from_raw(self, raw) -> CoeffVec:
        if self.t == 2:
            return CoeffVec.from_array(_mask_to_array(raw, self.n), 2)
        return CoeffVec.from_array(raw, self.t)

    def reduce(self, raw):
        rows = self.rows
        if self.t == 2:
            v = raw
            while v:
                c = (v & -v).bit_length() - 1
                r = rows.get(c)
                if r is None:
                    return v
                v ^= r
            return 0
        t = self.t
        v = raw
        while True:
            nz = np.flatnonzero(v)
            if nz.size == 0:
                return v
            c = int(nz[0])
            r = rows.get(c)
            if r is None:
                return v
            piv = int(r[c])
            x = int(v[c])
            if x % piv:
                return v
            v = (v - (x // piv) * r) % t

    def is_zero(self, raw) -> bool:
        return raw == 0 if self.t == 2 else not raw.any()

    def contains_raw(self, raw) -> bool:
        return self.is_zero(self.reduce(raw))

    def insert_raw(self, raw) -> bool:
        """Add raw to the span; return True if the span grew."""
        if self.t == 2:
            v = self.reduce(raw)
            if v == 0:
                return False
            self.rows[(v & -v).bit_length() - 1] = v
            return True
        t = self.t
        changed = False
        work = [raw]
        while work:
            w = self.reduce(work.pop())
            nz = np.flatnonzero(w)
            if nz.size == 0:
                continue
            changed = True
            c = int(nz[0])
            x = int(w[c])
            r = self.rows.get(c)
            if r is None:
                u, g = _normalizer(x, t)
                w = (w * u) % t
                self.rows[c] = w
                if g != 1:
                    work.append((w * (t // g)) % t)
                continue
            y = int(r[c])
            g, s, u = _ext_gcd(y, x)
            new = (s * r + u * w) % t
            self.rows[c] = new
            work.append((r - (y // g) * new) % t)
            work.append((w - (x // g) * new) % t)
            if g != 1:
                work.append((new * (t // g)) % t)
        return changed

    def canonical_rows(self) -> list:
        """Fully reduced rows (reduced Howell form), ascending pivot column."""
        cols = sorted(self.rows)
        rows = {c: self.rows[c] for c in cols}
        t = self.t
        for i, c in enumerate(cols):
            for c2 in cols[:i]:
                r = rows[c2]
                if t == 2:
                    if (r >> c) & 1:
                        rows[c2] = r ^ rows[c]
                else:
                    piv = int(rows[c][c])
                    q = int(r[c]) // piv
                    if q:
                        rows[c2] = (r - q * rows[c]) % t
        return [rows[c] for c in cols]


class SubmoduleBasis:
    """A Z_t-submodule of (Z_t)^n in reduced Howell form."""

    def __init__(self, echelon: _Echelon):
        self._ech = echelon
        self.modulus = echelon.t
        self.length = echelon.n
        raw_rows = echelon.canonical_rows()
        self.rows: tuple[CoeffVec, ...] = tuple(echelon.from_raw(r) for r in raw_rows)
        self.pivots: tuple[int, ...] = tuple(sorted(echelon.rows))

    @property
    def pivot_values(self) -> tuple[int, ...]:
        return tuple(r.entries[c] for r, c in zip(self.rows, self.pivots))

    def contains(self, v: CoeffVec) -> bool:
        return self._ech.contains_raw(self._ech.to_raw(v))

    __contains__ = contains

    def contains_raw(self, raw) -> bool:
        return self._ech.contains_raw(raw)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def size(self) -> int:
        """Number of vectors in the submodule."""
        out = 1
        for pv in self.pivot_values:
            out *= self.modulus // pv
        return out

    def log_size(self) -> float:
        """log_t of the size; equals the dimension when t is prime."""
        return math.log(self.size(), self.modulus) if self.modulus > 1 else 0.0

    def is_full(self) -> bool:
        return self.size() == self.modulus**self.length

    def is_zero(self) -> bool:
        return not self.rows

    def extended(self, vectors: Iterable[CoeffVec]) -> SubmoduleBasis:
        ech = _Echelon(self.modulus, self.length)
        ech.rows = dict(self._ech.rows)
        for v in vectors:
            ech.insert_raw(ech.to_raw(v))
        return SubmoduleBasis(ech)

    def __eq__(self, other):
        if not isinstance(other, SubmoduleBasis):
            return NotImplemented
        return (self.modulus, self.length, self.rows) == (other.modulus, other.length, other.rows)

    def __hash__(self):
        return hash((self.modulus, self.length, self.rows))

    def __repr__(self):
        return f"SubmoduleBasis(t={self.modulus}, n={self.length}, rank={self.rank}, size={self.size()})"

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "length": self.length,
            "rank": self.rank,
            "pivots": list(self.pivots),
            "pivot_values": list(self.pivot_values),
            "size": self.size(),
        }


def submodule_from(vectors: Iterable[CoeffVec], t: int, length: int | None = None) -> SubmoduleBasis:
    vectors = list(vectors)
    if length is None:
        if not vectors:
            raise LengthMismatch("length is required for an empty generating list")
        length = vectors[0].length
    ech = _Echelon(t, length)
    for v in vectors:
        ech.insert_raw(ech.to_raw(v))
    return SubmoduleBasis(ech)


LinearMap = Callable[[CoeffVec], CoeffVec]


def closure_under_operators(
    generators: Iterable[CoeffVec],
    operators: Sequence[LinearMap],
    t: int,
    length: int | None = None,
) -> SubmoduleBasis:
    """Smallest submodule containing the generators and stable under every operator."""
    generators = list(generators)
    if length is None:
        if not generators:
            raise LengthMismatch("length is required for an empty generating list")
        length = generators[0].length
    ech = _Echelon(t, length)

    def apply(op, raw):
        if isinstance(op, CoordinatePermutation):
            if len(op.dest) != length:
                raise LengthMismatch("operator length differs from vector length")
            return op.apply_mask(raw) if t == 2 else op.apply_array(raw)
        return ech.to_raw(op(ech.from_raw(raw)))

    queue = deque()
    for g in generators:
        raw = ech.to_raw(g)
        if ech.insert_raw(raw):
            queue.append(raw)
    while queue:
        raw = queue.popleft()
        for op in operators:
            image = apply(op, raw)
            if ech.insert_raw(image):
                queue.append(image)
    return SubmoduleBasis(ech)


def enumerate_span(vectors: Sequence[CoeffVec], t: int, length: int) -> set[tuple[int, ...]]:
    """Every Z_t-combination of the vectors, by brute force. Exponential; for tests."""
    out = set()
    arrs = [v.array() for v in vectors]
    for coeffs in product(range(t), repeat=len(arrs)):
        acc = np.zeros(length, dtype=np.int64)
        for c, a in zip(coeffs, arrs):
            acc += c * a
        out.add(tuple(int(x) for x in acc % t))
    return out
