"""Construction plans for groups and rings.

Plans are small immutable trees. ``str(plan)`` gives text in the CLI grammar,
so printing and re-parsing a plan is a round trip. ``plan.build()`` constructs
the object.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParameter
from .exactalg import prime_power


def _prime_power_or_bad(q: int) -> None:
    prime_power(q)


class GroupExpr:
    def build(self):
        raise NotImplementedError


@dataclass(frozen=True)
class CyclicExpr(GroupExpr):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise BadParameter("cyclic order must be >= 1")

    def __str__(self):
        return f"C{self.n}"

    def build(self):
        from .groups import cyclic

        return cyclic(self.n)


@dataclass(frozen=True)
class DihedralExpr(GroupExpr):
    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise BadParameter(f"dihedral order must be even and >= 2, got {self.n}")

    def __str__(self):
        return f"D{self.n}"

    def build(self):
        from .groups import dihedral

        return dihedral(self.n)


@dataclass(frozen=True)
class Q8Expr(GroupExpr):
    def __str__(self):
        return "Q8"

    def build(self):
        from .groups import quaternion8

        return quaternion8()


@dataclass(frozen=True)
class SymmetricExpr(GroupExpr):
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= 5:
            raise BadParameter("symmetric groups are supported for 1 <= n <= 5")

    def __str__(self):
        return f"S{self.n}"

    def build(self):
        from .groups import symmetric

        return symmetric(self.n)


@dataclass(frozen=True)
class HolExpr(GroupExpr):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise BadParameter("Hol(n) needs n >= 1")

    def __str__(self):
        return f"Hol({self.n})"

    def build(self):
        from .groups import holomorph

        return holomorph(self.n)


@dataclass(frozen=True)
class _FieldGroupExpr(GroupExpr):
    q: int

    def __post_init__(self):
        _prime_power_or_bad(self.q)


class AGL1Expr(_FieldGroupExpr):
    def __str__(self):
        return f"AGL1({self.q})"

    def build(self):
        from .groups import agl1

        return agl1(self.q)


class GL2Expr(_FieldGroupExpr):
    def __str__(self):
        return f"GL2({self.q})"

    def build(self):
        from .groups import gl2

        return gl2(self.q)


class SL2Expr(_FieldGroupExpr):
    def __str__(self):
        return f"SL2({self.q})"

    def build(self):
        from .groups import sl2

        return sl2(self.q)


class UCExpr(_FieldGroupExpr):
    def __post_init__(self):
        super().__post_init__()
        if self.q % 2 == 0:
            raise BadParameter("UC(q) needs q odd")

    def __str__(self):
        return f"UC({self.q})"

    def build(self):
        from .groups import uc

        return uc(self.q).as_group(f"UC(F_{self.q})")


@dataclass(frozen=True)
class GroupProductExpr(GroupExpr):
    factors: tuple[GroupExpr, ...]

    def __str__(self):
        return " x ".join(_wrap(f, GroupProductExpr) for f in self.factors)

    def build(self):
        from .groups import direct_product_all

        return direct_product_all([f.build() for f in self.factors])


def _wrap(e, product_type) -> str:
    return f"({e})" if isinstance(e, product_type) else str(e)


# -- rings ------------------------------------------------------------------------


class RingExpr:
    def build(self):
        from .rings import build_ring

        return build_ring(self)


@dataclass(frozen=True)
class Zmod(RingExpr):
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise BadParameter("Z<n> needs n >= 2 (the zero ring is not supported)")

    def __str__(self):
        return f"Z{self.n}"


@dataclass(frozen=True)
class Fq(RingExpr):
    q: int

    def __post_init__(self):
        _prime_power_or_bad(self.q)

    def __str__(self):
        return f"F{self.q}"


@dataclass(frozen=True)
class Matrix(RingExpr):
    k: int
    sub: RingExpr

    def __post_init__(self):
        if self.k < 1:
            raise BadParameter("matrix size must be >= 1")

    def __str__(self):
        return f"M({self.k},{self.sub})"


@dataclass(frozen=True)
class UpperTriangular(RingExpr):
    k: int
    sub: RingExpr

    def __post_init__(self):
        if self.k < 1:
            raise BadParameter("matrix size must be >= 1")

    def __str__(self):
        return f"U({self.k},{self.sub})"


@dataclass(frozen=True)
class TruncPoly(RingExpr):
    sub: RingExpr
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise BadParameter("truncation degree must be >= 1")

    def __str__(self):
        return f"TP({self.sub},{self.k})"


@dataclass(frozen=True)
class GroupRing(RingExpr):
    t: int
    group: GroupExpr

    def __post_init__(self):
        if self.t < 2:
            raise BadParameter("group ring coefficients need t >= 2")

    def __str__(self):
        return f"GR({self.t},{self.group})"


@dataclass(frozen=True)
class EndAb(RingExpr):
    invariants: tuple[int, ...]

    def __post_init__(self):
        if not self.invariants or any(d < 2 for d in self.invariants):
            raise BadParameter("End(...) needs cyclic orders >= 2")

    def __str__(self):
        return f"End({','.join(str(d) for d in self.invariants)})"


@dataclass(frozen=True)
class Product(RingExpr):
    factors: tuple[RingExpr, ...]

    def __post_init__(self):
        if not self.factors:
            raise BadParameter("empty product (the zero ring) is not supported")

    def __str__(self):
        return " x ".join(_wrap(f, Product) for f in self.factors)
