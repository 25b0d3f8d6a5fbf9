"""Total Chern classes over a :class:`~scrolljet.chowring.RingSpec`.

Duals, twists by a line class, Whitney products, and the tangent bundle of
a projective bundle assembled from the relative Euler and tangent sequences.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .chowring import ClassExpr, RingMismatchError, RingSpec

__all__ = [
    "binom",
    "TotalChern",
    "trivial",
    "dual",
    "twist_by_line",
    "whitney",
    "bundle_classes",
    "base_tangent_classes",
    "relative_tangent_classes",
    "tangent_classes_scroll",
]


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``b < 0`` or ``b > a``."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class TotalChern:
    rank: int
    classes: tuple  # c_0 .. c_rank

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if len(self.classes) != self.rank + 1:
            raise ValueError("need exactly rank + 1 classes c_0..c_rank")
        ring = self.classes[0].ring
        if self.classes[0] != ring.one():
            raise ValueError("c_0 must be 1")
        for i, c in enumerate(self.classes):
            if c.ring != ring:
                raise RingMismatchError("Chern classes from different rings")
            if not c.is_homogeneous(i):
                raise ValueError(f"c_{i} is not homogeneous of degree {i}: {c}")

    @property
    def ring(self) -> RingSpec:
        return self.classes[0].ring

    def __getitem__(self, i: int) -> ClassExpr:
        if i < 0 or i > self.rank:
            return self.ring.zero()
        return self.classes[i]

    def total(self) -> ClassExpr:
        acc = self.ring.zero()
        for c in self.classes:
            acc = acc + c
        return acc

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.classes) + ")"


def trivial(ring: RingSpec, rank: int = 0) -> TotalChern:
    return TotalChern(rank, (ring.one(),) + (ring.zero(),) * rank)


def dual(c: TotalChern) -> TotalChern:
    return TotalChern(c.rank, tuple(x if i % 2 == 0 else -x for i, x in enumerate(c.classes)))


def twist_by_line(c: TotalChern, r: int, ell: ClassExpr) -> TotalChern:
    """Total Chern class of ``E (x) ell`` for ``E`` of rank ``r``.

    ``c_i(E (x) ell) = sum_{j<=i} C(r-j, i-j) c_j(E) ell**(i-j)``.
    """
    if r != c.rank:
        raise ValueError(f"rank mismatch: {r} vs {c.rank}")
    if ell.ring != c.ring:
        raise RingMismatchError("line class from a different ring")
    if not ell.is_homogeneous(1):
        raise ValueError("twisting class must be homogeneous of degree 1")
    ring = c.ring
    powers = [ring.one()]
    for _ in range(r):
        powers.append(powers[-1] * ell)
    out = []
    for i in range(r + 1):
        acc = ring.zero()
        for j in range(i + 1):
            k = binom(r - j, i - j)
            if k:
                acc = acc + k * (c[j] * powers[i - j])
        out.append(acc)
    return TotalChern(r, tuple(out))


def whitney(a: TotalChern, b: TotalChern) -> TotalChern:
    if a.ring != b.ring:
        raise RingMismatchError("Whitney product of classes from different rings")
    rank = a.rank + b.rank
    ring = a.ring
    out = []
    for k in range(rank + 1):
        acc = ring.zero()
        for i in range(max(0, k - b.rank), min(k, a.rank) + 1):
            acc = acc + a[i] * b[k - i]
        out.append(acc)
    return TotalChern(rank, tuple(out))


def bundle_classes(ring: RingSpec) -> TotalChern:
    """``c(E)`` pulled back to the scroll ring: ``c_i = e_i`` (zero for ``i > min(r, m)``)."""
    _need_scroll(ring)
    return TotalChern(ring.r, (ring.one(),) + tuple(ring.gen_or_zero(f"e{i}") for i in range(1, ring.r + 1)))


def base_tangent_classes(ring: RingSpec) -> TotalChern:
    """``c(T_Y)`` pulled back: ``c_j = t_j``."""
    _need_scroll(ring)
    return TotalChern(ring.m, (ring.one(),) + tuple(ring.gen(f"t{j}") for j in range(1, ring.m + 1)))


def relative_tangent_classes(ring: RingSpec) -> TotalChern:
    """``c(T_{X/Y}) = c(pi^*(E^dual) (x) L)`` by the Euler sequence with trivial kernel.

    The top class ``c_r`` of the twist is the Chern-Wu relation itself, so it
    vanishes and the result has rank ``r - 1``.
    """
    _need_scroll(ring)
    twisted = twist_by_line(dual(bundle_classes(ring)), ring.r, ring.gen("L"))
    if not twisted[ring.r].is_zero():
        raise AssertionError(f"c_r of the twisted dual should vanish, got {twisted[ring.r]}")
    return TotalChern(ring.r - 1, twisted.classes[:-1])


def tangent_classes_scroll(ring: RingSpec) -> TotalChern:
    """``c(T_X)`` for ``X = P_Y(E)``: relative tangent times ``pi^* c(T_Y)``; rank ``n``."""
    return whitney(relative_tangent_classes(ring), base_tangent_classes(ring))


def _need_scroll(ring: RingSpec):
    if ring.r is None:
        raise ValueError("expected a scroll ring")
