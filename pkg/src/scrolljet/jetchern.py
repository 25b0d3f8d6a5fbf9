"""Top Chern class of the first jet bundle of a scroll ``X = P_Y(E)``.

Two independent routes are provided:

* :func:`cn_closed` sums the closed-form coefficient table ``A[s1, s2]``;
* :func:`cn_expansion` expands ``sum_t (n+1-t)(-1)**t c_t(T_X) L**(n-t)`` using
  only ring arithmetic and the Chern calculus in :mod:`scrolljet.chern`.

Both return normal-form classes of degree ``n = m + r - 1`` in
``make_scroll_ring(m, r)``; a top-degree class is ``L**(r-1)`` times a
degree-``m`` base class, which :func:`~scrolljet.chowring.push_forward`
extracts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .chern import (
    TotalChern,
    base_tangent_classes,
    binom,
    bundle_classes,
    dual,
    tangent_classes_scroll,
)
from .chowring import ClassExpr, RingSpec, integrate_base, make_scroll_ring, push_forward

__all__ = [
    "f_eval",
    "coeff_A",
    "CoeffTable",
    "coeff_table",
    "cn_closed",
    "cn_expansion",
    "special_case_cn",
    "lift_to_top",
    "fukuma_v",
    "projective_base_values",
    "evaluate_on_projective_base",
    "PluckerCodegree",
    "plucker_codegree",
    "curve_jet_degree",
]


def f_eval(m: int, r: int, s1: int, s2: int) -> int:
    """``sum_{t=0}^{m+r-1} (-1)**t (m+r-t) C(r-s1, t-s1-s2)`` on arbitrary integers."""
    return sum((-1) ** t * (m + r - t) * binom(r - s1, t - s1 - s2) for t in range(m + r))


@lru_cache(maxsize=None)
def coeff_A(m: int, r: int, s1: int, s2: int) -> int:
    """Coefficient of ``L**(n-s1-s2) c_s1(E^dual) c_s2(T_Y)`` in ``c_n(J_1(L))``."""
    if m < 1 or r < 2:
        raise ValueError(f"need m >= 1 and r >= 2, got m={m}, r={r}")
    if s1 < 0 or s2 < 0 or s1 + s2 > m:
        raise ValueError(f"(s1, s2) = ({s1}, {s2}) outside s1, s2 >= 0, s1 + s2 <= {m}")
    n = m + r - 1
    # identical to f_eval since n + 1 - t = m + r - t
    return sum((-1) ** t * (n + 1 - t) * binom(r - s1, t - s1 - s2) for t in range(n + 1))


@dataclass(frozen=True)
class CoeffTable:
    m: int
    r: int
    entries: Mapping

    def nonzero(self) -> dict:
        return {k: v for k, v in self.entries.items() if v}

    def __getitem__(self, key):
        return self.entries[key]


@lru_cache(maxsize=None)
def coeff_table(m: int, r: int) -> CoeffTable:
    entries = {(s1, s2): coeff_A(m, r, s1, s2)
               for s1 in range(m + 1) for s2 in range(m + 1 - s1)}
    return CoeffTable(m, r, MappingProxyType(entries))


def cn_closed(m: int, r: int) -> ClassExpr:
    ring = make_scroll_ring(m, r)
    n = ring.n
    L = ring.gen("L")
    e_dual = dual(bundle_classes(ring))
    t = base_tangent_classes(ring)
    acc = ring.zero()
    for (s1, s2), a in coeff_table(m, r).entries.items():
        if a:
            acc = acc + a * (L ** (n - s1 - s2) * e_dual[s1] * t[s2])
    return acc


def cn_expansion(m: int, r: int) -> ClassExpr:
    ring = make_scroll_ring(m, r)
    n = ring.n
    L = ring.gen("L")
    ct = tangent_classes_scroll(ring)
    acc = ring.zero()
    for t in range(n + 1):
        acc = acc + ((-1) ** t * (n + 1 - t)) * (ct[t] * L ** (n - t))
    return acc


def lift_to_top(base_class: ClassExpr) -> ClassExpr:
    """``L**(r-1) * base_class``: the top-degree class whose push-forward is ``base_class``."""
    ring = base_class.ring
    return ring.gen("L") ** (ring.r - 1) * base_class


def special_case_cn(m: int, r: int) -> ClassExpr:
    """Printed case formulas for ``r >= m``, with no summation over coefficients."""
    if r < m:
        raise ValueError("no closed special case in paper; use cn_closed")
    ring = make_scroll_ring(m, r)
    e = ring.gen_or_zero
    if r >= m + 2:
        return ring.zero()
    if r == m + 1:
        return lift_to_top(e(f"e{m}"))
    # r == m; K_Y = -t1
    canonical = -ring.gen("t1")
    return lift_to_top(e(f"e{m - 1}") * (e("e1") + canonical) + m * e(f"e{m}"))


def fukuma_v(m: int, cE: TotalChern) -> ClassExpr:
    """``1 + ((m-2) c_m(E) + (K_Y + c_1(E)) c_{m-1}(E)) / 2`` as a formal class (constant 1 kept)."""
    if cE.rank != m:
        raise ValueError(f"Fukuma invariant needs rank(E) = m = {m}, got {cE.rank}")
    ring = cE.ring
    canonical = -ring.gen("t1")
    inner = (m - 2) * cE[m] + (canonical + cE[1]) * cE[m - 1]
    return ring.one() + Fraction(1, 2) * inner


def projective_base_values(m: int, r: int, twist: int = 1) -> dict:
    """Generator values for ``Y = P^m``, ``E = O(twist)**r``: ``e_i = C(r,i) twist**i``, ``t_j = C(m+1,j)``."""
    values = {f"e{i}": binom(r, i) * twist ** i for i in range(1, min(r, m) + 1)}
    values.update({f"t{j}": binom(m + 1, j) for j in range(1, m + 1)})
    return values


def evaluate_on_projective_base(x: ClassExpr, twist: int = 1):
    """Degree of a class after substituting the ``(P^m, O(twist)**r)`` values; top classes are pushed down first."""
    ring: RingSpec = x.ring
    li = ring.taut_index
    if any(mono[li] for mono in x.terms):
        x = push_forward(x)
    return integrate_base(x, projective_base_values(ring.m, ring.r, twist))


@dataclass(frozen=True)
class PluckerCodegree:
    total: int
    dual_curve_part: int
    flex_part: int

    def as_dict(self) -> dict:
        return {"total": self.total, "dual_curve_part": self.dual_curve_part, "flex_part": self.flex_part}


def plucker_codegree(d: int) -> PluckerCodegree:
    """``c_1(J_1(L)) = d + 3d(d-2)`` for the conormal variety of a smooth plane curve of degree ``d``."""
    if d < 2:
        raise ValueError(f"plane curve degree must be >= 2, got {d}")
    flex = 3 * d * (d - 2)
    return PluckerCodegree(total=d + flex, dual_curve_part=d, flex_part=flex)


def curve_jet_degree(genus: int, line_degree: int) -> int:
    """``deg c_1(J_1(L)) = deg K + 2 deg L = 2g - 2 + 2 deg L`` on a smooth curve."""
    return 2 * genus - 2 + 2 * line_degree
