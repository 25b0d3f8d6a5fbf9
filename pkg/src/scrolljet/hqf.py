"""Hyperquadric fibrations over a curve.

``(X, L)`` sits in ``P = P_B(E)`` as a member of ``|2 xi - pi^* beta|`` with
``E = f_* L`` of rank ``n + 1`` over a curve ``B`` of genus ``g``; only the
degrees ``e = deg c_1(E)`` and ``b = deg beta`` enter.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .chern import binom
from .chowring import make_fibration_ring

log = logging.getLogger(__name__)

__all__ = [
    "InvalidHQFInput",
    "HQFInput",
    "ABCTriple",
    "abc",
    "closed_form_value",
    "rewrite_n4",
    "cn_closed",
    "cn_recursion",
    "singular_fiber_count",
    "ObstructionReport",
    "defect_obstruction_search",
]


class InvalidHQFInput(ValueError):
    pass


@dataclass(frozen=True)
class HQFInput:
    n: int
    g: int
    e: int
    b: int

    def check(self, strict: bool = False) -> list:
        """Raise on violated invariants; return warnings (raised too when ``strict``)."""
        if self.n < 3:
            raise InvalidHQFInput(f"n >= 3 violated: n = {self.n}")
        if self.g < 0:
            raise InvalidHQFInput(f"g >= 0 violated: g = {self.g}")
        if 2 * self.e - self.b <= 0:
            raise InvalidHQFInput(f"2e - b > 0 violated: 2e - b = {2 * self.e - self.b}")
        warnings = []
        sfc = 2 * self.e - 5 * self.b
        if sfc < 0:
            msg = f"2e - 5b >= 0 violated: 2e - 5b = {sfc}"
            if self.n == 4 or strict:
                raise InvalidHQFInput(msg)
            warnings.append(msg + f" (only required at n = 4; n = {self.n})")
        return warnings


@dataclass(frozen=True)
class ABCTriple:
    A: int
    B: int
    C: int

    def as_tuple(self):
        return (self.A, self.B, self.C)


def abc(n: int) -> ABCTriple:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    A = B = C = 0
    for t in range(n + 1):
        w = (-1) ** t * (n + 1 - t)
        A += w * sum((-1) ** i * 2 ** i * binom(n, t - i) for i in range(t + 1))
        B += w * sum((-1) ** i * 2 ** i * (i + 1) * binom(n + 1, t - i) for i in range(t + 1))
        C += w * sum((-1) ** i * 2 ** i * binom(n + 1, t - i - 1) for i in range(t + 1))
    return ABCTriple(A, B, C)


def closed_form_value(n, e, b, g):
    """``2Ae - Bb + 4C(1-g)`` without input checks; accepts symbolic ``e, b, g``."""
    t = abc(n)
    return 2 * t.A * e - t.B * b + 4 * t.C * (1 - g)


def rewrite_n4(e, b, g):
    """Equivalent form at ``n = 4``: ``(2e - b) + 3(2e - 5b) - 4(1 - g)``."""
    return (2 * e - b) + 3 * (2 * e - 5 * b) - 4 * (1 - g)


def cn_closed(inp: HQFInput, strict: bool = False) -> int:
    inp.check(strict)
    return closed_form_value(inp.n, inp.e, inp.b, inp.g)


def cn_recursion(inp: HQFInput, strict: bool = False) -> int:
    """Evaluate ``c_n(J_1(L))`` in the ring ``{L, F}`` from the restricted classes.

    ``c_t(T_X) = sum_i (-1)**i c_{t-i}(T_P)|_X (2 xi - pi^* beta)|_X**i`` with

    * ``(2 xi - pi^* beta)|_X**i = 2**i L**i - i b 2**(i-1) L**(i-1) F``
    * ``c_s(T_P)|_X = C(n+1,s) L**s - e C(n,s-1) F L**(s-1) + 2(1-g) C(n+1,s-1) L**(s-1) F``

    then the jet formula, and finally ``L**(n-1) F = 2``, ``L**n = 2e - b``.
    """
    inp.check(strict)
    n, g, e, b = inp.n, inp.g, inp.e, inp.b
    ring = make_fibration_ring(n)
    L, F = ring.gen("L"), ring.gen("F")
    Lp = [L ** k for k in range(n + 1)]

    def divisor_power(i):
        if i == 0:
            return ring.one()
        return 2 ** i * Lp[i] - i * b * 2 ** (i - 1) * (Lp[i - 1] * F)

    def ambient_tangent(s):
        if s == 0:
            return ring.one()
        return (binom(n + 1, s) * Lp[s]
                - e * binom(n, s - 1) * (F * Lp[s - 1])
                + 2 * (1 - g) * binom(n + 1, s - 1) * (Lp[s - 1] * F))

    D = [divisor_power(i) for i in range(n + 1)]
    TP = [ambient_tangent(s) for s in range(n + 1)]
    cn = ring.zero()
    for t in range(n + 1):
        ct = ring.zero()
        for i in range(t + 1):
            term = TP[t - i] * D[i]
            ct = ct - term if i % 2 else ct + term
        cn = cn + (-1) ** t * (n + 1 - t) * (ct * Lp[n - t])
    top = cn.component(n)
    return top.coefficient(L=n) * (2 * e - b) + top.coefficient(L=n - 1, F=1) * 2


def singular_fiber_count(e: int, b: int) -> int:
    v = 2 * e - 5 * b
    if v < 0:
        raise InvalidHQFInput(f"2e - 5b = {v} < 0: not valid hyperquadric data at n = 4")
    return v


@dataclass
class ObstructionReport:
    e_max: int
    b_max: int
    witnesses: list = field(default_factory=list)
    explanation: list = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.witnesses


_EXPLANATION = [
    "2e-b > 0 and 2e-5b >= 0 with (2e-b) + 3(2e-5b) = 4 force 3(2e-5b) <= 3, so 2e-5b is 0 or 1",
    "2e-5b = 0: then 2e-b = 4 and 2e = 5b, so 4b = 4, b = 1 and 2e = 5: e is not an integer",
    "2e-5b = 1: then 2e-b = 1 and 2e = 5b+1, so 4b = 0, b = 0 and 2e = 1: e is not an integer",
]


def defect_obstruction_search(e_max: int, b_max: int) -> ObstructionReport:
    """Scan for integers with ``(2e-b) + 3(2e-5b) = 4``, ``2e-b > 0``, ``2e-5b >= 0``.

    This is the vanishing of ``c_4(J_1(L))`` at genus 0. The equation reads
    ``8e - 16b = 4``, so for each ``b`` at most one ``e`` can solve it.
    """
    if e_max < 1 or b_max < 1:
        raise ValueError("bounds must be positive")
    report = ObstructionReport(e_max, b_max, explanation=list(_EXPLANATION))
    for b in range(-b_max, b_max + 1):
        num = 4 + 16 * b
        if num % 8:
            continue
        e = num // 8
        if abs(e) <= e_max and 2 * e - b > 0 and 2 * e - 5 * b >= 0:
            report.witnesses.append((e, b))
    if report.witnesses:
        log.error("obstruction search found witnesses %s", report.witnesses)
    return report
