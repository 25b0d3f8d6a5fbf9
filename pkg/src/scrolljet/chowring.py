"""Truncated graded Chow rings of projective bundles over a formal base.

A ring is described by an immutable :class:`RingSpec`; its elements are
:class:`ClassExpr` values, sparse maps from exponent vectors to exact
coefficients. Every ``ClassExpr`` produced here is already in normal form:

* the tautological exponent stays below the rank ``r`` (Chern-Wu rewrite
  ``L**r = sum_{i>=1} (-1)**(i+1) * e_i * L**(r-i)``),
* the weighted degree in base generators is at most ``m``,
* the total weighted degree is at most ``n``,
* a fiber class ``F`` appears at most to the first power.

Equality of classes is therefore equality of term maps.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

__all__ = [
    "GeneratorKind",
    "Generator",
    "RingSpec",
    "RingMismatchError",
    "ClassExpr",
    "make_scroll_ring",
    "make_fibration_ring",
    "add",
    "mul",
    "normal_form",
    "component",
    "push_forward",
    "integrate_base",
]


class GeneratorKind(enum.Enum):
    TAUTOLOGICAL = "L"
    BUNDLE_CHERN = "e"
    TANGENT_CHERN = "t"
    FIBER = "F"


class RingMismatchError(ValueError):
    """Operands live in different rings."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    kind: GeneratorKind

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generator {self.name!r} must have degree >= 1")


Monomial = tuple  # exponent vector aligned with RingSpec.generators


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


@dataclass(frozen=True)
class RingSpec:
    """Truncated graded quotient ring on an ordered list of generators.

    ``r`` is the rank driving the Chern-Wu rewrite of the tautological
    generator; ``r=None`` disables the rewrite (used for the fibration ring,
    where only truncation applies).
    """

    generators: tuple
    m: int
    n: int
    r: int | None = None

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if self.m < 1 or self.n < 1:
            raise ValueError("dimensions must be positive")
        taut = [g for g in self.generators if g.kind is GeneratorKind.TAUTOLOGICAL]
        if len(taut) > 1:
            raise ValueError("at most one tautological generator")
        if self.r is not None:
            if not taut:
                raise ValueError("a Chern-Wu rank needs a tautological generator")
            if self.n != self.m + self.r - 1:
                raise ValueError("scroll rings need n = m + r - 1")

    # -- cached layout ----------------------------------------------------
    @cached_property
    def index(self) -> Mapping[str, int]:
        return MappingProxyType({g.name: i for i, g in enumerate(self.generators)})

    @cached_property
    def degrees(self) -> tuple:
        return tuple(g.degree for g in self.generators)

    @cached_property
    def taut_index(self) -> int | None:
        for i, g in enumerate(self.generators):
            if g.kind is GeneratorKind.TAUTOLOGICAL:
                return i
        return None

    @cached_property
    def fiber_index(self) -> int | None:
        for i, g in enumerate(self.generators):
            if g.kind is GeneratorKind.FIBER:
                return i
        return None

    @cached_property
    def base_positions(self) -> tuple:
        return tuple(i for i, g in enumerate(self.generators)
                     if g.kind is not GeneratorKind.TAUTOLOGICAL)

    @cached_property
    def _relation(self) -> tuple:
        # L**r -> sum_{i>=1} (-1)**(i+1) e_i L**(r-i); missing e_i are zero
        out = []
        for i in range(1, self.r + 1):
            name = f"e{i}"
            if name not in self.index:
                continue
            exps = [0] * len(self.generators)
            exps[self.index[name]] = 1
            exps[self.taut_index] = self.r - i
            out.append((tuple(exps), 1 if i % 2 else -1))
        return tuple(out)

    @cached_property
    def _reduction_cache(self) -> dict:
        return {}

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    # -- monomial measures ------------------------------------------------
    def degree_of(self, exps: Monomial) -> int:
        return sum(d * k for d, k in zip(self.degrees, exps))

    def base_degree_of(self, exps: Monomial) -> int:
        return sum(self.degrees[i] * exps[i] for i in self.base_positions)

    def _admissible(self, exps: Monomial) -> bool:
        if self.degree_of(exps) > self.n or self.base_degree_of(exps) > self.m:
            return False
        f = self.fiber_index
        return f is None or exps[f] <= 1

    # -- element constructors ---------------------------------------------
    def zero(self) -> "ClassExpr":
        return ClassExpr._wrap(self, {})

    def one(self) -> "ClassExpr":
        return self.scalar(1)

    def scalar(self, c) -> "ClassExpr":
        c = _coerce(c)
        return ClassExpr._wrap(self, {self.zero_monomial: c} if c else {})

    def gen(self, name: str) -> "ClassExpr":
        if name not in self.index:
            raise KeyError(f"ring has no generator {name!r}")
        exps = [0] * len(self.generators)
        exps[self.index[name]] = 1
        return self.from_terms({tuple(exps): 1})

    def has(self, name: str) -> bool:
        return name in self.index

    def gen_or_zero(self, name: str) -> "ClassExpr":
        """Generator by name, or zero when it was never created (e.g. ``e5`` with r=2)."""
        return self.gen(name) if name in self.index else self.zero()

    def monomial(self, coefficient=1, **exponents) -> "ClassExpr":
        exps = [0] * len(self.generators)
        for name, k in exponents.items():
            if k < 0:
                raise ValueError("negative exponent")
            exps[self.index[name]] = k
        return self.from_terms({tuple(exps): coefficient})

    def from_terms(self, terms: Mapping) -> "ClassExpr":
        """Normalize an arbitrary (unreduced) polynomial into this ring."""
        return ClassExpr._wrap(self, _normalize_terms(self, terms))


@lru_cache(maxsize=None)
def _taut_power(ring: RingSpec, k: int) -> tuple:
    """Normal form of ``L**k`` as a tuple of (monomial, coeff), built upward from L**(k-1)."""
    li = ring.taut_index
    exps = [0] * len(ring.generators)
    exps[li] = k
    if ring.r is None or k < ring.r:
        mono = tuple(exps)
        return ((mono, 1),) if ring._admissible(mono) else ()
    if k > ring.n:
        return ()
    acc: dict = {}
    for mono, c in _taut_power(ring, k - 1):
        if mono[li] + 1 < ring.r:
            new = list(mono)
            new[li] += 1
            _accumulate(ring, acc, tuple(new), c)
            continue
        # mono carries L**(r-1): replace L**r via the relation
        stripped = list(mono)
        stripped[li] = 0
        for rel_mono, rel_c in ring._relation:
            new = tuple(a + b for a, b in zip(stripped, rel_mono))
            _accumulate(ring, acc, new, c * rel_c)
    return tuple(sorted(acc.items()))


def _accumulate(ring, acc, mono, c):
    if not ring._admissible(mono):
        return
    v = acc.get(mono, 0) + c
    if v:
        acc[mono] = v
    else:
        acc.pop(mono, None)


def _reduced_monomial(ring: RingSpec, mono: Monomial) -> tuple:
    """Normal form of a single monomial as a tuple of (monomial, coeff); memoized per ring."""
    cache = ring._reduction_cache
    hit = cache.get(mono)
    if hit is not None:
        return hit
    if not ring._admissible(mono):
        out = ()
    else:
        li = ring.taut_index
        if ring.r is None or li is None or mono[li] < ring.r:
            out = ((mono, 1),)
        else:
            base = list(mono)
            base[li] = 0
            acc: dict = {}
            for pmono, pc in _taut_power(ring, mono[li]):
                _accumulate(ring, acc, tuple(a + b for a, b in zip(pmono, base)), pc)
            out = tuple(acc.items())
    cache[mono] = out
    return out


def _reduce_monomial_into(ring: RingSpec, acc: dict, mono: Monomial, c) -> None:
    for rmono, rc in _reduced_monomial(ring, mono):
        v = acc.get(rmono, 0) + c * rc
        if v:
            acc[rmono] = v
        else:
            del acc[rmono]


def _normalize_terms(ring: RingSpec, terms: Mapping) -> dict:
    width = len(ring.generators)
    acc: dict = {}
    for mono, c in terms.items():
        mono = tuple(int(k) for k in mono)
        if len(mono) != width or any(k < 0 for k in mono):
            raise ValueError(f"bad exponent vector {mono!r}")
        c = _coerce(c)
        if c:
            _reduce_monomial_into(ring, acc, mono, c)
    return {k: _coerce(v) for k, v in acc.items()}


class ClassExpr:
    """Immutable element of a :class:`RingSpec`, always in normal form."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping | None = None):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", _normalize_terms(ring, terms or {}))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _wrap(cls, ring, terms):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ClassExpr is immutable")

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic -------------------------------------------------------
    def _other(self, other):
        if isinstance(other, ClassExpr):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError("operands belong to different rings")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for mono, c in other._terms.items():
            v = acc.get(mono, 0) + c
            if v:
                acc[mono] = _coerce(v)
            else:
                del acc[mono]
        return ClassExpr._wrap(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return ClassExpr._wrap(self.ring, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = _coerce(other)
            if not c:
                return self.ring.zero()
            if type(c) is int:
                return ClassExpr._wrap(self.ring, {k: v * c if type(v) is int else _coerce(v * c)
                                                   for k, v in self._terms.items()})
            return ClassExpr._wrap(self.ring, {k: _coerce(v * c) for k, v in self._terms.items()})
        other = self._other(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                _reduce_monomial_into(ring, acc, mono, c1 * c2)
        return ClassExpr._wrap(ring, {k: v if type(v) is int else _coerce(v) for k, v in acc.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ClassExpr):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, frozenset(self._terms.items()))))
        return self._hash

    # -- grading ----------------------------------------------------------
    def component(self, d: int) -> "ClassExpr":
        deg = self.ring.degree_of
        return ClassExpr._wrap(self.ring, {k: v for k, v in self._terms.items() if deg(k) == d})

    def degrees(self) -> list:
        return sorted({self.ring.degree_of(k) for k in self._terms})

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs[0] == d)

    def coefficient(self, **exponents):
        exps = [0] * len(self.ring.generators)
        for name, k in exponents.items():
            exps[self.ring.index[name]] = k
        return self._terms.get(tuple(exps), 0)

    # -- display ----------------------------------------------------------
    def _sorted_items(self):
        deg = self.ring.degree_of
        return sorted(self._terms.items(), key=lambda kv: (-deg(kv[0]), tuple(-k for k in kv[0])))

    def __str__(self):
        if not self._terms:
            return "0"
        names = [g.name for g in self.ring.generators]
        parts = []
        for mono, c in self._sorted_items():
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, mono) if k]
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"ClassExpr({self})"


# -- ring constructors ----------------------------------------------------

@lru_cache(maxsize=None)
def make_scroll_ring(m: int, r: int) -> RingSpec:
    """Chow ring model of ``P_Y(E)`` with ``dim Y = m`` and ``rank E = r``.

    Generators are ``L``, ``e1..e_min(r,m)`` (Chern classes of ``E``) and
    ``t1..tm`` (Chern classes of ``T_Y``).
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"base dimension must be a positive integer, got {m!r}")
    if not isinstance(r, int) or r < 2:
        raise ValueError(f"rank {r!r} is not a scroll: need r >= 2")
    gens = [Generator("L", 1, GeneratorKind.TAUTOLOGICAL)]
    gens += [Generator(f"e{i}", i, GeneratorKind.BUNDLE_CHERN) for i in range(1, min(r, m) + 1)]
    gens += [Generator(f"t{j}", j, GeneratorKind.TANGENT_CHERN) for j in range(1, m + 1)]
    return RingSpec(tuple(gens), m=m, n=m + r - 1, r=r)


@lru_cache(maxsize=None)
def make_fibration_ring(n: int) -> RingSpec:
    """Two-generator ring ``{L, F}`` over a curve: ``F**2 = 0``, truncated at degree ``n``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    gens = (Generator("L", 1, GeneratorKind.TAUTOLOGICAL), Generator("F", 1, GeneratorKind.FIBER))
    return RingSpec(gens, m=1, n=n, r=None)


# -- functional surface ---------------------------------------------------

def add(a: ClassExpr, b: ClassExpr) -> ClassExpr:
    return a + b


def mul(a: ClassExpr, b: ClassExpr) -> ClassExpr:
    return a * b


def normal_form(a, ring: RingSpec | None = None) -> ClassExpr:
    """Normal form of a ``ClassExpr`` (identity) or of a raw ``{monomial: coeff}`` map."""
    if isinstance(a, ClassExpr):
        if ring is not None and ring != a.ring:
            raise RingMismatchError("operand belongs to a different ring")
        return a
    if ring is None:
        raise ValueError("a ring is required to normalize raw terms")
    return ring.from_terms(a)


def component(a: ClassExpr, d: int) -> ClassExpr:
    return a.component(d)


def push_forward(a: ClassExpr) -> ClassExpr:
    """Push a scroll class down to the base: keep the ``L**(r-1)`` terms and drop ``L``.

    Valid on normal forms, where ``pi_*(L**k) = 0`` for ``k < r-1`` and ``pi_*(L**(r-1)) = 1``.
    """
    ring = a.ring
    if ring.r is None:
        raise ValueError("push_forward needs a scroll ring")
    li = ring.taut_index
    out = {}
    for mono, c in a.terms.items():
        if mono[li] == ring.r - 1:
            new = list(mono)
            new[li] = 0
            out[tuple(new)] = c
    return ClassExpr._wrap(ring, out)


def integrate_base(a: ClassExpr, values: Mapping[str, int]):
    """Degree of an L-free base class on ``Y = P^m`` when each generator ``g`` equals ``values[g] * H**deg(g)``.

    Only the degree-``m`` part contributes (``H**m = 1``).
    """
    ring = a.ring
    li = ring.taut_index
    names = [g.name for g in ring.generators]
    total = 0
    for mono, c in a.terms.items():
        if li is not None and mono[li]:
            raise ValueError("integrate_base expects a class without the tautological generator")
        if ring.base_degree_of(mono) != ring.m:
            continue
        term = c
        for name, k in zip(names, mono):
            if k:
                term *= values.get(name, 0) ** k
        total += term
    return _coerce(total) if isinstance(total, (int, Fraction)) else total


def sum_classes(items: Iterable[ClassExpr], ring: RingSpec) -> ClassExpr:
    acc = ring.zero()
    for x in items:
        acc = acc + x
    return acc
