"""Graded group containers: tridegrees, monomial generator names, summands.

A generator name is a formal sum of monomials; almost every class is a
single monomial, but surviving classes over the 2-adic rationals can be
honest two-term sums, so the sum form is first-class.
"""
from __future__ import annotations

from dataclasses import dataclass, field

# tridegree shifts of the name symbols: (s, f, w) per unit exponent
_SYMBOL_DEGREE = {
    "h1": (1, 1, 1),
    "v1": (2, 0, 1),
    "iota": (-1, 1, 0),
    "tau": (0, 0, -1),
}
# coefficient-module unit symbols all sit in pi_{-1,-1} except 2-cell classes
_UNIT_WEIGHT_1 = {"u", "rho", "pi", "[2]"}


def _unit_degree(sym: str, exp: int):
    if sym in _UNIT_WEIGHT_1 or sym.startswith("["):
        return (-exp, exp, -exp)
    if sym.startswith("a_"):
        return (-2 * exp, 2 * exp, -2 * exp)
    raise ValueError(f"unknown unit symbol {sym!r}")


@dataclass(frozen=True, order=True)
class TriDegree:
    s: int
    f: int
    w: int

    def __add__(self, other: "TriDegree") -> "TriDegree":
        return TriDegree(self.s + other.s, self.f + other.f, self.w + other.w)

    def shifted(self, s=0, f=0, w=0) -> "TriDegree":
        return TriDegree(self.s + s, self.f + f, self.w + w)

    @property
    def slice_index(self) -> int:
        if (self.s + self.f) % 2:
            raise ValueError(f"{self} has odd s+f; no slice index")
        return (self.s + self.f) // 2

    def as_tuple(self):
        return (self.s, self.f, self.w)


def d_shift(r: int) -> TriDegree:
    """Tridegree shift of the page-r differential: slices jump by r."""
    return TriDegree(-1, 2 * r + 1, 0)


@dataclass(frozen=True)
class Monomial:
    """A named generator: 2-power coefficient times a symbol word.

    units is a sorted tuple of (symbol, exponent) pairs over the field's
    alphabet; v1 stores the literal (even) exponent of v1.
    """

    coeff2: int = 0
    iota: int = 0
    h1: int = 0
    v1: int = 0
    tau: int = 0
    units: tuple = ()

    def __post_init__(self):
        assert self.v1 % 2 == 0, "v1 appears only in even powers"
        assert tuple(sorted(self.units)) == self.units

    def degree(self) -> TriDegree:
        s = self.h1 + 2 * self.v1 - self.iota
        f = self.h1 + self.iota
        w = self.h1 + self.v1 - self.tau
        for sym, exp in self.units:
            ds, df, dw = _unit_degree(sym, exp)
            s += ds
            f += df
            w += dw
        return TriDegree(s, f, w)

    @property
    def slice_index(self) -> int:
        return self.h1 + self.v1

    def times_tau(self, j=1) -> "Monomial":
        return Monomial(self.coeff2, self.iota, self.h1, self.v1, self.tau + j, self.units)

    def with_coeff2(self, m: int) -> "Monomial":
        return Monomial(m, self.iota, self.h1, self.v1, self.tau, self.units)

    def sort_key(self):
        return (self.iota, self.units, self.v1, self.h1, self.tau, self.coeff2)

    def text(self, with_coeff=True) -> str:
        parts = []
        if with_coeff and self.coeff2:
            parts.append(str(1 << self.coeff2))
        if self.iota:
            parts.append("iota")
        for sym, exp in self.units:
            parts.append(sym if exp == 1 else f"{sym}^{exp}")
        if self.v1:
            parts.append(f"v1^{self.v1}")
        if self.h1:
            parts.append("h1" if self.h1 == 1 else f"h1^{self.h1}")
        if self.tau:
            parts.append("tau" if self.tau == 1 else f"tau^{self.tau}")
        return " ".join(parts) if parts else "1"

    def __repr__(self):
        return f"<{self.text()}>"


ONE = Monomial()


@dataclass(frozen=True)
class Generator:
    """Formal sum of monomials naming one cyclic summand."""

    terms: tuple = (ONE,)

    @staticmethod
    def of(*monos: Monomial) -> "Generator":
        return Generator(tuple(sorted(monos, key=Monomial.sort_key)))

    def degree(self) -> TriDegree:
        degs = {m.degree() for m in self.terms}
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous generator {self}")
        return degs.pop()

    def is_single(self) -> bool:
        return len(self.terms) == 1

    @property
    def lead(self) -> Monomial:
        return self.terms[0]

    def text(self) -> str:
        return " + ".join(m.text() for m in self.terms)

    def sort_key(self):
        return tuple(m.sort_key() for m in self.terms)

    def __repr__(self):
        return f"<{self.text()}>"


@dataclass(frozen=True)
class CyclicSummand:
    """Z (order 0, read 2-locally) or Z/2^e, with a named generator."""

    order: int
    gen: Generator
    degree: TriDegree

    def __post_init__(self):
        assert self.order == 0 or (self.order & (self.order - 1)) == 0
        assert self.order != 1, "trivial summands are dropped, not stored"

    @property
    def torsion_exponent(self):
        return None if self.order == 0 else self.order.bit_length() - 1

    def order_text(self) -> str:
        return "Z" if self.order == 0 else f"Z/{self.order}"

    def text(self) -> str:
        return f"{self.order_text()}{{{self.gen.text()}}}"

    def __repr__(self):
        return self.text()


@dataclass(frozen=True)
class Window:
    """Rectangular tridegree bounds; w bounds may differ per caller."""

    s_min: int
    s_max: int
    f_min: int
    f_max: int
    w_min: int
    w_max: int

    def __contains__(self, deg: TriDegree) -> bool:
        return (self.s_min <= deg.s <= self.s_max
                and self.f_min <= deg.f <= self.f_max
                and self.w_min <= deg.w <= self.w_max)

    def degrees(self):
        for s in range(self.s_min, self.s_max + 1):
            for f in range(self.f_min, self.f_max + 1):
                for w in range(self.w_min, self.w_max + 1):
                    yield TriDegree(s, f, w)


class WindowUnderflowError(LookupError):
    """Raised when an operation needs a degree outside the stored window."""


@dataclass
class GroupWindow:
    """Ordered direct sum of cyclic summands inside a degree window."""

    window: Window
    summands: list = field(default_factory=list)

    def __post_init__(self):
        for cs in self.summands:
            if cs.degree not in self.window:
                raise WindowUnderflowError(f"{cs} outside {self.window}")
        self.summands.sort(key=lambda cs: (cs.degree, cs.gen.sort_key()))

    def at(self, deg: TriDegree):
        if deg not in self.window:
            raise WindowUnderflowError(f"window underflow at {deg}")
        return [cs for cs in self.summands if cs.degree == deg]

    def orders_at(self, deg: TriDegree):
        return sorted(cs.order for cs in self.at(deg))

    def nonzero_degrees(self):
        return sorted({cs.degree for cs in self.summands})

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)


def isomorphic_orders(a, b) -> bool:
    """Same multiset of cyclic orders (the additive isomorphism test)."""
    return sorted(a) == sorted(b)
