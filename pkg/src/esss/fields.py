"""Base field identifiers and their mod-2 coefficient symbol algebra.

Supported bases: algebraically closed fields, finite fields F_q (q an odd
prime power), q-adic rationals for odd q, the 2-adic rationals, the reals,
and the rationals with a finite prime support set (2 always included).

The only products the differential rules ever need are multiplication by a
power of rho inside pi_**(HZ/2); rho_times implements that as an F2-linear
combination of basis units, with all field relations applied.
"""
from __future__ import annotations

from dataclasses import dataclass

from .numthy import OddPrimePower


@dataclass(frozen=True)
class FieldId:
    kind: str  # "c" | "fq" | "qq" | "q2" | "r" | "q"
    q: int | None = None
    support: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("c", "fq", "qq", "q2", "r", "q"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "fq":
            OddPrimePower(self.q)  # validates
        elif self.kind == "qq":
            opp = OddPrimePower(self.q)
            # completions are taken at primes, not prime powers
            p = self.q
            for d in range(3, p, 2):
                if p % d == 0:
                    raise ValueError(f"Q_q requires an odd prime, got {p}")
            del opp
        elif self.kind == "q":
            if not self.support:
                raise ValueError("Q needs a nonempty prime support set")
            sup = tuple(sorted(set(self.support)))
            if 2 not in sup:
                raise ValueError("the support set over Q must contain 2")
            object.__setattr__(self, "support", sup)
        elif self.support is not None or (self.q is not None and self.kind in ("c", "r", "q2")):
            raise ValueError("q/support only make sense for fq, qq, q")

    @property
    def residue(self) -> int:
        assert self.kind in ("fq", "qq")
        return self.q % 4

    @property
    def x_symbol(self) -> str:
        """The Milnor unit class of F_q / Q_q: u for q = 1 (4), rho otherwise."""
        return "u" if self.residue == 1 else "rho"

    def odd_support(self):
        return tuple(p for p in self.support if p != 2)

    def text(self) -> str:
        return {
            "c": "Fbar",
            "fq": f"F{self.q}",
            "qq": f"Q{self.q}",
            "q2": "Q2",
            "r": "R",
            "q": "Q(" + ",".join(map(str, self.support or ())) + ")",
        }[self.kind]

    def __repr__(self):
        return self.text()


ALG_CLOSED = FieldId("c")
REALS = FieldId("r")
Q2 = FieldId("q2")


def Fq(q: int) -> FieldId:
    return FieldId("fq", q=q)


def Qq(q: int) -> FieldId:
    return FieldId("qq", q=q)


def Q(support) -> FieldId:
    return FieldId("q", support=tuple(support))


def parse_field(name: str, q: int | None = None, support=None) -> FieldId:
    key = name.lower()
    if key in ("c", "fbar", "closed"):
        return ALG_CLOSED
    if key == "fq":
        if q is None:
            raise ValueError("--q is required for finite fields")
        return Fq(q)
    if key == "qq":
        if q is None:
            raise ValueError("--q is required for q-adic fields")
        return Qq(q)
    if key == "q2":
        return Q2
    if key == "r":
        return REALS
    if key == "q":
        return Q(support or (2, 3, 5, 7))
    raise ValueError(f"unknown field {name!r}")


def _units(*pairs) -> tuple:
    return tuple(sorted((s, e) for s, e in pairs if e))


def mod2_unit_basis(field: FieldId):
    """The unit-symbol part of a pi_**(HZ/2) basis (tau powers excluded).

    For R and Q the rho-power part is infinite; callers bound the exponent
    by the stem they are filling, so this returns a callable check instead
    for those fields.  Returned as a predicate: units-tuple -> bool.
    """
    kind = field.kind

    def pred(units):
        if kind == "c":
            return units == ()
        if kind == "fq":
            return units in ((), ((field.x_symbol, 1),))
        if kind == "qq":
            x = field.x_symbol
            return units in ((), ((x, 1),), (("pi", 1),), _units((x, 1), ("pi", 1)))
        if kind == "q2":
            return units in ((), (("u", 1),), (("pi", 1),), (("rho", 1),), (("rho", 2),))
        if kind == "r":
            return all(s == "rho" for s, _ in units) and len(units) <= 1
        if kind == "q":
            if units == ():
                return True
            if len(units) != 1:
                return False
            (sym, exp) = units[0]
            if sym == "rho":
                return True
            if exp != 1:
                return False
            if sym == "[2]":
                return True
            for p in field.odd_support():
                if sym in (f"[{p}]", f"a_{p}"):
                    return True
            return False
        raise AssertionError(kind)

    return pred


def rho_times(field: FieldId, units: tuple):
    """units * rho in pi_**(HZ/2) as an F2 list of basis unit-tuples."""
    kind = field.kind
    if kind in ("c",):
        return []
    if kind == "fq":
        if field.residue == 1:
            return []
        return [(("rho", 1),)] if units == () else []
    if kind == "qq":
        if field.residue == 1:
            return []
        # Z/2[tau, pi, rho]/(rho^2, rho pi + pi^2): basis 1, rho, pi, pi rho
        if units == ():
            return [(("rho", 1),)]
        if units == (("pi", 1),):
            return [_units(("pi", 1), ("rho", 1))]
        return []
    if kind == "q2":
        # Z/2[tau,pi,u,rho]/(rho^3, u^2, pi^2, rho u, rho pi, rho^2 + u pi)
        if units == ():
            return [(("rho", 1),)]
        if units == (("rho", 1),):
            return [(("rho", 2),)]
        return []
    if kind == "r":
        e = units[0][1] if units else 0
        return [(("rho", e + 1),)]
    if kind == "q":
        # the symbol a_p is normalized to restrict to rho^2 at the dyadic
        # place and to zero over the reals (Hilbert reciprocity fixes the
        # second nonzero component; this choice keeps the reductions of the
        # integral [p]-block Bockstein-closed)
        if units == ():
            return [(("rho", 1),)]
        (sym, exp) = units[0]
        if sym == "rho":
            return [(("rho", exp + 1),)]
        if sym == "[2]":
            return []
        if sym.startswith("["):
            p = int(sym[1:-1])
            return [((f"a_{p}", 1),)] if p % 4 == 3 else []
        if sym.startswith("a_"):
            return []
        return []
    raise AssertionError(kind)


def rho_power_times(field: FieldId, units: tuple, e: int):
    """units * rho^e as an F2 list of basis unit-tuples (duplicates cancel)."""
    current = {units: 1}
    for _ in range(e):
        nxt = {}
        for u in current:
            for v in rho_times(field, u):
                nxt[v] = nxt.get(v, 0) ^ 1
        current = {u: 1 for u, c in nxt.items() if c}
        if not current:
            return []
    return sorted(current)
