"""Slice decompositions of kq and L, slice coefficients, and psi^3 - 1.

A slice cell is recorded by its suspension stem, its weight (equal to the
slice index), its modulus exponent (1, a_q(c) or infinity), and the cell
monomial.  The weight of every cell in the c-th slice is c, as forced by
the polynomial form of the slice ring; the engine follows that convention
everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coefficients import coeff_classes
from .fields import FieldId
from .groups import CyclicSummand, Generator, Monomial, TriDegree
from .numthy import NU_INFINITY, a_q, nu2, s_q


@dataclass(frozen=True)
class SliceSummand:
    stem: int
    weight: int
    modulus: object  # exponent n >= 1, or NU_INFINITY for HZ
    cell: Monomial

    def text(self) -> str:
        mod = "Z" if self.modulus is NU_INFINITY else f"Z/{1 << self.modulus}"
        return f"Sigma^({self.stem},{self.weight}) H{mod}"


@lru_cache(maxsize=None)
def slices_kq(c: int):
    """Cells of the c-th slice of kq; negative slices are empty."""
    if c < 0:
        return ()
    out = []
    for e in range(0, c + 1, 2):
        a = c - e
        cell = Monomial(h1=a, v1=e)
        out.append(SliceSummand(a + 2 * e, c, NU_INFINITY if a == 0 else 1, cell))
    return tuple(out)


@lru_cache(maxsize=None)
def slices_L(c: int):
    """Cells of the c-th slice of L; negative slices are empty."""
    if c < 0:
        return ()
    if c == 0:
        unit = Monomial()
        iota = Monomial(iota=1)
        return (SliceSummand(-1, 0, NU_INFINITY, iota),
                SliceSummand(0, 0, NU_INFINITY, unit))
    out = []
    for cell in slices_kq(c):
        if cell.modulus is NU_INFINITY:
            mono = Monomial(iota=1, v1=cell.cell.v1)
            out.append(SliceSummand(cell.stem - 1, c, a_q(c), mono))
        else:
            out.append(SliceSummand(cell.stem, c, 1, cell.cell))
            mono = Monomial(iota=1, h1=cell.cell.h1, v1=cell.cell.v1)
            out.append(SliceSummand(cell.stem - 1, c, 1, mono))
    return tuple(sorted(out, key=lambda sl: (sl.stem, sl.cell.sort_key())))


def e1_kq_basis(field: FieldId, s: int, f: int, w: int):
    """E1 classes of kq at one tridegree, as named cyclic summands."""
    if (s + f) % 2 or s + f < 0 or f < 0:
        return []
    c = (s + f) // 2
    deg = TriDegree(s, f, w)
    out = []
    for cell in slices_kq(c):
        for cs in coeff_classes(field, cell.modulus, s - cell.stem, w - c):
            coeff = cs.gen.lead
            mono = Monomial(coeff2=coeff.coeff2, h1=cell.cell.h1, v1=cell.cell.v1,
                            tau=coeff.tau, units=coeff.units)
            assert mono.degree() == deg, (mono, deg)
            out.append(CyclicSummand(cs.order, Generator.of(mono), deg))
    out.sort(key=lambda cs: cs.gen.sort_key())
    return out


def psi3_entries(field: FieldId, basis):
    """Diagonal of psi^3 - 1 on an E1(kq) basis at one tridegree.

    The map multiplies the integral cell of the slice in weight 2k by
    2^(nu2(k)+3) (2-locally exact), is zero on the weight-0 slice, and is
    zero on every mod-2 cell.
    """
    diag = []
    for cs in basis:
        mono = cs.gen.lead
        if mono.h1 == 0:
            c = mono.slice_index
            diag.append(0 if c == 0 else 1 << a_q(c))
        else:
            diag.append(0)
    return diag


@dataclass(frozen=True)
class KCFamily:
    """Kernel or cokernel family of psi^3 - 1 on integral slice torsion."""

    field: FieldId
    k: int
    kind: str  # "K" or "C"
    underline: bool
    summands: tuple

    def summand(self, i: int):
        for cs in self.summands:
            if cs.gen.lead.tau == i:
                return cs
        return None


def _family(field, k, kind, underline, summands):
    return KCFamily(field, k, kind, underline, tuple(summands))


def _ker_coker_cyclic(e: int, a: int, units, tau, v1):
    """Kernel and cokernel summands of *2^a on Z/2^e{units tau^i v1^..}."""
    m = min(e, a)
    kmono = Monomial(coeff2=max(e - a, 0), v1=v1, tau=tau, units=units)
    cmono = Monomial(v1=v1, tau=tau, units=units)
    ker = CyclicSummand(1 << m, Generator.of(kmono), kmono.degree())
    cok = CyclicSummand(1 << m, Generator.of(cmono), cmono.degree())
    return ker, cok


def kc_families(field: FieldId, k: int, i_max: int = 16):
    """The kernel/cokernel families K(k), C(k) of the slice-2k integral cell.

    Over the 2-adic rationals the dict also carries the underlined variants
    (stem -1 classes); elsewhere only the plain pair is returned.  Summands
    are indexed by the tau exponent, truncated at i_max.
    """
    if field.kind not in ("fq", "qq", "q2"):
        raise ValueError(f"kc_families is defined over F_q, Q_q and Q_2, not {field}")
    a = NU_INFINITY if k == 0 else nu2(k) + 3
    out = {}
    if field.kind in ("fq", "qq"):
        x = field.x_symbol
        units_list = [((x, 1),)]
        if field.kind == "qq":
            units_list.append(tuple(sorted(((x, 1), ("pi", 1)))))
        kers, coks = [], []
        for units in units_list:
            for i in range(i_max + 1):
                e = s_q(field.q, i)
                ker, cok = _ker_coker_cyclic(e, e if a is NU_INFINITY else a,
                                             units, i, 2 * k)
                kers.append(ker)
                coks.append(cok)
        out["K"] = _family(field, k, "K", False, kers)
        out["C"] = _family(field, k, "C", False, coks)
        return out
    # Q_2: rho^2 families (plain) and stem -1 families (underlined)
    kers, coks = [], []
    for i in range(i_max + 1):
        e = s_q(3, i)
        ker, cok = _ker_coker_cyclic(e, e if a is NU_INFINITY else a,
                                     (("rho", 2),), i, 2 * k)
        kers.append(ker)
        coks.append(cok)
    out["K"] = _family(field, k, "K", False, kers)
    out["C"] = _family(field, k, "C", False, coks)
    ukers, ucoks = [], []
    for i in range(i_max + 1):
        z = "pi" if i % 2 else "rho"
        y = "u" if i % 2 else "pi"
        e = s_q(3, i)
        ker, cok = _ker_coker_cyclic(e, e if a is NU_INFINITY else a,
                                     ((z, 1),), i, 2 * k)
        ukers.append(ker)
        ucoks.append(cok)
        # the free y tower contributes only to the cokernel
        if a is NU_INFINITY:
            ymono = Monomial(v1=2 * k, tau=i, units=((y, 1),))
            ucoks.append(CyclicSummand(0, Generator.of(ymono), ymono.degree()))
        else:
            ymono = Monomial(v1=2 * k, tau=i, units=((y, 1),))
            ucoks.append(CyclicSummand(1 << a, Generator.of(ymono), ymono.degree()))
    umono = Monomial(v1=2 * k, units=(("u", 1),))
    if a is NU_INFINITY:
        ucoks.append(CyclicSummand(0, Generator.of(umono), umono.degree()))
    else:
        ucoks.append(CyclicSummand(1 << a, Generator.of(umono), umono.degree()))
    out["K_"] = _family(field, k, "K", True, ukers)
    out["C_"] = _family(field, k, "C", True, ucoks)
    return out
