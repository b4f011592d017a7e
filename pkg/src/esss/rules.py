"""Generator-level first-differential rules for the slice spectral sequence.

Every class on the first page lives on a slice cell h1^a v1^(2k) carrying a
coefficient class tau^j * mu.  The differential into the next slice has at
most three components, uniform across the supported bases:

  * a tau-shift component into the h1^(a+3) v1^(2k-2) cell, firing when k
    is odd;
  * a rho^2 component into the h1^(a+1) v1^(2k) cell, firing when j = 2, 3
    mod 4 (k even) or j = 1, 2 mod 4 (k odd), only over bases where rho^2
    survives;
  * a rho^4 component into the h1^(a-1) v1^(2k+2) cell, firing when j = 3
    mod 4, only over bases with rho^4; with a = 1 it lands on 2-torsion of
    the integral cell.

The last two components multiply the coefficient word by the stated rho
power, so every relation of the base field is applied on the way; over
finite fields and the odd q-adics they vanish identically and only the
tau-shift family remains.  The differential on the fiber spectrum L is not
a separate rule table: it is the restriction of this one to the kernel of
psi^3 - 1 plus the map induced on the cokernel (iota classes).

Higher differentials are never invented: each supported pair either ships
an empty set with a citation certificate or loads rule templates from a
user-supplied file in the line format

    d{r}: <source-template> [if <condition>] -> <coefficient> <target-template> # <provenance>
"""
from __future__ import annotations

from dataclasses import dataclass

from .coefficients import reduce_integral_units
from .fields import FieldId, rho_power_times
from .groups import Monomial

_RHO2_FIELDS = ("q2", "r", "q")
_RHO4_FIELDS = ("r", "q")


def _sq2_coefficient(j: int, k: int) -> int:
    if k % 2 == 0:
        return 1 if j % 4 in (2, 3) else 0
    return 1 if j % 4 in (1, 2) else 0


@dataclass(frozen=True)
class GeneratorRule:
    """One source pattern with the full list of its target components."""

    name: str
    description: str
    provenance: str


def d1_ruleset(field: FieldId, spectrum: str):
    """The rule components active for (field, spectrum), with citations.

    The executable content lives in d1_components; this list is the
    human-readable contract and is also used to reject unsupported pairs.
    """
    if spectrum not in ("kq", "L"):
        raise ValueError(f"unknown spectrum {spectrum!r}")
    rules = [GeneratorRule(
        "tau-shift",
        "h1^a v1^2k tau^j mu -> tau^(j+1) mu h1^(a+3) v1^(2k-2), firing for k odd",
        "seed differential on v1^2 with multiplicativity over tau and the unit classes",
    )]
    if field.kind in _RHO2_FIELDS:
        rules.append(GeneratorRule(
            "rho-square",
            "h1^a v1^2k tau^j mu -> rho^2 mu tau^(j-1) h1^(a+1) v1^2k, "
            "firing for j = 2,3 mod 4 (k even) or j = 1,2 mod 4 (k odd)",
            "seed differential on tau^2 and the weight-one operation on tau powers",
        ))
    if field.kind in _RHO4_FIELDS:
        rules.append(GeneratorRule(
            "rho-fourth",
            "h1^a v1^2k tau^j mu -> rho^4 mu tau^(j-3) h1^(a-1) v1^(2k+2), firing for j = 3 mod 4",
            "composite weight-two operation on tau powers; lands on integral 2-torsion for a = 1",
        ))
    if spectrum == "L":
        rules.append(GeneratorRule(
            "fiber-transport",
            "kernel classes inherit the rules by restriction, iota classes by the induced "
            "map on the cokernel of psi^3 - 1",
            "naturality of the slice differential for the fiber of psi^3 - 1",
        ))
    return rules


def d1_components(field: FieldId, mono: Monomial):
    """Differential components of one E1(kq) basis monomial.

    Returns a list of target Monomials (each an order-2 target except the
    rho-fourth component with a = 1, which hits integral 2-torsion); the
    matrix builder matches them against the target-degree basis.
    """
    assert mono.iota == 0 and mono.coeff2 == 0
    a, e, j = mono.h1, mono.v1, mono.tau
    k = e // 2
    integral_cell = a == 0
    units = mono.units
    if integral_cell:
        units = reduce_integral_units(field, units)
        if units is None:
            return []
    out = []
    if k % 2 == 1:
        out.append(Monomial(h1=a + 3, v1=e - 2, tau=j + 1, units=units))
    if field.kind in _RHO2_FIELDS and j >= 1 and _sq2_coefficient(j, k):
        for u2 in rho_power_times(field, units, 2):
            out.append(Monomial(h1=a + 1, v1=e, tau=j - 1, units=u2))
    if field.kind in _RHO4_FIELDS and j >= 3 and j % 4 == 3 and a >= 1:
        for u4 in rho_power_times(field, units, 4):
            out.append(Monomial(h1=a - 1, v1=e + 2, tau=j - 3, units=u4))
    return out


def d1_matrix(field: FieldId, src_basis, tgt_basis):
    """The first differential as an integer matrix between two tridegrees."""
    index = {}
    for t, cs in enumerate(tgt_basis):
        index[cs.gen.lead] = t
    M = [[0] * len(src_basis) for _ in range(len(tgt_basis))]
    for jcol, cs in enumerate(src_basis):
        touched = set()
        for target in d1_components(field, cs.gen.lead):
            t = index.get(target)
            if t is None:
                # rho-fourth components name integral torsion without its
                # 2-power prefix; match on the underlying word
                t = index.get(target.with_coeff2(0))
            if t is None:
                continue
            tgt = tgt_basis[t]
            if tgt.order == 2:
                M[t][jcol] ^= 1
            else:
                # landing on 2-torsion of a larger cyclic group
                M[t][jcol] += tgt.order >> 1
            touched.add(t)
        for t in touched:
            if tgt_basis[t].order:
                M[t][jcol] %= tgt_basis[t].order
    return M


@dataclass(frozen=True)
class HigherRule:
    page: int
    source: Monomial
    target: Monomial
    coefficient: int
    provenance: str


@dataclass(frozen=True)
class HigherRuleset:
    """Either a certified-empty set or file-loaded templates."""

    field: FieldId
    spectrum: str
    rules: tuple
    certificate: str | None  # citation when the set is certified empty
    loaded_from: str | None = None

    @property
    def certified_empty(self) -> bool:
        return self.certificate is not None and not self.rules


_COLLAPSE_CITATIONS = {
    ("c", "kq"): "collapse at the second page over algebraically closed fields",
    ("c", "L"): "collapse at the second page over algebraically closed fields",
    ("fq", "kq"): "degree-sparseness over finite fields",
    ("fq", "L"): "no room for higher differentials over finite fields",
    ("qq", "kq"): "the finite-field collapse tensored with the pi classes",
    ("qq", "L"): "the finite-field collapse tensored with the pi classes",
    ("q2", "kq"): "no room on the second page over the 2-adic rationals",
    ("q2", "L"): "comparison with the eta-inverted computation",
    ("q", "kq"): "no room for longer differentials over the rationals",
}


def higher_ruleset(field: FieldId, spectrum: str, rule_file: str | None = None):
    """Higher-differential data: certified empty, or loaded from a file.

    For (R, L) and (Q, L) the derivation is outside this engine; a rule
    file must be supplied to go past the second page.  (R, kq) is also
    treated as pluggable: the engine will certify collapse by inspection
    of degrees where it can, and otherwise stops at the second page.
    """
    key = (field.kind, spectrum)
    if rule_file is not None:
        rules = parse_rule_file(rule_file)
        return HigherRuleset(field, spectrum, tuple(rules), None, loaded_from=rule_file)
    if key in _COLLAPSE_CITATIONS:
        return HigherRuleset(field, spectrum, (), _COLLAPSE_CITATIONS[key])
    return HigherRuleset(field, spectrum, (), None)


class RuleFileError(ValueError):
    pass


def _parse_template(text: str) -> Monomial:
    coeff2 = 0
    kwargs = {"h1": 0, "v1": 0, "tau": 0, "iota": 0}
    units = []
    for token in text.split():
        if token.isdigit():
            n = int(token)
            if n & (n - 1):
                raise RuleFileError(f"coefficient {n} is not a power of 2")
            coeff2 = n.bit_length() - 1
            continue
        if token == "iota":
            kwargs["iota"] = 1
            continue
        sym, _, exp = token.partition("^")
        exp = int(exp) if exp else 1
        if sym in ("h1", "v1", "tau"):
            kwargs[sym] = exp
        else:
            units.append((sym, exp))
    return Monomial(coeff2=coeff2, units=tuple(sorted(units)), **kwargs)


def parse_rule_file(path: str):
    """Line format: d{r}: <source> [if <cond>] -> <coeff> <target> # <provenance>."""
    rules = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "#" not in line:
                raise RuleFileError(f"line {lineno}: missing provenance comment")
            body, _, provenance = line.partition("#")
            provenance = provenance.strip()
            if not provenance:
                raise RuleFileError(f"line {lineno}: empty provenance")
            head, _, rest = body.partition(":")
            head = head.strip()
            if not head.startswith("d") or not head[1:].isdigit():
                raise RuleFileError(f"line {lineno}: bad page marker {head!r}")
            page = int(head[1:])
            if page < 2:
                raise RuleFileError(f"line {lineno}: external rules start at d2")
            src, arrow, tgt = rest.partition("->")
            if not arrow:
                raise RuleFileError(f"line {lineno}: missing ->")
            src = src.strip()
            if " if " in f" {src} ":
                src, _, _cond = src.partition(" if ")
                src = src.strip()
            tgt_tokens = tgt.strip().split()
            coeff = 1
            if tgt_tokens and tgt_tokens[0].isdigit():
                coeff = int(tgt_tokens[0])
                tgt_tokens = tgt_tokens[1:]
            rules.append(HigherRule(
                page=page,
                source=_parse_template(src),
                target=_parse_template(" ".join(tgt_tokens)),
                coefficient=coeff,
                provenance=provenance,
            ))
    return rules
