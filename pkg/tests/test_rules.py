import pytest

from esss.fields import ALG_CLOSED, Q2, REALS, Fq, Q, Qq
from esss.groups import Monomial, d_shift
from esss.rules import (d1_components, d1_ruleset, higher_ruleset, parse_rule_file,
                        RuleFileError)


def texts(monos):
    return sorted(m.text() for m in monos)


def test_seed_differential():
    assert texts(d1_components(ALG_CLOSED, Monomial(v1=2))) == ["h1^3 tau"]
    assert d1_components(ALG_CLOSED, Monomial(v1=4)) == []
    assert texts(d1_components(ALG_CLOSED, Monomial(v1=6, tau=2))) == ["v1^4 h1^3 tau^3"]


def test_degree_of_components():
    shift = d_shift(1)
    for field in (ALG_CLOSED, Fq(3), Q2, REALS, Q((2, 3, 5))):
        for mono in (Monomial(v1=2), Monomial(h1=2, tau=6), Monomial(h1=1, v1=2, tau=3),
                     Monomial(h1=2, tau=7, units=(("rho", 1),) if field.kind in ("r", "q") else ())):
            for tgt in d1_components(field, mono):
                assert tgt.degree() == mono.degree() + shift


def test_reals_tau_square_rule():
    # the second seed: tau^2 on the weight-0 slice maps to rho^2 tau h1
    assert texts(d1_components(REALS, Monomial(tau=2))) == ["rho^2 h1 tau"]
    assert d1_components(REALS, Monomial(tau=4)) == []
    assert texts(d1_components(REALS, Monomial(tau=6))) == ["rho^2 h1 tau^5"]


def test_q2_printed_rules():
    # tau^(4n+2) h1 and tau^(4n+3) h1 map to rho^2 h1^2 tau^(4n+1), tau^(4n+2)
    assert texts(d1_components(Q2, Monomial(h1=1, tau=2))) == ["rho^2 h1^2 tau"]
    assert texts(d1_components(Q2, Monomial(h1=1, tau=3))) == ["rho^2 h1^2 tau^2"]
    assert d1_components(Q2, Monomial(h1=1, tau=4)) == []
    assert d1_components(Q2, Monomial(h1=1, tau=5)) == []
    # tau^i h1^2 for i = 2, 3 mod 4 maps to rho^2 h1^3 tau^(i-1)
    assert texts(d1_components(Q2, Monomial(h1=2, tau=6))) == ["rho^2 h1^3 tau^5"]
    assert texts(d1_components(Q2, Monomial(h1=2, tau=7))) == ["rho^2 h1^3 tau^6"]
    # the integral rho^2 classes of the v1^2 cell map by the tau shift alone
    for n in range(5):
        got = d1_components(Q2, Monomial(v1=2, tau=n, units=(("rho", 2),)))
        assert texts(got) == [Monomial(h1=3, tau=n + 1, units=(("rho", 2),)).text()]


def test_q2_unit_relations_kill_components():
    # u, pi, rho multiples have no rho-square component over the 2-adics
    for sym in ("u", "pi", "rho"):
        got = d1_components(Q2, Monomial(h1=1, tau=2, units=((sym, 1),)))
        assert got == []


def test_q_lifted_rules():
    field = Q((2, 3, 5))
    # [q] and a_q tau-shift families fire exactly like the closed field
    got = d1_components(field, Monomial(v1=2, tau=1, units=(("[3]", 1),)))
    assert texts(got) == ["[3] v1^0 h1^3 tau^2".replace(" v1^0", "")]
    got = d1_components(field, Monomial(v1=2, tau=1, units=(("a_5", 1),)))
    assert texts(got) == ["a_5 h1^3 tau^2"]
    # the tau^2 rule lifts from the reals
    assert texts(d1_components(field, Monomial(tau=2))) == ["rho^2 h1 tau"]
    # no exotic component survives on the [q]/a_q blocks
    assert d1_components(field, Monomial(h1=1, tau=2, units=(("[3]", 1),))) == []
    assert d1_components(field, Monomial(h1=1, tau=2, units=(("a_3", 1),))) == []
    # the integral [q]-block reduces to a_q and carries only the tau shift
    got = d1_components(field, Monomial(v1=2, tau=3, units=(("[3]", 1), ("rho", 1))))
    assert texts(got) == ["a_3 h1^3 tau^4"]


def test_reals_rho_fourth_component():
    # j = 3 mod 4 classes also map into the next slice's integral torsion
    got = d1_components(REALS, Monomial(h1=1, tau=3))
    assert texts(got) == sorted(["rho^2 h1^2 tau^2", "rho^4 v1^2"])
    got = d1_components(REALS, Monomial(h1=2, tau=3))
    assert texts(got) == sorted(["rho^2 h1^3 tau^2", "rho^4 v1^2 h1"])


def test_ruleset_presentation():
    rules = d1_ruleset(Fq(5), "kq")
    assert [r.name for r in rules] == ["tau-shift"]
    rules = d1_ruleset(REALS, "L")
    assert [r.name for r in rules] == ["tau-shift", "rho-square", "rho-fourth",
                                       "fiber-transport"]
    with pytest.raises(ValueError):
        d1_ruleset(Fq(5), "knot")


def test_higher_ruleset_certificates():
    hr = higher_ruleset(Fq(5), "L")
    assert hr.certified_empty and hr.rules == ()
    hr = higher_ruleset(Q2, "L")
    assert hr.certified_empty
    hr = higher_ruleset(REALS, "L")
    assert not hr.certified_empty and hr.certificate is None


def test_rule_file_parsing(tmp_path):
    path = tmp_path / "higher.rules"
    path.write_text(
        "# external data\n"
        "d2: iota v1^2 tau^3 -> 1 rho h1^2 tau  # worked out elsewhere\n"
        "d3: h1 tau^4 if tau = 0 mod 4 -> 2 rho^2 h1^4  # with a condition\n"
    )
    rules = parse_rule_file(str(path))
    assert len(rules) == 2
    assert rules[0].page == 2 and rules[0].source.iota == 1
    assert rules[1].coefficient == 2
    assert rules[1].provenance == "with a condition"
    bad = tmp_path / "bad.rules"
    bad.write_text("d2: x -> y\n")
    with pytest.raises(RuleFileError, match="provenance"):
        parse_rule_file(str(bad))
    bad.write_text("d1: h1 -> h1 # too early\n")
    with pytest.raises(RuleFileError, match="external rules start"):
        parse_rule_file(str(bad))
