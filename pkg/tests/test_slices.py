from esss.fields import ALG_CLOSED, Q2, Fq, Qq
from esss.groups import TriDegree
from esss.numthy import NU_INFINITY, nu2, s_q, vmin
from esss.slices import e1_kq_basis, kc_families, psi3_entries, slices_L, slices_kq


def cells(summands):
    return [(sl.stem, sl.weight,
             "Z" if sl.modulus is NU_INFINITY else 1 << sl.modulus)
            for sl in summands]


def test_slices_kq():
    assert slices_kq(-1) == ()
    assert cells(slices_kq(0)) == [(0, 0, "Z")]
    assert cells(slices_kq(2)) == [(2, 2, 2), (4, 2, "Z")]
    assert cells(slices_kq(3)) == [(3, 3, 2), (5, 3, 2)]


def test_slices_kq_weight_equals_slice_index():
    for c in range(0, 33):
        for sl in slices_kq(c):
            assert sl.weight == c
            assert sl.cell.slice_index == c


def test_slices_L():
    assert slices_L(-2) == ()
    assert cells(slices_L(0)) == [(-1, 0, "Z"), (0, 0, "Z")]
    assert cells(slices_L(1)) == [(0, 1, 2), (1, 1, 2)]
    assert cells(slices_L(2)) == [(1, 2, 2), (2, 2, 2), (3, 2, 8)]
    # the displayed stem list: c+i for -1 <= i <= c-2, plus a top cell
    for c in range(1, 20):
        stems = sorted(sl.stem for sl in slices_L(c))
        assert stems == list(range(c - 1, 2 * c - 1)) + [2 * c - 1]


def test_e1_kq_spot_values():
    assert [cs.text() for cs in e1_kq_basis(ALG_CLOSED, 1, 1, 1)] == ["Z/2{h1}"]
    assert [cs.text() for cs in e1_kq_basis(ALG_CLOSED, 4, 0, 2)] == ["Z{v1^2}"]
    assert [cs.text() for cs in e1_kq_basis(Fq(3), 3, 1, -2)] == ["Z/16{rho v1^2 tau^3}"]
    assert e1_kq_basis(ALG_CLOSED, 1, 2, 1) == []  # odd s+f
    assert e1_kq_basis(ALG_CLOSED, 0, -2, 0) == []


def test_psi3_entries():
    basis = e1_kq_basis(Fq(3), 4, 0, 2)
    assert psi3_entries(Fq(3), basis) == [8]
    basis = e1_kq_basis(Fq(3), 8, 0, 4)
    assert psi3_entries(Fq(3), basis) == [16]
    basis = e1_kq_basis(Fq(3), 3, 3, 1)  # mod-2 cell classes
    assert psi3_entries(Fq(3), basis) == [0] * len(basis)
    basis = e1_kq_basis(Fq(3), 0, 0, 0)  # weight-0 slice
    assert psi3_entries(Fq(3), basis) == [0]


def test_kc_families_f3():
    fam = kc_families(Fq(3), 1)
    ker = fam["K"].summand(3)
    cok = fam["C"].summand(3)
    # s_3(3) = 4 > nu2(1)+3: kernel generated by twice the class
    assert ker.text() == "Z/8{2 rho v1^2 tau^3}"
    assert cok.order == 8  # exact cokernel of *8 on Z/16
    assert cok.gen.text() == "rho v1^2 tau^3"


def test_kc_families_f5():
    fam = kc_families(Fq(5), 1)
    assert fam["K"].summand(0).text() == "Z/4{u v1^2}"
    assert fam["C"].summand(0).text() == "Z/4{u v1^2}"


def test_kc_families_k0_full():
    fam = kc_families(Fq(5), 0)
    for i in range(8):
        assert fam["K"].summand(i).order == 1 << s_q(5, i)
        assert fam["C"].summand(i).order == 1 << s_q(5, i)


def test_kc_order_bookkeeping():
    # log ker + log coker = 2 min(s_q(i), nu2(k)+3) on every summand
    for q in (3, 5, 7, 9):
        for k in (1, 2, 3, 4):
            fam = kc_families(Fq(q), k)
            for i in range(12):
                lk = fam["K"].summand(i).order.bit_length() - 1
                lc = fam["C"].summand(i).order.bit_length() - 1
                assert lk + lc == 2 * vmin(s_q(q, i), nu2(k) + 3)


def test_kc_families_q2_underlined():
    fam = kc_families(Q2, 1)
    assert set(fam) == {"K", "C", "K_", "C_"}
    # underlined cokernel carries the free-part reductions of order 8
    texts = [cs.text() for cs in fam["C_"].summands]
    assert "Z/8{u v1^2}" in texts
    assert "Z/8{pi v1^2}" in texts  # y_0 = pi
    assert "Z/8{u v1^2 tau}" in texts  # y_1 = u
    assert fam["K"].summand(3).text() == "Z/8{2 rho^2 v1^2 tau^3}"


def test_e1_window_parity_guard():
    # degrees with odd s+f carry no classes for either construction input
    for s in range(-2, 6):
        for f in range(0, 6):
            if (s + f) % 2:
                assert e1_kq_basis(Qq(3), s, f, 0) == []
