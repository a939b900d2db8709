import numpy as np
import pytest

from loopforge.bruck import (TauAut, baer_bijection, d_of, extend_group, fixed_point_report,
                             fixed_points_loop, fixed_subfolder, glauberman_folder, glauberman_loop,
                             is_bruck_folder, is_twisted_subgroup, k_of_tau, k_radical,
                             no_inverting_lambda, odd_loop_criteria, sqrt_model, tau_construct,
                             tau_fixed_subfolder, tau_on_group, two_element_criterion,
                             two_loop_criteria)
from loopforge.errors import EvenOrder, NotInvolutory
from loopforge.folder import envelope, is_envelope, loop_of_folder, verify_folder
from loopforge.group import all_subgroups, cyclic_group, subgroup_generated
from loopforge.library import abelian_group, involutions_of, odd_groups
from loopforge.loop import (cyclic_loop, direct_product, is_bruck, loop_from_group, loops_isomorphic,
                            opposite)


def _odd(name):
    return next(g for g in odd_groups(81) if g.name == name)


def _c7c3_case():
    og = _odd("C7:C3")
    t = next(t for t in involutions_of(og) if t != tuple(range(og.group.m)))
    return og.group, TauAut(og.group, t)


def _inversion(G):
    return TauAut(G, tuple(G.inv.tolist()))


def test_twisted_subgroups(bruck8):
    G = cyclic_group(6)
    for S in all_subgroups(G):
        assert is_twisted_subgroup(G, S)
    assert is_twisted_subgroup(cyclic_group(4), range(4))
    f = envelope(bruck8)
    assert is_twisted_subgroup(f.group, f.K)


def test_tau_construct(s3_loop, bruck8):
    f = envelope(cyclic_loop(5))
    t = tau_construct(f)
    assert t.image == tuple(f.group.inv.tolist())
    assert tau_construct(envelope(s3_loop)) is None
    t = tau_construct(envelope(bruck8))
    assert t is not None and t.is_involutory() and t.is_automorphism()


def test_k_radical(s3_loop, bruck8):
    assert k_radical(envelope(bruck8)) == frozenset({0})
    assert len(k_radical(envelope(s3_loop))) > 1
    assert k_radical(envelope(cyclic_loop(1))) == frozenset({0})


def test_bruck_folder_flags(s3_loop):
    assert is_bruck_folder(envelope(direct_product(cyclic_loop(2), cyclic_loop(4))))
    assert not is_bruck_folder(envelope(s3_loop))
    L, t = _c7c3_case()
    assert is_bruck_folder(glauberman_folder(L, t))


def test_bruck_folder_matches_bruck_loop(loops_to_6, bol8):
    for X in [Y for Y in loops_to_6 if Y.bol] + bol8:
        assert is_bruck_folder(envelope(X)) == is_bruck(X)


def test_radical_lies_in_k(bol8):
    for X in bol8:
        f = envelope(X)
        assert k_radical(f) <= frozenset(f.K)


def test_extend_c3_gives_s3():
    E = extend_group(envelope(cyclic_loop(3)))
    P = E.plus
    assert P.m == 6 and not np.array_equal(P.mul, P.mul.T)


def test_extend_trivial_gives_c2():
    E = extend_group(envelope(cyclic_loop(1)))
    assert E.plus.m == 2


def test_extend_bruck8(bruck8):
    f = envelope(bruck8)
    E = extend_group(f)
    P, m = E.plus, f.group.m
    assert P.m == 2 * m
    lam = sorted(E.Lambda)
    for g in range(m):
        assert {int(P.mul[P.mul[P.inv[g], x], g]) for x in lam} == set(lam)


def test_k_of_tau():
    A = abelian_group((3, 3))
    assert k_of_tau(A, _inversion(A)) == frozenset(range(9))
    C4 = cyclic_group(4)
    assert k_of_tau(C4, tuple(range(4))) == frozenset({0, 2})
    L, t = _c7c3_case()
    assert len(k_of_tau(L, t)) == 7


def test_fixed_subfolders(bruck8):
    f = envelope(bruck8)
    same = fixed_subfolder(f, [0])
    assert same.K == f.K and same.H == f.H
    whole_h = fixed_subfolder(f, f.H)
    pts = fixed_points_loop(bruck8, f.H, f)
    assert whole_h.K == pts.members
    assert fixed_point_report(f, f.H).consistent


def _c5c5c3_case():
    """C5²:C3 with the involution giving a nonassociative Bruck loop of order 15."""
    og = _odd("C5^2:C3")
    for t in involutions_of(og):
        X = glauberman_loop(og.group, TauAut(og.group, t))
        if X.n == 15 and not X.associative:
            return og.group, TauAut(og.group, t)
    raise AssertionError("no order-15 loop from C5^2:C3")


def _c5c5c3_envelope():
    return envelope(glauberman_loop(*_c5c5c3_case()))


def test_no_lambda_inverts_odd_inner_mapping():
    f = _c5c5c3_envelope()
    orders = f.group.element_orders
    assert any(orders[h] % 2 == 1 and orders[h] > 1 for h in f.H)
    assert no_inverting_lambda(f)


def test_order_7_glauberman_loop_is_cyclic():
    L, t = _c7c3_case()
    X = glauberman_loop(L, t)
    assert loops_isomorphic(X, cyclic_loop(7)) is not None


def test_tau_fixed_subfolder(bruck8):
    odd = envelope(loop_from_group(abelian_group((3, 5))))
    assert tau_fixed_subfolder(odd).K == (0,)
    ex2 = envelope(loop_from_group(abelian_group((2, 2, 2))))
    assert len(tau_fixed_subfolder(ex2).K) == 8
    mixed = envelope(loop_from_group(abelian_group((2, 2, 3))))
    Y = loop_of_folder(tau_fixed_subfolder(mixed))
    assert Y.n == 4 and all(Y.table[x, x] == 0 for x in range(4))
    sub = tau_fixed_subfolder(envelope(bruck8))
    assert loop_of_folder(sub).n >= 2


def test_criteria_examples(bruck8):
    assert all(two_loop_criteria(envelope(cyclic_loop(8))).conditions.values())
    assert all(odd_loop_criteria(envelope(cyclic_loop(15))).conditions.values())
    rep = two_element_criterion(envelope(bruck8))
    assert all(rep.conditions.values()) and rep.consistent


def test_glauberman_small_cases():
    C3 = cyclic_group(3)
    assert loops_isomorphic(glauberman_loop(C3, _inversion(C3)), cyclic_loop(3)) is not None
    assert glauberman_loop(C3, (0, 1, 2)).n == 1
    L, t = _c7c3_case()
    X = glauberman_loop(L, t)
    assert X.n == L.m // len(t.fixed()) == 7 and is_bruck(X)


def test_glauberman_errors():
    with pytest.raises(EvenOrder):
        glauberman_folder(cyclic_group(4), (0, 3, 2, 1))
    C5 = cyclic_group(5)
    with pytest.raises(NotInvolutory):
        glauberman_folder(C5, (0, 2, 4, 1, 3))


def test_square_root_models():
    """The mirrored square-root law gives l(μ) exactly; the textbook one gives its opposite."""
    L, t = _c5c5c3_case()
    mu = glauberman_folder(L, t)
    X = loop_of_folder(mu)
    assert not X.commutative
    assert sqrt_model(L, mu.K) == X
    K = sorted(mu.K)
    pos = {k: i for i, k in enumerate(K)}
    orders = L.element_orders
    table = []
    for x in K:
        row = []
        for y in K:
            g = int(L.mul[L.mul[x, L.mul[y, y]], x])
            r = g
            for _ in range((int(orders[g]) + 1) // 2 - 1):
                r = int(L.mul[r, g])
            row.append(pos[r if orders[g] > 1 else 0])
        table.append(row)
    assert opposite(X).table.tolist() == table


def test_baer_small():
    for n, subloops in ((3, 2), (9, 3)):
        f = envelope(cyclic_loop(n))
        c = baer_bijection(f)
        assert c.passed, c.checks
        assert len(c.subloops) == subloops and len(c.subgroups) == subloops


def test_baer_glauberman_order_7():
    L, t = _c7c3_case()
    c = baer_bijection(envelope(glauberman_loop(L, t)))
    assert c.passed, c.checks


def test_baer_nonassociative_order_15():
    f = _c5c5c3_envelope()
    assert f.group.m == 75
    c = baer_bijection(f)
    assert c.passed, c.checks


def test_baer_needs_odd_order(bruck8):
    with pytest.raises(EvenOrder):
        baer_bijection(envelope(bruck8))


def test_d_of(s3_group):
    f = envelope(cyclic_loop(6))
    assert d_of(f) == f.G and is_envelope(f)
    G = s3_group
    t = next(x for x in range(1, G.m) if G.mul[x, x] == 0)
    A3 = subgroup_generated(G, [x for x in range(1, G.m) if G.mul[x, x] != 0])
    g = verify_folder(G, A3, [0, t])
    assert d_of(g) == frozenset({0, t})
    assert not is_bruck_folder(g)
    assert d_of(envelope(cyclic_loop(1))) == frozenset({0})


def test_tau_json_roundtrip(bruck8):
    f = envelope(bruck8)
    t = tau_on_group(f)
    back = TauAut.from_json(t.to_json(), f.group)
    assert back.image == t.image
    with pytest.raises(ValueError):
        TauAut.from_json(t.to_json(), cyclic_group(3))
