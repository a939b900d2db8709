import pytest

import oracles
from loopforge.errors import CapExceeded, NotNormal, ParseError
from loopforge.folder import envelope
from loopforge.group import (FiniteGroup, all_normal_subgroups, core_in, cyclic_group, derived_series,
                             direct_product, enumerate_group, group_solvable, normal_closure,
                             o2_group, o_odd_group, quotient_group, subgroup_generated)
from loopforge.library import odd_groups
from loopforge.loop import cyclic_loop, direct_product as loop_product, right_translation
from loopforge.perm import Perm, bsgs_build, bsgs_contains, bsgs_order, point_stabilizer


def _table(G):
    return G.mul.tolist()


def test_perm_composition_is_left_to_right():
    p = Perm((1, 2, 0))
    q = Perm((1, 0, 2))
    assert (p * q).image == tuple(q.image[i] for i in p.image)
    assert (p * ~p).is_identity() and p.order() == 3


def test_perm_text_roundtrip():
    p = Perm((2, 0, 1, 3))
    assert Perm.loads(p.dumps()) == p
    with pytest.raises(ParseError):
        Perm.loads("q: 0 1")


def test_bsgs_small_orders():
    assert bsgs_order(bsgs_build([Perm((1, 2, 0))])) == 3
    assert bsgs_order(bsgs_build([], degree=3)) == 1


def test_bsgs_matches_bfs_on_klein_four():
    V = loop_product(cyclic_loop(2), cyclic_loop(2))
    gens = [right_translation(V, x) for x in range(4)]
    g = bsgs_build(gens)
    assert bsgs_order(g) == 4 == len(oracles.bfs_closure([p.image for p in gens], 4))


def test_bsgs_membership_against_closure():
    gens = [Perm.from_cycles(5, (0, 1, 2)), Perm.from_cycles(5, (2, 3, 4))]
    g = bsgs_build(gens)
    closure = oracles.bfs_closure([p.image for p in gens], 5)
    assert bsgs_order(g) == len(closure) == 60
    assert bsgs_contains(g, Perm.from_cycles(5, (0, 1, 2, 3, 4)))
    assert not bsgs_contains(g, Perm.from_cycles(5, (0, 1)))


def test_enumerate_group_and_cap():
    g = bsgs_build([Perm((1, 2, 0))])
    G = enumerate_group(g)
    assert G.m == 3
    assert enumerate_group(bsgs_build([], degree=2)).m == 1
    s5 = bsgs_build([Perm.from_cycles(5, (0, 1)), Perm.from_cycles(5, (0, 1, 2, 3, 4))])
    with pytest.raises(CapExceeded):
        enumerate_group(s5, cap=100)


def test_envelope_group_order_matches_bfs(bol8, oracle_values):
    orders = []
    for X in bol8:
        G = envelope(X).group
        T = X.table.tolist()
        assert G.m == len(oracles.bfs_closure(oracles.right_translations(T), X.n))
        orders.append(G.m)
    assert sorted(orders) == oracle_values["bol8_envelope_orders"]


def test_point_stabilizer():
    s3 = bsgs_build([Perm.from_cycles(3, (0, 1)), Perm.from_cycles(3, (0, 1, 2))])
    assert bsgs_order(point_stabilizer(s3, 0)) == 2
    c5 = bsgs_build([Perm.from_cycles(5, (0, 1, 2, 3, 4))])
    assert bsgs_order(point_stabilizer(c5, 3)) == 1


def test_point_stabilizer_index_in_bruck_envelope(bruck8):
    gens = [right_translation(bruck8, x) for x in range(8)]
    g = bsgs_build(gens)
    assert bsgs_order(g) // bsgs_order(point_stabilizer(g, 0)) == 8


def test_core(s3_group):
    G = s3_group
    assert core_in(G, range(G.m)) == frozenset(range(G.m))
    assert core_in(G, [0]) == frozenset({0})
    t = next(x for x in range(G.m) if G.mul[x, x] == 0 and x != 0)
    H = subgroup_generated(G, [t])
    assert core_in(G, H) == frozenset({0}) == oracles.core_naive(_table(G), H)


def test_o2_and_odd_part(s3_group):
    C6 = cyclic_group(6)
    assert o2_group(C6) == frozenset({0, 3})
    assert o_odd_group(C6) == frozenset({0, 2, 4})
    assert o2_group(s3_group) == frozenset({0})
    assert len(o_odd_group(s3_group)) == 3


def test_o2_of_bruck_envelope_is_everything(bruck8):
    G = envelope(bruck8).group
    assert o2_group(G) == frozenset(range(G.m)) == oracles.o2_naive(_table(G))


def test_solvability(s3_group):
    assert group_solvable(direct_product(cyclic_group(2), cyclic_group(4)))
    assert group_solvable(s3_group)
    assert derived_series(s3_group)[-1] == frozenset({0})
    for og in odd_groups(81):
        assert group_solvable(og.group)


def test_closure_and_quotients(s3_group):
    G = s3_group
    r = next(x for x in range(G.m) if G.mul[G.mul[x, x], x] == 0 and x != 0)
    assert len(normal_closure(G, [r])) == 3
    Q, proj = quotient_group(cyclic_group(6), [0, 2, 4])
    assert Q.m == 2 and proj[3] == 1
    t = next(x for x in range(G.m) if G.mul[x, x] == 0 and x != 0)
    with pytest.raises(NotNormal):
        quotient_group(G, [0, t])


def test_quotient_by_center_matches_coset_table(bol8):
    from loopforge.group import center
    G = envelope(bol8[0]).group
    Z = center(G)
    Q, proj = quotient_group(G, Z)
    M = _table(G)
    cosets = {}
    for g in range(G.m):
        cosets.setdefault(frozenset(M[z][g] for z in Z), []).append(g)
    assert Q.m == len(cosets)
    for a in range(G.m):
        for b in range(G.m):
            assert proj[M[a][b]] == Q.mul[proj[a], proj[b]]


def test_normal_subgroups_match_naive_scan(s3_group):
    for G in (s3_group, cyclic_group(12), envelope(cyclic_loop(4)).group):
        assert set(all_normal_subgroups(G)) == oracles.normal_subgroups_naive(_table(G))


def test_finite_group_validation():
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 1]])
    G = FiniteGroup.from_json(cyclic_group(4).to_json())
    assert G.m == 4
