import pytest

import oracles
from loopforge.errors import NotNormal, NotTransversal
from loopforge.folder import (LoopFolder, envelope, folder_join, folder_meet, folder_quotient,
                              folders_isomorphic, is_envelope, is_faithful, is_folder,
                              is_normal_subfolder, is_subfolder, join_meet_report, loop_of_folder,
                              nc_violation, quotient_commutes, subfolder, trivial_subfolder,
                              verify_folder, whole_subfolder)
from loopforge.group import all_subgroups, cyclic_group, subgroup_generated
from loopforge.loop import cyclic_loop, direct_product, loops_isomorphic


def _involutions(G):
    return [x for x in range(1, G.m) if G.mul[x, x] == 0]


def _three_cycles(G):
    return [x for x in range(1, G.m) if G.mul[x, x] != 0]


def test_regular_folder():
    C3 = cyclic_group(3)
    f = verify_folder(C3, [0], [0, 1, 2])
    assert loops_isomorphic(loop_of_folder(f), cyclic_loop(3)) is not None


def test_s3_folders(s3_group):
    G = s3_group
    A3 = subgroup_generated(G, _three_cycles(G))
    t1, t2, t3 = _involutions(G)
    verify_folder(G, A3, [0, t1])
    verify_folder(G, [0, t1], A3)
    # the other two transpositions are a transversal of <t1> but not of its conjugate <t2>
    with pytest.raises(NotTransversal):
        verify_folder(G, [0, t1], [0, t2, t3])
    with pytest.raises(NotTransversal):
        verify_folder(G, [0, t1], [0, t2, t3], fast=True)


def test_fast_transversal_scan_agrees_with_full_scan(s3_group):
    from itertools import combinations
    for G in (s3_group, cyclic_group(6)):
        for H in all_subgroups(G):
            size = G.m // len(H)
            for rest in combinations(range(1, G.m), size - 1):
                K = (0,) + rest
                assert is_folder(G, H, K, fast=True) == is_folder(G, H, K, fast=False)


def test_envelope_of_cyclic_loop():
    f = envelope(cyclic_loop(5))
    assert f.group.m == 5 and f.H == frozenset({0}) and f.K == tuple(range(5))


def test_envelope_of_s3(s3_loop):
    f = envelope(s3_loop)
    assert len(f.K) == 6
    assert loop_of_folder(f) == s3_loop


def test_envelope_of_bruck8(bruck8):
    f = envelope(bruck8)
    assert len(f.K) == 8 and is_faithful(f) and is_envelope(f)
    assert f.group.m == len(oracles.bfs_closure(oracles.right_translations(bruck8.table.tolist()), 8))


def test_roundtrip_small_loops(loops_to_6):
    for X in loops_to_6[::7]:
        assert loop_of_folder(envelope(X)) == X


def test_envelope_and_faithful_flags(s3_group):
    G = s3_group
    t = _involutions(G)[0]
    A3 = subgroup_generated(G, _three_cycles(G))
    f = verify_folder(G, A3, [0, t])
    assert not is_envelope(f)
    C4 = cyclic_group(4)
    g = verify_folder(C4, [0, 2], [0, 1])
    assert not is_faithful(g)


def test_subfolders_of_c6():
    f = envelope(cyclic_loop(6))
    assert is_normal_subfolder(f, whole_subfolder(f))
    assert is_normal_subfolder(f, trivial_subfolder(f))
    odd = subfolder(f, subgroup_generated(f.group, [2]))
    assert is_subfolder(f, odd) and is_normal_subfolder(f, odd)
    q, phi = folder_quotient(f, odd)
    assert loop_of_folder(q).n == 2
    assert quotient_commutes(f, odd) is not None


def test_quotient_extremes(bruck8):
    f = envelope(bruck8)
    q, _ = folder_quotient(f, whole_subfolder(f))
    assert q.group.m == 1
    q, _ = folder_quotient(f, trivial_subfolder(f))
    assert folders_isomorphic(q, f) is not None


def test_some_subfolder_is_not_normal(bol8):
    found = False
    for X in bol8:
        f = envelope(X)
        for S in all_subgroups(f.group):
            sub = subfolder(f, S)
            if len(sub.K) * len(sub.H) != len(S) or not is_subfolder(f, sub):
                continue
            if not is_normal_subfolder(f, sub):
                found = True
                break
        if found:
            break
    assert found


def test_nc_fast_path_agrees(bol8):
    f = envelope(bol8[0])
    for S in all_subgroups(f.group):
        sub = subfolder(f, S)
        if len(sub.K) * len(sub.H) == len(S) and is_subfolder(f, sub):
            assert (nc_violation(f, sub) is None) == (nc_violation(f, sub, fast=True) is None)


def test_join_meet_extremes(bruck8):
    f = envelope(bruck8)
    w, t = whole_subfolder(f), trivial_subfolder(f)
    j, m = folder_join(f, w, w), folder_meet(f, w, w)
    assert j.G == m.G == w.G
    j, m = folder_join(f, t, w), folder_meet(f, t, w)
    assert j.G == w.G and m.G == t.G


def test_join_meet_of_c2_x_c3():
    X = direct_product(cyclic_loop(2), cyclic_loop(3))
    f = envelope(X)
    orders = f.group.element_orders
    two = subfolder(f, subgroup_generated(f.group, [x for x in f.K if orders[x] == 2]))
    three = subfolder(f, subgroup_generated(f.group, [x for x in f.K if orders[x] == 3]))
    rep = join_meet_report(f, two, three)
    assert rep.join.G == f.G and rep.meet.G == frozenset({0})
    assert rep.passed, rep.parts


def test_join_requires_normal_subfolders(bol8):
    for X in bol8:
        f = envelope(X)
        for S in all_subgroups(f.group):
            sub = subfolder(f, S)
            if len(sub.K) * len(sub.H) == len(S) and is_subfolder(f, sub) and not is_normal_subfolder(f, sub):
                with pytest.raises(NotNormal):
                    folder_join(f, sub, whole_subfolder(f))
                return


def test_folder_json_roundtrip(bruck8):
    f = envelope(bruck8)
    g = LoopFolder.from_json(f.to_json())
    assert g.K == f.K and g.H == f.H and (g.group.mul == f.group.mul).all()
