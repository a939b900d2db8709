import json

import pytest

from loopforge.corpus import small_groups
from loopforge.errors import NotBruck
from loopforge.group import enumerate_group
from loopforge.loop import SubloopSet, cyclic_loop, direct_product, loop_from_group
from loopforge.perm import Perm, bsgs_build
from loopforge.structure import (central_product_check, corollary4_check, decompose, is_ar_loop,
                                 is_solvable_loop, m_loop_detect, o_2, o_odd, o_pi, o_upper2,
                                 o_upper2prime, sections, theorem1_verify, theorem2_verify)


def _a5():
    g = bsgs_build([Perm.from_cycles(5, (0, 1, 2)), Perm.from_cycles(5, (0, 1, 2, 3, 4))])
    return loop_from_group(enumerate_group(g))


def _eight_part(X):
    """Members of C3 × B with first coordinate 0, under the product indexing a·8 + b."""
    return tuple(range(8))


def test_o_pi_cyclic():
    C6 = cyclic_loop(6)
    assert o_pi(C6, {2}).members == (0, 3)
    assert o_pi(C6, {3}).members == (0, 2, 4)
    assert o_2(C6).members == (0, 3) and o_odd(C6).members == (0, 2, 4)


def test_o2_of_bruck8(bruck8):
    assert o_pi(bruck8, {2}).order == 8


def test_upper_parts():
    C6 = cyclic_loop(6)
    assert o_upper2(C6).members == (0, 2, 4)
    assert o_upper2prime(C6).members == (0, 3)
    C8 = cyclic_loop(8)
    assert o_upper2prime(C8).order == 8 and o_upper2(C8).members == (0,)


def test_upper_parts_of_c3_x_bruck8(c3_x_bruck8):
    X = c3_x_bruck8
    assert o_upper2(X).members == (0, 8, 16)
    assert o_upper2prime(X).members == _eight_part(X)


def test_theorem2_examples(bruck8):
    for X in (cyclic_loop(12), direct_product(cyclic_loop(3), cyclic_loop(9)), bruck8, cyclic_loop(8)):
        rep = theorem2_verify(X)
        assert rep.passed, rep.failures()


def test_theorem2_rejects_non_bruck(s3_loop):
    with pytest.raises(NotBruck):
        theorem2_verify(s3_loop)


def test_theorem1_c6():
    rep = theorem1_verify(cyclic_loop(6))
    assert rep.passed and rep.Z.members == (0,)


def test_theorem1_two_loop(bruck8):
    rep = theorem1_verify(bruck8)
    assert rep.passed and rep.O.members == (0,)


def test_theorem1_mixed(c3_x_bruck8):
    rep = theorem1_verify(c3_x_bruck8)
    assert rep.passed, rep.failures()
    assert rep.O2.members == _eight_part(c3_x_bruck8)
    assert rep.witnesses["solvable"]
    data = json.loads(rep.dumps())
    assert data["witnesses"]["O"] == [0, 8, 16]
    assert len(data["witnesses"]["direct_hom"]) == 24


def test_decompose(c3_x_bruck8):
    rep = decompose(c3_x_bruck8)
    assert rep.passed and rep.to_json()["witnesses"]["Z"] == [0]


def test_solvable_groups_to_12():
    for n in range(1, 13):
        for G in small_groups(n):
            assert is_solvable_loop(loop_from_group(G)) is not None


def test_series_of_c6():
    s = is_solvable_loop(cyclic_loop(6))
    assert [t.order for t in s.terms] == [1, 3, 6] and all(s.abelian)


def test_a5_is_not_solvable_but_its_proper_sections_are():
    A5 = _a5()
    assert is_solvable_loop(A5) is None
    assert all(is_solvable_loop(S) is not None for S in sections(A5, proper=True))
    assert not m_loop_detect(A5)       # not a Bruck loop


def test_m_loop_small_cases():
    assert not m_loop_detect(cyclic_loop(2))
    assert not m_loop_detect(direct_product(cyclic_loop(2), cyclic_loop(4)), full=True)


def test_ar_and_corollary4():
    for X in (cyclic_loop(2), loop_from_group(small_groups(12)[-1])):
        assert is_ar_loop(X)
        rep = corollary4_check(X)
        assert rep.passed and rep.witnesses["loop_solvable"]


def test_corollary4_on_bruck8(bruck8):
    rep = corollary4_check(bruck8)
    assert rep.passed and rep.witnesses["radical"] == [0]


def test_central_products(c3_x_bruck8):
    C6 = cyclic_loop(6)
    assert central_product_check(C6, SubloopSet(C6, [0, 3]), SubloopSet(C6, [0, 2, 4]))
    X = c3_x_bruck8
    assert central_product_check(X, SubloopSet(X, range(X.n)), SubloopSet(X, [0]))
    assert central_product_check(X, SubloopSet(X, range(8)), SubloopSet(X, [0, 8, 16]))
    assert not central_product_check(C6, SubloopSet(C6, [0, 3]), SubloopSet(C6, [0]))
