import numpy as np
import pytest

import oracles
from loopforge.errors import InversesUndefined, NoIdentity, NotBol, NotLatinSquare, NotSubloop, ParseError
from loopforge.loop import (CayleyLoop, aip_counterexample, canonical_form, center, cyclic_loop,
                            direct_product, element_order, factor_loop, has_aip, is_bol, is_bruck,
                            is_normal_subloop, left_translation, loads, loops_isomorphic, power,
                            read_loop, relabel, right_translation, subloop_generated, validate_loop,
                            write_loop)

C3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_validate_cyclic_group():
    X = validate_loop(C3)
    assert X.n == 3 and X.associative


def test_validate_rejects_repeated_row_entry():
    with pytest.raises(NotLatinSquare) as exc:
        validate_loop([[0, 1, 1], [1, 2, 0], [2, 0, 1]])
    assert exc.value.kind == "row"


def test_validate_rejects_missing_identity():
    with pytest.raises(NoIdentity):
        validate_loop([[1, 0], [0, 1]])


def test_every_reduced_latin_square_of_order_5_is_valid():
    squares = list(oracles.reduced_latin_squares(5))
    assert len(squares) == 56
    for T in squares:
        assert validate_loop(T).n == 5


def test_loop_text_roundtrip(tmp_path, bruck8):
    path = tmp_path / "x.loop"
    write_loop(bruck8, path)
    assert read_loop(path) == bruck8
    assert path.read_bytes() == bruck8.dumps().encode("ascii")


def test_loads_skips_comments_and_rejects_short_files():
    assert loads("# c3\n3\n0 1 2\n1 2 0\n# mid\n2 0 1\n") == validate_loop(C3)
    with pytest.raises(ParseError):
        loads("3\n0 1 2\n1 2 0\n")


def test_right_translation_of_c3():
    X = validate_loop(C3)
    assert right_translation(X, 1).image == (1, 2, 0)
    assert right_translation(X, 0).is_identity()
    assert left_translation(X, 0).is_identity()


def test_translations_fixed_point_free_on_bol8(bol8):
    for X in bol8:
        for x in range(1, X.n):
            assert right_translation(X, x).fixed_points() == []
            assert left_translation(X, x).fixed_points() == []


def test_groups_are_bol_and_s3_lacks_aip(s3_loop):
    assert is_bol(s3_loop) and s3_loop.associative
    a, b = aip_counterexample(s3_loop)
    inv = [row.index(0) for row in s3_loop.table.tolist()]
    T = s3_loop.table
    assert inv[T[a, b]] != T[inv[a], inv[b]]
    assert not has_aip(s3_loop) and not is_bruck(s3_loop)


def test_bol_check_matches_naive(loops_to_6, bol8):
    for X in loops_to_6[:40] + bol8:
        assert is_bol(X) == oracles.is_bol_naive(X.table.tolist())


def test_no_nonassociative_bol_below_order_8(loops_to_6):
    assert not any(is_bol(X) and not X.associative for X in loops_to_6)


def test_inverses_undefined_raised():
    # a loop of order 5 in which 1 has different left and right inverses
    for T in oracles.reduced_latin_squares(5):
        X = validate_loop(T)
        right = [row.index(0) for row in T]
        left = [[T[y][x] for y in range(5)].index(0) for x in range(5)]
        if right != left:
            with pytest.raises(InversesUndefined):
                has_aip(X)
            return
    pytest.fail("no loop without two-sided inverses found")


def test_element_orders():
    C4 = cyclic_loop(4)
    assert element_order(C4, 1) == 4 and element_order(C4, 0) == 1
    assert power(C4, 1, -1) == 3 and power(C4, 3, 6) == 2


def test_bruck8_element_orders_from_closure(bruck8):
    T = bruck8.table.tolist()
    for x in range(8):
        assert element_order(bruck8, x) == len(oracles.cyclic_closure(T, x))
        assert element_order(bruck8, x) in (1, 2, 4)
        assert subloop_generated(bruck8, [x]).members == tuple(oracles.cyclic_closure(T, x))


def test_element_order_requires_bol():
    for T in oracles.reduced_latin_squares(5):
        X = validate_loop(T)
        if not is_bol(X):
            with pytest.raises(NotBol):
                element_order(X, 1)
            return


def test_subloop_generated_small_cases():
    C6 = cyclic_loop(6)
    assert subloop_generated(C6, [2]).members == (0, 2, 4)
    assert subloop_generated(C6, []).members == (0,)


def test_normal_subloops(bol8):
    assert is_normal_subloop(cyclic_loop(6), [0, 3])
    X = bol8[0]
    assert is_normal_subloop(X, [0]) and is_normal_subloop(X, range(X.n))
    with pytest.raises(NotSubloop):
        is_normal_subloop(cyclic_loop(6), [0, 1])
    # some order-8 Bol loop has a non-normal subloop of order 2
    found = False
    for Y in bol8:
        for x in range(1, 8):
            if element_order(Y, x) == 2 and not is_normal_subloop(Y, [0, x]):
                found = True
    assert found


def test_factor_loop():
    Q, h = factor_loop(cyclic_loop(6), [0, 3])
    assert loops_isomorphic(Q, cyclic_loop(3)) is not None
    assert h.is_homomorphism() and h.kernel().members == (0, 3)
    X = cyclic_loop(5)
    assert loops_isomorphic(factor_loop(X, [0])[0], X) is not None


def test_center(s3_loop, bol8):
    assert center(direct_product(cyclic_loop(2), cyclic_loop(4))).order == 8
    assert center(s3_loop).members == (0,)
    for X in bol8:
        Z = center(X)
        assert is_normal_subloop(X, Z)
        Q, _ = factor_loop(X, Z)
        assert Q.n * Z.order == 8


def test_isomorphism_basics():
    C4 = cyclic_loop(4)
    V4 = direct_product(cyclic_loop(2), cyclic_loop(2))
    assert loops_isomorphic(C4, V4) is None
    h = loops_isomorphic(C4, C4)
    assert h is not None and h.is_homomorphism()


def test_order_5_classes_pairwise_distinct(oracle_values):
    reps = oracles.loop_classes_naive(5)
    assert len(reps) == oracle_values["loop_classes"]["5"]
    Xs = [validate_loop(T) for T in reps]
    for i in range(len(Xs)):
        for j in range(len(Xs)):
            assert (loops_isomorphic(Xs[i], Xs[j]) is not None) == (i == j)


def test_canonical_form_is_relabelling_invariant(bol8):
    rng = np.random.default_rng(7)
    for X in bol8:
        perm = [0] + list(rng.permutation(np.arange(1, X.n)))
        Y = relabel(X, perm)
        assert canonical_form(Y) == canonical_form(X)
        assert loops_isomorphic(X, Y) is not None


def test_canonical_form_separates_classes(bol8):
    keys = {canonical_form(X).key for X in bol8}
    assert len(keys) == len(bol8)


def test_cayley_loop_is_read_only():
    X = CayleyLoop(C3)
    with pytest.raises(ValueError):
        X.table[0, 0] = 1
