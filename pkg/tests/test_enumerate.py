import json

import pytest

import oracles
from loopforge.enumerate import (EnumerationTask, bol_tables, corpus_read, corpus_write,
                                 count_classes_naive, enumerate_glauberman, enumerate_loops)
from loopforge.errors import BoundExceeded, ManifestMismatch
from loopforge.group import subgroup_table
from loopforge.loop import is_bol, loop_from_group, loops_isomorphic


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_loop_class_counts_match_oracle(n, oracle_values):
    assert len(enumerate_loops(EnumerationTask(n, "loop"))) == oracle_values["loop_classes"][str(n)]


def test_naive_count_agrees_with_test_oracle():
    assert count_classes_naive(4) == len(oracles.loop_classes_naive(4)) == 2


def test_isomorph_rejection_modes_agree():
    for n in (4, 5):
        a = enumerate_loops(EnumerationTask(n, "loop", iso_mode="canonical"))
        b = enumerate_loops(EnumerationTask(n, "loop", iso_mode="pairwise"))
        assert [X.key for X in a] == [X.key for X in b]


def test_no_nonassociative_bol_below_8():
    for n in range(1, 8):
        assert enumerate_loops(EnumerationTask(n, "bol", nonassociative=True)) == []


def test_bol_search_matches_filtered_latin_squares():
    for n in (4, 5, 6):
        pruned = enumerate_loops(EnumerationTask(n, "bol"))
        unpruned = enumerate_loops(EnumerationTask(n, "bol", prune=False))
        assert [X.key for X in pruned] == [X.key for X in unpruned]


def test_bol_table_counts_match_filtered_squares():
    for n in (4, 5):
        brute = sum(oracles.is_bol_naive(T) for T in oracles.reduced_latin_squares(n))
        assert sum(1 for _ in bol_tables(n)) == brute == sum(1 for _ in bol_tables(n, force=False))


def test_parallel_split_is_deterministic(tmp_path):
    seq = enumerate_loops(EnumerationTask(6, "bol"))
    par = enumerate_loops(EnumerationTask(6, "bol", depth=1, workers=2))
    split = enumerate_loops(EnumerationTask(6, "bol", depth=1, workers=1))
    assert [X.key for X in seq] == [X.key for X in par] == [X.key for X in split]
    corpus_write(seq, tmp_path / "a", "bol")
    corpus_write(par, tmp_path / "b", "bol")
    assert (tmp_path / "a" / "manifest.json").read_bytes() == (tmp_path / "b" / "manifest.json").read_bytes()


def test_bound():
    with pytest.raises(BoundExceeded):
        enumerate_loops(EnumerationTask(9, "loop"))
    with pytest.raises(ValueError):
        EnumerationTask(3, "moufang")


def test_corpus_roundtrip(tmp_path):
    loops = enumerate_loops(EnumerationTask(5, "loop"))
    manifest = corpus_write(loops, tmp_path / "c5", "loop")
    assert manifest["count"] == 6 and manifest["order"] == 5
    assert len(list((tmp_path / "c5" / "5").glob("*.loop"))) == 6
    back = corpus_read(tmp_path / "c5")
    assert sorted(X.key for X in back) == sorted(X.key for X in loops)
    for rel in manifest["files"]:
        assert (tmp_path / "c5" / rel).read_text() in {X.dumps() for X in loops}


def test_empty_corpus(tmp_path):
    manifest = corpus_write([], tmp_path / "empty")
    assert manifest["count"] == 0 and corpus_read(tmp_path / "empty") == []


def test_tampered_corpus_is_rejected(tmp_path):
    corpus_write(enumerate_loops(EnumerationTask(4, "loop")), tmp_path / "c4")
    victim = next((tmp_path / "c4" / "4").glob("*.loop"))
    victim.write_text(victim.read_text() + "# edited\n")
    with pytest.raises(ManifestMismatch):
        corpus_read(tmp_path / "c4")


def test_frozen_corpora_are_intact(data_dir):
    for name, pred in (("bruck16", "bruck"), ("bolar12", "bol+ar"), ("bol8", "bol")):
        with open(data_dir / name / "manifest.json") as fh:
            manifest = json.load(fh)
        assert manifest["predicate"] == pred
        loops = corpus_read(data_dir / name)
        assert len(loops) == manifest["count"]
        assert all(is_bol(X) for X in loops)


def test_glauberman_enumeration_small():
    out = list(enumerate_glauberman(9))
    for L, t, X in out:
        assert X.associative and X.commutative
        K = sorted(i for i in range(L.m) if t.image[i] == L.inv[i])
        assert loops_isomorphic(X, loop_from_group(subgroup_table(L, K)[0])) is not None
    assert any(L.m == 3 and X.n == 1 for L, _, X in out)


def test_glauberman_enumeration_order_21():
    out = list(enumerate_glauberman(21))
    assert any(L.m == 21 and not (L.mul == L.mul.T).all() and X.n == 7 for L, _, X in out)
    with pytest.raises(BoundExceeded):
        next(enumerate_glauberman(83))
