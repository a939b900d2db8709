"""Regenerate the frozen corpora and small fixtures under tests/data.

    python3 demos/build_corpus.py

Takes about a minute: the exhaustive Bol search runs to order 9.
"""
from pathlib import Path

from loopforge.corpus import bol_ar_corpus, bruck_corpus, exhaustive_bol, theorem1_example
from loopforge.enumerate import corpus_write
from loopforge.group import cyclic_group, semidirect_product
from loopforge.loop import cyclic_loop, has_aip, loop_from_group, write_loop

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main():
    base = exhaustive_bol()
    print("exhaustive Bol classes to order 9:", len(base))

    m = corpus_write(bruck_corpus(16, base), DATA / "bruck16", "bruck")
    print("bruck16:", m["count"], "loops")
    m = corpus_write(bol_ar_corpus(12, base), DATA / "bolar12", "bol+ar")
    print("bolar12:", m["count"], "loops")
    nab8 = [X for X in base if X.n == 8 and not X.associative]
    m = corpus_write(nab8, DATA / "bol8", "bol")
    print("nonassociative Bol, order 8:", m["count"])

    s3 = semidirect_product(cyclic_group(3), cyclic_group(2), [[0, 1, 2], [0, 2, 1]])
    write_loop(loop_from_group(s3), DATA / "S3.loop")
    write_loop(cyclic_loop(3), DATA / "C3.loop")
    write_loop(cyclic_loop(6), DATA / "C6.loop")
    bruck8 = next(X for X in nab8 if has_aip(X))
    write_loop(bruck8, DATA / "bruck8.loop")
    write_loop(theorem1_example(), DATA / "c3_x_bruck8.loop")


if __name__ == "__main__":
    main()
