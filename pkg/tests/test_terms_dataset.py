"""Terms, quads and the named-graph store."""
import random
import threading

import pytest

from ckrbench.rdf.dataset import Dataset, Quad
from ckrbench.rdf.terms import TermTable, iri, literal, term_key
from util import gen, random_dataset


def test_term_equality_and_interning():
    assert iri("http://x.test/a") is iri("http://x.test/a")
    assert literal("5") == literal("5")
    assert literal("5").datatype.endswith("#string")
    assert literal("5", "http://www.w3.org/2001/XMLSchema#integer") != literal("5")


def test_invalid_iri_rejected():
    with pytest.raises(ValueError):
        iri("no-scheme-here")
    with pytest.raises(ValueError):
        iri("http://x.test/with space")


def test_term_table_dense_ids():
    table = TermTable()
    a, b = gen("a"), gen("b")
    assert table.intern(a) == 0
    assert table.intern(b) == 1
    assert table.intern(a) == 0
    assert table.term(1) == b
    assert len(table) == 2


def q(s, p, o, g="gq") -> Quad:
    return Quad(gen(s), gen(p), gen(o), gen(g))


def test_add_quads_counts_and_idempotence():
    d = Dataset()
    fresh = [q("s", "p", f"o{i}") for i in range(5)]
    assert d.add_quads(fresh) == 5
    # inserting an already-present quad
    assert d.add_quads([fresh[0]]) == 0
    # duplicate inside the input collection counts once
    q1, q2 = q("x", "p", "y"), q("x", "p", "z")
    assert d.add_quads([q1, q1, q2]) == 2
    assert len(d) == 7
    # set semantics: a second identical batch inserts nothing
    assert d.add_quads(fresh + [q1, q2]) == 0


def test_quad_validation():
    with pytest.raises(ValueError):
        Dataset().add(Quad(gen("s"), literal("p"), gen("o"), gen("g")))
    with pytest.raises(ValueError):
        Dataset().add(Quad(literal("s"), gen("p"), gen("o"), gen("g")))
    with pytest.raises(ValueError):
        Dataset().add(Quad(gen("s"), gen("p"), gen("o"), literal("g")))


def test_match_empty_dataset():
    assert Dataset().match() == []


def test_match_subject_pattern():
    d = Dataset()
    mine = [q("a0", "p0", "x"), q("a0", "p1", "y"), q("a0", "p1", "z", "g2")]
    other = [q("b0", "p0", "x"), q("b0", "p1", "y")]
    d.add_quads(mine + other)
    assert set(d.match(s=gen("a0"))) == set(mine)


def test_match_graph_pattern():
    d = random_dataset(7, 300)
    g = gen("g2")
    expected = sorted(
        (qq for qq in d if qq.g == g),
        key=lambda qq: tuple(map(term_key, qq)),
    )
    assert d.match(g=g) == expected


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_match_agrees_with_linear_scan(seed):
    d = random_dataset(seed, 1500)
    rng = random.Random(seed + 100)
    quads = list(d)
    for _ in range(40):
        probe = rng.choice(quads)
        pattern = {
            name: (getattr(probe, name) if rng.random() < 0.5 else None)
            for name in ("s", "p", "o", "g")
        }
        expected = sorted(
            (
                qq
                for qq in quads
                if all(v is None or getattr(qq, k) == v for k, v in pattern.items())
            ),
            key=lambda qq: tuple(map(term_key, qq)),
        )
        assert d.match(**pattern) == expected


def test_match_is_deterministic():
    d = random_dataset(3, 500)
    first = d.match(p=gen("p1"))
    assert first == d.match(p=gen("p1"))
    assert first == sorted(first, key=lambda qq: tuple(map(term_key, qq)))


def test_graph_names_and_sizes():
    d = Dataset()
    d.add(q("s", "p", "o", "g1"))
    d.declare_graph(gen("empty"))
    assert gen("empty") in d.graph_names()
    assert d.graph_size(gen("g1")) == 1
    assert d.graph_size(gen("empty")) == 0
    assert d.has_graph(gen("empty"))


def test_single_writer_many_readers():
    d = Dataset()
    errors: list[Exception] = []

    def write():
        try:
            for i in range(500):
                d.add(q("s", "p", f"o{i}"))
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    def read():
        try:
            for _ in range(200):
                d.match(s=gen("s"))
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=write)] + [
        threading.Thread(target=read) for _ in range(3)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert len(d) == 500
