"""Axiom-to-fact translations and the output translation."""
import pytest

from ckrbench import calculus as cal
from ckrbench.errors import InstanceQueryError, TranslationError
from ckrbench.generator import build_ts2
from ckrbench.model import axioms as ax
from ckrbench.model.axioms import axiom
from ckrbench.model.repository import assemble_repository
from ckrbench.namespaces import DEFAULT_VOCAB
from util import gen

A0, A1, A2 = gen("A0"), gen("A1"), gen("A2")
R0, R1, R2 = gen("R0"), gen("R1"), gen("R2")
a0, a1 = gen("a0"), gen("a1")
c0 = gen("c0")
G = DEFAULT_VOCAB.global_graph


def test_translate_subclass():
    assert cal.translate_rl(axiom(ax.SUB_CLASS, A0, A1), c0) == {
        ("subClass", A0, A1, c0)
    }


def test_translate_concept_assertion():
    assert cal.translate_rl(axiom(ax.CONCEPT_ASSERT, A0, a0), c0) == {
        ("inst", a0, A0, c0)
    }


def test_translate_role_chain_in_global_context():
    assert cal.translate_rl(axiom(ax.ROLE_CHAIN, R0, R1, R2), G) == {
        ("subRChain", R0, R1, R2, G)
    }


_NON_EVAL = [
    axiom(ax.SUB_CLASS, A0, A1),
    axiom(ax.SUB_CLASS_NEG, A0, A1),
    axiom(ax.SUB_HAS_VALUE, A0, R0, a0),
    axiom(ax.SUB_CONJ, A0, A1, A2),
    axiom(ax.SUB_EX, R0, A0, A1),
    axiom(ax.SUP_ALL, A0, R0, A1),
    axiom(ax.SUP_MAX1, A0, R0, A1),
    axiom(ax.CONCEPT_ASSERT, A0, a0),
    axiom(ax.ROLE_ASSERT, R0, a0, a1),
    axiom(ax.NEG_ROLE_ASSERT, R0, a0, a1),
    axiom(ax.SAME, a0, a1),
    axiom(ax.DIFFERENT, a0, a1),
    axiom(ax.SUB_ROLE, R0, R1),
    axiom(ax.INV_ROLE, R0, R1),
    axiom(ax.ROLE_CHAIN, R0, R1, R2),
    axiom(ax.DIS_ROLE, R0, R1),
    axiom(ax.IRR_ROLE, R0),
]


def test_every_plain_shape_yields_exactly_one_fact():
    produced = set()
    for sample in _NON_EVAL:
        facts = cal.translate_rl(sample, c0)
        assert len(facts) == 1
        fact = next(iter(facts))
        assert fact[-1] == c0
        assert len(fact) - 1 == cal.RELATION_ARITY[fact[0]]
        produced |= facts
    # translation is injective over distinct axioms
    assert len(produced) == len(_NON_EVAL)


def test_translate_rl_rejects_eval():
    with pytest.raises(TranslationError):
        cal.translate_rl(axiom(ax.EVAL_SUB_CLASS, A0, c0, A1, nominal_ctx=True), c0)


def test_translate_loc_atomic_context_class():
    cls = gen("TeamCtx")
    assert cal.translate_loc(axiom(ax.EVAL_SUB_CLASS, A0, cls, A1), c0) == {
        ("subEval", A0, cls, A1, c0)
    }


def test_translate_loc_nominal_expands():
    c1 = gen("c1")
    facts = cal.translate_loc(
        axiom(ax.EVAL_SUB_CLASS, gen("D0"), c1, gen("D1"), nominal_ctx=True), c0
    )
    synthetic = DEFAULT_VOCAB.nominal_class(c1)
    assert facts == {
        ("subEval", gen("D0"), synthetic, gen("D1"), c0),
        ("inst", c1, synthetic, G),
    }
    # interned: the same context always maps to the same synthetic class
    again = cal.translate_loc(
        axiom(ax.EVAL_SUB_ROLE, R0, c1, R1, nominal_ctx=True), c0
    )
    assert ("subEvalR", R0, synthetic, R1, c0) in again


def test_translate_loc_rejects_plain_shapes():
    with pytest.raises(TranslationError):
        cal.translate_loc(axiom(ax.SUB_CLASS, A0, A1), c0)


def test_translate_glob_empty():
    from ckrbench.rdf.dataset import Dataset

    repo = assemble_repository(Dataset())
    assert cal.translate_glob(repo) == set()


def test_translate_glob_context_declaration():
    from util import trig

    repo = assemble_repository(trig("ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . } :m0 { }"))
    assert cal.translate_glob(repo) == {
        ("inst", c0, DEFAULT_VOCAB.ctx_class, G),
        ("triple", c0, DEFAULT_VOCAB.mod_property, gen("m0"), G),
    }


def test_translate_glob_ts2_structure_counts():
    repo = assemble_repository(build_ts2(100, 0, 0))
    facts = cal.translate_glob(repo)
    ctx_decls = [f for f in facts if f[0] == "inst" and f[2] == DEFAULT_VOCAB.ctx_class]
    mod_links = [f for f in facts if f[0] == "triple"]
    assert len(ctx_decls) == 100
    assert len(mod_links) == 100


def test_output_translation():
    assert cal.output_translation(axiom(ax.CONCEPT_ASSERT, A1, a0), c0) == (
        "inst",
        a0,
        A1,
        c0,
    )
    assert cal.output_translation(axiom(ax.ROLE_ASSERT, R0, a0, a1), G) == (
        "triple",
        a0,
        R0,
        a1,
        G,
    )
    with pytest.raises(InstanceQueryError, match="not an instance query"):
        cal.output_translation(axiom(ax.SUB_CLASS, A0, A1), c0)


def test_fact_arity_validation():
    with pytest.raises(ValueError):
        cal.fact("inst", a0, A0)  # missing context
    assert cal.fact("unsat", c0) == ("unsat", c0)


def test_fact_to_axiom_round_trip():
    for sample in _NON_EVAL:
        fact = next(iter(cal.translate_rl(sample, c0)))
        assert cal.fact_to_axiom(fact) == sample
    with pytest.raises(TranslationError):
        cal.fact_to_axiom(("subEval", A0, gen("X"), A1, c0))


def test_fact_base_match():
    base = cal.FactBase([("inst", a0, A0, c0), ("inst", a1, A0, c0), ("inst", a0, A1, G)])
    assert len(base.match("inst", None, A0, None)) == 2
    assert base.match("inst", a0, None, G) == [("inst", a0, A1, G)]
    assert ("inst", a0, A0, c0) in base
    assert len(base) == 3
