"""Staged closure: stages, propagation, eval chains, entailment checking."""
import pytest

from ckrbench.engine.closure import check_entailment, compute_closure
from ckrbench.engine.rules import REGIME_IDS, instantiate_ruleset
from ckrbench.errors import InstanceQueryError, UnknownContextError
from ckrbench.generator import build_ts2, target_concept, ts_individual
from ckrbench.model import axioms as ax
from ckrbench.model.axioms import axiom
from ckrbench.model.repository import assemble_repository
from ckrbench.namespaces import DEFAULT_VOCAB, RDF_TYPE
from ckrbench.rdf.dataset import Dataset, Quad
from ckrbench.rdf.terms import iri
from ckrbench.rdf.trig import load_dataset, write_dataset
from util import gen, trig

G = DEFAULT_VOCAB.global_graph
OWL_LOCAL = instantiate_ruleset("ckr-owl-local")


def closure(dataset, regime_id="ckr-owl-local", budget=60_000):
    repo = assemble_repository(dataset)
    return compute_closure(repo, instantiate_ruleset(regime_id), budget)


@pytest.mark.parametrize("regime_id", REGIME_IDS)
def test_empty_repository_infers_nothing(regime_id):
    result = closure(Dataset(), regime_id)
    assert result.inferred_fact_count == 0
    assert result.inferred_quad_count == 0
    assert not result.timed_out


def test_regime_stages():
    assert instantiate_ruleset("ckr-rdfs-global").stages == ("global", "assoc")
    assert instantiate_ruleset("ckr-owl-local").stages == ("global", "assoc", "local")
    rdfs_local = instantiate_ruleset("ckr-rdfs-local")
    assert rdfs_local.stages == ("global", "assoc", "local")
    assert {r.name for r in rdfs_local.local_rules} == {"sub-class", "sub-role"}
    owl_local_names = {r.name for r in OWL_LOCAL.local_rules}
    assert {"eval-class", "eval-role"} <= owl_local_names
    assert {r.name for r in instantiate_ruleset("ckr-owl-global").global_rules} == (
        owl_local_names - {"eval-class", "eval-role"}
    )
    with pytest.raises(ValueError, match="unknown regime"):
        instantiate_ruleset("ckr-unknown")


def test_three_context_eval_chain_matches_hand_enumeration():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . :c1 a ckr:Ctx ; ckr:mod :m1 . "
        ":c2 a ckr:Ctx ; ckr:mod :m2 . } "
        ":m0 { [ ckr:evalOf :D1 ; ckr:evalIn [ owl:oneOf ( :c1 ) ] ] rdfs:subClassOf :D2 . } "
        ":m1 { [ ckr:evalOf :D0 ; ckr:evalIn [ owl:oneOf ( :c2 ) ] ] rdfs:subClassOf :D1 . } "
        ":m2 { :x a :D0 . }"
    )
    result = closure(d)
    c0, c1, c2 = gen("c0"), gen("c1"), gen("c2")
    nom = DEFAULT_VOCAB.nominal_class
    expected = {
        # global structure
        ("inst", c0, DEFAULT_VOCAB.ctx_class, G),
        ("inst", c1, DEFAULT_VOCAB.ctx_class, G),
        ("inst", c2, DEFAULT_VOCAB.ctx_class, G),
        ("triple", c0, DEFAULT_VOCAB.mod_property, gen("m0"), G),
        ("triple", c1, DEFAULT_VOCAB.mod_property, gen("m1"), G),
        ("triple", c2, DEFAULT_VOCAB.mod_property, gen("m2"), G),
        # local translations
        ("subEval", gen("D1"), nom(c1), gen("D2"), c0),
        ("subEval", gen("D0"), nom(c2), gen("D1"), c1),
        ("inst", c1, nom(c1), G),
        ("inst", c2, nom(c2), G),
        ("inst", gen("x"), gen("D0"), c2),
        # the eval chain resolves transitively
        ("inst", gen("x"), gen("D1"), c1),
        ("inst", gen("x"), gen("D2"), c0),
    }
    assert result.facts.as_set() == expected
    assert result.inferred_fact_count == 2


def test_global_propagation_reaches_every_context():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . :c1 a ckr:Ctx ; ckr:mod :m1 . "
        ":a0 a :A0 . :A0 rdfs:subClassOf :A1 . } "
        ":m0 { } :m1 { }"
    )
    result = closure(d)
    expected_per_context = {
        Quad(gen("a0"), RDF_TYPE, gen("A0"), None),
        Quad(gen("A0"), iri("http://www.w3.org/2000/01/rdf-schema#subClassOf"), gen("A1"), None),
        Quad(gen("a0"), RDF_TYPE, gen("A1"), None),
    }
    for ctx in ("c0", "c1"):
        target = DEFAULT_VOCAB.inference_graph(gen(ctx))
        got = {q._replace(g=None) for q in result.inference_quads if q.g == target}
        assert got == expected_per_context
    g_inf = DEFAULT_VOCAB.inference_graph(G)
    global_quads = [q for q in result.inference_quads if q.g == g_inf]
    derived = [q for q in global_quads if q.p == RDF_TYPE]
    links = [q for q in global_quads if q.p == DEFAULT_VOCAB.mod_property]
    assert {(q.s, q.o) for q in derived} == {(gen("a0"), gen("A1"))}
    assert {(q.s, q.o) for q in links} == {
        (gen("c0"), DEFAULT_VOCAB.inference_graph(gen("c0"))),
        (gen("c1"), DEFAULT_VOCAB.inference_graph(gen("c1"))),
    }
    assert result.inferred_quad_count == 3 + 3 + 1 + 2


def test_context_isolation_without_eval():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . :c1 a ckr:Ctx ; ckr:mod :m1 . } "
        ":m0 { :left0 a :L0 . :L0 rdfs:subClassOf :L1 . } "
        ":m1 { :right0 a :Q0 . :Q0 rdfs:subClassOf :Q1 . }"
    )
    result = closure(d)
    c0_facts = [f for f in result.facts if f[-1] == gen("c0")]
    c0_symbols = {t for f in c0_facts for t in f[1:-1]}
    assert gen("right0") not in c0_symbols
    assert gen("Q0") not in c0_symbols
    assert ("inst", gen("left0"), gen("L1"), gen("c0")) in result.facts
    assert ("inst", gen("right0"), gen("Q1"), gen("c1")) in result.facts


def test_inconsistency_is_flagged_but_not_explosive():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . :c1 a ckr:Ctx ; ckr:mod :m1 . } "
        ":m0 { :A0 rdfs:subClassOf [ owl:complementOf :A1 ] . "
        ":u a :A0 . :u a :A1 . :u :R0 :w . :R0 rdfs:subPropertyOf :R1 . } "
        ":m1 { :ok a :B0 . }"
    )
    result = closure(d)
    assert result.inconsistent_contexts == {gen("c0")}
    # reasoning continues past the contradiction
    assert ("triple", gen("u"), gen("R1"), gen("w"), gen("c0")) in result.facts
    # and the sibling context is untouched
    assert ("unsat", gen("c1")) not in result.facts
    marker = Quad(
        gen("c0"), RDF_TYPE, DEFAULT_VOCAB.inconsistent_class,
        DEFAULT_VOCAB.inference_graph(gen("c0")),
    )
    assert marker in result.inference_quads


def test_ts2_full_scale_point():
    # 100 contexts, 4 connections, 10 instances: 4000 propagated memberships
    result = closure(build_ts2(100, 4, 10))
    assert len(result.facts.match("inst", None, target_concept(), None)) == 4000
    assert not result.timed_out


def test_check_entailment_asserted_and_derived():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . } "
        ":m0 { :A0 rdfs:subClassOf :A1 . :A1 rdfs:subClassOf :A2 . "
        ":A2 rdfs:subClassOf :A3 . :a0 a :A0 . }"
    )
    repo = assemble_repository(d)
    asserted = axiom(ax.CONCEPT_ASSERT, gen("A0"), gen("a0"))
    chained = axiom(ax.CONCEPT_ASSERT, gen("A3"), gen("a0"))
    assert check_entailment(repo, asserted, gen("c0"), OWL_LOCAL)
    assert check_entailment(repo, chained, gen("c0"), OWL_LOCAL)


def test_check_entailment_respects_context_boundaries():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . :c1 a ckr:Ctx ; ckr:mod :m1 . } "
        ":m0 { :a0 a :A0 . } :m1 { :b0 a :B0 . }"
    )
    repo = assemble_repository(d)
    foreign = axiom(ax.CONCEPT_ASSERT, gen("A0"), gen("a0"))
    assert check_entailment(repo, foreign, gen("c0"), OWL_LOCAL)
    assert not check_entailment(repo, foreign, gen("c1"), OWL_LOCAL)


def test_check_entailment_errors():
    d = trig("ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . } :m0 { :a0 a :A0 . }")
    repo = assemble_repository(d)
    with pytest.raises(InstanceQueryError):
        check_entailment(repo, axiom(ax.SUB_CLASS, gen("A0"), gen("A1")), gen("c0"), OWL_LOCAL)
    with pytest.raises(UnknownContextError):
        check_entailment(
            repo,
            axiom(ax.CONCEPT_ASSERT, gen("A0"), gen("a0")),
            gen("c9"),
            OWL_LOCAL,
        )


def test_timeout_flag_and_suppressed_output():
    result = closure(build_ts2(20, 19, 10), budget=1)
    assert result.timed_out
    assert result.inference_quads == []


def test_closed_dataset_reloads_and_recloses_to_zero():
    first = closure(build_ts2(5, 2, 4))
    closed = first.closed_dataset()
    reloaded = load_dataset(write_dataset(closed))
    second = closure(reloaded)
    assert second.inferred_quad_count == 0
    assert second.facts.relation("inst") >= first.facts.relation("inst")


def test_module_link_derived_through_subproperty():
    # a custom linking property declared under the module property also
    # attaches modules, via the global closure
    d = trig(
        "ckr:global { :installs rdfs:subPropertyOf ckr:mod . "
        ":c0 a ckr:Ctx ; :installs :m0 . } "
        ":m0 { :a0 a :A0 . }"
    )
    result = closure(d)
    assert (gen("c0"), gen("m0")) in result.mod_assoc
    assert ("inst", gen("a0"), gen("A0"), gen("c0")) in result.facts
    # the same repository under the subsumption-only global regime still
    # resolves the association (structure reasoning is part of every regime)
    rdfs_result = closure(d, "ckr-rdfs-global")
    assert (gen("c0"), gen("m0")) in rdfs_result.mod_assoc


def test_eval_over_atomic_context_class_collects_all_members():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . "
        ":c1 a ckr:Ctx, :TeamCtx ; ckr:mod :m1 . "
        ":c2 a ckr:Ctx, :TeamCtx ; ckr:mod :m2 . } "
        ":m0 { [ ckr:evalOf :D0 ; ckr:evalIn :TeamCtx ] rdfs:subClassOf :D1 . } "
        ":m1 { :u a :D0 . } "
        ":m2 { :v a :D0 . }"
    )
    result = closure(d)
    assert set(result.facts.match("inst", None, gen("D1"), None)) == {
        ("inst", gen("u"), gen("D1"), gen("c0")),
        ("inst", gen("v"), gen("D1"), gen("c0")),
    }


def test_entailment_in_the_global_context():
    d = trig("ckr:global { :a0 a :A0 . :A0 rdfs:subClassOf :A1 . }")
    repo = assemble_repository(d)
    derived = axiom(ax.CONCEPT_ASSERT, gen("A1"), gen("a0"))
    assert check_entailment(repo, derived, DEFAULT_VOCAB.global_graph, OWL_LOCAL)


def test_shared_module_reasons_in_every_attached_context():
    d = trig(
        "ckr:global { :c0 a ckr:Ctx ; ckr:mod :shared . "
        ":c1 a ckr:Ctx ; ckr:mod :shared . } "
        ":shared { :a0 a :A0 . :A0 rdfs:subClassOf :A1 . }"
    )
    repo = assemble_repository(d)
    result = compute_closure(repo, OWL_LOCAL)
    for ctx in (gen("c0"), gen("c1")):
        assert ("inst", gen("a0"), gen("A1"), ctx) in result.facts
    # the engine fills the association fields on the repository
    assert repo.contexts == {gen("c0"), gen("c1")}
    assert repo.mod_assoc == {(gen("c0"), gen("shared")), (gen("c1"), gen("shared"))}


def test_derived_context_membership_via_subclass():
    # a context declared through a subclass of the context class still counts
    d = trig(
        "ckr:global { :Team rdfs:subClassOf ckr:Ctx . :c0 a :Team ; ckr:mod :m0 . } "
        ":m0 { :a0 a :A0 . }"
    )
    result = closure(d)
    assert gen("c0") in result.contexts
    assert ("inst", gen("a0"), gen("A0"), gen("c0")) in result.facts


def test_quad_level_counts_are_consistent():
    result = closure(build_ts2(10, 2, 10))
    # 10 contexts x (10 instances + 2 eval inclusions x 6 triples) + 20 structure
    assert result.asserted_quad_count == 240
    assert result.inferred_quad_count == 210  # 200 memberships + 10 module links
    closed = result.closed_dataset()
    assert len(closed) == result.asserted_quad_count + result.inferred_quad_count
