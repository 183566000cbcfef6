"""Staged closure computation over an assembled repository.

Stage "global" saturates the translated global knowledge under the regime's
global rules.  Stage "assoc" reads the context set and the context-module
associations out of that closure.  Stage "local" (local regimes only) seeds
every context with its module knowledge plus the object-level part of the
global knowledge and runs one joint fixpoint across all contexts, so eval
chains between contexts resolve no matter how deep they go.

Derived facts are written back as quads into one inference graph per context
(base graph name + ``-inf``) plus one for the global context; asserted
knowledge is never duplicated there.  The global inference graph also links
each context to its inference graph, which makes a closed dataset reload as
an already-closed repository: a second pass infers nothing.
"""
from __future__ import annotations

import gc
import logging
import time
from dataclasses import dataclass, field

from ckrbench import calculus as cal
from ckrbench.calculus import Fact, FactBase
from ckrbench.engine.fixpoint import FactStore, compile_rules, run_fixpoint
from ckrbench.engine.rules import Regime
from ckrbench.errors import (
    AssemblyError,
    BudgetExceeded,
    InstanceQueryError,
    UnknownContextError,
)
from ckrbench.model.axioms import Axiom
from ckrbench.model.encoding import encode_axiom, skolem_minter
from ckrbench.model.repository import CkrRepository
from ckrbench.namespaces import OWL_SAMEAS, RDF_TYPE
from ckrbench.rdf.dataset import Dataset, Quad
from ckrbench.rdf.terms import Term, TermTable, term_key

logger = logging.getLogger(__name__)

#: Default closure budget: thirty minutes.
DEFAULT_BUDGET_MILLIS = 1_800_000


@dataclass
class ClosureResult:
    regime_id: str
    facts: FactBase
    asserted_fact_count: int
    inferred_fact_count: int
    asserted_quad_count: int
    inferred_quad_count: int
    per_stage_ms: dict[str, float]
    total_ms: float
    contexts: set[Term]
    mod_assoc: set[tuple[Term, Term]]
    inconsistent_contexts: set[Term]
    inference_quads: list[Quad] = field(default_factory=list)
    timed_out: bool = False
    _source: Dataset | None = None

    def closed_dataset(self) -> Dataset:
        """Asserted input plus all inference graphs."""
        if self._source is None:
            raise ValueError("result carries no source dataset")
        out = self._source.copy()
        out.add_quads(self.inference_quads)
        return out


class _Clock:
    def __init__(self) -> None:
        self.t0 = time.perf_counter()
        self.stage_ms: dict[str, float] = {}

    def stage(self, name: str) -> "_StageTimer":
        return _StageTimer(self, name)

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.t0) * 1000.0


class _StageTimer:
    def __init__(self, clock: _Clock, name: str) -> None:
        self.clock = clock
        self.name = name

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        took = (time.perf_counter() - self.start) * 1000.0
        self.clock.stage_ms[self.name] = self.clock.stage_ms.get(self.name, 0.0) + took
        return False


def compute_closure(
    repo: CkrRepository,
    regime: Regime,
    budget_millis: int = DEFAULT_BUDGET_MILLIS,
) -> ClosureResult:
    # The engine allocates only acyclic containers; generational collection
    # would otherwise rescan the growing fact heap and skew large closures.
    if gc.isenabled():
        gc.disable()
        try:
            return compute_closure(repo, regime, budget_millis)
        finally:
            gc.enable()
    clock = _Clock()
    deadline = clock.t0 + budget_millis / 1000.0
    vocab = repo.vocab
    table = TermTable()
    store = FactStore()
    asserted: set[tuple] = set()  # int-encoded asserted facts

    def intern_fact(f: Fact) -> tuple[str, tuple]:
        return f[0], tuple(table.intern(t) for t in f[1:])

    def add_facts(facts, *, is_asserted: bool) -> None:
        for f in facts:
            rel, enc = intern_fact(f)
            store.add(rel, enc)
            if is_asserted:
                asserted.add((rel, enc))

    g = vocab.global_graph
    timed_out = False
    contexts: set[Term] = set()
    mod_assoc: set[tuple[Term, Term]] = set()

    try:
        with clock.stage("global"):
            for ax in repo.global_axioms:
                add_facts(cal.translate_rl(ax, g), is_asserted=True)
            run_fixpoint(store, compile_rules(regime.global_rules, table.intern), deadline)

        with clock.stage("assoc"):
            contexts, mod_assoc = _read_associations(store, table, repo)
            repo.contexts = set(contexts)
            repo.mod_assoc = set(mod_assoc)

        if regime.local_rules is not None:
            with clock.stage("local"):
                propagated = repo.global_object_axioms()
                for c in contexts:
                    for ax in repo.context_kb(c):
                        add_facts(
                            cal.translate_axiom(ax, c, vocab), is_asserted=True
                        )
                    for ax in propagated:
                        add_facts(cal.translate_rl(ax, c), is_asserted=False)
                run_fixpoint(
                    store, compile_rules(regime.local_rules, table.intern), deadline
                )
    except BudgetExceeded:
        timed_out = True

    facts = FactBase()
    inference_quads: list[Quad] = []
    inconsistent: set[Term] = set()
    if not timed_out:
        with clock.stage("materialize"):
            facts, inference_quads, inconsistent = _materialize(
                store, table, asserted, repo, contexts
            )

    asserted_facts = len(asserted)
    total_facts = len(store)
    result = ClosureResult(
        regime_id=regime.id,
        facts=facts,
        asserted_fact_count=asserted_facts,
        inferred_fact_count=max(total_facts - asserted_facts, 0),
        asserted_quad_count=len(repo.dataset),
        inferred_quad_count=len(inference_quads),
        per_stage_ms=clock.stage_ms,
        total_ms=clock.elapsed_ms,
        contexts=contexts,
        mod_assoc=mod_assoc,
        inconsistent_contexts=inconsistent,
        inference_quads=inference_quads,
        timed_out=timed_out,
        _source=repo.dataset,
    )
    logger.debug(
        "closure %s: %d asserted / %d inferred facts, %d inferred quads, %.1f ms",
        regime.id,
        result.asserted_fact_count,
        result.inferred_fact_count,
        result.inferred_quad_count,
        result.total_ms,
    )
    return result


def _read_associations(
    store: FactStore, table: TermTable, repo: CkrRepository
) -> tuple[set[Term], set[tuple[Term, Term]]]:
    vocab = repo.vocab
    g_id = table.intern(vocab.global_graph)
    ctx_id = table.intern(vocab.ctx_class)
    mod_id = table.intern(vocab.mod_property)

    contexts: set[Term] = set()
    for fact in store.facts(cal.INST):
        if fact[1] == ctx_id and fact[2] == g_id:
            contexts.add(table.term(fact[0]))

    mod_assoc: set[tuple[Term, Term]] = set()
    ctx_ids = {table.intern(c) for c in contexts}
    for fact in store.facts(cal.TRIPLE):
        if fact[1] == mod_id and fact[3] == g_id and fact[0] in ctx_ids:
            ctx_term = table.term(fact[0])
            mod_term = table.term(fact[2])
            if mod_term not in repo.modules:
                raise AssemblyError(
                    f"derived module link {ctx_term!r} -> {mod_term!r} "
                    "references a graph absent from the dataset"
                )
            mod_assoc.add((ctx_term, mod_term))
    return contexts, mod_assoc


def _materialize(
    store: FactStore,
    table: TermTable,
    asserted: set[tuple],
    repo: CkrRepository,
    contexts: set[Term],
) -> tuple[FactBase, list[Quad], set[Term]]:
    vocab = repo.vocab
    facts = FactBase()
    inconsistent: set[Term] = set()
    derived_by_ctx: dict[Term, list[Fact]] = {}

    for rel, bucket in sorted(store.rels.items()):
        for enc in bucket:
            f: Fact = (rel, *(table.term(i) for i in enc))
            facts.add(f)
            if rel == cal.UNSAT:
                inconsistent.add(f[1])
            if (rel, enc) not in asserted:
                derived_by_ctx.setdefault(cal.fact_context(f), []).append(f)

    quads: list[Quad] = []
    glue: list[Quad] = []
    g_inf = vocab.inference_graph(vocab.global_graph)
    for ctx in sorted(derived_by_ctx, key=term_key):
        target = vocab.inference_graph(ctx)
        emitted = False
        for f in sorted(derived_by_ctx[ctx], key=lambda f: (f[0], *map(term_key, f[1:]))):
            for s, p, o in _fact_triples(f, vocab):
                quad = Quad(s, p, o, target)
                if quad not in repo.dataset:
                    quads.append(quad)
                    emitted = True
        if emitted and ctx != vocab.global_graph and ctx in contexts:
            link = Quad(ctx, vocab.mod_property, target, g_inf)
            if link not in repo.dataset:
                glue.append(link)
    return facts, quads + glue, inconsistent


def _fact_triples(f: Fact, vocab) -> list[tuple[Term, Term, Term]]:
    rel = f[0]
    # fast paths: the relations that need no auxiliary nodes
    if rel == cal.INST:
        return [(f[1], RDF_TYPE, f[2])]
    if rel == cal.TRIPLE:
        return [(f[1], f[2], f[3])]
    if rel == cal.EQ:
        return [(f[1], OWL_SAMEAS, f[2])]
    if rel == cal.UNSAT:
        return [(f[1], RDF_TYPE, vocab.inconsistent_class)]
    mint = skolem_minter(rel, *(t.lexical for t in f[1:]))
    return encode_axiom(cal.fact_to_axiom(f), mint, vocab)


def check_entailment(
    repo: CkrRepository,
    axiom: Axiom,
    context: Term,
    regime: Regime,
    budget_millis: int = DEFAULT_BUDGET_MILLIS,
) -> bool:
    """True when the repository entails the assertion in the context."""
    if not axiom.is_assertion:
        raise InstanceQueryError(f"not an instance query: {axiom!r}")
    result = compute_closure(repo, regime, budget_millis)
    if result.timed_out:
        raise BudgetExceeded("closure timed out before the entailment check")
    if context != repo.vocab.global_graph and context not in result.contexts:
        raise UnknownContextError(f"unknown context: {context!r}")
    return cal.output_translation(axiom, context) in result.facts
