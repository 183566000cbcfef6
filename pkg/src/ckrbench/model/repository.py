"""Repository assembly: global knowledge plus named knowledge modules.

A repository is assembled from a dataset once and is immutable afterwards
except for the two association fields (`contexts`, `mod_assoc`) that the
closure engine fills from the global closure.

On reload of a closed dataset, the global inference graph is treated as part
of the global knowledge, so module links written during materialization are
honoured and a second closure pass is a no-op.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ckrbench.errors import AssemblyError
from ckrbench.model.axioms import Axiom
from ckrbench.model.encoding import parse_axioms
from ckrbench.namespaces import DEFAULT_VOCAB, NOMINAL_NS, CkrVocabulary
from ckrbench.rdf.dataset import Dataset
from ckrbench.rdf.terms import Term, term_key


@dataclass(frozen=True)
class KnowledgeModule:
    name: Term
    axioms: frozenset[Axiom]
    source_graph: Term


def is_meta_axiom(ax: Axiom, vocab: CkrVocabulary = DEFAULT_VOCAB) -> bool:
    """Meta-level axioms describe context structure and are not propagated."""
    return any(
        vocab.is_meta_term(t)
        or (t.kind == "iri" and t.lexical.startswith(NOMINAL_NS))
        for t in ax.args
    )


@dataclass
class CkrRepository:
    vocab: CkrVocabulary
    dataset: Dataset
    global_axioms: frozenset[Axiom]
    modules: dict[Term, KnowledgeModule]
    warnings: list[str] = field(default_factory=list)
    # Filled by the closure engine after the global stage.
    contexts: set[Term] = field(default_factory=set)
    mod_assoc: set[tuple[Term, Term]] = field(default_factory=set)

    def context_kb(self, context: Term) -> set[Axiom]:
        """Union of the axioms of all modules associated with a context."""
        kb: set[Axiom] = set()
        for ctx, mod in self.mod_assoc:
            if ctx == context:
                kb |= self.modules[mod].axioms
        return kb

    def global_object_axioms(self) -> list[Axiom]:
        """Global axioms in the object language (the ones contexts inherit)."""
        return [ax for ax in self.global_axioms if not is_meta_axiom(ax, self.vocab)]

    def object_axiom_count(self) -> int:
        """Domain axioms only: generated totals are checked against this."""
        return len(self.global_object_axioms()) + sum(
            len(m.axioms) for m in self.modules.values()
        )


def assemble_repository(
    dataset: Dataset, vocab: CkrVocabulary = DEFAULT_VOCAB
) -> CkrRepository:
    warnings: list[str] = []
    global_graphs = [vocab.global_graph]
    global_inf = vocab.inference_graph(vocab.global_graph)
    if dataset.has_graph(global_inf):
        global_graphs.append(global_inf)

    global_axioms: set[Axiom] = set()
    for g in global_graphs:
        global_axioms |= parse_axioms(dataset, g, warnings, vocab)
    for ax in global_axioms:
        if ax.is_eval:
            raise AssemblyError(
                f"eval axiom {ax!r} in the global graph; "
                "eval inclusions may only occur in local modules"
            )

    referenced: set[Term] = set()
    for g in global_graphs:
        for quad in dataset.match(p=vocab.mod_property, g=g):
            target = quad.o
            if target.kind != "iri":
                raise AssemblyError(f"module name must be an IRI: {target!r}")
            if target in global_graphs:
                raise AssemblyError(
                    f"module name {target!r} collides with the global graph"
                )
            if not dataset.has_graph(target):
                raise AssemblyError(
                    f"module link references graph {target!r} absent from the dataset"
                )
            referenced.add(target)

    modules: dict[Term, KnowledgeModule] = {}
    for name in dataset.graph_names():
        if name in global_graphs:
            continue
        modules[name] = KnowledgeModule(
            name=name,
            axioms=frozenset(parse_axioms(dataset, name, warnings, vocab)),
            source_graph=name,
        )
        if name not in referenced:
            warnings.append(f"module graph {name!r} is unreachable (no module link)")

    return CkrRepository(
        vocab=vocab,
        dataset=dataset,
        global_axioms=frozenset(global_axioms),
        modules=modules,
        warnings=warnings,
    )


def sorted_terms(terms) -> list[Term]:
    return sorted(terms, key=term_key)
