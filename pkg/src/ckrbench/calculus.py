"""Translation between normal-form axioms and deduction facts.

A fact is a plain tuple ``(relation, arg..., context)``: the context is
always the last argument (``unsat`` carries only the context).  The global
context is named by the vocabulary's global-graph IRI.

Every deduction relation used by the engine lives here: instance and role
membership (``inst``/``triple``), the schema relations mirroring the axiom
shapes, equality/inequality, the two eval relations, and the per-context
inconsistency marker.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from ckrbench.errors import InstanceQueryError, TranslationError
from ckrbench.model import axioms as ax
from ckrbench.model.axioms import Axiom
from ckrbench.model.repository import CkrRepository
from ckrbench.namespaces import DEFAULT_VOCAB, CkrVocabulary
from ckrbench.rdf.terms import Term

Fact = tuple  # (relation: str, *args: Term) with the context last

INST = "inst"
TRIPLE = "triple"
SUBCLASS = "subClass"
SUBCLASSNEG = "subClassNeg"
SUBHASVALUE = "subHasValue"
SUBCONJ = "subConj"
SUBEX = "subEx"
SUPALL = "supAll"
SUPMAX1 = "supMax1"
SUBROLE = "subRole"
INVROLE = "invRole"
SUBRCHAIN = "subRChain"
DISROLE = "disRole"
IRRROLE = "irrRole"
NTRIPLE = "ntriple"
EQ = "eq"
NEQ = "neq"
SUBEVAL = "subEval"
SUBEVALR = "subEvalR"
UNSAT = "unsat"

#: Arity including the trailing context argument.
RELATION_ARITY: dict[str, int] = {
    INST: 3,
    TRIPLE: 4,
    SUBCLASS: 3,
    SUBCLASSNEG: 3,
    SUBHASVALUE: 4,
    SUBCONJ: 4,
    SUBEX: 4,
    SUPALL: 4,
    SUPMAX1: 4,
    SUBROLE: 3,
    INVROLE: 3,
    SUBRCHAIN: 4,
    DISROLE: 3,
    IRRROLE: 2,
    NTRIPLE: 4,
    EQ: 3,
    NEQ: 3,
    SUBEVAL: 4,
    SUBEVALR: 4,
    UNSAT: 1,
}


def fact(relation: str, *args: Term) -> Fact:
    if len(args) != RELATION_ARITY[relation]:
        raise ValueError(
            f"{relation} expects {RELATION_ARITY[relation]} arguments, got {len(args)}"
        )
    return (relation, *args)


def fact_context(f: Fact) -> Term:
    return f[-1]


# Shapes whose fact keeps the axiom argument order unchanged.
_DIRECT_SHAPES: dict[str, str] = {
    ax.SUB_CLASS: SUBCLASS,
    ax.SUB_CLASS_NEG: SUBCLASSNEG,
    ax.SUB_HAS_VALUE: SUBHASVALUE,
    ax.SUB_CONJ: SUBCONJ,
    ax.SUB_EX: SUBEX,
    ax.SUP_ALL: SUPALL,
    ax.SUP_MAX1: SUPMAX1,
    ax.SAME: EQ,
    ax.DIFFERENT: NEQ,
    ax.SUB_ROLE: SUBROLE,
    ax.INV_ROLE: INVROLE,
    ax.ROLE_CHAIN: SUBRCHAIN,
    ax.DIS_ROLE: DISROLE,
    ax.IRR_ROLE: IRRROLE,
}


def translate_rl(axiom: Axiom, ctx: Term) -> set[Fact]:
    """Translate one non-eval axiom into exactly one fact in context ctx."""
    shape = axiom.shape
    a = axiom.args
    if shape == ax.CONCEPT_ASSERT:
        return {(INST, a[1], a[0], ctx)}
    if shape == ax.ROLE_ASSERT:
        return {(TRIPLE, a[1], a[0], a[2], ctx)}
    if shape == ax.NEG_ROLE_ASSERT:
        return {(NTRIPLE, a[1], a[0], a[2], ctx)}
    relation = _DIRECT_SHAPES.get(shape)
    if relation is None:
        raise TranslationError(
            f"{shape} has no plain translation; eval shapes go through translate_loc"
        )
    return {(relation, *a, ctx)}


def translate_loc(
    axiom: Axiom, ctx: Term, vocab: CkrVocabulary = DEFAULT_VOCAB
) -> set[Fact]:
    """Translate an eval inclusion; nominal contexts expand to a synthetic
    class plus its membership fact in the global context."""
    if not axiom.is_eval:
        raise TranslationError(f"{axiom.shape} is not an eval shape")
    relation = SUBEVAL if axiom.shape == ax.EVAL_SUB_CLASS else SUBEVALR
    left, ctx_class, right = axiom.args
    if not axiom.nominal_ctx:
        return {(relation, left, ctx_class, right, ctx)}
    synthetic = vocab.nominal_class(ctx_class)
    return {
        (relation, left, synthetic, right, ctx),
        (INST, ctx_class, synthetic, vocab.global_graph),
    }


def translate_axiom(
    axiom: Axiom, ctx: Term, vocab: CkrVocabulary = DEFAULT_VOCAB
) -> set[Fact]:
    if axiom.is_eval:
        return translate_loc(axiom, ctx, vocab)
    return translate_rl(axiom, ctx)


def translate_glob(repo: CkrRepository) -> set[Fact]:
    """Facts of the global knowledge base, in the global context.

    Context declarations become ``inst(c, Ctx, g)`` and module links become
    ``triple(c, mod, m, g)`` through the ordinary assertion translation.
    """
    g = repo.vocab.global_graph
    facts: set[Fact] = set()
    for axiom in repo.global_axioms:
        facts |= translate_rl(axiom, g)
    return facts


def output_translation(axiom: Axiom, ctx: Term) -> Fact:
    """Instance-checking translation; defined for ABox assertions only."""
    if axiom.shape == ax.CONCEPT_ASSERT:
        return (INST, axiom.args[1], axiom.args[0], ctx)
    if axiom.shape == ax.ROLE_ASSERT:
        return (TRIPLE, axiom.args[1], axiom.args[0], axiom.args[2], ctx)
    raise InstanceQueryError(f"not an instance query: {axiom!r}")


# Inverse of translate_rl, used when inferred facts are written back as RDF.
_RELATION_SHAPES = {rel: shape for shape, rel in _DIRECT_SHAPES.items()}


def fact_to_axiom(f: Fact) -> Axiom:
    relation, args = f[0], f[1:-1]
    if relation == INST:
        return Axiom(ax.CONCEPT_ASSERT, (args[1], args[0]))
    if relation == TRIPLE:
        return Axiom(ax.ROLE_ASSERT, (args[1], args[0], args[2]))
    if relation == NTRIPLE:
        return Axiom(ax.NEG_ROLE_ASSERT, (args[1], args[0], args[2]))
    shape = _RELATION_SHAPES.get(relation)
    if shape is None:
        raise TranslationError(f"{relation} facts have no RDF form")
    return Axiom(shape, args)


class FactBase:
    """Term-level fact container with per-relation lookup."""

    def __init__(self, facts: Iterable[Fact] = ()) -> None:
        self._by_relation: dict[str, set[Fact]] = {}
        self._size = 0
        for f in facts:
            self.add(f)

    def add(self, f: Fact) -> bool:
        bucket = self._by_relation.setdefault(f[0], set())
        if f in bucket:
            return False
        bucket.add(f)
        self._size += 1
        return True

    def __len__(self) -> int:
        return self._size

    def __contains__(self, f: Fact) -> bool:
        return f in self._by_relation.get(f[0], ())

    def __iter__(self) -> Iterator[Fact]:
        for bucket in self._by_relation.values():
            yield from bucket

    def relation(self, relation: str) -> frozenset:
        return frozenset(self._by_relation.get(relation, ()))

    def match(self, relation: str, *pattern: Term | None) -> list[Fact]:
        """Facts of a relation whose arguments unify with the pattern
        (``None`` is a wildcard over one argument incl. the context)."""
        out = []
        for f in self._by_relation.get(relation, ()):
            if all(p is None or p == v for p, v in zip(pattern, f[1:])):
                out.append(f)
        return out

    def as_set(self) -> frozenset:
        return frozenset(self)
