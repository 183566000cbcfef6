"""Mapping between normal-form axioms and their RDF triple encodings.

``encode_axiom`` and ``parse_axioms`` are inverses: parsing the encoding of
an axiom yields exactly that axiom back.  Auxiliary nodes (restriction nodes,
list cells, negative-assertion reifications) are blank nodes when authoring
modules and deterministic skolem IRIs when the closure engine writes
inference graphs, so inference output re-parses without drift.

Unrecognized triples are carried through untouched: anything that looks like
a plain assertion becomes one, dangling uses of reserved vocabulary are
reported through the ``warnings`` list, and the rest stays inert in the
dataset.
"""
from __future__ import annotations

import hashlib
import itertools
from typing import Callable, Iterable

from ckrbench.errors import EncodingError
from ckrbench.model.axioms import (
    CONCEPT_ASSERT,
    DIFFERENT,
    DIS_ROLE,
    EVAL_SUB_CLASS,
    EVAL_SUB_ROLE,
    INV_ROLE,
    IRR_ROLE,
    NEG_ROLE_ASSERT,
    ROLE_ASSERT,
    ROLE_CHAIN,
    SAME,
    SUB_CLASS,
    SUB_CLASS_NEG,
    SUB_CONJ,
    SUB_EX,
    SUB_HAS_VALUE,
    SUB_ROLE,
    SUP_ALL,
    SUP_MAX1,
    Axiom,
    axiom,
)
from ckrbench.namespaces import (
    CKR_NS,
    DEFAULT_VOCAB,
    OWL_ALLVALUESFROM,
    OWL_ASSERTIONPROPERTY,
    OWL_COMPLEMENTOF,
    OWL_DIFFERENTFROM,
    OWL_HASVALUE,
    OWL_INTERSECTIONOF,
    OWL_INVERSEOF,
    OWL_IRREFLEXIVEPROPERTY,
    OWL_MAXQUALIFIEDCARDINALITY,
    OWL_NEGATIVEPROPERTYASSERTION,
    OWL_NS,
    OWL_ONCLASS,
    OWL_ONEOF,
    OWL_ONPROPERTY,
    OWL_PROPERTYCHAINAXIOM,
    OWL_PROPERTYDISJOINTWITH,
    OWL_RESTRICTION,
    OWL_SAMEAS,
    OWL_SOMEVALUESFROM,
    OWL_SOURCEINDIVIDUAL,
    OWL_TARGETINDIVIDUAL,
    RDF_FIRST,
    RDF_NIL,
    RDF_NS,
    RDF_REST,
    RDF_TYPE,
    RDFS_NS,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    SKOLEM_NS,
    XSD_NONNEGATIVEINTEGER,
    CkrVocabulary,
)
from ckrbench.rdf.dataset import Dataset, Quad
from ckrbench.rdf.terms import Term, blank, iri, literal

Triple = tuple[Term, Term, Term]
Minter = Callable[[], Term]

_ONE = literal("1", XSD_NONNEGATIVEINTEGER)


class BlankMinter:
    """Sequential blank-node factory for deterministic module authoring."""

    def __init__(self, prefix: str = "b", start: int = 0) -> None:
        self.prefix = prefix
        self.counter = itertools.count(start)

    def __call__(self) -> Term:
        return blank(f"{self.prefix}{next(self.counter)}")


_default_minter = BlankMinter(prefix="ax")


def skolem_minter(*parts: str) -> Minter:
    """Deterministic auxiliary-node factory keyed on the given parts.

    Same parts, same node sequence: re-materializing an inference graph
    reproduces it exactly.
    """
    counter = itertools.count()

    def mint() -> Term:
        payload = "\x1f".join(parts) + f"\x1f{next(counter)}"
        digest = hashlib.sha1(payload.encode("utf-8")).hexdigest()[:20]
        return iri(SKOLEM_NS + digest)

    return mint


def _is_aux(t: Term) -> bool:
    return t.kind == "blank" or (t.kind == "iri" and t.lexical.startswith(SKOLEM_NS))


def encode_axiom(
    ax: Axiom, mint: Minter | None = None, vocab: CkrVocabulary = DEFAULT_VOCAB
) -> list[Triple]:
    """Triples encoding one axiom (auxiliary nodes from ``mint``)."""
    mint = mint or _default_minter
    a = ax.args
    shape = ax.shape
    if shape == SUB_CLASS:
        return [(a[0], RDFS_SUBCLASSOF, a[1])]
    if shape == SUB_CLASS_NEG:
        n = mint()
        return [(a[0], RDFS_SUBCLASSOF, n), (n, OWL_COMPLEMENTOF, a[1])]
    if shape == SUB_HAS_VALUE:
        n = mint()
        return [
            (a[0], RDFS_SUBCLASSOF, n),
            (n, RDF_TYPE, OWL_RESTRICTION),
            (n, OWL_ONPROPERTY, a[1]),
            (n, OWL_HASVALUE, a[2]),
        ]
    if shape == SUB_CONJ:
        n, l1, l2 = mint(), mint(), mint()
        return [
            (n, RDFS_SUBCLASSOF, a[2]),
            (n, OWL_INTERSECTIONOF, l1),
            (l1, RDF_FIRST, a[0]),
            (l1, RDF_REST, l2),
            (l2, RDF_FIRST, a[1]),
            (l2, RDF_REST, RDF_NIL),
        ]
    if shape == SUB_EX:
        n = mint()
        return [
            (n, RDFS_SUBCLASSOF, a[2]),
            (n, RDF_TYPE, OWL_RESTRICTION),
            (n, OWL_ONPROPERTY, a[0]),
            (n, OWL_SOMEVALUESFROM, a[1]),
        ]
    if shape == SUP_ALL:
        n = mint()
        return [
            (a[0], RDFS_SUBCLASSOF, n),
            (n, RDF_TYPE, OWL_RESTRICTION),
            (n, OWL_ONPROPERTY, a[1]),
            (n, OWL_ALLVALUESFROM, a[2]),
        ]
    if shape == SUP_MAX1:
        n = mint()
        return [
            (a[0], RDFS_SUBCLASSOF, n),
            (n, RDF_TYPE, OWL_RESTRICTION),
            (n, OWL_ONPROPERTY, a[1]),
            (n, OWL_MAXQUALIFIEDCARDINALITY, _ONE),
            (n, OWL_ONCLASS, a[2]),
        ]
    if shape == CONCEPT_ASSERT:
        return [(a[1], RDF_TYPE, a[0])]
    if shape == ROLE_ASSERT:
        return [(a[1], a[0], a[2])]
    if shape == NEG_ROLE_ASSERT:
        n = mint()
        return [
            (n, RDF_TYPE, OWL_NEGATIVEPROPERTYASSERTION),
            (n, OWL_SOURCEINDIVIDUAL, a[1]),
            (n, OWL_ASSERTIONPROPERTY, a[0]),
            (n, OWL_TARGETINDIVIDUAL, a[2]),
        ]
    if shape == SAME:
        return [(a[0], OWL_SAMEAS, a[1])]
    if shape == DIFFERENT:
        return [(a[0], OWL_DIFFERENTFROM, a[1])]
    if shape == SUB_ROLE:
        return [(a[0], RDFS_SUBPROPERTYOF, a[1])]
    if shape == INV_ROLE:
        return [(a[0], OWL_INVERSEOF, a[1])]
    if shape == ROLE_CHAIN:
        l1, l2 = mint(), mint()
        return [
            (a[2], OWL_PROPERTYCHAINAXIOM, l1),
            (l1, RDF_FIRST, a[0]),
            (l1, RDF_REST, l2),
            (l2, RDF_FIRST, a[1]),
            (l2, RDF_REST, RDF_NIL),
        ]
    if shape == DIS_ROLE:
        return [(a[0], OWL_PROPERTYDISJOINTWITH, a[1])]
    if shape == IRR_ROLE:
        return [(a[0], RDF_TYPE, OWL_IRREFLEXIVEPROPERTY)]
    if shape in (EVAL_SUB_CLASS, EVAL_SUB_ROLE):
        n = mint()
        link = RDFS_SUBCLASSOF if shape == EVAL_SUB_CLASS else RDFS_SUBPROPERTYOF
        triples = [(n, vocab.eval_of, a[0]), (n, link, a[2])]
        if ax.nominal_ctx:
            m, cell = mint(), mint()
            triples += [
                (n, vocab.eval_in, m),
                (m, OWL_ONEOF, cell),
                (cell, RDF_FIRST, a[1]),
                (cell, RDF_REST, RDF_NIL),
            ]
        else:
            triples.append((n, vocab.eval_in, a[1]))
        return triples
    raise ValueError(f"unknown axiom shape: {shape!r}")  # pragma: no cover


def encode_axioms(
    dataset: Dataset,
    graph: Term,
    axioms: Iterable[Axiom],
    mint: Minter | None = None,
    vocab: CkrVocabulary = DEFAULT_VOCAB,
) -> int:
    """Encode axioms into one named graph; returns new-quad count."""
    mint = mint or _default_minter
    quads = [
        Quad(s, p, o, graph)
        for ax in axioms
        for (s, p, o) in encode_axiom(ax, mint, vocab)
    ]
    dataset.declare_graph(graph)
    return dataset.add_quads(quads)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_HANDLED_PREDICATES = {
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    OWL_INVERSEOF,
    OWL_PROPERTYCHAINAXIOM,
    OWL_PROPERTYDISJOINTWITH,
    OWL_SAMEAS,
    OWL_DIFFERENTFROM,
}

_COMPONENT_PREDICATES = {
    OWL_COMPLEMENTOF,
    OWL_ONPROPERTY,
    OWL_HASVALUE,
    OWL_SOMEVALUESFROM,
    OWL_ALLVALUESFROM,
    OWL_INTERSECTIONOF,
    OWL_MAXQUALIFIEDCARDINALITY,
    OWL_ONCLASS,
    OWL_ONEOF,
    OWL_SOURCEINDIVIDUAL,
    OWL_ASSERTIONPROPERTY,
    OWL_TARGETINDIVIDUAL,
    RDF_FIRST,
    RDF_REST,
    DEFAULT_VOCAB.eval_of,
    DEFAULT_VOCAB.eval_in,
}


class _GraphView:
    """Per-graph quad access with consumption tracking."""

    def __init__(self, dataset: Dataset, graph: Term) -> None:
        self.graph = graph
        self.quads = sorted(
            dataset.graph(graph), key=lambda q: (str(q.p), str(q.s), str(q.o))
        )
        self.by_s: dict[Term, list[Quad]] = {}
        self.by_p: dict[Term, list[Quad]] = {}
        for q in self.quads:
            self.by_s.setdefault(q.s, []).append(q)
            self.by_p.setdefault(q.p, []).append(q)
        self.consumed: set[Quad] = set()

    def props(self, s: Term) -> dict[Term, list[Quad]]:
        out: dict[Term, list[Quad]] = {}
        for q in self.by_s.get(s, ()):
            out.setdefault(q.p, []).append(q)
        return out

    def single(self, s: Term, p: Term) -> Quad | None:
        found = [q for q in self.by_s.get(s, ()) if q.p == p]
        return found[0] if len(found) == 1 else None

    def consume(self, *quads: Quad) -> None:
        self.consumed.update(quads)

    def rdf_list(self, node: Term) -> tuple[list[Term], list[Quad]] | None:
        """Decode an RDF collection; None when the chain is broken."""
        items: list[Term] = []
        spent: list[Quad] = []
        seen: set[Term] = set()
        while node != RDF_NIL:
            if node in seen or not _is_aux(node):
                return None
            seen.add(node)
            first = self.single(node, RDF_FIRST)
            rest = self.single(node, RDF_REST)
            if first is None or rest is None:
                return None
            items.append(first.o)
            spent += [first, rest]
            node = rest.o
        return items, spent


def _atomic(t: Term) -> bool:
    return t.kind == "iri" and not t.lexical.startswith(SKOLEM_NS)


def parse_axioms(
    dataset: Dataset,
    graph: Term,
    warnings: list[str] | None = None,
    vocab: CkrVocabulary = DEFAULT_VOCAB,
) -> set[Axiom]:
    """Decode one named graph into its normal-form axioms."""
    view = _GraphView(dataset, graph)
    axioms: set[Axiom] = set()
    warn = warnings.append if warnings is not None else (lambda _msg: None)

    def err(msg: str, node: Term) -> EncodingError:
        return EncodingError(f"{msg} (node {node!r}, graph {graph!r})")

    _decode_negative_assertions(view, axioms, err)
    _decode_subsumptions(view, axioms, warn, err, vocab)
    _decode_role_axioms(view, axioms, warn)
    _decode_assertions(view, axioms, warn, vocab)
    return axioms


def _decode_negative_assertions(view: _GraphView, axioms, err) -> None:
    for q in view.by_p.get(RDF_TYPE, ()):
        if q.o != OWL_NEGATIVEPROPERTYASSERTION:
            continue
        src = view.single(q.s, OWL_SOURCEINDIVIDUAL)
        prop = view.single(q.s, OWL_ASSERTIONPROPERTY)
        tgt = view.single(q.s, OWL_TARGETINDIVIDUAL)
        if src is None or prop is None or tgt is None:
            raise err("negative property assertion is missing a component", q.s)
        axioms.add(axiom(NEG_ROLE_ASSERT, prop.o, src.o, tgt.o))
        view.consume(q, src, prop, tgt)


def _decode_restriction(view, node, props, err):
    """(onProperty, filler kind, filler quads) of a restriction node."""
    on_prop = view.single(node, OWL_ONPROPERTY)
    if on_prop is None:
        raise err("restriction is missing owl:onProperty", node)
    return on_prop


def _decode_subsumptions(view, axioms, warn, err, vocab) -> None:
    for q in list(view.by_p.get(RDFS_SUBCLASSOF, ())):
        if q in view.consumed:
            continue
        sub, sup = q.s, q.o
        if _atomic(sub) and _atomic(sup):
            axioms.add(axiom(SUB_CLASS, sub, sup))
            view.consume(q)
            continue
        if _is_aux(sup) and _atomic(sub):
            props = view.props(sup)
            type_q = view.single(sup, RDF_TYPE)
            if OWL_COMPLEMENTOF in props:
                comp = props[OWL_COMPLEMENTOF][0]
                axioms.add(axiom(SUB_CLASS_NEG, sub, comp.o))
                view.consume(q, comp)
                continue
            if OWL_HASVALUE in props:
                on_prop = _decode_restriction(view, sup, props, err)
                value = props[OWL_HASVALUE][0]
                axioms.add(axiom(SUB_HAS_VALUE, sub, on_prop.o, value.o))
                view.consume(q, on_prop, value, *(props.get(RDF_TYPE, ())))
                continue
            if OWL_ALLVALUESFROM in props:
                on_prop = _decode_restriction(view, sup, props, err)
                filler = props[OWL_ALLVALUESFROM][0]
                axioms.add(axiom(SUP_ALL, sub, on_prop.o, filler.o))
                view.consume(q, on_prop, filler, *(props.get(RDF_TYPE, ())))
                continue
            if OWL_MAXQUALIFIEDCARDINALITY in props:
                on_prop = _decode_restriction(view, sup, props, err)
                card = props[OWL_MAXQUALIFIEDCARDINALITY][0]
                on_class = props.get(OWL_ONCLASS)
                if card.o.kind != "literal" or card.o.lexical != "1":
                    raise err(
                        f"unsupported cardinality {card.o.lexical!r} (only 1)", sup
                    )
                if not on_class:
                    raise err("qualified cardinality is missing owl:onClass", sup)
                axioms.add(axiom(SUP_MAX1, sub, on_prop.o, on_class[0].o))
                view.consume(q, on_prop, card, on_class[0], *(props.get(RDF_TYPE, ())))
                continue
            warn(f"unsupported superclass expression at {sup!r}")
            continue
        if _is_aux(sub):
            props = view.props(sub)
            if vocab.eval_of in props or vocab.eval_in in props:
                axioms.add(
                    _decode_eval(view, q, sub, props, EVAL_SUB_CLASS, err, vocab)
                )
                continue
            if OWL_INTERSECTIONOF in props:
                list_q = props[OWL_INTERSECTIONOF][0]
                decoded = view.rdf_list(list_q.o)
                if decoded is None:
                    raise err("broken owl:intersectionOf list", sub)
                items, spent = decoded
                if len(items) != 2 or not all(_atomic(t) for t in items):
                    warn(f"intersection at {sub!r} is not a binary normal form")
                    continue
                axioms.add(axiom(SUB_CONJ, items[0], items[1], sup))
                view.consume(q, list_q, *spent)
                continue
            if OWL_SOMEVALUESFROM in props:
                on_prop = _decode_restriction(view, sub, props, err)
                filler = props[OWL_SOMEVALUESFROM][0]
                axioms.add(axiom(SUB_EX, on_prop.o, filler.o, sup))
                view.consume(q, on_prop, filler, *(props.get(RDF_TYPE, ())))
                continue
        warn(f"unsupported class inclusion {sub!r} -> {sup!r}")

    for q in list(view.by_p.get(RDFS_SUBPROPERTYOF, ())):
        if q in view.consumed:
            continue
        sub, sup = q.s, q.o
        if _atomic(sub) and _atomic(sup):
            axioms.add(axiom(SUB_ROLE, sub, sup))
            view.consume(q)
        elif _is_aux(sub):
            props = view.props(sub)
            if vocab.eval_of in props or vocab.eval_in in props:
                axioms.add(_decode_eval(view, q, sub, props, EVAL_SUB_ROLE, err, vocab))
            else:
                warn(f"unsupported property inclusion at {sub!r}")
        else:
            warn(f"unsupported property inclusion {sub!r} -> {sup!r}")


def _decode_eval(view, link_q, node, props, shape, err, vocab) -> Axiom:
    of = props.get(vocab.eval_of)
    in_ = props.get(vocab.eval_in)
    if not of or not in_:
        raise err("eval encoding is missing a component", node)
    view.consume(link_q, of[0], in_[0])
    ctx_expr = in_[0].o
    if _atomic(ctx_expr):
        return axiom(shape, of[0].o, ctx_expr, link_q.o)
    one_of = view.single(ctx_expr, OWL_ONEOF)
    if one_of is None:
        raise err("eval context expression is neither a class nor a nominal", node)
    decoded = view.rdf_list(one_of.o)
    if decoded is None or len(decoded[0]) != 1 or not _atomic(decoded[0][0]):
        raise err("eval nominal must enumerate exactly one context", node)
    view.consume(one_of, *decoded[1])
    return axiom(shape, of[0].o, decoded[0][0], link_q.o, nominal_ctx=True)


def _decode_role_axioms(view, axioms, warn) -> None:
    simple = (
        (OWL_INVERSEOF, INV_ROLE),
        (OWL_PROPERTYDISJOINTWITH, DIS_ROLE),
        (OWL_SAMEAS, SAME),
        (OWL_DIFFERENTFROM, DIFFERENT),
    )
    for pred, shape in simple:
        for q in view.by_p.get(pred, ()):
            axioms.add(axiom(shape, q.s, q.o))
            view.consume(q)
    for q in view.by_p.get(OWL_PROPERTYCHAINAXIOM, ()):
        decoded = view.rdf_list(q.o)
        if decoded is None:
            warn(f"broken owl:propertyChainAxiom list at {q.s!r}")
            continue
        items, spent = decoded
        if len(items) != 2:
            warn(f"property chain at {q.s!r} is not a binary normal form")
            continue
        axioms.add(axiom(ROLE_CHAIN, items[0], items[1], q.s))
        view.consume(q, *spent)


def _decode_assertions(view, axioms, warn, vocab) -> None:
    reserved = (RDF_NS, RDFS_NS, OWL_NS)
    for q in view.quads:
        if q in view.consumed:
            continue
        if q.p == RDF_TYPE:
            if q.o == OWL_IRREFLEXIVEPROPERTY:
                axioms.add(axiom(IRR_ROLE, q.s))
            elif q.o.kind == "iri" and not q.o.lexical.startswith(reserved):
                axioms.add(axiom(CONCEPT_ASSERT, q.o, q.s))
            elif q.o == OWL_RESTRICTION:
                warn(f"dangling restriction node {q.s!r}")
            else:
                # inert class declarations (owl:Class and friends)
                pass
            continue
        if q.p in _HANDLED_PREDICATES or q.p in _COMPONENT_PREDICATES:
            if q.p in _COMPONENT_PREDICATES:
                warn(f"dangling {q.p.lexical.rsplit('#', 1)[-1]} triple at {q.s!r}")
            continue
        if q.p.lexical.startswith(reserved):
            warn(f"unrecognized reserved-vocabulary triple {q.s!r} {q.p!r} {q.o!r}")
            continue
        if q.p.lexical.startswith(CKR_NS) and q.p != vocab.mod_property:
            # contextual attributes and relations stay inert meta-triples
            continue
        if q.o.kind == "literal":
            # data values are carried through, not reasoned about
            continue
        axioms.add(axiom(ROLE_ASSERT, q.p, q.s, q.o))
