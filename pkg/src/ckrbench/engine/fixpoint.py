"""Semi-naive fixpoint evaluation over integer-encoded facts.

Facts are tuples of dense term ids grouped per relation.  Each round fires
every rule with one body atom ranging over the previous round's delta and
the remaining atoms probing hash indexes on the full store; new conclusions
are merged at the round barrier.  The result is the least fixpoint of the
rule set and is independent of rule order, join order and delta scheduling
(the program is positive and monotone, and the store has set semantics).

Join order per rule and delta position is chosen statically: most-bound
atom first, which keeps the cross-context eval rule from fanning out over
every connection before the source context is known.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from ckrbench.errors import BudgetExceeded
from ckrbench.engine.rules import Pattern, Rule, Var

IntFact = tuple  # (id, id, ...) — relation kept outside the tuple

_CHECK_EVERY = 8192


class FactStore:
    """Per-relation fact sets with lazily built, incrementally maintained
    hash indexes keyed on argument positions."""

    __slots__ = ("rels", "_index_lists", "_index_map")

    def __init__(self) -> None:
        self.rels: dict[str, set[IntFact]] = {}
        self._index_lists: dict[str, list] = {}  # rel -> [(positions, dict)]
        self._index_map: dict[tuple[str, tuple[int, ...]], dict] = {}

    def facts(self, relation: str) -> set[IntFact]:
        return self.rels.setdefault(relation, set())

    def size(self, relation: str) -> int:
        bucket = self.rels.get(relation)
        return len(bucket) if bucket is not None else 0

    def __len__(self) -> int:
        return sum(len(s) for s in self.rels.values())

    def contains(self, relation: str, fact: IntFact) -> bool:
        bucket = self.rels.get(relation)
        return bucket is not None and fact in bucket

    def add(self, relation: str, fact: IntFact) -> bool:
        bucket = self.rels.get(relation)
        if bucket is None:
            bucket = self.rels[relation] = set()
        if fact in bucket:
            return False
        bucket.add(fact)
        indexes = self._index_lists.get(relation)
        if indexes:
            for positions, index in indexes:
                key = tuple(fact[p] for p in positions)
                hit = index.get(key)
                if hit is None:
                    index[key] = [fact]
                else:
                    hit.append(fact)
        return True

    def get_index(
        self, relation: str, positions: tuple[int, ...]
    ) -> dict[tuple, list[IntFact]]:
        index = self._index_map.get((relation, positions))
        if index is None:
            index = {}
            for fact in self.rels.get(relation, ()):
                k = tuple(fact[p] for p in positions)
                index.setdefault(k, []).append(fact)
            self._index_map[(relation, positions)] = index
            self._index_lists.setdefault(relation, []).append((positions, index))
        return index


# -- rule compilation -------------------------------------------------------


@dataclass(frozen=True)
class _Atom:
    relation: str
    consts: tuple[tuple[int, int], ...]  # (position, term id)
    binders: tuple[tuple[int, int], ...]  # (position, slot) first occurrence
    checks: tuple[tuple[int, int], ...]  # (position, slot) repeated occurrence


@dataclass(frozen=True)
class _JoinStep:
    atom: _Atom
    key_positions: tuple[int, ...]
    key_slots: tuple[int, ...]  # slots providing the key values
    key_consts: tuple[tuple[int, int], ...]  # (key index, term id)


@dataclass(frozen=True)
class _Plan:
    seed: _Atom
    steps: tuple[_JoinStep, ...]


@dataclass(frozen=True)
class CompiledRule:
    name: str
    head_relation: str
    head_code: tuple[tuple[str, int], ...]  # ("v", slot) | ("c", term id)
    plans: tuple[_Plan, ...]  # one per body position
    body_relations: tuple[str, ...]


def _compile_atom(pattern: Pattern, slots: dict[str, int], bound: set[int]) -> _Atom:
    consts: list[tuple[int, int]] = []
    binders: list[tuple[int, int]] = []
    checks: list[tuple[int, int]] = []
    fresh: set[int] = set()
    for pos, arg in enumerate(pattern.args):
        if isinstance(arg, Var):
            slot = slots.setdefault(arg.name, len(slots))
            if slot in bound or slot in fresh:
                checks.append((pos, slot))
            else:
                binders.append((pos, slot))
                fresh.add(slot)
        else:
            consts.append((pos, arg))  # term id patched in later
    return _Atom(pattern.relation, tuple(consts), tuple(binders), tuple(checks))


def compile_rule(rule: Rule, intern) -> CompiledRule:
    """Compile one rule; ``intern`` maps constant terms to ids."""
    plans: list[_Plan] = []
    slots: dict[str, int] = {}
    # Slot numbering must be identical across plans: pre-assign in body order.
    for pattern in rule.body:
        for arg in pattern.args:
            if isinstance(arg, Var):
                slots.setdefault(arg.name, len(slots))

    def atom_with_ids(pattern: Pattern, bound: set[int]) -> _Atom:
        atom = _compile_atom(pattern, slots, bound)
        return _Atom(
            atom.relation,
            tuple((pos, intern(term)) for pos, term in atom.consts),
            atom.binders,
            atom.checks,
        )

    for seed_index in range(len(rule.body)):
        bound: set[int] = set()
        seed = atom_with_ids(rule.body[seed_index], bound)
        bound |= {slot for _, slot in seed.binders}
        remaining = [p for i, p in enumerate(rule.body) if i != seed_index]
        steps: list[_JoinStep] = []
        while remaining:
            # Greedy: prefer the atom with the most bound positions.
            def boundness(p: Pattern) -> tuple[int, int]:
                n = 0
                for arg in p.args:
                    if not isinstance(arg, Var) or slots[arg.name] in bound:
                        n += 1
                return (n, -len(p.args))

            remaining.sort(key=boundness, reverse=True)
            pattern = remaining.pop(0)
            atom = atom_with_ids(pattern, bound)
            key_positions: list[int] = []
            key_slots: list[int] = []
            key_consts: list[tuple[int, int]] = []
            for pos, term_id in atom.consts:
                key_consts.append((len(key_positions), term_id))
                key_positions.append(pos)
            for pos, slot in atom.checks:
                if slot in bound:
                    key_slots.append(slot)
                    key_positions.append(pos)
            # checks on slots bound within this same atom stay as post-checks
            post_checks = tuple(
                (pos, slot) for pos, slot in atom.checks if slot not in bound
            )
            atom = _Atom(atom.relation, (), atom.binders, post_checks)
            steps.append(
                _JoinStep(
                    atom,
                    tuple(key_positions),
                    tuple(key_slots),
                    tuple(key_consts),
                )
            )
            bound |= {slot for _, slot in atom.binders}
        plans.append(_Plan(seed, tuple(steps)))

    head_code = tuple(
        ("v", slots[a.name]) if isinstance(a, Var) else ("c", intern(a))
        for a in rule.head.args
    )
    return CompiledRule(
        rule.name,
        rule.head.relation,
        head_code,
        tuple(plans),
        tuple(p.relation for p in rule.body),
    )


def compile_rules(rules, intern) -> list[CompiledRule]:
    return [compile_rule(r, intern) for r in rules]


# -- evaluation -------------------------------------------------------------


class _Budget:
    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline: float | None) -> None:
        self.deadline = deadline
        self.ticks = 0

    def tick(self, n: int = 1) -> None:
        if self.deadline is None:
            return
        self.ticks += n
        if self.ticks >= _CHECK_EVERY:
            self.ticks = 0
            if time.perf_counter() > self.deadline:
                raise BudgetExceeded("closure time budget exhausted")

    def check(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise BudgetExceeded("closure time budget exhausted")


def _fire(
    rule: CompiledRule,
    plan: _Plan,
    seed_facts,
    store: FactStore,
    out: dict[str, set[IntFact]],
    budget: _Budget,
) -> None:
    seed = plan.seed
    steps = plan.steps
    head_code = rule.head_code
    existing = store.facts(rule.head_relation)
    bucket = out.setdefault(rule.head_relation, set())
    binding: list = [None] * 16  # rules bind a handful of slots
    # One index-dict resolution per step per firing, not per probe.
    step_indexes = [store.get_index(s.atom.relation, s.key_positions) for s in steps]
    last = len(steps)

    def join(level: int) -> None:
        if level == last:
            head = tuple(
                [binding[idx] if tag == "v" else idx for tag, idx in head_code]
            )
            if head not in existing and head not in bucket:
                bucket.add(head)
            return
        step = steps[level]
        slots = step.key_slots
        if step.key_consts:
            key_list = [binding[s] for s in slots]
            for key_index, term_id in step.key_consts:
                key_list.insert(key_index, term_id)
            key = tuple(key_list)
        elif len(slots) == 1:
            key = (binding[slots[0]],)
        elif len(slots) == 2:
            key = (binding[slots[0]], binding[slots[1]])
        else:
            key = tuple([binding[s] for s in slots])
        candidates = step_indexes[level].get(key)
        if not candidates:
            return
        binders = step.atom.binders
        checks = step.atom.checks
        for fact in candidates:
            ok = True
            for pos, slot in checks:
                if binding[slot] != fact[pos]:
                    ok = False
                    break
            if not ok:
                continue
            for pos, slot in binders:
                binding[slot] = fact[pos]
            join(level + 1)

    consts = seed.consts
    checks = seed.checks
    binders = seed.binders
    for fact in seed_facts:
        budget.tick()
        ok = True
        for pos, term_id in consts:
            if fact[pos] != term_id:
                ok = False
                break
        if not ok:
            continue
        for pos, slot in binders:
            binding[slot] = fact[pos]
        for pos, slot in checks:
            if binding[slot] != fact[pos]:
                ok = False
                break
        if ok:
            join(0)


def run_fixpoint(
    store: FactStore,
    rules: list[CompiledRule],
    deadline: float | None = None,
) -> int:
    """Saturate the store under the rules; returns the number of new facts."""
    budget = _Budget(deadline)
    delta: dict[str, set[IntFact]] = {
        rel: set(facts) for rel, facts in store.rels.items() if facts
    }
    added_total = 0
    while delta:
        budget.check()
        out: dict[str, set[IntFact]] = {}
        for rule in rules:
            # A rule cannot fire while any of its body relations is empty.
            if any(not store.size(rel) for rel in rule.body_relations):
                continue
            for plan in rule.plans:
                seed_facts = delta.get(plan.seed.relation)
                if seed_facts:
                    _fire(rule, plan, seed_facts, store, out, budget)
        new_delta: dict[str, set[IntFact]] = {}
        for rel, facts in out.items():
            fresh = {f for f in facts if store.add(rel, f)}
            if fresh:
                new_delta[rel] = fresh
                added_total += len(fresh)
        delta = new_delta
    return added_total
