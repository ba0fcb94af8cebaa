"""Residual languages of a regular language and the canonical RFSA built from them.

Everything here works on exact language comparisons (product reachability on
determinized machines), never on bounded word enumeration, so the results
serve as independent oracles for the learners.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from itertools import combinations

from .automata import (
    Automaton,
    ContractError,
    InputError,
    determinize_labeled,
    minimize,
    reverse_automaton,
    shortest_difference_witness,
)


@dataclass(frozen=True)
class ResidualIndex:
    """Residuals of a language, one per state of its minimal DFA.

    ``includes[i][j]`` says the residual of state ``i`` is a subset of the
    residual of state ``j``.
    """

    base: Automaton
    includes: tuple[tuple[bool, ...], ...]


def _require_minimal(l_dfa: Automaton):
    if minimize(l_dfa) != l_dfa:
        raise ContractError("expected a minimal DFA in canonical numbering")


def residual_index(l_dfa: Automaton) -> ResidualIndex:
    """Inclusion matrix of the residuals, via product reachability."""
    _require_minimal(l_dfa)
    n = l_dfa.n_states

    def included(q1: int, q2: int) -> bool:
        # L_q1 ⊆ L_q2 iff no reachable pair is (final, non-final)
        seen = {(q1, q2)}
        stack = [(q1, q2)]
        while stack:
            p1, p2 = stack.pop()
            if p1 in l_dfa.final and p2 not in l_dfa.final:
                return False
            for a in l_dfa.alphabet:
                (t1,) = l_dfa.step(p1, a)
                (t2,) = l_dfa.step(p2, a)
                if (t1, t2) not in seen:
                    seen.add((t1, t2))
                    stack.append((t1, t2))
        return True

    matrix = tuple(tuple(included(q1, q2) for q2 in range(n)) for q1 in range(n))
    return ResidualIndex(l_dfa, matrix)


def is_prime(index: ResidualIndex, q: int) -> bool:
    """True iff the residual of ``q`` exceeds the union of those strictly inside it."""
    base = index.base
    if not 0 <= q < base.n_states:
        raise InputError(f"state id {q!r} out of range")
    strictly_below = frozenset(
        p for p in range(base.n_states) if p != q and index.includes[p][q]
    )
    union_nfa = dataclasses.replace(base, initial=strictly_below)
    single = dataclasses.replace(base, initial=frozenset({q}))
    return shortest_difference_witness(union_nfa, single) is not None


def canonical_rfsa(l_dfa: Automaton) -> Automaton:
    """The acceptor whose states are exactly the prime residuals.

    States follow the order of the minimal DFA's states; start states are the
    primes inside the whole language, finals the primes containing the empty
    word, and arcs go to every prime inside the stepped residual.
    """
    index = residual_index(l_dfa)
    primes = [q for q in range(l_dfa.n_states) if is_prime(index, q)]
    number = {q: i for i, q in enumerate(primes)}
    (start,) = l_dfa.initial
    initial = frozenset(number[q] for q in primes if index.includes[q][start])
    final = frozenset(number[q] for q in primes if q in l_dfa.final)
    arcs = []
    for q in primes:
        for a in l_dfa.alphabet:
            (t,) = l_dfa.step(q, a)
            for p in primes:
                if index.includes[p][t]:
                    arcs.append((number[q], a, number[p]))
    result = Automaton(l_dfa.alphabet, len(primes), initial, final, tuple(arcs))
    if shortest_difference_witness(result, l_dfa) is not None:
        raise RuntimeError("canonical RFSA construction changed the language")
    return result


@dataclass(frozen=True)
class StateSetFamily:
    """The state subsets of ``ground`` reachable from its start set by some word."""

    ground: Automaton
    members: tuple[frozenset[int], ...]


def reachable_state_sets(b: Automaton) -> StateSetFamily:
    _, labels = determinize_labeled(b)
    return StateSetFamily(b, labels)


def is_coverable_state(p, family: StateSetFamily) -> bool:
    """True iff ``p`` is the union of the other family members inside it."""
    p = frozenset(p)
    if p not in set(family.members):
        raise InputError("state set not in family")
    union: set[int] = set()
    for member in family.members:
        if member != p and member <= p:
            union |= member
    return union == p


def c_of_b(b: Automaton) -> Automaton:
    """Acceptor on the non-coverable reachable state sets of ``b``.

    Expects ``b`` to be the reversal of a trimmed deterministic machine, in
    which case the result is the canonical RFSA of ``b``'s language.
    """
    family = reachable_state_sets(b)
    members = [p for p in family.members if not is_coverable_state(p, family)]
    number = {p: i for i, p in enumerate(members)}
    initial = frozenset(number[p] for p in members if p <= b.initial)
    final = frozenset(number[p] for p in members if p & b.final)
    arcs = []
    for p in members:
        for a in b.alphabet:
            stepped = b.run(p, (a,))
            for p2 in members:
                if p2 <= stepped:
                    arcs.append((number[p], a, number[p2]))
    return Automaton(b.alphabet, len(members), initial, final, tuple(arcs))


def min_distinguishing_context_count(l_dfa: Automaton, budget: int = 4) -> int:
    """Least number of realizable context columns that pairwise-separate all states.

    Candidate columns are every acceptance vector some context can realize,
    enumerated as the reachable state sets of the reversed machine.  Searches
    subsets exhaustively, so inputs are capped at ``budget`` states.
    """
    _require_minimal(l_dfa)
    n = l_dfa.n_states
    if n > budget:
        raise InputError(f"state count {n} exceeds the brute-force budget {budget}")
    candidates = list(dict.fromkeys(reachable_state_sets(reverse_automaton(l_dfa)).members))
    pairs = [(q1, q2) for q1 in range(n) for q2 in range(q1 + 1, n)]
    for k in range(len(candidates) + 1):
        for chosen in combinations(candidates, k):
            if all(any((q1 in c) != (q2 in c) for c in chosen) for q1, q2 in pairs):
                return k
    raise RuntimeError("realizable columns failed to separate a minimal DFA")
