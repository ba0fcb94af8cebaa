"""The four table-based learners.

``lstar_col`` and ``nlstar`` are the incremental algorithms: grow the table
until its closedness/consistency conditions hold, submit the derived machine,
and on a counterexample add all of its suffixes as contexts.  The two-step
learners run ``lstar_col`` first (against the reversed language for
``two_step_reversal``), complete the finished table with a few membership
queries, and then read the answer off the table without further equivalence
queries.
"""
from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass

from .automata import (
    Automaton,
    Word,
    determinize_labeled,
    reverse_automaton,
    reverse_word,
    shortest_difference_witness,
    trim,
)
from .tables import (
    ModifiedTable,
    ObservationTable,
    apply_modifications,
    derive_rfsa,
    derive_dfa,
    derive_dfa_with_reps,
    derive_reversal_rfsa,
    drop_zero_rows_and_columns,
)
from .teacher import QueryStats, reversal_teacher


class DiagnosticError(RuntimeError):
    """A learner detected a state that its algorithm promises cannot happen."""


@dataclass
class LearnerResult:
    hypothesis: Automaton
    final_table: ObservationTable | ModifiedTable
    stats: QueryStats
    iterations: int


def _add_suffixes(table: ObservationTable, counterexample: Word):
    for i in range(len(counterexample), -1, -1):
        table.add_context(counterexample[i:])


def lstar_col(teacher) -> LearnerResult:
    """Column-based learner for the minimal DFA; counterexample suffixes become contexts."""
    table = ObservationTable(teacher.alphabet)
    table.fill(teacher)
    rounds = 0
    while True:
        while True:
            violator = table.is_closed()
            if violator is not None:
                table.add_red(violator)
                table.fill(teacher)
                continue
            fix = table.is_consistent()
            if fix is not None:
                table.add_context(fix)
                table.fill(teacher)
                continue
            break
        hypothesis = derive_dfa(table)
        rounds += 1
        counterexample = teacher.eq(hypothesis)
        if counterexample is None:
            return LearnerResult(hypothesis, table, teacher.stats.snapshot(), rounds)
        _add_suffixes(table, counterexample)
        table.fill(teacher)


def nlstar(teacher, iteration_cap: int | None = None) -> LearnerResult:
    """Direct learner for the canonical RFSA via the weakened table conditions.

    ``iteration_cap`` bounds the total number of table fixes plus equivalence
    rounds; exceeding it raises :class:`DiagnosticError` instead of looping.
    """
    cap = iteration_cap if iteration_cap is not None else 4**10
    table = ObservationTable(teacher.alphabet)
    table.fill(teacher)
    rounds = 0
    steps = 0

    def tick():
        nonlocal steps
        steps += 1
        if steps > cap:
            raise DiagnosticError(f"no fixpoint after {cap} steps")

    while True:
        while True:
            violator = table.is_rfsa_closed()
            if violator is not None:
                tick()
                table.add_red(violator)
                table.fill(teacher)
                continue
            fix = table.is_rfsa_consistent()
            if fix is not None:
                tick()
                table.add_context(fix)
                table.fill(teacher)
                continue
            break
        hypothesis = derive_rfsa(table)
        rounds += 1
        tick()
        counterexample = teacher.eq(hypothesis)
        if counterexample is None:
            return LearnerResult(hypothesis, table, teacher.stats.snapshot(), rounds)
        _add_suffixes(table, counterexample)
        table.fill(teacher)


def _shortest_words_from(auto: Automaton, start: int) -> dict[int, Word]:
    """Length-lexicographically least word from ``start`` to each reachable state."""
    words = {start: ()}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for a in auto.alphabet:
            for r in auto.step(q, a):
                if r not in words:
                    words[r] = words[q] + (a,)
                    queue.append(r)
    return words


def _separating_word(auto: Automaton, p: int, q: int) -> Word | None:
    """Least word accepted from ``p`` but not from ``q`` on a total DFA, if any."""
    seen = {(p, q)}
    queue: deque[tuple[int, int, Word]] = deque([(p, q, ())])
    while queue:
        sp, sq, w = queue.popleft()
        if sp in auto.final and sq not in auto.final:
            return w
        for a in auto.alphabet:
            (tp,) = auto.step(sp, a)
            (tq,) = auto.step(sq, a)
            if (tp, tq) not in seen:
                seen.add((tp, tq))
                queue.append((tp, tq, w + (a,)))
    return None


def _residual_order_contexts(auto: Automaton) -> list[Word]:
    """Contexts that make table rows mirror the residual structure of ``auto``.

    For every ordered state pair whose residuals are not included one in the
    other, the least witness of that non-inclusion; and for every state whose
    residual exceeds the union of the residuals strictly inside it, the least
    witness of that excess.  Over these contexts row inclusion coincides with
    residual inclusion and row coverability with residual composedness, which
    is what reading an RFSA off the finished table requires.
    """
    n = auto.n_states
    contexts: list[Word] = []
    included: dict[tuple[int, int], bool] = {}
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            witness = _separating_word(auto, p, q)
            included[p, q] = witness is None
            if witness is not None:
                contexts.append(witness)
    for q in range(n):
        below = frozenset(p for p in range(n) if p != q and included[p, q])
        union_nfa = dataclasses.replace(auto, initial=below)
        single = dataclasses.replace(auto, initial=frozenset({q}))
        witness = shortest_difference_witness(single, union_nfa)
        if witness is not None:
            contexts.append(witness)
    return contexts


def two_step_reversal(session) -> LearnerResult:
    """Learn the reversed language's minimal DFA, then read off the canonical RFSA.

    After the first step the table is completed so that every non-coverable
    reachable state set of the reversed row automaton appears as a column:
    each such set is hit by some word, and the reversal of that word is the
    context realizing it.  The completion costs membership queries only; the
    reduction and derivation that follow issue no queries at all.
    """
    rev = reversal_teacher(session)
    first = lstar_col(rev)
    table = first.final_table

    row_auto, _ = derive_dfa_with_reps(table)
    b = reverse_automaton(trim(row_auto))
    det, labels = determinize_labeled(b)
    (det_start,) = det.initial
    words = _shortest_words_from(det, det_start)
    members = list(labels)
    for i, subset in enumerate(members):
        union: set[int] = set()
        for other in members:
            if other != subset and other <= subset:
                union |= other
        if union != subset:
            table.add_context(reverse_word(words[i]))
    table.fill(rev)

    modified = apply_modifications(table)
    hypothesis = derive_reversal_rfsa(modified)
    return LearnerResult(hypothesis, modified, session.stats.snapshot(), first.iterations)


def two_step_prime_contexts(teacher) -> LearnerResult:
    """Learn the minimal DFA directly, then pin every accepting state with a context.

    For every red word and every accepting state of the row automaton, the
    shortest word leading there becomes a context (unreachable pairs are
    skipped, duplicates are no-ops).  After filling those cells the table is
    reduced by dropping all-zero rows and columns and must satisfy the
    weakened closedness/consistency conditions; the answer is read off it
    without any further equivalence query.
    """
    first = lstar_col(teacher)
    table = first.final_table

    row_auto, reps = derive_dfa_with_reps(table)
    state_of = {table.row(rep): i for i, rep in enumerate(reps)}
    start_states = [(s, state_of[table.row(s)]) for s in table.red]
    for s, start in start_states:
        reach = _shortest_words_from(row_auto, start)
        for target in sorted(row_auto.final):
            if target in reach:
                table.add_context(reach[target])

    # Pinning contexts alone do not make row order mirror residual inclusion,
    # so a prime row could still look like the OR of rows below it and drop
    # out of the derived machine.  Witness the residual structure of the
    # verified row automaton explicitly; this costs membership queries only.
    for context in _residual_order_contexts(row_auto):
        table.add_context(context)
    table.fill(teacher)

    reduced = drop_zero_rows_and_columns(table)
    if reduced.is_rfsa_closed() is not None:
        raise DiagnosticError("completed table is not RFSA-closed")
    if reduced.is_rfsa_consistent() is not None:
        raise DiagnosticError("completed table is not RFSA-consistent")
    hypothesis = derive_rfsa(reduced)
    return LearnerResult(hypothesis, reduced, teacher.stats.snapshot(), first.iterations)
