"""Observation tables: predicates, reductions and automaton derivations.

A table maps ``(row word, context)`` pairs to membership bits.  Row words are
split into a prefix-closed RED part and its one-symbol extensions BLUE; cells
are filled lazily through a teacher so no membership query is ever repeated
for the same cell.  Rows are compared as bit masks over the context list,
which keeps the closedness/coverability predicates cheap.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    EPSILON,
    Automaton,
    ContractError,
    InputError,
    Word,
)


class ObservationTable:
    """Membership observations for RED ∪ BLUE row words against a context list.

    The learning constructor starts from RED = E = {ε}.  ``from_rows`` builds a
    fully specified table directly, which the tests use for hand-made examples.
    Mutations preserve prefix-closure of RED and the identity
    BLUE = RED·Σ \\ RED; cells created by a mutation stay unset until
    ``fill`` asks the teacher for them.
    """

    def __init__(self, alphabet):
        symbols = tuple(sorted(alphabet))
        if len(set(symbols)) != len(symbols):
            raise InputError("duplicate alphabet symbol")
        self._alphabet = symbols
        self._sym_index = {a: i for i, a in enumerate(symbols)}
        self._red: list[Word] = [EPSILON]
        self._red_set = {EPSILON}
        self._contexts: list[Word] = [EPSILON]
        self._context_pos = {EPSILON: 0}
        self._cells: dict[Word, list] = {EPSILON: [None]}
        self._blue: list[Word] = []
        self._rebuild_blue()

    @classmethod
    def from_rows(cls, alphabet, red, contexts, rows):
        """Build a complete table from explicit bits.

        ``rows`` maps every word of RED ∪ (RED·Σ \\ RED) to its bit sequence,
        one bit per context.
        """
        table = cls.__new__(cls)
        symbols = tuple(sorted(alphabet))
        if len(set(symbols)) != len(symbols):
            raise InputError("duplicate alphabet symbol")
        table._alphabet = symbols
        table._sym_index = {a: i for i, a in enumerate(symbols)}
        red = [tuple(s) for s in red]
        if len(set(red)) != len(red):
            raise InputError("duplicate red word")
        for s in red:
            if s != EPSILON and s[:-1] not in set(red):
                raise ContractError(f"red is not prefix-closed at {s!r}")
        contexts = [tuple(e) for e in contexts]
        if len(set(contexts)) != len(contexts):
            raise InputError("duplicate context")
        table._red = red
        table._red_set = set(red)
        table._contexts = contexts
        table._context_pos = {e: j for j, e in enumerate(contexts)}
        table._cells = {}
        table._blue = []
        table._rebuild_blue()
        for w in table.words():
            if w not in rows:
                raise InputError(f"missing bits for {w!r}")
            bits = [int(bool(b)) for b in rows[w]]
            if len(bits) != len(contexts):
                raise InputError(f"row for {w!r} has wrong width")
            table._cells[w] = bits
        return table

    @classmethod
    def _assemble(cls, alphabet, red, contexts, cells):
        """Rebuild a table after surgery; skips the prefix-closure check."""
        table = cls.__new__(cls)
        table._alphabet = tuple(alphabet)
        table._sym_index = {a: i for i, a in enumerate(table._alphabet)}
        table._red = list(red)
        table._red_set = set(red)
        table._contexts = list(contexts)
        table._context_pos = {e: j for j, e in enumerate(table._contexts)}
        table._cells = {}
        table._blue = []
        table._rebuild_blue()
        for w in table.words():
            table._cells[w] = list(cells[w])
        return table

    # ------------------------------------------------------------------ views

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self._alphabet

    @property
    def red(self) -> tuple[Word, ...]:
        return tuple(self._red)

    @property
    def blue(self) -> tuple[Word, ...]:
        return tuple(self._blue)

    @property
    def contexts(self) -> tuple[Word, ...]:
        return tuple(self._contexts)

    def words(self):
        """Row words, RED first then BLUE, in stored order."""
        return tuple(self._red) + tuple(self._blue)

    def obs(self, s: Word, e: Word) -> int:
        row = self._cells.get(tuple(s))
        if row is None:
            raise InputError(f"word {s!r} not in table")
        j = self._context_pos.get(tuple(e))
        if j is None:
            raise InputError(f"context {e!r} not in table")
        bit = row[j]
        if bit is None:
            raise ContractError(f"cell ({s!r}, {e!r}) not filled")
        return bit

    def row(self, s: Word) -> tuple[int, ...]:
        row = self._cells.get(tuple(s))
        if row is None:
            raise InputError(f"word {s!r} not in table")
        if any(bit is None for bit in row):
            raise ContractError(f"row {s!r} not fully filled")
        return tuple(row)

    def _mask(self, s: Word) -> int:
        mask = 0
        for j, bit in enumerate(self.row(s)):
            if bit:
                mask |= 1 << j
        return mask

    def _lex_key(self, w: Word):
        return (len(w), tuple(self._sym_index[a] for a in w))

    # ------------------------------------------------------------- mutations

    def _rebuild_blue(self):
        blue = []
        for r in self._red:
            for a in self._alphabet:
                w = r + (a,)
                if w not in self._red_set:
                    blue.append(w)
        self._blue = blue
        width = len(self._contexts)
        for w in blue:
            if w not in self._cells:
                self._cells[w] = [None] * width

    def add_red(self, s: Word):
        """Promote ``s`` (a one-symbol extension of a red word) into RED."""
        s = tuple(s)
        if s in self._red_set:
            return self
        if s == EPSILON or s[:-1] not in self._red_set:
            raise ContractError(f"promoting {s!r} would break prefix-closure")
        self._red.append(s)
        self._red_set.add(s)
        if s not in self._cells:
            self._cells[s] = [None] * len(self._contexts)
        self._rebuild_blue()
        return self

    def add_context(self, e: Word):
        """Append context ``e``; a no-op when it is already present."""
        e = tuple(e)
        if e in self._context_pos:
            return self
        self._context_pos[e] = len(self._contexts)
        self._contexts.append(e)
        for w in self.words():
            self._cells[w].append(None)
        return self

    def fill(self, teacher):
        """Ask the teacher for every unset cell, in stored row/context order."""
        for w in self.words():
            row = self._cells[w]
            for j, e in enumerate(self._contexts):
                if row[j] is None:
                    row[j] = int(bool(teacher.mq(w + e)))
        return self

    # ------------------------------------------------------------ predicates

    def obviously_different(self, r: Word, s: Word) -> bool:
        """True iff some context tells the two rows apart."""
        return self.row(r) != self.row(s)

    def is_closed(self) -> Word | None:
        """None when closed, else the least blue word matching no red row."""
        red_values = {self.row(s) for s in self._red}
        violators = [s for s in self._blue if self.row(s) not in red_values]
        if not violators:
            return None
        return min(violators, key=self._lex_key)

    def is_consistent(self) -> Word | None:
        """None when consistent, else the least context ``a·e`` fixing a violation."""
        groups: dict[tuple[int, ...], list[Word]] = {}
        for s in self._red:
            groups.setdefault(self.row(s), []).append(s)
        clashes = [g for g in groups.values() if len(g) > 1]
        if not clashes:
            return None
        for a in self._alphabet:
            for e in self._contexts:
                for group in clashes:
                    bits = {self.obs(s + (a,), e) for s in group}
                    if len(bits) > 1:
                        return (a,) + e
        return None

    def row_includes(self, s1: Word, s2: Word) -> bool:
        """True iff every 1 of row(s1) is also a 1 of row(s2)."""
        return self._mask(s1) & ~self._mask(s2) == 0

    def is_row_coverable(self, s: Word, candidates) -> bool:
        """True iff row(s) equals the OR of the candidate rows strictly below it."""
        target = self._mask(s)
        union = 0
        for mask in {self._mask(c) for c in candidates}:
            if mask != target and mask & ~target == 0:
                union |= mask
        return union == target

    def _noncoverable_masks(self) -> set[int]:
        values = {self._mask(w) for w in self.words()}
        keep = set()
        for v in values:
            union = 0
            for u in values:
                if u != v and u & ~v == 0:
                    union |= u
            if union != v:
                keep.add(v)
        return keep

    def ncov_red(self) -> tuple[Word, ...]:
        """Least red representative of every non-coverable distinct red row."""
        keep = self._noncoverable_masks()
        reps: dict[int, Word] = {}
        for s in self._red:
            mask = self._mask(s)
            if mask in keep:
                if mask not in reps or self._lex_key(s) < self._lex_key(reps[mask]):
                    reps[mask] = s
        return tuple(sorted(reps.values(), key=self._lex_key))

    def is_rfsa_closed(self) -> Word | None:
        """None when every blue row is an OR of non-coverable red rows.

        Otherwise the least blue word whose row is non-coverable yet missing
        from RED, which is exactly the word the learner must promote.
        """
        keep = self._noncoverable_masks()
        red_values = {self._mask(s) for s in self._red}
        violators = [s for s in self._blue if self._mask(s) in keep and self._mask(s) not in red_values]
        if not violators:
            return None
        return min(violators, key=self._lex_key)

    def is_rfsa_consistent(self) -> Word | None:
        """None when row inclusion survives one-symbol extension, else the least fix ``a·e``."""
        masks = {s: self._mask(s) for s in self._red}
        pairs = [
            (s1, s2)
            for s1 in self._red
            for s2 in self._red
            if masks[s1] & ~masks[s2] == 0
        ]
        ext = {
            (s, a): self.row(s + (a,))
            for s in self._red
            for a in self._alphabet
        }
        for a in self._alphabet:
            for j, e in enumerate(self._contexts):
                for s1, s2 in pairs:
                    if ext[s1, a][j] == 1 and ext[s2, a][j] == 0:
                        return (a,) + e
        return None

    def _column_mask(self, e: Word) -> int:
        j = self._context_pos[tuple(e)]
        mask = 0
        for i, s in enumerate(self._red):
            if self.row(s)[j]:
                mask |= 1 << i
        return mask

    def is_column_coverable(self, e: Word) -> bool:
        """True iff the red part of col(e) is the OR of the other columns inside it."""
        e = tuple(e)
        if e not in self._context_pos:
            raise InputError(f"context {e!r} not in table")
        target = self._column_mask(e)
        union = 0
        for mask in {self._column_mask(e2) for e2 in self._contexts if tuple(e2) != e}:
            if mask != target and mask & ~target == 0:
                union |= mask
        return union == target

    # ------------------------------------------------------------------ dump

    def dump(self) -> str:
        """Tab-separated grid: contexts first, then red rows, ``--``, blue rows."""

        def label(w: Word) -> str:
            return "".join(w) if w else "^"

        lines = ["\t".join([""] + [label(e) for e in self._contexts])]
        for s in self._red:
            lines.append("\t".join([label(s)] + [str(b) for b in self._cells[s]]))
        lines.append("--")
        for s in self._blue:
            lines.append("\t".join([label(s)] + [str(b) for b in self._cells[s]]))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ModifiedTable:
    """A reduced table plus the pre-reduction empty-context bits of its red words."""

    table: ObservationTable
    eps_obs: dict[Word, int]


def _check_derivable(table: ObservationTable):
    if EPSILON not in table.contexts:
        raise ContractError("the empty context is required")
    if table.is_closed() is not None:
        raise ContractError("table is not closed")
    if table.is_consistent() is not None:
        raise ContractError("table is not consistent")


def derive_dfa_with_reps(table: ObservationTable) -> tuple[Automaton, tuple[Word, ...]]:
    """Automaton of a closed and consistent table plus one red word per state."""
    _check_derivable(table)
    if EPSILON not in set(table.red):
        raise ContractError("red must contain the empty word")
    reps: list[Word] = []
    index: dict[tuple[int, ...], int] = {}
    for s in table.red:
        value = table.row(s)
        if value not in index:
            index[value] = len(reps)
            reps.append(s)
    eps_at = table.contexts.index(EPSILON)
    arcs = []
    for i, s in enumerate(reps):
        for a in table.alphabet:
            arcs.append((i, a, index[table.row(s + (a,))]))
    finals = frozenset(i for i, s in enumerate(reps) if table.row(s)[eps_at])
    initial = frozenset({index[table.row(EPSILON)]})
    auto = Automaton(table.alphabet, len(reps), initial, finals, tuple(arcs))
    return auto, tuple(reps)


def derive_dfa(table: ObservationTable) -> Automaton:
    """Deterministic total automaton with one state per distinct red row."""
    return derive_dfa_with_reps(table)[0]


def apply_modifications(table: ObservationTable) -> ModifiedTable:
    """Reduce a closed and consistent table to its informative core.

    Keeps the least representative of every distinct red row and column, then
    removes all-zero rows and columns, then removes every column that is the
    OR of other remaining columns inside it (judged simultaneously).  The bits
    of the empty context are recorded for all surviving red words before the
    removals, since the reduction may drop that column.
    """
    _check_derivable(table)
    lex = table._lex_key

    row_reps: dict[tuple[int, ...], Word] = {}
    for s in table.red:
        value = table.row(s)
        if value not in row_reps or lex(s) < lex(row_reps[value]):
            row_reps[value] = s
    red1 = sorted(row_reps.values(), key=lex)

    def column_value(e, reds):
        return tuple(table.obs(s, e) for s in reds)

    col_reps: dict[tuple[int, ...], Word] = {}
    for e in table.contexts:
        value = column_value(e, red1)
        if value not in col_reps or lex(e) < lex(col_reps[value]):
            col_reps[value] = e
    cols1 = sorted(col_reps.values(), key=lex)

    eps_obs = {s: table.obs(s, EPSILON) for s in red1}

    red2 = [s for s in red1 if any(table.obs(s, e) for e in cols1)]
    cols2 = [e for e in cols1 if any(table.obs(s, e) for s in red1)]

    def mask(e):
        m = 0
        for i, s in enumerate(red2):
            if table.obs(s, e):
                m |= 1 << i
        return m

    masks = {e: mask(e) for e in cols2}
    cols3 = []
    for e in cols2:
        target = masks[e]
        union = 0
        for m in {masks[e2] for e2 in cols2 if e2 != e}:
            if m != target and m & ~target == 0:
                union |= m
        if union != target:
            cols3.append(e)

    red_set = set(red2)
    blue3 = [s + (a,) for s in red2 for a in table.alphabet if s + (a,) not in red_set]
    cells = {w: [table.obs(w, e) for e in cols3] for w in list(red2) + blue3}
    reduced = ObservationTable._assemble(table.alphabet, red2, cols3, cells)
    return ModifiedTable(reduced, {s: eps_obs[s] for s in red2})


def modified_row_automaton(modified: ModifiedTable) -> Automaton:
    """Row automaton of a reduced table, indexed by its red words.

    Transitions lead to the red word carrying the successor row; rows removed
    by the reduction leave the corresponding arcs out, so the machine may be
    partial.  Finals come from the retained pre-reduction empty-context bits.
    """
    table = modified.table
    reds = list(table.red)
    rep_index = {s: i for i, s in enumerate(reds)}
    value_index = {table.row(s): i for i, s in enumerate(reds)}
    arcs = []
    for s in reds:
        for a in table.alphabet:
            target = value_index.get(table.row(s + (a,)))
            if target is not None:
                arcs.append((rep_index[s], a, target))
    initial = {rep_index[EPSILON]} if EPSILON in rep_index else set()
    final = {rep_index[s] for s in reds if modified.eps_obs.get(s)}
    return Automaton(table.alphabet, len(reds), initial, final, tuple(arcs))


def derive_reversal_rfsa(modified: ModifiedTable) -> Automaton:
    """Nondeterministic acceptor with one state per column of the reduced table.

    A column stands for the set of red words carrying a 1 in it.  Arcs follow
    the reversed transitions of the (trimmed) row automaton: column q2 is an
    ``a``-successor of q1 when every member of q2 can reach some member of q1
    by one ``a``-step of the row automaton.  Start columns are those whose
    members all carried a 1 under the empty context before reduction; final
    columns are those containing the empty word.
    """
    table = modified.table
    eps_obs = modified.eps_obs
    reds = list(table.red)
    rep_index = {s: i for i, s in enumerate(reds)}
    inner = modified_row_automaton(modified)

    # usefulness of row states (reachable and co-reachable in the row automaton)
    fwd = set(inner.initial)
    stack = list(fwd)
    while stack:
        q = stack.pop()
        for a in inner.alphabet:
            for r in inner.step(q, a):
                if r not in fwd:
                    fwd.add(r)
                    stack.append(r)
    preds: dict[tuple[int, str], set[int]] = {}
    for q, a, ts in inner.transitions:
        for r in ts:
            preds.setdefault((r, a), set()).add(q)
    bwd = set(inner.final)
    stack = list(bwd)
    while stack:
        q = stack.pop()
        for a in inner.alphabet:
            for p in preds.get((q, a), ()):
                if p not in bwd:
                    bwd.add(p)
                    stack.append(p)
    useful = fwd & bwd

    column_sets = []
    for e in table.contexts:
        members = frozenset(rep_index[s] for s in reds if table.obs(s, e))
        column_sets.append(members)

    arcs = []
    for i, q1 in enumerate(column_sets):
        for a in table.alphabet:
            pred_union: set[int] = set()
            for q in q1 & useful:
                pred_union |= {p for p in preds.get((q, a), ()) if p in useful}
            for j, q2 in enumerate(column_sets):
                if q2 <= pred_union:
                    arcs.append((i, a, j))

    initial = frozenset(
        i for i, members in enumerate(column_sets) if all(eps_obs[reds[q]] for q in members)
    )
    eps_row = rep_index.get(EPSILON)
    final = frozenset(i for i, members in enumerate(column_sets) if eps_row in members)
    return Automaton(table.alphabet, len(column_sets), initial, final, tuple(arcs))


def derive_rfsa(table: ObservationTable) -> Automaton:
    """Nondeterministic acceptor with one state per non-coverable red row."""
    if table.is_rfsa_closed() is not None:
        raise ContractError("table is not RFSA-closed")
    if table.is_rfsa_consistent() is not None:
        raise ContractError("table is not RFSA-consistent")
    reps = table.ncov_red()
    if not reps:
        # every row is all zeros: the accepted language is empty
        return Automaton(table.alphabet, 0, frozenset(), frozenset(), ())
    if EPSILON not in table.contexts:
        raise ContractError("the empty context is required")
    if EPSILON not in set(table.red):
        raise ContractError("red must contain the empty word")
    masks = [table._mask(s) for s in reps]
    eps_at = table.contexts.index(EPSILON)
    root = table._mask(EPSILON)
    initial = frozenset(i for i, m in enumerate(masks) if m & ~root == 0)
    final = frozenset(i for i, s in enumerate(reps) if table.row(s)[eps_at])
    arcs = []
    for i, s in enumerate(reps):
        for a in table.alphabet:
            succ = table._mask(s + (a,))
            for j, m in enumerate(masks):
                if m & ~succ == 0:
                    arcs.append((i, a, j))
    return Automaton(table.alphabet, len(reps), initial, final, tuple(arcs))


def drop_zero_rows_and_columns(table: ObservationTable) -> ObservationTable:
    """Remove red words with all-zero rows and contexts with all-zero columns."""
    red = [s for s in table.red if any(table.row(s))]
    contexts = [e for e in table.contexts if any(table.obs(w, e) for w in table.words())]
    red_set = set(red)
    blue = [s + (a,) for s in red for a in table.alphabet if s + (a,) not in red_set]
    cells = {w: [table.obs(w, e) for e in contexts] for w in red + blue}
    return ObservationTable._assemble(table.alphabet, red, contexts, cells)
