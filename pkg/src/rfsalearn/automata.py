"""Finite-state acceptors and the constructions the rest of the package builds on.

A single ``Automaton`` type covers DFAs, NFAs and partial machines; the
``is_deterministic`` / ``is_total`` properties report which contracts a given
value happens to satisfy.  Values are frozen and every construction returns a
fresh automaton, so they are safe to share between threads or processes.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

Word = tuple[str, ...]
EPSILON: Word = ()


def word(text: str) -> Word:
    """Split a plain string into a word over single-character symbols."""
    return tuple(text)


def reverse_word(w: Word) -> Word:
    return tuple(reversed(w))


class InputError(ValueError):
    """A caller passed a value outside the operation's domain."""


class ContractError(ValueError):
    """A documented precondition of the operation does not hold."""


class ParseError(ValueError):
    """Malformed automaton text; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Automaton:
    """Finite acceptor with integer states 0..n_states-1.

    ``transitions`` is kept as a sorted tuple of ``(state, symbol, targets)``
    entries with non-empty target sets; pairs that do not appear map to the
    empty set, so the transition relation is total as a mapping but the
    machine itself may be partial.
    """

    alphabet: tuple[str, ...]
    n_states: int
    initial: frozenset[int]
    final: frozenset[int]
    transitions: tuple[tuple[int, str, frozenset[int]], ...]
    _step: dict = field(init=False, repr=False, compare=False, default=None)
    _symbol_set: frozenset = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        symbols = tuple(self.alphabet)
        if len(set(symbols)) != len(symbols):
            raise InputError("duplicate alphabet symbol")
        for sym in symbols:
            if not sym or any(ch.isspace() for ch in sym) or sym.startswith("#"):
                raise InputError(f"bad alphabet symbol {sym!r}")
        symbols = tuple(sorted(symbols))
        order = {a: i for i, a in enumerate(symbols)}
        n = self.n_states
        if n < 0:
            raise InputError("negative state count")

        def check_state(q):
            if not isinstance(q, int) or not 0 <= q < n:
                raise InputError(f"state id {q!r} out of range 0..{n - 1}")
            return q

        initial = frozenset(check_state(q) for q in self.initial)
        final = frozenset(check_state(q) for q in self.final)

        grouped: dict[tuple[int, str], set[int]] = {}
        for entry in self.transitions:
            q, a, rest = entry[0], entry[1], entry[2]
            check_state(q)
            if a not in order:
                raise InputError(f"symbol {a!r} not in alphabet")
            targets = rest if isinstance(rest, (set, frozenset)) else {rest}
            for r in targets:
                check_state(r)
            grouped.setdefault((q, a), set()).update(targets)

        normal = tuple(
            (q, a, frozenset(ts))
            for (q, a), ts in sorted(grouped.items(), key=lambda kv: (kv[0][0], order[kv[0][1]]))
            if ts
        )
        object.__setattr__(self, "alphabet", symbols)
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "final", final)
        object.__setattr__(self, "transitions", normal)
        object.__setattr__(self, "_step", {(q, a): ts for q, a, ts in normal})
        object.__setattr__(self, "_symbol_set", frozenset(symbols))

    def step(self, q: int, a: str) -> frozenset[int]:
        return self._step.get((q, a), frozenset())

    def _check_word(self, w: Word) -> None:
        for a in w:
            if a not in self._symbol_set:
                raise InputError(f"symbol {a!r} not in alphabet")

    def run(self, sources, w: Word) -> frozenset[int]:
        """Set of states reachable from ``sources`` along ``w``."""
        self._check_word(w)
        current = frozenset(sources)
        for q in current:
            if not 0 <= q < self.n_states:
                raise InputError(f"state id {q!r} out of range")
        for a in w:
            nxt: set[int] = set()
            for q in current:
                nxt |= self.step(q, a)
            current = frozenset(nxt)
        return current

    def accepts(self, w: Word) -> bool:
        return bool(self.run(self.initial, w) & self.final)

    def accepts_from(self, q: int, w: Word) -> bool:
        """Membership of ``w`` in the language accepted when starting at ``q``."""
        if not 0 <= q < self.n_states:
            raise InputError(f"state id {q!r} out of range")
        return bool(self.run((q,), w) & self.final)

    @property
    def is_deterministic(self) -> bool:
        return len(self.initial) == 1 and all(len(ts) <= 1 for _, _, ts in self.transitions)

    @property
    def is_total(self) -> bool:
        pairs = {(q, a) for q, a, _ in self.transitions}
        return all((q, a) in pairs for q in range(self.n_states) for a in self.alphabet)


def reverse_automaton(a: Automaton) -> Automaton:
    """Swap initial and final states and invert every arc."""
    arcs = [(r, sym, q) for q, sym, ts in a.transitions for r in ts]
    return Automaton(a.alphabet, a.n_states, a.final, a.initial, tuple(arcs))


def _subset_construction(a: Automaton) -> tuple[Automaton, tuple[frozenset[int], ...]]:
    start = frozenset(a.initial)
    labels: list[frozenset[int]] = [start]
    index = {start: 0}
    arcs = []
    finals = set()
    i = 0
    while i < len(labels):
        p = labels[i]
        if p & a.final:
            finals.add(i)
        for sym in a.alphabet:
            target: set[int] = set()
            for q in p:
                target |= a.step(q, sym)
            t = frozenset(target)
            j = index.get(t)
            if j is None:
                j = index[t] = len(labels)
                labels.append(t)
            arcs.append((i, sym, j))
        i += 1
    out = Automaton(a.alphabet, len(labels), frozenset({0}), frozenset(finals), tuple(arcs))
    return out, tuple(labels)


def determinize(a: Automaton) -> Automaton:
    """Deterministic, total, language-equivalent automaton (subset construction)."""
    return _subset_construction(a)[0]


def determinize_labeled(a: Automaton) -> tuple[Automaton, tuple[frozenset[int], ...]]:
    """Like :func:`determinize` but also returns the source-state subset of each output state."""
    return _subset_construction(a)


def minimize(dfa: Automaton) -> Automaton:
    """Minimal total DFA with canonical state numbering.

    States are numbered in breadth-first order from the start state over the
    sorted alphabet, so two inputs with the same language produce identical
    values.
    """
    if not dfa.is_deterministic:
        raise ContractError("minimize requires a deterministic automaton")
    (q0,) = dfa.initial

    reachable = [q0]
    seen = {q0}
    pos = 0
    while pos < len(reachable):
        q = reachable[pos]
        pos += 1
        for a in dfa.alphabet:
            for r in dfa.step(q, a):
                if r not in seen:
                    seen.add(r)
                    reachable.append(r)

    dense = {q: i for i, q in enumerate(reachable)}
    n = len(reachable)
    delta: dict[tuple[int, str], int] = {}
    need_sink = False
    for q in reachable:
        for a in dfa.alphabet:
            ts = dfa.step(q, a)
            if ts:
                (r,) = ts
                delta[dense[q], a] = dense[r]
            else:
                need_sink = True
    if need_sink:
        sink = n
        n += 1
        for q in range(n):
            for a in dfa.alphabet:
                delta.setdefault((q, a), sink)
    finals = {dense[q] for q in dfa.final if q in dense}

    cls = [1 if q in finals else 0 for q in range(n)]
    while True:
        sig = {}
        new = [0] * n
        for q in range(n):
            key = (cls[q], tuple(cls[delta[q, a]] for a in dfa.alphabet))
            if key not in sig:
                sig[key] = len(sig)
            new[q] = sig[key]
        if len(sig) == len(set(cls)):
            break
        cls = new

    # breadth-first renumbering of the classes
    start_cls = cls[0]  # dense id 0 is the original start state
    number = {start_cls: 0}
    order = [start_cls]
    rep = {}
    for q in range(n):
        rep.setdefault(cls[q], q)
    pos = 0
    while pos < len(order):
        c = order[pos]
        pos += 1
        for a in dfa.alphabet:
            t = cls[delta[rep[c], a]]
            if t not in number:
                number[t] = len(order)
                order.append(t)
    arcs = [(number[c], a, number[cls[delta[rep[c], a]]]) for c in order for a in dfa.alphabet]
    out_final = frozenset(number[cls[q]] for q in finals)
    return Automaton(dfa.alphabet, len(order), frozenset({0}), out_final, tuple(arcs))


def trim(a: Automaton) -> Automaton:
    """Drop every useless state (unreachable or with no path to a final state)."""
    fwd = set(a.initial)
    queue = deque(fwd)
    while queue:
        q = queue.popleft()
        for sym in a.alphabet:
            for r in a.step(q, sym):
                if r not in fwd:
                    fwd.add(r)
                    queue.append(r)
    preds: dict[int, set[int]] = {}
    for q, _, ts in a.transitions:
        for r in ts:
            preds.setdefault(r, set()).add(q)
    bwd = set(a.final)
    queue = deque(bwd)
    while queue:
        q = queue.popleft()
        for p in preds.get(q, ()):
            if p not in bwd:
                bwd.add(p)
                queue.append(p)
    useful = sorted(fwd & bwd)
    remap = {q: i for i, q in enumerate(useful)}
    arcs = [
        (remap[q], sym, remap[r])
        for q, sym, ts in a.transitions
        if q in remap
        for r in ts
        if r in remap
    ]
    return Automaton(
        a.alphabet,
        len(useful),
        frozenset(remap[q] for q in a.initial if q in remap),
        frozenset(remap[q] for q in a.final if q in remap),
        tuple(arcs),
    )


def shortest_difference_witness(a: Automaton, b: Automaton) -> Word | None:
    """Length-lexicographically least word in the symmetric difference, if any.

    Works on arbitrary (possibly nondeterministic, partial) inputs by a
    breadth-first walk of the product of the two subset constructions, built
    lazily so only subset pairs actually reached are ever materialized; ties
    within a length are broken by alphabet order.
    """
    if a.alphabet != b.alphabet:
        raise InputError("alphabet mismatch")

    def stepped(aut: Automaton, subset: frozenset[int], sym: str) -> frozenset[int]:
        target: set[int] = set()
        for q in subset:
            target |= aut.step(q, sym)
        return frozenset(target)

    pa = frozenset(a.initial)
    pb = frozenset(b.initial)
    seen = {(pa, pb)}
    queue: deque[tuple[frozenset[int], frozenset[int], Word]] = deque([(pa, pb, EPSILON)])
    while queue:
        sa, sb, w = queue.popleft()
        if bool(sa & a.final) != bool(sb & b.final):
            return w
        for sym in a.alphabet:
            pair = (stepped(a, sa, sym), stepped(b, sb, sym))
            if pair not in seen:
                seen.add(pair)
                queue.append((pair[0], pair[1], w + (sym,)))
    return None


def _joint_colors(a: Automaton, b: Automaton) -> tuple[list[int], list[int]]:
    """Stable structural colors computed jointly so they compare across automata."""

    def preds(aut):
        p: dict[tuple[int, str], set[int]] = {}
        for q, sym, ts in aut.transitions:
            for r in ts:
                p.setdefault((r, sym), set()).add(q)
        return p

    pa, pb = preds(a), preds(b)
    ca = [(q in a.initial, q in a.final) for q in range(a.n_states)]
    cb = [(q in b.initial, q in b.final) for q in range(b.n_states)]
    index = {k: i for i, k in enumerate(sorted(set(ca) | set(cb)))}
    ca = [index[k] for k in ca]
    cb = [index[k] for k in cb]
    for _ in range(max(a.n_states, b.n_states) + 1):
        def key(aut, col, pred, q):
            out = tuple(tuple(sorted(col[r] for r in aut.step(q, s))) for s in aut.alphabet)
            inc = tuple(tuple(sorted(col[r] for r in pred.get((q, s), ()))) for s in aut.alphabet)
            return (col[q], out, inc)

        ka = [key(a, ca, pa, q) for q in range(a.n_states)]
        kb = [key(b, cb, pb, q) for q in range(b.n_states)]
        index = {k: i for i, k in enumerate(sorted(set(ka) | set(kb)))}
        na = [index[k] for k in ka]
        nb = [index[k] for k in kb]
        if len(set(na)) == len(set(ca)) and len(set(nb)) == len(set(cb)):
            return na, nb
        ca, cb = na, nb
    return ca, cb


def isomorphic(a: Automaton, b: Automaton) -> bool:
    """True iff some state bijection carries initial, final and arcs of ``a`` onto ``b``."""
    if a.alphabet != b.alphabet or a.n_states != b.n_states:
        return False
    if len(a.initial) != len(b.initial) or len(a.final) != len(b.final):
        return False
    if len(a.transitions) != len(b.transitions):
        return False
    ca, cb = _joint_colors(a, b)
    if sorted(ca) != sorted(cb):
        return False

    by_color: dict[int, list[int]] = {}
    for q, c in enumerate(cb):
        by_color.setdefault(c, []).append(q)
    order = sorted(range(a.n_states), key=lambda q: (len(by_color[ca[q]]), q))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(p: int, q: int) -> bool:
        for sym in a.alphabet:
            pt = a.step(p, sym)
            qt = b.step(q, sym)
            for p2, q2 in mapping.items():
                if (p2 in pt) != (q2 in qt):
                    return False
                if (p in a.step(p2, sym)) != (q in b.step(q2, sym)):
                    return False
            if (p in pt) != (q in qt):
                return False
        return True

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        for q in by_color[ca[p]]:
            if q in used or not consistent(p, q):
                continue
            mapping[p] = q
            used.add(q)
            if assign(i + 1):
                return True
            del mapping[p]
            used.remove(q)
        return False

    return assign(0)


def parse_automaton(text: str) -> Automaton:
    """Parse the line-based automaton format (strict; see :func:`format_automaton`)."""
    alphabet = None
    n_states = None
    initial = None
    final = None
    arcs: list[tuple[int, str, int, int]] = []
    last_line = 0

    def ints(tokens, line):
        out = []
        for t in tokens:
            try:
                out.append(int(t))
            except ValueError:
                raise ParseError(line, f"expected a state id, got {t!r}") from None
        if len(set(out)) != len(out):
            raise ParseError(line, "duplicate state id")
        return out

    for line_no, raw in enumerate(text.splitlines(), 1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(line_no, "expected 'key: value' form")
        key = key.strip()
        tokens = rest.split()
        if key == "alphabet":
            if alphabet is not None:
                raise ParseError(line_no, "duplicate alphabet: line")
            if len(set(tokens)) != len(tokens):
                raise ParseError(line_no, "duplicate alphabet symbol")
            alphabet = tuple(tokens)
        elif key == "states":
            if n_states is not None:
                raise ParseError(line_no, "duplicate states: line")
            if len(tokens) != 1:
                raise ParseError(line_no, "states: expects one count")
            (n_states,) = ints(tokens, line_no)
            if n_states < 0:
                raise ParseError(line_no, "negative state count")
        elif key == "initial":
            if initial is not None:
                raise ParseError(line_no, "duplicate initial: line")
            initial = (ints(tokens, line_no), line_no)
        elif key == "final":
            if final is not None:
                raise ParseError(line_no, "duplicate final: line")
            final = (ints(tokens, line_no), line_no)
        elif key == "trans":
            if len(tokens) != 3:
                raise ParseError(line_no, "trans: expects 'state symbol state'")
            src = ints([tokens[0]], line_no)[0]
            dst = ints([tokens[2]], line_no)[0]
            arcs.append((src, tokens[1], dst, line_no))
        else:
            raise ParseError(line_no, f"unknown key {key!r}")

    if alphabet is None:
        raise ParseError(last_line, "missing alphabet: line")
    if n_states is None:
        raise ParseError(last_line, "missing states: line")

    def check_ids(ids, line):
        for q in ids:
            if not 0 <= q < n_states:
                raise ParseError(line, f"state id {q} out of range 0..{n_states - 1}")

    init_ids, init_line = initial if initial is not None else ([], last_line)
    final_ids, final_line = final if final is not None else ([], last_line)
    check_ids(init_ids, init_line)
    check_ids(final_ids, final_line)
    triples = []
    for src, sym, dst, line_no in arcs:
        check_ids([src, dst], line_no)
        if sym not in alphabet:
            raise ParseError(line_no, f"symbol {sym!r} not in alphabet")
        triples.append((src, sym, dst))
    try:
        return Automaton(alphabet, n_states, frozenset(init_ids), frozenset(final_ids), tuple(triples))
    except InputError as exc:
        raise ParseError(last_line, str(exc)) from None


def format_automaton(a: Automaton) -> str:
    """Render the line-based text format; ``parse_automaton`` round-trips it."""
    lines = [
        "alphabet: " + " ".join(a.alphabet) if a.alphabet else "alphabet:",
        f"states: {a.n_states}",
        "initial: " + " ".join(str(q) for q in sorted(a.initial)) if a.initial else "initial:",
        "final: " + " ".join(str(q) for q in sorted(a.final)) if a.final else "final:",
    ]
    for q, sym, ts in a.transitions:
        for r in sorted(ts):
            lines.append(f"trans: {q} {sym} {r}")
    return "\n".join(lines) + "\n"
