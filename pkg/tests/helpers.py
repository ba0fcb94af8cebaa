"""Shared fixtures: small reference automata and table builders."""
from rfsalearn.automata import Automaton, word
from rfsalearn.tables import ObservationTable

AB = ("a", "b")


def even_a():
    """Words with an even number of a's; both residuals are prime."""
    return Automaton(AB, 2, {0}, {0}, [(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)])


def ends_a():
    """Words ending in a; residuals form a strict chain."""
    return Automaton(AB, 2, {0}, {1}, [(0, "a", 1), (0, "b", 0), (1, "a", 1), (1, "b", 0)])


def starts_a():
    """Words starting with a; the minimal machine has a failure state."""
    return Automaton(
        AB,
        3,
        {0},
        {1},
        [(0, "a", 1), (0, "b", 2), (1, "a", 1), (1, "b", 1), (2, "a", 2), (2, "b", 2)],
    )


def empty_lang():
    return Automaton(AB, 1, {0}, set(), [(0, "a", 0), (0, "b", 0)])


def universal_lang():
    return Automaton(AB, 1, {0}, {0}, [(0, "a", 0), (0, "b", 0)])


def nfa_ends_a():
    """Two-state guess-the-last-symbol NFA for words ending in a."""
    return Automaton(AB, 2, {0}, {1}, [(0, "a", 0), (0, "b", 0), (0, "a", 1)])


def third_from_end_a():
    """Third symbol from the end is a; minimal DFA tracks the last three symbols."""
    states = [(x, y, z) for x in "ab" for y in "ab" for z in "ab"]
    index = {s: i for i, s in enumerate(states)}
    arcs = [
        (index[(x, y, z)], c, index[(y, z, c)])
        for (x, y, z) in states
        for c in "ab"
    ]
    final = {i for s, i in index.items() if s[0] == "a"}
    return Automaton(AB, 8, {index[("b", "b", "b")]}, final, arcs)


def table_for(lang: Automaton, red, contexts) -> ObservationTable:
    """Observation table filled from a known language, no teacher involved."""
    red = [word(s) if isinstance(s, str) else tuple(s) for s in red]
    contexts = [word(e) if isinstance(e, str) else tuple(e) for e in contexts]
    red_set = set(red)
    rows = {}
    for s in red + [r + (a,) for r in red for a in lang.alphabet if r + (a,) not in red_set]:
        rows[s] = [int(lang.accepts(s + e)) for e in contexts]
    return ObservationTable.from_rows(lang.alphabet, red, contexts, rows)


def table_from_bits(red, contexts, red_bits, blue_bits=None, alphabet=AB):
    """Hand-made table; unspecified blue rows default to all zeros."""
    red = [word(s) if isinstance(s, str) else tuple(s) for s in red]
    contexts = [word(e) if isinstance(e, str) else tuple(e) for e in contexts]
    red_set = set(red)
    blue = [r + (a,) for r in red for a in alphabet if r + (a,) not in red_set]
    rows = {s: bits for s, bits in zip(red, red_bits)}
    blue_bits = blue_bits or {}
    for s in blue:
        rows[s] = blue_bits.get(s, [0] * len(contexts))
    return ObservationTable.from_rows(alphabet, red, contexts, rows)
