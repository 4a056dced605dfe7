"""Bruhat order, covering relation, intervals, subwords, and DOT export.

Two independent routes to the order are kept deliberately:

* ``bruhat_leq`` runs the classical descent recursion (iteratively), which
  works in any group without enumeration;
* ``BruhatTable`` builds the covering relation from reflections on an
  enumerated group and stores reachability bitmasks.

The two are cross-checked against each other and against the raw subword
definition in the test suite.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .rootsys import RootSystem, weyl_order
from .weyl import (
    GroupTooLargeError,
    WeylElement,
    enumerate_group,
    identity,
    inverse,
    is_reduced,
    length,
    perm_string,
    reduced_word,
    reflection,
    simple_reflection,
    smallest_left_descent,
)

__all__ = [
    "bruhat_leq",
    "covers",
    "covering_pairs",
    "interval",
    "subwords_with_value",
    "export_bruhat_graph",
    "BruhatTable",
    "get_table",
]

_TABLE_BUILD_LIMIT = 10000  # don't auto-build reachability tables beyond this


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """Descent recursion: for a left descent s of w, v <= w iff min(v,sv) <= sw."""
    if v.rs is not w.rs:
        raise ValueError("elements of different groups")
    rs = v.rs
    while True:
        if v == w:
            return True
        if length(v) >= length(w):
            return False
        i = smallest_left_descent(w)
        s = simple_reflection(rs, i)
        sv = s * v
        if length(sv) < length(v):
            v = sv
        w = s * w


class BruhatTable:
    """Reachability over the covering graph of a fully enumerated group."""

    def __init__(self, rs: RootSystem, cap: int = 60000):
        self.rs = rs
        self.elements = enumerate_group(rs, cap)
        self.index = {w.matrix: k for k, w in enumerate(self.elements)}
        n = len(self.elements)
        refls = [reflection(rs, b) for b in rs.positive_roots]
        # covers_down[k] = indices of elements covered by element k
        self.covers_down: list[list[int]] = [[] for _ in range(n)]
        self.covers_up: list[list[int]] = [[] for _ in range(n)]
        for k, w in enumerate(self.elements):
            lw = length(w)
            for t in refls:
                tw = t * w
                if length(tw) == lw - 1:
                    j = self.index[tw.matrix]
                    self.covers_down[k].append(j)
                    self.covers_up[j].append(k)
        for lst in self.covers_down:
            lst.sort()
        for lst in self.covers_up:
            lst.sort()
        # elements arrive sorted by length, so one forward/backward pass fills
        # the down-set / up-set bitmasks
        self.down = [0] * n
        for k in range(n):
            mask = 1 << k
            for j in self.covers_down[k]:
                mask |= self.down[j]
            self.down[k] = mask
        self.up = [0] * n
        for k in range(n - 1, -1, -1):
            mask = 1 << k
            for j in self.covers_up[k]:
                mask |= self.up[j]
            self.up[k] = mask

    def idx(self, w: WeylElement) -> int:
        return self.index[w.matrix]

    def leq(self, v: WeylElement, w: WeylElement) -> bool:
        return bool(self.down[self.idx(w)] >> self.idx(v) & 1)

    def interval_indices(self, v: WeylElement, w: WeylElement) -> list[int]:
        mask = self.up[self.idx(v)] & self.down[self.idx(w)]
        out = []
        k = 0
        while mask:
            if mask & 1:
                out.append(k)
            mask >>= 1
            k += 1
        return out


def get_table(rs: RootSystem, build_limit: int = _TABLE_BUILD_LIMIT) -> Optional[BruhatTable]:
    table = getattr(rs, "_bruhat_table", None)
    if table is None and weyl_order(rs.cartan_type) <= build_limit:
        table = BruhatTable(rs)
        rs._bruhat_table = table
    return table


def _leq(rs: RootSystem, v: WeylElement, w: WeylElement) -> bool:
    table = get_table(rs)
    if table is not None:
        return table.leq(v, w)
    return bruhat_leq(v, w)


def covers(v: WeylElement, w: WeylElement) -> bool:
    return length(v) == length(w) - 1 and _leq(v.rs, v, w)


def covering_pairs(rs: RootSystem, cap: int = 60000) -> list[tuple[WeylElement, WeylElement]]:
    table = get_table(rs, build_limit=cap)
    if table is None:
        raise GroupTooLargeError(weyl_order(rs.cartan_type), cap)
    out = []
    for k, w in enumerate(table.elements):
        for j in table.covers_down[k]:
            out.append((table.elements[j], w))
    out.sort(key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    return out


def interval(
    v: WeylElement, w: WeylElement
) -> tuple[list[WeylElement], list[tuple[WeylElement, WeylElement]]]:
    """Elements and Hasse edges of [v, w].  Requires v <= w."""
    rs = v.rs
    table = get_table(rs)
    if table is None:
        raise GroupTooLargeError(weyl_order(rs.cartan_type), _TABLE_BUILD_LIMIT)
    if not table.leq(v, w):
        raise ValueError("lower element is not below upper element in Bruhat order")
    idxs = table.interval_indices(v, w)
    inside = set(idxs)
    elements = [table.elements[k] for k in idxs]
    edges = []
    for k in idxs:
        for j in table.covers_down[k]:
            if j in inside:
                edges.append((table.elements[j], table.elements[k]))
    elements.sort(key=lambda x: x.sort_key())
    edges.sort(key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    return elements, edges


def subwords_with_value(
    rs: RootSystem,
    word: Sequence[int],
    target: WeylElement,
    reduced_only: bool = False,
    removal_filter: Optional[Callable[[list[int], int], bool]] = None,
    first_only: bool = False,
) -> list[tuple[int, ...]]:
    """All removal-position sets (1-based, ascending) whose complementary
    subword multiplies to ``target``.

    ``reduced_only`` keeps only subwords that are reduced words of the target.
    ``removal_filter(removed_so_far, position)`` may veto growing a removal
    set (used by the orthogonal-witness search); it must be monotone in the
    sense that a vetoed prefix cannot become acceptable later.  Results come
    in lexicographic order of removal sets; ``first_only`` stops at one.
    """
    word = tuple(word)
    l = len(word)
    if not is_reduced(rs, word):
        raise ValueError(f"word {word} is not reduced")
    gens = [simple_reflection(rs, i) for i in word]
    # suffix_value[k] = value of word[k:]; reduced, so subword values below it
    suffix = [identity(rs)] * (l + 1)
    for k in range(l - 1, -1, -1):
        suffix[k] = gens[k] * suffix[k + 1]
    lt = length(target)
    d_total = l - lt  # removals needed in reduced mode
    table = get_table(rs)

    def reachable(sigma: WeylElement, k: int) -> bool:
        need = inverse(sigma) * target
        if table is not None:
            return table.leq(need, suffix[k])
        return bruhat_leq(need, suffix[k])

    results: list[tuple[int, ...]] = []
    removed: list[int] = []

    def walk(k: int, sigma: WeylElement, kept: int) -> bool:
        if k == l:
            if sigma == target:
                results.append(tuple(removed))
                return first_only
            return False
        if not reachable(sigma, k):
            return False
        # remove branch first: removal sets come out lexicographically
        pos = k + 1
        if not (reduced_only and len(removed) >= d_total):
            if removal_filter is None or removal_filter(removed, k):
                removed.append(pos)
                if walk(k + 1, sigma, kept):
                    return True
                removed.pop()
        nxt = sigma * gens[k]
        if reduced_only and length(nxt) <= length(sigma):
            return False  # a non-reduced prefix can never give a reduced subword
        if reduced_only and kept >= lt:
            return False
        return walk(k + 1, nxt, kept + 1)

    walk(0, identity(rs), 0)
    return results


def _vertex_name(w: WeylElement) -> str:
    t = w.rs.cartan_type
    if len(t.components) == 1 and t.components[0][0] == "A":
        return perm_string(w)
    word = reduced_word(w)
    return "e" if not word else "s" + ".".join(str(i) for i in word)


def export_bruhat_graph(
    rs: RootSystem,
    highlight: Optional[set] = None,
    cap: int = 60000,
) -> str:
    """Graphviz DOT text of the Hasse diagram; edges in ``highlight`` (pairs
    of elements or matrix pairs) are flagged."""
    flagged = set()
    for pair in highlight or ():
        a, b = pair
        ma = a.matrix if isinstance(a, WeylElement) else a
        mb = b.matrix if isinstance(b, WeylElement) else b
        flagged.add((ma, mb))
    lines = ["digraph bruhat {", "  rankdir=BT;"]
    table = get_table(rs, build_limit=cap)
    if table is None:
        raise GroupTooLargeError(weyl_order(rs.cartan_type), cap)
    for w in table.elements:
        lines.append(f'  "{_vertex_name(w)}";')
    for v, w in covering_pairs(rs, cap):
        attr = ' [color=red, penwidth=2]' if (v.matrix, w.matrix) in flagged else ""
        lines.append(f'  "{_vertex_name(v)}" -> "{_vertex_name(w)}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
