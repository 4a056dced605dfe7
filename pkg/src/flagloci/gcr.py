"""Pairs (v, w) obtained from w by removing pairwise-orthogonal inversion
reflections, their enumeration, and the powerset structure of their
Bruhat intervals.

Three equivalent membership tests are implemented separately so they can be
cross-checked: a matrix eigenvalue count (``is_gcr_cond3``), an involution
plus reflection-length test (``is_gcr_cond4``), and an explicit witness
search inside a reduced word (``is_gcr_cond6``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .bruhat import BruhatTable, get_table, interval, subwords_with_value
from .rootsys import RootSystem, orthogonal, weyl_order
from .weyl import (
    GroupTooLargeError,
    WeylElement,
    from_word,
    inverse,
    is_involution,
    kernel_dim,
    length,
    longest_element,
    multiply,
    reduced_word,
    reflection,
    reflection_length,
    roots_of_word,
)

__all__ = [
    "GcrPair",
    "is_gcr_cond3",
    "is_gcr_cond4",
    "is_gcr_cond6",
    "make_gcr_pair",
    "enumerate_gcr",
    "GcrPoset",
    "pair_encloses",
    "sub_pairs",
    "verify_powerset_interval",
]


def _below(v: WeylElement, w: WeylElement) -> bool:
    # reuse a reachability table when one exists, but a single membership
    # test never justifies building one
    table = get_table(v.rs, build_limit=0)
    if table is not None:
        return table.leq(v, w)
    from .bruhat import bruhat_leq

    return bruhat_leq(v, w)


def is_gcr_cond3(v: WeylElement, w: WeylElement) -> bool:
    """v <= w and the (-1)-eigenspace of v w^{-1} has dim = length difference."""
    d = length(w) - length(v)
    if d < 0 or not _below(v, w):
        return False
    x = multiply(v, inverse(w))
    n = len(x.matrix)
    shifted = [
        [x.matrix[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)
    ]
    return kernel_dim(shifted) == d


def is_gcr_cond4(v: WeylElement, w: WeylElement) -> bool:
    """v <= w and v w^{-1} is an involution of reflection length = length difference."""
    d = length(w) - length(v)
    if d < 0 or not _below(v, w):
        return False
    x = multiply(v, inverse(w))
    if d == 0:
        return x.is_identity()
    return is_involution(x) and reflection_length(x) == d


def is_gcr_cond6(
    v: WeylElement, w: WeylElement
) -> Optional[tuple[tuple[int, ...], tuple[int, ...], tuple[tuple, ...]]]:
    """Search a reduced word of w for a reduced subword equal to v whose
    removed inversion roots are pairwise orthogonal.

    Returns (host_word, removed_positions, removed_roots) for the
    lexicographically first removal set, or None.
    """
    rs = w.rs
    d = length(w) - length(v)
    if d < 0:
        return None
    host = reduced_word(w)
    betas = roots_of_word(rs, host)

    def filt(removed: list[int], k: int) -> bool:
        return all(orthogonal(rs, betas[k], betas[p - 1]) for p in removed)

    hits = subwords_with_value(
        rs, host, v, reduced_only=True, removal_filter=filt, first_only=True
    )
    if not hits:
        return None
    positions = hits[0]
    roots = tuple(betas[p - 1] for p in positions)
    return host, positions, roots


@dataclass(frozen=True)
class GcrPair:
    """A witnessed pair: removing ``removed_positions`` from ``host_word``
    (a reduced word of w) leaves a reduced word of v, and the removed
    inversion roots are pairwise orthogonal."""

    v: WeylElement
    w: WeylElement
    d: int
    host_word: tuple[int, ...]
    removed_positions: tuple[int, ...]
    removed_roots: tuple[tuple, ...]

    def __post_init__(self):
        rs = self.w.rs
        assert self.d == length(self.w) - length(self.v) == len(self.removed_positions)
        assert from_word(rs, self.host_word) == self.w
        kept = tuple(
            s
            for k, s in enumerate(self.host_word, start=1)
            if k not in self.removed_positions
        )
        assert from_word(rs, kept) == self.v and len(kept) == length(self.v)
        betas = roots_of_word(rs, self.host_word)  # also validates reducedness
        for k, p in enumerate(self.removed_positions):
            assert betas[p - 1] == self.removed_roots[k]
        for a, b in itertools.combinations(self.removed_roots, 2):
            assert orthogonal(rs, a, b)
        # the removed reflections carry w back to v
        x = self.w
        for g in self.removed_roots:
            x = multiply(reflection(rs, g), x)
        assert x == self.v

    def key(self):
        return (self.w.sort_key(), self.v.sort_key())


def make_gcr_pair(v: WeylElement, w: WeylElement) -> GcrPair:
    witness = is_gcr_cond6(v, w)
    if witness is None:
        raise ValueError("pair admits no orthogonal removal witness")
    host, positions, roots = witness
    return GcrPair(v, w, len(positions), host, positions, roots)


def pair_encloses(outer: GcrPair, inner: GcrPair) -> bool:
    """True when [inner.v, inner.w] sits inside [outer.v, outer.w]."""
    rs = outer.w.rs
    table = get_table(rs)
    if table is not None:
        return table.leq(outer.v, inner.v) and table.leq(inner.w, outer.w)
    from .bruhat import bruhat_leq

    return bruhat_leq(outer.v, inner.v) and bruhat_leq(inner.w, outer.w)


class GcrPoset:
    """All witnessed pairs of a finite group, ordered by interval enclosure."""

    def __init__(self, rs: RootSystem, pairs: list[GcrPair]):
        self.rs = rs
        self.pairs = sorted(pairs, key=lambda p: p.key())

    def counts_by_d(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.pairs:
            out[p.d] = out.get(p.d, 0) + 1
        return dict(sorted(out.items()))

    def maximal_pairs(self) -> list[GcrPair]:
        """Pairs whose interval is not strictly contained in another pair's."""
        out = []
        for p in self.pairs:
            dominated = False
            for q in self.pairs:
                if q.d <= p.d:
                    continue  # a strict enclosure forces a longer interval
                if pair_encloses(q, p):
                    dominated = True
                    break
            if not dominated:
                out.append(p)
        return out


def enumerate_gcr(rs: RootSystem, cap: int = 60000) -> GcrPoset:
    table = get_table(rs, build_limit=cap)
    if table is None:
        raise GroupTooLargeError(weyl_order(rs.cartan_type), cap)
    els = table.elements
    bound = reflection_length(longest_element(rs))
    by_length: dict[int, list[int]] = {}
    for k, x in enumerate(els):
        by_length.setdefault(length(x), []).append(k)
    pairs = []
    for kw, w in enumerate(els):
        lw = length(w)
        down = table.down[kw]
        for lv in range(max(0, lw - bound), lw + 1):
            for kv in by_length.get(lv, ()):
                if not down >> kv & 1:
                    continue
                v = els[kv]
                if is_gcr_cond3(v, w):
                    pairs.append(make_gcr_pair(v, w))
    return GcrPoset(rs, pairs)


def sub_pairs(
    pair: GcrPair,
) -> list[tuple[tuple[int, ...], tuple[int, ...], WeylElement, WeylElement]]:
    """For disjoint J, K inside {1..d}: raise v by the J reflections, lower w
    by the K reflections.  Every (v_J, w_K) is again a witnessed pair."""
    rs = pair.w.rs
    refls = [reflection(rs, g) for g in pair.removed_roots]
    out = []
    idx = range(1, pair.d + 1)
    for jsize in range(pair.d + 1):
        for J in itertools.combinations(idx, jsize):
            rest = [i for i in idx if i not in J]
            for ksize in range(len(rest) + 1):
                for K in itertools.combinations(rest, ksize):
                    vj = pair.v
                    for j in J:
                        vj = multiply(refls[j - 1], vj)
                    wk = pair.w
                    for k in K:
                        wk = multiply(refls[k - 1], wk)
                    out.append((J, K, vj, wk))
    return out


def verify_powerset_interval(pair: GcrPair) -> bool:
    """Check that [v, w] is exactly {w_K : K subset of {1..d}} and that its
    Hasse diagram is the boolean one (w_K covered by w_{K minus a point})."""
    rs = pair.w.rs
    refls = [reflection(rs, g) for g in pair.removed_roots]
    idx = range(1, pair.d + 1)
    w_by_set: dict[frozenset, WeylElement] = {}
    for size in range(pair.d + 1):
        for K in itertools.combinations(idx, size):
            x = pair.w
            for k in K:
                x = multiply(refls[k - 1], x)
            w_by_set[frozenset(K)] = x
    if len({x.matrix for x in w_by_set.values()}) != 2**pair.d:
        return False
    elements, edges = interval(pair.v, pair.w)
    if {x.matrix for x in elements} != {x.matrix for x in w_by_set.values()}:
        return False
    mat_to_set = {x.matrix: K for K, x in w_by_set.items()}
    # order must be containment-reversing
    table = get_table(rs)
    for K, xk in w_by_set.items():
        for L, xl in w_by_set.items():
            if table.leq(xk, xl) != (L <= K):
                return False
    expected_edges = set()
    for K in w_by_set:
        for k in K:
            expected_edges.add((K, K - {k}))  # lower has the larger set
    got_edges = {(mat_to_set[a.matrix], mat_to_set[b.matrix]) for a, b in edges}
    return got_edges == expected_edges
