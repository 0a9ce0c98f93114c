"""Quasi-reduced diagrams: every edge spans exactly one level.

A quasi-reduced diagram is what the complete decision tree becomes when only
the duplicate-triple rule is applied: nodes with equal children survive, every
root-to-terminal path has length n, and the form is canonical for the
function.  It is the required input shape for the chain-removal reduction in
:mod:`resilient_obdd.indexres`.

Two routes lead here.  :func:`build_qr` hash-conses the form directly from any
diagram.  The table-free route, used when hash structures cannot be trusted,
is :func:`pad_chains` (insert the redundant nodes that long edges elide)
followed by :func:`merge_quadratic` (merge duplicates by pairwise comparison,
no hashing anywhere).
"""

from __future__ import annotations

from .core import (
    Diagram,
    DiagramStore,
    Mode,
    is_terminal,
    mk_node,
    new_consed_store,
)


def build_qr(d: Diagram) -> Diagram:
    """Canonical quasi-reduced form of the function, via hash-consing."""
    n = d.n
    store, table = new_consed_store(n, Mode.KEEP_REDUNDANT)
    cache: dict[tuple[int, int], int] = {}

    def build(u: int, i: int) -> int:
        # the function rooted at u, materialized from level i downward
        if i == n:
            return u
        key = (u, i)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if d.store.level(u) == i:
            node = d.store.node(u)
            r = mk_node(store, table, i, build(node.lo, i + 1), build(node.hi, i + 1))
        else:
            child = build(u, i + 1)
            r = mk_node(store, table, i, child, child)
        cache[key] = r
        return r

    return Diagram(store, build(d.root, 0))


def pad_chains(d: Diagram) -> Diagram:
    """Insert a fresh chain of redundant nodes on every edge that skips levels.

    Edges into terminals and a root below level 0 are padded too, so
    afterwards every root-to-terminal path has length n.  No unique table is
    consulted: duplicates introduced by separate chains stay distinct until
    :func:`merge_quadratic` runs.
    """
    out = DiagramStore(d.n, Mode.KEEP_REDUNDANT)
    memo: dict[int, int] = {}

    def pad(child: int, child_level: int, parent_level: int) -> int:
        for level in range(child_level - 1, parent_level, -1):
            child = out.add_raw(level, child, child)
        return child

    def walk(u: int) -> int:
        if is_terminal(u):
            return u
        hit = memo.get(u)
        if hit is not None:
            return hit
        node = d.store.node(u)
        lo = pad(walk(node.lo), d.store.level(node.lo), node.index)
        hi = pad(walk(node.hi), d.store.level(node.hi), node.index)
        r = out.add_raw(node.index, lo, hi)
        memo[u] = r
        return r

    root = pad(walk(d.root), d.store.level(d.root), -1)
    return Diagram(out, root)


def merge_quadratic(d: Diagram) -> Diagram:
    """Apply the duplicate-triple rule exhaustively without hash structures.

    Works level by level from the bottom, comparing each node against the
    nodes already kept on its level (pairwise, hence quadratic).  Only plain
    arrays indexed by level or by node id are used, which is the point: this
    is the merge step of the fault-tolerant pipeline.  On chain-padded input
    the result is the canonical quasi-reduced form.
    """
    n = d.n
    store = d.store
    arena_end = store.next_id()
    visited = [False] * arena_end
    by_level: list[list[int]] = [[] for _ in range(n)]

    stack = [d.root]
    while stack:
        u = stack.pop()
        if is_terminal(u) or visited[u]:
            continue
        visited[u] = True
        node = store.node(u)
        by_level[node.index].append(u)
        stack.append(node.lo)
        stack.append(node.hi)

    out = DiagramStore(n, Mode.KEEP_REDUNDANT)
    remap = list(range(arena_end))
    for level in range(n - 1, -1, -1):
        kept_lo: list[int] = []
        kept_hi: list[int] = []
        kept_id: list[int] = []
        for u in sorted(by_level[level]):
            node = store.node(u)
            lo, hi = remap[node.lo], remap[node.hi]
            for t in range(len(kept_id)):
                if kept_lo[t] == lo and kept_hi[t] == hi:
                    remap[u] = kept_id[t]
                    break
            else:
                remap[u] = out.add_raw(level, lo, hi)
                kept_lo.append(lo)
                kept_hi.append(hi)
                kept_id.append(remap[u])

    root = d.root if is_terminal(d.root) else remap[d.root]
    return Diagram(out, root)
