"""Core storage and construction for ordered binary decision diagrams.

Nodes live in an append-only arena owned by a :class:`DiagramStore`.  A node
is a mutable triple (index, lo, hi): the variable index it tests, the child
followed when the variable is 0 and the child followed when it is 1.  The two
terminals are the reserved ids ``TERM0`` and ``TERM1``; they are not arena
entries and, for level arithmetic, sit on the pseudo-level ``n`` below every
variable.

Two construction modes exist.  ``Mode.ROBDD`` applies both classic reduction
rules while hash-consing (never build a node with equal children, never
duplicate a triple), yielding fully reduced diagrams.  ``Mode.KEEP_REDUNDANT``
applies only the duplicate-triple rule, which is what quasi-reduced and
index-resilient forms need: nodes with equal children are kept.

Hash-consing goes through a :class:`UniqueTable`: one subtable per variable
level, each an array of collision buckets keyed by a 64-bit FNV-1a hash of the
two child ids.  The recovery procedures in the sibling modules probe these
buckets directly, so the bucket layout is part of the contract, not an
implementation detail.

Stores are meant for single-threaded use: build a diagram, then treat it as
read-only (the fault-injection helpers are the one sanctioned exception).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

TERM0 = 0
TERM1 = 1
_FIRST_ID = 2

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


class BddError(Exception):
    """Base class for diagram errors."""


class OrderingError(BddError):
    """A node would test a variable at or below one of its children."""


class ContractError(BddError):
    """A structural precondition of an operation does not hold."""


class Mode(Enum):
    ROBDD = "robdd"
    KEEP_REDUNDANT = "keep-redundant"


def fnv1a_pair(lo: int, hi: int) -> int:
    """64-bit FNV-1a over the two child ids, fed as 8 little-endian bytes each."""
    h = _FNV_OFFSET
    for word in (lo, hi):
        for _ in range(8):
            h ^= word & 0xFF
            h = (h * _FNV_PRIME) & _MASK64
            word >>= 8
    return h


def is_terminal(u: int) -> bool:
    return u < _FIRST_ID


def terminal(bit: int) -> int:
    return TERM1 if bit else TERM0


class Node:
    """One arena entry.  Mutable so that faults can be injected and repaired."""

    __slots__ = ("index", "lo", "hi")

    def __init__(self, index: int, lo: int, hi: int):
        self.index = index
        self.lo = lo
        self.hi = hi

    def triple(self) -> tuple[int, int, int]:
        return (self.index, self.lo, self.hi)

    def __repr__(self):
        return f"Node(index={self.index}, lo={self.lo}, hi={self.hi})"


class DiagramStore:
    """Append-only node arena over ``n`` ordered variables.

    Ids are dense integers starting at 2 (0 and 1 are the terminals) and are
    never reused.  ``table`` points at the unique table that hash-conses this
    store, when one exists; raw stores built by the table-free pipeline leave
    it as None.
    """

    def __init__(self, n: int, mode: Mode = Mode.ROBDD):
        if n < 1:
            raise ValueError(f"need at least one variable, got n={n}")
        self.n = n
        self.mode = mode
        self._nodes: list[Node] = []
        self.table: UniqueTable | None = None

    def add_raw(self, index: int, lo: int, hi: int) -> int:
        """Append a node without consulting any unique table.

        Used by the error-resilient pipeline, which must not depend on hash
        structures.  The ordering property is still enforced.
        """
        self._check_ordering(index, lo, hi)
        self._nodes.append(Node(index, lo, hi))
        return len(self._nodes) + _FIRST_ID - 1

    def _check_ordering(self, index: int, lo: int, hi: int):
        if not 0 <= index < self.n:
            raise OrderingError(f"variable index {index} out of range [0, {self.n})")
        if index >= self.level(lo) or index >= self.level(hi):
            raise OrderingError(
                f"node at level {index} would have children at levels "
                f"{self.level(lo)} and {self.level(hi)}"
            )

    def node(self, u: int) -> Node:
        if is_terminal(u):
            raise ValueError(f"id {u} is a terminal, not an arena node")
        return self._nodes[u - _FIRST_ID]

    def level(self, u: int) -> int:
        """Variable index of u, with terminals on pseudo-level n."""
        if is_terminal(u):
            return self.n
        return self._nodes[u - _FIRST_ID].index

    def ids(self) -> range:
        """All arena ids, including any that became unreachable."""
        return range(_FIRST_ID, len(self._nodes) + _FIRST_ID)

    def next_id(self) -> int:
        return len(self._nodes) + _FIRST_ID

    def __len__(self):
        return len(self._nodes)


@dataclass(frozen=True)
class Diagram:
    """A root id paired with the store that owns it."""

    store: DiagramStore
    root: int

    @property
    def n(self) -> int:
        return self.store.n


class UniqueTable:
    """Per-level hash subtables used for consing and for recovery probes.

    Each level owns ``bucket_count`` collision lists; a node with children
    (lo, hi) lives in bucket ``fnv1a_pair(lo, hi) % bucket_count`` of the
    subtable of its own level, exactly once.  Recovery code walks buckets
    looking for a node's id; construction code walks them comparing keys.
    """

    def __init__(self, n: int, bucket_count: int = 256):
        if bucket_count < 1:
            raise ValueError("bucket_count must be positive")
        self.n = n
        self.bucket_count = bucket_count
        self._levels: list[list[list[int]]] = [
            [[] for _ in range(bucket_count)] for _ in range(n)
        ]

    def bucket_index(self, lo: int, hi: int) -> int:
        return fnv1a_pair(lo, hi) % self.bucket_count

    def bucket(self, index: int, lo: int, hi: int) -> list[int]:
        """The collision list the key (lo, hi) selects at the given level."""
        return self._levels[index][self.bucket_index(lo, hi)]

    def find(self, store: DiagramStore, index: int, lo: int, hi: int) -> int | None:
        """Key-equality lookup for hash-consing (walks one bucket)."""
        for u in self.bucket(index, lo, hi):
            node = store.node(u)
            if node.lo == lo and node.hi == hi:
                return u
        return None

    def insert(self, store: DiagramStore, index: int, u: int):
        node = store.node(u)
        self.bucket(index, node.lo, node.hi).append(u)

    def remove(self, store: DiagramStore, index: int, u: int):
        node = store.node(u)
        self.bucket(index, node.lo, node.hi).remove(u)

    def contains_id(self, index: int, lo: int, hi: int, u: int) -> bool:
        """Identity probe: does the bucket for (lo, hi) at this level hold u?

        This is the primitive the index- and edge-recovery procedures use.
        It deliberately compares ids, not keys: a probe with a wrong key can
        still find u if that key collides into u's bucket.
        """
        return u in self._levels[index][self.bucket_index(lo, hi)]


def mk_node(store: DiagramStore, table: UniqueTable, index: int, lo: int, hi: int) -> int:
    """Hash-consing constructor.

    In ROBDD mode a node with equal children is never built (the child is
    returned instead); in both modes an existing node with the same triple is
    reused.
    """
    if store.mode is Mode.ROBDD and lo == hi:
        return lo
    store._check_ordering(index, lo, hi)
    found = table.find(store, index, lo, hi)
    if found is not None:
        return found
    u = store.add_raw(index, lo, hi)
    table.insert(store, index, u)
    return u


def new_consed_store(n: int, mode: Mode = Mode.ROBDD, bucket_count: int = 256):
    """A fresh (store, table) pair wired together."""
    store = DiagramStore(n, mode)
    table = UniqueTable(n, bucket_count)
    store.table = table
    return store, table


# ---------------------------------------------------------------------------
# evaluation


def evaluate(d: Diagram, assignment) -> int:
    """Follow the path selected by the assignment; returns 0 or 1."""
    if len(assignment) != d.n:
        raise ValueError(f"assignment has {len(assignment)} values, diagram has {d.n} variables")
    u = d.root
    while not is_terminal(u):
        node = d.store.node(u)
        u = node.hi if assignment[node.index] else node.lo
    return u


def assignments(n: int):
    """All 2^n assignments in lexicographic order (variable 0 first)."""
    return itertools.product((0, 1), repeat=n)


def truth_table(d: Diagram) -> list[int]:
    """The 2^n function values, indexed with variable 0 as the top bit."""
    return [evaluate(d, a) for a in assignments(d.n)]


# ---------------------------------------------------------------------------
# construction


def from_truth_table(n: int, bits, mode: Mode = Mode.ROBDD) -> Diagram:
    """Build a diagram from the complete table of 2^n function values.

    ``bits[k]`` is the value on the assignment whose binary expansion is k
    with variable 0 as the most significant bit.
    """
    bits = list(bits)
    if len(bits) != 1 << n:
        raise ValueError(f"expected {1 << n} values, got {len(bits)}")
    store, table = new_consed_store(n, mode)

    def build(i: int, base: int) -> int:
        if i == n:
            return terminal(bits[base])
        half = 1 << (n - 1 - i)
        return mk_node(store, table, i, build(i + 1, base), build(i + 1, base + half))

    return Diagram(store, build(0, 0))


def _cube_ok(cube: str, n: int, what: str):
    if len(cube) != n:
        raise ValueError(f"{what} cube {cube!r} has length {len(cube)}, expected {n}")
    bad = set(cube) - {"0", "1", "-"}
    if bad:
        raise ValueError(f"{what} cube {cube!r} contains invalid characters {sorted(bad)}")


def matches_cube(cube: str, assignment) -> bool:
    return all(c == "-" or int(c) == a for c, a in zip(cube, assignment))


def from_cubes(n: int, onset, dcset=(), dc_value: int = 0,
               mode: Mode = Mode.ROBDD) -> Diagram:
    """Build the function "1 iff the assignment matches an ON-set cube".

    Assignments matching only don't-care cubes take ``dc_value``.  The build
    expands the complete decision-tree semantics, hash-consed level by level,
    with memoization on the surviving cube sets so shared subtrees are built
    once.
    """
    onset = list(onset)
    dcset = list(dcset)
    for c in onset:
        _cube_ok(c, n, "onset")
    for c in dcset:
        _cube_ok(c, n, "dcset")
    if dc_value not in (0, 1):
        raise ValueError("dc_value must be 0 or 1")
    store, table = new_consed_store(n, mode)
    cache: dict[tuple, int] = {}

    def build(i: int, on: tuple[int, ...], dc: tuple[int, ...]) -> int:
        if i == n:
            if on:
                return TERM1
            return terminal(dc_value) if dc else TERM0
        key = (i, on, dc)
        hit = cache.get(key)
        if hit is not None:
            return hit
        children = []
        for bit in ("0", "1"):
            on2 = tuple(k for k in on if onset[k][i] != ("1" if bit == "0" else "0"))
            dc2 = tuple(k for k in dc if dcset[k][i] != ("1" if bit == "0" else "0"))
            children.append(build(i + 1, on2, dc2))
        r = mk_node(store, table, i, children[0], children[1])
        cache[key] = r
        return r

    root = build(0, tuple(range(len(onset))), tuple(range(len(dcset))))
    return Diagram(store, root)


# ---------------------------------------------------------------------------
# transforms


def reduce_robdd(d: Diagram) -> Diagram:
    """Rebuild into a fresh fully reduced store; canonical for the function."""
    store, table = new_consed_store(d.n, Mode.ROBDD)
    memo: dict[int, int] = {}

    def walk(u: int) -> int:
        if is_terminal(u):
            return u
        hit = memo.get(u)
        if hit is not None:
            return hit
        node = d.store.node(u)
        r = mk_node(store, table, node.index, walk(node.lo), walk(node.hi))
        memo[u] = r
        return r

    return Diagram(store, walk(d.root))


def restrict(d: Diagram, var: int, value: int) -> Diagram:
    """Cofactor: fix one variable, keep the variable count unchanged."""
    if not 0 <= var < d.n:
        raise ValueError(f"variable {var} out of range [0, {d.n})")
    if value not in (0, 1):
        raise ValueError("value must be 0 or 1")
    store, table = new_consed_store(d.n, Mode.ROBDD)
    memo: dict[int, int] = {}

    def walk(u: int) -> int:
        if is_terminal(u):
            return u
        hit = memo.get(u)
        if hit is not None:
            return hit
        node = d.store.node(u)
        if node.index == var:
            r = walk(node.hi if value else node.lo)
        else:
            r = mk_node(store, table, node.index, walk(node.lo), walk(node.hi))
        memo[u] = r
        return r

    return Diagram(store, walk(d.root))


def negate(d: Diagram) -> Diagram:
    """Structure-preserving copy with the two terminals swapped."""
    store = DiagramStore(d.n, d.store.mode)
    memo: dict[int, int] = {}

    def walk(u: int) -> int:
        if is_terminal(u):
            return TERM1 if u == TERM0 else TERM0
        hit = memo.get(u)
        if hit is not None:
            return hit
        node = d.store.node(u)
        r = store.add_raw(node.index, walk(node.lo), walk(node.hi))
        memo[u] = r
        return r

    return Diagram(store, walk(d.root))


# ---------------------------------------------------------------------------
# inspection


def dfs_preorder(d: Diagram, include_terminals: bool = True) -> list[int]:
    """Depth-first preorder from the root, 0-edge before 1-edge, each id once."""
    order: list[int] = []
    seen: set[int] = set()

    def walk(u: int):
        if u in seen:
            return
        seen.add(u)
        if is_terminal(u):
            if include_terminals:
                order.append(u)
            return
        order.append(u)
        node = d.store.node(u)
        walk(node.lo)
        walk(node.hi)

    walk(d.root)
    return order


def count_nodes(d: Diagram) -> int:
    """Number of internal nodes reachable from the root."""
    return len(dfs_preorder(d, include_terminals=False))


def isomorphic(a: Diagram, b: Diagram) -> bool:
    """Structural equality up to arena numbering (simultaneous DFS)."""
    if a.n != b.n:
        return False
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}

    def walk(u: int, v: int) -> bool:
        if is_terminal(u) or is_terminal(v):
            return u == v
        if u in fwd:
            return fwd[u] == v
        if v in bwd:
            return False
        na, nb = a.store.node(u), b.store.node(v)
        if na.index != nb.index:
            return False
        fwd[u] = v
        bwd[v] = u
        return walk(na.lo, nb.lo) and walk(na.hi, nb.hi)

    return walk(a.root, b.root)


def export_dot(d: Diagram, name: str = "bdd") -> str:
    """GraphViz text: dashed 0-edges, solid 1-edges, boxed terminals,
    one rank per variable level."""
    order = dfs_preorder(d, include_terminals=True)
    lines = [f"digraph {name} {{"]
    by_level: dict[int, list[int]] = {}
    for u in order:
        if not is_terminal(u):
            by_level.setdefault(d.store.level(u), []).append(u)
    for level in sorted(by_level):
        members = "; ".join(f'n{u} [label="x{level}"]' for u in by_level[level])
        lines.append(f"  {{ rank=same; {members}; }}")
    for u in order:
        if is_terminal(u):
            lines.append(f'  n{u} [shape=box, label="{u}"];')
    for u in order:
        if is_terminal(u):
            continue
        node = d.store.node(u)
        lines.append(f"  n{u} -> n{node.lo} [style=dashed];")
        lines.append(f"  n{u} -> n{node.hi} [style=solid];")
    lines.append("}")
    return "\n".join(lines) + "\n"
