"""Dynamic undirected simple graphs, unit edit operations and edit scripts.

A run replays an :class:`EditScript` against a :class:`DynamicGraph`, one
:class:`EditOp` at a time, so that consecutive graphs are at editing
distance one.  Vertex deletion is only legal on isolated vertices; a
generator that wants to drop a vertex must first emit its edge deletions.

File formats
------------
Graph file::

    n m
    u v        (m lines, u < v)

The vertices of a graph file are ``0 .. n-1``.

Script file::

    n
    AE u v | DE u v | AV v | DV v   (one op per line)

The initial graph of a script is the edgeless graph on ``0 .. n-1``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import AbstractSet, Iterable, Iterator

from .errors import Degenerate, PreconditionViolation, UnknownVertex

ADD_EDGE = "AE"
DEL_EDGE = "DE"
ADD_VERTEX = "AV"
DEL_VERTEX = "DV"

_EDGE_KINDS = (ADD_EDGE, DEL_EDGE)
_VERTEX_KINDS = (ADD_VERTEX, DEL_VERTEX)


@dataclass(frozen=True, order=True)
class EditOp:
    """A single unit edit.  Edge ops keep their endpoints sorted (u < v)."""

    kind: str
    u: int
    v: int | None = None

    def __post_init__(self) -> None:
        if self.kind in _EDGE_KINDS:
            if self.v is None:
                raise ValueError(f"{self.kind} needs two endpoints")
            if self.u > self.v:
                a, b = self.v, self.u
                object.__setattr__(self, "u", a)
                object.__setattr__(self, "v", b)
        elif self.kind in _VERTEX_KINDS:
            if self.v is not None:
                raise ValueError(f"{self.kind} takes a single vertex")
        else:
            raise ValueError(f"unknown edit kind {self.kind!r}")
        if self.u < 0 or (self.v is not None and self.v < 0):
            raise ValueError("vertex ids are non-negative")

    @classmethod
    def add_edge(cls, u: int, v: int) -> EditOp:
        return cls(ADD_EDGE, u, v)

    @classmethod
    def del_edge(cls, u: int, v: int) -> EditOp:
        return cls(DEL_EDGE, u, v)

    @classmethod
    def add_vertex(cls, v: int) -> EditOp:
        return cls(ADD_VERTEX, v)

    @classmethod
    def del_vertex(cls, v: int) -> EditOp:
        return cls(DEL_VERTEX, v)

    @property
    def is_edge_op(self) -> bool:
        return self.kind in _EDGE_KINDS

    @property
    def sites(self) -> tuple[int, ...]:
        """The vertices the edit happens at, ascending."""
        if self.v is None:
            return (self.u,)
        return (self.u, self.v)

    def inverse(self) -> EditOp:
        flip = {ADD_EDGE: DEL_EDGE, DEL_EDGE: ADD_EDGE,
                ADD_VERTEX: DEL_VERTEX, DEL_VERTEX: ADD_VERTEX}
        return EditOp(flip[self.kind], self.u, self.v)

    def __str__(self) -> str:
        if self.v is None:
            return f"{self.kind} {self.u}"
        return f"{self.kind} {self.u} {self.v}"

    @classmethod
    def parse(cls, line: str) -> EditOp:
        parts = line.split()
        if not parts:
            raise ValueError("empty op line")
        kind, args = parts[0], [int(x) for x in parts[1:]]
        if kind in _EDGE_KINDS and len(args) == 2:
            return cls(kind, args[0], args[1])
        if kind in _VERTEX_KINDS and len(args) == 1:
            return cls(kind, args[0])
        raise ValueError(f"malformed op line: {line.strip()!r}")


class DynamicGraph:
    """Mutable undirected simple graph on non-negative integer vertex ids.

    Ids of deleted vertices are retired and cannot be added again, which
    keeps provenance and per-run logs unambiguous.
    """

    __slots__ = ("_adj", "_retired")

    def __init__(self, vertices: Iterable[int] = (),
                 edges: Iterable[tuple[int, int]] = ()) -> None:
        self._adj: dict[int, set[int]] = {}
        self._retired: set[int] = set()
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            for x in (u, v):
                if x not in self._adj:
                    self.add_vertex(x)
            self.add_edge(u, v)

    @classmethod
    def edgeless(cls, n: int) -> DynamicGraph:
        return cls(range(n))

    # -- queries ---------------------------------------------------------

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def neighbors(self, v: int) -> AbstractSet[int]:
        """Neighbour set of ``v``.  Callers must not mutate it."""
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v} not in graph") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in ascending order."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def max_id(self) -> int:
        return max(self._adj, default=-1)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DynamicGraph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"DynamicGraph(n={self.n}, m={self.m})"

    def copy(self) -> DynamicGraph:
        g = DynamicGraph()
        g._adj = {v: set(nb) for v, nb in self._adj.items()}
        g._retired = set(self._retired)
        return g

    def subgraph_without(self, removed: Iterable[int]) -> DynamicGraph:
        """Induced subgraph on V minus ``removed`` (a fresh graph)."""
        gone = set(removed)
        g = DynamicGraph()
        g._adj = {v: nb - gone for v, nb in self._adj.items() if v not in gone}
        return g

    # -- mutation --------------------------------------------------------

    def add_vertex(self, v: int) -> None:
        if v < 0:
            raise PreconditionViolation(f"AddVertex({v}): ids are non-negative")
        if v in self._adj:
            raise PreconditionViolation(f"AddVertex({v}): vertex already present")
        if v in self._retired:
            raise PreconditionViolation(f"AddVertex({v}): id was retired earlier in this run")
        self._adj[v] = set()

    def del_vertex(self, v: int) -> None:
        if v not in self._adj:
            raise PreconditionViolation(f"DelVertex({v}): vertex absent")
        if self._adj[v]:
            raise PreconditionViolation(
                f"DelVertex({v}): vertex not isolated (degree {len(self._adj[v])})")
        del self._adj[v]
        self._retired.add(v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise PreconditionViolation(f"AddEdge({u},{v}): self-loop")
        for x in (u, v):
            if x not in self._adj:
                raise PreconditionViolation(f"AddEdge({u},{v}): endpoint {x} absent")
        if v in self._adj[u]:
            raise PreconditionViolation(f"AddEdge({u},{v}): edge already present")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def del_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise PreconditionViolation(f"DelEdge({u},{v}): edge absent")
        self._adj[u].discard(v)
        self._adj[v].discard(u)

    def apply(self, op: EditOp) -> None:
        if op.kind == ADD_EDGE:
            self.add_edge(op.u, op.v)
        elif op.kind == DEL_EDGE:
            self.del_edge(op.u, op.v)
        elif op.kind == ADD_VERTEX:
            self.add_vertex(op.u)
        else:
            self.del_vertex(op.u)


def apply_edit(g: DynamicGraph, op: EditOp) -> DynamicGraph:
    """Apply ``op`` to ``g`` in place and return ``g``."""
    g.apply(op)
    return g


@dataclass
class EditScript:
    initial_n: int
    ops: list[EditOp] = field(default_factory=list)

    def initial_graph(self) -> DynamicGraph:
        return DynamicGraph.edgeless(self.initial_n)

    def __len__(self) -> int:
        return len(self.ops)

    def graphs(self) -> Iterator[DynamicGraph]:
        """Yield G_0, G_1, ... as independent copies."""
        g = self.initial_graph()
        yield g.copy()
        for op in self.ops:
            g.apply(op)
            yield g.copy()

    def final_graph(self) -> DynamicGraph:
        g = self.initial_graph()
        for op in self.ops:
            g.apply(op)
        return g

    def dumps(self) -> str:
        lines = [str(self.initial_n)]
        lines.extend(str(op) for op in self.ops)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> EditScript:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty script file")
        return cls(int(lines[0]), [EditOp.parse(ln) for ln in lines[1:]])


def build_script_edge_by_edge(target: DynamicGraph, order_seed: int) -> EditScript:
    """Script building ``target`` from the edgeless graph, one edge at a time.

    Vertices of ``target`` are relabelled to ``0 .. n-1`` in ascending id
    order; the edge order is a seeded permutation.
    """
    label = {v: i for i, v in enumerate(target.vertices())}
    edges = [(label[u], label[v]) for u, v in target.edges()]
    random.Random(order_seed).shuffle(edges)
    return EditScript(target.n, [EditOp.add_edge(u, v) for u, v in edges])


class _EdgePool:
    """Indexable edge set with O(1) insert, remove and uniform choice."""

    def __init__(self) -> None:
        self.items: list[tuple[int, int]] = []
        self.index: dict[tuple[int, int], int] = {}

    def add(self, e: tuple[int, int]) -> None:
        self.index[e] = len(self.items)
        self.items.append(e)

    def remove(self, e: tuple[int, int]) -> None:
        i = self.index.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.index[last] = i

    def choose(self, rng: random.Random) -> tuple[int, int]:
        return self.items[rng.randrange(len(self.items))]

    def __len__(self) -> int:
        return len(self.items)


def churn_script(n: int, steps: int, p_add: float, seed: int) -> EditScript:
    """Random edge churn on the fixed vertex set ``0 .. n-1``.

    Each step adds a uniformly chosen absent edge with probability
    ``p_add``, otherwise deletes a uniformly chosen present edge.  When the
    chosen pool is empty the other kind is used, so the script always has
    exactly ``steps`` ops.
    """
    if n < 1 or steps < 0 or not 0.0 <= p_add <= 1.0:
        raise ValueError(f"bad churn parameters n={n} steps={steps} p_add={p_add}")
    if n < 2 and steps > 0:
        raise Degenerate("churn needs at least two vertices to emit edge ops")
    rng = random.Random(seed)
    present, absent = _EdgePool(), _EdgePool()
    for u in range(n):
        for v in range(u + 1, n):
            absent.add((u, v))
    ops = []
    for _ in range(steps):
        adding = rng.random() < p_add
        if adding and not absent:
            adding = False
        elif not adding and not present:
            adding = True
        src, dst = (absent, present) if adding else (present, absent)
        e = src.choose(rng)
        src.remove(e)
        dst.add(e)
        ops.append(EditOp.add_edge(*e) if adding else EditOp.del_edge(*e))
    return EditScript(n, ops)


def distance_from(g: DynamicGraph, sources: Iterable[int], target: int) -> int | None:
    """Hop distance from the nearest source to ``target``; None if unreachable."""
    srcs = set(sources)
    if not srcs:
        raise ValueError("sources must be nonempty")
    for x in srcs | {target}:
        if x not in g:
            raise UnknownVertex(f"vertex {x} not in graph")
    return bfs_distances(g, srcs).get(target)


def bfs_distances(g: DynamicGraph, sources: Iterable[int],
                  limit: int | None = None) -> dict[int, int]:
    """Distances from a source set, optionally truncated at ``limit`` hops."""
    dist = {s: 0 for s in sources if s in g}
    queue = deque(dist)
    while queue:
        x = queue.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def is_regular(g: DynamicGraph, deg: int) -> bool:
    return all(g.degree(v) == deg for v in g.vertices())


class TrackedGraphView:
    """Read-only view of a graph that logs which vertices were looked at.

    Every query charges one work unit; listing a neighbourhood charges one
    more per neighbour returned.  Maintainers report reads of another
    vertex's *state* with :meth:`read_state` and state changes with
    :meth:`write`, so the log covers everything a step depended on.
    """

    def __init__(self, graph: DynamicGraph) -> None:
        self._g = graph
        self.read_log: set[int] = set()
        self.write_log: set[int] = set()
        self.work = 0

    def reset(self) -> None:
        self.read_log = set()
        self.write_log = set()
        self.work = 0

    def has_vertex(self, v: int) -> bool:
        self.read_log.add(v)
        self.work += 1
        return self._g.has_vertex(v)

    def has_edge(self, u: int, v: int) -> bool:
        self.read_log.update((u, v))
        self.work += 1
        return self._g.has_edge(u, v)

    def neighbors(self, v: int) -> list[int]:
        """Sorted neighbour list of ``v``."""
        self.read_log.add(v)
        nb = sorted(self._g.neighbors(v))
        self.work += 1 + len(nb)
        return nb

    def degree(self, v: int) -> int:
        self.read_log.add(v)
        self.work += 1
        return self._g.degree(v)

    def read_state(self, v: int) -> None:
        self.read_log.add(v)
        self.work += 1

    def write(self, v: int) -> None:
        self.write_log.add(v)
        self.work += 1


def write_graph(g: DynamicGraph, path: str | Path) -> None:
    Path(path).write_text(dumps_graph(g), encoding="ascii")


def dumps_graph(g: DynamicGraph) -> str:
    if g.vertices() != list(range(g.n)):
        raise ValueError("graph files need vertex ids 0 .. n-1")
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> DynamicGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise ValueError("empty graph file")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise ValueError(f"graph header says {m} edges, found {len(rows) - 1}")
    return DynamicGraph(range(n), ((int(a), int(b)) for a, b in rows[1:]))


def read_graph(path: str | Path) -> DynamicGraph:
    return loads_graph(Path(path).read_text(encoding="ascii"))


def write_script(script: EditScript, path: str | Path) -> None:
    Path(path).write_text(script.dumps(), encoding="ascii")


def read_script(path: str | Path) -> EditScript:
    return EditScript.loads(Path(path).read_text(encoding="ascii"))
