"""Multicolored clique to regular-subgraph-deletion gadget reduction.

Source instances have ``k`` colour classes of ``s`` vertices each, every
vertex having exactly ``d`` neighbours in every other class.  The target
graph is built so that deleting one class-copy vertex per class together
with the two gadget vertices of every selected cross edge leaves an
``r``-regular graph, and so that no cheaper or different deletion does:

* ``V'_i``: a clique copying class ``i``;
* ``P_ij``: two vertices per source edge between classes ``i`` and ``j``,
  one on each side, joined to each other and to their class copies, and
  joined to every same-side vertex with a different base vertex;
* ``V''_i`` and the two side pools of ``P'_ij``: padding that lifts the
  gadget vertices to degree ``r + 1``;
* filler cliques on ``r + 1`` vertices with one edge broken, hung off each
  padding vertex to bring it to degree ``r + 1``, chained with further
  cliques until each padding vertex carries at least ``g(k') + 1`` filler
  vertices.

Vertex ids in the target graph are dense and assigned in that order.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceeded, InfeasibleParameters, InvalidInstance, OddClassSize
from .graph import DynamicGraph, dumps_graph, is_regular

CLASS_COPY = "class-copy"
PAIR = "pair"
PAD_CLASS = "padding-class"
PAD_PAIR = "padding-pair"
FILLER = "filler"

CLIQUE_SEARCH_LIMIT = 10**7
DELETION_NODE_LIMIT = 10**7
BRUTE_FORCE_LIMIT = 10**10


@dataclass(frozen=True)
class ApproxBudget:
    """Linear approximation budget ``g(k) = a*k + b``."""

    a: int = 1
    b: int = 0

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 0:
            raise ValueError(f"need a >= 1 and b >= 0, got a={self.a} b={self.b}")

    def __call__(self, k: int) -> int:
        return self.a * k + self.b

    @classmethod
    def parse(cls, text: str) -> ApproxBudget:
        a, b = (int(x) for x in text.split(","))
        return cls(a, b)


@dataclass(frozen=True)
class SrmcInstance:
    """Strongly regular multicolored clique instance.

    Vertex ``x`` of class ``i`` has id ``i * s + x``; classes are
    independent sets.
    """

    k: int
    s: int
    d: int
    edges: frozenset[tuple[int, int]]
    planted: tuple[int, ...] | None = None
    adj: dict[int, frozenset[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        adj: dict[int, set[int]] = {v: set() for v in range(self.k * self.s)}
        for u, v in self.edges:
            if u not in adj or v not in adj or u >= v:
                raise InvalidInstance(f"bad edge ({u},{v})")
            if self.class_of(u) == self.class_of(v):
                raise InvalidInstance(f"edge ({u},{v}) inside class {self.class_of(u)}")
            adj[u].add(v)
            adj[v].add(u)
        for v, nb in adj.items():
            for j in range(self.k):
                if j == self.class_of(v):
                    continue
                got = sum(1 for w in nb if self.class_of(w) == j)
                if got != self.d:
                    raise InvalidInstance(
                        f"vertex {v} has {got} neighbours in class {j}, expected {self.d}")
        object.__setattr__(self, "adj", {v: frozenset(nb) for v, nb in adj.items()})

    def class_of(self, v: int) -> int:
        return v // self.s

    def members(self, i: int) -> range:
        return range(i * self.s, (i + 1) * self.s)

    def is_multicolored_clique(self, vs) -> bool:
        vs = list(vs)
        if sorted(self.class_of(v) for v in vs) != list(range(self.k)):
            return False
        return all(b in self.adj[a] for a, b in itertools.combinations(vs, 2))


def _check_class_params(k: int, s: int, d: int) -> None:
    if k < 2 or s < 2:
        raise InfeasibleParameters(f"need k >= 2 and s >= 2, got k={k} s={s}")
    if s % 2:
        raise OddClassSize(f"class size s={s} is odd; only even s yields fillable padding")
    if not 1 <= d <= s:
        raise InfeasibleParameters(f"need 1 <= d <= s, got d={d} s={s}")


def compute_r(k: int, s: int, d: int) -> int:
    """Smallest r above both gadget degrees with parity opposite to s."""
    _check_class_params(k, s, d)
    r = max((s - 1) + d * (k - 1), 2 + (s - 1) * d) + 1
    if r % 2 == s % 2:
        r += 1
    return r


def gen_srmc(k: int, s: int, d: int, seed: int, planted: bool = False) -> SrmcInstance:
    """Random instance: between each class pair, ``d`` disjoint perfect matchings.

    The matchings come from a seeded Latin-square layout (cyclic shifts
    under random relabellings of both sides), so they never collide.  With
    ``planted`` one vertex per class is chosen and every pair of chosen
    vertices is made adjacent.
    """
    _check_class_params(k, s, d)
    rng = random.Random(seed)
    chosen = tuple(i * s + rng.randrange(s) for i in range(k)) if planted else None
    edges = set()
    for i, j in itertools.combinations(range(k), 2):
        left = list(range(i * s, (i + 1) * s))
        right = list(range(j * s, (j + 1) * s))
        rng.shuffle(left)
        rng.shuffle(right)
        shifts = rng.sample(range(s), d)
        if chosen is not None:
            # line up the planted pair under the first shift
            pos = (left.index(chosen[i]) + shifts[0]) % s
            q = right.index(chosen[j])
            right[pos], right[q] = right[q], right[pos]
        for a, u in enumerate(left):
            for t in shifts:
                v = right[(a + t) % s]
                edges.add((min(u, v), max(u, v)))
    return SrmcInstance(k, s, d, frozenset(edges), chosen)


def find_clique(inst: SrmcInstance, limit: int = CLIQUE_SEARCH_LIMIT) -> tuple[int, ...] | None:
    """Lexicographically first multicolored k-clique, or None.

    Exhaustive over the class cross-product, skipping extensions of
    non-clique prefixes.
    """
    if inst.s ** inst.k > limit:
        raise BudgetExceeded(f"s^k = {inst.s ** inst.k} candidates exceeds {limit}")

    def extend(prefix: list[int]) -> tuple[int, ...] | None:
        i = len(prefix)
        if i == inst.k:
            return tuple(prefix)
        for v in inst.members(i):
            if all(v in inst.adj[u] for u in prefix):
                found = extend(prefix + [v])
                if found:
                    return found
        return None

    return extend([])


@dataclass
class ReductionInstance:
    graph: DynamicGraph
    k_prime: int
    regular_degree: int
    budget: ApproxBudget
    provenance: dict[int, tuple]
    source: SrmcInstance
    filler_cliques: dict[int, list[list[int]]]

    def vertices_with(self, role: str) -> list[int]:
        return [v for v, p in self.provenance.items() if p[0] == role]

    def class_copy(self, u: int) -> int:
        return self._index()[(CLASS_COPY, u)]

    def pair_vertex(self, base: int, other: int) -> int:
        """Gadget vertex on ``base``'s side for source edge {base, other}."""
        return self._index()[(PAIR, base, other)]

    def _index(self) -> dict[tuple, int]:
        idx = getattr(self, "_idx", None)
        if idx is None:
            idx = {}
            for v, p in self.provenance.items():
                if p[0] == CLASS_COPY:
                    idx[(CLASS_COPY, p[2])] = v
                elif p[0] == PAIR:
                    idx[(PAIR, p[3], p[4])] = v
            self._idx = idx
        return idx

    def selection(self, clique) -> set[int]:
        """The deletion set that encodes a multicolored clique of the source."""
        out = {self.class_copy(u) for u in clique}
        for a, b in itertools.combinations(clique, 2):
            out.add(self.pair_vertex(a, b))
            out.add(self.pair_vertex(b, a))
        return out

    def decode(self, witness) -> tuple[int, ...] | None:
        """Source clique encoded by a deletion set, or None if it encodes none."""
        roles = [self.provenance[v] for v in witness]
        if any(p[0] not in (CLASS_COPY, PAIR) for p in roles):
            return None
        picked = sorted(p[2] for p in roles if p[0] == CLASS_COPY)
        if not self.source.is_multicolored_clique(picked):
            return None
        if set(witness) != self.selection(picked):
            return None
        return tuple(picked)

    def degree_audit(self) -> list[str]:
        """Vertices whose degree is off: fillers must have r, the rest r + 1."""
        r = self.regular_degree
        bad = []
        for v in self.graph.vertices():
            want = r if self.provenance[v][0] == FILLER else r + 1
            if self.graph.degree(v) != want:
                bad.append(f"{v} {self.provenance[v][0]}: degree {self.graph.degree(v)} != {want}")
        return bad

    def filler_mass(self, padded: int) -> int:
        return sum(len(c) for c in self.filler_cliques.get(padded, []))

    def dumps_provenance(self) -> str:
        return "".join(f"{v} " + " ".join(str(x) for x in self.provenance[v]) + "\n"
                       for v in sorted(self.provenance))

    def write(self, directory: str | Path, stem: str = "instance") -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        gpath = directory / f"{stem}.graph"
        ppath = directory / f"{stem}.prov"
        gpath.write_text(dumps_graph(self.graph), encoding="ascii")
        ppath.write_text(self.dumps_provenance(), encoding="ascii")
        return [gpath, ppath]


def reduce(inst: SrmcInstance, budget: ApproxBudget = ApproxBudget()) -> ReductionInstance:
    k, s, d = inst.k, inst.s, inst.d
    r = compute_r(k, s, d)
    k_prime = k + 2 * math.comb(k, 2)
    g = DynamicGraph()
    prov: dict[int, tuple] = {}

    def new(role: tuple) -> int:
        v = len(prov)
        prov[v] = role
        g.add_vertex(v)
        return v

    copy: dict[int, int] = {}
    for i in range(k):
        for u in inst.members(i):
            copy[u] = new((CLASS_COPY, i, u))
        for a, b in itertools.combinations(inst.members(i), 2):
            g.add_edge(copy[a], copy[b])

    sides: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    for i, j in itertools.combinations(range(k), 2):
        side_i, side_j = [], []
        for u in inst.members(i):
            for v in sorted(w for w in inst.adj[u] if inst.class_of(w) == j):
                a = new((PAIR, i, j, u, v, i))
                b = new((PAIR, i, j, v, u, j))
                g.add_edge(copy[u], a)
                g.add_edge(a, b)
                g.add_edge(b, copy[v])
                side_i.append((a, u))
                side_j.append((b, v))
        for side in (side_i, side_j):
            for (x, bx), (y, by) in itertools.combinations(side, 2):
                if bx != by:
                    g.add_edge(x, y)
        sides[(i, j, i)] = side_i
        sides[(i, j, j)] = side_j

    n_class_pad = r + 1 - (s - 1) - d * (k - 1)
    n_pair_pad = r - 1 - (s - 1) * d
    if n_class_pad < 0 or n_pair_pad < 0:
        raise InfeasibleParameters(f"negative padding ({n_class_pad}, {n_pair_pad}) for r={r}")
    padded: list[int] = []
    for i in range(k):
        for _ in range(n_class_pad):
            p = new((PAD_CLASS, i))
            for u in inst.members(i):
                g.add_edge(p, copy[u])
            padded.append(p)
    for (i, j, side), verts in sides.items():
        for _ in range(n_pair_pad):
            p = new((PAD_PAIR, i, j, side))
            for x, _base in verts:
                g.add_edge(p, x)
            padded.append(p)

    fillers: dict[int, list[list[int]]] = {}

    def clique(owner: int, idx: int) -> list[int]:
        vs = [new((FILLER, owner, idx)) for _ in range(r + 1)]
        for a, b in itertools.combinations(vs, 2):
            g.add_edge(a, b)
        return vs

    for p in padded:
        deficit = r + 1 - g.degree(p)
        if deficit < 0 or deficit % 2:
            raise InfeasibleParameters(f"padding vertex {p} has unfillable deficit {deficit}")
        chain: list[list[int]] = []
        for _ in range(deficit // 2):
            c = clique(p, len(chain))
            g.del_edge(c[0], c[1])
            g.add_edge(c[0], p)
            g.add_edge(c[1], p)
            chain.append(c)
        while chain and sum(map(len, chain)) < budget(k_prime) + 1:
            old, c = chain[-1], clique(p, len(chain))
            g.del_edge(old[2], old[3])
            g.del_edge(c[0], c[1])
            g.add_edge(old[2], c[0])
            g.add_edge(old[3], c[1])
            chain.append(c)
        fillers[p] = chain

    return ReductionInstance(g, k_prime, r, budget, prov, inst, fillers)


def _is_regular_after(g: DynamicGraph, r: int, deleted: set[int], wrong: list[int]) -> bool:
    # only vertices that start off-degree or sit next to a deletion can end up off-degree
    touched = set(wrong)
    for x in deleted:
        touched |= g.neighbors(x)
    for v in touched - deleted:
        if g.degree(v) - len(g.neighbors(v) & deleted) != r:
            return False
    return True


def verify_deletion_bruteforce(graph: DynamicGraph, r: int, max_deletions: int,
                               limit: int = BRUTE_FORCE_LIMIT) -> tuple[int, ...] | None:
    """First deletion set in size-then-lexicographic order leaving an r-regular graph."""
    vs = graph.vertices()
    total = sum(math.comb(len(vs), t) for t in range(max_deletions + 1))
    if total > limit:
        raise BudgetExceeded(f"{total} candidate subsets exceeds {limit}")
    wrong = [v for v in vs if graph.degree(v) != r]
    for t in range(max_deletions + 1):
        for subset in itertools.combinations(vs, t):
            if _is_regular_after(graph, r, set(subset), wrong):
                return subset
    return None


def verify_deletion_search(graph: DynamicGraph, r: int, max_deletions: int,
                           limit: int = DELETION_NODE_LIMIT) -> tuple[int, ...] | None:
    """Same answer as :func:`verify_deletion_bruteforce`, by a bounded search tree.

    A surviving vertex of degree below ``r`` must be deleted.  A surviving
    vertex of degree above ``r`` must be deleted or lose a neighbour, so we
    branch on it and its neighbours.  Every minimum solution is reached
    this way, so iterative deepening on the size and taking the smallest
    sorted tuple at the first size with solutions gives the canonical one.
    """
    deg = {v: graph.degree(v) for v in graph.vertices()}
    alive = set(deg)
    bad = {v for v, dv in deg.items() if dv != r}
    nodes = 0

    def delete(x: int) -> None:
        alive.discard(x)
        bad.discard(x)
        for w in graph.neighbors(x):
            if w in alive:
                deg[w] -= 1
                if deg[w] == r:
                    bad.discard(w)
                else:
                    bad.add(w)

    def restore(x: int) -> None:
        for w in graph.neighbors(x):
            if w in alive:
                deg[w] += 1
                if deg[w] == r:
                    bad.discard(w)
                else:
                    bad.add(w)
        alive.add(x)
        if deg[x] != r:
            bad.add(x)

    def search(depth: int, chosen: list[int], seen: set[frozenset[int]],
               found: list[tuple[int, ...]]) -> None:
        nonlocal nodes
        key = frozenset(chosen)
        if key in seen:
            return
        seen.add(key)
        nodes += 1
        if nodes > limit:
            raise BudgetExceeded(f"deletion search exceeded {limit} nodes")
        if not bad:
            found.append(tuple(sorted(chosen)))
            return
        if depth == 0:
            return
        low = [v for v in bad if deg[v] < r]
        if low:
            branches = [min(low)]
            # each low vertex needs its own deletion
            if len(low) > depth:
                return
        else:
            v = min(bad, key=lambda x: (deg[x], x))
            if deg[v] - r > depth:
                # deleting v is the only way to fix it within budget
                branches = [v]
            else:
                branches = [v] + sorted(w for w in graph.neighbors(v) if w in alive)
        for x in branches:
            delete(x)
            chosen.append(x)
            search(depth - 1, chosen, seen, found)
            chosen.pop()
            restore(x)

    for t in range(max_deletions + 1):
        found: list[tuple[int, ...]] = []
        search(t, [], set(), found)
        if found:
            return min(found)
    return None


def verify_deletion(red: ReductionInstance, max_deletions: int,
                    limit: int = DELETION_NODE_LIMIT) -> tuple[int, ...] | None:
    """Canonical minimum deletion set of size <= max_deletions, or None (no solution)."""
    return verify_deletion_search(red.graph, red.regular_degree, max_deletions, limit)


@dataclass
class EquivalenceReport:
    k: int
    s: int
    d: int
    r: int
    k_prime: int
    clique: tuple[int, ...] | None
    witness: tuple[int, ...] | None
    decoded: tuple[int, ...] | None
    degree_audit_ok: bool

    @property
    def clique_found(self) -> bool:
        return self.clique is not None

    @property
    def deletion_found(self) -> bool:
        return self.witness is not None

    @property
    def consistent(self) -> bool:
        return self.clique_found == self.deletion_found

    @property
    def witness_maps_back(self) -> bool:
        """Vacuously true when there is no witness."""
        return self.witness is None or self.decoded is not None

    def to_dict(self) -> dict:
        return {
            "k": self.k, "s": self.s, "d": self.d, "r": self.r, "k_prime": self.k_prime,
            "clique_found": self.clique_found,
            "deletion_found": self.deletion_found,
            "consistent": self.consistent,
            "witness_maps_back": self.witness_maps_back,
            "degree_audit_ok": self.degree_audit_ok,
            "clique": list(self.clique) if self.clique else None,
            "witness": list(self.witness) if self.witness is not None else None,
            "witness_size": len(self.witness) if self.witness is not None else None,
            "decoded_clique": list(self.decoded) if self.decoded else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def equivalence_check(inst: SrmcInstance, budget: ApproxBudget = ApproxBudget(),
                      red: ReductionInstance | None = None) -> EquivalenceReport:
    """Run both exact oracles and compare their verdicts."""
    if red is None:
        red = reduce(inst, budget)
    clique = find_clique(inst)
    witness = verify_deletion(red, red.k_prime)
    decoded = red.decode(witness) if witness is not None else None
    return EquivalenceReport(inst.k, inst.s, inst.d, red.regular_degree, red.k_prime,
                             clique, witness, decoded, not red.degree_audit())


def remains_regular(red: ReductionInstance, deleted) -> bool:
    return is_regular(red.graph.subgraph_without(deleted), red.regular_degree)
