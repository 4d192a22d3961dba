"""Simple undirected graphs, degree accounting, and stub matching.

Graphs are immutable: vertices are dense integers ``0..N-1`` and edges
are kept as a canonical ``(m, 2)`` integer array with ``u < v``, sorted
lexicographically and deduplicated.  The array form keeps degree
computation and induced-subgraph extraction vectorized, which is what
the bootstrap loop leans on; neighbor queries are still available for
small-scale inspection.

The module also provides the uniform stub-matching construction that
realizes a prescribed degree sequence as a random graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GraphConstructionError(RuntimeError):
    """Raised when a random-graph construction cannot be completed."""


class Graph:
    """An immutable simple undirected graph on dense integer vertices.

    Attributes:
        num_vertices: vertex count N; vertices are 0..N-1.
        edges: (m, 2) int array, u < v, lexsorted, no duplicates,
            no self-loops.
        simplified_multigraph: True when construction produced
            self-loops or parallel edges that were dropped.
        retry_exhausted: True when a retrying construction gave up and
            fell back to dropping collisions.
        original_ids: for subgraphs, the parent vertex id of each local
            vertex (sorted ascending); None for graphs built directly.
    """

    __slots__ = ("num_vertices", "edges", "simplified_multigraph",
                 "retry_exhausted", "original_ids", "_degrees")

    def __init__(self, num_vertices: int, edges,
                 simplified_multigraph: bool = False,
                 retry_exhausted: bool = False,
                 original_ids: np.ndarray | None = None):
        if num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        self.num_vertices = int(num_vertices)
        arr = np.asarray(edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be an (m, 2) array of vertex pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= num_vertices):
            raise ValueError("edge endpoint outside 0..num_vertices-1")
        self.edges = _canonical_edges(arr)
        self.edges.flags.writeable = False
        self.simplified_multigraph = bool(simplified_multigraph)
        self.retry_exhausted = bool(retry_exhausted)
        self.original_ids = original_ids
        self._degrees = None

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every vertex, as an int array of length N."""
        if self._degrees is None:
            d = np.bincount(self.edges.ravel(), minlength=self.num_vertices)
            d.flags.writeable = False
            self._degrees = d
        return self._degrees

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.num_vertices:
            raise ValueError(f"vertex {v} out of range")
        u0, u1 = self.edges[:, 0], self.edges[:, 1]
        return np.sort(np.concatenate((u1[u0 == v], u0[u1 == v])))

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def __repr__(self) -> str:
        return (f"Graph(num_vertices={self.num_vertices}, "
                f"num_edges={self.num_edges})")


def _canonical_edges(arr: np.ndarray) -> np.ndarray:
    """Sort endpoints, drop self-loops, deduplicate, lexsort rows."""
    if arr.shape[0] == 0:
        return arr.copy()
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keep = lo != hi
    lo, hi = lo[keep], hi[keep]
    pairs = np.stack((lo, hi), axis=1)
    if pairs.shape[0] == 0:
        return pairs
    return np.unique(pairs, axis=0)


@dataclass(frozen=True)
class DegreeDistribution:
    """Normalized frequencies of vertex degrees 0..k_max.

    ``count_basis`` records how many vertices the frequencies were
    computed from, so exact counts can be recovered.
    """

    pmf: np.ndarray
    count_basis: int

    def __post_init__(self):
        pmf = np.asarray(self.pmf, dtype=float)
        object.__setattr__(self, "pmf", pmf)
        if pmf.ndim != 1 or pmf.size == 0:
            raise ValueError("pmf must be a non-empty 1-d vector")
        if np.any(pmf < 0) or np.any(pmf > 1):
            raise ValueError("pmf entries must lie in [0, 1]")
        if abs(pmf.sum() - 1.0) > 1e-12:
            raise ValueError("pmf must sum to 1 within 1e-12")

    @property
    def k_max(self) -> int:
        return len(self.pmf) - 1

    def counts(self) -> np.ndarray:
        return np.rint(self.pmf * self.count_basis).astype(np.int64)

    def zero_truncated(self) -> "DegreeDistribution":
        """Condition on degree >= 1 and renormalize.

        The returned distribution keeps index alignment (entry 0 is 0)
        and its count basis excludes the isolated vertices.
        """
        mass0 = self.pmf[0]
        if mass0 >= 1.0:
            raise ValueError("cannot zero-truncate a point mass at degree 0")
        isolates = int(round(mass0 * self.count_basis))
        out = self.pmf.copy()
        out[0] = 0.0
        out /= out.sum()
        return DegreeDistribution(pmf=out,
                                  count_basis=self.count_basis - isolates)


def degree_distribution(g: Graph) -> DegreeDistribution:
    """Fraction of vertices at each degree 0..max-degree of ``g``."""
    counts = np.bincount(g.degrees)
    return DegreeDistribution(pmf=counts / g.num_vertices,
                              count_basis=g.num_vertices)


def degree_sequence_from_pmf(pmf, n_vertices: int) -> np.ndarray:
    """Materialize a degree sequence of length ``n_vertices`` from a PMF.

    Counts per degree come from largest-remainder rounding of
    ``n_vertices * pmf`` (remainder ties resolved toward the higher
    degree), which preserves the total exactly.  If the resulting stub
    total is odd, one extra stub is assigned to a single vertex of the
    most common degree so the sequence becomes realizable.

    Accepts a DegreeDistribution, a TruncatedPmf, or a bare vector.
    """
    if n_vertices < 1:
        raise ValueError("n_vertices must be positive")
    values = getattr(pmf, "pmf", None)
    if values is None:
        values = getattr(pmf, "values", pmf)
    values = np.asarray(values, dtype=float)
    if np.any(values < 0):
        raise ValueError("pmf entries must be nonnegative")
    if abs(values.sum() - 1.0) > 1e-9:
        raise ValueError("pmf must be normalized")

    scaled = values * n_vertices
    counts = np.floor(scaled).astype(np.int64)
    deficit = n_vertices - int(counts.sum())
    if deficit > 0:
        remainders = scaled - counts
        # Ties toward the higher degree: sort by (remainder, k) descending.
        order = np.lexsort((-np.arange(len(values)), -remainders))
        counts[order[:deficit]] += 1

    degrees = np.repeat(np.arange(len(counts)), counts)
    if int(degrees.sum()) % 2 == 1:
        modal_degree = int(np.argmax(counts))
        target = int(np.searchsorted(degrees, modal_degree))
        degrees[target] += 1
        degrees.sort()
    return degrees


def pair_stubs(stub_order) -> np.ndarray:
    """Pair consecutive entries of an ordered stub list into edges.

    ``stub_order`` lists vertex labels, one entry per stub; entries
    2i and 2i+1 become the endpoints of edge i.  The result may contain
    self-loops and repeats; callers decide how to simplify.
    """
    stubs = np.asarray(stub_order, dtype=np.int64)
    if stubs.size % 2 != 0:
        raise ValueError("stub list must have even length")
    return stubs.reshape(-1, 2)


def configuration_model(degree_sequence, rng_seed: int,
                        simplify_policy: str = "ignore",
                        max_retries: int = 100) -> Graph:
    """Random graph with the prescribed degree sequence via stub matching.

    Each vertex i contributes degree_sequence[i] stubs; a uniform random
    permutation of the stub list is paired off into edges.  Under
    ``"ignore"`` any self-loops and parallel edges from the matching are
    dropped from the simple graph (flagged on the result).  Under
    ``"retry"`` the permutation is redrawn until the matching is simple,
    up to ``max_retries`` draws, after which the construction falls back
    to dropping collisions and sets ``retry_exhausted``.
    """
    degrees = np.asarray(degree_sequence, dtype=np.int64)
    if np.any(degrees < 0):
        raise ValueError("degrees must be nonnegative")
    total = int(degrees.sum())
    if total % 2 != 0:
        raise ValueError(f"degree sum {total} is odd; no matching exists")
    if simplify_policy not in ("ignore", "retry"):
        raise ValueError(f"unknown simplify_policy {simplify_policy!r}")
    if max_retries < 1:
        raise ValueError("max_retries must be at least 1")

    n = len(degrees)
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    rng = np.random.default_rng(np.random.SeedSequence(rng_seed))

    attempts = 1 if simplify_policy == "ignore" else max_retries
    pairs = None
    for _ in range(attempts):
        shuffled = rng.permutation(stubs)
        pairs = pair_stubs(shuffled)
        if simplify_policy == "ignore":
            break
        if _matching_is_simple(pairs):
            return Graph(n, pairs)

    simple = _canonical_edges(pairs)
    collided = simple.shape[0] != pairs.shape[0]
    return Graph(n, simple,
                 simplified_multigraph=collided,
                 retry_exhausted=(simplify_policy == "retry"))


def _matching_is_simple(pairs: np.ndarray) -> bool:
    if pairs.shape[0] == 0:
        return True
    if np.any(pairs[:, 0] == pairs[:, 1]):
        return False
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keys = lo * (np.int64(pairs.max()) + 1) + hi
    return len(np.unique(keys)) == pairs.shape[0]


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph on ``vertices`` keeping edges with both endpoints inside.

    Vertices are relabeled to 0..len(vertices)-1 in ascending order of
    their original ids; the mapping is recorded on ``original_ids``.
    """
    verts = np.unique(np.asarray(vertices, dtype=np.int64))
    if verts.size == 0:
        raise ValueError("vertex set must be non-empty")
    if verts.min() < 0 or verts.max() >= g.num_vertices:
        raise ValueError("vertex id outside the graph")

    mask = np.zeros(g.num_vertices, dtype=bool)
    mask[verts] = True
    keep = mask[g.edges[:, 0]] & mask[g.edges[:, 1]]
    relabel = np.cumsum(mask) - 1
    sub_edges = relabel[g.edges[keep]]
    return Graph(len(verts), sub_edges, original_ids=verts)


def load_edge_list(path) -> tuple[Graph, list[str]]:
    """Parse a whitespace-separated edge-list file.

    One edge per line as two tokens; lines starting with ``#`` are
    comments.  Tokens are mapped to dense integer ids in first-seen
    order; self-loops are dropped and duplicate edges collapsed.
    Returns the graph and the token for each vertex id.
    """
    ids: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if len(tokens) != 2:
                raise ValueError(
                    f"{path}:{lineno}: expected two vertex tokens, "
                    f"got {len(tokens)}"
                )
            pair = []
            for tok in tokens:
                if tok not in ids:
                    ids[tok] = len(ids)
                pair.append(ids[tok])
            pairs.append((pair[0], pair[1]))
    if not ids:
        raise ValueError(f"{path}: no edges found")
    labels = [None] * len(ids)
    for tok, idx in ids.items():
        labels[idx] = tok
    graph = Graph(len(ids), np.asarray(pairs, dtype=np.int64))
    return graph, labels


def write_edge_list(g: Graph, path, labels: list[str] | None = None) -> None:
    """Write edges one per line, sorted, using labels or integer ids."""
    if labels is not None and len(labels) != g.num_vertices:
        raise ValueError("labels length must equal num_vertices")
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in g.edges:
            a = labels[u] if labels is not None else str(int(u))
            b = labels[v] if labels is not None else str(int(v))
            fh.write(f"{a} {b}\n")
