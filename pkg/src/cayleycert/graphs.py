"""Dense undirected simple graphs with exact structural certification.

Adjacency lives in packed bit rows (Python ints), so common-neighbor counts
are single AND+popcount operations; a numpy uint8 mirror is cached for the
vectorized kernels (mod-p rank, color refinement).  Everything is exact
integer arithmetic; there is no floating-point spectral computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, Optional, Sequence

import numpy as np

#: Dense representation budget.
MAX_VERTICES = 4096


@dataclass(frozen=True)
class DenseGraph:
    """Undirected simple graph; row i is the neighbor bitmask of vertex i."""

    n: int
    rows: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __init__(self, rows: Sequence[int], n: Optional[int] = None):
        rows = tuple(int(r) for r in rows)
        if n is None:
            n = len(rows)
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        if n > MAX_VERTICES:
            raise ValueError(f"vertex count {n} exceeds the dense budget {MAX_VERTICES}")
        if len(rows) != n:
            raise ValueError(f"{len(rows)} rows for {n} vertices")
        limit = 1 << n
        for u, row in enumerate(rows):
            if not 0 <= row < limit:
                raise ValueError(f"row {u} has bits outside 0..{n - 1}")
            if (row >> u) & 1:
                raise ValueError(f"loop at vertex {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_cache", {})
        A = self.adjacency()
        if not np.array_equal(A, A.T):
            u, v = map(int, np.argwhere(A != A.T)[0])
            raise ValueError(f"adjacency not symmetric at pair ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DenseGraph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(rows, n)

    @classmethod
    def from_adjacency(cls, A: np.ndarray) -> "DenseGraph":
        A = np.asarray(A)
        n = A.shape[0]
        packed = np.packbits(A.astype(bool), axis=1, bitorder="little")
        rows = [int.from_bytes(packed[u].tobytes(), "little") for u in range(n)]
        return cls(rows, n)

    def adjacency(self) -> np.ndarray:
        """Cached n x n uint8 mirror of the bit rows."""
        A = self._cache.get("np")
        if A is None:
            nbytes = (self.n + 7) // 8
            buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
            bits = np.unpackbits(
                np.frombuffer(buf, dtype=np.uint8).reshape(self.n, nbytes),
                axis=1,
                bitorder="little",
            )[:, : self.n]
            A = np.ascontiguousarray(bits)
            A.setflags(write=False)
            self._cache["np"] = A
        return A

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self.rows[u] >> (u + 1) << (u + 1)
            while m:
                lsb = m & -m
                out.append((u, lsb.bit_length() - 1))
                m ^= lsb
        return out

    def relabel(self, perm: Sequence[int]) -> "DenseGraph":
        """Image graph where vertex u is renamed perm[u]."""
        rows = [0] * self.n
        for u in range(self.n):
            m = self.rows[u]
            acc = 0
            while m:
                lsb = m & -m
                acc |= 1 << perm[lsb.bit_length() - 1]
                m ^= lsb
            rows[perm[u]] = acc
        return DenseGraph(rows, self.n)


def _bits(mask: int):
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


# --- structural parameters ----------------------------------------------------


@dataclass(frozen=True)
class SrgParams:
    """Strongly-regular parameter tuple (n, k, lam, mu) with the derived pair
    beta = lam - mu and delta = beta^2 + 4(k - mu)."""

    n: int
    k: int
    lam: int
    mu: int

    @property
    def beta(self) -> int:
        return self.lam - self.mu

    @property
    def delta(self) -> int:
        return self.beta**2 + 4 * (self.k - self.mu)

    @property
    def conference_t(self) -> Optional[int]:
        """t when the parameters are Paley type (4t+1, 2t, t-1, t), else None."""
        t = self.mu
        if (self.n, self.k, self.lam, self.mu) == (4 * t + 1, 2 * t, t - 1, t):
            return t
        return None

    def count_identity_holds(self) -> bool:
        """(n-k-1) mu = k (k-lam-1), the standard feasibility relation."""
        return (self.n - self.k - 1) * self.mu == self.k * (self.k - self.lam - 1)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)

    def eigenvalues(self) -> "Eigenvalues":
        return Eigenvalues(self.k, self.beta, self.delta)


@dataclass(frozen=True)
class Eigenvalues:
    """Exact spectrum record: k and (beta +- sqrt(delta))/2 kept as integers."""

    k: int
    beta: int
    delta: int

    @property
    def delta_is_square(self) -> bool:
        return isqrt(self.delta) ** 2 == self.delta

    @property
    def integer_pair(self) -> Optional[tuple[int, int]]:
        """(r, s) with r > s when delta is a perfect square, else None."""
        if not self.delta_is_square:
            return None
        root = isqrt(self.delta)
        if (self.beta + root) % 2 != 0:
            return None
        return ((self.beta + root) // 2, (self.beta - root) // 2)


@dataclass(frozen=True)
class IntersectionArray:
    """{b0, ..., b_{d-1}; c1, ..., c_d} of a distance-regular graph."""

    bs: tuple[int, ...]
    cs: tuple[int, ...]

    def __post_init__(self):
        if len(self.bs) != len(self.cs):
            raise ValueError("b and c sequences must have equal length d")
        if self.cs and self.cs[0] != 1:
            raise ValueError("c1 must be 1")

    @property
    def d(self) -> int:
        return len(self.bs)

    @property
    def k(self) -> int:
        return self.bs[0]

    def a(self, i: int) -> int:
        b = self.bs[i] if i < self.d else 0
        c = self.cs[i - 1] if i >= 1 else 0
        return self.k - b - c

    def __str__(self) -> str:
        return "{%s;%s}" % (
            ",".join(map(str, self.bs)),
            ",".join(map(str, self.cs)),
        )


@dataclass(frozen=True)
class SrgResult:
    """check_srg outcome; reason/witness explain a refusal."""

    params: Optional[SrgParams]
    reason: Optional[str] = None
    witness: Optional[tuple] = None

    @property
    def is_srg(self) -> bool:
        return self.params is not None


@dataclass(frozen=True)
class DistanceRegularResult:
    array: Optional[IntersectionArray]
    reason: Optional[str] = None
    witness: Optional[tuple] = None

    @property
    def is_distance_regular(self) -> bool:
        return self.array is not None


# --- operations -----------------------------------------------------------------


def complement(graph: DenseGraph) -> DenseGraph:
    n = graph.n
    full = (1 << n) - 1
    rows = [(r ^ full) & ~(1 << u) for u, r in enumerate(graph.rows)]
    return DenseGraph(rows, n)


def _bfs_layers(graph: DenseGraph, source: int) -> list[int]:
    """Bit masks of the distance spheres around source (layer[i] = sphere i)."""
    visited = frontier = 1 << source
    layers = [frontier]
    while True:
        nxt = 0
        for u in _bits(frontier):
            nxt |= graph.rows[u]
        nxt &= ~visited
        if not nxt:
            return layers
        layers.append(nxt)
        visited |= nxt
        frontier = nxt


def is_connected(graph: DenseGraph) -> bool:
    layers = _bfs_layers(graph, 0)
    reached = 0
    for m in layers:
        reached |= m
    return reached == (1 << graph.n) - 1


def diameter(graph: DenseGraph) -> Optional[int]:
    """Maximum eccentricity, or None when the graph is disconnected."""
    full = (1 << graph.n) - 1
    worst = 0
    for s in range(graph.n):
        layers = _bfs_layers(graph, s)
        reached = 0
        for m in layers:
            reached |= m
        if reached != full:
            return None
        worst = max(worst, len(layers) - 1)
    return worst


def check_srg(graph: DenseGraph) -> SrgResult:
    """Certify strong regularity by direct common-neighbor counting."""
    n = graph.n
    degs = graph.degrees()
    k = degs[0]
    for u in range(1, n):
        if degs[u] != k:
            return SrgResult(None, "not regular", (0, u, k, degs[u]))
    if k == n - 1:
        return SrgResult(None, "complete graph", None)
    if not is_connected(graph):
        return SrgResult(None, "disconnected", None)
    lam = mu = None
    lam_pair = mu_pair = None
    for u in range(n):
        ru = graph.rows[u]
        for v in range(u + 1, n):
            c = (ru & graph.rows[v]).bit_count()
            if (ru >> v) & 1:
                if lam is None:
                    lam, lam_pair = c, (u, v)
                elif c != lam:
                    return SrgResult(
                        None, "common-neighbor count not constant on edges",
                        (lam_pair, lam, (u, v), c),
                    )
            else:
                if mu is None:
                    mu, mu_pair = c, (u, v)
                elif c != mu:
                    return SrgResult(
                        None, "common-neighbor count not constant on non-edges",
                        (mu_pair, mu, (u, v), c),
                    )
    if lam is None:
        return SrgResult(None, "no edges", None)
    params = SrgParams(n, k, lam, mu)
    assert params.count_identity_holds(), params
    return SrgResult(params)


def check_adjacency_identity(graph: DenseGraph, params: SrgParams) -> bool:
    """Exact entrywise check of A^2 = lam*A + mu*(J - I - A) + k*I."""
    n, k, lam, mu = params.as_tuple()
    if n != graph.n:
        return False
    for u in range(n):
        ru = graph.rows[u]
        if ru.bit_count() != k:
            return False
        for v in range(u + 1, n):
            c = (ru & graph.rows[v]).bit_count()
            expected = lam if (ru >> v) & 1 else mu
            if c != expected:
                return False
    return True


def intersection_array(graph: DenseGraph) -> DistanceRegularResult:
    """Distance partition from every base vertex; b_i, c_i must be constant."""
    n = graph.n
    degs = graph.degrees()
    k = degs[0]
    for u in range(1, n):
        if degs[u] != k:
            return DistanceRegularResult(None, "not regular", (0, u, k, degs[u]))
    base_layers = _bfs_layers(graph, 0)
    full = (1 << n) - 1
    if sum(base_layers) != full:  # layers are disjoint masks
        return DistanceRegularResult(None, "disconnected", None)
    d = len(base_layers) - 1
    bs: list[Optional[int]] = [None] * d
    cs: list[Optional[int]] = [None] * d
    for s in range(n):
        layers = _bfs_layers(graph, s)
        if len(layers) - 1 != d:
            return DistanceRegularResult(
                None, "eccentricity not constant", (0, d, s, len(layers) - 1)
            )
        for i, layer in enumerate(layers):
            above = layers[i + 1] if i + 1 <= d else 0
            below = layers[i - 1] if i >= 1 else 0
            for x in _bits(layer):
                rx = graph.rows[x]
                b = (rx & above).bit_count()
                c = (rx & below).bit_count()
                if i < d:
                    if bs[i] is None:
                        bs[i] = b
                    elif bs[i] != b:
                        return DistanceRegularResult(
                            None, f"b_{i} not constant", (s, x, bs[i], b)
                        )
                elif b:
                    raise AssertionError("vertex beyond eccentricity")
                if i >= 1:
                    if cs[i - 1] is None:
                        cs[i - 1] = c
                    elif cs[i - 1] != c:
                        return DistanceRegularResult(
                            None, f"c_{i} not constant", (s, x, cs[i - 1], c)
                        )
    return DistanceRegularResult(IntersectionArray(tuple(bs), tuple(cs)))


def invariant_counts(graph: DenseGraph) -> tuple[int, int, tuple[int, ...]]:
    """(triangle count, 4-clique count, sorted degree multiset), all exact."""
    n = graph.n
    rows = graph.rows
    tri3 = 0  # every triangle counted once per edge
    quad6 = 0  # every 4-clique counted once per edge (opposite pair is an edge)
    for u in range(n):
        ru = rows[u]
        m = ru >> (u + 1) << (u + 1)
        for v in _bits(m):
            common = ru & rows[v]
            tri3 += common.bit_count()
            for w in _bits(common):
                quad6 += (rows[w] & (common >> (w + 1) << (w + 1))).bit_count()
    assert tri3 % 3 == 0 and quad6 % 6 == 0
    return tri3 // 3, quad6 // 6, tuple(sorted(graph.degrees()))


def edge_neighborhood_edge_profile(graph: DenseGraph) -> tuple[tuple[int, int], ...]:
    """Multiset over adjacent pairs {u,v} of the edge count inside the common
    neighborhood G[N(u) & N(v)], as sorted (value, multiplicity) pairs.

    Isomorphism-invariant and strictly finer than the 4-clique count (whose
    value is one sixth of the weighted sum); separates same-parameter
    strongly regular graphs that agree on every counting and rank invariant.
    """
    rows = graph.rows
    counts: dict[int, int] = {}
    for u in range(graph.n):
        ru = rows[u]
        for v in _bits(ru >> (u + 1) << (u + 1)):
            common = ru & rows[v]
            e = 0
            for w in _bits(common):
                e += (rows[w] & (common >> (w + 1) << (w + 1))).bit_count()
            counts[e] = counts.get(e, 0) + 1
    return tuple(sorted(counts.items()))


def mod_p_rank(graph: DenseGraph, p: int, shift: int = 0) -> int:
    """Rank of (A + shift*I) over Z_p by Gaussian elimination."""
    from .fields import is_prime

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = graph.n
    M = graph.adjacency().astype(np.int64)
    if shift % p:
        M[np.arange(n), np.arange(n)] += shift
    M %= p
    rank = 0
    for col in range(n):
        pivots = np.nonzero(M[rank:, col])[0]
        if pivots.size == 0:
            continue
        piv = rank + int(pivots[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, col]), -1, p)
        M[rank] = (M[rank] * inv) % p
        below = M[rank + 1 :, col]
        hit = np.nonzero(below)[0]
        if hit.size:
            M[rank + 1 + hit] = (
                M[rank + 1 + hit] - below[hit, None] * M[rank]
            ) % p
        rank += 1
        if rank == n:
            break
    return rank


# --- external formats -----------------------------------------------------------


def to_graph6(graph: DenseGraph) -> str:
    """Standard graph6 line (without trailing newline)."""
    n = graph.n
    if n <= 62:
        header = chr(n + 63)
    else:
        header = "~" + "".join(
            chr(((n >> s) & 0x3F) + 63) for s in (12, 6, 0)
        )
    bits = []
    for j in range(1, n):
        col = graph.rows[j]
        for i in range(j):
            bits.append((col >> i) & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return header + "".join(chars)


def from_graph6(text: str) -> DenseGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ValueError("empty graph6 input")
    if s[0] == "~":
        if len(s) < 4 or s[1] == "~":
            raise ValueError("unsupported graph6 header (n > 258047 not in budget)")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"graph6 vertex count {n} outside budget 1..{MAX_VERTICES}")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ValueError(f"invalid graph6 byte {ch!r}")
        bits.extend((val >> s6) & 1 for s6 in (5, 4, 3, 2, 1, 0))
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return DenseGraph(rows, n)


def to_edge_list(graph: DenseGraph) -> str:
    return "\n".join(f"{u} {v}" for u, v in graph.edges()) + "\n"


def from_edge_list(text: str, n: Optional[int] = None) -> DenseGraph:
    """Parse "u v" lines; n defaults to max vertex + 1."""
    edges = []
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        top = max(top, u, v)
    if n is None:
        n = top + 1
    if n < 1:
        raise ValueError("edge list defines no vertices")
    return DenseGraph.from_edges(n, edges)
