"""Graph isomorphism and self-complementarity with verifiable certificates.

Decision pipeline, cheapest sound step first:

  1. group-automorphism certificate scan (Cayley inputs only): find sigma
     with sigma(S) = complement set; absence is inconclusive, never negative.
  2. invariant screens: the pinned fingerprint record, then for
     same-parameter strongly regular pairs a spectral mod-p rank screen and
     the edge-neighborhood edge-count profile.  A mismatch refutes.
  3. individualization-refinement backtracking search: complete decider,
     returns an explicit vertex bijection or exhausts the tree.

Every positive answer is re-validated against the bit matrices before it is
returned; refutations carry the distinguishing invariant and both values.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field as dataclass_field
from typing import Iterable, Optional, Sequence

import numpy as np

from .cayley import ConnectionSet, build_cayley, complement_connection_set
from .fields import factorize
from .graphs import (
    DenseGraph,
    SrgParams,
    _bfs_layers,
    _bits,
    check_srg,
    complement,
    edge_neighborhood_edge_profile,
    invariant_counts,
    mod_p_rank,
)
from .groups import GroupAutomorphism, _automorphism_batches

FINGERPRINT_PRIMES = (2, 3, 5, 7)
DEFAULT_NODE_BUDGET = 10**8
#: Deep (edge-count-within-cell) refinement triggers only below this cell count.
DEEP_REFINE_CELL_CAP = 32


class SearchBudgetExceeded(RuntimeError):
    """Raised internally when the node or time budget runs out."""


# --- certificates and decisions -----------------------------------------------


@dataclass(frozen=True)
class IsoCertificate:
    """Evidence backing an isomorphism decision.

    kind is one of "group-automorphism", "vertex-bijection",
    "invariant-refutation", "search-exhausted", "undecided".
    """

    kind: str
    permutation: Optional[tuple[int, ...]] = None
    automorphism: Optional[GroupAutomorphism] = None
    invariant: Optional[str] = None
    values: Optional[tuple] = None
    nodes: int = 0
    elapsed: float = 0.0
    scanned: Optional[int] = None

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.permutation is not None:
            out["permutation"] = list(self.permutation)
        if self.automorphism is not None:
            out["generator_images"] = [list(g) for g in self.automorphism.generator_images]
        if self.invariant is not None:
            out["invariant"] = self.invariant
            out["values"] = [_jsonable(v) for v in self.values]
        if self.kind in ("search-exhausted", "vertex-bijection", "undecided"):
            out["search_nodes"] = self.nodes
        if self.scanned is not None:
            out["automorphisms_scanned"] = self.scanned
        return out


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class IsoDecision:
    """Outcome of a decision run; isomorphic is None when undecided in budget."""

    isomorphic: Optional[bool]
    certificate: IsoCertificate
    decided_by: str

    def to_json_dict(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "decided_by": self.decided_by,
            "certificate": self.certificate.to_json_dict(),
        }


# --- fingerprints ----------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Pinned isomorphism-invariant record used for fast refutation."""

    n: int
    degrees: tuple[int, ...]
    srg: Optional[tuple[int, int, int, int]]
    triangles: int
    four_cliques: int
    mod_ranks: tuple[tuple[tuple[int, int], int], ...]
    distance_distribution: tuple

    FIELDS = (
        "n",
        "degrees",
        "srg",
        "triangles",
        "four_cliques",
        "mod_ranks",
        "distance_distribution",
    )

    def first_difference(self, other: "Fingerprint") -> Optional[tuple[str, tuple]]:
        for name in self.FIELDS:
            a, b = getattr(self, name), getattr(other, name)
            if a != b:
                return name, (a, b)
        return None


def fingerprint(graph: DenseGraph) -> Fingerprint:
    tri, quad, degrees = invariant_counts(graph)
    srg = check_srg(graph)
    ranks = tuple(
        ((p, shift), mod_p_rank(graph, p, shift))
        for p in FINGERPRINT_PRIMES
        for shift in (0, 1)
    )
    profiles = []
    for s in range(graph.n):
        layers = _bfs_layers(graph, s)
        reached = sum(m.bit_count() for m in layers)
        profiles.append(
            tuple(m.bit_count() for m in layers) + ((graph.n - reached,) if reached < graph.n else ())
        )
    return Fingerprint(
        n=graph.n,
        degrees=degrees,
        srg=srg.params.as_tuple() if srg.is_srg else None,
        triangles=tri,
        four_cliques=quad,
        mod_ranks=ranks,
        distance_distribution=tuple(sorted(profiles)),
    )


# --- certificate checking ----------------------------------------------------------


def verify_certificate(g1: DenseGraph, g2: DenseGraph, perm: Sequence[int]) -> bool:
    """Does perm carry g1 onto g2 edge-for-edge?  O(n^2) exact comparison."""
    if g1.n != g2.n:
        return False
    p = np.asarray(perm, dtype=np.int64)
    if p.shape != (g1.n,) or not _is_perm(p):
        return False
    A1 = g1.adjacency()
    A2 = g2.adjacency()
    return bool(np.array_equal(A2[np.ix_(p, p)], A1))


def _is_perm(p: np.ndarray) -> bool:
    seen = np.zeros(p.shape[0], dtype=bool)
    if (p < 0).any() or (p >= p.shape[0]).any():
        return False
    seen[p] = True
    return bool(seen.all())


# --- group-automorphism certificates ------------------------------------------------


def selfcomp_by_group_automorphism(
    conn: ConnectionSet,
) -> tuple[Optional[IsoCertificate], int]:
    """Scan Aut(G) in deterministic order for sigma(S) = G minus (S u {e}).

    Returns (certificate, automorphisms scanned).  No certificate is NOT a
    proof of non-self-complementarity; callers must treat it as inconclusive.
    """
    G = conn.group
    s_idx = np.array(conn.indices(), dtype=np.int64)
    n_idx = np.array(complement_connection_set(conn).indices(), dtype=np.int64)
    scanned = 0
    if len(s_idx) != len(n_idx):
        # |S| != (|G|-1)/2: no automorphism can match the sizes.
        return None, 0
    elems = G.elements()
    for img_idx, perms in _automorphism_batches(G):
        images = np.sort(perms[:, s_idx], axis=1) if len(s_idx) else perms[:, :0]
        hits = np.nonzero((images == n_idx).all(axis=1))[0]
        if hits.size:
            hit = int(hits[0])
            scanned += hit + 1
            sigma = GroupAutomorphism(G, tuple(elems[i] for i in img_idx[hit]))
            return (
                IsoCertificate(
                    kind="group-automorphism",
                    automorphism=sigma,
                    permutation=tuple(int(x) for x in perms[hit]),
                    scanned=scanned,
                ),
                scanned,
            )
        scanned += len(img_idx)
    return None, scanned


# --- color refinement ----------------------------------------------------------------


def _refine_pair(
    A1: np.ndarray,
    A2: np.ndarray,
    g1: DenseGraph,
    g2: DenseGraph,
    c1: np.ndarray,
    c2: np.ndarray,
    deep: bool,
) -> tuple[Optional[np.ndarray], Optional[np.ndarray]]:
    """Aligned iterated refinement of both colorings; None, None on conflict.

    Basic step: counts of neighbors in every color class (neighbor-color
    multisets).  When stable and still coarse, the optional deep step refines
    by the edge count inside N(v) restricted to each class, which separates
    vertices of strongly regular graphs that the counting step cannot.
    """
    n = A1.shape[0]
    ncolors = -1
    while True:
        # basic rounds until the color count stops growing
        while True:
            k = int(max(c1.max(initial=0), c2.max(initial=0))) + 1
            onehot1 = np.zeros((n, k))
            onehot1[np.arange(n), c1] = 1.0
            onehot2 = np.zeros((n, k))
            onehot2[np.arange(n), c2] = 1.0
            sig1 = np.column_stack([c1.astype(float), A1 @ onehot1])
            sig2 = np.column_stack([c2.astype(float), A2 @ onehot2])
            uniq, inverse = np.unique(
                np.vstack([sig1, sig2]), axis=0, return_inverse=True
            )
            new1 = inverse[:n].astype(np.int64)
            new2 = inverse[n:].astype(np.int64)
            if not np.array_equal(
                np.bincount(new1, minlength=len(uniq)),
                np.bincount(new2, minlength=len(uniq)),
            ):
                return None, None
            c1, c2 = new1, new2
            if len(uniq) == ncolors:
                break
            ncolors = len(uniq)
            if ncolors == n:
                return c1, c2
        if not deep or ncolors > DEEP_REFINE_CELL_CAP:
            return c1, c2
        d1 = _deep_signature(g1, c1, ncolors)
        d2 = _deep_signature(g2, c2, ncolors)
        uniq, inverse = np.unique(np.vstack([d1, d2]), axis=0, return_inverse=True)
        new1 = inverse[:n].astype(np.int64)
        new2 = inverse[n:].astype(np.int64)
        if not np.array_equal(
            np.bincount(new1, minlength=len(uniq)),
            np.bincount(new2, minlength=len(uniq)),
        ):
            return None, None
        if len(uniq) == ncolors:
            return c1, c2  # deep step split nothing; stable
        c1, c2 = new1, new2
        ncolors = len(uniq)


def _deep_signature(g: DenseGraph, colors: np.ndarray, k: int) -> np.ndarray:
    """Rows (color(v), e(G[N(v) & X_0]), ..., e(G[N(v) & X_{k-1}]))."""
    n = g.n
    masks = [0] * k
    for v in range(n):
        masks[colors[v]] |= 1 << v
    out = np.zeros((n, k + 1), dtype=np.int64)
    out[:, 0] = colors
    rows = g.rows
    for v in range(n):
        rv = rows[v]
        for c in range(k):
            sub = rv & masks[c]
            e = 0
            for w in _bits(sub):
                e += (rows[w] & (sub >> (w + 1) << (w + 1))).bit_count()
            out[v, c + 1] = e
    return out


# --- individualization-refinement search ----------------------------------------------


@dataclass
class _SearchStats:
    nodes: int = 0
    started: float = dataclass_field(default_factory=time.monotonic)


def _target_cell(c1: np.ndarray) -> Optional[int]:
    """Color id of the first smallest non-singleton cell, None if discrete."""
    sizes = np.bincount(c1)
    nonsingle = np.nonzero(sizes >= 2)[0]
    if nonsingle.size == 0:
        return None
    best = nonsingle[np.argmin(sizes[nonsingle])]
    return int(best)


def _extract_bijection(c1: np.ndarray, c2: np.ndarray) -> list[int]:
    order1 = np.argsort(c1, kind="stable")
    order2 = np.argsort(c2, kind="stable")
    perm = [0] * len(c1)
    for v1, v2 in zip(order1, order2):
        perm[int(v1)] = int(v2)
    return perm


def _ir_search(
    g1: DenseGraph,
    g2: DenseGraph,
    node_budget: int,
    time_budget: Optional[float],
    root_candidates: Optional[set[int]],
    deep: bool,
    stats: _SearchStats,
) -> Optional[list[int]]:
    """Complete backtracking search; a bijection, or None when exhausted.

    Raises SearchBudgetExceeded when a budget runs out.  Deterministic: the
    target cell is the first smallest non-singleton, the g1 vertex is fixed
    (lowest index), g2 candidates ascend, so the returned bijection is the
    lexicographically first successful branch.
    """
    n = g1.n
    if sys.getrecursionlimit() < 3 * n + 200:
        sys.setrecursionlimit(3 * n + 200)
    A1 = g1.adjacency().astype(np.float64)
    A2 = g2.adjacency().astype(np.float64)
    c1, c2 = _refine_pair(A1, A2, g1, g2, np.zeros(n, np.int64), np.zeros(n, np.int64), deep)
    if c1 is None:
        return None

    def check_budget():
        if stats.nodes > node_budget:
            raise SearchBudgetExceeded(f"node budget {node_budget} exhausted")
        if time_budget is not None and time.monotonic() - stats.started > time_budget:
            raise SearchBudgetExceeded(f"time budget {time_budget}s exhausted")

    def descend(c1: np.ndarray, c2: np.ndarray, depth: int) -> Optional[list[int]]:
        cell = _target_cell(c1)
        if cell is None:
            perm = _extract_bijection(c1, c2)
            if verify_certificate(g1, g2, perm):
                return perm
            return None
        v = int(np.nonzero(c1 == cell)[0][0])
        candidates = [int(u) for u in np.nonzero(c2 == cell)[0]]
        if depth == 0 and root_candidates is not None:
            candidates = [u for u in candidates if u in root_candidates]
        fresh = int(max(c1.max(), c2.max())) + 1
        for u in candidates:
            stats.nodes += 1
            check_budget()
            t1 = c1.copy()
            t2 = c2.copy()
            t1[v] = fresh
            t2[u] = fresh
            r1, r2 = _refine_pair(A1, A2, g1, g2, t1, t2, deep)
            if r1 is None:
                continue
            got = descend(r1, r2, depth + 1)
            if got is not None:
                return got
        return None

    return descend(c1, c2, 0)


# --- the deciders -------------------------------------------------------------------


def _verified_orbit_minima(g2: DenseGraph, aut_perms: Iterable[Sequence[int]]) -> set[int]:
    """Verify each permutation is an automorphism of g2; return orbit minima
    of the generated subgroup (sound root-level candidate filter)."""
    n = g2.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in aut_perms:
        if not verify_certificate(g2, g2, perm):
            raise ValueError("supplied permutation is not an automorphism of the target graph")
        for v in range(n):
            a, b = find(v), find(int(perm[v]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {v for v in range(n) if find(v) == v}


def _spectral_rank_screen(
    g1: DenseGraph, g2: DenseGraph, params: SrgParams
) -> Optional[tuple[str, tuple[int, int]]]:
    """mod_p_rank(A - s*I) for primes p dividing r - s (square-discriminant SRGs)."""
    pair = params.eigenvalues().integer_pair
    if pair is None:
        return None
    _, s = pair
    gap = pair[0] - pair[1]
    for p in sorted(factorize(gap)):
        shift = (-s) % p
        r1 = mod_p_rank(g1, p, shift)
        r2 = mod_p_rank(g2, p, shift)
        if r1 != r2:
            return f"mod_{p}_rank(A+{shift}I)", (r1, r2)
    return None


def are_isomorphic(
    g1: DenseGraph,
    g2: DenseGraph,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: Optional[float] = None,
    aut_perms: Optional[list] = None,
    force_search: bool = False,
    deep_refinement: Optional[bool] = None,
) -> IsoDecision:
    """Complete isomorphism decider with certificates.

    aut_perms: optional known automorphisms of g2 (verified before use) that
    collapse the root branching to orbit representatives.  force_search skips
    the invariant screens (test mode).  deep_refinement defaults to on when
    both graphs are strongly regular.
    """
    start = time.monotonic()
    if g1.n != g2.n:
        return IsoDecision(
            False,
            IsoCertificate(
                kind="invariant-refutation", invariant="vertex-count", values=(g1.n, g2.n)
            ),
            "vertex count",
        )
    srg1 = check_srg(g1)
    if not force_search:
        fp1, fp2 = fingerprint(g1), fingerprint(g2)
        diff = fp1.first_difference(fp2)
        if diff is not None:
            name, values = diff
            return IsoDecision(
                False,
                IsoCertificate(kind="invariant-refutation", invariant=name, values=values),
                "fingerprint",
            )
        if srg1.is_srg:
            hit = _spectral_rank_screen(g1, g2, srg1.params)
            if hit is not None:
                name, values = hit
                return IsoDecision(
                    False,
                    IsoCertificate(kind="invariant-refutation", invariant=name, values=values),
                    "spectral rank screen",
                )
        prof1 = edge_neighborhood_edge_profile(g1)
        prof2 = edge_neighborhood_edge_profile(g2)
        if prof1 != prof2:
            return IsoDecision(
                False,
                IsoCertificate(
                    kind="invariant-refutation",
                    invariant="edge-neighborhood-edge-profile",
                    values=(prof1, prof2),
                ),
                "edge profile screen",
            )
    root = _verified_orbit_minima(g2, aut_perms) if aut_perms is not None else None
    deep = deep_refinement if deep_refinement is not None else srg1.is_srg
    stats = _SearchStats()
    try:
        perm = _ir_search(g1, g2, node_budget, time_budget, root, deep, stats)
    except SearchBudgetExceeded:
        return IsoDecision(
            None,
            IsoCertificate(
                kind="undecided", nodes=stats.nodes, elapsed=time.monotonic() - start
            ),
            "budget exhausted",
        )
    elapsed = time.monotonic() - start
    if perm is None:
        return IsoDecision(
            False,
            IsoCertificate(kind="search-exhausted", nodes=stats.nodes, elapsed=elapsed),
            "search exhausted",
        )
    assert verify_certificate(g1, g2, perm)
    return IsoDecision(
        True,
        IsoCertificate(
            kind="vertex-bijection",
            permutation=tuple(perm),
            nodes=stats.nodes,
            elapsed=elapsed,
        ),
        "individualization-refinement search",
    )


def is_self_complementary(
    graph: DenseGraph,
    hint: Optional[ConnectionSet] = None,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: Optional[float] = None,
    scan_automorphisms: bool = True,
) -> IsoDecision:
    """Decide whether graph is isomorphic to its complement.

    A connection-set hint (the graph must equal build_cayley(hint)) enables
    the fast group-automorphism certificate scan and lets the fallback search
    use the verified translation automorphisms of the complement.
    """
    if hint is not None and build_cayley(hint) != graph:
        raise ValueError("hint connection set does not build this labeled graph")
    n = graph.n
    degrees = graph.degrees()
    if len(set(degrees)) == 1 and n > 1 and n % 4 != 1:
        # k-regular self-complementary graphs have n = 1 mod 4
        return IsoDecision(
            False,
            IsoCertificate(
                kind="invariant-refutation", invariant="regular-vertex-count-mod-4",
                values=(n, n % 4),
            ),
            "regularity precheck",
        )
    m = graph.edge_count()
    total = n * (n - 1) // 2
    if 2 * m != total:
        return IsoDecision(
            False,
            IsoCertificate(
                kind="invariant-refutation", invariant="edge-count", values=(m, total - m)
            ),
            "edge-count precheck",
        )
    comp = complement(graph)
    aut_perms = None
    if hint is not None:
        if scan_automorphisms:
            cert, _scanned = selfcomp_by_group_automorphism(hint)
            if cert is not None:
                assert verify_certificate(graph, comp, cert.permutation)
                return IsoDecision(True, cert, "group-automorphism certificate")
        # Translations x -> x + e_i generate a transitive subgroup of Aut of
        # every Cayley graph over the group; the search re-verifies them.
        add = hint.group.add_table
        aut_perms = [add[int(w)] for w in hint.group.index_weights]
    decision = are_isomorphic(
        graph,
        comp,
        node_budget=node_budget,
        time_budget=time_budget,
        aut_perms=aut_perms,
    )
    return decision
