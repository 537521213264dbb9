"""Explicit-graph engine.

Simple undirected graphs with edge-list / graph6 parsing and named builders
(cycles, complete graphs, Kneser and Hamming families, the bowtie), plus the
operations the spectral theory is verified against: distance-regularity
recognition, numeric spectral idempotents, homomorphism matrices and their
identities, neighbourhood partitions of geodetic pairs, far-layer components,
and a deterministic backtracking homomorphism search with arc-consistency
pruning.

Numeric checks run in floating point at documented tolerances; the exact
engine lives on the parameter side and is used here only for cross-checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .params import (
    InternalConsistencyError,
    IntersectionArray,
    UnsupportedArrayError,
    derive_parameters,
    spectral_data,
)

VertexMap = Sequence[int]


class GraphFormatError(ValueError):
    """Malformed edge-list or graph6 input."""


class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted neighbour lists."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphFormatError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u} rejected")
            if v in nbrs[u]:
                raise GraphFormatError(f"parallel edge ({u},{v}) rejected")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.neighbors = tuple(tuple(sorted(s)) for s in nbrs)
        self.num_edges = m
        self._dist: np.ndarray | None = None

    # -- basic accessors ----------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u, v in self.edges():
            A[u, v] = A[v, u] = 1.0
        return A

    def distances(self) -> np.ndarray:
        """All-pairs hop distances via BFS; -1 encodes unreachable."""
        if self._dist is None:
            n = self.n
            dist = np.full((n, n), -1, dtype=np.int64)
            for s in range(n):
                row = dist[s]
                row[s] = 0
                frontier = [s]
                d = 0
                while frontier:
                    d += 1
                    nxt = []
                    for u in frontier:
                        for w in self.neighbors[u]:
                            if row[w] < 0:
                                row[w] = d
                                nxt.append(w)
                    frontier = nxt
            self._dist = dist
        return self._dist

    @property
    def connected(self) -> bool:
        return bool((self.distances() >= 0).all())

    def diameter(self) -> int:
        dist = self.distances()
        if (dist < 0).any():
            raise ValueError("diameter of a disconnected graph")
        return int(dist.max())

    def induced(self, verts: Sequence[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph plus the old-label -> new-label map."""
        verts = sorted(set(verts))
        idx = {v: i for i, v in enumerate(verts)}
        edges = [(idx[u], idx[v]) for u, v in self.edges()
                 if u in idx and v in idx]
        return Graph(len(verts), edges), idx

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """New graph with vertex v renamed perm[v]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and \
            self.neighbors == other.neighbors

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    # -- serialization -------------------------------------------------------

    def to_edge_list_text(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def to_graph6(self) -> str:
        if self.n > 62:
            raise GraphFormatError("graph6 encoder here covers n <= 62")
        bits = []
        for j in range(1, self.n):
            for i in range(j):
                bits.append(1 if self.has_edge(i, j) else 0)
        while len(bits) % 6:
            bits.append(0)
        out = [chr(self.n + 63)]
        for i in range(0, len(bits), 6):
            val = 0
            for b in bits[i:i + 6]:
                val = (val << 1) | b
            out.append(chr(val + 63))
        return "".join(out)


def _parse_edge_list(text: str) -> Graph:
    n_declared = None
    edges = []
    max_v = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2 and n_declared is None and not edges:
            n_declared = int(parts[1])
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer vertex") from exc
        edges.append((u, v))
        max_v = max(max_v, u, v)
    n = n_declared if n_declared is not None else max_v + 1
    return Graph(max(n, 0), edges)


def _parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 input")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= v <= 63 for v in data):
        raise GraphFormatError("graph6 characters out of range")
    if data[0] < 63:
        n = data[0]
        pos = 1
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        raise GraphFormatError("graph6 vertex counts beyond 2^18 unsupported")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - pos != need:
        raise GraphFormatError(
            f"graph6 payload length {len(data) - pos} != expected {need}")
    bits = []
    for v in data[pos:]:
        bits.extend((v >> k) & 1 for k in range(5, -1, -1))
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def parse_graph(text: str, fmt: str = "edge-list") -> Graph:
    """Parse `edge-list` (one "u v" per line, optional "n <count>" header)
    or `graph6` text."""
    if fmt == "edge-list":
        return _parse_edge_list(text)
    if fmt == "graph6":
        return _parse_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------------------
# Named families.  Canonical vertex orders:
#   cycle(n): 0..n-1 around the cycle;
#   kneser(v,k): k-subsets of {0..v-1} in colexicographic order;
#   hamming(d,q): length-d base-q strings in lexicographic order
#   (vertex index = most-significant-first base-q value);
#   petersen = kneser(5,2);  bowtie: triangles {0,1,2} and {0,3,4}.
# ---------------------------------------------------------------------------

def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, list(combinations(range(n), 2)))


def _kneser(v: int, k: int) -> Graph:
    if not (k >= 1 and v >= 2 * k):
        raise ValueError("kneser needs v >= 2k >= 2")
    subsets = sorted(combinations(range(v), k), key=lambda s: tuple(reversed(s)))
    sets = [frozenset(s) for s in subsets]
    edges = [(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets))
             if not (sets[i] & sets[j])]
    return Graph(len(sets), edges)


def _hamming(d: int, q: int) -> Graph:
    if d < 1 or q < 2:
        raise ValueError("hamming needs d >= 1, q >= 2")
    n = q ** d
    edges = []
    for x in range(n):
        digits = []
        t = x
        for _ in range(d):
            digits.append(t % q)
            t //= q
        digits.reverse()
        for pos in range(d):
            for sym in range(digits[pos] + 1, q):
                y = x + (sym - digits[pos]) * q ** (d - 1 - pos)
                edges.append((x, y))
    return Graph(n, edges)


def _bowtie() -> Graph:
    return Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def build_named(name: str, *args: int) -> Graph:
    """cycle(n), complete(n), kneser(v,k), hamming(d,q), petersen, bowtie."""
    builders = {
        "cycle": (_cycle, 1),
        "complete": (_complete, 1),
        "kneser": (_kneser, 2),
        "hamming": (_hamming, 2),
        "petersen": (lambda: _kneser(5, 2), 0),
        "bowtie": (_bowtie, 0),
    }
    if name not in builders:
        raise ValueError(f"unknown named graph {name!r}")
    fn, arity = builders[name]
    if len(args) != arity:
        raise ValueError(f"{name} expects {arity} parameter(s), got {len(args)}")
    return fn(*args)


# ---------------------------------------------------------------------------
# Distance-regularity and numeric spectra.
# ---------------------------------------------------------------------------

def recognize_drg(g: Graph) -> IntersectionArray | None:
    """The intersection array when every ordered pair at distance i sees
    constant (c_i, a_i, b_i) neighbour counts; None otherwise."""
    dist = g.distances()
    if (dist < 0).any():
        raise ValueError("recognition needs a connected graph")
    n = g.n
    if n <= 1:
        return None
    deg = g.degree(0)
    if any(g.degree(v) != deg for v in range(n)):
        return None
    d = int(dist.max())
    if d == 1:
        raise UnsupportedArrayError(
            "complete graph: diameter-1 arrays are out of scope")
    b = [None] * (d + 1)
    c = [None] * (d + 1)
    for u in range(n):
        du = dist[u]
        for v in range(n):
            i = du[v]
            if i == 0:
                continue
            ci = bi = 0
            for w in g.neighbors[v]:
                dw = du[w]
                if dw == i - 1:
                    ci += 1
                elif dw == i + 1:
                    bi += 1
            if b[i] is None:
                b[i], c[i] = bi, ci
            elif b[i] != bi or c[i] != ci:
                return None
    return IntersectionArray(tuple([deg] + b[1:d]), tuple(c[1:d + 1]))


@dataclass
class NumericSpectral:
    """Floating-point spectral decomposition: distinct eigenvalues
    (descending), their multiplicities, and the idempotent projectors."""

    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    idempotents: list[np.ndarray]
    tolerance: float


def numeric_idempotents(g: Graph, tol: float = 1e-9,
                        cross_check: bool = True) -> NumericSpectral:
    """Spectral idempotents of the adjacency matrix, eigenvalues grouped
    within `tol`.  For a distance-regular input the result is cross-checked
    against the exact cosine table at 1e-8."""
    A = g.adjacency_matrix()
    evals, vecs = np.linalg.eigh(A)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    vecs = vecs[:, order]
    groups: list[list[int]] = [[0]]
    for i in range(1, len(evals)):
        if abs(evals[i] - evals[groups[-1][0]]) <= max(tol, 1e-7):
            groups[-1].append(i)
        else:
            groups.append([i])
    eigenvalues = tuple(float(np.mean([evals[i] for i in grp])) for grp in groups)
    idempotents = []
    for grp in groups:
        V = vecs[:, grp]
        idempotents.append(V @ V.T)
    ns = NumericSpectral(eigenvalues, tuple(len(grp) for grp in groups),
                         idempotents, tol)
    if cross_check:
        try:
            arr = recognize_drg(g)
        except (UnsupportedArrayError, ValueError):
            arr = None
        if arr is not None:
            _cross_check_idempotents(g, arr, ns)
    return ns


def _cross_check_idempotents(g: Graph, arr: IntersectionArray,
                             ns: NumericSpectral) -> None:
    ps = derive_parameters(arr)
    sd = spectral_data(ps)
    if len(ns.eigenvalues) != ps.d + 1:
        raise InternalConsistencyError(
            "numeric eigenvalue grouping disagrees with the array spectrum")
    dist = g.distances()
    masks = [(dist == i).astype(float) for i in range(ps.d + 1)]
    for r in range(ps.d + 1):
        w = sd.cosine_floats(r)
        expected = (sd.m[r] / ps.n) * sum(w[i] * masks[i]
                                          for i in range(ps.d + 1))
        if np.abs(ns.idempotents[r] - expected).max() > 1e-8:
            raise InternalConsistencyError(
                f"idempotent E_{r} disagrees with the cosine formula")


# ---------------------------------------------------------------------------
# Homomorphisms and the matrix identities.
# ---------------------------------------------------------------------------

def is_homomorphism(x: Graph, y: Graph, image: VertexMap) -> bool:
    """True when every edge of x maps to an edge of y (never to one vertex)."""
    if len(image) != x.n:
        return False
    if any(not 0 <= t < y.n for t in image):
        return False
    return all(y.has_edge(image[u], image[v]) for u, v in x.edges())


def _require_same_array(x: Graph, y: Graph) -> IntersectionArray:
    ax = recognize_drg(x)
    ay = recognize_drg(y) if y is not x else ax
    if ax is None or ay is None:
        raise ValueError("both graphs must be distance-regular")
    if ax != ay:
        raise ValueError(f"intersection arrays differ: {ax} vs {ay}")
    return ax


def hom_matrix(x: Graph, y: Graph, image: VertexMap, r: int) -> np.ndarray:
    """The eigenvalue-r homomorphism matrix: entry (u,v) is the target
    idempotent at (image[u], image[v]); equals the source idempotent whenever
    the map preserves the pair's distance."""
    _require_same_array(x, y)
    if not is_homomorphism(x, y, image):
        raise ValueError("the map is not a graph homomorphism")
    F = numeric_idempotents(y).idempotents[r]
    im = np.asarray(image, dtype=np.intp)
    return F[np.ix_(im, im)]


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass
class IdentityReport:
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'} {c.name}: "
                f"residual {c.residual:.3e} (tol {c.tolerance:.1e})"
                for c in self.checks]


def verify_identities(x: Graph, y: Graph, image: VertexMap,
                      samples: int = 100, seed: int = 0) -> IdentityReport:
    """Check the homomorphism-matrix identities numerically:

    - every M_r is positive semi-definite (min eigenvalue >= -1e-8);
    - tr(M_r (A - theta_r I)) = 0 within 1e-8 * n;
    - M_d (A - theta_d I) = 0 entrywise within 1e-8;
    - the neighbour-sum relation theta_d (M_d-E_d)(u,v) =
      sum_{w ~ v} (M_d-E_d)(u,w), spot-checked on `samples` random pairs.
    """
    _require_same_array(x, y)
    if not is_homomorphism(x, y, image):
        raise ValueError("the map is not a graph homomorphism")
    n = x.n
    A = x.adjacency_matrix()
    ns_x = numeric_idempotents(x)
    ns_y = numeric_idempotents(y) if y is not x else ns_x
    im = np.asarray(image, dtype=np.intp)
    d = len(ns_x.eigenvalues) - 1
    report = IdentityReport()
    I = np.eye(n)
    for r in range(d + 1):
        theta = ns_x.eigenvalues[r]
        M = ns_y.idempotents[r][np.ix_(im, im)]
        min_eig = float(np.linalg.eigvalsh(M)[0])
        report.checks.append(IdentityCheck(
            f"psd(M_{r})", max(0.0, -min_eig), 1e-8))
        tr = float(abs(np.trace(M @ (A - theta * I))))
        report.checks.append(IdentityCheck(
            f"trace(M_{r}(A - theta_{r} I))", tr, 1e-8 * n))
    theta_d = ns_x.eigenvalues[d]
    M_d = ns_y.idempotents[d][np.ix_(im, im)]
    kernel = float(np.abs(M_d @ (A - theta_d * I)).max())
    report.checks.append(IdentityCheck(
        f"kernel(M_{d}(A - theta_{d} I))", kernel, 1e-8))
    D = M_d - ns_x.idempotents[d]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        u = int(rng.integers(n))
        v = int(rng.integers(n))
        lhs = theta_d * D[u, v]
        rhs = sum(D[u, w] for w in x.neighbors[v])
        worst = max(worst, abs(lhs - rhs))
    report.checks.append(IdentityCheck(
        f"neighbour-sum({samples} samples)", worst, 1e-8))
    return report


# ---------------------------------------------------------------------------
# Geodetic-pair partitions and layer structure.
# ---------------------------------------------------------------------------

@dataclass
class PhiPartition:
    """Partition of Gamma_1(v) for a geodetic pair (u, v) at distance e under
    an endomorphism: cell (a, b) counts neighbours of v at distance a from u
    whose image sits at distance b from the image of u.  `beyond` counts the
    (e+1, e+1) cell, nonempty only when the image diameter exceeds e."""

    e: int
    cells: dict[tuple[int, int], int]
    beyond: int
    residual: float

    def size(self, a: int, b: int) -> int:
        return self.cells.get((a, b), 0)

    @property
    def triple(self) -> tuple[int, int, int]:
        """(|C_{e,e-1}|, |C_{e+1,e-1}|, |C_{e+1,e}|), the zero-sum cells."""
        e = self.e
        return (self.size(e, e - 1), self.size(e + 1, e - 1),
                self.size(e + 1, e))


def _image_distances(x: Graph, image: VertexMap) -> tuple[np.ndarray, dict[int, int]]:
    sub, idx = x.induced(sorted(set(image)))
    return sub.distances(), idx


def phi_partition(x: Graph, image: VertexMap, u: int, v: int,
                  cosine_row: Sequence[float] | None = None) -> PhiPartition:
    """Cell sizes and the zero-sum residual for the geodetic pair (u, v).

    Distances of images are measured inside the subgraph induced on the image
    vertex set.  `cosine_row` (floats for the least eigenvalue, sentinel
    included) may be passed to avoid re-deriving the array in loops.
    """
    if not is_homomorphism(x, x, image):
        raise ValueError("the map is not an endomorphism")
    dist = x.distances()
    idist, idx = _image_distances(x, image)
    e = int(dist[u][v])
    e_img = int(idist[idx[image[u]]][idx[image[v]]])
    if e < 1 or e != e_img:
        raise ValueError(f"({u},{v}) is not geodetic: d={e}, image d={e_img}")
    cells: dict[tuple[int, int], int] = {}
    beyond = 0
    fu = idx[image[u]]
    for w in x.neighbors[v]:
        a = int(dist[u][w])
        b = int(idist[fu][idx[image[w]]])
        if not (e - 1 <= a <= e + 1) or b > a or b < e - 1:
            raise InternalConsistencyError(
                f"impossible cell ({a},{b}) for a geodetic pair at distance {e}")
        if (a, b) == (e + 1, e + 1):
            beyond += 1
        else:
            cells[(a, b)] = cells.get((a, b), 0) + 1
    if cosine_row is None:
        arr = recognize_drg(x)
        if arr is None:
            raise ValueError("zero-sum residual needs a distance-regular graph")
        ps = derive_parameters(arr)
        sd = spectral_data(ps)
        cosine_row = sd.cosine_floats(ps.d)
    w_row = list(cosine_row)
    c10, c20, c21 = (cells.get((e, e - 1), 0), cells.get((e + 1, e - 1), 0),
                     cells.get((e + 1, e), 0))
    residual = (c10 * (w_row[e - 1] - w_row[e])
                + c20 * (w_row[e - 1] - w_row[e + 1])
                + c21 * (w_row[e] - w_row[e + 1]))
    return PhiPartition(e=e, cells=cells, beyond=beyond,
                        residual=float(residual))


def geodetic_pairs(x: Graph, image: VertexMap) -> list[tuple[int, int, int]]:
    """All ordered pairs (u, v) with d(u,v) = d_image(image u, image v) >= 1,
    with that common distance."""
    dist = x.distances()
    idist, idx = _image_distances(x, image)
    out = []
    for u in range(x.n):
        fu = idx[image[u]]
        for v in range(x.n):
            e = int(dist[u][v])
            if e >= 1 and int(idist[fu][idx[image[v]]]) == e:
                out.append((u, v, e))
    return out


def far_components(x: Graph, u: int) -> tuple[int, tuple[int, ...]]:
    """Component count and sorted sizes of the subgraph induced on the set of
    vertices at distance diameter(x) from u."""
    dist = x.distances()
    if (dist < 0).any():
        raise ValueError("far layer needs a connected graph")
    d = int(dist.max())
    far = [v for v in range(x.n) if dist[u][v] == d]
    sub, _ = x.induced(far)
    seen = [False] * sub.n
    sizes = []
    for s in range(sub.n):
        if seen[s]:
            continue
        size = 0
        stack = [s]
        seen[s] = True
        while stack:
            a = stack.pop()
            size += 1
            for b in sub.neighbors[a]:
                if not seen[b]:
                    seen[b] = True
                    stack.append(b)
        sizes.append(size)
    return len(sizes), tuple(sorted(sizes))


def image_diameter(x: Graph, image: VertexMap) -> int:
    """Diameter of the subgraph induced on the image vertex set."""
    if not is_homomorphism(x, x, image):
        raise ValueError("the map is not an endomorphism")
    sub, _ = x.induced(sorted(set(image)))
    return sub.diameter()


# ---------------------------------------------------------------------------
# Homomorphism search.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomSearchResult:
    status: str  # "found" | "none" | "unknown"
    map: tuple[int, ...] | None = None


class _SearchTimeout(Exception):
    pass


def search_hom(x: Graph, y: Graph | None = None,
               fixed: dict[int, int] | None = None,
               retraction_onto: Sequence[int] | None = None,
               timeout: float | None = None) -> HomSearchResult:
    """Deterministic backtracking search for a homomorphism x -> y.

    Vertices are assigned in descending-degree order (index as tie-break) and
    candidate images are pruned to arc consistency after every assignment.
    `fixed` pins chosen assignments.  `retraction_onto` takes a vertex subset
    S of x: the target becomes the induced subgraph x[S] with every s in S
    pinned to itself, i.e. the search looks for a retraction onto x[S].
    Returns the first map in deterministic order, proven absence ("none"),
    or "unknown" when `timeout` seconds elapse.
    """
    if retraction_onto is not None:
        if y is not None:
            raise ValueError("pass either a target graph or retraction_onto")
        S = sorted(set(retraction_onto))
        target, idx = x.induced(S)
        labels = list(S)  # target index -> x label
        pins = {s: idx[s] for s in S}
        if fixed:
            for u, v in fixed.items():
                if v not in idx:
                    return HomSearchResult("none")
                pins[u] = idx[v]
    else:
        if y is None:
            raise ValueError("target graph required")
        target = y
        labels = list(range(y.n))
        pins = dict(fixed) if fixed else {}

    nx_, nt = x.n, target.n
    if nt == 0:
        return HomSearchResult("none" if nx_ else "found", () if not nx_ else None)
    full = (1 << nt) - 1
    tmask = [0] * nt
    for t in range(nt):
        for s in target.neighbors[t]:
            tmask[t] |= 1 << s
    domains = [full] * nx_
    for u, t in pins.items():
        if not 0 <= u < nx_ or not 0 <= t < nt:
            raise ValueError(f"pin {u}->{t} out of range")
        domains[u] &= 1 << t
        if domains[u] == 0:
            return HomSearchResult("none")

    xnbr = x.neighbors
    order = sorted(range(nx_), key=lambda v: (-len(xnbr[v]), v))
    deadline = time.monotonic() + timeout if timeout is not None else None
    counter = [0]

    def propagate(dom: list[int], queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            m = dom[v]
            allowed = 0
            while m:
                low = m & (-m)
                allowed |= tmask[low.bit_length() - 1]
                m ^= low
            for u in xnbr[v]:
                nd = dom[u] & allowed
                if nd != dom[u]:
                    if nd == 0:
                        return False
                    dom[u] = nd
                    queue.append(u)
        return True

    def dfs(pos: int, dom: list[int]) -> tuple[int, ...] | None:
        counter[0] += 1
        if deadline is not None and time.monotonic() > deadline:
            raise _SearchTimeout
        if pos == nx_:
            out = []
            for m in dom:
                out.append(labels[m.bit_length() - 1])
            return tuple(out)
        v = order[pos]
        m = dom[v]
        while m:
            low = m & (-m)
            m ^= low
            nd = list(dom)
            nd[v] = low
            if propagate(nd, [v]):
                got = dfs(pos + 1, nd)
                if got is not None:
                    return got
        return None

    if not propagate(domains, list(range(nx_))):
        return HomSearchResult("none")
    try:
        found = dfs(0, domains)
    except _SearchTimeout:
        return HomSearchResult("unknown")
    if found is None:
        return HomSearchResult("none")
    return HomSearchResult("found", found)
