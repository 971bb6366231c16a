"""Combinatorial localization checks: index ledgers, Grassmannian Euler
characteristics, and simplicial alternating sums.

The stable-cohomotopy index of the examples this package reproduces lives
in Z (+) Z2: an integer part seen by the augmentation epsilon plus a
2-torsion part whose square vanishes.  That torsion-squares-to-zero rule
is an axiom of the model, not something verified here.

chi of the real Grassmannian RG_k^n is the signed count of Schubert cells,
computed by brute-force enumeration of the partitions in a k x (n-k) box
(the Gaussian binomial at q = -1); any closed form is a cross-check, not
ground truth.  The localization recursion then states

    chi(RG_k^(n1+n2)) = sum over k1+k2=k of
        (-1)^((n1-k1) k2) chi(RG_k1^n1) chi(RG_k2^n2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .report import IdentityResult


# -- index ledger ----------------------------------------------------------


@dataclass(frozen=True)
class IndexLedger:
    """Element eps + tor*u of Z (+) Z2, with u^2 = 0 and epsilon(u) = 0."""
    eps: int
    tor: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tor", self.tor % 2)

    def __add__(self, other: "IndexLedger") -> "IndexLedger":
        return IndexLedger(self.eps + other.eps, (self.tor + other.tor) % 2)

    def __neg__(self) -> "IndexLedger":
        return IndexLedger(-self.eps, self.tor)

    def __sub__(self, other: "IndexLedger") -> "IndexLedger":
        return self + (-other)

    def __mul__(self, other: "IndexLedger") -> "IndexLedger":
        return IndexLedger(self.eps * other.eps,
                           (self.eps * other.tor + other.eps * self.tor) % 2)

    def __pow__(self, n: int) -> "IndexLedger":
        result = IndexLedger(1)
        for _ in range(n):
            result = result * self
        return result

    @property
    def epsilon(self) -> int:
        return self.eps

    def __str__(self) -> str:
        if not self.tor:
            return str(self.eps)
        if not self.eps:
            return "u"
        return f"{self.eps} + u"


LEDGER_ONE = IndexLedger(1)
LEDGER_U = IndexLedger(0, 1)


def ledger_sum(ledgers: Iterable[IndexLedger]) -> IndexLedger:
    """Sum of indices; an empty zero set contributes the zero ledger, the
    no-zeros convention under which the transfer collapses to a point."""
    total = IndexLedger(0)
    for item in ledgers:
        total = total + item
    return total


# -- Grassmannian Euler characteristics ----------------------------------------


def partitions_in_box(rows: int, cols: int, _first: int | None = None):
    """All partitions fitting in a rows x cols box, as tuples."""
    limit = cols if _first is None else min(cols, _first)
    yield ()
    if rows == 0:
        return
    for head in range(1, limit + 1):
        for tail in partitions_in_box(rows - 1, cols, head):
            yield (head,) + tail


@lru_cache(maxsize=None)
def chi_grassmann(n: int, k: int) -> int:
    """chi(RG_k^n) as the signed Schubert-cell count sum (-1)^|lambda|."""
    if not 0 <= k <= n:
        raise ValueError(f"plane dimension {k} out of range for R^{n}")
    return sum((-1) ** sum(p) for p in partitions_in_box(k, n - k))


def localization_sum(n1: int, n2: int, k: int) -> int:
    """The fixed-point side of the localization formula for RG_k^(n1+n2)."""
    if not 0 <= k <= n1 + n2:
        raise ValueError(f"grade {k} out of range for dimensions ({n1}, {n2})")
    total = 0
    for k1 in range(min(n1, k), max(0, k - n2) - 1, -1):
        k2 = k - k1
        total += (-1) ** ((n1 - k1) * k2) * chi_grassmann(n1, k1) * chi_grassmann(n2, k2)
    return total


def localization_recursion_report(max_total: int) -> list[IdentityResult]:
    """Exhaustively compare the localization sum with chi(RG_k^(n1+n2))."""
    rows = []
    for n1 in range(1, max_total):
        for n2 in range(1, max_total - n1 + 1):
            for k in range(n1 + n2 + 1):
                lhs = localization_sum(n1, n2, k)
                rhs = chi_grassmann(n1 + n2, k)
                ok = lhs == rhs
                rows.append(IdentityResult(
                    f"chi_recursion[{n1},{n2},{k}]", "grassmann", n1 + n2, ok,
                    None if ok else 0,
                    None if ok else f"sum={lhs} chi={rhs}"))
    return rows


# -- simplicial complexes ----------------------------------------------------------


class SimplicialComplex:
    """Finite abstract simplicial complex, closed under taking faces."""

    def __init__(self, simplices: frozenset[frozenset]):
        # Assumes face closure; use from_simplices.
        self._simplices = simplices

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable]) -> "SimplicialComplex":
        closed: set[frozenset] = set()
        for simplex in simplices:
            vertices = frozenset(simplex)
            if not vertices:
                raise ValueError("the empty simplex is not stored")
            for size in range(1, len(vertices) + 1):
                for face in combinations(sorted(vertices, key=repr), size):
                    closed.add(frozenset(face))
        return cls(frozenset(closed))

    @property
    def simplices(self) -> frozenset[frozenset]:
        return self._simplices

    def vertices(self) -> set:
        return {v for s in self._simplices for v in s}

    def facets(self) -> list[frozenset]:
        return [s for s in self._simplices
                if not any(s < t for t in self._simplices)]

    def f_vector(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for s in self._simplices:
            counts[len(s) - 1] = counts.get(len(s) - 1, 0) + 1
        return counts

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self._simplices)

    def barycentric_subdivision(self) -> "SimplicialComplex":
        """Vertices of the subdivision are the simplices; its simplices are
        the chains under strict inclusion."""
        order = sorted(self._simplices, key=lambda s: (len(s), sorted(map(repr, s))))
        supersets: dict[frozenset, list[frozenset]] = {
            s: [t for t in order if s < t] for s in order}
        chains: set[frozenset] = set()

        def grow(chain: tuple) -> None:
            chains.add(frozenset(chain))
            for t in supersets[chain[-1]]:
                grow(chain + (t,))

        for s in order:
            grow((s,))
        return SimplicialComplex(frozenset(chains))


def load_complex_text(text: str) -> SimplicialComplex:
    """One simplex per line, space-separated vertex labels; faces are
    auto-closed on load.  Blank lines and '#' comments are skipped."""
    simplices = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            simplices.append(line.split())
    if not simplices:
        raise ValueError("no simplices in input")
    return SimplicialComplex.from_simplices(simplices)


def load_complex(path) -> SimplicialComplex:
    return load_complex_text(Path(path).read_text())


def _bundled(name: str) -> SimplicialComplex:
    text = resources.files("cobcalc").joinpath(f"data/{name}").read_text()
    return load_complex_text(text)


def circle_complex() -> SimplicialComplex:
    return SimplicialComplex.from_simplices([("a", "b"), ("b", "c"), ("a", "c")])


def disk_complex() -> SimplicialComplex:
    return SimplicialComplex.from_simplices([("a", "b", "c")])


def point_complex() -> SimplicialComplex:
    return SimplicialComplex.from_simplices([("a",)])


def klein_bottle_complex() -> SimplicialComplex:
    """The bundled flat triangulation of the Klein bottle (16 vertices)."""
    return _bundled("klein_bottle.txt")


def projective_plane_complex() -> SimplicialComplex:
    """The bundled 6-vertex triangulation of the projective plane."""
    return _bundled("projective_plane.txt")


# -- surface sanity helpers (used by fixtures and tests) -------------------------


def is_closed_surface(complex_: SimplicialComplex) -> bool:
    """Pure 2-dimensional, every edge in exactly two triangles, and every
    vertex link a single cycle."""
    triangles = [s for s in complex_.simplices if len(s) == 3]
    if any(len(s) > 3 for s in complex_.simplices):
        return False
    edge_count: dict[frozenset, int] = {}
    for t in triangles:
        for e in combinations(sorted(t, key=repr), 2):
            edge_count[frozenset(e)] = edge_count.get(frozenset(e), 0) + 1
    edges = {s for s in complex_.simplices if len(s) == 2}
    if set(edge_count) != edges or any(c != 2 for c in edge_count.values()):
        return False
    for v in complex_.vertices():
        star = [t - {v} for t in triangles if v in t]
        if not star:
            return False
        adjacency: dict[object, set] = {}
        for e in star:
            a, b = tuple(e)
            adjacency.setdefault(a, set()).add(b)
            adjacency.setdefault(b, set()).add(a)
        if any(len(nbrs) != 2 for nbrs in adjacency.values()):
            return False
        seen = set()
        stack = [next(iter(adjacency))]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adjacency[node] - seen)
        if len(seen) != len(adjacency):
            return False
    return True


def is_orientable(complex_: SimplicialComplex) -> bool:
    """Try to orient the triangles consistently (matched edges must be
    traversed in opposite directions)."""
    triangles = [tuple(sorted(t, key=repr)) for t in complex_.simplices if len(t) == 3]
    by_edge: dict[frozenset, list[int]] = {}
    for idx, t in enumerate(triangles):
        for e in combinations(t, 2):
            by_edge.setdefault(frozenset(e), []).append(idx)
    orientation: dict[int, tuple] = {}

    def directed_edges(tri: tuple) -> list[tuple]:
        a, b, c = tri
        return [(a, b), (b, c), (c, a)]

    for start in range(len(triangles)):
        if start in orientation:
            continue
        orientation[start] = triangles[start]
        stack = [start]
        while stack:
            idx = stack.pop()
            tri = orientation[idx]
            for (a, b) in directed_edges(tri):
                for jdx in by_edge[frozenset((a, b))]:
                    if jdx == idx:
                        continue
                    x, y, z = triangles[jdx]
                    want = (b, a)  # the neighbour must traverse it backwards
                    candidates = [(x, y, z), (y, z, x), (z, x, y),
                                  (x, z, y), (z, y, x), (y, x, z)]
                    good = [c for c in candidates
                            if want in [(c[0], c[1]), (c[1], c[2]), (c[2], c[0])]]
                    fixed = good[0]
                    if jdx in orientation:
                        ok_now = orientation[jdx] in [
                            (fixed[0], fixed[1], fixed[2]),
                            (fixed[1], fixed[2], fixed[0]),
                            (fixed[2], fixed[0], fixed[1])]
                        if not ok_now:
                            return False
                    else:
                        orientation[jdx] = fixed
                        stack.append(jdx)
    return True


# -- bundled checks -------------------------------------------------------------


def rp2_decomposition_check() -> list[IdentityResult]:
    """The projective-plane ledger: the circle of zeros carries index
    -1 + u and the isolated zero carries 1, so the weighted chi sum is
    (-1) * chi(S^1) + 1 * chi(pt) = 1 = chi(RP^2)."""
    circle_chi = circle_complex().euler_characteristic()
    point_chi = point_complex().euler_characteristic()
    ind_circle = IndexLedger(-1, 1)
    total = ind_circle.epsilon * circle_chi + LEDGER_ONE.epsilon * point_chi
    expected = chi_grassmann(3, 1)
    fixture = projective_plane_complex().euler_characteristic()
    rows = [
        IdentityResult("rp2_weighted_sum", "ledger", 0, total == expected,
                       None if total == expected else 0,
                       None if total == expected else f"sum={total} chi={expected}"),
        IdentityResult("rp2_fixture_chi", "ledger", 0, fixture == expected,
                       None if fixture == expected else 0,
                       None if fixture == expected else f"fixture={fixture}"),
        IdentityResult("index_square_is_one", "ledger", 0,
                       ind_circle * ind_circle == LEDGER_ONE),
    ]
    return rows


def klein_index_check() -> list[IdentityResult]:
    """The Klein-bottle circle bundle: the two section circles carry
    indices 1 and -1 + u, the total index is u, and epsilon(u) = 0 agrees
    with chi of the bundled triangulation."""
    total = ledger_sum([LEDGER_ONE, IndexLedger(-1, 1)])
    fixture = klein_bottle_complex().euler_characteristic()
    rows = [
        IdentityResult("klein_total_index_is_u", "ledger", 0, total == LEDGER_U,
                       None if total == LEDGER_U else 0,
                       None if total == LEDGER_U else str(total)),
        IdentityResult("klein_epsilon_matches_chi", "ledger", 0,
                       total.epsilon == fixture,
                       None if total.epsilon == fixture else 0,
                       None if total.epsilon == fixture else
                       f"epsilon={total.epsilon} chi={fixture}"),
    ]
    return rows
