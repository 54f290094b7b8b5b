"""Concrete state-space geometries with orthogonality and decomposition.

Five families are supported: probability simplices, vertex-listed polytopes,
unit balls, density matrices over the real/complex/quaternion rings, and
spin factors (unit balls carrying the rank-2 Jordan algebra structure).

Every state is identified by a real coordinate vector:

* simplex: the probability vector itself;
* polytope: a point of the ambient space;
* ball and spin factor: a point of the closed unit ball;
* density matrices: the row-major entry flattening, with complex entries as
  (re, im) pairs and quaternion entries as (1, i, j, k) 4-tuples.

With this flattening the trace inner product of Hermitian matrices equals
the plain dot product of coordinate vectors, so affine functionals transfer
between pictures without conversion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from . import jordan
from .cone import AffineFunctional, ConeElement, State
from .decomposition import OrthogonalDecomposition, Spectrum
from .errors import ApexError, DecompositionError, NotInConeError

SINGULARITY_TOL = 1e-9
SUPPORT_TOL = 1e-9
WEIGHT_DROP_TOL = 1e-11
MAX_ENUMERATION_VERTICES = 12
FAMILY_GRID_POINTS = 10


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Simplex:
    """Probability vectors of length n (affine dimension n - 1)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("simplex needs at least one vertex")

    kind = "simplex"

    @property
    def dim(self) -> int:
        return self.n - 1

    @property
    def coords_len(self) -> int:
        return self.n

    def contains_state(self, coords, tol=1e-9) -> bool:
        coords = np.asarray(coords, dtype=float)
        return float(np.min(coords)) >= -tol and abs(float(np.sum(coords)) - 1.0) <= tol

    def barycenter_coords(self) -> np.ndarray:
        return np.full(self.n, 1.0 / self.n)

    def vertex_state(self, i: int) -> State:
        coords = np.zeros(self.n)
        coords[i] = 1.0
        return State(self, coords)

    def functional_range(self, a: AffineFunctional):
        values = a.linear + a.offset
        return float(np.min(values)), float(np.max(values))

    def to_json(self) -> dict:
        return {"kind": "simplex", "n": self.n}


@dataclass(frozen=True)
class Polytope:
    """Convex hull of a full-dimensional tuple of extreme points."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(float(c) for c in v) for v in self.vertices)
        if not verts:
            raise ValueError("polytope needs vertices")
        m = len(verts[0])
        if any(len(v) != m for v in verts):
            raise ValueError("vertices must share one ambient dimension")
        object.__setattr__(self, "vertices", verts)
        _polytope_geometry(self)  # validates extremality and full dimension

    kind = "polytope"

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def coords_len(self) -> int:
        return len(self.vertices[0])

    @property
    def vertex_array(self) -> np.ndarray:
        return _polytope_geometry(self).vertex_array

    def contains_state(self, coords, tol=1e-9) -> bool:
        geo = _polytope_geometry(self)
        coords = np.asarray(coords, dtype=float)
        return float(np.max(geo.facet_normals @ coords + geo.facet_offsets)) <= tol

    def barycenter_coords(self) -> np.ndarray:
        return np.mean(self.vertex_array, axis=0)

    def vertex_state(self, i: int) -> State:
        return State(self, np.array(self.vertices[i]))

    def functional_range(self, a: AffineFunctional):
        values = self.vertex_array @ a.linear + a.offset
        return float(np.min(values)), float(np.max(values))

    def to_json(self) -> dict:
        return {"kind": "polytope", "vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class Ball:
    """The closed unit ball in d dimensions; every boundary point is pure."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("ball dimension must be positive")

    kind = "ball"

    @property
    def dim(self) -> int:
        return self.d

    @property
    def coords_len(self) -> int:
        return self.d

    def contains_state(self, coords, tol=1e-9) -> bool:
        return float(np.linalg.norm(coords)) <= 1.0 + tol

    def barycenter_coords(self) -> np.ndarray:
        return np.zeros(self.d)

    def functional_range(self, a: AffineFunctional):
        r = float(np.linalg.norm(a.linear))
        return a.offset - r, a.offset + r

    def to_json(self) -> dict:
        return {"kind": "ball", "d": self.d}


@dataclass(frozen=True)
class SpinFactor(Ball):
    """Unit ball state set carrying the spin-factor Jordan algebra.

    The state with ball coordinates x is the algebra element (1/2, x/2),
    whose eigenvalues are (1 +- |x|) / 2.
    """

    kind = "spin"

    def spin_element(self, s: State) -> jordan.SpinElement:
        return jordan.SpinElement(0.5, np.asarray(s.coords) / 2.0)

    def to_json(self) -> dict:
        return {"kind": "spin", "d": self.d}


@dataclass(frozen=True)
class DensityMatrices:
    """Density matrices over a division ring: positive, unit trace."""

    ring: str
    n: int

    def __post_init__(self):
        if self.ring not in jordan.RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        if self.n < 1:
            raise ValueError("matrix size must be positive")

    kind = "density"

    @property
    def components_per_entry(self) -> int:
        return {"real": 1, "complex": 2, "quaternion": 4}[self.ring]

    @property
    def dim(self) -> int:
        n, k = self.n, self.components_per_entry
        return n + k * (n * (n - 1)) // 2 - 1

    @property
    def coords_len(self) -> int:
        return self.n * self.n * self.components_per_entry

    def matrix_from_coords(self, coords) -> jordan.HermitianMatrix:
        coords = np.asarray(coords, dtype=float)
        n = self.n
        if self.ring == "real":
            data = coords.reshape(n, n)
        elif self.ring == "complex":
            pairs = coords.reshape(n, n, 2)
            data = pairs[..., 0] + 1j * pairs[..., 1]
        else:
            data = coords.reshape(n, n, 4)
        return jordan.hermitian_part(self.ring, data)

    def coords_from_matrix(self, m: jordan.HermitianMatrix) -> np.ndarray:
        if self.ring == "real":
            return np.asarray(m.data, dtype=float).reshape(-1)
        if self.ring == "complex":
            return np.stack([m.data.real, m.data.imag], axis=-1).reshape(-1)
        return np.asarray(m.data, dtype=float).reshape(-1)

    def state_matrix(self, s: State) -> jordan.HermitianMatrix:
        return self.matrix_from_coords(s.coords)

    def state_from_matrix(self, m: jordan.HermitianMatrix) -> State:
        return State(self, self.coords_from_matrix(m))

    def contains_state(self, coords, tol=1e-9) -> bool:
        try:
            m = self.matrix_from_coords(coords)
        except ValueError:
            return False
        raw = coords.reshape(-1)
        if float(np.max(np.abs(raw - self.coords_from_matrix(m)))) > tol:
            return False  # not Hermitian within tolerance
        if abs(jordan.trace(m) - 1.0) > tol:
            return False
        w = jordan.eigenvalues_of(m)
        return float(np.min(w)) >= -tol

    def barycenter_coords(self) -> np.ndarray:
        return self.coords_from_matrix(jordan.HermitianMatrix.identity(self.ring, self.n).scale(1.0 / self.n))

    def functional_range(self, a: AffineFunctional):
        g = self.matrix_from_coords(a.linear)
        w = jordan.eigenvalues_of(g)
        return a.offset + float(np.min(w)), a.offset + float(np.max(w))

    def support_projection(self, s: State, tol: float = SUPPORT_TOL) -> jordan.HermitianMatrix:
        dec = jordan.eigen_hermitian(self.state_matrix(s))
        acc = jordan.HermitianMatrix.zeros(self.ring, self.n)
        for t, e in zip(dec.eigenvalues, dec.idempotents):
            if t > tol:
                acc = acc + e
        return acc

    def to_json(self) -> dict:
        return {"kind": "density", "ring": self.ring, "n": self.n}


def unit_square() -> Polytope:
    return Polytope(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)))


def space_from_json(data: dict):
    kind = data["kind"]
    if kind == "simplex":
        return Simplex(int(data["n"]))
    if kind == "polytope":
        return Polytope(tuple(tuple(v) for v in data["vertices"]))
    if kind == "ball":
        return Ball(int(data["d"]))
    if kind == "spin":
        return SpinFactor(int(data["d"]))
    if kind == "density":
        return DensityMatrices(str(data["ring"]), int(data["n"]))
    raise ValueError(f"unknown space kind {kind!r}")


# ---------------------------------------------------------------------------
# Cached polytope machinery
# ---------------------------------------------------------------------------

class _PolytopeGeometry:
    def __init__(self, space: Polytope):
        verts = np.array(space.vertices, dtype=float)
        nv, m = verts.shape
        if nv < m + 1:
            raise ValueError("polytope must be full-dimensional in its ambient space")
        if m == 1:
            lo, hi = float(np.min(verts)), float(np.max(verts))
            if nv != 2 or lo == hi:
                raise ValueError("a 1-dimensional polytope is a segment with two vertices")
            self.facet_normals = np.array([[-1.0], [1.0]])
            self.facet_offsets = np.array([lo, -hi])
        else:
            try:
                hull = ConvexHull(verts)
            except Exception as exc:
                raise ValueError(f"vertex list is not full-dimensional: {exc}") from exc
            if len(hull.vertices) != nv:
                raise ValueError("vertex list contains non-extreme points")
            eqs = np.unique(np.round(hull.equations, 12), axis=0)
            self.facet_normals = eqs[:, :-1]
            self.facet_offsets = eqs[:, -1]
        self.vertex_array = verts


@lru_cache(maxsize=None)
def _polytope_geometry(space: Polytope) -> _PolytopeGeometry:
    return _PolytopeGeometry(space)


def _affine_test_feasible(vertex_array: np.ndarray, zero_at: np.ndarray,
                          one_at: np.ndarray) -> Optional[AffineFunctional]:
    """Find an affine map with value 0 at zero_at, 1 at one_at and [0, 1] on vertices.

    Solved as a linear feasibility problem in the (linear part, offset)
    unknowns; returns the witness functional or None.
    """
    nv, m = vertex_array.shape
    # unknowns z = (c in R^m, b)
    ab = np.hstack([vertex_array, np.ones((nv, 1))])
    a_ub = np.vstack([ab, -ab])
    b_ub = np.concatenate([np.ones(nv), np.zeros(nv)])
    a_eq = np.array([np.append(zero_at, 1.0), np.append(one_at, 1.0)])
    b_eq = np.array([0.0, 1.0])
    res = linprog(
        c=np.zeros(m + 1),
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(None, None)] * (m + 1),
        method="highs",
    )
    if not res.success:
        return None
    return AffineFunctional(res.x[:m], float(res.x[m]))


class _CliqueSystem:
    """Pre-factored linear system for one pairwise-orthogonal vertex subset."""

    def __init__(self, idx, vertex_array):
        self.idx = tuple(idx)
        cols = vertex_array[list(idx)].T  # m x k
        self.matrix = np.vstack([cols, np.ones((1, len(idx)))])
        self.rank = int(np.linalg.matrix_rank(self.matrix, tol=1e-10))
        self.determined = self.rank == len(idx)
        self.pinv = np.linalg.pinv(self.matrix) if self.determined else None

    def solve(self, rhs, scale):
        """Unique nonnegative solution of (vertices | ones) w = rhs, or None."""
        w = self.pinv @ rhs
        if float(np.min(w)) < -WEIGHT_DROP_TOL * scale:
            return None
        if float(np.max(np.abs(self.matrix @ w - rhs))) > SINGULARITY_TOL * max(1.0, scale):
            return None
        return np.clip(w, 0.0, None)


@lru_cache(maxsize=None)
def _orthogonality_graph(space: Polytope) -> np.ndarray:
    nv = len(space.vertices)
    adj = np.zeros((nv, nv), dtype=bool)
    for i in range(nv):
        for j in range(i + 1, nv):
            adj[i, j] = adj[j, i] = orthogonal(space.vertex_state(i), space.vertex_state(j))
    adj.setflags(write=False)
    return adj


@lru_cache(maxsize=None)
def _clique_systems(space: Polytope) -> tuple:
    """All pairwise-orthogonal vertex subsets with pre-factored systems."""
    nv = len(space.vertices)
    if nv > MAX_ENUMERATION_VERTICES:
        raise ValueError(
            f"decomposition search supports at most {MAX_ENUMERATION_VERTICES} vertices, got {nv}"
        )
    adj = _orthogonality_graph(space)
    verts = space.vertex_array
    cliques = []
    for size in range(1, nv + 1):
        for idx in itertools.combinations(range(nv), size):
            if all(adj[a, b] for a, b in itertools.combinations(idx, 2)):
                cliques.append(_CliqueSystem(idx, verts))
    return tuple(cliques)


def _determined_solutions(space: Polytope, state_coords, total, max_size):
    """(weights, support) for every determined clique system that solves x."""
    rhs = np.append(total * np.asarray(state_coords, dtype=float), total)
    scale = max(1.0, total)
    seen = set()
    out = []
    for sys_ in _clique_systems(space):
        if not sys_.determined or len(sys_.idx) > max_size:
            continue
        w = sys_.solve(rhs, scale)
        if w is None:
            continue
        keep = w > WEIGHT_DROP_TOL * scale
        support = tuple(i for i, k in zip(sys_.idx, keep) if k)
        key = (support, tuple(np.round(w[keep], 12)))
        if key in seen or not support:
            continue
        seen.add(key)
        out.append((w[keep], support))
    return out


# ---------------------------------------------------------------------------
# Faces, mutual singularity, orthogonality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """The smallest face of a space containing a set of states.

    kind is one of "whole", "vertices" (polytope/simplex vertex subset),
    "support" (matrix support projection) or "point" (ball extreme point).
    """

    space: object
    kind: str
    vertex_indices: tuple = ()
    projection: Optional[jordan.HermitianMatrix] = None
    point: Optional[np.ndarray] = None


def smallest_face(space, states) -> Face:
    """Smallest face of the space containing all given states."""
    states = list(states)
    if not states:
        raise ValueError("need at least one state")
    if isinstance(space, Simplex):
        support = set()
        for s in states:
            support.update(np.nonzero(np.asarray(s.coords) > SUPPORT_TOL)[0].tolist())
        idx = tuple(sorted(support))
        if len(idx) == space.n:
            return Face(space, "whole", vertex_indices=idx)
        return Face(space, "vertices", vertex_indices=idx)
    if isinstance(space, Polytope):
        geo = _polytope_geometry(space)
        center = np.mean([s.coords for s in states], axis=0)
        slack = geo.facet_normals @ center + geo.facet_offsets
        active = np.abs(slack) <= SINGULARITY_TOL
        if not np.any(active):
            return Face(space, "whole", vertex_indices=tuple(range(len(space.vertices))))
        on_face = np.all(
            np.abs(geo.vertex_array @ geo.facet_normals[active].T + geo.facet_offsets[active]) <= SINGULARITY_TOL,
            axis=1,
        )
        return Face(space, "vertices", vertex_indices=tuple(np.nonzero(on_face)[0].tolist()))
    if isinstance(space, Ball):  # covers SpinFactor
        first = np.asarray(states[0].coords)
        same = all(np.max(np.abs(np.asarray(s.coords) - first)) <= SINGULARITY_TOL for s in states)
        if same and abs(np.linalg.norm(first) - 1.0) <= SINGULARITY_TOL:
            return Face(space, "point", point=first)
        return Face(space, "whole")
    if isinstance(space, DensityMatrices):
        avg = np.mean([s.coords for s in states], axis=0)
        proj = space.support_projection(State(space, avg))
        if abs(jordan.trace(proj) - space.n) <= SINGULARITY_TOL:
            return Face(space, "whole", projection=proj)
        return Face(space, "support", projection=proj)
    raise TypeError(f"unsupported space {space!r}")


def _singular_in_vertex_set(space: Polytope, idx, s0: State, s1: State):
    verts = space.vertex_array[list(idx)]
    witness = _affine_test_feasible(verts, np.asarray(s0.coords), np.asarray(s1.coords))
    return (witness is not None), witness


def mutually_singular(s0: State, s1: State, space=None):
    """Whether some test maps s0 to 0 and s1 to 1; returns (flag, witness)."""
    space = space or s0.space
    if s0.space != space or s1.space != space:
        raise ValueError("states must belong to the given space")
    if np.max(np.abs(np.asarray(s0.coords) - np.asarray(s1.coords))) <= 1e-12:
        return False, None
    if isinstance(space, Simplex):
        supp0 = np.asarray(s0.coords) > SUPPORT_TOL
        supp1 = np.asarray(s1.coords) > SUPPORT_TOL
        if np.any(supp0 & supp1):
            return False, None
        return True, AffineFunctional(supp1.astype(float), 0.0)
    if isinstance(space, Polytope):
        return _singular_in_vertex_set(space, range(len(space.vertices)), s0, s1)
    if isinstance(space, Ball):
        x0, x1 = np.asarray(s0.coords), np.asarray(s1.coords)
        boundary = abs(np.linalg.norm(x0) - 1.0) <= SINGULARITY_TOL and abs(np.linalg.norm(x1) - 1.0) <= SINGULARITY_TOL
        if boundary and np.max(np.abs(x0 + x1)) <= SINGULARITY_TOL:
            return True, AffineFunctional(x1 / 2.0, 0.5)
        return False, None
    if isinstance(space, DensityMatrices):
        p0 = space.support_projection(s0)
        p1 = space.support_projection(s1)
        if jordan.trace_product(p0, p1) > SINGULARITY_TOL:
            return False, None
        return True, AffineFunctional(space.coords_from_matrix(p1), 0.0)
    raise TypeError(f"unsupported space {space!r}")


def orthogonal(s0: State, s1: State, space=None) -> bool:
    """Mutual singularity inside the smallest face containing both states."""
    space = space or s0.space
    if np.max(np.abs(np.asarray(s0.coords) - np.asarray(s1.coords))) <= 1e-12:
        return False
    if isinstance(space, (Simplex, Ball, DensityMatrices)):
        # restricting to the smallest face does not change the criterion:
        # disjoint supports (simplex), antipodal boundary points (ball),
        # orthogonal support projections (matrices)
        return mutually_singular(s0, s1, space)[0]
    if isinstance(space, Polytope):
        face = smallest_face(space, [s0, s1])
        return _singular_in_vertex_set(space, face.vertex_indices, s0, s1)[0]
    raise TypeError(f"unsupported space {space!r}")


def orthogonality_witness(s0: State, s1: State, space=None) -> Optional[AffineFunctional]:
    """Witness test for orthogonality, valid on the smallest face of the pair."""
    space = space or s0.space
    if isinstance(space, Polytope):
        face = smallest_face(space, [s0, s1])
        return _singular_in_vertex_set(space, face.vertex_indices, s0, s1)[1]
    return mutually_singular(s0, s1, space)[1]


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def _pairwise_witnesses(space, components):
    out = []
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            out.append(orthogonality_witness(components[i], components[j], space))
    return tuple(out)


def _ball_raw_decomposition(space, x: ConeElement):
    v = np.asarray(x.coords, dtype=float)
    r = float(np.linalg.norm(v))
    lam = x.trace_weight
    if r <= 1e-12:
        axis = np.zeros(space.d)
        axis[0] = 1.0  # fixed diameter for the center, for determinism
        return [lam / 2.0, lam / 2.0], [axis, -axis]
    direction = v / r
    w_hi = lam * (1.0 + r) / 2.0
    w_lo = lam * (1.0 - r) / 2.0
    if w_lo <= WEIGHT_DROP_TOL * max(1.0, lam):
        return [lam], [direction]
    return [w_hi, w_lo], [direction, -direction]


def _density_raw_decomposition(space, x: ConeElement):
    rho = space.state_matrix(x.state())
    comps = jordan.rank_one_components(rho)
    weights, coords = [], []
    lam = x.trace_weight
    scale = max(1.0, lam)
    for t, e in comps:
        w = lam * t
        if w < -SINGULARITY_TOL * scale:
            raise NotInConeError(f"negative eigenvalue {t} in cone element")
        if w > WEIGHT_DROP_TOL * scale:
            weights.append(w)
            coords.append(space.coords_from_matrix(e))
    return weights, coords


def _lex_key(spectrum: Spectrum, length: int):
    return tuple(spectrum.padded(length))


def decompose(space, x: ConeElement, with_witnesses: bool = False) -> OrthogonalDecomposition:
    """Orthogonal decomposition of a cone element into at most dim + 1 pure states.

    Polytopes search pairwise-orthogonal vertex subsets and return a
    decomposition maximal in the majorization ordering (lexicographically
    largest spectrum among incomparable maxima).  The other geometries have
    canonical decompositions: vertex weights (simplex), an antipodal pair
    (ball, spin factor) or rank-one eigenprojections (density matrices).
    """
    from .spectral import Ordering, majorizes  # local import to avoid a cycle

    if x.space != space:
        raise ValueError("element does not belong to the given space")
    if x.is_apex:
        raise ApexError("the apex has no orthogonal decomposition")

    if isinstance(space, Simplex):
        w = x.trace_weight * np.asarray(x.coords, dtype=float)
        keep = np.nonzero(w > WEIGHT_DROP_TOL * max(1.0, x.trace_weight))[0]
        weights = w[keep]
        components = [space.vertex_state(int(i)) for i in keep]
    elif isinstance(space, Polytope):
        sols = _determined_solutions(space, x.coords, x.trace_weight, space.dim + 1)
        if not sols:
            raise DecompositionError("no orthogonal decomposition found; geometry bug?")
        spectra = [Spectrum(w) for w, _ in sols]
        maximal = [
            i for i, spec in enumerate(spectra)
            if not any(
                majorizes(other, spec) is Ordering.DOMINATES
                for j, other in enumerate(spectra) if j != i
            )
        ]
        length = max(len(s) for s in spectra)
        best = max(maximal, key=lambda i: _lex_key(spectra[i], length))
        weights = sols[best][0]
        components = [space.vertex_state(int(i)) for i in sols[best][1]]
    elif isinstance(space, Ball):
        weights, coords = _ball_raw_decomposition(space, x)
        components = [State(space, c) for c in coords]
    elif isinstance(space, DensityMatrices):
        weights, coords = _density_raw_decomposition(space, x)
        components = [State(space, c) for c in coords]
    else:
        raise TypeError(f"unsupported space {space!r}")

    order = np.argsort(-np.asarray(weights, dtype=float), kind="stable")
    weights = np.asarray(weights, dtype=float)[order]
    components = [components[int(i)] for i in order]
    witnesses = _pairwise_witnesses(space, components) if with_witnesses else None
    dec = OrthogonalDecomposition(space, weights, tuple(components), witnesses)
    if dec.size > space.dim + 1:
        raise DecompositionError("decomposition exceeds the dimension bound")
    if dec.reconstruction_error(x) > 1e-9 * max(1.0, x.trace_weight):
        raise DecompositionError("decomposition does not reconstruct the element")
    return dec


def enumerate_orthogonal_decompositions(space, s: ConeElement, max_support: Optional[int] = None):
    """All orthogonal decompositions of a simplex or polytope element.

    For polytopes this walks every pairwise-orthogonal vertex subset.  When
    the weight system of a subset is underdetermined its solutions form a
    polytope; the walk returns that polytope's vertices (the determined
    sub-subset solutions) plus interior samples: a grid on every segment
    between two solution vertices and the barycenter of all of them.
    """
    if isinstance(space, Simplex):
        return [decompose(space, s)]
    if not isinstance(space, Polytope):
        raise TypeError("enumeration is supported on simplices and polytopes only")
    if s.is_apex:
        raise ApexError("the apex has no orthogonal decomposition")
    nv = len(space.vertices)
    max_support = nv if max_support is None else min(max_support, nv)

    determined = _determined_solutions(space, s.coords, s.trace_weight, max_support)
    scale = max(1.0, s.trace_weight)
    solutions = {}
    for w, support in determined:
        solutions[(support, tuple(np.round(w, 12)))] = (np.asarray(w, dtype=float), support)

    def add_sample(full_weights, clique_idx):
        keep = full_weights > WEIGHT_DROP_TOL * scale
        support = tuple(i for i, k in zip(clique_idx, keep) if k)
        if not support:
            return
        w = full_weights[keep]
        key = (support, tuple(np.round(w, 12)))
        solutions.setdefault(key, (w, support))

    for sys_ in _clique_systems(space):
        if sys_.determined or len(sys_.idx) > max_support:
            continue
        # basic solutions of this clique: determined solutions supported inside it
        members = [
            np.array([dict(zip(sup, w)).get(i, 0.0) for i in sys_.idx])
            for w, sup in determined
            if set(sup) <= set(sys_.idx)
        ]
        if len(members) < 2:
            continue
        for wa, wb in itertools.combinations(members, 2):
            for k in range(1, FAMILY_GRID_POINTS + 1):
                t = k / (FAMILY_GRID_POINTS + 1.0)
                add_sample((1.0 - t) * wa + t * wb, sys_.idx)
        add_sample(np.mean(members, axis=0), sys_.idx)

    out = []
    for w, support in sorted(solutions.values(), key=lambda ws: (ws[1], tuple(ws[0]))):
        order = np.argsort(-w, kind="stable")
        components = tuple(space.vertex_state(int(support[int(i)])) for i in order)
        out.append(OrthogonalDecomposition(space, w[order], components))
    return out


# ---------------------------------------------------------------------------
# Random sampling
# ---------------------------------------------------------------------------

def random_state(space, rng: np.random.Generator) -> State:
    if isinstance(space, Simplex):
        return State(space, rng.dirichlet(np.ones(space.n)))
    if isinstance(space, Polytope):
        w = rng.dirichlet(np.ones(len(space.vertices)))
        return State(space, w @ space.vertex_array)
    if isinstance(space, Ball):
        v = rng.standard_normal(space.d)
        norm = float(np.linalg.norm(v))
        radius = rng.uniform() ** (1.0 / space.d)
        return State(space, (v / norm * radius) if norm > 0 else np.zeros(space.d))
    if isinstance(space, DensityMatrices):
        m = jordan.random_density_matrix(space.ring, space.n, rng)
        return space.state_from_matrix(m)
    raise TypeError(f"unsupported space {space!r}")


def random_pure_state(space, rng: np.random.Generator) -> State:
    if isinstance(space, Simplex):
        return space.vertex_state(int(rng.integers(space.n)))
    if isinstance(space, Polytope):
        return space.vertex_state(int(rng.integers(len(space.vertices))))
    if isinstance(space, Ball):
        v = rng.standard_normal(space.d)
        return State(space, v / float(np.linalg.norm(v)))
    if isinstance(space, DensityMatrices):
        m = jordan.random_pure_density(space.ring, space.n, rng)
        return space.state_from_matrix(m)
    raise TypeError(f"unsupported space {space!r}")


def random_cone_element(space, rng: np.random.Generator,
                        trace_range=(0.1, 3.0)) -> ConeElement:
    s = random_state(space, rng)
    return ConeElement(space, rng.uniform(*trace_range), s.coords)
