"""Payoff envelopes, regret functions, Bregman divergences and their checkers.

A convex generator F on the state space induces the regret (Bregman
divergence) D(s1, s2) = F(s1) - F(s2) - <grad F(s2), s1 - s2>, the vertical
gap at s1 between F and its tangent at s2.  Equivalently, with actions the
tangent functionals of F, D(s1, s2) is the payoff lost by acting optimally
for s2 when the state is s1.

Divergences evaluate in the extended reals: a distinguished infinite value
(math.inf) encodes failures of absolute continuity, never a float overflow.
The locality checker compares such values as extended reals (two infinities
of the same sign are equal).  Divergences whose generator is undefined on
the boundary (Itakura-Saito) declare ``requires_interior``; their checker
trials are projected into the interior by an epsilon-mixture with the
barycenter before evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import geometries as geo
from . import jordan
from .cone import AffineFunctional, State, evaluate, mix
from .errors import PreconditionError

INTERIOR_EPS = 1e-12
DEFAULT_T_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)


# ---------------------------------------------------------------------------
# Generators and the payoff envelope
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    """Convex function on a state space with value and gradient oracles.

    The gradient is a covector on the coordinate embedding.  Gradients at
    boundary states are taken after an epsilon-mixture with the barycenter
    (see ``clamp``), which keeps logarithmic generators finite.
    """

    name: str
    value: Callable[[State], float]
    gradient: Callable[[State], np.ndarray]

    def tangent(self, s: State) -> AffineFunctional:
        """Supporting affine functional of the generator at s."""
        g = self.gradient(s)
        return AffineFunctional(g, self.value(s) - float(np.dot(g, s.coords)))


def clamp(s: State, eps: float = INTERIOR_EPS) -> State:
    """Mix a state toward the barycenter to keep gradients finite."""
    bary = State(s.space, s.space.barycenter_coords())
    return mix([1.0 - eps, eps], [s, bary])


def numeric_gradient(value_at_coords: Callable[[np.ndarray], float], coords,
                     step: float = 1e-6) -> np.ndarray:
    """Central finite-difference gradient of a raw-coordinate function."""
    coords = np.asarray(coords, dtype=float)
    out = np.zeros_like(coords)
    for i in range(coords.size):
        hi = coords.copy()
        lo = coords.copy()
        hi[i] += step
        lo[i] -= step
        out[i] = (value_at_coords(hi) - value_at_coords(lo)) / (2.0 * step)
    return out


def generator_from_coords_value(name: str, value_at_coords: Callable[[np.ndarray], float],
                                step: float = 1e-6) -> Generator:
    """Generator whose gradient oracle is a central finite difference.

    value_at_coords must extend off the state set to a neighborhood in the
    embedding, as numeric differentiation steps outside it.
    """

    def value(s):
        return float(value_at_coords(np.asarray(s.coords, dtype=float)))

    def gradient(s):
        return numeric_gradient(value_at_coords, np.asarray(clamp(s).coords), step)

    return Generator(name, value, gradient)


def negentropy_generator() -> Generator:
    """F(p) = sum p ln p on the simplex; induces the KL divergence."""

    def value(s):
        p = np.asarray(s.coords)
        p = p[p > 0.0]
        return float(np.sum(p * np.log(p)))

    def gradient(s):
        p = np.asarray(clamp(s).coords)
        return np.log(p) + 1.0

    return Generator("negentropy", value, gradient)


def squared_norm_generator() -> Generator:
    """F(x) = sum x_i^2; induces the squared Euclidean divergence."""
    return Generator(
        "squared_norm",
        lambda s: float(np.dot(s.coords, s.coords)),
        lambda s: 2.0 * np.asarray(s.coords),
    )


def burg_generator() -> Generator:
    """F(p) = -sum ln p on positive vectors; induces Itakura-Saito."""

    def value(s):
        p = np.asarray(s.coords)
        if float(np.min(p)) <= 0.0:
            return math.inf
        return float(-np.sum(np.log(p)))

    def gradient(s):
        p = np.asarray(clamp(s).coords)
        return -1.0 / p

    return Generator("burg", value, gradient)


def matrix_negentropy_generator(space: geo.DensityMatrices) -> Generator:
    """F(rho) = Tr rho ln rho on density matrices; induces the matrix relative entropy."""

    def value(s):
        return -jordan.von_neumann_entropy(space.state_matrix(s))

    def gradient(s):
        m = space.state_matrix(clamp(s))
        dec = jordan.eigen_hermitian(m)
        acc = jordan.HermitianMatrix.zeros(space.ring, space.n)
        for t, e in zip(dec.eigenvalues, dec.idempotents):
            acc = acc + e.scale(math.log(t) + 1.0)
        return space.coords_from_matrix(acc)

    return Generator("matrix_negentropy", value, gradient)


@dataclass(frozen=True)
class FiniteActionSet:
    """A finite, closed set of payoff functionals."""

    actions: tuple

    def optimal_for(self, s: State, tol: float = 1e-12):
        values = [evaluate(a, s) for a in self.actions]
        best = max(values)
        return best, [a for a, v in zip(self.actions, values) if v >= best - tol]


@dataclass(frozen=True)
class TangentActionSet:
    """The tangent planes of a convex generator; optimal action = tangent."""

    generator: Generator

    def optimal_for(self, s: State, tol: float = 1e-12):
        a = self.generator.tangent(s)
        return self.generator.value(s), [a]


def envelope(actions, s: State):
    """Maximal payoff over the action set and one attaining action."""
    value, best = actions.optimal_for(s)
    if not best:
        raise PreconditionError("action set has no optimal action; not closed")
    return value, best[0]


def regret_action(s: State, a: AffineFunctional, actions) -> float:
    """Payoff shortfall F(s) - <a, s> of playing a in state s."""
    value, _ = envelope(actions, s)
    return value - evaluate(a, s)


def regret_state(s1: State, s2: State, actions) -> float:
    """Infimum of regret_action(s1, a) over actions a optimal for s2."""
    value_s1, _ = envelope(actions, s1)
    _, optimal = actions.optimal_for(s2)
    if not optimal:
        raise PreconditionError("no action optimal for the second state")
    return value_s1 - max(evaluate(a, s1) for a in optimal)


def bregman(gen: Generator, s1: State, s2: State) -> float:
    """F(s1) - F(s2) - <grad F(s2), s1 - s2>; tangent gap of the generator."""
    tangent = gen.tangent(s2)
    return gen.value(s1) - evaluate(tangent, s1)


# ---------------------------------------------------------------------------
# The divergence zoo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Divergence:
    """Evaluation rule D(s1, s2) >= 0 with provenance and domain flags."""

    name: str
    provenance: str
    rule: Callable[[State, State], float]
    requires_interior: bool = False

    def __call__(self, s1: State, s2: State) -> float:
        return self.rule(s1, s2)


def kl_divergence() -> Divergence:
    """Relative entropy sum p ln(p/q) with 0 ln 0 = 0 and inf off support."""

    def rule(s1, s2):
        p = np.asarray(s1.coords, dtype=float)
        q = np.asarray(s2.coords, dtype=float)
        mask = p > 1e-15
        if np.any(q[mask] <= 0.0):
            return math.inf
        return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))

    return Divergence("kl", "builtin", rule)


def squared_euclidean_divergence() -> Divergence:
    def rule(s1, s2):
        d = np.asarray(s1.coords) - np.asarray(s2.coords)
        return float(np.dot(d, d))

    return Divergence("squared_euclidean", "builtin", rule)


def itakura_saito_divergence() -> Divergence:
    """sum (p/q - ln(p/q) - 1) on positive vectors."""

    def rule(s1, s2):
        p = np.asarray(s1.coords, dtype=float)
        q = np.asarray(s2.coords, dtype=float)
        if float(np.min(p)) <= 0.0 or float(np.min(q)) <= 0.0:
            return math.inf
        ratio = p / q
        return float(np.sum(ratio - np.log(ratio) - 1.0))

    return Divergence("itakura_saito", "builtin", rule, requires_interior=True)


def matrix_negentropy_divergence(space: geo.DensityMatrices) -> Divergence:
    """Tr rho (ln rho - ln sigma), inf when supp rho exceeds supp sigma."""

    def rule(s1, s2):
        rho = space.state_matrix(s1)
        dec = jordan.eigen_hermitian(space.state_matrix(s2))
        supp_tol = 1e-12
        val = -jordan.von_neumann_entropy(rho)
        leak = 0.0
        for t, e in zip(dec.eigenvalues, dec.idempotents):
            mass = jordan.trace_product(rho, e)
            if t > supp_tol:
                val -= math.log(t) * mass
            else:
                leak += mass
        if leak > 1e-10:
            return math.inf
        return val

    return Divergence("matrix_negentropy", "builtin", rule)


def scaled_divergence(c: float, div: Divergence) -> Divergence:
    return Divergence(
        f"{c}*{div.name}", div.provenance, lambda s1, s2: c * div(s1, s2), div.requires_interior
    )


def divergence_from_generator(gen: Generator, requires_interior: bool = False) -> Divergence:
    return Divergence(
        gen.name, "from_generator", lambda s1, s2: bregman(gen, s1, s2), requires_interior
    )


def divergence_from_action_set(actions) -> Divergence:
    return Divergence(
        "action_set_regret", "from_action_set", lambda s1, s2: regret_state(s1, s2, actions)
    )


def builtin_divergence(name: str, space) -> Divergence:
    if name == "kl":
        return kl_divergence()
    if name == "squared_euclidean":
        return squared_euclidean_divergence()
    if name == "itakura_saito":
        return itakura_saito_divergence()
    if name == "matrix_negentropy":
        if not isinstance(space, geo.DensityMatrices):
            raise ValueError("matrix_negentropy needs a density-matrix space")
        return matrix_negentropy_divergence(space)
    raise ValueError(f"unknown divergence {name!r}")


def divergence_zoo(space) -> list:
    """The builtin divergences applicable to a space."""
    if isinstance(space, geo.Simplex):
        return [kl_divergence(), squared_euclidean_divergence(), itakura_saito_divergence()]
    if isinstance(space, geo.DensityMatrices):
        return [matrix_negentropy_divergence(space)]
    return [squared_euclidean_divergence()]


# ---------------------------------------------------------------------------
# Locality
# ---------------------------------------------------------------------------

def _extended_gap(a: float, b: float) -> float:
    """|a - b| in the extended reals; equal infinities are distance 0."""
    a_inf, b_inf = math.isinf(a), math.isinf(b)
    if a_inf and b_inf:
        return 0.0 if a == b else math.inf
    if a_inf or b_inf:
        return math.inf
    return abs(a - b)


def _sample_orthogonal_triple(space, rng: np.random.Generator):
    """(s0 pure, s1, s2) with s1, s2 orthogonal to s0; s1 = s2 when forced.

    Returns (s0, s1, s2, degenerate) where degenerate marks spaces with
    fewer than three pairwise orthogonal states, on which distinct s1 and
    s2 cannot exist and the locality identity holds vacuously.
    """
    if isinstance(space, geo.Simplex):
        n = space.n
        if n < 3:
            s0 = space.vertex_state(int(rng.integers(n)))
            other = space.vertex_state(int((np.argmax(s0.coords) + 1) % n))
            return s0, other, other, True
        i = int(rng.integers(n))
        rest = [j for j in range(n) if j != i]

        def complement_state():
            k = int(rng.integers(1, len(rest) + 1))
            support = rng.choice(rest, size=k, replace=False)
            coords = np.zeros(n)
            coords[support] = rng.dirichlet(np.ones(k)) if k > 1 else 1.0
            return State(space, coords)

        s0 = space.vertex_state(i)
        s1 = complement_state()
        for _ in range(8):
            s2 = complement_state()
            if np.max(np.abs(s2.coords - s1.coords)) > 1e-9:
                break
        return s0, s1, s2, False
    if isinstance(space, geo.DensityMatrices):
        n = space.n
        s0 = geo.random_pure_state(space, rng)
        p0 = space.support_projection(s0)
        comp = jordan.HermitianMatrix.identity(space.ring, n) - p0

        def complement_state():
            for _ in range(16):
                raw = jordan.random_density_matrix(space.ring, n, rng)
                if rng.uniform() < 0.5:
                    raw = jordan.random_pure_density(space.ring, n, rng)
                pinched = jordan.ring_matmul(
                    space.ring, jordan.ring_matmul(space.ring, comp.data, raw.data), comp.data
                )
                compressed = jordan.hermitian_part(space.ring, pinched)
                mass = jordan.trace(compressed)
                if mass > 1e-6:
                    return space.state_from_matrix(compressed.scale(1.0 / mass))
            raise RuntimeError("failed to sample a state in the orthogonal complement")

        s1 = complement_state()
        if n < 3:
            return s0, s1, s1, True
        for _ in range(8):
            s2 = complement_state()
            if np.max(np.abs(s2.coords - s1.coords)) > 1e-9:
                break
        return s0, s1, s2, False
    if isinstance(space, geo.Ball):
        s0 = geo.random_pure_state(space, rng)
        anti = State(space, -np.asarray(s0.coords))
        return s0, anti, anti, True
    if isinstance(space, geo.Polytope):
        adj = geo._orthogonality_graph(space)
        nv = len(space.vertices)
        i = int(rng.integers(nv))
        partners = np.nonzero(adj[i])[0]
        if partners.size == 0:
            raise PreconditionError("polytope vertex with no orthogonal partner")
        s0 = space.vertex_state(i)
        if partners.size == 1:
            s1 = space.vertex_state(int(partners[0]))
            return s0, s1, s1, True
        j, k = rng.choice(partners, size=2, replace=False)
        return s0, space.vertex_state(int(j)), space.vertex_state(int(k)), False
    raise TypeError(f"unsupported space {space!r}")


def check_locality(div: Divergence, space, trials: int = 1000,
                   t_grid: Sequence[float] = DEFAULT_T_GRID, tol: float = 1e-8,
                   seed: int = 0, include_reversed: bool = True) -> dict:
    """Test whether D((1-t)s0 + t*s1, s0) is independent of the orthogonal s1.

    Both argument orders are evaluated; the order of the defining identity
    (mixture first) is authoritative for pass/fail, the reversed order
    (pure state first, the one with finite logarithmic values) is reported
    alongside.  Gaps compare extended reals, so two divergences that are
    both infinite agree.
    """
    rng = np.random.default_rng(seed)
    bary = State(space, space.barycenter_coords())

    def dom(s):
        if div.requires_interior:
            return mix([1.0 - INTERIOR_EPS, INTERIOR_EPS], [s, bary])
        return s

    max_gap = -1.0
    max_gap_reversed = -1.0
    witness = None
    vacuous = True
    for trial in range(trials):
        s0, s1, s2, degenerate = _sample_orthogonal_triple(space, rng)
        vacuous = vacuous and degenerate
        for t in t_grid:
            m1 = mix([1.0 - t, t], [s0, s1])
            m2 = mix([1.0 - t, t], [s0, s2])
            a = div(dom(m1), dom(s0))
            b = div(dom(m2), dom(s0))
            gap = _extended_gap(a, b)
            ar = br = None
            if include_reversed:
                ar = div(dom(s0), dom(m1))
                br = div(dom(s0), dom(m2))
                max_gap_reversed = max(max_gap_reversed, _extended_gap(ar, br))
            if gap > max_gap:
                max_gap = gap
                witness = {
                    "trial": trial,
                    "t": float(t),
                    "s0": [float(c) for c in s0.coords],
                    "s1": [float(c) for c in s1.coords],
                    "s2": [float(c) for c in s2.coords],
                    "values": [a, b],
                    "reversed_values": [ar, br],
                }
    passed = max_gap <= tol
    return {
        "check": "locality",
        "divergence": div.name,
        "space": space.to_json(),
        "pass": bool(passed),
        "max_gap": float(max_gap),
        "reversed_max_gap": float(max_gap_reversed) if include_reversed else None,
        "witness": witness if not passed else None,
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tol),
        "vacuous": bool(vacuous),
    }


# ---------------------------------------------------------------------------
# Sufficiency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChannelPair:
    """Affine maps phi, psi with psi(phi(s)) = s on the sampled family."""

    name: str
    phi: Callable[[State], State]
    psi: Callable[[State], State]
    sample_family: Callable[[np.random.Generator], State]


def _permutation_pair(space: geo.Simplex, perm: np.ndarray) -> ChannelPair:
    inv = np.argsort(perm)

    def apply(p, s):
        coords = np.zeros(space.n)
        coords[p] = np.asarray(s.coords)
        return State(space, coords)

    def sample(rng):
        coords = rng.dirichlet(np.ones(space.n)) * 0.98 + 0.02 / space.n
        return State(space, coords / np.sum(coords))

    return ChannelPair(
        f"permutation{tuple(int(i) for i in perm)}",
        lambda s: apply(perm, s),
        lambda s: apply(inv, s),
        sample,
    )


def _merge_pair(space: geo.Simplex, i: int, j: int, alpha: float) -> ChannelPair:
    def phi(s):
        coords = np.array(s.coords, dtype=float)
        coords[i] += coords[j]
        coords[j] = 0.0
        return State(space, coords)

    def psi(s):
        coords = np.array(s.coords, dtype=float)
        mass = coords[i] + coords[j]
        coords[i] = alpha * mass
        coords[j] = (1.0 - alpha) * mass
        return State(space, coords)

    def sample(rng):
        coords = rng.dirichlet(np.ones(space.n)) * 0.98 + 0.02 / space.n
        mass = coords[i] + coords[j]
        coords[i] = alpha * mass
        coords[j] = (1.0 - alpha) * mass
        return State(space, coords / np.sum(coords))

    return ChannelPair(f"merge({i},{j};{alpha})", phi, psi, sample)


def _unitary_conjugation_pair(space: geo.DensityMatrices,
                              rng: np.random.Generator, pinch: bool) -> ChannelPair:
    n = space.n
    u = _random_unitary(space.ring, n, rng)
    u_star = _conj_transpose_ring(space.ring, u)
    block = n // 2 if n >= 2 else 1
    mask = _block_mask(space.ring, n, block)

    def conj(mat_data, v, v_star):
        if space.ring == "quaternion":
            from . import quaternion as quat
            return quat.qmat_mul(quat.qmat_mul(v, mat_data), v_star)
        return v @ mat_data @ v_star

    def phi(s):
        data = space.state_matrix(s).data
        if pinch:
            data = data * mask  # kills off-block entries; identity on the family
        return space.state_from_matrix(jordan.hermitian_part(space.ring, conj(data, u, u_star)))

    def psi(s):
        data = space.state_matrix(s).data
        return space.state_from_matrix(jordan.hermitian_part(space.ring, conj(data, u_star, u)))

    def sample(rng_):
        m = jordan.random_density_matrix(space.ring, n, rng_, floor=0.05)
        if pinch:
            m = jordan.hermitian_part(space.ring, m.data * mask)
            m = m.scale(1.0 / jordan.trace(m))
        return space.state_from_matrix(m)

    return ChannelPair("pinch+rotate" if pinch else "rotate", phi, psi, sample)


def _block_mask(ring: str, n: int, block: int) -> np.ndarray:
    mask2 = np.zeros((n, n))
    mask2[:block, :block] = 1.0
    mask2[block:, block:] = 1.0
    if ring == "quaternion":
        return mask2[:, :, None]
    return mask2


def _conj_transpose_ring(ring: str, u):
    if ring == "quaternion":
        from . import quaternion as quat
        return quat.qmat_conj_transpose(u)
    return np.conj(u.T)


def _random_unitary(ring: str, n: int, rng: np.random.Generator):
    if ring == "real":
        q, r = np.linalg.qr(rng.standard_normal((n, n)))
        return q * np.sign(np.diag(r))
    if ring == "complex":
        q, r = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        return q * np.exp(-1j * np.angle(np.diag(r)))
    # quaternion: compose unit-quaternion phases with Givens-like rotations
    from . import quaternion as quat
    u = np.zeros((n, n, 4))
    phases = rng.standard_normal((n, 4))
    phases /= np.linalg.norm(phases, axis=1, keepdims=True)
    u[np.arange(n), np.arange(n)] = phases
    for _ in range(2 * n):
        i, j = rng.choice(n, size=2, replace=False)
        theta = rng.uniform(0, 2 * np.pi)
        c, s = math.cos(theta), math.sin(theta)
        qph = rng.standard_normal(4)
        qph /= np.linalg.norm(qph)
        g = np.zeros((n, n, 4))
        g[np.arange(n), np.arange(n), 0] = 1.0
        g[i, i] = c * np.array([1.0, 0, 0, 0])
        g[j, j] = c * np.array([1.0, 0, 0, 0])
        g[i, j] = s * qph
        g[j, i] = -s * quat.qconj(qph)
        u = quat.qmat_mul(u, g)
    return u


def builtin_channel_suite(space, rng: np.random.Generator) -> list:
    """Reversible (phi, psi) pairs with family samplers for a space."""
    if isinstance(space, geo.Simplex):
        pairs = [
            _permutation_pair(space, rng.permutation(space.n)),
            _permutation_pair(space, rng.permutation(space.n)),
        ]
        if space.n >= 3:
            i, j = rng.choice(space.n, size=2, replace=False)
            pairs.append(_merge_pair(space, int(i), int(j), float(rng.uniform(0.2, 0.8))))
            pairs.append(_merge_pair(space, 0, 1, 0.5))
        return pairs
    if isinstance(space, geo.DensityMatrices):
        pairs = [_unitary_conjugation_pair(space, rng, pinch=False)]
        if space.n >= 2:
            pairs.append(_unitary_conjugation_pair(space, rng, pinch=True))
        return pairs
    raise TypeError(f"no builtin channel suite for {space!r}")


def check_sufficiency(div: Divergence, space, channel_suite=None, tol: float = 1e-9,
                      trials: int = 200, seed: int = 0) -> dict:
    """Invariance of the divergence under channels reversible on the family.

    Each trial draws two states from a pair's reversible family, verifies
    psi(phi(s)) = s (violations are reported separately as precondition
    failures, not divergence failures) and compares D(phi s1, phi s2)
    against D(s1, s2).
    """
    rng = np.random.default_rng(seed)
    suite = channel_suite if channel_suite is not None else builtin_channel_suite(space, rng)
    bary = State(space, space.barycenter_coords())

    def dom(s):
        if div.requires_interior:
            return mix([1.0 - INTERIOR_EPS, INTERIOR_EPS], [s, bary])
        return s

    max_gap = -1.0
    witness = None
    violations = 0
    for trial in range(trials):
        pair = suite[trial % len(suite)]
        s1 = pair.sample_family(rng)
        s2 = pair.sample_family(rng)
        bad = False
        for s in (s1, s2):
            back = pair.psi(pair.phi(s))
            if np.max(np.abs(np.asarray(back.coords) - np.asarray(s.coords))) > 1e-9:
                violations += 1
                bad = True
        if bad:
            continue
        base = div(dom(s1), dom(s2))
        mapped = div(dom(pair.phi(s1)), dom(pair.phi(s2)))
        gap = _extended_gap(base, mapped)
        if gap > max_gap:
            max_gap = gap
            witness = {
                "trial": trial,
                "channel": pair.name,
                "s1": [float(c) for c in s1.coords],
                "s2": [float(c) for c in s2.coords],
                "values": [base, mapped],
            }
    passed = violations == 0 and max_gap <= tol
    exploratory = isinstance(space, geo.DensityMatrices) and space.ring == "quaternion"
    return {
        "check": "sufficiency",
        "divergence": div.name,
        "space": space.to_json(),
        "pass": bool(passed),
        "max_gap": float(max_gap),
        "witness": witness if not passed else None,
        "precondition_violations": int(violations),
        "exploratory": bool(exploratory),
        "trials": int(trials),
        "seed": int(seed),
        "tolerance": float(tol),
    }


# ---------------------------------------------------------------------------
# Entropy-constant recovery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntropyFit:
    constant: float
    residual: float
    entropy_generated: bool

    def to_json(self) -> dict:
        return {
            "constant": self.constant,
            "residual": self.residual,
            "entropy_generated": self.entropy_generated,
        }


def fit_entropy_constant(div: Divergence, space: geo.Simplex, tol: float = 1e-10,
                         samples: int = 200, seed: int = 0,
                         locality_trials: int = 50) -> EntropyFit:
    """Least-squares fit of a local divergence against the KL divergence.

    A local regret on a simplex with at least three vertices must be c times
    the KL divergence with c > 0 (the generator is -c times the entropy).
    Raises when the locality precheck fails; a residual above tol reports
    "not entropy-generated", which contradicts locality and flags a
    numerical problem.
    """
    if not isinstance(space, geo.Simplex) or space.n < 3:
        raise PreconditionError("entropy-constant recovery needs a simplex with n >= 3")
    if locality_trials:
        report = check_locality(div, space, trials=locality_trials, seed=seed + 1)
        if not report["pass"]:
            raise PreconditionError(
                f"divergence {div.name} is not local (max gap {report['max_gap']:.3e})"
            )
    rng = np.random.default_rng(seed)
    kl = kl_divergence()
    num = 0.0
    den = 0.0
    pairs = []
    for _ in range(samples):
        p = rng.dirichlet(np.ones(space.n)) * 0.98 + 0.02 / space.n
        q = rng.dirichlet(np.ones(space.n)) * 0.98 + 0.02 / space.n
        s1 = State(space, p / np.sum(p))
        s2 = State(space, q / np.sum(q))
        d = div(s1, s2)
        k = kl(s1, s2)
        pairs.append((d, k))
        num += d * k
        den += k * k
    c = num / den
    residual = max(abs(d - c * k) for d, k in pairs)
    if c <= 0.0:
        raise PreconditionError(f"fitted constant {c} is not positive")
    return EntropyFit(float(c), float(residual), bool(residual <= tol))
