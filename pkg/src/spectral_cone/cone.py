"""States, cone elements and affine functionals, independent of geometry.

A cone element is stored as a pair (trace weight, state coordinates): the
element lam * s keeps lam separate from the unit-trace point s, which avoids
dividing by a small trace near the apex.  The state space itself is any
descriptor object exposing ``coords_len``, ``contains_state`` and
``barycenter_coords`` (see :mod:`spectral_cone.geometries`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ApexError, InvalidWeightsError, NotInConeError, SpaceMismatchError

MEMBERSHIP_TOL = 1e-9
WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class ConeElement:
    """A point lam * s of the positive cone over a state space.

    trace_weight is lam >= 0; coords are the coordinates of the unit-trace
    state s.  The apex (lam = 0) carries no meaningful coords.
    """

    space: object
    trace_weight: float
    coords: np.ndarray

    def __post_init__(self):
        lam = float(self.trace_weight)
        if lam < -WEIGHT_TOL:
            raise NotInConeError(f"negative trace weight {lam}")
        lam = max(lam, 0.0)
        coords = np.asarray(self.coords, dtype=float).reshape(-1).copy()
        if coords.shape[0] != self.space.coords_len:
            raise NotInConeError(
                f"expected {self.space.coords_len} coordinates, got {coords.shape[0]}"
            )
        if lam > 0.0 and not self.space.contains_state(coords, tol=MEMBERSHIP_TOL):
            raise NotInConeError("state coordinates fail the membership test")
        coords.setflags(write=False)
        object.__setattr__(self, "trace_weight", lam)
        object.__setattr__(self, "coords", coords)

    @property
    def is_apex(self) -> bool:
        return self.trace_weight == 0.0

    def state(self) -> "State":
        if self.is_apex:
            raise ApexError("the apex has no underlying state")
        return State(self.space, self.coords)

    def embedded(self) -> np.ndarray:
        """Coordinates of the element in the ambient vector space (lam * coords)."""
        return self.trace_weight * self.coords

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "trace": self.trace_weight,
            "coords": [float(c) for c in self.coords],
        }


class State(ConeElement):
    """A cone element with unit trace: a point of the state space."""

    def __init__(self, space, coords):
        super().__init__(space, 1.0, coords)


def apex(space) -> ConeElement:
    return ConeElement(space, 0.0, space.barycenter_coords())


def trace(x: ConeElement) -> float:
    """Trace of a positive element: the weight lam of lam * s."""
    return x.trace_weight


def _require_same_space(*elements) -> None:
    first = elements[0].space
    for e in elements[1:]:
        if e.space != first:
            raise SpaceMismatchError("elements live in different state spaces")


def mix(weights: Sequence[float], states: Sequence[State]) -> State:
    """Convex combination of states with a probability vector of weights."""
    weights = np.asarray(weights, dtype=float)
    if len(states) == 0 or weights.shape != (len(states),):
        raise InvalidWeightsError("weights and states must align and be nonempty")
    if float(np.min(weights)) < -WEIGHT_TOL:
        raise InvalidWeightsError(f"negative weight {float(np.min(weights))}")
    total = float(np.sum(weights))
    if abs(total - 1.0) > WEIGHT_TOL:
        raise InvalidWeightsError(f"weights sum to {total}, expected 1")
    _require_same_space(*states)
    coords = np.zeros(states[0].space.coords_len)
    for w, s in zip(weights, states):
        coords += w * s.coords
    return State(states[0].space, coords)


def cone_add(x: ConeElement, y: ConeElement) -> ConeElement:
    """Sum in the cone: lam*s1 + mu*s2 = (lam+mu) * mixture(lam/(lam+mu), mu/(lam+mu))."""
    _require_same_space(x, y)
    total = x.trace_weight + y.trace_weight
    if total == 0.0:
        return apex(x.space)
    coords = (x.trace_weight * x.coords + y.trace_weight * y.coords) / total
    return ConeElement(x.space, total, coords)


def scale(x: ConeElement, lam: float) -> ConeElement:
    if lam < 0.0:
        raise NotInConeError("cone elements scale by nonnegative factors only")
    return ConeElement(x.space, lam * x.trace_weight, x.coords)


@dataclass(frozen=True)
class AffineFunctional:
    """An affine map on the embedding space: x -> linear . x + offset.

    Serves both as a test (range [0, 1] over the state space) and as an
    action whose value at a state is its expected payoff.
    """

    linear: np.ndarray
    offset: float

    def __post_init__(self):
        linear = np.asarray(self.linear, dtype=float).reshape(-1).copy()
        linear.setflags(write=False)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "offset", float(self.offset))

    def value_at_coords(self, coords) -> float:
        return float(np.dot(self.linear, np.asarray(coords, dtype=float))) + self.offset

    def __call__(self, s: State) -> float:
        return self.value_at_coords(s.coords)

    @classmethod
    def constant(cls, value: float, coords_len: int) -> "AffineFunctional":
        return cls(np.zeros(coords_len), value)


def evaluate(a: AffineFunctional, s: State) -> float:
    """Expected payoff <a, s> of action a in state s; affine in s."""
    return a(s)


def is_test(a: AffineFunctional, space, tol: float = MEMBERSHIP_TOL) -> bool:
    """True when a maps every state of the space into [0, 1].

    The extreme-point range is computed by the geometry: exactly over
    polytope vertices, analytically for balls and matrix spaces.
    """
    lo, hi = space.functional_range(a)
    return lo >= -tol and hi <= 1.0 + tol


def state_to_json(s: ConeElement) -> str:
    return json.dumps(s.to_json(), sort_keys=True)
