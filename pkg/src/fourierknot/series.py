"""Cosine-series space curves and the two torus-knot generators.

A curve coordinate is a finite sum ``A*cos(n*t + phi)`` with integer
frequencies, so every curve here is exactly 2*pi periodic.  Knots come in two
parameterized families: a two-term-z form (one cosine on x and y, two on z)
and the classical winding form rewritten as pure cosine series.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidGeometry, InvalidParams, SimplifyRequiresEvenP

TWO_PI = 2.0 * math.pi


def reduce_angle(theta: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    r = math.fmod(theta, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    # adding 2*pi to a tiny negative rounds back up to 2*pi itself
    if r >= TWO_PI:
        r = 0.0
    return r + 0.0  # clears negative zero


def fmt_float(x: float) -> str:
    """17 significant digits: round-trip exact for doubles, stable across runs."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class FourierTerm:
    """One cosine term ``amplitude * cos(frequency*t + phase)``.

    The frequency is a non-negative integer (0 encodes a constant term) and
    the phase is stored reduced to [0, 2*pi).
    """

    amplitude: float
    frequency: int
    phase: float = 0.0

    def __post_init__(self):
        n = int(self.frequency)
        if n != self.frequency or n < 0:
            raise ValueError(f"frequency must be a non-negative integer, got {self.frequency!r}")
        object.__setattr__(self, "amplitude", float(self.amplitude))
        object.__setattr__(self, "frequency", n)
        object.__setattr__(self, "phase", reduce_angle(float(self.phase)))


@dataclass(frozen=True)
class FourierSeries:
    """An ordered sum of cosine terms, evaluated as a function of the angle t."""

    terms: tuple[FourierTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def from_triples(cls, triples) -> "FourierSeries":
        """Build from an iterable of (amplitude, frequency, phase) triples."""
        return cls(tuple(FourierTerm(a, n, phi) for a, n, phi in triples))

    def __len__(self) -> int:
        return len(self.terms)

    def eval(self, t):
        """Value at t; accepts a scalar or an ndarray."""
        if isinstance(t, (float, int)):
            return sum(tm.amplitude * math.cos(tm.frequency * t + tm.phase) for tm in self.terms)
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for tm in self.terms:
            out += tm.amplitude * np.cos(tm.frequency * t + tm.phase)
        return out

    def eval_derivative(self, t):
        """d/dt value at t; accepts a scalar or an ndarray."""
        if isinstance(t, (float, int)):
            return sum(
                -tm.amplitude * tm.frequency * math.sin(tm.frequency * t + tm.phase)
                for tm in self.terms
            )
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for tm in self.terms:
            out += -tm.amplitude * tm.frequency * np.sin(tm.frequency * t + tm.phase)
        return out

    def max_frequency(self) -> int:
        return max((tm.frequency for tm in self.terms), default=0)


@dataclass(frozen=True)
class FourierKnot:
    """A closed space curve with one cosine series per coordinate."""

    x: FourierSeries
    y: FourierSeries
    z: FourierSeries

    @property
    def signature(self) -> tuple[int, int, int]:
        """Per-axis term counts (x, y, z)."""
        return (len(self.x), len(self.y), len(self.z))

    def point(self, t):
        """(x, y, z) at t; each component a scalar or ndarray matching t."""
        return (self.x.eval(t), self.y.eval(t), self.z.eval(t))

    def max_frequency(self) -> int:
        return max(s.max_frequency() for s in (self.x, self.y, self.z))

    def term_count(self) -> int:
        return len(self.x) + len(self.y) + len(self.z)

    def to_json(self) -> str:
        """Serialize as {"x":[[A,n,phi],...],"y":[...],"z":[...]}, radians."""

        def ser(series: FourierSeries) -> str:
            return "[" + ",".join(
                f"[{fmt_float(tm.amplitude)},{tm.frequency},{fmt_float(tm.phase)}]"
                for tm in series.terms
            ) + "]"

        return f'{{"x":{ser(self.x)},"y":{ser(self.y)},"z":{ser(self.z)}}}'

    @classmethod
    def from_json(cls, text: str) -> "FourierKnot":
        data = json.loads(text)
        series = {}
        for axis in ("x", "y", "z"):
            series[axis] = FourierSeries.from_triples(data[axis])
        return cls(series["x"], series["y"], series["z"])


@dataclass(frozen=True)
class TorusParams:
    """Coprime winding numbers with 2 <= p < q.

    p = 1 is rejected deliberately: it gives an unknotted curve whose crossing
    families are empty and would degenerate everything downstream.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)) or p <= 0 or q <= 0:
            raise InvalidParams(f"p and q must be positive integers, got ({p!r}, {q!r})")
        if p >= q:
            raise InvalidParams(f"p < q required, got ({p}, {q})")
        if math.gcd(p, q) != 1:
            raise InvalidParams(f"p and q must be coprime, got ({p}, {q})")
        if p < 2:
            raise InvalidParams(f"p >= 2 required (p = 1 is the unknot), got ({p}, {q})")


@dataclass(frozen=True)
class StandardTorusGeometry:
    """Radii of the round torus: tube radius r around a circle of radius R."""

    R: float = 2.0
    r: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.r < self.R):
            raise InvalidGeometry(f"0 < r < R required, got (R={self.R}, r={self.r})")


def gen_theorem_knot(params: TorusParams, simplified: bool = False) -> FourierKnot:
    """The (p,q) torus knot with signature (1,1,2).

    x = cos(p t), y = cos(q t + pi/(2p)),
    z = cos(p t + pi/2) + cos((q-p) t + pi/(2p) - pi/(4q)).

    With ``simplified``, the second z phase becomes pi/(2p); that variant is a
    valid parameterization only for even p.
    """
    p, q = params.p, params.q
    if simplified and p % 2 != 0:
        raise SimplifyRequiresEvenP(f"the short z phase pi/(2p) requires even p, got p={p}")
    phi_z2 = math.pi / (2 * p) if simplified else math.pi / (2 * p) - math.pi / (4 * q)
    return FourierKnot(
        x=FourierSeries((FourierTerm(1.0, p, 0.0),)),
        y=FourierSeries((FourierTerm(1.0, q, math.pi / (2 * p)),)),
        z=FourierSeries((FourierTerm(1.0, p, math.pi / 2), FourierTerm(1.0, q - p, phi_z2))),
    )


def _folded(amplitude: float, frequency: int, phase: float) -> FourierTerm:
    # cos(-n t + phi) = cos(n t - phi): negative frequencies fold to positive
    if frequency < 0:
        return FourierTerm(amplitude, -frequency, -phase)
    return FourierTerm(amplitude, frequency, phase)


def gen_standard_knot(
    params: TorusParams, geom: StandardTorusGeometry | None = None
) -> FourierKnot:
    """The winding parameterization rewritten as cosine series, signature (3,3,1)."""
    if geom is None:
        geom = StandardTorusGeometry()
    p, q = params.p, params.q
    R, r = geom.R, geom.r
    half = math.pi / 2
    x = FourierSeries((
        _folded(R, p, 0.0),
        _folded(r / 2, p + q, 0.0),
        _folded(r / 2, p - q, 0.0),
    ))
    y = FourierSeries((
        _folded(R, p, -half),
        _folded(r / 2, p + q, -half),
        _folded(r / 2, p - q, -half),
    ))
    z = FourierSeries((_folded(r, q, -half),))
    return FourierKnot(x, y, z)


def standard_torus_point(params: TorusParams, geom: StandardTorusGeometry, t):
    """Direct product-form evaluation of the winding parameterization.

    Independent of gen_standard_knot; used to check the cosine-series rewrite.
    """
    p, q = params.p, params.q
    R, r = geom.R, geom.r
    t = np.asarray(t, dtype=float)
    x = R * np.cos(p * t) + r * np.cos(p * t) * np.cos(q * t)
    y = R * np.sin(p * t) + r * np.sin(p * t) * np.cos(q * t)
    z = r * np.sin(q * t)
    return x, y, z
