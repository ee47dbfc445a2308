"""The phase torus of the two z-phases.

With x and y fixed, the crossing times never move: only the heights
z(t1) - z(t2) respond to the phase pair (phi1, phi2).  Each crossing
degenerates along straight lines in the phase square; off those lines the
tuple of height-difference signs pins down the whole diagram, so equal sign
vectors mean equal knots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .crossings import (
    EPS_SINGULAR,
    TYPE_I,
    TYPE_II,
    CrossingIndices,
    enumerate_type1,
    enumerate_type2,
)
from .errors import CertificationFailure, SingularPoint
from .series import TWO_PI, FourierKnot, FourierSeries, FourierTerm, TorusParams, reduce_angle

_CERT_TOL = 1e-9
_CERT_SAMPLES = 10


@dataclass(frozen=True)
class PhasePoint:
    """A point (phi1, phi2) on the phase torus, reduced to [0, 2*pi)^2."""

    phi1: float
    phi2: float

    def __post_init__(self):
        object.__setattr__(self, "phi1", reduce_angle(float(self.phi1)))
        object.__setattr__(self, "phi2", reduce_angle(float(self.phi2)))


@dataclass(frozen=True)
class SingularLine:
    """A line in the phase square where one crossing's height gap vanishes.

    Same-direction crossings give horizontal lines (slope 0, phi2 =
    intercept); opposite-direction crossings give diagonals phi2 =
    slope * phi1 + intercept with slope +-1 set by the parity of k and m.
    """

    kind: str
    k: int
    j: int
    m: int
    slope: int
    intercept: float

    def phi2_at(self, phi1: float) -> float:
        return reduce_angle(self.slope * phi1 + self.intercept)

    def distance_to(self, point: PhasePoint) -> float:
        """Vertical torus distance from the point to the line."""
        d = abs(point.phi2 - self.phi2_at(point.phi1)) % TWO_PI
        return min(d, TWO_PI - d)


@dataclass(frozen=True)
class SignVector:
    """Signs of z(t1) - z(t2) over every crossing index; the diagram fingerprint."""

    items: tuple[tuple[CrossingIndices, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items)))

    def as_dict(self) -> dict[CrossingIndices, int]:
        return dict(self.items)

    def to_json(self) -> str:
        body = ",".join(f'"{ix.key()}":{s}' for ix, s in self.items)
        return "{" + body + "}"


def theorem_phase_point(params: TorusParams) -> PhasePoint:
    """The phase pair (pi/2, pi/(2p) - pi/(4q)) of the two-term-z generator."""
    p, q = params.p, params.q
    return PhasePoint(math.pi / 2, math.pi / (2 * p) - math.pi / (4 * q))


def simplified_phase_point(params: TorusParams) -> PhasePoint:
    """The shortened phase pair (pi/2, pi/(2p))."""
    return PhasePoint(math.pi / 2, math.pi / (2 * params.p))


def knot_with_phases(params: TorusParams, point: PhasePoint) -> FourierKnot:
    """Theorem x/y with z = cos(p t + phi1) + cos((q-p) t + phi2)."""
    p, q = params.p, params.q
    return FourierKnot(
        x=FourierSeries((FourierTerm(1.0, p, 0.0),)),
        y=FourierSeries((FourierTerm(1.0, q, math.pi / (2 * p)),)),
        z=FourierSeries((FourierTerm(1.0, p, point.phi1), FourierTerm(1.0, q - p, point.phi2))),
    )


def _crossing_times(params: TorusParams, indices: CrossingIndices) -> tuple[float, float]:
    p, q = params.p, params.q
    if indices.kind == TYPE_I:
        base = indices.j * math.pi / q - math.pi / (2 * p * q)
        half = indices.k * math.pi / p
    else:
        base = indices.j * math.pi / p
        half = indices.k * math.pi / q
    return base - half, base + half


def zdiff_at_phases(params: TorusParams, point: PhasePoint, indices: CrossingIndices) -> float:
    """z(t1) - z(t2) at the crossing's analytic times, for the given phases."""
    p, q = params.p, params.q
    t1, t2 = _crossing_times(params, indices)
    s = 0.5 * (t1 + t2)
    d = 0.5 * (t1 - t2)
    return (
        -2.0 * math.sin(p * s + point.phi1) * math.sin(p * d)
        - 2.0 * math.sin((q - p) * s + point.phi2) * math.sin((q - p) * d)
    )


def _all_indices(params: TorusParams) -> list[CrossingIndices]:
    return [ix for ix, _, _ in enumerate_type1(params)] + [
        ix for ix, _, _ in enumerate_type2(params)
    ]


def sign_vector(params: TorusParams, point: PhasePoint) -> SignVector:
    """Sign of the height gap at every crossing; raises SingularPoint on a line."""
    items = []
    degenerate = []
    for ix in _all_indices(params):
        v = zdiff_at_phases(params, point, ix)
        if abs(v) <= EPS_SINGULAR:
            degenerate.append(ix)
        else:
            items.append((ix, 1 if v > 0 else -1))
    if degenerate:
        raise SingularPoint(degenerate)
    return SignVector(tuple(items))


def same_knot_by_phases(params: TorusParams, a: PhasePoint, b: PhasePoint) -> bool:
    """Equal sign vectors force identical diagrams, hence the same knot.

    This is a sufficient test: distinct regions of the phase square could in
    principle share a sign vector, which would still mean equal diagrams.
    """
    return sign_vector(params, a) == sign_vector(params, b)


def _TYPE1_CONST(p: int, q: int) -> float:
    # intercept constant of the horizontal singular lines; certified
    # numerically against zdiff_at_phases, see certify_intercept_reading
    return (1.0 / p - 1.0 / q) * math.pi / 2


def _line_candidates(params: TorusParams):
    """Uncertified line descriptors for every crossing index and admissible m."""
    p, q = params.p, params.q
    out = []
    for ix in _all_indices(params):
        if ix.kind == TYPE_I:
            base = ix.j * p * math.pi / q + _TYPE1_CONST(p, q)
            slopes = None
        else:
            base = -ix.j * q * math.pi / p
            slopes = True
        m_lo = math.ceil((-base) / math.pi - 1e-12)
        m = m_lo
        while base + m * math.pi < TWO_PI - 1e-12:
            intercept = base + m * math.pi
            if intercept < -1e-12:
                m += 1
                continue
            if ix.kind == TYPE_I:
                slope = 0
            else:
                # k even: slope (-1)^m; k odd: slope (-1)^(m+1)
                slope = 1 if (m + ix.k) % 2 == 0 else -1
            out.append(SingularLine(ix.kind, ix.k, ix.j, m, slope, max(intercept, 0.0)))
            m += 1
    return out


def singular_lines(params: TorusParams) -> list[SingularLine]:
    """All singular lines with intercepts in [0, 2*pi), each certified.

    Certification samples phi1 along the line and demands the owning
    crossing's height gap vanish below 1e-9; a failing line raises
    CertificationFailure rather than being dropped.
    """
    lines = _line_candidates(params)
    for line in lines:
        ix = CrossingIndices(line.kind, line.k, line.j)
        for s in range(_CERT_SAMPLES):
            phi1 = TWO_PI * (s + 0.37) / _CERT_SAMPLES
            point = PhasePoint(phi1, line.phi2_at(phi1))
            r = abs(zdiff_at_phases(params, point, ix))
            if r > _CERT_TOL:
                raise CertificationFailure(
                    f"line {line} fails for crossing {ix.key()}: residual {r:.3e} at phi1={phi1:.6f}"
                )
    return lines


def certify_intercept_reading(params: TorusParams) -> tuple[str, float, float]:
    """Resolve the grouping of the horizontal-line intercept constant.

    Tries (1/p - 1/q) * pi/2 against (1/p - 1/q) / (2*pi) and returns
    (certified reading, its worst residual, best residual of the rejected
    reading).  The height-gap oracle, not the transcription, decides.
    """
    p, q = params.p, params.q
    readings = {
        "(1/p - 1/q) * pi/2": (1.0 / p - 1.0 / q) * math.pi / 2,
        "(1/p - 1/q) / (2*pi)": (1.0 / p - 1.0 / q) / (2 * math.pi),
    }
    results = {}
    type1 = [ix for ix, _, _ in enumerate_type1(params)]
    for name, const in readings.items():
        worst = 0.0
        for ix in type1:
            intercept = ix.j * p * math.pi / q + const
            for s in range(_CERT_SAMPLES):
                phi1 = TWO_PI * (s + 0.37) / _CERT_SAMPLES
                point = PhasePoint(phi1, intercept)
                worst = max(worst, abs(zdiff_at_phases(params, point, ix)))
        results[name] = worst
    good = min(results, key=results.get)
    bad = max(results, key=results.get)
    if results[good] > _CERT_TOL:
        raise CertificationFailure(f"neither intercept reading certifies: {results}")
    return good, results[good], results[bad]


# ---------------------------------------------------------------------------
# Phase map raster


_PALETTE = (
    (31, 119, 180), (255, 127, 14), (44, 160, 44), (214, 39, 40),
    (148, 103, 189), (140, 86, 75), (227, 119, 194), (127, 127, 127),
    (188, 189, 34), (23, 190, 207), (174, 199, 232), (255, 187, 120),
    (152, 223, 138), (255, 152, 150), (197, 176, 213), (196, 156, 148),
)
_SINGULAR_COLOR = (0, 0, 0)


@dataclass
class PhaseMap:
    """Sign-vector classes over a grid of phase-square cells.

    classes[i1, i2] is the class id of the cell centred at
    ((i1 + 0.5) h, (i2 + 0.5) h), h = 2*pi/grid; -1 marks cells whose centre
    sits numerically on a singular line.
    """

    params: TorusParams
    grid: int
    classes: np.ndarray
    n_classes: int
    lines: list[SingularLine]
    marks: list[tuple[PhasePoint, str]] = field(default_factory=list)

    def cell_of(self, point: PhasePoint) -> tuple[int, int]:
        h = TWO_PI / self.grid
        i1 = min(int(point.phi1 / h), self.grid - 1)
        i2 = min(int(point.phi2 / h), self.grid - 1)
        return i1, i2

    def class_at(self, point: PhasePoint) -> int:
        i1, i2 = self.cell_of(point)
        return int(self.classes[i1, i2])

    def _rgb(self) -> np.ndarray:
        """(grid, grid, 3) uint8 image, row 0 at phi2 = 0 (flip when drawing)."""
        img = np.empty((self.grid, self.grid, 3), dtype=np.uint8)
        palette = np.array(_PALETTE, dtype=np.uint8)
        cls = self.classes.T  # rows follow phi2
        img[:] = palette[cls % len(palette)]
        img[cls < 0] = _SINGULAR_COLOR
        return img

    def to_png_bytes(self, scale: int = 2) -> bytes:
        from .render import phase_map_png

        return phase_map_png(self, scale=scale)

    def to_svg(self, size: int = 640) -> str:
        from .render import phase_map_svg

        return phase_map_svg(self, size=size)


def phase_map_render(
    params: TorusParams, grid: int, mark_theorem_points: bool = True
) -> PhaseMap:
    """Colour the phase square by sign-vector class; grid >= 64.

    The height gap of each crossing is linear in (cos phi1, sin phi1,
    cos phi2, sin phi2), so the whole raster reduces to two outer sums.
    """
    if grid < 64:
        raise ValueError(f"grid must be at least 64, got {grid}")
    p, q = params.p, params.q
    indices = _all_indices(params)
    phi = (np.arange(grid) + 0.5) * (TWO_PI / grid)
    n = len(indices)
    term1 = np.empty((n, grid))
    term2 = np.empty((n, grid))
    for c, ix in enumerate(indices):
        t1, t2 = _crossing_times(params, ix)
        s, d = 0.5 * (t1 + t2), 0.5 * (t1 - t2)
        a = -2.0 * math.sin(p * d)
        b = -2.0 * math.sin((q - p) * d)
        term1[c] = a * np.sin(p * s + phi)
        term2[c] = b * np.sin((q - p) * s + phi)
    # zdiff for crossing c at cell (i1, i2) is term1[c, i1] + term2[c, i2]
    gaps = term1[:, :, None] + term2[:, None, :]
    signs = gaps > 0.0
    singular = np.abs(gaps) <= EPS_SINGULAR
    bits = np.packbits(signs.reshape(n, -1), axis=0)
    keys = np.ascontiguousarray(bits.T).view(
        np.dtype((np.void, bits.shape[0]))
    ).ravel()
    _, inverse = np.unique(keys, return_inverse=True)
    classes = inverse.reshape(grid, grid).astype(np.int32)
    n_classes = int(classes.max()) + 1
    classes[singular.any(axis=0)] = -1
    marks = []
    if mark_theorem_points:
        marks = [
            (theorem_phase_point(params), "theorem"),
            (simplified_phase_point(params), "simplified"),
        ]
    return PhaseMap(params, grid, classes, n_classes, _line_candidates(params), marks)
