"""Double points of the xy-projection.

Two routes to the same crossings: closed-form enumeration of the two index
families (valid for the two-term-z knots, whose x and y fix all crossing
times), and a generic numeric finder (grid scan plus damped Newton) that works
for any cosine-series knot and serves as the independent oracle.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import SingularCrossing, WrongKnotShape
from .series import TWO_PI, FourierKnot, FourierSeries, TorusParams, fmt_float, reduce_angle

log = logging.getLogger("fourierknot.crossings")

EPS_RESIDUAL = 1e-9
EPS_SINGULAR = 1e-9
EPS_DEDUPE = 1e-6

TYPE_I = "I"
TYPE_II = "II"

# sample offset in grid units; keeps grid nodes off the rational-pi lattice
# where crossing times live, so no intersection sits exactly on a cell corner
_GRID_OFFSET = 0.5 * (math.sqrt(5.0) - 1.0)

_NEWTON_BUDGET = 50
_NEWTON_TOL = 1e-12


@dataclass(frozen=True, order=True)
class CrossingIndices:
    """Analytic family and index pair of a crossing: kind "I" or "II", (k, j)."""

    kind: str
    k: int
    j: int

    def key(self) -> str:
        return f"{self.kind}:{self.k}:{self.j}"


@dataclass(frozen=True)
class Crossing:
    """A resolved double point: canonical times 0 <= t1 < t2 < 2*pi.

    sign is +1 for a right-handed crossing, -1 for left-handed; over names the
    strand ("t1" or "t2") passing on top.
    """

    t1: float
    t2: float
    sign: int
    over: str
    position: tuple[float, float]
    indices: CrossingIndices | None = None

    @property
    def t_over(self) -> float:
        return self.t1 if self.over == "t1" else self.t2

    @property
    def t_under(self) -> float:
        return self.t2 if self.over == "t1" else self.t1


def circular_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle."""
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def pair_distance(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Distance between unordered time pairs, over both role assignments."""
    straight = max(circular_distance(a[0], b[0]), circular_distance(a[1], b[1]))
    crossed = max(circular_distance(a[0], b[1]), circular_distance(a[1], b[0]))
    return min(straight, crossed)


def enumerate_type1(params: TorusParams):
    """Same-direction double points: pq - q entries of ((kind,k,j), t1, t2).

    Times keep their formula roles (t1 carries the -k shift) and are reduced
    mod 2*pi individually.  The j bounds are floors of rationals; they are
    computed in exact integer arithmetic because kq/p + 1/(2p) can sit at an
    integer.
    """
    p, q = params.p, params.q
    out = []
    for k in range(1, p):
        j_lo = 1 + (2 * k * q + 1) // (2 * p)
        j_hi = (4 * p * q - 2 * k * q + 1) // (2 * p)
        half = k * math.pi / p
        for j in range(j_lo, j_hi + 1):
            base = j * math.pi / q - math.pi / (2 * p * q)
            out.append((CrossingIndices(TYPE_I, k, j), reduce_angle(base - half), reduce_angle(base + half)))
    return out


def enumerate_type2(params: TorusParams):
    """Opposite-direction double points: pq - p entries of ((kind,k,j), t1, t2)."""
    p, q = params.p, params.q
    out = []
    for k in range(1, q):
        j_lo = 1 + (p * k) // q
        j_hi = (2 * p * q - p * k) // q
        half = k * math.pi / q
        for j in range(j_lo, j_hi + 1):
            base = j * math.pi / p
            out.append((CrossingIndices(TYPE_II, k, j), reduce_angle(base - half), reduce_angle(base + half)))
    return out


def direction_product(knot: FourierKnot, t1: float, t2: float) -> float:
    """x'(t1) * x'(t2): positive iff both strands head the same left/right way."""
    return knot.x.eval_derivative(t1) * knot.x.eval_derivative(t2)


def pair_difference(series: FourierSeries, t1: float, t2: float) -> float:
    """series(t1) - series(t2) via the term-wise product-of-sines split."""
    s = 0.5 * (t1 + t2)
    d = 0.5 * (t1 - t2)
    total = 0.0
    for tm in series.terms:
        total += -2.0 * tm.amplitude * math.sin(tm.frequency * s + tm.phase) * math.sin(tm.frequency * d)
    return total


def zdiff(knot: FourierKnot, t1: float, t2: float) -> float:
    """z(t1) - z(t2) via the product-of-sines expansion of the two z terms."""
    if len(knot.z) != 2:
        raise WrongKnotShape(f"z must carry exactly two cosine terms, got {len(knot.z)}")
    return pair_difference(knot.z, t1, t2)


def classify(knot: FourierKnot, t1: float, t2: float, indices: CrossingIndices | None = None) -> Crossing:
    """Resolve a projection double point into a signed over/under crossing.

    The crossing sign is the sign of
    [x'(t1) y'(t2) - x'(t2) y'(t1)] * [z(t1) - z(t2)], which is symmetric in
    (t1, t2), so the times may be reordered freely into canonical form.
    """
    a, b = reduce_angle(t1), reduce_angle(t2)
    if a > b:
        a, b = b, a
    z1 = knot.z.eval(a)
    z2 = knot.z.eval(b)
    dz = z1 - z2
    planar = (
        knot.x.eval_derivative(a) * knot.y.eval_derivative(b)
        - knot.x.eval_derivative(b) * knot.y.eval_derivative(a)
    )
    if abs(dz) <= EPS_SINGULAR:
        raise SingularCrossing(f"strands meet in space at ({a:.6f}, {b:.6f}): |dz| = {abs(dz):.3e}")
    if abs(planar) <= EPS_SINGULAR:
        raise SingularCrossing(f"projection tangency at ({a:.6f}, {b:.6f}): |cross| = {abs(planar):.3e}")
    sign = 1 if planar * dz > 0 else -1
    over = "t1" if z1 > z2 else "t2"
    return Crossing(a, b, sign, over, (knot.x.eval(a), knot.y.eval(a)), indices)


@dataclass(frozen=True)
class CrossingSet:
    """All crossings of one knot, sorted by (t1, t2), deduplicated."""

    knot: FourierKnot
    crossings: tuple[Crossing, ...]
    method: str  # "analytic" | "numeric"

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        cs = self.crossings
        for a, b in zip(cs, cs[1:]):
            if (a.t1, a.t2) > (b.t1, b.t2):
                raise ValueError("crossings must be sorted by (t1, t2)")
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if pair_distance((cs[i].t1, cs[i].t2), (cs[j].t1, cs[j].t2)) <= EPS_DEDUPE:
                    raise ValueError(
                        f"duplicate time pair within {EPS_DEDUPE:g}: "
                        f"({cs[i].t1}, {cs[i].t2}) vs ({cs[j].t1}, {cs[j].t2})"
                    )

    def __len__(self) -> int:
        return len(self.crossings)

    def of_kind(self, kind: str) -> tuple[Crossing, ...]:
        return tuple(c for c in self.crossings if c.indices is not None and c.indices.kind == kind)

    def fully_indexed(self) -> bool:
        return all(c.indices is not None for c in self.crossings)

    def to_json(self) -> str:
        """Array of crossing records sorted by (t1, t2); 17-digit floats."""
        rows = []
        for c in self.crossings:
            if c.indices is not None:
                kind = f'"{c.indices.kind}"'
                k, j = str(c.indices.k), str(c.indices.j)
            else:
                kind = k = j = "null"
            rows.append(
                f'{{"kind":{kind},"k":{k},"j":{j},'
                f'"t1":{fmt_float(c.t1)},"t2":{fmt_float(c.t2)},'
                f'"sign":{c.sign},"over":"{c.over}",'
                f'"x":{fmt_float(c.position[0])},"y":{fmt_float(c.position[1])}}}'
            )
        return "[" + ",".join(rows) + "]"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "k", "j", "t1", "t2", "sign", "over", "x", "y"])
        for c in self.crossings:
            kind = c.indices.kind if c.indices else ""
            k = c.indices.k if c.indices else ""
            j = c.indices.j if c.indices else ""
            w.writerow([kind, k, j, fmt_float(c.t1), fmt_float(c.t2), c.sign, c.over,
                        fmt_float(c.position[0]), fmt_float(c.position[1])])
        return buf.getvalue()


def analytic_crossing_set(knot: FourierKnot, params: TorusParams) -> CrossingSet:
    """Enumerate both closed-form families and classify against the knot's z."""
    entries = enumerate_type1(params) + enumerate_type2(params)
    crossings = [classify(knot, t1, t2, idx) for idx, t1, t2 in entries]
    crossings.sort(key=lambda c: (c.t1, c.t2))
    return CrossingSet(knot, tuple(crossings), "analytic")


def _newton_refine(knot: FourierKnot, t1: float, t2: float):
    """Polish a candidate double point; returns (status, t1, t2).

    status: "ok", "tangential" (singular Jacobian), "divergence".
    """
    def residual(a, b):
        return math.hypot(knot.x.eval(a) - knot.x.eval(b), knot.y.eval(a) - knot.y.eval(b))

    res = residual(t1, t2)
    for _ in range(_NEWTON_BUDGET):
        if res < _NEWTON_TOL:
            return "ok", t1, t2
        fx = knot.x.eval(t1) - knot.x.eval(t2)
        fy = knot.y.eval(t1) - knot.y.eval(t2)
        j11 = knot.x.eval_derivative(t1)
        j12 = -knot.x.eval_derivative(t2)
        j21 = knot.y.eval_derivative(t1)
        j22 = -knot.y.eval_derivative(t2)
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-12:
            return "tangential", t1, t2
        dt1 = -(j22 * fx - j12 * fy) / det
        dt2 = -(-j21 * fx + j11 * fy) / det
        lam = 1.0
        while True:
            n1, n2 = t1 + lam * dt1, t2 + lam * dt2
            new_res = residual(n1, n2)
            if new_res < res:
                t1, t2, res = n1, n2, new_res
                break
            lam *= 0.5
            if lam < 1e-7:
                return "divergence", t1, t2
    if res < _NEWTON_TOL:
        return "ok", t1, t2
    return "divergence", t1, t2


def find_crossings_numeric(knot: FourierKnot, grid: int, diagnostics: list | None = None) -> CrossingSet:
    """Find all transverse double points of the xy-projection numerically.

    Coarse candidates come from a segment-pair scan over a uniform t-grid,
    then each candidate is polished by damped Newton on
    (x(t1)-x(t2), y(t1)-y(t2)) and deduplicated on the unordered time pair.
    Failed candidates are reported through the logger (and ``diagnostics``
    when given), never raised.
    """
    floor = 4 * knot.max_frequency() * knot.term_count()
    if grid < floor:
        raise ValueError(f"grid {grid} is below the sampling floor {floor}")
    h = TWO_PI / grid
    ts = (np.arange(grid + 1) + _GRID_OFFSET) * h
    px = np.asarray(knot.x.eval(ts))
    py = np.asarray(knot.y.eval(ts))
    px[-1] = px[0]
    py[-1] = py[0]
    ii, jj, ss, uu = _kernels.scan_segment_pairs(px, py)

    accepted: list[Crossing] = []
    pairs: list[tuple[float, float]] = []
    for i, j, s, u in zip(ii, jj, ss, uu):
        g1 = ts[i] + s * h
        g2 = ts[j] + u * h
        status, t1, t2 = _newton_refine(knot, g1, g2)
        if status != "ok":
            log.warning("candidate (%d, %d) failed refinement: %s", i, j, status)
            if diagnostics is not None:
                diagnostics.append((status, int(i), int(j)))
            continue
        t1, t2 = reduce_angle(t1), reduce_angle(t2)
        if t1 > t2:
            t1, t2 = t2, t1
        if circular_distance(t1, t2) <= EPS_DEDUPE:
            continue  # converged onto the trivial diagonal
        if any(pair_distance((t1, t2), old) <= EPS_DEDUPE for old in pairs):
            continue
        try:
            crossing = classify(knot, t1, t2)
        except SingularCrossing as exc:
            log.warning("candidate (%d, %d) is singular: %s", i, j, exc)
            if diagnostics is not None:
                diagnostics.append(("singular", int(i), int(j)))
            continue
        pairs.append((t1, t2))
        accepted.append(crossing)
    accepted.sort(key=lambda c: (c.t1, c.t2))
    return CrossingSet(knot, tuple(accepted), "numeric")
