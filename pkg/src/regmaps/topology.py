"""Topological invariants of rational maps, measured numerically or exactly.

* :func:`winding` -- degree of a circle self-map by accumulating angle
  increments over a uniform partition, refined until every step is small.
* :func:`degree_mc` -- Monte Carlo mapping degree of a sphere self-map:
  the signed Jacobian determinant in orthonormal tangent frames,
  averaged over uniform random points, estimates the degree (the
  integrand integrates to ``degree * volume`` and the frames normalize
  the volume away).  Deterministic for a fixed seed: points are drawn in
  fixed-size chunks from counter-based streams keyed by (seed, chunk).
* :func:`regular_value_probe` -- exact-arithmetic check that given fiber
  points map to a common value and that the differential, restricted to
  the domain tangent space and projected to the codomain tangent space,
  has full rank there.
* :func:`radon_hurwitz` / :func:`check_codim_pair` -- the classical
  power-of-two counting function and the congruence test it feeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .polynomial import Polynomial
from .ratmap import RationalMap
from .varieties import PointOnVariety, sphere

CHUNK_SIZE = 1 << 14


class NonConvergenceError(RuntimeError):
    """Raised when a numeric invariant fails to stabilize."""


# ---------------------------------------------------------------------------
# Batched float evaluation of polynomials
# ---------------------------------------------------------------------------


def _term_data(p: Polynomial) -> List[Tuple[float, Tuple[Tuple[int, int], ...]]]:
    out = []
    for exps, coeff in p.terms.items():
        factors = tuple((i, e) for i, e in enumerate(exps) if e)
        out.append((float(coeff), factors))
    return out


def _batch_eval(
    term_data: List[Tuple[float, Tuple[Tuple[int, int], ...]]],
    points: np.ndarray,
    power_cache: Dict[Tuple[int, int], np.ndarray],
) -> np.ndarray:
    total = np.zeros(points.shape[0])
    for coeff, factors in term_data:
        acc = np.full(points.shape[0], coeff)
        for var, exp in factors:
            key = (var, exp)
            arr = power_cache.get(key)
            if arr is None:
                arr = points[:, var] ** exp
                power_cache[key] = arr
            acc = acc * arr
        total += acc
    return total


# ---------------------------------------------------------------------------
# Winding number of circle maps
# ---------------------------------------------------------------------------


def winding(
    f: RationalMap,
    *,
    initial_points: int = 64,
    max_points: int = 1 << 20,
    tol: float = 1e-6,
) -> int:
    """Winding number of a circle self-map.

    Walks the image of a uniform partition of the circle and accumulates
    wrapped angle increments, doubling the partition until every step is
    below pi/2 (so no wrap is ambiguous).  The accumulated total must be
    within ``tol`` of an integer multiple of 2*pi.
    """
    circle = sphere(1)
    if f.domain != circle or f.codomain != circle:
        raise ValueError("winding numbers are defined for maps S1 -> S1")
    num_data = [_term_data(p) for p in f.numerators]
    den_data = _term_data(f.denominator)
    count = initial_points
    previous: Optional[int] = None
    # A single partition with small sampled steps can alias: a fast swing
    # between neighbours (denominator near zero) may wrap almost a full
    # turn yet produce a small wrapped step.  Accept only when two
    # successive refinements both have every step below pi/2 and agree.
    while count <= max_points:
        theta = 2.0 * math.pi * np.arange(count) / count
        points = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        cache: Dict[Tuple[int, int], np.ndarray] = {}
        den = _batch_eval(den_data, points, cache)
        if np.min(np.abs(den)) < 1e-12:
            raise ZeroDivisionError(
                "denominator vanishes near a partition point; "
                "the map is not defined on the whole circle"
            )
        g1 = _batch_eval(num_data[0], points, cache) / den
        g2 = _batch_eval(num_data[1], points, cache) / den
        angles = np.arctan2(g2, g1)
        steps = np.diff(angles, append=angles[:1])
        steps = np.mod(steps + math.pi, 2.0 * math.pi) - math.pi
        if np.max(np.abs(steps)) < 0.5 * math.pi:
            turns = float(np.sum(steps)) / (2.0 * math.pi)
            rounded = round(turns)
            if abs(turns - rounded) > tol:
                raise NonConvergenceError(
                    f"accumulated angle {turns} turns is not close to an integer"
                )
            if previous is not None and previous == rounded:
                return int(rounded)
            previous = rounded
        else:
            previous = None
        count *= 2
    raise NonConvergenceError(
        f"partition refinement exceeded {max_points} points without "
        "stable small angle steps"
    )


# ---------------------------------------------------------------------------
# Monte Carlo mapping degree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeEstimate:
    estimate: float
    rounded: int
    half_width: float
    samples: int
    seed: int
    resampled: int
    conclusive: bool

    @property
    def passed(self) -> bool:
        return self.conclusive

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "rounded": self.rounded,
            "half_width": self.half_width,
            "samples": self.samples,
            "seed": self.seed,
            "resampled": self.resampled,
            "conclusive": self.conclusive,
        }


def _oriented_tangent_frames(points: np.ndarray) -> np.ndarray:
    """Orthonormal tangent frames for unit rows, deterministically oriented.

    For each point the coordinate of largest magnitude (lowest index on
    ties) is dropped from the standard basis; the remaining basis vectors
    are Gram-Schmidt-orthogonalized against the point and each other, and
    the last column is flipped if needed so every frame [point | frame]
    is positively oriented in the ambient space.
    """
    batch, dim = points.shape
    pivot = np.argmax(np.abs(points), axis=1)
    indices = np.tile(np.arange(dim), (batch, 1))
    keep = indices != pivot[:, None]
    candidates = indices[keep].reshape(batch, dim - 1)
    rows = np.arange(batch)[:, None]
    seeds = np.zeros((batch, dim, dim - 1))
    seeds[rows, candidates, np.arange(dim - 1)[None, :]] = 1.0
    columns: List[np.ndarray] = []
    for c in range(dim - 1):
        v = seeds[:, :, c]
        v = v - np.sum(v * points, axis=1, keepdims=True) * points
        for prev in columns:
            v = v - np.sum(v * prev, axis=1, keepdims=True) * prev
        v = v / np.linalg.norm(v, axis=1, keepdims=True)
        columns.append(v)
    frame = np.stack(columns, axis=2)
    oriented = np.concatenate([points[:, :, None], frame], axis=2)
    flip = np.sign(np.linalg.det(oriented))
    frame[:, :, -1] *= flip[:, None]
    return frame


def degree_mc(f: RationalMap, samples: int = 10_000, seed: int = 0) -> DegreeEstimate:
    """Monte Carlo estimate of the mapping degree of a sphere self-map.

    Averages ``det(B_f(x)^T . Df(x) . B_x)`` over uniform points ``x``,
    where ``B_x`` and ``B_f(x)`` are the deterministic oriented tangent
    frames above and ``Df`` is the float Jacobian of the rational map.
    Reports a three-sigma half-width; the estimate is conclusive when
    the half-width is below one half.  Points where the denominator is
    numerically zero are redrawn from the same stream (and counted).
    """
    n = f.domain.ambient_dim - 1
    if f.domain != sphere(n) or f.codomain != f.domain:
        raise ValueError("mapping degree needs a sphere self-map")
    if samples < 2:
        raise ValueError("need at least two samples")
    dim = n + 1
    num_data = [_term_data(p) for p in f.numerators]
    den_data = _term_data(f.denominator)
    dnum_data = [
        [_term_data(p.differentiate(j)) for j in range(dim)] for p in f.numerators
    ]
    dden_data = [_term_data(f.denominator.differentiate(j)) for j in range(dim)]

    total = 0.0
    total_sq = 0.0
    produced = 0
    resampled = 0
    chunk_index = 0
    while produced < samples:
        want = min(CHUNK_SIZE, samples - produced)
        key = np.array([seed % (1 << 64), chunk_index], dtype=np.uint64)
        rng = np.random.Generator(np.random.Philox(key=key))
        raw = rng.standard_normal((CHUNK_SIZE, dim))[:want]
        points = raw / np.linalg.norm(raw, axis=1, keepdims=True)
        cache: Dict[Tuple[int, int], np.ndarray] = {}
        den = _batch_eval(den_data, points, cache)
        guard = 0
        while True:
            bad = np.abs(den) < 1e-12
            bad |= ~np.isfinite(den)
            count_bad = int(np.sum(bad))
            if count_bad == 0:
                break
            guard += 1
            if guard > 100:
                raise NonConvergenceError(
                    "sampling keeps landing on the excluded locus"
                )
            resampled += count_bad
            redraw = rng.standard_normal((count_bad, dim))
            redraw = redraw / np.linalg.norm(redraw, axis=1, keepdims=True)
            points[bad] = redraw
            cache = {}
            den = _batch_eval(den_data, points, cache)

        nums = np.stack([_batch_eval(d, points, cache) for d in num_data], axis=1)
        images = nums / den[:, None]
        images = images / np.linalg.norm(images, axis=1, keepdims=True)

        jac = np.empty((want, dim, dim))
        den_sq = den * den
        for i in range(dim):
            for j in range(dim):
                dn = _batch_eval(dnum_data[i][j], points, cache)
                dd = _batch_eval(dden_data[j], points, cache)
                jac[:, i, j] = (dn * den - nums[:, i] * dd) / den_sq

        frames_x = _oriented_tangent_frames(points)
        frames_fx = _oriented_tangent_frames(images)
        pulled = np.matmul(np.transpose(frames_fx, (0, 2, 1)), np.matmul(jac, frames_x))
        dets = np.linalg.det(pulled)
        total += float(np.sum(dets))
        total_sq += float(np.sum(dets * dets))
        produced += want
        chunk_index += 1

    mean = total / samples
    variance = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    half_width = 3.0 * math.sqrt(variance / samples)
    rounded = int(round(mean))
    return DegreeEstimate(
        estimate=mean,
        rounded=rounded,
        half_width=half_width,
        samples=samples,
        seed=seed,
        resampled=resampled,
        conclusive=half_width < 0.5,
    )


# ---------------------------------------------------------------------------
# Exact regularity probe at fiber points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    all_on_fiber: bool
    all_regular: bool
    required_rank: int
    ranks: Tuple[int, ...]
    value: Tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return self.all_on_fiber and self.all_regular

    def to_dict(self) -> dict:
        return {
            "all_on_fiber": self.all_on_fiber,
            "all_regular": self.all_regular,
            "required_rank": self.required_rank,
            "ranks": list(self.ranks),
            "value": [str(c) for c in self.value],
        }


def regular_value_probe(
    f: RationalMap,
    points: Sequence[PointOnVariety],
    value: Optional[PointOnVariety] = None,
) -> ProbeReport:
    """Exact regularity of ``f`` along a fiber.

    Checks that every given point maps exactly to the common value (the
    image of the first point unless ``value`` is supplied), and computes
    at each point the rank of the differential restricted to the domain's
    tangent space and projected to the codomain's tangent space at the
    value.  Regular means that rank equals the codomain dimension.

    All ranks are exact: domain tangent spaces are nullspaces of relation
    Jacobians over the rationals, and the projected rank is obtained as
    ``rank([W | N]) - rank(N)`` where ``W`` is the image of the tangent
    space under the differential and ``N`` spans the codomain's normal
    space (the two subspace ranks split because tangent and normal parts
    are complementary).
    """
    if not points:
        raise ValueError("need at least one fiber point")
    if value is None:
        value = f.evaluate(points[0])
    if value.variety != f.codomain:
        raise ValueError("value must lie on the codomain")
    value_coords = value.coords

    codomain_normals = [
        [relation.differentiate(j).evaluate(value_coords) for j in range(f.codomain.ambient_dim)]
        for relation in f.codomain.relations
    ]
    normal_rank = linalg.rank(codomain_normals) if codomain_normals else 0
    required = f.codomain.ambient_dim - normal_rank

    num_partials = [
        [p.differentiate(j) for j in range(f.domain.ambient_dim)] for p in f.numerators
    ]
    den_partials = [
        f.denominator.differentiate(j) for j in range(f.domain.ambient_dim)
    ]

    all_on_fiber = True
    ranks: List[int] = []
    for point in points:
        if point.variety != f.domain:
            raise ValueError("probe points must lie on the domain")
        coords = point.coords
        image = f.evaluate_raw(coords)
        if tuple(image) != value_coords:
            all_on_fiber = False
        den_value = f.denominator.evaluate(coords)
        den_sq = den_value * den_value
        jacobian = [
            [
                (num_partials[i][j].evaluate(coords) * den_value
                 - f.numerators[i].evaluate(coords) * den_partials[j].evaluate(coords))
                / den_sq
                for j in range(f.domain.ambient_dim)
            ]
            for i in range(len(f.numerators))
        ]
        relation_rows = [
            [relation.differentiate(j).evaluate(coords) for j in range(f.domain.ambient_dim)]
            for relation in f.domain.relations
        ]
        if relation_rows:
            tangent = linalg.nullspace_basis(relation_rows)
        else:
            tangent = [
                [Fraction(1) if a == b else Fraction(0) for a in range(f.domain.ambient_dim)]
                for b in range(f.domain.ambient_dim)
            ]
        pushed = [linalg.mat_vec(jacobian, t) for t in tangent]
        stacked = [list(col) for col in pushed] + [list(row) for row in codomain_normals]
        rank_value = linalg.rank(stacked) - normal_rank
        ranks.append(rank_value)

    return ProbeReport(
        all_on_fiber=all_on_fiber,
        all_regular=all(r == required for r in ranks),
        required_rank=required,
        ranks=tuple(ranks),
        value=value_coords,
    )


# ---------------------------------------------------------------------------
# Radon-Hurwitz counting function and the codimension congruence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadonHurwitzValue:
    p: int
    exponent: int
    value: int

    def to_dict(self) -> dict:
        return {"p": self.p, "exponent": self.exponent, "a_p": self.value}


def radon_hurwitz(p: int) -> RadonHurwitzValue:
    """The counting function a_p = 2^#{0 < i <= p-1 : i mod 8 in {0,1,2,4}}."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    exponent = sum(1 for i in range(1, p) if i % 8 in (0, 1, 2, 4))
    return RadonHurwitzValue(p=p, exponent=exponent, value=1 << exponent)


@dataclass(frozen=True)
class CodimPairReport:
    m: int
    k: int
    modulus: int
    admissible: bool

    @property
    def passed(self) -> bool:
        return self.admissible

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "modulus": self.modulus,
            "admissible": self.admissible,
        }


def check_codim_pair(m: int, k: int) -> CodimPairReport:
    """Congruence test for the pair (m, k): is k = -1 modulo a_{m+2}?"""
    if m < 1:
        raise ValueError("m must be positive")
    if k <= m + 1:
        raise ValueError("need k > m + 1")
    modulus = radon_hurwitz(m + 2).value
    return CodimPairReport(
        m=m, k=k, modulus=modulus, admissible=((k + 1) % modulus == 0)
    )
