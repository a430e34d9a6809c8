"""Real algebraic varieties: carriers for the domains and codomains of maps.

A :class:`Variety` bundles a variable registry, the defining relations,
any sphere blocks (groups of variables summing-of-squares to one, which
admit canonical normal forms), and an exact rational-point sampler.

Built-in families
-----------------
* ``sphere(n)``           unit sphere in R^{n+1}, variables ``x1..x{n+1}``
* ``euclidean(n)``        affine n-space, variables ``X1..Xn``
* ``sphere_product(n)``   two sphere blocks ``x*`` and ``y*``
* ``special_orthogonal(n)``  n x n real matrices, entries ``g11..gnn``
  row-major, with orthonormal rows and columns and determinant one
* ``unitary(k)``          k x k complex matrices; each entry ``z_ij``
  is stored as the interleaved real pair ``a_ij, b_ij`` (row-major), and
  the unitarity relations are the real and imaginary parts of
  ``Z* Z - I`` and ``Z Z* - I``
* ``special_unitary(k)``  additionally determinant one (realified)

Samplers produce exact rational points: spheres through the rational
parametrization by inverse stereographic projection, matrix groups
through the Cayley transform of a random skew-symmetric (respectively
skew-Hermitian) rational matrix, with a determinant correction for the
special unitary group.  All samplers are deterministic functions of the
seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .polynomial import (
    GAUSSIAN_I,
    GaussianRational,
    Polynomial,
    SphereBlock,
    VarRegistry,
    real_imag_parts,
)

DEFAULT_HEIGHT = 1000


class NoSamplerError(RuntimeError):
    """Raised when a variety provides no point sampler."""


class PointValidationError(ValueError):
    """Raised when coordinates do not satisfy a variety's relations."""


class Variety:
    """An embedded real variety with named coordinates.

    Instances are immutable; equality is by name and registry, which the
    built-in constructors keep unique (they are cached and return the
    same object for the same parameters).
    """

    __slots__ = ("name", "registry", "relations", "blocks", "sampler", "factors", "_hash")

    def __init__(
        self,
        name: str,
        registry: VarRegistry,
        relations: Sequence[Polynomial],
        blocks: Sequence[SphereBlock] = (),
        sampler: Optional[str] = None,
        factors: Sequence["Variety"] = (),
    ):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "registry", registry)
        object.__setattr__(self, "relations", tuple(relations))
        object.__setattr__(self, "blocks", tuple(blocks))
        object.__setattr__(self, "sampler", sampler)
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "_hash", hash((name, registry)))

    def __setattr__(self, key, value):  # pragma: no cover
        raise AttributeError("Variety is immutable")

    @property
    def ambient_dim(self) -> int:
        return self.registry.size

    def block_reducible(self) -> bool:
        """True when every relation is a sphere-block relation, so that
        membership in the relation ideal is decidable by normal forms."""
        if not self.blocks and not self.relations:
            return True
        block_relations = {b.relation(self.registry) for b in self.blocks}
        return set(self.relations) == block_relations

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Variety):
            return NotImplemented
        return self.name == other.name and self.registry == other.registry

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Variety({self.name!r}, dim ambient {self.ambient_dim})"


class PointOnVariety:
    """Exact rational coordinates validated against the variety relations."""

    __slots__ = ("variety", "coords")

    def __init__(self, variety: Variety, coords: Sequence[Fraction], check: bool = True):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != variety.ambient_dim:
            raise PointValidationError(
                f"{variety.name} needs {variety.ambient_dim} coordinates, "
                f"got {len(coords)}"
            )
        if check:
            for relation in variety.relations:
                value = relation.evaluate(coords)
                if value != 0:
                    raise PointValidationError(
                        f"coordinates violate a relation of {variety.name}: "
                        f"residual {value}"
                    )
        object.__setattr__(self, "variety", variety)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, key, value):  # pragma: no cover
        raise AttributeError("PointOnVariety is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointOnVariety):
            return NotImplemented
        return self.variety == other.variety and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.variety, self.coords))

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coords[:6])
        if len(self.coords) > 6:
            shown += ", ..."
        return f"PointOnVariety({self.variety.name}: {shown})"


# ---------------------------------------------------------------------------
# Helpers for matrix varieties
# ---------------------------------------------------------------------------


def matrix_entry_polys(variety_registry: VarRegistry, n: int) -> List[List[Polynomial]]:
    """Real n x n entry polynomials g_ij over a row-major registry."""
    return [
        [Polynomial.variable(variety_registry, i * n + j) for j in range(n)]
        for i in range(n)
    ]


def complex_entry_polys(variety_registry: VarRegistry, k: int) -> List[List[Polynomial]]:
    """Complex k x k entries z_ij = a_ij + i b_ij over the interleaved
    row-major registry (a11, b11, a12, b12, ...)."""
    out: List[List[Polynomial]] = []
    for i in range(k):
        row = []
        for j in range(k):
            base = 2 * (i * k + j)
            a = Polynomial.variable(variety_registry, base)
            b = Polynomial.variable(variety_registry, base + 1)
            row.append(a + b * GAUSSIAN_I)
        out.append(row)
    return out


def poly_matrix_determinant(entries: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz-formula determinant of a small matrix of polynomials."""
    n = len(entries)
    registry = entries[0][0].registry
    acc = Polynomial.zero(registry)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Polynomial.constant(registry, sign)
        for i in range(n):
            term = term * entries[i][perm[i]]
        acc = acc + term
    return acc


def _gram_relations(entries: Sequence[Sequence[Polynomial]], conjugate: bool) -> List[Polynomial]:
    """Entries of M* M - I and M M* - I (upper triangle, realified)."""
    n = len(entries)
    registry = entries[0][0].registry
    out: List[Polynomial] = []
    for left_conj in (True, False):
        for i in range(n):
            for j in range(i, n):
                acc = Polynomial.zero(registry)
                for m in range(n):
                    if left_conj:
                        a, b = entries[m][i], entries[m][j]
                    else:
                        a, b = entries[i][m], entries[j][m]
                    if conjugate:
                        a = a.conjugate_coefficients()
                    acc = acc + a * b
                if i == j:
                    acc = acc - 1
                if conjugate:
                    re, im = real_imag_parts(acc)
                    if not re.is_zero() or i == j:
                        out.append(re)
                    if not im.is_zero():
                        out.append(im)
                else:
                    out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Built-in varieties
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def sphere(n: int) -> Variety:
    if n < 0:
        raise ValueError("sphere dimension must be nonnegative")
    registry = VarRegistry([f"x{i}" for i in range(1, n + 2)])
    block = SphereBlock(tuple(range(n + 1)))
    return Variety(
        name=f"S{n}",
        registry=registry,
        relations=[block.relation(registry)],
        blocks=[block],
        sampler="sphere",
    )


@lru_cache(maxsize=None)
def euclidean(n: int) -> Variety:
    if n < 1:
        raise ValueError("euclidean dimension must be positive")
    registry = VarRegistry([f"X{i}" for i in range(1, n + 1)])
    return Variety(name=f"R{n}", registry=registry, relations=[], sampler="euclidean")


@lru_cache(maxsize=None)
def sphere_product(n: int) -> Variety:
    if n < 0:
        raise ValueError("sphere dimension must be nonnegative")
    m = n + 1
    names = [f"x{i}" for i in range(1, m + 1)] + [f"y{i}" for i in range(1, m + 1)]
    registry = VarRegistry(names)
    block_x = SphereBlock(tuple(range(m)))
    block_y = SphereBlock(tuple(range(m, 2 * m)))
    return Variety(
        name=f"S{n}xS{n}",
        registry=registry,
        relations=[block_x.relation(registry), block_y.relation(registry)],
        blocks=[block_x, block_y],
        sampler="product",
        factors=(sphere(n), sphere(n)),
    )


@lru_cache(maxsize=None)
def special_orthogonal(n: int) -> Variety:
    if n < 1:
        raise ValueError("matrix size must be positive")
    names = [f"g{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    registry = VarRegistry(names)
    entries = matrix_entry_polys(registry, n)
    relations = _gram_relations(entries, conjugate=False)
    relations.append(poly_matrix_determinant(entries) - 1)
    return Variety(
        name=f"SO{n}", registry=registry, relations=relations, sampler="cayley-so"
    )


@lru_cache(maxsize=None)
def unitary(k: int) -> Variety:
    if k < 1:
        raise ValueError("matrix size must be positive")
    names = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            names.append(f"a{i}{j}")
            names.append(f"b{i}{j}")
    registry = VarRegistry(names)
    entries = complex_entry_polys(registry, k)
    relations = _gram_relations(entries, conjugate=True)
    return Variety(
        name=f"U{k}", registry=registry, relations=relations, sampler="cayley-u"
    )


@lru_cache(maxsize=None)
def special_unitary(k: int) -> Variety:
    base = unitary(k)
    registry = base.registry
    entries = complex_entry_polys(registry, k)
    det_re, det_im = real_imag_parts(poly_matrix_determinant(entries))
    relations = list(base.relations) + [det_re - 1, det_im]
    return Variety(
        name=f"SU{k}", registry=registry, relations=relations, sampler="cayley-su"
    )


# ---------------------------------------------------------------------------
# Exact point samplers
# ---------------------------------------------------------------------------


def _bounded_fraction(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def sphere_coords_from_parameters(ts: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Rational point on the sphere from parameters via the inverse
    stereographic parametrization (never hits the pole (-1, 0, ..., 0))."""
    s = sum(t * t for t in ts)
    den = 1 + s
    return tuple([Fraction(1 - s, 1) / den] + [2 * t / den for t in ts])


def _cayley_orthogonal(params: Sequence[Fraction], n: int) -> List[List[Fraction]]:
    """(I - A)(I + A)^{-1} for the skew-symmetric matrix built from params."""
    a = [[Fraction(0)] * n for _ in range(n)]
    it = iter(params)
    for i in range(n):
        for j in range(i + 1, n):
            t = next(it)
            a[i][j] = t
            a[j][i] = -t
    eye = linalg.identity(n)
    i_minus = [[eye[i][j] - a[i][j] for j in range(n)] for i in range(n)]
    i_plus = [[eye[i][j] + a[i][j] for j in range(n)] for i in range(n)]
    return linalg.mat_mul(i_minus, linalg.inverse(i_plus))


def _cayley_unitary(rng: random.Random, k: int, height: int) -> List[List[GaussianRational]]:
    """Cayley transform of a random skew-Hermitian Gaussian-rational matrix."""
    h = [[GaussianRational.of(0)] * k for _ in range(k)]
    for i in range(k):
        h[i][i] = GaussianRational(Fraction(0), _bounded_fraction(rng, height))
        for j in range(i + 1, k):
            z = GaussianRational(_bounded_fraction(rng, height), _bounded_fraction(rng, height))
            h[i][j] = z
            h[j][i] = -z.conjugate()
    eye = linalg.identity(k, gaussian=True)
    i_minus = [[eye[i][j] - h[i][j] for j in range(k)] for i in range(k)]
    i_plus = [[eye[i][j] + h[i][j] for j in range(k)] for i in range(k)]
    return linalg.mat_mul(i_minus, linalg.inverse(i_plus))


def _flatten_complex(matrix: Sequence[Sequence[GaussianRational]]) -> List[Fraction]:
    coords: List[Fraction] = []
    for row in matrix:
        for z in row:
            coords.append(z.re)
            coords.append(z.im)
    return coords


def _sample_coords(variety: Variety, rng: random.Random, height: int) -> List[Fraction]:
    kind = variety.sampler
    if kind is None:
        raise NoSamplerError(f"{variety.name} has no sampler")
    if kind == "euclidean":
        return [_bounded_fraction(rng, height) for _ in range(variety.ambient_dim)]
    if kind == "sphere":
        n = variety.ambient_dim - 1
        ts = [_bounded_fraction(rng, height) for _ in range(n)]
        return list(sphere_coords_from_parameters(ts))
    if kind == "product":
        coords: List[Fraction] = []
        for factor in variety.factors:
            child = random.Random(rng.getrandbits(64))
            coords.extend(_sample_coords(factor, child, height))
        return coords
    if kind == "cayley-so":
        n = int(round(variety.ambient_dim ** 0.5))
        params = [_bounded_fraction(rng, height) for _ in range(n * (n - 1) // 2)]
        g = _cayley_orthogonal(params, n)
        return [entry for row in g for entry in row]
    if kind == "cayley-u":
        k = int(round((variety.ambient_dim / 2) ** 0.5))
        return _flatten_complex(_cayley_unitary(rng, k, height))
    if kind == "cayley-su":
        k = int(round((variety.ambient_dim / 2) ** 0.5))
        u = _cayley_unitary(rng, k, height)
        det = linalg.determinant(u)
        for i in range(k):
            u[i][0] = u[i][0] * det.conjugate()
        return _flatten_complex(u)
    raise NoSamplerError(f"unknown sampler kind {kind!r}")


def sample_point(
    variety: Variety, seed: int = 0, *, height: int = DEFAULT_HEIGHT, check: bool = True
) -> PointOnVariety:
    """Deterministic exact rational point on the variety."""
    rng = random.Random(f"regmaps:{variety.name}:{seed}")
    coords = _sample_coords(variety, rng, height)
    return PointOnVariety(variety, coords, check=check)


def sample_points(
    variety: Variety,
    count: int,
    seed: int = 0,
    *,
    height: int = DEFAULT_HEIGHT,
    check: bool = True,
) -> List[PointOnVariety]:
    """``count`` independent samples; sample ``i`` depends only on ``(seed, i)``."""
    return [
        sample_point(variety, seed * 1_000_003 + i, height=height, check=check)
        for i in range(count)
    ]
