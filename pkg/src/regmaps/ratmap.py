"""Rational maps between varieties, with exact verification operations.

A :class:`RationalMap` holds one numerator polynomial per codomain
coordinate and a single shared denominator, all over the domain's
variable registry.  Maps are normalized on construction:

* every polynomial is reduced to its normal form modulo the domain's
  sphere blocks (when the domain has any),
* the tuple is scaled by the rational content so coefficients are
  coprime integers overall, and
* the sign is fixed so the denominator's leading coefficient is
  positive.

Together with the canonical term order this makes structural equality
(`same numerators, same denominator`) meaningful: two maps constructed
along different routes that agree coefficient-by-coefficient compare
equal.  Semantic equality as functions is checked either symbolically
(cross-multiplied differences reduce to zero modulo the domain blocks)
or by exact evaluation at sampled rational points.

:class:`MatrixMap` refines this with a matrix shape; entries may be
complex, in which case consecutive coordinate pairs hold the real and
imaginary parts of each entry (row-major).

Composition is exact: substituting ``g = (M_1/E, ..., M_m/E)`` into a
coordinate ``N/D`` of ``f`` clears denominators by homogenizing with
``E`` up to the maximal degree ``d`` appearing in ``f``, producing
numerators ``N(M/E) * E^d`` and denominator ``D(M/E) * E^d`` --
polynomials again, no division needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .polynomial import (
    GaussianRational,
    Polynomial,
    normal_form,
)
from .varieties import (
    PointOnVariety,
    PointValidationError,
    Variety,
    sample_point,
    sphere,
    sphere_product,
)
from . import varieties as _varieties


class VarietyMismatchError(ValueError):
    """Raised when domains/codomains of an operation do not line up."""


class ZeroDenominatorError(ValueError):
    """Raised when a map's denominator is identically zero on the domain."""


class ExcludedLocusError(ArithmeticError):
    """Raised when a map is evaluated at a point where its denominator vanishes."""


class CodomainViolationError(ValueError):
    """Raised when an evaluated image fails the codomain's relations."""


class RationalMap:
    """Tuple of numerators over one shared denominator, typed by varieties."""

    __slots__ = ("domain", "codomain", "numerators", "denominator", "excluded", "label")

    def __init__(
        self,
        domain: Variety,
        codomain: Variety,
        numerators: Sequence[Polynomial],
        denominator: Polynomial,
        excluded: str = "",
        label: str = "",
    ):
        if len(numerators) != codomain.ambient_dim:
            raise VarietyMismatchError(
                f"{codomain.name} needs {codomain.ambient_dim} coordinates, "
                f"got {len(numerators)} numerators"
            )
        for p in list(numerators) + [denominator]:
            if p.registry != domain.registry:
                raise VarietyMismatchError(
                    "map polynomials must live over the domain registry"
                )
            if p.has_gaussian_coefficients():
                raise TypeError(
                    "map polynomials must be real; realify complex entries first"
                )
        nums = [normal_form(p, domain.blocks) for p in numerators]
        den = normal_form(denominator, domain.blocks)
        if den.is_zero():
            raise ZeroDenominatorError(
                "denominator is zero modulo the domain relations"
            )
        nums, den = _normalize_content(nums, den)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "numerators", tuple(nums))
        object.__setattr__(self, "denominator", den)
        object.__setattr__(self, "excluded", excluded)
        object.__setattr__(self, "label", label)

    def __setattr__(self, key, value):  # pragma: no cover
        raise AttributeError("RationalMap is immutable")

    # -- evaluation -------------------------------------------------------

    def evaluate_raw(self, coords: Sequence[Fraction]) -> List[Fraction]:
        """Exact image coordinates without variety bookkeeping."""
        den_value = self.denominator.evaluate(coords)
        if den_value == 0:
            raise ExcludedLocusError(
                f"denominator of {self._describe()} vanishes at the given point"
                + (f" (excluded locus: {self.excluded})" if self.excluded else "")
            )
        return [n.evaluate(coords) / den_value for n in self.numerators]

    def evaluate(self, point: PointOnVariety) -> PointOnVariety:
        if point.variety != self.domain:
            raise VarietyMismatchError(
                f"point lives on {point.variety.name}, map expects {self.domain.name}"
            )
        image = self.evaluate_raw(point.coords)
        try:
            return PointOnVariety(self.codomain, image)
        except PointValidationError as exc:
            raise CodomainViolationError(
                f"image of {self._describe()} left {self.codomain.name}: {exc}"
            ) from exc

    def evaluate_float(self, coords: Sequence[float]) -> List[float]:
        den_value = self.denominator.evaluate_float(coords)
        return [n.evaluate_float(coords) / den_value for n in self.numerators]

    # -- structure ----------------------------------------------------------

    def max_degree(self) -> int:
        return max(
            [n.total_degree() for n in self.numerators] + [self.denominator.total_degree()]
        )

    def _describe(self) -> str:
        return self.label or f"map {self.domain.name} -> {self.codomain.name}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.numerators == other.numerators
            and self.denominator == other.denominator
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.numerators, self.denominator))

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}({self._describe()}, "
            f"degree {self.max_degree()})"
        )


class MatrixMap(RationalMap):
    """Rational map whose image coordinates form a matrix.

    For real entries the codomain has ``rows * cols`` coordinates in
    row-major order.  For complex entries each matrix slot occupies two
    consecutive coordinates (real part then imaginary part), so the
    codomain has ``2 * rows * cols`` coordinates.
    """

    __slots__ = ("rows", "cols", "complex_entries")

    def __init__(
        self,
        domain: Variety,
        codomain: Variety,
        numerators: Sequence[Polynomial],
        denominator: Polynomial,
        rows: int,
        cols: int,
        complex_entries: bool = False,
        excluded: str = "",
        label: str = "",
    ):
        expected = rows * cols * (2 if complex_entries else 1)
        if len(numerators) != expected:
            raise VarietyMismatchError(
                f"{rows}x{cols} {'complex' if complex_entries else 'real'} matrix "
                f"needs {expected} coordinates, got {len(numerators)}"
            )
        super().__init__(domain, codomain, numerators, denominator, excluded, label)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "complex_entries", complex_entries)

    def entry(self, i: int, j: int) -> Union[Polynomial, Tuple[Polynomial, Polynomial]]:
        """Numerator of entry (i, j); a (real, imaginary) pair when complex."""
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) out of range")
        if self.complex_entries:
            base = 2 * (i * self.cols + j)
            return (self.numerators[base], self.numerators[base + 1])
        return self.numerators[i * self.cols + j]

    def evaluate_matrix(self, point: PointOnVariety) -> list:
        """Image as a nested list of exact scalars (Gaussian when complex)."""
        values = self.evaluate(point).coords
        out = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                if self.complex_entries:
                    base = 2 * (i * self.cols + j)
                    row.append(GaussianRational(values[base], values[base + 1]))
                else:
                    row.append(values[i * self.cols + j])
            out.append(row)
        return out


def _normalize_content(
    nums: List[Polynomial], den: Polynomial
) -> Tuple[List[Polynomial], Polynomial]:
    # Scale by the (positive) reciprocal of the rational content so that
    # coefficients are integers with overall gcd one.  The sign is never
    # touched: denominators keep the sign the constructor gave them, so a
    # documented positive denominator stays positive.
    coeffs: List[Fraction] = []
    for p in nums + [den]:
        coeffs.extend(p.terms.values())
    num_gcd = 0
    den_lcm = 1
    for c in coeffs:
        num_gcd = gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    scale = Fraction(den_lcm, num_gcd) if num_gcd else Fraction(1)
    if scale != 1:
        nums = [p * scale for p in nums]
        den = den * scale
    return nums, den


# ---------------------------------------------------------------------------
# Substitution and composition
# ---------------------------------------------------------------------------


def substitute_cleared(
    source: Polynomial,
    images: Sequence[Polynomial],
    denominator: Polynomial,
    degree: Optional[int] = None,
) -> Polynomial:
    """Expand ``source(images / denominator) * denominator**degree`` exactly.

    ``degree`` defaults to the total degree of ``source``; passing a larger
    value homogenizes further (used to give every coordinate of a composite
    the same cleared denominator).
    """
    if degree is None:
        degree = source.total_degree()
    if degree < source.total_degree():
        raise ValueError("clearing degree is smaller than the source degree")
    target = denominator.registry
    image_powers: dict = {}
    den_powers: dict = {0: Polynomial.one(target)}

    def den_power(k: int) -> Polynomial:
        if k not in den_powers:
            den_powers[k] = den_power(k - 1) * denominator
        return den_powers[k]

    acc = Polynomial.zero(target)
    for exps, coeff in source.terms.items():
        term = Polynomial.constant(target, coeff)
        mono_degree = 0
        for i, e in enumerate(exps):
            if e == 0:
                continue
            mono_degree += e
            key = (i, e)
            p = image_powers.get(key)
            if p is None:
                p = images[i] ** e
                image_powers[key] = p
            term = term * p
        acc = acc + term * den_power(degree - mono_degree)
    return acc


def compose(outer: RationalMap, inner: RationalMap) -> RationalMap:
    """Exact composite ``outer after inner``."""
    if inner.codomain != outer.domain:
        raise VarietyMismatchError(
            f"cannot compose: inner lands in {inner.codomain.name}, "
            f"outer starts from {outer.domain.name}"
        )
    degree = outer.max_degree()
    nums = [
        substitute_cleared(n, inner.numerators, inner.denominator, degree)
        for n in outer.numerators
    ]
    den = substitute_cleared(outer.denominator, inner.numerators, inner.denominator, degree)
    excluded = "; ".join(s for s in (inner.excluded, outer.excluded) if s)
    label = f"{outer._describe()} . {inner._describe()}"
    if isinstance(outer, MatrixMap):
        return MatrixMap(
            inner.domain,
            outer.codomain,
            nums,
            den,
            rows=outer.rows,
            cols=outer.cols,
            complex_entries=outer.complex_entries,
            excluded=excluded,
            label=label,
        )
    return RationalMap(inner.domain, outer.codomain, nums, den, excluded, label)


def pair_map(first: RationalMap, second: RationalMap) -> RationalMap:
    """Combine two maps with a common domain into one map to the product."""
    if first.domain != second.domain:
        raise VarietyMismatchError("pair components must share a domain")
    n = first.codomain.ambient_dim - 1
    if first.codomain != second.codomain or first.codomain != sphere(n):
        raise VarietyMismatchError("pair components must map to a common sphere")
    target = sphere_product(n)
    nums = [p * second.denominator for p in first.numerators]
    nums += [p * first.denominator for p in second.numerators]
    den = first.denominator * second.denominator
    excluded = "; ".join(s for s in (first.excluded, second.excluded) if s)
    label = f"({first._describe()}, {second._describe()})"
    return RationalMap(first.domain, target, nums, den, excluded, label)


def identity_map(variety: Variety) -> RationalMap:
    nums = [Polynomial.variable(variety.registry, i) for i in range(variety.ambient_dim)]
    return RationalMap(
        variety, variety, nums, Polynomial.one(variety.registry), label=f"id_{variety.name}"
    )


def constant_map(domain: Variety, value: PointOnVariety) -> RationalMap:
    nums = [Polynomial.constant(domain.registry, c) for c in value.coords]
    return RationalMap(
        domain,
        value.variety,
        nums,
        Polynomial.one(domain.registry),
        label=f"const_{value.variety.name}",
    )


# ---------------------------------------------------------------------------
# Verification operations and their reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EqualityReport:
    equal: bool
    method: str  # "symbolic" or "sampling"
    trials: int = 0
    witness: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.equal

    def to_dict(self) -> dict:
        out = {"equal": self.equal, "method": self.method, "trials": self.trials}
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        return out


@dataclass(frozen=True)
class MapsIntoReport:
    ok: bool
    method: str  # "symbolic" or "sampling"
    checked: int  # relations (symbolic) or sample points (sampling)
    failed_relation: Optional[int] = None
    witness: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        out = {"ok": self.ok, "method": self.method, "checked": self.checked}
        if self.failed_relation is not None:
            out["failed_relation"] = self.failed_relation
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        return out


@dataclass(frozen=True)
class DenominatorReport:
    all_positive: bool
    samples: int
    zeros: int = 0
    negatives: int = 0
    witness: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.all_positive

    def to_dict(self) -> dict:
        out = {
            "all_positive": self.all_positive,
            "samples": self.samples,
            "zeros": self.zeros,
            "negatives": self.negatives,
        }
        if self.witness is not None:
            out["witness"] = [str(c) for c in self.witness]
        return out


def _check_same_signature(f: RationalMap, g: RationalMap) -> None:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise VarietyMismatchError(
            f"maps have different signatures: {f.domain.name}->{f.codomain.name} "
            f"vs {g.domain.name}->{g.codomain.name}"
        )


def _cross_difference_values(
    f: RationalMap, g: RationalMap, coords: Sequence[Fraction]
) -> List[Fraction]:
    df = f.denominator.evaluate(coords)
    dg = g.denominator.evaluate(coords)
    return [
        nf.evaluate(coords) * dg - ng.evaluate(coords) * df
        for nf, ng in zip(f.numerators, g.numerators)
    ]


def equal_mod(
    f: RationalMap,
    g: RationalMap,
    trials: int = 20,
    seed: int = 0,
    *,
    height: int = _varieties.DEFAULT_HEIGHT,
) -> EqualityReport:
    """Exact-sampling equality: cross-multiplied coordinate differences must
    vanish at ``trials`` sampled rational points of the common domain."""
    _check_same_signature(f, g)
    done = 0
    attempt = 0
    limit = 8 * max(trials, 1)
    while done < trials:
        if attempt >= limit:
            raise ExcludedLocusError(
                "sampling kept hitting vanishing denominators; "
                "cannot collect enough trial points"
            )
        point = sample_point(f.domain, seed * 1_000_003 + attempt, height=height)
        attempt += 1
        coords = point.coords
        if f.denominator.evaluate(coords) == 0 or g.denominator.evaluate(coords) == 0:
            continue
        diffs = _cross_difference_values(f, g, coords)
        if any(d != 0 for d in diffs):
            return EqualityReport(False, "sampling", trials=done + 1, witness=coords)
        done += 1
    return EqualityReport(True, "sampling", trials=trials)


def equal_symbolic(f: RationalMap, g: RationalMap) -> EqualityReport:
    """Symbolic equality: each cross-multiplied difference reduces to the
    zero normal form modulo the domain's sphere blocks.  Only available
    when the domain's relations are exactly its sphere blocks, which is
    what makes the normal form a complete membership test."""
    _check_same_signature(f, g)
    if not f.domain.block_reducible():
        raise ValueError(
            f"symbolic equality needs a sphere-block domain; "
            f"{f.domain.name} has extra relations"
        )
    for nf, ng in zip(f.numerators, g.numerators):
        diff = nf * g.denominator - ng * f.denominator
        if not normal_form(diff, f.domain.blocks).is_zero():
            return EqualityReport(False, "symbolic")
    return EqualityReport(True, "symbolic")


def maps_into(
    f: RationalMap,
    samples: int = 32,
    seed: int = 0,
    *,
    height: int = _varieties.DEFAULT_HEIGHT,
) -> MapsIntoReport:
    """Check that the image satisfies every codomain relation.

    Symbolic route (complete proof) when the domain is reducible to sphere
    blocks: each codomain relation, cleared of denominators, must have zero
    normal form.  Otherwise falls back to exact evaluation at sampled
    points of the domain.
    """
    if f.domain.block_reducible():
        for index, relation in enumerate(f.codomain.relations):
            lifted = substitute_cleared(relation, f.numerators, f.denominator)
            if not normal_form(lifted, f.domain.blocks).is_zero():
                return MapsIntoReport(
                    False, "symbolic", checked=index + 1, failed_relation=index
                )
        return MapsIntoReport(True, "symbolic", checked=len(f.codomain.relations))
    done = 0
    attempt = 0
    limit = 8 * max(samples, 1)
    while done < samples:
        if attempt >= limit:
            raise ExcludedLocusError(
                "sampling kept hitting vanishing denominators; "
                "cannot collect enough sample points"
            )
        point = sample_point(f.domain, seed * 1_000_003 + attempt, height=height)
        attempt += 1
        try:
            image = f.evaluate_raw(point.coords)
        except ExcludedLocusError:
            continue
        for index, relation in enumerate(f.codomain.relations):
            if relation.evaluate(image) != 0:
                return MapsIntoReport(
                    False,
                    "sampling",
                    checked=done + 1,
                    failed_relation=index,
                    witness=point.coords,
                )
        done += 1
    return MapsIntoReport(True, "sampling", checked=samples)


def denominator_check(
    f: RationalMap,
    samples: int = 100,
    seed: int = 0,
    *,
    height: int = _varieties.DEFAULT_HEIGHT,
) -> DenominatorReport:
    """Evaluate the denominator at sampled points and report any value
    that is zero or negative."""
    zeros = 0
    negatives = 0
    witness = None
    for i in range(samples):
        point = sample_point(f.domain, seed * 1_000_003 + i, height=height)
        value = f.denominator.evaluate(point.coords)
        if value == 0:
            zeros += 1
            witness = witness or point.coords
        elif value < 0:
            negatives += 1
            witness = witness or point.coords
    return DenominatorReport(
        all_positive=(zeros == 0 and negatives == 0),
        samples=samples,
        zeros=zeros,
        negatives=negatives,
        witness=witness,
    )


# ---------------------------------------------------------------------------
# Matrix-map algebra
# ---------------------------------------------------------------------------


def matrix_transpose(m: MatrixMap, codomain: Optional[Variety] = None) -> MatrixMap:
    """Transpose of a real matrix map; conjugate-transpose when complex.

    For complex entries the conjugate transpose is the natural involution
    (entries swap indices, imaginary parts flip sign).
    """
    target = codomain or (m.codomain if m.rows == m.cols else None)
    if target is None:
        raise VarietyMismatchError("transpose of a non-square map needs a codomain")
    nums: List[Polynomial] = []
    for i in range(m.cols):
        for j in range(m.rows):
            if m.complex_entries:
                re, im = m.entry(j, i)  # type: ignore[misc]
                nums.append(re)
                nums.append(-im)
            else:
                nums.append(m.entry(j, i))  # type: ignore[arg-type]
    return MatrixMap(
        m.domain,
        target,
        nums,
        m.denominator,
        rows=m.cols,
        cols=m.rows,
        complex_entries=m.complex_entries,
        excluded=m.excluded,
        label=f"({m._describe()})^T" if not m.complex_entries else f"({m._describe()})^*",
    )


def matrix_multiply(
    a: MatrixMap, b: MatrixMap, codomain: Optional[Variety] = None
) -> MatrixMap:
    """Entrywise-exact product of two matrix maps over a common domain."""
    if a.domain != b.domain:
        raise VarietyMismatchError("matrix factors must share a domain")
    if a.cols != b.rows or a.complex_entries != b.complex_entries:
        raise VarietyMismatchError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols} "
            f"(complex={a.complex_entries}, {b.complex_entries})"
        )
    target = codomain
    if target is None:
        if a.rows == b.cols and a.codomain == b.codomain:
            target = a.codomain
        else:
            raise VarietyMismatchError("product of mismatched shapes needs a codomain")
    registry = a.domain.registry
    nums: List[Polynomial] = []
    for i in range(a.rows):
        for j in range(b.cols):
            if a.complex_entries:
                re_acc = Polynomial.zero(registry)
                im_acc = Polynomial.zero(registry)
                for k in range(a.cols):
                    are, aim = a.entry(i, k)  # type: ignore[misc]
                    bre, bim = b.entry(k, j)  # type: ignore[misc]
                    re_acc = re_acc + are * bre - aim * bim
                    im_acc = im_acc + are * bim + aim * bre
                nums.append(re_acc)
                nums.append(im_acc)
            else:
                acc = Polynomial.zero(registry)
                for k in range(a.cols):
                    acc = acc + a.entry(i, k) * b.entry(k, j)  # type: ignore[operator]
                nums.append(acc)
    return MatrixMap(
        a.domain,
        target,
        nums,
        a.denominator * b.denominator,
        rows=a.rows,
        cols=b.cols,
        complex_entries=a.complex_entries,
        excluded="; ".join(s for s in (a.excluded, b.excluded) if s),
        label=f"{a._describe()} * {b._describe()}",
    )


def identity_matrix_map(group: Variety, size: int, complex_entries: bool = False) -> MatrixMap:
    """The tautological self-map g -> g of a matrix-group variety."""
    nums = [Polynomial.variable(group.registry, i) for i in range(group.ambient_dim)]
    return MatrixMap(
        group,
        group,
        nums,
        Polynomial.one(group.registry),
        rows=size,
        cols=size,
        complex_entries=complex_entries,
        label=f"id_{group.name}",
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

from .polynomial import polynomial_from_obj, polynomial_to_obj  # noqa: E402


def map_to_obj(m: RationalMap) -> dict:
    out = {
        "domain": m.domain.name,
        "codomain": m.codomain.name,
        "numerators": [polynomial_to_obj(p) for p in m.numerators],
        "denominator": polynomial_to_obj(m.denominator),
        "excluded": m.excluded,
    }
    if m.label:
        out["label"] = m.label
    if isinstance(m, MatrixMap):
        out["matrix"] = {
            "rows": m.rows,
            "cols": m.cols,
            "complex_entries": m.complex_entries,
        }
    return out


def map_from_obj(
    obj: dict, resolve: Optional[Callable[[str], Variety]] = None
) -> RationalMap:
    resolve = resolve or variety_by_name
    domain = resolve(obj["domain"])
    codomain = resolve(obj["codomain"])
    nums = [polynomial_from_obj(p, domain.registry) for p in obj["numerators"]]
    den = polynomial_from_obj(obj["denominator"], domain.registry)
    excluded = obj.get("excluded", "")
    label = obj.get("label", "")
    if "matrix" in obj:
        shape = obj["matrix"]
        return MatrixMap(
            domain,
            codomain,
            nums,
            den,
            rows=int(shape["rows"]),
            cols=int(shape["cols"]),
            complex_entries=bool(shape.get("complex_entries", False)),
            excluded=excluded,
            label=label,
        )
    return RationalMap(domain, codomain, nums, den, excluded, label)


def map_to_json(m: RationalMap) -> str:
    return json.dumps(map_to_obj(m), separators=(",", ":"), sort_keys=True)


def map_from_json(text: str, resolve: Optional[Callable[[str], Variety]] = None) -> RationalMap:
    return map_from_obj(json.loads(text), resolve)


def variety_by_name(name: str) -> Variety:
    """Resolve the built-in variety families by their canonical names."""
    import re as _re

    for pattern, build in (
        (r"^S(\d+)xS(\d+)$", None),
        (r"^S(\d+)$", _varieties.sphere),
        (r"^R(\d+)$", _varieties.euclidean),
        (r"^SO(\d+)$", _varieties.special_orthogonal),
        (r"^SU(\d+)$", _varieties.special_unitary),
        (r"^U(\d+)$", _varieties.unitary),
    ):
        match = _re.match(pattern, name)
        if not match:
            continue
        if build is None:
            a, b = int(match.group(1)), int(match.group(2))
            if a != b:
                raise ValueError(f"unsupported product variety {name!r}")
            return sphere_product(a)
        return build(int(match.group(1)))
    raise ValueError(f"unknown variety name {name!r}")
