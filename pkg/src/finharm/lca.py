"""Symbolic models of concrete locally compact abelian targets.

Covered kinds: the unit circle (angles in (-pi, pi], Haar mass 1), the real
line (Lebesgue), the integer line (counting), finite groups (weighted
counting), finite products, and quotient towers Z mod p^depth whose
distinguished open subgroup p^unit_level * Z carries Haar mass 1.

Alongside the models live symbolic set descriptors (arcs, intervals, finite
sets, tower subgroup levels, boxes), closed-form Bohr set computation for the
descriptor families where an exact formula is available, and a small corpus
of test functions with exact closed-form Fourier transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import CapExceededError, Group, Subset, annihilator, as_subset

TAU = 2.0 * math.pi


class UnsupportedDescriptorError(ValueError):
    """No exact closed form is implemented for this descriptor/model pair."""


def wrap_angle(t: float) -> float:
    """Principal angle in (-pi, pi]."""
    r = math.remainder(t, TAU)
    return r if r > -math.pi else r + TAU


def wrap_angles(t: np.ndarray) -> np.ndarray:
    r = np.remainder(np.asarray(t, dtype=float), TAU)
    return np.where(r > math.pi, r - TAU, r)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# -- models --------------------------------------------------------------------


@dataclass(frozen=True)
class Circle:
    """Unit circle as angles in (-pi, pi]; Haar is the probability measure."""


@dataclass(frozen=True)
class RealLine:
    """Real line with Lebesgue measure."""


@dataclass(frozen=True)
class IntegerLine:
    """Integers with counting measure."""


@dataclass(frozen=True)
class FiniteModel:
    """A finite group viewed as an LCA target; Haar = weight * counting."""

    group: Group
    weight: float = 0.0

    def __post_init__(self):
        if self.weight == 0.0:
            object.__setattr__(self, "weight", 1.0 / self.group.size)
        if not self.weight > 0:
            raise ValueError("haar weight must be positive")


@dataclass(frozen=True)
class ProductModel:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 1:
            raise ValueError("product needs at least one factor")


@dataclass(frozen=True)
class QuotientTower:
    """Cyclic quotient Z mod prime^depth with a distinguished open subgroup.

    The subgroup is prime^unit_level * Z (order prime^(depth - unit_level));
    Haar is normalized so that subgroup has mass 1.
    """

    prime: int
    depth: int
    unit_level: int

    def __post_init__(self):
        if not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not 0 <= self.unit_level <= self.depth:
            raise ValueError("unit_level must lie in [0, depth]")

    @property
    def modulus(self) -> int:
        return self.prime**self.depth

    @property
    def point_mass(self) -> float:
        return float(self.prime) ** (self.unit_level - self.depth)


LcaModel = Circle | RealLine | IntegerLine | FiniteModel | ProductModel | QuotientTower


@lru_cache(maxsize=None)
def tower_group(tower: QuotientTower) -> Group:
    return Group((tower.modulus,))


def dual_model(model: LcaModel) -> LcaModel:
    if isinstance(model, Circle):
        return IntegerLine()
    if isinstance(model, IntegerLine):
        return Circle()
    if isinstance(model, RealLine):
        return RealLine()
    if isinstance(model, FiniteModel):
        return FiniteModel(model.group, 1.0 / (model.weight * model.group.size))
    if isinstance(model, QuotientTower):
        return QuotientTower(model.prime, model.depth, model.depth - model.unit_level)
    if isinstance(model, ProductModel):
        return ProductModel(tuple(dual_model(f) for f in model.factors))
    raise TypeError(f"not an LCA model: {model!r}")


def canonical_point(model: LcaModel, x):
    if isinstance(model, Circle):
        return wrap_angle(float(x))
    if isinstance(model, RealLine):
        return float(x)
    if isinstance(model, IntegerLine):
        return int(x)
    if isinstance(model, FiniteModel):
        return model.group.normalize(x)
    if isinstance(model, QuotientTower):
        m = model.modulus
        r = int(x) % m
        return r - m if 2 * r > m else r
    if isinstance(model, ProductModel):
        x = tuple(x)
        if len(x) != len(model.factors):
            raise ValueError("point arity does not match the product")
        return tuple(canonical_point(f, c) for f, c in zip(model.factors, x, strict=True))
    raise TypeError(f"not an LCA model: {model!r}")


def point_add(model: LcaModel, x, y):
    if isinstance(model, (Circle, RealLine, IntegerLine, QuotientTower)):
        return canonical_point(model, (x + y))
    if isinstance(model, FiniteModel):
        return model.group.add(x, y)
    if isinstance(model, ProductModel):
        return tuple(
            point_add(f, a, b) for f, a, b in zip(model.factors, x, y, strict=True)
        )
    raise TypeError(f"not an LCA model: {model!r}")


def point_neg(model: LcaModel, x):
    if isinstance(model, (Circle, RealLine, IntegerLine, QuotientTower)):
        return canonical_point(model, -x)
    if isinstance(model, FiniteModel):
        return model.group.neg(x)
    if isinstance(model, ProductModel):
        return tuple(point_neg(f, a) for f, a in zip(model.factors, x, strict=True))
    raise TypeError(f"not an LCA model: {model!r}")


def point_close(model: LcaModel, x, y, tol: float = 1e-9) -> bool:
    """Equality in the model's own metric; circle distance wraps."""
    if isinstance(model, Circle):
        return abs(wrap_angle(float(x) - float(y))) <= tol
    if isinstance(model, RealLine):
        return abs(float(x) - float(y)) <= tol
    if isinstance(model, (IntegerLine, QuotientTower)):
        return canonical_point(model, x) == canonical_point(model, y)
    if isinstance(model, FiniteModel):
        return model.group.normalize(x) == model.group.normalize(y)
    if isinstance(model, ProductModel):
        return all(
            point_close(f, a, b, tol) for f, a, b in zip(model.factors, x, y, strict=True)
        )
    raise TypeError(f"not an LCA model: {model!r}")


def eval_pairing_arg(model: LcaModel, x, gamma) -> float:
    """Principal argument of the duality pairing of x with gamma."""
    if isinstance(model, Circle):
        return wrap_angle(float(x) * int(gamma))
    if isinstance(model, RealLine):
        return wrap_angle(float(x) * float(gamma))
    if isinstance(model, IntegerLine):
        return wrap_angle(int(x) * float(gamma))
    if isinstance(model, FiniteModel):
        g = model.group
        p = 0
        for xc, gc, o in zip(g.normalize(x), g.normalize(gamma), g.orders, strict=True):
            p = (p + xc * gc * (g.size // o)) % g.size
        return TAU * p / g.size if 2 * p <= g.size else TAU * (p - g.size) / g.size
    if isinstance(model, QuotientTower):
        m = model.modulus
        p = (int(x) * int(gamma)) % m
        return TAU * p / m if 2 * p <= m else TAU * (p - m) / m
    if isinstance(model, ProductModel):
        total = 0.0
        for f, a, c in zip(model.factors, x, gamma, strict=True):
            total += eval_pairing_arg(f, a, c)
        return wrap_angle(total)
    raise TypeError(f"not an LCA model: {model!r}")


def eval_pairing(model: LcaModel, x, gamma) -> complex:
    return complex(np.exp(1j * eval_pairing_arg(model, x, gamma)))


def pairing_column(model: LcaModel, xs, gamma) -> np.ndarray:
    """Vectorized pairing values for many points against one character."""
    if isinstance(model, Circle):
        return np.exp(1j * np.asarray(xs, dtype=float) * int(gamma))
    if isinstance(model, RealLine):
        return np.exp(1j * np.asarray(xs, dtype=float) * float(gamma))
    if isinstance(model, IntegerLine):
        return np.exp(1j * np.asarray(xs, dtype=np.int64) * float(gamma))
    if isinstance(model, QuotientTower):
        m = model.modulus
        ph = (np.asarray(xs, dtype=np.int64) * int(gamma)) % m
        return np.exp(2j * np.pi * ph / m)
    return np.array([eval_pairing(model, x, gamma) for x in xs])


# -- set descriptors ------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """{angle : |angle| <= half_width} on the circle, half_width in [0, pi]."""

    half_width: float

    def __post_init__(self):
        if not 0 <= self.half_width <= math.pi + 1e-12:
            raise ValueError("arc half-width must lie in [0, pi]")


@dataclass(frozen=True)
class Interval:
    """{x : |x| <= radius}; integer radius when used on the integer line."""

    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError("interval radius must be nonnegative")


@dataclass(frozen=True)
class FiniteSet:
    points: frozenset

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))


@dataclass(frozen=True)
class SubgroupLevel:
    """Multiples of prime^level inside a quotient tower."""

    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")


@dataclass(frozen=True)
class Box:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


SetDescriptor = Arc | Interval | FiniteSet | SubgroupLevel | Box

_TOL = 1e-12


def desc_contains(model: LcaModel, desc: SetDescriptor, x) -> bool:
    if isinstance(desc, Arc):
        return abs(wrap_angle(float(x))) <= desc.half_width + _TOL
    if isinstance(desc, Interval):
        tol = _TOL * (1.0 + abs(desc.radius))
        return abs(x) <= desc.radius + tol
    if isinstance(desc, FiniteSet):
        return canonical_point(model, x) in desc.points
    if isinstance(desc, SubgroupLevel):
        if not isinstance(model, QuotientTower):
            raise UnsupportedDescriptorError("subgroup levels only live on towers")
        return int(x) % (model.prime**desc.level) == 0
    if isinstance(desc, Box):
        return all(
            desc_contains(f, d, c)
            for f, d, c in zip(model.factors, desc.parts, x, strict=True)
        )
    raise TypeError(f"not a descriptor: {desc!r}")


def desc_haar_mass(model: LcaModel, desc: SetDescriptor) -> float:
    if isinstance(model, Circle) and isinstance(desc, Arc):
        return min(desc.half_width, math.pi) / math.pi
    if isinstance(model, RealLine) and isinstance(desc, Interval):
        return 2.0 * desc.radius
    if isinstance(model, IntegerLine):
        if isinstance(desc, Interval):
            return 2.0 * int(desc.radius) + 1.0
        if isinstance(desc, FiniteSet):
            return float(len(desc.points))
    if isinstance(model, FiniteModel) and isinstance(desc, FiniteSet):
        return len(desc.points) * model.weight
    if isinstance(model, QuotientTower):
        if isinstance(desc, SubgroupLevel):
            lvl = min(desc.level, model.depth)
            return float(model.prime) ** (model.depth - lvl) * model.point_mass
        if isinstance(desc, FiniteSet):
            return len(desc.points) * model.point_mass
    if isinstance(model, ProductModel) and isinstance(desc, Box):
        out = 1.0
        for f, d in zip(model.factors, desc.parts, strict=True):
            out *= desc_haar_mass(f, d)
        return out
    raise UnsupportedDescriptorError(f"no mass formula for {desc!r} on {model!r}")


def desc_points(model: LcaModel, desc: SetDescriptor, cap: int = 1 << 20) -> list:
    """Enumerate a finite descriptor; raises when the set is not finite."""
    if isinstance(desc, FiniteSet):
        return sorted(desc.points)
    if isinstance(model, IntegerLine) and isinstance(desc, Interval):
        k = int(desc.radius)
        if 2 * k + 1 > cap:
            raise CapExceededError("integer interval too large to enumerate")
        return list(range(-k, k + 1))
    if isinstance(model, QuotientTower) and isinstance(desc, SubgroupLevel):
        lvl = min(desc.level, model.depth)
        step = model.prime**lvl
        count = model.modulus // step
        if count > cap:
            raise CapExceededError("tower level too large to enumerate")
        return sorted(canonical_point(model, step * t) for t in range(count))
    if isinstance(model, ProductModel) and isinstance(desc, Box):
        factor_points = [
            desc_points(f, d, cap) for f, d in zip(model.factors, desc.parts, strict=True)
        ]
        total = 1
        for pts in factor_points:
            total *= len(pts)
        if total > cap:
            raise CapExceededError("box too large to enumerate")
        out = [()]
        for pts in factor_points:
            out = [prefix + (p,) for prefix in out for p in pts]
        return out
    raise UnsupportedDescriptorError(f"{desc!r} on {model!r} is not finitely enumerable")


def desc_is_symmetric(model: LcaModel, desc: SetDescriptor) -> bool:
    if isinstance(desc, (Arc, Interval, SubgroupLevel)):
        return True
    if isinstance(desc, FiniteSet):
        return all(point_neg(model, p) in desc.points for p in desc.points)
    if isinstance(desc, Box):
        return all(
            desc_is_symmetric(f, d) for f, d in zip(model.factors, desc.parts, strict=True)
        )
    raise TypeError(f"not a descriptor: {desc!r}")


def desc_contains_identity(model: LcaModel, desc: SetDescriptor) -> bool:
    if isinstance(desc, (Arc, Interval, SubgroupLevel)):
        return True
    if isinstance(desc, FiniteSet):
        return _zero(model) in desc.points
    if isinstance(desc, Box):
        return all(
            desc_contains_identity(f, d)
            for f, d in zip(model.factors, desc.parts, strict=True)
        )
    raise TypeError(f"not a descriptor: {desc!r}")


def _zero(model: LcaModel):
    if isinstance(model, Circle):
        return 0.0
    if isinstance(model, RealLine):
        return 0.0
    if isinstance(model, (IntegerLine, QuotientTower)):
        return 0
    if isinstance(model, FiniteModel):
        return model.group.zero
    if isinstance(model, ProductModel):
        return tuple(_zero(f) for f in model.factors)
    raise TypeError(f"not an LCA model: {model!r}")


def desc_sum(model: LcaModel, a: SetDescriptor, b: SetDescriptor) -> SetDescriptor:
    """Pointwise sumset of two descriptors, within the closed-form families."""
    if isinstance(a, FiniteSet) and _is_identity_only(model, a):
        return b
    if isinstance(b, FiniteSet) and _is_identity_only(model, b):
        return a
    if isinstance(a, Arc) and isinstance(b, Arc):
        return Arc(min(a.half_width + b.half_width, math.pi))
    if isinstance(a, Interval) and isinstance(b, Interval):
        r = a.radius + b.radius
        return Interval(int(r) if isinstance(model, IntegerLine) else r)
    if isinstance(a, SubgroupLevel) and isinstance(b, SubgroupLevel):
        return SubgroupLevel(min(a.level, b.level))
    if isinstance(a, FiniteSet) and isinstance(b, FiniteSet):
        return FiniteSet(
            frozenset(point_add(model, p, q) for p in a.points for q in b.points)
        )
    if isinstance(a, Box) and isinstance(b, Box):
        return Box(
            tuple(
                desc_sum(f, p, q)
                for f, p, q in zip(model.factors, a.parts, b.parts, strict=True)
            )
        )
    raise UnsupportedDescriptorError(f"no sum rule for {a!r} + {b!r}")


def _is_identity_only(model: LcaModel, desc: SetDescriptor) -> bool:
    return isinstance(desc, FiniteSet) and desc.points == frozenset([_zero(model)])


def desc_is_subset(model: LcaModel, a: SetDescriptor, b: SetDescriptor) -> bool:
    if isinstance(a, Arc) and isinstance(b, Arc):
        return a.half_width <= b.half_width + _TOL
    if isinstance(a, Interval) and isinstance(b, Interval):
        return a.radius <= b.radius + _TOL * (1 + abs(b.radius))
    if isinstance(a, SubgroupLevel) and isinstance(b, SubgroupLevel):
        return a.level >= b.level
    if isinstance(a, Interval) and isinstance(b, Arc):
        return a.radius <= b.half_width + _TOL
    if isinstance(a, Arc) and isinstance(b, Interval):
        return a.half_width <= b.radius + _TOL
    if isinstance(a, Box) and isinstance(b, Box):
        return all(
            desc_is_subset(f, p, q)
            for f, p, q in zip(model.factors, a.parts, b.parts, strict=True)
        )
    if isinstance(a, FiniteSet):
        return all(desc_contains(model, b, p) for p in a.points)
    try:
        pts = desc_points(model, a)
    except UnsupportedDescriptorError:
        raise UnsupportedDescriptorError(f"no subset rule for {a!r} vs {b!r}") from None
    return all(desc_contains(model, b, p) for p in pts)


# -- closed-form Bohr sets -------------------------------------------------------

# Exactness ranges: on connected models (circle arcs, real intervals) the
# pairing argument sweeps an interval, so the formula is exact for alpha < pi.
# On discrete sources (integer intervals, subgroups, tower levels) arguments
# walk in steps; a step of size <= alpha cannot jump over the excluded zone
# (alpha, 2pi - alpha) as long as 2*alpha < 2pi - alpha, so exactness needs
# alpha < 2pi/3 there.

WALK_LIMIT = 2.0 * math.pi / 3.0


def bohr_closed_form(model: LcaModel, desc: SetDescriptor, alpha: float) -> SetDescriptor:
    """Exact symbolic Bohr set of the descriptor, on the dual model."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if isinstance(model, Circle) and isinstance(desc, Arc):
        if desc.half_width <= 0:
            raise UnsupportedDescriptorError("Bohr of a degenerate arc is unbounded")
        if alpha >= math.pi:
            raise UnsupportedDescriptorError("alpha >= pi makes the Bohr set unbounded")
        return Interval(int(math.floor(alpha / desc.half_width + 1e-9)))
    if isinstance(model, RealLine) and isinstance(desc, Interval):
        if desc.radius <= 0:
            raise UnsupportedDescriptorError("Bohr of a degenerate interval is unbounded")
        if alpha >= math.pi:
            raise UnsupportedDescriptorError("alpha >= pi makes the Bohr set unbounded")
        return Interval(alpha / desc.radius)
    if isinstance(model, IntegerLine) and isinstance(desc, (Interval, FiniteSet)):
        if isinstance(desc, FiniteSet):
            if desc.points <= {0}:
                return Arc(math.pi)
            raise UnsupportedDescriptorError("general integer sets have no closed form")
        k = int(desc.radius)
        if k == 0:
            return Arc(math.pi)
        if alpha >= WALK_LIMIT:
            raise UnsupportedDescriptorError("need alpha < 2pi/3 on discrete sources")
        return Arc(alpha / k)
    if isinstance(model, QuotientTower) and isinstance(desc, SubgroupLevel):
        if alpha >= WALK_LIMIT:
            raise UnsupportedDescriptorError("need alpha < 2pi/3 on discrete sources")
        lvl = min(desc.level, model.depth)
        return SubgroupLevel(model.depth - lvl)
    if isinstance(model, FiniteModel) and isinstance(desc, FiniteSet):
        if alpha >= WALK_LIMIT:
            raise UnsupportedDescriptorError("need alpha < 2pi/3 on discrete sources")
        sub = Subset.of(model.group, desc.points)
        if len(sub) and not sub.is_subgroup():
            raise UnsupportedDescriptorError("finite-set Bohr needs a subgroup")
        ann = annihilator(model.group, sub)
        return FiniteSet(frozenset(ann.members))
    if isinstance(model, ProductModel) and isinstance(desc, Box):
        moving = 0
        parts = []
        for f, d in zip(model.factors, desc.parts, strict=True):
            if isinstance(d, (Arc, Interval)) and not _is_degenerate(f, d):
                moving += 1
            parts.append(bohr_closed_form(f, d, alpha))
        if moving > 1:
            raise UnsupportedDescriptorError(
                "box Bohr is exact only with at most one non-subgroup factor"
            )
        return Box(tuple(parts))
    raise UnsupportedDescriptorError(f"no closed form for {desc!r} on {model!r}")


def _is_degenerate(model: LcaModel, desc: SetDescriptor) -> bool:
    if isinstance(desc, Arc):
        return desc.half_width <= 0
    if isinstance(desc, Interval):
        return desc.radius <= 0 if isinstance(model, RealLine) else int(desc.radius) == 0
    return False


def descriptor_grid(model: LcaModel, desc: SetDescriptor, density: float = 64.0):
    """Deterministic sample grid of a descriptor (list or 1-D array)."""
    if isinstance(desc, Arc) or (
        isinstance(desc, Interval) and isinstance(model, (RealLine,))
    ):
        r = desc.half_width if isinstance(desc, Arc) else desc.radius
        m = max(3, 2 * int(math.ceil(r * density)) + 1)
        if m > 1 << 22:
            raise CapExceededError("grid too dense")
        return np.linspace(-r, r, m)
    try:
        return desc_points(model, desc)
    except UnsupportedDescriptorError:
        raise UnsupportedDescriptorError(f"no grid rule for {desc!r} on {model!r}") from None


# -- reference functions with exact transforms ----------------------------------


@dataclass(frozen=True)
class Gaussian:
    """amplitude * exp(-x^2 / (2 sigma^2)) on the real line."""

    sigma: float
    amplitude: complex = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class TrigPoly:
    """Finite Fourier sum on the circle: sum of coeff * exp(i freq theta)."""

    coeffs: tuple  # ((freq, coeff), ...), canonicalized sorted by freq

    def __post_init__(self):
        canon = tuple(
            sorted((int(k), complex(c)) for k, c in self.coeffs if complex(c) != 0)
        )
        if len({k for k, _ in canon}) != len(canon):
            raise ValueError("duplicate frequencies")
        object.__setattr__(self, "coeffs", canon)


@dataclass(frozen=True)
class IndicatorInterval:
    """amplitude * indicator of [-radius, radius] on the real line."""

    radius: float
    amplitude: complex = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class SincKernel:
    """amplitude * 2 sin(radius x)/x on the real line."""

    radius: float
    amplitude: complex = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class FiniteSeq:
    """Finitely supported function; points are integers or group tuples."""

    entries: tuple  # ((point, value), ...)

    def __post_init__(self):
        canon = tuple(sorted(((p, complex(v)) for p, v in self.entries if complex(v) != 0)))
        if len({p for p, _ in canon}) != len(canon):
            raise ValueError("duplicate points")
        object.__setattr__(self, "entries", canon)


@dataclass(frozen=True)
class LocallyConstant:
    """values[x mod modulus] on a quotient tower (modulus divides the tower modulus)."""

    modulus: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        if self.modulus < 1 or len(self.values) != self.modulus:
            raise ValueError("need exactly modulus values")


RefFunction = Gaussian | TrigPoly | IndicatorInterval | SincKernel | FiniteSeq | LocallyConstant


def eval_ref(f: RefFunction, x) -> complex:
    if isinstance(f, Gaussian):
        return f.amplitude * math.exp(-float(x) ** 2 / (2.0 * f.sigma**2))
    if isinstance(f, TrigPoly):
        return complex(sum(c * np.exp(1j * k * float(x)) for k, c in f.coeffs))
    if isinstance(f, IndicatorInterval):
        return f.amplitude if abs(x) <= f.radius + _TOL * (1 + f.radius) else 0.0
    if isinstance(f, SincKernel):
        x = float(x)
        if abs(x) < 1e-30:
            return f.amplitude * 2.0 * f.radius
        return f.amplitude * 2.0 * math.sin(f.radius * x) / x
    if isinstance(f, FiniteSeq):
        for p, v in f.entries:
            if p == x:
                return v
        return 0.0
    if isinstance(f, LocallyConstant):
        return f.values[int(x) % f.modulus]
    raise TypeError(f"not a reference function: {f!r}")


def eval_ref_many(f: RefFunction, xs) -> np.ndarray:
    if isinstance(f, Gaussian):
        xs = np.asarray(xs, dtype=float)
        return f.amplitude * np.exp(-(xs**2) / (2.0 * f.sigma**2))
    if isinstance(f, TrigPoly):
        xs = np.asarray(xs, dtype=float)
        out = np.zeros(xs.shape, dtype=complex)
        for k, c in f.coeffs:
            out += c * np.exp(1j * k * xs)
        return out
    if isinstance(f, IndicatorInterval):
        xs = np.asarray(xs, dtype=float)
        return np.where(np.abs(xs) <= f.radius + _TOL * (1 + f.radius), f.amplitude, 0.0)
    if isinstance(f, SincKernel):
        xs = np.asarray(xs, dtype=float)
        out = np.full(xs.shape, f.amplitude * 2.0 * f.radius, dtype=complex)
        nz = np.abs(xs) >= 1e-30
        out[nz] = f.amplitude * 2.0 * np.sin(f.radius * xs[nz]) / xs[nz]
        return out
    if isinstance(f, LocallyConstant):
        idx = np.remainder(np.asarray(xs, dtype=np.int64), f.modulus)
        return np.asarray(f.values, dtype=complex)[idx]
    return np.array([eval_ref(f, x) for x in xs])


def reference_transform(model: LcaModel, f: RefFunction) -> tuple[LcaModel, RefFunction]:
    """Exact Fourier transform of the reference function, on the dual model."""
    if isinstance(model, RealLine):
        if isinstance(f, Gaussian):
            amp = f.amplitude * f.sigma * math.sqrt(TAU)
            return RealLine(), Gaussian(1.0 / f.sigma, amp)
        if isinstance(f, IndicatorInterval):
            return RealLine(), SincKernel(f.radius, f.amplitude)
        if isinstance(f, SincKernel):
            return RealLine(), IndicatorInterval(f.radius, TAU * f.amplitude)
    if isinstance(model, Circle) and isinstance(f, TrigPoly):
        return IntegerLine(), FiniteSeq(f.coeffs)
    if isinstance(model, IntegerLine) and isinstance(f, FiniteSeq):
        return Circle(), TrigPoly(tuple((-p, v) for p, v in f.entries))
    if isinstance(model, QuotientTower) and isinstance(f, LocallyConstant):
        if model.modulus % f.modulus != 0:
            raise UnsupportedDescriptorError("modulus must divide the tower modulus")
        from .harmonic import Signal, dft  # deferred: harmonic does not import lca

        g = tower_group(model)
        table = np.asarray(f.values, dtype=complex)[
            np.arange(model.modulus) % f.modulus
        ]
        spec = dft(Signal(g, table, model.point_mass), mode="reference")
        return dual_model(model), LocallyConstant(model.modulus, tuple(spec.values))
    raise UnsupportedDescriptorError(f"no exact transform for {f!r} on {model!r}")


def ref_l1_norm(model: LcaModel, f: RefFunction, quadrature: int = 1 << 15) -> float:
    """L1 norm w.r.t. the model's Haar; quadrature only for trig polynomials."""
    if isinstance(model, RealLine) and isinstance(f, Gaussian):
        return abs(f.amplitude) * f.sigma * math.sqrt(TAU)
    if isinstance(model, RealLine) and isinstance(f, IndicatorInterval):
        return abs(f.amplitude) * 2.0 * f.radius
    if isinstance(model, Circle) and isinstance(f, TrigPoly):
        theta = (np.arange(quadrature) + 0.5) * (TAU / quadrature) - math.pi
        return float(np.mean(np.abs(eval_ref_many(f, theta))))
    if isinstance(model, IntegerLine) and isinstance(f, FiniteSeq):
        return float(sum(abs(v) for _, v in f.entries))
    if isinstance(model, QuotientTower) and isinstance(f, LocallyConstant):
        per_coset = model.modulus // f.modulus
        return float(sum(abs(v) for v in f.values)) * per_coset * model.point_mass
    raise UnsupportedDescriptorError(f"no L1 rule for {f!r} on {model!r}")


def lipschitz_bound(model: LcaModel, f: RefFunction) -> float:
    """An upper bound on |f(x) - f(y)| / dist(x, y)."""
    if isinstance(f, Gaussian):
        return abs(f.amplitude) / f.sigma * math.exp(-0.5)
    if isinstance(f, TrigPoly):
        return float(sum(abs(k) * abs(c) for k, c in f.coeffs))
    if isinstance(f, IndicatorInterval):
        return math.inf
    raise UnsupportedDescriptorError(f"no Lipschitz rule for {f!r}")
