"""Finite approximations of LCA models and adjoint pair construction.

An approximation is a map eta from a finite group into a model that covers a
compact window K up to a neighborhood U and is U-approximately additive on
the preimage of K. Builders cover the integer line, the circle, the real
line (lattice embeddings of cyclic groups), quotient-tower sections, and
finite products. Adjoint pairs carry a second approximation phi of the dual
model whose pairing agrees with the finite duality pairing, together with
window/neighborhood descriptors linked through Bohr sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bohr import bohr
from .groups import Group, Subset, element_array, phase_block, subset_from_mask
from .lca import (
    Arc,
    Box,
    Circle,
    IntegerLine,
    Interval,
    LcaModel,
    ProductModel,
    QuotientTower,
    RealLine,
    SetDescriptor,
    SubgroupLevel,
    UnsupportedDescriptorError,
    bohr_closed_form,
    canonical_point,
    desc_contains,
    desc_contains_identity,
    desc_haar_mass,
    desc_is_subset,
    desc_is_symmetric,
    desc_points,
    desc_sum,
    descriptor_grid,
    dual_model,
    eval_pairing_arg,
    wrap_angle,
    wrap_angles,
)
from .reports import ApproxCertificate, BoundReport, CertCheck

TAU = 2.0 * math.pi
_PAIR_CAP = 1 << 24


class ParameterError(ValueError):
    """A builder parameter violates its admissibility constraint."""


@dataclass(frozen=True)
class ApproxMap:
    """Map from a finite group into an LCA model, given by family + params."""

    group: Group
    model: LcaModel
    family: str
    params: tuple
    injective: bool
    strict: bool

    def param(self, name: str):
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


# -- builders -------------------------------------------------------------------


def build_integer_approx(n: int, k: int) -> ApproxMap:
    """Balanced-residue embedding of the cyclic group into the integers."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if not 0 <= k < n / 4:
        raise ParameterError(f"need 0 <= k < n/4, got k={k}, n={n}")
    return ApproxMap(
        group=Group((n,)),
        model=IntegerLine(),
        family="integer",
        params=(("window_radius", k),),
        injective=True,
        strict=n % 2 == 1,
    )


def build_circle_approx(n: int) -> ApproxMap:
    """Root-of-unity homomorphism of the cyclic group onto circle angles."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    return ApproxMap(
        group=Group((n,)),
        model=Circle(),
        family="circle",
        params=(),
        injective=True,
        strict=True,
    )


def build_real_approx(n: int, step: float) -> ApproxMap:
    """Balanced lattice embedding a -> a*step of the cyclic group into R."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if not step > 0:
        raise ParameterError("step must be positive")
    return ApproxMap(
        group=Group((n,)),
        model=RealLine(),
        family="real",
        params=(("step", float(step)),),
        injective=True,
        strict=n % 2 == 1,
    )


def build_tower_approx(model: QuotientTower, base_level: int, unit_level: int) -> ApproxMap:
    """Section of the level quotient: the group (multiples of p^base_level
    modulo p^unit_level) maps to balanced coset representatives."""
    if not 0 <= base_level <= unit_level <= model.depth:
        raise ParameterError("need 0 <= base_level <= unit_level <= depth")
    p = model.prime
    quotient = p ** (unit_level - base_level)
    strict = quotient % 2 == 1 or unit_level == model.depth
    return ApproxMap(
        group=Group((quotient,)),
        model=model,
        family="tower-section",
        params=(("base_level", base_level), ("unit_level", unit_level)),
        injective=True,
        strict=strict,
    )


def product_approx(a: ApproxMap, b: ApproxMap) -> ApproxMap:
    return ApproxMap(
        group=Group(a.group.orders + b.group.orders),
        model=ProductModel((a.model, b.model)),
        family="product",
        params=(("factors", (a, b)),),
        injective=a.injective and b.injective,
        strict=a.strict and b.strict,
    )


def table_approx(group: Group, model: LcaModel, points: tuple) -> ApproxMap:
    """Explicitly tabulated map; points in canonical enumeration order."""
    if len(points) != group.size:
        raise ParameterError("need one point per group element")
    from .lca import point_close, point_neg

    pts = tuple(canonical_point(model, p) for p in points)
    zero = pts[group.index_of(group.zero())]
    strict = point_close(model, zero, _model_zero(model), 1e-12)
    if strict:
        for i in range(group.size):
            a = tuple(int(c) for c in element_array(group)[i])
            if not point_close(model, pts[group.index_of(group.neg(a))], point_neg(model, pts[i])):
                strict = False
                break
    return ApproxMap(
        group=group,
        model=model,
        family="table",
        params=(("points", pts),),
        injective=len(set(pts)) == len(pts),
        strict=strict,
    )


def _model_zero(model: LcaModel):
    from .lca import _zero

    return _zero(model)


# -- evaluation -----------------------------------------------------------------


def eta_point(amap: ApproxMap, a):
    """Image of one group element (any residue representation)."""
    g = amap.group
    a = g.normalize(a)
    if amap.family == "integer":
        return a[0]
    if amap.family == "circle":
        return wrap_angle(TAU * a[0] / g.size)
    if amap.family == "real":
        return a[0] * amap.param("step")
    if amap.family == "tower-section":
        return canonical_point(amap.model, a[0] * amap.model.prime ** amap.param("base_level"))
    if amap.family == "product":
        fa, fb = amap.param("factors")
        ra = fa.group.rank
        return (eta_point(fa, a[:ra]), eta_point(fb, a[ra:]))
    if amap.family == "table":
        return amap.param("points")[g.index_of(a)]
    raise ValueError(f"unknown family {amap.family!r}")


def eta_array(amap: ApproxMap):
    """Images of all group elements in canonical enumeration order."""
    g = amap.group
    if amap.family == "integer":
        return element_array(g)[:, 0].copy()
    if amap.family == "circle":
        return wrap_angles(TAU * element_array(g)[:, 0] / g.size)
    if amap.family == "real":
        return element_array(g)[:, 0] * amap.param("step")
    if amap.family == "tower-section":
        m = amap.model.modulus
        raw = element_array(g)[:, 0] * amap.model.prime ** amap.param("base_level")
        r = np.remainder(raw, m)
        return np.where(2 * r > m, r - m, r)
    if amap.family == "product":
        fa, fb = amap.param("factors")
        xs, ys = eta_array(fa), eta_array(fb)
        return [(xs[i], ys[j]) for i in range(len(xs)) for j in range(len(ys))]
    if amap.family == "table":
        return list(amap.param("points"))
    raise ValueError(f"unknown family {amap.family!r}")


def preimage_of_descriptor(amap: ApproxMap, desc: SetDescriptor) -> Subset:
    g = amap.group
    n = g.size
    bal = element_array(g)[:, 0] if g.rank == 1 else None
    if amap.family == "circle" and isinstance(desc, Arc):
        cut = (desc.half_width + 1e-12) * n / TAU
        return subset_from_mask(g, np.abs(bal) <= cut)
    if amap.family == "integer" and isinstance(desc, Interval):
        return subset_from_mask(g, np.abs(bal) <= int(desc.radius))
    if amap.family == "real" and isinstance(desc, Interval):
        step = amap.param("step")
        cut = desc.radius / step + 1e-12 * (1 + abs(desc.radius / step))
        return subset_from_mask(g, np.abs(bal) <= cut)
    if amap.family == "tower-section" and isinstance(desc, SubgroupLevel):
        shift = max(0, min(desc.level, amap.model.depth) - amap.param("base_level"))
        return subset_from_mask(g, np.remainder(bal, amap.model.prime**shift) == 0)
    if amap.family == "product" and isinstance(desc, Box) and len(desc.parts) == 2:
        fa, fb = amap.param("factors")
        ma = np.zeros(fa.group.size, dtype=bool)
        ma[preimage_of_descriptor(fa, desc.parts[0]).indices] = True
        mb = np.zeros(fb.group.size, dtype=bool)
        mb[preimage_of_descriptor(fb, desc.parts[1]).indices] = True
        return subset_from_mask(g, (ma[:, None] & mb[None, :]).reshape(-1))
    images = eta_array(amap)
    mask = np.fromiter(
        (desc_contains(amap.model, desc, x) for x in images), dtype=bool, count=n
    )
    return subset_from_mask(g, mask)


# -- certification --------------------------------------------------------------


def _coverage_check(amap: ApproxMap, window, nbhd, net_density) -> CertCheck:
    """Axiom: every window point is within the neighborhood of some image."""
    model = amap.model
    if amap.family == "product":
        fa, fb = amap.param("factors")
        ca = _coverage_check(fa, window.parts[0], nbhd.parts[0], net_density)
        cb = _coverage_check(fb, window.parts[1], nbhd.parts[1], net_density)
        ok = ca.passed and cb.passed
        return CertCheck(
            "covering", ok, min(ca.slack, cb.slack), "componentwise",
            None if ok else {"factors": [ca.note, cb.note]},
        )
    if isinstance(model, QuotientTower):
        pts = desc_points(model, window)
        images = eta_array(amap)
        img_set = set(int(v) for v in images)
        missed = []
        for x in pts:
            hit = any(
                desc_contains(model, nbhd, canonical_point(model, x - v)) for v in img_set
            )
            if not hit:
                missed.append(x)
        return CertCheck(
            "covering", not missed, 0.0,
            "every window coset meets the image set",
            None if not missed else {"uncovered": missed[:3]},
        )
    if isinstance(model, IntegerLine):
        # Integer carrier: only the integer points of the window need cover.
        if not isinstance(nbhd, Interval):
            raise UnsupportedDescriptorError("integer covering needs an interval neighborhood")
        pts = np.asarray(sorted(desc_points(model, window)), dtype=np.int64)
        images = np.sort(np.asarray(eta_array(amap), dtype=np.int64))
        pos = np.clip(np.searchsorted(images, pts), 1, len(images) - 1)
        near = np.minimum(np.abs(pts - images[pos - 1]), np.abs(pts - images[pos]))
        worst = float(near.max()) if len(pts) else 0.0
        slack = float(nbhd.radius) - worst
        return CertCheck(
            "covering", slack >= 0.0, slack,
            f"worst integer window point distance {worst:g} vs radius {nbhd.radius:g}",
            None,
        )
    if isinstance(model, (Circle, RealLine)):
        images = np.sort(np.asarray(eta_array(amap), dtype=float))
        if isinstance(nbhd, Arc):
            radius = nbhd.half_width
        elif isinstance(nbhd, Interval):
            radius = float(nbhd.radius)
        else:
            raise UnsupportedDescriptorError("covering needs an arc or interval neighborhood")
        if isinstance(window, Arc):
            w = window.half_width
        elif isinstance(window, Interval):
            w = float(window.radius)
        else:
            raise UnsupportedDescriptorError("covering needs an arc or interval window")
        # Candidate maximizers of the distance-to-image function over the
        # window: midpoints between adjacent images, and the window edges.
        cands = [-w, w]
        mids = (images[:-1] + images[1:]) / 2.0
        cands.extend(float(m) for m in mids if -w <= m <= w)
        if isinstance(model, Circle):
            gap_mid = wrap_angle((images[-1] + images[0] + TAU) / 2.0)
            if -w <= gap_mid <= w:
                cands.append(gap_mid)
        worst = 0.0
        arr = np.asarray(cands, dtype=float)
        for lo in range(0, len(arr), 4096):
            cc = arr[lo : lo + 4096]
            diff = cc[:, None] - images[None, :]
            if isinstance(model, Circle):
                diff = wrap_angles(diff)
            d = np.abs(diff).min(axis=1)
            worst = max(worst, float(d.max()) if len(d) else 0.0)
        # Net evidence on top of the exact extremal candidates.
        grid = descriptor_grid(model, window, net_density)
        garr = np.asarray(grid, dtype=float)
        for lo in range(0, len(garr), 4096):
            cc = garr[lo : lo + 4096]
            diff = cc[:, None] - images[None, :]
            if isinstance(model, Circle):
                diff = wrap_angles(diff)
            worst = max(worst, float(np.abs(diff).min(axis=1).max()))
        slack = radius - worst
        return CertCheck(
            "covering", slack >= -1e-12, slack,
            f"worst window-to-image distance {worst:.6g} vs radius {radius:.6g}",
            None,
        )
    raise UnsupportedDescriptorError(f"no covering rule for {amap.family}")


def _additivity_check(amap: ApproxMap, window, nbhd) -> CertCheck:
    """Axiom: eta(x) + eta(y) - eta(x+y) lies in the neighborhood whenever
    eta(x) and eta(y) lie in the window."""
    model = amap.model
    if amap.family == "circle":
        ok = desc_contains_identity(model, nbhd)
        return CertCheck(
            "near-homomorphism", ok,
            nbhd.half_width if isinstance(nbhd, Arc) else 0.0,
            "angle addition is exact", None,
        )
    if amap.family == "product":
        fa, fb = amap.param("factors")
        ca = _additivity_check(fa, window.parts[0], nbhd.parts[0])
        cb = _additivity_check(fb, window.parts[1], nbhd.parts[1])
        ok = ca.passed and cb.passed
        return CertCheck(
            "near-homomorphism", ok, min(ca.slack, cb.slack), "componentwise",
            None if ok else {"factors": [ca.note, cb.note]},
        )
    g = amap.group
    n = g.size
    pre = preimage_of_descriptor(amap, window)
    idx = pre.indices
    if amap.family in ("integer", "real"):
        bal = element_array(g)[:, 0]
        m_k = int(np.max(np.abs(bal[idx]))) if len(idx) else 0
        if 2 * m_k < n / 2:
            radius = nbhd.half_width if isinstance(nbhd, Arc) else float(nbhd.radius)
            return CertCheck(
                "near-homomorphism", desc_contains_identity(model, nbhd), radius,
                f"2*max|residue| = {2 * m_k} < n/2 = {n / 2:g}: no wraparound", None,
            )
        return _additivity_exhaustive(amap, pre, nbhd)
    if amap.family == "tower-section":
        p, lu = amap.model.prime, amap.param("unit_level")
        dev_ok = desc_contains(model, nbhd, canonical_point(model, p**lu)) and (
            desc_contains_identity(model, nbhd)
        )
        return CertCheck(
            "near-homomorphism", dev_ok, 0.0,
            "deviations are multiples of the unit-level generator", None,
        )
    return _additivity_exhaustive(amap, pre, nbhd)


def _additivity_exhaustive(amap: ApproxMap, pre: Subset, nbhd) -> CertCheck:
    from .lca import point_add, point_neg

    g = amap.group
    idx = pre.indices
    if len(idx) ** 2 > _PAIR_CAP:
        raise ParameterError("window preimage too large for exhaustive additivity check")
    images = eta_array(amap)
    elems = element_array(g)
    model = amap.model
    worst_note, ok = None, True
    for i in idx:
        xi = tuple(int(c) for c in elems[i])
        for j in idx:
            yj = tuple(int(c) for c in elems[j])
            s = g.index_of(g.add(xi, yj))
            dev = point_add(
                model, point_add(model, images[i], images[j]), point_neg(model, images[s])
            )
            if not desc_contains(model, nbhd, dev):
                ok = False
                worst_note = {"x": list(xi), "y": list(yj), "deviation": dev}
                break
        if not ok:
            break
    return CertCheck(
        "near-homomorphism", ok, 0.0, "exhaustive over window preimage pairs", worst_note
    )


def _strictness_check(amap: ApproxMap) -> CertCheck:
    from .lca import point_close, point_neg

    g = amap.group
    model = amap.model
    images = eta_array(amap)
    zero_img = images[g.index_of(g.zero())]
    zero_ok = point_close(model, zero_img, _model_zero(model), 1e-12)
    bad = None
    elems = element_array(g)
    for i in range(g.size):
        a = tuple(int(c) for c in elems[i])
        j = g.index_of(g.neg(a))
        lhs, rhs = images[j], point_neg(model, images[i])
        if not point_close(model, lhs, rhs, 1e-9):
            bad = {"a": list(a), "image_of_neg": lhs, "neg_of_image": rhs}
            break
    ok = zero_ok and bad is None
    return CertCheck("strictness", ok, 0.0, "identity and inverses preserved exactly", bad)


def certify_approximation(
    amap: ApproxMap, window: SetDescriptor, nbhd: SetDescriptor, net_density: float = 256.0
) -> ApproxCertificate:
    """Verify the covering and near-homomorphism axioms plus descriptor
    sanity; strictness is checked when the map claims it."""
    checks = []
    sane = (
        desc_is_symmetric(amap.model, nbhd)
        and desc_contains_identity(amap.model, nbhd)
        and desc_is_symmetric(amap.model, window)
    )
    checks.append(
        CertCheck("descriptor-sanity", sane, 0.0, "symmetric, identity in neighborhood", None)
    )
    checks.append(_coverage_check(amap, window, nbhd, net_density))
    checks.append(_additivity_check(amap, window, nbhd))
    if amap.strict:
        checks.append(_strictness_check(amap))
    return ApproxCertificate(
        subject=f"{amap.family} approximation on {amap.group.orders}",
        checks=tuple(checks),
        params={"window": repr(window), "nbhd": repr(nbhd)},
    )


# -- adjoint pairs ---------------------------------------------------------------


@dataclass(frozen=True)
class AdjointDescriptors:
    window: SetDescriptor
    nbhd: SetDescriptor
    dual_window: SetDescriptor
    dual_nbhd: SetDescriptor
    alpha: float


def make_adjoint_pairs(
    model: LcaModel, nbhd: SetDescriptor, dual_nbhd: SetDescriptor, alpha: float
) -> AdjointDescriptors:
    """Derive the window pair (K, Gamma) from (U, Omega) by Bohr closed forms
    and verify the full compatibility chain."""
    dual = dual_model(model)
    dual_window = bohr_closed_form(model, nbhd, alpha)  # Gamma = Bohr(U)
    window = bohr_closed_form(dual, dual_nbhd, alpha)  # K = Bohr(Omega)
    if not desc_is_subset(model, nbhd, window):
        raise ParameterError("neighborhood does not sit inside the derived window")
    if not desc_is_subset(dual, dual_nbhd, dual_window):
        _raise_incompatible(model, nbhd, dual_nbhd, alpha)
    # Chain: U inside Bohr(Gamma) inside Bohr(Omega) = K.
    bohr_gamma = bohr_closed_form(dual, dual_window, alpha)
    if not desc_is_subset(model, nbhd, bohr_gamma):
        _raise_incompatible(model, nbhd, dual_window, alpha)
    if not desc_is_subset(model, bohr_gamma, window):
        raise ParameterError("Bohr chain is not nested")
    return AdjointDescriptors(window, nbhd, dual_window, dual_nbhd, alpha)


def _raise_incompatible(model, nbhd, dual_nbhd, alpha):
    dual = dual_model(model)
    try:
        xs = descriptor_grid(model, nbhd, 64.0)
        gs = desc_points(dual, dual_nbhd, 1 << 12)
    except Exception:
        xs, gs = [], []
    for x in list(xs)[:256]:
        for gmm in list(gs)[:256]:
            if abs(eval_pairing_arg(model, x, gmm)) > alpha + 1e-12:
                raise ParameterError(
                    f"incompatible pair: point {x!r} and character {gmm!r} "
                    f"pair outside angle {alpha:g}"
                )
    raise ParameterError("neighborhood pair is incompatible at this angle")


@dataclass(frozen=True)
class AdjointPair:
    eta: ApproxMap
    phi: ApproxMap
    window: SetDescriptor
    nbhd: SetDescriptor
    dual_window: SetDescriptor
    dual_nbhd: SetDescriptor
    alpha: float
    eps: float
    witness_nbhd: SetDescriptor
    dual_witness_nbhd: SetDescriptor
    scale: float
    dual_scale: float
    family: str
    exact_pairing: bool


def _finish_pair(eta, phi, desc: AdjointDescriptors, eps, v, ups, family, exact):
    pre = preimage_of_descriptor(eta, desc.nbhd)
    if len(pre) == 0:
        raise ParameterError("neighborhood preimage is empty")
    scale = desc_haar_mass(eta.model, desc.nbhd) / len(pre)
    return AdjointPair(
        eta=eta,
        phi=phi,
        window=desc.window,
        nbhd=desc.nbhd,
        dual_window=desc.dual_window,
        dual_nbhd=desc.dual_nbhd,
        alpha=desc.alpha,
        eps=eps,
        witness_nbhd=v,
        dual_witness_nbhd=ups,
        scale=scale,
        dual_scale=1.0 / (scale * eta.group.size),
        family=family,
        exact_pairing=exact,
    )


def build_adjoint_pair_circle(n: int, alpha: float, r: float, eps: float = 0.0) -> AdjointPair:
    """Circle/integer adjoint pair with the exact pairing identity."""
    if not 0 < alpha <= math.pi / 3 + 1e-12:
        raise ParameterError("need 0 < alpha <= pi/3")
    eps = eps or alpha / 2.0
    if not 0 < eps < alpha:
        raise ParameterError("need 0 < eps < alpha")
    k = int(math.floor(alpha / r + 1e-9))
    if k < 1:
        raise ParameterError("need r <= alpha so the dual window is nonempty")
    if not k < n / 4:
        raise ParameterError(f"need floor(alpha/r) < n/4, got {k} vs {n / 4:g}")
    amax = int(math.floor(r * n / TAU + 1e-9))
    if amax < 1:
        raise ParameterError("neighborhood must contain a nonzero lattice angle")
    r_eff = TAU * amax / n
    s = r_eff * eps / alpha
    if not s > math.pi / n:
        raise ParameterError("eps too small: witness arc cannot cover the circle")
    desc = make_adjoint_pairs(Circle(), Arc(r), Interval(0), alpha)
    eta = build_circle_approx(n)
    phi = build_integer_approx(n, k)
    return _finish_pair(eta, phi, desc, eps, Arc(s), Interval(0), "circle", True)


def build_adjoint_pair_reals(
    n: int, step: float, alpha: float, r: float, rho: float,
    eps: float = 0.0, dual_step: float = 0.0,
) -> AdjointPair:
    """Real-line adjoint pair; by default the dual lattice step is 2pi/(n*step),
    which makes the pairing identity exact."""
    if not 0 < alpha <= math.pi / 3 + 1e-12:
        raise ParameterError("need 0 < alpha <= pi/3")
    eps = eps or alpha / 2.0
    if not 0 < eps < alpha:
        raise ParameterError("need 0 < eps < alpha")
    exact = dual_step == 0.0
    dstep = TAU / (n * step) if exact else dual_step
    if not exact and abs(dstep * n * step - TAU) < 1e-9 * TAU:
        exact = True
    if not r > step / 2:
        raise ParameterError("need r > step/2 for covering")
    if not rho > dstep / 2:
        raise ParameterError("need rho > dual_step/2 for covering")
    if r * rho > alpha + 1e-12:
        raise ParameterError("need r*rho <= alpha for the adjointness chain")
    if not alpha / rho < (n / 4) * step:
        raise ParameterError("window alpha/rho does not fit below n/4 lattice steps")
    if not alpha / r < (n / 4) * dstep:
        raise ParameterError("dual window alpha/r does not fit below n/4 dual steps")
    amax = int(math.floor(r / step + 1e-9))
    gmax = int(math.floor(rho / dstep + 1e-9))
    if amax < 1 or gmax < 1:
        raise ParameterError("neighborhoods must contain a nonzero lattice point")
    s = amax * step * eps / alpha
    sigma = gmax * dstep * eps / alpha
    if not s > step / 2:
        raise ParameterError("eps too small: witness interval cannot cover")
    if not sigma > dstep / 2:
        raise ParameterError("eps too small: dual witness interval cannot cover")
    desc = make_adjoint_pairs(RealLine(), Interval(r), Interval(rho), alpha)
    eta = build_real_approx(n, step)
    phi = build_real_approx(n, dstep)
    return _finish_pair(eta, phi, desc, eps, Interval(s), Interval(sigma), "real", exact)


def build_adjoint_pair_tower(
    model: QuotientTower, base_level: int, unit_level: int, alpha: float, eps: float = 0.0
) -> AdjointPair:
    """Tower adjoint pair; subgroup descriptors make everything exact."""
    if not 0 < alpha <= math.pi / 3 + 1e-12:
        raise ParameterError("need 0 < alpha <= pi/3")
    eps = eps or alpha / 2.0
    if not 0 < eps < alpha:
        raise ParameterError("need 0 < eps < alpha")
    if not 0 <= base_level <= unit_level <= model.depth:
        raise ParameterError("need 0 <= base_level <= unit_level <= depth")
    j = model.depth
    desc = make_adjoint_pairs(
        model, SubgroupLevel(unit_level), SubgroupLevel(j - base_level), alpha
    )
    eta = build_tower_approx(model, base_level, unit_level)
    phi = build_tower_approx(dual_model(model), j - unit_level, j - base_level)
    return _finish_pair(
        eta, phi, desc, eps, SubgroupLevel(unit_level), SubgroupLevel(j - base_level),
        "tower", True,
    )


# -- pairing and adjointness verification ----------------------------------------


def _exact_group_args(group: Group, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Principal arguments of the finite pairing, from exact integer phases."""
    elems = element_array(group)
    ph = phase_block(group, elems[rows], elems[cols])
    n = group.size
    return np.where(2 * ph <= n, ph, ph - n) * (TAU / n)


def pairing_deviation(
    pair: AdjointPair, row_subset: Subset | None = None, col_subset: Subset | None = None
) -> float:
    """Max |pairing argument mismatch| between the model pairing of the two
    images and the finite duality pairing, over the given index sets."""
    g = pair.eta.group
    rows = row_subset.indices if row_subset is not None else np.arange(g.size)
    cols = col_subset.indices if col_subset is not None else np.arange(g.size)
    xs = eta_array(pair.eta)
    gs = eta_array(pair.phi)
    model = pair.eta.model
    worst = 0.0
    if isinstance(model, (Circle, RealLine, IntegerLine)):
        xv = np.asarray(xs, dtype=float)[rows]
        gv = np.asarray(gs, dtype=float)[cols]
        block = max(1, _PAIR_CAP // max(1, len(cols)))
        for lo in range(0, len(rows), block):
            sl = slice(lo, lo + block)
            model_args = xv[sl, None] * gv[None, :]
            exact = _exact_group_args(g, rows[sl], cols)
            worst = max(worst, float(np.abs(wrap_angles(model_args - exact)).max()))
        return worst
    if isinstance(model, QuotientTower):
        m = model.modulus
        xv = np.asarray(xs, dtype=np.int64)[rows]
        gv = np.asarray(gs, dtype=np.int64)[cols]
        block = max(1, _PAIR_CAP // max(1, len(cols)))
        for lo in range(0, len(rows), block):
            sl = slice(lo, lo + block)
            ph = np.remainder(xv[sl, None] * gv[None, :], m) * (TAU / m)
            exact = _exact_group_args(g, rows[sl], cols)
            worst = max(worst, float(np.abs(wrap_angles(ph - exact)).max()))
        return worst
    elems = element_array(g)
    for i in rows:
        for jj in cols:
            model_arg = eval_pairing_arg(model, xs[i], gs[jj])
            exact = float(_exact_group_args(g, np.array([i]), np.array([jj]))[0])
            worst = max(worst, abs(wrap_angle(model_arg - exact)))
    return worst


def verify_strong_adjointness(pair: AdjointPair) -> ApproxCertificate:
    """Check the pairing agreement on the windows, both Bohr inclusions into
    witness preimages, and the window certifications of both maps."""
    checks = []
    a, e = pair.alpha, pair.eps
    ok_range = 0 < e < a <= math.pi / 3 + 1e-12
    checks.append(CertCheck("parameter-range", ok_range, a - e, "0 < eps < alpha <= pi/3", None))
    ok_wit = desc_is_subset(pair.eta.model, pair.witness_nbhd, pair.nbhd) and desc_is_subset(
        pair.phi.model, pair.dual_witness_nbhd, pair.dual_nbhd
    )
    checks.append(CertCheck("witness-containment", ok_wit, 0.0, "V in U, dual V in Omega", None))

    k_pre = preimage_of_descriptor(pair.eta, pair.window)
    g_pre = preimage_of_descriptor(pair.phi, pair.dual_window)
    dev = pairing_deviation(pair, k_pre, g_pre)
    checks.append(
        CertCheck(
            "pairing-window", dev <= e + 1e-12, e - dev,
            f"max pairing mismatch {dev:.3e} over window preimages", None,
        )
    )

    b_u = bohr(preimage_of_descriptor(pair.eta, pair.nbhd), a)
    rhs_desc = bohr_closed_form(pair.eta.model, pair.witness_nbhd, e)
    rhs = preimage_of_descriptor(pair.phi, rhs_desc)
    extra = b_u.members - rhs.members
    checks.append(
        CertCheck(
            "bohr-into-dual-witness", not extra, float(len(rhs) - len(b_u)),
            "finite Bohr set of the neighborhood preimage lands in the dual witness preimage",
            None if not extra else {"outside": list(sorted(extra)[0])},
        )
    )

    b_o = bohr(preimage_of_descriptor(pair.phi, pair.dual_nbhd), a)
    rhs2_desc = bohr_closed_form(pair.phi.model, pair.dual_witness_nbhd, e)
    rhs2 = preimage_of_descriptor(pair.eta, rhs2_desc)
    extra2 = b_o.members - rhs2.members
    checks.append(
        CertCheck(
            "dual-bohr-into-witness", not extra2, float(len(rhs2) - len(b_o)),
            "dual finite Bohr set lands in the witness preimage",
            None if not extra2 else {"outside": list(sorted(extra2)[0])},
        )
    )

    cert1 = certify_approximation(pair.eta, pair.window, pair.witness_nbhd)
    checks.append(
        CertCheck(
            "window-approximation", cert1.certified,
            min((c.slack for c in cert1.checks), default=0.0),
            "eta certified against (window, witness)",
            None if cert1.certified else {"failures": [c.name for c in cert1.failures()]},
        )
    )
    cert2 = certify_approximation(pair.phi, pair.dual_window, pair.dual_witness_nbhd)
    checks.append(
        CertCheck(
            "dual-window-approximation", cert2.certified,
            min((c.slack for c in cert2.checks), default=0.0),
            "phi certified against (dual window, dual witness)",
            None if cert2.certified else {"failures": [c.name for c in cert2.failures()]},
        )
    )
    return ApproxCertificate(
        subject=f"strong adjointness ({pair.family}, n={pair.eta.group.size})",
        checks=tuple(checks),
        params={"alpha": a, "eps": e},
    )


def check_bohr_transfer(pair: AdjointPair, x_desc: SetDescriptor, d_desc: SetDescriptor):
    """Four finite-vs-continuum Bohr set inclusions for intermediate sets X
    (between U and K) and Delta (between Omega and Gamma)."""
    model, dual = pair.eta.model, pair.phi.model
    a, e = pair.alpha, pair.eps
    reports = []
    params = {"alpha": a, "eps": e, "X": repr(x_desc), "Delta": repr(d_desc)}

    def hyp_fail(slug, reason):
        return BoundReport.hypothesis_failed(slug, dict(params), reason)

    ok_x = desc_is_subset(model, pair.nbhd, x_desc) and desc_is_subset(model, x_desc, pair.window)
    ok_d = desc_is_subset(dual, pair.dual_nbhd, d_desc) and desc_is_subset(
        dual, d_desc, pair.dual_window
    )
    if a - e <= 0:
        return [hyp_fail(f"bohr-transfer-{i}", "alpha - eps must be positive") for i in (1, 2, 3, 4)]

    def inclusion_report(slug, small: Subset, big: Subset):
        extra = small.members - big.members
        if not extra:
            return BoundReport.concluded(slug, dict(params), 0.0, 0.0, True)
        return BoundReport.concluded(
            slug, dict(params), float(len(extra)), 0.0, False,
            {"outside": list(sorted(extra)[0])},
        )

    # (1) preimage of the shrunk continuum Bohr set of X sits in the finite Bohr set.
    if not ok_x:
        reports.append(hyp_fail("bohr-transfer-1", "X must sit between U and K"))
    else:
        lhs = preimage_of_descriptor(pair.phi, bohr_closed_form(model, x_desc, a - e))
        rhs = bohr(preimage_of_descriptor(pair.eta, x_desc), a)
        reports.append(inclusion_report("bohr-transfer-1", lhs, rhs))

    # (2) dual direction.
    if not ok_d:
        reports.append(hyp_fail("bohr-transfer-2", "Delta must sit between Omega and Gamma"))
    else:
        lhs = preimage_of_descriptor(pair.eta, bohr_closed_form(dual, d_desc, a - e))
        rhs = bohr(preimage_of_descriptor(pair.phi, d_desc), a)
        reports.append(inclusion_report("bohr-transfer-2", lhs, rhs))

    # (3) thickened by the witness: finite Bohr of X+V sits in the grown
    # continuum Bohr set of X, pulled back through phi.
    if not ok_x:
        reports.append(hyp_fail("bohr-transfer-3", "X must sit between U and K"))
    else:
        try:
            xv = desc_sum(model, x_desc, pair.witness_nbhd)
        except UnsupportedDescriptorError:
            xv = None
        if xv is None or not desc_is_subset(model, xv, pair.window):
            reports.append(hyp_fail("bohr-transfer-3", "X + V must stay inside the window"))
        else:
            try:
                grown = bohr_closed_form(model, x_desc, a + e)
            except UnsupportedDescriptorError:
                grown = None
            if grown is None:
                reports.append(hyp_fail("bohr-transfer-3", "alpha + eps outside closed-form range"))
            else:
                lhs = bohr(preimage_of_descriptor(pair.eta, xv), a - e)
                rhs = preimage_of_descriptor(pair.phi, grown)
                reports.append(inclusion_report("bohr-transfer-3", lhs, rhs))

    # (4) dual thickened direction.
    if not ok_d:
        reports.append(hyp_fail("bohr-transfer-4", "Delta must sit between Omega and Gamma"))
    else:
        try:
            du = desc_sum(dual, d_desc, pair.dual_witness_nbhd)
        except UnsupportedDescriptorError:
            du = None
        if du is None or not desc_is_subset(dual, du, pair.dual_window):
            reports.append(hyp_fail("bohr-transfer-4", "Delta + witness must stay inside"))
        else:
            try:
                grown = bohr_closed_form(dual, d_desc, a + e)
            except UnsupportedDescriptorError:
                grown = None
            if grown is None:
                reports.append(hyp_fail("bohr-transfer-4", "alpha + eps outside closed-form range"))
            else:
                lhs = bohr(preimage_of_descriptor(pair.phi, du), a - e)
                rhs = preimage_of_descriptor(pair.eta, grown)
                reports.append(inclusion_report("bohr-transfer-4", lhs, rhs))
    return reports
