"""Liftings of measures and functions to finite groups, the modified Fourier
transform, and end-to-end approximation of classical transforms by the DFT.

A weak (U, delta) lifting matches neighborhood averages of a measure against
lattice averages of a finite signal, up to delta, off an exceptional set of
mass at most delta. The modified transform of a signal against a model
character, with the canonical scaling d = m(U) / |preimage of U|, then tracks
the measure's transform; in the exact-pairing regimes it collapses to the DFT
on the nose, which is what makes DFT values checkable approximations of
classical Fourier transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import ApproxMap, ParameterError, eta_array, preimage_of_descriptor
from .bohr import bohr, spec_set
from .harmonic import Signal, dft, norm, shift
from .lca import (
    Arc,
    Box,
    Circle,
    FiniteSeq,
    Gaussian,
    IndicatorInterval,
    IntegerLine,
    Interval,
    LcaModel,
    LocallyConstant,
    ProductModel,
    QuotientTower,
    RealLine,
    RefFunction,
    SetDescriptor,
    SubgroupLevel,
    TrigPoly,
    UnsupportedDescriptorError,
    bohr_closed_form,
    canonical_point,
    desc_contains,
    desc_haar_mass,
    descriptor_grid,
    dual_model,
    eval_pairing_arg,
    eval_ref,
    eval_ref_many,
    pairing_column,
    point_add,
    point_neg,
    ref_l1_norm,
    reference_transform,
    wrap_angles,
)
from .reports import BoundReport, LiftingReport, TransformErrorReport, TransformRow

TAU = 2.0 * math.pi
_TOL = 1e-12


# -- measures -------------------------------------------------------------------


@dataclass(frozen=True)
class MeasureModel:
    """Finite complex measure: point atoms plus a density against Haar."""

    model: LcaModel
    atoms: tuple = ()
    density: RefFunction | None = None

    def __post_init__(self):
        object.__setattr__(
            self,
            "atoms",
            tuple((canonical_point(self.model, p), complex(w)) for p, w in self.atoms),
        )


def total_variation(mu: MeasureModel, quadrature: int = 1 << 15) -> float:
    tv = float(sum(abs(w) for _, w in mu.atoms))
    if mu.density is not None:
        tv += ref_l1_norm(mu.model, mu.density, quadrature)
    return tv


def measure_transform(mu: MeasureModel, chi) -> complex:
    """Fourier-Stieltjes transform at a dual-model point."""
    out = 0j
    for pt, w in mu.atoms:
        out += w * np.exp(-1j * eval_pairing_arg(mu.model, pt, chi))
    if mu.density is not None:
        _, fhat = reference_transform(mu.model, mu.density)
        out += eval_ref(fhat, chi)
    return complex(out)


def _density_ball_integral(model, dens, x, nbhd) -> complex:
    """Exact integral of the density over x + nbhd."""
    if isinstance(model, Circle) and isinstance(dens, TrigPoly) and isinstance(nbhd, Arc):
        r = nbhd.half_width
        theta = float(x)
        out = 0j
        for k, c in dens.coeffs:
            if k == 0:
                out += c * (r / math.pi)
            else:
                out += c * np.exp(1j * k * theta) * math.sin(k * r) / (math.pi * k)
        return complex(out)
    if isinstance(model, RealLine) and isinstance(nbhd, Interval):
        a, b = float(x) - nbhd.radius, float(x) + nbhd.radius
        if isinstance(dens, Gaussian):
            s = dens.sigma
            root2 = math.sqrt(2.0)
            mass = s * math.sqrt(math.pi / 2.0) * (math.erf(b / (s * root2)) - math.erf(a / (s * root2)))
            return complex(dens.amplitude * mass)
        if isinstance(dens, IndicatorInterval):
            lo, hi = max(a, -dens.radius), min(b, dens.radius)
            return complex(dens.amplitude * max(0.0, hi - lo))
    if isinstance(model, IntegerLine) and isinstance(dens, FiniteSeq) and isinstance(nbhd, Interval):
        c = int(x)
        k = int(nbhd.radius)
        return complex(sum(v for p, v in dens.entries if abs(p - c) <= k))
    if (
        isinstance(model, QuotientTower)
        and isinstance(dens, LocallyConstant)
        and isinstance(nbhd, SubgroupLevel)
    ):
        step = model.prime ** min(nbhd.level, model.depth)
        count = model.modulus // step
        base = canonical_point(model, x)
        total = 0j
        for i in range(count):
            total += eval_ref(dens, canonical_point(model, base + i * step))
        return complex(total * model.point_mass)
    raise UnsupportedDescriptorError(
        f"no ball integral for {type(dens).__name__} over {type(nbhd).__name__}"
    )


def measure_of_ball(mu: MeasureModel, x, nbhd: SetDescriptor) -> complex:
    """mu(x + nbhd), atoms by membership and density in closed form."""
    model = mu.model
    xc = canonical_point(model, x)
    out = 0j
    for pt, w in mu.atoms:
        if desc_contains(model, nbhd, point_add(model, pt, point_neg(model, xc))):
            out += w
    if mu.density is not None:
        out += _density_ball_integral(model, mu.density, xc, nbhd)
    return complex(out)


# -- liftings -------------------------------------------------------------------


def scaling_coefficient(eta: ApproxMap, nbhd: SetDescriptor) -> float:
    """d = m(U) / |preimage of U|."""
    cnt = len(preimage_of_descriptor(eta, nbhd))
    if cnt == 0:
        raise ParameterError("neighborhood preimage is empty")
    return desc_haar_mass(eta.model, nbhd) / cnt


def sample_lifting(f_cont: RefFunction, eta: ApproxMap, scale: float = 0.0) -> Signal:
    """The composition f_cont after eta, as a signal."""
    values = eval_ref_many(f_cont, eta_array(eta))
    return Signal(eta.group, values, scale if scale else 1.0 / eta.group.size)


def ball_preimage_mask(eta: ApproxMap, nbhd: SetDescriptor, x) -> np.ndarray:
    """Boolean mask over the group of eta(a) in x + nbhd."""
    model = eta.model
    images = eta_array(eta)
    if isinstance(model, Circle) and isinstance(nbhd, Arc):
        return np.abs(wrap_angles(np.asarray(images) - float(x))) <= nbhd.half_width + _TOL
    if isinstance(model, RealLine) and isinstance(nbhd, Interval):
        r = nbhd.radius
        return np.abs(np.asarray(images) - float(x)) <= r + _TOL * max(1.0, abs(r))
    if isinstance(model, IntegerLine) and isinstance(nbhd, Interval):
        return np.abs(np.asarray(images) - int(x)) <= int(nbhd.radius)
    if isinstance(model, QuotientTower) and isinstance(nbhd, SubgroupLevel):
        step = model.prime ** min(nbhd.level, model.depth)
        return np.remainder(np.asarray(images) - canonical_point(model, x), step) == 0
    if isinstance(model, ProductModel) and isinstance(nbhd, Box):
        fa, fb = eta.param("factors")
        ma = ball_preimage_mask(fa, nbhd.parts[0], x[0])
        mb = ball_preimage_mask(fb, nbhd.parts[1], x[1])
        return (ma[:, None] & mb[None, :]).reshape(-1)
    xc = canonical_point(model, x)
    return np.fromiter(
        (desc_contains(model, nbhd, point_add(model, v, point_neg(model, xc))) for v in images),
        dtype=bool,
        count=eta.group.size,
    )


def is_weak_lifting(
    f: Signal,
    mu: MeasureModel,
    eta: ApproxMap,
    nbhd: SetDescriptor,
    window: SetDescriptor,
    delta: float,
    grid_density: float = 64.0,
) -> LiftingReport:
    """Grid check of the averaged-lifting inequality off an exceptional set."""
    model = eta.model
    m_u = desc_haar_mass(model, nbhd)
    cnt_u = len(preimage_of_descriptor(eta, nbhd))
    if cnt_u == 0:
        raise ParameterError("neighborhood preimage is empty")
    grid = list(descriptor_grid(model, window, grid_density))
    devs = np.empty(len(grid))
    for i, x in enumerate(grid):
        lhs = measure_of_ball(mu, x, nbhd) / m_u
        rhs = complex(f.values[ball_preimage_mask(eta, nbhd, x)].sum()) / cnt_u
        devs[i] = abs(lhs - rhs)
    worst = float(devs.max()) if len(grid) else 0.0
    bad = devs > delta + _TOL * max(1.0, delta if math.isfinite(delta) else 1.0)
    frac = float(np.count_nonzero(bad)) / max(1, len(grid))
    exc_mass = frac * desc_haar_mass(model, window)
    passed = exc_mass <= delta + _TOL
    witness = None
    if not passed:
        i = int(np.argmax(devs))
        witness = {"x": grid[i], "deviation": float(devs[i])}
    return LiftingReport(
        mode="weak-lifting",
        delta=delta,
        worst_deviation=worst,
        exceptional_mass=exc_mass,
        grid={"points": len(grid), "density": grid_density, "window": repr(window)},
        passed=passed,
        witness=witness,
    )


def is_approximation(
    f: Signal,
    f_cont: RefFunction,
    eta: ApproxMap,
    nbhd: SetDescriptor,
    window: SetDescriptor,
    delta: float,
    grid_density: float = 64.0,
) -> LiftingReport:
    """Pointwise check |f_cont(x) - f(a)| <= delta whenever eta(a) in x + nbhd;
    unlike a weak lifting, no exceptional set is allowed."""
    grid = list(descriptor_grid(eta.model, window, grid_density))
    ref_vals = eval_ref_many(f_cont, grid)
    worst, witness = 0.0, None
    for i, x in enumerate(grid):
        mask = ball_preimage_mask(eta, nbhd, x)
        if not mask.any():
            continue
        dev = float(np.abs(f.values[mask] - ref_vals[i]).max())
        if dev > worst:
            worst = dev
            witness = {"x": x, "deviation": dev}
    passed = worst <= delta + _TOL * max(1.0, delta if math.isfinite(delta) else 1.0)
    return LiftingReport(
        mode="approximation",
        delta=delta,
        worst_deviation=worst,
        exceptional_mass=0.0,
        grid={"points": len(grid), "density": grid_density, "window": repr(window)},
        passed=passed,
        witness=None if passed else witness,
    )


def delta1_of_approx(
    f_cont: RefFunction,
    eta: ApproxMap,
    nbhd: SetDescriptor,
    window: SetDescriptor,
    delta: float,
    grid_density: float = 64.0,
) -> float:
    """Conversion constant turning a (U, delta) approximation into a lifting:
    sup over the window of (1 + count ratio) * delta + |1 - count ratio| * |f_cont|."""
    grid = list(descriptor_grid(eta.model, window, grid_density))
    cnt_u = len(preimage_of_descriptor(eta, nbhd))
    if cnt_u == 0:
        raise ParameterError("neighborhood preimage is empty")
    ref_vals = np.abs(eval_ref_many(f_cont, grid))
    out = 0.0
    for i, x in enumerate(grid):
        ratio = float(np.count_nonzero(ball_preimage_mask(eta, nbhd, x))) / cnt_u
        out = max(out, (1.0 + ratio) * delta + abs(1.0 - ratio) * float(ref_vals[i]))
    return out


# -- modified Fourier transform ---------------------------------------------------


def modified_ft(f: Signal, eta: ApproxMap, chi) -> complex:
    """d * sum_a f(a) * conj(chi(eta a)); d is the signal's scale."""
    col = pairing_column(eta.model, eta_array(eta), chi)
    return complex(f.scale * np.sum(f.values * np.conj(col)))


def dual_map_of(eta: ApproxMap) -> ApproxMap:
    """Canonical dual approximation whose pairing matches the finite one."""
    from .approx import (
        build_circle_approx,
        build_integer_approx,
        build_real_approx,
        build_tower_approx,
        product_approx,
    )

    n = eta.group.size
    if eta.family == "circle":
        return build_integer_approx(n, max(0, (n - 1) // 4))
    if eta.family == "integer":
        return build_circle_approx(n)
    if eta.family == "real":
        return build_real_approx(n, TAU / (n * eta.param("step")))
    if eta.family == "tower-section":
        tower = eta.model
        return build_tower_approx(
            dual_model(tower),
            tower.depth - eta.param("unit_level"),
            tower.depth - eta.param("base_level"),
        )
    if eta.family == "product":
        fa, fb = eta.param("factors")
        return product_approx(dual_map_of(fa), dual_map_of(fb))
    raise ParameterError(f"no canonical dual map for family {eta.family!r}")


@dataclass(frozen=True)
class TransformFrame:
    """An approximation with its neighborhood and the induced scaling."""

    eta: ApproxMap
    nbhd: SetDescriptor
    scale: float = 0.0

    def __post_init__(self):
        if not self.scale:
            object.__setattr__(self, "scale", scaling_coefficient(self.eta, self.nbhd))


def _unpack_frame(pair_or_frame):
    from .approx import AdjointPair

    if isinstance(pair_or_frame, AdjointPair):
        p = pair_or_frame
        return p.eta, p.nbhd, p.scale, p.phi
    fr = pair_or_frame
    return fr.eta, fr.nbhd, fr.scale, dual_map_of(fr.eta)


def _dual_distances(dualm: LcaModel, images, chi) -> np.ndarray:
    """Distance from each dual image to the target character."""
    if isinstance(dualm, Circle):
        return np.abs(wrap_angles(np.asarray(images, dtype=float) - float(chi)))
    if isinstance(dualm, (RealLine, IntegerLine)):
        return np.abs(np.asarray(images, dtype=float) - float(chi))
    if isinstance(dualm, QuotientTower):
        m = dualm.modulus
        d = np.remainder(np.asarray(images, dtype=np.int64) - canonical_point(dualm, chi), m)
        return np.minimum(d, m - d).astype(float)
    # products: sum of factor distances
    if isinstance(dualm, ProductModel):
        out = np.zeros(len(images))
        for i, pt in enumerate(images):
            out[i] = sum(
                float(_dual_distances(fm, [pc], cc)[0])
                for fm, pc, cc in zip(dualm.factors, pt, chi, strict=True)
            )
        return out
    raise UnsupportedDescriptorError(f"no distance rule for {type(dualm).__name__}")


def transform_experiment(
    f_cont: RefFunction,
    pair_or_frame,
    chis,
    bound: float = math.inf,
    signal: Signal | None = None,
) -> TransformErrorReport:
    """Compare the reference transform against the modified transform and the
    DFT at the nearest dual lattice character, for each target character."""
    eta, nbhd, d, phi = _unpack_frame(pair_or_frame)
    dualm, fhat = reference_transform(eta.model, f_cont)
    f = signal if signal is not None else sample_lifting(f_cont, eta, scale=d)
    if not math.isclose(f.scale, d, rel_tol=1e-12):
        raise ParameterError("signal scale must equal the frame's scaling coefficient")
    spectrum = dft(f)
    dual_images = eta_array(phi)
    rows = []
    for chi in chis:
        ref = eval_ref(fhat, chi)
        mft_err = abs(ref - modified_ft(f, eta, chi))
        dists = _dual_distances(dualm, dual_images, chi)
        idx = int(np.argmin(dists))
        slack = float(dists[idx])
        scale_ref = abs(float(np.max(np.abs(dists)))) if len(dists) else 1.0
        covered = slack <= 1e-9 * max(1.0, scale_ref)
        dft_err = abs(ref - complex(spectrum.values[idx]))
        ok = mft_err <= bound and (not covered or dft_err <= bound)
        chi_t = tuple(chi) if isinstance(chi, (tuple, list)) else (chi,)
        rows.append(TransformRow(chi_t, complex(ref), mft_err, dft_err, bound, ok, covered, slack))
    sup_mft = max((r.mft_err for r in rows), default=0.0)
    sup_dft = max((r.dft_err for r in rows if r.covered), default=0.0)
    return TransformErrorReport(
        rows=tuple(rows),
        grid={"count": len(rows)},
        sup_mft_err=sup_mft,
        sup_dft_err=sup_dft,
        bound=bound,
        passed=all(r.ok for r in rows),
    )


# -- verified error bounds --------------------------------------------------------


def _grid_pair_errors(pair, ref_at, spectrum) -> tuple[float, dict | None]:
    """Worst |reference(chi) - dft(gamma)| over chis and gammas with the dual
    image inside chi + dual neighborhood; returns (max error, witness)."""
    worst, witness = 0.0, None
    for chi, ref in ref_at:
        mask = ball_preimage_mask(pair.phi, pair.dual_nbhd, chi)
        idxs = np.flatnonzero(mask)
        if len(idxs) == 0:
            continue
        errs = np.abs(ref - spectrum.values[idxs])
        j = int(np.argmax(errs))
        if errs[j] > worst:
            worst = float(errs[j])
            witness = {"chi": chi, "gamma_index": int(idxs[j]), "error": worst}
    return worst, witness


def check_measure_transform_bound(
    mu: MeasureModel,
    f: Signal,
    pair,
    chis,
    alpha: float,
    delta: float,
    grid_density: float = 64.0,
) -> BoundReport:
    """Hypotheses: weak lifting at delta <= alpha, lifted norm at most the
    total variation, and the modified transform tracks the measure transform
    within alpha on the character grid. Conclusion: DFT values at characters
    adjacent to the grid stay within (2 total variation + 3) alpha."""
    statement = "measure-transform-bound"
    params = {"alpha": alpha, "delta": delta, "chars": len(list(chis))}
    chis = list(chis)
    if not 0 < alpha <= math.pi / 3 + _TOL:
        return BoundReport.hypothesis_failed(statement, params, "alpha outside (0, pi/3]")
    if delta > alpha + _TOL:
        return BoundReport.hypothesis_failed(statement, params, "delta must be at most alpha")
    lift = is_weak_lifting(f, mu, pair.eta, pair.nbhd, pair.window, delta, grid_density)
    if not lift.passed:
        return BoundReport.hypothesis_failed(
            statement, params, "weak lifting fails", lifting=lift.witness
        )
    tv = total_variation(mu)
    l1 = norm(f, 1)
    if l1 > tv * (1 + 1e-9) + _TOL:
        return BoundReport.hypothesis_failed(
            statement, params, "lifted norm exceeds the total variation", l1=l1, tv=tv
        )
    refs = [(chi, measure_transform(mu, chi)) for chi in chis]
    premise = max((abs(r - modified_ft(f, pair.eta, chi)) for chi, r in refs), default=0.0)
    if premise > alpha + _TOL:
        return BoundReport.hypothesis_failed(
            statement, params, "modified transform strays beyond alpha", premise=premise
        )
    spectrum = dft(f)
    lhs, witness = _grid_pair_errors(pair, refs, spectrum)
    rhs = (2.0 * tv + 3.0) * alpha
    ok = lhs <= rhs * (1 + 1e-9) + _TOL
    return BoundReport.concluded(statement, params, lhs, rhs, ok, witness)


def check_function_transform_bound(
    f_cont: RefFunction,
    pair,
    chis,
    alpha: float,
    delta: float,
    t: float,
    signal: Signal | None = None,
    grid_density: float = 64.0,
) -> list[BoundReport]:
    """Function version: the grid bound with constant (2 l1 + 3) alpha, the
    spectrum-to-Bohr chain through the witness neighborhood, and the tail
    bound |dft| < t * l1 outside the witness Bohr preimage."""
    chis = list(chis)
    model = pair.eta.model
    dualm, fhat = reference_transform(model, f_cont)
    fc_l1 = ref_l1_norm(model, f_cont)
    f = signal if signal is not None else sample_lifting(f_cont, pair.eta, scale=pair.scale)
    l1 = norm(f, 1)
    params = {"alpha": alpha, "delta": delta, "t": t, "l1": l1, "ref_l1": fc_l1}
    reports = []

    def fail(statement, reason, **extra):
        return BoundReport.hypothesis_failed(statement, dict(params), reason, **extra)

    base_bad = None
    if not 0 < alpha <= math.pi / 3 + _TOL:
        base_bad = "alpha outside (0, pi/3]"
    elif delta > alpha + _TOL:
        base_bad = "delta must be at most alpha"
    elif not 0 < t < 1:
        base_bad = "t must lie in (0, 1)"
    elif not t * fc_l1 < l1 <= fc_l1 * (1 + 1e-9) + _TOL:
        base_bad = "lifted norm must sit between t * reference norm and reference norm"

    # (1) grid bound
    stmt = "function-transform-bound"
    if base_bad:
        reports.append(fail(stmt, base_bad))
    else:
        refs = [(chi, eval_ref(fhat, chi)) for chi in chis]
        premise = max((abs(r - modified_ft(f, pair.eta, chi)) for chi, r in refs), default=0.0)
        if premise > alpha + _TOL:
            reports.append(fail(stmt, "modified transform strays beyond alpha", premise=premise))
        else:
            spectrum = dft(f)
            lhs, witness = _grid_pair_errors(pair, refs, spectrum)
            rhs = (2.0 * fc_l1 + 3.0) * alpha
            ok = lhs <= rhs * (1 + 1e-9) + _TOL
            reports.append(BoundReport.concluded(stmt, dict(params), lhs, rhs, ok, witness))

    # shared hypotheses of (2) and (3)
    chain_bad = base_bad
    if chain_bad is None:
        pre_u = preimage_of_descriptor(pair.eta, pair.nbhd)
        shift_dev = 0.0
        for a in pre_u:
            shift_dev = max(
                shift_dev, f.scale * float(np.abs(shift(f, a).values - f.values).sum())
            )
        if shift_dev > delta + _TOL:
            chain_bad = f"translates move more than delta in the mean ({shift_dev:.3e})"
        elif delta > 2.0 * t * l1 * math.sin(alpha / 2.0) + _TOL:
            chain_bad = "delta exceeds 2 t l1 sin(alpha/2)"
        elif pair.eps > delta + _TOL:
            chain_bad = "the pair's witness angle must be at most delta"

    stmt2 = "function-spec-bohr-chain"
    stmt3 = "function-tail-bound"
    if chain_bad:
        reports.append(fail(stmt2, chain_bad))
        reports.append(fail(stmt3, chain_bad))
        return reports

    spectrum = dft(f)
    spec = spec_set(f, t)
    finite_bohr = bohr(pre_u, alpha)
    dual_witness = preimage_of_descriptor(
        pair.phi, bohr_closed_form(model, pair.witness_nbhd, delta)
    )
    extra1 = spec.members - finite_bohr.members
    extra2 = finite_bohr.members - dual_witness.members
    bad_count = float(len(extra1) + len(extra2))
    witness = None
    if extra1:
        witness = {"stage": "spectrum outside the finite Bohr set", "gamma": sorted(extra1)[0]}
    elif extra2:
        witness = {"stage": "finite Bohr set outside the witness preimage", "gamma": sorted(extra2)[0]}
    reports.append(
        BoundReport.concluded(stmt2, dict(params), bad_count, 0.0, bad_count == 0.0, witness)
    )

    outside = np.setdiff1d(np.arange(pair.eta.group.size), dual_witness.indices)
    tail = float(np.abs(spectrum.values[outside]).max()) if len(outside) else 0.0
    rhs3 = t * l1
    ok3 = tail < rhs3 * (1 + 1e-9) + _TOL
    wit3 = None
    if not ok3:
        j = int(outside[np.argmax(np.abs(spectrum.values[outside]))])
        wit3 = {"gamma_index": j, "value": tail}
    reports.append(BoundReport.concluded(stmt3, dict(params), tail, rhs3, ok3, wit3))
    return reports
