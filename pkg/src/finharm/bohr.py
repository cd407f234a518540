"""Bohr sets, spectral sets, and machine checks of the displayed
inequalities relating them.

Everything here works under the probability normalization d = 1/|G| (dual
weight 1); the check_* entry points rescale their input signal on entry, so
callers may pass signals carrying any scaling coefficient. Boundary policy:
every alpha comparison gets +1e-12 of slack and spectral membership uses an
inclusive threshold t*||f||_1*(1 - 1e-12), so exact rational boundary cases
count as inside, matching the non-strict inequalities being checked.
"""

from __future__ import annotations

import math

import numpy as np

from .groups import (
    Group,
    Subset,
    as_subset,
    difference_set,
    element_array,
    phase_block,
    subset_from_mask,
    sumset,
)
from .harmonic import Signal, dft, norm, shift, support
from .reports import BoundReport

ALPHA_SLACK = 1e-12
SPEC_SLACK = 1e-12
REL_TOL = 1e-9


def bohr(A, alpha: float, *, group: Group | None = None) -> Subset:
    """{g : |arg pairing(a, g)| <= alpha for every a in A}.

    Side-agnostic: A may live in the group or in its dual; the result lives
    on the opposite side (represented on the same residue tuples).
    """
    A = as_subset(group, A) if group is not None else A
    if not isinstance(A, Subset):
        raise TypeError("pass a Subset, or provide group= to coerce an iterable")
    if not 0 <= alpha <= math.pi:
        raise ValueError(f"alpha must lie in [0, pi], got {alpha}")
    g = A.group
    size = g.size
    chars = element_array(g)
    if len(A) == 0:
        return subset_from_mask(g, np.ones(size, dtype=bool))
    arr = A.member_array
    # The comparison happens on integer phase numerators: |arg| <= alpha
    # means min(p, size - p) <= alpha * size / (2*pi).
    cutoff = (alpha + ALPHA_SLACK) * size / (2 * math.pi)
    keep = np.ones(size, dtype=bool)
    block = max(1, (1 << 22) // max(1, len(A)))
    for lo in range(0, size, block):
        ph = phase_block(g, arr, chars[lo : lo + block])
        worst = np.minimum(ph, size - ph).max(axis=0)
        keep[lo : lo + block] = worst <= cutoff
    return subset_from_mask(g, keep)


def _normalized(f: Signal) -> Signal:
    want = 1.0 / f.group.size
    if math.isclose(f.scale, want, rel_tol=1e-12):
        return f
    return Signal(f.group, f.values, want)


def spec_set(f: Signal, t: float) -> Subset:
    """{g : |f^(g)| >= t * ||f||_1}, with an inclusive boundary slack."""
    f = _normalized(f)
    F = dft(f)
    thr = t * norm(f, 1)
    mask = np.abs(F.values) >= thr * (1 - SPEC_SLACK) - 1e-300
    return subset_from_mask(f.group, mask)


# -- hypothesis helpers -------------------------------------------------------


def _nonneg_real(f: Signal):
    """Return (ok, witness) for f being real and nonnegative within 1e-12."""
    tol = 1e-12 * max(1.0, float(np.max(np.abs(f.values)) if f.values.size else 0.0))
    bad_im = np.abs(f.values.imag) > tol
    bad_re = f.values.real < -tol
    bad = bad_im | bad_re
    if bad.any():
        i = int(np.argmax(bad))
        return False, {"x": list(f.group.element_at(i)), "value": complex(f.values[i])}
    return True, None


def _is_even(f: Signal):
    g = f.group
    arr = element_array(g)
    neg_idx = np.fromiter(
        (g.index_of(g.neg(tuple(int(c) for c in arr[i]))) for i in range(g.size)),
        dtype=np.int64,
        count=g.size,
    )
    tol = 1e-12 * max(1.0, float(np.max(np.abs(f.values)) if f.values.size else 0.0))
    dev = np.abs(f.values - f.values[neg_idx])
    if np.max(dev) > tol:
        i = int(np.argmax(dev))
        return False, {"x": list(g.element_at(i)), "deviation": float(dev[i])}
    return True, None


def _support_subset(f: Signal, D: Subset):
    s = support(f)
    extra = s.members - D.members
    if extra:
        return False, {"x": list(next(iter(extra)))}
    return True, None


def _selfsum_support(f: Signal) -> Subset:
    # For nonnegative f there is no cancellation, so supp(f*f) is exactly
    # supp f + supp f; computing it combinatorially avoids float zeros.
    s = support(f)
    return sumset(f.group, s, s)


def _inclusion_report(statement, params, big: Subset, small_name, big_name, members_outside):
    count = len(members_outside)
    if count == 0:
        return BoundReport.concluded(statement, params, 0.0, 0.0, True)
    worst = sorted(members_outside)[0]
    return BoundReport.concluded(
        statement,
        params,
        float(count),
        0.0,
        False,
        {"outside": list(worst), "note": f"{small_name} not contained in {big_name}"},
    )


# -- the five checks ----------------------------------------------------------


def check_energy_lower_bound(f: Signal, D) -> BoundReport:
    """Fourth-moment lower bound: sum_g |f^(g)|^4 >= ||f||_1^4 / ||1_D||_1,
    for nonnegative f with supp(f*f) contained in D."""
    f = _normalized(f)
    g = f.group
    D = as_subset(g, D)
    statement = "energy-lower-bound"
    params = {"group": list(g.orders), "D_size": len(D)}
    ok, wit = _nonneg_real(f)
    if not ok:
        return BoundReport.hypothesis_failed(statement, params, "f is not nonnegative", **wit)
    if len(D) == 0:
        return BoundReport.hypothesis_failed(statement, params, "D is empty")
    ss = _selfsum_support(f)
    extra = ss.members - D.members
    if extra:
        return BoundReport.hypothesis_failed(
            statement, params, "supp(f*f) is not contained in D", x=list(next(iter(extra)))
        )
    F = dft(f)
    lhs = float(np.sum(np.abs(F.values) ** 4))  # dual weight is 1 here
    l1 = norm(f, 1)
    rhs = l1**4 / (len(D) / g.size)
    params.update({"l1": l1})
    holds = lhs >= rhs * (1 - REL_TOL) - 1e-15
    return BoundReport.concluded(statement, params, lhs, rhs, holds)


def check_bohr_in_spec(f: Signal, D, alpha: float, t: float) -> BoundReport:
    """Bohr_alpha(D) lies inside Spec_t(f) for even nonnegative f supported
    in D, when 0 <= alpha <= pi/2 and 0 <= t <= cos(alpha)."""
    f = _normalized(f)
    g = f.group
    D = as_subset(g, D)
    statement = "bohr-in-spec"
    params = {"group": list(g.orders), "D_size": len(D), "alpha": alpha, "t": t}
    ok, wit = _nonneg_real(f)
    if not ok:
        return BoundReport.hypothesis_failed(statement, params, "f is not nonnegative", **wit)
    ok, wit = _is_even(f)
    if not ok:
        return BoundReport.hypothesis_failed(statement, params, "f is not even", **wit)
    ok, wit = _support_subset(f, D)
    if not ok:
        return BoundReport.hypothesis_failed(statement, params, "supp f not contained in D", **wit)
    if not 0 <= alpha <= math.pi / 2 + ALPHA_SLACK:
        return BoundReport.hypothesis_failed(statement, params, "alpha outside [0, pi/2]")
    if not 0 <= t <= math.cos(alpha) + 1e-12:
        return BoundReport.hypothesis_failed(statement, params, "t exceeds cos(alpha)")
    B = bohr(D, alpha)
    S = spec_set(f, t)
    params.update({"bohr_size": len(B), "spec_size": len(S)})
    return _inclusion_report(statement, params, S, "Bohr set", "spectral set", B.members - S.members)


def check_spec_bohr_in_diffset(f: Signal, D, alpha: float, t: float) -> BoundReport:
    """Bohr_alpha(Spec_t(f)) lies inside D - D for nonnegative f != 0 with
    supp(f*f) in D, 0 < alpha < pi/2, and t below the stated threshold."""
    f = _normalized(f)
    g = f.group
    D = as_subset(g, D)
    statement = "spec-bohr-in-diffset"
    params = {"group": list(g.orders), "D_size": len(D), "alpha": alpha, "t": t}
    ok, wit = _nonneg_real(f)
    if not ok:
        return BoundReport.hypothesis_failed(statement, params, "f is not nonnegative", **wit)
    if not np.any(f.values != 0):
        return BoundReport.hypothesis_failed(statement, params, "f is identically zero")
    ss = _selfsum_support(f)
    extra = ss.members - D.members
    if extra:
        return BoundReport.hypothesis_failed(
            statement, params, "supp(f*f) is not contained in D", x=list(next(iter(extra)))
        )
    if not 0 < alpha < math.pi / 2:
        return BoundReport.hypothesis_failed(statement, params, "alpha outside (0, pi/2)")
    l1, l2 = norm(f, 1), norm(f, 2)
    norm_1d_2 = math.sqrt(len(D) / g.size)
    t_max = (l1 / (l2 * norm_1d_2)) * math.sqrt(math.cos(alpha) / (1 + math.cos(alpha)))
    params["t_max"] = t_max
    if t > t_max * (1 + 1e-12):
        return BoundReport.hypothesis_failed(statement, params, "t exceeds its admissible bound")
    S = spec_set(f, t)
    B = bohr(S, alpha)
    DD = difference_set(g, D)
    params.update({"spec_size": len(S), "bohr_size": len(B), "diffset_size": len(DD)})
    return _inclusion_report(
        statement, params, DD, "Bohr of the spectrum", "difference set", B.members - DD.members
    )


def check_spec_size_bounds(f: Signal, D, t: float) -> BoundReport:
    """Two-sided size bound for the spectrum:
    |G|/|D| - t^2 * (||f||_2/||f||_1)^2 <= |Spec_t(f)| <= t^-2 * (||f||_2/||f||_1)^2.

    lhs and rhs carry the lower and upper bound values; the spectrum size is
    reported in params, along with whether the lower bound is informative.
    """
    f = _normalized(f)
    g = f.group
    D = as_subset(g, D)
    statement = "spec-size-bounds"
    params = {"group": list(g.orders), "D_size": len(D), "t": t}
    ok, wit = _nonneg_real(f)
    if not ok:
        return BoundReport.hypothesis_failed(statement, params, "f is not nonnegative", **wit)
    if not np.any(f.values != 0):
        return BoundReport.hypothesis_failed(statement, params, "f is identically zero")
    if len(D) == 0:
        return BoundReport.hypothesis_failed(statement, params, "D is empty")
    ss = _selfsum_support(f)
    extra = ss.members - D.members
    if extra:
        return BoundReport.hypothesis_failed(
            statement, params, "supp(f*f) is not contained in D", x=list(next(iter(extra)))
        )
    if not 0 < t <= 1:
        return BoundReport.hypothesis_failed(statement, params, "t outside (0, 1]")
    l1, l2 = norm(f, 1), norm(f, 2)
    ratio = (l2 / l1) ** 2
    size = len(spec_set(f, t))
    lower = g.size / len(D) - t**2 * ratio
    upper = ratio / t**2
    params.update({"spec_size": size, "lower_bound_relevant": bool(lower > 0)})
    slack = REL_TOL * max(1.0, abs(lower), abs(upper))
    holds = (lower <= size + slack) and (size <= upper + slack)
    witness = None if holds else {"spec_size": size}
    return BoundReport.concluded(statement, params, lower, upper, holds, witness)


def check_smoothness_decay(
    f: Signal, C, D, t: float, alpha: float, eps: float, variant: str = "sup"
) -> BoundReport:
    """Spec_t(f) lies inside Bohr_alpha(C) when all shifts of f along C move
    it by at most eps, for small enough eps.

    variant "sup": requires supp f and supp f + C inside D and
      eps <= 2*t*(||f||_1/||1_D||_1)*sin(alpha/2), with sup-norm shift bounds.
    variant "l1": no D needed; eps <= 2*t*sin(alpha/2) with shift bounds
      relative to ||f||_1.
    """
    if variant not in ("sup", "l1"):
        raise ValueError(f"variant must be 'sup' or 'l1', got {variant!r}")
    f = _normalized(f)
    g = f.group
    C = as_subset(g, C)
    statement = f"smoothness-decay-{variant}"
    params = {"group": list(g.orders), "C_size": len(C), "t": t, "alpha": alpha, "eps": eps}
    if not np.any(f.values != 0):
        return BoundReport.hypothesis_failed(statement, params, "f is identically zero")
    if not 0 < t <= 1:
        return BoundReport.hypothesis_failed(statement, params, "t outside (0, 1]")
    if not 0 < alpha <= math.pi:
        return BoundReport.hypothesis_failed(statement, params, "alpha outside (0, pi]")
    l1 = norm(f, 1)
    if variant == "sup":
        if D is None:
            return BoundReport.hypothesis_failed(statement, params, "sup variant needs D")
        D = as_subset(g, D)
        params["D_size"] = len(D)
        s = support(f)
        needed = s.members | sumset(g, s, C).members
        extra = needed - D.members
        if extra:
            return BoundReport.hypothesis_failed(
                statement, params, "supp f united with supp f + C leaves D",
                x=list(next(iter(extra))),
            )
        eps_max = 2 * t * (l1 / (len(D) / g.size)) * math.sin(alpha / 2)
        shift_bound = eps
        shift_norm = math.inf
    else:
        eps_max = 2 * t * math.sin(alpha / 2)
        shift_bound = eps * l1
        shift_norm = 1
    params["eps_max"] = eps_max
    if eps > eps_max * (1 + 1e-12):
        return BoundReport.hypothesis_failed(statement, params, "eps exceeds its admissible bound")
    for a in sorted(C.members):
        moved = shift(f, a)
        dev = Signal(g, moved.values - f.values, f.scale)
        if norm(dev, shift_norm) > shift_bound * (1 + 1e-12) + 1e-15:
            return BoundReport.hypothesis_failed(
                statement, params, "a shift along C moves f by more than eps", a=list(a)
            )
    S = spec_set(f, t)
    B = bohr(C, alpha)
    params.update({"spec_size": len(S), "bohr_size": len(B)})
    return _inclusion_report(statement, params, B, "spectrum", "Bohr set", S.members - B.members)
