"""Scaled inner products, DFT, convolution, shifts, and norms on finite
abelian groups.

All transforms use the kernel exp(-2*pi*i * sum_j x_j g_j / n_j) against the
canonical enumeration. Two independent paths are provided: a reference path
that evaluates the defining sum with exact integer phases, and a fast
mixed-radix path (dense small factors, iterative radix-2, Bluestein for the
rest). Neither path delegates to an external FFT.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .groups import (
    Group,
    Subset,
    element_array,
    phase_block,
    subset_from_mask,
    unit_roots,
)


@dataclass(frozen=True)
class Signal:
    """A complex function on a group together with its scaling coefficient."""

    group: Group
    values: np.ndarray
    scale: float

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.complex128)
        if vals.shape != (self.group.size,):
            raise ValueError(
                f"expected {self.group.size} values for {self.group.orders}, got {vals.shape}"
            )
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError(f"scaling coefficient must be positive and finite: {self.scale}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def weight(self) -> float:
        return self.scale

    @property
    def dual_scale(self) -> float:
        return 1.0 / (self.scale * self.group.size)


@dataclass(frozen=True)
class Spectrum:
    """A complex function on the dual group with the adjoint scaling."""

    group: Group
    values: np.ndarray
    dual_scale: float

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.complex128)
        if vals.shape != (self.group.size,):
            raise ValueError(
                f"expected {self.group.size} values for {self.group.orders}, got {vals.shape}"
            )
        if not (self.dual_scale > 0 and math.isfinite(self.dual_scale)):
            raise ValueError(f"scaling coefficient must be positive and finite: {self.dual_scale}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "dual_scale", float(self.dual_scale))

    @property
    def weight(self) -> float:
        return self.dual_scale

    @property
    def source_scale(self) -> float:
        return 1.0 / (self.dual_scale * self.group.size)


# -- reference transform -----------------------------------------------------


def _dft_reference_raw(group: Group, values: np.ndarray) -> np.ndarray:
    """Unscaled sum_x f(x) * exp(-2*pi*i*phase(x, g)/|G|), exact phases."""
    n = group.size
    elems = element_array(group)
    roots = np.conj(unit_roots(group))
    out = np.empty(n, dtype=np.complex128)
    block = max(1, (1 << 21) // n)
    for lo in range(0, n, block):
        ph = phase_block(group, elems[lo : lo + block], elems)
        out[lo : lo + block] = roots[ph] @ values
    return out


# -- fast transform ----------------------------------------------------------

_DENSE_LIMIT = 64
_dense_cache: dict[int, np.ndarray] = {}
_pow2_cache: dict[int, tuple[np.ndarray, list[np.ndarray]]] = {}
_bluestein_cache: dict[int, tuple[int, np.ndarray, np.ndarray]] = {}


def _dense_matrix(n: int) -> np.ndarray:
    m = _dense_cache.get(n)
    if m is None:
        k = np.arange(n)
        m = np.exp(-2j * np.pi * np.outer(k, k) / n)
        _dense_cache[n] = m
    return m


def _pow2_plan(n: int):
    plan = _pow2_cache.get(n)
    if plan is None:
        bits = n.bit_length() - 1
        rev = np.zeros(n, dtype=np.int64)
        for i in range(n):
            rev[i] = int(format(i, f"0{bits}b")[::-1], 2) if bits else 0
        twiddles = []
        half = 1
        while half < n:
            twiddles.append(np.exp(-2j * np.pi * np.arange(half) / (2 * half)))
            half *= 2
        plan = (rev, twiddles)
        _pow2_cache[n] = plan
    return plan


def _dft_pow2(x: np.ndarray) -> np.ndarray:
    """Iterative radix-2 transform along the last axis (length a power of 2)."""
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    rev, twiddles = _pow2_plan(n)
    lead = x.shape[:-1]
    y = x[..., rev]
    half = 1
    stage = 0
    while half < n:
        tw = twiddles[stage]
        y = y.reshape(*lead, n // (2 * half), 2, half)
        a = y[..., 0, :]
        b = y[..., 1, :] * tw
        y = np.concatenate([a + b, a - b], axis=-1).reshape(*lead, n)
        half *= 2
        stage += 1
    return y


def _bluestein_plan(n: int):
    plan = _bluestein_cache.get(n)
    if plan is None:
        m = 1 << (2 * n - 1).bit_length()
        k = np.arange(n, dtype=np.int64)
        # Chirp exponents taken mod 2n keep the angle argument small and exact.
        chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
        b = np.zeros(m, dtype=np.complex128)
        b[:n] = np.conj(chirp)
        b[m - (n - 1):] = np.conj(chirp[1:n])[::-1]
        plan = (m, chirp, _dft_pow2(b))
        _bluestein_cache[n] = plan
    return plan


def _dft_bluestein(x: np.ndarray) -> np.ndarray:
    """Arbitrary-length transform along the last axis via chirp convolution."""
    n = x.shape[-1]
    m, chirp, b_hat = _bluestein_plan(n)
    a = np.zeros((*x.shape[:-1], m), dtype=np.complex128)
    a[..., :n] = x * chirp
    conv = _idft_pow2_unscaled(_dft_pow2(a) * b_hat) / m
    return conv[..., :n] * chirp


def _idft_pow2_unscaled(x: np.ndarray) -> np.ndarray:
    return np.conj(_dft_pow2(np.conj(x)))


def _dft_last_axis(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    if n <= _DENSE_LIMIT:
        return x @ _dense_matrix(n)
    if n & (n - 1) == 0:
        return _dft_pow2(x)
    return _dft_bluestein(x)


def _dft_fast_raw(group: Group, values: np.ndarray) -> np.ndarray:
    """Row-column transform over the cyclic factors, unscaled."""
    arr = values.reshape(group.orders)
    for axis in range(group.rank):
        moved = np.moveaxis(arr, axis, -1)
        moved = _dft_last_axis(np.ascontiguousarray(moved))
        arr = np.moveaxis(moved, -1, axis)
    return arr.reshape(-1)


_RAW = {"fast": _dft_fast_raw, "reference": _dft_reference_raw}


def dft(f: Signal, mode: str = "fast") -> Spectrum:
    if mode not in _RAW:
        raise ValueError(f"unknown dft mode {mode!r}; expected 'fast' or 'reference'")
    raw = _RAW[mode](f.group, f.values)
    return Spectrum(f.group, raw * f.scale, f.dual_scale)


def idft(F: Spectrum, mode: str = "fast") -> Signal:
    if mode not in _RAW:
        raise ValueError(f"unknown dft mode {mode!r}; expected 'fast' or 'reference'")
    raw = np.conj(_RAW[mode](F.group, np.conj(F.values)))
    return Signal(F.group, raw * F.dual_scale, F.source_scale)


# -- pointwise and convolution algebra ----------------------------------------


def _require_same_frame(f: Signal, g: Signal):
    if f.group != g.group:
        raise ValueError("signals live on different groups")
    if not math.isclose(f.scale, g.scale, rel_tol=1e-12):
        raise ValueError(f"scaling coefficients differ: {f.scale} vs {g.scale}")


def convolve(f: Signal, g: Signal) -> Signal:
    """(f*g)(x) = d * sum_a f(x-a) g(a), evaluated from the definition."""
    _require_same_frame(f, g)
    group = f.group
    n = group.size
    if group.rank == 1:
        # Circular convolution via one linear convolution of the doubled signal.
        doubled = np.concatenate([f.values, f.values])
        full = np.convolve(doubled, g.values)
        out = full[n : 2 * n]
    else:
        # Accumulate rolls over the sparser factor's support.
        if np.count_nonzero(g.values) <= np.count_nonzero(f.values):
            base, sparse = f, g
        else:
            base, sparse = g, f
        nd = base.values.reshape(group.orders)
        out_nd = np.zeros_like(nd)
        ordv = group.orders
        arr = element_array(group)
        for i in np.flatnonzero(sparse.values):
            shift_digits = tuple(int(c) % o for c, o in zip(arr[i], ordv))
            out_nd += sparse.values[i] * np.roll(nd, shift_digits, axis=tuple(range(group.rank)))
        out = out_nd.reshape(-1)
    return Signal(group, out * f.scale, f.scale)


def shift(f: Signal, a) -> Signal:
    """f_a(x) = f(x - a)."""
    group = f.group
    a = group.normalize(a)
    nd = f.values.reshape(group.orders)
    shift_digits = tuple(c % o for c, o in zip(a, group.orders))
    return Signal(group, np.roll(nd, shift_digits, axis=tuple(range(group.rank))).reshape(-1), f.scale)


def modulate(f: Signal, g) -> Signal:
    """x -> pairing(x, g) * f(x), with exact integer phases."""
    group = f.group
    g_arr = np.array([group.normalize(g)], dtype=np.int64)
    ph = phase_block(group, element_array(group), g_arr)[:, 0]
    return Signal(group, f.values * unit_roots(group)[ph], f.scale)


def norm(f, p) -> float:
    """(weight * sum |f|^p)^(1/p); max |f| for p = inf."""
    if p == math.inf:
        return float(np.max(np.abs(f.values))) if f.values.size else 0.0
    p = float(p)
    if p < 1:
        raise ValueError(f"norms are defined for p >= 1, got {p}")
    return float((f.weight * np.sum(np.abs(f.values) ** p)) ** (1.0 / p))


def inner(f, g) -> complex:
    """weight * sum f * conj(g); both arguments must share group and weight."""
    if f.group != g.group:
        raise ValueError("signals live on different groups")
    if not math.isclose(f.weight, g.weight, rel_tol=1e-12):
        raise ValueError(f"scaling coefficients differ: {f.weight} vs {g.weight}")
    return complex(f.weight * np.sum(f.values * np.conj(g.values)))


def support(f) -> Subset:
    """Exact nonzero set (no tolerance)."""
    return subset_from_mask(f.group, f.values != 0)


def support_eps(f, tau: float) -> Subset:
    """Thresholded support {x : |f(x)| > tau} for numerically produced data."""
    return subset_from_mask(f.group, np.abs(f.values) > tau)


# -- CSV ----------------------------------------------------------------------


def write_signal_csv(f, path):
    """Rows in canonical order: residue tuple components, then re, im."""
    k = f.group.rank
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{j}" for j in range(k)] + ["re", "im"])
        arr = element_array(f.group)
        for i in range(f.group.size):
            v = f.values[i]
            w.writerow(
                [str(int(c)) for c in arr[i]]
                + [format(v.real, ".17g"), format(v.imag, ".17g")]
            )


def read_signal_csv(group: Group, path, scale: float) -> Signal:
    values = np.zeros(group.size, dtype=np.complex128)
    seen = np.zeros(group.size, dtype=bool)
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if len(header) != group.rank + 2:
            raise ValueError(f"expected {group.rank} residue columns plus re, im")
        for row in r:
            x = tuple(int(c) for c in row[: group.rank])
            i = group.index_of(x)
            values[i] = complex(float(row[group.rank]), float(row[group.rank + 1]))
            seen[i] = True
    if not seen.all():
        raise ValueError(f"{int((~seen).sum())} group elements missing from {path}")
    return Signal(group, values, scale)
