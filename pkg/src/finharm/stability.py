"""Stability of near-characters: partial eps-homomorphisms, constructive
character fitting, and the two-step Bohr containment over nested chains.

A map into the unit circle that is multiplicative up to a small phase on a
structured set is close to a genuine character. fit_character realizes this
constructively at desk scale: brute force minimizes the worst phase deviation
over the whole dual, and the factorwise strategy reads each coordinate
frequency off the generator line of the corresponding cyclic factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bohr import bohr
from .groups import Group, Subset, as_subset, element_array, phase_block, sumset
from .reports import BoundReport, FitResult

TAU = 2.0 * math.pi
_SLACK = 1e-12
_BLOCK_CELLS = 1 << 22


@dataclass(frozen=True)
class PartialMap:
    """Unit-circle-valued map on a subset; values follow domain.indices order."""

    group: Group
    domain: Subset
    table: tuple

    def __post_init__(self):
        if len(self.table) != len(self.domain):
            raise ValueError("one value per domain element is required")
        vals = np.asarray(self.table, dtype=np.complex128)
        if vals.size and np.max(np.abs(np.abs(vals) - 1.0)) > 1e-12:
            raise ValueError("values must have unit modulus within 1e-12")
        object.__setattr__(self, "table", tuple(complex(v) for v in vals))

    @property
    def values_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.complex128)

    def value_at(self, x) -> complex:
        i = self.group.index_of(self.group.normalize(x))
        pos = int(np.searchsorted(self.domain.indices, i))
        if pos >= len(self.domain.indices) or self.domain.indices[pos] != i:
            raise KeyError(f"{x} is not in the domain")
        return self.table[pos]


def partial_map(group: Group, domain, fn) -> PartialMap:
    """Tabulate fn over the domain in canonical order."""
    domain = as_subset(group, domain)
    vals = tuple(complex(fn(tuple(int(c) for c in row))) for row in domain.member_array)
    return PartialMap(group, domain, vals)


def _char_values(group: Group, rows: np.ndarray, chi) -> np.ndarray:
    """Character values on the given elements, from exact integer phases."""
    chi_row = np.asarray([group.normalize(chi)], dtype=np.int64)
    ph = phase_block(group, rows, chi_row)[:, 0]
    return np.exp(2j * np.pi * ph / group.size)


def character_map(group: Group, chi, domain=None) -> PartialMap:
    domain = Subset.full(group) if domain is None else as_subset(group, domain)
    vals = _char_values(group, domain.member_array, chi)
    return PartialMap(group, domain, tuple(vals))


def perturbed_character(
    group: Group, chi, delta: float, rng: np.random.Generator, domain=None
) -> PartialMap:
    """Character times per-point phase noise drawn uniformly from [-delta, delta]."""
    domain = Subset.full(group) if domain is None else as_subset(group, domain)
    vals = _char_values(group, domain.member_array, chi)
    noise = rng.uniform(-delta, delta, size=len(domain))
    return PartialMap(group, domain, tuple(vals * np.exp(1j * noise)))


# -- closeness and approximate multiplicativity -----------------------------------


def _positions_in(domain: Subset, idx: np.ndarray) -> np.ndarray:
    pos = np.searchsorted(domain.indices, idx)
    if np.any(pos >= len(domain.indices)) or np.any(domain.indices[pos] != idx):
        raise ValueError("the set must lie inside the map's domain")
    return pos


def _sum_indices(group: Group, digs_a: np.ndarray, digs_b: np.ndarray) -> np.ndarray:
    """Canonical indices of pairwise sums of two digit arrays."""
    ordv = np.asarray(group.orders, dtype=np.int64)
    s = np.remainder(digs_a[:, None, :] + digs_b[None, :, :], ordv)
    return np.ravel_multi_index(tuple(np.moveaxis(s, -1, 0)), group.orders)


def is_eps_close(f: PartialMap, g: PartialMap, X, eps: float):
    """(ok, worst, witness) for |arg(f/g)| <= eps everywhere on X."""
    X = as_subset(f.group, X)
    if len(X) == 0:
        return True, 0.0, None
    fv = f.values_array[_positions_in(f.domain, X.indices)]
    gv = g.values_array[_positions_in(g.domain, X.indices)]
    args = np.abs(np.angle(fv * np.conj(gv)))
    i = int(np.argmax(args))
    worst = float(args[i])
    witness = {"x": tuple(int(c) for c in X.member_array[i]), "arg": worst}
    return worst <= eps + _SLACK, worst, witness


def is_eps_homomorphic(g: PartialMap, X, eps: float):
    """(ok, worst, witness) for |arg(g(x)g(y)/g(x+y))| <= eps over pairs in X
    whose sum stays in X; exhaustive over |X|^2 pairs."""
    grp = g.group
    X = as_subset(grp, X)
    if len(X) == 0:
        return True, 0.0, None
    pos_x = _positions_in(g.domain, X.indices)
    vx = g.values_array[pos_x]
    in_x = np.zeros(grp.size, dtype=bool)
    in_x[X.indices] = True
    pos_of = np.zeros(grp.size, dtype=np.int64)
    pos_of[X.indices] = np.arange(len(X))
    digs = np.remainder(X.member_array, np.asarray(grp.orders, dtype=np.int64))
    worst, wit = -1.0, None
    block = max(1, _BLOCK_CELLS // max(1, len(X)))
    for lo in range(0, len(X), block):
        hi = min(len(X), lo + block)
        sidx = _sum_indices(grp, digs[lo:hi], digs)
        ok_mask = in_x[sidx]
        if not ok_mask.any():
            continue
        prod = vx[lo:hi][:, None] * vx[None, :]
        dev = np.where(
            ok_mask, np.abs(np.angle(prod * np.conj(vx[pos_of[sidx]]))), -1.0
        )
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        if dev[i, j] > worst:
            worst = float(dev[i, j])
            wit = {
                "x": tuple(int(c) for c in X.member_array[lo + i]),
                "y": tuple(int(c) for c in X.member_array[j]),
                "arg": worst,
            }
    if worst < 0.0:
        return True, 0.0, None
    return worst <= eps + _SLACK, worst, wit


def closeness_to_character(g: PartialMap, chi, X=None) -> float:
    """max |arg(g(x)/chi(x))| over X (default: the whole domain)."""
    X = g.domain if X is None else as_subset(g.group, X)
    if len(X) == 0:
        return 0.0
    gv = g.values_array[_positions_in(g.domain, X.indices)]
    cv = _char_values(g.group, X.member_array, chi)
    return float(np.max(np.abs(np.angle(gv * np.conj(cv)))))


# -- character fitting -------------------------------------------------------------


def _brute_fit(g: PartialMap, A0: Subset, cap: int) -> tuple:
    grp = g.group
    n = grp.size
    if n > cap:
        raise ValueError(f"brute fit over {n} characters exceeds the cap {cap}")
    gv = g.values_array[_positions_in(g.domain, A0.indices)]
    chars = element_array(grp)
    rows = A0.member_array
    best_dev, best_idx = math.inf, -1
    block = max(1, _BLOCK_CELLS // max(1, len(A0)))
    for lo in range(0, n, block):
        ph = phase_block(grp, rows, chars[lo : lo + block])
        vals = np.exp(2j * np.pi * ph / n)
        dev = np.abs(np.angle(gv[:, None] * np.conj(vals))).max(axis=0)
        j = int(np.argmin(dev))
        if dev[j] < best_dev - _SLACK:
            best_dev, best_idx = float(dev[j]), lo + j
    return tuple(int(c) for c in chars[best_idx])


def _line_closeness(vals: np.ndarray, freq: int, order: int) -> float:
    ts = np.arange(order, dtype=np.int64)
    ref = np.exp(2j * np.pi * ((freq * ts) % order) / order)
    return float(np.max(np.abs(np.angle(vals * np.conj(ref)))))


def _factor_frequency(vals: np.ndarray, order: int) -> int:
    """Frequency of the nearest cyclic character from values on a full line.

    Increments around the cycle are detrended by their circular mean, so the
    telescoped total winding is exact as long as phase noise stays below pi/4
    per point; a +-1 polish then decides by worst deviation on the line.
    """
    if order == 1:
        return 0
    inc = vals[np.roll(np.arange(order), -1)] * np.conj(vals)
    mean = cmath.phase(complex(inc.sum()))
    detrended = np.angle(inc * np.exp(-1j * mean))
    total = order * mean + float(detrended.sum())
    c = int(round(total / TAU)) % order
    cands = sorted({(c - 1) % order, c, (c + 1) % order})
    best = min(cands, key=lambda k: (_line_closeness(vals, k, order), k))
    return best


def _factorwise_fit(g: PartialMap, A0: Subset) -> tuple:
    grp = g.group
    out = []
    stride = grp.size
    for j, nj in enumerate(grp.orders):
        stride //= nj
        line_idx = stride * np.arange(nj, dtype=np.int64)
        missing = ~np.isin(line_idx, A0.indices, assume_unique=False)
        if missing.any():
            raise ValueError(
                f"factorwise fit needs the full generator line of factor {j} "
                "inside the fitting set"
            )
        vals = g.values_array[_positions_in(g.domain, line_idx)]
        cj = _factor_frequency(vals, nj)
        out.append(cj - nj if 2 * cj > nj else cj)
    return tuple(out)


def fit_character(g: PartialMap, A0, strategy: str = "brute", cap: int = 1 << 13) -> FitResult:
    """Nearest character to g in worst-phase distance over A0.

    brute scans the whole dual (ties broken by canonical character order);
    factorwise reads one frequency per cyclic factor off its generator line.
    The reported closeness is always recomputed independently on A0.
    """
    A0 = as_subset(g.group, A0)
    if len(A0) == 0:
        raise ValueError("cannot fit a character on an empty set")
    if strategy == "brute":
        chi = _brute_fit(g, A0, cap)
    elif strategy == "factorwise":
        chi = _factorwise_fit(g, A0)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return FitResult(
        character=chi,
        closeness=closeness_to_character(g, chi, A0),
        strategy=strategy,
    )


# -- iterated Bohr containment over nested chains ----------------------------------


def bohr_chain_check(chain, alpha: float, beta: float, group: Group | None = None) -> BoundReport:
    """Two-step Bohr containment over a nested chain A_0 >= A_1 >= ... >= A_n.

    Hypotheses: alpha, beta in (0, 2pi/3); every A_j symmetric; 0 in A_n;
    A_j + A_j inside A_{j-1}. Conclusion: the beta-Bohr set of the alpha-Bohr
    set of A_n lies inside A_0. Quotient sizes |A_{j-1}|/|A_j| are reported so
    experiments can relate chain depth to the containment.
    """
    statement = "bohr-chain-containment"
    sets = [as_subset(group, A) if group is not None else A for A in chain]
    if not sets or not all(isinstance(A, Subset) for A in sets):
        raise TypeError("pass Subsets, or provide group= to coerce iterables")
    grp = sets[0].group
    sizes = [len(A) for A in sets]
    params = {
        "alpha": alpha,
        "beta": beta,
        "n": len(sets) - 1,
        "sizes": tuple(sizes),
        "indices": tuple(
            (sizes[j - 1] / sizes[j]) if sizes[j] else math.inf for j in range(1, len(sets))
        ),
    }
    if not (0 < alpha < TAU / 3 and 0 < beta < TAU / 3):
        return BoundReport.hypothesis_failed(
            statement, params, "alpha and beta must lie in (0, 2pi/3)"
        )
    if any(A.group != grp for A in sets):
        return BoundReport.hypothesis_failed(statement, params, "sets live on different groups")
    if grp.zero() not in sets[-1]:
        return BoundReport.hypothesis_failed(statement, params, "0 must belong to the last set")
    for j, A in enumerate(sets):
        if not A.is_symmetric():
            return BoundReport.hypothesis_failed(statement, params, f"set {j} is not symmetric")
    for j in range(1, len(sets)):
        if not sets[j].members <= sets[j - 1].members:
            bad = sorted(sets[j].members - sets[j - 1].members)[0]
            return BoundReport.hypothesis_failed(
                statement, params, f"chain is not nested at step {j}", witness={"x": bad}
            )
        extra = sumset(grp, sets[j], sets[j]).members - sets[j - 1].members
        if extra:
            return BoundReport.hypothesis_failed(
                statement,
                params,
                f"sumset escapes at step {j}",
                witness={"x": sorted(extra)[0]},
            )
    inner = bohr(sets[-1], alpha)
    outer = bohr(inner, beta)
    extra = outer.members - sets[0].members
    witness = {"x": sorted(extra)[0]} if extra else None
    return BoundReport.concluded(
        statement, params, float(len(extra)), 0.0, not extra, witness
    )
