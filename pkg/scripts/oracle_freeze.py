"""Compute and freeze the expected values used by the test suite.

Everything here is computed from first principles with plain numpy loops,
independently of the finharm package (which must not be imported here), and
written to tests/data/frozen_oracles.json. Run once before the build; rerun
only if a frozen value is being revised on purpose.
"""

import json
import math
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "frozen_oracles.json"

frozen: dict = {}


def principal_arg(z: complex) -> float:
    a = math.atan2(z.imag, z.real)
    # atan2 returns (-pi, pi]; -pi never occurs for exact unit roots
    return a


def brute_dft(orders, values, scale):
    """Definitional transform on a product of cyclic groups, digit order."""
    orders = tuple(orders)
    n = int(np.prod(orders))
    digs = [np.array(t) for t in np.ndindex(*orders)]
    out = []
    for chi in digs:
        acc = 0j
        for x, v in zip(digs, values):
            ph = sum(int(xc) * int(cc) / o for xc, cc, o in zip(x, chi, orders))
            acc += v * np.exp(-2j * np.pi * ph)
        out.append(scale * acc)
    return np.array(out)


def balance(r, n):
    r %= n
    return r - n if 2 * r > n else r


# 1. Z6 indicator of {0,3}: transform, energy identity numbers
orders = (6,)
vals = np.array([1.0, 0, 0, 1.0, 0, 0], dtype=complex)
fh = brute_dft(orders, vals, 1 / 6)
frozen["z6_indicator_dft"] = [[v.real, v.imag] for v in fh]
l1 = (1 / 6) * np.abs(vals).sum()
lhs = float(np.sum(np.abs(fh) ** 4))  # dual scale 1
rhs = float(l1**4 / ((1 / 6) * 2))  # D = {0,3}
frozen["z6_energy_case"] = {"lhs": lhs, "rhs": rhs, "third": 1 / 27}
assert abs(lhs - 1 / 27) < 1e-15 and abs(rhs - 1 / 27) < 1e-15

# 2. Bohr sets by brute force
def brute_bohr_z(n, A, alpha):
    good = []
    for g in range(n):
        worst = max(abs(principal_arg(np.exp(2j * np.pi * a * g / n))) for a in A)
        if worst <= alpha + 1e-12:
            good.append(balance(g, n))
    return sorted(good)


frozen["z12_bohr_pm1_pi3"] = brute_bohr_z(12, [0, 1, -1], math.pi / 3)
frozen["z64_bohr_interval4_pi3"] = brute_bohr_z(64, list(range(-4, 5)), math.pi / 3)

# 3. Sumsets / doubling
def sumset_z(n, A, B):
    return sorted({balance(a + b, n) for a in A for b in B})


frozen["z8_sumset"] = {"AA": sumset_z(8, [0, 1], [0, 1]), "sigma": 3 / 2}
frozen["z7_sumset"] = {"AA": sumset_z(7, [0, 1, 3], [0, 1, 3]), "sigma": 2.0}

# 4. Pairing and annihilator spot values
frozen["pairing_z4_a1_g1"] = [0.0, 1.0]
ann = [balance(g, 6) for g in range(6) if (0 * g) % 6 == 0 and (3 * g) % 6 == 0]
frozen["annihilator_z6_03"] = sorted(ann)

# 5. Gaussian modified-transform oracle: Riemann sum at 8x density of the
#    n=4096, step 0.05 experiment. Frozen before the build.
n_exp, d_exp = 4096, 0.05
dprime = 2 * math.pi / (n_exp * d_exp)
h = d_exp / 8
m = n_exp * 8
a = np.arange(m)
a = np.where(2 * a > m, a - m, a)  # balanced residues
x = a * h
g = np.exp(-(x**2) / 2)
gauss_rows = []
for j in [0, 1, 2, 5, 10, 40, 81, 120, 162]:
    gamma = j * dprime
    val = h * np.sum(g * np.exp(-1j * x * gamma))
    ref = math.sqrt(2 * math.pi) * math.exp(-(gamma**2) / 2)
    gauss_rows.append(
        {"j": j, "gamma": gamma, "riemann8x": [float(val.real), float(val.imag)], "closed": ref}
    )
    assert abs(val - ref) < 1e-12, (j, abs(val - ref))
frozen["gaussian_mft_8x"] = {"dprime": dprime, "rows": gauss_rows}

# 6. Trig polynomial 1 + cos(theta): coefficients by midpoint quadrature
M = 200_000
theta = (np.arange(M) + 0.5) * (2 * math.pi / M) - math.pi
f = 1 + np.cos(theta)
tp = {}
for k in [0, 1, -1, 2, -2, 3]:
    c = np.sum(f * np.exp(-1j * k * theta)) / M
    tp[str(k)] = [float(c.real), float(c.imag)]
frozen["trigpoly_quadrature"] = tp
assert abs(tp["0"][0] - 1) < 1e-9 and abs(tp["1"][0] - 0.5) < 1e-9

# 7. Indicator interval transform vs quadrature, r = 1
rows = []
for gamma in [0.5, 1.0, math.pi]:
    Mq = 400_000
    xs = -1 + (np.arange(Mq) + 0.5) * (2 / Mq)
    val = np.sum(np.exp(-1j * xs * gamma)) * (2 / Mq)
    closed = 2 * math.sin(gamma) / gamma
    rows.append({"gamma": gamma, "quad": [float(val.real), float(val.imag)], "closed": closed})
    assert abs(val - closed) < 1e-9
frozen["indicator_interval_r1"] = rows

# 8. Subgroup counts for small shapes (dumb closure enumeration)
def all_subgroups(orders):
    elems = [tuple(t) for t in np.ndindex(*orders)]

    def add(p, q):
        return tuple((x + y) % o for x, y, o in zip(p, q, orders))

    def closure(gens):
        s = {tuple([0] * len(orders))}
        frontier = list(s)
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = add(p, g)
                    if q not in s:
                        s.add(q)
                        nxt.append(q)
            frontier = nxt
        return frozenset(s)

    found = {closure([])}
    changed = True
    while changed:
        changed = False
        for H in list(found):
            for g in elems:
                if g in H:
                    continue
                H2 = closure(list(H) + [g])
                if H2 not in found:
                    found.add(H2)
                    changed = True
    return found


for shape, expect in [((2, 2, 2, 2), 67), ((6,), 4), ((2, 4), 8), ((3, 3), 6), ((2, 2, 3), 10)]:
    got = len(all_subgroups(shape))
    assert got == expect, (shape, got)
frozen["subgroup_counts"] = {"2,2,2,2": 67, "6": 4, "2,4": 8, "3,3": 6, "2,2,3": 10}

# 9. Spectral-set size bounds: validate the frozen two-sided form on random
#    instances before the build (lower uses t^2, not t^{-2}).
rng = np.random.default_rng(20260822)
worst_lo, worst_hi = math.inf, math.inf
for trial in range(300):
    nfac = int(rng.integers(1, 3))
    orders = tuple(int(rng.integers(2, 8)) for _ in range(nfac))
    N = int(np.prod(orders))
    vals = np.zeros(N)
    support = rng.choice(N, size=int(rng.integers(1, max(2, N // 2))), replace=False)
    vals[support] = rng.uniform(0.2, 2.0, size=len(support))
    fh = brute_dft(orders, vals.astype(complex), 1 / N)
    l1 = np.abs(vals).sum() / N
    l2sq = float(np.sum(vals**2) / N)
    digs = [tuple(t) for t in np.ndindex(*orders)]
    supp = [digs[i] for i in support]
    D = {tuple((x + y) % o for x, y, o in zip(p, q, orders)) for p in supp for q in supp}
    t = float(rng.uniform(0.05, 1.0))
    spec_sz = int(np.sum(np.abs(fh) >= t * l1 - 1e-12))
    lower = N / len(D) - t**2 * (l2sq / l1**2)
    upper = (l2sq / l1**2) / t**2
    worst_lo = min(worst_lo, spec_sz - lower)
    worst_hi = min(worst_hi, upper - spec_sz)
    assert lower <= spec_sz + 1e-9 and spec_sz <= upper * (1 + 1e-9), (orders, t)
frozen["spec_size_bounds_validation"] = {
    "trials": 300,
    "min_slack_lower": float(worst_lo),
    "min_slack_upper": float(worst_hi),
}

# 10. Lattice scaling coefficients
cnt = sum(1 for k in range(-2048, 2049) if abs(2 * math.pi * k / 4096) <= 0.02)
frozen["circle_scaling_n4096_r002"] = {"count": cnt, "scale": (0.02 / math.pi) / cnt}
assert cnt == 27
cnt_r = sum(1 for k in range(-2048, 2049) if abs(k * 0.05) <= 2.525)
frozen["real_scaling_d005_r2525"] = {"count": cnt_r, "scale": 2 * 2.525 / cnt_r}
assert cnt_r == 101 and abs(2 * 2.525 / cnt_r - 0.05) < 1e-15

# 11. Gaussian L1 shift modulus at s = 0.2 (premise margin for the function
#     transform bound experiment)
hq = 1e-4
xs = np.arange(-12, 12, hq)
shift_l1 = float(np.sum(np.abs(np.exp(-((xs - 0.2) ** 2) / 2) - np.exp(-(xs**2) / 2))) * hq)
frozen["gaussian_l1_shift_s02"] = shift_l1
assert shift_l1 < 0.45

# 12. Tower section pairing identity is exact in integer phases
p, j, lK, lU = 2, 4, 1, 3
q = p ** (lU - lK)
pj = p**j
ok = True
for c in range(q):
    for g in range(q):
        eta = balance(c, q) * p**lK
        phi = balance(g, q) * p ** (j - lU)
        ok &= (eta * phi) % pj == (c * g % q) * (pj // q) % pj
frozen["tower_pairing_exact_p2_j4_l13"] = bool(ok)
assert ok

# 13. Delta spectral-size tight case, |G| = 8
frozen["delta_spec_size_n8"] = {"spec_size": 8, "upper": 8.0, "lower": 0.0}

OUT.parent.mkdir(parents=True, exist_ok=True)
OUT.write_text(json.dumps(frozen, indent=1, sort_keys=True) + "\n")
print(f"wrote {OUT}")
for k in sorted(frozen):
    print(" ", k)
