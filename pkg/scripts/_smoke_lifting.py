"""Scratch smoke test for the lifting/transform module."""

import json
import math
import sys

import numpy as np

sys.path.insert(0, "src")

from finharm.approx import (
    build_adjoint_pair_circle,
    build_adjoint_pair_reals,
    build_circle_approx,
    build_real_approx,
)
from finharm.harmonic import Signal, dft, norm
from finharm.lca import Arc, Circle, Gaussian, Interval, RealLine, TrigPoly, reference_transform
from finharm.lifting import (
    MeasureModel,
    TransformFrame,
    check_function_transform_bound,
    check_measure_transform_bound,
    delta1_of_approx,
    is_approximation,
    is_weak_lifting,
    measure_of_ball,
    measure_transform,
    modified_ft,
    sample_lifting,
    scaling_coefficient,
    total_variation,
    transform_experiment,
)

ORACLES = json.load(open("tests/data/frozen_oracles.json"))


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    if not ok:
        sys.exit(1)


# --- bridge identity: circle, trig poly, bare frame, U = Arc(pi) => d = 1/n ---
n = 256
eta = build_circle_approx(n)
frame = TransformFrame(eta, Arc(math.pi))
check("frame scale is 1/n", math.isclose(frame.scale, 1.0 / n, rel_tol=1e-12), f"{frame.scale}")

f_cont = TrigPoly(((0, 1.0), (1, 0.5), (-1, 0.5)))  # 1 + cos(theta)
rep = transform_experiment(f_cont, frame, [0, 1, -1, 2, 5], bound=1e-12)
check("trigpoly exact transform", rep.passed, f"sup_mft={rep.sup_mft_err:.2e} sup_dft={rep.sup_dft_err:.2e}")
check("trigpoly rows covered", all(r.covered for r in rep.rows))

# --- gaussian vs frozen 8x riemann oracle ---
gm = ORACLES["gaussian_mft_8x"]
n, step = 4096, 0.05
eta_r = build_real_approx(n, step)
frame_r = TransformFrame(eta_r, Interval(2.525))
check("real frame scale 0.05", math.isclose(frame_r.scale, 0.05, rel_tol=1e-12), f"{frame_r.scale}")

g = Gaussian(1.0, 1.0)
sig = sample_lifting(g, eta_r, scale=frame_r.scale)
chis = [row["gamma"] for row in gm["rows"]]
rep_g = transform_experiment(g, frame_r, chis, bound=1e-4)
worst_oracle = 0.0
for row, trow in zip(gm["rows"], rep_g.rows):
    mft = modified_ft(sig, eta_r, row["gamma"])
    riemann = complex(row["riemann8x"][0], row["riemann8x"][1])
    worst_oracle = max(worst_oracle, abs(mft - riemann))
check("gaussian mft matches frozen 8x oracle", worst_oracle <= 1e-6, f"worst={worst_oracle:.2e}")
check("gaussian rows covered + dft=mft", rep_g.passed and all(r.covered for r in rep_g.rows),
      f"sup_mft={rep_g.sup_mft_err:.2e} sup_dft={rep_g.sup_dft_err:.2e}")
check("gaussian dft equals mft on lattice", abs(rep_g.sup_dft_err - rep_g.sup_mft_err) <= 1e-12)

# --- approximation + delta1 ---
ap = is_approximation(sig, g, eta_r, Interval(0.05), Interval(2.0), delta=0.05)
check("gaussian (U,delta) approximation", ap.passed, f"worst={ap.worst_deviation:.3e}")
d1 = delta1_of_approx(g, eta_r, Interval(0.05), Interval(2.0), delta=0.05)
check("delta1 finite and >= delta", 0.05 <= d1 < 1.0, f"delta1={d1:.4f}")

# --- measure bound instances on the circle pair ---
pair = build_adjoint_pair_circle(4096, alpha=0.1, r=0.02, eps=0.05)
d = pair.scale
cnt = round(pair.nbhd.half_width / math.pi / d)
check("circle pair oracle scale", math.isclose(d, ORACLES["circle_scaling_n4096_r002"]["scale"], rel_tol=1e-12), f"{d}")

# point mass at 0: lifting f = (1/(d*cnt)) 1_{eta^-1[U]}  -- measure of x+U counts the atom
mask = np.abs(np.array([(a - 4096 if 2 * a > 4096 else a) for a in range(4096)])) <= 13
vals = np.where(mask, 1.0 / (d * 27), 0.0)
f_pm = Signal(pair.eta.group, vals.astype(complex), d)
mu_pm = MeasureModel(Circle(), atoms=(((0.0), 1.0),))
chis_pm = [0, 1, 2, 5, -3]
rep_pm = check_measure_transform_bound(mu_pm, f_pm, pair, chis_pm, alpha=0.1, delta=0.05)
check("point-mass measure bound", rep_pm.status == "ok" and rep_pm.holds,
      f"status={rep_pm.status} lhs={rep_pm.lhs:.4f} rhs={rep_pm.rhs:.4f}")

# haar measure: density 1, lifting f = constant 1 (norm d*n ~ 0.9658 <= 1)
mu_h = MeasureModel(Circle(), density=TrigPoly(((0, 1.0),)))
f_h = Signal(pair.eta.group, np.ones(4096, dtype=complex), d)
rep_h = check_measure_transform_bound(mu_h, f_h, pair, chis_pm, alpha=0.1, delta=0.05)
check("haar measure bound", rep_h.status == "ok" and rep_h.holds,
      f"status={rep_h.status} lhs={rep_h.lhs:.4f} rhs={rep_h.rhs:.4f}")

tv = total_variation(mu_h)
check("haar total variation 1", math.isclose(tv, 1.0, rel_tol=1e-9), f"{tv}")
mb = measure_of_ball(mu_h, 0.3, pair.nbhd)
check("haar ball mass r/pi", abs(mb - 0.02 / math.pi) <= 1e-15, f"{mb}")
mt = measure_transform(mu_h, 0)
check("haar transform at 0", abs(mt - 1.0) <= 1e-12, f"{mt}")

lift_h = is_weak_lifting(f_h, mu_h, pair.eta, pair.nbhd, pair.window, delta=0.05)
check("haar weak lifting dev ~ 1/27 - dn/27", lift_h.passed and lift_h.worst_deviation <= 0.05,
      f"worst={lift_h.worst_deviation:.5f}")

# hypothesis failure: delta > alpha
rep_bad = check_measure_transform_bound(mu_h, f_h, pair, chis_pm, alpha=0.1, delta=0.2)
check("delta>alpha hypothesis-failed", rep_bad.status == "hypothesis-failed", rep_bad.params.get("reason", ""))

# --- function bound instance (gaussian on the reals) ---
pair_f = build_adjoint_pair_reals(4096, step=0.05, alpha=math.pi / 3, r=0.105,
                                  rho=0.4, eps=0.28)
sig_f = sample_lifting(g, pair_f.eta, scale=pair_f.scale)
chis_f = [j * 2 * math.pi / (4096 * 0.05) for j in (0, 1, 5, 20)]
reps_f = check_function_transform_bound(g, pair_f, chis_f, alpha=math.pi / 3, delta=0.28, t=0.35)
for r in reps_f:
    check(f"function bound [{r.statement}]", r.status == "ok" and r.holds,
          f"status={r.status} lhs={getattr(r, 'lhs', None)} rhs={getattr(r, 'rhs', None)} "
          + str(r.params.get("reason", "")))

# shift stability oracle: ||f_0.2 - f||_1; frozen value is the continuous
# modulus (quadrature 1e-4), the step-0.05 lattice sum differs at O(step^2)
a_idx = round(0.2 / 0.05)
from finharm.harmonic import shift as hshift
sdev = norm(Signal(sig.group, hshift(sig, a_idx).values - sig.values, sig.scale), 1)
frozen = ORACLES["gaussian_l1_shift_s02"]
check("gaussian shift-l1 frozen oracle", abs(sdev - frozen) <= 5e-4, f"{sdev} vs {frozen}")

print("lifting smoke OK")
