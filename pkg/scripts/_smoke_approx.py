import json
import math

from finharm.approx import (
    AdjointPair,
    ParameterError,
    build_adjoint_pair_circle,
    build_adjoint_pair_reals,
    build_adjoint_pair_tower,
    build_circle_approx,
    build_integer_approx,
    build_real_approx,
    build_tower_approx,
    certify_approximation,
    check_bohr_transfer,
    eta_array,
    eta_point,
    make_adjoint_pairs,
    pairing_deviation,
    preimage_of_descriptor,
    product_approx,
    verify_strong_adjointness,
)
from finharm.lca import Arc, Box, Circle, Interval, QuotientTower, SubgroupLevel

with open("tests/data/frozen_oracles.json") as fh:
    FROZEN = json.load(fh)

# builder validation
ok = False
try:
    build_integer_approx(9, 3)
except ParameterError:
    ok = True
assert ok, "k >= n/4 must be rejected"

# integer approx certified on its stated window
am = build_integer_approx(9, 2)
cert = certify_approximation(am, Interval(2), Interval(0))
assert cert.certified, [c for c in cert.checks if not c.passed]
assert am.strict

# circle approx
ac = build_circle_approx(64)
cert = certify_approximation(ac, Arc(math.pi), Arc(2 * math.pi / 64))
assert cert.certified, cert.failures()
assert abs(eta_point(ac, 16) - math.pi / 2) < 1e-12

# real approx
ar = build_real_approx(101, 0.25)
cert = certify_approximation(ar, Interval(5.0), Interval(0.2))
assert cert.certified, cert.failures()

# tower approx
tw = QuotientTower(2, 4, 2)
at = build_tower_approx(tw, 1, 3)
cert = certify_approximation(at, SubgroupLevel(1), SubgroupLevel(3))
assert cert.certified, cert.failures()
assert not at.strict
at2 = build_tower_approx(tw, 1, 4)
assert at2.strict

# product
ap = product_approx(build_circle_approx(16), build_integer_approx(9, 2))
cert = certify_approximation(
    ap, Box((Arc(math.pi), Interval(2))), Box((Arc(2 * math.pi / 16), Interval(0)))
)
assert cert.certified, cert.failures()
pre = preimage_of_descriptor(ap, Box((Arc(math.pi / 2), Interval(1))))
assert len(pre) == 9 * 3, len(pre)

# adjoint pair: circle, frozen scaling oracle
pair = build_adjoint_pair_circle(4096, 0.1, 0.02, eps=0.05)
fro = FROZEN["circle_scaling_n4096_r002"]
cnt = len(preimage_of_descriptor(pair.eta, pair.nbhd))
assert cnt == fro["count"], (cnt, fro["count"])
assert abs(pair.scale - fro["scale"]) <= 1e-15 + 1e-12 * abs(fro["scale"])
cert = verify_strong_adjointness(pair)
assert cert.certified, [(c.name, c.note, c.witness) for c in cert.failures()]
dev = pairing_deviation(pair)
assert dev <= 1e-10, dev

reps = check_bohr_transfer(pair, Arc(0.05), Interval(2))
assert [r.statement for r in reps] == [f"bohr-transfer-{i}" for i in (1, 2, 3, 4)]
assert all(r.holds for r in reps), [(r.statement, r.status, r.witness) for r in reps]

# adjoint pair: reals, frozen scaling oracle
pr = build_adjoint_pair_reals(4096, 0.05, 0.5, 2.525, 0.08, eps=0.15)
fro = FROZEN["real_scaling_d005_r2525"]
cnt = len(preimage_of_descriptor(pr.eta, pr.nbhd))
assert cnt == fro["count"], (cnt, fro["count"])
assert abs(pr.scale - fro["scale"]) <= 1e-12
assert pr.exact_pairing
cert = verify_strong_adjointness(pr)
assert cert.certified, [(c.name, c.note, c.witness) for c in cert.failures()]
assert pairing_deviation(pr) <= 1e-10

reps = check_bohr_transfer(pr, Interval(3.0), Interval(0.12))
assert all(r.holds for r in reps), [(r.statement, r.status, r.witness) for r in reps]

# hypothesis-failed path: X outside the window
reps = check_bohr_transfer(pr, Interval(99.0), Interval(0.11))
assert reps[0].status == "hypothesis-failed"

# adjoint pair: tower
pt = build_adjoint_pair_tower(tw, 1, 3, 0.5, eps=0.25)
cert = verify_strong_adjointness(pt)
assert cert.certified, [(c.name, c.note, c.witness) for c in cert.failures()]
assert pairing_deviation(pt) <= 1e-12
reps = check_bohr_transfer(pt, SubgroupLevel(2), SubgroupLevel(2))
assert all(r.holds for r in reps), [(r.statement, r.status, r.witness) for r in reps]

# make_adjoint_pairs refusal on an incompatible pair
ok = False
try:
    make_adjoint_pairs(Circle(), Arc(3.0), Interval(5), 0.1)
except ParameterError:
    ok = True
assert ok

print("approx smoke OK")
