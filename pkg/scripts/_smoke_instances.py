import sys

sys.path.insert(0, "src")

import numpy as np

from finharm.bohr import (
    check_bohr_in_spec,
    check_energy_lower_bound,
    check_smoothness_decay,
    check_spec_bohr_in_diffset,
    check_spec_size_bounds,
)
from finharm import instances as inst
from finharm.stability import bohr_chain_check, closeness_to_character, fit_character

rng = np.random.default_rng(inst.SEED)

# five checks, a few hundred instances each, all must conclude ok
for k in range(300):
    f, D = inst.energy_instance(rng, 256)
    r = check_energy_lower_bound(f, D)
    assert r.status == "ok", (k, r)

for k in range(300):
    f, D, alpha, t = inst.bohr_spec_instance(rng, 256)
    r = check_bohr_in_spec(f, D, alpha, t)
    assert r.status == "ok", (k, r)

for k in range(300):
    f, D, alpha, t = inst.diffset_instance(rng, 256)
    r = check_spec_bohr_in_diffset(f, D, alpha, t)
    assert r.status == "ok", (k, r)

for k in range(300):
    f, D, t = inst.spec_size_instance(rng, 256)
    r = check_spec_size_bounds(f, D, t)
    assert r.status == "ok", (k, r)

for k in range(300):
    variant = "sup" if k % 2 == 0 else "l1"
    f, C, D, t, alpha, eps = inst.smoothness_instance(rng, 256, variant)
    r = check_smoothness_decay(f, C, D, t, alpha, eps, variant=variant)
    assert r.status == "ok", (k, variant, r)

print("five checks: 1500 instances ok")

f6, H6 = inst.z6_energy_equality()
r6 = check_energy_lower_bound(f6, H6)
assert r6.status == "ok"
assert abs(r6.lhs - 1.0 / 27.0) < 1e-12 and abs(r6.rhs - 1.0 / 27.0) < 1e-12, r6
print("z6 equality:", r6.lhs, r6.rhs)

for k in range(60):
    g, chi, pmap, A0 = inst.noisy_character_instance(rng, 1024)
    fb = fit_character(pmap, A0, strategy="brute")
    ff = fit_character(pmap, A0, strategy="factorwise")
    assert fb.character == g.normalize(chi), (k, g.orders, chi, fb)
    assert ff.character == fb.character, (k, g.orders, fb, ff)
    assert fb.closeness <= 0.05 + 1e-12
    assert closeness_to_character(pmap, chi) <= 0.05 + 1e-12
print("noisy fits: 60 ok")

for k in range(60):
    sets, alpha, beta = inst.subgroup_chain(rng, 1024)
    r = bohr_chain_check(sets, alpha, beta)
    assert r.status == "ok", (k, r)
for k in range(60):
    sets, alpha, beta = inst.interval_chain(rng, 1024)
    r = bohr_chain_check(sets, alpha, beta)
    assert r.status == "ok", (k, r)
for k in range(60):
    sets, alpha, beta = inst.product_chain(rng, 1024)
    r = bohr_chain_check(sets, alpha, beta)
    assert r.status == "ok", (k, r)
print("chains: 180 ok")

cs, rs, ts = inst.circle_pair_sweep(), inst.real_pair_sweep(), inst.tower_pair_sweep()
print("sweep sizes:", len(cs), len(rs), len(ts))
assert len(cs) >= 100 and len(rs) >= 100 and len(ts) >= 100

print("instances smoke OK")
