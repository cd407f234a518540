"""Scratch smoke test for the stability module."""

import math
import sys

import numpy as np

sys.path.insert(0, "src")

from finharm.groups import Group, Subset, as_subset
from finharm.stability import (
    PartialMap,
    bohr_chain_check,
    character_map,
    closeness_to_character,
    fit_character,
    is_eps_close,
    is_eps_homomorphic,
    partial_map,
    perturbed_character,
)

SEED = 42


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    if not ok:
        sys.exit(1)


rng = np.random.default_rng(SEED)

# exact character: zero closeness, both strategies recover it
g12 = Group((12,))
src = (5,)
gmap = character_map(g12, src)
fit_b = fit_character(gmap, Subset.full(g12), "brute")
fit_f = fit_character(gmap, Subset.full(g12), "factorwise")
check("exact char brute", fit_b.character == src and fit_b.closeness <= 1e-12, str(fit_b))
check("exact char factorwise", fit_f.character == src and fit_f.closeness <= 1e-12, str(fit_f))

# noisy characters across random groups, delta = 0.05
delta = 0.05
shapes = [(8,), (4096,), (64, 64), (4, 3, 5), (2, 2, 3, 7), (2048,), (9, 49)]
for orders in shapes:
    grp = Group(orders)
    chi = tuple(int(rng.integers(0, n)) for n in orders)
    chi = grp.normalize(chi)
    noisy = perturbed_character(grp, chi, delta, rng)
    fb = fit_character(noisy, Subset.full(grp), "brute")
    ff = fit_character(noisy, Subset.full(grp), "factorwise")
    check(f"noisy recover {orders}", fb.character == chi and fb.closeness <= delta + 1e-12,
          f"{fb.character} vs {chi} clo={fb.closeness:.4f}")
    check(f"factorwise==brute {orders}", ff.character == fb.character, f"{ff.character}")

# near-Nyquist frequency: wrap-prone increments
g4096 = Group((4096,))
chi_nyq = g4096.normalize((2048,))
noisy_nyq = perturbed_character(g4096, chi_nyq, delta, rng)
fb = fit_character(noisy_nyq, Subset.full(g4096), "brute")
ff = fit_character(noisy_nyq, Subset.full(g4096), "factorwise")
check("nyquist brute", fb.character == chi_nyq, str(fb.character))
check("nyquist factorwise", ff.character == fb.character, str(ff.character))

# eps-homomorphic: character exactly, quadratic phase not
gv = character_map(g12, (7,))
ok, worst, wit = is_eps_homomorphic(gv, Subset.full(g12), 1e-12)
check("character 0-homomorphic", ok and worst <= 1e-12, f"worst={worst:.2e}")

g16 = Group((16,))
quad = partial_map(g16, Subset.full(g16), lambda x: np.exp(2j * np.pi * (x[0] * x[0]) / 16))
ok, worst, wit = is_eps_homomorphic(quad, Subset.full(g16), 0.3)
check("quadratic phase fails", not ok and wit is not None, f"worst={worst:.3f} wit={wit}")

# eps-close: f = g and f = -g
f1 = character_map(g12, (3,))
f2 = partial_map(g12, Subset.full(g12), lambda x: -np.exp(2j * np.pi * ((3 * x[0]) % 12) / 12))
ok, worst, _ = is_eps_close(f1, f1, Subset.full(g12), 0.0)
check("f close to f", ok and worst == 0.0)
ok, worst, _ = is_eps_close(f1, f2, Subset.full(g12), 0.1)
check("f vs -f worst pi", not ok and abs(worst - math.pi) <= 1e-12, f"{worst}")

# noise robustness of closeness value
clo = closeness_to_character(noisy_nyq, chi_nyq)
check("closeness <= delta", clo <= delta + 1e-9, f"{clo:.4f}")

# bohr chain: constant subgroup chain in Z_64
g64 = Group((64,))
H = as_subset(g64, [(8 * k,) for k in range(8)])
rep = bohr_chain_check([H, H, H], math.pi / 3, math.pi / 2)
check("subgroup chain", rep.status == "ok" and rep.holds, f"{rep.status} lhs={rep.lhs}")

# dyadic interval chain in Z_256: A_j = {|x| <= 3 * 2^(3-j)}
g256 = Group((256,))
chain = [as_subset(g256, [(x,) for x in range(-3 * 2 ** (3 - j), 3 * 2 ** (3 - j) + 1)])
         for j in range(4)]
rep = bohr_chain_check(chain, math.pi / 3, math.pi / 2)
check("dyadic chain", rep.status == "ok" and rep.holds,
      f"{rep.status} lhs={rep.lhs} indices={rep.params['indices']}")

# hypothesis failures
bad = bohr_chain_check([H, H], 2.5, math.pi / 2)
check("alpha out of range", bad.status == "hypothesis-failed")
asym = as_subset(g64, [(0,), (3,)])
bad = bohr_chain_check([asym, asym], math.pi / 3, math.pi / 3)
check("asymmetric set rejected", bad.status == "hypothesis-failed")
small = as_subset(g64, [(0,), (16,), (-16,)])
big = as_subset(g64, [(0,), (16,), (-16,), (32,)])
bad = bohr_chain_check([small, big], math.pi / 3, math.pi / 3)
check("non-nested rejected", bad.status == "hypothesis-failed")
escape = bohr_chain_check(
    [as_subset(g64, [(0,), (1,), (-1,)]), as_subset(g64, [(0,), (1,), (-1,)])],
    math.pi / 3, math.pi / 3,
)
check("sumset escape rejected", escape.status == "hypothesis-failed",
      str(escape.witness))

# value errors
try:
    fit_character(character_map(Group((17,)), (3,)), Subset.full(Group((17,))), "brute", cap=8)
    check("cap enforced", False)
except ValueError:
    check("cap enforced", True)
try:
    dom = as_subset(g12, [(0,), (1,), (2,)])
    fit_character(character_map(g12, (1,), dom), dom, "factorwise")
    check("missing line rejected", False)
except ValueError:
    check("missing line rejected", True)
try:
    PartialMap(g12, Subset.full(g12), tuple([2.0] * 12))
    check("unit modulus enforced", False)
except ValueError:
    check("unit modulus enforced", True)

print("stability smoke OK")
