"""Finite abelian groups as explicit products of cyclic factors.

Elements and characters are integer residue tuples in the balanced range
(-n/2, n/2] per factor (for even n the representative +n/2 is kept, so every
class has exactly one representative). The dual group lives on the same
residue tuples through the pairing exp(2*pi*i * sum_j a_j g_j / n_j), which
is evaluated in exact integer arithmetic over the common denominator |G|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

# Dense enumeration refuses to materialize groups larger than this.
ENUM_CAP = 1 << 16
# Addition tables (subgroup search) are quadratic in |G|; keep them small.
TABLE_CAP = 1024


class CapExceededError(RuntimeError):
    """An operation would enumerate or tabulate past its size cap."""


def _balance(r: int, n: int) -> int:
    r %= n
    return r - n if 2 * r > n else r


@dataclass(frozen=True)
class Group:
    """The group Z_{n_1} x ... x Z_{n_k} with componentwise addition."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.orders, int):
            object.__setattr__(self, "orders", (self.orders,))
        orders = tuple(int(n) for n in self.orders)
        if not orders:
            raise ValueError("a group needs at least one cyclic factor")
        if any(n < 1 for n in orders):
            raise ValueError(f"factor orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    # -- element arithmetic (tuples of balanced residues) --

    def coerce(self, x) -> tuple[int, ...]:
        """Accept a bare int for rank-1 groups, else a residue tuple."""
        if isinstance(x, (int, np.integer)):
            if self.rank != 1:
                raise ValueError(f"element of rank-{self.rank} group must be a tuple")
            return (int(x),)
        x = tuple(int(c) for c in x)
        if len(x) != self.rank:
            raise ValueError(f"element {x} has wrong rank for orders {self.orders}")
        return x

    def normalize(self, x) -> tuple[int, ...]:
        x = self.coerce(x)
        return tuple(_balance(c, n) for c, n in zip(x, self.orders))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, a, b) -> tuple[int, ...]:
        a, b = self.coerce(a), self.coerce(b)
        return tuple(_balance(x + y, n) for x, y, n in zip(a, b, self.orders))

    def neg(self, a) -> tuple[int, ...]:
        a = self.coerce(a)
        return tuple(_balance(-x, n) for x, n in zip(a, self.orders))

    def sub(self, a, b) -> tuple[int, ...]:
        return self.add(a, self.neg(b))

    def index_of(self, x) -> int:
        """Position of x in the canonical (mixed-radix, last factor fastest) order."""
        x = self.coerce(x)
        i = 0
        for c, n in zip(x, self.orders):
            i = i * n + (c % n)
        return i

    def element_at(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.size:
            raise IndexError(f"index {i} out of range for group of size {self.size}")
        digits = []
        for n in reversed(self.orders):
            digits.append(i % n)
            i //= n
        return tuple(_balance(d, n) for d, n in zip(reversed(digits), self.orders))

    def element_order(self, x) -> int:
        x = self.coerce(x)
        o = 1
        for c, n in zip(x, self.orders):
            o = math.lcm(o, n // math.gcd(c % n, n))
        return o


def elements(group: Group):
    """Iterate all elements once, in canonical order. Capped."""
    _check_enum(group)
    for i in range(group.size):
        yield group.element_at(i)


characters = elements  # the dual is presented on the same residue tuples


def _check_enum(group: Group):
    if group.size > ENUM_CAP:
        raise CapExceededError(
            f"group of size {group.size} exceeds the enumeration cap {ENUM_CAP}"
        )


@lru_cache(maxsize=64)
def element_array(group: Group) -> np.ndarray:
    """(|G|, rank) int64 array of balanced residues in canonical order."""
    _check_enum(group)
    n = group.size
    digit_cols = np.unravel_index(np.arange(n), group.orders)
    arr = np.stack(digit_cols, axis=1).astype(np.int64)
    for j, nj in enumerate(group.orders):
        col = arr[:, j]
        arr[:, j] = np.where(2 * col > nj, col - nj, col)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=64)
def _digit_array(group: Group) -> np.ndarray:
    arr = element_array(group) % np.array(group.orders, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=64)
def _weights(group: Group) -> np.ndarray:
    """Per-factor multipliers putting all phases over the denominator |G|."""
    size = group.size
    w = np.array([size // n for n in group.orders], dtype=np.int64)
    w.setflags(write=False)
    return w


def digits_to_indices(group: Group, digits: np.ndarray) -> np.ndarray:
    return np.ravel_multi_index(tuple(digits.T), group.orders)


def members_to_digits(group: Group, members: np.ndarray) -> np.ndarray:
    return members % np.array(group.orders, dtype=np.int64)


# -- pairing ---------------------------------------------------------------


def phase_numerator(group: Group, a, g) -> int:
    """Integer p with pairing(a, g) = exp(2*pi*i * p / |G|), 0 <= p < |G|."""
    a, g = group.coerce(a), group.coerce(g)
    size = group.size
    total = 0
    for x, y, n in zip(a, g, group.orders):
        total += (x % n) * (y % n) * (size // n)
    return total % size


def pairing(group: Group, a, g) -> complex:
    p = phase_numerator(group, a, g)
    return complex(np.exp(2j * np.pi * p / group.size))


def phase_block(group: Group, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Pairwise phase numerators mod |G| for two (m, rank) residue arrays.

    Products stay below |G| * max(orders) * rank, far inside int64 for any
    enumerable group.
    """
    size = group.size
    ordv = np.array(group.orders, dtype=np.int64)
    w = _weights(group)
    r = (rows % ordv) * w
    c = cols % ordv
    return (r @ c.T) % size


def arg_from_phase(group: Group, ph: np.ndarray) -> np.ndarray:
    """|principal argument| of exp(2*pi*i*ph/|G|), exact at rational points."""
    size = group.size
    m = np.minimum(ph, size - ph)
    return (2.0 * np.pi / size) * m


@lru_cache(maxsize=32)
def unit_roots(group: Group) -> np.ndarray:
    """exp(2*pi*i*t/|G|) for t = 0..|G|-1."""
    _check_enum(group)
    roots = np.exp(2j * np.pi * np.arange(group.size) / group.size)
    roots.setflags(write=False)
    return roots


# -- subsets ---------------------------------------------------------------


@dataclass(frozen=True)
class Subset:
    """An immutable subset of a group (or, identically, of its dual)."""

    group: Group
    members: frozenset

    @staticmethod
    def of(group: Group, items) -> "Subset":
        return Subset(group, frozenset(group.normalize(x) for x in items))

    @staticmethod
    def full(group: Group) -> "Subset":
        return Subset.of(group, elements(group))

    @cached_property
    def indices(self) -> np.ndarray:
        idx = np.fromiter(
            (self.group.index_of(m) for m in self.members), dtype=np.int64, count=len(self.members)
        )
        idx.sort()
        idx.setflags(write=False)
        return idx

    @cached_property
    def member_array(self) -> np.ndarray:
        """(m, rank) balanced residues, canonical order."""
        if not self.members:
            return np.empty((0, self.group.rank), dtype=np.int64)
        arr = element_array(self.group)[self.indices]
        arr.setflags(write=False)
        return arr

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return (tuple(int(c) for c in row) for row in self.member_array)

    def __contains__(self, x):
        return self.group.normalize(x) in self.members

    def is_symmetric(self) -> bool:
        g = self.group
        return all(g.neg(m) in self.members for m in self.members)

    def is_subgroup(self) -> bool:
        if self.group.zero() not in self.members:
            return False
        arr = self.member_array
        ordv = np.array(self.group.orders, dtype=np.int64)
        diffs = (arr[:, None, :] - arr[None, :, :]) % ordv
        idx = np.ravel_multi_index(tuple(diffs.reshape(-1, self.group.rank).T), self.group.orders)
        return bool(np.isin(np.unique(idx), self.indices).all())


def as_subset(group: Group, A) -> Subset:
    if isinstance(A, Subset):
        if A.group != group:
            raise ValueError("subset belongs to a different group")
        return A
    return Subset.of(group, A)


def subset_from_indices(group: Group, idx) -> Subset:
    arr = element_array(group)
    return Subset(group, frozenset(tuple(int(c) for c in arr[i]) for i in np.asarray(idx)))


def subset_from_mask(group: Group, mask: np.ndarray) -> Subset:
    return subset_from_indices(group, np.flatnonzero(mask))


# -- annihilators, sumsets -------------------------------------------------


def annihilator(group: Group, A) -> Subset:
    """Characters that are exactly 1 on all of A; computed in integers."""
    A = as_subset(group, A)
    _check_enum(group)
    chars = element_array(group)
    if len(A) == 0:
        return subset_from_indices(group, np.arange(group.size))
    arr = A.member_array
    keep = np.ones(group.size, dtype=bool)
    block = max(1, (1 << 22) // max(1, len(A)))
    for lo in range(0, group.size, block):
        ph = phase_block(group, arr, chars[lo : lo + block])
        keep[lo : lo + block] = (ph == 0).all(axis=0)
    return subset_from_mask(group, keep)


def sumset(group: Group, A, B) -> Subset:
    A, B = as_subset(group, A), as_subset(group, B)
    if len(A) == 0 or len(B) == 0:
        return Subset(group, frozenset())
    ordv = np.array(group.orders, dtype=np.int64)
    s = (A.member_array[:, None, :] + B.member_array[None, :, :]) % ordv
    idx = np.unique(np.ravel_multi_index(tuple(s.reshape(-1, group.rank).T), group.orders))
    return subset_from_indices(group, idx)


def negated(group: Group, A) -> Subset:
    A = as_subset(group, A)
    return Subset(group, frozenset(group.neg(m) for m in A.members))


def difference_set(group: Group, A) -> Subset:
    return sumset(group, A, negated(group, A))


def doubling_constant(group: Group, A) -> Fraction:
    A = as_subset(group, A)
    if len(A) == 0:
        raise ValueError("doubling constant of the empty set is undefined")
    return Fraction(len(sumset(group, A, A)), len(A))


def subgroup_generated(group: Group, gens) -> Subset:
    """Closure of a generating set under addition (BFS over index sets)."""
    _check_enum(group)
    gen_arr = np.array([group.normalize(g) for g in gens], dtype=np.int64).reshape(-1, group.rank)
    ordv = np.array(group.orders, dtype=np.int64)
    zero_idx = group.index_of(group.zero())
    seen = {zero_idx}
    frontier = np.array([group.zero()], dtype=np.int64).reshape(1, group.rank)
    while frontier.size and gen_arr.size:
        nxt = (frontier[:, None, :] + gen_arr[None, :, :]) % ordv
        idx = np.unique(np.ravel_multi_index(tuple(nxt.reshape(-1, group.rank).T), group.orders))
        fresh = [i for i in idx.tolist() if i not in seen]
        seen.update(fresh)
        frontier = element_array(group)[np.array(fresh, dtype=np.int64)] if fresh else np.empty((0, group.rank))
    return subset_from_indices(group, np.array(sorted(seen), dtype=np.int64))


# -- subgroup enumeration ---------------------------------------------------


@lru_cache(maxsize=16)
def add_table(group: Group) -> np.ndarray:
    """|G| x |G| table of indices of pairwise sums."""
    if group.size > TABLE_CAP:
        raise CapExceededError(
            f"addition table for size {group.size} exceeds the cap {TABLE_CAP}"
        )
    digs = _digit_array(group)
    ordv = np.array(group.orders, dtype=np.int64)
    s = (digs[:, None, :] + digs[None, :, :]) % ordv
    table = np.ravel_multi_index(tuple(s.reshape(-1, group.rank).T), group.orders)
    table = table.reshape(group.size, group.size).astype(np.int32)
    table.setflags(write=False)
    return table


def _cyclic_index_sets(group: Group):
    """Distinct cyclic subgroups as sorted index arrays, plus a generator each."""
    arr = element_array(group)
    ordv = np.array(group.orders, dtype=np.int64)
    out = {}
    for i in range(group.size):
        g = arr[i]
        o = group.element_order(tuple(int(c) for c in g))
        mults = (np.arange(o, dtype=np.int64)[:, None] * g[None, :]) % ordv
        idx = np.unique(np.ravel_multi_index(tuple(mults.T), group.orders))
        key = idx.tobytes()
        if key not in out:
            out[key] = (idx, i, o)
    return list(out.values())


def prime_power_cyclic_subgroups(group: Group):
    """Cyclic subgroups of prime-power order; these generate every subgroup."""
    result = []
    for idx, gen, o in _cyclic_index_sets(group):
        if o == 1:
            continue
        f = _smallest_prime_factor(o)
        p = f
        while o % p == 0:
            o //= p
        if o == 1:
            result.append((idx, gen))
    return result


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def enumerate_subgroups(
    group: Group, *, max_closures: int = 400_000, max_cells: int = 200_000_000
):
    """All subgroups by closure search, or a documented fallback family.

    Returns (list of Subset, complete flag). The search adds one prime-power
    cyclic subgroup at a time; since the sum of a subgroup and a cyclic
    subgroup is already a subgroup, each closure is a single table gather.
    When the closure budget runs out the fallback family is returned instead
    (complete=False): trivial and full subgroups, all prime-power cyclic
    subgroups, character kernels, and pairwise sums up to the budget.
    """
    table = add_table(group)
    n = group.size
    candidates = prime_power_cyclic_subgroups(group)
    trivial = np.array([group.index_of(group.zero())], dtype=np.int64)
    found = {}

    def key_of(idx):
        mask = np.zeros(n, dtype=bool)
        mask[idx] = True
        return np.packbits(mask).tobytes()

    found[key_of(trivial)] = trivial
    queue = [trivial]
    closures = cells = 0
    complete = True
    while queue:
        H = queue.pop()
        hset = set(H.tolist())
        for cyc, gen in candidates:
            if gen in hset:
                continue
            closures += 1
            cells += len(H) * len(cyc)
            if closures > max_closures or cells > max_cells:
                complete = False
                queue = []
                break
            new = np.unique(table[np.ix_(H, cyc)])
            k = key_of(new)
            if k not in found:
                found[k] = new
                queue.append(new)
        if not complete:
            break
    if not complete:
        fam = fallback_subgroup_family(group)
        return fam, False
    subs = sorted(found.values(), key=lambda a: (len(a), a.tolist()))
    return [subset_from_indices(group, idx) for idx in subs], True


def fallback_subgroup_family(group: Group, *, max_pair_sums: int = 2000):
    """A deduplicated subgroup family used when full enumeration is infeasible:
    trivial, full, all prime-power cyclic subgroups, kernels of all characters,
    and pairwise sums of the cyclic members up to a budget."""
    table = add_table(group)
    n = group.size
    fam = {}

    def put(idx):
        mask = np.zeros(n, dtype=bool)
        mask[idx] = True
        fam.setdefault(np.packbits(mask).tobytes(), np.asarray(idx, dtype=np.int64))

    put(np.array([group.index_of(group.zero())], dtype=np.int64))
    put(np.arange(n, dtype=np.int64))
    cyclics = [idx for idx, _gen in prime_power_cyclic_subgroups(group)]
    for idx in cyclics:
        put(idx)
    chars = element_array(group)
    all_elems = element_array(group)
    block = max(1, (1 << 22) // n)
    for lo in range(0, n, block):
        ph = phase_block(group, all_elems, chars[lo : lo + block])
        for j in range(ph.shape[1]):
            put(np.flatnonzero(ph[:, j] == 0))
    pairs = 0
    for i in range(len(cyclics)):
        for j in range(i + 1, len(cyclics)):
            if pairs >= max_pair_sums:
                break
            pairs += 1
            put(np.unique(table[np.ix_(cyclics[i], cyclics[j])]))
    subs = sorted(fam.values(), key=lambda a: (len(a), a.tolist()))
    return [subset_from_indices(group, idx) for idx in subs]


# -- catalogue of abelian groups --------------------------------------------


def _partitions(n: int):
    """Integer partitions of n as nonincreasing tuples."""
    if n == 0:
        yield ()
        return
    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first, *rest)
    yield from rec(n, n)


def _prime_factorization(n: int):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def abelian_group_catalogue(max_order: int):
    """One Group per isomorphism type of abelian group of order <= max_order.

    Factors are prime-power cyclic groups in ascending order (primary
    decomposition), so distinct tuples are distinct isomorphism types.
    """
    result = []
    for n in range(1, max_order + 1):
        if n == 1:
            result.append(Group((1,)))
            continue
        per_prime = []
        for p, e in _prime_factorization(n):
            per_prime.append([tuple(p**part for part in parts) for parts in _partitions(e)])
        def combine(i, acc):
            if i == len(per_prime):
                result.append(Group(tuple(sorted(acc))))
                return
            for choice in per_prime[i]:
                combine(i + 1, acc + list(choice))
        combine(0, [])
    return result
