"""Exact set-valued computations: polynomial images, sumsets, shifted
intersections, simultaneous-coset fiber sets, and pair counts over G x G.

Everything here is full enumeration — no sampling, no probabilistic
shortcuts.  numpy carries the bulk work in fixed-size chunks; primes at or
above 2^31 (where int64 products could overflow) drop to plain Python
loops.  Budgets cap the number of evaluated pairs, not the answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CosetCollision,
    LengthMismatch,
    SizeBudget,
    ZeroLevel,
    ZeroPolynomial,
    ZeroShift,
)
from .field import Prime
from .poly import BiPoly, UniPoly, is_homogeneous
from .subgroup import Coset, Subgroup

DEFAULT_MAX_PAIRS = 10**8
_CHUNK = 1 << 22
_NUMPY_PRIME_LIMIT = 1 << 31  # int64 holds (p-1)^2 only below this


@dataclass(frozen=True)
class ValueSet:
    """A subset of F_p as a sorted, deduplicated tuple of residues."""

    prime: Prime
    members: tuple[int, ...]

    def __post_init__(self):
        p = self.prime.p
        prev = -1
        for v in self.members:
            if not 0 <= v < p:
                raise ValueError(f"value {v} out of range for p={p}")
            if v <= prev:
                raise ValueError("members must be strictly ascending")
            prev = v

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v: int) -> bool:
        lo, hi = 0, len(self.members)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.members[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(self.members) and self.members[lo] == v


def value_set(prime: Prime, values: Iterable[int]) -> ValueSet:
    """Build a ValueSet from any iterable, reducing mod p and deduplicating."""
    p = prime.p
    return ValueSet(prime, tuple(sorted({v % p for v in values})))


@dataclass(frozen=True)
class PairCount:
    """Level-set pair counts over G x G; total is the sum of the levels."""

    total: int
    per_level: dict[int, int]

    def __post_init__(self):
        if self.total != sum(self.per_level.values()):
            raise ValueError("total does not match per-level sum")


def _same_prime(*objs) -> Prime:
    primes = {o.prime.p for o in objs}
    if len(primes) != 1:
        raise ValueError(f"mixed primes {sorted(primes)}")
    return objs[0].prime


def _pow_table(arr: np.ndarray, max_exp: int, p: int) -> list[np.ndarray]:
    """[arr^0, arr^1, ..., arr^max_exp] reduced mod p."""
    out = [np.ones_like(arr)]
    for _ in range(max_exp):
        out.append(out[-1] * arr % p)
    return out


def _eval_grid(P: BiPoly, ablock: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """P(a, b) over the outer grid ablock x b, as an int64 matrix mod p."""
    apw = _pow_table(ablock, P.deg_x, p)
    bpw = _pow_table(b, P.deg_y, p)
    acc = np.zeros((len(ablock), len(b)), dtype=np.int64)
    for (i, j), c in P.coeffs.items():
        acc = (acc + c * (apw[i][:, None] * bpw[j][None, :] % p)) % p
    return acc


def _grid_blocks(avals: Sequence[int], bvals: Sequence[int]):
    """Yield (a-block, b-array) pairs covering the full grid, <= _CHUNK cells each."""
    b = np.asarray(bvals, dtype=np.int64)
    rows = max(1, _CHUNK // max(1, len(b)))
    a = np.asarray(avals, dtype=np.int64)
    for start in range(0, len(a), rows):
        yield a[start : start + rows], b


def image(P: BiPoly, A: ValueSet, B: ValueSet, *, max_pairs: int = DEFAULT_MAX_PAIRS) -> ValueSet:
    """{P(a, b) : a in A, b in B}, by evaluating every pair."""
    prime = _same_prime(A, B)
    if P.p != prime.p:
        raise ValueError("polynomial and sets use different primes")
    n_pairs = len(A) * len(B)
    if n_pairs > max_pairs:
        raise SizeBudget(f"|A|*|B| = {n_pairs} exceeds budget {max_pairs}")
    p = prime.p
    if p >= _NUMPY_PRIME_LIMIT:
        return ValueSet(prime, tuple(sorted({P.eval(a, b) for a in A for b in B})))
    seen: set[int] = set()
    for ablock, b in _grid_blocks(A.members, B.members):
        seen.update(np.unique(_eval_grid(P, ablock, b, p)).tolist())
    return ValueSet(prime, tuple(sorted(seen)))


def sumset(A: ValueSet, B: ValueSet, sign: int = 1) -> ValueSet:
    """A + B or A - B mod p, elementwise over all pairs."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    prime = _same_prime(A, B)
    p = prime.p
    if p >= _NUMPY_PRIME_LIMIT:
        return ValueSet(prime, tuple(sorted({(a + sign * b) % p for a in A for b in B})))
    seen: set[int] = set()
    for ablock, b in _grid_blocks(A.members, B.members):
        grid = (ablock[:, None] + sign * b[None, :]) % p
        seen.update(np.unique(grid).tolist())
    return ValueSet(prime, tuple(sorted(seen)))


def shift_intersection(G: Subgroup, mu: int) -> int:
    """|G ∩ (G + mu)| — how many g in G have g - mu also in G."""
    p = G.p
    mu %= p
    if mu == 0:
        raise ZeroShift("shift must be nonzero")
    members = G.member_set
    return sum(1 for g in G.elements if (g - mu) % p in members)


def fiber_set(fs: Sequence[UniPoly], cosets: Sequence[Coset]) -> ValueSet:
    """{x in F_p : f_i(x) lies in the i-th coset for every i}, by full scan."""
    if len(fs) == 0 or len(fs) != len(cosets):
        raise LengthMismatch(f"{len(fs)} polynomials vs {len(cosets)} cosets")
    primes = {f.p for f in fs} | {c.prime.p for c in cosets}
    if len(primes) != 1:
        raise ValueError(f"mixed primes {sorted(primes)}")
    p = primes.pop()
    prime = cosets[0].prime
    if p >= _NUMPY_PRIME_LIMIT:
        hits = [x for x in range(p) if all(f(x) in c for f, c in zip(fs, cosets))]
        return ValueSet(prime, tuple(hits))
    dense = [f.dense() for f in fs]
    member_arrs = [np.asarray(c.members, dtype=np.int64) for c in cosets]
    hits: list[int] = []
    for start in range(0, p, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, p), dtype=np.int64)
        mask = np.ones(len(xs), dtype=bool)
        for coeffs, members in zip(dense, member_arrs):
            vals = np.zeros_like(xs)
            for c in reversed(coeffs):
                vals = (vals * xs + c) % p
            idx = np.searchsorted(members, vals)
            idx = np.minimum(idx, len(members) - 1)
            mask &= members[idx] == vals
            if not mask.any():
                break
        hits.extend(xs[mask].tolist())
    return ValueSet(prime, tuple(hits))


def count_zero_pairs(P: BiPoly, G: Subgroup, *, max_pairs: int = DEFAULT_MAX_PAIRS) -> int:
    """|{(a, b) in G x G : P(a, b) = 0}|.

    Homogeneous P of degree n satisfies P(a, b) = a^n P(1, b/a) with b/a
    ranging over G, so the count collapses to |G| * #{t in G : P(1,t) = 0}
    — no G x G enumeration and hence no pair budget.  Anything else is
    counted by brute force under the budget.
    """
    if not P.coeffs:
        raise ZeroPolynomial("cannot count zeros of the zero polynomial")
    if P.p != G.p:
        raise ValueError("polynomial and subgroup use different primes")
    p = G.p
    homogeneous, _ = is_homogeneous(P)
    if homogeneous:
        f = P.subst_x(1)
        roots = sum(1 for t in G.elements if f(t) == 0)
        return G.order * roots
    n_pairs = G.order * G.order
    if n_pairs > max_pairs:
        raise SizeBudget(f"|G|^2 = {n_pairs} exceeds budget {max_pairs}")
    if p >= _NUMPY_PRIME_LIMIT:
        return sum(1 for a in G.elements for b in G.elements if P.eval(a, b) == 0)
    count = 0
    for ablock, b in _grid_blocks(G.elements, G.elements):
        count += int((_eval_grid(P, ablock, b, p) == 0).sum())
    return count


def _coset_rep(v: int, G: Subgroup) -> int:
    p = G.p
    return min(v * g % p for g in G.elements)


def count_level_pairs(
    P: BiPoly, G: Subgroup, alphas: ValueSet, *, max_pairs: int = DEFAULT_MAX_PAIRS
) -> PairCount:
    """Per-level counts of {(a, b) in G x G : P(a, b) = alpha_k}.

    The levels must be nonzero and pairwise in distinct G-cosets; both
    conditions are validated up front because the bounds quantified over
    these counts assume them.
    """
    if P.p != G.p or alphas.prime.p != G.p:
        raise ValueError("mixed primes")
    reps: dict[int, int] = {}
    for a in alphas:
        if a == 0:
            raise ZeroLevel("level values must be nonzero")
        rep = _coset_rep(a, G)
        if rep in reps:
            raise CosetCollision(f"levels {reps[rep]} and {a} share the coset of {rep}")
        reps[rep] = a
    p = G.p
    per_level = {a: 0 for a in alphas.members}
    n_pairs = G.order * G.order
    if n_pairs > max_pairs:
        raise SizeBudget(f"|G|^2 = {n_pairs} exceeds budget {max_pairs}")
    if p >= _NUMPY_PRIME_LIMIT:
        target = set(alphas.members)
        for a in G.elements:
            for b in G.elements:
                v = P.eval(a, b)
                if v in target:
                    per_level[v] += 1
        return PairCount(sum(per_level.values()), per_level)
    levels = np.asarray(alphas.members, dtype=np.int64)
    tallies = np.zeros(len(levels), dtype=np.int64)
    for ablock, b in _grid_blocks(G.elements, G.elements):
        vals = _eval_grid(P, ablock, b, p).ravel()
        idx = np.searchsorted(levels, vals)
        idx = np.minimum(idx, len(levels) - 1)
        hit = levels[idx] == vals
        tallies += np.bincount(idx[hit], minlength=len(levels))
    per_level = {int(a): int(t) for a, t in zip(levels, tallies)}
    return PairCount(int(tallies.sum()), per_level)
