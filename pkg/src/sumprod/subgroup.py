"""Multiplicative subgroups of F_p* and their cosets.

F_p* is cyclic, so there is exactly one subgroup per divisor of p - 1; each
is generated by g^((p-1)/d) for the canonical (smallest) primitive root g.
Cosets are named by their smallest member, which makes every partition and
report deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .errors import ZeroValue
from .field import Prime, _primitive_root_int, divisors


@dataclass(frozen=True)
class Subgroup:
    """The order-d subgroup of F_p*, with an O(1) membership set."""

    prime: Prime
    order: int
    generator: int
    elements: tuple[int, ...]  # ascending
    member_set: frozenset[int] = dc_field(repr=False, compare=False, default=frozenset())

    def __post_init__(self):
        if not self.member_set:
            object.__setattr__(self, "member_set", frozenset(self.elements))

    @property
    def p(self) -> int:
        return self.prime.p

    def __contains__(self, v: int) -> bool:
        return v in self.member_set

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Subgroup(p={self.p}, order={self.order}, generator={self.generator})"


def subgroup_of_order(prime: Prime, d: int) -> Subgroup:
    """The unique subgroup with |G| = d; requires d | p - 1."""
    p = prime.p
    if d < 1 or (p - 1) % d != 0:
        raise ValueError(f"order {d} does not divide p - 1 = {p - 1}")
    g = pow(_primitive_root_int(p), (p - 1) // d, p)
    elems = [1]
    acc = g
    while acc != 1:
        elems.append(acc)
        acc = acc * g % p
    assert len(elems) == d
    return Subgroup(prime, d, g, tuple(sorted(elems)))


def enumerate_subgroups(prime: Prime) -> list[Subgroup]:
    """All subgroups of F_p*, ascending by order (one per divisor of p-1)."""
    return [subgroup_of_order(prime, d) for d in divisors(prime.p - 1)]


def is_admitted(G: Subgroup, n: int) -> bool:
    """Size window for degree-n instances: 100 n^3 < |G| and |G| < sqrt(p)/3.

    Both comparisons are exact on integers (the square root never gets
    evaluated: the right inequality is 9 |G|^2 < p).
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    return 100 * n**3 < G.order and 9 * G.order**2 < G.p


@dataclass(frozen=True)
class Coset:
    """A multiplicative coset v * G, named by its smallest member."""

    prime: Prime
    representative: int
    members: tuple[int, ...]  # ascending
    member_set: frozenset[int] = dc_field(repr=False, compare=False, default=frozenset())

    def __post_init__(self):
        if not self.member_set:
            object.__setattr__(self, "member_set", frozenset(self.members))

    def __contains__(self, v: int) -> bool:
        return v in self.member_set

    def __len__(self) -> int:
        return len(self.members)


def coset_of(v: int, G: Subgroup) -> Coset:
    """The coset containing v; rejects 0, which lies in no coset."""
    p = G.p
    v %= p
    if v == 0:
        raise ZeroValue("0 belongs to no multiplicative coset")
    members = tuple(sorted(v * g % p for g in G.elements))
    return Coset(G.prime, members[0], members)


@dataclass(frozen=True)
class CosetPartition:
    """Rows (representative, values-from-the-input-in-that-coset), plus a
    flag for any zeros that were set aside."""

    rows: tuple[tuple[int, tuple[int, ...]], ...]
    zero_present: bool

    def __len__(self) -> int:
        return len(self.rows)


def coset_partition(values: Iterable[int], G: Subgroup) -> CosetPartition:
    """Group the given values by coset, rows ascending by representative.

    Zero cannot be placed (it is absorbed by every multiplication) and is
    reported via the flag instead of a row.
    """
    p = G.p
    zero_seen = False
    by_rep: dict[int, set[int]] = {}
    for v in values:
        v %= p
        if v == 0:
            zero_seen = True
            continue
        rep = min(v * g % p for g in G.elements)
        by_rep.setdefault(rep, set()).add(v)
    rows = tuple((rep, tuple(sorted(by_rep[rep]))) for rep in sorted(by_rep))
    return CosetPartition(rows, zero_seen)
