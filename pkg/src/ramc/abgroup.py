"""Finite abelian groups as elementary divisor lists.

Convention: divisors are stored non-increasing with each d_{i+1} | d_i
(the order class groups are printed in, e.g. [27, 9, 3]); the trivial
group is the empty list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod


@dataclass(frozen=True)
class AbelianGroupStructure:
    divisors: tuple[int, ...] = field(default=())

    def __post_init__(self):
        divs = tuple(int(d) for d in self.divisors if int(d) != 1)
        for d in divs:
            if d < 1:
                raise ValueError(f"invalid elementary divisor {d}")
        divs = tuple(sorted(divs, reverse=True))
        for a, b in zip(divs, divs[1:]):
            if a % b != 0:
                raise ValueError(f"not a divisor chain: {divs}")
        object.__setattr__(self, "divisors", divs)

    @property
    def order(self) -> int:
        return prod(self.divisors) if self.divisors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.divisors

    @property
    def exponent(self) -> int:
        return self.divisors[0] if self.divisors else 1

    def __str__(self):
        return "[" + ",".join(str(d) for d in self.divisors) + "]" if self.divisors else "[]"

    @classmethod
    def from_any(cls, value) -> "AbelianGroupStructure":
        if isinstance(value, AbelianGroupStructure):
            return value
        return cls(tuple(value))


def group_from_orders_of_powers(counts: dict[int, int], p: int) -> AbelianGroupStructure:
    """Reconstruct a finite abelian p-group from the counts
    counts[k] = #{x : x^(p^k) = 1}.  counts must include every k up to the
    exponent's valuation."""
    ks = sorted(counts)
    if ks[0] != 0 or counts[0] != 1:
        raise ValueError("counts must start with counts[0] = 1")
    # number of divisors with valuation >= k is log_p(counts[k]/counts[k-1])
    divisors = []
    prev = 1
    multiplicities = []
    for k in ks[1:]:
        ratio = counts[k] // prev
        if counts[k] % prev or ratio < 1:
            raise ValueError("inconsistent power counts")
        e = 0
        while ratio > 1:
            if ratio % p:
                raise ValueError("counts not a power of p")
            ratio //= p
            e += 1
        multiplicities.append(e)
        prev = counts[k]
    for k, (e_k, e_next) in enumerate(zip(multiplicities, multiplicities[1:] + [0]), start=1):
        for _ in range(e_k - e_next):
            divisors.append(p ** k)
    return AbelianGroupStructure(tuple(sorted(divisors, reverse=True)))
