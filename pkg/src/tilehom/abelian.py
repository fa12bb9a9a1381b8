"""Finitely generated abelian groups in invariant-factor form."""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, prod

__all__ = ["FgAbelianGroup", "factorize", "invariant_factors"]


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders) -> tuple[int, ...]:
    """Canonical divisibility chain of a direct sum of cyclic groups of the given orders.

    Orders equal to 1 are dropped; 0 is not allowed here (free summands are
    tracked separately).
    """
    powers: dict[int, list[int]] = {}
    for o in orders:
        o = abs(int(o))
        if o == 0:
            raise ValueError("free summand passed as torsion order")
        for p, e in factorize(o).items():
            powers.setdefault(p, []).append(e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    chain = [1] * length
    for p, exps in powers.items():
        exps = sorted(exps)
        # largest exponents go to the end of the chain
        for i, e in enumerate(exps):
            chain[length - len(exps) + i] *= p**e
    return tuple(chain)


_TERM = re.compile(r"^Z(?:_(\d+))?(?:\^(\d+))?$")


@dataclass(frozen=True, order=True)
class FgAbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k, all d_i >= 2.

    Two groups are isomorphic exactly when their fields agree, so ``==`` is
    isomorphism.
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        facs = tuple(self.invariant_factors)
        if any(f < 2 for f in facs) or any(b % a for a, b in zip(facs, facs[1:])):
            raise ValueError(f"not an invariant factor chain: {facs}")
        object.__setattr__(self, "invariant_factors", facs)

    @classmethod
    def from_orders(cls, free_rank: int = 0, orders=()) -> "FgAbelianGroup":
        return cls(free_rank, invariant_factors([o for o in orders if abs(o) != 1]))

    @classmethod
    def free(cls, rank: int) -> "FgAbelianGroup":
        return cls(rank, ())

    @classmethod
    def parse(cls, text: str) -> "FgAbelianGroup":
        """Parse notation like ``"Z^331 + Z_2^26 + Z_4"`` (``"0"`` is trivial)."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        free, orders = 0, []
        for term in text.replace("⊕", "+").split("+"):
            m = _TERM.match(term.strip())
            if not m:
                raise ValueError(f"cannot parse group term {term!r}")
            mult = int(m.group(2)) if m.group(2) else 1
            if m.group(1):
                orders.extend([int(m.group(1))] * mult)
            else:
                free += mult
        return cls.from_orders(free, orders)

    # structure

    @property
    def torsion(self) -> "FgAbelianGroup":
        return FgAbelianGroup(0, self.invariant_factors)

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 if torsion free)."""
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def primes(self) -> list[int]:
        out = set()
        for f in self.invariant_factors:
            out.update(factorize(f))
        return sorted(out)

    def p_rank(self, p: int) -> int:
        """dim over F_p of torsion tensor F_p."""
        return sum(1 for f in self.invariant_factors if f % p == 0)

    def primary_parts(self) -> list[int]:
        """Prime-power orders of the primary decomposition, sorted."""
        out = []
        for f in self.invariant_factors:
            out.extend(p**e for p, e in factorize(f).items())
        return sorted(out)

    def tensor_order(self, q: int) -> int:
        """Number of elements of the torsion part tensored with Z/q."""
        return prod(gcd(f, q) for f in self.invariant_factors)

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_orders(
            self.free_rank + other.free_rank,
            self.invariant_factors + other.invariant_factors,
        )

    # rendering

    def __str__(self) -> str:
        return self.render(primary=True)

    def render(self, primary: bool = True) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        orders = self.primary_parts() if primary else list(self.invariant_factors)
        counts: dict[int, int] = {}
        for o in orders:
            counts[o] = counts.get(o, 0) + 1
        for o in sorted(counts):
            c = counts[o]
            parts.append(f"Z_{o}" if c == 1 else f"Z_{o}^{c}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_dict(cls, data: dict) -> "FgAbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(x) for x in data["invariant_factors"]))
