from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounter:
    """Scalar operation tally.

    ``base_multiplications`` counts the products formed at the bottom of a
    recursion (leaf kernels and 2×2 multiplication events);
    ``scalar_multiplications`` additionally includes scalings by constants
    other than 0 and ±1. Sign flips are free.
    """

    base_multiplications: int = 0
    scalar_multiplications: int = 0
    scalar_additions: int = 0

    def __add__(self, other: OpCounter) -> OpCounter:
        return OpCounter(
            self.base_multiplications + other.base_multiplications,
            self.scalar_multiplications + other.scalar_multiplications,
            self.scalar_additions + other.scalar_additions,
        )

    def __iadd__(self, other: OpCounter) -> OpCounter:
        self.base_multiplications += other.base_multiplications
        self.scalar_multiplications += other.scalar_multiplications
        self.scalar_additions += other.scalar_additions
        return self
