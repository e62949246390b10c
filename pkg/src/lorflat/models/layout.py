"""Basis layouts shared by the table builders and the extension data.

Each family orders its basis as ``e``, then the blocks of ``h`` in table
order, then ``f`` (family g1 has no ``f``).  A :class:`Layout` maps block
coordinates to positions in the full basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..linalg import ZERO, Vector


def pair_names(prefix_a: str, prefix_b: str, r: int) -> list:
    out = []
    for i in range(1, r + 1):
        out += [f"{prefix_a}{i}", f"{prefix_b}{i}"]
    return out


def seq_names(prefix: str, k: int) -> list:
    return [f"{prefix}{i}" for i in range(1, k + 1)]


@dataclass(frozen=True)
class Layout:
    blocks: tuple  # ((name, size), ...)
    names: tuple

    @classmethod
    def make(cls, spec: Sequence[tuple]) -> "Layout":
        """``spec`` lists ``(block, basis names)`` in order."""
        return cls(tuple((b, len(ns)) for b, ns in spec), tuple(n for _, ns in spec for n in ns))

    @property
    def dim(self) -> int:
        return len(self.names)

    def offset(self, block: str) -> int:
        off = 0
        for b, k in self.blocks:
            if b == block:
                return off
            off += k
        raise KeyError(block)

    def size(self, block: str) -> int:
        return dict(self.blocks)[block]

    def index(self, block: str, k: int = 0) -> int:
        return self.offset(block) + k

    def vec(self, **parts) -> Vector:
        """Full coordinate vector from block pieces (scalars for 1-dim blocks)."""
        out = [ZERO] * self.dim
        for block, val in parts.items():
            off = self.offset(block)
            if isinstance(val, (tuple, list)):
                for k, c in enumerate(val):
                    out[off + k] += c
            else:
                out[off] += val
        return tuple(out)

    def part(self, x: Sequence, block: str) -> Vector:
        off = self.offset(block)
        return tuple(x[off:off + self.size(block)])
