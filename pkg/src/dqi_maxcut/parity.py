"""GF(2) bit vectors and the edge-subset -> vertex-parity map.

An edge subset beta (one bit per edge index) maps to the vector of vertex
degree parities alpha = B^T beta, where B is the edge-vertex incidence
matrix.  Vectors with alpha = 0 are exactly the even-degree subgraphs
(the cycle space).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graphs import Graph


@dataclass(frozen=True)
class BitVector:
    """Immutable GF(2) vector backed by an int bitset (bit i = index i)."""

    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside the declared length")

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(0, length)

    @classmethod
    def from_indices(cls, indices: Iterable[int], length: int) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise ValueError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(bits, length)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitVector":
        """Parse the hex serialization (least-significant bit = index 0)."""
        return cls(int(text, 16) if text else 0, length)

    def to_hex(self) -> str:
        width = max(1, (self.length + 3) // 4)
        return format(self.bits, f"0{width}x")

    def weight(self) -> int:
        return self.bits.bit_count()

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def indices(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.bits ^ other.bits, self.length)

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __bool__(self) -> bool:
        return self.bits != 0


def vertex_masks(graph: Graph) -> list[int]:
    """Per-edge vertex-pair mask: bit u | bit v for edge (u, v).

    These are the rows of the incidence matrix B; XOR-ing the masks of the
    edges in beta evaluates B^T beta.
    """
    return [(1 << u) | (1 << v) for u, v in graph.edges]


def incidence_rows(graph: Graph) -> list[BitVector]:
    """Incidence matrix as per-edge rows over the vertex index space."""
    return [BitVector(m, graph.n) for m in vertex_masks(graph)]


def parity_map(graph: Graph, beta: BitVector) -> BitVector:
    """Vertex degree parities of the subgraph beta (alpha = B^T beta)."""
    if beta.length != graph.m:
        raise ValueError(f"edge vector length {beta.length} != m = {graph.m}")
    acc = 0
    bits = beta.bits
    masks = vertex_masks(graph)
    while bits:
        e = (bits & -bits).bit_length() - 1
        acc ^= masks[e]
        bits &= bits - 1
    return BitVector(acc, graph.n)


def is_cycle_vector(graph: Graph, beta: BitVector) -> bool:
    """True iff beta has even degree at every vertex (lies in the cycle space)."""
    return parity_map(graph, beta).bits == 0


def injectivity_radius(graph: Graph):
    """Largest l such that the parity map is injective on {beta : |beta| <= l}.

    Equals floor((g - 1) / 2) for finite girth g; infinite on forests, where
    the map has trivial kernel.
    """
    from .graphs import girth

    g = girth(graph)
    if not g.finite:
        return g.value  # math.inf
    return (g.value - 1) // 2
