"""Finite dimensional C*-algebras as block-size lists, and their canonical trace.

A multimatrix algebra B = M_{n_1} + ... + M_{n_m} is described by its block
sizes alone.  The canonical trace weights each block by n_r / dim(B); it is
the unique tracial state whose multiplication map m: B (x) B -> B satisfies
m m* = dim(B) * id with respect to the induced inner product, and everything
downstream only ever consumes dim(B).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AlgebraShape:
    """Ordered matrix block sizes (n_1, ..., n_m) of a multimatrix algebra."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks:
            raise ValueError("AlgebraShape needs at least one block")
        if any(b < 1 for b in blocks):
            raise ValueError(f"block sizes must be >= 1, got {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dim(self) -> int:
        return sum(b * b for b in self.blocks)

    def identity(self) -> "BlockElement":
        return BlockElement(tuple(np.eye(b, dtype=complex) for b in self.blocks))

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.blocks)


def parse_shape(text: str) -> AlgebraShape:
    """Parse a comma-separated block list, e.g. "2,1"."""
    try:
        blocks = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad algebra shape {text!r}") from exc
    return AlgebraShape(blocks)


@dataclass(frozen=True)
class BlockElement:
    """An element of a multimatrix algebra, one matrix per block."""

    blocks: tuple

    def __post_init__(self):
        mats = tuple(np.asarray(m, dtype=complex) for m in self.blocks)
        for m in mats:
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError(f"blocks must be square matrices, got shape {m.shape}")
        object.__setattr__(self, "blocks", mats)

    def matches(self, shape: AlgebraShape) -> bool:
        return len(self.blocks) == len(shape.blocks) and all(
            m.shape[0] == b for m, b in zip(self.blocks, shape.blocks)
        )


def dim_b(shape: AlgebraShape) -> int:
    """Total dimension sum n_r^2; the parameter every other module consumes."""
    return shape.dim


def plancherel_trace(shape: AlgebraShape, a: BlockElement) -> complex:
    """The canonical tracial state: sum_r (n_r / dim B) Tr(A_r)."""
    if not a.matches(shape):
        raise ValueError(f"element blocks do not match shape {shape}")
    dim = shape.dim
    return sum((b / dim) * np.trace(m) for b, m in zip(shape.blocks, a.blocks))


def _multiplication_matrix(shape: AlgebraShape) -> np.ndarray:
    """Matrix of m: B (x) B -> B in orthonormal bases of the trace inner product.

    Orthonormal basis: f_{ij}^{(r)} = sqrt(dim B / n_r) e_{ij}^{(r)}, under
    <a, b> = trace(a* b).  Entry [target, (left, right)] is <f_t, f_l f_r>.
    """
    dim = shape.dim
    # enumerate basis indices (block, i, j) with normalisation sqrt(dim/n_r)
    basis = []
    for r, b in enumerate(shape.blocks):
        norm = np.sqrt(dim / b)
        for i in range(b):
            for j in range(b):
                basis.append((r, i, j, norm))
    index = {(r, i, j): a for a, (r, i, j, _) in enumerate(basis)}

    mat = np.zeros((dim, dim * dim))
    for lpos, (r1, i1, j1, c1) in enumerate(basis):
        for rpos, (r2, i2, j2, c2) in enumerate(basis):
            if r1 != r2 or j1 != i2:
                continue
            # f_{i1 j1} f_{i2 j2} = c1 c2 e_{i1 j2}; expand in f_{i1 j2}
            target = index[(r1, i1, j2)]
            c_target = basis[target][3]
            mat[target, lpos * dim + rpos] += c1 * c2 / c_target
    return mat


def delta_form_defect(shape: AlgebraShape) -> float:
    """Operator-norm defect || m m* - dim(B) id || for the canonical trace.

    Zero (to rounding) for every shape: the canonical trace is the unique
    tracial state with m m* proportional to the identity, the factor being
    dim(B).
    """
    mat = _multiplication_matrix(shape)
    gram = mat @ mat.T
    defect = gram - shape.dim * np.eye(shape.dim)
    return float(np.linalg.norm(defect, ord=2))
