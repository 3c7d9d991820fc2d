"""Thin helpers over sympy's sparse DomainMatrix over QQ."""
from fractions import Fraction
from typing import Dict, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Mapping[int, Fraction]


def to_qq(q: Fraction):
    q = Fraction(q)
    return QQ(q.numerator, q.denominator)


def from_columns(columns: Sequence[Vector], nrows: int) -> DomainMatrix:
    rows: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, q in col.items():
            if q:
                rows.setdefault(i, {})[j] = to_qq(q)
    return DomainMatrix(rows, (nrows, len(columns)), QQ)


def zeros(nrows: int, ncols: int) -> DomainMatrix:
    return DomainMatrix({}, (nrows, ncols), QQ)


def is_zero(M: DomainMatrix) -> bool:
    return not any(M.to_dok().values())


def rank(M: DomainMatrix) -> int:
    if 0 in M.shape:
        return 0
    return M.rank()


def kernel(M: DomainMatrix) -> DomainMatrix:
    """Basis of the nullspace, as columns."""
    nrows, ncols = M.shape
    if ncols == 0:
        return zeros(0, 0)
    if nrows == 0 or is_zero(M):
        return from_columns([{j: Fraction(1)} for j in range(ncols)], ncols)
    return M.nullspace().to_sparse().transpose()


def hstack(*blocks: DomainMatrix) -> DomainMatrix:
    blocks = [b.to_sparse() for b in blocks if b.shape[1]]
    if not blocks:
        raise ValueError("hstack needs at least one nonempty block")
    head, rest = blocks[0], blocks[1:]
    return head.hstack(*rest) if rest else head


def relative_rank(B: DomainMatrix, V: DomainMatrix) -> int:
    """dim (col(B) + col(V)) / col(B)."""
    if V.shape[1] == 0 or V.shape[0] == 0:
        return 0
    if B.shape[1] == 0:
        return rank(V)
    return rank(hstack(B, V)) - rank(B)


def matmul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"Shape mismatch {A.shape} x {B.shape}")
    if 0 in A.shape or 0 in B.shape:
        return zeros(A.shape[0], B.shape[1])
    return A.to_sparse() * B.to_sparse()
