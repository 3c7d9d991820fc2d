"""
Bigraded cohomology of the spinning-particle differentials.

Every differential here is homogeneous for (ghost, T), so each bidegree is a
finite-dimensional space spanned by monomials. Matrices are sparse DomainMatrix
objects over QQ; columns are indexed by the source basis, rows by the target.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from . import linalg
from .errors import ConsistencyError, DomainError
from .model import DifferentialKind, Model, apply_diff, explicit_q1, family_members
from .superalg import Element, GeneratorTable, Monomial, ODD

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Bidegree:
    ghost: int
    tdeg: int

    def __post_init__(self):
        if self.tdeg < 0:
            raise DomainError(f"Total degree must be nonnegative, got {self.tdeg}")

    def shifted(self, shift: Tuple[int, int]) -> Optional["Bidegree"]:
        tdeg = self.tdeg + shift[1]
        return Bidegree(self.ghost + shift[0], tdeg) if tdeg >= 0 else None

    def __str__(self):
        return f"(ghost={self.ghost}, T={self.tdeg})"


@dataclass(frozen=True)
class ComponentBasis:
    bidegree: Bidegree
    gamma_min: int
    monomials: Tuple[Monomial, ...]
    index: Dict[Monomial, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {mono: i for i, mono in enumerate(self.monomials)})

    def __len__(self) -> int:
        return len(self.monomials)

    def vector(self, f: Element) -> Dict[int, Fraction]:
        """Coordinates of f; hbar powers are dropped once f is known to be homogeneous."""
        h = f.table.hbar
        out: Dict[int, Fraction] = {}
        for mono, q in f.terms.items():
            key = mono[:h] + (0,) + mono[h + 1:]
            if key not in self.index:
                raise ConsistencyError(f"Term of {f} lies outside bidegree {self.bidegree}")
            out[self.index[key]] = out.get(self.index[key], 0) + q
        return out

    def element(self, table: GeneratorTable, column: Dict[int, Fraction]) -> Element:
        return Element(table, {self.monomials[i]: q for i, q in column.items()})


@dataclass(frozen=True)
class DifferentialBlock:
    matrix: DomainMatrix
    source: ComponentBasis
    target: ComponentBasis


@dataclass(frozen=True)
class CohomologyRow:
    kind: str
    bidegree: Bidegree
    dim: int
    rank_out: int
    dim_ker: int
    rank_in: int
    betti: int
    family: Tuple[str, ...] = ()
    family_rank: Optional[int] = None
    d1_rank: Optional[int] = None
    e2_betti: Optional[int] = None

    def to_dict(self) -> Dict[str, object]:
        row = {
            "kind": self.kind,
            "ghost": self.bidegree.ghost,
            "tdeg": self.bidegree.tdeg,
            "dim": self.dim,
            "rank_out": self.rank_out,
            "dim_ker": self.dim_ker,
            "rank_in": self.rank_in,
            "betti": self.betti,
        }
        if self.family_rank is not None:
            row["family"] = list(self.family)
            row["family_rank"] = self.family_rank
        if self.e2_betti is not None:
            row["d1_rank"] = self.d1_rank
            row["e2_betti"] = self.e2_betti
        return row


@dataclass
class CohomologyReport:
    rows: List[CohomologyRow]

    def to_dict(self) -> Dict[str, object]:
        return {"rows": [r.to_dict() for r in self.rows]}


@dataclass(frozen=True)
class D1Result:
    rank: int
    e2_betti: int
    dim_e1: int
    rank_in: int


# ============================
# Bases
# ============================
@lru_cache(maxsize=64)
def _graded_monomials(table: GeneratorTable, tdeg: int, gamma_min: int) -> Dict[int, Tuple[Monomial, ...]]:
    n = table.hbar
    lows = [gamma_min if table.specs[i].laurent else 0 for i in range(n)]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + lows[i]
    found: List[Monomial] = []
    acc: List[int] = []

    def descend(i: int, remaining: int):
        if i == n:
            if remaining == 0:
                found.append(tuple(acc) + (0,))
            return
        hi = remaining - suffix[i + 1]
        if table.parities[i] == ODD:
            hi = min(hi, 1)
        for e in range(lows[i], hi + 1):
            acc.append(e)
            descend(i + 1, remaining - e)
            acc.pop()

    descend(0, tdeg)
    buckets: Dict[int, List[Monomial]] = {}
    for mono in found:
        buckets.setdefault(table.ghost(mono), []).append(mono)
    return {g: tuple(sorted(ms, key=table.sort_key)) for g, ms in buckets.items()}


def enumerate_basis(m: Model, bd: Bidegree, gamma_min: int = 0) -> ComponentBasis:
    monomials = _graded_monomials(m.table, bd.tdeg, gamma_min).get(bd.ghost, ())
    return ComponentBasis(bd, gamma_min, monomials)


def all_monomials(m: Model, tdeg: int, gamma_min: int = 0) -> List[Monomial]:
    """Every basis monomial of total degree tdeg, across ghosts."""
    graded = _graded_monomials(m.table, tdeg, gamma_min)
    return [mono for g in sorted(graded) for mono in graded[g]]


# ============================
# Matrices
# ============================
def _homogeneous_shift(kind: DifferentialKind) -> Tuple[int, int]:
    if kind.shift is None:
        raise DomainError(f"{kind.value} is not bidegree-homogeneous; use element-level checks")
    return kind.shift


def diff_matrix(
    m: Model,
    kind,
    bd: Bidegree,
    gamma_min: int = 0,
    source: Optional[ComponentBasis] = None,
    target: Optional[ComponentBasis] = None,
) -> DifferentialBlock:
    kind = DifferentialKind(kind)
    shift = _homogeneous_shift(kind)
    source = source or enumerate_basis(m, bd, gamma_min)
    tbd = bd.shifted(shift)
    if target is None:
        target = enumerate_basis(m, tbd, gamma_min) if tbd else ComponentBasis(bd, gamma_min, ())
    # flat model: Q1 equals the explicit third-order operator, which skips the C_3 expansion
    explicit = kind is DifferentialKind.Q1 and m.flat
    columns = []
    for mono in source.monomials:
        unit = Element(m.table, {mono: 1})
        image = explicit_q1(m, unit) if explicit else apply_diff(m, kind, unit, cross_check=False)
        columns.append(target.vector(image))
    matrix = linalg.from_columns(columns, len(target))
    logger.debug("%s matrix at %s: %s", kind.value, bd, matrix.shape)
    return DifferentialBlock(matrix, source, target)


@lru_cache(maxsize=256)
def differential_block(m: Model, kind: DifferentialKind, bd: Bidegree, gamma_min: int) -> DifferentialBlock:
    return diff_matrix(m, kind, bd, gamma_min)


def _incoming(m: Model, kind: DifferentialKind, bd: Bidegree, gamma_min: int) -> DomainMatrix:
    shift = _homogeneous_shift(kind)
    if bd.tdeg - shift[1] < 0:
        return linalg.zeros(len(enumerate_basis(m, bd, gamma_min)), 0)
    src = Bidegree(bd.ghost - shift[0], bd.tdeg - shift[1])
    return differential_block(m, kind, src, gamma_min).matrix


# ============================
# Betti numbers
# ============================
@lru_cache(maxsize=256)
def _ranks(m: Model, kind: DifferentialKind, bd: Bidegree, gamma_min: int) -> Tuple[int, int, int]:
    """(dim, rank_out, rank_in) of kind at bd."""
    out = differential_block(m, kind, bd, gamma_min)
    return len(out.source), linalg.rank(out.matrix), linalg.rank(_incoming(m, kind, bd, gamma_min))


def class_rank(m: Model, bd: Bidegree, vectors: Sequence[Dict[int, Fraction]], gamma_min: int = 0) -> int:
    """Rank of the span of Q0-cocycles in H(Q0) at bd."""
    if not vectors:
        return 0
    out = differential_block(m, DifferentialKind.Q0, bd, gamma_min)
    cols = linalg.from_columns(vectors, len(out.source))
    if not linalg.is_zero(linalg.matmul(out.matrix, cols)):
        raise ConsistencyError(f"Family element at {bd} is not a Q0-cocycle")
    return linalg.relative_rank(_incoming(m, DifferentialKind.Q0, bd, gamma_min), cols)


def betti(m: Model, kind, bd: Bidegree, gamma_min: int = 0, with_family: bool = False) -> CohomologyRow:
    kind = DifferentialKind(kind)
    dim, rank_out, rank_in = _ranks(m, kind, bd, gamma_min)
    dim_ker = dim - rank_out
    value = dim_ker - rank_in
    if value < 0:
        raise ConsistencyError(f"Negative Betti number at {bd}: image exceeds kernel")
    labels: Tuple[str, ...] = ()
    family_rank = None
    if with_family:
        if kind is not DifferentialKind.Q0:
            raise DomainError("Family spans are only defined for q0")
        source = differential_block(m, kind, bd, gamma_min).source
        members = family_members(m, bd.ghost, bd.tdeg)
        labels = tuple(label for label, _ in members)
        family_rank = class_rank(m, bd, [source.vector(f) for _, f in members], gamma_min)
    logger.info("%s %s: dim=%d betti=%d", kind.value, bd, dim, value)
    return CohomologyRow(kind.value, bd, dim, rank_out, dim_ker, rank_in, value, labels, family_rank)


# ============================
# The d1 page
# ============================
@lru_cache(maxsize=128)
def _cocycles(m: Model, bd: Bidegree, gamma_min: int) -> DomainMatrix:
    out = differential_block(m, DifferentialKind.Q0, bd, gamma_min)
    Z = linalg.kernel(out.matrix)
    if Z.shape[0] != len(out.source):
        return linalg.zeros(len(out.source), 0)
    return Z


@lru_cache(maxsize=128)
def _d1_rank(m: Model, src_bd: Bidegree, gamma_min: int) -> int:
    """rank of [Q1] : H(Q0) at src_bd -> H(Q0) one Q1 step on, as rank([B | Q1 Z]) - rank(B)."""
    tgt_bd = src_bd.shifted(DifferentialKind.Q1.shift)
    if tgt_bd is None:
        return 0
    Z = _cocycles(m, src_bd, gamma_min)
    if Z.shape[1] == 0:
        return 0
    images = linalg.matmul(differential_block(m, DifferentialKind.Q1, src_bd, gamma_min).matrix, Z)
    boundaries = _incoming(m, DifferentialKind.Q0, tgt_bd, gamma_min)
    rank = linalg.relative_rank(boundaries, images)
    logger.debug("d1 %s -> %s: rank %d", src_bd, tgt_bd, rank)
    return rank


def d1_on_E1(m: Model, source_bd: Bidegree, gamma_min: int = 0) -> D1Result:
    """Induced d1 = [Q1] on H(Q0) out of source_bd, with the E2 Betti number there."""
    if not m.flat:
        raise DomainError("d1 is computed for the flat model only")
    dim, rank_q0, rank_b = _ranks(m, DifferentialKind.Q0, source_bd, gamma_min)
    dim_e1 = dim - rank_q0 - rank_b
    rank_out = _d1_rank(m, source_bd, gamma_min)
    shift = DifferentialKind.Q1.shift
    before = Bidegree(source_bd.ghost - shift[0], source_bd.tdeg - shift[1])
    rank_in = _d1_rank(m, before, gamma_min)
    e2 = dim_e1 - rank_out - rank_in
    if e2 < 0:
        raise ConsistencyError(f"Negative E2 Betti number at {source_bd}")
    logger.info("d1 %s: E1=%d rank=%d E2=%d", source_bd, dim_e1, rank_out, e2)
    return D1Result(rank_out, e2, dim_e1, rank_in)


# ============================
# Windows
# ============================
def _row(m: Model, kind: str, bd: Bidegree, gamma_min: int, e2: bool, with_family: bool) -> CohomologyRow:
    row = betti(m, kind, bd, gamma_min, with_family=with_family)
    if e2:
        res = d1_on_E1(m, bd, gamma_min)
        row = CohomologyRow(
            row.kind, row.bidegree, row.dim, row.rank_out, row.dim_ker, row.rank_in, row.betti,
            row.family, row.family_rank, res.rank, res.e2_betti,
        )
    return row


def window(
    m: Model,
    kind,
    ghosts: Iterable[int],
    tdegs: Iterable[int],
    gamma_min: int = 0,
    e2: bool = False,
    with_family: bool = False,
    jobs: int = 1,
) -> CohomologyReport:
    """Rows for every (ghost, T) in the window; bidegrees run in parallel when jobs > 1."""
    kind = DifferentialKind(kind).value
    bds = [Bidegree(g, t) for g in ghosts for t in tdegs]
    if jobs > 1 and len(bds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_row, m, kind, bd, gamma_min, e2, with_family) for bd in bds]
            rows = [f.result() for f in futures]
    else:
        rows = [_row(m, kind, bd, gamma_min, e2, with_family) for bd in bds]
    return CohomologyReport(sorted(rows, key=lambda r: r.bidegree))
