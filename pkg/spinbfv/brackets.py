"""
Constant graded Poisson bracket and Moyal star product.

With P the constant graded-antisymmetric tensor,

    {f, g}    = 2 * sum (-1)^{|f||nu|} P^{mu nu} d_mu f d_nu g
    C_k(f, g) = 1/k! * sum sign * P^{mu1 nu1}...P^{muk nuk} d_mu1..d_muk f d_nu1..d_nuk g
    f o g     = sum_k hbar^k C_k(f, g)

where sign = (-1)^{sum_{i<j}|nu_i||nu_j| + |f| sum_i |nu_i|} and d is the left
derivative of superalg.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .errors import DomainError, UnsupportedBackgroundError
from .superalg import HBAR, ODD, Element, GeneratorTable, Rational, dleft, total

logger = logging.getLogger(__name__)

BracketValue = Union[Rational, Element]


@dataclass(frozen=True)
class PoissonTensor:
    table: GeneratorTable
    entries: Tuple[Tuple[int, int, Fraction], ...]

    def entry(self, mu: Union[str, int], nu: Union[str, int]) -> Fraction:
        i, j = self.table.index(mu), self.table.index(nu)
        for a, b, p in self.entries:
            if (a, b) == (i, j):
                return p
        return Fraction(0)

    def matrix(self) -> List[List[Fraction]]:
        """Square matrix over every generator except hbar."""
        n = self.table.hbar
        rows = [[Fraction(0)] * n for _ in range(n)]
        for a, b, p in self.entries:
            rows[a][b] = p
        return rows


def _constant_value(table: GeneratorTable, value: BracketValue, pair) -> Fraction:
    if isinstance(value, Element):
        if value.table != table:
            raise DomainError("Generator table mismatch")
        if not value.is_constant():
            raise UnsupportedBackgroundError(f"Bracket {pair} is not constant: {value}")
        return value.coefficient(table.unit())
    return Fraction(value)


def poisson_tensor_from_brackets(
    table: GeneratorTable, generator_brackets: Mapping[Tuple[str, str], BracketValue]
) -> PoissonTensor:
    """Tensor reproducing the given generator brackets; unlisted pairs bracket to 0."""
    values: Dict[Tuple[int, int], Fraction] = {}
    for pair, raw in generator_brackets.items():
        u, v = pair
        i, j = table.index(u), table.index(v)
        if table.hbar in (i, j):
            raise DomainError(f"{HBAR} is central and has no brackets")
        val = _constant_value(table, raw, pair)
        both_odd = table.parities[i] == ODD and table.parities[j] == ODD
        if val and table.parities[i] != table.parities[j]:
            raise DomainError(f"Bracket {pair} pairs generators of different parity")
        # {v, u} = -(-1)^{|u||v|} {u, v}
        for key, q in (((i, j), val), ((j, i), val if both_odd else -val)):
            if key in values and values[key] != q:
                raise DomainError(f"Bracket data for {pair} violates graded antisymmetry")
            values[key] = q
    entries = []
    for (i, j), q in sorted(values.items()):
        if q:
            sign = -1 if table.parities[i] and table.parities[j] else 1
            entries.append((i, j, q * sign / 2))
    return PoissonTensor(table, tuple(entries))


def poisson(P: PoissonTensor, f: Element, g: Element) -> Element:
    table = P.table
    if f.table != table or g.table != table:
        raise DomainError("Generator table mismatch")
    pieces = []
    dg_cache: Dict[int, Element] = {}
    for fpar, part in f.parity_parts().items():
        df_cache: Dict[int, Element] = {}
        for mu, nu, p in P.entries:
            if mu not in df_cache:
                df_cache[mu] = dleft(mu, part)
            df = df_cache[mu]
            if not df:
                continue
            if nu not in dg_cache:
                dg_cache[nu] = dleft(nu, g)
            dg = dg_cache[nu]
            if not dg:
                continue
            sign = -1 if fpar and table.parities[nu] else 1
            pieces.append((df * dg).scale(2 * sign * p))
    return total(table, pieces)


def moyal_term(P: PoissonTensor, k: int, f: Element, g: Element) -> Element:
    """The bidifferential operator C_k."""
    if k < 0:
        raise DomainError(f"Moyal order must be nonnegative, got {k}")
    if k == 0:
        return f * g
    table = P.table
    parities = table.parities
    pieces: List[Element] = []

    def descend(depth: int, df: Element, dg: Element, weight: Fraction, n_odd: int, fpar: int):
        if depth == k:
            sign = (n_odd * (n_odd - 1) // 2 + fpar * n_odd) & 1
            pieces.append((df * dg).scale(-weight if sign else weight))
            return
        df_level: Dict[int, Element] = {}
        dg_level: Dict[int, Element] = {}
        for mu, nu, p in P.entries:
            if mu not in df_level:
                df_level[mu] = dleft(mu, df)
            if not df_level[mu]:
                continue
            if nu not in dg_level:
                dg_level[nu] = dleft(nu, dg)
            if not dg_level[nu]:
                continue
            descend(depth + 1, df_level[mu], dg_level[nu], weight * p, n_odd + parities[nu], fpar)

    for fpar, part in f.parity_parts().items():
        descend(0, part, g, Fraction(1), 0, fpar)
    return total(table, pieces).scale(Fraction(1, math.factorial(k)))


def derivative_bound(f: Element) -> Optional[int]:
    """Largest number of derivatives f survives, or None if a negative power makes it unbounded."""
    h = f.table.hbar
    best = 0
    for m in f.terms:
        if any(e < 0 for i, e in enumerate(m) if i != h):
            return None
        best = max(best, sum(m) - m[h])
    return best


def _series_bound(f: Element, g: Element) -> int:
    bounds = [b for b in (derivative_bound(f), derivative_bound(g)) if b is not None]
    if not bounds:
        raise DomainError("Star product of two Laurent factors does not terminate")
    return min(bounds)


def star(P: PoissonTensor, f: Element, g: Element) -> Element:
    pieces = []
    for k in range(_series_bound(f, g) + 1):
        term = moyal_term(P, k, f, g)
        if term:
            pieces.append(term * P.table.gen(HBAR, k))
    return total(P.table, pieces)


def moyal_bracket(P: PoissonTensor, f: Element, g: Element) -> Element:
    """[f, g] = f o g - (-1)^{|f||g|} g o f, from star products."""
    pieces = []
    for fpar, fp in f.parity_parts().items():
        for gpar, gp in g.parity_parts().items():
            sign = -1 if fpar and gpar else 1
            pieces.append(star(P, fp, gp) - star(P, gp, fp).scale(sign))
    return total(P.table, pieces)


def _odd_orders(P: PoissonTensor, f: Element, g: Element, shift: int) -> Element:
    pieces = []
    for k in range(1, _series_bound(f, g) + 1, 2):
        term = moyal_term(P, k, f, g)
        if term:
            pieces.append(term.scale(2) * P.table.gen(HBAR, k + shift))
    return total(P.table, pieces)


def odd_bracket_sum(P: PoissonTensor, f: Element, g: Element) -> Element:
    """2 * sum_l hbar^{2l+1} C_{2l+1}(f, g)."""
    return _odd_orders(P, f, g, 0)


def scaled_bracket(P: PoissonTensor, f: Element, g: Element, via_star: bool = False) -> Element:
    """<f, g> = hbar^-1 [f, g]."""
    if via_star:
        return moyal_bracket(P, f, g) * P.table.gen(HBAR, -1)
    return _odd_orders(P, f, g, -1)
