"""Seeded random inputs for the randomized checks."""
import random
from fractions import Fraction
from typing import List, Optional, Tuple

from .cohomology import Bidegree, enumerate_basis
from .model import Model, p_name, th_name, x_monomials
from .superalg import Element, GeneratorTable, total


def rng_for(seed: int, check_id: str) -> random.Random:
    """Independent stream per check, so the catalog order does not shift draws."""
    return random.Random(f"{seed}:{check_id}")


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    num = rng.randint(-bound, bound) or 1
    return Fraction(num, rng.randint(1, 3))


def random_b_field(rng: random.Random, d: int, bound: int = 3) -> Tuple[Tuple[Fraction, ...], ...]:
    rows = [[Fraction(0)] * d for _ in range(d)]
    for a in range(d):
        for b in range(a + 1, d):
            q = random_rational(rng, bound)
            rows[a][b], rows[b][a] = q, -q
    return tuple(tuple(row) for row in rows)


def random_homogeneous(
    rng: random.Random, m: Model, tdeg: int, ghost: Optional[int] = None, terms: int = 3
) -> Element:
    """Random combination of basis monomials of one bidegree (gamma >= 0)."""
    if ghost is None:
        ghost = rng.choice(_ghosts_with_monomials(m, tdeg))
    basis = enumerate_basis(m, Bidegree(ghost, tdeg))
    if not basis.monomials:
        return m.table.zero()
    picks = rng.sample(basis.monomials, min(terms, len(basis)))
    return Element(m.table, {mono: random_rational(rng) for mono in picks})


def _ghosts_with_monomials(m: Model, tdeg: int) -> List[int]:
    return [g for g in range(-tdeg, tdeg + 1) if enumerate_basis(m, Bidegree(g, tdeg)).monomials]


def random_pi(rng: random.Random, table: GeneratorTable, d: int, terms: int = 3) -> Element:
    """Odd ghost-0 element of degree <= 2 in (p, th)."""
    choices = [table.gen(th_name(a)) for a in range(1, d + 1)]
    choices += [
        table.gen(p_name(a)) * table.gen(th_name(b)) for a in range(1, d + 1) for b in range(1, d + 1)
    ]
    picks = rng.sample(choices, min(terms, len(choices)))
    return total(table, [g.scale(random_rational(rng)) for g in picks])


def random_x_function(rng: random.Random, m: Model, max_degree: int = 2, terms: int = 3) -> Element:
    """Random polynomial in x1..xd of degree <= max_degree."""
    choices = [mono for deg in range(max_degree + 1) for mono in x_monomials(m, deg)]
    picks = rng.sample(choices, min(terms, len(choices)))
    return total(m.table, [mono.scale(random_rational(rng)) for mono in picks])
