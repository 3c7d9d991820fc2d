from fractions import Fraction

from hypothesis import strategies as st

from spinbfv.superalg import ODD, Element, GeneratorTable


def coefficients():
    return st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(lambda q: q != 0)


@st.composite
def monomials(draw, table: GeneratorTable, max_exponent: int = 2, laurent: bool = False):
    exps = []
    for i, spec in enumerate(table.specs):
        if i == table.hbar:
            exps.append(0)
        elif spec.parity == ODD:
            exps.append(draw(st.integers(0, 1)))
        elif spec.laurent and laurent:
            exps.append(draw(st.integers(-1, max_exponent)))
        else:
            exps.append(draw(st.integers(0, max_exponent)))
    return tuple(exps)


@st.composite
def elements(draw, table: GeneratorTable, max_terms: int = 3, max_exponent: int = 1, laurent: bool = False):
    monos = draw(st.lists(monomials(table, max_exponent, laurent), min_size=1, max_size=max_terms, unique=True))
    return Element(table, {m: draw(coefficients()) for m in monos})


@st.composite
def homogeneous_elements(draw, table: GeneratorTable, max_terms: int = 3, max_exponent: int = 1):
    """Nonzero elements of a single parity."""
    f = draw(elements(table, max_terms, max_exponent))
    parts = f.parity_parts()
    return parts[draw(st.sampled_from(sorted(parts)))]


def parity(f: Element) -> int:
    return f.table.parity(next(iter(f.terms)))


def half(q) -> Fraction:
    return Fraction(q, 2)
