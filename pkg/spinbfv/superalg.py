"""
Exact arithmetic for Z-graded supercommutative Laurent polynomials.

An Element is a sparse map from canonical monomials to Fractions over a
GeneratorTable. The table fixes the generator order; every product is brought
back to that order and the Koszul sign is absorbed into the coefficient.
The central even generator ``hbar`` is always the last slot of a table.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DomainError

EVEN, ODD = 0, 1
HBAR = "hbar"

Rational = Union[int, Fraction]
Monomial = Tuple[int, ...]


# ============================
# Generators
# ============================
@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    parity: int = EVEN
    ghost: int = 0
    laurent: bool = False

    def __post_init__(self):
        if not self.name.isidentifier():
            raise DomainError(f"Generator name {self.name!r} is not an identifier")
        if self.parity not in (EVEN, ODD):
            raise DomainError(f"Generator {self.name}: parity must be 0 or 1, got {self.parity}")
        if self.parity == ODD and self.laurent:
            raise DomainError(f"Generator {self.name}: odd generators cannot be Laurent")


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered generators plus the trailing central ``hbar``."""

    generators: Tuple[GeneratorSpec, ...]
    specs: Tuple[GeneratorSpec, ...] = field(init=False, repr=False, compare=False)
    names: Tuple[str, ...] = field(init=False, repr=False, compare=False)
    parities: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    ghosts: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    odd: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    hbar: int = field(init=False, repr=False, compare=False)
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        names = [g.name for g in gens]
        if HBAR in names:
            raise DomainError(f"'{HBAR}' is reserved for the central generator")
        if len(set(names)) != len(names):
            raise DomainError(f"Duplicate generator names in {names}")
        specs = gens + (GeneratorSpec(HBAR, EVEN, 0, True),)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "specs", specs)
        object.__setattr__(self, "names", tuple(s.name for s in specs))
        object.__setattr__(self, "parities", tuple(s.parity for s in specs))
        object.__setattr__(self, "ghosts", tuple(s.ghost for s in specs))
        object.__setattr__(self, "odd", tuple(i for i, s in enumerate(specs) if s.parity == ODD))
        object.__setattr__(self, "hbar", len(gens))
        object.__setattr__(self, "_index", {s.name: i for i, s in enumerate(specs)})

    def __len__(self) -> int:
        return len(self.specs)

    def index(self, name: Union[str, int]) -> int:
        if isinstance(name, int):
            if not 0 <= name < len(self.specs):
                raise DomainError(f"Generator index {name} out of range")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise DomainError(f"Unknown generator '{name}'") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def unit(self) -> Monomial:
        return (0,) * len(self.specs)

    # -- monomial gradings --
    def parity(self, m: Monomial) -> int:
        return sum(m[i] for i in self.odd) & 1

    def ghost(self, m: Monomial) -> int:
        return sum(e * g for e, g in zip(m, self.ghosts))

    def tdeg(self, m: Monomial) -> int:
        return sum(m) - m[self.hbar]

    def sort_key(self, m: Monomial):
        """Canonical monomial order: by hbar power, then T, then exponents descending."""
        return (m[self.hbar], self.tdeg(m), tuple(-e for e in m))

    # -- element constructors --
    def zero(self) -> "Element":
        return Element(self)

    def one(self) -> "Element":
        return Element(self, {self.unit(): 1})

    def constant(self, q: Rational) -> "Element":
        return Element(self, {self.unit(): q})

    def gen(self, name: Union[str, int], exponent: int = 1) -> "Element":
        i = self.index(name)
        spec = self.specs[i]
        if exponent < 0 and not spec.laurent:
            raise DomainError(f"Negative exponent on non-Laurent generator '{spec.name}'")
        if spec.parity == ODD and exponent > 1:
            return self.zero()
        m = list(self.unit())
        m[i] = exponent
        return Element(self, {tuple(m): 1})

    def monomial(self, exponents: Mapping[str, int], coeff: Rational = 1) -> "Element":
        """Element for a product already written in canonical order."""
        m = list(self.unit())
        for name, e in exponents.items():
            i = self.index(name)
            if e < 0 and not self.specs[i].laurent:
                raise DomainError(f"Negative exponent on non-Laurent generator '{name}'")
            if self.parities[i] == ODD and e > 1:
                return self.zero()
            m[i] = e
        return Element(self, {tuple(m): coeff})


def _mul_monomials(odd: Sequence[int], m1: Monomial, m2: Monomial) -> Optional[Tuple[int, Monomial]]:
    swaps = 0
    for j in odd:
        if m2[j]:
            if m1[j]:
                return None
            for i in odd:
                if i > j and m1[i]:
                    swaps += 1
    return (-1 if swaps & 1 else 1), tuple(a + b for a, b in zip(m1, m2))


def normalize(table: GeneratorTable, raw_product: Iterable[Tuple[Union[str, int], int]]) -> Optional[Tuple[int, Monomial]]:
    """
    Bring a raw product of generator powers into canonical order.

    Returns (sign, monomial), or None when an odd generator would be squared.
    """
    sign, mono = 1, table.unit()
    for gen, exp in raw_product:
        i = table.index(gen)
        spec = table.specs[i]
        if exp < 0 and not spec.laurent:
            raise DomainError(f"Negative exponent on non-Laurent generator '{spec.name}'")
        if exp == 0:
            continue
        if spec.parity == ODD and exp > 1:
            return None
        factor = list(table.unit())
        factor[i] = exp
        merged = _mul_monomials(table.odd, mono, tuple(factor))
        if merged is None:
            return None
        s, mono = merged
        sign *= s
    return sign, mono


# ============================
# Elements
# ============================
class Element:
    """Immutable sparse supercommutative Laurent polynomial with Fraction coefficients."""

    __slots__ = ("table", "_terms")

    def __init__(self, table: GeneratorTable, terms: Optional[Mapping[Monomial, Rational]] = None):
        clean: Dict[Monomial, Fraction] = {}
        width = len(table)
        for m, q in (terms or {}).items():
            if len(m) != width:
                raise DomainError(f"Monomial {m} does not match a table of {width} generators")
            q = Fraction(q)
            if q:
                clean[tuple(m)] = q
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_terms", clean)

    @classmethod
    def _raw(cls, table: GeneratorTable, terms: Dict[Monomial, Fraction]) -> "Element":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "table", table)
        object.__setattr__(obj, "_terms", terms)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("Element is immutable")

    def __reduce__(self):
        return (Element, (self.table, dict(self._terms)))

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        unit = self.table.unit()
        return all(m == unit for m in self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    # -- coercion --
    def _coerce(self, other) -> Optional["Element"]:
        if isinstance(other, Element):
            if other.table != self.table:
                raise DomainError("Generator table mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.table.constant(other)
        return None

    # -- ring operations --
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.table, {m: -q for m, q in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self._inverse() ** (-n)
        result = self.table.one()
        for _ in range(n):
            result = mul(result, self)
        return result

    def _inverse(self) -> "Element":
        if len(self._terms) != 1:
            raise DomainError("Only monomials in Laurent generators can be inverted")
        (m, q), = self._terms.items()
        if any(e and not self.table.specs[i].laurent for i, e in enumerate(m)):
            raise DomainError(f"Cannot invert {render(self)}: non-Laurent generator present")
        return Element._raw(self.table, {tuple(-e for e in m): 1 / q})

    def scale(self, q: Rational) -> "Element":
        q = Fraction(q)
        if not q:
            return self.table.zero()
        return Element._raw(self.table, {m: c * q for m, c in self._terms.items()})

    # -- comparison --
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.table.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.table == other.table and self._terms == other._terms

    def __hash__(self):
        return hash((self.table, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Element({render(self)!r})"

    def __str__(self):
        return render(self)

    # -- graded pieces --
    def parity_parts(self) -> Dict[int, "Element"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, q in self._terms.items():
            parts.setdefault(self.table.parity(m), {})[m] = q
        return {p: Element._raw(self.table, t) for p, t in sorted(parts.items())}

    def hbar_parts(self) -> Dict[int, "Element"]:
        """Split by hbar power; the returned pieces carry no hbar."""
        h = self.table.hbar
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, q in self._terms.items():
            parts.setdefault(m[h], {})[m[:h] + (0,) + m[h + 1:]] = q
        return {k: Element._raw(self.table, t) for k, t in sorted(parts.items())}

    def grading(self) -> Optional["Grading"]:
        return grading(self)


def _check_tables(f: Element, g: Element):
    if f.table != g.table:
        raise DomainError("Generator table mismatch")


def add(f: Element, g: Element) -> Element:
    _check_tables(f, g)
    out = dict(f._terms)
    for m, q in g._terms.items():
        s = out.get(m, 0) + q
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return Element._raw(f.table, out)


def mul(f: Element, g: Element) -> Element:
    _check_tables(f, g)
    odd = f.table.odd
    out: Dict[Monomial, Fraction] = {}
    for m1, a in f._terms.items():
        for m2, b in g._terms.items():
            merged = _mul_monomials(odd, m1, m2)
            if merged is None:
                continue
            sign, m = merged
            s = out.get(m, 0) + (a * b if sign > 0 else -a * b)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Element._raw(f.table, out)


def total(table: GeneratorTable, elements: Iterable[Element]) -> Element:
    out: Dict[Monomial, Fraction] = {}
    for f in elements:
        if f.table != table:
            raise DomainError("Generator table mismatch")
        for m, q in f._terms.items():
            s = out.get(m, 0) + q
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Element._raw(table, out)


def dleft(v: Union[str, int], f: Element) -> Element:
    """Left derivative: move v to the front with its Koszul sign, then differentiate."""
    table = f.table
    i = table.index(v)
    is_odd = table.parities[i] == ODD
    out: Dict[Monomial, Fraction] = {}
    for m, q in f._terms.items():
        e = m[i]
        if e == 0:
            continue
        if is_odd:
            passed = sum(m[j] for j in table.odd if j < i)
            out[m[:i] + (0,) + m[i + 1:]] = -q if passed & 1 else q
        else:
            out[m[:i] + (e - 1,) + m[i + 1:]] = q * e
    return Element._raw(table, out)


def divided_power(table: GeneratorTable, name: str, k: int) -> Element:
    """name^k / k!, and zero for negative k."""
    if k < 0:
        return table.zero()
    return table.gen(name, k).scale(Fraction(1, math.factorial(k)))


# ============================
# Gradings
# ============================
@dataclass(frozen=True)
class Grading:
    """Each field is None when the element mixes degrees."""

    parity: Optional[int]
    ghost: Optional[int]
    tdeg: Optional[int]

    def as_dict(self) -> Dict[str, object]:
        parity = {EVEN: "even", ODD: "odd", None: "mixed"}[self.parity]
        return {
            "parity": parity,
            "ghost": "mixed" if self.ghost is None else self.ghost,
            "tdeg": "mixed" if self.tdeg is None else self.tdeg,
        }


def _single(values):
    return next(iter(values)) if len(values) == 1 else None


def grading(f: Element) -> Optional[Grading]:
    """Gradings shared by every monomial of f; None for the zero element."""
    if not f:
        return None
    table = f.table
    parities = {table.parity(m) for m in f._terms}
    ghosts = {table.ghost(m) for m in f._terms}
    tdegs = {table.tdeg(m) for m in f._terms}
    return Grading(_single(parities), _single(ghosts), _single(tdegs))


def filtration_part(f: Element, weights: Mapping[str, int], level: int) -> Element:
    idx = {f.table.index(k): w for k, w in weights.items()}
    keep = {m: q for m, q in f._terms.items() if sum(m[i] * w for i, w in idx.items()) == level}
    return Element._raw(f.table, keep)


def leading_filtration_part(f: Element, weights: Mapping[str, int]) -> Tuple[Optional[int], Element]:
    """Lowest filtration level present in f and the terms at that level."""
    if not f:
        return None, f
    idx = {f.table.index(k): w for k, w in weights.items()}
    level = min(sum(m[i] * w for i, w in idx.items()) for m in f._terms)
    return level, filtration_part(f, weights, level)


# ============================
# Rendering
# ============================
def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_monomial(table: GeneratorTable, m: Monomial) -> str:
    parts = []
    for name, e in zip(table.names, m):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def sorted_terms(f: Element) -> List[Tuple[Monomial, Fraction]]:
    return sorted(f._terms.items(), key=lambda item: f.table.sort_key(item[0]))


def render(f: Element) -> str:
    """Canonical text form; parses back to the same Element."""
    if not f:
        return "0"
    out = []
    for pos, (m, q) in enumerate(sorted_terms(f)):
        mono = render_monomial(f.table, m)
        mag = abs(q)
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if pos == 0:
            out.append(("-" if q < 0 else "") + body)
        else:
            out.append((" - " if q < 0 else " + ") + body)
    return "".join(out)


def render_terms(f: Element) -> List[Dict[str, object]]:
    """JSON-ready term list in canonical order."""
    return [
        {
            "coeff": format_rational(q),
            "monomial": [[name, e] for name, e in zip(f.table.names, m) if e],
        }
        for m, q in sorted_terms(f)
    ]
