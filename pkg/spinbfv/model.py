"""
The N=1 spinning particle in a flat frame with optional constant magnetic field.

Generators, in canonical order:
    x1..xd, p1..pd   even, ghost 0
    th1..thd         odd, ghost 0
    b                odd, ghost -1
    c                odd, ghost +1
    beta             even, ghost -1
    gamma            even, ghost +1, Laurent
    hbar             central

Brackets: {p_a, x^a} = 1, {th_a, th_a} = 2, {b, c} = {beta, gamma} = 1 and
{p_a, p_b} = B_ab.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .brackets import (
    PoissonTensor,
    moyal_bracket,
    moyal_term,
    poisson,
    poisson_tensor_from_brackets,
    scaled_bracket,
    star,
)
from .errors import ConsistencyError, DomainError
from .report import PRINTED, SIGN_REVERSED, CheckResult, Outcome, Reading, combine, compare, compare_by_hbar
from .superalg import (
    EVEN,
    HBAR,
    ODD,
    Element,
    GeneratorSpec,
    GeneratorTable,
    Rational,
    dleft,
    divided_power,
    grading,
    render,
    total,
)

logger = logging.getLogger(__name__)

MAX_DIMENSION = 8
FAMILY_GENERATORS = ("c", "gamma")
# filtration used to read off leading parts of X_k and Y_k
FILTRATION_WEIGHTS = {"gamma": 2, "c": 3}

# coefficients of d^3/dx^a dx^a db, d^3/dx^a dth^a dbeta, d^3/dbeta^2 dc
DERIVED_Q1_COEFFICIENTS = (Fraction(1, 4), Fraction(-1, 2), Fraction(-1, 4))
PRINTED_Q1_COEFFICIENTS = (Fraction(-1, 8), Fraction(1, 8), Fraction(1, 8))

BField = Tuple[Tuple[Fraction, ...], ...]


def x_name(a: int) -> str:
    return f"x{a}"


def p_name(a: int) -> str:
    return f"p{a}"


def th_name(a: int) -> str:
    return f"th{a}"


class DifferentialKind(str, Enum):
    Q0 = "q0"
    Q1 = "q1"
    QTOTAL = "q"
    PAGE0 = "page0"
    PAGE1 = "page1"
    PAGE2 = "page2"

    @property
    def shift(self) -> Optional[Tuple[int, int]]:
        """(ghost, T) shift, or None when the operator mixes T-degrees."""
        if self is DifferentialKind.QTOTAL:
            return None
        if self is DifferentialKind.Q1:
            return (1, -3)
        return (1, 1)


@dataclass(frozen=True)
class Model:
    d: int
    b_field: Optional[BField]
    table: GeneratorTable
    tensor: PoissonTensor
    pi: Element
    theta: Element
    s: Element
    s_hbar: Element

    @property
    def flat(self) -> bool:
        """True when no magnetic field is switched on."""
        return self.b_field is None or not any(q for row in self.b_field for q in row)

    def gen(self, name: str, exponent: int = 1) -> Element:
        return self.table.gen(name, exponent)

    def x(self, a: int) -> Element:
        return self.table.gen(x_name(a))

    def p(self, a: int) -> Element:
        return self.table.gen(p_name(a))

    def th(self, a: int) -> Element:
        return self.table.gen(th_name(a))

    def beta_dp(self, k: int) -> Element:
        return divided_power(self.table, "beta", k)

    def bracket(self, f: Element, g: Element) -> Element:
        return poisson(self.tensor, f, g)

    def star(self, f: Element, g: Element) -> Element:
        return star(self.tensor, f, g)

    def sbracket(self, f: Element, g: Element) -> Element:
        return scaled_bracket(self.tensor, f, g)


# ============================
# Construction
# ============================
def make_table(d: int) -> GeneratorTable:
    specs = [GeneratorSpec(x_name(a)) for a in range(1, d + 1)]
    specs += [GeneratorSpec(p_name(a)) for a in range(1, d + 1)]
    specs += [GeneratorSpec(th_name(a), ODD) for a in range(1, d + 1)]
    specs += [
        GeneratorSpec("b", ODD, -1),
        GeneratorSpec("c", ODD, 1),
        GeneratorSpec("beta", EVEN, -1),
        GeneratorSpec("gamma", EVEN, 1, laurent=True),
    ]
    return GeneratorTable(tuple(specs))


def _coerce_b_field(d: int, b_field) -> Optional[BField]:
    if b_field is None:
        return None
    try:
        rows = tuple(tuple(Fraction(q) for q in row) for row in b_field)
    except (TypeError, ValueError) as e:
        raise DomainError(f"B field entries must be rationals: {e}") from e
    if len(rows) != d or any(len(row) != d for row in rows):
        raise DomainError(f"B field must be a {d}x{d} matrix")
    for a in range(d):
        for b in range(d):
            if rows[a][b] != -rows[b][a]:
                raise DomainError(f"B field is not antisymmetric at ({a + 1}, {b + 1})")
    return rows


def spinning_brackets(d: int, b_field: Optional[BField]) -> Dict[Tuple[str, str], Fraction]:
    brackets = {("b", "c"): Fraction(1), ("beta", "gamma"): Fraction(1)}
    for a in range(1, d + 1):
        brackets[(p_name(a), x_name(a))] = Fraction(1)
        brackets[(th_name(a), th_name(a))] = Fraction(2)
    if b_field is not None:
        for a in range(d):
            for b in range(a + 1, d):
                if b_field[a][b]:
                    brackets[(p_name(a + 1), p_name(b + 1))] = b_field[a][b]
    return brackets


def build_generic_S(table: GeneratorTable, P: PoissonTensor, pi_candidate: Element) -> Element:
    """S = 1/2 c {pi, pi} + gamma pi - gamma^2 b for any odd ghost-0 pi."""
    for name in ("b", "c", "beta", "gamma"):
        if name not in table:
            raise DomainError(f"Generator table lacks ghost generator '{name}'")
    if pi_candidate:
        g = grading(pi_candidate)
        if g.parity != ODD or g.ghost != 0:
            raise DomainError(f"pi must be odd of ghost 0, got {g.as_dict()}")
    c, gamma, b = table.gen("c"), table.gen("gamma"), table.gen("b")
    half_pp = poisson(P, pi_candidate, pi_candidate).scale(Fraction(1, 2))
    return c * half_pp + gamma * pi_candidate - gamma * gamma * b


def build_model(d: int, b_field: Optional[Sequence[Sequence[Rational]]] = None) -> Model:
    if not isinstance(d, int) or not 1 <= d <= MAX_DIMENSION:
        raise DomainError(f"Dimension must be an integer in [1, {MAX_DIMENSION}], got {d!r}")
    bf = _coerce_b_field(d, b_field)
    table = make_table(d)
    P = poisson_tensor_from_brackets(table, spinning_brackets(d, bf))
    pi = total(table, [table.gen(p_name(a)) * table.gen(th_name(a)) for a in range(1, d + 1)])
    theta = table.one()
    for a in range(1, d + 1):
        theta = theta * table.gen(th_name(a))
    s = build_generic_S(table, P, pi)

    c, gamma, b = table.gen("c"), table.gen("gamma"), table.gen("b")
    s_hbar = c * scaled_bracket(P, pi, pi).scale(Fraction(1, 2)) + gamma * pi - gamma * gamma * b
    if s_hbar != s:
        raise ConsistencyError(f"S_hbar differs from S for constant P: {render(s_hbar - s)}")
    mc = poisson(P, s, s)
    if mc:
        raise ConsistencyError(f"{{S, S}} = {render(mc)} does not vanish")
    logger.debug("Built model d=%d with %d tensor entries", d, len(P.entries))
    return Model(d, bf, table, P, pi, theta, s, s_hbar)


# ============================
# Differentials
# ============================
def explicit_q1(m: Model, f: Element, coefficients: Sequence[Rational] = DERIVED_Q1_COEFFICIENTS) -> Element:
    """Third-order operator c1 dx dx db + c2 dx dth dbeta + c3 dbeta dbeta dc, summed over a."""
    c1, c2, c3 = coefficients
    db = dleft("b", f)
    dbeta = dleft("beta", f)
    t1 = total(m.table, [dleft(x_name(a), dleft(x_name(a), db)) for a in range(1, m.d + 1)])
    t2 = total(m.table, [dleft(x_name(a), dleft(th_name(a), dbeta)) for a in range(1, m.d + 1)])
    t3 = dleft("beta", dleft("beta", dleft("c", f)))
    return t1.scale(c1) + t2.scale(c2) + t3.scale(c3)


def _moyal_q1(m: Model, f: Element) -> Element:
    # hbar^2 part of <S_hbar, f>; S is cubic so C_5 and beyond vanish
    return moyal_term(m.tensor, 3, m.s_hbar, f).scale(2)


def _assert_shift(kind: DifferentialKind, f: Element, out: Element):
    gf, go = grading(f), grading(out)
    if gf is None or go is None or gf.ghost is None:
        return
    if go.ghost != gf.ghost + 1:
        raise ConsistencyError(f"{kind.value} moved ghost {gf.ghost} to {go.ghost} on {render(f)}")
    shift = kind.shift
    if shift is None or gf.tdeg is None:
        return
    if go.tdeg != gf.tdeg + shift[1]:
        raise ConsistencyError(f"{kind.value} moved T {gf.tdeg} to {go.tdeg} on {render(f)}")


def apply_diff(m: Model, kind: Union[DifferentialKind, str], f: Element, cross_check: bool = True) -> Element:
    kind = DifferentialKind(kind)
    if f.table != m.table:
        raise DomainError("Generator table mismatch")
    table = m.table
    if kind is DifferentialKind.Q0:
        out = poisson(m.tensor, m.s, f)
    elif kind is DifferentialKind.Q1:
        out = _moyal_q1(m, f)
        if cross_check and m.flat:
            explicit = explicit_q1(m, f)
            if explicit != out:
                raise ConsistencyError(
                    f"Q1 mismatch on {render(f)}: Moyal {render(out)}, explicit {render(explicit)}"
                )
    elif kind is DifferentialKind.QTOTAL:
        out = scaled_bracket(m.tensor, m.s_hbar, f)
    elif kind is DifferentialKind.PAGE0:
        half_pp = poisson(m.tensor, m.pi, m.pi).scale(Fraction(1, 2))
        out = half_pp * dleft("b", f) - m.pi * dleft("beta", f)
    elif kind is DifferentialKind.PAGE1:
        out = -(table.gen("gamma", 2) * dleft("c", f))
    else:
        gamma = table.gen("gamma")
        out = gamma * poisson(m.tensor, m.pi, f) + (table.gen("b") * gamma).scale(2) * dleft("beta", f)
    _assert_shift(kind, f, out)
    return out


def ad_s_coefficients(m: Model) -> Dict[str, Element]:
    """Coefficients of d/db, d/dc, d/dbeta in Q0 = sum Q0(v) d/dv."""
    return {name: apply_diff(m, DifferentialKind.Q0, m.gen(name)) for name in ("b", "c", "beta")}


# ============================
# Cocycle families
# ============================
def _check_f(m: Model, f: Optional[Element]) -> Element:
    if f is None:
        return m.table.one()
    if f.table != m.table:
        raise DomainError("Generator table mismatch")
    allowed = {m.table.index(x_name(a)) for a in range(1, m.d + 1)}
    allowed |= {m.table.index(name) for name in FAMILY_GENERATORS}
    for mono in f.terms:
        for i, e in enumerate(mono):
            if e and i not in allowed:
                raise DomainError(f"f may only involve x, c and gamma; found {m.table.names[i]} in {render(f)}")
    return f


def _check_k(k: int, least: int, what: str):
    if not isinstance(k, int) or k < least:
        raise DomainError(f"{what} needs an integer k >= {least}, got {k!r}")


def pi_theta(m: Model) -> Element:
    return poisson(m.tensor, m.pi, m.theta)


def bracket_term(m: Model, f: Element) -> Element:
    """{{pi, f}, Theta}."""
    return poisson(m.tensor, poisson(m.tensor, m.pi, f), m.theta)


def xi_k(m: Model, k: int, f: Optional[Element] = None) -> Element:
    _check_k(k, 0, "xi_k")
    f = _check_f(m, f)
    return -(m.gen("gamma", -1) * m.beta_dp(k) * m.gen("c") * f * m.theta)


def eta_k(m: Model, k: int, f: Optional[Element] = None, construction: str = "poisson", sign: int = 1) -> Element:
    """
    gamma^-1 beta^[k-1] f Theta + sign * gamma^-1 beta^[k] c {{pi, f}, Theta}.

    construction="moyal" replaces products by star products and brackets by
    scaled Moyal brackets.
    """
    _check_k(k, 1, "eta_k")
    f = _check_f(m, f)
    ginv = m.gen("gamma", -1)
    lead = ginv * m.beta_dp(k) * m.gen("c")
    if construction == "poisson":
        return ginv * m.beta_dp(k - 1) * f * m.theta + (lead * bracket_term(m, f)).scale(sign)
    if construction == "moyal":
        inner = scaled_bracket(m.tensor, scaled_bracket(m.tensor, m.pi, f), m.theta)
        f_theta = star(m.tensor, f, m.theta)
        return star(m.tensor, ginv * m.beta_dp(k - 1), f_theta) + star(m.tensor, lead, inner).scale(sign)
    raise DomainError(f"Unknown eta construction '{construction}'")


def X_k(m: Model, k: int, f: Optional[Element] = None) -> Element:
    _check_k(k, 0, "X_k")
    f = _check_f(m, f)
    gamma, b, c = m.gen("gamma"), m.gen("b"), m.gen("c")
    return (
        gamma * m.beta_dp(k) * f * m.theta
        - (m.beta_dp(k - 1) * b * c * f * m.theta).scale(2)
        + m.beta_dp(k) * c * f * pi_theta(m)
    )


def Y_k(m: Model, k: int, f: Optional[Element] = None, sign: int = 1) -> Element:
    """Closed form of Q0 eta_k(f); sign multiplies every {{pi, f}, Theta} term."""
    _check_k(k, 1, "Y_k")
    f = _check_f(m, f)
    gamma, b, c = m.gen("gamma"), m.gen("b"), m.gen("c")
    F = bracket_term(m, f)
    mixed = (m.beta_dp(k - 1) * b * c).scale(2) - gamma * m.beta_dp(k)
    return (
        (m.beta_dp(k - 2) * b * f * m.theta).scale(2)
        + m.beta_dp(k - 1) * f * pi_theta(m)
        + (mixed * F).scale(sign)
        - (m.beta_dp(k) * c * poisson(m.tensor, m.pi, F)).scale(sign)
    )


def A_k(m: Model, k: int, f: Optional[Element] = None) -> Element:
    _check_k(k, 0, "A_k")
    f = _check_f(m, f)
    return m.beta_dp(k) * f * m.theta


def B_k(m: Model, k: int, f: Optional[Element] = None) -> Element:
    _check_k(k, 0, "B_k")
    f = _check_f(m, f)
    return (m.beta_dp(k - 1) * m.gen("b") * f * m.theta).scale(2) + m.beta_dp(k) * f * pi_theta(m)


def x_monomials(m: Model, degree: int) -> List[Element]:
    """All monomials of the given degree in x1..xd, in a fixed order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(1, m.d + 1), degree):
        exps: Dict[str, int] = {}
        for a in combo:
            exps[x_name(a)] = exps.get(x_name(a), 0) + 1
        out.append(m.table.monomial(exps))
    return out


def f_grid(m: Model, max_degree: int, with_gamma: bool = True) -> List[Element]:
    """Monomials in x (and gamma) of total degree <= max_degree."""
    out = []
    for deg in range(max_degree + 1):
        for j in range(deg + 1 if with_gamma else 1):
            gamma_j = m.gen("gamma", j)
            out.extend(gamma_j * mono for mono in x_monomials(m, deg - j))
    return out


def family_members(m: Model, ghost: int, tdeg: int) -> List[Tuple[str, Element]]:
    """
    X_k(f) and closed Y_k(f) with f an x-monomial landing in (ghost, tdeg).

    Both families have ghost 1 - k; X_k(f) has T = k + 1 + deg f + d and
    Y_k(f) has T = k - 1 + deg f + d.
    """
    k = 1 - ghost
    members = []
    x_deg = tdeg - k - 1 - m.d
    if k >= 0 and x_deg >= 0:
        for f in x_monomials(m, x_deg):
            members.append((f"X_{k}({render(f)})", X_k(m, k, f)))
    y_deg = tdeg - k + 1 - m.d
    if k >= 1 and y_deg >= 0:
        for f in x_monomials(m, y_deg):
            members.append((f"Y_{k}({render(f)})", Y_k(m, k, f, sign=-1)))
    return members


# ============================
# Star-product identities
# ============================
def _sign_d(m: Model) -> int:
    return -1 if m.d % 2 else 1


def clifford_relation(m: Model) -> Outcome:
    cases = []
    hbar = m.gen(HBAR)
    for a in range(1, m.d + 1):
        for b in range(1, m.d + 1):
            lhs = m.star(m.th(a), m.th(b))
            rhs = m.th(a) * m.th(b) + (hbar if a == b else m.table.zero())
            cases.append(({"a": a, "b": b}, compare([Reading(PRINTED, lhs, rhs)])))
    return combine(cases)


def clifford_lemma(m: Model) -> Outcome:
    """pi o Theta = -(-1)^d Theta o pi = 1/2 [pi, Theta]."""
    pt = m.star(m.pi, m.theta)
    tp = m.star(m.theta, m.pi).scale(-_sign_d(m))
    half = moyal_bracket(m.tensor, m.pi, m.theta).scale(Fraction(1, 2))
    return combine([
        ({"form": "pi o Theta = -(-1)^d Theta o pi"}, compare([Reading(PRINTED, pt, tp)])),
        ({"form": "pi o Theta = 1/2 [pi, Theta]"}, compare([Reading(PRINTED, pt, half)])),
    ])


def clifford_corollary(m: Model, f: Element) -> Outcome:
    f = _check_f(m, f)
    lhs = m.star(m.pi, m.star(f, m.theta)) + m.star(m.star(f, m.theta), m.pi).scale(_sign_d(m))
    inner = moyal_bracket(m.tensor, m.pi, f)
    rhs = moyal_bracket(m.tensor, inner, m.theta).scale(Fraction(1, 2))
    return compare([Reading(PRINTED, lhs, rhs)])


def ghost_star_products(m: Model, k: int) -> Outcome:
    """gamma o (gamma^-1 beta^[k] c) and (-gamma^-1 beta^[k] c) o gamma."""
    gamma, ginv, c, hbar = m.gen("gamma"), m.gen("gamma", -1), m.gen("c"), m.gen(HBAR)
    word = ginv * m.beta_dp(k) * c
    left = m.star(gamma, word)
    left_rhs = m.beta_dp(k) * c - (hbar * ginv * m.beta_dp(k - 1) * c).scale(Fraction(1, 2))
    right = m.star(-word, gamma)
    right_rhs = -(m.beta_dp(k) * c + (hbar * ginv * m.beta_dp(k - 1) * c).scale(Fraction(1, 2)))
    return combine([
        ({"side": "left"}, compare([Reading(PRINTED, left, left_rhs)])),
        ({"side": "right"}, compare([Reading(PRINTED, right, right_rhs)])),
    ])


def _moyal_bracket_term(m: Model, f: Element) -> Element:
    """<<pi, f>, Theta>."""
    return m.sbracket(m.sbracket(m.pi, f), m.theta)


def gamma2b_xi(m: Model, k: int, f: Element) -> Outcome:
    gamma, b, c, hbar = m.gen("gamma"), m.gen("b"), m.gen("c"), m.gen(HBAR)
    lhs = m.sbracket(m.gen("gamma", 2) * b, xi_k(m, k, f))
    f_theta = m.star(f, m.theta)
    head = gamma * m.beta_dp(k) - (m.beta_dp(k - 1) * b * c).scale(2)
    tail = (hbar ** 2 * m.gen("gamma", -1) * m.beta_dp(k - 2)).scale(Fraction(1, 4))
    rhs = m.star(head, f_theta) + m.star(tail, f_theta)
    return compare([Reading(PRINTED, lhs, rhs)])


def gammapi_xi(m: Model, k: int, f: Element) -> Outcome:
    hbar, c = m.gen(HBAR), m.gen("c")
    lhs = m.sbracket(m.gen("gamma") * m.pi, xi_k(m, k, f))
    first = m.star(m.beta_dp(k) * c, m.sbracket(m.pi, m.star(f, m.theta)))
    tail = m.star(hbar ** 2 * m.gen("gamma", -1) * m.beta_dp(k - 1) * c, _moyal_bracket_term(m, f))
    return compare([
        Reading(PRINTED, lhs, first - tail.scale(Fraction(1, 4))),
        Reading(SIGN_REVERSED, lhs, first + tail.scale(Fraction(1, 4))),
    ])


def s_hbar_xi(m: Model, k: int, f: Element) -> Outcome:
    """<S_hbar, xi_k(f)> against its printed hbar^0 + hbar^2 expansion, order by order."""
    gamma, b, c, hbar = m.gen("gamma"), m.gen("b"), m.gen("c"), m.gen(HBAR)
    ginv = m.gen("gamma", -1)
    lhs = m.sbracket(m.s_hbar, xi_k(m, k, f))
    f_theta = m.star(f, m.theta)
    classical = m.star(gamma * m.beta_dp(k) - (m.beta_dp(k - 1) * b * c).scale(2), f_theta)
    classical = classical + m.star(m.beta_dp(k) * c, m.sbracket(m.pi, f_theta))
    h2 = (hbar ** 2).scale(Fraction(1, 4))
    t1 = h2 * m.star(ginv * m.beta_dp(k - 2), f_theta)
    t2 = h2 * m.star(ginv * m.beta_dp(k - 1) * c, _moyal_bracket_term(m, f))
    return compare_by_hbar([
        Reading(PRINTED, lhs, classical - t1 - t2),
        Reading(SIGN_REVERSED, lhs, classical - t1 + t2),
    ])


def eta_hbar2(m: Model, k: int, f: Element) -> Outcome:
    """eta_k(f) as the hbar^2 coefficient of <S_hbar, xi_{k+1}(f)>."""
    parts = m.sbracket(m.s_hbar, xi_k(m, k + 1, f)).hbar_parts()
    lhs = parts.get(2, m.table.zero())
    return compare([
        Reading(PRINTED, lhs, eta_k(m, k, f, construction="moyal")),
        Reading(SIGN_REVERSED, lhs, eta_k(m, k, f, construction="moyal", sign=-1)),
    ])


def _grid(m: Model, ks: Sequence[int], fdeg_max: int, fn: Callable[[Model, int, Element], Outcome]) -> Outcome:
    fs = f_grid(m, fdeg_max, with_gamma=False)
    return combine([({"k": k, "f": render(f)}, fn(m, k, f)) for k in ks for f in fs])


CliffordCheck = Callable[[Model, int, int], Outcome]

# id -> (location, check(m, kmax, fdeg_max))
CLIFFORD_CHECKS: Dict[str, Tuple[str, CliffordCheck]] = {
    "clifford_relation": (
        "Clifford quantization of the odd variables",
        lambda m, kmax, fdeg: clifford_relation(m),
    ),
    "clifford_lemma": (
        "supercharge against the volume element under the star product",
        lambda m, kmax, fdeg: clifford_lemma(m),
    ),
    "clifford_corollary": (
        "twisted supercharge identity with a function f",
        lambda m, kmax, fdeg: combine(
            [({"f": render(f)}, clifford_corollary(m, f)) for f in f_grid(m, fdeg, with_gamma=False)]
        ),
    ),
    "ghost_star_products": (
        "star products of gamma with ghost monomials",
        lambda m, kmax, fdeg: combine([({"k": k}, ghost_star_products(m, k)) for k in range(kmax + 1)]),
    ),
    "moyal_gamma2b_xi": (
        "Moyal bracket of gamma^2 b with xi_k(f)",
        lambda m, kmax, fdeg: _grid(m, range(kmax + 1), fdeg, gamma2b_xi),
    ),
    "moyal_gammapi_xi": (
        "Moyal bracket of gamma pi with xi_k(f)",
        lambda m, kmax, fdeg: _grid(m, range(kmax + 1), fdeg, gammapi_xi),
    ),
    "moyal_s_xi": (
        "Moyal bracket of S_hbar with xi_k(f)",
        lambda m, kmax, fdeg: _grid(m, range(2, kmax + 1), fdeg, s_hbar_xi),
    ),
    "eta_hbar2_coefficient": (
        "eta_k(f) as the hbar^2 coefficient of <S_hbar, xi_{k+1}(f)>",
        lambda m, kmax, fdeg: _grid(m, range(1, kmax), fdeg, eta_hbar2),
    ),
}


def clifford_checks(
    m: Model, kmax: int = 3, fdeg_max: int = 1, only: Optional[Sequence[str]] = None
) -> List[CheckResult]:
    """Star-product identities, one CheckResult each, in catalog order."""
    params = {"d": m.d, "kmax": kmax, "fdeg_max": fdeg_max}
    results = []
    for cid, (location, check) in CLIFFORD_CHECKS.items():
        if only is not None and cid not in only:
            continue
        o = check(m, kmax, fdeg_max)
        logger.info("%s: %s", cid, o.status.value)
        results.append(CheckResult(cid, location, params, o.status, o.residual, o.note))
    return results
