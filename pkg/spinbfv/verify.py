"""
The identity catalog.

Each check is a function of a SuiteContext returning an Outcome; run_suite turns
them into CheckResults in catalog order. Failures inside a check are data, not
exceptions: a SpinBFVError raised while checking is reported as a fail.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .brackets import moyal_bracket, moyal_term, odd_bracket_sum
from .cohomology import Bidegree, all_monomials, betti, d1_on_E1, differential_block, enumerate_basis
from .config import Bounds
from .errors import SpinBFVError
from .model import (
    CLIFFORD_CHECKS,
    PRINTED_Q1_COEFFICIENTS,
    DifferentialKind,
    FILTRATION_WEIGHTS,
    Model,
    A_k,
    B_k,
    X_k,
    Y_k,
    ad_s_coefficients,
    apply_diff,
    bracket_term,
    build_generic_S,
    build_model,
    clifford_corollary,
    eta_k,
    explicit_q1,
    f_grid,
    p_name,
    pi_theta,
    th_name,
    x_name,
    xi_k,
)
from .report import PRINTED, SIGN_REVERSED, CheckResult, Outcome, Reading, Status, combine, compare, compare_by_hbar
from .sampling import random_b_field, random_homogeneous, random_pi, random_x_function, rng_for
from .superalg import Element, leading_filtration_part, render, total

logger = logging.getLogger(__name__)

Q0, Q1 = DifferentialKind.Q0, DifferentialKind.Q1


@dataclass(frozen=True)
class SuiteContext:
    model: Model
    bounds: Bounds
    seed: int = 0
    samples: int = 10
    gamma_min: int = 0


@dataclass(frozen=True)
class Check:
    check_id: str
    location: str
    run: Callable[[SuiteContext], Outcome]
    params: Tuple[str, ...] = ()
    flat_only: bool = False
    randomized: bool = False


# ============================
# Helpers
# ============================
def _exact(lhs: Element, rhs: Element) -> Outcome:
    return compare([Reading(PRINTED, lhs, rhs)])


def _zero(ctx: SuiteContext) -> Element:
    return ctx.model.table.zero()


def _xy_grid(ctx: SuiteContext) -> List[Element]:
    """c-free f in x and gamma."""
    return f_grid(ctx.model, ctx.bounds.fdeg_max, with_gamma=True)


def _x_grid(ctx: SuiteContext) -> List[Element]:
    return f_grid(ctx.model, ctx.bounds.fdeg_max, with_gamma=False)


def _kf_grid(ks: Iterable[int], fs: Sequence[Element], fn: Callable[[int, Element], Outcome]) -> Outcome:
    return combine([({"k": k, "f": render(f)}, fn(k, f)) for k in ks for f in fs])


def _samples(ctx: SuiteContext, check_id: str, draw: Callable, count: Optional[int] = None) -> Outcome:
    rng = rng_for(ctx.seed, check_id)
    cases = []
    for i in range(ctx.samples if count is None else count):
        cases.append(({"sample": i}, draw(rng)))
    return combine(cases)


def _parity_pieces(f: Element) -> List[Element]:
    return [part for _, part in sorted(f.parity_parts().items())]


def _parity(f: Element) -> int:
    return f.table.parity(next(iter(f.terms)))


def _q0(ctx: SuiteContext, f: Element) -> Element:
    return apply_diff(ctx.model, Q0, f)


def _q1(ctx: SuiteContext, f: Element) -> Element:
    return apply_diff(ctx.model, Q1, f)


# ============================
# Maurer-Cartan
# ============================
def check_mc_poisson(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    return _exact(m.bracket(m.s, m.s), _zero(ctx))


def check_mc_moyal(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    return combine([
        ({"form": "<S_hbar, S_hbar>"}, _exact(m.sbracket(m.s_hbar, m.s_hbar), _zero(ctx))),
        ({"form": "S_hbar o S_hbar"}, _exact(m.star(m.s_hbar, m.s_hbar), _zero(ctx))),
    ])


def check_s_hbar_equals_s(ctx: SuiteContext) -> Outcome:
    return _exact(ctx.model.s_hbar, ctx.model.s)


def check_mc_random_backgrounds(ctx: SuiteContext) -> Outcome:
    d = ctx.model.d

    def draw(rng) -> Outcome:
        m = build_model(d, random_b_field(rng, d))
        return combine([
            ({"form": "{S, S}"}, _exact(m.bracket(m.s, m.s), m.table.zero())),
            ({"form": "<S_hbar, S_hbar>"}, _exact(m.sbracket(m.s_hbar, m.s_hbar), m.table.zero())),
        ])

    return _samples(ctx, "mc_random_backgrounds", draw, min(ctx.samples, 3))


def check_generic_s_mc(ctx: SuiteContext) -> Outcome:
    m = ctx.model

    def draw(rng) -> Outcome:
        s = build_generic_S(m.table, m.tensor, random_pi(rng, m.table, m.d))
        return _exact(m.bracket(s, s), m.table.zero())

    return _samples(ctx, "generic_s_mc", draw)


# ============================
# Moyal structure
# ============================
def _random_factor(ctx: SuiteContext, rng) -> Element:
    return random_homogeneous(rng, ctx.model, rng.randint(0, 2))


def check_star_associativity(ctx: SuiteContext) -> Outcome:
    m = ctx.model

    def draw(rng) -> Outcome:
        f, g, h = (_random_factor(ctx, rng) for _ in range(3))
        return _exact(m.star(m.star(f, g), h), m.star(f, m.star(g, h)))

    return _samples(ctx, "star_associativity", draw)


def check_ck_symmetry(ctx: SuiteContext) -> Outcome:
    """C_k(g, f) = (-1)^(k + |f||g|) C_k(f, g)."""
    m = ctx.model

    def draw(rng) -> Outcome:
        f, g = _random_factor(ctx, rng), _random_factor(ctx, rng)
        cases = []
        for fp in _parity_pieces(f):
            for gp in _parity_pieces(g):
                for k in range(5):
                    sign = (k + _parity(fp) * _parity(gp)) % 2
                    lhs = moyal_term(m.tensor, k, gp, fp)
                    rhs = moyal_term(m.tensor, k, fp, gp)
                    cases.append(({"k": k}, _exact(lhs, -rhs if sign else rhs)))
        return combine(cases)

    return _samples(ctx, "ck_symmetry", draw)


def check_bracket_expansion(ctx: SuiteContext) -> Outcome:
    m = ctx.model

    def draw(rng) -> Outcome:
        f, g = _random_factor(ctx, rng), _random_factor(ctx, rng)
        leading = moyal_term(m.tensor, 1, f, g)
        return combine([
            ({"form": "[f,g] by odd orders"}, compare_by_hbar(
                [Reading(PRINTED, moyal_bracket(m.tensor, f, g), odd_bracket_sum(m.tensor, f, g))]
            )),
            ({"form": "C_1 = 1/2 {,}"}, _exact(leading, m.bracket(f, g).scale(Fraction(1, 2)))),
        ])

    return _samples(ctx, "bracket_expansion", draw)


def _random_parity_triple(ctx: SuiteContext, rng) -> List[Element]:
    out = []
    for _ in range(3):
        pieces = _parity_pieces(_random_factor(ctx, rng))
        out.append(rng.choice(pieces) if pieces else ctx.model.table.one())
    return out


def check_poisson_jacobi(ctx: SuiteContext) -> Outcome:
    """{f, {g, h}} = {{f, g}, h} + (-1)^(|f||g|) {g, {f, h}}."""
    m = ctx.model

    def draw(rng) -> Outcome:
        f, g, h = _random_parity_triple(ctx, rng)
        sign = -1 if _parity(f) and _parity(g) else 1
        lhs = m.bracket(f, m.bracket(g, h))
        rhs = m.bracket(m.bracket(f, g), h) + m.bracket(g, m.bracket(f, h)).scale(sign)
        return _exact(lhs, rhs)

    return _samples(ctx, "poisson_jacobi", draw)


def check_poisson_leibniz(ctx: SuiteContext) -> Outcome:
    """{f, gh} = {f, g} h + (-1)^(|f||g|) g {f, h}."""
    m = ctx.model

    def draw(rng) -> Outcome:
        f, g, h = _random_parity_triple(ctx, rng)
        sign = -1 if _parity(f) and _parity(g) else 1
        lhs = m.bracket(f, g * h)
        rhs = m.bracket(f, g) * h + (g * m.bracket(f, h)).scale(sign)
        return _exact(lhs, rhs)

    return _samples(ctx, "poisson_leibniz", draw)


# ============================
# The supercharge
# ============================
def check_pi_bracket_table(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    cases = []
    for a in range(1, m.d + 1):
        cases.append(({"bracket": f"{{pi,{x_name(a)}}}"}, _exact(m.bracket(m.pi, m.x(a)), m.th(a))))
        cases.append(({"bracket": f"{{pi,{th_name(a)}}}"}, _exact(m.bracket(m.pi, m.th(a)), m.p(a).scale(2))))
        b_row = [m.b_field[b - 1][a - 1] if m.b_field else 0 for b in range(1, m.d + 1)]
        expected = total(m.table, [m.th(b).scale(q) for b, q in zip(range(1, m.d + 1), b_row)])
        cases.append(({"bracket": f"{{pi,{p_name(a)}}}"}, _exact(m.bracket(m.pi, m.p(a)), expected)))
    pp = total(m.table, [(m.p(a) * m.p(a)).scale(2) for a in range(1, m.d + 1)])
    if m.b_field:
        pp = pp + total(m.table, [
            (m.th(a) * m.th(b)).scale(m.b_field[a - 1][b - 1])
            for a in range(1, m.d + 1) for b in range(1, m.d + 1)
        ])
    cases.append(({"bracket": "{pi,pi}"}, _exact(m.bracket(m.pi, m.pi), pp)))
    return combine(cases)


def _theta_hat(m: Model, a: int) -> Element:
    out = m.table.one()
    for b in range(1, m.d + 1):
        if b != a:
            out = out * m.th(b)
    return out


def check_pi_theta_bracket(ctx: SuiteContext) -> Outcome:
    """{pi, Theta} against 2 sum_a (-1)^a p_a Theta-hat_a."""
    m = ctx.model
    printed = total(m.table, [
        (m.p(a) * _theta_hat(m, a)).scale(2 * (-1) ** a) for a in range(1, m.d + 1)
    ])
    return _exact(pi_theta(m), printed)


def check_pi_pi_theta(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    return _exact(m.bracket(m.pi, m.pi) * m.theta, m.pi * pi_theta(m))


def check_lemma_pi_pi_ftheta(ctx: SuiteContext) -> Outcome:
    """{pi, {pi, f Theta}} + pi {{pi, f}, Theta} = 0."""
    m = ctx.model

    def case(f: Element) -> Outcome:
        double = m.bracket(m.pi, m.bracket(m.pi, f * m.theta))
        pf = m.pi * bracket_term(m, f)
        return compare([
            Reading(PRINTED, double + pf, _zero(ctx)),
            Reading(SIGN_REVERSED, double - pf, _zero(ctx)),
        ])

    return combine([({"f": render(f)}, case(f)) for f in _x_grid(ctx)])


# ============================
# Cocycle families
# ============================
def check_x_closed_form(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    return _kf_grid(
        range(ctx.bounds.kmax + 1), _xy_grid(ctx),
        lambda k, f: _exact(_q0(ctx, xi_k(m, k, f)), X_k(m, k, f)),
    )


def check_y_closed_form(ctx: SuiteContext) -> Outcome:
    m = ctx.model

    def case(k: int, f: Element) -> Outcome:
        return compare([
            Reading(PRINTED, _q0(ctx, eta_k(m, k, f)), Y_k(m, k, f)),
            Reading(SIGN_REVERSED, _q0(ctx, eta_k(m, k, f, sign=-1)), Y_k(m, k, f, sign=-1)),
        ])

    return _kf_grid(range(1, ctx.bounds.kmax + 1), _xy_grid(ctx), case)


def check_cocycles_closed(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    zero = _zero(ctx)

    def case(k: int, f: Element) -> Outcome:
        x_case = _exact(_q0(ctx, X_k(m, k, f)), zero)
        if k == 0:
            return x_case
        y_case = compare([
            Reading(PRINTED, _q0(ctx, Y_k(m, k, f)), zero),
            Reading(SIGN_REVERSED, _q0(ctx, Y_k(m, k, f, sign=-1)), zero),
        ])
        return combine([({"family": "X"}, x_case), ({"family": "Y"}, y_case)])

    return _kf_grid(range(ctx.bounds.kmax + 1), _xy_grid(ctx), case)


def check_eta_constructions(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    return _kf_grid(
        range(1, ctx.bounds.kmax + 1), _x_grid(ctx),
        lambda k, f: _exact(eta_k(m, k, f, construction="moyal"), eta_k(m, k, f)),
    )


# ============================
# Filtration pages
# ============================
def _page(ctx: SuiteContext, n: int, f: Element) -> Element:
    return apply_diff(ctx.model, DifferentialKind(f"page{n}"), f)


def check_page0_cocycles(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    zero = _zero(ctx)

    def case(k: int, f: Element) -> Outcome:
        return combine([
            ({"element": "A"}, _exact(_page(ctx, 0, A_k(m, k, f)), zero)),
            ({"element": "B"}, _exact(_page(ctx, 0, B_k(m, k, f)), zero)),
        ])

    return _kf_grid(range(ctx.bounds.kmax + 1), _xy_grid(ctx), case)


def check_page2_a(ctx: SuiteContext) -> Outcome:
    m = ctx.model
    return _kf_grid(
        range(ctx.bounds.kmax + 1), _x_grid(ctx),
        lambda k, f: _exact(_page(ctx, 2, A_k(m, k, f)), m.gen("gamma") * B_k(m, k, f)),
    )


def check_page2_gamma_a(ctx: SuiteContext) -> Outcome:
    """Q(2) gamma A_k(f) is the Page1 image of -c B_k(f)."""
    m = ctx.model
    return _kf_grid(
        range(ctx.bounds.kmax + 1), _x_grid(ctx),
        lambda k, f: _exact(
            _page(ctx, 2, m.gen("gamma") * A_k(m, k, f)), _page(ctx, 1, -(m.gen("c") * B_k(m, k, f)))
        ),
    )


def check_page2_b(ctx: SuiteContext) -> Outcome:
    """Q(2) B_k(f) is the Page0 image of -gamma beta^[k+1] {{pi, f}, Theta}."""
    m = ctx.model

    def case(k: int, f: Element) -> Outcome:
        primitive = -(m.gen("gamma") * m.beta_dp(k + 1) * bracket_term(m, f))
        return _exact(_page(ctx, 2, B_k(m, k, f)), _page(ctx, 0, primitive))

    return _kf_grid(range(ctx.bounds.kmax + 1), _x_grid(ctx), case)


def check_lift_x(ctx: SuiteContext) -> Outcome:
    m = ctx.model

    def case(k: int, f: Element) -> Outcome:
        _, lead = leading_filtration_part(X_k(m, k, f), FILTRATION_WEIGHTS)
        return _exact(lead, m.gen("gamma") * A_k(m, k, f))

    return _kf_grid(range(ctx.bounds.kmax + 1), _x_grid(ctx), case)


def check_lift_y(ctx: SuiteContext) -> Outcome:
    """B_k(f) lifts to (k+1)^-1 Y_{k+1}(f)."""
    m = ctx.model

    def case(k: int, f: Element) -> Outcome:
        lift = Y_k(m, k + 1, f, sign=-1).scale(Fraction(1, k + 1))
        _, lead = leading_filtration_part(lift, FILTRATION_WEIGHTS)
        return _exact(lead, B_k(m, k, f))

    return _kf_grid(range(ctx.bounds.kmax + 1), _x_grid(ctx), case)


# ============================
# The hbar^2 differential
# ============================
def _q1_inputs(m: Model) -> Dict[str, Element]:
    x1, th1 = m.x(1), m.th(1)
    b, c, beta = m.gen("b"), m.gen("c"), m.gen("beta")
    return {
        render(x1 * x1 * b): x1 * x1 * b,
        render(x1 * th1 * beta): x1 * th1 * beta,
        render(beta * beta * c): beta * beta * c,
    }


def check_q1_explicit(ctx: SuiteContext) -> Outcome:
    """Moyal Q1 against the printed third-order operator."""
    m = ctx.model
    cases = []
    for label, f in _q1_inputs(m).items():
        lhs = apply_diff(m, Q1, f, cross_check=False)
        cases.append(({"input": label}, _exact(lhs, explicit_q1(m, f, PRINTED_Q1_COEFFICIENTS))))
    return combine(cases)


def check_q1_cross_check(ctx: SuiteContext) -> Outcome:
    """Moyal Q1 against the derived third-order operator on every basis monomial."""
    m = ctx.model
    cases = []
    for tdeg in range(ctx.bounds.tmax + 1):
        for mono in all_monomials(m, tdeg, ctx.gamma_min):
            f = Element(m.table, {mono: 1})
            o = _exact(apply_diff(m, Q1, f, cross_check=False), explicit_q1(m, f))
            if o.status is not Status.PASS:
                cases.append(({"monomial": render(f)}, o))
    return combine(cases) if cases else Outcome(Status.PASS, "0")


def check_q1_xi(ctx: SuiteContext) -> Outcome:
    """Q1 xi_k(f) = -1/4 eta_{k-1}(f)."""
    m = ctx.model

    def case(k: int, f: Element) -> Outcome:
        lhs = _q1(ctx, xi_k(m, k, f))
        quarter = Fraction(-1, 4)
        return compare([
            Reading(PRINTED, lhs, eta_k(m, k - 1, f).scale(quarter)),
            Reading(SIGN_REVERSED, lhs, eta_k(m, k - 1, f, sign=-1).scale(quarter)),
        ])

    return _kf_grid(range(2, ctx.bounds.kmax + 1), _xy_grid(ctx), case)


def check_q1_x(ctx: SuiteContext) -> Outcome:
    """Q1 X_k(f) = -1/4 Y_{k-1}(f)."""
    m = ctx.model

    def case(k: int, f: Element) -> Outcome:
        lhs = _q1(ctx, X_k(m, k, f))
        quarter = Fraction(-1, 4)
        return compare([
            Reading(PRINTED, lhs, Y_k(m, k - 1, f).scale(quarter)),
            Reading(SIGN_REVERSED, lhs, Y_k(m, k - 1, f, sign=-1).scale(quarter)),
        ])

    return _kf_grid(range(2, ctx.bounds.kmax + 1), _xy_grid(ctx), case)


def _window(ctx: SuiteContext) -> List[Bidegree]:
    m = ctx.model
    out = []
    for tdeg in range(ctx.bounds.tmax + 1):
        for ghost in range(-tdeg, tdeg + 1):
            bd = Bidegree(ghost, tdeg)
            if enumerate_basis(m, bd, ctx.gamma_min).monomials:
                out.append(bd)
    return out


def _block(ctx: SuiteContext, kind: DifferentialKind, bd: Bidegree):
    return differential_block(ctx.model, kind, bd, ctx.gamma_min)


def check_double_complex(ctx: SuiteContext) -> Outcome:
    """Q0^2 = 0, Q0 Q1 + Q1 Q0 = 0 and Q1^2 = 0 as matrices on each bidegree."""
    cases = []
    for bd in _window(ctx):
        q0 = _block(ctx, Q0, bd)
        q1 = _block(ctx, Q1, bd)
        after0 = bd.shifted(Q0.shift)
        after1 = bd.shifted(Q1.shift)
        products = {"q0q0": linalg.matmul(_block(ctx, Q0, after0).matrix, q0.matrix)}
        if after1 is not None:
            q0q1 = linalg.matmul(_block(ctx, Q0, after1).matrix, q1.matrix)
            q1q0 = linalg.matmul(_block(ctx, Q1, after0).matrix, q0.matrix)
            products["q0q1+q1q0"] = q0q1 + q1q0
            second = after1.shifted(Q1.shift)
            if second is not None:
                products["q1q1"] = linalg.matmul(_block(ctx, Q1, after1).matrix, q1.matrix)
        for name, product in products.items():
            ok = linalg.is_zero(product)
            status = Status.PASS if ok else Status.FAIL
            note = "" if ok else f"{name} nonzero at {bd}"
            cases.append(({"ghost": bd.ghost, "tdeg": bd.tdeg, "identity": name}, Outcome(status, None, note)))
    return combine(cases)


def check_qtotal_nilpotent(ctx: SuiteContext) -> Outcome:
    m = ctx.model

    def draw(rng) -> Outcome:
        f = random_homogeneous(rng, m, rng.randint(0, 3))
        q = DifferentialKind.QTOTAL
        return _exact(apply_diff(m, q, apply_diff(m, q, f)), _zero(ctx))

    return _samples(ctx, "qtotal_nilpotent", draw)


def check_clifford_corollary(ctx: SuiteContext) -> Outcome:
    m = ctx.model

    def draw(rng) -> Outcome:
        return clifford_corollary(m, random_x_function(rng, m, max(ctx.bounds.fdeg_max, 1)))

    return _samples(ctx, "clifford_corollary", draw)


def check_ad_s_generators(ctx: SuiteContext) -> Outcome:
    """Q0(b) = {pi,pi}/2, Q0(c) = gamma^2, Q0(beta) = pi - 2 b gamma."""
    m = ctx.model
    gamma, b = m.gen("gamma"), m.gen("b")
    printed = {
        "b": m.bracket(m.pi, m.pi).scale(Fraction(1, 2)),
        "c": gamma * gamma,
        "beta": m.pi - (b * gamma).scale(2),
    }
    computed = ad_s_coefficients(m)
    return combine([({"generator": name}, _exact(computed[name], rhs)) for name, rhs in printed.items()])


# ============================
# Cohomology
# ============================
NEGATIVE_GHOSTS = (-1, -2, -3, -4)


def check_cohomology_theorem(ctx: SuiteContext) -> Outcome:
    """Q0 Betti numbers vanish for ghost >= 2 and match the X/Y span below ghost 0."""
    m = ctx.model
    cases = []
    for tdeg in range(ctx.bounds.tmax + 1):
        for ghost in NEGATIVE_GHOSTS:
            row = betti(m, Q0, Bidegree(ghost, tdeg), ctx.gamma_min, with_family=True)
            ok = row.betti == row.family_rank
            note = "" if ok else f"betti {row.betti} != family rank {row.family_rank} at {row.bidegree}"
            cases.append(({"ghost": ghost, "tdeg": tdeg}, Outcome(Status.PASS if ok else Status.FAIL, None, note)))
        for ghost in range(2, tdeg + 1):
            row = betti(m, Q0, Bidegree(ghost, tdeg), ctx.gamma_min)
            ok = row.betti == 0
            note = "" if ok else f"betti {row.betti} at {row.bidegree}"
            cases.append(({"ghost": ghost, "tdeg": tdeg}, Outcome(Status.PASS if ok else Status.FAIL, None, note)))
    return combine(cases)


def check_e2_vanishing(ctx: SuiteContext) -> Outcome:
    """d1 = [Q1] on H(Q0) leaves nothing in negative ghost."""
    cases = []
    for tdeg in range(ctx.bounds.tmax + 1):
        for ghost in NEGATIVE_GHOSTS:
            res = d1_on_E1(ctx.model, Bidegree(ghost, tdeg), ctx.gamma_min)
            ok = res.e2_betti == 0
            note = "" if ok else f"E2 betti {res.e2_betti} at ghost={ghost}, T={tdeg}"
            cases.append(({"ghost": ghost, "tdeg": tdeg}, Outcome(Status.PASS if ok else Status.FAIL, None, note)))
    return combine(cases)


# ============================
# Catalog
# ============================
_K = ("d", "kmax", "fdeg_max")
_T = ("d", "tmax", "gamma_min")
_R = ("d", "seed", "samples")


def _clifford(check_id: str) -> Callable[[SuiteContext], Outcome]:
    def run(ctx: SuiteContext) -> Outcome:
        _, check = CLIFFORD_CHECKS[check_id]
        return check(ctx.model, ctx.bounds.kmax, ctx.bounds.fdeg_max)

    return run


CATALOG: Tuple[Check, ...] = (
    Check("mc_poisson", "Maurer-Cartan equation {S,S} = 0", check_mc_poisson, ("d",)),
    Check("mc_moyal", "quantum Maurer-Cartan S_hbar o S_hbar = 0", check_mc_moyal, ("d",)),
    Check("s_hbar_equals_s", "S_hbar equals S for constant brackets", check_s_hbar_equals_s, ("d",)),
    Check("mc_random_backgrounds", "Maurer-Cartan for constant magnetic fields",
          check_mc_random_backgrounds, _R, randomized=True),
    Check("generic_s_mc", "Maurer-Cartan for S built from any odd pi", check_generic_s_mc, _R, randomized=True),
    Check("star_associativity", "associativity of the Moyal star product",
          check_star_associativity, _R, randomized=True),
    Check("ck_symmetry", "graded symmetry of the bidifferential operators C_k",
          check_ck_symmetry, _R, randomized=True),
    Check("bracket_expansion", "Moyal bracket as the odd-order expansion 2 sum hbar^(2l+1) C_(2l+1)",
          check_bracket_expansion, _R, randomized=True),
    Check("poisson_jacobi", "graded Jacobi identity of the Poisson bracket", check_poisson_jacobi, _R, randomized=True),
    Check("poisson_leibniz", "graded Leibniz rule of the Poisson bracket", check_poisson_leibniz, _R, randomized=True),
    Check("pi_bracket_table", "brackets of pi with x, p, th and pi", check_pi_bracket_table, ("d",)),
    Check("pi_theta_bracket", "{pi, Theta} = 2 sum (-1)^a p_a Theta-hat_a", check_pi_theta_bracket, ("d",)),
    Check("pi_pi_theta", "{pi,pi} Theta = pi {pi, Theta}", check_pi_pi_theta, ("d",)),
    Check("lemma_pi_pi_ftheta", "{pi,{pi,f Theta}} + pi {{pi,f},Theta} = 0",
          check_lemma_pi_pi_ftheta, ("d", "fdeg_max")),
    Check("x_closed_form", "X_k(f) = Q0 xi_k(f)", check_x_closed_form, _K),
    Check("y_closed_form", "Y_k(f) = Q0 eta_k(f)", check_y_closed_form, _K),
    Check("cocycles_closed", "Q0 X_k(f) = Q0 Y_k(f) = 0", check_cocycles_closed, _K),
    Check("eta_constructions", "eta_k(f) from Poisson and from Moyal operations", check_eta_constructions, _K),
    Check("page0_cocycles", "A_k(f) and B_k(f) are Page0 cocycles", check_page0_cocycles, _K),
    Check("page2_a", "Q(2) A_k(f) = gamma B_k(f)", check_page2_a, _K),
    Check("page2_gamma_a", "Q(2) gamma A_k(f) = 0 on the second page", check_page2_gamma_a, _K),
    Check("page2_b", "Q(2) B_k(f) = 0 on the second page", check_page2_b, _K),
    Check("lift_x", "gamma A_k(f) lifts to X_k(f)", check_lift_x, _K),
    Check("lift_y", "B_k(f) lifts to (k+1)^-1 Y_(k+1)(f)", check_lift_y, _K),
    Check("q1_explicit", "Q1 as a third-order operator with coefficient -1/8",
          check_q1_explicit, ("d",), flat_only=True),
    Check("q1_cross_check", "Q1 from C_3 against the explicit third-order operator",
          check_q1_cross_check, _T, flat_only=True),
    Check("q1_xi", "Q1 xi_k(f) = -1/4 eta_(k-1)(f)", check_q1_xi, _K),
    Check("q1_x", "Q1 X_k(f) = -1/4 Y_(k-1)(f)", check_q1_x, _K),
    Check("double_complex", "Q0^2 = Q0 Q1 + Q1 Q0 = Q1^2 = 0", check_double_complex, _T),
    Check("qtotal_nilpotent", "Q = <S_hbar, -> squares to zero", check_qtotal_nilpotent, _R, randomized=True),
    Check("ad_s_generators", "Q0 on the ghost generators b, c, beta", check_ad_s_generators, ("d",)),
) + tuple(
    Check(cid, location, check_clifford_corollary, ("d", "fdeg_max", "seed", "samples"), randomized=True)
    if cid == "clifford_corollary"
    else Check(cid, location, _clifford(cid), _K)
    for cid, (location, _) in CLIFFORD_CHECKS.items()
) + (
    Check("cohomology_theorem", "H(Q0) spanned by X_k(f), Y_k(f) in negative ghost, zero above ghost 1",
          check_cohomology_theorem, _T),
    Check("e2_vanishing", "negative-ghost classes do not survive to the next page",
          check_e2_vanishing, _T, flat_only=True),
)

CHECKS_BY_ID: Dict[str, Check] = {c.check_id: c for c in CATALOG}


def check_ids() -> List[str]:
    return [c.check_id for c in CATALOG]


def _params(check: Check, ctx: SuiteContext) -> Dict[str, object]:
    values = {
        "d": ctx.model.d,
        "kmax": ctx.bounds.kmax,
        "fdeg_max": ctx.bounds.fdeg_max,
        "tmax": ctx.bounds.tmax,
        "gamma_min": ctx.gamma_min,
        "seed": ctx.seed,
        "samples": ctx.samples,
    }
    return {name: values[name] for name in check.params}


def run_check(check_id: str, ctx: SuiteContext) -> CheckResult:
    check = CHECKS_BY_ID.get(check_id)
    if check is None:
        return CheckResult(check_id, "", {}, Status.SKIPPED, None, "unknown check id")
    params = _params(check, ctx)
    if check.flat_only and not ctx.model.flat:
        return CheckResult(check_id, check.location, params, Status.SKIPPED, None,
                           "needs the flat model (no magnetic field)")
    try:
        outcome = check.run(ctx)
    except SpinBFVError as e:
        logger.warning("%s raised %s", check_id, e)
        outcome = Outcome(Status.FAIL, None, f"{type(e).__name__}: {e}")
    logger.info("%s: %s", check_id, outcome.status.value)
    return CheckResult(check_id, check.location, params, outcome.status, outcome.residual, outcome.note)


def run_suite(
    m: Model,
    selection: Optional[Iterable[str]] = None,
    bounds: Bounds = Bounds(),
    seed: int = 0,
    samples: int = 10,
    gamma_min: int = 0,
    jobs: int = 1,
) -> List[CheckResult]:
    """Run the selected checks (all when selection is empty) and return results in catalog order."""
    ctx = SuiteContext(m, bounds, seed, samples, gamma_min)
    wanted = list(dict.fromkeys(selection or ()))
    ids = [c for c in check_ids() if not wanted or c in wanted]
    ids += [c for c in wanted if c not in CHECKS_BY_ID]
    logger.info("Running %d checks (d=%d, seed=%d, jobs=%d)", len(ids), m.d, seed, jobs)
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_check, cid, ctx) for cid in ids]
            results = [f.result() for f in futures]
    else:
        results = [run_check(cid, ctx) for cid in ids]
    logger.info("Suite finished: %s", ", ".join(f"{r.check_id}={r.status.value}" for r in results))
    return results
