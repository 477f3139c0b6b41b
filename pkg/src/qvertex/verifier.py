"""Coefficient-exact verification of the braided vertex-algebra identities.

Every check computes both sides of an identity through independent code
paths (closed form vs. iterated operator product, or two expansion regions
of the same closed form), compares exact coefficients monomial by monomial
on a provably sound window, and returns a CheckReport.  Failures are data,
not exceptions; vacuous comparisons raise EmptyComparison.

The three shipped mutation hooks (flip the braiding sign, drop the
translation scalar from the Jacobi right-hand side, perturb the charge term
of D) exist to demonstrate that the checks are sensitive to each structural
ingredient.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .engine import (evaluate, s_gamma, s_tau, shift_substitute, x2_closed,
                     x2_closed_form, x120_closed_form, y_apply, y_product,
                     jing_Q)
from .errors import EmptyComparison, TruncationMismatch, WindowUnderflow
from .fock import FockVector, apply_D, exp_D, exp_D_chunk
from .laurent import (LaurentChunk, Monomial, NVARS, VAR_INDEX, Window,
                      binom_expansion_terms, laurent_mul, lform, region,
                      FactorProduct)
from .rationals import Rat
from .symfunc import SymFuncP, hl_q_oracle, p_to_x, partitions_up_to

REG12 = region("z1", "z2", "g")
REG21 = region("z2", "z1", "g")
REG23 = region("z2", "z3", "g")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check.

    first_mismatch is None on success, else (monomial, lhs, rhs) as strings;
    compared counts coefficient comparisons actually performed.
    """

    check_id: str
    params: dict
    compared: int
    passed: bool
    first_mismatch: tuple | None
    elapsed: float

    def as_dict(self) -> dict:
        fm = None
        if self.first_mismatch is not None:
            m, lhs, rhs = self.first_mismatch
            fm = {"monomial": m, "lhs": lhs, "rhs": rhs}
        return {"check_id": self.check_id, "params": self.params,
                "compared": self.compared, "passed": self.passed,
                "first_mismatch": fm, "elapsed": self.elapsed}

    def __str__(self):
        tag = "pass" if self.passed else \
            f"FAIL at {self.first_mismatch[0]}"
        return (f"{self.check_id}: {tag} ({self.compared} monomials, "
                f"{self.elapsed:.2f}s)")


class _Comparator:
    """Accumulates coefficient comparisons in deterministic order."""

    def __init__(self):
        self.compared = 0
        self.live = 0
        self.first = None

    def take(self, label, lhs, rhs):
        self.compared += 1
        if not (lhs.is_zero() and rhs.is_zero()):
            self.live += 1
        if self.first is None and lhs != rhs:
            self.first = (str(label), str(lhs), str(rhs))

    def chunks(self, lhs: LaurentChunk, rhs: LaurentChunk, window: Window,
               tag: str = ""):
        for m in _box(window):
            self.take(tag + str(m) if tag else m, lhs.get(m), rhs.get(m))

    def report(self, check_id: str, params: dict, t0: float) -> CheckReport:
        if self.compared == 0 or self.live == 0:
            raise EmptyComparison(
                f"{check_id}: nothing nonvacuous was compared")
        return CheckReport(check_id, params, self.compared,
                           self.first is None, self.first,
                           time.perf_counter() - t0)


def _box(window: Window):
    """All monomials of a finite window box, lexicographically."""
    (l0, h0), (l1, h1), (l2, h2), (l3, h3) = window.bounds
    for e0 in range(l0, h0 + 1):
        for e1 in range(l1, h1 + 1):
            for e2 in range(l2, h2 + 1):
                for e3 in range(l3, h3 + 1):
                    yield Monomial(e0, e1, e2, e3)


def _coeff_or_zero(chunk: LaurentChunk, m: Monomial):
    """Stored coefficient, or exact zero when m lies outside the support;
    anything else is an unsound probe."""
    if chunk.window.contains(m):
        return chunk.terms.get(m, chunk.zero)
    for i in range(NVARS):
        lo, hi = chunk.support[i]
        if (lo is not None and m[i] < lo) or (hi is not None and m[i] > hi):
            return chunk.zero
    raise WindowUnderflow(f"{m} outside window {chunk.window} but inside "
                          "support")


def _scalar_chunk(fp: FactorProduct, reg, zvars, g_bounds, t_order: int,
                  half_width: int) -> LaurentChunk:
    """Expand a braiding/translation scalar on a symmetric z-window wide
    enough to contain its own support (so products against it need no
    deficit analysis on the scalar side)."""
    M = half_width
    for _ in range(4):
        bounds = {v: (-M, M) for v in zvars}
        bounds["g"] = g_bounds
        sc = fp.expand(reg, Window.of(**bounds), t_order)
        worst = 0
        for v in zvars:
            lo, hi = sc.support[VAR_INDEX[v]]
            if lo is None or hi is None:
                raise WindowUnderflow(f"scalar support unbounded in {v}")
            worst = max(worst, -lo, hi)
        if worst <= M:
            return sc
        M = worst + 1
    raise WindowUnderflow("scalar support does not stabilize")


def _widened(target: Window, scalar_chunk: LaurentChunk,
             zvars) -> Window:
    """Window for the series factor so that scalar * series is sound on the
    target: per variable, target minus the scalar support."""
    bounds = list(target.bounds)
    for v in zvars:
        i = VAR_INDEX[v]
        slo, shi = scalar_chunk.support[i]
        if slo is None or shi is None:
            raise WindowUnderflow(f"scalar support unbounded in {v}")
        lo, hi = target.bounds[i]
        bounds[i] = (lo - shi, hi - slo)
    return Window(tuple(bounds))


# ---------------------------------------------------------------------------
# vacuum and translation dictionary


def check_vacuum(t_order: int = 3, window: int = 6, degree_cap: int = 8,
                 d_charge_coeff=None) -> CheckReport:
    """X(a x 1) = e^{z1 D}a, X(1 x a) = e^{z2 D}a, X(1 x 1) = vacuum, and
    Y(e^a, z)1 = e^{zD}e^a, all coefficientwise through z^window."""
    t0 = time.perf_counter()
    W, cap, T = window, degree_cap, t_order
    params = {"T": T, "window": W, "degree_cap": cap,
              "charges": [[1, 0], [0, 1], [0, 0]]}
    if d_charge_coeff is not None:
        params["mutation"] = "d-charge-coeff"
    cmp_ = _Comparator()
    ea = FockVector.exponential(1, cap, T)
    ed1 = exp_D(ea, "z1", W, d_charge_coeff)
    ed2 = exp_D(ea, "z2", W, d_charge_coeff)

    left = x2_closed(1, 0, REG12, Window.of(z1=(0, W)), cap, T).chunk
    for k in range(W + 1):
        m = Monomial.var("z1", k)
        cmp_.take(m, left.get(m), ed1.get(m))

    right = x2_closed(0, 1, REG12, Window.of(z2=(0, W)), cap, T).chunk
    for k in range(W + 1):
        m = Monomial.var("z2", k)
        cmp_.take(m, right.get(m), ed2.get(m))

    both = x2_closed(0, 0, REG12, Window.of(), cap, T).chunk
    cmp_.take("1", both.get(Monomial()), FockVector.vacuum(cap, T))

    yv = y_apply(1, "z1", FockVector.vacuum(cap, T), (0, W))
    for k in range(W + 1):
        m = Monomial.var("z1", k)
        cmp_.take(m, yv.get(m), ed1.get(m))

    return cmp_.report("vacuum", params, t0)


# ---------------------------------------------------------------------------
# braided commutativity


def check_braided_commutativity(a: int = 1, b: int = 1, t_order: int = 4,
                                window: int = 6, degree_cap: int = 8,
                                mutate_sign: bool = False) -> CheckReport:
    """X(a x b) against X-swapped composed with the braiding scalar."""
    t0 = time.perf_counter()
    W, cap, T = window, degree_cap, t_order
    params = {"T": T, "window": W, "degree_cap": cap, "charges": [a, b]}
    if mutate_sign:
        params["mutation"] = "s-tau-sign"
    target = Window.of(z1=(-W, W), z2=(-W, W))

    lhs = evaluate(x2_closed_form(a, b), REG12, target, cap, T)

    sc_fp = s_tau(a, b, "z2", "z1").scalar
    if mutate_sign:
        sc_fp = sc_fp.mul(FactorProduct.of(coeff=(Rat(-1),)))
    sc = _scalar_chunk(sc_fp, REG12, ("z1", "z2"), (0, 0), T,
                       abs(a * b) * (T + 2) + 2)

    swapped = x2_closed_form(b, a).substitute(
        {"z1": ("z2",), "z2": ("z1",)})
    xch = evaluate(swapped, REG12, _widened(target, sc, ("z1", "z2")),
                   cap, T)
    rhs = laurent_mul(sc, xch, target)

    cmp_ = _Comparator()
    cmp_.chunks(lhs, rhs, target)
    return cmp_.report("braided-commutativity", params, t0)


# ---------------------------------------------------------------------------
# broken translation covariance


def check_translation_covariance(a: int = 1, b: int = 1, t_order: int = 3,
                                 g_order: int = 3, window: int = 5,
                                 degree_cap: int = 9,
                                 d_charge_coeff=None) -> CheckReport:
    """e^{gD} X (S^{(g)} .) against X with both variables shifted by g."""
    t0 = time.perf_counter()
    W, G, cap, T = window, g_order, degree_cap, t_order
    params = {"T": T, "G": G, "window": W, "degree_cap": cap,
              "charges": [a, b]}
    if d_charge_coeff is not None:
        params["mutation"] = "d-charge-coeff"
    target = Window.of(z1=(-W, W), z2=(-W, W), g=(0, G))

    sc = _scalar_chunk(s_gamma(a, b).scalar, REG12, ("z1", "z2"), (0, G),
                       T, abs(a * b) * (T + G + 2) + 2)
    xch = evaluate(x2_closed_form(a, b), REG12,
                   _widened(Window.of(z1=(-W, W), z2=(-W, W)), sc,
                            ("z1", "z2")), cap, T)
    prod = laurent_mul(sc, xch, target)
    lhs = exp_D_chunk(prod, "g", G, d_charge_coeff)

    base = x2_closed(a, b, REG12, Window.of(), cap, T)
    rhs = shift_substitute(base, {"z1": ("z1", "g"), "z2": ("z2", "g")},
                           REG12, target).chunk

    cmp_ = _Comparator()
    cmp_.chunks(lhs, rhs, target)
    return cmp_.report("translation", params, t0)


# ---------------------------------------------------------------------------
# the expansion dictionary for the three-point function


def check_expansion_consistency(t_order: int = 3, window: int = 5,
                                degree_cap: int = 9) -> CheckReport:
    """The three region-expansions of X_{z1,z2,0}(e^a x e^a x c).

    Line 1: region (z1, z2) expansion equals Y(z1)Y(z2)e^a.
    Line 2: region (z2, z1) expansion equals the braiding scalar times the
    swapped product Y(z2)Y(z1)e^a.
    Line 3 (c = 1): X at (z2+z3, z2) equals the translation scalar at
    (z3, 0; gamma = z2) times e^{z2 D} Y(z3)e^a.
    """
    t0 = time.perf_counter()
    W, cap, T = window, degree_cap, t_order
    params = {"T": T, "window": W, "degree_cap": cap}
    ea = FockVector.exponential(1, cap, T)
    form = x120_closed_form(1, 1, 1)
    target = Window.of(z1=(-W, W), z2=(-W, W))
    cmp_ = _Comparator()

    xp1 = evaluate(form, REG12, target, cap, T)
    op1 = y_product(((1, "z1"), (1, "z2")), ea,
                    {"z1": (-W, W), "z2": (-W, W)})
    cmp_.chunks(xp1, op1, target, tag="line1 ")

    xp2 = evaluate(form, REG21, target, cap, T)
    sc = _scalar_chunk(s_tau(1, 1, "z2", "z1").scalar, REG21,
                       ("z1", "z2"), (0, 0), T, T + 4)
    wide = _widened(target, sc, ("z1", "z2"))
    # the weight quotient is not stable under the annihilation half of the
    # swapped product: a state just above the cap contracts back below it,
    # and the scalar's negative powers carry that boundary into the window
    # once T reaches cap - W.  Build the product past weight W + T, where
    # the leakage costs more than t^T, then project back down.
    cap2 = max(cap, W + T + 1)
    op2 = y_product(((1, "z2"), (1, "z1")),
                    FockVector.exponential(1, cap2, T),
                    {"z1": wide.range("z1"), "z2": wide.range("z2")})
    rhs2 = laurent_mul(sc, op2, target)
    rhs2 = LaurentChunk({m: v.weight_truncate(cap)
                         for m, v in rhs2.terms.items()},
                        rhs2.window, xp2.zero, rhs2.support)
    cmp_.chunks(xp2, rhs2, target, tag="line2 ")

    target3 = Window.of(z2=(-W, W), z3=(0, W))
    sub = x2_closed_form(1, 1).substitute({"z1": ("z2", "z3")})
    lhs3 = evaluate(sub, REG23, target3, cap, T)
    scg = s_gamma(1, 1, "z3", None, "z2").scalar.expand(
        REG23, Window.of(z2=(-(W + cap + T + 4), 2), z3=(0, W + T + 2)), T)
    ych = y_apply(1, "z3", ea, (1, W))
    ed = exp_D_chunk(ych, "z2", cap)
    # every stored state has nonnegative weight, so D^k kills it past the cap
    sup = tuple((0, cap) if i == VAR_INDEX["z2"] else s
                for i, s in enumerate(ed.support))
    ed = LaurentChunk(ed.terms, ed.window, ed.zero, sup)
    rhs3 = laurent_mul(scg, ed, target3)
    cmp_.chunks(lhs3, rhs3, target3, tag="line3 ")

    return cmp_.report("expansion", params, t0)


# ---------------------------------------------------------------------------
# braided Jacobi identity


def check_braided_jacobi(t_order: int = 3, window: int = 5,
                         degree_cap: int = 9,
                         drop_s_gamma: bool = False) -> CheckReport:
    """delta(z1-z2, z3) X - delta-swapped X = delta(z1, z2+z3) X-translated.

    All three blocks are expansions of the same closed three-point form (in
    regions (z1,z2), (z2,z1), (z2,z3)); the deltas contribute binomial
    convolutions with finitely many terms per output monomial, bounded by
    the support floors of the expanded chunks.
    """
    t0 = time.perf_counter()
    W, cap, T = window, degree_cap, t_order
    params = {"T": T, "window": W, "degree_cap": cap}
    if drop_s_gamma:
        params["mutation"] = "jacobi-drop-s-gamma"
    form = x120_closed_form(1, 1, 1)

    xp1 = evaluate(form, REG12,
                   Window.of(z1=(1 - T - 1, 3 * W), z2=(0, W)), cap, T)
    xp2 = evaluate(form, REG21,
                   Window.of(z1=(1 - T - 1, W), z2=(0, 3 * W + T)), cap, T)
    sub = form.substitute({"z1": ("z2", "z3")})
    if drop_s_gamma:
        undo = FactorProduct.of(factors=(
            (lform((1, "z2"), (1, "z3"), (-1, "z2", 1)), 1),
            (lform((1, "z2"), (1, "z3")), -1)))
        sub = type(sub)(sub.prefactor.mul(undo), sub.slots, sub.charge)
    xp3 = evaluate(sub, REG23,
                   Window.of(z2=(-2 * W, 3 * W), z3=(0, W)), cap, T)

    f1 = xp2.support[0][0]
    f2 = xp1.support[1][0]
    f3 = xp3.support[2][0]
    zero = xp1.zero

    cmp_ = _Comparator()
    for e1 in range(-W, W + 1):
        for e2 in range(-W, W + 1):
            for e3 in range(-W, W + 1):
                lhs = zero
                kmax = e2 - f2
                if kmax >= 0:
                    for k, c in binom_expansion_terms(-e3 - 1, -1, kmax):
                        v = _coeff_or_zero(
                            xp1, Monomial(z1=e1 + e3 + 1 + k, z2=e2 - k))
                        if not v.is_zero():
                            lhs = lhs + v.scale(c)
                kmax = e1 - f1
                if kmax >= 0:
                    sgn = Rat(1) if e3 % 2 else Rat(-1)
                    for k, c in binom_expansion_terms(-e3 - 1, -1, kmax):
                        v = _coeff_or_zero(
                            xp2, Monomial(z1=e1 - k, z2=e2 + e3 + 1 + k))
                        if not v.is_zero():
                            lhs = lhs - v.scale(sgn * c)
                rhs = zero
                kmax = e3 - f3
                if kmax >= 0:
                    for k, c in binom_expansion_terms(-e1 - 1, 1, kmax):
                        v = _coeff_or_zero(
                            xp3, Monomial(z2=e1 + e2 + 1 + k, z3=e3 - k))
                        if not v.is_zero():
                            rhs = rhs + v.scale(c)
                cmp_.take(Monomial(z1=e1, z2=e2, z3=e3), lhs, rhs)
    return cmp_.report("jacobi", params, t0)


# ---------------------------------------------------------------------------
# classical (t = 0) limit


def check_classical_limit(window: int = 5,
                          degree_cap: int = 8) -> CheckReport:
    """At t = 0: [D, Y(e^a, z)] = d/dz Y(e^a, z), anticommutativity of the
    charge-1 operators, and Y(De^a, z)1 = d/dz Y(e^a, z)1."""
    t0 = time.perf_counter()
    W, cap = window, degree_cap
    params = {"T": 0, "window": W, "degree_cap": cap}
    cmp_ = _Comparator()
    vac = FockVector.vacuum(cap, 0)
    ea = FockVector.exponential(1, cap, 0)
    states = [("1", vac), ("e^a", ea),
              ("p_1", FockVector.pure(0, SymFuncP.p(1, cap, 0)))]

    for name, v in states:
        ych = y_apply(1, "z1", v, (-W - 1, W + 1))
        comm = ych.map_coefficients(apply_D).add(
            y_apply(1, "z1", apply_D(v), (-W - 1, W + 1)).scale(-1))
        deriv = {}
        for m, c in ych.terms.items():
            k = m.exp("z1")
            if k:
                deriv[Monomial.var("z1", k - 1)] = c.scale(Rat(k))
        dch = LaurentChunk(deriv, Window.of(z1=(-W - 2, W)), ych.zero)
        for k in range(-W - 1, W + 1):
            m = Monomial.var("z1", k)
            cmp_.take(f"[D,Y]{name} {m}", comm.get(m), dch.get(m))

    rng = {"z1": (-W - 1, W + 1), "z2": (-W - 1, W + 1)}
    A = y_product(((1, "z1"), (1, "z2")), vac, rng)
    B = y_product(((1, "z2"), (1, "z1")), vac, rng).scale(-1)
    cmp_.chunks(A, B, Window.of(z1=(-W - 1, W + 1), z2=(-W - 1, W + 1)),
                tag="anticommute ")

    edD = exp_D(apply_D(ea), "z1", W)
    ed = exp_D(ea, "z1", W + 1)
    for k in range(W + 1):
        m = Monomial.var("z1", k)
        cmp_.take(f"translate {m}", edD.get(m),
                  ed.get(Monomial.var("z1", k + 1)).scale(Rat(k + 1)))

    return cmp_.report("classical", params, t0)


# ---------------------------------------------------------------------------
# Hall-Littlewood oracle


def check_hl_against_oracle(max_weight: int = 6,
                            t_order: int = 24) -> CheckReport:
    """Vertex-operator Q_lambda against the raising-formula oracle, in the
    monomial realization with n = |lambda| variables."""
    t0 = time.perf_counter()
    if t_order < 24:
        raise TruncationMismatch(
            f"oracle comparison needs t-order >= 24, got {t_order}")
    params = {"T": t_order, "max_weight": max_weight}
    cmp_ = _Comparator()
    for lam in sorted(partitions_up_to(max_weight),
                      key=lambda p: (p.weight, p)):
        n = max(lam.weight, 1)
        lhs = p_to_x(jing_Q(lam, t_order), n)
        rhs = hl_q_oracle(lam, n).truncate_t(t_order)
        cmp_.take(f"Q_{tuple(lam)}", lhs, rhs)
    return cmp_.report("hl-oracle", params, t0)


# ---------------------------------------------------------------------------
# driver


CHECK_IDS = ("braided-commutativity", "classical", "expansion", "hl-oracle",
             "jacobi", "translation", "vacuum")


def run_check(check_id: str, t_order: int = 8, g_order: int = 3,
              degree_cap: int = 9, window: int = 5,
              charges=(1, 1)) -> CheckReport:
    """Run one named check with shared configuration."""
    a, b = charges
    if check_id == "vacuum":
        return check_vacuum(t_order=t_order, window=max(window, 6),
                            degree_cap=degree_cap)
    if check_id == "braided-commutativity":
        return check_braided_commutativity(
            a, b, t_order=t_order, window=window, degree_cap=degree_cap)
    if check_id == "translation":
        return check_translation_covariance(
            a, b, t_order=t_order, g_order=g_order, window=window,
            degree_cap=degree_cap)
    if check_id == "expansion":
        return check_expansion_consistency(
            t_order=t_order, window=window, degree_cap=degree_cap)
    if check_id == "jacobi":
        return check_braided_jacobi(
            t_order=t_order, window=window, degree_cap=degree_cap)
    if check_id == "classical":
        return check_classical_limit(window=window, degree_cap=degree_cap)
    if check_id == "hl-oracle":
        return check_hl_against_oracle(t_order=max(t_order, 24))
    raise ValueError(f"unknown check id: {check_id}")
