"""Quantum vertex operators for the rank-one deformed lattice algebra.

The operator content lives in the Jing gauge: the creation half of a
charge-a vertex operator multiplies by exp(a sum_n (1-t^n)/n p_n z^n),
the annihilation half applies exp(-a sum_n (d/dp_n) z^{-n}), and the
lattice zero mode contributes z^{a m} on a charge-m state before the
charge shift m -> m + a.  Composing two vertex operators produces the
normal-ordered closed form

    Y(e^a, z1) Y(e^b, z2) v = r(z1,z2)^{ab} E+_a(z1) E+_b(z2) ...

with the two-point prefactor r(z1,z2) = (z1-z2) z1 / (z1 - t z2), and the
braiding and translation scalars are ratios of r's:

    S_tau   = -(1 - t z2/z1)/(1 - t z1/z2) = r(z1,z2)/r(z2,z1)
    S_gamma = (1 - t z2/z1)/(1 - t (z2+g)/(z1+g))
            = r(z1+g, z2+g)/r(z1,z2)

Single-variable modes of the pure-Heisenberg field E+ E- generate the
Hall-Littlewood Q-functions; that equality is validated against the
classical symmetric-function oracle, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotClosedForm, UnsupportedCharge
from .fock import MAX_CHARGE, FockVector
from .laurent import (FactorProduct, LaurentChunk, Monomial, NVARS,
                      RegionOrder, VARS, VAR_INDEX, Window, bounds_add,
                      bounds_hull, lform, mul_raw)
from .rationals import Rat
from .scalars import TScalar, tp
from .symfunc import Partition, SymFuncP


def _check_charge(a: int):
    if not isinstance(a, int) or a < 0 or a > MAX_CHARGE:
        raise UnsupportedCharge(f"charge {a} outside 0..{MAX_CHARGE}")


# ---------------------------------------------------------------------------
# creation / annihilation halves


@lru_cache(maxsize=None)
def _creation_coeff(a: int, j: int, t_order: int) -> TScalar:
    """a (1 - t^j)."""
    return TScalar.from_tpoly(tp(*([a] + [0] * (j - 1) + [-a])), t_order)


_EPLUS_CACHE: dict = {}


def eplus_coeff(a: int, k: int, degree_cap: int, t_order: int) -> SymFuncP:
    """Coefficient of var^k in exp(a sum_n (1-t^n)/n p_n var^n).

    Euler recurrence k c_k = sum_j a (1-t^j) p_j c_{k-j}; c_k is
    homogeneous of weight k, so it vanishes in the quotient for k > cap.
    """
    key = (a, degree_cap, t_order)
    lst = _EPLUS_CACHE.get(key)
    if lst is None:
        lst = [SymFuncP.one(degree_cap, t_order)]
        _EPLUS_CACHE[key] = lst
    while len(lst) <= k:
        kk = len(lst)
        acc = SymFuncP.zero(degree_cap, t_order)
        if a:
            for j in range(1, kk + 1):
                piece = lst[kk - j].mul_p(j)
                if not piece.is_zero():
                    acc = acc + piece * _creation_coeff(a, j, t_order)
        lst.append(acc.scale(Rat(1, kk)))
    return lst[k]


def eplus_apply(a: int, var: str, f: SymFuncP, hi: int) -> dict:
    """{power: coefficient} of E+_a(var) f through var^hi."""
    out = {}
    for k in range(0, hi + 1):
        c = eplus_coeff(a, k, f.degree_cap, f.t_order) * f
        if not c.is_zero():
            out[k] = c
    return out


def eminus_states(a: int, f: SymFuncP) -> list:
    """[g_0, g_1, ...] with E-_a(var) f = sum_w g_w var^{-w}.

    Euler recurrence w g_w = sum_j (-a j) (d/dp_j) g_{w-j}; the list is
    exactly finite since each step lowers the p-weight.
    """
    gs = [f]
    if a == 0 or f.is_zero():
        return gs
    for w in range(1, f.max_weight() + 1):
        acc = SymFuncP.zero(f.degree_cap, f.t_order)
        for j in range(1, w + 1):
            g = gs[w - j].dp(j)
            if not g.is_zero():
                acc = acc + g.scale(-a * j)
        gs.append(acc.scale(Rat(1, w)))
    while len(gs) > 1 and gs[-1].is_zero():
        gs.pop()
    return gs


def heis_mode(power: int, f: SymFuncP, a: int = 1) -> SymFuncP:
    """[var^power] E+_a(var) E-_a(var) f, the pure-Heisenberg field mode."""
    gs = eminus_states(a, f)
    out = SymFuncP.zero(f.degree_cap, f.t_order)
    for w, gw in enumerate(gs):
        k = power + w
        if k < 0 or gw.is_zero():
            continue
        c = eplus_coeff(a, k, f.degree_cap, f.t_order) * gw
        if not c.is_zero():
            out = out + c
    return out


def jing_Q(lam: Partition, t_order: int) -> SymFuncP:
    """Iterated modes B_{l1}...B_{lk} 1 of the Heisenberg field E+ E-.

    Expected to equal the Hall-Littlewood Q_lambda in power sums; the
    verifier compares against the classical oracle rather than assuming it.
    """
    lam = Partition(lam)
    cap = max(lam.weight, 1)
    f = SymFuncP.one(cap, t_order)
    for part in reversed(lam):
        f = heis_mode(part, f)
    return f


# ---------------------------------------------------------------------------
# lattice vertex operators


def y_apply(a: int, var: str, v: FockVector, var_range) -> LaurentChunk:
    """Y(e^{a alpha}, var) v on the exponent range [lo, hi].

    Per charge-m component: apply E+ E-, multiply by the zero mode
    var^{a m}, shift the charge to m + a.  a = 0 is the identity operator.
    """
    _check_charge(a)
    for m in v.charges():
        _check_charge(m + a)
    lo, hi = var_range
    cap, T = v.degree_cap, v.t_order
    iv = VAR_INDEX[var]
    window = Window.of(**{var: (lo, hi)})
    zero = FockVector.zero(cap, T)
    if v.is_zero():
        return LaurentChunk({}, window, zero)
    acc: dict = {}
    slos, shis = [], []
    for m, f in v.components.items():
        if a == 0:
            slos.append(0)
            shis.append(0)
            if lo <= 0 <= hi:
                key = Monomial()
                w = FockVector.pure(m, f)
                acc[key] = acc[key] + w if key in acc else w
            continue
        gs = eminus_states(a, f)
        shift = a * m
        slos.append(shift - (len(gs) - 1))
        shis.append(shift + cap)
        for p in range(lo, hi + 1):
            state = SymFuncP.zero(cap, T)
            for w, gw in enumerate(gs):
                k = p - shift + w
                if k < 0 or gw.is_zero():
                    continue
                c = eplus_coeff(a, k, cap, T) * gw
                if not c.is_zero():
                    state = state + c
            if state.is_zero():
                continue
            key = Monomial.var(var, p)
            piece = FockVector.pure(m + a, state)
            acc[key] = acc[key] + piece if key in acc else piece
    support = tuple((min(slos), max(shis)) if i == iv else (0, 0)
                    for i in range(NVARS))
    return LaurentChunk(acc, window, zero, support)


def y_product(ops, v: FockVector, ranges: dict) -> LaurentChunk:
    """Y(a_1, var_1) ... Y(a_k, var_k) v, applied right to left.

    ops is a sequence of (charge, var) with distinct vars; ranges maps each
    var to its exponent window.
    """
    cap, T = v.degree_cap, v.t_order
    zero = FockVector.zero(cap, T)
    terms = {Monomial(): v}
    bounds = [(0, 0)] * NVARS
    wbounds = [(0, 0)] * NVARS
    for a, var in reversed(list(ops)):
        iv = VAR_INDEX[var]
        new_terms: dict = {}
        sub_support = None
        for m, w in terms.items():
            sub = y_apply(a, var, w, ranges[var])
            sub_support = sub.support if sub_support is None else \
                bounds_hull(sub_support, sub.support)
            for sm, sv in sub.terms.items():
                key = m * sm
                new_terms[key] = new_terms[key] + sv if key in new_terms \
                    else sv
        terms = new_terms
        if sub_support is not None:
            bounds[iv] = sub_support[iv]
        wbounds[iv] = tuple(ranges[var])
    return LaurentChunk(terms, Window(tuple(wbounds)), zero, tuple(bounds))


# ---------------------------------------------------------------------------
# closed forms


def r_factor(v1: str, v2: str, e: int = 1) -> FactorProduct:
    """((v1 - v2) * v1 / (v1 - t v2))^e, the two-point prefactor."""
    base = FactorProduct.of(
        monomial=Monomial.var(v1),
        factors=((lform((1, v1), (-1, v2)), 1),
                 (lform((1, v1), (-1, v2, 1)), -1)))
    return base.pow(e)


@dataclass(frozen=True)
class ClosedForm:
    """prefactor(z, g, t) * prod_i E+_{a_i}(sum of slot vars) * e^{charge}.

    Slots hold (charge, vars) with the E+ argument the sum of the vars, so
    variable shifts stay inside the class.
    """

    prefactor: FactorProduct
    slots: tuple
    charge: int

    def substitute(self, mapping: dict) -> "ClosedForm":
        slots = []
        for a, svars in self.slots:
            out: list = []
            for v in svars:
                out.extend(mapping.get(v, (v,)))
            slots.append((a, tuple(out)))
        return ClosedForm(self.prefactor.substitute(mapping),
                          tuple(slots), self.charge)


def x2_closed_form(a: int, b: int) -> ClosedForm:
    _check_charge(a)
    _check_charge(b)
    _check_charge(a + b)
    slots = tuple((c, (v,)) for c, v in ((a, "z1"), (b, "z2")) if c)
    return ClosedForm(r_factor("z1", "z2", a * b), slots, a + b)


def x3_closed_form(a: int = 1, b: int = 1, c: int = 1) -> ClosedForm:
    for ch in (a, b, c, a + b + c):
        _check_charge(ch)
    pref = r_factor("z1", "z2", a * b).mul(
        r_factor("z1", "z3", a * c)).mul(r_factor("z2", "z3", b * c))
    slots = tuple((ch, (v,)) for ch, v in
                  ((a, "z1"), (b, "z2"), (c, "z3")) if ch)
    return ClosedForm(pref, slots, a + b + c)


def x120_closed_form(a: int = 1, b: int = 1, c: int = 1) -> ClosedForm:
    """X with the third variable evaluated at zero: r(v,0) = v, E+(0) = 1."""
    for ch in (a, b, c, a + b + c):
        _check_charge(ch)
    pref = r_factor("z1", "z2", a * b).mul(FactorProduct.of(
        monomial=Monomial.of(z1=a * c, z2=b * c)))
    slots = tuple((ch, (v,)) for ch, v in ((a, "z1"), (b, "z2")) if ch)
    return ClosedForm(pref, slots, a + b + c)


def _eplus_multi_chunk(a: int, svars: tuple, his: dict, degree_cap: int,
                       t_order: int) -> LaurentChunk:
    """E+_a at a sum of variables, complete on the box prod_v [0, his[v]].

    Coefficients are homogeneous: p-weight equals the total monomial
    degree, so exponents beyond degree_cap vanish in the quotient and the
    true support is [0, degree_cap] per variable.
    """
    vset = sorted(set(svars), key=VAR_INDEX.get)
    mult = {v: svars.count(v) for v in vset}
    ncap = min(degree_cap, sum(his[v] for v in vset))
    one = SymFuncP.one(degree_cap, t_order)
    terms = {Monomial(): one}
    if a and ncap > 0:
        # A = a sum_n (1-t^n)/n p_n (sum_v mult_v z_v)^n, multinomially
        A: dict = {}
        for n in range(1, ncap + 1):
            pn = SymFuncP.p(n, degree_cap, t_order) * \
                _creation_coeff(a, n, t_order)
            for comp, coeff in _compositions(n, vset, his):
                c = pn.scale(coeff * Rat(1, n))
                for v in vset:
                    if mult[v] > 1 and comp.get(v):
                        c = c.scale(Rat(mult[v]) ** comp[v])
                m = Monomial.of(**comp)
                A[m] = A[m] + c if m in A else c
        term = dict(terms)
        for k in range(1, ncap + 1):
            nxt: dict = {}
            for m1, c1 in term.items():
                for m2, c2 in A.items():
                    m = m1 * m2
                    if m.total_degree > ncap or \
                            any(m[VAR_INDEX[v]] > his[v] for v in vset):
                        continue
                    c = c1 * c2
                    if c.is_zero():
                        continue
                    nxt[m] = nxt[m] + c if m in nxt else c
            if not nxt:
                break
            term = {m: c.scale(Rat(1, k)) for m, c in nxt.items()}
            for m, c in term.items():
                terms[m] = terms[m] + c if m in terms else c
    window = Window(tuple((0, his.get(VARS[i], 0)) for i in range(NVARS)))
    support = tuple((0, degree_cap) if VARS[i] in vset else (0, 0)
                    for i in range(NVARS))
    return LaurentChunk(terms, window, SymFuncP.zero(degree_cap, t_order),
                        support)


def _compositions(n: int, vset, his):
    """(exponent dict, multinomial coefficient) pairs for (sum vset)^n."""
    def rec(i, rem, comp, coeff, falling):
        if i == len(vset) - 1:
            if rem <= his[vset[i]]:
                c = coeff
                # multinomial(n; comp) accumulated as product of binomials
                yield dict(comp, **{vset[i]: rem}), c
            return
        v = vset[i]
        for k in range(0, min(rem, his[v]) + 1):
            yield from rec(i + 1, rem - k, dict(comp, **{v: k}),
                           coeff * _binom(falling, k), falling - k)

    yield from rec(0, n, {}, Rat(1), n)


def _binom(n: int, k: int) -> Rat:
    num, den = 1, 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return Rat(num, den)


def evaluate(cf: ClosedForm, reg: RegionOrder, window: Window,
             degree_cap: int, t_order: int) -> LaurentChunk:
    """Region expansion of a closed form into a FockVector-valued chunk.

    Sound on the whole window: operand windows are sized so that every
    split of a window monomial across prefactor and E+ slots is covered;
    slot exponents above degree_cap die in the quotient.
    """
    zero = FockVector.zero(degree_cap, t_order)
    occ = [0] * NVARS
    for a, svars in cf.slots:
        for v in set(svars):
            occ[VAR_INDEX[v]] += 1
    pw = []
    for i in range(NVARS):
        lo, hi = window.bounds[i]
        plo = lo - occ[i] * degree_cap
        if VARS[i] == "g":
            plo = max(plo, 0)
        pw.append((plo, hi))
    pref = cf.prefactor.expand(reg, Window(tuple(pw)), t_order)

    pref_box = []
    for i in range(NVARS):
        slo = pref.support[i][0]
        plo = pw[i][0] if slo is None else max(pw[i][0], slo)
        pref_box.append((plo, pw[i][1]))

    chain = [pref]
    boxes = [tuple(pref_box)]
    for a, svars in cf.slots:
        his = {}
        for v in set(svars):
            i = VAR_INDEX[v]
            his[v] = max(0, min(degree_cap, window.bounds[i][1]
                                - pref_box[i][0]))
        chain.append(_eplus_multi_chunk(a, svars, his, degree_cap, t_order))
        boxes.append(tuple((0, his.get(VARS[i], 0)) for i in range(NVARS)))

    acc = chain[0]
    for k in range(1, len(chain)):
        req = []
        for i in range(NVARS):
            lo, hi = window.bounds[i]
            for j in range(k + 1, len(chain)):
                lo -= boxes[j][i][1]
                hi -= boxes[j][i][0]
            blo = sum(boxes[j][i][0] for j in range(k + 1))
            bhi = sum(boxes[j][i][1] for j in range(k + 1))
            lo, hi = max(lo, blo), min(hi, bhi)
            if lo > hi:
                return LaurentChunk({}, window, zero,
                                    _cf_support(pref, cf, degree_cap))
            req.append((lo, hi))
        acc = mul_raw(acc, chain[k], Window(tuple(req)))

    def lift(c):
        if isinstance(c, TScalar):
            return SymFuncP({Partition(()): c}, degree_cap, t_order)
        return c

    terms = {m: FockVector.pure(cf.charge, lift(c))
             for m, c in acc.terms.items() if window.contains(m)}
    return LaurentChunk(terms, window, zero,
                        _cf_support(pref, cf, degree_cap))


def _cf_support(pref: LaurentChunk, cf: ClosedForm, degree_cap: int):
    support = pref.support
    for a, svars in cf.slots:
        box = [(0, 0)] * NVARS
        for v in set(svars):
            box[VAR_INDEX[v]] = (0, degree_cap)
        support = bounds_add(support, tuple(box))
    return support


# ---------------------------------------------------------------------------
# series wrappers and S maps


@dataclass(frozen=True)
class VertexSeries:
    """A region-expanded vertex-operator series with its provenance."""

    chunk: LaurentChunk
    region: RegionOrder
    provenance: str
    form: ClosedForm | None = None


def x2_closed(a: int, b: int, reg: RegionOrder, window: Window,
              degree_cap: int, t_order: int) -> VertexSeries:
    form = x2_closed_form(a, b)
    return VertexSeries(evaluate(form, reg, window, degree_cap, t_order),
                        reg, "closed-form", form)


def x3_closed(reg: RegionOrder, window: Window, degree_cap: int,
              t_order: int, charges=(1, 1, 1)) -> VertexSeries:
    form = x3_closed_form(*charges)
    return VertexSeries(evaluate(form, reg, window, degree_cap, t_order),
                        reg, "closed-form", form)


def shift_substitute(vs: VertexSeries, mapping: dict, reg: RegionOrder,
                     window: Window) -> VertexSeries:
    """Substitute variables by sums of variables in a closed form and
    re-expand; truncated chunks without a closed form are rejected."""
    if vs.form is None or vs.provenance not in ("closed-form",
                                                "substitution"):
        raise NotClosedForm(
            f"cannot substitute into provenance {vs.provenance!r}")
    zero = vs.chunk.zero
    form = vs.form.substitute(mapping)
    chunk = evaluate(form, reg, window, zero.degree_cap, zero.t_order)
    return VertexSeries(chunk, reg, "substitution", form)


@dataclass(frozen=True)
class SMapValue:
    """Scalar multiple of an unchanged lattice tensor e^a (x) e^b."""

    scalar: FactorProduct
    tensor: tuple


def s_tau(a: int, b: int, var1: str = "z1", var2: str = "z2") -> SMapValue:
    """Braiding scalar (-(1 - t var2/var1)/(1 - t var1/var2))^{ab}."""
    _check_charge(a)
    _check_charge(b)
    base = FactorProduct.of(
        coeff=(-1,),
        monomial=Monomial.of(**{var1: -1, var2: 1}),
        factors=((lform((1, var1), (-1, var2, 1)), 1),
                 (lform((1, var2), (-1, var1, 1)), -1)))
    return SMapValue(base.pow(a * b), (a, b))


def s_gamma(a: int, b: int, var1: str = "z1", var2="z2",
            gamma: str = "g") -> SMapValue:
    """Translation scalar ((1-t var2/var1)/(1-t (var2+g)/(var1+g)))^{ab}.

    var2=None is the second variable evaluated at zero, as in the
    three-variable expansion with the inner vertex operator at the origin.
    """
    _check_charge(a)
    _check_charge(b)
    if var2 is None:
        base = FactorProduct.of(
            factors=((lform((1, var1), (1, gamma)), 1),
                     (lform((1, var1), (1, gamma), (-1, gamma, 1)), -1)))
    else:
        base = FactorProduct.of(
            monomial=Monomial.var(var1, -1),
            factors=((lform((1, var1), (-1, var2, 1)), 1),
                     (lform((1, var1), (1, gamma)), 1),
                     (lform((1, var1), (-1, var2, 1),
                            (1, gamma), (-1, gamma, 1)), -1)))
    return SMapValue(base.pow(a * b), (a, b))
