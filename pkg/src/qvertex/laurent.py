"""Multivariate Laurent windows and region expansions.

Fixed variable tuple: z1, z2, z3 and the translation parameter g.  A
``LaurentChunk`` stores finitely many coefficients of a Laurent series
inside an explicit per-variable exponent ``Window``, together with
``support`` metadata: per-variable intervals (None = unbounded) outside of
which the full series is known to vanish.  Products check, per variable,
that every support split landing in the requested window is covered by the
stored windows; otherwise they raise WindowUnderflow instead of returning
silently wrong boundary coefficients.

A ``FactorProduct`` is a symbolic product  c(t) * monomial * prod_i f_i^{e_i}
with each f_i a linear form in z1, z2, z3, g with t-power coefficients.
``expand`` converts it to a chunk in a given expansion region: negative
powers are expanded geometrically against the region-dominant term of the
t-degree-0 part, with t kept adically smaller than every z variable and g
kept a nonnegative power series.  Exponent boxes for each factor are made
finite by a fixpoint that combines the requested window, t/g truncation
budgets and homogeneity of the linear forms; the per-factor boxes are then
provably sufficient for the requested window, so the internal folding can
multiply without the generic soundness guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import (NonExpandableFactor, OutsideWindow, WindowUnderflow)
from .rationals import RAT_ONE, RAT_ZERO, Rat
from .scalars import TP_ONE, TScalar, tp_trim

VARS = ("z1", "z2", "z3", "g")
NVARS = 4
VAR_INDEX = {v: i for i, v in enumerate(VARS)}
G_INDEX = VAR_INDEX["g"]


# ---------------------------------------------------------------------------
# monomials


class Monomial(tuple):
    """Exponent vector over (z1, z2, z3, g); multiplication adds exponents."""

    __slots__ = ()

    def __new__(cls, z1=0, z2=0, z3=0, g=0):
        return tuple.__new__(cls, (z1, z2, z3, g))

    @classmethod
    def of(cls, **exps) -> "Monomial":
        e = [0] * NVARS
        for v, d in exps.items():
            e[VAR_INDEX[v]] = d
        return tuple.__new__(cls, e)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Monomial":
        e = [0] * NVARS
        e[VAR_INDEX[name]] = power
        return tuple.__new__(cls, e)

    def __mul__(self, other):
        return tuple.__new__(Monomial, (a + b for a, b in zip(self, other)))

    def __pow__(self, n: int):
        return tuple.__new__(Monomial, (a * n for a in self))

    def exp(self, var: str) -> int:
        return self[VAR_INDEX[var]]

    @property
    def total_degree(self) -> int:
        return sum(self)

    def __str__(self):
        parts = [f"{v}^{d}" for v, d in zip(VARS, self) if d]
        return " ".join(parts) if parts else "1"

    def __repr__(self):
        return f"Monomial{tuple(self)}"


MONO_ONE = Monomial()


# ---------------------------------------------------------------------------
# intervals with None as +-infinity


def iv_add(a, b):
    lo = None if a[0] is None or b[0] is None else a[0] + b[0]
    hi = None if a[1] is None or b[1] is None else a[1] + b[1]
    return (lo, hi)


def iv_neg(a):
    return (None if a[1] is None else -a[1],
            None if a[0] is None else -a[0])


def iv_intersect(a, b):
    """Intersection, or None when empty."""
    if a[0] is None:
        lo = b[0]
    elif b[0] is None:
        lo = a[0]
    else:
        lo = max(a[0], b[0])
    if a[1] is None:
        hi = b[1]
    elif b[1] is None:
        hi = a[1]
    else:
        hi = min(a[1], b[1])
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def iv_hull(a, b):
    lo = None if a[0] is None or b[0] is None else min(a[0], b[0])
    hi = None if a[1] is None or b[1] is None else max(a[1], b[1])
    return (lo, hi)


def iv_contains(a, x: int) -> bool:
    return (a[0] is None or x >= a[0]) and (a[1] is None or x <= a[1])


def iv_finite(a) -> bool:
    return a[0] is not None and a[1] is not None


def bounds_add(s1, s2):
    return tuple(iv_add(a, b) for a, b in zip(s1, s2))


def bounds_hull(s1, s2):
    return tuple(iv_hull(a, b) for a, b in zip(s1, s2))


def bounds_point(m) -> tuple:
    return tuple((e, e) for e in m)


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    """Finite inclusive exponent box, one (lo, hi) pair per variable."""

    bounds: tuple

    def __post_init__(self):
        if len(self.bounds) != NVARS:
            raise ValueError("window needs one range per variable")
        for lo, hi in self.bounds:
            if lo > hi:
                raise ValueError(f"empty window range ({lo}, {hi})")

    @classmethod
    def of(cls, z1=(0, 0), z2=(0, 0), z3=(0, 0), g=(0, 0)) -> "Window":
        return cls((tuple(z1), tuple(z2), tuple(z3), tuple(g)))

    @classmethod
    def box(cls, radius: int, zvars=("z1", "z2"), g_hi=None) -> "Window":
        """Symmetric box |e| <= radius on zvars; g in [0, g_hi] if given."""
        b = [(0, 0)] * NVARS
        for v in zvars:
            b[VAR_INDEX[v]] = (-radius, radius)
        if g_hi is not None:
            b[G_INDEX] = (0, g_hi)
        return cls(tuple(b))

    def range(self, var: str):
        return self.bounds[VAR_INDEX[var]]

    def contains(self, m) -> bool:
        for (lo, hi), e in zip(self.bounds, m):
            if e < lo or e > hi:
                return False
        return True

    def intersect(self, other: "Window"):
        out = []
        for a, b in zip(self.bounds, other.bounds):
            lo, hi = max(a[0], b[0]), min(a[1], b[1])
            if lo > hi:
                return None
            out.append((lo, hi))
        return Window(tuple(out))

    def shift(self, m) -> "Window":
        return Window(tuple((lo + e, hi + e)
                            for (lo, hi), e in zip(self.bounds, m)))

    def size(self) -> int:
        n = 1
        for lo, hi in self.bounds:
            n *= hi - lo + 1
        return n

    def __str__(self):
        parts = [f"{v}:[{lo},{hi}]" for v, (lo, hi) in zip(VARS, self.bounds)
                 if (lo, hi) != (0, 0)]
        return "{" + ", ".join(parts) + "}" if parts else "{point}"


# ---------------------------------------------------------------------------
# expansion regions


@dataclass(frozen=True)
class RegionOrder:
    """Variable ordering, largest first; t is always adically smallest and g,
    when present, must come last (it is expanded as a nonnegative series)."""

    order: tuple

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ValueError("region variables must be distinct")
        for v in self.order:
            if v not in VAR_INDEX:
                raise ValueError(f"unknown variable {v!r}")
        if "g" in self.order and self.order[-1] != "g":
            raise ValueError("g must be the innermost region variable")

    def covers(self, names) -> bool:
        return all(v in self.order for v in names)

    def key(self, m) -> tuple:
        return tuple(m[VAR_INDEX[v]] for v in self.order)

    def __str__(self):
        return "|" + "| >> |".join(self.order) + "|"


def region(*names) -> RegionOrder:
    return RegionOrder(tuple(names))


# ---------------------------------------------------------------------------
# Laurent chunks


class LaurentChunk:
    """Finitely many exact coefficients of a Laurent series on a window.

    ``zero`` is the zero coefficient object (TScalar, SymFuncP or
    FockVector depending on the series); ``support`` bounds where the full
    series can be nonzero, with None meaning unbounded on that side.
    """

    __slots__ = ("terms", "window", "support", "zero")

    def __init__(self, terms: dict, window: Window, zero, support=None):
        clean = {}
        for m, c in terms.items():
            if not window.contains(m):
                raise OutsideWindow(f"term {m} outside window {window}")
            if not c.is_zero():
                clean[m] = c
        self.terms = clean
        self.window = window
        self.zero = zero
        if support is None:
            if clean:
                los = [min(m[i] for m in clean) for i in range(NVARS)]
                his = [max(m[i] for m in clean) for i in range(NVARS)]
                support = tuple((lo, hi) for lo, hi in zip(los, his))
            else:
                support = ((0, 0),) * NVARS
        self.support = tuple(tuple(iv) for iv in support)

    def get(self, m):
        if not self.window.contains(m):
            raise OutsideWindow(f"{m} outside window {self.window}")
        return self.terms.get(m, self.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "LaurentChunk") -> "LaurentChunk":
        w = self.window.intersect(other.window)
        if w is None:
            raise WindowUnderflow("sum of chunks with disjoint windows")
        terms = {}
        for src in (self.terms, other.terms):
            for m, c in src.items():
                if w.contains(m):
                    terms[m] = terms[m] + c if m in terms else c
        return LaurentChunk(terms, w, self.zero,
                            bounds_hull(self.support, other.support))

    def scale(self, c) -> "LaurentChunk":
        return LaurentChunk({m: c * x for m, x in self.terms.items()},
                            self.window, self.zero, self.support)

    def map_coefficients(self, fn, zero=None) -> "LaurentChunk":
        z = self.zero if zero is None else zero
        return LaurentChunk({m: fn(c) for m, c in self.terms.items()},
                            self.window, z, self.support)

    def shift(self, m: Monomial) -> "LaurentChunk":
        return LaurentChunk({mm * m: c for mm, c in self.terms.items()},
                            self.window.shift(m), self.zero,
                            bounds_add(self.support, bounds_point(m)))

    def restrict(self, window: Window) -> "LaurentChunk":
        if self.window.intersect(window) != window:
            raise OutsideWindow(
                f"restriction window {window} exceeds {self.window}")
        terms = {m: c for m, c in self.terms.items() if window.contains(m)}
        return LaurentChunk(terms, window, self.zero, self.support)

    def __str__(self):
        if not self.terms:
            return f"0 on {self.window}"
        bits = [f"({c}) {m}" for m, c in sorted(self.terms.items())]
        return " + ".join(bits)


def coefficient(chunk: LaurentChunk, m: Monomial):
    """Coefficient at a monomial; OutsideWindow when it is not stored."""
    return chunk.get(m)


def mul_raw(a: LaurentChunk, b: LaurentChunk, window: Window,
            support=None) -> LaurentChunk:
    """Product restricted to a window, with no soundness guard.

    Only for callers that have proved separately that every support split
    landing in the window is covered by the operand windows.
    """
    bw = window.bounds
    (l0, h0), (l1, h1), (l2, h2), (l3, h3) = bw
    terms: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            e0 = m1[0] + m2[0]
            if e0 < l0 or e0 > h0:
                continue
            e1 = m1[1] + m2[1]
            if e1 < l1 or e1 > h1:
                continue
            e2 = m1[2] + m2[2]
            if e2 < l2 or e2 > h2:
                continue
            e3 = m1[3] + m2[3]
            if e3 < l3 or e3 > h3:
                continue
            m = tuple.__new__(Monomial, (e0, e1, e2, e3))
            p = c1 * c2
            terms[m] = terms[m] + p if m in terms else p
    if support is None:
        support = bounds_add(a.support, b.support)
    return LaurentChunk(terms, window, a.zero * b.zero, support)


def _deficits(w, s):
    """Parts of support s strictly outside the finite window w."""
    out = []
    if s[0] is None or s[0] < w[0]:
        out.append((s[0], w[0] - 1))
    if s[1] is None or s[1] > w[1]:
        out.append((w[1] + 1, s[1]))
    return out


def _sound_interval(probe, wa, sa, wb, sb):
    """Largest sound subinterval of probe for the product, or None.

    An output exponent is unsound when some split x + y with x, y in the
    operand supports has a component outside the corresponding stored
    window.  Interior holes collapse to the larger contiguous side.
    """
    unsound = []
    for d in _deficits(wa, sa):
        unsound.append(iv_add(d, sb))
    for d in _deficits(wb, sb):
        unsound.append(iv_add(d, sa))
    lo, hi = probe
    changed = True
    while changed:
        changed = False
        for u in unsound:
            cut = iv_intersect((lo, hi), u)
            if cut is None:
                continue
            clo = lo if cut[0] is None else cut[0]
            chi = hi if cut[1] is None else cut[1]
            if clo <= lo:
                lo = chi + 1
            elif chi >= hi:
                hi = clo - 1
            elif (hi - chi) >= (clo - lo):
                lo = chi + 1
            else:
                hi = clo - 1
            changed = True
            if lo > hi:
                return None
    return (lo, hi)


def laurent_mul(a: LaurentChunk, b: LaurentChunk,
                window: Window | None = None) -> LaurentChunk:
    """Sound product of two chunks.

    With an explicit window, every requested exponent must be provably
    computable from the stored coefficients, else WindowUnderflow.  With
    window=None the largest sound box is derived from windows and supports.
    """
    ranges = []
    for i in range(NVARS):
        wa, sa = a.window.bounds[i], a.support[i]
        wb, sb = b.window.bounds[i], b.support[i]
        probe = window.bounds[i] if window is not None else iv_add(wa, wb)
        rng = _sound_interval(probe, wa, sa, wb, sb)
        if window is not None and rng != probe:
            raise WindowUnderflow(
                f"{VARS[i]}: requested {probe}, sound part {rng}")
        if rng is None:
            raise WindowUnderflow(f"{VARS[i]}: no sound output range")
        ranges.append(rng)
    return mul_raw(a, b, Window(tuple(ranges)))


def binom_expansion_terms(e: int, s, kmax: int):
    """Coefficients of (x + s*y)^e with x dominant.

    Yields (k, C(e, k) * s^k) for x^{e-k} y^k, k = 0..kmax; e may be
    negative (generalized binomial coefficients).
    """
    if e >= 0:
        kmax = min(kmax, e)
    s = Rat(s)
    c = RAT_ONE
    sk = RAT_ONE
    for k in range(kmax + 1):
        yield k, c * sk
        c = c * Rat(e - k, k + 1)
        sk = sk * s


# ---------------------------------------------------------------------------
# factor products


def lform(*terms) -> tuple:
    """Linear form from (coeff, var[, t-degree]) entries, canonically sorted.

    Example: lform((1, "z1"), (-1, "z2", 1)) is z1 - t*z2.
    """
    acc: dict = {}
    for entry in terms:
        c, v = entry[0], entry[1]
        k = entry[2] if len(entry) > 2 else 0
        key = (Monomial.var(v), k)
        acc[key] = acc.get(key, RAT_ZERO) + Rat(c)
    return tuple(sorted((m, k, c) for (m, k), c in acc.items() if c))


def _form_str(form) -> str:
    bits = []
    for m, k, c in form:
        s = str(m)
        if k:
            s = (f"t^{k} " if k > 1 else "t ") + s
        bits.append(f"{c}*{s}" if c not in (1, -1) else ("-" if c == -1 else "") + s)
    return " + ".join(bits).replace("+ -", "- ")


@dataclass(frozen=True)
class FactorProduct:
    """coeff(t) * monomial * prod_i form_i^{exp_i}, all exact."""

    coeff: tuple = TP_ONE
    monomial: Monomial = MONO_ONE
    factors: tuple = ()

    @classmethod
    def of(cls, coeff=TP_ONE, monomial: Monomial = MONO_ONE,
           factors=()) -> "FactorProduct":
        fs = tuple((tuple(form), int(e)) for form, e in factors if e)
        return cls(tp_trim(tuple(Rat(c) for c in coeff)), monomial, fs)

    @classmethod
    def one(cls) -> "FactorProduct":
        return cls()

    def is_zero(self) -> bool:
        return not self.coeff

    def mul(self, other: "FactorProduct") -> "FactorProduct":
        merged: dict = {}
        for form, e in self.factors + other.factors:
            merged[form] = merged.get(form, 0) + e
        fs = tuple(sorted((f, e) for f, e in merged.items() if e))
        from .scalars import tp_mul
        return FactorProduct(tp_mul(self.coeff, other.coeff),
                             self.monomial * other.monomial, fs)

    def pow(self, n: int) -> "FactorProduct":
        from .scalars import tp_pow
        if n == 0:
            return FactorProduct.one()
        if n > 0:
            coeff = tp_pow(self.coeff, n)
        else:
            nz = [(k, c) for k, c in enumerate(self.coeff) if c]
            if len(nz) != 1:
                raise NonExpandableFactor(
                    "negative power of a non-monomial prefactor")
            k, c = nz[0]
            if k * n < 0:
                raise NonExpandableFactor("negative t-power in prefactor")
            coeff = (RAT_ZERO,) * (k * n) + (c ** n,)
        fs = tuple((f, e * n) for f, e in self.factors)
        return FactorProduct(coeff, self.monomial ** n, fs)

    def substitute(self, mapping: dict) -> "FactorProduct":
        """Replace variables by sums of variables, e.g. {"z1": ("z2", "z3"),
        "z3": ()}; an empty tuple substitutes zero."""
        new_factors = []
        for form, e in self.factors:
            acc: dict = {}
            for m, k, c in form:
                live = [(v, d) for v, d in zip(VARS, m) if d]
                if len(live) != 1 or live[0][1] != 1:
                    raise NonExpandableFactor(
                        "substitution supports linear forms only")
                v = live[0][0]
                repl = mapping.get(v, (v,))
                for w in repl:
                    key = (Monomial.var(w), k)
                    acc[key] = acc.get(key, RAT_ZERO) + c
            nf = tuple(sorted((m, k, c) for (m, k), c in acc.items() if c))
            if not nf:
                if e > 0:
                    return FactorProduct(())
                raise NonExpandableFactor("inverted factor vanished")
            new_factors.append((nf, e))
        mono = [0] * NVARS
        for v, d in zip(VARS, self.monomial):
            if not d:
                continue
            repl = mapping.get(v, (v,))
            if len(repl) == 1:
                mono[VAR_INDEX[repl[0]]] += d
            elif len(repl) == 0:
                if d > 0:
                    return FactorProduct(())
                raise NonExpandableFactor("negative power of zero")
            else:
                form = tuple(sorted((Monomial.var(w), 0, RAT_ONE)
                                    for w in repl))
                new_factors.append((form, d))
        out = FactorProduct(self.coeff, Monomial(*mono), ())
        for form, e in new_factors:
            out = out.mul(FactorProduct(TP_ONE, MONO_ONE, ((form, e),)))
        return out

    def expand(self, reg: RegionOrder, window: Window,
               t_order: int) -> LaurentChunk:
        return _expand(self, reg, window, t_order)

    def __str__(self):
        from .scalars import tp_str
        bits = [f"({tp_str(self.coeff)})"]
        if self.monomial != MONO_ONE:
            bits.append(str(self.monomial))
        for form, e in self.factors:
            bits.append(f"({_form_str(form)})^{e}")
        return " * ".join(bits)


def fp_monomial(coeff, m: Monomial) -> FactorProduct:
    return FactorProduct.of(coeff=coeff, monomial=m)


# ---------------------------------------------------------------------------
# expansion


class _FactorInfo:
    __slots__ = ("form", "exp", "base_c", "base_m", "uterms", "homog",
                 "support", "box")

    def __init__(self, form, e, reg, t_order, g_cap):
        self.form = form
        self.exp = e
        degs = {m.total_degree for m, _, _ in form}
        self.homog = e * degs.pop() if len(degs) == 1 else None
        for m, _, _ in form:
            live = [v for v, d in zip(VARS, m) if d]
            if not reg.covers(live):
                raise NonExpandableFactor(
                    f"variable outside region {reg}: {_form_str(form)}")
        if e > 0:
            self.base_c = None
            self.base_m = None
            self.uterms = None
            self.support = self._poly_support(t_order)
        else:
            t0 = [(m, c) for m, k, c in form if k == 0]
            if not t0:
                raise NonExpandableFactor(
                    f"no t-degree-0 term in ({_form_str(form)})^{e}")
            m_d, c_d = max(t0, key=lambda mc: reg.key(mc[0]))
            if m_d[G_INDEX]:
                raise NonExpandableFactor(
                    f"dominant term of ({_form_str(form)}) contains g")
            self.base_c = c_d
            self.base_m = m_d
            uterms = []
            for m, k, c in form:
                if k == 0 and m == m_d:
                    continue
                ratio = tuple.__new__(Monomial,
                                      (a - b for a, b in zip(m, m_d)))
                jmaxs = []
                if k > 0:
                    jmaxs.append(t_order // k)
                if ratio[G_INDEX] > 0:
                    jmaxs.append(g_cap // ratio[G_INDEX])
                jmax = min(jmaxs) if jmaxs else None
                uterms.append([ratio, k, c / c_d, jmax])
            self.uterms = uterms
            self.support = self._neg_support()

    def _poly_support(self, t_order):
        # each of the e copies picks one term, so per variable the exponent
        # is a sum of e picks from that variable's term exponents
        e = self.exp
        out = []
        for i in range(NVARS):
            exps = [m[i] for m, _, _ in self.form]
            out.append((e * min(exps), e * max(exps)))
        return tuple(out)

    def _neg_support(self):
        e = self.exp
        sup = []
        for v in range(NVARS):
            lo = hi = e * self.base_m[v]
            for ratio, _, _, jmax in self.uterms:
                d = ratio[v]
                if d > 0:
                    hi = None if (jmax is None or hi is None) else hi + jmax * d
                elif d < 0:
                    lo = None if (jmax is None or lo is None) else lo + jmax * d
            sup.append((lo, hi))
        return tuple(sup)

    def tighten_jmax(self, max_rounds=32):
        """Bound geometric tails using the finite box: a u-term that lowers
        some variable can repeat only until it exits the box."""
        for _ in range(max_rounds):
            changed = False
            for i, (ratio, _, _, jmax) in enumerate(self.uterms):
                best = jmax
                for v in range(NVARS):
                    if ratio[v] >= 0:
                        continue
                    slack = self.exp * self.base_m[v] - self.box[v][0]
                    ok = True
                    for j2, (r2, _, _, jm2) in enumerate(self.uterms):
                        if j2 == i or r2[v] <= 0:
                            continue
                        if jm2 is None:
                            ok = False
                            break
                        slack += jm2 * r2[v]
                    if not ok:
                        continue
                    cap = max(slack // (-ratio[v]), 0) if slack >= 0 else 0
                    if best is None or cap < best:
                        best = cap
                if best is not None and best != jmax:
                    self.uterms[i][3] = best
                    changed = True
            if not changed:
                break
        for ratio, _, _, jmax in self.uterms:
            if jmax is None:
                raise WindowUnderflow(
                    f"unbounded expansion tail for ({_form_str(self.form)})"
                    f"^{self.exp}")

    def chunk(self, t_order) -> LaurentChunk:
        lo = tuple(b[0] for b in self.box)
        hi = tuple(b[1] for b in self.box)
        acc: dict = {}
        if self.exp > 0:
            self._poly_enum(acc, lo, hi, t_order)
        else:
            self._neg_enum(acc, lo, hi, t_order)
        window = Window(tuple(self.box))
        n = t_order + 1
        terms = {m: TScalar(tuple(cs) + (RAT_ZERO,) * (n - len(cs)))
                 for m, cs in acc.items()}
        return LaurentChunk(terms, window, TScalar.zero(t_order),
                            self.support)

    def _poly_enum(self, acc, lo, hi, t_order):
        form, e = self.form, self.exp
        r = len(form)

        def rec(idx, left, cur_m, cur_k, cur_c):
            if cur_k > t_order:
                return
            if idx == r - 1:
                j = left
                m, k, c = form[idx]
                kk = cur_k + j * k
                if kk > t_order:
                    return
                me = tuple(a + j * b for a, b in zip(cur_m, m))
                if any(x < l or x > h for x, l, h in zip(me, lo, hi)):
                    return
                cc = cur_c * c ** j / factorial(j)
                mono = tuple.__new__(Monomial, me)
                slot = acc.setdefault(mono, [RAT_ZERO] * (t_order + 1))
                slot[kk] += cc * factorial(e)
                return
            m, k, c = form[idx]
            for j in range(left + 1):
                kk = cur_k + j * k
                if kk > t_order:
                    break
                rec(idx + 1, left - j,
                    tuple(a + j * b for a, b in zip(cur_m, m)),
                    kk, cur_c * c ** j / factorial(j))

        rec(0, e, (0, 0, 0, 0), 0, RAT_ONE)

    def _neg_enum(self, acc, lo, hi, t_order):
        e = self.exp
        uterms = self.uterms
        r = len(uterms)
        base_m = tuple(a * e for a in self.base_m)
        base_c = RAT_ONE / (self.base_c ** (-e))
        # suffix reach per variable for pruning
        suffix = [[(0, 0)] * NVARS for _ in range(r + 1)]
        for i in range(r - 1, -1, -1):
            ratio, _, _, jmax = uterms[i]
            for v in range(NVARS):
                d = ratio[v] * jmax
                nlo, nhi = suffix[i + 1][v]
                suffix[i][v] = (nlo + min(d, 0), nhi + max(d, 0))

        def rec(idx, cur_m, cur_k, cur_c, picks, denom):
            for v in range(NVARS):
                slo, shi = suffix[idx][v]
                if cur_m[v] + shi < lo[v] or cur_m[v] + slo > hi[v]:
                    return
            if idx == r:
                ff = RAT_ONE
                for i in range(picks):
                    ff *= e - i
                mono = tuple.__new__(Monomial, cur_m)
                slot = acc.setdefault(mono, [RAT_ZERO] * (t_order + 1))
                slot[cur_k] += base_c * cur_c * ff / denom
                return
            ratio, k, c, jmax = uterms[idx]
            cm, ck, cc = cur_m, cur_k, cur_c
            for j in range(jmax + 1):
                if ck > t_order:
                    break
                rec(idx + 1, cm, ck, cc, picks + j, denom * factorial(j))
                cm = tuple(a + b for a, b in zip(cm, ratio))
                ck += k
                cc = cc * c

        rec(0, base_m, 0, RAT_ONE, 0, 1)


def _expand(fp: FactorProduct, reg: RegionOrder, window: Window,
            t_order: int) -> LaurentChunk:
    zero = TScalar.zero(t_order)
    glo = window.range("g")[0]
    if glo < 0:
        raise NonExpandableFactor("g admits no negative exponents")
    g_cap = window.range("g")[1]
    if fp.is_zero():
        return LaurentChunk({}, window, zero)

    infos = [_FactorInfo(form, e, reg, t_order, g_cap)
             for form, e in fp.factors if e]
    m_pref = fp.monomial
    pref_scalar = TScalar.from_tpoly(fp.coeff, t_order)
    if pref_scalar.is_zero():
        return LaurentChunk({}, window, zero)

    if not infos:
        terms = ({m_pref: pref_scalar} if window.contains(m_pref) else {})
        return LaurentChunk(terms, window, zero, bounds_point(m_pref))

    boxes = _fixpoint_boxes(infos, m_pref, window)
    if boxes is None:
        full_support = bounds_point(m_pref)
        for info in infos:
            full_support = bounds_add(full_support, info.support)
        return LaurentChunk({}, window, zero, full_support)
    for info, box in zip(infos, boxes):
        info.box = box
        if info.exp < 0:
            info.tighten_jmax()

    chunks = [info.chunk(t_order) for info in infos]
    # fold with prefix windows sufficient for the final target
    acc = chunks[0]
    for k in range(1, len(chunks)):
        req = []
        for v in range(NVARS):
            lo = window.bounds[v][0] - m_pref[v]
            hi = window.bounds[v][1] - m_pref[v]
            for j in range(k + 1, len(chunks)):
                lo -= boxes[j][v][1]
                hi -= boxes[j][v][0]
            blo = sum(boxes[j][v][0] for j in range(k + 1))
            bhi = sum(boxes[j][v][1] for j in range(k + 1))
            lo, hi = max(lo, blo), min(hi, bhi)
            if lo > hi:
                full_support = bounds_point(m_pref)
                for info in infos:
                    full_support = bounds_add(full_support, info.support)
                return LaurentChunk({}, window, zero, full_support)
            req.append((lo, hi))
        acc = mul_raw(acc, chunks[k], Window(tuple(req)))

    acc = acc.shift(m_pref)
    if not pref_scalar == TScalar.one(t_order):
        acc = acc.scale(pref_scalar)
    full_support = bounds_point(m_pref)
    for info in infos:
        full_support = bounds_add(full_support, info.support)
    terms = {m: c for m, c in acc.terms.items() if window.contains(m)}
    return LaurentChunk(terms, window, zero, full_support)


def _fixpoint_boxes(infos, m_pref, window, max_rounds=64):
    """Shrink per-factor supports to finite boxes sufficient for the window.

    Every split of a window monomial over the factor supports stays inside
    the boxes (induction over the rounds), so folding over these boxes is
    exact on the window.  Returns None when some factor has no admissible
    exponents, i.e. the product vanishes on the window.
    """
    boxes = [list(info.support) for info in infos]
    target = window.bounds
    for _ in range(max_rounds):
        changed = False
        for i, info in enumerate(infos):
            for v in range(NVARS):
                olo, ohi = m_pref[v], m_pref[v]
                for j, bx in enumerate(boxes):
                    if j == i:
                        continue
                    olo = None if (olo is None or bx[v][0] is None) \
                        else olo + bx[v][0]
                    ohi = None if (ohi is None or bx[v][1] is None) \
                        else ohi + bx[v][1]
                need = (None if ohi is None else target[v][0] - ohi,
                        None if olo is None else target[v][1] - olo)
                cut = iv_intersect(boxes[i][v], need)
                if cut is None:
                    return None
                if cut != tuple(boxes[i][v]):
                    boxes[i][v] = cut
                    changed = True
            if info.homog is not None:
                box = boxes[i]
                if all(b[0] is not None for b in box):
                    slo = sum(b[0] for b in box)
                    for v in range(NVARS):
                        cap = info.homog - (slo - box[v][0])
                        if box[v][1] is None or cap < box[v][1]:
                            box[v] = (box[v][0], cap)
                            if box[v][0] > cap:
                                return None
                            changed = True
                if all(b[1] is not None for b in box):
                    shi = sum(b[1] for b in box)
                    for v in range(NVARS):
                        flo = info.homog - (shi - box[v][1])
                        if box[v][0] is None or flo > box[v][0]:
                            box[v] = (flo, box[v][1])
                            if flo > box[v][1]:
                                return None
                            changed = True
        if not changed:
            break
    for i, box in enumerate(boxes):
        for v in range(NVARS):
            if not iv_finite(box[v]):
                raise WindowUnderflow(
                    f"cannot bound factor {i} on {VARS[v]} for {window}")
    return [tuple(tuple(b) for b in box) for box in boxes]


def expand(fp: FactorProduct, reg: RegionOrder, window: Window,
           t_order: int) -> LaurentChunk:
    """Region expansion of a factor product into a Laurent chunk."""
    return _expand(fp, reg, window, t_order)
