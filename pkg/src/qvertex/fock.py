"""Deformed Fock space and the deformed translation generator.

States are finite sums over lattice charges m >= 0 of e^{m alpha} tensor a
symmetric function in the power-sum basis.  The generator D acts in the
Jing gauge:

    D p_n        = n (1-t^{n+1})/(1-t^n) p_{n+1}        (as a derivation)
    D e^{m alpha} = m (1-t) p_1 e^{m alpha}

so that exp(z D) e^alpha reproduces the vertex-operator exponential
exp(sum_n (1-t^n)/n p_n z^n) e^alpha.  At t=0 this degenerates to the
classical lattice translation operator.  The per-charge coefficient (1-t)
is exposed as a parameter so the verifier can inject a perturbed D and
demonstrate that the covariance checks catch it.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import TruncationMismatch, UnsupportedCharge
from .laurent import LaurentChunk, Monomial, VAR_INDEX, Window
from .rationals import Rat
from .scalars import TScalar, tp, ts_invert
from .symfunc import Partition, SymFuncP

MAX_CHARGE = 3

D_CHARGE_COEFF = tp(1, -1)


class FockVector:
    """Map from lattice charge to its symmetric-function component."""

    __slots__ = ("components", "degree_cap", "t_order")

    def __init__(self, components: dict, degree_cap: int, t_order: int):
        clean = {}
        for m, f in components.items():
            if not isinstance(m, int) or m < 0 or m > MAX_CHARGE:
                raise UnsupportedCharge(f"charge {m} outside 0..{MAX_CHARGE}")
            if (f.degree_cap, f.t_order) != (degree_cap, t_order):
                raise TruncationMismatch("component config mismatch")
            if not f.is_zero():
                clean[m] = f
        self.components = clean
        self.degree_cap = degree_cap
        self.t_order = t_order

    @classmethod
    def zero(cls, degree_cap: int, t_order: int) -> "FockVector":
        return cls({}, degree_cap, t_order)

    @classmethod
    def vacuum(cls, degree_cap: int, t_order: int) -> "FockVector":
        return cls.exponential(0, degree_cap, t_order)

    @classmethod
    def exponential(cls, m: int, degree_cap: int,
                    t_order: int) -> "FockVector":
        return cls({m: SymFuncP.one(degree_cap, t_order)},
                   degree_cap, t_order)

    @classmethod
    def pure(cls, m: int, f: SymFuncP) -> "FockVector":
        return cls({m: f}, f.degree_cap, f.t_order)

    def _check(self, other: "FockVector"):
        if (self.degree_cap, self.t_order) != (other.degree_cap,
                                               other.t_order):
            raise TruncationMismatch("Fock config mismatch")

    def component(self, m: int) -> SymFuncP:
        return self.components.get(
            m, SymFuncP.zero(self.degree_cap, self.t_order))

    def charges(self):
        return sorted(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def max_pweight(self) -> int:
        return max((f.max_weight() for f in self.components.values()),
                   default=0)

    def t_truncate(self, t_order: int) -> "FockVector":
        return FockVector({m: f.t_truncate(t_order)
                           for m, f in self.components.items()},
                          self.degree_cap, t_order)

    def weight_truncate(self, degree_cap: int) -> "FockVector":
        """Project onto the coarser quotient by dropping heavier partitions.

        Only meaningful for degree_cap <= self.degree_cap; a vector computed
        at a larger cap projects onto the exact image at the smaller one."""
        return FockVector(
            {m: SymFuncP({lam: c for lam, c in f.terms.items()
                          if lam.weight <= degree_cap},
                         degree_cap, f.t_order)
             for m, f in self.components.items()},
            degree_cap, self.t_order)

    def __add__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        self._check(other)
        comps = dict(self.components)
        for m, f in other.components.items():
            comps[m] = comps[m] + f if m in comps else f
        return FockVector(comps, self.degree_cap, self.t_order)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FockVector({m: -f for m, f in self.components.items()},
                          self.degree_cap, self.t_order)

    def __mul__(self, other):
        if isinstance(other, FockVector):
            self._check(other)
            comps: dict = {}
            for m1, f1 in self.components.items():
                for m2, f2 in other.components.items():
                    f = f1 * f2
                    m = m1 + m2
                    comps[m] = comps[m] + f if m in comps else f
            return FockVector(comps, self.degree_cap, self.t_order)
        if isinstance(other, (TScalar, SymFuncP, int, Rat)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "FockVector":
        if isinstance(c, SymFuncP):
            return FockVector({m: f * c for m, f in self.components.items()},
                              self.degree_cap, self.t_order)
        return FockVector({m: f * c if isinstance(c, TScalar)
                           else f.scale(c)
                           for m, f in self.components.items()},
                          self.degree_cap, self.t_order)

    def map_components(self, fn) -> "FockVector":
        return FockVector({m: fn(f) for m, f in self.components.items()},
                          self.degree_cap, self.t_order)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        self._check(other)
        return self.components == other.components

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __str__(self):
        if not self.components:
            return "0"
        bits = []
        for m in sorted(self.components):
            f = self.components[m]
            tag = f"e^{m}a" if m else "1"
            bits.append(f"[{f}] * {tag}")
        return " + ".join(bits)

    __repr__ = __str__


@lru_cache(maxsize=None)
def _d_pn_coeff(n: int, t_order: int) -> TScalar:
    """n (1-t^{n+1})/(1-t^n), expanded t-adically."""
    num = TScalar.from_tpoly(tp(*([1] + [0] * n + [-1])), t_order)
    den = TScalar.from_tpoly(tp(*([1] + [0] * (n - 1) + [-1])), t_order)
    return (num * ts_invert(den)).scale(n)


def apply_D(v: FockVector, charge_coeff=None) -> FockVector:
    """One application of the deformed translation generator.

    charge_coeff is the exact t-polynomial multiplying m p_1 on charge m;
    the default (1-t) is the Jing-gauge value.
    """
    if charge_coeff is None:
        charge_coeff = D_CHARGE_COEFF
    cap, T = v.degree_cap, v.t_order
    ccoeff = TScalar.from_tpoly(charge_coeff, T)
    out = FockVector.zero(cap, T)
    for m, f in v.components.items():
        terms: dict = {}
        for lam, c in f.terms.items():
            if lam.weight + 1 > cap:
                continue
            for part in set(lam):
                mu = lam.replace_part(part, part + 1)
                cc = c * _d_pn_coeff(part, T) * lam.mult(part)
                terms[mu] = terms[mu] + cc if mu in terms else cc
        heis = SymFuncP(terms, cap, T)
        piece = heis
        if m:
            piece = piece + f.mul_p(1) * ccoeff.scale(m)
        out = out + FockVector.pure(m, piece)
    return out


def exp_D(v: FockVector, var: str, order: int,
          charge_coeff=None) -> LaurentChunk:
    """exp(var * D) v as a chunk with FockVector coefficients on [0, order].

    The support in var is [0, infinity): coefficients beyond the window are
    nonzero in general and simply not computed.
    """
    terms = {Monomial(): v}
    w = v
    fact = 1
    for k in range(1, order + 1):
        w = apply_D(w, charge_coeff)
        fact *= k
        terms[Monomial.var(var, k)] = w.scale(Rat(1, fact))
    iv = VAR_INDEX[var]
    window = Window(tuple((0, order) if i == iv else (0, 0)
                          for i in range(4)))
    support = tuple((0, None) if i == iv else (0, 0) for i in range(4))
    return LaurentChunk(terms, window, FockVector.zero(v.degree_cap,
                                                       v.t_order), support)


def exp_D_chunk(chunk: LaurentChunk, var: str, order: int,
                charge_coeff=None) -> LaurentChunk:
    """Apply exp(var * D) to a chunk of FockVector coefficients that may
    already carry powers of var (with window starting at 0)."""
    iv = VAR_INDEX[var]
    lo, hi = chunk.window.bounds[iv]
    if lo != 0 or hi > order:
        raise TruncationMismatch(
            f"chunk window {chunk.window} incompatible with order {order}")
    facts = [1]
    for k in range(1, order + 1):
        facts.append(facts[-1] * k)
    terms: dict = {}
    for m, w in chunk.terms.items():
        base = m[iv]
        cur = w
        for k in range(0, order - base + 1):
            if k:
                cur = apply_D(cur, charge_coeff)
            piece = cur.scale(Rat(1, facts[k])) if k else cur
            key = m * Monomial.var(var, k)
            terms[key] = terms[key] + piece if key in terms else piece
    window = Window(tuple((0, order) if i == iv else b
                          for i, b in enumerate(chunk.window.bounds)))
    support = tuple((0, None) if i == iv else s
                    for i, s in enumerate(chunk.support))
    return LaurentChunk(terms, window, chunk.zero, support)
