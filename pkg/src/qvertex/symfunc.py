"""Symmetric functions in two guises.

``SymFuncP`` is the working representation of the engine: a finite linear
combination of power-sum monomials p_lambda with truncated t-adic
coefficients, subject to a degree cap.  The cap acts as a ring congruence:
products whose total p-weight would exceed the cap are dropped, so all
computations happen in the quotient by the span of high-weight terms and
two expressions are only ever compared inside the same quotient.

``XPoly`` is an exact polynomial in finitely many variables x_1..x_n with
exact t-polynomial coefficients.  The Hall-Littlewood oracle lives here:
P_lambda is computed from the classical symmetrization formula

    P_lambda = (1/v_lambda(t)) sum_{w in S_n} w( x^lambda prod_{i<j}
               (x_i - t x_j)/(x_i - x_j) )

by antisymmetrizing x^lambda prod_{i<j}(x_i - t x_j) term by term,
recombining the resulting alternants through the classical branching rule
for Schur polynomials, and dividing exactly by v_lambda.  Q_lambda is
b_lambda P_lambda.  Everything here is independent of the vertex-operator
engine so it can serve as its oracle.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import (DegreeCapExceeded, TooFewVariables, TruncationMismatch)
from .rationals import RAT_ONE, RAT_ZERO, Rat
from .scalars import (TP_ONE, TScalar, tp_add, tp_bracket_factorial,
                      tp_divexact, tp_eval, tp_mul, tp_phi, tp_scale, tp_str,
                      tp_trim)

# ---------------------------------------------------------------------------
# partitions


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    __slots__ = ()

    def __new__(cls, parts=()):
        p = tuple(int(x) for x in parts)
        for a, b in zip(p, p[1:]):
            if a < b:
                raise ValueError(f"parts not weakly decreasing: {p}")
        if p and p[-1] <= 0:
            raise ValueError(f"parts must be positive: {p}")
        return tuple.__new__(cls, p)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def mult(self, k: int) -> int:
        return sum(1 for x in self if x == k)

    def multiplicities(self) -> dict:
        out: dict = {}
        for x in self:
            out[x] = out.get(x, 0) + 1
        return out

    def replace_part(self, old: int, new: int) -> "Partition":
        parts = list(self)
        parts.remove(old)
        parts.append(new)
        return Partition(sorted(parts, reverse=True))

    def add_part(self, k: int) -> "Partition":
        return Partition(sorted(self + (k,), reverse=True))

    def remove_part(self, k: int) -> "Partition":
        parts = list(self)
        parts.remove(k)
        return Partition(parts)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self) + "]"


def partitions_of(n: int, max_part=None):
    """Partitions of n, parts bounded by max_part, lex-descending order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + tuple(rest))


def partitions_up_to(n: int):
    for k in range(n + 1):
        yield from partitions_of(k)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """mu <= lam in dominance order; requires equal weights."""
    if mu.weight != lam.weight:
        raise ValueError("dominance needs equal weights")
    s_mu = s_lam = 0
    for i in range(max(len(mu), len(lam))):
        s_mu += mu[i] if i < len(mu) else 0
        s_lam += lam[i] if i < len(lam) else 0
        if s_mu > s_lam:
            return False
    return True


# ---------------------------------------------------------------------------
# power-sum representation


class SymFuncP:
    """Linear combination of p_lambda with TScalar coefficients, in the
    quotient by terms of p-weight above degree_cap."""

    __slots__ = ("terms", "degree_cap", "t_order")

    def __init__(self, terms: dict, degree_cap: int, t_order: int):
        clean = {}
        for lam, c in terms.items():
            if lam.weight > degree_cap:
                raise DegreeCapExceeded(
                    f"term p_{lam} above cap {degree_cap}")
            if c.t_order != t_order:
                raise TruncationMismatch(
                    f"coefficient t-order {c.t_order} != {t_order}")
            if not c.is_zero():
                clean[lam] = c
        self.terms = clean
        self.degree_cap = degree_cap
        self.t_order = t_order

    # -- constructors

    @classmethod
    def zero(cls, degree_cap: int, t_order: int) -> "SymFuncP":
        return cls({}, degree_cap, t_order)

    @classmethod
    def one(cls, degree_cap: int, t_order: int) -> "SymFuncP":
        return cls({Partition(): TScalar.one(t_order)}, degree_cap, t_order)

    @classmethod
    def p(cls, n: int, degree_cap: int, t_order: int) -> "SymFuncP":
        return cls({Partition((n,)): TScalar.one(t_order)},
                   degree_cap, t_order)

    # -- structure

    def _check(self, other: "SymFuncP"):
        if (self.degree_cap, self.t_order) != (other.degree_cap,
                                               other.t_order):
            raise TruncationMismatch(
                f"cap/t-order mismatch: ({self.degree_cap},{self.t_order})"
                f" vs ({other.degree_cap},{other.t_order})")

    def is_zero(self) -> bool:
        return not self.terms

    def max_weight(self) -> int:
        return max((lam.weight for lam in self.terms), default=0)

    def coefficient(self, lam: Partition) -> TScalar:
        return self.terms.get(lam, TScalar.zero(self.t_order))

    def t_truncate(self, t_order: int) -> "SymFuncP":
        return SymFuncP({lam: c.truncate(t_order)
                         for lam, c in self.terms.items()},
                        self.degree_cap, t_order)

    def coeffs_at(self, t_value) -> dict:
        """Evaluate every coefficient at a rational t; exact only when the
        true coefficients have degree <= t_order."""
        out = {}
        for lam, c in self.terms.items():
            v = c.eval_at(t_value)
            if v:
                out[lam] = v
        return out

    # -- ring operations

    def __add__(self, other):
        if not isinstance(other, SymFuncP):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms[lam] + c if lam in terms else c
        return SymFuncP(terms, self.degree_cap, self.t_order)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SymFuncP({lam: -c for lam, c in self.terms.items()},
                        self.degree_cap, self.t_order)

    def __mul__(self, other):
        if isinstance(other, SymFuncP):
            self._check(other)
            cap = self.degree_cap
            terms: dict = {}
            for lam, c in self.terms.items():
                wl = lam.weight
                for mu, d in other.terms.items():
                    if wl + mu.weight > cap:
                        continue
                    nu = Partition(sorted(lam + mu, reverse=True))
                    cd = c * d
                    terms[nu] = terms[nu] + cd if nu in terms else cd
            return SymFuncP(terms, cap, self.t_order)
        if isinstance(other, (TScalar, int, Rat)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "SymFuncP":
        if isinstance(c, TScalar):
            if c.t_order != self.t_order:
                raise TruncationMismatch("scalar t-order mismatch")
            return SymFuncP({lam: c * x for lam, x in self.terms.items()},
                            self.degree_cap, self.t_order)
        return SymFuncP({lam: x.scale(c) for lam, x in self.terms.items()},
                        self.degree_cap, self.t_order)

    def mul_p(self, n: int) -> "SymFuncP":
        """Multiply by p_n; overweight results vanish in the quotient."""
        terms = {}
        for lam, c in self.terms.items():
            if lam.weight + n <= self.degree_cap:
                terms[lam.add_part(n)] = c
        return SymFuncP(terms, self.degree_cap, self.t_order)

    def dp(self, n: int) -> "SymFuncP":
        """Formal derivative with respect to p_n."""
        terms: dict = {}
        for lam, c in self.terms.items():
            m = lam.mult(n)
            if m:
                mu = lam.remove_part(n)
                cc = c.scale(m)
                terms[mu] = terms[mu] + cc if mu in terms else cc
        return SymFuncP(terms, self.degree_cap, self.t_order)

    def __eq__(self, other):
        if not isinstance(other, SymFuncP):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for lam in sorted(self.terms):
            c = self.terms[lam]
            name = "p" + str(lam) if lam else "1"
            bits.append(f"({c})*{name}")
        return " + ".join(bits)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# exact x-realizations


class XPoly:
    """Polynomial in x_1..x_nvars with exact t-polynomial coefficients."""

    __slots__ = ("terms", "nvars")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = tp_trim(tuple(c))
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, nvars, exps, coeff=TP_ONE) -> "XPoly":
        return cls(nvars, {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def add(self, other: "XPoly") -> "XPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = tp_add(terms[e], c) if e in terms else c
        return XPoly(self.nvars, terms)

    def neg(self) -> "XPoly":
        return XPoly(self.nvars,
                     {e: tuple(-x for x in c) for e, c in self.terms.items()})

    def sub(self, other: "XPoly") -> "XPoly":
        return self.add(other.neg())

    def mul(self, other: "XPoly") -> "XPoly":
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = tp_mul(c1, c2)
                terms[e] = tp_add(terms[e], c) if e in terms else c
        return XPoly(self.nvars, terms)

    def scale_tp(self, c: tuple) -> "XPoly":
        return XPoly(self.nvars,
                     {e: tp_mul(x, c) for e, x in self.terms.items()})

    def div_tp(self, c: tuple) -> "XPoly":
        return XPoly(self.nvars,
                     {e: tp_divexact(x, c) for e, x in self.terms.items()})

    def truncate_t(self, t_order: int) -> "XPoly":
        return XPoly(self.nvars,
                     {e: c[: t_order + 1] for e, c in self.terms.items()})

    def eval_t(self, t_value) -> dict:
        out = {}
        for e, c in self.terms.items():
            v = tp_eval(c, t_value)
            if v:
                out[e] = v
        return out

    def __eq__(self, other):
        return (isinstance(other, XPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __str__(self):
        bits = []
        for e in sorted(self.terms, reverse=True):
            mono = " ".join(f"x{i+1}^{d}" for i, d in enumerate(e) if d)
            bits.append(f"({tp_str(self.terms[e])})*{mono or '1'}")
        return " + ".join(bits) if bits else "0"

    __repr__ = __str__


def xpoly_monomial_coeffs(p: XPoly) -> dict:
    """Monomial-basis coefficients of a symmetric XPoly, keyed by partition
    (read off the dominant representative of each orbit)."""
    out = {}
    for exps, c in p.terms.items():
        s = tuple(sorted(exps, reverse=True))
        if s == exps:
            out[Partition(tuple(x for x in s if x))] = c
    return out


def p_to_x(f: SymFuncP, nvars: int) -> XPoly:
    """Realize a power-sum expression in nvars variables; coefficients are
    read as exact polynomials in t (the truncation must dominate them)."""
    if nvars < 1:
        raise TooFewVariables("need at least one variable")
    out = XPoly(nvars)
    cache: dict = {}
    for lam, c in f.terms.items():
        if lam not in cache:
            acc = XPoly.monomial(nvars, (0,) * nvars)
            for part in lam:
                pk = XPoly(nvars, {tuple(part if j == i else 0
                                         for j in range(nvars)): TP_ONE
                                   for i in range(nvars)})
                acc = acc.mul(pk)
            cache[lam] = acc
        out = out.add(cache[lam].scale_tp(tp_trim(c.coeffs)))
    return out


# ---------------------------------------------------------------------------
# alternants, Schur polynomials


def _perm_sign_sorted(exps):
    """Sign to sort exps into strictly decreasing order; None if repeated."""
    if len(set(exps)) != len(exps):
        return None, None
    inv = 0
    for i in range(len(exps)):
        for j in range(i + 1, len(exps)):
            if exps[i] < exps[j]:
                inv += 1
    return tuple(sorted(exps, reverse=True)), (1 if inv % 2 == 0 else -1)


def antisymmetrize(p: XPoly) -> dict:
    """Alternant coefficients of sum_w sign(w) w(p).

    Returns {strict decreasing exps: TPoly}; each input term with distinct
    exponents contributes sign(sorting permutation) times its coefficient
    to its orbit representative.  Reconstructing the full antisymmetric
    polynomial would attach the alternant a_mu to each key.
    """
    out: dict = {}
    for exps, c in p.terms.items():
        key, sign = _perm_sign_sorted(exps)
        if key is None:
            continue
        cc = c if sign == 1 else tuple(-x for x in c)
        out[key] = tp_add(out[key], cc) if key in out else tp_trim(cc)
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _schur_terms(nu: tuple, n: int):
    """Monomial expansion of the Schur polynomial s_nu(x_1..x_n) by the
    branching rule s_nu = sum over interlacing mu of s_mu * x_n^{|nu|-|mu|}."""
    if n == 0:
        return {(): 1} if not nu else {}
    if len(nu) > n:
        return {}
    out: dict = {}
    ranges = []
    for i in range(len(nu)):
        lo = nu[i + 1] if i + 1 < len(nu) else 0
        ranges.append(range(lo, nu[i] + 1))
    for mu_full in itertools.product(*ranges):
        mu = tuple(x for x in mu_full if x)
        k = sum(nu) - sum(mu)
        for exps, c in _schur_terms(mu, n - 1).items():
            key = exps + (k,)
            out[key] = out.get(key, 0) + c
    return out


def schur_x(nu, n: int) -> XPoly:
    """Schur polynomial via the branching rule (engine-independent)."""
    nu = tuple(nu)
    return XPoly(n, {e: (Rat(c),) for e, c in _schur_terms(nu, n).items()})


def xp_div_linear(p: XPoly, i: int, j: int) -> XPoly:
    """Exact division by (x_i - x_j), 0-based i < j, lex leading term x_i."""
    rem = dict(p.terms)
    quot: dict = {}
    while rem:
        e = max(rem)
        c = rem.pop(e)
        if e[i] < 1:
            raise ValueError(f"not divisible by x{i+1} - x{j+1}")
        q = tuple(d - 1 if k == i else d for k, d in enumerate(e))
        quot[q] = tp_add(quot[q], c) if q in quot else c
        # subtract q * (x_i - x_j); the x_i part cancels e exactly
        e2 = tuple(d + 1 if k == j else d for k, d in enumerate(q))
        c2 = tp_add(rem.get(e2, ()), c)
        if c2:
            rem[e2] = c2
        elif e2 in rem:
            del rem[e2]
    return XPoly(p.nvars, quot)


def schur_bialternant(lam, n: int) -> XPoly:
    """Schur polynomial as a_{lam+delta}/a_delta by exact division.

    Independent of both the branching-rule route and the engine; intended
    for small n (the alternant has n! terms).
    """
    lam = Partition(lam)
    if n < len(lam):
        raise TooFewVariables(f"{n} variables for {lam}")
    if n > 7:
        raise ValueError("bialternant oracle limited to n <= 7")
    staircase = tuple(lam[i] if i < len(lam) else 0 for i in range(n))
    staircase = tuple(staircase[i] + n - 1 - i for i in range(n))
    terms: dict = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n)
                  if perm[a] > perm[b])
        exps = tuple(staircase[perm[k]] for k in range(n))
        c = (RAT_ONE,) if inv % 2 == 0 else (Rat(-1),)
        terms[exps] = tp_add(terms[exps], c) if exps in terms else c
    num = XPoly(n, terms)
    for i in range(n):
        for j in range(i + 1, n):
            num = xp_div_linear(num, i, j)
    return num


# ---------------------------------------------------------------------------
# Hall-Littlewood oracle


def b_lambda(lam) -> tuple:
    """b_lambda(t) = prod_{i>=1} phi_{m_i(lambda)}(t)."""
    lam = Partition(lam)
    out = TP_ONE
    for m in lam.multiplicities().values():
        out = tp_mul(out, tp_phi(m))
    return out


def v_lambda(lam, n: int) -> tuple:
    """v_lambda(t) = prod_{i>=0} [m_i]_t! with m_0 = n - l(lambda)."""
    lam = Partition(lam)
    out = tp_bracket_factorial(n - len(lam))
    for m in lam.multiplicities().values():
        out = tp_mul(out, tp_bracket_factorial(m))
    return out


@lru_cache(maxsize=8)
def _staircase_product(n: int) -> XPoly:
    """prod_{i<j}(x_i - t x_j), shared between all lambda at fixed n."""
    prod = XPoly.monomial(n, (0,) * n)
    for i in range(n):
        for j in range(i + 1, n):
            ei = tuple(1 if k == i else 0 for k in range(n))
            ej = tuple(1 if k == j else 0 for k in range(n))
            form = XPoly(n, {ei: TP_ONE, ej: (RAT_ZERO, Rat(-1))})
            prod = prod.mul(form)
    return prod


def hl_p_oracle(lam, n: int) -> XPoly:
    """Hall-Littlewood P_lambda(x_1..x_n; t) by the symmetrization formula.

    x^lambda prod_{i<j}(x_i - t x_j) is expanded, antisymmetrized term by
    term, the alternants are recombined into Schur polynomials through the
    branching rule, and the result is divided exactly by v_lambda(t).
    Exact in t, no truncation.
    """
    lam = Partition(lam)
    if n < len(lam):
        raise TooFewVariables(f"{n} variables for {lam}")
    if n > 7:
        raise ValueError("symmetrization oracle limited to n <= 7")
    base = tuple(lam[i] if i < len(lam) else 0 for i in range(n))
    stair = _staircase_product(n)
    prod = XPoly(n, {tuple(a + b for a, b in zip(e, base)): c
                     for e, c in stair.terms.items()})
    alts = antisymmetrize(prod)
    delta = tuple(range(n - 1, -1, -1))
    acc = XPoly(n)
    for mu, c in alts.items():
        nu = tuple(a - b for a, b in zip(mu, delta))
        if any(x < 0 for x in nu):
            raise AssertionError("alternant below staircase")
        acc = acc.add(schur_x(tuple(x for x in nu if x), n).scale_tp(c))
    return acc.div_tp(v_lambda(lam, n))


def hl_q_oracle(lam, n: int) -> XPoly:
    """Q_lambda = b_lambda(t) P_lambda, exact in t."""
    return hl_p_oracle(lam, n).scale_tp(b_lambda(lam))
