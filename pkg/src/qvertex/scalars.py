"""Coefficient arithmetic in the deformation parameter t.

Two representations are used throughout the package:

* ``TScalar`` -- a t-adic series truncated at a fixed order T, stored as a
  tuple of T+1 exact rationals.  All ring operations are performed in the
  quotient Q[t]/(t^{T+1}): degrees above T are discarded, so results are
  always exact as elements of the quotient.  Mixing two truncation orders
  is a configuration bug and raises TruncationMismatch.

* ``TPoly`` -- an exact polynomial in t with no truncation, stored as a
  plain tuple of rationals with trailing zeros trimmed.  Closed-form data
  (factor prefactors, oracle output) is kept in this form so the same
  object can be re-truncated at any order.
"""

from __future__ import annotations

from .errors import TruncationMismatch, ZeroConstantTerm
from .rationals import RAT_ONE, RAT_ZERO, Rat, rat_str

# ---------------------------------------------------------------------------
# exact t-polynomials


TP_ZERO: tuple = ()
TP_ONE = (RAT_ONE,)


def tp(*coeffs) -> tuple:
    """Build an exact t-polynomial from low-degree-first coefficients."""
    return tp_trim(tuple(Rat(c) for c in coeffs))


def tp_trim(p: tuple) -> tuple:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return p[:n]


def tp_add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return tp_trim(tuple(out))


def tp_neg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def tp_mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return TP_ZERO
    out = [RAT_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tp_trim(tuple(out))


def tp_scale(a: tuple, c) -> tuple:
    c = Rat(c)
    if not c:
        return TP_ZERO
    return tuple(x * c for x in a)


def tp_pow(a: tuple, n: int) -> tuple:
    if n < 0:
        raise ValueError("tp_pow wants n >= 0")
    out = TP_ONE
    for _ in range(n):
        out = tp_mul(out, a)
    return out


def tp_shift(a: tuple, k: int) -> tuple:
    """Multiply by t^k (k >= 0)."""
    if not a:
        return TP_ZERO
    return (RAT_ZERO,) * k + tuple(a)


def tp_deg(a: tuple) -> int:
    """Degree, with deg 0 = -1 convention avoided: zero poly gives -1."""
    return len(a) - 1


def tp_eval(a: tuple, x) -> "Rat":
    x = Rat(x)
    acc = RAT_ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def tp_divexact(num: tuple, den: tuple) -> tuple:
    """Exact division in Q[t]; raises if the remainder is nonzero."""
    den = tp_trim(den)
    if not den:
        raise ZeroDivisionError("tp_divexact by zero")
    rem = list(num)
    d = len(den) - 1
    lead = den[d]
    q = [RAT_ZERO] * max(0, len(rem) - d)
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if not c:
            continue
        f = c / lead
        q[i - d] = f
        for j, cd in enumerate(den):
            rem[i - d + j] -= f * cd
    if any(rem):
        raise ValueError("tp_divexact: inexact division")
    return tp_trim(tuple(q))


def tp_str(a: tuple) -> str:
    if not a:
        return "0"
    parts = []
    for k, c in enumerate(a):
        if not c:
            continue
        if k == 0:
            parts.append(rat_str(c))
        else:
            tk = "t" if k == 1 else f"t^{k}"
            if c == 1:
                parts.append(tk)
            elif c == -1:
                parts.append(f"-{tk}")
            else:
                parts.append(f"{rat_str(c)}*{tk}")
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


def tp_phi(r: int) -> tuple:
    """phi_r(t) = prod_{j=1}^{r} (1 - t^j)."""
    out = TP_ONE
    for j in range(1, r + 1):
        out = tp_mul(out, tp_add(TP_ONE, tp_shift((Rat(-1),), j)))
    return out


def tp_bracket_factorial(m: int) -> tuple:
    """[m]_t! = prod_{j=1}^{m} (1 + t + ... + t^{j-1})."""
    out = TP_ONE
    for j in range(1, m + 1):
        out = tp_mul(out, (RAT_ONE,) * j)
    return out


# ---------------------------------------------------------------------------
# truncated t-adic scalars


class TScalar:
    """Element of Q[t]/(t^{T+1}); coeffs has fixed length T+1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: tuple):
        self.coeffs = coeffs

    # -- constructors

    @classmethod
    def zero(cls, t_order: int) -> "TScalar":
        return cls((RAT_ZERO,) * (t_order + 1))

    @classmethod
    def one(cls, t_order: int) -> "TScalar":
        return cls((RAT_ONE,) + (RAT_ZERO,) * t_order)

    @classmethod
    def from_rat(cls, c, t_order: int) -> "TScalar":
        return cls((Rat(c),) + (RAT_ZERO,) * t_order)

    @classmethod
    def from_tpoly(cls, p: tuple, t_order: int) -> "TScalar":
        n = t_order + 1
        q = tuple(Rat(c) for c in p[:n])
        return cls(q + (RAT_ZERO,) * (n - len(q)))

    @classmethod
    def t_power(cls, k: int, t_order: int) -> "TScalar":
        c = [RAT_ZERO] * (t_order + 1)
        if 0 <= k <= t_order:
            c[k] = RAT_ONE
        return cls(tuple(c))

    # -- structure

    @property
    def t_order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def constant_term(self):
        return self.coeffs[0]

    def truncate(self, t_order: int) -> "TScalar":
        """Prefix at a lower order; raising the order is not recoverable."""
        if t_order > self.t_order:
            raise TruncationMismatch(
                f"cannot extend truncation {self.t_order} to {t_order}")
        return TScalar(self.coeffs[: t_order + 1])

    def eval_at(self, x) -> "Rat":
        """Evaluate at a rational; exact only if the underlying series is a
        polynomial of degree <= T."""
        x = Rat(x)
        acc = RAT_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic

    def _check(self, other: "TScalar"):
        if len(self.coeffs) != len(other.coeffs):
            raise TruncationMismatch(
                f"t-orders differ: {self.t_order} vs {other.t_order}")

    def __add__(self, other):
        other = _coerce(other, len(self.coeffs))
        if other is None:
            return NotImplemented
        self._check(other)
        return TScalar(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, len(self.coeffs))
        if other is None:
            return NotImplemented
        self._check(other)
        return TScalar(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = _coerce(other, len(self.coeffs))
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return TScalar(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TScalar):
            self._check(other)
            n = len(self.coeffs)
            a, b = self.coeffs, other.coeffs
            out = [RAT_ZERO] * n
            for i, ca in enumerate(a):
                if ca:
                    for j in range(n - i):
                        cb = b[j]
                        if cb:
                            out[i + j] += ca * cb
            return TScalar(tuple(out))
        if isinstance(other, (int, Rat)):
            c = Rat(other)
            return TScalar(tuple(a * c for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> "TScalar":
        c = Rat(c)
        return TScalar(tuple(a * c for a in self.coeffs))

    def __eq__(self, other):
        other = _coerce(other, len(self.coeffs))
        if other is None:
            return NotImplemented
        self._check(other)
        return self.coeffs == other.coeffs

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __repr__(self):
        return f"TScalar({tp_str(tp_trim(self.coeffs))}; T={self.t_order})"

    def __str__(self):
        return tp_str(tp_trim(self.coeffs))


def _coerce(x, n: int):
    if isinstance(x, TScalar):
        return x
    if isinstance(x, (int, Rat)):
        return TScalar((Rat(x),) + (RAT_ZERO,) * (n - 1))
    return None


def ts_invert(s: TScalar) -> TScalar:
    """Multiplicative inverse in Q[t]/(t^{T+1}).

    The constant term must be nonzero; the inverse b is built term by term
    from a0*b0 = 1 and sum_{i+j=k} a_i b_j = 0 for k >= 1.
    """
    a = s.coeffs
    if not a[0]:
        raise ZeroConstantTerm("ts_invert: constant term is zero")
    n = len(a)
    b = [RAT_ZERO] * n
    b[0] = RAT_ONE / a[0]
    for k in range(1, n):
        acc = RAT_ZERO
        for i in range(1, k + 1):
            if a[i]:
                acc += a[i] * b[k - i]
        b[k] = -acc / a[0]
    return TScalar(tuple(b))
