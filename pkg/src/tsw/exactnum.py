"""Exact scalar arithmetic: rationals and cyclotomic numbers.

Rationals are stdlib ``fractions.Fraction``.  Cyclotomic numbers are
elements of Q(zeta_n) stored as coefficient vectors in the power basis
1, zeta, ..., zeta^(phi(n)-1) of Q[x]/Phi_n(x), so equality and the
zero test are canonical (no floating point anywhere).

The conductor of every value is explicit.  Mixed-conductor arithmetic
coerces both operands into Q(zeta_lcm); nothing ever tries to shrink a
conductor behind the caller's back.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm


def euler_phi(n: int) -> int:
    """Euler's totient, by trial-division factoring (n stays small here)."""
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            result *= (p - 1) * p ** (e - 1)
        p += 1 if p == 2 else 2
    if m > 1:
        result *= m - 1
    return result


def _poly_divmod_exact(num: list, den: tuple) -> tuple:
    """Divide coefficient lists (low to high) when den is monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    q = [0] * max(0, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q[i - dd] = c
        for j in range(dd + 1):
            num[i - dd + j] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, low degree first.

    Computed from x^n - 1 = prod_{d | n} Phi_d by exact division, which
    doubles as its own certificate: the final remainder must vanish and
    the result must be monic of degree phi(n).

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if n < 1:
        raise ValueError("conductor must be >= 1")
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    quo = num
    for d in range(1, n):
        if n % d == 0:
            quo, rem = _poly_divmod_exact(quo, cyclotomic_polynomial(d))
            if rem:
                raise AssertionError("cyclotomic division left a remainder")
    phi = euler_phi(n)
    if len(quo) - 1 != phi or quo[-1] != 1:
        raise AssertionError("cyclotomic polynomial has wrong shape")
    return tuple(quo)


@lru_cache(maxsize=None)
def _power_basis_table(n: int) -> tuple:
    """zeta_n^k for k in [0, n), each as a phi(n)-tuple of ints."""
    phi_n = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi_n
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        nxt = [0] + cur[: phi_n - 1]
        top = cur[phi_n - 1]
        if top:
            # x * x^(phi-1) = x^phi = -(lower Phi_n coefficients)
            for j in range(phi_n):
                nxt[j] -= top * poly[j]
        cur = nxt
    return tuple(rows)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


class Cyclotomic:
    """An element of Q(zeta_n) with an explicit conductor n.

    Instances are immutable.  Arithmetic accepts ints, Fractions and
    other Cyclotomics; conductors are merged by lcm.
    """

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        phi_n = euler_phi(n)
        c = [Fraction(x) for x in coeffs]
        if len(c) > phi_n:
            raise ValueError("coefficient vector longer than phi(n)")
        c += [Fraction(0)] * (phi_n - len(c))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", tuple(c))

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def root(n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k."""
        row = _power_basis_table(n)[k % n]
        return Cyclotomic(n, row)

    @staticmethod
    def from_rational(q, n: int = 1) -> "Cyclotomic":
        a = Cyclotomic(n, [])
        c = list(a.c)
        c[0] = Fraction(q)
        return Cyclotomic(n, c)

    # -- conductor plumbing ---------------------------------------------

    def promoted(self, m: int) -> "Cyclotomic":
        """Image under Q(zeta_n) -> Q(zeta_m), zeta_n |-> zeta_m^(m/n)."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ValueError("target conductor must be a multiple")
        step = m // self.n
        table = _power_basis_table(m)
        phi_m = euler_phi(m)
        acc = [Fraction(0)] * phi_m
        for j, a in enumerate(self.c):
            if a:
                row = table[(j * step) % m]
                for i in range(phi_m):
                    if row[i]:
                        acc[i] += a * row[i]
        return Cyclotomic(m, acc)

    def _pair(self, other):
        o = other
        if not isinstance(o, Cyclotomic):
            f = _as_fraction(o)
            if f is None:
                return None
            o = Cyclotomic.from_rational(f)
        m = lcm(self.n, o.n)
        return self.promoted(m), o.promoted(m)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def is_rational(self):
        """The Fraction value if the element is rational, else None."""
        if any(a != 0 for a in self.c[1:]):
            return None
        return self.c[0]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.n, [x + y for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-x for x in self.c])

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.n, [x - y for x, y in zip(a.c, b.c)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        f = _as_fraction(other)
        if f is not None:
            return Cyclotomic(self.n, [x * f for x in self.c])
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        n, phi_n = a.n, len(a.c)
        conv = [Fraction(0)] * (2 * phi_n - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        conv[i + j] += x * y
        poly = cyclotomic_polynomial(n)
        for i in range(len(conv) - 1, phi_n - 1, -1):
            c = conv[i]
            if c:
                conv[i] = Fraction(0)
                for j in range(phi_n):
                    conv[i - phi_n + j] -= c * poly[j]
        return Cyclotomic(n, conv[:phi_n])

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via extended Euclid against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        phi = [Fraction(x) for x in cyclotomic_polynomial(self.n)]
        r0, r1 = phi, list(self.c)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [Fraction(1)]
        while True:
            if not r1:
                raise ZeroDivisionError("element not invertible")
            if len(r1) == 1:
                inv = 1 / r1[0]
                out = [x * inv for x in s1]
                return Cyclotomic(self.n, out)
            q, r = _frac_poly_divmod(r0, r1)
            s = _frac_poly_sub(s0, _frac_poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s

    def __truediv__(self, other):
        f = _as_fraction(other)
        if f is not None:
            if f == 0:
                raise ZeroDivisionError
            return Cyclotomic(self.n, [x / f for x in self.c])
        if isinstance(other, Cyclotomic):
            a, b = self._pair(other)
            return a * b.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        f = _as_fraction(other)
        if f is None:
            return NotImplemented
        return self.inverse() * f

    def __pow__(self, e: int):
        if e == 0:
            return Cyclotomic.from_rational(1, self.n)
        base = self if e > 0 else self.inverse()
        e = abs(e)
        acc = None
        while e:
            if e & 1:
                acc = base if acc is None else acc * base
            base = base * base
            e >>= 1
        return acc

    def galois(self, j: int) -> "Cyclotomic":
        """Apply zeta |-> zeta^j; j must be prime to the conductor."""
        if gcd(j, self.n) != 1:
            raise ValueError("galois exponent must be prime to conductor")
        table = _power_basis_table(self.n)
        phi_n = len(self.c)
        acc = [Fraction(0)] * phi_n
        for i, a in enumerate(self.c):
            if a:
                row = table[(i * j) % self.n]
                for t in range(phi_n):
                    if row[t]:
                        acc[t] += a * row[t]
        return Cyclotomic(self.n, acc)

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation zeta |-> zeta^(-1)."""
        if self.n <= 2:
            return self
        return self.galois(self.n - 1)

    # -- comparisons / hashing / repr -------------------------------------

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.c == b.c

    def __hash__(self):
        r = self.is_rational()
        if r is not None:
            return hash(r)
        return hash((self.n, self.c))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        r = self.is_rational()
        if r is not None:
            return f"Cyclotomic({self.n}, {r})"
        parts = []
        for i, a in enumerate(self.c):
            if a:
                parts.append(f"{a}*z{self.n}^{i}" if i else f"{a}")
        return "(" + " + ".join(parts) + ")"


def _frac_poly_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = a[i] * inv
        if c:
            q[i - (len(b) - 1)] = c
            for j, bv in enumerate(b):
                a[i - (len(b) - 1) + j] -= c * bv
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _frac_poly_mul(a: list, b: list):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


def _frac_poly_sub(a: list, b: list):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    while out and out[-1] == 0:
        out.pop()
    return out


# -- helpers shared by the polynomial layers ------------------------------

def scalar_is_zero(x) -> bool:
    if isinstance(x, Cyclotomic):
        return x.is_zero()
    return x == 0


def scalar_conjugate(x):
    if isinstance(x, Cyclotomic):
        return x.conjugate()
    return x


def scalar_rational(x):
    """Fraction value of a scalar, or None when genuinely irrational."""
    if isinstance(x, Cyclotomic):
        return x.is_rational()
    return Fraction(x)
