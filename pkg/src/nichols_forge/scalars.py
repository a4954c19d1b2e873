"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo
the N-th cyclotomic polynomial, as integer numerators over one positive common
denominator.  The representation is canonical, so ``==`` and ``hash`` are
structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n)[:-1]:
        num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    # b is monic with integer coefficients
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for t in range(db + 1):
                a[k - db + t] -= c * b[t]
    if any(a[:db]):
        raise ArithmeticError("non-exact polynomial division")
    return q


class _Field:
    """Per-order tables: phi(N), and x^k reduced mod Phi_N for small k."""

    __slots__ = ("n", "phi", "poly", "reduced")

    def __init__(self, n: int):
        self.n = n
        self.poly = cyclotomic_polynomial(n)
        self.phi = len(self.poly) - 1
        limit = max(2 * self.phi, n + 1)
        phi = self.phi
        table = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(limit):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for t in range(phi):
                    cur[t] -= top * self.poly[t]
        self.reduced = table

    def power_vector(self, k: int) -> tuple[int, ...]:
        return self.reduced[k % self.n]


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _canonical(n: int, nums: list[int], den: int) -> "CyclotomicNumber":
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = gcd(den, *nums)
    if g != 1:
        if g == 0:
            den = 1
        else:
            nums = [c // g for c in nums]
            den //= g
    obj = object.__new__(CyclotomicNumber)
    obj.n = n
    obj.num = tuple(nums)
    obj.den = den
    obj._hash = None
    return obj


class CyclotomicNumber:
    """An element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, coeffs: Iterable[Rational] = ()):
        other = make(n, coeffs)
        self.n = other.n
        self.num = other.num
        self.den = other.den
        self._hash = None

    # --- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "CyclotomicNumber":
        return _canonical(n, [0] * _field(n).phi, 1)

    @classmethod
    def one(cls, n: int) -> "CyclotomicNumber":
        return root_of_unity(n, 0)

    @property
    def root_order(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    # --- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.n != self.n:
                raise ValueError(
                    f"cyclotomic orders differ ({self.n} vs {other.n}); rescale first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return from_rational(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return _canonical(self.n, [a + b for a, b in zip(self.num, other.num)], self.den)
        da, db = self.den, other.den
        return _canonical(
            self.n, [a * db + b * da for a, b in zip(self.num, other.num)], da * db
        )

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(CyclotomicNumber)
        obj.n = self.n
        obj.num = tuple(-c for c in self.num)
        obj.den = self.den
        obj._hash = None
        return obj

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return _canonical(self.n, [c * other for c in self.num], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = _field(self.n)
        phi = f.phi
        a, b = self.num, other.num
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        res = conv[:phi]
        red = f.reduced
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                r = red[k]
                for t in range(phi):
                    res[t] += c * r[t]
        return _canonical(self.n, res, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        f = _field(self.n)
        poly = [Fraction(c) for c in f.poly]
        a = [Fraction(c, self.den) for c in self.num]
        s = _poly_inverse_mod(a, poly)
        return make(self.n, s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # --- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.n == other.n and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.n, self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({self.n}, {self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and q == 1:
                terms.append(mono)
            elif mono and q == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"{q}*{mono}")
            else:
                terms.append(str(q))
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self):
        """Exact serialization: list of [numerator, denominator] pairs."""
        return [[c.numerator, c.denominator] for c in self.coeffs]


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for t, bt in enumerate(b):
            a[shift + t] -= c * bt
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_sub_mul(a, q, b):
    # a - q*b
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _poly_trim(out)


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Extended Euclid: s with s*a = 1 mod m (m irreducible)."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


# --- module-level operations ----------------------------------------------------


def make(n: int, raw: Iterable[Rational] | Rational) -> CyclotomicNumber:
    """Reduce the polynomial sum(raw[k] z^k) modulo Phi_n."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    if isinstance(raw, (int, Fraction)):
        raw = [raw]
    raw = [Fraction(c) for c in raw]
    den = 1
    for c in raw:
        den = den * c.denominator // gcd(den, c.denominator)
    f = _field(n)
    acc = [0] * f.phi
    for k, c in enumerate(raw):
        ci = c.numerator * (den // c.denominator)
        if ci:
            vec = f.power_vector(k)
            for t in range(f.phi):
                acc[t] += ci * vec[t]
    return _canonical(n, acc, den)


def from_rational(n: int, q: Rational) -> CyclotomicNumber:
    q = Fraction(q)
    nums = [0] * _field(n).phi
    nums[0] = q.numerator
    return _canonical(n, nums, q.denominator)


@lru_cache(maxsize=None)
def root_of_unity(n: int, k: int) -> CyclotomicNumber:
    """zeta_n ** k."""
    f = _field(n)
    return _canonical(n, list(f.power_vector(k % n)), 1)


def rescale(a: CyclotomicNumber, m: int) -> CyclotomicNumber:
    """Embed Q(zeta_n) into Q(zeta_m) for n | m via zeta_n -> zeta_m^(m/n)."""
    if m % a.n:
        raise ValueError(f"{a.n} does not divide {m}")
    step = m // a.n
    raw = [Fraction(0)] * (step * len(a.num))
    for k, c in enumerate(a.coeffs):
        raw[k * step] = c
    return make(m, raw)


def arith(op: str, a: CyclotomicNumber, b: CyclotomicNumber | None = None) -> CyclotomicNumber:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


def root_order_of(a: CyclotomicNumber) -> int | None:
    """Multiplicative order of ``a``, or None if it is not a root of unity.

    Roots of unity in Q(zeta_N) are the +-zeta_N^k, so the order divides
    lcm(2, N).
    """
    if a.is_zero():
        return None
    bound = a.n if a.n % 2 == 0 else 2 * a.n
    power = a
    for m in range(1, bound + 1):
        if power.is_one():
            return m
        power = power * a
    return None


def exponent_of(a: CyclotomicNumber) -> int | None:
    """k with a == zeta_n^k, or None."""
    for k in range(a.n):
        if root_of_unity(a.n, k) == a:
            return k
    return None


def parse_scalar(n: int, spec) -> CyclotomicNumber:
    """int -> zeta_n^int; [p, q] -> the rational p/q."""
    if isinstance(spec, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(spec, int):
        return root_of_unity(n, spec)
    if isinstance(spec, (list, tuple)) and len(spec) == 2:
        p, q = spec
        if not isinstance(p, int) or not isinstance(q, int) or q == 0:
            raise ValueError(f"bad rational pair {spec!r}")
        return from_rational(n, Fraction(p, q))
    raise ValueError(f"bad scalar {spec!r}")


def scalar_to_json(a: CyclotomicNumber):
    k = exponent_of(a) if not a.is_zero() else None
    if k is not None:
        return k
    if a.is_rational():
        q = a.coeffs[0]
        return [q.numerator, q.denominator]
    return {"coeffs": a.to_json()}


def vector_is_zero(values: Sequence[CyclotomicNumber]) -> bool:
    return all(v.is_zero() for v in values)
