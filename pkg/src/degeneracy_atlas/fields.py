"""Exact coefficient fields: odd prime fields, their extensions, rationals.

A *field handle* owns the arithmetic; elements themselves are plain Python
values (int for F_p, tuple of ints for F_{p^r}, Fraction for Q) so that
inner loops pay no per-element object cost.  All handles are immutable and
hashable; operations are pure.

Characteristic 2 is rejected at construction: every degeneracy-locus
computation downstream divides by 2 implicitly (symmetric forms, signed
discriminants), so p = 2 would be silently wrong rather than slow.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from .errors import SizeError, Unsupported

# Primes are capped so that a product of two reduced elements fits in a
# signed 64-bit word: the numpy census kernels multiply before reducing.
MAX_PRIME = (1 << 31) - 1

# Extension fields are enumeration devices (censuses, exhaustive checks);
# cap the order so exhaustive loops stay desk-scale.
MAX_EXT_ORDER = 1 << 20


class SquareClass(enum.Enum):
    ZERO = "Zero"
    SQUARE = "Square"
    NON_SQUARE = "NonSquare"

    def __str__(self):
        return self.value


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Abstract field handle.  Subclasses fix the element representation."""

    char: int
    order: int | None  # None for infinite fields

    def is_finite(self) -> bool:
        return self.order is not None

    # -- subclass API ------------------------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def elements(self):
        """Iterate over all elements (finite fields only)."""
        raise NotImplementedError

    def to_str(self, a) -> str:
        raise NotImplementedError

    # -- shared ------------------------------------------------------------
    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        acc = self.one()
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def random(self, rng):
        """Uniform element (finite fields only)."""
        if not self.is_finite():
            raise Unsupported("random() needs a finite field")
        return self.element_at(rng.below(self.order))

    def random_nonzero(self, rng):
        while True:
            x = self.random(rng)
            if not self.is_zero(x):
                return x

    def element_at(self, idx: int):
        """idx-th element in the canonical enumeration order."""
        raise NotImplementedError


class PrimeField(Field):
    """F_p for an odd prime p; elements are ints in [0, p)."""

    __slots__ = ("p", "char", "order")

    def __init__(self, p: int):
        if p == 2:
            raise Unsupported("characteristic 2 is not supported")
        if p > MAX_PRIME:
            raise SizeError(f"prime {p} exceeds the word-size budget {MAX_PRIME}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def elements(self):
        return iter(range(self.p))

    def element_at(self, idx):
        return idx % self.p

    def to_str(self, a):
        return str(a)


class ExtField(Field):
    """F_{p^r} = F_p[x]/(modulus); elements are coefficient tuples, low first.

    The modulus is the lexicographically least monic irreducible of degree r
    (coefficient tuples compared low-degree-first), so two builds of the same
    (p, r) are always the same field with the same element encoding.
    """

    __slots__ = ("p", "r", "modulus", "char", "order", "base")

    def __init__(self, p: int, r: int, modulus: tuple[int, ...]):
        self.base = PrimeField(p)
        self.p = p
        self.r = r
        if len(modulus) != r:
            raise ValueError("modulus must list the r low coefficients")
        self.modulus = tuple(c % p for c in modulus)
        self.char = p
        self.order = p**r

    def __repr__(self):
        return f"F{self.p}^{self.r}"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.r == self.r
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", self.p, self.r, self.modulus))

    def zero(self):
        return (0,) * self.r

    def one(self):
        return (1,) + (0,) * (self.r - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.r - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, r = self.p, self.r
        # schoolbook product then reduction by x^r = -modulus
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for d in range(2 * r - 2, r - 1, -1):
            c = prod[d] % p
            if c:
                for j, m in enumerate(self.modulus):
                    prod[d - r + j] -= c * m
            prod[d] = 0
        return tuple(c % p for c in prod[:r])

    def inv(self, a):
        if all(c % self.p == 0 for c in a):
            raise ZeroDivisionError("inverse of zero")
        # tiny field: Lagrange, a^(q-2)
        return self.pow(a, self.order - 2)

    def elements(self):
        for idx in range(self.order):
            yield self.element_at(idx)

    def element_at(self, idx):
        idx %= self.order
        out = []
        for _ in range(self.r):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def to_str(self, a):
        return ",".join(str(c) for c in a)

    def frobenius(self, a):
        return self.pow(a, self.p)


class RationalField(Field):
    """Q with eager gcd reduction (``fractions.Fraction``)."""

    __slots__ = ("char", "order")

    def __init__(self):
        self.char = 0
        self.order = None

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def elements(self):
        raise Unsupported("Q is infinite")

    def to_str(self, a):
        return str(a)


def _poly_is_irreducible(coeffs_low: list[int], p: int) -> bool:
    """Trial division of the monic polynomial x^r + sum(c_i x^i) over F_p."""
    r = len(coeffs_low)
    field = PrimeField(p)

    def rem_by(divisor_low, divisor_deg, poly):
        poly = list(poly)
        for d in range(len(poly) - 1, divisor_deg - 1, -1):
            c = poly[d] % p
            if c:
                for j in range(divisor_deg):
                    poly[d - divisor_deg + j] = (
                        poly[d - divisor_deg + j] - c * divisor_low[j]
                    ) % p
            poly[d] = 0
        return poly[:divisor_deg]

    full = coeffs_low + [1]
    for deg in range(1, r // 2 + 1):
        for idx in range(p**deg):
            div = []
            t = idx
            for _ in range(deg):
                div.append(t % p)
                t //= p
            if all(c == 0 for c in rem_by(div, deg, full)):
                return False
    return r >= 1


def ext_field_make(p: int, r: int) -> Field:
    """Build F_{p^r} with the deterministic least modulus; F_p when r = 1."""
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if p**r > MAX_EXT_ORDER:
        raise SizeError(f"field order {p}^{r} exceeds budget {MAX_EXT_ORDER}")
    if r == 1:
        return PrimeField(p)
    PrimeField(p)  # validates p
    for idx in range(p**r):
        coeffs = []
        t = idx
        for _ in range(r):
            coeffs.append(t % p)
            t //= p
        if _poly_is_irreducible(coeffs, p):
            return ExtField(p, r, tuple(coeffs))
    raise AssertionError("no irreducible polynomial found (impossible)")


def square_class(field: Field, x) -> SquareClass:
    """Square class of x: Zero, Square, or NonSquare.

    Finite fields: Euler criterion x^((q-1)/2).  Rationals: sign plus a
    perfect-square test of numerator*denominator (their product carries the
    squarefree part; no factorization needed).
    """
    if field.is_zero(x):
        return SquareClass.ZERO
    if field.is_finite():
        e = field.pow(x, (field.order - 1) // 2)
        return SquareClass.SQUARE if e == field.one() else SquareClass.NON_SQUARE
    frac = Fraction(x)
    if frac < 0:
        return SquareClass.NON_SQUARE
    nd = frac.numerator * frac.denominator
    root = math.isqrt(nd)
    return SquareClass.SQUARE if root * root == nd else SquareClass.NON_SQUARE


def square_root(field: Field, x):
    """A square root of x, or None if x is not a square.

    Prime fields use Tonelli-Shanks (deterministic here: the nonresidue is
    found by scanning 2, 3, ...).  Extension fields scan, which is fine at
    their capped orders.  Rationals take the integer square root.
    """
    if field.is_zero(x):
        return field.zero()
    if square_class(field, x) is not SquareClass.SQUARE:
        return None
    if isinstance(field, PrimeField):
        return _tonelli_shanks(x, field.p)
    if isinstance(field, RationalField):
        frac = Fraction(x)
        return Fraction(math.isqrt(frac.numerator), math.isqrt(frac.denominator))
    for y in field.elements():
        if field.mul(y, y) == x:
            return y
    return None


def _tonelli_shanks(x: int, p: int) -> int:
    if p % 4 == 3:
        return pow(x, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r
