"""Arithmetic in the prime field Z_d, d > 3.

Everything else in the package works on plain ``int`` values and numpy
``int64`` arrays reduced mod ``d``; :class:`PrimeField` and
:class:`FieldScalar` are the checked, scalar-level entry points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MAX_MODULUS = 1 << 16


def is_prime(n: int) -> bool:
    """Trial-division primality test (moduli are small)."""
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


def inv_mod(a: int, d: int) -> int:
    """Multiplicative inverse of ``a`` mod ``d`` by the extended Euclidean algorithm."""
    a %= d
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {d}")
    r0, r1 = d, a
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r0 != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {d}")
    return t0 % d


def fraction_mod(num: int, den: int, d: int) -> int:
    """Residue of ``num/den`` in Z_d, i.e. ``num * den^{-1} mod d``."""
    if den % d == 0:
        raise ZeroDivisionError(f"denominator {den} vanishes mod {d}")
    return (num % d) * inv_mod(den, d) % d


def parse_scalar(token: str, d: int) -> int:
    """Parse an integer or ``p/q`` literal into a residue mod ``d``.

    Negative literals normalize to ``d - |x|``.
    """
    token = token.strip()
    if "/" in token:
        p, q = token.split("/", 1)
        return fraction_mod(int(p), int(q), d)
    return int(token) % d


def check_modulus(d: int) -> int:
    d = int(d)
    if not 3 < d < MAX_MODULUS:
        raise ValueError(f"modulus must satisfy 3 < d < {MAX_MODULUS}, got {d}")
    if not is_prime(d):
        raise ValueError(f"modulus must be prime, got {d}")
    return d


@dataclass(frozen=True)
class PrimeField:
    """The field Z_d for a prime ``d`` with ``3 < d < 2**16``."""

    d: int

    def __post_init__(self):
        check_modulus(self.d)

    def __call__(self, value) -> FieldScalar:
        if isinstance(value, FieldScalar):
            self._same(value)
            return value
        if isinstance(value, str):
            return FieldScalar(parse_scalar(value, self.d), self)
        if isinstance(value, Fraction):
            return self.fraction(value.numerator, value.denominator)
        return FieldScalar(int(value) % self.d, self)

    def _same(self, x: FieldScalar):
        if x.field.d != self.d:
            raise ValueError(f"modulus mismatch: {x.field.d} vs {self.d}")

    def fraction(self, num: int, den: int) -> FieldScalar:
        return FieldScalar(fraction_mod(num, den, self.d), self)

    def elements(self):
        return [FieldScalar(v, self) for v in range(self.d)]

    @property
    def cube_is_bijective(self) -> bool:
        return self.d % 3 != 1


@dataclass(frozen=True)
class FieldScalar:
    """An element of Z_d. ``value`` is always reduced into ``[0, d)``."""

    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.d:
            raise ValueError(f"unreduced value {self.value} for d={self.field.d}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldScalar):
            self.field._same(other)
            return other.value
        if isinstance(other, int):
            return other % self.field.d
        return NotImplemented

    def _make(self, v: int) -> FieldScalar:
        return FieldScalar(v % self.field.d, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._make(self.value * inv_mod(o, self.field.d))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._make(o * self.inv().value)

    def __neg__(self):
        return self._make(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return self._make(pow(self.value, e, self.field.d))

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field.d == other.field.d and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.d
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.d))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.d})"

    def inv(self) -> FieldScalar:
        return self._make(inv_mod(self.value, self.field.d))

    def cube(self) -> FieldScalar:
        return self._make(self.value**3)
