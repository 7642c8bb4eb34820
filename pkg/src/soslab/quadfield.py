"""Exact arithmetic in the ring of integers of a real quadratic field.

For squarefree D >= 2 the ring of integers of Q(sqrt(D)) is Z[w] with

    w = sqrt(D)           when D = 2, 3 (mod 4),
    w = (1 + sqrt(D))/2   when D = 1 (mod 4).

Elements are stored as integer coordinate pairs (u, v) meaning u + v*w.
Every question about the two real embeddings (signs, total positivity,
comparisons against sqrt(D)) is answered by integer sign tests; no
floating point is used anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import ContextMismatch, NotSquarefree, TooSmall

Rational = Union[int, Fraction]


class OmegaKind(enum.Enum):
    """Shape of the integral basis generator w."""

    SQRT_D = "sqrt_d"
    HALF_ONE_PLUS_SQRT_D = "half_one_plus_sqrt_d"


class DyadicClass(enum.Enum):
    """Splitting behaviour of the rational prime 2 in the ring."""

    RAMIFIED = "ramified"  # D = 2, 3 (mod 4): 2*O = p^2
    SPLIT = "split"  # D = 1 (mod 8)
    INERT = "inert"  # D = 5 (mod 8)


def _sign(x: Rational) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class RingContext:
    """Validated container for everything derived from a squarefree D >= 2.

    Construction performs the squarefreeness check by trial division up to
    isqrt(D), so holding a context is proof the parameters are coherent.
    """

    D: int
    d_mod4: int = field(init=False)
    kappa: int = field(init=False)
    omega_kind: OmegaKind = field(init=False)
    isqrt_d: int = field(init=False)
    floor_omega: int = field(init=False)
    dyadic: DyadicClass = field(init=False)

    def __post_init__(self) -> None:
        d = self.D
        if not isinstance(d, int) or d < 2:
            raise TooSmall(f"D must be an integer >= 2, got {d!r}")
        for p in range(2, isqrt(d) + 1):
            if d % (p * p) == 0:
                raise NotSquarefree(d, p)
        mod4 = d % 4
        object.__setattr__(self, "d_mod4", mod4)
        object.__setattr__(self, "kappa", 1 if mod4 == 1 else 2)
        object.__setattr__(
            self,
            "omega_kind",
            OmegaKind.HALF_ONE_PLUS_SQRT_D if mod4 == 1 else OmegaKind.SQRT_D,
        )
        root = isqrt(d)
        object.__setattr__(self, "isqrt_d", root)
        object.__setattr__(
            self, "floor_omega", (1 + root) // 2 if mod4 == 1 else root
        )
        if mod4 != 1:
            dyadic = DyadicClass.RAMIFIED
        elif d % 8 == 1:
            dyadic = DyadicClass.SPLIT
        else:
            dyadic = DyadicClass.INERT
        object.__setattr__(self, "dyadic", dyadic)

    # -- element constructors ------------------------------------------------

    def element(self, u: int, v: int = 0) -> QuadInt:
        return QuadInt(self, u, v)

    def from_int(self, n: int) -> QuadInt:
        return QuadInt(self, n, 0)

    def from_sqrt_pair(self, a: int, b: int) -> QuadInt:
        """Element a + b*sqrt(D) with integer a, b."""
        if self.kappa == 1:
            return QuadInt(self, a - b, 2 * b)
        return QuadInt(self, a, b)

    def from_half_pair(self, big_a: int, big_b: int) -> QuadInt:
        """Element (A + B*sqrt(D))/2 from doubled coordinates (A, B).

        The pair must satisfy the integrality rule of the ring: A = B (mod 2)
        when D = 1 (mod 4), both even otherwise.
        """
        if self.kappa == 1:
            if (big_a - big_b) % 2:
                raise ValueError(
                    f"({big_a}+{big_b}*sqrt{self.D})/2 is not integral: "
                    "coordinates differ mod 2"
                )
            return QuadInt(self, (big_a - big_b) // 2, big_b)
        if big_a % 2 or big_b % 2:
            raise ValueError(
                f"({big_a}+{big_b}*sqrt{self.D})/2 is not integral for "
                f"D={self.D}: coordinates must be even"
            )
        return QuadInt(self, big_a // 2, big_b // 2)

    # -- distinguished elements ----------------------------------------------

    @property
    def zero(self) -> QuadInt:
        return QuadInt(self, 0, 0)

    @property
    def one(self) -> QuadInt:
        return QuadInt(self, 1, 0)

    @property
    def omega(self) -> QuadInt:
        return QuadInt(self, 0, 1)

    @property
    def sqrt_d(self) -> QuadInt:
        """sqrt(D) as a ring element (equals 2w - 1 when D = 1 mod 4)."""
        if self.kappa == 1:
            return QuadInt(self, -1, 2)
        return QuadInt(self, 0, 1)

    def __repr__(self) -> str:
        return f"RingContext(D={self.D})"


def real_sign(ctx: RingContext, p: Rational, q: Rational) -> int:
    """Exact sign of p + q*sqrt(D) for rational p, q.

    Resolved by case analysis on the signs of p and q plus one comparison
    of p^2 against q^2*D; since D is squarefree (hence never a rational
    square) the value is zero only for p = q = 0.
    """
    if q == 0:
        return _sign(p)
    if p == 0:
        return _sign(q)
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    t = _sign(p * p - q * q * ctx.D)
    return t if p > 0 else -t


@dataclass(frozen=True, slots=True)
class QuadInt:
    """Immutable element u + v*w of the ring of integers of Q(sqrt(D))."""

    ctx: RingContext
    u: int
    v: int

    # -- coordinate views ----------------------------------------------------

    @property
    def half_coords(self) -> tuple[int, int]:
        """Doubled sqrt-basis coordinates (A, B) with self = (A + B*sqrt(D))/2.

        Always integral, for both shapes of w; most sign work happens here.
        """
        if self.ctx.kappa == 1:
            return 2 * self.u + self.v, self.v
        return 2 * self.u, 2 * self.v

    @property
    def trace(self) -> int:
        return self.half_coords[0]

    @property
    def norm(self) -> int:
        if self.ctx.kappa == 1:
            return self.u * self.u + self.u * self.v - self.v * self.v * (
                (self.ctx.D - 1) // 4
            )
        return self.u * self.u - self.ctx.D * self.v * self.v

    def conjugate(self) -> QuadInt:
        """Image under the nontrivial field automorphism sqrt(D) -> -sqrt(D)."""
        if self.ctx.kappa == 1:
            return QuadInt(self.ctx, self.u + self.v, -self.v)
        return QuadInt(self.ctx, self.u, -self.v)

    # -- embeddings ----------------------------------------------------------

    def sign_embedding(self, second: bool = False) -> int:
        big_a, big_b = self.half_coords
        return real_sign(self.ctx, big_a, -big_b if second else big_b)

    def is_totally_positive(self) -> bool:
        big_a, big_b = self.half_coords
        return (
            real_sign(self.ctx, big_a, big_b) > 0
            and real_sign(self.ctx, big_a, -big_b) > 0
        )

    def is_totally_nonnegative(self) -> bool:
        big_a, big_b = self.half_coords
        return (
            real_sign(self.ctx, big_a, big_b) >= 0
            and real_sign(self.ctx, big_a, -big_b) >= 0
        )

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other: QuadInt | int) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(self.ctx, other, 0)
        if isinstance(other, QuadInt):
            if other.ctx != self.ctx:
                raise ContextMismatch(
                    f"mixing D={self.ctx.D} and D={other.ctx.D} elements"
                )
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: QuadInt | int) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadInt(self.ctx, self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other: QuadInt | int) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadInt(self.ctx, self.u - other.u, self.v - other.v)

    def __rsub__(self, other: QuadInt | int) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> QuadInt:
        return QuadInt(self.ctx, -self.u, -self.v)

    def __mul__(self, other: QuadInt | int) -> QuadInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        if self.ctx.kappa == 1:
            # w^2 = (D-1)/4 + w
            c = (self.ctx.D - 1) // 4
            return QuadInt(self.ctx, u1 * u2 + c * v1 * v2, u1 * v2 + v1 * u2 + v1 * v2)
        return QuadInt(self.ctx, u1 * u2 + self.ctx.D * v1 * v2, u1 * v2 + v1 * u2)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadInt:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are defined")
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def square(self) -> QuadInt:
        return self * self

    def __bool__(self) -> bool:
        return bool(self.u or self.v)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.v == 0 and self.u == other
        if isinstance(other, QuadInt):
            return self.ctx == other.ctx and self.u == other.u and self.v == other.v
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.D, self.u, self.v))

    # -- canonical presentation ----------------------------------------------

    def canonical(self) -> QuadInt:
        """The sign representative with a > 0, or a = 0 and b > 0 (0 maps to 0)."""
        big_a, big_b = self.half_coords
        if big_a > 0 or (big_a == 0 and big_b > 0):
            return self
        return -self

    def __str__(self) -> str:
        unit = "w" if self.ctx.kappa == 1 else f"sqrt{self.ctx.D}"
        if self.v == 0:
            return str(self.u)
        coeff = "" if abs(self.v) == 1 else str(abs(self.v))
        tail = f"{coeff}{unit}"
        if self.u == 0:
            return tail if self.v > 0 else f"-{tail}"
        op = "+" if self.v > 0 else "-"
        return f"{self.u}{op}{tail}"

    def __repr__(self) -> str:
        return f"QuadInt(D={self.ctx.D}, u={self.u}, v={self.v})"
