"""Closed-form representability criteria and explicit witness elements.

Peters' five-square criterion reduces "is alpha a sum of five squares" to
the existence of an integer in an explicit interval with radical
endpoints.  For D = 1 (mod 4) the criterion is an equivalence; for
D = 2, 3 (mod 4) the stated direction is sufficiency (interval hit implies
five squares), and it only speaks to elements whose sqrt(D)-coefficient is
even -- an odd coefficient already fails the mod-2*O square test, so such
elements are not sums of squares at all.

Interval membership is decided exactly: "n is in [(c - sqrt(R))/s,
(c + sqrt(R))/s]" is the integer inequality (s*n - c)^2 <= R.

The witness constructions pick concrete elements that certify negative
results: the doubling witness k + sqrt(D) (minimal k making it totally
positive) whose double is a sum of squares only for D in {2, 3, 5}; odd
multiples of it that stay obstructed mod 2*O when 2 ramifies; and a
totally positive element of valuation exactly 1 at the ramified prime,
which obstructs sums of squares in S-integer rings with odd denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import NotOdd, NotRamified, NotTotallyPositive
from .quadfield import DyadicClass, QuadInt, RingContext
from .residues import ValuationClass, dyadic_valuation_class, is_square_mod_two


@dataclass(frozen=True)
class PetersInterval:
    """Exact record of one interval test.

    The admissible integers are the n with (scale*n - center)^2 <= radicand
    (and the required parity, when the ring imposes one); the real interval
    [(center - sqrt(radicand))/scale, (center + sqrt(radicand))/scale] is
    recoverable from the fields, closed endpoints included.
    """

    scale: int
    center: int
    radicand: int
    parity_required: int | None
    admissible_n: tuple[int, ...]

    def contains(self, n: int) -> bool:
        if self.parity_required is not None and n % 2 != self.parity_required:
            return False
        t = self.scale * n - self.center
        return t * t <= self.radicand

    @property
    def lo(self) -> float:
        return (self.center - self.radicand**0.5) / self.scale

    @property
    def hi(self) -> float:
        return (self.center + self.radicand**0.5) / self.scale


def _admissible(scale: int, center: int, radicand: int, parity: int | None) -> tuple[int, ...]:
    root = isqrt(radicand)
    lo = (center - root) // scale - 1
    hi = (center + root) // scale + 1
    out = []
    for n in range(lo, hi + 1):
        t = scale * n - center
        if t * t <= radicand and (parity is None or n % 2 == parity):
            out.append(n)
    return tuple(out)


def peters_interval(alpha: QuadInt) -> PetersInterval | None:
    """The interval whose integer points certify "sum of five squares".

    Returns None for the inapplicable case (D = 2, 3 mod 4 with odd
    sqrt(D)-coefficient), where alpha is not a sum of squares anyway.
    Requires alpha totally positive.
    """
    if not alpha.is_totally_positive():
        raise NotTotallyPositive(f"{alpha} is not totally positive")
    ctx = alpha.ctx
    if ctx.kappa == 1:
        # alpha = a0 + a1*w: integer n with n = a1 (mod 2) in
        # [(2*a0 + a1 - 2*sqrt(N))/D, (2*a0 + a1 + 2*sqrt(N))/D].
        scale, center = ctx.D, alpha.trace
        radicand = 4 * alpha.norm
        parity = alpha.v % 2
    else:
        if alpha.v % 2:
            return None
        # alpha = a0 + 2*a1*sqrt(D): integer n in
        # [(a0 - sqrt(N))/(2D), (a0 + sqrt(N))/(2D)].
        scale, center = 2 * ctx.D, alpha.u
        radicand = alpha.norm
        parity = None
    return PetersInterval(
        scale, center, radicand, parity, _admissible(scale, center, radicand, parity)
    )


def peters_five_squares(alpha: QuadInt) -> bool:
    """Interval test for "alpha is a sum of five squares in O"."""
    interval = peters_interval(alpha)
    return interval is not None and bool(interval.admissible_n)


def doubling_witness(ctx: RingContext) -> QuadInt:
    """The smallest totally positive k + sqrt(D) (resp. k + w), k integer.

    Doubling this element produces the critical test case for whether all
    of 2*O+ consists of sums of squares; that holds only for D in {2,3,5}.
    """
    if ctx.kappa == 1:
        return ctx.element(ctx.floor_omega, 1)
    return ctx.element(ctx.isqrt_d + 1, 1)


def ramified_obstruction_witness(ctx: RingContext) -> QuadInt:
    """A totally positive element of valuation exactly 1 at the prime over 2.

    Built as sqrt(D) (even D) or 1 + sqrt(D) (odd D) plus the least even
    rational integer making it totally positive.  Such an element is not a
    square mod 2*O, which blocks sums of squares even after inverting any
    odd modulus.
    """
    if ctx.dyadic is not DyadicClass.RAMIFIED:
        raise NotRamified(f"2 does not ramify for D={ctx.D}")
    base = ctx.sqrt_d if ctx.D % 2 == 0 else ctx.one + ctx.sqrt_d
    shift = 0
    while not (base + shift).is_totally_positive():
        shift += 2
    witness = base + shift
    assert dyadic_valuation_class(witness) is ValuationClass.IN_P_NOT_P2
    assert not is_square_mod_two(witness)
    return witness


def small_multiplier_obstructed(ctx: RingContext, m: int) -> bool:
    """Whether 16*m^2 < kappa^2*D, the regime where m*(doubling witness)
    is provably not a sum of squares (so m*O+ is not contained in them)."""
    if m < 1:
        raise ValueError(f"multiplier must be >= 1, got {m}")
    return 16 * m * m < ctx.kappa * ctx.kappa * ctx.D


def large_multiplier_guaranteed(ctx: RingContext, m: int) -> bool:
    """Whether 2*m >= D, the regime where every element of kappa*m*O+ is a
    sum of five squares (the interval test always hits)."""
    if m < 1:
        raise ValueError(f"multiplier must be >= 1, got {m}")
    return 2 * m >= ctx.D


def odd_multiple_witness(ctx: RingContext, m: int) -> QuadInt:
    """m times the doubling witness, for odd m in a ramified ring.

    The product keeps an odd sqrt(D)-coefficient, hence is not a square
    mod 2*O and not a sum of squares -- for every odd m, however large.
    """
    if ctx.dyadic is not DyadicClass.RAMIFIED:
        raise NotRamified(f"2 does not ramify for D={ctx.D}")
    if m % 2 == 0:
        raise NotOdd(f"multiplier must be odd, got {m}")
    if m < 1:
        raise ValueError(f"multiplier must be >= 1, got {m}")
    witness = doubling_witness(ctx) * m
    assert not is_square_mod_two(witness)
    return witness
