"""Arbitrary-precision real arithmetic with exact argument reduction.

A RealContext owns a private mpmath context whose working precision is the
requested digit count plus a fixed guard margin, so every context is immutable
and safe to share across threads.  The constant pi is produced by two
independent integer-arithmetic series (a Machin arctangent evaluation and a
binary-splitting Chudnovsky evaluation) that must agree, and must match a
bundled 1000-digit reference, before a value is released.

Sines of huge integer arguments are reduced modulo pi in exact scaled-integer
arithmetic, with pi carried to twice the argument's digit length in extra
digits: near a numerator of a convergent of pi the residue m - q*pi can be as
small as ~1/q, and the result must stay relatively accurate there.
"""

from __future__ import annotations

import math
import threading
from importlib import resources

from mpmath.ctx_mp import MPContext

from .errors import CrossCheckError, DomainError, PrecisionError

MIN_DECIMAL_DIGITS = 30
DEFAULT_GUARD_DIGITS = 40

# extra scale digits carried while summing the pi series, absorbing the
# accumulated floor-division error (at most a few units per term)
_PI_SERIES_GUARD = 12


class RealContext:
    """Precision-carrying arithmetic environment.

    All results produced through a context are correct to ``decimal_digits``
    significant digits; internally every value carries ``guard_digits`` more.
    """

    __slots__ = ("decimal_digits", "guard_digits", "_mp")

    def __init__(self, decimal_digits: int, guard_digits: int = DEFAULT_GUARD_DIGITS):
        if decimal_digits < MIN_DECIMAL_DIGITS:
            raise PrecisionError(
                f"precision too low: {decimal_digits} digits requested, "
                f"minimum is {MIN_DECIMAL_DIGITS}"
            )
        if guard_digits < 1:
            raise PrecisionError("guard_digits must be positive")
        self.decimal_digits = int(decimal_digits)
        self.guard_digits = int(guard_digits)
        mp = MPContext()
        mp.dps = self.decimal_digits + self.guard_digits
        self._mp = mp

    @property
    def effective_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    def mpf(self, x):
        """Convert int/str/float/mpf to this context's working type."""
        return self._mp.mpf(x)

    def __repr__(self) -> str:
        return f"RealContext(decimal_digits={self.decimal_digits}, guard_digits={self.guard_digits})"


def make_context(decimal_digits: int, guard_digits: int = DEFAULT_GUARD_DIGITS) -> RealContext:
    """Create a context; rejects precision below the supported minimum."""
    return RealContext(decimal_digits, guard_digits)


# ---------------------------------------------------------------------------
# pi in scaled-integer form
# ---------------------------------------------------------------------------

_pi_cache: dict[int, int] = {}
_pi_lock = threading.Lock()
_pi_reference_digits: str | None = None


def _reference_pi_digits() -> str:
    """First 1000 significant digits of pi from the bundled fixture."""
    global _pi_reference_digits
    if _pi_reference_digits is None:
        text = (
            resources.files("flinthills")
            .joinpath("fixtures/pi_1000.txt")
            .read_text(encoding="ascii")
        )
        _pi_reference_digits = "".join(text.split())
    return _pi_reference_digits


def _arctan_inv_scaled(x: int, one: int) -> int:
    """arctan(1/x) * one by the alternating Gregory series, floor arithmetic."""
    term = one // x
    total = term
    x2 = x * x
    n = 3
    sign = -1
    while term:
        term //= x2
        total += sign * (term // n)
        n += 2
        sign = -sign
    return total


def _pi_machin_scaled(digits: int) -> int:
    """floor(pi * 10**digits) +- 1, via 16 arctan(1/5) - 4 arctan(1/239)."""
    one = 10 ** (digits + _PI_SERIES_GUARD)
    val = 16 * _arctan_inv_scaled(5, one) - 4 * _arctan_inv_scaled(239, one)
    return val // 10**_PI_SERIES_GUARD


def _chudnovsky_split(a: int, b: int) -> tuple[int, int, int]:
    if b - a == 1:
        if a == 0:
            return 1, 1, 13591409
        pa = (6 * a - 5) * (2 * a - 1) * (6 * a - 1)
        qa = a * a * a * 10939058860032000
        ta = pa * (13591409 + 545140134 * a)
        return pa, qa, -ta if a & 1 else ta
    m = (a + b) // 2
    p1, q1, t1 = _chudnovsky_split(a, m)
    p2, q2, t2 = _chudnovsky_split(m, b)
    return p1 * p2, q1 * q2, q2 * t1 + p1 * t2


def _pi_chudnovsky_scaled(digits: int) -> int:
    """floor(pi * 10**digits) +- 1, via binary-splitting Chudnovsky."""
    prec = digits + _PI_SERIES_GUARD
    terms = prec // 14 + 2
    _, q, t = _chudnovsky_split(0, terms)
    scale = 10**prec
    sqrt_10005 = math.isqrt(10005 * scale * scale)
    val = q * 426880 * sqrt_10005 // t
    return val // 10**_PI_SERIES_GUARD


def _int_prefix(value: int, value_digits: int, k: int) -> int:
    """First k decimal digits of a value known to have value_digits digits."""
    return value // 10 ** (value_digits - k)


def pi_scaled(digits: int) -> int:
    """floor(pi * 10**digits) to within one unit, cross-checked and cached.

    Two independent series must agree and the leading digits must match the
    bundled reference before the value is released.
    """
    if digits < 1:
        raise DomainError("scale must be positive")
    with _pi_lock:
        if digits in _pi_cache:
            return _pi_cache[digits]
        for have, val in _pi_cache.items():
            if have > digits:
                derived = val // 10 ** (have - digits)
                _pi_cache[digits] = derived
                return derived
        a = _pi_machin_scaled(digits)
        b = _pi_chudnovsky_scaled(digits)
        if abs(a - b) > 2:
            raise CrossCheckError(
                f"pi series disagree at {digits} digits (delta={a - b})"
            )
        ref = _reference_pi_digits()
        # value has digits+1 decimal digits ("3" + digits); drop the last,
        # possibly off-by-one, digit from the comparison
        k = min(digits, len(ref) - 1)
        if _int_prefix(a, digits + 1, k) != int(ref[:k]):
            raise CrossCheckError(
                f"pi computation does not match the bundled reference at {digits} digits"
            )
        _pi_cache[digits] = a
        return a


def pi_const(ctx: RealContext):
    """pi correct to the context precision."""
    eff = ctx.effective_digits
    scaled = pi_scaled(eff)
    mp = ctx._mp
    return mp.mpf(scaled) / mp.mpf(10) ** eff


# ---------------------------------------------------------------------------
# exact scaling helpers
# ---------------------------------------------------------------------------


def to_scaled(x, digits: int) -> int:
    """floor(x * 10**digits) computed exactly from the binary mantissa; x >= 0."""
    sign, man, exp, _ = x._mpf_
    man = int(man)
    if man == 0:
        # a zero mantissa with nonzero exponent marks inf/nan
        if exp != 0:
            raise DomainError("to_scaled requires a finite value")
        return 0
    if sign:
        raise DomainError("to_scaled requires a nonnegative value")
    n = man * 10**digits
    return n << exp if exp >= 0 else n >> (-exp)


def decimal_length(n: int) -> int:
    """Decimal digit count of |n|, within one above the exact count, never below."""
    if n == 0:
        return 1
    bits = abs(n).bit_length()
    est = bits * 30103 // 100000  # floor(bits * log10(2))
    return est + 1


def _reduce_nearest(t: int, p: int) -> tuple[int, int]:
    """Split t = q*p + r with r in (-p/2, p/2], q the nearest multiple."""
    q, r = divmod(t, p)
    if 2 * r > p:
        q += 1
        r -= p
    return q, r


# ---------------------------------------------------------------------------
# trigonometric operations
# ---------------------------------------------------------------------------


def _check_finite(ctx: RealContext, value):
    if not ctx._mp.isfinite(value):
        raise DomainError("operation produced a non-finite value")
    return value


def _sincos_from_scaled(m: int, scale_digits: int, ctx: RealContext):
    """(sin, cos) of m/10**scale_digits reduced modulo pi at that scale."""
    s = 10**scale_digits
    p = pi_scaled(scale_digits)
    q, r = _reduce_nearest(m, p)
    mp = ctx._mp
    x = mp.mpf(r) / mp.mpf(s)
    sv, cv = mp.sin(x), mp.cos(x)
    if q & 1:
        sv, cv = -sv, -cv
    return sv, cv


def sin_int(m: int, ctx: RealContext):
    """sin(m) for an exact integer m of any magnitude.

    Reduces m modulo pi with pi carried to twice the digit length of m in
    extra digits: the first length absorbs the size of m itself, the second
    keeps the result relatively accurate even when the residue m - q pi is as
    small as ~1/m (the convergent-numerator worst case).
    """
    if m == 0:
        return ctx._mp.mpf(0)
    red = ctx.effective_digits + 2 * decimal_length(m)
    sv, _ = _sincos_from_scaled(m * 10**red, red, ctx)
    return _check_finite(ctx, sv)


def cos_int(m: int, ctx: RealContext):
    """cos(m) for an exact integer m, by the same reduction as sin_int."""
    if m == 0:
        return ctx._mp.mpf(1)
    red = ctx.effective_digits + 2 * decimal_length(m)
    _, cv = _sincos_from_scaled(m * 10**red, red, ctx)
    return _check_finite(ctx, cv)


def sincos_pi_rational_plus_int(num: int, den: int, m: int, ctx: RealContext):
    """(sin, cos) of pi*num/den + m, evaluated by exact scaled reduction.

    Used for shifted kernel arguments of the form (pi/2)*w + p, whose integer
    parts are far larger than any working precision but exactly known.
    """
    if den <= 0:
        raise DomainError("denominator must be positive")
    red = ctx.effective_digits + 2 * decimal_length(abs(num) // den + abs(m) + 1) + 2
    s = 10**red
    p = pi_scaled(red)
    t = (p * num) // den + m * s
    q, r = _reduce_nearest(t, p)
    mp = ctx._mp
    x = mp.mpf(r) / mp.mpf(s)
    sv, cv = mp.sin(x), mp.cos(x)
    if q & 1:
        sv, cv = -sv, -cv
    return sv, cv


def sin_real(x, ctx: RealContext):
    """sin(x) for a finite real, correctly reduced at working precision."""
    mp = ctx._mp
    x = mp.mpf(x)
    if not mp.isfinite(x):
        raise DomainError("sin_real requires a finite argument")
    return _check_finite(ctx, mp.sin(x))


def cos_real(x, ctx: RealContext):
    """cos(x) for a finite real."""
    mp = ctx._mp
    x = mp.mpf(x)
    if not mp.isfinite(x):
        raise DomainError("cos_real requires a finite argument")
    return _check_finite(ctx, mp.cos(x))


def ln_real(x, ctx: RealContext):
    """Natural logarithm; domain error for x <= 0."""
    mp = ctx._mp
    x = mp.mpf(x)
    if not mp.isfinite(x) or x <= 0:
        raise DomainError(f"ln_real requires x > 0, got {x}")
    return _check_finite(ctx, mp.ln(x))
