"""Dirichlet and Fejer summation kernels and the 2-adic shift sequence.

The shift sequence attached to the convergent numerators p_n of pi is
x_n = ((2^(2+2v) + 1) / 2^(2+2v)) * pi * p_n with v the 2-adic valuation of
p_n.  Then 2 x_n p_n is an odd multiple of pi/2 exactly, which swaps sine and
cosine at the shifted argument (2 x_n + 1) p_n and keeps 1/sin bounded there.

Kernel closed forms: the Dirichlet sum over e^(i 2nz), |n| <= x, equals
sin((2x+1)z)/sin(z); the doubly-indexed Fejer sum equals sin((x+1)z)^2/sin(z)^2.
Some texts carry an extra 1/2 on the latter; the double sum itself does not
(at x=1, z=1 the sum is 2 + 2cos2 = 1.16771, twice the halved form), so the
unhalved expression is used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .contfrac import constant_convergents, convergents, digits_for_terms, expand
from .errors import (
    CrossCheckError,
    DomainError,
    PrecisionInsufficientError,
    SingularArgumentError,
)
from .mpreal import (
    RealContext,
    cos_int,
    cos_real,
    decimal_length,
    make_context,
    pi_const,
    pi_scaled,
    sin_int,
    sin_real,
    sincos_pi_rational_plus_int,
)


def v2(m: int) -> int:
    """2-adic valuation: the largest v with 2^v dividing m; m must be nonzero."""
    if m == 0:
        raise DomainError("v2(0) is undefined")
    return (m & -m).bit_length() - 1


@dataclass(frozen=True)
class ShiftSequenceTerm:
    """One term of the shift sequence with its verified trigonometric values."""

    index: int
    p: int
    v2: int
    x: object  # ((2^(2+2v)+1)/2^(2+2v)) * pi * p
    w: int  # (2^(2+2v)+1) * p^2 / 2^(2v), an exact odd integer
    sin_at_shift: object  # sin((2x+1) p), equals +-cos(p)
    cos_at_shift: object  # cos((2x+1) p), equals +-sin(p)
    sin_double: object  # sin(2 x p) = sin(w pi/2), +-1
    cos_double: object  # cos(2 x p), 0
    sin_residual: object  # | |sin((2x+1)p)| - |cos p| |
    cos_residual: object  # | |cos((2x+1)p)| - |sin p| |


@dataclass(frozen=True)
class KernelEval:
    x_param: object
    z: object
    closed_form: object
    sum_form: object | None  # present only for integer x
    abs_bound: object | None


@dataclass(frozen=True)
class BoundReport:
    technique: str
    rows: tuple
    summary: dict


def shift_term(p: int, ctx: RealContext, index: int = 0) -> ShiftSequenceTerm:
    """Shift-sequence term for a convergent numerator p >= 1.

    The identities |sin((2x+1)p)| = |cos p| and |cos((2x+1)p)| = |sin p| are
    asserted to working tolerance; a violation means an arithmetic bug.
    """
    if p < 1:
        raise DomainError("p must be a positive integer")
    v = v2(p)
    a = 2 + 2 * v
    odd_square = (p >> v) ** 2
    w = ((1 << a) + 1) * odd_square  # == (2^a + 1) p^2 / 2^(2v)
    mp = ctx._mp
    x = mp.mpf((1 << a) + 1) / (1 << a) * pi_const(ctx) * p
    # (2x+1) p == pi*(w/2) + p exactly; evaluate both at full reduction
    sin_shift, cos_shift = sincos_pi_rational_plus_int(w, 2, p, ctx)
    sin_double, cos_double = sincos_pi_rational_plus_int(w, 2, 0, ctx)
    sin_res = abs(abs(sin_shift) - abs(cos_int(p, ctx)))
    cos_res = abs(abs(cos_shift) - abs(sin_int(p, ctx)))
    tol = mp.mpf(10) ** (8 - ctx.decimal_digits)
    if sin_res > tol or cos_res > tol or abs(abs(sin_double) - 1) > tol or abs(cos_double) > tol:
        raise CrossCheckError(f"shift identities violated at p={p}")
    return ShiftSequenceTerm(
        index=index,
        p=p,
        v2=v,
        x=x,
        w=w,
        sin_at_shift=sin_shift,
        cos_at_shift=cos_shift,
        sin_double=sin_double,
        cos_double=cos_double,
        sin_residual=sin_res,
        cos_residual=cos_res,
    )


def _check_nonsingular(z, ctx: RealContext):
    """Reject z within 10^(-decimal_digits/2) of an integer multiple of pi."""
    mp = ctx._mp
    z = mp.mpf(z)
    if not mp.isfinite(z):
        raise DomainError("kernel argument must be finite")
    pi = pi_const(ctx)
    residue = z - pi * mp.nint(z / pi)
    if abs(residue) < mp.mpf(10) ** (-(ctx.decimal_digits // 2)):
        raise SingularArgumentError(f"z={z} is within tolerance of a multiple of pi")
    return z


def dirichlet_kernel(x, z, ctx: RealContext) -> KernelEval:
    """Dirichlet kernel at (x, z): closed form sin((2x+1)z)/sin(z).

    For integer x >= 0 the defining cosine sum is evaluated as well and must
    agree with the closed form; any real x is accepted for the closed form
    alone (the expression continues analytically in x).
    """
    mp = ctx._mp
    z = _check_nonsingular(z, ctx)
    is_integer_x = isinstance(x, int) and not isinstance(x, bool)
    if is_integer_x and x < 0:
        raise DomainError("integer kernel order must be nonnegative")
    xv = mp.mpf(x)
    closed = sin_real((2 * xv + 1) * z, ctx) / sin_real(z, ctx)
    sum_form = None
    abs_bound = None
    if is_integer_x:
        acc = mp.mpf(1)
        for n in range(1, x + 1):
            acc += 2 * cos_real(2 * n * z, ctx)
        sum_form = acc
        abs_bound = mp.mpf(2 * x + 1)
        tol = mp.mpf(10) ** (6 - ctx.decimal_digits)
        if abs(closed - sum_form) > tol * max(mp.mpf(1), abs(closed)):
            raise CrossCheckError(f"kernel sum and closed form disagree at x={x}, z={z}")
    return KernelEval(x_param=x, z=z, closed_form=closed, sum_form=sum_form, abs_bound=abs_bound)


def fejer_kernel(x: int, z, ctx: RealContext) -> KernelEval:
    """Fejer kernel at integer x >= 0: double cosine sum vs sin((x+1)z)^2/sin(z)^2."""
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise DomainError("Fejer kernel requires an integer order x >= 0")
    mp = ctx._mp
    z = _check_nonsingular(z, ctx)
    s = sin_real((x + 1) * z, ctx)
    closed = s * s / (sin_real(z, ctx) ** 2)
    # sum of Dirichlet kernels D_0 + ... + D_x, each extended by one cosine pair
    dirichlet = mp.mpf(1)
    total = mp.mpf(1)
    for n in range(1, x + 1):
        dirichlet += 2 * cos_real(2 * n * z, ctx)
        total += dirichlet
    tol = mp.mpf(10) ** (6 - ctx.decimal_digits)
    if abs(closed - total) > tol * max(mp.mpf(1), abs(closed)):
        raise CrossCheckError(f"Fejer sum and closed form disagree at x={x}, z={z}")
    return KernelEval(
        x_param=x,
        z=z,
        closed_form=closed,
        sum_form=total,
        abs_bound=mp.mpf((x + 1) ** 2),
    )


# ---------------------------------------------------------------------------
# reciprocal-sine bound reports over the convergent numerators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealTechniqueRow:
    index: int
    p: int
    v2: int
    w: int
    recip_sin: object
    ratio: object  # (1/|sin p|) / p
    sin_residual: object
    cos_residual: object


def recip_sin_bound_real_technique(n_max: int, ctx: RealContext) -> BoundReport:
    """Per-convergent ratio (1/|sin p_n|)/p_n and shift-identity residuals."""
    convs = constant_convergents("pi", n_max)
    rows = []
    max_ratio = ctx._mp.mpf(0)
    max_res = ctx._mp.mpf(0)
    for c in convs[:n_max]:
        term = shift_term(c.p, ctx, index=c.index + 1)
        recip = 1 / sin_int(c.p, ctx)
        ratio = abs(recip) / c.p
        max_ratio = max(max_ratio, ratio)
        max_res = max(max_res, term.sin_residual, term.cos_residual)
        rows.append(
            RealTechniqueRow(
                index=c.index + 1,
                p=c.p,
                v2=term.v2,
                w=term.w,
                recip_sin=recip,
                ratio=ratio,
                sin_residual=term.sin_residual,
                cos_residual=term.cos_residual,
            )
        )
    return BoundReport(
        technique="real-shift",
        rows=tuple(rows),
        summary={"max_ratio": max_ratio, "max_shift_residual": max_res},
    )


@dataclass(frozen=True)
class IntegerTechniqueRow:
    index: int
    p: int
    floor_x: int
    argument: int  # (2 floor(x) + 1) p
    abs_sin: object


def _floor_shift_parameter(p: int, ctx: RealContext) -> int:
    """floor(x_n) for x_n = ((2^a+1)/2^a) pi p, computed in exact scaled form."""
    v = v2(p)
    a = 2 + 2 * v
    red = ctx.effective_digits + decimal_length(p) + 2
    scale = 10**red
    scaled = pi_scaled(red) * (((1 << a) + 1) * p) // (1 << a)
    fraction = scaled % scale
    if fraction < 10 or scale - fraction < 10:
        raise PrecisionInsufficientError(f"floor(x) ambiguous at p={p}; raise precision")
    return scaled // scale


def recip_sin_bound_integer_technique(n_max: int, ctx: RealContext) -> BoundReport:
    """Same report with the shift parameter truncated to an integer.

    Records |sin((2 floor(x_n) + 1) p_n)| per row; the minimum over rows is
    the empirical content of the claimed lower bound.
    """
    convs = constant_convergents("pi", n_max)
    rows = []
    min_abs = None
    for c in convs[:n_max]:
        fx = _floor_shift_parameter(c.p, ctx)
        arg = (2 * fx + 1) * c.p
        val = abs(sin_int(arg, ctx))
        min_abs = val if min_abs is None else min(min_abs, val)
        rows.append(
            IntegerTechniqueRow(index=c.index + 1, p=c.p, floor_x=fx, argument=arg, abs_sin=val)
        )
    return BoundReport(
        technique="integer-shift",
        rows=tuple(rows),
        summary={"min_abs_sin": min_abs},
    )


@dataclass(frozen=True)
class CfTechniqueRow:
    index: int
    u: int
    v: int
    value: object  # alpha v^2 - u^2 + v/(2 pi)
    distance: object  # distance of value to the nearest integer
    within_bound: bool  # distance < 1/(2 pi)
    abs_sin: object  # |sin(2 pi value)|


def cf_technique_check(d: int, m_max: int, ctx: RealContext) -> BoundReport:
    """Audit of the continued-fraction shift over sqrt(alpha) = 1/(2 d^(1/4)).

    Requires d > 16 pi^4 so that 2 sqrt(alpha) <= 1/(2 pi).  For each
    convergent u_m/v_m of sqrt(alpha) the report carries
    X = alpha v_m^2 - u_m^2 + v_m/(2 pi), its distance to the nearest integer
    (the quantity that controls |sin(2 pi X)|), and the per-row flag
    distance < 1/(2 pi).  The raw X grows like v_m/(2 pi); only its distance
    to the integers is bounded, and the earliest convergents can miss even
    that bound, so the flags are reported rather than asserted.
    """
    if m_max < 1:
        raise DomainError("m_max must be positive")
    mp = ctx._mp
    threshold = 16 * pi_const(ctx) ** 4
    if mp.mpf(d) <= threshold:
        raise DomainError(f"d must exceed 16 pi^4 = {mp.nstr(threshold, 10)}; got {d}")
    work = make_context(max(ctx.decimal_digits, digits_for_terms(m_max + 3)))
    wmp = work._mp
    sqrt_alpha = 1 / (2 * wmp.sqrt(wmp.sqrt(d)))
    alpha = sqrt_alpha**2
    pq = expand(sqrt_alpha, m_max + 2, work, constant_id=f"recip-2-root4-{d}")
    convs = convergents(pq, min(m_max + 1, len(pq.terms)))
    if len(convs) < m_max + 1:
        raise PrecisionInsufficientError(f"could not certify {m_max} convergents for d={d}")
    two_pi = 2 * pi_const(work)
    inv_two_pi = 1 / two_pi
    rows = []
    ok_count = 0
    for m in range(1, m_max + 1):
        c = convs[m]  # skip the degenerate integer-part convergent 0/1
        value = alpha * c.q * c.q - c.p * c.p + c.q * inv_two_pi
        distance = abs(value - wmp.nint(value))
        within = bool(distance < inv_two_pi)
        ok_count += within
        abs_sin = abs(wmp.sin(two_pi * value))
        rows.append(
            CfTechniqueRow(
                index=m,
                u=c.p,
                v=c.q,
                value=value,
                distance=distance,
                within_bound=within,
                abs_sin=abs_sin,
            )
        )
    return BoundReport(
        technique="continued-fraction-shift",
        rows=tuple(rows),
        summary={"d": d, "rows_within_bound": ok_count, "rows_total": len(rows)},
    )
