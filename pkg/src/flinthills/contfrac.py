"""Continued-fraction expansion with certified terms, and the convergent recurrence.

The expansion runs interval arithmetic on [x - eps, x + eps] in exact integers
(eps spanning the scaled value's last working digit) and emits a partial
quotient only while both endpoints agree on it, so no garbage terms appear
near precision exhaustion.  Convergents are exact big integers from the
standard three-term recurrence, verifiable against bundled OEIS b-files.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CrossCheckError, DomainError, FixtureFormatError, InsufficientTermsError
from .mpreal import RealContext, make_context, pi_const, to_scaled

# Lochs-type budget: one decimal digit certifies ~0.97 partial quotients of a
# typical irrational, so 1.03 digits per requested term plus a flat margin
DIGITS_PER_TERM = 1.03
DIGITS_MARGIN = 50

KNOWN_CONSTANTS = ("pi", "sqrt2", "sqrt3", "sqrt5", "golden", "cbrt2")


@dataclass(frozen=True)
class PartialQuotients:
    """Validated partial quotients a_0, a_1, ... of one constant.

    ``terms[0]`` is the integer part.  ``exhausted`` is set when the working
    precision ran out before the requested number of terms; the terms that
    were emitted are still certified correct.
    """

    constant_id: str
    terms: tuple[int, ...]
    source_precision: int
    exhausted: bool = False

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class Convergent:
    """Exact convergent p/q; ``index`` counts quotients folded in, 0-based.

    The published tables number their rows from 1 at (3, 1); that row number
    is ``index + 1``.
    """

    index: int
    p: int
    q: int


@dataclass(frozen=True)
class VerificationReport:
    """Per-index comparison of a computed sequence against a fixture."""

    fixture_path: str
    compared: int
    mismatches: tuple[tuple[int, int, int], ...]  # (fixture index, expected, got)

    @property
    def passed(self) -> bool:
        return self.compared > 0 and not self.mismatches


def digits_for_terms(terms: int) -> int:
    """Decimal digits needed to certify about ``terms`` partial quotients."""
    if terms < 1:
        raise DomainError("term count must be positive")
    return math.ceil(terms * DIGITS_PER_TERM) + DIGITS_MARGIN


def constant_value(constant_id: str, ctx: RealContext):
    """Value of a named constant at context precision."""
    mp = ctx._mp
    if constant_id == "pi":
        return pi_const(ctx)
    if constant_id == "sqrt2":
        return mp.sqrt(2)
    if constant_id == "sqrt3":
        return mp.sqrt(3)
    if constant_id == "sqrt5":
        return mp.sqrt(5)
    if constant_id == "golden":
        return (1 + mp.sqrt(5)) / 2
    if constant_id == "cbrt2":
        return mp.cbrt(2)
    raise DomainError(f"unknown constant {constant_id!r}; known: {', '.join(KNOWN_CONSTANTS)}")


def expand(x, max_terms: int, ctx: RealContext, constant_id: str = "x") -> PartialQuotients:
    """Certified partial quotients of a positive real x.

    Emits at most ``max_terms`` quotients; stops early (with the ``exhausted``
    flag) once the uncertainty interval around x no longer pins down the next
    quotient.  Rational inputs cannot be told apart from nearby irrationals at
    finite precision, so they also end exhausted rather than terminated.
    """
    if max_terms < 1:
        raise DomainError("max_terms must be positive")
    scale_digits = ctx.effective_digits
    scale = 10**scale_digits
    scaled = to_scaled(x, scale_digits)
    # interval half-width: one unit in the last working digit of x, which for
    # |x| > 1 is up to ~|x| units at this scale, plus slack for the rounding
    # of the scaling itself
    eps = to_scaled(x, 0) + 3
    lo_n, lo_d = scaled - eps, scale
    hi_n, hi_d = scaled + eps, scale
    if lo_n < 0:
        raise DomainError("expand requires x > 0 resolved away from zero")
    terms: list[int] = []
    exhausted = True
    while len(terms) < max_terms:
        if lo_d <= 0 or hi_d <= 0:
            break
        a_lo = lo_n // lo_d
        a_hi = hi_n // hi_d
        if a_lo != a_hi:
            break
        a = int(a_lo)
        if terms and a < 1:
            raise CrossCheckError("non-positive partial quotient past a_0")
        terms.append(a)
        # x -> 1/(x - a) maps [lo, hi] to [1/(hi - a), 1/(lo - a)]
        lo_n, lo_d, hi_n, hi_d = hi_d, hi_n - a * hi_d, lo_d, lo_n - a * lo_d
    else:
        exhausted = False
    return PartialQuotients(
        constant_id=constant_id,
        terms=tuple(terms),
        source_precision=scale_digits,
        exhausted=exhausted,
    )


def expand_constant(constant_id: str, max_terms: int, digits: int | None = None) -> PartialQuotients:
    """Expand a named constant, auto-sizing precision for the term count."""
    if digits is None:
        digits = digits_for_terms(max_terms)
    ctx = make_context(max(digits, 30))
    return expand(constant_value(constant_id, ctx), max_terms, ctx, constant_id=constant_id)


_expansion_memo: dict[str, PartialQuotients] = {}
_expansion_lock = threading.Lock()


def cached_expansion(constant_id: str, min_terms: int) -> PartialQuotients:
    """Memoized expansion of a named constant with at least ``min_terms`` terms."""
    with _expansion_lock:
        have = _expansion_memo.get(constant_id)
        if have is not None and len(have.terms) >= min_terms:
            return have
        pq = expand_constant(constant_id, min_terms)
        if len(pq.terms) < min_terms:
            # Lochs budget fell short (atypical quotients); retry with slack
            pq = expand_constant(constant_id, min_terms, digits=digits_for_terms(min_terms) + 64)
        if len(pq.terms) < min_terms:
            raise InsufficientTermsError(
                f"could not certify {min_terms} terms of {constant_id}; got {len(pq.terms)}"
            )
        _expansion_memo[constant_id] = pq
        return pq


def convergents(pq: PartialQuotients, count: int) -> list[Convergent]:
    """First ``count`` exact convergents by the standard recurrence."""
    if count < 1:
        raise DomainError("count must be positive")
    if count > len(pq.terms):
        raise InsufficientTermsError(
            f"{count} convergents requested but only {len(pq.terms)} terms available"
        )
    out: list[Convergent] = []
    p_prev, p_prev2 = 1, 0
    q_prev, q_prev2 = 0, 1
    for k, a in enumerate(pq.terms[:count]):
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        if math.gcd(p, q) != 1:
            raise CrossCheckError(f"convergent {k} not in lowest terms")
        out.append(Convergent(index=k, p=p, q=q))
        p_prev2, p_prev = p_prev, p
        q_prev2, q_prev = q_prev, q
    return out


def constant_convergents(constant_id: str, count: int) -> list[Convergent]:
    """Convergents of a named constant, precision auto-sized and memoized."""
    return convergents(cached_expansion(constant_id, count), count)


def reconstruct(pq: PartialQuotients) -> Fraction:
    """Fold the quotients back into the finite fraction they define."""
    if not pq.terms:
        raise DomainError("no terms to reconstruct")
    acc = Fraction(pq.terms[-1])
    for a in reversed(pq.terms[:-1]):
        acc = a + 1 / acc
    return acc


# ---------------------------------------------------------------------------
# fixture verification (OEIS b-file format)
# ---------------------------------------------------------------------------


def parse_bfile(fixture_path) -> dict[int, int]:
    """Parse an OEIS b-file: lines of "index value", '#' comments ignored."""
    entries: dict[int, int] = {}
    text = Path(fixture_path).read_text(encoding="ascii")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FixtureFormatError(f"{fixture_path}:{lineno}: expected 'index value', got {raw!r}")
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FixtureFormatError(f"{fixture_path}:{lineno}: non-integer field: {raw!r}") from exc
        entries[idx] = val
    if not entries:
        raise FixtureFormatError(f"{fixture_path}: no data lines")
    return entries


def verify_fixture(seq, fixture_path, index_offset: int = 0) -> VerificationReport:
    """Compare a computed integer sequence against a b-file fixture.

    ``seq[i]`` is matched against fixture index ``i + index_offset``; indices
    present on only one side are skipped.  Passes iff every overlapping index
    matches.
    """
    fixture = parse_bfile(fixture_path)
    compared = 0
    mismatches: list[tuple[int, int, int]] = []
    for i, got in enumerate(seq):
        fi = i + index_offset
        if fi not in fixture:
            continue
        compared += 1
        expected = fixture[fi]
        if expected != int(got):
            mismatches.append((fi, expected, int(got)))
    return VerificationReport(
        fixture_path=str(fixture_path),
        compared=compared,
        mismatches=tuple(mismatches),
    )
