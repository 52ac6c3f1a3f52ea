"""Weighted hypergeometric-term series.

A PochhammerRatioSeries describes terms

    u_n = prod_i (a_i)_n / (prod_j (b_j)_n * (n!)**p) * (r*x)**n

summed against a weight sequence w_n (harmonic numbers and relatives).
Terms advance by one multiply-divide recurrence per index; weights are
updated incrementally with compensated accumulation so that a million
steps stay within a couple of ulps of direct evaluation.

Inside the unit circle the engine sums directly with a geometric tail
bound. On the circle (|r*x| = 1) the terms decay only algebraically, so
partial sums are retained at geometrically spaced checkpoints and fed to
Wynn's epsilon algorithm; convergence is claimed only after two
consecutive, decreasing extrapolation moves both land inside the
tolerance. All claimed tail bounds satisfy
tail_bound <= tol * max(1, |value|).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AccelerationBreakdown,
    DomainError,
    NonConvergentError,
    PoleError,
)
from .specialfn import _pole_index, harmonic, generalized_harmonic, pochhammer

__all__ = [
    "PochhammerRatioSeries",
    "SeriesResult",
    "Unit",
    "Harmonic",
    "HarmonicSqPlusGen2",
    "ReciprocalShift",
    "DigammaDiffSum",
    "LinearCombo",
    "weight_value",
    "eval_weighted",
    "eval_hyper",
    "hyp2f1",
    "wynn_epsilon",
    "finite_difference",
]

DEFAULT_MAX_TERMS = 200000
DEFAULT_TOL_INSIDE = 1e-10   # |r*x| <= 0.96
DEFAULT_TOL_UNIT = 1e-6      # on / near the unit circle
_UNIT_BAND = 1e-12           # |r*x| within this of 1 counts as unit argument
_RATIO_TRUST = 0.99          # empirical ratio below this is always trusted
_RATIO_HARD_CAP = 0.99995    # never trust a geometric bound beyond this
_EPS_GUARD = 1e-300          # epsilon-table difference underflow guard
_WYNN_MAX_DEPTH = 20


# ---------------------------------------------------------------------------
# series specification


@dataclass(frozen=True)
class PochhammerRatioSeries:
    """Term family u_n = prod (a_i)_n / (prod (b_j)_n (n!)**p) * r**n.

    factorial_power p >= 0, start_index in {0, 1}. Denominator shifts may
    not sit within 1e-12 of a non-positive integer (the recurrence would
    divide by zero); numerator shifts at non-positive integers are legal
    and terminate the series.
    """

    numerator_shifts: tuple
    denominator_shifts: tuple
    factorial_power: int = 1
    geometric_ratio: complex = 1.0
    start_index: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "numerator_shifts",
            tuple(complex(a) for a in self.numerator_shifts))
        object.__setattr__(
            self, "denominator_shifts",
            tuple(complex(b) for b in self.denominator_shifts))
        object.__setattr__(self, "geometric_ratio", complex(self.geometric_ratio))
        if self.factorial_power != int(self.factorial_power) or self.factorial_power < 0:
            raise DomainError(f"factorial_power must be a non-negative integer, "
                              f"got {self.factorial_power!r}")
        object.__setattr__(self, "factorial_power", int(self.factorial_power))
        if self.start_index not in (0, 1):
            raise DomainError(f"start_index must be 0 or 1, got {self.start_index!r}")
        for b in self.denominator_shifts:
            if _pole_index(b) is not None:
                raise PoleError(f"denominator shift {b} hits a non-positive integer")

    def effective_exponent(self) -> float:
        """Algebraic growth exponent of u_n at |r*x| = 1: u_n ~ n**sigma."""
        s = sum(a.real for a in self.numerator_shifts)
        s -= sum(b.real for b in self.denominator_shifts)
        return s - self.factorial_power

    def term(self, n: int, x: complex = 1.0) -> complex:
        """Direct (non-recurrent) term value, for cross-checks."""
        if n < self.start_index:
            raise DomainError(f"term index {n} below start_index {self.start_index}")
        t = (self.geometric_ratio * complex(x)) ** n
        for a in self.numerator_shifts:
            t *= pochhammer(a, n)
        for b in self.denominator_shifts:
            t /= pochhammer(b, n)
        t /= pochhammer(1.0, n) ** self.factorial_power
        return t


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_bound: float
    converged: bool
    method: str  # "direct" or "wynn_epsilon"


# ---------------------------------------------------------------------------
# weights


class WeightKind:
    """Marker base class for weight families."""
    __slots__ = ()


@dataclass(frozen=True)
class Unit(WeightKind):
    """w_n = 1."""


@dataclass(frozen=True)
class Harmonic(WeightKind):
    """w_n = H_{stride*n + offset}, stride in {1,2,3}, offset in {-1,0}."""

    stride: int = 1
    offset: int = 0

    def __post_init__(self):
        if self.stride not in (1, 2, 3):
            raise DomainError(f"harmonic stride must be 1, 2 or 3, got {self.stride!r}")
        if self.offset not in (-1, 0):
            raise DomainError(f"harmonic offset must be -1 or 0, got {self.offset!r}")


@dataclass(frozen=True)
class HarmonicSqPlusGen2(WeightKind):
    """w_n = H_n**2 + H_n^(2)."""


@dataclass(frozen=True)
class ReciprocalShift(WeightKind):
    """w_n = inner_n / (n + 1)."""

    inner: WeightKind = Unit()


@dataclass(frozen=True)
class DigammaDiffSum(WeightKind):
    """w_n = sum_{k=0}^{n-1} (2/(2b+k) - 1/(a+b+1/2+k)).

    Telescopes to psi differences; the parameters must keep every shifted
    argument away from non-positive integers.
    """

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))


@dataclass(frozen=True)
class LinearCombo(WeightKind):
    """w_n = sum_i coeff_i * inner_i(n)."""

    parts: tuple  # of (coeff, WeightKind)

    def __post_init__(self):
        norm = []
        for coeff, kind in self.parts:
            if not isinstance(kind, WeightKind):
                raise DomainError(f"LinearCombo parts need WeightKind entries, got {kind!r}")
            norm.append((complex(coeff), kind))
        object.__setattr__(self, "parts", tuple(norm))


def weight_value(weight: WeightKind, n: int) -> complex:
    """Direct w_n, recomputed from scratch. Reference path for tests."""
    if isinstance(weight, Unit):
        return 1.0
    if isinstance(weight, Harmonic):
        return harmonic(weight.stride * n + weight.offset)
    if isinstance(weight, HarmonicSqPlusGen2):
        h = harmonic(n)
        return h * h + generalized_harmonic(n, 2.0)
    if isinstance(weight, ReciprocalShift):
        return weight_value(weight.inner, n) / (n + 1.0)
    if isinstance(weight, DigammaDiffSum):
        a, b = weight.a, weight.b
        acc = 0j
        for k in range(n):
            acc += 2.0 / (2.0 * b + k) - 1.0 / (a + b + 0.5 + k)
        return acc
    if isinstance(weight, LinearCombo):
        return sum(c * weight_value(k, n) for c, k in weight.parts)
    raise DomainError(f"unknown weight kind {weight!r}")


def _stepper(weight: WeightKind, n0: int):
    """Closure yielding w_n for n = n0, n0+1, ... one call per index.

    Running sums carry Kahan compensation so a 10^6-term walk stays
    within ~2 ulp of the fsum reference.
    """
    if isinstance(weight, Unit):
        def step():
            return 1.0
        return step

    if isinstance(weight, Harmonic):
        stride, offset = weight.stride, weight.offset
        state = [harmonic(stride * n0 + offset), 0.0, stride * n0 + offset, True]

        def step():
            if state[3]:
                state[3] = False
                return state[0]
            h, c, idx = state[0], state[1], state[2]
            for _ in range(stride):
                idx += 1
                y = 1.0 / idx - c
                t = h + y
                c = (t - h) - y
                h = t
            state[0], state[1], state[2] = h, c, idx
            return h
        return step

    if isinstance(weight, HarmonicSqPlusGen2):
        state = [harmonic(n0), 0.0, generalized_harmonic(n0, 2.0), 0.0, n0, True]

        def step():
            if state[5]:
                state[5] = False
            else:
                idx = state[4] + 1
                y = 1.0 / idx - state[1]
                t = state[0] + y
                state[1] = (t - state[0]) - y
                state[0] = t
                y = 1.0 / (idx * idx) - state[3]
                t = state[2] + y
                state[3] = (t - state[2]) - y
                state[2] = t
                state[4] = idx
            return state[0] * state[0] + state[2]
        return step

    if isinstance(weight, ReciprocalShift):
        inner = _stepper(weight.inner, n0)
        state = [n0]

        def step():
            n = state[0]
            state[0] = n + 1
            return inner() / (n + 1.0)
        return step

    if isinstance(weight, DigammaDiffSum):
        a2 = 2.0 * weight.b
        ab = weight.a + weight.b + 0.5
        acc = 0j
        for k in range(n0):
            acc += 2.0 / (a2 + k) - 1.0 / (ab + k)
        state = [acc, 0j, n0, True]

        def step():
            if state[3]:
                state[3] = False
                return state[0]
            k = state[2]
            y = (2.0 / (a2 + k) - 1.0 / (ab + k)) - state[1]
            t = state[0] + y
            state[1] = (t - state[0]) - y
            state[0] = t
            state[2] = k + 1
            return state[0]
        return step

    if isinstance(weight, LinearCombo):
        coeffs = tuple(c for c, _ in weight.parts)
        subs = tuple(_stepper(k, n0) for _, k in weight.parts)

        def step():
            return sum(c * s() for c, s in zip(coeffs, subs))
        return step

    raise DomainError(f"unknown weight kind {weight!r}")


# ---------------------------------------------------------------------------
# extrapolation


def wynn_epsilon(partial_sums, max_depth: int = _WYNN_MAX_DEPTH) -> complex:
    """Epsilon-algorithm extrapolation of a sequence of partial sums.

    The even columns of the epsilon table hold the accelerated estimates.
    Deep columns occasionally pass near a pole of the recursion and blow
    up while shallower ones stay good, so instead of returning the deepest
    entry unconditionally, each even column is scored by its last
    in-column step and the entry with the smallest step wins (ties go to
    the deeper column). Needs at least 5 entries. An exactly constant
    sequence short-circuits to its value; otherwise any table difference
    below 1e-300 in magnitude, or a non-finite entry, raises
    AccelerationBreakdown unless an even column was already completed.
    """
    sums = [complex(s) for s in partial_sums]
    if len(sums) < 5:
        raise ValueError(f"wynn_epsilon needs at least 5 partial sums, got {len(sums)}")
    last = sums[-1]
    if all(s == last for s in sums):
        return last
    prev = [0j] * (len(sums) + 1)
    cur = sums
    best = last
    best_step = math.inf
    depth = 0
    col = 0
    while len(cur) >= 2 and col < max_depth:
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if abs(d) < _EPS_GUARD:
                # converged-to-rounding deep in the table: keep the estimate;
                # a degenerate difference before any even column means the
                # input sequence itself is defective
                if depth:
                    return best
                raise AccelerationBreakdown(
                    f"degenerate difference in epsilon column {col + 1}")
            e = prev[i + 1] + 1.0 / d
            if not (math.isfinite(e.real) and math.isfinite(e.imag)):
                if depth:
                    return best
                raise AccelerationBreakdown(
                    f"non-finite entry in epsilon column {col + 1}")
            nxt.append(e)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0 and cur:
            step = abs(cur[-1] - cur[-2]) if len(cur) >= 2 else abs(cur[-1] - best)
            if step <= best_step:
                best = cur[-1]
                best_step = step
            depth = col
    return best


# ---------------------------------------------------------------------------
# the summation engine


def _tol_default(mag: float) -> float:
    return DEFAULT_TOL_INSIDE if mag <= 0.96 else DEFAULT_TOL_UNIT


def eval_weighted(spec: PochhammerRatioSeries, weight: WeightKind, x,
                  *, tol: float | None = None, max_terms: int | None = None,
                  accel: bool = False) -> SeriesResult:
    """Sum w_n * u_n(x) for n >= spec.start_index.

    Inside the unit circle the sum is direct, stopping once three
    consecutive terms fall below tol*|S| and the geometric tail bound
    built from recent term ratios also meets the tolerance. On the unit
    circle accel=True is required: partial sums at checkpoints 4, 8, 16,
    ... feed wynn_epsilon, and the extrapolated value is accepted after
    two consecutive shrinking moves inside 0.3*tol. Divergent inputs or a
    missed tolerance at the term budget raise NonConvergentError.
    """
    x = complex(x)
    rx = spec.geometric_ratio * x
    mag = abs(rx)
    if tol is None:
        tol = _tol_default(mag)
    if max_terms is None:
        max_terms = DEFAULT_MAX_TERMS
    if max_terms < 1:
        raise DomainError(f"max_terms must be positive, got {max_terms!r}")
    if mag > 1.0 + _UNIT_BAND:
        raise NonConvergentError(f"|ratio*x| = {mag:.6g} exceeds 1; series diverges")
    unit = mag > 1.0 - _UNIT_BAND
    sigma = spec.effective_exponent()
    if unit:
        if not accel:
            raise NonConvergentError(
                "unit-argument series needs accel=True (terms decay only algebraically)")
        if abs(rx - 1.0) <= 1e-9:
            if sigma >= -1.0:
                raise NonConvergentError(
                    f"effective exponent {sigma:.3g} >= -1 at argument 1; sum diverges")
        elif sigma >= 0.0:
            raise NonConvergentError(
                f"effective exponent {sigma:.3g} >= 0 on the unit circle; "
                "terms do not decay")

    nums = spec.numerator_shifts
    dens = spec.denominator_shifts
    p = spec.factorial_power
    n0 = spec.start_index
    step = _stepper(weight, n0)

    # u_{n0}: (a)_1 = a, (a)_0 = 1, so both legal starts are cheap
    t = 1.0 + 0j
    if n0 == 1:
        t = rx
        for a in nums:
            t *= a
        for b in dens:
            t /= b

    S = 0j
    comp = 0j
    n = n0
    count = 0
    consec = 0
    prev_at = -1.0
    r_hist: list[float] = []      # last 3 term ratios
    at_hist: list[float] = []     # last 3 |term| values
    cps: list[complex] = []
    next_cp = 4
    accel_alive = accel
    E_prev: complex | None = None
    d_prev: float | None = None
    run_small = 0

    while True:
        w = step()
        term = t * w
        y = term - comp
        hi = S + y
        comp = (hi - S) - y
        S = hi
        count += 1
        at = abs(term)

        if prev_at > 0.0:
            r_hist.append(at / prev_at)
            if len(r_hist) > 3:
                r_hist.pop(0)
        elif prev_at == 0.0:
            # a nonzero term after an exact zero has no usable ratio; poison
            # the window so the geometric bound is not trusted through it
            r_hist.append(0.0 if at == 0.0 else 2.0)
            if len(r_hist) > 3:
                r_hist.pop(0)
        prev_at = at
        at_hist.append(at)
        if len(at_hist) > 3:
            at_hist.pop(0)

        scale = abs(S)
        if at <= tol * scale or at == 0.0:
            consec += 1
        else:
            consec = 0

        if consec >= 3 and count >= 6 and r_hist:
            r = max(r_hist)
            if r < _RATIO_HARD_CAP:
                tail = max(at_hist) * r / (1.0 - r)
                ok = r <= _RATIO_TRUST
                if not ok and sigma < 0.0 and count >= 10:
                    # ratios of an algebraically decaying tail drift down
                    # toward |r*x|, so a non-increasing recent window makes
                    # the geometric bound safe beyond the usual trust cap
                    ok = all(r_hist[i + 1] <= r_hist[i] * (1.0 + 1e-9)
                             for i in range(len(r_hist) - 1))
                if ok and tail <= tol * max(1.0, scale):
                    return SeriesResult(S, count, tail, True, "direct")

        if accel_alive and n == next_cp:
            cps.append(S)
            next_cp *= 2
            if len(cps) >= 5:
                try:
                    E = wynn_epsilon(cps)
                except AccelerationBreakdown:
                    accel_alive = False  # keep summing; direct paths remain
                else:
                    if E_prev is not None:
                        d = abs(E - E_prev)
                        lim = 0.3 * tol * max(1.0, abs(E))
                        run_small = run_small + 1 if d <= lim else 0
                        # two sub-limit moves in a row, still shrinking; a
                        # stalled-but-tiny pair (both an order below the
                        # limit) also counts, since an extrapolation plateau
                        # that deep cannot hide an above-tolerance error.
                        # Failing those, four sub-limit moves in a row: every
                        # observed false plateau breaks such a run by its
                        # fourth member, while rounding-floor bounce does not
                        if (d_prev is not None and d <= lim and d_prev <= lim
                                and (d <= 0.7 * d_prev
                                     or max(d, d_prev) <= 0.1 * lim
                                     or run_small >= 4)):
                            return SeriesResult(E, count, d + d_prev, True,
                                                "wynn_epsilon")
                        d_prev = d
                    E_prev = E

        if count >= max_terms:
            break

        # advance u_n -> u_{n+1}
        f = rx
        for a in nums:
            f *= a + n
        for b in dens:
            f /= b + n
        t *= f
        if p:
            t /= float(n + 1) ** p
        n += 1

    # budget exhausted: accept only if a trustworthy tail bound exists
    if r_hist:
        r = max(r_hist)
        if 0.0 <= r < _RATIO_HARD_CAP:
            tail = max(at_hist) * r / (1.0 - r)
            if tail <= tol * max(1.0, abs(S)):
                return SeriesResult(S, count, tail, True, "direct")
    raise NonConvergentError(
        f"no tolerance-{tol:g} tail bound after {count} terms "
        f"(|r*x| = {mag:.6g}, effective exponent {sigma:.3g})")


def eval_hyper(spec: PochhammerRatioSeries, x, **kwargs) -> SeriesResult:
    """Unit-weight convenience wrapper: the plain hypergeometric sum."""
    return eval_weighted(spec, Unit(), x, **kwargs)


def hyp2f1(a, b, c, x, *, tol: float = 1e-12,
           max_terms: int = DEFAULT_MAX_TERMS, accel: bool = False) -> complex:
    """Gauss 2F1 by direct summation, |x| < 1 (or accel at 1)."""
    spec = PochhammerRatioSeries((a, b), (c,), 1, 1.0, 0)
    return eval_weighted(spec, Unit(), x, tol=tol, max_terms=max_terms,
                         accel=accel).value


# ---------------------------------------------------------------------------
# differentiation helper


def finite_difference(f, at, order: int = 1, h: float = 1e-3) -> complex:
    """Central difference with one Richardson pass: (4 D(h/2) - D(h)) / 3.

    order 1 or 2. Error is O(h^4) for smooth f.
    """
    at = complex(at)
    if order == 1:
        def d(hh):
            return (f(at + hh) - f(at - hh)) / (2.0 * hh)
    elif order == 2:
        f0 = f(at)

        def d(hh):
            return (f(at + hh) - 2.0 * f0 + f(at - hh)) / (hh * hh)
    else:
        raise ValueError(f"finite_difference order must be 1 or 2, got {order!r}")
    return (4.0 * d(h / 2.0) - d(h)) / 3.0
