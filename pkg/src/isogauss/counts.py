"""Closed-form counting over F_p: product functions, representation
numbers of scalar and zero targets, orthogonal group orders, and
totally isotropic subspace counts.

All values are exact big integers. Ratios (beta, gamma, the division
by nu(j,0) in iso_count) are computed as exact rationals and asserted
integral; a failed assertion means the formula was applied outside its
domain, not a rounding problem.
"""

from fractions import Fraction

from .field import PrimeContext
from .quadform import SQ, NONSQ, FormClass

_KINDS = ("mu", "delta", "mudelta", "beta", "nu", "gamma")


def _mu(p: int, t: int, s: int) -> int:
    out = 1
    for i in range(s):
        if t - i <= 0:
            return 0  # the exponent-0 factor vanishes
        out *= p ** (t - i) - 1
    return out


def _delta(p: int, t: int, s: int) -> int:
    out = 1
    for i in range(s):
        if t - i < 0:
            raise ValueError(f"delta({t},{s}) runs past exponent 0")
        out *= p ** (t - i) + 1
    return out


def _mudelta(p: int, t: int, s: int) -> int:
    out = 1
    for i in range(s):
        if t - i <= 0:
            return 0
        out *= p ** (2 * (t - i)) - 1
    return out


def _nu(p: int, t: int, s: int) -> int:
    out = 1
    for i in range(s, t):
        out *= p**t - p**i
    return out


def qfunc(ctx: PrimeContext, kind: str, t: int, s: int) -> int:
    """The six product functions.

    mu(t,s), delta(t,s), mudelta(t,s) = mu*delta: products of s factors
    (empty, hence 1, at s=0). beta(t,s) = mu(t,s)/mu(s,s) counts
    s-dimensional subspaces of F_p^t, and is 0 for s < 0.
    nu(t,s): product over i in [s, t) of (p^t - p^i); nu(t,0) = |GL_t|.
    gamma(t,s) = mudelta(t,s)/mudelta(s,s).
    """
    p = ctx.p
    if kind not in _KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "beta":
        if s < 0:
            return 0
        val = Fraction(_mu(p, t, s), _mu(p, s, s))
    elif kind == "gamma":
        if s < 0:
            raise ValueError("gamma needs s >= 0")
        val = Fraction(_mudelta(p, t, s), _mudelta(p, s, s))
    else:
        if s < 0:
            raise ValueError(f"{kind} needs s >= 0")
        if kind == "mu":
            return _mu(p, t, s)
        if kind == "delta":
            return _delta(p, t, s)
        if kind == "mudelta":
            return _mudelta(p, t, s)
        return _nu(p, t, s)
    if val.denominator != 1:
        raise ArithmeticError(f"{kind}({t},{s}) is not integral")
    return int(val)


def rep_star_lemma51(ctx: PrimeContext, form: str, size: int, target) -> int:
    """Primitive representation numbers of nondegenerate forms.

    form is "I" or "J" (Square / NonSquare type of the given size);
    target is "one", "omega", or ("zeros", d) for the d-fold zero form.
    Values may legitimately be 0 (zero targets beyond the Witt index).
    """
    p, eps = ctx.p, ctx.epsilon
    if form not in ("I", "J"):
        raise ValueError(f"form must be I or J, got {form!r}")
    if size < 1:
        raise ValueError("size must be >= 1")
    t, odd = divmod(size, 2)
    if target in ("one", "omega"):
        if not odd:
            # even size: the target's square class does not matter
            sign = -1 if form == "I" else 1
            return p ** (t - 1) * (p**t + sign * eps**t)
        want_plus = (form == "I") == (target == "one")
        sign = 1 if want_plus else -1
        return p**t * (p**t + sign * eps**t)
    if isinstance(target, tuple) and len(target) == 2 and target[0] == "zeros":
        d = target[1]
        if d < 1:
            raise ValueError("zeros target needs d >= 1")
        if odd:
            return p ** (d * (d - 1) // 2) * _mudelta(p, t, d)
        sign = -1 if form == "I" else 1
        val = (
            Fraction(p) ** (d * (d - 1) // 2)
            * (p**t + sign * eps**t)
            * _mudelta(p, t - 1, d - 1)
            * (Fraction(p) ** (t - d) - sign * eps**t)
        )
        if val.denominator != 1:
            raise ArithmeticError(f"r*({form}_{size}, 0_{d}) not integral")
        return int(val)
    raise ValueError(f"unsupported target {target!r}")


def orth_order(ctx: PrimeContext, c: FormClass) -> int:
    """Order of the orthogonal group of the class representative.

    Odd nondegenerate size 2m+1: 2 p^(m^2) mudelta(m,m), same for both
    disc types. Even size 2m: 2 p^(m(m-1)) (p^m - eta) mudelta(m-1,m-1)
    where eta = +1 exactly when the form is hyperbolic; the Square type
    is hyperbolic iff epsilon^m = 1. A degenerate form Q perp 0_s has
    order o(Q) * p^(d*s) * nu(s,0): an isometry is block triangular
    with an isometry of Q, an arbitrary d x s mixing block, and an
    arbitrary invertible map on the radical.
    """
    p, eps = ctx.p, ctx.epsilon
    n, d = c.n, c.d
    if not 0 <= d <= n:
        raise ValueError(f"bad class {c}")
    m, odd = divmod(d, 2)
    if d == 0:
        nd = 1
    elif odd:
        nd = 2 * p ** (m * m) * _mudelta(p, m, m)
    else:
        eta = eps**m if c.disc == SQ else -(eps**m)
        nd = 2 * p ** (m * (m - 1)) * (p**m - eta) * _mudelta(p, m - 1, m - 1)
    s = n - d
    return nd * p ** (d * s) * _nu(p, s, 0)


def iso_count(ctx: PrimeContext, c: FormClass, j: int) -> int:
    """Number of j-dimensional totally isotropic subspaces of the class.

    Nondegenerate part via the closed primitive zero-representation
    formulas divided by nu(j,0). Radical of dimension s contributes by
    splitting a subspace W as (W cap radical) of dimension i, a
    projected totally isotropic subspace of dimension j-i, and an
    arbitrary lifting hom into the rest of the radical:
    R*(Q perp 0_s, 0_j) = sum_i R*(Q, 0_(j-i)) beta(s,i) p^((j-i)(s-i)).
    """
    p = ctx.p
    if not 0 <= j <= c.n:
        raise ValueError(f"subspace dimension {j} out of range for {c}")
    if j == 0:
        return 1
    d, s = c.d, c.n - c.d
    form = "I" if c.disc == SQ else "J"

    def nd_count(x: int) -> int:
        # totally isotropic x-subspaces of the nondegenerate part
        if x == 0:
            return 1
        if x > d or d == 0:
            return 0
        rstar = rep_star_lemma51(ctx, form, d, ("zeros", x))
        q, r = divmod(rstar, _nu(p, x, 0))
        if r:
            raise ArithmeticError(f"iso count not integral for {c}, j={x}")
        return q

    total = 0
    for i in range(0, min(j, s) + 1):
        total += nd_count(j - i) * qfunc(ctx, "beta", s, i) * p ** ((j - i) * (s - i))
    return total


def rep_zero_full(ctx: PrimeContext, c: FormClass, d: int) -> int:
    """r(c, 0_d): all matrices C (any rank) with ^tC X C = 0_d.

    Sums primitive subspace counts against the number of d-tuples
    spanning a fixed j-dimensional space, prod_{i<j} (p^d - p^i).
    """
    p = ctx.p
    if d < 0:
        raise ValueError("d must be >= 0")
    total = 0
    for j in range(0, min(d, c.n) + 1):
        span_tuples = 1
        for i in range(j):
            span_tuples *= p**d - p**i
        total += iso_count(ctx, c, j) * span_tuples
    return total
