"""Two-parameter trace/cofactor recurrences.

Both families satisfy w_{n+1} = x*w_n - s*w_{n-1}; the trace family t
starts 2, x and the cofactor family u starts 1, x (with u_{-1} = 0).
They are the scaled Chebyshev polynomials in the pair (x, s), and for a
2x2 integer matrix with trace x and determinant s they give the trace
and the corner entry of the n-th power.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class ChebyParams:
    x: int
    s: int
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.s == 0:
            raise ValueError("s must be nonzero")
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be at least 2")


@dataclass(frozen=True)
class ChebyPair:
    n: int
    t: int
    u_prev: int  # u_{n-1}


def u_seq(params: ChebyParams, n_max: int) -> list[int]:
    """u_0 .. u_{n_max}, reduced mod params.modulus when set."""
    return _seq(params, n_max, 1, params.x)


def t_seq(params: ChebyParams, n_max: int) -> list[int]:
    """t_0 .. t_{n_max}, reduced mod params.modulus when set."""
    return _seq(params, n_max, 2, params.x)


def _seq(params: ChebyParams, n_max: int, w0: int, w1: int) -> list[int]:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    x, s, m = params.x, params.s, params.modulus
    seq = [w0, w1]
    if m is not None:
        seq = [w0 % m, w1 % m]
    while len(seq) <= n_max:
        nxt = x * seq[-1] - s * seq[-2]
        seq.append(nxt % m if m is not None else nxt)
    return seq[: n_max + 1]


def u_prev_exact(x: int, s: int, n: int) -> int:
    """u_{n-1}(x; s) over the integers; u_{-1} = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev, cur = 0, 1
    for _ in range(n):
        prev, cur = cur, x * cur - s * prev
    return prev


def t_exact(x: int, s: int, n: int) -> int:
    """t_n(x; s) over the integers."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 2
    prev, cur = 2, x
    for _ in range(n - 1):
        prev, cur = cur, x * cur - s * prev
    return cur


def eval_fast(params: ChebyParams, n: int) -> ChebyPair:
    """(t_n, u_{n-1}) mod the modulus in O(log n) steps.

    Powers the companion matrix [[x, -s], [1, 0]]; the n-th power carries
    u_n in the top-left and u_{n-1} in the bottom-left entry, and
    t_n = 2*u_n - x*u_{n-1}.
    """
    m = params.modulus
    if m is None:
        raise ValueError("eval_fast needs a modulus")
    if n < 0:
        raise ValueError("n must be nonnegative")
    x, s = params.x % m, params.s % m
    a, b, c, d = 1 % m, 0, 0, 1 % m
    e, f, g, h = x, (-s) % m, 1 % m, 0
    k = n
    while k:
        if k & 1:
            a, b, c, d = (
                (a * e + b * g) % m,
                (a * f + b * h) % m,
                (c * e + d * g) % m,
                (c * f + d * h) % m,
            )
        e, f, g, h = (
            (e * e + f * g) % m,
            (e * f + f * h) % m,
            (g * e + h * g) % m,
            (g * f + h * h) % m,
        )
        k >>= 1
    return ChebyPair(n=n, t=(2 * a - x * c) % m, u_prev=c)


def u_odd_closed_form(params: ChebyParams, n: int) -> int:
    """u_{n-1}(x; s) for odd n by the single binomial sum, no recurrence.

    2^{n-1} u_{n-1} = sum_k C(n, 2k+1) x^{n-2k-1} (x^2-4s)^k; the division
    is exact and is asserted to be.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and at least 1")
    if params.modulus is not None:
        raise ValueError("the closed form is exact; build params without a modulus")
    x, s = params.x, params.s
    disc = x * x - 4 * s
    total = sum(
        comb(n, 2 * k + 1) * x ** (n - 2 * k - 1) * disc**k
        for k in range((n + 1) // 2)
    )
    quot, rem = divmod(total, 1 << (n - 1))
    if rem:
        raise ArithmeticError("binomial sum was not divisible by 2^(n-1)")
    return quot


def compose_u(m: int, n: int, params: ChebyParams) -> tuple[int, int]:
    """Exact (lhs, rhs) of u_{mn-1}(x;s) = u_{m-1}(t_n(x;s); s^n) * u_{n-1}(x;s)."""
    _require_exact_indices(m, n, params)
    x, s = params.x, params.s
    lhs = u_prev_exact(x, s, m * n)
    rhs = u_prev_exact(t_exact(x, s, n), s**n, m) * u_prev_exact(x, s, n)
    return lhs, rhs


def compose_t(m: int, n: int, params: ChebyParams) -> tuple[int, int]:
    """Exact (lhs, rhs) of t_{mn}(x;s) = t_n(t_m(x;s); s^m)."""
    _require_exact_indices(m, n, params)
    x, s = params.x, params.s
    lhs = t_exact(x, s, m * n)
    rhs = t_exact(t_exact(x, s, m), s**m, n)
    return lhs, rhs


def _require_exact_indices(m: int, n: int, params: ChebyParams) -> None:
    if m < 1 or n < 1:
        raise ValueError("composition indices must be at least 1")
    if params.modulus is not None:
        raise ValueError("composition identities are checked exactly; drop the modulus")
