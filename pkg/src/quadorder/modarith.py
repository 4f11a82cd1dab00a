"""Modular arithmetic and factorization plumbing, sized for desk-scale inputs."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

DEFAULT_TRIAL_BOUND = 10**6
TRIAL_BOUND_ENV = "QUADORDER_TRIAL_BOUND"

# this witness set makes Miller-Rabin deterministic below 3.3 * 10^24
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"p = {p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root of a mod p, or None if a is a non-residue.

    Returns the canonical representative min(r, p - r) so that repeated
    calls are reproducible.  Uses the direct exponent for p = 3 (mod 4)
    and Tonelli-Shanks otherwise, with a deterministic non-residue search.
    """
    require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) == -1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


@dataclass(frozen=True)
class Factorization:
    base: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes ascending

    def __post_init__(self) -> None:
        prod = 1
        for p, k in self.factors:
            prod *= p**k
        if prod != self.base:
            raise ValueError("factor product does not reproduce the base")

    def is_squarefree(self) -> bool:
        return all(k == 1 for _, k in self.factors)


def trial_bound() -> int:
    raw = os.environ.get(TRIAL_BOUND_ENV)
    if raw is None:
        return DEFAULT_TRIAL_BOUND
    try:
        val = int(raw)
    except ValueError as exc:
        raise ValueError(f"{TRIAL_BOUND_ENV} must be an integer, got {raw!r}") from exc
    if val < 2:
        raise ValueError(f"{TRIAL_BOUND_ENV} must be at least 2")
    return val


def factorize(n: int, bound: int | None = None) -> Factorization:
    """Factor |n| by trial division up to the bound.

    A cofactor surviving the trial bound is accepted only if it passes the
    primality test; otherwise the input exceeds desk scale and we refuse
    rather than guess.  The bound defaults to QUADORDER_TRIAL_BOUND when
    that env var is set, else 10^6.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    if bound is None:
        bound = trial_bound()
    rem = abs(n)
    factors: list[tuple[int, int]] = []
    q = 2
    while q <= bound and q * q <= rem:
        if rem % q == 0:
            k = 0
            while rem % q == 0:
                rem //= q
                k += 1
            factors.append((q, k))
        q += 1 if q == 2 else 2
    if rem > 1:
        if rem <= bound * bound or is_prime(rem):
            factors.append((rem, 1))
        else:
            raise ValueError(
                f"composite cofactor {rem} exceeds the trial bound {bound}"
            )
    return Factorization(base=abs(n), factors=tuple(factors))
