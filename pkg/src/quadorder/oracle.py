"""Ground truth by direct iteration.

Every bound elsewhere in the package is checked against these scans.
Nothing here touches the fast polynomial evaluators: orders come from
repeated quadratic multiplication with coefficient reduction, conductor
indices from exact powers, and q(p) from the bare recurrence mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .modarith import require_odd_prime
from .quadint import QuadInt

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class OracleResult:
    quantity: str
    inputs: dict = field(compare=False)
    value: int | None
    cap: int


def _reduce_mod_p(alpha: QuadInt, p: int) -> QuadInt:
    a, b = alpha.a % p, alpha.b % p
    # half-integer pairs must keep equal parity; p is odd so one bump fixes it
    if alpha.r == 1 and (a + b) % 2:
        a += p
    return QuadInt(a, b, alpha.d)


def oracle_order_mod_p(alpha: QuadInt, p: int, cap: int = DEFAULT_CAP) -> OracleResult:
    """First nu with alpha^nu == 1 mod p, by multiplying one factor at a time."""
    require_odd_prime(p)
    target = QuadInt.one(alpha.d)
    base = _reduce_mod_p(alpha, p)
    beta = base
    value = None
    for nu in range(1, cap + 1):
        if beta.congruent_mod_p(target, p):
            value = nu
            break
        beta = _reduce_mod_p(beta * base, p)
    return OracleResult("order_mod_p", {"alpha": str(alpha), "p": p}, value, cap)


def oracle_n_of_f(alpha: QuadInt, f: int, cap: int = DEFAULT_CAP) -> OracleResult:
    """First nu with alpha^nu in the conductor-f order, by exact powers."""
    if f < 1:
        raise ValueError("the conductor must be at least 1")
    beta = alpha
    value = None
    for nu in range(1, cap + 1):
        if beta.in_order(f):
            value = nu
            break
        beta = beta * alpha
    return OracleResult("n_of_f", {"alpha": str(alpha), "f": f}, value, cap)


def oracle_q_of_p(x: int, s: int, p: int, cap: int = DEFAULT_CAP) -> OracleResult:
    """First nu with u_{nu-1}(x; s) == 0 mod p, scanning the recurrence."""
    require_odd_prime(p)
    cur, nxt = 1 % p, x % p
    value = None
    for nu in range(1, cap + 1):
        if cur == 0:
            value = nu
            break
        cur, nxt = nxt, (x * nxt - s * cur) % p
    return OracleResult("q_of_p", {"x": x, "s": s, "p": p}, value, cap)
