"""Conductor indices: the least power of alpha landing in the order Z + f*O.

n(f) reduces to the vanishing index of the cofactor sequence u mod f0,
where f0 strips from f its common factor with b.  The scan is capped by
the odd-conductor product bound over q(p) values when that bound exists,
and by a fixed ceiling otherwise; hitting the cap raises instead of
looping, since it can only mean a broken precondition or a bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cheby import ChebyParams, eval_fast
from .modarith import factorize, gcd, require_odd_prime
from .ordersolver import Check, _check, q_of_p
from .quadint import QuadInt

DEFAULT_CEILING = 10**7


def reduce_f(b: int, f: int) -> tuple[int, int, int]:
    """Split f into its common part with b and the reduced conductor.

    Returns (c, b0, f0) with c = gcd(b, f), b0 = b/c, f0 = f/c; the
    reduced pair is coprime, so vanishing mod f0 is what n(f) measures.
    """
    if b == 0:
        raise ValueError("b = 0 is rational; the caller should short-circuit n(f) = 1")
    if f < 1:
        raise ValueError("the conductor must be at least 1")
    c = gcd(b, f)
    return c, b // c, f // c


def _scan_cap(x: int, s: int, modulus: int) -> int:
    # 10x the odd-modulus product bound when it exists, else a flat ceiling
    if modulus % 2 == 0:
        return DEFAULT_CEILING
    try:
        fac = factorize(modulus)
    except ValueError:
        return DEFAULT_CEILING
    cap = 1
    for p, k in fac.factors:
        cap *= q_of_p(x, s, p) * p ** (k - 1)
    return max(64, 10 * cap)


@lru_cache(maxsize=None)
def _entry_index(x: int, s: int, modulus: int) -> int:
    cap = _scan_cap(x, s, modulus)
    cur, nxt = 1 % modulus, x % modulus
    for nu in range(1, cap + 1):
        if cur == 0:
            return nu
        cur, nxt = nxt, (x * nxt - s * cur) % modulus
    raise RuntimeError(
        f"scan bound exceeded: no vanishing index below {cap} mod {modulus}"
    )


def _require_entry_exists(x: int, s: int, f0: int) -> None:
    for p, _ in factorize(f0).factors:
        if s % p == 0 and x % p != 0:
            raise ValueError(
                f"no power of alpha has its irrational part divisible by {p}: "
                "the cofactor sequence never vanishes there"
            )


def n_of_f(alpha: QuadInt, f: int) -> int:
    """Least nu >= 1 with alpha^nu in the order of conductor f."""
    if f < 1:
        raise ValueError("the conductor must be at least 1")
    if f == 1 or alpha.b == 0:
        return 1
    c, b0, f0 = reduce_f(alpha.b, f)
    if f0 == 1:
        return 1
    x, s = alpha.trace_x, alpha.norm
    _require_entry_exists(x, s, f0)
    return _entry_index(x, s, f0)


@dataclass(frozen=True)
class MultiplicativeBound:
    f: int
    g: int
    n_f: int
    n_g: int
    n_fg: int
    side_conditions: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return self.n_fg <= self.n_f * self.n_g


def bound_multiplicative(alpha: QuadInt, f: int, g: int) -> MultiplicativeBound:
    """n(fg) against n(f)n(g) for coprime conductors.

    Only gcd(f, g) = 1 is enforced; whether b shares factors with f or g
    is reported in side_conditions rather than rejected, so violations of
    the inequality under relaxed hypotheses would surface as holds=False.
    """
    if gcd(f, g) != 1:
        raise ValueError("the conductors must be coprime")
    side = []
    if alpha.b != 0 and gcd(alpha.b, f) != 1:
        side.append(f"gcd(b, f) = {gcd(alpha.b, f)}")
    if alpha.b != 0 and gcd(alpha.b, g) != 1:
        side.append(f"gcd(b, g) = {gcd(alpha.b, g)}")
    return MultiplicativeBound(
        f=f,
        g=g,
        n_f=n_of_f(alpha, f),
        n_g=n_of_f(alpha, g),
        n_fg=n_of_f(alpha, f * g),
        side_conditions=tuple(side),
    )


@dataclass(frozen=True)
class PrimePowerBound:
    p: int
    k: int
    f: int
    q_p: int
    n_f: int
    lhs: int
    rhs: int
    side_conditions: tuple[str, ...]
    checks: tuple[Check, ...] = ()

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def bound_prime_power(
    alpha: QuadInt, p: int, k: int, f: int = 1, diagnostics: bool = False
) -> PrimePowerBound:
    """n(p^k f) against q(p) * p^(k-1) * n(f) for an odd prime p not dividing f.

    Diagnostic mode replays the lifting step behind the inequality: the
    index nu = rhs vanishes mod p^k f, the transported parameters satisfy
    u_{p-1}(z; S) == (z^2 - 4S)^((p-1)/2) mod p, and composing pushes the
    vanishing up to p^{k+1} f.
    """
    require_odd_prime(p)
    if k < 1:
        raise ValueError("k must be at least 1")
    if f < 1:
        raise ValueError("the conductor factor must be at least 1")
    if f % p == 0:
        raise ValueError("p must not divide f")
    x, s = alpha.trace_x, alpha.norm
    side = []
    if alpha.b != 0 and gcd(alpha.b, f) != 1:
        side.append(f"gcd(b, f) = {gcd(alpha.b, f)}")
    if alpha.b % p == 0:
        side.append("p divides b")
    q = q_of_p(x, s, p)
    n_f = n_of_f(alpha, f)
    lhs = n_of_f(alpha, p**k * f)
    rhs = q * p ** (k - 1) * n_f
    checks: tuple[Check, ...] = ()
    if diagnostics:
        checks = _lift_diagnostics(x, s, p, k, f, rhs)
    return PrimePowerBound(
        p=p, k=k, f=f, q_p=q, n_f=n_f, lhs=lhs, rhs=rhs,
        side_conditions=tuple(side), checks=checks,
    )


def _lift_diagnostics(x: int, s: int, p: int, k: int, f: int, nu: int) -> tuple[Check, ...]:
    base = p**k * f
    lifted = p ** (k + 1) * f
    u_at_nu = eval_fast(ChebyParams(x, s, base), nu).u_prev
    z = eval_fast(ChebyParams(x, s, p), nu).t
    # the s-parameter must be a nonzero integer; p stands in for 0 mod p
    cap_s = pow(s, nu, p) or p
    # u_{p-1} is the u_prev component one index up
    frob_lhs = eval_fast(ChebyParams(z, cap_s, p), p).u_prev
    frob_rhs = pow(z * z - 4 * cap_s, (p - 1) // 2, p)
    big = ChebyParams(x, s, lifted)
    z_big = eval_fast(big, nu).t
    s_big = pow(s, nu, lifted) or lifted
    u_nu_big = eval_fast(big, nu).u_prev
    outer = eval_fast(ChebyParams(z_big, s_big, lifted), p).u_prev
    u_pnu = eval_fast(big, p * nu).u_prev
    return (
        _check("u(nu-1) == 0 mod p^k f", u_at_nu == 0),
        _check("u(p-1)(z; s^nu) == (z^2-4s^nu)^((p-1)/2) mod p", frob_lhs == frob_rhs),
        _check(
            "u(p*nu-1) == u(p-1)(z; s^nu) * u(nu-1) mod p^{k+1} f",
            u_pnu == outer * u_nu_big % lifted,
        ),
        _check("u(p*nu-1) == 0 mod p^{k+1} f", u_pnu == 0),
    )


@dataclass(frozen=True)
class PrimeBound:
    p: int
    k: int
    q_p: int
    contribution: int


@dataclass(frozen=True)
class ConductorReport:
    f: int
    f0: int
    n_exact: int
    bound: int | None
    per_prime: tuple[PrimeBound, ...]
    notes: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return self.bound is None or self.n_exact <= self.bound


def bound_full(alpha: QuadInt, f: int) -> ConductorReport:
    """Exact n(f) next to the per-prime product bound over f0.

    The product bound is only claimed for odd f; an even conductor still
    gets its exact index, with bound None and a note saying why.
    """
    if alpha.b == 0:
        raise ValueError("b = 0 is rational; n(f) = 1 for every conductor")
    n_exact = n_of_f(alpha, f)
    c, _, f0 = reduce_f(alpha.b, f)
    notes = []
    if c > 1:
        notes.append(f"common factor {c} with b removed, leaving f0 = {f0}")
    if f % 2 == 0:
        notes.append("even conductor: the product bound is stated for odd f only")
        return ConductorReport(
            f=f, f0=f0, n_exact=n_exact, bound=None, per_prime=(), notes=tuple(notes)
        )
    x, s = alpha.trace_x, alpha.norm
    per = []
    bound = 1
    for p, k in factorize(f0).factors:
        q = q_of_p(x, s, p)
        contribution = q * p ** (k - 1)
        per.append(PrimeBound(p=p, k=k, q_p=q, contribution=contribution))
        bound *= contribution
    return ConductorReport(
        f=f, f0=f0, n_exact=n_exact, bound=bound, per_prime=tuple(per), notes=tuple(notes)
    )
