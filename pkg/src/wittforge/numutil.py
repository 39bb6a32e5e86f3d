"""Small exact number-theory helpers used across the package."""

from __future__ import annotations

import math


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division. Intended for small n."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and list(factorize(n)) == [n]


def divisors(n: int) -> list[int]:
    out = [1]
    for p, r in factorize(n).items():
        out = [d * p**i for d in out for i in range(r + 1)]
    return sorted(out)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def inverse_mod(a: int, n: int) -> int | None:
    g, x, _ = ext_gcd(a % n, n)
    if g != 1:
        return None
    return x % n


def crt_pair(a1: int, n1: int, a2: int, n2: int) -> int:
    """Solve x = a1 mod n1, x = a2 mod n2 for coprime moduli."""
    g, m1, _ = ext_gcd(n1, n2)
    if g != 1:
        raise ValueError("crt_pair needs coprime moduli")
    return (a1 + (a2 - a1) * m1 % n2 * n1) % (n1 * n2)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
