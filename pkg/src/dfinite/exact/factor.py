"""Factorization of rational polynomials.

Squarefree decomposition by Yun's algorithm; irreducible factorization of the
squarefree parts by the Zassenhaus scheme: factor modulo a small prime
(distinct-degree then Cantor-Zassenhaus equal-degree splitting), Hensel-lift
the factors past a Mignotte bound, then recombine subsets by trial division.
Recombination is exhaustive, which is fine for the small degrees met here
(tested up to degree ~16; beyond ~25 modular factors it becomes exponential).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, isqrt

from .poly import Poly, poly_gcd

# --- arithmetic on integer polynomials modulo m (lists, lowest degree first) ---


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod(a, m: int) -> list[int]:
    return _trim([c % m for c in a])


def _add(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _sub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod(out, m)


def _divmod(a, b, m):
    """Division by b whose leading coefficient is a unit mod m."""
    a = list(a)
    inv = pow(b[-1], -1, m)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _mod(a, m)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % m
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _trim(q), _mod(a[:db], m)


def _monic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a, b, p):
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p) if a else a


def _xgcd(a, b, p):
    """(g, s, t) with s a + t b = g monic, modulo the prime p."""
    r0, r1, s0, s1, t0, t1 = a, b, [1], [], [], [1]
    while r1:
        q, r = _divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        t0, t1 = t1, _sub(t0, _mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0]


def _powmod(a, e: int, f, p):
    out, base = [1], _divmod(a, f, p)[1]
    while e:
        if e & 1:
            out = _divmod(_mul(out, base, p), f, p)[1]
        base = _divmod(_mul(base, base, p), f, p)[1]
        e >>= 1
    return out


def _distinct_degree(f, p):
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, p)[0]
            h = _divmod(h, f, p)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = _gcd(a, f, p)
        if len(g) > 1:
            break
        b = _sub(_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = _gcd(b, f, p)
        if 1 < len(g) < len(f):
            break
    return _equal_degree(g, d, p, rng) + _equal_degree(_divmod(f, g, p)[0], d, p, rng)


def factor_mod_p(f: list[int], p: int, seed: int = 0) -> list[list[int]]:
    """Monic irreducible factors of a squarefree polynomial modulo an odd prime."""
    rng = random.Random(seed)
    f = _monic(_mod(f, p), p)
    out = []
    for g, d in _distinct_degree(f, p):
        out.extend(_equal_degree(g, d, p, rng))
    return out


def _hensel_step(f, g, h, s, t, m):
    """Lift f = g h (h monic), s g + t h = 1 from modulus m to m^2."""
    m2 = m * m
    e = _sub(f, _mul(g, h, m2), m2)
    q, r = _divmod(_mul(s, e, m2), h, m2)
    g2 = _add(_add(g, _mul(t, e, m2), m2), _mul(q, g, m2), m2)
    h2 = _add(h, r, m2)
    b = _sub(_add(_mul(s, g2, m2), _mul(t, h2, m2), m2), [1], m2)
    c, d = _divmod(_mul(s, b, m2), h2, m2)
    s2 = _sub(s, d, m2)
    t2 = _sub(_sub(t, _mul(t, b, m2), m2), _mul(c, g2, m2), m2)
    return g2, h2, s2, t2


def hensel_lift(f: list[int], factors: list[list[int]], p: int, k: int) -> list[list[int]]:
    """Lift monic modular factors of f (lc(f) a unit mod p) to monic factors mod p^k."""
    target = p**k
    if len(factors) == 1:
        return [_monic(_mod(f, target), target)]
    half = len(factors) // 2
    lc = f[-1] % p
    g = [c * lc % p for c in reduce(lambda a, b: _mul(a, b, p), factors[:half])]
    h = reduce(lambda a, b: _mul(a, b, p), factors[half:])
    _, s, t = _xgcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t = _hensel_step(_mod(f, m * m), g, h, s, t, m)
        m = m * m
    g, h = _mod(g, target), _mod(h, target)
    return hensel_lift(g, factors[:half], p, k) + hensel_lift(h, factors[half:], p, k)


def _symmetric(a, m):
    return [c - m if c > m // 2 else c for c in a]


def _int_divides(g: list[int], f: list[int]) -> list[int] | None:
    """Exact quotient f/g over Z, or None."""
    f = list(f)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return None
    q = [0] * (len(f) - dg)
    for k in range(len(f) - 1 - dg, -1, -1):
        c, rem = divmod(f[k + dg], g[-1])
        if rem:
            return None
        q[k] = c
        if c:
            for j, y in enumerate(g):
                f[k + j] -= c * y
    if any(f[:dg]):
        return None
    return q


def _content(a: list[int]) -> int:
    return reduce(gcd, a, 0)


def _primitive(a: list[int]) -> list[int]:
    c = _content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


_PRIMES = [p for p in range(3, 2000) if all(p % q for q in range(2, isqrt(p) + 1))]


def factor_squarefree_int(f: list[int]) -> list[list[int]]:
    """Irreducible factors over Z of a primitive squarefree integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    fp = None
    for p in _PRIMES:
        if f[-1] % p == 0:
            continue
        fm = _mod(f, p)
        if len(_gcd(fm, _mod([i * c for i, c in enumerate(f)][1:], p), p)) == 1:
            fp = p
            break
    if fp is None:
        raise ArithmeticError("no suitable prime for modular factorization")
    p = fp
    modular = factor_mod_p(f, p)
    if len(modular) == 1:
        return [f]
    norm = isqrt(sum(c * c for c in f)) + 1
    bound = 2 * abs(f[-1]) * (2**n) * norm
    k = 1
    while p**k <= bound:
        k += 1
    M = p**k
    lifted = hensel_lift(f, modular, p, k)

    out = []
    remaining = list(range(len(lifted)))
    g_rest = list(f)
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for subset in combinations(remaining, size):
            lc = g_rest[-1]
            cand = [c * lc % M for c in reduce(lambda a, b: _mul(a, b, M), [lifted[i] for i in subset])]
            cand = _primitive(_symmetric(cand, M))
            q = _int_divides(cand, g_rest)
            if q is not None:
                out.append(cand)
                g_rest = _primitive(q)
                remaining = [i for i in remaining if i not in subset]
                found = True
                break
        if not found:
            size += 1
    out.append(g_rest)
    return out


# --- public interface on Poly ---


def _to_int_list(p: Poly) -> list[int]:
    _, prim = p.primitive()
    return [int(c) for c in prim.coeffs]


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree factors with multiplicities."""
    if p.degree() < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out, i = [], 1
    while b.degree() > 0:
        g = poly_gcd(b, d)
        if g.degree() > 0:
            out.append((g, i))
        b = b // g
        d = (d // g) - b.derivative()
        i += 1
    return out


def factor_rational(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of a rational polynomial over Q with multiplicities.

    Sorted by degree, then coefficients.  The product of factor^mult equals p
    divided by its leading coefficient.
    """
    out = []
    for sq, m in squarefree_decomposition(p):
        ints = _to_int_list(sq)
        # strip the factor x first so the modular machinery sees f(0) != 0
        if ints[0] == 0:
            out.append((Poly([0, 1]), m))
            ints = ints[1:]
        for f in factor_squarefree_int(ints):
            if len(f) > 1:
                out.append((Poly([Fraction(c) for c in f]).monic(), m))
    out.sort(key=lambda fm: (fm[0].degree(), [float(c) for c in fm[0].coeffs]))
    return out


def factor_squarefree(p: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """(constant, [(monic irreducible factor, multiplicity)]) with p = const * prod."""
    if not p:
        raise ValueError("factorization of the zero polynomial")
    return p.lc(), factor_rational(p)


def rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, sorted increasingly."""
    out = [(-f[0], m) for f, m in factor_rational(p) if f.degree() == 1]
    out.sort()
    return out


def irreducible_over_q(p: Poly) -> bool:
    f = factor_rational(p)
    return len(f) == 1 and f[0][1] == 1
