"""Reference computations that share no code path with the library kernels."""

from __future__ import annotations

import cmath
import itertools
import math
from functools import lru_cache

import sympy

from nichols_forge.scalars import CyclotomicNumber, root_of_unity


def q_integer_factorial_vanishes(q: complex, m: int) -> bool:
    """(m)_q! = 0, with (k)_q = 1 + q + ... + q^(k-1), numerically."""
    fact = 1.0 + 0j
    for k in range(1, m + 1):
        fact *= sum(q**j for j in range(k))
    return abs(fact) < 1e-9


def rank_one_dims(q_exponent: int, n: int, cutoff: int = 20) -> list[int]:
    """dim B(kv)_m = 1 until (m)_q! vanishes; then 0."""
    q = cmath.exp(2j * math.pi * q_exponent / n)
    dims = [1]
    for m in range(1, cutoff + 1):
        dims.append(0 if q_integer_factorial_vanishes(q, m) else 1)
        if dims[-1] == 0:
            break
    return dims


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def pbw_series_type_a(rank: int, E: list[list[int]], n: int) -> list[int]:
    """Hilbert series prod over positive roots alpha of (1 + t^h + ... + t^((N-1)h)).

    Positive roots of type A are the sums alpha_i + ... + alpha_j; h is the
    height and N the order of q_alpha,alpha = prod zeta^(E_ab c_a c_b).
    """
    series = [1]
    for i in range(rank):
        for j in range(i, rank):
            c = [1 if i <= k <= j else 0 for k in range(rank)]
            e = sum(E[a][b] * c[a] * c[b] for a in range(rank) for b in range(rank)) % n
            N = n // math.gcd(n, e) if e else None
            if N is None:
                raise ValueError("infinite root vector")
            h = j - i + 1
            factor = [0] * ((N - 1) * h + 1)
            for k in range(N):
                factor[k * h] = 1
            series = _poly_mul(series, factor)
    return series


def expand_polynomial(factors: list[list[int]]) -> list[int]:
    out = [1]
    for f in factors:
        out = _poly_mul(out, f)
    return out


# --- brute-force pairing through the bosonization -------------------------------------


def _bosonization_coproduct(word, f_of, g_of, tau0_exp, n):
    """Delta(v_a1 ... v_am) in (B(V)#F) (x) (B(V)#F) as {((u1, f1), (u2, f2)): exponent list}.

    Each factor is v_a (x) 1 + f_a (x) v_a; a group element f moved past v_b
    picks up tau0(f, g_b).  Terms are kept as lists of root exponents.
    """
    zero = None
    terms = {((), zero, (), zero): [0]}
    for a in word:
        new = {}
        for (u1, f1, u2, f2), exps in terms.items():
            # v_a (x) 1: left factor u1 f1 v_a = tau0(f1, g_a) u1 v_a f1
            e_left = tau0_exp(f1, g_of(a)) if f1 is not None else 0
            key = (u1 + (a,), f1, u2, f2)
            new.setdefault(key, []).extend((x + e_left) % n for x in exps)
            # f_a (x) v_a: left gains f_a on the right, right gains v_a
            e_right = tau0_exp(f2, g_of(a)) if f2 is not None else 0
            nf1 = f_of(a) if f1 is None else tuple(x + y for x, y in zip(f1, f_of(a)))
            key = (u1, nf1, u2 + (a,), f2)
            new.setdefault(key, []).extend((x + e_right) % n for x in exps)
        terms = new
    return terms


def brute_tau(x, y, f_of, g_of, tau0_exp, n) -> CyclotomicNumber:
    """tau(x, y) by tau(b, h w_j) = sum tau(b_1, w_j) tau(b_2, h) on the explicit coproduct.

    Group parts pair trivially against w-words (tau(f, w) = 0 kills all
    terms where a group element would meet a letter) so only the letters of
    each factor matter.
    """
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        return CyclotomicNumber.zero(n)
    if not y:
        return CyclotomicNumber.one(n)
    j = y[-1]
    total = CyclotomicNumber.zero(n)
    for (u1, _f1, u2, _f2), exps in _bosonization_coproduct(x, f_of, g_of, tau0_exp, n).items():
        if u1 != (j,):
            continue
        rest = brute_tau(u2, y[:-1], f_of, g_of, tau0_exp, n)
        if rest.is_zero():
            continue
        for e in exps:
            total = total + root_of_unity(n, e) * rest
    return total


def brute_tau_for(D):
    def f_of(i):
        return D.f(i)

    def g_of(i):
        return D.g(i)

    def tau0_exp(f, g):
        return D.tau0.exponent(f, g)

    def tau(x, y):
        return brute_tau(x, y, f_of, g_of, tau0_exp, D.n)

    return tau


# --- brute-force group scans ------------------------------------------------------------


def all_elements(orders):
    return [tuple(t) for t in itertools.product(*[range(o) for o in orders])]


def central_scan(D) -> set:
    """C by scanning every fg against the defining condition."""
    out = set()
    rf = D.F.rank
    for x in all_elements(D.F.orders + D.G.orders):
        f, g = x[:rf], x[rf:]
        if all(
            (D.tau0.exponent(f, D.g(i)) + D.tau0.exponent(D.f(i), g)) % D.n == 0
            for i in range(D.size)
        ):
            out.add(x)
    return out


def generated_scan(orders, gens) -> set:
    seen = {tuple(0 for _ in orders)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple((x + y) % o for x, y, o in zip(a, g, orders))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def orthogonal_scan(D, S: set) -> set:
    rf = D.F.rank
    out = set()
    for x in all_elements(D.F.orders + D.G.orders):
        ok = True
        for s in S:
            e = D.tau0.exponent(s[:rf], x[rf:]) + D.tau0.exponent(x[:rf], s[rf:])
            if e % D.n:
                ok = False
                break
        if ok:
            out.add(x)
    return out


@lru_cache(maxsize=None)
def cartan_determinant(name: str) -> int:
    from nichols_forge.double import parse_cartan_type

    return int(sympy.Matrix(parse_cartan_type(name)).det())
