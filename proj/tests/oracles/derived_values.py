"""Independent brute-force values frozen into the C++ tests.

Everything here is computed from first principles with residues modulo p^N
and plain partial sums; none of the library's closed forms are used.
"""
from fractions import Fraction as F
import math


def val(x, p, cap):
    """p-adic valuation of an integer, capped."""
    if x == 0:
        return cap
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def power_over_ball(q, alpha, n, terms=400):
    # shells |x| = q^-j, j >= -n, measure (1 - 1/q) q^-j
    return sum((1 - 1 / q) * q ** (-j) * q ** (-j * (alpha - 1)) for j in range(-n, -n + terms))


def shifted_sphere_bruteforce(p, alpha, depth=18):
    # int_{|x|=1} |x - 1|^(alpha-1) dx over Z_p, cosets mod p^depth, closed tail for the cell at 1
    total = 0.0
    cell = p ** (-depth)
    for x in range(p ** depth):
        if x % p == 0 or x == 1:
            continue
        v = val(x - 1, p, depth)
        total += cell * p ** (-v * (alpha - 1))
    # the cell x = 1 (mod p^depth): int_{|y| <= p^-depth} |y|^(alpha-1) dy
    total += sum((1 - 1 / p) * p ** (-j) * p ** (-j * (alpha - 1)) for j in range(depth, depth + 400))
    return total


def constants(q, a):
    c = (1 - q ** a) / (1 - q ** (-a - 1))
    d = (1 - q ** (-a)) / (1 - q ** (a - 1)) if a != 1 else None
    return c, d


def kernel(q, g, j):
    if j <= 0:
        return 0.0
    if g == 1:
        return (1 / (q - 1) + j) * math.log(q)
    return 1 - (1 - 1 / q) / (1 - q ** (-g)) * q ** (-j * (g - 1))


def residual_ball3(depth=9):
    """||D_eps D^-1/2 phi - phi||_1 for phi = 1_{|x| <= 1/8}, q = 2, nu = 1.

    Averaging form: cd sum_j R_j int_{|tau| = 2^-j} phi(x - 2 tau) d tau,
    evaluated by enumerating x and tau modulo 2^depth (phi is constant on
    cosets of 8 Z_2, so depth 9 resolves everything up to the closed tail).
    """
    q, g = 2, 0.5
    c, d = constants(q, g)
    cd = c * d
    total = 0.0
    # x ranges over Z_2 / 2^depth (the residual lives in |x| <= 1/4 at nu = 1)
    mod = 2 ** depth
    for x in range(mod):
        acc = 0.0
        for j in range(1, depth):
            # tau with |tau| = 2^-j, tau = 2^j u, u odd, cells of size 2^-depth
            count = 0
            hits = 0
            for t in range(0, mod, 2 ** j):
                if val(t, 2, depth) != j:
                    continue
                count += 1
                if val((x - 2 * t) % mod, 2, depth) >= 3:
                    hits += 1
            acc += kernel(q, g, j) * hits / mod
        # shells j >= depth: |2 tau| <= 2^-depth-1, phi(x - 2 tau) = phi(x)
        phi_x = 1.0 if val(x, 2, depth) >= 3 else 0.0
        acc += phi_x * sum(kernel(q, g, j) * 0.5 * 2.0 ** (-j) for j in range(depth, depth + 200))
        total += abs(cd * acc - phi_x) / mod
    return total


if __name__ == "__main__":
    print("power_over_ball(2, 3/2, 0) =", repr(power_over_ball(2, 1.5, 0)))
    print("shifted_sphere(2, 1/2)     =", repr(shifted_sphere_bruteforce(2, 0.5)))
    c, d = constants(2, 0.5)
    print("c d (q=2, 1/2)             =", repr(c * d))
    c, d = constants(2, 2)
    print("c2, d2 (q=2)               =", F(c).limit_denominator(1000), F(d).limit_denominator(1000))
    c1 = (1 - 2) / (1 - 2 ** -2)
    d1 = (1 - 2) / (2 * math.log(2))
    print("R1 (q=2, gamma=1, j=1)     =", repr(c1 * d1 * kernel(2, 1, 1)))
    print("R (q=2, gamma=1/2, j=1)    =", repr(kernel(2, 0.5, 1)))
    print("residual 1_{B3}, nu=1      =", repr(residual_ball3()))
    c, d = constants(2, 0.5)
    print("bound 1_{B3}, nu=1         =", repr(c * d * kernel(2, 0.5, 1) * 0.25 * 0.25))
