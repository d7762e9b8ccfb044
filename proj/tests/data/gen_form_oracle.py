"""Coefficients rho_i / sigma_i of small linear forms via sympy.apart."""
from fractions import Fraction
import sympy as sp

t = sp.symbols('t')


def rising(i, k):
    r = 1
    for j in range(k):
        r *= i + j
    return r


def A(n, s, d):
    f = sp.Integer(2) ** ((6 * s + 12) * n + 2 * d)
    if d:
        f *= t + sp.Rational(n, 2)
    for j in range(n):
        f *= ((t + sp.Rational(4 * j + 1, 4)) * (t + sp.Rational(4 * j + 3, 4))) ** (s + 2)
    for l in range(n + 1):
        f /= (t + l) ** (2 * s + 4)
    return f


def B(n, s):
    f = sp.Integer(2) ** ((3 * s + 6) * n)
    for j in range(n):
        f *= (t + sp.Rational(4 * j + 3, 4)) ** (s + 2)
    for l in range(n + 1):
        f /= (t + l) ** (s + 2)
    return f


def coeffs(f, n, s, top):
    pf = sp.apart(sp.together(f), t, full=False)
    a = {}
    for term in sp.Add.make_args(pf):
        num, den = sp.fraction(sp.factor(term))
        base, e = sp.Pow(den, 1).as_base_exp()
        k = int(sp.Poly(base, t).all_coeffs()[1])
        a[(int(e), k)] = Fraction(str(num))
    out = [Fraction(0)] * (top + 1)
    sign = (-1) ** s
    for i in range(1, top + 1):
        total = sum((a.get((i, k), 0) for k in range(n + 1)), Fraction(0))
        out[i] = sign * rising(i, s + 1) * 4 ** (i + s) * total
        for k in range(1, n + 1):
            for l in range(k):
                out[0] -= sign * rising(i, s + 1) * a.get((i, k), 0) * Fraction(4 * l + 1, 4) ** -(i + s + 1)
    return out


for (kind, n, s, d) in [('S', 1, 0, 0), ('S', 1, 0, 1), ('S', 2, 0, 0), ('S', 2, 1, 1), ('T', 1, 0, 0), ('T', 2, 0, 0), ('T', 2, 1, 0)]:
    f = A(n, s, d) if kind == 'S' else B(n, s)
    top = 2 * s + 4 if kind == 'S' else s + 2
    c = coeffs(f, n, s, top)
    print(kind, n, s, d, ' '.join(str(x) for x in c))
