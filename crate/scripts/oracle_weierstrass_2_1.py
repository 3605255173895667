"""Brute-force oracle for the distinguished factor g of the 2-series at
(p, n) = (2, 1), modulo u^8.

The 2-typical logarithm with v_1 = u, v_2 = 1 is built with exact
fractions, [2](x) solves L([2](x)) = 2 L(x) by fixed-point iteration, and
h = [2](a)/a^2 is reduced mod 2.  Every monic g = a^2 + g1 a + g0 with
g0, g1 in u F_2[u]/(u^8) is then tested by polynomial division: g is the
factor iff h mod g vanishes mod u^8.  Coefficients are printed low to high.
"""

from fractions import Fraction

P, U_PREC, DEG = 2, 8, 24


def pmul(a, b):
    """Product of dicts {(x_exp, u_exp): Fraction} truncated in both."""
    out = {}
    for (i, s), c in a.items():
        for (j, t), e in b.items():
            if i + j <= DEG and s + t < U_PREC:
                k = (i + j, s + t)
                out[k] = out.get(k, 0) + c * e
    return {k: v for k, v in out.items() if v}


def padd(a, b, scale=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def log_coeffs():
    # p m_j = sum_{i<j} m_i v_{j-i}^{p^i}, v_1 = u, v_2 = 1.
    m = [{(0, 0): Fraction(1)}]
    j = 1
    while P ** j <= DEG:
        acc = {}
        for i in range(j):
            k = j - i
            if k == 1:
                v = {(0, P ** i): Fraction(1)} if P ** i < U_PREC else {}
            elif k == 2:
                v = {(0, 0): Fraction(1)}
            else:
                v = {}
            acc = padd(acc, pmul(m[i], v))
        m.append({key: val / P for key, val in acc.items()})
        j += 1
    return m


def compose_log(m, s):
    out = {}
    exps = [P ** j for j in range(len(m))]
    cache = {1: s}
    cur = s
    for e in range(2, max(exps) + 1):
        cur = pmul(cur, s)
        cache[e] = cur
    for j, mj in enumerate(m):
        out = padd(out, pmul(mj, cache[exps[j]]))
    return out


def two_series():
    m = log_coeffs()
    x = {(1, 0): Fraction(1)}
    target = {k: 2 * v for k, v in compose_log(m, x).items()}
    s = {k: 2 * v for k, v in x.items()}
    for _ in range(DEG + 2):
        # s <- s - (L(s) - target), converges one degree per pass
        s = padd(s, padd(compose_log(m, s), target, -1), -1)
    return s


def to_f2(series):
    out = {}
    for (i, t), c in series.items():
        assert c.denominator % 2 == 1, "non-integral coefficient"
        if c.numerator % 2:
            out[i] = out.get(i, 0) ^ (1 << t)
    return out


MASK = (1 << U_PREC) - 1


def f2mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r & MASK


def main():
    h2 = to_f2(two_series())
    assert all(i >= 2 for i in h2)
    h = {i - 2: c for i, c in h2.items()}
    found = []
    for g0 in range(0, 1 << U_PREC, 2):
        for g1 in range(0, 1 << U_PREC, 2):
            # a^j mod g as (r0, r1); a^2 = g1 a + g0 in characteristic 2
            r0, r1 = 1, 0
            acc0 = acc1 = 0
            for j in range(DEG - 1):
                c = h.get(j, 0)
                acc0 ^= f2mul(c, r0)
                acc1 ^= f2mul(c, r1)
                r0, r1 = f2mul(r1, g0), r0 ^ f2mul(r1, g1)
            if acc0 == 0 and acc1 == 0:
                found.append((g0, g1))
    assert len(found) == 1, found
    g0, g1 = found[0]
    for name, bits in (("g0", g0), ("g1", g1)):
        terms = [("1" if t == 0 else ("u" if t == 1 else f"u^{t}")) for t in range(U_PREC) if bits >> t & 1]
        print(f"{name} = {' + '.join(terms) or '0'}")


if __name__ == "__main__":
    main()
