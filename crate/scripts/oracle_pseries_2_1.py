"""Brute-force oracle for the [i]-series residue table at (p, n) = (2, 1).

The 2-typical logarithm with v_1 = u1, v_2 = 1 is built with exact
fractions in Q[u1][[x]], [i](x) solves L([i](x)) = i L(x) by fixed-point
iteration, and each residue is reduced mod 2, with u1 set to zero for the
top ideal, and truncated above x^(2^k).  Output lines are "i k residue" with
terms ordered by x-degree then u1-degree, rendered as u1^s*x^t.
"""

from fractions import Fraction

P, N = 2, 1
DEG = P ** (N + 1)


def pmul(a, b):
    out = {}
    for (i, s), c in a.items():
        for (j, t), e in b.items():
            if i + j <= DEG:
                k = (i + j, s + t)
                out[k] = out.get(k, 0) + c * e
    return {k: v for k, v in out.items() if v}


def padd(a, b, scale=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def log_coeffs():
    m = [{(0, 0): Fraction(1)}]
    for j in range(1, N + 2):
        acc = {}
        for i in range(j):
            k = j - i
            if k <= N:
                v = {(0, P ** i): Fraction(1)}
            elif k == N + 1:
                v = {(0, 0): Fraction(1)}
            else:
                v = {}
            acc = padd(acc, pmul(m[i], v))
        m.append({key: val / P for key, val in acc.items()})
    return m


def log_of(m, s):
    out, power, e = {}, {(0, 0): Fraction(1)}, 0
    for j, mj in enumerate(m):
        while e < P ** j:
            power = pmul(power, s)
            e += 1
        out = padd(out, pmul(mj, power))
    return out


def i_series(m, i):
    x = {(1, 0): Fraction(1)}
    target = {k: i * v for k, v in log_of(m, x).items()}
    s = {k: i * v for k, v in x.items()}
    for _ in range(DEG + 2):
        s = padd(s, padd(log_of(m, s), target, -1), -1)
    return s


def residue(series, k):
    out = {}
    for (t, s), c in series.items():
        if t > P ** k or (k == N + 1 and s > 0):
            continue
        assert c.denominator % P != 0
        r = c.numerator * pow(c.denominator, -1, P) % P
        if r:
            out[(t, s)] = r
    return out


def render(res):
    terms = []
    for (t, s) in sorted(res):
        parts = []
        if s:
            parts.append("u1" if s == 1 else f"u1^{s}")
        if t:
            parts.append("x" if t == 1 else f"x^{t}")
        mono = "*".join(parts)
        c = res[(t, s)]
        terms.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def main():
    m = log_coeffs()
    for i in range(P * P + 2):
        s = i_series(m, i)
        for k in range(1, N + 2):
            print(i, k, render(residue(s, k)))


if __name__ == "__main__":
    main()
