#!/usr/bin/env python3
"""Independent cross-checks in plain Python (fractions only).

Rebuilds a few of the toolkit's headline numbers from the reference matrices
without sharing any code with the C++ library, and prints one line per fact.
Exit status is non-zero if any fact disagrees with the value pinned here.
"""

from fractions import Fraction as Fr
from itertools import product
import sys

failures = 0


def fact(name, got, want):
    global failures
    ok = got == want
    failures += not ok
    print(f"{'ok  ' if ok else 'FAIL'} {name}: {got}" + ("" if ok else f" (want {want})"))


# --- R1 = F3[t]/(t^2), elements (x0, x1) -----------------------------------

def r(x0, x1=0):
    return (x0 % 3, x1 % 3)


def radd(a, b):
    return r(a[0] + b[0], a[1] + b[1])


def rmul(a, b):
    return r(a[0] * b[0], a[0] * b[1] + a[1] * b[0])


def mat(rows):
    return tuple(tuple(r(*e) if isinstance(e, tuple) else r(e) for e in row) for row in rows)


def mmul(x, y):
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = r(0)
            for k in range(3):
                acc = radd(acc, rmul(x[i][k], y[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


ONE = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def order(g):
    p, n = g, 1
    while p != ONE:
        p, n = mmul(p, g), n + 1
    return n


def inv(g):
    return mpow(g, order(g) - 1)


def mpow(g, n):
    p = ONE
    for _ in range(n):
        p = mmul(p, g)
    return p


def word(*gs):
    p = ONE
    for g in gs:
        p = mmul(p, g)
    return p


def comm(a, b):
    return word(inv(a), inv(b), a, b)


def conjg(a, d):
    return word(inv(d), a, d)


t = (0, 1)
z = mat([[(1, 1), 0, 0], [0, (1, 1), 0], [0, 0, (1, 1)]])
u = mat([[1, 1, 0], [0, 1, 0], [0, 0, (1, -1)]])
w = mat([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
b1 = mat([[1, 0, t], [0, 1, 0], [0, 0, 1]])
b2 = mat([[1, 0, 0], [0, 1, t], [0, 0, 1]])
c1 = mat([[1, t, 1], [0, 1, 0], [0, (0, -1), 1]])
c2 = mat([[1, 0, 0], [(0, -1), 1, 1], [t, 0, 1]])
d1 = mat([[(1, 1), 0, 0], [0, 1, 0], [0, 0, 1]])
d2 = mat([[1, 0, 0], [0, (1, 1), 0], [0, 0, 1]])
rho = mat([[0, (-1, 1), (0, -1)], [(1, -1), (-1, -1), (1, 1)], [0, (0, -1), (1, 1)]])
tau = mat([[(1, 1), (1, -1), (1, 1)], [0, (1, 1), 0], [0, (0, -1), (1, 1)]])

fact("order(w)", order(w), 4)
fact("orders of z u b1 b2 c1 c2 d1 d2", sorted({order(g) for g in (z, u, b1, b2, c1, c2, d1, d2)}), [3])
fact("c2^u == b1^-1 c1^-1 c2", conjg(c2, u) == word(inv(b1), inv(c1), c2), False)
fact("c2^u == b1^-1 c1^-1 c2 z^-1", conjg(c2, u) == word(inv(b1), inv(c1), c2, inv(z)), True)
d12 = mmul(d1, d2)
fact("rho word", rho == word(inv(b1), c2, w, inv(u), inv(d12)), True)
fact("tau word", tau == word(inv(z), c1, u, inv(d12)), True)
x = word(tau, rho, tau, rho, rho, tau, rho, inv(tau))
y = word(rho, tau, rho, inv(tau), rho, tau, rho, tau)
fact("[x, y] == b1", comm(x, y) == b1, False)
fact("[x, y] == b1^-1", comm(x, y) == inv(b1), True)
fact("x y x^-1 y^-1 == b1^-1", word(x, y, inv(x), inv(y)) == inv(b1), True)

# --- K = Q(l), l^2 = l - 4; elements (a, b) meaning a + b l ------------------


def kadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def kmul(x, y):
    bd = x[1] * y[1]
    return (x[0] * y[0] - 4 * bd, x[0] * y[1] + x[1] * y[0] + bd)


def kconj(x):
    return (x[0] + x[1], -x[1])


def k(a, b=0):
    return (Fr(a), Fr(b))


L, LB = k(0, 1), k(1, -1)
lp2, lbp2 = kadd(L, k(2)), kadd(LB, k(2))
Q = [[k(10), kmul(k(-2), lp2), lp2], [kmul(k(-2), lbp2), k(10), kmul(k(-2), lp2)], [lbp2, kmul(k(-2), lbp2), k(10)]]


def kdet(m):
    def m2(a, b, c, d):
        return kadd(kmul(a, d), kmul(k(-1), kmul(b, c)))
    s = k(0)
    for j, sign in ((0, 1), (1, -1), (2, 1)):
        cols = [c for c in range(3) if c != j]
        minor = m2(m[1][cols[0]], m[1][cols[1]], m[2][cols[0]], m[2][cols[1]])
        s = kadd(s, kmul(k(sign), kmul(m[0][j], minor)))
    return s


fact("det Q", kdet(Q), k(300))
minors = k(0)
for i, j in ((0, 1), (0, 2), (1, 2)):
    minors = kadd(minors, kadd(kmul(Q[i][i], Q[j][j]), kmul(k(-1), kmul(Q[i][j], Q[j][i]))))
fact("sum of principal 2x2 minors of Q", minors, k(210))

# 2-adic embedding: root of X^2 - X + 4 with positive valuation, mod 2^64.
BITS = 64
MOD = 1 << BITS
root = 0
for bit in range(BITS):
    for cand in (root, root | (1 << bit)):
        if (cand * cand - cand + 4) % (1 << (bit + 1)) == 0 and cand % 4 == 0:
            root = cand
            break
fact("l mod 32 in Z_2", root % 32, 20)


def val_p(x):
    a, b = x
    if a == 0 and b == 0:
        return None
    den = a.denominator * b.denominator
    e = 0
    while den % 2 == 0:
        den //= 2
        e += 1
    assert den == 1
    n = (int(a * (1 << e)) + int(b * (1 << e)) * root) % MOD
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v - e


fact("val_p(l)", val_p(L), 2)
fact("val_p(lbar)", val_p(LB), 0)

# --- the short-vector set V and the stabilizer ------------------------------

TAU = [[k(0), k(-1), k(0, Fr(1, 2))], [k(1), k(-1), k(1, Fr(1, 2))], [k(0), k(0), k(1)]]


def apply(m, v):
    return [kadd(kadd(kmul(m[i][0], v[0]), kmul(m[i][1], v[1])), kmul(m[i][2], v[2])) for i in range(3)]


def in_half_lattice(x):
    a, b = x
    return a.denominator == 1 and (2 * b).denominator == 1


def pair(x, y):
    qy = apply(Q, y)
    s = k(0)
    for i in range(3):
        s = kadd(s, kmul(kconj(x[i]), qy[i]))
    return s


TAU2 = [[None] * 3 for _ in range(3)]
for i in range(3):
    for j in range(3):
        s = k(0)
        for m in range(3):
            s = kadd(s, kmul(TAU[i][m], TAU[m][j]))
        TAU2[i][j] = s

V = []
for a1, a2, a3, c1_, c2_, c3_ in product(range(-2, 3), repeat=6):
    if (a1, a2, a3) == (0, 0, 0):
        continue
    v = [k(a1, Fr(c1_, 2)), k(a2, Fr(c2_, 2)), k(a3, Fr(c3_, 2))]
    if pair(v, v) != k(10):
        continue
    if all(in_half_lattice(e) for e in apply(TAU, v) + apply(TAU2, v)):
        V.append(v)
fact("|V|", len(V), 24)

target12, target13 = Q[0][1], Q[0][2]
stab = 0
for v2 in V:
    firsts = [v for v in V if pair(v, v2) == target12]
    thirds = [v for v in V if pair(v2, v) == target12]
    for v1 in firsts:
        for v3 in thirds:
            if pair(v1, v3) != target13:
                continue
            g = [[v1[i], v2[i], v3[i]] for i in range(3)]
            if val_p(kdet(g)) == 0:
                stab += 1
fact("stabilizer size", stab, 6)

# --- the division algebra ---------------------------------------------------
# L = K(e), e^3 = 3e - 1; elements are 3 K-coefficients. D = L + L Pi + L Pi^2.


def ladd(x, y):
    return tuple(kadd(a, b) for a, b in zip(x, y))


def lmul(x, y):
    d = [k(0)] * 5
    for i in range(3):
        for j in range(3):
            d[i + j] = kadd(d[i + j], kmul(x[i], y[j]))
    neg = lambda q: kmul(k(-1), q)  # noqa: E731
    return (kadd(d[0], neg(d[3])), kadd(kadd(d[1], kmul(k(3), d[3])), neg(d[4])), kadd(d[2], kmul(k(3), d[4])))


def lsigma(x):
    # e -> e^2 - 2, e^2 -> 4 - e - e^2
    c0, c1, c2 = x
    return (kadd(kadd(c0, kmul(k(-2), c1)), kmul(k(4), c2)), kmul(k(-1), c2), kadd(c1, kmul(k(-1), c2)))


def lk(q):
    return (q, k(0), k(0))


MU = (Fr(-1), Fr(1, 4))  # l^2 / 4 = (l - 4) / 4
MUBAR = kconj(MU)


def dmul(x, y):
    out = [lk(k(0))] * 3
    for i in range(3):
        for j in range(3):
            yj = y[j]
            for _ in range(i):
                yj = lsigma(yj)
            term = lmul(x[i], yj)
            if i + j >= 3:
                term = lmul(term, lk(MU))
            out[(i + j) % 3] = ladd(out[(i + j) % 3], term)
    return tuple(out)


def dstar(x):
    ps = (lk(k(0)), lk(k(0)), lk(MUBAR))
    pstar = [(lk(k(1)), lk(k(0)), lk(k(0))), ps, dmul(ps, ps)]
    out = (lk(k(0)),) * 3
    for i in range(3):
        ci = tuple(kconj(c) for c in x[i])
        term = dmul(pstar[i], (ci, lk(k(0)), lk(k(0))))
        out = tuple(ladd(a, b) for a, b in zip(out, term))
    return out


def basis(idx, scale_lbar):
    i, c, kk = idx // 6, (idx % 6) // 2, idx % 2
    coeff = [k(0)] * 3
    coeff[c] = k(1) if kk == 0 else L
    z = tuple(coeff)
    if scale_lbar and i > 0:
        z = lmul(z, lk(LB))
    out = [lk(k(0))] * 3
    out[i] = z
    return tuple(out)


def coords(x):
    return [x[i][c][kk] for i in range(3) for c in range(3) for kk in range(2)]


def trace(x):
    return sum(coords(dmul(x, basis(idx, False)))[idx] for idx in range(18))


def qdet(m):
    m = [row[:] for row in m]
    n, det = len(m), Fr(1)
    for col in range(n):
        piv = next((r_ for r_ in range(col, n) if m[r_][col] != 0), None)
        if piv is None:
            return Fr(0)
        if piv != col:
            m[piv], m[col] = m[col], m[piv]
            det = -det
        det *= m[col][col]
        for r_ in range(col + 1, n):
            f = m[r_][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r_][c] -= f * m[col][c]
    return det


def nu2(q):
    n, d, v = q.numerator, q.denominator, 0
    while n % 2 == 0:
        n //= 2
        v += 1
    while d % 2 == 0:
        d //= 2
        v -= 1
    return v


B = (lk(kadd(LB, kmul(k(-1), L))), lk(kmul(k(-1), LB)), lk(LB))
O = [basis(i, True) for i in range(18)]
psi_gram = [[trace(dmul(dmul(dstar(a), B), b_)) for b_ in O] for a in O]
trace_gram = [[trace(dmul(a, b_)) for b_ in O] for a in O]
fact("nu2 det psi-Gram on O_D", nu2(qdet(psi_gram)), 24)
fact("nu2 det trace Gram on O_D", nu2(qdet(trace_gram)), 24)
fact("psi alternating on O_D", all(psi_gram[i][j] == -psi_gram[j][i] for i in range(18) for j in range(18)), True)

sys.exit(1 if failures else 0)
