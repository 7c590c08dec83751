"""Pure-Python integer polynomial kernels.

Polynomials are lists of Python ints in ascending order of powers.  The
compiled module ``_kernels`` exposes exactly the same functions; the
dispatcher in ``kernels.py`` picks one at import time.
"""

from math import gcd as _igcd


def strip(p):
    """Drop trailing zero coefficients (in place) and return ``p``."""
    while p and p[-1] == 0:
        p.pop()
    return p


def content(p):
    g = 0
    for c in p:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


def primitive(p):
    """Divide by the positive content; the sign is kept."""
    g = content(p)
    if g <= 1:
        return list(p)
    return [c // g for c in p]


def derivative(p):
    return [i * p[i] for i in range(1, len(p))]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def prem_pos(a, b):
    """Pseudo-remainder scaled by a POSITIVE constant.

    Returns r with r = c * (a mod b) for some integer c > 0, so signs are
    preserved, which is what Sturm chains need.
    """
    r = list(a)
    strip(r)
    nb = len(b) - 1
    lb = b[-1]
    slb = 1 if lb > 0 else -1
    alb = lb * slb
    while len(r) - 1 >= nb and r:
        lr = r[-1]
        shift = len(r) - 1 - nb
        for i in range(len(r) - 1):
            r[i] *= alb
        for i in range(nb):
            r[i + shift] -= slb * lr * b[i]
        r.pop()
        strip(r)
    return r


def sturm_chain(p):
    """Primitive Sturm chain of ``p`` (expects deg p >= 1)."""
    p0 = primitive(strip(list(p)))
    chain = [p0]
    p1 = primitive(derivative(p0))
    if not p1:
        return chain
    chain.append(p1)
    while True:
        r = prem_pos(chain[-2], chain[-1])
        if not r:
            break
        chain.append(primitive([-c for c in r]))
    return chain


def eval_hom(p, num, den):
    """sum p[i] num^i den^(n-i); same sign as p(num/den) when den > 0."""
    n = len(p)
    if n == 0:
        return 0
    r = p[n - 1]
    dp = 1
    for i in range(n - 2, -1, -1):
        dp *= den
        r = r * num + p[i] * dp
    return r


def sign_variations(chain, num, den):
    count = 0
    last = 0
    for q in chain:
        v = eval_hom(q, num, den)
        if v != 0:
            s = 1 if v > 0 else -1
            if last != 0 and s != last:
                count += 1
            last = s
    return count


def sign_variations_inf(chain, positive):
    count = 0
    last = 0
    for q in chain:
        lc = q[-1]
        s = 1 if lc > 0 else -1
        if not positive and (len(q) - 1) % 2 == 1:
            s = -s
        if last != 0 and s != last:
            count += 1
        last = s
    return count


def exact_div(a, b):
    """Exact quotient a / b in Z[x]; raises ValueError if not exact."""
    r = strip(list(a))
    nb = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < nb:
        if r:
            raise ValueError("inexact polynomial division")
        return []
    q = [0] * (len(r) - nb)
    while r and len(r) - 1 >= nb:
        lr = r[-1]
        c, rem = divmod(lr, lb)
        if rem:
            raise ValueError("inexact polynomial division")
        shift = len(r) - 1 - nb
        q[shift] = c
        for i in range(nb + 1):
            r[i + shift] -= c * b[i]
        strip(r)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def poly_gcd(a, b):
    """Primitive gcd in Z[x] with positive leading coefficient."""
    a = primitive(strip(list(a)))
    b = primitive(strip(list(b)))
    if not a:
        g = b
    elif not b:
        g = a
    else:
        if len(a) < len(b):
            a, b = b, a
        while b:
            r = prem_pos(a, b)
            a = b
            b = primitive(r)
        g = a
    if g and g[-1] < 0:
        g = [-c for c in g]
    return g


def squarefree_part(p):
    p = primitive(strip(list(p)))
    if len(p) <= 2:
        return p
    g = poly_gcd(p, derivative(p))
    if len(g) == 1:
        return p
    return primitive(exact_div(p, g))


def count_real_roots(p):
    """Number of distinct real roots of a nonzero integer polynomial."""
    q = squarefree_part(p)
    if len(q) <= 1:
        return 0
    chain = sturm_chain(q)
    return sign_variations_inf(chain, False) - sign_variations_inf(chain, True)


def bareiss_det(m):
    """Fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]
