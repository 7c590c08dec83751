# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer polynomial kernels (same API as _kernels_py)."""

from math import gcd as _igcd


cpdef list strip(list p):
    while p and p[len(p) - 1] == 0:
        p.pop()
    return p


cpdef object content(list p):
    cdef object g = 0
    cdef object c
    for c in p:
        g = _igcd(g, c)
        if g == 1:
            break
    return g


cpdef list primitive(list p):
    cdef object g = content(p)
    if g <= 1:
        return list(p)
    return [c // g for c in p]


cpdef list derivative(list p):
    cdef Py_ssize_t i
    return [i * p[i] for i in range(1, len(p))]


cpdef list mul(list a, list b):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef object ai
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    for i in range(na):
        ai = a[i]
        if ai:
            for j in range(nb):
                out[i + j] += ai * b[j]
    return out


cpdef list prem_pos(list a, list b):
    cdef list r = strip(list(a))
    cdef Py_ssize_t nb = len(b) - 1, i, shift, nr
    cdef object lb = b[nb]
    cdef int slb = 1 if lb > 0 else -1
    cdef object alb = lb * slb
    cdef object lr, f
    while r and len(r) - 1 >= nb:
        nr = len(r)
        lr = r[nr - 1]
        shift = nr - 1 - nb
        for i in range(nr - 1):
            r[i] = r[i] * alb
        f = slb * lr
        for i in range(nb):
            r[i + shift] = r[i + shift] - f * b[i]
        r.pop()
        strip(r)
    return r


cpdef list sturm_chain(list p):
    cdef list p0 = primitive(strip(list(p)))
    cdef list chain = [p0]
    cdef list p1 = primitive(derivative(p0))
    cdef list r
    if not p1:
        return chain
    chain.append(p1)
    while True:
        r = prem_pos(chain[len(chain) - 2], chain[len(chain) - 1])
        if not r:
            break
        chain.append(primitive([-c for c in r]))
    return chain


cpdef object eval_hom(list p, object num, object den):
    cdef Py_ssize_t n = len(p), i
    if n == 0:
        return 0
    cdef object r = p[n - 1]
    cdef object dp = 1
    for i in range(n - 2, -1, -1):
        dp = dp * den
        r = r * num + p[i] * dp
    return r


cpdef int sign_variations(list chain, object num, object den):
    cdef int count = 0, last = 0, s
    cdef object v
    cdef list q
    for q in chain:
        v = eval_hom(q, num, den)
        if v != 0:
            s = 1 if v > 0 else -1
            if last != 0 and s != last:
                count += 1
            last = s
    return count


cpdef int sign_variations_inf(list chain, bint positive):
    cdef int count = 0, last = 0, s
    cdef list q
    for q in chain:
        s = 1 if q[len(q) - 1] > 0 else -1
        if not positive and (len(q) - 1) % 2 == 1:
            s = -s
        if last != 0 and s != last:
            count += 1
        last = s
    return count


cpdef list exact_div(list a, list b):
    cdef list r = strip(list(a))
    cdef Py_ssize_t nb = len(b) - 1, shift, i
    cdef object lb = b[nb]
    cdef object c, rem
    if len(r) - 1 < nb:
        if r:
            raise ValueError("inexact polynomial division")
        return []
    cdef list q = [0] * (len(r) - nb)
    while r and len(r) - 1 >= nb:
        c, rem = divmod(r[len(r) - 1], lb)
        if rem:
            raise ValueError("inexact polynomial division")
        shift = len(r) - 1 - nb
        q[shift] = c
        for i in range(nb + 1):
            r[i + shift] = r[i + shift] - c * b[i]
        strip(r)
    if r:
        raise ValueError("inexact polynomial division")
    return q


cpdef list poly_gcd(list a, list b):
    a = primitive(strip(list(a)))
    b = primitive(strip(list(b)))
    cdef list g, r
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
    if g and g[len(g) - 1] < 0:
        g = [-c for c in g]
    return g


cpdef list squarefree_part(list p):
    p = primitive(strip(list(p)))
    if len(p) <= 2:
        return p
    cdef list g = poly_gcd(p, derivative(p))
    if len(g) == 1:
        return p
    return primitive(exact_div(p, g))


cpdef int count_real_roots(list p):
    cdef list q = squarefree_part(p)
    if len(q) <= 1:
        return 0
    cdef list chain = sturm_chain(q)
    return sign_variations_inf(chain, False) - sign_variations_inf(chain, True)


cpdef object bareiss_det(list m):
    cdef Py_ssize_t n = len(m), k, i, j
    if n == 0:
        return 1
    cdef list a = [list(row) for row in m]
    cdef int sign = 1
    cdef object prev = 1, akk, aik
    cdef list rowk, rowi
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
