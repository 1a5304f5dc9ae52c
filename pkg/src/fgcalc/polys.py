"""Dense polynomials over a ring as ascending lists of :class:`RingElem`."""


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def add(p, q, ring):
    n = max(len(p), len(q))
    z = ring.zero
    return trim([(p[i] if i < len(p) else z) + (q[i] if i < len(q) else z)
                 for i in range(n)])


def sub(p, q, ring):
    return add(p, [-c for c in q], ring)


def mul(p, q, ring):
    if not p or not q:
        return []
    out = [ring.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_monic(p, h, ring):
    """Quotient and remainder of ``p`` by the monic polynomial ``h``."""
    n = len(h) - 1
    r = list(p)
    if len(r) <= n:
        return [], trim(r)
    q = [ring.zero] * (len(r) - n)
    for k in range(len(r) - 1, n - 1, -1):
        c = r[k]
        if not c:
            continue
        q[k - n] = c
        for j in range(n + 1):
            r[k - n + j] = r[k - n + j] - c * h[j]
    return trim(q), trim(r[:n])


def mod_monic(p, h, ring):
    return divmod_monic(p, h, ring)[1]


def from_roots(roots, ring):
    """Ascending coefficients of prod (t - c)."""
    p = [ring.one]
    for c in roots:
        p = mul(p, [-c, ring.one], ring)
    return p
