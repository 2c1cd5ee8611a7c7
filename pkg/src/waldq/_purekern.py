"""Raw exact-arithmetic kernels (pure Python reference implementation).

A *raw* Laurent polynomial over F_q is a pair ``(offset, coeffs)``: ``coeffs``
is a tuple of ints in ``[0, q)`` whose first and last entries are nonzero, and
the pair denotes ``sum(coeffs[i] * t**(offset + i))``.  Zero is ``(0, ())``.

The batch kernels at the bottom (``rel_pos``, ``canon``, ``sublattices``,
``sym_diag``, ``sym_normal_cert``) have a compiled twin in
``waldq._fastkern`` with identical contracts; ``waldq.backend`` selects
between the two at import time.  Everything here is exact: no global
truncation, and unit inverses are produced to an explicit finite precision
that each caller derives from valuations.
"""

from __future__ import annotations

NAME = "pure"

INF = 1 << 60  # valuation of the zero polynomial
PZERO = (0, ())


def pnorm(q, off, co):
    """Normalize a coefficient list into a raw poly (mod q, trim zero fringes)."""
    co = [c % q for c in co]
    lo, hi = 0, len(co)
    while lo < hi and co[lo] == 0:
        lo += 1
    while hi > lo and co[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return PZERO
    return (off + lo, tuple(co[lo:hi]))


def pval(p):
    return p[0] if p[1] else INF


def pconst(q, c):
    c %= q
    return ((0, (c,)) if c else PZERO)


def pshift(p, k):
    return (p[0] + k, p[1]) if p[1] else PZERO


def padd(q, x, y):
    xo, xc = x
    yo, yc = y
    if not xc:
        return y
    if not yc:
        return x
    off = min(xo, yo)
    acc = [0] * (max(xo + len(xc), yo + len(yc)) - off)
    for i, c in enumerate(xc):
        acc[xo - off + i] = c
    for i, c in enumerate(yc):
        acc[yo - off + i] += c
    return pnorm(q, off, acc)


def pneg(q, x):
    return (x[0], tuple(q - c if c else 0 for c in x[1])) if x[1] else PZERO


def psub(q, x, y):
    return padd(q, x, pneg(q, y))


def pmul(q, x, y):
    xo, xc = x
    yo, yc = y
    if not xc or not yc:
        return PZERO
    acc = [0] * (len(xc) + len(yc) - 1)
    for i, a in enumerate(xc):
        if a:
            for j, b in enumerate(yc):
                acc[i + j] += a * b
    return pnorm(q, xo + yo, acc)


def pconstmul(q, x, c):
    c %= q
    if not c or not x[1]:
        return PZERO
    return (x[0], tuple(c * a % q for a in x[1]))


def ptrunc(x, k):
    """Drop every term of exponent >= k."""
    xo, xc = x
    if not xc or xo + len(xc) <= k:
        return x
    if xo >= k:
        return PZERO
    co = list(xc[: k - xo])
    while co and co[-1] == 0:
        co.pop()
    return (xo, tuple(co)) if co else PZERO


def pinv_unit(q, x, prec):
    """Inverse of a valuation-0 unit modulo t^prec (prec >= 1)."""
    xc = x[1]
    u0 = pow(xc[0], q - 2, q)
    out = [u0] + [0] * (prec - 1)
    for n in range(1, prec):
        s = 0
        for i in range(1, min(n, len(xc) - 1) + 1):
            s += xc[i] * out[n - i]
        out[n] = (-u0 * s) % q
    return pnorm(q, 0, out)


def psqrt_unit(q, x, prec):
    """Square root of a valuation-0 unit whose residue is a square, mod t^prec.

    Digit-by-digit Hensel lift; the smaller of the two residue roots is taken
    so the result is deterministic.  The residue must be a nonzero square.
    """
    xc = x[1]
    x0 = xc[0]
    s0 = 0
    for s in range(1, q):
        if s * s % q == x0:
            s0 = min(s, q - s)
            break
    if s0 == 0:
        raise ValueError("residue is not a nonzero square")
    inv2s = pow(2 * s0 % q, q - 2, q)
    out = [s0] + [0] * (prec - 1)
    for n in range(1, prec):
        xn = xc[n] if n < len(xc) else 0
        s = 0
        for i in range(1, n):
            s += out[i] * out[n - i]
        out[n] = (xn - s) * inv2s % q
    return pnorm(q, 0, out)


def issquare(q, r):
    """Is r a nonzero square residue mod the odd prime q?"""
    return r % q != 0 and pow(r, (q - 1) // 2, q) == 1


# ---------------------------------------------------------------------------
# batch kernels (compiled twin: waldq._fastkern)
# ---------------------------------------------------------------------------


def rel_pos(q, a1, b1, c1, a2, b2, c2):
    """Cartan invariant (r1 >= r2) of the transition between canonical triples.

    The triples describe lattices with bases (t^a, 0), (c, t^b); the invariant
    is the pair of elementary-divisor exponents of the transition matrix,
    larger first.
    """
    s = psub(q, pshift(c2, b1), pshift(c1, b2))
    v12 = pval(s) - a1 - b1 if s[1] else INF
    m1 = min(a2 - a1, b2 - b1, v12)
    dd = (a2 + b2) - (a1 + b1)
    return (dd - m1, m1)


def canon(q, p11, p21, p12, p22):
    """Canonical triple (a, b, c) of the lattice spanned by two column vectors.

    Columns are (p11, p21) and (p12, p22).  Returns None when the columns do
    not span a rank-2 lattice.  The pivot column is the one of minimal bottom
    valuation b; with w = (w_top, w_bot) the pivot and u = w_bot * t^-b its
    unit part, c = w_top * u^-1 mod t^a is exact because u^-1 is only needed
    modulo t^(a - val(w_top)).
    """
    det = psub(q, pmul(q, p11, p22), pmul(q, p12, p21))
    if not det[1]:
        return None
    d = pval(det)
    v1, v2 = pval(p21), pval(p22)
    if v2 <= v1:
        w_top, w_bot, b = p12, p22, v2
    else:
        w_top, w_bot, b = p11, p21, v1
    a = d - b
    vt = pval(w_top)
    if vt >= a:
        return (a, b, PZERO)
    uinv = pinv_unit(q, pshift(w_bot, -b), a - vt)
    return (a, b, ptrunc(pmul(q, w_top, uinv), a))


def sublattices(q, a, b, c, n):
    """All colength-n sublattices of the lattice with canonical triple (a,b,c).

    Returns (a2, b2, c2, s) tuples where s = min(alpha, beta, val w) for the
    triangular coordinates (alpha, beta, w) of the sublattice, so its relative
    position in (a, b, c) is (n - s, s).  Exactly sum(q^alpha) tuples, no
    duplicates.
    """
    out = []
    for alpha in range(n + 1):
        beta = n - alpha
        ca, cb = a + alpha, b + beta
        cshift = pshift(c, beta)
        for code in range(q**alpha):
            m, wc = code, []
            while m:
                m, r = divmod(m, q)
                wc.append(r)
            w = pnorm(q, 0, wc)
            c2 = ptrunc(padd(q, pshift(w, a), cshift), ca)
            out.append((ca, cb, c2, min(alpha, beta, pval(w))))
    return out


def _sym_apply(q, prec, e11, e12, e21, e22, t11, t12, t22, A):
    # T <- E T E^t, A <- E A, everything truncated mod t^prec
    x1 = padd(q, pmul(q, e11, t11), pmul(q, e12, t12))
    x2 = padd(q, pmul(q, e11, t12), pmul(q, e12, t22))
    y1 = padd(q, pmul(q, e21, t11), pmul(q, e22, t12))
    y2 = padd(q, pmul(q, e21, t12), pmul(q, e22, t22))
    n11 = ptrunc(padd(q, pmul(q, x1, e11), pmul(q, x2, e12)), prec)
    n12 = ptrunc(padd(q, pmul(q, x1, e21), pmul(q, x2, e22)), prec)
    n22 = ptrunc(padd(q, pmul(q, y1, e21), pmul(q, y2, e22)), prec)
    a11, a12, a21, a22 = A
    nA = (
        ptrunc(padd(q, pmul(q, e11, a11), pmul(q, e12, a21)), prec),
        ptrunc(padd(q, pmul(q, e11, a12), pmul(q, e12, a22)), prec),
        ptrunc(padd(q, pmul(q, e21, a11), pmul(q, e22, a21)), prec),
        ptrunc(padd(q, pmul(q, e21, a12), pmul(q, e22, a22)), prec),
    )
    return n11, n12, n22, nA


def sym_diag(q, prec, b11, b12, b22):
    """Diagonalize a symmetric O-matrix under B -> E B E^t, mod t^prec.

    Requires val(det) < prec (returns None otherwise; the determinant is
    computed exactly from the inputs).  Returns (va, vb, w, A, eps) with
    va >= vb, A unimodular (a product of elementary matrices), eps a unit, and
    A B A^t eps == diag(t^va, t^vb * w) mod t^prec, where w is a unit
    polynomial.  q must be odd: the off-diagonal pivot step adds the two basis
    vectors and relies on 2 != 0.
    """
    det = psub(q, pmul(q, b11, b22), pmul(q, b12, b12))
    if not det[1] or pval(det) >= prec:
        return None
    one, zero = pconst(q, 1), PZERO
    t11, t12, t22 = ptrunc(b11, prec), ptrunc(b12, prec), ptrunc(b22, prec)
    A = (one, zero, zero, one)
    v11, v12, v22 = pval(t11), pval(t12), pval(t22)
    if v12 < v11 and v12 < v22:
        # min val sits strictly off-diagonal: e1 += e2 moves it to slot 11
        t11, t12, t22, A = _sym_apply(q, prec, one, one, zero, one, t11, t12, t22, A)
    if pval(t22) < pval(t11):
        t11, t22 = t22, t11
        A = (A[2], A[3], A[0], A[1])
    vb = pval(t11)
    if t12[1]:
        uinv = pinv_unit(q, pshift(t11, -vb), prec)
        h = ptrunc(pmul(q, pshift(t12, -vb), uinv), prec)
        t11, t12, t22, A = _sym_apply(
            q, prec, one, zero, pneg(q, h), one, t11, t12, t22, A
        )
    va = pval(t22)
    # larger exponent goes to the first slot
    t11, t22 = t22, t11
    A = (A[2], A[3], A[0], A[1])
    eps = pinv_unit(q, pshift(t11, -va), prec)
    w = ptrunc(pshift(pmul(q, t22, eps), -vb), prec)
    return (va, vb, w, A, eps)


def sym_normal_cert(q, prec, check_prec, b11, b12, b22, ns):
    """Transport a symmetric matrix to its literal normal form and verify.

    Returns (va, vb, issq, ok) or None when val(det) >= prec.  The normal form
    is diag(t^va, t^vb * w0) with w0 = 1 for square class, w0 = ns otherwise;
    ok reports whether the certificate A, eps reproduces it mod t^check_prec
    when multiplied out against the original matrix.
    """
    r = sym_diag(q, prec, b11, b12, b22)
    if r is None:
        return None
    va, vb, w, A, eps = r
    res = w[1][0]
    issq = 1 if issquare(q, res) else 0
    w0 = 1 if issq else ns
    target = ptrunc(pconstmul(q, pinv_unit(q, w, prec), w0), prec)
    u = psqrt_unit(q, target, prec)
    a11, a12, a21, a22 = A
    a21, a22 = ptrunc(pmul(q, u, a21), prec), ptrunc(pmul(q, u, a22), prec)
    # verify A B A^t eps == diag(t^va, t^vb * w0) mod t^check_prec
    x1 = padd(q, pmul(q, a11, b11), pmul(q, a12, b12))
    x2 = padd(q, pmul(q, a11, b12), pmul(q, a12, b22))
    y1 = padd(q, pmul(q, a21, b11), pmul(q, a22, b12))
    y2 = padd(q, pmul(q, a21, b12), pmul(q, a22, b22))
    m11 = padd(q, pmul(q, x1, a11), pmul(q, x2, a12))
    m12 = padd(q, pmul(q, x1, a21), pmul(q, x2, a22))
    m22 = padd(q, pmul(q, y1, a21), pmul(q, y2, a22))
    ok = 1
    if ptrunc(pmul(q, m11, eps), check_prec) != ptrunc((va, (1,)), check_prec):
        ok = 0
    if ptrunc(pmul(q, m12, eps), check_prec) != PZERO:
        ok = 0
    if ptrunc(pmul(q, m22, eps), check_prec) != ptrunc((vb, (w0,)), check_prec):
        ok = 0
    return (va, vb, issq, ok)
