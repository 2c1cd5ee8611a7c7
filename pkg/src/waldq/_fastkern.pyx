# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of waldq._purekern's batch kernels (identical contracts).

Raw polynomials cross the boundary as (offset, coeffs) tuples exactly as in
the pure kernels.  Internally coefficients live in fixed-size C buffers; any
input or intermediate whose span would exceed the capacity raises
OverflowError, and waldq.backend transparently re-runs the pure kernel for
that call, so the two backends never disagree.
"""

NAME = "fast"

cdef enum:
    MAXN = 96

cdef long INF = (<long> 1) << 60


cdef struct Poly:
    long off
    int n
    int co[MAXN]


cdef inline int cmod(long x, int q) noexcept:
    cdef int r = <int> (x % q)
    if r < 0:
        r += q
    return r


cdef long cpow(long b, long e, long m) noexcept:
    cdef long r = 1
    b %= m
    while e > 0:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


cdef Poly pzero() noexcept:
    cdef Poly p
    p.off = 0
    p.n = 0
    return p


cdef inline long pval(Poly p) noexcept:
    return p.off if p.n else INF


cdef Poly ptrim(Poly p) noexcept:
    cdef Poly r
    cdef int lo = 0, hi = p.n, i
    while lo < hi and p.co[lo] == 0:
        lo += 1
    while hi > lo and p.co[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return pzero()
    r.off = p.off + lo
    r.n = hi - lo
    for i in range(r.n):
        r.co[i] = p.co[lo + i]
    return r


cdef Poly pconst(int q, long c) noexcept:
    cdef Poly p
    cdef int r = cmod(c, q)
    if r == 0:
        return pzero()
    p.off = 0
    p.n = 1
    p.co[0] = r
    return p


cdef Poly pshift(Poly p, long k) noexcept:
    if p.n:
        p.off += k
    return p


cdef Poly padd(int q, Poly x, Poly y) except *:
    cdef Poly r
    cdef long off, hi
    cdef int i
    if x.n == 0:
        return y
    if y.n == 0:
        return x
    off = x.off if x.off < y.off else y.off
    hi = x.off + x.n
    if y.off + y.n > hi:
        hi = y.off + y.n
    if hi - off > MAXN:
        raise OverflowError("coefficient span exceeds fast-kernel capacity")
    r.off = off
    r.n = <int> (hi - off)
    for i in range(r.n):
        r.co[i] = 0
    for i in range(x.n):
        r.co[x.off - off + i] = x.co[i]
    for i in range(y.n):
        r.co[y.off - off + i] = cmod(r.co[y.off - off + i] + y.co[i], q)
    return ptrim(r)


cdef Poly pneg(int q, Poly x) noexcept:
    cdef int i
    for i in range(x.n):
        if x.co[i]:
            x.co[i] = q - x.co[i]
    return x


cdef Poly psub(int q, Poly x, Poly y) except *:
    return padd(q, x, pneg(q, y))


cdef Poly pmul(int q, Poly x, Poly y) except *:
    cdef Poly r
    cdef int i, j, n, lo, hi
    cdef long acc[2 * MAXN]
    if x.n == 0 or y.n == 0:
        return pzero()
    n = x.n + y.n - 1
    if n > 2 * MAXN:
        raise OverflowError("coefficient span exceeds fast-kernel capacity")
    for i in range(n):
        acc[i] = 0
    for i in range(x.n):
        if x.co[i]:
            for j in range(y.n):
                acc[i + j] += x.co[i] * y.co[j]
    # trim before the capacity check: products are truncated by every caller
    lo = 0
    hi = n
    while lo < hi and acc[lo] % q == 0:
        lo += 1
    while hi > lo and acc[hi - 1] % q == 0:
        hi -= 1
    if lo == hi:
        return pzero()
    if hi - lo > MAXN:
        raise OverflowError("coefficient span exceeds fast-kernel capacity")
    r.off = x.off + y.off + lo
    r.n = hi - lo
    for i in range(r.n):
        r.co[i] = cmod(acc[lo + i], q)
    return r


cdef Poly pconstmul(int q, Poly x, long c) noexcept:
    cdef int i
    cdef int cc = cmod(c, q)
    if cc == 0 or x.n == 0:
        return pzero()
    for i in range(x.n):
        x.co[i] = <int> ((<long> x.co[i]) * cc % q)
    return x


cdef Poly ptrunc(Poly x, long k) noexcept:
    cdef int keep
    if x.n == 0 or x.off + x.n <= k:
        return x
    if x.off >= k:
        return pzero()
    keep = <int> (k - x.off)
    x.n = keep
    while x.n and x.co[x.n - 1] == 0:
        x.n -= 1
    if x.n == 0:
        return pzero()
    return x


cdef Poly pinv_unit(int q, Poly x, long prec) except *:
    cdef Poly r
    cdef int n, i, top
    cdef long s, u0
    if prec > MAXN:
        raise OverflowError("precision exceeds fast-kernel capacity")
    u0 = cpow(x.co[0], q - 2, q)
    r.off = 0
    r.n = <int> prec
    r.co[0] = <int> u0
    for n in range(1, <int> prec):
        s = 0
        top = n if n < x.n - 1 else x.n - 1
        for i in range(1, top + 1):
            s += x.co[i] * r.co[n - i]
        r.co[n] = cmod(-u0 * (s % q), q)
    return ptrim(r)


cdef Poly psqrt_unit(int q, Poly x, long prec) except *:
    cdef Poly r
    cdef int n, i, s0
    cdef long s, xn, inv2s
    if prec > MAXN:
        raise OverflowError("precision exceeds fast-kernel capacity")
    s0 = 0
    for i in range(1, q):
        if i * i % q == x.co[0]:
            s0 = i if i < q - i else q - i
            break
    if s0 == 0:
        raise ValueError("residue is not a nonzero square")
    inv2s = cpow(2 * s0 % q, q - 2, q)
    r.off = 0
    r.n = <int> prec
    r.co[0] = s0
    for n in range(1, <int> prec):
        xn = x.co[n] if n < x.n else 0
        s = 0
        for i in range(1, n):
            s += r.co[i] * r.co[n - i]
        r.co[n] = cmod((xn - s % q) * inv2s, q)
    return ptrim(r)


cdef bint issquare_c(int q, int r) noexcept:
    if r % q == 0:
        return 0
    return cpow(r, (q - 1) // 2, q) == 1


cdef Poly pfrom(int q, tuple t) except *:
    cdef Poly p
    cdef tuple co = <tuple> t[1]
    cdef int n = len(co)
    cdef int i
    if n > MAXN:
        raise OverflowError("coefficient span exceeds fast-kernel capacity")
    p.off = <long> t[0]
    p.n = n
    for i in range(n):
        p.co[i] = cmod(co[i], q)
    return ptrim(p)


cdef tuple pto(Poly p):
    cdef int i
    if p.n == 0:
        return (0, ())
    return (p.off, tuple([p.co[i] for i in range(p.n)]))


# ---------------------------------------------------------------------------
# batch kernels
# ---------------------------------------------------------------------------


def rel_pos(int q, long a1, long b1, tuple c1, long a2, long b2, tuple c2):
    """Cartan invariant (r1 >= r2); see waldq._purekern.rel_pos."""
    cdef Poly s = psub(q, pshift(pfrom(q, c2), b1), pshift(pfrom(q, c1), b2))
    cdef long v12 = pval(s) - a1 - b1 if s.n else INF
    cdef long m1 = a2 - a1
    if b2 - b1 < m1:
        m1 = b2 - b1
    if v12 < m1:
        m1 = v12
    cdef long dd = (a2 + b2) - (a1 + b1)
    return (dd - m1, m1)


def canon(int q, tuple p11, tuple p21, tuple p12, tuple p22):
    """Canonical triple of a column span; see waldq._purekern.canon."""
    cdef Poly g11 = pfrom(q, p11), g21 = pfrom(q, p21)
    cdef Poly g12 = pfrom(q, p12), g22 = pfrom(q, p22)
    cdef Poly det = psub(q, pmul(q, g11, g22), pmul(q, g12, g21))
    cdef Poly w_top, w_bot, c, uinv
    cdef long d, b, a, vt
    if det.n == 0:
        return None
    d = pval(det)
    if pval(g22) <= pval(g21):
        w_top, w_bot, b = g12, g22, pval(g22)
    else:
        w_top, w_bot, b = g11, g21, pval(g21)
    a = d - b
    vt = pval(w_top)
    if vt >= a:
        return (a, b, (0, ()))
    uinv = pinv_unit(q, pshift(w_bot, -b), a - vt)
    c = ptrunc(pmul(q, w_top, uinv), a)
    return (a, b, pto(c))


def sublattices(int q, long a, long b, tuple c, int n):
    """All colength-n sublattices of (a, b, c); see waldq._purekern."""
    cdef list out = []
    cdef Poly cp = pfrom(q, c)
    cdef Poly cshift, w, c2
    cdef int alpha, beta, i
    cdef long ca, cb, s
    cdef unsigned long long tot, code, m
    if n >= MAXN:
        raise OverflowError("colength exceeds fast-kernel capacity")
    for alpha in range(n + 1):
        beta = n - alpha
        ca, cb = a + alpha, b + beta
        cshift = pshift(cp, beta)
        tot = 1
        for i in range(alpha):
            tot *= <unsigned long long> q
        for code in range(tot):
            m = code
            w = pzero()
            w.n = 0
            i = 0
            while m:
                w.co[i] = <int> (m % q)
                m //= q
                i += 1
            w.n = i
            w = ptrim(w)
            c2 = ptrunc(padd(q, pshift(w, a), cshift), ca)
            s = alpha if alpha < beta else beta
            if pval(w) < s:
                s = pval(w)
            out.append((ca, cb, pto(c2), s))
    return out


cdef void _sym_apply(
    int q, long prec,
    Poly e11, Poly e12, Poly e21, Poly e22,
    Poly* t11, Poly* t12, Poly* t22, Poly* A,
) except *:
    cdef Poly x1 = padd(q, pmul(q, e11, t11[0]), pmul(q, e12, t12[0]))
    cdef Poly x2 = padd(q, pmul(q, e11, t12[0]), pmul(q, e12, t22[0]))
    cdef Poly y1 = padd(q, pmul(q, e21, t11[0]), pmul(q, e22, t12[0]))
    cdef Poly y2 = padd(q, pmul(q, e21, t12[0]), pmul(q, e22, t22[0]))
    cdef Poly n11 = ptrunc(padd(q, pmul(q, x1, e11), pmul(q, x2, e12)), prec)
    cdef Poly n12 = ptrunc(padd(q, pmul(q, x1, e21), pmul(q, x2, e22)), prec)
    cdef Poly n22 = ptrunc(padd(q, pmul(q, y1, e21), pmul(q, y2, e22)), prec)
    cdef Poly a11 = ptrunc(padd(q, pmul(q, e11, A[0]), pmul(q, e12, A[2])), prec)
    cdef Poly a12 = ptrunc(padd(q, pmul(q, e11, A[1]), pmul(q, e12, A[3])), prec)
    cdef Poly a21 = ptrunc(padd(q, pmul(q, e21, A[0]), pmul(q, e22, A[2])), prec)
    cdef Poly a22 = ptrunc(padd(q, pmul(q, e21, A[1]), pmul(q, e22, A[3])), prec)
    t11[0] = n11
    t12[0] = n12
    t22[0] = n22
    A[0] = a11
    A[1] = a12
    A[2] = a21
    A[3] = a22


cdef int _sym_diag_c(
    int q, long prec, Poly b11, Poly b12, Poly b22,
    long* va_out, long* vb_out, Poly* w_out, Poly* A, Poly* eps_out,
) except -1:
    # returns 0 when val(det) >= prec, 1 on success
    cdef Poly det = psub(q, pmul(q, b11, b22), pmul(q, b12, b12))
    cdef Poly one = pconst(q, 1), zero = pzero()
    cdef Poly t11, t12, t22, tmp, uinv, h, eps
    cdef long v11, v12, v22, vb, va
    if det.n == 0 or pval(det) >= prec:
        return 0
    t11 = ptrunc(b11, prec)
    t12 = ptrunc(b12, prec)
    t22 = ptrunc(b22, prec)
    A[0] = one
    A[1] = zero
    A[2] = zero
    A[3] = one
    v11, v12, v22 = pval(t11), pval(t12), pval(t22)
    if v12 < v11 and v12 < v22:
        _sym_apply(q, prec, one, one, zero, one, &t11, &t12, &t22, A)
    if pval(t22) < pval(t11):
        tmp = t11
        t11 = t22
        t22 = tmp
        tmp = A[0]
        A[0] = A[2]
        A[2] = tmp
        tmp = A[1]
        A[1] = A[3]
        A[3] = tmp
    vb = pval(t11)
    if t12.n:
        uinv = pinv_unit(q, pshift(t11, -vb), prec)
        h = ptrunc(pmul(q, pshift(t12, -vb), uinv), prec)
        _sym_apply(q, prec, one, zero, pneg(q, h), one, &t11, &t12, &t22, A)
    va = pval(t22)
    tmp = t11
    t11 = t22
    t22 = tmp
    tmp = A[0]
    A[0] = A[2]
    A[2] = tmp
    tmp = A[1]
    A[1] = A[3]
    A[3] = tmp
    eps = pinv_unit(q, pshift(t11, -va), prec)
    w_out[0] = ptrunc(pshift(pmul(q, t22, eps), -vb), prec)
    eps_out[0] = eps
    va_out[0] = va
    vb_out[0] = vb
    return 1


def sym_diag(int q, long prec, tuple b11, tuple b12, tuple b22):
    """Symmetric diagonalization mod t^prec; see waldq._purekern.sym_diag."""
    cdef Poly A[4]
    cdef Poly w, eps
    cdef long va = 0, vb = 0
    cdef int ok = _sym_diag_c(
        q, prec, pfrom(q, b11), pfrom(q, b12), pfrom(q, b22),
        &va, &vb, &w, A, &eps,
    )
    if not ok:
        return None
    return (va, vb, pto(w), (pto(A[0]), pto(A[1]), pto(A[2]), pto(A[3])), pto(eps))


def sym_normal_cert(
    int q, long prec, long check_prec, tuple b11, tuple b12, tuple b22, int ns
):
    """Normal-form transport + verification; see waldq._purekern."""
    cdef Poly A[4]
    cdef Poly w, eps, target, u
    cdef Poly g11, g12, g22, x1, x2, y1, y2, m11, m12, m22, want
    cdef long va = 0, vb = 0
    cdef int issq, w0
    g11 = pfrom(q, b11)
    g12 = pfrom(q, b12)
    g22 = pfrom(q, b22)
    cdef int ok0 = _sym_diag_c(q, prec, g11, g12, g22, &va, &vb, &w, A, &eps)
    if not ok0:
        return None
    issq = 1 if issquare_c(q, w.co[0]) else 0
    w0 = 1 if issq else ns
    target = ptrunc(pconstmul(q, pinv_unit(q, w, prec), w0), prec)
    u = psqrt_unit(q, target, prec)
    A[2] = ptrunc(pmul(q, u, A[2]), prec)
    A[3] = ptrunc(pmul(q, u, A[3]), prec)
    x1 = padd(q, pmul(q, A[0], g11), pmul(q, A[1], g12))
    x2 = padd(q, pmul(q, A[0], g12), pmul(q, A[1], g22))
    y1 = padd(q, pmul(q, A[2], g11), pmul(q, A[3], g12))
    y2 = padd(q, pmul(q, A[2], g12), pmul(q, A[3], g22))
    m11 = padd(q, pmul(q, x1, A[0]), pmul(q, x2, A[1]))
    m12 = padd(q, pmul(q, x1, A[2]), pmul(q, x2, A[3]))
    m22 = padd(q, pmul(q, y1, A[2]), pmul(q, y2, A[3]))
    cdef int ok = 1
    cdef Poly chk
    chk = ptrunc(pmul(q, m11, eps), check_prec)
    want = ptrunc(pshift(pconst(q, 1), va), check_prec)
    if pto(chk) != pto(want):
        ok = 0
    chk = ptrunc(pmul(q, m12, eps), check_prec)
    if chk.n != 0:
        ok = 0
    chk = ptrunc(pmul(q, m22, eps), check_prec)
    want = ptrunc(pshift(pconst(q, w0), vb), check_prec)
    if pto(chk) != pto(want):
        ok = 0
    return (va, vb, issq, ok)
