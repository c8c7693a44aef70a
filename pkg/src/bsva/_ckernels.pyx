# cython: language_level=3, boundscheck=False
"""Compiled twin of ``bsva._pykernels``; same functions, same results.

The word kernels run on checked 64-bit integers and redo the computation
with Python ints as soon as any intermediate would overflow, so results stay
exact for arbitrarily large exponents.
"""
from math import gcd

from cpython.mem cimport PyMem_Malloc, PyMem_Free

BACKEND = "cython"


cdef extern from *:
    bint _add_ovf "__builtin_add_overflow"(long long a, long long b, long long *res) nogil
    bint _sub_ovf "__builtin_sub_overflow"(long long a, long long b, long long *res) nogil
    bint _mul_ovf "__builtin_mul_overflow"(long long a, long long b, long long *res) nogil


cdef int _load(list syls, int *S, long long *E) except -1:
    # raises OverflowError when an exponent does not fit
    cdef Py_ssize_t i
    for i in range(len(syls)):
        item = syls[i]
        S[i] = item[0]
        E[i] = item[1]
    return 0


cdef inline int _pinch_ll(long long n, long long m, int s_left, long long e, int s_right,
                          long long *out) except -1:
    # 1 if pinchable (replacement in out), 0 if not, raises on overflow
    if s_left == 1 and s_right == -1:
        if e % n == 0:
            if _mul_ovf(e // n, m, out):
                raise OverflowError
            return 1
    elif s_left == -1 and s_right == 1:
        if e % m == 0:
            if _mul_ovf(e // m, n, out):
                raise OverflowError
            return 1
    return 0


cdef inline long long _add3(long long x, long long y, long long z) except? -1:
    cdef long long r
    if _add_ovf(x, y, &r) or _add_ovf(r, z, &r):
        raise OverflowError
    return r


cdef object _britton_left_ll(long long n, long long m, long long e0, list syls):
    cdef Py_ssize_t L = len(syls)
    cdef int *S = <int *> PyMem_Malloc((L + 1) * sizeof(int))
    cdef long long *E = <long long *> PyMem_Malloc((L + 1) * sizeof(long long))
    cdef int *inS = <int *> PyMem_Malloc((L + 1) * sizeof(int))
    cdef long long *inE = <long long *> PyMem_Malloc((L + 1) * sizeof(long long))
    cdef Py_ssize_t i, top = 0
    cdef long long c
    if not S or not E or not inS or not inE:
        PyMem_Free(S); PyMem_Free(E); PyMem_Free(inS); PyMem_Free(inE)
        raise MemoryError
    try:
        _load(syls, inS, inE)
        E[0] = e0
        for i in range(L):
            if top > 0 and _pinch_ll(n, m, S[top - 1], E[top], inS[i], &c):
                top -= 1
                E[top] = _add3(E[top], c, inE[i])
                continue
            S[top] = inS[i]
            top += 1
            E[top] = inE[i]
        return E[0], [(S[i], E[i + 1]) for i in range(top)]
    finally:
        PyMem_Free(S); PyMem_Free(E); PyMem_Free(inS); PyMem_Free(inE)


cdef object _britton_right_ll(long long n, long long m, long long e0, list syls):
    cdef Py_ssize_t L = len(syls)
    cdef int *S = <int *> PyMem_Malloc((L + 1) * sizeof(int))
    cdef long long *E = <long long *> PyMem_Malloc((L + 1) * sizeof(long long))
    cdef int *inS = <int *> PyMem_Malloc((L + 1) * sizeof(int))
    cdef long long *inE = <long long *> PyMem_Malloc((L + 1) * sizeof(long long))
    cdef Py_ssize_t i, top = 0
    cdef long long c, left
    if not S or not E or not inS or not inE:
        PyMem_Free(S); PyMem_Free(E); PyMem_Free(inS); PyMem_Free(inE)
        raise MemoryError
    try:
        _load(syls, inS, inE)
        E[0] = inE[L - 1]
        for i in range(L - 1, -1, -1):
            left = inE[i - 1] if i > 0 else e0
            if top > 0 and _pinch_ll(n, m, inS[i], E[top], S[top - 1], &c):
                top -= 1
                E[top] = _add3(E[top], c, left)
                continue
            S[top] = inS[i]
            top += 1
            E[top] = left
        return E[top], [(S[i], E[i]) for i in range(top - 1, -1, -1)]
    finally:
        PyMem_Free(S); PyMem_Free(E); PyMem_Free(inS); PyMem_Free(inE)


cdef object _sweep_ll(long long n, long long m, long long e0, list syls):
    cdef Py_ssize_t L = len(syls)
    cdef int *S = <int *> PyMem_Malloc((L + 1) * sizeof(int))
    cdef long long *E = <long long *> PyMem_Malloc((L + 1) * sizeof(long long))
    cdef long long an = n if n > 0 else -n
    cdef long long am = m if m > 0 else -m
    cdef long long t, r, c
    cdef Py_ssize_t i
    if not S or not E:
        PyMem_Free(S); PyMem_Free(E)
        raise MemoryError
    try:
        _load(syls, S, E + 1)
        E[0] = e0
        for i in range(L, 0, -1):
            t = E[i]
            if S[i - 1] == 1:
                r = t % an
                if _mul_ovf((t - r) // n, m, &c):
                    raise OverflowError
            else:
                r = t % am
                if _mul_ovf((t - r) // m, n, &c):
                    raise OverflowError
            if _add_ovf(E[i - 1], c, &E[i - 1]):
                raise OverflowError
            E[i] = r
        return E[0], [(S[i], E[i + 1]) for i in range(L)]
    finally:
        PyMem_Free(S); PyMem_Free(E)


cdef object _normal_form_ll(long long n, long long m, long long e0, list syls):
    cdef Py_ssize_t L = len(syls)
    cdef int *S = <int *> PyMem_Malloc((L + 1) * sizeof(int))
    cdef long long *R = <long long *> PyMem_Malloc((L + 1) * sizeof(long long))
    cdef int *inS = <int *> PyMem_Malloc((L + 1) * sizeof(int))
    cdef long long *inE = <long long *> PyMem_Malloc((L + 1) * sizeof(long long))
    cdef long long an = n if n > 0 else -n
    cdef long long am = m if m > 0 else -m
    cdef long long z = e0
    cdef long long k, t, r
    cdef Py_ssize_t idx, i, top = 0
    cdef int s
    if not S or not R or not inS or not inE:
        PyMem_Free(S); PyMem_Free(R); PyMem_Free(inS); PyMem_Free(inE)
        raise MemoryError
    try:
        _load(syls, inS, inE)
        for idx in range(L):
            s = inS[idx]
            if top > 0 and R[top - 1] == 0 and S[top - 1] == -s:
                top -= 1
            else:
                S[top] = s
                R[top] = 0
                top += 1
            k = inE[idx]
            i = top - 1
            while k != 0 and i >= 0:
                if _add_ovf(R[i], k, &t):
                    raise OverflowError
                if S[i] == 1:
                    r = t % an
                    if _mul_ovf((t - r) // n, m, &k):
                        raise OverflowError
                else:
                    r = t % am
                    if _mul_ovf((t - r) // m, n, &k):
                        raise OverflowError
                R[i] = r
                i -= 1
            if k != 0 and _add_ovf(z, k, &z):
                raise OverflowError
        return z, [(S[i], R[i]) for i in range(top)]
    finally:
        PyMem_Free(S); PyMem_Free(R); PyMem_Free(inS); PyMem_Free(inE)


cdef inline object _pinch(object n, object m, int s_left, object e, int s_right):
    if s_left == 1 and s_right == -1:
        if e % n == 0:
            return e // n * m
    elif s_left == -1 and s_right == 1:
        if e % m == 0:
            return e // m * n
    return None


def _britton_left_obj(n, m, e0, syls):
    cdef list S = []
    cdef list E = [e0]
    cdef int s
    cdef object e, c
    for s, e in syls:
        if S:
            c = _pinch(n, m, S[-1], E[-1], s)
            if c is not None:
                S.pop()
                E.pop()
                E[-1] = E[-1] + c + e
                continue
        S.append(s)
        E.append(e)
    return E[0], list(zip(S, E[1:]))


def _britton_right_obj(n, m, e0, syls):
    cdef Py_ssize_t k = len(syls)
    cdef Py_ssize_t i
    cdef int s
    cdef object left, c
    if k == 0:
        return e0, []
    cdef list S = []
    cdef list E = [syls[k - 1][1]]
    for i in range(k - 1, -1, -1):
        s = syls[i][0]
        left = syls[i - 1][1] if i > 0 else e0
        if S:
            c = _pinch(n, m, s, E[-1], S[-1])
            if c is not None:
                S.pop()
                E.pop()
                E[-1] = E[-1] + c + left
                continue
        S.append(s)
        E.append(left)
    S.reverse()
    E.reverse()
    return E[0], list(zip(S, E[1:]))


def _sweep_obj(n, m, e0, syls):
    cdef object an = abs(n)
    cdef object am = abs(m)
    cdef list S = [s for s, _ in syls]
    cdef list E = [e0] + [e for _, e in syls]
    cdef Py_ssize_t i
    cdef object t, r
    for i in range(len(S), 0, -1):
        t = E[i]
        if S[i - 1] == 1:
            r = t % an
            E[i - 1] = E[i - 1] + (t - r) // n * m
        else:
            r = t % am
            E[i - 1] = E[i - 1] + (t - r) // m * n
        E[i] = r
    return E[0], list(zip(S, E[1:]))


def _normal_form_obj(n, m, e0, syls):
    cdef object an = abs(n)
    cdef object am = abs(m)
    cdef object z = e0
    cdef list S = []
    cdef list R = []
    cdef int s
    cdef Py_ssize_t i
    cdef object e, k, t, r
    for s, e in syls:
        if S and R[-1] == 0 and S[-1] == -s:
            S.pop()
            R.pop()
        else:
            S.append(s)
            R.append(0)
        k = e
        i = len(S) - 1
        while k and i >= 0:
            t = R[i] + k
            if S[i] == 1:
                r = t % an
                k = (t - r) // n * m
            else:
                r = t % am
                k = (t - r) // m * n
            R[i] = r
            i -= 1
        if k:
            z = z + k
    return z, list(zip(S, R))


def affine(n, m, e0, syls):
    cdef object U = 1
    cdef object V = e0
    cdef object D = 1
    cdef int s
    cdef object e
    for s, e in syls:
        if s == 1:
            U = U * m
            V = V * n
            D = D * n
        else:
            U = U * n
            V = V * m
            D = D * m
        V = V + U * e
    return U, V, D


def forward_neighbors(n, m, p, q):
    cdef list out = []
    cdef object qz = n * q
    cdef object base = m * p
    cdef object a, g
    cdef Py_ssize_t j
    for j in range(abs(n)):
        a = (base + j * q) % qz
        g = gcd(a, qz)
        out.append((j, a // g, qz // g))
    return out


def backward_neighbors(n, m, p, q):
    cdef list out = []
    cdef object am = abs(m)
    cdef object an = abs(n)
    cdef object qz = am * q
    cdef object base = n * p if m > 0 else -n * p
    cdef object a, g, pz, qq, branch
    cdef Py_ssize_t j
    for j in range(am):
        a = (base + j * q) % qz
        g = gcd(a, qz)
        pz = a // g
        qq = qz // g
        branch = ((n * p * qq - m * pz * q) // (q * qq)) % an
        out.append((branch, pz, qq))
    return out


def britton_left(n, m, e0, syls):
    try:
        return _britton_left_ll(n, m, e0, list(syls))
    except OverflowError:
        return _britton_left_obj(n, m, e0, syls)


def britton_right(n, m, e0, syls):
    if not syls:
        return e0, []
    try:
        return _britton_right_ll(n, m, e0, list(syls))
    except OverflowError:
        return _britton_right_obj(n, m, e0, syls)


def sweep(n, m, e0, syls):
    try:
        return _sweep_ll(n, m, e0, list(syls))
    except OverflowError:
        return _sweep_obj(n, m, e0, syls)


def normal_form(n, m, e0, syls):
    """Checked 64-bit arithmetic first; exact Python ints when that overflows."""
    try:
        return _normal_form_ll(n, m, e0, list(syls))
    except OverflowError:
        return _normal_form_obj(n, m, e0, syls)
