"""Pure-Python hot kernels.

Words are passed in syllable form: a leading a-exponent ``e0`` and a list of
``(sign, exponent)`` pairs standing for ``a^e0 b^s1 a^e1 ... b^sk a^ek``.
Angles are passed as integer pairs ``(p, q)``.  ``_ckernels.pyx`` mirrors
every function here with the same signature and results.
"""
from math import gcd

BACKEND = "python"


def _pinch(n, m, s_left, e, s_right):
    # exponent replacing b^s_left a^e b^s_right, or None when not pinchable
    if s_left == 1 and s_right == -1:
        if e % n == 0:
            return e // n * m
    elif s_left == -1 and s_right == 1:
        if e % m == 0:
            return e // m * n
    return None


def britton_left(n, m, e0, syls):
    """Pinch reduction scanning left to right (leftmost pinch first)."""
    S = []
    E = [e0]
    for s, e in syls:
        if S:
            c = _pinch(n, m, S[-1], E[-1], s)
            if c is not None:
                S.pop()
                E.pop()
                E[-1] += c + e
                continue
        S.append(s)
        E.append(e)
    return E[0], list(zip(S, E[1:]))


def britton_right(n, m, e0, syls):
    """Pinch reduction scanning right to left (rightmost pinch first)."""
    if not syls:
        return e0, []
    k = len(syls)
    # E[j] is the exponent right of S[j-1]; both stacks grow leftwards
    S = []
    E = [syls[k - 1][1]]
    for i in range(k - 1, -1, -1):
        s = syls[i][0]
        left = syls[i - 1][1] if i > 0 else e0
        if S:
            c = _pinch(n, m, s, E[-1], S[-1])
            if c is not None:
                S.pop()
                E.pop()
                E[-1] += c + left
                continue
        S.append(s)
        E.append(left)
    S.reverse()
    E.reverse()
    return E[0], list(zip(S, E[1:]))


def sweep(n, m, e0, syls):
    """Push exponents leftward so every syllable exponent is a coset representative.

    Input must be pinch-free; the output is then the normal form.
    """
    an = abs(n)
    am = abs(m)
    S = [s for s, _ in syls]
    E = [e0] + [e for _, e in syls]
    for i in range(len(S), 0, -1):
        t = E[i]
        if S[i - 1] == 1:
            r = t % an
            E[i - 1] += (t - r) // n * m
        else:
            r = t % am
            E[i - 1] += (t - r) // m * n
        E[i] = r
    return E[0], list(zip(S, E[1:]))


def normal_form(n, m, e0, syls):
    """Normal form built by right-multiplying one syllable at a time."""
    an = abs(n)
    am = abs(m)
    z = e0
    S = []
    R = []
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
            z += k
    return z, list(zip(S, R))


def affine(n, m, e0, syls):
    """Image under a -> x+1, b -> (m/n)x as ``(U, V, D)``, meaning x -> (U x + V)/D."""
    U = 1
    V = e0
    D = 1
    for s, e in syls:
        if s == 1:
            U *= m
            V *= n
            D *= n
        else:
            U *= n
            V *= m
            D *= m
        V += U * e
    return U, V, D


def forward_neighbors(n, m, p, q):
    """Solutions z of z^n = y^m for y = p/q, as ``(branch, pz, qz)``."""
    out = []
    qz = n * q
    base = m * p
    for j in range(n if n > 0 else -n):
        a = (base + j * q) % qz
        g = gcd(a, qz)
        out.append((j, a // g, qz // g))
    return out


def backward_neighbors(n, m, p, q):
    """Solutions z of z^m = y^n, tagged with the forward branch that maps z to y."""
    out = []
    am = m if m > 0 else -m
    an = n if n > 0 else -n
    qz = am * q
    base = n * p if m > 0 else -n * p
    for j in range(am):
        a = (base + j * q) % qz
        g = gcd(a, qz)
        pz = a // g
        qq = qz // g
        # n*y - m*z is an integer; its residue mod n is the branch index
        branch = ((n * p * qq - m * pz * q) // (q * qq)) % an
        out.append((branch, pz, qq))
    return out
