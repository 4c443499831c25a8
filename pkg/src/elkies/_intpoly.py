"""Low-level polynomial helpers on plain lists of non-negative ints mod m.

Lists are ascending coefficient sequences.  Products go through Kronecker
substitution so that CPython's subquadratic big-int multiply does the work.
"""


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pack(vals, nbytes):
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in vals), "little")


def _unpack(x, nbytes, count):
    raw = x.to_bytes(nbytes * count, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(count)]


def _slot_bytes(m, terms):
    bits = 2 * (m - 1).bit_length() + terms.bit_length() + 1
    return (bits + 7) // 8


def kron_mul(a, b, m):
    """Product of two int polynomials with entries in [0, m), reduced mod m."""
    if not a or not b:
        return []
    if len(a) < 8 or len(b) < 8:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [c % m for c in out]
    nb = _slot_bytes(m, min(len(a), len(b)))
    prod = _pack(a, nb) * _pack(b, nb)
    return [c % m for c in _unpack(prod, nb, len(a) + len(b) - 1)]


def reduce_monic(c, f, m):
    """Remainder of ``c`` modulo the monic ``f`` (length e + 1), as an e-tuple."""
    e = len(f) - 1
    c = list(c)
    for k in range(len(c) - 1, e - 1, -1):
        top = c[k] % m
        if top:
            base = k - e
            for i in range(e):
                c[base + i] -= top * f[i]
        c[k] = 0
    c = [x % m for x in c[:e]]
    c.extend([0] * (e - len(c)))
    return tuple(c)


def kron_mul_ext(a, b, m, f):
    """Product of polynomials whose coefficients are e-tuples in (Z/m)[t]/f(t)."""
    if not a or not b:
        return []
    e = len(f) - 1
    stride = 2 * e - 1
    nb = _slot_bytes(m, min(len(a), len(b)) * e)

    def flat(seq):
        out = []
        pad = [0] * (stride - e)
        for x in seq:
            out.extend(x)
            out.extend(pad)
        return out

    prod = _pack(flat(a), nb) * _pack(flat(b), nb)
    count = len(a) + len(b) - 1
    slots = _unpack(prod, nb, count * stride)
    return [reduce_monic(slots[i * stride:(i + 1) * stride], f, m) for i in range(count)]


# --- arithmetic over a prime field F_p -------------------------------------

def divmod_p(a, b, p):
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    q = [0] * (len(a) - db)
    a = list(a)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % p
    return trim(q), trim(a[:db])


def mulmod_p(a, b, f, p):
    return divmod_p(kron_mul(a, b, p), f, p)[1]


def powmod_p(a, e, f, p):
    result = [1]
    base = divmod_p(a, f, p)[1]
    while e:
        if e & 1:
            result = mulmod_p(result, base, f, p)
        e >>= 1
        if e:
            base = mulmod_p(base, base, f, p)
    return divmod_p(result, f, p)[1]


def gcd_p(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_p(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible_p(f, p):
    """Rabin-style test: f has no factor of degree <= deg(f)/2 over F_p."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    xq = [0, 1]
    for _ in range(n // 2):
        xq = powmod_p(xq, p, f, p)
        diff = list(xq) + [0] * max(0, 2 - len(xq))
        diff[1] = (diff[1] - 1) % p
        if len(gcd_p(f, diff, p)) > 1:
            return False
    return True
