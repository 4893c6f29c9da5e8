"""Exact arithmetic in the ambient rings of the supported partial fields.

A partial field is a commutative ring together with a distinguished subgroup
G of its units containing -1; the "elements" of the partial field are G plus
zero.  Sums and products are always computed exactly in the ambient ring, and
membership in G is decidable from the canonical payload alone:

    gf<p>       Z/pZ, G = all nonzero residues
    gf4, gf8    polynomial residues over GF(2), G = nonzero
    regular     Z, G = {1, -1}
    dyadic      Z[1/2] stored as odd*2^k, G = {+-2^k}
    sixthroots  Z[zeta], zeta^2 = zeta - 1, G = <zeta> (order 6)
    nearregular Z[a, 1/a, 1/(1-a)] stored as g(a)*a^i*(1-a)^j with
                g(0) != 0 != g(1); G = {+-a^i*(1-a)^j}

Values are immutable and canonical: two values are equal iff their payloads
are identical.
"""

class PfError(Exception):
    """Invalid partial-field construction or operation."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient tuples, ascending degree, no
# trailing zeros; () is the zero polynomial)

def _pnorm(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _pnorm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                   for i in range(n)])


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pnorm(out)


def _peval(a, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _pdivexact(a, b):
    """Quotient a/b in Z[x]; raises if the division is not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1]
        if c % lead != 0:
            raise PfError("inexact polynomial division")
        f = c // lead
        q[i] = f
        if f:
            for j, y in enumerate(b):
                rem[i + j] -= f * y
    if any(rem):
        raise PfError("inexact polynomial division")
    return _pnorm(q)


def _strip_root(g, root_poly):
    """Split g = root_poly^k * h with h not divisible; returns (k, h)."""
    k = 0
    at = 0 if root_poly == (0, 1) else 1
    while g and _peval(g, at) == 0:
        g = _pdivexact(g, root_poly)
        k += 1
    return k, g


class PfValue:
    """One element of the ambient ring of a partial field, in canonical form."""

    __slots__ = ("field", "payload", "_hash")

    def __init__(self, field, payload):
        self.field = field
        self.payload = payload
        self._hash = hash((field.name, payload))

    def __eq__(self, other):
        return (isinstance(other, PfValue) and self.field is other.field
                and self.payload == other.payload)

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        return self.field.add(self, self.field.coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.field.coerce(other)
        return self.field.add(self, self.field.neg(other))

    def __mul__(self, other):
        return self.field.mul(self, self.field.coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.field.neg(self)

    def inv(self):
        return self.field.inv(self)

    def is_zero(self):
        return self.payload == self.field.zero.payload

    def is_unit(self):
        return self.field.is_unit(self)

    def in_pfield(self):
        return self.field.contains(self)

    def __repr__(self):
        return "PfValue(%s, %s)" % (self.field.name, self.field.format_value(self))

    def __str__(self):
        return self.field.format_value(self)


class PartialField:
    """Base class; subclasses fix the ambient ring and the unit group."""

    name = None
    finite = False

    def __init__(self):
        self.zero = self._make(self._zero_payload())
        self.one = self._make(self._one_payload())
        self.minus_one = self.neg(self.one)

    def _make(self, payload):
        return PfValue(self, payload)

    def coerce(self, v):
        if isinstance(v, PfValue):
            if v.field is not self:
                raise PfError("mixed fields: %s vs %s" % (self.name, v.field.name))
            return v
        if isinstance(v, int):
            return self.from_int(v)
        raise PfError("cannot coerce %r into %s" % (v, self.name))

    def from_int(self, n):
        v = self.zero
        step = self.one if n >= 0 else self.minus_one
        for _ in range(abs(n)):
            v = self.add(v, step)
        return v

    def contains(self, v):
        """Membership in the partial field proper: zero or a unit of G."""
        v = self.coerce(v)
        return v.is_zero() or self.is_unit(v)

    def divexact(self, a, b):
        """Exact division in the ambient ring (for fraction-free elimination)."""
        raise NotImplementedError

    def units(self, bound=None):
        """Deterministic list of unit-group candidates for enumeration.

        Infinite groups require an exponent bound.
        """
        raise NotImplementedError

    def automorphisms(self):
        """List of (name, callable) partial-field automorphisms, identity first."""
        return [("id", lambda v: v)]

    def sort_key(self, v):
        return v.payload

    def __repr__(self):
        return "PartialField(%s)" % self.name


class GFPrime(PartialField):
    finite = True

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise PfError("gf(%d): modulus is not prime" % p)
        self.p = p
        self.name = "gf%d" % p
        super().__init__()

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1 % self.p

    def from_int(self, n):
        return self._make(n % self.p)

    def add(self, a, b):
        return self._make((a.payload + b.payload) % self.p)

    def mul(self, a, b):
        return self._make((a.payload * b.payload) % self.p)

    def neg(self, a):
        return self._make((-a.payload) % self.p)

    def inv(self, a):
        if a.payload == 0:
            raise PfError("inverse of zero in %s" % self.name)
        return self._make(pow(a.payload, self.p - 2, self.p))

    def is_unit(self, v):
        return v.payload != 0

    def divexact(self, a, b):
        return self.mul(a, self.inv(b))

    def units(self, bound=None):
        return [self._make(i) for i in range(1, self.p)]

    def format_value(self, v):
        return str(v.payload)

    def parse_value(self, s):
        return self.from_int(int(s))


class GF2Power(PartialField):
    """GF(4) or GF(8) as GF(2)[w] modulo a fixed irreducible polynomial."""

    finite = True

    def __init__(self, q, modulus):
        self.q = q
        self.modulus = modulus  # bitmask, e.g. 0b111 for w^2+w+1
        self.degree = modulus.bit_length() - 1
        self.name = "gf%d" % q
        super().__init__()

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1

    def from_int(self, n):
        return self._make(n % 2)

    def add(self, a, b):
        return self._make(a.payload ^ b.payload)

    def _mul_bits(self, x, y):
        out = 0
        while y:
            if y & 1:
                out ^= x
            y >>= 1
            x <<= 1
            if x >> self.degree:
                x ^= self.modulus
        return out

    def mul(self, a, b):
        return self._make(self._mul_bits(a.payload, b.payload))

    def neg(self, a):
        return a

    def inv(self, a):
        if a.payload == 0:
            raise PfError("inverse of zero in %s" % self.name)
        return self._make(pow_bits(self, a.payload, self.q - 2))

    def is_unit(self, v):
        return v.payload != 0

    def divexact(self, a, b):
        return self.mul(a, self.inv(b))

    def units(self, bound=None):
        return [self._make(i) for i in range(1, self.q)]

    def frobenius(self, v):
        return self.mul(v, v)

    def automorphisms(self):
        auts = [("id", lambda v: v)]
        power = 2
        phi = self.frobenius
        while power < self.q:
            auts.append(("frob%d" % power, _compose_frobenius(self, power)))
            power *= 2
        return auts

    def format_value(self, v):
        bits = v.payload
        if bits == 0:
            return "0"
        terms = []
        for d in range(self.degree, -1, -1):
            if bits >> d & 1:
                terms.append("w^%d" % d if d > 1 else ("w" if d == 1 else "1"))
        return "+".join(terms)

    def parse_value(self, s):
        s = s.replace(" ", "")
        if s == "0":
            return self.zero
        bits = 0
        for term in s.split("+"):
            if term == "1":
                bits ^= 1
            elif term == "w":
                bits ^= 2
            elif term.startswith("w^"):
                bits ^= 1 << int(term[2:])
            else:
                raise PfError("bad %s literal: %r" % (self.name, s))
        if bits >> self.degree:
            raise PfError("bad %s literal: %r" % (self.name, s))
        return self._make(bits)


def pow_bits(field, x, e):
    out = 1
    while e:
        if e & 1:
            out = field._mul_bits(out, x)
        x = field._mul_bits(x, x)
        e >>= 1
    return out


def _compose_frobenius(field, power):
    def phi(v):
        out = v
        p = power
        while p > 1:
            out = field.frobenius(out)
            p //= 2
        return out
    return phi


class Regular(PartialField):
    """The integers with unit group {1, -1}."""

    def __init__(self):
        self.name = "regular"
        super().__init__()

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1

    def from_int(self, n):
        return self._make(n)

    def add(self, a, b):
        return self._make(a.payload + b.payload)

    def mul(self, a, b):
        return self._make(a.payload * b.payload)

    def neg(self, a):
        return self._make(-a.payload)

    def inv(self, a):
        if a.payload not in (1, -1):
            raise PfError("regular: %r is not a unit" % a.payload)
        return a

    def is_unit(self, v):
        return v.payload in (1, -1)

    def divexact(self, a, b):
        if b.payload == 0 or a.payload % b.payload:
            raise PfError("regular: inexact division %r / %r" % (a.payload, b.payload))
        return self._make(a.payload // b.payload)

    def units(self, bound=None):
        return [self.one, self.minus_one]

    def format_value(self, v):
        return str(v.payload)

    def parse_value(self, s):
        return self._make(int(s))


class Dyadic(PartialField):
    """Z[1/2]; payload (m, k) means m * 2^k with m odd, zero is (0, 0)."""

    def __init__(self):
        self.name = "dyadic"
        super().__init__()

    def _zero_payload(self):
        return (0, 0)

    def _one_payload(self):
        return (1, 0)

    def _norm(self, m, k):
        if m == 0:
            return self._make((0, 0))
        while m % 2 == 0:
            m //= 2
            k += 1
        return self._make((m, k))

    def from_int(self, n):
        return self._norm(n, 0)

    def add(self, a, b):
        (m1, k1), (m2, k2) = a.payload, b.payload
        if m1 == 0:
            return b
        if m2 == 0:
            return a
        k = min(k1, k2)
        return self._norm(m1 * 2 ** (k1 - k) + m2 * 2 ** (k2 - k), k)

    def mul(self, a, b):
        (m1, k1), (m2, k2) = a.payload, b.payload
        if m1 == 0 or m2 == 0:
            return self.zero
        return self._make((m1 * m2, k1 + k2))

    def neg(self, a):
        m, k = a.payload
        return self._make((-m, k)) if m else a

    def inv(self, a):
        m, k = a.payload
        if m not in (1, -1):
            raise PfError("dyadic: %s is not a unit" % self.format_value(a))
        return self._make((m, -k))

    def is_unit(self, v):
        return v.payload[0] in (1, -1)

    def divexact(self, a, b):
        (m1, k1), (m2, k2) = a.payload, b.payload
        if m2 == 0:
            raise ZeroDivisionError("dyadic division by zero")
        if m1 == 0:
            return self.zero
        if m1 % m2:
            raise PfError("dyadic: inexact division")
        return self._make((m1 // m2, k1 - k2))

    def units(self, bound=None):
        if bound is None:
            raise PfError("dyadic unit enumeration needs an exponent bound")
        out = []
        for k in range(-bound, bound + 1):
            out.append(self._make((1, k)))
            out.append(self._make((-1, k)))
        out.sort(key=self.sort_key)
        return out

    def format_value(self, v):
        m, k = v.payload
        if m == 0:
            return "0"
        if k == 0:
            return str(m)
        if m == 1:
            return "2^%d" % k
        if m == -1:
            return "-2^%d" % k
        return "%d*2^%d" % (m, k)

    def parse_value(self, s):
        s = s.replace(" ", "")
        if "2^" not in s:
            return self.from_int(int(s))
        head, _, exp = s.partition("2^")
        if head in ("", "+"):
            m = 1
        elif head == "-":
            m = -1
        else:
            if not head.endswith("*"):
                raise PfError("bad dyadic literal: %r" % s)
            m = int(head[:-1])
        return self._norm(m, int(exp))


class SixthRoots(PartialField):
    """Eisenstein integers Z[zeta] with zeta^2 = zeta - 1; payload (a, b) = a + b*zeta."""

    def __init__(self):
        self.name = "sixthroots"
        super().__init__()
        # G = <zeta> has order 6: zeta^3 = -1
        self._unit_list = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]

    def _zero_payload(self):
        return (0, 0)

    def _one_payload(self):
        return (1, 0)

    def zeta(self):
        return self._make((0, 1))

    def from_int(self, n):
        return self._make((n, 0))

    def add(self, x, y):
        (a1, b1), (a2, b2) = x.payload, y.payload
        return self._make((a1 + a2, b1 + b2))

    def mul(self, x, y):
        (a1, b1), (a2, b2) = x.payload, y.payload
        # zeta^2 = zeta - 1
        return self._make((a1 * a2 - b1 * b2, a1 * b2 + a2 * b1 + b1 * b2))

    def neg(self, x):
        a, b = x.payload
        return self._make((-a, -b))

    def norm(self, x):
        a, b = x.payload
        return a * a + a * b + b * b

    def conj(self, x):
        a, b = x.payload
        return self._make((a + b, -b))

    def inv(self, x):
        if self.norm(x) != 1:
            raise PfError("sixthroots: %s is not a unit" % self.format_value(x))
        return self.conj(x)

    def is_unit(self, v):
        return self.norm(v) == 1

    def divexact(self, x, y):
        n = self.norm(y)
        if n == 0:
            raise ZeroDivisionError("sixthroots division by zero")
        num = self.mul(x, self.conj(y))
        a, b = num.payload
        if a % n or b % n:
            raise PfError("sixthroots: inexact division")
        return self._make((a // n, b // n))

    def units(self, bound=None):
        return [self._make(p) for p in self._unit_list]

    def automorphisms(self):
        return [("id", lambda v: v), ("conj", self.conj)]

    def format_value(self, v):
        a, b = v.payload
        if (a, b) == (0, 0):
            return "0"
        if (a, b) in self._unit_list:
            k = self._unit_list.index((a, b))
            if k == 0:
                return "1"
            if k == 3:
                return "-1"
            if k < 3:
                return "z" if k == 1 else "z^%d" % k
            return "-z" if k == 4 else "-z^%d" % (k - 3)
        if b == 0:
            return str(a)
        bs = "z" if b == 1 else ("-z" if b == -1 else "%d*z" % b)
        if a == 0:
            return bs
        return "%d%s%s" % (a, "+" if not bs.startswith("-") else "", bs)

    def parse_value(self, s):
        s = s.replace(" ", "")
        if s in ("0",):
            return self.zero
        neg = s.startswith("-")
        body = s[1:] if neg else s
        if body == "1":
            v = self.one
        elif body == "z":
            v = self.zeta()
        elif body.startswith("z^"):
            k = int(body[2:])
            v = self.one
            for _ in range(k % 6):
                v = self.mul(v, self.zeta())
        else:
            # general a+b*z fallback
            v = None
            for sep in ("+", "-"):
                idx = body.find(sep, 1)
                if idx > 0:
                    a = int(body[:idx])
                    bpart = body[idx:].replace("*z", "").replace("z", "")
                    b = int(bpart) if bpart not in ("+", "-") else int(bpart + "1")
                    v = self._make((a, b))
                    break
            if v is None:
                if body.endswith("z"):
                    b = body[:-1].replace("*", "")
                    v = self._make((0, int(b) if b else 1))
                else:
                    v = self.from_int(int(body))
        return self.neg(v) if neg else v


_X = (0, 1)        # the polynomial a
_ONE_MINUS_X = (1, -1)


class NearRegular(PartialField):
    """Z[a, 1/a, 1/(1-a)]; payload (g, i, j) = g(a) * a^i * (1-a)^j.

    g is an integer polynomial with g(0) != 0 and g(1) != 0 (so the
    factorization is unique); zero is ((), 0, 0).
    """

    def __init__(self):
        self.name = "nearregular"
        super().__init__()

    def _zero_payload(self):
        return ((), 0, 0)

    def _one_payload(self):
        return ((1,), 0, 0)

    def _norm(self, g, i, j):
        g = _pnorm(g)
        if not g:
            return self.zero
        di, g = _strip_root(g, _X)
        dj, g = _strip_root(g, _ONE_MINUS_X)
        return self._make((g, i + di, j + dj))

    def alpha(self):
        return self._make(((1,), 1, 0))

    def one_minus_alpha(self):
        return self._make(((1,), 0, 1))

    def unit(self, sign, i, j):
        if sign not in (1, -1):
            raise PfError("nearregular unit sign must be +-1")
        return self._make(((sign,), i, j))

    def from_int(self, n):
        return self._norm((n,), 0, 0)

    def add(self, x, y):
        (g1, i1, j1), (g2, i2, j2) = x.payload, y.payload
        if not g1:
            return y
        if not g2:
            return x
        i, j = min(i1, i2), min(j1, j2)
        h1 = g1
        for _ in range(i1 - i):
            h1 = _pmul(h1, _X)
        for _ in range(j1 - j):
            h1 = _pmul(h1, _ONE_MINUS_X)
        h2 = g2
        for _ in range(i2 - i):
            h2 = _pmul(h2, _X)
        for _ in range(j2 - j):
            h2 = _pmul(h2, _ONE_MINUS_X)
        return self._norm(_padd(h1, h2), i, j)

    def mul(self, x, y):
        (g1, i1, j1), (g2, i2, j2) = x.payload, y.payload
        if not g1 or not g2:
            return self.zero
        return self._make((_pmul(g1, g2), i1 + i2, j1 + j2))

    def neg(self, x):
        g, i, j = x.payload
        return self._make((_pneg(g), i, j)) if g else x

    def inv(self, x):
        g, i, j = x.payload
        if g not in ((1,), (-1,)):
            raise PfError("nearregular: %s is not a unit" % self.format_value(x))
        return self._make((g, -i, -j))

    def is_unit(self, v):
        return v.payload[0] in ((1,), (-1,))

    def divexact(self, x, y):
        (g1, i1, j1), (g2, i2, j2) = x.payload, y.payload
        if not g2:
            raise ZeroDivisionError("nearregular division by zero")
        if not g1:
            return self.zero
        return self._make((_pdivexact(g1, g2), i1 - i2, j1 - j2))

    def units(self, bound=None):
        if bound is None:
            raise PfError("nearregular unit enumeration needs an exponent bound")
        out = []
        for i in range(-bound, bound + 1):
            for j in range(-bound, bound + 1):
                out.append(self.unit(1, i, j))
                out.append(self.unit(-1, i, j))
        out.sort(key=self.sort_key)
        return out

    def _subst(self, v, num, den_i, den_j):
        """Apply a ring map sending a to num * a^den_i * (1-a)^den_j form.

        num is a PfValue for the image of a; the map must send units to units.
        """
        g, i, j = v.payload
        if not g:
            return self.zero
        img_a = num
        img_b = self.add(self.one, self.neg(num))  # 1 - image(a)
        out = self.zero
        apow = self.one
        for c in g:
            out = self.add(out, self.mul(self.from_int(c), apow))
            apow = self.mul(apow, img_a)
        for _ in range(abs(i)):
            out = self.mul(out, img_a if i > 0 else self.inv(img_a))
        for _ in range(abs(j)):
            out = self.mul(out, img_b if j > 0 else self.inv(img_b))
        return out

    def automorphisms(self):
        alpha = self.alpha()
        images = [
            ("id", alpha),
            ("a->1-a", self.one_minus_alpha()),
            ("a->1/a", self.inv(alpha)),
            ("a->1/(1-a)", self.inv(self.one_minus_alpha())),
            ("a->a/(a-1)", self.neg(self.mul(alpha, self.inv(self.one_minus_alpha())))),
            ("a->(a-1)/a", self.neg(self.mul(self.one_minus_alpha(), self.inv(alpha)))),
        ]
        return [(nm, _nr_subst_map(self, img)) for nm, img in images]

    def format_value(self, v):
        g, i, j = v.payload
        if not g:
            return "0"
        if g in ((1,), (-1,)):
            parts = []
            if i:
                parts.append("a" if i == 1 else "a^%d" % i)
            if j:
                parts.append("(1-a)" if j == 1 else "(1-a)^%d" % j)
            body = "*".join(parts) if parts else "1"
            return body if g == (1,) else "-" + body
        # non-unit: only used for debugging/round-tripping ring values
        terms = []
        for d in range(len(g) - 1, -1, -1):
            c = g[d]
            if c == 0:
                continue
            mono = "1" if d == 0 else ("a" if d == 1 else "a^%d" % d)
            if c == 1 and d > 0:
                t = mono
            elif c == -1 and d > 0:
                t = "-" + mono
            else:
                t = str(c) if d == 0 else "%d*%s" % (c, mono)
            terms.append(t)
        body = "+".join(terms).replace("+-", "-")
        if i or j:
            tail = []
            if i:
                tail.append("a" if i == 1 else "a^%d" % i)
            if j:
                tail.append("(1-a)" if j == 1 else "(1-a)^%d" % j)
            return "(%s)*%s" % (body, "*".join(tail))
        return body

    def parse_value(self, s):
        s = s.replace(" ", "")
        if s == "0":
            return self.zero
        sign = 1
        if s.startswith("-"):
            sign = -1
            s = s[1:]
        i = j = 0
        for factor in s.split("*"):
            if factor == "1":
                continue
            if factor == "a":
                i += 1
            elif factor.startswith("a^"):
                i += int(factor[2:])
            elif factor == "(1-a)":
                j += 1
            elif factor.startswith("(1-a)^"):
                j += int(factor[6:])
            else:
                raise PfError("bad nearregular literal: %r" % s)
        return self.unit(sign, i, j)


def _nr_subst_map(field, image_of_alpha):
    def phi(v):
        g, i, j = v.payload
        if not g:
            return field.zero
        img_a = image_of_alpha
        img_b = field.add(field.one, field.neg(img_a))
        out = field.zero
        apow = field.one
        for c in g:
            out = field.add(out, field.mul(field.from_int(c), apow))
            apow = field.mul(apow, img_a)
        half = out
        for _ in range(abs(i)):
            half = field.mul(half, img_a if i > 0 else field.inv(img_a))
        for _ in range(abs(j)):
            half = field.mul(half, img_b if j > 0 else field.inv(img_b))
        return half
    return phi


_FIELD_CACHE = {}


def make_partial_field(field_id):
    """Return the (cached) partial field named by *field_id*.

    Accepted ids: "gf2", "gf3", "gf5", ... (prime), "gf4", "gf8",
    "regular", "dyadic", "sixthroots", "nearregular".
    """
    key = str(field_id).strip().lower().replace("-", "").replace("_", "")
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    if key == "gf4":
        f = GF2Power(4, 0b111)
    elif key == "gf8":
        f = GF2Power(8, 0b1011)
    elif key.startswith("gf"):
        f = GFPrime(int(key[2:]))
    elif key == "regular":
        f = Regular()
    elif key in ("dyadic",):
        f = Dyadic()
    elif key in ("sixthroots", "sqrt6", "s"):
        f = SixthRoots()
    elif key in ("nearregular", "u1"):
        f = NearRegular()
    else:
        raise PfError("unsupported partial field id: %r" % field_id)
    _FIELD_CACHE[key] = f
    return f


SUPPORTED_FIELDS = ("gf2", "gf3", "gf4", "gf5", "gf7", "gf8",
                    "regular", "dyadic", "sixthroots", "nearregular")


class Homomorphism:
    """A named partial-field homomorphism from the built-in catalog."""

    def __init__(self, name, source, target, fn):
        self.name = name
        self.source = source
        self.target = target
        self._fn = fn

    def __call__(self, v):
        if not isinstance(v, PfValue) or v.field is not self.source:
            raise PfError("homomorphism %s is not defined on %r" % (self.name, v))
        return self._fn(v)

    def __repr__(self):
        return "Homomorphism(%s)" % self.name


def _regular_to_gf(target):
    def fn(v):
        return target.from_int(v.payload)
    return fn


def _dyadic_to_gf(target):
    inv2 = target.inv(target.from_int(2))
    def fn(v):
        m, k = v.payload
        out = target.from_int(m)
        two = target.from_int(2) if k >= 0 else inv2
        for _ in range(abs(k)):
            out = target.mul(out, two)
        return out
    return fn


def _sixthroots_to_gf(target, zeta_image):
    def fn(v):
        a, b = v.payload
        return target.add(target.from_int(a),
                          target.mul(target.from_int(b), zeta_image))
    return fn


def _nearregular_to_gf(target, a_image):
    one_minus = target.add(target.one, target.neg(a_image))
    if a_image.is_zero() or one_minus.is_zero():
        raise PfError("nearregular image of a must avoid 0 and 1")
    def fn(v):
        g, i, j = v.payload
        if not g:
            return target.zero
        out = target.zero
        apow = target.one
        for c in g:
            out = target.add(out, target.mul(target.from_int(c), apow))
            apow = target.mul(apow, a_image)
        for _ in range(abs(i)):
            out = target.mul(out, a_image if i > 0 else target.inv(a_image))
        for _ in range(abs(j)):
            out = target.mul(out, one_minus if j > 0 else target.inv(one_minus))
        return out
    return fn


def homomorphism(source_id, target_id, param=None):
    """Look up a built-in homomorphism; *param* picks the image where needed.

    regular -> gf(q) for any supported q; dyadic -> gf(p) for odd primes;
    sixthroots -> gf4 (zeta -> w) or gf7 (zeta -> 3);
    nearregular -> gf(q >= 3) with a -> param (defaults to the least valid image).
    """
    src = make_partial_field(source_id)
    tgt = make_partial_field(target_id)
    name = "%s->%s" % (src.name, tgt.name)
    if isinstance(src, Regular):
        return Homomorphism(name, src, tgt, _regular_to_gf(tgt))
    if isinstance(src, Dyadic):
        if not isinstance(tgt, GFPrime) or tgt.p == 2:
            raise PfError("dyadic maps only to gf(p) with p odd")
        return Homomorphism(name, src, tgt, _dyadic_to_gf(tgt))
    if isinstance(src, SixthRoots):
        if tgt.name == "gf4":
            img = tgt.parse_value("w")
        elif tgt.name == "gf7":
            img = tgt.from_int(3)
        else:
            raise PfError("sixthroots maps only to gf4 or gf7 in the catalog")
        return Homomorphism(name, src, tgt, _sixthroots_to_gf(tgt, img))
    if isinstance(src, NearRegular):
        if not tgt.finite or tgt.name == "gf2":
            raise PfError("nearregular maps to gf(q) with q >= 3")
        if param is None:
            candidates = [u for u in tgt.units()
                          if not u.is_zero() and not tgt.add(tgt.one, tgt.neg(u)).is_zero()]
            img = candidates[0]
        else:
            img = tgt.parse_value(str(param)) if isinstance(param, str) else tgt.coerce(param)
        nm = "%s[a->%s]" % (name, tgt.format_value(img))
        return Homomorphism(nm, src, tgt, _nearregular_to_gf(tgt, img))
    raise PfError("no built-in homomorphism %s -> %s" % (src.name, tgt.name))


def finitary_witness(field):
    """One homomorphism to a finite field, witnessing that *field* is finitary."""
    if field.finite:
        return Homomorphism("id", field, field, lambda v: v)
    if isinstance(field, Regular):
        return homomorphism(field.name, "gf2")
    if isinstance(field, Dyadic):
        return homomorphism(field.name, "gf3")
    if isinstance(field, SixthRoots):
        return homomorphism(field.name, "gf4")
    if isinstance(field, NearRegular):
        return homomorphism(field.name, "gf3")
    raise PfError("no finitary witness for %s" % field.name)
