"""Dense exact polynomial arithmetic over Q.

UniPoly is a dense univariate polynomial in the length variable t.  RatFun is
a reduced ratio of two UniPoly whose denominator has a positive leading
coefficient (the canonical form used for generating functions of bounded
classes).  BiPoly is a polynomial in a single walk variable with UniPoly
coefficients; it is the exchange format for minimal polynomials.

Everything here is exact; no floats.
"""

from fractions import Fraction
from math import gcd as int_gcd

from ..errors import ParseError, PoleAtZero
from .series import SeriesPrefix, format_rational, parse_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class UniPoly:
    """Univariate polynomial over Q; () is the zero polynomial."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim([c if isinstance(c, Fraction) else Fraction(c) for c in coeffs])

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def t_power(cls, k, c=1):
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else _ZERO

    def constant(self):
        return self.coeffs[0] if self.coeffs else _ZERO

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniPoly()
            return UniPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [_ZERO] * (dq + 1)
        inv_lc = 1 / other.lc()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lc
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self):
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def content_and_primitive(self):
        """Write self = c * prim with prim integer-primitive, positive leading coeff.

        Returns (c, prim); c carries the sign.  Zero maps to (0, 0).
        """
        if self.is_zero():
            return _ZERO, self
        num_gcd = 0
        den_lcm = 1
        for c in self.coeffs:
            num_gcd = int_gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        if self.lc() < 0:
            content = -content
        return content, UniPoly(tuple(c / content for c in self.coeffs))

    def primitive(self):
        return self.content_and_primitive()[1]

    def gcd(self, other):
        """Primitive gcd (integer-primitive, positive leading coefficient)."""
        a = self.primitive()
        b = other.primitive()
        if a.is_zero():
            return b
        while not b.is_zero():
            if a.degree < b.degree:
                a, b = b, a
                continue
            # pseudo-remainder keeps the PRS primitive and growth controlled
            r = (a * (b.lc() ** (a.degree - b.degree + 1))) % b
            a, b = b, r.primitive()
        return a.primitive()

    def squarefree_part(self):
        if self.degree <= 0:
            return UniPoly((1,))
        return self.exact_div(self.gcd(self.derivative())).primitive()

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (factor, multiplicity), product of f^m = primitive(self)."""
        p = self.primitive()
        if p.degree <= 0:
            return []
        out = []
        g = p.gcd(p.derivative())
        w = p.exact_div(g)
        y = p.derivative().exact_div(g)
        i = 1
        while w.degree > 0:
            z = y - w.derivative()
            if z.is_zero():
                out.append((w.primitive(), i))
                break
            f = w.gcd(z)
            if f.degree > 0:
                out.append((f.primitive(), i))
            w = w.exact_div(f)
            y = z.exact_div(f)
            i += 1
        return out

    def decimate(self, m):
        """Substitute t^m -> t; requires support contained in multiples of m."""
        for i, c in enumerate(self.coeffs):
            if i % m and c:
                raise ValueError("exponent not divisible by decimation factor")
        return UniPoly(self.coeffs[::m])

    def inflate(self, m):
        """Substitute t -> t^m."""
        if m == 1 or self.is_zero():
            return self
        out = [_ZERO] * (self.degree * m + 1)
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return UniPoly(out)

    def support_gcd(self):
        g = 0
        for i, c in enumerate(self.coeffs):
            if i and c:
                g = int_gcd(g, i)
        return g

    def to_series(self, order, scale=1):
        cs = list(self.coeffs[: order + 1])
        cs += [_ZERO] * (order + 1 - len(cs))
        return SeriesPrefix(cs, scale)

    def to_json(self):
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, list):
            raise ParseError("polynomial coefficients must be a list")
        return cls([parse_rational(c) for c in doc])

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                term = format_rational(c)
            else:
                mag = format_rational(abs(c))
                var = "t" if i == 1 else f"t^{i}"
                term = var if mag == "1" else f"{mag}*{var}"
                term = ("-" if c < 0 else "") + term
            parts.append(term)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = __str__


class RatFun:
    """Reduced rational function over Q(t); denominator has positive leading coeff."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = UniPoly((num,))
        if den is None:
            den = UniPoly((1,))
        elif isinstance(den, (int, Fraction)):
            den = UniPoly((den,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = UniPoly(), UniPoly((1,))
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        # normalize so den is integer-primitive; sign by the constant term when
        # it is nonzero (g.f. convention: den(0) > 0) else by the leading one
        c, den = den.content_and_primitive()
        num = num * (1 / c)
        if den.constant() < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = RatFun(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = RatFun(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = RatFun(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = RatFun(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = RatFun(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun(other) / self

    def inverse(self):
        return RatFun(UniPoly((1,))) / self

    def derivative(self):
        n, d = self.num, self.den
        return RatFun(n.derivative() * d - n * d.derivative(), d * d)

    def taylor(self, order, scale=1):
        """Power-series expansion to the given order; exact rational coefficients."""
        d0 = self.den.constant()
        if not d0:
            raise PoleAtZero("denominator vanishes at t = 0")
        num = self.num.coeffs
        den = self.den.coeffs
        out = []
        for n in range(order + 1):
            acc = num[n] if n < len(num) else _ZERO
            for j in range(1, min(n, len(den) - 1) + 1):
                acc -= den[j] * out[n - j]
            out.append(acc / d0)
        return SeriesPrefix(out, scale)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, doc):
        try:
            return cls(UniPoly.from_json(doc["num"]), UniPoly.from_json(doc["den"]))
        except KeyError as exc:
            raise ParseError("rational function needs 'num' and 'den'") from exc

    def __str__(self):
        if self.is_poly():
            lead = self.den.constant()
            return str(self.num * (1 / lead)) if lead != 1 else str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


class BiPoly:
    """Polynomial in one walk variable with UniPoly coefficients in t.

    coeffs[i] is the coefficient of var^i.  The canonical form produced by
    primitive() clears all rational denominators, divides out the integer
    content, and makes the leading t-coefficient of the leading var-coefficient
    positive.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs, var="F"):
        coeffs = [c if isinstance(c, UniPoly) else UniPoly(c) for c in coeffs]
        n = len(coeffs)
        while n and coeffs[n - 1].is_zero():
            n -= 1
        self.coeffs = tuple(coeffs[:n])
        self.var = var

    @property
    def degree_f(self):
        return len(self.coeffs) - 1

    @property
    def degree_t(self):
        return max((c.degree for c in self.coeffs), default=-1)

    def is_zero(self):
        return not self.coeffs

    def lc_f(self):
        return self.coeffs[-1] if self.coeffs else UniPoly()

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else UniPoly()

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.var == other.var

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __add__(self, other):
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = a[i] + c
        return BiPoly(a, self.var)

    def __neg__(self):
        return BiPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            return BiPoly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return BiPoly([], self.var)
        out = [UniPoly() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BiPoly(out, self.var)

    __rmul__ = __mul__

    def derivative_f(self):
        return BiPoly([i * c for i, c in enumerate(self.coeffs) if i], self.var)

    def derivative_t(self):
        return BiPoly([c.derivative() for c in self.coeffs], self.var)

    def eval_series(self, s):
        """Evaluate at a SeriesPrefix, truncated to its order (Horner in the walk var)."""
        acc = SeriesPrefix((0,) * (s.order + 1), s.scale)
        for c in reversed(self.coeffs):
            acc = acc * s + c.to_series(s.order, s.scale)
        return acc

    def eval_f(self, x):
        """Evaluate the walk variable at a Fraction, leaving a UniPoly in t."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_t(self, x):
        """Evaluate t at a Fraction, leaving a UniPoly in the walk variable."""
        return UniPoly([c(x) for c in self.coeffs])

    def primitive(self):
        if self.is_zero():
            return self
        den_lcm = 1
        num_gcd = 0
        for c in self.coeffs:
            for q in c.coeffs:
                den_lcm = den_lcm * q.denominator // int_gcd(den_lcm, q.denominator)
                num_gcd = int_gcd(num_gcd, q.numerator)
        scale = Fraction(den_lcm, num_gcd)
        if self.lc_f().lc() < 0:
            scale = -scale
        return BiPoly([c * scale for c in self.coeffs], self.var)

    def content_t(self):
        """Gcd over Q[t] of all coefficients (primitive, positive leading coeff)."""
        g = UniPoly()
        for c in self.coeffs:
            g = g.gcd(c)
            if g.degree == 0:
                break
        return g

    def resultant_f(self, other):
        """Resultant with respect to the walk variable, as a UniPoly in t."""
        return _bareiss_resultant(self.coeffs, other.coeffs)

    def discriminant(self):
        """resultant(p, dp/dF) / lc, canonicalized primitive with positive lc."""
        res = self.resultant_f(self.derivative_f())
        disc = res.exact_div(self.lc_f())
        return disc.content_and_primitive()[1]

    def decimate_t(self, m):
        return BiPoly([c.decimate(m) for c in self.coeffs], self.var)

    def inflate_t(self, m):
        return BiPoly([c.inflate(m) for c in self.coeffs], self.var)

    def t_support_gcd(self):
        g = 0
        for c in self.coeffs:
            g = int_gcd(g, c.support_gcd())
            for i, q in enumerate(c.coeffs):
                if q and i:
                    g = int_gcd(g, i)
        return g

    def to_json(self):
        return {"var": self.var, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc):
        try:
            return cls([UniPoly.from_json(c) for c in doc["coeffs"]], doc["var"])
        except (KeyError, TypeError) as exc:
            raise ParseError("bivariate polynomial needs 'var' and 'coeffs'") from exc

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree_f, -1, -1):
            c = self.coeff(i)
            if c.is_zero():
                continue
            if i == 0:
                parts.append(f"({c})" if len(c.coeffs) > 1 else str(c))
                continue
            head = self.var if i == 1 else f"{self.var}^{i}"
            if c == UniPoly((1,)):
                parts.append(head)
            else:
                parts.append(f"({c})*{head}")
        return " + ".join(parts)

    __repr__ = __str__


def series_eval_poly(p, s):
    """Evaluate a BiPoly at a series prefix; zero iff the prefix satisfies p to order N."""
    return p.eval_series(s)


def _bareiss_resultant(a_coeffs, b_coeffs):
    """Sylvester-matrix resultant over Q[t] by fraction-free elimination."""
    m = len(a_coeffs) - 1
    n = len(b_coeffs) - 1
    if m < 0 or n < 0:
        return UniPoly()
    if m == 0:
        return a_coeffs[0] ** n if n >= 0 else UniPoly((1,))
    if n == 0:
        return b_coeffs[0] ** m
    size = m + n
    rows = []
    arev = list(reversed(a_coeffs))
    brev = list(reversed(b_coeffs))
    for i in range(n):
        rows.append([UniPoly()] * i + arev + [UniPoly()] * (size - i - m - 1))
    for i in range(m):
        rows.append([UniPoly()] * i + brev + [UniPoly()] * (size - i - n - 1))
    return _bareiss_det(rows)


def _bareiss_det(mat):
    n = len(mat)
    sign = 1
    prev = UniPoly((1,))
    for k in range(n - 1):
        if mat[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not mat[i][k].is_zero()), None)
            if pivot is None:
                return UniPoly()
            mat[k], mat[pivot] = mat[pivot], mat[k]
            sign = -sign
        pk = mat[k][k]
        for i in range(k + 1, n):
            row_i = mat[i]
            row_k = mat[k]
            head = row_i[k]
            for j in range(k + 1, n):
                num = pk * row_i[j] - head * row_k[j]
                row_i[j] = num.exact_div(prev)
            row_i[k] = UniPoly()
        prev = pk
    det = mat[n - 1][n - 1]
    return det * sign if sign < 0 else det


# --- dense polynomials in the walk variable over Q(t) ---------------------
#
# Thin helpers used by elimination (trial division of candidates) and by the
# derivative-reduction route from minimal polynomials to recurrences.  A
# polynomial is a list of RatFun coefficients, index = power, no trailing
# zeros.


def rf_from_bipoly(p):
    return [RatFun(c) for c in p.coeffs]


def rf_trim(a):
    n = len(a)
    while n and a[n - 1].is_zero():
        n -= 1
    return a[:n]


def rf_scale(a, s):
    return rf_trim([c * s for c in a])


def rf_sub(a, b):
    out = list(a) + [RatFun(0)] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return rf_trim(out)


def rf_mul(a, b):
    if not a or not b:
        return []
    out = [RatFun(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return rf_trim(out)


def rf_divmod(a, b):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(a)
    quot = [RatFun(0)] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse()
    db = len(b) - 1
    for k in range(len(rem) - len(b), -1, -1):
        c = rem[k + db] * inv
        if not c.is_zero():
            quot[k] = c
            for j, bc in enumerate(b):
                rem[k + j] = rem[k + j] - c * bc
    return rf_trim(quot), rf_trim(rem)


def rf_mod(a, b):
    return rf_divmod(a, b)[1]


def rf_ext_gcd(a, b):
    """Extended Euclid in Q(t)[F]: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = list(a), list(b)
    u0, u1 = [RatFun(1)], []
    v0, v1 = [], [RatFun(1)]
    while r1:
        q, r = rf_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, rf_sub(u0, rf_mul(q, u1))
        v0, v1 = v1, rf_sub(v0, rf_mul(q, v1))
    if r0:
        lead = r0[-1].inverse()
        r0 = rf_scale(r0, lead)
        u0 = rf_scale(u0, lead)
        v0 = rf_scale(v0, lead)
    return r0, u0, v0
