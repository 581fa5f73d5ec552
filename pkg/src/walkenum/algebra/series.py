"""Exact truncated power series over Q.

A SeriesPrefix is a finite list of Fraction coefficients c[0..N] together with
a scale m >= 1.  The scale records that one unit of the series variable stands
for 1/m of a length unit of the original problem (fractional x-displacements
are cleared to integers by the step-set normalizer, which multiplies every
length by m).  Arithmetic truncates to the shorter operand; all coefficients
stay exact rationals.
"""

from fractions import Fraction

from ..errors import NonIntegralCoefficients


def _coerce(values):
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


class SeriesPrefix:
    __slots__ = ("coeffs", "scale")

    def __init__(self, coeffs, scale=1):
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        self.coeffs = _coerce(coeffs)
        self.scale = int(scale)

    @property
    def order(self):
        """Truncation order N: coefficients 0..N are known."""
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, SeriesPrefix):
            return NotImplemented
        return self.coeffs == other.coeffs and self.scale == other.scale

    def __hash__(self):
        return hash((self.coeffs, self.scale))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        if len(self.coeffs) > 8:
            shown += ", ..."
        return f"SeriesPrefix([{shown}], scale={self.scale})"

    def _check_scale(self, other):
        if self.scale != other.scale:
            raise ValueError("scale mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not self.coeffs:
                return self
            head = (self.coeffs[0] + other,) + self.coeffs[1:]
            return SeriesPrefix(head, self.scale)
        self._check_scale(other)
        n = min(len(self.coeffs), len(other.coeffs))
        return SeriesPrefix(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)), self.scale
        )

    __radd__ = __add__

    def __neg__(self):
        return SeriesPrefix(tuple(-c for c in self.coeffs), self.scale)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SeriesPrefix(tuple(c * other for c in self.coeffs), self.scale)
        self._check_scale(other)
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * n
        for i in range(min(len(a), n)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
        return SeriesPrefix(out, self.scale)

    __rmul__ = __mul__

    def pow(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = SeriesPrefix((Fraction(1),) * 1, self.scale).extended(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def extended(self, order):
        """Pad with zeros up to the given order (no new information claimed)."""
        if order <= self.order:
            return self
        pad = (Fraction(0),) * (order - self.order)
        return SeriesPrefix(self.coeffs + pad, self.scale)

    def truncated(self, order):
        if order >= self.order:
            return self
        return SeriesPrefix(self.coeffs[: order + 1], self.scale)

    def shifted(self, k):
        """Multiply by t^k, keeping the same truncation order."""
        if k == 0:
            return self
        if k < 0:
            raise ValueError("negative shift")
        pad = (Fraction(0),) * min(k, len(self.coeffs))
        return SeriesPrefix((pad + self.coeffs)[: len(self.coeffs)], self.scale)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def decimated(self, m=None):
        """Keep every m-th coefficient (default: the scale), dropping the scale.

        Valid presentation only when all skipped coefficients are zero; raises
        otherwise since the decimation would lose information.
        """
        m = self.scale if m is None else m
        if m == 1:
            return SeriesPrefix(self.coeffs, 1)
        for i, c in enumerate(self.coeffs):
            if i % m and c:
                raise ValueError(f"nonzero coefficient at index {i} not divisible by {m}")
        return SeriesPrefix(self.coeffs[::m], 1)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self):
        return {
            "scale": self.scale,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc):
        return cls([parse_rational(c) for c in doc["coeffs"]], doc.get("scale", 1))

    def bfile(self, offset=0):
        """OEIS-style b-file text: one 'n a(n)' pair per line, newline terminated."""
        if not self.is_integral():
            raise NonIntegralCoefficients("sequence has non-integer terms")
        lines = [f"{offset + i} {c.numerator}" for i, c in enumerate(self.coeffs)]
        return "\n".join(lines) + "\n"


def format_rational(c):
    c = c if isinstance(c, Fraction) else Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text):
    from ..errors import ParseError

    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


def zeros(order, scale=1):
    return SeriesPrefix((Fraction(0),) * (order + 1), scale)


def one(order, scale=1):
    return SeriesPrefix((Fraction(1),) + (Fraction(0),) * order, scale)
