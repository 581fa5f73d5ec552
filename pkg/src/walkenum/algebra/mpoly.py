"""Sparse multivariate polynomials over Q with an explicit variable order.

An MPoly carries its own ordered tuple of variable names; index 0 is the
highest variable in the pure lexicographic order used throughout (elimination
orders put auxiliary unknowns first and the kept variable plus t last).
Exponent vectors are plain tuples aligned with that registry, so Python's
tuple comparison is exactly the lex order.
"""

from fractions import Fraction
from math import gcd as int_gcd

from ..errors import ParseError
from .polynomials import BiPoly, UniPoly
from .series import SeriesPrefix, format_rational, parse_rational

_ZERO = Fraction(0)


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        clean = {}
        for exp, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[tuple(exp)] = c
        self.terms = clean

    # --- constructors ---

    @classmethod
    def const(cls, vars, c):
        c = Fraction(c)
        zero = (0,) * len(tuple(vars))
        return cls(vars, {zero: c} if c else {})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = 1
        return cls(vars, {tuple(exp): Fraction(1)})

    @classmethod
    def t_monomial(cls, vars, k, coeff=1, t_name="t"):
        """coeff * t^k on the given registry."""
        vars = tuple(vars)
        coeff = Fraction(coeff)
        if not coeff:
            return cls(vars, {})
        exp = [0] * len(vars)
        exp[vars.index(t_name)] = k
        return cls(vars, {tuple(exp): coeff})

    @classmethod
    def from_unipoly(cls, vars, poly, t_name="t"):
        vars = tuple(vars)
        ti = vars.index(t_name)
        terms = {}
        for i, c in enumerate(poly.coeffs):
            if c:
                exp = [0] * len(vars)
                exp[ti] = i
                terms[tuple(exp)] = c
        return cls(vars, terms)

    # --- basic structure ---

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def term_count(self):
        return len(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def support(self):
        """Set of variable names that actually occur."""
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.vars[i])
        return used

    def leading(self):
        """(exponent, coefficient) of the lex-leading term."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    # --- arithmetic ---

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("variable registries differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, _ZERO) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly(self.vars)
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, _ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # --- structure changes ---

    def lift(self, vars):
        """Re-embed into a larger registry (superset of variable names)."""
        vars = tuple(vars)
        idx = [vars.index(v) for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            exp = [0] * len(vars)
            for i, k in zip(idx, e):
                exp[i] = k
            terms[tuple(exp)] = c
        return MPoly(vars, terms)

    def drop_var(self, name):
        """Remove an unused variable from the registry."""
        i = self.vars.index(name)
        if any(e[i] for e in self.terms):
            raise ValueError(f"{name} still occurs")
        vars = self.vars[:i] + self.vars[i + 1 :]
        return MPoly(vars, {e[:i] + e[i + 1 :]: c for e, c in self.terms.items()})

    def substitute(self, name, replacement):
        """Replace a variable by a polynomial over the same registry."""
        self._check(replacement)
        i = self.vars.index(name)
        powers = {0: MPoly.const(self.vars, 1)}

        def power(k):
            if k not in powers:
                powers[k] = power(k - 1) * replacement
            return powers[k]

        out = MPoly(self.vars)
        for e, c in self.terms.items():
            k = e[i]
            base = list(e)
            base[i] = 0
            term = MPoly(self.vars, {tuple(base): c})
            out = out + (term * power(k) if k else term)
        return out

    # --- conversions ---

    def coefficient_of(self, name, k):
        """Coefficient of name**k, as an MPoly with name zeroed out."""
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == k:
                reduced = list(e)
                reduced[i] = 0
                terms[tuple(reduced)] = c
        return MPoly(self.vars, terms)

    def to_unipoly(self, t_name="t"):
        ti = self.vars.index(t_name)
        out = {}
        for e, c in self.terms.items():
            if any(k for i, k in enumerate(e) if i != ti and k):
                raise ValueError("polynomial involves more than t")
            out[e[ti]] = c
        if not out:
            return UniPoly()
        coeffs = [_ZERO] * (max(out) + 1)
        for k, c in out.items():
            coeffs[k] = c
        return UniPoly(coeffs)

    def to_bipoly(self, target, t_name="t"):
        fi = self.vars.index(target)
        ti = self.vars.index(t_name)
        rows = {}
        for e, c in self.terms.items():
            for i, k in enumerate(e):
                if k and i not in (fi, ti):
                    raise ValueError(f"polynomial involves {self.vars[i]}")
            rows.setdefault(e[fi], {})[e[ti]] = c
        if not rows:
            return BiPoly([], target)
        coeffs = []
        for f in range(max(rows) + 1):
            row = rows.get(f, {})
            cs = [_ZERO] * (max(row, default=-1) + 1)
            for k, c in row.items():
                cs[k] = c
            coeffs.append(UniPoly(cs))
        return BiPoly(coeffs, target)

    def eval_series(self, assign, order, scale=1, t_name="t"):
        """Evaluate with series values for walk variables and t as the series variable."""
        ti = self.vars.index(t_name)
        acc = SeriesPrefix((0,) * (order + 1), scale)
        pow_cache = {}

        def var_power(i, k):
            key = (i, k)
            if key not in pow_cache:
                if k == 1:
                    pow_cache[key] = assign[self.vars[i]].extended(order)
                else:
                    pow_cache[key] = var_power(i, k - 1) * var_power(i, 1)
            return pow_cache[key]

        for e, c in self.terms.items():
            if e[ti] > order:
                continue
            term = None
            for i, k in enumerate(e):
                if i == ti or not k:
                    continue
                p = var_power(i, k)
                term = p if term is None else term * p
            if term is None:
                term = SeriesPrefix((c,) + (0,) * order, scale)
            else:
                term = term * c
            acc = acc + term.shifted(e[ti])
        return acc

    def primitive_normalize(self):
        """Clear denominators, divide integer content, make the lex-leading coeff positive."""
        if not self.terms:
            return self
        den_lcm = 1
        num_gcd = 0
        for c in self.terms.values():
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
            num_gcd = int_gcd(num_gcd, c.numerator)
        scale = Fraction(den_lcm, num_gcd)
        if self.terms[max(self.terms)] < 0:
            scale = -scale
        return MPoly(self.vars, {e: c * scale for e, c in self.terms.items()})

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [[list(e), format_rational(c)] for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, doc):
        try:
            vars = tuple(doc["vars"])
            terms = {tuple(e): parse_rational(c) for e, c in doc["terms"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("bad multivariate polynomial document") from exc
        return cls(vars, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{format_rational(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
