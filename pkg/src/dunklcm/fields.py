"""Exact arithmetic in Q, real quadratic fields Q(sqrt(d)) and cyclotomic fields Q(zeta_m).

Elements are coefficient vectors over the power basis of the defining
polynomial: x^2 - d for quadratic fields, the m-th cyclotomic polynomial
for Q(zeta_m).  All coefficients are `fractions.Fraction`, so every
operation is exact and arbitrary precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

RATIONAL = "rational"
QUADRATIC = "quadratic"
CYCLOTOMIC = "cyclotomic"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Univariate division with remainder, coefficients ascending."""
    num = list(num)
    out = [_ZERO] * max(1, len(num) - len(den) + 1)
    dlead = den[-1]
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        q = num[-1] / dlead
        out[shift] = q
        for i, c in enumerate(den):
            num[shift + i] -= q * c
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return out, num


_cyclotomic_cache: dict[int, tuple[Fraction, ...]] = {}


def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Coefficients of the m-th cyclotomic polynomial, ascending degree."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    cached = _cyclotomic_cache.get(m)
    if cached is not None:
        return cached
    # x^m - 1 divided by the cyclotomic polynomials of all proper divisors.
    num = [_ZERO] * (m + 1)
    num[0] = Fraction(-1)
    num[m] = _ONE
    num_list = num
    for d in range(1, m):
        if m % d == 0:
            num_list, rem = _poly_divmod(num_list, list(cyclotomic_polynomial(d)))
            if rem:
                raise ArithmeticError("cyclotomic recursion produced a remainder")
    result = tuple(num_list)
    _cyclotomic_cache[m] = result
    return result


class Field:
    """One of Q, Q(sqrt(d)) or Q(zeta_m), produced by the classmethod constructors."""

    __slots__ = ("kind", "param", "degree", "_pow_table", "_conj_table")

    _instances: dict[tuple[str, int | None], "Field"] = {}

    def __init__(self, kind: str, param: int | None, degree: int):
        self.kind = kind
        self.param = param
        self.degree = degree
        self._pow_table: tuple[tuple[Fraction, ...], ...] | None = None
        self._conj_table: tuple[tuple[Fraction, ...], ...] | None = None

    @classmethod
    def rational(cls) -> "Field":
        return cls._get(RATIONAL, None, 1)

    @classmethod
    def quadratic(cls, d: int) -> "Field":
        if d in (0, 1) or not _squarefree(d):
            raise ValueError(f"quadratic field parameter must be squarefree and not 0 or 1, got {d}")
        return cls._get(QUADRATIC, d, 2)

    @classmethod
    def cyclotomic(cls, m: int) -> "Field":
        if m < 3:
            raise ValueError(f"cyclotomic field order must be at least 3, got {m}")
        degree = len(cyclotomic_polynomial(m)) - 1
        return cls._get(CYCLOTOMIC, m, degree)

    @classmethod
    def _get(cls, kind: str, param: int | None, degree: int) -> "Field":
        key = (kind, param)
        inst = cls._instances.get(key)
        if inst is None:
            inst = cls(kind, param, degree)
            cls._instances[key] = inst
        return inst

    # -- basic element factories ------------------------------------------

    def element(self, value: "FieldElement | Fraction | int") -> "FieldElement":
        """Embed a rational number, or pass through an element of this field."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        coeffs = [_ZERO] * self.degree
        coeffs[0] = Fraction(value)
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def generator(self) -> "FieldElement":
        """sqrt(d) or zeta_m; errors for the rational field."""
        if self.kind == RATIONAL:
            raise ValueError("the rational field has no generator")
        coeffs = [_ZERO] * self.degree
        coeffs[1] = _ONE
        return FieldElement(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Iterable[Fraction | int]) -> "FieldElement":
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > self.degree:
            raise ValueError("coefficient vector longer than field degree")
        vec.extend([_ZERO] * (self.degree - len(vec)))
        return FieldElement(self, tuple(vec))

    # -- reduction tables --------------------------------------------------

    def _powers(self) -> tuple[tuple[Fraction, ...], ...]:
        """Reduced coefficient vectors of x^k for k in [deg, 2*deg-2] (cyclotomic only)."""
        if self._pow_table is None:
            n = self.degree
            mod = cyclotomic_polynomial(self.param)  # monic
            rows: list[tuple[Fraction, ...]] = []
            # x^n = -(lower part of the minimal polynomial)
            cur = [-c for c in mod[:n]]
            rows.append(tuple(cur))
            for _ in range(n - 2):
                nxt = [_ZERO] + cur[: n - 1]
                top = cur[n - 1]
                if top:
                    for i in range(n):
                        nxt[i] -= top * mod[i]
                cur = nxt
                rows.append(tuple(cur))
            self._pow_table = tuple(rows)
        return self._pow_table

    def _conjugates(self) -> tuple[tuple[Fraction, ...], ...]:
        """Reduced coefficient vectors of zeta^(-j) for j in range(degree)."""
        if self._conj_table is None:
            m = self.param
            zeta = self.generator()
            cols = [self.one().coeffs]
            for j in range(1, self.degree):
                cols.append((zeta ** ((m - j) % m)).coeffs)
            self._conj_table = tuple(cols)
        return self._conj_table

    def __repr__(self) -> str:
        if self.kind == RATIONAL:
            return "Q"
        if self.kind == QUADRATIC:
            return f"Q(sqrt({self.param}))"
        return f"Q(zeta_{self.param})"

    def descriptor(self) -> dict:
        return {"kind": self.kind, "param": self.param, "degree": self.degree}


class FieldElement:
    """An element of a Field, stored as a reduced coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("cannot mix elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        a, b = self.coeffs, o.coeffs
        if f.kind == RATIONAL:
            return FieldElement(f, (a[0] * b[0],))
        if f.kind == QUADRATIC:
            d = f.param
            return FieldElement(f, (a[0] * b[0] + d * a[1] * b[1], a[0] * b[1] + a[1] * b[0]))
        n = f.degree
        conv = [_ZERO] * (2 * n - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
        out = conv[:n]
        table = f._powers()
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                row = table[k - n]
                for i, rc in enumerate(row):
                    if rc:
                        out[i] += c * rc
        return FieldElement(f, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        f = self.field
        if self.is_zero():
            raise ZeroDivisionError("division by zero field element")
        if f.kind == RATIONAL:
            return FieldElement(f, (1 / self.coeffs[0],))
        if f.kind == QUADRATIC:
            a, b = self.coeffs
            norm = a * a - f.param * b * b
            if norm == 0:
                raise ZeroDivisionError("division by zero field element")
            return FieldElement(f, (a / norm, -b / norm))
        # extended Euclid against the minimal polynomial
        mod = list(cyclotomic_polynomial(f.param))
        r0, r1 = mod, list(self.coeffs)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [_ZERO], [_ONE]
        while True:
            if len(r1) == 1:
                inv_lead = 1 / r1[0]
                coeffs = [c * inv_lead for c in s1]
                return f.from_coeffs(coeffs)
            q, r2 = _poly_divmod(r0, r1)
            while r2 and r2[-1] == 0:
                r2.pop()
            if not r2:
                raise ZeroDivisionError("element not invertible modulo the minimal polynomial")
            # s2 = s0 - q*s1
            prod = [_ZERO] * (len(q) + len(s1) - 1)
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        if sc:
                            prod[i + j] += qc * sc
            s2 = [_ZERO] * max(len(s0), len(prod))
            for i, c in enumerate(s0):
                s2[i] += c
            for i, c in enumerate(prod):
                s2[i] -= c
            r0, r1, s0, s1 = r1, r2, s1, s2

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "FieldElement":
        """Complex conjugation: zeta_m -> zeta_m^(-1); real elements unchanged."""
        f = self.field
        if f.kind == RATIONAL:
            return self
        if f.kind == QUADRATIC:
            if f.param > 0:
                return self
            return FieldElement(f, (self.coeffs[0], -self.coeffs[1]))
        table = f._conjugates()
        out = [_ZERO] * f.degree
        for j, c in enumerate(self.coeffs):
            if c:
                col = table[j]
                for i, rc in enumerate(col):
                    if rc:
                        out[i] += c * rc
        return FieldElement(f, tuple(out))

    # -- structure ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.kind, self.field.param, self.coeffs))

    def sort_key(self) -> tuple:
        """Deterministic total order on elements of one field (not the real order)."""
        return tuple((c.numerator, c.denominator) for c in self.coeffs)

    def __repr__(self):
        return f"<{render_scalar(self)}>"

    def __str__(self):
        return render_scalar(self)


# -- rendering ----------------------------------------------------------------


def _render_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_term(coeff: Fraction, symbol: str) -> str:
    if coeff == 1:
        return symbol
    if coeff == -1:
        return f"-{symbol}"
    return f"{_render_fraction(coeff)}*{symbol}"


def render_scalar(x: FieldElement) -> str:
    """Plain text form: '3/2', '1+2*sqrt(5)', '1/3*z^2-z'."""
    f = x.field
    if f.kind == RATIONAL:
        return _render_fraction(x.coeffs[0])
    parts: list[str] = []
    if f.kind == QUADRATIC:
        symbols = ["", f"sqrt({f.param})"]
    else:
        symbols = [""] + ["z" if k == 1 else f"z^{k}" for k in range(1, f.degree)]
    for coeff, sym in zip(x.coeffs, symbols):
        if not coeff:
            continue
        text = _render_fraction(coeff) if not sym else _render_term(coeff, sym)
        if parts and not text.startswith("-"):
            parts.append("+" + text)
        else:
            parts.append(text)
    return "".join(parts) if parts else "0"


# -- parsing --------------------------------------------------------------------

_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _TOKEN_CHARS:
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r} in {text!r}")
    return tokens


class _Parser:
    """Recursive descent for +,-,*,/,^ over an atom algebra.

    The algebra supplies from_int(n), symbol(name) and sqrt(d); values must
    support +,-,*,/ and ** with int exponents.
    """

    def __init__(self, tokens: list[str], algebra):
        self.tokens = tokens
        self.pos = 0
        self.algebra = algebra

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens near {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                op = self.take()
                rhs = self.factor()
                value = value * rhs if op == "*" else self.algebra.divide(value, rhs)
            elif tok is not None and tok not in ("+", "-", ")", "^"):
                # juxtaposition, e.g. '2 sqrt(5)' coming from the radical glyph
                value = value * self.factor()
            else:
                return value

    def factor(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            return self.algebra.negate(self.factor())
        if tok == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            exp_tok = self.take()
            if not exp_tok.isdigit():
                raise ValueError(f"exponent must be an integer, got {exp_tok!r}")
            return self.algebra.power(base, sign * int(exp_tok))
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ValueError("missing closing parenthesis")
            return value
        if tok.isdigit():
            return self.algebra.from_int(int(tok))
        if tok == "sqrt":
            if self.take() != "(":
                raise ValueError("sqrt requires parentheses")
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            arg = self.take()
            if not arg.isdigit():
                raise ValueError("sqrt argument must be an integer")
            if self.take() != ")":
                raise ValueError("missing closing parenthesis after sqrt")
            return self.algebra.sqrt(sign * int(arg))
        return self.algebra.symbol(tok)


class _ScalarAlgebra:
    def __init__(self, field: Field):
        self.field = field

    def from_int(self, n: int) -> FieldElement:
        return self.field.element(n)

    def negate(self, x):
        return -x

    def divide(self, a, b):
        return a / b

    def power(self, x, n: int):
        return x ** n

    def sqrt(self, d: int) -> FieldElement:
        if self.field.kind == QUADRATIC and self.field.param == d:
            return self.field.generator()
        if d == 1:
            return self.field.one()
        raise ValueError(f"sqrt({d}) does not live in {self.field!r}")

    def symbol(self, name: str) -> FieldElement:
        if name == "z" and self.field.kind == CYCLOTOMIC:
            return self.field.generator()
        raise ValueError(f"unknown symbol {name!r} in scalar expression")


def parse_scalar(field: Field, text: str) -> FieldElement:
    """Parse the textual scalar grammar back into a field element.

    Accepts the unicode radical as a synonym for sqrt: '1+2√5'.
    """
    text = text.replace("√", " sqrt ")
    tokens = _tokenize(text)
    # rewrite "sqrt N" (from the unicode form, no parentheses) to sqrt ( N )
    fixed: list[str] = []
    i = 0
    while i < len(tokens):
        if tokens[i] == "sqrt" and i + 1 < len(tokens) and tokens[i + 1].isdigit():
            fixed.extend(["sqrt", "(", tokens[i + 1], ")"])
            i += 2
        else:
            fixed.append(tokens[i])
            i += 1
    return _Parser(fixed, _ScalarAlgebra(field)).parse()
