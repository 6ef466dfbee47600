"""Polynomials over F_p: parsing, structure tests, and irreducibility.

Univariate polynomials are sparse maps degree -> coefficient; bivariate ones
are sparse maps (x-degree, y-degree) -> coefficient.  Zero coefficients are
never stored, so the zero polynomial is the empty map and its degree is the
-inf sentinel.

Two independent routes decide whether a shifted homogeneous polynomial
h(x, y) - alpha stays irreducible over the algebraic closure:

* `abs_irreducible_shift` uses the multiplicity criterion: h factors into
  linear forms over the closure, and the shifted polynomial is reducible
  exactly when h is a scalar times a proper power of a lower-degree form.
  The gcd of the multiplicities is read off a squarefree decomposition of
  h(t, 1), which needs deg h < p.
* `factor_oracle` knows nothing about that criterion: it enumerates every
  normalized candidate divisor with coefficients in F_{p^d}, d <= d_max, and
  tests divisibility.  The two routes are cross-checked exhaustively in the
  test suite and must never be merged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, inf
from typing import Iterable, Optional

from .errors import (
    BudgetExceeded,
    DegreeOverflow,
    DegreeVsCharacteristic,
    NotHomogeneous,
    ParseError,
    ZeroPolynomial,
    ZeroShift,
)
from .field import EXT_ELEMENT_BUDGET, ExtField, Prime, ext_field

PARSE_DEGREE_CAP = 16
NEG_INF = -inf

# ----------------------------------------------------------------------
# univariate


class UniPoly:
    """Sparse univariate polynomial over F_p."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Optional[dict[int, int]] = None):
        self.p = int(p)
        clean: dict[int, int] = {}
        if coeffs:
            for d, c in coeffs.items():
                c %= self.p
                if c:
                    clean[d] = c
        self.coeffs = clean

    # construction helpers
    @classmethod
    def zero(cls, p: int) -> "UniPoly":
        return cls(p)

    @classmethod
    def const(cls, p: int, c: int) -> "UniPoly":
        return cls(p, {0: c})

    @classmethod
    def x(cls, p: int) -> "UniPoly":
        return cls(p, {1: 1})

    @classmethod
    def from_list(cls, p: int, low_first: Iterable[int]) -> "UniPoly":
        return cls(p, {i: c for i, c in enumerate(low_first)})

    # basic queries
    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[max(self.coeffs)]

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic
    def _check(self, other: "UniPoly"):
        if self.p != other.p:
            raise ValueError("mixed moduli")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return UniPoly(self.p, out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) - c
        return UniPoly(self.p, out)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        out: dict[int, int] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                k = d1 + d2
                out[k] = out.get(k, 0) + c1 * c2
        return UniPoly(self.p, out)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(self.p, {d: v * c for d, v in self.coeffs.items()})

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        return self.scale(pow(self.lead(), -1, self.p))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = dict(self.coeffs)
        quo: dict[int, int] = {}
        dB = other.degree
        inv_lead = pow(other.lead(), -1, p)
        while rem:
            dR = max(rem)
            if dR < dB:
                break
            c = rem[dR] * inv_lead % p
            quo[dR - dB] = c
            for d2, c2 in other.coeffs.items():
                k = dR - dB + d2
                v = (rem.get(k, 0) - c * c2) % p
                if v:
                    rem[k] = v
                elif k in rem:
                    del rem[k]
        return UniPoly(p, quo), UniPoly(p, rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def derivative(self) -> "UniPoly":
        return UniPoly(self.p, {d - 1: d * c for d, c in self.coeffs.items() if d})

    def __call__(self, x: int) -> int:
        p = self.p
        acc = 0
        for d, c in self.coeffs.items():
            acc = (acc + c * pow(x, d, p)) % p
        return acc

    def dense(self) -> list[int]:
        """Coefficients low degree first; empty list for the zero polynomial."""
        if not self.coeffs:
            return []
        out = [0] * (max(self.coeffs) + 1)
        for d, c in self.coeffs.items():
            out[d] = c
        return out

    def to_text(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            c = self.coeffs[d]
            if d == 0:
                parts.append(str(c))
            else:
                v = var if d == 1 else f"{var}^{d}"
                parts.append(v if c == 1 else f"{c}*{v}")
        return "+".join(parts)

    def __repr__(self):
        return f"UniPoly({self.to_text()!r} mod {self.p})"


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; constant gcds come back as the constant 1."""
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomial("gcd of two zero polynomials")
    if f.p != g.p:
        raise ValueError("mixed moduli")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """f = scalar * prod(factor^multiplicity) with monic squarefree factors."""

    p: int
    scalar: int
    parts: tuple[tuple[UniPoly, int], ...]

    def reconstruct(self) -> UniPoly:
        acc = UniPoly.const(self.p, self.scalar)
        for f, m in self.parts:
            for _ in range(m):
                acc = acc * f
        return acc

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.parts)


def squarefree_decomposition(f: UniPoly) -> SquarefreeDecomposition:
    """Yun's algorithm; valid because deg f < p keeps derivatives honest."""
    d = f.degree
    if f.is_zero() or d < 1:
        raise ZeroPolynomial("need a nonconstant polynomial")
    if d >= f.p:
        raise DegreeVsCharacteristic(f"degree {d} >= characteristic {f.p}")
    p = f.p
    scalar = f.lead()
    fm = f.monic()
    parts: list[tuple[UniPoly, int]] = []
    df = fm.derivative()  # nonzero: 1 <= deg f < p
    g = uni_gcd(fm, df)
    v = fm // g
    w = df // g
    i = 1
    while v.degree >= 1:
        z = w - v.derivative()
        h = uni_gcd(v, z)
        if h.degree >= 1:
            parts.append((h, i))
        v = v // h
        w = z // h
        i += 1
    return SquarefreeDecomposition(p, scalar, tuple(parts))


# ----------------------------------------------------------------------
# bivariate


class BiPoly:
    """Sparse bivariate polynomial over F_p; keys are (x-degree, y-degree)."""

    __slots__ = ("p", "coeffs", "_deg_cache")

    def __init__(self, p: int, coeffs: Optional[dict[tuple[int, int], int]] = None):
        self.p = int(p)
        clean: dict[tuple[int, int], int] = {}
        if coeffs:
            for (i, j), c in coeffs.items():
                c %= self.p
                if c:
                    clean[(i, j)] = c
        self.coeffs = clean
        self._deg_cache: Optional[tuple] = None

    @classmethod
    def zero(cls, p: int) -> "BiPoly":
        return cls(p)

    @classmethod
    def const(cls, p: int, c: int) -> "BiPoly":
        return cls(p, {(0, 0): c})

    @classmethod
    def variable(cls, name: str, p: int) -> "BiPoly":
        if name == "x":
            return cls(p, {(1, 0): 1})
        if name == "y":
            return cls(p, {(0, 1): 1})
        raise ValueError(f"unknown variable {name!r}")

    def _degrees(self):
        if self._deg_cache is None:
            if self.coeffs:
                dx = max(i for i, _ in self.coeffs)
                dy = max(j for _, j in self.coeffs)
                dt = max(i + j for i, j in self.coeffs)
            else:
                dx = dy = dt = NEG_INF
            self._deg_cache = (dx, dy, dt)
        return self._deg_cache

    @property
    def deg_x(self):
        return self._degrees()[0]

    @property
    def deg_y(self):
        return self._degrees()[1]

    @property
    def total_degree(self):
        return self._degrees()[2]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: "BiPoly"):
        if self.p != other.p:
            raise ValueError("mixed moduli")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(self.p, out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) - c
        return BiPoly(self.p, out)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly(self.p, out)

    def scale(self, c: int) -> "BiPoly":
        return BiPoly(self.p, {k: v * c for k, v in self.coeffs.items()})

    def pow_int(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative exponent")
        acc = BiPoly.const(self.p, 1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base if e > 1 else base
            e >>= 1
        return acc

    def shift_const(self, alpha: int) -> "BiPoly":
        """self - alpha."""
        return self - BiPoly.const(self.p, alpha)

    def eval(self, a: int, b: int) -> int:
        p = self.p
        a %= p
        b %= p
        acc = 0
        for (i, j), c in self.coeffs.items():
            acc = (acc + c * pow(a, i, p) * pow(b, j, p)) % p
        return acc

    def subst_y(self, y0: int) -> UniPoly:
        """P(x, y0) as a univariate in x."""
        p = self.p
        out: dict[int, int] = {}
        for (i, j), c in self.coeffs.items():
            v = c * pow(y0, j, p) % p
            out[i] = (out.get(i, 0) + v) % p
        return UniPoly(p, out)

    def subst_x(self, x0: int) -> UniPoly:
        """P(x0, y) as a univariate in y."""
        p = self.p
        out: dict[int, int] = {}
        for (i, j), c in self.coeffs.items():
            v = c * pow(x0, i, p) % p
            out[j] = (out.get(j, 0) + v) % p
        return UniPoly(p, out)

    def axis_x(self) -> UniPoly:
        """P(x, 0)."""
        return UniPoly(self.p, {i: c for (i, j), c in self.coeffs.items() if j == 0})

    def axis_y(self) -> UniPoly:
        """P(0, y)."""
        return UniPoly(self.p, {j: c for (i, j), c in self.coeffs.items() if i == 0})

    def coeff_of_x_power(self, i0: int) -> UniPoly:
        """The coefficient of x^i0, a univariate in y."""
        return UniPoly(self.p, {j: c for (i, j), c in self.coeffs.items() if i == i0})

    def coeff_of_y_power(self, j0: int) -> UniPoly:
        """The coefficient of y^j0, a univariate in x."""
        return UniPoly(self.p, {i: c for (i, j), c in self.coeffs.items() if j == j0})

    def homogeneity(self) -> tuple[bool, Optional[int]]:
        """(True, total degree) if every monomial has the same total degree."""
        if not self.coeffs:
            raise ZeroPolynomial("homogeneity of the zero polynomial is undefined")
        degs = {i + j for i, j in self.coeffs}
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def to_text(self) -> str:
        """Canonical text that re-parses to the same coefficient map."""
        if not self.coeffs:
            return "0"
        parts = []
        for i, j in sorted(self.coeffs, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.coeffs[(i, j)]
            bits = []
            if c != 1 or (i == 0 and j == 0):
                bits.append(str(c))
            if i:
                bits.append("x" if i == 1 else f"x^{i}")
            if j:
                bits.append("y" if j == 1 else f"y^{j}")
            parts.append("*".join(bits))
        return "+".join(parts)

    def __repr__(self):
        return f"BiPoly({self.to_text()!r} mod {self.p})"


# ----------------------------------------------------------------------
# parser
#
#   expr   := term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ('^' uint)?
#   atom   := 'x' | 'y' | uint | '(' expr ')'
#
# Whitespace is ignored; coefficients are nonnegative decimals reduced mod p.
# The expansion is capped at total degree 16.


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> tuple[str, str, int]:
        """(kind, value, position); kind in {var,int,op,end}."""
        self._skip_ws()
        if self.pos >= len(self.text):
            return ("end", "", self.pos)
        ch = self.text[self.pos]
        if ch in "xy":
            return ("var", ch, self.pos)
        if ch.isdigit():
            j = self.pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            return ("int", self.text[self.pos : j], self.pos)
        if ch in "+-*^()":
            return ("op", ch, self.pos)
        raise ParseError(f"unexpected character {ch!r}", self.pos)

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        self.pos = tok[2] + (len(tok[1]) or 0)
        return tok


def _cap_degree(poly: BiPoly, pos: int) -> BiPoly:
    if poly.coeffs and poly.total_degree > PARSE_DEGREE_CAP:
        raise DegreeOverflow(
            f"expression expands past total degree {PARSE_DEGREE_CAP} (near position {pos})"
        )
    return poly


def _parse_atom(toks: _Tokens, p: int) -> BiPoly:
    kind, val, pos = toks.take()
    if kind == "var":
        return BiPoly.variable(val, p)
    if kind == "int":
        return BiPoly.const(p, int(val))
    if kind == "op" and val == "(":
        inner = _parse_expr(toks, p)
        kind2, val2, pos2 = toks.take()
        if kind2 != "op" or val2 != ")":
            raise ParseError("expected ')'", pos2)
        return inner
    raise ParseError("expected 'x', 'y', an integer, or '('", pos)


def _parse_factor(toks: _Tokens, p: int) -> BiPoly:
    base = _parse_atom(toks, p)
    kind, val, pos = toks.peek()
    if kind == "op" and val == "^":
        toks.take()
        kind2, val2, pos2 = toks.take()
        if kind2 != "int":
            raise ParseError("expected a nonnegative integer exponent", pos2)
        e = int(val2)
        base_deg = base.total_degree if base.coeffs else 0
        if isinstance(base_deg, float):
            base_deg = 0
        if base_deg * e > PARSE_DEGREE_CAP:
            raise DegreeOverflow(
                f"expression expands past total degree {PARSE_DEGREE_CAP} (near position {pos2})"
            )
        return _cap_degree(base.pow_int(e), pos2)
    return base


def _parse_term(toks: _Tokens, p: int) -> BiPoly:
    acc = _parse_factor(toks, p)
    while True:
        kind, val, pos = toks.peek()
        if kind == "op" and val == "*":
            toks.take()
            rhs = _parse_factor(toks, p)
            da = acc.total_degree if acc.coeffs else 0
            db = rhs.total_degree if rhs.coeffs else 0
            if not isinstance(da, float) and not isinstance(db, float) and da + db > PARSE_DEGREE_CAP:
                raise DegreeOverflow(
                    f"expression expands past total degree {PARSE_DEGREE_CAP} (near position {pos})"
                )
            acc = acc * rhs
        else:
            return acc


def _parse_expr(toks: _Tokens, p: int) -> BiPoly:
    acc = _parse_term(toks, p)
    while True:
        kind, val, _pos = toks.peek()
        if kind == "op" and val in "+-":
            toks.take()
            rhs = _parse_term(toks, p)
            acc = acc + rhs if val == "+" else acc - rhs
        else:
            return acc


def parse_bipoly(text: str, prime: Prime | int) -> BiPoly:
    """Parse expression text into an expanded coefficient map over F_p."""
    p = int(prime)
    toks = _Tokens(text)
    poly = _parse_expr(toks, p)
    kind, val, pos = toks.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing input {val!r}", pos)
    return _cap_degree(poly, pos)


# ----------------------------------------------------------------------
# structure predicates


def is_homogeneous(P: BiPoly) -> tuple[bool, Optional[int]]:
    """(flag, total degree or None).  Rejects the zero polynomial."""
    return P.homogeneity()


def is_required(P: BiPoly) -> bool:
    """True when P has no nonconstant factor depending on one variable only.

    Equivalent test: the gcd of the x-coefficient polynomials (in y) is
    constant, and symmetrically for the y-coefficient polynomials (in x).
    """
    if P.is_zero():
        raise ZeroPolynomial("the zero polynomial is not a valid input")
    for slicer, top in ((P.coeff_of_y_power, P.deg_y), (P.coeff_of_x_power, P.deg_x)):
        acc: Optional[UniPoly] = None
        for d in range(top + 1):
            piece = slicer(d)
            if piece.is_zero():
                continue
            acc = piece if acc is None else uni_gcd(acc, piece)
            if acc.degree == 0:
                break
        if acc is not None and acc.degree >= 1:
            return False
    return True


@dataclass(frozen=True)
class PowerForm:
    """Whether a homogeneous form is a scalar times a proper power."""

    is_power: bool
    exponent: int


def proper_power_form(h: BiPoly) -> PowerForm:
    """Largest m with h = scalar * g(x, y)^m for a homogeneous form g.

    Over the closure h splits into linear forms; m is the gcd of their
    multiplicities, read from a squarefree decomposition of h(t, 1) plus the
    multiplicity of y (the root at infinity).  Needs deg h < p.
    """
    flag, n = is_homogeneous(h)
    if not flag:
        raise NotHomogeneous("need a homogeneous polynomial")
    if n < 1:
        raise ZeroPolynomial("need degree >= 1")
    if n >= h.p:
        raise DegreeVsCharacteristic(f"degree {n} >= characteristic {h.p}")
    H = h.subst_y(1)  # h(t, 1): nonzero, degree n - (multiplicity of y in h)
    y_mult = n - H.degree
    mults: list[int] = [y_mult] if y_mult else []
    if H.degree >= 1:
        mults.extend(squarefree_decomposition(H).multiplicities())
    m = 0
    for k in mults:
        m = gcd(m, k)
    return PowerForm(m >= 2, m)


def abs_irreducible_shift(h: BiPoly, alpha: int, *, ext_budget: int = EXT_ELEMENT_BUDGET) -> bool:
    """Is h(x, y) - alpha irreducible over the algebraic closure of F_p?

    For deg h < p this is decided by the multiplicity criterion: the shift is
    reducible exactly when h is a scalar times a proper power.  When the
    degree reaches the characteristic that bookkeeping is unavailable, and
    inputs of total degree <= 4 are routed to the exhaustive factor search
    instead (larger ones are rejected).
    """
    flag, n = is_homogeneous(h)
    if not flag:
        raise NotHomogeneous("need a homogeneous polynomial")
    if alpha % h.p == 0:
        raise ZeroShift("shift must be nonzero")
    if n < h.p:
        return not proper_power_form(h).is_power
    if n <= 4:
        # linear factors of an n-form shift live in degree <= n extensions
        return not factor_oracle(h.shift_const(alpha), max(3, n), ext_budget=ext_budget)
    raise DegreeVsCharacteristic(
        f"degree {n} >= characteristic {h.p} is only supported up to total degree 4"
    )


# ----------------------------------------------------------------------
# exhaustive factor search (the independent route)

DEFAULT_QUAD_CANDIDATES = 2_000_000


def _dense_codes(poly: UniPoly) -> list[int]:
    return poly.dense()


def _linear_factor_exists(Q: BiPoly, F: ExtField) -> bool:
    """Any total-degree-1 divisor of Q with coefficients in F?

    Candidates are normalized: x - (b*y + c), or y - c.  A divisor of the
    first kind forces Q(c, 0) = 0 and of the second kind Q(0, c) = 0, so only
    roots of the axis restrictions are paired with a full substitution check.
    Axis restrictions are nonzero here: divisibility by x or y is handled by
    the caller before normalization.
    """
    q = F.q
    exp, log, qm1 = F.exp, F.log, F.q - 1
    add = F.add

    # dense axis restrictions, coefficients are base-field codes
    U = _dense_codes(Q.axis_x())
    V = _dense_codes(Q.axis_y())

    # dense y-coefficient lists per x-power for the substitution Horner
    kx = Q.deg_x
    ly = Q.deg_y
    rows: list[list[int]] = [[0] * (ly + 1) for _ in range(kx + 1)]
    for (i, j), c in Q.coeffs.items():
        rows[i][j] = c

    def subst_is_zero(beta: int, gamma: int) -> bool:
        # Q(beta*y + gamma, y) == 0 ?
        acc = rows[kx][:]
        for i in range(kx - 1, -1, -1):
            nxt = [0] * (ly + kx - i + 1)
            for t, c in enumerate(acc):
                if c:
                    lc = log[c]
                    if beta:
                        nxt[t + 1] = add(nxt[t + 1], exp[(lc + log[beta]) % qm1])
                    if gamma:
                        nxt[t] = add(nxt[t], exp[(lc + log[gamma]) % qm1])
            row = rows[i]
            for t, c in enumerate(row):
                if c:
                    nxt[t] = add(nxt[t], c)
            acc = nxt
        return not any(acc)

    for gamma in range(q):
        if F.eval_dense(U, gamma) == 0:
            for beta in range(q):
                if subst_is_zero(beta, gamma):
                    return True
    for c in range(q):
        if F.eval_dense(V, c) == 0:
            # y - c divides Q iff every x-coefficient polynomial vanishes at c
            for i in range(kx + 1):
                if F.eval_dense(rows[i], c) != 0:
                    break
            else:
                return True
    return False


_GLEX_LEADS = (
    ((2, 0), lambda i, j: i >= 2),
    ((1, 1), lambda i, j: i >= 1 and j >= 1),
    ((0, 2), lambda i, j: j >= 2),
)


def _divides_bivariate(Q: dict[tuple[int, int], int], R: dict[tuple[int, int], int], lead: tuple[int, int], F: ExtField) -> bool:
    """Does R (monic in its graded-lex leading monomial `lead`) divide Q?"""
    rem = dict(Q)
    li, lj = lead
    while rem:
        mi, mj = max(rem, key=lambda k: (k[0] + k[1], k[0]))
        if mi < li or mj < lj:
            return False
        c = rem[(mi, mj)]
        si, sj = mi - li, mj - lj
        for (ri, rj), rc in R.items():
            k = (ri + si, rj + sj)
            v = F.sub(rem.get(k, 0), F.mul(c, rc))
            if v:
                rem[k] = v
            elif k in rem:
                del rem[k]
    return True


def _quadratic_factor_exists(Q: BiPoly, F: ExtField, max_candidates: int) -> bool:
    """Any total-degree-2 divisor with coefficients in F (full enumeration)."""
    q = F.q
    total = q**5 + q**4 + q**3
    if total > max_candidates:
        raise BudgetExceeded(
            f"quadratic factor enumeration needs {total} candidates (cap {max_candidates})"
        )
    Qc = dict(Q.coeffs)
    for lead_idx, (lead, _) in enumerate(_GLEX_LEADS):
        free = [pos for k, (pos, _) in enumerate(_GLEX_LEADS) if k > lead_idx]
        free += [(1, 0), (0, 1), (0, 0)]
        for values in itertools.product(range(q), repeat=len(free)):
            R = {lead: 1}
            for pos, v in zip(free, values):
                if v:
                    R[pos] = v
            if _divides_bivariate(Qc, R, lead, F):
                return True
    return False


def factor_oracle(
    Q: BiPoly,
    d_max: int,
    *,
    ext_budget: int = EXT_ELEMENT_BUDGET,
    max_candidates: int = DEFAULT_QUAD_CANDIDATES,
) -> bool:
    """Brute-force reducibility over extensions: True iff some polynomial of
    total degree in [1, deg Q - 1] with coefficients in F_{p^d}, d <= d_max,
    divides Q.

    Works by exhaustive enumeration of normalized candidate divisors and is
    deliberately independent of the multiplicity criterion.  Degree-1
    candidates are searched for every d <= d_max; degree-2 candidates (needed
    only when deg Q = 4) are searched over d <= 2, which is enough: a quartic
    with any in-range factor always has a witness that is either linear or a
    quadratic over F_p or F_{p^2}.  Total degree of Q must be <= 4.
    """
    if Q.is_zero():
        raise ZeroPolynomial("the zero polynomial is not a valid input")
    n = Q.total_degree
    if n > 4:
        raise ValueError(f"factor oracle supports total degree <= 4, got {n}")
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    if n <= 1:
        return False
    # divisibility by the axes themselves
    if all(j >= 1 for _, j in Q.coeffs):
        return True  # y | Q
    if all(i >= 1 for i, _ in Q.coeffs):
        return True  # x | Q
    for d in range(1, d_max + 1):
        F = ext_field(Q.p, d, ext_budget)
        if _linear_factor_exists(Q, F):
            return True
    if n == 4:
        for d in range(1, min(2, d_max) + 1):
            F = ext_field(Q.p, d, ext_budget)
            if _quadratic_factor_exists(Q, F, max_candidates):
                return True
    return False


# ----------------------------------------------------------------------
# combined shape checks


@dataclass(frozen=True)
class GoodCheck:
    """Outcome of the image-growth shape test, with the first failing clause."""

    ok: bool
    reason: Optional[str]  # None | not-homogeneous | reducible-shift | vanishing-axes

    def __bool__(self) -> bool:
        return self.ok


def is_good(P: BiPoly, *, ext_budget: int = EXT_ELEMENT_BUDGET) -> GoodCheck:
    """Homogeneous, shift stays absolutely irreducible, and at least one of
    P(x, 0), P(0, y) is nonzero.  Clauses are checked in that order."""
    flag, _n = is_homogeneous(P)
    if not flag:
        return GoodCheck(False, "not-homogeneous")
    if not abs_irreducible_shift(P, 1, ext_budget=ext_budget):
        return GoodCheck(False, "reducible-shift")
    if P.axis_x().is_zero() and P.axis_y().is_zero():
        return GoodCheck(False, "vanishing-axes")
    return GoodCheck(True, None)


@dataclass(frozen=True)
class PermissibleCheck:
    """Outcome of the private-root test for a family of univariates."""

    ok: bool
    failures: tuple[tuple[int, str], ...]  # (index, reason)

    def __bool__(self) -> bool:
        return self.ok


def _radical(f: UniPoly) -> UniPoly:
    """Product of the distinct monic irreducible factors of f (deg f < p)."""
    d = f.degree
    if d < 1:
        raise ZeroPolynomial("need a nonconstant polynomial")
    if d >= f.p:
        raise DegreeVsCharacteristic(f"degree {d} >= characteristic {f.p}")
    df = f.derivative()
    return (f // uni_gcd(f, df)).monic()


def is_permissible(fs: list[UniPoly]) -> PermissibleCheck:
    """Every member has a nonzero constant term and owns a closure root no
    other member shares (checked on squarefree parts via gcd degrees)."""
    if not fs:
        raise ValueError("need at least one polynomial")
    p = fs[0].p
    for f in fs:
        if f.p != p:
            raise ValueError("mixed moduli")
        if f.is_zero():
            raise ZeroPolynomial("zero polynomial in the family")
    failures: list[tuple[int, str]] = []
    radicals: list[Optional[UniPoly]] = []
    for idx, f in enumerate(fs):
        radicals.append(_radical(f) if f.degree >= 1 else None)
        if f(0) == 0:
            failures.append((idx, "zero-constant-term"))
        elif f.degree < 1:
            failures.append((idx, "constant"))
    for idx, u in enumerate(radicals):
        if u is None or any(i == idx for i, _ in failures):
            continue
        # peel off everything shared with any other member; a private root
        # survives iff something of positive degree is left
        own = u
        for jdx, v in enumerate(radicals):
            if jdx == idx or v is None:
                continue
            g = uni_gcd(own, v)
            if g.degree >= 1:
                own = own // g
            if own.degree == 0:
                break
        if own.degree < 1:
            failures.append((idx, "no-private-root"))
    failures.sort()
    return PermissibleCheck(not failures, tuple(failures))
