"""Exact arithmetic on a Legendre-form elliptic curve y^2 = x(x-1)(x-lam).

Everything downstream works inside the subring k[x, y, 1/y] of the
function field.  Elements are kept in the canonical shape

    (a(x) + b(x)*y) / y^m,    m >= 0,

with y^2 always eliminated through the curve relation and the numerator
not divisible by y (lowest terms), which makes equality a syntactic
check.  The two charts of interest are U = C \\ {O} (polynomials in x, y)
and V = C \\ {T0, T1, T2} (no pole at infinity).

Univariate polynomials are sparse dicts {exponent: coefficient}.
"""

from .field import Rationals, PrimeField


# ---------------------------------------------------------------------------
# sparse univariate polynomial helpers


def p_from(field, pairs):
    out = {}
    for k, c in pairs:
        c = field.el(c)
        if c:
            out[k] = out.get(k, field.zero) + c
            if not out[k]:
                del out[k]
    return out


def p_add(f, g):
    out = dict(f)
    for k, c in g.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def p_neg(f):
    return {k: -c for k, c in f.items()}


def p_sub(f, g):
    return p_add(f, p_neg(g))


def p_mul(f, g):
    out = {}
    for k1, c1 in f.items():
        for k2, c2 in g.items():
            k = k1 + k2
            s = out.get(k)
            s = c1 * c2 if s is None else s + c1 * c2
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def p_scale(f, c):
    if not c:
        return {}
    return {k: v * c for k, v in f.items()}


def p_deg(f):
    return max(f) if f else -1


def p_lc(f):
    return f[max(f)]


def p_divmod(f, g):
    """Euclidean division over a field; g must be nonzero."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    quo = {}
    rem = dict(f)
    dg = p_deg(g)
    lg = p_lc(g)
    while rem and p_deg(rem) >= dg:
        k = p_deg(rem) - dg
        c = p_lc(rem) / lg
        quo[k] = c
        rem = p_sub(rem, p_mul({k: c}, g))
    return quo, rem


def p_eval(f, x0):
    acc = None
    for k, c in f.items():
        term = c * x0 ** k
        acc = term if acc is None else acc + term
    return acc


def p_root_mult(f, x0, field):
    """Multiplicity of the root x0 in f (f nonzero)."""
    lin = p_from(field, [(1, field.one), (0, -x0)])
    mult = 0
    while True:
        quo, rem = p_divmod(f, lin)
        if rem:
            return mult
        f = quo
        mult += 1


# ---------------------------------------------------------------------------
# curve configuration and points


class CurveConfig:
    """Legendre parameter lam together with its base field."""

    def __init__(self, field, lam):
        if not isinstance(field, (Rationals, PrimeField)):
            raise TypeError("field must be Rationals or PrimeField")
        lam = field.el(lam)
        if lam == 0 or lam == 1:
            raise ValueError("Legendre parameter must avoid {0, 1}")
        self.field = field
        self.lam = lam
        one = field.one
        # q(x) = x(x-1)(x-lam) = x^3 - (1+lam)x^2 + lam*x
        self.qpoly = p_from(field, [(3, one), (2, -(one + lam)), (1, lam)])
        self.branch_x = [field.zero, field.one, lam]

    def const(self, v):
        return LaurentFunction(self, {0: self.field.el(v)}, {}, 0)

    def zero(self):
        return LaurentFunction(self, {}, {}, 0)

    def one(self):
        return self.const(1)

    def x(self):
        return LaurentFunction(self, {1: self.field.one}, {}, 0)

    def y(self):
        return LaurentFunction(self, {}, {0: self.field.one}, 0)

    def y_inv(self):
        return LaurentFunction(self, {0: self.field.one}, {}, 1)

    def monomial(self, coeff, i, j):
        """coeff * x^i * y^j with j in {0, 1}."""
        num = {i: self.field.el(coeff)}
        if not num[i]:
            return self.zero()
        if j == 0:
            return LaurentFunction(self, num, {}, 0)
        if j == 1:
            return LaurentFunction(self, {}, num, 0)
        raise ValueError("y-exponent must be 0 or 1")

    def __eq__(self, other):
        return (
            isinstance(other, CurveConfig)
            and other.field == self.field
            and other.lam == self.lam
        )

    def __hash__(self):
        return hash((self.field, self.lam))

    def __repr__(self):
        return "CurveConfig(%r, lam=%r)" % (self.field, self.lam)


def make_curve(field, lam):
    return CurveConfig(field, lam)


class PointSpec:
    """A closed point used for valuations: O, a 2-torsion T_i, or affine."""

    __slots__ = ("tag", "index", "x0", "y0")

    def __init__(self, tag, index=None, x0=None, y0=None):
        self.tag = tag
        self.index = index
        self.x0 = x0
        self.y0 = y0

    @classmethod
    def O(cls):
        return cls("O")

    @classmethod
    def T(cls, index):
        if index not in (0, 1, 2):
            raise ValueError("2-torsion index must be 0, 1 or 2")
        return cls("T", index=index)

    @classmethod
    def affine(cls, x0, y0):
        return cls("affine", x0=x0, y0=y0)

    def __repr__(self):
        if self.tag == "O":
            return "O"
        if self.tag == "T":
            return "T%d" % self.index
        return "(%r, %r)" % (self.x0, self.y0)


# ---------------------------------------------------------------------------
# Laurent functions


class LaurentFunction:
    """Element (a(x) + b(x) y) / y^m of the coordinate ring, canonicalized."""

    __slots__ = ("curve", "a", "b", "m")

    def __init__(self, curve, a, b, m):
        if m < 0:
            # fold negative denominator powers into the numerator
            a, b = _mul_y_power(curve, a, b, -m)
            m = 0
        a = {k: c for k, c in a.items() if c}
        b = {k: c for k, c in b.items() if c}
        # lowest terms: (a + b y)/y = b + (a/q) y whenever q | a
        while m > 0:
            if not a and not b:
                m = 0
                break
            quo, rem = p_divmod(a, curve.qpoly) if a else ({}, {})
            if rem:
                break
            a, b = b, quo
            m -= 1
        self.curve = curve
        self.a = a
        self.b = b
        self.m = m

    # -- predicates

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, LaurentFunction):
            return (
                self.curve == other.curve
                and self.m == other.m
                and self.a == other.a
                and self.b == other.b
            )
        # allow comparison against base-field constants
        try:
            return self == self.curve.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.m, tuple(sorted(self.a.items())), tuple(sorted(self.b.items()))))

    # -- ring operations

    def _check(self, other):
        if not isinstance(other, LaurentFunction):
            other = self.curve.const(other)
        if other.curve != self.curve:
            raise ValueError("curve mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        m = max(self.m, other.m)
        a1, b1 = _mul_y_power(self.curve, self.a, self.b, m - self.m)
        a2, b2 = _mul_y_power(self.curve, other.a, other.b, m - other.m)
        return LaurentFunction(self.curve, p_add(a1, a2), p_add(b1, b2), m)

    __radd__ = __add__

    def __neg__(self):
        return LaurentFunction(self.curve, p_neg(self.a), p_neg(self.b), self.m)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        q = self.curve.qpoly
        a = p_add(p_mul(self.a, other.a), p_mul(p_mul(self.b, other.b), q))
        b = p_add(p_mul(self.a, other.b), p_mul(self.b, other.a))
        return LaurentFunction(self.curve, a, b, self.m + other.m)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined in k[x, y, 1/y]")
        out = self.curve.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, other):
        """Exact quotient self/other, raising if it leaves the ring."""
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        # multiply by the conjugate: 1/(c + d y) = (c - d y)/(c^2 - d^2 q)
        conj = LaurentFunction(self.curve, other.a, p_neg(other.b), 0)
        norm = p_sub(
            p_mul(other.a, other.a),
            p_mul(p_mul(other.b, other.b), self.curve.qpoly),
        )
        num = self * conj
        qa, ra = p_divmod(num.a, norm) if num.a else ({}, {})
        qb, rb = p_divmod(num.b, norm) if num.b else ({}, {})
        if ra or rb:
            raise ArithmeticError("quotient does not lie in k[x, y, 1/y]")
        return LaurentFunction(self.curve, qa, qb, num.m - other.m)

    def evaluate(self, x0, y0):
        """Value at an affine point; requires y0 != 0 when m > 0."""
        field = self.curve.field
        va = p_eval(self.a, x0) if self.a else field.zero
        vb = p_eval(self.b, x0) if self.b else field.zero
        num = va + vb * y0
        if self.m == 0:
            return num
        return num / y0 ** self.m

    def as_pair(self):
        return dict(self.a), dict(self.b), self.m

    def __repr__(self):
        from .encoding import laurent_to_text

        return laurent_to_text(self)


def _mul_y_power(curve, a, b, k):
    """Multiply numerator a + b y by y^k, eliminating y^2 via the relation."""
    if k < 0:
        raise ValueError("negative shift")
    q = curve.qpoly
    for _ in range(k % 2):
        a, b = p_mul(b, q), a
    qpow = {0: curve.field.one}
    for _ in range(k // 2):
        qpow = p_mul(qpow, q)
    return p_mul(a, qpow), p_mul(b, qpow)


def omega(curve):
    """The gluing function x^2 / y with divisor 3*T0 - T1 - T2 - O."""
    return LaurentFunction(curve, {2: curve.field.one}, {}, 1)


# ---------------------------------------------------------------------------
# valuations and regularity


def val_at_O(h):
    """Order of vanishing at the point at infinity."""
    if h.is_zero():
        raise ZeroDivisionError("valuation of the zero function")
    cands = []
    if h.a:
        cands.append(-2 * p_deg(h.a))
    if h.b:
        cands.append(-3 - 2 * p_deg(h.b))
    # the two candidates have distinct parities, so the min is exact
    return min(cands) + 3 * h.m


def _val_at_branch(h, e):
    """Valuation at the 2-torsion point (e, 0); uniformizer is y."""
    field = h.curve.field
    cands = []
    if h.a:
        cands.append(2 * p_root_mult(h.a, e, field))
    if h.b:
        cands.append(2 * p_root_mult(h.b, e, field) + 1)
    return min(cands) - h.m


def val_at_point(h, p):
    """Exact local valuation of h at the point p."""
    if h.is_zero():
        raise ZeroDivisionError("valuation of the zero function")
    curve = h.curve
    field = curve.field
    if p.tag == "O":
        return val_at_O(h)
    if p.tag == "T":
        return _val_at_branch(h, curve.branch_x[p.index])
    x0 = field.el(p.x0)
    y0 = field.el(p.y0)
    if y0 * y0 != p_eval(curve.qpoly, x0):
        raise ValueError("point is not on the curve")
    if not y0:
        return _val_at_branch(h, x0)
    # y is a unit at (x0, y0); strip shared (x - x0) factors, then use the norm
    a, b = dict(h.a), dict(h.b)
    lin = p_from(field, [(1, field.one), (0, -x0)])
    v = 0
    while a and b:
        qa, ra = p_divmod(a, lin)
        qb, rb = p_divmod(b, lin)
        if ra or rb:
            break
        a, b = qa, qb
        v += 1
    num_val = (p_eval(a, x0) if a else field.zero) + (p_eval(b, x0) if b else field.zero) * y0
    if num_val:
        return v
    # the conjugate a - b y cannot also vanish here, so use the norm
    norm = p_sub(p_mul(a, a), p_mul(p_mul(b, b), curve.qpoly))
    return v + p_root_mult(norm, x0, field)


def is_regular_U(h):
    """Membership in O_C(U) = k[x, y]: no denominator power remains."""
    return h.m == 0


def is_regular_V(h):
    """Membership in O_C(V): no pole at the point at infinity."""
    if h.is_zero():
        return True
    return val_at_O(h) >= 0


def as_scalar(h):
    """The base-field constant when h is regular on both charts, else None."""
    if h.is_zero():
        return h.curve.field.zero
    if h.m != 0 or h.b or p_deg(h.a) > 0:
        return None
    return h.a[0]


# ---------------------------------------------------------------------------
# chart decomposition


def _leading_at_O(h):
    """Leading local coefficient of h at O (parameter t = x/y, x ~ t^-2, y ~ t^-3)."""
    n = val_at_O(h)
    if h.a and -2 * p_deg(h.a) + 3 * h.m == n:
        return p_lc(h.a)
    return p_lc(h.b)


def chart_split(h):
    """Write h = u_part + c*omega + v_part with u_part in O_C(U),
    v_part in O_C(V) and c a base-field scalar.

    Works by cancelling the pole at O one order at a time with monomials
    x^i y^j (double/triple poles and up) and with omega (simple pole).
    """
    curve = h.curve
    u_part = curve.zero()
    c = curve.field.zero
    rest = h
    w = omega(curve)
    while not rest.is_zero():
        n = val_at_O(rest)
        if n >= 0:
            break
        lead = _leading_at_O(rest)
        if n == -1:
            c = c + lead
            rest = rest - lead * w
        else:
            j = (-n) % 2
            i = (-n - 3 * j) // 2
            mono = curve.monomial(lead, i, j)
            u_part = u_part + mono
            rest = rest - mono
    return u_part, c, rest
