"""Dynamical-degree bookkeeping: fibre degrees, spectral radii of
pullback actions on finitely generated Picard lattices, the product
formula, and the annihilating polynomials whose roots all share one
modulus.

All numerics are exact: spectral radii are returned as rational
intervals of width at most 2^-30 (collapsed to a point when the value
is rational), computed from the characteristic polynomial through the
root-product resultant and Sturm bisection.
"""

from fractions import Fraction
from math import isqrt

from .endo import check_compatibility

PRECISION = Fraction(1, 2 ** 30)


class Interval:
    """Closed rational interval [lo, hi]."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        self.lo = lo
        self.hi = hi

    @classmethod
    def exact(cls, v):
        v = Fraction(v)
        return cls(v, v)

    def width(self):
        return self.hi - self.lo

    def is_exact(self):
        return self.lo == self.hi

    def contains(self, v):
        return self.lo <= Fraction(v) <= self.hi

    def max_with(self, other):
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __repr__(self):
        if self.is_exact():
            return "Interval(%s)" % (self.lo,)
        return "Interval(%s, %s)" % (self.lo, self.hi)


def _as_interval(v):
    return v if isinstance(v, Interval) else Interval.exact(v)


def _sqrt_lower(q, bits):
    n, d = q.numerator, q.denominator
    scale = 1 << bits
    return Fraction(isqrt(n * d * scale * scale), d * scale)


def _sqrt_upper(q, bits):
    n, d = q.numerator, q.denominator
    scale = 1 << bits
    s = isqrt(n * d * scale * scale)
    if Fraction(s, d * scale) ** 2 == q:
        return Fraction(s, d * scale)
    return Fraction(s + 1, d * scale)


def sqrt_interval(iv, bits=32):
    """Rational enclosure of the square root of a nonnegative interval."""
    lo = max(iv.lo, Fraction(0))
    return Interval(_sqrt_lower(lo, bits), _sqrt_upper(iv.hi, bits))


def _exact_sqrt(q):
    """Square root of a nonnegative rational if it is rational, else None."""
    n, d = q.numerator, q.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


# ---------------------------------------------------------------------------
# dense polynomials over Fraction, ascending coefficients


def poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p):
    return [c * i for i, c in enumerate(p)][1:]


def poly_divmod(f, g):
    f = list(f)
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    inv = 1 / g[-1]
    while len(f) >= len(g) and poly_trim(f):
        k = len(f) - len(g)
        c = f[-1] * inv
        q[k] = c
        for i, gc in enumerate(g):
            f[k + i] -= c * gc
        poly_trim(f)
    return poly_trim(q), f


def poly_gcd(f, g):
    f, g = list(f), list(g)
    while poly_trim(g):
        f, g = g, poly_divmod(f, g)[1]
    return f


def poly_int(p):
    """Clear denominators and content, keeping the leading sign."""
    from math import gcd

    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g:
        ints = [c // g for c in ints]
    return ints


def charpoly(M):
    """Monic characteristic polynomial by trace recursion, ascending."""
    n = len(M)
    rows = [[Fraction(v) for v in row] for row in M]
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    coeffs = [Fraction(1)]  # descending during the recursion
    A = [row[:] for row in rows]
    for k in range(1, n + 1):
        c = -sum(A[i][i] for i in range(n)) / k
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            A[i][i] += c
        A = [
            [sum(rows[i][l] * A[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return list(reversed(coeffs))


def companion_matrix(p):
    """Companion matrix of a polynomial (any nonzero leading coefficient)."""
    p = [Fraction(c) for c in p]
    if len(poly_trim(list(p))) < 2:
        raise ValueError("need positive degree")
    lead = p[-1]
    n = len(p) - 1
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = Fraction(1)
    for i in range(n):
        M[i][n - 1] = -p[i] / lead
    return M


def _det_int(rows):
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    rows = [[int(v) for v in row] for row in rows]
    n = len(rows)
    sign = 1
    prev = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                rows[i][j] = (
                    rows[col][col] * rows[i][j] - rows[i][col] * rows[col][j]
                ) // prev
            rows[i][col] = 0
        prev = rows[col][col]
    return sign * rows[n - 1][n - 1]


def _resultant_int(f, g):
    """Sylvester resultant of two integer polynomials."""
    n, m = len(f) - 1, len(g) - 1
    if n < 0 or m < 0:
        return 0
    size = n + m
    rows = []
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _det_int(rows)


def _interpolate(points):
    """Newton interpolation through (x, y) pairs, ascending coefficients."""
    xs = [x for x, _ in points]
    divided = [y for _, y in points]
    for j in range(1, len(points)):
        for i in range(len(points) - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)]
    for j in range(len(points) - 1, -1, -1):
        # poly = poly * (x - xs[j]) + divided[j]
        shifted = [Fraction(0)] + poly
        poly = [a - xs[j] * b for a, b in zip(shifted, poly + [Fraction(0)])]
        poly[0] += divided[j]
        poly_trim(poly)
        if not poly:
            poly = [Fraction(0)]
    return poly_trim(poly) or [Fraction(0)]


def root_product_poly(p):
    """Polynomial whose roots are the pairwise products of the roots of p
    (zero roots of p must already be removed), with integer coefficients.

    Evaluated as a resultant at integer points and interpolated."""
    pi = poly_int([Fraction(c) for c in p])
    k = len(pi) - 1
    points = []
    for t in range(k * k + 1):
        g = [pi[k - i] * t ** (k - i) for i in range(k + 1)]
        while g and not g[-1]:
            g.pop()
        points.append((Fraction(t), Fraction(_resultant_int(pi, g or [0]))))
    return _interpolate(points)


def _primitive(p):
    """Divide an integer polynomial by its (positive) content."""
    from math import gcd

    g = 0
    for c in p:
        g = gcd(g, abs(c))
    return [c // g for c in p] if g > 1 else list(p)


def _sturm_chain(p_int):
    """Sturm chain over the integers; each member is a positive multiple
    of the classical chain member, so sign counting is unaffected."""
    first = _primitive(p_int)
    second = _primitive([c * i for i, c in enumerate(p_int)][1:])
    chain = [first, second]
    while True:
        f = [Fraction(c) for c in chain[-2]]
        g = [Fraction(c) for c in chain[-1]]
        rem = poly_divmod(f, g)[1]
        if not rem:
            break
        # negate and rescale to a primitive integer vector (positive factor)
        den = 1
        for c in rem:
            den = den * c.denominator // _gcd(den, c.denominator)
        chain.append(_primitive([int(-c * den) for c in rem]))
    return chain


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def _sign_at(p_int, num, den):
    """Sign of p at the rational num/den with den > 0, in integers."""
    n = len(p_int) - 1
    acc = 0
    dpow = 1
    for i in range(n, -1, -1):
        acc = acc * num + p_int[i] * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def _sign_changes(chain, num, den):
    signs = []
    for p in chain:
        s = _sign_at(p, num, den)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _simplest_between(lo, hi):
    """Rational with the smallest denominator in the closed interval."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -_simplest_between(-hi, -lo)
    floor = lo.numerator // lo.denominator
    if lo == floor:
        return lo
    if floor + 1 <= hi:
        return Fraction(floor + 1)
    frac = _simplest_between(1 / (hi - floor), 1 / (lo - floor))
    return floor + 1 / frac


def largest_real_root(p, width):
    """Enclose the largest real root of p in an interval no wider than
    width.  Returns (Interval, exact) where exact is the root as a
    Fraction when it is detected to be rational, else None."""
    p = [Fraction(c) for c in p]
    sq = poly_int(poly_divmod(p, poly_gcd(p, poly_deriv(p)))[0])
    chain = _sturm_chain(sq)
    lead = abs(sq[-1])
    cauchy = 1 + max(abs(c) for c in sq) // lead
    hi_count = _sign_changes(chain, cauchy, 1)

    def roots_above(num, den):
        return _sign_changes(chain, num, den) - hi_count

    if roots_above(-cauchy, 1) == 0:
        raise ValueError("polynomial has no real root")
    # bisect with dyadic endpoints (num / 2^shift)
    lo_num, hi_num, shift = -cauchy, cauchy, 0
    while Fraction(hi_num - lo_num, 1 << shift) > width:
        mid = lo_num + hi_num  # midpoint at shift + 1
        lo_num, hi_num, shift = lo_num * 2, hi_num * 2, shift + 1
        if roots_above(mid, 1 << shift) > 0:
            lo_num = mid
        else:
            hi_num = mid
    lo = Fraction(lo_num, 1 << shift)
    hi = Fraction(hi_num, 1 << shift)
    cand = _simplest_between(lo, hi)
    if (
        lo < cand <= hi
        and _sign_at(sq, cand.numerator, cand.denominator) == 0
        and roots_above(cand.numerator, cand.denominator) == 0
    ):
        return Interval.exact(cand), cand
    return Interval(lo, hi), None


def spectral_radius(M):
    """Maximum eigenvalue modulus of a square rational matrix, enclosed
    in an interval of width <= 2^-30 (a point when the value is rational).

    The squared radius is the largest real root of the polynomial whose
    roots are pairwise products of the nonzero eigenvalues (a conjugate
    pair contributes its squared modulus), found by Sturm bisection.
    """
    p = charpoly(M)
    # strip zero eigenvalues
    while p and not p[0]:
        p.pop(0)
    if len(p) <= 1:
        return Interval.exact(0)
    prod = root_product_poly(p)
    iv, exact = largest_real_root(prod, PRECISION / 4)
    if exact is not None:
        root = _exact_sqrt(exact)
        if root is not None:
            return Interval.exact(root)
        return sqrt_interval(Interval.exact(exact), bits=32)
    return sqrt_interval(iv, bits=32)


# ---------------------------------------------------------------------------
# fibre degrees and the product formula


def fibre_degree(cand):
    """Degree of a verified candidate on the fibres."""
    if not all(check_compatibility(cand).compat_ok):
        raise ValueError("candidate fails the gluing identities")
    return cand.fibre_degree


def product_formula(lambda_g, d):
    """First dynamical degree of the total map: max of base and fibre."""
    return _as_interval(lambda_g).max_with(_as_interval(d))


def annihilator_from_indices(j, ell, d):
    """Integer polynomial d^(j+1) * (x^ell - d^ell)/(x - d), ascending.

    Every root has modulus d.  ell = 1 yields a constant, returned with
    degenerate=True since it carries no root information.
    """
    if ell < 1:
        raise ValueError("need at least one step between repeated indices")
    if d < 1 or j < 0:
        raise ValueError("need d >= 1 and j >= 0")
    scale = d ** (j + 1)
    coeffs = [scale * d ** (ell - 1 - i) for i in range(ell)]
    return Annihilator(coeffs, degenerate=(ell == 1))


class Annihilator:
    """Integer polynomial with all root moduli equal, ascending coefficients."""

    __slots__ = ("coeffs", "degenerate")

    def __init__(self, coeffs, degenerate=False):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.degenerate = degenerate

    def degree(self):
        return len(self.coeffs) - 1

    def companion(self):
        return companion_matrix([Fraction(c) for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, Annihilator)
            and self.coeffs == other.coeffs
            and self.degenerate == other.degenerate
        )

    def __repr__(self):
        return "Annihilator(%r, degenerate=%r)" % (list(self.coeffs), self.degenerate)


# ---------------------------------------------------------------------------
# Picard lattices


class PicLattice:
    """Finitely generated lattice of line-bundle classes with an integer
    pullback action; torsion maps generator label -> order."""

    __slots__ = ("generators", "action", "torsion", "lambda1_g")

    def __init__(self, generators, action, torsion=None, lambda1_g=None):
        generators = list(generators)
        if len(action) != len(generators) or any(
            len(row) != len(generators) for row in action
        ):
            raise ValueError("action matrix must match the generator count")
        torsion = dict(torsion or {})
        for label, order in torsion.items():
            if label not in generators:
                raise ValueError("torsion on unknown generator %r" % (label,))
            if int(order) < 2:
                raise ValueError("torsion order must be >= 2")
        self.generators = generators
        self.action = [[int(v) for v in row] for row in action]
        self.torsion = {k: int(v) for k, v in torsion.items()}
        self.lambda1_g = None if lambda1_g is None else Fraction(lambda1_g)
        self._check_torsion()

    def _check_torsion(self):
        """The action must preserve the torsion relations: a torsion class
        of order k maps into classes killed by k."""
        idx = {g: i for i, g in enumerate(self.generators)}
        for label, order in self.torsion.items():
            col = idx[label]
            for row, target in enumerate(self.generators):
                coeff = self.action[row][col]
                t_order = self.torsion.get(target)
                if t_order is None:
                    if coeff != 0:
                        raise ValueError(
                            "inconsistent torsion: order-%d class %r maps onto "
                            "the free class %r" % (order, label, target)
                        )
                elif (coeff * order) % t_order != 0:
                    raise ValueError(
                        "inconsistent torsion: order-%d class %r maps onto "
                        "order-%d class %r with coefficient %d"
                        % (order, label, t_order, target, coeff)
                    )

    def free_action(self):
        """Action restricted to the non-torsion generators (torsion dies
        after tensoring with Q)."""
        keep = [i for i, g in enumerate(self.generators) if g not in self.torsion]
        return [[self.action[i][j] for j in keep] for i in keep]

    def __repr__(self):
        return "PicLattice(%r)" % (self.generators,)


class DynReport:
    """Degrees and spectral radii for one fibration endomorphism."""

    __slots__ = ("fibre_degree", "lambda1_g", "lambda1_f", "spectral_radius_V", "bound_ok")

    def __init__(self, fibre_degree, lambda1_g, lambda1_f, spectral_radius_V, bound_ok):
        self.fibre_degree = fibre_degree
        self.lambda1_g = lambda1_g
        self.lambda1_f = lambda1_f
        self.spectral_radius_V = spectral_radius_V
        self.bound_ok = bound_ok

    def __repr__(self):
        return "DynReport(d=%d, lambda1_f=%r)" % (self.fibre_degree, self.lambda1_f)


class DegreeBoundVerdict:
    __slots__ = ("confirmed", "rho", "inconsistency")

    def __init__(self, confirmed, rho, inconsistency=None):
        self.confirmed = confirmed
        self.rho = rho
        self.inconsistency = inconsistency

    def __repr__(self):
        return "DegreeBoundVerdict(confirmed=%r, rho=%r)" % (self.confirmed, self.rho)


def check_degree_bound(lattice, d, tolerance=Fraction(1, 2 ** 20)):
    """Check that the fibre degree equals the spectral radius of the
    pullback on the rational span, and that it respects the square-root
    bound against a supplied base degree."""
    free = lattice.free_action()
    if not free:
        rho = Interval.exact(0)
    else:
        rho = spectral_radius(free)
    confirmed = rho.lo - tolerance <= Fraction(d) <= rho.hi + tolerance
    inconsistency = None
    if lattice.lambda1_g is not None:
        limit = sqrt_interval(Interval.exact(lattice.lambda1_g), bits=32)
        if rho.lo > limit.hi + tolerance:
            inconsistency = (
                "spectral radius exceeds the square root of the base degree"
            )
    return DegreeBoundVerdict(confirmed, rho, inconsistency)


def dyn_report(lattice, d):
    """Assemble the degree bookkeeping for one fibration endomorphism."""
    lam_g = Interval.exact(lattice.lambda1_g if lattice.lambda1_g is not None else 1)
    verdict = check_degree_bound(lattice, d)
    return DynReport(
        fibre_degree=d,
        lambda1_g=lam_g,
        lambda1_f=product_formula(lam_g, d),
        spectral_radius_V=verdict.rho,
        bound_ok=verdict.inconsistency is None,
    )
