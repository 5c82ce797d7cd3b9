"""Candidate endomorphisms and the chart-compatibility verifier.

A candidate consists of polynomial tuples F (over the affine chart U)
and G (over V) together with formal transition scalars beta and
gamma_i.  Torsion line bundles never get explicit sections: their
transition functions are adjoined symbols alpha_i with alpha_i^k = 1,
and all identities are checked in the group ring of those symbols over
the Laurent ring.
"""

import random
from fractions import Fraction

from .curve import (
    chart_split,
    is_regular_U,
    is_regular_V,
    make_curve,
    omega,
    p_eval,
)
from .field import PrimeField, Rationals
from .poly import HomogPoly, TransitionMatrix, extract_coeff, sym_action


class FormalScalar:
    """Element of the group ring R[alpha_0, ..., alpha_s] where R is the
    Laurent ring and alpha_i has multiplicative order orders[i]
    (order 1: trivial symbol, order 0: free symbol)."""

    __slots__ = ("curve", "orders", "terms")

    def __init__(self, curve, orders, terms):
        orders = tuple(orders)
        clean = {}
        for g, c in terms.items():
            g = self._reduce(orders, g)
            if g in clean:
                c = clean[g] + c
            if c.is_zero():
                clean.pop(g, None)
            else:
                clean[g] = c
        self.curve = curve
        self.orders = orders
        self.terms = clean

    @staticmethod
    def _reduce(orders, g):
        if len(g) != len(orders):
            raise ValueError("exponent tuple does not match symbol count")
        return tuple(e % o if o else e for e, o in zip(g, orders))

    @classmethod
    def zero(cls, curve, orders):
        return cls(curve, orders, {})

    @classmethod
    def one(cls, curve, orders):
        return cls.from_function(curve, orders, curve.one())

    @classmethod
    def from_function(cls, curve, orders, h):
        return cls(curve, orders, {(0,) * len(orders): h})

    @classmethod
    def generator(cls, curve, orders, index):
        g = tuple(1 if i == index else 0 for i in range(len(orders)))
        return cls(curve, orders, {g: curve.one()})

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if not isinstance(other, FormalScalar):
            other = FormalScalar.from_function(self.curve, self.orders, self.curve.const(other))
        if other.orders != self.orders or other.curve != self.curve:
            raise ValueError("formal-scalar ring mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms[g] + c if g in terms else c
        return FormalScalar(self.curve, self.orders, terms)

    def __neg__(self):
        return FormalScalar(self.curve, self.orders, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        terms = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = self._reduce(self.orders, tuple(a + b for a, b in zip(g1, g2)))
                c = c1 * c2
                terms[g] = terms[g] + c if g in terms else c
        return FormalScalar(self.curve, self.orders, terms)

    def exact_div(self, other):
        """Division by a single-term scalar (all the verifier needs)."""
        other = self._check(other)
        if len(other.terms) != 1:
            raise ArithmeticError("can only divide by a monomial scalar")
        (g0, c0), = other.terms.items()
        terms = {}
        for g, c in self.terms.items():
            key = tuple(a - b for a, b in zip(g, g0))
            terms[self._reduce(self.orders, key)] = c.exact_div(c0)
        return FormalScalar(self.curve, self.orders, terms)

    def __eq__(self, other):
        if isinstance(other, FormalScalar):
            return self.orders == other.orders and self.terms == other.terms
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.orders, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            sym = "".join("a%d^%d" % (i, e) for i, e in enumerate(g) if e)
            parts.append("(%r)%s" % (self.terms[g], sym and " * " + sym))
        return " + ".join(parts)


class EndoCandidate:
    """Full candidate: curve, bundle, fibre degree, twist scalars, F and G."""

    def __init__(self, curve, bundle, degree, beta, gammas, F, G):
        n = bundle.total_rank()
        if degree < 1:
            raise ValueError("fibre degree must be >= 1")
        if len(F) != n or len(G) != n:
            raise ValueError("need one F and one G polynomial per bundle rank")
        if len(gammas) != len(bundle.summands):
            raise ValueError("need one gamma per summand")
        for P in F:
            if P.num_vars != n or (not P.is_zero() and P.degree != degree):
                raise ValueError("F entries must be degree-%d forms in %d variables" % (degree, n))
            for c in P.terms.values():
                if not is_regular_U(c):
                    raise ValueError("F coefficients must be regular on the affine chart")
        for P in G:
            if P.num_vars != n or (not P.is_zero() and P.degree != degree):
                raise ValueError("G entries must be degree-%d forms in %d variables" % (degree, n))
            for c in P.terms.values():
                if not is_regular_V(c):
                    raise ValueError("G coefficients must be regular away from the branch points")
        self.curve = curve
        self.bundle = bundle
        self.fibre_degree = degree
        self.beta = beta
        self.gammas = list(gammas)
        self.F = list(F)
        self.G = list(G)


class VerifyReport:
    """Outcome of verifying one candidate."""

    def __init__(self, compat_ok, common_zero, fibre_degree_echo, seed=0):
        self.compat_ok = list(compat_ok)
        self.common_zero = common_zero  # (status, witness)
        self.fibre_degree_echo = fibre_degree_echo
        self.seed = seed

    def passes(self):
        return all(self.compat_ok) and self.common_zero[0] in ("proved-none", "unknown")

    def __repr__(self):
        return "VerifyReport(compat_ok=%r, common_zero=%r, d=%d)" % (
            self.compat_ok,
            self.common_zero,
            self.fibre_degree_echo,
        )


def _lift_poly(P, curve, orders):
    terms = {
        u: FormalScalar.from_function(curve, orders, c) for u, c in P.terms.items()
    }
    return HomogPoly(P.num_vars, P.degree, terms, zero=FormalScalar.zero(curve, orders))


def _formal_transition_matrix(bundle, curve):
    """Block-diagonal gluing matrix over the formal-scalar ring."""
    orders = bundle.twist_orders()
    n = bundle.total_rank()
    zero = FormalScalar.zero(curve, orders)
    w = FormalScalar.from_function(curve, orders, omega(curve))
    rows = [[zero] * n for _ in range(n)]
    offset = 0
    for b, (r, twist) in enumerate(bundle.summands):
        alpha = FormalScalar.generator(curve, orders, b)
        for i in range(r):
            rows[offset + i][offset + i] = alpha
            if i + 1 < r:
                rows[offset + i][offset + i + 1] = alpha * w
        offset += r
    return TransitionMatrix(rows)


def check_compatibility(cand):
    """Check the per-index gluing identities
    beta * Sym(F_0) = gamma * G_0 and
    beta * Sym(F_i) = gamma * (G_i + omega * G_{i-1}) within each block."""
    curve = cand.curve
    orders = cand.bundle.twist_orders()
    M = _formal_transition_matrix(cand.bundle, curve)
    w = FormalScalar.from_function(curve, orders, omega(curve))
    beta = cand.beta
    if not isinstance(beta, FormalScalar):
        beta = FormalScalar.from_function(curve, orders, beta)
    ok = []
    offset = 0
    for b, (r, _) in enumerate(cand.bundle.summands):
        gamma = cand.gammas[b]
        if not isinstance(gamma, FormalScalar):
            gamma = FormalScalar.from_function(curve, orders, gamma)
        for j in range(r):
            i = offset + j
            lhs = sym_action(M, _lift_poly(cand.F[i], curve, orders)).scale(beta)
            rhs = _lift_poly(cand.G[i], curve, orders)
            if j > 0:
                rhs = rhs + _lift_poly(cand.G[i - 1], curve, orders).scale(w)
            ok.append((lhs - rhs.scale(gamma)).is_zero())
        offset += r
    return VerifyReport(ok, common_zero_of(cand), cand.fibre_degree)


def common_zero_of(cand, samples=64, seed=0):
    return check_no_common_zero(cand.F, samples=samples, seed=seed)


# ---------------------------------------------------------------------------
# common-zero detection


def check_no_common_zero(F_list, samples=64, seed=0):
    """Tri-state common-zero search: ('proved-none', None),
    ('found', witness) or ('unknown', None).

    Coordinate points are checked exactly; two binary forms get an exact
    resultant; anything bigger falls back to sampling over a prime
    specialization of the curve.
    """
    if not F_list:
        raise ValueError("need at least one polynomial")
    n = F_list[0].num_vars
    d = F_list[0].degree
    for P in F_list:
        if P.num_vars != n or P.degree != d:
            raise ValueError("polynomials must share degree and variable count")
    # exact test at the coordinate points, distinguished point first
    for j in reversed(range(n)):
        u = tuple(d if k == j else 0 for k in range(n))
        if all(u not in P.terms for P in F_list):
            return ("found", tuple(1 if k == j else 0 for k in range(n)))
    if n == 2 and len(F_list) == 2:
        res = _binary_resultant(F_list[0], F_list[1])
        if not res.is_zero():
            return ("proved-none", None)
        return ("found", None)
    witness = _sample_common_zero(F_list, samples, seed)
    if witness is not None:
        return ("found", witness)
    return ("unknown", None)


def _binary_resultant(f, g):
    """Resultant of two binary forms of equal degree (fixed-degree
    Sylvester determinant, so roots at [1:0] are accounted for)."""
    d = f.degree
    curve = None
    for P in (f, g):
        for c in P.terms.values():
            curve = c.curve
            break
        if curve is not None:
            break
    if curve is None:
        raise ValueError("resultant of two zero forms")
    zero = curve.zero()

    def coeffs(P):
        return [P.terms.get((d - k, k), zero) for k in range(d + 1)]

    cf, cg = coeffs(f), coeffs(g)
    size = 2 * d
    rows = []
    for s in range(d):
        rows.append([zero] * s + cf + [zero] * (d - 1 - s))
    for s in range(d):
        rows.append([zero] * s + cg + [zero] * (d - 1 - s))
    return _bareiss_det(rows, curve.one())


def _bareiss_det(rows, one):
    """Fraction-free determinant; entries need * - is_zero exact_div."""
    rows = [list(r) for r in rows]
    n = len(rows)
    sign = 1
    prev = one
    for k in range(n):
        piv = None
        for i in range(k, n):
            if not rows[i][k].is_zero():
                piv = i
                break
        if piv is None:
            z = one - one
            return z
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = val.exact_div(prev)
            rows[i][k] = rows[i][k] - rows[i][k]
        prev = rows[k][k]
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


def _sqrt_mod(a, p, rng):
    """Tonelli-Shanks square root modulo an odd prime, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z = rng.randrange(2, p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _sample_common_zero(F_list, samples, seed):
    """Look for a constant-coordinate common zero by evaluating at
    random curve points over a prime specialization."""
    curve0 = None
    for P in F_list:
        for c in P.terms.values():
            curve0 = c.curve
            break
        if curve0 is not None:
            break
    if curve0 is None:
        n = F_list[0].num_vars
        return tuple([0] * (n - 1) + [1])  # everything vanishes
    rng = random.Random(seed)
    field = curve0.field
    if isinstance(field, PrimeField):
        p = field.p
        lam = curve0.lam.v
    else:
        p = 1000003
        lam_q = curve0.lam
        if lam_q.denominator % p == 0:
            p = 1000033
        lam = lam_q.numerator * pow(lam_q.denominator, p - 2, p) % p
    if lam % p in (0, 1 % p):
        return None

    def q_of(x0):
        return x0 * (x0 - 1) * (x0 - lam) % p

    def eval_fun(h, x0, y0):
        va = sum(c_int(cv) * pow(x0, k, p) for k, cv in h.a.items()) % p
        vb = sum(c_int(cv) * pow(x0, k, p) for k, cv in h.b.items()) % p
        num = (va + vb * y0) % p
        if h.m == 0:
            return num
        return num * pow(pow(y0, h.m, p), p - 2, p) % p

    def c_int(cv):
        if isinstance(field, PrimeField):
            return cv.v
        return cv.numerator * pow(cv.denominator, p - 2, p) % p

    pts = []
    tries = 0
    while len(pts) < 12 and tries < 4000:
        tries += 1
        x0 = rng.randrange(p)
        qv = q_of(x0)
        if qv == 0:
            continue
        y0 = _sqrt_mod(qv, p, rng)
        if y0:
            pts.append((x0, y0))
    if not pts:
        return None
    n = F_list[0].num_vars
    for _ in range(samples):
        tvec = [rng.randrange(p) for _ in range(n)]
        if all(v == 0 for v in tvec):
            continue
        good = True
        for x0, y0 in pts:
            for P in F_list:
                acc = 0
                for u, c in P.terms.items():
                    term = eval_fun(c, x0, y0)
                    for idx, e in enumerate(u):
                        term = term * pow(tvec[idx], e, p) % p
                    acc = (acc + term) % p
                if acc:
                    good = False
                    break
            if not good:
                break
        if good:
            return tuple(tvec)
    return None


# ---------------------------------------------------------------------------
# constructors for the worked examples


def identity_endo(curve, desc):
    """The identity map: d = 1, F_i = G_i = t_i, gamma per summand = the
    summand's own twist symbol."""
    orders = desc.twist_orders()
    n = desc.total_rank()
    one = FormalScalar.one(curve, orders)
    F = [
        HomogPoly(n, 1, {tuple(1 if k == i else 0 for k in range(n)): curve.one()}, zero=curve.zero())
        for i in range(n)
    ]
    gammas = [FormalScalar.generator(curve, orders, b) for b in range(len(desc.summands))]
    return EndoCandidate(curve, desc, 1, one, gammas, F, list(F))


def torsion_power_endo(curve, orders, k):
    """Power map t_i -> t_i^k on a sum of lines with torsion orders
    dividing k (order 1 meaning a trivial summand)."""
    from .bundles import BundleDescriptor, TRIVIAL

    if k < 1:
        raise ValueError("power must be positive")
    for o in orders:
        if o < 1:
            raise ValueError("orders must be positive integers")
        if k % o:
            raise ValueError("power %d incompatible with torsion order %d" % (k, o))
    desc = BundleDescriptor(
        [(1, TRIVIAL if o == 1 else ("torsion", o)) for o in orders]
    )
    ring_orders = desc.twist_orders()
    n = len(orders)
    one = FormalScalar.one(curve, ring_orders)
    F = [
        HomogPoly(n, k, {tuple(k if j == i else 0 for j in range(n)): curve.one()}, zero=curve.zero())
        for i in range(n)
    ]
    gammas = [one for _ in orders]
    return EndoCandidate(curve, desc, k, one, gammas, F, list(F))


def char_p_atiyah_endo(p, lam, multiplier=None):
    """The characteristic-p Frobenius-type endomorphism of the rank-2
    bundle: built from the chart decomposition of omega^p."""
    from .bundles import BundleDescriptor, TRIVIAL

    if multiplier is None:
        multiplier = p
    if multiplier != p:
        raise ValueError("only the Frobenius degree p is supported")
    field = PrimeField(p)
    curve = make_curve(field, lam)
    desc = BundleDescriptor([(2, TRIVIAL)])
    orders = desc.twist_orders()
    u_part, c, v_part = chart_split(omega(curve) ** p)
    cf = curve.const(c)
    one = FormalScalar.one(curve, orders)
    zero = curve.zero()
    F0 = HomogPoly(2, p, {(p, 0): cf}, zero=zero)
    F1 = HomogPoly(2, p, {(0, p): curve.one(), (p, 0): -u_part}, zero=zero)
    G0 = F0
    G1 = HomogPoly(2, p, {(0, p): curve.one(), (p, 0): v_part}, zero=zero)
    return EndoCandidate(curve, desc, p, one, [one], [F0, F1], [G0, G1])
