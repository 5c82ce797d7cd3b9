"""Homogeneous polynomials in t_0..t_r and the Sym^d substitution action.

Coefficients are any ring elements supporting + - * == and is_zero()
(Laurent functions, or formal transition scalars from the endo module).
Also houses the closed-form coefficient-extraction walk that says which
a_v appear in [t^u] of the substituted polynomial for the standard
unipotent matrix with omega on the superdiagonal.
"""

from math import comb

from .curve import omega as curve_omega


class HomogPoly:
    """Sparse homogeneous polynomial: terms keyed by exponent vector."""

    __slots__ = ("num_vars", "degree", "terms", "czero")

    def __init__(self, num_vars, degree, terms, zero=None):
        clean = {}
        for u, c in terms.items():
            u = tuple(u)
            if len(u) != num_vars or any(e < 0 for e in u) or sum(u) != degree:
                raise ValueError("bad exponent vector %r for degree %d" % (u, degree))
            if not c.is_zero():
                clean[u] = c
        if zero is None:
            if not clean:
                raise ValueError("need an explicit coefficient-ring zero")
            c = next(iter(clean.values()))
            zero = c - c
        self.num_vars = num_vars
        self.degree = degree
        self.terms = clean
        self.czero = zero

    @classmethod
    def monomial(cls, num_vars, u, coeff):
        return cls(num_vars, sum(u), {tuple(u): coeff}, zero=coeff - coeff)

    @classmethod
    def zero_poly(cls, num_vars, degree, zero):
        return cls(num_vars, degree, {}, zero=zero)

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError("variable-count mismatch")
        return other

    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")
        terms = dict(self.terms)
        for u, c in other.terms.items():
            terms[u] = terms[u] + c if u in terms else c
        return HomogPoly(self.num_vars, self.degree, terms, zero=self.czero)

    def __neg__(self):
        return HomogPoly(
            self.num_vars, self.degree, {u: -c for u, c in self.terms.items()}, zero=self.czero
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogPoly):
            self._check(other)
            terms = {}
            for u1, c1 in self.terms.items():
                for u2, c2 in other.terms.items():
                    u = tuple(a + b for a, b in zip(u1, u2))
                    c = c1 * c2
                    terms[u] = terms[u] + c if u in terms else c
            return HomogPoly(
                self.num_vars, self.degree + other.degree, terms, zero=self.czero
            )
        return self.scale(other)

    def scale(self, c):
        return HomogPoly(
            self.num_vars,
            self.degree,
            {u: c * v for u, v in self.terms.items()},
            zero=self.czero,
        )

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, self.degree, tuple(sorted(self.terms))))

    def substitute(self, images):
        """Replace t_i by the degree-one polynomial images[i]."""
        if len(images) != self.num_vars:
            raise ValueError("need one image per variable")
        out = HomogPoly.zero_poly(self.num_vars, self.degree, self.czero)
        pow_cache = {}
        for u, c in self.terms.items():
            term = None
            for i, e in enumerate(u):
                if e == 0:
                    continue
                key = (i, e)
                if key not in pow_cache:
                    acc = images[i]
                    for _ in range(e - 1):
                        acc = acc * images[i]
                    pow_cache[key] = acc
                term = pow_cache[key] if term is None else term * pow_cache[key]
            if term is None:
                raise ValueError("degree-zero polynomial cannot be substituted")
            out = out + term.scale(c)
        return out

    def __repr__(self):
        try:
            from .encoding import homog_to_text

            return homog_to_text(self)
        except Exception:
            return "HomogPoly(%r)" % (self.terms,)


def extract_coeff(F, u):
    """Stored coefficient of t^u, or the coefficient-ring zero."""
    u = tuple(u)
    if sum(u) != F.degree or len(u) != F.num_vars:
        raise ValueError("exponent vector does not match the polynomial")
    return F.terms.get(u, F.czero)


class TransitionMatrix:
    """Square matrix of ring elements gluing U-trivializations to V."""

    __slots__ = ("size", "entries")

    def __init__(self, entries):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("matrix must be square")
        self.size = n
        self.entries = [list(row) for row in entries]

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __mul__(self, other):
        if self.size != other.size:
            raise ValueError("size mismatch")
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = None
                for k in range(n):
                    term = self.entries[i][k] * other.entries[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return TransitionMatrix(out)

    def __eq__(self, other):
        return isinstance(other, TransitionMatrix) and self.entries == other.entries

    def __repr__(self):
        return "TransitionMatrix(%r)" % (self.entries,)


def sym_action(M, F):
    """(Sym^d M)(F) = F(M^T t): substitute t_i -> sum_j M[j][i] t_j."""
    if M.size != F.num_vars:
        raise ValueError("matrix size does not match variable count")
    images = []
    for i in range(M.size):
        terms = {}
        for j in range(M.size):
            entry = M.entries[j][i]
            if not entry.is_zero():
                u = tuple(1 if k == j else 0 for k in range(M.size))
                terms[u] = entry
        images.append(HomogPoly(M.size, 1, terms, zero=F.czero))
    return F.substitute(images)


def atiyah_matrix(curve, size):
    """Unipotent transition matrix with omega on the superdiagonal."""
    w = curve_omega(curve)
    one = curve.one()
    zero = curve.zero()
    return TransitionMatrix(
        [
            [one if i == j else w if j == i + 1 else zero for j in range(size)]
            for i in range(size)
        ]
    )


def atiyah_matrix_inverse(curve, size):
    """Exact inverse of the unipotent matrix: alternating omega band."""
    w = curve_omega(curve)
    zero = curve.zero()
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if j < i:
                row.append(zero)
            else:
                sign = -1 if (j - i) % 2 else 1
                row.append(curve.const(sign) * w ** (j - i))
        rows.append(row)
    return TransitionMatrix(rows)


def whichcoeffs(u, v):
    """Multiplier of a_v inside [t^u] of the substituted polynomial, for the
    unipotent matrix above.

    Each copy of t_j in t^v either stays or drops to omega*t_(j-1); taking
    m_j copies down from slot j forces m_j = sum_{l >= j} (v_l - u_l) and
    contributes binom(v_j, m_j) omega^(m_j).  Returns (integer multiplier,
    omega exponent), or None when no such walk exists.
    """
    u = tuple(u)
    v = tuple(v)
    if len(u) != len(v) or sum(u) != sum(v):
        raise ValueError("exponent vectors must share length and degree")
    if any(e < 0 for e in u) or any(e < 0 for e in v):
        raise ValueError("exponents must be nonnegative")
    r = len(u) - 1
    mult = 1
    total = 0
    moves = 0
    for j in range(r, 0, -1):
        moves += v[j] - u[j]
        if moves < 0 or moves > v[j]:
            return None
        mult *= comb(v[j], moves)
        total += moves
    return mult, total


def expansion_terms(u, num_vars=None):
    """All (v, multiplier, omega exponent) with a_v appearing in [t^u]."""
    u = tuple(u)
    d = sum(u)
    r = len(u) - 1
    out = []
    for v in exponent_vectors(r + 1, d):
        wc = whichcoeffs(u, v)
        if wc is not None:
            out.append((v, wc[0], wc[1]))
    return out


def exponent_vectors(num_vars, degree):
    """All exponent vectors of the given length and component sum."""
    if num_vars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in exponent_vectors(num_vars - 1, degree - first):
            yield (first,) + rest
