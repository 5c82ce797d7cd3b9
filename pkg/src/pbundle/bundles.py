"""Descriptors for degree-zero bundles and their decomposition algebra.

A bundle is a direct sum of indecomposable blocks F_r tensored with a
degree-zero line bundle (trivial, torsion of some order, or a formal
non-torsion label).  Tensor and symmetric-power decompositions are
computed through SL2 weight multisets, with an independent Jordan-type
oracle that works directly on the transition matrix.
"""

from math import comb

from .poly import HomogPoly, TransitionMatrix, exponent_vectors, extract_coeff, sym_action

TRIVIAL = ("trivial",)


def torsion(order):
    return ("torsion", order)


def nontorsion(label):
    return ("label", label)


class BundleDescriptor:
    """Direct sum of blocks (rank, twist)."""

    __slots__ = ("summands",)

    def __init__(self, summands):
        summands = [(int(r), tuple(t)) for r, t in summands]
        if not summands:
            raise ValueError("descriptor needs at least one summand")
        labels = set()
        for r, t in summands:
            if r < 1:
                raise ValueError("ranks must be positive")
            if t == TRIVIAL:
                continue
            if t[0] == "torsion":
                if len(t) != 2 or int(t[1]) < 2:
                    raise ValueError("torsion order must be >= 2")
            elif t[0] == "label":
                if len(t) != 2:
                    raise ValueError("bad label twist %r" % (t,))
                if t[1] in labels:
                    raise ValueError("duplicate twist label %r" % (t[1],))
                labels.add(t[1])
            else:
                raise ValueError("unknown twist %r" % (t,))
        self.summands = summands

    def total_rank(self):
        return sum(r for r, _ in self.summands)

    def twist_orders(self):
        """One group-ring exponent order per summand: 1 for trivial
        twists, k for torsion of order k, 0 for free (non-torsion)."""
        out = []
        for _, t in self.summands:
            if t == TRIVIAL:
                out.append(1)
            elif t[0] == "torsion":
                out.append(int(t[1]))
            else:
                out.append(0)
        return tuple(out)

    def all_trivial(self):
        return all(t == TRIVIAL for _, t in self.summands)

    def __eq__(self, other):
        return isinstance(other, BundleDescriptor) and other.summands == self.summands

    def __repr__(self):
        return "BundleDescriptor(%r)" % (self.summands,)


class Decomposition:
    """Multiset of block ranks, kept sorted in descending order."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive ranks")
        self.parts = parts

    def total(self):
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        if isinstance(other, Decomposition):
            return self.parts == other.parts
        return self.parts == tuple(sorted(other, reverse=True))

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "Decomposition(%r)" % (list(self.parts),)


# ---------------------------------------------------------------------------
# weight-multiset plethysm


def _block_weights(r):
    """SL2 weights of the rank-r indecomposable: r-1, r-3, ..., -(r-1)."""
    return [r - 1 - 2 * i for i in range(r)]


def _greedy_partition(weight_counts):
    """Read off block ranks from a character (weight -> multiplicity)."""
    counts = {w: c for w, c in weight_counts.items() if c}
    parts = []
    while counts:
        top = max(counts)
        if counts.get(-top, 0) < counts[top]:
            raise ValueError("weight multiset is not a character")
        mult = counts[top]
        parts.extend([top + 1] * mult)
        for w in range(-top, top + 1, 2):
            counts[w] -= mult
            if not counts[w]:
                del counts[w]
    return Decomposition(parts)


def _sym_weight_counts(weights, d):
    """Weight character of degree-d monomials in distinguishable
    variables carrying the given weights."""
    by_degree = {0: {0: 1}}
    for w in weights:
        new = {}
        for deg, wc in by_degree.items():
            for tot, c in wc.items():
                for e in range(d - deg + 1):
                    nd = deg + e
                    nw = tot + e * w
                    new.setdefault(nd, {})
                    new[nd][nw] = new[nd].get(nw, 0) + c
        by_degree = new
    return by_degree.get(d, {})


def atiyah_tensor(r, s):
    """Ranks of the blocks of F_r tensor F_s."""
    if r < 1 or s < 1:
        raise ValueError("ranks must be positive")
    return Decomposition(range(abs(r - s) + 1, r + s, 2))


def sym_decompose(r, d):
    """Ranks of the blocks of the d-th symmetric power of F_r."""
    if r < 1 or d < 0:
        raise ValueError("need rank >= 1 and degree >= 0")
    return _greedy_partition(_sym_weight_counts(_block_weights(r), d))


def sym_decompose_sum(desc, d):
    """Ranks of the blocks of Sym^d of a direct sum of untwisted blocks."""
    if not desc.all_trivial():
        raise ValueError("decomposition with non-trivial twists is out of scope")
    weights = []
    for r, _ in desc.summands:
        weights.extend(_block_weights(r))
    return _greedy_partition(_sym_weight_counts(weights, d))


# ---------------------------------------------------------------------------
# transition matrices


def transition_matrix(desc, curve):
    """Block-diagonal gluing matrix: each block unipotent with omega on
    the superdiagonal, scaled by the summand's formal twist scalar."""
    from .curve import omega

    n = desc.total_rank()
    orders = desc.twist_orders()
    if desc.all_trivial():
        one, zero, w = curve.one(), curve.zero(), omega(curve)
    else:
        from .endo import FormalScalar

        one = FormalScalar.one(curve, orders)
        zero = FormalScalar.zero(curve, orders)
        w = FormalScalar.from_function(curve, orders, omega(curve))
    rows = [[zero] * n for _ in range(n)]
    offset = 0
    for b, (r, twist) in enumerate(desc.summands):
        if desc.all_trivial() or twist == TRIVIAL:
            alpha, alpha_w = one, w
        else:
            alpha = FormalScalar.generator(curve, orders, b)
            alpha_w = alpha * w
        for i in range(r):
            rows[offset + i][offset + i] = alpha
            if i + 1 < r:
                rows[offset + i][offset + i + 1] = alpha_w
        offset += r
    return TransitionMatrix(rows)


def matrix_rank(entries, one):
    """Rank by fraction-free elimination; entries need * - is_zero and
    an exact_div method (previous pivots divide exactly)."""
    rows = [list(row) for row in entries]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    rank = 0
    prev = one
    col = 0
    for col in range(m):
        piv = None
        for i in range(rank, n):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, n):
            for j in range(col + 1, m):
                val = p * rows[i][j] - rows[i][col] * rows[rank][j]
                rows[i][j] = val.exact_div(prev)
            rows[i][col] = rows[i][col] - rows[i][col]
        prev = p
        rank += 1
        if rank == n:
            break
    return rank


class _Mono:
    """Scalar multiple of a power of omega; supports only the operations
    that fraction-free elimination needs.  Sums of different powers never
    arise for graded matrices; if one does, we raise and the caller falls
    back to full function-field arithmetic."""

    __slots__ = ("c", "e")

    def __init__(self, c, e):
        self.c = c
        self.e = e if c else 0

    def is_zero(self):
        return not self.c

    def __mul__(self, other):
        return _Mono(self.c * other.c, self.e + other.e)

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.e != other.e:
            raise ArithmeticError("mixed omega powers")
        return _Mono(self.c + other.c, self.e)

    def __sub__(self, other):
        return self + _Mono(-other.c, other.e)

    def exact_div(self, other):
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return self
        if self.e < other.e:
            raise ArithmeticError("inexact omega division")
        return _Mono(self.c / other.c, self.e - other.e)


def _as_mono(h):
    """View a Laurent function as c * omega^e, or raise ArithmeticError."""
    if h.is_zero():
        return _Mono(h.curve.field.zero, 0)
    if h.b or len(h.a) != 1:
        raise ArithmeticError("not an omega monomial")
    (k, c), = h.a.items()
    if k != 2 * h.m:
        raise ArithmeticError("not an omega monomial")
    return _Mono(c, h.m)


def _sym_matrix(M, d, czero, cone):
    """Matrix of Sym^d(M) on the monomial basis t^v of degree d."""
    n = M.size
    basis = list(exponent_vectors(n, d))
    images = {}
    for v in basis:
        mono = HomogPoly(n, d, {v: cone}, zero=czero)
        images[v] = sym_action(M, mono)
    return basis, [[extract_coeff(images[v], u) for v in basis] for u in basis]


def jordan_type_oracle(M, d):
    """Partition of Sym^d of a unipotent matrix into Jordan blocks,
    via the rank sequence of powers of Sym^d(M) - I."""
    n = M.size
    sample = M.entries[0][0]
    cone = sample.exact_div(sample) if not sample.is_zero() else None
    if cone is None:
        raise ValueError("matrix must be unipotent")
    czero = cone - cone
    # unipotence: (M - I)^n = 0
    I = TransitionMatrix(
        [[cone if i == j else czero for j in range(n)] for i in range(n)]
    )
    N0 = TransitionMatrix(
        [[M.entries[i][j] - I.entries[i][j] for j in range(n)] for i in range(n)]
    )
    power = N0
    for _ in range(n - 1):
        power = power * N0
    if any(not e.is_zero() for row in power.entries for e in row):
        raise ValueError("matrix must be unipotent")

    basis, S = _sym_matrix(M, d, czero, cone)
    size = len(basis)
    N = [[S[i][j] - (cone if i == j else czero) for j in range(size)] for i in range(size)]
    try:
        # fast path for graded matrices whose entries are omega monomials
        field = M.entries[0][0].curve.field
        Nm = [[_as_mono(e) for e in row] for row in N]
        ranks = _rank_sequence(Nm, _Mono(field.one, 0), _Mono(field.zero, 0))
    except (ArithmeticError, AttributeError):
        ranks = _rank_sequence(N, cone, czero)
    parts = []
    ranks.append(0)
    for j in range(1, len(ranks) - 1):
        count = ranks[j - 1] - 2 * ranks[j] + ranks[j + 1]
        parts.extend([j] * count)
    return Decomposition(parts)


def _rank_sequence(N, one, zero):
    """Ranks [size, rank N, rank N^2, ...] down to zero."""
    size = len(N)
    ranks = [size]
    P = [row[:] for row in N]
    while True:
        r = matrix_rank(P, one)
        ranks.append(r)
        if r == 0:
            return ranks
        P = [
            [_dot(P[i], [N[k][j] for k in range(size)], zero) for j in range(size)]
            for i in range(size)
        ]


def _dot(row, col, zero):
    acc = zero
    for a, b in zip(row, col):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc
