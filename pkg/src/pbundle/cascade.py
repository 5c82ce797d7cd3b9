"""Constraint propagation that forces coefficients of fibre maps to vanish.

A degree-d form F with coefficients regular on the affine chart U has
its transformed image (Sym^d M)(F) regular on the chart V at infinity.
Each coefficient of the image is a k[omega]-linear combination of the
coefficients a_v of F (poly.whichcoeffs), and the two coordinate rings
intersect in the base field only.  Writing omega^e = u_part +
weight_e * omega + v_part (curve.chart_split), an examined coefficient

    a_u + sum_e omega^e * (combination of a_v with scalar status)

can only be regular on V when the weighted omega-column vanishes.  This
yields two deduction rules:

* scalar-by-intersection: when every positive omega power contributes a
  first-power term or nothing at all, a_u lies in both coordinate rings,
  hence in the base field.
* zero-by-omega-rigidity: when exactly one contributing variable has
  scalar status and a nonzero weighted multiplier, that variable is
  forced to zero.

Multipliers are binomial coefficients read in the base field, so in
characteristic p a deduction whose multiplier vanishes mod p never
fires.  The engine emits a replayable certificate, one step per
deduction, and chains restricted runs to conclude that every compatible
tuple of fibre forms shares the distinguished zero [0:...:0:1].
"""

import json

from .curve import chart_split, make_curve, omega
from .field import PrimeField, Rationals
from .poly import exponent_vectors, expansion_terms

UNKNOWN = "unknown"
SCALAR = "scalar"
ZERO = "zero"

DEFAULT_LAMBDA = 2


class CertificateError(ValueError):
    """A certificate step failed to re-derive during replay."""


def _field_for(char):
    if char == 0:
        return Rationals()
    return PrimeField(char)


class VanishingCertificate:
    """Ordered deduction trace for one cascade run.

    level 0 is an unrestricted run over all degree-d monomials; higher
    levels are restricted runs whose coefficients outside `support` are
    preset to zero (the chained common-zero argument).
    """

    __slots__ = ("rank", "degree", "char", "lam", "level", "support", "steps", "statuses")

    def __init__(self, rank, degree, char=0, lam=DEFAULT_LAMBDA, level=0, support=None):
        self.rank = rank
        self.degree = degree
        self.char = char
        self.lam = lam
        self.level = level
        self.support = None if support is None else {tuple(v) for v in support}
        self.steps = []
        self.statuses = {}

    def status(self, v):
        v = tuple(v)
        if v in self.statuses:
            return self.statuses[v]
        if self.support is not None and v not in self.support:
            return ZERO
        return UNKNOWN

    def set_status(self, v, status):
        v = tuple(v)
        order = (UNKNOWN, SCALAR, ZERO)
        if order.index(status) < order.index(self.status(v)):
            raise ValueError("statuses only refine: unknown -> scalar -> zero")
        self.statuses[v] = status

    def zero_list(self):
        """Zeroed exponent vectors in derivation order."""
        return [tuple(s["affected"]) for s in self.steps if s["rule"] == "zero-by-omega-rigidity"]

    def zero_set(self):
        return set(self.zero_list())

    def scalar_set(self):
        return {v for v, st in self.statuses.items() if st == SCALAR}

    def header(self):
        head = {
            "kind": "vanishing-certificate",
            "rank": self.rank,
            "degree": self.degree,
            "char": self.char,
            "lambda": str(self.lam),
            "level": self.level,
        }
        if self.support is not None:
            head["support"] = sorted(list(v) for v in self.support)
        return head

    def to_lines(self):
        """JSON-lines form: header first, then one step per line."""
        lines = [json.dumps(self.header(), sort_keys=True)]
        lines.extend(json.dumps(step, sort_keys=True) for step in self.steps)
        return lines

    def __repr__(self):
        return "VanishingCertificate(rank=%d, degree=%d, char=%d, zeros=%d)" % (
            self.rank,
            self.degree,
            self.char,
            len(self.zero_list()),
        )


class _Engine:
    """Shared deduction machinery: omega-class weights plus the two rules."""

    def __init__(self, char, lam=DEFAULT_LAMBDA):
        self.field = _field_for(char)
        self.curve = make_curve(self.field, lam)
        self._omega = omega(self.curve)
        self._weights = {1: self.field.one}

    def weight(self, e):
        """Coefficient of omega in the two-chart splitting of omega^e."""
        if e not in self._weights:
            _, c, _ = chart_split(self._omega ** e)
            self._weights[e] = c
        return self._weights[e]

    def lift(self, n):
        return self.field.el(n)

    def examine(self, cert, u):
        """Process one monomial, appending any deduction steps to cert."""
        u = tuple(u)
        expansion = []
        live = []
        for v, mult, e in sorted(expansion_terms(u), key=lambda t: (t[2], t[0])):
            if v == u:
                continue
            st = cert.status(v)
            expansion.append({"v": list(v), "mult": mult, "omega": e, "status": st})
            if st == ZERO or not self.lift(mult):
                continue
            live.append((v, mult, e, st))

        base = {"monomial": list(u), "expansion": expansion}
        if any(st == UNKNOWN for _, _, _, st in live):
            step = dict(base)
            step["rule"] = "blocked"
            step["reason"] = "unresolved coefficient at a positive omega power"
            cert.steps.append(step)
            return

        weighted = [
            (v, mult, e)
            for v, mult, e, _ in live
            if self.lift(mult) * self.weight(e)
        ]
        if len(weighted) == 1:
            v, mult, e = weighted[0]
            cert.set_status(v, ZERO)
            step = dict(base)
            step["rule"] = "zero-by-omega-rigidity"
            step["affected"] = list(v)
            cert.steps.append(step)
            live = [entry for entry in live if entry[0] != v]
        elif len(weighted) > 1:
            step = dict(base)
            step["rule"] = "relation"
            step["terms"] = [{"v": list(v), "mult": mult, "omega": e} for v, mult, e in weighted]
            cert.steps.append(step)

        if cert.status(u) == UNKNOWN and all(e == 1 for _, _, e, _ in live):
            cert.set_status(u, SCALAR)
            step = {"monomial": list(u), "expansion": expansion}
            step["rule"] = "scalar-by-intersection"
            step["affected"] = list(u)
            cert.steps.append(step)


def _unit(r, i):
    return tuple(1 if k == i else 0 for k in range(r + 1))


def _chain_vector(r, d, j):
    """t_r^(d-1) t_j as an exponent vector (the head t_r^d when j = r)."""
    u = [0] * (r + 1)
    u[r] = d - 1
    u[j] += 1
    return tuple(u)


def examination_order(r, d):
    """Deterministic sweep: tail column first, then one unit in each
    lower slot (descending), then all remaining monomials in ascending
    lexicographic order."""
    order = []
    seen = set()

    def push(u):
        if u not in seen:
            seen.add(u)
            order.append(u)

    for k in range(d + 1):
        u = [0] * (r + 1)
        u[r - 1] = k
        u[r] = d - k
        push(tuple(u))
    for i in range(r - 2, -1, -1):
        for k in range(d):
            u = [0] * (r + 1)
            u[i] = 1
            u[r - 1] = k
            u[r] = d - 1 - k
            push(tuple(u))
    for u in exponent_vectors(r + 1, d):
        push(u)
    return order


def run_cascade(r, d, char=0, lam=DEFAULT_LAMBDA):
    """Derive forced vanishings for a single degree-d fibre form.

    Degree 1 yields an empty certificate: identity-type maps exist, so
    nothing may be derived.
    """
    if r < 1:
        raise ValueError("rank must be at least 1")
    if d < 1:
        raise ValueError("fibre degree must be positive")
    cert = VanishingCertificate(r, d, char=char, lam=lam)
    if d == 1:
        return cert
    engine = _Engine(char, lam)
    for u in examination_order(r, d):
        engine.examine(cert, u)
    return cert


# ---------------------------------------------------------------------------
# chained runs: the distinguished common zero


class CommonZeroProof:
    """Chained cascade runs concluding that all coupled fibre forms
    F_0..F_r vanish at [0:...:0:1].

    Level 0 constrains F_0 directly.  Level i >= 1 restricts F_i to the
    monomials t_r^(d-1) t_j with j >= i (every other coefficient is
    preset to zero by the restriction argument) and propagates the
    vanishing of the previous level's tail coefficients.
    """

    __slots__ = ("rank", "degree", "char", "lam", "levels", "concluded")

    def __init__(self, rank, degree, char, lam, levels, concluded):
        self.rank = rank
        self.degree = degree
        self.char = char
        self.lam = lam
        self.levels = levels
        self.concluded = concluded

    def point(self):
        return tuple([0] * self.rank + [1])

    def head_vector(self):
        return _chain_vector(self.rank, self.degree, self.rank)

    def to_lines(self):
        head = {
            "kind": "common-zero-proof",
            "rank": self.rank,
            "degree": self.degree,
            "char": self.char,
            "lambda": str(self.lam),
            "concluded": self.concluded,
        }
        lines = [json.dumps(head, sort_keys=True)]
        for cert in self.levels:
            for line in cert.to_lines():
                lines.append(line)
        return lines

    def __repr__(self):
        return "CommonZeroProof(rank=%d, degree=%d, char=%d, concluded=%r)" % (
            self.rank,
            self.degree,
            self.char,
            self.concluded,
        )


def conclude_common_zero(r, d, char=0, lam=DEFAULT_LAMBDA):
    """Chain r+1 cascade runs to force [t_r^d] F_i = 0 for every i."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    if d < 2:
        raise ValueError("fibre degree must be at least 2")
    engine = _Engine(char, lam)

    base = run_cascade(r, d, char=char, lam=lam)
    needed = {_chain_vector(r, d, j) for j in range(r + 1)}
    concluded = needed <= base.zero_set()
    levels = [base]

    for level in range(1, r + 1):
        support = [_chain_vector(r, d, j) for j in range(level, r + 1)]
        cert = VanishingCertificate(
            r, d, char=char, lam=lam, level=level, support=support
        )
        for j in range(r, level - 2, -1):
            engine.examine(cert, _chain_vector(r, d, j))
        if any(cert.status(v) != ZERO for v in support):
            concluded = False
        levels.append(cert)

    return CommonZeroProof(r, d, char, lam, levels, concluded)


class NonexistenceVerdict:
    """Outcome of the fibre-degree obstruction for a bundle descriptor."""

    __slots__ = ("excluded", "fibre_degree", "char", "reason", "proof")

    def __init__(self, excluded, fibre_degree, char, reason, proof=None):
        self.excluded = excluded
        self.fibre_degree = fibre_degree
        self.char = char
        self.reason = reason
        self.proof = proof

    def verdict(self):
        return "nonexistent" if self.excluded else "not excluded"

    def __repr__(self):
        return "NonexistenceVerdict(%s, degree=%d)" % (self.verdict(), self.fibre_degree)


def nonexistence_verdict(desc, d, char=0, lam=DEFAULT_LAMBDA):
    """Decide whether a surjective fibre endomorphism of degree d is
    ruled out for the projective bundle described by desc.

    Only the largest indecomposable block matters: substituting zero
    for the variables outside it reduces any candidate to one on that
    block alone."""
    if d < 2:
        return NonexistenceVerdict(
            False, d, char, "degree-one endomorphisms always exist"
        )
    top = max(rank for rank, _ in desc.summands)
    if top < 2:
        return NonexistenceVerdict(
            False,
            d,
            char,
            "all blocks have rank one; split bundles admit degree-%d candidates" % d,
        )
    proof = conclude_common_zero(top - 1, d, char=char, lam=lam)
    if proof.concluded:
        reason = (
            "every compatible tuple of fibre forms vanishes at the "
            "distinguished point, so no surjective candidate exists"
        )
    else:
        reason = "deduction blocked: some multipliers vanish in the base field"
    return NonexistenceVerdict(proof.concluded, d, char, reason, proof)


# ---------------------------------------------------------------------------
# serialization and replay


def parse_certificate(lines):
    """Rebuild a VanishingCertificate from its JSON-lines form (statuses
    are not trusted; call replay_certificate to validate)."""
    rows = [json.loads(line) for line in lines if line.strip()]
    if not rows or rows[0].get("kind") != "vanishing-certificate":
        raise CertificateError("missing certificate header")
    head = rows[0]
    cert = VanishingCertificate(
        head["rank"],
        head["degree"],
        char=head["char"],
        lam=int(head["lambda"]),
        level=head.get("level", 0),
        support=head.get("support"),
    )
    cert.steps = rows[1:]
    return cert


def parse_proof(lines):
    """Rebuild a CommonZeroProof from JSON lines."""
    rows = [json.loads(line) for line in lines if line.strip()]
    if not rows or rows[0].get("kind") != "common-zero-proof":
        raise CertificateError("missing proof header")
    head = rows[0]
    levels = []
    current = None
    for row in rows[1:]:
        if row.get("kind") == "vanishing-certificate":
            current = VanishingCertificate(
                row["rank"],
                row["degree"],
                char=row["char"],
                lam=int(row["lambda"]),
                level=row.get("level", 0),
                support=row.get("support"),
            )
            levels.append(current)
        else:
            if current is None:
                raise CertificateError("step before any certificate header")
            current.steps.append(row)
    return CommonZeroProof(
        head["rank"],
        head["degree"],
        head["char"],
        int(head["lambda"]),
        levels,
        head["concluded"],
    )


def replay_certificate(cert):
    """Re-derive every step of a certificate from scratch statuses.

    Raises CertificateError on the first step that does not re-validate;
    returns a fresh certificate with the replayed statuses otherwise.
    """
    engine = _Engine(cert.char, cert.lam)
    fresh = VanishingCertificate(
        cert.rank,
        cert.degree,
        char=cert.char,
        lam=cert.lam,
        level=cert.level,
        support=None if cert.support is None else sorted(cert.support),
    )
    steps = cert.steps
    n = 0
    while n < len(steps):
        u = tuple(steps[n].get("monomial", ()))
        if len(u) != cert.rank + 1 or sum(u) != cert.degree or any(e < 0 for e in u):
            raise CertificateError("step %d: bad monomial %r" % (n, u))
        # one examination may emit several consecutive steps (a zeroing
        # followed by a scalar promotion); validate them as a group
        group = [steps[n]]
        k = n + 1
        while k < len(steps) and tuple(steps[k].get("monomial", ())) == u:
            group.append(steps[k])
            k += 1
        before = len(fresh.steps)
        engine.examine(fresh, u)
        derived = fresh.steps[before:]
        if derived != group:
            raise CertificateError(
                "step %d: recorded %r but re-derivation yields %r" % (n, group, derived)
            )
        n = k
    return fresh


def replay_proof(proof):
    """Replay every level of a chained proof and re-check its verdict."""
    r, d = proof.rank, proof.degree
    replayed = [replay_certificate(cert) for cert in proof.levels]
    if len(replayed) != r + 1:
        raise CertificateError("proof must contain exactly rank+1 levels")
    needed = {_chain_vector(r, d, j) for j in range(r + 1)}
    ok = needed <= replayed[0].zero_set()
    for level in range(1, r + 1):
        cert = replayed[level]
        support = {_chain_vector(r, d, j) for j in range(level, r + 1)}
        if cert.support != support:
            raise CertificateError("level %d: wrong support" % level)
        if any(cert.status(v) != ZERO for v in support):
            ok = False
    if ok != proof.concluded:
        raise CertificateError("proof verdict does not match replay")
    return CommonZeroProof(r, d, proof.char, proof.lam, replayed, ok)
