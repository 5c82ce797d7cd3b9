"""Canonical text encodings and JSON (de)serialization.

Laurent functions print as ``(a) + (b)*y / y^m`` where a and b are
sparse term lists ``coeff*x^k``; homogeneous polynomials print as sums
of ``(laurent) * t0^a0 t1^a1 ...`` terms.  Field elements are rendered
as decimal strings.
"""

import re

from .field import Rationals, PrimeField


def poly1_to_text(field, f):
    if not f:
        return "0"
    return " + ".join("%s*x^%d" % (field.to_str(f[k]), k) for k in sorted(f))


def parse_poly1(field, text):
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    for term in text.split(" + "):
        coeff, _, xpart = term.rpartition("*")
        mo = re.fullmatch(r"x\^(\d+)", xpart.strip())
        if mo is None or not coeff:
            raise ValueError("bad polynomial term %r" % term)
        k = int(mo.group(1))
        c = field.el(_parse_scalar(field, coeff.strip()))
        if c:
            out[k] = c
    return out


def _parse_scalar(field, s):
    if isinstance(field, Rationals):
        return field.el(s)
    return field.el(int(s))


def laurent_to_text(h):
    field = h.curve.field
    return "(%s) + (%s)*y / y^%d" % (
        poly1_to_text(field, h.a),
        poly1_to_text(field, h.b),
        h.m,
    )


_LAURENT_RE = re.compile(r"\((?P<a>[^()]*)\) \+ \((?P<b>[^()]*)\)\*y / y\^(?P<m>\d+)\Z")


def parse_laurent(curve, text):
    from .curve import LaurentFunction

    mo = _LAURENT_RE.fullmatch(text.strip())
    if mo is None:
        raise ValueError("bad Laurent-function text %r" % text)
    a = parse_poly1(curve.field, mo.group("a"))
    b = parse_poly1(curve.field, mo.group("b"))
    return LaurentFunction(curve, a, b, int(mo.group("m")))


def homog_to_text(F):
    if not F.terms:
        return "0"
    parts = []
    for u in sorted(F.terms):
        tvars = " ".join("t%d^%d" % (i, e) for i, e in enumerate(u))
        parts.append("(%s) * %s" % (laurent_to_text(F.terms[u]), tvars))
    return " + ".join(parts)


def _split_top_level(text, sep=" + "):
    parts = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return parts


_TERM_RE = re.compile(r"\((?P<laurent>.*)\) \* (?P<tvars>t\d+\^\d+(?: t\d+\^\d+)*)\Z")


def parse_homog(curve, text, num_vars, degree):
    from .poly import HomogPoly

    text = text.strip()
    terms = {}
    if text != "0":
        for part in _split_top_level(text):
            mo = _TERM_RE.fullmatch(part.strip())
            if mo is None:
                raise ValueError("bad homogeneous-polynomial term %r" % part)
            coeff = parse_laurent(curve, mo.group("laurent"))
            expo = [0] * num_vars
            for piece in mo.group("tvars").split(" "):
                idx, _, e = piece[1:].partition("^")
                i = int(idx)
                if i >= num_vars:
                    raise ValueError("variable index %d out of range" % i)
                expo[i] = int(e)
            u = tuple(expo)
            if sum(u) != degree:
                raise ValueError("term %r does not have degree %d" % (part, degree))
            if coeff:
                terms[u] = coeff if u not in terms else terms[u] + coeff
    return HomogPoly(num_vars, degree, terms, zero=curve.zero())


# ---------------------------------------------------------------------------
# candidate JSON


def field_to_json(field):
    if isinstance(field, Rationals):
        return "Q"
    return {"Fp": field.p}


def field_from_json(data):
    if data == "Q":
        return Rationals()
    if isinstance(data, dict) and set(data) == {"Fp"}:
        return PrimeField(int(data["Fp"]))
    raise ValueError("bad field tag %r" % (data,))


def curve_to_json(curve):
    return {"field": field_to_json(curve.field), "lambda": curve.field.to_str(curve.lam)}


def curve_from_json(data):
    from .curve import make_curve

    field = field_from_json(data["field"])
    return make_curve(field, _parse_scalar(field, str(data["lambda"])))


def bundle_to_json(desc):
    out = []
    for rank, twist in desc.summands:
        if twist == ("trivial",):
            tw = "trivial"
        elif twist[0] == "torsion":
            tw = {"torsion": twist[1]}
        else:
            tw = {"label": twist[1]}
        out.append({"rank": rank, "twist": tw})
    return {"summands": out}


def bundle_from_json(data):
    from .bundles import BundleDescriptor

    summands = []
    for item in data["summands"]:
        tw = item["twist"]
        if tw == "trivial":
            twist = ("trivial",)
        elif isinstance(tw, dict) and "torsion" in tw:
            twist = ("torsion", int(tw["torsion"]))
        elif isinstance(tw, dict) and "label" in tw:
            twist = ("label", str(tw["label"]))
        else:
            raise ValueError("bad twist %r" % (tw,))
        summands.append((int(item["rank"]), twist))
    return BundleDescriptor(summands)


def scalar_to_json(s):
    """Formal transition scalar -> JSON (list of exponent/coefficient terms)."""
    return [
        {"exps": list(g), "coeff": laurent_to_text(c)}
        for g, c in sorted(s.terms.items())
    ]


def scalar_from_json(curve, orders, data):
    from .endo import FormalScalar

    if data == "1":
        return FormalScalar.one(curve, orders)
    terms = {}
    for item in data:
        g = tuple(int(e) for e in item["exps"])
        terms[g] = parse_laurent(curve, item["coeff"])
    return FormalScalar(curve, orders, terms)


def candidate_to_json(c):
    return {
        "curve": curve_to_json(c.curve),
        "bundle": bundle_to_json(c.bundle),
        "degree": c.fibre_degree,
        "beta": scalar_to_json(c.beta),
        "gammas": [scalar_to_json(g) for g in c.gammas],
        "F": [homog_to_text(F) for F in c.F],
        "G": [homog_to_text(G) for G in c.G],
    }


def candidate_from_json(data):
    from .endo import EndoCandidate

    curve = curve_from_json(data["curve"])
    bundle = bundle_from_json(data["bundle"])
    degree = int(data["degree"])
    orders = bundle.twist_orders()
    beta = scalar_from_json(curve, orders, data["beta"])
    gammas = [scalar_from_json(curve, orders, g) for g in data["gammas"]]
    nvars = bundle.total_rank()
    F = [parse_homog(curve, s, nvars, degree) for s in data["F"]]
    G = [parse_homog(curve, s, nvars, degree) for s in data["G"]]
    return EndoCandidate(curve, bundle, degree, beta, gammas, F, G)
