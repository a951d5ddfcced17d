"""The invariant ring as a polynomial algebra in the variables
theta^{(s)}_i, the expansion of the higher functions theta^{(s)}_{i,k}
through their functional relations, the ladder-seed mutation cascades,
and the Kirillov-Reshetikhin relabelling of the same index system.
"""

from dataclasses import dataclass
from fractions import Fraction

from .quiverzoo import ThetaLabel, build_theta_seed

# ---------------------------------------------------------------------------
# sparse polynomials in the variables th^(s)_i
#
# A variable is a pair (s, i); a monomial is a tuple of ((s, i), exp)
# sorted by variable; terms map monomials to nonzero Fractions.

_ONE = ()


def _mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def _mono_div(m1, m2):
    """m1 / m2, or None if not divisible."""
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) - e
        if d[v] < 0:
            return None
    return tuple(sorted((v, e) for v, e in d.items() if e))


def _mono_key(m):
    """Graded lexicographic order on variables (s, i)."""
    deg = sum(e for _, e in m)
    vec = tuple(sorted(((-s, -i), -e) for (s, i), e in m))
    return (deg, vec)


class SparsePoly:
    """A polynomial in the variables theta^{(s)}_i with exact rational
    coefficients.  Immutable; arithmetic returns new polynomials;
    division is exact or raises."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[m] = c
        self.terms = t

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({_ONE: Fraction(c)})

    @classmethod
    def var(cls, s, i):
        return cls({(((s, i), 1),): Fraction(1)})

    # -- ring structure ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, Fraction(0)) + c
        return SparsePoly(t)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, Fraction(0)) + c1 * c2
        return SparsePoly(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = SparsePoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        """Exact division; raises ValueError if the quotient is not a
        polynomial."""
        other = _coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        quot = {}
        lm = max(other.terms, key=_mono_key)
        lc = other.terms[lm]
        while rem:
            m = max(rem, key=_mono_key)
            q = _mono_div(m, lm)
            if q is None:
                raise ValueError("inexact polynomial division")
            coef = rem[m] / lc
            quot[q] = quot.get(q, Fraction(0)) + coef
            for m2, c2 in other.terms.items():
                mm = _mono_mul(q, m2)
                rem[mm] = rem.get(mm, Fraction(0)) - coef * c2
                if not rem[mm]:
                    del rem[mm]
        return SparsePoly(quot)

    # -- structure ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.terms == _coerce(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def shift(self, ds):
        """Substitute th^(s)_i -> th^(s+ds)_i in every variable."""
        return SparsePoly({
            tuple(sorted((((s + ds, i), e) for (s, i), e in m)))
            : c for m, c in self.terms.items()})

    def evaluate(self, values):
        """Evaluate at a map (s, i) -> Fraction."""
        out = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= values[v] ** e
            out += t
        return out

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[m]
            factors = [f"th^({s})_{i}" + (f"^{e}" if e > 1 else "")
                       for (s, i), e in m]
            body = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(body)
            elif c == -1 and factors:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}" if factors else str(c))
        txt = " + ".join(parts).replace("+ -", "- ")
        return txt

    __repr__ = __str__

    def to_json(self):
        return [{"coeff": str(c),
                 "monomial": [[s, i, e] for (s, i), e in m]}
                for m, c in sorted(self.terms.items(),
                                  key=lambda kv: _mono_key(kv[0]),
                                  reverse=True)]


def _coerce(x):
    if isinstance(x, SparsePoly):
        return x
    return SparsePoly.const(x)


# ---------------------------------------------------------------------------
# theta expansion

_theta_memo = {}


def theta_poly(c, i, k, s=0):
    """theta^{(s)}_{i,k} expanded as a polynomial in the theta^{(t)}_j,
    via the recurrence

        th^{(s)}_{i,k+1} = (th^{(s)}_{i,k} th^{(s+1)}_{i,k}
                            - prod_{j ~ i} th^{(s+a_ij)}_{j,k})
                           / th^{(s+1)}_{i,k-1},

    with a_ij = [xi_j > xi_i]; the division is exact (polynomiality of
    the system) and indices i = 0 or outside the diagram give 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if i < 1 or i > c.rank:
        return SparsePoly.const(1)
    base = _theta_base(c, i, k)
    return base.shift(s) if s else base


def _theta_base(c, i, k):
    key = (c.data, c.word, i, k)
    got = _theta_memo.get(key)
    if got is not None:
        return got
    if k == 0:
        out = SparsePoly.const(1)
    elif k == 1:
        out = SparsePoly.var(0, i)
    else:
        prod = SparsePoly.const(1)
        for j in c.data.neighbors(i):
            a = 1 if c.xi[j] > c.xi[i] else 0
            prod = prod * theta_poly(c, j, k - 1, a)
        num = (theta_poly(c, i, k - 1, 0) * theta_poly(c, i, k - 1, 1) - prod)
        out = num / theta_poly(c, i, k - 2, 1)
    _theta_memo[key] = out
    return out


# ---------------------------------------------------------------------------
# the ladder cascades


def _vertical_status(quiver, vid):
    """'source' / 'sink' according to the vertical arrows at vid in the
    current quiver; raises if mixed."""
    (i, k) = vid
    outs = ins = 0
    for nb in ((i, k - 1), (i, k + 1)):
        if nb not in quiver.vertices:
            continue
        outs += quiver.arrows.get((vid, nb), 0)
        ins += quiver.arrows.get((nb, vid), 0)
    if outs and not ins:
        return "source"
    if ins and not outs:
        return "sink"
    raise AssertionError(f"vertex {vid} is neither a vertical source "
                         f"nor a vertical sink")


def ladder_verify(data, c, N, direction="both"):
    """Run the alternating source/sink mutation cascades on the N-row
    ladder seed with polynomial labels, checking after every single
    mutation that the produced polynomial is theta_poly at the predicted
    indices: the superscript goes up by 1 when mutating a vertical
    source, down by 1 at a vertical sink.  Also checks the collected
    row-1 superscripts against the expected range.  Returns a report."""
    base = build_theta_seed(data, c, N)
    for vid, lab in base.labels.items():
        t = lab.minor
        lab.symbol = theta_poly(c, t.i, t.k, t.s)
    from .quiverzoo import theta_classes
    w0, w1 = theta_classes(base)
    report = {"kind": "ladder", "N": N, "instances": 0, "failures": [],
              "collected": {}}
    collected = {i: set() for i in range(1, c.rank + 1)}
    for vid, lab in base.labels.items():
        if vid[1] == 1:
            collected[vid[0]].add(lab.minor.s)

    def run(first, second):
        seed = base.copy()
        cur = {vid: lab.minor for vid, lab in seed.labels.items()}
        rows_left = N
        while rows_left >= 2:
            for group, cap in ((first, rows_left),
                               (second, rows_left - 1)):
                for vid in sorted(group):
                    if vid[1] >= cap or seed.quiver.vertices[vid].frozen:
                        continue
                    ds = 1 if _vertical_status(seed.quiver, vid) == "source" else -1
                    t = cur[vid]
                    pred = ThetaLabel(t.i, t.k, t.s + ds)
                    seed = seed.mutate(vid)
                    got = seed.labels[vid].symbol
                    want = theta_poly(c, pred.i, pred.k, pred.s)
                    report["instances"] += 1
                    if got != want:
                        report["failures"].append(
                            (vid, pred.describe(), str(got)))
                    seed.labels[vid].minor = pred
                    cur[vid] = pred
                    if vid[1] == 1:
                        collected[vid[0]].add(pred.s)
            rows_left -= 2

    if direction in ("up", "both"):
        run(w0, w1)
    if direction in ("down", "both"):
        run(w1, w0)

    # the collected row-1 variables must be exactly the expected window
    if direction == "both":
        for i in range(1, c.rank + 1):
            nN = base.labels[(i, N)].minor.s
            want = set(range(nN, nN + N))
            report["instances"] += 1
            if collected[i] != want:
                report["failures"].append(
                    ("collected", i, sorted(collected[i]), sorted(want)))
    report["collected"] = {i: sorted(v) for i, v in collected.items()}
    report["ok"] = not report["failures"]
    return report


# ---------------------------------------------------------------------------
# Kirillov-Reshetikhin relabelling


@dataclass(frozen=True)
class KRLabel:
    """W^{(i)}_{k, q^r}: the module label carrying the same data as
    theta^{(s)}_{i,k} through r = 2s + 1 - xi_i."""

    i: int
    k: int
    spectral: int

    def describe(self):
        return f"W^({self.i})_[{self.k}, q^{self.spectral}]"

    def fundamental(self):
        if self.k != 1:
            raise ValueError("only k = 1 labels are fundamental")
        return f"L(Y_{self.i}, q^{self.spectral})"


def kr_label(data, c, i, k, s):
    return KRLabel(i, k, 2 * s + 1 - c.xi[i])


def kns_form(data, c, i, k, s):
    """The functional relation at (i, k, s) rewritten in the module
    labels; returns (lhs_factors, rhs_main, rhs_product) as strings."""
    L = kr_label(data, c, i, k, s)
    Lnext = kr_label(data, c, i, k, s + 1)
    lhs = (L.describe(), Lnext.describe())
    main = (kr_label(data, c, i, k + 1, s).describe(),
            kr_label(data, c, i, k - 1, s + 1).describe())
    prod = []
    for j in data.neighbors(i):
        a = 1 if c.xi[j] > c.xi[i] else 0
        prod.append(kr_label(data, c, j, k, s + a).describe())
    return lhs, main, prod


def tsystem_as_KNS(data, c, kmax=4, smax=3):
    """Check that the relabelled relations take the spectral-parameter
    form [W_{k,q^r}][W_{k,q^{r+2}}] = [W_{k+1,q^r}][W_{k-1,q^{r+2}}]
    + prod_j [W^{(j)}_{k,q^{r+1}}] for every i, k <= kmax, |s| <= smax."""
    count, failures = 0, []
    for i in range(1, data.rank + 1):
        for k in range(1, kmax + 1):
            for s in range(-smax, smax + 1):
                r = kr_label(data, c, i, k, s).spectral
                (l1, l2), (m1, m2), prod = kns_form(data, c, i, k, s)
                exp_l = (KRLabel(i, k, r).describe(),
                         KRLabel(i, k, r + 2).describe())
                exp_m = (KRLabel(i, k + 1, r).describe(),
                         KRLabel(i, k - 1, r + 2).describe())
                exp_p = [KRLabel(j, k, r + 1).describe()
                         for j in data.neighbors(i)]
                count += 1
                if (l1, l2) != exp_l or (m1, m2) != exp_m or prod != exp_p:
                    failures.append((i, k, s, (l1, l2), (m1, m2), prod))
    return {"kind": "kns", "instances": count, "failures": failures,
            "ok": not failures}
