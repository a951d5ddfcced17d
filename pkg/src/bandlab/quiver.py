"""Iced quivers, labeled seeds, and Fomin-Zelevinsky mutation.

Vertices are identified by their (i, r) coordinate pair.  Arrows are a
multiset (a Counter of ordered pairs), since some structural checks
count arrow multiplicities from frozen vertices.  A Seed attaches to
each vertex an optional record of minor descriptor, exact rational
value, bi-degree, and symbolic polynomial; mutation updates whichever
labels are present.
"""

from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction

from .rootdata import Weight

BLACK, RED, GREEN = "black", "red", "green"


@dataclass(frozen=True)
class Vertex:
    i: int
    r: int
    color: str = BLACK
    frozen: bool = False

    @property
    def id(self):
        return (self.i, self.r)


class IcedQuiver:
    """Vertex dict (id -> Vertex) plus an arrow multiset."""

    def __init__(self, vertices=(), arrows=()):
        self.vertices = {}
        for v in vertices:
            self.add_vertex(v)
        self.arrows = Counter()
        for a in arrows:
            self.add_arrow(*a)

    def add_vertex(self, v):
        if v.id in self.vertices:
            raise ValueError(f"duplicate vertex {v.id}")
        self.vertices[v.id] = v

    def add_arrow(self, src, dst, mult=1):
        if src not in self.vertices or dst not in self.vertices:
            raise KeyError(f"arrow {src}->{dst} touches a missing vertex")
        if src == dst:
            raise ValueError("loops are not allowed")
        self.arrows[(src, dst)] += mult

    def copy(self):
        q = IcedQuiver()
        q.vertices = dict(self.vertices)
        q.arrows = Counter(self.arrows)
        return q

    def mutable_ids(self):
        return [vid for vid, v in self.vertices.items() if not v.frozen]

    def in_arrows(self, vid):
        """(source, multiplicity) pairs of arrows into vid."""
        return [(a, m) for (a, b), m in self.arrows.items() if b == vid and m > 0]

    def out_arrows(self, vid):
        return [(b, m) for (a, b), m in self.arrows.items() if a == vid and m > 0]

    def drop_frozen_frozen(self):
        for (a, b) in list(self.arrows):
            if self.vertices[a].frozen and self.vertices[b].frozen:
                del self.arrows[(a, b)]

    def check(self):
        """No loops, no 2-cycles.  (Arrows between frozen vertices are
        legal in displayed initial seeds; window builders and mutation
        drop them explicitly.)"""
        for (a, b), m in self.arrows.items():
            if m < 0:
                raise AssertionError(f"negative multiplicity on {a}->{b}")
            if m == 0:
                continue
            if a == b:
                raise AssertionError(f"loop at {a}")
            if self.arrows[(b, a)] > 0:
                raise AssertionError(f"2-cycle between {a} and {b}")

    def mutate(self, vid):
        """The quiver part of FZ mutation at a mutable vertex."""
        if self.vertices[vid].frozen:
            raise ValueError(f"cannot mutate frozen vertex {vid}")
        ins = self.in_arrows(vid)
        outs = self.out_arrows(vid)
        q = self.copy()
        # paths through vid
        for a, p in ins:
            for b, qm in outs:
                if a != b:
                    q.arrows[(a, b)] += p * qm
        # reverse incident arrows
        for a, p in ins:
            q.arrows[(a, vid)] -= p
            q.arrows[(vid, a)] += p
        for b, p in outs:
            q.arrows[(vid, b)] -= p
            q.arrows[(b, vid)] += p
        # cancel 2-cycles
        for (a, b) in list(q.arrows):
            op = q.arrows.get((b, a), 0)
            if op and q.arrows[(a, b)]:
                m = min(op, q.arrows[(a, b)])
                q.arrows[(a, b)] -= m
                q.arrows[(b, a)] -= m
        q.arrows = +q.arrows  # strip zeros
        q.drop_frozen_frozen()
        q.check()
        return q

    def to_json(self, labels=None):
        verts = []
        for vid, v in sorted(self.vertices.items()):
            rec = {"id": list(vid), "i": v.i, "r": v.r,
                   "color": v.color, "frozen": v.frozen}
            if labels is not None:
                lab = labels.get(vid)
                rec["label"] = lab.describe() if lab is not None else None
            verts.append(rec)
        arrows = []
        for (a, b), m in sorted(self.arrows.items()):
            arrows.extend([[list(a), list(b)]] * m)
        return {"vertices": verts, "arrows": arrows}

    def to_dot(self, labels=None):
        lines = ["digraph seed {", "  rankdir=BT;"]
        color_of = {BLACK: "black", RED: "red", GREEN: "green"}
        for vid, v in sorted(self.vertices.items()):
            name = f"v_{v.i}_{v.r}".replace("-", "m")
            text = f"({v.i},{v.r})"
            if labels is not None and labels.get(vid) is not None:
                text += "\\n" + labels[vid].describe()
            shape = "box" if v.frozen else "ellipse"
            lines.append(
                f'  {name} [label="{text}", color={color_of[v.color]}, shape={shape}];'
            )
        for (a, b), m in sorted(self.arrows.items()):
            na = f"v_{a[0]}_{a[1]}".replace("-", "m")
            nb = f"v_{b[0]}_{b[1]}".replace("-", "m")
            for _ in range(m):
                lines.append(f"  {na} -> {nb};")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class MinorLabel:
    """Descriptor of a generalized minor Delta^{(s)}_{c^k varpi_i, c~^l varpi_i}.

    u is always a power of c and v a power of c~; that covers every label
    the constructions need (w_0 varpi_i = c^{m_i} varpi_i = c~^{m_i} varpi_i
    on the i-orbit).  utag/vtag are display-only override strings.
    """

    i: int
    s: int
    k: int
    l: int
    utag: str = ""
    vtag: str = ""

    def u_weight(self, c):
        return c.power_weight(self.i, self.k)

    def v_weight(self, c):
        return c.tilde_power_weight(self.i, self.l)

    def normal_key(self, c):
        """Gluing normal form: Delta^{(s)}_{c^k w_i, v w_i} equals
        Delta^{(s+k)}_{w_i, v w_i}, so (i, s+k, v(varpi_i)) is a complete
        invariant."""
        return (self.i, self.s + self.k, self.v_weight(c))

    def shifted(self, ds):
        return replace(self, s=self.s + ds)

    def describe(self):
        u = self.utag or (f"c^{self.k}" if self.k > 1 else ("c" if self.k == 1 else ""))
        v = self.vtag or (f"~c^{self.l}" if self.l > 1 else ("~c" if self.l == 1 else ""))
        usym = f"{u}(w{self.i})" if u else f"w{self.i}"
        vsym = f"{v}(w{self.i})" if v else f"w{self.i}"
        return f"D^({self.s})[{usym},{vsym}]"


@dataclass(frozen=True)
class BiDegree:
    ldeg: Weight
    rdeg: Weight

    def __add__(self, other):
        return BiDegree(self.ldeg + other.ldeg, self.rdeg + other.rdeg)

    def __sub__(self, other):
        return BiDegree(self.ldeg - other.ldeg, self.rdeg - other.rdeg)


@dataclass
class Label:
    minor: object = None
    value: object = None      # exact Fraction
    degree: object = None     # BiDegree
    symbol: object = None     # SparsePoly (or anything with +, *, exact /)
    text: str = ""            # free-form display override

    def describe(self):
        if self.text:
            return self.text
        if self.minor is not None:
            return self.minor.describe()
        if self.symbol is not None:
            return str(self.symbol)
        if self.value is not None:
            return str(self.value)
        return ""


class Seed:
    """An iced quiver together with per-vertex labels.

    Value-semantic: mutate() returns a new Seed and leaves self intact.
    """

    def __init__(self, quiver, labels=None, c=None):
        self.quiver = quiver
        self.labels = dict(labels or {})
        self.c = c

    def copy(self):
        return Seed(self.quiver.copy(),
                    {k: replace(v) for k, v in self.labels.items()}, self.c)

    def label(self, vid):
        return self.labels.get(vid)

    def _monomials(self, vid, attr):
        ins = self.quiver.in_arrows(vid)
        outs = self.quiver.out_arrows(vid)
        pin = None
        for a, m in ins:
            x = getattr(self.labels[a], attr)
            if x is None:
                return None, None
            for _ in range(m):
                pin = x if pin is None else pin * x
        pout = None
        for b, m in outs:
            x = getattr(self.labels[b], attr)
            if x is None:
                return None, None
            for _ in range(m):
                pout = x if pout is None else pout * x
        return pin, pout

    def mutate(self, vid):
        v = self.quiver.vertices[vid]
        if v.frozen:
            raise ValueError(f"vertex {vid} is frozen")
        old = self.labels.get(vid, Label())
        new = Label()
        # numeric exchange
        if old.value is not None:
            if old.value == 0:
                raise ZeroDivisionError(f"zero value at {vid}")
            pin, pout = self._monomials(vid, "value")
            if pin is None and pout is None and (self.quiver.in_arrows(vid) or
                                                 self.quiver.out_arrows(vid)):
                raise ValueError(f"missing neighbor value at {vid}")
            new.value = ((pin if pin is not None else Fraction(1)) +
                         (pout if pout is not None else Fraction(1))) / old.value
        # symbolic exchange
        if old.symbol is not None:
            pin, pout = self._monomials(vid, "symbol")
            one = old.symbol ** 0 if hasattr(old.symbol, "__pow__") else 1
            new.symbol = ((pin if pin is not None else one) +
                          (pout if pout is not None else one)) / old.symbol
        # bi-degree exchange: both exchange monomials must agree in degree
        if old.degree is not None:
            din = dout = None
            for a, m in self.quiver.in_arrows(vid):
                d = self.labels[a].degree
                for _ in range(m):
                    din = d if din is None else din + d
            for b, m in self.quiver.out_arrows(vid):
                d = self.labels[b].degree
                for _ in range(m):
                    dout = d if dout is None else dout + d
            # an absent side is the empty monomial: degree zero
            if din is None and dout is None:
                raise AssertionError(f"isolated vertex {vid} has no exchange")
            if din is None:
                din = dout - dout
            if dout is None:
                dout = din - din
            if din != dout:
                raise AssertionError(
                    f"degree imbalance at {vid}: in={din} out={dout}")
            new.degree = din - old.degree
        out = self.copy()
        out.quiver = self.quiver.mutate(vid)
        out.labels[vid] = new
        return out

    def mutate_sequence(self, schedule):
        seed = self
        trace = []
        for vid in schedule:
            seed = seed.mutate(vid)
            trace.append(vid)
        seed.trace = trace
        return seed

    def to_json(self):
        data = self.quiver.to_json(self.labels)
        for rec in data["vertices"]:
            lab = self.labels.get(tuple(rec["id"]))
            if lab is not None and lab.value is not None:
                rec["value"] = str(lab.value)
        return data


def mutate(seed, vid):
    return seed.mutate(vid)


def mutate_sequence(seed, schedule):
    return seed.mutate_sequence(schedule)


def seed_isomorphic(s1, s2, vertex_map, label_map=None, diffs=None,
                    check_colors=True):
    """True iff arrows and labels of s1 correspond to those of s2 under
    vertex_map (a bijection on ids); label_map transforms s1's MinorLabel
    before comparison (modulo the gluing normal form)."""
    if diffs is None:
        diffs = []
    q1, q2 = s1.quiver, s2.quiver
    if set(vertex_map) != set(q1.vertices) or set(vertex_map.values()) != set(q2.vertices):
        diffs.append("vertex sets do not correspond")
        return False
    mapped = Counter()
    for (a, b), m in q1.arrows.items():
        if m:
            mapped[(vertex_map[a], vertex_map[b])] += m
    if mapped != +q2.arrows:
        for key in set(mapped) | set(+q2.arrows):
            if mapped.get(key, 0) != q2.arrows.get(key, 0):
                diffs.append(f"arrow {key}: {mapped.get(key, 0)} vs {q2.arrows.get(key, 0)}")
        return False
    ok = True
    for vid, wid in vertex_map.items():
        v1, v2 = q1.vertices[vid], q2.vertices[wid]
        if v1.frozen != v2.frozen:
            diffs.append(f"frozen flag differs at {vid}->{wid}")
            ok = False
        if check_colors and v1.color != v2.color:
            diffs.append(f"color differs at {vid}->{wid}: {v1.color} vs {v2.color}")
            ok = False
        m1 = s1.labels.get(vid).minor if s1.labels.get(vid) else None
        m2 = s2.labels.get(wid).minor if s2.labels.get(wid) else None
        if m1 is not None and m2 is not None:
            if label_map is not None:
                m1 = label_map(m1)
            c = s1.c or s2.c
            if m1.normal_key(c) != m2.normal_key(c):
                diffs.append(f"label differs at {vid}->{wid}: "
                             f"{m1.describe()} vs {m2.describe()}")
                ok = False
    return ok


def exchange_matrix(quiver):
    """Extended exchange matrix: rows = all vertices, columns = mutable."""
    ids = sorted(quiver.vertices)
    cols = [v for v in ids if not quiver.vertices[v].frozen]
    B = []
    for a in ids:
        row = []
        for b in cols:
            row.append(Fraction(quiver.arrows.get((a, b), 0)
                                - quiver.arrows.get((b, a), 0)))
        B.append(row)
    return B, ids, cols


def max_rank_check(quiver):
    """Exact rank of the extended exchange matrix equals #mutable vertices."""
    B, _, cols = exchange_matrix(quiver)
    if not cols:
        return True
    rank = 0
    rows = [r[:] for r in B]
    ncols = len(cols)
    pivot_row = 0
    for col in range(ncols):
        piv = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        p = rows[pivot_row][col]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col] / p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank == ncols
