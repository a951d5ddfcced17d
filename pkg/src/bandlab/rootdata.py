"""Simply-laced Cartan data, weights, and Weyl-group word calculus.

Everything downstream (Coxeter elements, quiver windows, band minors)
sits on top of the three types defined here: CartanData, Weight, and
plain tuples of indices used as Weyl words.

Weights are always stored in fundamental-weight coordinates; root
coordinates are derived on demand (exactly, via the inverse Cartan
matrix).  Words act with the leftmost letter outermost, i.e. the word
(i_1, ..., i_k) sends lam to s_{i_1}(s_{i_2}(... s_{i_k}(lam)))."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def _dynkin_edges(kind, rank):
    """Unordered Dynkin edges for the A/D/E tree of the given rank."""
    if kind == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        return frozenset(frozenset((i, i + 1)) for i in range(1, rank))
    if kind == "D":
        if rank < 3:
            raise ValueError("type D needs rank >= 3")
        # path 1 - 2 - ... - (n-1), fork at n-2 toward n
        edges = {frozenset((i, i + 1)) for i in range(1, rank - 1)}
        edges.add(frozenset((rank - 2, rank)))
        return frozenset(edges)
    if kind == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        # Bourbaki: branch node 4 carries the extra node 2
        edges = {frozenset((1, 3)), frozenset((2, 4))}
        edges |= {frozenset((i, i + 1)) for i in range(3, rank)}
        return frozenset(edges)
    raise ValueError(f"unknown type {kind!r} (expected A, D or E)")


class CartanData:
    """A simply-laced Cartan matrix plus its Dynkin tree.

    Attributes
    ----------
    kind : str
        One of "A", "D", "E".
    rank : int
    cartan : tuple of tuple of int
        The symmetric Cartan matrix C = [c_ij], 1-based indices i, j
        mapped onto 0-based storage.
    edges : frozenset of frozenset
        Unordered Dynkin pairs {i, j} with c_ij = -1.
    """

    def __init__(self, kind, rank):
        self.kind = kind
        self.rank = rank
        self.edges = _dynkin_edges(kind, rank)
        C = [[0] * rank for _ in range(rank)]
        for i in range(1, rank + 1):
            C[i - 1][i - 1] = 2
        for e in self.edges:
            i, j = sorted(e)
            C[i - 1][j - 1] = C[j - 1][i - 1] = -1
        self.cartan = tuple(tuple(row) for row in C)

    @property
    def name(self):
        return f"{self.kind}{self.rank}"

    def __repr__(self):
        return f"CartanData({self.name})"

    def __eq__(self, other):
        return isinstance(other, CartanData) and (self.kind, self.rank) == (
            other.kind,
            other.rank,
        )

    def __hash__(self):
        return hash((self.kind, self.rank))

    def neighbors(self, i):
        """Dynkin neighbors of node i, sorted."""
        return sorted(j for j in range(1, self.rank + 1)
                      if j != i and self.cartan[i - 1][j - 1] == -1)

    def check_index(self, i):
        if not 1 <= i <= self.rank:
            raise IndexError(f"node index {i} out of range for {self.name}")


@lru_cache(maxsize=None)
def cartan_data(descriptor):
    """Parse a descriptor string like "A2", "D5", "E6" into CartanData."""
    if isinstance(descriptor, CartanData):
        return descriptor
    kind, rank = descriptor[0].upper(), descriptor[1:]
    return CartanData(kind, int(rank))


def as_cartan(data):
    """Accept either a CartanData or a descriptor string."""
    if isinstance(data, CartanData):
        return data
    return cartan_data(data)


@dataclass(frozen=True)
class Weight:
    """Integer vector in fundamental-weight coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coords))

    def __rmul__(self, k):
        return Weight(tuple(k * a for a in self.coords))

    def is_zero(self):
        return all(a == 0 for a in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"Weight{self.coords}"


def zero_weight(data):
    data = as_cartan(data)
    return Weight((0,) * data.rank)


def fundamental_weight(data, i):
    """The i-th fundamental weight (standard unit vector)."""
    data = as_cartan(data)
    data.check_index(i)
    return Weight(tuple(1 if j == i else 0 for j in range(1, data.rank + 1)))


def simple_root(data, i):
    """alpha_i = sum_j c_ij varpi_j: row i of the Cartan matrix."""
    data = as_cartan(data)
    data.check_index(i)
    return Weight(data.cartan[i - 1])


def rho(data):
    """Sum of the fundamental weights."""
    data = as_cartan(data)
    return Weight((1,) * data.rank)


def reflect(data, i, lam):
    """s_i(lam) = lam - lam_i * alpha_i."""
    data = as_cartan(data)
    data.check_index(i)
    li = lam.coords[i - 1]
    if li == 0:
        return lam
    row = data.cartan[i - 1]
    return Weight(tuple(a - li * c for a, c in zip(lam.coords, row)))


def apply_word(data, w, lam):
    """Apply the word w = (i_1, ..., i_k), leftmost letter outermost."""
    data = as_cartan(data)
    for i in reversed(tuple(w)):
        lam = reflect(data, i, lam)
    return lam


def inner_product(lam, j):
    """(lam, alpha_j): the j-th fundamental-weight coordinate of lam."""
    return lam.coords[j - 1]


def inner_product_nonneg(lam, j):
    """(lam, alpha_j)_{>=0} = max((lam, alpha_j), 0)."""
    return max(inner_product(lam, j), 0)


# ---------------------------------------------------------------------------
# root coordinates and positive roots

@lru_cache(maxsize=None)
def _cartan_inverse(data):
    """Exact inverse of the Cartan matrix as a tuple of Fraction rows."""
    n = data.rank
    A = [[Fraction(data.cartan[i][j]) for j in range(n)] +
         [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(tuple(row[n:]) for row in A)


def root_coords(data, lam):
    """Coordinates of lam in the simple-root basis, as exact Fractions."""
    data = as_cartan(data)
    inv = _cartan_inverse(data)
    n = data.rank
    # lam = sum_j b_j alpha_j  <=>  b = C^{-T} lam = C^{-1} lam (C symmetric)
    return tuple(sum(inv[j][i] * lam.coords[i] for i in range(n))
                 for j in range(n))


def from_root_coords(data, b):
    """Weight with the given simple-root coordinates."""
    data = as_cartan(data)
    n = data.rank
    coords = tuple(sum(b[j] * data.cartan[j][i] for j in range(n))
                   for i in range(n))
    return Weight(coords)


def is_positive_root(data, lam):
    data = as_cartan(data)
    b = root_coords(data, lam)
    if any(x.denominator != 1 or x < 0 for x in b):
        return False
    return from_root_coords(data, [int(x) for x in b]) == lam and any(b)


def _reflect_root(data, i, b):
    # s_i in root coordinates: b'_i = b_i - sum_j c_ij b_j
    row = data.cartan[i - 1]
    s = sum(c * x for c, x in zip(row, b))
    b = list(b)
    b[i - 1] -= s
    return tuple(b)


@lru_cache(maxsize=None)
def positive_roots(data):
    """All positive roots in simple-root coordinates."""
    data = as_cartan(data)
    n = data.rank
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = set(simple)
    while frontier:
        nxt = set()
        for b in frontier:
            for i in range(1, n + 1):
                rb = _reflect_root(data, i, b)
                if all(x >= 0 for x in rb) and rb not in roots:
                    nxt.add(rb)
        roots |= nxt
        frontier = nxt
    return frozenset(roots)


def word_length(data, w):
    """l(w): the number of positive roots sent to negative roots."""
    data = as_cartan(data)
    w = tuple(w)
    count = 0
    for b in positive_roots(data):
        img = b
        for i in reversed(w):
            img = _reflect_root(data, i, img)
        if all(x <= 0 for x in img):
            count += 1
    return count


def longest_element(data):
    """A reduced word for w_0 and the involution nu with w_0 varpi_i = -varpi_{nu(i)}.

    Uses the descent walk on rho: while some coordinate is positive,
    reflect it away; the recorded letters, reversed, form a reduced word
    in the leftmost-outermost convention.
    """
    data = as_cartan(data)
    lam = rho(data)
    picked = []
    while True:
        try:
            i = next(j for j in range(1, data.rank + 1) if lam.coords[j - 1] > 0)
        except StopIteration:
            break
        lam = reflect(data, i, lam)
        picked.append(i)
    word = tuple(reversed(picked))
    nu = {}
    for i in range(1, data.rank + 1):
        img = apply_word(data, word, fundamental_weight(data, i))
        neg = [j for j in range(1, data.rank + 1) if img.coords[j - 1] == -1]
        if len(neg) != 1 or any(c != 0 for k, c in enumerate(img.coords) if k + 1 != neg[0]):
            raise AssertionError("w_0 image of a fundamental weight is not -varpi_j")
        nu[i] = neg[0]
    return word, nu
