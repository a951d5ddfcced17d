"""Coxeter elements and everything derived from them.

A Coxeter element c = s_{i_1} ... s_{i_n} (each index once) determines:
the Dynkin quiver orientation Q (earlier letter -> later letter), the
height function xi, the orbit lengths m_i, the companion element
c~ = w_0 c^{-1} w_0, the c-adapted reduced word for w_0, the prefix
words w_{i,k}, and the dimension vectors of the knitting algorithm.
"""

from functools import lru_cache

from .rootdata import (
    apply_word,
    as_cartan,
    fundamental_weight,
    longest_element,
    root_coords,
    simple_root,
    word_length,
)


class CoxeterElement:
    """A Coxeter element with its derived combinatorics.

    Attributes
    ----------
    data : CartanData
    word : tuple of int
        The defining word (i_1, ..., i_n), a permutation of [1, n].
    q_arrows : frozenset of (i, j)
        Directed Dynkin edges, oriented earlier letter -> later letter.
    xi : dict
        Height function: xi[i_1] = 0, xi[j] = xi[i] - 1 per arrow i -> j.
    m : dict
        m[i] = minimal k with c^k(varpi_i) = w_0(varpi_i).
    nu : dict
        The involution with w_0(varpi_i) = -varpi_{nu(i)}.
    tilde_word : tuple of int
        Word for c~ = w_0 c^{-1} w_0, namely (nu(i_n), ..., nu(i_1)).
    """

    def __init__(self, data, word):
        data = as_cartan(data)
        word = tuple(word)
        if sorted(word) != list(range(1, data.rank + 1)):
            raise ValueError(f"{word} is not a permutation of 1..{data.rank}")
        self.data = data
        self.word = word
        pos = {i: k for k, i in enumerate(word)}
        self.q_arrows = frozenset(
            (i, j) if pos[i] < pos[j] else (j, i)
            for e in data.edges
            for i, j in [sorted(e)]
        )
        # xi recursion over the Dynkin tree, anchored at the first letter
        xi = {word[0]: 0}
        todo = [word[0]]
        while todo:
            i = todo.pop()
            for j in data.neighbors(i):
                if j in xi:
                    continue
                xi[j] = xi[i] - 1 if (i, j) in self.q_arrows else xi[i] + 1
                todo.append(j)
        self.xi = xi
        w0, nu = longest_element(data)
        self.nu = nu
        self._w0 = w0
        self.m = {}
        for i in range(1, data.rank + 1):
            target = -fundamental_weight(data, nu[i])
            lam = fundamental_weight(data, i)
            k = 0
            while lam != target:
                lam = apply_word(data, word, lam)
                k += 1
                if k > len(w0) + 1:
                    raise AssertionError("c-orbit of a fundamental weight never hit w_0(varpi_i)")
            self.m[i] = k
        self.tilde_word = tuple(nu[i] for i in reversed(word))
        # assert against the defining equation c~ = w_0 c^{-1} w_0
        cinv = tuple(reversed(word))
        for i in range(1, data.rank + 1):
            lam = fundamental_weight(data, i)
            lhs = apply_word(data, self.tilde_word, lam)
            rhs = apply_word(data, w0, apply_word(data, cinv, apply_word(data, w0, lam)))
            if lhs != rhs:
                raise AssertionError("tilde word disagrees with w_0 c^{-1} w_0")

    @property
    def rank(self):
        return self.data.rank

    def __repr__(self):
        return f"CoxeterElement({self.data.name}, {self.word})"

    @lru_cache(maxsize=None)
    def tilde(self):
        """The companion Coxeter element c~ as a CoxeterElement."""
        return CoxeterElement(self.data, self.tilde_word)

    @property
    def xi_tilde(self):
        return self.tilde().xi

    @lru_cache(maxsize=None)
    def power_weight(self, i, k):
        """c^k(varpi_i), computed by iterating the defining word."""
        if k == 0:
            return fundamental_weight(self.data, i)
        if k > 0:
            return apply_word(self.data, self.word, self.power_weight(i, k - 1))
        return apply_word(self.data, tuple(reversed(self.word)),
                          self.power_weight(i, k + 1))

    @lru_cache(maxsize=None)
    def tilde_power_weight(self, i, k):
        """c~^k(varpi_i)."""
        if k == 0:
            return fundamental_weight(self.data, i)
        if k > 0:
            return apply_word(self.data, self.tilde_word,
                              self.tilde_power_weight(i, k - 1))
        return apply_word(self.data, tuple(reversed(self.tilde_word)),
                          self.tilde_power_weight(i, k + 1))


def make_coxeter(data, word):
    return CoxeterElement(as_cartan(data), word)


def tilde_coxeter(c):
    return c.tilde()


def coxeter_power_weight(c, i, k):
    """c^k(varpi_i).  Values with k outside [0, m_i] are legal but leave
    the orbit segment used by the minor labels."""
    return c.power_weight(i, k)


@lru_cache(maxsize=None)
def _adapted_word_cached(c):
    data = c.data
    n_pos = word_length(data, c._w0)
    word = list(c.word)
    while len(word) < n_pos:
        kept_any = False
        for i in c.word:
            if len(word) == n_pos:
                break
            # appending s_i lengthens the word iff word(alpha_i) > 0
            img = apply_word(data, word, simple_root(data, i))
            b = root_coords(data, img)
            if all(x >= 0 for x in b):
                word.append(i)
                kept_any = True
        if not kept_any:
            break
    if len(word) != n_pos:
        raise AssertionError("greedy adapted word did not reach length l(w_0)")
    return tuple(word)


def adapted_word(c):
    """The c-adapted reduced word for w_0 starting with c's own word."""
    return _adapted_word_cached(c)


def w_ik(c, i, k):
    """The prefix word w_{i,k}: empty for k = 1; for k >= 2, letters
    n+1 .. a(i,k) of the adapted word, where a(i,k) is the position of
    the k-th occurrence of i."""
    if not 1 <= k <= c.m[i]:
        raise ValueError(f"k={k} out of range [1, m_{i}={c.m[i]}]")
    if k == 1:
        return ()
    word = adapted_word(c)
    seen = 0
    for pos, letter in enumerate(word, start=1):
        if letter == i:
            seen += 1
            if seen == k:
                return word[c.rank:pos]
    raise AssertionError("adapted word has fewer occurrences of i than m_i")


def ar_dimension_vectors(c):
    """Dimension vectors of the knitting algorithm: position j of the
    adapted word maps to dim x(j) = c^{k-1}(varpi_{i_j}) - c^k(varpi_{i_j}),
    in simple-root coordinates, where k counts occurrences of i_j up to j."""
    word = adapted_word(c)
    seen = {i: 0 for i in range(1, c.rank + 1)}
    dims = {}
    for j, i in enumerate(word, start=1):
        seen[i] += 1
        k = seen[i]
        diff = c.power_weight(i, k - 1) - c.power_weight(i, k)
        b = root_coords(c.data, diff)
        if any(x.denominator != 1 or x < 0 for x in b) or not any(b):
            raise AssertionError(f"dim x({j}) is not a positive root")
        dims[j] = tuple(int(x) for x in b)
    return dims


def reduced_word_from_images(data, images):
    """A reduced word for the Weyl group element w given by its images
    images[i] = w(varpi_i).  Strips right descents: if w(alpha_j) < 0
    then w = w' s_j with l(w') = l(w) - 1."""
    data = as_cartan(data)
    images = dict(images)
    C = data.cartan
    collected = []
    while True:
        descent = None
        for j in range(1, data.rank + 1):
            # w(alpha_j) = sum_k c_jk w(varpi_k)
            wal = None
            for k in range(1, data.rank + 1):
                coef = C[j - 1][k - 1]
                if coef:
                    t = coef * images[k]
                    wal = t if wal is None else wal + t
            rc = root_coords(data, wal)
            if all(x <= 0 for x in rc):
                descent = (j, wal)
                break
        if descent is None:
            break
        j, wal = descent
        collected.append(j)
        images[j] = images[j] - wal
    for i in range(1, data.rank + 1):
        if images[i] != fundamental_weight(data, i):
            raise AssertionError("descent stripping did not reach identity")
    return tuple(reversed(collected))


@lru_cache(maxsize=None)
def _power_word_cached(c, k):
    images = {i: c.power_weight(i, k) for i in range(1, c.rank + 1)}
    return reduced_word_from_images(c.data, images)


def power_word(c, k):
    """A reduced word for c^k (k >= 0)."""
    return _power_word_cached(c, k)


@lru_cache(maxsize=None)
def _tilde_power_word_cached(c, k):
    images = {i: c.tilde_power_weight(i, k) for i in range(1, c.rank + 1)}
    return reduced_word_from_images(c.data, images)


def tilde_power_word(c, k):
    """A reduced word for c~^k (k >= 0)."""
    return _tilde_power_word_cached(c, k)
