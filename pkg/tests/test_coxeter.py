import pytest

from bandlab.coxeter import (
    adapted_word,
    ar_dimension_vectors,
    make_coxeter,
    power_word,
    reduced_word_from_images,
    tilde_power_word,
    w_ik,
)
from bandlab.rootdata import (
    apply_word,
    cartan_data,
    fundamental_weight,
    longest_element,
    positive_roots,
    word_length,
)
from checks import ALL_TYPES_RANK5, all_coxeter_words, check_interval_words

D5 = cartan_data("D5")
C_D5 = make_coxeter(D5, (2, 4, 1, 3, 5))


def test_d5_orbit_lengths():
    assert [C_D5.m[i] for i in range(1, 6)] == [4, 4, 4, 5, 3]


def test_d5_adapted_word():
    assert adapted_word(C_D5) == (2, 4, 1, 3, 5, 2, 4, 1, 3, 5,
                                  2, 4, 1, 3, 5, 2, 4, 1, 3, 4)


def test_d5_interval_words():
    expected = {
        (1, 2): (2, 4, 1),
        (2, 2): (2,),
        (3, 2): (2, 4, 1, 3),
        (4, 2): (2, 4),
        (5, 2): (2, 4, 1, 3, 5),
        (1, 3): (2, 4, 1, 3, 5, 2, 4, 1),
    }
    for (i, k), want in expected.items():
        assert w_ik(C_D5, i, k) == want


def test_d5_dimension_vector():
    dims = ar_dimension_vectors(C_D5)
    assert dims[9] == (1, 2, 2, 1, 1)


def test_w_ik_range_errors():
    with pytest.raises(ValueError):
        w_ik(C_D5, 1, 0)
    with pytest.raises(ValueError):
        w_ik(C_D5, 5, 4)


@pytest.mark.parametrize("name", ALL_TYPES_RANK5)
def test_interval_words_exhaustive(name):
    data = cartan_data(name)
    for c in all_coxeter_words(data, dedupe=False):
        assert check_interval_words(c) == []


@pytest.mark.parametrize("name", ["A3", "A4", "D4", "D5"])
def test_structural_invariants(name):
    data = cartan_data(name)
    w0, nu = longest_element(data)
    for c in all_coxeter_words(data):
        # the letters of c appear exactly m_i times in the adapted word,
        # which is a reduced word for w_0
        word = adapted_word(c)
        assert len(word) == sum(c.m.values()) == len(positive_roots(data))
        for i in range(1, data.rank + 1):
            assert word.count(i) == c.m[i]
        # the companion element is an involution of the construction
        assert c.tilde().tilde_word == c.word
        # xi is a height function for the orientation
        for (i, j) in c.q_arrows:
            assert c.xi[j] == c.xi[i] - 1
        # every knitting dimension vector is a positive root (asserted
        # inside), and there is one per positive root position
        assert len(ar_dimension_vectors(c)) == len(word)


def test_power_words_reduced():
    for k in range(0, 4):
        w = power_word(C_D5, k)
        assert word_length(D5, w) == len(w)
        for i in range(1, 6):
            assert apply_word(D5, w, fundamental_weight(D5, i)) == \
                C_D5.power_weight(i, k)
        wt = tilde_power_word(C_D5, k)
        for i in range(1, 6):
            assert apply_word(D5, wt, fundamental_weight(D5, i)) == \
                C_D5.tilde_power_weight(i, k)


def test_reduced_word_from_images_identity_and_w0():
    data = cartan_data("A3")
    images = {i: fundamental_weight(data, i) for i in range(1, 4)}
    assert reduced_word_from_images(data, images) == ()
    w0, nu = longest_element(data)
    images = {i: -fundamental_weight(data, nu[i]) for i in range(1, 4)}
    w = reduced_word_from_images(data, images)
    assert word_length(data, w) == len(positive_roots(data))


def test_word_validation():
    with pytest.raises(ValueError):
        make_coxeter(D5, (1, 2, 3, 4))
    with pytest.raises(ValueError):
        make_coxeter(D5, (1, 1, 2, 3, 4))
