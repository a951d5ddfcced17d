import random
from fractions import Fraction

import pytest

from bandlab.bands import (
    BandWindow,
    UnipotentStep,
    act_group,
    act_torus,
    band_minor,
    demo_seed,
    eval_minor_label,
    generalized_minor,
    mat_det,
    mat_id,
    mat_inv,
    mat_mul,
    psi,
    random_band,
    random_group_element,
    sbar,
    theta,
    verify_black_mutation,
    verify_cubic,
    verify_fz_minor,
    verify_gluing,
    verify_identity,
    verify_laurent,
    verify_sequence_M,
    verify_theta_psi,
    verify_translation,
    verify_tsystem,
    wbar,
)
from bandlab.coxeter import make_coxeter
from bandlab.quiver import MinorLabel
from bandlab.rootdata import cartan_data

RNG = random.Random(12345)


# ---------------------------------------------------------------------------
# matrices and band windows


def test_matrix_helpers():
    g = random_group_element(4, RNG)
    assert mat_det(g) == 1
    assert mat_mul(g, mat_inv(g)) == mat_id(4)
    assert sbar(2, 1) == [[Fraction(0), Fraction(-1)],
                          [Fraction(1), Fraction(0)]]
    # wbar of a reduced word is independent of the choice of word
    assert wbar(3, (1, 2, 1)) == wbar(3, (2, 1, 2))


def test_band_window_validation():
    with pytest.raises(ValueError):
        BandWindow(2, 1, 2, [[1, 0], [0, 1], [0, 1], [0, 1]])  # 0 not inside
    with pytest.raises(ValueError):
        BandWindow(2, 0, 0, [[1, 0]])  # wrong shape
    with pytest.raises(ValueError):
        BandWindow(2, 0, 0, [[1, 0], [0, 2]])  # det != 1


def test_band_window_slicing_and_json():
    B = random_band(3, -2, 2, RNG)
    assert B.row(B.M) == B.rows[0]
    with pytest.raises(IndexError):
        B.row(B.N + B.n)
    with pytest.raises(IndexError):
        B.B(B.N + 1)
    S = B.sliced(-1, 1)
    for s in range(-1, 2):
        assert S.B(s) == B.B(s)
    R = BandWindow.from_json(B.to_json())
    assert R.rows == B.rows and (R.n, R.M, R.N) == (B.n, B.M, B.N)


def test_band_window_extend():
    B = random_band(2, 0, 1, RNG)
    step = UnipotentStep((Fraction(3, 2),))
    E = B.extended(step)
    assert (E.M, E.N) == (-1, 1)
    assert E.step(-1) == step.matrix(2)
    assert E.B(0) == B.B(0)


def test_unipotent_step_shape():
    s = UnipotentStep((Fraction(1), Fraction(2)))
    m = s.matrix(3)
    assert mat_det(m) == 1
    with pytest.raises(ValueError):
        s.matrix(4)


def test_seeded_reproducibility():
    b1 = random_band(3, -1, 1, random.Random(7))
    b2 = random_band(3, -1, 1, random.Random(7))
    assert b1.rows == b2.rows


# ---------------------------------------------------------------------------
# minors and invariance


def test_generalized_minor_sl2():
    g = [[Fraction(2), Fraction(3)], [Fraction(1), Fraction(2)]]
    assert generalized_minor(2, (), (), 1, g) == 2          # g_11
    assert generalized_minor(2, (1,), (), 1, g) == 1        # g_21
    assert generalized_minor(2, (), (1,), 1, g) == 3        # g_12


def test_theta_invariance_under_group_action():
    B = random_band(3, -2, 2, RNG)
    g = random_group_element(3, RNG)
    Bg = act_group(B, g)
    for s in (-1, 0, 1):
        for i in (1, 2):
            for k in (0, 1):
                assert theta(Bg, s, i, k) == theta(B, s, i, k)


def test_torus_action():
    B = random_band(3, -1, 1, RNG)
    t = [Fraction(2), Fraction(3), Fraction(1, 6)]
    Bt = act_torus(B, t)
    for s in (-1, 0, 1):
        assert mat_det(Bt.B(s)) == 1
    with pytest.raises(ValueError):
        act_torus(B, [2, 3, 1])  # determinant != 1


def test_pluecker_relation_on_band_rows():
    # three-term Pluecker exchange on consecutive rows of an SL(3) band
    for _ in range(5):
        B = random_band(3, -2, 3, RNG)

        def d(*rows):
            return band_minor(B, rows)

        assert d(1, 3, 4) * d(2, 4, 5) == \
            d(1, 4, 5) * d(2, 3, 4) + d(1, 2, 4) * d(3, 4, 5)


def test_eval_minor_label_gluing():
    c = make_coxeter(cartan_data("A2"), (1, 2))
    B = random_band(3, -2, 3, RNG)
    # Delta^{(s)}_{c^k w_i, v w_i} = Delta^{(s+k)}_{w_i, v w_i}
    assert eval_minor_label(B, MinorLabel(1, 0, 2, 1), c) == \
        eval_minor_label(B, MinorLabel(1, 2, 0, 1), c)


def test_theta_degenerate_indices():
    B = random_band(3, -1, 2, RNG)
    assert theta(B, 0, 1, 0) == 1
    assert theta(B, 0, 0, 2) == 1
    assert theta(B, 0, 3, 2) == 1
    assert psi(B, 0, 1, 1) != 0 or True  # defined, no exception


# ---------------------------------------------------------------------------
# verification batteries (quick scale; acceptance runs the full scale)


@pytest.mark.parametrize("battery", [
    verify_gluing, verify_theta_psi, verify_tsystem, verify_fz_minor,
    verify_black_mutation,
])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_batteries_quick(battery, n):
    report = battery(n=n, samples=3, seed=1)
    assert report["ok"], report["failures"][:3]
    assert report["instances"] > 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_laurent_quick(n):
    report = verify_laurent(n=n, samples=3, seed=1)
    assert report["ok"], report["failures"][:3]


def test_cubic_quick():
    report = verify_cubic(k_symbolic=(2,), k_numeric=(2, 3), samples=3, seed=1)
    assert report["ok"], report["failures"][:3]


def test_translation_quick():
    report = verify_translation(n=3, window=(-1, 1), samples=2, seed=1)
    assert report["ok"], report["failures"][:3]


def test_sequence_M_quick():
    report = verify_sequence_M(n=3, samples=2, seed=1)
    assert report["ok"], report["failures"][:3]


def test_verify_identity_dispatch():
    report = verify_identity("gluing", n=3, samples=2, seed=1)
    assert report["kind"] == "gluing" and report["ok"]
    with pytest.raises(ValueError):
        verify_identity("no-such-kind")


def test_demo_seed_all_values_nonzero():
    cur, B, c = demo_seed(3, (-1, 1), seed=0)
    assert all(lab.value != 0 for lab in cur.labels.values())
    assert all(lab.value == eval_minor_label(B, lab.minor, c)
               for lab in cur.labels.values())
