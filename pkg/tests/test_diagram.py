import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkcalc.corpus import corpus_load
from linkcalc.diagram import (
    MultiplicityError,
    OrientationError,
    PDSyntaxError,
    PlanarityError,
    canonical_form,
    canonical_key,
    delete_component,
    faces,
    from_json,
    from_quads,
    linking_matrix,
    parse_pd,
    permute_components,
    relabel,
    to_json,
    to_pd,
    writhe,
)
from polylinks import (
    borromean_ellipses,
    diagram_from_polygons,
    ellipse,
    gauss_linking,
    pd_from_polygons,
    rotate,
)

TREFOIL = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"
LEFT_TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


def test_trefoil_parses_with_right_handed_writhe():
    d = parse_pd(TREFOIL)
    assert (d.n_components, d.n_crossings) == (1, 3)
    assert writhe(d) == 3
    assert writhe(parse_pd(LEFT_TREFOIL)) == -3


def test_parser_accepts_commas_and_whitespace_variants():
    a = parse_pd("X[1,5,2,4], X[3,1,4,6],\nX[5,3,6,2]")
    b = parse_pd("PD[X[1, 5, 2, 4], X[3, 1, 4, 6], X[5, 3, 6, 2]]")
    assert canonical_key(a) == canonical_key(b) == canonical_key(parse_pd(TREFOIL))


@pytest.mark.parametrize(
    "text, error",
    [
        ("X[1,2,3]", PDSyntaxError),
        ("Y[1,2,3,4]", PDSyntaxError),
        ("X[1,2,2,3]", MultiplicityError),
        ("X[1,1,1,1]", MultiplicityError),
        ("O[1] O[1]", MultiplicityError),
        ("X[1,3,2,4] X[1,4,2,3]", OrientationError),
    ],
)
def test_malformed_codes_are_rejected(text, error):
    with pytest.raises(error):
        parse_pd(text)


def test_nonplanar_code_is_rejected():
    # a torus-like gluing: V - E + F = 0
    with pytest.raises(PlanarityError):
        parse_pd("X[1,2,3,4] X[3,4,1,2]")


def test_hopf_linking_and_faces():
    d = corpus_load("hopf")
    assert linking_matrix(d).tolist() == [[0, -1], [-1, 0]]
    assert len(faces(d)) == 4
    assert len(faces(corpus_load("trefoil"))) == 5


def test_borromean_and_whitehead_have_zero_linking():
    for name, n, c in (("borromean", 3, 6), ("whitehead", 2, 5)):
        d = corpus_load(name)
        assert (d.n_components, d.n_crossings) == (n, c)
        assert not linking_matrix(d).any()


def test_linking_matrix_is_symmetric_with_zero_diagonal(corpus_entry):
    lk = linking_matrix(corpus_entry.load())
    assert (lk == lk.T).all()
    assert not np.diag(lk).any()


def test_deletion_takes_the_minor(corpus_entry):
    d = corpus_entry.load()
    lk = linking_matrix(d)
    for i in range(d.n_components):
        sub = delete_component(d, i)
        keep = [j for j in range(d.n_components) if j != i]
        assert sub.n_components == d.n_components - 1
        assert (linking_matrix(sub) == lk[np.ix_(keep, keep)]).all()


def test_deleting_from_hopf_leaves_a_loop():
    d = delete_component(corpus_load("hopf"), 0)
    assert d.n_crossings == 0 and d.n_components == 1
    with pytest.raises(IndexError):
        delete_component(corpus_load("hopf"), 2)


def test_borromean_deletion_is_a_two_component_unlink_diagram():
    d = delete_component(corpus_load("borromean"), 0)
    assert d.n_components == 2 and not linking_matrix(d).any()


def test_round_trips_preserve_the_key(corpus_entry):
    d = corpus_entry.load()
    key = canonical_key(d)
    assert canonical_key(parse_pd(to_pd(d))) == key
    assert canonical_key(from_json(to_json(d))) == key
    assert to_pd(parse_pd(to_pd(d))) == to_pd(d)
    c = canonical_form(d)
    assert canonical_key(c) == key
    assert canonical_form(c) == c


def test_relabeling_keeps_the_key():
    d = parse_pd(TREFOIL)
    shifted = relabel(d, {a: a % 6 + 1 for a in range(1, 7)})
    assert canonical_key(shifted) == canonical_key(d)
    assert canonical_key(parse_pd(LEFT_TREFOIL)) != canonical_key(d)


def test_component_permutation_permutes_linking():
    d = corpus_load("key-chain")
    perm = [2, 0, 1]
    e = permute_components(d, perm)
    lk = linking_matrix(d)
    assert (linking_matrix(e) == lk[np.ix_(perm, perm)]).all()
    with pytest.raises(ValueError):
        permute_components(d, [0, 0, 1])


def test_euler_characteristic_of_every_piece(corpus_entry):
    d = corpus_entry.load()
    crossing_faces = len(d.face_darts)
    pieces = len(d.pieces)
    # each connected piece satisfies V - E + F = 2
    assert d.n_crossings - 2 * d.n_crossings + crossing_faces == 2 * pieces


# --------------------------------------------------------------------------
# geometric oracle: polygons in space, projected


def _two_rings(offset):
    a = ellipse((0, 0, 0), (1, 0, 0), (0, 1, 0), 40)
    b = ellipse((1, 0, 0), (1, 0, 0), (0, 0, 1), 40) + np.asarray(offset)
    return [a, b]


@settings(max_examples=25, deadline=None)
@given(
    ax=st.floats(0.05, 3.0),
    ay=st.floats(0.05, 3.0),
    flip=st.booleans(),
)
def test_signs_and_linking_agree_with_geometry(ax, ay, flip):
    curves = rotate(borromean_ellipses(48) + _two_rings((0, 0, 3)), ax, ay)
    if flip:
        curves[3] = curves[3][::-1]
    try:
        quads, crossings, geo_signs, loops = pd_from_polygons(curves)
        assembled, inferred = diagram_from_polygons(curves)
    except ValueError:
        return  # a degenerate projection; nothing to compare
    assert [c.sign for c in crossings] == geo_signs
    lk = linking_matrix(assembled)
    for i, j in itertools.combinations(range(len(curves)), 2):
        assert lk[i, j] == round(gauss_linking(curves[i], curves[j]))
    # bare quadruples fix orientations up to reversing whole components,
    # which can only flip the signs of linking numbers
    assert inferred.n_components == assembled.n_components == len(curves)
    assert (np.abs(linking_matrix(inferred)) == np.abs(lk)).all()
