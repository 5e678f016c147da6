import random

from detline.exactq import QuotientSpace, Subspace
from detline.harness.gen import GenConfig, gen_square, gen_triple, random_element
from detline.io import (
    det_element_from_json, det_element_to_json, line_element_from_json, line_element_to_json,
    square_from_json, square_to_json, triple_from_json, triple_to_json,
)
from detline.multilinear import LineElement, LineSpace, line_compare

CFG = GenConfig(max_dim=4)


def test_triple_and_element_roundtrip():
    rng = random.Random(2)
    for _ in range(30):
        t = gen_triple(rng, CFG)
        assert triple_from_json(triple_to_json(t)) == t
        e = random_element(rng, t.D)
        back = det_element_from_json(det_element_to_json(e))
        assert line_compare(back, e) == 1


def test_square_roundtrip():
    sq = gen_square(random.Random(4), CFG)
    assert square_to_json(square_from_json(square_to_json(sq))) == square_to_json(sq)


def test_line_element_roundtrip():
    space = LineSpace.of(QuotientSpace(3, Subspace.span(3, [(1, 1, 0)])), dual=True)
    e = LineElement(space, [(0, 1, 0), (1, 0, 2)], "2/3")
    data = line_element_to_json(e)
    assert data["dual"] is True and data["scalar"] == "2/3"
    assert line_compare(line_element_from_json(data), e) == 1
