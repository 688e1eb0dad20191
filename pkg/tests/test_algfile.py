from pathlib import Path

import pytest

from taufin.algebra import (
    build_nakayama,
    build_truncated_polynomial,
    compute_algebra,
    linear_path_algebra,
    tensor_product,
    triangular_matrix,
)
from taufin.algfile import ParseError, load_algebra, parse_algebra, serialize_algebra
from taufin.field import Field

TEXT = """# KA3 modulo the long path
[quiver]
vertices = 1 2 3
arrows = a:1->2 b:2->3
[relations]
a.b
[options]
cap = 3
field = fp:101
"""


def test_parse_basic():
    p = parse_algebra(TEXT)
    assert p.quiver.vertices == ("1", "2", "3")
    assert p.field == Field(101)
    assert compute_algebra(p).dim == 5


def test_relation_syntax():
    text = TEXT.replace("a.b", "2*a.b - 1/2*a.b + -3/2*a.b")
    # 2 - 1/2 - 3/2 = 0: the relation cancels and the algebra is KA3
    assert compute_algebra(parse_algebra(text)).dim == 6


@pytest.mark.parametrize(
    "bad, line",
    [
        (TEXT.replace("arrows = a:1->2 b:2->3", "arrows = a:1->2 b:2->4"), 4),
        (TEXT.replace("a.b", "a.x"), 6),
        (TEXT.replace("a.b", "b.a"), 6),
        (TEXT.replace("cap = 3", "cap = three"), 8),
        (TEXT.replace("[options]", "[bogus]"), 7),
        (TEXT.replace("field = fp:101", "field = fp:100"), 9),
    ],
)
def test_parse_errors_report_lines(bad, line):
    with pytest.raises(ParseError) as exc:
        parse_algebra(bad)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_vertices():
    with pytest.raises(ParseError):
        parse_algebra("[relations]\n")


@pytest.mark.parametrize(
    "pres",
    [
        linear_path_algebra(3),
        build_nakayama(2, True, 3),
        triangular_matrix(build_truncated_polynomial(2), 2),
        tensor_product(tensor_product(linear_path_algebra(2), linear_path_algebra(2)), linear_path_algebra(2)),
        linear_path_algebra(2, Field(None)),
    ],
)
def test_round_trip(pres):
    text = serialize_algebra(pres)
    back = parse_algebra(text)
    assert back == pres
    assert back.tag == pres.tag
    assert serialize_algebra(back) == text


def test_corpus_round_trip(corpus_dir: Path):
    files = sorted(corpus_dir.glob("*.alg"))
    assert len(files) >= 20
    for f in files:
        p = load_algebra(f)
        q = parse_algebra(serialize_algebra(p))
        assert q == p and q.tag == p.tag
