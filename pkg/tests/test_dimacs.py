import io

import pytest

from ssspx.core.graph import Graph
from ssspx.formats.dimacs import format_weight, parse_dimacs, write_dimacs
from ssspx.models.schemas import Family, GenSpec, WeightKind, WeightModel
from ssspx.services.harness import generate
from ssspx.utils.errors import NegativeWeight, ParseError, VertexOutOfRange


def test_parses_comments_and_arcs():
    g = parse_dimacs([
        'c sample\n',
        '\n',
        'p sp 3 2\n',
        'a 1 2 7\n',
        'a 2 3 0.5\n',
    ])
    assert g == Graph(3, [0, 1], [1, 2], [7.0, 0.5])


def test_reads_from_path(write_gr):
    path = write_gr('p sp 1 0\n')
    assert parse_dimacs(path) == Graph(1, [], [], [])


@pytest.mark.parametrize('text, line_no', [
    ('a 1 2 3\np sp 2 1\n', 1),
    ('p sp 2 1\np sp 2 1\na 1 2 3\n', 2),
    ('p sp 2 1\na 1 x 3\n', 2),
    ('p sp 2 1\na 1 2 heavy\n', 2),
    ('p sp 2 1\na 1 2\n', 2),
    ('p sp 2 1\nx 1 2 3\n', 2),
    ('p max 2 1\n', 1),
    ('c p sp 3 3 \np sp 3 2\na 1 2 1\n', 2),
    ('c nothing here\n', 1),
])
def test_malformed_input(text, line_no):
    with pytest.raises(ParseError) as err:
        parse_dimacs(io.StringIO(text))
    assert err.value.line_no == line_no
    assert str(err.value).startswith(f'line {line_no}:')


def test_invalid_utf8_names_line(tmp_path):
    path = tmp_path / 'bad.gr'
    path.write_bytes(b'p sp 2 1\na 1 2 \xff\xfe\n')
    with pytest.raises(ParseError) as err:
        parse_dimacs(path)
    assert err.value.line_no == 2
    assert 'UTF-8' in str(err.value)


def test_validation_errors_propagate():
    with pytest.raises(NegativeWeight):
        parse_dimacs(['p sp 2 1', 'a 1 2 -4'])
    with pytest.raises(VertexOutOfRange):
        parse_dimacs(['p sp 2 1', 'a 1 3 4'])


def test_weight_format():
    assert format_weight(7.0) == '7'
    assert format_weight(0.0) == '0'
    assert format_weight(0.1) == '0.1'
    assert float(format_weight(1 / 3)) == 1 / 3


@pytest.mark.parametrize('kind', list(WeightKind))
@pytest.mark.parametrize('family', [Family.RANDOM_M, Family.GRID, Family.STAR_CYCLE])
def test_generated_graphs_round_trip(tmp_path, family, kind):
    g = generate(GenSpec(family=family, n=40, m=120, seed=5, weights=WeightModel(kind=kind)))
    path = tmp_path / 'g.gr'
    write_dimacs(g, path, comments=['round trip'])
    assert path.read_text().splitlines()[0] == 'c round trip'
    assert parse_dimacs(path) == g


def test_write_to_stream():
    buf = io.StringIO()
    write_dimacs(Graph(2, [0], [1], [7.0]), buf)
    assert buf.getvalue() == 'p sp 2 1\na 1 2 7\n'
