from fractions import Fraction

import io
import json

import pytest

from tau_loop.exceptions import InputError
from tau_loop.io_utils import (REPORT_SCHEMA, format_scalar, load_spec_file, make_report, parse_scalar,
                               parse_scalar_list, read_report, to_serializable, write_to_stream)


def test_scalars_are_written_exactly():
    assert format_scalar(Fraction(3, 2)) == '3/2'
    assert format_scalar(4) == '4'
    assert parse_scalar('-7/4', 'x') == Fraction(-7, 4)
    assert parse_scalar(3, 'x') == 3
    assert parse_scalar_list('1, 2/3', 'z') == [1, Fraction(2, 3)]


@pytest.mark.parametrize('value', [0.5, True, 'one', None])
def test_parse_scalar_rejects(value):
    with pytest.raises(InputError) as ex:
        parse_scalar(value, 'psi.h[0]', 'psi.yaml')
    assert ex.value.field == 'psi.h[0]'


def test_to_serializable():
    data = {(1, 2): [Fraction(1, 3), (2, 3)], 'ok': True}
    assert to_serializable(data) == {'(1, 2)': ['1/3', [2, 3]], 'ok': True}
    with pytest.raises(TypeError):
        to_serializable({'bad': 0.25})


def test_report_json_is_deterministic():
    first = make_report('demo', {'b': 1, 'a': Fraction(1, 2)}, 3, [])
    second = make_report('demo', {'a': Fraction(1, 2), 'b': 1}, 3, [])
    out1, out2 = io.StringIO(), io.StringIO()
    write_to_stream(out1, first, 'json')
    write_to_stream(out2, second, 'json')
    assert out1.getvalue() == out2.getvalue()
    assert first['passed']
    assert not make_report('demo', {}, 1, [{'x': 1}])['passed']


def test_read_report_checks_schema():
    out = io.StringIO()
    write_to_stream(out, make_report('demo', {}, 0, []), 'json')
    report = read_report(io.StringIO(out.getvalue()))
    assert report['schema'] == REPORT_SCHEMA

    with pytest.raises(InputError):
        read_report(io.StringIO(json.dumps({'schema': 'other/1'})))
    with pytest.raises(InputError):
        read_report(io.StringIO(json.dumps({'schema': REPORT_SCHEMA, 'identity': 'x'})))


def test_load_spec_file(tmp_path):
    path = tmp_path / 'job.yaml'
    path.write_text('command: verma-dims\nbox: "2,2"\n')
    assert load_spec_file(str(path), '--job') == {'command': 'verma-dims', 'box': '2,2'}

    path.write_text('- 1\n- 2\n')
    with pytest.raises(InputError):
        load_spec_file(str(path), '--job')
    with pytest.raises(InputError):
        load_spec_file(str(tmp_path / 'missing.yaml'), '--job')
