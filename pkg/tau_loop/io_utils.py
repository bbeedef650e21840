"""
tau-loop - exact representation theory of loop Affine-Virasoro algebras.
Copyright (C) 2026 the tau-loop developers

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published
by the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful, but
WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""
from fractions import Fraction

import json
import numbers

import yaml

from .exceptions import InputError

REPORT_SCHEMA = 'tau-loop-report/1'
REPORT_KEYS = ('schema', 'identity', 'parameters', 'checked', 'violations', 'passed')


def format_scalar(value):
    """
    Rationals are written as "p/q", or "p" when integral.
    """
    return str(Fraction(value))


def parse_scalar(value, where, source=None):
    """
    Parse an exact rational from a spec file or command line value.

    :param value: int or string "p/q"
    :param where: field path used in diagnostics
    :param source: file name, when read from one
    :return: Fraction
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(where, 'expected an exact rational such as "3/2", found {!r}'.format(value), source)
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
        raise InputError(where, 'cannot read [{}] as a rational'.format(value), source)
    raise InputError(where, 'expected a rational, found {}'.format(type(value).__name__), source)


def parse_scalar_list(text, where, source=None):
    """
    :param text: comma separated rationals, or an already split list
    """
    if isinstance(text, str):
        items = [t for t in text.split(',') if t.strip()]
    elif isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [text]
    return [parse_scalar(x, '{}[{}]'.format(where, i), source) for i, x in enumerate(items)]


def to_serializable(data):
    """
    Convert report payloads to plain JSON/YAML types: rationals become strings, tuples
    become lists and mapping keys become strings.
    """
    if isinstance(data, bool) or data is None or isinstance(data, str):
        return data
    if isinstance(data, Fraction):
        return format_scalar(data)
    if isinstance(data, numbers.Integral):
        return int(data)
    if isinstance(data, dict):
        return {str(k): to_serializable(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [to_serializable(v) for v in data]
    raise TypeError('cannot serialize {}'.format(type(data).__name__))


def make_report(identity, parameters, checked, violations, **payload):
    """
    The common report mapping shared by every command.
    """
    report = {'schema': REPORT_SCHEMA,
              'identity': identity,
              'parameters': parameters,
              'checked': checked,
              'violations': violations,
              'passed': not violations}
    report.update(payload)
    return report


def write_to_stream(stream, data, fmt='plain'):
    """
    Write an object out to a stream, possibly using a serialization format
    different to default string representation. Keys are sorted so the bytes are
    determined by the content.

    :param stream: open stream to write
    :param data: object instance
    :param fmt: plain, json or yaml
    """
    if fmt == 'yaml':
        yaml.safe_dump(to_serializable(data), stream, default_flow_style=False, sort_keys=True)
    elif fmt == 'json':
        json.dump(to_serializable(data), stream, indent=1, sort_keys=True)
        stream.write('\n')
    elif fmt == 'plain':
        stream.write('{0}\n'.format(data))
    else:
        raise ValueError('unknown format [{}]'.format(fmt))


def read_from_stream(stream, fmt='yaml'):
    """
    Load an object instance from a serialized format. YAML is a superset of JSON so
    either kind of spec file can be read with the default.

    :param stream: open stream to read
    :param fmt: yaml or json
    :return: loaded object
    """
    if fmt == 'yaml':
        return yaml.safe_load(stream)
    elif fmt == 'json':
        return json.load(stream)
    raise ValueError('unknown format [{}]'.format(fmt))


def load_spec_file(path, field):
    """
    Read a JSON or YAML spec file into a mapping.

    :param path: file name
    :param field: name of the option that supplied the file, for diagnostics
    """
    try:
        with open(path, 'r') as in_h:
            data = read_from_stream(in_h, 'yaml')
    except IOError as ex:
        raise InputError(field, 'cannot read file: {}'.format(ex.strerror), path)
    except yaml.YAMLError as ex:
        raise InputError(field, 'malformed spec file: {}'.format(ex), path)
    if not isinstance(data, dict):
        raise InputError(field, 'expected a mapping at the top level', path)
    return data


def read_report(stream):
    """
    Parse a JSON report and check it carries the current schema stamp and keys.
    """
    try:
        report = read_from_stream(stream, 'json')
    except ValueError as ex:
        raise InputError('report', 'not valid JSON: {}'.format(ex))
    if not isinstance(report, dict):
        raise InputError('report', 'expected a mapping')
    if report.get('schema') != REPORT_SCHEMA:
        raise InputError('report.schema', 'expected [{}], found [{}]'.format(REPORT_SCHEMA, report.get('schema')))
    missing = [k for k in REPORT_KEYS if k not in report]
    if missing:
        raise InputError('report', 'missing keys {}'.format(missing))
    return report
