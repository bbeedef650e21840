import json

import pytest
import yaml

from tau_loop.command_line import main
from tau_loop.io_utils import read_report


def run(tmp_path, *argv, name='report.json'):
    out = tmp_path / name
    main(list(argv) + ['--no-log-file', '--format', 'json', '-o', str(out)])
    with open(str(out)) as in_h:
        return read_report(in_h)


def test_verma_dims(tmp_path):
    report = run(tmp_path, 'verma-dims', '--psi', 'lam=1,c=1', '--box', '1,1')
    assert report['identity'] == 'verma_dims'
    assert report['passed']
    assert report['dims'] == {'0,0': 1, '1,0': 1, '-1,1': 1, '0,1': 3}


def test_reports_are_byte_identical(tmp_path):
    run(tmp_path, 'irreducible-dims', '--psi', 'lam=1,c=1', '--box', '2,1', name='first.json')
    run(tmp_path, 'irreducible-dims', '--psi', 'lam=1,c=1', '--box', '2,1', name='second.json')
    assert (tmp_path / 'first.json').read_bytes() == (tmp_path / 'second.json').read_bytes()


def test_crt_of_two_points(tmp_path):
    report = run(tmp_path, 'crt', '--preset', 'points', '--points', '1,2')
    assert report['idempotents'] == ['2 - t', '-1 + t']
    assert report['point_maps'] == [['1', '1'], ['1', '2']]


def test_radical_of_jet(tmp_path):
    report = run(tmp_path, 'radical', '--preset', 'jet', '--N', '3')
    assert report['rank'] == 2
    assert report['basis'] == ['t', 't^2']


def test_apply_symbols(tmp_path):
    report = run(tmp_path, 'apply', '--psi', 'lam=2,c=1', '--symbol', 'X(t^0;1)', '--symbol', 'Y(t^0;1)')
    assert report['image'] == '2*v'


def test_apply_operator(tmp_path):
    report = run(tmp_path, 'apply', '--psi', 'lam=1,c=1', '--op', 'omega')
    assert report['image'] == '3/2*v'


def test_check_central_and_integrable(tmp_path):
    report = run(tmp_path, 'check-central', '--psi', 'lam=1,c=1', '--box', '2,2', name='central.json')
    assert report['passed']
    report = run(tmp_path, 'check-integrable', '--psi', 'lam=1,c=1', '--box', '2,1', name='integrable.json')
    assert report['dominant']
    assert [p['N'] for p in report['probes']] == [2, 1]


def test_job_file(tmp_path):
    out = tmp_path / 'crt.json'
    job = tmp_path / 'job.yaml'
    job.write_text(yaml.safe_dump({'command': 'crt', 'algebra': {'preset': 'points', 'points': ['1', '3']},
                                   'format': 'json', 'output': str(out)}))
    main(['run', '--job', str(job), '--no-log-file'])
    report = json.loads(out.read_text())
    assert report['point_maps'] == [['1', '1'], ['1', '3']]


@pytest.mark.parametrize('argv', [
    ['verma-dims', '--psi', 'lam=1,c=1', '--box', '1'],
    ['verma-dims', '--psi', 'lam=x'],
    ['verma-dims'],
    ['crt', '--preset', 'jet', '--N', '2'],
    ['apply', '--psi', 'lam=1', '--symbol', 'Q(t^0;1)'],
])
def test_input_errors_exit_with_two(tmp_path, argv):
    with pytest.raises(SystemExit) as ex:
        main(argv + ['--no-log-file', '-o', str(tmp_path / 'out.txt')])
    assert ex.value.code == 2


def test_violations_exit_with_one(tmp_path):
    algebra = tmp_path / 'algebra.yaml'
    algebra.write_text(yaml.safe_dump({'dim': 2, 'unit': [1, 0], 'mult': [[0, 0, [1, 0]], [0, 1, [0, 1]]]}))
    out = tmp_path / 'report.json'
    with pytest.raises(SystemExit) as ex:
        main(['validate-algebra', '--algebra', str(algebra), '--no-log-file', '--format', 'json', '-o', str(out)])
    assert ex.value.code == 1
    report = json.loads(out.read_text())
    assert not report['laws']['commutativity']


def test_text_output(tmp_path):
    out = tmp_path / 'report.txt'
    main(['verma-dims', '--psi', 'lam=1,c=1', '--box', '1,1', '--no-log-file', '-o', str(out)])
    text = out.read_text()
    assert 'verma_dims' in text
    assert 'q\\p' in text


def test_verma_dims_with_greek_psi_key(tmp_path):
    report = run(tmp_path, 'verma-dims', '--preset', 'scalar', '--psi', 'λ=1,c=1,d0=0', '--box', '4,4')
    assert report['passed']
    assert report['dims']['0,1'] == 3
    assert report['dims']['1,1'] == 4


@pytest.mark.parametrize('command', ['example31', 'evaluation-example'])
def test_two_point_evaluation_example(tmp_path, command):
    report = run(tmp_path, command, '--z', '1,2', '--lam', '2,3', '--c', '1,2')
    assert report['identity'] == 'evaluation_example'
    assert report['passed'], report['violations']
    assert report['parameters']['box'] == [3, 2]
    assert set(report['images']) == {'T_-1', 'T_-2'}
    assert all(image['singular'] for image in report['images'].values())


@pytest.mark.parametrize('params', [[1, 2], 'k=1'])
def test_malformed_job_params_exit_with_two(tmp_path, params):
    job = tmp_path / 'job.yaml'
    job.write_text(yaml.safe_dump({'command': 'crt', 'params': params}))
    with pytest.raises(SystemExit) as ex:
        main(['run', '--job', str(job), '--no-log-file', '-o', str(tmp_path / 'out.txt')])
    assert ex.value.code == 2
