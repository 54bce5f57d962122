"""
Each verb is driven through its config class with an explicit argv and the
JSON result is read back from stdout.
"""
import orjson
import pytest

from logpic.cli.common import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION
from logpic.cli.complex_cli import (ComplexCanonicalConfig, ComplexRankConfig,
                                    ComplexRoundtripConfig)
from logpic.cli.curve_cli import (CurveRankConfig, CurveSESCheckConfig,
                                  CurveSweepConfig, CurveToComplexConfig,
                                  CurveTropicalizeConfig)
from logpic.cli.fixtures_cli import FixturesEmitConfig, FixturesListConfig
from logpic.cli.graph_cli import (GraphCanonicalConfig, GraphEquivConfig,
                                  GraphJacobianConfig, GraphRankConfig,
                                  GraphReduceConfig, GraphRRCheckConfig)


def run_verb(capsys, config_cls, argv):
    status = config_cls.main(argv=argv)
    out = capsys.readouterr().out
    return status, (orjson.loads(out) if out.strip() else None)


def test_graph_rank(capsys):
    status, result = run_verb(capsys, GraphRankConfig, ['C3', '--divisor', '{"v1": 1}'])
    assert status == EXIT_OK
    assert result == {'rank': 0}
    _, result = run_verb(capsys, GraphRankConfig, ['LOOP1', '--divisor', '{"v": 1}'])
    assert result == {'rank': 0}
    _, result = run_verb(capsys, GraphRankConfig, ['LOOP1', '--divisor', '{"v": 1}', '--naive_rank'])
    assert result == {'rank': 1}


def test_graph_reduce_and_equiv(capsys):
    status, result = run_verb(capsys, GraphReduceConfig, ['B2', '--divisor', '{"v1": 2, "v2": -1}'])
    assert status == EXIT_OK
    assert result['base'] == 'v1'
    assert result['reduced'] == {'v1': 0, 'v2': 1}
    assert set(result['firingScript']) == {'v1', 'v2'}

    _, result = run_verb(capsys, GraphEquivConfig, [
        'C3', '--divisor', '{"v1": 2}', '--other', '{"v2": 1, "v3": 1}'])
    assert result['equivalent'] is True
    assert result['firingScript'] is not None
    _, result = run_verb(capsys, GraphEquivConfig, [
        'C3', '--divisor', '{"v1": 1}', '--other', '{"v2": 1}'])
    assert result == {'equivalent': False, 'firingScript': None}


def test_graph_invariants(capsys):
    _, result = run_verb(capsys, GraphJacobianConfig, ['B3'])
    assert result == {'genus': 2, 'invariants': [3], 'order': 3}
    _, result = run_verb(capsys, GraphCanonicalConfig, ['B3'])
    assert result == {'canonical': {'v1': 1, 'v2': 1}, 'degree': 2}


def test_graph_rr_check_exit_codes(capsys):
    status, result = run_verb(capsys, GraphRRCheckConfig, ['C3', '--degree_window=-1..3'])
    assert status == EXIT_OK
    assert result['ok'] and result['checked'] == 5 * 3
    status, result = run_verb(capsys, GraphRRCheckConfig, ['LOOP1', '--naive_rank'])
    assert status == EXIT_VIOLATION
    assert result['minimal'] is not None


def test_complex_verbs(capsys):
    status, result = run_verb(capsys, ComplexRankConfig, [
        'CPX-ELL5', '--divisor', '{"v": {"p0": 1, "p1": 1}}'])
    assert status == EXIT_OK
    assert result == {'rank': 1}
    _, result = run_verb(capsys, ComplexCanonicalConfig, ['CPX-LOOP-RAT'])
    assert result['degree'] == 0
    assert result['divisor'] == {'v': {'x1': 1, 'x2': 1, 'y': -2}}
    status, result = run_verb(capsys, ComplexRoundtripConfig, ['CPX-B2-RAT'])
    assert status == EXIT_OK
    assert result['isomorphic'] is True


def test_curve_verbs(capsys):
    status, result = run_verb(capsys, CurveSESCheckConfig, ['X-B2', '--torus', '3'])
    assert status == EXIT_OK
    assert result == {'kernelOrder': 3, 'expected': 3}
    bundle = '{"classes": {"v1": {"degree": 2}, "v2": {"degree": -1}}}'
    _, result = run_verb(capsys, CurveTropicalizeConfig, ['X-B2', '--bundle', bundle])
    assert result == {'degree': 1, 'multidegree': {'v1': 2, 'v2': -1}, 'tau': {'v1': 0, 'v2': 1}}
    bundle = '{"classes": {"v": {"degree": 1}}}'
    _, direct = run_verb(capsys, CurveRankConfig, ['X-NODALCUBIC', '--torus', '3', '--direct', '--bundle', bundle])
    _, result = run_verb(capsys, CurveRankConfig, ['X-NODALCUBIC', '--bundle', bundle])
    assert direct == result == {'rank': 0}


def test_curve_complex_files_chain(capsys, tmp_path):
    fpath = tmp_path / 'nodal.json'
    status, result = run_verb(capsys, CurveToComplexConfig, ['X-NODALCUBIC', '--out', str(fpath)])
    assert status == EXIT_OK
    assert result is None
    status, result = run_verb(capsys, ComplexRankConfig, [str(fpath), '--divisor', '{"v": {"y": 1}}'])
    assert result == {'rank': 0}


@pytest.mark.parametrize('config_cls, argv, needle', [
    pytest.param(CurveRankConfig, ['X-P2-MARKED', '--bundle', '{}'], 'vertical', id='marked-curve'),
    pytest.param(GraphRankConfig, ['C3', '--divisor', '{"v1": '], 'malformed', id='bad-inline-json'),
    pytest.param(GraphRankConfig, ['C4', '--divisor', '{}'], 'unknown graph fixture', id='unknown-fixture'),
    pytest.param(GraphRankConfig, ['C3', '--divisor', '{"v9": 1}'], 'unknown vertex', id='unknown-vertex'),
    pytest.param(GraphRRCheckConfig, ['C3', '--degree_window', '4..1'], 'empty', id='empty-window'),
])
def test_rejected_inputs_exit_with_two(capsys, config_cls, argv, needle):
    status, result = run_verb(capsys, config_cls, argv)
    assert status == EXIT_INPUT
    assert needle in result['error']
    assert set(result) == {'error', 'location'}


def test_curve_sweep_writes_report(capsys, tmp_path):
    fpath = tmp_path / 'report.json'
    status, result = run_verb(capsys, CurveSweepConfig, [
        '--identity', 'ses', '--instances', '3', '--torus', '2', '--out', str(fpath)])
    assert status == EXIT_OK
    assert result is None
    report = orjson.loads(fpath.read_bytes())
    assert report['name'] == 'sweep'
    assert list(report['sweeps']) == ['ses']
    assert report['config']['torus_orders'] == [2]


def test_fixture_verbs(capsys, tmp_path):
    status, result = run_verb(capsys, FixturesEmitConfig, [str(tmp_path), '--keys', 'C3,X-B2'])
    assert status == EXIT_OK
    assert [p.rsplit('/', 1)[-1] for p in result['written']] == ['C3.json', 'X-B2.json']
    _, result = run_verb(capsys, FixturesListConfig, [])
    assert 'C3' in result['graph']
    assert 'CPX-ELL5' in result['complex']
    assert 'X-NODALCUBIC' in result['curve']


def test_modal_dispatch(capsys):
    from logpic.cli.main import LogpicCLI
    LogpicCLI.main(argv=['graph', 'jacobian', 'C3'])
    result = orjson.loads(capsys.readouterr().out)
    assert result['invariants'] == [3]


def test_log_file_sink(capsys, tmp_path):
    fpath = tmp_path / 'logs' / 'logpic.log'
    status, result = run_verb(capsys, GraphJacobianConfig, [
        'B3', '--log_level', 'DEBUG', '--log_fpath', str(fpath)])
    assert status == EXIT_OK
    assert result['order'] == 3
    from loguru import logger
    logger.remove()
    text = fpath.read_text()
    assert 'config = ' in text
    assert 'logging to' in text
