#
#  test_verify.py
#
import json

import numpy as np
import pytest
from pydantic import ValidationError

from gaussriesz.hermite import HermiteExpansion, gaussian_rule
from gaussriesz.varlp.exponents import constant_exponent
from gaussriesz.verify import (ConfigError, ExperimentConfig, RatioReport, SuiteReport,
                               emit_report, load_config, run_suite, theorem_experiment)
from gaussriesz.verify.cli import main
from gaussriesz.verify.config import config_from_dict, exponent_string
from gaussriesz.verify.parallel import THREADS_ENV, parallel_map, thread_count
from gaussriesz.verify.report import RatioRow, SuiteRow, render_csv, render_json, stable_document
from gaussriesz.verify.theorem import (check_theorem_range, draw_test_functions,
                                       expansion_ratio)


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


# -- config ------------------------------------------------------------------

def test_default_config():
    config = load_config()
    assert (config.dim, config.beta, config.exponent) == (1, 2.0, 'constant')
    assert config.budget.nodes == 10 ** 6
    assert config.exponent_field().p_minus == 2.0


def test_overrides_and_file(tmp_path):
    path = write_json(tmp_path / 'exp.json', {
        'dim': 2, 'exponent': {'id': 'decay', 'p_inf': 2, 'c': 1},
        'tolerances': {'kernel': 1e-6}, 'theorem': {'families': ['hermite']}})
    config = load_config(path, beta=3.0, seed=None, budget=5000)
    assert config.dim == 2 and config.beta == 3.0 and config.seed == 0
    assert config.exponent == 'decay:c=1,p_inf=2'
    assert config.tolerances.kernel == 1e-6
    assert config.budget.nodes == 5000
    assert config.theorem.families == ['hermite']


def test_exponent_string():
    assert exponent_string('constant:q=3') == 'constant:q=3'
    assert exponent_string({'id': 'bump'}) == 'bump'

    with pytest.raises(ConfigError):
        exponent_string({'p_inf': 2})


@pytest.mark.parametrize('overrides', [
    {'dim': 4}, {'beta': 0.0}, {'samples': 0}, {'format': 'xml'}, {'suites': ['nope']},
    {'exponent': 'nope'}, {'exponent': 'decay:p_inf'}, {'budget': 0},
])
def test_invalid_config(overrides):
    with pytest.raises(ConfigError):
        load_config(**overrides)


@pytest.mark.parametrize('content', ['{not json', '[1, 2]', '{"colour": 1}',
                                     '{"budget": {"bytes": 1}}', '{"budget": 3}'])
def test_invalid_config_file(tmp_path, content):
    path = tmp_path / 'bad.json'
    path.write_text(content)

    with pytest.raises(ConfigError):
        load_config(str(path))


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / 'absent.json'))


# -- parallel ------------------------------------------------------------------

def test_parallel_map_keeps_order():
    assert parallel_map(lambda v: v * v, range(50), threads=4) == [v * v for v in range(50)]
    assert parallel_map(str, [], threads=4) == []


def test_thread_count(monkeypatch, caplog):
    monkeypatch.setenv(THREADS_ENV, '3')
    assert thread_count() == 3

    monkeypatch.setenv(THREADS_ENV, 'many')
    assert thread_count() >= 1
    assert THREADS_ENV in caplog.text


# -- reports -------------------------------------------------------------------

def ratio_report():
    rows = [RatioRow('hermite-0', 2.0, 1.0, 0.5), RatioRow('bump-0', 1.0, 0.75, 0.75),
            RatioRow('ball-0', float('nan'), float('nan'), float('nan'), True),
            RatioRow('hermite-1', 4.0, 2.5, 0.625)]
    return RatioReport.summarize(rows, {'dim': 1}, timestamp='now', runtime=1.5)


def test_ratio_summary():
    summary = ratio_report().summary
    assert summary['sup_ratio'] == 0.75
    assert summary['half_sup_ratio'] == 0.75
    assert summary['stability_factor'] == 1.0
    assert summary['stable'] and summary['failures'] == 1 and summary['functions'] == 4


def test_empty_report():
    report = RatioReport.summarize([])
    doc = json.loads(render_json(report))
    assert doc['rows'] == []
    assert doc['summary']['sup_ratio'] == 0.0
    assert report.passed


def test_json_round_trip(tmp_path):
    report = ratio_report()
    path = tmp_path / 'report.json'
    emit_report(report, 'json', str(path))
    doc = json.loads(path.read_text())
    back = RatioReport.from_document(doc)
    assert [r.function_id for r in back.rows] == [r.function_id for r in report.rows]
    assert back.rows[1] == report.rows[1]
    assert back.summary == report.summary

    with pytest.raises(ValueError):
        SuiteReport.from_document(doc)


def test_csv_rows(tmp_path):
    report = ratio_report()
    path = tmp_path / 'report.csv'
    emit_report(report, 'csv', str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == 'function_id,norm_f,norm_if,ratio,failed'
    data = [line for line in lines[1:] if not line.startswith('#')]
    assert len(data) == len(report.rows)
    assert '# sup_ratio: 0.75' in lines


def test_emit_unknown_format():
    with pytest.raises(ValueError):
        emit_report(ratio_report(), 'xml')


def test_stable_document():
    doc = json.loads(render_json(ratio_report()))
    stable = stable_document(doc)
    assert 'timestamp' not in stable['summary'] and 'runtime' not in stable['summary']
    assert 'timestamp' in doc['summary']


def test_suite_report_merge():
    first = SuiteReport.summarize([SuiteRow('a', 'x', True, 1.0)])
    second = SuiteReport.summarize([SuiteRow('b', 'y', False, 2.0)])
    merged = SuiteReport.merge([first, second], status=1)
    assert merged.summary == {'checks': 2, 'failures': 1, 'status': 1}
    assert first.passed and not merged.passed
    assert render_csv(merged).count('\n') == 1 + 2 + 3


# -- theorem -------------------------------------------------------------------

def test_expansion_ratio_examples():
    rule = gaussian_rule(24, 1)
    p = constant_exponent(2.0)
    assert expansion_ratio(HermiteExpansion.basis((0,)), 2.0, p, rule) == 0.0
    assert expansion_ratio(HermiteExpansion.basis((2,)), 2.0, p, rule) == pytest.approx(0.5)
    assert expansion_ratio(HermiteExpansion.basis((4,)), 1.0, p, rule) == pytest.approx(
        4 ** -0.5)


def test_test_function_ids():
    config = load_config(samples=7)
    functions = draw_test_functions(np.random.default_rng(0), config)
    assert [fn.function_id for fn in functions] == [
        'hermite-0', 'bump-0', 'ball-0', 'hermite-1', 'bump-1', 'ball-1', 'hermite-2']
    pts = np.zeros((3, 1))
    assert all(fn.func(pts).shape == (3,) for fn in functions)


@pytest.mark.parametrize('overrides', [{'exponent': 'oscillating'},
                                       {'exponent': 'log-decay'}, {'beta': 0.5},
                                       {'exponent': 'constant:q=1'}])
def test_theorem_range(overrides):
    with pytest.raises(ConfigError):
        check_theorem_range(load_config(**overrides))


def test_theorem_experiment_hermite_family():
    config = load_config(samples=12)
    config.theorem.families = ['hermite']
    report = theorem_experiment(config)
    assert len(report.rows) == 12
    assert report.summary['failures'] == 0
    # multipliers |nu|^(-beta/2) are at most 1
    assert report.summary['sup_ratio'] <= 1 + 1e-6
    assert report.summary['exponent'] == 'constant:q=2'

    again = theorem_experiment(config)
    assert stable_document(again.as_document()) == stable_document(report.as_document())


@pytest.mark.slow
def test_theorem_experiment_kernel_route():
    config = load_config(samples=6, exponent='decay:p_inf=2,c=1', beta=1.0)
    config.budget.operator_panels = 4
    report = theorem_experiment(config)
    assert report.summary['failures'] == 0
    assert np.isfinite(report.summary['sup_ratio'])


# -- suites and command line -------------------------------------------------------

def test_run_suite_hermite():
    status, reports = run_suite(load_config(suites=['hermite']))
    assert status == 0
    assert [r.summary['suite'] for r in reports] == ['hermite']
    assert {row.check for row in reports[0].rows} == {'orthogonality', 'reconstruction'}


def test_run_suite_rejects_theorem_outside_range():
    with pytest.raises(ConfigError):
        run_suite(load_config(suites=['theorem'], exponent='oscillating'))


def test_cli_suite(tmp_path):
    out = tmp_path / 'suite.json'
    assert main(['suite', 'hermite', 'varlp', '-o', str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc['kind'] == 'suite'
    assert doc['summary']['failures'] == 0
    assert {row['suite'] for row in doc['rows']} == {'hermite', 'varlp'}


@pytest.mark.parametrize('argv', [
    ['suite', '--dim', '4'],
    ['suite', 'nope'],
    ['theorem', '--exponent', 'nope'],
    ['theorem', '--exponent', 'oscillating'],
    ['kernel-probe', '--x', '1,2', '--y', '1'],
    [],
])
def test_cli_config_errors(argv, tmp_path):
    out = tmp_path / 'never.json'
    assert main(argv + (['-o', str(out)] if argv else [])) == 2
    assert not out.exists()


def test_cli_kernel_diagnostics(capsys):
    assert main(['kernel-probe', '--x', '1', '--y', '2', '--beta', '2']) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc['a'], doc['b'], doc['t0'], doc['u_t0']) == (5.0, 4.0, 0.75, 3.0)
    assert doc['region'] == 'b_pos_near'
    assert np.isfinite(doc['N'])
    assert doc['I'] > 0 and doc['K3'] == 2.0


def test_experiment_config_model():
    config = ExperimentConfig(dim=2, exponent={'id': 'decay', 'c': 1})
    assert config.exponent == 'decay:c=1'
    assert config.as_dict()['budget']['panels'] == 4000

    for bad in ({'dim': 4}, {'dim': 'two'}, {'beta': float('nan')},
                {'tolerances': {'kernel': -1.0}}, {'theorem': {'families': []}}):
        with pytest.raises(ValidationError):
            ExperimentConfig(**bad)

        with pytest.raises(ConfigError):
            config_from_dict(bad)


@pytest.mark.parametrize('content', [{'budget': {'panels': 'many'}},
                                     {'theorem': {'max_degree': 'six'}},
                                     {'theorem': {'families': ['sphere']}},
                                     {'tolerances': {'tail': 2}}])
def test_cli_rejects_config_types(tmp_path, capsys, content):
    path = write_json(tmp_path / 'bad.json', content)
    assert main(['suite', 'hermite', '-c', path]) == 2
    assert 'Configuration error' in capsys.readouterr().err


def test_cli_degenerate_kernel_pair(capsys):
    assert main(['kernel-probe', '--x', '0', '--y', '0']) == 2
    assert 'Invalid input' in capsys.readouterr().err


def test_report_independent_of_threads(monkeypatch):
    documents = []

    for threads in ('1', '4'):
        monkeypatch.setenv(THREADS_ENV, threads)
        config = load_config(samples=8, dim=2)
        config.theorem.families = ['hermite']
        documents.append(stable_document(theorem_experiment(config).as_document()))

    assert documents[0] == documents[1]


@pytest.mark.slow
def test_kernel_route_report_independent_of_threads(monkeypatch):
    documents = []

    for threads in ('1', '3'):
        monkeypatch.setenv(THREADS_ENV, threads)
        config = load_config(samples=4, exponent='decay:p_inf=2,c=1', beta=1.0)
        config.theorem.families = ['bump', 'ball']
        config.budget.operator_panels = 4
        documents.append(stable_document(theorem_experiment(config).as_document()))

    assert documents[0] == documents[1]
