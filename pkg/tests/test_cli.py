import json

import pytest
from openpyxl import load_workbook

from main import main


def _json_lines(out: str):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_match_single_edge(graph_file, capsys):
    path = graph_file("p edge 2 1\ne 1 2\n")
    assert main(['match', path]) == 0
    assert capsys.readouterr().out == "1\n0 1\n"


def test_match_four_cycle_as_edge_list(graph_file, capsys):
    path = graph_file("4 4\n0 1\n1 2\n2 3\n3 0\n")
    assert main(['match', path, '--format', 'edge-list']) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "2"
    assert len(out) == 3


def test_match_json_reports_phases(capsys):
    assert main(['match', '--fixture', 'path', '--output', 'json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['size'] == 2
    assert (payload['n'], payload['m']) == (4, 3)
    assert [phase['paths'] for phase in payload['phases']] == [1, 0]


@pytest.mark.parametrize('text', ["", "p edge 2 1\ne 1 1\n", "p edge 2 2\ne 1 2\n"])
def test_bad_input_exits_with_usage_code(graph_file, capsys, text):
    assert main(['match', graph_file(text)]) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_missing_file_exits_with_usage_code(tmp_path, capsys):
    assert main(['match', str(tmp_path / 'absent.txt')]) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_fixture(capsys):
    assert main(['match', '--fixture', 'k7']) == 2
    assert "k7" in capsys.readouterr().err


def test_analyze_five_cycle_dump(capsys):
    assert main(['analyze', '--fixture', 'five-cycle']) == 0
    assert capsys.readouterr().out.splitlines() == [
        "0 0 inf inf",
        "1 inf 1 inf",
        "2 2 inf inf",
        "3 6 3 9",
        "4 4 5 9",
        "5 4 5 9",
        "6 6 3 9",
        "petal 0 bud 2 bridge 4 5 members 3 4 5 6",
        "bucket 9 4-5",
        "shortest inf",
    ]


def test_analyze_triangle_json(capsys):
    assert main(['analyze', '--fixture', 'triangle', '--output', 'json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['petals'] == ["petal 0 bud 0 bridge 1 2 members 1 2"]
    assert payload['stats']['paths'] == 0


def test_analyze_perfect_matching_reaches_nothing(graph_file, capsys):
    g = graph_file("4 4\n0 1\n1 2\n2 3\n3 0\n")
    m = graph_file("2\n0 1\n2 3\n", name='matching.txt')
    assert main(['analyze', g, '--format', 'edge-list', '--matching', m]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "0 inf inf inf",
        "1 inf inf inf",
        "2 inf inf inf",
        "3 inf inf inf",
        "shortest inf",
    ]


def test_analyze_rejects_a_matching_using_non_edges(graph_file, capsys):
    g = graph_file("4 2\n0 1\n2 3\n")
    m = graph_file("1\n1 2\n", name='matching.txt')
    assert main(['analyze', g, '--format', 'edge-list', '--matching', m]) == 2


def test_verify_small_run(capsys):
    assert main(['verify', '--count', '15', '--max-n', '8', '--seed', '11']) == 0
    assert capsys.readouterr().out.startswith("verified ")


@pytest.mark.slow
def test_verify_default_run(capsys):
    assert main(['verify', '--seed', '1']) == 0
    assert "max-n 10" in capsys.readouterr().out


def test_verify_refuses_graphs_beyond_the_oracle(capsys):
    assert main(['verify', '--count', '1', '--max-n', '20']) == 2
    assert "oracle limit" in capsys.readouterr().err


def test_injected_fault_is_reported(capsys):
    assert main(['verify', '--count', '40', '--max-n', '8', '--seed', '4', '--inject-fault']) == 1
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("mismatch at trial")
    assert "--only" in out[0]
    assert out[1].startswith("size: ")
    assert "graph" in out and "matching" in out


def test_verify_only_reruns_one_trial(capsys):
    assert main(['verify', '--count', '50', '--max-n', '8', '--seed', '4', '--only', '7', '--output', 'json']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['verified'] + payload['skipped'] == 1


def test_bench_lines_are_deterministic(capsys):
    argv = ['bench', '--n', '40', '--m', '80', '--trials', '2', '--seed', '3']
    assert main(argv) == 0
    first = _json_lines(capsys.readouterr().out)
    assert main(argv) == 0
    second = _json_lines(capsys.readouterr().out)
    assert [r['index'] for r in first] == [0, 1]
    assert all(r['n'] == 40 and r['m'] == 80 for r in first)
    assert [(r['size'], r['phases'], r['seed']) for r in first] == [(r['size'], r['phases'], r['seed']) for r in second]
    assert all(sum(r['phase_edge_scans']) == r['edge_scans'] for r in first)


def test_bench_writes_workbook(tmp_path, capsys):
    target = tmp_path / 'bench.xlsx'
    assert main(['bench', '--n', '20', '--m', '30', '--trials', '3', '--xlsx', str(target)]) == 0
    records = _json_lines(capsys.readouterr().out)
    ws = load_workbook(target).active
    rows = list(ws.iter_rows(values_only=True))
    assert ws.title == "Trials"
    assert rows[0][0] == "Trial"
    assert len(rows) == 4
    assert [row[4] for row in rows[1:]] == [r['size'] for r in records]


def test_bench_rejects_negative_sizes(capsys):
    assert main(['bench', '--n', '-1']) == 2


def test_history_lists_recorded_runs(tmp_path, capsys):
    db = str(tmp_path / 'runs.db')
    assert main(['verify', '--count', '5', '--max-n', '6', '--record', '--db', db]) == 0
    assert main(['bench', '--n', '10', '--m', '15', '--trials', '2', '--record', '--db', db]) == 0
    capsys.readouterr()

    assert main(['history', '--db', db]) == 0
    runs = _json_lines(capsys.readouterr().out)
    assert [run['command'] for run in runs] == ['bench', 'verify']
    assert runs[0]['params']['trials'] == 2
    assert all(run['status'] == 'ok' for run in runs)

    assert main(['history', '--db', db, '--run', str(runs[0]['id'])]) == 0
    trials = _json_lines(capsys.readouterr().out)
    assert [t['trial_index'] for t in trials] == [0, 1]
