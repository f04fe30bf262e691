import json

from main import main


def test_booster_command(capsys):
    assert main(['--format', 'json', 'booster']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['prime'] == 5
    assert data['on'] == 25
    assert data['off'] == 24


def test_indivisible_host_exits_one(capsys):
    assert main(['check-div', '--complete', '6']) == 1
    assert 'divisible: false' in capsys.readouterr().out


def test_divisible_host_exits_zero(capsys):
    assert main(['check-div', '--complete', '7']) == 0


def test_missing_host_is_a_usage_error():
    assert main(['check-div']) == 2


def test_missing_graph_file_is_a_usage_error(tmp_path):
    assert main(['cliques', '--graph', str(tmp_path / 'absent.txt')]) == 2


def test_exact_decomposition_of_cycle_fails(capsys):
    assert main(['decompose-exact', '--cycle', '6']) == 1
    assert 'found: false' in capsys.readouterr().out


def test_spencer_command(capsys):
    assert main(['--format', 'json', 'spencer', '--n', '40']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['size'] >= 3
    assert data['derandomized'] is True


def test_pipeline_text_report(capsys):
    assert main(['pipeline', '--complete', '7', '--fallback']) == 0
    last = capsys.readouterr().out.strip().splitlines()[-1]
    assert last in ('decomposition verified: true', 'fallback verified: true')


def test_boost_reports_exact_boundary(capsys):
    assert main(['--format', 'json', 'boost', '--complete', '7', '--s', '5']) == 0
    data = json.loads(capsys.readouterr().out)
    assert data['boundary_exact'] is True
    assert data['low_weight']['min_count'] == data['low_weight']['max_count']
