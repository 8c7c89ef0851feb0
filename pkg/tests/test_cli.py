import csv
import json

import pytest

import ssspx.cli as cli
from ssspx.cli import main
from ssspx.formats.dimacs import parse_dimacs


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSolve:
    def test_single_vertex(self, capsys, write_gr):
        code, out, _ = run(capsys, 'solve', write_gr('p sp 1 0\n'), '--source', '1')
        assert code == 0
        assert out.splitlines() == ['1 0']

    def test_two_vertices(self, capsys, write_gr):
        code, out, _ = run(capsys, 'solve', write_gr('p sp 2 1\na 1 2 7\n'), '--source', '1')
        assert code == 0
        assert out.splitlines() == ['1 0', '2 7']

    def test_unreachable_prints_inf(self, capsys, write_gr):
        _, out, _ = run(capsys, 'solve', write_gr('p sp 3 1\na 2 3 1.5\n'), '--source', '2')
        assert out.splitlines() == ['1 inf', '2 0', '3 1.5']

    def test_json_document(self, capsys, write_gr):
        path = write_gr('p sp 3 1\na 1 2 7\n')
        code, out, _ = run(capsys, 'solve', path, '--json', '--no-fallback', '--force-t', '2', '--debug-checks')
        assert code == 0
        doc = json.loads(out)
        assert doc['source'] == 1
        assert doc['distances'] == [0.0, 7.0, None]
        assert doc['params']['mode'] == 'bmssp'
        assert doc['invariants']['ok'] is True
        assert doc['stats']['relaxations'] >= 1

    def test_env_enables_checks(self, capsys, write_gr, monkeypatch):
        monkeypatch.setenv('SSSPX_DEBUG_CHECKS', '1')
        _, out, _ = run(capsys, 'solve', write_gr('p sp 2 1\na 1 2 7\n'), '--json', '--no-fallback')
        assert json.loads(out)['invariants'] is not None

    def test_generated_input(self, capsys):
        code, out, _ = run(capsys, 'solve', '--gen', 'path', '--n', '4', '--weights', 'uniform-integer',
                           '--low', '1', '--high', '1')
        assert code == 0
        assert out.splitlines() == ['1 0', '2 1', '3 2', '4 3']

    def test_both_inputs_rejected(self, capsys, write_gr):
        code, _, err = run(capsys, 'solve', write_gr('p sp 1 0\n'), '--gen', 'path', '--n', '3')
        assert code == 2
        assert 'exactly one' in err

    def test_parse_error_names_line(self, capsys, write_gr):
        code, _, err = run(capsys, 'solve', write_gr('p sp 2 1\na 1 x 3\n'))
        assert code == 2
        assert 'line 2' in err

    def test_invalid_utf8_is_a_parse_error(self, capsys, tmp_path):
        path = tmp_path / 'bad.gr'
        path.write_bytes(b'p sp 2 1\na 1 2 \xff\xfe\n')
        code, _, err = run(capsys, 'solve', str(path))
        assert code == 2
        assert 'line 2' in err

    def test_bad_source(self, capsys, write_gr):
        code, _, err = run(capsys, 'solve', write_gr('p sp 2 1\na 1 2 7\n'), '--source', '3')
        assert code == 2
        assert 'source' in err

    def test_negative_weight(self, capsys, write_gr):
        code, _, err = run(capsys, 'solve', write_gr('p sp 2 1\na 1 2 -7\n'))
        assert code == 2
        assert 'negative' in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, 'solve', str(tmp_path / 'absent.gr'))
        assert code == 2


class TestVerify:
    def test_match(self, capsys, write_gr):
        code, out, _ = run(capsys, 'verify', write_gr('p sp 3 3\na 1 2 1\na 2 3 1\na 1 3 5\n'), '--no-fallback')
        assert code == 0
        assert out.startswith('ok')

    def test_corrupted_solver_is_caught(self, capsys, write_gr, monkeypatch):
        real = cli.solve

        def broken(g, source, config=None):
            res = real(g, source, config)
            res.distances[-1] = 999.0
            return res

        monkeypatch.setattr(cli, 'solve', broken)
        code, out, _ = run(capsys, 'verify', write_gr('p sp 3 2\na 1 2 1\na 2 3 1\n'))
        assert code == 1
        assert 'mismatch 3: solver 999 oracle 2' in out

    @pytest.mark.parametrize('seed', range(100))
    def test_random_seeds(self, capsys, seed):
        code, _, _ = run(capsys, 'verify', '--gen', 'random-m', '--n', '80', '--m', '240', '--seed', str(seed),
                         '--weights', 'zero-heavy', '--no-fallback', '--force-t', '2', '--debug-checks')
        assert code == 0


class TestGenAndBench:
    def test_gen_path(self, capsys, tmp_path):
        out_path = tmp_path / 'p.gr'
        code, _, _ = run(capsys, 'gen', '--family', 'path', '--n', '5', '-o', str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert 'p sp 5 4' in lines
        assert lines[0].startswith('c ssspx gen')

    def test_gen_solve_verify_pipeline(self, capsys, tmp_path):
        out_path = str(tmp_path / 'g.gr')
        assert run(capsys, 'gen', '--family', 'layered', '--n', '64', '--m', '200', '--seed', '3',
                   '--weights', 'uniform-real', '-o', out_path)[0] == 0
        g = parse_dimacs(out_path)
        assert g.m == 200
        code, out, _ = run(capsys, 'solve', out_path)
        assert code == 0
        assert len(out.splitlines()) == 64
        assert run(capsys, 'verify', out_path, '--no-fallback', '--force-t', '3')[0] == 0

    def test_gen_infeasible(self, capsys, tmp_path):
        code, _, err = run(capsys, 'gen', '--family', 'random-m', '--n', '3', '--m', '7',
                           '-o', str(tmp_path / 'x.gr'))
        assert code == 2
        assert 'random-m' in err

    def test_bench_matrix(self, capsys, tmp_path):
        out_csv = tmp_path / 'bench.csv'
        out_json = tmp_path / 'bench.json'
        code, out, _ = run(capsys, 'bench', '--family', 'path', 'random-m', '--n', '20', '30', '40',
                           '--m-per-n', '2', '--no-fallback', '--force-t', '2',
                           '-o', str(out_csv), '--json-output', str(out_json), '--trend')
        assert code == 0
        with open(out_csv, newline='') as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 6
        assert all(r['oracle_match'] == 'True' for r in rows)
        assert len(json.loads(out_json.read_text())) == 6
        assert '"growth"' in out
