import json
import subprocess
import sys

import pytest

from semimark import cli

RUN = [sys.executable, "-m", "semimark.cli"]


def run_cli(args, stdin=None):
    proc = subprocess.run(
        RUN + args, capture_output=True, text=True, input=stdin, timeout=300
    )
    return proc


class TestBuild:
    def test_standard_sharp(self):
        proc = run_cli(["build", "standard", "1", "--sharp"])
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["marking"] == ["(0,1)"]

    def test_flat_default(self):
        proc = run_cli(["build", "spine", "2"])
        data = json.loads(proc.stdout)
        assert data["marking"] == []

    def test_horn_kind(self):
        proc = run_cli(["build", "horn", "2", "1"])
        data = json.loads(proc.stdout)
        assert [len(l) for l in data["levels"]] == [3, 2, 0]

    def test_dot_format(self):
        proc = run_cli(["--format", "dot", "build", "spine", "2"])
        assert "digraph" in proc.stdout

    def test_usage_error_exit_2(self):
        proc = run_cli(["build", "nonsense", "2"])
        assert proc.returncode == 2


class TestPipelines:
    def test_spread_roundtrip(self):
        made = run_cli(["decompose", "spread", "3", "1", "1"])
        assert made.returncode == 0
        verified = run_cli(["verify", "-"], stdin=made.stdout)
        assert verified.returncode == 0
        assert json.loads(verified.stdout)["ok"]

    def test_shuffle_roundtrip(self):
        made = run_cli(["decompose", "shuffle", "1", "2", "2"])
        verified = run_cli(["verify", "-"], stdin=made.stdout)
        assert verified.returncode == 0

    def test_bad_certificate_exit_1(self):
        made = run_cli(["decompose", "spread", "3", "1", "1"])
        data = json.loads(made.stdout)
        data["steps"] = data["steps"][:1]
        verified = run_cli(["verify", "-"], stdin=json.dumps(data))
        assert verified.returncode == 1
        assert not json.loads(verified.stdout)["ok"]

    def test_tensor_subcommand(self):
        proc = run_cli(["tensor", "1", "1", "--sharp-left"])
        data = json.loads(proc.stdout)
        assert [len(l) for l in data["levels"]] == [4, 5, 2]
        assert len(data["marking"]) == 2


class TestCat:
    def test_check_bad_table_exit_1(self, tmp_path):
        bad = {
            "objects": ["*"],
            "homs": {"*,*": ["a", "b"]},
            "comp": {"a,a": "b", "a,b": "b", "b,a": "a", "b,b": "a"},
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        proc = run_cli(["cat", "check", str(path)])
        assert proc.returncode == 1
        report = json.loads(proc.stdout)["report"]
        assert any("associativity" in line for line in report)

    def test_nerve_and_analyze(self, tmp_path):
        table = {
            "objects": ["0", "1"],
            "homs": {"0,0": ["i0"], "0,1": ["m"], "1,1": ["i1"]},
            "comp": {
                "i0,i0": "i0", "i1,i1": "i1", "m,i0": "m", "i1,m": "m",
            },
        }
        path = tmp_path / "poset.json"
        path.write_text(json.dumps(table))
        proc = run_cli(["cat", "nerve", str(path), "--depth", "2"])
        data = json.loads(proc.stdout)
        assert [len(l) for l in data["levels"]] == [2, 3, 4]
        proc = run_cli(["cat", "analyze", str(path)])
        info = json.loads(proc.stdout)
        assert info["quasi_unital"] is True

    def test_corpus_count(self):
        proc = run_cli(["cat", "corpus", "--max-obj", "1", "--max-hom", "2"])
        assert json.loads(proc.stdout.splitlines()[-1])["count"] == 11


class TestKanHomology:
    def test_kan_counit(self, tmp_path):
        table = {
            "objects": ["0", "1"],
            "homs": {"0,0": ["i0"], "0,1": ["m"], "1,1": ["i1"]},
            "comp": {"i0,i0": "i0", "i1,i1": "i1", "m,i0": "m", "i1,m": "m"},
        }
        path = tmp_path / "poset.json"
        path.write_text(json.dumps(table))
        proc = run_cli(["kan", "counit", "--cat", str(path), "--n", "1", "--mmax", "3"])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["ok"]
        proc = run_cli(["kan", "rk", "--cat", str(path), "--n", "1", "--mmax", "3"])
        out = json.loads(proc.stdout)
        assert out["stabilized"] and out["families"] == 3

    def test_homology_profile(self, tmp_path):
        build = run_cli(["build", "boundary", "2"])
        path = tmp_path / "circle.json"
        path.write_text(build.stdout)
        proc = run_cli(["homology", str(path)])
        profile = json.loads(proc.stdout)
        assert profile[0] == {"k": 0, "betti": 1, "torsion": []}
        assert profile[1] == {"k": 1, "betti": 1, "torsion": []}


class TestLift:
    def test_lift_check(self, tmp_path):
        from semimark import lifting as lf
        from semimark import marked as mk
        from semimark import nucat as nc
        from semimark import sset as ss

        w = nc.marked_nerve(nc.null_semigroup_two(), 1, "invertibles")
        p = lf.terminal_map(w)
        c0, _, _ = lf.q_generators()

        def dump(m):
            return {
                "source": mk.to_json(m.source),
                "target": mk.to_json(m.target),
                "mapping": {
                    ss.idkey(k): ss.idkey(v) for k, v in sorted(
                        m.mapping.items(), key=lambda kv: ss.idkey(kv[0])
                    )
                },
            }

        left = tmp_path / "g.json"
        right = tmp_path / "p.json"
        left.write_text(json.dumps(dump(c0)))
        right.write_text(json.dumps(dump(p)))
        proc = run_cli(["lift", "check", "--left", str(left), "--right", str(right)])
        assert proc.returncode == 1
        out = json.loads(proc.stdout)
        assert not out["ok"]
        assert "counterexample" in out


class TestSuiteDeterminism:
    def test_quick_suite_passes(self):
        proc = run_cli(["suite", "--seed", "3"])
        assert proc.returncode == 0
        for line in proc.stdout.splitlines():
            assert json.loads(line)["ok"]

    def test_byte_identical_reruns(self):
        a = run_cli(["suite", "--seed", "3"])
        b = run_cli(["suite", "--seed", "3"])
        assert a.stdout == b.stdout
        assert a.returncode == b.returncode == 0
