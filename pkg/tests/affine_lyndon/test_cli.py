import json

import pytest
import yaml

from affine_lyndon.cli import default_cache_path, main, sweep_configs, table_frames
from affine_lyndon.models import VerdictReport, Witness
from affine_lyndon.utils import load_config


@pytest.fixture
def run(defaults_file, capsys):
    """
    Run the CLI against the repository defaults and return (exit code, stdout).
    """

    def _run(*args):
        code = main([*args, f"--config={defaults_file}"])
        return code, capsys.readouterr().out

    return _run


class TestGen:
    """
    Test suite for the gen command.
    """

    def test_gen_writes_cache(self, run, tmp_path):
        """
        Test that gen writes the JSON cache and reports it.
        """
        cache = tmp_path / "g2.json"
        code, out = run("gen", "--max_delta=2", f"--cache={cache}")
        assert code == 0
        assert cache.exists()
        assert out.startswith(f"G2:0,1,2 -> {cache}")
        assert json.loads(cache.read_text())["watermark_k"] == 2

    def test_gen_json(self, run, tmp_path):
        """
        Test the strata counts in JSON output.
        """
        cache = tmp_path / "g2.json"
        code, out = run("gen", "--max_delta=2", "--format=json", f"--cache={cache}")
        assert code == 0
        strata = json.loads(out)["strata"]
        assert strata[0] == {"k": 1, "real": 12, "imaginary": 2}
        assert len(strata) == 2

    def test_cache_is_reused(self, run, tmp_path):
        """
        Test that a second run extends the cached table.
        """
        cache = tmp_path / "a2.json"
        assert run("gen", "--type=A", "--max_delta=1", f"--cache={cache}")[0] == 0
        assert run("gen", "--type=A", "--max_delta=2", f"--cache={cache}")[0] == 0
        assert json.loads(cache.read_text())["watermark_k"] == 2

    def test_cache_for_other_system(self, run, tmp_path):
        """
        Test that a cache of another order is refused.
        """
        cache = tmp_path / "g2.json"
        run("gen", "--max_delta=1", f"--cache={cache}")
        code, _ = run("chain", "0,1,0", "--order=1,2,0", f"--cache={cache}")
        assert code == 2

    def test_cache_for_other_recursion(self, run, tmp_path):
        """
        Test that a cache built with the standard recursion is refused for costandard.
        """
        cache = tmp_path / "g2.json"
        run("gen", "--max_delta=1", "--factorization=standard", f"--cache={cache}")
        code, _ = run("chain", "0,1,0", "--max_delta=1", f"--cache={cache}")
        assert code == 2

    def test_default_cache_path(self, defaults_file):
        """
        Test the cache file name derived from the system and recursion.
        """
        cfg = load_config(defaults_file, **{"system.order": "1,2,0"})
        assert default_cache_path(cfg).endswith("G2_1-2-0_costandard.json")


class TestQueries:
    """
    Test suite for the table, wset, block and chain commands.
    """

    def test_chain(self, run):
        """
        Test the printed chain of alpha_1 with 1 < 2 < 0.
        """
        code, out = run("chain", "0,1,0", "--order=1,2,0", "--max_delta=2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "[0,1,0] monotonicity +1"
        assert lines[1] == "0: 1"
        assert lines[2] == "1: 1212210"

    def test_chain_json(self, run):
        """
        Test the chain in JSON output.
        """
        code, out = run("chain", "0,1,0", "--max_delta=2", "--format=json")
        assert code == 0
        assert json.loads(out) == {
            "root": [0, 1, 0],
            "monotonicity": -1,
            "words": ["1", "0122211"],
        }

    def test_block_imaginary(self, run):
        """
        Test the block format of SL_1(delta), which is a single run.
        """
        code, out = run("block", "1,2,3", "--slot=1", "--max_delta=1")
        assert code == 0
        assert out.splitlines() == ["012221", "[im,1,1]"]

    def test_block_beyond_bound(self, run):
        """
        Test that roots above the computed table are a usage error.
        """
        code, _ = run("block", "3,6,9", "--max_delta=1")
        assert code == 2

    def test_wset(self, run):
        """
        Test W_delta of F4 with 3 < 4 < 0 < 2 < 1.
        """
        code, out = run(
            "wset", "--type=F", "--rank=4", "--order=3,4,0,2,1", "--max_delta=1"
        )
        assert code == 0
        assert out.startswith("(3432104321, 32)*, (3432104, 32321)*")

    def test_wset_level_too_high(self, run):
        """
        Test that W-sets above the computed bound are a usage error.
        """
        code, _ = run("wset", "--k=3", "--max_delta=1")
        assert code == 2

    def test_table_markdown(self, run):
        """
        Test the markdown rendering of the family tables.
        """
        code, out = run("table", "--max_delta=1", "--format=markdown")
        assert code == 0
        assert "### [0,1,0]" in out
        assert "### (kd,2)" in out
        assert "| compact" in out

    def test_table_frames(self, g2_table):
        """
        Test one frame per classical family and per slot index.
        """
        frames = table_frames(g2_table)
        assert len(frames) == 12 + 2
        slot = frames["(kd,1)"]
        assert slot["k"].tolist() == list(range(1, g2_table.watermark_k + 1))
        assert slot["blocks"].iloc[0] == "[im,1,1]"


class TestVerify:
    """
    Test suite for the verify and sweep commands and their exit codes.
    """

    def test_verify_passes(self, run):
        """
        Test that the default checks pass on G2.
        """
        code, out = run("verify", "--max_delta=2")
        assert code == 0
        assert out.count(": PASS") == 6

    def test_verify_all_orders(self, run):
        """
        Test that --all_orders runs one report per order.
        """
        code, out = run(
            "verify", "--type=A", "--all_orders", "--max_delta=2", "--checks=flags"
        )
        assert code == 0
        assert out.count("flags [A2:") == 6

    def test_verify_json(self, run):
        """
        Test the JSON reports use the `pass` field.
        """
        code, out = run("verify", "--max_delta=2", "--checks=wset", "--format=json")
        assert code == 0
        (report,) = json.loads(out)
        assert report["pass"] is True
        assert report["system"] == "G2:0,1,2"

    def test_failed_check(self, run, mocker):
        """
        Test that a counterexample gives exit code 1.
        """
        failing = VerdictReport(
            check="wset",
            system="G2:0,1,2",
            bound=1,
            passed=False,
            witnesses=[Witness(roots=[], words=["01"], note="planted")],
        )
        mocker.patch("affine_lyndon.cli.run_checks", return_value=[failing])
        code, out = run("verify", "--max_delta=1")
        assert code == 1
        assert "FAIL" in out

    def test_corrupted_cache(self, run, tmp_path):
        """
        Test that a hand-edited cached word makes verify fail with witnesses.
        """
        cache = tmp_path / "g2.json"
        assert run("gen", "--max_delta=2", f"--cache={cache}")[0] == 0
        data = json.loads(cache.read_text())
        for entry in data["words"]:
            if entry["degree"] == [2, 3, 5]:
                entry["word"] = "0122012221"
        cache.write_text(json.dumps(data))
        code, out = run(
            "verify", "--max_delta=2", "--checks=convexity", f"--cache={cache}"
        )
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "convexity [G2:0,1,2, k<=2]: FAIL"
        assert len(lines) > 1

    def test_generation_error(self, run, mocker):
        """
        Test that a table breaking during generation gives exit code 1.
        """
        mocker.patch(
            "affine_lyndon.cli.SLTable.generate_up_to",
            side_effect=RuntimeError("No standard Lyndon candidate"),
        )
        code, _ = run("gen", "--max_delta=1", "--cache=unused.json")
        assert code == 1

    def test_unknown_check(self, run):
        """
        Test that an unknown check name gives exit code 2.
        """
        code, _ = run("verify", "--max_delta=1", "--checks=magic")
        assert code == 2

    def test_invalid_order(self, run):
        """
        Test that an order that is not a permutation gives exit code 2.
        """
        code, _ = run("chain", "0,1,0", "--order=0,1,1")
        assert code == 2

    def test_missing_config(self, tmp_path):
        """
        Test that a missing config file gives exit code 3.
        """
        code = main(["verify", f"--config={tmp_path / 'missing.yaml'}"])
        assert code == 3

    def test_sweep_configs(self, defaults_file, monkeypatch, tmp_path):
        """
        Test that a sweep file expands into the grid of every order.
        """
        monkeypatch.setattr("affine_lyndon.utils.DEFAULTS_FILE", defaults_file)
        path = tmp_path / "sweep.yaml"
        path.write_text(
            yaml.safe_dump(
                {
                    "parameters": {
                        "system.type": {"values": ["A", "G"]},
                        "system.rank": {"value": 2},
                        "system.order": {"values": "all"},
                        "max_k": {"value": 2},
                        "checks": {"value": "flags"},
                    }
                }
            )
        )
        configs = sweep_configs(str(path))
        assert len(configs) == 12
        assert {cfg.system.type for cfg in configs} == {"A", "G"}
        assert all(cfg.checks == ["flags"] for cfg in configs)

    def test_sweep(self, defaults_file, monkeypatch, tmp_path, capsys):
        """
        Test running a small sweep end to end.
        """
        monkeypatch.setattr("affine_lyndon.utils.DEFAULTS_FILE", defaults_file)
        path = tmp_path / "sweep.yaml"
        path.write_text(
            yaml.safe_dump(
                {
                    "parameters": {
                        "system.type": {"value": "A"},
                        "system.rank": {"value": 2},
                        "system.order": {"values": [[0, 1, 2], [2, 1, 0]]},
                        "max_k": {"value": 2},
                        "checks": {"value": "monotonicity"},
                    }
                }
            )
        )
        assert main(["sweep", str(path)]) == 0
        assert capsys.readouterr().out.count(": PASS") == 2
