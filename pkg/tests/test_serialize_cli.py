import json

import pytest

from stationarylab.algebra import AlgebraElement
from stationarylab.cli import ConfigError, config_hash, main, run, verify
from stationarylab.freegroup import FreeGroupContext
from stationarylab.serialize import (
    element_from_json,
    element_to_json,
    measure_from_json,
    measure_to_json,
)
from stationarylab.walks import uniform_generator_measure

F2 = FreeGroupContext(2)


class TestSerialization:
    def test_measure_roundtrip_rational(self):
        mu = uniform_generator_measure(2)
        data = measure_to_json(mu)
        assert data["atoms"][0]["p"] == "1/4"
        assert measure_from_json(data) == mu

    def test_measure_accepts_decimals(self):
        mu = measure_from_json(
            {"context": 2, "atoms": [{"word": "a", "p": 0.5}, {"word": "B", "p": 0.5}]}
        )
        assert mu.mass(F2.word("B")) == 0.5

    def test_element_roundtrip(self):
        x = AlgebraElement(
            {F2.word("abA"): 1.5 - 2j, F2.identity: 3.0}, 2
        )
        assert element_from_json(element_to_json(x)) == x

    def test_element_json_shape(self):
        x = AlgebraElement.delta(F2.word("abA"))
        data = element_to_json(x)
        assert data == {"context": 2, "terms": [{"word": "abA", "re": 1.0, "im": 0.0}]}


class TestRunAndVerify:
    def test_norm_experiment(self, tmp_path):
        cfg = {
            "experiment": "norm",
            "rank": 2,
            "element": {
                "context": 2,
                "terms": [
                    {"word": "a", "re": 1.0},
                    {"word": "A", "re": 1.0},
                    {"word": "b", "re": 1.0},
                    {"word": "B", "re": 1.0},
                ],
            },
            "n_moments": 16,
        }
        manifest = run(cfg, tmp_path)
        assert manifest.config_sha256 == config_hash(cfg)
        assert verify(tmp_path / "manifest.json")
        text = (tmp_path / "norm.csv").read_text()
        assert text.startswith("# anchor: ")
        assert text.splitlines()[1] == "lower,upper,moments_used,lower_method,upper_method"

    def test_identical_configs_identical_bytes(self, tmp_path):
        cfg = {
            "experiment": "srs-escape",
            "rank": 2,
            "steps": 30,
            "trials": 10,
            "seed": 11,
        }
        m1 = run(cfg, tmp_path / "r1")
        m2 = run(cfg, tmp_path / "r2")
        assert m1.outputs == m2.outputs
        assert (tmp_path / "r1" / "escape.csv").read_bytes() == (
            tmp_path / "r2" / "escape.csv"
        ).read_bytes()

    def test_tampering_detected(self, tmp_path):
        cfg = {"experiment": "norm", "rank": 2, "element": "a", "n_moments": 2}
        run(cfg, tmp_path)
        target = tmp_path / "norm.csv"
        target.write_text(target.read_text() + "x")
        assert not verify(tmp_path / "manifest.json")

    def test_missing_output_detected(self, tmp_path):
        cfg = {"experiment": "norm", "rank": 2, "element": "a", "n_moments": 2}
        run(cfg, tmp_path)
        (tmp_path / "norm.csv").unlink()
        assert not verify(tmp_path / "manifest.json")

    def test_stale_version_detected(self, tmp_path):
        cfg = {"experiment": "norm", "rank": 2, "element": "a", "n_moments": 2}
        run(cfg, tmp_path)
        data = json.loads((tmp_path / "manifest.json").read_text())
        data["version"] = "0.0.0"
        (tmp_path / "manifest.json").write_text(json.dumps(data))
        assert not verify(tmp_path / "manifest.json")

    def test_unknown_experiment_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            run({"experiment": "nope"}, tmp_path)

    def test_missing_seed_rejected(self, tmp_path):
        with pytest.raises(ConfigError) as exc:
            run({"experiment": "conditional", "rank": 2, "n": 3, "paths": 2}, tmp_path)
        assert exc.value.pointer == "/seed"


class TestMainExitCodes:
    def test_success(self, tmp_path):
        rc = main(["norm", "--element", "ab", "--n-moments", "4",
                   "--out-dir", str(tmp_path)])
        assert rc == 0

    def test_config_error_is_2(self, tmp_path):
        rc = main(["conditional", "--n", "3", "--paths", "2",
                   "--out-dir", str(tmp_path)])
        assert rc == 2

    def test_precondition_error_is_3(self, tmp_path):
        rc = main(["powers", "--g", "1", "--eps", "0.5", "--out-dir", str(tmp_path)])
        assert rc == 3

    def test_inconclusive_is_5(self, tmp_path):
        rc = main(["powers", "--g", "a", "--eps", "0.0001", "--budget", "2",
                   "--out-dir", str(tmp_path)])
        assert rc == 5

    def test_seed_override_refused_when_pinned(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({
            "experiment": "srs-escape", "rank": 2, "steps": 5, "trials": 2, "seed": 7
        }))
        rc = main(["srs-escape", "--config", str(cfg), "--seed-override", "9",
                   "--out-dir", str(tmp_path / "o")])
        assert rc == 2

    def test_verify_subcommand(self, tmp_path):
        rc = main(["norm", "--element", "a", "--n-moments", "2",
                   "--out-dir", str(tmp_path)])
        assert rc == 0
        rc = main(["verify", "--manifest", str(tmp_path / "manifest.json")])
        assert rc == 0

    def test_csv_headers_and_anchor_comments(self, tmp_path):
        rc = main(["fix-mass", "--depth", "6", "--out-dir", str(tmp_path)])
        assert rc == 0
        for name in ("fixmass.csv",):
            lines = (tmp_path / name).read_text().splitlines()
            assert lines[0].startswith("# anchor: ")
            assert "," in lines[1]
