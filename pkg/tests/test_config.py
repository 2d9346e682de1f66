"""Tests for YAML config parsing, validation, and round-trips."""

import pytest
import yaml

from chargeplane.config import dump_config, load_config, parse_config
from chargeplane.errors import ConfigError
from chargeplane.resonance import DEFAULT_IM_SCHEDULE

FULL = {
    "potential": [
        {"c": 7.5, "p": 2, "b": 1.0, "q": 1},
        {"c": -8.0, "p": 0, "b": 0.2, "s": 0.0, "q": 2},
    ],
    "channel": {"l": 1, "n_basis": 120, "scale": 20.0, "theta": 0.7, "quad_size": 150},
    "scan": {
        "energy": {"re": 3.0, "im": -0.5},
        "grid": {"re_start": 0.0, "re_end": 10.0, "steps": 101, "im_part": -0.4},
        "guess": {"re": 3.4, "im": -0.01},
        "z_targets": [0.0, -1.0],
        "im_schedule": [-0.1, -0.4],
        "window": 0.75,
    },
    "stability": {
        "lambda_values": [10.0, 20.0],
        "theta_values": [0.6, 0.7],
        "n_values": [120],
        "tolerance": 1e-7,
    },
    "table": {"tables": ["table1"], "tolerance": 1e-6},
}


class TestParseConfig:
    def test_full_document(self):
        cfg = parse_config(FULL)
        assert cfg.channel.l == 1
        assert cfg.channel.quad_size == 150
        assert cfg.scan.energy == 3.0 - 0.5j
        assert cfg.scan.guess == 3.4 - 0.01j
        assert cfg.scan.grid.steps == 101
        assert cfg.scan.grid.im_part == -0.4
        assert cfg.scan.z_targets == (0.0, -1.0)
        assert cfg.scan.window == 0.75
        assert cfg.stability.lambda_values == (10.0, 20.0)
        assert cfg.stability.tolerance == 1e-7
        assert cfg.table.tolerance == 1e-6
        assert len(cfg.potential.terms) == 2

    def test_minimal_document_defaults(self):
        cfg = parse_config(
            {"channel": {"n_basis": 50, "scale": 4.0}}
        )
        assert cfg.channel.l == 0
        assert cfg.channel.theta == 0.0
        assert cfg.channel.quad_size == 50
        assert cfg.potential.terms == ()
        assert cfg.scan.im_schedule == DEFAULT_IM_SCHEDULE
        assert cfg.scan.window == 0.5

    def test_missing_channel(self):
        with pytest.raises(ConfigError, match="channel"):
            parse_config({"potential": []})

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.update(extra=1),
            lambda d: d["channel"].update(typo=1),
            lambda d: d["scan"].update(windw=0.5),
            lambda d: d["scan"]["grid"].update(step=3),
            lambda d: d["stability"].update(lam=1),
            lambda d: d["table"].update(rows=2),
            lambda d: d["scan"]["energy"].update(x=1),
        ],
    )
    def test_unknown_keys_rejected_everywhere(self, mutate):
        import copy

        data = copy.deepcopy(FULL)
        mutate(data)
        with pytest.raises(ConfigError, match="unknown keys"):
            parse_config(data)

    def test_bad_scalar_reported_as_config_error(self):
        import copy

        data = copy.deepcopy(FULL)
        data["channel"]["scale"] = "twenty"
        with pytest.raises(ConfigError):
            parse_config(data)

    def test_non_mapping_root(self):
        with pytest.raises(ConfigError, match="mapping"):
            parse_config([1, 2, 3])


class TestRoundTrip:
    def test_dump_then_parse_is_identity(self):
        cfg = parse_config(FULL)
        again = parse_config(yaml.safe_load(dump_config(cfg)))
        assert again == cfg

    def test_load_config_file(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text(yaml.safe_dump(FULL), encoding="utf-8")
        cfg = load_config(path)
        assert cfg == parse_config(FULL)

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.yaml")

    def test_load_config_malformed_yaml(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("channel: {n_basis: [unclosed", encoding="utf-8")
        with pytest.raises(ConfigError, match="malformed"):
            load_config(path)
