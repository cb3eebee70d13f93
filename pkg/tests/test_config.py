"""Config schema: strict parsing, defaults, invariants, sweep axes."""

import pytest

from closedweigh.config import (DiscParams, InternalMeasurementParams,
                                RunConfig, SweepAxis, WeighingParams,
                                config_echo, parse_config, serialize_config)
from closedweigh.errors import ConfigError

INTERNAL_MINIMAL = """
experiment: internal-measurement
parameters: {}
"""

WEIGHING_DOC = """
experiment: weighing
parameters:
  M: 1.0e4
  R: 100.0
  m: 10.0
  v0: 1.0
  c: 1.0e4
  delta_z: 5.0
seed: 42
sweep:
  - {name: delta_z, min: 1.0, max: 8.0, n: 4}
output:
  path: weigh.csv
  format: csv
"""

DISC_DOC = """
experiment: disc
parameters:
  I: 1.0
  omega: 1.0
  m: 1.0e-3
  r: 1.0
  T: 1.0
  delta_r: 0.05
sweep:
  - {name: delta_r, min: 0.01, max: 10.0, n: 6}
  - {name: T, min: 0.5, max: 2.0, n: 3}
output:
  format: json
"""


class TestDefaults:
    def test_minimal_internal_measurement(self):
        cfg = parse_config(INTERNAL_MINIMAL)
        assert isinstance(cfg.parameters, InternalMeasurementParams)
        assert cfg.parameters.n_tau == 1024
        assert cfg.parameters.shape == "raised-cosine"
        assert cfg.parameters.n_z == 256
        assert cfg.seed == 0
        assert cfg.sweep == []
        assert cfg.output.path == "results.csv"
        assert cfg.output.format == "csv"

    def test_typed_parameter_blocks(self):
        assert isinstance(parse_config(WEIGHING_DOC).parameters, WeighingParams)
        assert isinstance(parse_config(DISC_DOC).parameters, DiscParams)


class TestStrictness:
    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="not permitted"):
            parse_config(INTERNAL_MINIMAL + "\nplotting: true\n")

    def test_unknown_parameter_key(self):
        doc = """
experiment: internal-measurement
parameters:
  n_tau: 512
  window_color: blue
"""
        with pytest.raises(ConfigError, match="window_color"):
            parse_config(doc)

    def test_non_mapping_document(self):
        with pytest.raises(ConfigError, match="mapping"):
            parse_config("- 1\n- 2\n")

    def test_syntax_error_carries_position(self):
        bad = "experiment: internal-measurement\nparameters: {n_tau: 512\n"
        with pytest.raises(ConfigError) as info:
            parse_config(bad)
        assert info.value.line is not None
        assert info.value.column is not None
        assert "line" in str(info.value)

    def test_mismatched_parameter_block(self):
        doc = """
experiment: weighing
parameters:
  n_tau: 512
"""
        with pytest.raises(ConfigError):
            parse_config(doc)


class TestParameterInvariants:
    def test_weighing_mass_ratio_rejected(self):
        doc = """
experiment: weighing
parameters:
  M: 100.0
  R: 100.0
  m: 10.0
  v0: 1.0
  c: 1.0e4
"""
        with pytest.raises(ConfigError, match="m/M"):
            parse_config(doc)

    def test_disc_inertia_ratio_rejected(self):
        doc = """
experiment: disc
parameters:
  I: 1.0
  omega: 1.0
  m: 0.5
  r: 1.0
  T: 1.0
"""
        with pytest.raises(ConfigError, match="too heavy"):
            parse_config(doc)

    def test_grid_size_rules(self):
        with pytest.raises(ConfigError, match="multiple of 8"):
            parse_config("experiment: internal-measurement\n"
                         "parameters: {n_tau: 1001}\n")
        with pytest.raises(ConfigError, match="even"):
            parse_config("experiment: internal-measurement\n"
                         "parameters: {n_z: 15}\n")

    def test_positive_scales(self):
        with pytest.raises(ConfigError, match="tau0"):
            parse_config("experiment: internal-measurement\n"
                         "parameters: {tau0: -1.0}\n")
        with pytest.raises(ConfigError, match="v0"):
            parse_config("experiment: weighing\n"
                         "parameters: {M: 1.0e4, R: 100.0, m: 10.0, v0: 0.0, c: 1.0e4}\n")

    def test_sample_floor(self):
        with pytest.raises(ConfigError, match="samples"):
            parse_config("experiment: disc\n"
                         "parameters: {I: 1.0, omega: 1.0, m: 1.0e-3, r: 1.0,"
                         " T: 1.0, n_samples: 10}\n")


class TestSweepAxes:
    def test_axis_count_cap(self):
        doc = """
experiment: disc
parameters: {I: 1.0, omega: 1.0, m: 1.0e-3, r: 1.0, T: 1.0}
sweep:
  - {name: delta_r, min: 0.01, max: 0.1, n: 2}
  - {name: T, min: 0.5, max: 2.0, n: 2}
  - {name: delta_r, min: 1.0, max: 2.0, n: 2}
"""
        with pytest.raises(ConfigError, match="at most 2"):
            parse_config(doc)

    def test_axis_names_per_experiment(self):
        doc = """
experiment: weighing
parameters: {M: 1.0e4, R: 100.0, m: 10.0, v0: 1.0, c: 1.0e4}
sweep:
  - {name: tau0, min: 1.0, max: 2.0, n: 2}
"""
        with pytest.raises(ConfigError, match="not sweepable"):
            parse_config(doc)

    def test_duplicate_axes(self):
        doc = """
experiment: weighing
parameters: {M: 1.0e4, R: 100.0, m: 10.0, v0: 1.0, c: 1.0e4}
sweep:
  - {name: delta_z, min: 1.0, max: 2.0, n: 2}
  - {name: delta_z, min: 3.0, max: 4.0, n: 2}
"""
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(doc)

    def test_log_spacing_defaults_on_wide_ranges(self):
        wide = SweepAxis(name="delta_z", min=0.01, max=10.0, n=5)
        assert wide.spacing == "log"
        narrow = SweepAxis(name="delta_z", min=1.0, max=10.0, n=5)
        assert narrow.spacing == "linear"
        through_zero = SweepAxis(name="delta_z", min=-1.0, max=1e4, n=5)
        assert through_zero.spacing == "linear"

    def test_log_needs_positive_min(self):
        with pytest.raises(Exception, match="min > 0"):
            SweepAxis(name="delta_z", min=0.0, max=1.0, n=3, spacing="log")

    def test_ordering_and_count_rules(self):
        with pytest.raises(Exception, match="exceeds max"):
            SweepAxis(name="delta_z", min=2.0, max=1.0, n=3)
        with pytest.raises(Exception, match=">= 1"):
            SweepAxis(name="delta_z", min=1.0, max=2.0, n=0)

    def test_values(self):
        single = SweepAxis(name="delta_z", min=3.0, max=9.0, n=1)
        assert single.values() == [3.0]
        lin = SweepAxis(name="delta_z", min=1.0, max=3.0, n=3)
        assert lin.values() == [1.0, 2.0, 3.0]
        log = SweepAxis(name="delta_z", min=1.0, max=100.0, n=3, spacing="log")
        assert log.values() == pytest.approx([1.0, 10.0, 100.0])


class TestRoundTrip:
    @pytest.mark.parametrize("doc", [INTERNAL_MINIMAL, WEIGHING_DOC, DISC_DOC])
    def test_serialize_then_parse_is_identity(self, doc):
        cfg = parse_config(doc)
        again = parse_config(serialize_config(cfg))
        assert again == cfg

    def test_echo_drops_output_only(self):
        cfg = parse_config(WEIGHING_DOC)
        echo = config_echo(cfg)
        assert "output" not in echo
        assert echo["seed"] == 42
        assert echo["experiment"] == "weighing"
        assert echo["parameters"]["M"] == 1e4

    def test_run_config_equality_is_structural(self):
        assert parse_config(WEIGHING_DOC) == parse_config(WEIGHING_DOC)
        assert parse_config(WEIGHING_DOC) != parse_config(DISC_DOC)
