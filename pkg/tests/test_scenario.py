import pytest

from pas_sim.core import ConfigError
from pas_sim.scenario import (
    ScenarioFormatError,
    build_scenario,
    generate_positions,
    load_scenario_spec,
)
from pas_sim.schemas import ScenarioSpec

MINIMAL = """\
nodes:
  generator: uniform-random
  count: 10
  region: [40, 40]
  seed: 3
radio_range: 10
stimulus:
  variant: isotropic
  source: [0, 0]
  speed: 1.0
strategy:
  kind: pas
horizon: 60
seed: 2
"""


def write(tmp_path, text, name="scn.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_minimal_scenario(tmp_path):
    spec = load_scenario_spec(write(tmp_path, MINIMAL))
    assert spec.name == "scn"  # defaults to the file stem
    assert spec.radio_range == 10.0
    assert spec.strategy.kind == "pas"


def test_explicit_name_preserved(tmp_path):
    spec = load_scenario_spec(write(tmp_path, "name: mine\n" + MINIMAL))
    assert spec.name == "mine"


def test_pas_defaults():
    spec = load_spec_text(MINIMAL)
    scenario = build_scenario(spec)
    assert scenario.pas.alert_threshold == 10.0
    assert scenario.pas.sleep_increment == 1.0
    assert scenario.pas.initial_sleep == 1.0
    assert scenario.pas.max_sleep == 10.0
    assert scenario.pas.detection_timeout == 30.0
    assert scenario.pas.rebroadcast_epsilon == 0.10


def load_spec_text(text):
    import yaml

    return ScenarioSpec.model_validate(yaml.safe_load(text))


def test_sas_alias_pins_threshold_zero():
    spec = load_spec_text(MINIMAL.replace("kind: pas", "kind: sas"))
    scenario = build_scenario(spec)
    assert scenario.pas.alert_threshold == 0.0
    assert scenario.strategy == "sas"


def test_sas_with_explicit_nonzero_threshold_rejected():
    spec = load_spec_text(MINIMAL.replace("kind: pas", "kind: sas\n  alert_threshold: 5"))
    with pytest.raises(ConfigError):
        build_scenario(spec)


def test_ns_has_no_sleep_params():
    spec = load_spec_text(MINIMAL.replace("kind: pas", "kind: ns"))
    scenario = build_scenario(spec)
    assert scenario.pas is None
    assert scenario.strategy == "ns"


def test_missing_stimulus_is_a_parse_error(tmp_path):
    text = MINIMAL.replace("stimulus:\n  variant: isotropic\n  source: [0, 0]\n  speed: 1.0\n", "")
    with pytest.raises(ScenarioFormatError) as err:
        load_scenario_spec(write(tmp_path, text))
    assert "stimulus" in str(err.value)


def test_unknown_key_is_a_parse_error(tmp_path):
    with pytest.raises(ScenarioFormatError) as err:
        load_scenario_spec(write(tmp_path, MINIMAL + "banana: 3\n"))
    assert "banana" in str(err.value)


def test_broken_yaml_is_a_parse_error(tmp_path):
    with pytest.raises(ScenarioFormatError):
        load_scenario_spec(write(tmp_path, "nodes: [unterminated"))


def test_non_mapping_document_rejected(tmp_path):
    with pytest.raises(ScenarioFormatError):
        load_scenario_spec(write(tmp_path, "- a\n- b\n"))


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioFormatError):
        load_scenario_spec(tmp_path / "nope.yaml")


def test_uniform_random_generator_is_seed_deterministic():
    spec = load_spec_text(MINIMAL)
    assert generate_positions(spec) == generate_positions(spec)
    other = spec.model_copy(update={"nodes": spec.nodes.model_copy(update={"seed": 4})})
    assert generate_positions(other) != generate_positions(spec)


def test_grid_generator_covers_region():
    spec = load_spec_text(MINIMAL.replace("generator: uniform-random", "generator: grid"))
    positions = generate_positions(spec)
    assert len(positions) == 10
    assert len({(p.x, p.y) for p in positions}) == 10
    for p in positions:
        assert 0 <= p.x <= 40 and 0 <= p.y <= 40


def test_explicit_node_list():
    spec = load_spec_text(MINIMAL.replace(
        "nodes:\n  generator: uniform-random\n  count: 10\n  region: [40, 40]\n  seed: 3\n",
        "nodes: [[0, 0], [5, 5]]\n",
    ))
    scenario = build_scenario(spec)
    assert len(scenario.nodes) == 2


def test_stimulus_variant_validation():
    with pytest.raises(Exception):
        load_spec_text(MINIMAL.replace("speed: 1.0", "speeds: [1, 2, 1, 2]"))
    with pytest.raises(Exception):
        load_spec_text(MINIMAL.replace(
            "variant: isotropic\n  source: [0, 0]\n  speed: 1.0",
            "variant: anisotropic\n  source: [0, 0]\n  speeds: [1, 2, 1]",
        ))


def test_sweep_section_validation():
    good = MINIMAL + "sweep:\n  param: max_sleep\n  values: [2, 4]\n  reps: 3\n"
    spec = load_spec_text(good)
    assert spec.sweep.param == "max_sleep"
    with pytest.raises(Exception):
        load_spec_text(MINIMAL + "sweep:\n  param: max_sleep\n  values: [4, 2]\n")
    with pytest.raises(Exception):
        load_spec_text(MINIMAL + "sweep:\n  param: max_sleep\n  values: [-1, 2]\n")
    with pytest.raises(Exception):
        load_spec_text(MINIMAL + "sweep:\n  param: banana\n  values: [1, 2]\n")
