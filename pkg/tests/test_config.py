import pytest

from wordcx.config import ExperimentConfig, generator_from_config, parse_config_text, parse_switch
from wordcx.errors import ConfigurationError
from wordcx.schedule import GapConstruction
from wordcx.words import SturmianGenerator


def test_parse_config_text():
    text = "# comment\ngenerator = sturmian\nalpha=golden  # inline\n\nhorizon=50\n"
    assert parse_config_text(text) == {"generator": "sturmian", "alpha": "golden", "horizon": "50"}
    with pytest.raises(ConfigurationError):
        parse_config_text("no equals sign")


def test_from_mapping_splits_keys():
    cfg = ExperimentConfig.from_mapping({"generator": "periodic", "period": "12", "horizon": "7", "marker": "1"})
    assert cfg.generator == {"kind": "periodic", "period": "12"}
    assert cfg.horizon == 7 and cfg.extra == {"marker": "1"}


def test_budget_enforced():
    with pytest.raises(ConfigurationError):
        ExperimentConfig.from_mapping({"horizon": 100, "window_budget": 10})


def test_unknown_kind():
    with pytest.raises(ConfigurationError):
        ExperimentConfig.from_mapping({"generator": "nope"})


def test_gap_construction_clipped_to_horizon():
    cfg = ExperimentConfig.from_mapping({"generator": "gap-construction", "K": "3", "horizon": "40"})
    gen = cfg.build_generator()
    assert isinstance(gen, GapConstruction) and gen.clip == 42


def test_generator_config_roundtrip():
    gen = SturmianGenerator()
    again = generator_from_config(gen.to_config())
    assert again.window(-5, 30).content == gen.window(-5, 30).content


@pytest.mark.parametrize("text,value", [("on", True), ("OFF", False), ("1", True), ("no", False)])
def test_parse_switch(text, value):
    assert parse_switch(text) is value


def test_parse_switch_rejects():
    with pytest.raises(ConfigurationError):
        parse_switch("maybe")
