import pytest

from npf.config import ConfigError, RunConfig, load_config, parse_config_text


def test_defaults():
    cfg = RunConfig()
    assert cfg.trial_bound == 10**6 and cfg.precision_ceiling == 20001
    assert cfg.output_format == "csv" and cfg.threads == 1
    assert cfg.cache_dir


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_text("trial_bound=100\ncolour=blue\n")


def test_bad_value_rejected():
    with pytest.raises(ConfigError):
        parse_config_text("threads=many\n")
    with pytest.raises(ConfigError):
        RunConfig(trial_bound=0)
    with pytest.raises(ConfigError):
        RunConfig(output_format="xml")


def test_precedence(tmp_path):
    f = tmp_path / "npf.conf"
    f.write_text("# comment\ntrial_bound = 1000\nthreads = 2\noutput_format = json\n")
    env = {"NPF_TRIAL_BOUND": "5000", "NPF_THREADS": "auto"}
    cfg = load_config(str(f), environ=env, overrides={"output_format": "markdown"})
    assert cfg.trial_bound == 5000  # env beats file
    assert cfg.threads is None  # auto
    assert cfg.output_format == "markdown"  # flag beats file
    assert load_config(str(f), environ={}).trial_bound == 1000
    assert load_config(None, environ={}).trial_bound == 10**6


def test_env_config_file(tmp_path):
    f = tmp_path / "c"
    f.write_text("precision_ceiling=30000\n")
    assert load_config(None, environ={"NPF_CONFIG": str(f)}).precision_ceiling == 30000
