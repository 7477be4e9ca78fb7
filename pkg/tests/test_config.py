import pytest

from config import DEFAULT_CONFIG_PATH, ConfigManager


@pytest.fixture
def write_config(tmp_path):
    def write(text: str) -> str:
        path = tmp_path / "config.yaml"
        path.write_text(text)
        return str(path)
    return write


def test_shipped_file_matches_defaults():
    manager = ConfigManager(str(DEFAULT_CONFIG_PATH))
    assert manager.get_arith_config().enumeration_cap == 1_000_000
    assert manager.get_groebner_config().max_reductions == 10_000
    assert manager.get_graph_config().max_vertices == 8
    assert manager.get_chow_config().default_dimension == 4
    assert manager.validate_config()


def test_missing_file_falls_back(tmp_path, caplog):
    manager = ConfigManager(str(tmp_path / "absent.yaml"))
    assert manager.get_sector_config().enumeration_cap == 1_000_000
    assert manager.get_app_config().indent == 2
    assert "not found" in caplog.text


def test_dot_notation_and_default(write_config):
    manager = ConfigManager(write_config("graphs:\n  max_edges: 5\n"))
    assert manager.get('graphs.max_edges') == 5
    assert manager.get('graphs.missing', 'fallback') == 'fallback'
    assert manager.get_graph_config().max_vertices == 8


def test_environment_override(write_config, monkeypatch):
    manager = ConfigManager(write_config("arith:\n  enumeration_cap: 50\n"))
    assert manager.get_arith_config().enumeration_cap == 50
    monkeypatch.setenv("LGWITTEN_ARITH_ENUMERATION_CAP", "7")
    assert manager.get_arith_config().enumeration_cap == 7


def test_validation_rejects_bad_values(write_config):
    assert not ConfigManager(write_config("sectors:\n  enumeration_cap: 0\n")).validate_config()
    assert not ConfigManager(write_config("chow:\n  default_dimension: -1\n")).validate_config()
    assert not ConfigManager(write_config("log_level: LOUD\n")).validate_config()
    assert not ConfigManager(write_config("graphs:\n  max_vertices: true\n")).validate_config()


def test_reload(write_config, tmp_path):
    manager = ConfigManager(write_config("chow:\n  default_dimension: 2\n"))
    assert manager.get_chow_config().default_dimension == 2
    other = tmp_path / "other.yaml"
    other.write_text("chow:\n  default_dimension: 6\n")
    manager.reload(str(other))
    assert manager.config_path == str(other)
    assert manager.get_chow_config().default_dimension == 6
