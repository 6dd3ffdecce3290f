import pytest

from src.errors import ConfigurationError
from src.settings import (BUDGET_ENV, LOG_LEVEL_ENV, load_settings,
                          write_default_settings)


class TestSettings:

    def test_defaults_without_file(self, tmp_path):
        settings = load_settings(str(tmp_path / 'absent.ini'))
        assert settings.edge_budget == 60
        assert settings.prune is False
        assert settings.density == pytest.approx(0.3)
        assert settings.workers == 1
        assert settings.max_part_size == 2
        assert settings.max_vertices == 6
        assert settings.log_level == 'INFO'

    def test_partial_file(self, tmp_path):
        path = tmp_path / 'settings.ini'
        path.write_text("[oracle]\nedge_budget = 90\n\n"
                        "[matching]\nprune = yes\n\n"
                        "[logging]\nlevel = debug\n")
        settings = load_settings(str(path))
        assert settings.edge_budget == 90
        assert settings.prune is True
        assert settings.log_level == 'DEBUG'
        assert settings.workers == 1

    def test_write_defaults(self, tmp_path):
        path = str(tmp_path / 'settings.ini')
        write_default_settings(path)
        assert '[harness]' in open(path).read()
        assert load_settings(path).max_vertices == 6

    def test_create_missing_default_file(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        load_settings(create_missing=True)
        assert (tmp_path / 'settings.ini').exists()

    def test_environment_overrides(self, tmp_path, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV, '25')
        monkeypatch.setenv(LOG_LEVEL_ENV, 'warning')
        settings = load_settings(str(tmp_path / 'absent.ini'))
        assert settings.edge_budget == 25
        assert settings.log_level == 'WARNING'

    @pytest.mark.parametrize("text,attribute", [
        ("[oracle]\nedge_budget = many\n", 'edge_budget'),
        ("[matching]\nprune = perhaps\n", 'prune'),
        ("[harness]\ndensity = thick\n", 'density'),
        ("[harness]\nworkers = 1.5\n", 'workers'),
    ])
    def test_bad_values(self, tmp_path, text, attribute):
        path = tmp_path / 'settings.ini'
        path.write_text(text)
        with pytest.raises(ConfigurationError):
            getattr(load_settings(str(path)), attribute)

    def test_bad_environment_budget(self, tmp_path, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV, 'lots')
        with pytest.raises(ConfigurationError):
            load_settings(str(tmp_path / 'absent.ini')).edge_budget
