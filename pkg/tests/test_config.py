import json

import pytest

from app.application.dto import DesignSection, DgpSection, PriorsSection, RunConfig
from app.application.services import RunContext, RunOverrides
from app.config import Settings, get_settings
from app.domain.entities import Priors
from app.domain.exceptions import ConfigError
from app.domain.value_objects import OutcomeFamily


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig.from_file(None)
        assert config.chain.iterations == 4000
        assert config.chain.burn_in == 2000
        assert config.chain.family is OutcomeFamily.LOGNORMAL
        assert config.priors.to_priors() == Priors()
        assert "CADE(a0;a0)" in config.estimands.requests
        assert config.output.spool

    def test_every_offending_field_is_listed(self):
        with pytest.raises(ConfigError) as excinfo:
            RunConfig.from_dict(
                {
                    "chain": {"iterations": 10, "burn_in": 20},
                    "design": {"q0": 0.9, "q1": 0.5},
                    "bogus": 1,
                }
            )
        message = str(excinfo.value)
        for field in ("chain", "design", "bogus"):
            assert field in message

    def test_estimand_keys_are_normalised_and_deduplicated(self):
        config = RunConfig.from_dict({"estimands": {"requests": ["OEY()", "DEY(a0)"]}})
        assert config.estimands.requests == ["OEY(a0,a1)", "DEY(a0)"]
        with pytest.raises(ConfigError):
            RunConfig.from_dict({"estimands": {"requests": ["OEY()", "OEY(a0,a1)"]}})
        with pytest.raises(ConfigError):
            RunConfig.from_dict({"estimands": {"requests": ["DEY(2)"]}})

    def test_file_errors(self, tmp_path):
        with pytest.raises(ConfigError):
            RunConfig.from_file(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        with pytest.raises(ConfigError):
            RunConfig.from_file(broken)
        listed = tmp_path / "list.json"
        listed.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            RunConfig.from_file(listed)

    def test_resolved_document_carries_the_seed(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"chain": {"iterations": 50, "burn_in": 10}}))
        document = RunConfig.from_file(path).resolved(seed=31)
        assert document["chain"]["seed"] == 31
        assert document["chain"]["iterations"] == 50
        assert document["priors"]["ig_shape_uses_half_count"] is False


class TestSections:
    def test_priors_need_six_positive_concentrations(self):
        with pytest.raises(ValueError):
            PriorsSection(dirichlet_alpha=[1.0] * 5)
        priors = PriorsSection(dirichlet_alpha=[2.0] * 6, ig_shape_uses_half_count=True).to_priors()
        assert priors.dirichlet_alpha == (2.0,) * 6
        assert priors.ig_shape_uses_half_count

    def test_dgp_section_builds_the_process(self):
        cfg = DgpSection(n_units=400, n_clusters=10).to_dgp_config(DesignSection(q0=0.3, q1=0.7))
        assert (cfg.n_units, cfg.n_clusters) == (400, 10)
        assert (cfg.q0, cfg.q1) == (0.3, 0.7)
        assert cfg.family is OutcomeFamily.LOGNORMAL

    def test_gamma_and_rsby_presets(self):
        assert DgpSection(family="gamma").to_dgp_config().family is OutcomeFamily.GAMMA
        assert DgpSection(preset="rsby").to_dgp_config().n_clusters == 435
        with pytest.raises(ValueError):
            DgpSection(preset="rsby", family="gamma")
        with pytest.raises(ValueError):
            DgpSection(preset="custom")


class TestSettings:
    def test_environment_overrides_defaults(self, monkeypatch):
        monkeypatch.setenv("WORKERS", "3")
        monkeypatch.setenv("LOG_LEVEL", "DEBUG")
        settings = get_settings()
        assert settings.workers == 3
        assert settings.log_level == "DEBUG"

    def test_invalid_environment_value(self, monkeypatch):
        monkeypatch.setenv("WORKERS", "0")
        with pytest.raises(ValueError):
            Settings()


class TestRunContext:
    def test_seed_precedence(self, tmp_path):
        settings = Settings(default_seed=42, output_dir=tmp_path)
        bare = RunConfig()
        seeded = RunConfig.from_dict({"chain": {"seed": 5}})
        assert RunContext.build(bare, settings=settings).seed == 42
        assert RunContext.build(seeded, settings=settings).seed == 5
        assert RunContext.build(seeded, RunOverrides(seed=9), settings).seed == 9

    def test_output_and_chain_overrides(self, tmp_path):
        settings = Settings(output_dir=tmp_path / "default", workers=2)
        config = RunConfig.from_dict({"output": {"dir": str(tmp_path / "configured")}})
        context = RunContext.build(config, settings=settings)
        assert context.output_dir == tmp_path / "configured"
        assert context.workers == 2

        context = RunContext.build(
            config, RunOverrides(output_dir=tmp_path / "cli", chains=3, workers=1), settings
        )
        assert context.output_dir == tmp_path / "cli"
        assert context.config.chain.chains == 3
        assert context.workers == 1

        path = context.write_resolved_config(context.repository())
        document = json.loads(path.read_text())
        assert document["output"]["dir"] == str(tmp_path / "cli")
        assert document["chain"]["chains"] == 3
