"""End-to-end runs of the command-line subcommands."""

import json

import pytest

from hamstab import __version__
from hamstab.cli import EXIT_COMPUTATION, EXIT_INVALID, EXIT_OK, main
from hamstab.core.fourier_taylor import AnalyticityWindow, linear_hamiltonian, write_function
from hamstab.core.normal_form import reference_perturbation
from hamstab.models import ExperimentConfig


def write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def run(command, tmp_path, data=None, *extra):
    args = [command, "--out", str(tmp_path / "out")]
    if data is not None:
        args += ["--config", str(write_config(tmp_path, data))]
    return main(args + list(extra))


class TestProfileCommand:
    def test_writes_profile_and_plot_data(self, tmp_path):
        assert run("profile", tmp_path, {"profile": {"K_max": 50}}) == EXIT_OK
        document = json.loads((tmp_path / "out" / "profile.json").read_text())
        assert len(document["rows"]) == 50
        assert document["version"] == __version__
        assert document["config"]["profile"]["K_max"] == 50
        assert document["rows"][0]["psi_lo"] <= document["rows"][0]["psi_hi"]
        lines = (tmp_path / "out" / "psi.csv").read_text().splitlines()
        assert lines[0] == "K,psi" and len(lines) == 51
        assert (tmp_path / "out" / "lambda.csv").exists()

    def test_zero_k_max_is_invalid(self, tmp_path, capsys):
        assert run("profile", tmp_path, {"profile": {"K_max": 0}}) == EXIT_INVALID
        assert "ValidationError" in capsys.readouterr().err
        assert not (tmp_path / "out").exists()

    def test_toml_config(self, tmp_path):
        config = tmp_path / "config.toml"
        config.write_text('frequency = "golden"\n\n[profile]\nK_max = 3\n', encoding="utf-8")
        assert main(["profile", "--config", str(config), "--out", str(tmp_path / "out")]) == EXIT_OK
        document = json.loads((tmp_path / "out" / "profile.json").read_text())
        assert [row["K"] for row in document["rows"]] == [1, 2, 3]
        assert document["frequency"] == "golden"

    def test_outputs_are_deterministic(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        first.mkdir()
        second.mkdir()
        assert run("profile", first, {"profile": {"K_max": 20}}) == EXIT_OK
        assert run("profile", second, {"profile": {"K_max": 20}}) == EXIT_OK
        for name in ("profile.json", "psi.csv", "lambda.csv"):
            assert (first / "out" / name).read_bytes() == (second / "out" / name).read_bytes()


class TestConfigErrors:
    def test_unknown_key(self, tmp_path, capsys):
        assert run("profile", tmp_path, {"profil": {}}) == EXIT_INVALID
        assert "ValidationError" in capsys.readouterr().err

    def test_unknown_frequency(self, tmp_path):
        assert run("profile", tmp_path, {"frequency": "pi"}) == EXIT_INVALID

    def test_unparseable_file(self, tmp_path, capsys):
        config = tmp_path / "broken.json"
        config.write_text("{not json", encoding="utf-8")
        assert main(["profile", "--config", str(config)]) == EXIT_INVALID
        assert "ValueError" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["profile", "--config", str(tmp_path / "absent.json")]) == EXIT_INVALID

    def test_threads_must_be_positive(self, tmp_path):
        assert run("profile", tmp_path, None, "--threads", "0") == EXIT_INVALID

    def test_construct_section_is_an_alias(self):
        assert "construct" not in ExperimentConfig.model_fields
        config = ExperimentConfig.model_validate({"construct": {"j": [3]}})
        assert config.construction.j == [3]
        assert config.model_dump(by_alias=True)["construct"]["j"] == [3]

    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            main([])


class TestConstructCommand:
    def test_empty_index_list_writes_nothing(self, tmp_path):
        assert run("construct", tmp_path, {"construct": {"j": []}}) == EXIT_OK
        assert not (tmp_path / "out").exists()

    def test_writes_member_and_hamiltonian(self, tmp_path):
        assert run("construct", tmp_path, {"construct": {"j": [2]}}) == EXIT_OK
        member = json.loads((tmp_path / "out" / "member_j2.json").read_text())
        assert (member["p"], member["q"]) == (2, 5)
        assert member["v"] == ["1", "2/5"]
        assert member["norm_f1"] <= member["eps_j"] / 2
        assert (tmp_path / "out" / "hamiltonian_j2.json").exists()

    def test_small_c_is_a_computation_error(self, tmp_path, capsys):
        data = {"constants": {"c": 1.0}, "construct": {"j": [2]}}
        assert run("construct", tmp_path, data) == EXIT_COMPUTATION
        assert "NormBudgetExceeded" in capsys.readouterr().err


class TestSimulateCommand:
    def test_family_member_by_default(self, tmp_path):
        data = {"simulate": {"t_end": 10.0, "dt": 0.01, "sample_every": 100, "deltas": [0.001]}}
        assert run("simulate", tmp_path, data) == EXIT_OK
        lines = (tmp_path / "out" / "trajectory.csv").read_text().splitlines()
        assert lines[0] == "t,theta_1,theta_2,I_1,I_2,H"
        assert len(lines) == 12
        report = json.loads((tmp_path / "out" / "simulate.json").read_text())
        assert report["steps"] == 1000
        assert report["first_passage"]["0.001"] is not None
        assert report["max_energy_error"] < 1e-10

    def test_constructed_hamiltonian_file(self, tmp_path):
        assert run("construct", tmp_path, {"construct": {"j": [1]}}) == EXIT_OK
        document = json.loads((tmp_path / "out" / "hamiltonian_j1.json").read_text())
        assert document["version"] == __version__
        assert document["config"]["construct"]["j"] == [1]
        assert document["hamiltonian"]["window"]["n"] == 2
        data = {"simulate": {"hamiltonian": str(tmp_path / "out" / "hamiltonian_j1.json"), "t_end": 1.0, "dt": 0.01}}
        assert run("simulate", tmp_path, data) == EXIT_OK

    def test_coupled_hamiltonian_is_invalid_input(self, tmp_path, capsys):
        window = AnalyticityWindow(0.1, 2.0, 2)
        path = tmp_path / "coupled.json"
        write_function(linear_hamiltonian([1.0, 0.5], window) + reference_perturbation(1e-3, window), path)
        data = {"simulate": {"hamiltonian": str(path), "t_end": 1.0, "dt": 0.1}}
        assert run("simulate", tmp_path, data) == EXIT_INVALID
        assert "NotSeparable" in capsys.readouterr().err

    def test_initial_state_dimension_checked(self, tmp_path):
        data = {"simulate": {"theta0": [0.0], "t_end": 1.0, "dt": 0.1}}
        assert run("simulate", tmp_path, data) == EXIT_INVALID


class TestVerifyCommand:
    def test_saturation_outputs(self, tmp_path):
        data = {"verify": {"j": [1, 2], "samples": 2001, "check_horizon": 10.0, "dt": 0.01}}
        assert run("verify", tmp_path, data, "--threads", "2") == EXIT_OK
        document = json.loads((tmp_path / "out" / "saturation.json").read_text())
        assert [m["q"] for m in document["members"]] == [2, 5]
        assert document["ceiling_ok"] and document["floor_ok"]
        assert document["exponent_slope"] is not None
        lines = (tmp_path / "out" / "measured_vs_predicted.csv").read_text().splitlines()
        assert lines[0] == "q,delta,log_t_measured,log_T_predicted"
        assert len(lines) == 21
        assert len((tmp_path / "out" / "log_t_vs_q.csv").read_text().splitlines()) == 3

    def test_empty_index_list_is_invalid(self, tmp_path):
        assert run("verify", tmp_path, {"verify": {"j": []}}) == EXIT_INVALID


class TestNormalFormCommand:
    def test_remainder_table(self, tmp_path):
        data = {"normalform": {"K": [2, 3], "steps": 2}}
        assert run("normalform", tmp_path, data) == EXIT_OK
        document = json.loads((tmp_path / "out" / "normalform.json").read_text())
        assert [run_["K"] for run_ in document["runs"]] == [2.0, 3.0]
        assert all(run_["remainder_majorant"] >= 0 for run_ in document["runs"])
        lines = (tmp_path / "out" / "remainder_vs_K.csv").read_text().splitlines()
        assert lines[0] == "K,remainder" and len(lines) == 3

    def test_lattice_dimension_checked(self, tmp_path):
        data = {"normalform": {"K": [2], "steps": 1, "lattice": ["1"]}}
        assert run("normalform", tmp_path, data) == EXIT_INVALID
