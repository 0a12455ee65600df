import os

import pytest
from segal import corpus
from segal.__main__ import PROJECT_VERSION
from segal.commands.builds import Normalize
from segal.groups.finite import cyclic
from segal.serialization import load
from test.utils import run_cli, run_report, write_document, write_object


def test_build(tmp_path) -> None:
    result, report = run_report(tmp_path, "build", "--kind", "circle", "--truncation", "2")

    assert result.exit_code == 0
    assert report["status"] == "CERTIFIED"
    assert report["objects"]["counts"] == [1, 1]
    assert report["objects"]["object"]["generators"] == [["v"], ["e"]]
    assert report["job"]["options"]["kind"] == "circle"


def test_build_to_a_file(tmp_path) -> None:
    output = str(tmp_path / "horn.json")
    result, report = run_report(
        tmp_path, "build", "--kind", "horn", "--n", "2", "--i", "1", "--truncation", "2", "-o", output
    )

    assert result.exit_code == 0
    assert report["objects"]["output"] == output
    assert load(output).counts() == [3, 2]


def test_build_needs_a_horn_index(tmp_path) -> None:
    result = run_cli("build", "--kind", "horn", "--n", "2")

    assert result.exit_code == 3


def test_homology(tmp_path, circle_file) -> None:
    path = circle_file
    result, report = run_report(tmp_path, "homology", path)

    assert result.exit_code == 0
    assert report["checks"]["homology"]["status"] == "CERTIFIED"
    assert report["objects"]["counts"] == [1, 1]
    assert len(report["homology"]) == 1


def test_pi1(tmp_path, circle_file) -> None:
    path = circle_file

    result, report = run_report(tmp_path, "pi1", path)
    assert result.exit_code == 2
    assert report["status"] == "CONSISTENT"

    result, report = run_report(tmp_path, "pi1", path, "--group", "Z2")
    assert result.exit_code == 1
    assert report["checks"]["pi1"]["status"] == "REFUTED"


def test_kan(tmp_path, circle_file) -> None:
    path = circle_file
    result, _ = run_report(tmp_path, "kan", path, "--max-dim", "2")

    assert result.exit_code == 1


def test_segal_group(tmp_path) -> None:
    path = write_object(tmp_path, "z2.json", cyclic(2))
    result, report = run_report(tmp_path, "check-segal-group", path, "--up-to", "2", "--truncation", "2")

    assert result.exit_code == 0
    assert report["checks"]["group_like"]["status"] == "CERTIFIED"


def test_doubled_bar_is_refuted(tmp_path) -> None:
    path = write_object(tmp_path, "doubled.json", corpus.doubled_bar(cyclic(2), 2))
    result, report = run_report(tmp_path, "check-segal-space", path, "--up-to", "2", "--truncation", "2")

    assert result.exit_code == 1
    assert report["checks"]["segal_2"]["status"] == "REFUTED"
    assert report["checks"]["segal_2"]["witness"]


def test_normalize(tmp_path) -> None:
    result, report = run_report(tmp_path, "normalize", "--word", "d3 s1 x")

    assert result.exit_code == 0
    assert report["objects"]["normal_form"] == "s1 d2 x"


def test_normalize_in_a_simplicial_set(tmp_path, circle_file) -> None:
    path = circle_file
    result, report = run_report(tmp_path, "normalize", path, "--word", "d0 e")

    assert result.exit_code == 0
    assert report["objects"]["simplex"] == {"s": [], "g": "v"}
    assert report["objects"]["dimension"] == 0


def test_corpus(tmp_path) -> None:
    directory = str(tmp_path / "corpus")
    result, report = run_report(tmp_path, "corpus", "--output", directory, "--truncation", "2", "--up-to", "2")

    assert result.exit_code == 0
    assert "group_Z2.json" in report["objects"]["files"]
    assert "gspace_swap_Z3.json" not in report["objects"]["files"]
    assert os.path.exists(os.path.join(directory, "space_torus.json"))


def test_reports_are_deterministic(tmp_path) -> None:
    path = write_object(tmp_path, "z2.json", cyclic(2))
    args = ("loops", path, "--up-to", "2", "--truncation", "2")

    _, first = run_report(tmp_path, *args)
    _, second = run_report(tmp_path, *args)
    assert first == second
    assert "timing" not in first


def test_timing(tmp_path) -> None:
    _, report = run_report(tmp_path, "normalize", "--word", "x", "--timing")

    assert report["timing"] >= 0


def test_settings_from_environment(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("SEGAL_TRUNCATION", "2")

    _, report = run_report(tmp_path, "normalize", "--word", "x")
    assert report["job"]["settings"]["truncation"] == 2

    _, report = run_report(tmp_path, "normalize", "--word", "x", "--truncation", "3")
    assert report["job"]["settings"]["truncation"] == 3


def test_input_errors(tmp_path, monkeypatch) -> None:
    gspace = write_object(tmp_path, "swap.json", corpus.gspace("swap", cyclic(2), 2))

    assert run_cli("frobnicate").exit_code == 3
    assert run_cli("build", "--kind", "sphere").exit_code == 3
    assert run_cli("homology").exit_code == 3
    assert run_cli("homology", str(tmp_path / "missing.json")).exit_code == 3
    assert run_cli("straighten", gspace).exit_code == 3
    assert run_cli("normalize", "--word", "d9").exit_code == 3
    assert run_cli("homology", gspace, "--truncation", "42").exit_code == 3

    monkeypatch.setenv("SEGAL_BUDGET", "lots")
    assert run_cli("normalize", "--word", "x").exit_code == 3


def test_version() -> None:
    result = run_cli("--version")

    assert result.exit_code == 0
    assert PROJECT_VERSION in result.output


def test_settings_from_dotenv(tmp_path, monkeypatch) -> None:
    with open(".env", "w") as f:
        f.write("SEGAL_UP_TO=2\nSEGAL_EX_STAGE=0\n")
    monkeypatch.setenv("SEGAL_UP_TO", "1")

    _, report = run_report(tmp_path, "normalize", "--word", "x")
    assert report["job"]["settings"]["up_to"] == 2
    assert report["job"]["settings"]["ex_stage"] == 0


def test_internal_errors_are_not_input_errors(monkeypatch) -> None:
    def broken(self, job, inputs):
        raise ValueError("broken invariant")

    monkeypatch.setattr(Normalize, "run", broken)

    with pytest.raises(ValueError, match="broken invariant"):
        run_cli("normalize", "--word", "x")


def test_documents_with_simplex_records(tmp_path) -> None:
    circle = {
        "truncation": 3,
        "generators": [["v"], ["e"]],
        "faces": {"e": [{"s": [], "g": "v"}, {"s": [], "g": "v"}]},
    }
    path = write_document(tmp_path, "circle.json", circle)
    result, report = run_report(tmp_path, "homology", path)

    assert result.exit_code == 0
    assert report["objects"]["counts"] == [1, 1]
