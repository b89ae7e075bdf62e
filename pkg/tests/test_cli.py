from click.testing import CliRunner

import pytest

from torcap.cli import cli, parse_chain, parse_polygon
from torcap.errors import ParseError


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, text):
    f = tmp_path / name
    f.write_text(text)
    return str(f)


SQUARE = "0 0\n1 0\n1 1\n0 1\n"
RECT_2x3 = "0 0\n2 0\n2 3\n0 3\n"
BALL_11_10 = "# slightly fat round ball\n0 11/10\n11/10 0\n"


def test_parse_polygon_comments_and_fractions():
    p = parse_polygon("# header\n0 0\n\n3/2 0  # inline\n0 5/3\n")
    assert len(p) == 3


def test_parse_polygon_rejects_decimals():
    with pytest.raises(ParseError, match="line 2"):
        parse_polygon("0 0\n1.5 0\n0 1\n")


def test_parse_polygon_rejects_wrong_arity():
    with pytest.raises(ParseError, match="line 1"):
        parse_polygon("0 0 1\n1 0\n0 1\n")


def test_parse_chain():
    omega = parse_chain("0 2\n1 1\n3 0\n")
    assert len(omega.chain) == 3


def test_capacities_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", RECT_2x3)
    res = runner.invoke(cli, ["capacities", poly, "--k-max", "3"])
    assert res.exit_code == 0
    assert res.output.splitlines() == ["0\t0", "1\t2", "2\t4", "3\t5"]


def test_capacities_decimal_column(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", "0 0\n1/2 0\n0 1/2\n")
    res = runner.invoke(cli, ["capacities", poly, "--k-max", "1", "--decimal"])
    assert res.exit_code == 0
    assert res.output.splitlines()[1] == "1\t1/2\t0.500000"


def test_ech_ellipsoid_command(runner):
    res = runner.invoke(cli, ["ech", "ellipsoid", "1", "2", "--k-max", "4"])
    assert res.exit_code == 0
    assert res.output.splitlines() == ["0\t0", "1\t1", "2\t2", "3\t2", "4\t3"]


def test_ech_convex_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", SQUARE)
    res = runner.invoke(cli, ["ech", "convex", poly, "--k-max", "2"])
    assert res.exit_code == 0
    assert res.output.splitlines() == ["0\t0", "1\t1", "2\t2"]


def test_ech_convex_rejects_non_domain(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", "1 1\n2 1\n1 2\n")
    res = runner.invoke(cli, ["ech", "convex", poly, "--k-max", "2"])
    assert res.exit_code == 2


def test_ech_concave_command(runner, tmp_path):
    chain = _write(tmp_path, "c.txt", "0 2\n1 0\n")
    res = runner.invoke(cli, ["ech", "concave", chain, "--k-max", "4"])
    assert res.exit_code == 0
    assert res.output.splitlines() == ["0\t0", "1\t1", "2\t2", "3\t2", "4\t3"]


def test_embed_obstructed_exit_code(runner, tmp_path):
    chain = _write(tmp_path, "c.txt", BALL_11_10)
    poly = _write(tmp_path, "p.txt", SQUARE)
    res = runner.invoke(cli, ["embed", chain, poly, "--k-max", "5"])
    assert res.exit_code == 1
    assert res.output.startswith("OBSTRUCTED\tk=1")


def test_embed_compatible_exit_code(runner, tmp_path):
    chain = _write(tmp_path, "c.txt", "0 2\n1 0\n")
    poly = _write(tmp_path, "p.txt", "0 0\n1 0\n1 2\n0 2\n")
    res = runner.invoke(cli, ["embed", chain, poly, "--k-max", "50"])
    assert res.exit_code == 0
    assert res.output.startswith("COMPATIBLE")


def test_width_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", RECT_2x3)
    res = runner.invoke(cli, ["width", poly, "--k-max", "10"])
    assert res.exit_code == 0
    assert res.output.split("\t")[0] == "2"


def test_lattice_width_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", RECT_2x3)
    res = runner.invoke(cli, ["lattice-width", poly])
    assert res.exit_code == 0
    assert res.output.strip() == "2\t1,0"


def test_transform_ip_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", "0 0\n2/3 0\n2/3 1/3\n0 1\n")
    res = runner.invoke(cli, ["transform-ip", poly, "--coeffs", "0,2,1,0"])
    assert res.exit_code == 0
    assert res.output.strip() == "0\t1\t1\t0"


def test_resolve_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", "0 0\n1 0\n0 2\n")
    res = runner.invoke(cli, ["resolve", poly])
    assert res.exit_code == 0
    assert "-1\t0" in res.output.splitlines()


def test_verify_calg_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", SQUARE)
    res = runner.invoke(cli, ["verify-calg", poly, "--k-max", "3", "--box", "6"])
    assert res.exit_code == 0
    assert all(line.endswith("OK") for line in res.output.splitlines())


def test_verify_sw_command(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", SQUARE)
    res = runner.invoke(cli, ["verify-sw", poly, "--k-max", "3", "--box", "6", "--threads", "2"])
    assert res.exit_code == 0
    assert all(line.endswith("OK") for line in res.output.splitlines())


def test_corpus_listing_round_trip(runner):
    res = runner.invoke(cli, ["corpus"])
    assert res.exit_code == 0
    names = res.output.split()
    assert len(names) == 10
    for name in names:
        dump = runner.invoke(cli, ["corpus", name])
        assert dump.exit_code == 0
        parse_polygon(dump.output)


def test_bad_file_exit_code(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", "0 0\n1 0.25\n0 1\n")
    res = runner.invoke(cli, ["capacities", poly, "--k-max", "1"])
    assert res.exit_code == 2
    missing = runner.invoke(cli, ["capacities", str(tmp_path / "nope.txt")])
    assert missing.exit_code == 2


def test_nonconvex_input_exit_code(runner, tmp_path):
    poly = _write(tmp_path, "p.txt", "0 0\n0 1\n1 0\n")
    res = runner.invoke(cli, ["capacities", poly, "--k-max", "1"])
    assert res.exit_code == 2
