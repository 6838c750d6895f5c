import json
import subprocess
import sys

import jsonschema
import pydot
import pytest

from horocyclic import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ball_json(capsys, schema):
    code, out, _ = run(capsys, "ball", "--dl", "2", "2", "-r", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("ball"))
    assert len(doc["vertices"]) == 5 and len(doc["edges"]) == 4


def test_ball_deterministic(capsys):
    _, a, _ = run(capsys, "ball", "--dl", "2", "3", "-r", "3", "--format", "dot")
    _, b, _ = run(capsys, "ball", "--dl", "2", "3", "-r", "3", "--format", "dot")
    assert a == b


def test_ball_dot_parses(capsys):
    _, out, _ = run(capsys, "ball", "--dl", "2", "3", "-r", "2", "--format", "dot")
    _, js, _ = run(capsys, "ball", "--dl", "2", "3", "-r", "2", "--format", "json")
    doc = json.loads(js)
    (g,) = pydot.graph_from_dot_data(out)
    nodes = [n for n in g.get_nodes() if n.get_name()[1:].isdigit()]
    assert len(nodes) == len(doc["vertices"]) == 22
    assert len(g.get_edges()) == len(doc["edges"])
    ranks = g.get_subgraphs()
    assert ranks  # one rank group per level


def test_grandmother_interior_is_8_regular(capsys, schema):
    _, out, _ = run(capsys, "ball", "--grandmother", "2", "-r", "2")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("ball"))
    deg = {v["id"]: 0 for v in doc["vertices"]}
    for i, j in doc["edges"]:
        deg[i] += 1
        deg[j] += 1
    interior = [v["id"] for v in doc["vertices"] if v["dist"] <= 1]
    assert interior and all(deg[i] == 8 for i in interior)


def test_ball_errors(capsys):
    code, _, err = run(capsys, "ball", "--dl", "2", "2", "-r", "9")
    assert code == 2 and "RadiusTooLarge" in err
    with pytest.raises(SystemExit) as e:
        cli.main(["ball", "--dl", "2", "2", "-r", "1", "--format", "png"])
    assert e.value.code == 2


def test_ball_output_file(tmp_path, capsys):
    target = tmp_path / "ball.dot"
    assert cli.main(["ball", "--tree", "3", "-r", "2", "--format", "dot", "-o", str(target)]) == 0
    assert target.read_text().startswith('graph "T(3)"')


def test_dist_dl_neighbour(capsys, schema):
    code, out, _ = run(capsys, "dist", "dl", "0:,0:", "1:1,-1:")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("dist"))
    assert (doc["formula"], doc["oracle"]["value"], doc["gap"]) == (1, 1, 0)


def test_dist_tree(capsys, schema):
    _, out, _ = run(capsys, "dist", "tree", "0:11", "0:", "--p", "2")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("dist"))
    assert doc["formula"] == doc["oracle"]["value"] == 4


def test_dist_sol_pinched(capsys, schema):
    _, out, _ = run(capsys, "dist", "sol", "0,0,0", "0,0,1", "--p", "1", "--q", "1")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("dist"))
    assert f"{doc['formula']:.6f}" == "1.000000"
    assert (doc["oracle"]["lower"], doc["oracle"]["upper"]) == pytest.approx((1.0, 1.0))


def test_dist_ht(capsys, schema):
    _, out, _ = run(capsys, "dist", "ht", "0:@-1", "2:1^0.5@1")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("dist"))
    assert doc["oracle"]["name"] == "same-sheet" and doc["gap"] == 0
    _, out, _ = run(capsys, "dist", "ht", "1:@-1", "1:1@1")
    doc = json.loads(out)
    assert doc["oracle"]["name"] == "grid" and doc["gap"] < 1e-6


@pytest.mark.parametrize("argv,token", [
    (["dist", "dl", "0:,0:", "1:x,-1:"], "1:x"),
    (["dist", "tree", "0:19", "0:", "--p", "2"], "0:19"),
    (["dist", "sol", "0,0,0", "0,zz,1"], "zz"),
    (["dist", "ht", "0:1", "0:@1"], "0:1"),
    (["dist", "dl", "0:", "0:,0:"], "0:"),
])
def test_dist_parse_errors(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "ParseError" in err and repr(token) in err


def test_dist_rejects_fractional_tree_params(capsys):
    code, _, err = run(capsys, "dist", "dl", "0:,0:", "0:,0:", "--p", "2.5")
    assert code == 2


def test_verify_suites(capsys, schema):
    for suite in ("kpq", "lattice"):
        code, out, err = run(capsys, "verify", suite)
        doc = json.loads(out)
        jsonschema.validate(doc, schema("verify"))
        assert code == 0 and doc["passed"]
        assert "PASS" in err


def test_verify_bertacchi(capsys):
    code, out, _ = run(capsys, "verify", "bertacchi")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "unknown")
    assert code != 0 and "UnknownSuite" in err


def test_walk(capsys, schema):
    code, out, _ = run(capsys, "walk", "--dl", "2", "3", "-n", "10000", "-T", "200", "--seed", "7")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("walk"))
    assert code == 0 and doc["speed"] > 0.05
    _, out, _ = run(capsys, "walk", "--dl", "2", "2", "-n", "10000", "-T", "200", "--seed", "7")
    assert json.loads(out)["speed"] < 0.05
    _, out, _ = run(capsys, "walk", "--lamplighter", "2", "-n", "100", "-T", "5", "--seed", "1")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("walk"))
    assert doc["config"]["lamplighter"] is True


def test_walk_missing_seed(capsys):
    code, _, err = run(capsys, "walk", "--dl", "2", "2", "-n", "10")
    assert code == 2 and "MissingSeed" in err


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "horocyclic.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "level:digits" in r.stdout
