import json
import math
import re

import pytest

from flushtri import cli
from flushtri.polygon import validate
from flushtri.solver import rotate_and_kill

from conftest import Q4_VERTS

Q4_JSON = {"vertices": [[float(x), float(y)] for x, y in Q4_VERTS]}


def write_q4(tmp_path, name="q4.json"):
    path = tmp_path / name
    path.write_text(json.dumps(Q4_JSON))
    return str(path)


def test_solve_q4_linear(tmp_path, capsys):
    rc = cli.main(["solve", write_q4(tmp_path), "--algo", "linear"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mft"]["edges"] == [1, 2, 4]
    assert doc["mft"]["area"] == pytest.approx(55.0, rel=1e-12)
    assert doc["stats"]["iterations"] >= 1


def test_solve_brute_matches_linear(tmp_path, capsys):
    path = write_q4(tmp_path)
    docs = {}
    for algo in ("brute", "linear"):
        assert cli.main(["solve", path, "--algo", algo]) == 0
        docs[algo] = json.loads(capsys.readouterr().out)
    assert docs["brute"]["mft"]["edges"] == docs["linear"]["mft"]["edges"]
    assert docs["brute"]["mft"]["corners"] == docs["linear"]["mft"]["corners"]


def test_solve_square_exits_2(tmp_path, capsys):
    path = tmp_path / "square.json"
    path.write_text(json.dumps({"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]}))
    rc = cli.main(["solve", str(path)])
    assert rc == cli.EXIT_INVALID_INPUT
    assert "parallel" in capsys.readouterr().err


def test_solve_emit_candidates_deterministic(tmp_path, capsys):
    path = write_q4(tmp_path)
    outs = []
    for _ in range(2):
        assert cli.main(["solve", path, "--emit-candidates"]) == 0
        doc = json.loads(capsys.readouterr().out)
        doc.pop("wall_time_s")
        outs.append(doc)
    assert outs[0] == outs[1]
    assert any(c["three_stable"] for c in outs[0]["candidates"])


def test_plain_text_format(tmp_path, capsys):
    path = tmp_path / "tri.txt"
    path.write_text("# triangle\n0 0\n1 3\n2 -1\n")
    rc = cli.main(["solve", str(path)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mft"]["edges"] == [1, 2, 3]


def test_polygon_file_roundtrip_full_precision(tmp_path):
    verts = [(1 / 3, 2 / 7), (math.pi, 1e-17 + 5), (2.5, -1.000000000000004)]
    path = tmp_path / "p.json"
    cli.write_polygon_file(str(path), verts, {"seed": 1})
    back, meta = cli.read_polygon_file(str(path))
    assert back == [tuple(v) for v in verts]
    assert meta == {"seed": 1}


def test_generate_roundtrip_and_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        assert cli.main(["generate", "--n", "200", "--seed", "9",
                         "--out", str(out)]) == 0
        capsys.readouterr()
    assert out1.read_text() == out2.read_text()
    verts, meta = cli.read_polygon_file(str(out1))
    assert meta["seed"] == 9
    poly = validate(verts)
    assert poly.n == 200


def test_mft_seed_env(monkeypatch):
    monkeypatch.setenv("MFT_SEED", "123")
    assert cli.default_seed() == 123
    monkeypatch.setenv("MFT_SEED", "junk")
    assert cli.default_seed() == 0


def test_verify_random_ok(capsys):
    rc = cli.main(["verify", "--random", "12", "42", "8"])
    assert rc == 0
    assert "8/8 OK" in capsys.readouterr().out


def test_verify_q4_file(tmp_path, capsys):
    rc = cli.main(["verify", write_q4(tmp_path)])
    assert rc == 0
    assert "1/1 OK" in capsys.readouterr().out


def test_verify_detects_corruption(tmp_path, capsys, monkeypatch):
    # negative control: doctor one algorithm's answer and expect a nonzero exit
    import flushtri.cli as cli_mod

    real = cli_mod.rotate_and_kill

    def doctored(poly, criterion="linear", record=True):
        rep = real(poly, criterion, record)
        if criterion == "logn":
            from dataclasses import replace

            bad_area = type(rep.mft.area)(rep.mft.area.value * 1.5, False)
            rep = cli_mod.SolverReport(
                algorithm=rep.algorithm,
                n=rep.n,
                anchor=rep.anchor,
                mft=replace(rep.mft, area=bad_area),
                candidates=rep.candidates,
                stats=rep.stats,
            )
        return rep

    monkeypatch.setattr(cli_mod, "rotate_and_kill", doctored)
    monkeypatch.chdir(tmp_path)
    rc = cli_mod.main(["verify", write_q4(tmp_path)])
    out = capsys.readouterr().out
    assert rc == cli.EXIT_MISMATCH
    assert "FAIL" in out
    dumps = list(tmp_path.glob("mft-failing-*.json"))
    assert dumps, "failing instance should be dumped"


def test_svg_output(tmp_path, q4):
    report = rotate_and_kill(q4, "linear")
    svg = cli.render_svg(q4, report)
    assert svg.count("<path") == 2
    assert 'class="polygon"' in svg and 'class="mft"' in svg
    # geometric containment in svg coordinates: polygon points inside the
    # triangle (affine map preserves containment)
    tri_pts = [
        tuple(map(float, m.split(",")))
        for m in re.findall(r"[\d.]+,[\d.]+", svg.split('class="mft"')[1].split('d="')[1].split('"')[0])
    ]
    poly_pts = [
        tuple(map(float, m.split(",")))
        for m in re.findall(r"[\d.]+,[\d.]+", svg.split('class="polygon"')[1].split('d="')[1].split('"')[0])
    ]
    assert len(tri_pts) == 3 and len(poly_pts) == 4

    def inside(p, tri):
        # coordinates in the file carry 3 decimals, so cross products on an
        # 800px canvas wobble by a few px^2 for points on the boundary
        (ax, ay), (bx, by), (cx, cy) = tri
        d1 = (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax)
        d2 = (cx - bx) * (p[1] - by) - (cy - by) * (p[0] - bx)
        d3 = (ax - cx) * (p[1] - cy) - (ay - cy) * (p[0] - cx)
        eps = 5.0
        neg = (d1 < eps) and (d2 < eps) and (d3 < eps)
        pos = (d1 > -eps) and (d2 > -eps) and (d3 > -eps)
        return neg or pos

    for p in poly_pts:
        assert inside(p, tri_pts)


def test_svg_via_cli(tmp_path, capsys):
    svg_path = tmp_path / "out.svg"
    rc = cli.main(["solve", write_q4(tmp_path), "--svg", str(svg_path)])
    assert rc == 0
    capsys.readouterr()
    assert svg_path.read_text().startswith("<svg")


def test_bench_csv(tmp_path, capsys):
    csv_path = tmp_path / "bench.csv"
    rc = cli.main([
        "bench", "--sizes", "64,128", "--seeds", "2",
        "--algos", "linear,logn", "--csv", str(csv_path),
    ])
    assert rc == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "size,algo,seed,wall_ns,iterations,pointer_advances"
    assert len(lines) == 1 + 2 * 2 * 2
    for line in lines[1:]:
        size, algo, seed, wall, iters, adv = line.split(",")
        assert int(iters) <= 2 * int(size)
    out = capsys.readouterr().out
    assert "wall(128)/wall(64)" in out


def test_bench_rejects_unsorted_sizes(capsys):
    rc = cli.main(["bench", "--sizes", "128,64"])
    assert rc == cli.EXIT_INVALID_INPUT


def test_solve_perturb_flag(tmp_path, capsys):
    path = tmp_path / "col.json"
    path.write_text(json.dumps({"vertices": [[0, 0], [1, 0], [2, 0], [1, 1]]}))
    assert cli.main(["solve", str(path)]) == cli.EXIT_INVALID_INPUT
    capsys.readouterr()
    rc = cli.main(["solve", str(path), "--perturb"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mft"]["area"] > 0


def test_report_json_roundtrip(q4):
    report = rotate_and_kill(q4, "linear")
    doc = cli.report_to_dict(report, emit_candidates=True)
    back = json.loads(json.dumps(doc))
    assert back == doc
    # report area must equal recomputation from its corners
    (ax, ay), (bx, by), (cx, cy) = doc["mft"]["corners"]
    shoelace = 0.5 * abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    assert shoelace == pytest.approx(doc["mft"]["area"], rel=1e-9)


def test_solve_brute_cap_exit_code(tmp_path, capsys):
    from flushtri.polygon import generate_random

    poly = generate_random(300, 3)
    path = tmp_path / "big.json"
    cli.write_polygon_file(str(path), zip(poly.xs, poly.ys))
    rc = cli.main(["solve", str(path), "--algo", "brute"])
    assert rc == cli.EXIT_TOO_LARGE


def test_verify_instance_handles_symmetric_ties():
    # regular polygons maximize equal-area ties: several 3-stable triangles
    # share one pair, and the sweep emits one representative per pair
    import numpy as np

    from flushtri.cli import verify_instance
    from flushtri.polygon import validate

    for n in (5, 7, 11, 13):
        ang = 2 * np.pi * np.arange(n) / n
        pts = np.column_stack([np.cos(ang), -np.sin(ang)])
        assert verify_instance(validate(pts)) == []
