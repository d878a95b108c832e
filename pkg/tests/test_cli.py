import numpy as np

import julialimit as jl
from julialimit.cli import main


def run(*argv):
    return main(list(argv))


def test_render_julia_writes_pgm(tmp_path):
    out = tmp_path / "k.pgm"
    code = run("render-julia", "--q", "0.25+0.25i", "--n", "60",
               "--grid", "96", "--out", str(out))
    assert code == 0
    values, window, vocab = jl.read_pgm(out)
    assert values.shape == (96, 96)
    assert window == (-1.5, 1.5, -1.5, 1.5)
    assert vocab == "julia"
    inside_frac = (values == 0).mean()
    assert abs(inside_frac - np.pi / 9) < 0.05


def test_render_julia_deterministic_bytes(tmp_path):
    a = tmp_path / "a.pgm"
    b = tmp_path / "b.pgm"
    args = ("render-julia", "--q", "0.3,0,1", "--n", "15", "--grid", "64")
    assert run(*args, "--out", str(a)) == 0
    assert run(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_render_kinf_negative_leading_coefficient(tmp_path):
    out = tmp_path / "kinf.pgm"
    code = run("render-kinf", "--q", "-0.1+0.75i,0,1", "--grid", "128",
               "--out", str(out))
    assert code == 0
    values, _, vocab = jl.read_pgm(out)
    assert vocab == "limit"
    assert (values == 0).any() and (values == 255).any()


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run("sweep", "--q", "0.25+0.25i", "--target", "disk",
               "--n", "10,20", "--grid", "96", "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,d_hausdorff,target,grid,runtime_ms"
    assert len(lines) == 3
    assert lines[1].split(",")[0] == "10"


def test_sweep_kinf_figure_schedule(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run("sweep", "--q", "-0.1+0.75i,0,1", "--target", "kinf",
               "--n", "6,12,25,50", "--grid", "128", "--max-iter", "100",
               "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().splitlines()
    ds = [float(line.split(",")[1]) for line in lines[1:]]
    assert len(ds) == 4


def test_fixed_points_csv(tmp_path, capsys):
    code = run("fixed-points", "--q", "0.25+0.25i,0,1", "--n", "16")
    assert code == 0
    outlines = capsys.readouterr().out.strip().splitlines()
    assert outlines[0] == "re,im,modulus,arg"
    assert len(outlines) == 1 + 16 + 1
    assert outlines[-1].startswith("# stats: annulus_fraction=")


def test_classify_record(capsys):
    code = run("classify", "--q", "0.41+0.047i,0,0.75")
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("regime=KInfinityCandidate ")
    assert "note:" in out


def test_cycle_with_refinement(capsys):
    code = run("cycle", "--q", "-0.1+0.75i,0,1", "--z0", "0", "--n", "100")
    assert code == 0
    out = capsys.readouterr().out
    assert "cycle period=3 stability=Attracting" in out
    assert "refined n=100 period=3 stability=Attracting" in out


def test_distance_between_masks(tmp_path, capsys):
    a = tmp_path / "a.pgm"
    b = tmp_path / "b.pgm"
    assert run("render-julia", "--q", "0", "--n", "2", "--grid", "64",
               "--window", "-2,2,-2,2", "--out", str(a)) == 0
    assert run("render-julia", "--q", "0.25+0.25i", "--n", "20", "--grid", "64",
               "--window", "-2,2,-2,2", "--out", str(b)) == 0
    assert run("distance", "--a", str(a), "--b", str(b)) == 0
    out = capsys.readouterr().out
    d = float(out.split("=")[1])
    assert 0 < d < 0.5
    assert run("distance", "--a", str(a), "--b", str(a)) == 0
    assert float(capsys.readouterr().out.split("=")[1]) == 0.0


def test_usage_errors_exit_2(tmp_path, capsys):
    assert run("render-julia", "--q", "oops") == 2
    assert run("render-julia", "--window", "1,2,3") == 2
    assert run("nonsense-command") == 2
    assert run("sweep", "--n", "50,10", "--grid", "32",
               "--out", str(tmp_path / "x.csv")) == 2
    capsys.readouterr()


def test_numerical_failures_exit_3(tmp_path, capsys):
    # circle-regime raster at the default budget is empty
    code = run("sweep", "--q", "1.5", "--target", "circle", "--n", "200",
               "--grid", "48", "--out", str(tmp_path / "c.csv"))
    assert code == 3
    # refinement of the boundary-touching 2-cycle cannot succeed
    code = run("cycle", "--q", "-1,0,1", "--z0", "0.1", "--n", "200")
    assert code == 3
    capsys.readouterr()


def test_config_roundtrip(tmp_path):
    cfg = tmp_path / "run.cfg"
    a = tmp_path / "a.pgm"
    b = tmp_path / "b.pgm"
    assert run("render-julia", "--q", "0.25+0.25i", "--n", "25", "--grid", "64",
               "--out", str(a), "--dump-config", str(cfg)) == 0
    text = cfg.read_text()
    assert "command=render-julia" in text and "n=25" in text
    assert run("render-julia", "--config", str(cfg), "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("command=render-julia\nbogus=1\n")
    assert run("render-julia", "--config", str(cfg)) == 2
    capsys.readouterr()


def test_config_command_mismatch(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("command=sweep\n")
    assert run("render-julia", "--config", str(cfg)) == 2
    capsys.readouterr()


def test_threads_env_does_not_change_bytes(tmp_path, monkeypatch):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("JULIA_LIMIT_THREADS", threads)
        path = tmp_path / f"t{threads}.pgm"
        assert run("render-julia", "--q", "0.25+0.25i", "--n", "30",
                   "--grid", "96", "--out", str(path)) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
