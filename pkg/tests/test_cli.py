import json
import math
import subprocess
import sys

import numpy as np
import pytest

from silverink import synthetic as S
from silverink.cli import main
from silverink.halftone import bayer_matrix, clustered_matrix, dither
from silverink.imagery import load_pnm, save_pnm, write_pnm


@pytest.fixture
def files(tmp_path):
    rng = np.random.default_rng(5)
    cover = S.rgb([S.photo_like(72, 120, rng) for _ in range(3)])
    silver = S.silver_layer(72, 120, "radial", 0.5)
    save_pnm(tmp_path / "cover.ppm", cover)
    save_pnm(tmp_path / "silver.pgm", silver)
    return tmp_path, cover, silver


def test_hide_reveal_byte_identical(files, capsys):
    d, cover, silver = files
    assert main(["hide", "--cover", str(d / "cover.ppm"), "--silver", str(d / "silver.pgm"),
                 "--out", str(d / "marked.ppm"), "--channel", "R", "--matrix", "clustered"]) == 0
    hidden = json.loads(capsys.readouterr().out)
    assert hidden["channel"] == "R"
    assert main(["reveal", "--marked", str(d / "marked.ppm"), "--out-cover", str(d / "back.ppm"),
                 "--out-silver", str(d / "silver.pbm")]) == 0
    revealed = json.loads(capsys.readouterr().out)
    assert revealed == {"channel": "R", "matrix": "clustered", "payload_bits": hidden["payload_bits"]}
    assert (d / "back.ppm").read_bytes() == (d / "cover.ppm").read_bytes()
    assert (d / "silver.pbm").read_bytes() == write_pnm(dither(silver, clustered_matrix()))


def test_metrics(files, capsys):
    d, cover, silver = files
    main(["hide", "--cover", str(d / "cover.ppm"), "--silver", str(d / "silver.pgm"), "--out", str(d / "m.ppm")])
    bits = json.loads(capsys.readouterr().out)["payload_bits"]
    assert main(["metrics", "--a", str(d / "cover.ppm"), "--b", str(d / "m.ppm")]) == 0
    out = capsys.readouterr().out
    assert out.count("\n") == 1
    rep = json.loads(out)
    assert set(rep) == {"psnr_db", "mssim", "payload_bpp"}
    assert math.isfinite(rep["psnr_db"])
    assert rep["payload_bpp"] == pytest.approx(bits / (72 * 120))


def test_halftone_compress_decompress(files):
    d, cover, silver = files
    assert main(["halftone", "--in", str(d / "silver.pgm"), "--out", str(d / "s.pbm")]) == 0
    assert np.array_equal(load_pnm(d / "s.pbm"), dither(silver, bayer_matrix()))
    assert main(["compress", "--in", str(d / "s.pbm"), "--out", str(d / "s.bgr")]) == 0
    assert (d / "s.bgr").read_bytes()[:4] == b"BGR1"
    assert main(["decompress", "--in", str(d / "s.bgr"), "--out", str(d / "s2.pbm")]) == 0
    assert (d / "s2.pbm").read_bytes() == (d / "s.pbm").read_bytes()


def test_usage_error_exit_2(capsys):
    assert main(["hide", "--cover", "x"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["hide", "--cover", "a", "--silver", "b", "--out", "c", "--channel", "Q"]) == 2


def test_pipeline_error_exit_1(files, capsys):
    d, cover, silver = files
    assert main(["reveal", "--marked", str(d / "cover.ppm"), "--out-cover", str(d / "a.ppm"),
                 "--out-silver", str(d / "b.pbm")]) == 1
    err = capsys.readouterr().err.strip()
    assert err.count("\n") == 0
    assert "NoPayloadFound" in err


def test_missing_file_exit_1(tmp_path, capsys):
    assert main(["compress", "--in", str(tmp_path / "missing.pbm"), "--out", str(tmp_path / "x")]) == 1
    assert "FileNotFoundError" in capsys.readouterr().err


def test_wrong_kind_of_file(files, capsys):
    d, cover, silver = files
    assert main(["compress", "--in", str(d / "silver.pgm"), "--out", str(d / "x")]) == 1
    assert "P4" in capsys.readouterr().err


def test_module_entry_point(files):
    d, cover, silver = files
    proc = subprocess.run(
        [sys.executable, "-m", "silverink", "halftone", "--in", str(d / "silver.pgm"), "--out", str(d / "h.pbm")],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert (d / "h.pbm").exists()
