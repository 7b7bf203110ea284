import csv
import logging

import numpy as np

from dcrecover.bench import HEADER, run_bench
from dcrecover.cli import main
from dcrecover.io import save_pgm


def test_constant_corpus(tmp_path):
    corpus = tmp_path / "c"
    corpus.mkdir()
    save_pgm(corpus / "flat.pgm", np.full((176, 176), 128))
    res = run_bench(sorted(corpus.iterdir()), ("uso", "frm-exhaustive", "frm-bracket"))
    assert len(res.records) == 3
    for metric in ("psnr", "ssim", "ms_ssim"):
        assert res.deltas("frm-exhaustive", metric) == [0.0]
        assert res.deltas("frm-bracket", metric) == [0.0]
    assert all(r.psnr == float("inf") for r in res.records)


def test_unreadable_file_skipped(tmp_path, camera, caplog):
    corpus = tmp_path / "c"
    corpus.mkdir()
    save_pgm(corpus / "a.pgm", camera[:176, :184])
    save_pgm(corpus / "b.pgm", camera[176:352, :184])
    (corpus / "broken.pgm").write_bytes(b"P5 8 8 255\n")
    (corpus / "odd.pgm").write_bytes(b"P5 12 8 255\n" + bytes(96))
    with caplog.at_level(logging.WARNING):
        res = run_bench(sorted(corpus.iterdir()), ("uso",))
    assert res.images == ["a.pgm", "b.pgm"]
    assert len(res.skipped) == 2
    assert sum("skipping" in r.message for r in caplog.records) == 2


def test_report_deterministic_and_formatted(tmp_path, camera):
    corpus = tmp_path / "c"
    corpus.mkdir()
    for i in range(2):
        save_pgm(corpus / f"img{i}.pgm", camera[i * 256:(i + 1) * 256, 128:384])
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.csv"
        assert main(["bench", "--corpus", str(corpus), "--out", str(out), "--plots", str(tmp_path / "p"),
                     "--methods", "uso,frm-exhaustive,frm-bracket"]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    text = outs[0].decode()
    assert text.endswith("\n") and not text.endswith("\n\n")
    rows = list(csv.reader(text.splitlines()))
    assert rows[0] == HEADER
    assert len(rows) == 1 + 2 * 3
    for row in rows[1:]:
        for field in row[2:]:
            assert field == "" or field == "inf" or len(field.split(".")[1]) == 6
    assert (tmp_path / "r0_summary.csv").exists()
    assert (tmp_path / "r0_timings.csv").exists()
    svgs = sorted(p.name for p in (tmp_path / "p").iterdir())
    assert "frm-exhaustive_vs_uso_ssim.svg" in svgs and len(svgs) == 6
    svg = (tmp_path / "p" / "frm-exhaustive_vs_uso_ssim.svg").read_text()
    assert svg.startswith("<svg") and "stroke-dasharray" in svg


def test_charts_handle_edge_cases():
    from dcrecover.svgplot import delta_chart, xy_chart
    svg = delta_chart([0.0, float("inf"), -0.5, 0.25], title="a<b")
    assert svg.count("<polyline") == 2 and "a&lt;b" in svg
    assert delta_chart([0.0, 0.0]).startswith("<svg")
    svg = xy_chart([0, 1, 2], [0.1, 0.0, 0.2], markers=[(1, "red", "x")])
    assert svg.rstrip().endswith("</svg>") and "stroke-dasharray" in svg
