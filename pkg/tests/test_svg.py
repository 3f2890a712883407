import re

import pytest

from detroc import RocCurve, RocPoint, ThresholdGrid, emit_svg, roc_curve


def test_seven_curves_plus_diagonal(schemes, high_high, tmp_path):
    grid = ThresholdGrid(samples=41)
    labeled = [
        (name, roc_curve(scheme, high_high, grid)) for name, scheme in schemes.items()
    ]
    path = tmp_path / "all.svg"
    emit_svg(labeled, path, title="high-high")
    text = path.read_text()
    assert text.startswith("<?xml")
    assert 'version="1.1"' in text
    assert text.count("<polyline") == 7
    assert text.count("stroke-dasharray") == 1  # one reference diagonal
    assert "FPR" in text and "TPR" in text
    assert "xlink" not in text and "href" not in text  # self-contained


def test_legend_carries_auc_to_three_decimals(schemes, high_high, tmp_path):
    curve = roc_curve(schemes["dictator"], high_high, ThresholdGrid(samples=41))
    path = tmp_path / "one.svg"
    emit_svg([("dictator", curve)], path)
    assert "dictator (AUC=0.879)" in path.read_text()


def test_diagonal_curve_coincides_with_reference(tmp_path):
    curve = RocCurve((RocPoint(0.0, 0.0, 5.0), RocPoint(1.0, 1.0, 0.0)), "exact", True)
    path = tmp_path / "diag.svg"
    emit_svg([("random", curve)], path)
    text = path.read_text()
    polyline = re.search(r'<polyline points="([^"]+)"', text).group(1)
    diagonal = re.search(
        r'<line x1="([\d.]+)" y1="([\d.]+)" x2="([\d.]+)" y2="([\d.]+)" '
        r'stroke="#999999"', text
    )
    x1, y1, x2, y2 = (float(v) for v in diagonal.groups())
    first, last = polyline.split()
    assert tuple(float(v) for v in first.split(",")) == (x1, y1)
    assert tuple(float(v) for v in last.split(",")) == (x2, y2)


def test_empty_curve_list_rejected(tmp_path):
    with pytest.raises(ValueError, match="no curves"):
        emit_svg([], tmp_path / "x.svg")
