import xml.etree.ElementTree as ET

import pytest

from emqubit.field import extract_chart, sample_field_lines
from emqubit.signal import Geometry, encode, to_field_model
from emqubit.svg import chart_svg, emit_chart_svg

NS = {"s": "http://www.w3.org/2000/svg"}


def picture(label, lines=6):
    model = to_field_model(encode(label), Geometry())
    chart = extract_chart(model)
    return chart, sample_field_lines(model, chart.region, lines)


def parse(text):
    return ET.fromstring(text.encode())


def markers(root):
    return [el for el in root.iter() if "equilibrium" in el.get("class", "")]


def test_even_chart_has_one_saddle_marker():
    chart, lines = picture("even")
    root = parse(chart_svg(chart, lines))
    (m,) = markers(root)
    assert m.get("class") == "equilibrium saddle"
    assert len(root.findall(".//s:polyline[@class='separatrix']", NS)) == len(chart.separatrices) == 4
    assert len(root.findall(".//s:polyline[@class='field-line']", NS)) > 0
    assert len(root.findall(".//s:circle[@class='conductor']", NS)) == 2
    assert root.find(".//s:line[@class='ground']", NS) is not None


def test_odd_chart_has_no_markers():
    chart, lines = picture("odd")
    root = parse(chart_svg(chart, lines))
    assert markers(root) == []
    assert root.findall(".//s:polyline[@class='separatrix']", NS) == []


def test_empty_chart_draws_conductors_only():
    chart, _ = picture("odd")
    root = parse(chart_svg(chart, []))
    assert root.findall(".//s:polyline", NS) == [] and markers(root) == []
    assert len(root.findall(".//s:circle[@class='conductor']", NS)) == 2


def test_output_is_byte_identical(tmp_path):
    chart, lines = picture("even")
    a = emit_chart_svg(chart, lines, tmp_path / "a.svg").read_bytes()
    chart, lines = picture("even")
    b = emit_chart_svg(chart, lines, tmp_path / "b.svg").read_bytes()
    assert a == b


def test_unwritable_path(tmp_path):
    chart, lines = picture("even", 0)
    with pytest.raises(OSError):
        emit_chart_svg(chart, lines, tmp_path / "no" / "x.svg")
