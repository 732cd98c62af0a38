"""Write SVG pictures of the mode charts and of a two-lobe cavity field."""
import argparse
from pathlib import Path

from emqubit.field import Box, ResonatorModel, extract_chart, sample_field_lines
from emqubit.field.chart import ChartOptions
from emqubit.signal import Geometry, encode, to_field_model
from emqubit.svg import emit_chart_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results/charts"))
    ap.add_argument("--lines", type=int, default=16)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for ground in (True, False):
        geo = Geometry(ground=ground)
        for label in ("even", "odd", "plus", "minus"):
            model = to_field_model(encode(label), geo)
            chart = extract_chart(model)
            lines = sample_field_lines(model, chart.region, args.lines)
            path = emit_chart_svg(chart, lines, args.out / f"{label}_{'ground' if ground else 'free'}.svg")
            print(f"{path}: {chart.class_label}")

    cavity = ResonatorModel(2.0, 1.0, {(2, 1): 1.0})
    chart = extract_chart(cavity, cavity.default_region(), ChartOptions(strict=False))
    lines = sample_field_lines(cavity, chart.region, args.lines)
    path = emit_chart_svg(chart, lines, args.out / "cavity_2_1.svg")
    print(f"{path}: {chart.class_label}")


if __name__ == "__main__":
    main()
