"""
Classifiers in the entropy triangle
===================================

Each confusion matrix becomes one point. A perfect classifier sits at the
apex, a classifier that ignores its input on the bottom side, and one that
always answers the same class half way along it.
"""
import sys
from pathlib import Path

import numpy as np

from entropy_triangle import PlotPoint, PlotSpec, cbet_from_confusion, classify_region, render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "gallery_output")
out.mkdir(exist_ok=True)

k = 3
confusions = {
    "perfect": np.eye(k) * 50,
    "random": np.ones((k, k)) * 50 / k,
    "constant": np.column_stack([np.full(k, 50.0), np.zeros((k, k - 1))]),
    "decent": np.array([[45, 4, 1], [6, 40, 4], [2, 8, 40]], dtype=float),
    "biased": np.array([[50, 0, 0], [30, 20, 0], [25, 5, 20]], dtype=float),
}

points = []
for n, (name, cm) in enumerate(confusions.items()):
    agg, (sk, skhat) = cbet_from_confusion(cm)
    print(f"{name:9s} {np.round(agg.as_tuple(), 3)}  {classify_region(agg)}")
    points.append(PlotPoint(agg, name, "filled-circle", ["#1f3b73", "#b8336a", "#2a9d8f",
                                                        "#e76f51", "#6a4c93"][n], name))

svg = render_svg(PlotSpec("Classifiers on 3 balanced classes", "aggregate", points))
(out / "classifiers.svg").write_text(svg)
print("wrote", out / "classifiers.svg")
