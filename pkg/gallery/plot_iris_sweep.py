"""
How many principal components does Iris need?
=============================================

Log-transform the four Iris measurements, rank PCA components by variance
and keep the top i of them. The information the kept components carry about
the original features grows with i, but the share of the components' own
entropy that is explained shrinks, and the aggregate peaks early.
"""
import sys
from pathlib import Path

from entropy_triangle import pipeline, render_svg
from entropy_triangle.pipeline import RunConfig

out = Path(sys.argv[1] if len(sys.argv) > 1 else "gallery_output")
out.mkdir(exist_ok=True)

for transform in ("log+pca", "log+ica"):
    rows, spec, err = pipeline.sweep(RunConfig(builtin="iris", transform=transform))
    if err is not None:
        raise err
    print(transform)
    print("  i   I (bits)   X: DeltaH'   Y: I'    XY: 2I'")
    for i in range(1, 5):
        x, y, xy = [r for r in rows if r["i"] == i]
        print(f"  {i}   {xy['Info_bits']:.3f}      {x['DeltaH_prime']:.4f}      "
              f"{y['Info_prime']:.3f}    {xy['Info_prime']:.3f}")
    name = transform.replace("+", "_")
    (out / f"iris_{name}.svg").write_text(render_svg(spec))
    (out / f"iris_{name}.csv").write_text(pipeline.format_report(rows))
