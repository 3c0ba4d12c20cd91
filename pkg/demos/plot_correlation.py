"""
How well does the appraisal score track single metrics?
=======================================================

Correlate M with the cross-dataset mean of a metric and with a single
column, then write a scatter plot.
"""

import tempfile
from pathlib import Path

from kgedas import analysis, evaluate, load_fixture_matrix
from kgedas.svg import scatter_svg

matrix = load_fixture_matrix("relation_prediction")
breakdown = evaluate(matrix)

for target in ["mean:MRR", "mean:Hit@1", "FB15k-237/Hit@10", "FB15k-237/MR"]:
    rep = analysis.correlate(matrix, breakdown, target)
    print(f"{rep.pair_label:<28} r={rep.pearson_r:+.4f} (p={rep.pearson_p:.4f})"
          f"  tau={rep.kendall_tau:+.4f} (p={rep.kendall_p:.4f})")

# MR is a cost metric, so its correlation with M comes out negative

label, xs = analysis.resolve_spec(matrix, breakdown, "mean:MRR")
svg = scatter_svg(matrix.model_names, xs, breakdown.appraisal, label, "EDAS M")
out = Path(tempfile.gettempdir()) / "m_vs_mean_mrr.svg"
out.write_text(svg)
print("wrote", out)
