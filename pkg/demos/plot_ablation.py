"""
Leave-one-metric-out ablation
=============================

Drop one metric family at a time, re-weight the rest equally and see
how far each model moves.
"""

from kgedas import analysis, load_fixture_matrix

matrix = load_fixture_matrix("ablation")
table = analysis.ablation_table(matrix, ["MRR", "MR", "Hit@1"])

print(" ".join(f"{k:>10}" for k in table[0]))
for row in table:
    print(" ".join(f"{v:>10}" for v in row.values()))

# dropping metrics jointly is also possible
both = analysis.ablate(matrix, ["MRR", "Hit@1"])
print(both.removed_metric, "max change:", both.max_change)
