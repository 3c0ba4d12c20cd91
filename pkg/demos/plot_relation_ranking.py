"""
Ranking embedding models across datasets
========================================

Load the bundled link-prediction leaderboard, fold its twenty
dataset/metric columns into one appraisal score, and print the ranking.
"""

from kgedas import evaluate, load_fixture_matrix

matrix = load_fixture_matrix("relation_prediction")
print(matrix.shape, "models x criteria")
print("cost columns:", [c.name for c in matrix.criteria if c.is_cost])

# every stage of the pipeline is kept on the breakdown
breakdown = evaluate(matrix)
for row in breakdown.rows():
    print(f"{row['Rank']:>2}  {row['model']:<9} M={row['M']:.4f}")

# the column averages are the reference point for every distance
j = matrix.criterion_names.index("FB15k-237/MRR")
print("FB15k-237/MRR average:", breakdown.averages[j])
