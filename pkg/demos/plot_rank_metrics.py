"""
Rank metrics from raw test ranks
================================

MR, MRR and Hits@k computed from the rank each test triple's true
entity received.
"""

import numpy as np

from kgedas import rank_metrics

ranks = [1, 3, 12]
print(rank_metrics.summary(ranks, ks=(1, 3, 10)))

# a synthetic run: ranks drawn from a heavy-tailed distribution
rng = np.random.default_rng(0)
many = rng.zipf(2.0, size=5000)
for name, value in rank_metrics.summary(many).items():
    print(f"{name:>7}: {value:.4f}")
