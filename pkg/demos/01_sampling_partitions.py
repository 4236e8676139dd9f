"""
Drawing partitions with the tableau algorithm
=============================================

Coin i lands heads with probability u/q^i; every head adds one cell to a
growing Young diagram.  Here we draw a batch at u = 1/2, q = 2 and set the
observed size and row-count histograms beside the exact law.
"""

from fractions import Fraction

import numpy as np

from glq.measure import MeasureParams, normalized_weight
from glq.partition import enumerate_partitions
from glq.sampler import SamplerConfig, collect_stats, sample_stream

params = MeasureParams(Fraction(1, 2), 2)
cfg = SamplerConfig(params, seed=2024)

# a few raw draws: partition and the tableau recording creation order
for rec in sample_stream(cfg, 5):
    print(rec.to_jsonl())

N = 20_000
stats = collect_stats(sample_stream(cfg, N))

# exact P(|lam| = n): prefactor times the sum of rational weights of size n
pref = float(params.prefactor(Fraction(1, 10**12)).midpoint)
sizes = np.arange(8)
exact = np.array([pref * float(sum(normalized_weight(lam, params)
                                   for lam in enumerate_partitions(n, size=n)))
                  for n in sizes])
observed = np.array([stats.size[n] / N for n in sizes])

print("\n n   observed   exact")
for n, o, e in zip(sizes, observed, exact):
    print(f"{n:2d}   {o:.4f}     {e:.4f}")
print("max abs deviation", np.abs(observed - exact).max())

# h-statistics given two rows behave like independent geometric counts
for m, (count, mean, se) in enumerate(stats.h_moments(2), start=1):
    p = 0.5 / 2 ** m
    print(f"h_{m}: mean {mean:.4f} +- {se:.4f}  (geometric mean {p / (1 - p):.4f})")
