import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


import time
from fractions import Fraction

import pytest

BIG_N = 200_000
BIG_SEED = 20240611


@pytest.fixture(scope="session")
def big_sample():
    """One shared run of 2*10^5 draws at u = 1/2, q = 2: (records, stats, seconds)."""
    from glq.measure import MeasureParams
    from glq.sampler import SamplerConfig, SampleStats, sample_stream

    cfg = SamplerConfig(MeasureParams(Fraction(1, 2), 2), seed=BIG_SEED)
    t = time.perf_counter()
    stats = SampleStats()
    tableaux = {}
    heads = []
    for rec in sample_stream(cfg, BIG_N):
        stats.add(rec)
        key = rec.tableau.rows
        tableaux[key] = tableaux.get(key, 0) + 1
        heads.append(rec.coin_head_counts)
    return {"stats": stats, "tableaux": tableaux, "heads": heads,
            "seconds": time.perf_counter() - t, "n": BIG_N}
