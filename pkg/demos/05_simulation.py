"""Monte Carlo face counts compared against the analytic expectations.

Streams are keyed by the seed and the replication index, so the result does
not depend on the number of worker threads.
"""

from betapoly import geomsim

cloud = geomsim.sample_beta_ball(3, 0.0, 8, seed=7)
print("one cloud of 8 points in the 3-ball:", geomsim.face_counts(cloud).counts)
print("same cloud, LP oracle:               ", geomsim.face_counts_bruteforce(cloud).counts)

for model, params, n in [("cone", {"d": 3}, 6), ("beta", {"d": 2, "beta": 0.0}, 6), ("betaprime", {"d": 2, "beta": 2.0}, 5)]:
    rep = geomsim.run_experiment(model, params, n, 20_000, seed=1)
    print(f"\n{model} {params} n={n}")
    for k, (m, a, z) in enumerate(zip(rep.empirical_mean, rep.analytic, rep.z_score)):
        print(f"  f_{k}: empirical {m:.5f}  analytic {a:.5f}  z {z:+.2f}")
