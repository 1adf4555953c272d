"""Mini reconstruction-error sweep: MSE as the sensor budget grows.

A scaled-down version of the benchmark the harness runs by default
(there N = 100, K = 30, 100 trials). Twenty trials of a 40 x 8 Gaussian
instance are enough to see the two hallmark shapes: every curve falls as
sensors are added, and the frame-potential greedy sits well under random
at every budget.
"""

from framesense import ExperimentConfig, sweep_mse

cfg = ExperimentConfig(
    family="gaussian",
    n=40,
    k=8,
    l_values=(8, 12, 16, 20, 24),
    trials=20,
    algorithms=("framesense", "mse", "random"),
    master_seed=2,
)

table = sweep_mse(cfg)

print(f"mean MSE over {cfg.trials} trials, N = {cfg.n}, K = {cfg.k}\n")
algos = list(cfg.algorithms)
print(f"{'sensors':<10}" + "".join(f"{a:>12}" for a in algos))
means = {(row.algorithm, row.l): row.mse_mean for row in table.aggregates}
for l in cfg.l_values:
    cells = "".join(f"{means[a, l]:>12.4f}" for a in algos)
    print(f"{l:<10}{cells}")

print("""
The same run is available from the shell, with CSV and gnuplot output:

    framesense sweep-mse --config cfg.json --out results

where cfg.json holds the field values printed above.
""")
