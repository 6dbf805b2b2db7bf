#!/usr/bin/env python3
"""Recompute the tracking metrics of a `dcea run` output directory from
trace.csv alone and compare them with report.json. Exit status 0 on agreement."""
import csv, json, math, sys

run_dir = sys.argv[1]
rep = json.load(open(f"{run_dir}/report.json"))
rows = [r for r in csv.DictReader(l for l in open(f"{run_dir}/trace.csv") if not l.startswith("#"))]
col = lambda name: [float(r[name]) for r in rows]
t, tail = col("t"), rep["tail_start"] - rep["control_period"] / 2
ok = True
def same(label, mine, theirs):
    global ok
    good = theirs is not None and abs(mine - theirs) <= 1e-9 * max(1.0, abs(mine))
    ok &= good
    print(f"{'ok ' if good else 'BAD'} {label:32s} {mine:.12g} vs {theirs}")
sigma = [0.0] * len(rows)
for i, arm in enumerate(rep["arms"], 1):
    ex = [math.hypot(a - c, b - d) for a, b, c, d in zip(col(f"x{i}_x"), col(f"x{i}_y"), col("x0_x"), col("x0_y"))]
    ev = [math.hypot(a - c, b - d) for a, b, c, d in zip(col(f"xd{i}_x"), col(f"xd{i}_y"), col("v0_x"), col("v0_y"))]
    same(f"{arm['name']} position_error", max(e for s, e in zip(t, ex) if s >= tail), arm["position_error"])
    same(f"{arm['name']} velocity_error", max(e for s, e in zip(t, ev) if s >= tail), arm["velocity_error"])
    if arm["leader_reachable"]:
        est = [col(f"{s}{i}_{a}") for s in ("xh", "vh", "ah") for a in "xy"]
        ref = [col(f"{s}0_{a}") for s in ("x", "v", "a") for a in "xy"]
        for k in range(len(rows)):
            sigma[k] = max(sigma[k], max(abs(e[k] - r[k]) for e, r in zip(est, ref)))
k = len(rows)
while k > 0 and sigma[k - 1] < rep["settle_tolerance"]:
    k -= 1
same("observed_settle_time", t[k], rep["observed_settle_time"])
sys.exit(0 if ok else 1)
