"""Corrupt node levels and watch the engine win them back.

Two recovery strategies are shown.  With the unique table intact, a probe
over the per-level subtables pins the level exactly for any single fault.
Without any table, a resilient-form diagram still recovers every level
from its children alone, even when many nodes are hit at once.
"""

import random

import resilient_obdd as ro
from resilient_obdd.faults import INDEX

rng = random.Random(7)

# an 8-variable function with a few hundred nodes
n = 8
truth = [rng.randint(0, 1) for _ in range(1 << n)]
d = ro.from_truth_table(n, truth)
table = d.store.table
print("reduced diagram:", ro.count_nodes(d), "nodes")

# --- single fault, unique table available -------------------------------
victim = ro.dfs_preorder(d, include_terminals=False)[5]
before = d.store.node(victim).index
overlay = ro.FaultOverlay(d.store)
ro.inject(d, overlay, victim, INDEX, rng)
print("node", victim, "level", before, "->", d.store.node(victim).index)

span = ro.node_range(d, victim)
print("neighbours alone narrow it to levels",
      list(range(span.lower, span.upper + 1)))

recovered = ro.reconstruct_index_ut(d, table, victim, overlay)
print("unique-table probe says", recovered, "- correct:", recovered == before)
overlay.restore()

# recovery cost across the whole diagram: how wide is each node's range
report = ro.cost_report(d)
print(f"mean range width over {report.node_count} nodes: {report.mean:.3f}")

# --- many faults, no table needed ---------------------------------------
ir = ro.ir_reduce(ro.build_qr(d))
internal = ro.dfs_preorder(ir, include_terminals=False)
print("resilient form:", len(internal), "nodes")

levels = {u: ir.store.node(u).index for u in internal}
overlay = ro.FaultOverlay(ir.store)
victims = rng.sample(internal, len(internal) // 2)
for u in victims:
    ro.inject(ir, overlay, u, INDEX, rng)
print("corrupted", len(victims), "of", len(internal), "levels")

for u in victims:
    if overlay.is_corrupt(u, INDEX):
        ro.index_reconstruct(ir, overlay, u)

exact = all(ir.store.node(u).index == levels[u] for u in internal)
print("all levels restored:", exact,
      "- child lookups used:", overlay.reconstruct_calls)
