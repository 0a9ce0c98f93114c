"""Run the fault-tolerant apply and reduction end to end.

The resilient apply never trusts its memo table or its operands' levels:
memo entries flagged as corrupt are recomputed, and operand levels flagged
as corrupt are rebuilt from children the first time they are read.  The
raw product is then canonicalized by the reduction pipeline.
"""

import random

import resilient_obdd as ro
from resilient_obdd.faults import INDEX

rng = random.Random(20240100)
n = 6

bits_f = [rng.randint(0, 1) for _ in range(1 << n)]
bits_g = [rng.randint(0, 1) for _ in range(1 << n)]
f = ro.ir_reduce(ro.build_qr(ro.from_truth_table(n, bits_f)))
g = ro.ir_reduce(ro.build_qr(ro.from_truth_table(n, bits_g)))
print("operands:", ro.count_nodes(f), "and", ro.count_nodes(g), "nodes")

# corrupt three levels in f before the computation even starts
overlay = ro.FaultOverlay(f.store)
for u in rng.sample(ro.dfs_preorder(f, include_terminals=False), 3):
    ro.inject(f, overlay, u, INDEX, rng)
print("injected", len(overlay), "level faults into f")

# a memo table that silently corrupts 30% of its entries
memo = ro.MemoTable(fault_rng=random.Random(1), fault_rate=0.3)

raw = ro.resilient_apply(ro.XOR, f, g, overlays=overlay, memo=memo)
print("raw product:", ro.count_nodes(raw), "nodes")
print("memo: %d hits, %d corrupted entries, %d hits lost to corruption"
      % (memo.hits, memo.corrupted_total, memo.lost_hits))
print("operand faults repaired during the run:", overlay.reconstruct_calls,
      "- overlay now empty:", len(overlay) == 0)

result = ro.reduction_procedure(raw)
print("canonical resilient result:", ro.count_nodes(result), "nodes")

# compare with a clean run on the hash-consing engine
clean = ro.ir_reduce(ro.build_qr(ro.apply(ro.XOR, f, g)))
print("matches the clean route:", ro.isomorphic(result, clean))

want = [a ^ b for a, b in zip(bits_f, bits_g)]
print("truth table correct:", ro.truth_table(result) == want)
