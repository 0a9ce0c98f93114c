"""Build one Boolean function three ways and compare the reduction regimes.

The function is the 3-input majority vote.  A fully reduced diagram is the
smallest, a quasi-reduced diagram keeps one node per level on every path,
and the resilient form sits in between: as small as possible while every
node's level stays recoverable from its children.
"""

from pathlib import Path

import resilient_obdd as ro

n = 3
truth = [1 if bin(k).count("1") >= 2 else 0 for k in range(1 << n)]

reduced = ro.from_truth_table(n, truth)
quasi = ro.build_qr(reduced)
resilient = ro.ir_reduce(quasi)

print("majority of three, node counts (terminals excluded)")
print("  fully reduced :", ro.count_nodes(reduced))
print("  quasi-reduced :", ro.count_nodes(quasi))
print("  resilient     :", ro.count_nodes(resilient))

# all three agree on every assignment
for k in range(1 << n):
    bits = tuple((k >> (n - 1 - i)) & 1 for i in range(n))
    assert ro.evaluate(reduced, bits) == truth[k]
    assert ro.evaluate(quasi, bits) == truth[k]
    assert ro.evaluate(resilient, bits) == truth[k]
print("all 2^n evaluations agree across the three regimes")

# the same function assembled from literals with apply
store, table = ro.new_consed_store(n)
x0 = ro.Diagram(store, ro.mk_node(store, table, 0, ro.TERM0, ro.TERM1))
x1 = ro.Diagram(store, ro.mk_node(store, table, 1, ro.TERM0, ro.TERM1))
x2 = ro.Diagram(store, ro.mk_node(store, table, 2, ro.TERM0, ro.TERM1))
by_apply = ro.apply(ro.OR,
                    ro.apply(ro.OR,
                             ro.apply(ro.AND, x0, x1),
                             ro.apply(ro.AND, x0, x2)),
                    ro.apply(ro.AND, x1, x2))
print("apply route isomorphic to truth-table route:",
      ro.isomorphic(by_apply, reduced))

# the resilient form is canonical too: any construction order lands on it
again = ro.reduction_procedure(by_apply)
print("resilient form canonical:", ro.isomorphic(again, resilient))

out = Path(__file__).with_suffix(".dot")
out.write_text(ro.export_dot(resilient, name="majority3_ir"))
print("wrote", out.name, "(render with: dot -Tpng)")
