"""Delta-doubling transitive closure on a chain and a cycle."""

from rors import transitive_closure

chain = {(i, i + 1) for i in range(64)}
closed = transitive_closure(chain)
# 65 nodes in a line reach every later node: 64 * 65 / 2 pairs
print(len(closed), "pairs after", transitive_closure.last_rounds, "rounds")

ring = {(i, (i + 1) % 5) for i in range(5)}
print(sorted(transitive_closure(ring))[:7], "...")
print(len(transitive_closure(ring)), "= 5 * 5, every node reaches every node")
