"""
Building assignment matrices
============================

Each scheme fills a k x n 0/1 matrix whose column j lists the tasks
handed to worker j. This walk-through draws one matrix per scheme and
prints the load statistics that tell them apart.
"""

import numpy as np

from gradcoding import CodeParams, generate

k = 24
s = 4
params = CodeParams(k=k, n=k, s=s)

# the replication scheme is deterministic: k/s groups of s tasks, each
# group copied onto s workers
frc = generate("frc", params)
print("frc column sums:", sorted(int(v) for v in frc.g.sum(axis=0)))
print("frc distinct columns:", len({tuple(col) for col in frc.g.T}))

# the Bernoulli scheme flips a coin per entry with probability s/k, so
# column sums only average to s
bgc = generate("bgc", params, seed=7)
print("bgc column sums:", sorted(int(v) for v in bgc.g.sum(axis=0)))

# the pruned variant rebuilds the same draw, then thins any column that
# came out heavier than 2s down to s
rbgc = generate("rbgc", params, seed=7)
print("rbgc column sums:", sorted(int(v) for v in rbgc.g.sum(axis=0)))
print("columns changed by pruning:", int((bgc.g != rbgc.g).any(axis=0).sum()))

# the regular-graph scheme pairs stubs until every vertex has exactly s
# distinct neighbors; rows and columns both sum to s
reg = generate("sregular", params, seed=7)
print("sregular column sums:", sorted(int(v) for v in reg.g.sum(axis=0)))
print("sregular symmetric:", bool((reg.g == reg.g.T).all()))
print("sregular diagonal empty:", not np.diag(reg.g).any())
