# Cycle and path counts frozen into tests/test_lattice.cpp, computed with networkx.
import networkx as nx

K4 = nx.complete_graph(4)
print("K4 simple cycles", len(list(nx.simple_cycles(K4))))
C6 = nx.cycle_graph(6)
print("C6 simple cycles", len(list(nx.simple_cycles(C6))))
tp = nx.Graph([(0, 1), (1, 2), (0, 2), (3, 0)])
print("pendant paths 1->3", len(list(nx.all_simple_paths(tp, 1, 3))))
# ladder of two squares with NGC ends on 0 and 5
lad = nx.Graph([(1, 2), (2, 3), (3, 4), (4, 1), (2, 6), (6, 7), (7, 3), (0, 1), (4, 5)])
print("ladder cycles avoiding 0,5", len(list(nx.simple_cycles(lad.subgraph([1, 2, 3, 4, 6, 7])))))
print("ladder ngc lines 0->5", len(list(nx.all_simple_paths(lad, 0, 5))))
