# Character-table facts frozen into tests/test_group.cpp, computed with sympy.
from sympy.combinatorics.named_groups import DihedralGroup, SymmetricGroup, CyclicGroup
from sympy.combinatorics.group_constructs import DirectProduct

for name, G in [("S3", SymmetricGroup(3)), ("D4", DihedralGroup(4)), ("Z3", CyclicGroup(3)),
                ("Z2xZ2", DirectProduct(CyclicGroup(2), CyclicGroup(2)))]:
    classes = sorted(len(c) for c in G.conjugacy_classes())
    print(name, "order", G.order(), "class sizes", classes, "center", G.center().order())
