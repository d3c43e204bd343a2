class UnionFind:
    """Disjoint sets over hashable, mutually comparable labels.

    The representative of a class is always its least label, so the result
    does not depend on the order in which unions were performed.

    >>> uf = UnionFind(["c", "a", "b", "d"])
    >>> uf.union("c", "b")
    >>> uf.union("b", "a")
    >>> uf.find("c")
    'a'
    >>> uf.classes()
    [['a', 'b', 'c'], ['d']]
    """

    def __init__(self, labels=()):
        self.parent = {}
        for x in labels:
            self.add(x)

    def add(self, x):
        self.parent.setdefault(x, x)

    def __contains__(self, x):
        return x in self.parent

    def __len__(self):
        return len(self.parent)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        # keep the least label on top
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [sorted(groups[r]) for r in sorted(groups)]
