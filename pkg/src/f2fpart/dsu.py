class RollbackDSU:
    """Union-find with union by size and an undo stack.

    No path compression, so every union can be undone in O(1); ``find`` is
    O(log n).  ``checkpoint``/``rollback`` bracket a block of unions the way a
    backtracking search brackets one decision.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self._history = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def connected(self, x, y):
        return self.find(x) == self.find(y)

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            self._history.append(None)
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self._history.append(ry)
        return True

    def checkpoint(self):
        return len(self._history)

    def rollback(self, mark):
        while len(self._history) > mark:
            ry = self._history.pop()
            if ry is None:
                continue
            rx = self.parent[ry]
            self.size[rx] -= self.size[ry]
            self.parent[ry] = ry
