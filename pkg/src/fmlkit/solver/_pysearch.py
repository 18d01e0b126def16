"""Pure-Python search kernel.

Depth-first over variables in declaration order, values in domain order.
Each constraint is tested when the last variable of its scope is assigned.
Dead ends backjump to the most recent variable in the conflict set
(conflict-directed backjumping); subtrees that produced a solution are left
chronologically, so the sequence of solutions is exactly that of plain
chronological backtracking.
"""

from operator import itemgetter


def _tester(pred, scope):
    if len(scope) == 1:
        (a,) = scope
        return lambda v: pred(v[a])
    get = itemgetter(*scope)
    return lambda v: pred(*get(v))


class Search:
    """Iterate solutions as tuples of value indices.

    ``checks[i]`` lists ``(scope_positions, predicate)`` pairs whose highest
    scope position is ``i``. Counters mirror the native kernel exactly.
    """

    def __init__(self, domains, checks):
        self.domains = [tuple(d) for d in domains]
        self.levels = [
            [(_tester(pred, scope), frozenset(scope)) for scope, pred in level]
            for level in checks
        ]
        self.nodes = 0
        self.checks = 0
        self.solutions = 0

    def __iter__(self):
        domains = self.domains
        levels = self.levels
        n = len(domains)
        if n == 0:
            self.solutions += 1
            yield ()
            return

        idx = [-1] * n
        vals = [None] * n
        conf = [set() for _ in range(n)]
        found = [False] * n
        i = 0
        while True:
            dom = domains[i]
            tests = levels[i]
            k = idx[i] + 1
            ok = False
            while k < len(dom):
                vals[i] = dom[k]
                self.nodes += 1
                for test, scope in tests:
                    self.checks += 1
                    if not test(vals):
                        conf[i].update(scope)
                        break
                else:
                    ok = True
                    break
                k += 1
            idx[i] = k

            if ok:
                if i == n - 1:
                    self.solutions += 1
                    found = [True] * n
                    yield tuple(idx)
                    continue
                i += 1
                idx[i] = -1
                conf[i] = set()
                found[i] = False
                continue

            if found[i]:
                if i == 0:
                    return
                i -= 1
                continue
            conf[i].discard(i)
            if not conf[i]:
                return
            h = max(conf[i])
            conf[h] |= conf[i]
            conf[h].discard(h)
            i = h

    def count(self) -> int:
        total = 0
        for _ in self:
            total += 1
        return total
