"""Pure-Python conformal reduction kernel.

Same interface as the compiled ``_ckernels`` module; used when the
extension is not built or when entries exceed 64-bit range.
"""


class ReducerSet:
    """Growing set of vectors used to reduce others in the conformal order."""

    def __init__(self, n):
        self.n = n
        self._vecs = []
        self._supp = []

    def __len__(self):
        return len(self._vecs)

    def add(self, v):
        v = tuple(int(x) for x in v)
        if len(v) != self.n:
            raise ValueError("length mismatch")
        self._vecs.append(v)
        self._supp.append(tuple(i for i, x in enumerate(v) if x))
        return len(self._vecs) - 1

    def vector(self, k):
        return self._vecs[k]

    def _factor(self, k, s):
        # multiplier t (signed) with t*g conformally below s, 0 if none
        g = self._vecs[k]
        supp = self._supp[k]
        j = supp[0]
        if not s[j]:
            return 0
        sg = 1 if (s[j] > 0) == (g[j] > 0) else -1
        t = None
        for i in supp:
            si, gi = s[i], sg * g[i]
            if si == 0 or (si > 0) != (gi > 0):
                return 0
            q = abs(si) // abs(gi)
            if q == 0:
                return 0
            if t is None or q < t:
                t = q
        return sg * t

    def normal_form(self, s):
        s = [int(x) for x in s]
        changed = True
        while changed and any(s):
            changed = False
            for k in range(len(self._vecs)):
                t = self._factor(k, s)
                if t:
                    g = self._vecs[k]
                    for i in self._supp[k]:
                        s[i] -= t * g[i]
                    changed = True
                    if not any(s):
                        break
        return tuple(s)

    def find_reducer(self, s, exclude=-1):
        s = [int(x) for x in s]
        for k in range(len(self._vecs)):
            if k != exclude and self._factor(k, s):
                return k
        return -1
