"""
Inner loops over edge-labelled covering graphs.

The compiled kernel pays a few tenths of a second on first use per process
(numba import and cache load), so small jobs run the same loop in Python.
"""

import numpy as np

# until the kernel is loaded, jobs below this many steps (start vertices
# times word length) run in Python
COMPILE_THRESHOLD = 2000

_compiled = None


def _loop_label_status(out, inn, lab_off, lab, word, starts):
    """
    For each start vertex, read ``word`` and multiply the edge labels met on
    the way (free reduction on a stack).

    Returns per start: 1 if the path closes up with trivial label, 0 if it
    closes up with a nontrivial label, -1 if it falls off or ends elsewhere.
    Edge ``(v, g)`` carries ``lab[lab_off[v*r+g]:lab_off[v*r+g+1]]``; crossing
    it backwards contributes the inverse.
    """
    r = out.shape[1]
    maxlab = 0
    for e in range(lab_off.shape[0] - 1):
        d = lab_off[e + 1] - lab_off[e]
        if d > maxlab:
            maxlab = d
    stack = np.empty(word.shape[0] * maxlab + 1, dtype=np.int32)
    res = np.empty(starts.shape[0], dtype=np.int8)
    for si in range(starts.shape[0]):
        v = starts[si]
        top = 0
        ok = True
        for i in range(word.shape[0]):
            x = word[i]
            if x > 0:
                g = x - 1
                e = v * r + g
                for p in range(lab_off[e], lab_off[e + 1]):
                    y = lab[p]
                    if top > 0 and stack[top - 1] == -y:
                        top -= 1
                    else:
                        stack[top] = y
                        top += 1
                v = out[v, g]
            else:
                g = -x - 1
                u = inn[v, g]
                if u < 0:
                    ok = False
                    break
                e = u * r + g
                for p in range(lab_off[e + 1] - 1, lab_off[e] - 1, -1):
                    y = -lab[p]
                    if top > 0 and stack[top - 1] == -y:
                        top -= 1
                    else:
                        stack[top] = y
                        top += 1
                v = u
            if v < 0:
                ok = False
                break
        if not ok or v != starts[si]:
            res[si] = -1
        elif top == 0:
            res[si] = 1
        else:
            res[si] = 0
    return res


def _compiled_kernel():
    global _compiled
    if _compiled is None:
        from numba import njit

        _compiled = njit(cache=True)(_loop_label_status)
    return _compiled


def loop_label_status(out, inn, lab_off, lab, word, starts, compiled=None):
    """Dispatch to the Python or compiled loop; ``compiled`` forces a choice."""
    if compiled is None:
        compiled = _compiled is not None or starts.shape[0] * max(word.shape[0], 1) >= COMPILE_THRESHOLD
    if compiled:
        return _compiled_kernel()(out, inn, lab_off, lab, word, starts)
    return _python_status(out.tolist(), inn.tolist(), lab_off.tolist(), lab.tolist(), word.tolist(), starts.tolist())


def _python_status(out, inn, lab_off, lab, word, starts):
    r = len(out[0]) if out else 0
    res = np.empty(len(starts), dtype=np.int8)
    for si, start in enumerate(starts):
        v = start
        stack = []
        for x in word:
            if x > 0:
                e = v * r + x - 1
                seq = lab[lab_off[e]:lab_off[e + 1]]
                v = out[v][x - 1]
            else:
                u = inn[v][-x - 1]
                if u < 0:
                    v = -1
                    break
                e = u * r - x - 1
                seq = [-y for y in reversed(lab[lab_off[e]:lab_off[e + 1]])]
                v = u
            for y in seq:
                if stack and stack[-1] == -y:
                    stack.pop()
                else:
                    stack.append(y)
            if v < 0:
                break
        res[si] = -1 if v != start else (0 if stack else 1)
    return res


class LabelledCovering:
    """A covering graph whose edges carry words; answers loop-label queries in bulk."""

    def __init__(self, graph, labels):
        # labels[(v, g)] -> sequence of signed ints (missing key = empty label)
        self.graph = graph
        out, inn = graph.arrays()
        self._out, self._inn = out, inn
        r = graph.rank
        n = graph.num_vertices
        off = np.zeros(n * r + 1, dtype=np.int64)
        flat = []
        for v in range(n):
            for g in range(r):
                lab = labels.get((v, g), ())
                flat.extend(lab)
                off[v * r + g + 1] = len(flat)
        self._off = off
        self._lab = np.asarray(flat, dtype=np.int32) if flat else np.zeros(1, dtype=np.int32)
        self._all = np.arange(n, dtype=np.int32)

    def status(self, word, starts=None, compiled=None):
        w = np.asarray(tuple(word), dtype=np.int32)
        s = self._all if starts is None else np.asarray(starts, dtype=np.int32)
        return loop_label_status(self._out, self._inn, self._off, self._lab, w, s, compiled)

    def trivial_everywhere(self, word):
        return bool(np.all(self.status(word) == 1))
