"""Independent reference implementations used only as test oracles.

These deliberately duplicate no production code: the three-point rainflow
counter follows the classic stack formulation (pair-range with start-point
half cycles), kept separate from the package's four-point algorithm.
"""

import numpy as np


def three_point_rainflow(signal):
    """(range, mean, weight) triples from the three-point counting rule.

    Ranges equal an inner excursion whenever it is bounded by the previous
    one; cycles containing the starting point count as half. Returns arrays
    (ranges, means, weights).
    """
    x = np.asarray(signal, dtype=float)
    dx = np.diff(x)
    keep = np.concatenate(([True], dx != 0.0))
    starts = np.flatnonzero(keep)
    xv = x[starts]
    if xv.size >= 2:
        s = np.sign(np.diff(xv))
        interior = np.flatnonzero(s[1:] * s[:-1] < 0.0) + 1
        sel = np.concatenate(([0], interior, [xv.size - 1]))
        pts = list(xv[sel])
    else:
        pts = list(xv)

    stack = []
    ranges, means, weights = [], [], []
    for p in pts:
        stack.append(p)
        while len(stack) >= 3:
            r_prev = abs(stack[-3] - stack[-2])
            r_curr = abs(stack[-2] - stack[-1])
            if r_curr < r_prev:
                break
            if len(stack) == 3:
                # the range includes the starting point: half cycle
                ranges.append(r_prev)
                means.append(0.5 * (stack[-3] + stack[-2]))
                weights.append(0.5)
                stack.pop(0)
            else:
                ranges.append(r_prev)
                means.append(0.5 * (stack[-3] + stack[-2]))
                weights.append(1.0)
                del stack[-3:-1]
    for i in range(len(stack) - 1):
        ranges.append(abs(stack[i + 1] - stack[i]))
        means.append(0.5 * (stack[i] + stack[i + 1]))
        weights.append(0.5)
    return np.array(ranges), np.array(means), np.array(weights)
