"""Naive per-pixel reference implementations used to check the vectorized code.

Deliberately slow and written without reusing any package internals.
"""

import math


def border(i, n, policy):
    """Index resolution written out case by case; None means a zero pixel."""
    if 0 <= i < n:
        return i
    if policy == "zero":
        return None
    if policy == "replicate":
        return 0 if i < 0 else n - 1
    # reflect: walk the index back and forth until it lands inside
    if n == 1:
        return 0
    while not 0 <= i < n:
        if i < 0:
            i = -i
        if i >= n:
            i = 2 * (n - 1) - i
    return i


def pixel(img, x, y, policy):
    h, w = len(img), len(img[0])
    xi, yi = border(x, w, policy), border(y, h, policy)
    if xi is None or yi is None:
        return 0.0
    return float(img[yi][xi])


def window(img, x, y, m, n, policy):
    return [pixel(img, x + dx, y + dy, policy)
            for dy in range(-(m // 2), m // 2 + 1)
            for dx in range(-(n // 2), n // 2 + 1)]


def mean_filter(img, m, n, policy):
    h, w = len(img), len(img[0])
    return [[math.fsum(window(img, x, y, m, n, policy)) / (m * n) for x in range(w)] for y in range(h)]


def median_filter(img, m, n, policy):
    h, w = len(img), len(img[0])
    out = []
    for y in range(h):
        row = []
        for x in range(w):
            vals = sorted(window(img, x, y, m, n, policy))
            row.append(vals[len(vals) // 2])
        out.append(row)
    return out


def gaussian_filter(img, sigma, radius, policy):
    h, w = len(img), len(img[0])
    weights = {}
    for t in range(-radius, radius + 1):
        for s in range(-radius, radius + 1):
            weights[s, t] = math.exp(-(s * s + t * t) / (2 * sigma * sigma))
    total = math.fsum(weights.values())
    out = []
    for y in range(h):
        out.append([math.fsum(wt / total * pixel(img, x - s, y - t, policy)
                              for (s, t), wt in weights.items()) for x in range(w)])
    return out


def bilateral_filter(img, sigma_s, sigma_r, radius, policy):
    h, w = len(img), len(img[0])
    out = []
    for y in range(h):
        row = []
        for x in range(w):
            center = float(img[y][x])
            num, den = [], []
            for t in range(-radius, radius + 1):
                for s in range(-radius, radius + 1):
                    q = pixel(img, x + s, y + t, policy)
                    wt = (math.exp(-(s * s + t * t) / (2 * sigma_s ** 2))
                          * math.exp(-((center - q) ** 2) / (2 * sigma_r ** 2)))
                    num.append(wt * q)
                    den.append(wt)
            row.append(math.fsum(num) / math.fsum(den))
        out.append(row)
    return out


def convolve(img, weights, policy):
    """``weights[t + ry][s + rx]`` is the kernel value at offset (s, t)."""
    h, w = len(img), len(img[0])
    ry, rx = len(weights) // 2, len(weights[0]) // 2
    return [[math.fsum(weights[t + ry][s + rx] * pixel(img, x - s, y - t, policy)
                       for t in range(-ry, ry + 1) for s in range(-rx, rx + 1))
             for x in range(w)] for y in range(h)]
