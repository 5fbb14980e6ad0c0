# {5,4} patch counts frozen into tests/test_holographic.cpp, computed by reflecting
# pentagons in the Poincare disk (independent of the combinatorial generator).
import numpy as np

p, q = 5, 4
r0 = np.sqrt(np.cos(np.pi / p + np.pi / q) / np.cos(np.pi / p - np.pi / q))
base = [r0 * np.exp(2j * np.pi * k / p) for k in range(p)]


def reflect(z, a, b):
    # circle through a, b orthogonal to the unit circle
    A = np.array([[2 * (b - a).real, 2 * (b - a).imag], [2 * a.real, 2 * a.imag]])
    rhs = np.array([abs(b) ** 2 - abs(a) ** 2, abs(a) ** 2 + 1])
    cx, cy = np.linalg.solve(A, rhs)
    c = complex(cx, cy)
    R2 = abs(c) ** 2 - 1
    return c + R2 / np.conj(z - c)


def key(z):
    return (round(z.real, 7), round(z.imag, 7))


def neighbors(tile):
    verts, center = tile
    out = []
    for k in range(p):
        a, b = verts[k], verts[(k + 1) % p]
        out.append(([reflect(v, a, b) for v in verts], reflect(center, a, b)))
    return out


for L in range(3):
    tiles = {key(0j): (base, 0j)}
    frontier = [tiles[key(0j)]]
    layers = [1]
    for _ in range(L):
        new = {}
        for t in list(tiles.values()):
            for n in neighbors(t):
                k = key(n[1])
                if k not in tiles and k not in new:
                    new[k] = n
        tiles.update(new)
        layers.append(len(new))
    bonds = 0
    for t in tiles.values():
        for n in neighbors(t):
            if key(n[1]) in tiles:
                bonds += 1
    bonds //= 2
    pts = set()
    for v, _ in tiles.values():
        for z in v:
            pts.add((round(z.real, 6), round(z.imag, 6)))
    T = len(tiles)
    print(f"l={L} tiles={T} per-layer={layers} bonds={bonds} dangling={5 * T - 2 * bonds} points={len(pts)}")
