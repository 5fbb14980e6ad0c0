# Truncated U(1) gauging facts frozen into tests/test_compact_u1.cpp. P_Sigma entries are
# evaluated as Haar integrals by angle quadrature over the vertex gauge parameters.
import itertools
import numpy as np

# (name, vertices {id: (alpha, charges)}, edges [(tail, head)])
instances = [
    ("u1-line2", {0: (1, [1]), 1: (0, [-1])}, [(1, 0)]),
    ("u1-line3", {0: (1, [-1, 0, 1]), 1: (1, [-1, 0, 1]), 2: (0, [0, 1])}, [(0, 1), (2, 1)]),
    ("u1-star", {0: (1, [-1, 0, 1]), 1: (1, [0, 1]), 2: (1, [0, 1]), 3: (0, [0, 2])}, [(0, 1), (0, 2), (3, 0)]),
    ("u1-open-line", {0: (0, [0]), 1: (1, [0, 1]), 2: (0, [0])}, [(0, 1), (1, 2)]),
]


def p_sigma(verts, edges, N, M=64):
    gc = [v for v in sorted(verts) if verts[v][0] == 1]
    thetas = 2 * np.pi * np.arange(M) / M
    out = []
    for q in itertools.product(*[verts[v][1] for v in sorted(verts)]):
        qv = dict(zip(sorted(verts), q))
        total = 0.0
        for n in itertools.product(range(-N, N + 1), repeat=len(edges)):
            w = 1.0 + 0j
            for v in gc:
                s = qv[v] + sum(n[i] for i, (t, h) in enumerate(edges) if t == v) - sum(
                    n[i] for i, (t, h) in enumerate(edges) if h == v)
                w *= np.mean(np.exp(1j * s * thetas))
            total += w.real
        out.append(int(round(total)))
    return out


for name, verts, edges in instances:
    spectra = [p_sigma(verts, edges, N) for N in range(6)]
    th = 5
    while th > 0 and spectra[th - 1] == spectra[5]:
        th -= 1
    print(name, "threshold", th if th < 5 and min(spectra[5]) > 0 else -1, "P(N=5)", spectra[5])

for N in (1, 2, 3):
    # |0> -> |1> on the middle vertex of the open line, dressed along one path
    c0, c1 = 2 * N + 1, 2 * N
    print("open-line dressing residual N=%d: %.12f" % (N, abs(np.sqrt(c1 / c0) - 1)))
