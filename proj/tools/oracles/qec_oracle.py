# Five-qubit code facts frozen into tests/test_qec.cpp: correctability of every
# region by brute-force Choi-state mutual information (numpy, independent of the C++ code).
import itertools
import numpy as np

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I = np.eye(2, dtype=complex)


def word(w):
    m = np.array([[1.0 + 0j]])
    for c in w:
        m = np.kron(m, {"I": I, "X": X, "Z": Z}[c])
    return m


stabs = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
P = np.eye(32, dtype=complex)
for s in stabs:
    P = P @ (np.eye(32) + word(s)) / 2
zero = P[:, 0] / np.linalg.norm(P[:, 0])
one = word("XXXXX") @ zero
V = np.stack([zero, one], axis=1)
choi = np.zeros((2, 32), dtype=complex)
choi[0], choi[1] = zero / np.sqrt(2), one / np.sqrt(2)


def S(keep_ref, keep):
    t = choi.reshape([2] + [2] * 5)
    axes_keep = ([0] if keep_ref else []) + [q + 1 for q in keep]
    other = [a for a in range(6) if a not in axes_keep]
    t = np.transpose(t, axes_keep + other).reshape(2 ** len(axes_keep), -1)
    rho = t @ t.conj().T
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-12]
    return -(w * np.log(w)).sum()


counts = {}
for k in range(6):
    for R in itertools.combinations(range(5), k):
        mi = np.log(2) + S(False, R) - S(True, R)
        counts.setdefault(k, []).append(bool(abs(mi) < 1e-9))
for k, v in counts.items():
    print(k, "qubits: correctable", sum(v), "of", len(v))
print("MI for 3 qubits", np.log(2) + S(False, (0, 1, 2)) - S(True, (0, 1, 2)))
