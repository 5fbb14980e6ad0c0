# Independent numpy/scipy values frozen into tests/test_tensor.cpp.
import numpy as np
from scipy.linalg import logm, expm, sqrtm

psi = np.arange(1, 9, dtype=complex)
psi /= np.linalg.norm(psi)
t = psi.reshape(2, 2, 2)


def ent(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-12]
    return float(-(w * np.log(w)).sum())


rho0 = np.einsum('abc,dbc->ad', t, t.conj())
rho02 = np.einsum('abc,dbe->acde', t, t.conj()).reshape(4, 4)
print("S(v0) =", repr(ent(rho0)))
print("S(v0,v2) =", repr(ent(rho02)))
print("rho02[1,2] =", rho02[1, 2])

A = np.array([[2.0, 0.5], [0.5, 1.0]], dtype=complex)
print("log A =", logm(A).real.tolist())
print("sqrt A =", sqrtm(A).real.tolist())
B = np.array([[0, 1j], [1j, 0]])
print("exp B =", expm(B).tolist())
