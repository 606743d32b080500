"""Independent reference values frozen into the C++ tests (numpy / mpmath only)."""
import math

import mpmath as mp
import numpy as np
from scipy.linalg import toeplitz

mp.mp.dps = 40


def toe(r, n):
    row = np.zeros(n)
    row[: min(n, len(r))] = r[:n]
    return toeplitz(row)


def predictor(r, past, targets):
    """Coefficients for predicting X_0..X_{targets-1} from X_{-past}..X_{-1}."""
    n = past + targets
    g = toe(r, n)
    return np.linalg.solve(g[:past, :past], g[:past, past:])


print("choose_window(1e6,1) =", math.floor((1e6 / math.log(1e6)) ** 0.1))
print("choose_window(1e3,1) =", math.floor((1e3 / math.log(1e3)) ** 0.1))
for n in (2**12, 2**14, 2**16, 2**18):
    print(f"choose_window({n},2) =", max(1, math.floor((n / math.log(n)) ** (1 / 14))))
print("C1(m=1,m'=2,r0=1) =", mp.mpf(144) * mp.mpf(3) ** mp.mpf("0.25"))
print("risk_bound(1e4,2,C1=1) =", 4 * mp.sqrt(mp.log(2)) / 100)

# MA(1) theta=0.5: inverse coefficients from dense inversion, middle row.
r = np.array([1.25, 0.5])
inv = np.linalg.inv(toe(r, 512))
print("MA1 inverse middle row lags 0..4:", [repr(x) for x in inv[256, 256:261]])
# closed form: 1/f = sum (-theta)^|k| / (1 - theta^2)  for f = |1 + theta e^{it}|^2
print("MA1 closed form lags 0..4:", [repr((-0.5) ** k / 0.75) for k in range(5)])

# Oracle K=2 column for X_0.
c = np.linalg.solve(np.array([[1.25, 0.5], [0.5, 1.25]]), np.array([0.0, 0.5]))
print("MA1 K=2 X_0 column:", repr(c[0]), repr(c[1]), "(-2/21, 10/21) =", -2 / 21, 10 / 21)


def bias2(r, K, L):
    ck = predictor(r, K, K)
    cl = predictor(r, L, K)
    d = -cl.copy()
    d[L - K :, :] += ck
    gl = toe(r, L)
    return d.T @ gl @ d


for K in (1, 2, 4):
    print(f"MA1 bias2(K={K}, L=512)[0,0] =", repr(bias2(r, K, 512)[0, 0]))

# AR(1) phi=0.6 with unit innovations: r_k = phi^k / (1 - phi^2).
phi = 0.6
rar = np.array([phi**k / (1 - phi**2) for k in range(600)])
print("AR1 bias2(K=3, L=512) =", repr(bias2(rar, 3, 512)[0, 0]))
print("AR1 K=5 column X_0:", predictor(rar, 5, 5)[:, 0])
g = toe(rar, 2)
print("AR1 Q(0|-1) =", repr(g[1, 1] - g[1, 0] ** 2 / g[0, 0]))

# Regularized 2x2 example.
print("eig [[1.85,-0.8],[-0.8,1.85]] =", np.linalg.eigvalsh(np.array([[1.85, -0.8], [-0.8, 1.85]])))

# Warped norm: generalized eigen of (D' G_O D, G_B), MA(1), K=2, fixed D.
D = np.array([[1.0, -0.5], [0.25, 2.0]])
G = toe(r, 4)
GO, GB = G[:2, :2], G[2:, 2:]
w = np.sqrt(max(np.linalg.eigvals(np.linalg.solve(GB, D.T @ GO @ D)).real))
print("warped norm MA1 K=2 D =", repr(w))

# Global risk for a fixed second moment: top eigenvalue of (E, G_B).
E = np.array([[0.3, 0.1], [0.1, 0.2]])
print("global from E =", repr(max(np.linalg.eigvals(np.linalg.solve(GB, E)).real)))

# Schur example on a 4x4 Toeplitz, A = {0, 2}.
G4 = toe(np.array([3.0, 1.0, 0.5, 0.25]), 4)
A = [0, 2]
M = [1, 3]
L4 = np.linalg.inv(G4)
S = L4[np.ix_(A, A)] - L4[np.ix_(A, M)] @ np.linalg.solve(L4[np.ix_(M, M)], L4[np.ix_(M, A)])
print("Schur 4x4 A={0,2}:", S.tolist(), "inv(G_A):", np.linalg.inv(G4[np.ix_(A, A)]).tolist())

# Trig polynomial extremum for r = (1, -0.8): min 1 - 1.6 at pi.
# f(t) = 1.25 + cos t + 0.3 cos 2t: min by dense search
t = np.linspace(0, 2 * np.pi, 2_000_001)
f = 1.25 + np.cos(t) + 0.3 * np.cos(2 * t)
print("min 1.25+cos t+0.3cos2t =", repr(f.min()), "max =", repr(f.max()))
# exact: derivative -sin t - 0.6 sin 2t = -sin t (1 + 1.2 cos t) -> cos t = -1/1.2
ct = -1 / 1.2
print("exact min =", repr(1.25 + ct + 0.3 * (2 * ct * ct - 1)))
